use serde::{Deserialize, Serialize};

/// Renderer-free text measurement: every glyph advances by a fixed fraction
/// of the font size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TextMetricsModel {
    pub font_size: f64,
    pub advance_ratio: f64,
    pub line_height_ratio: f64,
}

impl Default for TextMetricsModel {
    fn default() -> Self {
        Self {
            font_size: 10.0,
            advance_ratio: 0.6,
            line_height_ratio: 1.2,
        }
    }
}

impl TextMetricsModel {
    pub fn with_font_size(self, font_size: f64) -> Self {
        Self { font_size, ..self }
    }

    pub fn line_height(&self) -> f64 {
        self.line_height_at(self.font_size)
    }

    pub fn line_height_at(&self, font_size: f64) -> f64 {
        self.line_height_ratio * font_size
    }

    pub fn width(&self, text: &str) -> f64 {
        self.width_at(text, self.font_size)
    }

    pub fn width_at(&self, text: &str, font_size: f64) -> f64 {
        text.chars().count() as f64 * self.advance_ratio * font_size
    }

    /// `(width, height)` of a single-line string at `font_size`.
    pub fn measure_at(&self, text: &str, font_size: f64) -> (f64, f64) {
        (self.width_at(text, font_size), self.line_height_at(font_size))
    }
}
