mod common;

use chartgen::corpus::synthetic_corpus;
use chartgen::model::LayerKind;
use chartgen::{generalize, render, EngineConfig, DEVICE_SIZES};
use common::{fixture, PHONE, WATCH};

fn svg_children<'a>(doc: &'a roxmltree::Document, tag: &str) -> Vec<roxmltree::Node<'a, 'a>> {
    doc.descendants().filter(|n| n.has_tag_name(tag)).collect()
}

#[test]
fn every_corpus_render_is_well_formed() {
    let config = EngineConfig::default();
    for (name, spec) in synthetic_corpus() {
        for size in DEVICE_SIZES {
            let chart = generalize(&spec, size, &config).unwrap();
            let svg = render(&chart);
            let doc = roxmltree::Document::parse(&svg).unwrap_or_else(|e| panic!("{name} at {size}: {e}"));
            let root = doc.root_element();
            assert_eq!(root.tag_name().name(), "svg");
            assert_eq!(root.attribute("width").unwrap().parse::<f64>().unwrap(), size.width);
            let texts = svg_children(&doc, "text").len();
            let visible_texts = chart.visible().filter(|e| e.layer.is_text()).count();
            assert_eq!(texts, visible_texts, "{name} at {size}");
        }
    }
}

#[test]
fn watch_render_is_line_reference_and_range_labels() {
    let chart = generalize(&fixture("sparkline.json"), WATCH, &EngineConfig::default()).unwrap();
    let svg = render(&chart);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert_eq!(svg_children(&doc, "path").len(), 1);
    let lines = svg_children(&doc, "line");
    assert_eq!(lines.len(), 1);
    assert!(lines[0].attribute("stroke-dasharray").is_some());
    let mut texts: Vec<&str> = svg_children(&doc, "text").iter().map(|n| n.text().unwrap()).collect();
    texts.sort();
    assert_eq!(texts, vec!["max 23.5", "min 12.25"]);
    let groups: Vec<&str> = svg_children(&doc, "g").iter().map(|g| g.attribute("id").unwrap()).collect();
    assert!(!groups.contains(&"axes") && !groups.contains(&"gridlines"));
}

#[test]
fn text_positions_follow_their_boxes() {
    let chart = generalize(&fixture("annotated.json"), PHONE, &EngineConfig::default()).unwrap();
    let svg = render(&chart);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    let rendered: Vec<(String, f64)> = svg_children(&doc, "text")
        .iter()
        .map(|n| (n.text().unwrap().to_string(), n.attribute("y").unwrap().parse().unwrap()))
        .collect();
    for e in chart.visible().filter(|e| e.layer == LayerKind::Annotation) {
        let t = e.text().unwrap();
        let y = e.bbox.y + t.font_size;
        assert!(
            rendered.iter().any(|(s, ry)| *s == t.text && (ry - y).abs() <= 0.005),
            "annotation {:?} not drawn at its box",
            t.text
        );
    }
}

#[test]
fn markup_is_escaped() {
    let mut spec = fixture("annotated.json");
    spec.title = Some("<R&D> \"q\"".into());
    let chart = generalize(&spec, spec.original_size(), &EngineConfig::default()).unwrap();
    let svg = render(&chart);
    let doc = roxmltree::Document::parse(&svg).unwrap();
    assert!(svg_children(&doc, "text").iter().any(|n| n.text() == Some("<R&D> \"q\"")));
}
