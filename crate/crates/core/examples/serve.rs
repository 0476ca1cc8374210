//! Runs the `/generalize` handler in-process, then optionally serves it.
//!
//! Pass `--listen` to keep an HTTP server running on 127.0.0.1:8080.

use chartgen::service::{handle_generalize, serve};
use chartgen::EngineConfig;
use serde_json::json;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec: serde_json::Value = serde_json::from_str(include_str!("../fixtures/annotated.json"))?;
    let body = json!({ "spec": spec, "width": 324, "height": 394, "configOverrides": { "seed": 3 } });
    let config = EngineConfig::default();

    match handle_generalize(body.to_string().as_bytes(), &config) {
        Ok(response) => println!(
            "200: {} bytes of SVG, {} log entries, satisfied: {}",
            response.svg.len(),
            response.log.len(),
            response.report.satisfied
        ),
        Err(e) => println!("{}: {}", e.status, e.error),
    }
    let bad = handle_generalize(br#"{"spec": {"series": "nope"}, "width": 10, "height": 10}"#, &config).unwrap_err();
    println!("{}: {} at {:?}", bad.status, bad.error, bad.path);

    if std::env::args().any(|a| a == "--listen") {
        let runtime = tokio::runtime::Runtime::new()?;
        println!("listening on http://127.0.0.1:8080");
        runtime.block_on(serve(([127, 0, 0, 1], 8080).into(), config))?;
    }
    Ok(())
}
