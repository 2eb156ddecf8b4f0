//! Browser bindings: everything crosses the boundary as JSON strings.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use opdraw::certify::certify_drawing;
use opdraw::fvr::to_svg;
use opdraw::layout::draw_auto;
use opdraw::{free_depth, Flavor, OuterplanarGraph};

/// Random graph on `n` vertices, drawn with the bonnet construction.
#[wasm_bindgen]
pub fn random_drawing(n: u32, seed: u32) -> Result<String, JsError> {
    let g = OuterplanarGraph::random(n, seed as u64).map_err(|e| JsError::new(&e.to_string()))?;
    Ok(report(&g).to_string())
}

/// Same report for a graph given as `{"n": .., "diagonals": [[a, b], ..]}`.
#[wasm_bindgen]
pub fn draw_graph(graph_json: &str) -> Result<String, JsError> {
    let g = OuterplanarGraph::from_json(graph_json).map_err(|e| JsError::new(&e.to_string()))?;
    Ok(report(&g).to_string())
}

/// Lower-bound certificate for the construction's own drawing.
#[wasm_bindgen]
pub fn certify_graph(graph_json: &str) -> Result<String, JsError> {
    let g = OuterplanarGraph::from_json(graph_json).map_err(|e| JsError::new(&e.to_string()))?;
    let (d, _) = draw_auto(&g);
    let c = certify_drawing(&g, &d).map_err(|e| JsError::new(&e.to_string()))?;
    Ok(json!({
        "height": c.height,
        "extracted_depth": c.extracted_depth,
        "root": c.system.root_edge,
        "ud_free": free_depth(&g, Flavor::Umbrella).0,
        "system": serde_json::to_value(&c.system).expect("system serializes"),
    })
    .to_string())
}

pub fn report(g: &OuterplanarGraph) -> Value {
    let (d, _) = draw_auto(g);
    let bd = free_depth(g, Flavor::Bonnet).0;
    let ud = free_depth(g, Flavor::Umbrella).0;
    json!({
        "graph": serde_json::from_str::<Value>(&g.to_json()).expect("graph serializes"),
        "n": g.n(),
        "bd_free": bd,
        "ud_free": ud,
        "height": d.height(),
        "width": d.width(),
        "bracket": [ud + 1, 2 * bd + 1],
        "svg": to_svg(&d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fan_report() {
        let g = OuterplanarGraph::new(6, &[(0, 2), (0, 3), (0, 4)]).unwrap();
        let r = report(&g);
        assert_eq!(r["height"], 3);
        assert_eq!(r["bracket"], json!([2, 3]));
        assert!(r["svg"].as_str().unwrap().starts_with("<svg"));
    }
}
