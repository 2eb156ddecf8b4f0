use opdraw::certify::{certify_drawing, normalize, Preserve};
use opdraw::depth::{free_depth, rooted_depth};
use opdraw::fvr::{is_free, validate, Side};
use opdraw::graph::enumerate_triangulations;
use opdraw::layout::{draw, draw_auto};
use opdraw::{validate_system, Flavor, OuterplanarGraph};

fn check(g: &OuterplanarGraph, d: &opdraw::fvr::Drawing) {
    let c = certify_drawing(g, d).unwrap_or_else(|e| panic!("{}\n{}\n{e}", g.to_json(), d.to_json()));
    validate_system(g, &c.system).unwrap_or_else(|v| panic!("{}\n{}\n{v}", g.to_json(), d.to_json()));
    assert_eq!(c.height, d.height());
    assert!(c.extracted_depth < c.height);
    let r = c.system.root_edge;
    let (ud, _) = rooted_depth(g, (r[0], r[1]), Flavor::Umbrella).unwrap();
    assert!(ud <= c.extracted_depth);
    assert!(free_depth(g, Flavor::Umbrella).0 + 1 <= c.height);
}

#[test]
fn certifies_every_layout_up_to_nine() {
    let mut count = 0;
    for n in 3..=9 {
        for g in enumerate_triangulations(n).unwrap() {
            for e in g.hull_edges() {
                for fl in [Flavor::Bonnet, Flavor::Umbrella] {
                    let (_, s) = rooted_depth(&g, (e.0, e.1), fl).unwrap();
                    let d = draw(&g, &s).unwrap();
                    check(&g, &d);
                    count += 1;
                }
            }
        }
    }
    assert!(count > 5_000);
}

#[test]
fn normalize_keeps_layers_up_to_nine() {
    for n in 3..=9 {
        for g in enumerate_triangulations(n).unwrap() {
            let (d, _) = draw_auto(&g);
            for side in [Side::Left, Side::Right] {
                let (out, e) = normalize(&g, &d, side, Preserve::default()).unwrap();
                validate(&g, &out).unwrap();
                assert!(g.is_hull_edge(e.0, e.1));
                assert!(is_free(&out, e, side));
                for b in &d.vertices {
                    assert_eq!(out.vertex(b.id).unwrap().layer, b.layer);
                }
            }
        }
    }
}

#[test]
fn certifies_random_layouts() {
    for (i, n) in [12u32, 40, 150, 600].into_iter().enumerate() {
        let g = OuterplanarGraph::random(n, 7 + i as u64).unwrap();
        let (d, _) = draw_auto(&g);
        check(&g, &d);
    }
}
