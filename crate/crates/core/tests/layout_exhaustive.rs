use opdraw::depth::rooted_depth;
use opdraw::fvr::{validate, Drawing, DrawnEdge};
use opdraw::graph::enumerate_triangulations;
use opdraw::layout::{draw, draw_auto};
use opdraw::{Flavor, OuterplanarGraph};

/// The root edge's boxes touch both top corners.
fn spans_top(d: &Drawing, u: u32, v: u32) -> bool {
    let (bu, bv) = (d.vertex(u).unwrap(), d.vertex(v).unwrap());
    let (l, r) = if bu.x0 < bv.x0 { (bu, bv) } else { (bv, bu) };
    l.layer == 1 && r.layer == 1 && l.x0 == d.min_x() && r.x1 == d.max_x()
}

#[test]
fn every_witness_draws_up_to_nine() {
    let mut count = 0;
    for n in 3..=9 {
        for g in enumerate_triangulations(n).unwrap() {
            for e in g.hull_edges() {
                for fl in [Flavor::Bonnet, Flavor::Umbrella] {
                    for root in [(e.0, e.1), (e.1, e.0)] {
                        let (depth, s) = rooted_depth(&g, root, fl).unwrap();
                        let d = draw(&g, &s).unwrap_or_else(|err| panic!("{} {root:?} {fl}: {err}", g.to_json()));
                        validate(&g, &d).unwrap_or_else(|v| panic!("{} {root:?} {fl}: {v}", g.to_json()));
                        assert_eq!(d.height(), 2 * depth + 1);
                        assert!(spans_top(&d, root.0, root.1));
                        assert_eq!(Drawing::from_json(&d.to_json()).unwrap(), d);
                        count += 1;
                    }
                }
            }
        }
    }
    assert!(count > 20_000);
}

#[test]
fn random_graphs_draw() {
    for (i, n) in [10u32, 37, 120, 500, 1500].into_iter().enumerate() {
        let g = OuterplanarGraph::random(n, 100 + i as u64).unwrap();
        let (d, s) = draw_auto(&g);
        validate(&g, &d).unwrap();
        assert_eq!(d.height(), 2 * s.depth() + 1);
        assert!(d.edges.iter().any(|e| matches!(e, DrawnEdge::Vertical { .. })));
    }
}
