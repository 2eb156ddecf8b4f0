use opdraw::depth::{depth_by_root, depth_table, free_depth, rooted_depth};
use opdraw::graph::enumerate_triangulations;
use opdraw::oracle::{brute_depth, brute_tree_pathwidth};
use opdraw::pathwidth::{free_rooted_pathwidth, rooted_pathwidth, tree_pathwidth};
use opdraw::{validate_system, Flavor, OuterplanarGraph};

const FLAVORS: [Flavor; 2] = [Flavor::Bonnet, Flavor::Umbrella];

#[test]
fn dp_matches_brute_force_up_to_nine() {
    let mut checked = 0;
    for n in 3..=9 {
        for g in enumerate_triangulations(n).unwrap() {
            for e in g.hull_edges() {
                for fl in FLAVORS {
                    let (d, w) = rooted_depth(&g, (e.0, e.1), fl).unwrap();
                    let b = brute_depth(&g, (e.0, e.1), fl).unwrap();
                    assert_eq!(d, b, "n={n} {:?} root {e:?} {fl}", g.to_json());
                    validate_system(&g, &w).unwrap_or_else(|v| panic!("{} root {e:?} {fl}: {v}", g.to_json()));
                    assert_eq!(w.depth(), d);
                    let (_, w2) = rooted_depth(&g, (e.1, e.0), fl).unwrap();
                    validate_system(&g, &w2).unwrap();
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 10_000);
}

#[test]
fn bonnet_never_deeper_than_umbrella() {
    for n in 3..=9 {
        for g in enumerate_triangulations(n).unwrap() {
            let b = depth_by_root(&g, Flavor::Bonnet);
            let u = depth_by_root(&g, Flavor::Umbrella);
            for (x, y) in b.iter().zip(&u) {
                assert!(x.1 <= y.1);
            }
        }
    }
}

#[test]
fn rooted_within_one_of_free() {
    for n in 3..=9 {
        for g in enumerate_triangulations(n).unwrap() {
            for fl in FLAVORS {
                let (free, _, w) = free_depth(&g, fl);
                validate_system(&g, &w).unwrap();
                let worst = depth_by_root(&g, fl).iter().map(|x| x.1).max().unwrap();
                assert!(worst <= free + 1, "{} {fl}", g.to_json());
            }
        }
    }
}

#[test]
fn table_invariants() {
    for n in 3..=9 {
        for g in enumerate_triangulations(n).unwrap() {
            for fl in FLAVORS {
                let t = depth_table(&g, (0, 1), fl).unwrap();
                for (_, v) in t.entries() {
                    assert!(v.d >= 1);
                    assert!(v.d <= v.pa && v.d <= v.pb, "{v:?}");
                    assert!(v.pa <= v.fa.max(v.h) && v.pb <= v.fb.max(v.h));
                }
                for e in g.hull_edges() {
                    if e != opdraw::Edge::new(0, 1) {
                        assert_eq!(t.get(&g, e.0, e.1).unwrap().1.as_array(), [0; 6]);
                    }
                }
            }
        }
    }
}

#[test]
fn depth_and_pathwidth_chain() {
    for n in 3..=9 {
        for g in enumerate_triangulations(n).unwrap() {
            let t = g.dual_tree();
            let pw = tree_pathwidth(&t).unwrap();
            assert_eq!(pw, brute_tree_pathwidth(&t).unwrap(), "{}", g.to_json());
            let (rpw, _) = free_rooted_pathwidth(&t).unwrap();
            let all_nodes = (0..t.node_count() as u32).map(|r| rooted_pathwidth(&t, r).unwrap()).min().unwrap();
            assert_eq!(rpw, all_nodes);
            let bd = free_depth(&g, Flavor::Bonnet).0;
            let ud = free_depth(&g, Flavor::Umbrella).0;
            assert!(pw <= 2 * bd, "{}", g.to_json());
            assert!(bd <= ud);
            assert!(ud <= rpw, "{} ud={ud} rpw={rpw}", g.to_json());
            assert!(rpw <= 1.max(2 * pw));
            assert!((bd as f64) <= ((n + 1) as f64).log2());
        }
    }
}

#[test]
fn fan_examples() {
    let g = OuterplanarGraph::new(6, &[(0, 2), (0, 3), (0, 4)]).unwrap();
    assert_eq!(rooted_depth(&g, (0, 1), Flavor::Bonnet).unwrap().0, 1);
    let d = rooted_depth(&g, (2, 3), Flavor::Bonnet).unwrap().0;
    assert_eq!(d, brute_depth(&g, (2, 3), Flavor::Bonnet).unwrap());
    assert_eq!(free_depth(&g, Flavor::Umbrella).0, 1);
}

#[test]
fn rerooting_matches_per_root_tables() {
    let mut graphs: Vec<OuterplanarGraph> = (3..=9).flat_map(|n| enumerate_triangulations(n).unwrap()).collect();
    graphs.extend((0..20).map(|s| OuterplanarGraph::random(30 + 7 * s, s as u64).unwrap()));
    for g in &graphs {
        for fl in FLAVORS {
            for (e, d) in depth_by_root(g, fl) {
                assert_eq!(d, depth_table(g, (e.0, e.1), fl).unwrap().root_value(), "{} {e:?} {fl}", g.to_json());
            }
        }
    }
}
