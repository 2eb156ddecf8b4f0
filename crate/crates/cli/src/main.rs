use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use opdraw::certify::certify_drawing;
use opdraw::depth::{depth_by_root, depth_table, free_depth, rooted_depth};
use opdraw::fvr::{to_svg, validate, Drawing};
use opdraw::graph::{enumerate_triangulations_guarded, ENUMERATION_GUARD};
use opdraw::layout::{draw, draw_auto};
use opdraw::oracle::{brute_depth, brute_tree_pathwidth, BRUTE_PATHWIDTH_GUARD};
use opdraw::pathwidth::{free_rooted_pathwidth, tree_pathwidth_guarded, PATHWIDTH_GUARD};
use opdraw::{validate_system, DepthSystem, Flavor, OuterplanarGraph};

#[derive(Parser)]
#[command(name = "opdraw", version, about = "Depth parameters and layered drawings of maximal outerplanar graphs")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Random triangulated polygon.
    Gen {
        #[arg(short)]
        n: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// Umbrella or bonnet depth for a root edge or minimised over roots.
    Depth {
        graph: PathBuf,
        #[command(flatten)]
        root: RootArgs,
        #[arg(long, default_value_t = Flavor::Bonnet)]
        flavor: Flavor,
        /// Write the optimal system here.
        #[arg(long)]
        witness: Option<PathBuf>,
    },
    /// Drawing of height 2·depth+1 from an optimal bonnet system.
    Draw {
        graph: PathBuf,
        #[command(flatten)]
        root: RootArgs,
        #[arg(short)]
        o: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Validate a drawing against a graph.
    Check { graph: PathBuf, drawing: PathBuf },
    /// Extract an umbrella system of depth below the drawing's height.
    Certify {
        graph: PathBuf,
        drawing: PathBuf,
        #[arg(short)]
        o: Option<PathBuf>,
    },
    /// All parameters side by side.
    Compare { graph: PathBuf },
    /// Exhaustive oracle and invariant checks for every triangulation up to a size.
    Verify {
        #[arg(long, default_value_t = 9)]
        max_n: u32,
    },
    /// Timing of the depth table on random graphs.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1e4,1e5,1e6")]
        sizes: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
#[group(multiple = false)]
struct RootArgs {
    /// Root hull edge.
    #[arg(long, num_args = 2, value_names = ["U", "V"])]
    root: Option<Vec<u32>>,
    /// Best root over all hull edges (the default).
    #[arg(long)]
    free: bool,
}

impl RootArgs {
    fn edge(&self) -> Option<(u32, u32)> {
        self.root.as_ref().map(|r| (r[0], r[1]))
    }
}

/// Outcome of a command that ran to completion: `false` means the input
/// failed validation or certification.
type Verdict = bool;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Verdict> {
    let out = Output { json: cli.json };
    match &cli.cmd {
        Cmd::Gen { n, seed, o } => {
            let g = OuterplanarGraph::random(*n, *seed)?;
            match o {
                Some(p) => write(p, &g.to_json())?,
                None => println!("{}", g.to_json()),
            }
            Ok(true)
        }
        Cmd::Depth { graph, root, flavor, witness } => {
            let g = read_graph(graph)?;
            let (d, e, sys) = match root.edge() {
                Some(r) => {
                    let (d, s) = rooted_depth(&g, r, *flavor)?;
                    (d, r, s)
                }
                None => {
                    let (d, e, s) = free_depth(&g, *flavor);
                    (d, (e.0, e.1), s)
                }
            };
            if let Some(p) = witness {
                write(p, &sys.to_json_pretty())?;
            }
            out.emit(json!({"depth": d, "root": [e.0, e.1], "flavor": flavor.to_string()}), || format!("{d}"));
            Ok(true)
        }
        Cmd::Draw { graph, root, o, svg } => {
            let g = read_graph(graph)?;
            let (d, sys) = match root.edge() {
                Some(r) => {
                    let (_, s) = rooted_depth(&g, r, Flavor::Bonnet)?;
                    (draw(&g, &s)?, s)
                }
                None => draw_auto(&g),
            };
            write(o, &d.to_json())?;
            if let Some(p) = svg {
                write(p, &to_svg(&d))?;
            }
            out.emit(json!({"height": d.height(), "depth": sys.depth(), "width": d.width()}), || {
                format!("height {} (bonnet depth {}), width {}", d.height(), sys.depth(), d.width())
            });
            Ok(true)
        }
        Cmd::Check { graph, drawing } => {
            let g = read_graph(graph)?;
            let d = read_drawing(drawing)?;
            let res = validate(&g, &d);
            match &res {
                Ok(()) => out.emit(json!({"valid": true, "height": d.height()}), || format!("valid, height {}", d.height())),
                Err(v) => out.emit(json!({"valid": false, "violation": v.to_string()}), || format!("invalid: {v}")),
            }
            Ok(res.is_ok())
        }
        Cmd::Certify { graph, drawing, o } => {
            let g = read_graph(graph)?;
            let d = read_drawing(drawing)?;
            if let Err(v) = validate(&g, &d) {
                out.emit(json!({"certified": false, "violation": v.to_string()}), || format!("invalid drawing: {v}"));
                return Ok(false);
            }
            let c = match certify_drawing(&g, &d) {
                Ok(c) => c,
                Err(e) => {
                    out.emit(json!({"certified": false, "error": e.to_string()}), || format!("certification failed: {e}"));
                    return Ok(false);
                }
            };
            if let Some(p) = o {
                write(p, &c.system.to_json_pretty())?;
            }
            let ud = free_depth(&g, Flavor::Umbrella).0;
            let bd = free_depth(&g, Flavor::Bonnet).0;
            out.emit(
                json!({
                    "height": c.height, "extracted_depth": c.extracted_depth,
                    "ud_free": ud, "bd_free": bd, "bracket": [ud + 1, 2 * bd + 1],
                }),
                || {
                    format!(
                        "height {}\nextracted_depth {}\nud_free {ud}\nbd_free {bd}\noptimal height in [{}, {}]",
                        c.height,
                        c.extracted_depth,
                        ud + 1,
                        2 * bd + 1
                    )
                },
            );
            Ok(true)
        }
        Cmd::Compare { graph } => {
            let g = read_graph(graph)?;
            let t = g.dual_tree();
            let pw = tree_pathwidth_guarded(&t, guard(PATHWIDTH_GUARD as u32) as usize).ok();
            let rpw = free_rooted_pathwidth(&t)?.0;
            let bd = free_depth(&g, Flavor::Bonnet).0;
            let ud = free_depth(&g, Flavor::Umbrella).0;
            let (d, _) = draw_auto(&g);
            let show = |x: Option<u32>| x.map_or("n/a (over guard)".to_string(), |v| v.to_string());
            out.emit(
                json!({
                    "n": g.n(), "pw": pw, "rpw_free": rpw, "bd_free": bd, "ud_free": ud,
                    "height": d.height(), "bracket": [ud + 1, 2 * bd + 1],
                }),
                || {
                    format!(
                        "n {}\npw(T) {}\nrpw_free(T) {rpw}\nbd_free {bd}\nud_free {ud}\nheight {}\nbracket [{}, {}]",
                        g.n(),
                        show(pw),
                        d.height(),
                        ud + 1,
                        2 * bd + 1
                    )
                },
            );
            Ok(true)
        }
        Cmd::Verify { max_n } => verify(*max_n, &out),
        Cmd::Bench { sizes, seed } => {
            let mut rows = Vec::new();
            for s in sizes {
                let n = parse_size(s)?;
                let g = OuterplanarGraph::random(n, *seed)?;
                let start = Instant::now();
                let t = depth_table(&g, (0, 1), Flavor::Umbrella)?;
                let secs = start.elapsed().as_secs_f64();
                if !out.json {
                    println!("n {n:>9}  depth {:>3}  {secs:.4} s", t.root_value());
                }
                rows.push(json!({"n": n, "depth": t.root_value(), "seconds": secs}));
            }
            if out.json {
                println!("{}", json!(rows));
            }
            Ok(true)
        }
    }
}

struct Output {
    json: bool,
}

impl Output {
    fn emit(&self, j: serde_json::Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{j}");
        } else {
            println!("{}", text());
        }
    }
}

fn guard(default: u32) -> u32 {
    std::env::var("OPG_GUARD_N").ok().and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn parse_size(s: &str) -> Result<u32> {
    let v: f64 = s.trim().parse().with_context(|| format!("bad size {s:?}"))?;
    if !(3.0..=u32::MAX as f64).contains(&v) || v.fract() != 0.0 {
        bail!("size {s} must be an integer of at least 3");
    }
    Ok(v as u32)
}

fn read(p: &Path) -> Result<String> {
    fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
}

fn write(p: &Path, s: &str) -> Result<()> {
    fs::write(p, s).with_context(|| format!("cannot write {}", p.display()))
}

fn read_graph(p: &Path) -> Result<OuterplanarGraph> {
    OuterplanarGraph::from_json(&read(p)?).with_context(|| format!("graph file {}", p.display()))
}

fn read_drawing(p: &Path) -> Result<Drawing> {
    Drawing::from_json(&read(p)?).with_context(|| format!("drawing file {}", p.display()))
}

/// Every triangulation with `3 ≤ n ≤ max_n`: DP against brute force, witness
/// validity, drawing validity and height, certification, parameter chain.
fn verify(max_n: u32, out: &Output) -> Result<Verdict> {
    let limit = guard(ENUMERATION_GUARD).min(11);
    if max_n > limit {
        bail!("--max-n {max_n} exceeds the limit {limit}");
    }
    let mut failures: Vec<String> = Vec::new();
    let mut rows = Vec::new();
    for n in 3..=max_n {
        let mut graphs = 0u64;
        let mut roots = 0u64;
        for g in enumerate_triangulations_guarded(n, limit)? {
            graphs += 1;
            let mut fail = |m: String| failures.push(format!("{} {m}", g.to_json()));
            for fl in [Flavor::Bonnet, Flavor::Umbrella] {
                for (e, d) in depth_by_root(&g, fl) {
                    roots += 1;
                    let (rd, sys) = rooted_depth(&g, (e.0, e.1), fl)?;
                    if rd != d {
                        fail(format!("{fl} root {e:?}: table {rd}, rerooted {d}"));
                    }
                    match brute_depth(&g, (e.0, e.1), fl) {
                        Ok(b) if b != rd => fail(format!("{fl} root {e:?}: dp {rd}, brute {b}")),
                        Err(err) => fail(err.to_string()),
                        _ => {}
                    }
                    if let Err(v) = validate_system(&g, &sys) {
                        fail(format!("{fl} root {e:?}: witness {v}"));
                    }
                    if sys.depth() != rd {
                        fail(format!("{fl} root {e:?}: witness depth {}", sys.depth()));
                    }
                }
            }
            check_drawing_pipeline(&g, &mut fail);
            check_chain(&g, &mut fail);
        }
        if !out.json {
            println!("n {n:>2}: {graphs:>5} graphs, {roots:>6} rooted instances");
        }
        rows.push(json!({"n": n, "graphs": graphs, "rooted": roots}));
    }
    let ok = failures.is_empty();
    if out.json {
        println!("{}", json!({"ok": ok, "per_n": rows, "failures": failures}));
    } else {
        for f in failures.iter().take(20) {
            println!("FAIL {f}");
        }
        println!("{}", if ok { "all checks passed".to_string() } else { format!("{} failures", failures.len()) });
    }
    Ok(ok)
}

fn check_drawing_pipeline(g: &OuterplanarGraph, fail: &mut impl FnMut(String)) {
    let (d, sys): (Drawing, DepthSystem) = draw_auto(g);
    let bd = free_depth(g, Flavor::Bonnet).0;
    if let Err(v) = validate(g, &d) {
        return fail(format!("drawing invalid: {v}"));
    }
    if d.height() > 2 * bd + 1 || sys.depth() != bd {
        fail(format!("drawing height {} exceeds 2·{bd}+1", d.height()));
    }
    match certify_drawing(g, &d) {
        Ok(c) => {
            if let Err(v) = validate_system(g, &c.system) {
                fail(format!("certificate invalid: {v}"));
            }
            if c.extracted_depth + 1 > c.height {
                fail(format!("extracted depth {} vs height {}", c.extracted_depth, c.height));
            }
        }
        Err(e) => fail(format!("certify: {e}")),
    }
}

fn check_chain(g: &OuterplanarGraph, fail: &mut impl FnMut(String)) {
    let t = g.dual_tree();
    let (Ok(pw), Ok((rpw, _))) = (tree_pathwidth_guarded(&t, PATHWIDTH_GUARD), free_rooted_pathwidth(&t)) else {
        return fail("pathwidth failed".into());
    };
    if t.node_count() <= BRUTE_PATHWIDTH_GUARD && brute_tree_pathwidth(&t).ok() != Some(pw) {
        fail("pathwidth disagrees with brute force".into());
    }
    let bd = free_depth(g, Flavor::Bonnet).0;
    let ud = free_depth(g, Flavor::Umbrella).0;
    if !(pw <= 2 * bd && bd <= ud && ud <= rpw && rpw <= 1.max(2 * pw)) {
        fail(format!("chain pw={pw} bd={bd} ud={ud} rpw={rpw}"));
    }
    for fl in [Flavor::Bonnet, Flavor::Umbrella] {
        let free = free_depth(g, fl).0;
        if depth_by_root(g, fl).iter().any(|x| x.1 > free + 1) {
            fail(format!("{fl}: some root exceeds free depth + 1"));
        }
    }
}
