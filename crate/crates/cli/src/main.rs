mod render;

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use tropex::balance::{self, Weighting};
use tropex::complex::Complex;
use tropex::cone::{self, WeightCone};
use tropex::decompose;
use tropex::exactq::{format_rational, format_vec, Rational};
use tropex::reciprocal;
use tropex::rigidity::{self, Framework};
use tropex::tropcurve::{structure_report, Curve, EdgeKind};
use tropex::{corpus, Error, Result};

#[derive(Parser)]
#[command(name = "tropex", version, about = "Extremality and decompositions of tropical varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tropical curve and dual subdivision of a polynomial.
    Curve(Common),
    /// Balance matrix rank, extremality and (optionally) a weighting check.
    Check(Common),
    /// Balanced weightings: kernel basis and vertices of the weight polytope.
    Weightings(Common),
    /// Extremal decomposition.
    Decompose(Common),
    /// Rigidity of a framework, or of the subdivision skeleton of a polynomial.
    Rigidity(Common),
    /// Dual graph and reciprocal diagram of a polynomial curve.
    Reciprocal(Common),
    /// SVG drawing of a curve, subdivision, reciprocal diagram or framework.
    Render(Common),
    /// Run the built-in fixtures, or print one.
    Fixtures {
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Use brute-force vertex enumeration instead of the edge walk.
    #[arg(long)]
    oracle: bool,
    /// Cap on candidate sets for vertex enumeration.
    #[arg(long, default_value_t = cone::DEFAULT_LIMIT)]
    limit: usize,
    /// Weighting JSON file mapping face ids to rationals.
    #[arg(long)]
    weighting: Option<PathBuf>,
    /// Require every face in the weighting file.
    #[arg(long)]
    strict: bool,
    /// What to draw for polynomial input.
    #[arg(long, value_enum, default_value = "curve")]
    target: Target,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    #[arg(long)]
    poly: Option<String>,
    #[arg(long)]
    complex: Option<PathBuf>,
    #[arg(long)]
    framework: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Curve,
    Subdivision,
    Reciprocal,
}

enum Loaded {
    Poly(Curve),
    Complex(Complex),
    Framework(Framework),
}

impl Loaded {
    fn complex(&self) -> Result<Complex> {
        match self {
            Loaded::Poly(c) => Ok(c.to_complex()),
            Loaded::Complex(c) => Ok(c.clone()),
            Loaded::Framework(_) => Err(Error::InvalidInput("this command needs --poly or --complex".into())),
        }
    }

    fn curve(&self) -> Result<&Curve> {
        match self {
            Loaded::Poly(c) => Ok(c),
            _ => Err(Error::InvalidInput("this command needs --poly".into())),
        }
    }
}

fn read(path: &PathBuf) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn load(input: &Input) -> Result<Loaded> {
    if let Some(p) = &input.poly {
        return Ok(Loaded::Poly(Curve::parse(p)?));
    }
    if let Some(path) = &input.complex {
        return Ok(Loaded::Complex(Complex::from_json_str(&read(path)?)?));
    }
    let path = input.framework.as_ref().expect("clap enforces one input");
    Ok(Loaded::Framework(Framework::from_json_str(&read(path)?)?))
}

fn strs(vs: &[Vec<Rational>]) -> Value {
    json!(vs.iter().map(|v| format_vec(v)).collect::<Vec<_>>())
}

fn weighting_map(c: &Complex, v: &[Rational]) -> Value {
    json!(Weighting::new(v.to_vec()).to_json(c))
}

fn curve_json(c: &Curve) -> Value {
    let sd = &c.subdivision;
    let pt = |p: (i64, i64)| json!([p.0, p.1]);
    json!({
        "polynomial": c.polynomial.to_string(),
        "vertices": c.vertices.iter().enumerate().map(|(i, v)| json!({
            "id": c.vertex_id(i),
            "point": format_vec(v),
        })).collect::<Vec<_>>(),
        "edges": c.edges.iter().enumerate().map(|(i, e)| {
            let mut o = json!({
                "id": c.edge_id(i),
                "direction": [e.direction[0].to_string(), e.direction[1].to_string()],
                "weight": e.weight.to_string(),
                "dual": [pt(sd.edges[e.dual].a), pt(sd.edges[e.dual].b)],
            });
            match &e.kind {
                EdgeKind::Segment { from, to } => {
                    o["kind"] = json!("segment");
                    o["from"] = json!(c.vertex_id(*from));
                    o["to"] = json!(c.vertex_id(*to));
                }
                EdgeKind::Ray { from } => {
                    o["kind"] = json!("ray");
                    o["from"] = json!(c.vertex_id(*from));
                }
                EdgeKind::Line { point } => {
                    o["kind"] = json!("line");
                    o["point"] = json!(format_vec(point));
                }
            }
            o
        }).collect::<Vec<_>>(),
        "subdivision": {
            "points": sd.points.iter().map(|&p| pt(p)).collect::<Vec<_>>(),
            "newton_polytope": sd.newton_polytope.iter().map(|&p| pt(p)).collect::<Vec<_>>(),
            "cells": sd.cells.iter().map(|cell| cell.corners.iter().map(|&p| pt(p)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "edges": sd.edges.iter().map(|e| json!({
                "a": pt(e.a),
                "b": pt(e.b),
                "lattice_length": e.lattice_length,
                "boundary": e.is_boundary(),
            })).collect::<Vec<_>>(),
            "degenerate": sd.degenerate,
        },
        "structure": structure_report(c),
    })
}

fn check(args: &Common, loaded: &Loaded) -> Result<Value> {
    let c = loaded.complex()?;
    let m = balance::build_r(&c)?;
    let validation = c.validate();
    let mut out = json!({
        "num_faces": c.num_faces(),
        "num_ridges": c.num_ridges(),
        "rank": m.r.rank(),
        "weighting_space_dim": balance::weighting_space_dim(&m),
        "extremal_bound_holds": balance::check_extremal_bound(&c),
        "validation": validation,
    });
    if let Some(path) = &args.weighting {
        let w = Weighting::from_json_str(&c, &read(path)?, args.strict)?;
        let rep = balance::is_balanced(&c, &m, &w)?;
        out["weighting"] = json!({
            "kind": w.kind(),
            "balanced": rep.balanced,
            "residuals": rep.residuals.iter().map(|r| (r.ridge.clone(), format_vec(&r.residual))).collect::<std::collections::BTreeMap<_, _>>(),
        });
    }
    if let Loaded::Poly(curve) = loaded {
        out["structure"] = json!(structure_report(curve));
        let w = curve.weighting();
        out["curve_weighting_balanced"] = json!(balance::is_balanced(&c, &m, &w)?.balanced);
    }
    let cert = balance::is_extremal(&c, &m)?;
    out["extremal"] = json!(cert.extremal);
    out["left_kernel"] = strs(&cert.left_kernel);
    Ok(out)
}

fn weightings(args: &Common, loaded: &Loaded) -> Result<Value> {
    let c = loaded.complex()?;
    let m = balance::build_r(&c)?;
    let cone = WeightCone::new(&m);
    let vertex = cone::find_vertex(&m.r);
    let mut out = json!({
        "face_ids": c.face_ids(),
        "dim": cone.dim(),
        "kernel_basis": strs(&cone.kernel_basis),
        "find_vertex": vertex.as_ref().map(|v| format_vec(v)),
        "positive_weighting": cone::positive_weighting(&m.r).as_ref().map(|v| format_vec(v)),
    });
    let vs = cone::enumerate_vertices_bruteforce(&m.r, args.limit)?;
    out["vertices"] = strs(&vs);
    out["simplex"] = json!(cone::is_simplex(&vs));
    out["polytope_dim"] = json!(cone::polytope_dim(&vs));
    out["extremal_subvarieties"] = json!(vs
        .iter()
        .map(|v| {
            let p = cone::ExtremalPart::from_vertex(v.clone());
            json!(decompose::part_json(&c, &p))
        })
        .collect::<Vec<_>>());
    Ok(out)
}

fn decompose_cmd(args: &Common, loaded: &Loaded) -> Result<Value> {
    let c = loaded.complex()?;
    let m = balance::build_r(&c)?;
    let d = if args.oracle {
        decompose::decompose_oracle(&c, &m, args.limit)?
    } else {
        decompose::decompose(&c, &m)?
    };
    let unique = match decompose::unique_decomposition(&m, args.limit) {
        Ok(u) => Some(u.is_some()),
        Err(Error::LimitExceeded(_)) => None,
        Err(e) => return Err(e),
    };
    let mut out = json!(decompose::to_json(&c, &d.parts, unique, decompose::decomposition_upper_bound(&m)));
    out["used_fallback"] = json!(d.used_fallback && !args.oracle);
    out["covering_weighting"] = weighting_map(&c, &d.covering_weighting());
    out["part_ranks"] = json!(d.part_ranks);
    Ok(out)
}

fn subdivision_framework(curve: &Curve) -> Result<Framework> {
    let sd = &curve.subdivision;
    let dg = reciprocal::dual_graph(curve)?;
    let vertices = sd
        .vertices
        .iter()
        .map(|&p| {
            (
                reciprocal::region_id(p),
                vec![Rational::from_integer(p.0.into()), Rational::from_integer(p.1.into())],
            )
        })
        .collect();
    let edges: Vec<(String, String)> = dg
        .edges
        .iter()
        .map(|e| (dg.regions[e.u].clone(), dg.regions[e.v].clone()))
        .collect();
    Framework::new(2, vertices, &edges)
}

fn framework_of(loaded: &Loaded) -> Result<Framework> {
    match loaded {
        Loaded::Framework(fw) => Ok(fw.clone()),
        Loaded::Poly(curve) => subdivision_framework(curve),
        Loaded::Complex(_) => Err(Error::InvalidInput("rigidity needs --framework or --poly".into())),
    }
}

fn rigidity_cmd(loaded: &Loaded) -> Result<Value> {
    let fw = framework_of(loaded)?;
    let r = rigidity::rigidity_matrix(&fw);
    let cert = rigidity::is_infinitesimally_rigid(&fw);
    let pebble = rigidity::pebble_game_framework(&fw);
    let mut out = json!({
        "vertices": fw.ids,
        "edges": fw.edges.iter().map(|&(u, v)| [fw.ids[u].clone(), fw.ids[v].clone()]).collect::<Vec<_>>(),
        "rigidity_matrix": strs(&r.to_rows()),
        "rank": cert.rank,
        "kernel_dim": cert.kernel_dim,
        "trivial_dim": cert.trivial_dim,
        "affine_dim": fw.affine_dim(),
        "infinitesimally_rigid": cert.rigid,
        "direction_dim": rigidity::direction_space(&fw)?.len(),
        "direction_rigid": rigidity::is_direction_rigid(&fw)?,
    });
    if fw.dim == 2 {
        out["pebble_rigid"] = json!(pebble.rigid);
        out["independent_edges"] = json!(pebble.independent);
        out["perp_rank"] = json!(rigidity::rigidity_matrix(&rigidity::perp(&fw)?).rank());
    }
    Ok(out)
}

fn reciprocal_diagram(args: &Common, curve: &Curve) -> Result<reciprocal::ReciprocalDiagram> {
    let dg = reciprocal::dual_graph(curve)?;
    let weights = match &args.weighting {
        Some(path) => {
            let c = curve.to_complex();
            Weighting::from_json_str(&c, &read(path)?, true)?.values
        }
        None => curve.weighting().values,
    };
    reciprocal::build_reciprocal(&dg, &weights)
}

fn reciprocal_cmd(args: &Common, loaded: &Loaded) -> Result<Value> {
    let curve = loaded.curve()?;
    let rd = reciprocal_diagram(args, curve)?;
    let back = reciprocal::weighting_from_diagram(&rd)?;
    let fw = &rd.framework;
    Ok(json!({
        "dual_graph": rd.graph.to_json(),
        "positions": fw.ids.iter().zip(&fw.points).map(|(id, p)| (id.clone(), format_vec(p))).collect::<std::collections::BTreeMap<_, _>>(),
        "recovered_weighting": rd.graph.edges.iter().zip(&back.values).map(|(e, v)| (e.face.clone(), format_rational(v))).collect::<std::collections::BTreeMap<_, _>>(),
        "integral": back.integral,
        "main_theorem": reciprocal::check_main_theorem(curve)?,
    }))
}

fn render_cmd(args: &Common, loaded: &Loaded) -> Result<String> {
    match loaded {
        Loaded::Framework(fw) => render::framework(fw),
        Loaded::Complex(_) => Err(Error::InvalidInput("render needs --poly or --framework".into())),
        Loaded::Poly(curve) => match args.target {
            Target::Curve => Ok(render::curve(curve)),
            Target::Subdivision => Ok(render::subdivision(curve)),
            Target::Reciprocal => render::framework(&reciprocal_diagram(args, curve)?.framework),
        },
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn run(cli: Cli) -> Result<(Output, Option<PathBuf>, bool)> {
    let (args, command) = match cli.command {
        Command::Fixtures { name, out } => {
            return Ok(match name {
                Some(n) => {
                    let (file, text) = corpus::input_text(&n)
                        .ok_or_else(|| Error::InvalidInput(format!("no fixture named {n}")))?;
                    let f = corpus::load(&n)?;
                    let v = json!({
                        "name": n,
                        "input_file": file,
                        "input": text,
                        "expected": f.expected,
                        "mismatches": corpus::run(&f),
                    });
                    (Output::Json(v), out, true)
                }
                None => {
                    let all = corpus::run_all();
                    let ok = all.iter().all(|o| o.passed);
                    (Output::Json(json!(all)), out, ok)
                }
            });
        }
        Command::Curve(a) => (a, "curve"),
        Command::Check(a) => (a, "check"),
        Command::Weightings(a) => (a, "weightings"),
        Command::Decompose(a) => (a, "decompose"),
        Command::Rigidity(a) => (a, "rigidity"),
        Command::Reciprocal(a) => (a, "reciprocal"),
        Command::Render(a) => (a, "render"),
    };
    let loaded = load(&args.input)?;
    if command == "render" || args.format == Format::Svg {
        let svg = match command {
            "render" => render_cmd(&args, &loaded)?,
            "curve" => render::curve(loaded.curve()?),
            "reciprocal" => render::framework(&reciprocal_diagram(&args, loaded.curve()?)?.framework)?,
            "rigidity" => render::framework(&framework_of(&loaded)?)?,
            other => return Err(Error::InvalidInput(format!("{other} has no SVG output"))),
        };
        return Ok((Output::Text(svg), args.out, true));
    }
    let value = match command {
        "curve" => curve_json(loaded.curve()?),
        "check" => check(&args, &loaded)?,
        "weightings" => weightings(&args, &loaded)?,
        "decompose" => decompose_cmd(&args, &loaded)?,
        "rigidity" => rigidity_cmd(&loaded)?,
        "reciprocal" => reciprocal_cmd(&args, &loaded)?,
        _ => unreachable!(),
    };
    Ok((Output::Json(value), args.out, true))
}

fn emit(text: &str, out: Option<PathBuf>) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok((output, out, ok)) => {
            let text = match output {
                Output::Json(v) => serde_json::to_string_pretty(&v).expect("serializable") + "\n",
                Output::Text(t) => t,
            };
            if let Err(e) = emit(&text, out) {
                eprintln!("tropex: {e}");
                return ExitCode::from(2);
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let v = json!({"error": e.kind(), "message": e.to_string()});
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
