use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quiveralg::format::parse_file;
use quiveralg::homological::{
    ext_dim, min_injective_coresolution, min_projective_resolution, Resolution,
};
use quiveralg::orthogonal::{enumerate_with_table, ext_table, nakayama_atlas, IndecomposableAtlas};
use quiveralg::structure::{is_nakayama, structure_report, verify_theorem, StructureReport, TheoremId};
use quiveralg::{compute_algebra, named_fixture, AlgebraTable, Error, FixtureTag, Representation, Result};

#[derive(Parser, Debug)]
#[command(name = "quiveralg", version, about = "Homological invariants of bound quiver algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure report: global dimension, Auslander order, Nakayama, blocks.
    Analyze {
        /// `fixture:TAG` or a presentation file.
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Minimal projective resolution (or injective coresolution) of a module.
    Resolve {
        input: String,
        /// `S2`, `P(3)`, `I1`, `regular`, `coregular` or a module named in the file.
        #[arg(long)]
        module: String,
        #[arg(long)]
        injective: bool,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// `dim Ext^k(M, N)`.
    Ext {
        input: String,
        m: String,
        n: String,
        k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Maximal n-orthogonal subcategories over the indecomposables.
    Enumerate {
        input: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Check a structural statement, or `all` of them.
    Verify {
        input: String,
        #[arg(long)]
        theorem: String,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// List the built-in presentations.
    Fixtures {
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

struct Input {
    algebra: Arc<AlgebraTable>,
    modules: Vec<(String, Representation)>,
}

fn load(input: &str) -> Result<Input> {
    if let Some(tag) = input.strip_prefix("fixture:") {
        let tag: FixtureTag = tag.parse()?;
        let algebra = compute_algebra(&named_fixture(tag)?)?;
        return Ok(Input {
            algebra,
            modules: Vec::new(),
        });
    }
    let doc = parse_file(Path::new(input))?;
    let algebra = compute_algebra(&doc.presentation)?;
    let modules = doc
        .modules
        .iter()
        .map(|lit| Ok((lit.name.clone(), Representation::from_literal(algebra.clone(), lit)?)))
        .collect::<Result<_>>()?;
    Ok(Input { algebra, modules })
}

fn select(input: &Input, sel: &str) -> Result<Representation> {
    let a = &input.algebra;
    if let Some((_, m)) = input.modules.iter().find(|(name, _)| name == sel) {
        return Ok(m.clone());
    }
    match sel {
        "regular" => return Ok(Representation::regular(a)),
        "coregular" => return Ok(Representation::coregular(a)),
        _ => {}
    }
    let mut chars = sel.chars();
    let kind = chars.next();
    let rest: String = chars.collect();
    let digits = rest.trim_start_matches('(').trim_end_matches(')');
    let vertex: Option<usize> = digits.parse().ok();
    match (kind, vertex) {
        (Some('S'), Some(v)) => Representation::simple(a, v),
        (Some('P'), Some(v)) => Representation::projective(a, v),
        (Some('I'), Some(v)) => Representation::injective(a, v),
        _ => Err(Error::InvalidModule(format!("unknown module selector `{sel}`"))),
    }
}

fn atlas_for(input: &Input) -> Result<IndecomposableAtlas> {
    if is_nakayama(&input.algebra)? {
        return nakayama_atlas(&input.algebra);
    }
    if input.modules.is_empty() {
        return Err(Error::IndecomposablesUnavailable(
            "algebra is not Nakayama and the input lists no modules".into(),
        ));
    }
    IndecomposableAtlas::user_supplied(&input.algebra, input.modules.clone())
}

fn print(format: OutputFormat, text: String, value: Value) {
    match format {
        OutputFormat::Text => print!("{text}"),
        OutputFormat::Json => println!("{}", serde_json::to_string_pretty(&value).expect("serializable")),
    }
}

fn report_text(r: &StructureReport) -> String {
    let mut out = String::new();
    let opt = |x: Option<usize>| x.map_or("none".to_string(), |n| n.to_string());
    out += &format!("vertices: {}\n", r.vertex_count);
    out += &format!("dimension: {}\n", r.dimension);
    out += &format!("connected: {}\n", r.is_connected);
    out += &format!("blocks: {:?}\n", r.blocks);
    out += &format!("gl_dim: {}\n", r.gl_dim);
    out += &format!("auslander_order: {}\n", opt(r.auslander_order));
    out += &format!("is_nakayama: {}\n", r.is_nakayama);
    let c = &r.admits_trivial_mos;
    out += &format!(
        "admits_trivial_mos: {} (witness {})\n",
        c.holds,
        c.witness.map_or("none".into(), |v| format!("S({v})"))
    );
    if let Some(note) = &r.trivial_mos_note {
        out += &format!("  note: {note}\n");
    }
    out += &format!("gorenstein_orders: {:?} (checked 1..={})\n", r.gorenstein_orders, r.gorenstein_range);
    out += &format!("corollary_4_12_flag: {}\n", r.corollary_4_12_flag);
    out += "simples:\n";
    for s in &r.simples.simples {
        out += &format!(
            "  S({}): pd {} id {}{}{}\n",
            s.vertex,
            s.pd,
            s.id,
            if s.is_projective { " projective" } else { "" },
            if s.is_injective { " injective" } else { "" }
        );
    }
    out
}

fn resolution_text(r: &Resolution, module: &str) -> String {
    let mut out = r.to_string();
    let arrow = if r.kind == quiveralg::homological::ResolutionKind::MinimalProjective {
        let chain: Vec<String> = (0..r.terms.len()).rev().map(|k| r.term_label(k)).collect();
        format!("0 -> {} -> {module} -> 0\n", chain.join(" -> "))
    } else {
        let chain: Vec<String> = (0..r.terms.len()).map(|k| r.term_label(k)).collect();
        format!("0 -> {module} -> {} -> 0\n", chain.join(" -> "))
    };
    out += &arrow;
    out
}

fn run(command: Command) -> Result<bool> {
    match command {
        Command::Analyze { input, format } => {
            let input = load(&input)?;
            let r = structure_report(&input.algebra)?;
            print(format, report_text(&r), serde_json::to_value(&r).expect("serializable"));
        }
        Command::Resolve {
            input,
            module,
            injective,
            max_len,
            format,
        } => {
            let inp = load(&input)?;
            let m = select(&inp, &module)?;
            let budget = max_len.unwrap_or(2 * inp.algebra.dimension());
            let r = if injective {
                min_injective_coresolution(&m, budget)?
            } else {
                min_projective_resolution(&m, budget)?
            };
            let mut value = r.to_json();
            value["module"] = json!(module);
            print(format, resolution_text(&r, &module), value);
        }
        Command::Ext { input, m, n, k, format } => {
            let inp = load(&input)?;
            let (x, y) = (select(&inp, &m)?, select(&inp, &n)?);
            let d = ext_dim(&x, &y, k)?;
            print(
                format,
                format!("dim Ext^{k}({m}, {n}) = {d}\n"),
                json!({ "m": m, "n": n, "k": k, "dim": d }),
            );
        }
        Command::Enumerate { input, n, format } => {
            if n == 0 {
                return Err(Error::InvalidModule("--n must be at least 1".into()));
            }
            let inp = load(&input)?;
            let atlas = atlas_for(&inp)?;
            let table = ext_table(&atlas, n);
            let found = enumerate_with_table(&atlas, &table)?;
            let mut text = format!("{} candidates\n", found.len());
            for c in &found {
                let names: Vec<&str> = c.members.iter().map(|&i| atlas.labels[i].as_str()).collect();
                text += &format!(
                    "  {{{}}}{}\n",
                    names.join(", "),
                    if c.is_trivial { " (trivial)" } else { "" }
                );
            }
            if !atlas.is_complete() {
                text += "note: completeness attested by user\n";
            }
            let modules: Vec<Value> = atlas
                .modules
                .iter()
                .zip(&atlas.labels)
                .map(|(m, l)| json!({ "label": l, "dims": m.dims() }))
                .collect();
            let value = json!({
                "n": n,
                "atlas": { "origin": atlas.origin, "modules": modules },
                "ext": table.cells,
                "candidates": found,
                "note": "functorial finiteness assumed for additive closures of finite lists",
            });
            print(format, text, value);
        }
        Command::Verify { input, theorem, format } => {
            let inp = load(&input)?;
            let supplied = if inp.modules.is_empty() {
                None
            } else {
                Some(IndecomposableAtlas::user_supplied(&inp.algebra, inp.modules.clone())?)
            };
            let ids: Vec<TheoremId> = if theorem.eq_ignore_ascii_case("all") {
                TheoremId::ALL.to_vec()
            } else {
                vec![theorem.parse()?]
            };
            let single = ids.len() == 1;
            let mut text = String::new();
            let mut values = Vec::new();
            let mut all_passed = true;
            for t in ids {
                match verify_theorem(&inp.algebra, t, supplied.as_ref()) {
                    Ok(v) => {
                        all_passed &= v.passed;
                        text += &v.to_string();
                        values.push(serde_json::to_value(&v).expect("serializable"));
                    }
                    Err(e @ (Error::HypothesisUnmet { .. } | Error::IndecomposablesUnavailable(_))) if !single => {
                        text += &format!("{t}: SKIPPED ({e})\n");
                        values.push(json!({ "theorem": t.tag(), "skipped": e.to_string() }));
                    }
                    Err(e) => return Err(e),
                }
            }
            let value = if single { values.remove(0) } else { Value::Array(values) };
            print(format, text, value);
            return Ok(all_passed);
        }
        Command::Fixtures { format } => {
            let mut text = String::new();
            let mut values = Vec::new();
            for tag in FixtureTag::corpus() {
                let a = compute_algebra(&named_fixture(tag)?)?;
                text += &format!(
                    "fixture:{tag}  vertices {}  arrows {}  dim {}\n",
                    a.vertex_count(),
                    a.arrow_count(),
                    a.dimension()
                );
                values.push(json!({
                    "tag": format!("fixture:{tag}"),
                    "vertices": a.vertex_count(),
                    "arrows": a.arrow_count(),
                    "dimension": a.dimension(),
                }));
            }
            text += &format!("tag families: {}\n", FixtureTag::ALL_NAMES.join(", "));
            print(format, text, Value::Array(values));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("QUIVERALG_LOG")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 2 } else { 1 })
        }
    }
}
