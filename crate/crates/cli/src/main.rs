//! `cdgraph`: build groups and modules, compute character degrees and degree
//! graphs, and check graph shapes against the classification cases.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use cdgraph_core::chardeg::character_degrees;
use cdgraph_core::classify::{predict_graph, verify_witness, ClassificationCase};
use cdgraph_core::graph::{degree_graph, PrimeGraph};
use cdgraph_core::group::{conjugacy_classes, DEFAULT_CEILING};
use cdgraph_core::input::{GroupSpec, WitnessSpec};
use cdgraph_core::modact::{check_nq, delta_orb, orbit_report, v_set_decomposition};
use cdgraph_core::suite;
use cdgraph_core::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "cdgraph",
    version,
    about = "Character degree graphs of groups with a composition factor SL2(2^a)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Largest group (or |H|·|V| table) to enumerate.
    #[arg(long, default_value_t = DEFAULT_CEILING as u64, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    ceiling: u64,

    /// Include long-running checks.
    #[arg(long, global = true)]
    long: bool,

    /// Write the document here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Build a group and report its order and classes.
    Group {
        #[arg(long)]
        spec: String,
    },
    /// Irreducible character degrees.
    Degrees {
        #[arg(long)]
        spec: String,
    },
    /// The character degree graph.
    Graph {
        #[arg(long)]
        spec: String,
    },
    /// Components, cut vertices and complete vertices of the degree graph.
    Analyze {
        #[arg(long)]
        spec: String,
    },
    /// Orbits of a module (semidirect spec) and its orbit graph.
    Orbits {
        #[arg(long)]
        spec: String,
    },
    /// Condition N_q for a module.
    Nq {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        q: u64,
    },
    /// V_I- / V_I+ / V_II decomposition of a module.
    Vsets {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        r: Option<u64>,
        #[arg(long)]
        s: Option<u64>,
    },
    /// Predicted graph of a classification case.
    Predict {
        #[arg(long)]
        spec: String,
    },
    /// Check a witness group against its declared case.
    Verify {
        #[arg(long)]
        spec: String,
    },
    /// Run every check.
    Suite,
}

/// A failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Malformed(_) | Error::UnknownModule(_) | Error::InvalidCase(_) => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

struct Output {
    json: Value,
    text: String,
    dot: Option<String>,
    ok: bool,
}

/// Inline JSON if it starts with `{`, otherwise a file path.
fn read_spec(spec: &str) -> Result<String, Failure> {
    if spec.trim_start().starts_with('{') {
        Ok(spec.to_string())
    } else {
        fs::read_to_string(spec).map_err(|e| usage(format!("cannot read {spec}: {e}")))
    }
}

fn parse_case(text: &str) -> Result<ClassificationCase, Failure> {
    serde_json::from_str(text).map_err(|e| usage(format!("malformed case: {e}")))
}

fn graph_text(g: &PrimeGraph) -> String {
    let vs: Vec<String> = g.vertices().iter().map(|p| p.to_string()).collect();
    let es: Vec<String> = g.edges().iter().map(|[p, q]| format!("{p}-{q}")).collect();
    format!("vertices: {}\nedges: {}\n", vs.join(" "), es.join(" "))
}

fn graph_output(g: PrimeGraph, mut json: Value, text: String) -> Output {
    if json.is_null() {
        json = serde_json::to_value(&g).expect("graph serializes");
    }
    Output {
        dot: Some(g.to_dot()),
        json,
        text: text + &graph_text(&g),
        ok: true,
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let ceiling = usize::try_from(cli.ceiling).unwrap_or(usize::MAX);
    let group = |spec: &str| -> Result<_, Failure> {
        Ok(GroupSpec::from_json(&read_spec(spec)?)?.build(ceiling)?)
    };
    let module = |spec: &str| -> Result<_, Failure> {
        Ok(GroupSpec::from_json(&read_spec(spec)?)?.module_action(ceiling)?)
    };
    Ok(match &cli.command {
        Command::Group { spec } => {
            let b = group(spec)?;
            let g = &b.group;
            let classes = conjugacy_classes(g);
            let json = json!({
                "name": g.name(),
                "order": g.order(),
                "classes": classes.len(),
                "class_sizes": classes.sizes(),
                "exponent": g.exponent(&classes),
                "pi_g_mod_r": b.pi_g_mod_r,
            });
            let text = format!(
                "{}: order {}, {} classes, exponent {}\n",
                g.name(),
                g.order(),
                classes.len(),
                g.exponent(&classes)
            );
            Output {
                json,
                text,
                dot: None,
                ok: true,
            }
        }
        Command::Degrees { spec } => {
            let b = group(spec)?;
            let d = character_degrees(&b.group)?;
            let json = json!({
                "name": b.group.name(),
                "order": b.group.order(),
                "degrees": d.pairs(),
                "degree_set": d.degree_set(),
            });
            let text = format!("{}: {d}\n", b.group.name());
            Output {
                json,
                text,
                dot: None,
                ok: true,
            }
        }
        Command::Graph { spec } => {
            let b = group(spec)?;
            let g = degree_graph(&character_degrees(&b.group)?);
            graph_output(g, Value::Null, String::new())
        }
        Command::Analyze { spec } => {
            let b = group(spec)?;
            let g = degree_graph(&character_degrees(&b.group)?);
            let comps = g.connected_components();
            let json = json!({
                "vertices": g.vertices(),
                "edges": g.edges(),
                "connected": g.is_connected(),
                "components": comps,
                "cut_vertices": g.cut_vertices(),
                "complete_vertices": g.complete_vertices(),
            });
            let shown: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
            let text = format!(
                "components: {}\ncut vertices: {}\ncomplete vertices: {}\n",
                shown.join(" "),
                g.cut_vertices(),
                g.complete_vertices()
            );
            graph_output(g, json, text)
        }
        Command::Orbits { spec } => {
            let m = module(spec)?;
            let r = orbit_report(&m);
            let g = delta_orb(&r);
            let json = json!({ "report": r, "delta_orb": g });
            let mut text = format!(
                "{}: |H| = {}, |V| = {}\n",
                r.module, r.group_order, r.module_size
            );
            for o in &r.orbits {
                text += &format!(
                    "orbit of {:?}: size {}, stabilizer order {}\n",
                    o.coordinates, o.size, o.stabilizer_order
                );
            }
            graph_output(g, json, text)
        }
        Command::Nq { spec, q } => {
            let m = module(spec)?;
            let r = check_nq(&m, &orbit_report(&m), *q)?;
            let text = format!(
                "{}: N_{} {} ({} failing vectors)\n",
                r.module,
                r.q,
                if r.satisfied { "holds" } else { "fails" },
                r.failing.len()
            );
            Output {
                json: serde_json::to_value(&r).expect("report serializes"),
                text,
                dot: None,
                ok: true,
            }
        }
        Command::Vsets { spec, r, s } => {
            let m = module(spec)?;
            let d = v_set_decomposition(&m, &orbit_report(&m), *r, *s)?;
            let mut json = serde_json::to_value(&d).expect("report serializes");
            json["dichotomy"] = json!(d.is_dichotomy());
            let text = format!(
                "{}: |V_I-| = {}, |V_I+| = {}, |V_II| = {}, dichotomy {}\n",
                d.module,
                d.v_i_minus.len(),
                d.v_i_plus.len(),
                d.v_ii.len(),
                d.is_dichotomy()
            );
            Output {
                json,
                text,
                dot: None,
                ok: true,
            }
        }
        Command::Predict { spec } => {
            let case = parse_case(&read_spec(spec)?)?;
            graph_output(predict_graph(&case)?, Value::Null, String::new())
        }
        Command::Verify { spec } => {
            let w = WitnessSpec::from_json(&read_spec(spec)?)?;
            let b = w.group.build(ceiling)?;
            let rep = verify_witness(&w.name, &b.group, &b.pi_g_mod_r, &w.case)?;
            let text = format!(
                "{}: {}\ncomputed: {}predicted: {}",
                rep.witness,
                if rep.pass { "pass" } else { "FAIL" },
                graph_text(&rep.computed)
                    .replace('\n', "; ")
                    .trim_end_matches("; ")
                    .to_string()
                    + "\n",
                graph_text(&rep.predicted)
                    .replace('\n', "; ")
                    .trim_end_matches("; ")
                    .to_string()
                    + "\n",
            );
            Output {
                dot: Some(rep.computed.to_dot()),
                json: serde_json::to_value(&rep).expect("report serializes"),
                text,
                ok: rep.pass,
            }
        }
        Command::Suite => {
            let r = suite::run(cli.long, ceiling);
            let mut text = String::new();
            for c in &r.checks {
                text += &format!(
                    "[{}] {:>2} {}: {}\n",
                    if c.pass { "pass" } else { "FAIL" },
                    c.id,
                    c.title,
                    c.detail
                );
            }
            text += &format!("{} passed, {} failed\n", r.passed, r.failed);
            Output {
                ok: r.all_passed(),
                json: serde_json::to_value(&r).expect("report serializes"),
                text,
                dot: None,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|out| {
        let doc = match cli.format {
            Format::Json => serde_json::to_string(&out.json).expect("json") + "\n",
            Format::Text => out.text,
            Format::Dot => out
                .dot
                .ok_or_else(|| usage("this command has no DOT output"))?,
        };
        match &cli.out {
            Some(path) => fs::write(path, doc).map_err(|e| Failure {
                code: 1,
                message: format!("cannot write {}: {e}", path.display()),
            })?,
            None => print!("{doc}"),
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
