//! `jring`: command-line access to the jring library.
//!
//! Exit status: 0 on success, 1 on a usage error, 2 on a domain error.

use std::fmt;
use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use jring::classify::classify;
use jring::contract::{contract, contract_to_core, is_contractible, presentation};
use jring::diagram::CoxeterDiagram;
use jring::format;
use jring::jring::{mul, JElement};
use jring::quiver::{double_quiver, GDQuiver};
use jring::rep::{
    check_representation, decompose_dihedral, is_simple, simple_family_member, witness_nonsemisimple, Field, Representation,
    Simplicity,
};
use jring::rewrite::{normal_form, phi, AlgebraElement, FamilyKind, PolynomialFamily};

#[derive(Parser)]
#[command(name = "jring", version, about = "Subregular J-rings, their quivers and representations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(clap::Args)]
struct DiagramArg {
    /// Diagram file (JSON with `vertices` and `edges`).
    #[arg(long)]
    diagram: String,
}

#[derive(clap::Args)]
struct QuiverSource {
    /// Diagram file; its double quiver is used.
    #[arg(long, conflicts_with = "quiver")]
    diagram: Option<String>,
    /// Quiver file (JSON with `vertices` and `arrows`).
    #[arg(long)]
    quiver: Option<String>,
}

#[derive(clap::Args)]
struct FamilyArg {
    /// Polynomial family defining the relations.
    #[arg(long, default_value = "chebyshev")]
    family: FamilyKind,
}

#[derive(Subcommand)]
enum Command {
    /// List the rigid words of length at most --max-len.
    Cell {
        #[command(flatten)]
        d: DiagramArg,
        #[arg(long)]
        max_len: usize,
    },
    /// Test whether a word is rigid.
    Rigid {
        #[command(flatten)]
        d: DiagramArg,
        #[arg(long)]
        word: String,
    },
    /// Multiply two basis elements of the J-ring.
    Mul {
        #[command(flatten)]
        d: DiagramArg,
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Print the double quiver of a diagram.
    Quiver {
        #[command(flatten)]
        d: DiagramArg,
    },
    /// Normal form of a path (or an element file) modulo the evaluation ideal.
    Nf {
        #[command(flatten)]
        src: QuiverSource,
        #[command(flatten)]
        fam: FamilyArg,
        #[arg(long, conflicts_with = "element")]
        path: Option<String>,
        /// Element file: a list of {path, coeff} terms.
        #[arg(long)]
        element: Option<String>,
    },
    /// Image of a path (or an element file) in the J-ring.
    Phi {
        #[command(flatten)]
        d: DiagramArg,
        #[arg(long, conflicts_with = "element")]
        path: Option<String>,
        #[arg(long)]
        element: Option<String>,
    },
    /// Contract one arrow pair, or contract to the core.
    Contract {
        #[command(flatten)]
        src: QuiverSource,
        /// Arrow to contract; defaults to the first contractible one.
        #[arg(long, conflicts_with = "core")]
        arrow: Option<String>,
        #[arg(long)]
        core: bool,
        /// Drop the loop left by a weight-3 pair.
        #[arg(long)]
        elide: bool,
    },
    /// Presentation of a one-vertex quiver (use --core to contract first).
    Present {
        #[command(flatten)]
        src: QuiverSource,
        #[command(flatten)]
        fam: FamilyArg,
        #[arg(long)]
        core: bool,
    },
    /// Classify a diagram.
    Classify {
        #[command(flatten)]
        d: DiagramArg,
    },
    /// Check the relations on a representation file.
    RepCheck {
        #[arg(long)]
        rep: String,
        #[command(flatten)]
        fam: FamilyArg,
    },
    /// Decompose a representation of a dihedral quotient into simples.
    RepDecompose {
        #[arg(long)]
        rep: String,
        #[command(flatten)]
        fam: FamilyArg,
    },
    /// Test a representation for simplicity.
    RepSimple {
        #[arg(long)]
        rep: String,
    },
    /// Build a non-semisimple witness, or with --simple a member of the simple family.
    Witness {
        #[command(flatten)]
        d: DiagramArg,
        #[command(flatten)]
        fam: FamilyArg,
        /// Field modulus such as `x^2+x+1`; rationals by default.
        #[arg(long, default_value = "q")]
        field: String,
        /// The scalar parameter.
        #[arg(long, default_value = "1")]
        x: String,
        #[arg(long)]
        simple: bool,
    },
}

/// A domain error with the tag of the module that raised it.
struct Failure {
    tag: &'static str,
    message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error[{}]: {}", self.tag, self.message)
    }
}

fn fail<E: fmt::Display>(tag: &'static str) -> impl Fn(E) -> Failure {
    move |e| Failure { tag, message: e.to_string() }
}

fn read(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure { tag: "io", message: format!("{path}: {e}") })
}

fn read_json(path: &str) -> Result<Value, Failure> {
    serde_json::from_str(&read(path)?).map_err(fail("format"))
}

fn load_diagram(path: &str) -> Result<CoxeterDiagram, Failure> {
    CoxeterDiagram::parse(&read(path)?).map_err(fail("diagram"))
}

fn load_quiver(src: &QuiverSource) -> Result<GDQuiver, Failure> {
    match (&src.diagram, &src.quiver) {
        (Some(d), _) => Ok(double_quiver(&load_diagram(d)?)),
        (None, Some(q)) => format::quiver_from_json(&read_json(q)?).map_err(fail("format")),
        (None, None) => Err(Failure { tag: "usage", message: "one of --diagram or --quiver is required".into() }),
    }
}

fn load_rep(path: &str) -> Result<Representation, Failure> {
    format::representation_from_json(&read_json(path)?).map_err(fail("format"))
}

fn load_element(q: &GDQuiver, path: &Option<String>, element: &Option<String>) -> Result<AlgebraElement, Failure> {
    match (path, element) {
        (Some(p), _) => Ok(AlgebraElement::path(q.parse_path(p).map_err(fail("quiver"))?)),
        (None, Some(f)) => format::algebra_from_json(&read_json(f)?, q).map_err(fail("format")),
        (None, None) => Err(Failure { tag: "usage", message: "one of --path or --element is required".into() }),
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

fn quiver_text(q: &GDQuiver) -> String {
    let mut s = format!("vertices: {}\n", q.vertices().join(" "));
    for a in q.arrows() {
        s.push_str(&format!(
            "{}: {} -> {} m={} dual={}\n",
            a.id,
            q.vertices()[a.source],
            q.vertices()[a.target],
            a.weight,
            q.arrow(a.dual).id
        ));
    }
    s.pop();
    s
}

fn rep_text(m: &Representation) -> String {
    let q = m.quiver();
    let mut s = String::new();
    for (v, n) in q.vertices().iter().zip(m.dims()) {
        s.push_str(&format!("dim {v} = {n}\n"));
    }
    for (a, x) in q.arrows().iter().zip(m.maps()) {
        s.push_str(&format!("{} = {x}\n", a.id));
    }
    s.pop();
    s
}

fn run(cli: Cli) -> Result<String, Failure> {
    let structured = cli.format == Format::Structured;
    match cli.command {
        Command::Cell { d, max_len } => {
            let d = load_diagram(&d.diagram)?;
            let words: Vec<String> = d.enumerate_cell(max_len).iter().map(|w| d.format_word(w)).collect();
            Ok(if structured { pretty(&json!(words)) } else { words.join("\n") })
        }
        Command::Rigid { d, word } => {
            let d = load_diagram(&d.diagram)?;
            let w = d.parse_word(&word).map_err(fail("diagram"))?;
            let r = d.is_rigid(&w).map_err(fail("diagram"))?;
            Ok(if structured { json!({ "word": word, "rigid": r }).to_string() } else { r.to_string() })
        }
        Command::Mul { d, lhs, rhs } => {
            let d = load_diagram(&d.diagram)?;
            let x = JElement::basis(d.parse_word(&lhs).map_err(fail("diagram"))?);
            let y = JElement::basis(d.parse_word(&rhs).map_err(fail("diagram"))?);
            let p = mul(&x, &y, &d).map_err(fail("jring"))?;
            Ok(if structured { pretty(&format::jelement_to_json(&p, &d)) } else { p.display(&d).to_string() })
        }
        Command::Quiver { d } => {
            let q = double_quiver(&load_diagram(&d.diagram)?);
            Ok(if structured { pretty(&format::quiver_to_json(&q)) } else { quiver_text(&q) })
        }
        Command::Nf { src, fam, path, element } => {
            let q = load_quiver(&src)?;
            let x = load_element(&q, &path, &element)?;
            let nf = normal_form(&x, &PolynomialFamily::new(fam.family), &q);
            Ok(if structured { pretty(&format::algebra_to_json(&nf, &q)) } else { nf.display(&q).to_string() })
        }
        Command::Phi { d, path, element } => {
            let d = load_diagram(&d.diagram)?;
            let q = double_quiver(&d);
            let x = load_element(&q, &path, &element)?;
            let y = phi(&x, &q, &d).map_err(fail("rewrite"))?;
            Ok(if structured { pretty(&format::jelement_to_json(&y, &d)) } else { y.display(&d).to_string() })
        }
        Command::Contract { src, arrow, core, elide } => {
            let q = load_quiver(&src)?;
            if core {
                let (c, trace) = contract_to_core(&q);
                return Ok(if structured {
                    pretty(&json!({ "quiver": format::quiver_to_json(&c), "trace": trace }))
                } else {
                    quiver_text(&c)
                });
            }
            let a = match arrow {
                Some(id) => q.arrow_index(&id).ok_or_else(|| Failure { tag: "quiver", message: format!("unknown arrow `{id}`") })?,
                None => (0..q.arrows().len())
                    .find(|&a| is_contractible(&q, a))
                    .ok_or_else(|| Failure { tag: "contract", message: "no contractible arrow".into() })?,
            };
            let (c, step) = contract(&q, a, elide).map_err(fail("contract"))?;
            Ok(if structured {
                pretty(&json!({ "quiver": format::quiver_to_json(&c), "step": step }))
            } else {
                quiver_text(&c)
            })
        }
        Command::Present { src, fam, core } => {
            let mut q = load_quiver(&src)?;
            if core {
                q = contract_to_core(&q).0;
            }
            let p = presentation(&q, &PolynomialFamily::new(fam.family)).map_err(fail("contract"))?;
            Ok(if structured { pretty(&json!(p)) } else { p.to_string() })
        }
        Command::Classify { d } => {
            let r = classify(&load_diagram(&d.diagram)?);
            Ok(if structured { pretty(&json!(r)) } else { r.verdict.to_string() })
        }
        Command::RepCheck { rep, fam } => {
            let m = load_rep(&rep)?;
            let r = check_representation(&m, &PolynomialFamily::new(fam.family));
            let failing: Vec<String> = r.failures().iter().map(|&a| m.quiver().arrow(a).id.clone()).collect();
            if structured {
                let residuals: serde_json::Map<String, Value> = r
                    .residuals
                    .iter()
                    .map(|(a, x)| (m.quiver().arrow(*a).id.clone(), format::matrix_to_json(x)))
                    .collect();
                return Ok(pretty(&json!({ "pass": r.pass, "failing": failing, "residuals": residuals })));
            }
            Ok(if r.pass { "pass".into() } else { format!("fail: {}", failing.join(" ")) })
        }
        Command::RepDecompose { rep, fam } => {
            let m = load_rep(&rep)?;
            let d = decompose_dihedral(&m, &PolynomialFamily::new(fam.family)).map_err(fail("rep"))?;
            if structured {
                let parts: Vec<Value> = d.parts.iter().map(|(s, k)| json!({ "simple": s.label, "multiplicity": k })).collect();
                return Ok(pretty(&json!(parts)));
            }
            Ok(d.parts.iter().map(|(s, k)| format!("{}: {k}", s.label)).collect::<Vec<_>>().join("\n"))
        }
        Command::RepSimple { rep } => {
            let m = load_rep(&rep)?;
            let r = is_simple(&m).map_err(fail("rep"))?;
            Ok(match (r, structured) {
                (Simplicity::Simple, false) => "simple".into(),
                (Simplicity::Inconclusive, false) => "inconclusive".into(),
                (Simplicity::NotSimple(s), false) => format!("not_simple: subrepresentation of dimensions {:?}", s.dims()),
                (Simplicity::Simple, true) => json!({ "result": "simple" }).to_string(),
                (Simplicity::Inconclusive, true) => json!({ "result": "inconclusive" }).to_string(),
                (Simplicity::NotSimple(s), true) => {
                    pretty(&json!({ "result": "not_simple", "witness": format::subrep_to_json(&s, m.quiver()) }))
                }
            })
        }
        Command::Witness { d, fam, field, x, simple } => {
            let d = load_diagram(&d.diagram)?;
            let k = Field::parse(&field).map_err(fail("rep"))?;
            let x = k.parse_scalar(&x).map_err(fail("rep"))?;
            let fam = PolynomialFamily::new(fam.family);
            if simple {
                let m = simple_family_member(&d, &x, &fam).map_err(fail("rep"))?;
                return Ok(if structured { pretty(&format::representation_to_json(&m)) } else { rep_text(&m) });
            }
            let w = witness_nonsemisimple(&d, &x, &fam).map_err(fail("rep"))?;
            Ok(if structured {
                pretty(&format::witness_to_json(&w))
            } else {
                format!("{}\nsubrep dims: {:?}", rep_text(&w.rep), w.subrep.dims())
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{f}");
            ExitCode::from(if f.tag == "usage" { 1 } else { 2 })
        }
    }
}
