//! Command-line front end: parse, verify, construct, and interconvert the
//! document kinds, with canonical JSON on stdout and structured errors on
//! stderr. Exit codes: 0 = pass, 1 = verification failure, 2 = input error.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use cs2g::bridge;
use cs2g::dirac;
use cs2g::forms;

use cs2g_cli::{docs, ops};
use docs::{AlphaDoc, Document};
use ops::{report_value, verify_document, CliError};

#[derive(Parser)]
#[command(name = "cs2g", version, about = "Constant symplectic 2-groupoids, Courant algebroids, and Dirac structures over Q")]
struct Cli {
    /// Human-readable output instead of canonical JSON.
    #[arg(long, global = true)]
    pretty: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every invariant of a document; exit 0 iff all pass.
    Verify { file: String },
    /// Realize a chain complex as a linear 2-groupoid document.
    Realize { complex: String },
    /// Build the normalized multiplicative form with the given C41 and C32
    /// blocks (bare matrix files) over a complex.
    BuildForm {
        c41: String,
        c32: String,
        complex: String,
    },
    /// Realize a tuple as a constant symplectic 2-groupoid bundle.
    FromTuple { tuple: String },
    /// The constant Courant algebroid of a tuple.
    ToCourant { tuple: String },
    /// The reduced tuple of a constant Courant algebroid.
    FromCourant { courant: String },
    /// Replace C32 by its symmetric part; outputs the csg and the witness.
    Symmetrize { csg: String },
    /// Decide equivalence of two csgs on the same complex; exit 1 with the
    /// violated invariant when inequivalent.
    Equivalent { csg1: String, csg2: String },
    /// Classify the sub-2-groupoid of a subcomplex inside a symmetric csg.
    Classify { subcomplex: String, csg: String },
    /// Test a subspace (bare basis-column matrix file) for being a constant
    /// Dirac structure; reports bracket closure.
    Dirac { subspace: String, courant: String },
    /// Built-in examples.
    Example {
        #[command(subcommand)]
        which: ExampleKind,
    },
    /// Verify the Courant axioms on monomial generators up to a degree.
    Axioms {
        courant: String,
        #[arg(long, default_value_t = 2)]
        degree: u32,
    },
}

#[derive(Subcommand)]
enum ExampleKind {
    /// The constant model of the cotangent-double integration in rank n.
    Standard {
        #[arg(long)]
        dim: usize,
    },
}

struct Outcome {
    stdout: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            ExitCode::from(outcome.code)
        }
        Err(err) => {
            eprintln!("{}", serde_json::to_string(&err.to_value()).expect("error serializes"));
            ExitCode::from(2)
        }
    }
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| CliError::input(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("reading {path}: {e}")))
    }
}

fn load_document(path: &str) -> Result<Document, CliError> {
    Ok(docs::parse_document(&read_input(path)?)?)
}

fn expect_kind<'d, T>(
    doc: &'d Document,
    expected: &str,
    select: impl FnOnce(&'d Document) -> Option<T>,
) -> Result<T, CliError> {
    select(doc).ok_or_else(|| {
        CliError::input(format!("expected a {expected} document, found kind {:?}", doc.kind()))
    })
}

fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Verify { file } => {
            let doc = load_document(file)?;
            let report = verify_document(&doc);
            Ok(render_report(cli, &report))
        }

        Command::Realize { complex } => {
            let doc = load_document(complex)?;
            let c = expect_kind(&doc, "complex", |d| match d {
                Document::Complex(c) => Some(c),
                _ => None,
            })?;
            let groupoid = cs2g::doldkan::realize(&c.to_core()?);
            Ok(render_document(cli, &Document::Groupoid(Box::new(groupoid))))
        }

        Command::BuildForm { c41, c32, complex } => {
            let doc = load_document(complex)?;
            let cdoc = expect_kind(&doc, "complex", |d| match d {
                Document::Complex(c) => Some(c),
                _ => None,
            })?;
            let core = cdoc.to_core()?;
            let c41 = docs::parse_bare_matrix(&read_input(c41)?, core.dim_w0(), core.dim_w2())?;
            let c32 = docs::parse_bare_matrix(&read_input(c32)?, core.dim_w1(), core.dim_w1())?;
            let form = forms::build_from_c(
                &cs2g::exactla::Bilin::new(c41),
                &cs2g::exactla::Bilin::new(c32),
                &core,
            )?;
            Ok(render_document(cli, &Document::Form(docs::FormDoc::from_core(&form))))
        }

        Command::FromTuple { tuple } => {
            let doc = load_document(tuple)?;
            let t = expect_kind(&doc, "tuple", |d| match d {
                Document::Tuple(t) => Some(t),
                _ => None,
            })?;
            let s = bridge::tuple_to_csg(&t.to_core()?)?;
            Ok(render_document(cli, &Document::Csg(docs::CsgDoc::from_core(&s))))
        }

        Command::ToCourant { tuple } => {
            let doc = load_document(tuple)?;
            let t = expect_kind(&doc, "tuple", |d| match d {
                Document::Tuple(t) => Some(t),
                _ => None,
            })?;
            let e = bridge::tuple_to_courant(&t.to_core()?)?;
            Ok(render_document(cli, &Document::Courant(docs::CourantDoc::from_core(&e))))
        }

        Command::FromCourant { courant } => {
            let doc = load_document(courant)?;
            let c = expect_kind(&doc, "courant", |d| match d {
                Document::Courant(c) => Some(c),
                _ => None,
            })?;
            let t = bridge::courant_to_tuple(&c.to_core()?)?;
            Ok(render_document(cli, &Document::Tuple(docs::TupleDoc::from_core(&t))))
        }

        Command::Symmetrize { csg } => {
            let doc = load_document(csg)?;
            let c = expect_kind(&doc, "csg", |d| match d {
                Document::Csg(c) => Some(c),
                _ => None,
            })?;
            let s = c.to_core()?;
            let (form_sym, alpha) = forms::symmetrize(s.form(), s.complex())?;
            let sym = bridge::ConstantSymplectic2Groupoid::new(s.complex().clone(), form_sym)?;
            let value = serde_json::json!({
                "csg": docs::document_value(&Document::Csg(docs::CsgDoc::from_core(&sym))),
                "alpha": docs::document_value(&Document::Alpha(AlphaDoc::from_core(&alpha))),
            });
            Ok(render_value(cli, value, 0))
        }

        Command::Equivalent { csg1, csg2 } => {
            let d1 = load_document(csg1)?;
            let d2 = load_document(csg2)?;
            let c1 = expect_kind(&d1, "csg", |d| match d {
                Document::Csg(c) => Some(c),
                _ => None,
            })?;
            let c2 = expect_kind(&d2, "csg", |d| match d {
                Document::Csg(c) => Some(c),
                _ => None,
            })?;
            let s1 = c1.to_core()?;
            let s2 = c2.to_core()?;
            if s1.complex() != s2.complex() {
                return Err(CliError::input(
                    "the two groupoids live over different chain complexes",
                ));
            }
            match forms::are_equivalent(s1.form(), s2.form(), s1.complex())? {
                Some(alpha) => {
                    let value = serde_json::json!({
                        "equivalent": true,
                        "witness": docs::document_value(&Document::Alpha(AlphaDoc::from_core(&alpha))),
                    });
                    Ok(render_value(cli, value, 0))
                }
                None => {
                    let p1 = forms::pairings(s1.form())?;
                    let p2 = forms::pairings(s2.form())?;
                    let violated = if p1.a != p2.a { "A_omega" } else { "B_omega" };
                    let value = serde_json::json!({
                        "equivalent": false,
                        "violated_invariant": violated,
                    });
                    Ok(render_value(cli, value, 1))
                }
            }
        }

        Command::Classify { subcomplex, csg } => {
            let sdoc = load_document(subcomplex)?;
            let sub = expect_kind(&sdoc, "subcomplex", |d| match d {
                Document::Subcomplex(s) => Some(s),
                _ => None,
            })?;
            let cdoc = load_document(csg)?;
            let c = expect_kind(&cdoc, "csg", |d| match d {
                Document::Csg(c) => Some(c),
                _ => None,
            })?;
            let s = c.to_core()?;
            let u = sub.to_core(s.complex())?;
            let l = dirac::sub_two_groupoid(&u, s.groupoid())?;
            let classification = dirac::classify(&l, &s)?;
            let mut value = serde_json::json!({
                "classification": classification.label(),
            });
            if let dirac::DiracClassification::Neither { witness } = &classification {
                value["witness"] = Value::String(witness.clone());
            }
            Ok(render_value(cli, value, 0))
        }

        Command::Dirac { subspace, courant } => {
            let cdoc = load_document(courant)?;
            let c = expect_kind(&cdoc, "courant", |d| match d {
                Document::Courant(c) => Some(c),
                _ => None,
            })?;
            let e = c.to_core()?;
            let u1 = docs::parse_bare_subspace(&read_input(subspace)?, e.dim_w1())?;
            let (is_dirac, report) = dirac::constant_dirac_report(&u1, &e, 2)?;
            let value = serde_json::json!({
                "is_dirac": is_dirac,
                "report": report_value(&report),
            });
            Ok(render_value(cli, value, if is_dirac { 0 } else { 1 }))
        }

        Command::Example { which } => match which {
            ExampleKind::Standard { dim } => {
                let s = bridge::standard_example(*dim);
                Ok(render_document(cli, &Document::Csg(docs::CsgDoc::from_core(&s))))
            }
        },

        Command::Axioms { courant, degree } => {
            let doc = load_document(courant)?;
            let c = expect_kind(&doc, "courant", |d| match d {
                Document::Courant(c) => Some(c),
                _ => None,
            })?;
            let e = c.to_core()?;
            let report = cs2g::courant::verify_axioms(&e, *degree);
            Ok(render_report(cli, &report))
        }
    }
}

fn render_document(cli: &Cli, doc: &Document) -> Outcome {
    Outcome {
        stdout: if cli.pretty {
            docs::serialize_pretty(doc)
        } else {
            docs::serialize_document(doc)
        },
        code: 0,
    }
}

fn render_report(cli: &Cli, report: &cs2g::Report) -> Outcome {
    let stdout = if cli.pretty {
        format!("{report}\n")
    } else {
        let mut text = serde_json::to_string(&report_value(report)).expect("report serializes");
        text.push('\n');
        text
    };
    Outcome {
        stdout,
        code: if report.all_passed() { 0 } else { 1 },
    }
}

fn render_value(cli: &Cli, value: Value, code: u8) -> Outcome {
    let mut stdout = if cli.pretty {
        serde_json::to_string_pretty(&value).expect("value serializes")
    } else {
        serde_json::to_string(&value).expect("value serializes")
    };
    stdout.push('\n');
    Outcome { stdout, code }
}
