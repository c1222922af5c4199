//! Batch front end: parse inputs, dispatch computations, emit
//! machine-readable reports and human-readable tables.
//!
//! Exit status: 0 when every verification passed, 1 on a verification
//! failure (the report is still written), 2 on usage errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use relbrace::hochschild::{
    self, koszul_confluence_check, verify_appendix_relations, AffineAction, Coefficients,
    DefContext,
};
use relbrace::homology::{
    boundary_matrices, compare_homology, homology_of, is_contractible, standard_shift,
    HomologySummary, OperadChoice,
};
use relbrace::posets::{cell_complex, face_poset, face_poset_tas, CellTarget};
use relbrace::rbr::{self, check_d_squared, FormalSum};
use relbrace::rs::{self, RsSum};
use relbrace::trees::{parse, Signature};

const SCHEMA: &str = "relbrace-report/1";

#[derive(Parser)]
#[command(name = "relbrace", version, about = "Exact workbench for the relative brace and surjections operads")]
struct Cli {
    /// Write the JSON report to this path in addition to standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print a human-readable table instead of JSON.
    #[arg(long, global = true, conflicts_with = "json")]
    table: bool,

    /// Print JSON (the default).
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Operad {
    Rbr,
    Rs,
}

#[derive(Clone, Copy, ValueEnum)]
enum GradingFlag {
    Lambda,
    Standard,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoefficientsFlag {
    A,
    Endplus,
}

#[derive(Clone, Copy, ValueEnum)]
enum CellKind {
    Downset,
    Theta,
    Thetainf,
}

#[derive(Args)]
struct SigArg {
    /// Signature, input colors then output, e.g. `cc;c` or `co;o`.
    #[arg(long)]
    sig: String,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the basis of a signature.
    Basis {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long, value_enum, default_value = "rbr")]
        operad: Operad,
        /// Filter by Lambda degree.
        #[arg(long)]
        degree: Option<i64>,
    },
    /// Differential of one element.
    Diff {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long, value_enum, default_value = "rbr")]
        operad: Operad,
        /// Element in the tree grammar.
        #[arg(long)]
        element: String,
    },
    /// Partial composition of two elements.
    Compose {
        #[arg(long, value_enum, default_value = "rbr")]
        operad: Operad,
        #[arg(long)]
        sig_a: String,
        #[arg(long)]
        element_a: String,
        #[arg(long)]
        slot: usize,
        #[arg(long)]
        sig_b: String,
        #[arg(long)]
        element_b: String,
    },
    /// Exhaustively check that the differential squares to zero.
    D2check {
        #[arg(long, value_enum, default_value = "rbr")]
        operad: Operad,
        /// Largest input count; the environment variable RBR_MAX_INPUTS
        /// overrides this.
        #[arg(long, default_value = "3")]
        max_inputs: usize,
    },
    /// Image of an element under the projection to the surjections operad.
    Phi {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        element: String,
    },
    /// Integral homology of a signature's complex.
    Homology {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long, value_enum, default_value = "rbr")]
        operad: Operad,
        #[arg(long, value_enum, default_value = "standard")]
        grading: GradingFlag,
    },
    /// Arity-wise comparison of the two operads' homology.
    Compare {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long, value_enum, default_value = "standard")]
        grading: GradingFlag,
    },
    /// Face poset of the down-set of an element.
    Poset {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        element: String,
        /// Use the class poset of the surjections operad instead.
        #[arg(long)]
        classes: bool,
    },
    /// Chain complex and contractibility of one cell.
    Cells {
        #[command(flatten)]
        sig: SigArg,
        #[arg(long)]
        element: String,
        #[arg(long, value_enum, default_value = "downset")]
        cell: CellKind,
    },
    /// Hochschild cohomology dimensions of a bundled or loaded action.
    Hochschild {
        /// Path to an algebra/action JSON file.
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "a")]
        coefficients: CoefficientsFlag,
        #[arg(long, default_value = "4")]
        max_degree: usize,
    },
    /// Validate an affine action and its Maurer-Cartan element.
    McCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "4")]
        bound: usize,
    },
    /// Sampled chain-map law for the brace action of every generator.
    BracesCheck {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "100")]
        samples: usize,
        #[arg(long, default_value = "2026")]
        seed: u64,
        #[arg(long, default_value = "4")]
        bound: usize,
    },
    /// Confluence of the three critical pairs of the presenting rewriting
    /// system.
    KoszulCheck,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((report, passed)) => {
            emit(&cli, &report);
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(cli: &Cli, report: &Value) {
    let body = if cli.table {
        render_table(report)
    } else {
        serde_json::to_string_pretty(report).expect("serializable report")
    };
    println!("{body}");
    if let Some(path) = &cli.out {
        let json = serde_json::to_string_pretty(report).expect("serializable report");
        if let Err(e) = std::fs::write(path, json) {
            eprintln!("error: cannot write {}: {e}", path.display());
        }
    }
}

fn render_table(v: &Value) -> String {
    fn walk(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        match v {
            Value::Object(map) => {
                for (k, val) in map {
                    match val {
                        Value::Object(_) | Value::Array(_) => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            walk(val, indent + 1, out);
                        }
                        _ => out.push_str(&format!("{pad}{k}: {val}\n")),
                    }
                }
            }
            Value::Array(items) => {
                for item in items {
                    match item {
                        Value::Object(_) | Value::Array(_) => {
                            out.push_str(&format!("{pad}-\n"));
                            walk(item, indent + 1, out);
                        }
                        _ => out.push_str(&format!("{pad}- {item}\n")),
                    }
                }
            }
            _ => out.push_str(&format!("{pad}{v}\n")),
        }
    }
    let mut out = String::new();
    walk(v, 0, &mut out);
    out.trim_end().to_string()
}

fn parse_sig(s: &str) -> Result<Signature, String> {
    Signature::parse(s).map_err(|e| e.to_string())
}

fn max_inputs_override(flag: usize) -> usize {
    std::env::var("RBR_MAX_INPUTS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(flag)
}

fn load_action(path: &PathBuf) -> Result<AffineAction, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    let value: Value =
        serde_json::from_str(&text).map_err(|e| format!("malformed JSON: {e}"))?;
    AffineAction::from_json(&value)
}

fn summary_json(h: &HomologySummary) -> Value {
    Value::Array(
        h.entries
            .iter()
            .map(|e| json!({ "degree": e.degree, "betti": e.betti, "torsion": e.torsion }))
            .collect(),
    )
}

fn run(cli: &Cli) -> Result<(Value, bool), String> {
    match &cli.command {
        Command::Basis { sig, operad, degree } => {
            let s = parse_sig(&sig.sig)?;
            let elements: Vec<String> = match operad {
                Operad::Rbr => rbr::enumerate_basis(&s, *degree)
                    .into_iter()
                    .map(|e| e.to_string())
                    .collect(),
                Operad::Rs => rs::enumerate_basis_rs(&s, *degree)
                    .into_iter()
                    .map(|e| e.representative().to_string())
                    .collect(),
            };
            Ok((
                json!({
                    "schema": SCHEMA,
                    "command": "basis",
                    "signature": s.to_string(),
                    "count": elements.len(),
                    "elements": elements,
                }),
                true,
            ))
        }
        Command::Diff { sig, operad, element } => {
            let s = parse_sig(&sig.sig)?;
            let e = parse(element, &s).map_err(|x| x.to_string())?;
            let result = match operad {
                Operad::Rbr => rbr::differential(&FormalSum::from_element(e)).to_json(),
                Operad::Rs => {
                    let cls = rs::normal_form(&e).map_err(|x| x.to_string())?;
                    rs::differential_rs(&RsSum::from_class(cls)).to_json()
                }
            };
            Ok((
                json!({
                    "schema": SCHEMA,
                    "command": "diff",
                    "signature": s.to_string(),
                    "element": element,
                    "differential": result,
                }),
                true,
            ))
        }
        Command::Compose { operad, sig_a, element_a, slot, sig_b, element_b } => {
            let sa = parse_sig(sig_a)?;
            let sb = parse_sig(sig_b)?;
            let a = parse(element_a, &sa).map_err(|x| x.to_string())?;
            let b = parse(element_b, &sb).map_err(|x| x.to_string())?;
            let result = match operad {
                Operad::Rbr => rbr::compose_at(
                    &FormalSum::from_element(a),
                    *slot,
                    &FormalSum::from_element(b),
                )
                .map_err(|x| x.to_string())?
                .to_json(),
                Operad::Rs => {
                    let ca = rs::normal_form(&a).map_err(|x| x.to_string())?;
                    let cb = rs::normal_form(&b).map_err(|x| x.to_string())?;
                    rs::compose_rs(&RsSum::from_class(ca), *slot, &RsSum::from_class(cb))
                        .map_err(|x| x.to_string())?
                        .to_json()
                }
            };
            Ok((
                json!({
                    "schema": SCHEMA,
                    "command": "compose",
                    "slot": slot,
                    "result": result,
                }),
                true,
            ))
        }
        Command::D2check { operad, max_inputs } => {
            let bound = max_inputs_override(*max_inputs);
            let outcome = match operad {
                Operad::Rbr => check_d_squared(bound),
                Operad::Rs => {
                    // Exhaustive over classes.
                    let mut checked = 0;
                    let mut witness = None;
                    'outer: for n in 1..=bound {
                        for s in rbr::signatures_with_inputs(n) {
                            for cls in rs::enumerate_basis_rs(&s, None) {
                                checked += 1;
                                let dd = rs::differential_rs(&rs::differential_rs(
                                    &RsSum::from_class(cls.clone()),
                                ));
                                if !dd.is_zero() {
                                    witness = Some(format!("d^2{cls} != 0"));
                                    break 'outer;
                                }
                            }
                        }
                    }
                    rbr::CheckOutcome {
                        name: "d_squared_zero".into(),
                        passed: witness.is_none(),
                        checked,
                        witness,
                    }
                }
            };
            let passed = outcome.passed;
            Ok((
                json!({
                    "schema": SCHEMA,
                    "command": "d2check",
                    "max_inputs": bound,
                    "checked": outcome.checked,
                    "passed": outcome.passed,
                    "witness": outcome.witness,
                }),
                passed,
            ))
        }
        Command::Phi { sig, element } => {
            let s = parse_sig(&sig.sig)?;
            let e = parse(element, &s).map_err(|x| x.to_string())?;
            let image = rs::phi(&FormalSum::from_element(e));
            Ok((
                json!({
                    "schema": SCHEMA,
                    "command": "phi",
                    "element": element,
                    "image": image.to_json(),
                }),
                true,
            ))
        }
        Command::Homology { sig, operad, grading } => {
            let s = parse_sig(&sig.sig)?;
            let complex = boundary_matrices(
                match operad {
                    Operad::Rbr => OperadChoice::Rbr,
                    Operad::Rs => OperadChoice::Rs,
                },
                &s,
            );
            let mut h = homology_of(&complex);
            if matches!(grading, GradingFlag::Standard) {
                h = h.shifted(standard_shift(&s));
            }
            Ok((
                json!({
                    "schema": SCHEMA,
                    "command": "homology",
                    "signature": s.to_string(),
                    "grading": match grading { GradingFlag::Lambda => "lambda", GradingFlag::Standard => "standard" },
                    "summary": summary_json(&h),
                }),
                true,
            ))
        }
        Command::Compare { sig, grading } => {
            let s = parse_sig(&sig.sig)?;
            let mut report = compare_homology(&s);
            if matches!(grading, GradingFlag::Standard) {
                let shift = standard_shift(&s);
                report.rbr = report.rbr.shifted(shift);
                report.rs = report.rs.shifted(shift);
            }
            let passed = report.passed();
            Ok((
                json!({
                    "schema": SCHEMA,
                    "command": "compare",
                    "signature": report.signature,
                    "rbr": summary_json(&report.rbr),
                    "rs": summary_json(&report.rs),
                    "equal_summaries": report.summaries_equal,
                    "torsion_free": report.torsion_free,
                    "phi_induces_iso": report.phi_induces_iso,
                    "passed": passed,
                }),
                passed,
            ))
        }
        Command::Poset { sig, element, classes } => {
            let s = parse_sig(&sig.sig)?;
            let e = parse(element, &s).map_err(|x| x.to_string())?;
            let poset = if *classes {
                let cls = rs::normal_form(&e).map_err(|x| x.to_string())?;
                face_poset_tas(&cls)
            } else {
                face_poset(&e)
            };
            Ok((
                json!({
                    "schema": SCHEMA,
                    "command": "poset",
                    "element": element,
                    "elements": poset.elements,
                    "leq": poset.leq,
                    "fvector": poset.fvector(),
                }),
                true,
            ))
        }
        Command::Cells { sig, element, cell } => {
            let s = parse_sig(&sig.sig)?;
            let e = parse(element, &s).map_err(|x| x.to_string())?;
            let target = match cell {
                CellKind::Downset => CellTarget::DownSet(e),
                CellKind::Theta => {
                    CellTarget::Theta(rs::normal_form(&e).map_err(|x| x.to_string())?)
                }
                CellKind::Thetainf => {
                    CellTarget::ThetaInf(rs::normal_form(&e).map_err(|x| x.to_string())?)
                }
            };
            let complex = cell_complex(&target);
            let contractible = is_contractible(&complex);
            Ok((
                json!({
                    "schema": SCHEMA,
                    "command": "cells",
                    "element": element,
                    "cell": match cell { CellKind::Downset => "downset", CellKind::Theta => "theta", CellKind::Thetainf => "thetainf" },
                    "total_rank": complex.total_rank(),
                    "homology": summary_json(&homology_of(&complex)),
                    "contractible": contractible,
                }),
                contractible,
            ))
        }
        Command::Hochschild { input, coefficients, max_degree } => {
            let action = load_action(input)?;
            let report = action.validate();
            if !report.valid() {
                return Ok((
                    json!({
                        "schema": SCHEMA,
                        "command": "hochschild",
                        "valid_action": false,
                        "witnesses": report.witnesses,
                    }),
                    false,
                ));
            }
            let coeffs = match coefficients {
                CoefficientsFlag::A => Coefficients::AlgebraItself,
                CoefficientsFlag::Endplus => Coefficients::EndPlus,
            };
            let h = hochschild::hochschild_homology(&action, coeffs, *max_degree);
            Ok((
                json!({
                    "schema": SCHEMA,
                    "command": "hochschild",
                    "valid_action": true,
                    "coefficients": match coefficients { CoefficientsFlag::A => "A", CoefficientsFlag::Endplus => "EndPlus" },
                    "summary": summary_json(&h),
                }),
                true,
            ))
        }
        Command::McCheck { input, bound } => {
            let action = load_action(input)?;
            let report = action.validate();
            let mut payload = json!({
                "schema": SCHEMA,
                "command": "mc-check",
                "action_laws": {
                    "associative": report.associative,
                    "module_law": report.module_law,
                    "translation_law": report.translation_law,
                    "morphism_into_affine": report.morphism_into_affine,
                },
                "witnesses": report.witnesses,
            });
            if !report.valid() {
                payload["maurer_cartan"] = json!("skipped");
                return Ok((payload, false));
            }
            let ctx = DefContext::new(action, *bound);
            let mc = ctx.mc_element();
            match ctx.mc_check(&mc) {
                Ok(()) => {
                    payload["maurer_cartan"] = json!("ok");
                    Ok((payload, true))
                }
                Err(obs) => {
                    payload["maurer_cartan"] = json!({
                        "part": format!("{:?}", obs.part),
                        "arity": obs.arity,
                        "tuple": obs.tuple,
                        "what": obs.what,
                    });
                    Ok((payload, false))
                }
            }
        }
        Command::BracesCheck { input, samples, seed, bound } => {
            let action = load_action(input)?;
            if !action.validate().valid() {
                return Err("the action does not satisfy the laws".into());
            }
            let ctx = DefContext::new(action, *bound);
            let outcomes = verify_appendix_relations(&ctx, *samples, *seed);
            let passed = outcomes.iter().all(|o| o.passed);
            Ok((
                json!({
                    "schema": SCHEMA,
                    "command": "braces-check",
                    "samples": samples,
                    "seed": seed,
                    "laws": outcomes.iter().map(|o| json!({
                        "name": o.name,
                        "passed": o.passed,
                        "witness": o.witness,
                    })).collect::<Vec<_>>(),
                    "passed": passed,
                }),
                passed,
            ))
        }
        Command::KoszulCheck => {
            let outcomes = koszul_confluence_check();
            let passed = outcomes.iter().all(|o| o.confluent);
            Ok((
                json!({
                    "schema": SCHEMA,
                    "command": "koszul-check",
                    "critical_pairs": outcomes.iter().map(|o| json!({
                        "name": o.name,
                        "confluent": o.confluent,
                        "normal_form": o.normal_form,
                        "branches": o.branch_count,
                    })).collect::<Vec<_>>(),
                    "passed": passed,
                }),
                passed,
            ))
        }
    }
}
