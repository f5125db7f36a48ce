use std::fmt::Write as _;

use hochcyc_core::algebra::check_algebra;
use hochcyc_core::field::format_scalar;
use hochcyc_core::hochschild::{
    compare_actions, hc, hd, hh, hochschild_cyclic_module_with, mcg_action_report, ActionReport, BundleOptions,
    ComparisonReport, HochschildComplexBundle, DEFAULT_MAX_CELLS, DEFAULT_ORDER_BOUND,
};
use hochcyc_core::torusdiff::{check_group_axioms, check_section, MCGElement, TorusDiffElement};
use hochcyc_core::{SparseMatrix, ValidationReport};
use serde_json::json;

use crate::args::{Cli, Command, Format, GlobalArgs, TorusOp};
use crate::error::CliError;
use crate::input::{export, load, load_algebra, Loaded};

/// What to print and how to exit when the job itself ran.
pub struct Outcome {
    pub text: String,
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: 0 }
    }

    fn checked(text: String, valid: bool) -> Self {
        Outcome {
            text,
            code: if valid { 0 } else { 1 },
        }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let g = &cli.global;
    if g.max_cells > DEFAULT_MAX_CELLS && !g.accept_large {
        return Err(CliError::Usage(format!(
            "--max-cells above {DEFAULT_MAX_CELLS} needs --accept-large"
        )));
    }
    match &cli.command {
        Command::Check { input } => check(input, g),
        Command::Hh { input } => homology(input, g, "HH"),
        Command::Hc { input } => homology(input, g, "HC"),
        Command::Hd { input } => homology(input, g, "HD"),
        Command::Action { input } => action(input, g),
        Command::Compare { left, right } => compare(left, right, g),
        Command::Torus { op } => torus(op, g),
        Command::Export { input } => Ok(Outcome::ok(export(&load_algebra(input, g)?) + "\n")),
    }
}

fn structured(value: serde_json::Value) -> String {
    serde_json::to_string_pretty(&value).expect("JSON value serializes") + "\n"
}

fn fmt_matrix(m: &SparseMatrix) -> String {
    let rows: Vec<String> = m
        .to_dense()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(format_scalar).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

fn report_text(report: &ValidationReport) -> String {
    report.to_string()
}

fn check(input: &str, g: &GlobalArgs) -> Result<Outcome, CliError> {
    let report = match load(input, g)? {
        Loaded::Parts(parts) => check_algebra(&parts),
        // A group table is validated on parsing; this checks the algebra built from it.
        Loaded::Group(..) => {
            load_algebra(input, g)?;
            ValidationReport::new()
        }
    };
    let text = match g.format {
        Format::Table => report_text(&report),
        Format::Structured => structured(json!({ "valid": report.is_valid(), "report": report })),
    };
    Ok(Outcome::checked(text, report.is_valid()))
}

fn bundle(input: &str, g: &GlobalArgs) -> Result<HochschildComplexBundle, CliError> {
    let a = load_algebra(input, g)?;
    let opts = BundleOptions { max_cells: g.max_cells };
    Ok(hochschild_cyclic_module_with(&a, g.max_degree + 1, &opts)?)
}

fn homology(input: &str, g: &GlobalArgs, which: &str) -> Result<Outcome, CliError> {
    let b = bundle(input, g)?;
    let k = g.max_degree;
    let dims = match which {
        "HH" => hh(&b, k)?,
        "HC" => hc(&b, k)?,
        _ => hd(&b, k)?,
    };
    let text = match g.format {
        Format::Table => {
            let mut s = format!("{which} over {} of {input}\n", b.field());
            for (n, d) in dims.iter().enumerate() {
                writeln!(s, "{which}_{n}  {d}").unwrap();
            }
            s
        }
        Format::Structured => structured(json!({
            "invariant": which,
            "field": b.field(),
            "dims": dims,
        })),
    };
    Ok(Outcome::ok(text))
}

fn action_table(r: &ActionReport) -> String {
    let mut s = format!("Map(H_1,0) action over {}; HH dims {}\n", r.field, join(&r.hh_dims));
    for d in &r.degrees {
        writeln!(s, "HH_{} (dim {})", d.degree, d.hh_dim).unwrap();
        writeln!(s, "  T = {}", fmt_matrix(&d.twist)).unwrap();
        let order = d.twist_order.map_or("none up to the bound".to_string(), |o| o.to_string());
        writeln!(s, "  T identity: {}  order: {}  charpoly: {}", d.twist_is_identity, order, join(&d.twist_charpoly)).unwrap();
        writeln!(
            s,
            "  T invertible: {}  inverse from v^-1: {}  leg independent: {}",
            d.twist_invertible, d.twist_inverse_from_v_inv, d.leg_independent
        )
        .unwrap();
        match &d.reflection {
            Some(m) => {
                writeln!(s, "  R = {}", fmt_matrix(m)).unwrap();
                writeln!(
                    s,
                    "  R^2 = id: {}  TR = RT: {}",
                    d.reflection_squares_to_identity.unwrap_or(false),
                    d.twist_commutes_with_reflection.unwrap_or(false)
                )
                .unwrap();
            }
            None => s.push_str("  R unavailable (no anti-involution)\n"),
        }
    }
    s.push_str(&report_text(&r.violations));
    s
}

fn action(input: &str, g: &GlobalArgs) -> Result<Outcome, CliError> {
    let b = bundle(input, g)?;
    let report = mcg_action_report(&b, g.max_degree, DEFAULT_ORDER_BOUND)?;
    let text = match g.format {
        Format::Table => action_table(&report),
        Format::Structured => structured(serde_json::to_value(&report).expect("report serializes")),
    };
    Ok(Outcome::checked(text, report.is_valid()))
}

fn compare_table(r: &ComparisonReport) -> String {
    let mut s = format!("{}\n", serde_json::to_value(r.verdict).unwrap().as_str().unwrap());
    writeln!(s, "HH dims: [{}] vs [{}]", join(&r.hh_dims.0), join(&r.hh_dims.1)).unwrap();
    writeln!(s, "same cyclic matrices: {}", r.same_cyclic_matrices).unwrap();
    for d in &r.differences {
        writeln!(s, "differs: {}", serde_json::to_string(d).unwrap()).unwrap();
    }
    s
}

fn compare(left: &str, right: &str, g: &GlobalArgs) -> Result<Outcome, CliError> {
    let (l, r) = (bundle(left, g)?, bundle(right, g)?);
    let report = compare_actions(&l, &r, g.max_degree)?;
    let text = match g.format {
        Format::Table => compare_table(&report),
        Format::Structured => structured(serde_json::to_value(&report).expect("report serializes")),
    };
    Ok(Outcome::ok(text))
}

fn element(s: &str) -> Result<TorusDiffElement, CliError> {
    Ok(match s.trim() {
        "T" => TorusDiffElement::dehn_twist(),
        "R" => TorusDiffElement::rotation(),
        "id" => TorusDiffElement::identity(),
        other => other.parse()?,
    })
}

fn element_output(e: &TorusDiffElement, g: &GlobalArgs) -> String {
    match g.format {
        Format::Table => format!("{}  {}\n", e.pair_notation(), e),
        Format::Structured => structured(json!({ "element": e.to_string(), "pair": e.pair_notation() })),
    }
}

fn torus(op: &TorusOp, g: &GlobalArgs) -> Result<Outcome, CliError> {
    match op {
        TorusOp::Mul { left, right } => Ok(Outcome::ok(element_output(&element(left)?.multiply(&element(right)?), g))),
        TorusOp::Inv { element: e } => Ok(Outcome::ok(element_output(&element(e)?.inverse(), g))),
        TorusOp::Pi0 { element: e } => {
            let m = element(e)?.pi0();
            let sl2 = m.to_sl2();
            let text = match g.format {
                Format::Table => format!("{m}-class, SL2 = {sl2}\n"),
                Format::Structured => structured(json!({
                    "class": m.to_string(),
                    "n": m.n,
                    "eps": m.eps.to_i64(),
                    "sl2": [[sl2.a, sl2.b], [sl2.c, sl2.d]],
                })),
            };
            Ok(Outcome::ok(text))
        }
        TorusOp::Selfcheck { n } => {
            let mut report = check_group_axioms(*n, g.seed);
            report.extend(check_section(-5, 4));
            let t = MCGElement::dehn_twist().to_sl2();
            let r = MCGElement::rotation().to_sl2();
            report.require((t.a, t.b, t.c, t.d) == (1, 0, 1, 1), "T maps to [[1,0],[1,1]]", "to_sl2");
            report.require((r.a, r.b, r.c, r.d) == (-1, 0, 0, -1), "R maps to [[-1,0],[0,-1]]", "to_sl2");
            let valid = report.is_valid();
            let text = match g.format {
                Format::Table => {
                    let head = if valid { "pass" } else { "FAIL" };
                    format!("{head}: {n} random triples (seed {}), section on a 10x10 grid, SL(2,Z) images\n{}", g.seed, report_text(&report))
                }
                Format::Structured => structured(json!({
                    "samples": n,
                    "seed": g.seed,
                    "valid": valid,
                    "report": report,
                })),
            };
            Ok(Outcome::checked(text, valid))
        }
    }
}
