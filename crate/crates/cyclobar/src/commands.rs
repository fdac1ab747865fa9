//! The command implementations; each returns an `Output` to render.

use std::path::Path;

use cyclobar_core::bar::{homology_b_with, matches_lemma, total_complex, HomologyRoute};
use cyclobar_core::simplicial::sphere_model;
use cyclobar_core::ss::{assemble_cyclic, e2_page, run_to_e_infinity, Mode};
use cyclobar_core::tc::k_relative_row;
use cyclobar_core::witt::{big_witt_decomposition, ghost, CoefficientRing, TruncationSet, WittOp, WittVector};
use serde_json::json;

use crate::cache::{to_document, WittPolynomialCache};
use crate::config::RunConfig;
use crate::error::CliError;
use crate::table::{big, entries_text, group_json, witt_row_json, Output, Table};

pub fn witt_decompose(p: u64, r: u64) -> Result<Output, CliError> {
    if !cyclobar_core::witt::is_prime(p) {
        return Err(CliError::Usage(format!("{p} is not prime")));
    }
    if r == 0 {
        return Err(CliError::Usage("r must be positive".into()));
    }
    let entries = big_witt_decomposition(r, p);
    let mut t = Table::new(["mprime", "s"]);
    for &(m, s) in &entries {
        t.push([m.to_string(), s.to_string()]);
    }
    let json = json!({
        "prime": p,
        "r": r,
        "entries": entries.iter().map(|&(m, s)| json!({"mprime": m, "s": s})).collect::<Vec<_>>(),
    });
    Ok(Output::new(json, t).note(format!("decomposition: {}", entries_text(&entries))))
}

pub fn witt_ghost(set: &TruncationSet, input: &[i64]) -> Result<Output, CliError> {
    let a = WittVector::from_i64(set.clone(), input, CoefficientRing::Integers)?;
    let w = ghost(&a)?;
    let t = Table {
        headers: set.elements().iter().map(|d| format!("w{d}")).collect(),
        rows: vec![w.iter().map(ToString::to_string).collect()],
    };
    let json = json!({
        "set": set.elements(),
        "input": input,
        "ghost": w.iter().map(big).collect::<Vec<_>>(),
    });
    Ok(Output::new(json, t))
}

pub fn witt_polynomials(cache: &WittPolynomialCache, set: &TruncationSet, op: WittOp) -> Result<Output, CliError> {
    let sp = cache.get(set, op)?;
    let names = sp.variable_names();
    let mut t = Table::new(["component", "polynomial"]);
    for (d, poly) in set.elements().iter().zip(sp.components()) {
        t.push([d.to_string(), poly.display_with(&names).to_string()]);
    }
    Ok(Output::new(to_document(&sp), t))
}

/// `a op b` over `ℤ` or, with `field = Some(p)`, over `F_p`.
pub fn witt_apply(
    cache: &WittPolynomialCache,
    set: &TruncationSet,
    op: WittOp,
    a: &[i64],
    b: &[i64],
    field: Option<u64>,
) -> Result<Output, CliError> {
    let ring = match field {
        Some(p) => CoefficientRing::prime_field(p)?,
        None => CoefficientRing::Integers,
    };
    let a = WittVector::from_i64(set.clone(), a, ring)?;
    let b = WittVector::from_i64(set.clone(), b, ring)?;
    let c = cache.get(set, op)?.apply(&a, &b)?;
    let t = Table {
        headers: set.elements().iter().map(|d| format!("a{d}")).collect(),
        rows: vec![c.coefficients().iter().map(ToString::to_string).collect()],
    };
    let json = json!({
        "set": set.elements(),
        "op": op.name(),
        "field": field,
        "result": c.coefficients().iter().map(big).collect::<Vec<_>>(),
    });
    Ok(Output::new(json, t))
}

/// Outcome of a homology run against the expected concentration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomologyStatus {
    Pass,
    Fail,
    UnitWeight,
}

impl HomologyStatus {
    pub fn label(self) -> &'static str {
        match self {
            Self::Pass => "PASS",
            Self::Fail => "FAIL",
            Self::UnitWeight => "unit weight",
        }
    }
}

pub fn homology(cfg: &RunConfig, m: usize, route: HomologyRoute) -> Result<(Output, HomologyStatus), CliError> {
    let h = homology_b_with(m, route, &cfg.bar_budget())?;
    let status = if m == 0 {
        HomologyStatus::UnitWeight
    } else if matches_lemma(m, &h) {
        HomologyStatus::Pass
    } else {
        HomologyStatus::Fail
    };
    let expected = |n: usize| {
        if m == 0 {
            n == 0
        } else {
            n == 2 * m || n == 2 * m + 1
        }
    };
    let mut t = Table::new(["degree", "group", "expected"]);
    for (n, g) in h.iter().enumerate() {
        t.push([n.to_string(), g.to_string(), if expected(n) { "ℤ" } else { "0" }.to_string()]);
    }
    let json = json!({
        "weight": m,
        "route": match route {
            HomologyRoute::TotalComplex => "total",
            HomologyRoute::Diagonal => "diagonal",
        },
        "homology": h.iter().enumerate().map(|(n, g)| json!({"degree": n, "group": group_json(g)})).collect::<Vec<_>>(),
        "status": status.label(),
    });
    Ok((Output::new(json, t).note(format!("status: {}", status.label())), status))
}

pub fn ktable(p: u64, r_max: u64) -> Result<Output, CliError> {
    let mut t = Table::new(["degree", "entries", "group", "order"]);
    let mut rows = Vec::new();
    for degree in 1..=2 * r_max + 1 {
        let row = k_relative_row(degree, p)?;
        t.push([
            degree.to_string(),
            entries_text(&row.entries),
            row.group.to_string(),
            row.order().to_string(),
        ]);
        rows.push(witt_row_json(&row));
    }
    Ok(Output::new(serde_json::Value::Array(rows), t))
}

pub fn spectral_sequence(m: u64, p: u64, modes: &[Mode], degree_max: i64) -> Result<Output, CliError> {
    let mut t = Table::new(["mode", "degree", "survivors", "group"]);
    let mut tables = Vec::new();
    for &mode in modes {
        let page = e2_page(m, p, mode)?;
        let table = run_to_e_infinity(&page, 0..=degree_max);
        let groups = assemble_cyclic(&table, p);
        let name = match mode {
            Mode::Tate => "tate",
            Mode::HomotopyFixedPoints => "hfp",
        };
        let mut rows = Vec::new();
        for (&d, &c) in &table.counts() {
            let g = &groups[&d];
            t.push([name.to_string(), d.to_string(), c.to_string(), g.to_string()]);
            rows.push(json!({"degree": d, "survivors": c, "group": group_json(g)}));
        }
        tables.push(json!({"mode": name, "degrees": rows}));
    }
    let json = json!({"weight": m, "prime": p, "tables": tables});
    Ok(Output::new(json, t))
}

/// Writes `∂_n` of the total complex of `B(m)` to `out/boundary_n.txt`
/// for every `n ≥ 1`: a `rows cols` header, then one line per row.
pub fn export_chains(cfg: &RunConfig, m: usize, out: &Path) -> Result<Output, CliError> {
    let budget = cfg.bar_budget();
    if m > budget.max_weight {
        return Err(CliError::Budget(format!("weight {m} is above the configured cap {}", budget.max_weight)));
    }
    let (complex, _) = total_complex(&sphere_model(), m, budget.max_cells)?;
    std::fs::create_dir_all(out)?;
    let mut t = Table::new(["degree", "rows", "cols", "file"]);
    let mut files = Vec::new();
    for n in 1..=complex.top_degree() {
        let d = complex.boundary(n).expect("degree in range").to_dense();
        let mut text = format!("{} {}\n", d.rows(), d.cols());
        for i in 0..d.rows() {
            let row: Vec<String> = d.row(i).iter().map(ToString::to_string).collect();
            text.push_str(&row.join(" "));
            text.push('\n');
        }
        let name = format!("boundary_{n}.txt");
        std::fs::write(out.join(&name), text)?;
        t.push([n.to_string(), d.rows().to_string(), d.cols().to_string(), name.clone()]);
        files.push(json!({"degree": n, "rows": d.rows(), "cols": d.cols(), "file": name}));
    }
    let json = json!({"weight": m, "ranks": complex.ranks(), "boundaries": files});
    Ok(Output::new(json, t))
}
