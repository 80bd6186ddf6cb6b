//! Table builders behind each subcommand.

use serde_json::{json, Map, Value};
use su2w_core::bounds::{classical_measurement_bound, classical_state_bounds, violation_report, QmaxConfig};
use su2w_core::squeezing::{evaluate_criteria, Criterion, SqueezingStatus, SqueezingVerdict};
use su2w_core::{
    cat_state, classical_state_bound, intelligent_state, measurement_statistics, phase_averaged_equatorial,
    quadrature_bound, BoundReport, DensityOperator, Direction, HalfInteger, SpinJ,
};

use crate::format::{fmt_num, json_num, pretty, Cell, Table};
use crate::state::{parse_state, FamilyDefaults};
use crate::{CliError, Format, MAX_MATRIX_TWICE_J};

pub fn render(table: &Table, format: Format) -> String {
    match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    }
}

fn require_matrix_size(j: SpinJ) -> Result<(), CliError> {
    if j.twice() > MAX_MATRIX_TWICE_J {
        return Err(CliError::Invalid(format!(
            "j = {j} is too large for a dense state (at most {})",
            SpinJ::from_twice(MAX_MATRIX_TWICE_J)
        )));
    }
    Ok(())
}

fn statistics_table(j: SpinJ, probs: &[f64], bounds: &[f64], tol: f64) -> Result<Table, CliError> {
    let mut table = Table::new(vec!["m", "p", "bound", "violated"]);
    for r in violation_report(j, probs, bounds, tol)? {
        table.push(vec![
            Cell::Half(r.m),
            Cell::Num(r.probability),
            Cell::Num(r.bound),
            Cell::Bool(r.violated),
        ]);
    }
    Ok(table)
}

/// Phase-averaged equatorial state measured along `j₃`, against the bound
/// any classical measurement element of unit trace obeys.
pub fn fig1(j: SpinJ, tol: f64) -> Result<Table, CliError> {
    require_matrix_size(j)?;
    let rho = phase_averaged_equatorial(j);
    let probs = measurement_statistics(&rho, &Direction::Z)?;
    let bound = classical_measurement_bound(&rho, 1.0, &QmaxConfig::default())?;
    statistics_table(j, &probs, &vec![bound; j.dim()], tol)
}

pub fn fig2(j: SpinJ) -> Result<Table, CliError> {
    let mut table = Table::new(vec!["m", "su2_bound", "quadrature_bound"]);
    for m in j.ms() {
        table.push(vec![
            Cell::Half(m),
            Cell::Num(classical_state_bound(j, m)?),
            Cell::Num(quadrature_bound(j, m)?),
        ]);
    }
    Ok(table)
}

pub fn fig3(j: SpinJ, tol: f64) -> Result<Table, CliError> {
    require_matrix_size(j)?;
    let probs = measurement_statistics(&cat_state(j)?.to_density(), &Direction::X)?;
    statistics_table(j, &probs, &classical_state_bounds(j), tol)
}

pub fn fig4(j: SpinJ, eta: f64, tol: f64) -> Result<Table, CliError> {
    require_matrix_size(j)?;
    let state = intelligent_state(j, eta)?;
    let probs = measurement_statistics(&state.density(), &Direction::X)?;
    statistics_table(j, &probs, &classical_state_bounds(j), tol)
}

/// `0.05, 0.10, …, 1.00`.
pub fn default_eta_grid() -> Vec<f64> {
    (1..=20).map(|k| k as f64 / 20.0).collect()
}

pub fn fig5(j: SpinJ, grid: &[f64], tol: f64) -> Result<Table, CliError> {
    require_matrix_size(j)?;
    if !j.is_integer() {
        return Err(CliError::Invalid(format!(
            "fig5 tracks m = 0 and needs integer j, got {j}"
        )));
    }
    if grid.is_empty() {
        return Err(CliError::Invalid("eta grid is empty".into()));
    }
    let mut grid = grid.to_vec();
    if let Some(bad) = grid.iter().find(|e| !(**e > 0.0 && **e <= 1.0)) {
        return Err(CliError::Invalid(format!("eta must lie in (0, 1], got {bad}")));
    }
    grid.sort_by(f64::total_cmp);
    grid.dedup();

    let zero = HalfInteger::from_int(0);
    let k = j.index_of(zero)?;
    let bound = classical_state_bound(j, zero)?;
    let mut table = Table::new(vec!["eta", "p", "bound", "violated"]);
    for eta in grid {
        let p = measurement_statistics(&intelligent_state(j, eta)?.density(), &Direction::X)?[k];
        table.push(vec![
            Cell::Num(eta),
            Cell::Num(p),
            Cell::Num(bound),
            Cell::Bool(p > bound + tol),
        ]);
    }
    Ok(table)
}

/// State bound, quadrature bound, and the bound rescaled to `x = m/√(2j)`.
pub fn bound_table(j: SpinJ) -> Result<Table, CliError> {
    if j.twice() == 0 {
        return Err(CliError::Invalid("bound needs j > 0 for the rescaled columns".into()));
    }
    let scale = (2.0 * j.j()).sqrt();
    let mut table = Table::new(vec!["m", "su2_bound", "quadrature_bound", "x", "scaled_bound"]);
    for m in j.ms() {
        let b = classical_state_bound(j, m)?;
        table.push(vec![
            Cell::Half(m),
            Cell::Num(b),
            Cell::Num(quadrature_bound(j, m)?),
            Cell::Num(m.value() / scale),
            Cell::Num(scale * b),
        ]);
    }
    Ok(table)
}

pub fn report(
    j: SpinJ,
    state_text: &str,
    direction: &[f64],
    defaults: FamilyDefaults,
    tol: f64,
    format: Format,
) -> Result<String, CliError> {
    require_matrix_size(j)?;
    let u = match direction {
        [x, y, z] => Direction::normalize([*x, *y, *z])
            .map_err(|_| CliError::Invalid("--direction must be a nonzero finite vector".into()))?,
        _ => return Err(CliError::Invalid("--direction needs three components".into())),
    };
    let rho = parse_state(state_text, j, defaults)?;
    let (reports, verdict) = analyze(&rho, &u, tol)?;
    Ok(match format {
        Format::Csv => report_csv(&reports, &verdict),
        Format::Json => report_json(j, &u, &reports, &verdict),
    })
}

pub fn analyze(
    rho: &DensityOperator,
    u: &Direction,
    tol: f64,
) -> Result<(Vec<BoundReport>, SqueezingVerdict), CliError> {
    let j = rho.j();
    let probs = measurement_statistics(rho, u)?;
    let reports = violation_report(j, &probs, &classical_state_bounds(j), tol)?;
    Ok((reports, evaluate_criteria(rho)?))
}

fn report_table(reports: &[BoundReport]) -> Table {
    let mut table = Table::new(vec!["m", "p", "bound", "violated", "ratio"]);
    for r in reports {
        table.push(vec![
            Cell::Half(r.m),
            Cell::Num(r.probability),
            Cell::Num(r.bound),
            Cell::Bool(r.violated),
            Cell::Num(r.violation_ratio),
        ]);
    }
    table
}

fn report_csv(reports: &[BoundReport], verdict: &SqueezingVerdict) -> String {
    let mut out = report_table(reports).to_csv();
    out.push('\n');
    let mut kv = Table::new(vec!["quantity", "value"]);
    let mut put = |k: &str, v: Cell| kv.push(vec![Cell::Text(k.to_string()), v]);
    let status = if verdict.is_defined() { "defined" } else { "undefined" };
    put("status", Cell::Text(status.into()));
    for (axis, v) in ["x", "y", "z"].iter().zip(verdict.mean_spin) {
        put(&format!("mean_spin_{axis}"), Cell::Num(v));
    }
    put("mean_length", Cell::Num(verdict.mean_length));
    for (axis, v) in ["1", "2", "3"].iter().zip(verdict.axis_variances) {
        put(&format!("variance_j{axis}"), Cell::Num(v));
    }
    if let SqueezingStatus::Defined(c) = &verdict.status {
        put("min_perp_variance", Cell::Num(c.min_perp_variance));
        let d = c.min_perp_direction.as_array();
        put(
            "min_perp_direction",
            Cell::Text(d.iter().map(|x| fmt_num(*x)).collect::<Vec<_>>().join(" ")),
        );
        for (name, crit) in criteria_named(c) {
            put(&format!("{name}_value"), Cell::Num(crit.value));
            put(&format!("{name}_threshold"), Cell::Num(crit.threshold));
            put(&format!("{name}_satisfied"), Cell::Bool(crit.satisfied));
        }
    }
    out.push_str(&kv.to_csv());
    out
}

fn criteria_named(c: &su2w_core::Criteria) -> [(&'static str, &Criterion); 3] {
    [
        ("criterion_i", &c.coherent),
        ("criterion_ii", &c.interferometric),
        ("criterion_iii", &c.uncertainty),
    ]
}

fn report_json(j: SpinJ, u: &Direction, reports: &[BoundReport], verdict: &SqueezingVerdict) -> String {
    let vec3 = |v: [f64; 3]| Value::Array(v.iter().map(|x| json_num(*x)).collect());
    let mut sq = Map::new();
    let status = if verdict.is_defined() { "defined" } else { "undefined" };
    sq.insert("status".into(), json!(status));
    sq.insert("mean_spin".into(), vec3(verdict.mean_spin));
    sq.insert("mean_length".into(), json_num(verdict.mean_length));
    sq.insert("axis_variances".into(), vec3(verdict.axis_variances));
    if let SqueezingStatus::Defined(c) = &verdict.status {
        sq.insert("min_perp_variance".into(), json_num(c.min_perp_variance));
        sq.insert("min_perp_direction".into(), vec3(c.min_perp_direction.as_array()));
        for (name, crit) in criteria_named(c) {
            sq.insert(
                name.into(),
                json!({
                    "value": json_num(crit.value),
                    "threshold": json_num(crit.threshold),
                    "satisfied": crit.satisfied,
                }),
            );
        }
    }
    let doc = json!({
        "j": crate::format::json_half(HalfInteger::from_twice(j.twice() as i32)),
        "direction": vec3(u.as_array()),
        "statistics": report_table(reports).to_json_value(),
        "squeezing": Value::Object(sq),
    });
    pretty(&doc)
}
