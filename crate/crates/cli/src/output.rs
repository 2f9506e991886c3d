use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use mawc_core::geometry::{pareto_indices, BoundKind, Provenance, RateRegion, RateTriple};
use mawc_core::sim::RunSummary;
use serde_json::Value;

use crate::error::{CliError, CliResult};

pub const REGION_HEADER: &str = "bound_kind,r0,r1,r2,beta1,beta2,rho";
pub const SIM_HEADER: &str = "n,trials,pe1,pe2,equivocation_bits_per_use,secrecy_gap";

/// Rounds to 10 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x + 0.0;
    }
    format!("{x:.9e}").parse::<f64>().map_or(x, |r| r + 0.0)
}

pub fn fmt_num(x: f64) -> String {
    format!("{}", round_sig(x))
}

/// One frontier point of a region with the sweep parameters behind it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionRow {
    pub kind: BoundKind,
    pub point: RateTriple,
    pub provenance: Provenance,
}

pub fn rows_of(region: &RateRegion) -> Vec<RegionRow> {
    region
        .records()
        .map(|(p, s)| RegionRow {
            kind: region.kind(),
            point: *p,
            provenance: *s,
        })
        .collect()
}

/// The `(r1, r2)` frontier of a region. Regions are downward closed, so the
/// projection onto the private-rate plane is the section at `r0 = 0`.
pub fn projected_rows(region: &RateRegion) -> Vec<RegionRow> {
    let rows = rows_of(region);
    let flat: Vec<RateTriple> = rows.iter().map(|r| RateTriple::new(0.0, r.point.r1, r.point.r2)).collect();
    pareto_indices(&flat)
        .into_iter()
        .map(|i| RegionRow {
            point: flat[i],
            ..rows[i]
        })
        .collect()
}

pub fn region_csv(rows: &[RegionRow]) -> String {
    let mut out = String::from(REGION_HEADER);
    out.push('\n');
    for r in rows {
        let (b1, b2, rho) = match r.provenance {
            Provenance::Gaussian { beta1, beta2, rho } => {
                (fmt_num(beta1), fmt_num(beta2), rho.map(fmt_num).unwrap_or_default())
            }
            Provenance::Chain(_) => Default::default(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{b1},{b2},{rho}",
            r.kind.as_str(),
            fmt_num(r.point.r0),
            fmt_num(r.point.r1),
            fmt_num(r.point.r2),
        );
    }
    out
}

pub fn sim_csv(runs: &[RunSummary]) -> String {
    let mut out = String::from(SIM_HEADER);
    out.push('\n');
    for s in runs {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            s.n,
            s.trials,
            fmt_num(s.pe1),
            fmt_num(s.pe2),
            fmt_num(s.equivocation_bits_per_use),
            fmt_num(s.secrecy_gap),
        );
    }
    out
}

/// Rounds every float in a JSON tree to 10 significant digits.
pub fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = round_sig(n.as_f64().unwrap_or(f64::NAN));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(a) => Value::Array(a.into_iter().map(round_json).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

pub fn json_text(v: Value) -> String {
    let mut s = serde_json::to_string_pretty(&round_json(v)).unwrap_or_default();
    s.push('\n');
    s
}

pub fn triple_json(p: &RateTriple) -> Value {
    serde_json::json!([p.r0, p.r1, p.r2])
}

pub fn provenance_json(p: &Provenance) -> Value {
    match p {
        Provenance::Chain(i) => serde_json::json!({ "chain": i }),
        Provenance::Gaussian { beta1, beta2, rho } => {
            serde_json::json!({ "beta1": beta1, "beta2": beta2, "rho": rho })
        }
    }
}

/// Extremal rates of a region, each with the point and parameters attaining it.
pub fn region_summary(region: &RateRegion) -> Value {
    let best = |score: fn(&RateTriple) -> f64| match region.argmax(score) {
        Some((p, s)) => serde_json::json!({
            "value": score(&p),
            "point": triple_json(&p),
            "at": provenance_json(&s),
        }),
        None => Value::Null,
    };
    serde_json::json!({
        "bound_kind": region.kind().as_str(),
        "frontier_points": region.frontier().len(),
        "max_r0": best(|p| p.r0),
        "max_r1": best(|p| p.r1),
        "max_r2": best(|p| p.r2),
        "max_r1_plus_r2": best(|p| p.r1 + p.r2),
        "max_total": best(|p| p.r0 + p.r1 + p.r2),
    })
}

pub fn ensure_dir(dir: &Path) -> CliResult<()> {
    std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_path_buf(),
        source,
    })
}

pub fn write_file(dir: &Path, name: &str, contents: &str) -> CliResult<PathBuf> {
    ensure_dir(dir)?;
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}
