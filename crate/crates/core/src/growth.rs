//! Exponential growth rates: finite-cutoff density estimates and
//! least-squares slope fits on exact count series.
//!
//! The growth rate of a set S is the limsup over N of
//! `(|S ∩ ball(N)| / |ball(N)|)^(1/N)`. At finite N that root converges
//! only at a polynomial-prefactor rate, so checkpoint values d_N are
//! reported verbatim (with a running tail maximum as the limsup proxy)
//! while the per-length slope fit serves as the sharper instrument.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bigmath::ln_biguint;
use crate::error::{Error, Result};
use crate::f2prim::CountTable;
use crate::words::{count_ball, Alphabet};

/// One finite-cutoff density: exact numerator and denominator plus the
/// N-th root of their ratio.
#[derive(Clone, PartialEq, Debug)]
pub struct GrowthEstimate {
    pub n: u32,
    pub numerator: BigUint,
    pub denominator: BigUint,
    pub d_n: f64,
}

/// Exact-count density at cutoff n: numerator from the series' cumulative
/// count, denominator the full ball of the series' rank.
pub fn estimate(series: &CountTable, n: u32) -> Result<GrowthEstimate> {
    if n == 0 {
        return Err(Error::Domain("growth estimates need n >= 1".into()));
    }
    let alphabet = Alphabet::new(series.rank())?;
    let numerator = series.cumulative(n)?;
    let denominator = count_ball(alphabet, n);
    if numerator > denominator {
        return Err(Error::Domain(
            "series exceeds the ambient ball; not a subset count".into(),
        ));
    }
    let d_n = if numerator == BigUint::from(0u32) {
        0.0
    } else {
        ((ln_biguint(&numerator) - ln_biguint(&denominator)) / f64::from(n)).exp()
    };
    Ok(GrowthEstimate {
        n,
        numerator,
        denominator,
        d_n,
    })
}

/// Least-squares slope of `log_base(count(n))` against n.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct SlopeFit {
    pub base: f64,
    pub range: (u32, u32),
    pub slope: f64,
    /// Max absolute deviation from the fitted lines.
    pub residual: f64,
    pub points: usize,
}

/// Fit a shared slope to `log_base(count(n))` over `n_lo..=n_hi`, skipping
/// zero-count bins. The even- and odd-length subseries get independent
/// intercepts (their prefactors generally differ), a single slope is fit
/// across both, and the residual is measured against the per-parity lines.
pub fn slope_fit(series: &CountTable, n_lo: u32, n_hi: u32, base: f64) -> Result<SlopeFit> {
    let usable_base = base > 1.0;
    if !usable_base {
        return Err(Error::Domain(format!(
            "slope fit needs base > 1, got {base}"
        )));
    }
    if n_lo >= n_hi {
        return Err(Error::Domain(format!(
            "slope fit needs n_lo < n_hi, got [{n_lo}, {n_hi}]"
        )));
    }
    let ln_base = base.ln();
    let mut groups: [Vec<(f64, f64)>; 2] = [Vec::new(), Vec::new()];
    for (&n, count) in series.per_length().range(n_lo..=n_hi) {
        if *count == BigUint::from(0u32) {
            continue;
        }
        groups[(n % 2) as usize].push((f64::from(n), ln_biguint(count) / ln_base));
    }
    let points: usize = groups.iter().map(Vec::len).sum();
    if points < 3 {
        return Err(Error::TooFewPoints {
            have: points,
            need: 3,
        });
    }
    let mut num = 0.0;
    let mut den = 0.0;
    for g in &groups {
        if g.is_empty() {
            continue;
        }
        let m = g.len() as f64;
        let sx: f64 = g.iter().map(|p| p.0).sum();
        let sy: f64 = g.iter().map(|p| p.1).sum();
        let sxx: f64 = g.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = g.iter().map(|p| p.0 * p.1).sum();
        num += sxy - sx * sy / m;
        den += sxx - sx * sx / m;
    }
    if den <= 0.0 {
        return Err(Error::TooFewPoints {
            have: points,
            need: 3,
        });
    }
    let slope = num / den;
    let mut residual = 0.0f64;
    for g in &groups {
        if g.is_empty() {
            continue;
        }
        let m = g.len() as f64;
        let intercept =
            (g.iter().map(|p| p.1).sum::<f64>() - slope * g.iter().map(|p| p.0).sum::<f64>()) / m;
        for &(x, y) in g {
            residual = residual.max((y - (slope * x + intercept)).abs());
        }
    }
    Ok(SlopeFit {
        base,
        range: (n_lo, n_hi),
        slope,
        residual,
        points,
    })
}

/// Series of cumulative counts: each covered length maps to the sum of the
/// per-length counts up to it.
pub fn cumulative_series(series: &CountTable) -> CountTable {
    let mut running = BigUint::from(0u32);
    let mut per_length = BTreeMap::new();
    for (&n, count) in series.per_length() {
        running += count;
        per_length.insert(n, running.clone());
    }
    CountTable::new(series.rank(), per_length)
}

/// Checkpointed growth report for one set.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub set: String,
    pub rank: u32,
    pub checkpoints: Vec<GrowthEstimate>,
    pub slope_fit: SlopeFit,
    /// Window of checkpoint cutoffs whose maximum d_N is reported as the
    /// finite-cutoff stand-in for the limsup.
    pub tail_window: (u32, u32),
    pub tail_max_d: f64,
}

/// Build a growth report: d_N at each checkpoint (from the per-length
/// `series`) plus a slope fit of `fit_series` over `[fit_lo, fit_hi]` —
/// the two coincide except when a subexponential set is fit on cumulative
/// counts. Checkpoints must be ascending and covered by the series.
pub fn growth_report(
    set_name: &str,
    series: &CountTable,
    fit_series: &CountTable,
    checkpoints: &[u32],
    fit_lo: u32,
    fit_hi: u32,
    base: f64,
) -> Result<GrowthReport> {
    if checkpoints.is_empty() {
        return Err(Error::Domain(
            "growth report needs at least one checkpoint".into(),
        ));
    }
    let mut estimates = Vec::with_capacity(checkpoints.len());
    for &n in checkpoints {
        estimates.push(estimate(series, n)?);
    }
    let fit = slope_fit(fit_series, fit_lo, fit_hi, base)?;
    let tail_from = checkpoints.len() / 2;
    let tail_window = (checkpoints[tail_from], checkpoints[checkpoints.len() - 1]);
    let tail_max_d = estimates[tail_from..]
        .iter()
        .map(|e| e.d_n)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(GrowthReport {
        set: set_name.to_string(),
        rank: series.rank(),
        checkpoints: estimates,
        slope_fit: fit,
        tail_window,
        tail_max_d,
    })
}

#[derive(Serialize)]
struct CheckpointJson<'a> {
    #[serde(rename = "N")]
    n: u32,
    numerator: &'a str,
    denominator: &'a str,
    #[serde(rename = "d_N")]
    d_n: f64,
}

#[derive(Serialize)]
struct SlopeFitJson {
    range: [u32; 2],
    base: f64,
    slope: f64,
    residual: f64,
}

#[derive(Serialize)]
struct LimsupProxyJson {
    window: [u32; 2],
    #[serde(rename = "max_d_N")]
    max_d_n: f64,
    note: &'static str,
}

#[derive(Serialize)]
struct GrowthReportJson<'a> {
    set: &'a str,
    rank: u32,
    checkpoints: Vec<CheckpointJson<'a>>,
    slope_fit: SlopeFitJson,
    limsup_proxy: LimsupProxyJson,
}

impl GrowthReport {
    pub fn to_json(&self) -> String {
        let numerators: Vec<String> = self
            .checkpoints
            .iter()
            .map(|e| e.numerator.to_string())
            .collect();
        let denominators: Vec<String> = self
            .checkpoints
            .iter()
            .map(|e| e.denominator.to_string())
            .collect();
        let view = GrowthReportJson {
            set: &self.set,
            rank: self.rank,
            checkpoints: self
                .checkpoints
                .iter()
                .zip(numerators.iter().zip(&denominators))
                .map(|(e, (num, den))| CheckpointJson {
                    n: e.n,
                    numerator: num,
                    denominator: den,
                    d_n: e.d_n,
                })
                .collect(),
            slope_fit: SlopeFitJson {
                range: [self.slope_fit.range.0, self.slope_fit.range.1],
                base: self.slope_fit.base,
                slope: self.slope_fit.slope,
                residual: self.slope_fit.residual,
            },
            limsup_proxy: LimsupProxyJson {
                window: [self.tail_window.0, self.tail_window.1],
                max_d_n: self.tail_max_d,
                note: "maximum d_N over the tail checkpoints; a finite-N stand-in for the limsup, not a limit claim",
            },
        };
        serde_json::to_string(&view).expect("growth report serializes")
    }
}
