//! Hyperbolic structures on the once-punctured torus: holonomy matrices,
//! translation lengths of primitive classes (= simple closed geodesic
//! lengths), the geodesic census with its quadratic-growth fit, and the
//! word-length / hyperbolic-length comparability report.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::bigmath::ln_bigint_abs;
use crate::error::{Error, Result};
use crate::f2prim::{enumerate_classes, PrimitiveClass};
use crate::words::{CyclicWord, Word};

/// Row-major 2x2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T> Mat2<T>
where
    T: Clone + Zero + One + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    pub fn new(a: T, b: T, c: T, d: T) -> Mat2<T> {
        Mat2 { a, b, c, d }
    }

    pub fn identity() -> Mat2<T> {
        Mat2::new(T::one(), T::zero(), T::zero(), T::one())
    }

    pub fn mul(&self, rhs: &Mat2<T>) -> Mat2<T> {
        Mat2::new(
            self.a.clone() * rhs.a.clone() + self.b.clone() * rhs.c.clone(),
            self.a.clone() * rhs.b.clone() + self.b.clone() * rhs.d.clone(),
            self.c.clone() * rhs.a.clone() + self.d.clone() * rhs.c.clone(),
            self.c.clone() * rhs.b.clone() + self.d.clone() * rhs.d.clone(),
        )
    }

    pub fn trace(&self) -> T {
        self.a.clone() + self.d.clone()
    }

    pub fn det(&self) -> T {
        self.a.clone() * self.d.clone() - self.b.clone() * self.c.clone()
    }

    /// Inverse of a determinant-1 matrix: `[[d, -b], [-c, a]]`.
    pub fn inverse_unimodular(&self) -> Mat2<T> {
        Mat2::new(
            self.d.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }
}

#[derive(Clone, Debug)]
enum Mats {
    Exact { gens: [Mat2<BigInt>; 2] },
    Real { gens: [Mat2<f64>; 2] },
}

/// A complete hyperbolic structure on the once-punctured torus, given as a
/// pair of unimodular generator matrices with parabolic commutator
/// (trace -2, equivalently the Fricke relation x² + y² + z² = xyz on the
/// traces x, y, z of A, B, AB).
#[derive(Clone, Debug)]
pub struct PuncturedTorusStructure {
    label: String,
    mats: Mats,
}

fn bigmat(entries: [i64; 4]) -> Mat2<BigInt> {
    Mat2::new(
        BigInt::from(entries[0]),
        BigInt::from(entries[1]),
        BigInt::from(entries[2]),
        BigInt::from(entries[3]),
    )
}

impl PuncturedTorusStructure {
    /// The modular torus: A = [[1,1],[1,2]], B = [[1,-1],[-1,2]], with
    /// tr A = tr B = tr AB = 3. Integer-exact.
    pub fn modular_torus() -> PuncturedTorusStructure {
        PuncturedTorusStructure {
            label: "modular".to_string(),
            mats: Mats::Exact {
                gens: [bigmat([1, 1, 1, 2]), bigmat([1, -1, -1, 2])],
            },
        }
    }

    /// Structure with prescribed traces tr A = x, tr B = y, both > 2. The
    /// trace of AB is the larger root z of z² - xyz + (x² + y²) = 0, which
    /// must be real (and is then > 2).
    ///
    /// Realization: A = [[x, -1], [1, 0]] (trace x, det 1) and
    /// B = [[0, h], [-1/h, y]] (trace y, det 1) where h + 1/h = z, i.e.
    /// h = (z + sqrt(z² - 4)) / 2. Then AB = [[1/h, xh - y], [0, h]] has
    /// trace z, and the commutator trace is forced to -2 by the identity
    /// tr[A,B] = x² + y² + z² - xyz - 2.
    pub fn from_traces(x: f64, y: f64) -> Result<PuncturedTorusStructure> {
        let admissible = x > 2.0 && y > 2.0;
        if !admissible {
            return Err(Error::Domain(format!(
                "punctured-torus traces must exceed 2, got ({x}, {y})"
            )));
        }
        let disc = (x * y) * (x * y) - 4.0 * (x * x + y * y);
        if disc < 0.0 {
            return Err(Error::Domain(format!(
                "no real trace for the product: discriminant {disc} < 0"
            )));
        }
        let z = (x * y + disc.sqrt()) / 2.0;
        if z <= 2.0 {
            return Err(Error::Domain(format!(
                "product trace {z} is not hyperbolic"
            )));
        }
        let h = (z + (z * z - 4.0).sqrt()) / 2.0;
        let mat_a = Mat2::new(x, -1.0, 1.0, 0.0);
        let mat_b = Mat2::new(0.0, h, -1.0 / h, y);
        Ok(PuncturedTorusStructure {
            label: format!("traces({x},{y})"),
            mats: Mats::Real {
                gens: [mat_a, mat_b],
            },
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// True when holonomy is evaluated in exact integer arithmetic.
    pub fn is_exact(&self) -> bool {
        matches!(self.mats, Mats::Exact { .. })
    }

    pub fn trace_a(&self) -> TraceValue {
        self.generator_matrix(0).trace_value()
    }

    pub fn trace_b(&self) -> TraceValue {
        self.generator_matrix(1).trace_value()
    }

    pub fn trace_ab(&self) -> TraceValue {
        let w =
            Word::parse(crate::words::Alphabet::new(2).expect("rank 2"), "ab").expect("valid word");
        self.holonomy(&w).expect("rank matches").trace_value()
    }

    pub fn commutator_trace(&self) -> TraceValue {
        let w = Word::parse(crate::words::Alphabet::new(2).expect("rank 2"), "abAB")
            .expect("valid word");
        self.holonomy(&w).expect("rank matches").trace_value()
    }

    fn generator_matrix(&self, index: usize) -> HolonomyMatrix {
        match &self.mats {
            Mats::Exact { gens } => HolonomyMatrix::Exact(gens[index].clone()),
            Mats::Real { gens } => HolonomyMatrix::Real(gens[index].clone()),
        }
    }

    /// Product of generator matrices along the word's letters.
    pub fn holonomy(&self, w: &Word) -> Result<HolonomyMatrix> {
        if w.alphabet().rank() != 2 {
            return Err(Error::Domain(format!(
                "holonomy is defined for rank-2 words, got rank {}",
                w.alphabet().rank()
            )));
        }
        match &self.mats {
            Mats::Exact { gens } => {
                let invs = [gens[0].inverse_unimodular(), gens[1].inverse_unimodular()];
                let mut acc: Mat2<BigInt> = Mat2::identity();
                for &l in w.letters() {
                    let idx = l.generator_index() as usize;
                    let m = if l.is_positive() {
                        &gens[idx]
                    } else {
                        &invs[idx]
                    };
                    acc = acc.mul(m);
                }
                Ok(HolonomyMatrix::Exact(acc))
            }
            Mats::Real { gens } => {
                let invs = [gens[0].inverse_unimodular(), gens[1].inverse_unimodular()];
                let mut acc: Mat2<f64> = Mat2::identity();
                for &l in w.letters() {
                    let idx = l.generator_index() as usize;
                    let m = if l.is_positive() {
                        &gens[idx]
                    } else {
                        &invs[idx]
                    };
                    acc = acc.mul(m);
                }
                Ok(HolonomyMatrix::Real(acc))
            }
        }
    }

    /// Length of the closed geodesic in the class of c:
    /// `2 arccosh(|tr| / 2)`. Errors when `|tr| <= 2` (parabolic or
    /// elliptic, e.g. the commutator).
    pub fn translation_length(&self, c: &CyclicWord) -> Result<f64> {
        let trace = self.holonomy(&c.to_word())?.trace_value();
        if !trace.magnitude_exceeds_two() {
            return Err(Error::NotHyperbolic {
                trace_abs: trace.abs_f64(),
            });
        }
        Ok(trace.translation_length())
    }
}

/// Holonomy matrix in the structure's arithmetic.
#[derive(Clone, Debug)]
pub enum HolonomyMatrix {
    Exact(Mat2<BigInt>),
    Real(Mat2<f64>),
}

impl HolonomyMatrix {
    pub fn trace_value(&self) -> TraceValue {
        match self {
            HolonomyMatrix::Exact(m) => TraceValue::Exact(m.trace()),
            HolonomyMatrix::Real(m) => TraceValue::Real(m.trace()),
        }
    }

    pub fn det_value(&self) -> TraceValue {
        match self {
            HolonomyMatrix::Exact(m) => TraceValue::Exact(m.det()),
            HolonomyMatrix::Real(m) => TraceValue::Real(m.det()),
        }
    }
}

/// A trace, exact or floating.
#[derive(Clone, PartialEq, Debug)]
pub enum TraceValue {
    Exact(BigInt),
    Real(f64),
}

impl TraceValue {
    pub fn abs_f64(&self) -> f64 {
        match self {
            TraceValue::Exact(t) => t.abs().to_f64().unwrap_or(f64::INFINITY),
            TraceValue::Real(t) => t.abs(),
        }
    }

    pub fn magnitude_exceeds_two(&self) -> bool {
        match self {
            TraceValue::Exact(t) => t.abs() > BigInt::from(2),
            TraceValue::Real(t) => t.abs() > 2.0,
        }
    }

    /// `2 arccosh(|t| / 2)`, switching to a logarithmic form before the
    /// squaring inside arccosh can overflow.
    pub fn translation_length(&self) -> f64 {
        match self {
            TraceValue::Exact(t) => {
                let approx = t.abs().to_f64().unwrap_or(f64::INFINITY);
                if approx < 1e100 {
                    2.0 * (approx / 2.0).acosh()
                } else {
                    // arccosh(t/2) = ln(t/2 + sqrt(t²/4 - 1)) -> ln t
                    2.0 * ln_bigint_abs(t)
                }
            }
            TraceValue::Real(t) => 2.0 * (t.abs() / 2.0).acosh(),
        }
    }

    /// Decimal rendering: exact integers verbatim, floats to 9 places.
    pub fn to_decimal_string(&self) -> String {
        match self {
            TraceValue::Exact(t) => t.to_string(),
            TraceValue::Real(t) => format!("{t:.9}"),
        }
    }
}

impl fmt::Display for TraceValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

/// One unoriented simple closed geodesic: an inverse-pair of primitive
/// classes, keyed by the sign-positive class.
#[derive(Clone, Debug)]
pub struct GeodesicEntry {
    pub class: PrimitiveClass,
    pub trace: TraceValue,
    pub length: f64,
}

/// What the census counts, stated verbatim in its reports.
pub const COUNTING_CONVENTION: &str =
    "unoriented simple closed geodesics (one entry per inverse pair of primitive classes)";

/// Geodesic lengths of all primitive classes of cyclic length <= n_max,
/// one entry per inverse-pair (a geodesic has no orientation), sorted by
/// length.
#[derive(Clone, Debug)]
pub struct GeodesicCensus {
    pub structure_label: String,
    pub n_max: u32,
    /// Sorted ascending by (length, class vector).
    pub entries: Vec<GeodesicEntry>,
    /// Largest length present.
    pub l_max: f64,
}

pub fn geodesic_census(structure: &PuncturedTorusStructure, n_max: u32) -> Result<GeodesicCensus> {
    let mut entries = Vec::new();
    for class in enumerate_classes(n_max)? {
        let (sa, sb) = class.vector();
        let positive = sa > 0 || (sa == 0 && sb > 0);
        if !positive {
            continue;
        }
        let trace = structure
            .holonomy(&class.representative().to_word())?
            .trace_value();
        if !trace.magnitude_exceeds_two() {
            return Err(Error::NotHyperbolic {
                trace_abs: trace.abs_f64(),
            });
        }
        let length = trace.translation_length();
        entries.push(GeodesicEntry {
            class,
            trace,
            length,
        });
    }
    entries.sort_by(|x, y| {
        x.length
            .total_cmp(&y.length)
            .then_with(|| x.class.vector().cmp(&y.class.vector()))
    });
    let l_max = entries.last().map_or(0.0, |e| e.length);
    Ok(GeodesicCensus {
        structure_label: structure.label().to_string(),
        n_max,
        entries,
        l_max,
    })
}

impl GeodesicCensus {
    /// Counting function: number of geodesics of length at most l.
    pub fn count_length_at_most(&self, l: f64) -> usize {
        self.entries.partition_point(|e| e.length <= l)
    }

    /// CSV with header `class_vector,word,trace,length`; the vector field
    /// is quoted (it contains a comma), lengths have 9 decimal places.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("class_vector,word,trace,length\n");
        for e in &self.entries {
            let (sa, sb) = e.class.vector();
            out.push_str(&format!(
                "\"({},{})\",{},{},{:.9}\n",
                sa,
                sb,
                e.class.representative(),
                e.trace.to_decimal_string(),
                e.length
            ));
        }
        out
    }

    /// JSON mirror of the CSV fields plus the census metadata.
    pub fn to_json(&self) -> String {
        #[derive(serde::Serialize)]
        struct EntryJson<'a> {
            class_vector: [i64; 2],
            word: String,
            trace: &'a str,
            length: f64,
        }
        #[derive(serde::Serialize)]
        struct CensusJson<'a> {
            structure: &'a str,
            n_max: u32,
            l_max: f64,
            counting: &'static str,
            entries: Vec<EntryJson<'a>>,
        }
        let traces: Vec<String> = self
            .entries
            .iter()
            .map(|e| e.trace.to_decimal_string())
            .collect();
        let view = CensusJson {
            structure: &self.structure_label,
            n_max: self.n_max,
            l_max: self.l_max,
            counting: COUNTING_CONVENTION,
            entries: self
                .entries
                .iter()
                .zip(&traces)
                .map(|(e, trace)| EntryJson {
                    class_vector: [e.class.vector().0, e.class.vector().1],
                    word: e.class.representative().to_string(),
                    trace,
                    length: e.length,
                })
                .collect(),
        };
        serde_json::to_string(&view).expect("census serializes")
    }
}

/// Extremes of geodesic length / word length over all classes up to a
/// cyclic-length cutoff, with the cumulative per-cutoff trajectory.
#[derive(Clone, Debug)]
pub struct ComparabilityReport {
    pub n_max: u32,
    pub min_ratio: f64,
    pub max_ratio: f64,
    /// `max(max_ratio, 1 / min_ratio)`: the empirical two-sided constant.
    pub c_emp: f64,
    /// `(n, min so far, max so far)` for each cutoff n = 1..=n_max.
    pub trajectory: Vec<(u32, f64, f64)>,
}

pub fn comparability(
    structure: &PuncturedTorusStructure,
    n_max: u32,
) -> Result<ComparabilityReport> {
    if n_max == 0 {
        return Err(Error::Domain("comparability needs n_max >= 1".into()));
    }
    let mut per_length_min = vec![f64::INFINITY; n_max as usize + 1];
    let mut per_length_max = vec![f64::NEG_INFINITY; n_max as usize + 1];
    for class in enumerate_classes(n_max)? {
        let n = class.cyclic_length();
        let length = structure.translation_length(class.representative())?;
        let ratio = length / n as f64;
        per_length_min[n] = per_length_min[n].min(ratio);
        per_length_max[n] = per_length_max[n].max(ratio);
    }
    let mut trajectory = Vec::with_capacity(n_max as usize);
    let mut min_ratio = f64::INFINITY;
    let mut max_ratio = f64::NEG_INFINITY;
    for n in 1..=n_max as usize {
        min_ratio = min_ratio.min(per_length_min[n]);
        max_ratio = max_ratio.max(per_length_max[n]);
        trajectory.push((n as u32, min_ratio, max_ratio));
    }
    let c_emp = max_ratio.max(1.0 / min_ratio);
    Ok(ComparabilityReport {
        n_max,
        min_ratio,
        max_ratio,
        c_emp,
        trajectory,
    })
}

/// Log-log fit of the geodesic counting function against length.
#[derive(Clone, Copy, Debug)]
pub struct QuadraticFit {
    /// Largest length up to which the census provably sees every geodesic:
    /// any class outside the census has word length > n_max, hence length
    /// at least `min_ratio * (n_max + 1)`.
    pub complete_bound: f64,
    /// Fit window (top half of the complete range).
    pub window: (f64, f64),
    pub exponent: f64,
    pub residual: f64,
    pub points: usize,
}

/// Fit `log count(L)` against `log L` over the top half of the range on
/// which the census is complete. `min_length_ratio` is the observed minimum
/// of length/word-length (from [`comparability`]); counting above the
/// induced bound would undercount, because longer words can still produce
/// geodesics below L_max.
pub fn quadratic_growth_fit(
    census: &GeodesicCensus,
    min_length_ratio: f64,
) -> Result<QuadraticFit> {
    let usable = min_length_ratio > 0.0;
    if !usable {
        return Err(Error::Domain(
            "minimum length ratio must be positive".into(),
        ));
    }
    let complete_bound = min_length_ratio * f64::from(census.n_max + 1);
    let window = (complete_bound / 2.0, complete_bound);
    let mut points: Vec<(f64, f64)> = Vec::new();
    for (i, e) in census.entries.iter().enumerate() {
        if e.length < window.0 || e.length > window.1 {
            continue;
        }
        let last_of_run = i + 1 == census.entries.len() || census.entries[i + 1].length != e.length;
        if last_of_run {
            points.push((e.length.ln(), ((i + 1) as f64).ln()));
        }
    }
    if points.len() < 3 {
        return Err(Error::TooFewPoints {
            have: points.len(),
            need: 3,
        });
    }
    let m = points.len() as f64;
    let sx: f64 = points.iter().map(|p| p.0).sum();
    let sy: f64 = points.iter().map(|p| p.1).sum();
    let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
    let exponent = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    let intercept = (sy - exponent * sx) / m;
    let residual = points
        .iter()
        .map(|&(x, y)| (y - (exponent * x + intercept)).abs())
        .fold(0.0, f64::max);
    Ok(QuadraticFit {
        complete_bound,
        window,
        exponent,
        residual,
        points: points.len(),
    })
}
