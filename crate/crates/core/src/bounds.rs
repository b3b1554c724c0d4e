//! Exact rational arithmetic for parameters and bound comparisons, plus the
//! closed-form thresholds that appear in reports.
//!
//! Parameters such as `α` are carried as [`Rational`]. Comparisons against
//! bounds that involve `√(kα)·n^{3/2}` are decided exactly by squaring; floats
//! are only produced for display columns.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact fraction `p/q` with `q > 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub Ratio<i128>);

impl Rational {
    pub fn new(num: i128, den: i128) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parameters("zero denominator".into()));
        }
        Ok(Self(Ratio::new(num, den)))
    }

    pub fn integer(v: i128) -> Self {
        Self(Ratio::from_integer(v))
    }

    pub fn numer(&self) -> i128 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i128 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn floor(&self) -> i128 {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> i128 {
        self.0.ceil().to_integer()
    }

    pub fn is_positive(&self) -> bool {
        self.numer() > 0
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl std::ops::Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl std::ops::Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl std::ops::Div for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        Rational(self.0 / rhs.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `p/q`, an integer, or a finite decimal such as `0.25`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parameters(format!("cannot parse {s:?} as a fraction"));
        if let Some((p, q)) = s.split_once('/') {
            let p: i128 = p.trim().parse().map_err(|_| bad())?;
            let q: i128 = q.trim().parse().map_err(|_| bad())?;
            return Self::new(p, q);
        }
        if let Some((whole, frac)) = s.split_once('.') {
            if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 18 {
                return Err(bad());
            }
            let negative = whole.starts_with('-');
            let whole: i128 = if whole.is_empty() || whole == "-" {
                0
            } else {
                whole.parse().map_err(|_| bad())?
            };
            let scale = 10i128.pow(frac.len() as u32);
            let frac: i128 = frac.parse().map_err(|_| bad())?;
            let num = whole.abs() * scale + frac;
            return Self::new(if negative { -num } else { num }, scale);
        }
        Ok(Self::integer(s.parse().map_err(|_| bad())?))
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `⌊√v⌋` for a non-negative integer.
pub fn isqrt(v: u128) -> u128 {
    if v < 2 {
        return v;
    }
    let mut x = (v as f64).sqrt() as u128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    x
}

/// Smallest integer `t ≥ 0` with `t² ≥ q`.
pub fn ceil_sqrt(q: Rational) -> u128 {
    if !q.is_positive() {
        return 0;
    }
    // t² ≥ p/d  ⇔  t² d ≥ p
    let (p, d) = (q.numer() as u128, q.denom() as u128);
    let mut t = isqrt(p / d);
    while t * t * d < p {
        t += 1;
    }
    t
}

/// A rational enclosure `lo ≤ √q ≤ hi` with `hi - lo ≤ 1/scale`.
pub fn sqrt_enclosure(q: Rational, scale: u128) -> (Rational, Rational) {
    if !q.is_positive() {
        return (Rational::integer(0), Rational::integer(0));
    }
    // √(p/d) · scale = √(p · scale² / d)
    let (p, d) = (q.numer() as u128, q.denom() as u128);
    let inner = p * scale * scale / d;
    let lo = isqrt(inner);
    let exact = lo * lo * d == p * scale * scale;
    let hi = if exact { lo } else { lo + 1 };
    let s = scale as i128;
    (
        Rational::new(lo as i128, s).expect("scale > 0"),
        Rational::new(hi as i128, s).expect("scale > 0"),
    )
}

/// Decides `e ≥ n²/4 − c·√(kα)·n^{3/2}` exactly.
///
/// With `d = n²/4 − e`, the inequality holds iff `d ≤ 0` or `d² ≤ c²·kα·n³`.
pub fn meets_sqrt_edge_bound(e: u64, n: u64, k: u64, alpha: Rational, c: u64) -> bool {
    let deficit = Rational::new((n * n) as i128, 4).unwrap() - Rational::integer(e as i128);
    if !deficit.is_positive() {
        return true;
    }
    let lhs = deficit * deficit;
    let rhs = Rational::integer((c * c * k) as i128) * alpha * Rational::integer((n * n * n) as i128);
    lhs <= rhs
}

/// Edge threshold `n²/4 − c·√(kα)·n^{3/2}` as a rational enclosure and a float.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SqrtThreshold {
    pub lower: Rational,
    pub upper: Rational,
    pub approx: f64,
}

pub fn sqrt_edge_threshold(n: u64, k: u64, alpha: Rational, c: u64) -> SqrtThreshold {
    // c·√(kα)·n^{3/2} = √(c²·k·α·n³)
    let radicand = Rational::integer((c * c * k) as i128) * alpha * Rational::integer((n * n * n) as i128);
    let (lo, hi) = sqrt_enclosure(radicand, 1_000_000);
    let quarter = Rational::new((n * n) as i128, 4).unwrap();
    SqrtThreshold {
        lower: quarter - hi,
        upper: quarter - lo,
        approx: (n * n) as f64 / 4.0 - (c as f64) * ((k as f64) * alpha.to_f64()).sqrt() * (n as f64).powf(1.5),
    }
}

/// Degree threshold used by peeling: `(1/2 − 1/(20k))·order`.
pub fn peel_threshold(k: u64, order: u64) -> Rational {
    let k = k as i128;
    Rational::new(10 * k - 1, 20 * k).unwrap() * Rational::integer(order as i128)
}

/// `80√k·log k·n^{1+1/k} + 10k²n`, the even-cycle Turán bound used to force a `C_{2k}`.
pub fn even_cycle_turan_bound(n: f64, k: u64) -> f64 {
    let kf = k as f64;
    80.0 * kf.sqrt() * kf.ln() * n.powf(1.0 + 1.0 / kf) + 10.0 * kf * kf * n
}

/// `(k−1)n/2`, the Erdős–Gallai bound on edges of a graph with no path of `k` edges.
pub fn path_turan_bound(n: u64, k: u64) -> Rational {
    Rational::new(((k as i128) - 1) * n as i128, 2).unwrap()
}

/// `log₂` of `(2k)^{9k²}`, the order from which the stability bounds apply.
pub fn log2_stability_order(k: u64) -> f64 {
    9.0 * (k * k) as f64 * (2.0 * k as f64).log2()
}

/// Whether `n ≥ (2k)^{9k²}` and `ε < 1/(2000k²)`.
pub fn stability_hypotheses_hold(n: u64, k: u64, epsilon: f64) -> bool {
    (n as f64).log2() >= log2_stability_order(k) && epsilon < 1.0 / (2000.0 * (k * k) as f64)
}
