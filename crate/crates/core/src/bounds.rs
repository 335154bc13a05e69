//! Period–index bounds for Brauer classes on finite `2d`-dimensional CW
//! complexes.
//!
//! For a class of period `n = ∏ p^r` the index divides
//! `n^{d−1} ∏_{p|n} p^{v_p((d−1)!)}`. The bound is multiplicative over the
//! prime-power factors of `n`; for a prime power it is the product of the
//! orders `p^{r + v_p(j)}` of the differentials `d_{2j+1}`, `1 ≤ j ≤ d − 1`.
//! When `n` is prime to `(d−1)!` it collapses to `n^{d−1}`.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{big_pow, factorial, factorize};
use crate::par::Strategy;

pub use crate::arith::{legendre_valuation, padic_valuation};

/// Order bound `p^{r + v_p(j)}` for the image of `d_{2j+1}` on `E^{0,0}`.
pub fn differential_order_bound(p: u64, r: u32, j: u64) -> BigUint {
    assert!(j >= 1, "differentials are indexed from j = 1");
    big_pow(p, r as u64 + padic_valuation(p, j) as u64)
}

/// `∏_{j=1}^{d−1} p^{r + v_p(j)}`, multiplied out differential by
/// differential.
pub fn prime_power_index_bound_by_differentials(p: u64, r: u32, d: u64) -> BigUint {
    (1..d).map(|j| differential_order_bound(p, r, j)).product()
}

/// `p^{(d−1)r + v_p((d−1)!)}` in closed form.
pub fn prime_power_index_bound_closed_form(p: u64, r: u32, d: u64) -> BigUint {
    assert!(d >= 1, "d must be ≥ 1");
    big_pow(p, (d - 1) * r as u64 + legendre_valuation(p, d - 1))
}

/// Index bound for a class of period `p^r` in dimension `2d`. Both
/// evaluation routes are computed and must agree.
pub fn prime_power_index_bound(p: u64, r: u32, d: u64) -> BigUint {
    let closed = prime_power_index_bound_closed_form(p, r, d);
    let product = prime_power_index_bound_by_differentials(p, r, d);
    assert_eq!(closed, product, "bound routes disagree at p={p} r={r} d={d}");
    closed
}

/// `gcd(n, (d−1)!) = 1`, tested two ways: against the factorial itself and
/// by checking that every prime of `n` exceeds `d − 1`.
pub fn prime_to_factorial(n: u64, d: u64) -> bool {
    assert!(n >= 1 && d >= 1);
    let by_gcd = BigUint::from(n).gcd(&factorial(d - 1)).is_one();
    let by_primes = factorize(n).iter().all(|&(p, _)| p > d - 1);
    assert_eq!(by_gcd, by_primes, "coprimality routes disagree at n={n} d={d}");
    by_gcd
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SharpSource {
    /// d = 1.
    Trivial,
    /// d = 2: `per | ind | n` forces `ind = n`.
    ForcedAtDimensionTwo,
    /// d = 3: the general bound is attained.
    SharpAtDimensionThree,
    /// d = 4: Gu's two-branch formula.
    Gu,
}

impl SharpSource {
    pub fn tag(&self) -> &'static str {
        match self {
            SharpSource::Trivial => "trivial at d=1",
            SharpSource::ForcedAtDimensionTwo => "forced: per | ind | n at d=2",
            SharpSource::SharpAtDimensionThree => "general bound sharp at d=3",
            SharpSource::Gu => "Gu at d=4",
        }
    }

    fn from_tag(tag: &str) -> Option<Self> {
        [Self::Trivial, Self::ForcedAtDimensionTwo, Self::SharpAtDimensionThree, Self::Gu]
            .into_iter()
            .find(|s| s.tag() == tag)
    }
}

impl fmt::Display for SharpSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl Serialize for SharpSource {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.tag())
    }
}

impl<'de> Deserialize<'de> for SharpSource {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let tag = String::deserialize(de)?;
        Self::from_tag(&tag).ok_or_else(|| serde::de::Error::custom(format!("unknown source {tag:?}")))
    }
}

/// Big integers travel as decimal strings.
mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigUint, D::Error> {
        String::deserialize(de)?.parse().map_err(serde::de::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
            match v {
                Some(v) => s.collect_str(v),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Option<BigUint>, D::Error> {
            Option::<String>::deserialize(de)?
                .map(|t| t.parse().map_err(serde::de::Error::custom))
                .transpose()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpBound {
    #[serde(with = "decimal")]
    pub value: BigUint,
    pub source: SharpSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeBound {
    pub p: u64,
    pub r: u32,
    #[serde(with = "decimal")]
    pub bound: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u64,
    pub d: u64,
    pub primes: Vec<PrimeBound>,
    #[serde(rename = "theorem_a", with = "decimal")]
    pub theorem_a_bound: BigUint,
    #[serde(rename = "corollary_b")]
    pub corollary_b_applies: bool,
    pub sharp: Option<SharpBound>,
}

/// `e_p(n)`: `p` if `p | n`, else 1.
fn e(p: u64, n: u64) -> u64 {
    if n.is_multiple_of(p) {
        p
    } else {
        1
    }
}

/// Best known index bound for `d ≤ 4`; `None` beyond.
pub fn known_sharp_bound(n: u64, d: u64) -> Option<SharpBound> {
    assert!(n >= 1, "period must be ≥ 1");
    let nn = BigUint::from(n);
    let (value, source) = match d {
        1 => (BigUint::one(), SharpSource::Trivial),
        2 => (nn, SharpSource::ForcedAtDimensionTwo),
        3 => (theorem_a_bound(n, 3), SharpSource::SharpAtDimensionThree),
        4 => {
            let cube: BigUint = Pow::pow(&nn, 3u32);
            let value = if n.is_multiple_of(4) {
                cube * e(3, n)
            } else {
                cube * e(2, n) * e(3, n)
            };
            (value, SharpSource::Gu)
        }
        _ => return None,
    };
    Some(SharpBound { value, source })
}

fn theorem_a_bound(n: u64, d: u64) -> BigUint {
    factorize(n).iter().map(|&(p, r)| prime_power_index_bound(p, r, d)).product()
}

/// The full report for period `n` in dimension `2d`.
pub fn index_bound(n: u64, d: u64) -> BoundReport {
    assert!(n >= 1, "period must be ≥ 1");
    assert!(d >= 1, "d must be ≥ 1");
    let primes: Vec<PrimeBound> = factorize(n)
        .into_iter()
        .map(|(p, r)| PrimeBound { p, r, bound: prime_power_index_bound(p, r, d) })
        .collect();
    let theorem_a_bound: BigUint = primes.iter().map(|pb| &pb.bound).product();
    BoundReport {
        n,
        d,
        primes,
        theorem_a_bound,
        corollary_b_applies: prime_to_factorial(n, d),
        sharp: known_sharp_bound(n, d),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundComparison {
    pub n: u64,
    pub d: u64,
    #[serde(with = "decimal")]
    pub theorem_a: BigUint,
    pub sharp: Option<SharpBound>,
    /// `theorem_a / sharp` when the division is exact.
    #[serde(with = "decimal::option")]
    pub ratio: Option<BigUint>,
    /// The known bound is a proper divisor of the general one.
    pub sharp_strictly_better: bool,
}

pub fn compare_bounds(n: u64, d: u64) -> BoundComparison {
    let report = index_bound(n, d);
    let theorem_a = report.theorem_a_bound;
    let (ratio, strictly) = match &report.sharp {
        Some(s) if !s.value.is_zero() => {
            let (q, rem) = theorem_a.div_rem(&s.value);
            if rem.is_zero() {
                let strictly = !q.is_one();
                (Some(q), strictly)
            } else {
                (None, false)
            }
        }
        _ => (None, false),
    };
    BoundComparison { n, d, theorem_a, sharp: report.sharp, ratio, sharp_strictly_better: strictly }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub n: u64,
    pub d: u64,
    #[serde(rename = "theorem_a", with = "decimal")]
    pub bound: BigUint,
}

/// `index_bound(n, d)` for `1 ≤ n ≤ n_max`, `1 ≤ d ≤ d_max`, ordered by `n`
/// then `d`.
pub fn bound_table(n_max: u64, d_max: u64, strategy: Strategy) -> Vec<TableCell> {
    let cells: Vec<(u64, u64)> =
        (1..=n_max).flat_map(|n| (1..=d_max).map(move |d| (n, d))).collect();
    strategy.map(&cells, |&(n, d)| TableCell { n, d, bound: index_bound(n, d).theorem_a_bound })
}
