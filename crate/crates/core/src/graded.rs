//! Finitely generated graded abelian groups, truncated at a degree cap.
//!
//! Each degree stores a free rank and a sorted multiset of finite cyclic
//! orders `≥ 2`. Orders are kept as they arise (`Z/6` stays `Z/6`); primary
//! decomposition happens only through [`GradedAbelianGroup::primary_part`].

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::big_pow;
use crate::{Error, Result};

/// A cyclic group `Z/order`, with order `0` standing for `Z`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicSummand(BigUint);

impl CyclicSummand {
    pub fn free() -> Self {
        CyclicSummand(BigUint::zero())
    }

    /// `Z/order`; `None` when the group is trivial (`order == 1`).
    pub fn finite(order: impl Into<BigUint>) -> Option<Self> {
        Self::from_order(order.into())
    }

    /// Order `0` is `Z`, order `1` is trivial.
    pub fn from_order(order: BigUint) -> Option<Self> {
        if order.is_one() {
            None
        } else {
            Some(CyclicSummand(order))
        }
    }

    pub fn order(&self) -> &BigUint {
        &self.0
    }

    pub fn is_free(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for CyclicSummand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_free() {
            f.write_str("Z")
        } else {
            write!(f, "Z/{}", self.0)
        }
    }
}

/// `a ⊗ b`; `None` when trivial.
pub fn tensor_summands(a: &CyclicSummand, b: &CyclicSummand) -> Option<CyclicSummand> {
    // gcd(0, m) = m covers Z⊗Z = Z and Z⊗Z/m = Z/m.
    CyclicSummand::from_order(a.0.gcd(&b.0))
}

/// `Tor(a, b)`; `None` when trivial.
pub fn tor_summands(a: &CyclicSummand, b: &CyclicSummand) -> Option<CyclicSummand> {
    if a.is_free() || b.is_free() {
        None
    } else {
        CyclicSummand::from_order(a.0.gcd(&b.0))
    }
}

/// One degree of a graded group in canonical form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Component {
    pub free: usize,
    /// Sorted ascending, every entry `≥ 2`.
    pub torsion: Vec<BigUint>,
}

impl Component {
    pub fn is_trivial(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    fn push(&mut self, s: CyclicSummand) {
        if s.is_free() {
            self.free += 1;
        } else {
            self.torsion.push(s.0);
        }
    }

    fn normalize(&mut self) {
        self.torsion.retain(|o| !o.is_one() && !o.is_zero());
        self.torsion.sort();
    }

    /// Iterates the summands, free ones first.
    pub fn summands(&self) -> impl Iterator<Item = CyclicSummand> + '_ {
        std::iter::repeat_n(CyclicSummand::free(), self.free)
            .chain(self.torsion.iter().cloned().map(CyclicSummand))
    }

    /// lcm of the finite orders, `1` if there are none.
    pub fn torsion_exponent(&self) -> BigUint {
        self.torsion.iter().fold(BigUint::one(), |acc, o| acc.lcm(o))
    }

    /// Prime-power orders of the primary decomposition, sorted.
    pub fn elementary_divisors(&self) -> Vec<BigUint> {
        let mut out: Vec<BigUint> = self
            .torsion
            .iter()
            .flat_map(|o| prime_power_factors(o).into_iter().map(|(p, e)| Pow::pow(p, e)))
            .collect();
        out.sort();
        out
    }

    /// The same group with torsion written as invariant factors
    /// `d_1 | d_2 | …`.
    pub fn invariant_form(&self) -> Component {
        let mut by_prime: BTreeMap<BigUint, Vec<u32>> = BTreeMap::new();
        for o in &self.torsion {
            for (p, e) in prime_power_factors(o) {
                by_prime.entry(p).or_default().push(e);
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        // The i-th largest invariant factor collects the i-th largest power of
        // every prime.
        let mut factors = vec![BigUint::one(); len];
        for (p, mut exps) in by_prime {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            for (slot, e) in factors.iter_mut().zip(exps) {
                *slot *= Pow::pow(&p, e);
            }
        }
        factors.reverse();
        Component { free: self.free, torsion: factors }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.summands().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" ⊕ "))
    }
}

/// A graded abelian group known exactly in degrees `0..=max_degree`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedAbelianGroup {
    max_degree: usize,
    components: BTreeMap<usize, Component>,
}

impl GradedAbelianGroup {
    /// The zero group truncated at `max_degree`.
    pub fn new(max_degree: usize) -> Self {
        GradedAbelianGroup { max_degree, components: BTreeMap::new() }
    }

    /// `Z` in degree 0, the homology of a point.
    pub fn unit(max_degree: usize) -> Self {
        let mut g = Self::new(max_degree);
        g.add(0, CyclicSummand::free()).expect("degree 0 is within every cap");
        g
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Adds a summand in `degree`. Order-1 summands are dropped.
    pub fn add(&mut self, degree: usize, s: CyclicSummand) -> Result<()> {
        self.check_degree(degree)?;
        if s.0.is_one() {
            return Ok(());
        }
        let c = self.components.entry(degree).or_default();
        c.push(s);
        c.normalize();
        Ok(())
    }

    /// Adds `Z/order`, or `Z` when `order == 0`.
    pub fn add_order(&mut self, degree: usize, order: impl Into<BigUint>) -> Result<()> {
        match CyclicSummand::from_order(order.into()) {
            Some(s) => self.add(degree, s),
            None => self.check_degree(degree),
        }
    }

    fn check_degree(&self, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            Err(Error::BeyondTruncation { requested: degree, cap: self.max_degree })
        } else {
            Ok(())
        }
    }

    /// The component in `degree`; the trivial group for empty degrees.
    pub fn component(&self, degree: usize) -> Result<Component> {
        self.check_degree(degree)?;
        Ok(self.components.get(&degree).cloned().unwrap_or_default())
    }

    /// Non-trivial components in ascending degree.
    pub fn iter(&self) -> impl Iterator<Item = (usize, &Component)> {
        self.components.iter().map(|(d, c)| (*d, c))
    }

    /// `(torsion exponent, free rank)` in `degree`.
    pub fn exponent(&self, degree: usize) -> Result<(BigUint, usize)> {
        let c = self.component(degree)?;
        Ok((c.torsion_exponent(), c.free))
    }

    /// Re-establishes canonical form (sorted orders, no trivial entries).
    pub fn canonicalize(&mut self) {
        for c in self.components.values_mut() {
            c.normalize();
        }
        self.components.retain(|_, c| !c.is_trivial());
    }

    /// The same group known only up to `max_degree ≤ self.max_degree()`.
    pub fn truncate(&self, max_degree: usize) -> Result<Self> {
        self.check_degree(max_degree)?;
        Ok(GradedAbelianGroup {
            max_degree,
            components: self.components.range(..=max_degree).map(|(d, c)| (*d, c.clone())).collect(),
        })
    }

    /// Each `Z/m` becomes `Z/p^{v_p(m)}`; free summands are dropped.
    pub fn primary_part(&self, p: u64) -> Self {
        let p_big = BigUint::from(p);
        let mut out = Self::new(self.max_degree);
        for (&d, c) in &self.components {
            for order in &c.torsion {
                let mut m = order.clone();
                let mut e = 0u64;
                while (&m % &p_big).is_zero() {
                    m /= &p_big;
                    e += 1;
                }
                if e > 0 {
                    out.add_order(d, big_pow(p, e)).expect("same cap");
                }
            }
        }
        out
    }

    /// Every component rewritten in invariant-factor form. Two groups are
    /// isomorphic iff their invariant forms are equal.
    pub fn invariant_form(&self) -> Self {
        GradedAbelianGroup {
            max_degree: self.max_degree,
            components: self.components.iter().map(|(d, c)| (*d, c.invariant_form())).collect(),
        }
    }

    pub fn is_isomorphic(&self, other: &Self) -> bool {
        self.max_degree == other.max_degree && self.invariant_form() == other.invariant_form()
    }

    /// Integral Künneth formula for the tensor product of complexes with
    /// homology `self` and `other`:
    /// `H_n = ⊕_{i+j=n} A_i⊗B_j ⊕ ⊕_{i+j=n−1} Tor(A_i, B_j)`.
    ///
    /// Degree `n` only reads factor degrees `≤ n`, so the result is exact up
    /// to `max_degree` whenever both factors are known that far.
    pub fn kunneth(&self, other: &Self, max_degree: usize) -> Result<Self> {
        let cap = self.max_degree.min(other.max_degree);
        if max_degree > cap {
            return Err(Error::BeyondTruncation { requested: max_degree, cap });
        }
        let mut out = Self::new(max_degree);
        for (&i, a) in self.components.range(..=max_degree) {
            for (&j, b) in other.components.range(..=max_degree - i) {
                let n = i + j;
                let tensor = out.components.entry(n).or_default();
                tensor.free += a.free * b.free;
                for o in &b.torsion {
                    tensor.torsion.extend(std::iter::repeat_n(o.clone(), a.free));
                }
                for o in &a.torsion {
                    tensor.torsion.extend(std::iter::repeat_n(o.clone(), b.free));
                }
                for x in &a.torsion {
                    for y in &b.torsion {
                        tensor.torsion.push(x.gcd(y));
                    }
                }
                if n < max_degree {
                    let tor = out.components.entry(n + 1).or_default();
                    for x in &a.torsion {
                        for y in &b.torsion {
                            tor.torsion.push(x.gcd(y));
                        }
                    }
                }
            }
        }
        out.canonicalize();
        Ok(out)
    }

    /// Künneth product over a sequence of factors, starting from [`Self::unit`].
    pub fn kunneth_all<'a, I>(factors: I, max_degree: usize) -> Result<Self>
    where
        I: IntoIterator<Item = &'a GradedAbelianGroup>,
    {
        factors
            .into_iter()
            .try_fold(Self::unit(max_degree), |acc, g| acc.kunneth(g, max_degree))
    }
}

/// Trial-division factorization of a positive order.
fn prime_power_factors(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let mut e = 0;
            while (&n % &d).is_zero() {
                n /= &d;
                e += 1;
            }
            out.push((d.clone(), e));
        }
        d += 1u32;
    }
    if n > BigUint::one() {
        out.push((n, 1));
    }
    out
}

impl fmt::Display for GradedAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in 0..=self.max_degree {
            let c = self.components.get(&d).cloned().unwrap_or_default();
            writeln!(f, "H_{d} = {c}")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ComponentJson {
    free: usize,
    torsion: Vec<String>,
}

/// `{"<degree>": {"free": r, "torsion": ["<order>", ...]}, ...}` with every
/// degree `0..=max_degree` present, so the cap survives a round trip.
impl Serialize for GradedAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.max_degree + 1))?;
        for d in 0..=self.max_degree {
            let c = self.components.get(&d).cloned().unwrap_or_default();
            let json = ComponentJson {
                free: c.free,
                torsion: c.torsion.iter().map(|o| o.to_string()).collect(),
            };
            map.serialize_entry(&d.to_string(), &json)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for GradedAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw: BTreeMap<String, ComponentJson> = BTreeMap::deserialize(de)?;
        let mut parsed = BTreeMap::new();
        for (k, v) in raw {
            let d: usize = k.parse().map_err(D::Error::custom)?;
            let torsion = v
                .torsion
                .iter()
                .map(|o| o.parse::<BigUint>().map_err(D::Error::custom))
                .collect::<std::result::Result<Vec<_>, _>>()?;
            parsed.insert(d, Component { free: v.free, torsion });
        }
        let max_degree = parsed.keys().next_back().copied().unwrap_or(0);
        let mut g = GradedAbelianGroup { max_degree, components: parsed };
        g.canonicalize();
        Ok(g)
    }
}
