//! Elementary dg complexes and the tensor complexes `X_p` and `X` whose
//! homology surjects onto `H_*(K(Z/n, 2); Z)`.
//!
//! Each elementary complex has a closed-form homology and a concrete based
//! realization; the two are compared through [`crate::oracle`].

use std::fmt;

use num_bigint::{BigInt, BigUint};

use crate::arith::{big_pow, factorize, is_prime, padic_valuation};
use crate::graded::GradedAbelianGroup;
use crate::oracle::{self, ChainComplex, IntegerMatrix};
use crate::words::{Symbol, Word};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ComplexKind {
    /// `E(x, 2q−1)` with `dx = 0`.
    ExteriorFirst,
    /// `P(x, 2q)` with `dx = 0`.
    DividedPowerFirst,
    /// `E(x, 2q−1) ⊗ P(y, 2q)` with `dy = h·x`.
    ExteriorDividedPower { h: u64 },
    /// `P(x, 2q) ⊗ E(y, 2q+1)` with `dy = h·x`.
    DividedPowerExterior { h: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ElementaryComplex {
    kind: ComplexKind,
    q: usize,
    label: String,
}

impl ElementaryComplex {
    pub fn new(kind: ComplexKind, q: usize, label: impl Into<String>) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidArgument("elementary complexes need q ≥ 1".into()));
        }
        if let ComplexKind::ExteriorDividedPower { h } | ComplexKind::DividedPowerExterior { h } = kind {
            if h == 0 {
                return Err(Error::InvalidArgument("the twist h must be ≥ 1".into()));
            }
        }
        Ok(ElementaryComplex { kind, q, label: label.into() })
    }

    pub fn exterior(q: usize) -> Result<Self> {
        Self::new(ComplexKind::ExteriorFirst, q, format!("E(x,{})", 2 * q.max(1) - 1))
    }

    pub fn divided_power(q: usize) -> Result<Self> {
        Self::new(ComplexKind::DividedPowerFirst, q, format!("P(x,{})", 2 * q))
    }

    pub fn exterior_divided_power(q: usize, h: u64) -> Result<Self> {
        let label = format!("E(x,{})⊗P(y,{}), dy={h}x", 2 * q.max(1) - 1, 2 * q);
        Self::new(ComplexKind::ExteriorDividedPower { h }, q, label)
    }

    pub fn divided_power_exterior(q: usize, h: u64) -> Result<Self> {
        let label = format!("P(x,{})⊗E(y,{}), dy={h}x", 2 * q, 2 * q + 1);
        Self::new(ComplexKind::DividedPowerExterior { h }, q, label)
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn twist(&self) -> Option<u64> {
        match self.kind {
            ComplexKind::ExteriorDividedPower { h } | ComplexKind::DividedPowerExterior { h } => Some(h),
            _ => None,
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Degrees of the generators `x` and, for second-type complexes, `y`.
    pub fn generator_degrees(&self) -> (usize, Option<usize>) {
        let q = self.q;
        match self.kind {
            ComplexKind::ExteriorFirst => (2 * q - 1, None),
            ComplexKind::DividedPowerFirst => (2 * q, None),
            ComplexKind::ExteriorDividedPower { .. } => (2 * q - 1, Some(2 * q)),
            ComplexKind::DividedPowerExterior { .. } => (2 * q, Some(2 * q + 1)),
        }
    }
}

impl fmt::Display for ElementaryComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Closed-form homology, truncated at `max_degree`:
///
/// * `E(x,2q−1)`: `Z` in degrees 0 and `2q−1`;
/// * `P(x,2q)`: `Z` in every degree `2qk`;
/// * `E(x,2q−1)⊗P(y,2q)`: `Z` in 0 and `Z/h·xγ_k(y)` in degree `2q−1+2qk`;
/// * `P(x,2q)⊗E(y,2q+1)`: `Z` in 0 and `Z/hk·γ_k(x)` in degree `2qk`, `k ≥ 1`.
pub fn closed_form_homology(c: &ElementaryComplex, max_degree: usize) -> GradedAbelianGroup {
    let mut g = GradedAbelianGroup::unit(max_degree);
    let q = c.q;
    match c.kind {
        ComplexKind::ExteriorFirst => {
            if 2 * q - 1 <= max_degree {
                g.add_order(2 * q - 1, 0u32).expect("within cap");
            }
        }
        ComplexKind::DividedPowerFirst => {
            for d in (2 * q..=max_degree).step_by(2 * q) {
                g.add_order(d, 0u32).expect("within cap");
            }
        }
        ComplexKind::ExteriorDividedPower { h } => {
            for d in (2 * q - 1..=max_degree).step_by(2 * q) {
                g.add_order(d, h).expect("within cap");
            }
        }
        ComplexKind::DividedPowerExterior { h } => {
            for (k, d) in (2 * q..=max_degree).step_by(2 * q).enumerate() {
                g.add_order(d, BigUint::from(h) * (k as u64 + 1)).expect("within cap");
            }
        }
    }
    g
}

/// Cells `(degree, label)` and boundary terms `(from, to, coefficient)`
/// assembled into a based complex over degrees `0..=top`.
fn assemble(top: usize, cells: &[(usize, String)], terms: &[(usize, usize, BigInt)]) -> Result<ChainComplex> {
    let mut bases: Vec<Vec<String>> = vec![Vec::new(); top + 1];
    let mut position = Vec::with_capacity(cells.len());
    for (d, label) in cells {
        position.push(bases[*d].len());
        bases[*d].push(label.clone());
    }
    let mut boundaries: Vec<IntegerMatrix> = (0..=top)
        .map(|n| IntegerMatrix::zeros(if n == 0 { 0 } else { bases[n - 1].len() }, bases[n].len()))
        .collect();
    for (from, to, coeff) in terms {
        let n = cells[*from].0;
        debug_assert_eq!(cells[*to].0 + 1, n);
        boundaries[n][(position[*to], position[*from])] += coeff;
    }
    ChainComplex::new(bases, boundaries)
}

/// A based realization of `c` over degrees `0..=max_degree + 1`, so that the
/// boundary into `max_degree` is complete.
///
/// Divided powers follow `x·γ_k(x) = (k+1)γ_{k+1}(x)` and `d γ_k(y) = dy·γ_{k−1}(y)`.
pub fn realize_chain_complex(c: &ElementaryComplex, max_degree: usize) -> ChainComplex {
    let top = max_degree + 1;
    let q = c.q;
    let mut cells: Vec<(usize, String)> = Vec::new();
    let mut terms: Vec<(usize, usize, BigInt)> = Vec::new();
    match c.kind {
        ComplexKind::ExteriorFirst => {
            cells.push((0, "1".into()));
            if 2 * q - 1 <= top {
                cells.push((2 * q - 1, "x".into()));
            }
        }
        ComplexKind::DividedPowerFirst => {
            for (k, d) in (0..=top).step_by(2 * q).enumerate() {
                cells.push((d, format!("γ_{k}(x)")));
            }
        }
        ComplexKind::ExteriorDividedPower { h } => {
            // Interleaved: γ_k(y) at 2qk, then x·γ_k(y) at 2qk + 2q − 1.
            let mut prev_odd: Option<usize> = None;
            for k in 0.. {
                let even = 2 * q * k;
                if even > top {
                    break;
                }
                let gamma = cells.len();
                cells.push((even, format!("γ_{k}(y)")));
                if let Some(target) = prev_odd {
                    terms.push((gamma, target, BigInt::from(h)));
                }
                let odd = even + 2 * q - 1;
                prev_odd = if odd <= top {
                    cells.push((odd, format!("x·γ_{k}(y)")));
                    Some(cells.len() - 1)
                } else {
                    None
                };
            }
        }
        ComplexKind::DividedPowerExterior { h } => {
            let mut gammas = Vec::new();
            for (k, d) in (0..=top).step_by(2 * q).enumerate() {
                gammas.push(cells.len());
                cells.push((d, format!("γ_{k}(x)")));
            }
            for k in 0.. {
                let d = 2 * q * k + 2 * q + 1;
                if d > top {
                    break;
                }
                let y = cells.len();
                cells.push((d, format!("y·γ_{k}(x)")));
                // d(y·γ_k(x)) = h·x·γ_k(x) = h(k+1)·γ_{k+1}(x); γ_{k+1}(x) sits
                // in degree d − 1 ≤ top, so it exists.
                terms.push((y, gammas[k + 1], BigInt::from(h) * (k as u64 + 1)));
            }
        }
    }
    assemble(top, &cells, &terms).expect("elementary complexes satisfy d∘d = 0")
}

/// Tensor product of based complexes with the Koszul sign
/// `d(a⊗b) = da⊗b + (−1)^{|a|} a⊗db`, over degrees `0..=max_degree + 1`.
pub fn tensor_chain_complex(c1: &ChainComplex, c2: &ChainComplex, max_degree: usize) -> Result<ChainComplex> {
    let top = max_degree + 1;
    for c in [c1, c2] {
        if c.max_degree() < top {
            return Err(Error::BeyondTruncation { requested: top, cap: c.max_degree() });
        }
        c.check_square_zero()?;
    }
    // index[n][i] = offset of the block C1_i ⊗ C2_{n−i} inside degree n.
    let mut bases: Vec<Vec<String>> = Vec::with_capacity(top + 1);
    let mut offsets: Vec<Vec<usize>> = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut basis = Vec::new();
        let mut off = Vec::with_capacity(n + 1);
        for i in 0..=n {
            off.push(basis.len());
            for a in c1.basis(i) {
                for b in c2.basis(n - i) {
                    basis.push(format!("{a}⊗{b}"));
                }
            }
        }
        bases.push(basis);
        offsets.push(off);
    }
    let mut boundaries = Vec::with_capacity(top + 1);
    boundaries.push(IntegerMatrix::zeros(0, bases[0].len()));
    for n in 1..=top {
        let mut d = IntegerMatrix::zeros(bases[n - 1].len(), bases[n].len());
        for i in 0..=n {
            let j = n - i;
            let (r1, r2) = (c1.rank(i), c2.rank(j));
            for a in 0..r1 {
                for b in 0..r2 {
                    let col = offsets[n][i] + a * r2 + b;
                    if i > 0 {
                        let da = c1.boundary(i);
                        let r2_same = c2.rank(j);
                        for a2 in 0..da.rows() {
                            let coeff = &da[(a2, a)];
                            if coeff.sign() != num_bigint::Sign::NoSign {
                                let row = offsets[n - 1][i - 1] + a2 * r2_same + b;
                                d[(row, col)] += coeff;
                            }
                        }
                    }
                    if j > 0 {
                        let db = c2.boundary(j);
                        let r2_low = c2.rank(j - 1);
                        for b2 in 0..db.rows() {
                            let coeff = &db[(b2, b)];
                            if coeff.sign() != num_bigint::Sign::NoSign {
                                let row = offsets[n - 1][i] + a * r2_low + b2;
                                if i % 2 == 0 {
                                    d[(row, col)] += coeff;
                                } else {
                                    d[(row, col)] -= coeff;
                                }
                            }
                        }
                    }
                }
            }
        }
        boundaries.push(d);
    }
    ChainComplex::new(bases, boundaries)
}

/// Homology of a realized complex in degrees `0..=max_degree` via SNF, with
/// torsion as invariant factors. Compare against closed forms with
/// [`GradedAbelianGroup::is_isomorphic`].
pub fn oracle_homology(c: &ChainComplex, max_degree: usize) -> Result<GradedAbelianGroup> {
    let mut g = GradedAbelianGroup::new(max_degree);
    for n in 0..=max_degree {
        let h = oracle::homology_of_complex(c, n)?;
        for _ in 0..h.free {
            g.add_order(n, 0u32)?;
        }
        for o in h.torsion {
            g.add_order(n, o)?;
        }
    }
    Ok(g)
}

/// The factor list of `X_p` truncated at a degree cap: first
/// `P(σ²u,2)⊗E(σψ_{p^r}u,3)` with `h = p^r`, then for `k = 0, 1, …`
/// `E(σγ_p^{k+1}φ_p v, 1+2p^{k+1})⊗P(φ_pγ_p^kφ_p v, 2+2p^{k+1})` with `h = p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XFactorization {
    pub prime: u64,
    pub exponent: u32,
    pub factors: Vec<ElementaryComplex>,
    pub max_degree: usize,
}

fn gamma_run(p: u64, k: usize) -> impl Iterator<Item = Symbol> {
    std::iter::repeat_n(Symbol::Gamma(p), k)
}

/// Builds `X_p` up to `max_degree`. An EP factor is kept iff its lowest
/// positive homology degree `1 + 2p^{k+1}` is within the cap; the omitted
/// ones are `Z` in degree 0 below it, so omission is exact.
pub fn build_xp(p: u64, r: u32, max_degree: usize) -> Result<XFactorization> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("the exponent r must be ≥ 1".into()));
    }
    let h = p
        .checked_pow(r)
        .ok_or_else(|| Error::InvalidArgument(format!("{p}^{r} overflows u64")))?;
    let sigma_sq = Word::new(vec![Symbol::Sigma, Symbol::Sigma])?;
    let sigma_psi = Word::auxiliary(p, r, 2)?;
    let mut first = ElementaryComplex::divided_power_exterior(1, h)?;
    first.label = format!("P({sigma_sq}u,{})⊗E({sigma_psi}u,{})", sigma_sq.degree(), sigma_psi.degree());
    let mut factors = vec![first];

    for k in 0usize.. {
        let odd: Vec<Symbol> = std::iter::once(Symbol::Sigma)
            .chain(gamma_run(p, k + 1))
            .chain([Symbol::Phi(p)])
            .collect();
        let even: Vec<Symbol> = std::iter::once(Symbol::Phi(p))
            .chain(gamma_run(p, k))
            .chain([Symbol::Phi(p)])
            .collect();
        let (odd, even) = (Word::new(odd)?, Word::new(even)?);
        let low = odd.degree();
        if low > max_degree as u64 {
            break;
        }
        debug_assert_eq!(even.degree(), low + 1);
        let q = (even.degree() / 2) as usize;
        let mut c = ElementaryComplex::exterior_divided_power(q, p)?;
        c.label = format!("E({odd}v,{low})⊗P({even}v,{})", even.degree());
        factors.push(c);
    }
    Ok(XFactorization { prime: p, exponent: r, factors, max_degree })
}

impl XFactorization {
    /// Künneth product of the closed forms.
    pub fn homology(&self) -> Result<GradedAbelianGroup> {
        let parts: Vec<GradedAbelianGroup> =
            self.factors.iter().map(|c| closed_form_homology(c, self.max_degree)).collect();
        GradedAbelianGroup::kunneth_all(&parts, self.max_degree)
    }

    /// The realized tensor complex over degrees `0..=max_degree + 1`.
    pub fn chain_complex(&self) -> Result<ChainComplex> {
        let d = self.max_degree;
        self.factors.iter().try_fold(ChainComplex::unit(d + 1), |acc, c| {
            tensor_chain_complex(&acc, &realize_chain_complex(c, d), d)
        })
    }
}

pub fn homology_xp(p: u64, r: u32, max_degree: usize) -> Result<GradedAbelianGroup> {
    build_xp(p, r, max_degree)?.homology()
}

/// `H_*(X)` for `X = X_{p_1} ⊗ … ⊗ X_{p_k}`, `n = ∏ p_i^{r_i}`.
pub fn homology_x(n: u64, max_degree: usize) -> Result<GradedAbelianGroup> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be ≥ 2, got {n}")));
    }
    let parts = factorize(n)
        .into_iter()
        .map(|(p, r)| homology_xp(p, r, max_degree))
        .collect::<Result<Vec<_>>>()?;
    GradedAbelianGroup::kunneth_all(&parts, max_degree)
}

/// The realized chain complex of `X`, for oracle comparisons.
pub fn x_chain_complex(n: u64, max_degree: usize) -> Result<ChainComplex> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("n must be ≥ 2, got {n}")));
    }
    factorize(n).into_iter().try_fold(ChainComplex::unit(max_degree + 1), |acc, (p, r)| {
        tensor_chain_complex(&acc, &build_xp(p, r, max_degree)?.chain_complex()?, max_degree)
    })
}

/// `p^{r + v_p(k)}`: bound on the order of a p-primary class in `H_{2k}`.
pub fn exponent_bound(p: u64, r: u32, k: u64) -> BigUint {
    assert!(k >= 1, "exponent_bound needs k ≥ 1");
    big_pow(p, r as u64 + padic_valuation(p, k) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn group(max_degree: usize, entries: &[(usize, u64)]) -> GradedAbelianGroup {
        let mut g = GradedAbelianGroup::new(max_degree);
        for &(d, o) in entries {
            g.add_order(d, o).unwrap();
        }
        g
    }

    fn ep(q: usize, h: u64) -> ElementaryComplex {
        ElementaryComplex::exterior_divided_power(q, h).unwrap()
    }

    fn pe(q: usize, h: u64) -> ElementaryComplex {
        ElementaryComplex::divided_power_exterior(q, h).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form_homology(&ep(2, 2), 12),
            group(12, &[(0, 0), (3, 2), (7, 2), (11, 2)])
        );
        assert_eq!(
            closed_form_homology(&pe(1, 2), 8),
            group(8, &[(0, 0), (2, 2), (4, 4), (6, 6), (8, 8)])
        );
        assert_eq!(
            closed_form_homology(&ElementaryComplex::exterior(1).unwrap(), 5),
            group(5, &[(0, 0), (1, 0)])
        );
        assert_eq!(
            closed_form_homology(&ElementaryComplex::divided_power(2).unwrap(), 9),
            group(9, &[(0, 0), (4, 0), (8, 0)])
        );
    }

    #[test]
    fn constructor_validation() {
        assert!(ElementaryComplex::exterior(0).is_err());
        assert!(ElementaryComplex::exterior_divided_power(1, 0).is_err());
        assert_eq!(pe(1, 5).generator_degrees(), (2, Some(3)));
        assert_eq!(ep(3, 5).generator_degrees(), (5, Some(6)));
        assert_eq!(pe(1, 5).twist(), Some(5));
    }

    #[test]
    fn realized_boundaries() {
        let c = realize_chain_complex(&pe(1, 2), 4);
        assert_eq!(c.max_degree(), 5);
        // d(y·γ_1(x)) = 4·γ_2(x)
        assert_eq!(c.basis(5), ["y·γ_1(x)"]);
        assert_eq!(c.boundary(5)[(0, 0)], BigInt::from(4));
        let h4 = oracle::homology_of_complex(&c, 4).unwrap();
        assert_eq!(h4.torsion, vec![BigUint::from(4u32)]);

        let c = realize_chain_complex(&ep(2, 3), 7);
        // d(γ_1(y)) = 3x
        assert_eq!(c.basis(4), ["γ_1(y)"]);
        assert_eq!(c.boundary(4)[(0, 0)], BigInt::from(3));
        let h3 = oracle::homology_of_complex(&c, 3).unwrap();
        assert_eq!(h3.torsion, vec![BigUint::from(3u32)]);

        for first in [ElementaryComplex::exterior(2).unwrap(), ElementaryComplex::divided_power(1).unwrap()] {
            let c = realize_chain_complex(&first, 9);
            assert!((0..=c.max_degree()).all(|n| c.boundary(n).is_zero()));
        }
    }

    #[test]
    fn oracle_homology_examples() {
        let c = realize_chain_complex(&ep(1, 4), 3);
        let h1 = oracle::homology_of_complex(&c, 1).unwrap();
        assert_eq!((h1.free, h1.torsion), (0, vec![BigUint::from(4u32)]));
        let c = realize_chain_complex(&pe(1, 3), 4);
        let h4 = oracle::homology_of_complex(&c, 4).unwrap();
        assert_eq!((h4.free, h4.torsion), (0, vec![BigUint::from(6u32)]));
    }

    #[test]
    fn closed_forms_match_the_oracle() {
        for q in 1..=3 {
            for h in [1, 2, 3, 4, 5, 8, 9] {
                for c in [ep(q, h), pe(q, h)] {
                    let realized = realize_chain_complex(&c, 30);
                    assert!(
                        oracle_homology(&realized, 30).unwrap().is_isomorphic(&closed_form_homology(&c, 30)),
                        "{c}"
                    );
                }
            }
            for c in [ElementaryComplex::exterior(q).unwrap(), ElementaryComplex::divided_power(q).unwrap()] {
                let realized = realize_chain_complex(&c, 20);
                assert!(oracle_homology(&realized, 20).unwrap().is_isomorphic(&closed_form_homology(&c, 20)));
            }
        }
    }

    #[test]
    fn divided_power_exterior_vanishes_in_odd_degrees() {
        for h in [2, 3, 7] {
            let g = closed_form_homology(&pe(1, h), 25);
            assert!(g.iter().all(|(d, _)| d % 2 == 0));
        }
    }

    #[test]
    fn tensor_with_unit_is_identity() {
        let c = realize_chain_complex(&pe(1, 3), 8);
        let t = tensor_chain_complex(&c, &ChainComplex::unit(9), 8).unwrap();
        let t2 = tensor_chain_complex(&ChainComplex::unit(9), &c, 8).unwrap();
        for n in 0..=9 {
            assert_eq!(t.boundary(n), c.boundary(n));
            assert_eq!(t2.boundary(n), c.boundary(n));
            assert_eq!(t.rank(n), c.rank(n));
        }
    }

    #[test]
    fn koszul_sign_on_odd_left_factor() {
        // a = x in degree 1 of E(x,1); b = γ_1(y) of EP(q=1, h=2) in degree 2.
        let left = realize_chain_complex(&ElementaryComplex::exterior(1).unwrap(), 3);
        let right = realize_chain_complex(&ep(1, 2), 3);
        let t = tensor_chain_complex(&left, &right, 3).unwrap();
        let col = t.basis(3).iter().position(|l| l == "x⊗γ_1(y)").unwrap();
        let row = t.basis(2).iter().position(|l| l == "x⊗x·γ_0(y)").unwrap();
        assert_eq!(t.boundary(3)[(row, col)], BigInt::from(-2));
        // Even left factor keeps the sign.
        let col = t.basis(2).iter().position(|l| l == "1⊗γ_1(y)").unwrap();
        let row = t.basis(1).iter().position(|l| l == "1⊗x·γ_0(y)").unwrap();
        assert_eq!(t.boundary(2)[(row, col)], BigInt::from(2));
    }

    #[test]
    fn tensor_requires_enough_degrees() {
        let c = realize_chain_complex(&pe(1, 3), 4);
        assert!(tensor_chain_complex(&c, &c, 5).is_err());
    }

    #[test]
    fn build_xp_examples() {
        let x = build_xp(2, 1, 12).unwrap();
        assert_eq!(x.factors.len(), 3);
        assert_eq!(x.factors[0].kind(), ComplexKind::DividedPowerExterior { h: 2 });
        assert_eq!(x.factors[0].q(), 1);
        assert_eq!(x.factors[1].generator_degrees(), (5, Some(6)));
        assert_eq!(x.factors[1].twist(), Some(2));
        assert_eq!(x.factors[2].generator_degrees(), (9, Some(10)));
        assert_eq!(x.factors[0].label(), "P(σσu,2)⊗E(σψ_2u,3)");
        assert_eq!(x.factors[2].label(), "E(σγ_2γ_2φ_2v,9)⊗P(φ_2γ_2φ_2v,10)");

        let x = build_xp(5, 2, 10).unwrap();
        assert_eq!(x.factors.len(), 1);
        assert_eq!(x.factors[0].twist(), Some(25));
        assert_eq!(build_xp(3, 1, 6).unwrap().factors.len(), 1);
        assert_eq!(build_xp(3, 1, 7).unwrap().factors.len(), 2);
        assert!(build_xp(4, 1, 6).is_err());
        assert!(build_xp(2, 0, 6).is_err());
    }

    #[test]
    fn homology_xp_examples() {
        assert_eq!(
            homology_xp(2, 1, 6).unwrap(),
            group(6, &[(0, 0), (2, 2), (4, 4), (5, 2), (6, 6)])
        );
        assert_eq!(homology_xp(2, 1, 4).unwrap().exponent(4).unwrap(), (BigUint::from(4u32), 0));
        assert_eq!(homology_xp(3, 2, 2).unwrap(), group(2, &[(0, 0), (2, 9)]));
    }

    #[test]
    fn homology_x_examples() {
        assert_eq!(homology_x(6, 2).unwrap(), group(2, &[(0, 0), (2, 2), (2, 3)]));
        assert_eq!(homology_x(4, 4).unwrap().exponent(4).unwrap().0, BigUint::from(8u32));
        for p in [2, 3, 5, 7] {
            assert_eq!(homology_x(p, 15).unwrap(), homology_xp(p, 1, 15).unwrap());
        }
        assert!(homology_x(1, 3).is_err());
    }

    #[test]
    fn xp_matches_oracle_on_tensored_complex() {
        let x = build_xp(2, 1, 6).unwrap();
        let c = x.chain_complex().unwrap();
        assert!(oracle_homology(&c, 6).unwrap().is_isomorphic(&homology_xp(2, 1, 6).unwrap()));
        let x = build_xp(3, 1, 16).unwrap();
        let c = x.chain_complex().unwrap();
        assert!(oracle_homology(&c, 16).unwrap().is_isomorphic(&x.homology().unwrap()));
    }

    #[test]
    fn x_matches_oracle_for_composite_n() {
        for n in [6u64, 10, 12] {
            let c = x_chain_complex(n, 8).unwrap();
            assert!(oracle_homology(&c, 8).unwrap().is_isomorphic(&homology_x(n, 8).unwrap()), "n={n}");
        }
    }

    #[test]
    fn exponent_bound_examples() {
        assert_eq!(exponent_bound(2, 1, 3), BigUint::from(2u32));
        assert_eq!(exponent_bound(2, 1, 4), BigUint::from(8u32));
        assert_eq!(exponent_bound(3, 2, 9), BigUint::from(81u32));
    }

    #[test]
    fn truncation_is_sound() {
        for (p, r) in [(2, 1), (2, 2), (3, 1), (5, 1)] {
            let full = homology_xp(p, r, 40).unwrap();
            for d in [0, 1, 5, 11, 17, 39] {
                assert_eq!(full.truncate(d).unwrap(), homology_xp(p, r, d).unwrap());
            }
        }
    }

    #[test]
    fn first_factor_dominates_the_p_part() {
        for (p, r) in [(2u64, 1u32), (2, 2), (3, 1), (3, 2), (5, 1), (5, 2)] {
            let d = 24;
            let x = build_xp(p, r, d).unwrap();
            let first = closed_form_homology(&x.factors[0], d).primary_part(p);
            let all = x.homology().unwrap().primary_part(p);
            for k in 1..=12 {
                assert_eq!(all.exponent(2 * k).unwrap(), first.exponent(2 * k).unwrap());
            }
        }
    }

    #[test]
    fn exponent_of_x_divides_n_times_k() {
        for n in [4u64, 6, 12, 18] {
            let g = homology_x(n, 16).unwrap();
            for k in 1..=8u64 {
                let (e, _) = g.exponent(2 * k as usize).unwrap();
                assert!((BigUint::from(n * k) % &e) == BigUint::ZERO, "n={n} k={k} e={e}");
                assert!(!e.is_one());
            }
        }
    }
}
