//! Oracle cross-check suites.
//!
//! * `elementary`: closed-form homology of both second-type complexes
//!   against SNF homology of their realizations, `q ≤ 3`,
//!   `h ∈ {2,3,4,5,8,9}`, degrees `≤ 30`.
//! * `xp-exponent`: for `p ∈ {2,3,5}`, `r ∈ {1,2}`, `k ≤ 12`, the torsion
//!   exponent of `H_{2k}(X_p)` is `p^r·k` with p-part `p^{r+v_p(k)}`, through
//!   both the Künneth pipeline and SNF of the tensored complex.
//! * `snf`: seeded random matrices: divisibility chains, invariance under
//!   unimodular changes of basis, `∏ d_i = |det|`, and `U·M·V = S`.
//!
//! Cases are independent and run under a [`Strategy`]; results come back in
//! case order regardless of strategy.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complexes::{
    build_xp, closed_form_homology, exponent_bound, oracle_homology, realize_chain_complex, ElementaryComplex,
};
use crate::oracle::{smith_normal_form, smith_normal_form_with_transforms, IntegerMatrix};
use crate::par::Strategy;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Elementary,
    XpExponent,
    Snf,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Elementary => "elementary",
            Suite::XpExponent => "xp-exponent",
            Suite::Snf => "snf",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::Elementary, Suite::XpExponent, Suite::Snf, Suite::All]
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub suite: &'static str,
    pub case: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {}", self.suite, self.case)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

pub const ELEMENTARY_TWISTS: [u64; 6] = [2, 3, 4, 5, 8, 9];
pub const ELEMENTARY_MAX_DEGREE: usize = 30;
pub const SNF_CASES: usize = 100;

pub fn run_suite(suite: Suite, seed: u64, strategy: Strategy) -> Vec<CheckResult> {
    match suite {
        Suite::Elementary => elementary(strategy),
        Suite::XpExponent => xp_exponent(strategy),
        Suite::Snf => snf(seed, strategy),
        Suite::All => {
            let mut out = elementary(strategy);
            out.extend(xp_exponent(strategy));
            out.extend(snf(seed, strategy));
            out
        }
    }
}

fn check(suite: &'static str, case: String, outcome: std::result::Result<(), String>) -> CheckResult {
    match outcome {
        Ok(()) => CheckResult { suite, case, passed: true, detail: String::new() },
        Err(detail) => CheckResult { suite, case, passed: false, detail },
    }
}

pub fn elementary_cases() -> Vec<ElementaryComplex> {
    let mut cases = Vec::new();
    for q in 1..=3 {
        for h in ELEMENTARY_TWISTS {
            cases.push(ElementaryComplex::exterior_divided_power(q, h).expect("valid"));
            cases.push(ElementaryComplex::divided_power_exterior(q, h).expect("valid"));
        }
    }
    cases
}

fn elementary(strategy: Strategy) -> Vec<CheckResult> {
    strategy.map(&elementary_cases(), |c| {
        let d = ELEMENTARY_MAX_DEGREE;
        let outcome = oracle_homology(&realize_chain_complex(c, d), d)
            .map_err(|e| e.to_string())
            .and_then(|oracle| {
                let closed = closed_form_homology(c, d);
                if oracle.is_isomorphic(&closed) {
                    Ok(())
                } else {
                    Err(format!("closed form\n{closed}differs from oracle\n{oracle}"))
                }
            });
        check("elementary", format!("{c} up to degree {d}"), outcome)
    })
}

pub fn xp_exponent_cases() -> Vec<(u64, u32, u64)> {
    let mut cases = Vec::new();
    for p in [2u64, 3, 5] {
        for r in 1..=2u32 {
            for k in 1..=12u64 {
                cases.push((p, r, k));
            }
        }
    }
    cases
}

/// Checks the exponent law at degree `2k` for `X_p`, through both the
/// Künneth closed form and SNF of the realized complex.
pub fn check_xp_exponent(p: u64, r: u32, k: u64) -> std::result::Result<(), String> {
    let degree = 2 * k as usize;
    let x = build_xp(p, r, degree).map_err(|e| e.to_string())?;
    let full = BigUint::from(p.pow(r) * k);
    let p_part = exponent_bound(p, r, k);
    let kunneth = x.homology().map_err(|e| e.to_string())?;
    let oracle = x
        .chain_complex()
        .and_then(|c| oracle_homology(&c, degree))
        .map_err(|e| e.to_string())?;
    for (route, g) in [("künneth", &kunneth), ("snf", &oracle)] {
        let (e, free) = g.exponent(degree).map_err(|e| e.to_string())?;
        let (pe, _) = g.primary_part(p).exponent(degree).map_err(|e| e.to_string())?;
        if free != 0 || e != full || pe != p_part {
            return Err(format!(
                "{route}: exponent {e} (free {free}), p-part {pe}; expected {full}, p-part {p_part}"
            ));
        }
    }
    if !kunneth.is_isomorphic(&oracle) {
        return Err("Künneth and SNF homology differ".into());
    }
    Ok(())
}

fn xp_exponent(strategy: Strategy) -> Vec<CheckResult> {
    strategy.map(&xp_exponent_cases(), |&(p, r, k)| {
        check("xp-exponent", format!("p={p} r={r} k={k}"), check_xp_exponent(p, r, k))
    })
}

/// A product of at most ten elementary matrices (transvections with
/// multiplier in `[−3, 3]`, swaps, sign flips).
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> IntegerMatrix {
    let mut m = IntegerMatrix::identity(n);
    if n == 0 {
        return m;
    }
    for _ in 0..rng.random_range(0..=10) {
        let i = rng.random_range(0..n);
        let j = rng.random_range(0..n);
        match rng.random_range(0..3) {
            0 if i != j => m.add_row_multiple(i, j, &BigInt::from(rng.random_range(-3i64..=3))),
            1 => m.swap_rows(i, j),
            _ => m.negate_row(i),
        }
    }
    m
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> IntegerMatrix {
    let entries = (0..rows * cols).map(|_| BigInt::from(rng.random_range(-9i64..=9))).collect();
    IntegerMatrix::from_entries(rows, cols, entries).expect("sized")
}

/// One randomized SNF property case, fully determined by `case_seed`.
pub fn check_snf_case(case_seed: u64) -> std::result::Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(case_seed);
    let (rows, cols) = (rng.random_range(1..=8), rng.random_range(1..=8));
    let m = random_matrix(&mut rng, rows, cols);
    let form = smith_normal_form(&m);

    let factors = form.invariant_factors();
    if factors.windows(2).any(|w| !(&w[1] % &w[0]).is_zero()) {
        return Err(format!("not a divisibility chain: {:?}", form.diagonal));
    }
    if factors.iter().any(Zero::is_zero) || form.diagonal[form.rank..].iter().any(|d| !d.is_zero()) {
        return Err(format!("zeros out of place: {:?}", form.diagonal));
    }

    let p = random_unimodular(&mut rng, rows);
    let q = random_unimodular(&mut rng, cols);
    let moved = p.mul(&m).and_then(|pm| pm.mul(&q)).map_err(|e| e.to_string())?;
    let moved_form = smith_normal_form(&moved);
    if moved_form != form {
        return Err(format!("SNF changed under P·M·Q: {:?} vs {:?}", form.diagonal, moved_form.diagonal));
    }

    let dec = smith_normal_form_with_transforms(&m);
    let ums = dec.u.mul(&m).and_then(|um| um.mul(&dec.v)).map_err(|e| e.to_string())?;
    if ums != dec.s {
        return Err("U·M·V ≠ S".into());
    }
    for t in [&dec.u, &dec.v] {
        if t.determinant().map(|d| d.abs()) != Some(BigInt::one()) {
            return Err("transform is not unimodular".into());
        }
    }

    if rows == cols {
        let det = m.determinant().expect("square");
        if !det.is_zero() {
            let product: BigUint = factors.iter().product();
            if product != *det.magnitude() {
                return Err(format!("∏ d_i = {product} but |det| = {}", det.magnitude()));
            }
        }
    }
    Ok(())
}

pub fn snf_case_seeds(seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..SNF_CASES).map(|_| rng.random()).collect()
}

fn snf(seed: u64, strategy: Strategy) -> Vec<CheckResult> {
    let seeds: Vec<(usize, u64)> = snf_case_seeds(seed).into_iter().enumerate().collect();
    strategy.map(&seeds, |&(i, s)| check("snf", format!("case {i} (seed {seed})"), check_snf_case(s)))
}
