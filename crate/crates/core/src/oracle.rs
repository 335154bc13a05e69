//! Exact integer linear algebra and homology of based free chain complexes.
//!
//! This is the brute-force side of every homology comparison in the crate:
//! it knows nothing about divided powers or Künneth, only matrices.
//!
//! The Smith normal form uses a minimal-absolute-value pivot with Euclidean
//! row/column reduction over `BigInt`. Coefficient growth is not controlled;
//! the complexes here stay well under a few hundred columns. A modular
//! determinant-based SNF would slot in behind [`smith_normal_form`] if that
//! ever changes.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, entries: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {rows}×{cols} matrix",
                entries.len()
            )));
        }
        Ok(IntegerMatrix { rows, cols, entries })
    }

    /// Builds from nested rows; all rows must have equal length. An empty
    /// slice gives the `0×0` matrix.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let entries = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Self::from_entries(rows.len(), cols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, rhs: &IntegerMatrix) -> Result<IntegerMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = IntegerMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Rows `start..` as a new matrix.
    pub fn row_slice(&self, start: usize) -> IntegerMatrix {
        let start = start.min(self.rows);
        IntegerMatrix {
            rows: self.rows - start,
            cols: self.cols,
            entries: self.entries[start * self.cols..].to_vec(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.entries.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += factor · row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self.entries[source * self.cols + j] * factor;
            self.entries[target * self.cols + j] += v;
        }
    }

    /// `col[target] += factor · col[source]`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self.entries[i * self.cols + source] * factor;
            self.entries[i * self.cols + target] += v;
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let e = &mut self.entries[r * self.cols + j];
            *e = -std::mem::take(e);
        }
    }

    pub fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let e = &mut self.entries[i * self.cols + c];
            *e = -std::mem::take(e);
        }
    }

    /// Determinant by fraction-free Bareiss elimination. `None` unless square.
    pub fn determinant(&self) -> Option<BigInt> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Some(BigInt::zero());
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        Some(sign * &a[(n - 1, n - 1)])
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}×{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self[(i, j)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Diagonal of the Smith normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// `min(rows, cols)` non-negative entries, nonzero ones first, each
    /// dividing the next.
    pub diagonal: Vec<BigUint>,
    pub rank: usize,
}

impl SmithForm {
    /// The nonzero diagonal entries (including units).
    pub fn invariant_factors(&self) -> &[BigUint] {
        &self.diagonal[..self.rank]
    }

    /// Number of zero diagonal entries.
    pub fn zero_count(&self) -> usize {
        self.diagonal.len() - self.rank
    }

    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.invariant_factors().iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// `U·M·V = S` with `U`, `V` unimodular.
#[derive(Debug, Clone)]
pub struct SmithDecomposition {
    pub form: SmithForm,
    pub u: IntegerMatrix,
    pub s: IntegerMatrix,
    pub v: IntegerMatrix,
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    SmithCalc::new(m.clone(), false).run().form
}

pub fn smith_normal_form_with_transforms(m: &IntegerMatrix) -> SmithDecomposition {
    SmithCalc::new(m.clone(), true).run()
}

struct SmithCalc {
    a: IntegerMatrix,
    u: Option<IntegerMatrix>,
    v: Option<IntegerMatrix>,
}

impl SmithCalc {
    fn new(a: IntegerMatrix, track: bool) -> Self {
        let (u, v) = if track {
            (Some(IntegerMatrix::identity(a.rows)), Some(IntegerMatrix::identity(a.cols)))
        } else {
            (None, None)
        };
        SmithCalc { a, u, v }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_row_multiple(target, source, f);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(target, source, f);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, f: &BigInt) {
        self.a.add_col_multiple(target, source, f);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(target, source, f);
        }
    }

    fn negate_row(&mut self, r: usize) {
        self.a.negate_row(r);
        if let Some(u) = &mut self.u {
            u.negate_row(r);
        }
    }

    /// Position of a nonzero entry of least absolute value in the lower-right
    /// block starting at `(t, t)`.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<((usize, usize), BigInt)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let e = &self.a[(i, j)];
                if e.is_zero() {
                    continue;
                }
                let abs = e.abs();
                if best.as_ref().is_none_or(|(_, b)| abs < *b) {
                    let unit = abs.is_one();
                    best = Some(((i, j), abs));
                    if unit {
                        return best.map(|(p, _)| p);
                    }
                }
            }
        }
        best.map(|(p, _)| p)
    }

    fn run(mut self) -> SmithDecomposition {
        let (rows, cols) = (self.a.rows, self.a.cols);
        let mut rank = 0;
        for t in 0..rows.min(cols) {
            let Some((pi, pj)) = self.min_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                let pivot = self.a[(t, t)].clone();
                for i in t + 1..rows {
                    if !self.a[(i, t)].is_zero() {
                        let q = self.a[(i, t)].div_floor(&pivot);
                        self.add_row(i, t, &-q);
                        clean &= self.a[(i, t)].is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !self.a[(t, j)].is_zero() {
                        let q = self.a[(t, j)].div_floor(&pivot);
                        self.add_col(j, t, &-q);
                        clean &= self.a[(t, j)].is_zero();
                    }
                }
                if !clean {
                    let (pi, pj) = self.min_pivot(t).expect("block is nonzero");
                    self.swap_rows(t, pi);
                    self.swap_cols(t, pj);
                    continue;
                }
                // Row t and column t are clear; enforce divisibility of the
                // remaining block by the pivot.
                let offender = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| !self.a[(i, j)].is_multiple_of(&pivot));
                match offender {
                    Some((i, _)) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[(t, t)].is_negative() {
                self.negate_row(t);
            }
            rank += 1;
        }
        let diagonal = (0..rows.min(cols))
            .map(|t| self.a[(t, t)].magnitude().clone())
            .collect();
        let form = SmithForm { diagonal, rank };
        SmithDecomposition {
            form,
            u: self.u.unwrap_or_else(|| IntegerMatrix::zeros(0, 0)),
            v: self.v.unwrap_or_else(|| IntegerMatrix::zeros(0, 0)),
            s: self.a,
        }
    }
}

/// Column-style echelon reduction `M·V = [H | 0]` with `V` unimodular.
/// Returns the rank of `M` and `V⁻¹`; the last `cols − rank` columns of `V`
/// span `ker M` and rows `rank..` of `V⁻¹` give coordinates in that basis.
fn column_echelon(m: &IntegerMatrix) -> (usize, IntegerMatrix, IntegerMatrix) {
    let mut a = m.clone();
    let mut v = IntegerMatrix::identity(m.cols);
    let mut vinv = IntegerMatrix::identity(m.cols);
    let mut pivot_col = 0;
    for row in 0..m.rows {
        if pivot_col == m.cols {
            break;
        }
        // Euclid across columns pivot_col.. until one nonzero entry remains.
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..m.cols {
                if !a[(row, j)].is_zero()
                    && best.is_none_or(|b| a[(row, j)].abs() < a[(row, b)].abs())
                {
                    best = Some(j);
                }
            }
            let Some(b) = best else { break };
            if b != pivot_col {
                a.swap_cols(pivot_col, b);
                v.swap_cols(pivot_col, b);
                vinv.swap_rows(pivot_col, b);
            }
            let pivot = a[(row, pivot_col)].clone();
            let mut done = true;
            for j in pivot_col + 1..m.cols {
                if a[(row, j)].is_zero() {
                    continue;
                }
                let q = a[(row, j)].div_floor(&pivot);
                // col_j -= q·col_p on A and V; row_p += q·row_j on V⁻¹.
                a.add_col_multiple(j, pivot_col, &-&q);
                v.add_col_multiple(j, pivot_col, &-&q);
                vinv.add_row_multiple(pivot_col, j, &q);
                done &= a[(row, j)].is_zero();
            }
            if done {
                pivot_col += 1;
                break;
            }
        }
    }
    (pivot_col, v, vinv)
}

/// Based free chain complex `C_0 ← C_1 ← … ← C_max`, with
/// `boundary(n): C_n → C_{n−1}` stored as a `dim C_{n−1} × dim C_n` matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplex {
    basis_labels: Vec<Vec<String>>,
    boundaries: Vec<IntegerMatrix>,
}

impl ChainComplex {
    /// `boundaries[n]` maps degree `n` to degree `n − 1`; `boundaries[0]`
    /// must have zero rows. Shapes and `d∘d = 0` are checked.
    pub fn new(basis_labels: Vec<Vec<String>>, boundaries: Vec<IntegerMatrix>) -> Result<Self> {
        if basis_labels.is_empty() || basis_labels.len() != boundaries.len() {
            return Err(Error::Shape(format!(
                "{} bases but {} boundary maps",
                basis_labels.len(),
                boundaries.len()
            )));
        }
        for (n, d) in boundaries.iter().enumerate() {
            let expected_rows = if n == 0 { 0 } else { basis_labels[n - 1].len() };
            if d.rows() != expected_rows || d.cols() != basis_labels[n].len() {
                return Err(Error::Shape(format!(
                    "boundary {n} is {}×{}, expected {expected_rows}×{}",
                    d.rows(),
                    d.cols(),
                    basis_labels[n].len()
                )));
            }
        }
        let c = ChainComplex { basis_labels, boundaries };
        c.check_square_zero()?;
        Ok(c)
    }

    /// The complex `Z` concentrated in degree 0, truncated at `max_degree`.
    pub fn unit(max_degree: usize) -> Self {
        let mut bases = vec![vec!["1".to_string()]];
        bases.extend((1..=max_degree).map(|_| Vec::new()));
        let boundaries = (0..=max_degree)
            .map(|n| {
                let rows = if n == 1 { 1 } else { 0 };
                let cols = if n == 0 { 1 } else { 0 };
                IntegerMatrix::zeros(rows, cols)
            })
            .collect();
        ChainComplex { basis_labels: bases, boundaries }
    }

    pub fn max_degree(&self) -> usize {
        self.basis_labels.len() - 1
    }

    pub fn rank(&self, degree: usize) -> usize {
        self.basis_labels.get(degree).map_or(0, Vec::len)
    }

    pub fn basis(&self, degree: usize) -> &[String] {
        self.basis_labels.get(degree).map_or(&[], Vec::as_slice)
    }

    pub fn boundary(&self, degree: usize) -> &IntegerMatrix {
        &self.boundaries[degree]
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for n in 2..self.boundaries.len() {
            let dd = self.boundaries[n - 1].mul(&self.boundaries[n])?;
            if !dd.is_zero() {
                return Err(Error::NotAComplex { degree: n - 1 });
            }
        }
        Ok(())
    }
}

/// Homology of one degree: free rank and invariant factors `≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HomologyGroup {
    pub free: usize,
    pub torsion: Vec<BigUint>,
}

/// `H_n = ker ∂_n / im ∂_{n+1}`, computed by expressing `∂_{n+1}` in a
/// kernel basis of `∂_n` and taking its Smith normal form.
///
/// Fails for `n ≥ max_degree`: under truncation the incoming boundary is
/// unknown there.
pub fn homology_of_complex(c: &ChainComplex, n: usize) -> Result<HomologyGroup> {
    if n >= c.max_degree() {
        return Err(Error::BeyondTruncation { requested: n, cap: c.max_degree().saturating_sub(1) });
    }
    let (rank_out, _, vinv) = column_echelon(c.boundary(n));
    let kernel_dim = c.rank(n) - rank_out;
    let coords = vinv.row_slice(rank_out).mul(c.boundary(n + 1))?;
    let snf = smith_normal_form(&coords);
    Ok(HomologyGroup { free: kernel_dim - snf.rank, torsion: snf.torsion() })
}

/// Kernel basis of `m` as the columns of the returned matrix.
pub fn kernel_basis(m: &IntegerMatrix) -> IntegerMatrix {
    let (rank, v, _) = column_echelon(m);
    let mut out = IntegerMatrix::zeros(m.cols(), m.cols() - rank);
    for i in 0..m.cols() {
        for j in rank..m.cols() {
            out[(i, j - rank)] = v[(i, j)].clone();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    fn nat(xs: &[u64]) -> Vec<BigUint> {
        xs.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(smith_normal_form(&m(&[vec![2, 0], vec![0, 3]])).diagonal, nat(&[1, 6]));
        let z = smith_normal_form(&IntegerMatrix::zeros(2, 3));
        assert_eq!(z.diagonal, nat(&[0, 0]));
        assert_eq!(z.rank, 0);
        assert_eq!(z.zero_count(), 2);
        assert_eq!(smith_normal_form(&m(&[vec![2, 4], vec![6, 8]])).diagonal, nat(&[2, 4]));
    }

    #[test]
    fn snf_of_empty_matrices() {
        for (r, c) in [(0, 0), (0, 4), (3, 0)] {
            let f = smith_normal_form(&IntegerMatrix::zeros(r, c));
            assert!(f.diagonal.is_empty());
            assert_eq!(f.rank, 0);
        }
    }

    #[test]
    fn invariant_factors_of_2_4_6_8_match_gcd_and_determinant() {
        // d1 = gcd of entries, d1·d2 = |det|.
        let a = m(&[vec![2, 4], vec![6, 8]]);
        assert_eq!(a.determinant(), Some(BigInt::from(-8)));
        let f = smith_normal_form(&a);
        assert_eq!(f.diagonal[0], BigUint::from(2u32));
        assert_eq!(&f.diagonal[0] * &f.diagonal[1], BigUint::from(8u32));
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(IntegerMatrix::zeros(0, 0).determinant(), Some(BigInt::one()));
        assert_eq!(m(&[vec![0, 1], vec![1, 0]]).determinant(), Some(BigInt::from(-1)));
        assert_eq!(
            m(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]).determinant(),
            Some(BigInt::from(4))
        );
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).determinant(), Some(BigInt::zero()));
        assert_eq!(m(&[vec![1, 2, 3]]).determinant(), None);
    }

    /// Cofactor expansion, independent of Bareiss.
    fn cofactor_det(a: &IntegerMatrix) -> BigInt {
        let n = a.rows();
        if n == 0 {
            return BigInt::one();
        }
        (0..n)
            .map(|j| {
                let minor_rows: Vec<Vec<BigInt>> = (1..n)
                    .map(|i| (0..n).filter(|&c| c != j).map(|c| a[(i, c)].clone()).collect())
                    .collect();
                let minor = IntegerMatrix::from_entries(
                    n - 1,
                    n - 1,
                    minor_rows.into_iter().flatten().collect(),
                )
                .unwrap();
                let sign = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                sign * &a[(0, j)] * cofactor_det(&minor)
            })
            .sum()
    }

    fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> IntegerMatrix {
        let entries = (0..rows * cols).map(|_| BigInt::from(rng.random_range(-9i64..=9))).collect();
        IntegerMatrix::from_entries(rows, cols, entries).unwrap()
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..60 {
            let n = rng.random_range(0..=5);
            let a = random_matrix(&mut rng, n, n);
            assert_eq!(a.determinant().unwrap(), cofactor_det(&a));
        }
    }

    #[test]
    fn transforms_reproduce_the_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (r, c) = (rng.random_range(0..=7), rng.random_range(0..=7));
            let a = random_matrix(&mut rng, r, c);
            let dec = smith_normal_form_with_transforms(&a);
            assert_eq!(dec.u.mul(&a).unwrap().mul(&dec.v).unwrap(), dec.s);
            assert_eq!(dec.u.determinant().unwrap().abs(), BigInt::one());
            assert_eq!(dec.v.determinant().unwrap().abs(), BigInt::one());
            for i in 0..r {
                for j in 0..c {
                    if i != j {
                        assert!(dec.s[(i, j)].is_zero());
                    }
                }
            }
            assert_eq!(dec.form, smith_normal_form(&a));
        }
    }

    #[test]
    fn column_echelon_kernel_is_a_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let (r, c) = (rng.random_range(0..=5), rng.random_range(0..=7));
            let mut a = random_matrix(&mut rng, r, c);
            // Force some rank deficiency.
            if r > 1 && c > 0 {
                for j in 0..c {
                    let v = &a[(0, j)] * 2;
                    a[(r - 1, j)] = v;
                }
            }
            let (rank, v, vinv) = column_echelon(&a);
            assert_eq!(v.mul(&vinv).unwrap(), IntegerMatrix::identity(c));
            assert_eq!(rank, smith_normal_form(&a).rank);
            let k = kernel_basis(&a);
            assert_eq!(k.cols(), c - rank);
            assert!(a.mul(&k).unwrap().is_zero());
        }
    }

    fn zero_complex(ranks: &[usize]) -> ChainComplex {
        let bases = ranks
            .iter()
            .enumerate()
            .map(|(d, &r)| (0..r).map(|i| format!("e{d}_{i}")).collect())
            .collect();
        let boundaries = ranks
            .iter()
            .enumerate()
            .map(|(d, &r)| IntegerMatrix::zeros(if d == 0 { 0 } else { ranks[d - 1] }, r))
            .collect();
        ChainComplex::new(bases, boundaries).unwrap()
    }

    #[test]
    fn zero_boundaries_give_basis_ranks() {
        let c = zero_complex(&[1, 0, 2, 3, 1]);
        for n in 0..4 {
            let h = homology_of_complex(&c, n).unwrap();
            assert_eq!(h, HomologyGroup { free: c.rank(n), torsion: vec![] });
        }
        assert!(homology_of_complex(&c, 4).is_err());
    }

    #[test]
    fn rejects_non_complexes() {
        // C_2 → C_1 → C_0 with both maps the identity.
        let bases = vec![vec!["a".into()], vec!["b".into()], vec!["c".into()]];
        let boundaries =
            vec![IntegerMatrix::zeros(0, 1), m(&[vec![1]]), m(&[vec![1]])];
        assert_eq!(
            ChainComplex::new(bases, boundaries),
            Err(Error::NotAComplex { degree: 1 })
        );
    }

    #[test]
    fn rejects_bad_shapes() {
        let bases = vec![vec!["a".into()], vec!["b".into()]];
        let boundaries = vec![IntegerMatrix::zeros(0, 1), m(&[vec![1, 2]])];
        assert!(matches!(ChainComplex::new(bases, boundaries), Err(Error::Shape(_))));
    }

    #[test]
    fn homology_of_a_small_torsion_complex() {
        // C_1 = Z², C_2 = Z², ∂_2 = diag(2, 6).
        let bases = vec![
            vec!["p".into()],
            vec!["a".into(), "b".into()],
            vec!["s".into(), "t".into()],
            vec![],
        ];
        let boundaries = vec![
            IntegerMatrix::zeros(0, 1),
            IntegerMatrix::zeros(1, 2),
            m(&[vec![2, 0], vec![0, 6]]),
            IntegerMatrix::zeros(2, 0),
        ];
        let c = ChainComplex::new(bases, boundaries).unwrap();
        assert_eq!(homology_of_complex(&c, 0).unwrap(), HomologyGroup { free: 1, torsion: vec![] });
        assert_eq!(
            homology_of_complex(&c, 1).unwrap(),
            HomologyGroup { free: 0, torsion: nat(&[2, 6]) }
        );
        assert_eq!(homology_of_complex(&c, 2).unwrap(), HomologyGroup::default());
    }

    /// Torsion of `C_n / im ∂_{n+1}` equals the torsion of `H_n`, since
    /// `ker ∂_n` is saturated in `C_n`.
    fn homology_via_cokernel(c: &ChainComplex, n: usize) -> HomologyGroup {
        let out = smith_normal_form(c.boundary(n)).rank;
        let inc = smith_normal_form(c.boundary(n + 1));
        HomologyGroup { free: c.rank(n) - out - inc.rank, torsion: inc.torsion() }
    }

    proptest! {
        #[test]
        fn snf_diagonal_is_a_divisibility_chain(
            rows in 0usize..=8, cols in 0usize..=8, seed in any::<u64>()
        ) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_matrix(&mut rng, rows, cols);
            let f = smith_normal_form(&a);
            prop_assert_eq!(f.diagonal.len(), rows.min(cols));
            for w in f.invariant_factors().windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero());
            }
            prop_assert!(f.diagonal[f.rank..].iter().all(Zero::is_zero));
            prop_assert!(f.invariant_factors().iter().all(|d| !d.is_zero()));
        }

        #[test]
        fn homology_routes_agree(seed in any::<u64>()) {
            // d∘d = 0 by construction: ∂_2 = K·R with K a kernel basis of ∂_1.
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (c0, c1, c2) = (rng.random_range(0..=3), rng.random_range(1..=5), rng.random_range(0..=5));
            let d1 = random_matrix(&mut rng, c0, c1);
            let k = kernel_basis(&d1);
            let r = random_matrix(&mut rng, k.cols(), c2);
            let d2 = k.mul(&r).unwrap();
            let labels = |n: usize, pre: &str| (0..n).map(|i| format!("{pre}{i}")).collect::<Vec<_>>();
            let c = ChainComplex::new(
                vec![labels(c0, "a"), labels(c1, "b"), labels(c2, "c"), vec![]],
                vec![IntegerMatrix::zeros(0, c0), d1, d2, IntegerMatrix::zeros(c2, 0)],
            ).unwrap();
            for n in 0..3 {
                prop_assert_eq!(homology_of_complex(&c, n).unwrap(), homology_via_cokernel(&c, n));
            }
        }
    }
}
