//! Exact dense linear algebra over the rationals and over prime fields.
//!
//! Rational rank and determinant use Bareiss fraction-free elimination on an
//! integer matrix obtained by clearing denominators row by row. The prime
//! field backend is plain Gaussian elimination and gives a lower bound for
//! the rational rank of any integer lift.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{random_prime_61, PrimeField, MERSENNE_61};

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RationalMatrix = Matrix<BigRational>;

impl<T: Clone> Matrix<T> {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), rows * cols, "entries must be rows * cols");
        Matrix { rows, cols, data }
    }

    pub fn filled(rows: usize, cols: usize, value: T) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![value; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row);
        }
        Matrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn map<U: Clone>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// The submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix {
            rows: rows.len(),
            cols: cols.len(),
            data,
        }
    }
}

impl RationalMatrix {
    pub fn from_i64(rows: usize, cols: usize, data: &[i64]) -> Self {
        Matrix::from_vec(
            rows,
            cols,
            data.iter().map(|&x| BigRational::from_integer(x.into())).collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::filled(n, n, BigRational::zero());
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Clears denominators row by row. Returns the integer rows and the
    /// product of the row multipliers.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale = BigInt::one();
        let mut out = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let row = self.row(i);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            out.push(
                row.iter()
                    .map(|q| q.numer() * (&lcm / q.denom()))
                    .collect::<Vec<_>>(),
            );
            scale *= lcm;
        }
        (out, scale)
    }

    /// Exact rank by fraction-free elimination.
    pub fn rank(&self) -> usize {
        let (mut a, _) = self.integer_rows();
        bareiss(&mut a, self.cols).rank
    }

    /// Exact determinant by the Bareiss algorithm.
    pub fn determinant(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(BigRational::one());
        }
        let (mut a, scale) = self.integer_rows();
        let out = bareiss(&mut a, self.cols);
        if out.rank < self.rows {
            return Ok(BigRational::zero());
        }
        let mut det = a[self.rows - 1][self.cols - 1].clone();
        if out.swaps % 2 == 1 {
            det = -det;
        }
        Ok(BigRational::new(det, scale))
    }

    /// A basis of the right kernel, read off the reduced row echelon form.
    pub fn nullspace(&self) -> Vec<Vec<BigRational>> {
        let mut a: Vec<Vec<BigRational>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let inv = a[r][c].recip();
            for x in a[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..self.rows {
                if i != r && !a[i][c].is_zero() {
                    let f = a[i][c].clone();
                    for j in c..self.cols {
                        let delta = &f * &a[r][j];
                        a[i][j] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        let mut basis = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Rank modulo the default prime and two random 61-bit primes; the
    /// maximum is reported. Requires denominators invertible modulo each
    /// prime, which holds for integer matrices.
    pub fn rank_probabilistic<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let mut primes = vec![MERSENNE_61];
        primes.push(random_prime_61(rng));
        primes.push(random_prime_61(rng));
        primes
            .into_iter()
            .filter_map(|p| PrimeFieldMatrix::reduce(self, p).ok())
            .map(|m| m.rank())
            .max()
            .unwrap_or(0)
    }
}

struct BareissOutcome {
    rank: usize,
    swaps: usize,
}

/// In-place fraction-free row echelon form. Every division is exact.
fn bareiss(a: &mut [Vec<BigInt>], cols: usize) -> BareissOutcome {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut swaps = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pivot = &pivot_row[c];
        for row in rest.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = pivot * &row[j] - &lead * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    BareissOutcome { rank: r, swaps }
}

/// A matrix over Z/pZ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFieldMatrix {
    field: PrimeField,
    inner: Matrix<u64>,
}

impl PrimeFieldMatrix {
    pub fn new(modulus: u64, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        let field = PrimeField::new(modulus)?;
        let entries = entries.into_iter().map(|x| x % modulus).collect();
        Ok(PrimeFieldMatrix {
            field,
            inner: Matrix::from_vec(rows, cols, entries),
        })
    }

    pub fn from_i64(modulus: u64, rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        let field = PrimeField::new(modulus)?;
        let entries = entries.iter().map(|&x| field.from_i64(x).value).collect();
        Ok(PrimeFieldMatrix {
            field,
            inner: Matrix::from_vec(rows, cols, entries),
        })
    }

    /// Reduces a rational matrix modulo `modulus`; fails when a denominator
    /// vanishes.
    pub fn reduce(m: &RationalMatrix, modulus: u64) -> Result<Self> {
        let field = PrimeField::new(modulus)?;
        let mut entries = Vec::with_capacity(m.rows() * m.cols());
        for q in m.entries() {
            let v = field.from_rational(q).ok_or_else(|| {
                Error::PreconditionFailed(format!("denominator divisible by {modulus}"))
            })?;
            entries.push(v.value);
        }
        Ok(PrimeFieldMatrix {
            field,
            inner: Matrix::from_vec(m.rows(), m.cols(), entries),
        })
    }

    pub fn from_field_matrix(field: PrimeField, inner: Matrix<u64>) -> Self {
        PrimeFieldMatrix { field, inner }
    }

    pub fn modulus(&self) -> u64 {
        self.field.modulus()
    }

    pub fn rows(&self) -> usize {
        self.inner.rows()
    }

    pub fn cols(&self) -> usize {
        self.inner.cols()
    }

    pub fn rank(&self) -> usize {
        rank_mod_p_rows(
            &self.field,
            (0..self.rows()).map(|i| self.inner.row(i).to_vec()).collect(),
            self.cols(),
        )
    }
}

fn rank_mod_p_rows(f: &PrimeField, mut a: Vec<Vec<u64>>, cols: usize) -> usize {
    let rows = a.len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(p, r);
        let inv = f.inv(a[r][c]);
        for x in a[r][c..].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            let lead = row[c];
            if lead == 0 {
                continue;
            }
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = f.sub(row[j], f.mul(lead, pivot_row[j]));
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of a rational matrix by exact fraction-free elimination.
pub fn rank_rational(m: &RationalMatrix) -> usize {
    m.rank()
}

pub fn rank_mod_p(m: &PrimeFieldMatrix) -> usize {
    m.rank()
}

pub fn determinant(m: &RationalMatrix) -> Result<BigRational> {
    m.determinant()
}

pub fn nullspace_rational(m: &RationalMatrix) -> Vec<Vec<BigRational>> {
    m.nullspace()
}

/// True when every entry is an integer.
pub fn is_integral(m: &RationalMatrix) -> bool {
    m.entries().iter().all(|q| q.is_integer())
}

/// Largest absolute numerator, handy for reporting coefficient growth.
pub fn max_abs_numerator(m: &RationalMatrix) -> BigInt {
    m.entries()
        .iter()
        .map(|q| q.numer().abs())
        .max()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    /// Laplace expansion along the first row.
    fn cofactor_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 1 {
            return m[0][0];
        }
        let mut total = 0;
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &v)| v)
                        .collect()
                })
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            total += sign * m[0][j] * cofactor_det(&minor);
        }
        total
    }

    fn random_int_matrix(rng: &mut impl Rng, rows: usize, cols: usize, range: i64) -> Vec<i64> {
        (0..rows * cols).map(|_| rng.random_range(-range..=range)).collect()
    }

    #[test]
    fn identity_rank_and_det() {
        let id = RationalMatrix::identity(5);
        assert_eq!(id.rank(), 5);
        assert_eq!(id.determinant().unwrap(), q(1));
        assert!(id.nullspace().is_empty());
    }

    #[test]
    fn swap_has_det_minus_one() {
        let m = RationalMatrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert_eq!(m.determinant().unwrap(), q(-1));
    }

    #[test]
    fn non_square_determinant_is_an_error() {
        let m = RationalMatrix::from_i64(1, 2, &[1, 1]);
        assert_eq!(
            m.determinant(),
            Err(Error::NonSquare { rows: 1, cols: 2 })
        );
    }

    #[test]
    fn empty_matrix_has_rank_zero() {
        let m = RationalMatrix::from_vec(0, 0, vec![]);
        assert_eq!(m.rank(), 0);
        let m = RationalMatrix::from_vec(0, 3, vec![]);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn kernel_of_row_of_ones() {
        let m = RationalMatrix::from_i64(1, 2, &[1, 1]);
        let ker = m.nullspace();
        assert_eq!(ker, vec![vec![q(-1), q(1)]]);
    }

    #[test]
    fn rank_deficient_mod_p() {
        let m = PrimeFieldMatrix::from_i64(101, 2, 2, &[1, 1, 1, 1]).unwrap();
        assert_eq!(m.rank(), 1);
        let id = PrimeFieldMatrix::from_i64(101, 3, 3, &[1, 0, 0, 0, 1, 0, 0, 0, 1]).unwrap();
        assert_eq!(id.rank(), 3);
    }

    #[test]
    fn rational_entries() {
        let half = BigRational::new(1.into(), 2.into());
        let third = BigRational::new(1.into(), 3.into());
        // [[1/2, 1/3], [1, 2/3]] has determinant 0
        let m = Matrix::from_vec(2, 2, vec![half.clone(), third.clone(), q(1), &third * q(2)]);
        assert_eq!(m.determinant().unwrap(), q(0));
        assert_eq!(m.rank(), 1);
        // [[1/2, 0], [0, 1/3]] has determinant 1/6
        let m = Matrix::from_vec(2, 2, vec![half, q(0), q(0), third]);
        assert_eq!(m.determinant().unwrap(), BigRational::new(1.into(), 6.into()));
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let entries = random_int_matrix(&mut rng, 4, 4, 9);
            let rows: Vec<Vec<i64>> = entries.chunks(4).map(|c| c.to_vec()).collect();
            let expected = cofactor_det(&rows);
            let m = RationalMatrix::from_i64(4, 4, &entries);
            assert_eq!(m.determinant().unwrap(), q(expected));
        }
    }

    #[test]
    fn rank_mod_p_agrees_with_rational_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for trial in 0..100 {
            // mix of full-rank and low-rank products
            let entries = if trial % 2 == 0 {
                random_int_matrix(&mut rng, 20, 20, 50)
            } else {
                let k = rng.random_range(1..20);
                let left = random_int_matrix(&mut rng, 20, k, 5);
                let right = random_int_matrix(&mut rng, k, 20, 5);
                let mut out = vec![0i64; 400];
                for i in 0..20 {
                    for j in 0..20 {
                        out[i * 20 + j] = (0..k).map(|t| left[i * k + t] * right[t * 20 + j]).sum();
                    }
                }
                out
            };
            let m = RationalMatrix::from_i64(20, 20, &entries);
            let p = random_prime_61(&mut rng);
            let mp = PrimeFieldMatrix::from_i64(p, 20, 20, &entries).unwrap();
            assert_eq!(mp.rank(), m.rank());
        }
    }

    #[test]
    fn determinant_nonzero_iff_full_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..100 {
            // small entries make singular matrices common
            let entries = random_int_matrix(&mut rng, 5, 5, 1);
            let m = RationalMatrix::from_i64(5, 5, &entries);
            assert_eq!(!m.determinant().unwrap().is_zero(), m.rank() == 5);
        }
    }

    #[test]
    fn nullspace_dimension_and_annihilation() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for _ in 0..20 {
            let entries = random_int_matrix(&mut rng, 4, 7, 2);
            let m = RationalMatrix::from_i64(4, 7, &entries);
            let ker = m.nullspace();
            assert_eq!(ker.len(), 7 - m.rank());
            for v in &ker {
                for i in 0..4 {
                    let dot: BigRational = (0..7).map(|j| m.get(i, j) * &v[j]).sum();
                    assert!(dot.is_zero());
                }
            }
        }
    }

    #[test]
    fn probabilistic_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(15);
        let m = RationalMatrix::from_i64(3, 3, &[1, 2, 3, 4, 5, 6, 7, 8, 9]);
        assert_eq!(m.rank_probabilistic(&mut rng), 2);
    }
}
