//! Exact rational scalars and dense linear algebra over the rationals.
//!
//! Every coefficient in the crate is a [`Rational`]. Rank and kernel
//! computations clear denominators row by row and then run Bareiss
//! fraction-free elimination over the integers; rationals reappear only in
//! the back substitution that produces kernel vectors. Rank also tries a
//! single-prime elimination first, which is trusted only when it proves full
//! rank.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> Rational {
    Rational::from_integer(binomial_int(n, k))
}

pub(crate) fn binomial_int(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

/// `n (n-1) ... (n-k+1)`; zero when `k > n`.
pub(crate) fn falling_factorial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    (n - k + 1..=n).fold(BigInt::one(), |acc, t| acc * t)
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from row vectors; all rows must share one length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        let n = rows.len();
        Ok(Self {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, Error> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Matrix-vector product `M v`.
    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// Stacks matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[RatMatrix]) -> Result<Self, Error> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut entries = Vec::new();
        let mut rows = 0;
        for b in blocks {
            if b.cols != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: b.cols,
                });
            }
            rows += b.rows;
            entries.extend(b.entries.iter().cloned());
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Integer row-echelon form of a rational matrix.
struct Echelon {
    /// Nonzero echelon rows; row `k` has its pivot in column `pivots[k]`.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

/// Scales a rational row to an integer row with the same span.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .filter(|q| !q.is_zero())
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|q| {
            if q.is_zero() {
                BigInt::zero()
            } else {
                q.numer() * (&lcm / q.denom())
            }
        })
        .collect();
    let g = out
        .iter()
        .filter(|x| !x.is_zero())
        .fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in out.iter_mut().filter(|x| !x.is_zero()) {
            *x /= &g;
        }
    }
    out
}

fn nonzeros(row: &[BigInt]) -> usize {
    row.iter().filter(|x| !x.is_zero()).count()
}

/// Single-step Bareiss elimination with row pivoting.
///
/// After step `k` every entry below the pivot rows is a `(k+1)`-minor of the
/// integer input, so the division by the previous pivot is exact and entry
/// size stays bounded by Hadamard's inequality.
fn echelon(m: &RatMatrix) -> Echelon {
    let mut rows: Vec<Vec<BigInt>> = (0..m.rows)
        .map(|i| integer_row(m.row(i)))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..m.cols {
        if rank == rows.len() {
            break;
        }
        // Sparsest candidate row, then smallest pivot.
        let best = (rank..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by_key(|&i| (nonzeros(&rows[i]), rows[i][col].bits()));
        let Some(best) = best else { continue };
        rows.swap(rank, best);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        let p = &pivot[col];
        for row in tail.iter_mut() {
            let a = std::mem::take(&mut row[col]);
            for j in col + 1..row.len() {
                let t_zero = row[j].is_zero();
                let p_zero = a.is_zero() || pivot[j].is_zero();
                if t_zero && p_zero {
                    continue;
                }
                let mut val = if t_zero { BigInt::zero() } else { p * &row[j] };
                if !p_zero {
                    val -= &a * &pivot[j];
                }
                if !prev.is_one() {
                    val /= &prev;
                }
                row[j] = val;
            }
        }
        prev = p.clone();
        pivots.push(col);
        rank += 1;
    }
    rows.truncate(rank);
    Echelon { rows, pivots }
}

/// Exact rank over the rationals.
///
/// A quick elimination modulo a word-sized prime runs first. Reduction mod
/// `p` can only lose rank, so when it already reaches `min(rows, cols)` that
/// value is the rational rank. Otherwise the answer comes from Bareiss.
pub fn rank(m: &RatMatrix) -> usize {
    let full = m.rows.min(m.cols);
    if full > 0 && rank_mod_p(m) == full {
        return full;
    }
    echelon(m).pivots.len()
}

/// Largest prime below 2^62.
const MODULUS: u64 = (1 << 62) - 57;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODULUS as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

/// Rank of the row-wise integer scaling of `m`, reduced mod [`MODULUS`].
/// Never exceeds the rational rank.
fn rank_mod_p(m: &RatMatrix) -> usize {
    let p = BigInt::from(MODULUS);
    let mut rows: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| {
            integer_row(m.row(i))
                .iter()
                .map(|x| {
                    let r = x.mod_floor(&p);
                    u64::try_from(r).expect("residue fits in u64")
                })
                .collect()
        })
        .collect();
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][col], MODULUS - 2);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot = &head[rank];
        for row in tail.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let f = mul_mod(row[col], inv);
            for j in col..m.cols {
                if pivot[j] != 0 {
                    row[j] = (row[j] + MODULUS - mul_mod(f, pivot[j])) % MODULUS;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Basis of the right null space `{x : M x = 0}`.
///
/// One vector per free column, in increasing column order. The vector for
/// free column `f` has a 1 in position `f` and zeros in the other free
/// positions, which is the basis read off the reduced row-echelon form.
pub fn kernel_basis(m: &RatMatrix) -> Vec<Vec<Rational>> {
    let Echelon { rows, pivots } = echelon(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![Rational::zero(); m.cols];
            x[f] = Rational::one();
            // back substitution over the echelon rows
            for (row, &p) in rows.iter().zip(&pivots).rev() {
                let mut acc = BigRational::zero();
                for j in p + 1..m.cols {
                    if !row[j].is_zero() && !x[j].is_zero() {
                        acc += &x[j] * Rational::from_integer(row[j].clone());
                    }
                }
                if !acc.is_zero() {
                    x[p] = -acc / Rational::from_integer(row[p].clone());
                }
            }
            x
        })
        .collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn solve_membership(v: &[Rational], basis: &[Vec<Rational>]) -> Result<bool, Error> {
    if let Some(bad) = basis.iter().find(|b| b.len() != v.len()) {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            found: bad.len(),
        });
    }
    if v.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    if basis.is_empty() {
        return Ok(false);
    }
    let span = RatMatrix::from_rows(basis.to_vec())?;
    let mut extended = basis.to_vec();
    extended.push(v.to_vec());
    let extended = RatMatrix::from_rows(extended)?;
    Ok(rank(&extended) == rank(&span))
}

/// Rank of a list of vectors viewed as matrix rows.
pub fn rank_of_vectors(vectors: &[Vec<Rational>]) -> Result<usize, Error> {
    if vectors.is_empty() {
        return Ok(0);
    }
    Ok(rank(&RatMatrix::from_rows(vectors.to_vec())?))
}
