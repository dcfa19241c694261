//! Transvectants of binary forms and bi-transvectants of bi-forms.
//!
//! The `r`-th transvectant of `F ∈ V_d`, `G ∈ V_e` is
//!
//! ```text
//! T^(r)(F, G) = (d-r)!/d! (e-r)!/e!
//!               Σ_{i=0..r} (-1)^i C(r,i) ∂^r F/∂X^(r-i)∂Y^i · ∂^r G/∂X^i∂Y^(r-i)
//! ```
//!
//! and the `(r, s)`-th bi-transvectant is its tensor product,
//! `T^(r,s)(F⊠G, F'⊠G') = T^(r)(F, F') ⊠ T^(s)(G, G')`, extended bilinearly.
//!
//! On monomials the sum collapses to a single monomial, which is what
//! [`BiTransvectant`] tabulates to build the matrices of `T(v, ·)` and
//! `T(·, w)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::forms::{BiForm, BinaryForm};
use crate::linalg::{binomial_int, falling_factorial, RatMatrix, Rational};

/// `(r, s)` together with the source and target bidegrees.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TransvectantSpec {
    pub r: usize,
    pub s: usize,
    pub src1: (usize, usize),
    pub src2: (usize, usize),
    pub target: (usize, usize),
}

impl TransvectantSpec {
    pub fn new(
        r: usize,
        s: usize,
        src1: (usize, usize),
        src2: (usize, usize),
    ) -> Result<Self, Error> {
        if r > src1.0.min(src2.0) {
            return Err(Error::InvalidOrder(format!(
                "r = {r} exceeds min({}, {})",
                src1.0, src2.0
            )));
        }
        if s > src1.1.min(src2.1) {
            return Err(Error::InvalidOrder(format!(
                "s = {s} exceeds min({}, {})",
                src1.1, src2.1
            )));
        }
        Ok(Self {
            r,
            s,
            src1,
            src2,
            target: (src1.0 + src2.0 - 2 * r, src1.1 + src2.1 - 2 * s),
        })
    }
}

/// `dim V_(p,q)`.
pub fn dim_bidegree((p, q): (usize, usize)) -> usize {
    (p + 1) * (q + 1)
}

/// `T^(r)(F, G)`, evaluated literally from derivatives and products.
///
/// The formula is antisymmetric up to `(-1)^r` under swapping `F` and `G`,
/// so it is used as is for either ordering of the degrees.
pub fn transvect(f: &BinaryForm, g: &BinaryForm, r: usize) -> Result<BinaryForm, Error> {
    let (d, e) = (f.degree(), g.degree());
    if r > d.min(e) {
        return Err(Error::InvalidOrder(format!(
            "r = {r} exceeds min({d}, {e})"
        )));
    }
    let mut acc = BinaryForm::zero(d + e - 2 * r);
    for i in 0..=r {
        // ∂^r F / ∂X^(r-i) ∂Y^i
        let df = f.derivative(false, r - i).derivative(true, i);
        // ∂^r G / ∂X^i ∂Y^(r-i)
        let dg = g.derivative(false, i).derivative(true, r - i);
        let mut c = Rational::from_integer(binomial_int(r as u64, i as i64));
        if i % 2 == 1 {
            c = -c;
        }
        acc = acc.add(&df.mul(&dg).scale(&c))?;
    }
    let prefactor = Rational::new(
        BigInt::one(),
        falling_factorial(d as u64, r as u64) * falling_factorial(e as u64, r as u64),
    );
    Ok(acc.scale(&prefactor))
}

/// Coefficient of `T^(r)(X^p Y^(d-p), X^q Y^(e-q))`; the result is this
/// coefficient times `X^(p+q-r) Y^(d+e-r-p-q)`.
pub fn monomial_transvectant(d: usize, p: usize, e: usize, q: usize, r: usize) -> Rational {
    debug_assert!(p <= d && q <= e && r <= d.min(e));
    if p + q < r || (d - p) + (e - q) < r {
        return Rational::zero();
    }
    let mut sum = BigInt::zero();
    for i in 0..=r {
        let term = falling_factorial(p as u64, (r - i) as u64)
            * falling_factorial((d - p) as u64, i as u64)
            * falling_factorial(q as u64, i as u64)
            * falling_factorial((e - q) as u64, (r - i) as u64);
        if term.is_zero() {
            continue;
        }
        let term = term * binomial_int(r as u64, i as i64);
        if i % 2 == 1 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    Rational::new(
        sum,
        falling_factorial(d as u64, r as u64) * falling_factorial(e as u64, r as u64),
    )
}

fn index_error(d: usize, i: usize, e: usize, j: usize) -> Error {
    Error::InvalidOrder(format!("indices (d={d}, i={i}, e={e}, j={j}) out of range"))
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Closed form of the apolar covariant `T^(e)(X^i Y^(d-i), X^(e-j) Y^j)`.
///
/// Returns the coefficient and the `X`-exponent `i - j` of the result (a
/// form of degree `d - e`). The coefficient is zero unless `j <= i` and
/// `e - j <= d - i`; the exponent is then meaningless and reported as 0.
pub fn apolar_monomial(d: usize, i: usize, e: usize, j: usize) -> Result<(Rational, usize), Error> {
    if i > d || j > e || e > d {
        return Err(index_error(d, i, e, j));
    }
    if j > i || e - j > d - i {
        return Ok((Rational::zero(), 0));
    }
    let coeff = sign((e - j) % 2 == 1)
        * Rational::new(
            binomial_int((d - e) as u64, (i - j) as i64),
            binomial_int(d as u64, i as i64),
        );
    Ok((coeff, i - j))
}

/// The coefficient `A` of `T^(e-1)(X^i Y^(d-i), X^(e-j) Y^j) = A X^(i-j+1) Y^(...)`:
///
/// ```text
/// A = (-1)^(e-j) C(d,i)^-1 C(d-e+2, i-j+1) (j(d+2) - (i+1)e) / (e(d-e+2))
/// ```
pub fn pre_apolar_coefficient(d: usize, i: usize, e: usize, j: usize) -> Result<Rational, Error> {
    let valid = e >= 1 && e <= d && i <= d && j <= e && j <= i + 1 && e - j <= d - i + 1;
    if !valid {
        return Err(index_error(d, i, e, j));
    }
    let (d, i, e, j) = (d as i64, i as i64, e as i64, j as i64);
    let numerator =
        BigInt::from(j * (d + 2) - (i + 1) * e) * binomial_int((d - e + 2) as u64, i - j + 1);
    let denominator = binomial_int(d as u64, i) * BigInt::from(e * (d - e + 2));
    Ok(sign((e - j) % 2 == 1) * Rational::new(numerator, denominator))
}

/// Non-degeneracy of `T^(e-1)` on the monomial pair `(X^i Y^(d-i), X^(e-j) Y^j)`:
/// true iff `j(d+2) != (i+1)e`.
pub fn pre_apolar_nondegenerate(d: usize, i: usize, e: usize, j: usize) -> bool {
    j * (d + 2) != (i + 1) * e
}

/// Degrees `d + e - 2r`, `r = 0..=min(d, e)`, of the irreducible summands
/// of `V_d ⊗ V_e`.
pub fn clebsch_gordan_dims(d: usize, e: usize) -> Vec<usize> {
    (0..=d.min(e)).map(|r| d + e - 2 * r).collect()
}

/// A bi-transvectant with its monomial tables precomputed.
#[derive(Debug, Clone)]
pub struct BiTransvectant {
    spec: TransvectantSpec,
    /// `x_table[i * (a'+1) + k]`: first-factor coefficient for grid rows `i`, `k`.
    x_table: Vec<Rational>,
    /// `y_table[j * (b'+1) + l]`: second-factor coefficient for grid columns `j`, `l`.
    y_table: Vec<Rational>,
}

/// Coefficient table of `T^(r)` between the index conventions of the grid:
/// grid index `i` of a degree-`d` factor is the monomial with first-variable
/// exponent `d - i`.
fn grid_table(d: usize, e: usize, r: usize) -> Vec<Rational> {
    let mut t = Vec::with_capacity((d + 1) * (e + 1));
    for i in 0..=d {
        for k in 0..=e {
            t.push(monomial_transvectant(d, d - i, e, e - k, r));
        }
    }
    t
}

impl BiTransvectant {
    pub fn new(spec: TransvectantSpec) -> Self {
        let (a, b) = spec.src1;
        let (a2, b2) = spec.src2;
        Self {
            spec,
            x_table: grid_table(a, a2, spec.r),
            y_table: grid_table(b, b2, spec.s),
        }
    }

    pub fn spec(&self) -> &TransvectantSpec {
        &self.spec
    }

    fn check(&self, which: (usize, usize), p: &BiForm) -> Result<(), Error> {
        if p.bidegree() != which {
            return Err(Error::BidegreeMismatch {
                expected: which,
                found: p.bidegree(),
            });
        }
        Ok(())
    }

    /// `(coefficient, target grid index)` of `T(m1, m2)` for grid monomials
    /// `m1 = (i, j)` of the first source and `m2 = (k, l)` of the second.
    fn pair(&self, (i, j): (usize, usize), (k, l): (usize, usize)) -> Option<(Rational, usize)> {
        let (_, b2) = self.spec.src2;
        let (a2, _) = self.spec.src2;
        let cx = &self.x_table[i * (a2 + 1) + k];
        if cx.is_zero() {
            return None;
        }
        let cy = &self.y_table[j * (b2 + 1) + l];
        if cy.is_zero() {
            return None;
        }
        let (a, b) = self.spec.src1;
        let (ta, tb) = self.spec.target;
        // first-variable exponents add, minus the order
        let ex = (a - i) + (a2 - k) - self.spec.r;
        let ey = (b - j) + (b2 - l) - self.spec.s;
        let ti = ta - ex;
        let tj = tb - ey;
        Some((cx * cy, ti * (tb + 1) + tj))
    }

    /// `T(P, Q)`.
    pub fn apply(&self, p: &BiForm, q: &BiForm) -> Result<BiForm, Error> {
        self.check(self.spec.src1, p)?;
        self.check(self.spec.src2, q)?;
        let (ta, tb) = self.spec.target;
        let mut out = vec![Rational::zero(); dim_bidegree((ta, tb))];
        for (m1, c1) in p.terms() {
            for (m2, c2) in q.terms() {
                if let Some((c, idx)) = self.pair(m1, m2) {
                    out[idx] += c * c1 * c2;
                }
            }
        }
        BiForm::new(ta, tb, out)
    }

    /// Matrix of `w ↦ T(v, w)`: `dim V_target × dim V_src2`, columns in
    /// row-major grid order of the second source.
    pub fn right_slot_matrix(&self, v: &BiForm) -> Result<RatMatrix, Error> {
        self.check(self.spec.src1, v)?;
        let (a2, b2) = self.spec.src2;
        let mut m = RatMatrix::zeros(dim_bidegree(self.spec.target), dim_bidegree(self.spec.src2));
        for (m1, c1) in v.terms() {
            for k in 0..=a2 {
                for l in 0..=b2 {
                    if let Some((c, row)) = self.pair(m1, (k, l)) {
                        let col = k * (b2 + 1) + l;
                        let cur = m.get(row, col) + c * c1;
                        m.set(row, col, cur);
                    }
                }
            }
        }
        Ok(m)
    }

    /// Matrix of `v ↦ T(v, w)`: `dim V_target × dim V_src1`.
    pub fn left_slot_matrix(&self, w: &BiForm) -> Result<RatMatrix, Error> {
        self.check(self.spec.src2, w)?;
        let (a, b) = self.spec.src1;
        let mut m = RatMatrix::zeros(dim_bidegree(self.spec.target), dim_bidegree(self.spec.src1));
        for (m2, c2) in w.terms() {
            for i in 0..=a {
                for j in 0..=b {
                    if let Some((c, row)) = self.pair((i, j), m2) {
                        let col = i * (b + 1) + j;
                        let cur = m.get(row, col) + c * c2;
                        m.set(row, col, cur);
                    }
                }
            }
        }
        Ok(m)
    }
}

/// `T^(r,s)(P, Q)` for the bidegrees recorded in `spec`.
pub fn bi_transvect(p: &BiForm, q: &BiForm, spec: &TransvectantSpec) -> Result<BiForm, Error> {
    BiTransvectant::new(*spec).apply(p, q)
}

/// Matrix of `T(v, ·) : V_src2 → V_target`.
pub fn matrix_of_right_slot(v: &BiForm, spec: &TransvectantSpec) -> Result<RatMatrix, Error> {
    BiTransvectant::new(*spec).right_slot_matrix(v)
}

/// Vertical stack of the matrices of `T(·, w_1), ..., T(·, w_c)`.
pub fn matrix_of_left_slot_stacked(
    ws: &[BiForm],
    spec: &TransvectantSpec,
) -> Result<RatMatrix, Error> {
    BiTransvectant::new(*spec).left_slot_stacked(ws)
}

impl BiTransvectant {
    pub fn left_slot_stacked(&self, ws: &[BiForm]) -> Result<RatMatrix, Error> {
        if ws.is_empty() {
            return Err(Error::EmptyWitnessList);
        }
        let blocks = ws
            .iter()
            .map(|w| self.left_slot_matrix(w))
            .collect::<Result<Vec<_>, _>>()?;
        RatMatrix::vstack(&blocks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formio::parse_biform;
    use crate::linalg::{rank, rat, ratio};

    fn bf(degree: usize, x_exp: usize) -> BinaryForm {
        // X^x_exp Y^(degree - x_exp)
        BinaryForm::monomial(degree, degree - x_exp).unwrap()
    }

    #[test]
    fn transvect_examples() {
        // T^(1)(X^2, Y^2) = XY
        let t = transvect(&bf(2, 2), &bf(2, 0), 1).unwrap();
        assert_eq!(t, bf(2, 1));
        // T^(2)(X^2Y^2, XY) = -XY/3
        let t = transvect(&bf(4, 2), &bf(2, 1), 2).unwrap();
        assert_eq!(t, bf(2, 1).scale(&ratio(-1, 3)));
        // T^(1)(X^2Y^2, XY) = 0
        let t = transvect(&bf(4, 2), &bf(2, 1), 1).unwrap();
        assert_eq!(t.degree(), 4);
        assert!(t.is_zero());
    }

    #[test]
    fn transvect_rejects_large_order() {
        assert!(transvect(&bf(2, 1), &bf(1, 1), 2).is_err());
    }

    #[test]
    fn apolar_examples() {
        assert_eq!(apolar_monomial(2, 1, 1, 0).unwrap(), (ratio(-1, 2), 1));
        assert_eq!(apolar_monomial(2, 2, 1, 0).unwrap().0, rat(0));
        assert!(apolar_monomial(2, 3, 1, 0).is_err());
        assert!(apolar_monomial(1, 0, 2, 0).is_err());
    }

    #[test]
    fn pre_apolar_examples() {
        assert_eq!(pre_apolar_coefficient(3, 1, 2, 1).unwrap(), ratio(-1, 6));
        assert_eq!(pre_apolar_coefficient(4, 2, 2, 1).unwrap(), rat(0));
        assert!(pre_apolar_coefficient(3, 0, 2, 2).is_err());
        // cross-check against the direct formula: T^(1)(XY^2, XY) = -XY^2/6
        let t = transvect(&bf(3, 1), &bf(2, 1), 1).unwrap();
        assert_eq!(t, bf(3, 1).scale(&ratio(-1, 6)));
    }

    #[test]
    fn nondegeneracy_examples() {
        assert!(pre_apolar_nondegenerate(3, 1, 2, 1));
        assert!(!pre_apolar_nondegenerate(4, 2, 2, 1));
        // d + 2 = 7 coprime to e = 3: non-degenerate on every valid pair
        let (d, e) = (5, 3);
        for i in 0..=d {
            for j in 0..=e {
                if j <= i + 1 && e - j <= d - i + 1 {
                    assert!(pre_apolar_nondegenerate(d, i, e, j), "i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn clebsch_gordan_examples() {
        assert_eq!(clebsch_gordan_dims(2, 1), vec![3, 1]);
        assert_eq!(clebsch_gordan_dims(7, 0), vec![7]);
        assert_eq!(clebsch_gordan_dims(3, 3), vec![6, 4, 2, 0]);
        let total: usize = clebsch_gordan_dims(3, 3).iter().map(|d| d + 1).sum();
        assert_eq!(total, 16);
    }

    #[test]
    fn spec_validation() {
        assert!(TransvectantSpec::new(2, 0, (1, 3), (3, 3)).is_err());
        assert!(TransvectantSpec::new(0, 4, (1, 3), (3, 3)).is_err());
        let s = TransvectantSpec::new(2, 3, (3, 7), (3, 3)).unwrap();
        assert_eq!(s.target, (2, 4));
    }

    #[test]
    fn bi_transvect_example() {
        let p = parse_biform("x^2*X^2", None).unwrap();
        let q = parse_biform("y^2*Y^2", None).unwrap();
        let spec = TransvectantSpec::new(1, 1, (2, 2), (2, 2)).unwrap();
        let t = bi_transvect(&p, &q, &spec).unwrap();
        assert_eq!(t, parse_biform("x*y*X*Y", None).unwrap());
    }

    #[test]
    fn bi_transvect_bidegree_mismatch() {
        let p = parse_biform("x^2*X^2", None).unwrap();
        let spec = TransvectantSpec::new(1, 1, (2, 2), (2, 3)).unwrap();
        assert!(bi_transvect(&p, &p, &spec).is_err());
    }

    #[test]
    fn zero_inputs_give_zero_of_target() {
        let spec = TransvectantSpec::new(1, 2, (3, 5), (1, 4)).unwrap();
        let z = bi_transvect(
            &BiForm::zero(3, 5),
            &BiForm::monomial(1, 4, 0, 0).unwrap(),
            &spec,
        )
        .unwrap();
        assert_eq!(z, BiForm::zero(2, 5));
        assert!(matrix_of_right_slot(&BiForm::zero(3, 5), &spec)
            .unwrap()
            .is_zero());
        assert!(matrix_of_left_slot_stacked(&[BiForm::zero(1, 4)], &spec)
            .unwrap()
            .is_zero());
        assert!(matrix_of_left_slot_stacked(&[], &spec).is_err());
    }

    #[test]
    fn right_slot_columns_are_images_of_monomials() {
        let v = parse_biform(
            "5*x^3*X*Y^4 + 30*x^2*y*X^2*Y^3 + 30*x*y^2*X^3*Y^2 + 5*y^3*X^4*Y",
            None,
        )
        .unwrap();
        let spec = TransvectantSpec::new(3, 1, (3, 5), (3, 1)).unwrap();
        let m = matrix_of_right_slot(&v, &spec).unwrap();
        assert_eq!((m.rows(), m.cols()), (5, 8));
        for k in 0..=3 {
            for l in 0..=1 {
                let w = BiForm::monomial(3, 1, k, l).unwrap();
                let img = bi_transvect(&v, &w, &spec).unwrap();
                let col: Vec<Rational> =
                    (0..m.rows()).map(|r| m.get(r, k * 2 + l).clone()).collect();
                assert_eq!(col, img.coeffs());
            }
        }
        assert_eq!(rank(&m), 5);
    }

    #[test]
    fn single_block_stack_matches_left_slot() {
        let spec = TransvectantSpec::new(1, 2, (3, 5), (1, 4)).unwrap();
        let w = parse_biform("x*X^4 - 3*y*X*Y^3", None).unwrap();
        let t = BiTransvectant::new(spec);
        assert_eq!(
            t.left_slot_stacked(std::slice::from_ref(&w)).unwrap(),
            t.left_slot_matrix(&w).unwrap()
        );
    }
}
