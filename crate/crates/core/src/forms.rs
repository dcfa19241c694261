//! Binary forms `V_d` and bi-forms `V_(a,b) = V_a ⊠ V_b`.
//!
//! Conventions used everywhere in the crate:
//!
//! * A [`BinaryForm`] of degree `d` stores at index `i` the coefficient of
//!   `X^(d-i) Y^i`.
//! * A [`BiForm`] of bidegree `(a, b)` stores at grid position `(i, j)` the
//!   coefficient of `x^(a-i) y^i X^(b-j) Y^j`, row-major. Lowercase `x, y`
//!   are the coordinates of the first `P^1` factor, uppercase `X, Y` of the
//!   second.
//! * `SL2 x SL2` acts by substitution: `(g.P)(x, y, X, Y) = P((x, y) g.left,
//!   (X, Y) g.right)` with row vectors, i.e. `(x, y) M = (m11 x + m21 y,
//!   m12 x + m22 y)`. This is a left action since `(x, y) (g h) =
//!   ((x, y) g) h`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::Error;
use crate::linalg::{falling_factorial, Rational};

/// One of the four coordinates on `P^1 x P^1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Var {
    /// `x`, first coordinate of the first factor.
    LowerX,
    /// `y`, second coordinate of the first factor.
    LowerY,
    /// `X`, first coordinate of the second factor.
    UpperX,
    /// `Y`, second coordinate of the second factor.
    UpperY,
}

impl Var {
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            'x' => Some(Var::LowerX),
            'y' => Some(Var::LowerY),
            'X' => Some(Var::UpperX),
            'Y' => Some(Var::UpperY),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Var::LowerX => 'x',
            Var::LowerY => 'y',
            Var::UpperX => 'X',
            Var::UpperY => 'Y',
        }
    }
}

/// Homogeneous polynomial of degree `d` in `X, Y`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    pub fn new(degree: usize, coeffs: Vec<Rational>) -> Result<Self, Error> {
        if coeffs.len() != degree + 1 {
            return Err(Error::DimensionMismatch {
                expected: degree + 1,
                found: coeffs.len(),
            });
        }
        Ok(Self { degree, coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        Self {
            degree,
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    /// `X^(d-i) Y^i`.
    pub fn monomial(degree: usize, i: usize) -> Result<Self, Error> {
        if i > degree {
            return Err(Error::IndexOutOfRange {
                a: degree,
                b: 0,
                i,
                j: 0,
            });
        }
        let mut f = Self::zero(degree);
        f.coeffs[i] = Rational::one();
        Ok(f)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        if self.degree != other.degree {
            return Err(Error::DimensionMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(Self {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, b)| !b.is_zero())
            {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// `∂^order / ∂X^order` (`wrt_y == false`) or `∂^order / ∂Y^order`.
    ///
    /// Differentiating below degree zero gives the zero form of degree 0.
    pub fn derivative(&self, wrt_y: bool, order: usize) -> Self {
        if order == 0 {
            return self.clone();
        }
        if order > self.degree {
            return Self::zero(0);
        }
        let d = self.degree;
        let mut out = Self::zero(d - order);
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            // c X^(d-i) Y^i
            let (xe, ye) = (d - i, i);
            if wrt_y {
                if ye >= order {
                    let f = falling_factorial(ye as u64, order as u64);
                    out.coeffs[i - order] += c * Rational::from_integer(f);
                }
            } else if xe >= order {
                let f = falling_factorial(xe as u64, order as u64);
                out.coeffs[i] += c * Rational::from_integer(f);
            }
        }
        out
    }

    /// Substitution `(X, Y) -> (X, Y) M`.
    pub fn substitute(&self, m: &Mat2) -> Self {
        let images = linear_powers(m, self.degree);
        let mut out = Self::zero(self.degree);
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, t) in images[i].coeffs.iter().enumerate() {
                out.coeffs[k] += c * t;
            }
        }
        out
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let as_bi = BiForm::tensor(&BinaryForm::monomial(0, 0).unwrap(), self);
        write!(
            f,
            "BinaryForm({}: {})",
            self.degree,
            crate::formio::print_biform(&as_bi)
        )
    }
}

/// Images of `X^(d-i) Y^i` under `(X, Y) -> (X, Y) M` for every `i`.
fn linear_powers(m: &Mat2, d: usize) -> Vec<BinaryForm> {
    // (X, Y) M = (m11 X + m21 Y, m12 X + m22 Y)
    let l1 = BinaryForm {
        degree: 1,
        coeffs: vec![m[0][0].clone(), m[1][0].clone()],
    };
    let l2 = BinaryForm {
        degree: 1,
        coeffs: vec![m[0][1].clone(), m[1][1].clone()],
    };
    let mut p1 = vec![BinaryForm::monomial(0, 0).unwrap()];
    let mut p2 = vec![BinaryForm::monomial(0, 0).unwrap()];
    for k in 0..d {
        p1.push(p1[k].mul(&l1));
        p2.push(p2[k].mul(&l2));
    }
    (0..=d).map(|i| p1[d - i].mul(&p2[i])).collect()
}

/// 2x2 rational matrix, `m[row][col]`.
pub type Mat2 = [[Rational; 2]; 2];

fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn mat2_det(a: &Mat2) -> Rational {
    &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
}

fn mat2_identity() -> Mat2 {
    [
        [Rational::one(), Rational::zero()],
        [Rational::zero(), Rational::one()],
    ]
}

/// Element of `SL2 x SL2`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement {
    left: Mat2,
    right: Mat2,
}

impl GroupElement {
    pub fn new(left: Mat2, right: Mat2) -> Result<Self, Error> {
        if !mat2_det(&left).is_one() || !mat2_det(&right).is_one() {
            return Err(Error::NotUnimodular);
        }
        Ok(Self { left, right })
    }

    pub fn identity() -> Self {
        Self {
            left: mat2_identity(),
            right: mat2_identity(),
        }
    }

    /// `(±I, ±I)` with the given signs.
    pub fn central(left_negative: bool, right_negative: bool) -> Self {
        let signed = |neg: bool| {
            let mut m = mat2_identity();
            if neg {
                m[0][0] = -m[0][0].clone();
                m[1][1] = -m[1][1].clone();
            }
            m
        };
        Self {
            left: signed(left_negative),
            right: signed(right_negative),
        }
    }

    pub fn left(&self) -> &Mat2 {
        &self.left
    }

    pub fn right(&self) -> &Mat2 {
        &self.right
    }

    /// Group product `self * other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self {
            left: mat2_mul(&self.left, &other.left),
            right: mat2_mul(&self.right, &other.right),
        }
    }
}

/// Bi-homogeneous polynomial of bidegree `(a, b)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiForm {
    xdeg: usize,
    ydeg: usize,
    coeffs: Vec<Rational>,
}

impl BiForm {
    /// Builds a bi-form from its row-major coefficient grid.
    pub fn new(xdeg: usize, ydeg: usize, coeffs: Vec<Rational>) -> Result<Self, Error> {
        let expected = (xdeg + 1) * (ydeg + 1);
        if coeffs.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coeffs.len(),
            });
        }
        Ok(Self { xdeg, ydeg, coeffs })
    }

    pub fn zero(xdeg: usize, ydeg: usize) -> Self {
        Self {
            xdeg,
            ydeg,
            coeffs: vec![Rational::zero(); (xdeg + 1) * (ydeg + 1)],
        }
    }

    /// `x^(a-i) y^i X^(b-j) Y^j`.
    pub fn monomial(a: usize, b: usize, i: usize, j: usize) -> Result<Self, Error> {
        if i > a || j > b {
            return Err(Error::IndexOutOfRange { a, b, i, j });
        }
        let mut p = Self::zero(a, b);
        p.coeffs[i * (b + 1) + j] = Rational::one();
        Ok(p)
    }

    /// `F(x, y) G(X, Y)`.
    pub fn tensor(f: &BinaryForm, g: &BinaryForm) -> Self {
        let mut p = Self::zero(f.degree, g.degree);
        for (i, a) in f.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in g.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                p.coeffs[i * (g.degree + 1) + j] = a * b;
            }
        }
        p
    }

    pub fn bidegree(&self) -> (usize, usize) {
        (self.xdeg, self.ydeg)
    }

    /// `dim V_(a,b) = (a+1)(b+1)`.
    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize, j: usize) -> &Rational {
        &self.coeffs[i * (self.ydeg + 1) + j]
    }

    pub fn coeff_mut(&mut self, i: usize, j: usize) -> &mut Rational {
        &mut self.coeffs[i * (self.ydeg + 1) + j]
    }

    /// Row-major coefficient vector.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Nonzero terms as `((i, j), coefficient)` in row-major order.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Rational)> {
        let w = self.ydeg + 1;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| ((k / w, k % w), c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_same_bidegree(&self, other: &Self) -> Result<(), Error> {
        if self.bidegree() != other.bidegree() {
            return Err(Error::BidegreeMismatch {
                expected: self.bidegree(),
                found: other.bidegree(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, Error> {
        self.check_same_bidegree(other)?;
        Ok(Self {
            xdeg: self.xdeg,
            ydeg: self.ydeg,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, Error> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            xdeg: self.xdeg,
            ydeg: self.ydeg,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Polynomial product; bidegrees add.
    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (self.xdeg + other.xdeg, self.ydeg + other.ydeg);
        let mut out = Self::zero(a, b);
        for ((i, j), c) in self.terms() {
            for ((k, l), d) in other.terms() {
                out.coeffs[(i + k) * (b + 1) + (j + l)] += c * d;
            }
        }
        out
    }

    /// `∂^order P / ∂var^order`.
    ///
    /// The result has the corresponding degree lowered by `order`; when that
    /// would be negative the result is identically zero and carries degree 0
    /// in that slot.
    pub fn partial_derivative(&self, var: Var, order: usize) -> Self {
        if order == 0 {
            return self.clone();
        }
        let (a, b) = (self.xdeg, self.ydeg);
        let lowers_first = matches!(var, Var::LowerX | Var::LowerY);
        let (na, nb) = if lowers_first {
            (a.checked_sub(order), Some(b))
        } else {
            (Some(a), b.checked_sub(order))
        };
        let (Some(na), Some(nb)) = (na, nb) else {
            return if lowers_first {
                Self::zero(0, b)
            } else {
                Self::zero(a, 0)
            };
        };
        let mut out = Self::zero(na, nb);
        let ord = order as u64;
        for ((i, j), c) in self.terms() {
            // exponents of x, y, X, Y
            let (ex, ey, ex_big, ey_big) = (a - i, i, b - j, j);
            let (e, target) = match var {
                Var::LowerX => (ex, (i, j)),
                Var::LowerY => (ey, (i.wrapping_sub(order), j)),
                Var::UpperX => (ex_big, (i, j)),
                Var::UpperY => (ey_big, (i, j.wrapping_sub(order))),
            };
            if e >= order {
                let f = Rational::from_integer(falling_factorial(e as u64, ord));
                *out.coeff_mut(target.0, target.1) += c * f;
            }
        }
        out
    }

    /// The group action `g.P`.
    pub fn act(&self, g: &GroupElement) -> Self {
        let left = linear_powers(&g.left, self.xdeg);
        let right = linear_powers(&g.right, self.ydeg);
        let mut out = Self::zero(self.xdeg, self.ydeg);
        for ((i, j), c) in self.terms() {
            for (k, l_coef) in left[i]
                .coeffs
                .iter()
                .enumerate()
                .filter(|(_, t)| !t.is_zero())
            {
                let cl = c * l_coef;
                for (l, r_coef) in right[j]
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| !t.is_zero())
                {
                    *out.coeff_mut(k, l) += &cl * r_coef;
                }
            }
        }
        out
    }
}

impl fmt::Debug for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BiForm({}, {}: {})",
            self.xdeg,
            self.ydeg,
            crate::formio::print_biform(self)
        )
    }
}

impl fmt::Display for BiForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::formio::print_biform(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    fn mono(a: usize, b: usize, i: usize, j: usize) -> BiForm {
        BiForm::monomial(a, b, i, j).unwrap()
    }

    #[test]
    fn monomial_examples() {
        // x^3 X^4 Y
        let m = mono(3, 5, 0, 1);
        assert_eq!(
            m.terms().map(|(ij, _)| ij).collect::<Vec<_>>(),
            vec![(0, 1)]
        );
        assert_eq!(m.to_string(), "x^3*X^4*Y");
        assert_eq!(mono(0, 0, 0, 0).to_string(), "1");
        assert_eq!(mono(1, 1, 1, 0).to_string(), "y*X");
        assert!(BiForm::monomial(1, 1, 2, 0).is_err());
        assert!(BiForm::monomial(1, 1, 0, 2).is_err());
    }

    #[test]
    fn derivative_examples() {
        // d/dX of X^2 Y in bidegree (0, 3) is 2XY
        let p = mono(0, 3, 0, 1);
        let d = p.partial_derivative(Var::UpperX, 1);
        assert_eq!(d, mono(0, 2, 0, 1).scale(&rat(2)));

        // d^2/dx^2 of y^3 vanishes
        let q = mono(3, 0, 3, 0);
        let d = q.partial_derivative(Var::LowerX, 2);
        assert_eq!(d.bidegree(), (1, 0));
        assert!(d.is_zero());

        // order beyond the degree: zero form of degree 0 in that slot
        let d = q.partial_derivative(Var::LowerY, 4);
        assert_eq!(d.bidegree(), (0, 0));
        assert!(d.is_zero());

        // d^3/dy^3 of y^3 = 6
        assert_eq!(
            q.partial_derivative(Var::LowerY, 3),
            BiForm::new(0, 0, vec![rat(6)]).unwrap()
        );
    }

    #[test]
    fn scale_example() {
        let p = mono(1, 1, 0, 0).scale(&ratio(3, 2));
        assert_eq!(p.coeff(0, 0), &ratio(3, 2));
        assert_eq!(p.to_string(), "3/2*x*X");
    }

    #[test]
    fn add_rejects_mismatch() {
        assert!(mono(1, 1, 0, 0).add(&mono(1, 2, 0, 0)).is_err());
    }

    #[test]
    fn action_examples() {
        let p = mono(3, 5, 1, 2).add(&mono(3, 5, 0, 0)).unwrap();
        assert_eq!(p.act(&GroupElement::identity()), p);

        let z = rat(0);
        let o = rat(1);
        let g = GroupElement::new(
            [[o.clone(), o.clone()], [z.clone(), o.clone()]],
            [[o.clone(), z.clone()], [z.clone(), o.clone()]],
        )
        .unwrap();
        // y -> x + y
        let y = mono(1, 0, 1, 0);
        let expected = mono(1, 0, 0, 0).add(&y).unwrap();
        assert_eq!(y.act(&g), expected);

        // (-1, -1) is trivial on odd x odd
        let q = mono(3, 5, 2, 3).scale(&rat(7));
        assert_eq!(q.act(&GroupElement::central(true, true)), q);
        assert_eq!(
            q.act(&GroupElement::central(true, false)),
            q.scale(&rat(-1))
        );
        assert_eq!(
            q.act(&GroupElement::central(false, true)),
            q.scale(&rat(-1))
        );
    }

    #[test]
    fn rejects_non_unimodular() {
        let two = rat(2);
        let z = rat(0);
        let o = rat(1);
        assert!(GroupElement::new(
            [[two.clone(), z.clone()], [z.clone(), o.clone()]],
            [[o.clone(), z.clone()], [z, o]]
        )
        .is_err());
    }

    #[test]
    fn binary_form_derivative() {
        // X^2 Y^2 -> d/dY = 2 X^2 Y
        let f = BinaryForm::monomial(4, 2).unwrap();
        let d = f.derivative(true, 1);
        assert_eq!(d, BinaryForm::monomial(3, 1).unwrap().scale(&rat(2)));
        assert!(f.derivative(false, 5).is_zero());
    }
}
