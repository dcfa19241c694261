//! Explicit vectors `v ∈ V_(3,b)` and `w_1, ..., w_c ∈ V_(a',b')` for every
//! schedule family, written symbolically in `n` (and `m = n/2` for the
//! `n ≡ 4 (mod 5)` branch of the `5n+3` family).
//!
//! Terms are written `X^p Y^q x^s y^t`; the coefficients are exactly the
//! binomials and fractions of the construction. Nothing is adjusted to make
//! the checks pass: if a transcribed vector fails a condition the verifier
//! reports it.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::forms::BiForm;
use crate::linalg::{binomial, rat, ratio, Rational};
use crate::schedule::{schedule_for, Family, Schedule};
use crate::transvectants::BiTransvectant;

/// Which construction the `5n+3` family uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    /// `n ≢ 4 (mod 5)`.
    Standard,
    /// `n ≡ 4 (mod 5)`, written with `n = 2m`.
    NFourMod5,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessSet {
    pub v: BiForm,
    pub ws: Vec<BiForm>,
    pub family: Family,
    /// Set only for the `5n+3` family.
    pub variant: Option<Variant>,
}

/// Deliberate breakages used to exercise failure paths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mutation {
    /// `w_1 := 0`.
    ZeroW,
    /// `w_2 := w_1`, or a second copy of `w_1` when `c = 1`.
    DuplicateW,
    /// `v := v + m` for the first grid monomial `m` with `T(m, w_1) != 0`.
    PerturbV,
}

impl Mutation {
    pub const ALL: [Mutation; 3] = [Mutation::ZeroW, Mutation::DuplicateW, Mutation::PerturbV];

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "zero_w" => Some(Mutation::ZeroW),
            "duplicate_w" => Some(Mutation::DuplicateW),
            "perturb_v" => Some(Mutation::PerturbV),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Mutation::ZeroW => "zero_w",
            Mutation::DuplicateW => "duplicate_w",
            Mutation::PerturbV => "perturb_v",
        }
    }
}

/// Accumulates `coef · X^p Y^q x^s y^t` terms into a bi-form.
struct Terms(BiForm);

impl Terms {
    fn new(a: usize, b: usize) -> Self {
        Terms(BiForm::zero(a, b))
    }

    #[track_caller]
    fn add(mut self, coef: Rational, (p, q): (usize, usize), (s, t): (usize, usize)) -> Self {
        let (a, b) = self.0.bidegree();
        assert_eq!(
            (s + t, p + q),
            (a, b),
            "term X^{p}Y^{q}x^{s}y^{t} has wrong bidegree"
        );
        *self.0.coeff_mut(t, q) += coef;
        self
    }

    fn done(self) -> BiForm {
        self.0
    }
}

fn c(n: usize, k: usize) -> Rational {
    binomial(n as u64, k as i64)
}

fn one() -> Rational {
    rat(1)
}

fn neg1() -> Rational {
    rat(-1)
}

fn frac(p: usize, q: usize) -> Rational {
    ratio(p as i64, q as i64)
}

const X3: (usize, usize) = (3, 0);
const X2Y: (usize, usize) = (2, 1);
const XY2: (usize, usize) = (1, 2);
const Y3: (usize, usize) = (0, 3);
const X1: (usize, usize) = (1, 0);
const Y1: (usize, usize) = (0, 1);

/// `b = 5n`: `c = 3`, `w_i ∈ V_(3,n)`.
fn family_5n(n: usize) -> (BiForm, Vec<BiForm>) {
    let b = 5 * n;
    let v = Terms::new(3, b)
        .add(c(b, n), (n, 4 * n), X3)
        .add(rat(3) * c(b, 2 * n), (2 * n, 3 * n), X2Y)
        .add(rat(3) * c(b, 2 * n), (3 * n, 2 * n), XY2)
        .add(c(b, n), (4 * n, n), Y3)
        .done();
    let w1 = Terms::new(3, n)
        .add(one(), (0, n), X3)
        .add(neg1(), (n, 0), X2Y)
        .done();
    let w2 = Terms::new(3, n)
        .add(one(), (0, n), X2Y)
        .add(neg1(), (n, 0), XY2)
        .done();
    let w3 = Terms::new(3, n)
        .add(one(), (0, n), XY2)
        .add(neg1(), (n, 0), Y3)
        .done();
    (v, vec![w1, w2, w3])
}

/// `b = 5n+1`: `c = 1`, `w ∈ V_(1,3n+1)`.
fn family_5n1(n: usize) -> (BiForm, Vec<BiForm>) {
    let b = 5 * n + 1;
    let v = Terms::new(3, b)
        .add(c(b, 2 * n), (3 * n + 1, 2 * n), X3)
        .add(rat(3) * c(b, n), (4 * n + 1, n), X2Y)
        .add(rat(3) * c(b, 2 * n), (2 * n, 3 * n + 1), XY2)
        .add(c(b, n), (n, 4 * n + 1), Y3)
        .done();
    // (X^(3n+1) - Y^(3n+1)) x - (X^n Y^(2n+1) - X^(2n+1) Y^n) y
    let w = Terms::new(1, 3 * n + 1)
        .add(one(), (3 * n + 1, 0), X1)
        .add(neg1(), (0, 3 * n + 1), X1)
        .add(neg1(), (n, 2 * n + 1), Y1)
        .add(one(), (2 * n + 1, n), Y1)
        .done();
    (v, vec![w])
}

/// `b = 5n+2`, `n > 1`: `c = 1`, `w ∈ V_(3,n)`.
fn family_5n2(n: usize) -> (BiForm, Vec<BiForm>) {
    let b = 5 * n + 2;
    let v = Terms::new(3, b)
        .add(one(), (n, 4 * n + 2), X3)
        .add(one(), (2 * n + 1, 3 * n + 1), X2Y)
        .add(one(), (3 * n + 1, 2 * n + 1), XY2)
        .add(one(), (4 * n + 2, n), Y3)
        .done();
    let w = Terms::new(3, n)
        .add(one(), (0, n), X2Y)
        .add(neg1(), (n, 0), XY2)
        .done();
    (v, vec![w])
}

/// The three vectors of the `5n+3` family, shared by both variants.
fn family_5n3_ws(n: usize) -> Vec<BiForm> {
    let d = n + 1;
    let w1 = Terms::new(3, d)
        .add(one(), (d, 0), Y3)
        .add(one(), (0, d), XY2)
        .done();
    let w2 = Terms::new(3, d)
        .add(one(), (d, 0), XY2)
        .add(one(), (0, d), X2Y)
        .done();
    let w3 = Terms::new(3, d)
        .add(one(), (d, 0), X2Y)
        .add(one(), (0, d), X3)
        .done();
    vec![w1, w2, w3]
}

/// `b = 5n+3`: `c = 3`, `w_i ∈ V_(3,n+1)`.
fn family_5n3(n: usize) -> (BiForm, Vec<BiForm>, Variant) {
    let b = 5 * n + 3;
    if n % 5 != 4 {
        let v = Terms::new(3, b)
            .add(c(b, n), (n, 4 * n + 3), X3)
            .add(c(b, 2 * n + 1), (2 * n + 1, 3 * n + 2), X2Y)
            .add(c(b, 2 * n + 1), (3 * n + 2, 2 * n + 1), XY2)
            .add(c(b, n), (4 * n + 3, n), Y3)
            .done();
        return (v, family_5n3_ws(n), Variant::Standard);
    }
    let m = n / 2;
    let v = Terms::new(3, b)
        .add(
            frac(7 * m + 3, m + 1) * frac(5 * m + 2, 3 * m + 2) * c(b, m),
            (m, 9 * m + 3),
            X3,
        )
        .add(one(), (9 * m + 5, m - 2), X3)
        .add(
            rat(3) * frac(5 * m + 2, 3 * m + 2) * c(b, 3 * m + 1),
            (3 * m + 1, 7 * m + 2),
            X2Y,
        )
        .add(rat(3) * c(b, 5 * m + 2), (5 * m + 2, 5 * m + 1), XY2)
        .add(
            frac(5 * m + 3, 3 * m + 1) * c(b, 7 * m + 3),
            (7 * m + 3, 3 * m),
            Y3,
        )
        .done();
    (v, family_5n3_ws(n), Variant::NFourMod5)
}

/// `b = 5n+4`: `c = 1`, `w ∈ V_(1,3n+4)`.
fn family_5n4(n: usize) -> (BiForm, Vec<BiForm>) {
    let b = 5 * n + 4;
    let v = Terms::new(3, b)
        .add(
            frac(3 * n + 4, n + 2) * frac(3 * n + 4, n + 1) * c(b, 2 * n + 1),
            (3 * n + 3, 2 * n + 1),
            X3,
        )
        .add(
            rat(3) * frac(3 * n + 4, n + 1) * c(b, n),
            (4 * n + 4, n),
            X2Y,
        )
        .add(rat(-3) * c(b, 2 * n + 1), (2 * n + 1, 3 * n + 3), XY2)
        .add(-frac(n + 2, 3 * n + 4) * c(b, n), (n, 4 * n + 4), Y3)
        .done();
    // (X^(3n+4) + Y^(3n+4)) x + (X^(2n+3) Y^(n+1) + X^(n+1) Y^(2n+3)) y
    let w = Terms::new(1, 3 * n + 4)
        .add(one(), (3 * n + 4, 0), X1)
        .add(one(), (0, 3 * n + 4), X1)
        .add(one(), (2 * n + 3, n + 1), Y1)
        .add(one(), (n + 1, 2 * n + 3), Y1)
        .done();
    (v, vec![w])
}

/// `b = 7`: `c = 1`, `w ∈ V_(3,3)`.
fn family_7() -> (BiForm, Vec<BiForm>) {
    let v = Terms::new(3, 7)
        .add(c(7, 3), (3, 4), X3)
        .add(rat(-9), (0, 7), X2Y)
        .add(c(7, 1), (6, 1), XY2)
        .add(c(7, 3), (4, 3), Y3)
        .done();
    // Y^3 x^3 + X^3 x y^2 + (X Y^2 + Y^3) y^3
    let w = Terms::new(3, 3)
        .add(one(), (0, 3), X3)
        .add(one(), (3, 0), XY2)
        .add(one(), (1, 2), Y3)
        .add(one(), (0, 3), Y3)
        .done();
    (v, vec![w])
}

/// Witness vectors for the schedule row of `b`.
pub fn witnesses_for(b: i64) -> Result<WitnessSet, Error> {
    let sched = schedule_for(b)?;
    Ok(witnesses_for_schedule(&sched))
}

pub fn witnesses_for_schedule(sched: &Schedule) -> WitnessSet {
    let n = sched.n.unwrap_or(0);
    let mut variant = None;
    let (v, ws) = match sched.family {
        Family::B5n => family_5n(n),
        Family::B5n1 => family_5n1(n),
        Family::B5n2 => family_5n2(n),
        Family::B5n3 => {
            let (v, ws, var) = family_5n3(n);
            variant = Some(var);
            (v, ws)
        }
        Family::B5n4 => family_5n4(n),
        Family::B7 => family_7(),
    };
    WitnessSet {
        v,
        ws,
        family: sched.family,
        variant,
    }
}

/// Applies a deliberate breakage to a witness set.
/// First grid index `(i, j)` of `V_(3,b)` whose monomial has a nonzero
/// transvectant with `w_1`.
fn visible_monomial(set: &WitnessSet) -> Option<(usize, usize)> {
    let (_, b) = set.v.bidegree();
    let sched = schedule_for(b as i64).ok()?;
    let w1 = set.ws.first()?;
    let m = BiTransvectant::new(sched.spec())
        .left_slot_matrix(w1)
        .ok()?;
    let col = (0..m.cols()).find(|&c| (0..m.rows()).any(|r| !m.get(r, c).is_zero()))?;
    Some((col / (b + 1), col % (b + 1)))
}

pub fn tamper(set: &WitnessSet, mutation: Mutation) -> WitnessSet {
    let mut out = set.clone();
    match mutation {
        Mutation::ZeroW => {
            let (a, b) = out.ws[0].bidegree();
            out.ws[0] = BiForm::zero(a, b);
        }
        Mutation::DuplicateW => {
            if out.ws.len() >= 2 {
                out.ws[1] = out.ws[0].clone();
            } else {
                out.ws.push(out.ws[0].clone());
            }
        }
        Mutation::PerturbV => {
            // A fixed monomial such as x^3 X^b is annihilated by every w_i
            // for most b, so pick one that w_1 is guaranteed to see.
            let (i, j) = visible_monomial(&out).unwrap_or((0, 0));
            let bump = out.v.coeff(i, j) + rat(1);
            *out.v.coeff_mut(i, j) = bump;
        }
    }
    out
}

impl WitnessSet {
    /// Every form is nonzero and the bidegrees match the schedule.
    pub fn is_well_formed(&self, sched: &Schedule) -> bool {
        self.ws.len() == sched.c
            && self.v.bidegree() == (3, sched.b)
            && !self.v.is_zero()
            && self
                .ws
                .iter()
                .all(|w| w.bidegree() == sched.src2 && !w.coeffs().iter().all(Zero::is_zero))
    }
}
