//! Random generators shared by the integration suites.
#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trigonal::forms::Mat2;
use trigonal::linalg::ratio;
use trigonal::{BiForm, BinaryForm, GroupElement, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=4))
}

pub fn binary_form(rng: &mut ChaCha8Rng, d: usize) -> BinaryForm {
    BinaryForm::new(d, (0..=d).map(|_| small_rational(rng)).collect()).unwrap()
}

pub fn biform(rng: &mut ChaCha8Rng, a: usize, b: usize) -> BiForm {
    BiForm::new(
        a,
        b,
        (0..(a + 1) * (b + 1))
            .map(|_| small_rational(rng))
            .collect(),
    )
    .unwrap()
}

fn mat_mul(p: &Mat2, q: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &p[i][0] * &q[0][j] + &p[i][1] * &q[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Random element of SL2(Q) as a product of shears and a diagonal.
pub fn sl2(rng: &mut ChaCha8Rng) -> Mat2 {
    let one = || ratio(1, 1);
    let zero = || ratio(0, 1);
    let upper = [[one(), small_rational(rng)], [zero(), one()]];
    let lower = [[one(), zero()], [small_rational(rng), one()]];
    let k = ratio(
        rng.gen_range(1..=3) * if rng.gen() { 1 } else { -1 },
        rng.gen_range(1..=3),
    );
    let diag = [[k.clone(), zero()], [zero(), ratio(1, 1) / k]];
    mat_mul(&mat_mul(&upper, &diag), &lower)
}

pub fn group_element(rng: &mut ChaCha8Rng) -> GroupElement {
    GroupElement::new(sl2(rng), sl2(rng)).unwrap()
}
