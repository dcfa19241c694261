//! Certificates for the non-degeneracy of `v ↦ ker T(v, ·)`.
//!
//! The map `V_(3,b) ⇢ G(c, V_(a',b'))` is defined somewhere and dominant as
//! soon as there are `v` and `w_1, ..., w_c` with
//!
//! 1. the `w_i` linearly independent,
//! 2. `T(v, w_i) = 0` for every `i`,
//! 3. `T(v, ·) : V_(a',b') → V_(a'',b'')` surjective,
//! 4. `(T(·, w_1), ..., T(·, w_c)) : V_(3,b) → V_(a'',b'')^c` surjective.
//!
//! Witness mode checks the explicit vectors from [`crate::witnesses`].
//! Generic mode draws a random integer `v`, takes `w_i` to be a basis of
//! `ker T(v, ·)`, and checks the same four conditions; since they are open
//! conditions a single good point suffices.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::forms::BiForm;
use crate::linalg::{kernel_basis, rank, rank_of_vectors, rat, solve_membership, Rational};
use crate::schedule::{schedule_for, Schedule};
use crate::transvectants::BiTransvectant;
use crate::witnesses::{tamper, witnesses_for_schedule, Mutation, WitnessSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Mode {
    Witness,
    Generic,
    Both,
}

impl Mode {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "witness" => Some(Mode::Witness),
            "generic" => Some(Mode::Generic),
            "both" => Some(Mode::Both),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Witness => "witness",
            Mode::Generic => "generic",
            Mode::Both => "both",
        }
    }
}

/// Outcome of one condition: `pass` iff `rank == required`.
///
/// For condition (ii) `rank` counts the `w_i` with `T(v, w_i) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub pass: bool,
    pub rank: usize,
    pub required: usize,
}

impl Condition {
    fn new(rank: usize, required: usize, extra: bool) -> Self {
        Self {
            pass: rank == required && extra,
            rank,
            required,
        }
    }

    fn and(self, other: Self) -> Self {
        Self {
            pass: self.pass && other.pass,
            ..self
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub schedule: Schedule,
    pub mode: Mode,
    pub cond_i: Condition,
    pub cond_ii: Condition,
    pub cond_iii: Condition,
    pub cond_iv: Condition,
    /// `dim ker T(v, ·)`.
    pub kernel_dim: usize,
    /// Whether `span{w_i} = ker T(v, ·)`.
    pub kernel_equals_span: bool,
    /// Random samples drawn (generic mode); 0 in witness mode.
    pub attempts: usize,
    pub elapsed_ms: u64,
    pub mutation: Option<Mutation>,
}

impl VerificationReport {
    pub fn b(&self) -> usize {
        self.schedule.b
    }

    pub fn pass(&self) -> bool {
        self.cond_i.pass && self.cond_ii.pass && self.cond_iii.pass && self.cond_iv.pass
    }

    /// Names of the failing conditions, in order.
    pub fn failed(&self) -> Vec<&'static str> {
        [
            ("i", self.cond_i),
            ("ii", self.cond_ii),
            ("iii", self.cond_iii),
            ("iv", self.cond_iv),
        ]
        .into_iter()
        .filter(|(_, c)| !c.pass)
        .map(|(name, _)| name)
        .collect()
    }
}

/// Parameters of generic mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GenericOptions {
    pub seed: u64,
    /// Coefficients are drawn uniformly from `[-height, height]`.
    pub height: u32,
    pub max_attempts: usize,
}

impl Default for GenericOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            height: 10,
            max_attempts: 5,
        }
    }
}

#[cfg(not(target_arch = "wasm32"))]
mod clock {
    pub struct Stopwatch(std::time::Instant);

    impl Stopwatch {
        pub fn start() -> Self {
            Self(std::time::Instant::now())
        }

        pub fn elapsed_ms(&self) -> u64 {
            self.0.elapsed().as_millis() as u64
        }
    }
}

#[cfg(target_arch = "wasm32")]
mod clock {
    pub struct Stopwatch;

    impl Stopwatch {
        pub fn start() -> Self {
            Self
        }

        pub fn elapsed_ms(&self) -> u64 {
            0
        }
    }
}

struct Checks {
    cond_i: Condition,
    cond_ii: Condition,
    cond_iii: Condition,
    cond_iv: Condition,
    kernel_dim: usize,
    kernel_equals_span: bool,
}

/// Evaluates all four conditions; nothing short-circuits.
fn check_conditions(
    sched: &Schedule,
    t: &BiTransvectant,
    v: &BiForm,
    ws: &[BiForm],
) -> Result<Checks, Error> {
    let dim_target = sched.dim_target();

    let w_vectors: Vec<Vec<Rational>> = ws.iter().map(|w| w.coeffs().to_vec()).collect();
    let w_rank = rank_of_vectors(&w_vectors)?;
    let cond_i = Condition::new(w_rank, sched.c, ws.len() == sched.c);

    let mut vanishing = 0;
    for w in ws {
        if t.apply(v, w)?.is_zero() {
            vanishing += 1;
        }
    }
    let cond_ii = Condition::new(vanishing, ws.len(), !ws.is_empty());

    let right = t.right_slot_matrix(v)?;
    let kernel = kernel_basis(&right);
    let rank_iii = right.cols() - kernel.len();
    let cond_iii = Condition::new(rank_iii, dim_target, true);

    let cond_iv = if ws.is_empty() {
        Condition::new(0, sched.c * dim_target, false)
    } else {
        let stacked = t.left_slot_stacked(ws)?;
        Condition::new(rank(&stacked), ws.len() * dim_target, true)
    };

    let mut kernel_equals_span = kernel.len() == w_rank;
    for w in &w_vectors {
        if !kernel_equals_span {
            break;
        }
        kernel_equals_span = solve_membership(w, &kernel)?;
    }

    Ok(Checks {
        cond_i,
        cond_ii,
        cond_iii,
        cond_iv,
        kernel_dim: kernel.len(),
        kernel_equals_span,
    })
}

fn report(
    sched: &Schedule,
    mode: Mode,
    checks: Checks,
    attempts: usize,
    elapsed_ms: u64,
) -> VerificationReport {
    VerificationReport {
        schedule: *sched,
        mode,
        cond_i: checks.cond_i,
        cond_ii: checks.cond_ii,
        cond_iii: checks.cond_iii,
        cond_iv: checks.cond_iv,
        kernel_dim: checks.kernel_dim,
        kernel_equals_span: checks.kernel_equals_span,
        attempts,
        elapsed_ms,
        mutation: None,
    }
}

/// Checks an arbitrary witness set against the row `sched`.
pub fn verify_witness_set(sched: &Schedule, set: &WitnessSet) -> Result<VerificationReport, Error> {
    let clock = clock::Stopwatch::start();
    let t = BiTransvectant::new(sched.spec());
    let checks = check_conditions(sched, &t, &set.v, &set.ws)?;
    Ok(report(sched, Mode::Witness, checks, 0, clock.elapsed_ms()))
}

/// Checks the explicit witness vectors for `b`.
pub fn verify_witness(b: i64) -> Result<VerificationReport, Error> {
    let sched = schedule_for(b)?;
    verify_witness_set(&sched, &witnesses_for_schedule(&sched))
}

/// Witness mode after applying `mutation` to the witness vectors.
pub fn verify_tampered(b: i64, mutation: Mutation) -> Result<VerificationReport, Error> {
    let sched = schedule_for(b)?;
    let set = tamper(&witnesses_for_schedule(&sched), mutation);
    let mut rep = verify_witness_set(&sched, &set)?;
    rep.mutation = Some(mutation);
    Ok(rep)
}

fn rng_for(b: usize, seed: u64) -> ChaCha8Rng {
    let mixed = seed ^ (b as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    ChaCha8Rng::seed_from_u64(mixed)
}

fn random_form(rng: &mut ChaCha8Rng, a: usize, b: usize, height: u32) -> BiForm {
    let h = height as i64;
    let coeffs = (0..(a + 1) * (b + 1))
        .map(|_| rat(rng.gen_range(-h..=h)))
        .collect();
    BiForm::new(a, b, coeffs).expect("shape matches")
}

/// Random-point certificate for `b`.
///
/// Resamples `v` until `T(v, ·)` is surjective or `max_attempts` samples
/// have been drawn; the last sample is reported either way.
pub fn verify_generic(b: i64, opts: &GenericOptions) -> Result<VerificationReport, Error> {
    let sched = schedule_for(b)?;
    let clock = clock::Stopwatch::start();
    let t = BiTransvectant::new(sched.spec());
    let mut rng = rng_for(sched.b, opts.seed);
    let attempts_allowed = opts.max_attempts.max(1);

    let mut attempts = 0;
    let (v, kernel) = loop {
        attempts += 1;
        let v = random_form(&mut rng, 3, sched.b, opts.height);
        let right = t.right_slot_matrix(&v)?;
        let kernel = kernel_basis(&right);
        let surjective = right.cols() - kernel.len() == sched.dim_target();
        if surjective || attempts >= attempts_allowed {
            break (v, kernel);
        }
    };
    let (a2, b2) = sched.src2;
    let ws: Vec<BiForm> = kernel
        .into_iter()
        .map(|k| BiForm::new(a2, b2, k))
        .collect::<Result<_, _>>()?;
    let checks = check_conditions(&sched, &t, &v, &ws)?;
    Ok(report(
        &sched,
        Mode::Generic,
        checks,
        attempts,
        clock.elapsed_ms(),
    ))
}

/// Runs both modes; every condition must hold in both.
pub fn verify_both(b: i64, opts: &GenericOptions) -> Result<VerificationReport, Error> {
    let w = verify_witness(b)?;
    let g = verify_generic(b, opts)?;
    Ok(VerificationReport {
        mode: Mode::Both,
        cond_i: w.cond_i.and(g.cond_i),
        cond_ii: w.cond_ii.and(g.cond_ii),
        cond_iii: w.cond_iii.and(g.cond_iii),
        cond_iv: w.cond_iv.and(g.cond_iv),
        attempts: g.attempts,
        elapsed_ms: w.elapsed_ms + g.elapsed_ms,
        kernel_equals_span: w.kernel_equals_span && g.kernel_equals_span,
        ..w
    })
}

/// Verifies one `b` in the requested mode.
pub fn verify(b: i64, mode: Mode, opts: &GenericOptions) -> Result<VerificationReport, Error> {
    match mode {
        Mode::Witness => verify_witness(b),
        Mode::Generic => verify_generic(b, opts),
        Mode::Both => verify_both(b, opts),
    }
}

/// One entry of a sweep: the requested `b` and its outcome.
pub type RangeItem = (i64, Result<VerificationReport, Error>);

/// Verifies every `b` in `bs`, on up to `jobs` worker threads. Results come
/// back in input order and errors stay with their item.
pub fn verify_range(bs: &[i64], mode: Mode, opts: &GenericOptions, jobs: usize) -> Vec<RangeItem> {
    let one = |&b: &i64| (b, verify(b, mode, opts));
    #[cfg(feature = "parallel")]
    if jobs > 1 && bs.len() > 1 {
        use rayon::prelude::*;
        if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            return pool.install(|| bs.par_iter().map(one).collect());
        }
    }
    let _ = jobs;
    bs.iter().map(one).collect()
}
