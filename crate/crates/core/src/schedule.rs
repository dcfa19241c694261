//! Choice of bi-transvectant `T^(r,s) : V_(3,b) × V_(a',b') → V_(a'',b'')`
//! for each odd `b >= 5`, dispatched on `b mod 5` with `b = 7` handled
//! separately.
//!
//! Only `(r, s)` and `(a', b')` are stored per family. The target, `c` and
//! `N` are recomputed from dimensions, and every row is checked against the
//! constraints the construction needs: `c` odd and in `{1, 3}`, `a'` and `b'`
//! odd, and `dim V_(3,b) > c · dim V_(a'',b'')`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::transvectants::{dim_bidegree, TransvectantSpec};

/// Which row of the schedule applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `b = 5n`, `n` odd.
    B5n,
    /// `b = 5n + 1`, `n` even.
    B5n1,
    /// `b = 5n + 2`, `n` odd, `n > 1`.
    B5n2,
    /// `b = 5n + 3`, `n` even.
    B5n3,
    /// `b = 5n + 4`, `n` odd.
    B5n4,
    /// `b = 7`.
    B7,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::B5n,
        Family::B5n1,
        Family::B5n2,
        Family::B5n3,
        Family::B5n4,
        Family::B7,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::B5n => "B5n",
            Family::B5n1 => "B5n1",
            Family::B5n2 => "B5n2",
            Family::B5n3 => "B5n3",
            Family::B5n4 => "B5n4",
            Family::B7 => "B7",
        }
    }

    /// Human label of the residue class, e.g. `5n+3`.
    pub fn label(self) -> &'static str {
        match self {
            Family::B5n => "5n",
            Family::B5n1 => "5n+1",
            Family::B5n2 => "5n+2",
            Family::B5n3 => "5n+3",
            Family::B5n4 => "5n+4",
            Family::B7 => "7",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One row of the schedule together with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub b: usize,
    /// Table parameter with `b = 5n + k`; `None` for `b = 7`.
    pub n: Option<usize>,
    pub rs: (usize, usize),
    /// `(a', b')`.
    pub src2: (usize, usize),
    /// `(a'', b'')`.
    pub target: (usize, usize),
    /// `dim V_(a',b') - dim V_(a'',b'')`, the Grassmannian rank.
    pub c: usize,
    /// Fiber dimension `dim P V_(3,b) - dim G(c, V_(a',b'))`.
    pub n_fiber: usize,
    pub family: Family,
}

/// `dim G(c, V)` for `dim V = n`.
pub fn grassmannian_dim(c: usize, n: usize) -> usize {
    c * (n - c)
}

impl Schedule {
    fn build(
        b: usize,
        n: Option<usize>,
        family: Family,
        rs: (usize, usize),
        src2: (usize, usize),
    ) -> Result<Self, Error> {
        let spec = TransvectantSpec::new(rs.0, rs.1, (3, b), src2)?;
        let dim2 = dim_bidegree(src2);
        let dim3 = dim_bidegree(spec.target);
        let c = dim2
            .checked_sub(dim3)
            .filter(|&c| c > 0)
            .ok_or_else(|| Error::InvalidOrder(format!("non-positive c for b = {b}")))?;
        let n_fiber = (dim_bidegree((3, b)) - 1)
            .checked_sub(grassmannian_dim(c, dim2))
            .ok_or_else(|| Error::InvalidOrder(format!("negative N for b = {b}")))?;
        let s = Self {
            b,
            n,
            rs,
            src2,
            target: spec.target,
            c,
            n_fiber,
            family,
        };
        s.check_invariants()?;
        Ok(s)
    }

    /// The bi-transvectant this row selects.
    pub fn spec(&self) -> TransvectantSpec {
        TransvectantSpec::new(self.rs.0, self.rs.1, (3, self.b), self.src2)
            .expect("validated at construction")
    }

    pub fn dim_source(&self) -> usize {
        dim_bidegree((3, self.b))
    }

    pub fn dim_src2(&self) -> usize {
        dim_bidegree(self.src2)
    }

    pub fn dim_target(&self) -> usize {
        dim_bidegree(self.target)
    }

    /// Re-checks every structural constraint of the row.
    pub fn check_invariants(&self) -> Result<(), Error> {
        let fail = |what: &str| Err(Error::InvalidOrder(format!("b = {}: {what}", self.b)));
        if self.c != self.dim_src2() - self.dim_target() {
            return fail("c differs from the dimension difference");
        }
        if self.c != 1 && self.c != 3 {
            return fail("c not in {1, 3}");
        }
        if self.src2.0.is_multiple_of(2) || self.src2.1.is_multiple_of(2) {
            return fail("a' or b' is even");
        }
        if self.dim_source() <= self.c * self.dim_target() {
            return fail("dim V_(3,b) <= c dim V_(a'',b'')");
        }
        if self.n_fiber != (self.dim_source() - 1) - grassmannian_dim(self.c, self.dim_src2()) {
            return fail("N differs from the dimension count");
        }
        let (r, s) = self.rs;
        if self.target != (3 + self.src2.0 - 2 * r, self.b + self.src2.1 - 2 * s) {
            return fail("target bidegree inconsistent with (r, s)");
        }
        Ok(())
    }
}

/// The schedule row for odd `b >= 5`.
pub fn schedule_for(b: i64) -> Result<Schedule, Error> {
    if b < 5 || b % 2 == 0 {
        return Err(Error::BOutOfRange(b));
    }
    let b = b as usize;
    if b == 7 {
        return Schedule::build(b, None, Family::B7, (2, 3), (3, 3));
    }
    let n = b / 5;
    let (family, rs, src2) = match b % 5 {
        0 => (Family::B5n, (3, n), (3, n)),
        1 => (Family::B5n1, (1, 3 * n + 1), (1, 3 * n + 1)),
        2 => (Family::B5n2, (3, n), (3, n)),
        3 => (Family::B5n3, (3, n), (3, n + 1)),
        _ => (Family::B5n4, (1, 3 * n + 3), (1, 3 * n + 4)),
    };
    // Parity of n is forced by b odd; the checks document it.
    let n_even = n.is_multiple_of(2);
    let parity_ok = match family {
        Family::B5n1 | Family::B5n3 => n_even,
        _ => !n_even,
    };
    if !parity_ok || (family == Family::B5n2 && n <= 1) {
        return Err(Error::BOutOfRange(b as i64));
    }
    Schedule::build(b, Some(n), family, rs, src2)
}

/// Bidegree `(3, 2N + 1)` of the canonical model of a general trigonal
/// curve of genus `g = 4N` on `P^1 x P^1`.
pub fn genus_to_bidegree(g: i64) -> Result<(usize, usize), Error> {
    if g < 5 || g % 4 != 0 {
        return Err(Error::GenusOutOfRange(g));
    }
    Ok((3, (2 * (g / 4) + 1) as usize))
}

/// `dim P V_(3,b) - dim SL2 x SL2 = 4b - 3`.
pub fn moduli_dimension(b: usize) -> usize {
    4 * (b + 1) - 1 - 6
}
