//! Text format for bi-forms and the JSON report schema.
//!
//! Grammar (whitespace is insignificant):
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := [rational] ['*'] varpow ('*'? varpow)*  |  rational
//! varpow   := ('x'|'y'|'X'|'Y') ['^' nonneg-int]
//! rational := int ['/' positive-int]
//! ```
//!
//! Every term must have the same bidegree: `(deg_x + deg_y, deg_X + deg_Y)`.
//! A literal `0` carries no bidegree and takes the expected one.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::forms::BiForm;
use crate::linalg::Rational;
use crate::schedule::Schedule;
use crate::verifier::{Mode, VerificationReport};

struct Term {
    pos: usize,
    coeff: Rational,
    // exponents of x, y, X, Y
    exps: [usize; 4],
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse as integer"))
    }

    fn exponent(&mut self) -> Result<usize, Error> {
        let start = self.pos;
        let e = self.integer()?;
        usize::try_from(e).map_err(|_| Error::Syntax {
            pos: start,
            msg: "exponent too large".into(),
        })
    }

    fn rational(&mut self) -> Result<Rational, Error> {
        let num = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let den = self.integer()?;
            if den.is_zero() {
                return Err(Error::Syntax {
                    pos: at,
                    msg: "zero denominator".into(),
                });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn varpow(&mut self, exps: &mut [usize; 4]) -> Result<(), Error> {
        let c = self.peek().ok_or_else(|| self.err("expected variable"))?;
        let slot = match c {
            b'x' => 0,
            b'y' => 1,
            b'X' => 2,
            b'Y' => 3,
            _ => return Err(self.err(format!("unexpected character '{}'", c as char))),
        };
        self.pos += 1;
        let mut e = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            e = self.exponent()?;
        }
        exps[slot] += e;
        Ok(())
    }

    fn term(&mut self, sign: bool) -> Result<Term, Error> {
        self.skip_ws();
        let pos = self.pos;
        let mut exps = [0usize; 4];
        let mut coeff = Rational::one();
        let mut saw_any = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.rational()?;
            saw_any = true;
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.varpow(&mut exps)?;
            }
        }
        loop {
            match self.peek() {
                Some(b'*') => {
                    if !saw_any {
                        return Err(self.err("unexpected '*'"));
                    }
                    self.pos += 1;
                    self.varpow(&mut exps)?;
                }
                Some(b'x' | b'y' | b'X' | b'Y') => self.varpow(&mut exps)?,
                _ => break,
            }
            saw_any = true;
        }
        if !saw_any {
            return Err(self.err("expected a term"));
        }
        if sign {
            coeff = -coeff;
        }
        Ok(Term { pos, coeff, exps })
    }

    fn expr(&mut self) -> Result<Vec<Term>, Error> {
        let mut terms = Vec::new();
        let mut negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            terms.push(self.term(negative)?);
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(c) => return Err(self.err(format!("unexpected character '{}'", c as char))),
            }
            self.pos += 1;
        }
        Ok(terms)
    }
}

/// Parses a bi-form; like terms are combined.
pub fn parse_biform(text: &str, expected: Option<(usize, usize)>) -> Result<BiForm, Error> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    let terms = parser.expr()?;

    let mut bidegree: Option<(usize, usize)> = None;
    for t in &terms {
        if t.coeff.is_zero() && t.exps == [0; 4] {
            continue;
        }
        let deg = (t.exps[0] + t.exps[1], t.exps[2] + t.exps[3]);
        match bidegree {
            None => bidegree = Some(deg),
            Some(d) if d != deg => {
                return Err(Error::Inhomogeneous {
                    pos: t.pos,
                    expected: d,
                    found: deg,
                })
            }
            _ => {}
        }
    }
    let (a, b) = match (bidegree, expected) {
        (Some(found), Some(exp)) if found != exp => {
            return Err(Error::BidegreeMismatch {
                expected: exp,
                found,
            })
        }
        (Some(d), _) => d,
        (None, Some(exp)) => exp,
        (None, None) => (0, 0),
    };
    let mut form = BiForm::zero(a, b);
    for t in terms {
        if t.exps == [0; 4] && t.coeff.is_zero() {
            continue;
        }
        *form.coeff_mut(t.exps[1], t.exps[3]) += t.coeff;
    }
    Ok(form)
}

fn push_var(out: &mut Vec<String>, name: char, e: usize) {
    match e {
        0 => {}
        1 => out.push(name.to_string()),
        _ => out.push(format!("{name}^{e}")),
    }
}

/// Canonical text: row-major term order, unit coefficients and exponents
/// omitted, `"0"` for the zero form.
pub fn print_biform(p: &BiForm) -> String {
    let (a, b) = p.bidegree();
    let mut out = String::new();
    for ((i, j), c) in p.terms() {
        let mut factors = Vec::new();
        push_var(&mut factors, 'x', a - i);
        push_var(&mut factors, 'y', i);
        push_var(&mut factors, 'X', b - j);
        push_var(&mut factors, 'Y', j);
        let mag = c.abs();
        if !mag.is_one() || factors.is_empty() {
            let m = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("{}/{}", mag.numer(), mag.denom())
            };
            factors.insert(0, m);
        }
        let body = factors.join("*");
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Per-condition verdicts inside a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionsJson {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
    pub iv: bool,
}

/// Wire form of a verification report; one object per line in `json` output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema: u32,
    pub b: i64,
    pub family: String,
    pub r: usize,
    pub s: usize,
    pub a2: usize,
    pub b2: usize,
    pub a3: usize,
    pub b3: usize,
    pub c: usize,
    #[serde(rename = "N")]
    pub n_fiber: usize,
    pub mode: String,
    pub conditions: ConditionsJson,
    pub rank_iii: usize,
    pub rank_iv: usize,
    pub kernel_dim: usize,
    pub attempts: usize,
    pub pass: bool,
    pub elapsed_ms: u64,
    /// Present only when the report could not be produced.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

pub const SCHEMA_VERSION: u32 = 1;

impl ReportJson {
    pub fn from_report(report: &VerificationReport) -> Self {
        let sched = &report.schedule;
        let mode = match report.mode {
            Mode::Witness => "witness",
            Mode::Generic => "generic",
            Mode::Both => "both",
        };
        Self {
            schema: SCHEMA_VERSION,
            b: sched.b as i64,
            family: sched.family.name().to_string(),
            r: sched.rs.0,
            s: sched.rs.1,
            a2: sched.src2.0,
            b2: sched.src2.1,
            a3: sched.target.0,
            b3: sched.target.1,
            c: sched.c,
            n_fiber: sched.n_fiber,
            mode: mode.to_string(),
            conditions: ConditionsJson {
                i: report.cond_i.pass,
                ii: report.cond_ii.pass,
                iii: report.cond_iii.pass,
                iv: report.cond_iv.pass,
            },
            rank_iii: report.cond_iii.rank,
            rank_iv: report.cond_iv.rank,
            kernel_dim: report.kernel_dim,
            attempts: report.attempts,
            pass: report.pass(),
            elapsed_ms: report.elapsed_ms,
            error: None,
        }
    }

    /// Report for an input that never reached verification (e.g. even `b`).
    pub fn input_error(b: i64, mode: Mode, err: &Error) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            b,
            family: String::new(),
            r: 0,
            s: 0,
            a2: 0,
            b2: 0,
            a3: 0,
            b3: 0,
            c: 0,
            n_fiber: 0,
            mode: mode.as_str().to_string(),
            conditions: ConditionsJson {
                i: false,
                ii: false,
                iii: false,
                iv: false,
            },
            rank_iii: 0,
            rank_iv: 0,
            kernel_dim: 0,
            attempts: 0,
            pass: false,
            elapsed_ms: 0,
            error: Some(err.to_string()),
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// One schedule row as a JSON object, keys in table order.
pub fn schedule_json(s: &Schedule) -> serde_json::Value {
    serde_json::json!({
        "b": s.b,
        "family": s.family.name(),
        "n": s.n,
        "r": s.rs.0,
        "s": s.rs.1,
        "a2": s.src2.0,
        "b2": s.src2.1,
        "a3": s.target.0,
        "b3": s.target.1,
        "c": s.c,
        "N": s.n_fiber,
    })
}
