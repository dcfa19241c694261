//! Command-line front end.
//!
//! Exit codes: 0 when every requested verification passed (or a query
//! succeeded), 1 when some condition failed, 2 on usage or input errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::formio::{parse_biform, print_biform, schedule_json, ReportJson};
use crate::schedule::{genus_to_bidegree, moduli_dimension, schedule_for};
use crate::transvectants::{bi_transvect, dim_bidegree, TransvectantSpec};
use crate::verifier::{self, GenericOptions, Mode, VerificationReport};
use crate::witnesses::Mutation;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "trigonal",
    version,
    about = "Exact transvectants and non-degeneracy certificates for bidegree (3, b) forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verify the four conditions for one b.
    Verify(VerifyArgs),
    /// Verify every odd b in [from, to].
    VerifyRange(RangeArgs),
    /// Evaluate the (r, s)-th bi-transvectant of two bi-forms.
    Transvect(TransvectArgs),
    /// Print the bi-transvectant schedule for one b or a range.
    Schedule(ScheduleArgs),
    /// Dimension bookkeeping for a bidegree (3, b) or a genus.
    Dims(DimsArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Witness,
    Generic,
    Both,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Witness => Mode::Witness,
            ModeArg::Generic => Mode::Generic,
            ModeArg::Both => Mode::Both,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MutationArg {
    #[value(name = "zero_w")]
    ZeroW,
    #[value(name = "duplicate_w")]
    DuplicateW,
    #[value(name = "perturb_v")]
    PerturbV,
}

impl From<MutationArg> for Mutation {
    fn from(m: MutationArg) -> Self {
        match m {
            MutationArg::ZeroW => Mutation::ZeroW,
            MutationArg::DuplicateW => Mutation::DuplicateW,
            MutationArg::PerturbV => Mutation::PerturbV,
        }
    }
}

#[derive(Debug, Args)]
struct CommonArgs {
    #[arg(long, value_enum, default_value = "witness")]
    mode: ModeArg,
    /// Seed for generic mode.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Random coefficients are drawn from [-height, height].
    #[arg(long, default_value_t = 10)]
    height: u32,
    /// Maximum random samples per b in generic mode.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    attempts: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Report elapsed_ms as 0 so output is byte-stable.
    #[arg(long)]
    no_timing: bool,
}

impl CommonArgs {
    fn generic(&self) -> GenericOptions {
        GenericOptions {
            seed: self.seed,
            height: self.height,
            max_attempts: self.attempts as usize,
        }
    }
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long = "b", allow_negative_numbers = true)]
    b: i64,
    /// Break the witness vectors before checking (witness mode only).
    #[arg(long, value_enum)]
    tamper: Option<MutationArg>,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct RangeArgs {
    #[arg(long, allow_negative_numbers = true)]
    from: i64,
    #[arg(long, allow_negative_numbers = true)]
    to: i64,
    /// Worker threads.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Debug, Args)]
struct TransvectArgs {
    #[arg(long)]
    r: usize,
    #[arg(long)]
    s: usize,
    #[arg(long)]
    lhs: String,
    #[arg(long)]
    rhs: String,
    /// Bidegree of the left form as "a,b" (needed only when it is "0").
    #[arg(long, value_parser = parse_pair)]
    lhs_bidegree: Option<(usize, usize)>,
    /// Bidegree of the right form as "a,b" (needed only when it is "0").
    #[arg(long, value_parser = parse_pair)]
    rhs_bidegree: Option<(usize, usize)>,
}

#[derive(Debug, Args)]
struct ScheduleArgs {
    #[arg(long = "b", allow_negative_numbers = true, conflicts_with_all = ["from", "to"])]
    b: Option<i64>,
    #[arg(long, requires = "to")]
    from: Option<i64>,
    #[arg(long, requires = "from")]
    to: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct DimsArgs {
    #[arg(
        long = "b",
        conflicts_with = "genus",
        required_unless_present = "genus"
    )]
    b: Option<i64>,
    #[arg(long)]
    genus: Option<i64>,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected \"a,b\"")?;
    let a = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{rendered}");
            } else {
                let _ = write!(out, "{rendered}");
            }
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify(a) => cmd_verify(a, out),
        Command::VerifyRange(a) => cmd_verify_range(a, out),
        Command::Transvect(a) => cmd_transvect(a, out),
        Command::Schedule(a) => cmd_schedule(a, out),
        Command::Dims(a) => cmd_dims(a, out),
    };
    match result {
        Ok(code) => code,
        Err(CliError::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

enum CliError {
    Input(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<crate::Error> for CliError {
    fn from(e: crate::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

const TABLE_HEADER: &str =
    "    b  family  (r,s)      (a',b')    (a'',b'')   c     N  mode     i   ii  iii  iv   rank_iii  rank_iv  ker  tries  verdict";

fn yes_no(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "--"
    }
}

fn text_row(rep: &VerificationReport) -> String {
    let s = &rep.schedule;
    let verdict = if rep.pass() {
        "PASS".to_string()
    } else {
        format!("FAIL ({})", rep.failed().join(","))
    };
    format!(
        "{:>5}  {:<6}  {:<9}  {:<9}  {:<10}  {:>1}  {:>4}  {:<7}  {:<2}  {:<2}  {:<3}  {:<3}  {:>8}  {:>7}  {:>3}  {:>5}  {}",
        s.b,
        s.family.name(),
        format!("({},{})", s.rs.0, s.rs.1),
        format!("({},{})", s.src2.0, s.src2.1),
        format!("({},{})", s.target.0, s.target.1),
        s.c,
        s.n_fiber,
        rep.mode.as_str(),
        yes_no(rep.cond_i.pass),
        yes_no(rep.cond_ii.pass),
        yes_no(rep.cond_iii.pass),
        yes_no(rep.cond_iv.pass),
        format!("{}/{}", rep.cond_iii.rank, rep.cond_iii.required),
        format!("{}/{}", rep.cond_iv.rank, rep.cond_iv.required),
        rep.kernel_dim,
        rep.attempts,
        verdict
    )
}

fn emit_report(
    out: &mut dyn Write,
    format: Format,
    rep: &VerificationReport,
    no_timing: bool,
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let mut j = ReportJson::from_report(rep);
            if no_timing {
                j.elapsed_ms = 0;
            }
            writeln!(out, "{}", j.to_line())
        }
        Format::Text => writeln!(out, "{}", text_row(rep)),
    }
}

fn cmd_verify(a: VerifyArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let mode: Mode = a.common.mode.into();
    let rep = match a.tamper {
        Some(m) if mode != Mode::Witness => {
            return Err(CliError::Input(format!(
                "--tamper {} needs --mode witness",
                Mutation::from(m).name()
            )))
        }
        Some(m) => verifier::verify_tampered(a.b, m.into())?,
        None => verifier::verify(a.b, mode, &a.common.generic())?,
    };
    if a.common.format == Format::Text {
        writeln!(out, "{TABLE_HEADER}")?;
    }
    emit_report(out, a.common.format, &rep, a.common.no_timing)?;
    Ok(if rep.pass() { EXIT_OK } else { EXIT_FAIL })
}

fn cmd_verify_range(a: RangeArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    if a.from > a.to {
        return Err(CliError::Input(format!(
            "--from {} exceeds --to {}",
            a.from, a.to
        )));
    }
    let first_odd = if a.from.rem_euclid(2) == 1 {
        a.from
    } else {
        a.from + 1
    };
    let bs: Vec<i64> = (first_odd..=a.to).step_by(2).collect();
    let mode: Mode = a.common.mode.into();
    let items = verifier::verify_range(&bs, mode, &a.common.generic(), a.jobs as usize);

    if a.common.format == Format::Text {
        writeln!(out, "{TABLE_HEADER}")?;
    }
    let (mut failed, mut input_errors, mut passed) = (0usize, 0usize, 0usize);
    for (b, item) in &items {
        match item {
            Ok(rep) => {
                emit_report(out, a.common.format, rep, a.common.no_timing)?;
                if rep.pass() {
                    passed += 1;
                } else {
                    failed += 1;
                }
            }
            Err(e) => {
                input_errors += 1;
                match a.common.format {
                    Format::Json => {
                        writeln!(out, "{}", ReportJson::input_error(*b, mode, e).to_line())?
                    }
                    Format::Text => writeln!(out, "{b:>5}  error: {e}")?,
                }
            }
        }
    }
    if a.common.format == Format::Text {
        writeln!(
            out,
            "{} b checked: {passed} passed, {failed} failed, {input_errors} input errors",
            items.len()
        )?;
    }
    Ok(if input_errors > 0 {
        EXIT_USAGE
    } else if failed > 0 {
        EXIT_FAIL
    } else {
        EXIT_OK
    })
}

fn cmd_transvect(a: TransvectArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let p = parse_biform(&a.lhs, a.lhs_bidegree)?;
    let q = parse_biform(&a.rhs, a.rhs_bidegree)?;
    let spec = TransvectantSpec::new(a.r, a.s, p.bidegree(), q.bidegree())?;
    let t = bi_transvect(&p, &q, &spec)?;
    writeln!(out, "{}", print_biform(&t))?;
    Ok(EXIT_OK)
}

fn cmd_schedule(a: ScheduleArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let bs: Vec<i64> = match (a.b, a.from, a.to) {
        (Some(b), _, _) => vec![b],
        (None, Some(from), Some(to)) if from <= to => {
            let first_odd = if from.rem_euclid(2) == 1 {
                from
            } else {
                from + 1
            };
            (first_odd..=to).step_by(2).filter(|&b| b >= 5).collect()
        }
        (None, Some(from), Some(to)) => {
            return Err(CliError::Input(format!("--from {from} exceeds --to {to}")))
        }
        _ => return Err(CliError::Input("give --b or --from/--to".into())),
    };
    if a.format == Format::Text {
        writeln!(
            out,
            "    b  family  class  n     (r,s)      (a',b')    (a'',b'')   c     N"
        )?;
    }
    for b in bs {
        let s = schedule_for(b)?;
        match a.format {
            Format::Json => writeln!(out, "{}", schedule_json(&s))?,
            Format::Text => writeln!(
                out,
                "{:>5}  {:<6}  {:<5}  {:<4}  {:<9}  {:<9}  {:<10}  {}  {:>4}",
                s.b,
                s.family.name(),
                s.family.label(),
                s.n.map_or("-".to_string(), |n| n.to_string()),
                format!("({},{})", s.rs.0, s.rs.1),
                format!("({},{})", s.src2.0, s.src2.1),
                format!("({},{})", s.target.0, s.target.1),
                s.c,
                s.n_fiber
            )?,
        }
    }
    Ok(EXIT_OK)
}

fn cmd_dims(a: DimsArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let (genus, b) = match (a.genus, a.b) {
        (Some(g), _) => (Some(g), genus_to_bidegree(g)?.1),
        (None, Some(b)) if b >= 1 => (None, b as usize),
        (None, Some(b)) => return Err(CliError::Input(format!("b = {b} must be positive"))),
        (None, None) => return Err(CliError::Input("give --b or --genus".into())),
    };
    let dim_v = dim_bidegree((3, b));
    let moduli = moduli_dimension(b);
    match a.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::json!({
                "genus": genus,
                "bidegree": [3, b],
                "dim_V": dim_v,
                "dim_PV": dim_v - 1,
                "moduli_dim": moduli,
            })
        )?,
        Format::Text => {
            if let Some(g) = genus {
                writeln!(
                    out,
                    "genus {g}: trigonal canonical model of bidegree (3, {b})"
                )?;
            }
            writeln!(out, "dim V_(3,{b}) = {dim_v}")?;
            writeln!(out, "dim P V_(3,{b}) = {}", dim_v - 1)?;
            writeln!(out, "dim P V_(3,{b}) / SL2xSL2 = {moduli}")?;
        }
    }
    Ok(EXIT_OK)
}
