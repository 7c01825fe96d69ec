//! Command implementations behind the `supercong` binary.
//!
//! Every command writes to a caller-supplied sink and returns a process exit
//! code: 0 when everything checked passes, 1 when something failed, 2 for
//! usage or configuration errors.

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use supercong_core::charsums::{bridge_sweep, Bridge};
use supercong_core::sequences::{
    b_closed_forms, certificate31_check, lemma31_check, lemma41_check, recurrence_failures, seq_exact_prefix,
    CertSide, SeqId,
};
use supercong_core::series::{bailey_check, pochhammer_check, rogers_check, RogersIdentity, DEFAULT_ORDER, MIN_ORDER};
use supercong_core::verify::{resolve, statement_ids, sweep, ParamStrategy, Report, Status, SweepConfig, DEFAULT_BUDGET};
use supercong_core::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURES: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "supercong", version, about = "Check supercongruences over prime ranges")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep statements over a prime range.
    Verify(VerifyArgs),
    /// Print exact sequence terms.
    Seq(SeqArgs),
    /// Check the formal power series identities.
    Series(SeriesArgs),
    /// Check the exact sequence identities, recurrences and certificates.
    Identities(IdentitiesArgs),
    /// Check the character sum congruences over a prime range.
    Bridges(BridgesArgs),
    /// List statement ids.
    List,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Inclusive prime range written `lo..hi` or as a single number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeRange {
    pub lo: u64,
    pub hi: u64,
}

impl FromStr for PrimeRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u64>().map_err(|_| format!("bad prime bound {t:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let v = parse(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {lo}..{hi}"));
        }
        Ok(PrimeRange { lo, hi })
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Statement ids, comma separated, or all-theorems / all-conjectures / all.
    #[arg(long, short = 's', value_delimiter = ',', required = true)]
    pub statement: Vec<String>,
    /// Inclusive prime range.
    #[arg(long, default_value = "5..499")]
    pub primes: PrimeRange,
    /// Parameter strategy: auto, all, random:N or fixed:v1,v2,...
    #[arg(long, default_value = "auto")]
    pub params: ParamStrategy,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long, env = "SUPERCONG_JOBS")]
    pub jobs: Option<usize>,
    /// Largest instance count a single sweep may evaluate.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, short = 'o')]
    pub output: Option<std::path::PathBuf>,
    /// -v lists failures, -vv lists every instance.
    #[arg(short, long, action = clap::ArgAction::Count)]
    pub verbose: u8,
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// One of A, a, b, D.
    #[arg(long)]
    pub name: String,
    #[arg(long, default_value_t = 10)]
    pub count: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
}

#[derive(Debug, Args)]
pub struct IdentitiesArgs {
    /// Largest index for the two lemmas and the b_n closed forms.
    #[arg(long, default_value_t = 300)]
    pub max_n: u64,
    /// Largest m for the certificate.
    #[arg(long, default_value_t = 40)]
    pub max_m: u64,
    /// Largest index for the A_n and a_n recurrences.
    #[arg(long, default_value_t = 1000)]
    pub max_rec: u64,
}

#[derive(Debug, Args)]
pub struct BridgesArgs {
    #[arg(long, default_value = "5..499")]
    pub primes: PrimeRange,
    /// Random curves per prime for the squared character sum.
    #[arg(long, default_value_t = 64)]
    pub pairs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let result = match cli.command {
        Command::Verify(args) => cmd_verify(args, out, err),
        Command::Seq(args) => cmd_seq(args, out, err),
        Command::Series(args) => cmd_series(args, out, err),
        Command::Identities(args) => cmd_identities(args, out),
        Command::Bridges(args) => cmd_bridges(args, out, err),
        Command::List => cmd_list(out),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<u8, Box<dyn std::error::Error>>;

/// Exit code for a finished set of sweeps.
pub fn exit_code(reports: &[Report]) -> u8 {
    if reports.iter().any(Report::has_failures) {
        EXIT_FAILURES
    } else {
        EXIT_OK
    }
}

pub fn cmd_verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let specs = match resolve(&args.statement) {
        Ok(s) => s,
        Err(Error::UnknownStatement(id)) => {
            writeln!(err, "error: unknown statement {id:?}")?;
            writeln!(err, "valid ids: all, all-theorems, all-conjectures, {}", statement_ids().join(", "))?;
            return Ok(EXIT_USAGE);
        }
        Err(e) => return Err(e.into()),
    };
    let strategy = args.params.with_seed(args.seed);
    let config = SweepConfig {
        jobs: args.jobs,
        budget: args.budget,
    };
    let mut reports = Vec::with_capacity(specs.len());
    for spec in specs {
        match sweep(spec, args.primes.lo, args.primes.hi, &strategy, &config) {
            Ok(r) => reports.push(r),
            Err(e) => {
                writeln!(err, "error: {}: {e}", spec.id)?;
                return Ok(EXIT_USAGE);
            }
        }
    }

    let mut file;
    let sink: &mut dyn Write = match &args.output {
        Some(path) => {
            file = std::io::BufWriter::new(std::fs::File::create(path)?);
            &mut file
        }
        None => out,
    };
    match args.format {
        Format::Json => {
            if reports.len() == 1 {
                serde_json::to_writer_pretty(&mut *sink, &reports[0])?;
            } else {
                serde_json::to_writer_pretty(&mut *sink, &reports)?;
            }
            writeln!(sink)?;
        }
        Format::Csv => write_csv(&reports, sink)?,
        Format::Text => write_text(&reports, args.verbose, sink)?,
    }
    sink.flush()?;
    Ok(exit_code(&reports))
}

fn write_text(reports: &[Report], verbose: u8, out: &mut dyn Write) -> std::io::Result<()> {
    for r in reports {
        let t = &r.totals;
        writeln!(
            out,
            "{} ({:?}, mod p^{}) primes {}..{} [{}]: {} primes, {} instances, {} pass, {} fail, {} skipped ({} ms)",
            r.statement,
            r.kind,
            r.modulus_power,
            r.range[0],
            r.range[1],
            r.strategy,
            t.primes,
            t.instances,
            t.pass,
            t.fail,
            t.skipped,
            r.duration_ms
        )?;
        for res in &r.results {
            if verbose >= 2 || (verbose == 1 && res.status == Status::Fail) {
                let params: Vec<String> = res.params.iter().map(u64::to_string).collect();
                write!(out, "  p={} params=[{}] {}", res.p, params.join(","), res.status)?;
                if let (Some(l), Some(rhs)) = (&res.lhs, &res.rhs) {
                    write!(out, " lhs={l} rhs={rhs}")?;
                }
                if let Some(w) = &res.witness {
                    write!(out, " x={} y={} form={}x^2+{}y^2", w.x, w.y, w.form[0], w.form[1])?;
                }
                if let Some(reason) = &res.reason {
                    write!(out, " ({reason})")?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

fn write_csv(reports: &[Report], out: &mut dyn Write) -> Result<(), Box<dyn std::error::Error>> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["statement", "p", "params", "status", "lhs", "rhs", "x", "y", "form", "reason"])?;
    for r in reports {
        for res in &r.results {
            let params: Vec<String> = res.params.iter().map(u64::to_string).collect();
            let (x, y, form) = match &res.witness {
                Some(w) => (w.x.to_string(), w.y.to_string(), format!("{}x^2+{}y^2", w.form[0], w.form[1])),
                None => Default::default(),
            };
            w.write_record([
                r.statement.as_str(),
                &res.p.to_string(),
                &params.join(" "),
                &res.status.to_string(),
                res.lhs.as_deref().unwrap_or(""),
                res.rhs.as_deref().unwrap_or(""),
                &x,
                &y,
                &form,
                res.reason.as_deref().unwrap_or(""),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

pub fn cmd_seq(args: SeqArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let id = match args.name.parse::<SeqId>() {
        Ok(id) => id,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let terms = match seq_exact_prefix(id, args.count) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    match args.format {
        Format::Json => {
            let items: Vec<String> = terms.iter().map(ToString::to_string).collect();
            writeln!(out, "[{}]", items.join(", "))?;
        }
        _ => {
            for t in terms {
                writeln!(out, "{t}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

fn verdict(out: &mut dyn Write, name: &str, ok: bool, failed: &mut bool) -> std::io::Result<()> {
    *failed |= !ok;
    writeln!(out, "{name}: {}", if ok { "pass" } else { "FAIL" })
}

pub fn cmd_series(args: SeriesArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    if args.order < MIN_ORDER {
        writeln!(err, "error: series order must be at least {MIN_ORDER}")?;
        return Ok(EXIT_USAGE);
    }
    let n = args.order;
    let mut failed = false;
    verdict(out, &format!("pochhammer (k <= {n})"), pochhammer_check(n as u64), &mut failed)?;
    verdict(out, &format!("bailey (order {n})"), bailey_check(n)?, &mut failed)?;
    for which in RogersIdentity::ALL {
        let name = format!("rogers {} (order {n})", which.label());
        verdict(out, &name, rogers_check(which, n)?, &mut failed)?;
    }
    Ok(if failed { EXIT_FAILURES } else { EXIT_OK })
}

pub fn cmd_identities(args: IdentitiesArgs, out: &mut dyn Write) -> CmdResult {
    let mut failed = false;
    let n = args.max_n;
    verdict(out, &format!("A_n lemma (n <= {n})"), (0..=n).all(lemma31_check), &mut failed)?;
    verdict(out, &format!("b_n lemma (n <= {n})"), (0..=n).all(lemma41_check), &mut failed)?;
    let forms = (0..=n).all(|i| {
        let (x, y) = b_closed_forms(i);
        x == y
    });
    verdict(out, &format!("b_n closed forms (n <= {n})"), forms, &mut failed)?;
    for id in [SeqId::BigA, SeqId::SmallA] {
        let bad = recurrence_failures(id, args.max_rec)?;
        verdict(out, &format!("{id}_n recurrence (n <= {})", args.max_rec), bad.is_empty(), &mut failed)?;
    }
    for side in [CertSide::First, CertSide::Second] {
        let mut ok = true;
        for m in 0..=args.max_m {
            for k in 0..=m {
                ok &= certificate31_check(side, m, k)?;
            }
        }
        verdict(out, &format!("certificate {side:?} (k <= m <= {})", args.max_m), ok, &mut failed)?;
    }
    Ok(if failed { EXIT_FAILURES } else { EXIT_OK })
}

pub fn cmd_bridges(args: BridgesArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let mut failed = false;
    for which in Bridge::ALL {
        let s = bridge_sweep(which, args.primes.lo, args.primes.hi, args.pairs, args.seed)?;
        writeln!(
            out,
            "bridge {which}: {} primes, {} pass, {} fail, {} skipped",
            s.primes, s.pass, s.fail, s.skipped
        )?;
        for (p, param, outcome) in s.failures.iter().take(10) {
            writeln!(err, "  p={p} {param:?}: lhs={:?} rhs={:?}", outcome.lhs, outcome.rhs)?;
        }
        failed |= s.fail > 0;
    }
    Ok(if failed { EXIT_FAILURES } else { EXIT_OK })
}

pub fn cmd_list(out: &mut dyn Write) -> CmdResult {
    for spec in supercong_core::verify::registry() {
        writeln!(out, "{}\n", spec.describe())?;
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_parse() {
        assert_eq!("5..100".parse::<PrimeRange>().unwrap(), PrimeRange { lo: 5, hi: 100 });
        assert_eq!("5..=7".parse::<PrimeRange>().unwrap(), PrimeRange { lo: 5, hi: 7 });
        assert_eq!("19".parse::<PrimeRange>().unwrap(), PrimeRange { lo: 19, hi: 19 });
        assert!("9..3".parse::<PrimeRange>().is_err());
        assert!("x..3".parse::<PrimeRange>().is_err());
    }
}
