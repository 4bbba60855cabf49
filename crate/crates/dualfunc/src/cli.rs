//! Argument handling and subcommand dispatch.

use std::ffi::OsString;
use std::fmt::Write;
use std::ops::RangeInclusive;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use dualfunc_core::census::{
    canonical_dual, canonical_field, canonical_zm, census_with, enumerate_stabilizer, CanonicalRep,
    CensusMode, SearchSpace, DEFAULT_MAX_SPACE,
};
use dualfunc_core::null::{is_dual_null, is_null_bruteforce};
use dualfunc_core::perm::{is_pp_bruteforce, is_pp_dual_zm, is_pp_zpn, PermVerdict};
use dualfunc_core::ring::is_prime;
use dualfunc_core::{DualPoly, Error, Modulus, Ring};
use serde_json::{json, Value};

use crate::format;
use crate::parallel;
use crate::parse::{parse_dual, ParseError};

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {message}\n") }
    }
}

#[derive(Parser, Debug)]
#[command(name = "dualfunc", version, about = "Polynomial functions and permutations on Z_m and Z_m[α]")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// The ring `Z_m`, given as `-m M` or as `-p P [-n N]`.
#[derive(Args, Debug, Clone, Copy)]
struct ModulusArgs {
    /// Prime p of the modulus p^n.
    #[arg(short = 'p', conflicts_with = "m")]
    p: Option<u64>,
    /// Exponent n of the modulus p^n (default 1).
    #[arg(short = 'n', requires = "p", conflicts_with = "m")]
    n: Option<u32>,
    /// Modulus m.
    #[arg(short = 'm')]
    m: Option<u64>,
}

impl ModulusArgs {
    fn modulus(&self) -> Result<Modulus, String> {
        let r = match (self.p, self.m) {
            (Some(p), None) => {
                if !is_prime(p) {
                    return Err(format!("-p {p} is not prime"));
                }
                Modulus::prime_power(p, self.n.unwrap_or(1))
            }
            (None, Some(m)) => Modulus::new(m),
            _ => return Err("give the modulus as -m M or -p P [-n N]".into()),
        };
        r.map_err(|e| e.to_string())
    }

    fn prime_power(&self) -> Result<(u64, u32), String> {
        let m = self.modulus()?;
        m.as_prime_power().ok_or_else(|| format!("{} is not a prime power", m.value()))
    }
}

#[derive(Args, Debug, Clone, Copy)]
struct Output {
    /// Emit JSON.
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV.
    #[arg(long)]
    csv: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Is f1 + α·f2 null on Z_m[α]?
    NullTest {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// Polynomial `f1 ; f2`, or `f1` alone.
        poly: String,
        /// Test the square of the polynomial instead.
        #[arg(long)]
        square: bool,
        /// Test f1 on Z_m only.
        #[arg(long)]
        base: bool,
        #[arg(long)]
        json: bool,
        /// Exit with status 1 when the answer is false.
        #[arg(long)]
        strict: bool,
    },
    /// Does f1 + α·f2 permute Z_m[α]?
    PpTest {
        #[command(flatten)]
        modulus: ModulusArgs,
        poly: String,
        /// Test f1 on Z_m only.
        #[arg(long)]
        base: bool,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        strict: bool,
    },
    /// Canonical representative of the induced function.
    Canon {
        #[command(flatten)]
        modulus: ModulusArgs,
        poly: String,
        /// Prime field form: reduction modulo (x^q - x)^2 and x^q - x.
        #[arg(long, conflicts_with = "base")]
        field: bool,
        /// Canonical form of f1 on Z_m.
        #[arg(long)]
        base: bool,
        #[arg(long)]
        json: bool,
    },
    /// Counted and predicted sizes for Z_{p^n} and Z_{p^n}[α].
    Census {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// Fail instead of skipping function enumerations over the guard.
        #[arg(long, conflicts_with = "predict")]
        count: bool,
        /// Formulas only.
        #[arg(long)]
        predict: bool,
        #[command(flatten)]
        output: Output,
        /// Largest number of polynomials an enumeration may visit.
        #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_SPACE)]
        max_space: u128,
        /// Exit with status 1 on any mismatch or failed identity.
        #[arg(long)]
        strict: bool,
    },
    /// Elements of the stabilizer of Z_{p^n} in the permutations of Z_{p^n}[α].
    Stab {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[arg(long)]
        json: bool,
    },
    /// Predicted counts over ranges of p and n.
    Table {
        /// Prime or range of primes, such as 2..7.
        #[arg(short = 'p', value_parser = parse_range)]
        p: RangeInclusive<u64>,
        /// Exponent or range of exponents.
        #[arg(short = 'n', value_parser = parse_range, default_value = "1")]
        n: RangeInclusive<u64>,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_range(s: &str) -> Result<RangeInclusive<u64>, String> {
    let bad = || format!("expected N or A..B, got '{s}'");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (s, s),
    };
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().parse().map_err(|_| bad())?;
    if a > b || a == 0 {
        return Err(bad());
    }
    if b - a > 10_000 {
        return Err(format!("range '{s}' is too long"));
    }
    Ok(a..=b)
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn parse_arg(src: &str, m: u64) -> Result<DualPoly, Outcome> {
    parse_dual(src, m).map_err(|e: ParseError| {
        Outcome::usage(format!("cannot parse polynomial at {e}\n  {src}\n  {:>w$}", "^", w = e.column))
    })
}

fn verdict(holds: bool, detail: String, strict: bool) -> Outcome {
    let mut out = if holds { "true".to_string() } else { "false".to_string() };
    if !detail.is_empty() {
        out.push_str("  ");
        out.push_str(&detail);
    }
    out.push('\n');
    Outcome { code: if strict && !holds { 1 } else { 0 }, stdout: out, stderr: String::new() }
}

fn json_verdict(holds: bool, v: Value, strict: bool) -> Outcome {
    Outcome { code: if strict && !holds { 1 } else { 0 }, stdout: render(&v), stderr: String::new() }
}

fn null_test(
    modulus: ModulusArgs,
    src: &str,
    square: bool,
    base: bool,
    json: bool,
    strict: bool,
) -> Result<Outcome, Outcome> {
    let m = modulus.modulus().map_err(Outcome::usage)?.value();
    let mut f = parse_arg(src, m)?;
    if square {
        f = f.mul(&f).map_err(Outcome::usage)?;
    }
    if base {
        let (f1, f2) = f.split();
        if !f2.is_zero() {
            return Err(Outcome::usage("--base takes a polynomial without an α part"));
        }
        let scan = is_null_bruteforce(&f1, Ring::Base(m)).map_err(Outcome::usage)?;
        let witness = scan.witness.map(|w| w.to_string());
        if json {
            let v = json!({ "m": m, "ring": Ring::Base(m).to_string(), "poly": f1.to_string(),
                "null": scan.holds, "witness": witness });
            return Ok(json_verdict(scan.holds, v, strict));
        }
        let detail = witness.map(|w| format!("witness={w}")).unwrap_or_default();
        return Ok(verdict(scan.holds, detail, strict));
    }
    let v = is_dual_null(&f).map_err(Outcome::usage)?;
    let witness = v.witness.map(|w| w.to_string());
    if json {
        let out = json!({
            "m": m,
            "ring": Ring::Dual(m).to_string(),
            "poly": f.to_string(),
            "null": v.is_null_on_ralpha,
            "f1_null": v.is_null_on_r,
            "f1_derivative_null": v.derivative_null_on_r,
            "f2_null": v.alpha_part_null_on_r,
            "structural": v.structural,
            "witness": witness,
        });
        return Ok(json_verdict(v.is_null_on_ralpha, out, strict));
    }
    let detail = witness.map(|w| format!("witness={w}")).unwrap_or_default();
    Ok(verdict(v.is_null_on_ralpha, detail, strict))
}

fn perm_detail(v: &PermVerdict) -> String {
    match &v.failure {
        None => String::new(),
        Some(f) => {
            let mut s = format!("reason={}", f.reason.name());
            if let Some(p) = f.prime {
                let _ = write!(s, " p={p}");
            }
            let _ = write!(s, " witness={}", f.witness);
            s
        }
    }
}

fn pp_test(
    modulus: ModulusArgs,
    src: &str,
    base: bool,
    json: bool,
    strict: bool,
) -> Result<Outcome, Outcome> {
    let m = modulus.modulus().map_err(Outcome::usage)?;
    let f = parse_arg(src, m.value())?;
    let v = if base {
        let (f1, f2) = f.split();
        if !f2.is_zero() {
            return Err(Outcome::usage("--base takes a polynomial without an α part"));
        }
        match (m.as_prime_power(), Ring::Base(m.value()).check_enumerable()) {
            (Some((p, n)), Err(_)) => is_pp_zpn(&f1.lift(), p, n),
            _ => is_pp_bruteforce(&f1, Ring::Base(m.value())),
        }
    } else {
        is_pp_dual_zm(&f)
    }
    .map_err(Outcome::usage)?;
    let ring = if base { Ring::Base(m.value()) } else { Ring::Dual(m.value()) };
    if json {
        let failure = v
            .failure
            .map(|f| json!({ "reason": f.reason.name(), "p": f.prime, "witness": f.witness.to_string() }));
        let out = json!({
            "m": m.value(),
            "ring": ring.to_string(),
            "poly": f.to_string(),
            "permutation": v.is_pp,
            "criterion": format!("{:?}", v.criterion),
            "failure": failure,
        });
        return Ok(json_verdict(v.is_pp, out, strict));
    }
    Ok(verdict(v.is_pp, perm_detail(&v), strict))
}

fn canon(modulus: ModulusArgs, src: &str, field: bool, base: bool, json: bool) -> Result<Outcome, Outcome> {
    let m = modulus.modulus().map_err(Outcome::usage)?;
    let f = parse_arg(src, m.value())?;
    let rep = if base {
        let (f1, f2) = f.split();
        if !f2.is_zero() {
            return Err(Outcome::usage("--base takes a polynomial without an α part"));
        }
        canonical_zm(&f1)
    } else if field {
        canonical_field(&f).map_err(Outcome::usage)?
    } else {
        let (p, n) = m.as_prime_power().ok_or_else(|| Outcome::usage(Error::NotPrimePower(m.value())))?;
        canonical_dual(&f, p, n).map_err(Outcome::usage)?
    };
    if !json {
        return Ok(Outcome::ok(format!("{rep}\n")));
    }
    let v = match &rep {
        CanonicalRep::Zm { m, coeffs } => {
            json!({ "kind": "base", "m": m, "coeffs": coeffs, "canonical": rep.to_string() })
        }
        CanonicalRep::Dual { p, n, blocks, alpha } => json!({
            "kind": "dual", "p": p, "n": n, "blocks": blocks, "alpha": alpha, "canonical": rep.to_string()
        }),
        CanonicalRep::Field { q, a, b } => {
            json!({ "kind": "field", "q": q, "a": a, "b": b, "canonical": rep.to_string() })
        }
    };
    Ok(Outcome::ok(render(&v)))
}

fn census_cmd(
    modulus: ModulusArgs,
    count: bool,
    predict: bool,
    output: Output,
    max_space: u128,
    strict: bool,
) -> Result<Outcome, Outcome> {
    let (p, n) = modulus.prime_power().map_err(Outcome::usage)?;
    let mode = if predict { CensusMode::Predict } else { CensusMode::Count };
    if count {
        let m = p.pow(n);
        for ring in [Ring::Base(m), Ring::Dual(m)] {
            let size = SearchSpace::default_for(ring).map(|s| s.size()).map_err(Outcome::usage)?;
            if size > max_space {
                return Err(Outcome::usage(Error::SearchSpaceTooLarge { size, limit: max_space }));
            }
        }
    }
    let workers = parallel::threads();
    let report = census_with(p, n, mode, max_space, &|s, limit| {
        parallel::enumerate_tables_parallel(s, limit, workers)
    })
    .map_err(Outcome::usage)?;
    let stdout = if output.json {
        render(&format::census_json(&report))
    } else if output.csv {
        format::census_csv(&report)
    } else {
        format::census_text(&report)
    };
    let good = report.all_match() && report.identities_hold();
    Ok(Outcome { code: if strict && !good { 1 } else { 0 }, stdout, stderr: String::new() })
}

fn stab(modulus: ModulusArgs, json: bool) -> Result<Outcome, Outcome> {
    let (p, n) = modulus.prime_power().map_err(Outcome::usage)?;
    let s = enumerate_stabilizer(p, n).map_err(Outcome::usage)?;
    Ok(Outcome::ok(if json { render(&format::stabilizer_json(&s)) } else { format::stabilizer_text(&s) }))
}

fn table(p: RangeInclusive<u64>, n: RangeInclusive<u64>, output: Output) -> Result<Outcome, Outcome> {
    let mut rows = Vec::new();
    for p in p.filter(|&p| is_prime(p)) {
        for n in n.clone() {
            let n = u32::try_from(n).map_err(|_| Outcome::usage("exponent too large"))?;
            rows.push(format::table_row(p, n).map_err(Outcome::usage)?);
        }
    }
    if rows.is_empty() {
        return Err(Outcome::usage("no primes in the range of -p"));
    }
    Ok(Outcome::ok(if output.json { render(&format::table_json(&rows)) } else { format::table_csv(&rows) }))
}

/// Runs one invocation. `args` includes the program name. Exit codes: 0 on
/// success, 1 for a false verdict under `--strict`, 2 for usage errors and
/// for inputs outside an operation's domain.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome { code: 2, stdout: String::new(), stderr: text },
            };
        }
    };
    let result = match cli.command {
        Command::NullTest { modulus, poly, square, base, json, strict } => {
            null_test(modulus, &poly, square, base, json, strict)
        }
        Command::PpTest { modulus, poly, base, json, strict } => pp_test(modulus, &poly, base, json, strict),
        Command::Canon { modulus, poly, field, base, json } => canon(modulus, &poly, field, base, json),
        Command::Census { modulus, count, predict, output, max_space, strict } => {
            census_cmd(modulus, count, predict, output, max_space, strict)
        }
        Command::Stab { modulus, json } => stab(modulus, json),
        Command::Table { p, n, output } => table(p, n, output),
    };
    result.unwrap_or_else(|e| e)
}
