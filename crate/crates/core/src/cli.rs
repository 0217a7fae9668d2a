//! Command-line interface.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or input error.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::chevalley::{chevalley_covers, chevalley_t_coeff, verify_chevalley};
use crate::error::{Error, Result};
use crate::format::{from_json, parse_with_k, to_json, to_json_value, to_latex, to_text};
use crate::partition::{k_strict_up_to, KStrictPartition};
use crate::quotient::theta_expansion;
use crate::theta::{theta_double, theta_single};
use crate::verify::{run_suite, SweepConfig, SUITES};
use crate::weyl::partition_to_w;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "theta-forge", version, about = "Double theta polynomials and their identities")]
pub struct Cli {
    /// Directory for cached results.
    #[arg(long, global = true, env = "THETA_FORGE_CACHE")]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print Θ_λ(c|t), or Θ_λ(c) with --single.
    Theta(ThetaArgs),
    /// Chevalley rule for Θ_1 · Θ_λ.
    Chevalley(ChevalleyArgs),
    /// Expand a polynomial in the theta basis.
    Expand(ExpandArgs),
    /// Run verification suites.
    VerifySuite(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args, Debug)]
pub struct ThetaArgs {
    #[arg(long)]
    pub k: usize,
    /// Comma-separated parts; empty for the empty partition.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: String,
    #[arg(long)]
    pub single: bool,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ChevalleyArgs {
    /// Required unless --all is given; with --all it restricts the sweep.
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    /// Check the rule against the algebraic expansion.
    #[arg(long)]
    pub verify: bool,
    /// Verify every k-strict partition up to --max-weight.
    #[arg(long)]
    pub all: bool,
    #[arg(long, default_value_t = 8)]
    pub max_weight: usize,
    #[arg(long, default_value_t = 2)]
    pub k_max: usize,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct ExpandArgs {
    #[arg(long)]
    pub k: usize,
    /// Keep only partitions in P(k, n).
    #[arg(long)]
    pub n: Option<usize>,
    /// Expression file, or `-` for stdin. Text grammar or polynomial JSON.
    #[arg(long)]
    pub expr: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub k_max: usize,
    #[arg(long, default_value_t = 8)]
    pub weight_max: usize,
    /// Suite to run; repeatable. Defaults to all suites.
    #[arg(long)]
    pub suite: Vec<String>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

/// Standard output and exit code of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout }
    }
}

/// Parses `3,1`, `(3,1)` or the empty string.
pub fn parse_lambda(k: usize, src: &str) -> Result<KStrictPartition> {
    let s = src.trim().trim_start_matches('(').trim_end_matches(')').trim();
    if s.is_empty() {
        return Ok(KStrictPartition::empty(k));
    }
    let parts = s
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::NotPartition(src.to_string()))?;
    KStrictPartition::new(k, &parts)
}

fn render(f: &crate::Polynomial, format: Format) -> String {
    match format {
        Format::Text => to_text(f),
        Format::Json => to_json(f),
        Format::Latex => to_latex(f),
    }
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

fn cmd_theta(a: &ThetaArgs) -> Result<Outcome> {
    let lam = parse_lambda(a.k, &a.lambda)?;
    let f = if a.single { theta_single(&lam) } else { theta_double(&lam) };
    Ok(Outcome::ok(format!("{}\n", render(&f, a.format))))
}

fn chevalley_one(k: usize, src: &str, verify: bool, format: Format) -> Result<Outcome> {
    let lam = parse_lambda(k, src)?;
    let w = partition_to_w(&lam, lam.min_rank())?;
    let coeff = chevalley_t_coeff(&lam);
    let covers = chevalley_covers(&lam);
    let report = verify.then(|| verify_chevalley(&lam));
    let code = match &report {
        Some(r) if !r.pass => EXIT_FAIL,
        _ => EXIT_OK,
    };
    let stdout = match format {
        Format::Json => {
            let cv: Vec<_> = covers
                .iter()
                .map(|c| json!({"mu": c.mu.parts(), "e": c.multiplicity, "kind": c.kind.to_string()}))
                .collect();
            let mut v = json!({
                "k": k,
                "lambda": lam.parts(),
                "w": w.to_string(),
                "coefficient": to_json_value(&coeff),
                "covers": cv,
            });
            if let Some(r) = &report {
                v["verify"] = r.to_json_value();
            }
            json_line(&v)
        }
        Format::Text | Format::Latex => {
            let poly = |f: &crate::Polynomial| render(f, format);
            let mut s = format!("k = {k}, lambda = {lam}\nw = {w}\ncoefficient: {}\ncovers:\n", poly(&coeff));
            for c in &covers {
                s.push_str(&format!("  {}  e={}  {}\n", c.mu, c.multiplicity, c.kind));
            }
            if let Some(r) = &report {
                s.push_str(if r.pass { "verify: pass\n" } else { "verify: FAIL\n" });
            }
            s
        }
    };
    Ok(Outcome { code, stdout })
}

fn chevalley_all(a: &ChevalleyArgs) -> Outcome {
    let ks: Vec<usize> = match a.k {
        Some(k) => vec![k],
        None => (0..=a.k_max).collect(),
    };
    let cases: Vec<KStrictPartition> = ks
        .iter()
        .flat_map(|&k| k_strict_up_to(k, a.max_weight))
        .collect();
    let passed: Vec<bool> = cases.par_iter().map(|l| verify_chevalley(l).pass).collect();
    let mut table: BTreeMap<(usize, usize), (usize, usize)> = BTreeMap::new();
    for (lam, ok) in cases.iter().zip(&passed) {
        let r = table.entry((lam.k(), lam.weight())).or_default();
        r.0 += 1;
        r.1 += usize::from(!ok);
    }
    let rows: Vec<(usize, usize, usize, usize)> = table.into_iter().map(|((k, w), (c, f))| (k, w, c, f)).collect();
    let failed: Vec<String> = cases
        .iter()
        .zip(&passed)
        .filter(|(_, ok)| !**ok)
        .map(|(l, _)| format!("k={} {}", l.k(), l))
        .collect();
    let pass = failed.is_empty();
    let stdout = match a.format {
        Format::Json => json_line(&json!({
            "max_weight": a.max_weight,
            "rows": rows.iter().map(|r| json!({"k": r.0, "weight": r.1, "cases": r.2, "failed": r.3})).collect::<Vec<_>>(),
            "failures": failed,
            "pass": pass,
        })),
        Format::Text | Format::Latex => {
            let mut s = String::from("  k  weight  cases  failed\n");
            for r in &rows {
                s.push_str(&format!("{:>3}  {:>6}  {:>5}  {:>6}\n", r.0, r.1, r.2, r.3));
            }
            for f in &failed {
                s.push_str(&format!("FAIL {f}\n"));
            }
            s.push_str(if pass { "PASS\n" } else { "FAIL\n" });
            s
        }
    };
    Outcome {
        code: if pass { EXIT_OK } else { EXIT_FAIL },
        stdout,
    }
}

fn cmd_chevalley(a: &ChevalleyArgs) -> Result<Outcome> {
    if a.all {
        return Ok(chevalley_all(a));
    }
    let k = a.k.ok_or_else(|| Error::Precondition("--k is required without --all".into()))?;
    let lam = a
        .lambda
        .as_deref()
        .ok_or_else(|| Error::Precondition("--lambda is required without --all".into()))?;
    chevalley_one(k, lam, a.verify, a.format)
}

fn read_expr(src: &str) -> Result<String> {
    let io_err = |e: io::Error| Error::Precondition(format!("cannot read {src}: {e}"));
    if src == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(src).map_err(io_err)
    }
}

/// Text grammar, or polynomial JSON when the input starts with `{`.
pub fn parse_expr(src: &str, k: usize) -> Result<crate::Polynomial> {
    let s = src.trim();
    if s.starts_with('{') {
        from_json(s)
    } else {
        parse_with_k(s, k)
    }
}

fn cmd_expand(a: &ExpandArgs, text: &str) -> Result<Outcome> {
    let f = parse_expr(text, a.k)?;
    let mut e = theta_expansion(&f, a.k);
    if let Some(n) = a.n {
        e = e.truncated(n);
    }
    let stdout = match a.format {
        Format::Json => json_line(&e.to_json_value("theta")),
        Format::Text => format!("{e}\n"),
        Format::Latex => {
            let lines: Vec<String> = e
                .sorted()
                .into_iter()
                .map(|(l, g)| format!("{l}: {}", to_latex(&g)))
                .collect();
            if lines.is_empty() {
                "0\n".into()
            } else {
                format!("{}\n", lines.join("\n"))
            }
        }
    };
    Ok(Outcome::ok(stdout))
}

fn cmd_verify(a: &VerifyArgs) -> Result<Outcome> {
    let names: Vec<String> = if a.suite.is_empty() {
        SUITES.iter().map(|s| s.to_string()).collect()
    } else {
        a.suite.clone()
    };
    let cfg = SweepConfig {
        k_max: a.k_max,
        weight_max: a.weight_max,
        seed: a.seed,
    };
    let reports = names
        .iter()
        .map(|n| run_suite(n, &cfg))
        .collect::<Result<Vec<_>>>()?;
    let pass = reports.iter().all(|r| r.pass());
    let stdout = match a.format {
        Format::Json => json_line(&json!({
            "config": {"k_max": cfg.k_max, "weight_max": cfg.weight_max, "seed": cfg.seed},
            "suites": reports.iter().map(|r| r.to_json_value()).collect::<Vec<_>>(),
            "pass": pass,
        })),
        Format::Text | Format::Latex => {
            let mut s: String = reports.iter().map(|r| r.to_string()).collect();
            s.push_str(if pass { "PASS\n" } else { "FAIL\n" });
            s
        }
    };
    Ok(Outcome {
        code: if pass { EXIT_OK } else { EXIT_FAIL },
        stdout,
    })
}

fn cache_key(parts: &serde_json::Value) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION").as_bytes());
    h.update([0]);
    h.update(parts.to_string().as_bytes());
    hex::encode(h.finalize())
}

fn cached(dir: Option<&Path>, key: serde_json::Value, run: impl FnOnce() -> Result<Outcome>) -> Result<Outcome> {
    let Some(dir) = dir else {
        return run();
    };
    let path = dir.join(format!("{}.out", cache_key(&key)));
    if let Ok(stdout) = fs::read_to_string(&path) {
        return Ok(Outcome::ok(stdout));
    }
    let out = run()?;
    if out.code == EXIT_OK && fs::create_dir_all(dir).is_ok() {
        let tmp = path.with_extension("tmp");
        if fs::write(&tmp, &out.stdout).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
    Ok(out)
}

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Text => "text",
        Format::Json => "json",
        Format::Latex => "latex",
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let dir = cli.cache.as_deref();
    match &cli.command {
        Command::Theta(a) => {
            let lam = parse_lambda(a.k, &a.lambda)?;
            let key = json!(["theta", a.k, lam.parts(), a.single, format_name(a.format)]);
            cached(dir, key, || cmd_theta(a))
        }
        Command::Chevalley(a) => cmd_chevalley(a),
        Command::Expand(a) => {
            let text = read_expr(&a.expr)?;
            let key = json!(["expand", a.k, a.n, text, format_name(a.format)]);
            cached(dir, key, || cmd_expand(a, &text))
        }
        Command::VerifySuite(a) => cmd_verify(a),
    }
}

/// Parses `args`, runs the command and returns the outcome; errors are
/// reported as exit code 2 with the message on standard error.
pub fn run<I, T>(args: I) -> (Outcome, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                (Outcome::ok(text), String::new())
            } else {
                (Outcome { code, stdout: String::new() }, text)
            };
        }
    };
    match execute(&cli) {
        Ok(o) => (o, String::new()),
        Err(e) => (
            Outcome {
                code: EXIT_USAGE,
                stdout: String::new(),
            },
            format!("error: {e}\n"),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (Outcome, String) {
        run(std::iter::once("theta-forge").chain(args.iter().copied()))
    }

    #[test]
    fn lambda_parsing() {
        assert_eq!(parse_lambda(2, "").unwrap().parts(), &[] as &[usize]);
        assert_eq!(parse_lambda(0, "(3,1)").unwrap().parts(), &[3, 1]);
        assert_eq!(parse_lambda(0, " 3 , 1 ").unwrap().parts(), &[3, 1]);
        assert!(matches!(parse_lambda(1, "2,2"), Err(Error::NotKStrict(_))));
        assert!(parse_lambda(1, "a").is_err());
    }

    #[test]
    fn theta_commands() {
        let (o, _) = call(&["theta", "--k", "2", "--lambda", ""]);
        assert_eq!(o, Outcome::ok("1\n".into()));
        let (o, err) = call(&["theta", "--k", "1", "--lambda", "2,2"]);
        assert_eq!(o.code, EXIT_USAGE);
        assert!(err.contains("not k-strict"));
        let (o, _) = call(&["theta", "--k", "0", "--lambda", "1"]);
        assert_eq!(o.stdout, "c[1]\n");
    }

    #[test]
    fn chevalley_of_empty_partition() {
        let (o, _) = call(&["chevalley", "--k", "1", "--lambda", "", "--verify"]);
        assert_eq!(o.code, EXIT_OK);
        assert!(o.stdout.contains("  (1)  e=1"));
        assert!(o.stdout.contains("verify: pass"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["theta"]).0.code, EXIT_USAGE);
        assert_eq!(call(&["chevalley", "--lambda", "1"]).0.code, EXIT_USAGE);
        assert_eq!(call(&["verify-suite", "--suite", "nope"]).0.code, EXIT_USAGE);
        assert_eq!(call(&["bogus"]).0.code, EXIT_USAGE);
    }

    #[test]
    fn expression_parsing() {
        assert!(parse_expr("0", 0).unwrap().is_zero());
        let f = parse_expr("Theta[2,1] - Theta[2,1]", 1).unwrap();
        assert!(f.is_zero());
        assert!(parse_expr("Theta[2,2]", 1).is_err());
        let g = parse_expr(&to_json(&theta_double(&parse_lambda(0, "2").unwrap())), 0).unwrap();
        assert_eq!(g, theta_double(&parse_lambda(0, "2").unwrap()));
    }
}
