//! Command-line front end. The binary is a thin wrapper over [`run`].

use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use num_complex::Complex64;

use crate::charalg::{cycle_number, Characteristic};
use crate::error::{Result, ThetaError};
use crate::identity_suite::run_suite;
use crate::relation_engine::{build_relation, verify, CoefficientMode, RelationSpec, TrialSampler};
use crate::report;
use crate::theta_eval::{EvalSettings, PeriodMatrix};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_IDENTITY_FAIL: i32 = 1;
pub const EXIT_EVAL_FAIL: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Command {
    Emit,
    Verify,
    Falsify,
    Suite,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
pub enum Format {
    Json,
    Latex,
    Text,
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let t = s.trim();
    match t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16).map_err(|e| e.to_string()),
        None => t.parse().map_err(|e: std::num::ParseIntError| e.to_string()),
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "theta-rel", version, about = "Generate and verify theta relations for the S_n involution")]
pub struct CliConfig {
    pub command: Command,
    /// Number of theta factors (defaults: 4 for falsify, 3 otherwise).
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 1)]
    pub g: usize,
    /// Characteristic "p/q,...;p/q,...", one per factor; zeros when omitted.
    #[arg(long)]
    pub mu: Vec<String>,
    /// modified | naive | corrected
    #[arg(long, default_value = "modified")]
    pub mode: String,
    /// Trials for verify/falsify, τ samples for suite.
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_parser = parse_seed, default_value = "0xA11CE")]
    pub seed: u64,
    /// Fixed genus-1 τ such as "0.3+1.1i".
    #[arg(long)]
    pub tau: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Range "a..b" (inclusive) for table.
    #[arg(long, default_value = "3..10")]
    pub range: String,
}

/// Rendered output plus the process exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct CommandOutput {
    pub text: String,
    pub exit_code: i32,
}

fn usage(what: &'static str, token: &str) -> ThetaError {
    ThetaError::Parse {
        what,
        token: token.to_string(),
    }
}

/// Parses `"re+im i"`, `"im i"` or `"re"`.
pub fn parse_tau(s: &str) -> Result<Complex64> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || usage("tau", s);
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    let split = body
        .char_indices()
        .skip(1)
        .filter(|(i, c)| (*c == '+' || *c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i)
        .last();
    let (re, im) = match split {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => "1",
        "-" => "-1",
        other => other,
    };
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.trim_start_matches('+').parse().map_err(|_| bad())?;
    Ok(Complex64::new(re, im))
}

/// Inclusive `"a..b"` or `"a..=b"`.
pub fn parse_range(s: &str) -> Result<(u32, u32)> {
    let bad = || usage("range", s);
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let b = b.trim_start_matches('=');
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

impl CliConfig {
    fn n_or_default(&self) -> usize {
        self.n.unwrap_or(if self.command == Command::Falsify { 4 } else { 3 })
    }

    pub fn relation_spec(&self) -> Result<RelationSpec> {
        let n = self.n_or_default();
        let mode: CoefficientMode = self.mode.parse()?;
        if self.mu.is_empty() {
            return RelationSpec::zero(n, self.g, mode);
        }
        let mu = self
            .mu
            .iter()
            .map(|s| s.parse::<Characteristic>().map_err(|_| usage("characteristic", s)))
            .collect::<Result<Vec<_>>>()?;
        RelationSpec::new(n, self.g, mu, mode)
    }

    fn sampler(&self) -> Result<TrialSampler> {
        let sampler = TrialSampler::new(self.seed);
        match &self.tau {
            None => Ok(sampler),
            Some(t) => {
                if self.g != 1 {
                    return Err(ThetaError::Domain("--tau only applies to genus 1".into()));
                }
                Ok(sampler.with_fixed_tau(PeriodMatrix::g1(parse_tau(t)?)?))
            }
        }
    }
}

pub fn cmd_emit(cfg: &CliConfig) -> Result<CommandOutput> {
    let spec = cfg.relation_spec()?;
    let terms = build_relation(&spec)?;
    let text = match cfg.format.unwrap_or(Format::Latex) {
        Format::Json => report::RelationDoc::new(&spec, &terms).to_json(),
        Format::Latex => report::relation_latex(&spec, &terms),
        Format::Text => report::relation_text(&spec, &terms),
    };
    Ok(CommandOutput { text, exit_code: EXIT_PASS })
}

pub fn cmd_verify(cfg: &CliConfig) -> Result<CommandOutput> {
    let spec = cfg.relation_spec()?;
    let terms = build_relation(&spec)?;
    let settings = EvalSettings::from_env()?;
    let outcome = verify(&spec, cfg.trials.unwrap_or(100), cfg.tol.unwrap_or(1e-9), &cfg.sampler()?, &settings)?;
    let text = match cfg.format.unwrap_or(Format::Text) {
        Format::Json => report::verification_json(&spec, &terms, &outcome),
        _ => report::verification_text(&spec, &terms, &outcome),
    };
    Ok(CommandOutput {
        text,
        exit_code: outcome.exit_code(),
    })
}

/// Naive and modified rules on the same trials; succeeds when only the naive one fails.
pub fn cmd_falsify(cfg: &CliConfig) -> Result<CommandOutput> {
    let base = cfg.relation_spec()?;
    let settings = EvalSettings::from_env()?;
    let sampler = cfg.sampler()?;
    let trials = cfg.trials.unwrap_or(10);
    let tol = cfg.tol.unwrap_or(1e-9);
    let naive_spec = base.with_mode(CoefficientMode::Naive);
    let modified_spec = base.with_mode(CoefficientMode::Modified);
    let naive = verify(&naive_spec, trials, tol, &sampler, &settings)?;
    let modified = verify(&modified_spec, trials, tol, &sampler, &settings)?;
    if naive.eval_failures() + modified.eval_failures() > 0 {
        return Ok(CommandOutput {
            text: format!(
                "falsify n={} g={}: evaluation failures (naive {}, modified {})\n",
                base.n(),
                base.genus(),
                naive.eval_failures(),
                modified.eval_failures()
            ),
            exit_code: EXIT_EVAL_FAIL,
        });
    }
    let falsified = naive.identity_failures() > 0 && modified.exit_code() == 0;
    let text = match cfg.format.unwrap_or(Format::Text) {
        Format::Json => {
            let doc = serde_json::json!({
                "n": base.n(),
                "g": base.genus(),
                "lambda": base.lambda(),
                "trials": trials,
                "naive_max_rel_error": report::format_f64(naive.max_rel_error()),
                "modified_max_rel_error": report::format_f64(modified.max_rel_error()),
                "falsified": falsified,
            });
            serde_json::to_string_pretty(&doc).expect("json") + "\n"
        }
        _ => format!(
            "falsify n={} g={} lambda={} trials={}\nnaive    max_rel_error={:.3e} failures={}\nmodified max_rel_error={:.3e} failures={}\nfalsified={}\n",
            base.n(),
            base.genus(),
            base.lambda(),
            trials,
            naive.max_rel_error(),
            naive.identity_failures(),
            modified.max_rel_error(),
            modified.identity_failures(),
            falsified
        ),
    };
    Ok(CommandOutput {
        text,
        exit_code: if falsified { EXIT_PASS } else { EXIT_IDENTITY_FAIL },
    })
}

pub fn cmd_suite(cfg: &CliConfig) -> Result<CommandOutput> {
    let settings = EvalSettings::from_env()?;
    let mode: CoefficientMode = cfg.mode.parse()?;
    let rep = run_suite(cfg.trials.unwrap_or(10), cfg.seed, &settings, mode);
    let text = match cfg.format.unwrap_or(Format::Text) {
        Format::Json => report::suite_json(&rep),
        _ => report::suite_text(&rep),
    };
    Ok(CommandOutput {
        text,
        exit_code: rep.exit_code(),
    })
}

pub fn cycle_table(from: u32, to: u32) -> Result<Vec<(u32, u32)>> {
    (from..=to).map(|n| Ok((n, cycle_number(n)?))).collect()
}

pub fn cmd_table(cfg: &CliConfig) -> Result<CommandOutput> {
    let (a, b) = parse_range(&cfg.range)?;
    let rows = cycle_table(a, b)?;
    let text = match cfg.format.unwrap_or(Format::Text) {
        Format::Json => {
            let rows: Vec<_> = rows.iter().map(|(n, l)| serde_json::json!({"n": n, "lambda": l})).collect();
            serde_json::to_string_pretty(&serde_json::json!({ "table": rows })).expect("json") + "\n"
        }
        Format::Latex => {
            let ns: Vec<String> = rows.iter().map(|(n, _)| n.to_string()).collect();
            let ls: Vec<String> = rows.iter().map(|(_, l)| l.to_string()).collect();
            format!(
                "\\begin{{tabular}}{{|l|{}|}}\n\\hline\n$n$ & {} \\\\\n\\hline\n$\\lambda$ & {} \\\\\n\\hline\n\\end{{tabular}}\n",
                "c".repeat(rows.len()),
                ns.join(" & "),
                ls.join(" & ")
            )
        }
        Format::Text => {
            let mut s = String::from("n\tlambda\n");
            for (n, l) in rows {
                s.push_str(&format!("{n}\t{l}\n"));
            }
            s
        }
    };
    Ok(CommandOutput { text, exit_code: EXIT_PASS })
}

fn exit_for(err: &ThetaError) -> i32 {
    match err {
        ThetaError::Truncation { .. } => EXIT_EVAL_FAIL,
        _ => EXIT_USAGE,
    }
}

pub fn execute(cfg: &CliConfig) -> CommandOutput {
    let result = match cfg.command {
        Command::Emit => cmd_emit(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::Falsify => cmd_falsify(cfg),
        Command::Suite => cmd_suite(cfg),
        Command::Table => cmd_table(cfg),
    };
    match result {
        Ok(out) => out,
        Err(e) => CommandOutput {
            text: format!("error: {e}\n"),
            exit_code: exit_for(&e),
        },
    }
}

/// Parse, execute and write output; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let out = execute(&cfg);
    let is_error = out.text.starts_with("error: ");
    if is_error {
        eprint!("{}", out.text);
    } else if let Some(path) = &cfg.out {
        if let Err(e) = std::fs::write(path, out.text.as_bytes()) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    } else {
        print!("{}", out.text);
    }
    out.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation_engine::DEFAULT_SEED;

    fn cfg(args: &[&str]) -> CliConfig {
        CliConfig::try_parse_from(std::iter::once("theta-rel").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn tau_parsing() {
        assert_eq!(parse_tau("0.3+1.1i").unwrap(), Complex64::new(0.3, 1.1));
        assert_eq!(parse_tau("1.1i").unwrap(), Complex64::new(0.0, 1.1));
        assert_eq!(parse_tau("-0.25 - 0.9i").unwrap(), Complex64::new(-0.25, -0.9));
        assert_eq!(parse_tau("1e-1+2e0i").unwrap(), Complex64::new(0.1, 2.0));
        assert_eq!(parse_tau("i").unwrap(), Complex64::new(0.0, 1.0));
        assert!(parse_tau("abc").is_err());
    }

    #[test]
    fn range_parsing() {
        assert_eq!(parse_range("3..10").unwrap(), (3, 10));
        assert_eq!(parse_range("2..=2").unwrap(), (2, 2));
        assert!(parse_range("5..3").is_err());
        assert!(parse_range("x").is_err());
    }

    #[test]
    fn seeds() {
        assert_eq!(parse_seed("0xA11CE").unwrap(), DEFAULT_SEED);
        assert_eq!(parse_seed("42").unwrap(), 42);
        assert!(parse_seed("0xZZ").is_err());
    }

    #[test]
    fn bad_characteristic_names_token() {
        let out = execute(&cfg(&["emit", "--n", "3", "--mu", "0;0", "--mu", "1/q;0", "--mu", "0;0"]));
        assert_eq!(out.exit_code, EXIT_USAGE);
        assert!(out.text.contains("1/q;0"), "{}", out.text);
    }

    #[test]
    fn mu_count_mismatch_is_usage_error() {
        let out = execute(&cfg(&["emit", "--n", "3", "--mu", "0;0"]));
        assert_eq!(out.exit_code, EXIT_USAGE);
    }

    #[test]
    fn table_rows() {
        assert_eq!(cycle_table(2, 2).unwrap(), vec![(2, 1)]);
        assert_eq!(cycle_table(9, 9).unwrap(), vec![(9, 9)]);
        let out = execute(&cfg(&["table"]));
        assert!(out.text.starts_with("n\tlambda\n3\t3\n4\t2\n"));
    }
}
