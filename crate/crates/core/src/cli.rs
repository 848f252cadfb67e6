//! The `h4rb` command line.
//!
//! Every command writes one JSON document
//! `{"tool_version", "config", "results"}` and exits with 0 when all checks
//! pass, 1 on a mathematical mismatch and 2 on usage or feasibility errors.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::enumerate::{enumerate_packed, Strategy};
use crate::classify::orbits::{classify, OrbitContext};
use crate::classify::packed::{pack_weight, unpack_weighted, Fp};
use crate::classify::verify::{
    default_weights, verify_corollary, verify_families, verify_kernel_theorems, verify_subalgebras,
};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerifyScope {
    Families,
    Corollary,
    KernelTheorems,
    Subalgebras,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Backtracking,
}

#[derive(Clone, Debug, Parser, Serialize)]
pub struct RunConfig {
    /// Odd prime for finite-field commands.
    #[arg(long)]
    pub p: Option<u64>,
    /// Weight: a residue for `F_p` commands, a rational such as `-1/2` for
    /// rational checks.
    #[arg(long, allow_hyphen_values = true)]
    pub weight: Option<String>,
    /// Enumeration strategy; exhaustive for p = 3, backtracking otherwise.
    #[arg(long, value_enum)]
    #[serde(skip)]
    strategy: Option<StrategyArg>,
    #[arg(long, value_enum, default_value = "all")]
    pub scope: VerifyScope,
    /// Output file; stdout when absent.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub shards: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random samples per family and weight in randomized checks.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Rewrite the golden file for this run instead of comparing against it.
    #[arg(long)]
    #[serde(skip)]
    pub bless: bool,
    /// Directory holding golden files.
    #[arg(long)]
    #[serde(skip)]
    pub golden_dir: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "h4rb", version, about = "Rota-Baxter operators on the Sweedler algebra H4")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List every RB operator over F_p.
    Enumerate(RunConfig),
    /// Orbit partition and matching against the final list.
    Classify(RunConfig),
    /// Catalog checks selected by --scope.
    Verify(RunConfig),
    /// Classification and every verification in one document.
    Report(RunConfig),
}

impl RunConfig {
    fn prime(&self) -> Result<u64> {
        let p = self.p.unwrap_or(3);
        Field::prime(p)?;
        Ok(p)
    }

    pub fn strategy(&self) -> Result<Strategy> {
        Ok(match self.strategy {
            Some(StrategyArg::Exhaustive) => Strategy::Exhaustive,
            Some(StrategyArg::Backtracking) => Strategy::Backtracking,
            None if self.prime()? == 3 => Strategy::Exhaustive,
            None => Strategy::Backtracking,
        })
    }

    fn residue_weight(&self, fp: Fp) -> Result<u32> {
        let w = fp.field().parse(self.weight.as_deref().unwrap_or("1"))?;
        if w.is_zero() {
            return Err(Error::WeightMismatch("weight must be nonzero".into()));
        }
        pack_weight(fp, &w)
    }

    fn rational_weights(&self) -> Result<Vec<Scalar>> {
        match &self.weight {
            None => Ok(default_weights()),
            Some(s) => {
                let w = Field::Rational.parse(s)?;
                if w.is_zero() {
                    return Err(Error::WeightMismatch("weight must be nonzero".into()));
                }
                Ok(vec![w])
            }
        }
    }

    fn shards(&self) -> Result<usize> {
        if self.shards == 0 {
            return Err(Error::InvalidParams("--shards must be at least 1".into()));
        }
        Ok(self.shards)
    }
}

struct Outcome {
    results: Value,
    pass: bool,
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn enumerate_cmd(cfg: &RunConfig) -> Result<Outcome> {
    let fp = Fp::new(cfg.prime()?)?;
    let lam = cfg.residue_weight(fp)?;
    let strategy = cfg.strategy()?;
    let ops = enumerate_packed(fp, lam, strategy, cfg.shards()?)?;
    let operators: Vec<_> = ops.iter().map(|m| unpack_weighted(fp, m, lam).to_json()).collect();
    Ok(Outcome {
        results: json!({
            "field_p": fp.p,
            "weight": lam.to_string(),
            "strategy": strategy,
            "count": ops.len(),
            "operators": operators,
        }),
        pass: true,
    })
}

fn classify_cmd(cfg: &RunConfig) -> Result<Outcome> {
    let fp = Fp::new(cfg.prime()?)?;
    let lam = cfg.residue_weight(fp)?;
    let ops = enumerate_packed(fp, lam, cfg.strategy()?, cfg.shards()?)?;
    let report = classify(&OrbitContext::new(fp.p as u64, lam)?, &ops)?;
    Ok(Outcome { pass: report.complete(), results: to_value(&report) })
}

fn verify_scope(cfg: &RunConfig, scope: VerifyScope) -> Result<Outcome> {
    match scope {
        VerifyScope::Families => {
            let r = verify_families(&cfg.rational_weights()?, cfg.samples, cfg.seed)?;
            Ok(Outcome { pass: r.pass, results: to_value(&r) })
        }
        VerifyScope::Corollary => {
            let lambda = cfg.rational_weights()?.remove(0);
            let r = verify_corollary(&lambda, cfg.samples, cfg.seed, cfg.prime()?)?;
            Ok(Outcome { pass: r.pass, results: to_value(&r) })
        }
        VerifyScope::KernelTheorems => {
            let fp = Fp::new(cfg.prime()?)?;
            let lam = cfg.residue_weight(fp)?;
            let ops = enumerate_packed(fp, lam, cfg.strategy()?, cfg.shards()?)?;
            let r = verify_kernel_theorems(fp, lam, &ops)?;
            Ok(Outcome { pass: r.pass, results: to_value(&r) })
        }
        VerifyScope::Subalgebras => {
            let primes = match cfg.p {
                Some(p) => vec![p],
                None => vec![3, 5],
            };
            let r = verify_subalgebras(&primes)?;
            Ok(Outcome { pass: r.pass, results: to_value(&r) })
        }
        VerifyScope::All => {
            let mut results = serde_json::Map::new();
            let mut pass = true;
            for s in
                [VerifyScope::Families, VerifyScope::Corollary, VerifyScope::KernelTheorems, VerifyScope::Subalgebras]
            {
                let o = verify_scope(cfg, s)?;
                pass &= o.pass;
                results.insert(scope_name(s).into(), json!({ "pass": o.pass, "report": o.results }));
            }
            Ok(Outcome { results: Value::Object(results), pass })
        }
    }
}

fn scope_name(s: VerifyScope) -> &'static str {
    match s {
        VerifyScope::Families => "families",
        VerifyScope::Corollary => "corollary",
        VerifyScope::KernelTheorems => "kernel-theorems",
        VerifyScope::Subalgebras => "subalgebras",
        VerifyScope::All => "all",
    }
}

fn report_cmd(cfg: &RunConfig) -> Result<Outcome> {
    // Rational checks run at their default weights; F_p checks use --weight.
    let rational = RunConfig { weight: None, ..cfg.clone() };
    let classification = classify_cmd(cfg)?;
    let mut summary = vec![json!({ "check": "classification", "pass": classification.pass })];
    let mut sections = serde_json::Map::new();
    sections.insert("classification".into(), classification.results);
    let mut pass = classification.pass;
    for s in [VerifyScope::Families, VerifyScope::Corollary, VerifyScope::KernelTheorems, VerifyScope::Subalgebras] {
        let owned;
        let source = match s {
            VerifyScope::KernelTheorems => cfg,
            VerifyScope::Subalgebras => {
                owned = RunConfig { p: None, ..rational.clone() };
                &owned
            }
            _ => &rational,
        };
        let o = verify_scope(source, s)?;
        pass &= o.pass;
        summary.push(json!({ "check": scope_name(s), "pass": o.pass }));
        sections.insert(scope_name(s).into(), o.results);
    }
    sections.insert("summary".into(), Value::Array(summary));
    Ok(Outcome { results: Value::Object(sections), pass })
}

fn golden_path(dir: &Path, command: &str, cfg: &RunConfig) -> Result<PathBuf> {
    let p = cfg.prime()?;
    let weight = cfg.weight.clone().unwrap_or_else(|| "1".into()).replace('/', "_");
    let name = match command {
        "enumerate" | "classify" => format!("{command}-p{p}-w{weight}-{}.json", cfg.strategy()?),
        "verify" => format!("verify-{}-p{p}-w{weight}-s{}.json", scope_name(cfg.scope), cfg.seed),
        _ => format!("{command}-p{p}-w{weight}-s{}.json", cfg.seed),
    };
    Ok(dir.join(name))
}

fn default_golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("golden").join("v1")
}

/// Serialized envelope for a finished command.
pub fn envelope(command: &str, cfg: &RunConfig, results: &Value) -> String {
    let mut config = to_value(cfg);
    if let Value::Object(map) = &mut config {
        map.insert("command".into(), json!(command));
        map.insert("strategy".into(), cfg.strategy().map(|s| json!(s)).unwrap_or(Value::Null));
        map.insert("p".into(), json!(cfg.p.unwrap_or(3)));
    }
    let doc = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "config": config,
        "results": results,
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("envelope serializes");
    s.push('\n');
    s
}

fn execute(command: &str, cfg: &RunConfig) -> Result<i32> {
    let outcome = match command {
        "enumerate" => enumerate_cmd(cfg)?,
        "classify" => classify_cmd(cfg)?,
        "verify" => verify_scope(cfg, cfg.scope)?,
        _ => report_cmd(cfg)?,
    };
    let text = envelope(command, cfg, &outcome.results);
    match &cfg.out {
        Some(path) => {
            fs::write(path, &text).map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display())))?
        }
        None => print!("{text}"),
    }
    let mut code = if outcome.pass { EXIT_PASS } else { EXIT_MISMATCH };
    if matches!(command, "enumerate" | "classify") {
        let dir = cfg.golden_dir.clone().unwrap_or_else(default_golden_dir);
        let path = golden_path(&dir, command, cfg)?;
        let golden_text = serde_json::to_string_pretty(&outcome.results).expect("results serialize") + "\n";
        if cfg.bless {
            fs::create_dir_all(&dir)
                .and_then(|_| fs::write(&path, &golden_text))
                .map_err(|e| Error::Parse(format!("cannot write golden file {}: {e}", path.display())))?;
            eprintln!("blessed {}", path.display());
        } else if let Ok(existing) = fs::read_to_string(&path) {
            if existing != golden_text {
                eprintln!("mismatch against golden file {}", path.display());
                code = EXIT_MISMATCH;
            }
        }
    }
    Ok(code)
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let (name, cfg) = match &cli.command {
        Command::Enumerate(c) => ("enumerate", c),
        Command::Classify(c) => ("classify", c),
        Command::Verify(c) => ("verify", c),
        Command::Report(c) => ("report", c),
    };
    match execute(name, cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}: {e}", e.kind());
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn usage_errors_exit_two() {
        assert_eq!(run(["h4rb", "enumerate", "--p", "2"]), EXIT_USAGE);
        assert_eq!(run(["h4rb", "enumerate", "--p", "5", "--strategy", "exhaustive"]), EXIT_USAGE);
        assert_eq!(run(["h4rb", "classify", "--weight", "0"]), EXIT_USAGE);
        assert_eq!(run(["h4rb", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["h4rb", "enumerate", "--shards", "0"]), EXIT_USAGE);
    }

    #[test]
    fn golden_names_are_keyed_by_run() {
        let cfg = RunConfig::try_parse_from(["x", "--p", "5", "--weight", "-1/2"]).unwrap();
        let path = golden_path(Path::new("g"), "classify", &cfg).unwrap();
        assert_eq!(path, Path::new("g/classify-p5-w-1_2-backtracking.json"));
    }

    #[test]
    fn envelope_has_three_keys() {
        let cfg = RunConfig::try_parse_from(["x"]).unwrap();
        let v: Value = serde_json::from_str(&envelope("verify", &cfg, &json!({}))).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["config", "results", "tool_version"]);
        assert_eq!(v["config"]["command"], "verify");
    }
}
