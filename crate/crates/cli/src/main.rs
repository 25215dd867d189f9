//! `mzv-qd`: self-checks, generators and oracle verification for the
//! quasi-derivation relations among multiple zeta values.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qd_core::algebra::poly::push_scaled;
use qd_core::oracles::finite::primes_in;
use qd_core::oracles::numeric::{Method, NumericConfig, NumericEvaluator};
use qd_core::oracles::verify::{
    numeric_sweep, phi_invariance_sweep, stuffle_sweep, product_formula_sweep, SweepReport,
};
use qd_core::operators::Fault;
use qd_core::relations::{
    encode_coeff, expand_relation_in_c, kawashima_family, quasi_derivation_family, CoeffTerm, Family, Range,
    Relation,
};
use qd_core::selfcheck::{all_passed, run_all, Bounds, SuiteReport};
use qd_core::{Index, Operators, ParamPoly, Poly, Rational};

#[derive(Parser)]
#[command(name = "mzv-qd", version, about = "Quasi-derivation relations among multiple zeta values")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Run every symbolic identity suite; exit 1 on any mismatch.
    Selfcheck {
        /// Word degree used by every suite (default: 7 for the main identity and single-word suites, 6 for pairs and commutators).
        #[arg(long)]
        degree: Option<usize>,
        /// Largest operator index n (default 5; q-equality runs to 8 unless set).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, value_enum, hide = true)]
        inject_fault: Option<InjectedFault>,
    },
    /// Print qₙ, with c formal or specialized.
    Qn {
        #[arg(long)]
        n: usize,
        /// Specialize c to this rational.
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// Emit the relations of a family.
    Relations {
        #[command(flatten)]
        family: FamilyArgs,
        /// One relation per power of c.
        #[arg(long)]
        expand_c: bool,
    },
    /// Check relations against an oracle.
    Verify {
        #[arg(value_enum)]
        mode: Mode,
        #[command(flatten)]
        family: FamilyArgs,
        /// Values of c ("p/q"); repeatable.
        #[arg(long = "c", allow_hyphen_values = true, default_values_t = ["0".to_string(), "1".to_string()])]
        c: Vec<String>,
        /// Prime range for mod-p modes.
        #[arg(long, default_value = "11..97")]
        primes: String,
        /// Truncation N of the nested sums.
        #[arg(long, default_value_t = NumericConfig::DEFAULT_TRUNCATION)]
        trunc: u64,
        /// Numeric tolerance.
        #[arg(long, default_value_t = 1e-3)]
        tol: f64,
        /// Summation method for numeric mode.
        #[arg(long, value_enum, default_value_t = NumericMethod::Accelerated)]
        method: NumericMethod,
    },
}

#[derive(Args)]
struct FamilyArgs {
    #[arg(long, default_value = "qd")]
    family: String,
    /// Generator weight: "k", "lo..hi" or "..hi" (smallest valid weight up to hi).
    #[arg(long, default_value = "..4")]
    weight: String,
    /// Operator index for the qd family: "k" or "lo..hi".
    #[arg(long, default_value = "1..2")]
    n: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum InjectedFault {
    ThetaSign,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    /// Truncated real MZVs, |value| ≤ tol.
    Numeric,
    /// Z_F(∂ₙ^(c)(w)x⁻¹) = Z_F(wx⁻¹)Z_F(qₙ) mod p.
    Finite,
    /// Z_F(w₁∗w₂) = Z_F(w₁)Z_F(w₂) mod p, words of weight ≤ the upper weight bound.
    Stuffle,
    /// Z_F(φ(w)) = Z_F(w) mod p, words of weight ≤ the upper weight bound.
    Phi,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum NumericMethod {
    Truncated,
    Accelerated,
}

/// What a command produced: text, JSON, and whether it counts as success.
struct Output {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let body = match cli.format {
                Format::Text => out.text,
                Format::Json => {
                    let mut s = serde_json::to_string_pretty(&out.json).expect("serializable");
                    s.push('\n');
                    s
                }
            };
            let written = match &cli.out {
                Some(path) => fs::write(path, &body).with_context(|| format!("writing {path}")),
                None => {
                    print!("{body}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Selfcheck { degree, n, inject_fault } => cmd_selfcheck(*degree, *n, *inject_fault),
        Command::Qn { n, c } => cmd_qn(*n, c.as_deref()),
        Command::Relations { family, expand_c } => cmd_relations(family, *expand_c),
        Command::Verify { mode, family, c, primes, trunc, tol, method } => {
            cmd_verify(*mode, family, c, primes, *trunc, *tol, *method)
        }
    }
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse().with_context(|| format!("invalid rational {s:?}"))
}

fn parse_range(s: &str, min: usize) -> Result<Range> {
    let s = s.trim();
    let r = match s.strip_prefix("..") {
        Some(hi) => format!("{min}..{hi}"),
        None => s.to_string(),
    };
    Ok(r.parse::<Range>()?)
}

fn parse_family(s: &str) -> Result<Family> {
    Ok(s.parse::<Family>()?)
}

fn min_weight(family: Family) -> usize {
    match family {
        Family::QuasiDerivation => 2,
        Family::Kawashima => 1,
    }
}

fn build_relations(args: &FamilyArgs) -> Result<Vec<Relation>> {
    let family = parse_family(&args.family)?;
    let weights = parse_range(&args.weight, min_weight(family))?;
    Ok(match family {
        Family::QuasiDerivation => {
            let ns = parse_range(&args.n, 1)?;
            quasi_derivation_family(&Operators::formal(), weights, ns)?
        }
        Family::Kawashima => kawashima_family(weights)?,
    })
}

#[derive(Serialize)]
struct SelfcheckOutput<'a> {
    bounds: &'a Bounds,
    fault: Option<&'static str>,
    passed: bool,
    suites: &'a [SuiteReport],
}

fn cmd_selfcheck(degree: Option<usize>, n: Option<usize>, fault: Option<InjectedFault>) -> Result<Output> {
    let mut bounds = Bounds::default();
    if let Some(d) = degree {
        if d == 0 {
            bail!("--degree must be positive");
        }
        bounds.identity_degree = d;
        bounds.word_degree = d;
        bounds.pair_degree = d;
        bounds.derivation_degree = d;
        bounds.commutator_degree = d;
    }
    if let Some(n) = n {
        if n == 0 {
            bail!("--n must be positive");
        }
        bounds.n_max = n;
        bounds.q_max = n;
    }
    let fault = fault.map(|InjectedFault::ThetaSign| Fault::ThetaSign);
    let suites = run_all(&bounds, fault);
    let passed = all_passed(&suites);

    let mut text = String::new();
    for s in &suites {
        let status = match (s.passed(), s.informational) {
            (true, _) => "PASS",
            (false, true) => "INFO",
            (false, false) => "FAIL",
        };
        write!(text, "{status} {:<36} cases={:<6} failures={}", s.suite, s.cases, s.failures)?;
        if let Some(note) = &s.note {
            write!(text, "  ({note})")?;
        }
        text.push('\n');
        for case in &s.failing_cases {
            writeln!(text, "    {case}")?;
        }
    }
    let total: usize = suites.iter().map(|s| s.cases).sum();
    let failed: usize = suites.iter().filter(|s| !s.informational).map(|s| s.failures).sum();
    writeln!(text, "selfcheck: {} suites, {total} cases, {failed} failures", suites.len())?;

    let json = serde_json::to_value(SelfcheckOutput {
        bounds: &bounds,
        fault: fault.map(|_| "theta-sign"),
        passed,
        suites: &suites,
    })?;
    Ok(Output { text, json, ok: passed })
}

#[derive(Serialize)]
struct QnTerm {
    word: String,
    index: String,
    coefficient: Vec<CoeffTerm>,
}

#[derive(Serialize)]
struct QnOutput {
    n: usize,
    c: Option<String>,
    expansion: String,
    indexed: String,
    terms: Vec<QnTerm>,
}

/// `Σ coefficient · [k₁,…,k_r]` with `[k₁,…,k_r]` standing for
/// `y x^{k₁−1} ⋯ y x^{k_r−1}`.
fn render_indexed(p: &Poly) -> Result<String> {
    let mut out = String::new();
    for (w, r) in p.terms() {
        let k = Index::from_word(*w)?;
        let parts: Vec<String> = k.parts().iter().map(u32::to_string).collect();
        push_scaled(&mut out, r, &format!("[{}]", parts.join(",")));
    }
    if out.is_empty() {
        out.push('0');
    }
    Ok(out)
}

fn cmd_qn(n: usize, c: Option<&str>) -> Result<Output> {
    if n == 0 {
        bail!("n must be at least 1");
    }
    let mut q = Operators::<ParamPoly>::formal().q_n_checked(n)?;
    let c_val = c.map(parse_rational).transpose()?;
    if let Some(c) = &c_val {
        q = q.substitute_c(c);
    }
    let expansion = q.render();
    let indexed = render_indexed(&q)?;
    let terms = q
        .terms()
        .map(|(w, r)| {
            Ok(QnTerm { word: w.to_string(), index: Index::from_word(*w)?.to_string(), coefficient: encode_coeff(r) })
        })
        .collect::<Result<Vec<_>>>()?;
    let text = format!("{expansion}\n{indexed}\n");
    let json = serde_json::to_value(QnOutput { n, c: c_val.map(|c| c.to_string()), expansion, indexed, terms })?;
    Ok(Output { text, json, ok: true })
}

fn cmd_relations(args: &FamilyArgs, expand_c: bool) -> Result<Output> {
    let mut rels = build_relations(args)?;
    if expand_c {
        rels = rels.iter().flat_map(expand_relation_in_c).collect();
    }
    let mut text = String::new();
    for r in &rels {
        writeln!(text, "{}: {}", r.source(), r.render())?;
    }
    writeln!(text, "{} relations", rels.len())?;
    Ok(Output { text, json: serde_json::to_value(&rels)?, ok: true })
}

#[derive(Serialize)]
struct Summary {
    checks: usize,
    passed: usize,
    failed: usize,
    excluded: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    excluded_primes: Vec<u64>,
}

#[derive(Serialize)]
struct VerifyOutput<'a> {
    mode: &'static str,
    summary: Summary,
    #[serde(flatten)]
    sweep: &'a SweepReport,
}

fn cmd_verify(
    mode: Mode,
    args: &FamilyArgs,
    cs: &[String],
    primes: &str,
    trunc: u64,
    tol: f64,
    method: NumericMethod,
) -> Result<Output> {
    if !(tol > 0.0) {
        bail!("--tol must be positive");
    }
    let cs = cs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
    let prime_list = || -> Result<Vec<u64>> {
        let r = parse_range(primes, 2)?;
        let ps = primes_in(r.lo as u64, r.hi as u64);
        if ps.is_empty() {
            bail!("no primes in {primes}");
        }
        Ok(ps)
    };
    let (name, sweep) = match mode {
        Mode::Numeric => {
            let method = match method {
                NumericMethod::Truncated => Method::Truncated,
                NumericMethod::Accelerated => Method::Accelerated,
            };
            let mut ev = NumericEvaluator::new(NumericConfig::new(trunc)?.with_method(method));
            ("numeric", numeric_sweep(&build_relations(args)?, &cs, &mut ev, tol)?)
        }
        Mode::Finite => {
            let family = parse_family(&args.family)?;
            if family != Family::QuasiDerivation {
                bail!("finite mode checks the qd family only");
            }
            let weights = parse_range(&args.weight, 2)?;
            let ns = parse_range(&args.n, 1)?;
            ("finite", product_formula_sweep(&Operators::formal(), weights, ns, &cs, &prime_list()?)?)
        }
        Mode::Stuffle => ("stuffle", stuffle_sweep(parse_range(&args.weight, 1)?.hi, &prime_list()?)?),
        Mode::Phi => ("phi", phi_invariance_sweep(parse_range(&args.weight, 1)?.hi, &prime_list()?)?),
    };

    let failed = sweep.failure_count();
    let mut excluded_primes: Vec<u64> = sweep.excluded.iter().map(|e| e.prime).collect();
    excluded_primes.sort_unstable();
    excluded_primes.dedup();
    let summary = Summary {
        checks: sweep.reports.len(),
        passed: sweep.reports.len() - failed,
        failed,
        excluded: sweep.excluded.len(),
        excluded_primes,
    };

    let mut text = String::new();
    for r in sweep.failures() {
        let param = match (r.prime, r.truncation) {
            (Some(p), _) => format!("p={p}"),
            (_, Some(n)) => format!("N={n}"),
            _ => String::new(),
        };
        writeln!(text, "FAIL {}: {} c={} {param} value={} threshold={}", r.family, r.source, r.c, r.value, r.threshold)?;
    }
    if !summary.excluded_primes.is_empty() {
        let ps: Vec<String> = summary.excluded_primes.iter().map(u64::to_string).collect();
        writeln!(text, "excluded: {} tuples at primes {}", summary.excluded, ps.join(","))?;
    }
    if mode == Mode::Numeric {
        writeln!(text, "max |value| = {:.3e}", sweep.max_value())?;
    }
    writeln!(text, "{name}: {} checks, {} passed, {} failed, {} excluded", summary.checks, summary.passed, failed, summary.excluded)?;

    let json = serde_json::to_value(VerifyOutput { mode: name, summary, sweep: &sweep })?;
    Ok(Output { text, json, ok: failed == 0 })
}
