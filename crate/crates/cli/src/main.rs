//! Command-line front end: classification, scalar sequences, recurrence
//! solving, verification, residues, factor tables, quadrature checks, and the
//! library self-test. Output is byte-deterministic for identical inputs.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sbo_core::harmonics::{embed, harmonic_basis};
use sbo_core::quad;
use sbo_core::sbo::{
    classify, residue_check, seq_a, seq_a1, seq_a2, seq_b, seq_c, solve_relations,
    verify_relations, Family, ScalarSeq,
};
use sbo_core::{Error, Params, Rat};

const EXIT_VIOLATIONS: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_LOCUS: u8 = 3;
const EXIT_NONINTEGRABLE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "sbo",
    about = "Exact symmetry breaking operators between line-bundle principal series of GL(n+1,R) and GL(n,R)",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, ValueEnum)]
enum OutputKind {
    Json,
    Csv,
    Table,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Rank parameter; the pair is GL(n+1,R) / GL(n,R)
    #[arg(long)]
    n: Option<u32>,
    /// Rational literal "p" or "p/q"
    #[arg(long, allow_hyphen_values = true)]
    lambda1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    lambda2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    nu1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    nu2: Option<String>,
    /// Triangle cutoff for sequences and the solver
    #[arg(long)]
    cutoff: Option<u32>,
    /// Output format
    #[arg(long)]
    output: Option<OutputKind>,
    /// key=value file supplying defaults for any of the flags above
    #[arg(long)]
    config: Option<String>,
}

struct Run {
    params: Params,
    cutoff: u32,
    output: OutputKind,
}

impl ParamArgs {
    /// Merge flags over the optional config file; flags win.
    fn resolve(&self) -> Result<Run, String> {
        let mut file: BTreeMap<String, String> = BTreeMap::new();
        if let Some(path) = &self.config {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read config {path}: {e}"))?;
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let Some((k, v)) = line.split_once('=') else {
                    return Err(format!("config line {} is not key=value", lineno + 1));
                };
                file.insert(k.trim().to_string(), v.trim().to_string());
            }
        }
        let pick = |flag: &Option<String>, key: &str| -> Option<String> {
            flag.clone().or_else(|| file.get(key).cloned())
        };
        let n = match self.n {
            Some(n) => n,
            None => file
                .get("n")
                .ok_or("missing --n")?
                .parse()
                .map_err(|e| format!("bad n: {e}"))?,
        };
        let lambda1 = pick(&self.lambda1, "lambda1").ok_or("missing --lambda1")?;
        let lambda2 = pick(&self.lambda2, "lambda2").ok_or("missing --lambda2")?;
        let nu1 = pick(&self.nu1, "nu1").ok_or("missing --nu1")?;
        let nu2 = pick(&self.nu2, "nu2").ok_or("missing --nu2")?;
        let params =
            Params::from_strs(n, &lambda1, &lambda2, &nu1, &nu2).map_err(|e| e.to_string())?;
        let cutoff = match self.cutoff {
            Some(c) => c,
            None => match file.get("cutoff") {
                Some(c) => c.parse().map_err(|e| format!("bad cutoff: {e}"))?,
                None => 8,
            },
        };
        let output = self.output.unwrap_or(OutputKind::Table);
        Ok(Run { params, cutoff, output })
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Multiplicity and basis labels at a parameter point
    Classify(ParamArgs),
    /// Exact scalar sequence of one family
    Scalars {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        family: String,
    },
    /// Exact nullspace basis of the recurrence system
    Solve(ParamArgs),
    /// Check the recurrence relations (default family: the classified basis)
    Verify {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        family: Option<String>,
    },
    /// Residue identities applicable at the point
    Residues(ParamArgs),
    /// Composition-factor operator table at a joint reducibility point
    Factors(ParamArgs),
    /// Compare an integral operator against its exact spectral prediction
    Quadcheck {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long)]
        family: String,
    },
    /// Dump the proportionality-constant table as CSV
    Consts {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 4)]
        alpha_max: u32,
    },
    /// Run the library invariant suite
    Selftest,
}

fn err_exit(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    let code = match e {
        Error::LocusMismatch(_) | Error::SingularParameter(_) => EXIT_LOCUS,
        Error::NonIntegrable(_) => EXIT_NONINTEGRABLE,
        _ => EXIT_PARSE,
    };
    ExitCode::from(code)
}

fn print_seq(s: &ScalarSeq, output: OutputKind) {
    match output {
        OutputKind::Csv => print!("{}", s.to_csv()),
        OutputKind::Json => println!("{}", s.to_json()),
        OutputKind::Table => {
            println!("family {} (prefactor {})", s.family, s.prefactor);
            for alpha in 0..=s.cutoff {
                let mut line = String::new();
                for alphap in 0..=alpha {
                    let _ = write!(line, "{}\t", s.value(alpha, alphap));
                }
                println!("{}", line.trim_end());
            }
        }
    }
}

fn family_sequence(p: &Params, family: &Family, cutoff: u32) -> sbo_core::Result<ScalarSeq> {
    match family {
        Family::A => seq_a(p, cutoff),
        Family::A1 => seq_a1(p, cutoff),
        Family::A2 => seq_a2(p, cutoff),
        Family::B => seq_b(p, cutoff),
        Family::C => seq_c(p, cutoff),
        Family::Custom(_) => Err(Error::InvalidParams("no closed form".into())),
    }
}

fn cmd_classify(run: &Run) -> ExitCode {
    let c = classify(&run.params);
    match run.output {
        OutputKind::Json => println!("{}", c.to_json()),
        OutputKind::Csv => {
            println!("dim,basis,case");
            let basis: Vec<String> = c.basis.iter().map(|f| f.to_string()).collect();
            println!("{},{},{}", c.dim, basis.join("+"), c.case_tag);
        }
        OutputKind::Table => {
            println!("dim   {}", c.dim);
            let basis: Vec<String> = c.basis.iter().map(|f| f.to_string()).collect();
            println!("basis {{{}}}", basis.join(", "));
            println!("case  {}", c.case_tag);
        }
    }
    ExitCode::SUCCESS
}

fn cmd_scalars(run: &Run, family: &str) -> ExitCode {
    let family: Family = match family.parse() {
        Ok(f) => f,
        Err(e) => return err_exit(&e),
    };
    match family_sequence(&run.params, &family, run.cutoff) {
        Ok(s) => {
            print_seq(&s, run.output);
            ExitCode::SUCCESS
        }
        Err(e) => err_exit(&e),
    }
}

fn cmd_solve(run: &Run) -> ExitCode {
    match solve_relations(&run.params, run.cutoff) {
        Ok(basis) => {
            match run.output {
                OutputKind::Json => {
                    let seqs: Vec<serde_json::Value> = basis.iter().map(|s| s.to_json()).collect();
                    println!("{}", serde_json::json!({ "dim": basis.len(), "basis": seqs }));
                }
                _ => {
                    println!("dim {}", basis.len());
                    for s in &basis {
                        print_seq(s, run.output);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => err_exit(&e),
    }
}

fn cmd_verify(run: &Run, family: Option<&str>) -> ExitCode {
    let families: Vec<Family> = match family {
        Some(f) => match f.parse() {
            Ok(f) => vec![f],
            Err(e) => return err_exit(&e),
        },
        None => {
            let c = classify(&run.params);
            if c.basis.is_empty() {
                eprintln!("error: nothing to verify, the multiplicity space is zero");
                return ExitCode::from(EXIT_LOCUS);
            }
            c.basis
        }
    };
    let mut all_ok = true;
    for f in &families {
        let seq = match family_sequence(&run.params, f, run.cutoff) {
            Ok(s) => s,
            Err(e) => return err_exit(&e),
        };
        let v = verify_relations(&seq);
        if v.is_empty() {
            println!("{f}: ok, all relation instances hold exactly");
        } else {
            all_ok = false;
            println!("{f}: {} violations", v.len());
            for viol in v.iter().take(10) {
                println!("  {viol}");
            }
        }
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATIONS)
    }
}

fn cmd_residues(run: &Run) -> ExitCode {
    match residue_check(&run.params, run.cutoff) {
        Ok(reports) => {
            for r in reports {
                println!("{:?}: rational ratio {}", r.identity, r.ratio);
            }
            ExitCode::SUCCESS
        }
        Err(e) => err_exit(&e),
    }
}

fn cmd_factors(run: &Run) -> ExitCode {
    use sbo_core::sbo::{classify_factor_sbo, FactorKind, FactorLabel, Side};
    use sbo_core::Sign;
    let p = &run.params;
    let flags = p.flags();
    let (Some((sl, i)), Some((sn, j))) = (flags.lambda_red, flags.nu_red) else {
        return err_exit(&Error::LocusMismatch(
            "both lambda1 and nu1 must sit at reducibility points".into(),
        ));
    };
    if !flags.cond_a {
        return err_exit(&Error::LocusMismatch("the factor tables require lambda2 = nu2".into()));
    }
    println!("lambda1 side: i = {i} ({})", if sl == Sign::Plus { "+" } else { "-" });
    println!("nu1 side:     j = {j} ({})", if sn == Sign::Plus { "+" } else { "-" });
    for uk in [FactorKind::F, FactorKind::T] {
        let u = FactorLabel { side: Side::G, kind: uk, sign: sl, index: i };
        let mut row = vec![format!("{u}")];
        for vk in [FactorKind::F, FactorKind::T] {
            for vs in [Sign::Plus, Sign::Minus] {
                let v = FactorLabel { side: Side::Gp, kind: vk, sign: vs, index: j };
                let cell = match classify_factor_sbo(&u, &v, p) {
                    Ok(label) => label.to_string(),
                    Err(Error::LocusMismatch(_)) => "-".to_string(),
                    Err(e) => return err_exit(&e),
                };
                row.push(format!("{v}: {cell}"));
            }
        }
        println!("{}", row.join("  |  "));
    }
    ExitCode::SUCCESS
}

fn cmd_quadcheck(run: &Run, family: &str) -> ExitCode {
    let family: Family = match family.parse() {
        Ok(f) => f,
        Err(e) => return err_exit(&e),
    };
    let p = &run.params;
    let n = p.n as usize;
    let seq = match family_sequence(p, &family, 3) {
        Ok(s) => s,
        Err(e) => return err_exit(&e),
    };
    let pref = quad::prefactor_f64(&seq.prefactor);
    let y: Vec<Rat> = {
        let mut v = vec![Rat::zero(); n];
        v[0] = Rat::ratio(3, 5);
        v[n - 1] = Rat::ratio(4, 5);
        v
    };
    let y_hat: Vec<f64> = {
        let f: Vec<f64> = y.iter().map(Rat::to_f64).collect();
        let norm = f.iter().map(|t| t * t).sum::<f64>().sqrt();
        f.into_iter().map(|t| t / norm).collect()
    };
    for alpha in 0..=3u32 {
        for alphap in 0..=alpha {
            let phi = harmonic_basis(n, 2 * alphap as usize).remove(0);
            let phit = match embed(&phi, alpha) {
                Ok(e) => e,
                Err(e) => return err_exit(&e),
            };
            let measured = match &family {
                Family::A | Family::A1 | Family::A2 => quad::apply_a(p, &phit, &y),
                Family::B => quad::apply_b(p, &phit),
                Family::C => quad::apply_c(p, &phit, &y),
                Family::Custom(_) => unreachable!(),
            };
            let measured = match measured {
                Ok(v) => v,
                Err(e) => return err_exit(&e),
            };
            let mut point = y_hat.clone();
            point.push(0.0);
            let predicted = pref * seq.value(alpha, alphap).to_f64() * phit.eval_f64(&point);
            let scale = predicted.abs().max(measured.abs()).max(1e-30);
            let rel = (measured - predicted).abs() / scale;
            let rec = serde_json::json!({
                "family": family.to_string(),
                "params": { "n": p.n, "lambda1": p.lambda1.to_string(), "nu1": p.nu1.to_string() },
                "alpha": alpha,
                "alphap": alphap,
                "predicted": predicted,
                "measured": measured,
                "rel_error": rel,
            });
            println!("{rec}");
        }
    }
    ExitCode::SUCCESS
}

fn cmd_consts(n: u32, alpha_max: u32) -> ExitCode {
    use sbo_core::cocycle::{prop_const, ArrowKey};
    println!("alpha,alphap,beta,betap,value");
    for alpha in 0..=alpha_max {
        for alphap in 0..=alpha {
            for beta in alpha.saturating_sub(1)..=alpha + 1 {
                for betap in alphap.saturating_sub(1)..=alphap + 1 {
                    let k = ArrowKey::new(alpha, alphap, beta, betap, n);
                    println!("{alpha},{alphap},{beta},{betap},{}", prop_const(&k));
                }
            }
        }
    }
    ExitCode::SUCCESS
}

fn cmd_selftest() -> ExitCode {
    let results = sbo_core::selftest::run();
    let mut ok = true;
    for r in &results {
        println!("{} {}", if r.passed { "PASS" } else { "FAIL" }, r.name);
        ok &= r.passed;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_VIOLATIONS)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let resolve = |p: &ParamArgs| -> Result<Run, ExitCode> {
        p.resolve().map_err(|msg| {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_PARSE)
        })
    };
    match &cli.cmd {
        Cmd::Classify(p) => resolve(p).map_or_else(|c| c, |run| cmd_classify(&run)),
        Cmd::Scalars { p, family } => {
            resolve(p).map_or_else(|c| c, |run| cmd_scalars(&run, family))
        }
        Cmd::Solve(p) => resolve(p).map_or_else(|c| c, |run| cmd_solve(&run)),
        Cmd::Verify { p, family } => {
            resolve(p).map_or_else(|c| c, |run| cmd_verify(&run, family.as_deref()))
        }
        Cmd::Residues(p) => resolve(p).map_or_else(|c| c, |run| cmd_residues(&run)),
        Cmd::Factors(p) => resolve(p).map_or_else(|c| c, |run| cmd_factors(&run)),
        Cmd::Quadcheck { p, family } => {
            resolve(p).map_or_else(|c| c, |run| cmd_quadcheck(&run, family))
        }
        Cmd::Consts { n, alpha_max } => cmd_consts(*n, *alpha_max),
        Cmd::Selftest => cmd_selftest(),
    }
}
