//! Command-line front end. [`run`] is pure apart from reading the input
//! file, so tests drive it directly.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::charset::{
    characteristic_set, initial_product, is_characteristic_set, prove_geometric, zero_decompose, DecomposeOptions,
    Limits, DEFAULT_MAX_DEPTH, DEFAULT_MAX_ITERATIONS,
};
use crate::coeff::Field;
use crate::error::{Error, Result};
use crate::io::parse::{parse_system_with_field, SystemFile};
use crate::io::report::*;
use crate::pseudo::{pseudo_divide, set_pseudo_divide};
use crate::triset::{basic_set, TriangularSet};
use crate::zeroset::ZeroOracle;

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "wuritt", version, about = "Characteristic sets and zero decomposition of polynomial systems")]
pub struct Cli {
    /// Emit a JSON report instead of text
    #[arg(long, global = true)]
    pub json: bool,

    /// Seed echoed into JSON reports; every command is deterministic
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Ceiling on characteristic-set iterations
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ITERATIONS)]
    pub max_iter: usize,

    /// Ceiling on zero-decomposition recursion depth
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEPTH)]
    pub max_depth: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Pseudo-divide one polynomial by another (1-based indices into `polys:`)
    Prem {
        file: PathBuf,
        #[arg(long)]
        dividend: usize,
        #[arg(long)]
        divisor: usize,
    },
    /// Pseudo-divide by the triangular set formed by the other polynomials, in file order
    Setprem {
        file: PathBuf,
        #[arg(long)]
        dividend: usize,
    },
    /// Print a basic set of the system
    Basicset { file: PathBuf },
    /// Compute a characteristic set
    Charset {
        file: PathBuf,
        /// Show the basic set and remainder count of each round
        #[arg(long)]
        trace: bool,
    },
    /// Decompose the zero set into quasi-zero sets of triangular sets
    Zdecomp {
        file: PathBuf,
        /// Keep branches whose initial is a nonzero constant
        #[arg(long)]
        no_prune: bool,
    },
    /// Check results by enumerating all points over GF(p)
    Verify {
        file: PathBuf,
        #[arg(long)]
        prime: u64,
        /// Checks to run; all three when omitted
        #[arg(long, value_enum)]
        check: Vec<CheckKind>,
    },
    /// Test whether `conclusion:` follows from the system
    Prove { file: PathBuf },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckKind {
    Charset,
    Eq1,
    Eq2,
}

impl CheckKind {
    fn label(self) -> &'static str {
        match self {
            CheckKind::Charset => "charset",
            CheckKind::Eq1 => "eq1",
            CheckKind::Eq2 => "eq2",
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CeilingExceeded(_) | Error::Internal(_) | Error::ExponentOverflow => EXIT_INTERNAL,
        _ => EXIT_USAGE,
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok((code, stdout)) => Outcome { code, stdout, stderr: String::new() },
        Err((path, err)) => {
            let stderr = match (&err, path) {
                (Error::Parse(pe), Some(p)) => format!("error: {}:{}:{}: {}\n", p.display(), pe.line, pe.column, pe),
                _ => format!("error: {err}\n"),
            };
            Outcome { code: exit_code(&err), stdout: String::new(), stderr }
        }
    }
}

type Failure = (Option<PathBuf>, Error);

fn load(path: &PathBuf, field: Option<Field>) -> std::result::Result<SystemFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| (None, Error::Usage(format!("cannot read {}: {e}", path.display()))))?;
    parse_system_with_field(&text, field).map_err(|e| (Some(path.clone()), Error::Parse(e)))
}

fn pick(sys: &SystemFile, index: usize, flag: &str) -> Result<usize> {
    if index == 0 || index > sys.polys.len() {
        return Err(Error::Usage(format!(
            "--{flag} {index} is out of range; the file lists {} polynomial(s), numbered from 1",
            sys.polys.len()
        )));
    }
    Ok(index - 1)
}

fn emit<T: Serialize>(cli: &Cli, sys: &SystemFile, command: &'static str, result: T, text: String) -> String {
    if !cli.json {
        return text;
    }
    let env = Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        field: sys.field.to_string(),
        vars: sys.order.names().to_vec(),
        seed: cli.seed,
        result,
    };
    let mut s = serde_json::to_string_pretty(&env).expect("reports serialize");
    s.push('\n');
    s
}

fn limits(cli: &Cli) -> Limits {
    Limits { max_iterations: cli.max_iter, max_depth: cli.max_depth }
}

fn member_lines(out: &mut String, members: &[MemberReport]) {
    for m in members {
        let rank = match &m.main_variable {
            Some(v) => format!("class {v}, degree {}", m.main_degree),
            None => "constant".to_string(),
        };
        let _ = writeln!(out, "  {}    [{rank}; initial {}]", m.polynomial, m.initial);
    }
}

fn execute(cli: &Cli) -> std::result::Result<(i32, String), Failure> {
    let no_path = |e: Error| (None, e);
    match &cli.command {
        Command::Prem { file, dividend, divisor } => {
            let sys = load(file, None)?;
            let g = &sys.polys[pick(&sys, *dividend, "dividend").map_err(no_path)?];
            let f = &sys.polys[pick(&sys, *divisor, "divisor").map_err(no_path)?];
            let res = pseudo_divide(g, f).map_err(no_path)?;
            let r = PremReport::new(g, f, &res);
            // Division by zero returns g itself, which is never reduced.
            let code = if r.identity_checked && (r.reduced || f.is_zero()) { EXIT_OK } else { EXIT_PROPERTY_FAILED };
            let text = format!(
                "dividend:  {}\ndivisor:   {}\nexponent:  {}\nquotient:  {}\nremainder: {}\nidentity:  {}\n",
                r.dividend,
                r.divisor,
                r.exponent,
                r.quotient,
                r.remainder,
                if r.identity_checked { "verified" } else { "FAILED" },
            );
            Ok((code, emit(cli, &sys, "prem", r, text)))
        }
        Command::Setprem { file, dividend } => {
            let sys = load(file, None)?;
            let i = pick(&sys, *dividend, "dividend").map_err(no_path)?;
            let g = &sys.polys[i];
            let rest: Vec<_> = sys.polys.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
            let set = TriangularSet::new(rest).map_err(no_path)?;
            let res = set_pseudo_divide(g, &set).map_err(no_path)?;
            let r = SetPremReport::new(g, &set, &res);
            let code = if r.identity_checked && r.reduced { EXIT_OK } else { EXIT_PROPERTY_FAILED };
            let mut text = format!("dividend:  {}\ntriangular set:\n", r.dividend);
            for (k, ((m, q), e)) in r.triangular_set.iter().zip(&r.quotients).zip(&r.exponents).enumerate() {
                let _ = writeln!(text, "  [{}] {m}    exponent {e}, quotient {q}", k + 1);
            }
            let _ = writeln!(text, "remainder: {}", r.remainder);
            let _ = writeln!(text, "identity:  {}", if r.identity_checked { "verified" } else { "FAILED" });
            Ok((code, emit(cli, &sys, "setprem", r, text)))
        }
        Command::Basicset { file } => {
            let sys = load(file, None)?;
            let bs = basic_set(&sys.polys).map_err(no_path)?;
            let r = BasicSetReport { members: members(&bs), contradictory: bs.is_contradictory() };
            let mut text = String::from("basic set:\n");
            member_lines(&mut text, &r.members);
            if r.contradictory {
                text.push_str("contradictory: the system has no zeros\n");
            }
            Ok((EXIT_OK, emit(cli, &sys, "basicset", r, text)))
        }
        Command::Charset { file, trace } => {
            let sys = load(file, None)?;
            let (cs, tr) = characteristic_set(&sys.polys, &limits(cli)).map_err(no_path)?;
            let verdict = is_characteristic_set(&cs, &sys.polys, None).map_err(no_path)?;
            let ip = initial_product(&cs, sys.field, &sys.order);
            let r = CharsetReport {
                members: members(&cs),
                initial_product: ip.to_string(),
                contradictory: cs.is_contradictory(),
                remainders_vanish: verdict.remainders_vanish,
                iteration_count: tr.iterations.len(),
                trace: trace.then(|| trace_report(&tr)),
            };
            let code = if r.remainders_vanish { EXIT_OK } else { EXIT_PROPERTY_FAILED };
            let mut text = String::from("characteristic set:\n");
            member_lines(&mut text, &r.members);
            let _ = writeln!(text, "initial product: {}", r.initial_product);
            let _ = writeln!(text, "remainders vanish: {}", r.remainders_vanish);
            if r.contradictory {
                text.push_str("contradictory: the system has no zeros\n");
            }
            if let Some(its) = &r.trace {
                for (k, it) in its.iter().enumerate() {
                    let _ = writeln!(
                        text,
                        "round {}: basic set [{}], {} nonzero remainder(s)",
                        k + 1,
                        it.basic_set.join(", "),
                        it.nonzero_remainders
                    );
                }
            }
            Ok((code, emit(cli, &sys, "charset", r, text)))
        }
        Command::Zdecomp { file, no_prune } => {
            let sys = load(file, None)?;
            let opts = DecomposeOptions { prune: !no_prune, limits: limits(cli) };
            let zd = zero_decompose(&sys.polys, &opts).map_err(no_path)?;
            let r = DecompositionReport {
                pruned: opts.prune,
                components: zd.components.iter().map(ComponentReport::new).collect(),
            };
            let mut text = format!("{} component(s)\n", r.components.len());
            for (k, c) in r.components.iter().enumerate() {
                let _ = writeln!(text, "component {}: [{}]", k + 1, c.triangular_set.join(", "));
                let _ = writeln!(text, "  initial product: {}", c.initial_product);
                if !c.provenance.is_empty() {
                    let _ = writeln!(text, "  added initials: {}", c.provenance.join(", "));
                }
                if c.contradictory {
                    text.push_str("  contradictory: no zeros\n");
                }
            }
            Ok((EXIT_OK, emit(cli, &sys, "zdecomp", r, text)))
        }
        Command::Verify { file, prime, check } => {
            let field = Field::prime(*prime).map_err(no_path)?;
            let sys = load(file, Some(field))?;
            let oracle = ZeroOracle::new(field, &sys.order).map_err(no_path)?;
            let kinds = if check.is_empty() {
                vec![CheckKind::Charset, CheckKind::Eq1, CheckKind::Eq2]
            } else {
                let mut k = check.clone();
                k.dedup();
                k
            };
            let lim = limits(cli);
            let (cs, _) = characteristic_set(&sys.polys, &lim).map_err(no_path)?;
            let mut checks = Vec::new();
            for kind in kinds {
                let c = match kind {
                    CheckKind::Charset => {
                        let v = is_characteristic_set(&cs, &sys.polys, Some(&oracle)).map_err(no_path)?;
                        CheckReport {
                            check: kind.label(),
                            holds: v.holds(),
                            points: oracle.space_size() as usize,
                            counterexample: None,
                        }
                    }
                    CheckKind::Eq1 => {
                        CheckReport::new(kind.label(), &oracle.check_well_ordering(&sys.polys, &cs).map_err(no_path)?)
                    }
                    CheckKind::Eq2 => {
                        let zd = zero_decompose(&sys.polys, &DecomposeOptions { prune: true, limits: lim })
                            .map_err(no_path)?;
                        CheckReport::new(kind.label(), &oracle.check_decomposition(&sys.polys, &zd).map_err(no_path)?)
                    }
                };
                checks.push(c);
            }
            let all_hold = checks.iter().all(|c| c.holds);
            let r = VerifyReport {
                prime: field.modulus().expect("prime field"),
                space_size: oracle.space_size(),
                all_hold,
                checks,
            };
            let mut text = format!("GF {}: {} point(s) enumerated\n", r.prime, r.space_size);
            for c in &r.checks {
                let status = if c.holds { "holds".to_string() } else { "FAILS".to_string() };
                let _ = match &c.counterexample {
                    Some(pt) => writeln!(text, "{}: {status} (counterexample {pt:?})", c.check),
                    None => writeln!(text, "{}: {status}", c.check),
                };
            }
            let code = if r.all_hold { EXIT_OK } else { EXIT_PROPERTY_FAILED };
            Ok((code, emit(cli, &sys, "verify", r, text)))
        }
        Command::Prove { file } => {
            let sys = load(file, None)?;
            let concl = sys
                .conclusion
                .as_ref()
                .ok_or_else(|| (None, Error::Usage(format!("{} has no `conclusion:` line", file.display()))))?;
            let proof = prove_geometric(&sys.polys, concl, &limits(cli)).map_err(no_path)?;
            let r = ProveReport::new(concl, &proof);
            let mut text = format!("conclusion: {}\n", r.conclusion);
            let _ = writeln!(text, "characteristic set: [{}]", r.characteristic_set.join(", "));
            let _ = writeln!(text, "remainder: {}", r.remainder);
            if r.proved_generically {
                text.push_str("proved generically\n");
                if !r.nondegeneracy_conditions.is_empty() {
                    let _ = writeln!(text, "provided these are nonzero: {}", r.nondegeneracy_conditions.join(", "));
                }
            } else {
                text.push_str("not proved: nonzero remainder\n");
            }
            let code = if r.proved_generically { EXIT_OK } else { EXIT_PROPERTY_FAILED };
            Ok((code, emit(cli, &sys, "prove", r, text)))
        }
    }
}
