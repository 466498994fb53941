//! Command-line front end: single evaluations of every product family
//! and closed form, plus the parallel range verifier.
//!
//! Exit codes: 0 all checks passed, 1 at least one check failed,
//! 2 usage or domain error.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use qrprod::closed;
use qrprod::error::{Error, Result};
use qrprod::gauss::{self, JointMode};
use qrprod::invariants;
use qrprod::lucas;
use qrprod::modular::{jacobi, LegendreTable, Modulus, OddPrime, Sign};
use qrprod::products::{self, BackgroundProduct, LinRange, QuadraticForm, TriRange};
use qrprod::sweep::emit::{emit_report, ReportFormat};
use qrprod::sweep::registry::Grids;
use qrprod::sweep::{run_sweep, SweepConfig};
use qrprod::VerificationRecord;

#[derive(Parser)]
#[command(
    name = "qrprod",
    version,
    about = "Products of quadratic and quartic residues modulo primes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Jacobi symbol (x/n) for odd n
    Symbol {
        #[arg(long, allow_negative_numbers = true)]
        x: i64,
        #[arg(long)]
        n: u64,
    },
    /// Half-range count identities at one (x, n). Without --mode all
    /// five identities are checked; a mode picks one count:
    /// above-half, exceeds-index, both-above, both-below, or
    /// first-above-second-below
    Gauss {
        #[arg(long, allow_negative_numbers = true)]
        x: i64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        mode: Option<String>,
    },
    /// Lucas pair (u_n, v_n) for parameter A, modulo p, plus the norm
    /// identity check
    Lucas {
        #[arg(long = "A", allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: u64,
    },
    /// Brute-force product oracles
    Product {
        #[command(subcommand)]
        which: ProductCmd,
    },
    /// Closed-form evaluations
    Closed {
        #[command(subcommand)]
        which: ClosedCmd,
    },
    /// Class numbers and the Mordell sign
    Classnum {
        #[command(subcommand)]
        which: ClassCmd,
    },
    /// Normalized two-square decomposition of p = 1 (mod 4)
    Decompose {
        #[arg(long)]
        p: u64,
    },
    /// The six quartic-residue background congruences at one prime
    Background {
        #[arg(long)]
        p: u64,
    },
    /// Check selected items over a range of moduli
    Verify(VerifyArgs),
    /// Check every item over a range of moduli
    Sweep(RangeArgs),
}

/// Comma-separated integer tuple flag value, e.g. `--form 1,-2,-1`.
fn parse_tuple<const N: usize>(what: &str, s: &str) -> Result<[i64; N]> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(Error::Domain(format!(
            "{what} expects {N} comma-separated integers, got `{s}`"
        )));
    }
    let mut out = [0i64; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad integer `{part}` in {what}")))?;
    }
    Ok(out)
}

#[derive(Args)]
struct FormArgs {
    /// Coefficients a,b,c of a x^2 + b xy + c y^2
    #[arg(long, allow_hyphen_values = true)]
    form: String,
    #[arg(long)]
    p: u64,
}

impl FormArgs {
    fn parse(&self) -> Result<(QuadraticForm, OddPrime)> {
        let [a, b, c] = parse_tuple::<3>("--form", &self.form)?;
        Ok((QuadraticForm::new(a, b, c), OddPrime::new(self.p)?))
    }
}

#[derive(Args)]
struct PairArgs {
    /// Pair a,b with ab = -1 (mod p)
    #[arg(long, allow_hyphen_values = true)]
    pair: String,
    #[arg(long)]
    p: u64,
}

impl PairArgs {
    fn parse(&self) -> Result<(i64, i64, OddPrime)> {
        let [a, b] = parse_tuple::<2>("--pair", &self.pair)?;
        Ok((a, b, OddPrime::new(self.p)?))
    }
}

#[derive(Subcommand)]
enum ProductCmd {
    /// S_p(a,b,c) over 1 <= i < j <= p-1
    S(FormArgs),
    /// T_p(a,b,c) over 1 <= i, j <= (p-1)/2
    T(FormArgs),
    /// {a,b}_p with ab = -1 (mod p)
    Braces(PairArgs),
    /// The paired double-factorial products (A_p, B_p)
    Lemma61 {
        #[arg(long)]
        p: u64,
    },
    /// Background products over squares: squares-diff-triangular,
    /// squares-diff-full, or sum-squares-triangular
    Background {
        #[arg(long)]
        which: String,
        #[arg(long)]
        p: u64,
    },
    /// Legendre-symbol product of a quadratic form over a triangle;
    /// range is strict-upper or with-diagonal
    Symquad {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long, default_value = "strict-upper")]
        range: String,
    },
    /// Legendre-symbol product of r i + s j; range is full-square or
    /// strict-upper
    Symlin {
        /// Coefficients r,s
        #[arg(long, allow_hyphen_values = true)]
        rs: String,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value = "full-square")]
        range: String,
    },
}

#[derive(Subcommand)]
enum ClosedCmd {
    /// Case-table value of S_p(a,b,c)
    S(FormArgs),
    /// Case-table value of {a,b}_p
    Braces(PairArgs),
    /// T_p(1,-A,-1) via the discriminant dispatch
    TGeneral {
        #[arg(long = "A", allow_negative_numbers = true)]
        a: i64,
        #[arg(long)]
        p: u64,
    },
    /// T_p(1,-1,-1), the Fibonacci four-case form
    Fibonacci {
        #[arg(long)]
        p: u64,
    },
    /// T_p(1,-2,-1), the Pell four-case form
    Pell {
        #[arg(long)]
        p: u64,
    },
    /// T_p(2, 5 delta, 2)
    Form252 {
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
        #[arg(long)]
        p: u64,
    },
    /// Triangular linear symbol product, prod_{i<j} ((j + delta i)/p)
    Triangle {
        #[arg(long, allow_negative_numbers = true)]
        delta: i64,
        #[arg(long)]
        p: u64,
    },
    /// Predicted sign for conjecture id (7.1 .. 7.10)
    Conj {
        #[arg(long)]
        id: String,
        #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
        delta: i64,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand)]
enum ClassCmd {
    /// h(-4p) by Dirichlet's count, p = 1 (mod 4)
    H4p {
        #[arg(long)]
        p: u64,
    },
    /// h(-3p) by Lerch's sum, p = 1 (mod 4), p > 3
    H3p {
        #[arg(long)]
        p: u64,
    },
    /// h(-p) from the half-range character sum, p = 3 (mod 4), p > 3
    Hp {
        #[arg(long)]
        p: u64,
    },
    /// Sign of ((p-1)/2)! mod p, p = 3 (mod 4), p > 3
    Mordell {
        #[arg(long)]
        p: u64,
    },
}

#[derive(Args, Clone)]
struct RangeArgs {
    #[arg(long, default_value_t = 3)]
    min: u64,
    #[arg(long, default_value_t = 199)]
    max: u64,
    /// Parameter grid overrides, e.g. "A=-4..4,coeff=3"
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Worker threads; defaults to QRPROD_JOBS or the rayon default
    #[arg(long)]
    jobs: Option<usize>,
    /// Report format: json-lines or csv
    #[arg(long, default_value = "json-lines")]
    format: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Extend conjecture items to the deep prime bound
    #[arg(long)]
    deep: bool,
    /// Stamp records with measured runner time (breaks byte-for-byte
    /// reproducibility)
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Item ids (repeat or comma-separate), or "all"
    #[arg(long = "target", value_delimiter = ',', default_value = "all")]
    targets: Vec<String>,
    #[command(flatten)]
    range: RangeArgs,
}

fn parse_grid(spec: &str) -> Result<Grids> {
    let mut grids = Grids::default();
    for part in spec.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Domain(format!("grid entry `{part}` is not key=value")))?;
        match key.trim() {
            "A" => {
                let (lo, hi) = value
                    .split_once("..")
                    .ok_or_else(|| Error::Domain(format!("A range `{value}` is not lo..hi")))?;
                grids.a_min = lo
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad A bound `{lo}`")))?;
                grids.a_max = hi
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad A bound `{hi}`")))?;
            }
            "coeff" => {
                grids.coeff = value
                    .parse()
                    .map_err(|_| Error::Domain(format!("bad coeff `{value}`")))?;
            }
            other => return Err(Error::Domain(format!("unknown grid key `{other}`"))),
        }
    }
    grids.validate()?;
    Ok(grids)
}

fn sign_arg(delta: i64) -> Result<Sign> {
    Sign::from_i64(delta)
}

fn print_records(records: &[VerificationRecord]) -> Result<ExitCode> {
    let mut stdout = std::io::stdout().lock();
    emit_report(records, ReportFormat::JsonLines, &mut stdout)?;
    Ok(if records.iter().all(|r| r.ok()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_range(targets: Vec<String>, range: RangeArgs) -> Result<ExitCode> {
    let jobs = range.jobs.or_else(|| {
        std::env::var("QRPROD_JOBS")
            .ok()
            .and_then(|s| s.parse().ok())
    });
    let format = ReportFormat::from_str(&range.format)?;
    let grids = match &range.grid {
        Some(spec) => parse_grid(spec)?,
        None => Grids::default(),
    };
    let cfg = SweepConfig {
        targets,
        min: range.min,
        max: range.max,
        jobs,
        deep: range.deep,
        timing: range.timing,
        grids,
    };
    let (summary, records) = run_sweep(&cfg)?;
    match &range.out {
        Some(path) => {
            let mut file = std::io::BufWriter::new(std::fs::File::create(path)?);
            emit_report(&records, format, &mut file)?;
            file.flush()?;
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            emit_report(&records, format, &mut stdout)?;
        }
    }
    for (item, s) in &summary.per_item {
        eprintln!("{item}: pass={} fail={} skip={}", s.pass, s.fail, s.skip);
    }
    eprintln!(
        "total: checked={} failed={}",
        summary.checked(),
        summary.failures()
    );
    if summary.failures() > 0 {
        for r in records.iter().filter(|r| !r.ok()) {
            eprintln!("counterexample: {r:?}");
        }
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_gauss(x: i64, n: u64, mode: Option<String>) -> Result<ExitCode> {
    let m = Modulus::new(n)?;
    let Some(mode) = mode else {
        let recs = gauss::verify_gauss_jenkins_identities(x, m)?;
        return print_records(&recs);
    };
    // reduce the symbol arguments in wide arithmetic first
    let red = |v: i128| (v.rem_euclid(n as i128)) as i64;
    let xw = x as i128;
    // one count plus the identity it certifies
    let (count, sym) = match mode.as_str() {
        "above-half" => (gauss::count_above_half(x, m)?.count, jacobi(x, m)),
        "exceeds-index" => (
            gauss::count_exceeds_index(x, m)?.count,
            jacobi(red(2 * xw * (1 - xw)), m),
        ),
        "both-above" => (
            gauss::joint_count(x, m, JointMode::BothAbove)?.count,
            jacobi(2, m),
        ),
        "both-below" => (
            gauss::joint_count(x, m, JointMode::BothBelow)?.count,
            jacobi(red(2 * xw * (xw - 1)), m),
        ),
        "first-above-second-below" => (
            gauss::joint_count(x, m, JointMode::FirstAboveSecondBelow)?.count,
            jacobi(red(2 * xw), m),
        ),
        other => return Err(Error::Domain(format!("unknown mode `{other}`"))),
    };
    let parity = Sign::from_exponent(count as i64);
    println!(
        "count={} sign={} symbol={} ok={}",
        count,
        parity.value(),
        sym.value(),
        parity == sym
    );
    Ok(if parity == sym {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.cmd {
        Cmd::Symbol { x, n } => {
            println!("{}", jacobi(x, Modulus::new(n)?).value());
        }
        Cmd::Gauss { x, n, mode } => return run_gauss(x, n, mode),
        Cmd::Lucas { a, n, p } => {
            let pair = lucas::lucas_pair_mod(a, n, OddPrime::new(p)?);
            println!(
                "u={} v={} norm_ok={}",
                pair.u,
                pair.v,
                lucas::norm_identity_holds(&pair)
            );
        }
        Cmd::Product { which } => return run_product(which),
        Cmd::Closed { which } => return run_closed(which),
        Cmd::Classnum { which } => match which {
            ClassCmd::H4p { p } => println!("{}", invariants::h_minus_4p(OddPrime::new(p)?)?.h),
            ClassCmd::H3p { p } => println!("{}", invariants::h_minus_3p(OddPrime::new(p)?)?.h),
            ClassCmd::Hp { p } => println!("{}", invariants::h_minus_p(OddPrime::new(p)?)?.h),
            ClassCmd::Mordell { p } => {
                println!("{}", invariants::mordell_sign(OddPrime::new(p)?)?.value())
            }
        },
        Cmd::Decompose { p } => {
            let t = invariants::two_square_decomposition(OddPrime::new(p)?)?;
            println!("x={} y={}", t.x, t.y);
        }
        Cmd::Background { p } => {
            let recs = invariants::background_checks(OddPrime::new(p)?)?;
            return print_records(&recs);
        }
        Cmd::Verify(v) => return run_range(v.targets, v.range),
        Cmd::Sweep(range) => return run_range(vec!["all".into()], range),
    }
    Ok(ExitCode::SUCCESS)
}

fn run_product(cmd: ProductCmd) -> Result<ExitCode> {
    match cmd {
        ProductCmd::S(args) => {
            let (f, p) = args.parse()?;
            let v = products::product_s(&f, p);
            println!("value={} skipped={}", v.value, v.skipped);
        }
        ProductCmd::T(args) => {
            let (f, p) = args.parse()?;
            let v = products::product_t(&f, p);
            println!("value={} skipped={}", v.value, v.skipped);
        }
        ProductCmd::Braces(args) => {
            let (a, b, p) = args.parse()?;
            let v = products::product_braces(a, b, p)?;
            println!("value={} skipped={}", v.value, v.skipped);
        }
        ProductCmd::Lemma61 { p } => {
            let (a, b) = products::product_lemma_6_1(OddPrime::new(p)?)?;
            println!("A={a} B={b}");
        }
        ProductCmd::Background { which, p } => {
            let w = BackgroundProduct::from_str(&which)?;
            let v = products::product_background(OddPrime::new(p)?, w)?;
            println!("value={} skipped={}", v.value, v.skipped);
        }
        ProductCmd::Symquad { form, range } => {
            let r = match range.as_str() {
                "strict-upper" => TriRange::StrictUpper,
                "with-diagonal" => TriRange::UpperWithDiagonal,
                _ => {
                    return Err(Error::Domain(format!("unknown triangle range `{range}`")));
                }
            };
            let (f, p) = form.parse()?;
            let table = LegendreTable::new(p);
            println!(
                "{}",
                products::symbol_product_quadratic(&f, &table, r).value()
            );
        }
        ProductCmd::Symlin { rs, p, range } => {
            let rng = match range.as_str() {
                "full-square" => LinRange::FullSquare,
                "strict-upper" => LinRange::StrictUpper,
                _ => {
                    return Err(Error::Domain(format!("unknown linear range `{range}`")));
                }
            };
            let [r, s] = parse_tuple::<2>("--rs", &rs)?;
            let table = LegendreTable::new(OddPrime::new(p)?);
            println!(
                "{}",
                products::symbol_product_linear(r, s, &table, rng).value()
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_closed(r: closed::ClosedFormResult) {
    match r.stated_value {
        Some(sv) => println!("value={} case={} stated={sv}", r.value, r.case),
        None => println!("value={} case={}", r.value, r.case),
    }
}

fn run_closed(cmd: ClosedCmd) -> Result<ExitCode> {
    match cmd {
        ClosedCmd::S(args) => {
            let (f, p) = args.parse()?;
            print_closed(closed::closed_s(&f, p)?);
        }
        ClosedCmd::Braces(args) => {
            let (a, b, p) = args.parse()?;
            print_closed(closed::closed_braces(a, b, p)?);
        }
        ClosedCmd::TGeneral { a, p } => {
            print_closed(closed::closed_t_general(a, OddPrime::new(p)?)?)
        }
        ClosedCmd::Fibonacci { p } => print_closed(closed::closed_t_fibonacci(OddPrime::new(p)?)?),
        ClosedCmd::Pell { p } => print_closed(closed::closed_t_pell(OddPrime::new(p)?)?),
        ClosedCmd::Form252 { delta, p } => print_closed(closed::closed_t_form252(
            sign_arg(delta)?,
            OddPrime::new(p)?,
        )?),
        ClosedCmd::Triangle { delta, p } => {
            let s = closed::closed_triangle_linear(sign_arg(delta)?, OddPrime::new(p)?)?;
            println!("{}", s.value());
        }
        ClosedCmd::Conj { id, delta, p } => {
            let s = closed::conjecture_rhs(&id, sign_arg(delta)?, OddPrime::new(p)?)?;
            println!("{}", s.value());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
