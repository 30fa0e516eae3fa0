//! Command-line front end: emits the uncertainty, distribution and
//! finite-dimension datasets as CSV or JSON.

// `!(x <= y)` is used on purpose so that NaN takes the rejecting branch.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use aut_core::approx::{
    brute, closed_sums, lorentzian_amplitude, lorentzian_delta_m, perturbative_report,
    wavefunction_report, LARGE_LAMBDA_LIMIT,
};
use aut_core::continuum::{make_state, oam_distribution, report};
use aut_core::finite_dim::{embed_intelligent, rs_report};
use aut_core::{Error, FiniteSpace, UncertaintyReport};

pub mod table;

pub use table::{Cell, Format, Table};

/// Residual tolerance used when `AUT_TOL` is unset.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Absolute tolerance for `sums --check`.
pub const SUMS_TOL: f64 = 1e-10;

pub const REPORT_HEADER: &[&str] = &[
    "lambda",
    "delta_phi",
    "delta_m",
    "product",
    "bound",
    "residual",
    "p_pi",
];
pub const WAVEFUNCTION_HEADER: &[&str] = &["phi", "psi", "density"];
pub const DISTRIBUTION_HEADER: &[&str] =
    &["m", "c_exact", "p_exact", "c_lorentzian", "p_lorentzian"];
pub const COMPARE_HEADER: &[&str] = &[
    "lambda",
    "quantity",
    "exact",
    "perturbative",
    "wavefunction_approx",
    "lorentzian",
];
pub const FINITE_HEADER: &[&str] = &[
    "L",
    "dphi",
    "dlz",
    "product",
    "rs_bound",
    "approx_bound",
    "continuum_bound",
];
pub const SUMS_HEADER: &[&str] = &[
    "identity",
    "argument",
    "closed_form",
    "brute_force",
    "abs_diff",
    "pass",
];

#[derive(Debug, Parser)]
#[command(
    name = "aut",
    version,
    about = "Angle/angular-momentum intelligent states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output file; standard output when omitted.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Uncertainties and equality residual for one lambda.
    Report {
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
    },
    /// Uncertainties on a uniform lambda grid.
    Scan(Grid),
    /// psi(phi) and |psi|^2 on [-pi, pi).
    Wavefunction {
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        #[arg(long, default_value_t = 401)]
        steps: usize,
    },
    /// Angular-momentum amplitudes c_m, sorted by m.
    Distribution {
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        /// Largest |m|; chosen from --epsilon when omitted.
        #[arg(long)]
        m_max: Option<usize>,
        /// Discarded probability bound used to pick m_max.
        #[arg(long, default_value_t = 1e-6)]
        epsilon: f64,
        #[arg(long, value_enum)]
        approx: Option<Approx>,
    },
    /// Exact uncertainties next to the approximations.
    Compare(Grid),
    /// Robertson-Schroedinger quantities of the embedded state.
    Finite {
        #[arg(long, allow_negative_numbers = true)]
        lambda: f64,
        /// Cutoffs, comma separated.
        #[arg(long = "L", value_delimiter = ',', required = true)]
        l: Vec<usize>,
    },
    /// Closed-form lattice sums.
    Sums {
        /// Also sum 10^6 terms directly and compare.
        #[arg(long)]
        check: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Approx {
    Lorentzian,
}

#[derive(Debug, Clone, Copy, Args)]
pub struct Grid {
    #[arg(long, allow_negative_numbers = true)]
    pub lambda_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub lambda_max: f64,
    #[arg(long)]
    pub steps: usize,
}

impl Grid {
    /// Uniform grid, plus `lambda = 0` when it falls strictly inside.
    pub fn lambdas(&self) -> Result<Vec<f64>, Failure> {
        let (lo, hi, n) = (self.lambda_min, self.lambda_max, self.steps);
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Failure::Args(format!(
                "need finite lambda-min < lambda-max (got {lo}, {hi})"
            )));
        }
        if n < 2 {
            return Err(Failure::Args(format!("need steps >= 2 (got {n})")));
        }
        let mut g: Vec<f64> = (0..n)
            .map(|i| {
                if i == n - 1 {
                    hi
                } else {
                    lo + (hi - lo) * i as f64 / (n - 1) as f64
                }
            })
            .collect();
        if lo < 0.0 && hi > 0.0 && !g.contains(&0.0) {
            let at = g.partition_point(|&x| x < 0.0);
            g.insert(at, 0.0);
        }
        Ok(g)
    }
}

/// Why a run stopped; each maps to an exit code.
#[derive(Debug)]
pub enum Failure {
    Io(io::Error),
    Args(String),
    Numerical(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Io(_) => 1,
            Failure::Args(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Io(e) => write!(f, "I/O error: {e}"),
            Failure::Args(m) => write!(f, "invalid arguments: {m}"),
            Failure::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Index { .. } => Failure::Args(e.to_string()),
            Error::NonConvergence { .. } | Error::Numerical(_) => Failure::Numerical(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// A computed table plus any tolerance violations found on the way.
#[derive(Debug)]
pub struct Dataset {
    pub table: Table,
    /// Emit a bare JSON object rather than a one-element array.
    pub single: bool,
    pub violations: Vec<String>,
}

impl Dataset {
    fn new(table: Table) -> Self {
        Dataset {
            table,
            single: false,
            violations: Vec::new(),
        }
    }
}

/// Reads `AUT_TOL`, falling back to [`DEFAULT_TOL`].
pub fn tolerance_from_env() -> Result<f64, Failure> {
    match std::env::var("AUT_TOL") {
        Err(std::env::VarError::NotPresent) => Ok(DEFAULT_TOL),
        Err(e) => Err(Failure::Args(format!("AUT_TOL: {e}"))),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(Failure::Args(format!(
                "AUT_TOL must be a positive number (got {s:?})"
            ))),
        },
    }
}

fn report_row(r: &UncertaintyReport) -> Vec<Cell> {
    vec![
        r.lambda.into(),
        r.delta_phi.into(),
        r.delta_m.into(),
        r.product.into(),
        r.bound.into(),
        r.residual.into(),
        r.p_pi.into(),
    ]
}

fn check_residual(r: &UncertaintyReport, tol: f64, violations: &mut Vec<String>) {
    if !(r.residual.abs() <= tol * r.product.max(1.0)) {
        violations.push(format!(
            "lambda = {}: residual {:e} exceeds tolerance {tol:e}",
            r.lambda, r.residual
        ));
    }
}

fn reports(lambdas: &[f64]) -> Result<Vec<UncertaintyReport>, Failure> {
    Ok(lambdas
        .par_iter()
        .map(|&l| report(l))
        .collect::<Result<Vec<_>, _>>()?)
}

/// Computes the dataset for one command.
pub fn compute(command: &Command, tol: f64) -> Result<Dataset, Failure> {
    match command {
        Command::Report { lambda } => {
            let r = report(*lambda)?;
            let mut d = Dataset::new(Table::new(REPORT_HEADER));
            d.table.push(report_row(&r));
            d.single = true;
            check_residual(&r, tol, &mut d.violations);
            Ok(d)
        }
        Command::Scan(grid) => {
            let mut d = Dataset::new(Table::new(REPORT_HEADER));
            for r in reports(&grid.lambdas()?)? {
                check_residual(&r, tol, &mut d.violations);
                d.table.push(report_row(&r));
            }
            Ok(d)
        }
        Command::Wavefunction { lambda, steps } => wavefunction(*lambda, *steps),
        Command::Distribution {
            lambda,
            m_max,
            epsilon,
            approx,
        } => distribution(*lambda, *m_max, *epsilon, *approx),
        Command::Compare(grid) => compare(&grid.lambdas()?, tol),
        Command::Finite { lambda, l } => finite(*lambda, l, tol),
        Command::Sums { check } => Ok(sums(*check)),
    }
}

fn wavefunction(lambda: f64, steps: usize) -> Result<Dataset, Failure> {
    if steps == 0 {
        return Err(Failure::Args("need steps >= 1".into()));
    }
    let st = make_state(lambda)?;
    let mut d = Dataset::new(Table::new(WAVEFUNCTION_HEADER));
    for i in 0..steps {
        let phi = -std::f64::consts::PI + 2.0 * std::f64::consts::PI * i as f64 / steps as f64;
        let psi = st.wavefunction(phi)?;
        d.table
            .push(vec![phi.into(), psi.into(), (psi * psi).into()]);
    }
    Ok(d)
}

fn distribution(
    lambda: f64,
    m_max: Option<usize>,
    epsilon: f64,
    approx: Option<Approx>,
) -> Result<Dataset, Failure> {
    if approx.is_some() && !(lambda < 0.0) {
        return Err(Failure::Args(format!(
            "the Lorentzian approximation needs lambda < 0 (got {lambda})"
        )));
    }
    let half: Vec<f64> = match m_max {
        None => oam_distribution(lambda, epsilon)?
            .iter()
            .filter(|&(m, _)| m >= 0)
            .map(|(_, c)| c)
            .collect(),
        Some(n) => {
            let st = make_state(lambda)?;
            (0..=n as i64)
                .into_par_iter()
                .map(|m| st.amplitude(m))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let n = half.len() as i64 - 1;
    let mut d = Dataset::new(Table::new(DISTRIBUTION_HEADER));
    for m in -n..=n {
        let c = half[m.unsigned_abs() as usize];
        let (cl, pl) = match approx {
            Some(Approx::Lorentzian) => {
                let cl = lorentzian_amplitude(lambda, m)?;
                (Some(cl), Some(cl * cl))
            }
            None => (None, None),
        };
        d.table.push(vec![
            m.into(),
            c.into(),
            (c * c).into(),
            cl.into(),
            pl.into(),
        ]);
    }
    Ok(d)
}

fn compare(lambdas: &[f64], tol: f64) -> Result<Dataset, Failure> {
    let rows = lambdas
        .par_iter()
        .map(|&l| -> Result<_, Failure> {
            let exact = report(l)?;
            let pert = perturbative_report(l)?;
            let wvf = wavefunction_report(l)?;
            let pert = pert.valid.then_some(pert);
            let wvf = wvf.valid.then_some(wvf);
            let lor = if l < 0.0 && -l * std::f64::consts::PI.powi(2) > LARGE_LAMBDA_LIMIT {
                Some(lorentzian_delta_m(l)?)
            } else {
                None
            };
            Ok((exact, pert, wvf, lor))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let mut d = Dataset::new(Table::new(COMPARE_HEADER));
    for (exact, pert, wvf, lor) in rows {
        check_residual(&exact, tol, &mut d.violations);
        let quantities = [
            (
                "delta_phi",
                exact.delta_phi,
                pert.and_then(|r| r.delta_phi),
                wvf.and_then(|r| r.delta_phi),
                None,
            ),
            (
                "delta_m",
                exact.delta_m,
                pert.and_then(|r| r.delta_m),
                wvf.and_then(|r| r.delta_m),
                lor,
            ),
            (
                "product",
                exact.product,
                pert.and_then(|r| r.product),
                wvf.and_then(|r| r.product),
                None,
            ),
            (
                "bound",
                exact.bound,
                pert.and_then(|r| r.bound),
                wvf.and_then(|r| r.bound),
                None,
            ),
        ];
        for (name, e, p, w, l) in quantities {
            d.table.push(vec![
                exact.lambda.into(),
                name.into(),
                e.into(),
                p.into(),
                w.into(),
                l.into(),
            ]);
        }
    }
    Ok(d)
}

fn finite(lambda: f64, ls: &[usize], tol: f64) -> Result<Dataset, Failure> {
    let exact = report(lambda)?;
    let mut d = Dataset::new(Table::new(FINITE_HEADER));
    check_residual(&exact, tol, &mut d.violations);
    let rows = ls
        .par_iter()
        .map(|&l| -> Result<_, Failure> {
            let space = FiniteSpace::new(l)?;
            Ok(rs_report(&embed_intelligent(lambda, space)?))
        })
        .collect::<Result<Vec<_>, _>>()?;
    for (l, r) in ls.iter().zip(rows) {
        d.table.push(vec![
            (*l).into(),
            r.dphi.into(),
            r.dlz.into(),
            r.product.into(),
            r.rs_bound.into(),
            r.approx_bound.into(),
            exact.bound.into(),
        ]);
    }
    Ok(d)
}

/// Lorentzian sums are checked at these `a`, the Fourier sum at these `phi`.
pub const SUM_ARGUMENTS: [f64; 4] = [0.5, 1.0, std::f64::consts::PI, 10.0];
pub const FOURIER_ARGUMENTS: [f64; 5] = [-2.5, -1.0, 0.0, 0.3, 2.0];

fn sums(check: bool) -> Dataset {
    let c = closed_sums();
    let n = brute::TERMS;
    type Brute = Box<dyn Fn() -> f64 + Send + Sync>;
    let mut items: Vec<(&str, Option<f64>, f64, Brute)> =
        vec![("inv_m4", None, c.inv_m4, Box::new(move || brute::inv_m4(n)))];
    for a in SUM_ARGUMENTS {
        items.push((
            "lorentzian_sum",
            Some(a),
            c.lorentzian_sum(a).expect("positive argument"),
            Box::new(move || brute::lorentzian_sum(a, n)),
        ));
    }
    for a in SUM_ARGUMENTS {
        items.push((
            "lorentzian_m2_sum",
            Some(a),
            c.lorentzian_m2_sum(a).expect("positive argument"),
            Box::new(move || brute::lorentzian_m2_sum(a, n)),
        ));
    }
    for phi in FOURIER_ARGUMENTS {
        items.push((
            "alternating_fourier",
            Some(phi),
            c.alternating_fourier(phi).expect("argument in range"),
            Box::new(move || brute::alternating_fourier(phi, n)),
        ));
    }

    let brute: Vec<Option<f64>> = items.par_iter().map(|(_, _, _, f)| check.then(f)).collect();
    let mut d = Dataset::new(Table::new(SUMS_HEADER));
    for ((name, arg, closed, _), b) in items.iter().zip(brute) {
        let diff = b.map(|b| (closed - b).abs());
        let pass = diff.map(|x| x <= SUMS_TOL);
        if pass == Some(false) {
            d.violations.push(format!(
                "{name}({}): closed form and brute force differ by {:e}",
                arg.map_or(String::new(), |a| a.to_string()),
                diff.unwrap()
            ));
        }
        d.table.push(vec![
            (*name).into(),
            (*arg).into(),
            (*closed).into(),
            b.into(),
            diff.into(),
            pass.map_or(Cell::Empty, Cell::Bool),
        ]);
    }
    d
}

/// Computes and writes the dataset, then reports tolerance violations.
pub fn run(cli: &Cli) -> Result<(), Failure> {
    let tol = tolerance_from_env()?;
    let d = compute(&cli.command, tol)?;
    match &cli.output {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
            d.table.emit(cli.format, d.single, BufWriter::new(file))?;
        }
        None => d.table.emit(cli.format, d.single, io::stdout().lock())?,
    }
    if d.violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Numerical(d.violations.join("; ")))
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(io::stderr(), "aut: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_inserts_zero() {
        let g = Grid {
            lambda_min: -5.0,
            lambda_max: 2.0,
            steps: 200,
        };
        let l = g.lambdas().unwrap();
        assert_eq!(l.len(), 201);
        assert_eq!(l[0], -5.0);
        assert_eq!(*l.last().unwrap(), 2.0);
        assert!(l.contains(&0.0));
        assert!(l.windows(2).all(|w| w[0] < w[1]));

        let g = Grid {
            lambda_min: -1.0,
            lambda_max: 1.0,
            steps: 3,
        };
        assert_eq!(g.lambdas().unwrap(), vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn grid_rejects_bad_ranges() {
        for (lo, hi, n) in [
            (1.0, 1.0, 5),
            (2.0, 1.0, 5),
            (0.0, 1.0, 1),
            (f64::NAN, 1.0, 5),
        ] {
            let g = Grid {
                lambda_min: lo,
                lambda_max: hi,
                steps: n,
            };
            assert_eq!(g.lambdas().unwrap_err().exit_code(), 2);
        }
    }

    #[test]
    fn core_errors_map_to_exit_codes() {
        assert_eq!(Failure::from(Error::Domain("x".into())).exit_code(), 2);
        assert_eq!(Failure::from(Error::Numerical("x".into())).exit_code(), 3);
        let e = Error::NonConvergence {
            value: 0.0,
            error_estimate: 1.0,
            evaluations: 10,
        };
        assert_eq!(Failure::from(e).exit_code(), 3);
    }

    #[test]
    fn compare_blanks_invalid_approximations() {
        let d = compare(&[-0.05, -2.0, 1.0], DEFAULT_TOL).unwrap();
        assert_eq!(d.table.rows.len(), 12);
        // lambda = -0.05: perturbative only
        assert!(matches!(d.table.rows[0][3], Cell::Real(_)));
        assert_eq!(d.table.rows[0][4], Cell::Empty);
        assert_eq!(d.table.rows[1][5], Cell::Empty);
        // lambda = -2: wavefunction and Lorentzian
        assert_eq!(d.table.rows[4][3], Cell::Empty);
        assert!(matches!(d.table.rows[4][4], Cell::Real(_)));
        assert!(matches!(d.table.rows[5][5], Cell::Real(_)));
        assert_eq!(d.table.rows[4][5], Cell::Empty);
        // lambda = 1: exact only
        for row in &d.table.rows[8..] {
            assert!(matches!(row[2], Cell::Real(_)));
            assert!(row[3..].iter().all(|c| *c == Cell::Empty));
        }
    }

    #[test]
    fn distribution_is_symmetric_and_sorted() {
        let d = distribution(-0.5, Some(20), 1e-6, Some(Approx::Lorentzian)).unwrap();
        let rows = &d.table.rows;
        assert_eq!(rows.len(), 41);
        assert_eq!(rows[0][0], Cell::Int(-20));
        assert_eq!(rows[40][0], Cell::Int(20));
        assert_eq!(rows[0][1], rows[40][1]);
        assert!(distribution(0.5, Some(5), 1e-6, Some(Approx::Lorentzian)).is_err());
    }

    fn run_to_string(args: &[&str]) -> (i32, String) {
        static COUNTER: std::sync::atomic::AtomicUsize = std::sync::atomic::AtomicUsize::new(0);
        let n = COUNTER.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
        let path = std::env::temp_dir().join(format!("aut-unit-{}-{n}.out", std::process::id()));
        let mut full = vec!["aut"];
        full.extend_from_slice(args);
        let p = path.to_str().unwrap().to_owned();
        full.extend_from_slice(&["--output", &p]);
        let code = main_with_args(full);
        let text = std::fs::read_to_string(&path).unwrap_or_default();
        let _ = std::fs::remove_file(&path);
        (code, text)
    }

    #[test]
    fn report_json() {
        let (code, text) = run_to_string(&["report", "--lambda", "-2", "--format", "json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for key in REPORT_HEADER {
            assert!(v[key].is_number(), "{key}");
        }
        assert!(v["residual"].as_f64().unwrap().abs() < 1e-9);
    }

    #[test]
    fn scan_has_flat_state_row() {
        let (code, text) = run_to_string(&[
            "scan",
            "--lambda-min",
            "-5",
            "--lambda-max",
            "2",
            "--steps",
            "200",
        ]);
        assert_eq!(code, 0);
        assert!(!text.contains('\r'));
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), REPORT_HEADER.join(","));
        let zero = lines
            .map(|l| {
                l.split(',')
                    .map(|x| x.parse::<f64>().unwrap())
                    .collect::<Vec<_>>()
            })
            .find(|r| r[0] == 0.0)
            .unwrap();
        assert!((zero[1] - std::f64::consts::PI / 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(zero[2], 0.0);
    }

    #[test]
    fn headers_match_schemas() {
        let cases: [(&[&str], &[&str]); 5] = [
            (
                &["wavefunction", "--lambda", "-1", "--steps", "8"],
                WAVEFUNCTION_HEADER,
            ),
            (
                &["distribution", "--lambda", "-0.5", "--m-max", "3"],
                DISTRIBUTION_HEADER,
            ),
            (
                &[
                    "compare",
                    "--lambda-min",
                    "-1",
                    "--lambda-max",
                    "-0.5",
                    "--steps",
                    "2",
                ],
                COMPARE_HEADER,
            ),
            (
                &["finite", "--lambda", "-0.5", "--L", "5,10"],
                FINITE_HEADER,
            ),
            (&["sums"], SUMS_HEADER),
        ];
        for (args, header) in cases {
            let (code, text) = run_to_string(args);
            assert_eq!(code, 0, "{args:?}");
            assert_eq!(text.lines().next().unwrap(), header.join(","));
        }
    }

    #[test]
    fn sums_without_check_leave_brute_force_blank() {
        let (_, text) = run_to_string(&["sums"]);
        let first = text.lines().nth(1).unwrap();
        assert!(first.starts_with("inv_m4,,"));
        assert!(first.ends_with(",,,"));
    }

    #[test]
    fn repeated_runs_are_identical() {
        let args = [
            "distribution",
            "--lambda",
            "-2",
            "--m-max",
            "40",
            "--approx",
            "lorentzian",
        ];
        let (_, a) = run_to_string(&args);
        let (_, b) = run_to_string(&args);
        assert!(!a.is_empty());
        assert_eq!(a, b);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(
            run_to_string(&[
                "scan",
                "--lambda-min",
                "1",
                "--lambda-max",
                "2",
                "--steps",
                "1"
            ])
            .0,
            2
        );
        assert_eq!(run_to_string(&["report"]).0, 2);
        assert_eq!(
            run_to_string(&["report", "--lambda", "-1", "--format", "xml"]).0,
            2
        );
        assert_eq!(
            run_to_string(&["distribution", "--lambda", "-1", "--epsilon", "2"]).0,
            2
        );
        assert_eq!(
            run_to_string(&["finite", "--lambda", "-1", "--L", "0"]).0,
            2
        );
        assert_eq!(
            main_with_args([
                "aut",
                "report",
                "--lambda",
                "-1",
                "--output",
                "/nonexistent/dir/x"
            ]),
            1
        );
        let tight = compute(&Command::Report { lambda: -3.0 }, 1e-30).unwrap();
        assert_eq!(tight.violations.len(), 1);
    }
}
