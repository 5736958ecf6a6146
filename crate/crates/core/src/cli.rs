//! The `sqmac` command line.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or parse error,
//! 3 resource-guard refusal. Output depends only on the arguments.

use std::ffi::OsString;
use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::capacity::{
    capacity_fullent, capacity_lp, capacity_symmetric, capacity_unent, dsc_gain, symmetric_forms, CapacityResult,
};
use crate::error::Error;
use crate::field::{field_construct, field_of_order, FieldSpec};
use crate::instances::{table1, table2_golden};
use crate::model::{detect_symmetric, parse_problem, Problem, SymmetricParams};
use crate::oracle::{
    beta_star_reports, check_corollaries, decode_check, exhaustive_decode_check, lp_agreement, mutate_scheme,
    random_decode_check, render_tap, symmetric_lp_reports, CorollaryBounds, OracleReport, RandomBounds,
};
use crate::rational::Rat;
use crate::scheme::{
    build_scheme, fig2_reference_scheme, two_sum_reference_scheme, AllocSpec, Allocation, CodingScheme, SchemeOptions,
    ZSpec, DEFAULT_SEED,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

/// Largest S for which `tables` cross-checks the symmetric closed form by LP.
pub const TABLES_LP_MAX_S: usize = 6;

#[derive(Parser, Debug)]
#[command(
    name = "sqmac",
    version,
    about = "Capacity, coding schemes and verification for the sum of streams over a quantum MAC"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Plain text or one `instance=... value-num=... value-den=...` record per result.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Records,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClosedForm {
    Fullent,
    Unent,
    Symmetric,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Reference {
    Fig2,
    TwoSum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Corollaries,
    BetaStar,
    OracleLp,
    Decode,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Capacity of a problem file.
    Capacity {
        file: PathBuf,
        /// Also print the gain over the unentangled baseline.
        #[arg(long)]
        dsc: bool,
        /// Use a closed form instead of the general LP.
        #[arg(long, value_enum)]
        closed_form: Option<ClosedForm>,
    },
    /// Regenerate both reference tables and diff them against the golden values.
    Tables,
    /// Build, simulate or check coding schemes.
    Scheme {
        #[command(subcommand)]
        action: SchemeCommand,
    },
    /// Run a verification suite and print TAP.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        max_s: Option<usize>,
        #[arg(long)]
        cases: Option<usize>,
    },
}

#[derive(Subcommand, Debug)]
pub enum SchemeCommand {
    /// Build a certified scheme from a problem file or a reference fixture.
    Build {
        #[arg(required_unless_present = "reference")]
        file: Option<PathBuf>,
        #[arg(long, value_enum, conflicts_with_all = ["file", "alloc", "z"])]
        reference: Option<Reference>,
        /// `N_ts` per clique, servers comma-separated, cliques `;`-separated.
        #[arg(long)]
        alloc: Option<String>,
        /// Base field order: `p`, `p^r` or `F<q>`.
        #[arg(long)]
        d: Option<String>,
        /// Extension degree, or `auto`.
        #[arg(long)]
        z: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Write the scheme here and print a summary instead of the scheme.
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Decode seeded random (or all) data realizations.
    Simulate {
        file: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long)]
        exhaustive: bool,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Re-validate the certificate of a scheme file.
    Check { file: PathBuf },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Io(PathBuf, io::Error),
    Output(io::Error),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Output(e)
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Lib(e) => write!(f, "{e}"),
            Failure::Io(p, e) => write!(f, "{}: {e}", p.display()),
            Failure::Output(e) => write!(f, "output: {e}"),
            Failure::Mismatch(m) => f.write_str(m),
        }
    }
}

impl Failure {
    fn exit_code(&self) -> i32 {
        match self {
            Failure::Lib(Error::Guard { .. } | Error::FieldTooLarge { .. }) => EXIT_GUARD,
            Failure::Lib(Error::Mismatch(_) | Error::SchemeCheck(_) | Error::EncoderSearch { .. }) => EXIT_MISMATCH,
            Failure::Mismatch(_) => EXIT_MISMATCH,
            Failure::Lib(_) | Failure::Io(..) | Failure::Output(_) => EXIT_USAGE,
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Results go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(err, "sqmac: {f}");
            f.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Capacity { file, dsc, closed_form } => {
            cmd_capacity(&read_problem(file)?, *dsc, *closed_form, cli.format, out)
        }
        Command::Tables => cmd_tables(cli.format, out),
        Command::Scheme { action } => match action {
            SchemeCommand::Build { file, reference, alloc, d, z, seed, out: path } => {
                let d = d.as_deref().map(parse_field_arg).transpose()?;
                let sch = match (reference, file) {
                    (Some(r), _) => reference_scheme(*r, d.as_ref())?,
                    (None, Some(f)) => {
                        let p = read_problem(f)?;
                        let alloc = match alloc {
                            Some(a) => AllocSpec::Given(parse_alloc(&p, a)?),
                            None => AllocSpec::FromLp,
                        };
                        let z = z.as_deref().map(parse_z).transpose()?.unwrap_or(ZSpec::Auto);
                        build_scheme(&p, &SchemeOptions { alloc, d, z, seed: *seed, ..Default::default() })?
                    }
                    (None, None) => unreachable!("clap requires a file or a reference"),
                };
                cmd_scheme_build(&sch, path.as_deref(), cli.format, out)
            }
            SchemeCommand::Simulate { file, trials, exhaustive, seed } => {
                cmd_scheme_simulate(&read_scheme(file)?, *trials, *exhaustive, *seed, cli.format, out)
            }
            SchemeCommand::Check { file } => {
                let sch = read_scheme(file)?;
                sch.check()?;
                writeln!(out, "certificate ok: rate {} over {}", sch.rate(), sch.field())?;
                Ok(())
            }
        },
        Command::Verify { suite, seed, max_s, cases } => cmd_verify(*suite, *seed, *max_s, *cases, out),
    }
}

fn read_text(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn read_problem(path: &Path) -> std::result::Result<Problem, Failure> {
    Ok(parse_problem(&read_text(path)?)?)
}

fn read_scheme(path: &Path) -> std::result::Result<CodingScheme, Failure> {
    Ok(CodingScheme::from_text(&read_text(path)?)?)
}

/// Accepts `p`, `p^r`, `q` for a prime power `q`, or `F<q>`.
pub fn parse_field_arg(s: &str) -> crate::Result<FieldSpec> {
    let bad = || Error::InvalidArgument(format!("bad field {s:?}"));
    match s.split_once('^') {
        Some((p, r)) => field_construct(p.trim().parse().map_err(|_| bad())?, r.trim().parse().map_err(|_| bad())?),
        None => field_of_order(s.trim().trim_start_matches('F').parse().map_err(|_| bad())?),
    }
}

pub fn parse_z(s: &str) -> crate::Result<ZSpec> {
    match s {
        "auto" => Ok(ZSpec::Auto),
        _ => s
            .parse()
            .ok()
            .filter(|&z| z >= 1)
            .map(ZSpec::Fixed)
            .ok_or_else(|| Error::InvalidArgument(format!("bad extension degree {s:?}"))),
    }
}

/// `"1,1;1,1,2"`: one group per clique, one count per clique member.
pub fn parse_alloc(p: &Problem, s: &str) -> crate::Result<Allocation> {
    let n_ts = s
        .split(';')
        .map(|group| {
            group
                .split(',')
                .map(|n| {
                    n.trim().parse::<usize>().map_err(|_| Error::InvalidArgument(format!("bad allocation entry {n:?}")))
                })
                .collect()
        })
        .collect::<crate::Result<Vec<Vec<usize>>>>()?;
    Allocation::new(p, n_ts)
}

fn reference_scheme(r: Reference, d: Option<&FieldSpec>) -> crate::Result<CodingScheme> {
    let d = match d {
        Some(d) => d.clone(),
        None => field_construct(2, 1)?,
    };
    match r {
        Reference::Fig2 => fig2_reference_scheme(&d),
        Reference::TwoSum => two_sum_reference_scheme(&d),
    }
}

fn record(out: &mut dyn Write, instance: &str, v: &Rat) -> io::Result<()> {
    writeln!(out, "instance={instance:?} value-num={} value-den={}", v.numer(), v.denom())
}

fn render_tuple(v: &[Rat]) -> String {
    v.iter().map(Rat::to_string).collect::<Vec<_>>().join(" ")
}

fn cmd_capacity(p: &Problem, dsc: bool, closed: Option<ClosedForm>, format: Format, out: &mut dyn Write) -> Outcome {
    let (capacity, cost, witness) = match closed {
        None => split(capacity_lp(p)?),
        Some(ClosedForm::Fullent) => split(capacity_fullent(p)?),
        Some(ClosedForm::Unent) => split(capacity_unent(p)?),
        Some(ClosedForm::Symmetric) => {
            let sp = detect_symmetric(p)
                .ok_or_else(|| Error::InvalidArgument("streams and cliques are not all α- and β-subsets".into()))?;
            let c = capacity_symmetric(sp);
            let cost = c.recip().expect("capacity is positive");
            (c, cost, None)
        }
    };
    let gain = if dsc { Some(dsc_gain(p)?) } else { None };
    match format {
        Format::Text => {
            writeln!(out, "capacity {capacity}")?;
            writeln!(out, "optimal-cost {cost}")?;
            if let Some(w) = witness {
                writeln!(out, "witness {}", render_tuple(&w))?;
            }
            if let Some(g) = gain {
                writeln!(out, "dsc-gain {g}")?;
            }
        }
        Format::Records => {
            record(out, "capacity", &capacity)?;
            record(out, "optimal-cost", &cost)?;
            if let Some(w) = witness {
                for (i, v) in w.iter().enumerate() {
                    record(out, &format!("witness[{}]", i + 1), v)?;
                }
            }
            if let Some(g) = gain {
                record(out, "dsc-gain", &g)?;
            }
        }
    }
    Ok(())
}

fn split(c: CapacityResult) -> (Rat, Rat, Option<Vec<Rat>>) {
    (c.capacity, c.optimal_cost, Some(c.witness))
}

fn cmd_tables(format: Format, out: &mut dyn Write) -> Outcome {
    let mut bad = Vec::new();

    let rows = table1();
    let computed =
        rows.iter().map(|g| capacity_lp(&g.problem()).map(|c| c.capacity)).collect::<crate::Result<Vec<_>>>()?;
    if format == Format::Text {
        writeln!(out, "table 1: four-server map")?;
    }
    for (g, c) in rows.iter().zip(&computed) {
        let ok = *c == g.capacity;
        if !ok {
            bad.push(format!("table 1 {}: computed {c}, expected {}", g.label(), g.capacity));
        }
        match format {
            Format::Text => writeln!(out, "{:<44} {c}", g.label())?,
            Format::Records => record(out, &format!("table1 {}", g.label()), c)?,
        }
    }

    let golden = table2_golden();
    if format == Format::Text {
        writeln!(out, "table 2: C_alpha^(beta), S = 8, rows alpha, columns beta")?;
    }
    for (a, row) in golden.iter().enumerate() {
        let mut cells = Vec::new();
        for (b, want) in row.iter().enumerate() {
            let sp = SymmetricParams::new(8, a + 1, b + 1)?;
            let [f1, f2, f3] = symmetric_forms(sp);
            if f1 != f2 || f2 != f3 {
                bad.push(format!("table 2 alpha={} beta={}: closed forms disagree ({f1}, {f2}, {f3})", a + 1, b + 1));
            }
            if f1 != *want {
                bad.push(format!("table 2 alpha={} beta={}: computed {f1}, expected {want}", a + 1, b + 1));
            }
            if format == Format::Records {
                record(out, &format!("table2 alpha={} beta={}", a + 1, b + 1), &f1)?;
            }
            cells.push(format!("{:>6}", f1.to_string()));
        }
        if format == Format::Text {
            writeln!(out, "{}", cells.join(" "))?;
        }
    }

    let lp = symmetric_lp_reports(TABLES_LP_MAX_S)?;
    bad.extend(
        lp.iter().filter(|r| !r.agree).map(|r| format!("{}: LP {} vs closed form {}", r.instance, r.main, r.oracle)),
    );
    if format == Format::Text {
        writeln!(out, "LP cross-check of the closed form for S <= {TABLES_LP_MAX_S}: {} instances", lp.len())?;
    }
    if bad.is_empty() {
        if format == Format::Text {
            writeln!(out, "tables: ok")?;
        }
        Ok(())
    } else {
        for b in &bad {
            writeln!(out, "MISMATCH {b}")?;
        }
        Err(Failure::Mismatch(format!("{} table cells differ", bad.len())))
    }
}

fn summary(sch: &CodingScheme) -> String {
    format!(
        "scheme over {} (d = {}, z = {}): rank {}, {} qudits, rate {}, batch {} sums of F_{}",
        sch.field(),
        sch.extension().base(),
        sch.extension().z(),
        sch.rank(),
        sch.allocation().total(),
        sch.rate(),
        sch.batch_size(),
        sch.extension().base().order(),
    )
}

fn cmd_scheme_build(sch: &CodingScheme, path: Option<&Path>, format: Format, out: &mut dyn Write) -> Outcome {
    match path {
        Some(path) => {
            std::fs::write(path, sch.to_text()).map_err(|e| Failure::Io(path.to_path_buf(), e))?;
            match format {
                Format::Text => writeln!(out, "{}\ncertificate ok", summary(sch))?,
                Format::Records => record(out, "rate", &sch.rate())?,
            }
        }
        None => write!(out, "{}", sch.to_text())?,
    }
    Ok(())
}

fn cmd_scheme_simulate(
    sch: &CodingScheme,
    trials: u64,
    exhaustive: bool,
    seed: u64,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let report = if exhaustive { exhaustive_decode_check(sch)? } else { random_decode_check(sch, trials, seed)? };
    let total: u64 = report.oracle.parse().expect("count");
    let passed: u64 = if report.agree { total } else { report.main.parse().expect("count") };
    let mode = if exhaustive { "exhaustive" } else { "random" };
    match format {
        Format::Text => {
            writeln!(out, "{mode}: {passed}/{total} pass")?;
            if let Some(c) = &report.counterexample {
                writeln!(out, "first failure: {c}")?;
            }
        }
        Format::Records => {
            writeln!(out, "instance={:?} value-num={passed} value-den={total}", format!("simulate {mode}"))?
        }
    }
    if report.agree {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{mode} simulation: decoding failed")))
    }
}

/// Seed for the mutation pass of the decode suite.
const MUTATION_SEED: u64 = 11;
const MUTATIONS_PER_SCHEME: usize = 16;

/// Decode oracle over the reference fixtures and the built four-server schemes,
/// then mutation detection: every mutant that breaks the certificate must fail.
pub fn decode_reports(trials: u64, seed: u64) -> crate::Result<Vec<OracleReport>> {
    let f2 = field_construct(2, 1)?;
    let mut schemes = vec![fig2_reference_scheme(&f2)?, two_sum_reference_scheme(&field_construct(3, 1)?)?];
    for g in table1() {
        schemes.push(build_scheme(&g.problem(), &SchemeOptions { seed, ..Default::default() })?);
    }
    let mut out = Vec::new();
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(MUTATION_SEED);
    for sch in &schemes {
        out.push(decode_check(sch, trials, seed)?);
        let (mut broken, mut caught) = (0, 0);
        for _ in 0..MUTATIONS_PER_SCHEME {
            let (m, _, still_valid) = mutate_scheme(sch, &mut rng)?;
            if !still_valid {
                broken += 1;
                if !decode_check(&m, trials, seed)?.agree {
                    caught += 1;
                }
            }
        }
        out.push(OracleReport::compare(format!("mutants caught {}", sch.problem()), caught, broken));
    }
    Ok(out)
}

fn cmd_verify(suite: Suite, seed: u64, max_s: Option<usize>, cases: Option<usize>, out: &mut dyn Write) -> Outcome {
    let reports = match suite {
        Suite::Corollaries => {
            let mut b = CorollaryBounds::default();
            if let Some(s) = max_s {
                b.max_s = s;
            }
            if let Some(n) = cases {
                (b.triangle_cases, b.pair_cases, b.gain_cases, b.separability_cases) = (n, n, 2 * n, n);
            }
            check_corollaries(seed, b)?
        }
        Suite::BetaStar => beta_star_reports(max_s.unwrap_or(10)),
        Suite::OracleLp => {
            lp_agreement(cases.unwrap_or(200), seed, RandomBounds { max_s: max_s.unwrap_or(3), max_k: 2, max_t: 2 })?
        }
        Suite::Decode => decode_reports(cases.map_or(10_000, |c| c as u64), seed)?,
    };
    write!(out, "{}", render_tap(&reports))?;
    let failed = reports.iter().filter(|r| !r.agree).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{failed} of {} checks failed", reports.len())))
    }
}
