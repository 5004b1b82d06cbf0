//! Command-line front end: generate codes, run the defect pipeline,
//! compute distances and entanglement reports, verify the distance and
//! stability bounds.
//!
//! Exit codes are frozen (see `docs/formats.md`): 0 success, 1 a verified
//! property does not hold, 2 usage or infeasible spec, 3 search budget
//! exceeded, 4 invalid code, 5 construction precondition failed.

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qdefect::formats::{self, Bundle, FormatError};
use qdefect::report::{
    deform_csv, to_json, DefectJson, DeformJson, DistanceJson, EntropyJson, ExpansionJson,
    InfoJson, LocalBoundJson, RemovalJson,
};
use qdefect::runner::Threaded;
use qdefect_core::css::CssCode;
use qdefect_core::defect::{
    construct_defect, construct_defect_with_region, verify_expansion_bound,
    verify_local_distance_bound, verify_removal_bounds,
};
use qdefect_core::entropy::{deformation_stability, gamma, Move};
use qdefect_core::f2::search::{ExecCfg, DEFAULT_BUDGET};
use qdefect_core::f2::Region;
use qdefect_core::families::{
    hypergraph_product, random_regular_matrix, PlanarSurface, RegularMatrixSpec, Toric,
};
use qdefect_core::tanner::{Node, TannerGraph};
use qdefect_core::Error as CoreError;

#[derive(Parser)]
#[command(name = "qdefect", version, about = "CSS code defects: construction and verification")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Step limit for exhaustive searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,

    /// Worker threads for the searches; results are identical for any count.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,

    /// Report format (`csv` only for `deform`).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a code bundle (or matrix file) for a built-in family.
    #[command(subcommand)]
    Gen(Gen),
    /// Facts about the built-in generators.
    #[command(subcommand)]
    Families(Families),
    /// Structural summary of a bundle: sizes and ranks, no searches.
    Info { bundle: String },
    /// Exact code distances by exhaustive search.
    Distance { bundle: String },
    /// Promote a Z check to a logical pair, removing a region around it.
    Defect {
        bundle: String,
        #[command(flatten)]
        target: CheckAndRegion,
        /// Also write the resulting defect code as a bundle.
        #[arg(long)]
        emit_code: Option<PathBuf>,
    },
    /// Entanglement decomposition of a cut: ranks, perimeter, excess.
    Entropy {
        bundle: String,
        #[command(flatten)]
        region: RegionSpec,
    },
    /// Check a proved bound; exit 1 if it does not hold on this input.
    #[command(subcommand)]
    Verify(Verify),
    /// Walk single-qubit region moves and track the defect invariants.
    Deform {
        bundle: String,
        #[command(flatten)]
        target: CheckAndRegion,
        /// Comma-separated moves: `+QUBIT` adds to the region, `-QUBIT` removes.
        #[arg(long, allow_hyphen_values = true)]
        moves: String,
        /// Guarantee weight; defaults to the largest check weight.
        #[arg(long)]
        w: Option<usize>,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// Toric code on an L x L periodic lattice.
    Toric {
        l: usize,
        #[arg(long)]
        name: Option<String>,
    },
    /// Planar surface code on an L x L open patch.
    Planar {
        l: usize,
        /// Append the (dependent) sum-of-all-faces row to the Z checks.
        #[arg(long)]
        boundary_row: bool,
        #[arg(long)]
        name: Option<String>,
    },
    /// Hypergraph product of two matrix files.
    Qhp {
        #[arg(long)]
        h1: PathBuf,
        #[arg(long)]
        h2: PathBuf,
        #[arg(long)]
        name: Option<String>,
    },
    /// Seeded biregular matrix file (an ingredient for `gen qhp`).
    RandomRegular {
        #[arg(long)]
        row_weight: usize,
        #[arg(long)]
        col_weight: usize,
        #[arg(long)]
        rows: usize,
        #[arg(long)]
        cols: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum Families {
    /// One line per generator with its parameter constraints.
    List,
}

#[derive(Subcommand)]
enum Verify {
    /// Distance window after removing an erasable region.
    Removal {
        bundle: String,
        #[command(flatten)]
        region: RegionSpec,
    },
    /// Weight floor around a locally independent check.
    LocalBound {
        bundle: String,
        #[arg(long)]
        u0: usize,
        #[arg(long)]
        r_hole: usize,
        #[arg(long)]
        r_indep: usize,
        /// Pin the dependent rows to drop (default: greedy, farthest first).
        #[arg(long, value_delimiter = ',')]
        drop_rows: Option<Vec<usize>>,
    },
    /// Expansion floor for the promoted class off the removal ball.
    Expansion {
        bundle: String,
        #[arg(long)]
        u0: usize,
        #[arg(long)]
        r1: usize,
        /// Largest subset size to profile; defaults to max(r1, 2).
        #[arg(long)]
        m_max: Option<usize>,
    },
}

/// A removal region, either explicit or as a ball around a Z check.
#[derive(Args)]
struct RegionSpec {
    /// Explicit qubit indices, comma-separated (empty string for none).
    #[arg(long, value_delimiter = ',', num_args = 0.., conflicts_with_all = ["u0", "r1"])]
    a: Option<Vec<usize>>,
    /// Z-check row; the region is the ball of qubits within 2*r1 of it.
    #[arg(long, requires = "r1")]
    u0: Option<usize>,
    #[arg(long, requires = "u0")]
    r1: Option<usize>,
}

/// A promoted check plus its removal region.
#[derive(Args)]
struct CheckAndRegion {
    /// Z-check row to promote.
    #[arg(long)]
    u0: usize,
    /// Explicit region; mutually exclusive with --r1.
    #[arg(long, value_delimiter = ',', num_args = 0.., conflicts_with = "r1")]
    a: Option<Vec<usize>>,
    /// Ball radius: remove qubits within 2*r1 of the promoted check.
    #[arg(long)]
    r1: Option<usize>,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        let code = match &e {
            CoreError::InfeasibleSpec(_)
            | CoreError::RowOutOfRange { .. }
            | CoreError::ColumnOutOfRange { .. } => 2,
            CoreError::BudgetExceeded { .. } => 3,
            CoreError::ShapeMismatch(_) | CoreError::NotOrthogonal { .. } => 4,
            CoreError::NotErasable { .. }
            | CoreError::ConditionFailed { .. }
            | CoreError::PreconditionFailed { .. }
            | CoreError::NoSupportedRepresentative
            | CoreError::Inconsistent => 5,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Failure {
        match e {
            FormatError::Syntax { .. } => Failure::usage(e.to_string()),
            FormatError::Code(c) => c.into(),
        }
    }
}

/// Report text plus the process exit status it should carry.
struct Outcome {
    text: String,
    code: u8,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }

    fn checked(text: String, holds: bool) -> Outcome {
        Outcome {
            text,
            code: if holds { 0 } else { 1 },
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(outcome) => {
            if let Err(f) = write_output(out.as_deref(), &outcome.text) {
                eprintln!("error: {}", f.message);
                return ExitCode::from(f.code);
            }
            ExitCode::from(outcome.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    if cli.format == Format::Csv && !matches!(cli.command, Cmd::Deform { .. }) {
        return Err(Failure::usage("--format csv is only available for `deform`"));
    }
    if cli.threads == 0 {
        return Err(Failure::usage("--threads must be at least 1"));
    }
    let threaded;
    let cfg = if cli.threads == 1 {
        ExecCfg::serial(cli.budget)
    } else {
        threaded = Threaded {
            threads: cli.threads,
        };
        ExecCfg {
            budget: cli.budget,
            runner: &threaded,
        }
    };

    match cli.command {
        Cmd::Gen(gen) => cmd_gen(gen),
        Cmd::Families(Families::List) => Ok(Outcome::ok(families_list())),
        Cmd::Info { bundle } => {
            let b = read_bundle(&bundle)?;
            Ok(Outcome::ok(to_json(&InfoJson::new(&b.name, &b.code))))
        }
        Cmd::Distance { bundle } => cmd_distance(&read_bundle(&bundle)?.code, &cfg),
        Cmd::Defect {
            bundle,
            target,
            emit_code,
        } => cmd_defect(&read_bundle(&bundle)?, target, emit_code.as_deref(), &cfg),
        Cmd::Entropy { bundle, region } => {
            let code = read_bundle(&bundle)?.code;
            let a = region.resolve(&code)?;
            Ok(Outcome::ok(to_json(&EntropyJson::from(&gamma(&code, &a)?))))
        }
        Cmd::Verify(v) => cmd_verify(v, &cfg),
        Cmd::Deform {
            bundle,
            target,
            moves,
            w,
        } => cmd_deform(&read_bundle(&bundle)?.code, target, &moves, w, cli.format, &cfg),
    }
}

fn cmd_gen(gen: Gen) -> Result<Outcome, Failure> {
    let text = match gen {
        Gen::Toric { l, name } => {
            let code = Toric::new(l)?.code();
            formats::write_bundle(&name.unwrap_or_else(|| format!("toric-{l}")), &code)
        }
        Gen::Planar {
            l,
            boundary_row,
            name,
        } => {
            let surface = PlanarSurface::new(l)?;
            let mut code = surface.code();
            let mut default_name = format!("planar-{l}");
            if boundary_row {
                let mut q = code.q().clone();
                q.push_row(surface.boundary());
                code = CssCode::new(code.p().clone(), q)?;
                default_name.push_str("-boundary");
            }
            formats::write_bundle(&name.unwrap_or(default_name), &code)
        }
        Gen::Qhp { h1, h2, name } => {
            let m1 = formats::parse_matrix(&read_input(&h1.to_string_lossy())?)?;
            let m2 = formats::parse_matrix(&read_input(&h2.to_string_lossy())?)?;
            let code = hypergraph_product(&m1, &m2);
            formats::write_bundle(&name.unwrap_or_else(|| "qhp".into()), &code)
        }
        Gen::RandomRegular {
            row_weight,
            col_weight,
            rows,
            cols,
            seed,
        } => {
            let m = random_regular_matrix(&RegularMatrixSpec {
                row_weight,
                col_weight,
                n_rows: rows,
                n_cols: cols,
                seed,
            })?;
            formats::write_matrix(&m)
        }
    };
    Ok(Outcome::ok(text))
}

fn families_list() -> String {
    concat!(
        "toric L            periodic L x L surface code, L >= 2; 2*L^2 qubits, 2 logicals\n",
        "planar L           open-boundary L x L surface code, L >= 2; one logical qubit\n",
        "                   (--boundary-row appends the dependent sum-of-all-faces Z check)\n",
        "qhp                hypergraph product of two matrix files (--h1, --h2)\n",
        "random-regular     seeded biregular matrix file; needs row_weight*rows == col_weight*cols\n",
    )
    .to_string()
}

fn cmd_distance(code: &CssCode, cfg: &ExecCfg<'_>) -> Result<Outcome, Failure> {
    let base = DistanceJson {
        n: code.n(),
        k: code.k(),
        d_x: None,
        d_z: None,
        reason: None,
    };
    match code.distances(cfg) {
        Ok(d) => Ok(Outcome::ok(to_json(&DistanceJson {
            d_x: d.d_x.finite(),
            d_z: d.d_z.finite(),
            reason: (code.k() == 0).then(|| "empty domain".into()),
            ..base
        }))),
        // Partial report: the cheap structural facts survive a blown budget.
        Err(CoreError::BudgetExceeded { .. }) => Ok(Outcome {
            text: to_json(&DistanceJson {
                reason: Some("budget exceeded".into()),
                ..base
            }),
            code: 3,
        }),
        Err(e) => Err(e.into()),
    }
}

fn cmd_defect(
    bundle: &Bundle,
    target: CheckAndRegion,
    emit_code: Option<&Path>,
    cfg: &ExecCfg<'_>,
) -> Result<Outcome, Failure> {
    let code = &bundle.code;
    let report = match (target.a, target.r1) {
        (Some(a), None) => {
            construct_defect_with_region(code, target.u0, &Region::from_indices(a), None, cfg)?
        }
        (None, Some(r1)) => construct_defect(code, target.u0, r1, cfg)?,
        (None, None) => return Err(Failure::usage("give a region: --r1 RADIUS or --a LIST")),
        (Some(_), Some(_)) => unreachable!("clap rejects --a with --r1"),
    };
    if let Some(path) = emit_code {
        let text = formats::write_bundle(&format!("{}-defect", bundle.name), &report.defect_code);
        write_file(path, &text)?;
    }
    Ok(Outcome::ok(to_json(&DefectJson::from(&report))))
}

fn cmd_verify(v: Verify, cfg: &ExecCfg<'_>) -> Result<Outcome, Failure> {
    match v {
        Verify::Removal { bundle, region } => {
            let code = read_bundle(&bundle)?.code;
            let a = region.resolve(&code)?;
            let report = verify_removal_bounds(&code, &a, cfg)?;
            Ok(Outcome::checked(
                to_json(&RemovalJson::from(&report)),
                report.holds(),
            ))
        }
        Verify::LocalBound {
            bundle,
            u0,
            r_hole,
            r_indep,
            drop_rows,
        } => {
            let code = read_bundle(&bundle)?.code;
            let report =
                verify_local_distance_bound(&code, u0, r_hole, r_indep, drop_rows.as_deref(), cfg)?;
            Ok(Outcome::checked(
                to_json(&LocalBoundJson::from(&report)),
                report.holds(),
            ))
        }
        Verify::Expansion {
            bundle,
            u0,
            r1,
            m_max,
        } => {
            let code = read_bundle(&bundle)?.code;
            let m_max = m_max.unwrap_or(r1.max(2));
            let report = verify_expansion_bound(&code, u0, r1, m_max, cfg)?;
            Ok(Outcome::checked(
                to_json(&ExpansionJson::from(&report)),
                report.bound_ok,
            ))
        }
    }
}

fn cmd_deform(
    code: &CssCode,
    target: CheckAndRegion,
    moves: &str,
    w: Option<usize>,
    format: Format,
    cfg: &ExecCfg<'_>,
) -> Result<Outcome, Failure> {
    let a0 = match (target.a, target.r1) {
        (Some(a), None) => Region::from_indices(a),
        (None, Some(r1)) => ball_region(code, target.u0, r1)?,
        (None, None) => return Err(Failure::usage("give a region: --r1 RADIUS or --a LIST")),
        (Some(_), Some(_)) => unreachable!("clap rejects --a with --r1"),
    };
    let moves = parse_moves(moves)?;
    let report = deformation_stability(code, target.u0, &a0, &moves, w, cfg)?;
    let text = match format {
        Format::Json => to_json(&DeformJson::from(&report)),
        Format::Csv => deform_csv(&report),
    };
    Ok(Outcome::checked(text, report.stable()))
}

impl RegionSpec {
    fn resolve(self, code: &CssCode) -> Result<Region, Failure> {
        match (self.a, self.u0, self.r1) {
            (Some(a), None, None) => Ok(Region::from_indices(a)),
            (None, Some(u0), Some(r1)) => ball_region(code, u0, r1),
            _ => Err(Failure::usage("give a region: --a LIST or --u0 ROW --r1 RADIUS")),
        }
    }
}

/// Qubits within Tanner distance `2*r1` of Z check `u0` — the same region
/// `defect --r1` removes.
fn ball_region(code: &CssCode, u0: usize, r1: usize) -> Result<Region, Failure> {
    let graph = TannerGraph::new(code.q());
    if u0 >= code.q().n_rows() {
        return Err(CoreError::RowOutOfRange {
            index: u0,
            len: code.q().n_rows(),
        }
        .into());
    }
    Ok(graph.ball(Node::Check(u0), 2 * r1)?.value_region())
}

fn parse_moves(text: &str) -> Result<Vec<Move>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let qubit = t[1..]
                .parse()
                .map_err(|_| Failure::usage(format!("bad move `{t}`: expected +QUBIT or -QUBIT")))?;
            match t.as_bytes()[0] {
                b'+' => Ok(Move::Add(qubit)),
                b'-' => Ok(Move::Remove(qubit)),
                _ => Err(Failure::usage(format!(
                    "bad move `{t}`: expected +QUBIT or -QUBIT"
                ))),
            }
        })
        .collect()
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::usage(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("reading {path}: {e}")))
    }
}

fn read_bundle(path: &str) -> Result<Bundle, Failure> {
    Ok(formats::parse_bundle(&read_input(path)?)?)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text)
        .map_err(|e| Failure::usage(format!("writing {}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_file(path, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
