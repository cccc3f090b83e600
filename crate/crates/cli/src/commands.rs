//! Subcommand dispatch and the exit-status contract: 0 pass, 1 verification
//! failure, 2 usage or parse error. Output is assembled in memory and only
//! written once the command has finished.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use moran_core::analysis::{approximation, check_hypotheses, components, descendant_addresses, Component};
use moran_core::maps::{lipschitz_bounds, validate_map};
use moran_core::transport::{
    compute_epsilon, decompose_image_at, find_preserving_cylinder, phi_of_cylinder, ComponentIndex, RatioRecord,
    TransportContext,
};
use moran_core::{format_rational, Address, Error, Interval, MoranSet, SectionPairingMap};

use crate::config::{parse_config, parse_config_deferred, RunConfig};
use crate::emit::{component_csv, ratio_csv, SvgScene};

#[derive(Debug, Parser)]
#[command(
    name = "moran",
    version,
    about = "Exact computations on homogeneous Moran sets in [0, 1]"
)]
pub struct Cli {
    /// Run configuration (TOML).
    #[arg(long, global = true, default_value = "moran.toml")]
    pub config: PathBuf,
    /// Depth override; defaults to the matching `[run]` value.
    #[arg(long, global = true)]
    pub depth: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub emit: Option<Emit>,
    /// Write the artifact here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Csv,
    Svg,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the structural hypotheses of the source and target sets.
    Check,
    /// Component tables of the approximations down to the depth.
    Analyze,
    /// SVG of the approximations, with a φ strip when a map is configured.
    Render,
    #[command(subcommand)]
    Map(MapCommand),
    #[command(subcommand)]
    Transport(TransportCommand),
}

#[derive(Debug, Subcommand)]
pub enum MapCommand {
    /// Validate the configured map and list every violation.
    Validate,
    /// Certified bounds on the bi-Lipschitz constant.
    Lipschitz,
}

#[derive(Debug, Subcommand)]
pub enum TransportCommand {
    /// φ on every cylinder of the given rank.
    Phi,
    /// First sub-cylinder on which φ is constant.
    Locus {
        #[arg(long, default_value = "")]
        cylinder: String,
        #[arg(long)]
        max_depth: Option<usize>,
        #[arg(long)]
        certify_depth: Option<usize>,
    },
    /// Decompose the images of all rank-k components.
    Decompose {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        p0: Option<usize>,
    },
    /// β, γ, η₀, the Lipschitz bounds, p₀ and ε.
    Constants,
}

/// Everything a run produced; `main` writes it out.
#[derive(Debug, Default)]
pub struct Outcome {
    pub status: u8,
    pub stdout: Vec<u8>,
    pub stderr: String,
}

enum Failure {
    Usage { code: String, message: String },
    Verify { code: String, message: String },
}

impl Failure {
    fn usage(code: &str, message: impl Into<String>) -> Self {
        Failure::Usage {
            code: code.into(),
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = e.code().to_string();
        let message = e.to_string();
        match e {
            Error::BudgetExceeded { .. }
            | Error::ParseAddress(_)
            | Error::ParseRational(_)
            | Error::DigitOutOfRange { .. }
            | Error::PrefixTooShort { .. } => Failure::Usage { code, message },
            _ => Failure::Verify { code, message },
        }
    }
}

struct Report {
    body: Vec<u8>,
    failed: bool,
    diagnostics: Vec<String>,
}

impl Report {
    fn text(body: String) -> Self {
        Report {
            body: body.into_bytes(),
            failed: false,
            diagnostics: Vec::new(),
        }
    }

    fn fail(&mut self, code: &str, message: impl AsRef<str>) {
        self.failed = true;
        self.diagnostics.push(format!("fail[{code}]: {}", message.as_ref()));
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn execute<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    status: 2,
                    stdout: Vec::new(),
                    stderr: format!("error[Usage]: {rendered}"),
                }
            } else {
                Outcome {
                    status: 0,
                    stdout: rendered.into_bytes(),
                    stderr: String::new(),
                }
            }
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    let result = load(cli).and_then(|cfg| {
        let report = dispatch(cli, &cfg)?;
        Ok((cfg, report))
    });
    match result {
        Err(Failure::Usage { code, message }) => Outcome {
            status: 2,
            stdout: Vec::new(),
            stderr: format!("error[{code}]: {message}\n"),
        },
        Err(Failure::Verify { code, message }) => Outcome {
            status: 1,
            stdout: Vec::new(),
            stderr: format!("fail[{code}]: {message}\n"),
        },
        Ok((cfg, report)) => {
            let mut stderr = String::new();
            for d in &report.diagnostics {
                stderr.push_str(d);
                stderr.push('\n');
            }
            let status = if report.failed { 1 } else { 0 };
            match cli.out.as_ref().or(cfg.limits.out.as_ref()) {
                None => Outcome {
                    status,
                    stdout: report.body,
                    stderr,
                },
                Some(path) => match write_artifact(path, &report.body) {
                    Ok(()) => Outcome {
                        status,
                        stdout: Vec::new(),
                        stderr,
                    },
                    Err(e) => Outcome {
                        status: 2,
                        stdout: Vec::new(),
                        stderr: format!("error[Io]: cannot write {}: {e}\n", path.display()),
                    },
                },
            }
        }
    }
}

/// Writes through a sibling temporary file so that a failed write leaves
/// no partial artifact behind.
fn write_artifact(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".partial");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, bytes)
        .and_then(|_| std::fs::rename(&tmp, path))
        .inspect_err(|_| {
            let _ = std::fs::remove_file(&tmp);
        })
}

fn load(cli: &Cli) -> Result<RunConfig, Failure> {
    let text = std::fs::read_to_string(&cli.config)
        .map_err(|e| Failure::usage("Io", format!("cannot read {}: {e}", cli.config.display())))?;
    let deferred = matches!(cli.command, Command::Map(MapCommand::Validate));
    let parsed = if deferred {
        parse_config_deferred(&text)
    } else {
        parse_config(&text)
    };
    parsed.map_err(|e| Failure::usage(e.code(), format!("{}: {e}", cli.config.display())))
}

fn dispatch(cli: &Cli, cfg: &RunConfig) -> Result<Report, Failure> {
    let budget = cfg.limits.node_budget;
    let depth = cli.depth;
    match &cli.command {
        Command::Check => check(cfg),
        Command::Analyze => match cli.emit.unwrap_or(Emit::Csv) {
            Emit::Csv => {
                let ranks = component_table(&cfg.source, depth.unwrap_or(cfg.limits.depth), budget)?;
                Ok(Report::text(component_csv(&ranks)))
            }
            Emit::Svg => render(cfg, depth.unwrap_or(cfg.limits.depth)),
        },
        Command::Render => match cli.emit.unwrap_or(Emit::Svg) {
            Emit::Svg => render(cfg, depth.unwrap_or(cfg.limits.depth)),
            Emit::Csv => Err(Failure::usage("Usage", "render only emits svg")),
        },
        Command::Map(MapCommand::Validate) => map_validate(cfg),
        Command::Map(MapCommand::Lipschitz) => {
            let map = require_map(cfg)?;
            let k = depth.unwrap_or(cfg.limits.lipschitz_depth);
            let b = lipschitz_bounds(map, k, budget)?;
            Ok(Report::text(format!(
                "lower = {}\nupper = {}\ndepth = {}\n",
                format_rational(&b.lower),
                format_rational(&b.upper),
                b.depth_used
            )))
        }
        Command::Transport(t) => {
            let map = require_map(cfg)?;
            let ctx = TransportContext::new(map.clone(), cfg.limits.lipschitz_depth, budget)?;
            match t {
                TransportCommand::Phi => {
                    let k = depth.unwrap_or(cfg.limits.depth);
                    match cli.emit.unwrap_or(Emit::Csv) {
                        Emit::Csv => Ok(Report::text(ratio_csv(&ratio_records(&ctx, k)?))),
                        Emit::Svg => render_with(cfg, Some(&ctx), k),
                    }
                }
                TransportCommand::Locus {
                    cylinder,
                    max_depth,
                    certify_depth,
                } => {
                    let sigma: Address = cylinder.parse()?;
                    let locus = find_preserving_cylinder(
                        &ctx,
                        &sigma,
                        max_depth.unwrap_or(cfg.limits.max_depth),
                        certify_depth.unwrap_or(cfg.limits.certify_depth),
                    )?;
                    Ok(Report::text(format!(
                        "{}  ratio {}\n",
                        locus.address,
                        format_rational(&locus.ratio)
                    )))
                }
                TransportCommand::Decompose { rank, p0 } => decompose(&ctx, *rank, *p0),
                TransportCommand::Constants => constants(&ctx),
            }
        }
    }
}

fn require_map(cfg: &RunConfig) -> Result<&SectionPairingMap, Failure> {
    cfg.map
        .as_ref()
        .ok_or_else(|| Failure::usage("MissingMap", "the configuration has no [map] section"))
}

fn check(cfg: &RunConfig) -> Result<Report, Failure> {
    let mut out = String::new();
    let mut sides = vec![("source", &cfg.source)];
    if cfg.target != cfg.source {
        sides.push(("target", &cfg.target));
    }
    let mut failures = Vec::new();
    for (name, set) in sides {
        let report = check_hypotheses(set);
        if out.is_empty() {
            writeln!(out, "[{name}]").unwrap();
        } else {
            writeln!(out, "\n[{name}]").unwrap();
        }
        writeln!(out, "{report}").unwrap();
        if !report.bounded_branching.passed() {
            failures.push(("BoundedBranching", format!("{name}: condition (i) failed")));
        }
        if !report.gap_decay.passed() {
            let why = match &report.gamma {
                Ok(g) => format!("gamma = {} is not above 1", format_rational(g)),
                Err(e) => e.to_string(),
            };
            failures.push(("GapDecay", format!("{name}: condition (ii) failed: {why}")));
        }
        if !report.weak_separation.passed() {
            failures.push(("WeakSeparation", format!("{name}: condition (iii) failed")));
        }
    }
    let mut report = Report::text(out);
    for (code, message) in failures {
        report.fail(code, message);
    }
    Ok(report)
}

fn component_table(set: &MoranSet, depth: usize, budget: u64) -> Result<Vec<Vec<Component>>, Failure> {
    (0..=depth)
        .map(|k| {
            let approx = approximation(set, k, budget)?;
            Ok(components(&approx)?)
        })
        .collect()
}

fn ratio_records(ctx: &TransportContext, k: usize) -> Result<Vec<RatioRecord>, Failure> {
    let cells = descendant_addresses(ctx.map.source(), &Address::root(), k, ctx.budget)?;
    Ok(cells.iter().map(|sigma| phi_of_cylinder(ctx, sigma)).collect())
}

fn render(cfg: &RunConfig, depth: usize) -> Result<Report, Failure> {
    match &cfg.map {
        None => render_with(cfg, None, depth),
        Some(map) => {
            let ctx = TransportContext::with_constant(map.clone(), num_traits::One::one(), cfg.limits.node_budget);
            render_with(cfg, Some(&ctx), depth)
        }
    }
}

fn render_with(cfg: &RunConfig, ctx: Option<&TransportContext>, depth: usize) -> Result<Report, Failure> {
    let budget = cfg.limits.node_budget;
    let rows = (0..=depth)
        .map(|k| {
            let approx = approximation(&cfg.source, k, budget)?;
            Ok(approx.intervals.into_iter().map(|b| b.interval).collect())
        })
        .collect::<Result<Vec<Vec<Interval>>, Failure>>()?;
    let strip = match ctx {
        None => None,
        Some(ctx) => {
            let records = ratio_records(ctx, depth)?;
            let cells = records
                .into_iter()
                .map(|r| Ok((cfg.source.basic_interval(&r.id)?, r.phi)))
                .collect::<Result<Vec<_>, Failure>>()?;
            Some(cells)
        }
    };
    Ok(Report::text(SvgScene { rows: &rows, strip }.render()))
}

fn map_validate(cfg: &RunConfig) -> Result<Report, Failure> {
    let pairs = cfg
        .map_pairs
        .as_ref()
        .ok_or_else(|| Failure::usage("MissingMap", "the configuration has no [map] section"))?;
    match validate_map(&cfg.source, &cfg.target, pairs) {
        Ok(()) => Ok(Report::text(format!("valid: {} pieces\n", pairs.len()))),
        Err(violations) => {
            let mut out = String::new();
            for v in &violations {
                writeln!(out, "{},{v}", v.code()).unwrap();
            }
            let mut report = Report::text(out);
            report.fail("InvalidMap", format!("{} violation(s)", violations.len()));
            Ok(report)
        }
    }
}

fn decompose(ctx: &TransportContext, rank: usize, p0: Option<usize>) -> Result<Report, Failure> {
    let p0 = match p0 {
        Some(p) => p,
        None => ctx.p0()? as usize,
    };
    if rank < p0 {
        return Err(Failure::usage(
            "Usage",
            format!("--rank {rank} must be at least p0 = {p0}"),
        ));
    }
    let source = ctx.map.source();
    let target = ctx.map.target();
    let fine = ComponentIndex::build(target, rank + p0, ctx.budget)?;
    let coarse = ComponentIndex::build(target, rank - p0, ctx.budget)?;
    let comps = components(&approximation(source, rank, ctx.budget)?)?;
    let mut out = String::from("component,span_left,span_right,ancestor_left,ancestor_right,h,h_bound,resolution\n");
    let mut report_failures = Vec::new();
    for comp in &comps {
        let d = decompose_image_at(
            ctx,
            comp,
            p0,
            &fine,
            &coarse,
            moran_core::transport::decompose::DEFAULT_EXTRA_DEPTH,
        )?;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            comp.first_address(),
            format_rational(&comp.span.left),
            format_rational(&comp.span.right),
            format_rational(&d.ancestor.span.left),
            format_rational(&d.ancestor.span.right),
            d.h(),
            format_rational(&d.part_bound),
            d.resolution
        )
        .unwrap();
        if !d.within_part_bound() {
            report_failures.push(format!("component at {} has h = {} parts", comp.first_address(), d.h()));
        }
    }
    let mut report = Report::text(out);
    for f in report_failures {
        report.fail("PartBound", f);
    }
    Ok(report)
}

fn constants(ctx: &TransportContext) -> Result<Report, Failure> {
    let mut out = String::new();
    writeln!(out, "beta   = {}", ctx.beta).unwrap();
    match &ctx.gamma {
        Some(g) => writeln!(out, "gamma  = {}", format_rational(g)).unwrap(),
        None => writeln!(out, "gamma  = undefined").unwrap(),
    }
    writeln!(out, "eta0   = {}", ctx.eta0).unwrap();
    writeln!(out, "C      = {}", format_rational(&ctx.lipschitz)).unwrap();
    let p0 = ctx.p0()?;
    writeln!(out, "p0     = {p0}").unwrap();
    writeln!(out, "eps    = {}", format_rational(&compute_epsilon(ctx.beta, p0))).unwrap();
    Ok(Report::text(out))
}
