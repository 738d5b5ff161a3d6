//! The `ahlfors` subcommands.
//!
//! File-producing commands (`gen`, `count`, `transform`, `tree build`,
//! `tree power`) need `--out` and write the manifest next to it, at
//! `--manifest` or `<out>.manifest.json`. Report commands print JSON to
//! `--out` or stdout with the manifest embedded under `"manifest"`.

use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};

use ahlfors_core::asymptotics::{counting_curve, dimension_fit, limit_diagnostic, LimitConfig, ScaleGrid};
use ahlfors_core::counting::{axiom_suite, CountMode, CountingFunctionSpec, CountingKind};
use ahlfors_core::geometry::{apply_map, check_osc, sample_cell, PointCloud, DEFAULT_POINT_BUDGET};
use ahlfors_core::stree::{
    power_tree, pruned_mass, pruned_mass_bound, tree_from_ifs, tree_from_packing, verify_axioms, STree,
};
use ahlfors_core::symbolic::{
    bowen_root, renewal_convergence_series, Kernel, LocallyConstantPotential, RenewalSpec, Word,
    DEFAULT_NODE_BUDGET,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::CliError;
use crate::formats::report::{
    to_json, DiagnosticDoc, FitDoc, OscDoc, PruneDoc, RenewalDoc, SuiteDoc, TreeReportDoc,
};
use crate::formats::{self, SystemDoc};
use crate::manifest::Manifest;

#[derive(Debug, Parser)]
#[command(name = "ahlfors", version, about = "Counting functions, s-trees and limit diagnostics")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Global {
    /// Worker cap. The core algorithms run on one thread.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
    pub threads: u32,
    /// Node budget for renewal enumeration and point budget for sampling.
    #[arg(long, global = true)]
    pub budget_nodes: Option<u64>,
    /// Output file.
    #[arg(short = 'o', long, global = true)]
    pub out: Option<PathBuf>,
    /// Manifest file. Defaults to `<out>.manifest.json`.
    #[arg(long, global = true)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sample an attractor into a point cloud.
    Gen(GenArgs),
    /// Evaluate a counting function on a scale grid.
    Count(CountArgs),
    /// Fit the dimension of a counting curve.
    Dim(DimArgs),
    /// Decide whether `ε^s·N(ε)` converges or oscillates.
    Limit(LimitArgs),
    /// Build, verify, recode and prune s-trees.
    #[command(subcommand)]
    Tree(TreeCommand),
    /// Renewal sums `e^{−aδ}·N(a)` along a grid of levels.
    Renewal(RenewalArgs),
    /// Push a point cloud through a conformal map.
    Transform(TransformArgs),
    /// Run the counting-function axiom suite.
    Axioms(AxiomsArgs),
}

#[derive(Debug, Subcommand)]
pub enum TreeCommand {
    /// Build a tree from an IFS or from nested packings of a cloud.
    Build(TreeBuildArgs),
    /// Check the tree axioms and report the measured constants.
    Verify(TreeVerifyArgs),
    /// Recode a tree over `m`-blocks.
    Power(TreePowerArgs),
    /// Mass left after removing one child per node for `m` levels.
    Prune(TreePruneArgs),
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(x) => Err(format!("{x} is not a positive finite number")),
        Err(e) => Err(e.to_string()),
    }
}

fn kind(s: &str) -> Result<CountingKind, String> {
    s.parse().map_err(|e: ahlfors_core::Error| e.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Greedy,
    Exact,
}

impl From<Mode> for CountMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Greedy => CountMode::Greedy,
            Mode::Exact => CountMode::Exact,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GenArgs {
    /// System document with an "ifs" section.
    #[arg(long, visible_alias = "system")]
    pub ifs: PathBuf,
    /// Sampling resolution.
    #[arg(long, value_parser = positive, allow_negative_numbers = true)]
    pub delta: f64,
    /// Starting point, comma separated. Defaults to the fixed point of the
    /// first map.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub seed: Option<Vec<f64>>,
    /// Refuse to sample unless the open-set witness certifies.
    #[arg(long)]
    pub require_osc: bool,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CountArgs {
    /// separated, packing, covering or minkowski.
    #[arg(long = "fn", value_parser = kind)]
    #[serde(serialize_with = "kind_name")]
    pub function: CountingKind,
    /// Point cloud file.
    #[arg(long)]
    pub cloud: PathBuf,
    /// Largest scale.
    #[arg(long, value_parser = positive)]
    pub emax: f64,
    /// Smallest scale.
    #[arg(long, value_parser = positive)]
    pub emin: f64,
    /// Scales per decade.
    #[arg(long, default_value_t = 40.0, value_parser = positive)]
    pub ppd: f64,
    #[arg(long, value_enum, default_value_t = Mode::Greedy)]
    pub mode: Mode,
    /// Exponent for the scaled column. Defaults to the fitted dimension.
    #[arg(long, value_parser = positive)]
    pub s: Option<f64>,
}

fn kind_name<S: serde::Serializer>(k: &CountingKind, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(k.name())
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DimArgs {
    /// Curve CSV written by `count`.
    #[arg(long)]
    pub curve: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LimitArgs {
    /// Curve CSV written by `count`.
    #[arg(long)]
    pub curve: PathBuf,
    /// Exponent. Defaults to the `s` column of the curve.
    #[arg(long, value_parser = positive)]
    pub s: Option<f64>,
    #[arg(long, default_value_t = LimitConfig::default().converging_amplitude)]
    pub converging_amplitude: f64,
    #[arg(long, default_value_t = LimitConfig::default().oscillating_amplitude)]
    pub oscillating_amplitude: f64,
    #[arg(long, default_value_t = LimitConfig::default().peak_to_median)]
    pub peak_to_median: f64,
    #[arg(long, default_value_t = LimitConfig::default().window_decades, value_parser = positive)]
    pub window_decades: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BuildMode {
    Ifs,
    Packing,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TreeBuildArgs {
    /// Source of the tree.
    #[arg(long, value_enum)]
    pub mode: BuildMode,
    /// Levels below the root.
    #[arg(long)]
    pub depth: usize,
    /// System document with an "ifs" section (ifs mode).
    #[arg(long, visible_alias = "system", required_if_eq("mode", "ifs"))]
    pub ifs: Option<PathBuf>,
    /// Root centre, comma separated (ifs mode).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, required_if_eq("mode", "ifs"))]
    pub x0: Option<Vec<f64>>,
    /// Point cloud (packing mode).
    #[arg(long, required_if_eq("mode", "packing"))]
    pub cloud: Option<PathBuf>,
    /// Packing ratio in (0, 1/6) (packing mode).
    #[arg(long, required_if_eq("mode", "packing"))]
    pub delta: Option<f64>,
    /// Regularity exponent (packing mode).
    #[arg(long, required_if_eq("mode", "packing"))]
    pub s: Option<f64>,
    /// Point weights, comma separated. Defaults to uniform.
    #[arg(long, value_delimiter = ',')]
    pub weights: Option<Vec<f64>>,
    /// Where the axiom report goes. Defaults to stdout.
    #[arg(long)]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TreeVerifyArgs {
    /// Tree document.
    #[arg(long)]
    pub tree: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TreePowerArgs {
    /// Tree document.
    #[arg(long)]
    pub tree: PathBuf,
    /// Block length.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub m: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Choice {
    /// Smallest stored child.
    First,
    /// Largest stored child.
    Last,
    /// Child number `|w| mod (number of children)`.
    Cycle,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TreePruneArgs {
    /// Tree document.
    #[arg(long)]
    pub tree: PathBuf,
    /// Word to start below. Defaults to the root.
    #[arg(long, default_value = "")]
    pub start: String,
    /// Levels to prune below the start word.
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_enum, default_value_t = Choice::First)]
    pub choice: Choice,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RenewalArgs {
    /// System document with a potential or an IFS.
    #[arg(long)]
    pub system: PathBuf,
    /// First level.
    #[arg(long, default_value_t = 0.0)]
    pub amin: f64,
    /// Last level.
    #[arg(long, value_parser = positive)]
    pub amax: f64,
    /// Number of levels in `[amin, amax]`.
    #[arg(long, default_value_t = 201)]
    pub points: usize,
    /// Growth rate. Defaults to the zero of the pressure.
    #[arg(long, value_parser = positive)]
    pub delta: Option<f64>,
    /// Anchor word. Defaults to the first admissible word of the
    /// potential's depth.
    #[arg(long)]
    pub anchor: Option<String>,
    /// Exponential kernel rate. Defaults to the unit kernel.
    #[arg(long)]
    pub kernel_rate: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TransformArgs {
    /// Point cloud file.
    #[arg(long)]
    pub cloud: PathBuf,
    /// System document with a "map" section.
    #[arg(long)]
    pub map: PathBuf,
    /// Smallest distance to the singular point. Defaults to ten times the
    /// cloud resolution.
    #[arg(long, value_parser = positive)]
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AxiomsArgs {
    /// separated, packing or covering.
    #[arg(long = "fn", value_parser = kind)]
    #[serde(serialize_with = "kind_name")]
    pub function: CountingKind,
    /// Point clouds; repeat the flag for several.
    #[arg(long, required = true)]
    pub cloud: Vec<PathBuf>,
    /// Decreasing scales, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    pub eps: Vec<f64>,
    #[arg(long, value_enum, default_value_t = Mode::Greedy)]
    pub mode: Mode,
    /// Declared comparability constant `B`.
    #[arg(long, value_parser = positive)]
    pub comparability: Option<f64>,
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Gen(a) => gen(g, a),
        Command::Count(a) => count(g, a),
        Command::Dim(a) => dim(g, a),
        Command::Limit(a) => limit(g, a),
        Command::Tree(TreeCommand::Build(a)) => tree_build(g, a),
        Command::Tree(TreeCommand::Verify(a)) => tree_verify(g, a),
        Command::Tree(TreeCommand::Power(a)) => tree_power(g, a),
        Command::Tree(TreeCommand::Prune(a)) => tree_prune(g, a),
        Command::Renewal(a) => renewal(g, a),
        Command::Transform(a) => transform(g, a),
        Command::Axioms(a) => axioms(g, a),
    }
}

fn manifest<A: Serialize>(command: &str, g: &Global, args: &A) -> Manifest {
    let config = serde_json::json!({
        "global": g,
        "args": args,
    });
    let mut m = Manifest::new(command, config);
    m.outputs = g.out.iter().map(|p| p.display().to_string()).collect();
    m
}

fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn write_bytes(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

fn load_system(path: &Path) -> Result<SystemDoc, CliError> {
    formats::parse_system(&read_text(path)?).map_err(|e| CliError::format(path, e))
}

fn load_cloud(path: &Path) -> Result<PointCloud, CliError> {
    let f = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    formats::read_cloud(BufReader::new(f)).map_err(|e| CliError::format(path, e))
}

fn load_tree(path: &Path) -> Result<STree, CliError> {
    let doc = formats::parse_tree(&read_text(path)?).map_err(|e| CliError::format(path, e))?;
    Ok(doc.to_tree()?)
}

fn required_out(g: &Global, command: &str) -> Result<PathBuf, CliError> {
    g.out
        .clone()
        .ok_or_else(|| CliError::Usage(format!("{command} writes a file; pass --out")))
}

/// Writes a file output and its manifest.
fn emit_file(g: &Global, out: &Path, bytes: &[u8], manifest: &Manifest) -> Result<(), CliError> {
    write_bytes(out, bytes)?;
    let path = g.manifest.clone().unwrap_or_else(|| {
        let mut p = out.as_os_str().to_owned();
        p.push(".manifest.json");
        PathBuf::from(p)
    });
    write_bytes(&path, to_json(manifest).as_bytes())
}

/// Writes a report to `--out` or stdout, and the manifest to `--manifest`
/// when given.
fn emit_report<T: Serialize>(g: &Global, report: &T, manifest: &Manifest) -> Result<(), CliError> {
    let text = to_json(report);
    match &g.out {
        Some(p) => write_bytes(p, text.as_bytes())?,
        None => print!("{text}"),
    }
    if let Some(p) = &g.manifest {
        write_bytes(p, to_json(manifest).as_bytes())?;
    }
    Ok(())
}

fn gen(g: &Global, a: &GenArgs) -> Result<(), CliError> {
    let out = required_out(g, "gen")?;
    let ifs = load_system(&a.ifs)?.ifs()?;
    if a.require_osc {
        let report = check_osc(&ifs);
        if !report.certified() {
            let doc = OscDoc::from(&report);
            return Err(CliError::Precondition(format!(
                "open set condition not certified: {}",
                doc.detail.unwrap_or(doc.status)
            )));
        }
    }
    let seed = match &a.seed {
        Some(s) => s.clone(),
        None => ifs.maps()[0].fixed_point(),
    };
    let budget = g.budget_nodes.unwrap_or(DEFAULT_POINT_BUDGET);
    let cloud = sample_cell(&ifs, &Word::empty(), a.delta, &seed, budget)?;
    let mut buf = Vec::new();
    formats::write_cloud(&mut buf, &cloud).map_err(|e| CliError::io(&out, e))?;
    emit_file(g, &out, &buf, &manifest("gen", g, a))
}

fn count(g: &Global, a: &CountArgs) -> Result<(), CliError> {
    let out = required_out(g, "count")?;
    let cloud = load_cloud(&a.cloud)?;
    let grid = ScaleGrid::new(a.emax, a.emin, a.ppd)?;
    let curve = counting_curve(&cloud, a.function, a.mode.into(), grid)?;
    let s = match a.s {
        Some(s) => s,
        None => dimension_fit(&curve)?.s_hat,
    };
    let mut buf = Vec::new();
    formats::write_curve(&mut buf, &curve, s).map_err(|e| CliError::format(&out, e))?;
    emit_file(g, &out, &buf, &manifest("count", g, a))
}

fn load_curve(path: &Path) -> Result<(ahlfors_core::asymptotics::CountingCurve, f64), CliError> {
    let f = fs::File::open(path).map_err(|e| CliError::io(path, e))?;
    formats::read_curve(f).map_err(|e| CliError::format(path, e))
}

fn dim(g: &Global, a: &DimArgs) -> Result<(), CliError> {
    let (curve, _) = load_curve(&a.curve)?;
    let m = manifest("dim", g, a);
    let mut doc = FitDoc::from(&dimension_fit(&curve)?);
    doc.manifest = Some(m.clone());
    emit_report(g, &doc, &m)
}

fn limit(g: &Global, a: &LimitArgs) -> Result<(), CliError> {
    let (curve, s_col) = load_curve(&a.curve)?;
    let config = LimitConfig {
        converging_amplitude: a.converging_amplitude,
        oscillating_amplitude: a.oscillating_amplitude,
        peak_to_median: a.peak_to_median,
        window_decades: a.window_decades,
    };
    let diag = limit_diagnostic(&curve, a.s.unwrap_or(s_col), &config);
    let m = manifest("limit", g, a);
    let mut doc = DiagnosticDoc::from(&diag);
    doc.manifest = Some(m.clone());
    emit_report(g, &doc, &m)
}

fn tree_build(g: &Global, a: &TreeBuildArgs) -> Result<(), CliError> {
    let out = required_out(g, "tree build")?;
    let tree = match a.mode {
        BuildMode::Ifs => {
            let ifs = load_system(a.ifs.as_deref().expect("required by clap"))?.ifs()?;
            tree_from_ifs(&ifs, a.x0.as_deref().expect("required by clap"), a.depth)?
        }
        BuildMode::Packing => {
            let cloud = load_cloud(a.cloud.as_deref().expect("required by clap"))?;
            tree_from_packing(
                &cloud,
                a.weights.as_deref(),
                a.delta.expect("required by clap"),
                a.s.expect("required by clap"),
                a.depth,
            )?
        }
    };
    let m = manifest("tree build", g, a);
    let mut report = TreeReportDoc::from(&verify_axioms(&tree));
    report.manifest = Some(m.clone());
    emit_file(g, &out, formats::tree_to_string(&tree).as_bytes(), &m)?;
    match &a.report {
        Some(p) => write_bytes(p, to_json(&report).as_bytes()),
        None => {
            print!("{}", to_json(&report));
            Ok(())
        }
    }
}

fn tree_verify(g: &Global, a: &TreeVerifyArgs) -> Result<(), CliError> {
    let tree = load_tree(&a.tree)?;
    let m = manifest("tree verify", g, a);
    let mut report = TreeReportDoc::from(&verify_axioms(&tree));
    report.manifest = Some(m.clone());
    emit_report(g, &report, &m)
}

fn tree_power(g: &Global, a: &TreePowerArgs) -> Result<(), CliError> {
    let out = required_out(g, "tree power")?;
    let tree = power_tree(&load_tree(&a.tree)?, a.m as usize)?;
    emit_file(
        g,
        &out,
        formats::tree_to_string(&tree).as_bytes(),
        &manifest("tree power", g, a),
    )
}

fn tree_prune(g: &Global, a: &TreePruneArgs) -> Result<(), CliError> {
    let tree = load_tree(&a.tree)?;
    let start: Word = a.start.parse()?;
    let mut choice = |w: &Word| -> u32 {
        let children = tree.children(w);
        let pick = match a.choice {
            Choice::First => children.first(),
            Choice::Last => children.last(),
            Choice::Cycle => children.get(w.len() % children.len().max(1)),
        };
        pick.copied().unwrap_or(u32::MAX)
    };
    let mass = pruned_mass(&tree, &mut choice, &start, a.m)?;
    let bound = pruned_mass_bound(&tree, &start, a.m)?;
    let m = manifest("tree prune", g, a);
    let doc = PruneDoc {
        start: start.to_label(),
        m: a.m,
        choice: format!("{:?}", a.choice).to_lowercase(),
        mass,
        bound,
        within_bound: mass <= bound * (1.0 + 1e-12),
        manifest: Some(m.clone()),
    };
    emit_report(g, &doc, &m)
}

fn renewal(g: &Global, a: &RenewalArgs) -> Result<(), CliError> {
    if !(a.amin >= 0.0 && a.amin < a.amax) {
        return Err(CliError::Usage(format!(
            "need 0 ≤ amin < amax, got {} and {}",
            a.amin, a.amax
        )));
    }
    if a.points < 2 {
        return Err(CliError::Usage("renewal grid needs at least 2 points".into()));
    }
    let (shift, f) = load_system(&a.system)?.symbolic()?;
    let delta = match a.delta {
        Some(d) => d,
        None => bowen_root(&shift, &f)?,
    };
    let spec = match (&a.anchor, a.kernel_rate) {
        (None, None) => RenewalSpec::counting(shift, f)?,
        (anchor, rate) => {
            let anchor = match anchor {
                Some(w) => w.parse::<Word>()?,
                None => shift
                    .admissible_words(f.depth())
                    .into_iter()
                    .next()
                    .expect("primitive shifts have admissible words"),
            };
            let kernel = rate.map_or(Kernel::Unit, |rate| Kernel::Exponential { rate });
            let unit = LocallyConstantPotential::constant(&shift, 1.0)?;
            RenewalSpec::new(shift, f, unit, kernel, anchor)?
        }
    };
    let spec = spec.with_node_budget(g.budget_nodes.unwrap_or(DEFAULT_NODE_BUDGET));
    let step = (a.amax - a.amin) / (a.points - 1) as f64;
    let grid: Vec<f64> = (0..a.points)
        .map(|i| if i + 1 == a.points { a.amax } else { a.amin + step * i as f64 })
        .collect();
    let series = renewal_convergence_series(&spec, &grid, delta)?;
    let m = manifest("renewal", g, a);
    let mut doc = RenewalDoc::from(&series);
    doc.manifest = Some(m.clone());
    emit_report(g, &doc, &m)
}

fn transform(g: &Global, a: &TransformArgs) -> Result<(), CliError> {
    let out = required_out(g, "transform")?;
    let cloud = load_cloud(&a.cloud)?;
    let map = load_system(&a.map)?.map()?;
    let image = apply_map(&map, &cloud, a.margin)?;
    let mut buf = Vec::new();
    formats::write_cloud(&mut buf, &image).map_err(|e| CliError::io(&out, e))?;
    emit_file(g, &out, &buf, &manifest("transform", g, a))
}

fn axioms(g: &Global, a: &AxiomsArgs) -> Result<(), CliError> {
    let clouds = a
        .cloud
        .iter()
        .map(|p| load_cloud(p))
        .collect::<Result<Vec<_>, _>>()?;
    let mut spec = CountingFunctionSpec::new(a.function);
    if let Some(b) = a.comparability {
        spec = spec.with_comparability(b);
    }
    let report = axiom_suite(spec, &clouds, &a.eps, a.mode.into())?;
    let m = manifest("axioms", g, a);
    let mut doc = SuiteDoc::from(&report);
    doc.manifest = Some(m.clone());
    emit_report(g, &doc, &m)
}
