//! JSON reports. Each carries the manifest of the run that produced it.

use ahlfors_core::asymptotics::{DimensionFit, LimitConfig, LimitDiagnostic, PeriodScan};
use ahlfors_core::counting::{mode_name, Axiom, AxiomSuiteReport};
use ahlfors_core::geometry::{OscCheckKind, OscReport, OscStatus};
use ahlfors_core::stree::{AxiomReport, MeasuredConstants};
use ahlfors_core::symbolic::RenewalSeries;
use serde::{Deserialize, Serialize};

use crate::manifest::Manifest;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub converging_amplitude: f64,
    pub oscillating_amplitude: f64,
    pub peak_to_median: f64,
    pub window_decades: f64,
}

impl From<LimitConfig> for ConfigDoc {
    fn from(c: LimitConfig) -> Self {
        ConfigDoc {
            converging_amplitude: c.converging_amplitude,
            oscillating_amplitude: c.oscillating_amplitude,
            peak_to_median: c.peak_to_median,
            window_decades: c.window_decades,
        }
    }
}

impl From<ConfigDoc> for LimitConfig {
    fn from(c: ConfigDoc) -> Self {
        LimitConfig {
            converging_amplitude: c.converging_amplitude,
            oscillating_amplitude: c.oscillating_amplitude,
            peak_to_median: c.peak_to_median,
            window_decades: c.window_decades,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanDoc {
    pub period: f64,
    pub power: f64,
    pub median_power: f64,
    pub interior: bool,
    pub min_period: f64,
    pub max_period: f64,
}

impl From<&PeriodScan> for ScanDoc {
    fn from(p: &PeriodScan) -> Self {
        ScanDoc {
            period: p.period,
            power: p.power,
            median_power: p.median_power,
            interior: p.interior,
            min_period: p.min_period,
            max_period: p.max_period,
        }
    }
}

/// The limit diagnostic of `ε^s·N(ε)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiagnosticDoc {
    pub s: f64,
    pub mean: f64,
    pub amplitude: f64,
    pub period: Option<f64>,
    pub verdict: String,
    pub window: [f64; 2],
    pub window_points: usize,
    pub scan: Option<ScanDoc>,
    pub config: ConfigDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<Manifest>,
}

impl From<&LimitDiagnostic> for DiagnosticDoc {
    fn from(d: &LimitDiagnostic) -> Self {
        DiagnosticDoc {
            s: d.s,
            mean: d.mean,
            amplitude: d.amplitude,
            period: d.period,
            verdict: d.verdict.name().into(),
            window: [d.window.0, d.window.1],
            window_points: d.window_points,
            scan: d.scan.as_ref().map(ScanDoc::from),
            config: d.config.into(),
            manifest: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitDoc {
    pub s_hat: f64,
    pub stderr: f64,
    pub points: usize,
    pub decades: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<Manifest>,
}

impl From<&DimensionFit> for FitDoc {
    fn from(f: &DimensionFit) -> Self {
        FitDoc {
            s_hat: f.s_hat,
            stderr: f.stderr,
            points: f.points,
            decades: f.decades,
            manifest: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeAxiomDoc {
    pub axiom: String,
    pub passed: bool,
    pub measured: f64,
    pub witness: Option<[String; 2]>,
    pub note: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasuredDoc {
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub rho: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    #[serde(rename = "E")]
    pub e: f64,
    pub mass_defect: f64,
    pub deepest_radius: f64,
}

impl From<MeasuredConstants> for MeasuredDoc {
    fn from(m: MeasuredConstants) -> Self {
        MeasuredDoc {
            c: m.c,
            d: m.d,
            rho: m.rho,
            big_r: m.big_r,
            e: m.e,
            mass_defect: m.mass_defect,
            deepest_radius: m.deepest_radius,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TreeReportDoc {
    /// `(T1)`–`(T5)` with exact mass conservation.
    pub tree_axioms: bool,
    /// The same with `(T'3)` in place of `(T3)`.
    pub tree_axioms_relaxed: bool,
    pub axioms: Vec<TreeAxiomDoc>,
    pub measured: MeasuredDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<Manifest>,
}

impl From<&AxiomReport> for TreeReportDoc {
    fn from(r: &AxiomReport) -> Self {
        TreeReportDoc {
            tree_axioms: r.tree_axioms_pass(false),
            tree_axioms_relaxed: r.tree_axioms_pass(true),
            axioms: r
                .entries
                .iter()
                .map(|e| TreeAxiomDoc {
                    axiom: e.axiom.name().into(),
                    passed: e.passed,
                    measured: e.measured,
                    witness: e.witness.as_ref().map(|(a, b)| [a.to_label(), b.to_label()]),
                    note: e.note.clone(),
                })
                .collect(),
            measured: r.measured.into(),
            manifest: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationDoc {
    pub axiom: String,
    pub cloud: usize,
    pub eps: f64,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxiomCheckDoc {
    pub axiom: String,
    pub checks: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteDoc {
    pub function: String,
    pub mode: String,
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "G")]
    pub g: f64,
    pub measured_b: Option<f64>,
    pub axioms: Vec<AxiomCheckDoc>,
    pub violations: Vec<ViolationDoc>,
    pub all_passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<Manifest>,
}

fn axiom_name(a: Axiom) -> String {
    format!("{a:?}")
}

impl From<&AxiomSuiteReport> for SuiteDoc {
    fn from(r: &AxiomSuiteReport) -> Self {
        SuiteDoc {
            function: r.spec.kind.name().into(),
            mode: mode_name(r.mode).into(),
            a: r.spec.a,
            b: r.spec.b,
            g: r.spec.g,
            measured_b: r.measured_b,
            axioms: Axiom::ALL
                .iter()
                .map(|&a| AxiomCheckDoc {
                    axiom: axiom_name(a),
                    checks: r.checks[a.index()],
                    passed: r.passed(a),
                })
                .collect(),
            violations: r
                .violations
                .iter()
                .map(|v| ViolationDoc {
                    axiom: axiom_name(v.axiom),
                    cloud: v.cloud,
                    eps: v.eps,
                    detail: v.detail.clone(),
                })
                .collect(),
            all_passed: r.all_passed(),
            manifest: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RenewalDoc {
    pub delta: f64,
    /// `(a, e^{−aδ}·N(a))`.
    pub points: Vec<[f64; 2]>,
    pub window: Option<[f64; 2]>,
    pub relative_variation: Option<f64>,
    pub period: Option<f64>,
    pub scan: Option<ScanDoc>,
    pub nodes: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<Manifest>,
}

impl From<&RenewalSeries> for RenewalDoc {
    fn from(r: &RenewalSeries) -> Self {
        RenewalDoc {
            delta: r.delta,
            points: r.points.iter().map(|&(a, v)| [a, v]).collect(),
            window: r.window.map(|(a, b)| [a, b]),
            relative_variation: r.relative_variation,
            period: r.period,
            scan: r.spectrum.as_ref().map(ScanDoc::from),
            nodes: r.nodes,
            manifest: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscCheckDoc {
    pub check: String,
    pub margin: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OscDoc {
    pub status: String,
    pub detail: Option<String>,
    pub checks: Vec<OscCheckDoc>,
}

fn check_name(k: &OscCheckKind) -> String {
    match k {
        OscCheckKind::Containment { map, primitive } => {
            format!("map {map} sends primitive {primitive} into U")
        }
        OscCheckKind::Disjointness { i, j } => format!("images of U under maps {i} and {j} are disjoint"),
    }
}

impl From<&OscReport> for OscDoc {
    fn from(r: &OscReport) -> Self {
        let (status, detail) = match &r.status {
            OscStatus::Certified => ("certified", None),
            OscStatus::Violated(k) => ("violated", Some(format!("failed check: {}", check_name(k)))),
            OscStatus::NotCertifiable(why) => ("not-certifiable", Some(why.clone())),
        };
        OscDoc {
            status: status.into(),
            detail,
            checks: r
                .checks
                .iter()
                .map(|c| OscCheckDoc {
                    check: check_name(&c.kind),
                    margin: c.margin,
                    passed: c.passed,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PruneDoc {
    pub start: String,
    pub m: usize,
    pub choice: String,
    pub mass: f64,
    pub bound: f64,
    pub within_bound: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub manifest: Option<Manifest>,
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}
