//! Input documents, job orchestration, and machine-readable output.
//!
//! One self-describing JSON document per geometry: a polytope vertex list,
//! an optional fan, a boundary coefficient map keyed by ray, and an optional
//! sampled metric profile. Exact rationals travel as "p/q" strings. Reports
//! are deterministic for a fixed job spec and tolerance.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bergman::{
    bergman_density, bergman_geodesic, energy_sandwich_sweep, hilbert_form, max_principle_check,
    partition_identity_check, quantized_energy, DensityReport, SandwichReport,
};
use crate::catalog;
use crate::energy::{
    entropy_probe, mt_probe, EntropyProbeResult, MtProbeReport, RayDirection, RayParams,
    ThetaWeights,
};
use crate::error::{Error, Result};
use crate::fan::FanData;
use crate::pair::PolarizedToricPair;
use crate::polytope::LatticePolytope;
use crate::quad::QuadratureScheme;
use crate::radial::{metric_from_samples, RadialMetric};
use crate::rat::{parse_rat, rat_str, to_f64, Rat};
use crate::thresholds::{
    alpha_threshold, csck_criterion, delta_threshold, nef_threshold, slope_mu, stability_report,
    CsckCriterion, DeltaMode, NefThreshold, StabilityReport, ThresholdReport,
};

pub const SCHEMA_VERSION: &str = "1.0";

/// On-disk input document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InputDoc {
    pub schema_version: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polytope: Option<PolytopeDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fan: Option<FanDoc>,
    /// Ray -> coefficient map, rays as comma-separated integers.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BTreeMap<String, String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metric_profile: Option<ProfileDoc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct PolytopeDoc {
    pub dimension: usize,
    /// Vertices as exact rational strings.
    pub vertices: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct FanDoc {
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ProfileDoc {
    pub degree: u32,
    /// Sampled (x, phi(x)) pairs with strictly increasing x.
    pub points: Vec<(f64, f64)>,
    /// Asymptotic constants (at -infinity, at +infinity).
    pub asymptotics: (f64, f64),
}

/// Parsed objects of one input source.
#[derive(Debug, Clone)]
pub struct ParsedInput {
    pub label: String,
    pub pair: Option<PolarizedToricPair>,
    pub metric: Option<RadialMetric>,
    pub profile_name: Option<String>,
}

/// Parses a catalog key or a JSON document path.
pub fn parse_input(source: &str) -> Result<ParsedInput> {
    if Path::new(source).exists() {
        let text = std::fs::read_to_string(source)?;
        let doc: InputDoc = serde_json::from_str(&text)
            .map_err(|e| Error::InvalidInput(format!("malformed input document: {e}")))?;
        return build_from_doc(source, &doc);
    }
    let (pair_key, profile_key) = catalog::split_key(source);
    if pair_key.is_empty() && profile_key.is_none() {
        return Err(Error::InvalidInput(format!(
            "input {source:?} is neither a file nor a catalog key"
        )));
    }
    let pair = if pair_key.is_empty() {
        None
    } else {
        Some(catalog::pair(&pair_key)?)
    };
    let metric = match (&profile_key, &pair) {
        (Some(name), Some(p)) => Some(catalog::profile(name, catalog::line_degree(p)?)?),
        (Some(name), None) => Some(catalog::profile(name, 1)?),
        (None, _) => None,
    };
    Ok(ParsedInput {
        label: source.to_string(),
        pair,
        metric,
        profile_name: profile_key,
    })
}

fn build_from_doc(label: &str, doc: &InputDoc) -> Result<ParsedInput> {
    if doc.schema_version != 1 {
        return Err(Error::InvalidInput(format!(
            "unsupported schema_version {}",
            doc.schema_version
        )));
    }
    let pair = match &doc.polytope {
        None => None,
        Some(p) => {
            let vertices: Vec<Vec<Rat>> = p
                .vertices
                .iter()
                .map(|v| v.iter().map(|s| parse_rat(s)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()?;
            let polytope = LatticePolytope::from_points(p.dimension, vertices)?;
            let fan = match &doc.fan {
                None => None,
                Some(f) => Some(FanData::new(
                    p.dimension,
                    f.rays.clone(),
                    f.max_cones.clone(),
                )?),
            };
            let boundary: Vec<(Vec<i64>, Rat)> = match &doc.boundary {
                None => vec![],
                Some(map) => map
                    .iter()
                    .map(|(ray, coeff)| {
                        let ray = ray
                            .split(',')
                            .map(|t| {
                                t.trim().parse::<i64>().map_err(|_| {
                                    Error::InvalidInput(format!("bad ray key {ray:?}"))
                                })
                            })
                            .collect::<Result<Vec<i64>>>()?;
                        Ok((ray, parse_rat(coeff)?))
                    })
                    .collect::<Result<Vec<_>>>()?,
            };
            Some(PolarizedToricPair::new(polytope, fan, &boundary)?)
        }
    };
    let metric = match &doc.metric_profile {
        None => None,
        Some(m) => Some(metric_from_samples(
            m.degree,
            &m.points,
            m.asymptotics.0,
            m.asymptotics.1,
        )?),
    };
    if pair.is_none() && metric.is_none() {
        return Err(Error::InvalidInput(
            "input document carries neither a polytope nor a metric profile".into(),
        ));
    }
    Ok(ParsedInput {
        label: label.to_string(),
        pair,
        metric,
        profile_name: None,
    })
}

/// Serializes a pair back into the input document shape.
pub fn serialize_pair(pair: &PolarizedToricPair) -> InputDoc {
    let polytope = PolytopeDoc {
        dimension: pair.dim(),
        vertices: pair
            .polytope()
            .vertices()
            .iter()
            .map(|v| v.iter().map(rat_str).collect())
            .collect(),
    };
    let fan = FanDoc {
        rays: pair.fan().rays().to_vec(),
        max_cones: pair.fan().max_cones().to_vec(),
    };
    let boundary: BTreeMap<String, String> = pair
        .fan()
        .rays()
        .iter()
        .zip(pair.boundary())
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(ray, c)| {
            (
                ray.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(","),
                rat_str(c),
            )
        })
        .collect();
    InputDoc {
        schema_version: 1,
        polytope: Some(polytope),
        fan: Some(fan),
        boundary: if boundary.is_empty() {
            None
        } else {
            Some(boundary)
        },
        metric_profile: None,
    }
}

/// Parses a pair from a serialized document, for round trips.
pub fn pair_from_doc(doc: &InputDoc) -> Result<PolarizedToricPair> {
    build_from_doc("<doc>", doc)?
        .pair
        .ok_or_else(|| Error::InvalidInput("document has no polytope".into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Invariants,
    Quantize,
    Probe,
    Convergence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

/// A batch job: input, task, and task parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JobSpec {
    pub input: String,
    pub task: Task,
    pub m_range: Vec<u32>,
    pub epsilon: Option<f64>,
    pub lambda_grid: Option<Vec<f64>>,
    pub s_max: f64,
    pub tolerance: f64,
    pub format: OutputFormat,
}

impl JobSpec {
    pub fn new(input: &str, task: Task) -> Self {
        Self {
            input: input.to_string(),
            task,
            m_range: (1..=8).collect(),
            epsilon: None,
            lambda_grid: None,
            s_max: 40.0,
            tolerance: 1e-9,
            format: OutputFormat::Json,
        }
    }

    fn validate(&self) -> Result<()> {
        if !self.tolerance.is_finite() || self.tolerance <= 0.0 {
            return Err(Error::InvalidInput("tolerance must be positive".into()));
        }
        if self.m_range.is_empty() || self.m_range.contains(&0) {
            return Err(Error::InvalidInput(
                "m range must be nonempty and positive".into(),
            ));
        }
        if let Some(eps) = self.epsilon {
            if !(0.0 < eps && eps < 1.0) {
                return Err(Error::InvalidInput("epsilon must lie in (0, 1)".into()));
            }
        }
        if self.task == Task::Probe {
            if let Some(grid) = &self.lambda_grid {
                if grid.is_empty() || grid.iter().any(|&l| l <= 0.0) {
                    return Err(Error::InvalidInput(
                        "probe exponent grid must be positive".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn scheme(&self) -> QuadratureScheme {
        QuadratureScheme::default().with_tolerance(self.tolerance.min(1e-10))
    }
}

/// Report payloads, one per task.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
#[allow(clippy::large_enum_variant)]
pub enum Report {
    Invariants(InvariantsReport),
    Convergence(StabilityReport),
    Quantize(QuantizeReport),
    Probe(ProbeReport),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub dimension: usize,
    /// Normalized volume of the polarization, exact.
    pub volume: String,
    pub delta: ThresholdReport,
    pub alpha: ThresholdReport,
    pub ding_stable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nef_threshold: Option<NefThreshold>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csck: Option<CsckCriterion>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub csck_note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QuantizeReport {
    pub degree: u32,
    pub profile: String,
    /// (level, relative residual of the section-count identity).
    pub partition: Vec<(u32, f64)>,
    pub density: Vec<DensityReport>,
    /// Max deviation of the quantized energy from its chord along the
    /// geodesic of forms toward the reference, over 11 times per level.
    pub energy_linearity: Vec<(u32, f64)>,
    /// Min entrywise margins of the maximum principle against the zero
    /// profile per level (absent when the profile is the reference).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_principle: Option<Vec<(u32, f64)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<SandwichReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeReport {
    pub degree: u32,
    pub theta: ThetaWeights,
    pub mt: MtProbeReport,
    pub entropy: Vec<EntropyProbeResult>,
}

/// Envelope of any report, versioned and echoing the spec.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Envelope {
    pub schema_version: String,
    pub task: Task,
    pub input: String,
    pub tolerance: f64,
    pub report: Report,
}

/// Job outcome: the report plus the process exit code (0 success, 1
/// inconclusive probe, 2 invalid input handled by the caller).
#[derive(Debug, Clone)]
pub struct JobOutcome {
    pub envelope: Envelope,
    pub exit_code: i32,
}

pub fn run_job(spec: &JobSpec) -> Result<JobOutcome> {
    spec.validate()?;
    let parsed = parse_input(&spec.input)?;
    let mut exit_code = 0;
    let report = match spec.task {
        Task::Invariants => Report::Invariants(run_invariants(&parsed)?),
        Task::Convergence => {
            let pair = require_pair(&parsed)?;
            Report::Convergence(stability_report(pair, &spec.m_range)?)
        }
        Task::Quantize => Report::Quantize(run_quantize(spec, &parsed)?),
        Task::Probe => {
            let probe = run_probe(spec, &parsed)?;
            if probe.mt.inconclusive {
                exit_code = 1;
            }
            Report::Probe(probe)
        }
    };
    Ok(JobOutcome {
        envelope: Envelope {
            schema_version: SCHEMA_VERSION.to_string(),
            task: spec.task,
            input: parsed.label,
            tolerance: spec.tolerance,
            report,
        },
        exit_code,
    })
}

fn require_pair(parsed: &ParsedInput) -> Result<&PolarizedToricPair> {
    parsed
        .pair
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("task requires a polarized pair".into()))
}

fn run_invariants(parsed: &ParsedInput) -> Result<InvariantsReport> {
    let pair = require_pair(parsed)?;
    let delta = delta_threshold(pair, DeltaMode::Limit)?;
    let alpha = alpha_threshold(pair)?;
    let ding_stable = delta.value > Rat::from_integer(1.into());
    let smooth = pair.fan().is_smooth();
    let (mu, nef) = if smooth {
        (Some(rat_str(&slope_mu(pair)?)), Some(nef_threshold(pair)?))
    } else {
        (None, None)
    };
    let (csck, csck_note) = if !smooth {
        (None, Some("fan is not smooth".to_string()))
    } else if !pair.is_untwisted() {
        (None, Some("criterion defined for theta=0".to_string()))
    } else {
        (Some(csck_criterion(pair)?), None)
    };
    Ok(InvariantsReport {
        dimension: pair.dim(),
        volume: rat_str(&pair.polytope().normalized_volume()),
        delta,
        alpha,
        ding_stable,
        mu,
        nef_threshold: nef,
        csck,
        csck_note,
    })
}

fn run_quantize(spec: &JobSpec, parsed: &ParsedInput) -> Result<QuantizeReport> {
    let metric = parsed
        .metric
        .as_ref()
        .ok_or_else(|| Error::InvalidInput("quantize requires a metric profile".into()))?;
    let scheme = spec.scheme();
    let degree = metric.degree();
    let zero = RadialMetric::zero(degree);
    let is_reference = parsed.profile_name.as_deref() == Some("zero");

    let mut partition = Vec::new();
    let mut density = Vec::new();
    let mut energy_linearity = Vec::new();
    let mut max_principle = Vec::new();
    for &m in &spec.m_range {
        partition.push((m, partition_identity_check(metric, m, &scheme)?));
        density.push(bergman_density(metric, m, &scheme)?);

        let h0 = hilbert_form(&zero, m, &scheme)?;
        let h1 = hilbert_form(metric, m, &scheme)?;
        let e_ref = |h: &crate::bergman::HermitianForm| -> Result<f64> {
            quantized_energy(&crate::bergman::fubini_study(h)?, &h0)
        };
        let (e0, e1) = (e_ref(&h0)?, e_ref(&h1)?);
        let mut worst = 0.0_f64;
        for k in 0..=10 {
            let t = k as f64 / 10.0;
            let ht = bergman_geodesic(&h0, &h1, t)?;
            let chord = (1.0 - t) * e0 + t * e1;
            worst = worst.max((e_ref(&ht)? - chord).abs());
        }
        energy_linearity.push((m, worst));

        if !is_reference {
            let t_grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
            let mp = max_principle_check(&zero, metric, m, &t_grid, &scheme)?;
            max_principle.push((m, mp.min_margin));
        }
    }
    let sandwich = match spec.epsilon {
        None => None,
        Some(eps) => Some(energy_sandwich_sweep(
            metric,
            eps,
            &spec.m_range,
            &scheme,
            spec.tolerance.max(1e-9),
        )?),
    };
    Ok(QuantizeReport {
        degree,
        profile: parsed
            .profile_name
            .clone()
            .unwrap_or_else(|| "custom".to_string()),
        partition,
        density,
        energy_linearity,
        max_principle: if is_reference {
            None
        } else {
            Some(max_principle)
        },
        sandwich,
    })
}

fn run_probe(spec: &JobSpec, parsed: &ParsedInput) -> Result<ProbeReport> {
    let pair = require_pair(parsed)?;
    let degree = catalog::line_degree(pair)?;
    let theta = ThetaWeights::from_pair(pair)?;
    let rays = [
        RayParams::probe_default(degree, RayDirection::TowardZero),
        RayParams::probe_default(degree, RayDirection::TowardInfinity),
    ];
    let grid = match &spec.lambda_grid {
        Some(g) => g.clone(),
        None => {
            let min_ref = rays
                .iter()
                .map(|r| r.reference_ratio(degree, &theta))
                .fold(f64::INFINITY, f64::min);
            (1..=10).map(|k| 2.0 * min_ref * k as f64 / 10.0).collect()
        }
    };
    let scheme = spec.scheme();
    let mt = mt_probe(pair, &rays, &grid, spec.s_max, &scheme)?;
    let s_grid: Vec<f64> = [1.5, 2.25, 3.0, 4.0, 5.0]
        .iter()
        .map(|f| f * spec.s_max)
        .collect();
    let entropy = rays
        .iter()
        .map(|&r| entropy_probe(pair, r, &s_grid, &scheme))
        .collect::<Result<Vec<_>>>()?;
    Ok(ProbeReport {
        degree,
        theta,
        mt,
        entropy,
    })
}

/// One CSV series extracted from a report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvSeries {
    pub name: String,
    pub header: String,
    pub rows: Vec<String>,
}

impl CsvSeries {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        out
    }
}

/// Tabular series of a report, one CSV per series; exact rationals are
/// rendered as decimals here, headers document the columns.
pub fn emit_plot_data(envelope: &Envelope) -> Vec<CsvSeries> {
    let mut series = Vec::new();
    match &envelope.report {
        Report::Invariants(r) => {
            let rows = r
                .delta
                .candidates
                .iter()
                .map(|c| {
                    format!(
                        "\"{:?}\",{},{},{}",
                        c.xi,
                        to_f64(&c.log_discrepancy),
                        to_f64(&c.denominator),
                        to_f64(&c.ratio)
                    )
                })
                .collect();
            series.push(CsvSeries {
                name: "delta_candidates".into(),
                header: "xi,log_discrepancy,denominator,ratio".into(),
                rows,
            });
        }
        Report::Convergence(r) => {
            let rows = r
                .delta_m
                .iter()
                .map(|(m, v)| {
                    let val = parse_rat(v).map(|r| to_f64(&r)).unwrap_or(f64::NAN);
                    format!("{m},{val}")
                })
                .collect();
            series.push(CsvSeries {
                name: "delta_m".into(),
                header: "m,delta_m".into(),
                rows,
            });
        }
        Report::Quantize(r) => {
            series.push(CsvSeries {
                name: "partition_residual".into(),
                header: "m,residual".into(),
                rows: r
                    .partition
                    .iter()
                    .map(|(m, v)| format!("{m},{v}"))
                    .collect(),
            });
            series.push(CsvSeries {
                name: "density".into(),
                header: "m,sup_deviation,mass_residual".into(),
                rows: r
                    .density
                    .iter()
                    .map(|d| format!("{},{},{}", d.m, d.sup_deviation, d.mass_residual))
                    .collect(),
            });
            if let Some(mp) = &r.max_principle {
                series.push(CsvSeries {
                    name: "max_principle_margin".into(),
                    header: "m,min_margin".into(),
                    rows: mp.iter().map(|(m, v)| format!("{m},{v}")).collect(),
                });
            }
            if let Some(s) = &r.sandwich {
                series.push(CsvSeries {
                    name: "sandwich_margins".into(),
                    header: "m,lower_margin".into(),
                    rows: s
                        .margins
                        .iter()
                        .map(|m| format!("{},{}", m.m, m.lower))
                        .collect(),
                });
                series.push(CsvSeries {
                    name: "sandwich_upper_margins".into(),
                    header: "m,upper_margin".into(),
                    rows: s
                        .margins
                        .iter()
                        .map(|m| format!("{},{}", m.m, m.upper))
                        .collect(),
                });
            }
        }
        Report::Probe(r) => {
            for ray in &r.mt.rays {
                let tag = match ray.params.direction {
                    RayDirection::TowardZero => "toward_zero",
                    RayDirection::TowardInfinity => "toward_infinity",
                };
                series.push(CsvSeries {
                    name: format!("mt_slopes_{tag}"),
                    header: "lambda,slope".into(),
                    rows: ray
                        .slopes
                        .iter()
                        .map(|s| format!("{},{}", s.lambda, s.slope))
                        .collect(),
                });
            }
            for e in &r.entropy {
                let tag = match e.params.direction {
                    RayDirection::TowardZero => "toward_zero",
                    RayDirection::TowardInfinity => "toward_infinity",
                };
                series.push(CsvSeries {
                    name: format!("entropy_ratio_{tag}"),
                    header: "s,ratio".into(),
                    rows: e.ratios.iter().map(|(s, v)| format!("{s},{v}")).collect(),
                });
            }
        }
    }
    series
}

/// Renders the outcome in the requested format.
pub fn render(spec: &JobSpec, outcome: &JobOutcome) -> Result<String> {
    match spec.format {
        OutputFormat::Json => Ok(format!(
            "{}\n",
            serde_json::to_string_pretty(&outcome.envelope)?
        )),
        OutputFormat::Csv => {
            let mut out = String::new();
            for s in emit_plot_data(&outcome.envelope) {
                out.push_str(&format!("# series: {}\n", s.name));
                out.push_str(&s.to_csv());
            }
            Ok(out)
        }
    }
}
