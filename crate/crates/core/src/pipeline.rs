//! Configuration and end-to-end orchestration:
//! closure → stabilizer check → fundamental fields → Lagrangian certificate
//! → induced metric → Laplacian decomposition → certified λ₁ search →
//! stability verdict.

use crate::exactnum::{CycMatrix, CycNum, ExactError, Rational};
use crate::isotropy::{
    close_generators, projective_stabilizer_check, IsotropyError, DEFAULT_CLOSURE_CAP,
};
use crate::orbitgeo::{
    induced_gram, lagrangian_check, laplace_decomposition, standard_frame, GeometryError,
    MetricModel, HOLOMORPHIC_SECTIONAL_CURVATURE,
};
use crate::report::{ConfigEcho, FullReport};
use crate::spectrum::{
    lambda1_search, stability_verdict, SearchOptions, SpectrumError, StabilityReport,
};
use crate::su2rep::{BinaryForm, GroupElement, RepError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

impl OutputFormat {
    pub fn as_str(&self) -> &'static str {
        match self {
            OutputFormat::Text => "text",
            OutputFormat::Json => "json",
        }
    }
}

impl std::str::FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format `{}` (expected text|json)", other)),
        }
    }
}

/// Inputs of a run. Defaults reproduce the reference configuration:
/// curvature 4, form z₁³ + z₂³, generators a and b, Hermitian scale 1/2.
#[derive(Clone)]
pub struct RunConfig {
    pub curvature: Rational,
    pub form: BinaryForm,
    pub generators: Vec<CycMatrix>,
    pub u: Rational,
    pub max_k: Option<usize>,
    pub format: OutputFormat,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            curvature: Rational::from_int(HOLOMORPHIC_SECTIONAL_CURVATURE),
            form: BinaryForm::cubic_basepoint(),
            generators: vec![
                GroupElement::generator_a().matrix().clone(),
                GroupElement::generator_b().matrix().clone(),
            ],
            u: Rational::new(1, 2),
            max_k: None,
            format: OutputFormat::Text,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("Lagrangian certificate failed: rank {rank}, failing pair {failing_pair:?}")]
    NotLagrangian {
        rank: usize,
        failing_pair: Option<(usize, usize)>,
    },
    #[error(transparent)]
    Isotropy(#[from] IsotropyError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Spectrum(#[from] SpectrumError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl PipelineError {
    /// 1 for configuration problems, 2 for internal invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 1,
            _ => 2,
        }
    }
}

impl RunConfig {
    /// Validates the config invariants: curvature > 0, u > 0, nonzero cubic
    /// form, special-unitary generators.
    pub fn validate(&self) -> Result<Vec<GroupElement>, PipelineError> {
        if !self.curvature.is_positive() {
            return Err(PipelineError::Config(format!(
                "curvature must be positive, got {}",
                self.curvature
            )));
        }
        if !self.u.is_positive() {
            return Err(PipelineError::Config(format!(
                "Hermitian scale u must be positive, got {}",
                self.u
            )));
        }
        if self.form.is_zero() {
            return Err(PipelineError::Config("form must be nonzero".into()));
        }
        if self.form.degree() != 3 {
            return Err(PipelineError::Config(format!(
                "form must be a cubic (4 coefficients), got degree {}",
                self.form.degree()
            )));
        }
        if self.generators.is_empty() {
            return Err(PipelineError::Config(
                "at least one generator required".into(),
            ));
        }
        self.generators
            .iter()
            .map(|m| {
                GroupElement::new(m.clone()).map_err(|e: RepError| {
                    PipelineError::Config(format!("generator is not special unitary: {}", e))
                })
            })
            .collect()
    }

    fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            curvature: self.curvature.clone(),
            form: self.form.coeffs().iter().map(CycNum::to_string).collect(),
            generators: self
                .generators
                .iter()
                .map(|m| {
                    (0..2)
                        .map(|i| (0..2).map(|j| m[(i, j)].to_string()).collect())
                        .collect()
                })
                .collect(),
            u: self.u.clone(),
            max_k: self.max_k,
            format: self.format.as_str().to_string(),
        }
    }
}

/// Runs the whole computation and assembles the serializable report.
pub fn run_pipeline(cfg: &RunConfig) -> Result<FullReport, PipelineError> {
    let report = run_stability(cfg)?;
    let notes = collect_notes(cfg, &report);
    Ok(FullReport::assemble(&report, notes, cfg.echo()))
}

/// The computation itself, without serialization concerns.
pub fn run_stability(cfg: &RunConfig) -> Result<StabilityReport, PipelineError> {
    let generators = cfg.validate()?;
    let group = close_generators(&generators, DEFAULT_CLOSURE_CAP)?;
    projective_stabilizer_check(&group, &cfg.form)?;
    let metric = MetricModel::new(cfg.u.clone(), &cfg.form)?;
    let frame = standard_frame(&cfg.form)?;
    let certificate = lagrangian_check(&frame, &metric);
    if !certificate.is_lagrangian() {
        return Err(PipelineError::NotLagrangian {
            rank: certificate.rank,
            failing_pair: certificate.failing_pair,
        });
    }
    let gram = induced_gram(&frame, &metric);
    let decomposition = laplace_decomposition(&gram, &group)?;
    let outcome = lambda1_search(&decomposition, &group, &SearchOptions { max_k: cfg.max_k })?;
    Ok(stability_verdict(
        &outcome,
        &decomposition,
        &cfg.curvature,
        3,
    ))
}

fn collect_notes(cfg: &RunConfig, report: &StabilityReport) -> Vec<String> {
    let mut notes = Vec::new();
    let submersion_c = Rational::from_int(HOLOMORPHIC_SECTIONAL_CURVATURE);
    if cfg.curvature != submersion_c {
        notes.push(format!(
            "curvature c = {} differs from c = {} fixed by the unit-sphere submersion; \
             kappa uses the configured value, the spectrum does not depend on c",
            cfg.curvature, submersion_c
        ));
    }
    if report.exceeds_ambient_upper_bound {
        notes.push(format!(
            "lambda1 = {} exceeds kappa = {}: this contradicts the upper bound \
             lambda1 <= kappa valid for minimal Lagrangians in Hermitian symmetric \
             ambients, so the configuration is inconsistent with that geometry",
            report.lambda1, report.kappa
        ));
    }
    let lambda1_multiplicity: usize = report
        .lines
        .iter()
        .filter(|l| l.laplace_eigenvalue == report.lambda1)
        .map(|l| l.multiplicity)
        .sum();
    notes.push(format!(
        "lambda1-eigenspace dimension {} (sum of multiplicities over attaining degrees; derived value)",
        lambda1_multiplicity
    ));
    notes
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_run_reproduces_the_headline() {
        let cfg = RunConfig::default();
        let report = run_pipeline(&cfg).unwrap();
        assert_eq!(report.lambda1.to_string(), "8/1");
        assert_eq!(report.kappa.to_string(), "8/1");
        assert_eq!(report.verdict, "HamiltonianStable");
        assert_eq!(report.attaining_k, vec![4, 6]);
        assert_eq!(report.c_cas, Rational::new(8, 3));
        assert_eq!(report.gram[0][0], Rational::new(9, 8));
        assert_eq!(report.gram[1][1], Rational::new(3, 8));
        assert_eq!(report.r[0][0], Rational::new(-16, 9));
    }

    #[test]
    fn trivial_generators_fail_with_invariant_violation() {
        let cfg = RunConfig {
            generators: vec![CycMatrix::identity(2)],
            ..RunConfig::default()
        };
        let err = run_pipeline(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(matches!(
            err,
            PipelineError::Geometry(GeometryError::Isotropy(IsotropyError::V1Fixed))
        ));
    }

    #[test]
    fn config_validation_failures_exit_one() {
        let bad_curvature = RunConfig {
            curvature: Rational::from_int(-1),
            ..RunConfig::default()
        };
        assert_eq!(run_pipeline(&bad_curvature).unwrap_err().exit_code(), 1);

        let mut not_unitary = CycMatrix::identity(2);
        not_unitary[(0, 0)] = CycNum::from_int(2);
        let bad_gen = RunConfig {
            generators: vec![not_unitary],
            ..RunConfig::default()
        };
        assert_eq!(run_pipeline(&bad_gen).unwrap_err().exit_code(), 1);

        let zero_form = RunConfig {
            form: BinaryForm::zero(3),
            ..RunConfig::default()
        };
        assert_eq!(run_pipeline(&zero_form).unwrap_err().exit_code(), 1);
    }

    #[test]
    fn curvature_override_flags_the_contradiction() {
        let cfg = RunConfig {
            curvature: Rational::from_int(2),
            ..RunConfig::default()
        };
        let report = run_pipeline(&cfg).unwrap();
        assert_eq!(report.lambda1.to_string(), "8/1");
        assert_eq!(report.kappa.to_string(), "4/1");
        assert_eq!(report.verdict, "HamiltonianStable");
        assert!(report.notes.iter().any(|n| n.contains("exceeds kappa")));
        assert!(report
            .notes
            .iter()
            .any(|n| n.contains("unit-sphere submersion")));
    }

    #[test]
    fn small_horizon_is_refused() {
        let cfg = RunConfig {
            max_k: Some(3),
            ..RunConfig::default()
        };
        let err = run_pipeline(&cfg).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(matches!(err, PipelineError::Spectrum(_)));
    }

    #[test]
    fn json_is_deterministic_and_roundtrips() {
        let cfg = RunConfig {
            format: OutputFormat::Json,
            ..RunConfig::default()
        };
        let a = run_pipeline(&cfg).unwrap().to_json();
        let b = run_pipeline(&cfg).unwrap().to_json();
        assert_eq!(a, b);
        let value: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(value["lambda1"], "8/1");
        assert_eq!(value["attaining_k"], serde_json::json!([4, 6]));
        // every rational-shaped string parses back to the exact same value
        fn walk(v: &serde_json::Value, count: &mut usize) {
            match v {
                serde_json::Value::String(s) => {
                    let looks_rational = s.split_once('/').is_some_and(|(n, d)| {
                        !n.is_empty()
                            && n.trim_start_matches('-')
                                .chars()
                                .all(|c| c.is_ascii_digit())
                            && !d.is_empty()
                            && d.chars().all(|c| c.is_ascii_digit())
                    });
                    if looks_rational {
                        let parsed: Rational = s.parse().unwrap();
                        assert_eq!(&parsed.to_string(), s);
                        *count += 1;
                    }
                }
                serde_json::Value::Array(items) => items.iter().for_each(|x| walk(x, count)),
                serde_json::Value::Object(map) => map.values().for_each(|x| walk(x, count)),
                _ => {}
            }
        }
        let mut count = 0;
        walk(&value, &mut count);
        assert!(count > 30, "expected many exact rationals, saw {}", count);
    }
}
