//! Bit-stable report emission.
//!
//! Rationals serialize as exact `num/den` strings; decimal approximations
//! (12 digits) appear only as annotations and never feed back into any
//! decision. Struct field order fixes the JSON key order, and nothing in the
//! assembly depends on iteration order of a map, so output is byte-identical
//! across runs for a fixed configuration.

use crate::exactnum::Rational;
use crate::spectrum::{SpectralLine, StabilityReport};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct LineRecord {
    pub k: usize,
    pub d_eigenvalue: Rational,
    pub laplace_eigenvalue: Rational,
    pub laplace_eigenvalue_approx: String,
    pub subspace_dim: usize,
    pub multiplicity: usize,
}

impl From<&SpectralLine> for LineRecord {
    fn from(line: &SpectralLine) -> Self {
        LineRecord {
            k: line.k,
            d_eigenvalue: line.d_eigenvalue.clone(),
            laplace_eigenvalue: line.laplace_eigenvalue.clone(),
            laplace_eigenvalue_approx: approx12(&line.laplace_eigenvalue),
            subspace_dim: line.subspace_dim,
            multiplicity: line.multiplicity,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfigEcho {
    pub curvature: Rational,
    pub form: Vec<String>,
    pub generators: Vec<Vec<Vec<String>>>,
    pub u: Rational,
    pub max_k: Option<usize>,
    pub format: String,
}

/// The full serializable report: the stability verdict plus the metric
/// evidence and the configuration echo.
#[derive(Debug, Clone, Serialize)]
pub struct FullReport {
    pub lambda1: Rational,
    pub kappa: Rational,
    pub verdict: String,
    pub attaining_k: Vec<usize>,
    pub lines: Vec<LineRecord>,
    pub gram: Vec<Vec<Rational>>,
    pub q: Vec<Vec<Rational>>,
    pub c_cas: Rational,
    pub r: Vec<Vec<Rational>>,
    pub notes: Vec<String>,
    pub config_echo: ConfigEcho,
}

pub fn approx12(r: &Rational) -> String {
    format!("{:.12}", r.to_f64())
}

impl FullReport {
    pub fn assemble(
        stability: &StabilityReport,
        notes: Vec<String>,
        config_echo: ConfigEcho,
    ) -> FullReport {
        FullReport {
            lambda1: stability.lambda1.clone(),
            kappa: stability.kappa.clone(),
            verdict: stability.verdict.to_string(),
            attaining_k: stability.attaining_k.clone(),
            lines: stability.lines.iter().map(LineRecord::from).collect(),
            gram: stability.decomposition.gram.clone(),
            q: stability.decomposition.q.clone(),
            c_cas: stability.decomposition.c_cas.clone(),
            r: stability.decomposition.r.clone(),
            notes,
            config_echo,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        push(
            &mut out,
            format!(
                "first Laplace eigenvalue  lambda1 = {}  (~ {})",
                self.lambda1,
                approx12(&self.lambda1)
            ),
        );
        push(
            &mut out,
            format!(
                "Einstein constant         kappa   = {}  (~ {})",
                self.kappa,
                approx12(&self.kappa)
            ),
        );
        push(&mut out, format!("verdict: {}", self.verdict));
        push(
            &mut out,
            format!(
                "attained at degrees k = {}",
                self.attaining_k
                    .iter()
                    .map(|k| k.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        );
        push(&mut out, String::new());
        push(
            &mut out,
            format!(
                "{:>4}  {:>12}  {:>14}  {:>18}  {:>4}  {:>5}",
                "k", "mu", "eigenvalue", "approx", "dim", "mult"
            ),
        );
        for line in &self.lines {
            push(
                &mut out,
                format!(
                    "{:>4}  {:>12}  {:>14}  {:>18}  {:>4}  {:>5}",
                    line.k,
                    line.d_eigenvalue.to_string(),
                    line.laplace_eigenvalue.to_string(),
                    line.laplace_eigenvalue_approx,
                    line.subspace_dim,
                    line.multiplicity
                ),
            );
        }
        push(&mut out, String::new());
        push(&mut out, format!("gram  = {}", matrix_line(&self.gram)));
        push(&mut out, format!("Q     = {}", matrix_line(&self.q)));
        push(&mut out, format!("c_cas = {}", self.c_cas));
        push(&mut out, format!("R     = {}", matrix_line(&self.r)));
        if !self.notes.is_empty() {
            push(&mut out, String::new());
            for note in &self.notes {
                push(&mut out, format!("note: {}", note));
            }
        }
        out
    }
}

fn matrix_line(m: &[Vec<Rational>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|row| {
            row.iter()
                .map(Rational::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        })
        .collect();
    format!("[{}]", rows.join(" ; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn approx_format_is_twelve_places() {
        assert_eq!(approx12(&Rational::new(8, 1)), "8.000000000000");
        assert_eq!(approx12(&Rational::new(-16, 9)), "-1.777777777778");
    }
}
