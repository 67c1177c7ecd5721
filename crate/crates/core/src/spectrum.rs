//! Laplace eigenvalues through the fixed subspaces of each symmetric power,
//! the certified minimization over representations, and the stability
//! verdict.
//!
//! For each degree k the eigenvalue contributed by a D-eigenspace slice of
//! V^F is c_cas · Cas(k) − ν, where D = dρ(H)², Cas(k) = k/4 + k²/8, and ν is
//! the eigenvalue of the correction operator Σ r_ij dρ(X_i) dρ(X_j) on that
//! slice. Every eigenvalue of ρ_k is bounded below by
//! c_cas·Cas(k) − ‖R‖₁·k²/8, a monotone function of k, which certifies where
//! the enumeration may stop.

use crate::exactnum::{nullspace, CycMatrix, CycNum, Rational};
use crate::isotropy::{fixed_subspace, FiniteSubgroup};
use crate::orbitgeo::LaplaceDecomposition;
use crate::su2rep::{algebra_action, casimir_eigenvalue, sym_power, AlgebraElement};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpectrumError {
    #[error("eigenspace intersections have total dimension {got}, expected {expected} at k = {k}")]
    DimensionMismatch {
        k: usize,
        got: usize,
        expected: usize,
    },
    #[error("correction operator does not act as a scalar on a fixed eigenspace slice at k = {k}")]
    CorrectionNotScalar { k: usize },
    #[error("correction eigenvalue {value} at k = {k} is not rational")]
    IrrationalCorrection { k: usize, value: String },
    #[error("emitted eigenvalue {value} at k = {k} is not positive")]
    NonPositiveEigenvalue { k: usize, value: Rational },
    #[error("eigenvalue {value} at k = {k} violates the certified lower bound {bound}")]
    BoundViolated {
        k: usize,
        value: Rational,
        bound: Rational,
    },
    #[error("no certified termination bound: c_cas = {c_cas} must be positive and at least the l1 norm {r_norm} of R")]
    NoCertifiedBound { c_cas: Rational, r_norm: Rational },
    #[error("enumeration horizon k <= {max_k} reached before the bound certified the minimum; raise --max-k (needs at least k = {needed})")]
    HorizonTooSmall { max_k: usize, needed: usize },
    #[error("no spherical representation with a fixed vector found for k <= {scanned}")]
    NoSphericalRepresentation { scanned: usize },
}

/// One eigenvalue record: the D-eigenvalue μ on the slice V^F ∩ E_μ, the
/// resulting Laplace eigenvalue, and its multiplicity (k+1)·dim.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralLine {
    pub k: usize,
    pub d_eigenvalue: Rational,
    pub laplace_eigenvalue: Rational,
    pub subspace_dim: usize,
    pub multiplicity: usize,
}

/// Certified lower bound for every eigenvalue contributed by ρ_k:
/// c_cas·Cas(k) − ‖R‖₁·k²/8. For the reference metric this is 2k/3 + k²/9.
pub fn termination_bound(dec: &LaplaceDecomposition, k: usize) -> Rational {
    let cas = casimir_eigenvalue(k);
    let k_sq = Rational::from_int((k * k) as i64);
    &(&dec.c_cas * &cas) - &(&(&dec.r_l1_norm() * &k_sq) * &Rational::new(1, 8))
}

fn correction_operator(dec: &LaplaceDecomposition, k: usize) -> CycMatrix {
    let frame = AlgebraElement::orthonormal_frame();
    let actions: Vec<CycMatrix> = frame.iter().map(|xi| algebra_action(xi, k)).collect();
    let mut c = CycMatrix::zeros(k + 1, k + 1);
    for (i, row) in dec.r.iter().enumerate() {
        for (j, r_ij) in row.iter().enumerate() {
            if r_ij.is_zero() {
                continue;
            }
            let term = actions[i]
                .mul(&actions[j])
                .scale(&CycNum::from_rational(r_ij.clone()));
            c = c.add(&term);
        }
    }
    c
}

/// Eigenvalue lines of ρ_k: for each distinct eigenvalue μ = −(2l−k)² of
/// D = dρ(H)², the slice V^F ∩ E_μ is an exact nullspace of the stacked
/// system (ρ(g) − I for each generator; D − μI). The slice dimensions must
/// partition dim V^F, which certifies that D preserves V^F.
pub fn spectrum_for_k(
    k: usize,
    dec: &LaplaceDecomposition,
    group: &FiniteSubgroup,
) -> Result<Vec<SpectralLine>, SpectrumError> {
    let m_rho = fixed_subspace(group, k).dim;
    if m_rho == 0 {
        return Ok(Vec::new());
    }
    let identity = CycMatrix::identity(k + 1);
    let gen_blocks: Vec<CycMatrix> = group
        .generators()
        .iter()
        .map(|g| sym_power(g, k).sub(&identity))
        .collect();
    let d = algebra_action(&AlgebraElement::h(), k);
    let d_squared = d.mul(&d);
    let correction = correction_operator(dec, k);
    let cas_term = &dec.c_cas * &casimir_eigenvalue(k);
    let bound = termination_bound(dec, k);

    let mut lines = Vec::new();
    let mut total_dim = 0;
    // distinct eigenvalues of D: −(2l−k)² for l = 0..⌊k/2⌋, ascending in l
    for l in 0..=(k / 2) {
        let mu = -Rational::from_int(((2 * l) as i64 - k as i64).pow(2));
        let shift = identity.scale(&CycNum::from_rational(mu.clone()));
        let mut blocks: Vec<&CycMatrix> = gen_blocks.iter().collect();
        let d_block = d_squared.sub(&shift);
        blocks.push(&d_block);
        let stacked = CycMatrix::stack_vertical(&blocks);
        let slice = nullspace(&stacked);
        if slice.is_empty() {
            continue;
        }
        total_dim += slice.len();

        // The correction operator acts by a scalar ν on the slice.
        let mut nu: Option<CycNum> = None;
        for v in &slice {
            let image = correction.mul_vec(v);
            let pivot = v
                .iter()
                .position(|c| !c.is_zero())
                .expect("nullspace vector is nonzero");
            let scalar = &image[pivot] * &v[pivot].inverse().expect("pivot entry is nonzero");
            let scaled: Vec<CycNum> = v.iter().map(|c| c * &scalar).collect();
            if image != scaled {
                return Err(SpectrumError::CorrectionNotScalar { k });
            }
            match &nu {
                Some(existing) if *existing != scalar => {
                    return Err(SpectrumError::CorrectionNotScalar { k });
                }
                Some(_) => {}
                None => nu = Some(scalar),
            }
        }
        let nu = nu.expect("slice is nonempty");
        let nu = nu
            .to_rational()
            .ok_or_else(|| SpectrumError::IrrationalCorrection {
                k,
                value: nu.to_string(),
            })?;
        let laplace_eigenvalue = &cas_term - &nu;
        if k >= 1 && !laplace_eigenvalue.is_positive() {
            return Err(SpectrumError::NonPositiveEigenvalue {
                k,
                value: laplace_eigenvalue,
            });
        }
        if laplace_eigenvalue < bound {
            return Err(SpectrumError::BoundViolated {
                k,
                value: laplace_eigenvalue,
                bound,
            });
        }
        lines.push(SpectralLine {
            k,
            d_eigenvalue: mu,
            laplace_eigenvalue,
            subspace_dim: slice.len(),
            multiplicity: (k + 1) * slice.len(),
        });
    }
    if total_dim != m_rho {
        return Err(SpectrumError::DimensionMismatch {
            k,
            got: total_dim,
            expected: m_rho,
        });
    }
    // ascending μ = descending |2l−k|: most negative first, so the minimal
    // Laplace eigenvalue of the degree leads
    lines.sort_by(|a, b| a.d_eigenvalue.cmp(&b.d_eigenvalue));
    Ok(lines)
}

#[derive(Debug, Clone, Default)]
pub struct SearchOptions {
    /// Hard enumeration cap; the search fails rather than report an
    /// uncertified minimum if the bound has not overtaken it by then.
    pub max_k: Option<usize>,
}

/// Fallback cap when no horizon is configured; generous for any small group.
const DEFAULT_HARD_CAP: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub lambda1: Rational,
    pub attaining_k: Vec<usize>,
    /// Full line table for every k enumerated up to the certified stop index.
    pub lines: Vec<SpectralLine>,
    /// Last degree enumerated; the bound exceeds λ₁ strictly beyond it.
    pub stop_k: usize,
}

/// Minimizes the positive Laplace eigenvalues over k ≥ 1 with a certified
/// stop: enumeration halts at the first K where the monotone lower bound
/// exceeds the current minimum, so no higher degree can attain it.
pub fn lambda1_search(
    dec: &LaplaceDecomposition,
    group: &FiniteSubgroup,
    opts: &SearchOptions,
) -> Result<SearchOutcome, SpectrumError> {
    let r_norm = dec.r_l1_norm();
    if !dec.c_cas.is_positive() || dec.c_cas < r_norm {
        return Err(SpectrumError::NoCertifiedBound {
            c_cas: dec.c_cas.clone(),
            r_norm,
        });
    }
    let cap = opts.max_k.unwrap_or(DEFAULT_HARD_CAP);
    let mut minimum: Option<Rational> = None;
    let mut attaining: Vec<usize> = Vec::new();
    let mut lines: Vec<SpectralLine> = Vec::new();
    let mut k = 1;
    loop {
        if let Some(min) = &minimum {
            if &termination_bound(dec, k) > min {
                return Ok(SearchOutcome {
                    lambda1: min.clone(),
                    attaining_k: attaining,
                    lines,
                    stop_k: k - 1,
                });
            }
        }
        if k > cap {
            return match minimum {
                Some(_) => Err(SpectrumError::HorizonTooSmall {
                    max_k: cap,
                    needed: k,
                }),
                None => Err(SpectrumError::NoSphericalRepresentation { scanned: cap }),
            };
        }
        let new_lines = spectrum_for_k(k, dec, group)?;
        for line in &new_lines {
            let value = &line.laplace_eigenvalue;
            match &minimum {
                Some(min) if value > min => {}
                Some(min) if value == min => {
                    if !attaining.contains(&line.k) {
                        attaining.push(line.k);
                    }
                }
                _ => {
                    minimum = Some(value.clone());
                    attaining = vec![line.k];
                }
            }
        }
        lines.extend(new_lines);
        k += 1;
    }
}

/// Straight scan of all lines for k ≤ up_to, without the certified stop.
/// Used to confirm the search result is invariant under raising the horizon.
pub fn enumerate_lines(
    dec: &LaplaceDecomposition,
    group: &FiniteSubgroup,
    up_to: usize,
) -> Result<Vec<SpectralLine>, SpectrumError> {
    let mut lines = Vec::new();
    for k in 1..=up_to {
        lines.extend(spectrum_for_k(k, dec, group)?);
    }
    Ok(lines)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    HamiltonianStable,
    Unstable,
    Inconclusive,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::HamiltonianStable => "HamiltonianStable",
            Verdict::Unstable => "Unstable",
            Verdict::Inconclusive => "Inconclusive",
        };
        write!(f, "{}", s)
    }
}

/// Final record: λ₁ against the Einstein constant κ = c(n+1)/2, the verdict
/// (stable iff λ₁ ≥ κ), and the full evidence behind it.
#[derive(Debug, Clone)]
pub struct StabilityReport {
    pub lambda1: Rational,
    pub kappa: Rational,
    pub verdict: Verdict,
    /// λ₁ > κ contradicts the upper bound λ₁ ≤ κ valid in Hermitian
    /// symmetric ambients; flagged instead of silently accepted.
    pub exceeds_ambient_upper_bound: bool,
    pub attaining_k: Vec<usize>,
    pub lines: Vec<SpectralLine>,
    pub decomposition: LaplaceDecomposition,
    pub stop_k: usize,
}

/// κ = c(n+1)/2 and the stability comparison.
pub fn stability_verdict(
    outcome: &SearchOutcome,
    dec: &LaplaceDecomposition,
    curvature: &Rational,
    complex_dim: usize,
) -> StabilityReport {
    let kappa = &(curvature * &Rational::from_int((complex_dim + 1) as i64)) * &Rational::new(1, 2);
    let verdict = if outcome.lambda1 >= kappa {
        Verdict::HamiltonianStable
    } else {
        Verdict::Unstable
    };
    StabilityReport {
        lambda1: outcome.lambda1.clone(),
        kappa: kappa.clone(),
        verdict,
        exceeds_ambient_upper_bound: outcome.lambda1 > kappa,
        attaining_k: outcome.attaining_k.clone(),
        lines: outcome.lines.clone(),
        decomposition: dec.clone(),
        stop_k: outcome.stop_k,
    }
}

/// Closed form for the minimal eigenvalue of ρ_k under the reference metric;
/// test oracle, keyed by k mod 6. Empty classes (odd k, and k ≡ 2 with
/// k < 8) return None.
pub fn reference_minimal_eigenvalue(k: usize) -> Option<Rational> {
    if k == 0 || k % 2 == 1 {
        return None;
    }
    let kk = (k * k) as i64;
    let k_i = k as i64;
    match k % 6 {
        0 => Some(Rational::new(2 * k_i, 3) + Rational::new(kk, 9)),
        2 if k >= 8 => Some(Rational::new(kk + 14 * k_i - 8, 9)),
        4 => Some(Rational::new(kk + 22 * k_i - 32, 9)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::CycMatrix;
    use crate::isotropy::close_generators;
    use crate::orbitgeo::laplace_decomposition;
    use crate::su2rep::GroupElement;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn reference_decomposition() -> (LaplaceDecomposition, FiniteSubgroup) {
        let group = FiniteSubgroup::standard();
        let gram = CycMatrix::from_fn(3, 3, |i, j| {
            if i != j {
                CycNum::zero()
            } else if i == 0 {
                CycNum::from_rational(rat(9, 8))
            } else {
                CycNum::from_rational(rat(3, 8))
            }
        });
        let dec = laplace_decomposition(&gram, &group).unwrap();
        (dec, group)
    }

    #[test]
    fn lines_at_low_degrees() {
        let (dec, group) = reference_decomposition();
        // k = 4: single line, μ = 0, eigenvalue 8, multiplicity 5
        let lines = spectrum_for_k(4, &dec, &group).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].d_eigenvalue, rat(0, 1));
        assert_eq!(lines[0].laplace_eigenvalue, rat(8, 1));
        assert_eq!(lines[0].subspace_dim, 1);
        assert_eq!(lines[0].multiplicity, 5);
        // k = 6: single line, μ = −36, eigenvalue (8/3)·6 − 8 = 8
        let lines = spectrum_for_k(6, &dec, &group).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].d_eigenvalue, rat(-36, 1));
        assert_eq!(lines[0].laplace_eigenvalue, rat(8, 1));
        assert_eq!(lines[0].multiplicity, 7);
        // k = 2: empty
        assert!(spectrum_for_k(2, &dec, &group).unwrap().is_empty());
        // k = 10: minimal line (k² + 22k − 32)/9 = 32
        let lines = spectrum_for_k(10, &dec, &group).unwrap();
        assert_eq!(lines[0].laplace_eigenvalue, rat(32, 1));
    }

    #[test]
    fn rank_one_correction_shortcut() {
        // For the reference R, the correction is (−16/9)·dρ(X₁)², so each
        // line satisfies λ = (8/3)Cas(k) + (2/9)μ.
        let (dec, group) = reference_decomposition();
        for k in 1..=16 {
            for line in spectrum_for_k(k, &dec, &group).unwrap() {
                let expected =
                    &(&rat(8, 3) * &casimir_eigenvalue(k)) + &(&rat(2, 9) * &line.d_eigenvalue);
                assert_eq!(line.laplace_eigenvalue, expected);
            }
        }
    }

    #[test]
    fn closed_forms_to_thirty() {
        let (dec, group) = reference_decomposition();
        for k in 1..=30 {
            let lines = spectrum_for_k(k, &dec, &group).unwrap();
            match reference_minimal_eigenvalue(k) {
                Some(expected) => {
                    assert_eq!(
                        lines[0].laplace_eigenvalue, expected,
                        "closed form mismatch at k = {}",
                        k
                    );
                }
                None => assert!(lines.is_empty(), "expected no lines at k = {}", k),
            }
        }
    }

    #[test]
    fn partition_property() {
        let (dec, group) = reference_decomposition();
        for k in 1..=30 {
            let lines = spectrum_for_k(k, &dec, &group).unwrap();
            let total: usize = lines.iter().map(|l| l.subspace_dim).sum();
            assert_eq!(total, fixed_subspace(&group, k).dim);
        }
    }

    #[test]
    fn reference_search_certifies_eight() {
        let (dec, group) = reference_decomposition();
        let outcome = lambda1_search(&dec, &group, &SearchOptions::default()).unwrap();
        assert_eq!(outcome.lambda1, rat(8, 1));
        assert_eq!(outcome.attaining_k, vec![4, 6]);
        // bound 2k/3 + k²/9 exceeds 8 exactly from k = 7 on
        assert_eq!(termination_bound(&dec, 6), rat(8, 1));
        assert!(termination_bound(&dec, 7) > rat(8, 1));
        assert_eq!(outcome.stop_k, 6);
        // two lines survive: k = 4 and k = 6
        assert_eq!(outcome.lines.len(), 2);
        // λ₁-eigenspace dimension: 5 + 7 = 12
        let mult: usize = outcome
            .lines
            .iter()
            .filter(|l| l.laplace_eigenvalue == outcome.lambda1)
            .map(|l| l.multiplicity)
            .sum();
        assert_eq!(mult, 12);
    }

    #[test]
    fn search_is_invariant_under_larger_horizons() {
        let (dec, group) = reference_decomposition();
        let outcome = lambda1_search(&dec, &group, &SearchOptions::default()).unwrap();
        let extended = enumerate_lines(&dec, &group, 2 * outcome.stop_k).unwrap();
        let min = extended
            .iter()
            .map(|l| l.laplace_eigenvalue.clone())
            .min()
            .unwrap();
        assert_eq!(min, outcome.lambda1);
        let attaining: Vec<usize> = {
            let mut ks: Vec<usize> = extended
                .iter()
                .filter(|l| l.laplace_eigenvalue == min)
                .map(|l| l.k)
                .collect();
            ks.dedup();
            ks
        };
        assert_eq!(attaining, outcome.attaining_k);
    }

    #[test]
    fn horizon_guard() {
        let (dec, group) = reference_decomposition();
        let result = lambda1_search(&dec, &group, &SearchOptions { max_k: Some(3) });
        assert!(matches!(
            result,
            Err(SpectrumError::HorizonTooSmall { .. })
                | Err(SpectrumError::NoSphericalRepresentation { .. })
        ));
        // k ≤ 7 suffices
        let ok = lambda1_search(&dec, &group, &SearchOptions { max_k: Some(7) });
        assert!(ok.is_ok());
    }

    #[test]
    fn round_metric_on_su2_mod_center() {
        // Q = I, R = 0 over F = {±I}: eigenvalues are Cas(k) on even k,
        // minimized at k = 2 with Cas(2) = 1.
        let group = close_generators(&[GroupElement::minus_identity()], 16).unwrap();
        let dec = LaplaceDecomposition {
            gram: vec![
                vec![rat(1, 1), rat(0, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 1), rat(0, 1)],
                vec![rat(0, 1), rat(0, 1), rat(1, 1)],
            ],
            q: vec![
                vec![rat(1, 1), rat(0, 1), rat(0, 1)],
                vec![rat(0, 1), rat(1, 1), rat(0, 1)],
                vec![rat(0, 1), rat(0, 1), rat(1, 1)],
            ],
            c_cas: rat(1, 1),
            r: vec![
                vec![rat(0, 1), rat(0, 1), rat(0, 1)],
                vec![rat(0, 1), rat(0, 1), rat(0, 1)],
                vec![rat(0, 1), rat(0, 1), rat(0, 1)],
            ],
        };
        let brute = enumerate_lines(&dec, &group, 10).unwrap();
        let min = brute
            .iter()
            .map(|l| l.laplace_eigenvalue.clone())
            .min()
            .unwrap();
        assert_eq!(min, casimir_eigenvalue(2));
        assert_eq!(min, rat(1, 1));
        let outcome = lambda1_search(&dec, &group, &SearchOptions::default()).unwrap();
        assert_eq!(outcome.lambda1, min);
        assert_eq!(outcome.attaining_k, vec![2]);
    }

    #[test]
    fn verdict_branches() {
        let (dec, group) = reference_decomposition();
        let outcome = lambda1_search(&dec, &group, &SearchOptions::default()).unwrap();
        // λ₁ = 8, c = 4, n = 3 → κ = 8, stable, no contradiction
        let report = stability_verdict(&outcome, &dec, &rat(4, 1), 3);
        assert_eq!(report.kappa, rat(8, 1));
        assert_eq!(report.verdict, Verdict::HamiltonianStable);
        assert!(!report.exceeds_ambient_upper_bound);
        // λ₁ = 8, κ = 4: stable by the criterion but flagged
        let report = stability_verdict(&outcome, &dec, &rat(2, 1), 3);
        assert_eq!(report.kappa, rat(4, 1));
        assert_eq!(report.verdict, Verdict::HamiltonianStable);
        assert!(report.exceeds_ambient_upper_bound);
        // λ₁ = 8 < κ = 9 would be unstable
        let report = stability_verdict(&outcome, &dec, &rat(9, 2), 3);
        assert_eq!(report.kappa, rat(9, 1));
        assert_eq!(report.verdict, Verdict::Unstable);
    }

    #[test]
    fn emitted_lines_respect_their_own_bound() {
        let (dec, group) = reference_decomposition();
        for k in 1..=20 {
            let bound = termination_bound(&dec, k);
            for line in spectrum_for_k(k, &dec, &group).unwrap() {
                assert!(line.laplace_eigenvalue >= bound);
                assert!(line.laplace_eigenvalue.is_positive());
            }
        }
    }
}
