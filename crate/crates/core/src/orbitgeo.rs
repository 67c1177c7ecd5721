//! Geometry of the orbit through the basepoint in ℂP³: fundamental vector
//! fields in the affine chart, the invariant Hermitian metric on the ambient
//! C⁴, horizontal lifts through the unit-sphere submersion, the induced
//! metric Gram matrix, the Lagrangian certificate, and the decomposition of
//! the Laplacian into a Casimir multiple plus an isotropy-invariant
//! correction.
//!
//! The chart around p = [1 : 0 : 0 : 1] uses x_j + i y_j = w_j / w₀; the
//! Hermitian metric is h = u·dw₀dw̄₀ + (u/3)(dw₁dw̄₁ + dw₂dw̄₂) + u·dw₃dw̄₃,
//! the unique SU(2)-invariant shape, and nothing downstream depends on the
//! scale u (tested, not assumed).

use crate::exactnum::{gram_schmidt_real, sqrt_real, CycMatrix, CycNum, ExactError, Rational};
use crate::isotropy::{isotropy_splitting, FiniteSubgroup, IsotropyError};
use crate::su2rep::{algebra_action, AlgebraElement, BinaryForm};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("chart failure: the form has w0 = 0")]
    ChartFailure,
    #[error("chart vector component {0} is not real")]
    NonRealComponent(String),
    #[error("Hermitian scale u must be positive, got {0}")]
    NonPositiveScale(Rational),
    #[error("the form must have degree 3 (ambient CP^3), got degree {0}")]
    WrongDegree(usize),
    #[error("basepoint normalization failed: h(p,p) = {0}")]
    BadBasepointNorm(String),
    #[error("induced metric is not Ad-invariant for element {element}")]
    MetricNotInvariant { element: String },
    #[error("frame operator is not diagonal in the X-basis; exact eigenvalue extraction is only supported for orthogonal frames")]
    NonDiagonalFrameOperator,
    #[error("decomposition entry {0} is not rational")]
    NonRationalEntry(String),
    #[error("correction term is not Ad-invariant for element {element}")]
    CorrectionNotInvariant { element: String },
    #[error(transparent)]
    Isotropy(#[from] IsotropyError),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Real tangent vector Σ a_j ∂/∂x_j + Σ b_j ∂/∂y_j in the affine chart;
/// components live in the real subfield.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ChartVector {
    // a1, a2, a3, b1, b2, b3
    comps: [CycNum; 6],
}

impl ChartVector {
    pub fn new(comps: [CycNum; 6]) -> Result<Self, GeometryError> {
        for c in &comps {
            if !c.is_real() {
                return Err(GeometryError::NonRealComponent(c.to_string()));
            }
        }
        Ok(ChartVector { comps })
    }

    pub fn zero() -> Self {
        ChartVector {
            comps: std::array::from_fn(|_| CycNum::zero()),
        }
    }

    /// Unit vector ∂/∂x_j, j ∈ {1, 2, 3}.
    pub fn dx(j: usize) -> Self {
        assert!((1..=3).contains(&j));
        let mut v = Self::zero();
        v.comps[j - 1] = CycNum::one();
        v
    }

    /// Unit vector ∂/∂y_j, j ∈ {1, 2, 3}.
    pub fn dy(j: usize) -> Self {
        assert!((1..=3).contains(&j));
        let mut v = Self::zero();
        v.comps[2 + j] = CycNum::one();
        v
    }

    pub fn components(&self) -> &[CycNum; 6] {
        &self.comps
    }

    /// Complex components c_j = a_j + i b_j, j = 1..3.
    pub fn complex_components(&self) -> [CycNum; 3] {
        std::array::from_fn(|j| &self.comps[j] + &(&CycNum::i() * &self.comps[j + 3]))
    }

    fn from_complex(c: [CycNum; 3]) -> Self {
        let mut comps = std::array::from_fn(|_| CycNum::zero());
        for j in 0..3 {
            comps[j] = c[j].re();
            comps[j + 3] = c[j].im();
        }
        ChartVector { comps }
    }

    pub fn scale(&self, s: &CycNum) -> ChartVector {
        ChartVector {
            comps: std::array::from_fn(|i| &self.comps[i] * s),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(CycNum::is_zero)
    }
}

/// The invariant Hermitian metric, its unit-sphere basepoint lift, and the
/// holomorphic sectional curvature of the induced Fubini–Study metric.
pub struct MetricModel {
    u: Rational,
    weights: [CycNum; 4],
    basepoint: Vec<CycNum>,
    lift: [CycNum; 4],
}

/// Holomorphic sectional curvature of the Fubini–Study metric produced by the
/// unit-sphere submersion; carried as metadata, the geometry never recomputes
/// it.
pub const HOLOMORPHIC_SECTIONAL_CURVATURE: i64 = 4;

impl MetricModel {
    /// Builds the metric at Hermitian scale u for the given degree-3 form,
    /// with weights (1, 1/3, 1/3, 1)·u and the form's unit-norm lift as
    /// basepoint. Verifies h(p̃, p̃) = 1 exactly.
    pub fn new(u: Rational, form: &BinaryForm) -> Result<Self, GeometryError> {
        if !u.is_positive() {
            return Err(GeometryError::NonPositiveScale(u));
        }
        if form.degree() != 3 {
            return Err(GeometryError::WrongDegree(form.degree()));
        }
        let weights: [CycNum; 4] = [
            CycNum::from_rational(u.clone()),
            CycNum::from_rational(&u * &Rational::new(1, 3)),
            CycNum::from_rational(&u * &Rational::new(1, 3)),
            CycNum::from_rational(u.clone()),
        ];
        let basepoint: Vec<CycNum> = form.coeffs().to_vec();
        let norm_sq = hermitian_with(&weights, &basepoint, &basepoint);
        let norm = sqrt_real(&norm_sq)?;
        let inv_norm = norm
            .inverse()
            .map_err(|_| GeometryError::BadBasepointNorm(norm_sq.to_string()))?;
        let lift: [CycNum; 4] = std::array::from_fn(|j| &basepoint[j] * &inv_norm);
        let model = MetricModel {
            u,
            weights,
            basepoint,
            lift,
        };
        let unit = model.hermitian(&model.lift, &model.lift);
        if !unit.is_one() {
            return Err(GeometryError::BadBasepointNorm(unit.to_string()));
        }
        Ok(model)
    }

    pub fn scale_u(&self) -> &Rational {
        &self.u
    }

    pub fn basepoint_lift(&self) -> &[CycNum; 4] {
        &self.lift
    }

    pub fn basepoint(&self) -> &[CycNum] {
        &self.basepoint
    }

    /// h(v, w) = Σ_j weight_j · v_j · conj(w_j).
    pub fn hermitian(&self, v: &[CycNum], w: &[CycNum]) -> CycNum {
        hermitian_with(&self.weights, v, w)
    }
}

fn hermitian_with(weights: &[CycNum; 4], v: &[CycNum], w: &[CycNum]) -> CycNum {
    let mut acc = CycNum::zero();
    for j in 0..4 {
        if v[j].is_zero() || w[j].is_zero() {
            continue;
        }
        acc += &(&(&weights[j] * &v[j]) * &w[j].conj());
    }
    acc
}

/// Chart derivative at t = 0 of the curve [ρ₃(exp tξ) p]: with v = dρ₃(ξ)p̂,
/// the j-th complex component is (v_j w₀ − p̂_j v₀)/w₀².
pub fn fundamental_field(
    xi: &AlgebraElement,
    form: &BinaryForm,
) -> Result<ChartVector, GeometryError> {
    if form.degree() != 3 {
        return Err(GeometryError::WrongDegree(form.degree()));
    }
    let p = form.coeffs();
    if p[0].is_zero() {
        return Err(GeometryError::ChartFailure);
    }
    let v = algebra_action(xi, 3).mul_vec(p);
    let w0_sq_inv = (&p[0] * &p[0]).inverse().expect("w0 is nonzero");
    let c: [CycNum; 3] = std::array::from_fn(|idx| {
        let j = idx + 1;
        let num = &(&v[j] * &p[0]) - &(&p[j] * &v[0]);
        &num * &w0_sq_inv
    });
    Ok(ChartVector::from_complex(c))
}

/// A tangent vector of C⁴ at the basepoint lift (4 complex = 8 real
/// components).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LiftedVector {
    comps: [CycNum; 4],
}

impl LiftedVector {
    pub fn components(&self) -> &[CycNum; 4] {
        &self.comps
    }

    /// The 8 real coordinates (x̃₀, ỹ₀, …, x̃₃, ỹ₃).
    pub fn real_components(&self) -> [CycNum; 8] {
        std::array::from_fn(|i| {
            let j = i / 2;
            if i % 2 == 0 {
                self.comps[j].re()
            } else {
                self.comps[j].im()
            }
        })
    }
}

/// The unique lift tangent to the unit sphere of h, h-orthogonal to the fiber
/// direction, and chart-projecting to v.
///
/// Writing p̃ for the basepoint lift and c_j for the complex components of v,
/// the conditions h(V, p̃) = 0 and (V_j p̃₀ − p̃_j V₀)/p̃₀² = c_j solve to
///   V₀ = −p̃₀² Σ_j w_j c_j conj(p̃_j),
///   V_j = c_j p̃₀ + (p̃_j/p̃₀) V₀,
/// using h(p̃, p̃) = 1.
pub fn horizontal_lift(v: &ChartVector, m: &MetricModel) -> LiftedVector {
    let p = &m.lift;
    let c = v.complex_components();
    let mut s = CycNum::zero();
    for j in 0..3 {
        if c[j].is_zero() || p[j + 1].is_zero() {
            continue;
        }
        s += &(&(&m.weights[j + 1] * &c[j]) * &p[j + 1].conj());
    }
    let v0 = -(&(&p[0] * &p[0]) * &s);
    let p0_inv = p[0].inverse().expect("basepoint lift has w0 != 0");
    let comps: [CycNum; 4] = std::array::from_fn(|idx| {
        if idx == 0 {
            v0.clone()
        } else {
            let j = idx;
            &(&c[j - 1] * &p[0]) + &(&(&p[j] * &p0_inv) * &v0)
        }
    });
    LiftedVector { comps }
}

/// Gram matrix g_ij = Re h(lift(v_i), lift(v_j)) of the induced metric on the
/// frame; entries are exact elements of the real subfield.
pub fn induced_gram(frame: &[ChartVector; 3], m: &MetricModel) -> CycMatrix {
    let lifts: Vec<LiftedVector> = frame.iter().map(|v| horizontal_lift(v, m)).collect();
    CycMatrix::from_fn(3, 3, |i, j| {
        m.hermitian(&lifts[i].comps, &lifts[j].comps).re()
    })
}

/// Outcome of the Lagrangian test: the frame must have rank 3 and the Kähler
/// form (the imaginary part of h on horizontal lifts) must vanish on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianCheck {
    pub rank: usize,
    /// First pair (i, j) with Im h(lift_i, lift_j) ≠ 0, if any.
    pub failing_pair: Option<(usize, usize)>,
}

impl LagrangianCheck {
    pub fn is_lagrangian(&self) -> bool {
        self.rank == 3 && self.failing_pair.is_none()
    }
}

pub fn lagrangian_check(frame: &[ChartVector; 3], m: &MetricModel) -> LagrangianCheck {
    let real_rows: Vec<Vec<CycNum>> = frame.iter().map(|v| v.components().to_vec()).collect();
    let rank = crate::exactnum::rank(&CycMatrix::from_rows(real_rows));
    let lifts: Vec<LiftedVector> = frame.iter().map(|v| horizontal_lift(v, m)).collect();
    let mut failing_pair = None;
    'outer: for i in 0..3 {
        for j in (i + 1)..3 {
            let omega = m.hermitian(&lifts[i].comps, &lifts[j].comps).im();
            if !omega.is_zero() {
                failing_pair = Some((i, j));
                break 'outer;
            }
        }
    }
    LagrangianCheck { rank, failing_pair }
}

/// Decomposition Δ_g = c_cas · Δ_{−B} − λ̂(Σ r_ij X_i X_j): the operator
/// Q = Σ Y_i ⊗ Y_i of the g-orthonormal frame in the X-basis, split into its
/// maximal-multiplicity eigenvalue c_cas and the invariant remainder
/// R = Q − c_cas·I.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplaceDecomposition {
    pub gram: Vec<Vec<Rational>>,
    pub q: Vec<Vec<Rational>>,
    pub c_cas: Rational,
    pub r: Vec<Vec<Rational>>,
}

impl LaplaceDecomposition {
    /// Entrywise l¹ norm of R, the coefficient in the termination bound.
    pub fn r_l1_norm(&self) -> Rational {
        let mut acc = Rational::zero();
        for row in &self.r {
            for x in row {
                acc += &x.abs();
            }
        }
        acc
    }

    pub fn r_is_zero(&self) -> bool {
        self.r.iter().all(|row| row.iter().all(Rational::is_zero))
    }
}

fn to_rational_matrix(m: &CycMatrix) -> Result<Vec<Vec<Rational>>, GeometryError> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    m[(i, j)]
                        .to_rational()
                        .ok_or_else(|| GeometryError::NonRationalEntry(m[(i, j)].to_string()))
                })
                .collect()
        })
        .collect()
}

pub fn rational_matrix_to_cyc(m: &[Vec<Rational>]) -> CycMatrix {
    CycMatrix::from_fn(m.len(), m[0].len(), |i, j| {
        CycNum::from_rational(m[i][j].clone())
    })
}

pub fn laplace_decomposition(
    gram: &CycMatrix,
    group: &FiniteSubgroup,
) -> Result<LaplaceDecomposition, GeometryError> {
    let splitting = isotropy_splitting(group)?;
    assert_eq!((gram.rows(), gram.cols()), (3, 3), "gram must be 3x3");
    assert!(
        gram.is_symmetric() && gram.entries_real(),
        "gram must be real symmetric"
    );

    // Invariance of the metric: Ad(g)ᵀ · G · Ad(g) = G for every g.
    for (g, ad) in group.elements().iter().zip(splitting.ad_matrices()) {
        if ad.transpose().mul(gram).mul(ad) != *gram {
            return Err(GeometryError::MetricNotInvariant {
                element: format!("{:?}", g),
            });
        }
    }

    // Orthonormalize the X-frame against the induced metric.
    let basis: Vec<Vec<CycNum>> = (0..3)
        .map(|i| {
            (0..3)
                .map(|j| CycNum::from_int(i64::from(i == j)))
                .collect()
        })
        .collect();
    let ip = |x: &[CycNum], y: &[CycNum]| {
        let mut acc = CycNum::zero();
        for a in 0..3 {
            for b in 0..3 {
                if x[a].is_zero() || y[b].is_zero() || gram[(a, b)].is_zero() {
                    continue;
                }
                acc += &(&(&x[a] * &gram[(a, b)]) * &y[b]);
            }
        }
        acc
    };
    let ortho = gram_schmidt_real(&basis, ip)?;

    // Q = Σ_i Y_i ⊗ Y_i in the X-basis.
    let mut q = CycMatrix::zeros(3, 3);
    for y in &ortho {
        for a in 0..3 {
            if y[a].is_zero() {
                continue;
            }
            for b in 0..3 {
                if y[b].is_zero() {
                    continue;
                }
                q[(a, b)] += &(&y[a] * &y[b]);
            }
        }
    }

    if !q.is_diagonal() {
        return Err(GeometryError::NonDiagonalFrameOperator);
    }

    // Eigenvalues are the diagonal entries; pick the one of maximal
    // multiplicity (ties broken by first occurrence).
    let diag: Vec<CycNum> = (0..3).map(|i| q[(i, i)].clone()).collect();
    let mut best_idx = 0;
    let mut best_count = 0;
    for (i, v) in diag.iter().enumerate() {
        let count = diag.iter().filter(|w| *w == v).count();
        if count > best_count {
            best_count = count;
            best_idx = i;
        }
    }
    let c_cas_cyc = diag[best_idx].clone();
    let r_cyc = q.sub(&CycMatrix::identity(3).scale(&c_cas_cyc));

    // The correction must be fixed by the whole isotropy action.
    for (g, ad) in group.elements().iter().zip(splitting.ad_matrices()) {
        if ad.mul(&r_cyc).mul(&ad.transpose()) != r_cyc {
            return Err(GeometryError::CorrectionNotInvariant {
                element: format!("{:?}", g),
            });
        }
    }

    let c_cas = c_cas_cyc
        .to_rational()
        .ok_or_else(|| GeometryError::NonRationalEntry(c_cas_cyc.to_string()))?;
    Ok(LaplaceDecomposition {
        gram: to_rational_matrix(gram)?,
        q: to_rational_matrix(&q)?,
        c_cas,
        r: to_rational_matrix(&r_cyc)?,
    })
}

/// The fundamental-field frame (X̂₁, X̂₂, X̂₃) at the form's point.
pub fn standard_frame(form: &BinaryForm) -> Result<[ChartVector; 3], GeometryError> {
    let [x1, x2, x3] = AlgebraElement::orthonormal_frame();
    Ok([
        fundamental_field(&x1, form)?,
        fundamental_field(&x2, form)?,
        fundamental_field(&x3, form)?,
    ])
}
