//! Symmetric-power representations of SU(2) on binary forms.
//!
//! ρ_k acts on homogeneous polynomials of degree k in z₁, z₂ by the left
//! action (ρ(g)f)(z) = f(g⁻¹z), so ρ is a genuine homomorphism and dρ a Lie
//! algebra homomorphism. The basis is {z₁^{k−j} z₂^j}, index j. On that basis
//! dρ(H) is diagonal with entry i(2j−k); only its square enters any result,
//! so the sign convention is immaterial downstream.

use crate::exactnum::{CycMatrix, CycNum, ExactError, Rational};
use num_bigint::BigInt;
use num_traits::One;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("matrix is not 2x2")]
    NotTwoByTwo,
    #[error("matrix is not special unitary: {0}")]
    NotSpecialUnitary(String),
    #[error("matrix is not in su(2) (anti-Hermitian traceless): {0}")]
    NotAntiHermitian(String),
    #[error("coefficient vector has length {got}, expected {expected}")]
    BadCoefficientCount { got: usize, expected: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn format_2x2(m: &CycMatrix) -> String {
    format!(
        "[{}, {}; {}, {}]",
        m[(0, 0)],
        m[(0, 1)],
        m[(1, 0)],
        m[(1, 1)]
    )
}

/// Element of SU(2): det = 1 and m*m = I, both verified exactly.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupElement {
    m: CycMatrix,
}

impl GroupElement {
    pub fn new(m: CycMatrix) -> Result<Self, RepError> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(RepError::NotTwoByTwo);
        }
        let det_ok = m.det2() == CycNum::one();
        let unitary_ok = m.conj_transpose().mul(&m) == CycMatrix::identity(2);
        if !det_ok || !unitary_ok {
            return Err(RepError::NotSpecialUnitary(format_2x2(&m)));
        }
        Ok(GroupElement { m })
    }

    pub fn identity() -> Self {
        GroupElement {
            m: CycMatrix::identity(2),
        }
    }

    pub fn minus_identity() -> Self {
        GroupElement {
            m: CycMatrix::identity(2).neg(),
        }
    }

    /// a = diag(e^{iπ/3}, e^{−iπ/3}); e^{iπ/3} = ζ⁴.
    pub fn generator_a() -> Self {
        let mut m = CycMatrix::zeros(2, 2);
        m[(0, 0)] = CycNum::zeta(4);
        m[(1, 1)] = CycNum::zeta(-4);
        GroupElement { m }
    }

    /// b = [[0, i], [i, 0]].
    pub fn generator_b() -> Self {
        let mut m = CycMatrix::zeros(2, 2);
        m[(0, 1)] = CycNum::i();
        m[(1, 0)] = CycNum::i();
        GroupElement { m }
    }

    pub fn matrix(&self) -> &CycMatrix {
        &self.m
    }

    pub fn mul(&self, rhs: &GroupElement) -> GroupElement {
        GroupElement {
            m: self.m.mul(&rhs.m),
        }
    }

    /// Inverse via the adjugate; det = 1 makes it entrywise.
    pub fn inverse(&self) -> GroupElement {
        let mut m = CycMatrix::zeros(2, 2);
        m[(0, 0)] = self.m[(1, 1)].clone();
        m[(0, 1)] = -self.m[(0, 1)].clone();
        m[(1, 0)] = -self.m[(1, 0)].clone();
        m[(1, 1)] = self.m[(0, 0)].clone();
        GroupElement { m }
    }

    pub fn is_identity(&self) -> bool {
        self.m == CycMatrix::identity(2)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}; {}, {}]",
            self.m[(0, 0)],
            self.m[(0, 1)],
            self.m[(1, 0)],
            self.m[(1, 1)]
        )
    }
}

/// Element of su(2): ξ* = −ξ and tr ξ = 0, verified exactly.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraElement {
    m: CycMatrix,
}

impl AlgebraElement {
    pub fn new(m: CycMatrix) -> Result<Self, RepError> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(RepError::NotTwoByTwo);
        }
        if m.conj_transpose() != m.neg() || !m.trace().is_zero() {
            return Err(RepError::NotAntiHermitian(format_2x2(&m)));
        }
        Ok(AlgebraElement { m })
    }

    pub fn zero() -> Self {
        AlgebraElement {
            m: CycMatrix::zeros(2, 2),
        }
    }

    /// H = [[i, 0], [0, −i]].
    pub fn h() -> Self {
        let mut m = CycMatrix::zeros(2, 2);
        m[(0, 0)] = CycNum::i();
        m[(1, 1)] = -CycNum::i();
        AlgebraElement { m }
    }

    /// X = [[0, 1], [−1, 0]].
    pub fn x() -> Self {
        let mut m = CycMatrix::zeros(2, 2);
        m[(0, 1)] = CycNum::one();
        m[(1, 0)] = CycNum::from_int(-1);
        AlgebraElement { m }
    }

    /// Y = [[0, i], [i, 0]].
    pub fn y() -> Self {
        let mut m = CycMatrix::zeros(2, 2);
        m[(0, 1)] = CycNum::i();
        m[(1, 0)] = CycNum::i();
        AlgebraElement { m }
    }

    /// The −B-orthonormal frame X₁ = H/2√2, X₂ = X/2√2, X₃ = Y/2√2.
    pub fn orthonormal_frame() -> [AlgebraElement; 3] {
        // 1/(2√2) = √2/4
        let inv = CycNum::sqrt2().scale_rational(&Rational::new(1, 4));
        [
            Self::h().scale_real(&inv),
            Self::x().scale_real(&inv),
            Self::y().scale_real(&inv),
        ]
    }

    pub fn matrix(&self) -> &CycMatrix {
        &self.m
    }

    /// Scaling by a real field element keeps the result in su(2).
    pub fn scale_real(&self, s: &CycNum) -> AlgebraElement {
        debug_assert!(s.is_real());
        AlgebraElement { m: self.m.scale(s) }
    }

    pub fn bracket(&self, rhs: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            m: self.m.mul(&rhs.m).sub(&rhs.m.mul(&self.m)),
        }
    }

    /// Ad(g)ξ = gξg⁻¹.
    pub fn adjoint_by(&self, g: &GroupElement) -> AlgebraElement {
        AlgebraElement {
            m: g.matrix().mul(&self.m).mul(g.inverse().matrix()),
        }
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}; {}, {}]",
            self.m[(0, 0)],
            self.m[(0, 1)],
            self.m[(1, 0)],
            self.m[(1, 1)]
        )
    }
}

/// Degree-k homogeneous polynomial in z₁, z₂; coefficient of z₁^{k−j} z₂^j
/// at index j.
#[derive(Clone, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<CycNum>,
}

impl BinaryForm {
    pub fn new(degree: usize, coeffs: Vec<CycNum>) -> Result<Self, RepError> {
        if coeffs.len() != degree + 1 {
            return Err(RepError::BadCoefficientCount {
                got: coeffs.len(),
                expected: degree + 1,
            });
        }
        Ok(BinaryForm { degree, coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            degree,
            coeffs: vec![CycNum::zero(); degree + 1],
        }
    }

    /// z₁^{k−j} z₂^j.
    pub fn monomial(degree: usize, j: usize) -> Self {
        let mut f = Self::zero(degree);
        f.coeffs[j] = CycNum::one();
        f
    }

    /// The orbit basepoint z₁³ + z₂³.
    pub fn cubic_basepoint() -> Self {
        let mut f = Self::zero(3);
        f.coeffs[0] = CycNum::one();
        f.coeffs[3] = CycNum::one();
        f
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(CycNum::is_zero)
    }

    pub fn scale(&self, s: &CycNum) -> BinaryForm {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, rhs: &BinaryForm) -> BinaryForm {
        assert_eq!(self.degree, rhs.degree);
        BinaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(rhs.coeffs.iter())
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl fmt::Debug for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BinaryForm(deg {}; {:?})", self.degree, self.coeffs)
    }
}

fn binomial(n: usize, t: usize) -> Rational {
    let mut acc = BigInt::one();
    for i in 0..t {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Rational::from_bigint(acc)
}

/// Coefficients of (c₁ z₁ + c₂ z₂)^n in the monomial basis.
fn linear_form_power(c1: &CycNum, c2: &CycNum, n: usize) -> Vec<CycNum> {
    (0..=n)
        .map(|t| {
            let coeff = binomial(n, t);
            let term = c1.pow((n - t) as u32) * c2.pow(t as u32);
            term.scale_rational(&coeff)
        })
        .collect()
}

/// Matrix of ρ_k(g) on the monomial basis: column j holds the coefficients
/// of (g⁻¹z)₁^{k−j} (g⁻¹z)₂^j.
pub fn sym_power(g: &GroupElement, k: usize) -> CycMatrix {
    let gi = g.inverse();
    let gi = gi.matrix();
    let (d, mb) = (gi[(0, 0)].clone(), gi[(0, 1)].clone());
    let (mc, a) = (gi[(1, 0)].clone(), gi[(1, 1)].clone());
    let mut out = CycMatrix::zeros(k + 1, k + 1);
    for j in 0..=k {
        let p1 = linear_form_power(&d, &mb, k - j);
        let p2 = linear_form_power(&mc, &a, j);
        for (t1, a1) in p1.iter().enumerate() {
            if a1.is_zero() {
                continue;
            }
            for (t2, a2) in p2.iter().enumerate() {
                if a2.is_zero() {
                    continue;
                }
                out[(t1 + t2, j)] += &(a1 * a2);
            }
        }
    }
    out
}

/// ρ_k(g) applied to a form.
pub fn apply_sym(g: &GroupElement, f: &BinaryForm) -> BinaryForm {
    let m = sym_power(g, f.degree());
    BinaryForm {
        degree: f.degree(),
        coeffs: m.mul_vec(f.coeffs()),
    }
}

/// Matrix of dρ_k(ξ), the exact first-order term of f((I − tξ)z).
///
/// For ξ = [[p, q], [r, s]]:
///   dρ(ξ) e_j = −((k−j)p + js) e_j − (k−j)q e_{j+1} − j r e_{j−1}.
pub fn algebra_action(xi: &AlgebraElement, k: usize) -> CycMatrix {
    let m = xi.matrix();
    let (p, q) = (m[(0, 0)].clone(), m[(0, 1)].clone());
    let (r, s) = (m[(1, 0)].clone(), m[(1, 1)].clone());
    let mut out = CycMatrix::zeros(k + 1, k + 1);
    for j in 0..=k {
        let kj = CycNum::from_int((k - j) as i64);
        let jj = CycNum::from_int(j as i64);
        out[(j, j)] = -(&(&kj * &p) + &(&jj * &s));
        if j < k {
            out[(j + 1, j)] = -(&kj * &q);
        }
        if j >= 1 {
            out[(j - 1, j)] = -(&jj * &r);
        }
    }
    out
}

/// B(ξ, η) = 4 Tr(ξη). Symmetric; −B is positive definite on su(2).
pub fn killing_form(xi: &AlgebraElement, eta: &AlgebraElement) -> CycNum {
    xi.matrix()
        .mul(eta.matrix())
        .trace()
        .scale_rational(&Rational::from_int(4))
}

/// Casimir eigenvalue of Δ_{−B} on matrix coefficients of ρ_k, computed from
/// the Killing-form-induced product on weights rather than hard-coded: for
/// weights λ(H) = i·l and μ(H) = i·m, (λ, μ) = −l·m / B(H,H), and the
/// eigenvalue is (μ_ρ + α⁺, μ_ρ) with μ_ρ(H) = ik, α⁺(H) = 2i.
/// Closed form: k/4 + k²/8.
pub fn casimir_eigenvalue(k: usize) -> Rational {
    let bhh = killing_form(&AlgebraElement::h(), &AlgebraElement::h())
        .to_rational()
        .expect("B(H,H) is rational");
    let k_rat = Rational::from_int(k as i64);
    let weight_product = |l: &Rational, m: &Rational| -> Rational { -(&(l * m) / &bhh) };
    weight_product(&(&k_rat + &Rational::from_int(2)), &k_rat)
}

/// Trace of ρ_k(g); a class function with character(identity) = k + 1.
pub fn character(g: &GroupElement, k: usize) -> CycNum {
    sym_power(g, k).trace()
}

/// Weights of the invariant Hermitian form on the monomial basis:
/// ⟨e_j, e_j⟩ = 1/binomial(k, j).
pub fn invariant_weights(k: usize) -> Vec<Rational> {
    (0..=k)
        .map(|j| binomial(k, j).inv().expect("binomial is nonzero"))
        .collect()
}
