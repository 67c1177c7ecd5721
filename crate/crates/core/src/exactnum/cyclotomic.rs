//! The cyclotomic field Q(ζ₂₄).
//!
//! ζ = e^{2πi/24} has minimal polynomial Φ₂₄(x) = x⁸ − x⁴ + 1, so elements
//! are stored as dense coefficient vectors over the power basis ζ⁰,…,ζ⁷ and
//! reduced eagerly after every product. This one field holds every constant
//! the computation touches: i = ζ⁶, e^{iπ/3} = ζ⁴, √2 = ζ³ + ζ⁻³,
//! √3 = ζ² + ζ⁻², and the real subfield Q(√2, √3) where all metric
//! coefficients live.

use super::rational::Rational;
use num_bigint::BigInt;
use num_traits::Zero;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

/// Degree of Q(ζ₂₄) over Q.
pub const FIELD_DEGREE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExactError {
    #[error("division by zero in Q(zeta24)")]
    DivisionByZero,
    #[error("square root of {0} is not available in Q(zeta24) (kernel not in {{1,2,3,6}})")]
    UnknownSquareRoot(String),
    #[error("square root of a negative quantity {0}")]
    NegativeSquareRoot(String),
    #[error("square root of an irrational element {0} is not supported")]
    IrrationalSquareRoot(String),
    #[error("inner product {0} is not in the real subfield")]
    NonRealInnerProduct(String),
    #[error("vectors are not linearly independent (zero norm encountered)")]
    DependentVectors,
    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("linear system is singular")]
    SingularSystem,
}

/// Element of Q(ζ₂₄) in the power basis; the representation is unique.
#[derive(Clone, PartialEq, Eq)]
pub struct CycNum {
    coeffs: [Rational; 8],
}

fn zero_coeffs() -> [Rational; 8] {
    std::array::from_fn(|_| Rational::zero())
}

/// ζ^m for m = 0..24, reduced to the power basis.
/// ζ⁸ = ζ⁴ − 1 and ζ¹² = −1 drive the whole table.
fn zeta_power_table() -> &'static [CycNum; 24] {
    static TABLE: OnceLock<[CycNum; 24]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table: [CycNum; 24] = std::array::from_fn(|_| CycNum::zero());
        for (m, entry) in table.iter_mut().enumerate() {
            let mut c = zero_coeffs();
            match m {
                0..=7 => c[m] = Rational::one(),
                8..=11 => {
                    c[m - 4] = Rational::one();
                    c[m - 8] = -Rational::one();
                }
                _ => {
                    // ζ^{12+r} = −ζ^r
                    let r = m - 12;
                    if r < 8 {
                        c[r] = -Rational::one();
                    } else {
                        c[r - 4] = -Rational::one();
                        c[r - 8] = Rational::one();
                    }
                }
            }
            *entry = CycNum { coeffs: c };
        }
        table
    })
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum {
            coeffs: zero_coeffs(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut c = zero_coeffs();
        c[0] = r;
        CycNum { coeffs: c }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_int(n))
    }

    /// ζ^m for any integer exponent, reduced.
    pub fn zeta(m: i64) -> Self {
        let idx = m.rem_euclid(24) as usize;
        zeta_power_table()[idx].clone()
    }

    /// i = ζ⁶.
    pub fn i() -> Self {
        Self::zeta(6)
    }

    /// √2 = ζ³ + ζ⁻³.
    pub fn sqrt2() -> Self {
        Self::zeta(3) + Self::zeta(-3)
    }

    /// √3 = ζ² + ζ⁻².
    pub fn sqrt3() -> Self {
        Self::zeta(2) + Self::zeta(-2)
    }

    /// √6 = √2·√3.
    pub fn sqrt6() -> Self {
        Self::sqrt2() * Self::sqrt3()
    }

    pub fn coeff(&self, j: usize) -> &Rational {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// Galois conjugation ζ ↦ ζ⁻¹; restricts to complex conjugation under the
    /// standard embedding, and fixes exactly the real subfield.
    pub fn conj(&self) -> Self {
        let table = zeta_power_table();
        let mut out = CycNum::zero();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out += &table[(24 - j) % 24].scale(c);
        }
        out
    }

    fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return CycNum::zero();
        }
        CycNum {
            coeffs: std::array::from_fn(|j| &self.coeffs[j] * r),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(r)
    }

    pub fn is_real(&self) -> bool {
        *self == self.conj()
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    /// (x + x̄)/2, an element of the real subfield.
    pub fn re(&self) -> Self {
        (self.clone() + self.conj()).scale(&Rational::new(1, 2))
    }

    /// (x − x̄)/2i, an element of the real subfield (e.g. Im(i) = 1).
    pub fn im(&self) -> Self {
        // 1/(2i) = -i/2 = -ζ⁶/2
        let half_over_i = Self::zeta(6).scale(&Rational::new(-1, 2));
        (self.clone() - self.conj()) * half_over_i
    }

    /// Multiplicative inverse, by solving the 8×8 rational system
    /// (multiplication-by-self matrix) · y = e₀.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        // Column j of the multiplication matrix is self · ζ^j in the basis.
        let table = zeta_power_table();
        let mut mat: Vec<[Rational; 8]> = vec![zero_coeffs(); 8];
        for j in 0..8 {
            let col = self * &table[j];
            for (i, row) in mat.iter_mut().enumerate() {
                row[j] = col.coeffs[i].clone();
            }
        }
        let mut rhs = zero_coeffs();
        rhs[0] = Rational::one();
        let sol = solve8(mat, rhs)?;
        Ok(CycNum { coeffs: sol })
    }

    /// Floating-point value under ζ ↦ e^{2πi/24}; report annotations only,
    /// never part of a decision.
    pub fn approx(&self) -> (f64, f64) {
        let (mut re, mut im) = (0.0_f64, 0.0_f64);
        for (j, c) in self.coeffs.iter().enumerate() {
            let angle = 2.0 * std::f64::consts::PI * (j as f64) / 24.0;
            let v = c.to_f64();
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut result = CycNum::one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                result = result * base.clone();
            }
            base = base.clone() * base;
            exp >>= 1;
        }
        result
    }
}

/// Gaussian elimination for the 8×8 rational systems behind field inversion.
fn solve8(
    mut mat: Vec<[Rational; 8]>,
    mut rhs: [Rational; 8],
) -> Result<[Rational; 8], ExactError> {
    let n = 8;
    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !mat[r][col].is_zero())
            .ok_or(ExactError::SingularSystem)?;
        mat.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        let inv = mat[col][col].inv().expect("pivot is nonzero");
        for x in mat[col].iter_mut() {
            *x *= &inv;
        }
        rhs[col] *= &inv;
        for r in 0..n {
            if r == col || mat[r][col].is_zero() {
                continue;
            }
            let f = mat[r][col].clone();
            let pivot_row = mat[col].clone();
            for (x, p) in mat[r].iter_mut().zip(pivot_row.iter()) {
                let t = p * &f;
                *x -= &t;
            }
            let t = &rhs[col] * &f;
            rhs[r] -= &t;
        }
    }
    Ok(rhs)
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        CycNum {
            coeffs: std::array::from_fn(|j| &self.coeffs[j] + &rhs.coeffs[j]),
        }
    }
}

impl Add<&CycNum> for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        CycNum {
            coeffs: std::array::from_fn(|j| &self.coeffs[j] + &rhs.coeffs[j]),
        }
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a += b;
        }
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        CycNum {
            coeffs: std::array::from_fn(|j| &self.coeffs[j] - &rhs.coeffs[j]),
        }
    }
}

impl Sub<&CycNum> for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum {
            coeffs: std::array::from_fn(|j| &self.coeffs[j] - &rhs.coeffs[j]),
        }
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            *a -= b;
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            coeffs: std::array::from_fn(|j| -&self.coeffs[j]),
        }
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            coeffs: std::array::from_fn(|j| -&self.coeffs[j]),
        }
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

impl Mul<&CycNum> for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero();
        }
        // Convolution to degree 14, then reduction of ζ^m for m ≥ 8.
        let mut raw: Vec<Rational> = vec![Rational::zero(); 15];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += &(a * b);
            }
        }
        let table = zeta_power_table();
        let mut out = CycNum::zero();
        for (m, c) in raw.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if m < 8 {
                out.coeffs[m] += &c;
            } else {
                out += &table[m].scale(&c);
            }
        }
        out
    }
}

impl fmt::Display for CycNum {
    /// Canonical expression over the power basis, parseable by the CLI
    /// expression grammar, e.g. `1 - 1/2*zeta24^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign_negative = c.is_negative();
            if first {
                if sign_negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign_negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let power = match j {
                0 => String::new(),
                1 => "zeta24".to_string(),
                _ => format!("zeta24^{}", j),
            };
            if j == 0 {
                write!(f, "{}", mag.compact())?;
            } else if mag.is_one() {
                write!(f, "{}", power)?;
            } else {
                write!(f, "{}*{}", mag.compact(), power)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Square roots of positive rationals inside Q(ζ₂₄).
///
/// √(a/b) = √(ab)/b, and √(ab) lies in the field exactly when ab = m·t²
/// with squarefree kernel m ∈ {1, 2, 3, 6}. The kernel table below carries
/// the four roots and is verified by squaring on first use; anything outside
/// it aborts with a diagnostic rather than approximating.
fn kernel_roots() -> &'static [(u32, CycNum); 4] {
    static ROOTS: OnceLock<[(u32, CycNum); 4]> = OnceLock::new();
    ROOTS.get_or_init(|| {
        let entries = [
            (1u32, CycNum::one()),
            (2, CycNum::sqrt2()),
            (3, CycNum::sqrt3()),
            (6, CycNum::sqrt6()),
        ];
        for (m, root) in &entries {
            let square = root * root;
            assert_eq!(
                square,
                CycNum::from_int(i64::from(*m)),
                "square-root table entry for {} failed verification",
                m
            );
            assert!(root.is_real());
        }
        entries
    })
}

/// Exact square root of a non-negative rational, if it exists in Q(ζ₂₄).
pub fn sqrt_rational(q: &Rational) -> Result<CycNum, ExactError> {
    if q.is_zero() {
        return Ok(CycNum::zero());
    }
    if q.is_negative() {
        return Err(ExactError::NegativeSquareRoot(q.to_string()));
    }
    let ab: BigInt = q.numer() * q.denom();
    for (m, root) in kernel_roots() {
        let m_big = BigInt::from(*m);
        if (&ab % &m_big).is_zero() {
            let quotient = &ab / &m_big;
            let s = quotient.sqrt();
            if &s * &s == quotient {
                // √(a/b) = s·√m / b
                let scale = Rational::checked_new(s, q.denom().clone()).expect("denominator > 0");
                return Ok(root.scale(&scale));
            }
        }
    }
    Err(ExactError::UnknownSquareRoot(q.to_string()))
}

/// Exact square root of a real element. Only rational values are rooted;
/// the norms produced by the metric are all rational.
pub fn sqrt_real(x: &CycNum) -> Result<CycNum, ExactError> {
    match x.to_rational() {
        Some(q) => sqrt_rational(&q),
        None => Err(ExactError::IrrationalSquareRoot(x.to_string())),
    }
}
