//! The finite isotropy group F = ⟨a, b⟩, its action on the tangent space,
//! and the fixed subspaces V^F inside each symmetric power.
//!
//! Fixed spaces are computed uniformly as exact nullspaces of the stacked
//! generator constraints; the character average (1/|F|) Σ_g χ_k(g) serves as
//! an independent dimension oracle.

use crate::exactnum::{nullspace, CycMatrix, CycNum, Rational};
use crate::su2rep::{
    apply_sym, character, killing_form, sym_power, AlgebraElement, BinaryForm, GroupElement,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IsotropyError {
    #[error("closure exceeded cap {cap}; generators do not generate a small finite group")]
    ClosureCapExceeded { cap: usize },
    #[error("no generators supplied")]
    NoGenerators,
    #[error("element {element} does not stabilize the projective point")]
    NotStabilizer { element: String },
    #[error("stabilizer check requires a nonzero form")]
    ZeroForm,
    #[error("Ad({element}) does not preserve the splitting span(X1) + span(X2, X3)")]
    SplittingNotInvariant { element: String },
    #[error("Ad({element}) acts on span(X1) by {value}, not by a sign")]
    NotSignOnV1 { element: String, value: String },
    #[error("no element of the isotropy acts by -1 on span(X1); the two-summand splitting certificate fails")]
    V1Fixed,
    #[error("character average {value} for k = {k} is not a non-negative integer")]
    BadCharacterAverage { k: usize, value: String },
}

/// A finite subgroup of SU(2) as an explicit element list with verified
/// closure. Element order is the deterministic breadth-first closure order,
/// identity first.
#[derive(Clone)]
pub struct FiniteSubgroup {
    elements: Vec<GroupElement>,
    generators: Vec<GroupElement>,
}

impl FiniteSubgroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.iter().any(|e| e == g)
    }

    /// The group of the computation: ⟨a, b⟩, order 12.
    pub fn standard() -> Self {
        close_generators(
            &[GroupElement::generator_a(), GroupElement::generator_b()],
            DEFAULT_CLOSURE_CAP,
        )
        .expect("standard generators close at order 12")
    }
}

/// F has order 12; anything larger signals bad input.
pub const DEFAULT_CLOSURE_CAP: usize = 256;

/// Smallest product-closed set containing the generators; contains the
/// identity and, being finite, all inverses.
pub fn close_generators(
    gens: &[GroupElement],
    cap: usize,
) -> Result<FiniteSubgroup, IsotropyError> {
    if gens.is_empty() {
        return Err(IsotropyError::NoGenerators);
    }
    let mut elements = vec![GroupElement::identity()];
    let mut frontier = vec![GroupElement::identity()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for e in &frontier {
            for g in gens {
                let p = e.mul(g);
                if !elements.contains(&p) {
                    if elements.len() >= cap {
                        return Err(IsotropyError::ClosureCapExceeded { cap });
                    }
                    elements.push(p.clone());
                    next.push(p);
                }
            }
        }
        frontier = next;
    }
    let group = FiniteSubgroup {
        elements,
        generators: gens.to_vec(),
    };
    debug_assert!(group.verify_closure());
    Ok(group)
}

impl FiniteSubgroup {
    /// Full product-table and inverse check; quadratic in the order.
    pub fn verify_closure(&self) -> bool {
        self.elements.iter().all(|x| {
            self.contains(&x.inverse()) && self.elements.iter().all(|y| self.contains(&x.mul(y)))
        })
    }
}

/// For each g ∈ F, the scalar λ_g with ρ(g)p = λ_g p; errors naming the first
/// element that moves [p].
pub fn projective_stabilizer_check(
    group: &FiniteSubgroup,
    p: &BinaryForm,
) -> Result<Vec<CycNum>, IsotropyError> {
    if p.is_zero() {
        return Err(IsotropyError::ZeroForm);
    }
    let pivot = p
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero form has a nonzero coefficient");
    let pivot_inv = p.coeffs()[pivot]
        .inverse()
        .expect("pivot coefficient is nonzero");
    group
        .elements()
        .iter()
        .map(|g| {
            let image = apply_sym(g, p);
            let lambda = &image.coeffs()[pivot] * &pivot_inv;
            if image == p.scale(&lambda) {
                Ok(lambda)
            } else {
                Err(IsotropyError::NotStabilizer {
                    element: format!("{:?}", g),
                })
            }
        })
        .collect()
}

/// The isotropy decomposition su(2) = span(X₁) ⊕ span(X₂, X₃) with its
/// certificates: every Ad(g) preserves both summands, acts on span(X₁) by a
/// sign with Ad(g²) = +1, and some element acts by −1 (the splitting has no
/// fixed line).
pub struct IsotropySplitting {
    /// Ad(g) in the frame (X₁, X₂, X₃), aligned with `group.elements()`.
    ad_matrices: Vec<CycMatrix>,
    /// Sign of Ad(g) on span(X₁), aligned with `group.elements()`.
    v1_signs: Vec<i8>,
}

impl IsotropySplitting {
    pub fn ad_matrices(&self) -> &[CycMatrix] {
        &self.ad_matrices
    }

    pub fn v1_signs(&self) -> &[i8] {
        &self.v1_signs
    }
}

/// Matrix of Ad(g) in the −B-orthonormal frame (X₁, X₂, X₃); the coefficient
/// of X_j in Ad(g)X_i is −B(Ad(g)X_i, X_j).
pub fn adjoint_matrix(g: &GroupElement) -> CycMatrix {
    let frame = AlgebraElement::orthonormal_frame();
    let mut ad = CycMatrix::zeros(3, 3);
    for (i, xi) in frame.iter().enumerate() {
        let moved = xi.adjoint_by(g);
        for (j, xj) in frame.iter().enumerate() {
            ad[(j, i)] = -killing_form(&moved, xj);
        }
    }
    ad
}

pub fn isotropy_splitting(group: &FiniteSubgroup) -> Result<IsotropySplitting, IsotropyError> {
    let mut ad_matrices = Vec::with_capacity(group.order());
    let mut v1_signs = Vec::with_capacity(group.order());
    for g in group.elements() {
        let ad = adjoint_matrix(g);
        let off_block_zero = ad[(1, 0)].is_zero()
            && ad[(2, 0)].is_zero()
            && ad[(0, 1)].is_zero()
            && ad[(0, 2)].is_zero();
        if !off_block_zero {
            return Err(IsotropyError::SplittingNotInvariant {
                element: format!("{:?}", g),
            });
        }
        let sign = if ad[(0, 0)].is_one() {
            1
        } else if ad[(0, 0)] == CycNum::from_int(-1) {
            -1
        } else {
            return Err(IsotropyError::NotSignOnV1 {
                element: format!("{:?}", g),
                value: ad[(0, 0)].to_string(),
            });
        };
        ad_matrices.push(ad);
        v1_signs.push(sign);
    }
    if !v1_signs.contains(&-1) {
        return Err(IsotropyError::V1Fixed);
    }
    Ok(IsotropySplitting {
        ad_matrices,
        v1_signs,
    })
}

/// Exact basis of {v : ρ_k(g)v = v for all g ∈ F}. Fixing the generators
/// fixes the whole group, so the stacked system uses generators only.
pub struct FixedSubspace {
    pub k: usize,
    pub basis: Vec<BinaryForm>,
    pub dim: usize,
}

pub fn fixed_subspace(group: &FiniteSubgroup, k: usize) -> FixedSubspace {
    let identity = CycMatrix::identity(k + 1);
    let blocks: Vec<CycMatrix> = group
        .generators()
        .iter()
        .map(|g| sym_power(g, k).sub(&identity))
        .collect();
    let refs: Vec<&CycMatrix> = blocks.iter().collect();
    let stacked = CycMatrix::stack_vertical(&refs);
    let basis: Vec<BinaryForm> = nullspace(&stacked)
        .into_iter()
        .map(|v| BinaryForm::new(k, v).expect("nullspace vector has length k+1"))
        .collect();
    let dim = basis.len();
    FixedSubspace { k, basis, dim }
}

/// Independent dimension oracle: (1/|F|) Σ_g χ_k(g), which must be an exact
/// non-negative integer.
pub fn fixed_dim_oracle(group: &FiniteSubgroup, k: usize) -> Result<usize, IsotropyError> {
    let mut total = CycNum::zero();
    for g in group.elements() {
        total += &character(g, k);
    }
    let order_inv = Rational::new(1, group.order() as i64);
    let average = total.scale_rational(&order_inv);
    average
        .to_rational()
        .and_then(|r| if r.is_negative() { None } else { r.to_usize() })
        .ok_or_else(|| IsotropyError::BadCharacterAverage {
            k,
            value: average.to_string(),
        })
}

/// Restriction of a diagonalizable operator to the fixed subspace: checks the
/// subspace is invariant and returns the restriction matrix in the given
/// basis. Used to certify D = dρ(H)² preserves V^F.
pub fn restrict_to_fixed(op: &CycMatrix, fixed: &FixedSubspace) -> Option<CycMatrix> {
    use crate::exactnum::{in_span, solve};
    let basis_vecs: Vec<Vec<CycNum>> = fixed.basis.iter().map(|f| f.coeffs().to_vec()).collect();
    if fixed.dim == 0 {
        return Some(CycMatrix::zeros(0, 0));
    }
    // Coordinates are recovered by solving against dim independent rows of
    // the basis matrix.
    let dim = fixed.dim;
    let n = fixed.k + 1;
    let basis_mat = CycMatrix::from_fn(n, dim, |i, j| basis_vecs[j][i].clone());
    let (_, rows) = crate::exactnum::rref(&basis_mat.transpose());
    let square = CycMatrix::from_fn(dim, dim, |i, j| basis_mat[(rows[i], j)].clone());
    let mut restriction = CycMatrix::zeros(dim, dim);
    for (col, v) in basis_vecs.iter().enumerate() {
        let image = op.mul_vec(v);
        if !in_span(&basis_vecs, &image) {
            return None;
        }
        let rhs: Vec<CycNum> = rows.iter().map(|&r| image[r].clone()).collect();
        let coords = solve(&square, &rhs).ok()?;
        for (row, c) in coords.into_iter().enumerate() {
            restriction[(row, col)] = c;
        }
    }
    Some(restriction)
}

/// Generators of the closed-form fixed-space families, one per k mod 12
/// class: starting exponent k, k−1 or k−2, stepping by 3 down to k/2, with
/// symmetric partner and sign +1 for k ≡ 0 (mod 4), −1 for k ≡ 2 (mod 4).
/// Identically-zero entries (middle term with sign −1) are discarded.
/// Test oracle only; production uses the nullspace path.
pub fn fixed_family_generators(k: usize) -> Vec<BinaryForm> {
    if k % 2 == 1 {
        return Vec::new();
    }
    let offset = match k % 12 {
        0 | 6 => 0usize,
        2 | 8 => 1,
        4 | 10 => 2,
        _ => unreachable!(),
    };
    let sign = if k % 4 == 0 { 1i64 } else { -1 };
    let mut gens = Vec::new();
    if offset > k {
        return gens;
    }
    let mut l = k - offset;
    while 2 * l >= k {
        // z₁^l z₂^{k−l} ± z₁^{k−l} z₂^l, i.e. e_{k−l} ± e_l
        let mut f = BinaryForm::zero(k);
        let mut coeffs: Vec<CycNum> = f.coeffs().to_vec();
        coeffs[k - l] = &coeffs[k - l] + &CycNum::one();
        coeffs[l] = &coeffs[l] + &CycNum::from_int(sign);
        f = BinaryForm::new(k, coeffs).expect("length preserved");
        if !f.is_zero() {
            gens.push(f);
        }
        if l < 3 {
            break;
        }
        l -= 3;
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::same_span;
    use crate::su2rep::algebra_action;

    #[test]
    fn closure_of_standard_generators() {
        let f = FiniteSubgroup::standard();
        assert_eq!(f.order(), 12);
        assert!(f.verify_closure());
        assert!(f.contains(&GroupElement::minus_identity()));
        let a = GroupElement::generator_a();
        let b = GroupElement::generator_b();
        // a⁶ = I, b² = −I, bab⁻¹ = a⁻¹
        let mut a6 = GroupElement::identity();
        for _ in 0..6 {
            a6 = a6.mul(&a);
        }
        assert!(a6.is_identity());
        assert_eq!(b.mul(&b), GroupElement::minus_identity());
        assert_eq!(b.mul(&a).mul(&b.inverse()), a.inverse());
    }

    #[test]
    fn closure_of_trivial_and_central_generators() {
        let trivial = close_generators(&[GroupElement::identity()], 16).unwrap();
        assert_eq!(trivial.order(), 1);
        let pm = close_generators(&[GroupElement::minus_identity()], 16).unwrap();
        assert_eq!(pm.order(), 2);
    }

    #[test]
    fn closure_cap() {
        let result = close_generators(&[GroupElement::generator_a()], 3);
        assert!(matches!(
            result,
            Err(IsotropyError::ClosureCapExceeded { cap: 3 })
        ));
    }

    #[test]
    fn stabilizer_scalars() {
        let f = FiniteSubgroup::standard();
        let p = BinaryForm::cubic_basepoint();
        let scalars = projective_stabilizer_check(&f, &p).unwrap();
        assert_eq!(scalars[0], CycNum::one());
        // every scalar is a twelfth root of unity
        for s in &scalars {
            assert_eq!(s.pow(12), CycNum::one());
        }
        // a sits somewhere in the list with scalar −1
        let a = GroupElement::generator_a();
        let idx = f.elements().iter().position(|g| *g == a).unwrap();
        assert_eq!(scalars[idx], CycNum::from_int(-1));
        // b scales by ±i
        let b = GroupElement::generator_b();
        let idx = f.elements().iter().position(|g| *g == b).unwrap();
        assert_eq!(&scalars[idx] * &scalars[idx], CycNum::from_int(-1));
    }

    #[test]
    fn stabilizer_failure_is_detected() {
        // ⟨b⟩ has order 4 and stabilizes [p], but the full binary octahedral
        // overgroup would not; use a non-stabilizing form instead.
        let f = FiniteSubgroup::standard();
        let q = BinaryForm::monomial(3, 1); // z₁²z₂ is moved by b
        assert!(matches!(
            projective_stabilizer_check(&f, &q),
            Err(IsotropyError::NotStabilizer { .. })
        ));
        assert!(matches!(
            projective_stabilizer_check(&f, &BinaryForm::zero(3)),
            Err(IsotropyError::ZeroForm)
        ));
    }

    #[test]
    fn adjoint_action_on_h() {
        let h = AlgebraElement::h();
        let a = GroupElement::generator_a();
        let b = GroupElement::generator_b();
        assert_eq!(h.adjoint_by(&a), h);
        assert_eq!(h.adjoint_by(&b).matrix(), &h.matrix().neg());
        assert_eq!(h.adjoint_by(&b.mul(&b)), h);
    }

    #[test]
    fn splitting_certificates() {
        let f = FiniteSubgroup::standard();
        let split = isotropy_splitting(&f).unwrap();
        assert_eq!(split.ad_matrices().len(), 12);
        assert!(split.v1_signs().contains(&-1));
        assert!(split.v1_signs().contains(&1));
        // Ad(g²) = +1 on span(X₁) for every g
        for (g, sign) in f.elements().iter().zip(split.v1_signs()) {
            let sq = g.mul(g);
            let idx = f.elements().iter().position(|x| *x == sq).unwrap();
            assert_eq!(split.v1_signs()[idx], 1);
            assert_eq!(sign * sign, 1);
        }
    }

    #[test]
    fn splitting_fails_for_trivial_isotropy() {
        let trivial = close_generators(&[GroupElement::identity()], 16).unwrap();
        assert!(matches!(
            isotropy_splitting(&trivial),
            Err(IsotropyError::V1Fixed)
        ));
    }

    #[test]
    fn fixed_subspace_small_degrees() {
        let f = FiniteSubgroup::standard();
        // k = 4: spanned by z₁²z₂²
        let fs = fixed_subspace(&f, 4);
        assert_eq!(fs.dim, 1);
        assert!(same_span(
            &[fs.basis[0].coeffs().to_vec()],
            &[BinaryForm::monomial(4, 2).coeffs().to_vec()],
        ));
        // k = 6: spanned by z₁⁶ − z₂⁶ = e₀ − e₆
        let fs = fixed_subspace(&f, 6);
        assert_eq!(fs.dim, 1);
        let mut expected = vec![CycNum::zero(); 7];
        expected[0] = CycNum::one();
        expected[6] = CycNum::from_int(-1);
        assert!(same_span(&[fs.basis[0].coeffs().to_vec()], &[expected]));
        // k = 2 and odd k are trivial
        assert_eq!(fixed_subspace(&f, 2).dim, 0);
        for k in [1, 3, 5, 7, 9] {
            assert_eq!(fixed_subspace(&f, k).dim, 0);
        }
    }

    #[test]
    fn oracle_values() {
        let f = FiniteSubgroup::standard();
        assert_eq!(fixed_dim_oracle(&f, 0).unwrap(), 1);
        assert_eq!(fixed_dim_oracle(&f, 8).unwrap(), 2);
        assert_eq!(fixed_dim_oracle(&f, 12).unwrap(), 3);
    }

    #[test]
    fn oracle_matches_nullspace_dims() {
        let f = FiniteSubgroup::standard();
        for k in 0..=24 {
            assert_eq!(
                fixed_subspace(&f, k).dim,
                fixed_dim_oracle(&f, k).unwrap(),
                "dimension mismatch at k = {}",
                k
            );
        }
    }

    #[test]
    fn full_group_fixes_basis_vectors() {
        let f = FiniteSubgroup::standard();
        for k in [4, 6, 8, 12] {
            let fs = fixed_subspace(&f, k);
            for v in &fs.basis {
                for g in f.elements() {
                    assert_eq!(&apply_sym(g, v), v);
                }
            }
        }
    }

    #[test]
    fn family_generators_match_computed_spans() {
        let f = FiniteSubgroup::standard();
        for k in [4usize, 6, 8, 10, 12, 14, 16, 18] {
            let fs = fixed_subspace(&f, k);
            let family = fixed_family_generators(k);
            assert!(!family.is_empty(), "family at k = {} is empty", k);
            let a: Vec<Vec<CycNum>> = fs.basis.iter().map(|b| b.coeffs().to_vec()).collect();
            let b: Vec<Vec<CycNum>> = family.iter().map(|b| b.coeffs().to_vec()).collect();
            assert!(same_span(&a, &b), "span mismatch at k = {}", k);
        }
    }

    #[test]
    fn d_operator_preserves_fixed_subspace() {
        let f = FiniteSubgroup::standard();
        let h = AlgebraElement::h();
        for k in [4usize, 6, 8, 12, 16] {
            let fs = fixed_subspace(&f, k);
            let d = algebra_action(&h, k);
            let d2 = d.mul(&d);
            assert!(
                restrict_to_fixed(&d2, &fs).is_some(),
                "dρ(H)² does not preserve V^F at k = {}",
                k
            );
        }
    }
}
