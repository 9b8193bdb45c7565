//! Linear-algebra verification of G2 forms on a 7-dimensional space: the
//! induced metric through i(x)φ ∧ i(y)φ ∧ φ = 6 g(x,y) vol, definiteness,
//! basis changes and compatible involutions.
//!
//! Membership in the open GL(7)-orbit of the standard 3-form is decided by
//! definiteness (of either sign) of the 7-form-valued bilinear form b: GL(7)
//! contains orientation-reversing maps, so the criterion is orientation-free.

use crate::cdga::CdgaMorphism;
use crate::exterior::{Form, Monomial};
use crate::field::FieldElement;
use crate::linalg::Matrix;
use num_traits::Zero;

pub const AMBIENT: u8 = 7;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum G2Error {
    #[error("expected ambient dimension 7, got {0}")]
    WrongAmbient(u8),
    #[error("expected a homogeneous 3-form")]
    WrongDegree,
    #[error("change-of-basis matrix is singular")]
    SingularMatrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    Positive,
    Negative,
}

/// Outcome of the Gram-matrix computation for a 3-form φ.
#[derive(Clone, Debug)]
pub struct G2Report {
    /// b_{ij} defined by i(e_i)φ ∧ i(e_j)φ ∧ φ = b_{ij}·e^{1…7}; symmetric.
    pub gram: Matrix<FieldElement>,
    pub det: FieldElement,
    /// Present exactly when b is (positive or negative) definite.
    pub definiteness: Option<Definiteness>,
    /// c⁹ = det(b)/6⁷ for the conformal normalization b = 6c·g.
    pub scale_ninth: FieldElement,
    /// The conformal factor c, when a ninth root exists in the field.
    pub conformal_factor: Option<FieldElement>,
    /// g = b/(6c), when c is available.
    pub metric: Option<Matrix<FieldElement>>,
}

impl G2Report {
    pub fn is_g2(&self) -> bool {
        self.definiteness.is_some()
    }
}

fn check_input(phi: &Form) -> Result<(), G2Error> {
    if phi.ambient() != AMBIENT {
        return Err(G2Error::WrongAmbient(phi.ambient()));
    }
    if phi.degree() != Some(3) && !phi.is_zero() {
        return Err(G2Error::WrongDegree);
    }
    Ok(())
}

fn basis_vector(i: u8) -> Vec<FieldElement> {
    let mut v = vec![FieldElement::zero(); AMBIENT as usize];
    v[(i - 1) as usize] = FieldElement::from_int(1);
    v
}

/// Computes the Gram matrix of a 3-form against the reference volume e^{1…7},
/// decides definiteness exactly via leading principal minors, and reports the
/// conformal metric whenever the ninth root of det(b)/6⁷ lies in the field.
pub fn gram_from_threeform(phi: &Form) -> Result<G2Report, G2Error> {
    check_input(phi)?;
    let top = Monomial::normalize(&[1, 2, 3, 4, 5, 6, 7]).unwrap().0;
    let n = AMBIENT as usize;
    let mut gram = Matrix::zero(n, n);
    let contractions: Vec<Form> = (1..=AMBIENT)
        .map(|i| phi.contract(&basis_vector(i)).unwrap())
        .collect();
    for i in 0..n {
        for j in i..n {
            let w = contractions[i]
                .wedge(&contractions[j])
                .unwrap()
                .wedge(phi)
                .unwrap();
            let c = w.coeff(&top);
            gram[(i, j)] = c.clone();
            gram[(j, i)] = c;
        }
    }
    let minors = gram.leading_principal_minors();
    let det = minors[n - 1].clone();
    let signs: Vec<i8> = minors.iter().map(FieldElement::sign).collect();
    let definiteness = if signs.iter().all(|&s| s == 1) {
        Some(Definiteness::Positive)
    } else if signs
        .iter()
        .enumerate()
        .all(|(k, &s)| s == if k % 2 == 0 { -1 } else { 1 })
    {
        Some(Definiteness::Negative)
    } else {
        None
    };
    // c⁹ = det(b)/6⁷
    let six_pow7 = FieldElement::from_int(6i64.pow(7));
    let scale_ninth = det.clone() * six_pow7.invert().unwrap();
    let conformal_factor = scale_ninth.ninth_root();
    let metric = conformal_factor.as_ref().and_then(|c| {
        if c.is_zero() {
            return None;
        }
        let inv = (FieldElement::from_int(6) * c.clone()).invert().unwrap();
        let mut g = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = gram[(i, j)].mul_ref(&inv);
            }
        }
        Some(g)
    });
    Ok(G2Report {
        gram,
        det,
        definiteness,
        scale_ninth,
        conformal_factor,
        metric,
    })
}

/// Exact membership test for the open GL(7)-orbit of the standard 3-form.
pub fn is_g2_form(phi: &Form) -> Result<bool, G2Error> {
    Ok(gram_from_threeform(phi)?.is_g2())
}

/// Pullback of φ through the substitution v^i = Σ_j A_{ij} e^j applied to
/// every monomial index.
pub fn change_of_basis(phi: &Form, a: &Matrix<FieldElement>) -> Result<Form, G2Error> {
    check_input(phi)?;
    assert_eq!(a.rows(), AMBIENT as usize);
    assert_eq!(a.cols(), AMBIENT as usize);
    if a.det().is_zero() {
        return Err(G2Error::SingularMatrix);
    }
    let images: Vec<Form> = (0..AMBIENT as usize)
        .map(|i| {
            let mut f = Form::zero(AMBIENT);
            for j in 0..AMBIENT as usize {
                let c = a[(i, j)].clone();
                if !c.is_zero() {
                    let mono = Monomial::normalize(&[j as u8 + 1]).unwrap().0;
                    f = f.add(&Form::from_term(AMBIENT, mono, c).unwrap());
                }
            }
            f
        })
        .collect();
    let substitution = CdgaMorphism::new(AMBIENT, AMBIENT, images).expect("degree-1 images");
    Ok(substitution.apply(phi))
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum G2InvolutionError {
    #[error("{0}")]
    Input(#[from] G2Error),
    #[error("signs length {0} is not 7")]
    SignsLength(usize),
    #[error("sign entries must be +1 or -1")]
    BadSign,
    #[error("the identity involution is excluded")]
    IdentityInvolution,
    #[error("involution does not preserve the form; first failing monomial {0}")]
    DoesNotPreserve(String),
}

/// Eigenstructure report for a diagonal involution preserving a G2 form.
#[derive(Clone, Debug, PartialEq)]
pub struct G2InvolutionReport {
    pub fixed_dim: usize,
    pub anti_dim: usize,
    /// Indices (1-based) of the +1 eigenvectors.
    pub fixed_indices: Vec<u8>,
    /// Coefficient of φ on the fixed-space monomial.
    pub restricted_coefficient: FieldElement,
    /// Whether the fixed/anti dimensions are (3, 4).
    pub dims_are_3_4: bool,
    /// φ(f₁,f₂,f₃)² = det(g|fixed): the restriction of φ to the fixed space
    /// is ± the unit volume of the induced metric. `None` when no exact
    /// metric is available.
    pub unit_volume_identity: Option<bool>,
}

/// Verifies J*φ = φ for the diagonal involution with the given signs and
/// reports its eigenstructure against the metric induced by φ.
pub fn check_g2_involution(
    phi: &Form,
    signs: &[i8],
) -> Result<G2InvolutionReport, G2InvolutionError> {
    check_input(phi)?;
    if signs.len() != AMBIENT as usize {
        return Err(G2InvolutionError::SignsLength(signs.len()));
    }
    if signs.iter().any(|&s| s != 1 && s != -1) {
        return Err(G2InvolutionError::BadSign);
    }
    if signs.iter().all(|&s| s == 1) {
        return Err(G2InvolutionError::IdentityInvolution);
    }
    for (m, _) in phi.terms() {
        let sign: i8 = m
            .indices()
            .iter()
            .map(|&i| signs[(i - 1) as usize])
            .product();
        if sign < 0 {
            return Err(G2InvolutionError::DoesNotPreserve(m.to_string()));
        }
    }
    let fixed_indices: Vec<u8> = (1..=AMBIENT)
        .filter(|&i| signs[(i - 1) as usize] == 1)
        .collect();
    let fixed_dim = fixed_indices.len();
    let anti_dim = AMBIENT as usize - fixed_dim;
    let mut restricted_coefficient = FieldElement::zero();
    let mut unit_volume_identity = None;
    if fixed_dim == 3 {
        let fixed_mono = Monomial::normalize(&fixed_indices).unwrap().0;
        restricted_coefficient = phi.coeff(&fixed_mono);
        let report = gram_from_threeform(phi)?;
        if let Some(metric) = &report.metric {
            let mut sub = Matrix::zero(3, 3);
            for (a, &i) in fixed_indices.iter().enumerate() {
                for (b, &j) in fixed_indices.iter().enumerate() {
                    sub[(a, b)] = metric[((i - 1) as usize, (j - 1) as usize)].clone();
                }
            }
            let det_fixed = sub.det();
            let squared = restricted_coefficient.mul_ref(&restricted_coefficient);
            unit_volume_identity = Some(squared == det_fixed);
        }
    }
    Ok(G2InvolutionReport {
        fixed_dim,
        anti_dim,
        fixed_indices,
        restricted_coefficient,
        dims_are_3_4: fixed_dim == 3 && anti_dim == 4,
        unit_volume_identity,
    })
}

/// The standard 3-form v^{127} + v^{347} + v^{567} + v^{135} − v^{236}
/// − v^{146} − v^{245} in its own basis.
pub fn standard_threeform() -> Form {
    let one = FieldElement::from_int(1);
    Form::from_terms(
        AMBIENT,
        &[
            (&[1, 2, 7], one.clone()),
            (&[3, 4, 7], one.clone()),
            (&[5, 6, 7], one.clone()),
            (&[1, 3, 5], one.clone()),
            (&[2, 3, 6], -one.clone()),
            (&[1, 4, 6], -one.clone()),
            (&[2, 4, 5], -one),
        ],
    )
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cdga::parse_form;
    use crate::field::rat;

    #[test]
    fn standard_form_gram_is_six_identity() {
        let report = gram_from_threeform(&standard_threeform()).unwrap();
        let six = FieldElement::from_int(6);
        for i in 0..7 {
            for j in 0..7 {
                let expected = if i == j {
                    six.clone()
                } else {
                    FieldElement::zero()
                };
                assert_eq!(report.gram[(i, j)], expected);
            }
        }
        assert_eq!(report.definiteness, Some(Definiteness::Positive));
        assert_eq!(report.conformal_factor, Some(FieldElement::from_int(1)));
        let g = report.metric.unwrap();
        assert_eq!(g, Matrix::identity(7));
    }

    #[test]
    fn negated_form_is_still_g2() {
        let report = gram_from_threeform(&standard_threeform().neg()).unwrap();
        assert_eq!(report.definiteness, Some(Definiteness::Negative));
        assert!(report.is_g2());
        let minus_six = FieldElement::from_int(-6);
        for i in 0..7 {
            assert_eq!(report.gram[(i, i)], minus_six);
        }
    }

    #[test]
    fn single_monomial_is_not_g2() {
        let e123 = parse_form(7, "e123").unwrap();
        let report = gram_from_threeform(&e123).unwrap();
        assert!(report.det.is_zero());
        assert!(!report.is_g2());
        assert!(!is_g2_form(&Form::zero(7)).unwrap());
    }

    #[test]
    fn small_perturbation_stays_in_the_orbit() {
        let phi = standard_threeform().add(&parse_form(7, "1/10*e123").unwrap());
        assert!(is_g2_form(&phi).unwrap());
    }

    #[test]
    fn identity_change_of_basis() {
        let phi = standard_threeform();
        assert_eq!(change_of_basis(&phi, &Matrix::identity(7)).unwrap(), phi);
    }

    #[test]
    fn diagonal_rescale_scales_cubically() {
        let phi = standard_threeform();
        let lambda = FieldElement::from_rational(rat(3, 2));
        let mut a = Matrix::zero(7, 7);
        for i in 0..7 {
            a[(i, i)] = lambda.clone();
        }
        let scaled = change_of_basis(&phi, &a).unwrap();
        let cubed = lambda.clone() * lambda.clone() * lambda;
        assert_eq!(scaled, phi.scale(&cubed));
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let phi = standard_threeform();
        assert_eq!(
            change_of_basis(&phi, &Matrix::zero(7, 7)),
            Err(G2Error::SingularMatrix)
        );
    }

    #[test]
    fn gram_transforms_as_det_times_gtg() {
        // b(change_of_basis(φ0, A)) = 6·det(A)·AᵀA for invertible A
        let phi = standard_threeform();
        let entries: [[i64; 7]; 7] = [
            [1, 2, 0, 0, 1, 0, 0],
            [0, 1, 0, 0, 0, 0, 1],
            [0, 0, 1, 0, 0, 2, 0],
            [1, 0, 0, 1, 0, 0, 0],
            [0, 0, 0, 0, 1, 0, 2],
            [0, 1, 0, 0, 0, 1, 0],
            [0, 0, 1, 0, 0, 0, 1],
        ];
        let mut a = Matrix::zero(7, 7);
        for i in 0..7 {
            for j in 0..7 {
                a[(i, j)] = FieldElement::from_int(entries[i][j]);
            }
        }
        let det = a.det();
        assert!(!det.is_zero());
        let pulled = change_of_basis(&phi, &a).unwrap();
        let report = gram_from_threeform(&pulled).unwrap();
        for i in 0..7 {
            for j in 0..7 {
                let mut ata = FieldElement::zero();
                for k in 0..7 {
                    ata += a[(k, i)].mul_ref(&a[(k, j)]);
                }
                let expected = FieldElement::from_int(6).mul_ref(&det).mul_ref(&ata);
                assert_eq!(report.gram[(i, j)], expected, "entry ({i},{j})");
            }
        }
        assert!(report.is_g2());
    }

    #[test]
    fn involution_on_the_standard_form() {
        let phi = standard_threeform();
        let report = check_g2_involution(&phi, &[-1, -1, 1, 1, -1, -1, 1]).unwrap();
        assert!(report.dims_are_3_4);
        assert_eq!(report.fixed_indices, vec![3, 4, 7]);
        // φ0 restricts to v^{347} on the fixed space; the metric is the identity
        assert_eq!(report.restricted_coefficient, FieldElement::from_int(1));
        assert_eq!(report.unit_volume_identity, Some(true));
    }

    #[test]
    fn involution_rejections() {
        let phi = standard_threeform();
        assert_eq!(
            check_g2_involution(&phi, &[1; 7]),
            Err(G2InvolutionError::IdentityInvolution)
        );
        // signs (+,+,+,+,-,-,-) flip the v^{127} term
        let err = check_g2_involution(&phi, &[1, 1, 1, 1, -1, -1, -1]).unwrap_err();
        assert_eq!(err, G2InvolutionError::DoesNotPreserve("e127".into()));
    }
}
