//! Pairings on the split Grothendieck group of perfect complexes.
//!
//! The integer form of two complexes is the dimension of the stable hom
//! space between them; the graded form collects those dimensions against
//! all shifts of the right argument into a Laurent polynomial.  Formal sums
//! of complexes extend both forms bilinearly, and the hat element of an
//! Auslander-Reiten triangle is the alternating sum of its three corners,
//! which pairs to (1+t) against the complex the triangle ends at and to
//! zero against everything outside its shift orbit.

use thiserror::Error;

use crate::algebra::same_algebra;
use crate::ar::ARTriangle;
use crate::complex::{ComplexError, PerfectComplex};
use crate::homotopy::{
    complexes_isomorphic, decompose_complex, hom_space, minimize, HomotopyError,
};
use crate::laurent::{LaurentValue, RationalValue};

#[derive(Debug, Error)]
pub enum FormsError {
    #[error("the algebra is not symmetric")]
    NotSymmetric,
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
}

/// Integer combination of isomorphism classes of complexes.  Terms are kept
/// minimal and pairwise non-isomorphic with nonzero coefficients.
#[derive(Clone, Debug)]
pub struct FormalSum {
    terms: Vec<(PerfectComplex, i64)>,
}

impl FormalSum {
    pub fn new(raw: Vec<(PerfectComplex, i64)>) -> Result<FormalSum, FormsError> {
        let mut terms: Vec<(PerfectComplex, i64)> = Vec::new();
        for (c, coeff) in raw {
            if let Some((first, _)) = terms.first() {
                if !same_algebra(&first.alg, &c.alg) {
                    return Err(ComplexError::AlgebraMismatch.into());
                }
            }
            let min = minimize(&c).complex;
            if min.is_zero() || coeff == 0 {
                continue;
            }
            let mut merged = false;
            for (t, tc) in terms.iter_mut() {
                if complexes_isomorphic(t, &min, 0)? {
                    *tc += coeff;
                    merged = true;
                    break;
                }
            }
            if !merged {
                terms.push((min, coeff));
            }
        }
        terms.retain(|(_, c)| *c != 0);
        Ok(FormalSum { terms })
    }

    pub fn from_complex(c: &PerfectComplex) -> FormalSum {
        FormalSum { terms: vec![(minimize(c).complex, 1)] }
    }

    pub fn terms(&self) -> &[(PerfectComplex, i64)] {
        &self.terms
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.terms.iter().map(|(_, c)| c).sum()
    }
}

/// Integer form: dim of the stable hom space, extended bilinearly.
pub fn pairing(a: &FormalSum, b: &FormalSum) -> Result<i64, FormsError> {
    let mut total = 0i64;
    for (c, x) in &a.terms {
        for (d, y) in &b.terms {
            total += x * y * hom_space(c, d)?.stable_dim() as i64;
        }
    }
    Ok(total)
}

/// Graded form: the coefficient of t^i is the dimension of the stable hom
/// space into the i-th shift of the right argument.  Supports of perfect
/// complexes are finite, so only shifts with overlapping supports can
/// contribute and the sum is a Laurent polynomial.
pub fn pairing_t(c: &PerfectComplex, d: &PerfectComplex) -> Result<LaurentValue, FormsError> {
    if !same_algebra(&c.alg, &d.alg) {
        return Err(ComplexError::AlgebraMismatch.into());
    }
    let cm = minimize(c).complex;
    let dm = minimize(d).complex;
    let mut v = LaurentValue::zero();
    let (Some((clo, chi)), Some((dlo, dhi))) = (cm.support(), dm.support()) else {
        return Ok(v);
    };
    for i in (clo - dhi)..=(chi - dlo) {
        let dim = hom_space(&cm, &dm.shift(i))?.stable_dim();
        v.add_term(i, dim as i64);
    }
    Ok(v)
}

/// Graded form against a formal sum, extended linearly on the right.
pub fn pairing_t_sum(c: &PerfectComplex, b: &FormalSum) -> Result<LaurentValue, FormsError> {
    let mut v = LaurentValue::zero();
    for (d, y) in &b.terms {
        v = v.add(&pairing_t(c, d)?.scale(*y));
    }
    Ok(v)
}

/// The alternating sum [Z] + [X] - [Y] of a triangle, with the middle
/// decomposed into indecomposable summands.
pub fn hat_element(tri: &ARTriangle) -> Result<FormalSum, FormsError> {
    let mut terms = vec![(tri.z.clone(), 1), (tri.x.clone(), 1)];
    for part in decompose_complex(&tri.y, 0)? {
        terms.push((part.complex, -1));
    }
    FormalSum::new(terms)
}

/// Whether the graded form is Hermitian on the given pair: the pairing one
/// way equals the bar of the pairing the other way.
pub fn hermitian_check(c: &PerfectComplex, d: &PerfectComplex) -> Result<bool, FormsError> {
    if !c.alg.is_symmetric() {
        return Err(FormsError::NotSymmetric);
    }
    Ok(pairing_t(c, d)? == pairing_t(d, c)?.bar())
}

/// Graded pairing of a complex against the hat element of a triangle.
/// The result is t^i (1+t) when the complex is the i-th shift of the one
/// the triangle ends at, and zero when it lies outside that shift orbit.
pub fn dual_check(tri: &ARTriangle, m: &PerfectComplex) -> Result<LaurentValue, FormsError> {
    pairing_t_sum(m, &hat_element(tri)?)
}

/// Value of the graded form between the m-th and n-th complexes of a rim
/// chain, predicted from the self-pairing of the rim complex alone.  In a
/// shared component the base is first corrected by the overlap term
/// (1+t)(1-t^mu)/(1-t^(mu+1)) with mu = max(m,n).
pub fn predicted_pairing(
    m: usize,
    n: usize,
    base: &RationalValue,
    same_component: bool,
) -> RationalValue {
    let outer = LaurentValue::sigma(m).mul(&LaurentValue::sigma_bar(n));
    let inner = if same_component {
        let mu = m.max(n) as i64;
        let one = LaurentValue::one();
        let num = LaurentValue::sigma(1).mul(&one.sub(&LaurentValue::monomial(1, mu)));
        let den = one.sub(&LaurentValue::monomial(1, mu + 1));
        base.sub(&RationalValue::new(num, den))
    } else {
        base.clone()
    };
    inner.mul_laurent(&outer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::{ar_triangle_ending_at, projective_chain_complex};
    use crate::fixtures::{a3, qa2};

    fn stalk(alg: &crate::algebra::Alg) -> PerfectComplex {
        PerfectComplex::regular_stalk(alg, 0)
    }

    #[test]
    fn integer_form_of_the_regular_stalk_is_the_algebra_dimension() {
        let alg = a3();
        let s = FormalSum::from_complex(&stalk(&alg));
        assert_eq!(pairing(&s, &s).unwrap(), 3);
    }

    #[test]
    fn graded_form_prints_with_ascending_exponents() {
        let alg = a3();
        let c0 = stalk(&alg);
        assert_eq!(pairing_t(&c0, &c0).unwrap(), LaurentValue::constant(3));
        let c1 = projective_chain_complex(&alg, 0, 1).unwrap();
        assert_eq!(pairing_t(&c0, &c1).unwrap().to_string(), "2*t^-1 + 2");
    }

    #[test]
    fn graded_form_obeys_the_shift_laws() {
        let alg = a3();
        let c0 = stalk(&alg);
        let c1 = projective_chain_complex(&alg, 0, 1).unwrap();
        let base = pairing_t(&c0, &c1).unwrap();
        assert_eq!(pairing_t(&c0.shift(2), &c1).unwrap(), base.times_t_power(2));
        assert_eq!(pairing_t(&c0, &c1.shift(3)).unwrap(), base.times_t_power(-3));
        assert_eq!(
            pairing_t(&c0, &c0.shift(5)).unwrap(),
            LaurentValue::monomial(3, -5)
        );
    }

    #[test]
    fn forms_reject_mixed_algebras() {
        let a = stalk(&a3());
        let b = stalk(&qa2());
        assert!(matches!(
            pairing_t(&a, &b),
            Err(FormsError::Complex(ComplexError::AlgebraMismatch))
        ));
    }

    #[test]
    fn formal_sums_merge_isomorphic_terms() {
        let alg = a3();
        let s = FormalSum::new(vec![(stalk(&alg), 1), (stalk(&alg).shift(0), 2)]).unwrap();
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.coefficient_sum(), 3);
        let cancel = FormalSum::new(vec![(stalk(&alg), 1), (stalk(&alg), -1)]).unwrap();
        assert!(cancel.terms().is_empty());
    }

    #[test]
    fn hat_element_below_the_regular_stalk_has_three_classes() {
        let alg = a3();
        let tri = ar_triangle_ending_at(&stalk(&alg)).unwrap();
        let hat = hat_element(&tri).unwrap();
        assert_eq!(hat.terms().len(), 3);
        assert_eq!(hat.coefficient_sum(), 1);
        let negs: Vec<i64> =
            hat.terms().iter().filter(|(_, c)| *c < 0).map(|(_, c)| *c).collect();
        assert_eq!(negs, vec![-1]);
    }

    #[test]
    fn hat_element_pairs_to_one_plus_t_exactly_on_the_shift_orbit() {
        let alg = a3();
        let z = stalk(&alg);
        let tri = ar_triangle_ending_at(&z).unwrap();
        let one_plus_t = LaurentValue::sigma(1);
        assert_eq!(dual_check(&tri, &z).unwrap(), one_plus_t);
        assert_eq!(
            dual_check(&tri, &z.shift(1)).unwrap(),
            one_plus_t.times_t_power(1)
        );
        assert_eq!(dual_check(&tri, &tri.y).unwrap(), LaurentValue::zero());
        let deeper = projective_chain_complex(&alg, 0, 2).unwrap();
        assert_eq!(dual_check(&tri, &deeper).unwrap(), LaurentValue::zero());
    }

    #[test]
    fn integer_form_against_the_hat_element_detects_the_endpoint() {
        let alg = a3();
        let z = stalk(&alg);
        let tri = ar_triangle_ending_at(&z).unwrap();
        let hat = hat_element(&tri).unwrap();
        let probe = |w: &PerfectComplex| pairing(&FormalSum::from_complex(w), &hat).unwrap();
        assert_eq!(probe(&z), 1);
        assert_eq!(probe(&z.shift(-1)), 1);
        assert_eq!(probe(&z.shift(3)), 0);
        assert_eq!(probe(&tri.y), 0);
    }

    #[test]
    fn graded_form_is_hermitian_over_the_cube_algebra() {
        let alg = a3();
        let c0 = stalk(&alg);
        let c1 = projective_chain_complex(&alg, 0, 1).unwrap();
        assert!(hermitian_check(&c0, &c1).unwrap());
        assert!(hermitian_check(&c1, &c1.shift(1)).unwrap());
        let path = qa2();
        assert!(matches!(
            hermitian_check(&stalk(&path), &stalk(&path)),
            Err(FormsError::NotSymmetric)
        ));
    }

    #[test]
    fn predictions_match_the_computed_values_on_the_projective_component() {
        let alg = a3();
        let c0 = stalk(&alg);
        let base = RationalValue::from_laurent(&pairing_t(&c0, &c0).unwrap());
        let p01 = predicted_pairing(0, 1, &base, true);
        let c1 = projective_chain_complex(&alg, 0, 1).unwrap();
        assert!(p01.eq_laurent(&pairing_t(&c0, &c1).unwrap()));
        let p11 = predicted_pairing(1, 1, &base, true);
        let mut expected = LaurentValue::constant(4);
        expected.add_term(-1, 2);
        expected.add_term(1, 2);
        assert!(p11.eq_laurent(&expected));
        assert!(p11.eq_laurent(&pairing_t(&c1, &c1).unwrap()));
    }

    #[test]
    fn prediction_correction_vanishes_at_the_rim_corner() {
        let base = RationalValue::from_integer(3);
        assert_eq!(predicted_pairing(0, 0, &base, true), base);
        let off = predicted_pairing(2, 1, &base, false);
        let expected = LaurentValue::sigma(2).mul(&LaurentValue::sigma_bar(1)).scale(3);
        assert!(off.eq_laurent(&expected));
    }
}
