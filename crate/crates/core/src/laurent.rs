//! Integer Laurent polynomials in one variable t, with the bar involution
//! t -> t^-1, and unreduced rational values compared by cross-multiplication.
//!
//! These carry the graded pairings of perfect complexes.  No gcd reduction
//! is performed on rational values: every identity we need is an equality
//! of cross-products, so normal forms would be dead weight.

use std::collections::BTreeMap;
use std::fmt;

/// Finitely supported integer combination of powers of t.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentValue {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentValue {
    pub fn zero() -> LaurentValue {
        LaurentValue { coeffs: BTreeMap::new() }
    }

    pub fn constant(c: i64) -> LaurentValue {
        LaurentValue::monomial(c, 0)
    }

    pub fn one() -> LaurentValue {
        LaurentValue::constant(1)
    }

    pub fn monomial(coeff: i64, exp: i64) -> LaurentValue {
        let mut v = LaurentValue::zero();
        v.add_term(exp, coeff);
        v
    }

    /// 1 + t + ... + t^r.
    pub fn sigma(r: usize) -> LaurentValue {
        let mut v = LaurentValue::zero();
        for k in 0..=r as i64 {
            v.add_term(k, 1);
        }
        v
    }

    /// 1 + t^-1 + ... + t^-r.
    pub fn sigma_bar(r: usize) -> LaurentValue {
        LaurentValue::sigma(r).bar()
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        let c = self.coeffs.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, i64> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &LaurentValue) -> LaurentValue {
        let mut v = self.clone();
        for (&e, &c) in &other.coeffs {
            v.add_term(e, c);
        }
        v
    }

    pub fn neg(&self) -> LaurentValue {
        self.scale(-1)
    }

    pub fn sub(&self, other: &LaurentValue) -> LaurentValue {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> LaurentValue {
        let mut v = LaurentValue::zero();
        for (&e, &a) in &self.coeffs {
            v.add_term(e, a * c);
        }
        v
    }

    pub fn mul(&self, other: &LaurentValue) -> LaurentValue {
        let mut v = LaurentValue::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &other.coeffs {
                v.add_term(e1 + e2, c1 * c2);
            }
        }
        v
    }

    /// Multiplication by t^j.
    pub fn times_t_power(&self, j: i64) -> LaurentValue {
        let mut v = LaurentValue::zero();
        for (&e, &c) in &self.coeffs {
            v.add_term(e + j, c);
        }
        v
    }

    /// The bar involution t -> t^-1.
    pub fn bar(&self) -> LaurentValue {
        let mut v = LaurentValue::zero();
        for (&e, &c) in &self.coeffs {
            v.add_term(-e, c);
        }
        v
    }

    /// Sum of all coefficients, the evaluation at t = 1.
    pub fn at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, coeff: i64, exp: i64) -> fmt::Result {
    match (coeff, exp) {
        (c, 0) => write!(f, "{c}"),
        (1, 1) => write!(f, "t"),
        (-1, 1) => write!(f, "-t"),
        (c, 1) => write!(f, "{c}*t"),
        (1, e) => write!(f, "t^{e}"),
        (-1, e) => write!(f, "-t^{e}"),
        (c, e) => write!(f, "{c}*t^{e}"),
    }
}

impl fmt::Display for LaurentValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (&e, &c)) in self.coeffs.iter().enumerate() {
            if i == 0 {
                write_term(f, c, e)?;
            } else if c < 0 {
                write!(f, " - ")?;
                write_term(f, -c, e)?;
            } else {
                write!(f, " + ")?;
                write_term(f, c, e)?;
            }
        }
        Ok(())
    }
}

/// Unreduced quotient of Laurent polynomials; equality cross-multiplies.
#[derive(Clone, Debug)]
pub struct RationalValue {
    pub num: LaurentValue,
    pub den: LaurentValue,
}

impl RationalValue {
    pub fn new(num: LaurentValue, den: LaurentValue) -> RationalValue {
        assert!(!den.is_zero(), "rational values need a nonzero denominator");
        RationalValue { num, den }
    }

    pub fn from_laurent(v: &LaurentValue) -> RationalValue {
        RationalValue::new(v.clone(), LaurentValue::one())
    }

    pub fn from_integer(c: i64) -> RationalValue {
        RationalValue::from_laurent(&LaurentValue::constant(c))
    }

    pub fn add(&self, other: &RationalValue) -> RationalValue {
        RationalValue::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &RationalValue) -> RationalValue {
        RationalValue::new(
            self.num.mul(&other.den).sub(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn mul(&self, other: &RationalValue) -> RationalValue {
        RationalValue::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn mul_laurent(&self, other: &LaurentValue) -> RationalValue {
        RationalValue::new(self.num.mul(other), self.den.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether this value equals the given Laurent polynomial.
    pub fn eq_laurent(&self, v: &LaurentValue) -> bool {
        self.num == v.mul(&self.den)
    }
}

impl PartialEq for RationalValue {
    fn eq(&self, other: &RationalValue) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl Eq for RationalValue {}

impl fmt::Display for RationalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_minus_t_pow(k: i64) -> LaurentValue {
        LaurentValue::one().sub(&LaurentValue::monomial(1, k))
    }

    #[test]
    fn display_orders_terms_by_ascending_exponent() {
        let v = LaurentValue::monomial(2, -1).add(&LaurentValue::constant(2));
        assert_eq!(v.to_string(), "2*t^-1 + 2");
        assert_eq!(LaurentValue::zero().to_string(), "0");
        assert_eq!(LaurentValue::sigma(2).to_string(), "1 + t + t^2");
        assert_eq!(LaurentValue::sigma_bar(2).to_string(), "t^-2 + t^-1 + 1");
        assert_eq!(one_minus_t_pow(2).to_string(), "1 - t^2");
        assert_eq!(LaurentValue::monomial(-3, 4).to_string(), "-3*t^4");
    }

    #[test]
    fn bar_is_an_involution_and_twists_monomials() {
        let v = LaurentValue::monomial(2, -1)
            .add(&LaurentValue::constant(5))
            .add(&LaurentValue::monomial(-1, 3));
        assert_eq!(v.bar().bar(), v);
        assert_eq!(v.times_t_power(2).bar(), v.bar().times_t_power(-2));
        assert_eq!(LaurentValue::sigma(3).bar(), LaurentValue::sigma_bar(3));
    }

    #[test]
    fn product_of_conjugate_binomials_telescopes() {
        let prod = LaurentValue::sigma(1).mul(&one_minus_t_pow(1));
        assert_eq!(prod, one_minus_t_pow(2));
        assert_eq!(LaurentValue::sigma(0), LaurentValue::one());
        assert!(prod.sub(&prod).is_zero());
        assert_eq!(prod.at_one(), 0);
    }

    #[test]
    fn cross_multiplication_identifies_reducible_quotients() {
        let a = RationalValue::new(one_minus_t_pow(2), one_minus_t_pow(1));
        let b = RationalValue::from_laurent(&LaurentValue::sigma(1));
        assert_eq!(a, b);
        assert!(a.eq_laurent(&LaurentValue::sigma(1)));
        assert_ne!(a, RationalValue::from_integer(2));
        assert_eq!(a.sub(&b).num, LaurentValue::zero());
    }

    #[test]
    fn rational_arithmetic_cross_checks() {
        let half = RationalValue::new(LaurentValue::one(), LaurentValue::constant(2));
        let sum = half.add(&half);
        assert_eq!(sum, RationalValue::from_integer(1));
        let sq = half.mul(&half);
        assert_eq!(sq, RationalValue::new(LaurentValue::one(), LaurentValue::constant(4)));
        assert_eq!(
            half.mul_laurent(&LaurentValue::constant(2)),
            RationalValue::from_integer(1)
        );
    }
}
