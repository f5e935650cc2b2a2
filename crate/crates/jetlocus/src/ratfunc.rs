use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::fp::Fp;
use crate::fppoly::FpPoly;
use crate::scalar::Scalar;

/// An element of K = F_p(t) as a reduced fraction with monic
/// denominator. Zero is 0/1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFunc<const P: u64> {
    num: FpPoly<P>,
    den: FpPoly<P>,
}

impl<const P: u64> RatFunc<P> {
    pub fn new(num: FpPoly<P>, den: FpPoly<P>) -> Self {
        assert!(!den.is_zero(), "zero denominator in F_p(t)");
        if num.is_zero() {
            return RatFunc {
                num,
                den: FpPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.div_rem(&g).0;
        let mut den = den.div_rem(&g).0;
        let unit = den.leading_coeff().inv().unwrap();
        num = num.scale(unit);
        den = den.scale(unit);
        RatFunc { num, den }
    }

    pub fn from_poly(num: FpPoly<P>) -> Self {
        RatFunc {
            num,
            den: FpPoly::one(),
        }
    }

    pub fn from_u64(n: u64) -> Self {
        Self::from_poly(FpPoly::constant(Fp::new(n)))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::from_poly(FpPoly::constant(Fp::from_i64(n)))
    }

    pub fn t() -> Self {
        Self::from_poly(FpPoly::t())
    }

    pub fn t_pow_signed(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(FpPoly::t_pow(k as usize))
        } else {
            RatFunc {
                num: FpPoly::one(),
                den: FpPoly::t_pow((-k) as usize),
            }
        }
    }

    pub fn num(&self) -> &FpPoly<P> {
        &self.num
    }

    pub fn den(&self) -> &FpPoly<P> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Constant in F_p, if this element is one.
    pub fn as_constant(&self) -> Option<Fp<P>> {
        if self.den.is_one() && self.num.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(RatFunc::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("zero to a negative power")
        } else {
            self.clone()
        };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc * base.clone();
        }
        acc
    }

    /// Coefficients of self(t + e) modulo e^(n+1): truncated Hasse
    /// expansion of the numerator divided, as a power series in e, by
    /// that of the denominator.
    pub fn shift_jet(&self, n: usize) -> Vec<RatFunc<P>> {
        let num_rows = self.num.shift_coeffs();
        let den_rows = self.den.shift_coeffs();
        let num_series: Vec<RatFunc<P>> = (0..=n)
            .map(|j| RatFunc::from_poly(num_rows.get(j).cloned().unwrap_or_else(FpPoly::zero)))
            .collect();
        let den_series: Vec<RatFunc<P>> = (0..=n)
            .map(|j| RatFunc::from_poly(den_rows.get(j).cloned().unwrap_or_else(FpPoly::zero)))
            .collect();
        // Invert the denominator series; its constant term is den(t) != 0.
        let d0_inv = den_series[0].inv().unwrap();
        let mut inv_series = vec![RatFunc::zero(); n + 1];
        inv_series[0] = d0_inv.clone();
        for j in 1..=n {
            let mut acc = RatFunc::zero();
            for i in 1..=j {
                acc = acc + den_series[i].clone() * inv_series[j - i].clone();
            }
            inv_series[j] = -(d0_inv.clone() * acc);
        }
        (0..=n)
            .map(|j| {
                let mut acc = RatFunc::zero();
                for i in 0..=j {
                    acc = acc + num_series[i].clone() * inv_series[j - i].clone();
                }
                acc
            })
            .collect()
    }

    /// True when the Display form needs parentheses before `*monomial`.
    pub fn needs_coeff_parens(&self) -> bool {
        self.den.is_one() && self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1
    }
}

impl<const P: u64> Add for RatFunc<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<const P: u64> Sub for RatFunc<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        RatFunc::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl<const P: u64> Mul for RatFunc<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<const P: u64> Div for RatFunc<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero in F_p(t)");
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl<const P: u64> Neg for RatFunc<P> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFunc {
            num: -&self.num,
            den: self.den,
        }
    }
}

impl<const P: u64> Zero for RatFunc<P> {
    fn zero() -> Self {
        RatFunc {
            num: FpPoly::zero(),
            den: FpPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<const P: u64> One for RatFunc<P> {
    fn one() -> Self {
        RatFunc {
            num: FpPoly::one(),
            den: FpPoly::one(),
        }
    }
    fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }
}

impl<const P: u64> Scalar for RatFunc<P> {
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
}

impl<const P: u64> fmt::Display for RatFunc<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num_terms = self.num.coeffs().iter().filter(|c| !c.is_zero()).count();
        let den_terms = self.den.coeffs().iter().filter(|c| !c.is_zero()).count();
        if num_terms > 1 {
            write!(f, "({})", self.num)?;
        } else {
            write!(f, "{}", self.num)?;
        }
        if den_terms > 1 {
            write!(f, "/({})", self.den)
        } else {
            write!(f, "/{}", self.den)
        }
    }
}

impl<const P: u64> fmt::Debug for RatFunc<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type K = RatFunc<5>;

    fn t() -> K {
        K::t()
    }

    #[test]
    fn reduction_and_monic_denominator() {
        // (2t^2) / (2t) reduces to t with monic denominator.
        let two = K::from_u64(2);
        let f = (two.clone() * t() * t()) / (two * t());
        assert_eq!(f, t());
        assert!(f.den().is_one());
    }

    #[test]
    fn field_axioms_spot_check() {
        let a = (t() + K::one()) / (t() * t());
        let b = t() - K::from_u64(3);
        assert_eq!(a.clone() * b.clone() / b.clone(), a);
        assert_eq!(a.clone() - a.clone(), K::zero());
        assert_eq!(a.clone() * a.inv().unwrap(), K::one());
    }

    #[test]
    fn shift_jet_of_polynomial_matches_binomials() {
        // t^3 shifted: (t^3, 3t^2, 3t, 1)
        let rows = t().pow(3).shift_jet(3);
        assert_eq!(rows[0], t().pow(3));
        assert_eq!(rows[1], K::from_u64(3) * t().pow(2));
        assert_eq!(rows[2], K::from_u64(3) * t());
        assert_eq!(rows[3], K::one());
    }

    #[test]
    fn shift_jet_inverts_denominator_series() {
        // c = 1/t: c(t+e) = 1/(t+e) = 1/t - e/t^2 + e^2/t^3 - ...
        let c = K::one() / t();
        let rows = c.shift_jet(2);
        assert_eq!(rows[0], K::one() / t());
        assert_eq!(rows[1], -(K::one() / t().pow(2)));
        assert_eq!(rows[2], K::one() / t().pow(3));
    }

    #[test]
    fn shift_jet_multiplicative() {
        // Expansion of a product = truncated product of expansions.
        let a = (t() + K::one()) / t();
        let b = t().pow(2) + K::from_u64(2);
        let ab = a.clone() * b.clone();
        let ra = a.shift_jet(3);
        let rb = b.shift_jet(3);
        let rab = ab.shift_jet(3);
        for j in 0..=3 {
            let mut acc = K::zero();
            for i in 0..=j {
                acc = acc + ra[i].clone() * rb[j - i].clone();
            }
            assert_eq!(acc, rab[j]);
        }
    }

    #[test]
    fn display_forms() {
        let f = (t().pow(2) + K::one()) / t().pow(5);
        assert_eq!(f.to_string(), "(t^2 + 1)/t^5");
        assert_eq!(t().pow(2).to_string(), "t^2");
        assert_eq!(K::zero().to_string(), "0");
    }
}
