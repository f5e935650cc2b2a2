use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::fp::{binomial_table, Fp};

/// Dense univariate polynomial over F_p in the base parameter t.
/// Invariant: no trailing zero coefficients (zero = empty vector).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly<const P: u64> {
    coeffs: Vec<Fp<P>>,
}

impl<const P: u64> FpPoly<P> {
    pub fn from_coeffs(mut coeffs: Vec<Fp<P>>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FpPoly { coeffs }
    }

    pub fn zero() -> Self {
        FpPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Fp::new(1))
    }

    pub fn constant(c: Fp<P>) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The variable t.
    pub fn t() -> Self {
        Self::from_coeffs(vec![Fp::new(0), Fp::new(1)])
    }

    /// t^k.
    pub fn t_pow(k: usize) -> Self {
        let mut coeffs = vec![Fp::new(0); k + 1];
        coeffs[k] = Fp::new(1);
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[Fp<P>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fp<P> {
        self.coeffs.get(i).copied().unwrap_or_else(Fp::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].residue() == 1
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading_coeff(&self) -> Fp<P> {
        self.coeffs.last().copied().unwrap_or_else(Fp::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().residue() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.leading_coeff().inv().unwrap();
        self.scale(inv)
    }

    pub fn scale(&self, c: Fp<P>) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| *a * c).collect())
    }

    pub fn eval(&self, x: Fp<P>) -> Fp<P> {
        let mut acc = Fp::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + *c;
        }
        acc
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: self = q * d + r with deg r < deg d.
    /// Panics on zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.degree() < d.degree() {
            return (Self::zero(), self.clone());
        }
        let dd = d.degree().unwrap();
        let lead_inv = d.leading_coeff().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Fp::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = rem[i] * lead_inv;
            if c.is_zero() {
                continue;
            }
            quo[i - dd] = c;
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i - dd + j] = rem[i - dd + j] - c * *dc;
            }
        }
        (Self::from_coeffs(quo), Self::from_coeffs(rem))
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Multiplicity of the (nonconstant) factor d in self; self must be
    /// nonzero.
    pub fn multiplicity(&self, d: &Self) -> usize {
        assert!(!self.is_zero() && d.degree().map_or(false, |k| k > 0));
        let mut f = self.clone();
        let mut m = 0;
        loop {
            let (q, r) = f.div_rem(d);
            if r.is_zero() {
                m += 1;
                f = q;
            } else {
                return m;
            }
        }
    }

    /// Coefficients of self(t + e) as a polynomial in e: entry j is the
    /// j-th Hasse derivative. Exact and finite (length deg + 1).
    pub fn shift_coeffs(&self) -> Vec<FpPoly<P>> {
        if self.is_zero() {
            return vec![Self::zero()];
        }
        let d = self.degree().unwrap();
        let binom = binomial_table::<P>(d);
        let mut out = vec![Vec::new(); d + 1];
        for (m, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..=m {
                let c = binom[m][j] * *a;
                if c.is_zero() {
                    continue;
                }
                let slot: &mut Vec<Fp<P>> = &mut out[j];
                if slot.len() < m - j + 1 {
                    slot.resize(m - j + 1, Fp::zero());
                }
                slot[m - j] = slot[m - j] + c;
            }
        }
        out.into_iter().map(Self::from_coeffs).collect()
    }

    /// Monic polynomials of the given degree, in lexicographic residue
    /// order. Desk-scale enumeration for irreducibility and factoring.
    fn monic_of_degree(deg: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let count = (P as u128).pow(deg as u32);
        for idx in 0..count {
            let mut coeffs = Vec::with_capacity(deg + 1);
            let mut rest = idx;
            for _ in 0..deg {
                coeffs.push(Fp::new((rest % P as u128) as u64));
                rest /= P as u128;
            }
            coeffs.push(Fp::new(1));
            out.push(FpPoly { coeffs });
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        for k in 1..=d / 2 {
            for g in Self::monic_of_degree(k) {
                if g.divides(self) {
                    return false;
                }
            }
        }
        true
    }

    /// Monic irreducible factorization by trial division, smallest
    /// degrees first: returns (unit, [(factor, multiplicity)...]).
    pub fn factor(&self) -> (Fp<P>, Vec<(Self, usize)>) {
        assert!(!self.is_zero());
        let unit = self.leading_coeff();
        let mut f = self.monic();
        let mut factors = Vec::new();
        let mut k = 1;
        while f.degree().unwrap() > 0 {
            if k > f.degree().unwrap() / 2 {
                factors.push((f.clone(), 1));
                break;
            }
            let mut found = false;
            for g in Self::monic_of_degree(k) {
                if g.divides(&f) {
                    let m = f.multiplicity(&g);
                    for _ in 0..m {
                        f = f.div_rem(&g).0;
                    }
                    factors.push((g, m));
                    found = true;
                    break;
                }
            }
            if !found {
                k += 1;
            }
        }
        (unit, factors)
    }

    /// All monic divisors, in a deterministic order.
    pub fn monic_divisors(&self) -> Vec<Self> {
        let (_, factors) = self.factor();
        let mut out = vec![Self::one()];
        for (g, m) in factors {
            let mut next = Vec::with_capacity(out.len() * (m + 1));
            for d in &out {
                let mut acc = d.clone();
                next.push(acc.clone());
                for _ in 0..m {
                    acc = &acc * &g;
                    next.push(acc.clone());
                }
            }
            out = next;
        }
        out.sort();
        out.dedup();
        out
    }
}

impl<const P: u64> Add for &FpPoly<P> {
    type Output = FpPoly<P>;
    fn add(self, rhs: Self) -> FpPoly<P> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + rhs.coeff(i));
        }
        FpPoly::from_coeffs(coeffs)
    }
}

impl<const P: u64> Sub for &FpPoly<P> {
    type Output = FpPoly<P>;
    fn sub(self, rhs: Self) -> FpPoly<P> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) - rhs.coeff(i));
        }
        FpPoly::from_coeffs(coeffs)
    }
}

impl<const P: u64> Mul for &FpPoly<P> {
    type Output = FpPoly<P>;
    fn mul(self, rhs: Self) -> FpPoly<P> {
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero();
        }
        let mut coeffs = vec![Fp::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + *a * *b;
            }
        }
        FpPoly::from_coeffs(coeffs)
    }
}

impl<const P: u64> Neg for &FpPoly<P> {
    type Output = FpPoly<P>;
    fn neg(self) -> FpPoly<P> {
        FpPoly::from_coeffs(self.coeffs.iter().map(|c| -*c).collect())
    }
}

impl<const P: u64> fmt::Display for FpPoly<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.residue()) {
                (0, r) => write!(f, "{r}")?,
                (1, 1) => write!(f, "t")?,
                (1, r) => write!(f, "{r}*t")?,
                (_, 1) => write!(f, "t^{i}")?,
                (_, r) => write!(f, "{r}*t^{i}")?,
            }
        }
        Ok(())
    }
}

impl<const P: u64> fmt::Debug for FpPoly<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = FpPoly<5>;

    fn tp(k: usize) -> Q {
        Q::t_pow(k)
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = &(&tp(4) + &tp(1)) + &Q::constant(Fp::new(3));
        let d = &tp(2) + &Q::constant(Fp::new(2));
        let (q, r) = f.div_rem(&d);
        assert!(r.degree() < d.degree());
        assert_eq!(&(&q * &d) + &r, f);
    }

    #[test]
    fn gcd_of_common_factor() {
        let a = &tp(1) * &(&tp(1) + &Q::one()); // t(t+1)
        let b = &tp(1) * &tp(1); // t^2
        assert_eq!(a.gcd(&b), tp(1));
    }

    #[test]
    fn shift_is_binomial_expansion() {
        // (t + e)^3 over F_5: t^3 + 3t^2 e + 3t e^2 + e^3
        let rows = tp(3).shift_coeffs();
        assert_eq!(rows[0], tp(3));
        assert_eq!(rows[1], tp(2).scale(Fp::new(3)));
        assert_eq!(rows[2], tp(1).scale(Fp::new(3)));
        assert_eq!(rows[3], Q::one());
    }

    #[test]
    fn shift_char_p_kills_middle_terms() {
        // (t + e)^2 over F_2 = t^2 + e^2
        let rows = FpPoly::<2>::t_pow(2).shift_coeffs();
        assert_eq!(rows[1], FpPoly::<2>::zero());
        assert_eq!(rows[2], FpPoly::<2>::one());
    }

    #[test]
    fn irreducibility_over_f2() {
        type B = FpPoly<2>;
        let t = B::t();
        let t2_t_1 = &(&(&t * &t) + &t) + &B::one();
        assert!(t2_t_1.is_irreducible());
        let t2_1 = &(&t * &t) + &B::one(); // (t+1)^2
        assert!(!t2_1.is_irreducible());
    }

    #[test]
    fn factor_and_divisors() {
        type B = FpPoly<2>;
        let t = B::t();
        let t1 = &t + &B::one();
        let f = &(&t * &t) * &t1; // t^2 (t+1)
        let (unit, factors) = f.factor();
        assert_eq!(unit, Fp::new(1));
        assert_eq!(factors, vec![(t.clone(), 2), (t1.clone(), 1)]);
        assert_eq!(f.monic_divisors().len(), 6);
    }

    #[test]
    fn multiplicity_counts() {
        let f = &(&tp(2) * &tp(1)) * &(&tp(1) + &Q::one());
        assert_eq!(f.multiplicity(&tp(1)), 3);
        assert_eq!(f.multiplicity(&(&tp(1) + &Q::one())), 1);
    }
}
