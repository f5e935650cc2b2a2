use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Primes the toolkit will instantiate. Desk-scale profile: runtime
/// moduli are dispatched onto these monomorphized instances.
pub const SUPPORTED_PRIMES: &[u64] = &[2, 3, 5, 7, 11, 13];

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the prime field F_p, reduced to [0, p).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u64> {
    residue: u64,
}

impl<const P: u64> Fp<P> {
    pub const fn new(value: u64) -> Self {
        Fp { residue: value % P }
    }

    pub fn from_i64(value: i64) -> Self {
        let p = P as i64;
        Fp {
            residue: value.rem_euclid(p) as u64,
        }
    }

    pub const fn residue(self) -> u64 {
        self.residue
    }

    pub const fn modulus() -> u64 {
        P
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::new(1);
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; `None` for zero.
    pub fn inv(self) -> Option<Self> {
        if self.residue == 0 {
            None
        } else {
            Some(self.pow(P - 2))
        }
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Fp {
            residue: (self.residue + rhs.residue) % P,
        }
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp {
            residue: (P + self.residue - rhs.residue) % P,
        }
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp {
            residue: ((self.residue as u128 * rhs.residue as u128) % P as u128) as u64,
        }
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp {
            residue: (P - self.residue) % P,
        }
    }
}

impl<const P: u64> AddAssign for Fp<P> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<const P: u64> SubAssign for Fp<P> {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl<const P: u64> MulAssign for Fp<P> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp { residue: 0 }
    }
    fn is_zero(&self) -> bool {
        self.residue == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp::new(1)
    }
    fn is_one(&self) -> bool {
        self.residue == 1 % P
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

impl<const P: u64> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.residue)
    }
}

/// Pascal's triangle mod p, rows 0..=n. Used for Hasse shifts of
/// univariate polynomials.
pub fn binomial_table<const P: u64>(n: usize) -> Vec<Vec<Fp<P>>> {
    let mut rows: Vec<Vec<Fp<P>>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![Fp::new(1); i + 1];
        for j in 1..i {
            row[j] = rows[i - 1][j - 1] + rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

/// Dispatches a runtime prime onto the const-generic instantiations.
/// `$func` must be a path to a function generic over `const P: u64`.
#[macro_export]
macro_rules! dispatch_prime {
    ($p:expr, $func:path $(, $arg:expr)* $(,)?) => {{
        let p: u64 = $p;
        match p {
            2 => Ok($func::<2>($($arg),*)),
            3 => Ok($func::<3>($($arg),*)),
            5 => Ok($func::<5>($($arg),*)),
            7 => Ok($func::<7>($($arg),*)),
            11 => Ok($func::<11>($($arg),*)),
            13 => Ok($func::<13>($($arg),*)),
            q if !$crate::fp::is_prime(q) => Err($crate::error::Error::CompositeModulus(q)),
            q => Err($crate::error::Error::UnsupportedPrime(q)),
        }
    }};
}
