use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fppoly::FpPoly;
use crate::ideal::Ideal;
use crate::order::TermOrder;
use crate::parse::parse_ratfunc;
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// Value of a discrete valuation: an integer or +∞ (attained only
/// by zero, and by contact orders of points lying on the subscheme).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(n) => Some(n),
            Valuation::Infinity => None,
        }
    }

    pub fn scale(self, k: i64) -> Valuation {
        match self {
            Valuation::Finite(n) => Valuation::Finite(n * k),
            Valuation::Infinity => Valuation::Infinity,
        }
    }
}

impl Add for Valuation {
    type Output = Valuation;
    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinity,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Infinity, Valuation::Infinity) => Ordering::Equal,
            (Valuation::Infinity, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Finite(_), Valuation::Infinity) => Ordering::Less,
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(n) => write!(f, "{n}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// A place of K = F_p(t): a monic irreducible of F_p[t], or infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Place<const P: u64> {
    Finite(FpPoly<P>),
    Infinite,
}

impl<const P: u64> Place<P> {
    pub fn finite(pi: FpPoly<P>) -> Result<Self> {
        if !pi.is_monic() || !pi.is_irreducible() {
            return Err(Error::BadPlace(pi.to_string()));
        }
        Ok(Place::Finite(pi))
    }

    /// Accepts `"inf"` or a monic irreducible like `"t^2+t+1"`.
    pub fn parse(src: &str) -> Result<Self> {
        if src.trim() == "inf" {
            return Ok(Place::Infinite);
        }
        let f = parse_ratfunc::<P>(src)?;
        if !f.is_polynomial() {
            return Err(Error::BadPlace(src.to_string()));
        }
        Place::finite(f.num().clone())
    }

    /// Residue degree: deg π for finite places, 1 at infinity.
    pub fn degree(&self) -> i64 {
        match self {
            Place::Finite(pi) => pi.degree().unwrap() as i64,
            Place::Infinite => 1,
        }
    }

    /// The normalized valuation. Multiplicative on products; v(0) = ∞.
    pub fn valuation(&self, f: &RatFunc<P>) -> Valuation {
        if f.is_zero() {
            return Valuation::Infinity;
        }
        match self {
            Place::Finite(pi) => {
                let vn = f.num().multiplicity(pi) as i64;
                let vd = f.den().multiplicity(pi) as i64;
                Valuation::Finite(vn - vd)
            }
            Place::Infinite => Valuation::Finite(
                f.den().degree().unwrap() as i64 - f.num().degree().unwrap() as i64,
            ),
        }
    }

    /// The uniformizer as an element of K: π, or 1/t at infinity.
    pub fn uniformizer(&self) -> RatFunc<P> {
        match self {
            Place::Finite(pi) => RatFunc::from_poly(pi.clone()),
            Place::Infinite => RatFunc::t_pow_signed(-1),
        }
    }

    /// Scale each generator by a power of the uniformizer so the
    /// minimum valuation over its coefficients is exactly 0.
    pub fn normalize_primitive(&self, gens: &[Poly<RatFunc<P>>]) -> Result<Vec<Poly<RatFunc<P>>>> {
        gens.iter()
            .map(|g| {
                if g.is_zero() {
                    return Err(Error::ZeroPolynomial);
                }
                let min = g
                    .terms()
                    .map(|(_, c)| self.valuation(c))
                    .min()
                    .unwrap()
                    .finite()
                    .expect("nonzero coefficients have finite valuation");
                let factor = self.uniformizer().pow(-min);
                Ok(g.scale(&factor))
            })
            .collect()
    }

    /// Contact order of a v-integral point against the v-primitivized
    /// reduced Groebner basis of the ideal. Order ∞ means the point
    /// lies on the subscheme; d_v = p^(−order·deg) and
    /// λ_v = order·deg·log p.
    pub fn contact_order(
        &self,
        ideal: &Ideal<RatFunc<P>>,
        point: &[RatFunc<P>],
        budget: &Budget,
    ) -> Result<ContactReport> {
        for (i, c) in point.iter().enumerate() {
            if self.valuation(c) < Valuation::Finite(0) {
                return Err(Error::NotIntegral {
                    coordinate: ideal.vars().name(i).to_string(),
                    value: c.to_string(),
                    place: self.to_string(),
                });
            }
        }
        let basis = ideal.groebner_basis(TermOrder::GrevLex, budget)?;
        if basis.is_empty() {
            // The zero ideal cuts out everything; every point has
            // infinite contact.
            return Ok(ContactReport {
                place: self.to_string(),
                degree: self.degree(),
                order: Valuation::Infinity,
                generator_orders: Vec::new(),
            });
        }
        let primitive = self.normalize_primitive(&basis)?;
        let generator_orders: Vec<Valuation> = primitive
            .iter()
            .map(|g| self.valuation(&g.eval(point)))
            .collect();
        let order = generator_orders.iter().copied().min().unwrap();
        Ok(ContactReport {
            place: self.to_string(),
            degree: self.degree(),
            order,
            generator_orders,
        })
    }

    /// Local heights of one point against two subschemes, and their
    /// difference: the raw material for fitting the height-inequality
    /// constant.
    pub fn distance_compare(
        &self,
        near: &Ideal<RatFunc<P>>,
        far: &Ideal<RatFunc<P>>,
        point: &[RatFunc<P>],
        budget: &Budget,
    ) -> Result<DistanceComparison> {
        let x = self.contact_order(near, point, budget)?;
        let y = self.contact_order(far, point, budget)?;
        let difference = match (x.lambda_exponent(), y.lambda_exponent()) {
            (Valuation::Infinity, Valuation::Infinity) => DistanceDifference::Finite(0),
            (Valuation::Infinity, Valuation::Finite(_)) => DistanceDifference::PlusInfinity,
            (Valuation::Finite(_), Valuation::Infinity) => DistanceDifference::MinusInfinity,
            (Valuation::Finite(a), Valuation::Finite(b)) => DistanceDifference::Finite(a - b),
        };
        Ok(DistanceComparison {
            first: x,
            second: y,
            difference,
        })
    }
}

impl<const P: u64> fmt::Display for Place<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            // Compact serialization: "t", "t+1", "t^2+t+1".
            Place::Finite(pi) => write!(f, "{}", pi.to_string().replace(' ', "")),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

/// Contact of a point with a subscheme at one place. All fields are
/// integers (or ∞); λ_v itself is order·deg·log p and is only ever
/// rendered symbolically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactReport {
    pub place: String,
    pub degree: i64,
    pub order: Valuation,
    pub generator_orders: Vec<Valuation>,
}

impl ContactReport {
    /// The exponent n with d_v = p^(−n): order times residue degree.
    pub fn lambda_exponent(&self) -> Valuation {
        self.order.scale(self.degree)
    }

    /// λ_v rendered exactly, e.g. `5*log(2)`.
    pub fn lambda_display(&self, p: u64) -> String {
        match self.lambda_exponent() {
            Valuation::Infinity => "inf".to_string(),
            Valuation::Finite(e) => format!("{e}*log({p})"),
        }
    }

    /// Contact order at least n + 1, i.e. the point meets the n-th
    /// infinitesimal neighbourhood.
    pub fn meets_neighbourhood(&self, n: i64) -> bool {
        self.order >= Valuation::Finite(n + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceDifference {
    Finite(i64),
    /// First contact infinite, second finite: the point lies on the
    /// first subscheme but off the second.
    PlusInfinity,
    MinusInfinity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceComparison {
    pub first: ContactReport,
    pub second: ContactReport,
    pub difference: DistanceDifference,
}
