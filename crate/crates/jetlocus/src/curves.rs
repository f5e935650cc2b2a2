use std::fmt;

use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::poly::{Poly, VarSet};
use crate::ratfunc::RatFunc;

type K<const P: u64> = RatFunc<P>;
type KPoly<const P: u64> = Poly<RatFunc<P>>;

/// Elliptic curve in long Weierstrass form
/// y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6 over K = F_p(t).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EllipticCurve<const P: u64> {
    pub a1: K<P>,
    pub a2: K<P>,
    pub a3: K<P>,
    pub a4: K<P>,
    pub a6: K<P>,
    discriminant: K<P>,
    j_invariant: K<P>,
}

impl<const P: u64> EllipticCurve<P> {
    /// Coefficients in the serialization order [a1, a2, a3, a4, a6].
    pub fn new(a: [K<P>; 5]) -> Result<Self> {
        let [a1, a2, a3, a4, a6] = a;
        let c = |n: i64| K::<P>::from_i64(n);
        let b2 = a1.clone() * a1.clone() + c(4) * a2.clone();
        let b4 = c(2) * a4.clone() + a1.clone() * a3.clone();
        let b6 = a3.clone() * a3.clone() + c(4) * a6.clone();
        let b8 = a1.clone() * a1.clone() * a6.clone() + c(4) * a2.clone() * a6.clone()
            - a1.clone() * a3.clone() * a4.clone()
            + a2.clone() * a3.clone() * a3.clone()
            - a4.clone() * a4.clone();
        let discriminant = -(b2.clone() * b2.clone() * b8.clone()) - c(8) * b4.clone().pow(3)
            - c(27) * b6.clone() * b6.clone()
            + c(9) * b2.clone() * b4.clone() * b6.clone();
        if discriminant.is_zero() {
            return Err(Error::Scenario {
                field: "curve".into(),
                detail: "discriminant vanishes; the Weierstrass equation is singular".into(),
            });
        }
        let c4 = b2.clone() * b2.clone() - c(24) * b4.clone();
        let j_invariant = c4.clone().pow(3) / discriminant.clone();
        Ok(EllipticCurve {
            a1,
            a2,
            a3,
            a4,
            a6,
            discriminant,
            j_invariant,
        })
    }

    pub fn discriminant(&self) -> &K<P> {
        &self.discriminant
    }

    pub fn j_invariant(&self) -> &K<P> {
        &self.j_invariant
    }

    /// Desk-scale proxy for trace zero: j ∉ F_p.
    pub fn is_nonisotrivial(&self) -> bool {
        self.j_invariant.as_constant().is_none()
    }

    /// The Weierstrass relation placed at the named coordinate pair of
    /// an ambient variable set.
    pub fn relation(&self, vars: &VarSet, x_name: &str, y_name: &str) -> Result<KPoly<P>> {
        let x = Poly::var_named(vars, x_name)?;
        let y = Poly::var_named(vars, y_name)?;
        let c = |v: &K<P>| Poly::constant(vars, v.clone());
        Ok(y
            .pow(2)
            .add(&c(&self.a1).mul(&x).mul(&y))
            .add(&c(&self.a3).mul(&y))
            .sub(&x.pow(3))
            .sub(&c(&self.a2).mul(&x.pow(2)))
            .sub(&c(&self.a4).mul(&x))
            .sub(&c(&self.a6)))
    }

    /// Residual of the Weierstrass relation at an affine point.
    pub fn residual(&self, x: &K<P>, y: &K<P>) -> K<P> {
        y.clone() * y.clone()
            + self.a1.clone() * x.clone() * y.clone()
            + self.a3.clone() * y.clone()
            - x.clone().pow(3)
            - self.a2.clone() * x.clone() * x.clone()
            - self.a4.clone() * x.clone()
            - self.a6.clone()
    }

    pub fn check_affine(&self, x: &K<P>, y: &K<P>) -> Result<()> {
        let r = self.residual(x, y);
        if r.is_zero() {
            Ok(())
        } else {
            Err(Error::OffCurve {
                generator: format!(
                    "y^2 + ({})*x*y + ({})*y - x^3 - ({})*x^2 - ({})*x - ({})",
                    self.a1, self.a3, self.a2, self.a4, self.a6
                ),
                value: r.to_string(),
            })
        }
    }

    pub fn negate(&self, pt: &CurvePoint<P>) -> CurvePoint<P> {
        match pt {
            CurvePoint::Identity => CurvePoint::Identity,
            CurvePoint::Affine(x, y) => CurvePoint::Affine(
                x.clone(),
                -(y.clone()) - self.a1.clone() * x.clone() - self.a3.clone(),
            ),
        }
    }

    /// Chord-tangent addition with the full case analysis.
    pub fn add(&self, p: &CurvePoint<P>, q: &CurvePoint<P>) -> CurvePoint<P> {
        let (x1, y1) = match p {
            CurvePoint::Identity => return q.clone(),
            CurvePoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            CurvePoint::Identity => return p.clone(),
            CurvePoint::Affine(x, y) => (x, y),
        };
        if x1 == x2 {
            let y2_mirror = -(y1.clone()) - self.a1.clone() * x1.clone() - self.a3.clone();
            if *y2 == y2_mirror {
                return CurvePoint::Identity;
            }
        }
        let lambda = if x1 == x2 {
            // Tangent; the inverse-pair case is gone, so the
            // denominator is nonzero.
            let num = K::<P>::from_i64(3) * x1.clone() * x1.clone()
                + K::<P>::from_i64(2) * self.a2.clone() * x1.clone()
                + self.a4.clone()
                - self.a1.clone() * y1.clone();
            let den = K::<P>::from_i64(2) * y1.clone()
                + self.a1.clone() * x1.clone()
                + self.a3.clone();
            num / den
        } else {
            (y2.clone() - y1.clone()) / (x2.clone() - x1.clone())
        };
        let nu = y1.clone() - lambda.clone() * x1.clone();
        let x3 = lambda.clone() * lambda.clone() + self.a1.clone() * lambda.clone()
            - self.a2.clone()
            - x1.clone()
            - x2.clone();
        let y3 = -(lambda.clone() + self.a1.clone()) * x3.clone() - nu - self.a3.clone();
        CurvePoint::Affine(x3, y3)
    }
}

/// A point on one Weierstrass factor.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurvePoint<const P: u64> {
    Identity,
    Affine(K<P>, K<P>),
}

impl<const P: u64> CurvePoint<P> {
    pub fn is_identity(&self) -> bool {
        matches!(self, CurvePoint::Identity)
    }
}

impl<const P: u64> fmt::Debug for CurvePoint<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Identity => write!(f, "O"),
            CurvePoint::Affine(x, y) => write!(f, "({x}, {y})"),
        }
    }
}

/// Deliberate group-law perturbation for the negative-control mode:
/// demonstrates that the algebraic batteries are not vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Fault {
    #[default]
    None,
    /// Adds t to the x-coordinate of every affine addition result.
    PerturbAddition,
}

/// A finite product of elliptic curves: the ambient group variety.
/// Patch coordinates are x1, y1, ..., xN, yN.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupVariety<const P: u64> {
    factors: Vec<EllipticCurve<P>>,
    fault: Fault,
}

/// A point of the product: one factor point each.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupPoint<const P: u64>(pub Vec<CurvePoint<P>>);

impl<const P: u64> GroupPoint<P> {
    pub fn identity(arity: usize) -> Self {
        GroupPoint(vec![CurvePoint::Identity; arity])
    }

    pub fn factors(&self) -> &[CurvePoint<P>] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(CurvePoint::is_identity)
    }

    pub fn is_affine(&self) -> bool {
        self.0.iter().all(|p| !p.is_identity())
    }

    /// Flattened affine coordinates (x1, y1, x2, y2, ...); None when
    /// some factor sits at the identity (off the product patch).
    pub fn patch_coords(&self) -> Option<Vec<K<P>>> {
        let mut out = Vec::with_capacity(2 * self.0.len());
        for p in &self.0 {
            match p {
                CurvePoint::Identity => return None,
                CurvePoint::Affine(x, y) => {
                    out.push(x.clone());
                    out.push(y.clone());
                }
            }
        }
        Some(out)
    }
}

impl<const P: u64> GroupVariety<P> {
    pub fn new(factors: Vec<EllipticCurve<P>>) -> Self {
        assert!(!factors.is_empty(), "a group variety needs at least one factor");
        GroupVariety {
            factors,
            fault: Fault::None,
        }
    }

    pub fn with_fault(mut self, fault: Fault) -> Self {
        self.fault = fault;
        self
    }

    pub fn fault(&self) -> Fault {
        self.fault
    }

    pub fn factors(&self) -> &[EllipticCurve<P>] {
        &self.factors
    }

    pub fn dimension(&self) -> usize {
        self.factors.len()
    }

    /// x1, y1, ..., xN, yN.
    pub fn patch_vars(&self) -> VarSet {
        let mut names = Vec::with_capacity(2 * self.factors.len());
        for i in 1..=self.factors.len() {
            names.push(format!("x{i}"));
            names.push(format!("y{i}"));
        }
        VarSet::new(names)
    }

    /// Weierstrass relations of every factor in the given variable set
    /// (which must contain each factor's coordinate pair).
    pub fn curve_relations(&self, vars: &VarSet) -> Result<Vec<KPoly<P>>> {
        self.factors
            .iter()
            .enumerate()
            .map(|(i, e)| e.relation(vars, &format!("x{}", i + 1), &format!("y{}", i + 1)))
            .collect()
    }

    pub fn check_point(&self, p: &GroupPoint<P>) -> Result<()> {
        if p.0.len() != self.factors.len() {
            return Err(Error::ArityMismatch(format!(
                "point has {} factors, variety has {}",
                p.0.len(),
                self.factors.len()
            )));
        }
        for (pt, curve) in p.0.iter().zip(&self.factors) {
            if let CurvePoint::Affine(x, y) = pt {
                curve.check_affine(x, y)?;
            }
        }
        Ok(())
    }

    pub fn add(&self, p: &GroupPoint<P>, q: &GroupPoint<P>) -> GroupPoint<P> {
        let sum = p
            .0
            .iter()
            .zip(&q.0)
            .zip(&self.factors)
            .map(|((a, b), curve)| {
                let s = curve.add(a, b);
                match (self.fault, s) {
                    (Fault::PerturbAddition, CurvePoint::Affine(x, y)) => {
                        CurvePoint::Affine(x + K::<P>::t(), y)
                    }
                    (_, s) => s,
                }
            })
            .collect();
        GroupPoint(sum)
    }

    pub fn negate(&self, p: &GroupPoint<P>) -> GroupPoint<P> {
        GroupPoint(
            p.0.iter()
                .zip(&self.factors)
                .map(|(pt, curve)| curve.negate(pt))
                .collect(),
        )
    }

    /// Double-and-add, with negation for m < 0.
    pub fn scalar_mul(&self, m: i64, p: &GroupPoint<P>) -> GroupPoint<P> {
        let base = if m < 0 { self.negate(p) } else { p.clone() };
        let mut acc = GroupPoint::identity(self.factors.len());
        let mut addend = base;
        let mut e = m.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.add(&acc, &addend);
            }
            addend = self.add(&addend, &addend);
            e >>= 1;
        }
        acc
    }
}

/// A finitely generated subgroup Γ ⊆ A(K), free on its listed
/// generators for enumeration purposes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgroup<const P: u64> {
    generators: Vec<GroupPoint<P>>,
}

impl<const P: u64> Subgroup<P> {
    pub fn new(variety: &GroupVariety<P>, generators: Vec<GroupPoint<P>>) -> Result<Self> {
        for g in &generators {
            variety.check_point(g)?;
        }
        Ok(Subgroup { generators })
    }

    pub fn generators(&self) -> &[GroupPoint<P>] {
        &self.generators
    }

    /// All Σ a_i·g_i with 0 ≤ a_i < p^m: covers every class of
    /// Γ/p^mΓ, possibly with duplicates when the generators satisfy
    /// relations.
    pub fn coset_reps(
        &self,
        variety: &GroupVariety<P>,
        p_pow: u64,
        budget: &Budget,
    ) -> Result<Vec<GroupPoint<P>>> {
        let count = (p_pow as u128).checked_pow(self.generators.len() as u32);
        match count {
            Some(c) if c <= budget.max_cosets as u128 => {}
            _ => {
                return Err(Error::Budget {
                    stage: "coset enumeration",
                    detail: format!(
                        "{}^{} coset representatives exceed limit {}",
                        p_pow,
                        self.generators.len(),
                        budget.max_cosets
                    ),
                });
            }
        }
        let mut out = Vec::new();
        let mut digits = vec![0u64; self.generators.len()];
        loop {
            let mut acc = GroupPoint::identity(variety.dimension());
            for (d, g) in digits.iter().zip(&self.generators) {
                acc = variety.add(&acc, &variety.scalar_mul(*d as i64, g));
            }
            out.push(acc);
            // Odometer step.
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] < p_pow {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    }

    /// All Σ a_i·g_i with |a_i| ≤ radius, deduplicated, in a
    /// deterministic order.
    pub fn ball(
        &self,
        variety: &GroupVariety<P>,
        radius: i64,
        budget: &Budget,
    ) -> Result<Vec<GroupPoint<P>>> {
        let width = 2 * radius as u128 + 1;
        let count = width.checked_pow(self.generators.len() as u32);
        match count {
            Some(c) if c <= budget.max_points as u128 => {}
            _ => {
                return Err(Error::Budget {
                    stage: "ball enumeration",
                    detail: format!(
                        "(2*{radius}+1)^{} points exceed limit {}",
                        self.generators.len(),
                        budget.max_points
                    ),
                });
            }
        }
        let mut out = Vec::new();
        let mut digits = vec![-radius; self.generators.len()];
        loop {
            let mut acc = GroupPoint::identity(variety.dimension());
            for (d, g) in digits.iter().zip(&self.generators) {
                acc = variety.add(&acc, &variety.scalar_mul(*d, g));
            }
            out.push(acc);
            let mut i = 0;
            loop {
                if i == digits.len() {
                    out.sort();
                    out.dedup();
                    return Ok(out);
                }
                digits[i] += 1;
                if digits[i] <= radius {
                    break;
                }
                digits[i] = -radius;
                i += 1;
            }
        }
    }
}
