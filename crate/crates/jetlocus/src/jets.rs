use num_traits::Zero;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{Poly, VarSet};
use crate::ratfunc::RatFunc;

type KPoly<const P: u64> = Poly<RatFunc<P>>;
type KIdeal<const P: u64> = Ideal<RatFunc<P>>;

/// A finite-type subscheme of affine space over K, presented by
/// variables and a defining ideal. The base parameter t lives in the
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePresentation<const P: u64> {
    vars: VarSet,
    ideal: KIdeal<P>,
}

impl<const P: u64> AffinePresentation<P> {
    pub fn new(vars: VarSet, gens: Vec<KPoly<P>>) -> Self {
        let ideal = Ideal::new(&vars, gens);
        AffinePresentation { vars, ideal }
    }

    pub fn from_ideal(ideal: KIdeal<P>) -> Self {
        AffinePresentation {
            vars: ideal.vars().clone(),
            ideal,
        }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn ideal(&self) -> &KIdeal<P> {
        &self.ideal
    }

    pub fn generators(&self) -> &[KPoly<P>] {
        self.ideal.generators()
    }

    /// Err with the first violated generator when the point is not a
    /// K-point of the presentation.
    pub fn check_point(&self, point: &[RatFunc<P>]) -> Result<()> {
        assert_eq!(point.len(), self.vars.len());
        for g in self.generators() {
            let value = g.eval(point);
            if !value.is_zero() {
                return Err(Error::NotOnVariety {
                    generator: g.to_string(),
                    value: value.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Product presentation on disjoint variable names.
    pub fn product(&self, other: &Self) -> Self {
        for n in other.vars.names() {
            assert!(!self.vars.contains(n), "product factors share variable `{n}`");
        }
        let vars = VarSet::new(
            self.vars
                .names()
                .iter()
                .chain(other.vars.names())
                .cloned(),
        );
        let mut gens: Vec<KPoly<P>> = Vec::new();
        for g in self.generators() {
            gens.push(g.embed(&vars).unwrap());
        }
        for g in other.generators() {
            gens.push(g.embed(&vars).unwrap());
        }
        AffinePresentation::new(vars, gens)
    }
}

pub fn jet_var_name(base: &str, level: usize) -> String {
    format!("{base}@{level}")
}

/// Jet variables of order ≤ n, level-major: all `x@0` first, then all
/// `x@1`, ... so truncation and order-0 elimination drop a suffix.
pub fn jet_vars(base: &VarSet, n: usize) -> VarSet {
    let mut names = Vec::with_capacity(base.len() * (n + 1));
    for level in 0..=n {
        for v in base.names() {
            names.push(jet_var_name(v, level));
        }
    }
    VarSet::new(names)
}

/// Truncated polynomial in the infinitesimal ε: slot j holds the
/// ε^j-coefficient, a polynomial in the jet variables.
struct EpsPoly<const P: u64> {
    slots: Vec<KPoly<P>>,
}

impl<const P: u64> EpsPoly<P> {
    fn zero(vars: &VarSet, n: usize) -> Self {
        EpsPoly {
            slots: vec![Poly::zero(vars); n + 1],
        }
    }

    fn add(&self, other: &Self) -> Self {
        EpsPoly {
            slots: self
                .slots
                .iter()
                .zip(&other.slots)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        let n = self.slots.len() - 1;
        let vars = self.slots[0].vars().clone();
        let mut out = EpsPoly::zero(&vars, n);
        for (i, a) in self.slots.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.slots.iter().enumerate() {
                if i + j > n {
                    break;
                }
                out.slots[i + j] = out.slots[i + j].add(&a.mul(b));
            }
        }
        out
    }

    fn pow(&self, e: u16) -> Self {
        let n = self.slots.len() - 1;
        let vars = self.slots[0].vars().clone();
        let mut acc = EpsPoly::zero(&vars, n);
        acc.slots[0] = Poly::one(&vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// ε-expansion of one generator: substitute t -> t + ε into the
/// coefficients and x_i -> Σ_j x_i@j ε^j into the variables, expand
/// modulo ε^(n+1), and return the ε-coefficients in order.
pub fn prolong_poly<const P: u64>(
    f: &KPoly<P>,
    source: &VarSet,
    n: usize,
    jets: &VarSet,
) -> Vec<KPoly<P>> {
    assert_eq!(f.vars(), source);
    let width = source.len();
    let mut total = EpsPoly::zero(jets, n);
    for (mono, coeff) in f.terms() {
        // Coefficient expansion: c(t + ε) mod ε^(n+1).
        let coeff_rows = coeff.shift_jet(n);
        let mut acc = EpsPoly {
            slots: coeff_rows
                .into_iter()
                .map(|c| Poly::constant(jets, c))
                .collect(),
        };
        // Variable expansions: (Σ_j x_i@j ε^j)^e.
        for (i, &e) in mono.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let series = EpsPoly {
                slots: (0..=n)
                    .map(|level| Poly::var(jets, level * width + i))
                    .collect(),
            };
            acc = acc.mul(&series.pow(e));
        }
        total = total.add(&acc);
    }
    total.slots
}

/// The n-th jet scheme of an affine presentation, with the generators
/// kept graded by ε-coefficient index: `levels[j]` holds the
/// ε^j-coefficients of every source generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetPresentation<const P: u64> {
    order: usize,
    source: AffinePresentation<P>,
    vars: VarSet,
    levels: Vec<Vec<KPoly<P>>>,
}

impl<const P: u64> JetPresentation<P> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn source(&self) -> &AffinePresentation<P> {
        &self.source
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn levels(&self) -> &[Vec<KPoly<P>>] {
        &self.levels
    }

    pub fn ideal(&self) -> KIdeal<P> {
        Ideal::new(
            &self.vars,
            self.levels.iter().flatten().cloned().collect(),
        )
    }

    /// The presentation, as the jet scheme of itself at order 0, on
    /// the `x@0` names.
    pub fn order_zero_slice(&self) -> Vec<KPoly<P>> {
        self.levels.first().cloned().unwrap_or_default()
    }

    /// Λ_{n,m}: drop jet variables above level m. No elimination is
    /// needed: the prolonged ideal is graded by ε-index and level-j
    /// generators only involve variables of order ≤ j.
    pub fn truncate(&self, m: usize) -> Result<JetPresentation<P>> {
        if m > self.order {
            return Err(Error::TruncationOrder {
                have: self.order,
                target: m,
            });
        }
        let vars = jet_vars(self.source.vars(), m);
        let levels: Result<Vec<Vec<KPoly<P>>>> = self.levels[..=m]
            .iter()
            .map(|level| level.iter().map(|g| g.restrict(&vars)).collect())
            .collect();
        Ok(JetPresentation {
            order: m,
            source: self.source.clone(),
            vars,
            levels: levels?,
        })
    }
}

/// Def. of the jet scheme realized on an affine patch: every generator
/// is ε-expanded and its ε-coefficients become the jet generators.
pub fn prolong_ideal<const P: u64>(
    w: &AffinePresentation<P>,
    n: usize,
    budget: &Budget,
) -> Result<JetPresentation<P>> {
    budget.check_count(n, budget.max_jet_order, "jet prolongation")?;
    let vars = jet_vars(w.vars(), n);
    let mut levels: Vec<Vec<KPoly<P>>> = vec![Vec::new(); n + 1];
    for g in w.generators() {
        let slots = prolong_poly(g, w.vars(), n, &vars);
        for (j, slot) in slots.into_iter().enumerate() {
            if !slot.is_zero() {
                levels[j].push(slot);
            }
        }
    }
    Ok(JetPresentation {
        order: n,
        source: w.clone(),
        vars,
        levels,
    })
}

/// A K-point of a jet presentation: coordinates aligned with the
/// level-major jet variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetPoint<const P: u64> {
    vars: VarSet,
    coords: Vec<RatFunc<P>>,
}

impl<const P: u64> JetPoint<P> {
    pub fn new(vars: VarSet, coords: Vec<RatFunc<P>>) -> Self {
        assert_eq!(vars.len(), coords.len());
        JetPoint { vars, coords }
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn coords(&self) -> &[RatFunc<P>] {
        &self.coords
    }

    pub fn coord(&self, name: &str) -> Option<&RatFunc<P>> {
        self.vars.index_of(name).map(|i| &self.coords[i])
    }

    /// Evaluate a polynomial (in any subset of this point's variables)
    /// at the point.
    pub fn eval(&self, f: &KPoly<P>) -> Result<RatFunc<P>> {
        Ok(f.embed(&self.vars)?.eval(&self.coords))
    }

    /// Λ_{n,m} on points: drop the coordinate suffix above level m.
    pub fn truncate(&self, source_width: usize, m: usize) -> Result<JetPoint<P>> {
        let levels = self.coords.len() / source_width;
        if m + 1 > levels {
            return Err(Error::TruncationOrder {
                have: levels - 1,
                target: m,
            });
        }
        let keep = source_width * (m + 1);
        Ok(JetPoint {
            vars: VarSet::new(self.vars.names()[..keep].iter().cloned()),
            coords: self.coords[..keep].to_vec(),
        })
    }
}

/// λ_n: Hasse/Taylor lift of a K-point of W into its n-th jet scheme;
/// coordinate x(t) contributes the ε-coefficients of x(t + ε).
pub fn lift_point<const P: u64>(
    w: &AffinePresentation<P>,
    point: &[RatFunc<P>],
    n: usize,
) -> Result<JetPoint<P>> {
    w.check_point(point)?;
    let vars = jet_vars(w.vars(), n);
    let width = w.vars().len();
    let mut coords = vec![RatFunc::zero(); width * (n + 1)];
    for (i, x) in point.iter().enumerate() {
        for (level, c) in x.shift_jet(n).into_iter().enumerate() {
            coords[level * width + i] = c;
        }
    }
    Ok(JetPoint { vars, coords })
}

/// Polynomial map between affine presentations: one component in the
/// source variables per target variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyMap<const P: u64> {
    source: VarSet,
    target: VarSet,
    components: Vec<KPoly<P>>,
}

impl<const P: u64> PolyMap<P> {
    pub fn new(source: VarSet, target: VarSet, components: Vec<KPoly<P>>) -> Self {
        assert_eq!(components.len(), target.len());
        for c in &components {
            assert!(*c.vars() == source, "component not in source variables");
        }
        PolyMap {
            source,
            target,
            components,
        }
    }

    pub fn identity(vars: &VarSet) -> Self {
        let components = (0..vars.len()).map(|i| Poly::var(vars, i)).collect();
        PolyMap::new(vars.clone(), vars.clone(), components)
    }

    pub fn source(&self) -> &VarSet {
        &self.source
    }

    pub fn target(&self) -> &VarSet {
        &self.target
    }

    pub fn components(&self) -> &[KPoly<P>] {
        &self.components
    }

    pub fn apply(&self, point: &[RatFunc<P>]) -> Vec<RatFunc<P>> {
        self.components.iter().map(|c| c.eval(point)).collect()
    }

    /// g ∘ self.
    pub fn then(&self, g: &PolyMap<P>) -> PolyMap<P> {
        assert!(self.target == g.source, "composition arity mismatch");
        let components = g
            .components
            .iter()
            .map(|c| c.substitute(&self.components))
            .collect();
        PolyMap::new(self.source.clone(), g.target.clone(), components)
    }
}

/// J^n(g) of a polynomial map: the target jet variable `y@j` is sent
/// to the ε^j-coefficient of the expansion of g's y-component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetMap<const P: u64> {
    order: usize,
    source: VarSet,
    target: VarSet,
    components: Vec<KPoly<P>>,
}

impl<const P: u64> JetMap<P> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn source(&self) -> &VarSet {
        &self.source
    }

    pub fn target(&self) -> &VarSet {
        &self.target
    }

    pub fn components(&self) -> &[KPoly<P>] {
        &self.components
    }

    pub fn apply(&self, point: &JetPoint<P>) -> Result<JetPoint<P>> {
        if *point.vars() != self.source {
            return Err(Error::ArityMismatch(format!(
                "{:?} vs {:?}",
                point.vars(),
                self.source
            )));
        }
        let coords = self
            .components
            .iter()
            .map(|c| c.eval(point.coords()))
            .collect();
        Ok(JetPoint {
            vars: self.target.clone(),
            coords,
        })
    }

    /// J^n(g) ∘ J^n(f) as jet maps.
    pub fn then(&self, g: &JetMap<P>) -> JetMap<P> {
        assert!(self.target == g.source, "composition arity mismatch");
        assert_eq!(self.order, g.order);
        let components = g
            .components
            .iter()
            .map(|c| c.substitute(&self.components))
            .collect();
        JetMap {
            order: self.order,
            source: self.source.clone(),
            target: g.target.clone(),
            components,
        }
    }
}

/// Jets are functorial: prolong a polynomial map component-wise.
pub fn prolong_morphism<const P: u64>(
    g: &PolyMap<P>,
    n: usize,
    budget: &Budget,
) -> Result<JetMap<P>> {
    budget.check_count(n, budget.max_jet_order, "jet prolongation")?;
    let source = jet_vars(g.source(), n);
    let target = jet_vars(g.target(), n);
    let width = g.target().len();
    let mut components = vec![Poly::zero(&source); target.len()];
    for (i, comp) in g.components().iter().enumerate() {
        let slots = prolong_poly(comp, g.source(), n, &source);
        for (level, slot) in slots.into_iter().enumerate() {
            components[level * width + i] = slot;
        }
    }
    Ok(JetMap {
        order: n,
        source,
        target,
        components,
    })
}

/// Weil restriction preserves products: the jets of a product are the
/// disjoint-variable union of the factor jets.
pub fn jet_product_split<const P: u64>(
    w1: &AffinePresentation<P>,
    w2: &AffinePresentation<P>,
    n: usize,
    budget: &Budget,
) -> Result<(JetPresentation<P>, JetPresentation<P>)> {
    Ok((prolong_ideal(w1, n, budget)?, prolong_ideal(w2, n, budget)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fp::Fp;
    use crate::fppoly::FpPoly;
    use crate::order::TermOrder;
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn budget() -> Budget {
        Budget::default()
    }

    /// Independent expansion oracle: work in F_p[T, E, jets], expand
    /// T -> T + E and x -> Σ x@j E^j by plain substitution, and read
    /// off E-coefficients. Exercises none of the truncated-series path.
    fn oracle_prolong<const P: u64>(
        f: &Poly<RatFunc<P>>,
        source: &VarSet,
        n: usize,
    ) -> Vec<Poly<RatFunc<P>>> {
        let jets = jet_vars(source, n);
        let width = source.len();
        let mut names = vec!["T".to_string(), "E".to_string()];
        names.extend(jets.names().iter().cloned());
        let big = VarSet::new(names);
        // Map f into the big ring with t spelled out as T.
        let mut lifted: Poly<Fp<P>> = Poly::zero(&big);
        for (mono, coeff) in f.terms() {
            assert!(coeff.is_polynomial(), "oracle wants polynomial coefficients");
            for (k, a) in coeff.num().coeffs().iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut exps = vec![0u16; big.len()];
                exps[0] = k as u16;
                for (i, &e) in mono.0.iter().enumerate() {
                    exps[2 + i] = e; // x_i maps to its @0 slot for now
                }
                lifted = lifted.add(&Poly::monomial(&big, crate::order::Mono(exps), *a));
            }
        }
        // Substitution images: T -> T + E, x_i@0 -> Σ_j x_i@j E^j,
        // everything else fixed.
        let e_var = Poly::var(&big, 1);
        let mut images: Vec<Poly<Fp<P>>> = (0..big.len()).map(|i| Poly::var(&big, i)).collect();
        images[0] = Poly::var(&big, 0).add(&e_var);
        for i in 0..width {
            let mut series = Poly::zero(&big);
            for j in 0..=n {
                let jet_idx = 2 + j * width + i;
                series = series.add(&Poly::var(&big, jet_idx).mul(&e_var.pow(j as u32)));
            }
            images[2 + i] = series;
        }
        let expanded = lifted.substitute(&images);
        // Collect E-coefficients 0..=n, mapping T^k back into t^k.
        let mut out = vec![Poly::zero(&jets); n + 1];
        for (mono, c) in expanded.terms() {
            let e_deg = mono.0[1] as usize;
            if e_deg > n {
                continue;
            }
            let t_deg = mono.0[0] as usize;
            let coeff = RatFunc::from_poly(FpPoly::t_pow(t_deg)).pow(1).scale_by(*c);
            let mut exps = vec![0u16; jets.len()];
            exps[..].copy_from_slice(&mono.0[2..]);
            out[e_deg] = out[e_deg].add(&Poly::monomial(&jets, crate::order::Mono(exps), coeff));
        }
        out
    }

    trait ScaleBy<const P: u64> {
        fn scale_by(self, c: Fp<P>) -> RatFunc<P>;
    }
    impl<const P: u64> ScaleBy<P> for RatFunc<P> {
        fn scale_by(self, c: Fp<P>) -> RatFunc<P> {
            self * RatFunc::from_u64(c.residue())
        }
    }

    fn a2<const P: u64>() -> AffinePresentation<P> {
        // V(y - x^2) in A^2.
        let vars = VarSet::new(["x", "y"]);
        let x: Poly<RatFunc<P>> = Poly::var_named(&vars, "x").unwrap();
        let y = Poly::var_named(&vars, "y").unwrap();
        AffinePresentation::new(vars, vec![y.sub(&x.pow(2))])
    }

    #[test]
    fn prolong_parabola_order_one() {
        let w = a2::<5>();
        let jp = prolong_ideal(&w, 1, &budget()).unwrap();
        let jv = jp.vars().clone();
        let x0: Poly<RatFunc<5>> = Poly::var_named(&jv, "x@0").unwrap();
        let x1 = Poly::var_named(&jv, "x@1").unwrap();
        let y0 = Poly::var_named(&jv, "y@0").unwrap();
        let y1 = Poly::var_named(&jv, "y@1").unwrap();
        assert_eq!(jp.levels()[0], vec![y0.sub(&x0.pow(2))]);
        let two = Poly::constant(&jv, RatFunc::from_u64(2));
        assert_eq!(jp.levels()[1], vec![y1.sub(&two.mul(&x0).mul(&x1))]);
    }

    #[test]
    fn prolong_matches_oracle_on_random_generators() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let vars = VarSet::new(["x", "y"]);
        for _ in 0..12 {
            let f = random_poly::<3>(&mut rng, &vars);
            for n in 0..=2usize {
                let direct = prolong_poly(&f, &vars, n, &jet_vars(&vars, n));
                let via_oracle = oracle_prolong(&f, &vars, n);
                assert_eq!(direct, via_oracle, "mismatch for {f} at order {n}");
            }
        }
    }

    fn random_poly<const P: u64>(rng: &mut ChaCha8Rng, vars: &VarSet) -> Poly<RatFunc<P>> {
        let mut f = Poly::zero(vars);
        for _ in 0..rng.gen_range(1..=4) {
            let exps: Vec<u16> = (0..vars.len()).map(|_| rng.gen_range(0..=2)).collect();
            let t_deg = rng.gen_range(0..=2);
            let scalar = rng.gen_range(0..P);
            let coeff = RatFunc::<P>::from_u64(scalar)
                * RatFunc::from_poly(FpPoly::t_pow(t_deg));
            f = f.add(&Poly::monomial(vars, crate::order::Mono(exps), coeff));
        }
        f
    }

    #[test]
    fn frobenius_generator_empties_first_jets() {
        // V(x^p - t): the ε-coefficient at level 1 is the constant -1,
        // so J^1 is empty.
        fn check<const P: u64>() {
            let vars = VarSet::new(["x"]);
            let x: Poly<RatFunc<P>> = Poly::var_named(&vars, "x").unwrap();
            let f = x.pow(P as u32).sub(&Poly::constant(&vars, RatFunc::t()));
            let w = AffinePresentation::new(vars, vec![f]);
            let jp = prolong_ideal(&w, 1, &Budget::default()).unwrap();
            assert_eq!(jp.levels()[1].len(), 1);
            let lvl1 = &jp.levels()[1][0];
            assert!(lvl1.is_unit_constant(), "level 1 should be a unit, got {lvl1}");
            assert!(jp.ideal().is_trivial(&Budget::default()).unwrap());
        }
        check::<2>();
        check::<3>();
        check::<5>();
    }

    #[test]
    fn order_zero_is_identity() {
        let w = a2::<5>();
        let jp = prolong_ideal(&w, 0, &budget()).unwrap();
        // Same generators up to the @0 renaming.
        let renamed: Vec<String> = jp.vars().names().to_vec();
        assert_eq!(renamed, vec!["x@0", "y@0"]);
        assert_eq!(jp.levels()[0].len(), 1);
        assert_eq!(jp.ideal().generators().len(), 1);
    }

    #[test]
    fn epsilon_grading_bounds_variable_levels() {
        let w = a2::<2>();
        let jp = prolong_ideal(&w, 3, &budget()).unwrap();
        let width = w.vars().len();
        for (j, level) in jp.levels().iter().enumerate() {
            for g in level {
                for idx in g.support() {
                    assert!(idx < width * (j + 1), "level {j} uses a higher-order jet var");
                }
            }
        }
    }

    #[test]
    fn truncate_drops_levels() {
        let w = a2::<5>();
        let jp = prolong_ideal(&w, 1, &budget()).unwrap();
        let j0 = jp.truncate(0).unwrap();
        assert_eq!(j0.levels().len(), 1);
        assert_eq!(j0.vars().names(), &["x@0", "y@0"]);
        assert!(jp.truncate(2).is_err());
        assert_eq!(jp.truncate(1).unwrap(), jp);
    }

    #[test]
    fn lift_point_examples() {
        // A^1, P = t^3, n = 2 over F_5: (t^3, 3t^2, 3t).
        let vars = VarSet::new(["x"]);
        let w: AffinePresentation<5> = AffinePresentation::new(vars.clone(), vec![]);
        let t = RatFunc::<5>::t();
        let p = lift_point(&w, &[t.pow(3)], 2).unwrap();
        assert_eq!(
            p.coords(),
            &[
                t.pow(3),
                RatFunc::from_u64(3) * t.pow(2),
                RatFunc::from_u64(3) * t.clone()
            ]
        );
        // Same point over F_3: derivative coefficients vanish.
        let w3: AffinePresentation<3> = AffinePresentation::new(VarSet::new(["x"]), vec![]);
        let t3 = RatFunc::<3>::t();
        let p3 = lift_point(&w3, &[t3.pow(3)], 2).unwrap();
        assert_eq!(p3.coords(), &[t3.pow(3), RatFunc::zero(), RatFunc::zero()]);
        // Constant points lift with zero jets.
        let c = RatFunc::<5>::from_u64(2);
        let p = lift_point(&w, &[c.clone()], 3).unwrap();
        assert_eq!(p.coords()[0], c);
        assert!(p.coords()[1..].iter().all(|v| v.is_zero()));
    }

    #[test]
    fn hasse_property_at_p() {
        // x(t) = t^p: order-p coefficient is 1, intermediate ones vanish.
        fn check<const P: u64>() {
            let w: AffinePresentation<P> = AffinePresentation::new(VarSet::new(["x"]), vec![]);
            let t = RatFunc::<P>::t();
            let lift = lift_point(&w, &[t.pow(P as i64)], P as usize).unwrap();
            assert_eq!(lift.coords()[0], t.pow(P as i64));
            for j in 1..P as usize {
                assert!(lift.coords()[j].is_zero(), "middle coefficient {j} nonzero");
            }
            assert!(lift.coords()[P as usize].is_one());
        }
        check::<2>();
        check::<3>();
        check::<5>();
    }

    #[test]
    fn lift_lands_in_jet_scheme_and_rejects_off_points() {
        let w = a2::<5>();
        let t = RatFunc::<5>::t();
        let point = [t.clone(), t.pow(2)];
        for n in 0..=3 {
            let jp = prolong_ideal(&w, n, &budget()).unwrap();
            let lift = lift_point(&w, &point, n).unwrap();
            for g in jp.ideal().generators() {
                assert!(lift.eval(g).unwrap().is_zero());
            }
        }
        let err = lift_point(&w, &[t.clone(), t.clone()], 1).unwrap_err();
        assert!(matches!(err, Error::NotOnVariety { .. }));
    }

    #[test]
    fn truncation_after_lift_is_lift_of_truncation() {
        // Λ_{2,1} ∘ λ_2 = λ_1 on P = t^3.
        let vars = VarSet::new(["x"]);
        let w: AffinePresentation<5> = AffinePresentation::new(vars, vec![]);
        let t = RatFunc::<5>::t();
        let l2 = lift_point(&w, &[t.pow(3)], 2).unwrap();
        let l1 = lift_point(&w, &[t.pow(3)], 1).unwrap();
        assert_eq!(l2.truncate(1, 1).unwrap(), l1);
    }

    #[test]
    fn jet_map_of_shift_by_t() {
        // g(x) = x + t at n = 1 sends (x@0, x@1) to (x@0 + t, x@1 + 1):
        // the base shift contributes to the ε-slot.
        let vars = VarSet::new(["x"]);
        let x: Poly<RatFunc<5>> = Poly::var_named(&vars, "x").unwrap();
        let g = PolyMap::new(
            vars.clone(),
            vars.clone(),
            vec![x.add(&Poly::constant(&vars, RatFunc::t()))],
        );
        let jg = prolong_morphism(&g, 1, &budget()).unwrap();
        let jv = jg.source().clone();
        let x0: Poly<RatFunc<5>> = Poly::var_named(&jv, "x@0").unwrap();
        let x1 = Poly::var_named(&jv, "x@1").unwrap();
        assert_eq!(
            jg.components(),
            &[
                x0.add(&Poly::constant(&jv, RatFunc::t())),
                x1.add(&Poly::one(&jv))
            ]
        );
    }

    #[test]
    fn jet_map_of_squaring() {
        // g(x) = x^2 at n = 1 over F_3: (x@0, x@1) -> (x@0^2, 2 x@0 x@1).
        let vars = VarSet::new(["x"]);
        let x: Poly<RatFunc<3>> = Poly::var_named(&vars, "x").unwrap();
        let g = PolyMap::new(vars.clone(), vars.clone(), vec![x.pow(2)]);
        let jg = prolong_morphism(&g, 1, &budget()).unwrap();
        let jv = jg.source().clone();
        let x0: Poly<RatFunc<3>> = Poly::var_named(&jv, "x@0").unwrap();
        let x1 = Poly::var_named(&jv, "x@1").unwrap();
        assert_eq!(
            jg.components(),
            &[
                x0.pow(2),
                x0.mul(&x1).scale(&RatFunc::from_u64(2))
            ]
        );
        // Identity prolongs to the identity.
        let id = PolyMap::<3>::identity(&vars);
        let jid = prolong_morphism(&id, 2, &budget()).unwrap();
        for (i, c) in jid.components().iter().enumerate() {
            assert_eq!(*c, Poly::var(jid.source(), i));
        }
    }

    #[test]
    fn functoriality_on_random_maps() {
        // J^n(g ∘ f) = J^n(g) ∘ J^n(f) for random polynomial maps.
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let vars = VarSet::new(["x", "y"]);
        for _ in 0..8 {
            let f = PolyMap::<3>::new(
                vars.clone(),
                vars.clone(),
                vec![
                    random_poly::<3>(&mut rng, &vars),
                    random_poly::<3>(&mut rng, &vars),
                ],
            );
            let g = PolyMap::<3>::new(
                vars.clone(),
                vars.clone(),
                vec![
                    random_poly::<3>(&mut rng, &vars),
                    random_poly::<3>(&mut rng, &vars),
                ],
            );
            for n in 0..=2 {
                let lhs = prolong_morphism(&f.then(&g), n, &budget()).unwrap();
                let rhs = prolong_morphism(&f, n, &budget())
                    .unwrap()
                    .then(&prolong_morphism(&g, n, &budget()).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn naturality_of_lift_under_morphisms() {
        // J^n(g)(λ_n(P)) = λ_n(g(P)) for g(x) = x^2, P = t.
        let vars = VarSet::new(["x"]);
        let w: AffinePresentation<5> = AffinePresentation::new(vars.clone(), vec![]);
        let x: Poly<RatFunc<5>> = Poly::var_named(&vars, "x").unwrap();
        let g = PolyMap::new(vars.clone(), vars.clone(), vec![x.pow(2)]);
        let t = RatFunc::<5>::t();
        for n in 0..=3 {
            let jg = prolong_morphism(&g, n, &budget()).unwrap();
            let lhs = jg.apply(&lift_point(&w, &[t.clone()], n).unwrap()).unwrap();
            let rhs = lift_point(&w, &g.apply(&[t.clone()]), n).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn product_jets_split() {
        // Two copies of A^1 at n = 1: four free jet variables, zero ideal.
        let w1: AffinePresentation<5> = AffinePresentation::new(VarSet::new(["x"]), vec![]);
        let w2: AffinePresentation<5> = AffinePresentation::new(VarSet::new(["y"]), vec![]);
        let (j1, j2) = jet_product_split(&w1, &w2, 1, &budget()).unwrap();
        assert!(j1.ideal().generators().is_empty());
        assert!(j2.ideal().generators().is_empty());
        let product = w1.product(&w2);
        let jp = prolong_ideal(&product, 1, &budget()).unwrap();
        assert_eq!(jp.vars().len(), 4);
        assert!(jp.ideal().generators().is_empty());
    }

    #[test]
    fn product_prolongation_equals_union_of_factor_prolongations() {
        // V(f) x V(g): prolonged generators agree with the factor
        // prolongations embedded in the product jet ring.
        let w1 = a2::<5>();
        let vars2 = VarSet::new(["u", "v"]);
        let u: Poly<RatFunc<5>> = Poly::var_named(&vars2, "u").unwrap();
        let v = Poly::var_named(&vars2, "v").unwrap();
        let w2 = AffinePresentation::new(
            vars2.clone(),
            vec![v.pow(2).sub(&u.pow(3)).sub(&Poly::constant(&vars2, RatFunc::t()))],
        );
        let n = 2;
        let product = w1.product(&w2);
        let jp = prolong_ideal(&product, n, &budget()).unwrap();
        let (j1, j2) = jet_product_split(&w1, &w2, n, &budget()).unwrap();
        let mut union: Vec<Poly<RatFunc<5>>> = Vec::new();
        for g in j1.ideal().generators().iter().chain(j2.ideal().generators()) {
            union.push(g.embed(jp.vars()).unwrap());
        }
        let direct = jp.ideal();
        let split = Ideal::new(jp.vars(), union);
        let b = budget();
        let gb1 = direct.groebner_basis(TermOrder::GrevLex, &b).unwrap();
        let gb2 = split.groebner_basis(TermOrder::GrevLex, &b).unwrap();
        assert_eq!(gb1, gb2);
    }
}
