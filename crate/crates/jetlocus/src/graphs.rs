//! Closed graphs of the group-law morphisms as ideals, and translation
//! of subvarieties through them. The chord chart is dense in each
//! (irreducible) graph, so chord relations saturated by the vanishing
//! denominator present the full closed graph; elimination of source
//! variables then computes closed translates and images.


use crate::budget::Budget;
use crate::curves::{CurvePoint, EllipticCurve, GroupPoint, GroupVariety};
use crate::error::{Error, Result};
use crate::ideal::{Ideal, SubschemeRelation};
use crate::jets::AffinePresentation;
use crate::poly::{Poly, VarSet};
use crate::ratfunc::RatFunc;

type K<const P: u64> = RatFunc<P>;
type KPoly<const P: u64> = Poly<RatFunc<P>>;
type KIdeal<const P: u64> = Ideal<RatFunc<P>>;

/// A closed subvariety of the product patch, presented by the curve
/// relations plus its own generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subvariety<const P: u64> {
    presentation: AffinePresentation<P>,
}

impl<const P: u64> Subvariety<P> {
    pub fn new(variety: &GroupVariety<P>, extra: Vec<KPoly<P>>) -> Result<Self> {
        let vars = variety.patch_vars();
        let mut gens = variety.curve_relations(&vars)?;
        for g in extra {
            if *g.vars() != vars {
                return Err(Error::ArityMismatch(format!(
                    "{:?} vs {:?}",
                    g.vars(),
                    vars
                )));
            }
            gens.push(g);
        }
        Ok(Subvariety {
            presentation: AffinePresentation::new(vars, gens),
        })
    }

    pub fn from_presentation(presentation: AffinePresentation<P>) -> Self {
        Subvariety { presentation }
    }

    pub fn presentation(&self) -> &AffinePresentation<P> {
        &self.presentation
    }

    pub fn vars(&self) -> &VarSet {
        self.presentation.vars()
    }

    pub fn ideal(&self) -> &KIdeal<P> {
        self.presentation.ideal()
    }

    pub fn contains_point(&self, point: &GroupPoint<P>) -> bool {
        match point.patch_coords() {
            Some(coords) => self.ideal().vanishes_at(&coords),
            None => false,
        }
    }

    pub fn relation(&self, other: &Self, budget: &Budget) -> Result<SubschemeRelation> {
        self.ideal().subscheme_relation(other.ideal(), budget)
    }
}

/// Chord relations for x3 = λ² + a1·λ − a2 − x1 − x2 and
/// y3 = −(λ + a1)·x3 − (y1 − λ·x1) − a3 with λ = n/d, cleared of
/// denominators: two polynomials vanishing on the graph chart.
fn chord_relations<const P: u64>(
    e: &EllipticCurve<P>,
    vars: &VarSet,
    x1: &KPoly<P>,
    y1: &KPoly<P>,
    sum_x: &KPoly<P>,
    n: &KPoly<P>,
    d: &KPoly<P>,
    x3: &KPoly<P>,
    y3: &KPoly<P>,
) -> [KPoly<P>; 2] {
    let c = |v: &K<P>| Poly::constant(vars, v.clone());
    let a1 = c(&e.a1);
    let a2 = c(&e.a2);
    let a3 = c(&e.a3);
    let d2 = d.mul(d);
    let r1 = x3
        .mul(&d2)
        .sub(&n.mul(n))
        .sub(&a1.mul(n).mul(d))
        .add(&a2.add(sum_x).mul(&d2));
    let r2 = y3
        .mul(d)
        .add(&n.add(&a1.mul(d)).mul(x3))
        .add(&y1.mul(d))
        .sub(&n.mul(x1))
        .add(&a3.mul(d));
    [r1, r2]
}

/// Tangent-line numerator and denominator at (x, y).
fn tangent_parts<const P: u64>(
    e: &EllipticCurve<P>,
    vars: &VarSet,
    x: &KPoly<P>,
    y: &KPoly<P>,
) -> (KPoly<P>, KPoly<P>) {
    let c = |v: &K<P>| Poly::constant(vars, v.clone());
    let three = Poly::constant(vars, K::<P>::from_i64(3));
    let two = Poly::constant(vars, K::<P>::from_i64(2));
    let n = three
        .mul(&x.pow(2))
        .add(&two.mul(&c(&e.a2)).mul(x))
        .add(&c(&e.a4))
        .sub(&c(&e.a1).mul(y));
    let d = two.mul(y).add(&c(&e.a1).mul(x)).add(&c(&e.a3));
    (n, d)
}

fn curve_at<const P: u64>(
    e: &EllipticCurve<P>,
    vars: &VarSet,
    x: &str,
    y: &str,
) -> Result<KPoly<P>> {
    e.relation(vars, x, y)
}

/// The closed graph {(P, Q, P + Q)} ⊂ E³ on the affine patch, as a
/// presentation in (xa, ya, xb, yb, xc, yc).
pub fn addition_graph<const P: u64>(
    e: &EllipticCurve<P>,
    budget: &Budget,
) -> Result<AffinePresentation<P>> {
    let vars = VarSet::new(["xa", "ya", "xb", "yb", "xc", "yc"]);
    let v = |n: &str| Poly::var_named(&vars, n).unwrap();
    let (xa, ya, xb, yb, xc, yc) = (v("xa"), v("ya"), v("xb"), v("yb"), v("xc"), v("yc"));
    let n = yb.sub(&ya);
    let d = xb.sub(&xa);
    let [r1, r2] = chord_relations(e, &vars, &xa, &ya, &xa.add(&xb), &n, &d, &xc, &yc);
    let gens = vec![
        r1,
        r2,
        curve_at(e, &vars, "xa", "ya")?,
        curve_at(e, &vars, "xb", "yb")?,
        curve_at(e, &vars, "xc", "yc")?,
    ];
    let ideal = Ideal::new(&vars, gens).saturate(&d, budget)?;
    Ok(AffinePresentation::from_ideal(ideal))
}

/// The closed graph {(P, 2P)} in (xa, ya, xb, yb).
pub fn doubling_graph<const P: u64>(
    e: &EllipticCurve<P>,
    budget: &Budget,
) -> Result<AffinePresentation<P>> {
    let vars = VarSet::new(["xa", "ya", "xb", "yb"]);
    let v = |n: &str| Poly::var_named(&vars, n).unwrap();
    let (xa, ya, xb, yb) = (v("xa"), v("ya"), v("xb"), v("yb"));
    let (n, d) = tangent_parts(e, &vars, &xa, &ya);
    let two_x = xa.add(&xa);
    let [r1, r2] = chord_relations(e, &vars, &xa, &ya, &two_x, &n, &d, &xb, &yb);
    let gens = vec![
        r1,
        r2,
        curve_at(e, &vars, "xa", "ya")?,
        curve_at(e, &vars, "xb", "yb")?,
    ];
    let ideal = Ideal::new(&vars, gens).saturate(&d, budget)?;
    Ok(AffinePresentation::from_ideal(ideal))
}

/// The closed graph {(P, mP)} in (xa, ya, xb, yb), m ≥ 1, built by
/// composing doubling and addition graphs with elimination of the
/// intermediate point.
pub fn multiplication_graph<const P: u64>(
    e: &EllipticCurve<P>,
    m: u64,
    budget: &Budget,
) -> Result<AffinePresentation<P>> {
    assert!(m >= 1);
    let vars = VarSet::new(["xa", "ya", "xb", "yb"]);
    if m == 1 {
        let v = |n: &str| Poly::var_named(&vars, n).unwrap();
        let gens = vec![
            v("xb").sub(&v("xa")),
            v("yb").sub(&v("ya")),
            curve_at(e, &vars, "xa", "ya")?,
            curve_at(e, &vars, "xb", "yb")?,
        ];
        return Ok(AffinePresentation::new(vars, gens));
    }
    if m == 2 {
        return doubling_graph(e, budget);
    }
    if m % 2 == 0 {
        let half = multiplication_graph(e, m / 2, budget)?;
        let double = doubling_graph(e, budget)?;
        return compose_graphs(&half, &double, budget);
    }
    // Odd: S = P + (m−1)P, through the three-point addition graph.
    let prev = multiplication_graph(e, m - 1, budget)?;
    let add = addition_graph(e, budget)?;
    let work = VarSet::new(["xa", "ya", "xm", "ym", "xb", "yb"]);
    let mut gens: Vec<KPoly<P>> = Vec::new();
    for g in prev.generators() {
        gens.push(g.rename(
            |n| match n {
                "xb" => "xm".into(),
                "yb" => "ym".into(),
                other => other.into(),
            },
            &work,
        )?);
    }
    for g in add.generators() {
        gens.push(g.rename(
            |n| match n {
                "xb" => "xm".into(),
                "yb" => "ym".into(),
                "xc" => "xb".into(),
                "yc" => "yb".into(),
                other => other.into(),
            },
            &work,
        )?);
    }
    let elim = Ideal::new(&work, gens).eliminate(&["xm", "ym"], budget)?;
    let gens: Result<Vec<_>> = elim.generators().iter().map(|g| g.embed(&vars)).collect();
    Ok(AffinePresentation::new(vars, gens?))
}

/// {(P, R): g1} ∘ {(R, S): g2} -> {(P, S)}, eliminating the middle
/// point. Both graphs are presented in (xa, ya, xb, yb).
fn compose_graphs<const P: u64>(
    g1: &AffinePresentation<P>,
    g2: &AffinePresentation<P>,
    budget: &Budget,
) -> Result<AffinePresentation<P>> {
    let work = VarSet::new(["xa", "ya", "xm", "ym", "xb", "yb"]);
    let mut gens: Vec<KPoly<P>> = Vec::new();
    for g in g1.generators() {
        gens.push(g.rename(
            |n| match n {
                "xb" => "xm".into(),
                "yb" => "ym".into(),
                other => other.into(),
            },
            &work,
        )?);
    }
    for g in g2.generators() {
        gens.push(g.rename(
            |n| match n {
                "xa" => "xm".into(),
                "ya" => "ym".into(),
                other => other.into(),
            },
            &work,
        )?);
    }
    let elim = Ideal::new(&work, gens).eliminate(&["xm", "ym"], budget)?;
    let vars = VarSet::new(["xa", "ya", "xb", "yb"]);
    let gens: Result<Vec<_>> = elim.generators().iter().map(|g| g.embed(&vars)).collect();
    Ok(AffinePresentation::new(vars, gens?))
}

/// Relations of the closed graph {(R, R + Q)} for a fixed affine Q,
/// in the given ring with source pair (xs, ys) and target pair
/// (xd, yd). Saturated by the chord denominator xs − x_Q.
fn translate_graph_gens<const P: u64>(
    e: &EllipticCurve<P>,
    q: (&K<P>, &K<P>),
    names: [&str; 4],
    budget: &Budget,
) -> Result<(VarSet, Vec<KPoly<P>>)> {
    let [xs, ys, xd, yd] = names;
    let vars = VarSet::new([xs, ys, xd, yd]);
    let v = |n: &str| Poly::var_named(&vars, n).unwrap();
    let (x1, y1, x3, y3) = (v(xs), v(ys), v(xd), v(yd));
    let c = |k: &K<P>| Poly::constant(&vars, k.clone());
    let n = c(q.1).sub(&y1);
    let d = c(q.0).sub(&x1);
    let sum_x = x1.add(&c(q.0));
    let [r1, r2] = chord_relations(e, &vars, &x1, &y1, &sum_x, &n, &d, &x3, &y3);
    let gens = vec![
        r1,
        r2,
        curve_at(e, &vars, xs, ys)?,
        curve_at(e, &vars, xd, yd)?,
    ];
    let sat = Ideal::new(&vars, gens).saturate(&d, budget)?;
    Ok((vars, sat.generators().to_vec()))
}

impl<const P: u64> GroupVariety<P> {
    /// Point subvariety {P} of the product patch.
    pub fn point_subvariety(&self, point: &GroupPoint<P>) -> Result<Subvariety<P>> {
        self.check_point(point)?;
        let coords = point.patch_coords().ok_or_else(|| {
            Error::ChartEscape("a factor of the point sits at the identity".into())
        })?;
        let vars = self.patch_vars();
        let mut extra = Vec::new();
        for (i, c) in coords.iter().enumerate() {
            extra.push(Poly::var(&vars, i).sub(&Poly::constant(&vars, c.clone())));
        }
        Subvariety::new(self, extra)
    }

    /// X^{+Q}: the closed translate of a subvariety by a group point,
    /// computed per factor through the translation graphs and
    /// elimination of the source copy.
    pub fn translate(
        &self,
        x: &Subvariety<P>,
        q: &GroupPoint<P>,
        budget: &Budget,
    ) -> Result<Subvariety<P>> {
        self.check_point(q)?;
        if q.is_identity() {
            return Ok(x.clone());
        }
        let patch = self.patch_vars();
        let src_name = |n: &str| format!("{n}_s");
        let mut names: Vec<String> = patch.names().iter().map(|n| src_name(n)).collect();
        names.extend(patch.names().iter().cloned());
        let work = VarSet::new(names);

        let mut gens: Vec<KPoly<P>> = Vec::new();
        for g in x.ideal().generators() {
            gens.push(g.rename(&src_name, &work)?);
        }
        for (i, (factor_q, e)) in q.factors().iter().zip(self.factors()).enumerate() {
            let xs = format!("x{}_s", i + 1);
            let ys = format!("y{}_s", i + 1);
            let xd = format!("x{}", i + 1);
            let yd = format!("y{}", i + 1);
            match factor_q {
                CurvePoint::Identity => {
                    let vd = Poly::var_named(&work, &xd)?;
                    let vs = Poly::var_named(&work, &xs)?;
                    gens.push(vd.sub(&vs));
                    let vd = Poly::var_named(&work, &yd)?;
                    let vs = Poly::var_named(&work, &ys)?;
                    gens.push(vd.sub(&vs));
                    gens.push(e.relation(&work, &xd, &yd)?);
                }
                CurvePoint::Affine(qx, qy) => {
                    let (local, graph_gens) = translate_graph_gens(
                        e,
                        (qx, qy),
                        [&xs, &ys, &xd, &yd],
                        budget,
                    )?;
                    let _ = local;
                    for g in graph_gens {
                        gens.push(g.embed(&work)?);
                    }
                }
            }
        }
        let drop: Vec<String> = patch.names().iter().map(|n| src_name(n)).collect();
        let drop_refs: Vec<&str> = drop.iter().map(String::as_str).collect();
        let elim = Ideal::new(&work, gens).eliminate(&drop_refs, budget)?;
        let extra: Result<Vec<_>> = elim.generators().iter().map(|g| g.embed(&patch)).collect();
        let translated = Subvariety::new(self, extra?)?;
        if !x.ideal().is_trivial(budget)? && translated.ideal().is_trivial(budget)? {
            return Err(Error::ChartEscape(
                "the translate has no points on the affine patch".into(),
            ));
        }
        Ok(translated)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    type K2 = RatFunc<2>;

    fn fixture_curve() -> EllipticCurve<2> {
        EllipticCurve::new([
            K2::one(),
            K2::zero(),
            K2::zero(),
            K2::zero(),
            K2::t().pow(3),
        ])
        .unwrap()
    }

    fn g() -> CurvePoint<2> {
        CurvePoint::Affine(K2::t(), K2::t())
    }

    fn coords(p: &CurvePoint<2>) -> (K2, K2) {
        match p {
            CurvePoint::Affine(x, y) => (x.clone(), y.clone()),
            CurvePoint::Identity => panic!("affine point expected"),
        }
    }

    #[test]
    fn addition_graph_vanishes_on_addition_triples() {
        let e = fixture_curve();
        let variety = GroupVariety::new(vec![e.clone()]);
        let budget = Budget::default();
        let graph = addition_graph(&e, &budget).unwrap();
        let gp = |m: i64| variety.scalar_mul(m, &GroupPoint(vec![g()]));
        for (a, b) in [(1i64, 2i64), (2, 3), (-1, 3), (4, 1), (2, 2)] {
            let pa = coords(&gp(a).0[0]);
            let pb = coords(&gp(b).0[0]);
            let pc = coords(&gp(a + b).0[0]);
            let point = vec![pa.0, pa.1, pb.0, pb.1, pc.0, pc.1];
            for gen in graph.generators() {
                assert!(
                    gen.eval(&point).is_zero(),
                    "graph generator {gen} fails at ({a}, {b})"
                );
            }
        }
        // A non-addition triple violates some generator.
        let pa = coords(&gp(1).0[0]);
        let pb = coords(&gp(2).0[0]);
        let bad = coords(&gp(4).0[0]);
        let point = vec![pa.0, pa.1, pb.0, pb.1, bad.0, bad.1];
        assert!(graph.generators().iter().any(|q| !q.eval(&point).is_zero()));
    }

    #[test]
    fn multiplication_graphs_vanish_on_multiples() {
        let e = fixture_curve();
        let variety = GroupVariety::new(vec![e.clone()]);
        let budget = Budget::default();
        let gp = |m: i64| variety.scalar_mul(m, &GroupPoint(vec![g()]));
        for m in [1u64, 2, 3] {
            let graph = multiplication_graph(&e, m, &budget).unwrap();
            for base in [1i64, 2, 3, -2] {
                let p = coords(&gp(base).0[0]);
                let q = coords(&gp(base * m as i64).0[0]);
                let point = vec![p.0, p.1, q.0, q.1];
                for gen in graph.generators() {
                    assert!(
                        gen.eval(&point).is_zero(),
                        "[{m}] graph generator fails at base {base}"
                    );
                }
            }
            // Non-multiples violate the graph.
            let p = coords(&gp(1).0[0]);
            let q = coords(&gp(m as i64 + 1).0[0]);
            let point = vec![p.0, p.1, q.0, q.1];
            assert!(graph.generators().iter().any(|q| !q.eval(&point).is_zero()));
        }
    }

    #[test]
    fn translate_point_matches_group_law() {
        let e = fixture_curve();
        let variety = GroupVariety::new(vec![e.clone(), e]);
        let budget = Budget::default();
        let gamma = GroupPoint(vec![g(), g()]);
        let p0 = variety.scalar_mul(2, &gamma);
        let x = variety.point_subvariety(&p0).unwrap();
        let translated = variety.translate(&x, &gamma, &budget).unwrap();
        let expected = variety
            .point_subvariety(&variety.add(&p0, &gamma))
            .unwrap();
        assert_eq!(
            translated.relation(&expected, &budget).unwrap(),
            SubschemeRelation::Equal
        );
        assert!(translated.contains_point(&variety.add(&p0, &gamma)));
    }

    #[test]
    fn translate_by_identity_is_noop() {
        let e = fixture_curve();
        let variety = GroupVariety::new(vec![e.clone()]);
        let x = variety
            .point_subvariety(&GroupPoint(vec![g()]))
            .unwrap();
        let o = GroupPoint::identity(1);
        let back = variety.translate(&x, &o, &Budget::default()).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn translate_round_trip_on_a_curve() {
        // Diagonal of E×E, translated by (g, g) and back.
        let e = fixture_curve();
        let variety = GroupVariety::new(vec![e.clone(), e]);
        let budget = Budget::default();
        let vars = variety.patch_vars();
        let v = |n: &str| Poly::<K2>::var_named(&vars, n).unwrap();
        let diagonal = Subvariety::new(
            &variety,
            vec![v("x2").sub(&v("x1")), v("y2").sub(&v("y1"))],
        )
        .unwrap();
        let gamma = GroupPoint(vec![g(), g()]);
        let there = variety.translate(&diagonal, &gamma, &budget).unwrap();
        // The translate contains (P + g, P + g) but not (P, P).
        let single = GroupVariety::new(vec![fixture_curve()]);
        let two_g_plus_g = single.scalar_mul(3, &GroupPoint(vec![g()]));
        let two_g = single.scalar_mul(2, &GroupPoint(vec![g()]));
        let shifted = GroupPoint(vec![two_g_plus_g.0[0].clone(), two_g_plus_g.0[0].clone()]);
        let unshifted = GroupPoint(vec![two_g.0[0].clone(), two_g_plus_g.0[0].clone()]);
        assert!(there.contains_point(&shifted));
        assert!(!there.contains_point(&unshifted));
        let back = variety
            .translate(&there, &variety.negate(&gamma), &budget)
            .unwrap();
        assert_eq!(
            back.relation(&diagonal, &budget).unwrap(),
            SubschemeRelation::Equal
        );
    }

    #[test]
    fn full_escape_is_reported() {
        // X = {−g} translated by g lands entirely at the identity.
        let e = fixture_curve();
        let variety = GroupVariety::new(vec![e.clone()]);
        let budget = Budget::default();
        let minus_g = variety.negate(&GroupPoint(vec![g()]));
        let x = variety.point_subvariety(&minus_g).unwrap();
        let err = variety
            .translate(&x, &GroupPoint(vec![g()]), &budget)
            .unwrap_err();
        assert!(matches!(err, Error::ChartEscape(_)));
    }
}
