use std::collections::BTreeSet;

use once_cell::sync::OnceCell;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::order::{Mono, TermOrder};
use crate::poly::{Poly, VarSet};
use crate::scalar::Scalar;

/// Containment of the reduced subvarieties cut out by two ideals in
/// the same ambient variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubschemeRelation {
    Equal,
    /// V(first) strictly contains V(second).
    Contains,
    /// V(first) is strictly contained in V(second).
    ContainedIn,
    Incomparable,
}

/// Finitely generated ideal with a lazily computed reduced Groebner
/// basis. Values are immutable; the cache is filled at most once (for
/// the first order requested) and re-derivable from the generators.
#[derive(Clone)]
pub struct Ideal<S: Scalar> {
    vars: VarSet,
    gens: Vec<Poly<S>>,
    cache: OnceCell<(TermOrder, Vec<Poly<S>>)>,
}

impl<S: Scalar> PartialEq for Ideal<S> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.gens == other.gens
    }
}

impl<S: Scalar> Eq for Ideal<S> {}

impl<S: Scalar> std::fmt::Debug for Ideal<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal{:?}(", self.vars)?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl<S: Scalar> Ideal<S> {
    /// Drops zero generators and duplicates; the zero ideal keeps an
    /// empty generator list.
    pub fn new(vars: &VarSet, gens: Vec<Poly<S>>) -> Self {
        let mut cleaned: Vec<Poly<S>> = Vec::with_capacity(gens.len());
        for g in gens {
            assert!(g.vars() == vars, "generator in wrong variable set");
            if !g.is_zero() && !cleaned.contains(&g) {
                cleaned.push(g);
            }
        }
        Ideal {
            vars: vars.clone(),
            gens: cleaned,
            cache: OnceCell::new(),
        }
    }

    pub fn zero(vars: &VarSet) -> Self {
        Ideal::new(vars, Vec::new())
    }

    pub fn unit(vars: &VarSet) -> Self {
        Ideal::new(vars, vec![Poly::one(vars)])
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn generators(&self) -> &[Poly<S>] {
        &self.gens
    }

    fn check_same_vars(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::ArityMismatch(format!(
                "{:?} vs {:?}",
                self.vars, other.vars
            )));
        }
        Ok(())
    }

    fn check_poly_vars(&self, f: &Poly<S>) -> Result<()> {
        if *f.vars() != self.vars {
            return Err(Error::ArityMismatch(format!(
                "{:?} vs {:?}",
                f.vars(),
                self.vars
            )));
        }
        Ok(())
    }

    /// The unique reduced Groebner basis for `ord`. The first order
    /// computed on this value is cached; other orders are computed
    /// fresh each call.
    pub fn groebner_basis(&self, ord: TermOrder, budget: &Budget) -> Result<Vec<Poly<S>>> {
        if let Some((cached_ord, basis)) = self.cache.get() {
            if *cached_ord == ord {
                return Ok(basis.clone());
            }
            return reduced_groebner(&self.vars, &self.gens, ord, budget);
        }
        let basis = reduced_groebner(&self.vars, &self.gens, ord, budget)?;
        let _ = self.cache.set((ord, basis.clone()));
        Ok(basis)
    }

    /// Remainder of multivariate division by the reduced basis;
    /// zero exactly for ideal members.
    pub fn normal_form(&self, f: &Poly<S>, ord: TermOrder, budget: &Budget) -> Result<Poly<S>> {
        self.check_poly_vars(f)?;
        let basis = self.groebner_basis(ord, budget)?;
        reduce_full(f, &basis, ord, budget)
    }

    pub fn contains(&self, f: &Poly<S>, ord: TermOrder, budget: &Budget) -> Result<bool> {
        Ok(self.normal_form(f, ord, budget)?.is_zero())
    }

    /// 1 lies in the ideal, i.e. the subscheme is empty.
    pub fn is_trivial(&self, budget: &Budget) -> Result<bool> {
        let basis = self.groebner_basis(TermOrder::GrevLex, budget)?;
        Ok(basis.len() == 1 && basis[0].is_unit_constant())
    }

    /// Every generator vanishes at the point.
    pub fn vanishes_at(&self, values: &[S]) -> bool {
        self.gens.iter().all(|g| g.eval(values).is_zero())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_same_vars(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.vars, gens))
    }

    /// I ∩ K[remaining variables]: the Zariski closure of the image of
    /// the projection forgetting the dropped variables.
    pub fn eliminate(&self, drop: &[&str], budget: &Budget) -> Result<Self> {
        for name in drop {
            if !self.vars.contains(name) {
                return Err(Error::UnknownVariable((*name).to_string()));
            }
        }
        let keep: Vec<String> = self
            .vars
            .names()
            .iter()
            .filter(|n| !drop.contains(&n.as_str()))
            .cloned()
            .collect();
        let dropped: Vec<String> = self
            .vars
            .names()
            .iter()
            .filter(|n| drop.contains(&n.as_str()))
            .cloned()
            .collect();
        let keep_vars = VarSet::new(keep.clone());
        if dropped.is_empty() {
            return Ok(self.clone());
        }
        let split = keep.len();
        let work_vars = VarSet::new(keep.into_iter().chain(dropped));
        let work_gens: Result<Vec<_>> = self.gens.iter().map(|g| g.embed(&work_vars)).collect();
        let ord = TermOrder::Block { keep: split };
        let basis = reduced_groebner(&work_vars, &work_gens?, ord, budget)?;
        let mut out = Vec::new();
        for g in basis {
            if g.lead(ord).is_some_and(|(m, _)| ord.in_kept_block(m)) {
                // Leading term in the kept block forces the whole
                // polynomial there under an elimination order.
                out.push(g.restrict(&keep_vars)?);
            }
        }
        Ok(Ideal::new(&keep_vars, out))
    }

    /// V(I ∩ J) = V(I) ∪ V(J), via the auxiliary-variable trick.
    pub fn intersect(&self, other: &Self, budget: &Budget) -> Result<Self> {
        self.check_same_vars(other)?;
        if self.gens.is_empty() || other.gens.is_empty() {
            return Ok(Ideal::zero(&self.vars));
        }
        let aux = fresh_name(&self.vars, "w");
        let big = extend_vars(&self.vars, &aux);
        let w = Poly::var_named(&big, &aux)?;
        let one_minus_w = Poly::one(&big).sub(&w);
        let mut gens = Vec::new();
        for g in &self.gens {
            gens.push(g.embed(&big)?.mul(&w));
        }
        for g in &other.gens {
            gens.push(g.embed(&big)?.mul(&one_minus_w));
        }
        let scaled = Ideal::new(&big, gens);
        let elim = scaled.eliminate(&[aux.as_str()], budget)?;
        let back: Result<Vec<_>> = elim.gens.iter().map(|g| g.embed(&self.vars)).collect();
        Ok(Ideal::new(&self.vars, back?))
    }

    /// Saturation (I : f^∞): removes components supported on V(f).
    pub fn saturate(&self, f: &Poly<S>, budget: &Budget) -> Result<Self> {
        self.check_poly_vars(f)?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let aux = fresh_name(&self.vars, "w");
        let big = extend_vars(&self.vars, &aux);
        let w = Poly::var_named(&big, &aux)?;
        let mut gens: Vec<Poly<S>> = Vec::with_capacity(self.gens.len() + 1);
        for g in &self.gens {
            gens.push(g.embed(&big)?);
        }
        gens.push(Poly::one(&big).sub(&f.embed(&big)?.mul(&w)));
        let extended = Ideal::new(&big, gens);
        let elim = extended.eliminate(&[aux.as_str()], budget)?;
        let back: Result<Vec<_>> = elim.gens.iter().map(|g| g.embed(&self.vars)).collect();
        Ok(Ideal::new(&self.vars, back?))
    }

    /// f ∈ √I, by the auxiliary-variable trick: 1 ∈ I + (1 − w·f).
    pub fn radical_member(&self, f: &Poly<S>, budget: &Budget) -> Result<bool> {
        self.check_poly_vars(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        let aux = fresh_name(&self.vars, "w");
        let big = extend_vars(&self.vars, &aux);
        let w = Poly::var_named(&big, &aux)?;
        let mut gens: Vec<Poly<S>> = Vec::with_capacity(self.gens.len() + 1);
        for g in &self.gens {
            gens.push(g.embed(&big)?);
        }
        gens.push(Poly::one(&big).sub(&f.embed(&big)?.mul(&w)));
        Ideal::new(&big, gens).is_trivial(budget)
    }

    /// Mutual radical containment, generator by generator. `Contains`
    /// means V(self) ⊇ V(other) strictly.
    pub fn subscheme_relation(&self, other: &Self, budget: &Budget) -> Result<SubschemeRelation> {
        self.check_same_vars(other)?;
        // V(self) ⊇ V(other) iff every generator of self vanishes on
        // V(other), i.e. lies in √other.
        let mut contains_other = true;
        for g in &self.gens {
            if !other.radical_member(g, budget)? {
                contains_other = false;
                break;
            }
        }
        let mut contained_in_other = true;
        for g in &other.gens {
            if !self.radical_member(g, budget)? {
                contained_in_other = false;
                break;
            }
        }
        Ok(match (contains_other, contained_in_other) {
            (true, true) => SubschemeRelation::Equal,
            (true, false) => SubschemeRelation::Contains,
            (false, true) => SubschemeRelation::ContainedIn,
            (false, false) => SubschemeRelation::Incomparable,
        })
    }
}

fn fresh_name(vars: &VarSet, base: &str) -> String {
    if !vars.contains(base) {
        return base.to_string();
    }
    let mut i = 0usize;
    loop {
        let cand = format!("{base}{i}");
        if !vars.contains(&cand) {
            return cand;
        }
        i += 1;
    }
}

fn extend_vars(vars: &VarSet, extra: &str) -> VarSet {
    VarSet::new(
        vars.names()
            .iter()
            .cloned()
            .chain(std::iter::once(extra.to_string())),
    )
}

/// Full normal form: no term of the remainder is divisible by any
/// leading term of the (not necessarily monic) divisor list.
pub fn reduce_full<S: Scalar>(
    f: &Poly<S>,
    basis: &[Poly<S>],
    ord: TermOrder,
    budget: &Budget,
) -> Result<Poly<S>> {
    let leads: Vec<Option<(Mono, S)>> = basis
        .iter()
        .map(|b| b.lead(ord).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let (_, rem) = reduce_core(f, basis, &leads, ord, budget, false)?;
    Ok(rem)
}

/// Division with quotient tracking: f = Σ q_i b_i + rem. The working
/// polynomial is mutated in place term by term.
pub fn reduce_with_quotients<S: Scalar>(
    f: &Poly<S>,
    basis: &[Poly<S>],
    ord: TermOrder,
    budget: &Budget,
) -> Result<(Vec<Poly<S>>, Poly<S>)> {
    let leads: Vec<Option<(Mono, S)>> = basis
        .iter()
        .map(|b| b.lead(ord).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    reduce_core(f, basis, &leads, ord, budget, true)
}

/// Shared division loop. Quotients are tracked only when asked for.
fn reduce_core<S: Scalar>(
    f: &Poly<S>,
    basis: &[Poly<S>],
    leads: &[Option<(Mono, S)>],
    ord: TermOrder,
    budget: &Budget,
    track_quotients: bool,
) -> Result<(Vec<Poly<S>>, Poly<S>)> {
    let vars = f.vars().clone();
    let mut quotients = if track_quotients {
        vec![Poly::zero(&vars); basis.len()]
    } else {
        Vec::new()
    };
    let mut rem: Vec<(Mono, S)> = Vec::new();
    let mut work: std::collections::BTreeMap<Mono, S> = f
        .terms()
        .map(|(m, c)| (m.clone(), c.clone()))
        .collect();
    'outer: while let Some((m, c)) = work
        .iter()
        .max_by(|(a, _), (b, _)| ord.cmp_mono(a, b))
        .map(|(m, c)| (m.clone(), c.clone()))
    {
        budget.check_degree(m.total_degree(), "polynomial division")?;
        for (i, lead) in leads.iter().enumerate() {
            let Some((lm, lc)) = lead else { continue };
            if let Some(q) = lm.quotient_into(&m) {
                let factor = c.clone() / lc.clone();
                for (bm, bc) in basis[i].terms() {
                    let key = q.mul(bm);
                    let delta = factor.clone() * bc.clone();
                    match work.entry(key) {
                        std::collections::btree_map::Entry::Vacant(e) => {
                            e.insert(-delta);
                        }
                        std::collections::btree_map::Entry::Occupied(mut e) => {
                            let sum = e.get().clone() - delta;
                            if sum.is_zero() {
                                e.remove();
                            } else {
                                e.insert(sum);
                            }
                        }
                    }
                }
                if track_quotients {
                    quotients[i].add_term(q, factor);
                }
                continue 'outer;
            }
        }
        work.remove(&m);
        rem.push((m, c));
    }
    Ok((quotients, Poly::from_terms(&vars, rem)))
}

/// Buchberger with normal selection (smallest lcm first), the product
/// and chain criteria, and hard budgets. Basis elements are kept monic
/// and their leading terms cached.
fn buchberger<S: Scalar>(
    vars: &VarSet,
    input: &[Poly<S>],
    ord: TermOrder,
    budget: &Budget,
) -> Result<Vec<Poly<S>>> {
    let _ = vars;
    let mut basis: Vec<Poly<S>> = Vec::new();
    for g in input {
        if !g.is_zero() {
            let m = g.monic(ord);
            if !basis.contains(&m) {
                basis.push(m);
            }
        }
    }
    if basis.is_empty() {
        return Ok(basis);
    }
    let mut leads: Vec<Option<(Mono, S)>> = basis
        .iter()
        .map(|b| b.lead(ord).map(|(m, c)| (m.clone(), c.clone())))
        .collect();
    let lt =
        |leads: &[Option<(Mono, S)>], i: usize| -> Mono { leads[i].as_ref().unwrap().0.clone() };

    // Pending pair queue keyed by (deg lcm, lcm, i, j): the BTreeSet
    // front is the normal-strategy pick; ties break deterministically.
    let mut queue: BTreeSet<(u32, Mono, usize, usize)> = BTreeSet::new();
    let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
    for j in 1..basis.len() {
        for i in 0..j {
            let lcm = lt(&leads, i).lcm(&lt(&leads, j));
            queue.insert((lcm.total_degree(), lcm, i, j));
            pending.insert((i, j));
        }
    }

    let mut processed: usize = 0;
    while let Some(entry) = queue.iter().next().cloned() {
        queue.remove(&entry);
        let (_, lcm, i, j) = entry;
        pending.remove(&(i, j));

        processed += 1;
        if processed > budget.max_pairs {
            return Err(Error::Budget {
                stage: "groebner basis",
                detail: format!("S-pair limit {} exhausted", budget.max_pairs),
            });
        }

        let lt_i = lt(&leads, i);
        let lt_j = lt(&leads, j);
        // Product criterion.
        if lt_i.coprime(&lt_j) {
            continue;
        }
        // Chain criterion: some k with LT(k) | lcm and both side pairs
        // already handled.
        let mut skip = false;
        for (k, lead) in leads.iter().enumerate() {
            if k == i || k == j {
                continue;
            }
            if lead.as_ref().unwrap().0.divides(&lcm) {
                let a = (i.min(k), i.max(k));
                let b = (j.min(k), j.max(k));
                if !pending.contains(&a) && !pending.contains(&b) {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }

        // S-polynomial of two monic elements.
        let u = lt_i.quotient_into(&lcm).unwrap();
        let v = lt_j.quotient_into(&lcm).unwrap();
        let s = basis[i]
            .mul_monomial(&u, &S::one())
            .sub(&basis[j].mul_monomial(&v, &S::one()));
        let (_, r) = reduce_core(&s, &basis, &leads, ord, budget, false)?;
        if r.is_zero() {
            continue;
        }
        budget.check_degree(r.total_degree(), "groebner basis")?;
        let r = r.monic(ord);
        leads.push(r.lead(ord).map(|(m, c)| (m.clone(), c.clone())));
        basis.push(r);
        let new_idx = basis.len() - 1;
        let lt_new = lt(&leads, new_idx);
        for i in 0..new_idx {
            let lcm = lt(&leads, i).lcm(&lt_new);
            queue.insert((lcm.total_degree(), lcm, i, new_idx));
            pending.insert((i, new_idx));
        }
    }
    Ok(basis)
}
/// The unique reduced Groebner basis: minimal leading terms, every
/// element fully reduced against the others, monic, sorted descending
/// by leading term.
pub fn reduced_groebner<S: Scalar>(
    vars: &VarSet,
    gens: &[Poly<S>],
    ord: TermOrder,
    budget: &Budget,
) -> Result<Vec<Poly<S>>> {
    let basis = buchberger(vars, gens, ord, budget)?;
    if basis.is_empty() {
        return Ok(basis);
    }
    // Minimalize: drop elements whose leading term another's divides.
    let leads: Vec<Mono> = basis
        .iter()
        .map(|p| p.lead(ord).map(|(m, _)| m.clone()).unwrap())
        .collect();
    let mut kept: Vec<usize> = Vec::new();
    for i in 0..basis.len() {
        let redundant = (0..basis.len()).any(|j| {
            j != i
                && leads[j].divides(&leads[i])
                && (leads[j] != leads[i] || kept.contains(&j) || j < i)
        });
        if !redundant {
            kept.push(i);
        }
    }
    let mut reduced: Vec<Poly<S>> = kept.into_iter().map(|i| basis[i].clone()).collect();
    // Tail-reduce to the fixpoint.
    loop {
        let mut changed = false;
        for i in 0..reduced.len() {
            let others: Vec<Poly<S>> = reduced
                .iter()
                .enumerate()
                .filter_map(|(j, p)| (j != i).then(|| p.clone()))
                .collect();
            let r = reduce_full(&reduced[i], &others, ord, budget)?.monic(ord);
            if r != reduced[i] {
                reduced[i] = r;
                changed = true;
            }
        }
        reduced.retain(|p| !p.is_zero());
        if !changed {
            break;
        }
    }
    reduced.sort_by(|a, b| {
        let la = a.lead(ord).map(|(m, _)| m.clone()).unwrap();
        let lb = b.lead(ord).map(|(m, _)| m.clone()).unwrap();
        ord.cmp_mono(&lb, &la)
    });
    Ok(reduced)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfunc::RatFunc;
    use num_traits::One;

    type K = RatFunc<5>;
    type Id = Ideal<K>;

    fn vars(names: &[&str]) -> VarSet {
        VarSet::new(names.iter().map(|s| s.to_string()))
    }

    fn budget() -> Budget {
        Budget::default()
    }

    fn var(v: &VarSet, name: &str) -> Poly<K> {
        Poly::var_named(v, name).unwrap()
    }

    fn c(v: &VarSet, k: RatFunc<5>) -> Poly<K> {
        Poly::constant(v, k)
    }

    #[test]
    fn already_reduced_basis_is_returned() {
        let v = vars(&["x", "y"]);
        let i = Id::new(&v, vec![var(&v, "x"), var(&v, "y")]);
        let gb = i.groebner_basis(TermOrder::GrevLex, &budget()).unwrap();
        assert_eq!(gb, vec![var(&v, "x"), var(&v, "y")]);
    }

    #[test]
    fn groebner_collapses_multiple_of_common_root() {
        // (x^2 - 1, x - 1) over F_5(t): gcd is x - 1.
        let v = vars(&["x"]);
        let x = var(&v, "x");
        let i = Id::new(
            &v,
            vec![
                x.pow(2).sub(&Poly::one(&v)),
                x.sub(&Poly::one(&v)),
            ],
        );
        let gb = i.groebner_basis(TermOrder::GrevLex, &budget()).unwrap();
        assert_eq!(gb, vec![x.sub(&Poly::one(&v))]);
    }

    #[test]
    fn duplicate_generators_removed() {
        let v = vars(&["x"]);
        let g = var(&v, "x").sub(&c(&v, K::t()));
        let i = Id::new(&v, vec![g.clone(), g.clone()]);
        assert_eq!(i.generators().len(), 1);
        let gb = i.groebner_basis(TermOrder::GrevLex, &budget()).unwrap();
        assert_eq!(gb, vec![g]);
    }

    #[test]
    fn normal_form_examples() {
        let v = vars(&["x"]);
        let x = var(&v, "x");
        // f = x, I = (x) -> 0
        let i = Id::new(&v, vec![x.clone()]);
        assert!(i
            .normal_form(&x, TermOrder::GrevLex, &budget())
            .unwrap()
            .is_zero());
        // f = 1, I = (x) -> 1
        let one = Poly::one(&v);
        assert_eq!(
            i.normal_form(&one, TermOrder::GrevLex, &budget()).unwrap(),
            one
        );
        // f = x^2 + t, I = (x - t) over F_3(t) -> t^2 + t
        type K3 = RatFunc<3>;
        let v3 = vars(&["x"]);
        let x3: Poly<K3> = Poly::var_named(&v3, "x").unwrap();
        let i3 = Ideal::new(&v3, vec![x3.sub(&Poly::constant(&v3, K3::t()))]);
        let f3 = x3.pow(2).add(&Poly::constant(&v3, K3::t()));
        let nf = i3.normal_form(&f3, TermOrder::GrevLex, &budget()).unwrap();
        assert_eq!(nf, Poly::constant(&v3, K3::t().pow(2) + K3::t()));
    }

    #[test]
    fn eliminate_substitution_instance() {
        // (y - x^2, x - t), drop x -> (y - t^2)
        let v = vars(&["x", "y"]);
        let x = var(&v, "x");
        let y = var(&v, "y");
        let i = Id::new(&v, vec![y.sub(&x.pow(2)), x.sub(&c(&v, K::t()))]);
        let e = i.eliminate(&["x"], &budget()).unwrap();
        let vy = vars(&["y"]);
        assert_eq!(
            e.generators(),
            &[Poly::var_named(&vy, "y")
                .unwrap()
                .sub(&Poly::constant(&vy, K::t().pow(2)))]
        );
    }

    #[test]
    fn eliminate_projections_that_fill_the_line() {
        let v = vars(&["x", "y"]);
        // (x), drop x -> (0)
        let i = Id::new(&v, vec![var(&v, "x")]);
        assert!(i.eliminate(&["x"], &budget()).unwrap().generators().is_empty());
        // (xy - 1), drop x -> (0): image y != 0 is dense.
        let j = Id::new(&v, vec![var(&v, "x").mul(&var(&v, "y")).sub(&Poly::one(&v))]);
        assert!(j.eliminate(&["x"], &budget()).unwrap().generators().is_empty());
    }

    #[test]
    fn sum_intersect_saturate() {
        let v = vars(&["x", "y", "z"]);
        let (x, y, z) = (var(&v, "x"), var(&v, "y"), var(&v, "z"));
        let ix = Id::new(&v, vec![x.clone()]);
        let iy = Id::new(&v, vec![y.clone()]);
        let s = ix.sum(&iy).unwrap();
        assert_eq!(s.generators(), &[x.clone(), y.clone()]);

        let inter = ix.intersect(&iy, &budget()).unwrap();
        let gb = inter.groebner_basis(TermOrder::GrevLex, &budget()).unwrap();
        assert_eq!(gb, vec![x.mul(&y)]);

        // saturate((xy, xz), x) = (y, z)
        let i = Id::new(&v, vec![x.mul(&y), x.mul(&z)]);
        let sat = i.saturate(&x, &budget()).unwrap();
        let gb = sat.groebner_basis(TermOrder::GrevLex, &budget()).unwrap();
        assert_eq!(gb, vec![y.clone(), z.clone()]);
    }

    #[test]
    fn radical_membership() {
        let v = vars(&["x"]);
        let x = var(&v, "x");
        let i2 = Id::new(&v, vec![x.pow(2)]);
        assert!(i2.radical_member(&x, &budget()).unwrap());

        type K2 = RatFunc<2>;
        let v2 = vars(&["x"]);
        let x2: Poly<K2> = Poly::var_named(&v2, "x").unwrap();
        let i = Ideal::new(&v2, vec![x2.clone()]);
        let f = x2.add(&Poly::one(&v2));
        assert!(!i.radical_member(&f, &budget()).unwrap());
    }

    #[test]
    fn reduced_subvariety_relations() {
        let v = vars(&["x"]);
        let x = var(&v, "x");
        let sq = Id::new(&v, vec![x.pow(2)]);
        let lin = Id::new(&v, vec![x.clone()]);
        assert_eq!(
            sq.subscheme_relation(&lin, &budget()).unwrap(),
            SubschemeRelation::Equal
        );
        let bigger = Id::new(&v, vec![x.mul(&x.sub(&Poly::one(&v)))]);
        assert_eq!(
            bigger.subscheme_relation(&lin, &budget()).unwrap(),
            SubschemeRelation::Contains
        );
        assert_eq!(
            lin.subscheme_relation(&bigger, &budget()).unwrap(),
            SubschemeRelation::ContainedIn
        );
    }

    #[test]
    fn budget_failure_is_clean() {
        let tiny = Budget {
            max_pairs: 1,
            max_degree: 2,
            ..Budget::default()
        };
        let v = vars(&["x", "y"]);
        let (x, y) = (var(&v, "x"), var(&v, "y"));
        let i = Id::new(
            &v,
            vec![
                x.pow(2).add(&y.pow(2)).sub(&Poly::one(&v)),
                x.mul(&y).sub(&c(&v, K::t())),
                x.pow(2).mul(&y).sub(&c(&v, K::one())),
            ],
        );
        let err = i.groebner_basis(TermOrder::GrevLex, &tiny).unwrap_err();
        assert!(matches!(err, Error::Budget { .. }));
    }

    #[test]
    fn groebner_is_idempotent_and_cached() {
        let v = vars(&["x", "y"]);
        let (x, y) = (var(&v, "x"), var(&v, "y"));
        let i = Id::new(&v, vec![x.pow(2).sub(&y), y.pow(2).sub(&x)]);
        let gb1 = i.groebner_basis(TermOrder::GrevLex, &budget()).unwrap();
        let gb2 = i.groebner_basis(TermOrder::GrevLex, &budget()).unwrap();
        assert_eq!(gb1, gb2);
        // Re-running on the basis itself reproduces it.
        let j = Id::new(&v, gb1.clone());
        assert_eq!(j.groebner_basis(TermOrder::GrevLex, &budget()).unwrap(), gb1);
    }
}
