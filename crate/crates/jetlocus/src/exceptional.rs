//! Critical and exceptional schemes of subvarieties of a product of
//! elliptic curves, the stabilized exceptional locus, and the
//! iterative construction of the linear locus Y from translated
//! exceptional schemes over coset representatives.

use std::cell::RefCell;
use std::collections::BTreeMap;

use crate::budget::Budget;
use crate::curves::{GroupVariety, Subgroup};
use crate::error::{Error, Result};
use crate::graphs::{multiplication_graph, Subvariety};
use crate::ideal::{Ideal, SubschemeRelation};
use crate::jets::{jet_vars, prolong_ideal, AffinePresentation};
use crate::poly::{Poly, VarSet};
use crate::ratfunc::RatFunc;

type KIdeal<const P: u64> = Ideal<RatFunc<P>>;
type KPoly<const P: u64> = Poly<RatFunc<P>>;

/// Intersection of the p^k-multiplication image of the ambient jets
/// with the jets of the subvariety, at jet order k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalScheme<const P: u64> {
    pub order: usize,
    pub vars: VarSet,
    pub ideal: KIdeal<P>,
}

/// Scheme-theoretic image of the critical scheme under truncation to
/// order 0: the locus of the subvariety where p^k-divisible jets
/// exist. Lives on the product patch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExceptionalScheme<const P: u64> {
    pub order: usize,
    pub locus: Subvariety<P>,
    /// First k with Exc^k = Exc^{k+1}, when the chain was seen to
    /// stabilize within the explored range.
    pub stabilized_at: Option<usize>,
}

/// One translated-exceptional piece computed during an iteration of
/// the linear-locus loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceRecord {
    pub component: usize,
    pub coset: usize,
    /// The exceptional scheme was strictly smaller than the translated
    /// component.
    pub strict: bool,
    /// The translate left the affine patch; the component was kept
    /// whole to preserve soundness.
    pub escaped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationRecord {
    pub pieces: Vec<PieceRecord>,
    /// Relation of this iteration's union to the previous locus.
    pub relation: SubschemeRelation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearLocusResult<const P: u64> {
    pub locus: Subvariety<P>,
    pub iterations: Vec<IterationRecord>,
    pub m_used: usize,
    pub stabilized: bool,
    /// Some component could not be decomposed further; the result is
    /// still a sound superset of the limit locus.
    pub decomposition_incomplete: bool,
}

/// Pipeline driver. Caches the multiplication images (per jet order)
/// and the per-factor multiplication graphs, which do not depend on
/// the subvariety.
pub struct ExcEngine<'a, const P: u64> {
    variety: &'a GroupVariety<P>,
    budget: &'a Budget,
    images: RefCell<BTreeMap<usize, KIdeal<P>>>,
}

impl<'a, const P: u64> ExcEngine<'a, P> {
    pub fn new(variety: &'a GroupVariety<P>, budget: &'a Budget) -> Self {
        ExcEngine {
            variety,
            budget,
            images: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn variety(&self) -> &GroupVariety<P> {
        self.variety
    }

    pub fn budget(&self) -> &Budget {
        self.budget
    }

    /// Jet variables of the product patch at order k.
    pub fn jet_vars(&self, k: usize) -> VarSet {
        jet_vars(&self.variety.patch_vars(), k)
    }

    /// The ideal of [p^k]_* J^k(A): per elliptic factor, the k-fold
    /// iterated image of J^k([p]) computed from the prolonged
    /// multiplication graph, then joined across factors.
    pub fn multiplication_image(&self, k: usize) -> Result<KIdeal<P>> {
        if let Some(cached) = self.images.borrow().get(&k) {
            return Ok(cached.clone());
        }
        let image = self.compute_multiplication_image(k)?;
        self.images.borrow_mut().insert(k, image.clone());
        Ok(image)
    }

    fn compute_multiplication_image(&self, k: usize) -> Result<KIdeal<P>> {
        let patch = self.variety.patch_vars();
        let full = jet_vars(&patch, k);
        if k == 0 {
            let gens: Result<Vec<KPoly<P>>> = self
                .variety
                .curve_relations(&patch)?
                .iter()
                .map(|g| g.rename(|n| format!("{n}@0"), &full))
                .collect();
            return Ok(Ideal::new(&full, gens?));
        }
        let mut gens: Vec<KPoly<P>> = Vec::new();
        for (i, curve) in self.variety.factors().iter().enumerate() {
            let factor_image = factor_multiplication_image(curve, k, self.budget)?;
            // xa@j -> x{i+1}@j, ya@j -> y{i+1}@j.
            for g in factor_image.generators() {
                gens.push(g.rename(
                    |n| {
                        let (base, level) = n.split_once('@').unwrap();
                        match base {
                            "xa" => format!("x{}@{}", i + 1, level),
                            "ya" => format!("y{}@{}", i + 1, level),
                            other => format!("{other}@{level}"),
                        }
                    },
                    &full,
                )?);
            }
        }
        Ok(Ideal::new(&full, gens))
    }

    /// Crit^k(A, X) = [p^k]_* J^k(A) ∩ J^k(X).
    pub fn critical_scheme(&self, x: &Subvariety<P>, k: usize) -> Result<CriticalScheme<P>> {
        let image = self.multiplication_image(k)?;
        let jets = prolong_ideal(x.presentation(), k, self.budget)?;
        let ideal = image.sum(&jets.ideal())?;
        Ok(CriticalScheme {
            order: k,
            vars: self.jet_vars(k),
            ideal,
        })
    }

    /// Exc^k(A, X): eliminate every jet variable of positive level
    /// from the critical ideal and read the result on the patch.
    pub fn exceptional_scheme(&self, x: &Subvariety<P>, k: usize) -> Result<ExceptionalScheme<P>> {
        if k == 0 {
            return Ok(ExceptionalScheme {
                order: 0,
                locus: x.clone(),
                stabilized_at: None,
            });
        }
        let crit = self.critical_scheme(x, k)?;
        let patch = self.variety.patch_vars();
        let drop: Vec<String> = crit
            .vars
            .names()
            .iter()
            .filter(|n| !n.ends_with("@0"))
            .cloned()
            .collect();
        let drop_refs: Vec<&str> = drop.iter().map(String::as_str).collect();
        let elim = crit.ideal.eliminate(&drop_refs, self.budget)?;
        let extra: Result<Vec<KPoly<P>>> = elim
            .generators()
            .iter()
            .map(|g| g.rename(|n| n.trim_end_matches("@0").to_string(), &patch))
            .collect();
        let locus = Subvariety::new(self.variety, extra?)?;
        Ok(ExceptionalScheme {
            order: k,
            locus,
            stabilized_at: None,
        })
    }

    /// Walk Exc^1, Exc^2, ... until two consecutive schemes agree as
    /// reduced subvarieties or the order budget runs out. The
    /// inconclusive case is a status, not an error.
    pub fn stable_exceptional(&self, x: &Subvariety<P>, k_max: usize) -> Result<ExceptionalScheme<P>> {
        let mut prev = self.exceptional_scheme(x, 0)?;
        for k in 1..=k_max {
            let mut cur = self.exceptional_scheme(x, k)?;
            let rel = cur.locus.relation(&prev.locus, self.budget)?;
            if rel == SubschemeRelation::Equal {
                cur.stabilized_at = Some(k - 1);
                return Ok(cur);
            }
            prev = cur;
        }
        Ok(prev)
    }

    /// The proof's iteration: translate by coset representatives of
    /// Γ/p^mΓ, take Exc^m, translate back, union, and repeat on the
    /// recorded pieces until the union stops shrinking.
    pub fn build_linear_locus(
        &self,
        x: &Subvariety<P>,
        gamma: &Subgroup<P>,
        m: usize,
    ) -> Result<LinearLocusResult<P>> {
        let p_pow = (P as u64)
            .checked_pow(m as u32)
            .ok_or_else(|| Error::Budget {
                stage: "coset enumeration",
                detail: format!("p^{m} overflows"),
            })?;
        let reps = gamma.coset_reps(self.variety, p_pow, self.budget)?;
        let mut components: Vec<Subvariety<P>> = vec![x.clone()];
        let mut current_union: KIdeal<P> = x.ideal().clone();
        let mut iterations: Vec<IterationRecord> = Vec::new();
        let mut decomposition_incomplete = false;

        for _round in 0..self.budget.max_iterations {
            let mut pieces: Vec<Subvariety<P>> = Vec::new();
            let mut records: Vec<PieceRecord> = Vec::new();
            for (ci, comp) in components.iter().enumerate() {
                for (qi, q) in reps.iter().enumerate() {
                    let shifted = match self.variety.translate(comp, q, self.budget) {
                        Ok(s) => s,
                        Err(Error::ChartEscape(_)) => {
                            // Keep the component whole: sound superset.
                            pieces.push(comp.clone());
                            records.push(PieceRecord {
                                component: ci,
                                coset: qi,
                                strict: false,
                                escaped: true,
                            });
                            decomposition_incomplete = true;
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    let exc = self.exceptional_scheme(&shifted, m)?;
                    let strict = matches!(
                        exc.locus.relation(&shifted, self.budget)?,
                        SubschemeRelation::ContainedIn
                    );
                    let back = if exc.locus.ideal().is_trivial(self.budget)? {
                        exc.locus.clone()
                    } else {
                        self.variety
                            .translate(&exc.locus, &self.variety.negate(q), self.budget)?
                    };
                    pieces.push(back);
                    records.push(PieceRecord {
                        component: ci,
                        coset: qi,
                        strict,
                        escaped: false,
                    });
                }
            }
            let kept = absorb_pieces(pieces, self.budget)?;
            let union = union_ideal(self.variety, &kept)?;
            let relation = union.subscheme_relation(&current_union, self.budget)?;
            iterations.push(IterationRecord {
                pieces: records,
                relation,
            });
            let locus = Subvariety::new(
                self.variety,
                union.generators().to_vec(),
            )?;
            if relation == SubschemeRelation::Equal {
                return Ok(LinearLocusResult {
                    locus,
                    iterations,
                    m_used: m,
                    stabilized: true,
                    decomposition_incomplete,
                });
            }
            // Pieces that resist further splitting iterate whole; the
            // recorded constituents are the only decomposition used.
            components = kept;
            current_union = union;
        }
        Ok(LinearLocusResult {
            locus: Subvariety::new(self.variety, current_union.generators().to_vec())?,
            iterations,
            m_used: m,
            stabilized: false,
            decomposition_incomplete,
        })
    }

    /// Search mode: smallest m ≤ m_max whose first iteration shrinks
    /// every translated component strictly.
    pub fn find_strict_m(
        &self,
        x: &Subvariety<P>,
        gamma: &Subgroup<P>,
        m_max: usize,
    ) -> Result<Option<usize>> {
        for m in 1..=m_max {
            let p_pow = (P as u64).pow(m as u32);
            let reps = gamma.coset_reps(self.variety, p_pow, self.budget)?;
            let mut all_strict = true;
            for q in &reps {
                let shifted = self.variety.translate(x, q, self.budget)?;
                let exc = self.exceptional_scheme(&shifted, m)?;
                let rel = exc.locus.relation(&shifted, self.budget)?;
                if rel != SubschemeRelation::ContainedIn {
                    all_strict = false;
                    break;
                }
            }
            if all_strict {
                return Ok(Some(m));
            }
        }
        Ok(None)
    }
}

/// Per-factor [p^k]_* J^k(E) in the jet variables of (xa, ya): the
/// k-fold composition of the jet of [p], eliminating the source copy
/// at each step.
fn factor_multiplication_image<const P: u64>(
    curve: &crate::curves::EllipticCurve<P>,
    k: usize,
    budget: &Budget,
) -> Result<KIdeal<P>> {
    let graph = multiplication_graph(curve, P, budget)?;
    let jet_graph = prolong_ideal(&graph, k, budget)?;
    let graph_ideal = jet_graph.ideal();
    let source_vars = VarSet::new(["xa", "ya"]);
    let source_jets = jet_vars(&source_vars, k);
    let drop: Vec<&str> = source_jets.names().iter().map(String::as_str).collect();

    // Start from J^k(E) on the source copy.
    let e_patch = AffinePresentation::new(
        source_vars.clone(),
        vec![curve.relation(&source_vars, "xa", "ya")?],
    );
    let mut image = prolong_ideal(&e_patch, k, budget)?.ideal();
    for _ in 0..k {
        let combined = graph_ideal.sum(&image.embed_into(graph_ideal.vars())?)?;
        let elim = combined.eliminate(&drop, budget)?;
        // xb@j -> xa@j for the next composition round.
        let gens: Result<Vec<KPoly<P>>> = elim
            .generators()
            .iter()
            .map(|g| {
                g.rename(
                    |n| match n.split_once('@') {
                        Some(("xb", l)) => format!("xa@{l}"),
                        Some(("yb", l)) => format!("ya@{l}"),
                        _ => n.to_string(),
                    },
                    &source_jets,
                )
            })
            .collect();
        image = Ideal::new(&source_jets, gens?);
    }
    Ok(image)
}

/// Drop empty pieces and pieces contained in another kept piece.
fn absorb_pieces<const P: u64>(
    pieces: Vec<Subvariety<P>>,
    budget: &Budget,
) -> Result<Vec<Subvariety<P>>> {
    let mut kept: Vec<Subvariety<P>> = Vec::new();
    'outer: for piece in pieces {
        if piece.ideal().is_trivial(budget)? {
            continue;
        }
        for existing in &kept {
            match existing.relation(&piece, budget)? {
                SubschemeRelation::Equal | SubschemeRelation::Contains => continue 'outer,
                _ => {}
            }
        }
        kept.retain_mut(|existing| {
            // Safe to drop existing pieces the new one contains.
            !matches!(
                piece.relation(existing, budget),
                Ok(SubschemeRelation::Contains)
            )
        });
        kept.push(piece);
    }
    Ok(kept)
}

/// Union as an ideal intersection fold, in deterministic order.
fn union_ideal<const P: u64>(
    variety: &GroupVariety<P>,
    pieces: &[Subvariety<P>],
) -> Result<KIdeal<P>> {
    let vars = variety.patch_vars();
    let budget = Budget::default();
    match pieces {
        [] => Ok(Ideal::unit(&vars)),
        [single] => Ok(single.ideal().clone()),
        [first, rest @ ..] => {
            let mut acc = first.ideal().clone();
            for piece in rest {
                acc = acc.intersect(piece.ideal(), &budget)?;
            }
            Ok(acc)
        }
    }
}

impl<const P: u64> Ideal<RatFunc<P>> {
    /// Reinterpret the generators in a larger variable set.
    pub fn embed_into(&self, target: &VarSet) -> Result<Self> {
        let gens: Result<Vec<KPoly<P>>> =
            self.generators().iter().map(|g| g.embed(target)).collect();
        Ok(Ideal::new(target, gens?))
    }
}

/// Convenience entry points mirroring the pipeline operations.
pub fn critical_scheme<const P: u64>(
    variety: &GroupVariety<P>,
    x: &Subvariety<P>,
    k: usize,
    budget: &Budget,
) -> Result<CriticalScheme<P>> {
    ExcEngine::new(variety, budget).critical_scheme(x, k)
}

pub fn exceptional_scheme<const P: u64>(
    variety: &GroupVariety<P>,
    x: &Subvariety<P>,
    k: usize,
    budget: &Budget,
) -> Result<ExceptionalScheme<P>> {
    ExcEngine::new(variety, budget).exceptional_scheme(x, k)
}

pub fn stable_exceptional<const P: u64>(
    variety: &GroupVariety<P>,
    x: &Subvariety<P>,
    k_max: usize,
    budget: &Budget,
) -> Result<ExceptionalScheme<P>> {
    ExcEngine::new(variety, budget).stable_exceptional(x, k_max)
}

pub fn build_linear_locus<const P: u64>(
    variety: &GroupVariety<P>,
    x: &Subvariety<P>,
    gamma: &Subgroup<P>,
    m: usize,
    budget: &Budget,
) -> Result<LinearLocusResult<P>> {
    ExcEngine::new(variety, budget).build_linear_locus(x, gamma, m)
}
