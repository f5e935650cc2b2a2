use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::order::{Mono, TermOrder};
use crate::scalar::Scalar;

/// Ordered list of indeterminate names shared by the polynomials of a
/// presentation. Cheap to clone; compared by content.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarSet(Arc<Vec<String>>);

impl VarSet {
    pub fn new<I, T>(names: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            assert!(!n.is_empty(), "empty variable name");
            assert!(seen.insert(n.clone()), "duplicate variable name `{n}`");
        }
        VarSet(Arc::new(names))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.0[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.0.join(", "))
    }
}

/// Sparse multivariate polynomial over a coefficient field `S`.
/// Terms are stored canonically (structural monomial order) so that
/// equality and iteration are deterministic; ranking under an active
/// term order is computed on demand.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<S: Scalar> {
    vars: VarSet,
    terms: BTreeMap<Mono, S>,
}

impl<S: Scalar> Poly<S> {
    pub fn zero(vars: &VarSet) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &VarSet, c: S) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Mono::unit(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &VarSet) -> Self {
        Self::constant(vars, S::one())
    }

    pub fn var(vars: &VarSet, idx: usize) -> Self {
        assert!(idx < vars.len());
        let mut p = Self::zero(vars);
        p.terms.insert(Mono::var(vars.len(), idx), S::one());
        p
    }

    pub fn var_named(vars: &VarSet, name: &str) -> Result<Self> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var(vars, idx))
    }

    pub fn monomial(vars: &VarSet, mono: Mono, coeff: S) -> Self {
        assert_eq!(mono.arity(), vars.len());
        let mut p = Self::zero(vars);
        if !coeff.is_zero() {
            p.terms.insert(mono, coeff);
        }
        p
    }

    pub fn from_terms(vars: &VarSet, terms: impl IntoIterator<Item = (Mono, S)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &S)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_unit())
    }

    /// The constant value, when the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<S> {
        if self.is_zero() {
            return Some(S::zero());
        }
        if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn is_unit_constant(&self) -> bool {
        self.as_constant().is_some_and(|c| !c.is_zero())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Variables actually occurring.
    pub fn support(&self) -> Vec<usize> {
        let mut used = vec![false; self.vars.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter()
            .enumerate()
            .filter_map(|(i, &u)| u.then_some(i))
            .collect()
    }

    pub(crate) fn add_term(&mut self, mono: Mono, coeff: S) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    fn assert_same_vars(&self, other: &Self) {
        assert!(
            self.vars == other.vars,
            "variable sets differ: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::zero(&self.vars);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = Self::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        let mut out = Self::zero(&self.vars);
        for (m, a) in &self.terms {
            out.terms.insert(m.clone(), a.clone() * c.clone());
        }
        out
    }

    /// self - coeff * mono * other; the inner loop of division.
    pub fn sub_scaled(&self, coeff: &S, mono: &Mono, other: &Self) -> Self {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(mono.mul(m), -(coeff.clone() * c.clone()));
        }
        out
    }

    /// coeff * mono * self. Monomial shifts preserve term order, so
    /// the term map rebuilds in one sorted pass.
    pub fn mul_monomial(&self, mono: &Mono, coeff: &S) -> Self {
        if coeff.is_zero() {
            return Self::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (mono.mul(m), coeff.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading term under the given order.
    pub fn lead(&self, ord: TermOrder) -> Option<(&Mono, &S)> {
        self.terms
            .iter()
            .max_by(|(a, _), (b, _)| ord.cmp_mono(a, b))
    }

    /// Scale so the leading coefficient under `ord` is 1.
    pub fn monic(&self, ord: TermOrder) -> Self {
        match self.lead(ord) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inverse().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Substitute each variable by the image polynomial with the same
    /// index. All images must share one variable set.
    pub fn substitute(&self, images: &[Self]) -> Self {
        assert_eq!(images.len(), self.vars.len(), "one image per variable");
        let target = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| VarSet::new(Vec::<String>::new()));
        for im in images {
            assert!(im.vars == target, "images live in different rings");
        }
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&images[i].pow(e as u32));
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// Evaluate at a full assignment of scalar values.
    pub fn eval(&self, values: &[S]) -> S {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = S::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term * values[i].clone();
                }
            }
            acc = acc + term;
        }
        acc
    }

    /// Reinterpret in a larger (or reordered) variable set, matching
    /// variables by name.
    pub fn embed(&self, target: &VarSet) -> Result<Self> {
        if *target == self.vars {
            return Ok(self.clone());
        }
        let mut map = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let idx = target
                .index_of(name)
                .ok_or_else(|| Error::UnknownVariable(name.clone()))?;
            map.push(idx);
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.len()];
            for (i, &exp) in m.0.iter().enumerate() {
                e[map[i]] = exp;
            }
            out.terms.insert(Mono(e), c.clone());
        }
        Ok(out)
    }

    /// Restrict to a smaller variable set; every term must only use
    /// variables present in the target.
    pub fn restrict(&self, target: &VarSet) -> Result<Self> {
        let mut map = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            map.push(target.index_of(name));
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.len()];
            for (i, &exp) in m.0.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = exp,
                    None => {
                        return Err(Error::UnknownVariable(self.vars.name(i).to_string()));
                    }
                }
            }
            out.terms.insert(Mono(e), c.clone());
        }
        Ok(out)
    }

    /// Relabel variables through a name map and reinterpret in the
    /// target set.
    pub fn rename(&self, map: impl Fn(&str) -> String, target: &VarSet) -> Result<Self> {
        let mut idx = Vec::with_capacity(self.vars.len());
        for name in self.vars.names() {
            let new = map(name);
            let i = target
                .index_of(&new)
                .ok_or_else(|| Error::UnknownVariable(new))?;
            idx.push(i);
        }
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.len()];
            for (i, &exp) in m.0.iter().enumerate() {
                e[idx[i]] = exp;
            }
            out.terms.insert(Mono(e), c.clone());
        }
        Ok(out)
    }

    pub fn map_coeffs<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Poly<T> {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let t = f(c);
            if !t.is_zero() {
                out.terms.insert(m.clone(), t);
            }
        }
        out
    }

    /// Render with terms sorted descending under `ord`: canonical text
    /// format (`num/den` coefficients, `x1^2*y1` monomials).
    pub fn format_with_order(&self, ord: TermOrder) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut monos: Vec<&Mono> = self.terms.keys().collect();
        monos.sort_by(|a, b| ord.cmp_mono(b, a));
        let mut parts = Vec::with_capacity(monos.len());
        for m in monos {
            let c = &self.terms[m];
            parts.push(self.format_term(m, c));
        }
        parts.join(" + ")
    }

    fn format_term(&self, m: &Mono, c: &S) -> String {
        let mono_str = {
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.vars.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.vars.name(i), e)),
                }
            }
            factors.join("*")
        };
        if mono_str.is_empty() {
            return format!("{c}");
        }
        if c.is_one() {
            return mono_str;
        }
        let c_str = format!("{c}");
        // A sum needs parentheses before `*`; quotients and single
        // terms bind tightly enough on their own.
        if c_str.contains(" + ") && !c_str.starts_with('(') {
            format!("({c_str})*{mono_str}")
        } else {
            format!("{c_str}*{mono_str}")
        }
    }
}

impl<S: Scalar> fmt::Display for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format_with_order(TermOrder::GrevLex))
    }
}

impl<S: Scalar> fmt::Debug for Poly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
