use std::cmp::Ordering;
use std::fmt;

/// Exponent vector. The derived `Ord` (plain lexicographic on the
/// vector) is only the canonical storage order for term maps; ranking
/// under a term order goes through [`TermOrder::cmp_mono`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Mono(pub Vec<u16>);

impl Mono {
    pub fn unit(arity: usize) -> Self {
        Mono(vec![0; arity])
    }

    pub fn var(arity: usize, idx: usize) -> Self {
        let mut e = vec![0; arity];
        e[idx] = 1;
        Mono(e)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// other / self, when it divides.
    pub fn quotient_into(&self, other: &Self) -> Option<Self> {
        if self.divides(other) {
            Some(Mono(
                other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Mono(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    /// True when the supports are disjoint, i.e. lcm = product.
    pub fn coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            // Smaller exponent in the rightmost differing slot wins.
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

fn lex(a: &[u16], b: &[u16]) -> Ordering {
    for i in 0..a.len() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// Monomial orders. `Block { keep }` is the elimination order that
/// ranks the variable suffix `vars[keep..]` first (graded reverse
/// lexicographic within each block), so a Groebner basis under it
/// intersects down to the first `keep` variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TermOrder {
    GrevLex,
    Lex,
    Block { keep: usize },
}

impl TermOrder {
    pub fn cmp_mono(&self, a: &Mono, b: &Mono) -> Ordering {
        debug_assert_eq!(a.arity(), b.arity());
        match *self {
            TermOrder::GrevLex => grevlex(&a.0, &b.0),
            TermOrder::Lex => lex(&a.0, &b.0),
            TermOrder::Block { keep } => match grevlex(&a.0[keep..], &b.0[keep..]) {
                Ordering::Equal => grevlex(&a.0[..keep], &b.0[..keep]),
                o => o,
            },
        }
    }

    /// True if the monomial only uses the kept block (meaningful for
    /// `Block`; trivially true otherwise).
    pub fn in_kept_block(&self, m: &Mono) -> bool {
        match *self {
            TermOrder::Block { keep } => m.0[keep..].iter().all(|&e| e == 0),
            _ => true,
        }
    }
}

impl fmt::Display for TermOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermOrder::GrevLex => write!(f, "grevlex"),
            TermOrder::Lex => write!(f, "lex"),
            TermOrder::Block { keep } => write!(f, "block(keep={keep})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Mono {
        Mono(e.to_vec())
    }

    #[test]
    fn grevlex_ranks_degree_first_then_reverse_lex() {
        let ord = TermOrder::GrevLex;
        // x^2 > xy > y^2 > x > y in two variables (x first).
        let seq = [
            m(&[2, 0]),
            m(&[1, 1]),
            m(&[0, 2]),
            m(&[1, 0]),
            m(&[0, 1]),
        ];
        for w in seq.windows(2) {
            assert_eq!(ord.cmp_mono(&w[0], &w[1]), Ordering::Greater);
        }
    }

    #[test]
    fn grevlex_vs_lex_disagree_on_classic_pair() {
        // a = x*z^2, b = y^3 (vars x, y, z): lex says a > b, grevlex says b > a?
        // deg a = 3 = deg b; grevlex compares from the right: a has z^2, b has 0,
        // so a < b. lex compares from the left: a has x^1 > 0, so a > b.
        let a = m(&[1, 0, 2]);
        let b = m(&[0, 3, 0]);
        assert_eq!(TermOrder::Lex.cmp_mono(&a, &b), Ordering::Greater);
        assert_eq!(TermOrder::GrevLex.cmp_mono(&a, &b), Ordering::Less);
    }

    #[test]
    fn block_order_dominated_by_suffix() {
        // keep = 1: second variable dominates.
        let ord = TermOrder::Block { keep: 1 };
        assert_eq!(
            ord.cmp_mono(&m(&[5, 0]), &m(&[0, 1])),
            Ordering::Less,
            "any power of the kept variable ranks below one unit of the dropped block"
        );
        assert!(ord.in_kept_block(&m(&[5, 0])));
        assert!(!ord.in_kept_block(&m(&[0, 1])));
    }

    #[test]
    fn monomial_arithmetic() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert_eq!(a.mul(&b), m(&[3, 4]));
        assert!(m(&[1, 0]).divides(&a));
        assert_eq!(m(&[1, 0]).quotient_into(&a), Some(m(&[1, 1])));
        assert_eq!(b.quotient_into(&a), None);
        assert!(m(&[1, 0]).coprime(&m(&[0, 2])));
        assert!(!a.coprime(&b));
    }
}
