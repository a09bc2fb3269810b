//! The action of the pure cactus group `PJ_4` on the vertices of the Cayley
//! graph of `J_4'`.
//!
//! Every element of `J_4` is uniquely `w * s14^p` with `w` in `J_4'`, and `s14`
//! normalises `J_4'`. A pure element `g = w s14^p` acts on a vertex `h` by
//! `h ↦ w σ^p(h)` where `σ` is conjugation by `s14`.

use std::collections::BTreeSet;

use crate::cactus::CactusGroup;
use crate::error::{Error, Result};
use crate::rewrite::RewriteSystem;
use crate::words::{Letter, Word};

/// The twenty elements `a_1 .. a_20` of `J_4'` at distance four from `e`.
pub const A_WORDS: [&str; 20] = [
    "s13 s24 s12 s34",
    "s13 s24 s13 s24",
    "s13 s34 s23 s12",
    "s13 s34 s13 s23",
    "s23 s12 s23 s13",
    "s23 s12 s24 s12",
    "s23 s34 s13 s34",
    "s24 s34 s23 s34",
    "s24 s12 s24 s23",
    "s24 s12 s23 s34",
    "s24 s13 s24 s13",
    "s24 s23 s13 s34",
    "s34 s23 s34 s24",
    "s34 s23 s12 s24",
    "s34 s13 s34 s23",
    "s34 s13 s23 s24",
    "s34 s12 s24 s13",
    "s12 s24 s12 s23",
    "s12 s23 s34 s13",
    "s12 s23 s12 s13",
];

/// `g_i = a_k s14^p` as `(k, p)`.
pub const G_TABLE: [(usize, u8); 10] =
    [(1, 1), (2, 0), (3, 1), (4, 1), (5, 0), (6, 1), (7, 1), (8, 0), (10, 1), (12, 1)];

/// `g_i^-1 = a_k s14^p` as `(k, p)`.
pub const G_INVERSE_TABLE: [(usize, u8); 10] =
    [(16, 1), (11, 0), (14, 1), (9, 1), (20, 0), (15, 1), (18, 1), (13, 0), (19, 1), (17, 1)];

/// An element of `PJ_4` stored as `w * s14^parity` with `w` a canonical word of
/// `J_4'`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PureElement {
    j4p: Word,
    parity: u8,
}

impl PureElement {
    pub fn j4p_form(&self) -> &Word {
        &self.j4p
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    /// The element as a word of `J_4`.
    pub fn word(&self) -> Word {
        let mut w = self.j4p.clone();
        if self.parity == 1 {
            w.0.push(Letter::pos(CactusGroup::j4().longest()));
        }
        w
    }

    pub fn is_identity(&self) -> bool {
        self.j4p.is_empty() && self.parity == 0
    }
}

/// A named element `g_i` or `g_i^-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Named {
    pub index: usize,
    pub inverse: bool,
    pub element: PureElement,
}

impl Named {
    pub fn name(&self) -> String {
        if self.inverse {
            format!("g{}^-1", self.index)
        } else {
            format!("g{}", self.index)
        }
    }
}

pub struct PureAction {
    sys: RewriteSystem,
}

impl PureAction {
    pub fn new(sys: RewriteSystem) -> Result<Self> {
        let g = sys.group();
        let j4p = CactusGroup::j4_prime();
        if g.degree() != 4 || g.generators() != j4p.generators() {
            return Err(Error::InvalidArgument("the action needs a rewriting system for J_4'".into()));
        }
        Ok(PureAction { sys })
    }

    pub fn rewriting(&self) -> &RewriteSystem {
        &self.sys
    }

    fn sigma(&self, w: &Word) -> Word {
        CactusGroup::j4().conjugate_by_longest(w)
    }

    /// Normalises a pure word of `J_4`.
    pub fn element(&self, w: &Word) -> Result<PureElement> {
        let j4 = CactusGroup::j4();
        if !j4.contains_word(w) {
            return Err(Error::InvalidArgument("not a word of J_4".into()));
        }
        if !j4.is_pure(w) {
            return Err(Error::InvalidArgument(format!("`{}` is not pure", j4.format(w))));
        }
        let (wp, parity) = j4.push_longest_right(w);
        Ok(PureElement { j4p: self.sys.canonical_form(&wp)?, parity })
    }

    pub fn identity(&self) -> PureElement {
        PureElement { j4p: Word::empty(), parity: 0 }
    }

    /// `Γ(g, h)`: the image of the vertex `h`.
    pub fn gamma(&self, g: &PureElement, h: &Word) -> Result<Word> {
        let h = if g.parity == 1 { self.sigma(h) } else { h.clone() };
        self.sys.multiply(&[&g.j4p, &h])
    }

    /// `g · e`.
    pub fn orbit_point(&self, g: &PureElement) -> Word {
        g.j4p.clone()
    }

    pub fn product(&self, g: &PureElement, h: &PureElement) -> Result<PureElement> {
        Ok(PureElement { j4p: self.gamma(g, &h.j4p)?, parity: g.parity ^ h.parity })
    }

    pub fn inverse(&self, g: &PureElement) -> Result<PureElement> {
        let inv = CactusGroup::j4().alphabet().invert(&g.j4p);
        let w = if g.parity == 1 { self.sigma(&inv) } else { inv };
        Ok(PureElement { j4p: self.sys.canonical_form(&w)?, parity: g.parity })
    }

    pub fn a(&self, k: usize) -> Result<Word> {
        let w = CactusGroup::j4().parse(A_WORDS[k - 1])?;
        self.sys.canonical_form(&w)
    }

    pub fn g(&self, i: usize) -> Result<PureElement> {
        let (k, p) = G_TABLE[i - 1];
        Ok(PureElement { j4p: self.a(k)?, parity: p })
    }

    /// `g_1 .. g_10` followed by their inverses.
    pub fn named_elements(&self) -> Result<Vec<Named>> {
        let mut out = Vec::new();
        for i in 1..=10 {
            out.push(Named { index: i, inverse: false, element: self.g(i)? });
        }
        for i in 1..=10 {
            out.push(Named { index: i, inverse: true, element: self.inverse(&self.g(i)?)? });
        }
        Ok(out)
    }

    /// Nontrivial pure elements moving `e` by at most `max_dist`.
    pub fn pure_elements_within(&self, max_dist: usize) -> Result<BTreeSet<PureElement>> {
        if max_dist > 4 {
            return Err(Error::InvalidArgument(format!("max_dist {max_dist} > 4 is not supported")));
        }
        let j4 = CactusGroup::j4();
        let top = j4.project(&Word(vec![Letter::pos(j4.longest())]));
        let mut out = BTreeSet::new();
        for sphere in self.sys.spheres(max_dist)?.into_iter().skip(1) {
            for w in sphere {
                let p = j4.project(&w);
                if p.is_identity() {
                    out.insert(PureElement { j4p: w, parity: 0 });
                } else if p == top {
                    out.insert(PureElement { j4p: w, parity: 1 });
                }
            }
        }
        Ok(out)
    }

    pub fn distance(&self, u: &Word, v: &Word) -> Result<usize> {
        self.sys.distance(u, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn act() -> PureAction {
        PureAction::new(RewriteSystem::j4_prime()).unwrap()
    }

    fn w(s: &str) -> Word {
        CactusGroup::j4().parse(s).unwrap()
    }

    #[test]
    fn gamma_examples() {
        let a = act();
        let g1 = a.g(1).unwrap();
        assert_eq!(a.gamma(&g1, &Word::empty()).unwrap(), a.a(1).unwrap());
        let h = w("s23 s24");
        assert_eq!(a.gamma(&a.identity(), &h).unwrap(), a.rewriting().canonical_form(&h).unwrap());
        let img = a.gamma(&g1, &w("s34 s12")).unwrap();
        assert_eq!(img, a.rewriting().canonical_form(&w("s13 s24")).unwrap());
    }

    #[test]
    fn orbit_points() {
        let a = act();
        assert_eq!(a.orbit_point(&a.g(2).unwrap()), a.a(2).unwrap());
        assert_eq!(a.orbit_point(&a.g(10).unwrap()), a.a(12).unwrap());
        assert!(a.orbit_point(&a.identity()).is_empty());
    }

    #[test]
    fn element_normalises_raw_words() {
        let a = act();
        let g1 = a.element(&w("s13 s24 s12 s34 s14")).unwrap();
        assert_eq!(g1, a.g(1).unwrap());
        let c = a.rewriting().canonical_form(&w("s13 s24 s12 s34")).unwrap();
        assert_eq!(g1.word(), c.concat(&w("s14")));
        assert!(a.element(&w("s12")).is_err());
    }

    #[test]
    fn enumeration() {
        let a = act();
        assert!(a.pure_elements_within(3).unwrap().is_empty());
        let found = a.pure_elements_within(4).unwrap();
        let named: BTreeSet<PureElement> = a.named_elements().unwrap().into_iter().map(|n| n.element).collect();
        assert_eq!(found.len(), 20);
        assert_eq!(found, named);
        assert!(a.pure_elements_within(5).is_err());
    }

    #[test]
    fn inverses_match_table() {
        let a = act();
        for i in 1..=10 {
            let (k, p) = G_INVERSE_TABLE[i - 1];
            let inv = a.inverse(&a.g(i).unwrap()).unwrap();
            assert_eq!(inv, PureElement { j4p: a.a(k).unwrap(), parity: p }, "g{i}");
            assert!(a.product(&a.g(i).unwrap(), &inv).unwrap().is_identity());
        }
    }

    #[test]
    fn action_law_and_freeness() {
        let a = act();
        let named = a.named_elements().unwrap();
        let sys = a.rewriting();
        let ball: Vec<Word> = sys.spheres(2).unwrap().into_iter().flatten().collect();
        for x in &named {
            for y in &named {
                let xy = a.product(&x.element, &y.element).unwrap();
                for h in &ball {
                    let lhs = a.gamma(&xy, h).unwrap();
                    let rhs = a.gamma(&x.element, &a.gamma(&y.element, h).unwrap()).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
            for h in &ball {
                assert_ne!(&a.gamma(&x.element, h).unwrap(), h);
            }
            assert_eq!(a.distance(&Word::empty(), &a.orbit_point(&x.element)).unwrap() % 2, 0);
        }
    }
}
