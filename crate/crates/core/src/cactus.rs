//! Cactus groups `J_n` and their subgroups `J_n^S`, the projection to `S_n`,
//! and the normal form `w' * s_1n^parity` used by the pure cactus action.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::words::{Alphabet, GenId, Generator, Letter, Presentation, Word};

/// The interval `[p, q]` indexing the generator `s_pq`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub p: u8,
    pub q: u8,
}

impl Interval {
    pub fn new(p: u8, q: u8, n: u8) -> Result<Self> {
        if p >= 1 && p < q && q <= n {
            Ok(Interval { p, q })
        } else {
            Err(Error::InvalidArgument(format!("[{p},{q}] is not an interval of [1,{n}]")))
        }
    }

    pub fn len(self) -> u8 {
        self.q - self.p + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    pub fn disjoint(self, o: Interval) -> bool {
        self.q < o.p || o.q < self.p
    }

    pub fn contains(self, o: Interval) -> bool {
        self.p <= o.p && o.q <= self.q
    }

    /// Mirror image of a subinterval `o` under the reversal of `self`.
    pub fn mirror(self, o: Interval) -> Interval {
        Interval { p: self.p + self.q - o.q, q: self.p + self.q - o.p }
    }

    pub fn name(self) -> String {
        if self.p < 10 && self.q < 10 {
            format!("s{}{}", self.p, self.q)
        } else {
            format!("s{}_{}", self.p, self.q)
        }
    }
}

/// A permutation of `{1..n}`, stored as the image of each point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n as u8).collect() }
    }

    pub fn from_images(images: Vec<u8>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &i in &images {
            if i == 0 || i as usize > n || seen[i as usize] {
                return Err(Error::InvalidArgument("images do not form a bijection".into()));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// The reversal of positions `p..q`.
    pub fn reversal(n: usize, iv: Interval) -> Self {
        let mut images: Vec<u8> = (1..=n as u8).collect();
        for i in iv.p..=iv.q {
            images[i as usize - 1] = iv.p + iv.q - i;
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: u8) -> u8 {
        self.images[i as usize - 1]
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&i| self.apply(i)).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &i)| i as usize == k + 1)
    }

    pub fn sign(&self) -> i32 {
        let mut seen = vec![false; self.degree() + 1];
        let mut sign = 1;
        for start in 1..=self.degree() as u8 {
            if seen[start as usize] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i as usize] {
                seen[i as usize] = true;
                i = self.apply(i);
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Cycle notation without fixed points, `e` for the identity.
    pub fn cycle_notation(&self) -> String {
        let n = self.degree();
        let sep = if n >= 10 { "," } else { "" };
        let mut seen = vec![false; n + 1];
        let mut out = String::new();
        for start in 1..=n as u8 {
            if seen[start as usize] || self.apply(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut i = start;
            while !seen[i as usize] {
                seen[i as usize] = true;
                cyc.push(i.to_string());
                i = self.apply(i);
            }
            out.push('(');
            out.push_str(&cyc.join(sep));
            out.push(')');
        }
        if out.is_empty() {
            "e".into()
        } else {
            out
        }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.cycle_notation())
    }
}

/// A relation `lhs = rhs` between two-letter words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

/// `J_n` or a subgroup `J_n^S`.
///
/// Words are always written over the full alphabet of `J_n` (all intervals in
/// lexicographic order), so elements of `J_n^S` are simply words avoiding the
/// excluded generators.
#[derive(Clone, Debug)]
pub struct CactusGroup {
    n: u8,
    intervals: Vec<Interval>,
    alphabet: Alphabet,
    gens: Vec<GenId>,
    relations: Vec<Relation>,
    relators: Vec<Word>,
}

impl CactusGroup {
    /// The full cactus group `J_n`.
    pub fn new(n: u8) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("degree {n} < 2")));
        }
        Self::subgroup(n, &(2..=n).collect::<Vec<_>>())
    }

    /// `J_n^S`: generators `s_pq` with `q - p + 1 ∈ S`.
    ///
    /// Relations whose second interval is not itself a generator are skipped.
    pub fn subgroup(n: u8, s: &[u8]) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("degree {n} < 2")));
        }
        if s.is_empty() || s.iter().any(|&k| k < 2 || k > n) {
            return Err(Error::InvalidArgument(format!("subset {s:?} is empty or not inside [2,{n}]")));
        }
        let mut intervals = Vec::new();
        for p in 1..n {
            for q in p + 1..=n {
                intervals.push(Interval { p, q });
            }
        }
        let alphabet = Alphabet::new(intervals.iter().map(|iv| Generator::new(iv.name(), true)).collect())?;
        let id = |iv: Interval| intervals.iter().position(|&x| x == iv).unwrap() as GenId;
        let gens: Vec<GenId> = intervals.iter().filter(|iv| s.contains(&iv.len())).map(|&iv| id(iv)).collect();

        let scratch = Presentation::new(alphabet.clone(), vec![])?;
        let mut by_class: BTreeMap<Word, Word> = BTreeMap::new();
        for &a in &gens {
            let pq = intervals[a as usize];
            for &b in &gens {
                let mr = intervals[b as usize];
                let other = if pq.disjoint(mr) {
                    mr
                } else if pq.contains(mr) {
                    pq.mirror(mr)
                } else {
                    continue;
                };
                if !gens.contains(&id(other)) {
                    continue;
                }
                let lhs = Word(vec![Letter::pos(a), Letter::pos(b)]);
                let rhs = Word(vec![Letter::pos(id(other)), Letter::pos(a)]);
                if lhs == rhs {
                    continue;
                }
                let relator = lhs.concat(&alphabet.invert(&rhs));
                if alphabet.cyclic_reduce(&relator).is_empty() {
                    continue;
                }
                by_class.entry(scratch.canonical_relator(&relator)).or_insert(relator);
            }
        }
        let relations: Vec<Relation> = by_class.into_values().map(|r| least_equation(&alphabet, &r)).collect();
        let relators = relations.iter().map(|r| r.lhs.concat(&alphabet.invert(&r.rhs))).collect();
        Ok(CactusGroup { n, intervals, alphabet, gens, relations, relators })
    }

    pub fn j4() -> &'static CactusGroup {
        static G: OnceLock<CactusGroup> = OnceLock::new();
        G.get_or_init(|| CactusGroup::new(4).expect("J_4"))
    }

    /// `J_4' = J_4^{[2,3]}`.
    pub fn j4_prime() -> &'static CactusGroup {
        static G: OnceLock<CactusGroup> = OnceLock::new();
        G.get_or_init(|| CactusGroup::subgroup(4, &[2, 3]).expect("J_4'"))
    }

    pub fn degree(&self) -> u8 {
        self.n
    }

    /// Alphabet of all `s_pq` of `J_n`.
    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generators(&self) -> &[GenId] {
        &self.gens
    }

    pub fn interval(&self, gen: GenId) -> Interval {
        self.intervals[gen as usize]
    }

    pub fn gen_of(&self, iv: Interval) -> Option<GenId> {
        self.intervals.iter().position(|&x| x == iv).map(|i| i as GenId)
    }

    /// Non-involution relations, one per relator class.
    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Non-involution relators `lhs * rhs^-1` over the full alphabet.
    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.0.iter().all(|l| self.gens.contains(&l.gen))
    }

    pub fn parse(&self, s: &str) -> Result<Word> {
        let w = self.alphabet.parse(s)?;
        if !self.contains_word(&w) {
            return Err(Error::InvalidArgument(format!("`{s}` uses a generator outside the group")));
        }
        Ok(w)
    }

    pub fn format(&self, w: &Word) -> String {
        self.alphabet.format(w)
    }

    /// The presentation on this group's own generators, with involution
    /// relators implicit in the alphabet.
    pub fn presentation(&self) -> Presentation {
        let sub = Alphabet::new(self.gens.iter().map(|&g| Generator::new(self.alphabet.name(g), true)).collect())
            .expect("subalphabet");
        let remap = |w: &Word| -> Word {
            w.0.iter().map(|l| Letter::pos(self.gens.iter().position(|&g| g == l.gen).unwrap() as GenId)).collect()
        };
        Presentation::new(sub, self.relators.iter().map(remap).collect()).expect("presentation")
    }

    pub fn format_relation(&self, r: &Relation) -> String {
        format!("{} = {}", self.format(&r.lhs), self.format(&r.rhs))
    }

    /// `π(w)`, the product of interval reversals.
    pub fn project(&self, w: &Word) -> Permutation {
        let n = self.n as usize;
        w.0.iter().fold(Permutation::identity(n), |acc, l| acc.compose(&Permutation::reversal(n, self.interval(l.gen))))
    }

    pub fn is_pure(&self, w: &Word) -> bool {
        self.project(w).is_identity()
    }

    /// The generator `s_1n`.
    pub fn longest(&self) -> GenId {
        self.gen_of(Interval { p: 1, q: self.n }).unwrap()
    }

    /// Conjugation by `s_1n`: `s_pq ↦ s_{n+1-q, n+1-p}`.
    pub fn conjugate_by_longest(&self, w: &Word) -> Word {
        let n = self.n;
        w.0.iter()
            .map(|l| {
                let iv = self.interval(l.gen);
                Letter::pos(self.gen_of(Interval { p: n + 1 - iv.q, q: n + 1 - iv.p }).unwrap())
            })
            .collect()
    }

    /// Rewrites `w` as `w' * s_1n^parity` with `w'` free of `s_1n`, moving each
    /// `s_1n` to the right via `s_1n s_pq = s_{n+1-q,n+1-p} s_1n`.
    pub fn push_longest_right(&self, w: &Word) -> (Word, u8) {
        let top = self.longest();
        let mut parity = 0u8;
        let mut out = Vec::with_capacity(w.len());
        for &l in &w.0 {
            if l.gen == top {
                parity ^= 1;
            } else if parity == 1 {
                out.extend(self.conjugate_by_longest(&Word(vec![l])).0);
            } else {
                out.push(Letter::pos(l.gen));
            }
        }
        (self.alphabet.free_reduce(&Word(out)), parity)
    }
}

/// Among all ways of reading a relator as `u = v` with `|u| = |v|`, the one
/// with the shortlex-least `u` (then `v`).
fn least_equation(alphabet: &Alphabet, r: &Word) -> Relation {
    let h = r.len() / 2;
    let inv = alphabet.invert(r);
    r.rotations()
        .chain(inv.rotations())
        .map(|rot| Relation { lhs: Word(rot.0[..h].to_vec()), rhs: alphabet.invert(&Word(rot.0[h..].to_vec())) })
        .min_by(|a, b| (&a.lhs, &a.rhs).cmp(&(&b.lhs, &b.rhs)))
        .expect("nonempty relator")
}

/// Oracle for relation generation: every pair of intervals checked directly
/// against the defining conditions, returned as unordered relator classes.
#[cfg(test)]
pub(crate) fn brute_force_relator_classes(n: u8, s: &[u8]) -> std::collections::BTreeSet<Vec<(u8, u8)>> {
    let mut out = std::collections::BTreeSet::new();
    let ivs: Vec<(u8, u8)> = (1..n).flat_map(|p| (p + 1..=n).map(move |q| (p, q))).collect();
    let ok = |iv: (u8, u8)| s.contains(&(iv.1 - iv.0 + 1));
    for &(p, q) in &ivs {
        for &(m, r) in &ivs {
            if !ok((p, q)) || !ok((m, r)) {
                continue;
            }
            let other = if q < m || r < p {
                (m, r)
            } else if p <= m && r <= q {
                (p + q - r, p + q - m)
            } else {
                continue;
            };
            if !ok(other) {
                continue;
            }
            if (p, q) == (m, r) {
                continue;
            }
            let cyc = [(p, q), (m, r), (p, q), other];
            let mut forms = Vec::new();
            for seq in [cyc.to_vec(), cyc.iter().rev().copied().collect::<Vec<_>>()] {
                for k in 0..4 {
                    let mut rot = seq[k..].to_vec();
                    rot.extend_from_slice(&seq[..k]);
                    forms.push(rot);
                }
            }
            out.insert(forms.into_iter().min().unwrap());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        CactusGroup::j4().parse(s).unwrap()
    }

    #[test]
    fn j4_presentation_has_the_six_relations() {
        let g = CactusGroup::j4();
        assert_eq!(g.generators().len(), 6);
        assert_eq!(g.relators().len(), 6);
        let p = g.presentation();
        let displayed = [
            "s12 s34 s12 s34",
            "s12 s13 s23 s13",
            "s23 s24 s34 s24",
            "s12 s14 s34 s14",
            "s23 s14 s23 s14",
            "s13 s14 s24 s14",
        ];
        let expected = Presentation::parse(p.alphabet().clone(), &displayed).unwrap();
        assert!(p.same_relators(&expected), "{p}");
    }

    #[test]
    fn relation_display_uses_least_left_side() {
        let g = CactusGroup::j4_prime();
        let shown: Vec<String> = g.relations().iter().map(|r| g.format_relation(r)).collect();
        assert!(shown.contains(&"s12 s13 = s13 s23".to_string()), "{shown:?}");
        assert!(shown.contains(&"s12 s34 = s34 s12".to_string()), "{shown:?}");
        assert!(shown.contains(&"s23 s24 = s24 s34".to_string()), "{shown:?}");
    }

    #[test]
    fn small_degrees() {
        let g2 = CactusGroup::new(2).unwrap();
        assert_eq!(g2.generators().len(), 1);
        assert!(g2.relators().is_empty());
        let g3 = CactusGroup::new(3).unwrap();
        assert_eq!(g3.generators().len(), 3);
        // s13 s12 = s23 s13 and s13 s23 = s12 s13 are rotations of one relator
        assert_eq!(g3.relators().len(), 1);
        let d = CactusGroup::subgroup(3, &[2]).unwrap();
        assert_eq!(d.generators().len(), 2);
        assert!(d.relators().is_empty());
        assert!(CactusGroup::new(1).is_err());
        assert!(CactusGroup::subgroup(4, &[]).is_err());
        assert!(CactusGroup::subgroup(4, &[5]).is_err());
    }

    #[test]
    fn j4_prime_presentation() {
        let g = CactusGroup::j4_prime();
        assert_eq!(g.generators().len(), 5);
        assert_eq!(g.relators().len(), 3);
        let full = CactusGroup::subgroup(4, &[2, 3, 4]).unwrap();
        assert!(full.presentation().same_relators(&CactusGroup::j4().presentation()));
    }

    #[test]
    fn relators_match_brute_force() {
        for (n, s) in [(3u8, vec![2u8, 3]), (4, vec![2, 3, 4]), (4, vec![2, 3]), (5, vec![2, 3, 4, 5]), (5, vec![2, 4])]
        {
            let g = CactusGroup::subgroup(n, &s).unwrap();
            let ours: std::collections::BTreeSet<Vec<(u8, u8)>> = g
                .relators()
                .iter()
                .map(|r| {
                    let seq: Vec<(u8, u8)> = r.0.iter().map(|l| (g.interval(l.gen).p, g.interval(l.gen).q)).collect();
                    let mut forms = Vec::new();
                    for seq in [seq.clone(), seq.iter().rev().copied().collect()] {
                        for k in 0..seq.len() {
                            let mut rot = seq[k..].to_vec();
                            rot.extend_from_slice(&seq[..k]);
                            forms.push(rot);
                        }
                    }
                    forms.into_iter().min().unwrap()
                })
                .collect();
            assert_eq!(ours, brute_force_relator_classes(n, &s), "n={n} S={s:?}");
        }
    }

    #[test]
    fn projection_examples() {
        let g = CactusGroup::j4();
        assert_eq!(g.project(&w("s14")).cycle_notation(), "(14)(23)");
        assert_eq!(g.project(&w("s13 s24 s13 s24")).cycle_notation(), "e");
        assert_eq!(g.project(&w("s13 s24 s12 s34")).cycle_notation(), "(14)(23)");
        assert!(g.is_pure(&w("s13 s24 s13 s24")));
        assert!(!g.is_pure(&w("s12")));
        assert!(g.is_pure(&w("s13 s24 s12 s34 s14")));
    }

    #[test]
    fn push_examples() {
        let g = CactusGroup::j4();
        let (wp, par) = g.push_longest_right(&w("s14 s13 s24 s12 s34"));
        assert_eq!((g.format(&wp), par), ("s24 s13 s34 s12".to_string(), 1));
        let (wp, par) = g.push_longest_right(&w("s14 s14"));
        assert!(wp.is_empty() && par == 0);
        let (wp, par) = g.push_longest_right(&w("s14 s13"));
        assert_eq!((g.format(&wp), par), ("s24".to_string(), 1));
    }

    #[test]
    fn cycle_notation_and_sign() {
        let p = Permutation::from_images(vec![2, 3, 1, 4]).unwrap();
        assert_eq!(p.cycle_notation(), "(123)");
        assert_eq!(p.sign(), 1);
        assert_eq!(Permutation::identity(4).to_string(), "e");
        assert!(Permutation::from_images(vec![1, 1]).is_err());
    }

    #[test]
    fn pure_words_push_into_klein_target() {
        let g = CactusGroup::j4();
        let mut words = vec![Word::empty()];
        let mut pure = 0;
        for _ in 0..6 {
            let mut next = Vec::new();
            for u in &words {
                for x in 0..6u8 {
                    let mut v = u.clone();
                    v.0.push(Letter::pos(x));
                    if g.is_pure(&v) {
                        pure += 1;
                        let (wp, _) = g.push_longest_right(&v);
                        let c = g.project(&wp).cycle_notation();
                        assert!(c == "e" || c == "(14)(23)", "{}", g.format(&v));
                    }
                    next.push(v);
                }
            }
            words = next;
        }
        assert!(pure > 100);
    }

    fn j4_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(0u8..6, 0..=max).prop_map(|v| v.into_iter().map(Letter::pos).collect())
    }

    fn j4p_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::sample::select(vec![0u8, 1, 3, 4, 5]), 0..=max)
            .prop_map(|v| v.into_iter().map(Letter::pos).collect())
    }

    proptest! {
        #[test]
        fn projection_is_a_homomorphism(u in j4_word(8), v in j4_word(8)) {
            let g = CactusGroup::j4();
            prop_assert_eq!(g.project(&u.concat(&v)), g.project(&u).compose(&g.project(&v)));
        }

        #[test]
        fn parity_law(u in j4p_word(12)) {
            let g = CactusGroup::j4();
            let expected = if u.len() % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(g.project(&u).sign(), expected);
        }

        #[test]
        fn push_preserves_projection(u in j4_word(12)) {
            let g = CactusGroup::j4();
            let (wp, par) = g.push_longest_right(&u);
            prop_assert!(!wp.0.iter().any(|l| l.gen == g.longest()));
            let mut back = wp.clone();
            if par == 1 { back.0.push(Letter::pos(g.longest())); }
            prop_assert_eq!(g.project(&back), g.project(&u));
            prop_assert_eq!(g.push_longest_right(&wp), (wp.clone(), 0));
        }

    }
}
