//! Free-group words over alphabets whose generators may be involutions.
//!
//! A [`Word`] is a plain sequence of [`Letter`]s and carries no alphabet; every
//! operation that needs to know which generators are involutive goes through
//! [`Alphabet`]. Words order by shortlex, with letters ordered by declaration
//! index and `x` before `x^-1`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

pub type GenId = u8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub involutive: bool,
}

impl Generator {
    pub fn new(name: impl Into<String>, involutive: bool) -> Self {
        Generator { name: name.into(), involutive }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: GenId,
    pub inverse: bool,
}

impl Letter {
    pub const fn pos(gen: GenId) -> Self {
        Letter { gen, inverse: false }
    }

    pub const fn neg(gen: GenId) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Unreduced concatenation.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// The cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let k = k % self.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    pub fn rotations(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len().max(1)).map(move |k| self.rotate(k))
    }

    pub fn shortlex_cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.shortlex_cmp(other)
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Shortlex comparison under an arbitrary rank function on letters.
pub fn shortlex_less<F: Fn(Letter) -> usize>(w1: &Word, w2: &Word, rank: F) -> bool {
    match w1.len().cmp(&w2.len()) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => {
            for (a, b) in w1.0.iter().zip(&w2.0) {
                match rank(*a).cmp(&rank(*b)) {
                    Ordering::Less => return true,
                    Ordering::Greater => return false,
                    Ordering::Equal => {}
                }
            }
            false
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    gens: Vec<Generator>,
    index: HashMap<String, GenId>,
}

impl Alphabet {
    pub fn new(gens: Vec<Generator>) -> Result<Self> {
        if gens.len() > GenId::MAX as usize {
            return Err(Error::InvalidArgument("too many generators".into()));
        }
        let mut index = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if g.name.is_empty() || g.name == "e" || g.name.contains(char::is_whitespace) || g.name.contains('^') {
                return Err(Error::InvalidArgument(format!("bad generator name `{}`", g.name)));
            }
            if index.insert(g.name.clone(), i as GenId).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        Ok(Alphabet { gens, index })
    }

    /// Alphabet of non-involutive generators with the given names.
    pub fn free<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names.iter().map(|n| Generator::new(n.as_ref(), false)).collect())
    }

    /// Alphabet of involutive generators with the given names.
    pub fn involutive<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        Self::new(names.iter().map(|n| Generator::new(n.as_ref(), true)).collect())
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn name(&self, gen: GenId) -> &str {
        &self.gens[gen as usize].name
    }

    pub fn is_involutive(&self, gen: GenId) -> bool {
        self.gens[gen as usize].involutive
    }

    pub fn find(&self, name: &str) -> Option<GenId> {
        self.index.get(name).copied()
    }

    pub fn gen(&self, name: &str) -> Result<GenId> {
        self.find(name).ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Single-letter word for a named generator.
    pub fn letter_word(&self, name: &str) -> Result<Word> {
        Ok(Word(vec![Letter::pos(self.gen(name)?)]))
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        w.0.iter().all(|l| (l.gen as usize) < self.len())
    }

    /// Letter with the involution convention applied.
    pub fn normalize(&self, l: Letter) -> Letter {
        if self.is_involutive(l.gen) {
            Letter::pos(l.gen)
        } else {
            l
        }
    }

    pub fn inverse_letter(&self, l: Letter) -> Letter {
        if self.is_involutive(l.gen) {
            l
        } else {
            Letter { gen: l.gen, inverse: !l.inverse }
        }
    }

    pub fn cancels(&self, a: Letter, b: Letter) -> bool {
        a.gen == b.gen && (self.is_involutive(a.gen) || a.inverse != b.inverse)
    }

    pub fn free_reduce(&self, w: &Word) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        for &l in &w.0 {
            let l = self.normalize(l);
            match out.last() {
                Some(&top) if self.cancels(top, l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word(out)
    }

    pub fn cyclic_reduce(&self, w: &Word) -> Word {
        let r = self.free_reduce(w);
        let mut lo = 0;
        let mut hi = r.len();
        while hi - lo >= 2 && self.cancels(r.0[lo], r.0[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        Word(r.0[lo..hi].to_vec())
    }

    pub fn invert(&self, w: &Word) -> Word {
        w.0.iter().rev().map(|&l| self.inverse_letter(self.normalize(l))).collect()
    }

    /// Freely reduced product of several words.
    pub fn product(&self, ws: &[&Word]) -> Word {
        let mut all = Word::empty();
        for w in ws {
            all.0.extend_from_slice(&w.0);
        }
        self.free_reduce(&all)
    }

    pub fn power(&self, w: &Word, k: i64) -> Word {
        let base = if k < 0 { self.invert(w) } else { w.clone() };
        let mut all = Word::empty();
        for _ in 0..k.unsigned_abs() {
            all.0.extend_from_slice(&base.0);
        }
        self.free_reduce(&all)
    }

    /// Exponent-sum vector, indexed by generator.
    pub fn exponent_sums(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0; self.len()];
        for l in &w.0 {
            v[l.gen as usize] += l.exponent();
        }
        v
    }

    /// Parses space-separated tokens `x`, `x^-1` or `x^k`; `e` is the identity.
    /// The result is not reduced.
    pub fn parse(&self, s: &str) -> Result<Word> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "e" {
                continue;
            }
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => {
                    let k: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in `{tok}`")))?;
                    (n, k)
                }
                None => (tok, 1),
            };
            let gen = self.gen(name)?;
            let l = self.normalize(if exp < 0 { Letter::neg(gen) } else { Letter::pos(gen) });
            for _ in 0..exp.unsigned_abs() {
                out.push(l);
            }
        }
        Ok(Word(out))
    }

    pub fn format(&self, w: &Word) -> String {
        if w.is_empty() {
            return "e".to_string();
        }
        let parts: Vec<String> =
            w.0.iter()
                .map(|l| {
                    if l.inverse && !self.is_involutive(l.gen) {
                        format!("{}^-1", self.name(l.gen))
                    } else {
                        self.name(l.gen).to_string()
                    }
                })
                .collect();
        parts.join(" ")
    }

    /// Image of `w` under the free-group homomorphism sending each source
    /// generator to its image word over `target`, freely reduced.
    pub fn substitute(&self, w: &Word, images: &BTreeMap<GenId, Word>, target: &Alphabet) -> Result<Word> {
        let mut all = Word::empty();
        for l in &w.0 {
            let img = images.get(&l.gen).ok_or_else(|| Error::UndefinedGenerator(self.name(l.gen).to_string()))?;
            if l.inverse && !self.is_involutive(l.gen) {
                all.0.extend_from_slice(&target.invert(img).0);
            } else {
                all.0.extend_from_slice(&img.0);
            }
        }
        Ok(target.free_reduce(&all))
    }
}

/// A finite presentation: an alphabet and a list of cyclically reduced relators.
///
/// Involutive generators carry their relation `x^2` implicitly through the
/// alphabet; it is not listed among the relators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self> {
        let mut rs = Vec::with_capacity(relators.len());
        for r in &relators {
            if !alphabet.contains_word(r) {
                return Err(Error::InvalidArgument("relator uses a letter outside the alphabet".into()));
            }
            let r = alphabet.cyclic_reduce(r);
            if !r.is_empty() {
                rs.push(r);
            }
        }
        Ok(Presentation { alphabet, relators: rs })
    }

    /// Builds a presentation from relator strings.
    pub fn parse<S: AsRef<str>>(alphabet: Alphabet, relators: &[S]) -> Result<Self> {
        let rs = relators.iter().map(|r| alphabet.parse(r.as_ref())).collect::<Result<Vec<_>>>()?;
        Self::new(alphabet, rs)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Shortlex-least word among the rotations of `r` and of its inverse.
    pub fn canonical_relator(&self, r: &Word) -> Word {
        let r = self.alphabet.cyclic_reduce(r);
        let inv = self.alphabet.invert(&r);
        r.rotations().chain(inv.rotations()).min().unwrap_or_default()
    }

    pub fn canonical_relators(&self) -> BTreeSet<Word> {
        self.relators.iter().map(|r| self.canonical_relator(r)).collect()
    }

    /// True when both presentations have the same generator names and the
    /// same relators up to rotation and inversion.
    pub fn same_relators(&self, other: &Presentation) -> bool {
        let names = |p: &Presentation| {
            p.alphabet.generators().iter().map(|g| (g.name.clone(), g.involutive)).collect::<Vec<_>>()
        };
        if names(self) != names(other) {
            return false;
        }
        let mut a: Vec<Word> = self.relators.iter().map(|r| self.canonical_relator(r)).collect();
        let mut b: Vec<Word> = other.relators.iter().map(|r| other.canonical_relator(r)).collect();
        a.sort();
        b.sort();
        a == b
    }

    pub fn format_relators(&self) -> Vec<String> {
        self.relators.iter().map(|r| self.alphabet.format(r)).collect()
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&str> = self.alphabet.generators().iter().map(|g| g.name.as_str()).collect();
        write!(f, "< {} | {} >", gens.join(", "), self.format_relators().join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn j4() -> Alphabet {
        Alphabet::involutive(&["s12", "s13", "s14", "s23", "s24", "s34"]).unwrap()
    }

    fn gs() -> Alphabet {
        Alphabet::free(&["g2", "g4", "g8", "g9", "g10"]).unwrap()
    }

    #[test]
    fn free_reduce_examples() {
        let a = j4();
        assert!(a.free_reduce(&a.parse("s13 s13").unwrap()).is_empty());
        let w = a.parse("s13 s24 s12 s34 s34 s12 s24 s13").unwrap();
        assert!(a.free_reduce(&w).is_empty());
        let g = gs();
        let w = g.parse("g2 g10 g10^-1").unwrap();
        assert_eq!(g.format(&g.free_reduce(&w)), "g2");
    }

    #[test]
    fn cyclic_reduce_examples() {
        let a = j4();
        assert_eq!(a.format(&a.cyclic_reduce(&a.parse("s12 s34 s12").unwrap())), "s34");
        let s = Alphabet::free(&["α1", "α2", "α3", "α4", "α5"]).unwrap();
        let r = s.parse("α1^2 α2^2 α3^2 α4^2 α5^2").unwrap();
        assert_eq!(s.cyclic_reduce(&r), r);
        assert!(a.cyclic_reduce(&Word::empty()).is_empty());
    }

    #[test]
    fn invert_examples() {
        let a = j4();
        let w = a.parse("s13 s24 s12 s34").unwrap();
        assert_eq!(a.format(&a.invert(&w)), "s34 s12 s24 s13");
        assert!(a.invert(&Word::empty()).is_empty());
        let g = gs();
        assert_eq!(g.format(&g.invert(&g.parse("g4 g9").unwrap())), "g9^-1 g4^-1");
    }

    #[test]
    fn substitute_examples() {
        let src = Alphabet::free(&["α", "β", "γ", "δ", "ε"]).unwrap();
        let g = gs();
        let mut m = BTreeMap::new();
        m.insert(src.gen("β").unwrap(), g.parse("g2 g10").unwrap());
        m.insert(src.gen("γ").unwrap(), g.parse("g10^-1").unwrap());
        let img = src.substitute(&src.parse("β γ").unwrap(), &m, &g).unwrap();
        assert_eq!(g.format(&img), "g2");
        let err = src.substitute(&src.parse("α").unwrap(), &m, &g).unwrap_err();
        assert_eq!(err, Error::UndefinedGenerator("α".into()));

        let s = Alphabet::free(&["α1", "α2", "α3", "α4", "α5"]).unwrap();
        let mut m = BTreeMap::new();
        m.insert(s.gen("α2").unwrap(), g.parse("g2 g10 g9^-1 g4^-2").unwrap());
        m.insert(s.gen("α3").unwrap(), g.parse("g4").unwrap());
        m.insert(s.gen("α4").unwrap(), g.parse("g9 g10^-1").unwrap());
        let img = s.substitute(&s.parse("α2 α3^2 α4").unwrap(), &m, &g).unwrap();
        assert_eq!(g.format(&img), "g2");
    }

    #[test]
    fn shortlex_examples() {
        let a = j4();
        let id = |l: Letter| l.gen as usize * 2 + l.inverse as usize;
        let w = |s: &str| a.parse(s).unwrap();
        assert!(shortlex_less(&Word::empty(), &w("s12"), id));
        assert!(shortlex_less(&w("s12"), &w("s13"), id));
        assert!(!shortlex_less(&w("s12 s13"), &w("s13"), id));
        assert!(w("s12") < w("s13"));
        assert!(w("s34") < w("s12 s12"));
    }

    #[test]
    fn parse_and_format_roundtrip() {
        let g = gs();
        let w = g.parse("g4^-2 g9 e g2^3").unwrap();
        assert_eq!(g.format(&w), "g4^-1 g4^-1 g9 g2 g2 g2");
        assert_eq!(g.format(&Word::empty()), "e");
        assert!(g.parse("g3").is_err());
        assert!(g.parse("g2^x").is_err());
        let a = j4();
        assert_eq!(a.format(&a.parse("s12^-1").unwrap()), "s12");
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert!(matches!(Alphabet::free(&["a", "a"]), Err(Error::DuplicateGenerator(_))));
        assert!(Alphabet::free(&["e"]).is_err());
    }

    #[test]
    fn canonical_relator_is_rotation_and_inversion_invariant() {
        let g = gs();
        let p = Presentation::parse(g.clone(), &["g2 g9 g10^-1 g8^-1 g4 g9 g2 g10 g8^-1 g4^-1"]).unwrap();
        let r = p.relators()[0].clone();
        let c = p.canonical_relator(&r);
        for k in 0..r.len() {
            assert_eq!(p.canonical_relator(&r.rotate(k)), c);
            assert_eq!(p.canonical_relator(&g.invert(&r.rotate(k))), c);
        }
    }

    fn word_strategy(gens: u8, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..gens, any::<bool>()), 0..=max_len)
            .prop_map(|v| v.into_iter().map(|(g, i)| Letter { gen: g, inverse: i }).collect())
    }

    proptest! {
        #[test]
        fn free_reduce_idempotent(w in word_strategy(5, 20)) {
            let g = gs();
            let r = g.free_reduce(&w);
            prop_assert_eq!(g.free_reduce(&r), r);
        }

        #[test]
        fn word_times_inverse_is_trivial(w in word_strategy(5, 20)) {
            let g = gs();
            prop_assert!(g.free_reduce(&w.concat(&g.invert(&w))).is_empty());
            let a = j4();
            let w = Word(w.0.iter().map(|l| a.normalize(*l)).collect());
            prop_assert!(a.free_reduce(&w.concat(&a.invert(&w))).is_empty());
        }

        #[test]
        fn involutive_letters_positive(w in word_strategy(6, 20)) {
            let a = j4();
            prop_assert!(a.free_reduce(&w).0.iter().all(|l| !l.inverse));
        }

        #[test]
        fn substitute_respects_concatenation(u in word_strategy(3, 10), v in word_strategy(3, 10)) {
            let src = Alphabet::free(&["a", "b", "c"]).unwrap();
            let g = gs();
            let mut m = BTreeMap::new();
            m.insert(0, g.parse("g2 g10").unwrap());
            m.insert(1, g.parse("g10^-1 g4").unwrap());
            m.insert(2, g.parse("g8^-1 g4 g9").unwrap());
            let uv = src.substitute(&u.concat(&v), &m, &g).unwrap();
            let su = src.substitute(&u, &m, &g).unwrap();
            let sv = src.substitute(&v, &m, &g).unwrap();
            prop_assert_eq!(uv, g.product(&[&su, &sv]));
            let inv = src.substitute(&src.invert(&u), &m, &g).unwrap();
            prop_assert_eq!(inv, g.invert(&su));
        }

        #[test]
        fn cyclic_reduce_is_cyclically_reduced(w in word_strategy(5, 20)) {
            let g = gs();
            let r = g.cyclic_reduce(&w);
            prop_assert_eq!(g.free_reduce(&r), r.clone());
            if r.len() >= 2 {
                prop_assert!(!g.cancels(r.0[0], r.0[r.len() - 1]));
            }
        }
    }
}
