//! Bounded rewriting search deciding equality in small cactus groups.
//!
//! Moves are the length-preserving swaps `xy -> zw` read off the four-letter
//! relators, deletion of an adjacent pair `xx`, and insertion of `xx` while the
//! word stays within `slack` letters of the starting length. Canonical forms are
//! shortlex-least words reachable under these moves; whenever a shorter word
//! turns up the search restarts from it.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Mutex;

use crate::cactus::CactusGroup;
use crate::error::{Error, Result};
use crate::words::{GenId, Letter, Presentation, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RewriteBudget {
    pub slack: usize,
    pub max_states: usize,
}

impl RewriteBudget {
    pub fn new(slack: usize, max_states: usize) -> Result<Self> {
        if !slack.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("slack {slack} is odd")));
        }
        Ok(RewriteBudget { slack, max_states })
    }
}

impl Default for RewriteBudget {
    fn default() -> Self {
        RewriteBudget { slack: 2, max_states: 200_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Move {
    /// Replace `from` at `pos` by `to`, where `from * to^-1` is a relator.
    Swap { pos: usize, relator: usize, from: [Letter; 2], to: [Letter; 2] },
    /// Delete `gen gen` at `pos`.
    Cancel { pos: usize, gen: GenId },
    /// Insert `gen gen` at `pos`.
    Insert { pos: usize, gen: GenId },
}

impl Move {
    pub fn reverse(&self) -> Move {
        match *self {
            Move::Swap { pos, relator, from, to } => Move::Swap { pos, relator, from: to, to: from },
            Move::Cancel { pos, gen } => Move::Insert { pos, gen },
            Move::Insert { pos, gen } => Move::Cancel { pos, gen },
        }
    }
}

/// A replayable sequence of moves from one word to another.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EqualityCertificate {
    pub moves: Vec<Move>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equality {
    Equal(EqualityCertificate),
    /// The projections to the symmetric group differ.
    ProvenUnequal,
    /// Both searches finished without meeting.
    NotFoundWithinBudget,
    BudgetExhausted {
        states: usize,
    },
}

impl Equality {
    pub fn is_equal(&self) -> bool {
        matches!(self, Equality::Equal(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Equality::Equal(_) => "equal",
            Equality::ProvenUnequal => "proven-unequal",
            Equality::NotFoundWithinBudget => "not-found-within-budget",
            Equality::BudgetExhausted { .. } => "budget-exhausted",
        }
    }
}

/// A word of involutions packed four bits per letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Packed {
    bits: u128,
    len: u8,
}

impl Packed {
    const CAPACITY: usize = 32;

    fn from_word(w: &Word) -> Packed {
        let mut bits = 0u128;
        for (i, l) in w.0.iter().enumerate() {
            bits |= (l.gen as u128) << (4 * i);
        }
        Packed { bits, len: w.len() as u8 }
    }

    fn to_word(self) -> Word {
        (0..self.len as usize).map(|i| Letter::pos(self.get(i))).collect()
    }

    /// Lexicographic comparison of two words of equal length.
    fn lex_cmp(self, other: Packed) -> std::cmp::Ordering {
        (0..self.len as usize)
            .map(|i| self.get(i).cmp(&other.get(i)))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    }

    fn get(self, i: usize) -> GenId {
        ((self.bits >> (4 * i)) & 0xf) as GenId
    }

    fn low(self, pos: usize) -> u128 {
        if pos >= 32 {
            self.bits
        } else {
            self.bits & ((1u128 << (4 * pos)) - 1)
        }
    }

    fn high(self, pos: usize) -> u128 {
        self.bits.checked_shr(4 * pos as u32).unwrap_or(0)
    }

    fn with_pair(self, pos: usize, a: GenId, b: GenId) -> Packed {
        let mask = !(0xffu128 << (4 * pos));
        let bits = (self.bits & mask) | ((a as u128) << (4 * pos)) | ((b as u128) << (4 * pos + 4));
        Packed { bits, len: self.len }
    }

    fn without_pair(self, pos: usize) -> Packed {
        let bits = self.low(pos) | self.high(pos + 2).checked_shl(4 * pos as u32).unwrap_or(0);
        Packed { bits, len: self.len - 2 }
    }

    fn with_inserted(self, pos: usize, g: GenId) -> Packed {
        let pair = (g as u128) | ((g as u128) << 4);
        let bits = self.low(pos)
            | pair.checked_shl(4 * pos as u32).unwrap_or(0)
            | self.high(pos).checked_shl(4 * (pos as u32 + 2)).unwrap_or(0);
        Packed { bits, len: self.len + 2 }
    }
}

enum Explored {
    Shorter(Word, Vec<Move>),
    Closed(Word, Vec<Move>),
}

pub struct RewriteSystem {
    group: CactusGroup,
    presentation: Presentation,
    budget: RewriteBudget,
    rules: HashMap<[Letter; 2], Vec<([Letter; 2], usize)>>,
    table: Vec<Vec<(GenId, GenId, usize)>>,
    cache: Mutex<HashMap<Word, Word>>,
}

impl RewriteSystem {
    pub fn new(group: &CactusGroup, budget: RewriteBudget) -> Self {
        let a = group.alphabet();
        let mut rules: HashMap<[Letter; 2], Vec<([Letter; 2], usize)>> = HashMap::new();
        for (idx, r) in group.relators().iter().enumerate() {
            assert_eq!(r.len(), 4, "cactus relators have length 4");
            for rot in r.rotations().chain(a.invert(r).rotations()) {
                let from = [rot.0[0], rot.0[1]];
                let to = [a.inverse_letter(rot.0[3]), a.inverse_letter(rot.0[2])];
                let entry = rules.entry(from).or_default();
                if !entry.contains(&(to, idx)) {
                    entry.push((to, idx));
                }
            }
        }
        for v in rules.values_mut() {
            v.sort();
        }
        assert!(a.len() <= 16, "packed search needs at most 16 generators");
        let mut table = vec![Vec::new(); 256];
        for (from, tos) in &rules {
            for &(to, idx) in tos {
                table[from[0].gen as usize * 16 + from[1].gen as usize].push((to[0].gen, to[1].gen, idx));
            }
        }
        let presentation = Presentation::new(a.clone(), group.relators().to_vec()).expect("relators");
        RewriteSystem { group: group.clone(), presentation, budget, rules, table, cache: Mutex::new(HashMap::new()) }
    }

    /// Rewriting for `J_4'` with the default budget.
    pub fn j4_prime() -> Self {
        Self::new(CactusGroup::j4_prime(), RewriteBudget::default())
    }

    /// Rewriting for `J_4` with the default budget.
    pub fn j4() -> Self {
        Self::new(CactusGroup::j4(), RewriteBudget::default())
    }

    pub fn group(&self) -> &CactusGroup {
        &self.group
    }

    pub fn budget(&self) -> RewriteBudget {
        self.budget
    }

    /// All words one move away from `w`, insertions limited to length `bound`.
    pub fn neighbors(&self, w: &Word, bound: usize) -> Vec<(Word, Move)> {
        let l = &w.0;
        let mut out = Vec::new();
        for pos in 0..l.len().saturating_sub(1) {
            let from = [l[pos], l[pos + 1]];
            if let Some(rs) = self.rules.get(&from) {
                for &(to, relator) in rs {
                    let mut v = l.clone();
                    v[pos] = to[0];
                    v[pos + 1] = to[1];
                    out.push((Word(v), Move::Swap { pos, relator, from, to }));
                }
            }
            if l[pos] == l[pos + 1] {
                let mut v = l.clone();
                v.drain(pos..pos + 2);
                out.push((Word(v), Move::Cancel { pos, gen: l[pos].gen }));
            }
        }
        if l.len() + 2 <= bound {
            for pos in 0..=l.len() {
                for &g in self.group.generators() {
                    let mut v = l.clone();
                    v.splice(pos..pos, [Letter::pos(g), Letter::pos(g)]);
                    out.push((Word(v), Move::Insert { pos, gen: g }));
                }
            }
        }
        out
    }

    fn explore(&self, start: &Word) -> Result<Explored> {
        let bound = start.len() + self.budget.slack;
        if bound > Packed::CAPACITY {
            return Err(Error::InvalidArgument(format!(
                "words longer than {} letters are not searched",
                Packed::CAPACITY
            )));
        }
        let origin = Packed::from_word(start);
        let mut index: HashMap<Packed, usize> = HashMap::new();
        let mut nodes: Vec<(Packed, usize, Option<Move>)> = vec![(origin, 0, None)];
        index.insert(origin, 0);
        let path_to = |nodes: &Vec<(Packed, usize, Option<Move>)>, mut i: usize| {
            let mut moves = Vec::new();
            while let Some(m) = &nodes[i].2 {
                moves.push(m.clone());
                i = nodes[i].1;
            }
            moves.reverse();
            moves
        };
        let mut queue = VecDeque::from([0usize]);
        let mut scratch = Vec::new();
        while let Some(i) = queue.pop_front() {
            scratch.clear();
            self.packed_neighbors(nodes[i].0, bound, &mut scratch);
            for (v, m) in scratch.drain(..) {
                if index.contains_key(&v) {
                    continue;
                }
                let shorter = (v.len as usize) < start.len();
                index.insert(v, nodes.len());
                nodes.push((v, i, Some(m)));
                if shorter {
                    return Ok(Explored::Shorter(v.to_word(), path_to(&nodes, nodes.len() - 1)));
                }
                if nodes.len() > self.budget.max_states {
                    return Err(Error::BudgetExhausted { states: nodes.len() });
                }
                queue.push_back(nodes.len() - 1);
            }
        }
        let best = (0..nodes.len())
            .filter(|&i| nodes[i].0.len as usize == start.len())
            .min_by(|&a, &b| nodes[a].0.lex_cmp(nodes[b].0))
            .unwrap();
        Ok(Explored::Closed(nodes[best].0.to_word(), path_to(&nodes, best)))
    }

    fn packed_neighbors(&self, w: Packed, bound: usize, out: &mut Vec<(Packed, Move)>) {
        let n = w.len as usize;
        for pos in 0..n.saturating_sub(1) {
            let (x, y) = (w.get(pos), w.get(pos + 1));
            for &(a, b, relator) in &self.table[x as usize * 16 + y as usize] {
                out.push((
                    w.with_pair(pos, a, b),
                    Move::Swap {
                        pos,
                        relator,
                        from: [Letter::pos(x), Letter::pos(y)],
                        to: [Letter::pos(a), Letter::pos(b)],
                    },
                ));
            }
            if x == y {
                out.push((w.without_pair(pos), Move::Cancel { pos, gen: x }));
            }
        }
        if n + 2 <= bound {
            for pos in 0..=n {
                for &g in self.group.generators() {
                    out.push((w.with_inserted(pos, g), Move::Insert { pos, gen: g }));
                }
            }
        }
    }

    /// Canonical form together with a move sequence from `w` to it.
    pub fn canonical_with_path(&self, w: &Word) -> Result<(Word, Vec<Move>)> {
        self.check_word(w)?;
        let mut moves = Vec::new();
        let mut cur = w.clone();
        loop {
            match self.explore(&cur)? {
                Explored::Shorter(v, path) => {
                    moves.extend(path);
                    cur = v;
                }
                Explored::Closed(best, path) => {
                    moves.extend(path);
                    return Ok((best, moves));
                }
            }
        }
    }

    /// Shortlex-least word reachable from `w` within the budget.
    pub fn canonical_form(&self, w: &Word) -> Result<Word> {
        if let Some(c) = self.cache.lock().unwrap().get(w) {
            return Ok(c.clone());
        }
        let (c, _) = self.canonical_with_path(w)?;
        self.cache.lock().unwrap().insert(w.clone(), c.clone());
        Ok(c)
    }

    /// Word length of the element represented by `w` (as found by the search).
    pub fn length(&self, w: &Word) -> Result<usize> {
        Ok(self.canonical_form(w)?.len())
    }

    /// Canonical form of a product of words.
    pub fn multiply(&self, ws: &[&Word]) -> Result<Word> {
        let mut all = Word::empty();
        for w in ws {
            all.0.extend_from_slice(&w.0);
        }
        self.canonical_form(&all)
    }

    /// Graph distance between two elements.
    pub fn distance(&self, u: &Word, v: &Word) -> Result<usize> {
        self.length(&self.group.alphabet().invert(u).concat(v))
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        if self.group.contains_word(w) {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("`{}` is not a word of the group", self.group.format(w))))
        }
    }

    pub fn words_equal(&self, w1: &Word, w2: &Word) -> Result<Equality> {
        self.check_word(w1)?;
        self.check_word(w2)?;
        if self.group.project(w1) != self.group.project(w2) {
            return Ok(Equality::ProvenUnequal);
        }
        let (c1, p1) = match self.canonical_with_path(w1) {
            Ok(x) => x,
            Err(Error::BudgetExhausted { states }) => return Ok(Equality::BudgetExhausted { states }),
            Err(e) => return Err(e),
        };
        let (c2, p2) = match self.canonical_with_path(w2) {
            Ok(x) => x,
            Err(Error::BudgetExhausted { states }) => return Ok(Equality::BudgetExhausted { states }),
            Err(e) => return Err(e),
        };
        if c1 != c2 {
            return Ok(Equality::NotFoundWithinBudget);
        }
        let mut moves = p1;
        moves.extend(p2.iter().rev().map(Move::reverse));
        Ok(Equality::Equal(EqualityCertificate { moves }))
    }

    /// Applies one move, checking that it is legal.
    pub fn apply(&self, w: &Word, m: &Move) -> Result<Word> {
        let a = self.group.alphabet();
        let l = &w.0;
        let bad = |why: &str| Err(Error::BadCertificate(format!("{why} at {m:?} on `{}`", a.format(w))));
        match *m {
            Move::Swap { pos, relator, from, to } => {
                if pos + 1 >= l.len() || [l[pos], l[pos + 1]] != from {
                    return bad("swap does not match");
                }
                let Some(r) = self.group.relators().get(relator) else { return bad("no such relator") };
                let rel = Word(vec![from[0], from[1], a.inverse_letter(to[1]), a.inverse_letter(to[0])]);
                if self.presentation.canonical_relator(&rel) != self.presentation.canonical_relator(r) {
                    return bad("swap is not a relator instance");
                }
                let mut v = l.clone();
                v[pos] = to[0];
                v[pos + 1] = to[1];
                Ok(Word(v))
            }
            Move::Cancel { pos, gen } => {
                if pos + 1 >= l.len() || l[pos] != Letter::pos(gen) || l[pos + 1] != Letter::pos(gen) {
                    return bad("cancellation does not match");
                }
                let mut v = l.clone();
                v.drain(pos..pos + 2);
                Ok(Word(v))
            }
            Move::Insert { pos, gen } => {
                if pos > l.len() || !self.group.generators().contains(&gen) {
                    return bad("insertion out of range");
                }
                let mut v = l.clone();
                v.splice(pos..pos, [Letter::pos(gen), Letter::pos(gen)]);
                Ok(Word(v))
            }
        }
    }

    /// Replays a certificate from `w1`; succeeds iff it ends at `w2`.
    pub fn replay(&self, cert: &EqualityCertificate, w1: &Word, w2: &Word) -> Result<()> {
        let mut cur = w1.clone();
        for m in &cert.moves {
            cur = self.apply(&cur, m)?;
        }
        if &cur == w2 {
            Ok(())
        } else {
            Err(Error::BadCertificate(format!("ends at `{}`", self.group.format(&cur))))
        }
    }

    /// Canonical representatives of the spheres of radius `0..=max_len`.
    pub fn spheres(&self, max_len: usize) -> Result<Vec<BTreeSet<Word>>> {
        let mut out = vec![BTreeSet::from([Word::empty()])];
        for len in 1..=max_len {
            let mut next = BTreeSet::new();
            for u in &out[len - 1] {
                for &g in self.group.generators() {
                    let mut v = u.clone();
                    v.0.push(Letter::pos(g));
                    let c = self.canonical_form(&v)?;
                    if c.len() == len {
                        next.insert(c);
                    }
                }
            }
            out.push(next);
        }
        Ok(out)
    }

    pub fn sphere(&self, len: usize) -> Result<BTreeSet<Word>> {
        Ok(self.spheres(len)?.pop().unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn jp() -> RewriteSystem {
        RewriteSystem::j4_prime()
    }

    fn w(s: &str) -> Word {
        CactusGroup::j4().parse(s).unwrap()
    }

    /// Oracle: closure of `w` under length-preserving swaps only, by brute force
    /// over all relator readings.
    fn swap_closure(g: &CactusGroup, w: &Word) -> BTreeSet<Word> {
        let a = g.alphabet();
        let mut eqs = Vec::new();
        for r in g.relators() {
            for rot in r.rotations().chain(a.invert(r).rotations()) {
                eqs.push((rot.0[..2].to_vec(), a.invert(&Word(rot.0[2..].to_vec())).0));
            }
        }
        let mut seen = BTreeSet::from([w.clone()]);
        let mut stack = vec![w.clone()];
        while let Some(u) = stack.pop() {
            for i in 0..u.len().saturating_sub(1) {
                for (l, r) in &eqs {
                    if u.0[i..i + 2] == l[..] {
                        let mut v = u.clone();
                        v.0.splice(i..i + 2, r.iter().copied());
                        if seen.insert(v.clone()) {
                            stack.push(v);
                        }
                    }
                }
            }
        }
        seen
    }

    #[test]
    fn neighbor_examples() {
        let sys = jp();
        let n: Vec<Word> = sys.neighbors(&w("s12 s34"), 2).into_iter().map(|x| x.0).collect();
        assert!(n.contains(&w("s34 s12")));
        let n: Vec<Word> = sys.neighbors(&w("s13 s12"), 2).into_iter().map(|x| x.0).collect();
        assert!(n.contains(&w("s23 s13")));
        let n: Vec<Word> = sys.neighbors(&Word::empty(), 2).into_iter().map(|x| x.0).collect();
        assert_eq!(n.len(), 5);
        assert!(n.contains(&w("s12 s12")));
    }

    #[test]
    fn canonical_examples() {
        let sys = jp();
        assert_eq!(sys.canonical_form(&w("s34 s12")).unwrap(), w("s12 s34"));
        assert!(sys.canonical_form(&w("s13 s13")).unwrap().is_empty());
        assert_eq!(sys.canonical_form(&w("s23 s13")).unwrap(), w("s13 s12"));
        let g = CactusGroup::j4_prime();
        for s in ["s34 s12", "s23 s13", "s13 s24 s23", "s24 s13 s24 s13"] {
            let c = swap_closure(g, &w(s));
            assert_eq!(sys.canonical_form(&w(s)).unwrap(), *c.iter().next().unwrap(), "{s}");
        }
    }

    #[test]
    fn equality_examples() {
        let sys = jp();
        let e = sys.words_equal(&w("s13 s24 s12 s34 s34 s12 s24 s13"), &Word::empty()).unwrap();
        let Equality::Equal(cert) = e else { panic!("{e:?}") };
        sys.replay(&cert, &w("s13 s24 s12 s34 s34 s12 s24 s13"), &Word::empty()).unwrap();
        assert_eq!(sys.words_equal(&w("s12"), &w("s13")).unwrap(), Equality::ProvenUnequal);
        let j4 = RewriteSystem::j4();
        let (a, b) = (w("s14 s13 s24 s12 s34"), w("s24 s23 s13 s34 s14"));
        let Equality::Equal(cert) = j4.words_equal(&a, &b).unwrap() else { panic!() };
        j4.replay(&cert, &a, &b).unwrap();
        assert!(sys.words_equal(&w("s14"), &w("s14")).is_err());
    }

    #[test]
    fn tampered_certificate_fails() {
        let sys = jp();
        let (a, b) = (w("s34 s13 s23 s24"), w("s34 s13 s24 s34"));
        let Equality::Equal(mut cert) = sys.words_equal(&a, &b).unwrap() else { panic!() };
        sys.replay(&cert, &a, &b).unwrap();
        cert.moves.push(Move::Insert { pos: 0, gen: 0 });
        assert!(sys.replay(&cert, &a, &b).is_err());
        let bogus = EqualityCertificate {
            moves: vec![Move::Swap { pos: 0, relator: 0, from: [a.0[0], a.0[1]], to: [a.0[1], a.0[0]] }],
        };
        assert!(sys.replay(&bogus, &a, &b).is_err());
    }

    #[test]
    fn sphere_sizes() {
        let sys = jp();
        let sizes: Vec<usize> = sys.spheres(4).unwrap().iter().map(|s| s.len()).collect();
        assert_eq!(sizes, vec![1, 5, 15, 40, 105]);
    }

    #[test]
    fn slack_zero_gives_the_same_spheres() {
        let s0 = RewriteSystem::new(CactusGroup::j4_prime(), RewriteBudget::new(0, 200_000).unwrap());
        let s2 = jp();
        assert_eq!(s0.spheres(4).unwrap(), s2.spheres(4).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tiny = RewriteSystem::new(CactusGroup::j4_prime(), RewriteBudget::new(2, 3).unwrap());
        let r = tiny.words_equal(&w("s13 s24 s12 s34"), &w("s13 s24 s12 s34")).unwrap();
        assert!(matches!(r, Equality::BudgetExhausted { .. }), "{r:?}");
        assert!(RewriteBudget::new(1, 10).is_err());
    }

    fn j4p_word(max: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec(prop::sample::select(vec![0u8, 1, 3, 4, 5]), 0..=max)
            .prop_map(|v| v.into_iter().map(Letter::pos).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn certificates_replay_and_respect_projection(u in j4p_word(7), v in j4p_word(3)) {
            let sys = jp();
            let g = CactusGroup::j4_prime();
            // u and u v v^-1 are equal; u and a random word are sometimes equal
            let uvv = u.concat(&v).concat(&g.alphabet().invert(&v));
            let r = sys.words_equal(&u, &uvv).unwrap();
            let Equality::Equal(cert) = r else { panic!("{r:?}") };
            prop_assert!(sys.replay(&cert, &u, &uvv).is_ok());
            if let Equality::Equal(c) = sys.words_equal(&u, &v).unwrap() {
                prop_assert!(sys.replay(&c, &u, &v).is_ok());
                prop_assert_eq!(g.project(&u), g.project(&v));
            }
        }

        #[test]
        fn canonical_is_idempotent_and_stable(u in j4p_word(8)) {
            let sys = jp();
            let c = sys.canonical_form(&u).unwrap();
            prop_assert_eq!(sys.canonical_form(&c).unwrap(), c.clone());
            let (c2, path) = sys.canonical_with_path(&u).unwrap();
            prop_assert_eq!(&c2, &c);
            let cert = EqualityCertificate { moves: path };
            prop_assert!(sys.replay(&cert, &u, &c).is_ok());
        }
    }
}
