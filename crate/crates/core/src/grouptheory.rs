//! Presentation-level tools: Tietze eliminations, small cancellation,
//! Dehn's algorithm, a bounded word-problem search with replayable
//! certificates, abelianization, and checks of explicit homomorphisms.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};
use std::fmt;

use num_rational::Ratio;

use crate::dirichlet::{g_alphabet, EXPECTED_RELATORS};
use crate::error::{Error, Result};
use crate::words::{Alphabet, GenId, Generator, Letter, Presentation, Word};

/// Eliminations turning the ten-generator presentation into one relator.
pub const ELIMINATIONS: [(&str, &str); 5] =
    [("g1", "g2 g10"), ("g5", "g4 g9"), ("g6", "g5 g1"), ("g7", "g8 g10"), ("g3", "g4 g8")];

pub const ONE_RELATOR: &str = "g2 g9 g10^-1 g8^-1 g4 g9 g2 g10 g8^-1 g4^-1";
pub const BCL_RELATOR: &str = "α γ ε β ε α^-1 δ^-1 β γ δ^-1";
pub const SURFACE_RELATOR: &str = "α1^2 α2^2 α3^2 α4^2 α5^2";

pub fn pj4_presentation() -> Presentation {
    Presentation::parse(g_alphabet(), &EXPECTED_RELATORS).expect("valid fixture")
}

pub fn one_relator_presentation() -> Presentation {
    let a = Alphabet::free(&["g2", "g4", "g8", "g9", "g10"]).expect("distinct names");
    Presentation::parse(a, &[ONE_RELATOR]).expect("valid fixture")
}

pub fn bcl_presentation() -> Presentation {
    let a = Alphabet::free(&["α", "β", "γ", "δ", "ε"]).expect("distinct names");
    Presentation::parse(a, &[BCL_RELATOR]).expect("valid fixture")
}

pub fn surface_presentation() -> Presentation {
    let a = Alphabet::free(&["α1", "α2", "α3", "α4", "α5"]).expect("distinct names");
    Presentation::parse(a, &[SURFACE_RELATOR]).expect("valid fixture")
}

// ---------------------------------------------------------------- Tietze

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TietzeStep {
    pub generator: String,
    pub definition: String,
    /// The relator of the original presentation that justifies the step.
    pub justification: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TietzeResult {
    pub presentation: Presentation,
    pub steps: Vec<TietzeStep>,
    /// Each eliminated generator written in the surviving ones.
    pub expansions: Vec<(String, String)>,
}

/// Eliminates generators `x = w`, each justified by a relator of `p` of
/// length at most three that is a cyclic conjugate of `x^-1 w` or its inverse.
pub fn tietze_eliminate(p: &Presentation, eliminations: &[(&str, &str)]) -> Result<Presentation> {
    Ok(tietze_with_steps(p, eliminations)?.presentation)
}

pub fn tietze_with_steps(p: &Presentation, eliminations: &[(&str, &str)]) -> Result<TietzeResult> {
    let a = p.alphabet();
    let mut defs: BTreeMap<GenId, Word> = BTreeMap::new();
    let mut used = HashSet::new();
    let mut steps = Vec::new();
    for &(x, w) in eliminations {
        let g = a.gen(x)?;
        if defs.contains_key(&g) {
            return Err(Error::UnjustifiedElimination(format!("{x} is eliminated twice")));
        }
        let def = a.free_reduce(&a.parse(w)?);
        if def.0.iter().any(|l| l.gen == g) {
            return Err(Error::UnjustifiedElimination(format!("{x} = {w} is recursive")));
        }
        let claim = a.cyclic_reduce(&Word(vec![Letter::neg(g)]).concat(&def));
        let canon = p.canonical_relator(&claim);
        let justified = p
            .relators()
            .iter()
            .enumerate()
            .find(|(i, r)| r.len() <= 3 && !used.contains(i) && p.canonical_relator(r) == canon);
        let Some((i, r)) = justified else {
            return Err(Error::UnjustifiedElimination(format!("no relator of length at most 3 gives {x} = {w}")));
        };
        used.insert(i);
        steps.push(TietzeStep { generator: x.to_string(), definition: a.format(&def), justification: a.format(r) });
        defs.insert(g, def);
    }

    let survivors: Vec<GenId> = (0..a.len() as GenId).filter(|g| !defs.contains_key(g)).collect();
    let target = Alphabet::new(survivors.iter().map(|&g| Generator::new(a.name(g), a.is_involutive(g))).collect())?;
    let mut images: BTreeMap<GenId, Word> = BTreeMap::new();
    for (k, &g) in survivors.iter().enumerate() {
        images.insert(g, Word(vec![Letter::pos(k as GenId)]));
    }
    let mut pending: Vec<GenId> = defs.keys().copied().collect();
    while !pending.is_empty() {
        let before = pending.len();
        pending.retain(|g| {
            let def = &defs[g];
            if def.0.iter().all(|l| images.contains_key(&l.gen)) {
                let img = a.substitute(def, &images, &target).expect("all images known");
                images.insert(*g, img);
                false
            } else {
                true
            }
        });
        if pending.len() == before {
            return Err(Error::UnjustifiedElimination("circular definitions".into()));
        }
    }
    let mut relators = Vec::new();
    for r in p.relators() {
        let img = target.cyclic_reduce(&a.substitute(r, &images, &target)?);
        if !img.is_empty() {
            relators.push(img);
        }
    }
    let expansions = defs.keys().map(|&g| (a.name(g).to_string(), target.format(&images[&g]))).collect();
    Ok(TietzeResult { presentation: Presentation::new(target, relators)?, steps, expansions })
}

// ------------------------------------------------------ small cancellation

/// One element of the symmetrized relator set.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Cyclic {
    word: Word,
    relator: usize,
    rotation: usize,
    inverted: bool,
}

fn relator_variant(p: &Presentation, relator: usize, rotation: usize, inverted: bool) -> Result<Word> {
    let r = p.relators().get(relator).ok_or_else(|| Error::BadCertificate(format!("no relator {relator}")))?;
    let base = if inverted { p.alphabet().invert(r) } else { r.clone() };
    if rotation >= base.len().max(1) {
        return Err(Error::BadCertificate(format!("rotation {rotation} out of range")));
    }
    Ok(base.rotate(rotation))
}

/// Every rotation of every relator and its inverse, one entry per position.
fn symmetrized_all(p: &Presentation) -> Vec<Cyclic> {
    let mut out = Vec::new();
    for (i, _) in p.relators().iter().enumerate() {
        for inverted in [false, true] {
            let n = p.relators()[i].len();
            for k in 0..n {
                out.push(Cyclic {
                    word: relator_variant(p, i, k, inverted).unwrap(),
                    relator: i,
                    rotation: k,
                    inverted,
                });
            }
        }
    }
    out
}

/// The symmetrized set with repeated words removed.
fn symmetrized(p: &Presentation) -> Vec<Cyclic> {
    let mut seen = HashSet::new();
    symmetrized_all(p).into_iter().filter(|c| seen.insert(c.word.clone())).collect()
}

fn common_prefix(a: &Word, b: &Word) -> usize {
    a.0.iter().zip(&b.0).take_while(|(x, y)| x == y).count()
}

/// Longest piece over the shortest relator. A piece is a common prefix of two
/// rotations, at different positions, of relators or their inverses; it is
/// shorter than the relators it sits in.
pub fn piece_ratio(p: &Presentation) -> Ratio<usize> {
    let all = symmetrized_all(p);
    let Some(min_len) = p.relators().iter().map(Word::len).min() else {
        return Ratio::from_integer(0);
    };
    let mut longest = 0;
    for i in 0..all.len() {
        for j in 0..i {
            let cap = all[i].word.len().min(all[j].word.len()) - 1;
            longest = longest.max(common_prefix(&all[i].word, &all[j].word).min(cap));
        }
    }
    Ratio::new(longest, min_len)
}

pub fn satisfies_c6(p: &Presentation) -> bool {
    piece_ratio(p) < Ratio::new(1, 6)
}

// ----------------------------------------------------------- certificates

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TrivialityMove {
    /// Moves the first `k` letters to the end.
    CyclicShift {
        k: usize,
    },
    InsertRelator {
        pos: usize,
        relator: usize,
        rotation: usize,
        inverted: bool,
    },
    DeleteRelator {
        pos: usize,
        relator: usize,
        rotation: usize,
        inverted: bool,
    },
    FreeReduce,
}

impl fmt::Display for TrivialityMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let inv = |b: &bool| if *b { "^-1" } else { "" };
        match self {
            TrivialityMove::CyclicShift { k } => write!(f, "shift {k}"),
            TrivialityMove::InsertRelator { pos, relator, rotation, inverted } => {
                write!(f, "insert r{}{} rot {} at {}", relator + 1, inv(inverted), rotation, pos)
            }
            TrivialityMove::DeleteRelator { pos, relator, rotation, inverted } => {
                write!(f, "delete r{}{} rot {} at {}", relator + 1, inv(inverted), rotation, pos)
            }
            TrivialityMove::FreeReduce => write!(f, "reduce"),
        }
    }
}

/// Moves taking `start` to the empty word; cyclic shifts are conjugations,
/// so the certificate proves `start` trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialityCertificate {
    pub start: Word,
    pub moves: Vec<TrivialityMove>,
}

pub fn apply_move(p: &Presentation, w: &Word, m: &TrivialityMove) -> Result<Word> {
    let mut v = w.0.clone();
    match *m {
        TrivialityMove::CyclicShift { k } => {
            if k > v.len() {
                return Err(Error::BadCertificate(format!("shift {k} on a word of length {}", v.len())));
            }
            v.rotate_left(k);
        }
        TrivialityMove::InsertRelator { pos, relator, rotation, inverted } => {
            if pos > v.len() {
                return Err(Error::BadCertificate(format!("insertion at {pos} past the end")));
            }
            let r = relator_variant(p, relator, rotation, inverted)?;
            v.splice(pos..pos, r.0);
        }
        TrivialityMove::DeleteRelator { pos, relator, rotation, inverted } => {
            let r = relator_variant(p, relator, rotation, inverted)?;
            if pos + r.len() > v.len() || v[pos..pos + r.len()] != r.0[..] {
                return Err(Error::BadCertificate(format!("no relator occurrence at {pos}")));
            }
            v.drain(pos..pos + r.len());
        }
        TrivialityMove::FreeReduce => return Ok(p.alphabet().free_reduce(w)),
    }
    Ok(Word(v))
}

impl TrivialityCertificate {
    /// Replays the moves and checks they end at the empty word.
    pub fn replay(&self, p: &Presentation) -> Result<()> {
        let mut w = self.start.clone();
        for m in &self.moves {
            w = apply_move(p, &w, m)?;
        }
        if w.is_empty() {
            Ok(())
        } else {
            Err(Error::BadCertificate(format!("replay ends at `{}`", p.alphabet().format(&w))))
        }
    }
}

/// Free reduction followed by cyclic reduction, as moves.
fn normalise(p: &Presentation, w: Word, moves: &mut Vec<TrivialityMove>) -> Word {
    let a = p.alphabet();
    let mut w = a.free_reduce(&w);
    moves.push(TrivialityMove::FreeReduce);
    while w.len() >= 2 && a.cancels(w.0[0], w.0[w.len() - 1]) {
        w.0.rotate_left(1);
        moves.push(TrivialityMove::CyclicShift { k: 1 });
        w = a.free_reduce(&w);
        moves.push(TrivialityMove::FreeReduce);
    }
    w
}

// -------------------------------------------------------------- Dehn

/// Dehn's algorithm; the second component records the moves used.
pub fn dehn_reduce_with_moves(w: &Word, p: &Presentation) -> Result<(Word, Vec<TrivialityMove>)> {
    if !satisfies_c6(p) {
        return Err(Error::NotSmallCancellation(format!("piece ratio {} is not below 1/6", piece_ratio(p))));
    }
    let a = p.alphabet();
    let sym = symmetrized(p);
    let by_word: HashMap<&Word, &Cyclic> = sym.iter().map(|c| (&c.word, c)).collect();
    let mut moves = vec![TrivialityMove::FreeReduce];
    let mut w = a.free_reduce(w);
    'outer: loop {
        for pos in 0..w.len() {
            for c in &sym {
                let m = common_prefix(&Word(w.0[pos..].to_vec()), &c.word);
                if 2 * m > c.word.len() {
                    let inv = a.invert(&c.word);
                    let ci = by_word[&inv];
                    moves.push(TrivialityMove::InsertRelator {
                        pos,
                        relator: ci.relator,
                        rotation: ci.rotation,
                        inverted: ci.inverted,
                    });
                    let mut v = w.0[..pos].to_vec();
                    v.extend_from_slice(&inv.0);
                    v.extend_from_slice(&w.0[pos..]);
                    w = a.free_reduce(&Word(v));
                    moves.push(TrivialityMove::FreeReduce);
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok((w, moves))
}

pub fn dehn_reduce(w: &Word, p: &Presentation) -> Result<Word> {
    Ok(dehn_reduce_with_moves(w, p)?.0)
}

// ------------------------------------------------------------ search

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    /// Intermediate words stay within this multiple of the input length.
    pub length_factor: usize,
    pub max_depth: usize,
    pub max_states: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { length_factor: 3, max_depth: 40, max_states: 1_000_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Trivial(TrivialityCertificate),
    NotFound { states: usize },
}

fn min_rotation(w: &Word) -> Word {
    w.rotations().min().unwrap_or_default()
}

/// Best-first search over cyclic words by relator insertions and deletions,
/// shortest words first.
pub fn word_problem_search(w: &Word, p: &Presentation, budget: SearchBudget) -> SearchOutcome {
    let sym = symmetrized(p);
    let max_len = budget.length_factor * w.len();
    let mut first = Vec::new();
    let start = normalise(p, w.clone(), &mut first);
    // state: (word, parent, moves from parent, depth)
    let mut states: Vec<(Word, usize, Vec<TrivialityMove>, usize)> = vec![(start.clone(), usize::MAX, first, 0)];
    let mut seen: HashSet<Word> = HashSet::new();
    seen.insert(min_rotation(&start));
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((start.len(), 0usize)));
    let finish = |states: &Vec<(Word, usize, Vec<TrivialityMove>, usize)>, mut i: usize| {
        let mut chunks = Vec::new();
        while i != usize::MAX {
            chunks.push(states[i].2.clone());
            i = states[i].1;
        }
        let moves = chunks.into_iter().rev().flatten().collect();
        SearchOutcome::Trivial(TrivialityCertificate { start: w.clone(), moves })
    };
    if start.is_empty() {
        return finish(&states, 0);
    }
    while let Some(Reverse((_, i))) = heap.pop() {
        let (cur, _, _, depth) = states[i].clone();
        if depth >= budget.max_depth {
            continue;
        }
        let n = cur.len();
        let mut successors: Vec<(Word, Vec<TrivialityMove>)> = Vec::new();
        for c in &sym {
            let r = &c.word;
            if r.len() <= n {
                for pos in 0..n {
                    if (0..r.len()).all(|k| cur.0[(pos + k) % n] == r.0[k]) {
                        let mut moves = Vec::new();
                        let mut v = cur.clone();
                        let mut at = pos;
                        if pos + r.len() > n {
                            moves.push(TrivialityMove::CyclicShift { k: pos });
                            v.0.rotate_left(pos);
                            at = 0;
                        }
                        moves.push(TrivialityMove::DeleteRelator {
                            pos: at,
                            relator: c.relator,
                            rotation: c.rotation,
                            inverted: c.inverted,
                        });
                        v.0.drain(at..at + r.len());
                        let v = normalise(p, v, &mut moves);
                        successors.push((v, moves));
                    }
                }
            }
            for pos in 0..n {
                let mut v = cur.0[..pos].to_vec();
                v.extend_from_slice(&r.0);
                v.extend_from_slice(&cur.0[pos..]);
                let mut moves = vec![TrivialityMove::InsertRelator {
                    pos,
                    relator: c.relator,
                    rotation: c.rotation,
                    inverted: c.inverted,
                }];
                let v = normalise(p, Word(v), &mut moves);
                if v.len() <= max_len {
                    successors.push((v, moves));
                }
            }
        }
        for (v, moves) in successors {
            if !seen.insert(min_rotation(&v)) {
                continue;
            }
            let len = v.len();
            states.push((v, i, moves, depth + 1));
            let j = states.len() - 1;
            if len == 0 {
                return finish(&states, j);
            }
            if states.len() >= budget.max_states {
                return SearchOutcome::NotFound { states: states.len() };
            }
            heap.push(Reverse((len, j)));
        }
    }
    SearchOutcome::NotFound { states: states.len() }
}

// ------------------------------------------------------- abelianization

/// Exponent-sum rows of the relators, plus `2 e_x` for involutive `x`.
pub fn relation_matrix(p: &Presentation) -> Vec<Vec<i64>> {
    let a = p.alphabet();
    let mut rows: Vec<Vec<i64>> = p.relators().iter().map(|r| a.exponent_sums(r)).collect();
    for g in 0..a.len() {
        if a.is_involutive(g as GenId) {
            let mut row = vec![0; a.len()];
            row[g] = 2;
            rows.push(row);
        }
    }
    rows
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors `d_1 | d_2 | ...`.
    pub diagonal: Vec<i64>,
    pub columns: usize,
    /// Unimodular column transform `V` with `U M V` diagonal.
    pub v: Vec<Vec<i64>>,
}

pub fn smith_normal_form(m: &[Vec<i64>], columns: usize) -> SmithForm {
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let rows = a.len();
    let mut v: Vec<Vec<i64>> = (0..columns).map(|i| (0..columns).map(|j| (i == j) as i64).collect()).collect();
    let col_op = |a: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, dst: usize, src: usize, k: i64| {
        for row in a.iter_mut() {
            row[dst] -= k * row[src];
        }
        for row in v.iter_mut() {
            row[dst] -= k * row[src];
        }
    };
    let swap_cols = |a: &mut Vec<Vec<i64>>, v: &mut Vec<Vec<i64>>, i: usize, j: usize| {
        for row in a.iter_mut() {
            row.swap(i, j);
        }
        for row in v.iter_mut() {
            row.swap(i, j);
        }
    };
    let mut diagonal = Vec::new();
    let mut t = 0;
    while t < rows.min(columns) {
        let pivot = (t..rows)
            .flat_map(|i| (t..columns).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| a[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        swap_cols(&mut a, &mut v, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let k = a[i][t] / a[t][t];
                if k != 0 {
                    let src = a[t].clone();
                    for (x, s) in a[i].iter_mut().zip(&src) {
                        *x -= k * s;
                    }
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..columns {
                let k = a[t][j] / a[t][t];
                if k != 0 {
                    col_op(&mut a, &mut v, j, t, k);
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                let bad = (t + 1..rows).find(|&i| (t + 1..columns).any(|j| a[i][j] % a[t][t] != 0));
                match bad {
                    Some(i) => {
                        let src = a[i].clone();
                        for (x, s) in a[t].iter_mut().zip(&src) {
                            *x += s;
                        }
                    }
                    None => break,
                }
            }
            let pivot = (t..rows)
                .flat_map(|i| [(i, t)].into_iter().chain((t..columns).map(move |j| (t, j))).collect::<Vec<_>>())
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs());
            if let Some((pi, pj)) = pivot {
                a.swap(t, pi);
                swap_cols(&mut a, &mut v, t, pj);
            }
        }
        if a[t][t] < 0 {
            for row in a.iter_mut() {
                row[t] = -row[t];
            }
            for row in v.iter_mut() {
                row[t] = -row[t];
            }
        }
        diagonal.push(a[t][t]);
        t += 1;
    }
    SmithForm { diagonal, columns, v }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<i64>,
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 { "Z".to_string() } else { format!("Z^{}", self.free_rank) });
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn abelianization(p: &Presentation) -> AbelianInvariants {
    let n = p.alphabet().len();
    let s = smith_normal_form(&relation_matrix(p), n);
    AbelianInvariants { free_rank: n - s.diagonal.len(), torsion: s.diagonal.into_iter().filter(|&d| d > 1).collect() }
}

/// True if the exponent-sum vector of `w` is an integer combination of the
/// relation rows, i.e. `w` dies in the abelianization.
pub fn in_relator_lattice(p: &Presentation, w: &Word) -> bool {
    let n = p.alphabet().len();
    let s = smith_normal_form(&relation_matrix(p), n);
    let e = p.alphabet().exponent_sums(w);
    let ev: Vec<i64> = (0..n).map(|j| (0..n).map(|i| e[i] * s.v[i][j]).sum()).collect();
    ev.iter().enumerate().all(|(j, &x)| match s.diagonal.get(j) {
        Some(&d) => x % d == 0,
        None => x == 0,
    })
}

// ------------------------------------------------------------- oracles

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Dehn,
    Search(SearchBudget),
    /// Dehn's algorithm when the presentation is `C'(1/6)`, search otherwise.
    Auto(SearchBudget),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Trivial(TrivialityCertificate),
    /// Proven nontrivial, with the reason.
    Nontrivial(String),
    NotFound {
        states: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordCheck {
    pub label: String,
    pub word: Word,
    pub method: &'static str,
    pub outcome: Outcome,
}

impl WordCheck {
    pub fn is_trivial(&self) -> bool {
        matches!(self.outcome, Outcome::Trivial(_))
    }
}

/// Decides whether `w` is trivial in `p`, with a certificate when it is.
pub fn decide_trivial(label: &str, w: &Word, p: &Presentation, strategy: Strategy) -> Result<WordCheck> {
    let lattice = in_relator_lattice(p, w);
    let (method, outcome) = match strategy {
        Strategy::Dehn => ("dehn", dehn_outcome(w, p)?),
        Strategy::Auto(_) if satisfies_c6(p) => ("dehn", dehn_outcome(w, p)?),
        Strategy::Search(b) | Strategy::Auto(b) => {
            let o = match word_problem_search(w, p, b) {
                SearchOutcome::Trivial(c) => Outcome::Trivial(c),
                SearchOutcome::NotFound { states } if !lattice => {
                    let _ = states;
                    Outcome::Nontrivial("nonzero in the abelianization".into())
                }
                SearchOutcome::NotFound { states } => Outcome::NotFound { states },
            };
            ("search", o)
        }
    };
    if let Outcome::Trivial(c) = &outcome {
        c.replay(p)?;
        if !lattice {
            return Err(Error::BadCertificate("certified word is nonzero in the abelianization".into()));
        }
    }
    Ok(WordCheck { label: label.to_string(), word: w.clone(), method, outcome })
}

fn dehn_outcome(w: &Word, p: &Presentation) -> Result<Outcome> {
    let (rest, moves) = dehn_reduce_with_moves(w, p)?;
    Ok(if rest.is_empty() {
        Outcome::Trivial(TrivialityCertificate { start: w.clone(), moves })
    } else {
        Outcome::Nontrivial(format!("Dehn-reduced to `{}`", p.alphabet().format(&rest)))
    })
}

// -------------------------------------------------------- homomorphisms

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub source: Presentation,
    pub target: Presentation,
    pub images: BTreeMap<GenId, Word>,
}

impl GroupHom {
    pub fn new(source: Presentation, target: Presentation, images: BTreeMap<GenId, Word>) -> Result<Self> {
        for g in 0..source.alphabet().len() as GenId {
            let img = images.get(&g).ok_or_else(|| Error::UndefinedGenerator(source.alphabet().name(g).to_string()))?;
            if !target.alphabet().contains_word(img) {
                return Err(Error::InvalidArgument("image uses letters outside the target".into()));
            }
        }
        Ok(GroupHom { source, target, images })
    }

    pub fn parse(source: Presentation, target: Presentation, images: &[(&str, &str)]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for &(x, w) in images {
            let g = source.alphabet().gen(x)?;
            if map.insert(g, target.alphabet().parse(w)?).is_some() {
                return Err(Error::DuplicateGenerator(x.to_string()));
            }
        }
        GroupHom::new(source, target, map)
    }

    pub fn identity(p: &Presentation) -> Self {
        let images = (0..p.alphabet().len() as GenId).map(|g| (g, Word(vec![Letter::pos(g)]))).collect();
        GroupHom { source: p.clone(), target: p.clone(), images }
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        self.source.alphabet().substitute(w, &self.images, self.target.alphabet())
    }

    /// Unreduced image, letter by letter.
    pub fn apply_raw(&self, w: &Word) -> Result<Word> {
        let a = self.source.alphabet();
        let mut out = Word::empty();
        for l in &w.0 {
            let img = self.images.get(&l.gen).ok_or_else(|| Error::UndefinedGenerator(a.name(l.gen).to_string()))?;
            let img =
                if l.inverse && !a.is_involutive(l.gen) { self.target.alphabet().invert(img) } else { img.clone() };
            out.0.extend(img.0);
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    fn of(checks: &[WordCheck]) -> Verdict {
        if checks.iter().any(|c| matches!(c.outcome, Outcome::Nontrivial(_))) {
            Verdict::Refuted
        } else if checks.iter().all(WordCheck::is_trivial) {
            Verdict::Verified
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCheck {
    pub verdict: Verdict,
    pub checks: Vec<WordCheck>,
}

fn run_checks(jobs: Vec<(String, Word)>, p: &Presentation, strategy: Strategy) -> Result<HomCheck> {
    let results: Vec<Result<WordCheck>> = std::thread::scope(|s| {
        let handles: Vec<_> =
            jobs.iter().map(|(label, w)| s.spawn(move || decide_trivial(label, w, p, strategy))).collect();
        handles.into_iter().map(|h| h.join().expect("check thread panicked")).collect()
    });
    let checks = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(HomCheck { verdict: Verdict::of(&checks), checks })
}

/// Certifies that every source relator maps to the identity.
pub fn hom_well_defined(h: &GroupHom, strategy: Strategy) -> Result<HomCheck> {
    let a = h.source.alphabet();
    let jobs = h.source.relators().iter().map(|r| Ok((a.format(r), h.apply(r)?))).collect::<Result<Vec<_>>>()?;
    run_checks(jobs, &h.target, strategy)
}

/// Certifies `g(f(x)) x^-1 = e` in `f.source` for every generator `x`.
pub fn verify_mutual_inverse(f: &GroupHom, g: &GroupHom, strategy: Strategy) -> Result<HomCheck> {
    if f.source.alphabet() != g.target.alphabet() || f.target.alphabet() != g.source.alphabet() {
        return Err(Error::InvalidArgument("maps are not composable both ways".into()));
    }
    let a = f.source.alphabet();
    let mut jobs = Vec::new();
    for x in 0..a.len() as GenId {
        let xw = Word(vec![Letter::pos(x)]);
        let gf = g.apply(&f.apply(&xw)?)?;
        jobs.push((a.name(x).to_string(), a.free_reduce(&gf.concat(&a.invert(&xw)))));
    }
    run_checks(jobs, &f.source, strategy)
}

/// `(a, b)`: the isomorphism `a` from the five-generator one-relator group
/// `BCL` onto the one-relator `g` presentation, and its inverse `b`.
pub fn bcl_isomorphism() -> (GroupHom, GroupHom) {
    let f = GroupHom::parse(
        bcl_presentation(),
        one_relator_presentation(),
        &[("α", "g4 g9"), ("β", "g2 g10"), ("γ", "g10^-1"), ("δ", "g4"), ("ε", "g8^-1 g4 g9")],
    )
    .expect("valid fixture");
    let g = GroupHom::parse(
        one_relator_presentation(),
        bcl_presentation(),
        &[("g2", "β γ"), ("g4", "δ"), ("g8", "α ε^-1"), ("g9", "δ^-1 α"), ("g10", "γ^-1")],
    )
    .expect("valid fixture");
    (f, g)
}

/// The surface group onto the one-relator `g` presentation and back.
pub fn surface_isomorphism() -> (GroupHom, GroupHom) {
    let f = GroupHom::parse(
        surface_presentation(),
        one_relator_presentation(),
        &[
            ("α1", "g10^-1 g2^-1"),
            ("α2", "g2 g10 g9^-1 g4^-2"),
            ("α3", "g4"),
            ("α4", "g9 g10^-1"),
            ("α5", "g8^-1 g4 g9 g2 g10"),
        ],
    )
    .expect("valid fixture");
    let g = GroupHom::parse(
        one_relator_presentation(),
        surface_presentation(),
        &[
            ("g2", "α2 α3^2 α4"),
            ("g4", "α3"),
            ("g8", "α3^-1 α2^-1 α1^-2 α5^-1"),
            ("g9", "α3^-2 α2^-1 α1^-1"),
            ("g10", "α4^-1 α3^-2 α2^-1 α1^-1"),
        ],
    )
    .expect("valid fixture");
    (f, g)
}

/// The surface group into the ten-generator presentation, as first written.
pub fn surface_into_pj4() -> GroupHom {
    GroupHom::parse(
        surface_presentation(),
        pj4_presentation(),
        &[("α1", "g1^-1"), ("α2", "g2 g10 g5^-1 g8 g3^-1"), ("α3", "g4"), ("α4", "g9 g10^-1"), ("α5", "g8^-1 g6")],
    )
    .expect("valid fixture")
}

/// Words whose images under `f` should reduce freely to each target
/// generator, as `(generator, preimage)`.
pub fn surjectivity_identities(f: &GroupHom, g: &GroupHom) -> Result<Vec<(String, String, bool)>> {
    let ta = f.target.alphabet();
    let mut out = Vec::new();
    for y in 0..ta.len() as GenId {
        let pre = &g.images[&y];
        let img = f.apply(pre)?;
        out.push((ta.name(y).to_string(), g.target.alphabet().format(pre), img == Word(vec![Letter::pos(y)])));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::{any, prop_assert, proptest, ProptestConfig};
    use proptest::strategy::Strategy as _;

    fn parse(p: &Presentation, s: &str) -> Word {
        p.alphabet().parse(s).unwrap()
    }

    #[test]
    fn tietze_to_one_relator() {
        let r = tietze_with_steps(&pj4_presentation(), &ELIMINATIONS).unwrap();
        assert!(r.presentation.same_relators(&one_relator_presentation()), "{}", r.presentation);
        assert_eq!(r.presentation.relators().len(), 1);
        assert_eq!(r.steps.len(), 5);
        assert_eq!(tietze_eliminate(&pj4_presentation(), &[]).unwrap(), pj4_presentation());
    }

    #[test]
    fn tietze_toy_and_errors() {
        let p = Presentation::parse(Alphabet::free(&["a", "b"]).unwrap(), &["a b"]).unwrap();
        let q = tietze_eliminate(&p, &[("b", "a^-1")]).unwrap();
        assert_eq!(q.alphabet().len(), 1);
        assert!(q.relators().is_empty());
        assert!(matches!(tietze_eliminate(&p, &[("b", "a")]), Err(Error::UnjustifiedElimination(_))));
        let g = pj4_presentation();
        assert!(matches!(tietze_eliminate(&g, &[("g2", "g3 g7")]), Err(Error::UnjustifiedElimination(_))));
    }

    /// Brute force: count every cyclic occurrence of every subword.
    fn piece_oracle(p: &Presentation) -> (usize, usize) {
        let a = p.alphabet();
        let cyc: Vec<Word> = p.relators().iter().flat_map(|r| [r.clone(), a.invert(r)]).collect();
        let min_len = p.relators().iter().map(Word::len).min().unwrap();
        let mut best = 0;
        for len in 1..min_len {
            for c in &cyc {
                for s in 0..c.len() {
                    let u: Vec<Letter> = (0..len).map(|k| c.0[(s + k) % c.len()]).collect();
                    let mut occ = 0;
                    for d in &cyc {
                        for t in 0..d.len() {
                            if (0..len).all(|k| d.0[(t + k) % d.len()] == u[k]) {
                                occ += 1;
                            }
                        }
                    }
                    if occ >= 2 {
                        best = best.max(len);
                    }
                }
            }
        }
        (best, min_len)
    }

    #[test]
    fn piece_ratios() {
        assert_eq!(piece_ratio(&surface_presentation()), Ratio::new(1, 10));
        let a2 = Presentation::parse(Alphabet::free(&["a"]).unwrap(), &["a^2"]).unwrap();
        assert_eq!(piece_ratio(&a2), Ratio::new(1, 2));
        for p in [
            surface_presentation(),
            a2,
            Presentation::parse(Alphabet::free(&["a", "b"]).unwrap(), &["a b a b^-1"]).unwrap(),
            one_relator_presentation(),
            bcl_presentation(),
            pj4_presentation(),
        ] {
            let (l, m) = piece_oracle(&p);
            assert_eq!(piece_ratio(&p), Ratio::new(l, m), "{p}");
        }
        assert!(satisfies_c6(&surface_presentation()));
        assert!(satisfies_c6(&one_relator_presentation()));
        assert!(!satisfies_c6(&pj4_presentation()));
        assert_eq!(piece_ratio(&one_relator_presentation()), Ratio::new(1, 10));
        assert_eq!(piece_ratio(&bcl_presentation()), Ratio::new(1, 10));
        assert_eq!(piece_ratio(&pj4_presentation()), Ratio::new(1, 3));
    }

    #[test]
    fn dehn_examples() {
        let s = surface_presentation();
        assert!(dehn_reduce(&s.relators()[0], &s).unwrap().is_empty());
        assert!(dehn_reduce(&parse(&s, "α1 α1 α2 α2 α3 α3 α4 α4 α5 α5 α5^-1 α5"), &s).unwrap().is_empty());
        assert!(!dehn_reduce(&parse(&s, "α1"), &s).unwrap().is_empty());
        let (_, g) = surface_isomorphism();
        let image = g.apply_raw(&one_relator_presentation().relators()[0]).unwrap();
        let (rest, moves) = dehn_reduce_with_moves(&image, &s).unwrap();
        assert!(rest.is_empty());
        TrivialityCertificate { start: image, moves }.replay(&s).unwrap();
        assert!(matches!(dehn_reduce(&Word::empty(), &pj4_presentation()), Err(Error::NotSmallCancellation(_))));
    }

    #[test]
    fn search_examples() {
        let p = one_relator_presentation();
        let r = p.relators()[0].clone();
        let SearchOutcome::Trivial(c) = word_problem_search(&r, &p, SearchBudget::default()) else { panic!() };
        assert!(!c.moves.is_empty());
        c.replay(&p).unwrap();

        let (f, _) = bcl_isomorphism();
        let image = f.apply_raw(&bcl_presentation().relators()[0]).unwrap();
        assert_eq!(image.len(), 18);
        let SearchOutcome::Trivial(c) = word_problem_search(&image, &p, SearchBudget::default()) else { panic!() };
        c.replay(&p).unwrap();

        let g2 = parse(&p, "g2");
        assert!(matches!(word_problem_search(&g2, &p, SearchBudget::default()), SearchOutcome::NotFound { .. }));
        assert!(!in_relator_lattice(&p, &g2));
        let check = decide_trivial("g2", &g2, &p, Strategy::Auto(SearchBudget::default())).unwrap();
        assert!(matches!(check.outcome, Outcome::Nontrivial(_)));
    }

    #[test]
    fn tampered_certificate_fails() {
        let p = one_relator_presentation();
        let r = p.relators()[0].clone();
        let SearchOutcome::Trivial(mut c) = word_problem_search(&r, &p, SearchBudget::default()) else { panic!() };
        c.start = p.alphabet().parse("g2").unwrap().concat(&c.start);
        assert!(c.replay(&p).is_err());
    }

    #[test]
    fn smith_forms() {
        for p in [pj4_presentation(), one_relator_presentation(), bcl_presentation()] {
            let inv = abelianization(&p);
            assert_eq!(inv, AbelianInvariants { free_rank: 4, torsion: vec![2] }, "{p}");
            assert_eq!(inv.to_string(), "Z^4 + Z/2");
        }
        let s = abelianization(&surface_presentation());
        assert_eq!((s.free_rank, s.torsion.clone()), (4, vec![2]));
        let m = vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]];
        assert_eq!(smith_normal_form(&m, 3).diagonal, vec![2, 6, 12]);
    }

    #[test]
    fn lattice_membership() {
        let s = surface_presentation();
        assert!(in_relator_lattice(&s, &parse(&s, "α1^2 α2^2 α3^2 α4^2 α5^2")));
        assert!(!in_relator_lattice(&s, &parse(&s, "α1^2")));
        assert!(in_relator_lattice(&s, &parse(&s, "α1 α2 α1^-1 α2^-1")));
        assert!(!in_relator_lattice(&s, &parse(&s, "α1 α2 α3 α4 α5")));
        assert!(in_relator_lattice(&s, &parse(&s, "α1^4 α2^4 α3^4 α4^4 α5^4")));
    }

    #[test]
    fn bcl_maps() {
        let (f, g) = bcl_isomorphism();
        let s = Strategy::Auto(SearchBudget::default());
        assert_eq!(hom_well_defined(&f, s).unwrap().verdict, Verdict::Verified);
        assert_eq!(hom_well_defined(&g, s).unwrap().verdict, Verdict::Verified);
        assert_eq!(verify_mutual_inverse(&f, &g, s).unwrap().verdict, Verdict::Verified);
        assert_eq!(verify_mutual_inverse(&g, &f, s).unwrap().verdict, Verdict::Verified);
        assert!(surjectivity_identities(&f, &g).unwrap().iter().all(|x| x.2));
    }

    #[test]
    fn surface_maps() {
        let (f, g) = surface_isomorphism();
        let s = Strategy::Auto(SearchBudget::default());
        let wd = hom_well_defined(&g, s).unwrap();
        assert_eq!(wd.verdict, Verdict::Verified);
        assert_eq!(wd.checks[0].method, "dehn");
        assert_eq!(hom_well_defined(&f, s).unwrap().verdict, Verdict::Verified);
        assert_eq!(verify_mutual_inverse(&f, &g, s).unwrap().verdict, Verdict::Verified);
        assert_eq!(verify_mutual_inverse(&g, &f, s).unwrap().verdict, Verdict::Verified);
        assert!(surjectivity_identities(&f, &g).unwrap().iter().all(|x| x.2));
        assert_eq!(hom_well_defined(&surface_into_pj4(), s).unwrap().verdict, Verdict::Verified);
    }

    #[test]
    fn identity_maps() {
        for p in [surface_presentation(), one_relator_presentation()] {
            let id = GroupHom::identity(&p);
            let s = Strategy::Search(SearchBudget::default());
            let c = hom_well_defined(&id, s).unwrap();
            assert_eq!(c.verdict, Verdict::Verified);
            assert_eq!(verify_mutual_inverse(&id, &id, s).unwrap().verdict, Verdict::Verified);
        }
    }

    fn surface_word() -> impl proptest::strategy::Strategy<Value = Word> {
        proptest::collection::vec((0u8..5, any::<bool>()), 0..=12).prop_map(|v| {
            Word(v.into_iter().map(|(g, inv)| if inv { Letter::neg(g) } else { Letter::pos(g) }).collect())
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn dehn_agrees_with_search(w in surface_word()) {
            let p = surface_presentation();
            let dehn = dehn_reduce(&w, &p).unwrap().is_empty();
            let budget = SearchBudget { length_factor: 3, max_depth: 12, max_states: 5_000 };
            let lattice = in_relator_lattice(&p, &w);
            let search = lattice && matches!(word_problem_search(&w, &p, budget), SearchOutcome::Trivial(_));
            if search {
                prop_assert!(dehn);
            }
            if dehn {
                prop_assert!(lattice);
            }
            if !lattice {
                let small = SearchBudget { max_states: 500, ..budget };
                prop_assert!(!dehn && !matches!(word_problem_search(&w, &p, small), SearchOutcome::Trivial(_)));
            }
        }
    }
}
