//! Reference data and the end-to-end acceptance checks.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_rational::Ratio;

use crate::action::{PureAction, A_WORDS, G_INVERSE_TABLE, G_TABLE};
use crate::cactus::CactusGroup;
use crate::complex::CayleyBall;
use crate::dirichlet::{
    classify_identified_surface, g_alphabet, poincare_presentation, Dirichlet, LabeledPolygon, SidePairing, StartSide,
    EXPECTED_CYCLES, EXPECTED_PAIRINGS, EXPECTED_RELATORS,
};
use crate::error::{Error, Result};
use crate::geometry::{edge_length_45, hyp_distance, Embedding, HPolygon};
use crate::grouptheory::{
    abelianization, bcl_isomorphism, bcl_presentation, hom_well_defined, one_relator_presentation, piece_ratio,
    pj4_presentation, surface_into_pj4, surface_isomorphism, surface_presentation, surjectivity_identities,
    tietze_with_steps, verify_mutual_inverse, GroupHom, HomCheck, SearchBudget, Strategy, Verdict, ELIMINATIONS,
};
use crate::rewrite::{Equality, RewriteBudget, RewriteSystem};
use crate::words::{Letter, Presentation, Word};

pub const TABLE_LENGTH_3: [&str; 40] = [
    "s13 s23 s34",
    "s13 s23 s24",
    "s13 s24 s12",
    "s13 s24 s13",
    "s13 s24 s23",
    "s13 s34 s23",
    "s13 s34 s13",
    "s13 s34 s12",
    "s23 s13 s24",
    "s23 s13 s23",
    "s23 s12 s23",
    "s23 s12 s24",
    "s23 s12 s34",
    "s23 s34 s13",
    "s23 s34 s23",
    "s23 s34 s24",
    "s24 s34 s13",
    "s24 s34 s12",
    "s24 s12 s24",
    "s24 s12 s23",
    "s24 s12 s13",
    "s24 s13 s24",
    "s24 s13 s34",
    "s24 s13 s12",
    "s34 s24 s12",
    "s34 s24 s34",
    "s34 s23 s34",
    "s34 s23 s12",
    "s34 s23 s13",
    "s34 s13 s34",
    "s34 s13 s24",
    "s34 s13 s23",
    "s12 s34 s23",
    "s12 s34 s24",
    "s12 s24 s13",
    "s12 s24 s12",
    "s12 s24 s34",
    "s12 s23 s34",
    "s12 s23 s12",
    "s12 s23 s13",
];
pub const TABLE_LENGTH_4: [&str; 105] = [
    "s13 s23 s34 s12",
    "s13 s23 s34 s13",
    "s13 s23 s34 s23",
    "s13 s23 s34 s24",
    "s13 s24 s34 s13",
    "s13 s24 s34 s12",
    "s13 s24 s12 s24",
    "s13 s24 s12 s13",
    "s13 s24 s12 s13",
    "s13 s24 s13 s24",
    "s13 s24 s13 s34",
    "s13 s24 s13 s12",
    "s13 s34 s24 s12",
    "s13 s34 s24 s34",
    "s13 s34 s23 s34",
    "s13 s34 s23 s12",
    "s13 s34 s23 s13",
    "s13 s34 s13 s34",
    "s13 s34 s13 s24",
    "s13 s34 s13 s23",
    "s13 s12 s34 s23",
    "s13 s12 s34 s24",
    "s23 s13 s24 s13",
    "s23 s13 s24 s12",
    "s23 s13 s24 s34",
    "s23 s12 s13 s34",
    "s23 s12 s13 s12",
    "s23 s12 s23 s12",
    "s23 s12 s23 s34",
    "s23 s12 s23 s24",
    "s23 s12 s24 s12",
    "s23 s12 s24 s13",
    "s23 s12 s24 s23",
    "s23 s34 s12 s23",
    "s23 s34 s12 s13",
    "s23 s34 s13 s24",
    "s23 s34 s13 s34",
    "s23 s34 s13 s12",
    "s23 s34 s23 s12",
    "s23 s34 s23 s34",
    "s23 s34 s23 s24",
    "s23 s24 s23 s12",
    "s23 s24 s23 s13",
    "s24 s34 s13 s34",
    "s24 s34 s13 s24",
    "s24 s34 s13 s23",
    "s24 s12 s34 s23",
    "s24 s12 s34 s24",
    "s24 s12 s24 s13",
    "s24 s12 s24 s12",
    "s24 s12 s24 s34",
    "s24 s12 s23 s34",
    "s24 s12 s23 s12",
    "s24 s12 s23 s13",
    "s24 s13 s23 s34",
    "s24 s13 s23 s24",
    "s24 s13 s24 s12",
    "s24 s13 s24 s13",
    "s24 s13 s24 s23",
    "s24 s13 s34 s23",
    "s24 s13 s34 s13",
    "s24 s13 s34 s12",
    "s24 s23 s13 s24",
    "s24 s23 s13 s23",
    "s34 s24 s12 s23",
    "s34 s24 s12 s24",
    "s34 s24 s12 s34",
    "s34 s23 s24 s13",
    "s34 s23 s24 s23",
    "s34 s23 s34 s23",
    "s34 s23 s34 s13",
    "s34 s23 s34 s12",
    "s34 s23 s12 s24",
    "s34 s23 s12 s23",
    "s34 s23 s12 s13",
    "s34 s13 s12 s24",
    "s34 s13 s12 s34",
    "s34 s13 s34 s13",
    "s34 s13 s34 s23",
    "s34 s13 s34 s24",
    "s34 s13 s24 s13",
    "s34 s13 s24 s12",
    "s34 s13 s24 s34",
    "s34 s12 s13 s34",
    "s34 s12 s13 s12",
    "s12 s34 s23 s12",
    "s12 s34 s23 s34",
    "s12 s34 s23 s24",
    "s12 s24 s23 s12",
    "s12 s24 s23 s13",
    "s12 s24 s13 s34",
    "s12 s24 s13 s24",
    "s12 s24 s13 s23",
    "s12 s24 s12 s23",
    "s12 s24 s12 s24",
    "s12 s24 s12 s34",
    "s12 s23 s24 s13",
    "s12 s23 s24 s23",
    "s12 s23 s34 s23",
    "s12 s23 s34 s13",
    "s12 s23 s34 s12",
    "s12 s23 s12 s24",
    "s12 s23 s12 s23",
    "s12 s23 s12 s13",
    "s12 s13 s12 s24",
];

pub const LENGTH_1: [&str; 5] = ["s12", "s23", "s34", "s13", "s24"];

pub const LENGTH_2: [&str; 15] = [
    "s12 s23", "s13 s23", "s13 s24", "s13 s34", "s13 s12", "s23 s12", "s23 s34", "s24 s34", "s24 s12", "s24 s13",
    "s24 s23", "s34 s23", "s34 s13", "s34 s12", "s12 s24",
];

pub const FACES_AT_E: [[&str; 4]; 5] = [
    ["e", "s12", "s12 s13", "s13"],
    ["e", "s13", "s13 s12", "s23"],
    ["e", "s23", "s23 s24", "s24"],
    ["e", "s24", "s24 s23", "s34"],
    ["e", "s34", "s34 s12", "s12"],
];

/// `a_16` as it is spelled in the length-4 table.
pub const A16_RESPELLING: (&str, &str) = ("s34 s13 s23 s24", "s34 s13 s24 s34");

/// `π(a_i)` in cycle notation.
pub const PI_TABLE: [(usize, &str); 10] = [
    (1, "(14)(23)"),
    (2, "e"),
    (3, "(14)(23)"),
    (4, "(14)(23)"),
    (5, "e"),
    (6, "(14)(23)"),
    (7, "(14)(23)"),
    (8, "e"),
    (10, "(14)(23)"),
    (12, "(14)(23)"),
];

/// `a_i^-1 = a_j`.
pub const INVERSE_TABLE: [(usize, usize); 11] =
    [(1, 17), (2, 11), (3, 19), (4, 4), (5, 20), (6, 18), (7, 15), (8, 13), (9, 9), (10, 14), (12, 16)];

/// `s14 a_i = a_j s14`.
pub const S14_TABLE: [(usize, usize); 12] =
    [(1, 12), (2, 11), (3, 10), (4, 9), (5, 8), (6, 7), (7, 6), (8, 5), (9, 4), (10, 3), (11, 2), (12, 1)];

pub const V_WORDS: [&str; 5] = ["s13 s24 s23", "s23 s34 s12", "s24 s13 s23", "s34 s13 s12", "s12 s24 s34"];

pub const ANGLE_4: [&str; 5] = ["s13 s23", "s13 s12", "s24 s34", "s24 s23", "s34 s12"];

pub const ANGLE_3: [&str; 10] =
    ["s12 s23", "s13 s24", "s13 s34", "s23 s12", "s23 s34", "s24 s12", "s24 s13", "s34 s23", "s34 s13", "s12 s24"];

pub const CRITERIA: [&str; 13] = [
    "sphere counts and length tables",
    "pure elements of translation length 4",
    "projection table and parity law",
    "conjugation by s14",
    "Cayley complex structure",
    "{4,5} embedding",
    "Dirichlet polygon",
    "side pairings",
    "vertex cycles and presentation",
    "Tietze reduction",
    "isomorphisms",
    "surface classification",
    "action properties",
];

#[derive(Clone, Debug, PartialEq)]
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub budget: RewriteBudget,
    pub tolerance: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { budget: RewriteBudget::default(), tolerance: 1e-6 }
    }
}

struct Log {
    ok: bool,
    lines: Vec<String>,
}

impl Log {
    fn new() -> Self {
        Log { ok: true, lines: Vec::new() }
    }

    fn check(&mut self, cond: bool, msg: impl Into<String>) {
        let msg = msg.into();
        if cond {
            self.lines.push(format!("ok: {msg}"));
        } else {
            self.ok = false;
            self.lines.push(format!("FAILED: {msg}"));
        }
    }

    fn note(&mut self, msg: impl Into<String>) {
        self.lines.push(msg.into());
    }
}

/// Table entries matched against a sphere: each entry certified equal to
/// one sphere element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableMatch {
    pub entries: usize,
    pub certified: usize,
    pub duplicates: Vec<String>,
    pub missing: Vec<String>,
    pub outside: Vec<String>,
}

impl TableMatch {
    pub fn exact(&self) -> bool {
        self.certified == self.entries
            && self.duplicates.is_empty()
            && self.missing.is_empty()
            && self.outside.is_empty()
    }
}

/// Shared, lazily built state for the checks.
pub struct Verifier {
    cfg: VerifyConfig,
    sys: RewriteSystem,
    j4: RewriteSystem,
    dirichlet: OnceLock<std::result::Result<Dirichlet, Error>>,
    polygon: OnceLock<std::result::Result<(LabeledPolygon, Vec<SidePairing>), Error>>,
}

impl Verifier {
    pub fn new(cfg: VerifyConfig) -> Self {
        Verifier {
            cfg,
            sys: RewriteSystem::new(CactusGroup::j4_prime(), cfg.budget),
            j4: RewriteSystem::new(CactusGroup::j4(), cfg.budget),
            dirichlet: OnceLock::new(),
            polygon: OnceLock::new(),
        }
    }

    pub fn rewriting(&self) -> &RewriteSystem {
        &self.sys
    }

    pub fn dirichlet(&self) -> Result<&Dirichlet> {
        self.dirichlet
            .get_or_init(|| Dirichlet::with_system(RewriteSystem::new(CactusGroup::j4_prime(), self.cfg.budget)))
            .as_ref()
            .map_err(Clone::clone)
    }

    pub fn polygon(&self) -> Result<(&LabeledPolygon, &[SidePairing])> {
        let r = self.polygon.get_or_init(|| {
            let d = self.dirichlet()?;
            let poly = d.dirichlet_polygon()?;
            let pairings = d.side_pairings(&poly)?;
            Ok((poly, pairings))
        });
        r.as_ref().map(|(p, s)| (p, s.as_slice())).map_err(Clone::clone)
    }

    fn parse(&self, s: &str) -> Result<Word> {
        CactusGroup::j4().parse(s)
    }

    fn canon(&self, s: &str) -> Result<Word> {
        self.sys.canonical_form(&self.parse(s)?)
    }

    fn fmt(&self, w: &Word) -> String {
        CactusGroup::j4().format(w)
    }

    fn certify_equal(&self, sys: &RewriteSystem, a: &Word, b: &Word) -> Result<bool> {
        match sys.words_equal(a, b)? {
            Equality::Equal(cert) => {
                sys.replay(&cert, a, b)?;
                Ok(true)
            }
            _ => Ok(false),
        }
    }

    /// Matches table entries against the sphere of the same length.
    pub fn match_table(&self, entries: &[&str], sphere: &BTreeSet<Word>) -> Result<TableMatch> {
        let mut hits: BTreeMap<Word, Vec<&str>> = BTreeMap::new();
        let mut certified = 0;
        let mut outside = Vec::new();
        for &e in entries {
            let w = self.parse(e)?;
            let c = self.sys.canonical_form(&w)?;
            if sphere.contains(&c) && self.certify_equal(&self.sys, &w, &c)? {
                certified += 1;
                hits.entry(c).or_default().push(e);
            } else {
                outside.push(e.to_string());
            }
        }
        let duplicates = hits.values().filter(|v| v.len() > 1).map(|v| v.join(" = ")).collect();
        let missing = sphere.iter().filter(|w| !hits.contains_key(*w)).map(|w| self.fmt(w)).collect();
        Ok(TableMatch { entries: entries.len(), certified, duplicates, missing, outside })
    }

    pub fn run(&self, id: usize) -> Criterion {
        let result = match id {
            1 => self.spheres(),
            2 => self.pure(),
            3 => self.projection(),
            4 => self.conjugation(),
            5 => self.complex(),
            6 => self.geometry(),
            7 => self.polygon_check(),
            8 => self.pairings(),
            9 => self.cycles(),
            10 => self.tietze(),
            11 => self.isomorphisms(),
            12 => self.surface(),
            13 => self.action_properties(),
            _ => Err(Error::InvalidArgument(format!("no criterion {id}"))),
        };
        let title = CRITERIA.get(id.wrapping_sub(1)).copied().unwrap_or("unknown");
        match result {
            Ok(log) => Criterion { id, title, passed: log.ok, details: log.lines },
            Err(e) => Criterion { id, title, passed: false, details: vec![format!("error: {e}")] },
        }
    }

    pub fn run_all(&self) -> Vec<Criterion> {
        (1..=CRITERIA.len()).map(|i| self.run(i)).collect()
    }

    fn spheres(&self) -> Result<Log> {
        let mut log = Log::new();
        let spheres = self.sys.spheres(4)?;
        let sizes: Vec<usize> = spheres.iter().map(BTreeSet::len).collect();
        log.check(sizes == [1, 5, 15, 40, 105], format!("sphere sizes {sizes:?}"));
        for (len, list) in [(1, &LENGTH_1[..]), (2, &LENGTH_2[..])] {
            let got = list.iter().map(|s| self.canon(s)).collect::<Result<BTreeSet<_>>>()?;
            log.check(got == spheres[len], format!("length-{len} list equals the sphere"));
        }
        for (len, table) in [(3, &TABLE_LENGTH_3[..]), (4, &TABLE_LENGTH_4[..])] {
            let m = self.match_table(table, &spheres[len])?;
            log.check(
                m.certified == m.entries,
                format!("length-{len} table: {}/{} entries certified in the sphere", m.certified, m.entries),
            );
            log.check(m.duplicates.is_empty(), format!("length-{len} table: duplicated classes {:?}", m.duplicates));
            log.check(m.missing.is_empty(), format!("length-{len} table: sphere elements not listed {:?}", m.missing));
            if !m.exact() && m.duplicates.len() == 1 && m.missing.len() == 1 && m.outside.is_empty() {
                log.note(format!(
                    "length-{len} table matches after one correction: the repeated entry {} stands for {}",
                    m.duplicates[0], m.missing[0]
                ));
            }
        }
        let (a, b) = (self.parse(A16_RESPELLING.0)?, self.parse(A16_RESPELLING.1)?);
        log.check(
            self.certify_equal(&self.sys, &a, &b)?,
            format!("{} = {} certified", A16_RESPELLING.0, A16_RESPELLING.1),
        );
        Ok(log)
    }

    fn pure(&self) -> Result<Log> {
        let mut log = Log::new();
        let act = PureAction::new(RewriteSystem::new(CactusGroup::j4_prime(), self.cfg.budget))?;
        let j4 = CactusGroup::j4();
        log.check(act.pure_elements_within(3)?.is_empty(), "no pure element moves e by 3 or less");
        let found = act.pure_elements_within(4)?;
        let named: BTreeSet<_> = act.named_elements()?.into_iter().map(|n| n.element).collect();
        log.check(found.len() == 20, format!("{} pure elements within distance 4", found.len()));
        log.check(found == named, "they are g1..g10 and their inverses");
        for (i, &(k, p)) in G_TABLE.iter().enumerate() {
            let mut w = self.parse(A_WORDS[k - 1])?;
            if p == 1 {
                w.0.push(Letter::pos(j4.longest()));
            }
            let ok = j4.is_pure(&w) && act.element(&w)? == act.g(i + 1)?;
            log.check(ok, format!("g{} = a{}{} is pure", i + 1, k, if p == 1 { " s14" } else { "" }));
        }
        for (i, &(k, p)) in G_INVERSE_TABLE.iter().enumerate() {
            let inv = act.inverse(&act.g(i + 1)?)?;
            let ok = inv.j4p_form() == &act.a(k)? && inv.parity() == p;
            log.check(ok, format!("g{}^-1 = a{}{}", i + 1, k, if p == 1 { " s14" } else { "" }));
        }
        for &(i, j) in &INVERSE_TABLE {
            let ai = self.parse(A_WORDS[i - 1])?;
            let inv = j4.alphabet().invert(&ai);
            let aj = self.parse(A_WORDS[j - 1])?;
            log.check(self.certify_equal(&self.sys, &inv, &aj)?, format!("a{i}^-1 = a{j} certified"));
        }
        Ok(log)
    }

    fn projection(&self) -> Result<Log> {
        let mut log = Log::new();
        let j4 = CactusGroup::j4();
        for &(i, expected) in &PI_TABLE {
            let got = j4.project(&self.parse(A_WORDS[i - 1])?).cycle_notation();
            log.check(got == expected, format!("π(a{i}) = {got}"));
        }
        let gens = CactusGroup::j4_prime().generators().to_vec();
        let mut frontier = vec![Word::empty()];
        let mut checked = 0usize;
        let mut bad = 0usize;
        for len in 0..=5 {
            for w in &frontier {
                checked += 1;
                let sign = j4.project(w).sign();
                if sign != if len % 2 == 0 { 1 } else { -1 } {
                    bad += 1;
                }
            }
            if len < 5 {
                frontier = frontier
                    .iter()
                    .flat_map(|w| gens.iter().map(move |&g| w.concat(&Word(vec![Letter::pos(g)]))))
                    .collect();
            }
        }
        log.check(bad == 0, format!("parity law on all {checked} words of length at most 5"));
        Ok(log)
    }

    fn conjugation(&self) -> Result<Log> {
        let mut log = Log::new();
        let s14 = Word(vec![Letter::pos(CactusGroup::j4().longest())]);
        for &(i, j) in &S14_TABLE {
            let lhs = s14.concat(&self.parse(A_WORDS[i - 1])?);
            let rhs = self.parse(A_WORDS[j - 1])?.concat(&s14);
            log.check(self.certify_equal(&self.j4, &lhs, &rhs)?, format!("s14 a{i} = a{j} s14 certified in J_4"));
        }
        Ok(log)
    }

    fn complex(&self) -> Result<Log> {
        let mut log = Log::new();
        let ball = CayleyBall::build(&self.sys, 2)?;
        log.check(ball.vertices().len() == 21, format!("radius-2 ball has {} vertices", ball.vertices().len()));
        log.check(ball.edges().len() == 25, format!("radius-2 ball has {} edges", ball.edges().len()));
        let e = ball.index_of(&Word::empty()).ok_or_else(|| Error::Inconsistent("no identity".into()))?;
        let got: BTreeSet<BTreeSet<Word>> =
            ball.faces_at(e).iter().map(|f| f.vertices.iter().map(|&v| ball.vertex(v).clone()).collect()).collect();
        let expected = FACES_AT_E
            .iter()
            .map(|f| f.iter().map(|s| self.canon(s)).collect::<Result<BTreeSet<_>>>())
            .collect::<Result<BTreeSet<_>>>()?;
        log.check(got == expected, format!("{} faces at e, as listed", got.len()));
        let ball3 = CayleyBall::build(&self.sys, 3)?;
        let report = ball3.check_tiling(5);
        log.check(
            report.ok() && report.interior_vertices > 0,
            format!("radius-3 ball: {} interior vertices, all with pentagon links", report.interior_vertices),
        );
        for v in &report.violations {
            log.note(format!("violation: {}", v.message));
        }
        Ok(log)
    }

    fn geometry(&self) -> Result<Log> {
        let mut log = Log::new();
        let tol = self.cfg.tolerance;
        let r = edge_length_45();
        let cot = 1.0 / (PI / 5.0).tan();
        log.check((r - 1.253739).abs() < 5e-7 && (r.cosh() - cot * cot).abs() < 1e-12, format!("R = {r:.9}"));
        let ball = CayleyBall::build(&self.sys, 3)?;
        let emb = Embedding::new(&ball, CactusGroup::j4_prime().relators())?;
        let pos = emb.positions();
        let edge_err = ball.edges().iter().map(|e| (hyp_distance(pos[e.u], pos[e.v]) - r).abs()).fold(0.0, f64::max);
        log.check(edge_err < tol, format!("{} edges, max length error {edge_err:.2e}", ball.edges().len()));
        let mut angle_err: f64 = 0.0;
        for f in ball.faces() {
            let poly = HPolygon::new(f.vertices.iter().map(|&v| pos[v]).collect())?;
            for a in poly.angles() {
                let a = a.min(2.0 * PI - a);
                angle_err = angle_err.max((a - 2.0 * PI / 5.0).abs());
            }
        }
        log.check(angle_err < tol, format!("{} faces, max angle error {angle_err:.2e}", ball.faces().len()));
        Ok(log)
    }

    fn polygon_check(&self) -> Result<Log> {
        let mut log = Log::new();
        let d = self.dirichlet()?;
        let (p, _) = self.polygon()?;
        log.check(p.len() == 20 && p.polygon.sides().len() == 20, format!("{} vertices", p.len()));
        let tol = self.cfg.tolerance;
        let dev = p
            .polygon
            .angles()
            .iter()
            .zip(&p.angle_units)
            .map(|(a, &u)| (a - u as f64 * PI / 5.0).abs())
            .fold(0.0, f64::max);
        log.check(dev < tol, format!("angles are multiples of π/5 (max deviation {dev:.2e})"));
        for (units, list) in [(2u32, &V_WORDS[..]), (4, &ANGLE_4[..]), (3, &ANGLE_3[..])] {
            let expected = list.iter().map(|s| self.canon(s)).collect::<Result<BTreeSet<_>>>()?;
            let got: BTreeSet<Word> =
                p.labels.iter().zip(&p.angle_units).filter(|(_, &a)| a == units).map(|(l, _)| l.clone()).collect();
            log.check(got == expected, format!("{} vertices with angle {units}π/5, as listed", got.len()));
        }
        let inside = d.interior_tiling_vertices(p);
        log.check(
            inside.iter().all(|w| w.len() < 3),
            format!("{} tiling vertices inside, none of length 3 or more", inside.len()),
        );
        let mut edges = 0;
        let mut diagonals = 0;
        for i in 0..p.len() {
            let (a, b) = p.side(i);
            match self.sys.distance(a, b)? {
                1 => edges += 1,
                2 => diagonals += 1,
                _ => {}
            }
        }
        log.check(edges == 10 && diagonals == 10, format!("{edges} sides are edges, {diagonals} are square diagonals"));
        log.check(d.graph_membership(p)?, "every vertex is no closer to an orbit point than to e");
        Ok(log)
    }

    fn pairings(&self) -> Result<Log> {
        let mut log = Log::new();
        let d = self.dirichlet()?;
        let (p, pairings) = self.polygon()?;
        for (pair, &(i, src, dst)) in pairings.iter().zip(&EXPECTED_PAIRINGS) {
            let g = d.action().g(i)?;
            let s = [self.canon(src[0])?, self.canon(src[1])?];
            let t = [self.canon(dst[0])?, self.canon(dst[1])?];
            let images = [d.action().gamma(&g, &s[0])?, d.action().gamma(&g, &s[1])?];
            let ok = pair.generator == i
                && p.side_between(&s[0], &s[1]) == Some(pair.source)
                && p.side_between(&t[0], &t[1]) == Some(pair.target)
                && images == t;
            log.check(ok, format!("g{i}: s({}, {}) -> s({}, {})", src[0], src[1], dst[0], dst[1]));
        }
        Ok(log)
    }

    fn cycles(&self) -> Result<Log> {
        let mut log = Log::new();
        let d = self.dirichlet()?;
        let (p, pairings) = self.polygon()?;
        let cycles = d.vertex_cycles(p, pairings, StartSide::Previous)?;
        let other = d.vertex_cycles(p, pairings, StartSide::Next)?;
        log.check(cycles.len() == 6, format!("{} cycles", cycles.len()));
        let tol = self.cfg.tolerance;
        for c in &cycles {
            let ok = (c.angle_sum() - 2.0 * PI).abs() < tol && c.nu == 1;
            let labels: Vec<String> = c.labels.iter().map(|w| self.fmt(w)).collect();
            log.check(
                ok,
                format!(
                    "{{{}}} at {{{}}}: angle sum {}π/5, ν = {}",
                    c.generator_names().join(", "),
                    labels.join(", "),
                    c.angle_units,
                    c.nu
                ),
            );
        }
        let parts = |cs: &[crate::dirichlet::VertexCycle]| {
            cs.iter().map(|c| c.vertices.iter().copied().collect::<BTreeSet<_>>()).collect::<BTreeSet<_>>()
        };
        log.check(parts(&cycles) == parts(&other), "both starting sides give the same vertex partition");
        let total: u32 = cycles.iter().map(|c| c.angle_units).sum();
        log.check(total == 60, format!("total angle {total}π/5"));
        let u1 = p.index_of(&self.canon(V_WORDS[0])?).ok_or_else(|| Error::UnmatchedVertex(V_WORDS[0].into()))?;
        let five = cycles.iter().find(|c| c.vertices.contains(&u1)).and_then(|c| c.rotated_to(u1));
        let five_names = five.as_ref().map(|c| c.generator_names().join(" ")).unwrap_or_default();
        log.check(five_names == EXPECTED_CYCLES[0].0, format!("cycle through u1 reads {five_names}"));
        for (gens, _) in &EXPECTED_CYCLES[1..] {
            let want: Vec<&str> = gens.split(' ').collect();
            let found = cycles.iter().chain(&other).any(|c| {
                let names = c.generator_names();
                names.len() == want.len()
                    && (0..names.len()).any(|k| (0..names.len()).all(|j| names[(j + k) % names.len()] == want[j]))
            });
            log.check(found, format!("cycle {{{}}} found", want.join(", ")));
        }
        let pres = poincare_presentation(&cycles)?;
        let expected = Presentation::parse(g_alphabet(), &EXPECTED_RELATORS)?;
        log.check(pres.same_relators(&expected), format!("presentation {pres}"));
        Ok(log)
    }

    fn tietze(&self) -> Result<Log> {
        let mut log = Log::new();
        let before = pj4_presentation();
        let r = tietze_with_steps(&before, &ELIMINATIONS)?;
        for s in &r.steps {
            log.note(format!("{} = {} (from {})", s.generator, s.definition, s.justification));
        }
        log.check(r.presentation.same_relators(&one_relator_presentation()), format!("result {}", r.presentation));
        let (a, b) = (abelianization(&before), abelianization(&r.presentation));
        log.check(a == b, format!("abelianization {a} before and {b} after"));
        log.check(
            abelianization(&bcl_presentation()) == a,
            "the five-letter one-relator group has the same abelianization",
        );
        Ok(log)
    }

    fn hom_log(&self, log: &mut Log, name: &str, check: &HomCheck) {
        let methods: BTreeSet<&str> = check.checks.iter().map(|c| c.method).collect();
        let methods: Vec<&str> = methods.into_iter().collect();
        log.check(
            check.verdict == Verdict::Verified,
            format!("{name}: {} ({})", check.verdict.label(), methods.join(", ")),
        );
    }

    fn isomorphisms(&self) -> Result<Log> {
        let mut log = Log::new();
        let s = Strategy::Auto(SearchBudget::default());
        let pairs: [(&str, (GroupHom, GroupHom)); 2] = [("bcl", bcl_isomorphism()), ("surface", surface_isomorphism())];
        for (name, (f, g)) in &pairs {
            self.hom_log(&mut log, &format!("{name}: f well defined"), &hom_well_defined(f, s)?);
            self.hom_log(&mut log, &format!("{name}: g well defined"), &hom_well_defined(g, s)?);
            let surj = surjectivity_identities(f, g)?;
            log.check(surj.iter().all(|x| x.2), format!("{name}: f hits every generator"));
            self.hom_log(&mut log, &format!("{name}: g f = id"), &verify_mutual_inverse(f, g, s)?);
            self.hom_log(&mut log, &format!("{name}: f g = id"), &verify_mutual_inverse(g, f, s)?);
        }
        let (_, g) = &pairs[1].1;
        let ratio = piece_ratio(&surface_presentation());
        log.check(ratio == Ratio::new(1, 10), format!("surface piece ratio {ratio}"));
        let wd = hom_well_defined(g, s)?;
        log.check(wd.checks.iter().all(|c| c.method == "dehn"), "Dehn's algorithm decides the surface side");
        self.hom_log(
            &mut log,
            "surface into the ten-generator presentation",
            &hom_well_defined(&surface_into_pj4(), s)?,
        );
        Ok(log)
    }

    fn surface(&self) -> Result<Log> {
        let mut log = Log::new();
        let d = self.dirichlet()?;
        let (p, pairings) = self.polygon()?;
        let cycles = d.vertex_cycles(p, pairings, StartSide::Previous)?;
        let c = classify_identified_surface(&d.edge_word(p, pairings))?;
        log.check(c.vertices == cycles.len(), format!("{} vertex classes", c.vertices));
        log.check(
            c.euler_characteristic == -3 && !c.orientable,
            format!("χ = {}, orientable: {}", c.euler_characteristic, c.orientable),
        );
        log.check(c.name == "N_5 = #_5 ℝP²", c.name.clone());
        let surf = abelianization(&surface_presentation());
        log.check(
            surf == abelianization(&pj4_presentation()),
            format!("abelianization {surf} agrees with the surface group"),
        );
        Ok(log)
    }

    fn action_properties(&self) -> Result<Log> {
        let mut log = Log::new();
        let d = self.dirichlet()?;
        let act = d.action();
        let named = act.named_elements()?;
        let ball: Vec<Word> = self.sys.spheres(3)?.into_iter().flatten().collect();
        let mut fixed = 0;
        for n in &named {
            for h in &ball {
                if &act.gamma(&n.element, h)? == h {
                    fixed += 1;
                }
            }
        }
        log.check(fixed == 0, format!("no fixed points among {} elements x {} vertices", named.len(), ball.len()));
        let small: Vec<Word> = self.sys.spheres(1)?.into_iter().flatten().collect();
        let mut law = true;
        for x in &named {
            for y in &named {
                let xy = act.product(&x.element, &y.element)?;
                for h in &small {
                    law &= act.gamma(&xy, h)? == act.gamma(&x.element, &act.gamma(&y.element, h)?)?;
                }
            }
        }
        log.check(law, "g(h(x)) = (gh)(x) on the unit ball");
        let mut iso = true;
        for n in &named {
            for (i, u) in small.iter().enumerate() {
                for v in &small[i..] {
                    let (gu, gv) = (act.gamma(&n.element, u)?, act.gamma(&n.element, v)?);
                    iso &= self.sys.distance(&gu, &gv)? == self.sys.distance(u, v)?;
                }
            }
        }
        log.check(iso, "distances on the unit ball are preserved");
        let even =
            named.iter().all(|n| self.sys.length(&act.orbit_point(&n.element)).map(|l| l % 2 == 0).unwrap_or(false));
        log.check(even, "every orbit distance is even");
        Ok(log)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_three_table_is_exact() {
        let v = Verifier::new(VerifyConfig::default());
        let sphere = v.rewriting().sphere(3).unwrap();
        let m = v.match_table(&TABLE_LENGTH_3, &sphere).unwrap();
        assert!(m.exact(), "{m:?}");
    }

    #[test]
    fn table_mismatches_are_reported() {
        let v = Verifier::new(VerifyConfig::default());
        let sphere = v.rewriting().sphere(2).unwrap();
        let mut entries = LENGTH_2.to_vec();
        entries[0] = "s13 s23";
        entries.push("s12");
        let m = v.match_table(&entries, &sphere).unwrap();
        assert!(!m.exact());
        assert_eq!(m.duplicates, ["s13 s23 = s13 s23"]);
        assert_eq!(m.missing, ["s12 s23"]);
        assert_eq!(m.outside, ["s12"]);
    }

    #[test]
    fn tables_are_distinct_words() {
        let t3: BTreeSet<&str> = TABLE_LENGTH_3.iter().copied().collect();
        assert_eq!(t3.len(), 40);
        let t4: BTreeSet<&str> = TABLE_LENGTH_4.iter().copied().collect();
        assert_eq!(t4.len(), 104);
    }

    #[test]
    fn unknown_criterion_fails() {
        let v = Verifier::new(VerifyConfig::default());
        let c = v.run(14);
        assert!(!c.passed);
        assert_eq!(c.title, "unknown");
    }

    #[test]
    fn geometric_criteria_pass() {
        let v = Verifier::new(VerifyConfig::default());
        for id in [6, 7, 8, 9, 12] {
            let c = v.run(id);
            assert!(c.passed, "{id}: {:?}", c.details);
        }
    }

    #[test]
    fn tight_tolerance_is_still_met() {
        let v = Verifier::new(VerifyConfig { tolerance: 1e-9, ..VerifyConfig::default() });
        assert!(v.run(6).passed);
    }
}
