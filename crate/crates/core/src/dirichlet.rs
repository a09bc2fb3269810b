//! The Dirichlet polygon of the pure cactus group acting on the `{4,5}`
//! tiling, its side pairings, vertex cycles and the resulting presentation.
//!
//! Distances that decide which tiling vertices belong to the polygon are
//! measured in the Cayley graph of `J_4'`. The side of the polygon facing the
//! orbit point `g·e` is the geodesic through the two nearest tiling vertices
//! equidistant from `e` and `g·e`.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use crate::action::{Named, PureAction, PureElement};
use crate::cactus::CactusGroup;
use crate::complex::CayleyBall;
use crate::error::{Error, Result};
use crate::geometry::{
    halfplane_intersection, halfplane_intersection_of, Embedding, Geodesic, HPoint, HPolygon, HalfPlane,
};
use crate::rewrite::RewriteSystem;
use crate::words::{Alphabet, Letter, Presentation, Word};

pub const MATCH_TOL: f64 = 1e-6;

/// The expected side pairings: `g_i` maps the first side onto the second,
/// endpoint by endpoint.
pub const EXPECTED_PAIRINGS: [(usize, [&str; 2], [&str; 2]); 10] = [
    (1, ["s34 s12", "s34 s13"], ["s13 s24", "s13 s23"]),
    (2, ["s24 s13", "s24 s13 s23"], ["s13 s24", "s13 s24 s23"]),
    (3, ["s34 s23", "s34 s23 s13"], ["s13 s34", "s13 s34 s24"]),
    (4, ["s24 s34", "s24 s12"], ["s13 s34", "s13 s12"]),
    (5, ["s13 s23", "s12 s23"], ["s23 s12", "s23 s13"]),
    (6, ["s34 s13", "s34 s13 s12"], ["s23 s12", "s23 s12 s34"]),
    (7, ["s12 s24", "s12 s24 s34"], ["s23 s34", "s23 s34 s12"]),
    (8, ["s24 s23", "s34 s23"], ["s23 s34", "s24 s34"]),
    (9, ["s12 s23", "s12 s23 s24"], ["s24 s12", "s24 s12 s13"]),
    (10, ["s12 s34", "s12 s24"], ["s24 s13", "s24 s23"]),
];

/// The expected cycles of generators with their cycles of vertices.
pub const EXPECTED_CYCLES: [(&str, &str); 6] = [
    ("g2^-1 g9^-1 g7 g6^-1 g3", "s13 s24 s23, s24 s13 s23, s12 s23 s24, s23 s34 s12, s34 s13 s12"),
    ("g4^-1 g8^-1 g3", "s13 s34, s24 s34, s34 s23"),
    ("g4^-1 g9^-1 g5", "s13 s12, s24 s12, s12 s23"),
    ("g6^-1 g1 g5", "s23 s12, s34 s13, s13 s23"),
    ("g7^-1 g10 g8", "s23 s34, s12 s24, s24 s23"),
    ("g2 g1^-1 g10", "s24 s13, s13 s24, s34 s12"),
];

/// The relators of the presentation on `g1 .. g10`.
pub const EXPECTED_RELATORS: [&str; 6] =
    ["g3 g6^-1 g7 g9^-1 g2^-1", "g3 g8^-1 g4^-1", "g5 g9^-1 g4^-1", "g5 g1 g6^-1", "g8 g10 g7^-1", "g10 g1^-1 g2"];

/// Free alphabet `g1 .. g10`.
pub fn g_alphabet() -> Alphabet {
    let names: Vec<String> = (1..=10).map(|i| format!("g{i}")).collect();
    Alphabet::free(&names).expect("distinct names")
}

/// A polygon whose vertices are tiling vertices.
#[derive(Clone, Debug)]
pub struct LabeledPolygon {
    pub polygon: HPolygon,
    /// Canonical `J_4'` word at each vertex.
    pub labels: Vec<Word>,
    /// Interior angle at each vertex in units of `π/5`.
    pub angle_units: Vec<u32>,
}

impl LabeledPolygon {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.labels.iter().position(|l| l == w)
    }

    /// Endpoints of side `i`, from vertex `i` to vertex `i + 1`.
    pub fn side(&self, i: usize) -> (&Word, &Word) {
        (&self.labels[i], &self.labels[(i + 1) % self.len()])
    }

    /// The side with these endpoints, in either order.
    pub fn side_between(&self, a: &Word, b: &Word) -> Option<usize> {
        (0..self.len()).find(|&i| {
            let (x, y) = self.side(i);
            (x == a && y == b) || (x == b && y == a)
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SidePairing {
    /// `i` of `g_i`.
    pub generator: usize,
    pub source: usize,
    pub target: usize,
    /// Source endpoints in counterclockwise order.
    pub source_ends: (Word, Word),
    /// Images of the source endpoints.
    pub target_ends: (Word, Word),
}

#[derive(Clone, Debug, PartialEq)]
pub struct VertexCycle {
    /// `(i, inverse)` for each `A_k`, applied at the matching vertex.
    pub generators: Vec<(usize, bool)>,
    /// Polygon vertex indices `z_1 .. z_n`.
    pub vertices: Vec<usize>,
    pub labels: Vec<Word>,
    /// Angle sum in units of `π/5`.
    pub angle_units: u32,
    pub nu: u32,
}

fn gen_name(i: usize, inverse: bool) -> String {
    if inverse {
        format!("g{i}^-1")
    } else {
        format!("g{i}")
    }
}

impl VertexCycle {
    pub fn generator_names(&self) -> Vec<String> {
        self.generators.iter().map(|&(i, inv)| gen_name(i, inv)).collect()
    }

    pub fn angle_sum(&self) -> f64 {
        self.angle_units as f64 * PI / 5.0
    }

    /// `(A_n ⋯ A_1)^ν` over `g1 .. g10`.
    pub fn relator(&self) -> Word {
        let one: Word = self
            .generators
            .iter()
            .rev()
            .map(|&(i, inv)| if inv { Letter::neg(i as u8 - 1) } else { Letter::pos(i as u8 - 1) })
            .collect();
        let alphabet = g_alphabet();
        alphabet.power(&one, self.nu as i64)
    }

    /// The same cycle started at `vertex`.
    pub fn rotated_to(&self, vertex: usize) -> Option<VertexCycle> {
        let k = self.vertices.iter().position(|&v| v == vertex)?;
        let rot = |n: usize| (0..n).map(move |j| (j + k) % n);
        let n = self.vertices.len();
        Some(VertexCycle {
            generators: rot(n).map(|j| self.generators[j]).collect(),
            vertices: rot(n).map(|j| self.vertices[j]).collect(),
            labels: rot(n).map(|j| self.labels[j].clone()).collect(),
            angle_units: self.angle_units,
            nu: self.nu,
        })
    }
}

/// Which side to leave the starting vertex by.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StartSide {
    /// Towards the previous vertex in counterclockwise order.
    Previous,
    Next,
}

/// A boundary word of a polygon with paired sides: letter `k` with exponent
/// `±1`, read counterclockwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceWord(pub Vec<(usize, i8)>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceClass {
    pub vertices: usize,
    pub edges: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub name: String,
}

/// Classifies the closed surface obtained by gluing the sides of a polygon.
pub fn classify_identified_surface(word: &SurfaceWord) -> Result<SurfaceClass> {
    let n = word.0.len();
    let mut positions: BTreeMap<usize, Vec<(usize, i8)>> = BTreeMap::new();
    for (i, &(label, exp)) in word.0.iter().enumerate() {
        if exp != 1 && exp != -1 {
            return Err(Error::InvalidArgument(format!("exponent {exp} on side {i}")));
        }
        positions.entry(label).or_default().push((i, exp));
    }
    // Corner i sits between side i-1 and side i; side i runs from corner i to corner i+1.
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut orientable = true;
    for (label, occ) in &positions {
        if occ.len() != 2 {
            return Err(Error::UnpairedSide(format!("label {label} occurs {} times", occ.len())));
        }
        let ((i, ei), (j, ej)) = (occ[0], occ[1]);
        let ends = |k: usize, e: i8| if e == 1 { (k, (k + 1) % n) } else { ((k + 1) % n, k) };
        let (a0, a1) = ends(i, ei);
        let (b0, b1) = ends(j, ej);
        for (x, y) in [(a0, b0), (a1, b1)] {
            let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
            parent[rx] = ry;
        }
        if ei == ej {
            orientable = false;
        }
    }
    let vertices = (0..n).map(|x| find(&mut parent, x)).collect::<BTreeSet<_>>().len();
    let edges = positions.len();
    let chi = vertices as i64 - edges as i64 + 1;
    let name = if orientable {
        match (2 - chi) / 2 {
            0 => "S^2".to_string(),
            1 => "T^2".to_string(),
            g => format!("#_{g} T^2"),
        }
    } else {
        match 2 - chi {
            1 => "N_1 = ℝP²".to_string(),
            k => format!("N_{k} = #_{k} ℝP²"),
        }
    };
    Ok(SurfaceClass { vertices, edges, euler_characteristic: chi, orientable, name })
}

/// Convex polygons in the Klein model with disjoint interiors.
pub fn interiors_disjoint(a: &HPolygon, b: &HPolygon, tol: f64) -> bool {
    let ka: Vec<_> = a.vertices().iter().map(|p| p.to_klein()).collect();
    let kb: Vec<_> = b.vertices().iter().map(|p| p.to_klein()).collect();
    let separated_by = |p: &[num_complex::Complex64], q: &[num_complex::Complex64]| {
        (0..p.len()).any(|i| {
            let (u, v) = (p[i], p[(i + 1) % p.len()]);
            let d = (v - u) / (v - u).norm();
            q.iter().all(|&w| d.re * (w - u).im - d.im * (w - u).re <= tol)
        })
    };
    separated_by(&ka, &kb) || separated_by(&kb, &ka)
}

#[derive(Clone, Debug, PartialEq)]
pub struct TranslateReport {
    pub elements: usize,
    pub sharing_a_side: usize,
    pub overlapping_pairs: Vec<(String, String)>,
}

impl TranslateReport {
    pub fn ok(&self) -> bool {
        self.sharing_a_side == self.elements && self.overlapping_pairs.is_empty()
    }
}

pub struct Dirichlet {
    action: PureAction,
    embedding: Embedding,
    ball_positions: Vec<(Word, HPoint)>,
}

impl Dirichlet {
    pub fn new() -> Result<Self> {
        Dirichlet::with_system(RewriteSystem::j4_prime())
    }

    pub fn with_system(sys: RewriteSystem) -> Result<Self> {
        let ball = CayleyBall::build(&sys, 3)?;
        let embedding = Embedding::new(&ball, CactusGroup::j4_prime().relators())?;
        let mut ball_positions = Vec::new();
        for w in sys.spheres(4)?.into_iter().flatten() {
            let p = embedding.place(&w)?;
            ball_positions.push((w, p));
        }
        Ok(Dirichlet { action: PureAction::new(sys)?, embedding, ball_positions })
    }

    pub fn action(&self) -> &PureAction {
        &self.action
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// Tiling vertices of length at most four with their positions.
    pub fn tiling_vertices(&self) -> &[(Word, HPoint)] {
        &self.ball_positions
    }

    fn sys(&self) -> &RewriteSystem {
        self.action.rewriting()
    }

    /// Orbit points `g·e` of the twenty named elements.
    pub fn sites(&self) -> Result<Vec<(Named, Word)>> {
        Ok(self
            .action
            .named_elements()?
            .into_iter()
            .map(|n| {
                let w = self.action.orbit_point(&n.element);
                (n, w)
            })
            .collect())
    }

    /// The tiling vertex at `p`, if any.
    pub fn label_point(&self, p: HPoint) -> Option<&Word> {
        self.ball_positions.iter().find(|(_, q)| q.close_to(p, MATCH_TOL)).map(|(w, _)| w)
    }

    /// Intersection of the hyperbolic half-planes bounded by the perpendicular
    /// bisectors of `f(e)` and the embedded orbit points.
    pub fn hyperbolic_polygon(&self) -> Result<HPolygon> {
        let pts = self.sites()?.iter().map(|(_, w)| self.embedding.place(w)).collect::<Result<Vec<_>>>()?;
        halfplane_intersection(HPoint::origin(), &pts)
    }

    /// Tiling vertices of length at most three no farther from `e` than from
    /// any orbit point.
    pub fn closed_region(&self) -> Result<Vec<Word>> {
        let sites = self.sites()?;
        let mut out = Vec::new();
        for (w, _) in &self.ball_positions {
            if w.len() > 3 {
                continue;
            }
            let mut inside = true;
            for (_, a) in &sites {
                if self.sys().distance(w, a)? < w.len() {
                    inside = false;
                    break;
                }
            }
            if inside {
                out.push(w.clone());
            }
        }
        Ok(out)
    }

    /// The side line facing one orbit point: through the two least vertices
    /// of the closed region equidistant from `e` and the site.
    fn side_line(&self, region: &[Word], site: &Word) -> Result<Geodesic> {
        let mut ties = Vec::new();
        for w in region {
            if self.sys().distance(w, site)? == w.len() {
                ties.push(w.clone());
            }
        }
        ties.sort();
        let picked: Vec<&Word> = match ties.as_slice() {
            [a, b, ..] => vec![a, b],
            _ => {
                return Err(Error::Degenerate(format!(
                    "fewer than two vertices equidistant from e and {}",
                    self.format(site)
                )))
            }
        };
        Geodesic::through(self.embedding.place(picked[0])?, self.embedding.place(picked[1])?)
    }

    fn format(&self, w: &Word) -> String {
        CactusGroup::j4().format(w)
    }

    /// The polygon `D̃` with its vertices named by tiling vertices and listed
    /// counterclockwise from the least polar angle.
    pub fn dirichlet_polygon(&self) -> Result<LabeledPolygon> {
        let region = self.closed_region()?;
        let planes = self
            .sites()?
            .iter()
            .map(|(_, site)| Ok(HalfPlane { boundary: self.side_line(&region, site)?, inside: HPoint::origin() }))
            .collect::<Result<Vec<_>>>()?;
        let poly = halfplane_intersection_of(&planes)?;
        let mut verts: Vec<HPoint> = poly.vertices().to_vec();
        let polar = |p: &HPoint| {
            let a = p.y().atan2(p.x());
            if a < -1e-12 {
                a + 2.0 * PI
            } else {
                a.max(0.0)
            }
        };
        let start = (0..verts.len()).min_by(|&i, &j| polar(&verts[i]).total_cmp(&polar(&verts[j]))).unwrap();
        verts.rotate_left(start);
        let polygon = HPolygon::new(verts)?;
        let mut labels = Vec::new();
        for p in polygon.vertices() {
            let w = self.label_point(*p).ok_or_else(|| {
                Error::UnmatchedVertex(format!("({:.6}, {:.6}) is not a tiling vertex", p.x(), p.y()))
            })?;
            labels.push(w.clone());
        }
        let mut angle_units = Vec::new();
        for (a, w) in polygon.angles().into_iter().zip(&labels) {
            let u = a / (PI / 5.0);
            let r = u.round();
            if (u - r).abs() * PI / 5.0 > MATCH_TOL {
                return Err(Error::Inconsistent(format!("angle {a} at {} is not a multiple of π/5", self.format(w))));
            }
            angle_units.push(r as u32);
        }
        Ok(LabeledPolygon { polygon, labels, angle_units })
    }

    /// For each `g_i`, the side whose image under `g_i` is again a side.
    pub fn side_pairings(&self, d: &LabeledPolygon) -> Result<Vec<SidePairing>> {
        let mut out = Vec::new();
        let mut covered = vec![0u32; d.len()];
        for i in 1..=10 {
            let g = self.action.g(i)?;
            let mut found = Vec::new();
            for s in 0..d.len() {
                let (a, b) = d.side(s);
                let (ga, gb) = (self.action.gamma(&g, a)?, self.action.gamma(&g, b)?);
                if let Some(t) = d.side_between(&ga, &gb) {
                    found.push(SidePairing {
                        generator: i,
                        source: s,
                        target: t,
                        source_ends: (a.clone(), b.clone()),
                        target_ends: (ga, gb),
                    });
                }
            }
            if found.len() != 1 {
                return Err(Error::UnpairedSide(format!("g{i} maps {} sides onto sides", found.len())));
            }
            let p = found.pop().unwrap();
            covered[p.source] += 1;
            covered[p.target] += 1;
            out.push(p);
        }
        if let Some(s) = covered.iter().position(|&c| c != 1) {
            let (a, b) = d.side(s);
            return Err(Error::UnpairedSide(format!(
                "side s({}, {}) is covered {} times",
                self.format(a),
                self.format(b),
                covered[s]
            )));
        }
        Ok(out)
    }

    fn element_of(&self, i: usize, inverse: bool) -> Result<PureElement> {
        let g = self.action.g(i)?;
        if inverse {
            self.action.inverse(&g)
        } else {
            Ok(g)
        }
    }

    /// Cycles of vertices partitioning the polygon's corners.
    pub fn vertex_cycles(
        &self,
        d: &LabeledPolygon,
        pairings: &[SidePairing],
        start: StartSide,
    ) -> Result<Vec<VertexCycle>> {
        let n = d.len();
        // side -> (generator, inverse, image side)
        let mut across: BTreeMap<usize, (usize, bool, usize)> = BTreeMap::new();
        for p in pairings {
            across.insert(p.source, (p.generator, false, p.target));
            across.insert(p.target, (p.generator, true, p.source));
        }
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for z1 in 0..n {
            if seen[z1] {
                continue;
            }
            let s1 = match start {
                StartSide::Previous => (z1 + n - 1) % n,
                StartSide::Next => z1,
            };
            let (mut z, mut s) = (z1, s1);
            let mut cycle = VertexCycle { generators: vec![], vertices: vec![], labels: vec![], angle_units: 0, nu: 1 };
            loop {
                if cycle.vertices.len() > n {
                    return Err(Error::CycleCondition(format!(
                        "traversal from {} does not close",
                        self.format(&d.labels[z1])
                    )));
                }
                let &(i, inv, image) =
                    across.get(&s).ok_or_else(|| Error::UnpairedSide(format!("side {s} has no pairing")))?;
                cycle.vertices.push(z);
                cycle.labels.push(d.labels[z].clone());
                cycle.angle_units += d.angle_units[z];
                cycle.generators.push((i, inv));
                seen[z] = true;
                let g = self.element_of(i, inv)?;
                let zw = self.action.gamma(&g, &d.labels[z])?;
                let z2 = d
                    .index_of(&zw)
                    .ok_or_else(|| Error::CycleCondition(format!("{} leaves the polygon", self.format(&zw))))?;
                let next = if image == z2 {
                    (z2 + n - 1) % n
                } else if (image + 1) % n == z2 {
                    z2
                } else {
                    return Err(Error::CycleCondition(format!("side image does not contain {}", self.format(&zw))));
                };
                z = z2;
                s = next;
                if z == z1 && s == s1 {
                    break;
                }
            }
            if cycle.angle_units == 0 || 10 % cycle.angle_units != 0 {
                return Err(Error::CycleCondition(format!("angle sum {}π/5 does not divide 2π", cycle.angle_units)));
            }
            cycle.nu = 10 / cycle.angle_units;
            let mut prod = self.action.identity();
            for &(i, inv) in &cycle.generators {
                prod = self.action.product(&self.element_of(i, inv)?, &prod)?;
            }
            let prod = (0..cycle.nu).try_fold(self.action.identity(), |acc, _| self.action.product(&prod, &acc))?;
            if !prod.is_identity() {
                return Err(Error::CycleCondition("cycle transformation is not the identity".into()));
            }
            cycles.push(cycle);
        }
        Ok(cycles)
    }

    /// Edge word of `D̃`: pairing `k` on its source side read counterclockwise
    /// with exponent `+1`, and on its target with the matching direction.
    pub fn edge_word(&self, d: &LabeledPolygon, pairings: &[SidePairing]) -> SurfaceWord {
        let mut word = vec![(0usize, 0i8); d.len()];
        for p in pairings {
            word[p.source] = (p.generator, 1);
            let (a, _) = d.side(p.target);
            let exp = if *a == p.target_ends.0 { 1 } else { -1 };
            word[p.target] = (p.generator, exp);
        }
        SurfaceWord(word)
    }

    /// `g·D̃` for every named `g` shares a side with `D̃`, and no two of these
    /// translates or `D̃` overlap.
    pub fn neighbour_translates(&self, d: &LabeledPolygon) -> Result<TranslateReport> {
        let named = self.action.named_elements()?;
        let mut polys: Vec<(String, HPolygon)> = vec![("e".into(), d.polygon.clone())];
        let mut sharing = 0;
        for n in &named {
            let images = d.labels.iter().map(|w| self.action.gamma(&n.element, w)).collect::<Result<Vec<_>>>()?;
            let k = images.len();
            if (0..k).any(|i| d.side_between(&images[i], &images[(i + 1) % k]).is_some()) {
                sharing += 1;
            }
            let pts = images.iter().map(|w| self.embedding.place(w)).collect::<Result<Vec<_>>>()?;
            polys.push((n.name(), HPolygon::new(pts)?));
        }
        let mut overlapping = Vec::new();
        for i in 0..polys.len() {
            for j in 0..i {
                if !interiors_disjoint(&polys[i].1, &polys[j].1, MATCH_TOL) {
                    overlapping.push((polys[j].0.clone(), polys[i].0.clone()));
                }
            }
        }
        Ok(TranslateReport { elements: named.len(), sharing_a_side: sharing, overlapping_pairs: overlapping })
    }

    /// Tiling vertices strictly inside `D̃`.
    pub fn interior_tiling_vertices(&self, d: &LabeledPolygon) -> Vec<Word> {
        self.ball_positions
            .iter()
            .filter(|(_, p)| d.polygon.contains_strictly(*p, MATCH_TOL))
            .map(|(w, _)| w.clone())
            .collect()
    }

    /// Every vertex of `D̃` is no farther from `e` than from any orbit point,
    /// in the word metric.
    pub fn graph_membership(&self, d: &LabeledPolygon) -> Result<bool> {
        let sites = self.sites()?;
        for w in &d.labels {
            for (_, a) in &sites {
                if self.sys().distance(w, a)? < w.len() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Largest excess `d(f(e), x) - d(f(a_i), x)` in the hyperbolic metric
    /// over vertices `x` of `D̃`.
    pub fn hyperbolic_membership_excess(&self, d: &LabeledPolygon) -> Result<f64> {
        let pts = self.sites()?.iter().map(|(_, w)| self.embedding.place(w)).collect::<Result<Vec<_>>>()?;
        let mut worst = f64::NEG_INFINITY;
        for x in d.polygon.vertices() {
            let de = crate::geometry::hyp_distance(HPoint::origin(), *x);
            for p in &pts {
                worst = worst.max(de - crate::geometry::hyp_distance(*p, *x));
            }
        }
        Ok(worst)
    }
}

/// The presentation on `g1 .. g10` given by the cycle relators.
pub fn poincare_presentation(cycles: &[VertexCycle]) -> Result<Presentation> {
    for c in cycles {
        if c.nu as u64 * c.angle_units as u64 != 10 {
            return Err(Error::CycleCondition(format!("ν·Σα = {}π/5", c.nu * c.angle_units)));
        }
    }
    Presentation::new(g_alphabet(), cycles.iter().map(VertexCycle::relator).collect())
}
