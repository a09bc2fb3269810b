//! Hyperbolic plane in the Poincaré disk model.
//!
//! Isometries are `z ↦ (a z + b) / (b̄ z + ā)`, optionally preceded by complex
//! conjugation. Geodesics are stored by their two ideal endpoints; half-plane
//! intersections are computed in the Klein model, where geodesics are chords.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;

use crate::complex::CayleyBall;
use crate::error::{Error, Result};
use crate::words::{GenId, Word};

pub const POINT_TOL: f64 = 1e-9;
pub const EMBED_TOL: f64 = 1e-6;

/// Side length of the regular right-free square with all angles `2π/5`:
/// `cosh R = cot²(π/5)`.
pub fn edge_length_45() -> f64 {
    let c = 1.0 / (PI / 5.0).tan();
    (c * c).acosh()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HPoint(Complex64);

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self> {
        Self::from_complex(Complex64::new(x, y))
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        if z.norm_sqr() < 1.0 && z.re.is_finite() && z.im.is_finite() {
            Ok(HPoint(z))
        } else {
            Err(Error::Degenerate(format!("({}, {}) is not inside the unit disk", z.re, z.im)))
        }
    }

    pub fn origin() -> Self {
        HPoint(Complex64::new(0.0, 0.0))
    }

    /// Point at hyperbolic distance `d` from the origin in direction `theta`.
    pub fn polar(d: f64, theta: f64) -> Self {
        HPoint(Complex64::from_polar((d / 2.0).tanh(), theta))
    }

    pub fn z(self) -> Complex64 {
        self.0
    }

    pub fn x(self) -> f64 {
        self.0.re
    }

    pub fn y(self) -> f64 {
        self.0.im
    }

    pub fn to_klein(self) -> Complex64 {
        self.0 * (2.0 / (1.0 + self.0.norm_sqr()))
    }

    pub fn from_klein(k: Complex64) -> Result<Self> {
        let n = k.norm_sqr();
        if n >= 1.0 {
            return Err(Error::Degenerate("Klein point outside the disk".into()));
        }
        Ok(HPoint(k / (1.0 + (1.0 - n).sqrt())))
    }

    pub fn close_to(self, other: HPoint, tol: f64) -> bool {
        (self.0 - other.0).norm() < tol
    }
}

pub fn hyp_distance(a: HPoint, b: HPoint) -> f64 {
    let num = (a.0 - b.0).norm();
    let den = (Complex64::new(1.0, 0.0) - a.0.conj() * b.0).norm();
    2.0 * (num / den).min(1.0 - f64::EPSILON).atanh()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    a: Complex64,
    b: Complex64,
    reversing: bool,
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry { a: Complex64::new(1.0, 0.0), b: Complex64::new(0.0, 0.0), reversing: false }
    }

    /// The hyperbolic translation along the diameter through `m` taking 0 to `m`.
    pub fn translation(m: HPoint) -> Self {
        let a = 1.0 / (1.0 - m.0.norm_sqr()).sqrt();
        Isometry { a: Complex64::new(a, 0.0), b: m.0 * a, reversing: false }
    }

    pub fn rotation(theta: f64) -> Self {
        Isometry { a: Complex64::from_polar(1.0, theta / 2.0), b: Complex64::new(0.0, 0.0), reversing: false }
    }

    /// Reflection in the diameter at angle `theta`.
    pub fn diameter_reflection(theta: f64) -> Self {
        Isometry { a: Complex64::from_polar(1.0, theta), b: Complex64::new(0.0, 0.0), reversing: true }
    }

    /// Reflection in the geodesic through `p` and `q`.
    pub fn reflection(p: HPoint, q: HPoint) -> Result<Self> {
        let t = Isometry::translation(p);
        let q0 = t.inverse().apply_z(q.0);
        if q0.norm() < POINT_TOL {
            return Err(Error::Degenerate("reflection needs two distinct points".into()));
        }
        Ok(t.compose(&Isometry::diameter_reflection(q0.arg())).compose(&t.inverse()))
    }

    /// Rotation by `π` about `m`.
    pub fn half_turn(m: HPoint) -> Self {
        let t = Isometry::translation(m);
        t.compose(&Isometry::rotation(PI)).compose(&t.inverse())
    }

    pub fn is_reversing(&self) -> bool {
        self.reversing
    }

    fn apply_z(&self, z: Complex64) -> Complex64 {
        let z = if self.reversing { z.conj() } else { z };
        (self.a * z + self.b) / (self.b.conj() * z + self.a.conj())
    }

    pub fn apply(&self, p: HPoint) -> HPoint {
        HPoint(self.apply_z(p.0))
    }

    /// Extension to the boundary circle.
    pub fn apply_ideal(&self, z: Complex64) -> Complex64 {
        let w = self.apply_z(z);
        w / w.norm()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Isometry {
        let (a2, b2) = if self.reversing { (other.a.conj(), other.b.conj()) } else { (other.a, other.b) };
        let a = self.a * a2 + self.b * b2.conj();
        let b = self.a * b2 + self.b * a2.conj();
        Isometry { a, b, reversing: self.reversing != other.reversing }
    }

    pub fn inverse(&self) -> Isometry {
        if self.reversing {
            Isometry { a: self.a, b: -self.b.conj(), reversing: true }
        } else {
            Isometry { a: self.a.conj(), b: -self.b, reversing: false }
        }
    }

    /// True if `self` moves none of a few test points by more than `tol`.
    pub fn is_identity(&self, tol: f64) -> bool {
        [Complex64::new(0.0, 0.0), Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.5)]
            .iter()
            .all(|&z| (self.apply_z(z) - z).norm() < tol)
    }
}

pub fn midpoint(p: HPoint, q: HPoint) -> HPoint {
    let t = Isometry::translation(p);
    let q0 = t.inverse().apply_z(q.0);
    let d = hyp_distance(HPoint::origin(), HPoint(q0));
    if q0.norm() < POINT_TOL {
        return p;
    }
    t.apply(HPoint(q0 / q0.norm() * (d / 4.0).tanh()))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GeodesicShape {
    Diameter { direction: Complex64 },
    Arc { center: Complex64, radius: f64 },
}

/// A complete geodesic, given by its ideal endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic {
    ends: (Complex64, Complex64),
}

impl Geodesic {
    pub fn from_ends(u: Complex64, v: Complex64) -> Result<Self> {
        if (u - v).norm() < POINT_TOL {
            return Err(Error::Degenerate("coincident ideal endpoints".into()));
        }
        Ok(Geodesic { ends: (u / u.norm(), v / v.norm()) })
    }

    pub fn through(p: HPoint, q: HPoint) -> Result<Self> {
        let t = Isometry::translation(p);
        let q0 = t.inverse().apply_z(q.0);
        if q0.norm() < POINT_TOL {
            return Err(Error::Degenerate("geodesic through coincident points".into()));
        }
        let u = q0 / q0.norm();
        Geodesic::from_ends(t.apply_ideal(-u), t.apply_ideal(u))
    }

    pub fn ends(&self) -> (Complex64, Complex64) {
        self.ends
    }

    pub fn shape(&self) -> GeodesicShape {
        let (u, v) = self.ends;
        let s = u + v;
        if s.norm() < 1e-12 {
            return GeodesicShape::Diameter { direction: u };
        }
        let cos = (u * v.conj()).re;
        let center = s / (1.0 + cos);
        GeodesicShape::Arc { center, radius: (center.norm_sqr() - 1.0).max(0.0).sqrt() }
    }

    /// Euclidean distance from `p` to the curve, as a membership test.
    pub fn euclidean_gap(&self, p: HPoint) -> f64 {
        match self.shape() {
            GeodesicShape::Diameter { direction } => (direction.conj() * p.0).im.abs(),
            GeodesicShape::Arc { center, radius } => ((p.0 - center).norm() - radius).abs(),
        }
    }

    pub fn contains(&self, p: HPoint, tol: f64) -> bool {
        self.euclidean_gap(p) < tol
    }

    /// Points on the geodesic at hyperbolic distances `ts` from its point
    /// closest to the origin.
    pub fn sample(&self, ts: &[f64]) -> Vec<HPoint> {
        let (u, v) = self.ends;
        let k0 = (u + v) / 2.0;
        let foot = HPoint::from_klein(k0).unwrap_or(HPoint::origin());
        let t = Isometry::translation(foot);
        let dir = t.inverse().apply_ideal(v);
        ts.iter().map(|&s| t.apply(HPoint(dir * (s / 2.0).tanh()))).collect()
    }
}

pub fn perpendicular_bisector(a: HPoint, b: HPoint) -> Result<Geodesic> {
    if a.close_to(b, POINT_TOL) {
        return Err(Error::Degenerate("bisector of coincident points".into()));
    }
    let t = Isometry::translation(a);
    let b0 = t.inverse().apply_z(b.0);
    let u = b0 / b0.norm();
    let m = HPoint(u * (hyp_distance(HPoint::origin(), HPoint(b0)) / 4.0).tanh());
    let tm = Isometry::translation(m);
    let perp = u * Complex64::new(0.0, 1.0);
    let frame = t.compose(&tm);
    Geodesic::from_ends(frame.apply_ideal(-perp), frame.apply_ideal(perp))
}

/// The closed half-plane bounded by `boundary` that contains `inside`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HalfPlane {
    pub boundary: Geodesic,
    pub inside: HPoint,
}

impl HalfPlane {
    /// Klein-model inequality `n · k <= c` describing the half-plane.
    fn klein(&self) -> (Complex64, f64) {
        let (u, v) = self.boundary.ends;
        let d = v - u;
        let mut n = Complex64::new(-d.im, d.re);
        let mut c = n.re * u.re + n.im * u.im;
        let k = self.inside.to_klein();
        if n.re * k.re + n.im * k.im > c {
            n = -n;
            c = -c;
        }
        (n, c)
    }

    /// Signed Klein-model slack: positive inside, negative outside.
    pub fn slack(&self, p: HPoint) -> f64 {
        let (n, c) = self.klein();
        let k = p.to_klein();
        (c - (n.re * k.re + n.im * k.im)) / n.norm()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HPolygon {
    vertices: Vec<HPoint>,
}

impl HPolygon {
    pub fn new(vertices: Vec<HPoint>) -> Result<Self> {
        if vertices.len() < 3 {
            return Err(Error::Degenerate("a polygon needs three vertices".into()));
        }
        Ok(HPolygon { vertices })
    }

    pub fn vertices(&self) -> &[HPoint] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn sides(&self) -> Vec<(HPoint, HPoint)> {
        let n = self.len();
        (0..n).map(|i| (self.vertices[i], self.vertices[(i + 1) % n])).collect()
    }

    /// Interior angle at each vertex of a counterclockwise polygon.
    pub fn angles(&self) -> Vec<f64> {
        let n = self.len();
        (0..n).map(|i| angle_at(self.vertices[i], self.vertices[(i + n - 1) % n], self.vertices[(i + 1) % n])).collect()
    }

    pub fn side_lengths(&self) -> Vec<f64> {
        self.sides().into_iter().map(|(a, b)| hyp_distance(a, b)).collect()
    }

    /// Klein-model signed distance of `p` from the boundary: positive inside.
    pub fn depth(&self, p: HPoint) -> f64 {
        let k = p.to_klein();
        let ks: Vec<Complex64> = self.vertices.iter().map(|v| v.to_klein()).collect();
        let n = ks.len();
        (0..n)
            .map(|i| {
                let (a, b) = (ks[i], ks[(i + 1) % n]);
                let d = b - a;
                let cross = d.re * (k - a).im - d.im * (k - a).re;
                cross / d.norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    pub fn contains_strictly(&self, p: HPoint, tol: f64) -> bool {
        self.depth(p) > tol
    }

    pub fn is_convex(&self) -> bool {
        self.angles().iter().all(|&a| a > 0.0 && a < PI)
    }
}

/// Interior angle at `v` between the geodesics towards `prev` and `next`.
pub fn angle_at(v: HPoint, prev: HPoint, next: HPoint) -> f64 {
    let t = Isometry::translation(v).inverse();
    let a = t.apply(prev).0;
    let b = t.apply(next).0;
    let mut ang = (a / b).arg();
    if ang < 0.0 {
        ang += 2.0 * PI;
    }
    ang
}

/// Intersection of half-planes, as a counterclockwise polygon.
pub fn halfplane_intersection_of(planes: &[HalfPlane]) -> Result<HPolygon> {
    let mut poly: Vec<Complex64> = vec![
        Complex64::new(-2.0, -2.0),
        Complex64::new(2.0, -2.0),
        Complex64::new(2.0, 2.0),
        Complex64::new(-2.0, 2.0),
    ];
    for hp in planes {
        let (n, c) = hp.klein();
        let f = |k: Complex64| c - (n.re * k.re + n.im * k.im);
        let mut next = Vec::new();
        for i in 0..poly.len() {
            let (p, q) = (poly[i], poly[(i + 1) % poly.len()]);
            let (fp, fq) = (f(p), f(q));
            if fp >= 0.0 {
                next.push(p);
            }
            if (fp >= 0.0) != (fq >= 0.0) {
                next.push(p + (q - p) * (fp / (fp - fq)));
            }
        }
        poly = next;
        if poly.is_empty() {
            return Err(Error::Degenerate("empty intersection".into()));
        }
    }
    let mut cleaned: Vec<Complex64> = Vec::new();
    for k in poly {
        if cleaned.last().is_none_or(|l| (*l - k).norm() > 1e-12) {
            cleaned.push(k);
        }
    }
    while cleaned.len() > 1 && (cleaned[0] - cleaned[cleaned.len() - 1]).norm() <= 1e-12 {
        cleaned.pop();
    }
    loop {
        let n = cleaned.len();
        let straight = (0..n).find(|&i| {
            let (a, b, c) = (cleaned[(i + n - 1) % n], cleaned[i], cleaned[(i + 1) % n]);
            let cross = (b - a).re * (c - b).im - (b - a).im * (c - b).re;
            cross.abs() < 1e-12 * (b - a).norm().max(1e-300) * (c - b).norm().max(1e-300) * 1e3
        });
        match straight {
            Some(i) if n > 3 => {
                cleaned.remove(i);
            }
            _ => break,
        }
    }
    if cleaned.iter().any(|k| k.norm() >= 1.0 - 1e-12) {
        return Err(Error::Unbounded);
    }
    HPolygon::new(cleaned.into_iter().map(HPoint::from_klein).collect::<Result<Vec<_>>>()?)
}

/// Points at least as close to `center` as to every site.
pub fn halfplane_intersection(center: HPoint, sites: &[HPoint]) -> Result<HPolygon> {
    let planes = sites
        .iter()
        .map(|&s| Ok(HalfPlane { boundary: perpendicular_bisector(center, s)?, inside: center }))
        .collect::<Result<Vec<_>>>()?;
    halfplane_intersection_of(&planes)
}

/// The Cayley ball of `J_4'` drawn as the `{4,5}` tiling.
#[derive(Clone, Debug)]
pub struct Embedding {
    maps: BTreeMap<GenId, Isometry>,
    positions: Vec<HPoint>,
}

impl Embedding {
    /// Places `e` at the origin, its neighbours counterclockwise in link order
    /// starting with the least generator on the positive real axis, and every
    /// other vertex by composing the generator isometries along its word.
    pub fn new(ball: &CayleyBall, relators: &[Word]) -> Result<Self> {
        let r = edge_length_45();
        let e = ball.index_of(&Word::empty()).ok_or_else(|| Error::Inconsistent("identity missing".into()))?;
        let link = ball.vertex_link(e)?;
        let k = link.len() as f64;
        let place: BTreeMap<usize, HPoint> =
            link.iter().enumerate().map(|(i, &v)| (v, HPoint::polar(r, 2.0 * PI * i as f64 / k))).collect();
        let gen_of = |v: usize| ball.vertex(v).0[0].gen;

        // Opposite corners of the faces at e, which pin down each generator map.
        let mut corners: BTreeMap<usize, HPoint> = BTreeMap::new();
        for f in ball.faces_at(e) {
            let (a, b) = f.neighbours_of(e).unwrap();
            let opposite = f.vertices.iter().copied().find(|&x| x != e && x != a && x != b).unwrap();
            let refl = Isometry::reflection(place[&a], place[&b])?;
            corners.insert(opposite, refl.apply(HPoint::origin()));
        }

        let mut maps = BTreeMap::new();
        for &s in &link {
            let fs = place[&s];
            let bis = perpendicular_bisector(HPoint::origin(), fs)?.sample(&[0.0, 1.0]);
            let candidates =
                [Isometry::reflection(bis[0], bis[1])?, Isometry::half_turn(midpoint(HPoint::origin(), fs))];
            let fits = |phi: &Isometry| -> bool {
                let mut constrained = false;
                for (&u, &pu) in &place {
                    let su = ball.neighbours(s).iter().find(|&&(_, g)| g == gen_of(u)).map(|&(j, _)| j);
                    if let Some(c) = su.and_then(|j| corners.get(&j)) {
                        constrained = true;
                        if !phi.apply(pu).close_to(*c, POINT_TOL) {
                            return false;
                        }
                    }
                }
                constrained && phi.apply(HPoint::origin()).close_to(fs, POINT_TOL)
            };
            let good: Vec<&Isometry> = candidates.iter().filter(|c| fits(c)).collect();
            if good.len() != 1 {
                return Err(Error::Inconsistent(format!("cannot place the neighbourhood of {}", ball.label(s))));
            }
            maps.insert(gen_of(s), *good[0]);
        }

        for rel in relators {
            let m = rel.0.iter().fold(Isometry::identity(), |acc, l| acc.compose(&maps[&l.gen]));
            if !m.is_identity(POINT_TOL) {
                return Err(Error::Inconsistent("a relator does not act trivially".into()));
            }
        }

        let mut emb = Embedding { maps, positions: Vec::new() };
        emb.positions = ball.vertices().iter().map(|w| emb.place(w)).collect::<Result<Vec<_>>>()?;
        for edge in ball.edges() {
            let d = hyp_distance(emb.positions[edge.u], emb.positions[edge.v]);
            if (d - r).abs() > EMBED_TOL {
                return Err(Error::Inconsistent(format!(
                    "edge {}-{} has length {d}",
                    ball.label(edge.u),
                    ball.label(edge.v)
                )));
            }
        }
        for f in ball.faces() {
            let pts: Vec<HPoint> = f.vertices.iter().map(|&v| emb.positions[v]).collect();
            let poly = HPolygon::new(pts)?;
            let ok_sides = poly.side_lengths().iter().all(|d| (d - r).abs() < EMBED_TOL);
            let ok_angles = poly.angles().iter().all(|a| {
                let a = a.min(2.0 * PI - a);
                (a - 2.0 * PI / 5.0).abs() < EMBED_TOL
            });
            if !ok_sides || !ok_angles {
                let names: Vec<String> = f.vertices.iter().map(|&v| ball.label(v)).collect();
                return Err(Error::Inconsistent(format!("face [{}] is not regular", names.join(", "))));
            }
        }
        Ok(emb)
    }

    /// Position of the vertex named by any word over the generators.
    pub fn place(&self, w: &Word) -> Result<HPoint> {
        let mut m = Isometry::identity();
        for l in &w.0 {
            let phi = self.maps.get(&l.gen).ok_or_else(|| Error::UnknownGenerator(format!("#{}", l.gen)))?;
            m = m.compose(phi);
        }
        Ok(m.apply(HPoint::origin()))
    }

    /// The isometry realising left multiplication by `w`.
    pub fn isometry(&self, w: &Word) -> Result<Isometry> {
        let mut m = Isometry::identity();
        for l in &w.0 {
            m = m.compose(self.maps.get(&l.gen).ok_or_else(|| Error::UnknownGenerator(format!("#{}", l.gen)))?);
        }
        Ok(m)
    }

    pub fn generator_map(&self, g: GenId) -> Option<&Isometry> {
        self.maps.get(&g)
    }

    /// Positions aligned with the ball's vertex list.
    pub fn positions(&self) -> &[HPoint] {
        &self.positions
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Layer {
    Points { points: Vec<(HPoint, Option<String>)>, color: String },
    Segments { segments: Vec<(HPoint, HPoint)>, color: String },
    Polygon { vertices: Vec<HPoint>, fill: String, side_colors: Vec<String> },
}

fn screen(z: Complex64) -> (f64, f64) {
    (500.0 + 500.0 * z.re, 500.0 - 500.0 * z.im)
}

fn arc_to(out: &mut String, p: HPoint, q: HPoint) {
    let (qx, qy) = screen(q.0);
    let shape = Geodesic::through(p, q).map(|g| g.shape());
    match shape {
        Ok(GeodesicShape::Arc { center, radius }) if radius < 1e6 => {
            let cross = (p.0 - center).re * (q.0 - center).im - (p.0 - center).im * (q.0 - center).re;
            let sweep = if cross > 0.0 { 0 } else { 1 };
            let _ = write!(out, " A {:.3} {:.3} 0 0 {} {:.3} {:.3}", radius * 500.0, radius * 500.0, sweep, qx, qy);
        }
        _ => {
            let _ = write!(out, " L {qx:.3} {qy:.3}");
        }
    }
}

/// Renders layers over the unit circle in a 1000×1000 view box.
pub fn render_svg(layers: &[Layer]) -> String {
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    out.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n");
    out.push_str("<circle cx=\"500\" cy=\"500\" r=\"500\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n");
    for layer in layers {
        match layer {
            Layer::Polygon { vertices, fill, side_colors } => {
                let n = vertices.len();
                if n == 0 {
                    continue;
                }
                let (x0, y0) = screen(vertices[0].0);
                let mut d = format!("M {x0:.3} {y0:.3}");
                for i in 0..n {
                    arc_to(&mut d, vertices[i], vertices[(i + 1) % n]);
                }
                let _ = writeln!(out, "<path d=\"{d} Z\" fill=\"{fill}\" stroke=\"none\"/>");
                for i in 0..n {
                    let (px, py) = screen(vertices[i].0);
                    let mut d = format!("M {px:.3} {py:.3}");
                    arc_to(&mut d, vertices[i], vertices[(i + 1) % n]);
                    let color = side_colors.get(i).map(String::as_str).unwrap_or("black");
                    let _ = writeln!(out, "<path d=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"3\"/>");
                }
            }
            Layer::Segments { segments, color } => {
                for &(p, q) in segments {
                    let (px, py) = screen(p.0);
                    let mut d = format!("M {px:.3} {py:.3}");
                    arc_to(&mut d, p, q);
                    let _ = writeln!(out, "<path d=\"{d}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1\"/>");
                }
            }
            Layer::Points { points, color } => {
                for (p, label) in points {
                    let (px, py) = screen(p.0);
                    let _ = writeln!(out, "<circle cx=\"{px:.3}\" cy=\"{py:.3}\" r=\"3\" fill=\"{color}\"/>");
                    if let Some(l) = label {
                        let text = l.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;");
                        let _ = writeln!(
                            out,
                            "<text x=\"{:.3}\" y=\"{:.3}\" font-size=\"10\" font-family=\"sans-serif\">{text}</text>",
                            px + 4.0,
                            py - 4.0
                        );
                    }
                }
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
