//! Run reports for the command-line tool: one builder per subcommand, plus
//! JSON and plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;
use serde_json::{json, Value};

use crate::action::{PureAction, A_WORDS, G_INVERSE_TABLE, G_TABLE};
use crate::cactus::CactusGroup;
use crate::complex::CayleyBall;
use crate::dirichlet::{classify_identified_surface, poincare_presentation, StartSide};
use crate::error::Result;
use crate::geometry::{edge_length_45, render_svg, Embedding, HPoint, Layer};
use crate::grouptheory::{
    abelianization, bcl_isomorphism, hom_well_defined, one_relator_presentation, piece_ratio, pj4_presentation,
    surface_isomorphism, surjectivity_identities, tietze_with_steps, verify_mutual_inverse, GroupHom, HomCheck,
    Outcome, SearchBudget, Strategy, Verdict, ELIMINATIONS,
};
use crate::rewrite::RewriteSystem;
use crate::verify::{Verifier, VerifyConfig};
use crate::words::{Presentation, Word};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }

    fn from_checks(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(title: &str, columns: &[&str]) -> Self {
        Table { title: title.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self, out: &mut String) {
        let mut widths: Vec<usize> = self.columns.iter().map(|c| c.chars().count()).collect();
        for r in &self.rows {
            for (i, c) in r.iter().enumerate() {
                widths[i] = widths[i].max(c.chars().count());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> =
                cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
            padded.join("  ").trim_end().to_string()
        };
        if !self.title.is_empty() {
            let _ = writeln!(out, "{}", self.title);
        }
        let _ = writeln!(out, "{}", line(&self.columns));
        let rule: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
        let _ = writeln!(out, "{}", rule.join("  "));
        for r in &self.rows {
            let _ = writeln!(out, "{}", line(r));
        }
    }
}

/// The outcome of one subcommand. Wall time is kept out of the JSON so that
/// repeated runs are byte-identical.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    pub status: Status,
    pub version: String,
    #[serde(skip)]
    pub tables: Vec<Table>,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.into(),
            parameters: BTreeMap::new(),
            results: Value::Null,
            status: Status::Pass,
            version: VERSION.into(),
            tables: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    /// A report carrying nothing.
    pub fn empty() -> Self {
        RunReport { command: String::new(), version: String::new(), ..RunReport::new("") }
    }

    pub fn is_empty(&self) -> bool {
        self.command.is_empty() && self.results.is_null() && self.tables.is_empty()
    }

    fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.parameters.insert(key.into(), v.into());
        self
    }

    fn settings(self, cfg: &VerifyConfig) -> Self {
        self.param("budget_slack", cfg.budget.slack).param("tolerance", cfg.tolerance)
    }
}

pub fn emit_report(report: &RunReport, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            if report.is_empty() {
                return b"{}\n".to_vec();
            }
            let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => {
            let mut out = String::new();
            if report.is_empty() {
                return Vec::new();
            }
            let _ = writeln!(out, "{} ({})", report.command, report.status.label());
            for (k, v) in &report.parameters {
                let _ = writeln!(out, "  {k} = {v}");
            }
            for t in &report.tables {
                out.push('\n');
                t.render(&mut out);
            }
            out.into_bytes()
        }
    }
}

fn fmt(w: &Word) -> String {
    CactusGroup::j4().format(w)
}

fn a_name(k: usize, parity: u8) -> String {
    if parity == 1 {
        format!("a{k} s14")
    } else {
        format!("a{k}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupChoice {
    J4,
    J4Prime,
}

pub fn sphere(group: GroupChoice, length: usize, cfg: &VerifyConfig) -> Result<RunReport> {
    let (cactus, name) = match group {
        GroupChoice::J4 => (CactusGroup::j4(), "j4"),
        GroupChoice::J4Prime => (CactusGroup::j4_prime(), "j4p"),
    };
    let sys = RewriteSystem::new(cactus, cfg.budget);
    let spheres = sys.spheres(length)?;
    let counts: Vec<usize> = spheres.iter().map(|s| s.len()).collect();
    let elements: Vec<String> = spheres[length].iter().map(fmt).collect();
    let mut counts_table = Table::new("sphere sizes", &["length", "count"]);
    for (i, c) in counts.iter().enumerate() {
        counts_table.row(vec![i.to_string(), c.to_string()]);
    }
    let mut elems = Table::new(&format!("elements of length {length}"), &["#", "word"]);
    for (i, e) in elements.iter().enumerate() {
        elems.row(vec![(i + 1).to_string(), e.clone()]);
    }
    let mut r = RunReport::new("sphere").param("group", name).param("length", length).settings(cfg);
    r.results = json!({ "count": counts[length], "counts": counts, "elements": elements });
    r.tables = vec![counts_table, elems];
    Ok(r)
}

pub fn pure(cfg: &VerifyConfig) -> Result<RunReport> {
    let act = PureAction::new(RewriteSystem::new(CactusGroup::j4_prime(), cfg.budget))?;
    let j4 = CactusGroup::j4();
    let found = act.pure_elements_within(4)?;
    let mut table = Table::new("pure elements at distance 4", &["name", "word", "inverse-partner", "π"]);
    let mut rows = Vec::new();
    for n in act.named_elements()? {
        let (k, p) = if n.inverse { G_INVERSE_TABLE[n.index - 1] } else { G_TABLE[n.index - 1] };
        let partner = if n.inverse { format!("g{}", n.index) } else { format!("g{}^-1", n.index) };
        let pi = j4.project(&j4.parse(A_WORDS[k - 1])?).cycle_notation();
        let word = fmt(&n.element.word());
        table.row(vec![format!("{} = {}", n.name(), a_name(k, p)), word.clone(), partner.clone(), pi.clone()]);
        rows.push(json!({
            "name": n.name(),
            "a": a_name(k, p),
            "word": word,
            "inverse_partner": partner,
            "pi": pi,
            "orbit_distance": act.distance(&Word::empty(), &act.orbit_point(&n.element))?,
        }));
    }
    let mut r = RunReport::new("pure").settings(cfg);
    r.status = Status::from_checks(found.len() == 20 && rows.len() == 20);
    r.results = json!({ "count": found.len(), "elements": rows });
    r.tables = vec![table];
    Ok(r)
}

pub fn complex(radius: usize, cfg: &VerifyConfig) -> Result<RunReport> {
    let sys = RewriteSystem::new(CactusGroup::j4_prime(), cfg.budget);
    let ball = CayleyBall::build(&sys, radius)?;
    let report = ball.check_tiling(5);
    let e = ball.index_of(&Word::empty()).expect("identity is in every ball");
    let faces_at_e: Vec<Vec<String>> =
        ball.faces_at(e).iter().map(|f| f.vertices.iter().map(|&v| ball.label(v)).collect()).collect();
    let violations: Vec<String> = report.violations.iter().map(|v| v.message.clone()).collect();
    let mut table = Table::new("faces at e", &["face"]);
    for f in &faces_at_e {
        table.row(vec![format!("⟨{}⟩", f.join(", "))]);
    }
    let mut r = RunReport::new("complex").param("radius", radius).settings(cfg);
    r.status = Status::from_checks(report.ok());
    r.results = json!({
        "vertices": report.vertices,
        "edges": report.edges,
        "faces": report.faces,
        "interior_vertices": report.interior_vertices,
        "faces_at_e": faces_at_e,
        "violations": violations,
    });
    r.tables = vec![table];
    Ok(r)
}

fn point_json(p: HPoint) -> Value {
    json!([round(p.x()), round(p.y())])
}

fn round(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

pub fn dirichlet(cfg: &VerifyConfig) -> Result<RunReport> {
    let v = Verifier::new(*cfg);
    let d = v.dirichlet()?;
    let (poly, pairings) = v.polygon()?;
    let cycles = d.vertex_cycles(poly, pairings, StartSide::Previous)?;

    let mut vt = Table::new("vertices", &["#", "label", "angle", "x", "y"]);
    let mut vertices = Vec::new();
    for (i, (label, &units)) in poly.labels.iter().zip(&poly.angle_units).enumerate() {
        let p = poly.polygon.vertices()[i];
        vt.row(vec![
            i.to_string(),
            fmt(label),
            format!("{units}π/5"),
            format!("{:.6}", p.x()),
            format!("{:.6}", p.y()),
        ]);
        vertices.push(json!({ "label": fmt(label), "angle": format!("{units}π/5"), "point": point_json(p) }));
    }
    let mut pt = Table::new("side pairings", &["generator", "side", "image"]);
    let mut pairs = Vec::new();
    for s in pairings {
        let src = format!("s({}, {})", fmt(&s.source_ends.0), fmt(&s.source_ends.1));
        let dst = format!("s({}, {})", fmt(&s.target_ends.0), fmt(&s.target_ends.1));
        pt.row(vec![format!("g{}", s.generator), src.clone(), dst.clone()]);
        pairs.push(json!({ "generator": format!("g{}", s.generator), "side": src, "image": dst }));
    }
    let mut ct = Table::new("vertex cycles", &["generators", "vertices", "angle sum", "ν"]);
    let mut cyc = Vec::new();
    for c in &cycles {
        let gens = c.generator_names().join(", ");
        let labels = c.labels.iter().map(fmt).collect::<Vec<_>>().join(", ");
        let sum = if c.angle_units == 10 { "2π".to_string() } else { format!("{}π/5", c.angle_units) };
        ct.row(vec![format!("{{{gens}}}"), format!("{{{labels}}}"), sum.clone(), c.nu.to_string()]);
        cyc.push(json!({
            "generators": c.generator_names(),
            "vertices": c.labels.iter().map(fmt).collect::<Vec<_>>(),
            "angle_sum": sum,
            "nu": c.nu,
        }));
    }
    let surface = classify_identified_surface(&d.edge_word(poly, pairings))?;
    let mut r = RunReport::new("dirichlet").settings(cfg);
    r.status = Status::from_checks(poly.len() == 20 && cycles.len() == 6 && cycles.iter().all(|c| c.angle_units == 10));
    r.results = json!({
        "edge_length": round(edge_length_45()),
        "vertices": vertices,
        "pairings": pairs,
        "cycles": cyc,
        "surface": {
            "vertices": surface.vertices,
            "edges": surface.edges,
            "euler_characteristic": surface.euler_characteristic,
            "orientable": surface.orientable,
            "name": surface.name,
        },
    });
    r.tables = vec![vt, pt, ct];
    Ok(r)
}

fn presentation_json(p: &Presentation) -> Value {
    let gens: Vec<&str> = p.alphabet().generators().iter().map(|g| g.name.as_str()).collect();
    json!({ "generators": gens, "relators": p.format_relators(), "abelianization": abelianization(p).to_string() })
}

fn relator_table(title: &str, p: &Presentation) -> Table {
    let mut t = Table::new(title, &["#", "relator"]);
    for (i, r) in p.format_relators().into_iter().enumerate() {
        t.row(vec![(i + 1).to_string(), r]);
    }
    t
}

pub fn presentation(cfg: &VerifyConfig) -> Result<RunReport> {
    let v = Verifier::new(*cfg);
    let d = v.dirichlet()?;
    let (poly, pairings) = v.polygon()?;
    let pres = poincare_presentation(&d.vertex_cycles(poly, pairings, StartSide::Previous)?)?;
    let expected = pj4_presentation();
    let mut r = RunReport::new("presentation").settings(cfg);
    r.status = Status::from_checks(pres.same_relators(&expected));
    r.results = json!({ "presentation": presentation_json(&pres), "matches_expected": pres.same_relators(&expected) });
    r.tables = vec![relator_table("relators", &pres)];
    Ok(r)
}

pub fn tietze() -> Result<RunReport> {
    let before = pj4_presentation();
    let res = tietze_with_steps(&before, &ELIMINATIONS)?;
    let mut st = Table::new("eliminations", &["generator", "definition", "justified by"]);
    let mut steps = Vec::new();
    for s in &res.steps {
        st.row(vec![s.generator.clone(), s.definition.clone(), s.justification.clone()]);
        steps.push(json!({ "generator": s.generator, "definition": s.definition, "justification": s.justification }));
    }
    let expansions: BTreeMap<&str, &str> = res.expansions.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let ok = res.presentation.same_relators(&one_relator_presentation())
        && abelianization(&before) == abelianization(&res.presentation);
    let mut r = RunReport::new("tietze");
    r.status = Status::from_checks(ok);
    r.results = json!({
        "before": presentation_json(&before),
        "after": presentation_json(&res.presentation),
        "steps": steps,
        "expansions": expansions,
    });
    r.tables = vec![relator_table("before", &before), st, relator_table("after", &res.presentation)];
    Ok(r)
}

fn hom_json(h: &GroupHom) -> Value {
    let a = h.source.alphabet();
    let images: Vec<Value> = h.images.iter().map(|(&g, w)| json!([a.name(g), h.target.alphabet().format(w)])).collect();
    json!(images)
}

fn check_json(name: &str, c: &HomCheck, p: &Presentation, table: &mut Table) -> Value {
    let checks: Vec<Value> = c
        .checks
        .iter()
        .map(|w| {
            let (outcome, cert) = match &w.outcome {
                Outcome::Trivial(cert) => ("trivial".to_string(), cert.moves.iter().map(|m| m.to_string()).collect()),
                Outcome::Nontrivial(why) => (format!("nontrivial: {why}"), Vec::new()),
                Outcome::NotFound { states } => (format!("not found after {states} states"), Vec::new()),
            };
            table.row(vec![name.into(), w.label.clone(), w.method.into(), outcome.clone(), cert.len().to_string()]);
            json!({
                "label": w.label,
                "word": p.alphabet().format(&w.word),
                "method": w.method,
                "outcome": outcome,
                "certificate": cert,
            })
        })
        .collect();
    json!({ "name": name, "verdict": c.verdict.label(), "checks": checks })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoChoice {
    Bcl,
    Surface,
}

pub fn isocheck(which: IsoChoice, cfg: &VerifyConfig) -> Result<RunReport> {
    let (name, (f, g)) = match which {
        IsoChoice::Bcl => ("bcl", bcl_isomorphism()),
        IsoChoice::Surface => ("surface", surface_isomorphism()),
    };
    let s = Strategy::Auto(SearchBudget::default());
    let mut table = Table::new("checks", &["check", "word", "method", "outcome", "moves"]);
    let runs = [
        ("f well defined", hom_well_defined(&f, s)?, &f.target),
        ("g well defined", hom_well_defined(&g, s)?, &g.target),
        ("g f = id", verify_mutual_inverse(&f, &g, s)?, &f.source),
        ("f g = id", verify_mutual_inverse(&g, &f, s)?, &g.source),
    ];
    let surj = surjectivity_identities(&f, &g)?;
    let mut verdicts = Vec::new();
    let mut checks = Vec::new();
    for (label, c, p) in &runs {
        verdicts.push(c.verdict);
        checks.push(check_json(label, c, p, &mut table));
    }
    let surj_ok = surj.iter().all(|x| x.2);
    let surj_json: Vec<Value> =
        surj.iter().map(|(y, pre, ok)| json!({ "generator": y, "preimage": pre, "holds": ok })).collect();
    let mut r = RunReport::new("isocheck").param("which", name).settings(cfg);
    r.status = if verdicts.contains(&Verdict::Refuted) || !surj_ok {
        Status::Fail
    } else if verdicts.contains(&Verdict::Inconclusive) {
        Status::Inconclusive
    } else {
        Status::Pass
    };
    r.results = json!({
        "source": f.source.to_string(),
        "target": f.target.to_string(),
        "source_piece_ratio": piece_ratio(&f.source).to_string(),
        "target_piece_ratio": piece_ratio(&f.target).to_string(),
        "f": hom_json(&f),
        "g": hom_json(&g),
        "surjectivity": surj_json,
        "checks": checks,
    });
    r.tables = vec![table];
    Ok(r)
}

/// The tiling out to `radius` with the fundamental polygon on top. Returns
/// the report and the SVG text.
pub fn render(radius: usize, cfg: &VerifyConfig) -> Result<(RunReport, String)> {
    let v = Verifier::new(*cfg);
    let sys = RewriteSystem::new(CactusGroup::j4_prime(), cfg.budget);
    let ball = CayleyBall::build(&sys, radius)?;
    let emb = Embedding::new(&ball, CactusGroup::j4_prime().relators())?;
    let pos = emb.positions();
    let segments: Vec<(HPoint, HPoint)> = ball.edges().iter().map(|e| (pos[e.u], pos[e.v])).collect();
    let (poly, pairings) = v.polygon()?;
    let mut side_colors = vec![String::new(); poly.len()];
    for (k, s) in pairings.iter().enumerate() {
        let hue = k * 36;
        side_colors[s.source] = format!("hsl({hue},70%,40%)");
        side_colors[s.target] = format!("hsl({hue},70%,40%)");
    }
    let points: Vec<(HPoint, Option<String>)> =
        poly.labels.iter().zip(poly.polygon.vertices()).map(|(l, &p)| (p, Some(fmt(l)))).collect();
    let layers = [
        Layer::Segments { segments, color: "#888888".into() },
        Layer::Polygon { vertices: poly.polygon.vertices().to_vec(), fill: "#ffe9a8".into(), side_colors },
        Layer::Points { points, color: "#222222".into() },
    ];
    let svg = render_svg(&layers);
    let mut r = RunReport::new("render").param("radius", radius).settings(cfg);
    r.results =
        json!({ "vertices": ball.vertices().len(), "edges": ball.edges().len(), "polygon_vertices": poly.len() });
    Ok((r, svg))
}

pub fn verify_all(cfg: &VerifyConfig) -> RunReport {
    let v = Verifier::new(*cfg);
    let criteria = v.run_all();
    let mut table = Table::new("acceptance criteria", &["#", "criterion", "result"]);
    let mut rows = Vec::new();
    for c in &criteria {
        let res = if c.passed { "PASS" } else { "FAIL" };
        table.row(vec![c.id.to_string(), c.title.into(), res.into()]);
        rows.push(json!({ "id": c.id, "title": c.title, "passed": c.passed, "details": c.details }));
    }
    let mut failures = Table::new("failed checks", &["#", "detail"]);
    for c in criteria.iter().filter(|c| !c.passed) {
        for d in c.details.iter().filter(|d| !d.starts_with("ok:")) {
            failures.row(vec![c.id.to_string(), d.clone()]);
        }
    }
    let mut r = RunReport::new("verify-all").settings(cfg);
    r.status = Status::from_checks(criteria.iter().all(|c| c.passed));
    r.results = json!({ "criteria": rows });
    r.tables = vec![table];
    if !failures.rows.is_empty() {
        r.tables.push(failures);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        let r = RunReport::empty();
        assert_eq!(emit_report(&r, Format::Json), b"{}\n");
        assert!(emit_report(&r, Format::Text).is_empty());
    }

    #[test]
    fn sphere_counts() {
        let r = sphere(GroupChoice::J4Prime, 3, &VerifyConfig::default()).unwrap();
        assert_eq!(r.results["count"], 40);
        assert_eq!(r.results["counts"], json!([1, 5, 15, 40]));
    }

    #[test]
    fn pure_table_has_twenty_rows() {
        let r = pure(&VerifyConfig::default()).unwrap();
        assert_eq!(r.tables[0].rows.len(), 20);
        assert_eq!(r.tables[0].columns, ["name", "word", "inverse-partner", "π"]);
        assert_eq!(r.status, Status::Pass);
        let text = String::from_utf8(emit_report(&r, Format::Text)).unwrap();
        assert!(text.contains("g1 = a1 s14"));
    }

    #[test]
    fn dirichlet_cycle_table() {
        let r = dirichlet(&VerifyConfig::default()).unwrap();
        let t = &r.tables[2];
        assert_eq!(t.rows.len(), 6);
        assert!(t.rows.iter().all(|row| row[2] == "2π"));
        assert_eq!(r.results["surface"]["euler_characteristic"], -3);
    }

    #[test]
    fn json_is_stable() {
        let a = emit_report(&tietze().unwrap(), Format::Json);
        let b = emit_report(&tietze().unwrap(), Format::Json);
        assert_eq!(a, b);
        let v: Value = serde_json::from_slice(&a).unwrap();
        assert_eq!(v["status"], "pass");
        assert_eq!(v["results"]["after"]["abelianization"], "Z^4 + Z/2");
    }

    #[test]
    fn table_alignment() {
        let mut t = Table::new("", &["a", "bb"]);
        t.row(vec!["xyz".into(), "1".into()]);
        let mut s = String::new();
        t.render(&mut s);
        assert_eq!(s, "a    bb\n---  --\nxyz  1\n");
    }
}
