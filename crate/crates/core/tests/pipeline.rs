use std::collections::BTreeMap;

use pj4::cactus::CactusGroup;
use pj4::complex::CayleyBall;
use pj4::dirichlet::{classify_identified_surface, Dirichlet, StartSide};
use pj4::geometry::{edge_length_45, hyp_distance, Embedding, HPoint, Isometry};
use pj4::grouptheory::{abelianization, pj4_presentation, surface_presentation};
use pj4::rewrite::RewriteSystem;

fn key(p: HPoint) -> (i64, i64) {
    ((p.x() * 1e8).round() as i64, (p.y() * 1e8).round() as i64)
}

/// Sphere sizes of the orbit of the origin under the generator isometries,
/// by breadth-first search on points. The action is free, so points stand
/// for group elements.
fn geometric_spheres(emb: &Embedding, gens: &[pj4::words::GenId], max_len: usize) -> Vec<usize> {
    let mut seen = BTreeMap::new();
    let mut frontier = vec![Isometry::identity()];
    seen.insert(key(HPoint::origin()), 0usize);
    let mut sizes = vec![1];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for m in &frontier {
            for &g in gens {
                let n = m.compose(emb.generator_map(g).unwrap());
                let p = n.apply(HPoint::origin());
                if let std::collections::btree_map::Entry::Vacant(e) = seen.entry(key(p)) {
                    e.insert(len);
                    next.push(n);
                }
            }
        }
        sizes.push(next.len());
        frontier = next;
    }
    sizes
}

#[test]
fn sphere_growth_matches_the_tiling() {
    let sys = RewriteSystem::j4_prime();
    let j4p = CactusGroup::j4_prime();
    let ball = CayleyBall::build(&sys, 3).unwrap();
    let emb = Embedding::new(&ball, j4p.relators()).unwrap();
    let gens = j4p.generators().to_vec();
    let geometric = geometric_spheres(&emb, &gens, 6);
    let combinatorial: Vec<usize> = sys.spheres(6).unwrap().iter().map(|s| s.len()).collect();
    assert_eq!(&combinatorial[..5], [1, 5, 15, 40, 105]);
    assert_eq!(geometric, combinatorial);
}

#[test]
fn embedded_words_sit_at_graph_distance() {
    let sys = RewriteSystem::j4_prime();
    let j4p = CactusGroup::j4_prime();
    let ball = CayleyBall::build(&sys, 3).unwrap();
    let emb = Embedding::new(&ball, j4p.relators()).unwrap();
    let r = edge_length_45();
    for (i, w) in ball.vertices().iter().enumerate() {
        let p = emb.place(w).unwrap();
        assert!(p.close_to(emb.positions()[i], 1e-9));
        let d = hyp_distance(HPoint::origin(), p);
        assert!(d <= w.len() as f64 * r + 1e-9);
    }
}

#[test]
fn polygon_to_surface() {
    let d = Dirichlet::new().unwrap();
    let poly = d.dirichlet_polygon().unwrap();
    let pairings = d.side_pairings(&poly).unwrap();
    let cycles = d.vertex_cycles(&poly, &pairings, StartSide::Next).unwrap();
    let s = classify_identified_surface(&d.edge_word(&poly, &pairings)).unwrap();
    assert_eq!(s.vertices, cycles.len());
    assert_eq!(s.vertices as i64 - s.edges as i64 + 1, s.euler_characteristic);
    assert_eq!(2 - s.euler_characteristic, 5);
    assert_eq!(abelianization(&pj4_presentation()), abelianization(&surface_presentation()));
}
