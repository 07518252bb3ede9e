//! Building the RM-preserving part of the (ℓ,ℓ)-graph out of 𝔩-graphs.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use super::explore::{explore, ExploreKind};
use super::{EdgeLabel, LeveledGraph, ValidationReport};
use crate::algebra::Split;
use crate::basis::LatticeBasis;
use crate::error::{Error, Result};
use crate::lattice::{NeighborKind, SymplecticSpace};

fn expect_labels(g: &LeveledGraph, allowed: &[EdgeLabel]) -> Result<()> {
    match g.edges().into_iter().find(|e| !allowed.contains(&e.label)) {
        Some(e) => Err(Error::InputShapeMismatch(format!("unexpected {} edge {} -> {}", e.label, e.from, e.to))),
        None => Ok(()),
    }
}

/// Weighted two-step paths `v -first-> w -second-> u`, keyed by `u`.
fn two_paths(g: &LeveledGraph, v: usize, first: EdgeLabel, second: EdgeLabel) -> BTreeMap<usize, u32> {
    let mut out = BTreeMap::new();
    for e in g.out_edges(v).into_iter().filter(|e| e.label == first) {
        for f in g.out_edges(e.to).into_iter().filter(|f| f.label == second) {
            *out.entry(f.to).or_insert(0) += e.mult * f.mult;
        }
    }
    out
}

/// The vertex `B/B[𝔩]`: where the children of `B` ascend to.
fn backtrack_target(g: &LeveledGraph, v: usize) -> Option<usize> {
    let lv = g.level(v, 0);
    let child = g.out_edges(v).into_iter().find(|e| g.level(e.to, 0) == lv + 1)?;
    g.out_edges(child.to).into_iter().find(|e| g.level(e.to, 0) == lv).map(|e| e.to)
}

/// Inert: the 𝔩-graph relabelled. Ramified: squares of 𝔩-paths with the
/// `ℓ+1`-fold backtrack edge reduced to one copy. Split: `𝔩₁`-then-`𝔩₂` paths.
///
/// Vertices at the truncation boundary keep whatever paths survive.
pub fn paste_ll_graph(input: &LeveledGraph, symbol: Split, ell: u64) -> Result<LeveledGraph> {
    let mut out = LeveledGraph::new();
    for v in input.vertices() {
        out.add_vertex(v.levels.clone(), v.order.clone(), v.class_label.clone());
    }
    match symbol {
        Split::Inert => {
            expect_labels(input, &[EdgeLabel::L1])?;
            for e in input.edges() {
                out.add_edge(e.from, e.to, EdgeLabel::LL, e.mult);
            }
        }
        Split::Ramified => {
            expect_labels(input, &[EdgeLabel::L1])?;
            for v in 0..input.vertex_count() {
                let mut paths = two_paths(input, v, EdgeLabel::L1, EdgeLabel::L1);
                if let Some(t) = backtrack_target(input, v) {
                    if let Some(m) = paths.get_mut(&t) {
                        *m = m.saturating_sub(ell as u32).max(1);
                    }
                }
                for (u, m) in paths {
                    out.add_edge(v, u, EdgeLabel::LL, m);
                }
            }
        }
        Split::Split => {
            expect_labels(input, &[EdgeLabel::L1, EdgeLabel::L2])?;
            if input.vertices().iter().any(|v| v.levels.len() != 2) {
                return Err(Error::InputShapeMismatch("split pasting needs bi-leveled input".into()));
            }
            for v in 0..input.vertex_count() {
                for (u, m) in two_paths(input, v, EdgeLabel::L1, EdgeLabel::L2) {
                    out.add_edge(v, u, EdgeLabel::LL, m);
                }
            }
        }
    }
    Ok(out)
}

fn expected_degree(symbol: Split, ell: u64) -> u64 {
    match symbol {
        Split::Inert => ell * ell + 1,
        Split::Ramified => ell * ell + ell + 1,
        Split::Split => (ell + 1) * (ell + 1),
    }
}

/// Out-degree check on vertices at least two levels above the truncation depth.
pub fn validate_pasted(g: &LeveledGraph, symbol: Split, ell: u64, depth: u32) -> ValidationReport {
    let mut r = ValidationReport::default();
    let want = expected_degree(symbol, ell);
    let w = (0..g.vertex_count())
        .filter(|&v| g.vertex(v).levels.iter().all(|&l| l + 2 <= depth))
        .find_map(|v| {
            let d: u64 = g.out_edges(v).iter().map(|e| e.mult as u64).sum();
            (d != want).then(|| format!("vertex {v}: out-degree {d}, expected {want}"))
        });
    r.push("rm-preserving-degree", w);
    let w = g.edges().into_iter().find(|e| e.label != EdgeLabel::LL).map(|e| format!("edge {} -> {}", e.from, e.to));
    r.push("ll-labels", w);
    r
}

/// Explores the 𝔩-graph from the standard lattice, pastes it, and compares
/// each pasted neighborhood with the RM-preserving (ℓ,ℓ)-neighbors computed
/// directly on the lattice. Only vertices whose two-step neighborhoods were
/// fully explored are compared.
pub fn paste_cross_check(space: &SymplecticSpace, depth: u32) -> Result<ValidationReport> {
    let alg = space.algebra();
    let real = alg.symbol().real_split;
    let primes: Vec<usize> = (0..alg.primes().len()).collect();
    let seed = space.standard_selfdual_lattice()?;
    let ex = explore(space, &seed, ExploreKind::LNeighbors(primes), depth)?;
    let pasted = paste_ll_graph(&ex.graph, real, space.ell())?;
    let ids: BTreeMap<&LatticeBasis, usize> = ex.lattices.iter().enumerate().map(|(i, l)| (l.basis(), i)).collect();

    let mut w = None;
    let mut compared = 0;
    for v in 0..ex.lattices.len() {
        if ex.distance[v] + 2 > depth {
            continue;
        }
        compared += 1;
        let mut direct: BTreeMap<usize, u32> = BTreeMap::new();
        let form = space.polarizing_form(&ex.lattices[v])?;
        for c in space.classify_ll_neighbors_with(&ex.lattices[v], &form)? {
            if c.kind != NeighborKind::RmHorizontal {
                continue;
            }
            match ids.get(c.neighbor.basis()) {
                Some(&u) => *direct.entry(u).or_insert(0) += 1,
                None => {
                    w = w.or(Some(format!("vertex {v}: RM-preserving neighbor outside the explored graph")));
                }
            }
        }
        let glued: BTreeMap<usize, u32> = pasted.out_edges(v).into_iter().map(|e| (e.to, e.mult)).collect();
        if glued != direct {
            w = w.or(Some(format!("vertex {v}: pasted {glued:?}, direct {direct:?}")));
        }
    }
    if compared == 0 {
        w = w.or(Some("depth too small to compare any vertex".into()));
    }
    let mut r = validate_pasted(&pasted, real, space.ell(), u32::MAX);
    r.clauses.retain(|c| c.name == "ll-labels");
    r.push("matches-ll-neighbors", w);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;
    use crate::graph::{synth_bileveled, synth_l_volcano, BiLeveledParams, VolcanoParams};

    #[test]
    fn synthesized_degrees() {
        let inert = synth_l_volcano(&VolcanoParams::new(4, -1, 1, 3)).unwrap();
        let ram = synth_l_volcano(&VolcanoParams::new(2, 0, 1, 3)).unwrap();
        let split = synth_bileveled(&BiLeveledParams::new(vec![[1, 0], [0, 1]], 2, 2)).unwrap();
        for (g, s, d) in [(inert, Split::Inert, 3), (ram, Split::Ramified, 3), (split, Split::Split, 2)] {
            let p = paste_ll_graph(&g, s, 2).unwrap();
            let r = validate_pasted(&p, s, 2, d);
            assert!(r.all_pass(), "{s:?}: {r}");
        }
    }

    #[test]
    fn ramified_surface_square() {
        let g = synth_l_volcano(&VolcanoParams::new(2, 0, 1, 3)).unwrap();
        let naive: u32 = two_paths(&g, 0, EdgeLabel::L1, EdgeLabel::L1).values().sum();
        assert_eq!(naive, 9);
        let p = paste_ll_graph(&g, Split::Ramified, 2).unwrap();
        let d: u32 = p.out_edges(0).iter().map(|e| e.mult).sum();
        assert_eq!(d, 7);
    }

    #[test]
    fn wrong_labels_rejected() {
        let g = synth_bileveled(&BiLeveledParams::new(vec![[1, 0], [0, 1]], 2, 1)).unwrap();
        assert!(matches!(paste_ll_graph(&g, Split::Inert, 2), Err(Error::InputShapeMismatch(_))));
    }
}
