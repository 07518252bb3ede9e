//! Breadth-first exploration of lattice neighbor graphs.
//!
//! The result is the graph of lattice classes, which can cover the global
//! isogeny graph: local lattices see neither global units nor class groups.
//! [`validate_explored`] therefore checks only what survives covering:
//! degrees, levels and the predecessor identities.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{EdgeLabel, LeveledGraph, ValidationReport, VertexOrder};
use crate::basis::LatticeBasis;
use crate::error::{Error, Result};
use crate::lattice::{SymplecticLattice, SymplecticSpace};
use crate::oracle::{expected_l_partition, expected_rm_preserving};

/// Margin kept between exploration depth and the working precision.
const DEPTH_MARGIN: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExploreKind {
    /// 𝔩-neighbors for the listed real primes, one edge label per prime.
    LNeighbors(Vec<usize>),
    /// (ℓ,ℓ)-neighbors; needs a self-dual seed.
    LL,
}

#[derive(Clone, Debug)]
pub struct Explored {
    pub graph: LeveledGraph,
    /// Representative lattice of each vertex.
    pub lattices: Vec<SymplecticLattice>,
    /// BFS distance from the seed.
    pub distance: Vec<u32>,
    pub depth: u32,
    pub kind: ExploreKind,
}

impl Explored {
    /// Vertex whose lattice has the class of `l`, if explored.
    pub fn find(&self, l: &SymplecticLattice) -> Option<usize> {
        self.lattices.iter().position(|m| m.same_class(l))
    }
}

fn levels(space: &SymplecticSpace, kind: &ExploreKind, l: &SymplecticLattice) -> Result<(Vec<u32>, VertexOrder)> {
    let d = space.descriptor(l)?;
    let lv = match kind {
        ExploreKind::LL => vec![d.real_level],
        ExploreKind::LNeighbors(_) => d.conductor.clone().ok_or(Error::MaxRmRequired)?.exponents,
    };
    Ok((lv, VertexOrder::Descriptor(d)))
}

pub fn explore(space: &SymplecticSpace, seed: &SymplecticLattice, kind: ExploreKind, depth: u32) -> Result<Explored> {
    if depth + DEPTH_MARGIN > space.ring().precision() {
        return Err(Error::PrecisionExhausted);
    }
    if let ExploreKind::LNeighbors(ps) = &kind {
        let n = space.algebra().primes().len();
        if ps.is_empty() || ps.iter().any(|&i| i >= n) {
            return Err(Error::InvalidParams(format!("prime indices must lie in 0..{n}")));
        }
    }
    let mut graph = LeveledGraph::new();
    let mut lattices = Vec::new();
    let mut distance = Vec::new();
    let mut index: BTreeMap<LatticeBasis, usize> = BTreeMap::new();

    let (lv, ord) = levels(space, &kind, seed)?;
    graph.add_vertex(lv, ord, None);
    lattices.push(seed.clone());
    distance.push(0);
    index.insert(seed.basis().clone(), 0);
    let mut queue = VecDeque::from([0usize]);

    while let Some(v) = queue.pop_front() {
        if distance[v] >= depth {
            continue;
        }
        let lam = lattices[v].clone();
        let batches: Vec<(EdgeLabel, Vec<SymplecticLattice>)> = match &kind {
            ExploreKind::LL => vec![(EdgeLabel::LL, space.ll_neighbors(&lam)?)],
            ExploreKind::LNeighbors(ps) => ps
                .iter()
                .map(|&i| Ok((EdgeLabel::prime(i), space.l_neighbors(&lam, i)?)))
                .collect::<Result<_>>()?,
        };
        for (label, ns) in batches {
            for n in ns {
                let u = match index.get(n.basis()) {
                    Some(&u) => u,
                    None => {
                        let (lv, ord) = levels(space, &kind, &n)?;
                        let u = graph.add_vertex(lv, ord, None);
                        index.insert(n.basis().clone(), u);
                        lattices.push(n);
                        distance.push(distance[v] + 1);
                        queue.push_back(u);
                        u
                    }
                };
                graph.add_edge(v, u, label, 1);
            }
        }
    }
    Ok(Explored { graph, lattices, distance, depth, kind })
}

/// Degree, unique-ascent, partition and predecessor checks on every vertex
/// whose out-edges were explored.
pub fn validate_explored(space: &SymplecticSpace, ex: &Explored) -> Result<ValidationReport> {
    let alg = space.algebra();
    let ell = space.ell();
    let g = &ex.graph;
    let inner: Vec<usize> = (0..g.vertex_count()).filter(|&v| ex.distance[v] < ex.depth).collect();
    let axes: Vec<(usize, EdgeLabel)> = match &ex.kind {
        ExploreKind::LL => vec![(0, EdgeLabel::LL)],
        ExploreKind::LNeighbors(ps) => ps.iter().map(|&i| (i, EdgeLabel::prime(i))).collect(),
    };
    let is_ll = ex.kind == ExploreKind::LL;
    let mut r = ValidationReport::default();

    let mut w_deg = None;
    let mut w_up = None;
    let mut w_part = None;
    for &v in &inner {
        for &(axis, label) in &axes {
            let out: Vec<_> = g.out_edges(v).into_iter().filter(|e| e.label == label).collect();
            let deg: u64 = out.iter().map(|e| e.mult as u64).sum();
            let want = if is_ll {
                ell * ell * ell + ell * ell + ell + 1
            } else {
                ell.pow(alg.prime(axis).residue_degree) + 1
            };
            if deg != want {
                w_deg = w_deg.or(Some(format!("vertex {v}: {label} degree {deg}, expected {want}")));
            }
            let lv = g.level(v, axis);
            let (mut a, mut h, mut d) = (0usize, 0usize, 0usize);
            for e in &out {
                let lt = g.level(e.to, axis);
                let m = e.mult as usize;
                match lt.cmp(&lv) {
                    core::cmp::Ordering::Less => a += m,
                    core::cmp::Ordering::Equal => h += m,
                    core::cmp::Ordering::Greater => d += m,
                }
            }
            if lv > 0 && a != 1 {
                w_up = w_up.or(Some(format!("vertex {v}")));
            }
            let expect = if is_ll {
                if lv > 0 {
                    (1, (ell * ell + ell) as usize, (ell * ell * ell) as usize)
                } else {
                    let p = expected_rm_preserving(alg.symbol().real_split, ell);
                    (0, p, want as usize - p)
                }
            } else {
                let pr = alg.prime(axis);
                expected_l_partition(pr.upper, lv, ell.pow(pr.residue_degree))
            };
            if (a, h, d) != expect {
                w_part = w_part.or(Some(format!("vertex {v}: {label} partition {:?}, expected {expect:?}", (a, h, d))));
            }
        }
    }
    r.push("out-degree", w_deg);
    r.push("unique-ascending", w_up);
    r.push("partition", w_part);

    // descend, then ascend: lands on the class of 𝔩Λ (or Λ for (ℓ,ℓ))
    let mut w = None;
    for &v in &inner {
        for &(axis, label) in &axes {
            let lv = g.level(v, axis);
            let target = if is_ll {
                ex.lattices[v].clone()
            } else {
                space.prime_multiple(&ex.lattices[v], axis)?
            };
            for e in g.out_edges(v).into_iter().filter(|e| e.label == label && g.level(e.to, axis) > lv) {
                let child = &ex.lattices[e.to];
                let up = if is_ll { space.rm_predecessor(child)? } else { space.l_predecessor(child, axis)? };
                if !up.same_class(&target) {
                    w = w.or(Some(format!("edge {v} -> {}", e.to)));
                }
                if ex.distance[e.to] < ex.depth {
                    let asc: Vec<_> = g
                        .out_edges(e.to)
                        .into_iter()
                        .filter(|f| f.label == label && g.level(f.to, axis) < g.level(e.to, axis))
                        .collect();
                    if asc.len() == 1 && !ex.lattices[asc[0].to].same_class(&target) {
                        w = w.or(Some(format!("edge {} -> {} does not return to the expected class", e.to, asc[0].to)));
                    }
                }
            }
        }
    }
    r.push("predecessor", w);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{LocalCmAlgebra, Split, SplittingSymbol};

    fn space(real: Split, up: Vec<Split>) -> SymplecticSpace {
        let s = SplittingSymbol::new(real, up).unwrap();
        SymplecticSpace::new(LocalCmAlgebra::build(2, &s, 20).unwrap())
    }

    #[test]
    fn inert_volcano_depth_two() {
        let sp = space(Split::Inert, vec![Split::Inert]);
        let seed = sp.standard_selfdual_lattice().unwrap();
        let ex = explore(&sp, &seed, ExploreKind::LNeighbors(vec![0]), 2).unwrap();
        assert_eq!(ex.graph.level_sizes(0), vec![1, 5, 20]);
        let r = validate_explored(&sp, &ex).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn ll_depth_one() {
        let sp = space(Split::Split, vec![Split::Split, Split::Split]);
        let seed = sp.standard_selfdual_lattice().unwrap();
        let ex = explore(&sp, &seed, ExploreKind::LL, 1).unwrap();
        assert_eq!(ex.graph.vertex_count(), 16);
        let c = sp.classify_ll_neighbors(&seed).unwrap();
        assert_eq!(crate::lattice::tally(&c), (0, 9, 6));
        let r = validate_explored(&sp, &ex).unwrap();
        assert!(r.all_pass(), "{r}");
    }

    #[test]
    fn depth_beyond_precision() {
        let sp = space(Split::Inert, vec![Split::Inert]);
        let seed = sp.standard_selfdual_lattice().unwrap();
        assert_eq!(
            explore(&sp, &seed, ExploreKind::LNeighbors(vec![0]), 17).unwrap_err(),
            Error::PrecisionExhausted
        );
    }
}
