//! Polarized leveled graphs: the unpolarized volcano with its surface cycle
//! optionally doubled and all edges labelled `beta`.
//!
//! Only the case where the class of `𝔩` acts trivially on every level is
//! modeled; there each polarized edge has a reverse edge.

use alloc::format;
use alloc::vec::Vec;

use super::volcano::{check_layout, VolcanoParams};
use super::{EdgeLabel, LeveledGraph, ValidationReport};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizedParams {
    pub base: VolcanoParams,
    pub shimura_order_doubling: bool,
    /// `|U(𝒪_{i+1})| / |U(𝒪_i)|` per level; missing entries are 1.
    pub u_ratios: Vec<u64>,
}

#[derive(Clone, Debug)]
pub struct PolarizedGraph {
    pub graph: LeveledGraph,
    /// Set when a unit ratio is not 1: the description is then only a model.
    pub model_grade: bool,
}

impl PolarizedParams {
    pub fn new(base: VolcanoParams, shimura_order_doubling: bool) -> Self {
        PolarizedParams { base, shimura_order_doubling, u_ratios: Vec::new() }
    }

    fn ratio(&self, i: usize) -> u64 {
        self.u_ratios.get(i).copied().unwrap_or(1)
    }

    fn layout(&self) -> Result<super::volcano::Layout> {
        let b = &self.base;
        let mut lay = b.layout()?;
        if lay.orders.iter().any(|&o| o != 1) {
            return Err(Error::InvalidParams("polarized graphs need a trivially acting 𝔩-class".into()));
        }
        if self.u_ratios.iter().any(|&r| r == 0 || !r.is_power_of_two()) {
            return Err(Error::InvalidParams("unit ratios must be powers of 2".into()));
        }
        if self.shimura_order_doubling {
            match b.symbol_in_k {
                -1 => return Err(Error::InvalidParams("an inert surface has no cycle to double".into())),
                0 if b.surface_cycle_length != 1 => {
                    return Err(Error::InvalidParams(
                        "doubling a ramified cycle longer than 1 makes the 𝔩-class act nontrivially".into(),
                    ))
                }
                _ => {}
            }
            lay.c *= 2;
            lay.shift = 0;
            if b.symbol_in_k == 0 {
                lay.shift = 2 % lay.c;
            }
        }
        for (i, m) in lay.fanout.iter_mut().enumerate() {
            *m *= self.ratio(i);
        }
        lay.label = EdgeLabel::Beta;
        Ok(lay)
    }
}

pub fn synth_polarized(p: &PolarizedParams) -> Result<PolarizedGraph> {
    let lay = p.layout()?;
    Ok(PolarizedGraph { graph: lay.build(), model_grade: p.u_ratios.iter().any(|&r| r != 1) })
}

/// Checks a polarized graph against its own shape and against the base volcano.
pub fn validate_polarized(g: &LeveledGraph, p: &PolarizedParams) -> ValidationReport {
    let mut r = ValidationReport::default();
    let (lay, base) = match (p.layout(), p.base.layout()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => {
            r.push("params", Some(format!("{e}")));
            return r;
        }
    };
    check_layout(g, &lay, &mut r);

    let factor = if p.shimura_order_doubling { 2 } else { 1 };
    let bsizes = base.sizes();
    let got = g.level_sizes(0);
    let mut scale = factor;
    let mut w = None;
    for (i, &b) in bsizes.iter().enumerate() {
        if got.get(i).copied() != Some(b * scale) {
            w = Some(format!("level {i}: {:?} vertices, base {b}", got.get(i)));
            break;
        }
        scale *= p.ratio(i) as usize;
    }
    r.push("doubling-only-surface", w);

    // every vertex keeps the base degree profile, with descents scaled by the unit ratio
    let mut w = None;
    for v in 0..g.vertex_count() {
        let l = g.level(v, 0) as usize;
        let (mut up, mut flat, mut down) = (0u64, 0u64, 0u64);
        for e in g.out_edges(v) {
            let t = g.level(e.to, 0) as usize;
            let m = e.mult as u64;
            if t < l {
                up += m;
            } else if t == l {
                flat += m;
            } else {
                down += m;
            }
        }
        let want_flat = if l == 0 { base.horizontal_targets(0).len() as u64 } else { 0 };
        let want_up = u64::from(l > 0);
        let want_down = if l < base.fanout.len() { base.fanout[l] * base.mult[l] * p.ratio(l) } else { 0 };
        if (up, flat, down) != (want_up, want_flat, want_down) {
            w = Some(format!("vertex {v}: profile {:?}", (up, flat, down)));
            break;
        }
    }
    r.push("degree-profile", w);

    let w = g
        .edges()
        .into_iter()
        .find(|e| g.mult(e.to, e.from, e.label) != e.mult)
        .map(|e| format!("edge {} -> {} has no matching reverse", e.from, e.to));
    r.push("bidirected", w);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn doubling_doubles_surface() {
        let p = PolarizedParams::new(VolcanoParams::new(3, 1, 2, 2), true);
        let out = synth_polarized(&p).unwrap();
        assert_eq!(out.graph.level_sizes(0), vec![4, 8, 24]);
        let r = validate_polarized(&out.graph, &p);
        assert!(r.all_pass(), "{r}");
        assert!(!out.model_grade);
    }

    #[test]
    fn no_doubling_matches_base() {
        let base = VolcanoParams::new(2, 0, 1, 3);
        let p = PolarizedParams::new(base.clone(), false);
        let out = synth_polarized(&p).unwrap();
        let b = super::super::synth_l_volcano(&base).unwrap();
        assert_eq!(out.graph.level_sizes(0), b.level_sizes(0));
        assert!(validate_polarized(&out.graph, &p).all_pass());
    }

    #[test]
    fn inert_doubling_rejected() {
        let p = PolarizedParams::new(VolcanoParams::new(4, -1, 1, 2), true);
        assert!(matches!(synth_polarized(&p), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn ratio_flags_model_grade() {
        let mut p = PolarizedParams::new(VolcanoParams::new(3, 1, 1, 2), false);
        p.u_ratios = vec![2];
        let out = synth_polarized(&p).unwrap();
        assert!(out.model_grade);
        let r = validate_polarized(&out.graph, &p);
        assert!(r.all_pass(), "{r}");
        p.u_ratios = vec![3];
        assert!(synth_polarized(&p).is_err());
    }
}
