//! Leveled 𝔩-isogeny graphs built from class-group style parameters.
//!
//! Level 0 is `Z/c` with `[𝔏]` acting as `+1`. A vertex `X` at level `i` has
//! `m_i` children `(P, j)`, all hanging below `P = σ_i(X)`, where `σ_i` is the
//! action of the class of `𝔩` on level `i`. Each child has one simple edge up
//! to its parent. When every `σ_i` is trivial and every unit index is 1 the
//! result is an ordinary volcano.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use super::{EdgeLabel, LeveledGraph, ValidationReport, VertexOrder};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolcanoParams {
    pub norm_l: u64,
    /// `(K/𝔩)`: -1 inert, 0 ramified, 1 split.
    pub symbol_in_k: i32,
    pub surface_cycle_length: u64,
    /// `[𝒪_i^× : 𝒪_{i+1}^×]` per level; missing entries are 1.
    pub unit_indices: Vec<u64>,
    /// Order of the class of `𝔩` acting on level `i`; missing entries are inherited.
    pub l_class_orders: Vec<u64>,
    pub depth: u32,
}

impl VolcanoParams {
    pub fn new(norm_l: u64, symbol_in_k: i32, surface_cycle_length: u64, depth: u32) -> Self {
        VolcanoParams {
            norm_l,
            symbol_in_k,
            surface_cycle_length,
            unit_indices: Vec::new(),
            l_class_orders: Vec::new(),
            depth,
        }
    }

    pub fn unit_index(&self, i: usize) -> u64 {
        self.unit_indices.get(i).copied().unwrap_or(1)
    }

    fn derived_surface_order(&self) -> u64 {
        let c = self.surface_cycle_length;
        match self.symbol_in_k {
            0 => c / gcd(c, 2),
            _ => 1,
        }
    }

    pub fn class_order(&self, i: usize) -> u64 {
        match self.l_class_orders.get(i) {
            Some(&o) => o,
            None if i == 0 => self.derived_surface_order(),
            None => self.class_order(i - 1),
        }
    }

    pub(crate) fn layout(&self) -> Result<Layout> {
        let bad = |m: String| Err(Error::InvalidParams(m));
        let (n, c, sym) = (self.norm_l, self.surface_cycle_length, self.symbol_in_k);
        if n < 2 {
            return bad("norm_l must be at least 2".into());
        }
        if !(-1..=1).contains(&sym) {
            return bad("symbol_in_k must be -1, 0 or 1".into());
        }
        if c == 0 {
            return bad("surface_cycle_length must be positive".into());
        }
        if self.unit_indices.iter().chain(self.l_class_orders.iter()).any(|&x| x == 0) {
            return bad("unit indices and class orders must be positive".into());
        }
        if sym == -1 && c != 1 {
            return bad("an inert prime has a single surface vertex per component".into());
        }
        let o0 = self.class_order(0);
        let shift = match sym {
            1 => {
                if c % o0 != 0 {
                    return bad(format!("class order {o0} does not divide the cycle length {c}"));
                }
                (c / o0) % c
            }
            0 => {
                if o0 != self.derived_surface_order() {
                    return bad(format!(
                        "a ramified prime squares to 𝔩, forcing class order {} on a {c}-cycle",
                        self.derived_surface_order()
                    ));
                }
                2 % c
            }
            _ => {
                if o0 != 1 {
                    return bad("an inert surface has trivial 𝔩-action".into());
                }
                0
            }
        };
        let depth = self.depth as usize;
        let mut fanout = Vec::with_capacity(depth);
        let mut mult = Vec::with_capacity(depth);
        for i in 0..depth {
            let u = self.unit_index(i);
            let total = if i == 0 { (n as i64 - sym as i64) as u64 } else { n };
            if total % u != 0 {
                return bad(format!("level ratio {total}/{u} at level {i} is not integral"));
            }
            fanout.push(total / u);
            mult.push(u);
        }
        let orders: Vec<u64> = (0..depth.max(1)).map(|i| self.class_order(i)).collect();
        for i in 0..depth.saturating_sub(1) {
            let (a, b) = (orders[i], orders[i + 1]);
            if b % a != 0 || fanout[i] % (b / a) != 0 {
                return bad(format!("class order {b} at level {} is incompatible with {a} and fan-out {}", i + 1, fanout[i]));
            }
        }
        Ok(Layout { c, shift, symbol: sym, fanout, mult, orders, label: EdgeLabel::L1 })
    }
}

/// Resolved shape of a leveled graph.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    pub c: u64,
    pub shift: u64,
    pub symbol: i32,
    pub fanout: Vec<u64>,
    pub mult: Vec<u64>,
    pub orders: Vec<u64>,
    pub label: EdgeLabel,
}

impl Layout {
    pub fn sizes(&self) -> Vec<usize> {
        let mut s = vec![self.c as usize];
        for &m in &self.fanout {
            s.push(s.last().unwrap() * m as usize);
        }
        s
    }

    pub fn horizontal_targets(&self, g: u64) -> Vec<u64> {
        let c = self.c;
        match self.symbol {
            1 => vec![(g + 1) % c, (g + c - 1 + self.shift) % c],
            0 => vec![(g + 1) % c],
            _ => vec![],
        }
    }

    pub fn build(&self) -> LeveledGraph {
        let sizes = self.sizes();
        let mut g = LeveledGraph::new();
        let mut offset = Vec::with_capacity(sizes.len());
        let mut labels: Vec<String> = (0..self.c).map(|x| x.to_string()).collect();
        for (lvl, &n) in sizes.iter().enumerate() {
            offset.push(g.vertex_count());
            for idx in 0..n {
                let label = if lvl == 0 { labels[idx].clone() } else { String::new() };
                g.add_vertex(vec![lvl as u32], VertexOrder::Abstract, Some(label));
            }
            if lvl > 0 {
                let m = self.fanout[lvl - 1] as usize;
                let next: Vec<String> = (0..n).map(|y| format!("{}.{}", labels[y / m], y % m)).collect();
                for (y, l) in next.iter().enumerate() {
                    g.vertices[offset[lvl] + y].class_label = Some(l.clone());
                }
                labels = next;
            }
        }
        for x in 0..self.c {
            for t in self.horizontal_targets(x) {
                g.add_edge(x as usize, t as usize, self.label, 1);
            }
        }
        let mut sigma: Vec<usize> = (0..self.c).map(|x| ((x + self.shift) % self.c) as usize).collect();
        for lvl in 0..self.fanout.len() {
            let m = self.fanout[lvl] as usize;
            let u = self.mult[lvl] as u32;
            for x in 0..sizes[lvl] {
                for j in 0..m {
                    g.add_edge(offset[lvl] + x, offset[lvl + 1] + sigma[x] * m + j, self.label, u);
                }
            }
            for y in 0..sizes[lvl + 1] {
                g.add_edge(offset[lvl + 1] + y, offset[lvl] + y / m, self.label, 1);
            }
            if lvl + 1 < self.fanout.len() {
                let k = (self.orders[lvl + 1] / self.orders[lvl]) as usize;
                let s = m / k;
                let base = cycle_bases(&sigma);
                let mut next = vec![0; sizes[lvl + 1]];
                for (y, slot) in next.iter_mut().enumerate() {
                    let (p, j) = (y / m, y % m);
                    let jj = if base[p] { (j + s) % m } else { j };
                    *slot = sigma[p] * m + jj;
                }
                sigma = next;
            }
        }
        g
    }
}

/// Marks the least element of each cycle of a permutation.
fn cycle_bases(sigma: &[usize]) -> Vec<bool> {
    let mut seen = vec![false; sigma.len()];
    let mut base = vec![false; sigma.len()];
    for start in 0..sigma.len() {
        if seen[start] {
            continue;
        }
        base[start] = true;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = sigma[x];
        }
    }
    base
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Order of a permutation, or `None` if the map is not a bijection.
pub(crate) fn permutation_order(sigma: &[usize]) -> Option<u64> {
    let mut hit = vec![false; sigma.len()];
    for &s in sigma {
        if s >= sigma.len() || hit[s] {
            return None;
        }
        hit[s] = true;
    }
    let mut seen = vec![false; sigma.len()];
    let mut order = 1;
    for start in 0..sigma.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = sigma[x];
            len += 1;
        }
        order = lcm(order, len);
    }
    Some(order)
}

pub fn synth_l_volcano(p: &VolcanoParams) -> Result<LeveledGraph> {
    Ok(p.layout()?.build())
}

pub fn validate_volcano(g: &LeveledGraph, p: &VolcanoParams) -> ValidationReport {
    let mut r = ValidationReport::default();
    match p.layout() {
        Ok(layout) => check_layout(g, &layout, &mut r),
        Err(e) => r.push("params", Some(format!("{e}"))),
    }
    r
}

/// Mechanical checks of a graph against a layout. Shared with polarized graphs.
pub(crate) fn check_layout(g: &LeveledGraph, lay: &Layout, r: &mut ValidationReport) {
    let sizes = lay.sizes();
    let depth = lay.fanout.len();
    let lvl = |v: usize| g.level(v, 0) as usize;
    let got = g.level_sizes(0);
    r.push(
        "level-sizes",
        (got != sizes).then(|| format!("sizes {got:?}, expected {sizes:?}")),
    );
    if got != sizes {
        return;
    }
    let by_level: Vec<Vec<usize>> = (0..sizes.len())
        .map(|l| (0..g.vertex_count()).filter(|&v| lvl(v) == l).collect())
        .collect();
    let mut index = vec![0usize; g.vertex_count()];
    for vs in &by_level {
        for (i, &v) in vs.iter().enumerate() {
            index[v] = i;
        }
    }

    // surface: labels are Z/c and horizontal edges follow the Cayley rule
    let mut w = None;
    let mut pos = vec![usize::MAX; lay.c as usize];
    for &v in &by_level[0] {
        match g.vertex(v).class_label.as_deref().and_then(|s| s.parse::<u64>().ok()) {
            Some(x) if x < lay.c && pos[x as usize] == usize::MAX => pos[x as usize] = v,
            _ => w = w.or(Some(format!("surface vertex {v} has no class in Z/{}", lay.c))),
        }
    }
    if w.is_none() {
        for x in 0..lay.c {
            let v = pos[x as usize];
            let mut have: Vec<(usize, u32)> = g
                .out_edges(v)
                .into_iter()
                .filter(|e| lvl(e.to) == 0)
                .map(|e| (e.to, e.mult))
                .collect();
            have.sort();
            let mut want: Vec<(usize, u32)> = Vec::new();
            for t in lay.horizontal_targets(x) {
                let tv = pos[t as usize];
                match want.iter_mut().find(|(a, _)| *a == tv) {
                    Some(e) => e.1 += 1,
                    None => want.push((tv, 1)),
                }
            }
            want.sort();
            if have != want {
                w = Some(format!("vertex {v}: horizontal {have:?}, expected {want:?}"));
                break;
            }
        }
    }
    r.push("surface-cayley", w);

    let n_total = |l: usize| lay.fanout[l] * lay.mult[l];
    let mut w = None;
    for l in 0..depth {
        for &v in &by_level[l] {
            let down: Vec<_> = g.out_edges(v).into_iter().filter(|e| lvl(e.to) == l + 1).collect();
            let total: u64 = down.iter().map(|e| e.mult as u64).sum();
            if down.len() as u64 != lay.fanout[l] || total != n_total(l) || down.iter().any(|e| e.mult as u64 != lay.mult[l]) {
                w = w.or(Some(format!("vertex {v}: {} descending edges of total multiplicity {total}", down.len())));
            }
        }
    }
    r.push("descending", w);

    let mut parent = vec![usize::MAX; g.vertex_count()];
    let mut w = None;
    for l in 1..sizes.len() {
        for &v in &by_level[l] {
            let up: Vec<_> = g.out_edges(v).into_iter().filter(|e| lvl(e.to) + 1 == l).collect();
            if up.len() == 1 && up[0].mult == 1 {
                parent[v] = up[0].to;
            } else {
                w = w.or(Some(format!("vertex {v}")));
            }
        }
    }
    r.push("unique-ascending", w);

    let w = g
        .edges()
        .into_iter()
        .find(|e| {
            let (a, b) = (lvl(e.from), lvl(e.to));
            e.label != lay.label || !(a.abs_diff(b) == 1 || (a == 0 && b == 0))
        })
        .map(|e| format!("edge {} -> {}", e.from, e.to));
    r.push("no-other-edges", w);

    let mut w = None;
    for l in 0..depth {
        let mut sigma = vec![usize::MAX; sizes[l]];
        for &v in &by_level[l] {
            let ps: Vec<usize> = g
                .out_edges(v)
                .into_iter()
                .filter(|e| lvl(e.to) == l + 1)
                .map(|e| parent[e.to])
                .collect();
            if ps.is_empty() || ps.iter().any(|&p| p != ps[0] || p == usize::MAX) {
                w = w.or(Some(format!("children of vertex {v} hang below different vertices")));
            } else {
                sigma[index[v]] = index[ps[0]];
            }
        }
        if w.is_none() {
            match permutation_order(&sigma) {
                Some(o) if o == lay.orders[l] => {}
                Some(o) => w = Some(format!("level {l}: action of order {o}, expected {}", lay.orders[l])),
                None => w = Some(format!("level {l}: action is not a bijection")),
            }
        }
    }
    r.push("sigma", w);

    let inc = g.in_adjacency();
    let mut w = None;
    for l in 1..sizes.len() {
        for &v in &by_level[l] {
            let k = inc[v].iter().filter(|e| lvl(e.from) + 1 == l).count();
            if k != 1 {
                w = w.or(Some(format!("vertex {v} has {k} incoming descending edges")));
            }
        }
    }
    r.push("ascending-duals", w);

    let undirected = g.edges().iter().all(|e| g.mult(e.to, e.from, e.label) == e.mult);
    let predicted = lay.mult.iter().all(|&u| u == 1) && lay.orders.iter().take(depth.max(1)).all(|&o| o == 1);
    r.push(
        "volcano-iff",
        (undirected != predicted).then(|| format!("undirected {undirected}, predicted {predicted}")),
    );
}
