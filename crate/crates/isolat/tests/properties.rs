use isolat::basis::{LatticeBasis, Vec4};
use isolat::goingup::{descend_l, descend_rm, going_up, step_ll, GoingUpOptions, SurfaceState};
use isolat::graph::{
    synth_bileveled, synth_l_volcano, synth_polarized, validate_bileveled, validate_polarized, validate_volcano,
    BiLeveledParams, PolarizedParams, VolcanoParams,
};
use isolat::{LocalCmAlgebra, NeighborKind, RealIdeal, ResidueRing, Split, SplittingSymbol, SymplecticSpace};
use proptest::prelude::*;

fn space(ell: u64, sym: &SplittingSymbol) -> SymplecticSpace {
    SymplecticSpace::new(LocalCmAlgebra::build(ell, sym, 24).unwrap())
}

fn symbol(ell: u64) -> impl Strategy<Value = SplittingSymbol> {
    prop::sample::select(SplittingSymbol::supported(ell))
}

fn ell() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_is_additive(ell in ell(), a in 1u64..1 << 20, b in 1u64..1 << 20, s in 0u32..4, t in 0u32..4) {
        let r = ResidueRing::new(ell, 20).unwrap();
        let x = r.mul(r.from_i64(a as i64), r.ell_pow(s));
        let y = r.mul(r.from_i64(b as i64), r.ell_pow(t));
        let (vx, vy) = (r.val(x), r.val(y));
        prop_assume!(vx + vy < 20);
        prop_assert_eq!(r.val(r.mul(x, y)), vx + vy);
    }

    #[test]
    fn normal_form_depends_only_on_span(
        ell in ell(),
        cols in prop::array::uniform4(prop::array::uniform4(0u64..1000)),
        i in 0usize..4, j in 0usize..4, k in 1u64..50,
    ) {
        prop_assume!(i != j);
        let r = ResidueRing::new(ell, 20).unwrap();
        let cols: Vec<Vec4> = cols.iter().map(|c| c.map(|x| r.from_i64(x as i64))).collect();
        let Ok(a) = LatticeBasis::span(r, &cols) else { return Ok(()) };
        let mut moved = cols.clone();
        for row in 0..4 {
            moved[j][row] = r.add(moved[j][row], r.mul(k, cols[i][row]));
        }
        moved.swap(0, 3);
        prop_assert_eq!(LatticeBasis::span(r, &moved).unwrap(), a);
    }

    #[test]
    fn conductor_round_trip(ell in prop::sample::select(vec![2u64, 3]), sym in any::<prop::sample::Index>(), a in 0u32..4, b in 0u32..4) {
        let syms = SplittingSymbol::supported(ell);
        let alg = LocalCmAlgebra::build(ell, &syms[sym.index(syms.len())], 24).unwrap();
        let exps: Vec<u32> = [a, b][..alg.primes().len()].to_vec();
        let f = RealIdeal::new(exps);
        let o = alg.order_from_conductor(&f).unwrap();
        prop_assert!(alg.dagger_stable(&o).unwrap());
        let d = alg.conductor_of_order(&o).unwrap();
        prop_assert_eq!(d.real_level, 0);
        prop_assert_eq!(d.conductor, Some(f));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn volcano_level_sizes_follow_the_recursion(
        norm in prop::sample::select(vec![2u64, 3, 4, 5, 7, 9]),
        sym in -1i32..=1,
        c in 1u64..7,
        depth in 1u32..4,
        u0 in prop::sample::select(vec![1u64, 2, 3, 5]),
    ) {
        let mut p = VolcanoParams::new(norm, sym, c, depth);
        p.unit_indices = vec![u0];
        let Ok(g) = synth_l_volcano(&p) else { return Ok(()) };
        let sizes = g.level_sizes(0);
        prop_assert_eq!(sizes.len(), depth as usize + 1);
        prop_assert_eq!(sizes[1] as u64 * u0, sizes[0] as u64 * (norm as i64 - sym as i64) as u64);
        for w in sizes[1..].windows(2) {
            prop_assert_eq!(w[1] as u64, w[0] as u64 * norm);
        }
        let r = validate_volcano(&g, &p);
        prop_assert!(r.all_pass(), "{}", r);
        for v in 0..g.vertex_count() {
            let lv = g.level(v, 0);
            if lv > 0 {
                let up: u32 = g.out_edges(v).iter().filter(|e| g.level(e.to, 0) < lv).map(|e| e.mult).sum();
                prop_assert_eq!(up, 1);
            }
        }
    }

    #[test]
    fn polarized_graphs_are_undirected(
        norm in prop::sample::select(vec![2u64, 3, 4, 5, 7]),
        sym in 0i32..=1,
        c in 1u64..5,
        depth in 1u32..4,
        doubling: bool,
        ratio in prop::sample::select(vec![1u64, 2]),
    ) {
        let mut p = PolarizedParams::new(VolcanoParams::new(norm, sym, c, depth), doubling);
        p.u_ratios = vec![1, ratio];
        let Ok(pg) = synth_polarized(&p) else { return Ok(()) };
        let r = validate_polarized(&pg.graph, &p);
        prop_assert!(r.all_pass(), "{}", r);
        for e in pg.graph.edges() {
            prop_assert_eq!(pg.graph.mult(e.to, e.from, e.label), e.mult);
        }
    }

    #[test]
    fn bileveled_graphs_validate(a in 1i64..4, b in 0i64..4, d in 1i64..4) {
        let p = BiLeveledParams::new(vec![[a, b], [0, d]], 2, 2);
        let g = synth_bileveled(&p).unwrap();
        let r = validate_bileveled(&g, &p);
        prop_assert!(r.all_pass(), "{}", r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn ll_steps_keep_self_duality(
        ell in prop::sample::select(vec![2u64, 3]),
        sym in any::<prop::sample::Index>(),
        moves in prop::collection::vec(any::<u16>(), 1..5),
    ) {
        let syms = SplittingSymbol::supported(ell);
        let sp = space(ell, &syms[sym.index(syms.len())]);
        let mut st = SurfaceState::standard(&sp).unwrap();
        for m in moves {
            let planes = sp.enumerate_isotropic_planes_with(&st.lattice, &st.form()).unwrap();
            st = step_ll(&sp, &st, &planes[m as usize % planes.len()]).unwrap();
            prop_assert_eq!(sp.duality_defect(&st.lattice, &st.form()).unwrap(), Some(0));
        }
    }

    #[test]
    fn lifting_square(sym in symbol(2), first in any::<u16>(), second in any::<u16>()) {
        let sp = space(2, &sym);
        let top = SurfaceState::standard(&sp).unwrap();
        let lam = descend_rm(&sp, &top, first as usize).unwrap();
        let lam = descend_rm(&sp, &lam, second as usize).unwrap();
        let cls = sp.classify_ll_neighbors_with(&lam.lattice, &lam.form()).unwrap();
        let up = sp.rm_predecessor(&lam.lattice).unwrap();
        let form = sp.polarizing_form(&up).unwrap();
        let around = sp.ll_neighbors_with(&up, &form).unwrap();
        for c in cls.iter().filter(|c| c.kind == NeighborKind::RmHorizontal) {
            let lifted = sp.rm_predecessor(&c.neighbor).unwrap();
            prop_assert!(around.iter().any(|g| g.same_class(&lifted)));
        }
    }

    #[test]
    fn going_up_only_balances_upward(
        sym in prop::sample::select(
            SplittingSymbol::supported(2).into_iter().filter(|s| s.real_split == Split::Split).collect::<Vec<_>>()
        ),
        a in 0u32..4, b in 0u32..4, rm in 0u32..2, pick in any::<u16>(),
    ) {
        let sp = space(2, &sym);
        let mut st = SurfaceState::standard(&sp).unwrap();
        for _ in 0..a {
            st = descend_l(&sp, &st, 0, pick as usize).unwrap();
        }
        for _ in 0..b {
            st = descend_l(&sp, &st, 1, pick as usize).unwrap();
        }
        for _ in 0..rm {
            st = descend_rm(&sp, &st, pick as usize).unwrap();
        }
        let rep = going_up(&sp, &st, &GoingUpOptions::default()).unwrap();
        prop_assert_eq!(rep.exceptional.is_some(), !rep.reachable_max);
        let nls: Vec<&Vec<u32>> = rep.path.iter().filter(|s| s.n0 == 0).map(|s| &s.nl).collect();
        for w in nls.windows(2) {
            let d = [w[1][0] as i64 - w[0][0] as i64, w[1][1] as i64 - w[0][1] as i64];
            let lowering = d.iter().all(|&x| x <= 0);
            let balancing = d == [-1, 1] || d == [1, -1];
            prop_assert!(lowering || balancing, "step {:?} -> {:?}", w[0], w[1]);
        }
    }
}
