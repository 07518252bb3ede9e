use std::fs;
use std::io::Write;
use std::path::Path;

use isolat::goingup::{descend_l, descend_rm, going_up, parity, GoingUpOptions, SurfaceState};
use isolat::graph::{
    explore, paste_ll_graph, synth_bileveled, synth_l_volcano, synth_polarized, validate_bileveled, validate_explored,
    validate_pasted, validate_polarized, validate_volcano, BiLeveledParams, ExploreKind, LeveledGraph,
    PolarizedParams, ValidationReport, VolcanoParams,
};
use isolat::lattice::tally;
use isolat::oracle::run_suite;
use isolat::{Split, SplittingSymbol, SymplecticSpace};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{AlgebraConfig, NeighborKindConfig, RunConfig, StartConfig, SynthConfig, VolcanoConfig};
use crate::export::{from_json, report_json, to_dot, to_json};
use crate::CliError;

fn write_file(dir: &Path, name: &str, text: &str) -> Result<(), CliError> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), text)?;
    Ok(())
}

/// Descends to the configured start; which neighbor to take is drawn from `rng`.
fn start_state(space: &SymplecticSpace, start: &StartConfig, rng: &mut ChaCha8Rng) -> Result<SurfaceState, CliError> {
    let n = space.algebra().primes().len();
    if !start.conductor.is_empty() && start.conductor.len() != n {
        return Err(CliError::config(format!("start conductor needs {n} exponents")));
    }
    let mut st = SurfaceState::standard(space)?;
    for (i, &a) in start.conductor.iter().enumerate() {
        for _ in 0..a {
            st = descend_l(space, &st, i, rng.gen_range(0..1 << 16))?;
        }
    }
    for _ in 0..start.rm_level {
        st = descend_rm(space, &st, rng.gen_range(0..1 << 16))?;
    }
    Ok(st)
}

fn finish_validation(out: &mut dyn Write, dir: &Path, report: &ValidationReport) -> Result<(), CliError> {
    let text = report.to_string();
    write_file(dir, "validation.txt", &text)?;
    write!(out, "{text}")?;
    if report.all_pass() {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().iter().map(|c| c.name.as_str()).collect();
        Err(CliError::validation(format!("failed clauses: {}", names.join(", "))))
    }
}

fn write_graph(dir: &Path, g: &LeveledGraph) -> Result<(), CliError> {
    write_file(dir, "graph.dot", &to_dot(g))?;
    write_file(dir, "graph.json", &to_json(g))
}

pub fn neighbors(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let space = SymplecticSpace::new(cfg.algebra.build()?);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let st = start_state(&space, &cfg.neighbors.start, &mut rng)?;
    let level = space.real_level(&st.lattice)?;
    writeln!(
        out,
        "ell={} {}  start order {}",
        space.ell(),
        space.algebra().symbol(),
        space.descriptor(&st.lattice)?
    )?;
    let nc = &cfg.neighbors;
    let cls = match nc.kind {
        NeighborKindConfig::Ll => space.classify_ll_neighbors_with(&st.lattice, &st.form())?,
        NeighborKindConfig::L => {
            if nc.prime >= space.algebra().primes().len() {
                return Err(CliError::config(format!("no real prime with index {}", nc.prime)));
            }
            space.classify_l_neighbors(&st.lattice, nc.prime)?
        }
    };
    let (a, h, d) = tally(&cls);
    writeln!(out, "total:{}", cls.len())?;
    if nc.kind == NeighborKindConfig::Ll && level == 0 {
        writeln!(out, "rm-preserving:{h} rm-descending:{d}")?;
    } else {
        writeln!(out, "ascending:{a} horizontal:{h} descending:{d}")?;
    }
    for (i, c) in cls.iter().enumerate() {
        writeln!(out, "{i:>4}  {:<10}  {}", c.kind.name(), c.resulting_order)?;
    }

    if nc.explore {
        let kind = match nc.kind {
            NeighborKindConfig::Ll => ExploreKind::LL,
            NeighborKindConfig::L => ExploreKind::LNeighbors(vec![nc.prime]),
        };
        let ex = explore(&space, &st.lattice, kind, cfg.depth())?;
        let dir = cfg.out_dir();
        write_graph(&dir, &ex.graph)?;
        writeln!(out, "explored {} vertices to depth {}", ex.graph.vertex_count(), cfg.depth())?;
        finish_validation(out, &dir, &validate_explored(&space, &ex)?)?;
    }
    Ok(())
}

fn volcano_params(v: &VolcanoConfig, depth: u32) -> VolcanoParams {
    let mut p = VolcanoParams::new(v.norm_l, v.symbol_in_k, v.surface_cycle_length, depth);
    p.unit_indices = v.unit_indices.clone();
    p.l_class_orders = v.l_class_orders.clone();
    p
}

pub fn synth(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let depth = cfg.depth();
    let dir = cfg.out_dir();
    let model = cfg.synth.as_ref().ok_or_else(|| CliError::config("synth needs a \"synth\" block"))?;
    let (g, report) = match model {
        SynthConfig::Volcano(v) => {
            let p = volcano_params(v, depth);
            let g = synth_l_volcano(&p)?;
            let r = validate_volcano(&g, &p);
            (g, r)
        }
        SynthConfig::Polarized(pc) => {
            let mut p = PolarizedParams::new(volcano_params(&pc.volcano, depth), pc.doubling);
            p.u_ratios = pc.u_ratios.clone();
            let pg = synth_polarized(&p)?;
            if pg.model_grade {
                writeln!(out, "note: unit ratios other than 1 make this graph a model only")?;
            }
            let r = validate_polarized(&pg.graph, &p);
            (pg.graph, r)
        }
        SynthConfig::Bileveled(b) => {
            let mut p = BiLeveledParams::new(b.relations.clone(), b.ell, depth);
            if let Some([s1, s2]) = &b.symbols {
                p.symbols = [Split::parse(s1)?, Split::parse(s2)?];
            }
            let g = synth_bileveled(&p)?;
            let r = validate_bileveled(&g, &p);
            (g, r)
        }
        SynthConfig::Paste(pc) => {
            let text = fs::read_to_string(&pc.input)
                .map_err(|e| CliError::config(format!("cannot read {}: {e}", pc.input.display())))?;
            let input = from_json(&text)?;
            let real = Split::parse(&pc.real_split)?;
            let g = paste_ll_graph(&input, real, pc.ell)?;
            let deepest = input.vertices().iter().flat_map(|v| v.levels.iter().copied()).max().unwrap_or(0);
            let r = validate_pasted(&g, real, pc.ell, deepest);
            (g, r)
        }
    };
    write_graph(&dir, &g)?;
    let sizes: Vec<String> = (0..g.vertices().first().map_or(1, |v| v.levels.len()))
        .map(|axis| format!("{:?}", g.level_sizes(axis)))
        .collect();
    writeln!(out, "{} vertices, {} edges, level sizes {}", g.vertex_count(), g.edge_count(), sizes.join(" x "))?;
    finish_validation(out, &dir, &report)
}

fn goup_options(cfg: &RunConfig, space: &SymplecticSpace) -> GoingUpOptions {
    let gc = &cfg.goup;
    GoingUpOptions {
        allow_cyclic: gc.allow_cyclic,
        l_principal_narrow: gc.l_principal_narrow,
        beta: gc.beta.as_ref().map(|b| (space.algebra().element_i64(b.coords), b.e)),
        gamma_exponent: gc.gamma_exponent,
    }
}

#[derive(Serialize)]
struct MatrixRow {
    symbol: String,
    conductor: Vec<u32>,
    parity: u8,
    reachable_max: bool,
    exceptional: Option<&'static str>,
    path_length: usize,
}

/// Start conductors covering both parities for each real splitting.
fn matrix_starts(real: Split) -> Vec<Vec<u32>> {
    match real {
        Split::Split => vec![vec![1, 1], vec![2, 0], vec![1, 0], vec![0, 1], vec![2, 1]],
        Split::Ramified => vec![vec![2], vec![1], vec![3]],
        Split::Inert => vec![vec![1], vec![2]],
    }
}

fn goup_matrix(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let base: &AlgebraConfig = &cfg.algebra;
    let mut rows = Vec::new();
    writeln!(out, "{:<22} {:<10} {:<6} outcome", "symbol", "conductor", "parity")?;
    for sym in SplittingSymbol::supported(base.ell) {
        let space = SymplecticSpace::new(base.build_with(&sym)?);
        let opts = goup_options(cfg, &space);
        for f in matrix_starts(sym.real_split) {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let st = start_state(&space, &StartConfig { conductor: f.clone(), rm_level: 1 }, &mut rng)?;
            let par = parity(&space, &st)?;
            let rep = going_up(&space, &st, &opts)?;
            let outcome = match rep.exceptional {
                None => "maximal".to_string(),
                Some(c) => {
                    let orders: Vec<String> = rep.largest_orders.iter().map(|o| o.to_string()).collect();
                    format!("{} (largest: {})", c.name(), orders.join("; "))
                }
            };
            writeln!(out, "{:<22} {:<10} {:<6} {outcome}", sym.to_string(), format!("{f:?}"), par)?;
            rows.push(MatrixRow {
                symbol: sym.to_string(),
                conductor: f,
                parity: par,
                reachable_max: rep.reachable_max,
                exceptional: rep.exceptional.map(|c| c.name()),
                path_length: rep.path.len(),
            });
        }
    }
    let mut text = serde_json::to_string_pretty(&rows).expect("serializable");
    text.push('\n');
    write_file(&cfg.out_dir(), "matrix.json", &text)
}

pub fn goup(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    if cfg.matrix {
        return goup_matrix(cfg, out);
    }
    let space = SymplecticSpace::new(cfg.algebra.build()?);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let st = start_state(&space, &cfg.goup.start, &mut rng)?;
    let rep = going_up(&space, &st, &goup_options(cfg, &space))?;
    write_file(&cfg.out_dir(), "report.json", &report_json(&rep))?;
    writeln!(out, "start order {}  parity {}", space.descriptor(&st.lattice)?, parity(&space, &st)?)?;
    writeln!(out, "steps: {}", rep.path.len())?;
    writeln!(out, "reachable_max: {}", rep.reachable_max)?;
    if let Some(c) = rep.exceptional {
        let orders: Vec<String> = rep.largest_orders.iter().map(|o| o.to_string()).collect();
        writeln!(out, "exceptional: {}  largest reachable: {}", c.name(), orders.join("; "))?;
    }
    Ok(())
}

pub fn oracle(cfg: &RunConfig, out: &mut dyn Write) -> Result<(), CliError> {
    let ells = if cfg.oracle.ells.is_empty() { vec![cfg.algebra.ell] } else { cfg.oracle.ells.clone() };
    let mut failed = 0;
    for ell in ells {
        if ell != 2 && ell != 3 {
            return Err(CliError::config(format!("oracle suites run at ell 2 or 3, not {ell}")));
        }
        let prec = AlgebraConfig { ell, ..cfg.algebra.clone() }.precision()?;
        for c in run_suite(ell, prec, cfg.oracle.fault)? {
            writeln!(out, "{} {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail)?;
            failed += !c.pass as usize;
        }
    }
    if failed > 0 {
        return Err(CliError::oracle(format!("{failed} oracle checks failed")));
    }
    Ok(())
}

