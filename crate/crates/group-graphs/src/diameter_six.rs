//! The diameter-6 witness: a soluble group of order 562,500 whose
//! normalising and permuting graphs are connected with diameter exactly 6.
//!
//! The group is `N x| H` with `N = GF(5)^6` and `H = <t1, t2, x>` inside
//! GL(6, 5), where `t1` and `t2` are diagonal involutions and `x` is an
//! order-9 matrix acting fixed-point-freely on N. The local phase checks all
//! the cheap structural facts (orders, fixed spaces, the missing edges
//! between H and its translate `H^w`), the diameter phase builds both graphs
//! on the 142,031 cyclic subgroups and measures exact diameters.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::collapse::{CyclicSubgroupTable, OrbitDecomposition};
use crate::construct::{semidirect_product, SemidirectView};
use crate::gf::{fixed_space, GfMatrix};
use crate::graph::{
    self, adjacent, bfs_with_parents, build_collapsed_graph, connected_components, Diameter,
    Eccentricity, GraphBuildOptions, GraphError, GraphKind,
};
use crate::group::{ElementId, FiniteGroup};
use crate::verify::oracle;

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("claim {claim} failed: {witness}")]
    ClaimFailed { claim: String, witness: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

const P: u64 = 5;
const DIM: usize = 6;

fn mat(rows: [[i64; 6]; 6]) -> GfMatrix {
    let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
    GfMatrix::from_rows(P, &rows).expect("constant matrix")
}

/// The first diagonal involution.
pub fn t1() -> GfMatrix {
    mat([
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [0, 0, -1, 0, 0, 0],
        [0, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, -1, 0],
        [0, 0, 0, 0, 0, -1],
    ])
}

/// The second diagonal involution.
pub fn t2() -> GfMatrix {
    mat([
        [-1, 0, 0, 0, 0, 0],
        [0, -1, 0, 0, 0, 0],
        [0, 0, -1, 0, 0, 0],
        [0, 0, 0, -1, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
    ])
}

/// The order-9 generator acting fixed-point-freely on N.
pub fn x_matrix() -> GfMatrix {
    mat([
        [0, 0, -1, 1, 0, 0],
        [0, 0, -1, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, 0, 1],
        [1, 0, 0, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
    ])
}

/// The cube of `x`, as displayed; the build re-derives it and checks agreement.
pub fn x_cubed_expected() -> GfMatrix {
    mat([
        [-1, 1, 0, 0, 0, 0],
        [-1, 0, 0, 0, 0, 0],
        [0, 0, -1, 1, 0, 0],
        [0, 0, -1, 0, 0, 0],
        [0, 0, 0, 0, -1, 1],
        [0, 0, 0, 0, -1, 0],
    ])
}

/// Builds the order-562,500 witness group.
pub fn build_witness_group() -> FiniteGroup {
    semidirect_product(P, DIM, &[t1(), t2(), x_matrix()]).expect("constant matrices are invertible")
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalPhase {
    pub group_order: usize,
    pub h_order: usize,
    pub order_t1: usize,
    pub order_t2: usize,
    pub order_x: usize,
    pub fixed_dim_t1: usize,
    pub fixed_dim_x: usize,
    pub fixed_dim_x_cubed: usize,
    pub x_cubed_matches_displayed: bool,
    pub normaliser_of_x_in_h_order: usize,
    pub psi_edges_h_to_h_translate: usize,
    pub psi_edges_x_to_n: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct DiameterPhase {
    pub vertex_count: usize,
    pub orbit_count: usize,
    pub gamma_edges: usize,
    pub psi_edges: usize,
    pub gamma_components: usize,
    pub psi_components: usize,
    pub gamma_diameter: u32,
    pub psi_diameter: u32,
    /// Canonical generator elements along one normalising-graph geodesic of
    /// length 6, endpoints included.
    pub witness_path_elements: Vec<u32>,
    pub witness_revalidated: bool,
    /// Sampled vertex pairs per graph whose built adjacency was re-checked
    /// against the raw oracle.
    pub adjacency_spot_checks: usize,
    pub table_seconds: f64,
    pub gamma_seconds: f64,
    pub psi_seconds: f64,
    pub distance_seconds: f64,
}

/// Re-checks a deterministic sample of vertex pairs of a built graph against
/// the raw adjacency oracle. The graphs here are built by orbit transport;
/// this pins them directly to the definitions at full scale.
fn spot_check_adjacency(
    g: &FiniteGroup,
    table: &CyclicSubgroupTable,
    graph: &graph::CollapsedGraph,
    samples: usize,
) -> Result<(), WitnessError> {
    let v = graph.vertex_count() as u64;
    let mut s = 0x9e3779b97f4a7c15u64;
    let mut next = || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((s >> 17) % v) as u32
    };
    for _ in 0..samples {
        let a = next();
        let b = next();
        if a == b {
            continue;
        }
        let built = graph.has_edge(a, b);
        let oracle = adjacent(graph.kind(), g, table, a, b);
        if built != oracle {
            return Err(WitnessError::ClaimFailed {
                claim: format!("{}-adjacency-spot-check", graph.kind()),
                witness: format!("pair ({a}, {b}): built {built}, oracle {oracle}"),
            });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Serialize)]
pub struct DiameterSixReport {
    pub group_order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub local: Option<LocalPhase>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diameters: Option<DiameterPhase>,
}

fn claim(ok: bool, name: &str, witness: impl FnOnce() -> String) -> Result<(), WitnessError> {
    if ok {
        Ok(())
    } else {
        Err(WitnessError::ClaimFailed {
            claim: name.to_string(),
            witness: witness(),
        })
    }
}

/// Checks every structural fact that does not need the full graph: element
/// orders, fixed spaces, the normaliser of `<x>` in H, and the absence of
/// permuting edges from H to `H^w` and from `<x>` to N. Any failure aborts
/// with the offending witness.
pub fn run_local_phase(g: &FiniteGroup) -> Result<LocalPhase, WitnessError> {
    let start = Instant::now();
    let view = SemidirectView::new(g).expect("witness group is a semidirect product");
    claim(g.order() == 562_500, "group-order", || {
        format!("order is {}", g.order())
    })?;
    claim(view.h_order() == 36, "h-order", || {
        format!("|H| is {}", view.h_order())
    })?;

    let t1m = t1();
    let t2m = t2();
    let xm = x_matrix();
    let o_t1 = t1m.order().expect("invertible") as usize;
    let o_t2 = t2m.order().expect("invertible") as usize;
    let o_x = xm.order().expect("invertible") as usize;
    claim(o_t1 == 2 && o_t2 == 2, "t1-t2-involutions", || {
        format!("orders ({o_t1}, {o_t2})")
    })?;
    claim(o_x == 9, "x-order-9", || format!("order {o_x}"))?;
    // matrix orders agree with element orders of (0, h)
    let x_idx = view.h_index_of(&xm).expect("x generates H");
    let x_elem = view.element(&[0; 6], x_idx);
    claim(
        g.element_order(x_elem) == 9,
        "x-element-order",
        || format!("element order {}", g.element_order(x_elem)),
    )?;

    let fixed_t1 = fixed_space(&t1m).len();
    let fixed_x = fixed_space(&xm).len();
    let x3 = xm.pow(3);
    let x3_matches = x3 == x_cubed_expected();
    let fixed_x3 = fixed_space(&x3).len();
    claim(fixed_x == 0, "x-fixed-point-free", || {
        format!("fixed space dimension {fixed_x}")
    })?;
    claim(fixed_x3 == 0, "x-cubed-fixed-point-free", || {
        format!("fixed space dimension {fixed_x3}")
    })?;
    claim(x3_matches, "x-cubed-displayed", || {
        format!("computed {x3:?}")
    })?;
    claim(fixed_t1 == 2, "t1-fixed-space-dim-2", || {
        format!("fixed space dimension {fixed_t1}")
    })?;

    // N_H(<x>) contains neither involutions nor order-6 elements
    let x_powers: Vec<GfMatrix> = (1..=9).map(|k| xm.pow(k)).collect();
    let mut normaliser_orders = Vec::new();
    for h_idx in 0..view.h_order() {
        let h = view.h_matrix(h_idx).clone();
        let hi = h.inverse().expect("invertible");
        let conj = hi.mul(&xm).expect("shape").mul(&h).expect("shape");
        if x_powers.contains(&conj) {
            normaliser_orders.push(h.order().expect("invertible"));
        }
    }
    let bad = normaliser_orders.iter().any(|&o| o == 2 || o == 6);
    claim(!bad, "normaliser-of-x-excludes-involutions", || {
        format!("normaliser element orders {normaliser_orders:?}")
    })?;

    // w is the sum of the standard basis vectors; H^w is H conjugated by
    // (w, 1)
    let w_elem = view.element(&[1; 6], 0);
    let h_elems: Vec<ElementId> = (1..view.h_order())
        .map(|i| view.element(&[0; 6], i))
        .collect();
    let hw_elems: Vec<ElementId> = h_elems.iter().map(|&e| g.conjugate(e, w_elem)).collect();
    let edges_h_hw: usize = h_elems
        .par_iter()
        .map(|&a| {
            hw_elems
                .iter()
                .filter(|&&b| a != b && oracle::elements_adjacent(GraphKind::Permuting, g, a, b))
                .count()
        })
        .sum();
    claim(edges_h_hw == 0, "no-permuting-edge-h-to-h-translate", || {
        format!("{edges_h_hw} permuting edges found")
    })?;

    // no permuting edge between non-trivial powers of x and non-trivial
    // elements of N
    let n_sub = view.n_subgroup();
    let x_verts: Vec<ElementId> = (1..9).map(|k| g.power(x_elem, k)).collect();
    let edges_x_n: usize = n_sub
        .nontrivial_elements()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&n| {
            x_verts
                .iter()
                .filter(|&&xk| oracle::elements_adjacent(GraphKind::Permuting, g, xk, n))
                .count()
        })
        .sum();
    claim(edges_x_n == 0, "no-permuting-edge-x-to-n", || {
        format!("{edges_x_n} permuting edges found")
    })?;

    Ok(LocalPhase {
        group_order: g.order(),
        h_order: view.h_order(),
        order_t1: o_t1,
        order_t2: o_t2,
        order_x: o_x,
        fixed_dim_t1: fixed_t1,
        fixed_dim_x: fixed_x,
        fixed_dim_x_cubed: fixed_x3,
        x_cubed_matches_displayed: x3_matches,
        normaliser_of_x_in_h_order: normaliser_orders.len(),
        psi_edges_h_to_h_translate: edges_h_hw,
        psi_edges_x_to_n: edges_x_n,
        seconds: start.elapsed().as_secs_f64(),
    })
}

/// Builds both graphs and measures exact diameters, extracting and
/// re-validating one normalising-graph geodesic of maximal length.
pub fn run_diameter_phase(
    g: &FiniteGroup,
    opts: &GraphBuildOptions,
) -> Result<DiameterPhase, WitnessError> {
    let t0 = Instant::now();
    let table = CyclicSubgroupTable::build(g).expect("non-trivial group");
    let orbits = OrbitDecomposition::compute(g, &table);
    let table_seconds = t0.elapsed().as_secs_f64();
    if opts.progress {
        eprintln!(
            "table: {} cyclic subgroups, {} orbits ({table_seconds:.1}s)",
            table.count(),
            orbits.orbit_count()
        );
    }

    let t0 = Instant::now();
    let gamma_opts = GraphBuildOptions {
        checkpoint: opts.checkpoint.as_ref().map(|p| p.with_extension("gamma.ck")),
        ..opts.clone()
    };
    let gamma = build_collapsed_graph(GraphKind::Normalising, g, &table, &orbits, &gamma_opts)?;
    let gamma_seconds = t0.elapsed().as_secs_f64();
    if opts.progress {
        eprintln!("normalising graph: {} edges ({gamma_seconds:.1}s)", gamma.edge_count());
    }

    let t0 = Instant::now();
    let psi_opts = GraphBuildOptions {
        checkpoint: opts.checkpoint.as_ref().map(|p| p.with_extension("psi.ck")),
        ..opts.clone()
    };
    let psi = build_collapsed_graph(GraphKind::Permuting, g, &table, &orbits, &psi_opts)?;
    let psi_seconds = t0.elapsed().as_secs_f64();
    if opts.progress {
        eprintln!("permuting graph: {} edges ({psi_seconds:.1}s)", psi.edge_count());
    }

    const SPOT_CHECKS: usize = 20_000;
    spot_check_adjacency(g, &table, &gamma, SPOT_CHECKS)?;
    spot_check_adjacency(g, &table, &psi, SPOT_CHECKS)?;

    let t0 = Instant::now();
    let gamma_components = connected_components(&gamma).len();
    let psi_components = connected_components(&psi).len();
    let gamma_diameter = match graph::diameter(&gamma, &orbits) {
        Diameter::Finite(d) => d,
        Diameter::Disconnected { components } => {
            return Err(WitnessError::ClaimFailed {
                claim: "gamma-connected".into(),
                witness: format!("{components} components"),
            })
        }
    };
    let psi_diameter = match graph::diameter(&psi, &orbits) {
        Diameter::Finite(d) => d,
        Diameter::Disconnected { components } => {
            return Err(WitnessError::ClaimFailed {
                claim: "psi-connected".into(),
                witness: format!("{components} components"),
            })
        }
    };

    // extract one geodesic realising the normalising diameter
    let far_rep = orbits
        .representatives()
        .par_iter()
        .copied()
        .find_any(|&rep| matches!(graph::eccentricity(&gamma, rep), Eccentricity::Finite(d) if d == gamma_diameter))
        .expect("some representative realises the diameter");
    let (dist, parents) = bfs_with_parents(&gamma, far_rep);
    let target = (0..gamma.vertex_count() as u32)
        .find(|&v| dist.distance(v) == gamma_diameter)
        .expect("diameter is attained");
    let mut path_ids = vec![target];
    let mut cur = target;
    while cur != far_rep {
        cur = parents[cur as usize];
        path_ids.push(cur);
    }
    path_ids.reverse();
    let witness_revalidated = path_ids.len() as u32 == gamma_diameter + 1
        && path_ids
            .windows(2)
            .all(|w| adjacent(GraphKind::Normalising, g, &table, w[0], w[1]));
    let witness_path_elements: Vec<u32> = path_ids
        .iter()
        .map(|&v| table.canonical_generator(v).0)
        .collect();
    let distance_seconds = t0.elapsed().as_secs_f64();

    Ok(DiameterPhase {
        vertex_count: table.count(),
        orbit_count: orbits.orbit_count(),
        gamma_edges: gamma.edge_count(),
        psi_edges: psi.edge_count(),
        gamma_components,
        psi_components,
        gamma_diameter,
        psi_diameter,
        witness_path_elements,
        witness_revalidated,
        adjacency_spot_checks: SPOT_CHECKS,
        table_seconds,
        gamma_seconds,
        psi_seconds,
        distance_seconds,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Local,
    Diameters,
    All,
}

impl std::str::FromStr for Phase {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "local" => Ok(Phase::Local),
            "diameters" => Ok(Phase::Diameters),
            "all" => Ok(Phase::All),
            _ => Err(format!("unknown phase {s:?} (expected local|diameters|all)")),
        }
    }
}

/// Runs the requested phases against a fresh copy of the witness group.
pub fn run(phase: Phase, opts: &GraphBuildOptions) -> Result<DiameterSixReport, WitnessError> {
    let g = build_witness_group();
    let local = if matches!(phase, Phase::Local | Phase::All) {
        Some(run_local_phase(&g)?)
    } else {
        None
    };
    let diameters = if matches!(phase, Phase::Diameters | Phase::All) {
        Some(run_diameter_phase(&g, opts)?)
    } else {
        None
    };
    Ok(DiameterSixReport {
        group_order: g.order(),
        local,
        diameters,
    })
}
