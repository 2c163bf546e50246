//! The five graphs on one group, with their containment hierarchy:
//! commuting within normalising within permuting within soluble, and
//! normalising within Engel.
//!
//!     cargo run --example five_graphs

use group_graphs::collapse::{CyclicSubgroupTable, OrbitDecomposition};
use group_graphs::construct::make_symmetric;
use group_graphs::graph::{
    build_collapsed_graph, connected_components, diameter, Diameter, GraphBuildOptions, GraphKind,
};
use group_graphs::group::FiniteGroup;

fn show(name: &str, g: &FiniteGroup) {
    let table = CyclicSubgroupTable::build(g).unwrap();
    let orbits = OrbitDecomposition::compute(g, &table);
    println!(
        "{name}: {} non-trivial cyclic subgroups, {} conjugation orbits",
        table.count(),
        orbits.orbit_count()
    );
    for kind in GraphKind::ALL {
        let graph =
            build_collapsed_graph(kind, g, &table, &orbits, &GraphBuildOptions::default()).unwrap();
        let comps = connected_components(&graph).len();
        let diam = match diameter(&graph, &orbits) {
            Diameter::Finite(d) => format!("diameter {d}"),
            Diameter::Disconnected { components } => format!("{components} components"),
        };
        println!(
            "  {:<12} {} edges, {}",
            kind.name(),
            graph.edge_count(),
            if comps == 1 { diam } else { format!("disconnected: {diam}") }
        );
    }
}

fn main() {
    show("S3", &make_symmetric(3).unwrap());
    let a4 = FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap();
    show("A4", &a4);
    show("S4", &make_symmetric(4).unwrap());
}
