//! Distance from elements to minimal normal subgroups in the normalising
//! graph: at most 3 in every soluble non-Frobenius group.
//!
//!     cargo run --example norm_distance

use group_graphs::collapse::{CyclicSubgroupTable, OrbitDecomposition};
use group_graphs::construct::{direct_product, make_cyclic, make_dihedral, make_symmetric};
use group_graphs::frobenius::detect_frobenius;
use group_graphs::graph::{
    build_collapsed_graph, distance_to_subset, Distance, GraphBuildOptions, GraphKind,
};
use group_graphs::group::FiniteGroup;

fn analyse(name: &str, g: &FiniteGroup) {
    let fs = detect_frobenius(g).unwrap();
    println!(
        "{name}: soluble {}, Frobenius {}",
        g.is_soluble(),
        fs.is_frobenius
    );
    let table = CyclicSubgroupTable::build(g).unwrap();
    let orbits = OrbitDecomposition::compute(g, &table);
    let gamma = build_collapsed_graph(
        GraphKind::Normalising,
        g,
        &table,
        &orbits,
        &GraphBuildOptions::default(),
    )
    .unwrap();
    for n in g.minimal_normal_subgroups().unwrap() {
        let mut worst = 0u32;
        for x in g.elements().skip(1) {
            match distance_to_subset(&gamma, &table, x, &n).unwrap() {
                Distance::Finite(d) => worst = worst.max(d),
                Distance::Unreachable => {
                    println!("  some element cannot reach the order-{} subgroup", n.order());
                    return;
                }
            }
        }
        println!(
            "  minimal normal subgroup of order {}: max distance {worst}",
            n.order()
        );
        if !fs.is_frobenius {
            assert!(worst <= 3);
        }
    }
}

fn main() {
    analyse("S4", &make_symmetric(4).unwrap());
    analyse(
        "S3 x C2",
        &direct_product(&make_dihedral(3).unwrap(), &make_cyclic(2).unwrap()).unwrap(),
    );
    analyse("C30", &make_cyclic(30).unwrap());
    analyse("D6", &make_dihedral(6).unwrap());
}
