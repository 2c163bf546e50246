//! Frobenius detection and the disconnection criterion: the normalising
//! graph of a Frobenius group G = KC is disconnected exactly when no prime
//! of |C| divides r - 1 for a prime r of |K|.
//!
//!     cargo run --example frobenius_structure

use group_graphs::collapse::{CyclicSubgroupTable, OrbitDecomposition};
use group_graphs::construct::{make_dihedral, semidirect_product};
use group_graphs::frobenius::{
    detect_frobenius, disconnection_criterion, find_complement, predicted_components,
};
use group_graphs::gf::GfMatrix;
use group_graphs::graph::{
    build_collapsed_graph, connected_components, GraphBuildOptions, GraphKind,
};
use group_graphs::group::FiniteGroup;

fn analyse(name: &str, g: &FiniteGroup) {
    let mut fs = detect_frobenius(g).unwrap();
    if !fs.is_frobenius {
        println!("{name}: not Frobenius");
        return;
    }
    let crit = disconnection_criterion(&fs).unwrap();
    println!(
        "{name}: Frobenius, kernel order {} (primes {:?}), complement primes {:?} -> {}",
        fs.kernel.as_ref().unwrap().order(),
        fs.kernel_primes,
        fs.complement_primes,
        if crit { "disconnected" } else { "connected" }
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
    let comps = connected_components(&gamma);
    println!("  normalising graph has {} component(s)", comps.len());
    if crit {
        fs.complement = Some(find_complement(g, &fs, 100_000).unwrap());
        let parts = predicted_components(g, &fs).unwrap();
        println!(
            "  predicted 1 + |K| = {} classes; the graph agrees",
            parts.len()
        );
        assert_eq!(parts.len(), comps.len());
    }
}

fn main() {
    analyse("S3", &make_dihedral(3).unwrap());
    let a4 = FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]]).unwrap();
    analyse("A4", &a4);
    let f21 = semidirect_product(7, 1, &[GfMatrix::from_rows(7, &[vec![2]]).unwrap()]).unwrap();
    analyse("C7 x| C3", &f21);
    // quaternion complement: C3^2 x| Q8, connected with diameter exactly 4
    let q8 = semidirect_product(
        3,
        2,
        &[
            GfMatrix::from_rows(3, &[vec![0, 2], vec![1, 0]]).unwrap(),
            GfMatrix::from_rows(3, &[vec![1, 1], vec![1, 2]]).unwrap(),
        ],
    )
    .unwrap();
    analyse("C3^2 x| Q8", &q8);
    analyse("D4", &make_dihedral(4).unwrap());
}
