//! Group construction: built-in families, matrix semidirect products, and
//! spec files.
//!
//!     cargo run --example construct_groups

use group_graphs::construct::{direct_product, make_cyclic, make_dihedral, make_symmetric};
use group_graphs::construct::{semidirect_product, SemidirectView};
use group_graphs::gf::GfMatrix;
use group_graphs::spec::parse_group_spec;

fn main() {
    let c12 = make_cyclic(12).unwrap();
    let d6 = make_dihedral(6).unwrap();
    let s4 = make_symmetric(4).unwrap();
    let s3xc2 = direct_product(&make_dihedral(3).unwrap(), &make_cyclic(2).unwrap()).unwrap();
    for (name, g) in [("C12", &c12), ("D6", &d6), ("S4", &s4), ("S3 x C2", &s3xc2)] {
        println!(
            "{name}: order {}, soluble {}, nilpotent {}, fitting order {}",
            g.order(),
            g.is_soluble(),
            g.is_nilpotent(),
            g.fitting_subgroup().order()
        );
    }

    // the Frobenius group of order 21 as C7 acted on by the scalar 2
    let scalar = GfMatrix::from_rows(7, &[vec![2]]).unwrap();
    let f21 = semidirect_product(7, 1, &[scalar]).unwrap();
    println!(
        "C7 x| C3: order {}, minimal normal subgroup orders {:?}",
        f21.order(),
        f21.minimal_normal_subgroups()
            .unwrap()
            .iter()
            .map(|n| n.order())
            .collect::<Vec<_>>()
    );

    // the same thing via a spec document
    let spec_text = r#"
kind = "matrix-semidirect"
p = 7
dim = 1
matrices = [[[2]]]
"#;
    let from_spec = parse_group_spec(spec_text).unwrap().build().unwrap();
    assert_eq!(from_spec.order(), f21.order());
    println!("spec document builds the same order-{} group", from_spec.order());

    // the shipped diameter-6 witness spec: order 562500 = 5^6 * 36
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/paper_section6.spec");
    let text = std::fs::read_to_string(path).unwrap();
    let witness = parse_group_spec(&text).unwrap().build().unwrap();
    let view = SemidirectView::new(&witness).unwrap();
    println!(
        "shipped witness spec: order {}, |H| = {}, embedded N of order {}",
        witness.order(),
        view.h_order(),
        view.n_subgroup().order()
    );
}
