//! The cheap half of the diameter-6 reproduction: builds the order-562,500
//! group and checks every structural claim that does not need the full
//! graph. Runs in seconds; see `diameter_six_full` for the diameters.
//!
//!     cargo run --release --example diameter_six_local

use group_graphs::diameter_six::{build_witness_group, run_local_phase};

fn main() {
    let g = build_witness_group();
    match run_local_phase(&g) {
        Ok(local) => {
            println!("{}", serde_json::to_string_pretty(&local).unwrap());
            println!(
                "local claims pass in {:.2}s: orders (t1, t2, x) = ({}, {}, {}), |H| = {}, \
                 fixed spaces of x and x^3 trivial, no permuting edges from H to its translate \
                 or from <x> to N",
                local.seconds, local.order_t1, local.order_t2, local.order_x, local.h_order
            );
        }
        Err(e) => {
            eprintln!("claim failed: {e}");
            std::process::exit(1);
        }
    }
}
