//! Runs the gadget equivalence check for the chosen families (default: all)
//! on the worked example and on the smallest unsatisfiable instance.
//!
//! `cargo run --release --example verify_families -- T1 T3`

use std::time::Instant;

use boolnet::reductions::{brute_force_model, build_gadget, example_instance, validate_instance, verify_output, Family};
use boolnet::{NetType, DEFAULT_BUDGET};

fn main() {
    let mut families: Vec<Family> = std::env::args().skip(1).map(|a| a.parse().expect("family T1..T7")).collect();
    if families.is_empty() {
        families = Family::ALL.to_vec();
    }
    let sat = example_instance();
    let unsat = validate_instance(&[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
    for fam in families {
        let omega = fam.default_omega().unwrap_or(NetType::EMPTY);
        for phi in [&sat, &unsat] {
            let start = Instant::now();
            let g = match build_gadget(fam, phi, Some(omega)) {
                Ok(g) => g,
                Err(e) => {
                    println!("{fam}: {e}");
                    continue;
                }
            };
            let v = verify_output(&g, phi, brute_force_model(phi).unwrap(), DEFAULT_BUDGET);
            println!(
                "{fam} m={} |S|={} |E|={}: {v:?} ({:.2?})",
                phi.num_vars(),
                g.ts.num_states(),
                g.ts.num_events(),
                start.elapsed()
            );
        }
    }
}
