//! Prints the first unsatisfiable cubic one-in-three instance for each
//! clause count given on the command line (default: 4 and 6), together with
//! the oracle's answer for every instance visited on the way.

use boolnet::reductions::{brute_force_model, for_each_instance};

fn main() {
    let mut sizes: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    if sizes.is_empty() {
        sizes = vec![4, 6];
    }
    for m in sizes {
        println!("# m = {m}");
        let mut visited = 0;
        let mut found = false;
        for_each_instance(m, |phi| {
            visited += 1;
            let clauses: Vec<String> = phi.clauses().iter().map(|c| format!("{}{}{}", c[0], c[1], c[2])).collect();
            match brute_force_model(phi).expect("within oracle limit") {
                Some(model) => {
                    println!("# {visited}: {} satisfiable, model {model:?}", clauses.join(" "));
                    true
                }
                None => {
                    println!("# {visited}: {} unsatisfiable", clauses.join(" "));
                    print!("{phi}");
                    found = true;
                    false
                }
            }
        });
        if !found {
            println!("# no unsatisfiable instance among {visited}");
        }
    }
}
