//! Compare the polynomial procedures with exhaustive search on three sweeps.
use sumdistinct::cli::{run_crosscheck, CrosscheckFamily};

fn main() {
    for family in [
        CrosscheckFamily::Trees { max_n: 11 },
        CrosscheckFamily::Bridgeless {
            seeds: 200,
            max_copies: 18,
        },
        CrosscheckFamily::Recipes { seeds: 100 },
    ] {
        let r = run_crosscheck(&family, 22);
        println!(
            "{:<10} {:>5} instances, {} disagreements",
            r.family,
            r.instances,
            r.disagreements.len()
        );
    }
}
