//! Exhaustive search: first proper weighting, achievable degrees with and
//! without an increment, and conflicts of a given weighting.
use sumdistinct::cactus::cactus_weighting;
use sumdistinct::graph::Family;
use sumdistinct::weighting::{achievable_degree_set, oracle_exists_proper, WeightPair, DEFAULT_EDGE_BUDGET};

fn main() {
    let budget = DEFAULT_EDGE_BUDGET;
    for n in [4, 6, 8, 10] {
        let c = Family::Cycle(n).build().unwrap();
        let found = oracle_exists_proper(&c, WeightPair::ZERO_ONE, &vec![0; n], budget).unwrap();
        match found {
            Some(w) => println!("C{n}: proper, degrees {:?}", w.weighted_degrees()),
            None => println!("C{n}: no proper {{0,1}}-weighting"),
        }
    }
    let p3 = Family::Path(3).build().unwrap();
    let s0 = achievable_degree_set(&p3, 0, WeightPair::ZERO_ONE, &[0, 0, 0], budget).unwrap();
    let s1 = achievable_degree_set(&p3, 0, WeightPair::ZERO_ONE, &[1, 0, 0], budget).unwrap();
    println!("P3 endpoint: {s0:?}, raised {s1:?}");

    let c6 = Family::Cycle(6).build().unwrap();
    let w = cactus_weighting(&c6, 0).unwrap();
    println!(
        "C6 pattern from 0: degrees {:?}, conflicts {:?}",
        w.weighted_degrees(),
        w.conflicts().conflicts
    );
}
