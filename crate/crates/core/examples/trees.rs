//! Classify every tree up to a given order and count the bad ones; print the
//! vertex classes of a small example.
use sumdistinct::graph::Family;
use sumdistinct::trees::{classify_tree, enumerate_trees, vertex_status};

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(12);
    for n in 1..=max_n {
        let (mut total, mut bad) = (0, 0);
        for t in enumerate_trees(n).unwrap() {
            total += 1;
            if classify_tree(&t).unwrap().is_bad() {
                bad += 1;
            }
        }
        println!("n = {n:>2}: {total:>5} trees, {bad:>3} bad");
    }
    let p7 = Family::Path(7).build().unwrap();
    for v in 0..7 {
        let s = vertex_status(&p7, v).unwrap();
        println!("P7 vertex {v}: S0 = {:?}, S1 = {:?}, {:?}", s.s0, s.s1, s.label);
    }
}
