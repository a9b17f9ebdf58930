//! Assemble bad trees and vertex classes from s-expressions, check the claims
//! and split the results back apart.
use sumdistinct::graph::to_edge_list;
use sumdistinct::trees::{bad_splits, construct, ConstructionSpec};

fn main() {
    let specs = [
        "(s1b 1 (bad k2))",
        "(path 1 0 k2 k2)",
        "(minus-from-bad (path 1 0 k2 k2))",
        "(s3 0 (s1b 1 (bad k2)) (s1b 1 (bad k2)))",
        "(bad-from-s1 2 (s1b 2 (bad k2 k2)))",
        "(glue (path 1 0 k2 k2) (bad-from-s1 1 (s1b 1 (bad k2))))",
        "(path 5 0 (cycle 6) k2)",
    ];
    for text in specs {
        let spec: ConstructionSpec = text.parse().unwrap();
        let c = construct(&spec).unwrap();
        println!("{spec}\n  {} vertices, class {:?}", c.graph.n(), c.class);
        if c.graph.is_tree() && c.graph.n() >= 3 {
            println!("  splits: {:?}", bad_splits(&c.graph).unwrap());
        }
    }
    let p4 = construct(&"(minus-from-bad (path 1 0 k2 k2))".parse().unwrap()).unwrap();
    print!("{}", to_edge_list(&p4.graph));
}
