//! Decide the {0,1}- and {1,2}-property for a few named graphs and show which
//! procedure settled each one.
use sumdistinct::cli::{run_classify, ClassifyOptions};
use sumdistinct::graph::Family;
use sumdistinct::weighting::WeightPair;

fn main() {
    let opts = ClassifyOptions::default();
    let named = [
        ("K2", Family::Path(2)),
        ("P5", Family::Path(5)),
        ("P6", Family::Path(6)),
        ("C6", Family::Cycle(6)),
        ("C8", Family::Cycle(8)),
        ("star K1,4", Family::Star(5)),
        ("two hexagons and a path", Family::LuExample),
    ];
    for (name, family) in named {
        let g = family.build().unwrap();
        for pair in [WeightPair::ZERO_ONE, WeightPair::ONE_TWO] {
            let v = run_classify(&g, pair, &opts);
            let has = match v.has_property {
                Some(true) => "yes",
                Some(false) => "no",
                None => "unknown",
            };
            println!("{name:<24} {pair}: {has:<7} by {}", v.method.name());
        }
    }
}
