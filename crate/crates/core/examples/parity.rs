//! Parity subgraphs and the two weightings built from them.
use sumdistinct::graph::{Family, MultiGraph};
use sumdistinct::parity::{f_factor_mod2, local_max_weighting, parity_proper_weighting, ParityTarget};

fn main() {
    let c6 = Family::Cycle(6).build().unwrap();
    let target = ParityTarget::from_fn(6, |v| v == 0 || v == 3);
    let h = f_factor_mod2(&c6, &target).unwrap();
    println!("C6, odd at 0 and 3: degrees {:?}", h.degrees(&c6));

    let c4 = Family::Cycle(4).build().unwrap();
    let w = parity_proper_weighting(&c4, &c4.bipartition().unwrap()).unwrap();
    println!(
        "C4 parity weighting: degrees {:?}, proper {}",
        w.weighted_degrees(),
        w.is_proper()
    );

    // K5,5 minus a perfect matching: both sides odd, every degree 4
    let edges = (0..5).flat_map(|i| (0..5).filter(move |&j| j != i).map(move |j| (i, 5 + j)));
    let g = MultiGraph::from_edges(10, edges).unwrap();
    let w = local_max_weighting(&g, 0).unwrap();
    println!(
        "K5,5 - M from vertex 0: degrees {:?}, proper {}",
        w.weighted_degrees(),
        w.is_proper()
    );
}
