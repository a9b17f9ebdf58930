//! Build an odd multi-cactus from a recipe, hide its labels, recognise it
//! again and print the certificate and colouring.
use sumdistinct::cactus::{build_from_recipe, cactus_weighting, recognize, CactusRecipe, CycleSpec};
use sumdistinct::graph::to_edge_list;

fn main() {
    let recipe = CactusRecipe::Cycles(vec![
        CycleSpec::root(6).with_multiplicity(0, 2),
        CycleSpec::child(10, 0, 2),
        CycleSpec::child(6, 1, 4).with_multiplicity(2, 3),
    ]);
    print!("recipe:\n{}", recipe.to_text());
    let g = build_from_recipe(&recipe).unwrap();
    let perm: Vec<usize> = (0..g.n()).map(|v| (v * 7 + 3) % g.n()).collect();
    let shuffled = g.relabel(&perm);
    print!("shuffled graph:\n{}", to_edge_list(&shuffled));

    let cert = recognize(&shuffled).expect("still an odd multi-cactus");
    assert!(cert.verify(&shuffled));
    print!("certificate:\n{}", cert.to_text());
    let colouring = cert.colouring(&shuffled);
    let green: Vec<_> = colouring.green_pairs().map(|p| shuffled.pair(p).key()).collect();
    println!("green pairs: {green:?}");

    // the degree pattern used to extend weightings cycle by cycle
    let simple = build_from_recipe(&CactusRecipe::Cycles(vec![
        CycleSpec::root(6),
        CycleSpec::child(6, 0, 2),
    ]))
    .unwrap();
    let w = cactus_weighting(&simple, 0).unwrap();
    println!("pasted hexagons, start 0: degrees {:?}", w.weighted_degrees());
}
