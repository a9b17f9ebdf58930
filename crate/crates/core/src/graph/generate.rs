use super::{GraphError, MultiGraph, Side};

/// SplitMix64 generator. Every random construction in the crate draws from
/// this so that seeds reproduce across implementations; bounded draws use
/// `next_u64() % bound`.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-ish value in `0..bound`; `bound` must be positive.
    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound as u64) as usize
    }

    /// Value in `lo..=hi`.
    pub fn range(&mut self, lo: usize, hi: usize) -> usize {
        lo + self.below(hi - lo + 1)
    }

    pub fn coin(&mut self) -> bool {
        self.next_u64() & 1 == 1
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len())]
    }
}

/// Named instance families.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Path on `n` vertices.
    Path(usize),
    /// Cycle on `n >= 3` vertices.
    Cycle(usize),
    /// Star `K_{1,n-1}` with centre 0.
    Star(usize),
    /// Uniform labelled tree from a random Prüfer sequence.
    RandomTree { n: usize, seed: u64 },
    /// Connected simple bipartite bridgeless graph with `n` vertices and `m`
    /// edges grown by ears from an even cycle.
    RandomBridgelessBipartite { n: usize, m: usize, seed: u64 },
    /// Two 6-cycles joined by a path of length 3.
    LuExample,
}

impl Family {
    pub fn build(&self) -> Result<MultiGraph, GraphError> {
        match *self {
            Family::Path(n) => {
                need(n >= 1, "path needs n >= 1")?;
                MultiGraph::from_edges(n, (1..n).map(|i| (i - 1, i)))
            }
            Family::Cycle(n) => {
                need(n >= 3, "cycle needs n >= 3")?;
                MultiGraph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::Star(n) => {
                need(n >= 1, "star needs n >= 1")?;
                MultiGraph::from_edges(n, (1..n).map(|i| (0, i)))
            }
            Family::RandomTree { n, seed } => {
                need(n >= 1, "tree needs n >= 1")?;
                Ok(random_tree(n, &mut SplitMix64::new(seed)))
            }
            Family::RandomBridgelessBipartite { n, m, seed } => {
                random_bridgeless_bipartite(n, m, &mut SplitMix64::new(seed))
            }
            Family::LuExample => {
                let mut edges: Vec<(usize, usize)> = Vec::new();
                for base in [0, 6] {
                    edges.extend((0..6).map(|i| (base + i, base + (i + 1) % 6)));
                }
                edges.extend([(0, 12), (12, 13), (13, 6)]);
                MultiGraph::from_edges(14, edges)
            }
        }
    }
}

fn need(ok: bool, msg: &str) -> Result<(), GraphError> {
    if ok {
        Ok(())
    } else {
        Err(GraphError::InvalidParameters(msg.to_string()))
    }
}

/// Random labelled tree on `n` vertices via a Prüfer sequence.
pub(crate) fn random_tree(n: usize, rng: &mut SplitMix64) -> MultiGraph {
    if n <= 2 {
        return MultiGraph::from_edges(n, (1..n).map(|i| (0, i))).expect("valid");
    }
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.below(n)).collect();
    let mut degree = vec![1usize; n];
    for &x in &seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: std::collections::BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &x in &seq {
        let leaf = *leaves.iter().next().unwrap();
        leaves.remove(&leaf);
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.insert(x);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    MultiGraph::from_edges(n, edges).expect("valid")
}

const EAR_ATTEMPTS: usize = 2000;

/// Grows a bipartite bridgeless simple graph: an even cycle followed by
/// `m - n` ears whose lengths respect the bipartition.
pub(crate) fn random_bridgeless_bipartite(n: usize, m: usize, rng: &mut SplitMix64) -> Result<MultiGraph, GraphError> {
    need(n >= 4, "bridgeless bipartite graph needs n >= 4")?;
    need(m >= n, "ear decomposition needs m >= n")?;
    let ears = m - n;
    need(
        m <= (n / 2) * (n - n / 2),
        "too many edges for a simple bipartite graph",
    )?;
    if ears == 0 {
        need(n.is_multiple_of(2), "a single even cycle needs n even")?;
    }
    for _ in 0..EAR_ATTEMPTS {
        if let Some(g) = try_ears(n, ears, rng) {
            return Ok(g);
        }
    }
    Err(GraphError::InvalidParameters(format!(
        "no ear decomposition found for n={n}, m={m}"
    )))
}

fn try_ears(n: usize, ears: usize, rng: &mut SplitMix64) -> Option<MultiGraph> {
    let cycle_len = if ears == 0 {
        n
    } else {
        let max_even = n - n % 2;
        2 * rng.range(2, max_even / 2)
    };
    // split the remaining vertices among the ears
    let mut internal = vec![0usize; ears];
    for _ in 0..n - cycle_len {
        if ears == 0 {
            return None;
        }
        internal[rng.below(ears)] += 1;
    }
    let mut side: Vec<Side> = Vec::with_capacity(n);
    let mut edges: std::collections::BTreeSet<(usize, usize)> = Default::default();
    for i in 0..cycle_len {
        side.push(if i % 2 == 0 { Side::X } else { Side::Y });
        let j = (i + 1) % cycle_len;
        edges.insert((i.min(j), i.max(j)));
    }
    for &k in &internal {
        let present = side.len();
        // k odd: ends on the same side; k even: ends on opposite sides
        let mut candidates = Vec::new();
        for a in 0..present {
            for b in a + 1..present {
                let same = side[a] == side[b];
                let ok = if k % 2 == 1 {
                    same
                } else {
                    !same && (k > 0 || !edges.contains(&(a, b)))
                };
                if ok {
                    candidates.push((a, b));
                }
            }
        }
        if candidates.is_empty() {
            return None;
        }
        let (a, b) = *rng.pick(&candidates);
        let mut prev = a;
        let mut prev_side = side[a];
        for _ in 0..k {
            let v = side.len();
            prev_side = prev_side.opposite();
            side.push(prev_side);
            edges.insert((prev.min(v), prev.max(v)));
            prev = v;
        }
        edges.insert((prev.min(b), prev.max(b)));
    }
    debug_assert_eq!(side.len(), n);
    Some(MultiGraph::from_edges(n, edges).expect("valid"))
}
