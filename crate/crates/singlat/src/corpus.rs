//! Reproducible random corpora of negative-definite plumbing trees.
//!
//! Trees are drawn uniformly via Prüfer sequences, Euler numbers
//! uniformly from a configured range, and candidates failing negative
//! definiteness are rejected. The generator is fully determined by its
//! seed, so a corpus can be regenerated bit-for-bit anywhere.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;

/// Parameters of one corpus.
#[derive(Debug, Clone, Copy)]
pub struct CorpusSpec {
    /// Seed of the deterministic generator.
    pub seed: u64,
    /// Number of accepted graphs to produce.
    pub count: usize,
    /// Largest vertex count (sizes are uniform in `1..=max_vertices`).
    pub max_vertices: usize,
    /// Inclusive Euler-number range, within `[-20, -2]`.
    pub euler_range: (i64, i64),
}

/// Generates `spec.count` negative-definite trees, deterministically in
/// the seed. Vertex ids are `1..=n` in every graph.
pub fn generate_corpus(spec: &CorpusSpec) -> Result<Vec<PlumbingGraph>> {
    let (lo, hi) = spec.euler_range;
    if spec.count == 0 {
        return Err(Error::input("corpus size must be positive"));
    }
    if spec.max_vertices == 0 {
        return Err(Error::input("maximum vertex count must be positive"));
    }
    if lo > hi || lo < -20 || hi > -2 {
        return Err(Error::input(
            "Euler range must satisfy -20 <= lo <= hi <= -2",
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut out = Vec::with_capacity(spec.count);
    let mut attempts: usize = 0;
    let attempt_cap = spec.count.saturating_mul(10_000).max(10_000);
    while out.len() < spec.count {
        attempts += 1;
        if attempts > attempt_cap {
            return Err(Error::internal(
                "rejection sampling exceeded its attempt budget",
            ));
        }
        let n = rng.gen_range(1..=spec.max_vertices);
        let edges = random_tree_edges(&mut rng, n);
        let vertices: Vec<(i64, i64)> =
            (0..n).map(|i| (i as i64 + 1, rng.gen_range(lo..=hi))).collect();
        let g = PlumbingGraph::new(&vertices, &edges)
            .expect("decoded Pruefer sequences are always trees");
        if g.is_negative_definite() {
            out.push(g);
        }
    }
    Ok(out)
}

/// Uniform random labeled tree on vertices `1..=n`, as id pairs, by
/// decoding a uniform Prüfer sequence.
fn random_tree_edges(rng: &mut ChaCha8Rng, n: usize) -> Vec<(i64, i64)> {
    match n {
        0 | 1 => Vec::new(),
        2 => vec![(1, 2)],
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            let mut degree = vec![1usize; n];
            for &a in &seq {
                degree[a] += 1;
            }
            let mut edges = Vec::with_capacity(n - 1);
            for &a in &seq {
                let leaf = (0..n)
                    .find(|&v| degree[v] == 1)
                    .expect("a leaf always remains while decoding");
                edges.push((leaf as i64 + 1, a as i64 + 1));
                degree[leaf] = 0;
                degree[a] -= 1;
            }
            let mut last = (0..n).filter(|&v| degree[v] == 1);
            let u = last.next().expect("two vertices remain");
            let w = last.next().expect("two vertices remain");
            edges.push((u as i64 + 1, w as i64 + 1));
            edges
        }
    }
}
