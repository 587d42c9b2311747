//! Shared fixtures and independent oracles for the integration suites.
//!
//! Everything here recomputes its answers from the raw graph data (Euler
//! numbers and edges) without going through `Lattice`'s solved linear
//! algebra, so agreement with the library is a genuine cross-check rather
//! than the same code run twice.

#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use num::{BigInt, BigRational, One, Zero};
use singlat::corpus::{generate_corpus, CorpusSpec};
use singlat::{Lattice, PlumbingGraph, RationalCycle};

/// Seed and shape of the frozen verification corpus. 256 draws at up to 8
/// vertices with Euler numbers in [-5, -2]; seed 99 was chosen because its
/// corpus contains six elliptic specimens, three of them minimally
/// elliptic, alongside rational and non-definite rejects.
pub const CORPUS_SEED: u64 = 99;
pub const CORPUS_COUNT: usize = 256;
pub const CORPUS_MAX_VERTICES: usize = 8;
pub const CORPUS_EULER_RANGE: (i64, i64) = (-5, -2);

/// The frozen corpus used by the acceptance and theorem suites.
pub fn corpus() -> &'static [PlumbingGraph] {
    static CORPUS: std::sync::OnceLock<Vec<PlumbingGraph>> = std::sync::OnceLock::new();
    CORPUS.get_or_init(|| {
        generate_corpus(&CorpusSpec {
            seed: CORPUS_SEED,
            count: CORPUS_COUNT,
            max_vertices: CORPUS_MAX_VERTICES,
            euler_range: CORPUS_EULER_RANGE,
        })
        .expect("frozen corpus parameters are valid")
    })
}

/// Absolute path of a fixture file shipped with the crate.
pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

/// Parses a fixture graph and wraps it in a lattice.
pub fn fixture_lattice(name: &str) -> Lattice {
    let g = singlat::io::parse_file(&fixture_path(name)).expect("fixture parses");
    Lattice::new(g).expect("fixture is negative definite")
}

/// Shorthand rational.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Builds a cycle from integer coordinates.
pub fn cycle_of(values: &[i64]) -> RationalCycle {
    RationalCycle::from_integers(values)
}

// ---------------------------------------------------------------------------
// Independent arithmetic straight from the graph data.
// ---------------------------------------------------------------------------

/// `(l, E_v)` for an integer vector, computed from Euler numbers and the
/// adjacency lists only.
pub fn row_pair(g: &PlumbingGraph, l: &[i64], v: usize) -> i64 {
    let mut total = g.euler(v) * l[v];
    for &w in g.neighbors(v) {
        total += l[w];
    }
    total
}

/// `(a, b)` for integer vectors via the bilinear form written out.
pub fn form_pair(g: &PlumbingGraph, a: &[i64], b: &[i64]) -> i64 {
    let mut total = 0;
    for v in 0..g.len() {
        total += g.euler(v) * a[v] * b[v];
    }
    for &(x, y) in g.edges() {
        total += a[x] * b[y] + a[y] * b[x];
    }
    total
}

/// `2·χ(l)` for an integer vector: `-(l,l) - Σ l_v·(e_v + 2)` restated with
/// the adjunction pairing `(Z_K, E_v) = e_v + 2`, so no canonical cycle is
/// ever solved for.
pub fn two_chi(g: &PlumbingGraph, l: &[i64]) -> i64 {
    let mut total = -form_pair(g, l, l);
    for v in 0..g.len() {
        total += l[v] * (g.euler(v) + 2);
    }
    total
}

/// Membership in the anti-nef cone `S`: every row pairing nonpositive.
pub fn in_s(g: &PlumbingGraph, l: &[i64]) -> bool {
    (0..g.len()).all(|v| row_pair(g, l, v) <= 0)
}

/// Componentwise `a ≤ b`.
pub fn leq(a: &[i64], b: &[i64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Walks an odometer over the box `0 ≤ l ≤ bound`, invoking `visit` on
/// every point including zero. Returns the number of points visited.
pub fn for_each_box_point(bound: &[i64], mut visit: impl FnMut(&[i64])) -> u64 {
    let mut l = vec![0i64; bound.len()];
    let mut count = 0u64;
    loop {
        visit(&l);
        count += 1;
        let mut pos = 0;
        loop {
            if pos == bound.len() {
                return count;
            }
            if l[pos] < bound[pos] {
                l[pos] += 1;
                break;
            }
            l[pos] = 0;
            pos += 1;
        }
    }
}

/// Integer coordinates of an integral cycle.
pub fn int_coords(l: &RationalCycle) -> Vec<i64> {
    l.coeffs()
        .iter()
        .map(|c| {
            assert!(c.is_integer(), "cycle must be integral");
            i64::try_from(c.to_integer()).expect("coordinate fits in i64")
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Oracle (a): the minimal cycle against a brute-force cone search.
// ---------------------------------------------------------------------------

/// Outcome of one oracle run: `Ok(None)` means the graph was skipped by a
/// size guard, `Ok(Some(work))` reports how much was checked.
pub type OracleOutcome = Result<Option<u64>, String>;

/// Verifies that the library's minimal cycle is the unique minimal element
/// of `S ∩ L_{>0}` inside the box `0 ≤ l ≤ 3·Z_min`, by exhaustive
/// enumeration with independent pairings. Skips graphs whose box exceeds
/// `max_box` points.
pub fn oracle_minimal_cycle(g: &PlumbingGraph, max_box: u64) -> OracleOutcome {
    let claimed = singlat::laufer::minimal_cycle(g).map_err(|e| e.to_string())?;
    if !claimed.is_integral() {
        return Err("claimed minimal cycle is not integral".into());
    }
    let z = int_coords(&claimed);
    if z.iter().any(|&c| c <= 0) {
        return Err("claimed minimal cycle must be strictly positive on a tree".into());
    }
    if !in_s(g, &z) {
        return Err("claimed minimal cycle is not anti-nef".into());
    }

    let bound: Vec<i64> = z.iter().map(|&c| 3 * c).collect();
    let box_size: u128 = bound.iter().map(|&b| b as u128 + 1).product();
    if box_size > max_box as u128 {
        return Ok(None);
    }

    let mut members: Vec<Vec<i64>> = Vec::new();
    let visited = for_each_box_point(&bound, |l| {
        if l.iter().any(|&c| c != 0) && in_s(g, l) {
            members.push(l.to_vec());
        }
    });

    if !members.iter().any(|m| m == &z) {
        return Err("brute-force cone search never produced the claimed cycle".into());
    }
    for m in &members {
        if !leq(&z, m) {
            return Err(format!(
                "cone element {m:?} does not dominate the claimed minimal cycle {z:?}"
            ));
        }
    }
    Ok(Some(visited))
}

// ---------------------------------------------------------------------------
// Oracle (b): series coefficients against truncated polynomial products.
// ---------------------------------------------------------------------------

/// Multiplicative binomial, independent of the library's helper.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut value = BigInt::one();
    for i in 0..k.min(n - k) {
        value = value * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    value
}

/// The expansion coefficient of `(1 - t)^(δ-2)` at `t^k`, written out per
/// valency case.
pub fn series_term(delta: usize, k: u64) -> BigInt {
    match delta {
        0 => BigInt::from(k + 1),
        1 => BigInt::one(),
        d => {
            let power = (d - 2) as u64;
            let signed = binom(power, k);
            if k % 2 == 0 {
                signed
            } else {
                -signed
            }
        }
    }
}

/// Verifies `coefficient` two independent ways on one graph:
///
/// 1. every exponent tuple `k` in a small raw box maps to the dual point
///    `Σ k_v E*_v`, whose coefficient must equal the direct product of
///    per-vertex series terms;
/// 2. the per-vertex factor polynomials are multiplied out term by term,
///    truncated to the box `l' ≤ 3·Z_min`, and every accumulated entry must
///    equal `coefficient` at that point;
///
/// plus a zero probe at each base cycle with a neighbor, which decomposes
/// with a negative exponent and therefore lies outside the support.
pub fn oracle_coefficients(g: &PlumbingGraph, leaf_cap: u64) -> OracleOutcome {
    let lat = Lattice::new(g.clone()).map_err(|e| e.to_string())?;
    let n = g.len();

    // Part 1: the raw exponent box.
    let caps: Vec<i64> = (0..n)
        .map(|v| {
            let delta = g.degree(v);
            if delta >= 2 {
                delta as i64 - 2
            } else {
                leaf_cap as i64
            }
        })
        .collect();
    let mut checked = 0u64;
    let mut failure: Option<String> = None;
    for_each_box_point(&caps, |k| {
        if failure.is_some() {
            return;
        }
        let mut point = RationalCycle::zero(n);
        let mut expected = BigInt::one();
        for v in 0..n {
            if k[v] > 0 {
                let scaled = lat.dual_cycle(v) * &BigRational::from(BigInt::from(k[v]));
                point = &point + &scaled;
            }
            expected *= series_term(g.degree(v), k[v] as u64);
        }
        match singlat::zeta::coefficient(&lat, &point) {
            Ok(got) => {
                if got != expected {
                    failure = Some(format!(
                        "exponents {k:?}: direct product gives {expected}, library gives {got}"
                    ));
                }
            }
            Err(e) => failure = Some(format!("coefficient failed at {k:?}: {e}")),
        }
        checked += 1;
    });
    if let Some(msg) = failure {
        return Err(msg);
    }

    // Part 2: truncated multiplication of the factor polynomials.
    let z_min = singlat::laufer::minimal_cycle(g).map_err(|e| e.to_string())?;
    let three = BigRational::from(BigInt::from(3));
    let bound = &z_min * &three;
    let mut table: HashMap<RationalCycle, BigInt> = HashMap::new();
    table.insert(RationalCycle::zero(n), BigInt::one());
    for v in 0..n {
        let delta = g.degree(v);
        let dual = lat.dual_cycle(v);
        // Beyond this exponent even the bare term escapes the box.
        let per_vertex_cap: u64 = (0..n)
            .map(|u| {
                let q = bound.coeff(u) / dual.coeff(u);
                q.floor().to_integer().try_into().unwrap_or(u64::MAX)
            })
            .min()
            .unwrap_or(0);
        let cap = if delta >= 2 {
            per_vertex_cap.min(delta as u64 - 2)
        } else {
            per_vertex_cap
        };
        let mut next: HashMap<RationalCycle, BigInt> = HashMap::new();
        for (point, coeff) in &table {
            for k in 0..=cap {
                let term = series_term(delta, k);
                let shifted = point + &(dual * &BigRational::from(BigInt::from(k as i64)));
                if !shifted.leq(&bound) {
                    continue;
                }
                *next.entry(shifted).or_insert_with(BigInt::zero) += coeff * &term;
            }
        }
        table = next;
    }
    for (point, expected) in &table {
        let got = singlat::zeta::coefficient(&lat, point).map_err(|e| e.to_string())?;
        if got != *expected {
            return Err(format!(
                "truncated product at {point} gives {expected}, library gives {got}"
            ));
        }
        checked += 1;
    }

    // Zero probes: base cycles with neighbors decompose with a negative
    // exponent, so they are outside the support.
    for v in 0..n {
        if g.degree(v) == 0 {
            continue;
        }
        let base = RationalCycle::base(n, v);
        let got = singlat::zeta::coefficient(&lat, &base).map_err(|e| e.to_string())?;
        if !got.is_zero() {
            return Err(format!(
                "base cycle at vertex {v} lies outside the support but got {got}"
            ));
        }
        checked += 1;
    }

    Ok(Some(checked))
}

// ---------------------------------------------------------------------------
// Oracle (c): the path minimum against exhaustive enumeration.
// ---------------------------------------------------------------------------

/// Exhaustive minimum path cost from `0` to `target` over unit-increment
/// monotone paths, by dynamic programming in coordinate-sum order with the
/// written-out `χ` formula. The cost of appending `E_v` at `l` is
/// `max(0, χ(l) - χ(l + E_v))`.
pub fn exhaustive_path_minimum(g: &PlumbingGraph, target: &[i64]) -> u64 {
    let mut points: Vec<Vec<i64>> = Vec::new();
    for_each_box_point(target, |l| points.push(l.to_vec()));
    points.sort_by_key(|l| l.iter().sum::<i64>());

    let mut dist: HashMap<Vec<i64>, u64> = HashMap::new();
    for l in points {
        let sum: i64 = l.iter().sum();
        if sum == 0 {
            dist.insert(l, 0);
            continue;
        }
        let here_two_chi = two_chi(g, &l);
        let mut best = u64::MAX;
        let mut prev = l.clone();
        for v in 0..l.len() {
            if l[v] == 0 {
                continue;
            }
            prev[v] -= 1;
            let base = dist[&prev];
            let jump = (two_chi(g, &prev) - here_two_chi) / 2;
            let cost = base + u64::try_from(jump.max(0)).expect("nonnegative");
            best = best.min(cost);
            prev[v] += 1;
        }
        dist.insert(l, best);
    }
    dist[target]
}

/// Compares the library's optimal path search against the exhaustive
/// enumeration on one graph, using the canonical floor when it is a valid
/// target and the minimal cycle otherwise. Skips boxes above `max_box`.
pub fn oracle_path_minimum(g: &PlumbingGraph, max_box: u64) -> OracleOutcome {
    let lat = Lattice::new(g.clone()).map_err(|e| e.to_string())?;
    let (floor, _) = lat.canonical_cycle().floor_frac();
    let target_cycle = if !floor.is_zero() && floor.is_effective() {
        floor
    } else {
        singlat::laufer::minimal_cycle(g).map_err(|e| e.to_string())?
    };
    let target = int_coords(&target_cycle);
    let box_size: u128 = target.iter().map(|&b| b as u128 + 1).product();
    if box_size > max_box as u128 {
        return Ok(None);
    }

    let expected = exhaustive_path_minimum(g, &target);
    let got = singlat::path::pam_to(&lat, &target_cycle, singlat::DEFAULT_MAX_STATES)
        .map_err(|e| e.to_string())?;
    if got.value != expected {
        return Err(format!(
            "library path minimum {} disagrees with exhaustive {expected} at target {target:?}",
            got.value
        ));
    }
    let witness_cost =
        singlat::path::path_cost(&lat, &got.witness).map_err(|e| e.to_string())?;
    if witness_cost != expected {
        return Err(format!(
            "witness recomputes to {witness_cost}, expected {expected}"
        ));
    }
    Ok(Some(box_size as u64))
}
