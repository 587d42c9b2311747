//! The path invariant: optimal increasing lattice paths.
//!
//! An increasing path `γ` walks from `l_0 = 0` by unit base-cycle steps
//! `l_{i+1} = l_i + E_{v(i)}`; the step price is
//! `p_i = max{0, χ(l_i) - χ(l_{i+1})} = max{0, (E_{v(i)}, l_i) - 1}` and
//! `S(γ) = Σ p_i`. `Pam(Z)` is the cheapest total over paths ending at
//! `Z`, computed exactly by dynamic programming over the box
//! `{0 ≤ l ≤ Z}`; `Pam` itself is `Pam(⌊Z_K⌋)`, the maximum of `Pam(Z)`
//! over all endpoints.
//!
//! For elliptic graphs this module also builds the explicit witness path
//! of cost `ℓ + 1`: for each term of the elliptic sequence, a computation
//! sequence of the minimally elliptic cycle that saves its single
//! pairing-two step for a vertex pairing negatively with the last
//! sequence cycle, extended to the term's fundamental cycle.

use std::collections::HashSet;

use num::{BigRational, Signed, Zero};

use crate::cycle::RationalCycle;
use crate::elliptic::{minimally_elliptic_cycle, require_minimal, yau_sequence};
use crate::error::{Error, Result};
use crate::graph::big_rat;
use crate::lattice::Lattice;
use crate::laufer::generalized_laufer;

/// Absolute ceiling on dynamic-programming states regardless of the
/// configured budget (the distance table is two bytes per state).
const HARD_STATE_CAP: u64 = 2_000_000_000;

/// An increasing lattice path `0 = l_0, l_1, ..., l_t` with its exact
/// step costs.
#[derive(Debug, Clone)]
pub struct LatticePath {
    cycles: Vec<RationalCycle>,
    step_costs: Vec<u64>,
}

impl LatticePath {
    /// The trivial path consisting of `l_0 = 0` only.
    pub fn trivial(n: usize) -> Self {
        LatticePath { cycles: vec![RationalCycle::zero(n)], step_costs: Vec::new() }
    }

    /// Builds the path adding `vertices` in order, starting from zero.
    /// Each step cost is evaluated through both defining formulas — the
    /// χ-difference and the pairing form — which must agree.
    pub fn from_vertices(lat: &Lattice, vertices: &[usize]) -> Result<LatticePath> {
        let n = lat.len();
        let mut cycles = Vec::with_capacity(vertices.len() + 1);
        let mut step_costs = Vec::with_capacity(vertices.len());
        let mut current = RationalCycle::zero(n);
        cycles.push(current.clone());
        for &v in vertices {
            if v >= n {
                return Err(Error::input(format!("path vertex index {v} out of range")));
            }
            let pairing = current.pair_base(lat.graph(), v);
            let chi_before = lat.chi(&current);
            current.add_base(v);
            let chi_after = lat.chi(&current);
            let by_pairing = positive_part(&(pairing - big_rat(1)))?;
            let by_chi = positive_part(&(chi_before - chi_after))?;
            if by_pairing != by_chi {
                return Err(Error::internal(
                    "step cost formulas disagree: chi-difference vs pairing",
                ));
            }
            step_costs.push(by_pairing);
            cycles.push(current.clone());
        }
        Ok(LatticePath { cycles, step_costs })
    }

    /// The visited cycles `l_0, ..., l_t`.
    pub fn cycles(&self) -> &[RationalCycle] {
        &self.cycles
    }

    /// Exact cost of each step.
    pub fn step_costs(&self) -> &[u64] {
        &self.step_costs
    }

    /// The vertex added at each step, recovered from consecutive cycles.
    pub fn vertices(&self) -> Vec<usize> {
        self.cycles
            .windows(2)
            .map(|w| {
                let diff = &w[1] - &w[0];
                diff.support()[0]
            })
            .collect()
    }

    /// Number of steps `t`.
    pub fn len(&self) -> usize {
        self.step_costs.len()
    }

    /// True for the trivial path.
    pub fn is_empty(&self) -> bool {
        self.step_costs.is_empty()
    }

    /// The final cycle `l_t`.
    pub fn endpoint(&self) -> &RationalCycle {
        self.cycles.last().expect("path always contains l_0")
    }

    /// `S(γ) = Σ p_i`.
    pub fn total_cost(&self) -> u64 {
        self.step_costs.iter().sum()
    }
}

fn positive_part(value: &BigRational) -> Result<u64> {
    if value.is_negative() || value.is_zero() {
        return Ok(0);
    }
    if !value.is_integer() {
        return Err(Error::internal("step cost is not an integer"));
    }
    value
        .to_integer()
        .try_into()
        .map_err(|_| Error::internal("step cost exceeds u64"))
}

/// Recomputes the total cost of a path from its stored cycles alone,
/// validating well-formedness (unit increments, both cost formulas).
pub fn path_cost(lat: &Lattice, path: &LatticePath) -> Result<u64> {
    if path.cycles.is_empty() || !path.cycles[0].is_zero() {
        return Err(Error::input("malformed path: must start at the zero cycle"));
    }
    let mut total: u64 = 0;
    for (i, pair) in path.cycles.windows(2).enumerate() {
        let diff = &pair[1] - &pair[0];
        let support = diff.support();
        if support.len() != 1 || diff.coeff(support[0]) != &big_rat(1) {
            return Err(Error::input(format!(
                "malformed path: step {i} is not a unit base-cycle increment"
            )));
        }
        let v = support[0];
        let by_pairing = positive_part(&(pair[0].pair_base(lat.graph(), v) - big_rat(1)))?;
        let by_chi = positive_part(&(lat.chi(&pair[0]) - lat.chi(&pair[1])))?;
        if by_pairing != by_chi {
            return Err(Error::internal(
                "step cost formulas disagree: chi-difference vs pairing",
            ));
        }
        if by_pairing != path.step_costs[i] {
            return Err(Error::input(format!(
                "malformed path: stored cost of step {i} does not match recomputation"
            )));
        }
        total += by_pairing;
    }
    Ok(total)
}

/// Result of an optimal-path search.
#[derive(Debug, Clone)]
pub struct PathSearchResult {
    /// The exact minimum cost.
    pub value: u64,
    /// A path realizing the minimum.
    pub witness: LatticePath,
    /// States examined by the dynamic program.
    pub states_visited: u64,
}

/// `Pam(Z)`: the exact minimum of `S(γ)` over increasing paths from `0`
/// to `Z`, by dynamic programming on the box `{0 ≤ l ≤ Z}` in graded
/// (coefficient-lexicographic) order. `Z` must be integral, effective and
/// nonzero. The box size must not exceed `max_states` (nor a hard cap);
/// otherwise a budget error is returned — never an approximation.
pub fn pam_to(lat: &Lattice, target: &RationalCycle, max_states: u64) -> Result<PathSearchResult> {
    let g = lat.graph();
    let n = g.len();
    if target.len() != n {
        return Err(Error::input("target length does not match the graph"));
    }
    if !target.is_integral() || !target.is_effective() || target.is_zero() {
        return Err(Error::input(
            "path target must be a nonzero effective integral cycle",
        ));
    }
    let bounds: Vec<i64> = target
        .coeffs()
        .iter()
        .map(|c| {
            c.to_integer()
                .try_into()
                .map_err(|_| Error::input("target coefficients too large"))
        })
        .collect::<Result<_>>()?;

    let limit = max_states.min(HARD_STATE_CAP);
    let states: u128 = bounds.iter().map(|&b| b as u128 + 1).product();
    if states > limit as u128 {
        return Err(Error::Budget { states, limit });
    }
    let states = states as usize;

    let mut stride = vec![1usize; n];
    for v in 1..n {
        stride[v] = stride[v - 1] * (bounds[v - 1] as usize + 1);
    }
    let eulers: Vec<i64> = (0..n).map(|v| g.euler(v)).collect();

    // dist[s] = cheapest cost from 0 to the cycle with index s; states are
    // visited in index order, which refines the partial order, so every
    // predecessor is final before it is read.
    let mut dist = vec![u16::MAX; states];
    dist[0] = 0;
    let mut digits = vec![0i64; n];
    let mut pairings = vec![0i64; n];
    for s in 1..states {
        // Odometer advance with incremental pairing maintenance.
        let mut d = 0;
        loop {
            if digits[d] < bounds[d] {
                digits[d] += 1;
                pairings[d] += eulers[d];
                for &w in g.neighbors(d) {
                    pairings[w] += 1;
                }
                break;
            }
            let c = digits[d];
            digits[d] = 0;
            pairings[d] -= c * eulers[d];
            for &w in g.neighbors(d) {
                pairings[w] -= c;
            }
            d += 1;
        }
        let mut best = u64::MAX;
        for v in 0..n {
            if digits[v] >= 1 {
                let prev = dist[s - stride[v]] as u64;
                // (E_v, l - E_v) = (l, E_v) - (E_v, E_v).
                let step = (pairings[v] - eulers[v] - 1).max(0) as u64;
                best = best.min(prev + step);
            }
        }
        if best >= u16::MAX as u64 {
            return Err(Error::internal("path cost exceeds the distance table range"));
        }
        dist[s] = best as u16;
    }

    let witness = reconstruct_witness(lat, &bounds, &stride, &dist)?;
    let value = dist[states - 1] as u64;
    if witness.total_cost() != value {
        return Err(Error::internal("witness cost does not match the computed minimum"));
    }
    Ok(PathSearchResult { value, witness, states_visited: states as u64 })
}

/// Walks backwards from the target along distance-consistent predecessors
/// and rebuilds the optimal path.
fn reconstruct_witness(
    lat: &Lattice,
    bounds: &[i64],
    stride: &[usize],
    dist: &[u16],
) -> Result<LatticePath> {
    let g = lat.graph();
    let n = g.len();
    let mut digits = bounds.to_vec();
    let mut index = dist.len() - 1;
    let mut pairings: Vec<i64> = (0..n)
        .map(|w| {
            let mut p = digits[w] * g.euler(w);
            for &u in g.neighbors(w) {
                p += digits[u];
            }
            p
        })
        .collect();
    let mut reversed = Vec::new();
    while index != 0 {
        let here = dist[index] as u64;
        let mut chosen = None;
        for v in 0..n {
            if digits[v] >= 1 {
                let prev = dist[index - stride[v]] as u64;
                let step = (pairings[v] - g.euler(v) - 1).max(0) as u64;
                if prev + step == here {
                    chosen = Some(v);
                    break;
                }
            }
        }
        let v = chosen.ok_or_else(|| {
            Error::internal("no distance-consistent predecessor during walk-back")
        })?;
        reversed.push(v);
        digits[v] -= 1;
        pairings[v] -= g.euler(v);
        for &w in g.neighbors(v) {
            pairings[w] -= 1;
        }
        index -= stride[v];
    }
    reversed.reverse();
    LatticePath::from_vertices(lat, &reversed)
}

/// `Pam`: the path invariant of the graph, equal to `Pam(⌊Z_K⌋)` (and `0`
/// outright when `⌊Z_K⌋ = 0`, since the trivial path already ends above
/// the floor). Requires `⌊Z_K⌋ ≥ 0`, which holds on every minimal graph.
pub fn pam(lat: &Lattice, max_states: u64) -> Result<PathSearchResult> {
    let (floor, _) = lat.canonical_cycle().floor_frac();
    if floor.is_zero() {
        return Ok(PathSearchResult {
            value: 0,
            witness: LatticePath::trivial(lat.len()),
            states_visited: 1,
        });
    }
    if !floor.is_effective() {
        return Err(Error::input(
            "the floor of the canonical cycle has a negative coefficient; the path invariant is undefined here",
        ));
    }
    pam_to(lat, &floor, max_states)
}

/// Builds the explicit increasing path of total cost exactly `ℓ + 1`
/// ending at `F_ℓ`, certifying the upper bound for `pam` on elliptic
/// graphs with all Euler numbers `≤ -2`.
pub fn elliptic_upper_path(lat: &Lattice) -> Result<LatticePath> {
    require_minimal(lat.graph())?;
    let g = lat.graph();
    let c = minimally_elliptic_cycle(lat)?;
    let yau = yau_sequence(lat)?;
    let c_support = c.support();
    let z_last = yau.cycles().last().unwrap();

    // A vertex of |C| pairing negatively with the last sequence cycle
    // exists because (C, Z_{D_ell}) < 0; the pairing-two step is saved
    // for it.
    let e0 = *c_support
        .iter()
        .find(|&&v| z_last.pair_base(g, v).is_negative())
        .ok_or_else(|| {
            Error::internal("no vertex of |C| pairs negatively with the last sequence cycle")
        })?;
    let e1 = c_support.iter().copied().find(|&v| v != e0);

    let c_steps = c_sequence_vertices(lat, &c, e0, e1)?;
    let mut vertices: Vec<usize> = Vec::new();
    for support in yau.supports() {
        vertices.extend_from_slice(&c_steps);
        vertices.extend(extension_vertices(g, &c, support)?);
    }
    let path = LatticePath::from_vertices(lat, &vertices)?;

    let ell_plus_one = (yau.ell() + 1) as u64;
    if path.total_cost() != ell_plus_one {
        return Err(Error::internal(format!(
            "constructed path costs {} instead of {}",
            path.total_cost(),
            ell_plus_one
        )));
    }
    let f_ell = yau.f_cycles().pop().unwrap();
    if path.endpoint() != &f_ell {
        return Err(Error::internal("constructed path does not end at F_ell"));
    }
    Ok(path)
}

/// Finds a computation sequence of `C` on its own support whose pairings
/// are all `1` except the final step, which adds `e0` with pairing `2`.
/// When `e1` is given the sequence starts there. Backtracking search with
/// memoized dead states; guaranteed to succeed on minimally elliptic
/// supports.
fn c_sequence_vertices(
    lat: &Lattice,
    c: &RationalCycle,
    e0: usize,
    e1: Option<usize>,
) -> Result<Vec<usize>> {
    let g = lat.graph();
    let n = g.len();
    let mut target: Vec<i64> = c
        .coeffs()
        .iter()
        .map(|x| {
            x.to_integer()
                .try_into()
                .map_err(|_| Error::input("minimally elliptic cycle too large"))
        })
        .collect::<Result<_>>()?;
    target[e0] -= 1;

    let start = match e1 {
        Some(v) => v,
        // Single-vertex support cannot occur (chi of a multiple of one
        // base cycle is always positive), but fall back defensively.
        None => e0,
    };
    if target[start] < 1 {
        return Err(Error::internal("start vertex is not available below the target"));
    }

    let mut z = vec![0i64; n];
    z[start] = 1;
    let mut pairings: Vec<i64> = (0..n)
        .map(|w| {
            let mut p = z[w] * g.euler(w);
            for &u in g.neighbors(w) {
                p += z[u];
            }
            p
        })
        .collect();
    let mut order = vec![start];
    let mut dead: HashSet<Vec<i64>> = HashSet::new();
    if !c_sequence_dfs(g, &target, &mut z, &mut pairings, &mut order, &mut dead) {
        return Err(Error::internal(
            "no unit-pairing computation sequence reaches the minimally elliptic cycle",
        ));
    }
    // The completing step must carry pairing exactly two.
    if pairings[e0] != 2 {
        return Err(Error::internal(format!(
            "final step pairing is {} instead of 2",
            pairings[e0]
        )));
    }
    order.push(e0);
    Ok(order)
}

fn c_sequence_dfs(
    g: &crate::graph::PlumbingGraph,
    target: &[i64],
    z: &mut Vec<i64>,
    pairings: &mut [i64],
    order: &mut Vec<usize>,
    dead: &mut HashSet<Vec<i64>>,
) -> bool {
    if z == target {
        return true;
    }
    if dead.contains(z.as_slice()) {
        return false;
    }
    for v in 0..target.len() {
        if z[v] < target[v] && pairings[v] == 1 {
            z[v] += 1;
            pairings[v] += g.euler(v);
            for &w in g.neighbors(v) {
                pairings[w] += 1;
            }
            order.push(v);
            if c_sequence_dfs(g, target, z, pairings, order, dead) {
                return true;
            }
            order.pop();
            z[v] -= 1;
            pairings[v] -= g.euler(v);
            for &w in g.neighbors(v) {
                pairings[w] -= 1;
            }
        }
    }
    dead.insert(z.clone());
    false
}

/// Completes `C` to the fundamental cycle of `support` by the Laufer
/// algorithm run inside that subgraph; every step pairing is exactly one
/// because the Euler characteristics of both endpoints vanish.
fn extension_vertices(
    g: &crate::graph::PlumbingGraph,
    c: &RationalCycle,
    support: &[usize],
) -> Result<Vec<usize>> {
    let sub = g.subgraph(support)?;
    let c_sub = c.restrict(support);
    let seq = generalized_laufer(&sub, &c_sub)?;
    let mut out = Vec::with_capacity(seq.len());
    for step in seq.steps() {
        if let Some(v_sub) = step.added_vertex {
            if step.cycle.pair_base(&sub, v_sub) != big_rat(1) {
                return Err(Error::internal(
                    "extension step pairing differs from one",
                ));
            }
            let ambient = g
                .index_of(sub.id(v_sub))
                .expect("subgraph ids exist in the ambient graph");
            out.push(ambient);
        }
    }
    Ok(out)
}
