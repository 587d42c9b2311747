//! Computation sequences: the generalized Laufer algorithm.
//!
//! For `l' ∈ L'` the sequence starts at `z_0 = l'` and, while some vertex
//! has `(z_i, E_v) > 0`, steps to `z_{i+1} = z_i + E_v`. It terminates at
//! `s(l')`, the unique minimal element of `(l' + L_{≥0}) ∩ S'`; the result
//! does not depend on which admissible vertex is chosen at each step.
//! Specializations: `s(E_v) = Z_min` (the minimal cycle) and
//! `s(r_h) = s_h` (the minimal Lipman-cone representative of a class).

use num::{BigRational, Signed};

use crate::cycle::{DiscriminantClass, RationalCycle};
use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;

/// Defensive bound on Laufer steps; termination is guaranteed on negative
/// definite graphs, so hitting the cap means the graph is invalid.
const MAX_LAUFER_STEPS: usize = 1_000_000;

/// One step of a computation sequence: the cycle reached so far and the
/// vertex added to leave it (`None` on the terminal step).
#[derive(Debug, Clone)]
pub struct Step {
    pub cycle: RationalCycle,
    pub added_vertex: Option<usize>,
}

/// A full computation sequence `z_0, z_1, ..., z_t = s(z_0)`.
///
/// Invariants (enforced by construction): consecutive cycles differ by one
/// base cycle, every non-terminal step has `(z_i, E_{v(i)}) > 0`, and the
/// terminal cycle pairs `≤ 0` with every base cycle.
#[derive(Debug, Clone)]
pub struct ComputationSequence {
    steps: Vec<Step>,
}

impl ComputationSequence {
    /// All steps, starting cycle first; the last step carries the terminal
    /// cycle and no added vertex.
    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// Number of unit increments performed.
    pub fn len(&self) -> usize {
        self.steps.len() - 1
    }

    /// True when the start was already in the Lipman cone.
    pub fn is_empty(&self) -> bool {
        self.steps.len() == 1
    }

    /// The terminal cycle `s(z_0)`.
    pub fn terminal(&self) -> &RationalCycle {
        &self.steps.last().expect("sequence always has a terminal step").cycle
    }
}

/// Vertex-selection policy: picks one index out of the admissible set
/// (those with positive pairing). Used to witness policy independence.
pub(crate) type VertexPolicy = fn(&[BigRational]) -> Option<usize>;

pub(crate) fn lowest_admissible(pairings: &[BigRational]) -> Option<usize> {
    pairings.iter().position(Signed::is_positive)
}

#[cfg(test)]
pub(crate) fn highest_admissible(pairings: &[BigRational]) -> Option<usize> {
    pairings.iter().rposition(Signed::is_positive)
}

pub(crate) fn laufer_with_policy(
    g: &PlumbingGraph,
    l: &RationalCycle,
    policy: VertexPolicy,
) -> Result<ComputationSequence> {
    if l.len() != g.len() {
        return Err(Error::input("cycle length does not match the graph"));
    }
    if !l.in_dual_lattice(g) {
        return Err(Error::input(
            "generalized Laufer requires a cycle in the dual lattice L'",
        ));
    }
    let mut current = l.clone();
    let mut pairings: Vec<BigRational> =
        (0..g.len()).map(|v| current.pair_base(g, v)).collect();
    let mut steps = Vec::new();
    for _ in 0..MAX_LAUFER_STEPS {
        match policy(&pairings) {
            None => {
                steps.push(Step { cycle: current, added_vertex: None });
                let seq = ComputationSequence { steps };
                debug_assert!(seq.terminal().in_lipman_cone(g));
                debug_assert!((seq.terminal() - l).is_effective());
                return Ok(seq);
            }
            Some(v) => {
                steps.push(Step { cycle: current.clone(), added_vertex: Some(v) });
                current.add_base(v);
                // (z + E_v, E_w) = (z, E_w) + I(v, w): touch v and its
                // neighbors only.
                pairings[v] += crate::graph::big_rat(g.euler(v));
                for &w in g.neighbors(v) {
                    pairings[w] += BigRational::from_integer(1.into());
                }
            }
        }
    }
    Err(Error::input(format!(
        "computation sequence exceeded {MAX_LAUFER_STEPS} steps; the graph is not negative definite"
    )))
}

/// Runs the generalized Laufer algorithm from `l' ∈ L'`, returning the full
/// sequence with terminal `s(l')`, the unique minimal element of
/// `(l' + L_{≥0}) ∩ S'`. Vertices are chosen lowest-index-first; the
/// terminal is policy-independent.
pub fn generalized_laufer(g: &PlumbingGraph, l: &RationalCycle) -> Result<ComputationSequence> {
    laufer_with_policy(g, l, lowest_admissible)
}

/// The minimal (fundamental) cycle `Z_min`: the unique minimal element of
/// `S ∖ {0}`, computed as `s(E_v)` (any start vertex gives the same
/// result; vertex 0 is used).
pub fn minimal_cycle(g: &PlumbingGraph) -> Result<RationalCycle> {
    let start = RationalCycle::base(g.len(), 0);
    let seq = generalized_laufer(g, &start)?;
    let z_min = seq.terminal().clone();
    debug_assert!(z_min.is_integral());
    debug_assert!(z_min.coeffs().iter().all(Signed::is_positive));
    Ok(z_min)
}

/// The fundamental cycle of the full subgraph on the vertex set `I`
/// (indices into `g`), returned as a cycle on `g` supported in `I`.
/// Errors when `I` is empty or disconnected.
pub fn fundamental_cycle_of(g: &PlumbingGraph, i_set: &[usize]) -> Result<RationalCycle> {
    let sub = g.subgraph(i_set)?;
    let z = minimal_cycle(&sub)?;
    Ok(z.embed(&sub, g))
}

/// `s_h`: the unique minimal element of `{l' ∈ S' : [l'] = h}`, computed
/// by running the Laufer algorithm from the canonical representative
/// `r_h`.
pub fn s_h(g: &PlumbingGraph, h: &DiscriminantClass) -> Result<RationalCycle> {
    let seq = generalized_laufer(g, h.representative())?;
    Ok(seq.terminal().clone())
}

/// Brute-force check that `candidate` is the unique minimum of
/// `(l' + L_{≥0}) ∩ S'` within the componentwise box `l' + bound`; used by
/// oracle tests. Returns the number of cone points inspected.
#[cfg(test)]
pub(crate) fn assert_box_minimality(
    g: &PlumbingGraph,
    l: &RationalCycle,
    candidate: &RationalCycle,
    bound: &[i64],
) -> usize {
    let n = g.len();
    let mut seen = 0usize;
    let mut offsets = vec![0i64; n];
    loop {
        let point = l + &RationalCycle::from_integers(&offsets);
        if point.in_lipman_cone(g) {
            seen += 1;
            assert!(
                candidate.leq(&point),
                "cone point {point} is not above the claimed minimum {candidate}"
            );
        }
        // Odometer increment over the box.
        let mut digit = 0;
        loop {
            if digit == n {
                assert!(seen > 0, "claimed minimum not found in the box");
                return seen;
            }
            offsets[digit] += 1;
            if offsets[digit] <= bound[digit] {
                break;
            }
            offsets[digit] = 0;
            digit += 1;
        }
    }
}
