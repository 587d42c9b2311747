//! Coefficients of the topological zeta expansion and the surgery sum.
//!
//! The multivariable series attached to the graph expands as a sum
//! `Σ z(l') t^{l'}` over the dual lattice. Writing `l' = Σ k_v E*_v`
//! (so `k_v = -(l', E_v)`), the coefficient factors over vertices:
//! for valency `δ_v ≥ 2` the factor is `(-1)^{k_v} · C(δ_v - 2, k_v)`
//! (zero beyond `δ_v - 2`), for `δ_v = 1` it is `1`, and for an isolated
//! vertex it is `k_v + 1`; the coefficient vanishes unless every `k_v`
//! is a nonnegative integer, so the support lies in the Lipman cone.
//!
//! Sums of `z` over all `l'` in a fixed discriminant class that do *not*
//! dominate a bound are finite: each factor is eventually zero or the
//! domination cutoff caps the exponent. `counting_Q` evaluates such a
//! sum, `dual_pc` evaluates the variant with domination restricted to a
//! vertex subset, and `sw_bar` accumulates the latter along the chain of
//! subgraphs produced by the elliptic sequence, which computes the
//! normalized Seiberg-Witten invariant of the link.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::cycle::{DiscriminantClass, RationalCycle};
use crate::elliptic::{b_sequence, classify, Classification};
use crate::error::{Error, Result};
use crate::graph::PlumbingGraph;
use crate::lattice::Lattice;

/// `C(n, k)` as an exact integer.
fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut num = BigInt::one();
    for i in 0..k {
        num = num * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    num
}

/// The factor contributed by a vertex of valency `delta` at exponent `k`.
fn vertex_factor(delta: usize, k: &BigInt) -> BigInt {
    if k.is_negative() {
        return BigInt::zero();
    }
    match delta {
        0 => k + BigInt::one(),
        1 => BigInt::one(),
        d => {
            let deg = (d - 2) as u64;
            let Ok(k_small) = u64::try_from(k.clone()) else {
                return BigInt::zero();
            };
            if k_small > deg {
                return BigInt::zero();
            }
            let b = binomial(deg, k_small);
            if k_small % 2 == 1 {
                -b
            } else {
                b
            }
        }
    }
}

/// The exact series coefficient `z(l')` at a dual-lattice element.
pub fn coefficient(lat: &Lattice, lprime: &RationalCycle) -> Result<BigInt> {
    let g = lat.graph();
    if lprime.len() != g.len() {
        return Err(Error::input("cycle length does not match the graph"));
    }
    if !lprime.in_dual_lattice(g) {
        return Err(Error::input(
            "coefficients are defined on the dual lattice only",
        ));
    }
    let mut product = BigInt::one();
    for v in 0..g.len() {
        let k = -lprime.pair_base(g, v);
        debug_assert!(k.is_integer());
        product *= vertex_factor(g.degree(v), &k.to_integer());
        if product.is_zero() {
            return Ok(product);
        }
    }
    Ok(product)
}

/// Shared exact enumeration: sums `z(l')` over all `l' = Σ k_v E*_v`
/// with `k_v ≥ 0`, class `[l'] = class`, and `l'` restricted to `i_set`
/// *not* coordinatewise above `x` there. All arithmetic is exact; the
/// dual coordinates are scaled by the discriminant-group order so that
/// membership tests are integer congruences.
struct Enumeration {
    /// Scaled dual cycles: `det · E*_v`, one integer vector per vertex.
    duals: Vec<Vec<i128>>,
    /// Scaled bound `det · x` on the tracked coordinates.
    x: Vec<i128>,
    /// Scaled class representative `det · r`.
    rep: Vec<i128>,
    det: i128,
    /// Coordinates where domination is tested.
    tracked: Vec<usize>,
    /// Processing order (largest duals first, so pruning bites early).
    order: Vec<usize>,
    /// Inclusive exponent bound per vertex, in original indexing.
    bounds: Vec<i64>,
    /// Vertex valencies, for the factor formula.
    degrees: Vec<usize>,
}

/// Ceiling on the nodes one enumeration may visit. The raw exponent box
/// is often astronomically larger; domination pruning is what makes the
/// walk feasible, so the budget is charged per visited node.
const ENUM_NODE_CAP: u64 = 50_000_000;

fn to_scaled(value: &BigRational, det: &BigInt) -> Result<i128> {
    let scaled = value * BigRational::from_integer(det.clone());
    if !scaled.is_integer() {
        return Err(Error::internal(
            "dual-lattice element is not integral after determinant scaling",
        ));
    }
    scaled
        .to_integer()
        .try_into()
        .map_err(|_| Error::input("determinant too large for exact enumeration"))
}

impl Enumeration {
    fn new(lat: &Lattice, class: &DiscriminantClass, x: &RationalCycle, i_set: &[usize]) -> Result<Self> {
        let g = lat.graph();
        let n = g.len();
        let det_big = lat.discriminant_group_order().clone();
        let det: i128 = det_big
            .clone()
            .try_into()
            .map_err(|_| Error::input("determinant too large for exact enumeration"))?;

        let mut duals = Vec::with_capacity(n);
        for v in 0..n {
            let dual = lat.dual_cycle(v);
            let row: Vec<i128> = dual
                .coeffs()
                .iter()
                .map(|c| to_scaled(c, &det_big))
                .collect::<Result<_>>()?;
            duals.push(row);
        }
        let x_scaled: Vec<i128> = x
            .coeffs()
            .iter()
            .map(|c| to_scaled(c, &det_big))
            .collect::<Result<_>>()?;
        let rep: Vec<i128> = class
            .representative()
            .coeffs()
            .iter()
            .map(|c| to_scaled(c, &det_big))
            .collect::<Result<_>>()?;

        let mut tracked: Vec<usize> = i_set.to_vec();
        tracked.sort_unstable();
        tracked.dedup();
        if tracked.iter().any(|&u| u >= n) {
            return Err(Error::input("vertex subset index out of range"));
        }

        // A single exponent k_w pushes l' above x on the tracked set as
        // soon as k_w · E*_w clears x there, because all dual
        // coordinates are strictly positive; that caps every exponent.
        let positive: Vec<usize> = tracked
            .iter()
            .copied()
            .filter(|&u| x_scaled[u] > 0)
            .collect();
        let mut bounds = vec![0i64; n];
        if !positive.is_empty() {
            for w in 0..n {
                let cutoff = positive
                    .iter()
                    .map(|&u| {
                        let d = duals[w][u];
                        // ceil(x_u / d) for positive numerator and denominator.
                        (x_scaled[u] + d - 1).div_euclid(d)
                    })
                    .max()
                    .expect("positive set checked nonempty");
                let mut bound = cutoff - 1;
                let delta = g.degree(w);
                if delta >= 2 {
                    bound = bound.min(delta as i128 - 2);
                }
                bounds[w] = i64::try_from(bound)
                    .map_err(|_| Error::input("enumeration bound exceeds supported range"))?;
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        let key = |v: usize| duals[v].iter().copied().min().unwrap_or(0);
        order.sort_by(|&a, &b| key(b).cmp(&key(a)));
        let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();

        Ok(Enumeration { duals, x: x_scaled, rep, det, tracked, order, bounds, degrees })
    }

    fn dominates(&self, partial: &[i128]) -> bool {
        self.tracked.iter().all(|&u| partial[u] >= self.x[u])
    }

    fn run(&self) -> Result<BigInt> {
        // Nothing to count when every point dominates x on the tracked
        // set already (x ≤ 0 there, or the set is empty).
        if self.tracked.iter().all(|&u| self.x[u] <= 0) {
            return Ok(BigInt::zero());
        }
        let n = self.duals.len();
        let mut partial = vec![0i128; n];
        let mut total = BigInt::zero();
        let mut visited = 0u64;
        self.dfs(0, &mut partial, &BigInt::one(), &mut total, &mut visited)?;
        Ok(total)
    }

    fn dfs(
        &self,
        pos: usize,
        partial: &mut Vec<i128>,
        acc: &BigInt,
        total: &mut BigInt,
        visited: &mut u64,
    ) -> Result<()> {
        *visited += 1;
        if *visited > ENUM_NODE_CAP {
            return Err(Error::Budget { states: *visited as u128, limit: ENUM_NODE_CAP });
        }
        if self.dominates(partial) {
            return Ok(());
        }
        if pos == self.duals.len() {
            if self.class_matches(partial) {
                *total += acc;
            }
            return Ok(());
        }
        let v = self.order[pos];
        let saved = partial.clone();
        for k in 0..=self.bounds[v] {
            if k > 0 {
                for u in 0..partial.len() {
                    partial[u] = partial[u]
                        .checked_add(self.duals[v][u])
                        .ok_or_else(|| {
                            Error::input("determinant too large for exact enumeration")
                        })?;
                }
                // Domination only grows with the exponent.
                if self.dominates(partial) {
                    break;
                }
            }
            let factor = vertex_factor(self.degrees[v], &BigInt::from(k));
            debug_assert!(!factor.is_zero());
            self.dfs(pos + 1, partial, &(acc * &factor), total, visited)?;
        }
        *partial = saved;
        Ok(())
    }

    fn class_matches(&self, partial: &[i128]) -> bool {
        partial
            .iter()
            .zip(&self.rep)
            .all(|(&p, &r)| (p - r).rem_euclid(self.det) == 0)
    }
}

/// `Q(h, x)`: the sum of `z(l')` over the class `h` restricted to
/// elements that do not dominate `x`. Requires `x` in the dual lattice
/// with `[x] = h` — under that assumption the sum is the periodic
/// constant normalization used by the surgery formula.
pub fn counting_q(lat: &Lattice, h: &DiscriminantClass, x: &RationalCycle) -> Result<BigInt> {
    let all: Vec<usize> = (0..lat.len()).collect();
    if lat.class_of(x)? != *h {
        return Err(Error::input(
            "the bounding cycle must represent the class being summed",
        ));
    }
    Enumeration::new(lat, h, x, &all)?.run()
}

/// The subset-restricted sum at the canonical class: `z(l')` summed over
/// `[l'] = [Z_K]` with domination of `Z_K` tested on `i_set` only.
///
/// The surgery interpretation of this sum is established only for the
/// subsets [`sw_bar`] selects (the complement of the next cycle support at
/// each step). Arbitrary subsets are exposed for experimentation; read
/// those values structurally, not as invariants.
pub fn dual_pc(lat: &Lattice, i_set: &[usize]) -> Result<BigInt> {
    if i_set.is_empty() {
        return Err(Error::input("vertex subset must be nonempty"));
    }
    let class = lat.class_of(lat.canonical_cycle())?;
    Enumeration::new(lat, &class, lat.canonical_cycle(), i_set)?.run()
}

/// One term of the surgery chain: the subgraph summed over, the vertex
/// set removed at this step, and its exact contribution.
#[derive(Debug, Clone)]
pub struct SurgeryStep {
    /// Ids of the current subgraph's vertices.
    pub vertex_ids: Vec<i64>,
    /// Ids of the vertices the sum is restricted to (removed next).
    pub removed_ids: Vec<i64>,
    /// The contribution `Q` of this step.
    pub contribution: BigInt,
}

/// The full surgery computation: every step plus the accumulated total.
#[derive(Debug, Clone)]
pub struct SurgeryTrace {
    steps: Vec<SurgeryStep>,
    total: BigInt,
}

impl SurgeryTrace {
    /// The steps in recursion order (ambient graph first).
    pub fn steps(&self) -> &[SurgeryStep] {
        &self.steps
    }

    /// The normalized Seiberg-Witten invariant.
    pub fn total(&self) -> &BigInt {
        &self.total
    }
}

/// The normalized Seiberg-Witten invariant of the link, by the surgery
/// recursion along the elliptic sequence: each step removes the
/// complement of the next sequence support, adds the subset-restricted
/// sum `dual_pc` over the removed part, and recurses into the support.
/// Requires an elliptic graph with all Euler numbers `≤ -2`.
pub fn sw_bar(lat: &Lattice) -> Result<SurgeryTrace> {
    crate::elliptic::require_minimal(lat.graph())?;
    if classify(lat)? != Classification::Elliptic {
        return Err(Error::input(
            "the surgery recursion is defined for elliptic graphs",
        ));
    }

    let mut steps = Vec::new();
    let mut total = BigInt::zero();
    let mut current: Option<PlumbingGraph> = Some(lat.graph().clone());
    let mut first = true;
    while let Some(g) = current.take() {
        let sub_lat = Lattice::new(g)?;
        if !first && classify(&sub_lat)? != Classification::Elliptic {
            return Err(Error::internal(
                "a surgery subgraph failed to be elliptic",
            ));
        }
        first = false;
        let g = sub_lat.graph();

        // The next subgraph of the chain: the head of the support
        // sequence when the canonical cycle is fractional, its second
        // term when integral, nothing once minimally elliptic.
        let seq = b_sequence(&sub_lat)?;
        let next_support: Option<&[usize]> = if !sub_lat.canonical_cycle().is_integral() {
            Some(&seq.supports()[0])
        } else if seq.m() >= 1 {
            Some(&seq.supports()[1])
        } else {
            None
        };

        let removed: Vec<usize> = match next_support {
            Some(kept) => (0..g.len()).filter(|v| !kept.contains(v)).collect(),
            None => (0..g.len()).collect(),
        };
        let q = dual_pc(&sub_lat, &removed)?;
        steps.push(SurgeryStep {
            vertex_ids: (0..g.len()).map(|v| g.id(v)).collect(),
            removed_ids: removed.iter().map(|&v| g.id(v)).collect(),
            contribution: q.clone(),
        });
        total += q;

        current = match next_support {
            Some(kept) => Some(g.subgraph(kept)?),
            None => None,
        };
    }
    Ok(SurgeryTrace { steps, total })
}
