//! The lattice `L` of a plumbing graph with its dual `L'` and the exact
//! invariants attached to the pair: the canonical cycle `Z_K` solving the
//! adjunction equations `(Z_K, E_v) = e_v + 2`, the dual basis `E*_v` with
//! `(E*_v, E_w) = -δ_vw`, the Riemann-Roch function
//! `χ(l') = -(l', l' - Z_K)/2`, and the discriminant group `H = L'/L`
//! of order `det(-I)`.
//!
//! Everything is solved once, eagerly and exactly, when the [`Lattice`]
//! is built; all later queries are read-only.

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::cycle::{reduce_r, DiscriminantClass, RationalCycle};
use crate::error::{Error, Result};
use crate::graph::{big_rat, PlumbingGraph};

/// A negative-definite plumbing lattice with its precomputed invariants.
#[derive(Debug, Clone)]
pub struct Lattice {
    graph: PlumbingGraph,
    z_k: RationalCycle,
    duals: Vec<RationalCycle>,
    det: BigInt,
}

impl Lattice {
    /// Validates negative definiteness and solves the adjunction and dual
    /// systems exactly.
    ///
    /// Fails with an input error naming the first non-negative principal
    /// minor when the intersection form is not negative definite.
    pub fn new(graph: PlumbingGraph) -> Result<Self> {
        if let Err(k) = graph.negative_definite_check() {
            return Err(Error::input(format!(
                "intersection form is not negative definite (leading {k}x{k} principal minor fails Sylvester's criterion)"
            )));
        }
        let n = graph.len();
        let inverse = invert_intersection(&graph)?;

        // E*_v is minus the v-th column of I^{-1}; I^{-1} is symmetric, so
        // columns and rows coincide.
        let duals: Vec<RationalCycle> = (0..n)
            .map(|v| RationalCycle::from_rationals(inverse[v].iter().map(|x| -x).collect()))
            .collect();
        for (v, dual) in duals.iter().enumerate() {
            if !dual.coeffs().iter().all(Signed::is_positive) {
                return Err(Error::internal(format!(
                    "dual cycle of vertex id {} has a non-positive coordinate",
                    graph.id(v)
                )));
            }
        }

        // Z_K = I^{-1} b with b_v = e_v + 2.
        let mut z_k_coeffs = vec![BigRational::zero(); n];
        for (v, coeff) in z_k_coeffs.iter_mut().enumerate() {
            for w in 0..n {
                *coeff += &inverse[v][w] * big_rat(graph.euler(w) + 2);
            }
        }
        let z_k = RationalCycle::from_rationals(z_k_coeffs);

        let det = graph.det_minus_intersection();
        if !det.is_positive() {
            return Err(Error::internal(
                "determinant of minus the intersection matrix is not positive",
            ));
        }

        let lat = Lattice { graph, z_k, duals, det };
        debug_assert!(lat.z_k.in_dual_lattice(&lat.graph));
        debug_assert!((0..n).all(|v| {
            (0..n).all(|w| {
                let expected =
                    if v == w { -BigRational::one() } else { BigRational::zero() };
                lat.duals[v].pair_base(&lat.graph, w) == expected
            })
        }));
        Ok(lat)
    }

    /// The underlying graph.
    pub fn graph(&self) -> &PlumbingGraph {
        &self.graph
    }

    /// Number of vertices.
    pub fn len(&self) -> usize {
        self.graph.len()
    }

    /// True when the graph has no vertices (never holds for a valid build).
    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    /// The canonical cycle `Z_K`, the unique solution of
    /// `(Z_K, E_v) = e_v + 2` for all `v`.
    pub fn canonical_cycle(&self) -> &RationalCycle {
        &self.z_k
    }

    /// The dual base cycle `E*_v` with `(E*_v, E_w) = -δ_vw`; all its
    /// coordinates are strictly positive.
    pub fn dual_cycle(&self, v: usize) -> &RationalCycle {
        &self.duals[v]
    }

    /// `χ(l') = -(l', l' - Z_K)/2`.
    pub fn chi(&self, l: &RationalCycle) -> BigRational {
        let shifted = l - &self.z_k;
        -l.pair(&self.graph, &shifted) / big_rat(2)
    }

    /// Order of the discriminant group `H = L'/L`, equal to `det(-I)`.
    pub fn discriminant_group_order(&self) -> &BigInt {
        &self.det
    }

    /// `(Z_K, Z_K) + |V|`, exposed for reporting.
    pub fn k_squared_plus_card(&self) -> BigRational {
        self.z_k.pair(&self.graph, &self.z_k) + big_rat(self.graph.len() as i64)
    }

    /// The canonical representative `r_{[l']}`: the componentwise
    /// fractional part of `l'`. Errors when `l'` is not in `L'`.
    pub fn reduce_r(&self, l: &RationalCycle) -> Result<RationalCycle> {
        if !l.in_dual_lattice(&self.graph) {
            return Err(Error::input(
                "cycle is not in the dual lattice L' (some pairing with a base cycle is non-integral)",
            ));
        }
        Ok(reduce_r(l))
    }

    /// The class `[l'] ∈ L'/L`. Errors when `l'` is not in `L'`.
    pub fn class_of(&self, l: &RationalCycle) -> Result<DiscriminantClass> {
        Ok(DiscriminantClass::from_reduced(self.reduce_r(l)?))
    }
}

/// Exact inverse of the intersection matrix by Gauss-Jordan elimination
/// with partial pivoting. The matrix is nonsingular for every negative
/// definite graph, so a pivot always exists.
fn invert_intersection(g: &PlumbingGraph) -> Result<Vec<Vec<BigRational>>> {
    let n = g.len();
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|v| (0..n).map(|w| big_rat(g.intersection(v, w))).collect())
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|v| {
            (0..n)
                .map(|w| if v == w { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n)
            .find(|&r| !m[r][col].is_zero())
            .ok_or_else(|| Error::internal("singular intersection matrix"))?;
        m.swap(col, pivot_row);
        inv.swap(col, pivot_row);

        let pivot = m[col][col].clone();
        for x in m[col].iter_mut().chain(inv[col].iter_mut()) {
            *x /= &pivot;
        }
        for row in 0..n {
            if row == col || m[row][col].is_zero() {
                continue;
            }
            let factor = m[row][col].clone();
            for k in 0..n {
                let delta = &factor * &m[col][k];
                m[row][k] -= delta;
                let delta = &factor * &inv[col][k];
                inv[row][k] -= delta;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cycle::rat;
    use proptest::prelude::*;

    fn single(euler: i64) -> Lattice {
        Lattice::new(PlumbingGraph::new(&[(0, euler)], &[]).unwrap()).unwrap()
    }

    /// A 4-vertex star: center -2 with three -3 legs.
    fn star() -> Lattice {
        Lattice::new(
            PlumbingGraph::new(
                &[(0, -2), (1, -3), (2, -3), (3, -3)],
                &[(0, 1), (0, 2), (0, 3)],
            )
            .unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn canonical_cycle_of_single_vertices() {
        assert!(single(-2).canonical_cycle().is_zero());
        let l = single(-3);
        assert_eq!(l.canonical_cycle().coeff(0), &rat(1, 3));
        assert_eq!(l.k_squared_plus_card(), rat(2, 3));
        assert_eq!(single(-2).k_squared_plus_card(), rat(1, 1));
    }

    #[test]
    fn dual_cycles_satisfy_their_defining_pairings() {
        let lat = star();
        let g = lat.graph();
        for v in 0..lat.len() {
            let dual = lat.dual_cycle(v);
            assert!(dual.coeffs().iter().all(|c| c > &rat(0, 1)));
            for w in 0..lat.len() {
                let expected = if v == w { rat(-1, 1) } else { rat(0, 1) };
                assert_eq!(dual.pair_base(g, w), expected);
            }
        }
    }

    #[test]
    fn determinant_scales_duals_into_the_lattice() {
        let lat = star();
        let det = BigRational::from(lat.discriminant_group_order().clone());
        for v in 0..lat.len() {
            assert!((lat.dual_cycle(v) * &det).is_integral());
        }
        assert_eq!(single(-7).discriminant_group_order(), &BigInt::from(7));
    }

    #[test]
    fn chi_vanishes_at_zero_and_canonical_cycle() {
        let lat = star();
        assert_eq!(lat.chi(&RationalCycle::zero(lat.len())), rat(0, 1));
        assert_eq!(lat.chi(lat.canonical_cycle()), rat(0, 1));
        // χ(E_v) = 1 on any graph.
        for v in 0..lat.len() {
            assert_eq!(lat.chi(&RationalCycle::base(lat.len(), v)), rat(1, 1));
        }
    }

    #[test]
    fn class_of_rejects_cycles_outside_the_dual_lattice() {
        let lat = single(-2);
        let bad = RationalCycle::from_rationals(vec![rat(1, 3)]);
        assert!(lat.class_of(&bad).is_err());
        let good = RationalCycle::from_rationals(vec![rat(1, 2)]);
        assert_eq!(lat.reduce_r(&good).unwrap(), good);
        let shifted = RationalCycle::from_rationals(vec![rat(3, 2)]);
        assert_eq!(lat.class_of(&shifted).unwrap(), lat.class_of(&good).unwrap());
    }

    fn small_cycle(n: usize) -> impl Strategy<Value = RationalCycle> {
        prop::collection::vec((-12i64..=12, 1i64..=4), n)
            .prop_map(|parts| {
                RationalCycle::from_rationals(
                    parts.into_iter().map(|(p, q)| rat(p, q)).collect(),
                )
            })
    }

    proptest! {
        #[test]
        fn chi_expansion_identity(a in small_cycle(4), b in small_cycle(4)) {
            let lat = star();
            let sum = &a + &b;
            prop_assert_eq!(
                lat.chi(&sum),
                lat.chi(&a) + lat.chi(&b) - a.pair(lat.graph(), &b)
            );
        }

        #[test]
        fn chi_is_symmetric_about_half_the_canonical_cycle(a in small_cycle(4)) {
            let lat = star();
            let mirrored = lat.canonical_cycle() - &a;
            prop_assert_eq!(lat.chi(&a), lat.chi(&mirrored));
        }

        #[test]
        fn classes_ignore_integral_shifts(ks in prop::collection::vec(0i64..=6, 4), shift in prop::collection::vec(-5i64..=5, 4)) {
            // Build a genuine element of L' as a Z-combination of duals.
            let lat = star();
            let mut a = RationalCycle::zero(4);
            for (v, &k) in ks.iter().enumerate() {
                a = &a + &(lat.dual_cycle(v) * &rat(k, 1));
            }
            prop_assert!(a.in_dual_lattice(lat.graph()));
            let shifted = &a + &RationalCycle::from_integers(&shift);
            prop_assert_eq!(
                lat.class_of(&a).unwrap(),
                lat.class_of(&shifted).unwrap()
            );
        }
    }
}
