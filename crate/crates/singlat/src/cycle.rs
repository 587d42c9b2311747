//! Rational cycles: elements of `L ⊗ Q` in the `E_v` basis.
//!
//! A cycle stores one exact rational coefficient per vertex, indexed like
//! the graph's internal vertex order. The distinguished sublattices are
//! `L` (all coefficients integral) and the dual lattice
//! `L' = { l' : (l', E_v) ∈ Z for all v }`, and the natural partial order
//! is componentwise — incomparable pairs are a real outcome, so comparison
//! is exposed three-valued alongside the plain `leq` convenience.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::graph::PlumbingGraph;

/// An element of `L ⊗ Q` as an exact-rational coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalCycle {
    coeffs: Vec<BigRational>,
}

impl RationalCycle {
    /// The zero cycle on `n` vertices.
    pub fn zero(n: usize) -> Self {
        RationalCycle { coeffs: vec![BigRational::zero(); n] }
    }

    /// The base cycle `E_v` on `n` vertices.
    pub fn base(n: usize, v: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); n];
        coeffs[v] = BigRational::one();
        RationalCycle { coeffs }
    }

    /// A cycle from integer coefficients.
    pub fn from_integers(values: &[i64]) -> Self {
        RationalCycle { coeffs: values.iter().map(|&x| crate::graph::big_rat(x)).collect() }
    }

    /// A cycle from rational coefficients.
    pub fn from_rationals(coeffs: Vec<BigRational>) -> Self {
        RationalCycle { coeffs }
    }

    /// Number of coefficients (= vertices of the carrying graph).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    /// True when the coefficient vector is empty.
    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `E_v`.
    pub fn coeff(&self, v: usize) -> &BigRational {
        &self.coeffs[v]
    }

    /// All coefficients, graph-indexed.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Mutable coefficient access (used by the in-place Laufer steps).
    pub fn coeff_mut(&mut self, v: usize) -> &mut BigRational {
        &mut self.coeffs[v]
    }

    /// Adds `E_v` in place.
    pub fn add_base(&mut self, v: usize) {
        let bumped = &self.coeffs[v] + BigRational::one();
        self.coeffs[v] = bumped;
    }

    /// True when the cycle is identically zero.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Membership in `L`: every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    /// True when every coefficient is `>= 0`.
    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// The support `|l|`: vertices with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| !self.coeffs[v].is_zero()).collect()
    }

    /// Componentwise floor and fractional part, `l = floor + frac` with
    /// every `frac` coefficient in `[0, 1)`.
    pub fn floor_frac(&self) -> (RationalCycle, RationalCycle) {
        let floor: Vec<BigRational> = self.coeffs.iter().map(|c| c.floor()).collect();
        let frac: Vec<BigRational> =
            self.coeffs.iter().zip(&floor).map(|(c, f)| c - f).collect();
        (RationalCycle { coeffs: floor }, RationalCycle { coeffs: frac })
    }

    /// Three-valued partial-order comparison: `None` when the cycles are
    /// incomparable. Tests of the form "not >=" must use this rather than
    /// a flipped `leq`.
    pub fn compare(&self, other: &RationalCycle) -> Option<Ordering> {
        debug_assert_eq!(self.len(), other.len());
        let mut le = true;
        let mut ge = true;
        for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
            match a.cmp(b) {
                Ordering::Less => ge = false,
                Ordering::Greater => le = false,
                Ordering::Equal => {}
            }
        }
        match (le, ge) {
            (true, true) => Some(Ordering::Equal),
            (true, false) => Some(Ordering::Less),
            (false, true) => Some(Ordering::Greater),
            (false, false) => None,
        }
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &RationalCycle) -> bool {
        matches!(self.compare(other), Some(Ordering::Less | Ordering::Equal))
    }

    /// Intersection pairing `(self, other)` on the graph's lattice.
    pub fn pair(&self, g: &PlumbingGraph, other: &RationalCycle) -> BigRational {
        debug_assert_eq!(self.len(), g.len());
        debug_assert_eq!(other.len(), g.len());
        let mut total = BigRational::zero();
        for v in 0..g.len() {
            if self.coeffs[v].is_zero() && other.coeffs[v].is_zero() {
                continue;
            }
            let diag = crate::graph::big_rat(g.euler(v)) * &self.coeffs[v] * &other.coeffs[v];
            total += diag;
        }
        for &(u, v) in g.edges() {
            let cross = &self.coeffs[u] * &other.coeffs[v] + &self.coeffs[v] * &other.coeffs[u];
            total += cross;
        }
        total
    }

    /// Pairing against a base cycle, `(self, E_v)`, in `O(deg v)`.
    pub fn pair_base(&self, g: &PlumbingGraph, v: usize) -> BigRational {
        let mut total = crate::graph::big_rat(g.euler(v)) * &self.coeffs[v];
        for &w in g.neighbors(v) {
            total += &self.coeffs[w];
        }
        total
    }

    /// Membership in the dual lattice `L'`: `(l', E_v)` is an integer for
    /// every `v`.
    pub fn in_dual_lattice(&self, g: &PlumbingGraph) -> bool {
        (0..g.len()).all(|v| self.pair_base(g, v).is_integer())
    }

    /// Membership in the Lipman cone `S'`: `(l', E_v) <= 0` for every `v`.
    pub fn in_lipman_cone(&self, g: &PlumbingGraph) -> bool {
        (0..g.len()).all(|v| !self.pair_base(g, v).is_positive())
    }

    /// Restriction to `subset`: coefficients outside are dropped, order of
    /// `subset` (which must be ascending) becomes the subgraph's order.
    pub fn restrict(&self, subset: &[usize]) -> RationalCycle {
        RationalCycle { coeffs: subset.iter().map(|&v| self.coeffs[v].clone()).collect() }
    }

    /// Embeds a cycle living on `sub` back into a cycle on `g`, matching
    /// vertices by external id; coefficients outside `sub` are zero.
    pub fn embed(&self, sub: &PlumbingGraph, g: &PlumbingGraph) -> RationalCycle {
        let mut coeffs = vec![BigRational::zero(); g.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            let v = g
                .index_of(sub.id(i))
                .expect("subgraph vertex id must exist in the ambient graph");
            coeffs[v] = c.clone();
        }
        RationalCycle { coeffs }
    }
}

impl Add for &RationalCycle {
    type Output = RationalCycle;
    fn add(self, rhs: &RationalCycle) -> RationalCycle {
        debug_assert_eq!(self.len(), rhs.len());
        RationalCycle {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RationalCycle {
    type Output = RationalCycle;
    fn sub(self, rhs: &RationalCycle) -> RationalCycle {
        debug_assert_eq!(self.len(), rhs.len());
        RationalCycle {
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &RationalCycle {
    type Output = RationalCycle;
    fn neg(self) -> RationalCycle {
        RationalCycle { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl Mul<&BigRational> for &RationalCycle {
    type Output = RationalCycle;
    fn mul(self, rhs: &BigRational) -> RationalCycle {
        RationalCycle { coeffs: self.coeffs.iter().map(|a| a * rhs).collect() }
    }
}

impl fmt::Display for RationalCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An element of the discriminant group `H = L'/L`, stored as its unique
/// representative with all coefficients in `[0, 1)`.
///
/// Two classes are equal iff the difference of any representatives is
/// integral; with the canonical representative that collapses to plain
/// equality, which the derived `PartialEq` provides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscriminantClass {
    rep: RationalCycle,
}

impl DiscriminantClass {
    /// Wraps a cycle already reduced to the semi-open cube; callers should
    /// prefer [`reduce_r`] / [`crate::lattice::Lattice::class_of`].
    pub fn from_reduced(rep: RationalCycle) -> Self {
        debug_assert!(rep.coeffs.iter().all(|c| {
            !c.is_negative() && c < &BigRational::one()
        }));
        DiscriminantClass { rep }
    }

    /// The canonical representative `r_h` (all coefficients in `[0, 1)`).
    pub fn representative(&self) -> &RationalCycle {
        &self.rep
    }

    /// The zero class on `n` vertices (the class of every `l ∈ L`).
    pub fn zero(n: usize) -> Self {
        DiscriminantClass { rep: RationalCycle::zero(n) }
    }

    /// True for the class of `L` itself.
    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
}

/// The canonical class representative of `l'`: the componentwise fractional
/// part, i.e. the unique cycle in `l' + L` with all coefficients in
/// `[0, 1)`. Idempotent, and constant on `L`-cosets.
pub fn reduce_r(l: &RationalCycle) -> RationalCycle {
    l.floor_frac().1
}

/// Convenience for building exact rationals in tests and fixtures.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
