//! The even unimodular hyperbolic lattice `E10` in the basis of its
//! fundamental roots.
//!
//! The Coxeter diagram is `T(2,3,7)`: a chain `e_1 – … – e_9` with `e_10`
//! attached to `e_3`. In code the roots are indexed `0..10`, so `e_k` is
//! index `k - 1`. The Weyl chamber is `{x : x.e_i >= 0}` and `h` is its
//! canonical interior point with `h.e_i = 1`.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};
use crate::lattice::{Isometry, Lattice};
use crate::matrix::{gcd_slice, IntMatrix};
use crate::roots::{reflection_matrix, MAX_REDUCTION_STEPS};

pub const RANK: usize = 10;

/// Edges of the `T(2,3,7)` diagram, 0-based.
pub const EDGES: [(usize, usize); 9] =
    [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8), (2, 9)];

#[derive(Clone, Debug)]
pub struct E10 {
    lattice: Lattice,
    /// `G⁻¹`, integral since `E10` is unimodular.
    gram_inv: IntMatrix,
    h: Vec<i64>,
    reflections: Vec<Isometry>,
}

/// Basis of a hyperbolic plane: `f1² = f2² = 0`, `f1.f2 = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HyperbolicPlane {
    pub f1: Vec<i64>,
    pub f2: Vec<i64>,
}

/// `reduced = s_{w_k}(… s_{w_1}(x))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionResult {
    pub word: Vec<usize>,
    pub reduced: Vec<i64>,
    pub steps: usize,
}

/// Outcome of a bounded plane search. A shortfall is reported, not an error.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneSearch {
    pub bound: i64,
    pub requested: usize,
    pub isotropic_vectors: usize,
    pub planes: Vec<HyperbolicPlane>,
}

impl PlaneSearch {
    pub fn is_complete(&self) -> bool {
        self.planes.len() >= self.requested
    }
}

pub fn build_e10() -> Result<E10> {
    E10::new()
}

impl E10 {
    pub fn new() -> Result<Self> {
        let mut g = IntMatrix::zeros(RANK, RANK);
        for i in 0..RANK {
            g[(i, i)] = -2;
        }
        for (i, j) in EDGES {
            g[(i, j)] = 1;
            g[(j, i)] = 1;
        }
        let lattice = Lattice::new(g)?;

        // Smallest d > 0 making the solution of G h = d·1 integral.
        let sol = lattice.gram().solve_rational(&[1; RANK])?;
        let d = sol.iter().fold(num_bigint::BigInt::from(1), |acc, q| num_integer::lcm(acc, q.denom().clone()));
        let h = sol
            .iter()
            .map(|q| (q * &d).to_integer().to_i64().ok_or(LatticeError::Overflow))
            .collect::<Result<Vec<_>>>()?;

        let mut inv_cols = Vec::with_capacity(RANK);
        for i in 0..RANK {
            let col = lattice.gram().solve_rational(&unit(i))?;
            let col = col
                .iter()
                .map(|q| match q.is_integer() {
                    true => q.to_integer().to_i64().ok_or(LatticeError::Overflow),
                    false => Err(LatticeError::Internal("E10 Gram matrix is not unimodular".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            inv_cols.push(col);
        }
        let gram_inv = IntMatrix::from_columns(&inv_cols, RANK)?;

        let reflections = (0..RANK)
            .map(|i| reflection_matrix(&lattice, &unit(i)))
            .collect::<Result<Vec<_>>>()?;
        let e10 = E10 { lattice, gram_inv, h, reflections };
        e10.self_check()?;
        Ok(e10)
    }

    fn self_check(&self) -> Result<()> {
        let inv = self.lattice.invariants()?;
        if inv.determinant != -1 || !inv.is_even || inv.signature != (1, 9) {
            return Err(LatticeError::Internal(format!("E10 invariants {inv:?}")));
        }
        let hp = self.lattice.pairings(&self.h)?;
        if hp.iter().any(|&v| v <= 0) || self.lattice.square(&self.h)? <= 0 {
            return Err(LatticeError::Internal("h is not a timelike chamber point".into()));
        }
        Ok(())
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// Interior chamber point, `h.e_i > 0` for every fundamental root.
    pub fn h(&self) -> &[i64] {
        &self.h
    }

    /// The unique vector `x` with `x.e_i = pairings[i]`.
    pub fn from_pairings(&self, pairings: &[i64]) -> Result<Vec<i64>> {
        self.gram_inv.mul_vec(pairings)
    }

    pub fn inner(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.lattice.inner(x, y)
    }

    pub fn fundamental_reflection(&self, i: usize) -> &Isometry {
        &self.reflections[i]
    }

    /// `s_{w_1} ∘ … ∘ s_{w_k}`.
    pub fn word_matrix(&self, word: &[usize]) -> Result<Isometry> {
        word.iter()
            .try_fold(Isometry::identity(RANK), |acc, &i| acc.compose(&self.reflections[i]))
    }

    /// Applies `s_{w_1}` first, then `s_{w_2}`, and so on.
    pub fn replay_on_vector(&self, word: &[usize], x: &[i64]) -> Result<Vec<i64>> {
        let mut v = x.to_vec();
        for &i in word {
            let p = self.lattice.pairings(&v)?[i];
            v[i] = v[i].checked_add(p).ok_or(LatticeError::Overflow)?;
        }
        Ok(v)
    }

    pub fn validate_plane(&self, u: &HyperbolicPlane) -> Result<()> {
        let bad = |m: &str| Err(LatticeError::InvalidPlane(m.to_string()));
        if u.f1.len() != RANK || u.f2.len() != RANK {
            return bad("wrong length");
        }
        if self.inner(&u.f1, &u.f1)? != 0 || self.inner(&u.f2, &u.f2)? != 0 {
            return bad("f1, f2 must be isotropic");
        }
        if self.inner(&u.f1, &u.f2)? != 1 {
            return bad("f1.f2 must be 1");
        }
        if gcd_slice(&u.f1) != 1 || gcd_slice(&u.f2) != 1 {
            return bad("f1, f2 must be primitive");
        }
        if self.inner(&u.f1, &self.h)? <= 0 || self.inner(&u.f2, &self.h)? <= 0 {
            return bad("f1, f2 must lie on the positive side of h");
        }
        Ok(())
    }

    /// Primitive isotropic vectors with coordinates in `[-bound, bound]`
    /// and positive pairing with `h`, in lexicographic order.
    pub fn isotropic_vectors(&self, bound: i64) -> Vec<Vec<i64>> {
        isotropic_in_box(-bound, bound)
    }

    /// Hyperbolic planes among coordinate-bounded vectors, as pairs
    /// `f1 < f2` in lexicographic order.
    pub fn find_hyperbolic_planes(&self, bound: i64, count: usize) -> Result<PlaneSearch> {
        if bound < 1 {
            return Err(LatticeError::Malformed("bound must be at least 1".into()));
        }
        let iso = self.isotropic_vectors(bound);
        let paired: Vec<Vec<i64>> = iso.iter().map(|v| self.lattice.pairings(v)).collect::<Result<_>>()?;
        let mut planes = Vec::new();
        'outer: for i in 0..iso.len() {
            for j in i + 1..iso.len() {
                if planes.len() >= count {
                    break 'outer;
                }
                let p: i64 = paired[i].iter().zip(&iso[j]).map(|(a, b)| a * b).sum();
                if p == 1 {
                    planes.push(HyperbolicPlane { f1: iso[i].clone(), f2: iso[j].clone() });
                }
            }
        }
        Ok(PlaneSearch { bound, requested: count, isotropic_vectors: iso.len(), planes })
    }

    /// `x ↦ 2((x.f2) f1 + (x.f1) f2) - x`: identity on `U`, `-1` on `U^⊥`.
    pub fn sigma_u(&self, u: &HyperbolicPlane) -> Result<Isometry> {
        self.validate_plane(u)?;
        let g1 = self.lattice.pairings(&u.f1)?;
        let g2 = self.lattice.pairings(&u.f2)?;
        let mut m = IntMatrix::zeros(RANK, RANK);
        for i in 0..RANK {
            for j in 0..RANK {
                let v = 2 * (i128::from(u.f1[i]) * i128::from(g2[j]) + i128::from(u.f2[i]) * i128::from(g1[j]))
                    - i128::from(i == j);
                m[(i, j)] = i64::try_from(v).map_err(|_| LatticeError::Overflow)?;
            }
        }
        Ok(Isometry { matrix: m })
    }

    /// Whether `g` preserves the cone component containing `h`.
    pub fn is_in_o_plus(&self, g: &Isometry) -> Result<bool> {
        self.lattice.check_isometry(g)?;
        Ok(self.inner(&g.apply(&self.h)?, &self.h)? > 0)
    }

    /// Membership in the 2-congruence subgroup: `O⁺` and `≡ id mod 2`.
    pub fn is_in_g0(&self, g: &Isometry) -> Result<bool> {
        Ok(self.is_in_o_plus(g)? && g.is_identity_mod2())
    }

    /// Walks `x` into the chamber, reflecting at the smallest index with
    /// negative pairing. Each step lowers `x.h` by at least one, so the
    /// walk terminates on the closed positive cone.
    pub fn chamber_reduce(&self, x: &[i64]) -> Result<ReductionResult> {
        if x.len() != RANK {
            return Err(LatticeError::DimensionMismatch { expected: RANK, found: x.len() });
        }
        if self.inner(x, x)? < 0 || self.inner(x, &self.h)? < 0 {
            return Err(LatticeError::OutsidePositiveCone);
        }
        let mut v = x.to_vec();
        let mut word = Vec::new();
        loop {
            let pairs = self.lattice.pairings(&v)?;
            let Some(i) = pairs.iter().position(|&p| p < 0) else { break };
            if word.len() >= MAX_REDUCTION_STEPS {
                return Err(LatticeError::IterationCap(MAX_REDUCTION_STEPS));
            }
            v[i] = v[i].checked_add(pairs[i]).ok_or(LatticeError::Overflow)?;
            word.push(i);
        }
        let steps = word.len();
        Ok(ReductionResult { word, reduced: v, steps })
    }

    /// A word with `g = s_{w_1} ∘ … ∘ s_{w_k}`, found by reducing `g(h)`.
    ///
    /// The reduction word `w` brings `g(h)` back to `h`, so
    /// `s_{w_k} ⋯ s_{w_1} g` fixes the chamber and is therefore the
    /// identity; the `T(2,3,7)` diagram has no symmetries.
    pub fn express_in_fundamental_reflections(&self, g: &Isometry) -> Result<Vec<usize>> {
        if !self.is_in_o_plus(g)? {
            return Err(LatticeError::NotInOPlus);
        }
        let red = self.chamber_reduce(&g.apply(&self.h)?)?;
        if red.reduced != self.h {
            return Err(LatticeError::Internal("g(h) did not reduce to h".into()));
        }
        if self.word_matrix(&red.word)? != *g {
            return Err(LatticeError::Internal("word does not replay to g".into()));
        }
        Ok(red.word)
    }
}

fn unit(i: usize) -> Vec<i64> {
    let mut v = vec![0; RANK];
    v[i] = 1;
    v
}

// On the T(2,3,7) tree the form splits as
//
//   x² = x_3² - [ Σ_edges (x_i - x_j)² + x_1² + x_9² + x_10² ],
//
// and once x_3 is fixed the bracket is a sum over the three arms hanging
// off e_3. Each arm's contribution only grows as the arm is filled in, so
// arms are enumerated separately under the budget x_3² and then combined.
const ARMS: [&[usize]; 3] = [&[1, 0], &[9], &[3, 4, 5, 6, 7, 8]];
const CENTER: usize = 2;

/// Primitive isotropic vectors with every coordinate in `[lo, hi]` and
/// positive coordinate sum (that is, `x.h > 0`), sorted lexicographically.
pub(crate) fn isotropic_in_box(lo: i64, hi: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if lo > hi {
        return out;
    }
    for c in lo..=hi {
        if c == 0 {
            // Then the bracket must vanish, forcing x = 0.
            continue;
        }
        let budget = c * c;
        let arms: Vec<Vec<(i64, Vec<i64>)>> = ARMS
            .iter()
            .map(|arm| {
                let mut sols = Vec::new();
                let mut vals = Vec::with_capacity(arm.len());
                arm_fill(c, arm.len(), 0, budget, lo, hi, &mut vals, &mut sols);
                sols
            })
            .collect();
        for (ca, va) in &arms[0] {
            for (cb, vb) in &arms[1] {
                if ca + cb > budget {
                    continue;
                }
                for (cc, vc) in &arms[2] {
                    if ca + cb + cc != budget {
                        continue;
                    }
                    let mut x = vec![0; RANK];
                    x[CENTER] = c;
                    for (arm, vals) in ARMS.iter().zip([va, vb, vc]) {
                        for (&i, &v) in arm.iter().zip(vals) {
                            x[i] = v;
                        }
                    }
                    if x.iter().sum::<i64>() > 0 && gcd_slice(&x) == 1 {
                        out.push(x);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

// Fills an arm outward from the centre; the last node also pays its own square.
#[allow(clippy::too_many_arguments)]
fn arm_fill(
    prev: i64,
    remaining: usize,
    cost: i64,
    budget: i64,
    lo: i64,
    hi: i64,
    vals: &mut Vec<i64>,
    sols: &mut Vec<(i64, Vec<i64>)>,
) {
    for v in lo..=hi {
        let mut c = cost + (prev - v) * (prev - v);
        if remaining == 1 {
            c += v * v;
        }
        if c > budget {
            continue;
        }
        vals.push(v);
        if remaining == 1 {
            sols.push((c, vals.clone()));
        } else {
            arm_fill(v, remaining - 1, c, budget, lo, hi, vals, sols);
        }
        vals.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        let e = build_e10().unwrap();
        let inv = e.lattice().invariants().unwrap();
        assert_eq!((inv.determinant, inv.is_even, inv.signature), (-1, true, (1, 9)));
        for i in 0..RANK {
            assert_eq!(e.inner(&unit(i), &unit(i)).unwrap(), -2);
            assert_eq!(e.inner(&unit(i), e.h()).unwrap(), 1);
        }
        assert_eq!(e.inner(&unit(0), &unit(2)).unwrap(), 0);
        assert_eq!(e.inner(&unit(2), &unit(9)).unwrap(), 1);
    }

    #[test]
    fn plane_validation() {
        let e = build_e10().unwrap();
        let s = e.find_hyperbolic_planes(7, 1).unwrap();
        let u = &s.planes[0];
        assert!(e.validate_plane(u).is_ok());
        let bad = HyperbolicPlane { f1: u.f2.iter().map(|v| -v).collect(), f2: u.f1.clone() };
        assert!(matches!(e.sigma_u(&bad), Err(LatticeError::InvalidPlane(_))));
        let zero = HyperbolicPlane { f1: vec![0; RANK], f2: vec![0; RANK] };
        assert!(e.validate_plane(&zero).is_err());
        assert!(e.find_hyperbolic_planes(0, 1).is_err());
    }

    #[test]
    fn small_bounds() {
        let e = build_e10().unwrap();
        // Every nonzero isotropic vector has |x_3| >= 6.
        for bound in 1..=5 {
            let s = e.find_hyperbolic_planes(bound, 1).unwrap();
            assert_eq!((s.isotropic_vectors, s.planes.len()), (0, 0), "bound {bound}");
            assert!(!s.is_complete());
        }
        let s6 = e.find_hyperbolic_planes(6, usize::MAX).unwrap();
        assert_eq!((s6.isotropic_vectors, s6.planes.len()), (7, 21));
        let s7 = e.find_hyperbolic_planes(7, usize::MAX).unwrap();
        assert_eq!((s7.isotropic_vectors, s7.planes.len()), (13, 72));
    }

    #[test]
    fn pairing_coordinates() {
        let e = build_e10().unwrap();
        assert_eq!(e.from_pairings(&[1; RANK]).unwrap(), e.h());
        let c = [3, -1, 0, 2, 0, 0, -5, 1, 0, 4];
        let x = e.from_pairings(&c).unwrap();
        assert_eq!(e.lattice().pairings(&x).unwrap(), c);
    }

    #[test]
    fn reduce_simple() {
        let e = build_e10().unwrap();
        let r = e.chamber_reduce(e.h()).unwrap();
        assert!(r.word.is_empty());
        let x = e.fundamental_reflection(0).apply(e.h()).unwrap();
        let r = e.chamber_reduce(&x).unwrap();
        assert_eq!(r.word, vec![0]);
        assert_eq!(r.reduced, e.h());
        let zero = e.chamber_reduce(&[0; RANK]).unwrap();
        assert_eq!((zero.word.len(), zero.reduced), (0, vec![0; RANK]));
        assert_eq!(e.chamber_reduce(&unit(0)), Err(LatticeError::OutsidePositiveCone));
        let neg_h: Vec<i64> = e.h().iter().map(|v| -v).collect();
        assert_eq!(e.chamber_reduce(&neg_h), Err(LatticeError::OutsidePositiveCone));
    }

    #[test]
    fn o_plus_and_g0() {
        let e = build_e10().unwrap();
        assert!(e.is_in_o_plus(&Isometry::identity(RANK)).unwrap());
        assert!(!e.is_in_o_plus(&Isometry::minus_identity(RANK)).unwrap());
        assert!(e.is_in_g0(&Isometry::identity(RANK)).unwrap());
        assert!(!e.is_in_g0(e.fundamental_reflection(0)).unwrap());
        assert_eq!(e.express_in_fundamental_reflections(e.fundamental_reflection(4)).unwrap(), vec![4]);
        assert!(e.express_in_fundamental_reflections(&Isometry::identity(RANK)).unwrap().is_empty());
        assert_eq!(
            e.express_in_fundamental_reflections(&Isometry::minus_identity(RANK)),
            Err(LatticeError::NotInOPlus)
        );
    }
}
