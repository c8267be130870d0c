//! The quadratic space `E10 ⊗ F2`, bit-packed: one `u16` per vector, bit
//! `i` holding the coordinate on `e_{i+1}`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::e10::{E10, RANK};
use crate::error::{LatticeError, Result};
use crate::lattice::{Isometry, Lattice};

const FULL: u16 = (1 << RANK) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2Vector(pub u16);

impl F2Vector {
    pub const ZERO: F2Vector = F2Vector(0);

    pub fn bit(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn bits(self) -> [u8; RANK] {
        std::array::from_fn(|i| u8::from(self.bit(i)))
    }

    pub fn from_bits(bits: &[u8]) -> Result<Self> {
        if bits.len() != RANK {
            return Err(LatticeError::DimensionMismatch { expected: RANK, found: bits.len() });
        }
        let mut v = 0u16;
        for (i, &b) in bits.iter().enumerate() {
            match b {
                0 => {}
                1 => v |= 1 << i,
                _ => return Err(LatticeError::Malformed(format!("bit {b} is not 0 or 1"))),
            }
        }
        Ok(F2Vector(v))
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Every vector of `F2^10` in increasing bit order.
    pub fn all() -> impl Iterator<Item = F2Vector> {
        (0..=FULL).map(F2Vector)
    }
}

impl std::ops::Add for F2Vector {
    type Output = F2Vector;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: F2Vector) -> F2Vector {
        F2Vector(self.0 ^ rhs.0)
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in self.bits() {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl Serialize for F2Vector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.bits().serialize(s)
    }
}

impl<'de> Deserialize<'de> for F2Vector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let bits = Vec::<u8>::deserialize(d)?;
        F2Vector::from_bits(&bits).map_err(serde::de::Error::custom)
    }
}

/// `q(x̄) = x²/2 mod 2` with polar form `b(x̄, ȳ) = x.y mod 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2QuadSpace {
    diag: u16,
    upper: [u16; RANK],
    polar: [u16; RANK],
}

/// A linear map of `F2^10` stored by columns.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F2Isometry {
    cols: [u16; RANK],
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropicCount {
    pub nonzero_isotropic: usize,
    pub total: usize,
    pub nonisotropic: usize,
}

#[inline]
fn parity(x: u16) -> bool {
    x.count_ones() & 1 == 1
}

impl F2QuadSpace {
    pub fn from_e10(e10: &E10) -> Self {
        Self::from_lattice(e10.lattice()).expect("E10 is even of rank 10")
    }

    pub fn from_lattice(lattice: &Lattice) -> Result<Self> {
        if lattice.rank() != RANK {
            return Err(LatticeError::DimensionMismatch { expected: RANK, found: lattice.rank() });
        }
        let g = lattice.gram();
        let mut diag = 0u16;
        let mut upper = [0u16; RANK];
        let mut polar = [0u16; RANK];
        for i in 0..RANK {
            if g[(i, i)] % 2 != 0 {
                return Err(LatticeError::Malformed("lattice is not even".into()));
            }
            if (g[(i, i)] / 2).rem_euclid(2) == 1 {
                diag |= 1 << i;
            }
            for j in 0..RANK {
                if i != j && g[(i, j)].rem_euclid(2) == 1 {
                    polar[i] |= 1 << j;
                    if j > i {
                        upper[i] |= 1 << j;
                    }
                }
            }
        }
        Ok(F2QuadSpace { diag, upper, polar })
    }

    pub fn q(&self, x: F2Vector) -> u8 {
        let mut acc = parity(x.0 & self.diag);
        let mut rest = x.0;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc ^= parity(x.0 & self.upper[i]);
        }
        u8::from(acc)
    }

    pub fn b(&self, x: F2Vector, y: F2Vector) -> u8 {
        let mut acc = false;
        let mut rest = x.0;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            acc ^= parity(y.0 & self.polar[i]);
        }
        u8::from(acc)
    }

    pub fn is_isotropic(&self, x: F2Vector) -> bool {
        self.q(x) == 0
    }

    pub fn preserves(&self, g: &F2Isometry) -> bool {
        F2Vector::all().all(|x| self.q(g.apply(x)) == self.q(x))
    }

    /// Exhaustive count over all 1024 vectors.
    pub fn count_isotropic(&self) -> IsotropicCount {
        let total = F2Vector::all().filter(|&x| self.is_isotropic(x)).count();
        IsotropicCount { nonzero_isotropic: total - 1, total, nonisotropic: (1 << RANK) - total }
    }

    pub fn isotropic_vectors(&self) -> Vec<F2Vector> {
        F2Vector::all().filter(|&x| !x.is_zero() && self.is_isotropic(x)).collect()
    }

    /// Orbit of `v` under the group generated by `gens`, sorted by bit value.
    pub fn orbit(&self, v: F2Vector, gens: &[F2Isometry]) -> Vec<F2Vector> {
        let mut seen = BTreeSet::from([v]);
        let mut frontier = vec![v];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = g.apply(x);
                if seen.insert(y) {
                    frontier.push(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Orbit size of a nonzero isotropic class under `gens`.
    pub fn ramification_degree(&self, f: F2Vector, gens: &[F2Isometry]) -> Result<usize> {
        if f.is_zero() {
            return Err(LatticeError::NotHalfFiber("zero vector"));
        }
        if !self.is_isotropic(f) {
            return Err(LatticeError::NotHalfFiber("q(f) = 1"));
        }
        Ok(self.orbit(f, gens).len())
    }

    /// Mod-2 images of the ten fundamental reflections of `E10`.
    pub fn reflection_generators(&self, e10: &E10) -> Vec<F2Isometry> {
        (0..RANK)
            .map(|i| self.reduce_isometry(e10.fundamental_reflection(i)).expect("reflections are isometries"))
            .collect()
    }

    /// Entrywise reduction mod 2, validated against `q`.
    pub fn reduce_isometry(&self, g: &Isometry) -> Result<F2Isometry> {
        let f = F2Isometry::reduce_unchecked(g)?;
        if !self.preserves(&f) {
            return Err(LatticeError::NotF2Isometry);
        }
        Ok(f)
    }
}

pub fn reduce_vector(x: &[i64]) -> Result<F2Vector> {
    if x.len() != RANK {
        return Err(LatticeError::DimensionMismatch { expected: RANK, found: x.len() });
    }
    Ok(F2Vector(x.iter().enumerate().fold(0u16, |acc, (i, v)| acc | ((v.rem_euclid(2) as u16) << i))))
}

impl F2Isometry {
    pub fn identity() -> Self {
        F2Isometry { cols: std::array::from_fn(|i| 1 << i) }
    }

    fn reduce_unchecked(g: &Isometry) -> Result<Self> {
        if g.rank() != RANK {
            return Err(LatticeError::DimensionMismatch { expected: RANK, found: g.rank() });
        }
        let cols = std::array::from_fn(|j| reduce_vector(&g.matrix.column(j)).expect("length checked").0);
        Ok(F2Isometry { cols })
    }

    pub fn apply(&self, x: F2Vector) -> F2Vector {
        let mut out = 0u16;
        let mut rest = x.0;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out ^= self.cols[i];
        }
        F2Vector(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Rows of the 0/1 matrix.
    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..RANK).map(|i| (0..RANK).map(|j| u8::from(self.cols[j] >> i & 1 == 1)).collect()).collect()
    }
}
