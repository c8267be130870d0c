//! Integral lattices given by a Gram matrix, their isometries, and the
//! discriminant group `L^∨ / L`.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};
use crate::matrix::{checked_dot, IntMatrix};

/// A nondegenerate integral lattice in coordinates: `x.y = xᵀ G y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeRepr", into = "LatticeRepr")]
pub struct Lattice {
    gram: IntMatrix,
}

#[derive(Serialize, Deserialize)]
struct LatticeRepr {
    rank: usize,
    gram: IntMatrix,
}

impl TryFrom<LatticeRepr> for Lattice {
    type Error = LatticeError;
    fn try_from(r: LatticeRepr) -> Result<Self> {
        if r.gram.nrows() != r.rank || r.gram.ncols() != r.rank {
            return Err(LatticeError::DimensionMismatch { expected: r.rank, found: r.gram.nrows() });
        }
        Lattice::new(r.gram)
    }
}

impl From<Lattice> for LatticeRepr {
    fn from(l: Lattice) -> Self {
        LatticeRepr { rank: l.rank(), gram: l.gram }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeInvariants {
    pub determinant: i64,
    pub is_even: bool,
    /// `(positive, negative)` inertia.
    pub signature: (usize, usize),
}

impl Lattice {
    /// Validates symmetry and nondegeneracy.
    pub fn new(gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(LatticeError::DimensionMismatch { expected: gram.nrows(), found: gram.ncols() });
        }
        if gram.nrows() == 0 {
            return Err(LatticeError::Malformed("rank must be positive".into()));
        }
        if !gram.is_symmetric() {
            return Err(LatticeError::NotSymmetric);
        }
        if gram.determinant()?.is_zero() {
            return Err(LatticeError::Degenerate);
        }
        Ok(Lattice { gram })
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    /// The hyperbolic plane `U` with Gram `[[0,1],[1,0]]`.
    pub fn hyperbolic_plane() -> Self {
        Lattice { gram: IntMatrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap() }
    }

    pub fn rank(&self) -> usize {
        self.gram.nrows()
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    fn check_len(&self, v: &[i64]) -> Result<()> {
        if v.len() != self.rank() {
            return Err(LatticeError::DimensionMismatch { expected: self.rank(), found: v.len() });
        }
        Ok(())
    }

    /// The bilinear pairing `xᵀ G y`.
    pub fn inner(&self, x: &[i64], y: &[i64]) -> Result<i64> {
        self.check_len(x)?;
        self.check_len(y)?;
        checked_dot(x, &self.gram.mul_vec(y)?)
    }

    pub fn square(&self, x: &[i64]) -> Result<i64> {
        self.inner(x, x)
    }

    /// `G x`: the row of pairings of `x` with the basis vectors.
    pub fn pairings(&self, x: &[i64]) -> Result<Vec<i64>> {
        self.check_len(x)?;
        self.gram.mul_vec(x)
    }

    pub fn invariants(&self) -> Result<LatticeInvariants> {
        let determinant = self.gram.determinant_i64()?;
        let is_even = (0..self.rank()).all(|i| self.gram[(i, i)] % 2 == 0);
        let (pos, neg, zero) = self.gram.signature()?;
        if zero != 0 {
            return Err(LatticeError::Degenerate);
        }
        Ok(LatticeInvariants { determinant, is_even, signature: (pos, neg) })
    }

    /// Orthogonal direct sum with block-diagonal Gram matrix.
    pub fn direct_sum(&self, other: &Lattice) -> Lattice {
        let (a, b) = (self.rank(), other.rank());
        let mut g = IntMatrix::zeros(a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                g[(i, j)] = self.gram[(i, j)];
            }
        }
        for i in 0..b {
            for j in 0..b {
                g[(a + i, a + j)] = other.gram[(i, j)];
            }
        }
        Lattice { gram: g }
    }

    /// Lattice spanned by `basis`, with the induced form `Bᵀ G B`.
    pub fn sublattice(&self, basis: &[Vec<i64>]) -> Result<Lattice> {
        let b = IntMatrix::from_columns(basis, self.rank())?;
        Lattice::new(b.transpose().mul(&self.gram)?.mul(&b)?)
    }

    pub fn is_isometry(&self, m: &IntMatrix) -> bool {
        m.nrows() == self.rank()
            && m.ncols() == self.rank()
            && m.transpose().mul(&self.gram).and_then(|t| t.mul(m)).is_ok_and(|p| p == self.gram)
    }

    pub fn check_isometry(&self, g: &Isometry) -> Result<()> {
        if self.is_isometry(&g.matrix) {
            Ok(())
        } else {
            Err(LatticeError::NotIsometry)
        }
    }

    /// Saturated integer basis of `{x : x.s = 0 for all s in S}`.
    ///
    /// Computed from the Smith form `P A Q = D` of the pairing matrix
    /// `A = Sᵀ G`: the columns of `Q` past the rank span the kernel, and
    /// since `Q` is unimodular they extend to a basis of `Z^n`.
    pub fn orthogonal_complement(&self, s: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
        let n = self.rank();
        if s.is_empty() {
            return Ok(IntMatrix::identity(n).to_rows());
        }
        let rows = s.iter().map(|v| self.pairings(v)).collect::<Result<Vec<_>>>()?;
        let a = IntMatrix::from_rows(rows)?;
        let snf = a.smith_normal_form()?;
        let r = snf.rank();
        Ok((r..n).map(|j| snf.q.column(j)).collect())
    }

    pub fn discriminant_group(&self) -> Result<DiscriminantGroup> {
        DiscriminantGroup::new(self)
    }

    pub fn discriminant_action(&self, g: &Isometry) -> Result<DiscriminantAction> {
        self.discriminant_group()?.action(self, g)
    }
}

/// True if the columns of `basis` span a primitive sublattice of `Z^n`
/// (all nonzero Smith invariants equal 1).
pub fn is_primitive(basis: &[Vec<i64>], n: usize) -> Result<bool> {
    if basis.is_empty() {
        return Ok(true);
    }
    let b = IntMatrix::from_columns(basis, n)?;
    let s = b.smith_normal_form()?;
    let d = s.diagonal();
    Ok(d.iter().all(|&v| v == 1))
}

/// Integer matrix acting on column vectors in the lattice basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Isometry {
    pub matrix: IntMatrix,
}

impl Isometry {
    pub fn identity(n: usize) -> Self {
        Isometry { matrix: IntMatrix::identity(n) }
    }

    pub fn minus_identity(n: usize) -> Self {
        Isometry { matrix: IntMatrix::identity(n).neg().unwrap() }
    }

    pub fn new(lattice: &Lattice, matrix: IntMatrix) -> Result<Self> {
        let g = Isometry { matrix };
        lattice.check_isometry(&g)?;
        Ok(g)
    }

    /// Permutation isometry sending basis vector `i` to `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let n = perm.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, &j) in perm.iter().enumerate() {
            m[(j, i)] = 1;
        }
        Isometry { matrix: m }
    }

    pub fn rank(&self) -> usize {
        self.matrix.nrows()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        Ok(Isometry { matrix: self.matrix.mul(&other.matrix)? })
    }

    pub fn neg(&self) -> Result<Isometry> {
        Ok(Isometry { matrix: self.matrix.neg()? })
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.matrix.mul_vec(v)
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn is_identity_mod2(&self) -> bool {
        self.matrix.mod2().is_identity()
    }

    /// Inverse of an isometry of `lattice`: `G⁻¹ Mᵀ G`, computed exactly.
    pub fn inverse(&self, lattice: &Lattice) -> Result<Isometry> {
        lattice.check_isometry(self)?;
        let n = self.rank();
        let mtg = self.matrix.transpose().mul(lattice.gram())?;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let sol = lattice.gram().solve_rational(&mtg.column(j))?;
            let col = sol
                .iter()
                .map(|q| {
                    if q.is_integer() {
                        q.to_integer().to_i64().ok_or(LatticeError::Overflow)
                    } else {
                        Err(LatticeError::NotIsometry)
                    }
                })
                .collect::<Result<Vec<_>>>()?;
            cols.push(col);
        }
        Ok(Isometry { matrix: IntMatrix::from_columns(&cols, n)? })
    }
}

/// A vector of the rational span written as `numer / denom`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualVector {
    pub numer: Vec<i64>,
    pub denom: i64,
}

impl DualVector {
    /// Reduce the coordinates into `[0, 1)` and cancel common factors.
    pub fn normalized(&self) -> DualVector {
        let numer: Vec<i64> = self.numer.iter().map(|v| v.rem_euclid(self.denom)).collect();
        let g = numer.iter().fold(self.denom, |g, v| g.gcd(v));
        DualVector { numer: numer.iter().map(|v| v / g).collect(), denom: self.denom / g }
    }
}

/// Element of a discriminant group, as coordinates modulo the invariant
/// factors.
pub type DiscClass = Vec<i64>;

/// Finite abelian group `L^∨ / L ≅ Z^n / G Z^n`.
///
/// With Smith form `P G Q = D`, the class of a dual vector `x` has
/// coordinates `P (G x) mod D`, and column `i` of `Q` divided by `d_i`
/// lifts the `i`-th generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantGroup {
    pub invariant_factors: Vec<i64>,
    pub generator_lifts: Vec<DualVector>,
    pub order: i64,
    #[serde(skip)]
    coord_map: IntMatrix,
}

impl DiscriminantGroup {
    fn new(lattice: &Lattice) -> Result<Self> {
        let snf = lattice.gram().smith_normal_form()?;
        let diag = snf.diagonal();
        if diag.contains(&0) {
            return Err(LatticeError::Degenerate);
        }
        let keep: Vec<usize> = (0..diag.len()).filter(|&i| diag[i] > 1).collect();
        let invariant_factors: Vec<i64> = keep.iter().map(|&i| diag[i]).collect();
        let generator_lifts = keep
            .iter()
            .map(|&i| DualVector { numer: snf.q.column(i), denom: diag[i] }.normalized())
            .collect();
        let rows: Vec<Vec<i64>> = keep.iter().map(|&i| snf.p.row(i).to_vec()).collect();
        let coord_map = if rows.is_empty() {
            IntMatrix::zeros(0, lattice.rank())
        } else {
            IntMatrix::from_rows(rows)?
        };
        let order = invariant_factors.iter().try_fold(1i64, |acc, &d| acc.checked_mul(d)).ok_or(LatticeError::Overflow)?;
        Ok(DiscriminantGroup { invariant_factors, generator_lifts, order, coord_map })
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn ngens(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn zero(&self) -> DiscClass {
        vec![0; self.ngens()]
    }

    fn reduce(&self, c: Vec<i64>) -> DiscClass {
        c.into_iter().zip(&self.invariant_factors).map(|(v, d)| v.rem_euclid(*d)).collect()
    }

    /// Class of a dual vector given by its pairing vector `y = G x`
    /// (integral exactly when `x` lies in the dual).
    pub fn class_of_pairing(&self, y: &[i64]) -> Result<DiscClass> {
        Ok(self.reduce(self.coord_map.mul_vec(y)?))
    }

    pub fn class_of_dual(&self, lattice: &Lattice, x: &DualVector) -> Result<DiscClass> {
        let gx = lattice.pairings(&x.numer)?;
        if gx.iter().any(|v| v % x.denom != 0) {
            return Err(LatticeError::NotInDual);
        }
        let y: Vec<i64> = gx.iter().map(|v| v / x.denom).collect();
        self.class_of_pairing(&y)
    }

    /// Class of the dual basis vector `e_i^∨` (so that `e_i^∨ . e_j = δ_ij`).
    pub fn dual_basis_class(&self, i: usize) -> DiscClass {
        self.reduce(self.coord_map.column(i))
    }

    pub fn negate(&self, c: &[i64]) -> DiscClass {
        self.reduce(c.iter().map(|v| -v).collect())
    }

    /// All elements in lexicographic coordinate order.
    pub fn elements(&self) -> Vec<DiscClass> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<i64>| {
                    (0..d).map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Induced action of an isometry on the stored generators.
    pub fn action(&self, lattice: &Lattice, g: &Isometry) -> Result<DiscriminantAction> {
        lattice.check_isometry(g)?;
        let columns = self
            .generator_lifts
            .iter()
            .map(|x| {
                let gx = DualVector { numer: g.apply(&x.numer)?, denom: x.denom };
                self.class_of_dual(lattice, &gx)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DiscriminantAction { moduli: self.invariant_factors.clone(), columns })
    }
}

/// Endomorphism of a discriminant group; `columns[j]` is the image of
/// generator `j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscriminantAction {
    pub moduli: Vec<i64>,
    pub columns: Vec<DiscClass>,
}

impl DiscriminantAction {
    pub fn apply(&self, c: &[i64]) -> DiscClass {
        let k = self.moduli.len();
        (0..k)
            .map(|i| {
                let s: i128 = (0..k).map(|j| i128::from(self.columns[j][i]) * i128::from(c[j])).sum();
                s.rem_euclid(i128::from(self.moduli[i])) as i64
            })
            .collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiscriminantAction) -> DiscriminantAction {
        DiscriminantAction {
            moduli: self.moduli.clone(),
            columns: other.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(j, c)| c.iter().enumerate().all(|(i, &v)| v == i64::from(i == j) % self.moduli[i]))
    }

    pub fn is_negation(&self) -> bool {
        self.columns.iter().enumerate().all(|(j, c)| {
            c.iter()
                .enumerate()
                .all(|(i, &v)| v == (-i64::from(i == j)).rem_euclid(self.moduli[i]))
        })
    }
}
