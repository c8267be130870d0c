//! Simply-laced root lattices `A_n`, `D_n`, `E_6`, `E_7`, `E_8`.
//!
//! Node numbering (0-based index `i` is the label with subscript `i + 1`):
//!
//! | family | labels            | edges                                  |
//! |--------|-------------------|----------------------------------------|
//! | `A_n`  | `a_1 … a_n`       | chain `a_1 – a_2 – … – a_n`            |
//! | `D_n`  | `b_1 … b_n`       | chain `b_2 – b_3 – … – b_n`, `b_1 – b_3` |
//! | `E_n`  | `c_1 … c_n`       | chain `c_2 – c_3 – … – c_n`, `c_1 – c_4` |
//!
//! The Gram matrix is minus the Cartan matrix, so fundamental roots have
//! square `-2` and adjacent ones pair to `1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{LatticeError, Result};
use crate::lattice::{DiscClass, Isometry, Lattice};
use crate::matrix::IntMatrix;

/// Cap on chamber-walk steps; exceeding it is reported as an error.
pub const MAX_REDUCTION_STEPS: usize = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    D,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "AdeTypeRepr", into = "AdeTypeRepr")]
pub struct AdeType {
    family: Family,
    rank: usize,
}

#[derive(Serialize, Deserialize)]
struct AdeTypeRepr {
    family: Family,
    rank: usize,
}

impl TryFrom<AdeTypeRepr> for AdeType {
    type Error = LatticeError;
    fn try_from(r: AdeTypeRepr) -> Result<Self> {
        AdeType::new(r.family, r.rank)
    }
}

impl From<AdeType> for AdeTypeRepr {
    fn from(t: AdeType) -> Self {
        AdeTypeRepr { family: t.family, rank: t.rank }
    }
}

impl AdeType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(AdeType { family, rank })
        } else {
            Err(LatticeError::InvalidType { family: family.letter(), rank })
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank
    }

    /// Every valid type with rank at most `max_rank`, ordered A, D, E.
    pub fn all_up_to(max_rank: usize) -> Vec<AdeType> {
        let mut out = Vec::new();
        for fam in [Family::A, Family::D, Family::E] {
            for n in 1..=max_rank {
                if let Ok(t) = AdeType::new(fam, n) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Diagram label of node `i`, e.g. `b3`.
    pub fn label(self, i: usize) -> String {
        let prefix = match self.family {
            Family::A => 'a',
            Family::D => 'b',
            Family::E => 'c',
        };
        format!("{prefix}{}", i + 1)
    }

    pub fn edges(self) -> Vec<(usize, usize)> {
        let n = self.rank;
        match self.family {
            Family::A => (0..n - 1).map(|i| (i, i + 1)).collect(),
            Family::D => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((0, 2));
                e
            }
            Family::E => {
                let mut e: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
                e.push((0, 3));
                e
            }
        }
    }

    pub fn lattice(self) -> Lattice {
        let n = self.rank;
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            g[(i, i)] = -2;
        }
        for (i, j) in self.edges() {
            g[(i, j)] = 1;
            g[(j, i)] = 1;
        }
        Lattice::new(g).expect("ADE Gram matrices are nondegenerate")
    }

    /// Highest root coefficients as tabulated in the multiplicity diagrams.
    pub fn tabulated_highest_root(self) -> Vec<i64> {
        let n = self.rank;
        match self.family {
            Family::A => vec![1; n],
            Family::D => {
                let mut v = vec![2; n];
                v[0] = 1;
                v[1] = 1;
                v[n - 1] = 1;
                v
            }
            Family::E => match n {
                6 => vec![2, 1, 2, 3, 2, 1],
                7 => vec![2, 2, 3, 4, 3, 2, 1],
                8 => vec![3, 2, 4, 6, 5, 4, 3, 2],
                _ => unreachable!("validated in AdeType::new"),
            },
        }
    }
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

impl fmt::Display for AdeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

impl FromStr for AdeType {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars.next().ok_or_else(|| LatticeError::Malformed("empty type".into()))?;
        let family = match letter.to_ascii_uppercase() {
            'A' => Family::A,
            'D' => Family::D,
            'E' => Family::E,
            _ => return Err(LatticeError::Malformed(format!("unknown family in {s:?}"))),
        };
        let rank = chars
            .as_str()
            .trim_start_matches('_')
            .parse()
            .map_err(|_| LatticeError::Malformed(format!("bad rank in {s:?}")))?;
        AdeType::new(family, rank)
    }
}

/// A permutation of diagram nodes; `perm[i]` is the image of node `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DiagramAutomorphism {
    pub perm: Vec<usize>,
}

impl DiagramAutomorphism {
    pub fn identity(n: usize) -> Self {
        DiagramAutomorphism { perm: (0..n).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_involution(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &j)| self.perm.get(j) == Some(&i))
    }

    pub fn preserves(&self, t: AdeType) -> bool {
        let edges: BTreeSet<(usize, usize)> = t.edges().into_iter().collect();
        let norm = |a: usize, b: usize| (a.min(b), a.max(b));
        self.perm.len() == t.rank()
            && edges.iter().all(|&(a, b)| edges.contains(&norm(self.perm[a], self.perm[b])))
    }

    pub fn to_isometry(&self) -> Isometry {
        Isometry::permutation(&self.perm)
    }
}

/// An ADE root lattice with its positive system.
#[derive(Clone, Debug)]
pub struct RootDatum {
    pub ade: AdeType,
    pub lattice: Lattice,
    pub highest_root: Vec<i64>,
    pub simple_roots: Vec<usize>,
    pub positive_roots: Vec<Vec<i64>>,
}

/// A factorization `g = s_{w_1} ∘ … ∘ s_{w_k} ∘ σ` into fundamental
/// reflections and a diagram automorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub weyl_word: Vec<usize>,
    pub graph: DiagramAutomorphism,
}

pub fn build_root_datum(t: AdeType) -> Result<RootDatum> {
    let lattice = t.lattice();
    let positive_roots = positive_roots(t);
    let highest_root = t.tabulated_highest_root();
    let height = |v: &Vec<i64>| v.iter().sum::<i64>();
    let top = positive_roots.iter().max_by_key(|v| height(v)).cloned().unwrap_or_default();
    let unique_top = positive_roots.iter().filter(|v| height(v) == height(&top)).count() == 1;
    if top != highest_root || !unique_top {
        return Err(LatticeError::Internal(format!(
            "highest root of {t} is {top:?}, table says {highest_root:?}"
        )));
    }
    let simple_roots = (0..t.rank()).filter(|&i| highest_root[i] == 1).collect();
    Ok(RootDatum { ade: t, lattice, highest_root, simple_roots, positive_roots })
}

/// Positive roots by closure: start from the fundamental roots and keep
/// adding fundamental roots while the sum still has square `-2`.
/// Sorted lexicographically.
pub fn positive_roots(t: AdeType) -> Vec<Vec<i64>> {
    let lattice = t.lattice();
    let n = t.rank();
    let basis: Vec<Vec<i64>> = (0..n).map(|i| unit(n, i)).collect();
    let mut found: BTreeSet<Vec<i64>> = basis.iter().cloned().collect();
    let mut frontier = basis;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for r in &frontier {
            let pairs = lattice.pairings(r).expect("length matches rank");
            for i in 0..n {
                // (r + e_i)^2 = r^2 + 2 r.e_i - 2, a root iff r.e_i = 1.
                if pairs[i] == 1 {
                    let mut s = r.clone();
                    s[i] += 1;
                    if found.insert(s.clone()) {
                        next.push(s);
                    }
                }
            }
        }
        frontier = next;
    }
    found.into_iter().collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

impl RootDatum {
    pub fn new(t: AdeType) -> Result<Self> {
        build_root_datum(t)
    }

    pub fn rank(&self) -> usize {
        self.ade.rank()
    }

    /// `x ↦ x + (x.e) e` for a vector `e` of square `-2`.
    pub fn reflection(&self, e: &[i64]) -> Result<Isometry> {
        reflection_matrix(&self.lattice, e)
    }

    pub fn fundamental_reflection(&self, i: usize) -> Isometry {
        self.reflection(&unit(self.rank(), i)).expect("fundamental roots have square -2")
    }

    /// Matrix of `s_{w_1} ∘ … ∘ s_{w_k}`.
    pub fn weyl_word_matrix(&self, word: &[usize]) -> Result<Isometry> {
        word.iter().try_fold(Isometry::identity(self.rank()), |acc, &i| {
            acc.compose(&self.fundamental_reflection(i))
        })
    }

    /// Maps each simple root index to the class of its dual basis vector.
    pub fn simple_root_discriminant_bijection(&self) -> Result<Vec<(usize, DiscClass)>> {
        let d = self.lattice.discriminant_group()?;
        Ok(self.simple_roots.iter().map(|&i| (i, d.dual_basis_class(i))).collect())
    }

    /// Integral interior point of the chamber `{x : x.e_i > 0}`: the sum of
    /// the dual basis vectors scaled by `|det|`.
    pub fn chamber_point(&self) -> Vec<i64> {
        let n = self.rank();
        let det = self.lattice.gram().determinant_i64().expect("small determinant").abs();
        let sol = self.lattice.gram().solve_rational(&vec![det; n]).expect("nondegenerate");
        sol.iter()
            .map(|q| {
                debug_assert!(q.is_integer());
                q.to_integer().to_i64().expect("small coordinates")
            })
            .collect()
    }

    pub fn decompose_isometry(&self, g: &Isometry) -> Result<Decomposition> {
        self.lattice.check_isometry(g)?;
        let rho = self.chamber_point();
        let mut v = g.apply(&rho)?;
        let mut word = Vec::new();
        loop {
            let pairs = self.lattice.pairings(&v)?;
            let Some(i) = pairs.iter().position(|&p| p < 0) else { break };
            if word.len() >= MAX_REDUCTION_STEPS {
                return Err(LatticeError::IterationCap(MAX_REDUCTION_STEPS));
            }
            // s_i(v) = v + (v.e_i) e_i
            v[i] += pairs[i];
            word.push(i);
        }
        // s_{w_k} ⋯ s_{w_1} g fixes the chamber, hence permutes the e_i.
        let mut rest = g.clone();
        for &i in &word {
            rest = self.fundamental_reflection(i).compose(&rest)?;
        }
        let n = self.rank();
        let mut perm = Vec::with_capacity(n);
        for j in 0..n {
            let col = rest.matrix.column(j);
            let target = (0..n).find(|&i| col == unit(n, i)).ok_or_else(|| {
                LatticeError::Internal("chamber stabilizer is not a permutation".into())
            })?;
            perm.push(target);
        }
        let graph = DiagramAutomorphism { perm };
        if !graph.preserves(self.ade) {
            return Err(LatticeError::Internal("chamber stabilizer is not a diagram automorphism".into()));
        }
        Ok(Decomposition { weyl_word: word, graph })
    }

    /// Whether `g ∈ -W`, decided on the discriminant group: `g` acts as `-1`.
    pub fn is_minus_weyl(&self, g: &Isometry) -> Result<bool> {
        Ok(self.lattice.discriminant_action(g)?.is_negation())
    }

    /// Same question answered through the chamber: `-g ∈ W` iff the graph
    /// part of `-g` is trivial.
    pub fn is_minus_weyl_by_chamber(&self, g: &Isometry) -> Result<bool> {
        Ok(self.decompose_isometry(&g.neg()?)?.graph.is_identity())
    }
}

/// Diagram automorphism `σ` with `-id ∈ W ∘ σ`: the graph part of `-id`.
pub fn covering_involution_action(t: AdeType) -> Result<DiagramAutomorphism> {
    let rd = RootDatum::new(t)?;
    let d = rd.decompose_isometry(&Isometry::minus_identity(t.rank()))?;
    Ok(d.graph)
}

/// Reflection `x ↦ x + (x.e) e` in a `(-2)`-vector of any lattice.
pub fn reflection_matrix(lattice: &Lattice, e: &[i64]) -> Result<Isometry> {
    let sq = lattice.square(e)?;
    if sq != -2 {
        return Err(LatticeError::NotARoot { square: sq });
    }
    let ge = lattice.pairings(e)?;
    let n = lattice.rank();
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            let t = e[i].checked_mul(ge[j]).ok_or(LatticeError::Overflow)?;
            m[(i, j)] = m[(i, j)].checked_add(t).ok_or(LatticeError::Overflow)?;
        }
    }
    Ok(Isometry { matrix: m })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> AdeType {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_validate_types() {
        assert_eq!(t("A4").to_string(), "A4");
        assert_eq!(t("e_8"), AdeType::new(Family::E, 8).unwrap());
        assert!("D3".parse::<AdeType>().is_err());
        assert!("E9".parse::<AdeType>().is_err());
        assert!("A0".parse::<AdeType>().is_err());
        assert!("B3".parse::<AdeType>().is_err());
        let j: AdeType = serde_json::from_str(r#"{"family":"D","rank":5}"#).unwrap();
        assert_eq!(j, t("D5"));
        assert!(serde_json::from_str::<AdeType>(r#"{"family":"E","rank":5}"#).is_err());
    }

    #[test]
    fn highest_roots() {
        assert_eq!(RootDatum::new(t("A3")).unwrap().highest_root, vec![1, 1, 1]);
        let e8 = RootDatum::new(t("E8")).unwrap();
        assert_eq!(e8.highest_root, vec![3, 2, 4, 6, 5, 4, 3, 2]);
        assert!(e8.simple_roots.is_empty());
        let d5 = RootDatum::new(t("D5")).unwrap();
        assert_eq!(d5.highest_root, vec![1, 1, 2, 2, 1]);
        assert_eq!(d5.simple_roots, vec![0, 1, 4]);
        assert_eq!(RootDatum::new(t("E7")).unwrap().simple_roots, vec![6]);
    }

    #[test]
    fn root_counts() {
        assert_eq!(positive_roots(t("A1")).len(), 1);
        assert_eq!(positive_roots(t("A2")).len(), 3);
        assert_eq!(positive_roots(t("D10")).len(), 90);
        assert_eq!(positive_roots(t("E8")).len(), 120);
    }

    #[test]
    fn reflections() {
        let a1 = RootDatum::new(t("A1")).unwrap();
        assert_eq!(a1.fundamental_reflection(0).matrix.to_rows(), vec![vec![-1]]);
        let a2 = RootDatum::new(t("A2")).unwrap();
        assert_eq!(a2.fundamental_reflection(0).apply(&[0, 1]).unwrap(), vec![1, 1]);
        assert_eq!(a2.reflection(&[1, 1]).unwrap().compose(&a2.reflection(&[1, 1]).unwrap()).unwrap(), Isometry::identity(2));
        assert_eq!(a2.reflection(&[1, 0]).unwrap().apply(&[1, 0]).unwrap(), vec![-1, 0]);
        assert_eq!(a2.reflection(&[1, -1]), Err(LatticeError::NotARoot { square: -6 }));
    }

    #[test]
    fn decompose_simple_cases() {
        let a2 = RootDatum::new(t("A2")).unwrap();
        let id = a2.decompose_isometry(&Isometry::identity(2)).unwrap();
        assert!(id.weyl_word.is_empty() && id.graph.is_identity());
        let s = a2.decompose_isometry(&a2.fundamental_reflection(1)).unwrap();
        assert_eq!(s.weyl_word, vec![1]);
        assert!(s.graph.is_identity());
        let neg = a2.decompose_isometry(&Isometry::minus_identity(2)).unwrap();
        assert_eq!(neg.weyl_word.len(), 3);
        assert_eq!(neg.graph.perm, vec![1, 0]);
        let bad = Isometry { matrix: IntMatrix::identity(2).checked_add(&IntMatrix::identity(2)).unwrap() };
        assert_eq!(a2.decompose_isometry(&bad), Err(LatticeError::NotIsometry));
    }

    #[test]
    fn minus_weyl_examples() {
        let check = |s: &str| RootDatum::new(t(s)).unwrap().is_minus_weyl(&Isometry::identity(t(s).rank())).unwrap();
        assert!(check("E8"));
        assert!(check("A1"));
        assert!(!check("A2"));
    }

    #[test]
    fn covering_involutions() {
        assert_eq!(covering_involution_action(t("A4")).unwrap().perm, vec![3, 2, 1, 0]);
        assert_eq!(covering_involution_action(t("D5")).unwrap().perm, vec![1, 0, 2, 3, 4]);
        assert!(covering_involution_action(t("E7")).unwrap().is_identity());
        assert_eq!(covering_involution_action(t("E6")).unwrap().perm, vec![0, 5, 4, 3, 2, 1]);
    }

    #[test]
    fn dual_classes_of_a2() {
        let a2 = RootDatum::new(t("A2")).unwrap();
        let b = a2.simple_root_discriminant_bijection().unwrap();
        assert_eq!(b.len(), 2);
        assert_ne!(b[0].1, b[1].1);
        assert!(b.iter().all(|(_, c)| c != &vec![0]));
    }
}
