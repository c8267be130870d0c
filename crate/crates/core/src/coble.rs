//! Desk-scale probes of the generation of the 2-congruence subgroup `G0`
//! by the involutions `σ_U`: generator sets, seeded sampling of `G0`, and
//! a bounded bidirectional word search.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::e10::{HyperbolicPlane, E10, RANK};
use crate::error::{LatticeError, Result};
use crate::lattice::Isometry;
use crate::roots::reflection_matrix;

pub const DEFAULT_MAX_DEPTH: usize = 8;
pub const DEFAULT_MAX_NODES: usize = 1_000_000;

/// Attempts made by [`sample_g0_element`] before giving up on a root pair.
pub const ROOT_PAIR_ATTEMPTS: usize = 10_000;

const MAX_RANDOM_WORD: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorSet {
    pub bound: i64,
    pub planes: Vec<HyperbolicPlane>,
    pub involutions: Vec<Isometry>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.involutions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.involutions.is_empty()
    }

    /// `gens[w_1] ∘ … ∘ gens[w_k]`.
    pub fn word_matrix(&self, word: &[usize]) -> Result<Isometry> {
        word.iter().try_fold(Isometry::identity(RANK), |acc, &i| {
            let g = self
                .involutions
                .get(i)
                .ok_or_else(|| LatticeError::Malformed(format!("generator index {i} out of range")))?;
            acc.compose(g)
        })
    }
}

/// The first `n` planes of `find_hyperbolic_planes(bound, n)` with their
/// involutions, each checked to lie in `G0`.
pub fn make_generator_set(e10: &E10, n: usize, bound: i64) -> Result<GeneratorSet> {
    if n == 0 {
        return Err(LatticeError::Malformed("generator count must be at least 1".into()));
    }
    let search = e10.find_hyperbolic_planes(bound, n)?;
    if !search.is_complete() {
        return Err(LatticeError::InsufficientPlanes { requested: n, found: search.planes.len(), bound });
    }
    let mut involutions: Vec<Isometry> = Vec::with_capacity(n);
    for u in &search.planes {
        let s = e10.sigma_u(u)?;
        if !e10.is_in_g0(&s)? || !s.compose(&s)?.is_identity() {
            return Err(LatticeError::Internal("σ_U failed the G0 check".into()));
        }
        if involutions.contains(&s) {
            return Err(LatticeError::Internal("two planes gave the same involution".into()));
        }
        involutions.push(s);
    }
    Ok(GeneratorSet { bound, planes: search.planes, involutions })
}

#[derive(Clone, Copy, Debug)]
pub enum SampleKind<'a> {
    /// `s_e ∘ s_f` for roots `e ≡ f mod 2`, `f ≠ ±e`.
    ReflectionPair,
    /// A uniform random word of the given length in the generators.
    SigmaWord { gens: &'a GeneratorSet, length: usize },
}

/// A seeded element of `G0`. The result is checked with `is_in_g0`.
pub fn sample_g0_element(e10: &E10, kind: SampleKind<'_>, seed: u64) -> Result<Isometry> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match kind {
        SampleKind::ReflectionPair => reflection_pair(e10, &mut rng)?,
        SampleKind::SigmaWord { gens, length } => {
            if gens.is_empty() && length > 0 {
                return Err(LatticeError::Malformed("empty generator set".into()));
            }
            let word: Vec<usize> = (0..length).map(|_| rng.gen_range(0..gens.len())).collect();
            gens.word_matrix(&word)?
        }
    };
    if !e10.is_in_g0(&g)? {
        return Err(LatticeError::NotInG0);
    }
    Ok(g)
}

fn random_word(rng: &mut ChaCha8Rng) -> Vec<usize> {
    let len = rng.gen_range(0..=MAX_RANDOM_WORD);
    (0..len).map(|_| rng.gen_range(0..RANK)).collect()
}

/// Indices of the affine `E8` subdiagram: every root except `e_9`.
const AFFINE_E8: [usize; 9] = [0, 1, 2, 3, 4, 5, 6, 7, 9];

/// Null vector of the affine `E8` subdiagram: isotropic and orthogonal to
/// each of its roots.
fn affine_null_vector(e10: &E10) -> Result<Vec<i64>> {
    let roots: Vec<Vec<i64>> = AFFINE_E8.iter().map(|&i| unit(i)).collect();
    let mut kernel = e10.lattice().orthogonal_complement(&roots)?;
    match kernel.pop() {
        Some(v) if kernel.is_empty() => Ok(if v.iter().sum::<i64>() < 0 { v.iter().map(|x| -x).collect() } else { v }),
        _ => Err(LatticeError::Internal("affine E8 null vector is not unique".into())),
    }
}

fn unit(i: usize) -> Vec<i64> {
    let mut v = vec![0; RANK];
    v[i] = 1;
    v
}

// For a root e and an isotropic v with e.v = 0, f = e + 2v is again a root
// and f ≡ e mod 2. Both are taken as images under one random Weyl word of
// a root e_j of the affine E8 subdiagram and a multiple of the affine null vector.
fn reflection_pair(e10: &E10, rng: &mut ChaCha8Rng) -> Result<Isometry> {
    let delta = affine_null_vector(e10)?;
    for _ in 0..ROOT_PAIR_ATTEMPTS {
        let w = random_word(rng);
        let k = rng.gen_range(1..=2);
        let e = e10.replay_on_vector(&w, &unit(AFFINE_E8[rng.gen_range(0..AFFINE_E8.len())]))?;
        let v = e10.replay_on_vector(&w, &delta)?;
        let Some(f) = e.iter().zip(&v).map(|(a, b)| b.checked_mul(2 * k).and_then(|t| t.checked_add(*a))).collect::<Option<Vec<i64>>>()
        else {
            continue;
        };
        if e10.inner(&f, &f)? != -2 || f == e {
            return Err(LatticeError::Internal("f = e + 2v is not a root".into()));
        }
        let se = reflection_matrix(e10.lattice(), &e)?;
        let sf = reflection_matrix(e10.lattice(), &f)?;
        match se.compose(&sf) {
            Ok(g) => return Ok(g),
            Err(LatticeError::Overflow) => continue,
            Err(err) => return Err(err),
        }
    }
    Err(LatticeError::NoRootPair(ROOT_PAIR_ATTEMPTS))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    NotFoundWithinDepth,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Found,
    DepthLimit,
    NodeLimit,
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordSearchResult {
    pub status: SearchStatus,
    /// Generator indices with `target = gens[w_1] ∘ … ∘ gens[w_k]`.
    pub word: Option<Vec<usize>>,
    /// Distinct group elements stored on both sides.
    pub visited: usize,
    pub max_depth: usize,
    pub max_nodes: usize,
    pub forward_depth: usize,
    pub backward_depth: usize,
    /// Products dropped because an entry left the `i64` range.
    pub overflow_skipped: usize,
    pub stopped_by: StopReason,
}

struct Side {
    seen: HashMap<Isometry, Vec<usize>>,
    frontier: Vec<Isometry>,
    depth: usize,
}

impl Side {
    fn new(start: Isometry) -> Self {
        let mut seen = HashMap::new();
        seen.insert(start.clone(), Vec::new());
        Side { seen, frontier: vec![start], depth: 0 }
    }
}

/// Bidirectional breadth-first search for a word in `gens` equal to
/// `target`.
///
/// The forward side grows `gens[w_1] ∘ … ∘ gens[w_k]` from the identity and
/// the backward side grows `target ∘ gens[u_1] ∘ … ∘ gens[u_m]`. A common
/// element gives `target = gens[w] ∘ gens[u_m] ∘ … ∘ gens[u_1]`, since every
/// generator is an involution. The smaller frontier is expanded first and
/// generators are tried in index order, so the result is deterministic and
/// of minimal length.
pub fn bounded_word_search(
    e10: &E10,
    target: &Isometry,
    gens: &GeneratorSet,
    max_depth: usize,
    max_nodes: usize,
) -> Result<WordSearchResult> {
    if !e10.is_in_g0(target)? {
        return Err(LatticeError::NotInG0);
    }
    let mut fwd = Side::new(Isometry::identity(RANK));
    let mut bwd = Side::new(target.clone());
    let mut overflow_skipped = 0;

    let finish = |fwd: &Side, bwd: &Side, word: Option<Vec<usize>>, stopped_by, overflow_skipped| WordSearchResult {
        status: if word.is_some() { SearchStatus::Found } else { SearchStatus::NotFoundWithinDepth },
        word,
        visited: fwd.seen.len() + bwd.seen.len(),
        max_depth,
        max_nodes,
        forward_depth: fwd.depth,
        backward_depth: bwd.depth,
        overflow_skipped,
        stopped_by,
    };

    if target.is_identity() {
        return Ok(finish(&fwd, &bwd, Some(Vec::new()), StopReason::Found, 0));
    }

    loop {
        if fwd.depth + bwd.depth >= max_depth {
            return Ok(finish(&fwd, &bwd, None, StopReason::DepthLimit, overflow_skipped));
        }
        if fwd.frontier.is_empty() || bwd.frontier.is_empty() {
            return Ok(finish(&fwd, &bwd, None, StopReason::Exhausted, overflow_skipped));
        }
        let forward = fwd.frontier.len() <= bwd.frontier.len();
        let (this, other) = if forward { (&mut fwd, &bwd) } else { (&mut bwd, &fwd) };

        let mut next = Vec::new();
        let mut hit = None;
        let mut node_limit = false;
        'layer: for x in &this.frontier {
            let base = this.seen[x].clone();
            for (i, s) in gens.involutions.iter().enumerate() {
                if base.last() == Some(&i) {
                    continue;
                }
                let y = match x.compose(s) {
                    Ok(y) => y,
                    Err(LatticeError::Overflow) => {
                        overflow_skipped += 1;
                        continue;
                    }
                    Err(err) => return Err(err),
                };
                if this.seen.contains_key(&y) {
                    continue;
                }
                let mut w = base.clone();
                w.push(i);
                if let Some(u) = other.seen.get(&y) {
                    hit = Some((w.clone(), u.clone()));
                }
                this.seen.insert(y.clone(), w);
                next.push(y);
                if hit.is_some() {
                    break 'layer;
                }
                if this.seen.len() + other.seen.len() >= max_nodes {
                    node_limit = true;
                    break 'layer;
                }
            }
        }
        this.frontier = next;
        this.depth += 1;

        if let Some((w, u)) = hit {
            let (fw, bw) = if forward { (w, u) } else { (u, w) };
            let mut word = fw;
            word.extend(bw.iter().rev());
            if gens.word_matrix(&word)? != *target {
                return Err(LatticeError::Internal("search word does not replay to the target".into()));
            }
            return Ok(finish(&fwd, &bwd, Some(word), StopReason::Found, overflow_skipped));
        }
        if node_limit {
            return Ok(finish(&fwd, &bwd, None, StopReason::NodeLimit, overflow_skipped));
        }
    }
}
