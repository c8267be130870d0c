//! The `verify-all` suite: a fixed registry of checks, each replayed from
//! scratch with a pinned seed so that two runs give identical reports.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::class_group::{is_p_torsion, local_class_group};
use crate::coble::{bounded_word_search, make_generator_set, sample_g0_element, SampleKind, SearchStatus};
use crate::e10::{HyperbolicPlane, E10, RANK};
use crate::error::Result;
use crate::f2::F2QuadSpace;
use crate::lattice::Isometry;
use crate::roots::{covering_involution_action, positive_roots, AdeType, Family, RootDatum};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const DEFAULT_BOUND: i64 = 7;

/// Coordinate bound named by the σ_U criterion. No plane exists there; the
/// supplementary check repeats the criterion at [`VerifyConfig::bound`].
pub const CRITERION_PLANE_BOUND: i64 = 3;
pub const PLANE_COUNT: usize = 50;
pub const CHAMBER_SAMPLES: usize = 1000;
pub const OPLUS_SAMPLES: usize = 100;
pub const G0_SAMPLES: usize = 1000;
pub const PLANTED_MAX_LEN: usize = 6;
pub const PLANTED_PER_LEN: usize = 4;
pub const PLANTED_GENERATORS: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Plane bound for the supplementary and generator-set checks.
    pub bound: i64,
    pub max_depth: usize,
    pub max_nodes: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: DEFAULT_SEED,
            bound: DEFAULT_BOUND,
            max_depth: crate::coble::DEFAULT_MAX_DEPTH,
            max_nodes: crate::coble::DEFAULT_MAX_NODES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_name: String,
    /// The mathematical statement being checked.
    pub anchor: String,
    pub status: Status,
    pub details: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub bound: i64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_name == name)
    }
}

type CheckFn = fn(&E10, &VerifyConfig) -> Result<(bool, String)>;

/// Registry order is report order.
pub const CHECKS: [(&str, &str, CheckFn); 11] = [
    ("f2-isotropic-527", "E10 ⊗ F2 has exactly 527 nonzero isotropic vectors", check_527),
    (
        "diagram-action-table",
        "the covering involution acts as a_i ↦ a_{n+1-i}, b1 ↔ b2 (n odd) or trivially (n even), c_i ↦ c_{8-i} on E6, trivially on E7 and E8",
        check_involution_table,
    ),
    (
        "simple-root-bijection",
        "simple roots correspond bijectively to nonzero classes of E^∨/E via e_i ↦ [e_i^∨]",
        check_simple_roots,
    ),
    (
        "minus-one-in-weyl",
        "-id ∈ W(E) exactly for A1, D_even, E7, E8",
        check_minus_one,
    ),
    (
        "sigma-u-in-g0",
        "σ_U = id_U ⊕ -id_{U^⊥} lies in G0 for hyperbolic planes with coordinates bounded by 3",
        check_sigma_criterion,
    ),
    (
        "sigma-u-in-g0-supplement",
        "σ_U = id_U ⊕ -id_{U^⊥} lies in G0 for hyperbolic planes at the configured bound",
        check_sigma_supplement,
    ),
    (
        "e10-chamber",
        "the chamber x.e_i ≥ 0 is a fundamental domain and O⁺(E10) = W(E10)",
        check_chamber,
    ),
    ("complement-is-e8", "E10 ≅ U ⊕ E8 for every hyperbolic plane U", check_complement),
    (
        "class-group-table",
        "Cl_P ≅ E^∨/E has order n+1 (A_n), 4 (D_n), 3 (E6), 2 (E7), 1 (E8)",
        check_class_groups,
    ),
    (
        "generation-probes",
        "G0 = ⟨σ_U⟩: sampled elements lie in G0 and planted words are recovered",
        check_generation,
    ),
    (
        "positive-root-counts",
        "closure enumeration of positive roots agrees with a coefficient-box search",
        check_positive_roots,
    ),
];

pub fn run_all(e10: &E10, config: &VerifyConfig) -> Report {
    let checks = CHECKS
        .iter()
        .map(|(name, anchor, f)| {
            let (ok, details) = match f(e10, config) {
                Ok(r) => r,
                Err(err) => (false, format!("error: {err}")),
            };
            CheckResult {
                check_name: name.to_string(),
                anchor: anchor.to_string(),
                status: if ok { Status::Pass } else { Status::Fail },
                details,
            }
        })
        .collect();
    Report { seed: config.seed, bound: config.bound, checks }
}

/// Types with rank at most `max_rank` used by the table checks.
pub fn table_types(max_rank: usize) -> Vec<AdeType> {
    AdeType::all_up_to(max_rank)
}

/// The expected covering-involution permutation, written out from the
/// labelled diagrams rather than computed.
pub fn tabulated_involution(t: AdeType) -> Vec<usize> {
    let n = t.rank();
    match t.family() {
        Family::A => (0..n).rev().collect(),
        Family::D if n % 2 == 1 => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(0, 1);
            p
        }
        Family::D => (0..n).collect(),
        Family::E if n == 6 => vec![0, 5, 4, 3, 2, 1],
        Family::E => (0..n).collect(),
    }
}

/// `-id ∈ W(E)` from the classification.
pub fn tabulated_minus_one_in_weyl(t: AdeType) -> bool {
    match t.family() {
        Family::A => t.rank() == 1,
        Family::D => t.rank().is_multiple_of(2),
        Family::E => t.rank() != 6,
    }
}

pub fn tabulated_class_group_order(t: AdeType) -> i64 {
    match (t.family(), t.rank()) {
        (Family::A, n) => n as i64 + 1,
        (Family::D, _) => 4,
        (Family::E, 6) => 3,
        (Family::E, 7) => 2,
        (Family::E, _) => 1,
    }
}

fn check_527(e10: &E10, _: &VerifyConfig) -> Result<(bool, String)> {
    let c = F2QuadSpace::from_e10(e10).count_isotropic();
    Ok((
        c.nonzero_isotropic == 527 && c.total == 528,
        format!("nonzero isotropic {}, with zero {}, non-isotropic {}", c.nonzero_isotropic, c.total, c.nonisotropic),
    ))
}

fn check_involution_table(_: &E10, _: &VerifyConfig) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let types = table_types(10);
    for &t in &types {
        let got = covering_involution_action(t)?;
        if got.perm != tabulated_involution(t) {
            bad.push(format!("{t}: {:?}", got.perm));
        }
    }
    Ok(summary(bad, types.len(), "types"))
}

fn check_simple_roots(_: &E10, _: &VerifyConfig) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let types = table_types(10);
    for &t in &types {
        let rd = RootDatum::new(t)?;
        let group = rd.lattice.discriminant_group()?;
        let classes: Vec<_> = rd.simple_root_discriminant_bijection()?.into_iter().map(|(_, c)| c).collect();
        let distinct: BTreeSet<_> = classes.iter().cloned().collect();
        let nonzero: BTreeSet<_> = group.elements().into_iter().filter(|c| *c != group.zero()).collect();
        if classes.len() as i64 + 1 != group.order || distinct != nonzero || distinct.len() != classes.len() {
            bad.push(format!("{t}: {} simple roots, order {}", classes.len(), group.order));
        }
    }
    Ok(summary(bad, types.len(), "types"))
}

fn check_minus_one(_: &E10, _: &VerifyConfig) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut yes = Vec::new();
    let types = table_types(10);
    for &t in &types {
        let rd = RootDatum::new(t)?;
        let id = Isometry::identity(t.rank());
        let by_disc = rd.is_minus_weyl(&id)?;
        let by_chamber = rd.is_minus_weyl_by_chamber(&id)?;
        if by_disc {
            yes.push(t.to_string());
        }
        if by_disc != by_chamber || by_disc != tabulated_minus_one_in_weyl(t) {
            bad.push(format!("{t}: discriminant {by_disc}, chamber {by_chamber}"));
        }
    }
    let (ok, mut details) = summary(bad, types.len(), "types");
    details.push_str(&format!("; -id ∈ W for {}", yes.join(" ")));
    Ok((ok, details))
}

/// The σ_U properties of a single plane, or a description of the first
/// failing one.
pub fn sigma_u_failure(e10: &E10, u: &HyperbolicPlane) -> Result<Option<String>> {
    let s = e10.sigma_u(u)?;
    if !e10.lattice().is_isometry(&s.matrix) {
        return Ok(Some("not an isometry".into()));
    }
    if !s.compose(&s)?.is_identity() {
        return Ok(Some("not an involution".into()));
    }
    if s.apply(&u.f1)? != u.f1 || s.apply(&u.f2)? != u.f2 {
        return Ok(Some("moves f1 or f2".into()));
    }
    for b in e10.lattice().orthogonal_complement(&[u.f1.clone(), u.f2.clone()])? {
        let neg: Vec<i64> = b.iter().map(|x| -x).collect();
        if s.apply(&b)? != neg {
            return Ok(Some("does not negate the complement".into()));
        }
    }
    if !s.is_identity_mod2() {
        return Ok(Some("not ≡ id mod 2".into()));
    }
    if !e10.is_in_o_plus(&s)? {
        return Ok(Some("not in O⁺".into()));
    }
    Ok(None)
}

fn sigma_check(e10: &E10, bound: i64) -> Result<(bool, String)> {
    let search = e10.find_hyperbolic_planes(bound, PLANE_COUNT)?;
    let mut bad = Vec::new();
    for (i, u) in search.planes.iter().enumerate() {
        if let Some(why) = sigma_u_failure(e10, u)? {
            bad.push(format!("plane {i}: {why}"));
        }
    }
    let found = search.planes.len();
    let ok = bad.is_empty() && search.is_complete();
    let mut details = format!(
        "bound {bound}: {} isotropic vectors, {found} of {PLANE_COUNT} planes",
        search.isotropic_vectors
    );
    if !bad.is_empty() {
        details.push_str(&format!("; failures: {}", bad.join(", ")));
    } else if found > 0 {
        details.push_str("; all pass");
    }
    Ok((ok, details))
}

fn check_sigma_criterion(e10: &E10, _: &VerifyConfig) -> Result<(bool, String)> {
    sigma_check(e10, CRITERION_PLANE_BOUND)
}

fn check_sigma_supplement(e10: &E10, config: &VerifyConfig) -> Result<(bool, String)> {
    sigma_check(e10, config.bound)
}

/// Half-width of the sampling box for positive-cone points, in pairing
/// coordinates `x.e_i`.
pub const CONE_BOX: i64 = 10;

/// A seeded integer point of the closed positive cone, rejection-sampled
/// from the box `|x.e_i| <= CONE_BOX`. About 40% of the box is accepted,
/// mostly outside the chamber.
pub fn random_cone_point(e10: &E10, rng: &mut ChaCha8Rng) -> Result<Vec<i64>> {
    loop {
        let c: Vec<i64> = (0..RANK).map(|_| rng.gen_range(-CONE_BOX..=CONE_BOX)).collect();
        let x = e10.from_pairings(&c)?;
        if e10.inner(&x, &x)? >= 0 && e10.inner(&x, e10.h())? > 0 {
            return Ok(x);
        }
    }
}

/// A seeded element of `O⁺`: a random Weyl word with up to two `σ_U`
/// inserted.
pub fn random_o_plus_element(e10: &E10, sigmas: &[Isometry], rng: &mut ChaCha8Rng) -> Result<Isometry> {
    let mut g = Isometry::identity(RANK);
    let blocks = if sigmas.is_empty() { 0 } else { rng.gen_range(0..=2) };
    for b in 0..=blocks {
        let len = rng.gen_range(0..=12);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..RANK)).collect();
        g = g.compose(&e10.word_matrix(&word)?)?;
        if b < blocks {
            g = g.compose(&sigmas[rng.gen_range(0..sigmas.len())])?;
        }
    }
    Ok(g)
}

fn check_chamber(e10: &E10, config: &VerifyConfig) -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut bad = 0;
    let mut total_steps = 0;
    for _ in 0..CHAMBER_SAMPLES {
        let x = random_cone_point(e10, &mut rng)?;
        let r = e10.chamber_reduce(&x)?;
        total_steps += r.steps;
        let in_chamber = e10.lattice().pairings(&r.reduced)?.iter().all(|&p| p >= 0);
        if !in_chamber || e10.replay_on_vector(&r.word, &x)? != r.reduced {
            bad += 1;
        }
    }
    let gens = make_generator_set(e10, PLANTED_GENERATORS, config.bound)?;
    let mut bad_words = 0;
    for _ in 0..OPLUS_SAMPLES {
        let g = random_o_plus_element(e10, &gens.involutions, &mut rng)?;
        let w = e10.express_in_fundamental_reflections(&g)?;
        if e10.word_matrix(&w)? != g {
            bad_words += 1;
        }
    }
    Ok((
        bad == 0 && bad_words == 0,
        format!(
            "{CHAMBER_SAMPLES} points reduced ({total_steps} steps, {bad} failures); \
             {OPLUS_SAMPLES} O⁺ elements as reflection words ({bad_words} failures)"
        ),
    ))
}

fn check_complement(e10: &E10, config: &VerifyConfig) -> Result<(bool, String)> {
    let search = e10.find_hyperbolic_planes(config.bound, usize::MAX)?;
    let mut bad = Vec::new();
    for (i, u) in search.planes.iter().enumerate() {
        let basis = e10.lattice().orthogonal_complement(&[u.f1.clone(), u.f2.clone()])?;
        let inv = e10.lattice().sublattice(&basis)?.invariants()?;
        if !(inv.is_even && inv.signature == (0, 8) && inv.determinant == 1) {
            bad.push(format!("plane {i}: {inv:?}"));
        }
    }
    let n = search.planes.len();
    let (ok, details) = summary(bad, n, &format!("planes at bound {}", config.bound));
    Ok((ok && n > 0, details))
}

fn check_class_groups(_: &E10, _: &VerifyConfig) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let types = table_types(10);
    for &t in &types {
        let g = local_class_group(t)?.group;
        let expected_2 = g.invariant_factors.iter().all(|&d| d == 2);
        let simple = RootDatum::new(t)?.simple_roots.len() as i64;
        if g.order != tabulated_class_group_order(t) || g.order != simple + 1 || is_p_torsion(t, 2)? != expected_2 {
            bad.push(format!("{t}: order {}", g.order));
        }
        if is_p_torsion(t, 2)? != tabulated_minus_one_in_weyl(t) {
            bad.push(format!("{t}: 2-torsion disagrees with -id ∈ W"));
        }
    }
    Ok(summary(bad, types.len(), "types"))
}

fn check_generation(e10: &E10, config: &VerifyConfig) -> Result<(bool, String)> {
    let gens = make_generator_set(e10, PLANTED_GENERATORS, config.bound)?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut sample_failures = 0;
    for k in 0..G0_SAMPLES {
        let seed = rng.gen();
        let kind = if k % 2 == 0 {
            SampleKind::ReflectionPair
        } else {
            SampleKind::SigmaWord { gens: &gens, length: rng.gen_range(0..=4) }
        };
        match sample_g0_element(e10, kind, seed) {
            Ok(g) if e10.is_in_g0(&g)? => {}
            _ => sample_failures += 1,
        }
    }
    let mut planted = 0;
    let mut recovered = 0;
    let mut visited = 0;
    for len in 0..=PLANTED_MAX_LEN {
        for _ in 0..PLANTED_PER_LEN {
            let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..gens.len())).collect();
            let target = gens.word_matrix(&word)?;
            planted += 1;
            let r = bounded_word_search(e10, &target, &gens, config.max_depth.max(len), config.max_nodes)?;
            visited += r.visited;
            if r.status == SearchStatus::Found {
                let w = r.word.as_deref().unwrap_or_default();
                if w.len() <= len && gens.word_matrix(w)? == target {
                    recovered += 1;
                }
            }
        }
    }
    Ok((
        sample_failures == 0 && recovered == planted,
        format!(
            "{G0_SAMPLES} samples ({sample_failures} failures); {recovered}/{planted} planted words recovered, \
             {visited} elements visited"
        ),
    ))
}

/// Positive roots by brute force over the box `0 ≤ x_i ≤ θ_i`, where `θ` is
/// the tabulated highest root.
pub fn box_positive_roots(t: AdeType) -> Vec<Vec<i64>> {
    let lattice = t.lattice();
    let top = t.tabulated_highest_root();
    let n = t.rank();
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    loop {
        let mut i = 0;
        while i < n && x[i] == top[i] {
            x[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
        if lattice.square(&x).expect("length matches rank") == -2 {
            out.push(x.clone());
        }
    }
    out.sort();
    out
}

pub const ROOT_COUNT_TYPES: [&str; 10] = ["A1", "A2", "A3", "A4", "A5", "D4", "D5", "E6", "E7", "E8"];

pub fn expected_positive_root_count(t: AdeType) -> usize {
    let n = t.rank();
    match (t.family(), n) {
        (Family::A, _) => n * (n + 1) / 2,
        (Family::D, _) => n * (n - 1),
        (Family::E, 6) => 36,
        (Family::E, 7) => 63,
        (Family::E, _) => 120,
    }
}

fn check_positive_roots(_: &E10, _: &VerifyConfig) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for name in ROOT_COUNT_TYPES {
        let t: AdeType = name.parse()?;
        let closure = positive_roots(t);
        if closure != box_positive_roots(t) || closure.len() != expected_positive_root_count(t) {
            bad.push(name.to_string());
        }
        counts.push(format!("{name}:{}", closure.len()));
    }
    let (ok, details) = summary(bad, ROOT_COUNT_TYPES.len(), "types");
    Ok((ok, format!("{details}; {}", counts.join(" "))))
}

fn summary(bad: Vec<String>, total: usize, what: &str) -> (bool, String) {
    if bad.is_empty() {
        (true, format!("{total} {what} checked"))
    } else {
        (false, format!("{} of {total} {what} failed: {}", bad.len(), bad.join("; ")))
    }
}
