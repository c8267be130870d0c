use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use enriques_lattice::class_group::{deck_action_report, is_p_torsion, local_class_group};
use enriques_lattice::coble::{
    bounded_word_search, make_generator_set, sample_g0_element, GeneratorSet, SampleKind, DEFAULT_MAX_DEPTH,
    DEFAULT_MAX_NODES,
};
use enriques_lattice::e10::{build_e10, HyperbolicPlane, E10};
use enriques_lattice::f2::{F2QuadSpace, F2Vector};
use enriques_lattice::roots::{covering_involution_action, AdeType, RootDatum};
use enriques_lattice::verify::{run_all, sigma_u_failure, Status, VerifyConfig, DEFAULT_BOUND, DEFAULT_SEED};
use enriques_lattice::{DiscriminantGroup, Isometry, Lattice, LatticeError};

#[derive(Parser)]
#[command(name = "enriques-lattice", version, about = "Exact lattice computations around E10 and ADE root lattices")]
struct Cli {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Coordinate bound for hyperbolic plane searches.
    #[arg(long, global = true, default_value_t = DEFAULT_BOUND)]
    bound: i64,
    /// Maximum word length for word searches.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_DEPTH)]
    depth: usize,
    /// Maximum number of stored group elements for word searches.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_NODES)]
    nodes: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Determinant, parity and signature of a lattice (E10 by default).
    LatticeInfo(LatticeSource),
    /// Positive roots, highest root and simple roots of an ADE type.
    Roots {
        #[arg(long = "type")]
        ade: AdeType,
    },
    /// Discriminant group of a lattice (E10 by default).
    DiscGroup(LatticeSource),
    /// Diagram automorphism induced by -id, for one type or all types up to rank 10.
    InvolutionAction {
        #[arg(long = "type")]
        ade: Option<AdeType>,
    },
    /// Local class groups, torsion and deck action, one row per type.
    ClassGroup {
        #[arg(long = "type")]
        ade: Option<AdeType>,
        #[arg(long, default_value_t = 2)]
        prime: u64,
    },
    /// Reduce a positive-cone vector into the chamber, or write an isometry
    /// as a word in fundamental reflections.
    E10Reduce {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "isometry")]
        vector: Option<Vec<i64>>,
        /// Isometry JSON file.
        #[arg(long)]
        isometry: Option<PathBuf>,
    },
    /// The involution σ_U of a hyperbolic plane and its checks.
    E10Sigma {
        /// Position of the plane in the search at --bound.
        #[arg(long, default_value_t = 0)]
        index: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "f2")]
        f1: Option<Vec<i64>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, requires = "f1")]
        f2: Option<Vec<i64>>,
    },
    /// Isotropic vectors of E10 ⊗ F2.
    F2Count,
    /// Orbit of a vector of E10 ⊗ F2 under reduced fundamental reflections.
    F2Orbit(OrbitArgs),
    /// Ramification degree: orbit size of a half-fiber class.
    Ramification(OrbitArgs),
    /// Membership in O⁺ and in the 2-congruence subgroup G0.
    G0Check(TargetArgs),
    /// Bounded bidirectional search for a word in σ_U generators.
    WordSearch(TargetArgs),
    /// Run every check and exit nonzero on failure.
    VerifyAll,
}

#[derive(clap::Args)]
struct LatticeSource {
    #[arg(long = "type", conflicts_with = "file")]
    ade: Option<AdeType>,
    /// Lattice JSON file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(clap::Args)]
struct OrbitArgs {
    /// Ten 0/1 entries.
    #[arg(long, value_delimiter = ',', required = true)]
    vector: Vec<u8>,
    /// Indices of the fundamental reflections to use (all by default).
    #[arg(long, value_delimiter = ',')]
    reflections: Option<Vec<usize>>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Recipe {
    ReflectionPair,
    SigmaWord,
}

#[derive(clap::Args)]
struct TargetArgs {
    /// Isometry JSON file.
    #[arg(long, conflicts_with_all = ["sample", "word"])]
    target: Option<PathBuf>,
    /// Seeded sample recipe.
    #[arg(long, value_enum, conflicts_with = "word")]
    sample: Option<Recipe>,
    /// Generator word to plant as the target.
    #[arg(long, value_delimiter = ',')]
    word: Option<Vec<usize>>,
    /// Word length for the sigma-word recipe.
    #[arg(long, default_value_t = 4)]
    length: usize,
    /// Number of σ_U generators.
    #[arg(long, default_value_t = 5)]
    gens: usize,
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<LatticeError> for Failure {
    fn from(e: LatticeError) -> Self {
        match e {
            LatticeError::Internal(_) => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type CliResult = std::result::Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::LatticeInfo(src) => lattice_info(cli, src),
        Command::Roots { ade } => roots(cli, *ade),
        Command::DiscGroup(src) => disc_group(cli, src),
        Command::InvolutionAction { ade } => involution_action(cli, *ade),
        Command::ClassGroup { ade, prime } => class_group(cli, *ade, *prime),
        Command::E10Reduce { vector, isometry } => e10_reduce(cli, vector.as_deref(), isometry.as_deref()),
        Command::E10Sigma { index, f1, f2 } => e10_sigma(cli, *index, f1.clone().zip(f2.clone())),
        Command::F2Count => f2_count(cli),
        Command::F2Orbit(args) => f2_orbit(cli, args, false),
        Command::Ramification(args) => f2_orbit(cli, args, true),
        Command::G0Check(args) => g0_check(cli, args),
        Command::WordSearch(args) => word_search(cli, args),
        Command::VerifyAll => verify_all(cli),
    }
}

// Write errors (a closed pipe) are ignored.
fn emit(cli: &Cli, value: &Value, text: impl FnOnce() -> String) {
    let out = if cli.json { serde_json::to_string_pretty(value).expect("serializable") } else { text() };
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let raw = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&raw).map_err(|e| Failure::Usage(format!("{}: malformed JSON: {e}", path.display())))
}

fn e10() -> Result<E10, Failure> {
    Ok(build_e10()?)
}

fn load_lattice(src: &LatticeSource) -> Result<(String, Lattice), Failure> {
    Ok(match (&src.ade, &src.file) {
        (Some(t), _) => (t.to_string(), t.lattice()),
        (None, Some(path)) => (path.display().to_string(), read_json(path)?),
        (None, None) => ("E10".into(), e10()?.lattice().clone()),
    })
}

fn fmt_vec<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn fmt_group(g: &DiscriminantGroup) -> String {
    if g.is_trivial() {
        "0".into()
    } else {
        g.invariant_factors.iter().map(|d| format!("Z/{d}")).collect::<Vec<_>>().join(" × ")
    }
}

fn lattice_info(cli: &Cli, src: &LatticeSource) -> CliResult {
    let (name, lattice) = load_lattice(src)?;
    let inv = lattice.invariants()?;
    let value = json!({ "lattice": name, "rank": lattice.rank(), "invariants": inv });
    emit(cli, &value, || {
        format!(
            "{name}: rank {}, determinant {}, {}, signature ({}, {})",
            lattice.rank(),
            inv.determinant,
            if inv.is_even { "even" } else { "odd" },
            inv.signature.0,
            inv.signature.1
        )
    });
    Ok(true)
}

fn roots(cli: &Cli, t: AdeType) -> CliResult {
    let rd = RootDatum::new(t)?;
    let simple: Vec<String> = rd.simple_roots.iter().map(|&i| t.label(i)).collect();
    let value = json!({
        "type": t,
        "highest_root": rd.highest_root,
        "simple_roots": rd.simple_roots,
        "positive_roots": rd.positive_roots,
        "count": rd.positive_roots.len(),
    });
    emit(cli, &value, || {
        let labels: Vec<String> = (0..t.rank()).map(|i| t.label(i)).collect();
        format!(
            "{t}: {} positive roots\nnodes         {}\nhighest root  {}\nsimple roots  {}",
            rd.positive_roots.len(),
            labels.join(" "),
            fmt_vec(&rd.highest_root),
            if simple.is_empty() { "none".into() } else { simple.join(" ") }
        )
    });
    Ok(true)
}

fn disc_group(cli: &Cli, src: &LatticeSource) -> CliResult {
    let (name, lattice) = load_lattice(src)?;
    let g = lattice.discriminant_group()?;
    let dual: Vec<_> = (0..lattice.rank()).map(|i| g.dual_basis_class(i)).collect();
    let value = json!({ "lattice": name, "group": g, "dual_basis_classes": dual });
    emit(cli, &value, || {
        let mut out = format!("{name}: {} of order {}", fmt_group(&g), g.order);
        for (i, lift) in g.generator_lifts.iter().enumerate() {
            out.push_str(&format!("\n  generator {i}: {} / {}", fmt_vec(&lift.numer), lift.denom));
        }
        out
    });
    Ok(true)
}

fn involution_action(cli: &Cli, ade: Option<AdeType>) -> CliResult {
    let types = ade.map_or_else(|| AdeType::all_up_to(10), |t| vec![t]);
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    for t in types {
        let a = covering_involution_action(t)?;
        let moved: Vec<String> = (0..t.rank())
            .filter(|&i| a.perm[i] != i)
            .map(|i| format!("{} ↦ {}", t.label(i), t.label(a.perm[i])))
            .collect();
        lines.push(format!("{:<4} {}", t.to_string(), if moved.is_empty() { "identity".into() } else { moved.join(", ") }));
        rows.push(json!({ "type": t, "perm": a.perm }));
    }
    emit(cli, &Value::Array(rows), || lines.join("\n"));
    Ok(true)
}

fn class_group(cli: &Cli, ade: Option<AdeType>, p: u64) -> CliResult {
    let types = ade.map_or_else(|| AdeType::all_up_to(10), |t| vec![t]);
    let mut rows = Vec::new();
    let mut lines = vec![format!("{:<4} {:<12} {:>5} {:>9} {:>8} {:>6}  diagram action", "type", "group", "order", format!("{p}-tors"), "acts -1", "-1∈W")];
    for t in types {
        let cl = local_class_group(t)?;
        let torsion = is_p_torsion(t, p)?;
        let deck = deck_action_report(t)?;
        let moved: Vec<String> = (0..t.rank())
            .filter(|&i| deck.diagram_action.perm[i] != i)
            .map(|i| format!("{}↦{}", t.label(i), t.label(deck.diagram_action.perm[i])))
            .collect();
        lines.push(format!(
            "{:<4} {:<12} {:>5} {:>9} {:>8} {:>6}  {}",
            t.to_string(),
            fmt_group(&cl.group),
            cl.group.order,
            torsion,
            deck.acts_as_minus_one,
            deck.minus_id_in_weyl,
            if moved.is_empty() { "identity".into() } else { moved.join(" ") }
        ));
        rows.push(json!({
            "type": t,
            "group": cl.group,
            "prime": p,
            "p_torsion": torsion,
            "diagram_action": deck.diagram_action,
            "acts_as_minus_one": deck.acts_as_minus_one,
            "minus_id_in_weyl": deck.minus_id_in_weyl,
        }));
    }
    emit(cli, &Value::Array(rows), || lines.join("\n"));
    Ok(true)
}

fn e10_reduce(cli: &Cli, vector: Option<&[i64]>, isometry: Option<&Path>) -> CliResult {
    let e = e10()?;
    match (vector, isometry) {
        (Some(x), _) => {
            let r = e.chamber_reduce(x)?;
            emit(cli, &json!(r), || {
                format!("reduced {} in {} steps\nword {}", fmt_vec(&r.reduced), r.steps, fmt_vec(&r.word))
            });
        }
        (None, Some(path)) => {
            let g: Isometry = read_json(path)?;
            let word = e.express_in_fundamental_reflections(&g)?;
            emit(cli, &json!({ "word": word, "length": word.len() }), || {
                format!("g = s_w1 ∘ … ∘ s_wk with {} letters\nword {}", word.len(), fmt_vec(&word))
            });
        }
        (None, None) => return Err(Failure::Usage("give --vector or --isometry".into())),
    }
    Ok(true)
}

fn e10_sigma(cli: &Cli, index: usize, explicit: Option<(Vec<i64>, Vec<i64>)>) -> CliResult {
    let e = e10()?;
    let u = match explicit {
        Some((f1, f2)) => HyperbolicPlane { f1, f2 },
        None => {
            let search = e.find_hyperbolic_planes(cli.bound, index + 1)?;
            search.planes.get(index).cloned().ok_or_else(|| {
                Failure::Usage(format!("only {} planes at bound {}", search.planes.len(), cli.bound))
            })?
        }
    };
    let s = e.sigma_u(&u)?;
    let failure = sigma_u_failure(&e, &u)?;
    let value = json!({ "plane": u, "sigma": s, "in_g0": failure.is_none(), "failure": failure });
    emit(cli, &value, || {
        let mut out = format!("f1 = {}\nf2 = {}\n", fmt_vec(&u.f1), fmt_vec(&u.f2));
        for row in s.matrix.to_rows() {
            out.push_str(&format!("  {}\n", row.iter().map(|x| format!("{x:>5}")).collect::<String>()));
        }
        out.push_str(match &failure {
            None => "involution, isometry, fixes U, negates U^⊥, ≡ id mod 2, in O⁺",
            Some(why) => why,
        });
        out
    });
    Ok(failure.is_none())
}

fn f2_count(cli: &Cli) -> CliResult {
    let space = F2QuadSpace::from_e10(&e10()?);
    let c = space.count_isotropic();
    emit(cli, &json!(c), || {
        format!(
            "{} nonzero isotropic vectors ({} with zero, {} non-isotropic)",
            c.nonzero_isotropic, c.total, c.nonisotropic
        )
    });
    Ok(true)
}

fn f2_orbit(cli: &Cli, args: &OrbitArgs, degree_only: bool) -> CliResult {
    let e = e10()?;
    let space = F2QuadSpace::from_e10(&e);
    let v = F2Vector::from_bits(&args.vector)?;
    let all = space.reflection_generators(&e);
    let gens = match &args.reflections {
        None => all,
        Some(idx) => idx
            .iter()
            .map(|&i| all.get(i).cloned().ok_or_else(|| Failure::Usage(format!("reflection index {i} out of range"))))
            .collect::<Result<Vec<_>, _>>()?,
    };
    if degree_only {
        let d = space.ramification_degree(v, &gens)?;
        emit(cli, &json!({ "vector": v, "ramification_degree": d }), || format!("r = {d}"));
    } else {
        let orbit = space.orbit(v, &gens);
        emit(cli, &json!({ "vector": v, "size": orbit.len(), "orbit": orbit }), || {
            let mut out = format!("orbit of {v} has {} elements", orbit.len());
            for w in &orbit {
                out.push_str(&format!("\n  {w}"));
            }
            out
        });
    }
    Ok(true)
}

fn generators(cli: &Cli, e: &E10, n: usize) -> Result<GeneratorSet, Failure> {
    Ok(make_generator_set(e, n, cli.bound)?)
}

fn resolve_target(cli: &Cli, e: &E10, args: &TargetArgs, gens: &GeneratorSet) -> Result<Isometry, Failure> {
    if let Some(path) = &args.target {
        return read_json(path);
    }
    if let Some(word) = &args.word {
        return Ok(gens.word_matrix(word)?);
    }
    let kind = match args.sample.unwrap_or(Recipe::ReflectionPair) {
        Recipe::ReflectionPair => SampleKind::ReflectionPair,
        Recipe::SigmaWord => SampleKind::SigmaWord { gens, length: args.length },
    };
    Ok(sample_g0_element(e, kind, cli.seed)?)
}

fn g0_check(cli: &Cli, args: &TargetArgs) -> CliResult {
    let e = e10()?;
    let gens = generators(cli, &e, args.gens)?;
    let g = resolve_target(cli, &e, args, &gens)?;
    e.lattice().check_isometry(&g)?;
    let o_plus = e.is_in_o_plus(&g)?;
    let mod2 = g.is_identity_mod2();
    let in_g0 = o_plus && mod2;
    let value = json!({ "isometry": g, "in_o_plus": o_plus, "identity_mod_2": mod2, "in_g0": in_g0 });
    emit(cli, &value, || format!("in O⁺: {o_plus}\n≡ id mod 2: {mod2}\nin G0: {in_g0}"));
    Ok(in_g0)
}

fn word_search(cli: &Cli, args: &TargetArgs) -> CliResult {
    let e = e10()?;
    let gens = generators(cli, &e, args.gens)?;
    let target = resolve_target(cli, &e, args, &gens)?;
    let start = Instant::now();
    let r = bounded_word_search(&e, &target, &gens, cli.depth, cli.nodes)?;
    let wall = start.elapsed().as_secs_f64();
    let mut value = json!(r);
    value["wall_time_s"] = json!(wall);
    value["generators"] = json!({ "count": gens.len(), "bound": gens.bound, "planes": gens.planes });
    value["seed"] = json!(cli.seed);
    emit(cli, &value, || {
        let head = match &r.word {
            Some(w) => format!("found word {} of length {}", fmt_vec(w), w.len()),
            None => format!("not found within depth {} / {} nodes ({:?})", r.max_depth, r.max_nodes, r.stopped_by),
        };
        format!("{head}\nvisited {} elements in {wall:.3} s", r.visited)
    });
    Ok(true)
}

fn verify_all(cli: &Cli) -> CliResult {
    let e = e10()?;
    let config = VerifyConfig { seed: cli.seed, bound: cli.bound, max_depth: cli.depth, max_nodes: cli.nodes };
    let report = run_all(&e, &config);
    emit(cli, &json!(report), || {
        report
            .checks
            .iter()
            .map(|c| {
                let s = if c.status == Status::Pass { "PASS" } else { "FAIL" };
                format!("{s}  {:<26} {}", c.check_name, c.details)
            })
            .collect::<Vec<_>>()
            .join("\n")
    });
    Ok(report.all_passed())
}
