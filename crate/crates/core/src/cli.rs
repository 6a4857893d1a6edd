//! Command-line front end. The binary only forwards `argv` to [`run`].

use std::io::IsTerminal;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cameral::{
    cover_geometry, hitchin_fiber_rank, induced_cover_report, induced_local_monodromy_check,
    pushforward_sections_check, random_transversal, LatticeAction,
};
use crate::error::{Error, Result};
use crate::exactalg::rat_to_string;
use crate::hitchin::degrees_from_poincare;
use crate::hitchin::{dim_base, fiber_dim, folded_base_match, isogeny_dimensions};
use crate::liealg::{build_algebra, homogeneous_algebra, ChevalleyData, Family};
use crate::report::rng_from_seed;
use crate::rootsys::{fold_coinvariants, fold_invariants, folded_lattices, DynkinType, FoldingDatum};
use crate::slodowy::{appendix_slice, build_subregular_slice, verify_appendix};
use crate::unfolding::{exceptional_divisor_components, folding_family, order3_quotient_residuals, ThreefoldFamily};
use crate::verify::{forced_branch_count, run_suite, Suite};
use crate::weyl::{budget_from_env, WeylFolding, WeylGroup};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "foldlie", version, about = "Exact checks for folded root systems, slices and cameral covers")]
pub struct Cli {
    /// Output format; defaults to text on a terminal and JSON otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Also write the JSON report to this path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Fold a simply-laced type by a diagram automorphism.
    Fold {
        ty: String,
        #[arg(default_value_t = 2)]
        order: usize,
    },
    /// Enumerate a Weyl group, optionally with its folding.
    Weyl {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        fold: Option<usize>,
    },
    /// Matrix models of the simple Lie algebras.
    Liealg {
        #[command(subcommand)]
        cmd: LiealgCmd,
    },
    /// Subregular Slodowy slices.
    Slice {
        #[command(subcommand)]
        cmd: SliceCmd,
    },
    /// Semi-universal deformation of a simple singularity.
    Deform {
        #[arg(long = "type")]
        ty: String,
        /// Use the folding symmetry (order 2, or 3 for D4).
        #[arg(long)]
        fold: bool,
        #[arg(long)]
        order: Option<usize>,
    },
    /// Threefold over a curve for a folded type (C2 or G2).
    Threefold {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        genus: u32,
    },
    /// Cameral covers given by monodromy.
    Cameral {
        #[command(subcommand)]
        cmd: CameralCmd,
    },
    /// Hitchin base, fibre and intermediate-Jacobian dimensions.
    Dims {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        genus: u32,
        #[arg(long)]
        fold_from: Option<String>,
        #[arg(long)]
        isogeny: bool,
    },
    /// Run a verification suite.
    Verify {
        suite: String,
        #[arg(long, default_value_t = 10)]
        samples: usize,
        /// Include wall-clock time (makes the report non-reproducible).
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum LiealgCmd {
    /// Basis, Cartan and invariant degrees of the matrix model.
    Dump {
        #[arg(long = "type")]
        ty: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum SliceCmd {
    /// Subregular slice of sp4, sl3, sl4, … or the twisted sl4 slice (`appendix`).
    Show {
        #[arg(long = "type")]
        ty: String,
    },
    VerifyAppendix {
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum CameralCmd {
    /// Random connected transversal cover of the folded type, induced up.
    Induce {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(long)]
        genus: u32,
        /// Branch points; defaults to the discriminant degree |R|(2g − 2).
        #[arg(long)]
        branches: Option<usize>,
    },
    /// Random transversal cover for a Weyl group.
    Cover {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        genus: u32,
        #[arg(long, default_value_t = 0)]
        branches: usize,
    },
}

/// What a command produced: a JSON document and whether its checks passed.
pub struct Outcome {
    pub value: Value,
    pub passed: bool,
}

impl Outcome {
    fn info(value: Value) -> Self {
        Outcome { value, passed: true }
    }
}

fn ty(s: &str) -> Result<DynkinType> {
    s.parse()
}

fn weyl_if_allowed(t: DynkinType) -> Result<Option<WeylGroup>> {
    if t.weyl_order() as usize > budget_from_env() {
        return Ok(None);
    }
    Ok(Some(WeylGroup::of_roots(&crate::rootsys::build_root_system(t)?, budget_from_env())?))
}

fn cmd_fold(t: &str, order: usize) -> Result<Outcome> {
    let h = ty(t)?;
    let fd = FoldingDatum::standard(h, order)?;
    let co = fold_coinvariants(&fd)?;
    let inv = fold_invariants(&fd)?;
    let (character, cocharacter) = folded_lattices(&fd)?;
    let orders = if h.weyl_order() as usize > budget_from_env() {
        Value::Null
    } else {
        let wf = WeylFolding::new(&fd)?;
        json!({"homogeneous": wf.homogeneous.order(), "commutant": wf.commutant.len(), "folded": wf.folded.order()})
    };
    Ok(Outcome::info(json!({
        "homogeneous": h.to_string(),
        "order": order,
        "orbits": fd.aut.orbits(),
        "coinvariants": co.kind.to_string(),
        "invariants": inv.kind.to_string(),
        "weyl_orders": orders,
        "character_rank": character.rank,
        "cocharacter_rank": cocharacter.rank,
    })))
}

fn cmd_weyl(t: &str, fold: Option<usize>) -> Result<Outcome> {
    let t = ty(t)?;
    let w = weyl_if_allowed(t)?.ok_or(Error::BudgetExceeded(budget_from_env()))?;
    let mut out = json!({
        "type": t.to_string(),
        "order": w.order(),
        "reflections": w.reflections().len(),
        "poincare_polynomial": w.poincare_polynomial(),
        "degrees": degrees_from_poincare(&w)?,
    });
    let mut passed = true;
    if let Some(k) = fold {
        let wf = WeylFolding::new(&FoldingDatum::standard(t, k)?)?;
        let rep = wf.verify_isomorphism();
        passed = rep.passed();
        out["folding"] = json!({
            "order": k,
            "commutant": wf.commutant.len(),
            "folded": wf.folded.order(),
            "restriction": rep,
        });
    }
    Ok(Outcome { value: out, passed })
}

fn matrix_strings(m: &crate::exactalg::RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(rat_to_string).collect()).collect()
}

fn cmd_liealg_dump(t: &str) -> Result<Outcome> {
    let t = ty(t)?;
    let alg = homogeneous_algebra(t)?;
    let cd = ChevalleyData::new(&alg)?;
    let rep = cd.verify();
    Ok(Outcome {
        passed: rep.passed(),
        value: json!({
            "type": t.to_string(),
            "family": format!("{:?}", alg.family).to_lowercase(),
            "matrix_size": alg.size,
            "dimension": alg.dimension(),
            "rank": alg.rank(),
            "invariant_degrees": alg.invariant_degrees(),
            "positive_roots": cd.num_positive(),
            "cartan": alg.cartan_basis().iter().map(matrix_strings).collect::<Vec<_>>(),
            "basis": alg.basis.iter().map(matrix_strings).collect::<Vec<_>>(),
            "chevalley_check": rep,
        }),
    })
}

fn slice_algebra(name: &str) -> Result<crate::liealg::MatrixLieAlgebra> {
    let (family, n) = name
        .strip_prefix("sp")
        .map(|n| (Family::Sp, n))
        .or_else(|| name.strip_prefix("sl").map(|n| (Family::Sl, n)))
        .or_else(|| name.strip_prefix("so").map(|n| (Family::So, n)))
        .ok_or_else(|| Error::Precondition(format!("unknown algebra '{name}'")))?;
    let n: usize = n.parse().map_err(|_| Error::Precondition(format!("bad size in '{name}'")))?;
    build_algebra(family, n)
}

fn cmd_slice_show(name: &str) -> Result<Outcome> {
    let s = if name == "appendix" { appendix_slice()? } else { build_subregular_slice(&slice_algebra(name)?)? };
    let quotient: Vec<String> = s.quotient_polys()?.iter().map(|p| p.to_string()).collect();
    let mut v = serde_json::to_value(s.summary()).map_err(|e| Error::Precondition(e.to_string()))?;
    v["algebra"] = json!(name);
    v["quotient"] = json!(quotient);
    if let Ok(signs) = s.action_signs() {
        v["finite_action_signs"] = json!(signs);
    }
    Ok(Outcome::info(v))
}

fn cmd_deform(t: &str, fold: bool, order: Option<usize>) -> Result<Outcome> {
    let t = ty(t)?;
    let order = match (fold, order) {
        (_, Some(k)) => k,
        (true, None) if t.to_string() == "D4" => 3,
        (true, None) => 2,
        (false, None) => 1,
    };
    let fam = folding_family(t, order)?;
    let summary = fam.summary()?;
    let quasi = fam.is_quasi_homogeneous()?;
    let preserved = fam.action.preserves(&fam.polynomial()?);
    let mut v = serde_json::to_value(summary).map_err(|e| Error::Precondition(e.to_string()))?;
    v["order"] = json!(order);
    v["quasi_homogeneous"] = json!(quasi);
    v["action_preserves_family"] = json!(preserved);
    Ok(Outcome { value: v, passed: quasi && preserved })
}

fn threefold_source(folded: &str) -> Result<(DynkinType, usize)> {
    match folded {
        "C2" => Ok((ty("A3")?, 2)),
        "G2" => Ok((ty("D4")?, 3)),
        other => Err(Error::Unsupported(format!("no fixed-locus data for {other}; use C2 or G2"))),
    }
}

fn cmd_threefold(t: &str, g: u32) -> Result<Outcome> {
    let (h, order) = threefold_source(t)?;
    let tf = ThreefoldFamily::new(folding_family(h, order)?)?;
    let fam = &tf.deformation;
    let inv = fam.invariant_base();
    let fl = tf.fixed_locus()?;
    let genus = tf.fixed_locus_genus(g)?;
    let mut passed = true;
    let mut v = json!({
        "folded_type": t,
        "homogeneous": h.to_string(),
        "genus": g,
        "equation": tf.equation()?,
        "coordinate_twists": tf.coordinate_twists,
        "base": inv.iter().map(|&j| json!({"name": fam.base_names[j], "twist": tf.base_twists[j]})).collect::<Vec<_>>(),
        "fixed_locus": fl,
        "fixed_locus_genus": genus,
        "exceptional_components": exceptional_divisor_components(order as u32)?,
    });
    if order == 3 {
        let (rel, cubic) = order3_quotient_residuals(fam)?;
        passed = rel.is_zero() && cubic.is_zero();
        v["quotient_residuals"] = json!([rel.to_string(), cubic.to_string()]);
    }
    Ok(Outcome { value: v, passed })
}

fn cmd_cameral_induce(t: &str, order: usize, g: u32, branches: Option<usize>, seed: u64) -> Result<Outcome> {
    let fd = FoldingDatum::standard(ty(t)?, order)?;
    let wf = WeylFolding::new(&fd)?;
    let folded_type = fold_coinvariants(&fd)?.kind;
    let b = branches.unwrap_or_else(|| forced_branch_count(folded_type, g));
    let mut rng = rng_from_seed(seed);
    let cm = random_transversal(&wf.folded, g, b, true, &mut rng)?;
    let ic = induced_cover_report(&wf, &cm)?;
    let local = induced_local_monodromy_check(&wf, &cm)?;
    let push = pushforward_sections_check(&wf, &cm, &LatticeAction::root_lattice(&wf.homogeneous))?;
    let ranks = if g >= 1 && b > 0 {
        let folded = hitchin_fiber_rank(&wf.folded, &cm, &LatticeAction::root_lattice(&wf.folded))?;
        let invariant = hitchin_fiber_rank(&wf.folded, &cm, &LatticeAction::invariant_sublattice(&wf)?)?;
        json!({"folded_lattice": folded, "invariant_sublattice": invariant})
    } else {
        Value::Null
    };
    let passed = ic.components_match && ic.geometry.component_count == ic.index && local.passed() && push.passed();
    Ok(Outcome {
        passed,
        value: json!({
            "homogeneous": fd.homogeneous.kind.to_string(),
            "folded": folded_type.to_string(),
            "genus": g,
            "branch_points": b,
            "monodromy": cm,
            "original": ic.original,
            "induced": ic.geometry,
            "index": ic.index,
            "components_match": ic.components_match,
            "local_monodromy": local,
            "pushforward_sections": push,
            "fiber_rank": ranks,
        }),
    })
}

fn cmd_cameral_cover(t: &str, g: u32, branches: usize, seed: u64) -> Result<Outcome> {
    let t = ty(t)?;
    let w = weyl_if_allowed(t)?.ok_or(Error::BudgetExceeded(budget_from_env()))?;
    let mut rng = rng_from_seed(seed);
    let cm = random_transversal(&w, g, branches, true, &mut rng)?;
    let geo = cover_geometry(&w, &cm)?;
    Ok(Outcome::info(json!({"type": t.to_string(), "monodromy": cm, "geometry": geo})))
}

fn fold_source(target: DynkinType, from: DynkinType) -> Result<FoldingDatum> {
    for order in [2, 3] {
        if let Ok(fd) = FoldingDatum::standard(from, order) {
            if fold_coinvariants(&fd)?.kind == target {
                return Ok(fd);
            }
        }
    }
    Err(Error::Precondition(format!("{target} is not a folding of {from}")))
}

fn cmd_dims(t: &str, g: u32, fold_from: Option<&str>, isogeny: bool) -> Result<Outcome> {
    let t = ty(t)?;
    let base = dim_base(t, g)?;
    let mut v = json!({
        "type": t.to_string(),
        "genus": g,
        "degrees": base.degrees,
        "summands": base.summand_dims,
        "total": base.total(),
        "fiber_dim": fiber_dim(t, g)?,
    });
    let from = match (fold_from, isogeny) {
        (Some(h), _) => Some(ty(h)?),
        (None, true) => Some(threefold_source(&t.to_string())?.0),
        (None, false) => None,
    };
    let mut passed = true;
    if let Some(h) = from {
        let fd = fold_source(t, h)?;
        let m = folded_base_match(&fd, g)?;
        passed &= m.matches();
        v["fold_from"] = json!({
            "homogeneous": h.to_string(),
            "homogeneous_total": m.homogeneous.total(),
            "surviving_degrees": m.surviving_degrees,
            "invariant_part": m.invariant_part,
            "matches": m.matches(),
            "table_derived": m.table_derived,
        });
        if isogeny {
            let d = isogeny_dimensions(&fd, g)?;
            passed &= d.dim_j2z > d.dim_base;
            v["isogeny"] = serde_json::to_value(d).map_err(|e| Error::Precondition(e.to_string()))?;
        }
    }
    Ok(Outcome { value: v, passed })
}

fn cmd_verify(suite: &str, samples: usize, seed: u64, timing: bool) -> Result<Outcome> {
    let suite: Suite = suite.parse()?;
    let start = Instant::now();
    let mut rep = run_suite(suite, samples, seed)?;
    if timing {
        rep.elapsed_ms = Some(start.elapsed().as_millis());
    }
    let passed = rep.passed();
    Ok(Outcome { value: serde_json::to_value(rep).map_err(|e| Error::Precondition(e.to_string()))?, passed })
}

/// Dispatches a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Fold { ty, order } => cmd_fold(ty, *order),
        Command::Weyl { ty, fold } => cmd_weyl(ty, *fold),
        Command::Liealg { cmd: LiealgCmd::Dump { ty } } => cmd_liealg_dump(ty),
        Command::Slice { cmd: SliceCmd::Show { ty } } => cmd_slice_show(ty),
        Command::Slice { cmd: SliceCmd::VerifyAppendix { samples } } => {
            let rep = verify_appendix(*samples, cli.seed)?;
            let passed = rep.passed();
            Ok(Outcome { value: serde_json::to_value(rep).map_err(|e| Error::Precondition(e.to_string()))?, passed })
        }
        Command::Deform { ty, fold, order } => cmd_deform(ty, *fold, *order),
        Command::Threefold { ty, genus } => cmd_threefold(ty, *genus),
        Command::Cameral { cmd: CameralCmd::Induce { ty, order, genus, branches } } => {
            cmd_cameral_induce(ty, *order, *genus, *branches, cli.seed)
        }
        Command::Cameral { cmd: CameralCmd::Cover { ty, genus, branches } } => {
            cmd_cameral_cover(ty, *genus, *branches, cli.seed)
        }
        Command::Dims { ty, genus, fold_from, isogeny } => cmd_dims(ty, *genus, fold_from.as_deref(), *isogeny),
        Command::Verify { suite, samples, timing } => cmd_verify(suite, *samples, cli.seed, *timing),
    }
}

/// Indented `key: value` rendering of a JSON document.
pub fn render_text(v: &Value) -> String {
    fn scalar(v: &Value) -> Option<String> {
        match v {
            Value::Null => Some("-".into()),
            Value::Bool(b) => Some(b.to_string()),
            Value::Number(n) => Some(n.to_string()),
            Value::String(s) => Some(s.clone()),
            Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
                Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
            }
            Value::Array(a)
                if a.iter()
                    .all(|x| x.as_array().is_some_and(|r| r.iter().all(|y| !y.is_object() && !y.is_array()))) =>
            {
                Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
            }
            _ => None,
        }
    }
    fn walk(v: &Value, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        match v {
            Value::Object(map) => {
                for (k, x) in map {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}{k}:\n"));
                            walk(x, depth + 1, out);
                        }
                    }
                }
            }
            Value::Array(items) => {
                for x in items {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                        None => {
                            out.push_str(&format!("{pad}-\n"));
                            walk(x, depth + 1, out);
                        }
                    }
                }
            }
            other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
        }
    }
    let mut out = String::new();
    walk(v, 0, &mut out);
    out
}

/// Runs the CLI on `args` (including the program name), writing to the
/// given streams. Returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = if e.use_stderr() { write!(stderr, "{e}") } else { write!(stdout, "{e}") };
            return code;
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            let hint =
                if matches!(e, Error::BudgetExceeded(_)) { " (set FOLDLIE_ENABLE_E6=1 to allow it)" } else { "" };
            let _ = writeln!(stderr, "error: {e}{hint}");
            return EXIT_USAGE;
        }
    };
    let json_text = serde_json::to_string_pretty(&outcome.value).expect("JSON values serialize");
    if let Some(path) = &cli.out {
        if let Err(e) = std::fs::write(path, format!("{json_text}\n")) {
            let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
            return EXIT_USAGE;
        }
    }
    let format = cli.format.unwrap_or(if std::io::stdout().is_terminal() { Format::Text } else { Format::Json });
    let _ = match format {
        Format::Json => writeln!(stdout, "{json_text}"),
        Format::Text => write!(stdout, "{}", render_text(&outcome.value)),
    };
    if outcome.passed {
        EXIT_PASS
    } else {
        EXIT_FAILURE
    }
}
