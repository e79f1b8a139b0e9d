//! Command-line interface. Every subcommand prints a one-line summary on
//! success and optionally writes a JSON or CSV artifact.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use weylpath_core::duality::{co_pitman_w0, d_w0, involution_i, q_w0};
use weylpath_core::itrail::{enumerate_itrails, fundamental_rep, verify_theorem_main};
use weylpath_core::littelmann::{character_of_module, generate_module, lr_decompose, lr_symmetry, straight_highest_path};
use weylpath_core::pitman::{pitman_inverse, pitman_w0, pitman_word};
use weylpath_core::typea::{rsk, schutzenberger_check, shape_path_equals_pitman};
use weylpath_core::{CoxeterDatum, Path, Rational, Scalar, TypeLabel, Weight, WeylWord};

use crate::error::{CliError, CliResult};
use crate::format::{bins_to_csv, read_path_doc, vector_text, write_json, PathDoc, TextScalar};
use crate::oracle;
use crate::simulate::{brownian_endpoint_test, d_invariance_test, walk_endpoint_test};
use crate::verify::{self, Settings, BROWNIAN_REFINEMENT, BROWNIAN_RESOLUTION};

#[derive(Debug, Parser)]
#[command(name = "weylpath", version, about = "Pitman transforms, Littelmann paths and their checks")]
pub struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Root system: A1, A2, A3, A1xA1, B2, G2 or I2(m).
    #[arg(long = "type", global = true)]
    pub type_label: Option<String>,
    /// Numerical tolerance for floating-point comparisons.
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Apply P_w (or its inverse for one generator) to a path file.
    Transform(TransformArgs),
    /// Apply the duality involution I or a related transform to a path file.
    Dualize(DualizeArgs),
    /// Generate the Littelmann module of a dominant integral weight.
    Module(ModuleArgs),
    /// Decompose a tensor product with the Littlewood-Richardson rule.
    Tensor(TensorArgs),
    /// Column-insertion RSK of a word and its Pitman checks.
    Rsk(RskArgs),
    /// Enumerate the i-trails of a fundamental representation of sl(n+1).
    Itrails(ItrailArgs),
    /// Compare Gauss-decomposition minors with T_w on a grid.
    GaussCheck(GaussArgs),
    /// Monte Carlo endpoint test of P_w0 on Brownian motion or a walk.
    Simulate(SimulateArgs),
    /// Run a named acceptance check, or all of them.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// Input path JSON.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Reduced word, one-based, rightmost letter applied first; default w0.
    #[arg(long)]
    pub word: Option<String>,
    /// Invert P for generator `--generator` with string parameter `--x`.
    #[arg(long, requires_all = ["generator", "x"])]
    pub inverse: bool,
    #[arg(long)]
    pub generator: Option<usize>,
    #[arg(long)]
    pub x: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DualOp {
    /// The involution I.
    I,
    /// E_w0, the transform built from suprema.
    E,
    /// D_w0 along a reduced word of w0.
    D,
    /// Q_w0 along a reduced word of w0.
    Q,
}

#[derive(Debug, Args)]
pub struct DualizeArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "i")]
    pub op: DualOp,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ModuleArgs {
    /// Highest weight in fundamental-weight coordinates, e.g. `1,0`.
    #[arg(long)]
    pub omega: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TensorArgs {
    #[arg(long)]
    pub lambda: String,
    #[arg(long)]
    pub mu: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RskArgs {
    /// Letters in `1..=d`, comma separated.
    #[arg(long)]
    pub word: String,
    /// Alphabet size; defaults to the largest letter.
    #[arg(long)]
    pub letters: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ItrailArgs {
    /// One-based index of the fundamental weight.
    #[arg(long)]
    pub fundamental: usize,
    /// Reduced word, one-based; default w0.
    #[arg(long)]
    pub word: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GaussArgs {
    /// Input path JSON; a random grid path when omitted.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Reduced word, one-based; default w0.
    #[arg(long)]
    pub word: Option<String>,
    #[arg(long, default_value_t = 1 << 12)]
    pub intervals: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 20_000)]
    pub samples: usize,
    /// Brownian grid intervals per unit time.
    #[arg(long, default_value_t = BROWNIAN_RESOLUTION)]
    pub resolution: usize,
    /// Bridge halvings allowed near running infima.
    #[arg(long, default_value_t = BROWNIAN_REFINEMENT)]
    pub refine: u32,
    /// Bins as `RADIALxANGULAR`, e.g. `10x5`.
    #[arg(long)]
    pub bins: Option<String>,
    /// Walk mode: highest weight of the step module.
    #[arg(long)]
    pub omega: Option<String>,
    /// Walk mode: number of steps.
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
    /// Also test the law of D_w0 X under drift 2 rho.
    #[arg(long)]
    pub d_invariance: bool,
    /// CSV of bins.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Full JSON report.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Check name, number or `all`.
    pub check: String,
    #[arg(long)]
    pub quick: bool,
    #[arg(long)]
    pub omega: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    /// JSON report of the outcomes.
    #[arg(long)]
    pub json: Option<PathBuf>,
}

impl Cli {
    /// The `--type` flag; unknown labels are reported as unsupported.
    pub fn label(&self) -> CliResult<Option<TypeLabel>> {
        self.type_label.as_deref().map(|s| TypeLabel::parse(s).map_err(CliError::from)).transpose()
    }
}

fn parse_weight(s: &str) -> CliResult<Weight> {
    Weight::parse(s).map_err(|e| CliError::Usage(e.to_string()))
}

fn parse_word(s: &str) -> CliResult<WeylWord> {
    WeylWord::parse(s).map_err(|e| CliError::Usage(e.to_string()))
}

fn weight_json(w: &Weight) -> Value {
    json!(vector_text(w.coeffs()))
}

/// Runs a parsed command; returns the summary line.
pub fn run(cli: &Cli) -> CliResult<String> {
    match &cli.command {
        Command::Transform(a) => transform(cli, a),
        Command::Dualize(a) => dualize(cli, a),
        Command::Module(a) => module(cli, a),
        Command::Tensor(a) => tensor(cli, a),
        Command::Rsk(a) => rsk_cmd(a),
        Command::Itrails(a) => itrails(cli, a),
        Command::GaussCheck(a) => gauss_check(cli, a),
        Command::Simulate(a) => simulate(cli, a),
        Command::Verify(a) => verify_cmd(cli, a),
    }
}

fn type_of(cli: &Cli, doc: Option<&PathDoc>) -> CliResult<TypeLabel> {
    match (cli.label()?, doc) {
        (Some(t), Some(d)) if TypeLabel::parse(&d.type_label)? != t => {
            Err(CliError::Usage(format!("--type {t} does not match the file's type {}", d.type_label)))
        }
        (Some(t), _) => Ok(t),
        (None, Some(d)) => Ok(TypeLabel::parse(&d.type_label)?),
        (None, None) => Err(CliError::Usage("--type is required".into())),
    }
}

fn emit<T: serde::Serialize>(out: &Option<PathBuf>, value: &T) -> CliResult<()> {
    match out {
        Some(f) => write_json(f, value),
        None => Ok(()),
    }
}

fn transform(cli: &Cli, a: &TransformArgs) -> CliResult<String> {
    let doc = read_path_doc(&a.input)?;
    let label = type_of(cli, Some(&doc))?;
    if label.is_crystallographic() {
        transform_with::<Rational>(label, &doc, a)
    } else {
        transform_with::<f64>(label, &doc, a)
    }
}

fn transform_with<S: TextScalar>(label: TypeLabel, doc: &PathDoc, a: &TransformArgs) -> CliResult<String> {
    let d: CoxeterDatum<S> = CoxeterDatum::from_label(label)?;
    let p: Path<S> = doc.to_path()?;
    d.check_vector(p.endpoint())?;
    let (out, what) = if a.inverse {
        let i = one_based(a.generator.unwrap_or(0), d.rank())?;
        let x_text = a.x.as_deref().unwrap_or_default();
        let x = S::parse_text(x_text).ok_or_else(|| CliError::Usage(format!("bad number '{x_text}'")))?;
        (pitman_inverse(&d, &p, i, &x)?, format!("P_{}^-1 with x = {x_text}", i + 1))
    } else {
        match &a.word {
            Some(w) => {
                let w = parse_word(w)?;
                (pitman_word(&d, &p, &w)?, format!("P_{w}"))
            }
            None => (pitman_w0(&d, &p)?, "P_w0".to_string()),
        }
    };
    emit(&a.out, &PathDoc::from_path(&label.to_string(), &out))?;
    Ok(format!("transform {label}: {what}, endpoint [{}]", vector_text(out.endpoint()).join(", ")))
}

fn one_based(i: usize, rank: usize) -> CliResult<usize> {
    if i == 0 || i > rank {
        return Err(CliError::Usage(format!("generator {i} out of range 1..={rank}")));
    }
    Ok(i - 1)
}

fn dualize(cli: &Cli, a: &DualizeArgs) -> CliResult<String> {
    let doc = read_path_doc(&a.input)?;
    let label = type_of(cli, Some(&doc))?;
    if label.is_crystallographic() {
        dualize_with::<Rational>(label, &doc, a)
    } else {
        dualize_with::<f64>(label, &doc, a)
    }
}

fn dualize_with<S: TextScalar>(label: TypeLabel, doc: &PathDoc, a: &DualizeArgs) -> CliResult<String> {
    let d: CoxeterDatum<S> = CoxeterDatum::from_label(label)?;
    let p: Path<S> = doc.to_path()?;
    d.check_vector(p.endpoint())?;
    let w0 = d.longest_element();
    let out = match a.op {
        DualOp::I => involution_i(&d, &p)?,
        DualOp::E => co_pitman_w0(&d, &p)?,
        DualOp::D => d_w0(&d, &p, &w0)?,
        DualOp::Q => q_w0(&d, &p, &w0)?,
    };
    emit(&a.out, &PathDoc::from_path(&label.to_string(), &out))?;
    Ok(format!("dualize {label}: {:?}, endpoint [{}]", a.op, vector_text(out.endpoint()).join(", ")))
}

fn exact_datum(cli: &Cli) -> CliResult<(TypeLabel, CoxeterDatum<Rational>)> {
    let label = type_of(cli, None)?;
    if !label.is_crystallographic() {
        return Err(CliError::Unsupported(format!("{label} (needs a crystallographic type)")));
    }
    Ok((label, CoxeterDatum::from_label(label)?))
}

fn module(cli: &Cli, a: &ModuleArgs) -> CliResult<String> {
    let (label, d) = exact_datum(cli)?;
    let lambda = parse_weight(&a.omega)?;
    let pi = straight_highest_path(&d, &lambda, Rational::one())?;
    let m = generate_module(&d, &pi)?;
    let ch = character_of_module(&d, &m);
    let dim = d.weyl_dimension(&lambda)?;
    if m.len() as u64 != dim {
        return Err(CliError::Assertion(format!("module has {} paths, Weyl dimension is {dim}", m.len())));
    }
    let character: Vec<Value> = ch.iter().map(|(w, &k)| json!({"weight": weight_json(w), "multiplicity": k})).collect();
    let paths: Vec<PathDoc> = m.paths().iter().map(|p| PathDoc::from_path(&label.to_string(), p)).collect();
    emit(&a.out, &json!({"type": label.to_string(), "highest_weight": weight_json(&lambda), "dimension": dim, "character": character, "paths": paths}))?;
    Ok(format!("module {label} V({lambda}): {} paths, {} distinct weights", m.len(), ch.len()))
}

fn tensor(cli: &Cli, a: &TensorArgs) -> CliResult<String> {
    let (label, d) = exact_datum(cli)?;
    let (lambda, mu) = (parse_weight(&a.lambda)?, parse_weight(&a.mu)?);
    let pi = straight_highest_path(&d, &lambda, Rational::one())?;
    let eta = straight_highest_path(&d, &mu, Rational::one())?;
    let lr = lr_decompose(&d, &pi, &eta)?;
    let got: std::collections::BTreeMap<Weight, u64> = lr.decomposition.iter().map(|(k, &m)| (k.clone(), m)).collect();
    if got != oracle::tensor_product(&d, &lambda, &mu) {
        return Err(CliError::Assertion("path model disagrees with the character oracle".into()));
    }
    let symmetric = lr_symmetry(&d, &pi, &eta)?.holds();
    if !symmetric {
        return Err(CliError::Assertion("LR symmetry fails".into()));
    }
    let total = lr.decomposition.total_dimension(&d)?;
    let mut parts = Vec::new();
    let mut summands = Vec::new();
    for (w, &m) in &got {
        let dim = d.weyl_dimension(w)?;
        parts.push(format!("{dim}:{m}"));
        summands.push(json!({"weight": weight_json(w), "multiplicity": m, "dimension": dim}));
    }
    emit(&a.out, &json!({"type": label.to_string(), "lambda": weight_json(&lambda), "mu": weight_json(&mu), "summands": summands, "total_dimension": total}))?;
    Ok(format!("tensor {label} V({lambda}) x V({mu}) = {{{}}}, total dimension {total}", parts.join(", ")))
}

fn rsk_cmd(a: &RskArgs) -> CliResult<String> {
    let word: Vec<usize> = a
        .word
        .split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad letter '{x}'"))))
        .collect::<CliResult<_>>()?;
    let top = word.iter().copied().max().unwrap_or(1);
    let letters = a.letters.unwrap_or(top.max(2));
    if word.iter().any(|&l| l == 0 || l > letters) {
        return Err(CliError::Usage(format!("letters must lie in 1..={letters}")));
    }
    let r = rsk(&word);
    let shape_ok = shape_path_equals_pitman(&word, letters)?;
    let dual_ok = schutzenberger_check(&word, letters)?;
    emit(&a.out, &json!({"word": word, "p": r.p.rows(), "q": r.q.rows(), "shapes": r.shapes, "shape_path_equals_pitman": shape_ok, "schutzenberger": dual_ok}))?;
    if !(shape_ok && dual_ok) {
        return Err(CliError::Assertion(format!("RSK checks failed: shape {shape_ok}, schutzenberger {dual_ok}")));
    }
    Ok(format!("rsk shape {:?}, P = {:?}, Q = {:?}", r.p.shape(), r.p.rows(), r.q.rows()))
}

fn itrails(cli: &Cli, a: &ItrailArgs) -> CliResult<String> {
    let (label, d) = exact_datum(cli)?;
    let TypeLabel::A(n) = label else {
        return Err(CliError::Unsupported(format!("{label} (i-trails are implemented for type A)")));
    };
    let i = one_based(a.fundamental, n)?;
    let word = match &a.word {
        Some(w) => parse_word(w)?,
        None => d.longest_element(),
    };
    let rep = fundamental_rep(n, i)?;
    let trails = enumerate_itrails(&d, &rep, &word)?;
    let list: Vec<Value> = trails
        .iter()
        .map(|t| json!({"letters": t.letters.iter().map(|l| l + 1).collect::<Vec<_>>(), "coefficient": t.coefficient.to_text()}))
        .collect();
    emit(&a.out, &json!({"type": label.to_string(), "fundamental": a.fundamental, "word": word.to_string(), "trails": list}))?;
    Ok(format!("itrails {label} omega_{} w = {word}: {} trails", a.fundamental, trails.len()))
}

fn gauss_check(cli: &Cli, a: &GaussArgs) -> CliResult<String> {
    use rand::SeedableRng;
    let (label, d) = match &a.input {
        Some(f) => {
            let doc = read_path_doc(f)?;
            let label = type_of(cli, Some(&doc))?;
            (label, doc)
        }
        None => {
            let label = cli.label()?.unwrap_or(TypeLabel::A(2));
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
            let p = weylpath_core::sample::random_grid_path(&mut rng, label.rank(), 8);
            (label, PathDoc::from_path(&label.to_string(), &p))
        }
    };
    if !matches!(label, TypeLabel::A(_)) {
        return Err(CliError::Unsupported(format!("{label} (the Gauss check is implemented for type A)")));
    }
    let dat: CoxeterDatum<Rational> = CoxeterDatum::from_label(label)?;
    let path: Path<Rational> = d.to_path()?;
    let word = match &a.word {
        Some(w) => parse_word(w)?,
        None => dat.longest_element(),
    };
    let tol = cli.tolerance.unwrap_or(1e-6);
    let err = verify_theorem_main(&dat, &path, &word, a.intervals)?;
    emit(&a.out, &json!({"type": label.to_string(), "word": word.to_string(), "intervals": a.intervals, "max_relative_error": err, "tolerance": tol}))?;
    if !(err <= tol) {
        return Err(CliError::Assertion(format!("max relative error {err:.3e} > {tol:e}")));
    }
    Ok(format!("gauss-check {label} w = {word}, grid {}: max relative error {err:.3e}", a.intervals))
}

fn parse_bins(s: &str) -> CliResult<(usize, usize)> {
    let bad = || CliError::Usage(format!("bins must look like 10x5, got '{s}'"));
    let (a, b) = s.split_once('x').unwrap_or((s, "1"));
    Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
}

fn simulate(cli: &Cli, a: &SimulateArgs) -> CliResult<String> {
    let label = type_of(cli, None)?;
    let bins = a.bins.as_deref().map(parse_bins).transpose()?;
    let mut report = match &a.omega {
        Some(w) => walk_endpoint_test(label, &parse_weight(w)?, a.steps, a.samples, cli.seed, bins)?,
        None => brownian_endpoint_test(label, a.samples, a.resolution, a.refine, cli.seed, bins)?,
    };
    if a.d_invariance {
        report.d_invariance = Some(d_invariance_test(label, None, a.samples, 64, cli.seed)?);
    }
    if let Some(f) = &a.out {
        fs::write(f, bins_to_csv(&report.bins)).map_err(|e| CliError::Io(format!("{}: {e}", f.display())))?;
    }
    emit(&a.json, &report)?;
    Ok(report.summary())
}

fn verify_cmd(cli: &Cli, a: &VerifyArgs) -> CliResult<String> {
    let settings = Settings {
        seed: cli.seed,
        quick: a.quick,
        type_label: cli.label()?,
        omega: a.omega.as_deref().map(parse_weight).transpose()?,
        n: a.n,
        tolerance: cli.tolerance,
    };
    let outcomes = verify::run_named(&a.check, &settings)?;
    for o in &outcomes {
        println!("{}", o.line());
    }
    emit(&a.json, &outcomes)?;
    let failed: Vec<&verify::Outcome> = outcomes.iter().filter(|o| !o.ok()).collect();
    match failed.first() {
        None => Ok(format!("verify {}: {} of {} checks passed", a.check, outcomes.len(), outcomes.len())),
        Some(first) => {
            let msg = format!("verify {}: {} of {} checks failed", a.check, failed.len(), outcomes.len());
            Err(match first.code {
                0 | 1 => CliError::Assertion(msg),
                2 => CliError::Usage(msg),
                3 => CliError::Malformed(msg),
                4 => CliError::Unsupported(msg),
                5 => CliError::Budget(msg),
                _ => CliError::Io(msg),
            })
        }
    }
}
