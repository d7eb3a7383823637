//! Command-line front end for the Auslander-Reiten engine.
//!
//! Objects live in flat files: an algebra file fixes the arithmetic, and
//! every module or complex file names the algebra it was written over, so
//! each command takes the algebra first and the objects after it.  Output
//! is human-readable text by default; `--format record` prints one JSON
//! object with the same content.  Exit codes: 0 on success, 1 on a domain
//! error (or a strict-mode mismatch), 2 on a usage error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use arquiver::ar::{
    ar_sequence, distance_from_rim, homology_diagram, is_rigid, rim_representative,
    stabilization_module,
};
use arquiver::complex::PerfectComplex;
use arquiver::forms::{pairing, pairing_t, predicted_pairing, FormalSum};
use arquiver::homotopy::{decompose_complex, minimize};
use arquiver::io;
use arquiver::laurent::RationalValue;
use arquiver::module::{self, ModuleRep};
use arquiver::verify;

#[derive(Parser)]
#[command(name = "arquiver", version, about = "Auslander-Reiten theory for perfect complexes")]
struct Cli {
    /// Seed for the randomized direct-sum decompositions inside commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Turn reported mismatches into failures.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Record,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra file and print its structural invariants.
    Validate { algebra: PathBuf },

    /// Compute the almost split sequence ending at a module.
    #[command(name = "ar-seq")]
    ArSeq {
        algebra: PathBuf,
        module: PathBuf,
        /// Write the end term and the middle as module files into this
        /// directory.
        #[arg(long)]
        emit: Option<PathBuf>,
    },

    /// Integer form of two complexes: the stable hom dimension.
    Pairing { algebra: PathBuf, c: PathBuf, d: PathBuf },

    /// Graded form of two complexes as a Laurent polynomial.
    #[command(name = "pairing-t")]
    PairingT {
        algebra: PathBuf,
        c: PathBuf,
        d: PathBuf,
        /// Treat the inputs as the m-th and n-th chained extensions of
        /// their rim complex and compare against the predicted value.
        #[arg(long, num_args = 2, value_names = ["M", "N"])]
        predict: Option<Vec<usize>>,
    },

    /// Mesh distance of a complex from the rim of its component.
    Distance { algebra: PathBuf, complex: PathBuf },

    /// Homology diagram of the component at a complex, rim row on top.
    Component {
        algebra: PathBuf,
        complex: PathBuf,
        /// Number of mesh rows to walk below the rim.
        #[arg(long, default_value_t = 2)]
        depth: usize,
        /// Number of twist columns (default 2*depth + 1).
        #[arg(long)]
        window: Option<usize>,
    },

    /// Strip the contractible direct summands from a complex.
    Minimize {
        algebra: PathBuf,
        complex: PathBuf,
        /// Write the minimized complex to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },

    /// Homology modules of a complex by degree.
    Homology { algebra: PathBuf, complex: PathBuf },

    /// Indecomposable direct summands with their locality certificates.
    Decompose { algebra: PathBuf, complex: PathBuf },

    /// Whether the complex has stable self-maps only in degree zero.
    Rigid { algebra: PathBuf, complex: PathBuf },

    /// Run the built-in verification suite.
    Verify {
        /// Run a single criterion instead of the whole suite.
        #[arg(long)]
        criterion: Option<usize>,
    },
}

/// Accumulated command output: text lines for the default format and a
/// flat map of the same facts for `--format record`.
struct Report {
    lines: Vec<String>,
    record: serde_json::Map<String, Value>,
}

impl Report {
    fn new(command: &str) -> Report {
        let mut record = serde_json::Map::new();
        record.insert("command".into(), json!(command));
        Report { lines: Vec::new(), record }
    }

    fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    fn set(&mut self, key: &str, value: Value) {
        self.record.insert(key.into(), value);
    }

    fn print(&self, format: Format) {
        use std::io::Write;
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        let result = match format {
            Format::Text => self.lines.iter().try_for_each(|line| writeln!(out, "{line}")),
            Format::Record => writeln!(out, "{}", Value::Object(self.record.clone())),
        };
        // A closed downstream reader is not an error worth reporting.
        if let Err(e) = result {
            if e.kind() != std::io::ErrorKind::BrokenPipe {
                eprintln!("error: {e}");
            }
        }
    }
}

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn load_algebra(path: &Path) -> Result<arquiver::algebra::Alg> {
    io::load_algebra(path).with_context(|| format!("loading algebra {}", path.display()))
}

fn load_module(path: &Path, alg: &arquiver::algebra::Alg) -> Result<ModuleRep> {
    io::load_module(path, alg).with_context(|| format!("loading module {}", path.display()))
}

fn load_complex(path: &Path, alg: &arquiver::algebra::Alg) -> Result<PerfectComplex> {
    io::load_complex(path, alg).with_context(|| format!("loading complex {}", path.display()))
}

/// Name of an indecomposable module over its algebra: V{d} for proper
/// uniserials over a local algebra, P{s} and S{s} in general, and a bare
/// dimension marker for anything unnamed.
fn module_label(m: &ModuleRep, seed: u64) -> Result<String> {
    if m.dim == 0 {
        return Ok("0".into());
    }
    let alg = &m.alg;
    if alg.n_simples() == 1 {
        for d in 1..=alg.loewy_length() {
            if module::is_isomorphic(m, &module::uniserial(alg, d), seed)? {
                return Ok(if d == alg.loewy_length() { "P0".into() } else { format!("V{d}") });
            }
        }
    } else {
        for s in 0..alg.n_simples() {
            let p = ModuleRep::projective(alg, s);
            if module::is_isomorphic(m, &p, seed)? {
                return Ok(format!("P{s}"));
            }
            let rad = p.radical_subspace();
            if module::is_isomorphic(m, &p.quotient(&rad).0, seed)? {
                return Ok(format!("S{s}"));
            }
        }
    }
    Ok(format!("M{}", m.dim))
}

/// Summand labels joined with `+`, without the dimension suffix.
fn module_name(m: &ModuleRep, seed: u64) -> Result<String> {
    if m.dim == 0 {
        return Ok("0".into());
    }
    let mut labels = Vec::new();
    for part in module::decompose(m, seed)? {
        labels.push(module_label(&part.module, seed)?);
    }
    Ok(labels.join(" + "))
}

fn describe_module(m: &ModuleRep, seed: u64) -> Result<String> {
    Ok(format!("{} (dim {})", module_name(m, seed)?, m.dim))
}

/// Terms of a complex as `degree:dimension` pairs, highest degree first.
fn complex_shape(c: &PerfectComplex) -> String {
    let degrees = c.degrees();
    if degrees.is_empty() {
        return "zero".into();
    }
    degrees
        .iter()
        .rev()
        .map(|&n| format!("{}:{}", n, c.term_dim(n)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_validate(path: &Path) -> Result<(Report, bool)> {
    let mut r = Report::new("validate");
    let alg = load_algebra(path)?;
    let mut tags = vec!["valid".to_string()];
    if alg.is_symmetric() {
        tags.push("symmetric".into());
    } else if alg.is_self_injective() {
        tags.push("self-injective".into());
    }
    tags.push(format!("Loewy length {}", alg.loewy_length()));
    r.line(format!("{}: {}", alg.name(), tags.join(", ")));
    r.line(format!("characteristic: {}", alg.p()));
    r.line(format!("dimension: {}", alg.dim()));
    r.line(format!("simple modules: {}", alg.n_simples()));
    r.line(format!("self-injective: {}", yesno(alg.is_self_injective())));
    r.line(format!("symmetric: {}", yesno(alg.is_symmetric())));
    match alg.nakayama_permutation() {
        Ok(pi) => r.line(format!("nakayama permutation: {pi:?}")),
        Err(_) => r.line("nakayama permutation: none (not self-injective)"),
    }
    r.line("cartan matrix:");
    for row in alg.cartan_matrix() {
        r.line(format!("  {row:?}"));
    }
    r.set("name", json!(alg.name()));
    r.set("valid", json!(true));
    r.set("characteristic", json!(alg.p()));
    r.set("dimension", json!(alg.dim()));
    r.set("simples", json!(alg.n_simples()));
    r.set("loewy_length", json!(alg.loewy_length()));
    r.set("self_injective", json!(alg.is_self_injective()));
    r.set("symmetric", json!(alg.is_symmetric()));
    r.set("nakayama_permutation", json!(alg.nakayama_permutation().ok()));
    r.set("cartan_matrix", json!(alg.cartan_matrix()));
    Ok((r, true))
}

fn cmd_ar_seq(
    alg_path: &Path,
    mod_path: &Path,
    emit: Option<&Path>,
    seed: u64,
) -> Result<(Report, bool)> {
    let mut r = Report::new("ar-seq");
    let alg = load_algebra(alg_path)?;
    let m = load_module(mod_path, &alg)?;
    let seq = ar_sequence(&m)?;
    let tau_desc = describe_module(&seq.tau_m, seed)?;
    let mid_desc = describe_module(&seq.middle, seed)?;
    let m_desc = describe_module(&seq.m, seed)?;
    r.line(format!("0 -> {tau_desc} -> {mid_desc} -> {m_desc} -> 0"));
    r.line(format!("middle decomposes as: {}", module_name(&seq.middle, seed)?));
    let split = module::is_isomorphic(&seq.middle, &seq.tau_m.direct_sum(&seq.m), seed)?;
    r.line(format!("split: {}", yesno(split)));
    r.set("tau_m", json!({ "name": module_name(&seq.tau_m, seed)?, "dim": seq.tau_m.dim }));
    r.set("middle", json!({ "name": module_name(&seq.middle, seed)?, "dim": seq.middle.dim }));
    r.set("m", json!({ "name": module_name(&seq.m, seed)?, "dim": seq.m.dim }));
    r.set("split", json!(split));
    if let Some(dir) = emit {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("creating {}", dir.display()))?;
        let tau_path = dir.join("tau_m.mod");
        let mid_path = dir.join("middle.mod");
        io::write_module(&seq.tau_m, &tau_path)?;
        io::write_module(&seq.middle, &mid_path)?;
        r.line(format!("wrote {}", tau_path.display()));
        r.line(format!("wrote {}", mid_path.display()));
        r.set("emitted", json!([tau_path.display().to_string(), mid_path.display().to_string()]));
    }
    Ok((r, true))
}

fn cmd_pairing(alg_path: &Path, c_path: &Path, d_path: &Path) -> Result<(Report, bool)> {
    let mut r = Report::new("pairing");
    let alg = load_algebra(alg_path)?;
    let c = load_complex(c_path, &alg)?;
    let d = load_complex(d_path, &alg)?;
    let value = pairing(&FormalSum::from_complex(&c), &FormalSum::from_complex(&d))?;
    r.line(format!("pairing: {value}"));
    r.set("pairing", json!(value));
    Ok((r, true))
}

fn cmd_pairing_t(
    alg_path: &Path,
    c_path: &Path,
    d_path: &Path,
    predict: Option<&[usize]>,
    strict: bool,
) -> Result<(Report, bool)> {
    let mut r = Report::new("pairing-t");
    let alg = load_algebra(alg_path)?;
    let c = load_complex(c_path, &alg)?;
    let d = load_complex(d_path, &alg)?;
    let value = pairing_t(&c, &d)?;
    r.line(format!("pairing_t: {value}"));
    r.set("pairing_t", json!(value.to_string()));
    let mut ok = true;
    if let Some(&[m, n]) = predict {
        let rim = rim_representative(&c)?;
        let base = RationalValue::from_laurent(&pairing_t(&rim, &rim)?);
        let predicted = predicted_pairing(m, n, &base, true);
        let matched = predicted.eq_laurent(&value);
        r.line(format!("predicted ({m}, {n}): {predicted}"));
        r.line(format!("prediction: {}", if matched { "MATCH" } else { "MISMATCH" }));
        r.set("predicted", json!(predicted.to_string()));
        r.set("prediction_match", json!(matched));
        if !matched && strict {
            ok = false;
        }
    }
    Ok((r, ok))
}

fn cmd_distance(alg_path: &Path, c_path: &Path) -> Result<(Report, bool)> {
    let mut r = Report::new("distance");
    let alg = load_algebra(alg_path)?;
    let c = load_complex(c_path, &alg)?;
    let dist = distance_from_rim(&c)?;
    r.line(format!("distance from rim: {dist}"));
    r.line(format!("on rim: {}", yesno(dist == 0)));
    r.set("distance", json!(dist));
    r.set("on_rim", json!(dist == 0));
    Ok((r, true))
}

fn cmd_component(
    alg_path: &Path,
    c_path: &Path,
    depth: usize,
    window: Option<usize>,
    seed: u64,
) -> Result<(Report, bool)> {
    let mut r = Report::new("component");
    let alg = load_algebra(alg_path)?;
    let c = load_complex(c_path, &alg)?;
    let min_len = minimize(&c).complex.degrees().len();
    let rim = rim_representative(&c)?;
    let dist = min_len - rim.degrees().len();
    r.line(format!("distance from rim: {dist}"));
    r.line(format!("rim representative length: {}", rim.degrees().len()));
    r.set("distance", json!(dist));
    r.set("rim_length", json!(rim.degrees().len()));

    let diagram = homology_diagram(&rim, depth, window)?;
    r.line(format!(
        "homology diagram, rim row on top, twist columns {:?}:",
        diagram.columns
    ));
    let mut rows = Vec::new();
    for (i, row) in diagram.rows.iter().enumerate() {
        let mut cells = Vec::new();
        let mut cell_records = Vec::new();
        for m in row {
            let label = if m.dim == 0 {
                "0".to_string()
            } else {
                format!("{}({})", module_name(m, seed)?, m.dim)
            };
            cell_records.push(json!({ "name": module_name(m, seed)?, "dim": m.dim }));
            cells.push(format!("{label:>8}"));
        }
        r.line(format!("  row {i}: {}", cells.join(" ")));
        rows.push(Value::Array(cell_records));
    }
    r.set("columns", json!(diagram.columns));
    r.set("rows", Value::Array(rows));

    let mut mesh_records = Vec::new();
    for i in 0..depth {
        let meshes: Vec<_> = diagram.meshes.iter().filter(|m| m.row == i).collect();
        if meshes.is_empty() {
            continue;
        }
        let bad: Vec<i64> = meshes.iter().filter(|m| !m.exact).map(|m| m.col).collect();
        let projective = meshes.iter().any(|m| m.projective);
        let marker = if projective { " [x projective row]" } else { "" };
        if bad.is_empty() {
            r.line(format!("  meshes row {i}: all exact{marker}"));
        } else {
            r.line(format!("  meshes row {i}: not exact at columns {bad:?}{marker}"));
        }
        mesh_records.push(json!({ "row": i, "not_exact": bad, "projective": projective }));
    }
    r.set("meshes", Value::Array(mesh_records));

    let sigma = stabilization_module(&rim)?;
    r.line(format!("stabilization module: {}", describe_module(&sigma, seed)?));
    r.set("stabilization", json!({ "name": module_name(&sigma, seed)?, "dim": sigma.dim }));
    Ok((r, true))
}

fn cmd_minimize(alg_path: &Path, c_path: &Path, out: Option<&Path>) -> Result<(Report, bool)> {
    let mut r = Report::new("minimize");
    let alg = load_algebra(alg_path)?;
    let c = load_complex(c_path, &alg)?;
    let min = minimize(&c).complex;
    r.line(format!("before: {} (total dim {})", complex_shape(&c), c.total_dim()));
    r.line(format!("after:  {} (total dim {})", complex_shape(&min), min.total_dim()));
    r.set("before", json!({ "shape": complex_shape(&c), "total_dim": c.total_dim() }));
    r.set("after", json!({ "shape": complex_shape(&min), "total_dim": min.total_dim() }));
    if let Some(path) = out {
        io::write_complex(&min, path)?;
        r.line(format!("wrote {}", path.display()));
        r.set("out", json!(path.display().to_string()));
    }
    Ok((r, true))
}

fn cmd_homology(alg_path: &Path, c_path: &Path, seed: u64) -> Result<(Report, bool)> {
    let mut r = Report::new("homology");
    let alg = load_algebra(alg_path)?;
    let c = load_complex(c_path, &alg)?;
    let dims = c.homology_dims();
    if dims.is_empty() {
        r.line("homology: zero");
    }
    let mut records = Vec::new();
    for (&deg, _) in dims.iter().rev() {
        let h = c.homology(deg);
        r.line(format!("H_{deg}: {}", describe_module(&h, seed)?));
        records.push(json!({ "degree": deg, "name": module_name(&h, seed)?, "dim": h.dim }));
    }
    r.set("homology", Value::Array(records));
    Ok((r, true))
}

fn cmd_decompose(alg_path: &Path, c_path: &Path, seed: u64) -> Result<(Report, bool)> {
    let mut r = Report::new("decompose");
    let alg = load_algebra(alg_path)?;
    let c = load_complex(c_path, &alg)?;
    let parts = decompose_complex(&c, seed)?;
    r.line(format!("indecomposable summands: {}", parts.len()));
    let mut records = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        r.line(format!(
            "summand {i}: {} (total dim {}), end dim {}, nilpotency index {}",
            complex_shape(&part.complex),
            part.complex.total_dim(),
            part.cert.end_dim,
            part.cert.nil_index
        ));
        records.push(json!({
            "shape": complex_shape(&part.complex),
            "total_dim": part.complex.total_dim(),
            "end_dim": part.cert.end_dim,
            "nil_index": part.cert.nil_index,
        }));
    }
    r.set("summands", Value::Array(records));
    Ok((r, true))
}

fn cmd_rigid(alg_path: &Path, c_path: &Path) -> Result<(Report, bool)> {
    let mut r = Report::new("rigid");
    let alg = load_algebra(alg_path)?;
    let c = load_complex(c_path, &alg)?;
    let rigid = is_rigid(&c)?;
    let self_pairing = pairing_t(&c, &c)?;
    r.line(format!("self pairing: {self_pairing}"));
    r.line(format!("rigid: {}", yesno(rigid)));
    r.set("self_pairing", json!(self_pairing.to_string()));
    r.set("rigid", json!(rigid));
    Ok((r, true))
}

fn cmd_verify(criterion: Option<usize>) -> Result<(Report, bool)> {
    let mut r = Report::new("verify");
    let reports = match criterion {
        Some(index) => vec![verify::run_criterion(index)],
        None => verify::run_all(),
    };
    let mut all = true;
    let mut records = Vec::new();
    for rep in &reports {
        let verdict = if rep.pass { "PASS" } else { "FAIL" };
        r.line(format!("criterion {} ({}): {verdict}", rep.index, rep.name));
        if !rep.pass {
            all = false;
            for detail in &rep.details {
                r.line(format!("  {detail}"));
            }
        }
        records.push(json!({
            "index": rep.index,
            "name": rep.name,
            "pass": rep.pass,
            "details": rep.details,
        }));
    }
    r.line(format!("verification: {}", if all { "PASS" } else { "FAIL" }));
    r.set("criteria", Value::Array(records));
    r.set("pass", json!(all));
    Ok((r, all))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Validate { algebra } => cmd_validate(algebra),
        Command::ArSeq { algebra, module, emit } => {
            cmd_ar_seq(algebra, module, emit.as_deref(), cli.seed)
        }
        Command::Pairing { algebra, c, d } => cmd_pairing(algebra, c, d),
        Command::PairingT { algebra, c, d, predict } => {
            cmd_pairing_t(algebra, c, d, predict.as_deref(), cli.strict)
        }
        Command::Distance { algebra, complex } => cmd_distance(algebra, complex),
        Command::Component { algebra, complex, depth, window } => {
            cmd_component(algebra, complex, *depth, *window, cli.seed)
        }
        Command::Minimize { algebra, complex, out } => {
            cmd_minimize(algebra, complex, out.as_deref())
        }
        Command::Homology { algebra, complex } => cmd_homology(algebra, complex, cli.seed),
        Command::Decompose { algebra, complex } => cmd_decompose(algebra, complex, cli.seed),
        Command::Rigid { algebra, complex } => cmd_rigid(algebra, complex),
        Command::Verify { criterion } => cmd_verify(*criterion),
    };
    match result {
        Ok((report, ok)) => {
            report.print(cli.format);
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
