//! Command-line driver for the 3-Lie algebra toolkit: loads algebras given
//! by structure constants, computes derivation-type operator spaces, and
//! runs the library's identity checks over them.
//!
//! Exit codes: 0 success, 1 a verification failed, 2 unreadable or
//! malformed input, 3 the bracket violates the fundamental identity,
//! 4 missing or invalid torus.

mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use report::{map_space_value, matrix_value, vector_value, Format, Report};
use trilie::algebra::{Algebra, BracketTable};
use trilie::catalog;
use trilie::cohomology::{
    delta0_adjoint, delta0_trivial, delta1_adjoint_vanishes, delta1_trivial_vanishes,
    is_qder_via_kernel, kernel_equivalence_audit, mu_kernel, qder_coboundary_checks, ScanReport,
    TupleBudget,
};
use trilie::extension::{embed_qder, embedded_qder_image, extend, semidirect_check};
use trilie::io;
use trilie::map_spaces::{
    self, map_bracket, matricize, GenDerQuadruple, MapSpace, QDerPair,
};
use trilie::matrix::{is_zero_vector, sub_vectors, zero_vector, Matrix};
use trilie::scalar::{int, parse_scalar, Scalar};
use trilie::torus::{
    check_sum_decomposable, root_decomposition, structure_checks, validate_torus,
    weight_decomposition_of, Torus, WeightDecomposition,
};

const EXIT_FAILED_VERIFICATION: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_INVALID_ALGEBRA: u8 = 3;
const EXIT_INVALID_TORUS: u8 = 4;

#[derive(Parser)]
#[command(
    name = "trilie",
    version,
    about = "Exact-arithmetic toolkit for 3-Lie algebras given by structure constants"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an algebra and check the fundamental identity
    Check {
        /// Algebra file path, or catalog:NAME
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compute operator spaces: dimensions and bases
    Spaces {
        /// Algebra file path, or catalog:NAME
        input: String,
        /// Comma-separated subset of the spaces; default is all of them
        #[arg(long, value_enum, value_delimiter = ',')]
        which: Vec<SpaceKind>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Build the graded tensor extension and check the embedding
    Extend {
        /// Algebra file path, or catalog:NAME
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Audit the cube-kernel membership test for quasiderivations
    Kernel {
        /// Algebra file path, or catalog:NAME
        input: String,
        /// JSON file holding one square matrix (rows of scalars) to test
        #[arg(long)]
        map: Option<String>,
        /// Random maps to include in the audit
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Seed for every random draw
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on 5-tuple scans; beyond it a seeded sample is used
        #[arg(long, default_value_t = 32 * 1024)]
        max_exhaustive: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Root and weight decompositions for the input's torus
    Weights {
        /// Algebra file path, or catalog:NAME; the input must carry torus rows
        input: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run every check that applies to the input; exit 0 only if all pass
    Verify {
        /// Algebra file path, or catalog:NAME
        input: String,
        /// Random maps to include in the kernel audit
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Seed for every random draw
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap on 5-tuple scans; beyond it a seeded sample is used
        #[arg(long, default_value_t = 32 * 1024)]
        max_exhaustive: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the built-in algebras, or print one as a loadable file
    Catalog {
        /// Entry name; when given, the loadable file JSON is printed as-is
        name: Option<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
enum SpaceKind {
    Der,
    Ad,
    Zder,
    Centroid,
    Qcentroid,
    Qder,
    Gder,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure { code, message: message.into() }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Check { input, format } => cmd_check(&input, format),
        Command::Spaces { input, which, format } => cmd_spaces(&input, &which, format),
        Command::Extend { input, format } => cmd_extend(&input, format),
        Command::Kernel { input, map, samples, seed, max_exhaustive, format } => {
            cmd_kernel(&input, map.as_deref(), samples, seed, max_exhaustive, format)
        }
        Command::Weights { input, format } => cmd_weights(&input, format),
        Command::Verify { input, samples, seed, max_exhaustive, format } => {
            cmd_verify(&input, samples, seed, max_exhaustive, format)
        }
        Command::Catalog { name, format } => cmd_catalog(name.as_deref(), format),
    };
    match outcome {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// A resolved input: the algebra plus whatever companion data the source
/// carried. Block dimensions are only known for catalog entries.
struct Input {
    id: String,
    algebra: Algebra,
    torus_rows: Option<Vec<Vec<Scalar>>>,
    blocks: Option<Vec<usize>>,
}

fn resolve_input(source: &str) -> Result<Input, Failure> {
    if let Some(name) = source.strip_prefix("catalog:") {
        let entry = catalog::algebra(name).ok_or_else(|| unknown_catalog_entry(name))?;
        return Ok(Input {
            id: source.to_string(),
            algebra: entry.algebra,
            torus_rows: entry.torus,
            blocks: entry.blocks,
        });
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| fail(EXIT_PARSE, format!("cannot read {source}: {e}")))?;
    match io::load(&text) {
        Ok(loaded) => Ok(Input {
            id: source.to_string(),
            algebra: loaded.algebra,
            torus_rows: loaded.torus,
            blocks: None,
        }),
        Err(io::LoadError::Format(e)) => Err(fail(EXIT_PARSE, format!("{source}: {e}"))),
        Err(io::LoadError::Structure(e)) => Err(fail(EXIT_PARSE, format!("{source}: {e}"))),
        Err(io::LoadError::Identity(violations)) => Err(fail(
            EXIT_INVALID_ALGEBRA,
            format!(
                "{source}: the bracket violates the fundamental identity at {} basis tuples \
                 (run `trilie check` for the witnesses)",
                violations.len()
            ),
        )),
    }
}

fn unknown_catalog_entry(name: &str) -> Failure {
    fail(
        EXIT_PARSE,
        format!(
            "unknown catalog entry {:?}; known entries: {}, plus abelianN for N from 1 to 32",
            name,
            catalog::names().join(", ")
        ),
    )
}

fn emit(
    id: &str,
    operation: &str,
    payload: Value,
    started: Instant,
    format: Format,
    ok: bool,
) -> Result<ExitCode, Failure> {
    let report = Report {
        algebra_id: id.to_string(),
        operation: operation.to_string(),
        payload,
        elapsed_ms: started.elapsed().as_millis(),
    };
    print!("{}", report.render(format));
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(EXIT_FAILED_VERIFICATION) })
}

// ---------------------------------------------------------------- check

fn cmd_check(source: &str, format: Format) -> Result<ExitCode, Failure> {
    let started = Instant::now();
    if source.starts_with("catalog:") {
        // Catalog entries are validated at construction.
        let input = resolve_input(source)?;
        let payload = check_payload(&input.algebra, input.torus_rows.as_deref());
        return emit(source, "check", payload, started, format, true);
    }
    let text = std::fs::read_to_string(source)
        .map_err(|e| fail(EXIT_PARSE, format!("cannot read {source}: {e}")))?;
    let parsed = io::parse_file(&text).map_err(|e| fail(EXIT_PARSE, format!("{source}: {e}")))?;
    let algebra = Algebra::new_unchecked(parsed.dim, parsed.labels, parsed.entries)
        .map_err(|e| fail(EXIT_PARSE, format!("{source}: {e}")))?;
    let violations = algebra.fundamental_identity_violations();
    if violations.is_empty() {
        let payload = check_payload(&algebra, parsed.torus.as_deref());
        return emit(source, "check", payload, started, format, true);
    }
    // Report the witnesses (1-based indices, matching the file format).
    let shown: Vec<Value> = violations
        .iter()
        .take(10)
        .map(|v| {
            json!({
                "x": [v.x[0] + 1, v.x[1] + 1, v.x[2] + 1],
                "y": [v.y[0] + 1, v.y[1] + 1],
                "residual": vector_value(&v.residual),
            })
        })
        .collect();
    let payload = json!({
        "dim": algebra.dim(),
        "fundamental_identity": "fails",
        "violation_count": violations.len(),
        "violations_shown": shown.len(),
        "violations": shown,
    });
    let report = Report {
        algebra_id: source.to_string(),
        operation: "check".to_string(),
        payload,
        elapsed_ms: started.elapsed().as_millis(),
    };
    print!("{}", report.render(format));
    Ok(ExitCode::from(EXIT_INVALID_ALGEBRA))
}

fn check_payload(a: &Algebra, torus_rows: Option<&[Vec<Scalar>]>) -> Value {
    let mut payload = json!({
        "dim": a.dim(),
        "bracket_entries": a.stored_entries().count(),
        "fundamental_identity": "holds",
        "center_dim": a.center().dim(),
        "derived_dim": a.derived_algebra().dim(),
        "torus_generators": torus_rows.map(|r| r.len()),
    });
    if let Some(labels) = a.labels() {
        payload["labels"] = json!(labels);
    }
    payload
}

// ---------------------------------------------------------------- spaces

fn cmd_spaces(source: &str, which: &[SpaceKind], format: Format) -> Result<ExitCode, Failure> {
    let input = resolve_input(source)?;
    let a = &input.algebra;
    let started = Instant::now();
    let all = [
        SpaceKind::Der,
        SpaceKind::Ad,
        SpaceKind::Zder,
        SpaceKind::Centroid,
        SpaceKind::Qcentroid,
        SpaceKind::Qder,
        SpaceKind::Gder,
    ];
    let requested: Vec<SpaceKind> = if which.is_empty() {
        all.to_vec()
    } else {
        let mut seen = Vec::new();
        for &k in which {
            if !seen.contains(&k) {
                seen.push(k);
            }
        }
        seen
    };
    let mut payload = Map::new();
    payload.insert("dim".to_string(), json!(a.dim()));
    for kind in requested {
        let (name, space) = match kind {
            SpaceKind::Der => ("der", map_spaces::der(a)),
            SpaceKind::Ad => ("ad", map_spaces::inner_der(a)),
            SpaceKind::Zder => ("zder", map_spaces::zder(a)),
            SpaceKind::Centroid => ("centroid", map_spaces::centroid(a)),
            SpaceKind::Qcentroid => ("qcentroid", map_spaces::quasicentroid(a)),
            SpaceKind::Qder => ("qder", map_spaces::qder(a)),
            SpaceKind::Gder => ("gder", map_spaces::gder(a)),
        };
        payload.insert(name.to_string(), map_space_value(&space));
    }
    emit(&input.id, "spaces", Value::Object(payload), started, format, true)
}

// ---------------------------------------------------------------- extend

/// Derivation identity for a single map, checked on every increasing basis
/// triple: g[x,y,z] = [gx,y,z] + [x,gy,z] + [x,y,gz].
fn satisfies_derivation_identity(n: usize, table: &BracketTable, g: &Matrix) -> bool {
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let lhs = match table.get(i, j, k) {
                    Some(w) => g.apply(w),
                    None => zero_vector(n),
                };
                let t1 = table.bracket_v_e_e(&g.column(i), j, k);
                let t2 = table.bracket_e_v_e(i, &g.column(j), k);
                let t3 = table.bracket_e_e_v(i, j, &g.column(k));
                let residual =
                    sub_vectors(&sub_vectors(&sub_vectors(&lhs, &t1), &t2), &t3);
                if !is_zero_vector(&residual) {
                    return false;
                }
            }
        }
    }
    true
}

/// Runs the extension checks; returns the payload and whether they passed.
fn extension_section(a: &Algebra, pairs: &MapSpace) -> (Value, bool) {
    if a.stored_entries().count() == 0 {
        // Zero bracket: the extension is abelian and every map is a
        // derivation of it, so the embedding statement is vacuous.
        return (
            Value::String("skipped: the bracket is zero, the embedding is trivial".to_string()),
            true,
        );
    }
    let e = extend(a);
    let table = BracketTable::new(&e.algebra);
    let n_ext = e.algebra.dim();
    let mut embedded_are_derivations = true;
    let mut embedded_count = 0usize;
    for t in pairs.basis_tuples() {
        let pair = QDerPair { f: t[0].clone(), fprime: t[1].clone() };
        match embed_qder(&e, &pair) {
            Ok(g) => {
                if !satisfies_derivation_identity(n_ext, &table, &g) {
                    embedded_are_derivations = false;
                }
            }
            Err(_) => embedded_are_derivations = false,
        }
        embedded_count += 1;
    }
    let image = embedded_qder_image(&e);
    let mut ok = embedded_are_derivations;
    let semidirect = match semidirect_check(&e) {
        Ok(rep) => {
            ok &= rep.holds();
            json!({
                "derivation_dim": rep.der_extension_dim,
                "image_dim": rep.image_dim,
                "central_derivation_dim": rep.central_der_dim,
                "intersection_dim": rep.intersection_dim,
                "image_contained": rep.image_contained,
                "sum_is_whole": rep.sum_is_whole,
                "summand_is_ideal": rep.summand_is_ideal,
                "holds": rep.holds(),
            })
        }
        Err(e) => Value::String(format!("skipped: {e}")),
    };
    let payload = json!({
        "base_dim": a.dim(),
        "extension_dim": n_ext,
        "embedded_pairs_checked": embedded_count,
        "embedded_maps_are_derivations": embedded_are_derivations,
        "image_dim": image.dim(),
        "semidirect": semidirect,
    });
    (payload, ok)
}

fn cmd_extend(source: &str, format: Format) -> Result<ExitCode, Failure> {
    let input = resolve_input(source)?;
    let a = &input.algebra;
    let started = Instant::now();
    let pairs = map_spaces::qder_pairs(a);
    let (payload, ok) = extension_section(a, &pairs);
    emit(&input.id, "extend", payload, started, format, ok)
}

// ---------------------------------------------------------------- kernel

fn scan_value(s: &ScanReport) -> Value {
    json!({
        "checked": s.checked,
        "total": s.total,
        "sampled": s.sampled,
        "failures": s.failures,
        "first_failure": s.first_failure.map(|t| t.to_vec()),
    })
}

fn kernel_section(
    a: &Algebra,
    samples: usize,
    seed: u64,
    budget: TupleBudget,
) -> (Value, bool) {
    let qder = map_spaces::qder(a);
    let kernel = mu_kernel(a);
    let audit = kernel_equivalence_audit(a, samples, seed);
    let cob = qder_coboundary_checks(a, budget);
    let ok = audit.all_agree() && cob.all_ok();
    let payload = json!({
        "qder_dim": qder.dim(),
        "cube_kernel_dim": kernel.dim(),
        "audit": {
            "maps_tested": audit.total,
            "members": audit.members,
            "mismatches": audit.mismatches,
            "all_agree": audit.all_agree(),
        },
        "coboundary": {
            "pairs_checked": cob.pairs_checked,
            "defect_matches_difference": cob.defect_matches_difference,
            "witness_equivalence": cob.witness_equivalence,
            "probes": cob.probes,
            "exchange": scan_value(&cob.exchange),
            "all_ok": cob.all_ok(),
        },
    });
    (payload, ok)
}

fn read_matrix_file(path: &str, n: usize) -> Result<Matrix, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_PARSE, format!("cannot read {path}: {e}")))?;
    let raw: Vec<Vec<Value>> = serde_json::from_str(&text)
        .map_err(|e| fail(EXIT_PARSE, format!("{path}: {e}")))?;
    if raw.len() != n || raw.iter().any(|r| r.len() != n) {
        return Err(fail(EXIT_PARSE, format!("{path}: expected a {n}x{n} matrix")));
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for row in &raw {
        let mut out = Vec::with_capacity(n);
        for cell in row {
            let scalar = match cell {
                Value::Number(num) => num
                    .as_i64()
                    .map(int)
                    .ok_or_else(|| fail(EXIT_PARSE, format!("{path}: non-integer number {num}"))),
                Value::String(s) => parse_scalar(s)
                    .map_err(|e| fail(EXIT_PARSE, format!("{path}: bad scalar {s:?}: {e}"))),
                other => Err(fail(EXIT_PARSE, format!("{path}: bad matrix cell {other}"))),
            }?;
            out.push(scalar);
        }
        rows.push(out);
    }
    Ok(Matrix::from_rows(n, rows))
}

fn cmd_kernel(
    source: &str,
    map: Option<&str>,
    samples: usize,
    seed: u64,
    max_exhaustive: usize,
    format: Format,
) -> Result<ExitCode, Failure> {
    let input = resolve_input(source)?;
    let a = &input.algebra;
    let n = a.dim();
    let budget = TupleBudget { cap: max_exhaustive, seed };
    let started = Instant::now();
    let (mut payload, mut ok) = kernel_section(a, samples, seed, budget);
    if let Some(path) = map {
        let m = read_matrix_file(path, n)?;
        let member = map_spaces::qder(a).contains(&m);
        let via_kernel = is_qder_via_kernel(a, &m);
        ok &= member == via_kernel;
        payload["map"] = json!({
            "file": path,
            "is_quasiderivation": member,
            "kernel_test": via_kernel,
            "tests_agree": member == via_kernel,
        });
    }
    emit(&input.id, "kernel", payload, started, format, ok)
}

// ---------------------------------------------------------------- weights

fn required_torus(input: &Input) -> Result<Torus, Failure> {
    let rows = input.torus_rows.clone().ok_or_else(|| {
        fail(
            EXIT_INVALID_TORUS,
            format!(
                "{}: no torus rows in the input; add a \"torus\" field or pick a catalog \
                 entry that carries one",
                input.id
            ),
        )
    })?;
    build_valid_torus(&input.algebra, rows)
}

fn build_valid_torus(a: &Algebra, rows: Vec<Vec<Scalar>>) -> Result<Torus, Failure> {
    let torus = Torus::new(a.dim(), rows)
        .map_err(|e| fail(EXIT_INVALID_TORUS, format!("invalid torus: {e}")))?;
    let validation = validate_torus(a, &torus)
        .map_err(|e| fail(EXIT_INVALID_TORUS, format!("invalid torus: {e}")))?;
    if let Some(e) = validation.first_error() {
        return Err(fail(EXIT_INVALID_TORUS, format!("invalid torus: {e}")));
    }
    Ok(torus)
}

#[derive(Clone, Copy)]
enum RowShape {
    /// Basis rows are vectors in the algebra.
    Vectors,
    /// Basis rows are flattened n-by-n maps; render them as matrices.
    Maps(usize),
}

fn decomposition_value(d: &WeightDecomposition, shape: RowShape) -> Value {
    let parts: Vec<Value> = d
        .entries()
        .map(|(w, s)| {
            let basis: Vec<Value> = s
                .basis_rows()
                .iter()
                .map(|row| match shape {
                    RowShape::Vectors => vector_value(row),
                    RowShape::Maps(n) => matrix_value(&matricize(n, row)),
                })
                .collect();
            json!({
                "weight": vector_value(w.values()),
                "dim": s.dim(),
                "basis": basis,
            })
        })
        .collect();
    json!({
        "zero_part_dim": d.zero_part().dim(),
        "total_dim": d.total_dim(),
        "parts": parts,
    })
}

fn cmd_weights(source: &str, format: Format) -> Result<ExitCode, Failure> {
    let input = resolve_input(source)?;
    let a = &input.algebra;
    let n = a.dim();
    let started = Instant::now();
    let torus = required_torus(&input)?;
    let roots = root_decomposition(a, &torus)
        .map_err(|e| fail(EXIT_INVALID_TORUS, format!("invalid torus: {e}")))?;
    let qder = map_spaces::qder(a);
    let qc = map_spaces::quasicentroid(a);
    let qder_weights = weight_decomposition_of(&qder, a, &torus).map_err(|e| {
        fail(
            EXIT_FAILED_VERIFICATION,
            format!("quasiderivation weight decomposition failed: {e}"),
        )
    })?;
    let qc_weights = weight_decomposition_of(&qc, a, &torus).map_err(|e| {
        fail(
            EXIT_FAILED_VERIFICATION,
            format!("quasicentroid weight decomposition failed: {e}"),
        )
    })?;
    let checks = structure_checks(a, &torus)
        .map_err(|e| fail(EXIT_INVALID_TORUS, format!("invalid torus: {e}")))?;
    let all_pass = checks.all_pass();
    let items: Vec<Value> = checks
        .items
        .iter()
        .map(|i| json!({ "name": i.name, "pass": i.pass, "detail": i.detail }))
        .collect();
    let payload = json!({
        "torus": {
            "generators": torus.generators().len(),
            "rank": torus.span().dim(),
            "pairs": torus.pairs().len(),
        },
        "roots": decomposition_value(&roots, RowShape::Vectors),
        "qder_weights": decomposition_value(&qder_weights, RowShape::Maps(n)),
        "qcentroid_weights": decomposition_value(&qc_weights, RowShape::Maps(n)),
        "structure_checks": items,
        "structure_checks_pass": all_pass,
    });
    emit(&input.id, "weights", payload, started, format, all_pass)
}

// ---------------------------------------------------------------- verify

struct ItemList {
    items: Vec<Value>,
    pass: bool,
}

impl ItemList {
    fn new() -> Self {
        ItemList { items: Vec::new(), pass: true }
    }

    fn push(&mut self, name: &str, pass: bool, detail: String) {
        self.pass &= pass;
        self.items.push(json!({ "name": name, "pass": pass, "detail": detail }));
    }

    fn skip(&mut self, name: &str, reason: &str) {
        self.items.push(json!({
            "name": name,
            "pass": true,
            "detail": format!("skipped: {reason}"),
        }));
    }
}

fn closed_under_bracket(space: &MapSpace) -> bool {
    let basis = space.basis_matrices();
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            if !space.contains(&map_bracket(f, g)) {
                return false;
            }
        }
    }
    true
}

fn bracket_lands_in(outer: &MapSpace, inner: &MapSpace) -> bool {
    for f in outer.basis_matrices() {
        for g in inner.basis_matrices() {
            if !inner.contains(&map_bracket(&f, &g)) {
                return false;
            }
        }
    }
    true
}

fn brackets_vanish(space: &MapSpace) -> bool {
    let basis = space.basis_matrices();
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            if !map_bracket(f, g).is_zero() {
                return false;
            }
        }
    }
    true
}

fn quadruples_split(a: &Algebra, quadruples: &MapSpace, qc: &MapSpace) -> (bool, usize) {
    let mut ok = true;
    let tuples = quadruples.basis_tuples();
    for t in &tuples {
        let q = GenDerQuadruple {
            f1: t[0].clone(),
            f2: t[1].clone(),
            f3: t[2].clone(),
            fprime: t[3].clone(),
        };
        match map_spaces::split_gder(a, &q) {
            Ok(split) => {
                if !split.quasiderivation.satisfies(a) {
                    ok = false;
                }
                for part in &split.quasicentroid_parts {
                    if !qc.contains(part) {
                        ok = false;
                    }
                }
            }
            Err(_) => ok = false,
        }
    }
    (ok, tuples.len())
}

fn cmd_verify(
    source: &str,
    samples: usize,
    seed: u64,
    max_exhaustive: usize,
    format: Format,
) -> Result<ExitCode, Failure> {
    let input = resolve_input(source)?;
    let a = &input.algebra;
    let n = a.dim();
    let budget = TupleBudget { cap: max_exhaustive, seed };
    let started = Instant::now();

    // The torus is validated up front so a bad one exits 4 before any
    // report is printed; an absent torus just skips the weight section.
    let torus = match &input.torus_rows {
        Some(rows) => Some(build_valid_torus(a, rows.clone())?),
        None => None,
    };

    let mut sections = Map::new();
    let mut all_pass = true;

    let der = map_spaces::der(a);
    let ad = map_spaces::inner_der(a);
    let zd = map_spaces::zder(a);
    let cen = map_spaces::centroid(a);
    let qc = map_spaces::quasicentroid(a);
    let pairs = map_spaces::qder_pairs(a);
    let quadruples = map_spaces::gder_quadruples(a);
    let qd = pairs.project(0);
    let gd = quadruples.project(0);
    let centerless = a.center().is_zero();

    let mut items = ItemList::new();
    items.push(
        "inner_derivations_are_derivations",
        der.contains_space(&ad),
        format!("dim {} inside dim {}", ad.dim(), der.dim()),
    );
    items.push(
        "central_derivations_are_derivations",
        der.contains_space(&zd),
        format!("dim {} inside dim {}", zd.dim(), der.dim()),
    );
    items.push(
        "derivations_are_quasiderivations",
        qd.contains_space(&der),
        format!("dim {} inside dim {}", der.dim(), qd.dim()),
    );
    items.push(
        "quasiderivations_are_generalized_derivations",
        gd.contains_space(&qd),
        format!("dim {} inside dim {}", qd.dim(), gd.dim()),
    );
    items.push(
        "centroid_inside_quasicentroid",
        qc.contains_space(&cen),
        format!("dim {} inside dim {}", cen.dim(), qc.dim()),
    );
    items.push(
        "centroid_inside_quasiderivations",
        qd.contains_space(&cen),
        format!("dim {} inside dim {}", cen.dim(), qd.dim()),
    );
    items.push(
        "quasicentroid_inside_generalized_derivations",
        gd.contains_space(&qc),
        format!("dim {} inside dim {}", qc.dim(), gd.dim()),
    );
    for (name, space) in [
        ("derivations_closed_under_bracket", &der),
        ("quasiderivations_closed_under_bracket", &qd),
        ("generalized_derivations_closed_under_bracket", &gd),
        ("centroid_closed_under_bracket", &cen),
        ("quasicentroid_closed_under_bracket", &qc),
    ] {
        items.push(name, closed_under_bracket(space), format!("dim {}", space.dim()));
    }
    items.push(
        "generalized_is_quasiderivations_plus_quasicentroid",
        qd.sum(&qc) == gd,
        format!("{} + {} spans dim {}", qd.dim(), qc.dim(), gd.dim()),
    );
    items.push(
        "derivations_bracket_centroid_into_centroid",
        bracket_lands_in(&der, &cen),
        format!("[{} dim, {} dim]", der.dim(), cen.dim()),
    );
    items.push(
        "quasiderivations_bracket_quasicentroid_into_quasicentroid",
        bracket_lands_in(&qd, &qc),
        format!("[{} dim, {} dim]", qd.dim(), qc.dim()),
    );
    items.push(
        "generalized_bracket_quasicentroid_into_quasicentroid",
        bracket_lands_in(&gd, &qc),
        format!("[{} dim, {} dim]", gd.dim(), qc.dim()),
    );
    if centerless {
        items.push(
            "quasicentroid_brackets_vanish",
            brackets_vanish(&qc),
            format!("dim {}, zero center", qc.dim()),
        );
    } else {
        items.skip("quasicentroid_brackets_vanish", "the center is nonzero");
    }
    let (split_ok, split_count) = quadruples_split(a, &quadruples, &qc);
    items.push(
        "quadruples_split_into_pair_plus_quasicentroid",
        split_ok,
        format!("{split_count} quadruple basis elements"),
    );
    all_pass &= items.pass;
    sections.insert(
        "operator_spaces".to_string(),
        json!({
            "dims": {
                "gl": n * n,
                "ad": ad.dim(),
                "der": der.dim(),
                "zder": zd.dim(),
                "centroid": cen.dim(),
                "qcentroid": qc.dim(),
                "qder": qd.dim(),
                "gder": gd.dim(),
                "qder_pairs": pairs.dim(),
                "gder_quadruples": quadruples.dim(),
            },
            "pass": items.pass,
            "items": items.items,
        }),
    );

    let (kernel_payload, kernel_ok) = kernel_section(a, samples, seed, budget);
    all_pass &= kernel_ok;
    sections.insert("kernel_membership".to_string(), kernel_payload);

    // Coboundary compositions vanish for every map; matrix units span
    // gl(A), so checking them checks all maps by linearity.
    let mut adjoint = ScanReport::empty();
    let mut trivial = ScanReport::empty();
    for r in 0..n {
        for c in 0..n {
            let mut unit = Matrix::zero(n, n);
            unit.set(r, c, int(1));
            adjoint = adjoint.merge(&delta1_adjoint_vanishes(a, &delta0_adjoint(a, &unit), budget));
            trivial = trivial.merge(&delta1_trivial_vanishes(a, &delta0_trivial(a, &unit), budget));
        }
    }
    let coboundary_ok = adjoint.ok() && trivial.ok();
    all_pass &= coboundary_ok;
    sections.insert(
        "coboundary_compositions".to_string(),
        json!({
            "maps_checked": n * n,
            "bracket_action": scan_value(&adjoint),
            "zero_action": scan_value(&trivial),
            "pass": coboundary_ok,
        }),
    );

    let (ext_payload, ext_ok) = extension_section(a, &pairs);
    all_pass &= ext_ok;
    sections.insert("extension".to_string(), ext_payload);

    if let Some(torus) = &torus {
        let mut items = ItemList::new();
        match weight_decomposition_of(&qd, a, torus) {
            Ok(w) => items.push(
                "quasiderivations_split_into_weight_spaces",
                true,
                format!("{} weights, total dim {}", w.entries().count(), w.total_dim()),
            ),
            Err(e) => items.push("quasiderivations_split_into_weight_spaces", false, e.to_string()),
        }
        match weight_decomposition_of(&qc, a, torus) {
            Ok(w) => items.push(
                "quasicentroid_splits_into_weight_spaces",
                true,
                format!("{} weights, total dim {}", w.entries().count(), w.total_dim()),
            ),
            Err(e) => items.push("quasicentroid_splits_into_weight_spaces", false, e.to_string()),
        }
        let mut roots_value = Value::Null;
        match root_decomposition(a, torus) {
            Ok(roots) => {
                let parts: Vec<Value> = roots
                    .entries()
                    .map(|(w, s)| json!({ "weight": vector_value(w.values()), "dim": s.dim() }))
                    .collect();
                roots_value = json!({
                    "zero_part_dim": roots.zero_part().dim(),
                    "fitting_one_dim": roots.fitting_one_part().dim(),
                    "parts": parts,
                });
            }
            Err(e) => items.push("root_decomposition", false, e.to_string()),
        }
        match structure_checks(a, torus) {
            Ok(checks) => {
                for item in &checks.items {
                    items.push(item.name, item.pass, item.detail.clone());
                }
            }
            Err(e) => items.push("structure_checks", false, e.to_string()),
        }
        all_pass &= items.pass;
        sections.insert(
            "torus_weights".to_string(),
            json!({ "roots": roots_value, "pass": items.pass, "items": items.items }),
        );
    }

    if let Some(blocks) = &input.blocks {
        let mut items = ItemList::new();
        match check_sum_decomposable(a, blocks) {
            Ok(rep) => items.push(
                "quasicentroid_is_block_sum_plus_cross_space",
                rep.equal,
                format!(
                    "blocks {:?}, block dims {:?}, assembled dim {} vs computed dim {}",
                    rep.block_dims, rep.block_qcentroid_dims, rep.rhs_dim, rep.lhs_dim
                ),
            ),
            Err(e) => items.push("quasicentroid_is_block_sum_plus_cross_space", false, e.to_string()),
        }
        all_pass &= items.pass;
        sections.insert(
            "direct_sum".to_string(),
            json!({ "pass": items.pass, "items": items.items }),
        );
    }

    let payload = json!({
        "facts": {
            "dim": n,
            "bracket_entries": a.stored_entries().count(),
            "center_dim": a.center().dim(),
            "derived_dim": a.derived_algebra().dim(),
            "torus_present": torus.is_some(),
        },
        "parameters": {
            "samples": samples,
            "seed": seed,
            "max_exhaustive": max_exhaustive,
        },
        "sections": Value::Object(sections),
        "pass": all_pass,
    });
    emit(&input.id, "verify", payload, started, format, all_pass)
}

// ---------------------------------------------------------------- catalog

fn cmd_catalog(name: Option<&str>, format: Format) -> Result<ExitCode, Failure> {
    match name {
        Some(name) => {
            let entry = catalog::algebra(name).ok_or_else(|| unknown_catalog_entry(name))?;
            println!("{}", io::to_json(&entry.algebra, entry.torus.as_deref()));
            Ok(ExitCode::SUCCESS)
        }
        None => {
            let started = Instant::now();
            let entries: Vec<Value> = catalog::names()
                .iter()
                .map(|n| {
                    let e = catalog::algebra(n).expect("listed entries resolve");
                    json!({
                        "name": e.name,
                        "description": e.description,
                        "dim": e.algebra.dim(),
                        "torus_generators": e.torus.as_ref().map(|t| t.len()),
                        "blocks": e.blocks,
                    })
                })
                .collect();
            let payload = json!({
                "entries": entries,
                "note": "abelianN is also accepted for any N from 1 to 32",
            });
            emit("catalog", "catalog", payload, started, format, true)
        }
    }
}
