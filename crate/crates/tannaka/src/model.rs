//! JSON model documents: loading with shape validation, orchestration of
//! validation → reconstruction → axiom suites, and the deterministic output
//! documents the CLI serializes.
//!
//! A model file is one JSON object:
//!
//! ```json
//! {
//!   "category": {
//!     "objects": ["e", "g"],
//!     "unit": "e",
//!     "tensor": [["e", "g"], ["g", "e"]],
//!     "morphisms": [{"name": "f", "src": "e", "dst": "g"}],
//!     "composition": {"g∘f": "h"},
//!     "tensor_morphisms": {"f⊗g": "h"},
//!     "duals": {"dual": {"e": "e"}, "ev": {"e": "id_e"}, "coev": {"e": "id_e"}}
//!   },
//!   "functor": {
//!     "dim": {"e": 1, "g": 1},
//!     "morphisms": {"f": [["1"]]},
//!     "lax2": {"e,g": [["1"]]},
//!     "lax0": [["1"]],
//!     "oplax2": {"e,g": [["1"]]},
//!     "oplax0": [["1"]]
//!   },
//!   "terms": {"counit-of-unit": "eta ; eps"},
//!   "config": {"mu_order": "left-acts-outer"}
//! }
//! ```
//!
//! Matrices are row-major arrays of exact scalars written as `"p/q"` strings.
//! Identities are synthesized as `id_<object>` and need no matrices; the
//! composition and tensor tables are filled in for them automatically.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::axioms::{
    suite_bialgebra_strong, suite_comonoid, suite_hopf, suite_monoid, suite_weak_bialgebra,
    suite_weak_hopf,
};
use crate::diagterm::TermContext;
use crate::exactlin::{Matrix, Scalar};
use crate::fincat::{validate_category, validate_duals, DualData, FinMonCat, Morphism};
use crate::reconstruct::{
    build_antipode, build_counital_maps, build_delta_eps, build_mu_eta, compute_end, EndObject,
    MuOrder, ReconError, StructureMaps,
};
use crate::repfun::{
    check_comonoidal, check_frobenius, check_monoidal, check_separable, check_strong,
    validate_functor, RepFunctor,
};
use crate::report::{AxiomReport, ValidationReport};

pub type JsonMatrix = Vec<Vec<String>>;

// ---------------------------------------------------------------------------
// Input schema
// ---------------------------------------------------------------------------

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelDocument {
    pub category: CategoryBlock,
    pub functor: FunctorBlock,
    #[serde(default)]
    pub terms: BTreeMap<String, String>,
    #[serde(default)]
    pub config: ConfigBlock,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryBlock {
    pub objects: Vec<String>,
    pub unit: String,
    pub tensor: Vec<Vec<String>>,
    #[serde(default)]
    pub morphisms: Vec<MorphismDecl>,
    #[serde(default)]
    pub composition: BTreeMap<String, String>,
    #[serde(default)]
    pub tensor_morphisms: BTreeMap<String, String>,
    #[serde(default)]
    pub duals: Option<DualsBlock>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDecl {
    pub name: String,
    pub src: String,
    pub dst: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualsBlock {
    pub dual: BTreeMap<String, String>,
    pub ev: BTreeMap<String, String>,
    pub coev: BTreeMap<String, String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorBlock {
    pub dim: BTreeMap<String, usize>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, JsonMatrix>,
    pub lax2: BTreeMap<String, JsonMatrix>,
    pub lax0: JsonMatrix,
    pub oplax2: BTreeMap<String, JsonMatrix>,
    pub oplax0: JsonMatrix,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigBlock {
    #[serde(default)]
    pub mu_order: Option<String>,
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid model at {at}: {message}")]
    Schema { at: String, message: String },
}

fn schema(at: impl Into<String>, message: impl Into<String>) -> LoadError {
    LoadError::Schema {
        at: at.into(),
        message: message.into(),
    }
}

// ---------------------------------------------------------------------------
// Resolved model
// ---------------------------------------------------------------------------

#[derive(Debug)]
pub struct Model {
    pub cat: FinMonCat,
    pub duals: Option<DualData>,
    pub rf: RepFunctor,
    pub terms: BTreeMap<String, String>,
    pub mu_order: MuOrder,
}

fn parse_matrix_shaped(
    raw: &JsonMatrix,
    rows: usize,
    cols: usize,
    at: &str,
) -> Result<Matrix, LoadError> {
    if raw.len() != rows {
        return Err(schema(at, format!("expected {rows} rows, found {}", raw.len())));
    }
    let mut out = Vec::with_capacity(rows);
    for (i, row) in raw.iter().enumerate() {
        if row.len() != cols {
            return Err(schema(
                format!("{at}[{i}]"),
                format!("expected {cols} columns, found {}", row.len()),
            ));
        }
        let mut parsed = Vec::with_capacity(cols);
        for (j, text) in row.iter().enumerate() {
            parsed.push(
                Scalar::from_str(text)
                    .map_err(|e| schema(format!("{at}[{i}][{j}]"), e.to_string()))?,
            );
        }
        out.push(parsed);
    }
    if rows == 0 || cols == 0 {
        return Ok(Matrix::zeros(rows, cols));
    }
    Ok(Matrix::from_rows(out))
}

/// Split a table key on its operator character, e.g. `"g∘f"` or `"f⊗g"`.
fn split_key<'k>(key: &'k str, op: char, at: &str) -> Result<(&'k str, &'k str), LoadError> {
    match key.split_once(op) {
        Some((a, b)) => Ok((a.trim(), b.trim())),
        None => Err(schema(at, format!("key {key:?} does not contain {op:?}"))),
    }
}

pub fn model_from_document(doc: &ModelDocument) -> Result<Model, LoadError> {
    let cb = &doc.category;
    let n = cb.objects.len();
    if n == 0 {
        return Err(schema("category.objects", "at least one object is required"));
    }
    {
        let mut seen = std::collections::HashSet::new();
        for name in &cb.objects {
            if !seen.insert(name) {
                return Err(schema("category.objects", format!("duplicate object {name:?}")));
            }
        }
    }
    let obj = |name: &str, at: &str| -> Result<usize, LoadError> {
        cb.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| schema(at, format!("unknown object {name:?}")))
    };
    let unit = obj(&cb.unit, "category.unit")?;
    if cb.tensor.len() != n {
        return Err(schema("category.tensor", format!("expected {n} rows")));
    }
    let mut tensor_ob = Vec::with_capacity(n);
    for (x, row) in cb.tensor.iter().enumerate() {
        if row.len() != n {
            return Err(schema(format!("category.tensor[{x}]"), format!("expected {n} entries")));
        }
        let mut out = Vec::with_capacity(n);
        for (y, name) in row.iter().enumerate() {
            out.push(obj(name, &format!("category.tensor[{x}][{y}]"))?);
        }
        tensor_ob.push(out);
    }

    let mut declared = Vec::with_capacity(cb.morphisms.len());
    {
        let mut seen = std::collections::HashSet::new();
        for (i, m) in cb.morphisms.iter().enumerate() {
            let at = format!("category.morphisms[{i}]");
            if m.name.starts_with("id_") {
                return Err(schema(at, format!("{:?} collides with synthesized identities", m.name)));
            }
            if !seen.insert(&m.name) {
                return Err(schema(at, format!("duplicate morphism {:?}", m.name)));
            }
            declared.push(Morphism {
                name: m.name.clone(),
                src: obj(&m.src, &format!("{at}.src"))?,
                dst: obj(&m.dst, &format!("{at}.dst"))?,
            });
        }
    }

    // resolve morphism names against declared + synthesized identities
    let all_names: Vec<String> = declared
        .iter()
        .map(|m| m.name.clone())
        .chain(cb.objects.iter().map(|o| format!("id_{o}")))
        .collect();
    let mor = |name: &str, at: &str| -> Result<usize, LoadError> {
        all_names
            .iter()
            .position(|m| m == name)
            .ok_or_else(|| schema(at, format!("unknown morphism {name:?}")))
    };

    let mut comp = HashMap::new();
    for (key, value) in &cb.composition {
        let at = format!("category.composition[{key:?}]");
        let (g, f) = split_key(key, '∘', &at)?;
        comp.insert((mor(g, &at)?, mor(f, &at)?), mor(value, &at)?);
    }
    let mut tensor_mor = HashMap::new();
    for (key, value) in &cb.tensor_morphisms {
        let at = format!("category.tensor_morphisms[{key:?}]");
        let (f, g) = split_key(key, '⊗', &at)?;
        tensor_mor.insert((mor(f, &at)?, mor(g, &at)?), mor(value, &at)?);
    }

    let duals = match &cb.duals {
        None => None,
        Some(db) => {
            let mut left_dual = Vec::with_capacity(n);
            let mut ev = Vec::with_capacity(n);
            let mut coev = Vec::with_capacity(n);
            for name in &cb.objects {
                let get = |table: &BTreeMap<String, String>, what: &str| {
                    table.get(name).cloned().ok_or_else(|| {
                        schema(format!("category.duals.{what}"), format!("missing entry for object {name:?}"))
                    })
                };
                left_dual.push(obj(&get(&db.dual, "dual")?, "category.duals.dual")?);
                ev.push(mor(&get(&db.ev, "ev")?, "category.duals.ev")?);
                coev.push(mor(&get(&db.coev, "coev")?, "category.duals.coev")?);
            }
            Some(DualData { left_dual, ev, coev })
        }
    };

    let cat = FinMonCat::assemble(cb.objects.clone(), unit, tensor_ob, declared, comp, tensor_mor);

    // functor block
    let fb = &doc.functor;
    let mut dim = Vec::with_capacity(n);
    for name in &cat.objects {
        dim.push(*fb.dim.get(name).ok_or_else(|| {
            schema("functor.dim", format!("missing dimension for object {name:?}"))
        })?);
    }
    for name in fb.dim.keys() {
        if cat.object_index(name).is_none() {
            return Err(schema("functor.dim", format!("unknown object {name:?}")));
        }
    }

    let mut mor_mat = Vec::with_capacity(cat.morphisms.len());
    for (i, m) in cat.morphisms.iter().enumerate() {
        let at = format!("functor.morphisms[{:?}]", m.name);
        match fb.morphisms.get(&m.name) {
            Some(raw) => mor_mat.push(parse_matrix_shaped(raw, dim[m.dst], dim[m.src], &at)?),
            None if cat.is_identity(i) => mor_mat.push(Matrix::identity(dim[m.src])),
            None => return Err(schema(at, "missing matrix for declared morphism")),
        }
    }
    for name in fb.morphisms.keys() {
        if cat.morphism_index(name).is_none() {
            return Err(schema("functor.morphisms", format!("unknown morphism {name:?}")));
        }
    }

    let mut lax2 = HashMap::new();
    let mut oplax2 = HashMap::new();
    for x in 0..n {
        for y in 0..n {
            let key = format!("{},{}", cat.objects[x], cat.objects[y]);
            let (dxy, dx_dy) = (dim[cat.tensor(x, y)], dim[x] * dim[y]);
            let at = format!("functor.lax2[{key:?}]");
            let raw = fb
                .lax2
                .get(&key)
                .ok_or_else(|| schema(&at, "missing laxator component"))?;
            lax2.insert((x, y), parse_matrix_shaped(raw, dxy, dx_dy, &at)?);
            let at = format!("functor.oplax2[{key:?}]");
            let raw = fb
                .oplax2
                .get(&key)
                .ok_or_else(|| schema(&at, "missing oplaxator component"))?;
            oplax2.insert((x, y), parse_matrix_shaped(raw, dx_dy, dxy, &at)?);
        }
    }
    let lax0 = parse_matrix_shaped(&fb.lax0, dim[cat.unit], 1, "functor.lax0")?;
    let oplax0 = parse_matrix_shaped(&fb.oplax0, 1, dim[cat.unit], "functor.oplax0")?;

    let rf = RepFunctor { dim, mor_mat, lax2, lax0, oplax2, oplax0 };

    let mu_order = match &doc.config.mu_order {
        None => MuOrder::default(),
        Some(text) => MuOrder::parse(text)
            .ok_or_else(|| schema("config.mu_order", format!("unknown order {text:?}")))?,
    };

    Ok(Model {
        cat,
        duals,
        rf,
        terms: doc.terms.clone(),
        mu_order,
    })
}

pub fn model_from_str(text: &str) -> Result<Model, LoadError> {
    let doc: ModelDocument = serde_json::from_str(text)?;
    model_from_document(&doc)
}

pub fn load_model(path: &Path) -> Result<Model, LoadError> {
    let text = std::fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    model_from_str(&text)
}

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

/// Everything `validate` reports: well-formedness of the tables plus the five
/// informational functor-axiom suites.
pub struct ValidateOutcome {
    pub reports: Vec<ValidationReport>,
    pub axiom_reports: Vec<AxiomReport>,
}

impl ValidateOutcome {
    /// Category, duals, and functor tables are coherent; the functor-axiom
    /// suites are informational (non-strong functors are the interesting case).
    pub fn well_formed(&self) -> bool {
        self.reports.iter().all(ValidationReport::ok)
    }
}

pub fn validate_model(m: &Model) -> ValidateOutcome {
    let mut reports = vec![validate_category(&m.cat)];
    if let Some(d) = &m.duals {
        reports.push(validate_duals(&m.cat, d));
    }
    reports.push(validate_functor(&m.cat, &m.rf));
    let axiom_reports = vec![
        check_monoidal(&m.cat, &m.rf),
        check_comonoidal(&m.cat, &m.rf),
        check_frobenius(&m.cat, &m.rf),
        check_separable(&m.cat, &m.rf),
        check_strong(&m.cat, &m.rf),
    ];
    ValidateOutcome { reports, axiom_reports }
}

pub struct Reconstruction {
    pub end: EndObject,
    pub maps: StructureMaps,
}

/// Run the full construction: end, μ/η, Δ/ε, antipode (when the category has
/// duals), and the counital maps.
pub fn reconstruct_model(m: &Model) -> Result<Reconstruction, ReconError> {
    let end = compute_end(&m.cat, &m.rf);
    let (mu, eta) = build_mu_eta(&end, m.mu_order)?;
    let (delta, eps) = build_delta_eps(&end, &m.cat, &m.rf)?;
    let antipode = match &m.duals {
        Some(d) => Some(build_antipode(&end, &m.cat, &m.rf, d)?),
        None => None,
    };
    let mut maps = StructureMaps {
        mu,
        eta,
        delta,
        eps,
        antipode,
        eps_s: None,
        eps_t: None,
        mu_order: m.mu_order,
    };
    let (eps_s, eps_t) = build_counital_maps(&maps);
    maps.eps_s = Some(eps_s);
    maps.eps_t = Some(eps_t);
    Ok(Reconstruction { end, maps })
}

impl Model {
    pub fn term_context<'a>(&'a self, r: &'a Reconstruction) -> TermContext<'a> {
        TermContext {
            cat: &self.cat,
            rf: &self.rf,
            end: &r.end,
            maps: &r.maps,
            duals: self.duals.as_ref(),
        }
    }
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteName {
    Functor,
    Monoid,
    Comonoid,
    Bialgebra,
    WeakBialgebra,
    Hopf,
    WeakHopf,
    All,
}

impl SuiteName {
    pub fn parse(text: &str) -> Option<SuiteName> {
        Some(match text {
            "functor" => SuiteName::Functor,
            "monoid" => SuiteName::Monoid,
            "comonoid" => SuiteName::Comonoid,
            "bialgebra" => SuiteName::Bialgebra,
            "weak-bialgebra" => SuiteName::WeakBialgebra,
            "hopf" => SuiteName::Hopf,
            "weak-hopf" => SuiteName::WeakHopf,
            "all" => SuiteName::All,
            _ => None?,
        })
    }
}

fn functor_suites(m: &Model) -> Vec<AxiomReport> {
    vec![
        check_monoidal(&m.cat, &m.rf),
        check_comonoidal(&m.cat, &m.rf),
        check_frobenius(&m.cat, &m.rf),
        check_separable(&m.cat, &m.rf),
        check_strong(&m.cat, &m.rf),
    ]
}

/// The sufficiency theorems as meta-checks over already-computed reports:
/// whenever the hypotheses hold on this model, the concluded suite must pass.
fn implication_lattice(m: &Model, reports: &[AxiomReport], maps: &StructureMaps) -> AxiomReport {
    let pass = |suite: &str| {
        reports
            .iter()
            .find(|r| r.suite == suite)
            .is_some_and(AxiomReport::all_pass)
    };
    let duals_ok = m
        .duals
        .as_ref()
        .is_some_and(|d| validate_duals(&m.cat, d).ok())
        && maps.antipode.is_some();
    let weak_hypothesis =
        pass("monoidal") && pass("comonoidal") && pass("frobenius") && pass("separable");
    let strong = weak_hypothesis && pass("strong");

    let mut report = AxiomReport::new("implication-lattice");
    report.record(
        "separable-frobenius-implies-weak-bialgebra",
        !weak_hypothesis || pass("weak-bialgebra"),
    );
    report.record(
        "separable-frobenius-autonomous-implies-weak-hopf",
        !(weak_hypothesis && duals_ok) || pass("weak-hopf"),
    );
    report.record("strong-implies-bialgebra", !strong || pass("bialgebra"));
    report.record(
        "strong-autonomous-implies-hopf",
        !(strong && duals_ok) || pass("hopf"),
    );
    report
}

/// Run the named axiom suite(s) against a finished reconstruction. For
/// [`SuiteName::All`] the implication-lattice meta-checks are appended; their
/// entries count toward the exit decision like any other axiom.
pub fn run_suites(m: &Model, r: &Reconstruction, suite: SuiteName) -> Vec<AxiomReport> {
    let maps = &r.maps;
    let mut reports = match suite {
        SuiteName::Functor => functor_suites(m),
        SuiteName::Monoid => vec![suite_monoid(maps)],
        SuiteName::Comonoid => vec![suite_comonoid(maps)],
        SuiteName::Bialgebra => vec![suite_bialgebra_strong(maps)],
        SuiteName::WeakBialgebra => vec![suite_weak_bialgebra(maps)],
        SuiteName::Hopf => vec![suite_hopf(maps)],
        SuiteName::WeakHopf => vec![suite_weak_hopf(maps)],
        SuiteName::All => {
            let mut all = functor_suites(m);
            all.push(suite_monoid(maps));
            all.push(suite_comonoid(maps));
            all.push(suite_bialgebra_strong(maps));
            all.push(suite_weak_bialgebra(maps));
            all.push(suite_hopf(maps));
            all.push(suite_weak_hopf(maps));
            all
        }
    };
    if suite == SuiteName::All {
        let lattice = implication_lattice(m, &reports, maps);
        reports.push(lattice);
    }
    reports
}

// ---------------------------------------------------------------------------
// Output documents
// ---------------------------------------------------------------------------

fn matrix_to_json(m: &Matrix) -> JsonMatrix {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j).to_string()).collect())
        .collect()
}

/// The `reconstruct` result document. Field order is alphabetical so the
/// serialized form has sorted keys.
#[derive(Debug, Serialize)]
pub struct ReconstructionOutput {
    pub antipode: Option<JsonMatrix>,
    pub basis: Vec<BTreeMap<String, JsonMatrix>>,
    pub delta: JsonMatrix,
    pub dim_end: usize,
    pub eps: JsonMatrix,
    pub eps_s: JsonMatrix,
    pub eps_t: JsonMatrix,
    pub eta: JsonMatrix,
    pub mu: JsonMatrix,
    /// `mu_constants[i][j][k]` is the coefficient of basis element k in the
    /// product of basis elements i and j.
    pub mu_constants: Vec<Vec<Vec<String>>>,
    pub mu_order: String,
}

pub fn reconstruction_output(m: &Model, r: &Reconstruction) -> ReconstructionOutput {
    let dim = r.end.dim();
    let maps = &r.maps;
    let basis = r
        .end
        .basis
        .iter()
        .map(|family| {
            m.cat
                .objects
                .iter()
                .enumerate()
                .map(|(a, name)| (name.clone(), matrix_to_json(&family[a])))
                .collect()
        })
        .collect();
    let mu_constants = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    (0..dim)
                        .map(|k| maps.mu.get(k, i * dim + j).to_string())
                        .collect()
                })
                .collect()
        })
        .collect();
    ReconstructionOutput {
        antipode: maps.antipode.as_ref().map(matrix_to_json),
        basis,
        delta: matrix_to_json(&maps.delta),
        dim_end: dim,
        eps: matrix_to_json(&maps.eps),
        eps_s: maps.eps_s.as_ref().map(matrix_to_json).unwrap_or_default(),
        eps_t: maps.eps_t.as_ref().map(matrix_to_json).unwrap_or_default(),
        eta: matrix_to_json(&maps.eta),
        mu: matrix_to_json(&maps.mu),
        mu_constants,
        mu_order: maps.mu_order.as_str().to_string(),
    }
}
