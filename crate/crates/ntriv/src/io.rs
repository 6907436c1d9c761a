//! JSON interchange: input files describing a base ring, its bimodules and
//! pre-products, and optional modules, plus deterministic report assembly
//! for the command-line front end.
//!
//! Matrices are arrays of row arrays of residues. Every file carries a
//! mandatory "layout" field naming the index conventions; it is checked on
//! load so a file written under a different convention is rejected instead
//! of silently misread.

use crate::algebra::{RModule, StructureAlgebra};
use crate::bimodule::{Bimodule, PhiSystem};
use crate::extension::{build_extension, ExtensionRing};
use crate::linalg::{Mat, PrimeField};
use crate::smodule::FModule;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use std::sync::Arc;

/// Index conventions of all serialized matrices: matrices are row-major;
/// tensor coordinates put the left factor on the slow index, so
/// `vec(x ⊗ y)[i·dim_y + j] = x_i·y_j`, and maps out of `M_i ⊗ X` are given
/// on the full tensor ambient in that ordering.
pub const LAYOUT: &str = "row-major; tensor left-factor-slow";

pub type Matrix = Vec<Vec<u32>>;

/// A ring as structure constants: `table[i][j]` is the coordinate vector of
/// `e_i · e_j`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RingSpec {
    pub dim: usize,
    pub table: Vec<Vec<Vec<u32>>>,
    pub unit: Vec<u32>,
}

/// One degree component: action matrices per ring basis element. A missing
/// right action is mirrored from the left one when the ring is commutative.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BimoduleSpec {
    pub dim: usize,
    pub left_act: Vec<Matrix>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_act: Option<Vec<Matrix>>,
}

/// One pre-product `Φ_{i,j}: M_i ⊗ M_j -> M_{i+j}` (1-based degrees); pairs
/// with `i + j <= n` that are absent default to the zero pairing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PhiSpec {
    pub i: usize,
    pub j: usize,
    pub matrix: Matrix,
}

/// A module in `(X, f)` form: an action of the base ring on `X` and one
/// structure map per degree.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub name: String,
    pub dim: usize,
    pub action: Vec<Matrix>,
    pub f: Vec<Matrix>,
}

/// The on-disk description of one extension-ring instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InputSpec {
    pub layout: String,
    pub p: u64,
    pub ring: RingSpec,
    pub n: usize,
    #[serde(default)]
    pub bimodules: Vec<BimoduleSpec>,
    #[serde(default)]
    pub phi: Vec<PhiSpec>,
    #[serde(default)]
    pub modules: Vec<ModuleSpec>,
}

pub fn parse_input(text: &str) -> Result<InputSpec> {
    let spec: InputSpec =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("JSON parse: {e}")))?;
    if spec.layout != LAYOUT {
        return Err(Error::Invalid(format!(
            "layout mismatch: file declares {:?}, this tool reads {:?}",
            spec.layout, LAYOUT
        )));
    }
    Ok(spec)
}

pub fn load_input(path: &std::path::Path) -> Result<InputSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    parse_input(&text)
}

fn to_mat(field: PrimeField, rows: usize, cols: usize, data: &Matrix, what: &str) -> Result<Mat> {
    if data.len() != rows || data.iter().any(|r| r.len() != cols) {
        return Err(Error::Shape(format!("{what}: expected {rows}x{cols} matrix")));
    }
    Mat::from_entries(field, rows, cols, data.iter().flatten().copied().collect())
}

pub fn mat_to_json(m: &Mat) -> Matrix {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Everything an input file describes, realized as in-memory objects. The
/// modules are built but not yet validated; `validate` reports per-object.
#[derive(Debug)]
pub struct Realized {
    pub ring: StructureAlgebra,
    pub ext: Arc<ExtensionRing>,
    pub modules: Vec<(String, FModule)>,
}

/// Builds the ring, pre-product system, extension and declared modules from
/// a parsed input. Shape errors abort; mathematical violations inside a
/// shape-valid input surface through `build_extension` or the validators.
pub fn realize(spec: &InputSpec) -> Result<Realized> {
    let field = PrimeField::new(spec.p)?;
    let ring = ring_from_spec(field, &spec.ring)?;
    let ps = phi_system_from_spec(&ring, spec)?;
    let ext = Arc::new(build_extension(&ring, ps)?);
    let modules = modules_from_spec(&ext, &spec.modules)?;
    Ok(Realized { ring, ext, modules })
}

pub fn ring_from_spec(field: PrimeField, rs: &RingSpec) -> Result<StructureAlgebra> {
    StructureAlgebra::new(field, rs.dim, rs.table.clone(), rs.unit.clone())
}

/// Builds the pre-product system without assembling the extension, so a
/// validator can collect all violations instead of stopping at the first.
pub fn phi_system_from_spec(ring: &StructureAlgebra, spec: &InputSpec) -> Result<PhiSystem> {
    let field = ring.field();
    if spec.bimodules.len() != spec.n {
        return Err(Error::Shape(format!(
            "expected {} bimodule entries, found {}",
            spec.n,
            spec.bimodules.len()
        )));
    }
    let mut modules = Vec::with_capacity(spec.n);
    for (idx, bs) in spec.bimodules.iter().enumerate() {
        let acts = |mats: &Vec<Matrix>, side: &str| -> Result<Vec<Mat>> {
            if mats.len() != ring.dim() {
                return Err(Error::Shape(format!(
                    "bimodule {}: one {side} action matrix per ring basis element",
                    idx + 1
                )));
            }
            mats.iter()
                .map(|m| to_mat(field, bs.dim, bs.dim, m, &format!("bimodule {} {side} action", idx + 1)))
                .collect()
        };
        let left = acts(&bs.left_act, "left")?;
        let right = match &bs.right_act {
            Some(r) => acts(r, "right")?,
            None if ring.is_commutative() => left.clone(),
            None => {
                return Err(Error::Invalid(format!(
                    "bimodule {}: right action required over a non-commutative ring",
                    idx + 1
                )))
            }
        };
        modules.push(Bimodule::new(ring, bs.dim, left, right)?);
    }
    let mut phi = Vec::new();
    for ps in &spec.phi {
        let (i, j) = (ps.i, ps.j);
        if i == 0 || j == 0 || i + j > spec.n {
            return Err(Error::Shape(format!("phi ({i},{j}): degrees out of range for n = {}", spec.n)));
        }
        let (di, dj, dt) = (modules[i - 1].dim(), modules[j - 1].dim(), modules[i + j - 1].dim());
        phi.push(((i, j), to_mat(field, dt, di * dj, &ps.matrix, &format!("phi ({i},{j})"))?));
    }
    // absent pairs default to the zero pairing
    for i in 1..spec.n {
        for j in 1..=(spec.n - i) {
            if !phi.iter().any(|((a, b), _)| (*a, *b) == (i, j)) {
                let (di, dj, dt) = (modules[i - 1].dim(), modules[j - 1].dim(), modules[i + j - 1].dim());
                phi.push(((i, j), Mat::zero(field, dt, di * dj)));
            }
        }
    }
    PhiSystem::new(spec.n, modules, phi)
}

pub fn modules_from_spec(
    ext: &Arc<ExtensionRing>,
    specs: &[ModuleSpec],
) -> Result<Vec<(String, FModule)>> {
    let field = ext.base().field();
    let mut out = Vec::with_capacity(specs.len());
    for ms in specs {
        if ms.action.len() != ext.base().dim() {
            return Err(Error::Shape(format!(
                "module {}: one action matrix per ring basis element",
                ms.name
            )));
        }
        if ms.f.len() != ext.n() {
            return Err(Error::Shape(format!(
                "module {}: one structure map per degree 1..{}",
                ms.name,
                ext.n()
            )));
        }
        let act = ms
            .action
            .iter()
            .map(|m| to_mat(field, ms.dim, ms.dim, m, &format!("module {} action", ms.name)))
            .collect::<Result<Vec<_>>>()?;
        let f = ms
            .f
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let di = ext.phi_system().module(k + 1).dim();
                to_mat(field, ms.dim, di * ms.dim, m, &format!("module {} f_{}", ms.name, k + 1))
            })
            .collect::<Result<Vec<_>>>()?;
        let x = RModule {
            field,
            ring_dim: ext.base().dim(),
            dim: ms.dim,
            act,
        };
        out.push((ms.name.clone(), FModule { ext: Arc::clone(ext), x, f }));
    }
    Ok(out)
}

/// Serializes an algebra back into an ingestible input file (n = 0, no
/// graded part), as produced by the build command.
pub fn algebra_to_input(a: &StructureAlgebra) -> InputSpec {
    let d = a.dim();
    InputSpec {
        layout: LAYOUT.to_string(),
        p: a.field().p() as u64,
        ring: RingSpec {
            dim: d,
            table: (0..d)
                .map(|i| (0..d).map(|j| a.basis_product(i, j).to_vec()).collect())
                .collect(),
            unit: a.unit().to_vec(),
        },
        n: 0,
        bimodules: Vec::new(),
        phi: Vec::new(),
        modules: Vec::new(),
    }
}

/// Serializes one module of an extension back into a `ModuleSpec`.
pub fn module_to_spec(name: &str, m: &FModule) -> ModuleSpec {
    ModuleSpec {
        name: name.to_string(),
        dim: m.dim_x(),
        action: m.x.act.iter().map(mat_to_json).collect(),
        f: m.f.iter().map(mat_to_json).collect(),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(bytes);
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Status of one named check inside a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Inconclusive => "inconclusive",
        }
    }
}

/// A deterministic report: tool identity, input digest, named checks with
/// optional witness data, and optional timing (suppressed for byte-stable
/// output).
pub struct Report {
    pub command: String,
    pub input_digest: String,
    pub seed: Option<u64>,
    pub checks: Vec<Check>,
    pub extra: Vec<(String, serde_json::Value)>,
    pub timing_ms: Option<u128>,
}

pub struct Check {
    pub name: String,
    pub status: Status,
    pub witness: Option<serde_json::Value>,
}

impl Report {
    pub fn new(command: &str, input_digest: String) -> Self {
        Report {
            command: command.to_string(),
            input_digest,
            seed: None,
            checks: Vec::new(),
            extra: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn check(&mut self, name: &str, status: Status, witness: Option<serde_json::Value>) {
        self.checks.push(Check {
            name: name.to_string(),
            status,
            witness,
        });
    }

    pub fn extra(&mut self, key: &str, value: serde_json::Value) {
        self.extra.push((key.to_string(), value));
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        obj.insert("tool".into(), "ntriv".into());
        obj.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        obj.insert("layout".into(), LAYOUT.into());
        obj.insert("command".into(), self.command.clone().into());
        obj.insert("input_digest".into(), self.input_digest.clone().into());
        if let Some(s) = self.seed {
            obj.insert("seed".into(), s.into());
        }
        let checks: Vec<serde_json::Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut e = serde_json::Map::new();
                e.insert("name".into(), c.name.clone().into());
                e.insert("status".into(), c.status.as_str().into());
                if let Some(w) = &c.witness {
                    e.insert("witness".into(), w.clone());
                }
                serde_json::Value::Object(e)
            })
            .collect();
        obj.insert("checks".into(), checks.into());
        for (k, v) in &self.extra {
            obj.insert(k.clone(), v.clone());
        }
        if let Some(t) = self.timing_ms {
            obj.insert("timing_ms".into(), serde_json::Value::from(t as u64));
        }
        serde_json::Value::Object(obj)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("ntriv {} :: {}\n", env!("CARGO_PKG_VERSION"), self.command));
        out.push_str(&format!("input sha256 {}\n", self.input_digest));
        if let Some(s) = self.seed {
            out.push_str(&format!("seed {s}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!("{:<50} {}\n", c.name, c.status.as_str()));
            if let Some(w) = &c.witness {
                out.push_str(&format!("  witness: {w}\n"));
            }
        }
        for (k, v) in &self.extra {
            out.push_str(&format!("{k}: {v}\n"));
        }
        if let Some(t) = self.timing_ms {
            out.push_str(&format!("timing_ms {t}\n"));
        }
        out
    }

    pub fn render(&self, format: &str) -> String {
        if format == "text" {
            self.to_text()
        } else {
            format!("{:#}\n", self.to_json())
        }
    }
}
