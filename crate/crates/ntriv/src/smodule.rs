//! S-modules in three interchangeable forms: the `(X, f)` right-extension
//! form, the `(X, g)` left-extension form, and the raw S-action form.
//!
//! Conversions between the three are exact matrix round-trips; morphism
//! spaces and isomorphism testing live here as well.

use crate::algebra::{IsoVerdict, RModule};
use crate::bimodule::{hom_r, HomSpace};
use crate::extension::ExtensionRing;
use crate::linalg::Mat;
use crate::{Error, Result};
use std::sync::Arc;

/// An S-module presented as an R-module `X` plus structure maps
/// `f_i: M_i ⊗ X → X` on the full tensor ambient (`f[i-1]` has shape
/// `dim X × dim M_i · dim X`).
#[derive(Debug, Clone)]
pub struct FModule {
    pub ext: Arc<ExtensionRing>,
    pub x: RModule,
    pub f: Vec<Mat>,
}

/// The dual presentation: maps `g_i: X → Hom_R(M_i, X)` written in the
/// deterministic echelon basis of [`hom_r`] (`g[i-1]` has shape
/// `dim Hom_R(M_i, X) × dim X`).
#[derive(Debug, Clone)]
pub struct GModule {
    pub ext: Arc<ExtensionRing>,
    pub x: RModule,
    pub g: Vec<Mat>,
}

/// A raw S-module: a plain module over the assembled total algebra.
pub type SAction = RModule;

/// One violated `(X, f)` axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FViolation {
    Shape { i: usize },
    RModule(String),
    Balancing { i: usize, ring_basis: usize },
    Linearity { i: usize, ring_basis: usize },
    /// `f_i ∘ (M_i ⊗ f_j) != 0` although `i + j > n`.
    Truncation { i: usize, j: usize },
    /// `f_{i+j} ∘ (Φ_{i,j} ⊗ id) != f_i ∘ (M_i ⊗ f_j)` with `i + j <= n`.
    Compatibility { i: usize, j: usize },
}

impl std::fmt::Display for FViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FViolation::Shape { i } => write!(f, "f_{i} has the wrong shape"),
            FViolation::RModule(s) => write!(f, "underlying R-module invalid: {s}"),
            FViolation::Balancing { i, ring_basis } => {
                write!(f, "f_{i} does not kill balancing relations at ring basis {ring_basis}")
            }
            FViolation::Linearity { i, ring_basis } => {
                write!(f, "f_{i} not left R-linear at ring basis {ring_basis}")
            }
            FViolation::Truncation { i, j } => {
                write!(f, "condition (i) fails: f_{i} ∘ (M_{i} ⊗ f_{j}) != 0 with {i}+{j} > n")
            }
            FViolation::Compatibility { i, j } => {
                write!(f, "condition (ii) fails on the pair ({i}, {j})")
            }
        }
    }
}

impl FModule {
    pub fn n(&self) -> usize {
        self.ext.n()
    }

    pub fn dim_x(&self) -> usize {
        self.x.dim
    }

    /// The `(X, 0)` module on a given R-module (the functor `Z`).
    pub fn zero_maps(ext: Arc<ExtensionRing>, x: RModule) -> FModule {
        let field = ext.base().field();
        let f = (1..=ext.n())
            .map(|i| Mat::zero(field, x.dim, ext.phi_system().module(i).dim() * x.dim))
            .collect();
        FModule { ext, x, f }
    }

    /// Checks shapes, the R-module axioms on `X`, balancing and R-linearity
    /// of each `f_i`, and conditions (i)/(ii).
    pub fn validate(&self) -> Vec<FViolation> {
        let mut report = Vec::new();
        let ext = &self.ext;
        let r = ext.base();
        let field = r.field();
        let n = ext.n();
        let dx = self.x.dim;
        for issue in self.x.validate(r) {
            report.push(FViolation::RModule(issue));
        }
        if self.f.len() != n {
            report.push(FViolation::Shape { i: 0 });
            return report;
        }
        for i in 1..=n {
            let di = ext.phi_system().module(i).dim();
            if self.f[i - 1].rows() != dx || self.f[i - 1].cols() != di * dx {
                report.push(FViolation::Shape { i });
            }
        }
        if report.iter().any(|v| matches!(v, FViolation::Shape { .. })) {
            return report;
        }
        let id_x = Mat::identity(field, dx);
        for i in 1..=n {
            let mi = ext.phi_system().module(i);
            let id_i = Mat::identity(field, mi.dim());
            let fi = &self.f[i - 1];
            for rb in 0..r.dim() {
                let bal = mi.right_act(rb).kron(&id_x).sub(&id_i.kron(&self.x.act[rb]));
                if !fi.mul(&bal).is_zero() {
                    report.push(FViolation::Balancing { i, ring_basis: rb });
                }
                if fi.mul(&mi.left_act(rb).kron(&id_x)) != self.x.act[rb].mul(fi) {
                    report.push(FViolation::Linearity { i, ring_basis: rb });
                }
            }
            for j in 1..=n {
                let fj = &self.f[j - 1];
                // M_i ⊗ f_j on the triple ambient
                let inner = id_i.kron(fj);
                let lhs = fi.mul(&inner);
                if i + j > n {
                    if !lhs.is_zero() {
                        report.push(FViolation::Truncation { i, j });
                    }
                } else {
                    let rhs = self.f[i + j - 1].mul(&ext.phi_system().phi(i, j).kron(&id_x));
                    if lhs != rhs {
                        report.push(FViolation::Compatibility { i, j });
                    }
                }
            }
        }
        report
    }

    /// Assembles the S-action `(a, m_1, …, m_n)·x = a·x + Σ f_i(m_i ⊗ x)`.
    pub fn to_saction(&self) -> Result<SAction> {
        let report = self.validate();
        if !report.is_empty() {
            return Err(Error::Invalid(format!(
                "invalid (X, f) module: {}",
                report.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
            )));
        }
        Ok(self.to_saction_unchecked())
    }

    pub(crate) fn to_saction_unchecked(&self) -> SAction {
        let ext = &self.ext;
        let dx = self.x.dim;
        let mut act = Vec::with_capacity(ext.dim());
        for a in 0..ext.base().dim() {
            act.push(self.x.act[a].clone());
        }
        for i in 1..=ext.n() {
            let di = ext.phi_system().module(i).dim();
            let _ = di;
            for a in 0..ext.component_dim(i) {
                act.push(self.f[i - 1].col_block(a * dx, dx));
            }
        }
        RModule {
            field: self.ext.base().field(),
            ring_dim: ext.dim(),
            dim: dx,
            act,
        }
    }
}

/// Reads the `(X, f)` form off a valid S-action: the R-action is the
/// restriction along `i: R → S`, and `f_i` collects the degree-i actions.
pub fn saction_to_fmodule(s: &SAction, ext: &Arc<ExtensionRing>) -> Result<FModule> {
    let report = s.validate(ext.total());
    if !report.is_empty() {
        return Err(Error::Invalid(format!(
            "not a unital S-action: {}",
            report.join("; ")
        )));
    }
    let dx = s.dim;
    let field = ext.base().field();
    let x = RModule {
        field,
        ring_dim: ext.base().dim(),
        dim: dx,
        act: (0..ext.base().dim()).map(|a| s.act[a].clone()).collect(),
    };
    let mut f = Vec::with_capacity(ext.n());
    for i in 1..=ext.n() {
        let di = ext.phi_system().module(i).dim();
        let mut fi = Mat::zero(field, dx, di * dx);
        for a in 0..di {
            fi.paste(0, a * dx, &s.act[ext.basis_index(i, a)]);
        }
        f.push(fi);
    }
    let m = FModule {
        ext: Arc::clone(ext),
        x,
        f,
    };
    let report = m.validate();
    if !report.is_empty() {
        // cannot happen for a valid S-action; keep the honest error path
        return Err(Error::Invalid(format!(
            "S-action does not induce a valid (X, f) module: {}",
            report.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
        )));
    }
    Ok(m)
}

/// Basis of the space of `(X, f)`-morphisms `a → b`: R-linear maps
/// intertwining the structure maps.
pub fn morphism_space(a: &FModule, b: &FModule) -> Vec<Mat> {
    let field = a.ext.base().field();
    let (da, db) = (a.dim_x(), b.dim_x());
    if da == 0 || db == 0 {
        return vec![];
    }
    // Unknown h (db x da), vectorized row-major.
    let mut constraints = Mat::zero(field, 0, db * da);
    let id_da = Mat::identity(field, da);
    let id_db = Mat::identity(field, db);
    for r in 0..a.ext.base().dim() {
        let lhs = id_db.kron(&a.x.act[r].transpose());
        let rhs = b.x.act[r].kron(&id_da);
        constraints = constraints.vstack(&lhs.sub(&rhs));
    }
    for i in 1..=a.n() {
        let di = a.ext.phi_system().module(i).dim();
        let fa = &a.f[i - 1];
        let fb = &b.f[i - 1];
        // h ∘ f_i^a  =  f_i^b ∘ (id_{M_i} ⊗ h), rows indexed by
        // (u, m-basis ai, column v of X_a)
        let mut block = Mat::zero(field, db * di * da, db * da);
        for u in 0..db {
            for ai in 0..di {
                for v in 0..da {
                    let row = u * (di * da) + ai * da + v;
                    // lhs: Σ_w h[u][w] fa[w][ai*da + v]
                    for w in 0..da {
                        let cur = block.get(row, u * da + w);
                        block.set(row, u * da + w, field.add(cur, fa.get(w, ai * da + v)));
                    }
                    // rhs: Σ_w fb[u][ai*db + w] h[w][v]
                    for w in 0..db {
                        let cur = block.get(row, w * da + v);
                        block.set(row, w * da + v, field.sub(cur, fb.get(u, ai * db + w)));
                    }
                }
            }
        }
        constraints = constraints.vstack(&block);
    }
    let kernel = constraints.kernel();
    (0..kernel.dim())
        .map(|k| Mat::from_entries(field, db, da, kernel.basis().row(k).to_vec()).unwrap())
        .collect()
}

/// Isomorphism search between `(X, f)` modules. `No` needs a proof
/// (dimension obstruction, empty morphism space, or exhausted complete
/// enumeration of the morphism space).
pub fn isomorphic(a: &FModule, b: &FModule, budget: u64, seed: u64) -> IsoVerdict {
    if a.dim_x() != b.dim_x() {
        return IsoVerdict::No;
    }
    if a.dim_x() == 0 {
        return IsoVerdict::Yes(Mat::zero(a.ext.base().field(), 0, 0));
    }
    let basis = morphism_space(a, b);
    crate::algebra::search_invertible_combination(a.ext.base().field(), &basis, a.dim_x(), budget, seed)
}

/// Hom spaces of the `(X, f)` conversion target: one per degree, cached so
/// the curry/uncurry pair and the `Ψ` assembly all use the same bases.
pub(crate) fn hom_spaces_for(ext: &ExtensionRing, x: &RModule) -> Vec<HomSpace> {
    (1..=ext.n())
        .map(|i| hom_r(ext.phi_system().module(i), x))
        .collect()
}

/// Curries `f_i: M_i ⊗ X → X` into `g_i: X → Hom_R(M_i, X)` in the
/// deterministic hom basis. Inverse of [`from_left_form`] on valid modules.
pub fn to_left_form(m: &FModule) -> Result<GModule> {
    let report = m.validate();
    if !report.is_empty() {
        return Err(Error::Invalid(format!(
            "invalid (X, f) module: {}",
            report.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
        )));
    }
    let field = m.ext.base().field();
    let dx = m.dim_x();
    let homs = hom_spaces_for(&m.ext, &m.x);
    let mut g = Vec::with_capacity(m.n());
    for i in 1..=m.n() {
        let di = m.ext.phi_system().module(i).dim();
        let hom = &homs[i - 1];
        let mut gi = Mat::zero(field, hom.dim, dx);
        for b in 0..dx {
            // h_b: m ↦ f_i(m ⊗ e_b)
            let mut hb = Mat::zero(field, dx, di);
            for a in 0..di {
                for u in 0..dx {
                    hb.set(u, a, m.f[i - 1].get(u, a * dx + b));
                }
            }
            let coords = hom.coords_of(&hb).ok_or_else(|| {
                Error::Invalid(format!("f_{i} column {b} is not R-linear"))
            })?;
            for (t, &v) in coords.iter().enumerate() {
                gi.set(t, b, v);
            }
        }
        g.push(gi);
    }
    Ok(GModule {
        ext: Arc::clone(&m.ext),
        x: m.x.clone(),
        g,
    })
}

/// Uncurries a left-form module back to `(X, f)`; exact inverse of
/// [`to_left_form`].
pub fn from_left_form(gm: &GModule) -> Result<FModule> {
    let report = gm.validate();
    if !report.is_empty() {
        return Err(Error::Invalid(format!(
            "invalid (X, g) module: {}",
            report.join("; ")
        )));
    }
    Ok(from_left_form_unchecked(gm))
}

pub(crate) fn from_left_form_unchecked(gm: &GModule) -> FModule {
    let field = gm.ext.base().field();
    let dx = gm.x.dim;
    let homs = hom_spaces_for(&gm.ext, &gm.x);
    let mut f = Vec::with_capacity(gm.ext.n());
    for i in 1..=gm.ext.n() {
        let di = gm.ext.phi_system().module(i).dim();
        let hom = &homs[i - 1];
        let mut fi = Mat::zero(field, dx, di * dx);
        for b in 0..dx {
            let hb = hom.from_coords(&gm.g[i - 1].col(b));
            for a in 0..di {
                for u in 0..dx {
                    fi.set(u, a * dx + b, hb.get(u, a));
                }
            }
        }
        f.push(fi);
    }
    FModule {
        ext: Arc::clone(&gm.ext),
        x: gm.x.clone(),
        f,
    }
}

impl GModule {
    pub fn n(&self) -> usize {
        self.ext.n()
    }

    pub fn dim_x(&self) -> usize {
        self.x.dim
    }

    /// The stacked map `g: X → ⊕_i G_i X` whose kernel is the functor `K`.
    pub fn stacked_g(&self) -> Mat {
        Mat::vstack_all(&self.g)
    }

    /// Checks R-linearity of each `g_i` and the left-extension compatibility
    /// squares against the concrete `Ψ` induced by `Φ`.
    pub fn validate(&self) -> Vec<String> {
        let mut report = Vec::new();
        let ext = &self.ext;
        let r = ext.base();
        let n = ext.n();
        let dx = self.x.dim;
        for issue in self.x.validate(r) {
            report.push(format!("underlying R-module invalid: {issue}"));
        }
        let homs = hom_spaces_for(ext, &self.x);
        if self.g.len() != n {
            report.push("wrong number of g maps".into());
            return report;
        }
        for i in 1..=n {
            let gi = &self.g[i - 1];
            if gi.rows() != homs[i - 1].dim || gi.cols() != dx {
                report.push(format!("g_{i} has the wrong shape"));
                return report;
            }
            for rb in 0..r.dim() {
                if gi.mul(&self.x.act[rb]) != homs[i - 1].action[rb].mul(gi) {
                    report.push(format!("g_{i} not R-linear at ring basis {rb}"));
                }
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                // (G_i g_j) ∘ g_i, one X-basis column at a time
                let gj_of_gi: Vec<Mat> = (0..dx)
                    .map(|b| {
                        let h = homs[i - 1].from_coords(&self.g[i - 1].col(b));
                        self.g[j - 1].mul(&h) // map M_i → G_j X in hom_j coords
                    })
                    .collect();
                if i + j > n {
                    if gj_of_gi.iter().any(|m| !m.is_zero()) {
                        report.push(format!(
                            "left condition (i) fails: (G_{i} g_{j}) ∘ g_{i} != 0 with {i}+{j} > n"
                        ));
                    }
                    continue;
                }
                // Ψ_{i,j} ∘ g_{i+j}
                for b in 0..dx {
                    let h = homs[i + j - 1].from_coords(&self.g[i + j - 1].col(b));
                    let psi_h = psi_apply(ext, &homs[j - 1], i, j, &h);
                    if psi_h != gj_of_gi[b] {
                        report.push(format!(
                            "left condition (ii) fails on the pair ({i}, {j}) at X basis {b}"
                        ));
                        break;
                    }
                }
            }
        }
        report
    }
}

/// Evaluates the concrete `Ψ_{i,j}: G_{i+j}X → G_i G_j X` on one hom
/// element `h: M_{i+j} → X`, returning the result as a matrix
/// `dim G_j X × dim M_i` (columns are `hom_j` coordinates):
/// `(Ψ h)(m_i)(m_j) = h(Φ_{j,i}(m_j ⊗ m_i))`.
pub(crate) fn psi_apply(
    ext: &ExtensionRing,
    hom_j: &HomSpace,
    i: usize,
    j: usize,
    h: &Mat,
) -> Mat {
    let field = ext.base().field();
    let di = ext.phi_system().module(i).dim();
    let dj = ext.phi_system().module(j).dim();
    let phi_ji = ext.phi_system().phi(j, i);
    let mut out = Mat::zero(field, hom_j.dim, di);
    for a in 0..di {
        // inner map M_j → X: e_c ↦ h(Φ_{j,i}(e_c ⊗ e_a))
        let mut inner = Mat::zero(field, h.rows(), dj);
        for c in 0..dj {
            let v = h.apply(&phi_ji.col(c * di + a));
            for (u, &val) in v.iter().enumerate() {
                inner.set(u, c, val);
            }
        }
        let coords = hom_j
            .coords_of(&inner)
            .expect("Φ bilinearity keeps Ψ values R-linear");
        for (t, &v) in coords.iter().enumerate() {
            out.set(t, a, v);
        }
    }
    out
}

/// Checks that `mat` is a morphism of left-form modules `a → b`.
pub fn is_gmorphism(a: &GModule, b: &GModule, mat: &Mat) -> bool {
    let r = a.ext.base();
    if mat.rows() != b.dim_x() || mat.cols() != a.dim_x() {
        return false;
    }
    for rb in 0..r.dim() {
        if mat.mul(&a.x.act[rb]) != b.x.act[rb].mul(mat) {
            return false;
        }
    }
    let homs_a = hom_spaces_for(&a.ext, &a.x);
    let homs_b = hom_spaces_for(&b.ext, &b.x);
    for i in 1..=a.n() {
        for c in 0..a.dim_x() {
            // (G_i mat)(g_i^a(e_c)) = mat ∘ h, compared against g_i^b(mat e_c)
            let h = homs_a[i - 1].from_coords(&a.g[i - 1].col(c));
            let lhs = mat.mul(&h);
            let rhs_coords = b.g[i - 1].apply(&mat.col(c));
            let rhs = homs_b[i - 1].from_coords(&rhs_coords);
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Checks that `mat` is a morphism of `(X, f)` modules `a → b`.
pub fn is_fmorphism(a: &FModule, b: &FModule, mat: &Mat) -> bool {
    let field = a.ext.base().field();
    if mat.rows() != b.dim_x() || mat.cols() != a.dim_x() {
        return false;
    }
    for rb in 0..a.ext.base().dim() {
        if mat.mul(&a.x.act[rb]) != b.x.act[rb].mul(mat) {
            return false;
        }
    }
    for i in 1..=a.n() {
        let di = a.ext.phi_system().module(i).dim();
        let id_i = Mat::identity(field, di);
        if mat.mul(&a.f[i - 1]) != b.f[i - 1].mul(&id_i.kron(mat)) {
            return false;
        }
    }
    true
}

/// A seeded random valid S-module: the quotient of the free module
/// `S^free_rank` by the S-submodule generated by `num_generators` random
/// vectors. Deterministic for a fixed seed.
pub fn random_quotient_saction(
    ext: &ExtensionRing,
    free_rank: usize,
    num_generators: usize,
    seed: u64,
) -> SAction {
    RModule::random_quotient(ext.total(), free_rank, num_generators, seed)
}
