//! R-bimodules, balanced tensor products `M ⊗_R X`, hom spaces
//! `Hom_R(M, X)`, and the pre-product system `Φ` with its associativity law.
//!
//! Maps out of tensor products are stored on the full `F_p`-tensor ambient
//! (left factor slow) and are required to kill the balancing relations, so
//! serialized matrices never depend on an echelon basis choice.

use crate::algebra::{RModule, StructureAlgebra};
use crate::linalg::{quotient_map, unit_vec, Mat, PrimeField, Subspace};
use crate::{Error, Result};

/// An R-R bimodule: a carrier with commuting left and right actions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bimodule {
    field: PrimeField,
    ring_dim: usize,
    dim: usize,
    /// `left_act[i]`: matrix of `e_i · (−)`.
    left_act: Vec<Mat>,
    /// `right_act[i]`: matrix of `(−) · e_i`.
    right_act: Vec<Mat>,
}

impl Bimodule {
    pub fn new(
        ring: &StructureAlgebra,
        dim: usize,
        left_act: Vec<Mat>,
        right_act: Vec<Mat>,
    ) -> Result<Self> {
        if left_act.len() != ring.dim() || right_act.len() != ring.dim() {
            return Err(Error::Shape("one action matrix per ring basis element".into()));
        }
        for m in left_act.iter().chain(right_act.iter()) {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::Shape(format!(
                    "bimodule action matrix must be {dim}x{dim}"
                )));
            }
        }
        Ok(Bimodule {
            field: ring.field(),
            ring_dim: ring.dim(),
            dim,
            left_act,
            right_act,
        })
    }

    /// The zero bimodule.
    pub fn zero(ring: &StructureAlgebra) -> Self {
        Bimodule {
            field: ring.field(),
            ring_dim: ring.dim(),
            dim: 0,
            left_act: (0..ring.dim()).map(|_| Mat::zero(ring.field(), 0, 0)).collect(),
            right_act: (0..ring.dim()).map(|_| Mat::zero(ring.field(), 0, 0)).collect(),
        }
    }

    /// `R` as a bimodule over itself.
    pub fn regular(ring: &StructureAlgebra) -> Self {
        let d = ring.dim();
        let left_act = (0..d).map(|i| ring.left_regular(&unit_vec(d, i))).collect();
        let right_act = (0..d).map(|i| ring.right_regular(&unit_vec(d, i))).collect();
        Bimodule {
            field: ring.field(),
            ring_dim: d,
            dim: d,
            left_act,
            right_act,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn left_act(&self, i: usize) -> &Mat {
        &self.left_act[i]
    }

    pub fn right_act(&self, i: usize) -> &Mat {
        &self.right_act[i]
    }

    pub fn left_act_by(&self, r: &[u32]) -> Mat {
        let mut m = Mat::zero(self.field, self.dim, self.dim);
        for (i, &c) in r.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.left_act[i].scale(c));
            }
        }
        m
    }

    pub fn right_act_by(&self, r: &[u32]) -> Mat {
        let mut m = Mat::zero(self.field, self.dim, self.dim);
        for (i, &c) in r.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.right_act[i].scale(c));
            }
        }
        m
    }

    /// Forgets the right action.
    pub fn as_left_module(&self) -> RModule {
        RModule {
            field: self.field,
            ring_dim: self.ring_dim,
            dim: self.dim,
            act: self.left_act.clone(),
        }
    }

    /// The opposite bimodule over `R^op`: left and right actions swap.
    pub fn opposite(&self) -> Bimodule {
        Bimodule {
            field: self.field,
            ring_dim: self.ring_dim,
            dim: self.dim,
            left_act: self.right_act.clone(),
            right_act: self.left_act.clone(),
        }
    }

    /// Checks unital (anti-)multiplicativity of both actions and that they
    /// commute with each other.
    pub fn validate(&self, ring: &StructureAlgebra) -> Vec<String> {
        let mut report = Vec::new();
        let id = Mat::identity(self.field, self.dim);
        if self.left_act_by(ring.unit()) != id {
            report.push("left action of the unit is not the identity".into());
        }
        if self.right_act_by(ring.unit()) != id {
            report.push("right action of the unit is not the identity".into());
        }
        for i in 0..ring.dim() {
            for j in 0..ring.dim() {
                let prod = ring.basis_product(i, j);
                // (e_i e_j) · m = e_i · (e_j · m)
                if self.left_act_by(prod) != self.left_act[i].mul(&self.left_act[j]) {
                    report.push(format!("left action not multiplicative on ({i}, {j})"));
                }
                // m · (e_i e_j) = (m · e_i) · e_j
                if self.right_act_by(prod) != self.right_act[j].mul(&self.right_act[i]) {
                    report.push(format!("right action not anti-multiplicative on ({i}, {j})"));
                }
                if self.left_act[i].mul(&self.right_act[j]) != self.right_act[j].mul(&self.left_act[i]) {
                    report.push(format!("left and right actions do not commute on ({i}, {j})"));
                }
            }
        }
        report
    }
}

/// The quotient `M ⊗_R X` of the plain tensor ambient by the balancing
/// relations, with its deterministic projection/section and the induced left
/// R-action (through the left action on `M`).
#[derive(Debug, Clone)]
pub struct TensorSpace {
    pub ambient_dim: usize,
    pub relations: Subspace,
    /// Surjection ambient -> quotient.
    pub proj: Mat,
    /// Section of `proj` (free coordinates of the relation pivots).
    pub section: Mat,
    pub dim: usize,
    /// Induced left R-action on the quotient.
    pub action: Vec<Mat>,
}

impl TensorSpace {
    pub fn as_rmodule(&self, ring: &StructureAlgebra) -> RModule {
        RModule {
            field: ring.field(),
            ring_dim: ring.dim(),
            dim: self.dim,
            act: self.action.clone(),
        }
    }
}

/// Builds `M ⊗_R X` for a bimodule `M` and a left module `X`.
///
/// Balancing relations: `vec(m·r ⊗ x) − vec(m ⊗ r·x)` over all basis
/// triples. The quotient basis is the pivot complement, so it is
/// deterministic.
pub fn tensor_over_r(m: &Bimodule, x: &RModule) -> TensorSpace {
    let f = m.field();
    let (dm, dx) = (m.dim(), x.dim);
    let ambient = dm * dx;
    let mut rel_rows = Mat::zero(f, 0, ambient);
    let id_x = Mat::identity(f, dx);
    let id_m = Mat::identity(f, dm);
    for r in 0..x.ring_dim {
        // columns of (R_m(e_r) ⊗ id_x − id_m ⊗ A_x(e_r)) are the relations
        let rel = m.right_act(r).kron(&id_x).sub(&id_m.kron(&x.act[r]));
        rel_rows = rel_rows.vstack(&rel.transpose());
    }
    let relations = Subspace::from_span(ambient, &rel_rows);
    let (proj, section) = quotient_map(f, ambient, &relations);
    let dim = proj.rows();
    let action = (0..x.ring_dim)
        .map(|r| proj.mul(&m.left_act(r).kron(&id_x)).mul(&section))
        .collect();
    TensorSpace {
        ambient_dim: ambient,
        relations,
        proj,
        section,
        dim,
        action,
    }
}

/// The space `Hom_R(M, X)` of left-R-linear maps, with a deterministic
/// echelon basis of matrices and its left R-module structure
/// `(r · h)(m) = h(m · r)`.
#[derive(Debug, Clone)]
pub struct HomSpace {
    pub module_dim: usize,
    pub target_dim: usize,
    pub dim: usize,
    /// Basis maps as `target_dim x module_dim` matrices.
    pub basis: Vec<Mat>,
    /// Left R-action in the `basis` coordinates.
    pub action: Vec<Mat>,
    field: PrimeField,
}

impl HomSpace {
    /// Coordinates of an R-linear map in the basis, if it lies in the space.
    pub fn coords_of(&self, h: &Mat) -> Option<Vec<u32>> {
        assert_eq!((h.rows(), h.cols()), (self.target_dim, self.module_dim));
        if self.dim == 0 {
            return h.is_zero().then(Vec::new);
        }
        let mut cols = Mat::zero(self.field, self.target_dim * self.module_dim, self.dim);
        for (k, b) in self.basis.iter().enumerate() {
            for (idx, &v) in b.entries().iter().enumerate() {
                cols.set(idx, k, v);
            }
        }
        let rhs = Mat::col_vec(self.field, h.entries());
        let sol = cols.solve(&rhs)?;
        // solve is consistent iff h is in the span; re-check exactly
        if cols.mul(&sol) == rhs {
            Some(sol.col(0))
        } else {
            None
        }
    }

    /// Reassembles the map with the given coordinates.
    pub fn from_coords(&self, coords: &[u32]) -> Mat {
        assert_eq!(coords.len(), self.dim);
        let mut h = Mat::zero(self.field, self.target_dim, self.module_dim);
        for (c, b) in coords.iter().zip(&self.basis) {
            if *c != 0 {
                h = h.add(&b.scale(*c));
            }
        }
        h
    }

    pub fn as_rmodule(&self, ring: &StructureAlgebra) -> RModule {
        RModule {
            field: ring.field(),
            ring_dim: ring.dim(),
            dim: self.dim,
            act: self.action.clone(),
        }
    }
}

/// Computes `Hom_R(M, X)` by solving the linearity constraints
/// `h · L_M(e_r) = A_X(e_r) · h`.
pub fn hom_r(m: &Bimodule, x: &RModule) -> HomSpace {
    let f = m.field();
    let (dm, dx) = (m.dim(), x.dim);
    // Vectorize h (dx x dm) row-major: vec(A h B) = kron(A, B^T) vec(h).
    let mut constraints = Mat::zero(f, 0, dx * dm);
    let id_m = Mat::identity(f, dm);
    let id_x = Mat::identity(f, dx);
    for r in 0..x.ring_dim {
        let lhs = id_x.kron(&m.left_act(r).transpose());
        let rhs = x.act[r].kron(&id_m);
        constraints = constraints.vstack(&lhs.sub(&rhs));
    }
    let kernel = constraints.kernel();
    let dim = kernel.dim();
    let basis: Vec<Mat> = (0..dim)
        .map(|k| Mat::from_entries(f, dx, dm, kernel.basis().row(k).to_vec()).unwrap())
        .collect();
    // (r · h) = h ∘ R_M(e_r); expand each basis image back in coordinates.
    let mut hs = HomSpace {
        module_dim: dm,
        target_dim: dx,
        dim,
        basis,
        action: Vec::new(),
        field: f,
    };
    let mut action = Vec::with_capacity(x.ring_dim);
    for r in 0..x.ring_dim {
        let mut act = Mat::zero(f, dim, dim);
        for (t, b) in hs.basis.iter().enumerate() {
            let moved = b.mul(m.right_act(r));
            let coords = hs
                .coords_of(&moved)
                .expect("hom space must be closed under the right action");
            for (i, &v) in coords.iter().enumerate() {
                act.set(i, t, v);
            }
        }
        action.push(act);
    }
    hs.action = action;
    hs
}

/// The pre-product family `Φ = (Φ_{i,j})` on a tuple of bimodules
/// `(M_1, …, M_n)`. `phi(i, j)` (1-based, `i + j <= n`) is a matrix
/// `dim(M_{i+j}) x dim(M_i)·dim(M_j)` on the tensor ambient.
#[derive(Debug, Clone)]
pub struct PhiSystem {
    n: usize,
    modules: Vec<Bimodule>,
    /// Keyed by (i, j), both 1-based.
    phi: Vec<((usize, usize), Mat)>,
}

/// One violated Φ constraint, with the witnessing indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PhiViolation {
    Shape { i: usize, j: usize },
    Balanced { i: usize, j: usize, ring_basis: usize },
    LeftBilinear { i: usize, j: usize, ring_basis: usize },
    RightBilinear { i: usize, j: usize, ring_basis: usize },
    Associativity { i: usize, j: usize, k: usize },
}

impl std::fmt::Display for PhiViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PhiViolation::Shape { i, j } => write!(f, "phi[{i}][{j}] has the wrong shape"),
            PhiViolation::Balanced { i, j, ring_basis } => {
                write!(f, "phi[{i}][{j}] not R-balanced at ring basis {ring_basis}")
            }
            PhiViolation::LeftBilinear { i, j, ring_basis } => {
                write!(f, "phi[{i}][{j}] not left R-linear at ring basis {ring_basis}")
            }
            PhiViolation::RightBilinear { i, j, ring_basis } => {
                write!(f, "phi[{i}][{j}] not right R-linear at ring basis {ring_basis}")
            }
            PhiViolation::Associativity { i, j, k } => {
                write!(f, "phi associativity fails on ({i}, {j}, {k})")
            }
        }
    }
}

impl PhiSystem {
    pub fn new(n: usize, modules: Vec<Bimodule>, phi: Vec<((usize, usize), Mat)>) -> Result<Self> {
        if modules.len() != n {
            return Err(Error::Shape(format!("expected {n} bimodules, got {}", modules.len())));
        }
        for &((i, j), _) in &phi {
            if i < 1 || j < 1 || i + j > n {
                return Err(Error::Invalid(format!("phi indices ({i}, {j}) out of range for n = {n}")));
            }
        }
        Ok(PhiSystem { n, modules, phi })
    }

    /// All pre-products zero; always valid.
    pub fn zero_phi(n: usize, modules: Vec<Bimodule>) -> Result<Self> {
        let field = modules
            .first()
            .map(|m| m.field())
            .ok_or_else(|| Error::Invalid("zero_phi needs at least one module".into()))?;
        let mut phi = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                if i + j <= n {
                    let rows = modules[i + j - 1].dim();
                    let cols = modules[i - 1].dim() * modules[j - 1].dim();
                    phi.push(((i, j), Mat::zero(field, rows, cols)));
                }
            }
        }
        PhiSystem::new(n, modules, phi)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn module(&self, i: usize) -> &Bimodule {
        &self.modules[i - 1]
    }

    pub fn modules(&self) -> &[Bimodule] {
        &self.modules
    }

    /// `Φ_{i,j}` as an ambient matrix (1-based indices, `i + j <= n`).
    pub fn phi(&self, i: usize, j: usize) -> &Mat {
        self.phi
            .iter()
            .find(|&&((a, b), _)| (a, b) == (i, j))
            .map(|(_, m)| m)
            .unwrap_or_else(|| panic!("phi[{i}][{j}] missing"))
    }

    /// The opposite system over `R^op`: modules flip their actions and
    /// `Φ^op_{i,j} = Φ_{j,i} ∘ swap`.
    pub fn opposite(&self) -> PhiSystem {
        let modules: Vec<Bimodule> = self.modules.iter().map(Bimodule::opposite).collect();
        let field = self.modules[0].field();
        let phi = self
            .phi
            .iter()
            .map(|&((i, j), _)| {
                let orig = self.phi(j, i);
                let (di, dj) = (self.modules[i - 1].dim(), self.modules[j - 1].dim());
                // swap: e_a ⊗ e_b (slow a) -> e_b ⊗ e_a
                let mut swapped = Mat::zero(field, orig.rows(), di * dj);
                for a in 0..di {
                    for b in 0..dj {
                        let src = orig.col_block(b * di + a, 1);
                        swapped.paste(0, a * dj + b, &src);
                    }
                }
                ((i, j), swapped)
            })
            .collect();
        PhiSystem {
            n: self.n,
            modules,
            phi,
        }
    }

    /// Checks shapes, balancing, bilinearity, and the associativity pentagon
    /// on every admissible index triple.
    pub fn validate(&self, ring: &StructureAlgebra) -> Vec<PhiViolation> {
        let mut report = Vec::new();
        let f = ring.field();
        let shape_ok = |i: usize, j: usize| {
            let m = self.phi(i, j);
            m.rows() == self.module(i + j).dim()
                && m.cols() == self.module(i).dim() * self.module(j).dim()
        };
        for &((i, j), ref m) in &self.phi {
            let (mi, mj, mij) = (self.module(i), self.module(j), self.module(i + j));
            if m.rows() != mij.dim() || m.cols() != mi.dim() * mj.dim() {
                report.push(PhiViolation::Shape { i, j });
                continue;
            }
            let id_i = Mat::identity(f, mi.dim());
            let id_j = Mat::identity(f, mj.dim());
            for r in 0..ring.dim() {
                // balanced: phi kills (m_i · r) ⊗ m_j − m_i ⊗ (r · m_j)
                let bal = mi.right_act(r).kron(&id_j).sub(&id_i.kron(mj.left_act(r)));
                if !m.mul(&bal).is_zero() {
                    report.push(PhiViolation::Balanced { i, j, ring_basis: r });
                }
                // left bilinear: phi ∘ (L_i(r) ⊗ id) = L_{i+j}(r) ∘ phi
                if m.mul(&mi.left_act(r).kron(&id_j)) != mij.left_act(r).mul(m) {
                    report.push(PhiViolation::LeftBilinear { i, j, ring_basis: r });
                }
                // right bilinear: phi ∘ (id ⊗ R_j(r)) = R_{i+j}(r) ∘ phi
                if m.mul(&id_i.kron(mj.right_act(r))) != mij.right_act(r).mul(m) {
                    report.push(PhiViolation::RightBilinear { i, j, ring_basis: r });
                }
            }
        }
        for i in 1..=self.n {
            for j in 1..=self.n {
                for k in 1..=self.n {
                    if i + j + k > self.n {
                        continue;
                    }
                    // malformed factors were already reported as Shape
                    if !(shape_ok(i, j) && shape_ok(i + j, k) && shape_ok(j, k) && shape_ok(i, j + k)) {
                        continue;
                    }
                    let id_i = Mat::identity(f, self.module(i).dim());
                    let id_k = Mat::identity(f, self.module(k).dim());
                    let lhs = self.phi(i + j, k).mul(&self.phi(i, j).kron(&id_k));
                    let rhs = self.phi(i, j + k).mul(&id_i.kron(self.phi(j, k)));
                    if lhs != rhs {
                        report.push(PhiViolation::Associativity { i, j, k });
                    }
                }
            }
        }
        report
    }
}

/// The canonical system with every `M_i = R` (regular bimodule) and `Φ` the
/// ring multiplication itself.
pub fn canonical_regular_system(ring: &StructureAlgebra, n: usize) -> PhiSystem {
    let d = ring.dim();
    let f = ring.field();
    let modules: Vec<Bimodule> = (0..n).map(|_| Bimodule::regular(ring)).collect();
    let mut phi = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i + j <= n {
                // columns indexed by e_a ⊗ e_b (a slow) -> coords of e_a e_b
                let mut m = Mat::zero(f, d, d * d);
                for a in 0..d {
                    for b in 0..d {
                        let prod = ring.basis_product(a, b);
                        for (row, &v) in prod.iter().enumerate() {
                            m.set(row, a * d + b, v);
                        }
                    }
                }
                phi.push(((i, j), m));
            }
        }
    }
    PhiSystem::new(n, modules, phi).unwrap()
}

/// The cyclic bimodule `R/I` for a two-sided ideal `I`, with the quotient
/// projection and its section.
pub fn quotient_bimodule(ring: &StructureAlgebra, ideal: &Subspace) -> (Bimodule, Mat, Mat) {
    let (proj, section) = quotient_map(ring.field(), ring.dim(), ideal);
    let dim = proj.rows();
    let left_act = (0..ring.dim())
        .map(|i| proj.mul(&ring.left_regular(&unit_vec(ring.dim(), i))).mul(&section))
        .collect();
    let right_act = (0..ring.dim())
        .map(|i| proj.mul(&ring.right_regular(&unit_vec(ring.dim(), i))).mul(&section))
        .collect();
    (
        Bimodule {
            field: ring.field(),
            ring_dim: ring.dim(),
            dim,
            left_act,
            right_act,
        },
        proj,
        section,
    )
}

/// The system with `M_i = R/I_i` and `Φ_{i,j}` the multiplication induced on
/// quotients; when the induced map is not well defined (`I_i + I_j` not
/// inside `I_{i+j}`) that pairing is the zero map.
pub fn cyclic_quotient_system(ring: &StructureAlgebra, ideals: &[Subspace]) -> Result<PhiSystem> {
    let n = ideals.len();
    let f = ring.field();
    let mut modules = Vec::with_capacity(n);
    let mut projs = Vec::with_capacity(n);
    let mut sections = Vec::with_capacity(n);
    for ideal in ideals {
        if ideal.ambient_dim() != ring.dim() {
            return Err(Error::Shape("ideal must live in the ring".into()));
        }
        let (m, proj, section) = quotient_bimodule(ring, ideal);
        modules.push(m);
        projs.push(proj);
        sections.push(section);
    }
    let mut phi = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            if i + j > n {
                continue;
            }
            let (di, dj) = (modules[i - 1].dim(), modules[j - 1].dim());
            let dk = modules[i + j - 1].dim();
            // induced multiplication is well defined iff I_i + I_j ⊆ I_{i+j}
            let sum = ideals[i - 1].sum(&ideals[j - 1]);
            let well_defined =
                ideals[i + j - 1].sum(&sum).dim() == ideals[i + j - 1].dim();
            let mut m = Mat::zero(f, dk, di * dj);
            if well_defined {
                for a in 0..di {
                    for b in 0..dj {
                        let x = sections[i - 1].col(a);
                        let y = sections[j - 1].col(b);
                        let prod = ring.mul_coords(&x, &y);
                        let coords = projs[i + j - 1].apply(&prod);
                        for (row, &v) in coords.iter().enumerate() {
                            m.set(row, a * dj + b, v);
                        }
                    }
                }
            }
            phi.push(((i, j), m));
        }
    }
    PhiSystem::new(n, modules, phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::PrimeField;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn truncated(p: u64, d: usize) -> StructureAlgebra {
        StructureAlgebra::truncated_polynomial(f(p), d)
    }

    #[test]
    fn regular_bimodule_validates() {
        let r = truncated(2, 3);
        assert!(Bimodule::regular(&r).validate(&r).is_empty());
    }

    #[test]
    fn tensor_with_regular_is_identity() {
        // R ⊗_R X ≅ X with the induced action matching the original
        let r = truncated(2, 3);
        let x = r.regular_module();
        let t = tensor_over_r(&Bimodule::regular(&r), &x);
        assert_eq!(t.dim, x.dim);
        // relations have rank ambient − dim = 9 − 3 = 6
        assert_eq!(t.relations.dim(), 6);
        // proj realizes r ⊗ x -> r·x: transporting the action must agree
        let m = t.as_rmodule(&r);
        assert!(m.validate(&r).is_empty());
        // the map q: X -> R⊗X, x -> class(1 ⊗ x) intertwines the actions and
        // is invertible
        let mut one_tensor = Mat::zero(f(2), 9, 3);
        for b in 0..3 {
            one_tensor.set(b, b, 1); // vec(e_0 ⊗ e_b) = index 0*3+b
        }
        let q = t.proj.mul(&one_tensor);
        assert!(q.is_invertible());
        for r_idx in 0..3 {
            assert_eq!(q.mul(&x.act[r_idx]), t.action[r_idx].mul(&q));
        }
    }

    #[test]
    fn tensor_with_zero_module_is_zero() {
        let r = truncated(2, 2);
        let t = tensor_over_r(&Bimodule::regular(&r), &RModule::zero(&r));
        assert_eq!(t.dim, 0);
    }

    #[test]
    fn hom_from_regular_is_evaluation() {
        // Hom_R(R, X) ≅ X as left modules
        let r = truncated(2, 2);
        let x = r.regular_module();
        let h = hom_r(&Bimodule::regular(&r), &x);
        assert_eq!(h.dim, x.dim);
        // evaluation at 1: h -> h(1) intertwines the hom action with the
        // x action and is invertible
        let mut ev = Mat::zero(f(2), 2, h.dim);
        for (t, b) in h.basis.iter().enumerate() {
            let val = b.apply(r.unit());
            for (i, &v) in val.iter().enumerate() {
                ev.set(i, t, v);
            }
        }
        assert!(ev.is_invertible());
        for r_idx in 0..2 {
            assert_eq!(ev.mul(&h.action[r_idx]), x.act[r_idx].mul(&ev));
        }
    }

    #[test]
    fn hom_to_zero_is_zero() {
        let r = truncated(3, 2);
        let h = hom_r(&Bimodule::regular(&r), &RModule::zero(&r));
        assert_eq!(h.dim, 0);
    }

    #[test]
    fn hom_over_prime_field_is_all_linear_maps() {
        let r = StructureAlgebra::prime_field(f(2));
        let x = r.regular_module().direct_sum(&r.regular_module());
        let h = hom_r(&Bimodule::regular(&r), &x);
        assert_eq!(h.dim, 2);
    }

    #[test]
    fn zero_phi_validates() {
        let r = truncated(2, 2);
        let ps = PhiSystem::zero_phi(2, vec![Bimodule::regular(&r), Bimodule::regular(&r)]).unwrap();
        assert!(ps.validate(&r).is_empty());
    }

    #[test]
    fn n_one_is_vacuously_valid() {
        let r = truncated(2, 2);
        let ps = PhiSystem::new(1, vec![Bimodule::regular(&r)], vec![]).unwrap();
        assert!(ps.validate(&r).is_empty());
    }

    #[test]
    fn canonical_system_over_prime_field_validates() {
        let r = StructureAlgebra::prime_field(f(5));
        let ps = canonical_regular_system(&r, 3);
        assert!(ps.validate(&r).is_empty());
    }

    #[test]
    fn canonical_system_over_truncated_validates() {
        let r = truncated(2, 2);
        let ps = canonical_regular_system(&r, 3);
        assert!(ps.validate(&r).is_empty());
    }

    #[test]
    fn broken_phi_is_reported_with_indices() {
        let r = StructureAlgebra::prime_field(f(2));
        let mut ps = canonical_regular_system(&r, 3);
        // corrupt phi[1][2] only: the (1,1,1) pentagon then compares the
        // multiplication route against a zero route
        for entry in ps.phi.iter_mut() {
            if entry.0 == (1, 2) {
                entry.1 = Mat::zero(f(2), 1, 1);
            }
        }
        let report = ps.validate(&r);
        assert!(report
            .iter()
            .any(|v| matches!(v, PhiViolation::Associativity { i: 1, j: 1, k: 1 })));
    }

    #[test]
    fn hom_tensor_duality_dimension() {
        // dim Hom_R(M, X) = dim (M ⊗_R X*) with X* the dual over R^op
        let r = truncated(2, 2);
        let m = Bimodule::regular(&r);
        for x in [r.regular_module(), r.regular_module().direct_sum(&r.regular_module())] {
            let hom = hom_r(&m, &x);
            let dual = x.dual(); // left module over R^op
            let t = tensor_over_r(&m.opposite(), &dual);
            assert_eq!(hom.dim, t.dim);
        }
    }

    #[test]
    fn opposite_phi_of_canonical_validates() {
        let r = truncated(2, 2);
        let ps = canonical_regular_system(&r, 2).opposite();
        assert!(ps.validate(&r.opposite()).is_empty());
    }

    #[test]
    fn quotient_bimodule_by_radical() {
        // R = F_2[x]/(x^2), R/(x): dim 1, x acts as 0 on both sides
        let r = truncated(2, 2);
        let rad = r.nilradical().unwrap();
        let (m, proj, section) = quotient_bimodule(&r, &rad);
        assert_eq!(m.dim(), 1);
        assert!(m.validate(&r).is_empty());
        assert!(m.left_act(1).is_zero());
        assert!(m.right_act(1).is_zero());
        assert_eq!(proj.mul(&section), Mat::identity(f(2), 1));
    }

    #[test]
    fn cyclic_quotient_systems_validate() {
        // all mixtures of 0, R, R/rad over F_2[x]/(x^2) for n = 2
        let r = truncated(2, 2);
        let rad = r.nilradical().unwrap();
        let full = Subspace::from_span(2, &Mat::identity(f(2), 2));
        let zero = Subspace::zero(f(2), 2);
        let choices = [zero, rad, full];
        for a in &choices {
            for b in &choices {
                let ps = cyclic_quotient_system(&r, &[a.clone(), b.clone()]).unwrap();
                assert!(ps.validate(&r).is_empty(), "ideals dims {} {}", a.dim(), b.dim());
            }
        }
    }

    #[test]
    fn cyclic_system_with_zero_ideals_matches_regular() {
        let r = truncated(2, 2);
        let zero = Subspace::zero(f(2), 2);
        let ps = cyclic_quotient_system(&r, &[zero.clone(), zero.clone()]).unwrap();
        let reg = canonical_regular_system(&r, 2);
        assert_eq!(ps.phi(1, 1), reg.phi(1, 1));
        assert_eq!(ps.module(1), reg.module(1));
    }
}
