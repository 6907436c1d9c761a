//! Assembly of the n-trivial extension ring `S = R ⋉ₙ (M₁,…,Mₙ)` as a
//! graded structure-constant algebra, with the canonical injection
//! `i: R → S` and projection `π: S → R`.
//!
//! The graded multiplication: the degree-k component of a product is
//! `Σ_{i+j=k} m_i m'_j`, where degree 0 is the ring product, mixed degrees
//! use the bimodule actions, and `M_i · M_j` goes through `Φ_{i,j}` when
//! `i + j ≤ n` and is 0 above degree n.

use crate::algebra::StructureAlgebra;
use crate::bimodule::PhiSystem;
use crate::linalg::Mat;
use crate::{Error, Result};

/// The assembled extension ring. `total` is a plain structure-constant
/// algebra of dimension `dim R + Σ dim M_i`, so everything built for
/// [`StructureAlgebra`] applies to `S` unchanged.
#[derive(Debug, Clone)]
pub struct ExtensionRing {
    base: StructureAlgebra,
    phi_system: PhiSystem,
    total: StructureAlgebra,
    /// `offsets[d]` is the first coordinate of the degree-d component,
    /// `offsets[n+1]` the total dimension.
    offsets: Vec<usize>,
    inj: Mat,
    proj: Mat,
}

impl ExtensionRing {
    pub fn base(&self) -> &StructureAlgebra {
        &self.base
    }

    pub fn phi_system(&self) -> &PhiSystem {
        &self.phi_system
    }

    pub fn total(&self) -> &StructureAlgebra {
        &self.total
    }

    pub fn n(&self) -> usize {
        self.phi_system.n()
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    /// Start offset of the degree-d component, `0 <= d <= n`.
    pub fn offset(&self, degree: usize) -> usize {
        self.offsets[degree]
    }

    /// Dimension of the degree-d component.
    pub fn component_dim(&self, degree: usize) -> usize {
        self.offsets[degree + 1] - self.offsets[degree]
    }

    /// Global basis index of local index `a` in degree `d`.
    pub fn basis_index(&self, degree: usize, local: usize) -> usize {
        debug_assert!(local < self.component_dim(degree));
        self.offsets[degree] + local
    }

    /// Ring map `i: R -> S` (degree-0 inclusion).
    pub fn inj(&self) -> &Mat {
        &self.inj
    }

    /// Ring map `π: S -> R` (degree-0 projection).
    pub fn proj(&self) -> &Mat {
        &self.proj
    }

    /// Splits an element of `S` into its graded components.
    pub fn graded_components(&self, x: &[u32]) -> Vec<Vec<u32>> {
        assert_eq!(x.len(), self.dim());
        (0..=self.n())
            .map(|d| x[self.offsets[d]..self.offsets[d + 1]].to_vec())
            .collect()
    }

    /// Reassembles graded components into an element of `S`.
    pub fn from_components(&self, parts: &[Vec<u32>]) -> Vec<u32> {
        assert_eq!(parts.len(), self.n() + 1);
        let mut out = Vec::with_capacity(self.dim());
        for (d, part) in parts.iter().enumerate() {
            assert_eq!(part.len(), self.component_dim(d));
            out.extend_from_slice(part);
        }
        out
    }
}

/// Builds `S = R ⋉ₙ M`. Rejects inputs whose validation reports are
/// nonempty, and re-validates the assembled table.
pub fn build_extension(r: &StructureAlgebra, ps: PhiSystem) -> Result<ExtensionRing> {
    let ring_report = r.validate();
    if !ring_report.is_empty() {
        return Err(Error::Invalid(format!(
            "base ring fails validation: {}",
            ring_report
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }
    for (idx, m) in ps.modules().iter().enumerate() {
        let report = m.validate(r);
        if !report.is_empty() {
            return Err(Error::Invalid(format!(
                "bimodule M_{} fails validation: {}",
                idx + 1,
                report.join("; ")
            )));
        }
    }
    let phi_report = ps.validate(r);
    if !phi_report.is_empty() {
        return Err(Error::Invalid(format!(
            "phi system fails validation: {}",
            phi_report
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }

    let n = ps.n();
    let f = r.field();
    let mut offsets = vec![0usize];
    offsets.push(r.dim());
    for i in 1..=n {
        offsets.push(offsets[i] + ps.module(i).dim());
    }
    let dim = offsets[n + 1];

    let mut mult = vec![vec![vec![0u32; dim]; dim]; dim];
    let mut write = |deg: usize, coords: &[u32], gi: usize, gj: usize| {
        for (local, &v) in coords.iter().enumerate() {
            mult[gi][gj][offsets[deg] + local] = v;
        }
    };
    // degree 0 x degree 0
    for a in 0..r.dim() {
        for b in 0..r.dim() {
            write(0, r.basis_product(a, b), a, b);
        }
    }
    for i in 1..=n {
        let mi = ps.module(i);
        for a in 0..mi.dim() {
            let gi = offsets[i] + a;
            // R x M_i via the left action, M_i x R via the right action
            for b in 0..r.dim() {
                write(i, &mi.left_act(b).col(a), b, gi);
                write(i, &mi.right_act(b).col(a), gi, b);
            }
            // M_i x M_j via phi when i + j <= n, zero otherwise
            for j in 1..=n {
                if i + j > n {
                    continue;
                }
                let mj = ps.module(j);
                for b in 0..mj.dim() {
                    let gj = offsets[j] + b;
                    let col = ps.phi(i, j).col(a * mj.dim() + b);
                    write(i + j, &col, gi, gj);
                }
            }
        }
    }

    let mut unit = vec![0u32; dim];
    unit[..r.dim()].copy_from_slice(r.unit());
    let total = StructureAlgebra::new(f, dim, mult, unit)?;
    let total_report = total.validate();
    if !total_report.is_empty() {
        // Reachable only if a phi/action interplay slipped past validation;
        // surface it rather than hand out a non-ring.
        return Err(Error::Invalid(format!(
            "assembled extension fails validation: {}",
            total_report
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }

    let mut inj = Mat::zero(f, dim, r.dim());
    let mut proj = Mat::zero(f, r.dim(), dim);
    for a in 0..r.dim() {
        inj.set(a, a, 1);
        proj.set(a, a, 1);
    }
    Ok(ExtensionRing {
        base: r.clone(),
        phi_system: ps,
        total,
        offsets,
        inj,
        proj,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{algebras_isomorphic, IsoVerdict};
    use crate::bimodule::{canonical_regular_system, Bimodule, PhiSystem};
    use crate::linalg::{unit_vec, PrimeField};

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    /// F_p with all M_i = F_p and phi = field multiplication.
    fn serial_ext(p: u64, n: usize) -> ExtensionRing {
        let r = StructureAlgebra::prime_field(f(p));
        build_extension(&r, canonical_regular_system(&r, n)).unwrap()
    }

    #[test]
    fn zero_module_gives_back_r() {
        let r = StructureAlgebra::truncated_polynomial(f(2), 2);
        let ps = PhiSystem::new(1, vec![Bimodule::zero(&r)], vec![]).unwrap();
        let ext = build_extension(&r, ps).unwrap();
        assert_eq!(ext.dim(), r.dim());
        assert_eq!(ext.total(), &r);
    }

    #[test]
    fn f2_serial_multiplication_rule() {
        // S = F_2 ⋉_2 (F_2, F_2): m_1 * m_1 = m_2 and m_2 * m_1 = 0
        let ext = serial_ext(2, 2);
        assert_eq!(ext.dim(), 3);
        let s = ext.total();
        let m1 = unit_vec(3, 1);
        let m2 = unit_vec(3, 2);
        assert_eq!(s.mul_coords(&m1, &m1), m2);
        assert_eq!(s.mul_coords(&m2, &m1), vec![0, 0, 0]);
    }

    #[test]
    fn serial_extension_is_truncated_polynomial_ring() {
        for (p, n) in [(2u64, 2usize), (2, 3), (3, 2)] {
            let ext = serial_ext(p, n);
            let target = StructureAlgebra::truncated_polynomial(f(p), n + 1);
            match algebras_isomorphic(ext.total(), &target, 1 << 20, 0) {
                IsoVerdict::Yes(_) => {}
                v => panic!("S vs F_{p}[x]/(x^{}) gave {v:?}", n + 1),
            }
        }
    }

    #[test]
    fn graded_components_split_and_reassemble() {
        let ext = serial_ext(2, 2);
        let unit = ext.total().unit();
        let parts = ext.graded_components(unit);
        assert_eq!(parts, vec![vec![1], vec![0], vec![0]]);
        // e_{M1} + e_{M2} -> (0, 1, 1)
        let x = vec![0, 1, 1];
        let parts = ext.graded_components(&x);
        assert_eq!(parts, vec![vec![0], vec![1], vec![1]]);
        assert_eq!(ext.from_components(&parts), x);
    }

    #[test]
    fn proj_inj_identity_and_kernel() {
        let ext = serial_ext(3, 2);
        let pi = ext.proj().mul(ext.inj());
        assert_eq!(pi, Mat::identity(f(3), 1));
        // ker(π) is the positive-degree subspace
        let k = ext.proj().kernel();
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&[0, 1, 0]));
        assert!(k.contains(&[0, 0, 1]));
    }

    #[test]
    fn positive_ideal_is_nilpotent() {
        // any product of n+1 positive-degree basis elements vanishes
        let ext = serial_ext(2, 3);
        let s = ext.total();
        let pos: Vec<usize> = (ext.offset(1)..ext.dim()).collect();
        for &a in &pos {
            for &b in &pos {
                for &c in &pos {
                    for &d in &pos {
                        let mut x = unit_vec(ext.dim(), a);
                        for &y in &[b, c, d] {
                            x = s.mul_coords(&x, &unit_vec(ext.dim(), y));
                        }
                        assert!(x.iter().all(|&v| v == 0), "({a},{b},{c},{d}) nonzero");
                    }
                }
            }
        }
    }

    #[test]
    fn extension_over_truncated_base() {
        // R = F_2[x]/(x^2), n = 1, M_1 = R: dim S = 4 and S validates
        let r = StructureAlgebra::truncated_polynomial(f(2), 2);
        let ps = PhiSystem::new(1, vec![Bimodule::regular(&r)], vec![]).unwrap();
        let ext = build_extension(&r, ps).unwrap();
        assert_eq!(ext.dim(), 4);
        assert!(ext.total().validate().is_empty());
    }

    #[test]
    fn invalid_phi_rejected_with_report() {
        let r = StructureAlgebra::prime_field(f(2));
        let modules = vec![Bimodule::regular(&r), Bimodule::regular(&r), Bimodule::regular(&r)];
        // wrong-shaped phi[1][1]
        let phi = vec![
            ((1usize, 1usize), Mat::zero(f(2), 2, 1)),
            ((1, 2), Mat::zero(f(2), 1, 1)),
            ((2, 1), Mat::zero(f(2), 1, 1)),
        ];
        let ps = PhiSystem::new(3, modules, phi).unwrap();
        let err = build_extension(&r, ps).unwrap_err();
        assert!(err.to_string().contains("phi"));
    }
}
