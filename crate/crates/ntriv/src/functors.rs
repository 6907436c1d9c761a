//! The six functors between R-modules and S-modules and their adjunctions.
//!
//! Right-form side: `T(X) = S ⊗_R X` with carrier `X ⊕ M_1⊗X ⊕ … ⊕ M_n⊗X`,
//! `C(m) = X / Σ Im f_i`, `U(m) = X`, `Z(X) = (X, 0)`. Left-form side:
//! `H(X) = Hom_R(S, X)` with carrier `G_nX ⊕ … ⊕ G_1X ⊕ X`, and
//! `K(m) = ∩ ker g_i`. Adjunction checks verify the explicit hom-space
//! bijections `T ⊣ U ⊣ H` and `C ⊣ Z ⊣ K` element by element.

use crate::algebra::{rmodule_hom_basis, RModule};
use crate::bimodule::{hom_r, tensor_over_r, HomSpace, TensorSpace};
use crate::extension::ExtensionRing;
use crate::linalg::Mat;
use crate::smodule::{
    from_left_form, morphism_space, psi_apply, FModule, GModule,
};
use crate::Result;
use std::sync::Arc;

/// `T(X)` together with the tensor coordinates of its blocks.
#[derive(Debug, Clone)]
pub struct TFunctor {
    pub module: FModule,
    /// `tensors[i-1]` is `M_i ⊗_R X`.
    pub tensors: Vec<TensorSpace>,
    /// `offsets[0] = 0` starts the X block, `offsets[i]` the `M_i⊗X` block,
    /// `offsets[n+1]` is the carrier dimension.
    pub offsets: Vec<usize>,
}

impl TFunctor {
    pub fn x_dim(&self) -> usize {
        self.offsets[1]
    }

    /// The inclusion of the degree-0 block, carrier_dim x dim X.
    pub fn x_inclusion(&self) -> Mat {
        let field = self.module.ext.base().field();
        let total = *self.offsets.last().unwrap();
        let mut m = Mat::zero(field, total, self.x_dim());
        for c in 0..self.x_dim() {
            m.set(c, c, 1);
        }
        m
    }
}

/// Builds `T(X)`: the unique `(X', f)` structure on `X ⊕ ⊕_i M_i⊗X` where
/// `f_i` maps the X block by the tensor projection and the `M_j⊗X` block
/// through `Φ_{i,j}`.
pub fn functor_t(ext: &Arc<ExtensionRing>, x: &RModule) -> TFunctor {
    let r = ext.base();
    let field = r.field();
    let n = ext.n();
    let dx = x.dim;
    let tensors: Vec<TensorSpace> = (1..=n)
        .map(|i| tensor_over_r(ext.phi_system().module(i), x))
        .collect();
    let mut offsets = vec![0, dx];
    for t in &tensors {
        offsets.push(offsets.last().unwrap() + t.dim);
    }
    let total = offsets[n + 1];
    let mut carrier = x.clone();
    for t in &tensors {
        carrier = carrier.direct_sum(&t.as_rmodule(r));
    }
    let id_x = Mat::identity(field, dx);
    let mut f = Vec::with_capacity(n);
    for i in 1..=n {
        let di = ext.phi_system().module(i).dim();
        let mut fi = Mat::zero(field, total, di * total);
        // X block source: e_a ⊗ e_c goes to the class of e_a⊗e_c in M_i⊗X
        for a in 0..di {
            for c in 0..dx {
                let col = tensors[i - 1].proj.col(a * dx + c);
                for (s, &v) in col.iter().enumerate() {
                    fi.set(offsets[i] + s, a * total + c, v);
                }
            }
        }
        // M_j⊗X block source: multiply into M_{i+j}⊗X through phi
        for j in 1..=n {
            if i + j > n {
                continue;
            }
            let id_i = Mat::identity(field, di);
            let map = tensors[i + j - 1]
                .proj
                .mul(&ext.phi_system().phi(i, j).kron(&id_x))
                .mul(&id_i.kron(&tensors[j - 1].section));
            let tj = tensors[j - 1].dim;
            for a in 0..di {
                for c in 0..tj {
                    let col = map.col(a * tj + c);
                    for (s, &v) in col.iter().enumerate() {
                        fi.set(offsets[i + j] + s, a * total + offsets[j] + c, v);
                    }
                }
            }
        }
        f.push(fi);
    }
    TFunctor {
        module: FModule {
            ext: Arc::clone(ext),
            x: carrier,
            f,
        },
        tensors,
        offsets,
    }
}

/// `T` on an R-linear map `alpha: X_a -> X_b`: block diagonal, block i is
/// the induced map on `M_i ⊗ X`.
pub fn t_on_morphism(ta: &TFunctor, tb: &TFunctor, alpha: &Mat) -> Mat {
    let field = alpha.field();
    let n = ta.tensors.len();
    let mut out = Mat::zero(
        field,
        *tb.offsets.last().unwrap(),
        *ta.offsets.last().unwrap(),
    );
    out.paste(0, 0, alpha);
    for i in 1..=n {
        let di = ta.module.ext.phi_system().module(i).dim();
        let id_i = Mat::identity(field, di);
        let block = tb.tensors[i - 1]
            .proj
            .mul(&id_i.kron(alpha))
            .mul(&ta.tensors[i - 1].section);
        out.paste(tb.offsets[i], ta.offsets[i], &block);
    }
    out
}

/// `C(m) = X / Σ Im f_i` with its projection and section.
#[derive(Debug, Clone)]
pub struct CFunctor {
    pub module: RModule,
    pub proj: Mat,
    pub section: Mat,
}

pub fn functor_c(m: &FModule) -> CFunctor {
    let dx = m.dim_x();
    let mut rows = Mat::zero(m.ext.base().field(), 0, dx);
    for fi in &m.f {
        rows = rows.vstack(&fi.transpose());
    }
    let sub = crate::linalg::Subspace::from_span(dx, &rows);
    let (module, proj, section) = m.x.quotient(&sub);
    CFunctor {
        module,
        proj,
        section,
    }
}

/// `C` on an S-morphism `beta: m_a -> m_b` (the induced map on quotients).
pub fn c_on_morphism(ca: &CFunctor, cb: &CFunctor, beta: &Mat) -> Mat {
    cb.proj.mul(beta).mul(&ca.section)
}

/// The forgetful functor: the underlying R-module.
pub fn functor_u(m: &FModule) -> RModule {
    m.x.clone()
}

/// `Z(X) = (X, 0)`.
pub fn functor_z(ext: &Arc<ExtensionRing>, x: &RModule) -> FModule {
    FModule::zero_maps(Arc::clone(ext), x.clone())
}

/// `H(X)` together with the hom coordinates of its blocks.
#[derive(Debug, Clone)]
pub struct HFunctor {
    pub module: GModule,
    /// `homs[i-1]` is `G_iX = Hom_R(M_i, X)`.
    pub homs: Vec<HomSpace>,
    /// `block_offset[i]` starts the `G_iX` block (blocks are ordered
    /// `G_nX, …, G_1X, X`); `block_offset[0]` starts the X block.
    pub block_offset: Vec<usize>,
    pub x_dim: usize,
}

impl HFunctor {
    /// The projection onto the degree-0 block, dim X x carrier_dim.
    pub fn x_projection(&self) -> Mat {
        let field = self.module.ext.base().field();
        let mut m = Mat::zero(field, self.x_dim, self.module.dim_x());
        for c in 0..self.x_dim {
            m.set(c, self.block_offset[0] + c, 1);
        }
        m
    }
}

/// Builds `H(X)`: the carrier is `G_nX ⊕ … ⊕ G_1X ⊕ X` and `g_i` sends the
/// `G_kX` block into the `G_{k-i}X` block by `h ↦ (m_i ↦ h(– · m_i))`
/// (evaluation into the X block when `k = i`, zero when `k < i`).
pub fn functor_h(ext: &Arc<ExtensionRing>, x: &RModule) -> HFunctor {
    let r = ext.base();
    let field = r.field();
    let n = ext.n();
    let homs: Vec<HomSpace> = (1..=n)
        .map(|i| hom_r(ext.phi_system().module(i), x))
        .collect();
    let mut block_offset = vec![0usize; n + 1];
    let mut off = 0;
    for i in (1..=n).rev() {
        block_offset[i] = off;
        off += homs[i - 1].dim;
    }
    block_offset[0] = off;
    let total = off + x.dim;
    let mut carrier = homs[n - 1].as_rmodule(r);
    for i in (1..n).rev() {
        carrier = carrier.direct_sum(&homs[i - 1].as_rmodule(r));
    }
    carrier = carrier.direct_sum(x);
    debug_assert_eq!(carrier.dim, total);
    let hom_y: Vec<HomSpace> = (1..=n)
        .map(|i| hom_r(ext.phi_system().module(i), &carrier))
        .collect();
    let mut g = Vec::with_capacity(n);
    for i in 1..=n {
        let di = ext.phi_system().module(i).dim();
        let mut gi = Mat::zero(field, hom_y[i - 1].dim, total);
        for k in i..=n {
            for t in 0..homs[k - 1].dim {
                let h_t = &homs[k - 1].basis[t];
                let mut assembled = Mat::zero(field, total, di);
                if k == i {
                    assembled.paste(block_offset[0], 0, h_t);
                } else {
                    let j = k - i;
                    let psi = psi_apply(ext, &homs[j - 1], i, j, h_t);
                    assembled.paste(block_offset[j], 0, &psi);
                }
                let coords = hom_y[i - 1]
                    .coords_of(&assembled)
                    .expect("Φ balancing keeps the columns R-linear");
                for (s, &v) in coords.iter().enumerate() {
                    gi.set(s, block_offset[k] + t, v);
                }
            }
        }
        g.push(gi);
    }
    HFunctor {
        module: GModule {
            ext: Arc::clone(ext),
            x: carrier,
            g,
        },
        homs,
        block_offset,
        x_dim: x.dim,
    }
}

/// `H` on an R-linear map `alpha: X_a -> X_b`: block diagonal, the `G_iX`
/// block is post-composition with `alpha`.
pub fn h_on_morphism(ha: &HFunctor, hb: &HFunctor, alpha: &Mat) -> Mat {
    let field = alpha.field();
    let n = ha.homs.len();
    let mut out = Mat::zero(field, hb.module.dim_x(), ha.module.dim_x());
    out.paste(hb.block_offset[0], ha.block_offset[0], alpha);
    for i in 1..=n {
        for t in 0..ha.homs[i - 1].dim {
            let image = alpha.mul(&ha.homs[i - 1].basis[t]);
            let coords = hb.homs[i - 1]
                .coords_of(&image)
                .expect("post-composition stays R-linear");
            for (s, &v) in coords.iter().enumerate() {
                out.set(hb.block_offset[i] + s, ha.block_offset[i] + t, v);
            }
        }
    }
    out
}

/// `K(m) = ∩ ker g_i` with its inclusion into the carrier.
#[derive(Debug, Clone)]
pub struct KFunctor {
    pub module: RModule,
    /// Columns are the kernel basis, carrier_dim x dim K.
    pub incl: Mat,
}

pub fn functor_k(gm: &GModule) -> KFunctor {
    let sub = gm.stacked_g().kernel();
    let module = gm.x.submodule(&sub);
    let incl = sub.basis().transpose();
    KFunctor { module, incl }
}

/// `K` on an S-morphism `beta: m_a -> m_b` of left-form modules; `None` if
/// `beta` does not carry the kernel into the kernel (it always does for a
/// genuine morphism).
pub fn k_on_morphism(ka: &KFunctor, kb: &KFunctor, beta: &Mat) -> Option<Mat> {
    let image = beta.mul(&ka.incl);
    let gamma = kb.incl.solve(&image)?;
    (kb.incl.mul(&gamma) == image).then_some(gamma)
}

/// The canonical R-iso `X -> C(T(X))`, if the composite
/// `X ↪ T(X) ↠ C(T(X))` is invertible and R-linear.
pub fn ct_iso(x: &RModule, t: &TFunctor) -> Option<Mat> {
    let c = functor_c(&t.module);
    if c.module.dim != x.dim {
        return None;
    }
    let cand = c.proj.mul(&t.x_inclusion());
    if !cand.is_invertible() {
        return None;
    }
    for r in 0..x.ring_dim {
        if cand.mul(&x.act[r]) != c.module.act[r].mul(&cand) {
            return None;
        }
    }
    Some(cand)
}

/// The canonical R-iso `K(H(X)) -> X`, if the composite
/// `K(H(X)) ↪ H(X) ↠ X` is invertible and R-linear.
pub fn kh_iso(x: &RModule, h: &HFunctor) -> Option<Mat> {
    let k = functor_k(&h.module);
    if k.module.dim != x.dim {
        return None;
    }
    let cand = h.x_projection().mul(&k.incl);
    if !cand.is_invertible() {
        return None;
    }
    for r in 0..x.ring_dim {
        if cand.mul(&k.module.act[r]) != x.act[r].mul(&cand) {
            return None;
        }
    }
    Some(cand)
}

/// Vectorizes a family of maps as columns and checks linear independence.
fn independent(field: crate::linalg::PrimeField, maps: &[Mat]) -> bool {
    if maps.is_empty() {
        return true;
    }
    let len = maps[0].entries().len();
    if len == 0 {
        return false; // a nonzero count of maps into a zero space
    }
    let mut cols = Mat::zero(field, len, maps.len());
    for (k, m) in maps.iter().enumerate() {
        for (idx, &v) in m.entries().iter().enumerate() {
            cols.set(idx, k, v);
        }
    }
    cols.rank() == maps.len()
}

/// `Hom_S(T(X), m) ≅ Hom_R(X, U(m))` by restriction to the degree-0 block:
/// equal dimensions and the restriction is injective on a basis.
pub fn check_adjunction_tu(ext: &Arc<ExtensionRing>, x: &RModule, m: &FModule) -> bool {
    let t = functor_t(ext, x);
    let sm = morphism_space(&t.module, m);
    let rb = rmodule_hom_basis(ext.base(), x, &m.x);
    if sm.len() != rb.len() {
        return false;
    }
    let incl = t.x_inclusion();
    let restricted: Vec<Mat> = sm.iter().map(|psi| psi.mul(&incl)).collect();
    independent(ext.base().field(), &restricted)
}

/// `Hom_S(m, Z(X)) ≅ Hom_R(C(m), X)`: every S-morphism into `(X, 0)` kills
/// `Σ Im f_i` and factors uniquely through `C(m)`.
pub fn check_adjunction_cz(ext: &Arc<ExtensionRing>, m: &FModule, x: &RModule) -> bool {
    let z = functor_z(ext, x);
    let sm = morphism_space(m, &z);
    let c = functor_c(m);
    let rb = rmodule_hom_basis(ext.base(), &c.module, x);
    if sm.len() != rb.len() {
        return false;
    }
    for psi in &sm {
        let alpha = psi.mul(&c.section);
        if alpha.mul(&c.proj) != *psi {
            return false;
        }
        for r in 0..ext.base().dim() {
            if alpha.mul(&c.module.act[r]) != x.act[r].mul(&alpha) {
                return false;
            }
        }
    }
    true
}

/// `Hom_S(m, H(X)) ≅ Hom_R(U(m), X)` by projection onto the degree-0
/// block. `m` is given in right form; `H(X)` is uncurried for the hom space.
pub fn check_adjunction_uh(ext: &Arc<ExtensionRing>, m: &FModule, x: &RModule) -> Result<bool> {
    let h = functor_h(ext, x);
    let hf = from_left_form(&h.module)?;
    let sm = morphism_space(m, &hf);
    let rb = rmodule_hom_basis(ext.base(), &m.x, x);
    if sm.len() != rb.len() {
        return Ok(false);
    }
    let pi = h.x_projection();
    let projected: Vec<Mat> = sm.iter().map(|psi| pi.mul(psi)).collect();
    Ok(independent(ext.base().field(), &projected))
}

/// `Hom_S(Z(X), m) ≅ Hom_R(X, K(m))`: every S-morphism out of `(X, 0)`
/// lands in the kernel of the structure maps.
pub fn check_adjunction_zk(ext: &Arc<ExtensionRing>, x: &RModule, m: &FModule) -> Result<bool> {
    let z = functor_z(ext, x);
    let sm = morphism_space(&z, m);
    let gm = crate::smodule::to_left_form(m)?;
    let k = functor_k(&gm);
    let rb = rmodule_hom_basis(ext.base(), x, &k.module);
    if sm.len() != rb.len() {
        return Ok(false);
    }
    for psi in &sm {
        let alpha = match k.incl.solve(psi) {
            Some(a) if k.incl.mul(&a) == *psi => a,
            _ => return Ok(false),
        };
        for r in 0..ext.base().dim() {
            if alpha.mul(&x.act[r]) != k.module.act[r].mul(&alpha) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Naturality of the `T ⊣ U` bijection in `X` along `alpha: X_a -> X_b`:
/// `T(alpha)` is an S-morphism and restriction commutes with it.
pub fn check_tu_naturality(
    ext: &Arc<ExtensionRing>,
    xa: &RModule,
    xb: &RModule,
    alpha: &Mat,
    m: &FModule,
) -> bool {
    let ta = functor_t(ext, xa);
    let tb = functor_t(ext, xb);
    let tmap = t_on_morphism(&ta, &tb, alpha);
    if !crate::smodule::is_fmorphism(&ta.module, &tb.module, &tmap) {
        return false;
    }
    let incl_a = ta.x_inclusion();
    let incl_b = tb.x_inclusion();
    for psi in morphism_space(&tb.module, m) {
        if psi.mul(&tmap).mul(&incl_a) != psi.mul(&incl_b).mul(alpha) {
            return false;
        }
    }
    true
}

/// Naturality of the `U ⊣ H` bijection in `X` along `alpha: X_a -> X_b`:
/// `H(alpha)` is an S-morphism and projection commutes with it.
pub fn check_uh_naturality(
    ext: &Arc<ExtensionRing>,
    xa: &RModule,
    xb: &RModule,
    alpha: &Mat,
    m: &FModule,
) -> Result<bool> {
    let ha = functor_h(ext, xa);
    let hb = functor_h(ext, xb);
    let hmap = h_on_morphism(&ha, &hb, alpha);
    if !crate::smodule::is_gmorphism(&ha.module, &hb.module, &hmap) {
        return Ok(false);
    }
    let hfa = from_left_form(&ha.module)?;
    let pi_a = ha.x_projection();
    let pi_b = hb.x_projection();
    for psi in morphism_space(m, &hfa) {
        if pi_b.mul(&hmap).mul(&psi) != alpha.mul(&pi_a).mul(&psi) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Naturality of the `C ⊣ Z` bijection in `m` along an S-morphism
/// `beta: m_a -> m_b`: factoring commutes with `C(beta)`.
pub fn check_cz_naturality(
    ext: &Arc<ExtensionRing>,
    ma: &FModule,
    mb: &FModule,
    beta: &Mat,
    x: &RModule,
) -> bool {
    let ca = functor_c(ma);
    let cb = functor_c(mb);
    let cmap = c_on_morphism(&ca, &cb, beta);
    let z = functor_z(ext, x);
    for psi in morphism_space(mb, &z) {
        if psi.mul(beta).mul(&ca.section) != psi.mul(&cb.section).mul(&cmap) {
            return false;
        }
    }
    true
}

/// Naturality of the `Z ⊣ K` bijection in `m` along an S-morphism
/// `beta: m_a -> m_b`: corestriction commutes with `K(beta)`.
pub fn check_zk_naturality(
    ext: &Arc<ExtensionRing>,
    ma: &FModule,
    mb: &FModule,
    beta: &Mat,
    x: &RModule,
) -> Result<bool> {
    let ga = crate::smodule::to_left_form(ma)?;
    let gb = crate::smodule::to_left_form(mb)?;
    let ka = functor_k(&ga);
    let kb = functor_k(&gb);
    let kmap = match k_on_morphism(&ka, &kb, beta) {
        Some(k) => k,
        None => return Ok(false),
    };
    let z = functor_z(ext, x);
    for psi in morphism_space(&z, ma) {
        let alpha_a = match ka.incl.solve(&psi) {
            Some(a) if ka.incl.mul(&a) == psi => a,
            _ => return Ok(false),
        };
        let composed = beta.mul(&psi);
        let alpha_b = match kb.incl.solve(&composed) {
            Some(a) if kb.incl.mul(&a) == composed => a,
            _ => return Ok(false),
        };
        if kmap.mul(&alpha_a) != alpha_b {
            return Ok(false);
        }
    }
    Ok(true)
}
