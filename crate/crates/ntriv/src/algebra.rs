//! Finite-dimensional associative unital `F_p`-algebras presented by
//! structure constants, plain left modules over them, and a best-effort
//! algebra isomorphism search.

use crate::linalg::{unit_vec, Mat, PrimeField};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// An algebra `R` of dimension `d` over `F_p`, given by the coordinate
/// vectors of all basis products `e_i * e_j` and of the unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureAlgebra {
    field: PrimeField,
    dim: usize,
    /// `mult[i][j]` is the coordinate vector of `e_i * e_j`.
    mult: Vec<Vec<Vec<u32>>>,
    unit: Vec<u32>,
}

/// One violated axiom found by [`StructureAlgebra::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraViolation {
    /// `(e_i e_j) e_k != e_i (e_j e_k)`.
    Associativity { i: usize, j: usize, k: usize },
    /// `1 * e_i != e_i`.
    LeftUnit { i: usize },
    /// `e_i * 1 != e_i`.
    RightUnit { i: usize },
}

impl std::fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AlgebraViolation::Associativity { i, j, k } => {
                write!(f, "associativity fails on basis triple ({i}, {j}, {k})")
            }
            AlgebraViolation::LeftUnit { i } => write!(f, "1 * e_{i} != e_{i}"),
            AlgebraViolation::RightUnit { i } => write!(f, "e_{i} * 1 != e_{i}"),
        }
    }
}

impl StructureAlgebra {
    pub fn new(
        field: PrimeField,
        dim: usize,
        mult: Vec<Vec<Vec<u32>>>,
        unit: Vec<u32>,
    ) -> Result<Self> {
        if mult.len() != dim
            || mult.iter().any(|row| row.len() != dim)
            || mult.iter().flatten().any(|v| v.len() != dim)
            || unit.len() != dim
        {
            return Err(Error::Shape(format!(
                "structure constants inconsistent with dim {dim}"
            )));
        }
        for &v in mult.iter().flatten().flatten().chain(unit.iter()) {
            if v >= field.p() {
                return Err(Error::EntryRange { value: v, p: field.p() });
            }
        }
        Ok(StructureAlgebra {
            field,
            dim,
            mult,
            unit,
        })
    }

    /// The prime field `F_p` itself as a one-dimensional algebra.
    pub fn prime_field(field: PrimeField) -> Self {
        StructureAlgebra {
            field,
            dim: 1,
            mult: vec![vec![vec![1]]],
            unit: vec![1],
        }
    }

    /// The truncated polynomial algebra `F_p[x]/(x^(d))`, basis `1, x, …, x^(d-1)`.
    pub fn truncated_polynomial(field: PrimeField, d: usize) -> Self {
        assert!(d >= 1);
        let mut mult = vec![vec![vec![0; d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                if i + j < d {
                    mult[i][j][i + j] = 1;
                }
            }
        }
        StructureAlgebra {
            field,
            dim: d,
            mult,
            unit: unit_vec(d, 0),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[u32] {
        &self.unit
    }

    /// Coordinates of `e_i * e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[u32] {
        &self.mult[i][j]
    }

    /// Bilinear extension of the table.
    pub fn mul_coords(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        let f = self.field;
        let mut out = vec![0u32; self.dim];
        for i in 0..self.dim {
            if x[i] == 0 {
                continue;
            }
            for j in 0..self.dim {
                if y[j] == 0 {
                    continue;
                }
                let c = f.mul(x[i], y[j]);
                for k in 0..self.dim {
                    out[k] = f.add(out[k], f.mul(c, self.mult[i][j][k]));
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `x`: columns are `x * e_j`.
    pub fn left_regular(&self, x: &[u32]) -> Mat {
        let mut m = Mat::zero(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul_coords(x, &unit_vec(self.dim, j));
            for i in 0..self.dim {
                m.set(i, j, col[i]);
            }
        }
        m
    }

    /// Matrix of right multiplication by `x`: columns are `e_j * x`.
    pub fn right_regular(&self, x: &[u32]) -> Mat {
        let mut m = Mat::zero(self.field, self.dim, self.dim);
        for j in 0..self.dim {
            let col = self.mul_coords(&unit_vec(self.dim, j), x);
            for i in 0..self.dim {
                m.set(i, j, col[i]);
            }
        }
        m
    }

    /// The opposite algebra: `e_i *^op e_j = e_j * e_i`.
    pub fn opposite(&self) -> StructureAlgebra {
        let mut mult = vec![vec![vec![0; self.dim]; self.dim]; self.dim];
        for i in 0..self.dim {
            for j in 0..self.dim {
                mult[i][j] = self.mult[j][i].clone();
            }
        }
        StructureAlgebra {
            field: self.field,
            dim: self.dim,
            mult,
            unit: self.unit.clone(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..self.dim).all(|j| self.mult[i][j] == self.mult[j][i]))
    }

    /// The nilradical of a commutative algebra, found by enumerating all
    /// elements (feasible only for `p^dim <= 2^16`). In characteristic p the
    /// nilpotent elements of a commutative ring form a subspace.
    pub fn nilradical(&self) -> crate::Result<crate::linalg::Subspace> {
        if !self.is_commutative() {
            return Err(Error::Invalid("nilradical needs a commutative algebra".into()));
        }
        let p = self.field.p() as u64;
        let count = (p as u128).checked_pow(self.dim as u32);
        match count {
            Some(c) if c <= 1 << 16 => {}
            _ => return Err(Error::Invalid("ring too large to enumerate nilpotents".into())),
        }
        let mut rows = Mat::zero(self.field, 0, self.dim);
        let mut v = vec![0u32; self.dim];
        loop {
            let l = self.left_regular(&v);
            let mut pow = Mat::identity(self.field, self.dim);
            for _ in 0..self.dim {
                pow = pow.mul(&l);
            }
            if pow.is_zero() {
                let row: Vec<i64> = v.iter().map(|&c| c as i64).collect();
                rows = rows.vstack(&Mat::from_rows(self.field, &[row]));
            }
            // odometer over F_p^dim
            let mut pos = 0;
            while pos < self.dim {
                v[pos] += 1;
                if (v[pos] as u64) < p {
                    break;
                }
                v[pos] = 0;
                pos += 1;
            }
            if pos == self.dim {
                break;
            }
        }
        Ok(crate::linalg::Subspace::from_span(self.dim, &rows))
    }

    /// Full enumeration of the associativity and unit axioms. The report is
    /// empty iff the table presents a unital associative algebra.
    pub fn validate(&self) -> Vec<AlgebraViolation> {
        let mut report = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let ei = unit_vec(self.dim, i);
                    let jk = self.mul_coords(&self.mult[i][j].clone(), &unit_vec(self.dim, k));
                    let ijk = self.mul_coords(&ei, &self.mult[j][k]);
                    if jk != ijk {
                        report.push(AlgebraViolation::Associativity { i, j, k });
                    }
                }
            }
        }
        for i in 0..self.dim {
            let ei = unit_vec(self.dim, i);
            if self.mul_coords(&self.unit, &ei) != ei {
                report.push(AlgebraViolation::LeftUnit { i });
            }
            if self.mul_coords(&ei, &self.unit) != ei {
                report.push(AlgebraViolation::RightUnit { i });
            }
        }
        report
    }

    /// The regular left module `R` over itself.
    pub fn regular_module(&self) -> RModule {
        let act = (0..self.dim)
            .map(|i| self.left_regular(&unit_vec(self.dim, i)))
            .collect();
        RModule {
            field: self.field,
            ring_dim: self.dim,
            dim: self.dim,
            act,
        }
    }
}

/// A finite left module over a [`StructureAlgebra`]: a carrier dimension and
/// one action matrix per ring basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RModule {
    pub field: PrimeField,
    pub ring_dim: usize,
    pub dim: usize,
    /// `act[i]` is the matrix of the action of `e_i`.
    pub act: Vec<Mat>,
}

impl RModule {
    pub fn zero(ring: &StructureAlgebra) -> Self {
        RModule {
            field: ring.field(),
            ring_dim: ring.dim(),
            dim: 0,
            act: (0..ring.dim()).map(|_| Mat::zero(ring.field(), 0, 0)).collect(),
        }
    }

    /// Matrix of the action of an arbitrary ring element.
    pub fn act_by(&self, r: &[u32]) -> Mat {
        assert_eq!(r.len(), self.ring_dim);
        let mut m = Mat::zero(self.field, self.dim, self.dim);
        for (i, &c) in r.iter().enumerate() {
            if c != 0 {
                m = m.add(&self.act[i].scale(c));
            }
        }
        m
    }

    /// Checks that the action is a unital algebra map.
    pub fn validate(&self, ring: &StructureAlgebra) -> Vec<String> {
        let mut report = Vec::new();
        if self.act.len() != ring.dim() || self.ring_dim != ring.dim() {
            report.push("action table length differs from ring dimension".into());
            return report;
        }
        for (i, m) in self.act.iter().enumerate() {
            if m.rows() != self.dim || m.cols() != self.dim {
                report.push(format!("act[{i}] has wrong shape"));
                return report;
            }
        }
        if self.act_by(ring.unit()) != Mat::identity(self.field, self.dim) {
            report.push("unit does not act as identity".into());
        }
        for i in 0..ring.dim() {
            for j in 0..ring.dim() {
                let lhs = self.act_by(ring.basis_product(i, j));
                let rhs = self.act[i].mul(&self.act[j]);
                if lhs != rhs {
                    report.push(format!("action not multiplicative on basis pair ({i}, {j})"));
                }
            }
        }
        report
    }

    /// Direct sum, blocks in the given order.
    pub fn direct_sum(&self, other: &RModule) -> RModule {
        assert_eq!(self.ring_dim, other.ring_dim);
        let act = self
            .act
            .iter()
            .zip(&other.act)
            .map(|(a, b)| {
                let mut m = Mat::zero(self.field, self.dim + other.dim, self.dim + other.dim);
                m.paste(0, 0, a);
                m.paste(self.dim, self.dim, b);
                m
            })
            .collect();
        RModule {
            field: self.field,
            ring_dim: self.ring_dim,
            dim: self.dim + other.dim,
            act,
        }
    }

    /// Smallest action-stable subspace containing `seed`.
    pub fn stable_closure(&self, seed: &crate::linalg::Subspace) -> crate::linalg::Subspace {
        assert_eq!(seed.ambient_dim(), self.dim);
        let mut span = seed.clone();
        loop {
            let mut grown = span.clone();
            for m in &self.act {
                let moved = span.basis().mul(&m.transpose()); // rows are m·v
                grown = grown.sum(&crate::linalg::Subspace::from_span(self.dim, &moved));
            }
            if grown.dim() == span.dim() {
                return grown;
            }
            span = grown;
        }
    }

    /// The submodule carried by an action-stable subspace, in the subspace's
    /// own basis coordinates.
    pub fn submodule(&self, sub: &crate::linalg::Subspace) -> RModule {
        let basis_t = sub.basis().transpose(); // columns are basis vectors
        let act = self
            .act
            .iter()
            .map(|m| {
                basis_t
                    .solve(&m.mul(&basis_t))
                    .expect("subspace must be action-stable")
            })
            .collect();
        RModule {
            field: self.field,
            ring_dim: self.ring_dim,
            dim: sub.dim(),
            act,
        }
    }

    /// The quotient module by an action-stable subspace, with its
    /// deterministic projection and section.
    pub fn quotient(&self, sub: &crate::linalg::Subspace) -> (RModule, Mat, Mat) {
        let (proj, section) = crate::linalg::quotient_map(self.field, self.dim, sub);
        let act = self
            .act
            .iter()
            .map(|m| proj.mul(m).mul(&section))
            .collect();
        (
            RModule {
                field: self.field,
                ring_dim: self.ring_dim,
                dim: proj.rows(),
                act,
            },
            proj,
            section,
        )
    }

    /// Seeded random quotient of the free module `ring^free_rank` by the
    /// submodule generated by `num_generators` random vectors. Deterministic
    /// for a fixed seed, and always a valid module.
    pub fn random_quotient(
        ring: &StructureAlgebra,
        free_rank: usize,
        num_generators: usize,
        seed: u64,
    ) -> RModule {
        let mut free = ring.regular_module();
        for _ in 1..free_rank {
            free = free.direct_sum(&ring.regular_module());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let dim = free.dim;
        let mut rows = Mat::zero(ring.field(), 0, dim);
        for _ in 0..num_generators {
            let v: Vec<i64> = (0..dim)
                .map(|_| rng.gen_range(0..ring.field().p()) as i64)
                .collect();
            rows = rows.vstack(&Mat::from_rows(ring.field(), &[v]));
        }
        let sub = free.stable_closure(&crate::linalg::Subspace::from_span(dim, &rows));
        free.quotient(&sub).0
    }

    /// The `F_p`-dual as a left module over the opposite ring: the action of
    /// `e_i` is the transpose of the original action.
    pub fn dual(&self) -> RModule {
        RModule {
            field: self.field,
            ring_dim: self.ring_dim,
            dim: self.dim,
            act: self.act.iter().map(Mat::transpose).collect(),
        }
    }
}

/// Outcome of an isomorphism search. `Yes` always carries a verified witness;
/// `No` is only returned on a proof (dimension obstruction or exhausted
/// complete enumeration).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IsoVerdict {
    Yes(Mat),
    No,
    Inconclusive,
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }
}

/// Greedily picks basis indices of `a` that generate it as a unital algebra,
/// and returns `(generator indices, words, word-coordinate basis)` where
/// `words` index into previously built elements so the same products can be
/// replayed inside another algebra.
///
/// A word is either `Unit`, `Gen(g)`, or `Prod(u, v)` referring to earlier
/// word positions; the selected words have linearly independent coordinates
/// spanning `a`.
#[derive(Debug, Clone)]
enum Word {
    Unit,
    Gen(usize),
    Prod(usize, usize),
}

struct GeneratorPresentation {
    generators: Vec<usize>,
    /// All words built, in construction order.
    words: Vec<Word>,
    /// Indices of words whose coordinates form a basis of the algebra.
    basis_words: Vec<usize>,
    /// Change of basis: row `k` = coordinates of `words[basis_words[k]]`.
    basis_coords: Mat,
}

fn generator_presentation(a: &StructureAlgebra) -> GeneratorPresentation {
    let f = a.field();
    let d = a.dim();
    let mut generators = Vec::new();
    // Closure of the span of words under products with generators.
    let close = |gens: &[usize]| -> (Vec<Word>, Vec<Vec<u32>>) {
        let mut words = vec![Word::Unit];
        let mut coords: Vec<Vec<u32>> = vec![a.unit().to_vec()];
        for &g in gens {
            words.push(Word::Gen(g));
            coords.push(unit_vec(d, g));
        }
        let mut span = Mat::from_entries(f, 0, d, vec![]).unwrap();
        let mut frontier: Vec<usize> = (0..words.len()).collect();
        let mut independent: Vec<usize> = Vec::new();
        while let Some(w) = frontier.pop() {
            let cand = Mat::col_vec(f, &coords[w]).transpose();
            let grown = span.vstack(&cand);
            if grown.rank() > span.rank() {
                span = grown;
                independent.push(w);
                // multiply by every generator word on both sides
                for gi in 0..gens.len() {
                    let gword = 1 + gi;
                    let left = a.mul_coords(&coords[gword], &coords[w]);
                    words.push(Word::Prod(gword, w));
                    coords.push(left);
                    frontier.push(words.len() - 1);
                    let right = a.mul_coords(&coords[w], &coords[gword]);
                    words.push(Word::Prod(w, gword));
                    coords.push(right);
                    frontier.push(words.len() - 1);
                }
            }
        }
        (words, coords)
    };
    loop {
        let (words, coords) = close(&generators);
        // collect a basis of the generated subalgebra
        let mut span = Mat::from_entries(f, 0, d, vec![]).unwrap();
        let mut basis_words = Vec::new();
        for (w, c) in coords.iter().enumerate() {
            let grown = span.vstack(&Mat::col_vec(f, c).transpose());
            if grown.rank() > span.rank() {
                span = grown;
                basis_words.push(w);
            }
        }
        if span.rank() == d {
            return GeneratorPresentation {
                generators,
                words,
                basis_words,
                basis_coords: span,
            };
        }
        // Add the first basis vector outside the generated subalgebra.
        let missing = (0..d)
            .find(|&i| {
                let grown = span.vstack(&Mat::col_vec(f, &unit_vec(d, i)).transpose());
                grown.rank() > span.rank()
            })
            .expect("proper subalgebra must miss a basis vector");
        generators.push(missing);
    }
}

/// Replays the word list of a presentation with chosen generator images in
/// `b`; returns coordinates of every word.
fn replay_words(
    pres: &GeneratorPresentation,
    b: &StructureAlgebra,
    images: &[Vec<u32>],
) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = Vec::with_capacity(pres.words.len());
    for w in &pres.words {
        let c = match w {
            Word::Unit => b.unit().to_vec(),
            Word::Gen(g) => {
                let gi = pres.generators.iter().position(|&x| x == *g).unwrap();
                images[gi].clone()
            }
            Word::Prod(u, v) => b.mul_coords(&out[*u], &out[*v]),
        };
        out.push(c);
    }
    out
}

/// Checks that `w` is an algebra isomorphism `a -> b` (unit, products, invertible).
pub fn verify_algebra_witness(a: &StructureAlgebra, b: &StructureAlgebra, w: &Mat) -> bool {
    if a.dim() != b.dim() || w.rows() != a.dim() || w.cols() != a.dim() || !w.is_invertible() {
        return false;
    }
    if w.apply(a.unit()) != b.unit() {
        return false;
    }
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let lhs = w.apply(a.basis_product(i, j));
            let rhs = b.mul_coords(&w.col(i), &w.col(j));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Searches for an algebra isomorphism `a -> b`.
///
/// Any isomorphism is determined by its values on a generating set of `a`,
/// so the search enumerates generator images in `b` and extends
/// multiplicatively. When the image space `p^(dim * #generators)` fits the
/// budget the enumeration is complete and exhaustion proves `No`; otherwise
/// `budget` seeded random assignments are tried and failure is
/// `Inconclusive`.
pub fn algebras_isomorphic(
    a: &StructureAlgebra,
    b: &StructureAlgebra,
    budget: u64,
    seed: u64,
) -> IsoVerdict {
    if a.dim() != b.dim() {
        return IsoVerdict::No;
    }
    let d = a.dim();
    if d == 0 {
        return IsoVerdict::Yes(Mat::zero(a.field(), 0, 0));
    }
    let p = a.field().p() as u64;
    let pres = generator_presentation(a);
    let g = pres.generators.len();

    let try_images = |images: &[Vec<u32>]| -> Option<Mat> {
        let coords = replay_words(&pres, b, images);
        // Witness maps the word basis of `a` to the replayed words of `b`.
        // Solve  W * basis_coords^T = replayed^T  for W.
        let mut replayed = Mat::zero(a.field(), pres.basis_words.len(), d);
        for (k, &w) in pres.basis_words.iter().enumerate() {
            for j in 0..d {
                replayed.set(k, j, coords[w][j]);
            }
        }
        // basis_coords * W^T = replayed, i.e. W sends each word basis vector
        // of `a` to the corresponding replayed product in `b`.
        let w = pres.basis_coords.solve(&replayed)?.transpose();
        if verify_algebra_witness(a, b, &w) {
            Some(w)
        } else {
            None
        }
    };

    // Identity shortcut keeps `a vs a` cheap and gives the identity witness.
    if a == b {
        let id = Mat::identity(a.field(), d);
        if verify_algebra_witness(a, b, &id) {
            return IsoVerdict::Yes(id);
        }
    }

    let space: Option<u64> = p.checked_pow((d * g) as u32);
    match space {
        Some(total) if total <= budget => {
            for idx in 0..total {
                let mut rem = idx;
                let mut images = Vec::with_capacity(g);
                for _ in 0..g {
                    let mut v = vec![0u32; d];
                    for slot in v.iter_mut() {
                        *slot = (rem % p) as u32;
                        rem /= p;
                    }
                    images.push(v);
                }
                if let Some(w) = try_images(&images) {
                    return IsoVerdict::Yes(w);
                }
            }
            IsoVerdict::No
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..budget {
                let images: Vec<Vec<u32>> = (0..g)
                    .map(|_| (0..d).map(|_| rng.gen_range(0..p as u32)).collect())
                    .collect();
                if let Some(w) = try_images(&images) {
                    return IsoVerdict::Yes(w);
                }
            }
            IsoVerdict::Inconclusive
        }
    }
}

/// Searches for an R-module isomorphism between two plain modules.
/// Complete when `p^dim(hom)` fits the budget.
pub fn rmodules_isomorphic(
    ring: &StructureAlgebra,
    a: &RModule,
    b: &RModule,
    budget: u64,
    seed: u64,
) -> IsoVerdict {
    if a.dim != b.dim {
        return IsoVerdict::No;
    }
    if a.dim == 0 {
        return IsoVerdict::Yes(Mat::zero(a.field, 0, 0));
    }
    let basis = rmodule_hom_basis(ring, a, b);
    search_invertible_combination(a.field, &basis, a.dim, budget, seed)
}

/// Basis of the space of R-linear maps `a -> b` as matrices.
pub fn rmodule_hom_basis(ring: &StructureAlgebra, a: &RModule, b: &RModule) -> Vec<Mat> {
    let f = a.field;
    let (da, db) = (a.dim, b.dim);
    if da == 0 || db == 0 {
        return vec![];
    }
    // Unknown h (db x da), vectorized row-major: vec(A h B) = kron(A, B^T) vec(h).
    let mut constraints: Vec<Mat> = Vec::new();
    let id_a = Mat::identity(f, da);
    let id_b = Mat::identity(f, db);
    for r in 0..ring.dim() {
        let lhs = id_b.kron(&a.act[r].transpose());
        let rhs = b.act[r].kron(&id_a);
        constraints.push(lhs.sub(&rhs));
    }
    let system = Mat::vstack_all(&constraints);
    let kernel = system.kernel();
    (0..kernel.dim())
        .map(|k| {
            let v = kernel.basis().row(k);
            Mat::from_entries(f, db, da, v.to_vec()).unwrap()
        })
        .collect()
}

/// Searches the span of `basis` for an invertible `dim x dim` matrix.
/// Exhaustive when `p^len(basis) <= budget`, else seeded random sampling.
pub fn search_invertible_combination(
    field: PrimeField,
    basis: &[Mat],
    dim: usize,
    budget: u64,
    seed: u64,
) -> IsoVerdict {
    if basis.is_empty() {
        return IsoVerdict::No;
    }
    let p = field.p() as u64;
    let combine = |coeffs: &[u32]| -> Mat {
        let mut m = Mat::zero(field, dim, dim);
        for (c, b) in coeffs.iter().zip(basis) {
            if *c != 0 {
                m = m.add(&b.scale(*c));
            }
        }
        m
    };
    match p.checked_pow(basis.len() as u32) {
        Some(total) if total <= budget => {
            for idx in 1..total {
                let mut rem = idx;
                let coeffs: Vec<u32> = (0..basis.len())
                    .map(|_| {
                        let c = (rem % p) as u32;
                        rem /= p;
                        c
                    })
                    .collect();
                let m = combine(&coeffs);
                if m.is_invertible() {
                    return IsoVerdict::Yes(m);
                }
            }
            IsoVerdict::No
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..budget {
                let coeffs: Vec<u32> = (0..basis.len())
                    .map(|_| rng.gen_range(0..p as u32))
                    .collect();
                let m = combine(&coeffs);
                if m.is_invertible() {
                    return IsoVerdict::Yes(m);
                }
            }
            IsoVerdict::Inconclusive
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn prime_field_algebra_is_valid() {
        let a = StructureAlgebra::prime_field(f(5));
        assert!(a.validate().is_empty());
    }

    #[test]
    fn broken_unit_reported() {
        // e0 * e0 = 0 with unit e0 contradicts the unit axiom
        let a = StructureAlgebra::new(f(2), 1, vec![vec![vec![0]]], vec![1]).unwrap();
        let report = a.validate();
        assert!(report
            .iter()
            .any(|v| matches!(v, AlgebraViolation::LeftUnit { .. } | AlgebraViolation::RightUnit { .. })));
    }

    #[test]
    fn truncated_polynomial_is_valid() {
        // F_2[x]/(x^3): 27 associativity triples all pass
        let a = StructureAlgebra::truncated_polynomial(f(2), 3);
        assert!(a.validate().is_empty());
        // e1 * e2 = x^3 = 0
        assert_eq!(
            a.mul_coords(&unit_vec(3, 1), &unit_vec(3, 2)),
            vec![0, 0, 0]
        );
    }

    #[test]
    fn mul_unit_and_zero() {
        let a = StructureAlgebra::truncated_polynomial(f(3), 2);
        let y = vec![1, 2];
        assert_eq!(a.mul_coords(a.unit(), &y), y);
        assert_eq!(a.mul_coords(&[0, 0], &y), vec![0, 0]);
    }

    #[test]
    fn left_regular_of_unit_and_zero() {
        let a = StructureAlgebra::truncated_polynomial(f(2), 3);
        assert_eq!(a.left_regular(a.unit()), Mat::identity(f(2), 3));
        assert!(a.left_regular(&[0, 0, 0]).is_zero());
    }

    #[test]
    fn left_regular_shift() {
        // multiplication by x in F_2[x]/(x^3) shifts basis: e0 -> e1 -> e2 -> 0
        let a = StructureAlgebra::truncated_polynomial(f(2), 3);
        let m = a.left_regular(&unit_vec(3, 1));
        let expected = Mat::from_rows(f(2), &[vec![0, 0, 0], vec![1, 0, 0], vec![0, 1, 0]]);
        assert_eq!(m, expected);
    }

    #[test]
    fn left_regular_is_multiplicative() {
        let a = StructureAlgebra::truncated_polynomial(f(3), 3);
        for i in 0..3 {
            for j in 0..3 {
                let lhs = a.left_regular(&a.mul_coords(&unit_vec(3, i), &unit_vec(3, j)));
                let rhs = a
                    .left_regular(&unit_vec(3, i))
                    .mul(&a.left_regular(&unit_vec(3, j)));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let a = StructureAlgebra::truncated_polynomial(f(2), 3);
        match algebras_isomorphic(&a, &a, 10_000, 0) {
            IsoVerdict::Yes(w) => assert_eq!(w, Mat::identity(f(2), 3)),
            v => panic!("expected yes, got {v:?}"),
        }
    }

    #[test]
    fn dim_mismatch_is_no() {
        let a = StructureAlgebra::prime_field(f(2));
        let b = StructureAlgebra::truncated_polynomial(f(2), 2);
        assert_eq!(algebras_isomorphic(&a, &b, 100, 0), IsoVerdict::No);
    }

    #[test]
    fn regular_module_validates() {
        let a = StructureAlgebra::truncated_polynomial(f(2), 3);
        assert!(a.regular_module().validate(&a).is_empty());
    }

    #[test]
    fn opposite_of_commutative_is_equal() {
        let a = StructureAlgebra::truncated_polynomial(f(3), 3);
        assert!(a.is_commutative());
        assert_eq!(a.opposite(), a);
    }

    #[test]
    fn rmodule_hom_over_prime_field_is_full_matrix_space() {
        let r = StructureAlgebra::prime_field(f(2));
        let m = r.regular_module();
        let m2 = m.direct_sum(&m);
        assert_eq!(rmodule_hom_basis(&r, &m2, &m2).len(), 4);
    }

    #[test]
    fn rmodule_self_iso() {
        let r = StructureAlgebra::truncated_polynomial(f(2), 2);
        let m = r.regular_module();
        assert!(rmodules_isomorphic(&r, &m, &m, 1000, 0).is_yes());
    }

    #[test]
    fn nilradical_of_field_is_zero() {
        let r = StructureAlgebra::prime_field(f(5));
        assert_eq!(r.nilradical().unwrap().dim(), 0);
    }

    #[test]
    fn nilradical_of_truncated_polynomial_is_x() {
        let r = StructureAlgebra::truncated_polynomial(f(2), 3);
        let rad = r.nilradical().unwrap();
        assert_eq!(rad.dim(), 2);
        assert!(rad.contains(&[0, 1, 0]));
        assert!(rad.contains(&[0, 0, 1]));
        assert!(!rad.contains(&[1, 0, 0]));
    }

    #[test]
    fn random_quotient_is_valid() {
        let r = StructureAlgebra::truncated_polynomial(f(3), 2);
        for seed in 0..10 {
            let m = RModule::random_quotient(&r, 2, 1, seed);
            assert!(m.validate(&r).is_empty(), "seed {seed}");
        }
    }
}
