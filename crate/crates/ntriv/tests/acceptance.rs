//! Acceptance suite for the whole artifact, one test per criterion, each
//! printing a single pass/fail line (visible with --nocapture).
//!
//! Corpus: base rings F2, F3, F2[x]/(x^2); n from 1 to 3; each degree
//! component one of 0, R, R/rad with the induced pairings; modules
//! enumerated exhaustively per instance under a candidate budget of 1e5.

use ntriv::algebra::{
    algebras_isomorphic, rmodule_hom_basis, IsoVerdict, RModule, StructureAlgebra,
};
use ntriv::bimodule::canonical_regular_system;
use ntriv::extension::{build_extension, ExtensionRing};
use ntriv::functors::{
    check_adjunction_cz, check_adjunction_tu, check_adjunction_uh, check_adjunction_zk,
    check_cz_naturality, check_tu_naturality, check_uh_naturality, check_zk_naturality, ct_iso,
    functor_h, functor_t, functor_u, functor_z, kh_iso,
};
use ntriv::homtests::{
    check_selfinj_theorem, enumerate_fmodules, injective_duality_oracle, inj_dimension,
    is_flat, is_injective, is_projective, lifting_oracle, module_injective, module_pd,
    module_projective, perfect_desk_check, proj_dimension, random_split_carrier_module,
    standard_corpus, CorpusInstance, Dimension, Verdict,
};
use ntriv::linalg::{unit_vec, Mat, PrimeField, Subspace};
use ntriv::smodule::{
    morphism_space, random_quotient_saction, saction_to_fmodule, FModule,
};
use std::sync::Arc;

const BUDGET: u64 = 1 << 20;
const SEED: u64 = 0;
const ENUM_BUDGET: u128 = 100_000;

fn criterion(n: usize, name: &str, body: impl FnOnce() + std::panic::UnwindSafe) {
    let result = std::panic::catch_unwind(body);
    match &result {
        Ok(()) => println!("criterion {n} ({name}): pass"),
        Err(_) => println!("criterion {n} ({name}): fail"),
    }
    if let Err(e) = result {
        std::panic::resume_unwind(e);
    }
}

fn corpus() -> Vec<CorpusInstance> {
    standard_corpus().expect("corpus builds")
}

/// All module structures over the base ring on carriers up to `max_dim`,
/// by exhausting the action of each non-unit basis element.
fn enumerate_rmodules(ring: &StructureAlgebra, max_dim: usize) -> Vec<RModule> {
    let f = ring.field();
    let rd = ring.dim();
    let unit_pos = (0..rd)
        .find(|&u| {
            ring.unit()
                .iter()
                .enumerate()
                .all(|(i, &v)| if i == u { v == 1 } else { v == 0 })
        })
        .expect("unit is a basis vector for all corpus rings");
    let mut out = Vec::new();
    for d in 0..=max_dim {
        let params = (rd - 1) * d * d;
        let mut digits = vec![0u32; params];
        loop {
            let mut act = Vec::with_capacity(rd);
            let mut pos = 0;
            for a in 0..rd {
                if a == unit_pos {
                    act.push(Mat::identity(f, d));
                } else {
                    act.push(
                        Mat::from_entries(f, d, d, digits[pos..pos + d * d].to_vec()).unwrap(),
                    );
                    pos += d * d;
                }
            }
            let x = RModule {
                field: f,
                ring_dim: rd,
                dim: d,
                act,
            };
            if x.validate(ring).is_empty() {
                out.push(x);
            }
            let mut carry = 0;
            while carry < params {
                digits[carry] += 1;
                if digits[carry] < f.p() {
                    break;
                }
                digits[carry] = 0;
                carry += 1;
            }
            if carry == params {
                break;
            }
        }
    }
    out
}

fn serial_exts() -> Vec<(u64, usize, Arc<ExtensionRing>)> {
    let mut out = Vec::new();
    for p in [2u64, 3] {
        for n in 1..=3usize {
            let r = StructureAlgebra::prime_field(PrimeField::new(p).unwrap());
            let ext = Arc::new(build_extension(&r, canonical_regular_system(&r, n)).unwrap());
            out.push((p, n, ext));
        }
    }
    out
}

fn regular_fmodule(ext: &Arc<ExtensionRing>) -> FModule {
    saction_to_fmodule(&ext.total().regular_module(), ext).unwrap()
}

#[test]
fn criterion_1_ring_construction() {
    criterion(1, "ring construction", || {
        for inst in corpus() {
            let ext = &inst.ext;
            let total = ext.total();
            assert!(total.validate().is_empty(), "{}", inst.name);
            let component_sum: usize = (1..=ext.n()).map(|i| ext.component_dim(i)).sum();
            assert_eq!(ext.dim(), ext.base().dim() + component_sum, "{}", inst.name);
            // the positive-degree ideal is (n+1)-step nilpotent
            let dim = ext.dim();
            let positive: Vec<Vec<u32>> = (ext.offset(1)..dim)
                .map(|i| unit_vec(dim, i))
                .collect();
            let mut power: Vec<Vec<u32>> = positive.clone();
            for _ in 0..ext.n() {
                let mut rows = Mat::zero(total.field(), 0, dim);
                for a in &power {
                    for b in &positive {
                        rows = rows.vstack(&Mat::from_entries(
                            total.field(),
                            1,
                            dim,
                            total.mul_coords(a, b),
                        )
                        .unwrap());
                    }
                }
                let span = Subspace::from_span(dim, &rows);
                power = (0..span.dim()).map(|i| span.basis().row(i).to_vec()).collect();
            }
            assert!(power.is_empty(), "{}: positive ideal not nilpotent", inst.name);
        }
        // all components equal to the base prime field gives the serial ring
        for (p, n, ext) in serial_exts() {
            let truncated = StructureAlgebra::truncated_polynomial(
                PrimeField::new(p).unwrap(),
                n + 1,
            );
            let verdict = algebras_isomorphic(ext.total(), &truncated, BUDGET, SEED);
            let w = match &verdict {
                IsoVerdict::Yes(w) => w,
                other => panic!("p={p} n={n}: expected iso, got {other:?}"),
            };
            // independently re-verify the witness is multiplicative and unital
            assert_eq!(w.apply(ext.total().unit()), truncated.unit().to_vec());
            let d = ext.dim();
            for i in 0..d {
                for j in 0..d {
                    let lhs = w.apply(&ext.total().mul_coords(&unit_vec(d, i), &unit_vec(d, j)));
                    let rhs = truncated.mul_coords(&w.apply(&unit_vec(d, i)), &w.apply(&unit_vec(d, j)));
                    assert_eq!(lhs, rhs, "p={p} n={n}: witness not multiplicative");
                }
            }
        }
    });
}

#[test]
fn criterion_2_category_isomorphism() {
    criterion(2, "category isomorphism round-trip", || {
        for inst in corpus() {
            let ext = &inst.ext;
            for seed in 0..200u64 {
                let s = random_quotient_saction(ext, 2, 1, seed);
                let m = saction_to_fmodule(&s, ext).expect("valid S-action converts");
                let back = m.to_saction().expect("valid module converts back");
                assert_eq!(back.act, s.act, "{} seed {seed}", inst.name);
            }
            for seed in 0..50u64 {
                let sa = random_quotient_saction(ext, 1, 1, 1000 + 2 * seed);
                let sb = random_quotient_saction(ext, 1, 1, 1001 + 2 * seed);
                let ma = saction_to_fmodule(&sa, ext).unwrap();
                let mb = saction_to_fmodule(&sb, ext).unwrap();
                let structured = morphism_space(&ma, &mb).len();
                let raw = rmodule_hom_basis(ext.total(), &sa, &sb).len();
                assert_eq!(structured, raw, "{} seed {seed}", inst.name);
            }
        }
    });
}

#[test]
fn criterion_3_functor_identities_and_adjunctions() {
    criterion(3, "functor identities and adjunctions", || {
        let corpus = corpus();
        for inst in &corpus {
            let ext = &inst.ext;
            for x in enumerate_rmodules(ext.base(), 3) {
                let t = functor_t(ext, &x);
                assert!(ct_iso(&x, &t).is_some(), "{}: CT != id", inst.name);
                let z = functor_z(ext, &x);
                assert_eq!(functor_u(&z), x, "{}: UZ != id", inst.name);
                let h = functor_h(ext, &x);
                assert!(kh_iso(&x, &h).is_some(), "{}: KH != id", inst.name);
            }
            for seed in 0..2u64 {
                let m = saction_to_fmodule(&random_quotient_saction(ext, 1, 1, seed), ext).unwrap();
                let x = RModule::random_quotient(ext.base(), 2, 1, seed);
                assert!(check_adjunction_tu(ext, &x, &m), "{}: T-|U", inst.name);
                assert!(check_adjunction_cz(ext, &m, &x), "{}: C-|Z", inst.name);
                assert!(check_adjunction_uh(ext, &m, &x).unwrap(), "{}: U-|H", inst.name);
                assert!(check_adjunction_zk(ext, &x, &m).unwrap(), "{}: Z-|K", inst.name);
            }
        }
        // 20 sampled naturality squares per adjunction across the corpus
        for sq in 0..20u64 {
            let inst = &corpus[(sq as usize * 7) % corpus.len()];
            let ext = &inst.ext;
            let xa = RModule::random_quotient(ext.base(), 2, 1, 30 + sq);
            let xb = RModule::random_quotient(ext.base(), 2, 1, 60 + sq);
            let homs = rmodule_hom_basis(ext.base(), &xa, &xb);
            let alpha = homs
                .first()
                .cloned()
                .unwrap_or_else(|| Mat::zero(ext.base().field(), xb.dim, xa.dim));
            let m = saction_to_fmodule(&random_quotient_saction(ext, 1, 1, 90 + sq), ext).unwrap();
            assert!(check_tu_naturality(ext, &xa, &xb, &alpha, &m), "{} sq {sq}", inst.name);
            assert!(
                check_uh_naturality(ext, &xa, &xb, &alpha, &m).unwrap(),
                "{} sq {sq}",
                inst.name
            );
            let ma = saction_to_fmodule(&random_quotient_saction(ext, 1, 1, 120 + sq), ext).unwrap();
            let mb = saction_to_fmodule(&random_quotient_saction(ext, 1, 1, 150 + sq), ext).unwrap();
            let betas = morphism_space(&ma, &mb);
            let beta = betas
                .first()
                .cloned()
                .unwrap_or_else(|| Mat::zero(ext.base().field(), mb.dim_x(), ma.dim_x()));
            let x = RModule::random_quotient(ext.base(), 1, 1, 180 + sq);
            assert!(check_cz_naturality(ext, &ma, &mb, &beta, &x), "{} sq {sq}", inst.name);
            assert!(
                check_zk_naturality(ext, &ma, &mb, &beta, &x).unwrap(),
                "{} sq {sq}",
                inst.name
            );
        }
    });
}

#[test]
fn criterion_4_projectivity() {
    criterion(4, "projectivity vs lifting oracle", || {
        for inst in corpus() {
            let ext = &inst.ext;
            for m in enumerate_fmodules(ext, 3, ENUM_BUDGET) {
                let rep = is_projective(&m, BUDGET, SEED);
                assert_ne!(rep.verdict, Verdict::Inconclusive, "{}", inst.name);
                assert_eq!(
                    rep.verdict.is_yes(),
                    lifting_oracle(&m).unwrap(),
                    "{}: verdict disagrees with the lifting oracle",
                    inst.name
                );
            }
            // T of a projective base module is projective
            for x in enumerate_rmodules(ext.base(), 2) {
                if module_projective(ext.base(), &x).is_some() {
                    let t = functor_t(ext, &x);
                    assert!(
                        is_projective(&t.module, BUDGET, SEED).verdict.is_yes(),
                        "{}: T of projective not projective",
                        inst.name
                    );
                }
            }
            // the zero-action lift of R is not projective once S > R
            if ext.dim() > ext.base().dim() {
                let zr = functor_z(ext, &ext.base().regular_module());
                assert_eq!(
                    is_projective(&zr, BUDGET, SEED).verdict,
                    Verdict::No,
                    "{}",
                    inst.name
                );
            }
        }
    });
}

#[test]
fn criterion_5_injectivity() {
    criterion(5, "injectivity vs duality oracle", || {
        for inst in corpus() {
            let ext = &inst.ext;
            for m in enumerate_fmodules(ext, 3, ENUM_BUDGET) {
                let rep = is_injective(&m, BUDGET, SEED).unwrap();
                assert_ne!(rep.verdict, Verdict::Inconclusive, "{}", inst.name);
                let oracle = injective_duality_oracle(&m, BUDGET, SEED).unwrap();
                assert_eq!(
                    rep.verdict, oracle,
                    "{}: verdict disagrees with the duality oracle",
                    inst.name
                );
            }
            // H of an injective base module is injective
            for x in enumerate_rmodules(ext.base(), 2) {
                if module_injective(ext.base(), &x) {
                    let h = functor_h(ext, &x);
                    let hf = ntriv::smodule::from_left_form(&h.module).unwrap();
                    assert!(
                        is_injective(&hf, BUDGET, SEED).unwrap().verdict.is_yes(),
                        "{}: H of injective not injective",
                        inst.name
                    );
                }
            }
        }
    });
}

#[test]
fn criterion_6_flatness() {
    criterion(6, "flatness and the four-term sequence", || {
        let mut without_pairing_consistent = true;
        let mut with_pairing_consistent = true;
        let mut compared = 0usize;
        for inst in corpus() {
            // enumerated modules, plus T-lifts of small base modules so the
            // comparison set contains flat modules with nonzero pairings
            let mut modules = enumerate_fmodules(&inst.ext, 3, ENUM_BUDGET);
            for x in enumerate_rmodules(inst.ext.base(), 2) {
                modules.push(functor_t(&inst.ext, &x).module);
            }
            for m in modules {
                let rep = is_flat(&m, BUDGET, SEED);
                let proj = is_projective(&m, BUDGET, SEED);
                assert_eq!(rep.verdict, proj.verdict, "{}", inst.name);
                // the sequence characterizes T(C) ≅ m only when the
                // cokernel is itself flat, as in the characterization's
                // hypothesis; outside it exactness can hold spuriously
                if rep.proj.c_projective {
                    compared += 1;
                    let iso = matches!(rep.proj.tc_iso, IsoVerdict::Yes(_));
                    without_pairing_consistent &= rep.exact_without_pairing == iso;
                    with_pairing_consistent &= rep.exact_with_pairing == iso;
                }
            }
        }
        assert!(compared > 0);
        // exactly one candidate middle map tracks the characterization
        assert!(with_pairing_consistent, "pairing-term map diverged somewhere");
        assert!(
            !without_pairing_consistent,
            "both candidates consistent: the choice would be arbitrary"
        );
    });
}

#[test]
fn criterion_7_split_carrier_pd_inequality() {
    criterion(7, "split-carrier pd inequality", || {
        let truncated = StructureAlgebra::truncated_polynomial(PrimeField::new(2).unwrap(), 2);
        // include degree components equal to zero so finite projective
        // dimensions on the extension side actually occur under the cap
        let full = Subspace::from_span(2, &Mat::identity(truncated.field(), 2));
        let zero_component =
            ntriv::bimodule::cyclic_quotient_system(&truncated, &[full]).unwrap();
        let exts: Vec<Arc<ExtensionRing>> = vec![
            serial_exts()[1].2.clone(),
            Arc::new(build_extension(&truncated, canonical_regular_system(&truncated, 1)).unwrap()),
            Arc::new(build_extension(&truncated, canonical_regular_system(&truncated, 2)).unwrap()),
            Arc::new(build_extension(&truncated, zero_component).unwrap()),
        ];
        let mut compared = 0usize;
        for seed in 0..50u64 {
            let ext = &exts[(seed % exts.len() as u64) as usize];
            let (m, x1) = random_split_carrier_module(ext, seed);
            assert!(m.validate().is_empty(), "seed {seed}");
            let pd_r = module_pd(ext.base(), &x1, 6);
            let pd_s = proj_dimension(&m, 6).unwrap();
            if let (Dimension::Finite(a), Dimension::Finite(b)) = (pd_r, pd_s) {
                compared += 1;
                assert!(a <= b, "seed {seed}: pd_R(X1) = {a} > pd_S = {b}");
            }
        }
        assert!(compared > 0, "no sample had both dimensions finite");
    });
}

#[test]
fn criterion_8_self_injectivity() {
    criterion(8, "self-injectivity criterion", || {
        for (p, n, ext) in serial_exts() {
            let rep = check_selfinj_theorem(&ext, 4, BUDGET, SEED).unwrap();
            assert!(rep.hypothesis_holds, "p={p} n={n}: pairing hypothesis");
            assert!(rep.ext_vanishing, "p={p} n={n}: Ext vanishing");
            assert_eq!(rep.id_s, Some(Dimension::Finite(0)), "p={p} n={n}");
            assert_eq!(rep.id_mn, Some(Dimension::Finite(0)), "p={p} n={n}");
            assert_eq!(rep.conclusion_holds, Some(true), "p={p} n={n}");
            let s = regular_fmodule(&ext);
            assert!(
                is_injective(&s, BUDGET, SEED).unwrap().verdict.is_yes(),
                "p={p} n={n}: S not self-injective"
            );
            assert_eq!(inj_dimension(&s, 4).unwrap(), Dimension::Finite(0));
        }
        // a vanishing top pairing must yield no conclusion
        let r = StructureAlgebra::prime_field(PrimeField::new(2).unwrap());
        let full = Subspace::from_span(1, &Mat::identity(r.field(), 1));
        let ps = ntriv::bimodule::cyclic_quotient_system(&r, &[full]).unwrap();
        let ext = Arc::new(build_extension(&r, ps).unwrap());
        let rep = check_selfinj_theorem(&ext, 4, BUDGET, SEED).unwrap();
        assert!(!rep.hypothesis_holds);
        assert_eq!(rep.id_s, None);
        assert_eq!(rep.conclusion_holds, None);
    });
}

#[test]
fn criterion_9_perfectness_shadow() {
    criterion(9, "flat implies projective dimension zero", || {
        for inst in corpus() {
            let modules = enumerate_fmodules(&inst.ext, 3, ENUM_BUDGET);
            let rep = perfect_desk_check(&modules, 0, BUDGET, SEED).unwrap();
            assert!(rep.desk_reproducible, "{}", inst.name);
            assert_eq!(rep.violations, 0, "{}", inst.name);
        }
        let labeled = perfect_desk_check(&[], 1, BUDGET, SEED).unwrap();
        assert!(!labeled.desk_reproducible);
        assert!(labeled.note.contains("not desk-reproducible"));
    });
}

#[test]
fn criterion_10_determinism() {
    criterion(10, "byte-identical reports", || {
        let golden = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/f2_n2.json");
        let run = |args: &[&str]| {
            let out = std::process::Command::new(env!("CARGO_BIN_EXE_ntriv"))
                .args(args)
                .output()
                .expect("binary runs");
            (out.stdout, out.status.code())
        };
        let cases: Vec<Vec<&str>> = vec![
            vec!["classify", "--input", golden.to_str().unwrap(), "--module", "S", "--seed", "7", "--oracle", "--no-timestamp"],
            vec!["selfinj", "--gen", "serial:2:2", "--seed", "7", "--no-timestamp"],
            vec!["corpus", "--max-dim", "1", "--seed", "7", "--jobs", "1", "--no-timestamp"],
        ];
        for args in &cases {
            let a = run(args);
            let b = run(args);
            assert_eq!(a, b, "non-deterministic output for {args:?}");
            assert!(!a.0.is_empty());
        }
        // parallel corpus runs merge in a fixed order
        let serial = run(&["corpus", "--max-dim", "1", "--seed", "7", "--jobs", "1", "--no-timestamp"]);
        let parallel = run(&["corpus", "--max-dim", "1", "--seed", "7", "--jobs", "4", "--no-timestamp"]);
        assert_eq!(serial, parallel);
    });
}
