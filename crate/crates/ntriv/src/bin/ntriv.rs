//! Command-line front end: ingest JSON descriptions of extension rings and
//! their modules, run the builders, classifiers, functors, and criterion
//! checks, and emit deterministic JSON or text reports.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical check failed (the report
//! carries a witness), 2 input or usage error.

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use ntriv::algebra::IsoVerdict;
use ntriv::extension::ExtensionRing;
use ntriv::functors::{
    ct_iso, functor_c, functor_h, functor_k, functor_t, functor_u, functor_z, kh_iso,
};
use ntriv::homtests::{
    check_selfinj_theorem, classify, enumerate_fmodules, injective_duality_oracle, is_flat,
    lifting_oracle, perfect_desk_check, standard_corpus, Dimension, Verdict,
};
use ntriv::io::{
    algebra_to_input, load_input, mat_to_json, modules_from_spec, module_to_spec, realize,
    sha256_hex, InputSpec, ModuleSpec, Realized, Report, Status, LAYOUT,
};
use ntriv::linalg::Mat;
use ntriv::smodule::{
    from_left_form, morphism_space, saction_to_fmodule, to_left_form, FModule, GModule,
};
use serde_json::json;
use std::path::{Path, PathBuf};
use std::sync::Arc;

#[derive(Parser)]
#[command(name = "ntriv", version, about = "n-trivial extension ring calculator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Input JSON file; may be omitted with --gen serial:N:P.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Named module from the input file to operate on.
    #[arg(long)]
    module: Option<String>,
    /// Built-in generator: TR | ZR | regular | serial:N:P.
    #[arg(long)]
    gen: Option<String>,
    /// Output file for produced objects.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Search budget for isomorphism searches.
    #[arg(long, default_value_t = 1 << 20)]
    budget: u64,
    /// Cap for homological dimension searches.
    #[arg(long, default_value_t = 8)]
    cap: usize,
    /// Seed for all randomized searches.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads for corpus runs.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Report format.
    #[arg(long, default_value = "json")]
    format: String,
    /// Cross-check verdicts against the independent oracles.
    #[arg(long)]
    oracle: bool,
    /// Suppress timing for byte-stable output.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate the ring, bimodules, pre-products, and declared modules.
    Validate(Common),
    /// Assemble the extension ring and write it as an algebra file.
    Build(Common),
    /// Decide projectivity, injectivity, flatness and both dimensions.
    Classify(Common),
    /// Apply one of the functors T, C, U, Z, H, K and write the image.
    Functor {
        #[command(flatten)]
        common: Common,
        /// Functor tag: T | C | U | Z | H | K.
        #[arg(long)]
        tag: String,
    },
    /// Convert a module between the right (X, f) and left (X, g) forms.
    Convert {
        #[command(flatten)]
        common: Common,
        /// right-to-left | left-to-right.
        #[arg(long)]
        direction: String,
        /// Left-form module file, required for left-to-right.
        #[arg(long)]
        module_file: Option<PathBuf>,
    },
    /// Projective dimension of a module.
    Pd(Common),
    /// Injective dimension of a module.
    Id(Common),
    /// Check the self-injectivity criterion for the extension.
    Selfinj(Common),
    /// Check that every flat module of the corpus has pd <= k.
    Perfect {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Classify the built-in corpus of small extensions.
    Corpus {
        #[command(flatten)]
        common: Common,
        /// Module enumeration bound per instance.
        #[arg(long, default_value_t = 2)]
        max_dim: usize,
    },
}

fn main() {
    let cli = Cli::parse();
    let started = std::time::Instant::now();
    match run(cli, started) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn run(cli: Cli, started: std::time::Instant) -> anyhow::Result<i32> {
    let (mut report, common) = match cli.cmd {
        Cmd::Validate(c) => (cmd_validate(&c)?, c),
        Cmd::Build(c) => (cmd_build(&c)?, c),
        Cmd::Classify(c) => (cmd_classify(&c)?, c),
        Cmd::Functor { common, tag } => (cmd_functor(&common, &tag)?, common),
        Cmd::Convert {
            common,
            direction,
            module_file,
        } => (cmd_convert(&common, &direction, module_file.as_deref())?, common),
        Cmd::Pd(c) => (cmd_dimension(&c, false)?, c),
        Cmd::Id(c) => (cmd_dimension(&c, true)?, c),
        Cmd::Selfinj(c) => (cmd_selfinj(&c)?, c),
        Cmd::Perfect { common, k } => (cmd_perfect(&common, k)?, common),
        Cmd::Corpus { common, max_dim } => (cmd_corpus(&common, max_dim)?, common),
    };
    if !common.no_timestamp {
        report.timing_ms = Some(started.elapsed().as_millis());
    }
    print!("{}", report.render(&common.format));
    Ok(if report.all_pass() { 0 } else { 1 })
}

/// Loads the input file, or synthesizes a serial instance for
/// `--gen serial:N:P`.
fn load(common: &Common) -> anyhow::Result<(InputSpec, String)> {
    if let Some(g) = &common.gen {
        if let Some(rest) = g.strip_prefix("serial:") {
            let (n, p) = rest
                .split_once(':')
                .ok_or_else(|| anyhow!("--gen serial:N:P"))?;
            let n: usize = n.parse().context("serial N")?;
            let p: u64 = p.parse().context("serial P")?;
            let spec = serial_spec(n, p);
            let digest = sha256_hex(serde_json::to_string(&spec)?.as_bytes());
            return Ok((spec, digest));
        }
    }
    let path = common
        .input
        .as_ref()
        .ok_or_else(|| anyhow!("--input is required (or --gen serial:N:P)"))?;
    let bytes = std::fs::read(path).with_context(|| path.display().to_string())?;
    let spec = load_input(path)?;
    Ok((spec, sha256_hex(&bytes)))
}

fn serial_spec(n: usize, p: u64) -> InputSpec {
    let one = vec![vec![1u32]];
    InputSpec {
        layout: LAYOUT.to_string(),
        p,
        ring: ntriv::io::RingSpec {
            dim: 1,
            table: vec![vec![vec![1]]],
            unit: vec![1],
        },
        n,
        bimodules: (0..n)
            .map(|_| ntriv::io::BimoduleSpec {
                dim: 1,
                left_act: vec![one.clone()],
                right_act: None,
            })
            .collect(),
        phi: (1..=n)
            .flat_map(|i| {
                (1..=n)
                    .filter(move |j| i + *j <= n)
                    .map(move |j| ntriv::io::PhiSpec {
                        i,
                        j,
                        matrix: vec![vec![1]],
                    })
            })
            .collect(),
        modules: Vec::new(),
    }
}

/// Resolves the module a command operates on: a generated one or a named
/// entry of the input file.
fn pick_module(common: &Common, realized: &Realized) -> anyhow::Result<(String, FModule)> {
    let ext = &realized.ext;
    match common.gen.as_deref() {
        Some("TR") => Ok((
            "T(R)".into(),
            functor_t(ext, &ext.base().regular_module()).module,
        )),
        Some("ZR") => Ok((
            "Z(R)".into(),
            functor_z(ext, &ext.base().regular_module()),
        )),
        Some(g) if g == "regular" || g.starts_with("serial:") => Ok((
            "S".into(),
            saction_to_fmodule(&ext.total().regular_module(), ext)?,
        )),
        Some(g) => bail!("unknown generator {g:?}"),
        None => {
            let name = common
                .module
                .as_ref()
                .ok_or_else(|| anyhow!("--module or --gen is required"))?;
            realized
                .modules
                .iter()
                .find(|(n, _)| n == name)
                .map(|(n, m)| (n.clone(), m.clone()))
                .ok_or_else(|| anyhow!("no module named {name:?} in the input"))
        }
    }
}

fn write_out(common: &Common, value: &serde_json::Value) -> anyhow::Result<()> {
    if let Some(path) = &common.out {
        std::fs::write(path, format!("{value:#}\n")).with_context(|| path.display().to_string())?;
    }
    Ok(())
}

fn status(ok: bool) -> Status {
    if ok {
        Status::Pass
    } else {
        Status::Fail
    }
}

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::Inconclusive => Status::Inconclusive,
        _ => Status::Pass,
    }
}

fn dim_json(d: Dimension) -> serde_json::Value {
    match d {
        Dimension::Finite(k) => json!({ "finite": k }),
        Dimension::AtLeast(k) => json!({ "at_least": k }),
    }
}

fn cmd_validate(common: &Common) -> anyhow::Result<Report> {
    let (spec, digest) = load(common)?;
    let mut report = Report::new("validate", digest);
    let field = ntriv::linalg::PrimeField::new(spec.p)?;
    let ring = match ntriv::io::ring_from_spec(field, &spec.ring) {
        Ok(r) => r,
        Err(e) => bail!("ring: {e}"),
    };
    let ring_violations = ring.validate();
    report.check(
        "ring associative and unital",
        status(ring_violations.is_empty()),
        (!ring_violations.is_empty())
            .then(|| json!(ring_violations.iter().map(|v| v.to_string()).collect::<Vec<_>>())),
    );
    let ps = ntriv::io::phi_system_from_spec(&ring, &spec)?;
    for i in 1..=spec.n {
        let violations = ps.module(i).validate(&ring);
        report.check(
            &format!("bimodule {i} axioms"),
            status(violations.is_empty()),
            (!violations.is_empty()).then(|| json!(violations)),
        );
    }
    let phi_violations = ps.validate(&ring);
    report.check(
        "pre-products balanced, bilinear, associative",
        status(phi_violations.is_empty()),
        (!phi_violations.is_empty())
            .then(|| json!(phi_violations.iter().map(|v| v.to_string()).collect::<Vec<_>>())),
    );
    if report.all_pass() {
        let ext = Arc::new(ntriv::extension::build_extension(&ring, ps)?);
        let modules = modules_from_spec(&ext, &spec.modules)?;
        for (name, m) in &modules {
            let violations = m.validate();
            report.check(
                &format!("module {name} axioms"),
                status(violations.is_empty()),
                (!violations.is_empty())
                    .then(|| json!(violations.iter().map(|v| v.to_string()).collect::<Vec<_>>())),
            );
        }
        report.extra("modules_checked", json!(modules.len()));
    }
    Ok(report)
}

fn cmd_build(common: &Common) -> anyhow::Result<Report> {
    let (spec, digest) = load(common)?;
    let realized = realize(&spec)?;
    let mut report = Report::new("build", digest);
    let ext = &realized.ext;
    report.check(
        "assembled algebra valid",
        status(ext.total().validate().is_empty()),
        None,
    );
    report.extra("dim_s", json!(ext.dim()));
    report.extra(
        "offsets",
        json!((0..=ext.n()).map(|d| ext.offset(d)).collect::<Vec<_>>()),
    );
    let mut out = serde_json::to_value(algebra_to_input(ext.total()))?;
    out["offsets"] = json!((0..=ext.n()).map(|d| ext.offset(d)).collect::<Vec<_>>());
    write_out(common, &out)?;
    Ok(report)
}

fn cmd_classify(common: &Common) -> anyhow::Result<Report> {
    let (spec, digest) = load(common)?;
    let realized = realize(&spec)?;
    let mut report = Report::new("classify", digest);
    report.seed = Some(common.seed);
    let (name, m) = pick_module(common, &realized)?;
    let violations = m.validate();
    if !violations.is_empty() {
        report.check(
            &format!("module {name} axioms"),
            Status::Fail,
            Some(json!(violations.iter().map(|v| v.to_string()).collect::<Vec<_>>())),
        );
        return Ok(report);
    }
    let cls = classify(&m, common.budget, common.cap, common.seed)?;
    report.extra("module", json!(name));
    report.extra("dim_x", json!(m.dim_x()));
    report.check(
        "projective decided",
        verdict_status(cls.projective.verdict),
        Some(json!({
            "verdict": verdict_str(cls.projective.verdict),
            "cokernel_dim": cls.projective.c_dim,
            "cokernel_projective_over_base": cls.projective.c_projective,
            "tc_isomorphic": iso_str(&cls.projective.tc_iso),
        })),
    );
    report.check(
        "injective decided",
        verdict_status(cls.injective.verdict),
        Some(json!({
            "verdict": verdict_str(cls.injective.verdict),
            "kernel_dim": cls.injective.k_dim,
            "kernel_injective_over_base": cls.injective.k_injective,
            "hk_isomorphic": iso_str(&cls.injective.hk_iso),
        })),
    );
    report.check(
        "flat decided",
        verdict_status(cls.flat.verdict),
        Some(json!({
            "verdict": verdict_str(cls.flat.verdict),
            "exact_with_pairing_term": cls.flat.exact_with_pairing,
            "exact_without_pairing_term": cls.flat.exact_without_pairing,
            "consistent_middle_map": "with_pairing_term",
        })),
    );
    report.extra("pd", dim_json(cls.pd));
    report.extra("injd", dim_json(cls.injd));
    if common.oracle {
        let lift = lifting_oracle(&m)?;
        report.check(
            "projective verdict matches lifting oracle",
            status(cls.projective.verdict.is_yes() == lift),
            Some(json!({ "oracle": lift })),
        );
        let dual = injective_duality_oracle(&m, common.budget, common.seed)?;
        report.check(
            "injective verdict matches duality oracle",
            status(cls.injective.verdict == dual),
            Some(json!({ "oracle": verdict_str(dual) })),
        );
        report.check(
            "flat verdict matches projective verdict",
            status(cls.flat.verdict == cls.projective.verdict),
            None,
        );
    }
    Ok(report)
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn iso_str(v: &IsoVerdict) -> &'static str {
    match v {
        IsoVerdict::Yes(_) => "yes",
        IsoVerdict::No => "no",
        IsoVerdict::Inconclusive => "inconclusive",
    }
}

fn module_value(kind: &str, name: &str, spec: ModuleSpec) -> serde_json::Value {
    let mut v = serde_json::to_value(spec).unwrap();
    v["kind"] = json!(kind);
    v["layout"] = json!(LAYOUT);
    v["name"] = json!(name);
    v
}

fn rmodule_value(name: &str, x: &ntriv::algebra::RModule) -> serde_json::Value {
    json!({
        "kind": "rmodule",
        "layout": LAYOUT,
        "name": name,
        "dim": x.dim,
        "action": x.act.iter().map(mat_to_json).collect::<Vec<_>>(),
    })
}

fn cmd_functor(common: &Common, tag: &str) -> anyhow::Result<Report> {
    let (spec, digest) = load(common)?;
    let realized = realize(&spec)?;
    let mut report = Report::new("functor", digest);
    let (name, m) = pick_module(common, &realized)?;
    let ext = &realized.ext;
    let out = match tag {
        // T and Z lift the underlying base-ring module; H assembles from it
        "T" => {
            let t = functor_t(ext, &m.x);
            report.check(
                "CT composite is the identity up to canonical iso",
                status(ct_iso(&m.x, &t).is_some()),
                None,
            );
            module_value("fmodule", &format!("T({name})"), module_to_spec("", &t.module))
        }
        "Z" => {
            let z = functor_z(ext, &m.x);
            report.check("UZ composite is the identity", status(functor_u(&z) == m.x), None);
            module_value("fmodule", &format!("Z({name})"), module_to_spec("", &z))
        }
        "H" => {
            let h = functor_h(ext, &m.x);
            report.check(
                "KH composite is the identity up to canonical iso",
                status(kh_iso(&m.x, &h).is_some()),
                None,
            );
            let hf = from_left_form(&h.module)?;
            module_value("fmodule", &format!("H({name})"), module_to_spec("", &hf))
        }
        "C" => {
            let c = functor_c(&m);
            rmodule_value(&format!("C({name})"), &c.module)
        }
        "U" => rmodule_value(&format!("U({name})"), &functor_u(&m)),
        "K" => {
            let gm = to_left_form(&m)?;
            let k = functor_k(&gm);
            rmodule_value(&format!("K({name})"), &k.module)
        }
        other => bail!("unknown functor tag {other:?}; use T, C, U, Z, H, or K"),
    };
    report.check("functor applied", Status::Pass, None);
    report.extra("image_dim", out["dim"].clone());
    write_out(common, &out)?;
    Ok(report)
}

fn gmodule_value(name: &str, gm: &GModule) -> serde_json::Value {
    json!({
        "kind": "gmodule",
        "layout": LAYOUT,
        "name": name,
        "dim": gm.x.dim,
        "action": gm.x.act.iter().map(mat_to_json).collect::<Vec<_>>(),
        "g": gm.g.iter().map(mat_to_json).collect::<Vec<_>>(),
    })
}

fn cmd_convert(
    common: &Common,
    direction: &str,
    module_file: Option<&Path>,
) -> anyhow::Result<Report> {
    let (spec, digest) = load(common)?;
    let realized = realize(&spec)?;
    let mut report = Report::new("convert", digest);
    let ext = &realized.ext;
    match direction {
        "right-to-left" => {
            let (name, m) = pick_module(common, &realized)?;
            let gm = to_left_form(&m)?;
            let back = from_left_form(&gm)?;
            report.check("round trip is exact", status(back.f == m.f && back.x.act == m.x.act), None);
            let before = morphism_space(&m, &m).len();
            let s = m.to_saction()?;
            let after = ntriv::algebra::rmodule_hom_basis(ext.total(), &s, &s).len();
            report.check(
                "endomorphism space dimension preserved",
                status(before == after),
                Some(json!({ "before": before, "after": after })),
            );
            write_out(common, &gmodule_value(&name, &gm))?;
        }
        "left-to-right" => {
            let path = module_file.ok_or_else(|| anyhow!("--module-file required for left-to-right"))?;
            let text = std::fs::read_to_string(path).with_context(|| path.display().to_string())?;
            let v: serde_json::Value = serde_json::from_str(&text)?;
            if v["kind"] != json!("gmodule") || v["layout"] != json!(LAYOUT) {
                bail!("{}: expected a gmodule file in layout {LAYOUT:?}", path.display());
            }
            let gm = parse_gmodule(ext, &v)?;
            let m = from_left_form(&gm)?;
            let back = to_left_form(&m)?;
            report.check("round trip is exact", status(back.g == gm.g), None);
            let name = v["name"].as_str().unwrap_or("module").to_string();
            write_out(
                common,
                &module_value("fmodule", &name, module_to_spec("", &m)),
            )?;
        }
        other => bail!("unknown direction {other:?}; use right-to-left or left-to-right"),
    }
    Ok(report)
}

fn parse_gmodule(ext: &Arc<ExtensionRing>, v: &serde_json::Value) -> anyhow::Result<GModule> {
    let field = ext.base().field();
    let dim = v["dim"].as_u64().ok_or_else(|| anyhow!("gmodule: missing dim"))? as usize;
    let mats = |key: &str| -> anyhow::Result<Vec<Mat>> {
        v[key]
            .as_array()
            .ok_or_else(|| anyhow!("gmodule: missing {key}"))?
            .iter()
            .map(|m| {
                let rows: Vec<Vec<u32>> = serde_json::from_value(m.clone())?;
                let cols = rows.first().map_or(0, |r| r.len());
                Ok(Mat::from_entries(field, rows.len(), cols, rows.into_iter().flatten().collect())?)
            })
            .collect()
    };
    let x = ntriv::algebra::RModule {
        field,
        ring_dim: ext.base().dim(),
        dim,
        act: mats("action")?,
    };
    let gm = GModule {
        ext: Arc::clone(ext),
        x,
        g: mats("g")?,
    };
    let violations = gm.validate();
    if !violations.is_empty() {
        bail!("gmodule invalid: {}", violations.join("; "));
    }
    Ok(gm)
}

fn cmd_dimension(common: &Common, injective: bool) -> anyhow::Result<Report> {
    let (spec, digest) = load(common)?;
    let realized = realize(&spec)?;
    let mut report = Report::new(if injective { "id" } else { "pd" }, digest);
    let (name, m) = pick_module(common, &realized)?;
    let d = if injective {
        ntriv::homtests::inj_dimension(&m, common.cap)?
    } else {
        ntriv::homtests::proj_dimension(&m, common.cap)?
    };
    report.extra("module", json!(name));
    report.extra(if injective { "injd" } else { "pd" }, dim_json(d));
    report.check("dimension computed", Status::Pass, None);
    Ok(report)
}

fn cmd_selfinj(common: &Common) -> anyhow::Result<Report> {
    let (spec, digest) = load(common)?;
    let realized = realize(&spec)?;
    let mut report = Report::new("selfinj", digest);
    report.seed = Some(common.seed);
    let rep = check_selfinj_theorem(&realized.ext, common.cap, common.budget, common.seed)?;
    report.extra("hom_side", json!(rep.hom_side));
    for (i, ok) in &rep.hom_checks {
        report.check(
            &format!("Hom(M_{i}, M_n) has the required form"),
            status(*ok),
            None,
        );
    }
    report.check(
        "pairing hypothesis",
        status(rep.hypothesis_holds),
        (!rep.hypothesis_holds).then(|| json!("hypothesis not satisfied; no conclusion claimed")),
    );
    report.check(
        "Ext vanishing up to cap",
        status(rep.ext_vanishing),
        Some(json!(rep
            .ext_checks
            .iter()
            .filter(|(_, _, ok)| !ok)
            .map(|(i, k, _)| format!("Ext^{k}(M_{i}, M_n) != 0"))
            .collect::<Vec<_>>())),
    );
    match (rep.id_s, rep.id_mn, rep.conclusion_holds) {
        (Some(id_s), Some(id_mn), Some(holds)) => {
            report.extra("id_s", dim_json(id_s));
            report.extra("id_mn", dim_json(id_mn));
            report.check("self-injective dimension matches id of M_n", status(holds), None);
        }
        _ => {
            report.extra("conclusion", json!("hypothesis not satisfied; none claimed"));
        }
    }
    Ok(report)
}

fn cmd_perfect(common: &Common, k: usize) -> anyhow::Result<Report> {
    let (spec, digest) = load(common)?;
    let realized = realize(&spec)?;
    let mut report = Report::new("perfect", digest);
    report.seed = Some(common.seed);
    let corpus: Vec<FModule> = if realized.modules.is_empty() {
        enumerate_fmodules(&realized.ext, 2, 100_000)
    } else {
        realized.modules.iter().map(|(_, m)| m.clone()).collect()
    };
    let rep = perfect_desk_check(&corpus, k, common.budget, common.seed)?;
    report.extra("k", json!(rep.k));
    report.extra("note", json!(rep.note));
    report.extra("modules_checked", json!(rep.modules_checked));
    report.extra("flat_count", json!(rep.flat_count));
    report.check(
        "every flat module within the pd bound",
        status(rep.violations == 0),
        Some(json!({ "violations": rep.violations })),
    );
    Ok(report)
}

fn cmd_corpus(common: &Common, max_dim: usize) -> anyhow::Result<Report> {
    let digest = sha256_hex(b"builtin-corpus");
    let mut report = Report::new("corpus", digest);
    report.seed = Some(common.seed);
    let instances = standard_corpus()?;
    let budget = common.budget;
    let seed = common.seed;
    let jobs = common.jobs.max(1);
    let results = std::sync::Mutex::new(vec![None; instances.len()]);
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let idx = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if idx >= instances.len() {
                    break;
                }
                let inst = &instances[idx];
                let summary = corpus_instance_summary(inst.name.clone(), &inst.ext, max_dim, budget, seed);
                results.lock().unwrap()[idx] = Some(summary);
            });
        }
    });
    let mut all_agree = true;
    let mut rows = Vec::new();
    for r in results.into_inner().unwrap() {
        let (name, row, agree) = r.expect("every instance processed");
        all_agree &= agree;
        rows.push(json!({ "instance": name, "summary": row }));
    }
    report.extra("instances", json!(rows));
    report.check("verdicts agree with oracles on every instance", status(all_agree), None);
    Ok(report)
}

/// Classifies every enumerated module of one instance; returns counts and
/// whether the projectivity/flatness verdicts agreed with the oracle.
fn corpus_instance_summary(
    name: String,
    ext: &Arc<ExtensionRing>,
    max_dim: usize,
    budget: u64,
    seed: u64,
) -> (String, serde_json::Value, bool) {
    let modules = enumerate_fmodules(ext, max_dim, 100_000);
    let mut projective = 0usize;
    let mut flat = 0usize;
    let mut agree = true;
    for m in &modules {
        let fl = is_flat(m, budget, seed);
        if fl.proj.verdict.is_yes() {
            projective += 1;
        }
        if fl.verdict.is_yes() {
            flat += 1;
        }
        match lifting_oracle(m) {
            Ok(lift) => agree &= fl.proj.verdict.is_yes() == lift,
            Err(_) => agree = false,
        }
        agree &= fl.exact_with_pairing == fl.proj.verdict.is_yes();
    }
    (
        name,
        json!({
            "modules": modules.len(),
            "projective": projective,
            "flat": flat,
        }),
        agree,
    )
}
