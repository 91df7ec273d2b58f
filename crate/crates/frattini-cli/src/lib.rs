//! Command implementations behind the `frattini` binary: dimension tables,
//! group-law verification, submodule analysis, single constructions and the
//! full table reproduction. Each command returns its stdout/stderr text and
//! an exit code (0 success, 1 verification failure, 2 usage error, 3
//! non-exhaustive warning).

pub mod cache;
pub mod report;
pub mod table;

use std::path::{Path, PathBuf};

use frattini_core::gamma::{GammaContext, GammaElement};
use frattini_core::lie::witt_dims;
use frattini_core::meataxe::{
    gl_invariance_witness, maximal_submodules, minimal_submodules, MeataxeOptions,
};
use frattini_core::pipeline::{construct_group_with, induced_module_action, table2_instances};
use frattini_core::rng::SeededRng;
use frattini_core::subgroups::{build_generators, FormKind, SubgroupSpec};
use frattini_core::{Error, PrimeField};

use cache::CachedPowers;
use report::*;
use table::AsciiTable;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NON_EXHAUSTIVE: u8 = 3;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug)]
pub struct CmdOutput {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl CmdOutput {
    fn ok(stdout: String) -> Self {
        CmdOutput { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn usage(msg: String) -> Self {
        CmdOutput { stdout: String::new(), stderr: msg, code: EXIT_USAGE }
    }
}

fn to_json<T: serde::Serialize>(doc: &T) -> String {
    serde_json::to_string_pretty(doc).expect("documents serialise") + "\n"
}

/// Parse `--class C2 --param r=2`-style specifications. Unknown or missing
/// keys are rejected.
pub fn parse_spec(class: &str, params: &str) -> Result<SubgroupSpec, String> {
    let mut pairs: Vec<(String, String)> = Vec::new();
    for piece in params.split(',').filter(|s| !s.is_empty()) {
        let Some((k, v)) = piece.split_once('=') else {
            return Err(format!("parameter `{piece}` is not of the form key=value"));
        };
        if pairs.iter().any(|(pk, _)| pk == k) {
            return Err(format!("duplicate parameter key `{k}`"));
        }
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    let take_usize = |pairs: &[(String, String)], key: &str| -> Result<usize, String> {
        let v = pairs
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| format!("class {class} needs parameter `{key}`"))?;
        v.parse::<usize>().map_err(|_| format!("parameter `{key}={v}` is not an integer"))
    };
    let expect_keys = |pairs: &[(String, String)], keys: &[&str]| -> Result<(), String> {
        for (k, _) in pairs {
            if !keys.contains(&k.as_str()) {
                return Err(format!("unknown parameter `{k}` for class {class}"));
            }
        }
        Ok(())
    };
    match class {
        "C1" => {
            expect_keys(&pairs, &["r"])?;
            Ok(SubgroupSpec::C1 { r: take_usize(&pairs, "r")? })
        }
        "C2" => {
            expect_keys(&pairs, &["r"])?;
            Ok(SubgroupSpec::C2 { r: take_usize(&pairs, "r")? })
        }
        "C3" => {
            expect_keys(&pairs, &["r"])?;
            Ok(SubgroupSpec::C3 { r: take_usize(&pairs, "r")? })
        }
        "C4" => {
            expect_keys(&pairs, &["d1", "d2"])?;
            Ok(SubgroupSpec::C4 { d1: take_usize(&pairs, "d1")?, d2: take_usize(&pairs, "d2")? })
        }
        "C7" => {
            expect_keys(&pairs, &["t", "r"])?;
            Ok(SubgroupSpec::C7 { t: take_usize(&pairs, "t")?, r: take_usize(&pairs, "r")? })
        }
        "C8" => {
            expect_keys(&pairs, &["form"])?;
            let v = pairs
                .iter()
                .find(|(k, _)| k == "form")
                .map(|(_, v)| v.clone())
                .ok_or_else(|| "class C8 needs parameter `form`".to_string())?;
            FormKind::parse(&v)
                .map(|form| SubgroupSpec::C8 { form })
                .ok_or_else(|| format!("unknown form kind `{v}`"))
        }
        other => Err(format!("unknown class `{other}` (implemented: C1 C2 C3 C4 C7 C8)")),
    }
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `witt`: dimensions of the Lie, alternating and symmetric powers.
pub fn cmd_witt(p: u64, d: u64, max_n: u64, format: Format) -> CmdOutput {
    if PrimeField::new(p).is_err() {
        return CmdOutput::usage(format!("p = {p} is not an odd prime\n"));
    }
    if d < 2 || max_n < 1 {
        return CmdOutput::usage("need d >= 2 and max-n >= 1\n".to_string());
    }
    let mut rows = Vec::new();
    for k in 1..=max_n {
        match witt_dims(d, k, p) {
            Ok(f) => rows.push(WittRowDoc {
                k,
                lie_dim: f,
                alt_dim: binom(d, k),
                sym_dim: binom(d + k - 1, k),
            }),
            Err(e) => return CmdOutput::usage(format!("{e}\n")),
        }
    }
    let doc = WittDoc { format_version: FORMAT_VERSION, p, d, max_n, rows };
    match format {
        Format::Json => CmdOutput::ok(to_json(&doc)),
        Format::Table => {
            let mut t = AsciiTable::new(vec!["k", "dim L^k V", "dim A^k V", "dim S^k V"]);
            for r in &doc.rows {
                t.row(vec![
                    r.k.to_string(),
                    r.lie_dim.to_string(),
                    r.alt_dim.to_string(),
                    r.sym_dim.to_string(),
                ]);
            }
            CmdOutput::ok(format!("p={p} d={d}\n{}", t.render()))
        }
    }
}

pub struct GammaVerifyArgs {
    pub p: u64,
    pub d: usize,
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

fn elements_doc(elements: &[GammaElement]) -> Vec<Vec<Vec<u64>>> {
    elements.iter().map(|e| e.coords().to_vec()).collect()
}

/// `gamma verify`: associativity, exponent and commutator-identity suites.
/// Deterministic standard-basis commutator checks always run; `trials`
/// controls the seeded random part.
pub fn cmd_gamma_verify(args: GammaVerifyArgs) -> CmdOutput {
    let field = match PrimeField::new(args.p) {
        Ok(f) => f,
        Err(e) => return CmdOutput::usage(format!("{e}\n")),
    };
    if args.n < 1 || args.n > 4 || args.p <= args.n as u64 || args.d < 2 {
        return CmdOutput::usage(format!(
            "need 1 <= n <= 4, p > n and d >= 2; got p={} d={} n={}\n",
            args.p, args.d, args.n
        ));
    }
    let dir = cache::resolve_dir(args.cache_dir.as_deref());
    let powers = match cache::load_or_build(&dir, field, args.d, args.n) {
        Ok(p) => p,
        Err(e) => return CmdOutput::usage(format!("{e}\n")),
    };
    let ctx = GammaContext::from_powers(powers);
    let mut checks = Vec::new();
    let mut first_failure: Option<Vec<GammaElement>> = None;

    // associativity
    let mut rng = SeededRng::new(args.seed ^ 0x01);
    let mut failures = 0;
    for _ in 0..args.trials {
        let a = ctx.random_element(&mut rng);
        let b = ctx.random_element(&mut rng);
        let c = ctx.random_element(&mut rng);
        let lhs = ctx.multiply(&ctx.multiply(&a, &b).unwrap(), &c).unwrap();
        let rhs = ctx.multiply(&a, &ctx.multiply(&b, &c).unwrap()).unwrap();
        if lhs != rhs {
            failures += 1;
            first_failure.get_or_insert(vec![a, b, c]);
        }
    }
    checks.push(GammaCheckDoc {
        name: "associativity".into(),
        deterministic_cases: 0,
        random_trials: args.trials,
        failures,
        first_failure: None,
    });

    // exponent p
    let mut rng = SeededRng::new(args.seed ^ 0x02);
    let mut failures = 0;
    for _ in 0..args.trials {
        let a = ctx.random_element(&mut rng);
        if !ctx.power(&a, args.p as i64).unwrap().is_identity() {
            failures += 1;
            first_failure.get_or_insert(vec![a]);
        }
    }
    checks.push(GammaCheckDoc {
        name: "exponent".into(),
        deterministic_cases: 0,
        random_trials: args.trials,
        failures,
        first_failure: None,
    });

    // commutator identities: the scalar (2, 12, 24) closed form for
    // full-length left-normed commutators, on every standard-basis tuple
    // and on random tuples
    let expected = |elements: &[GammaElement]| -> GammaElement {
        let coef = [0u64, 0, 2, 12, 24][elements.len()];
        let mut bracket = elements[0].coord(1).to_vec();
        for (k, e) in elements.iter().enumerate().skip(1) {
            bracket = ctx.powers().bracket(k, 1, &bracket, e.coord(1)).unwrap();
        }
        let f = ctx.field();
        let mut coords: Vec<Vec<u64>> =
            (1..=args.n).map(|i| vec![0u64; ctx.coord_dim(i)]).collect();
        coords[elements.len() - 1] = bracket.iter().map(|&x| f.mul(x, coef)).collect();
        ctx.element(&coords).unwrap()
    };
    let mut failures = 0;
    let deterministic = (args.d as u64).pow(args.n as u32);
    if args.n >= 2 {
        for flat in 0..deterministic {
            let mut tuple = Vec::new();
            let mut v = flat;
            for _ in 0..args.n {
                tuple.push((v % args.d as u64) as usize);
                v /= args.d as u64;
            }
            let elements: Vec<GammaElement> = tuple
                .iter()
                .map(|&i| {
                    let mut e = vec![0u64; args.d];
                    e[i] = 1;
                    ctx.from_degree_one(&e).unwrap()
                })
                .collect();
            if ctx.commutator(&elements).unwrap() != expected(&elements) {
                failures += 1;
                first_failure.get_or_insert(elements);
            }
        }
        let mut rng = SeededRng::new(args.seed ^ 0x03);
        for _ in 0..args.trials {
            let elements: Vec<GammaElement> =
                (0..args.n).map(|_| ctx.random_element(&mut rng)).collect();
            if ctx.commutator(&elements).unwrap() != expected(&elements) {
                failures += 1;
                first_failure.get_or_insert(elements);
            }
        }
    }
    checks.push(GammaCheckDoc {
        name: "commutator-identities".into(),
        deterministic_cases: if args.n >= 2 { deterministic } else { 0 },
        random_trials: if args.n >= 2 { args.trials } else { 0 },
        failures,
        first_failure: None,
    });

    let pass = checks.iter().all(|c| c.failures == 0);
    let mut doc = GammaVerifyDoc {
        format_version: FORMAT_VERSION,
        p: args.p,
        d: args.d,
        n: args.n,
        trials: args.trials,
        seed: args.seed,
        checks,
        pass,
    };
    if let Some(fail) = &first_failure {
        for c in doc.checks.iter_mut() {
            if c.failures > 0 && c.first_failure.is_none() {
                c.first_failure = Some(elements_doc(fail));
                break;
            }
        }
    }
    let stdout = match args.format {
        Format::Json => to_json(&doc),
        Format::Table => {
            let mut t =
                AsciiTable::new(vec!["check", "deterministic", "random", "failures"]);
            for c in &doc.checks {
                t.row(vec![
                    c.name.clone(),
                    c.deterministic_cases.to_string(),
                    c.random_trials.to_string(),
                    c.failures.to_string(),
                ]);
            }
            let verdict = if pass { "all pass" } else { "FAILURES" };
            let mut s = format!("p={} d={} n={} seed={}\n{}{verdict}\n", args.p, args.d, args.n, args.seed, t.render());
            if let Some(fail) = &first_failure {
                s.push_str(&format!(
                    "first failing tuple: {}\n",
                    serde_json::to_string(&elements_doc(fail)).unwrap()
                ));
            }
            s
        }
    };
    CmdOutput { stdout, stderr: String::new(), code: if pass { EXIT_OK } else { EXIT_VERIFY } }
}

pub struct SpecArgs {
    pub p: u64,
    pub d: usize,
    pub class: String,
    pub params: String,
    pub seed: u64,
    pub exhaustive_bound: Option<u64>,
    pub cache_dir: Option<PathBuf>,
    pub format: Format,
}

impl SpecArgs {
    fn meataxe(&self) -> MeataxeOptions {
        let mut opts = MeataxeOptions::with_seed(self.seed);
        if let Some(b) = self.exhaustive_bound {
            opts.exhaustive_lines = b;
        }
        opts
    }
}

/// `decompose`: submodule analysis of H acting on `L^power V`.
pub fn cmd_decompose(args: &SpecArgs, power: usize, accept_non_exhaustive: bool) -> CmdOutput {
    let field = match PrimeField::new(args.p) {
        Ok(f) => f,
        Err(e) => return CmdOutput::usage(format!("{e}\n")),
    };
    let spec = match parse_spec(&args.class, &args.params) {
        Ok(s) => s,
        Err(e) => return CmdOutput::usage(format!("{e}\n")),
    };
    if let Err(e) = spec.validate(args.d, args.p) {
        return CmdOutput::usage(format!("{e}\n"));
    }
    if !(1..=4).contains(&power) || args.p <= power as u64 {
        return CmdOutput::usage(format!("need 1 <= power <= 4 and p > power, got {power}\n"));
    }
    let gens = match build_generators(spec, args.d, field) {
        Ok(g) => g,
        Err(e) => return CmdOutput::usage(format!("{e}\n")),
    };
    let dir = cache::resolve_dir(args.cache_dir.as_deref());
    let run = || -> frattini_core::Result<DecomposeDoc> {
        let powers = cache::load_or_build(&dir, field, args.d, power)?;
        let action = induced_module_action(&gens, &powers, power)?;
        let opts = args.meataxe();
        let minimal = minimal_submodules(&action, &opts)?;
        let maximal = maximal_submodules(&action, &opts)?;
        let exhaustive = minimal.exhaustive && maximal.exhaustive;
        let smallest = maximal
            .modules
            .first()
            .map(|m| (action.dim() - m.dim()) as u64)
            .unwrap_or(action.dim() as u64);
        let mut maximal_docs = Vec::new();
        for m in &maximal.modules {
            maximal_docs.push(MaximalSubmoduleDoc {
                codim: action.dim() - m.dim(),
                basis: matrix_rows(m.basis()),
                gl_invariant: gl_invariance_witness(m, &powers, power)?.is_none(),
            });
        }
        Ok(DecomposeDoc {
            format_version: FORMAT_VERSION,
            p: args.p,
            d: args.d,
            spec: spec.into(),
            power,
            module_dim: action.dim(),
            minimal: minimal
                .modules
                .iter()
                .map(|m| SubmoduleDoc { dim: m.dim(), basis: matrix_rows(m.basis()) })
                .collect(),
            maximal: maximal_docs,
            smallest_quotient_dim: smallest,
            exhaustive,
        })
    };
    let doc = match run() {
        Ok(d) => d,
        Err(e) => return CmdOutput::usage(format!("{e}\n")),
    };
    let code = if doc.exhaustive || accept_non_exhaustive { EXIT_OK } else { EXIT_NON_EXHAUSTIVE };
    let stdout = match args.format {
        Format::Json => to_json(&doc),
        Format::Table => {
            let mut s = format!(
                "{} {} d={} p={} on L^{} V (dim {})\n",
                doc.spec.class, doc.spec.params, doc.d, doc.p, doc.power, doc.module_dim
            );
            let mins: Vec<String> = doc.minimal.iter().map(|m| m.dim.to_string()).collect();
            s.push_str(&format!("minimal submodule dims: {{{}}}\n", mins.join(", ")));
            let mut t = AsciiTable::new(vec!["maximal submodule", "codim", "GL-invariant"]);
            for (i, m) in doc.maximal.iter().enumerate() {
                t.row(vec![
                    format!("M{i}"),
                    m.codim.to_string(),
                    if m.gl_invariant { "yes".to_string() } else { "no".to_string() },
                ]);
            }
            s.push_str(&t.render());
            s.push_str(&format!("smallest quotient dim: {}\n", doc.smallest_quotient_dim));
            s.push_str(&format!(
                "strategy: {}\n",
                if doc.exhaustive { "exhaustive" } else { "randomized (non-exhaustive)" }
            ));
            s
        }
    };
    CmdOutput { stdout, stderr: String::new(), code }
}

fn construct_exit_code(e: &Error) -> u8 {
    match e {
        Error::NoUsableSubmodule { .. }
        | Error::NoCriticalPower
        | Error::CertificateFailed(_)
        | Error::TableMismatch { .. } => EXIT_VERIFY,
        _ => EXIT_USAGE,
    }
}

/// `construct`: build one group, verify the certificate, write the report.
pub fn cmd_construct(args: &SpecArgs, out: Option<&Path>) -> CmdOutput {
    let field = match PrimeField::new(args.p) {
        Ok(f) => f,
        Err(e) => return CmdOutput::usage(format!("{e}\n")),
    };
    let spec = match parse_spec(&args.class, &args.params) {
        Ok(s) => s,
        Err(e) => return CmdOutput::usage(format!("{e}\n")),
    };
    let dir = cache::resolve_dir(args.cache_dir.as_deref());
    let mut source = CachedPowers { dir };
    let construction =
        match construct_group_with(spec, args.d, field, args.seed, &args.meataxe(), &mut source) {
            Ok(c) => c,
            Err(e) => {
                return CmdOutput {
                    stdout: String::new(),
                    stderr: format!("{e}\n"),
                    code: construct_exit_code(&e),
                }
            }
        };
    let report = &construction.report;
    let doc = ConstructionDoc::new(report, &construction.generators);
    if let Some(path) = out {
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        if let Err(e) = std::fs::write(path, to_json(&doc)) {
            return CmdOutput {
                stdout: String::new(),
                stderr: format!("cannot write report to {}: {e}\n", path.display()),
                code: EXIT_USAGE,
            };
        }
    }
    let verified = report.all_checks_pass && doc.body.table2.relation != RelationDoc::Mismatch;
    let codims: Vec<String> = report.maximal_codims.iter().map(u64::to_string).collect();
    let summary = format!(
        "{} {} d={} p={}: n={} |G|={}^{} class={} dim(G_{})={} ({}) {}\n\
         maximal submodules of the critical power: {} (codims {}){}\n",
        doc.spec.class,
        doc.spec.params,
        report.d,
        report.p,
        report.n,
        report.p,
        report.order_exponent,
        report.n,
        report.n - 1,
        report.quotient_dim,
        doc.body.table2.relation.render(),
        if verified { "verified" } else { "FAILED" },
        report.maximal_codims.len(),
        codims.join(", "),
        if report.exhaustive { "" } else { " [non-exhaustive search]" }
    );
    // the summary line always appears: on stdout in table mode, on stderr
    // in JSON mode (stdout is then the pure document)
    let (stdout, stderr) = match args.format {
        Format::Json => (to_json(&doc), summary),
        Format::Table => (summary, String::new()),
    };
    CmdOutput { stdout, stderr, code: if verified { EXIT_OK } else { EXIT_VERIFY } }
}

/// `table2`: one construction per implemented conditions-row with d ≤ d_max.
pub fn cmd_table2(
    p: u64,
    d_max: usize,
    seed: u64,
    exhaustive_bound: Option<u64>,
    cache_dir: Option<PathBuf>,
    format: Format,
) -> CmdOutput {
    let field = match PrimeField::new(p) {
        Ok(f) => f,
        Err(e) => return CmdOutput::usage(format!("{e}\n")),
    };
    if p < frattini_core::pipeline::MIN_PRIME {
        return CmdOutput::usage(format!("the construction needs p >= 5, got {p}\n"));
    }
    let dir = cache::resolve_dir(cache_dir.as_deref());
    let mut source = CachedPowers { dir };
    let mut opts = MeataxeOptions::with_seed(seed);
    if let Some(b) = exhaustive_bound {
        opts.exhaustive_lines = b;
    }
    let mut rows = Vec::new();
    let mut stderr = String::new();
    let mut all_ok = true;
    for inst in table2_instances(d_max) {
        match construct_group_with(inst.spec, inst.d, field, seed, &opts, &mut source) {
            Ok(c) => {
                let r = &c.report;
                let relation: RelationDoc = r.relation.into();
                let verified = r.all_checks_pass;
                if relation == RelationDoc::Mismatch || !verified {
                    all_ok = false;
                }
                rows.push(Table2RowDoc {
                    class: inst.spec.class_name().to_string(),
                    conditions: inst.conditions.to_string(),
                    params: inst.spec.params_string(),
                    d: inst.d,
                    n: r.n,
                    dim_expected: r.expected.into(),
                    dim_computed: r.quotient_dim,
                    relation,
                    m: r.order_exponent,
                    verified,
                    exhaustive: r.exhaustive,
                });
            }
            Err(e) => {
                all_ok = false;
                stderr.push_str(&format!(
                    "{} {} d={}: {e}\n",
                    inst.spec.class_name(),
                    inst.spec.params_string(),
                    inst.d
                ));
            }
        }
    }
    let doc = Table2Doc { format_version: FORMAT_VERSION, p, d_max, seed, rows, all_ok };
    let stdout = match format {
        Format::Json => to_json(&doc),
        Format::Table => {
            let mut t = AsciiTable::new(vec![
                "class", "conditions", "params", "d", "n", "dim expect", "dim got", "rel", "m",
                "verified",
            ]);
            for r in &doc.rows {
                t.row(vec![
                    r.class.clone(),
                    r.conditions.clone(),
                    r.params.clone(),
                    r.d.to_string(),
                    r.n.to_string(),
                    r.dim_expected.render(),
                    r.dim_computed.to_string(),
                    r.relation.render().to_string(),
                    r.m.to_string(),
                    if r.verified { "yes".into() } else { "NO".into() },
                ]);
            }
            let verdict = if doc.all_ok { "all rows reproduce" } else { "MISMATCHES PRESENT" };
            format!("p={p} d_max={d_max} seed={seed}\n{}{verdict}\n", t.render())
        }
    };
    CmdOutput { stdout, stderr, code: if doc.all_ok { EXIT_OK } else { EXIT_VERIFY } }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parsing() {
        assert_eq!(parse_spec("C2", "r=2").unwrap(), SubgroupSpec::C2 { r: 2 });
        assert_eq!(
            parse_spec("C4", "d1=2,d2=3").unwrap(),
            SubgroupSpec::C4 { d1: 2, d2: 3 }
        );
        assert_eq!(
            parse_spec("C8", "form=symplectic").unwrap(),
            SubgroupSpec::C8 { form: FormKind::Symplectic }
        );
        assert!(parse_spec("C2", "x=2").is_err());
        assert!(parse_spec("C2", "r=2,r=3").is_err());
        assert!(parse_spec("C5", "r=2").is_err());
        assert!(parse_spec("C7", "t=2").is_err());
    }

    #[test]
    fn witt_rows_for_the_plane() {
        // rows 2, 1, 2, 3 for k = 1..4 summing to 8
        let out = cmd_witt(5, 2, 4, Format::Json);
        assert_eq!(out.code, EXIT_OK);
        let doc: WittDoc = serde_json::from_str(&out.stdout).unwrap();
        let dims: Vec<u64> = doc.rows.iter().map(|r| r.lie_dim).collect();
        assert_eq!(dims, vec![2, 1, 2, 3]);
        assert_eq!(dims.iter().sum::<u64>(), 8);
        // p <= n is a usage error
        assert_eq!(cmd_witt(3, 2, 4, Format::Table).code, EXIT_USAGE);
    }
}
