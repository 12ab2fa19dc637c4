//! The built-in fixture suite: every worked example with a checkable answer, run as one
//! report with stable case ids and content digests.

use std::fmt::{self, Write as _};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::asanuma::{h_shape_classify, mk_ml1_maps, ml_intersection, verify_ex2_suite, ShapeClass};
use crate::error::{FiltrationError, StisoError};
use crate::expmap::{mk_translation, mk_unit_row, mk_v_shift, Axiom, ExpMap};
use crate::field::FieldSpec;
use crate::filtration::{homogenize_expmap, Filtration};
use crate::parse::{parse_poly, parse_ring_config, print_poly, Family};
use crate::poly::{Degree, WeightVector};
use crate::quotient::{eq_check, Ring};
use crate::sample;
use crate::stable_iso::{
    bezout_cofactors, build_iso_certificate, build_v1_u1, build_wtilde, chain_reduce, cofactors_for,
    verify_certificate_text, verify_cofactors, BezoutPair,
};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    /// The hypothesis `(F, F_V) = (1)` fails in this characteristic and the case says so.
    ExpectedFail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::ExpectedFail => "EXPECTED-FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub anchor: String,
    pub field: String,
    pub status: Status,
    pub wall_ms: f64,
    /// SHA-256 of the case transcript; wall time is not part of it.
    pub digest: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub format_version: u32,
    pub field_override: Option<String>,
    pub cases: Vec<CaseResult>,
    /// SHA-256 over every case's id, status and digest.
    pub digest: String,
}

impl SuiteReport {
    pub fn from_cases(field_override: Option<FieldSpec>, mut cases: Vec<CaseResult>) -> SuiteReport {
        cases.sort_by(|a, b| a.id.cmp(&b.id));
        let mut h = Sha256::new();
        for c in &cases {
            h.update(format!("{}\t{}\t{}\n", c.id, c.status, c.digest));
        }
        SuiteReport {
            format_version: FORMAT_VERSION,
            field_override: field_override.map(|f| f.to_string()),
            cases,
            digest: hex(&h.finalize()),
        }
    }

    /// No case failed; expected failures and skips do not count against the run.
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.cases.iter().filter(|c| c.status == s).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
}

/// Renders a report. Identical reports give identical bytes.
pub fn report_emit(report: &SuiteReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "suite report, format {}", report.format_version);
            if let Some(f) = &report.field_override {
                let _ = writeln!(s, "field override: {f}");
            }
            let _ = writeln!(s, "{:<32} {:<14} {:<6} {:>10}  {:<16}  anchor", "case", "status", "field", "ms", "digest");
            for c in &report.cases {
                let _ = writeln!(
                    s,
                    "{:<32} {:<14} {:<6} {:>10.1}  {:<16}  {}",
                    c.id,
                    c.status.to_string(),
                    c.field,
                    c.wall_ms,
                    &c.digest[..16.min(c.digest.len())],
                    c.anchor
                );
                if !c.detail.is_empty() && c.status != Status::Pass {
                    let _ = writeln!(s, "    {}", c.detail);
                }
            }
            if !report.cases.is_empty() {
                let _ = writeln!(
                    s,
                    "{} cases: {} pass, {} expected-fail, {} skip, {} fail",
                    report.cases.len(),
                    report.count(Status::Pass),
                    report.count(Status::ExpectedFail),
                    report.count(Status::Skip),
                    report.count(Status::Fail)
                );
                let _ = writeln!(s, "digest {}", report.digest);
            }
            s
        }
    }
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Why a case did not pass.
#[derive(Debug)]
pub enum CaseError {
    Fail(String),
    /// `(F, F_V) != (1)`; an expected failure for cases built on cofactors.
    NotCoprime(String),
    Skip(String),
}

impl<E: std::error::Error> From<E> for CaseError {
    fn from(e: E) -> Self {
        CaseError::Fail(e.to_string())
    }
}

fn stiso_err(e: StisoError) -> CaseError {
    match e {
        StisoError::NotCoprime(m) => CaseError::NotCoprime(m),
        other => CaseError::Fail(other.to_string()),
    }
}

type CaseResultT = Result<String, CaseError>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), CaseError> {
    if cond {
        Ok(())
    } else {
        Err(CaseError::Fail(msg()))
    }
}

fn ensure_eq<T: PartialEq + fmt::Display>(got: &T, want: &T, what: &str) -> Result<(), CaseError> {
    ensure(got == want, || format!("{what}: got {got}, expected {want}"))
}

#[derive(Clone, Copy)]
enum FieldUse {
    /// Runs over the override field, or `Q`.
    Generic,
    Fixed(FieldSpec),
}

struct Case {
    id: &'static str,
    anchor: &'static str,
    field: FieldUse,
    /// Built on Bézout cofactors: `NotCoprime` is an expected failure.
    bezout: bool,
    run: fn(FieldSpec) -> CaseResultT,
}

const fn generic(id: &'static str, anchor: &'static str, run: fn(FieldSpec) -> CaseResultT) -> Case {
    Case { id, anchor, field: FieldUse::Generic, bezout: false, run }
}

const fn fixed(id: &'static str, anchor: &'static str, f: FieldSpec, run: fn(FieldSpec) -> CaseResultT) -> Case {
    Case { id, anchor, field: FieldUse::Fixed(f), bezout: false, run }
}

const fn coprime(id: &'static str, anchor: &'static str, field: FieldUse, run: fn(FieldSpec) -> CaseResultT) -> Case {
    Case { id, anchor, field, bezout: true, run }
}

const Q: FieldSpec = FieldSpec::Rationals;

fn cases() -> Vec<Case> {
    vec![
        generic("parse.round-trip", "polynomial input grammar", case_parse_round_trip),
        fixed("config.validation", "ring configuration constraints", Q, case_config_validation),
        generic("quotient.normal-form", "normal form of B(r, F)", case_normal_form),
        generic("quotient.laurent-oracle", "Laurent embedding of B(r, F)", case_laurent_oracle),
        generic("filtration.degrees", "weighted degree of u", case_degrees),
        generic("filtration.top-form", "top form of F", case_top_form),
        generic("filtration.gr", "associated graded of B(r, F)", case_gr),
        generic("filtration.gr-divisible", "associated graded hypothesis", case_gr_divisible),
        generic("filtration.gr-v-weight", "associated graded for the v-weight", case_gr_v_weight),
        generic("filtration.leading-form", "leading forms multiply", case_leading_form),
        generic("filtration.homogenize", "homogenized exponential map", case_homogenize),
        generic("expmap.translation", "translation of an adjoined variable", case_translation),
        generic("expmap.v-shift", "v-shift exponential map", case_v_shift),
        generic("expmap.bad-map", "well-definedness of exponential maps", case_bad_map),
        generic("expmap.unit-row", "exponential map for r_j = 1", case_unit_row),
        coprime("stiso.bezout", "Bezout cofactors of F and F_V", FieldUse::Generic, case_bezout),
        coprime("stiso.bezout-reduction", "Bezout cofactors modulo 3", FieldUse::Fixed(FieldSpec::Prime(3)), case_bezout_reduction),
        coprime("stiso.elements", "v1, u1 and w~", FieldUse::Generic, case_elements),
        coprime("stiso.link-b2", "stable isomorphism, one link", FieldUse::Generic, case_link_b2),
        coprime("stiso.link-b22", "stable isomorphism, two base variables", FieldUse::Generic, case_link_b22),
        coprime("stiso.link-cubic", "stable isomorphism, cubic F", FieldUse::Generic, case_link_cubic),
        coprime("stiso.chain-b3", "stable isomorphism chain", FieldUse::Generic, case_chain_b3),
        coprime("stiso.chain-b22", "stable isomorphism chain, two base variables", FieldUse::Generic, case_chain_b22),
        coprime("stiso.chain-empty", "stable isomorphism chain, identity", FieldUse::Generic, case_chain_empty),
        coprime("stiso.char2", "Bezout hypothesis in characteristic 2", FieldUse::Fixed(FieldSpec::Prime(2)), case_char2),
        coprime("stiso.char3-pipeline", "stable isomorphism in characteristic 3", FieldUse::Fixed(FieldSpec::Prime(3)), case_char3),
        fixed("asanuma.classify-separable", "separable H in Z", Q, case_classify_separable),
        generic("asanuma.classify-linear", "H linear in T", case_classify_linear),
        fixed("asanuma.classify-unit", "constant H", Q, case_classify_unit),
        generic("asanuma.ml1-m1", "maps translating x_j, one base variable", case_ml1_m1),
        generic("asanuma.ml1-m2", "maps translating x_j, two base variables", case_ml1_m2),
        fixed("asanuma.ex2", "example with H = 1 + Z^2", Q, case_ex2),
    ]
}

/// Ids of every built-in case, sorted.
pub fn case_ids() -> Vec<&'static str> {
    let mut ids: Vec<_> = cases().iter().map(|c| c.id).collect();
    ids.sort_unstable();
    ids
}

/// Runs every case, concurrently; the report is ordered by case id.
pub fn suite_run(field_override: Option<FieldSpec>) -> SuiteReport {
    suite_run_filtered(field_override, |_| true)
}

/// Runs the cases whose id satisfies `keep`.
pub fn suite_run_filtered(field_override: Option<FieldSpec>, keep: impl Fn(&str) -> bool + Sync) -> SuiteReport {
    let results: Vec<CaseResult> = cases()
        .into_par_iter()
        .filter(|c| keep(c.id))
        .map(|c| run_case(&c, field_override))
        .collect();
    SuiteReport::from_cases(field_override, results)
}

fn run_case(case: &Case, field_override: Option<FieldSpec>) -> CaseResult {
    let field = match case.field {
        FieldUse::Fixed(f) => f,
        FieldUse::Generic => field_override.unwrap_or(Q),
    };
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(|| (case.run)(field))
        .unwrap_or_else(|_| Err(CaseError::Fail("case panicked".into())));
    let wall_ms = start.elapsed().as_secs_f64() * 1000.0;
    let (status, transcript, detail) = match outcome {
        Ok(t) => (Status::Pass, t, String::new()),
        Err(CaseError::NotCoprime(m)) if case.bezout => {
            (Status::ExpectedFail, format!("not coprime: {m}"), format!("(F, F_V) != (1): {m}"))
        }
        Err(CaseError::NotCoprime(m)) => (Status::Fail, format!("not coprime: {m}"), m),
        Err(CaseError::Skip(m)) => (Status::Skip, format!("skip: {m}"), m),
        Err(CaseError::Fail(m)) => (Status::Fail, format!("fail: {m}"), m),
    };
    CaseResult {
        id: case.id.to_string(),
        anchor: case.anchor.to_string(),
        field: field.to_string(),
        status,
        wall_ms,
        digest: hex(&Sha256::digest(transcript.as_bytes())),
        detail,
    }
}

/// Builds a fixture ring; a fixture that degenerates in the requested field is skipped.
fn ring(field: FieldSpec, r: &[u32], f: &str) -> Result<Ring, CaseError> {
    Ring::danielewski(field, r, f).map_err(|e| CaseError::Skip(format!("B({r:?}, {f}) over {field}: {e}")))
}

fn asanuma_ring(field: FieldSpec, r: &[u32], h: &str) -> Result<Ring, CaseError> {
    Ring::asanuma(field, r, h).map_err(|e| CaseError::Skip(format!("A({r:?}, {h}) over {field}: {e}")))
}

fn case_parse_round_trip(field: FieldSpec) -> CaseResultT {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let b = ring(field, &[2], "V^2")?;
    let mut t = String::new();
    for i in 0..300 {
        let p = sample::raw_element(&mut rng, &b, 4, 5);
        let text = print_poly(&p);
        let back = parse_poly(&text, b.universe(), field)?;
        ensure(back == p, || format!("round trip changed {text}"))?;
        if i < 5 {
            let _ = writeln!(t, "{text}");
        }
    }
    Ok(t)
}

fn case_config_validation(_: FieldSpec) -> CaseResultT {
    let e = parse_ring_config("field = Q\nm = 1\nr = 2\nF = T1*V\n").err().map(|e| e.to_string());
    ensure(e.as_deref() == Some("F not monic in V"), || format!("not-monic config gave {e:?}"))?;
    let e = parse_ring_config("field = Q\nfamily = asanuma\nm = 1\nr = 1\nH = Z + T\n");
    ensure(e.is_err(), || "asanuma config with r = [1] accepted".into())?;
    let ok = parse_ring_config("field = Fp:5\nfamily = asanuma\nm = 2\nr = 2,2\nH = 1 + Z^2\n")?;
    ensure(ok.family == Family::Asanuma && ok.m == 2, || "asanuma example rejected".into())?;
    Ok(format!("not monic rejected\nr = [1] rejected\naccepted {}\n", print_poly(&ok.defining)))
}

fn case_normal_form(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2")?;
    let x = b.parse("T1^3*U^2")?;
    ensure_eq(&x, &b.parse("t1*u*v^2")?, "normal form of t1^3 u^2")?;
    let l = b.parse("t1*u*v")?.laurent();
    ensure_eq(&print_poly(&l), &"t1^-1*v^3".to_string(), "Laurent image of t1 u v")?;
    let back = b.retract(&l)?;
    ensure_eq(&back, &b.parse("t1*u*v")?, "retract")?;
    Ok(format!("{x}\n{}\n", print_poly(&l)))
}

fn case_laurent_oracle(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2")?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let rel = b.relation();
    let (mut equal, mut total) = (0, 0);
    for i in 0..300 {
        let a = sample::raw_element(&mut rng, &b, 6, 4);
        let c = if i % 2 == 0 {
            &a + &(&sample::raw_element(&mut rng, &b, 2, 2) * &rel)
        } else {
            sample::raw_element(&mut rng, &b, 6, 4)
        };
        let nf_eq = eq_check(&b.element(&a)?, &b.element(&c)?)?;
        let oracle = b.laurent_of(&a) == b.laurent_of(&c);
        ensure(nf_eq == oracle, || format!("disagreement on {a} vs {c}"))?;
        equal += usize::from(nf_eq);
        total += 1;
    }
    Ok(format!("{total} pairs, {equal} equal, all agree\n"))
}

fn case_degrees(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2")?;
    let f = Filtration::new(&b, WeightVector::new(vec![-1], 0))?;
    let mut t = String::new();
    for (x, want) in [("t1", -1), ("u", 2), ("t1*u*v^2", 1)] {
        let d = f.filt_degree(&b.parse(x)?)?;
        ensure_eq(&d, &Degree::Finite(want), &format!("degree of {x}"))?;
        let _ = writeln!(t, "deg {x} = {d}");
    }
    ensure_eq(&f.ell(), &2, "ell")?;
    Ok(t)
}

fn case_top_form(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2 + T1*V")?;
    let mut t = String::new();
    for (w, want) in [(-1, "V^2"), (1, "T1*V")] {
        let f = Filtration::new(&b, WeightVector::new(vec![w], 0))?;
        let top = f.top_relation()?;
        ensure_eq(&print_poly(&top), &want.to_string(), &format!("top form for w = ({w}; 0)"))?;
        let _ = writeln!(t, "w = ({w}; 0): {}", print_poly(&top));
    }
    Ok(t)
}

fn case_gr(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2 + T1*V")?;
    let f = Filtration::new(&b, WeightVector::new(vec![-1], 0))?;
    let gr = f.build_gr()?;
    ensure_eq(gr.ring(), &ring(field, &[2], "V^2")?, "gr ring")?;
    ensure(gr.relation_holds()?, || "t1^2 u = F_top fails in gr".into())?;
    let rho = gr.leading_form(&b.parse("t1^2*u")?)?;
    ensure_eq(&rho, &gr.ring().parse("v^2")?, "leading form of t1^2 u")?;
    Ok(format!("{}\n", gr.ring()))
}

fn case_gr_divisible(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2 + T1*V")?;
    let f = Filtration::new(&b, WeightVector::new(vec![1], 0))?;
    match f.build_gr() {
        Err(FiltrationError::DivisibleTopForm(1)) => Ok("DivisibleTopForm(1)\n".into()),
        Err(e) => Err(CaseError::Fail(format!("wrong error {e}"))),
        Ok(_) => Err(CaseError::Fail("gr built although t1 divides the top form".into())),
    }
}

fn case_gr_v_weight(field: FieldSpec) -> CaseResultT {
    let mut t = String::new();
    for (r, f, want) in [(&[2u32, 3][..], "V^3 + T1*V^2 + T2 + 1", "V^3"), (&[1][..], "V^2 + 3*T1 - 1", "V^2")] {
        let b = ring(field, r, f)?;
        let filt = Filtration::new(&b, WeightVector::new(vec![0; r.len()], 1))?;
        let gr = filt.build_gr()?;
        ensure_eq(&print_poly(gr.top_relation()), &want.to_string(), "gr relation")?;
        let _ = writeln!(t, "{}", gr.ring());
    }
    Ok(t)
}

fn case_leading_form(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2 + T1*V")?;
    let f = Filtration::new(&b, WeightVector::new(vec![-1], 0))?;
    let gr = f.build_gr()?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut n = 0;
    while n < 200 {
        let x = sample::element(&mut rng, &b, 3, 3);
        let y = sample::element(&mut rng, &b, 3, 3);
        if x.is_zero() || y.is_zero() {
            continue;
        }
        let lhs = gr.leading_form(&(&x * &y))?;
        let rhs = &gr.leading_form(&x)? * &gr.leading_form(&y)?;
        ensure(lhs == rhs, || format!("rho({x} * {y}) = {lhs}, product of leading forms {rhs}"))?;
        n += 1;
    }
    Ok(format!("{n} pairs\n"))
}

fn case_homogenize(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2 + T1*V")?;
    let f = Filtration::new(&b, WeightVector::new(vec![-1], 0))?;
    let phi = mk_v_shift(&b)?;
    let t1 = b.gen("t1")?;
    let h = homogenize_expmap(&phi, &f, &[t1.clone(), &t1 * &t1])?;
    let expected = mk_v_shift(h.gr.ring())?;
    for (g, img) in expected.images() {
        ensure(h.map.image(g) == Some(img), || format!("image of {g} differs from the v-shift on gr"))?;
    }
    Ok(format!("theta = {}\n{}\n", h.theta, h.map))
}

fn axioms(phi: &ExpMap) -> Result<(), CaseError> {
    let rep = phi.check_exponential()?;
    ensure(rep.passed(), || rep.to_string())
}

fn case_translation(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2")?.adjoin(&["w"])?;
    let phi = mk_translation(&b, "w")?;
    axioms(&phi)?;
    ensure(phi.is_invariant(&b.gen("u")?)?, || "u moved".into())?;
    Ok(format!("{phi}\n"))
}

fn case_v_shift(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2")?;
    let phi = mk_v_shift(&b)?;
    axioms(&phi)?;
    ensure_eq(phi.image("u").expect("u"), &phi.target().parse("u + 2*v*W + t1^2*W^2")?, "image of u")?;
    ensure(phi.is_invariant(&b.gen("t1")?)?, || "t1 moved".into())?;
    ensure(!phi.is_invariant(&b.gen("v")?)?, || "v fixed".into())?;
    Ok(format!("{phi}\n"))
}

fn case_bad_map(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2")?;
    let phi = ExpMap::from_texts(&b, "W", &[("v", "v + W")])?;
    let rep = phi.check_exponential()?;
    let bad = rep.failures.iter().find(|f| f.axiom == Axiom::WellDefined);
    let Some(bad) = bad else {
        return Err(CaseError::Fail("well-definedness failure not reported".into()));
    };
    ensure_eq(&bad.difference, &phi.target().parse("-2*v*W - W^2")?.to_string(), "relation image")?;
    Ok(format!("{}\n", bad.difference))
}

fn case_unit_row(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[1, 2], "V^2")?;
    let row = mk_unit_row(&b, 0)?;
    let phi = &row.map;
    axioms(phi)?;
    let tt = phi.target();
    ensure_eq(phi.image("t1").expect("t1"), &tt.parse("t1 + 2*v*W + u*t2^2*W^2")?, "image of t1")?;
    ensure_eq(phi.image("v").expect("v"), &tt.parse("v + u*t2^2*W")?, "image of v")?;
    ensure(phi.is_invariant(&b.gen("u")?)?, || "u moved".into())?;
    ensure(phi.is_invariant(&b.gen("t2")?)?, || "t2 moved".into())?;
    Ok(format!("n = {}\n{phi}\n", row.n))
}

fn pair_eq(pair: &BezoutPair, g1: &str, g2: &str, field: FieldSpec) -> Result<(), CaseError> {
    let u = pair.g1.universe();
    ensure_eq(&pair.g1, &parse_poly(g1, u, field)?, "g1")?;
    ensure_eq(&pair.g2, &parse_poly(g2, u, field)?, "g2")
}

fn case_bezout(field: FieldSpec) -> CaseResultT {
    let u = Family::Danielewski.config_universe(1);
    let f = parse_poly("V^2 - 1", &u, field)?;
    let pair = bezout_cofactors(&f).map_err(stiso_err)?;
    pair_eq(&pair, "-1", "1/2*V", field)?;
    let wrong = BezoutPair { g1: parse_poly("1", &u, field)?, g2: parse_poly("V", &u, field)? };
    ensure(!verify_cofactors(&f, &wrong), || "(1, V) accepted".into())?;
    let g = parse_poly("V^3 + V", &u, field)?;
    let pg = bezout_cofactors(&g).map_err(stiso_err)?;
    ensure(verify_cofactors(&g, &pg), || "cubic cofactors fail".into())?;
    Ok(format!(
        "V^2 - 1: {}, {}\nV^3 + V: {}, {}\n",
        print_poly(&pair.g1),
        print_poly(&pair.g2),
        print_poly(&pg.g1),
        print_poly(&pg.g2)
    ))
}

fn case_bezout_reduction(field: FieldSpec) -> CaseResultT {
    let u = Family::Danielewski.config_universe(1);
    let f = parse_poly("V^2 - 1", &u, field)?;
    let pair = bezout_cofactors(&f).map_err(stiso_err)?;
    pair_eq(&pair, "2", "2*V", field)?;
    Ok(format!("{}, {}\n", print_poly(&pair.g1), print_poly(&pair.g2)))
}

fn case_elements(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2 - 1")?;
    let src = b.adjoin(&["w"])?;
    let (v1, u1, _) = build_v1_u1(&src, 0)?;
    ensure_eq(&v1, &src.parse("v + t1*w")?, "v1")?;
    ensure_eq(&u1, &src.parse("t1*u + 2*v*w + t1*w^2")?, "u1")?;
    let pair = cofactors_for(b.config()).map_err(stiso_err)?;
    let wt = build_wtilde(&src, 0, &v1, &u1, &pair).map_err(stiso_err)?;
    ensure_eq(&wt, &src.parse("-1/2*(u*v + 3*t1*u*w + 3*v*w^2 + t1*w^3)")?, "w~")?;
    let b22 = ring(field, &[2, 2], "V^2 - 1")?.adjoin(&["w"])?;
    let (v1b, _, _) = build_v1_u1(&b22, 0)?;
    ensure_eq(&v1b, &b22.parse("v + t1*t2^2*w")?, "v1 for r = (2, 2)")?;
    Ok(format!("{v1}\n{u1}\n{wt}\n{v1b}\n"))
}

fn certificate(field: FieldSpec, r: &[u32], f: &str, target: Option<&[u32]>, links: usize) -> CaseResultT {
    let b = ring(field, r, f)?;
    let pair = cofactors_for(b.config()).map_err(stiso_err)?;
    let cert = match target {
        Some(s) => chain_reduce(&b, &pair, s),
        None => build_iso_certificate(&b, &pair),
    }
    .map_err(stiso_err)?;
    ensure_eq(&cert.links.len(), &links, "number of links")?;
    let text = cert.to_text();
    let rep = verify_certificate_text(&text).map_err(stiso_err)?;
    if let Some(bad) = rep.claims.iter().find(|c| !c.holds) {
        return Err(CaseError::Fail(format!("re-verification: {} {}: {}", bad.scope, bad.id, bad.detail)));
    }
    Ok(text)
}

fn case_link_b2(field: FieldSpec) -> CaseResultT {
    certificate(field, &[2], "V^2 - 1", None, 1)
}

fn case_link_b22(field: FieldSpec) -> CaseResultT {
    let t = certificate(field, &[2, 2], "V^2 - 1", None, 1)?;
    ensure(t.contains("end.r = 1,2"), || "link does not end at (1, 2)".into())?;
    Ok(t)
}

fn case_link_cubic(field: FieldSpec) -> CaseResultT {
    let mut t = certificate(field, &[2], "V^3 + V", None, 1)?;
    t.push_str(&certificate(field, &[1], "V^3 + V", Some(&[2]), 1)?);
    Ok(t)
}

fn case_chain_b3(field: FieldSpec) -> CaseResultT {
    let mut t = certificate(field, &[3], "V^2 - 1", Some(&[2]), 1)?;
    t.push_str(&certificate(field, &[3], "V^2 - 1", Some(&[1]), 2)?);
    Ok(t)
}

fn case_chain_b22(field: FieldSpec) -> CaseResultT {
    certificate(field, &[2, 2], "V^2 - 1", Some(&[1, 1]), 2)
}

fn case_chain_empty(field: FieldSpec) -> CaseResultT {
    certificate(field, &[2], "V^2 - 1", Some(&[2]), 0)
}

fn case_char2(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2 - 1")?;
    let src = b.adjoin(&["w"])?;
    let (_, u1, _) = build_v1_u1(&src, 0)?;
    ensure_eq(&u1, &src.parse("t1*u + t1*w^2")?, "u1")?;
    match bezout_cofactors(&b.config().defining) {
        Err(StisoError::NotCoprime(m)) => Err(CaseError::NotCoprime(format!("{m}; u1 = {u1} still satisfies F(t, v1) = t u1"))),
        Err(e) => Err(CaseError::Fail(format!("expected NotCoprime, got {e}"))),
        Ok(_) => Err(CaseError::Fail("cofactors found in characteristic 2".into())),
    }
}

fn case_char3(field: FieldSpec) -> CaseResultT {
    let mut t = case_elements_char3(field)?;
    t.push_str(&certificate(field, &[3], "V^2 - 1", Some(&[1]), 2)?);
    Ok(t)
}

fn case_elements_char3(field: FieldSpec) -> CaseResultT {
    let b = ring(field, &[2], "V^2 - 1")?;
    let src = b.adjoin(&["w"])?;
    let (v1, u1, _) = build_v1_u1(&src, 0)?;
    let pair = cofactors_for(b.config()).map_err(stiso_err)?;
    let wt = build_wtilde(&src, 0, &v1, &u1, &pair).map_err(stiso_err)?;
    Ok(format!("{wt}\n"))
}

fn case_classify_separable(field: FieldSpec) -> CaseResultT {
    let a = asanuma_ring(field, &[2, 2], "1 + Z^2")?;
    let s = h_shape_classify(&a, None, None)?;
    ensure_eq(&s.class, &ShapeClass::MonicZSeparable, "class of 1 + Z^2")?;
    Ok(s.to_string())
}

fn case_classify_linear(field: FieldSpec) -> CaseResultT {
    let a = asanuma_ring(field, &[2], "Z^2 + (Z + 1)*T")?;
    let s = h_shape_classify(&a, None, None)?;
    ensure_eq(&s.class, &ShapeClass::LinearInT, "class")?;
    let u = &s.h.universe().clone();
    ensure(s.a0.as_ref() == Some(&parse_poly("Z^2", u, field)?), || "a0".into())?;
    ensure(s.a1.as_ref() == Some(&parse_poly("Z + 1", u, field)?), || "a1".into())?;
    ensure(s.htilde.as_ref().is_some_and(|h| h.is_zero()), || "H~".into())?;
    Ok(s.to_string())
}

fn case_classify_unit(field: FieldSpec) -> CaseResultT {
    let a = asanuma_ring(field, &[2], "5")?;
    let s = h_shape_classify(&a, None, None)?;
    ensure_eq(&s.class, &ShapeClass::UnitH, "class of 5")?;
    Ok(s.to_string())
}

fn ml1_case(field: FieldSpec, r: &[u32], h: &str) -> CaseResultT {
    let a = asanuma_ring(field, r, h)?;
    let maps = mk_ml1_maps(&a)?;
    let mut t = String::new();
    for m in &maps {
        axioms(&m.map)?;
        ensure(m.map.is_invariant(&a.gen("y")?)?, || format!("y moved by map {}", m.j))?;
        let _ = writeln!(t, "j = {}: {}", m.j, m.map.to_string().replace('\n', "; "));
    }
    let common = ml_intersection(&a, &maps);
    ensure(common.is_empty(), || format!("common claimed invariants {common:?}"))?;
    Ok(t)
}

fn case_ml1_m1(field: FieldSpec) -> CaseResultT {
    ml1_case(field, &[2], "Z + T")
}

fn case_ml1_m2(field: FieldSpec) -> CaseResultT {
    ml1_case(field, &[2, 3], "Z^2 + (Z + 1)*T + X1*Z + X2^2")
}

fn case_ex2(_: FieldSpec) -> CaseResultT {
    let rep = verify_ex2_suite()?;
    ensure(rep.passed(), || rep.to_string())?;
    Ok(rep.to_string())
}
