use std::collections::HashMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use danielewski::asanuma::{h_shape_classify, mk_ml1_maps, ml_intersection, verify_ex2_suite, CoordinateChange};
use danielewski::expmap::{mk_translation, mk_unit_row, mk_v_shift, ExpMap};
use danielewski::filtration::homogenize_expmap;
use danielewski::stable_iso::{build_iso_certificate, chain_reduce, cofactors_for, verify_certificate_text, BezoutPair};
use danielewski::suite::{report_emit, suite_run_filtered, OutputFormat};
use danielewski::{parse_ring_config, print_poly, FieldSpec, Filtration, Ring, RingConfig, WeightVector};

const GRAMMAR: &str = "\
Input grammar:
  expr    := term (('+' | '-') term)*
  term    := factor ('*' factor)*                 products need an explicit '*'
  factor  := ('-' | '+') factor | power
  power   := atom ('^' integer)?
  atom    := integer | integer '/' integer | name | '(' expr ')'    '/' only between integer literals
  name    := letter (letter | digit | '_')*
Config files, one `key = value` per line, `#` starts a comment:
  field  = Q | Fp:<p>
  family = danielewski | asanuma          (default danielewski)
  m      = <number of base variables>
  r      = r1,...,rm
  F      = <expr in T1..Tm, V>            danielewski rings
  H      = <expr in X1..Xm, Z, T>         asanuma rings
  g1, g2 = <cofactors>                    optional, together
Ring elements may use the ring names (t1.., u, v or x1.., y, z, t) or the config names.
Weights: --weights \"e1,...,em;ev\", for example \"-1;0\".
Maps: --map \"gen = expr\" (repeatable, or separated by ';'), images in ring[W].
Exit status: 0 success, 1 verification failure, 2 usage error.";

#[derive(Parser)]
#[command(name = "danielewski", version, about = "Normal forms, filtrations, exponential maps and stable-isomorphism certificates", after_help = GRAMMAR)]
struct Cli {
    /// Field override: Q or Fp:<p>.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Ring configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Normal forms, filtration degrees and graded rings.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Exponential maps.
    #[command(subcommand)]
    Expmap(ExpmapCmd),
    /// Stable-isomorphism certificates.
    #[command(subcommand)]
    Stiso(StisoCmd),
    /// Asanuma rings.
    #[command(subcommand)]
    Asanuma(AsanumaCmd),
    /// The built-in fixture suite.
    #[command(subcommand)]
    Suite(SuiteCmd),
}

#[derive(Subcommand)]
enum RingCmd {
    /// Normal form of an element.
    Normalize {
        #[arg(long)]
        expr: String,
    },
    /// Filtration degree of an element.
    Deg {
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        expr: String,
    },
    /// Associated graded ring, and leading forms of any given elements.
    Gr {
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        #[arg(long)]
        expr: Vec<String>,
    },
}

#[derive(Args)]
struct MapSpec {
    /// Generator images `gen = expr`.
    #[arg(long)]
    map: Vec<String>,
    /// Built-in map instead of --map: translation, v-shift or unit-row.
    #[arg(long)]
    kind: Option<String>,
    /// Variable for --kind translation.
    #[arg(long)]
    var: Option<String>,
    /// 1-based coordinate for --kind unit-row.
    #[arg(long)]
    index: Option<usize>,
    /// Indeterminate name for --map.
    #[arg(long, default_value = "W")]
    indet: String,
    /// Polynomial generators adjoined to the ring before building the map.
    #[arg(long)]
    adjoin: Vec<String>,
}

#[derive(Subcommand)]
enum ExpmapCmd {
    /// Checks the exponential-map axioms for a map.
    Check(MapSpec),
    /// Builds a map (--kind) and verifies it.
    Make(MapSpec),
    /// Whether elements are fixed by the map.
    Invariant {
        #[command(flatten)]
        spec: MapSpec,
        #[arg(long)]
        expr: Vec<String>,
    },
    /// Induced homogeneous map on the graded ring.
    Homogenize {
        #[command(flatten)]
        spec: MapSpec,
        #[arg(long, allow_hyphen_values = true)]
        weights: String,
        /// Invariant elements whose leading forms must be invariant.
        #[arg(long)]
        witness: Vec<String>,
    },
}

#[derive(Subcommand)]
enum StisoCmd {
    /// Builds and verifies a certificate B(r, F)[w] = B(s, F)[w].
    Build {
        /// Target exponents s1,...,sm; one link reducing the leftmost r_i >= 2 if omitted.
        #[arg(long)]
        target: Option<String>,
        /// Certificate file; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recomputes every claim of a certificate file.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(Subcommand)]
enum AsanumaCmd {
    /// Shape of H in the given coordinates.
    Classify {
        /// Coordinate change `Z1;T1;Z_inv;T_inv`, polynomials in Z, T.
        #[arg(long)]
        coords: Option<String>,
    },
    /// Maps translating each x_j, with their claimed invariants.
    Ml1Maps,
    /// The fixed example with H = 1 + Z^2.
    Ex2,
}

#[derive(Subcommand)]
enum SuiteCmd {
    /// Runs the fixture suite.
    Run {
        /// Only cases whose id starts with this prefix.
        #[arg(long)]
        case: Option<String>,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
}

type Res = Result<(String, Value, bool), Failure>;

fn usage(flag: &str, e: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("invalid value for {flag}: {e}"))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            if e.use_stderr() {
                eprintln!("\n{GRAMMAR}");
                return ExitCode::from(2);
            }
            return ExitCode::from(code as u8);
        }
    };
    let output = cli.output;
    match dispatch(&cli) {
        Ok((text, value, ok)) => {
            match output {
                Output::Text => print!("{text}"),
                Output::Json => println!("{}", serde_json::to_string_pretty(&value).expect("json")),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}\n\n{GRAMMAR}");
            ExitCode::from(2)
        }
        Err(Failure::Verification(m)) => {
            match output {
                Output::Text => eprintln!("FAILED: {m}"),
                Output::Json => println!("{}", json!({"verified": false, "error": m})),
            }
            ExitCode::from(1)
        }
    }
}

fn field_override(cli: &Cli) -> Result<Option<FieldSpec>, Failure> {
    cli.field
        .as_deref()
        .map(|f| f.parse::<FieldSpec>().map_err(|e| usage("--field", e)))
        .transpose()
}

fn load_config(cli: &Cli) -> Result<RingConfig, Failure> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| Failure::Usage("--config <file> is required for this command".into()))?;
    let text = std::fs::read_to_string(path).map_err(|e| usage("--config", format!("{}: {e}", path.display())))?;
    let text = match field_override(cli)? {
        Some(f) => {
            let kept: Vec<&str> = text
                .lines()
                .filter(|l| l.split('#').next().unwrap_or("").split('=').next().map(str::trim) != Some("field"))
                .collect();
            format!("field = {f}\n{}\n", kept.join("\n"))
        }
        None => text,
    };
    parse_ring_config(&text).map_err(|e| usage("--config", e))
}

fn load_ring(cli: &Cli) -> Result<Ring, Failure> {
    Ring::new(&load_config(cli)?).map_err(|e| usage("--config", e))
}

fn parse_weights(s: &str) -> Result<WeightVector, Failure> {
    let (t, v) = s
        .split_once(';')
        .ok_or_else(|| usage("--weights", format!("`{s}` needs the form e1,...,em;ev")))?;
    let num = |x: &str| x.trim().parse::<i64>().map_err(|_| usage("--weights", format!("`{x}` is not an integer")));
    let tw = t.split(',').filter(|x| !x.trim().is_empty()).map(num).collect::<Result<Vec<_>, _>>()?;
    Ok(WeightVector::new(tw, num(v)?))
}

fn parse_r(flag: &str, s: &str) -> Result<Vec<u32>, Failure> {
    s.trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| usage(flag, format!("`{x}` is not a positive integer"))))
        .collect()
}

fn elem(ring: &Ring, flag: &str, s: &str) -> Result<danielewski::RingElement, Failure> {
    ring.parse(s).map_err(|e| usage(flag, format!("`{s}`: {e}")))
}

fn dispatch(cli: &Cli) -> Res {
    match &cli.command {
        Command::Ring(c) => ring_cmd(cli, c),
        Command::Expmap(c) => expmap_cmd(cli, c),
        Command::Stiso(c) => stiso_cmd(cli, c),
        Command::Asanuma(c) => asanuma_cmd(cli, c),
        Command::Suite(SuiteCmd::Run { case }) => {
            let field = field_override(cli)?;
            let prefix = case.clone().unwrap_or_default();
            let report = suite_run_filtered(field, |id| id.starts_with(&prefix));
            let ok = report.passed();
            let text = report_emit(&report, OutputFormat::Text);
            let value: Value = serde_json::from_str(&report_emit(&report, OutputFormat::Json)).expect("json");
            Ok((text, value, ok))
        }
    }
}

fn ring_cmd(cli: &Cli, c: &RingCmd) -> Res {
    let ring = load_ring(cli)?;
    match c {
        RingCmd::Normalize { expr } => {
            let x = elem(&ring, "--expr", expr)?;
            let laurent = print_poly(&x.laurent());
            Ok((format!("{x}\n"), json!({"ring": ring.to_string(), "normal_form": x.to_string(), "laurent": laurent}), true))
        }
        RingCmd::Deg { weights, expr } => {
            let f = Filtration::new(&ring, parse_weights(weights)?).map_err(|e| usage("--weights", e))?;
            let x = elem(&ring, "--expr", expr)?;
            let d = f.filt_degree(&x).map_err(|e| Failure::Verification(e.to_string()))?;
            Ok((format!("{d}\n"), json!({"degree": d.to_string(), "ell": f.ell()}), true))
        }
        RingCmd::Gr { weights, expr } => {
            let f = Filtration::new(&ring, parse_weights(weights)?).map_err(|e| usage("--weights", e))?;
            let gr = f.build_gr().map_err(|e| Failure::Verification(e.to_string()))?;
            let holds = gr.relation_holds().map_err(|e| Failure::Verification(e.to_string()))?;
            let mut text = format!("gr = {}\nmonic in v: {}\nrelation verified: {holds}\n", gr.ring(), gr.monic_in_v());
            let mut forms = Vec::new();
            for e in expr {
                let x = elem(&ring, "--expr", e)?;
                let lf = gr.leading_form(&x).map_err(|e| Failure::Verification(e.to_string()))?;
                text.push_str(&format!("rho({x}) = {lf}\n"));
                forms.push(json!({"element": x.to_string(), "leading_form": lf.to_string()}));
            }
            let value = json!({
                "gr": gr.ring().to_string(),
                "top_relation": print_poly(gr.top_relation()),
                "monic_in_v": gr.monic_in_v(),
                "relation_verified": holds,
                "leading_forms": forms,
            });
            Ok((text, value, holds))
        }
    }
}

fn build_map(ring: &Ring, spec: &MapSpec) -> Result<ExpMap, Failure> {
    let err = |e: danielewski::error::ExpMapError| Failure::Verification(e.to_string());
    match spec.kind.as_deref() {
        Some("translation") => {
            let var = spec.var.as_deref().ok_or_else(|| Failure::Usage("--kind translation needs --var".into()))?;
            mk_translation(ring, var).map_err(err)
        }
        Some("v-shift") => mk_v_shift(ring).map_err(err),
        Some("unit-row") => {
            let j = spec.index.ok_or_else(|| Failure::Usage("--kind unit-row needs --index".into()))?;
            if j == 0 {
                return Err(usage("--index", "coordinates are 1-based"));
            }
            mk_unit_row(ring, j - 1).map(|r| r.map).map_err(err)
        }
        Some(other) => Err(usage("--kind", format!("`{other}`; expected translation, v-shift or unit-row"))),
        None => {
            let mut pairs = Vec::new();
            for entry in spec.map.iter().flat_map(|m| m.split(';')) {
                if entry.trim().is_empty() {
                    continue;
                }
                let (g, e) = entry
                    .split_once('=')
                    .ok_or_else(|| usage("--map", format!("`{entry}` needs the form gen = expr")))?;
                pairs.push((g.trim().to_string(), e.trim().to_string()));
            }
            if pairs.is_empty() {
                return Err(Failure::Usage("give --map or --kind".into()));
            }
            let target = ring.adjoin(&[spec.indet.as_str()]).map_err(|e| usage("--indet", e))?;
            let mut images = HashMap::new();
            for (g, e) in pairs {
                images.insert(g, elem(&target, "--map", &e)?);
            }
            ExpMap::new(ring, &spec.indet, &images).map_err(|e| usage("--map", e))
        }
    }
}

fn map_ring(cli: &Cli, spec: &MapSpec) -> Result<Ring, Failure> {
    let ring = load_ring(cli)?;
    if spec.adjoin.is_empty() {
        Ok(ring)
    } else {
        ring.adjoin(&spec.adjoin).map_err(|e| usage("--adjoin", e))
    }
}

fn map_json(phi: &ExpMap) -> Value {
    let images: serde_json::Map<String, Value> =
        phi.images().map(|(g, img)| (g.to_string(), Value::String(img.to_string()))).collect();
    json!({"indeterminate": phi.indeterminate(), "images": images})
}

fn check_map(phi: &ExpMap) -> Res {
    let rep = phi.check_exponential().map_err(|e| Failure::Verification(e.to_string()))?;
    let ok = rep.passed();
    let text = format!("{phi}\n{rep}\n{}\n", if ok { "VERIFIED" } else { "FAILED" });
    let failures: Vec<Value> = rep
        .failures
        .iter()
        .map(|f| json!({"axiom": format!("{:?}", f.axiom), "generator": f.generator, "difference": f.difference}))
        .collect();
    Ok((text, json!({"map": map_json(phi), "verified": ok, "failures": failures}), ok))
}

fn expmap_cmd(cli: &Cli, c: &ExpmapCmd) -> Res {
    match c {
        ExpmapCmd::Check(spec) | ExpmapCmd::Make(spec) => {
            if matches!(c, ExpmapCmd::Make(_)) && spec.kind.is_none() {
                return Err(Failure::Usage("expmap make needs --kind".into()));
            }
            let ring = map_ring(cli, spec)?;
            check_map(&build_map(&ring, spec)?)
        }
        ExpmapCmd::Invariant { spec, expr } => {
            let ring = map_ring(cli, spec)?;
            let phi = build_map(&ring, spec)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for e in expr {
                let x = elem(&ring, "--expr", e)?;
                let inv = phi.is_invariant(&x).map_err(|e| Failure::Verification(e.to_string()))?;
                text.push_str(&format!("{x}: {}\n", if inv { "invariant" } else { "not invariant" }));
                rows.push(json!({"element": x.to_string(), "invariant": inv}));
            }
            Ok((text, json!({"map": map_json(&phi), "results": rows}), true))
        }
        ExpmapCmd::Homogenize { spec, weights, witness } => {
            let ring = map_ring(cli, spec)?;
            let phi = build_map(&ring, spec)?;
            let f = Filtration::new(&ring, parse_weights(weights)?).map_err(|e| usage("--weights", e))?;
            let ws = witness.iter().map(|w| elem(&ring, "--witness", w)).collect::<Result<Vec<_>, _>>()?;
            let h = homogenize_expmap(&phi, &f, &ws).map_err(|e| Failure::Verification(e.to_string()))?;
            let text = format!("gr = {}\ntheta = {}\n{}\nVERIFIED\n", h.gr.ring(), h.theta, h.map);
            let value = json!({"gr": h.gr.ring().to_string(), "theta": h.theta.to_string(), "map": map_json(&h.map), "verified": true});
            Ok((text, value, true))
        }
    }
}

fn stiso_cmd(cli: &Cli, c: &StisoCmd) -> Res {
    match c {
        StisoCmd::Build { target, out } => {
            let cfg = load_config(cli)?;
            let ring = Ring::new(&cfg).map_err(|e| usage("--config", e))?;
            let fail = |e: danielewski::error::StisoError| Failure::Verification(e.to_string());
            let pair: BezoutPair = cofactors_for(&cfg).map_err(fail)?;
            let cert = match target {
                Some(s) => chain_reduce(&ring, &pair, &parse_r("--target", s)?).map_err(fail)?,
                None => build_iso_certificate(&ring, &pair).map_err(fail)?,
            };
            let body = cert.to_text();
            let summary = format!(
                "{} link(s) from r = {:?} to r = {:?}, {} claims",
                cert.links.len(),
                cert.start,
                cert.end,
                cert.all_claims().count()
            );
            let text = match out {
                Some(p) => {
                    std::fs::write(p, &body).map_err(|e| usage("--out", format!("{}: {e}", p.display())))?;
                    format!("wrote {}\n{summary}\nVERIFIED\n", p.display())
                }
                None => format!("{body}# {summary}\n# VERIFIED\n"),
            };
            let value = json!({
                "links": cert.links.len(),
                "start": cert.start,
                "end": cert.end,
                "claims": cert.all_claims().collect::<Vec<_>>(),
                "certificate": if out.is_some() { Value::Null } else { Value::String(body) },
                "verified": true,
            });
            Ok((text, value, true))
        }
        StisoCmd::Verify { cert } => {
            let text = std::fs::read_to_string(cert).map_err(|e| usage("--cert", format!("{}: {e}", cert.display())))?;
            let rep = verify_certificate_text(&text).map_err(|e| Failure::Verification(e.to_string()))?;
            let ok = rep.passed();
            let mut out = String::new();
            for c in &rep.claims {
                out.push_str(&format!("{} {} {}", if c.holds { "ok  " } else { "FAIL" }, c.scope, c.id));
                if !c.detail.is_empty() {
                    out.push_str(&format!(": {}", c.detail));
                }
                out.push('\n');
            }
            out.push_str(if ok { "VERIFIED\n" } else { "FAILED\n" });
            Ok((out, json!({"verified": ok, "claims": rep.claims}), ok))
        }
    }
}

fn asanuma_cmd(cli: &Cli, c: &AsanumaCmd) -> Res {
    match c {
        AsanumaCmd::Ex2 => {
            let rep = verify_ex2_suite().map_err(|e| Failure::Verification(e.to_string()))?;
            let ok = rep.passed();
            Ok((rep.to_string(), serde_json::to_value(&rep).expect("json"), ok))
        }
        AsanumaCmd::Classify { coords } => {
            let cfg = load_config(cli)?;
            let ring = Ring::new(&cfg).map_err(|e| usage("--config", e))?;
            let change = match coords {
                Some(s) => {
                    let parts: Vec<&str> = s.split(';').collect();
                    let [z1, t1, zi, ti] = parts[..] else {
                        return Err(usage("--coords", "expected Z1;T1;Z_inv;T_inv"));
                    };
                    Some(CoordinateChange::parse(ring.field(), z1, t1, zi, ti).map_err(|e| usage("--coords", e))?)
                }
                None => None,
            };
            let pair = match (&cfg.g1, &cfg.g2) {
                (Some(g1), Some(g2)) => Some(BezoutPair { g1: g1.clone(), g2: g2.clone() }),
                _ => None,
            };
            let shape = h_shape_classify(&ring, change.as_ref(), pair.as_ref()).map_err(|e| Failure::Verification(e.to_string()))?;
            let opt = |p: &Option<danielewski::Polynomial>| p.as_ref().map(print_poly);
            let value = json!({
                "class": shape.class,
                "H": print_poly(&shape.h),
                "a0": opt(&shape.a0),
                "a1": opt(&shape.a1),
                "Htilde": opt(&shape.htilde),
                "note": shape.note,
            });
            Ok((shape.to_string(), value, true))
        }
        AsanumaCmd::Ml1Maps => {
            let ring = load_ring(cli)?;
            let maps = mk_ml1_maps(&ring).map_err(|e| Failure::Verification(e.to_string()))?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for m in &maps {
                text.push_str(&format!("[j = {}]\n{}\nclaimed invariants: {}\nmoved: {}\n", m.j, m.map, m.claimed_invariants.join(", "), m.moved.join(", ")));
                rows.push(json!({"j": m.j, "map": map_json(&m.map), "claimed_invariants": m.claimed_invariants, "moved": m.moved}));
            }
            let common = ml_intersection(&ring, &maps);
            text.push_str(&format!(
                "common claimed generators among x1..xm: {}\nVERIFIED\n",
                if common.is_empty() { "none".to_string() } else { common.join(", ") }
            ));
            Ok((text, json!({"maps": rows, "common": common, "verified": true}), true))
        }
    }
}
