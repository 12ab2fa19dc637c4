//! Certificates for `B(r, F)[w] ≅ B(r - e_c, F)[w]` and chains of them.
//!
//! Given cofactors with `F g1 + F_V g2 = 1` and a coordinate `c` with `r_c >= 2`, put
//!
//! ```text
//! v1 = v + t^(r - e_c) w
//! b  = (F(t, v1) - F - t^(r - e_c) w F_V) / t^r
//! u1 = t_c u + w F_V + b t_c
//! w~ = (w - u1 g2(t, v1)) / t_c
//! ```
//!
//! Then `t, v1, u1, w~` generate `B(r, F)[w]` and satisfy the relation of
//! `B(r - e_c, F)[w]`. A certificate stores both maps, these elements and the exponential map
//! `v -> v + t^r T`, `w -> w - t_c T`; [`verify_certificate_text`] recomputes every claim from
//! the serialized text alone.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::StisoError;
use crate::expmap::ExpMap;
use crate::field::FieldSpec;
use crate::parse::{parse_poly, print_poly, Family, RingConfig};
use crate::poly::{Monomial, Polynomial};
use crate::quotient::{Ring, RingElement, RingHom};

/// Name of the adjoined polynomial generator on both sides of every link.
pub const W: &str = "w";
/// Name of the indeterminate of the link's exponential map.
pub const T: &str = "T";

/// Cofactors with `F g1 + F_V g2 = 1`, over `T1..Tm, V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutPair {
    pub g1: Polynomial,
    pub g2: Polynomial,
}

/// Extended Euclid in `k[V]`, with `g2` reduced modulo `F`.
pub fn bezout_cofactors(f: &Polynomial) -> Result<BezoutPair, StisoError> {
    let vi = f
        .universe()
        .index("V")
        .ok_or(StisoError::NotUnivariate)?;
    if f.support().iter().any(|&i| i != vi) {
        return Err(StisoError::NotUnivariate);
    }
    univariate_cofactors(f, vi)
}

/// Cofactors `(g1, g2)` with `f g1 + f' g2 = 1` for `f` in the single variable at `vi`, with
/// `g2` reduced modulo `f`.
pub fn univariate_cofactors(f: &Polynomial, vi: usize) -> Result<BezoutPair, StisoError> {
    let fv = f.derivative_at(vi);
    if fv.is_zero() {
        return Err(StisoError::NotCoprime(format!("the derivative in {} vanishes", f.universe().name(vi))));
    }
    let field = f.field();
    let u = f.universe();
    let (mut r0, mut r1) = (f.clone(), fv.clone());
    let (mut s0, mut s1) = (Polynomial::one(field, u), Polynomial::zero(field, u));
    let (mut t0, mut t1) = (Polynomial::zero(field, u), Polynomial::one(field, u));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem_in(&r1, vi)?;
        r0 = std::mem::replace(&mut r1, r);
        let s2 = &s0 - &(&q * &s1);
        s0 = std::mem::replace(&mut s1, s2);
        let t2 = &t0 - &(&q * &t1);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let Some(c) = r0.constant_value() else {
        return Err(StisoError::NotCoprime(format!("the gcd is {r0}")));
    };
    let inv = c.inverse().expect("gcd of nonzero polynomials is nonzero");
    let g1 = s0.scale(&inv);
    let g2 = t0.scale(&inv);
    let (q, g2) = g2.div_rem_in(f, vi)?;
    let g1 = &g1 + &(&q * &fv);
    Ok(BezoutPair { g1, g2 })
}

/// Exact check of `F g1 + F_V g2 = 1`.
pub fn verify_cofactors(f: &Polynomial, pair: &BezoutPair) -> bool {
    let Some(vi) = f.universe().index("V") else { return false };
    let (Ok(g1), Ok(g2)) = (pair.g1.reembed(f.universe()), pair.g2.reembed(f.universe())) else {
        return false;
    };
    if g1.field() != f.field() || g2.field() != f.field() {
        return false;
    }
    let lhs = &(f * &g1) + &(&f.derivative_at(vi) * &g2);
    lhs == Polynomial::one(f.field(), f.universe())
}

/// Cofactors from the configuration if present (and verified), otherwise by extended Euclid.
pub fn cofactors_for(config: &RingConfig) -> Result<BezoutPair, StisoError> {
    let pair = match (&config.g1, &config.g2) {
        (Some(g1), Some(g2)) => BezoutPair { g1: g1.clone(), g2: g2.clone() },
        _ => bezout_cofactors(&config.defining)?,
    };
    if !verify_cofactors(&config.defining, &pair) {
        return Err(StisoError::BadCofactors);
    }
    Ok(pair)
}

fn t_power(n: usize, exps: &[u32]) -> Monomial {
    let mut e = vec![0; n];
    for (i, &x) in exps.iter().enumerate() {
        e[i] = x as i32;
    }
    Monomial::from_exponents(e)
}

fn minus_unit(r: &[u32], c: usize) -> Vec<u32> {
    let mut s = r.to_vec();
    s[c] -= 1;
    s
}

/// `(v1, u1, b)` in `B(r, F)[w]` for the coordinate `c`; checks `F(t, v1) = t^(r - e_c) u1`.
pub fn build_v1_u1(
    src: &Ring,
    c: usize,
) -> Result<(RingElement, RingElement, RingElement), StisoError> {
    let r = src.r().to_vec();
    if c >= r.len() || r[c] < 2 {
        return Err(StisoError::NothingToReduce);
    }
    let field = src.field();
    let uu = src.universe();
    let n = uu.len();
    let vi = src.main_free_index();
    let vname = uu.name(vi).to_string();
    let reduced = t_power(n, &minus_unit(&r, c));
    let tr = t_power(n, &r);

    let v = Polynomial::var(field, uu, &vname)?;
    let w = Polynomial::var(field, uu, W)?;
    let v1 = &v + &w.mul_monomial(&reduced);
    let f = src.defining_poly();
    let fv = f.derivative_at(vi);
    let mut sub = HashMap::new();
    sub.insert(vname, v1.clone());
    let f_v1 = f.substitute(uu, &sub)?;
    let b = (&(&f_v1 - f) - &(&w * &fv).mul_monomial(&reduced))
        .div_monomial(&tr)
        .map_err(|_| StisoError::InexactDivision("b".into()))?;
    let tc = Monomial::var(n, c, 1);
    let u = Polynomial::var(field, uu, src.unit_name())?;
    let u1 = &(&u.mul_monomial(&tc) + &(&w * &fv)) + &b.mul_monomial(&tc);

    let v1e = src.element(&v1)?;
    let u1e = src.element(&u1)?;
    let lhs = src.element(&f_v1)?;
    let rhs = src.element(&u1.mul_monomial(&reduced))?;
    if lhs != rhs {
        return Err(StisoError::TranscriptFailure(format!(
            "F(t, v1) - t^(r-e_c) u1 = {}",
            &lhs - &rhs
        )));
    }
    Ok((v1e, u1e, src.element(&b)?))
}

/// `w~ = (w - u1 g2(t, v1)) / t_c`, divided exactly in `B(r, F)[w]`.
pub fn build_wtilde(
    src: &Ring,
    c: usize,
    v1: &RingElement,
    u1: &RingElement,
    pair: &BezoutPair,
) -> Result<RingElement, StisoError> {
    let uu = src.universe();
    let g2 = src.import(&pair.g2)?;
    let mut sub = HashMap::new();
    sub.insert(uu.name(src.main_free_index()).to_string(), v1.nf().clone());
    let g2v1 = src.element(&g2.substitute(uu, &sub)?)?;
    let numer = &src.gen(W)? - &(u1 * &g2v1);
    numer
        .div_by_base_var(c)
        .map_err(|_| StisoError::InexactDivision("w~".into()))
}

/// Whether a link moves down (`r -> r - e_c`) or up along the chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Down,
    Up,
}

/// One recomputed identity of a certificate.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Claim {
    pub scope: String,
    pub id: String,
    pub holds: bool,
    pub detail: String,
}

impl Claim {
    fn new(scope: &str, id: &str, holds: bool, detail: impl Into<String>) -> Claim {
        Claim { scope: scope.into(), id: id.into(), holds, detail: detail.into() }
    }
}

/// The identities every link carries.
pub const LINK_CLAIMS: [&str; 10] = [
    "eqP",
    "forward.elements",
    "relation.forward",
    "relation.backward",
    "roundtrip.source",
    "roundtrip.target",
    "expmap.images",
    "expmap.axioms",
    "expmap.fixes",
    "expmap.slice",
];

/// The identities the chain as a whole carries.
pub const CHAIN_CLAIMS: [&str; 3] = ["bezout", "chain.connected", "chain.composite"];

/// `B(r, F)[w] ≅ B(r - e_c, F)[w]`. `forward` goes from the smaller exponent ring to the
/// larger one, `backward` the other way.
#[derive(Clone, Debug)]
pub struct IsoLink {
    pub direction: Direction,
    pub coordinate: usize,
    pub source: Ring,
    pub target: Ring,
    pub forward: RingHom,
    pub backward: RingHom,
    pub v1: RingElement,
    pub u1: RingElement,
    pub b: RingElement,
    pub wtilde: RingElement,
    pub expmap: ExpMap,
    pub claims: Vec<Claim>,
}

impl IsoLink {
    /// Exponent vectors `(from, to)` in chain order.
    pub fn endpoints(&self) -> (Vec<u32>, Vec<u32>) {
        let (s, t) = (self.source.r().to_vec(), self.target.r().to_vec());
        match self.direction {
            Direction::Down => (s, t),
            Direction::Up => (t, s),
        }
    }

    /// The map in chain direction.
    fn step(&self) -> &RingHom {
        match self.direction {
            Direction::Down => &self.backward,
            Direction::Up => &self.forward,
        }
    }

    fn step_back(&self) -> &RingHom {
        match self.direction {
            Direction::Down => &self.forward,
            Direction::Up => &self.backward,
        }
    }
}

/// A verified chain `B(start, F)[w] ≅ ... ≅ B(end, F)[w]`.
#[derive(Clone, Debug)]
pub struct IsoCertificate {
    pub field: FieldSpec,
    /// `F` over `T1..Tm, V`.
    pub f: Polynomial,
    pub pair: BezoutPair,
    pub start: Vec<u32>,
    pub end: Vec<u32>,
    pub links: Vec<IsoLink>,
    pub claims: Vec<Claim>,
}

/// Constructs the link reducing coordinate `c` of `ring` and checks its transcript.
pub fn build_iso_link(ring: &Ring, pair: &BezoutPair, c: usize) -> Result<IsoLink, StisoError> {
    if ring.family() != Family::Danielewski {
        return Err(StisoError::Ring(crate::error::RingError::Invalid(
            "stable isomorphisms are built for Danielewski rings".into(),
        )));
    }
    let base = ring.base();
    let r = base.r().to_vec();
    if c >= r.len() || r[c] < 2 {
        return Err(StisoError::NothingToReduce);
    }
    let src = base.adjoin(&[W])?;
    let tgt = base.with_r(&minus_unit(&r, c))?.adjoin(&[W])?;
    let (v1, u1, b) = build_v1_u1(&src, c)?;
    let wtilde = build_wtilde(&src, c, &v1, &u1, pair)?;

    let vname = src.universe().name(src.main_free_index()).to_string();
    let uname = src.unit_name().to_string();
    let mut fwd = HashMap::new();
    fwd.insert(vname.clone(), v1.clone());
    fwd.insert(uname.clone(), u1.clone());
    fwd.insert(W.to_string(), wtilde.clone());
    let forward = RingHom::new(&tgt, &src, &fwd)?;

    let tu = tgt.universe();
    let field = tgt.field();
    let n = tu.len();
    let g2 = tgt.element(&tgt.import(&pair.g2)?)?;
    let img_w = &(&tgt.gen(&uname)? * &g2) + &tgt.element(
        &Polynomial::var(field, tu, W)?.mul_monomial(&Monomial::var(n, c, 1)),
    )?;
    let shift = tgt.element(&Polynomial::monomial(field, tu, tgt.tr_monomial().clone(), field.one()))?;
    let img_v = &tgt.gen(&vname)? - &(&shift * &img_w);
    let mut sub = HashMap::new();
    sub.insert(vname.clone(), img_v.nf().clone());
    let f_img = tgt.defining_poly().substitute(tu, &sub)?;
    let laurent = tgt
        .laurent_of(&f_img)
        .mul_monomial(&t_power(n, &r).inverse());
    let img_u = tgt
        .retract(&laurent)
        .map_err(|_| StisoError::InexactDivision("backward image of u".into()))?;
    let mut bwd = HashMap::new();
    bwd.insert(vname, img_v);
    bwd.insert(uname, img_u);
    bwd.insert(W.to_string(), img_w);
    let backward = RingHom::new(&src, &tgt, &bwd)?;

    let expmap = stiso_expmap(&src, c)?;
    let mut link = IsoLink {
        direction: Direction::Down,
        coordinate: c,
        source: src,
        target: tgt,
        forward,
        backward,
        v1,
        u1,
        b,
        wtilde,
        expmap,
        claims: Vec::new(),
    };
    link.claims = check_link(&link, "link");
    if let Some(bad) = link.claims.iter().find(|c| !c.holds) {
        return Err(StisoError::TranscriptFailure(format!("{}: {}", bad.id, bad.detail)));
    }
    Ok(link)
}

/// `v -> v + t^r T`, `w -> w - t_c T`, `u -> F(t, v + t^r T) / t^r` on `B(r, F)[w]`.
pub fn stiso_expmap(src: &Ring, c: usize) -> Result<ExpMap, StisoError> {
    let target = src.adjoin(&[T])?;
    let uu = target.universe();
    let field = src.field();
    let n = uu.len();
    let ti = uu.index(T).expect("indeterminate");
    let vi = src.main_free_index();
    let vname = uu.name(vi).to_string();
    let tmono = Polynomial::var(field, uu, T)?;
    let tr = src.tr_monomial().exponents().to_vec();
    let mut tr_full = tr.clone();
    tr_full.resize(n, 0);
    let tr = Monomial::from_exponents(tr_full);
    let v_img = &Polynomial::var(field, uu, &vname)? + &tmono.mul_monomial(&tr);
    let w_img = &Polynomial::var(field, uu, W)? - &tmono.mul_monomial(&Monomial::var(n, c, 1));
    let f = src.defining_poly().reembed(uu)?;
    let mut sub = HashMap::new();
    sub.insert(vname.clone(), v_img.clone());
    let delta = (&f.substitute(uu, &sub)? - &f)
        .div_monomial(&tr)
        .map_err(|_| StisoError::InexactDivision("exponential map image of u".into()))?;
    let u_img = &Polynomial::var(field, uu, src.unit_name())? + &delta;
    let _ = ti;
    let mut images = HashMap::new();
    images.insert(vname, target.element(&v_img)?);
    images.insert(W.to_string(), target.element(&w_img)?);
    images.insert(src.unit_name().to_string(), target.element(&u_img)?);
    Ok(ExpMap::new(src, T, &images)?)
}

fn check_link(link: &IsoLink, scope: &str) -> Vec<Claim> {
    let mut out = Vec::new();
    let mut push = |id: &str, res: Result<Option<String>, String>| {
        let (holds, detail) = match res {
            Ok(None) => (true, String::new()),
            Ok(Some(d)) | Err(d) => (false, d),
        };
        out.push(Claim::new(scope, id, holds, detail));
    };
    let src = &link.source;
    let tgt = &link.target;
    let c = link.coordinate;
    let e = |x: crate::error::RingError| x.to_string();

    push("eqP", (|| {
        let uu = src.universe();
        let mut sub = HashMap::new();
        sub.insert(uu.name(src.main_free_index()).to_string(), link.v1.nf().clone());
        let lhs = src.element(&src.defining_poly().substitute(uu, &sub).map_err(|x| x.to_string())?).map_err(e)?;
        let reduced = t_power(uu.len(), tgt.r());
        let rhs = src.element(&link.u1.nf().mul_monomial(&reduced)).map_err(e)?;
        Ok((lhs != rhs).then(|| format!("difference {}", &lhs - &rhs)))
    })());

    push("forward.elements", (|| {
        let vname = tgt.universe().name(tgt.main_free_index());
        let pairs = [(vname, &link.v1), (tgt.unit_name(), &link.u1), (W, &link.wtilde)];
        for (g, want) in pairs {
            let got = link.forward.image(g).ok_or("missing image")?;
            if got != want {
                return Ok(Some(format!("forward({g}) = {got}, expected {want}")));
            }
        }
        for g in tgt.base_var_names() {
            if link.forward.image(g) != Some(&src.gen(g).map_err(e)?) {
                return Ok(Some(format!("forward moves {g}")));
            }
        }
        Ok(None)
    })());

    for (id, hom) in [("relation.forward", &link.forward), ("relation.backward", &link.backward)] {
        push(id, (|| {
            let img = hom.relation_image().map_err(e)?;
            Ok((!img.is_zero()).then(|| format!("relation maps to {img}")))
        })());
    }

    for (id, first, second) in [
        ("roundtrip.source", &link.backward, &link.forward),
        ("roundtrip.target", &link.forward, &link.backward),
    ] {
        push(id, (|| {
            let comp = first.then(second).map_err(e)?;
            let moved = comp.non_identity_generators();
            Ok((!moved.is_empty()).then(|| format!("composite moves {}", moved.join(", "))))
        })());
    }

    let phi = &link.expmap;
    push("expmap.images", (|| {
        let expected = stiso_expmap(src, c).map_err(|x| x.to_string())?;
        if phi.ring() != src || phi.indeterminate() != T {
            return Ok(Some("map is not on the link source".into()));
        }
        for (g, img) in expected.images() {
            if phi.image(g) != Some(img) {
                return Ok(Some(format!("image of {g} differs from the prescribed map")));
            }
        }
        Ok(None)
    })());
    push("expmap.axioms", (|| {
        let rep = phi.check_exponential().map_err(|x| x.to_string())?;
        Ok((!rep.passed()).then(|| rep.to_string()))
    })());
    push("expmap.fixes", (|| {
        let mut fixed: Vec<RingElement> = src
            .base_var_names()
            .iter()
            .map(|g| src.gen(g))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        fixed.push(link.v1.clone());
        fixed.push(link.u1.clone());
        for x in &fixed {
            if !phi.is_invariant(x).map_err(|x| x.to_string())? {
                return Ok(Some(format!("{x} is moved")));
            }
        }
        Ok(None)
    })());
    push("expmap.slice", (|| {
        let img = phi.apply(&link.wtilde).map_err(|x| x.to_string())?;
        let tt = phi.target();
        let want = &link.wtilde.lift(tt).map_err(e)? - &tt.gen(T).map_err(e)?;
        Ok((img != want).then(|| format!("phi(w~) - (w~ - T) = {}", &img - &want)))
    })());
    out
}

/// Reduces the leftmost coordinate with `r_i >= 2` by one.
pub fn build_iso_certificate(ring: &Ring, pair: &BezoutPair) -> Result<IsoCertificate, StisoError> {
    let c = ring
        .r()
        .iter()
        .position(|&x| x >= 2)
        .ok_or(StisoError::NothingToReduce)?;
    let mut target = ring.r().to_vec();
    target[c] -= 1;
    chain_reduce(ring, pair, &target)
}

/// Links from `r` down to `min(r, s)` and back up to `s`, one unit per link, leftmost
/// coordinate first in both phases.
pub fn chain_plan(r: &[u32], s: &[u32]) -> Vec<(Vec<u32>, usize, Direction)> {
    let mid: Vec<u32> = r.iter().zip(s).map(|(a, b)| *a.min(b)).collect();
    let mut plan = Vec::new();
    let mut cur = r.to_vec();
    while cur != mid {
        let i = (0..cur.len()).find(|&i| cur[i] > mid[i]).expect("above mid");
        plan.push((cur.clone(), i, Direction::Down));
        cur[i] -= 1;
    }
    while cur != s {
        let i = (0..cur.len()).find(|&i| cur[i] < s[i]).expect("below target");
        cur[i] += 1;
        plan.push((cur.clone(), i, Direction::Up));
    }
    plan
}

/// A verified chain of links realizing `B(r, F)[w] ≅ B(s, F)[w]`.
pub fn chain_reduce(ring: &Ring, pair: &BezoutPair, target: &[u32]) -> Result<IsoCertificate, StisoError> {
    let base = ring.base();
    let m = base.m();
    if target.len() != m || target.contains(&0) {
        return Err(StisoError::BadTarget { expected: m });
    }
    let f = base.config().defining.clone();
    if !verify_cofactors(&f, pair) {
        return Err(StisoError::BadCofactors);
    }
    let plan = chain_plan(base.r(), target);
    let links = plan
        .par_iter()
        .map(|(r, c, dir)| {
            let mut link = build_iso_link(&base.with_r(r)?, pair, *c)?;
            link.direction = *dir;
            Ok(link)
        })
        .collect::<Result<Vec<_>, StisoError>>()?;
    let mut cert = IsoCertificate {
        field: base.field(),
        f,
        pair: pair.clone(),
        start: base.r().to_vec(),
        end: target.to_vec(),
        links,
        claims: Vec::new(),
    };
    cert.claims = chain_claims(&cert);
    if let Some(bad) = cert.claims.iter().find(|c| !c.holds) {
        return Err(StisoError::TranscriptFailure(format!("{}: {}", bad.id, bad.detail)));
    }
    Ok(cert)
}

fn chain_claims(cert: &IsoCertificate) -> Vec<Claim> {
    let mut out = Vec::new();
    let ok = verify_cofactors(&cert.f, &cert.pair);
    out.push(Claim::new("chain", "bezout", ok, if ok { "" } else { "F g1 + F_V g2 != 1" }));

    let mut cur = cert.start.clone();
    let mut connected = None;
    for (k, link) in cert.links.iter().enumerate() {
        let (from, to) = link.endpoints();
        if from != cur {
            connected = Some(format!("link {} starts at {:?}, chain is at {:?}", k + 1, from, cur));
            break;
        }
        cur = to;
    }
    if connected.is_none() && cur != cert.end {
        connected = Some(format!("chain ends at {:?}, claimed {:?}", cur, cert.end));
    }
    out.push(Claim::new("chain", "chain.connected", connected.is_none(), connected.clone().unwrap_or_default()));

    let composite = if connected.is_some() {
        Err("chain is not connected".to_string())
    } else {
        composite_check(cert)
    };
    match composite {
        Ok(()) => out.push(Claim::new("chain", "chain.composite", true, "")),
        Err(d) => out.push(Claim::new("chain", "chain.composite", false, d)),
    }
    out
}

fn composite_check(cert: &IsoCertificate) -> Result<(), String> {
    if cert.links.is_empty() {
        return Ok(());
    }
    let e = |x: crate::error::RingError| x.to_string();
    let run = |x: &RingElement, homs: &[&RingHom]| -> Result<RingElement, String> {
        homs.iter().try_fold(x.clone(), |acc, h| h.apply(&acc).map_err(e))
    };
    let there: Vec<&RingHom> = cert.links.iter().map(IsoLink::step).collect();
    let back: Vec<&RingHom> = cert.links.iter().rev().map(IsoLink::step_back).collect();
    for (name, go, ret) in [("start", &there, &back), ("end", &back, &there)] {
        let ring = go[0].source();
        let rel = run(&go[0].relation_image().map_err(e)?, &go[1..])?;
        if !rel.is_zero() {
            return Err(format!("from {name}: relation maps to {rel}"));
        }
        for g in ring.generator_names() {
            let x = ring.gen(g).map_err(e)?;
            let y = run(&run(&x, go)?, ret)?;
            if y != x {
                return Err(format!("round trip at {name} sends {g} to {y}"));
            }
        }
    }
    Ok(())
}

fn fmt_r(r: &[u32]) -> String {
    r.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

impl IsoCertificate {
    /// All claims, chain-level first.
    pub fn all_claims(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().chain(self.links.iter().flat_map(|l| l.claims.iter()))
    }

    pub fn passed(&self) -> bool {
        self.all_claims().all(|c| c.holds)
    }

    /// Line-oriented text; every polynomial is printed canonically.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "format = 1");
        let _ = writeln!(s, "field = {}", self.field);
        let _ = writeln!(s, "m = {}", self.start.len());
        let _ = writeln!(s, "F = {}", print_poly(&self.f));
        let _ = writeln!(s, "g1 = {}", print_poly(&self.pair.g1));
        let _ = writeln!(s, "g2 = {}", print_poly(&self.pair.g2));
        let _ = writeln!(s, "start.r = {}", fmt_r(&self.start));
        let _ = writeln!(s, "end.r = {}", fmt_r(&self.end));
        let _ = writeln!(s, "links = {}", self.links.len());
        for (k, l) in self.links.iter().enumerate() {
            let _ = writeln!(s, "\n[link {}]", k + 1);
            let dir = match l.direction {
                Direction::Down => "down",
                Direction::Up => "up",
            };
            let _ = writeln!(s, "direction = {dir}");
            let _ = writeln!(s, "source.r = {}", fmt_r(l.source.r()));
            let _ = writeln!(s, "target.r = {}", fmt_r(l.target.r()));
            let _ = writeln!(s, "coordinate = {}", l.coordinate + 1);
            let _ = writeln!(s, "element.v1 = {}", l.v1);
            let _ = writeln!(s, "element.u1 = {}", l.u1);
            let _ = writeln!(s, "element.b = {}", l.b);
            let _ = writeln!(s, "element.wtilde = {}", l.wtilde);
            for (g, img) in l.forward.images() {
                let _ = writeln!(s, "forward.{g} = {img}");
            }
            for (g, img) in l.backward.images() {
                let _ = writeln!(s, "backward.{g} = {img}");
            }
            let _ = writeln!(s, "expmap.indeterminate = {}", l.expmap.indeterminate());
            for (g, img) in l.expmap.images() {
                let _ = writeln!(s, "expmap.{g} = {img}");
            }
            for c in &l.claims {
                let _ = writeln!(s, "claim = {}", c.id);
            }
        }
        let _ = writeln!(s, "\n[chain]");
        for c in &self.claims {
            let _ = writeln!(s, "claim = {}", c.id);
        }
        s
    }
}

/// Outcome of re-verifying a serialized certificate.
#[derive(Clone, Debug, serde::Serialize)]
pub struct VerifyReport {
    pub claims: Vec<Claim>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        !self.claims.is_empty() && self.claims.iter().all(|c| c.holds)
    }
}

struct Section {
    name: String,
    entries: Vec<(String, String)>,
}

impl Section {
    fn get(&self, key: &str) -> Result<&str, StisoError> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
            .ok_or_else(|| StisoError::Certificate(format!("[{}] missing `{key}`", self.name)))
    }

    fn with_prefix<'a>(&'a self, prefix: &'a str) -> impl Iterator<Item = (&'a str, &'a str)> + 'a {
        self.entries
            .iter()
            .filter_map(move |(k, v)| k.strip_prefix(prefix).map(|g| (g, v.as_str())))
    }

    fn claims(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(k, _)| k == "claim")
            .map(|(_, v)| v.as_str())
            .collect()
    }
}

fn split_sections(text: &str) -> Result<Vec<Section>, StisoError> {
    let mut sections = vec![Section { name: "header".into(), entries: vec![] }];
    for (n, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            sections.push(Section { name: name.trim().to_string(), entries: vec![] });
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| StisoError::Certificate(format!("line {}: expected `key = value`", n + 1)))?;
        sections
            .last_mut()
            .expect("header section")
            .entries
            .push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(sections)
}

fn parse_r(s: &str) -> Result<Vec<u32>, StisoError> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<u32>()
                .ok()
                .filter(|&v| v > 0)
                .ok_or_else(|| StisoError::Certificate(format!("bad exponent vector `{s}`")))
        })
        .collect()
}

fn hom_from(section: &Section, prefix: &str, source: &Ring, target: &Ring) -> Result<RingHom, StisoError> {
    let mut images = HashMap::new();
    for (g, text) in section.with_prefix(prefix) {
        if source.universe().index(g).is_none() {
            return Err(StisoError::Certificate(format!("`{prefix}{g}` is not a generator")));
        }
        images.insert(g.to_string(), target.parse(text)?);
    }
    for g in source.generator_names() {
        if !images.contains_key(g) {
            return Err(StisoError::Certificate(format!("missing `{prefix}{g}`")));
        }
    }
    Ok(RingHom::new(source, target, &images)?)
}

/// Rebuilds every ring, map and element from the text and recomputes all claims.
pub fn verify_certificate_text(text: &str) -> Result<VerifyReport, StisoError> {
    let sections = split_sections(text)?;
    let header = &sections[0];
    if header.get("format")? != "1" {
        return Err(StisoError::Certificate("unsupported format".into()));
    }
    let field: FieldSpec = header
        .get("field")?
        .parse()
        .map_err(|e: crate::error::FieldError| StisoError::Certificate(e.to_string()))?;
    let m: usize = header
        .get("m")?
        .parse()
        .map_err(|_| StisoError::Certificate("bad m".into()))?;
    let cu = Family::Danielewski.config_universe(m);
    let f = parse_poly(header.get("F")?, &cu, field)?;
    let pair = BezoutPair {
        g1: parse_poly(header.get("g1")?, &cu, field)?,
        g2: parse_poly(header.get("g2")?, &cu, field)?,
    };
    let start = parse_r(header.get("start.r")?)?;
    let end = parse_r(header.get("end.r")?)?;
    let n_links: usize = header
        .get("links")?
        .parse()
        .map_err(|_| StisoError::Certificate("bad link count".into()))?;
    if start.len() != m || end.len() != m {
        return Err(StisoError::Certificate("exponent vectors must have m entries".into()));
    }
    let link_sections: BTreeMap<usize, &Section> = sections
        .iter()
        .filter_map(|s| {
            s.name
                .strip_prefix("link ")
                .and_then(|k| k.trim().parse::<usize>().ok())
                .map(|k| (k, s))
        })
        .collect();
    if link_sections.len() != n_links || (1..=n_links).any(|k| !link_sections.contains_key(&k)) {
        return Err(StisoError::Certificate(format!("expected sections [link 1]..[link {n_links}]")));
    }
    let chain = sections
        .iter()
        .find(|s| s.name == "chain")
        .ok_or_else(|| StisoError::Certificate("missing [chain] section".into()))?;

    let mut links = Vec::new();
    for (k, sec) in &link_sections {
        let src_r = parse_r(sec.get("source.r")?)?;
        let tgt_r = parse_r(sec.get("target.r")?)?;
        let c: usize = sec
            .get("coordinate")?
            .parse::<usize>()
            .ok()
            .filter(|&c| (1..=m).contains(&c))
            .ok_or_else(|| StisoError::Certificate("bad coordinate".into()))?
            - 1;
        if src_r.len() != m || src_r[c] < 2 || tgt_r != minus_unit(&src_r, c) {
            return Err(StisoError::Certificate(format!(
                "link {k}: target.r must be source.r minus one at the coordinate"
            )));
        }
        let direction = match sec.get("direction")? {
            "down" => Direction::Down,
            "up" => Direction::Up,
            other => return Err(StisoError::Certificate(format!("bad direction `{other}`"))),
        };
        let cfg = RingConfig {
            field,
            family: Family::Danielewski,
            m,
            r: src_r.clone(),
            defining: f.clone(),
            g1: None,
            g2: None,
        };
        let base = Ring::new(&cfg)?;
        let src = base.adjoin(&[W])?;
        let tgt = base.with_r(&tgt_r)?.adjoin(&[W])?;
        let forward = hom_from(sec, "forward.", &tgt, &src)?;
        let backward = hom_from(sec, "backward.", &src, &tgt)?;
        let indet = sec.get("expmap.indeterminate")?;
        let et = src.adjoin(&[indet])?;
        let mut eimg = HashMap::new();
        for (g, text) in sec.with_prefix("expmap.") {
            if g == "indeterminate" {
                continue;
            }
            eimg.insert(g.to_string(), et.parse(text)?);
        }
        let expmap = ExpMap::new(&src, indet, &eimg)?;
        let mut link = IsoLink {
            direction,
            coordinate: c,
            v1: src.parse(sec.get("element.v1")?)?,
            u1: src.parse(sec.get("element.u1")?)?,
            b: src.parse(sec.get("element.b")?)?,
            wtilde: src.parse(sec.get("element.wtilde")?)?,
            source: src,
            target: tgt,
            forward,
            backward,
            expmap,
            claims: Vec::new(),
        };
        let scope = format!("link {k}");
        link.claims = check_link(&link, &scope);
        for listed in sec.claims() {
            if !LINK_CLAIMS.contains(&listed) {
                link.claims.push(Claim::new(&scope, listed, false, "unknown claim"));
            }
        }
        links.push(link);
    }
    let mut cert = IsoCertificate { field, f, pair, start, end, links, claims: Vec::new() };
    cert.claims = chain_claims(&cert);
    for listed in chain.claims() {
        if !CHAIN_CLAIMS.contains(&listed) {
            cert.claims.push(Claim::new("chain", listed, false, "unknown claim"));
        }
    }
    Ok(VerifyReport { claims: cert.all_claims().cloned().collect() })
}
