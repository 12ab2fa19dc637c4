//! Quotient rings `k[t, u, v] / (t^r u - F)` in rewrite normal form.
//!
//! Both ring families share one kernel. A ring has `m` base variables (`t1..tm` or
//! `x1..xm`), one eliminated variable (`u` or `y`) that the relation lets us trade for
//! `F / t^r`, one or two free variables (`v`, or `z, t`) and any number of adjoined
//! polynomial generators. An element is stored in normal form: no term is divisible by
//! `t^r u`. The Laurent embedding `u -> F t^(-r)` is injective and serves as the equality
//! oracle; for Danielewski rings [`Ring::retract`] maps Laurent polynomials back.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::RingError;
use crate::field::{FieldElem, FieldSpec};
use crate::parse::{parse_poly, print_poly, Family, RingConfig};
use crate::poly::{Monomial, Polynomial, Universe};

struct RingInner {
    config: RingConfig,
    universe: Universe,
    /// Uppercase spelling of every generator, accepted by [`Ring::parse`].
    aliases: Universe,
    extras: Vec<String>,
    /// `F` (or `H`) over `universe`.
    rhs: Polynomial,
    tr: Monomial,
    /// `P(v) = F(0, v)` or `h(z, t) = H(0, z, t)`, over `universe`.
    specialized: Polynomial,
}

/// A presented ring, cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.universe == other.0.universe
                && self.0.config.field == other.0.config.field
                && self.0.config.r == other.0.config.r
                && self.0.rhs == other.0.rhs)
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}[{}]/({})",
            self.field(),
            self.universe(),
            print_poly(&self.relation())
        )
    }
}

fn base_names(family: Family, m: usize) -> Vec<String> {
    let mut names: Vec<String> = match family {
        Family::Danielewski => (1..=m).map(|i| format!("t{i}")).collect(),
        Family::Asanuma => (1..=m).map(|i| format!("x{i}")).collect(),
    };
    match family {
        Family::Danielewski => names.extend(["u".to_string(), "v".to_string()]),
        Family::Asanuma => names.extend(["y".to_string(), "z".to_string(), "t".to_string()]),
    }
    names
}

impl Ring {
    /// Builds the ring presented by a validated configuration.
    pub fn new(config: &RingConfig) -> Result<Ring, RingError> {
        config
            .validate()
            .map_err(|e| RingError::Invalid(e.to_string()))?;
        Self::build(config.clone(), Vec::new())
    }

    /// Builds a ring checking only the shape of `r`; the relation need not be monic in `v`.
    /// Operations that divide by the relation ([`Ring::retract`]) then report errors.
    pub fn new_relaxed(config: &RingConfig) -> Result<Ring, RingError> {
        if config.m == 0 || config.r.len() != config.m || config.r.contains(&0) {
            return Err(RingError::Invalid("r must list m positive exponents".into()));
        }
        if config.defining.is_zero() {
            return Err(RingError::Invalid("defining polynomial is zero".into()));
        }
        Self::build(config.clone(), Vec::new())
    }

    fn build(config: RingConfig, extras: Vec<String>) -> Result<Ring, RingError> {
        let m = config.m;
        let mut names = base_names(config.family, m);
        for e in &extras {
            if names.contains(e) {
                return Err(RingError::Invalid(format!("generator `{e}` already exists")));
            }
            names.push(e.clone());
        }
        let universe = Universe::new(&names);
        let mut alias_names: Vec<String> = names.iter().map(|n| n.to_uppercase()).collect();
        for (i, e) in extras.iter().enumerate() {
            // Adjoined names are matched as written.
            alias_names[names.len() - extras.len() + i] = e.clone();
        }
        let aliases = Universe::new(&alias_names);

        // Config polynomial lives over T1..Tm,V (or X1..Xm,Z,T); rename positionally.
        let cfg_u = config.family.config_universe(m);
        let lower: Vec<String> = cfg_u
            .names()
            .iter()
            .map(|n| n.to_lowercase())
            .collect();
        let rhs = config
            .defining
            .relabel(&Universe::new(&lower))
            .reembed(&universe)?;
        let mut tr = vec![0; universe.len()];
        for (i, &ri) in config.r.iter().enumerate() {
            tr[i] = ri as i32;
        }
        let mut specialized = rhs.clone();
        for i in 0..m {
            specialized = specialized.eval_zero(i);
        }
        Ok(Ring(Arc::new(RingInner {
            config,
            universe,
            aliases,
            extras,
            rhs,
            tr: Monomial::from_exponents(tr),
            specialized,
        })))
    }

    /// Convenience constructor for `B(r, F)` with `F` written over `T1..Tm, V`.
    pub fn danielewski(field: FieldSpec, r: &[u32], f: &str) -> Result<Ring, RingError> {
        let cfg = RingConfig::danielewski(field, r, f).map_err(|e| RingError::Invalid(e.to_string()))?;
        Ring::new(&cfg)
    }

    /// Convenience constructor for the Asanuma ring with `H` written over `X1..Xm, Z, T`.
    pub fn asanuma(field: FieldSpec, r: &[u32], h: &str) -> Result<Ring, RingError> {
        let cfg = RingConfig::asanuma(field, r, h).map_err(|e| RingError::Invalid(e.to_string()))?;
        Ring::new(&cfg)
    }

    /// The same ring with polynomial generators appended.
    pub fn adjoin<S: AsRef<str>>(&self, names: &[S]) -> Result<Ring, RingError> {
        let mut extras = self.0.extras.clone();
        extras.extend(names.iter().map(|s| s.as_ref().to_string()));
        Self::build(self.0.config.clone(), extras)
    }

    /// The ring without adjoined generators.
    pub fn base(&self) -> Ring {
        if self.0.extras.is_empty() {
            return self.clone();
        }
        Self::build(self.0.config.clone(), Vec::new()).expect("base ring of a valid ring")
    }

    /// The same presentation with a different exponent vector (adjoined names kept).
    pub fn with_r(&self, r: &[u32]) -> Result<Ring, RingError> {
        let mut cfg = self.0.config.clone();
        cfg.r = r.to_vec();
        cfg.validate().map_err(|e| RingError::Invalid(e.to_string()))?;
        Self::build(cfg, self.0.extras.clone())
    }

    pub fn config(&self) -> &RingConfig {
        &self.0.config
    }

    pub fn family(&self) -> Family {
        self.0.config.family
    }

    pub fn field(&self) -> FieldSpec {
        self.0.config.field
    }

    pub fn m(&self) -> usize {
        self.0.config.m
    }

    pub fn r(&self) -> &[u32] {
        &self.0.config.r
    }

    pub fn universe(&self) -> &Universe {
        &self.0.universe
    }

    pub fn extras(&self) -> &[String] {
        &self.0.extras
    }

    /// Position of the eliminated variable (`u` or `y`).
    pub fn unit_index(&self) -> usize {
        self.m()
    }

    pub fn unit_name(&self) -> &str {
        self.0.universe.name(self.m())
    }

    /// Names of the base variables `t1..tm` (or `x1..xm`).
    pub fn base_var_names(&self) -> &[String] {
        &self.0.universe.names()[..self.m()]
    }

    /// Positions of the free variables: `v`, or `z, t`.
    pub fn free_indices(&self) -> Vec<usize> {
        match self.family() {
            Family::Danielewski => vec![self.m() + 1],
            Family::Asanuma => vec![self.m() + 1, self.m() + 2],
        }
    }

    /// Position of `v` (or `z`).
    pub fn main_free_index(&self) -> usize {
        self.m() + 1
    }

    pub fn generator_names(&self) -> &[String] {
        self.0.universe.names()
    }

    /// `F` or `H` over the ring universe.
    pub fn defining_poly(&self) -> &Polynomial {
        &self.0.rhs
    }

    /// Rewrites a polynomial over the configuration variables (`T1..Tm, V` or
    /// `X1..Xm, Z, T`) in the ring's own variable names.
    pub fn import(&self, p: &Polynomial) -> Result<Polynomial, RingError> {
        let cfg_u = self.family().config_universe(self.m());
        let p = p.reembed(&cfg_u)?;
        let lower: Vec<String> = cfg_u.names().iter().map(|n| n.to_lowercase()).collect();
        Ok(p.relabel(&Universe::new(&lower)).reembed(self.universe())?)
    }

    /// `t^r` as a monomial over the ring universe.
    pub fn tr_monomial(&self) -> &Monomial {
        &self.0.tr
    }

    /// `P(v) = F(0, ..., 0, v)` or `h(z, t)`.
    pub fn specialized(&self) -> &Polynomial {
        &self.0.specialized
    }

    /// `d = deg_v P` (Danielewski rings only).
    pub fn d(&self) -> Option<i32> {
        match self.family() {
            Family::Danielewski => self.0.specialized.degree_in(self.main_free_index()),
            Family::Asanuma => None,
        }
    }

    /// The relation `t^r u - F` as a polynomial over the ring universe.
    pub fn relation(&self) -> Polynomial {
        let f = self.field();
        let u = self.universe();
        let lhs = Polynomial::monomial(
            f,
            u,
            self.0.tr.mul(&Monomial::var(u.len(), self.unit_index(), 1)),
            f.one(),
        );
        &lhs - &self.0.rhs
    }

    pub fn zero(&self) -> RingElement {
        RingElement { ring: self.clone(), nf: Polynomial::zero(self.field(), self.universe()) }
    }

    pub fn one(&self) -> RingElement {
        self.constant(self.field().one())
    }

    pub fn constant(&self, c: FieldElem) -> RingElement {
        RingElement { ring: self.clone(), nf: Polynomial::constant(self.field(), self.universe(), c) }
    }

    pub fn gen(&self, name: &str) -> Result<RingElement, RingError> {
        let p = Polynomial::var(self.field(), self.universe(), name)?;
        Ok(RingElement { ring: self.clone(), nf: p })
    }

    /// Normalizes a polynomial written in the ring's generators.
    pub fn element(&self, raw: &Polynomial) -> Result<RingElement, RingError> {
        if raw.field() != self.field() {
            return Err(RingError::RingMismatch);
        }
        let p = raw.reembed(self.universe())?;
        if !p.is_polynomial() {
            return Err(RingError::NotInRing("negative exponents".into()));
        }
        Ok(RingElement { ring: self.clone(), nf: self.normalize_poly(&p) })
    }

    /// Parses and normalizes an expression in either the ring's own lowercase names or their
    /// uppercase aliases (`T1`, `U`, `V`, ...).
    pub fn parse(&self, text: &str) -> Result<RingElement, RingError> {
        match parse_poly(text, self.universe(), self.field()) {
            Ok(p) => self.element(&p),
            Err(first) => match parse_poly(text, &self.0.aliases, self.field()) {
                Ok(p) => self.element(&p.relabel(self.universe())),
                Err(_) => Err(first.into()),
            },
        }
    }

    /// Rewrites until no term is divisible by `t^r u`. Each rewrite step lowers the
    /// `u`-degree of a term by one, so a single descending pass over `u`-levels suffices.
    pub fn normalize_poly(&self, raw: &Polynomial) -> Polynomial {
        let ui = self.unit_index();
        let mut p = raw.clone();
        let Some(top) = p.degree_in(ui) else { return p };
        let unit = self.0.tr.mul(&Monomial::var(self.universe().len(), ui, 1));
        for j in (1..=top).rev() {
            let mut reducible = Vec::new();
            let mut quotient = Vec::new();
            for (m, c) in p.terms() {
                if m.exponent(ui) == j {
                    if let Some(q) = m.divide(&unit) {
                        reducible.push((m.clone(), -c));
                        quotient.push((q, c.clone()));
                    }
                }
            }
            if quotient.is_empty() {
                continue;
            }
            let q = Polynomial::from_terms(self.field(), self.universe(), quotient);
            let r = Polynomial::from_terms(self.field(), self.universe(), reducible);
            p = &(&p + &r) + &(&q * &self.0.rhs);
        }
        p
    }

    /// `p(images)` computed with normal forms throughout; `images[i]` replaces variable `i` of
    /// `p`'s universe. Nested Horner evaluation with the largest image outermost, so every
    /// product has one factor that is a single image and cheap images stay in the coefficients.
    pub fn evaluate(&self, p: &Polynomial, images: &[RingElement]) -> Result<RingElement, RingError> {
        if images.len() != p.universe().len() || images.iter().any(|x| x.ring != *self) {
            return Err(RingError::RingMismatch);
        }
        if !p.is_polynomial() {
            return Err(RingError::NotInRing("negative exponents".into()));
        }
        let mut order: Vec<usize> = p.support();
        order.sort_by_key(|&i| {
            std::cmp::Reverse((images[i].nf.num_terms(), p.degree_in(i).unwrap_or(0)))
        });
        Ok(self.horner(p, &order, images))
    }

    fn horner(&self, p: &Polynomial, order: &[usize], images: &[RingElement]) -> RingElement {
        let Some((&i, rest)) = order.split_first() else {
            return self.constant(p.constant_value().unwrap_or_else(|| self.field().zero()));
        };
        let coeffs = p.coefficients_in(i);
        let mut acc = self.zero();
        let mut at = match coeffs.keys().next_back() {
            Some(&top) => top,
            None => return acc,
        };
        for (&k, c) in coeffs.iter().rev() {
            for _ in k..at {
                acc = &acc * &images[i];
            }
            at = k;
            acc = &acc + &self.horner(c, rest, images);
        }
        for _ in 0..at {
            acc = &acc * &images[i];
        }
        acc
    }

    /// Whether `p` already has normal-form shape.
    pub fn is_normal_shape(&self, p: &Polynomial) -> bool {
        let ui = self.unit_index();
        let unit = self.0.tr.mul(&Monomial::var(self.universe().len(), ui, 1));
        p.terms().all(|(m, _)| m.divide(&unit).is_none())
    }

    /// Image of a polynomial over the ring universe under `u -> F t^(-r)`.
    pub fn laurent_of(&self, p: &Polynomial) -> Polynomial {
        let ui = self.unit_index();
        let by_u = p.coefficients_in(ui);
        let mut out = Polynomial::zero(self.field(), self.universe());
        let step = self.0.rhs.mul_monomial(&self.0.tr.inverse());
        let mut power = Polynomial::one(self.field(), self.universe());
        let mut at = 0;
        for (&j, coeff) in &by_u {
            while at < j {
                power = &power * &step;
                at += 1;
            }
            out = &out + &(coeff * &power);
        }
        out
    }

    /// Inverse of the Laurent embedding on its image. Requires `F` monic in `v`.
    ///
    /// Expands `L = sum c_k F^k` with `deg_v c_k < d`; `L` comes from the ring exactly when
    /// every `c_k t^(k r)` is a polynomial, and then it equals `sum c_k t^(kr) u^k`.
    pub fn retract(&self, laurent: &Polynomial) -> Result<RingElement, RingError> {
        if self.family() != Family::Danielewski {
            return Err(RingError::NotMonic);
        }
        let l = laurent.reembed(self.universe())?;
        let ui = self.unit_index();
        if l.degree_in(ui).unwrap_or(0) != 0 || l.min_exponent_in(ui).unwrap_or(0) != 0 {
            return Err(RingError::NotInRing("Laurent input still mentions u".into()));
        }
        for (i, name) in self.universe().names().iter().enumerate().skip(self.m()) {
            if l.min_exponent_in(i).unwrap_or(0) < 0 {
                return Err(RingError::NotInRing(format!("negative power of {name}")));
            }
        }
        let vi = self.main_free_index();
        let mut rest = l;
        let mut out = Polynomial::zero(self.field(), self.universe());
        let mut k = 0i32;
        let u_mono = Monomial::var(self.universe().len(), ui, 1);
        while !rest.is_zero() {
            let (q, c) = rest.div_rem_in(&self.0.rhs, vi)?;
            let shift = Monomial::from_exponents(
                self.0.tr.exponents().iter().map(|e| e * k).collect(),
            )
            .mul(&Monomial::from_exponents(
                u_mono.exponents().iter().map(|e| e * k).collect(),
            ));
            let term = c.mul_monomial(&shift);
            if !term.is_polynomial() {
                return Err(RingError::NotInRing(format!(
                    "coefficient of F^{k} keeps a negative power of t"
                )));
            }
            out = &out + &term;
            rest = q;
            k += 1;
        }
        Ok(RingElement { ring: self.clone(), nf: self.normalize_poly(&out) })
    }
}

/// An element of a [`Ring`], always in normal form.
#[derive(Clone)]
pub struct RingElement {
    ring: Ring,
    nf: Polynomial,
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.nf == other.nf
    }
}

impl Eq for RingElement {}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({})", print_poly(&self.nf))
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_poly(&self.nf))
    }
}

impl RingElement {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nf(&self) -> &Polynomial {
        &self.nf
    }

    pub fn is_zero(&self) -> bool {
        self.nf.is_zero()
    }

    fn same_ring(&self, other: &RingElement) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(other)?;
        Ok(RingElement { ring: self.ring.clone(), nf: &self.nf + &other.nf })
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(other)?;
        Ok(RingElement { ring: self.ring.clone(), nf: &self.nf - &other.nf })
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement, RingError> {
        self.same_ring(other)?;
        let raw = self.nf.checked_mul(&other.nf)?;
        Ok(RingElement { ring: self.ring.clone(), nf: self.ring.normalize_poly(&raw) })
    }

    pub fn pow(&self, n: u32) -> RingElement {
        let mut acc = self.ring.one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &FieldElem) -> RingElement {
        RingElement { ring: self.ring.clone(), nf: self.nf.scale(c) }
    }

    /// `u -> F t^(-r)`; the result has no `u`.
    pub fn laurent(&self) -> Polynomial {
        self.ring.laurent_of(&self.nf)
    }

    /// Equality decided on the Laurent side, independently of normal forms.
    pub fn laurent_eq(&self, other: &RingElement) -> Result<bool, RingError> {
        self.same_ring(other)?;
        Ok(self.laurent() == other.laurent())
    }

    /// Moves the element into a ring with more adjoined generators.
    pub fn lift(&self, target: &Ring) -> Result<RingElement, RingError> {
        target.element(&self.nf)
    }

    /// Exact division by a base variable, computed through the Laurent side.
    pub fn div_by_base_var(&self, idx: usize) -> Result<RingElement, RingError> {
        let n = self.ring.universe().len();
        let l = self.laurent().mul_monomial(&Monomial::var(n, idx, -1));
        self.ring.retract(&l)
    }
}

/// Whether two elements are equal (normal forms coincide).
pub fn eq_check(a: &RingElement, b: &RingElement) -> Result<bool, RingError> {
    a.same_ring(b)?;
    Ok(a.nf == b.nf)
}

macro_rules! ring_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr for &RingElement {
            type Output = RingElement;
            fn $m(self, rhs: &RingElement) -> RingElement {
                self.$checked(rhs).expect("operands in the same ring")
            }
        }
    };
}
ring_op!(Add, add, try_add);
ring_op!(Sub, sub, try_sub);
ring_op!(Mul, mul, try_mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement { ring: self.ring.clone(), nf: -&self.nf }
    }
}

/// A ring homomorphism given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    images: Vec<RingElement>,
}

impl RingHom {
    /// Generators without an explicit image go to the target generator of the same name.
    pub fn new(
        source: &Ring,
        target: &Ring,
        images: &HashMap<String, RingElement>,
    ) -> Result<RingHom, RingError> {
        let mut out = Vec::with_capacity(source.universe().len());
        for name in source.generator_names() {
            match images.get(name) {
                Some(img) => {
                    if img.ring != *target {
                        return Err(RingError::RingMismatch);
                    }
                    out.push(img.clone());
                }
                None => out.push(target.gen(name).map_err(|_| {
                    RingError::Invalid(format!("no image given for `{name}`"))
                })?),
            }
        }
        for k in images.keys() {
            if source.universe().index(k).is_none() {
                return Err(RingError::Invalid(format!("`{k}` is not a source generator")));
            }
        }
        Ok(RingHom { source: source.clone(), target: target.clone(), images: out })
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn image(&self, name: &str) -> Option<&RingElement> {
        self.source.universe().index(name).map(|i| &self.images[i])
    }

    pub fn images(&self) -> impl Iterator<Item = (&str, &RingElement)> {
        self.source
            .generator_names()
            .iter()
            .map(String::as_str)
            .zip(self.images.iter())
    }

    /// Image of a polynomial over the source universe (need not be in normal form).
    pub fn apply_poly(&self, p: &Polynomial) -> Result<RingElement, RingError> {
        let p = p.reembed(self.source.universe())?;
        if !p.is_polynomial() {
            return Err(RingError::NotInRing("negative exponents".into()));
        }
        self.target.evaluate(&p, &self.images)
    }

    pub fn apply(&self, x: &RingElement) -> Result<RingElement, RingError> {
        if x.ring != self.source {
            return Err(RingError::RingMismatch);
        }
        self.apply_poly(&x.nf)
    }

    /// Image of the source relation; zero exactly when the map is well defined.
    pub fn relation_image(&self) -> Result<RingElement, RingError> {
        self.apply_poly(&self.source.relation())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> Result<RingHom, RingError> {
        if self.target != other.source {
            return Err(RingError::RingMismatch);
        }
        let images = self
            .images
            .iter()
            .map(|x| other.apply(x))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RingHom { source: self.source.clone(), target: other.target.clone(), images })
    }

    /// Generators whose image differs from the same-named target generator.
    pub fn non_identity_generators(&self) -> Vec<String> {
        self.images()
            .filter(|(name, img)| match self.target.gen(name) {
                Ok(g) => g != **img,
                Err(_) => true,
            })
            .map(|(n, _)| n.to_string())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b2v2() -> Ring {
        Ring::danielewski(FieldSpec::Rationals, &[2], "V^2").unwrap()
    }

    #[test]
    fn ring_data() {
        let r = b2v2();
        assert_eq!(r.d(), Some(2));
        assert_eq!(print_poly(r.specialized()), "v^2");
        let r2 = Ring::danielewski(FieldSpec::Rationals, &[2, 3], "V^2 + T1*V + 1").unwrap();
        assert_eq!(print_poly(r2.specialized()), "v^2 + 1");
        assert_eq!(r2.d(), Some(2));
        let a = Ring::asanuma(FieldSpec::Prime(5), &[2, 2], "1 + Z^2").unwrap();
        assert_eq!(print_poly(a.specialized()), "z^2 + 1");
        assert_eq!(a.unit_name(), "y");
    }

    #[test]
    fn normal_form_examples() {
        let r = b2v2();
        assert_eq!(r.parse("t1^2*u").unwrap().to_string(), "v^2");
        assert_eq!(r.parse("t1^3*u^2").unwrap().to_string(), "t1*u*v^2");
        assert_eq!(r.parse("T1^3*U^2").unwrap().to_string(), "t1*u*v^2");
        assert_eq!(r.parse("v^3").unwrap().to_string(), "v^3");
        assert!(r.element(&r.relation()).unwrap().is_zero());
    }

    #[test]
    fn laurent_examples() {
        let r = b2v2();
        let n = r.universe().len();
        let u = r.gen("u").unwrap().laurent();
        let expect = r.parse("v^2").unwrap().nf().mul_monomial(&Monomial::var(n, 0, -2));
        assert_eq!(u, expect);
        let tuv = r.parse("t1*u*v").unwrap().laurent();
        let expect = r.parse("v^3").unwrap().nf().mul_monomial(&Monomial::var(n, 0, -1));
        assert_eq!(tuv, expect);
        assert_eq!(print_poly(&tuv), "t1^-1*v^3");
    }

    #[test]
    fn arithmetic_examples() {
        let r = b2v2();
        let t2 = r.parse("t1^2").unwrap();
        let u = r.gen("u").unwrap();
        assert_eq!((&t2 * &u).to_string(), "v^2");
        assert_eq!((&u * &u).to_string(), "u^2");
        assert!((&u - &u).is_zero());
        assert!(eq_check(&(&t2 * &u), &r.parse("v^2").unwrap()).unwrap());
        assert!(!eq_check(&u, &r.gen("v").unwrap()).unwrap());
        let other = Ring::danielewski(FieldSpec::Rationals, &[3], "V^2").unwrap();
        assert!(matches!(
            eq_check(&u, &other.gen("u").unwrap()),
            Err(RingError::RingMismatch)
        ));
    }

    #[test]
    fn retract_inverts_the_embedding() {
        let r = Ring::danielewski(FieldSpec::Rationals, &[2, 1], "V^3 + T1*V + T2 - 1").unwrap();
        for text in ["u^3*v + t1*u", "t2*u^2 - v^2 + 7", "u*v^2*t1", "0"] {
            let x = r.parse(text).unwrap();
            assert_eq!(r.retract(&x.laurent()).unwrap(), x);
        }
        let n = r.universe().len();
        let not_in = r.parse("v").unwrap().nf().mul_monomial(&Monomial::var(n, 0, -1));
        assert!(matches!(r.retract(&not_in), Err(RingError::NotInRing(_))));
    }

    #[test]
    fn division_by_t_through_the_laurent_side() {
        let r = b2v2();
        let x = r.parse("v^2").unwrap();
        assert_eq!(x.div_by_base_var(0).unwrap().to_string(), "t1*u");
        assert!(r.parse("v").unwrap().div_by_base_var(0).is_err());
    }

    #[test]
    fn adjoined_generators() {
        let r = b2v2().adjoin(&["w"]).unwrap();
        let x = r.parse("t1^2*u*w").unwrap();
        assert_eq!(x.to_string(), "v^2*w");
        assert_eq!(r.base(), b2v2());
        assert!(r.adjoin(&["v"]).is_err());
    }

    #[test]
    fn homomorphism_relation_image() {
        let r = b2v2();
        let rw = r.adjoin(&["W"]).unwrap();
        let mut imgs = HashMap::new();
        imgs.insert("v".to_string(), rw.parse("v + W").unwrap());
        let bad = RingHom::new(&r, &rw, &imgs).unwrap();
        assert_eq!(bad.relation_image().unwrap().to_string(), "-2*v*W - W^2");
    }
}
