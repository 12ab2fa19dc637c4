//! Rings `k[X, Y, Z, T]/(X^r Y - H)`: shape classification of `H`, the maps that translate one
//! `x_j` and the fixed two-variable example.

use std::collections::HashMap;
use std::fmt;

use crate::error::{AsanumaError, ExpMapError};
use crate::expmap::{mk_translation, ExpMap};
use crate::field::FieldSpec;
use crate::parse::{parse_poly, print_poly, Family};
use crate::poly::{Polynomial, Universe};
use crate::quotient::Ring;
use crate::stable_iso::{univariate_cofactors, BezoutPair};

/// Syntactic class of `H` in the given coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ShapeClass {
    /// `H` is a nonzero constant.
    UnitH,
    /// `H = a0(Z) + a1(Z) T + H~(X, Z)` with `a1 != 0` and `H~` in the ideal of the `X`s.
    LinearInT,
    /// `H = a0(Z) + H~(X, Z)`, monic in `Z` and coprime to `H_Z`.
    MonicZSeparable,
    Unclassified,
}

impl fmt::Display for ShapeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ShapeClass::UnitH => "unit_h",
            ShapeClass::LinearInT => "linear_in_T",
            ShapeClass::MonicZSeparable => "monic_Z_separable",
            ShapeClass::Unclassified => "unclassified",
        })
    }
}

/// Classification with its witness. Polynomials live over `X1..Xm, Z, T`.
#[derive(Clone, Debug)]
pub struct AsanumaShape {
    pub class: ShapeClass,
    /// The polynomial that was classified (after any coordinate change).
    pub h: Polynomial,
    pub a0: Option<Polynomial>,
    pub a1: Option<Polynomial>,
    pub htilde: Option<Polynomial>,
    /// `(g1, g2)` with `H g1 + H_Z g2 = 1`, for the separable class.
    pub cofactors: Option<BezoutPair>,
    pub note: String,
}

impl fmt::Display for AsanumaShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "class = {}", self.class)?;
        writeln!(f, "H = {}", print_poly(&self.h))?;
        for (k, p) in [("a0", &self.a0), ("a1", &self.a1), ("Htilde", &self.htilde)] {
            if let Some(p) = p {
                writeln!(f, "{k} = {}", print_poly(p))?;
            }
        }
        if let Some(c) = &self.cofactors {
            writeln!(f, "g1 = {}", print_poly(&c.g1))?;
            writeln!(f, "g2 = {}", print_poly(&c.g2))?;
        }
        if !self.note.is_empty() {
            writeln!(f, "note = {}", self.note)?;
        }
        Ok(())
    }
}

/// New coordinates `Z1 = z1(Z, T)`, `T1 = t1(Z, T)` with inverse `Z = z_inv(Z1, T1)`,
/// `T = t_inv(Z1, T1)`. The inverse is written with `Z, T` standing for `Z1, T1`.
#[derive(Clone, Debug)]
pub struct CoordinateChange {
    pub z1: Polynomial,
    pub t1: Polynomial,
    pub z_inv: Polynomial,
    pub t_inv: Polynomial,
}

impl CoordinateChange {
    /// Parses the four polynomials over `k[Z, T]`.
    pub fn parse(field: FieldSpec, z1: &str, t1: &str, z_inv: &str, t_inv: &str) -> Result<Self, AsanumaError> {
        let zt = Universe::new(&["Z", "T"]);
        let p = |s: &str| {
            parse_poly(s, &zt, field).map_err(|e| AsanumaError::BadCoordinates(e.to_string()))
        };
        Ok(CoordinateChange { z1: p(z1)?, t1: p(t1)?, z_inv: p(z_inv)?, t_inv: p(t_inv)? })
    }

    fn compose(outer: (&Polynomial, &Polynomial), inner: (&Polynomial, &Polynomial)) -> Result<(Polynomial, Polynomial), AsanumaError> {
        let u = inner.0.universe().clone();
        let mut sub = HashMap::new();
        sub.insert("Z".to_string(), inner.0.clone());
        sub.insert("T".to_string(), inner.1.clone());
        let a = outer.0.reembed(&u)?.substitute(&u, &sub)?;
        let b = outer.1.reembed(&u)?.substitute(&u, &sub)?;
        Ok((a, b))
    }

    /// Both composites are the identity of `k[Z, T]`.
    pub fn verify(&self) -> Result<(), AsanumaError> {
        let zt = Universe::new(&["Z", "T"]);
        let field = self.z1.field();
        let id = (Polynomial::var(field, &zt, "Z")?, Polynomial::var(field, &zt, "T")?);
        let fwd = (&self.z1, &self.t1);
        let inv = (&self.z_inv, &self.t_inv);
        if Self::compose(inv, fwd)? != id {
            return Err(AsanumaError::BadCoordinates("inverse after change is not the identity".into()));
        }
        if Self::compose(fwd, inv)? != id {
            return Err(AsanumaError::BadCoordinates("change after inverse is not the identity".into()));
        }
        Ok(())
    }

    /// `H(X, z_inv(Z, T), t_inv(Z, T))`: `H` written in the new coordinates.
    pub fn rewrite(&self, h: &Polynomial) -> Result<Polynomial, AsanumaError> {
        let u = h.universe();
        let mut sub = HashMap::new();
        sub.insert("Z".to_string(), self.z_inv.reembed(u)?);
        sub.insert("T".to_string(), self.t_inv.reembed(u)?);
        Ok(h.substitute(u, &sub)?)
    }
}

/// Classifies `H` of an Asanuma ring, optionally after a verified coordinate change.
/// `cofactors` are used for the separable class when `H` also involves the `X`s.
pub fn h_shape_classify(
    ring: &Ring,
    change: Option<&CoordinateChange>,
    cofactors: Option<&BezoutPair>,
) -> Result<AsanumaShape, AsanumaError> {
    if ring.family() != Family::Asanuma {
        return Err(AsanumaError::Ring(crate::error::RingError::Invalid(
            "shape classification applies to Asanuma rings".into(),
        )));
    }
    let mut h = ring.config().defining.clone();
    if let Some(c) = change {
        c.verify()?;
        h = c.rewrite(&h)?;
    }
    Ok(classify_poly(&h, ring.m(), cofactors))
}

/// Classification of `H` over `X1..Xm, Z, T`.
pub fn classify_poly(h: &Polynomial, m: usize, cofactors: Option<&BezoutPair>) -> AsanumaShape {
    let field = h.field();
    let u = h.universe();
    let (zi, ti) = (m, m + 1);
    let mut shape = AsanumaShape {
        class: ShapeClass::Unclassified,
        h: h.clone(),
        a0: None,
        a1: None,
        htilde: None,
        cofactors: None,
        note: String::new(),
    };
    if h.is_zero() {
        shape.note = "H is zero".into();
        return shape;
    }
    if h.constant_value().is_some() {
        shape.class = ShapeClass::UnitH;
        return shape;
    }

    let mut a0 = Polynomial::zero(field, u);
    let mut a1 = Polynomial::zero(field, u);
    let mut ht = Polynomial::zero(field, u);
    let mut fits = true;
    for (mono, c) in h.terms() {
        let x_free = (0..m).all(|i| mono.exponent(i) == 0);
        let term = Polynomial::monomial(field, u, mono.clone(), c.clone());
        match (x_free, mono.exponent(ti)) {
            (true, 0) => a0 = &a0 + &term,
            (true, 1) => a1 = &a1 + &term.div_monomial(&crate::poly::Monomial::var(u.len(), ti, 1)).expect("T divides"),
            (false, 0) => ht = &ht + &term,
            _ => fits = false,
        }
    }
    if !fits {
        shape.note = "H is not of the form a0(Z) + a1(Z)T + H~(X, Z) in these coordinates".into();
        return shape;
    }
    shape.a0 = Some(a0);
    shape.htilde = Some(ht.clone());
    if !a1.is_zero() {
        shape.class = ShapeClass::LinearInT;
        shape.a1 = Some(a1);
        return shape;
    }

    let coeffs = h.coefficients_in(zi);
    let lead = coeffs.iter().next_back().and_then(|(&d, c)| (d > 0).then_some(c));
    if lead.and_then(Polynomial::constant_value).is_none() {
        shape.note = "a1 = 0 and H is not monic in Z".into();
        return shape;
    }
    if ht.is_zero() {
        match univariate_cofactors(h, zi) {
            Ok(pair) => {
                shape.class = ShapeClass::MonicZSeparable;
                shape.cofactors = Some(pair);
            }
            Err(e) => shape.note = format!("a1 = 0, H monic in Z, but ({e})"),
        }
        return shape;
    }
    match cofactors {
        Some(pair) => {
            let hz = h.derivative_at(zi);
            let ok = matches!(
                (pair.g1.reembed(u), pair.g2.reembed(u)),
                (Ok(g1), Ok(g2)) if (&(h * &g1) + &(&hz * &g2)) == Polynomial::one(field, u)
            );
            if ok {
                shape.class = ShapeClass::MonicZSeparable;
                shape.cofactors = Some(pair.clone());
            } else {
                shape.note = "supplied cofactors do not satisfy H g1 + H_Z g2 = 1".into();
            }
        }
        None => {
            shape.note = "a1 = 0 and H involves X; separability needs cofactors g1, g2".into();
        }
    }
    shape
}

/// A map translating `x_j` by `a1(z) U`, with the generators it is claimed to fix.
#[derive(Clone, Debug)]
pub struct Ml1Map {
    /// 1-based.
    pub j: usize,
    pub map: ExpMap,
    pub claimed_invariants: Vec<String>,
    pub moved: Vec<String>,
}

/// For `H = a0(Z) + a1(Z) T + H~` with `a1 != 0`: one map per `j`, given by
/// `x_j -> x_j + a1(z) U` and `t -> Q(.., x_j + a1(z) U, ..) / a1(z)` where
/// `Q = x^r y - H~ - a0(z)`. Every map is checked against the axioms, and the generators
/// other than `x_j, t` are checked to be invariant.
pub fn mk_ml1_maps(ring: &Ring) -> Result<Vec<Ml1Map>, AsanumaError> {
    let shape = h_shape_classify(ring, None, None)?;
    let (Some(a0), Some(htilde)) = (&shape.a0, &shape.htilde) else {
        return Err(AsanumaError::NotLinearInT);
    };
    let Some(a1) = &shape.a1 else {
        return Err(AsanumaError::ZeroA1);
    };
    let base = ring.base();
    let indet = base.universe().fresh_name(&["U", "W", "S"]);
    let target = base.adjoin(&[indet.as_str()])?;
    let tu = target.universe();
    let field = base.field();
    let zname = tu.name(base.main_free_index()).to_string();
    let zi = tu.index(&zname).expect("z");
    let tname = tu.name(base.free_indices()[1]).to_string();

    let a0 = target.import(a0)?;
    let a1 = target.import(a1)?;
    let ht = target.import(htilde)?;
    let xr = Polynomial::monomial(field, tu, target.tr_monomial().clone(), field.one());
    let y = Polynomial::var(field, tu, base.unit_name())?;
    let q = &(&(&xr * &y) - &ht) - &a0;
    let u_var = Polynomial::var(field, tu, &indet)?;

    let mut out = Vec::new();
    for (j, xj) in base.base_var_names().iter().enumerate() {
        let shifted = &Polynomial::var(field, tu, xj)? + &(&a1 * &u_var);
        let mut sub = HashMap::new();
        sub.insert(xj.clone(), shifted.clone());
        let diff = &q.substitute(tu, &sub)? - &q;
        let quotient = diff
            .div_exact_in(&a1, zi)
            .map_err(|e| ExpMapError::Inexact(format!("division by a1(z) for j = {}: {e}", j + 1)))?;
        let t_img = &Polynomial::var(field, tu, &tname)? + &quotient;
        let mut images = HashMap::new();
        images.insert(xj.clone(), target.element(&shifted)?);
        images.insert(tname.clone(), target.element(&t_img)?);
        let map = ExpMap::new(&base, &indet, &images)?;
        let report = map.check_exponential()?;
        if !report.passed() {
            return Err(ExpMapError::Verification(report.to_string()).into());
        }
        let claimed: Vec<String> = base
            .generator_names()
            .iter()
            .filter(|g| *g != xj && **g != tname)
            .cloned()
            .collect();
        for g in &claimed {
            if !map.is_invariant(&base.gen(g)?)? {
                return Err(ExpMapError::Verification(format!("{g} is not invariant under the map for j = {}", j + 1)).into());
            }
        }
        let moved = map.moved_generators();
        out.push(Ml1Map { j: j + 1, map, claimed_invariants: claimed, moved });
    }
    Ok(out)
}

/// Generators common to the `x`-bound `{x1, .., xm}` and every claimed invariant list. Empty
/// means the claimed witnesses leave only constants. This is a syntactic intersection of
/// generator lists, not of invariant rings.
pub fn ml_intersection(ring: &Ring, maps: &[Ml1Map]) -> Vec<String> {
    let mut common: Vec<String> = ring.base_var_names().to_vec();
    for m in maps {
        common.retain(|g| m.claimed_invariants.contains(g));
    }
    common
}

/// One line of the fixed example's report.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Ex2Report {
    pub ring: String,
    pub map: String,
    pub note: String,
    pub checks: Vec<Check>,
}

impl Ex2Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Ex2Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ring: {}", self.ring)?;
        writeln!(f, "map: {}", self.map)?;
        writeln!(f, "note: {}", self.note)?;
        for c in &self.checks {
            writeln!(f, "{} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
        }
        Ok(())
    }
}

/// `Q[X1, X2, Y, Z, T]/(X1^2 X2^2 Y - 1 - Z^2)` with the translation `t -> t + W`.
pub fn verify_ex2_suite() -> Result<Ex2Report, AsanumaError> {
    let ring = Ring::asanuma(FieldSpec::Rationals, &[2, 2], "1 + Z^2")?;
    let phi = mk_translation(&ring, "t")?;
    let mut checks = Vec::new();
    let axioms = phi.check_exponential()?;
    checks.push(Check { name: "translation passes the exponential-map axioms".into(), passed: axioms.passed() });
    for g in ["x1", "x2", "y", "z"] {
        checks.push(Check { name: format!("{g} is invariant"), passed: phi.is_invariant(&ring.gen(g)?)? });
    }
    checks.push(Check { name: "t is not invariant".into(), passed: !phi.is_invariant(&ring.gen("t")?)? });
    Ok(Ex2Report {
        ring: ring.to_string(),
        map: phi.to_string().replace('\n', "; "),
        note: "coefficients are rational; the real field is replaced by Q".into(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(h: &str, r: &[u32], field: FieldSpec) -> AsanumaShape {
        let ring = Ring::asanuma(field, r, h).unwrap();
        h_shape_classify(&ring, None, None).unwrap()
    }

    #[test]
    fn classes() {
        let s = shape("1 + Z^2", &[2, 2], FieldSpec::Rationals);
        assert_eq!(s.class, ShapeClass::MonicZSeparable);
        assert_eq!(shape("5", &[2], FieldSpec::Rationals).class, ShapeClass::UnitH);
        let s = shape("Z + T", &[2], FieldSpec::Rationals);
        assert_eq!(s.class, ShapeClass::LinearInT);
        assert_eq!(print_poly(s.a0.as_ref().unwrap()), "Z");
        assert_eq!(print_poly(s.a1.as_ref().unwrap()), "1");
        assert!(s.htilde.unwrap().is_zero());
        let s = shape("Z^2 + Z^3*T + X1*Z", &[2], FieldSpec::Rationals);
        assert_eq!(s.class, ShapeClass::LinearInT);
        assert_eq!(print_poly(s.htilde.as_ref().unwrap()), "X1*Z");
        assert_eq!(shape("Z^2 + T^2", &[2], FieldSpec::Rationals).class, ShapeClass::Unclassified);
        assert_eq!(shape("Z^2 + X1*T", &[2], FieldSpec::Rationals).class, ShapeClass::Unclassified);
        assert_eq!(shape("Z^2", &[2], FieldSpec::Rationals).class, ShapeClass::Unclassified);
        assert_eq!(shape("Z^2 + 1", &[2], FieldSpec::Prime(2)).class, ShapeClass::Unclassified);
        assert_eq!(shape("Z^2 + X1 + 1", &[2], FieldSpec::Rationals).class, ShapeClass::Unclassified);
    }

    #[test]
    fn coordinate_change_reclassifies() {
        let ring = Ring::asanuma(FieldSpec::Rationals, &[2], "Z + T^2 + T").unwrap();
        assert_eq!(h_shape_classify(&ring, None, None).unwrap().class, ShapeClass::Unclassified);
        // Z1 = Z + T^2, T1 = T; inverse Z = Z1 - T1^2, T = T1.
        let ch = CoordinateChange::parse(FieldSpec::Rationals, "Z + T^2", "T", "Z - T^2", "T").unwrap();
        let s = h_shape_classify(&ring, Some(&ch), None).unwrap();
        assert_eq!(s.class, ShapeClass::LinearInT);
        assert_eq!(print_poly(&s.h), "Z + T");
        let bad = CoordinateChange::parse(FieldSpec::Rationals, "Z + T^2", "T", "Z", "T").unwrap();
        assert!(matches!(h_shape_classify(&ring, Some(&bad), None), Err(AsanumaError::BadCoordinates(_))));
    }

    #[test]
    fn ml1_single_variable() {
        let ring = Ring::asanuma(FieldSpec::Rationals, &[2], "Z + T").unwrap();
        let maps = mk_ml1_maps(&ring).unwrap();
        assert_eq!(maps.len(), 1);
        let phi = &maps[0].map;
        assert_eq!(phi.image("x1").unwrap().to_string(), "x1 + U");
        // Q = x1^2 y - z, Q(x1 + U) - Q = (2 x1 U + U^2) y.
        assert_eq!(phi.image("t").unwrap().to_string(), "2*x1*y*U + y*U^2 + t");
        assert_eq!(maps[0].claimed_invariants, vec!["y", "z"]);
        assert_eq!(maps[0].moved, vec!["x1", "t"]);
        assert!(ml_intersection(&ring, &maps).is_empty());
    }

    #[test]
    fn ml1_two_variables_and_divisions() {
        let ring = Ring::asanuma(FieldSpec::Rationals, &[2, 3], "Z^2 + (Z + 1)*T + X1*Z").unwrap();
        let maps = mk_ml1_maps(&ring).unwrap();
        assert_eq!(maps.len(), 2);
        assert_eq!(maps[0].claimed_invariants, vec!["x2", "y", "z"]);
        assert_eq!(maps[1].claimed_invariants, vec!["x1", "y", "z"]);
        assert!(ml_intersection(&ring, &maps).is_empty());
        for f in [FieldSpec::Prime(3), FieldSpec::Prime(5)] {
            let r = Ring::asanuma(f, &[2, 2], "Z + (Z + 1)*T").unwrap();
            assert_eq!(mk_ml1_maps(&r).unwrap().len(), 2);
        }
        let sep = Ring::asanuma(FieldSpec::Rationals, &[2], "1 + Z^2").unwrap();
        assert!(matches!(mk_ml1_maps(&sep), Err(AsanumaError::ZeroA1)));
        let bad = Ring::asanuma(FieldSpec::Rationals, &[2], "Z + T^2").unwrap();
        assert!(matches!(mk_ml1_maps(&bad), Err(AsanumaError::NotLinearInT)));
    }

    #[test]
    fn ex2() {
        let rep = verify_ex2_suite().unwrap();
        assert!(rep.passed(), "{rep}");
        assert_eq!(rep.checks.len(), 6);
    }
}
