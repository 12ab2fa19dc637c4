//! Exponential maps `φ: B -> B[W]` given by generator images, with symbolic axiom checks
//! and the explicit constructors used throughout the toolkit.

use std::collections::HashMap;
use std::fmt;

use crate::error::{ExpMapError, RingError};
use crate::parse::{print_poly, Family};
use crate::poly::{Monomial, Polynomial};
use crate::quotient::{Ring, RingElement, RingHom};

/// Which exponential-map axiom an instance violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Axiom {
    /// Setting the indeterminate to zero gives back the generator.
    Counit,
    /// `φ_b φ_a = φ_(a+b)`.
    Coassociativity,
    /// The defining relation maps to zero.
    WellDefined,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    pub generator: Option<String>,
    /// The nonzero difference, printed in normal form.
    pub difference: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct ExpReport {
    pub generators_checked: usize,
    pub failures: Vec<AxiomFailure>,
}

impl ExpReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for ExpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "all axioms hold on {} generators", self.generators_checked);
        }
        for (i, fail) in self.failures.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            match &fail.generator {
                Some(g) => write!(f, "{:?} fails at {g}: difference {}", fail.axiom, fail.difference)?,
                None => write!(f, "{:?} fails: relation maps to {}", fail.axiom, fail.difference)?,
            }
        }
        Ok(())
    }
}

/// An exponential map on `ring`, valued in `ring[indet]`.
#[derive(Clone, Debug)]
pub struct ExpMap {
    ring: Ring,
    indet: String,
    target: Ring,
    hom: RingHom,
}

impl ExpMap {
    /// Builds a map from explicit images in `ring.adjoin([indet])`. Unlisted generators are
    /// fixed. No axioms are checked here; see [`ExpMap::check_exponential`].
    pub fn new(
        ring: &Ring,
        indet: &str,
        images: &HashMap<String, RingElement>,
    ) -> Result<ExpMap, ExpMapError> {
        let target = ring.adjoin(&[indet])?;
        for k in images.keys() {
            if ring.universe().index(k).is_none() {
                return Err(ExpMapError::UnknownGenerator(k.clone()));
            }
        }
        let hom = RingHom::new(ring, &target, images)?;
        Ok(ExpMap { ring: ring.clone(), indet: indet.to_string(), target, hom })
    }

    /// Builds a map from textual images parsed in `ring[indet]`.
    pub fn from_texts(ring: &Ring, indet: &str, images: &[(&str, &str)]) -> Result<ExpMap, ExpMapError> {
        let target = ring.adjoin(&[indet])?;
        let mut map = HashMap::new();
        for (g, text) in images {
            map.insert(g.to_string(), target.parse(text)?);
        }
        ExpMap::new(ring, indet, &map)
    }

    /// A name for the indeterminate not clashing with `ring`'s generators.
    pub fn default_indeterminate(ring: &Ring) -> String {
        ring.universe().fresh_name(&["W", "U", "S"])
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn indeterminate(&self) -> &str {
        &self.indet
    }

    pub fn hom(&self) -> &RingHom {
        &self.hom
    }

    pub fn image(&self, generator: &str) -> Option<&RingElement> {
        self.hom.image(generator)
    }

    pub fn images(&self) -> impl Iterator<Item = (&str, &RingElement)> {
        self.hom.images()
    }

    /// `φ(x)` in `ring[indet]`.
    pub fn apply(&self, x: &RingElement) -> Result<RingElement, ExpMapError> {
        Ok(self.hom.apply(x)?)
    }

    /// The coefficients `c_j` of `φ(x) = sum c_j W^j`, as elements of the ring.
    pub fn coefficients(&self, x: &RingElement) -> Result<Vec<(i32, RingElement)>, ExpMapError> {
        let img = self.apply(x)?;
        let wi = self.target.universe().index(&self.indet).expect("indeterminate present");
        img.nf()
            .coefficients_in(wi)
            .into_iter()
            .map(|(j, c)| Ok((j, self.ring.element(&c)?)))
            .collect()
    }

    /// Verifies the counit and coassociativity axioms on every generator (with two fresh
    /// symbolic indeterminates) and that the defining relation maps to zero.
    pub fn check_exponential(&self) -> Result<ExpReport, ExpMapError> {
        let mut report = ExpReport { generators_checked: self.ring.universe().len(), failures: vec![] };

        let rel = self.hom.relation_image()?;
        if !rel.is_zero() {
            report.failures.push(AxiomFailure {
                axiom: Axiom::WellDefined,
                generator: None,
                difference: rel.to_string(),
            });
        }

        // ε0: W -> 0 on ring[W] -> ring.
        let mut zero_w = HashMap::new();
        zero_w.insert(self.indet.clone(), self.ring.zero());
        let eps0 = RingHom::new(&self.target, &self.ring, &zero_w)?;

        let a = self.ring.universe().fresh_name(&["U", "V", "S1"]);
        let probe = self.ring.universe().extend(&[a.as_str()]);
        let b = probe.fresh_name(&["V", "U", "S2"]);
        let two = self.ring.adjoin(&[a.as_str(), b.as_str()])?;

        // ψ: ring[W] -> ring[a, b], x -> φ_b(x), W -> a. Then ψ(φ(x)) = φ_b(φ_a(x)).
        let phi_b = self.rename_indeterminate(&two, &b)?;
        let mut psi_images: HashMap<String, RingElement> = self
            .ring
            .generator_names()
            .iter()
            .cloned()
            .zip(phi_b.iter().cloned())
            .collect();
        psi_images.insert(self.indet.clone(), two.gen(&a)?);
        let psi = RingHom::new(&self.target, &two, &psi_images)?;

        // σ: ring[W] -> ring[a, b], W -> a + b.
        let mut sum_images = HashMap::new();
        sum_images.insert(self.indet.clone(), &two.gen(&a)? + &two.gen(&b)?);
        let sigma = RingHom::new(&self.target, &two, &sum_images)?;

        for (name, img) in self.hom.images() {
            let g = self.ring.gen(name)?;
            let back = eps0.apply(img)?;
            if back != g {
                report.failures.push(AxiomFailure {
                    axiom: Axiom::Counit,
                    generator: Some(name.to_string()),
                    difference: (&back - &g).to_string(),
                });
            }
            let lhs = psi.apply(img)?;
            let rhs = sigma.apply(img)?;
            if lhs != rhs {
                report.failures.push(AxiomFailure {
                    axiom: Axiom::Coassociativity,
                    generator: Some(name.to_string()),
                    difference: (&lhs - &rhs).to_string(),
                });
            }
        }
        Ok(report)
    }

    /// Generator images with the indeterminate renamed, landing in `two`.
    fn rename_indeterminate(&self, two: &Ring, to: &str) -> Result<Vec<RingElement>, RingError> {
        let mut ren = HashMap::new();
        ren.insert(self.indet.clone(), two.gen(to)?);
        let h = RingHom::new(&self.target, two, &ren)?;
        self.hom.images().map(|(_, img)| h.apply(img)).collect()
    }

    /// Like [`ExpMap::check_exponential`] but turns a failed report into an error.
    pub fn verify(&self) -> Result<(), ExpMapError> {
        let rep = self.check_exponential()?;
        if rep.passed() {
            Ok(())
        } else {
            Err(ExpMapError::Verification(rep.to_string()))
        }
    }

    /// Whether `φ(x) = x`.
    pub fn is_invariant(&self, x: &RingElement) -> Result<bool, ExpMapError> {
        let img = self.apply(x)?;
        Ok(img == x.lift(&self.target)?)
    }

    /// Whether every generator is fixed.
    pub fn is_trivial(&self) -> Result<bool, ExpMapError> {
        Ok(self.hom.non_identity_generators().is_empty())
    }

    /// Generators moved by the map.
    pub fn moved_generators(&self) -> Vec<String> {
        self.hom.non_identity_generators()
    }
}

impl fmt::Display for ExpMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, img)) in self.images().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{g} -> {img}")?;
        }
        Ok(())
    }
}

/// `φ(var) = var + W`, every other generator fixed. `var` must not occur in the relation.
pub fn mk_translation(ring: &Ring, var: &str) -> Result<ExpMap, ExpMapError> {
    if ring.universe().index(var).is_none() {
        return Err(ExpMapError::UnknownGenerator(var.to_string()));
    }
    if ring.relation().mentions(var) {
        return Err(ExpMapError::NotAdjoined(var.to_string()));
    }
    let indet = ExpMap::default_indeterminate(ring);
    let target = ring.adjoin(&[indet.as_str()])?;
    let mut images = HashMap::new();
    images.insert(var.to_string(), &target.gen(var)? + &target.gen(&indet)?);
    ExpMap::new(ring, &indet, &images)
}

/// `φ(v) = v + t^r W`, `φ(u) = F(t, v + t^r W) / t^r`, base variables fixed.
pub fn mk_v_shift(ring: &Ring) -> Result<ExpMap, ExpMapError> {
    if ring.family() != Family::Danielewski {
        return Err(ExpMapError::WrongFamily);
    }
    let indet = ExpMap::default_indeterminate(ring);
    let target = ring.adjoin(&[indet.as_str()])?;
    let field = ring.field();
    let tu = target.universe();
    let vname = tu.name(target.main_free_index()).to_string();
    let tr = target.tr_monomial().clone();
    let shift = Polynomial::monomial(field, tu, tr.mul(&Monomial::var(tu.len(), tu.index(&indet).unwrap(), 1)), field.one());
    let v_img = &Polynomial::var(field, tu, &vname)? + &shift;

    let f = ring.defining_poly().reembed(tu)?;
    let mut sub = HashMap::new();
    sub.insert(vname.clone(), v_img.clone());
    let shifted = f.substitute(tu, &sub)?;
    let delta = (&shifted - &f)
        .div_monomial(&tr)
        .map_err(|e| ExpMapError::Inexact(format!("v-shift image of u: {e}")))?;
    let u_img = &Polynomial::var(field, tu, ring.unit_name())? + &delta;

    let mut images = HashMap::new();
    images.insert(vname, target.element(&v_img)?);
    images.insert(ring.unit_name().to_string(), target.element(&u_img)?);
    ExpMap::new(ring, &indet, &images)
}

/// Data produced alongside the localized map of [`mk_unit_row`].
#[derive(Clone, Debug)]
pub struct UnitRowMap {
    pub map: ExpMap,
    /// Clearing exponent `n` with `W` replaced by `p^n W`.
    pub n: u32,
    /// `ũ_j = (prod_(i != j) t_i^(r_i)) u - F_j`, claimed invariant.
    pub u_tilde: RingElement,
}

/// The map for a coordinate with `r_j = 1` (0-based `j`): localize at the other base
/// variables, move `v` by `u_j W`, and clear denominators with the least power of
/// `p = prod_(i != j) t_i`.
pub fn mk_unit_row(ring: &Ring, j: usize) -> Result<UnitRowMap, ExpMapError> {
    if ring.family() != Family::Danielewski {
        return Err(ExpMapError::WrongFamily);
    }
    if j >= ring.m() {
        return Err(ExpMapError::BadIndex(j));
    }
    if ring.r()[j] != 1 {
        return Err(ExpMapError::NotUnitExponent(j + 1));
    }
    let field = ring.field();
    let indet = ExpMap::default_indeterminate(ring);
    let target = ring.adjoin(&[indet.as_str()])?;
    let tu = target.universe().clone();
    let n_vars = tu.len();
    let wi = tu.index(&indet).expect("indeterminate");
    let vi = target.main_free_index();

    let mut q_exp = vec![0i32; n_vars];
    let mut p_exp = vec![0i32; n_vars];
    for (i, &ri) in ring.r().iter().enumerate() {
        if i != j {
            q_exp[i] = ri as i32;
            p_exp[i] = 1;
        }
    }
    let q = Monomial::from_exponents(q_exp);
    let q_inv = q.inverse();
    let p = Monomial::from_exponents(p_exp);

    let f = ring.defining_poly().reembed(&tu)?;
    let f0 = f.eval_zero(j);
    let fj = (&f - &f0)
        .div_monomial(&Monomial::var(n_vars, j, 1))
        .map_err(|e| ExpMapError::Inexact(format!("F_j: {e}")))?;

    // Laurent images; u is eliminated. u_j = F0 / (t_j q).
    let tj = Polynomial::var(field, &tu, tu.name(j))?;
    let v = Polynomial::var(field, &tu, tu.name(vi))?;
    let w = Polynomial::var(field, &tu, &indet)?;
    let u_l = f.mul_monomial(&target.tr_monomial().inverse());
    let uj_l = f0.mul_monomial(&Monomial::var(n_vars, j, -1).mul(&q_inv));

    // F0(V + X) - F0(V) = X * D(V, X).
    let xname = tu.fresh_name(&["X"]);
    let ux = tu.extend(&[xname.as_str()]);
    let f0x = f0.reembed(&ux)?;
    let mut sh = HashMap::new();
    sh.insert(
        tu.name(vi).to_string(),
        &Polynomial::var(field, &ux, tu.name(vi))? + &Polynomial::var(field, &ux, &xname)?,
    );
    let d = (&f0x.substitute(&ux, &sh)? - &f0x)
        .div_monomial(&Monomial::var(ux.len(), ux.len() - 1, 1))
        .map_err(|e| ExpMapError::Inexact(format!("difference quotient of F0: {e}")))?;
    let mut at = HashMap::new();
    at.insert(xname.clone(), &uj_l * &w);
    let d_sub = d.substitute(&tu, &at)?;

    let tj_img = &tj + &(&w * &d_sub).mul_monomial(&q_inv);
    let v_img = &v + &(&uj_l * &w);
    let mut sub = HashMap::new();
    sub.insert(tu.name(j).to_string(), tj_img.clone());
    sub.insert(tu.name(vi).to_string(), v_img.clone());
    let fj_img = fj.substitute(&tu, &sub)?;
    let u_img = &u_l + &(&fj_img - &fj).mul_monomial(&q_inv);

    // Smallest n with p^n {u_j, α_i, β_l} in B.
    let base = ring.clone();
    let mut coeffs: Vec<Polynomial> = vec![uj_l.reembed(base.universe())?];
    for img in [&tj_img, &u_img] {
        for (e, c) in img.coefficients_in(wi) {
            if e >= 1 {
                coeffs.push(c.reembed(base.universe())?);
            }
        }
    }
    let max_neg = coeffs
        .iter()
        .flat_map(|c| (0..ring.m()).filter(|&i| i != j).map(move |i| -c.min_exponent_in(i).unwrap_or(0)))
        .max()
        .unwrap_or(0)
        .max(0) as u32;
    let cap = 2 * max_neg + 16;
    let pb = Monomial::from_exponents(p.exponents()[..base.universe().len()].to_vec());
    let mut n = None;
    'search: for cand in 0..=cap {
        let pn = Monomial::from_exponents(pb.exponents().iter().map(|e| e * cand as i32).collect());
        for c in &coeffs {
            if base.retract(&c.mul_monomial(&pn)).is_err() {
                continue 'search;
            }
        }
        n = Some(cand);
        break;
    }
    let n = n.ok_or(ExpMapError::ClearingFailed(cap))?;

    // W -> p^n W, then back into the ring.
    let clear = |img: &Polynomial| -> Result<RingElement, ExpMapError> {
        let mut out = Polynomial::zero(field, &tu);
        for (e, c) in img.coefficients_in(wi) {
            let mono = Monomial::from_exponents(p.exponents().iter().map(|x| x * e * n as i32).collect())
                .mul(&Monomial::var(n_vars, wi, e));
            out = &out + &c.mul_monomial(&mono);
        }
        target
            .retract(&out)
            .map_err(|e| ExpMapError::Inexact(format!("cleared image outside the ring: {e}")))
    };
    let mut images = HashMap::new();
    images.insert(tu.name(j).to_string(), clear(&tj_img)?);
    images.insert(tu.name(vi).to_string(), clear(&v_img)?);
    images.insert(ring.unit_name().to_string(), clear(&u_img)?);
    let map = ExpMap::new(ring, &indet, &images)?;

    map.verify()?;
    let u_tilde = base.element(
        &(&Polynomial::monomial(
            field,
            base.universe(),
            Monomial::from_exponents(q.exponents()[..base.universe().len()].to_vec())
                .mul(&Monomial::var(base.universe().len(), base.unit_index(), 1)),
            field.one(),
        ) - &fj.reembed(base.universe())?),
    )?;
    for i in (0..ring.m()).filter(|&i| i != j) {
        let ti = base.gen(base.universe().name(i))?;
        if !map.is_invariant(&ti)? {
            return Err(ExpMapError::Verification(format!("{} is not invariant", base.universe().name(i))));
        }
    }
    if !map.is_invariant(&u_tilde)? {
        return Err(ExpMapError::Verification(format!(
            "u~ = {} is not invariant",
            print_poly(u_tilde.nf())
        )));
    }
    Ok(UnitRowMap { map, n, u_tilde })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn b2v2(field: FieldSpec) -> Ring {
        Ring::danielewski(field, &[2], "V^2").unwrap()
    }

    #[test]
    fn v_shift_examples() {
        let r = b2v2(FieldSpec::Rationals);
        let phi = mk_v_shift(&r).unwrap();
        assert_eq!(phi.image("u").unwrap().to_string(), "t1^2*W^2 + 2*v*W + u");
        assert!(phi.check_exponential().unwrap().passed());
        assert!(phi.is_invariant(&r.gen("t1").unwrap()).unwrap());
        assert!(!phi.is_invariant(&r.gen("v").unwrap()).unwrap());
        assert!(!phi.is_trivial().unwrap());

        let r2 = b2v2(FieldSpec::Prime(2));
        let phi2 = mk_v_shift(&r2).unwrap();
        assert_eq!(phi2.image("u").unwrap().to_string(), "t1^2*W^2 + u");
        assert!(phi2.check_exponential().unwrap().passed());
    }

    #[test]
    fn ill_defined_map_is_reported() {
        let r = b2v2(FieldSpec::Rationals);
        let phi = ExpMap::from_texts(&r, "W", &[("v", "v + W")]).unwrap();
        let rep = phi.check_exponential().unwrap();
        assert_eq!(rep.failures.len(), 1);
        assert_eq!(rep.failures[0].axiom, Axiom::WellDefined);
        assert_eq!(rep.failures[0].difference, "-2*v*W - W^2");
    }

    #[test]
    fn counit_and_coassociativity_failures() {
        let r = b2v2(FieldSpec::Rationals).adjoin(&["w"]).unwrap();
        let bad_counit = ExpMap::from_texts(&r, "W", &[("w", "w + 1 + W")]).unwrap();
        let rep = bad_counit.check_exponential().unwrap();
        assert!(rep.failures.iter().any(|f| f.axiom == Axiom::Counit));
        let bad_coassoc = ExpMap::from_texts(&r, "W", &[("w", "w + W^2")]).unwrap();
        let rep = bad_coassoc.check_exponential().unwrap();
        assert_eq!(rep.failures.len(), 1);
        assert_eq!(rep.failures[0].axiom, Axiom::Coassociativity);
    }

    #[test]
    fn identity_and_translation() {
        let r = b2v2(FieldSpec::Rationals).adjoin(&["w"]).unwrap();
        let id = ExpMap::from_texts(&r, "W", &[]).unwrap();
        assert!(id.check_exponential().unwrap().passed());
        assert!(id.is_trivial().unwrap());
        let tr = mk_translation(&r, "w").unwrap();
        assert!(tr.check_exponential().unwrap().passed());
        assert!(tr.is_invariant(&r.parse("u*v + t1").unwrap()).unwrap());
        assert!(!tr.is_invariant(&r.gen("w").unwrap()).unwrap());
        assert!(matches!(mk_translation(&r, "v"), Err(ExpMapError::NotAdjoined(_))));
    }

    #[test]
    fn unit_row_example() {
        let r = Ring::danielewski(FieldSpec::Rationals, &[1, 2], "V^2").unwrap();
        let ur = mk_unit_row(&r, 0).unwrap();
        assert_eq!(ur.n, 2);
        assert_eq!(ur.map.image("t1").unwrap().to_string(), "t2^2*u*W^2 + 2*v*W + t1");
        assert_eq!(ur.map.image("v").unwrap().to_string(), "t2^2*u*W + v");
        assert_eq!(ur.map.image("u").unwrap().to_string(), "u");
        assert!(ur.map.is_invariant(&r.gen("u").unwrap()).unwrap());
        assert!(matches!(mk_unit_row(&r, 1), Err(ExpMapError::NotUnitExponent(2))));

        let r2 = Ring::danielewski(FieldSpec::Prime(2), &[1, 2], "V^2").unwrap();
        let ur2 = mk_unit_row(&r2, 0).unwrap();
        assert_eq!(ur2.map.image("t1").unwrap().to_string(), "t2^2*u*W^2 + t1");
    }

    #[test]
    fn unit_row_with_nontrivial_f_j() {
        let r = Ring::danielewski(FieldSpec::Rationals, &[1, 2], "V^3 + T1*V + T2").unwrap();
        let ur = mk_unit_row(&r, 0).unwrap();
        assert!(ur.map.check_exponential().unwrap().passed());
        assert!(!ur.map.is_trivial().unwrap());
    }
}
