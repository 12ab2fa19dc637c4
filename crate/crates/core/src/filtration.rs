//! Weight filtrations on Danielewski rings, leading forms, the associated graded ring and
//! the homogenization of exponential maps.
//!
//! Weights `e_i` on `t_i` and a weight on `v` define degrees on the Laurent side; `u` then
//! sits in degree `ell = e - sum r_i e_i` where `e` is the weighted degree of `F`. When no
//! `t_i` divides the top form `F_top`, the maximal-degree part of a normal form is already
//! the leading form, and `gr` is presented by `t^r u - F_top`.

use std::collections::HashMap;

use num_rational::Ratio;

use crate::error::FiltrationError;
use crate::expmap::ExpMap;
use crate::parse::{Family, RingConfig};
use crate::poly::{Degree, Polynomial, WeightVector, Weights};
use crate::quotient::{Ring, RingElement};

#[derive(Clone, Debug)]
pub struct Filtration {
    ring: Ring,
    w: WeightVector,
    e: i64,
    ell: i64,
    /// Weights over the ring universe, `u` unweighted.
    laurent_weights: Weights,
}

impl Filtration {
    pub fn new(ring: &Ring, w: WeightVector) -> Result<Filtration, FiltrationError> {
        if ring.family() != Family::Danielewski || !ring.extras().is_empty() {
            return Err(FiltrationError::UnsupportedRing);
        }
        if w.t_weights.len() != ring.m() {
            return Err(FiltrationError::WeightLength { expected: ring.m(), got: w.t_weights.len() });
        }
        let u = ring.universe();
        let laurent_weights = w.assign(u, ring.base_var_names(), u.name(ring.main_free_index()))?;
        let e = ring
            .defining_poly()
            .weighted_degree(&laurent_weights)?
            .finite()
            .ok_or(FiltrationError::ZeroRelation)?;
        let ell = e - ring
            .r()
            .iter()
            .zip(&w.t_weights)
            .map(|(&r, &ei)| r as i64 * ei)
            .sum::<i64>();
        Ok(Filtration { ring: ring.clone(), w, e, ell, laurent_weights })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn weights(&self) -> &WeightVector {
        &self.w
    }

    /// Weighted degree of `F`.
    pub fn e(&self) -> i64 {
        self.e
    }

    /// Degree of `u`.
    pub fn ell(&self) -> i64 {
        self.ell
    }

    /// Degree of `x`: the weighted degree of its Laurent image.
    pub fn filt_degree(&self, x: &RingElement) -> Result<Degree, FiltrationError> {
        if x.ring() != &self.ring {
            return Err(FiltrationError::UnsupportedRing);
        }
        Ok(x.laurent().weighted_degree(&self.laurent_weights)?)
    }

    /// Weights with `u` of weight `ell`, used on normal forms.
    fn nf_weights(&self) -> Weights {
        let mut w = self.laurent_weights.clone();
        w.0[self.ring.unit_index()] = Some(self.ell);
        w
    }

    /// Top form of `F` in the configuration variables `T1..Tm, V`.
    pub fn top_relation(&self) -> Result<Polynomial, FiltrationError> {
        let cfg = self.ring.config();
        let cu = cfg.defining.universe().clone();
        let w = self.w.assign(&cu, &cu.names()[..cfg.m], "V")?;
        Ok(cfg.defining.top_form(&w)?)
    }

    /// The associated graded ring, presented as `B(r, F_top)`.
    pub fn build_gr(&self) -> Result<GradedRing, FiltrationError> {
        let top = self.top_relation()?;
        for i in 0..self.ring.m() {
            if top.divisible_by_var(i) {
                return Err(FiltrationError::DivisibleTopForm(i + 1));
            }
        }
        let cfg = RingConfig {
            field: self.ring.field(),
            family: Family::Danielewski,
            m: self.ring.m(),
            r: self.ring.r().to_vec(),
            defining: top.clone(),
            g1: None,
            g2: None,
        };
        let monic_in_v = cfg.validate().is_ok();
        let ring = Ring::new_relaxed(&cfg)?;
        Ok(GradedRing { ring, top, monic_in_v, filtration: self.clone() })
    }
}

/// `gr(B)` for a filtration whose top relation is not divisible by any `t_i`.
#[derive(Clone, Debug)]
pub struct GradedRing {
    ring: Ring,
    top: Polynomial,
    monic_in_v: bool,
    filtration: Filtration,
}

impl GradedRing {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `F_top` over `T1..Tm, V`.
    pub fn top_relation(&self) -> &Polynomial {
        &self.top
    }

    /// Whether `F_top` is monic in `V` with degree at least two.
    pub fn monic_in_v(&self) -> bool {
        self.monic_in_v
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    /// `ρ(x)`: the maximal-degree terms of the normal form, read in `gr`.
    pub fn leading_form(&self, x: &RingElement) -> Result<RingElement, FiltrationError> {
        let f = &self.filtration;
        if x.ring() != f.ring() {
            return Err(FiltrationError::UnsupportedRing);
        }
        let top = x.nf().top_form(&f.nf_weights())?;
        Ok(self.ring.element(&top.relabel(self.ring.universe()))?)
    }

    /// Whether `t^r u - F_top` vanishes in the presented ring.
    pub fn relation_holds(&self) -> Result<bool, FiltrationError> {
        let rel = self.ring.relation();
        Ok(self.ring.element(&rel)?.is_zero())
    }

    /// Degree of a homogeneous element of `gr` (weights as in the filtration).
    pub fn degree(&self, x: &RingElement) -> Result<Degree, FiltrationError> {
        let mut w = self.filtration.nf_weights();
        w.0.truncate(self.ring.universe().len());
        Ok(x.nf().weighted_degree(&w)?)
    }
}

/// Leading form of `x` for a filtration, building `gr` on the way.
pub fn leading_form(x: &RingElement, f: &Filtration) -> Result<RingElement, FiltrationError> {
    f.build_gr()?.leading_form(x)
}

/// The homogenized map together with the weight `-θ` given to its indeterminate.
#[derive(Clone, Debug)]
pub struct Homogenized {
    pub gr: GradedRing,
    pub map: ExpMap,
    pub theta: Ratio<i64>,
}

/// Builds `φ̄` on `gr` from `φ`: `θ = max (deg c_(x,j) - deg x) / j` over generators `x` and
/// `j >= 1`, and `ρ(x) -> sum ρ(c_(x,j)) W^j` over the `j` with `deg c_(x,j) - jθ = deg x`.
/// The candidate is verified; every supplied witness must be `φ`-invariant and its leading
/// form `φ̄`-invariant.
pub fn homogenize_expmap(
    phi: &ExpMap,
    f: &Filtration,
    witnesses: &[RingElement],
) -> Result<Homogenized, FiltrationError> {
    if phi.ring() != f.ring() {
        return Err(FiltrationError::UnsupportedRing);
    }
    let rep = phi
        .check_exponential()
        .map_err(|e| FiltrationError::BadInput(e.to_string()))?;
    if !rep.passed() {
        return Err(FiltrationError::BadInput(rep.to_string()));
    }
    let gr = f.build_gr()?;
    let ring = f.ring();

    let mut per_gen = Vec::new();
    let mut theta: Option<Ratio<i64>> = None;
    for name in ring.generator_names() {
        let x = ring.gen(name)?;
        let dx = f.filt_degree(&x)?.finite().expect("generators are nonzero");
        let coeffs = phi
            .coefficients(&x)
            .map_err(|e| FiltrationError::BadInput(e.to_string()))?;
        let mut cs = Vec::new();
        for (j, c) in coeffs {
            if j == 0 || c.is_zero() {
                continue;
            }
            let dc = f.filt_degree(&c)?.finite().expect("nonzero");
            let cand = Ratio::new(dc - dx, j as i64);
            theta = Some(theta.map_or(cand, |t| t.max(cand)));
            cs.push((j, dc, c));
        }
        per_gen.push((name.clone(), x, dx, cs));
    }
    let theta = theta.ok_or_else(|| FiltrationError::BadInput("the map is trivial".into()))?;

    let indet = phi.indeterminate().to_string();
    let target = gr.ring().adjoin(&[indet.as_str()])?;
    let wvar = target.gen(&indet)?;
    let mut images = HashMap::new();
    for (name, x, dx, cs) in &per_gen {
        let mut img = gr.leading_form(x)?.lift(&target)?;
        for (j, dc, c) in cs {
            // dc - j θ = dx, cross-multiplied.
            if (dc - dx) * theta.denom() == *j as i64 * theta.numer() {
                let rc = gr.leading_form(c)?.lift(&target)?;
                img = &img + &(&rc * &wvar.pow(*j as u32));
            }
        }
        images.insert(name.clone(), img);
    }
    let map = ExpMap::new(gr.ring(), &indet, &images)
        .map_err(|e| FiltrationError::CandidateFailed(e.to_string()))?;
    let rep = map
        .check_exponential()
        .map_err(|e| FiltrationError::CandidateFailed(e.to_string()))?;
    if !rep.passed() {
        return Err(FiltrationError::CandidateFailed(rep.to_string()));
    }
    if map
        .is_trivial()
        .map_err(|e| FiltrationError::CandidateFailed(e.to_string()))?
    {
        return Err(FiltrationError::CandidateFailed("induced map is trivial".into()));
    }
    for b in witnesses {
        let inv = phi
            .is_invariant(b)
            .map_err(|e| FiltrationError::BadInput(e.to_string()))?;
        if !inv {
            return Err(FiltrationError::WitnessNotInvariant(b.to_string()));
        }
        let rb = gr.leading_form(b)?;
        let inv_bar = map
            .is_invariant(&rb)
            .map_err(|e| FiltrationError::CandidateFailed(e.to_string()))?;
        if !inv_bar {
            return Err(FiltrationError::CandidateFailed(format!(
                "leading form {rb} of invariant {b} is moved by the induced map"
            )));
        }
    }
    Ok(Homogenized { gr, map, theta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expmap::mk_v_shift;
    use crate::field::FieldSpec;
    use crate::parse::print_poly;

    fn ring(r: &[u32], f: &str) -> Ring {
        Ring::danielewski(FieldSpec::Rationals, r, f).unwrap()
    }

    #[test]
    fn degree_examples() {
        let b = ring(&[2], "V^2");
        let f = Filtration::new(&b, WeightVector::new(vec![-1], 0)).unwrap();
        assert_eq!(f.ell(), 2);
        let deg = |s: &str| f.filt_degree(&b.parse(s).unwrap()).unwrap();
        assert_eq!(deg("t1"), Degree::Finite(-1));
        assert_eq!(deg("u"), Degree::Finite(2));
        assert_eq!(deg("t1*u*v^2"), Degree::Finite(1));
        assert_eq!(deg("0"), Degree::NegInfinity);
    }

    #[test]
    fn gr_examples() {
        let b = ring(&[2], "V^2 + T1*V");
        let f = Filtration::new(&b, WeightVector::new(vec![-1], 0)).unwrap();
        let gr = f.build_gr().unwrap();
        assert_eq!(gr.ring(), &ring(&[2], "V^2"));
        assert!(gr.relation_holds().unwrap());
        assert!(gr.monic_in_v());
        assert_eq!(gr.leading_form(&b.parse("v + t1").unwrap()).unwrap().to_string(), "v");

        let f2 = Filtration::new(&b, WeightVector::new(vec![1], 0)).unwrap();
        assert!(matches!(f2.build_gr(), Err(FiltrationError::DivisibleTopForm(1))));

        let c = ring(&[2, 3], "V^3 + T1*V^2 + T2 + 1");
        let fv = Filtration::new(&c, WeightVector::new(vec![0, 0], 1)).unwrap();
        let grv = fv.build_gr().unwrap();
        assert_eq!(print_poly(grv.top_relation()), "V^3");
    }

    #[test]
    fn leading_form_of_the_relation() {
        let b = ring(&[2], "V^2 + T1*V");
        let f = Filtration::new(&b, WeightVector::new(vec![-1], 0)).unwrap();
        let gr = f.build_gr().unwrap();
        let tu = b.parse("t1^2*u").unwrap();
        let rho = gr.leading_form(&tu).unwrap();
        assert_eq!(rho, gr.ring().parse("t1^2*u").unwrap());
        assert_eq!(rho.to_string(), "v^2");
    }

    #[test]
    fn v_shift_homogenizes_to_v_shift() {
        let b = ring(&[2], "V^2 + T1*V");
        let f = Filtration::new(&b, WeightVector::new(vec![-1], 0)).unwrap();
        let phi = mk_v_shift(&b).unwrap();
        let t1 = b.gen("t1").unwrap();
        let h = homogenize_expmap(&phi, &f, &[t1.clone(), &t1 * &t1]).unwrap();
        assert_eq!(h.theta, Ratio::from_integer(-2));
        let expected = mk_v_shift(h.gr.ring()).unwrap();
        for (g, img) in expected.images() {
            assert_eq!(h.map.image(g).unwrap(), img, "generator {g}");
        }
        let v = b.gen("v").unwrap();
        assert!(matches!(
            homogenize_expmap(&phi, &f, &[v]),
            Err(FiltrationError::WitnessNotInvariant(_))
        ));
    }

    #[test]
    fn homogeneous_map_is_recovered() {
        let b = ring(&[2], "V^2");
        let f = Filtration::new(&b, WeightVector::new(vec![-1], 0)).unwrap();
        let phi = mk_v_shift(&b).unwrap();
        let h = homogenize_expmap(&phi, &f, &[]).unwrap();
        for (g, img) in phi.images() {
            assert_eq!(h.map.image(g).unwrap().to_string(), img.to_string());
        }
    }
}
