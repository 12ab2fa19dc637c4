//! Seeded random polynomials and fixtures for the oracle harnesses.

use rand::Rng;

use crate::field::{FieldElem, FieldSpec};
use crate::poly::{Monomial, Polynomial, Universe, WeightVector};
use crate::quotient::{Ring, RingElement};

/// A nonzero coefficient: a small integer over `F_p`, a small fraction over `Q`.
pub fn coefficient<R: Rng>(rng: &mut R, field: FieldSpec) -> FieldElem {
    loop {
        let num = rng.gen_range(-9i64..=9);
        let c = match field {
            FieldSpec::Rationals if rng.gen_bool(0.25) => {
                let den = rng.gen_range(2i64..=5);
                &field.from_i64(num) * &field.from_i64(den).inverse().expect("nonzero")
            }
            _ => field.from_i64(num),
        };
        if !c.is_zero() {
            return c;
        }
    }
}

/// Up to `terms` terms with every exponent of the variables in `vars` at most `max_exp`.
pub fn polynomial<R: Rng>(
    rng: &mut R,
    field: FieldSpec,
    universe: &Universe,
    vars: &[usize],
    max_exp: i32,
    terms: usize,
) -> Polynomial {
    let n = universe.len();
    let mut out = Polynomial::zero(field, universe);
    for _ in 0..terms {
        let mut e = vec![0; n];
        for &i in vars {
            e[i] = rng.gen_range(0..=max_exp);
        }
        let t = Polynomial::monomial(field, universe, Monomial::from_exponents(e), coefficient(rng, field));
        out = &out + &t;
    }
    out
}

/// A raw (unreduced) polynomial in the ring's generators.
pub fn raw_element<R: Rng>(rng: &mut R, ring: &Ring, max_exp: i32, terms: usize) -> Polynomial {
    let vars: Vec<usize> = (0..ring.universe().len()).collect();
    polynomial(rng, ring.field(), ring.universe(), &vars, max_exp, terms)
}

/// A random element, normalized.
pub fn element<R: Rng>(rng: &mut R, ring: &Ring, max_exp: i32, terms: usize) -> RingElement {
    ring.element(&raw_element(rng, ring, max_exp, terms))
        .expect("polynomial in the ring universe")
}

/// `F` monic in `V` of degree `2..=max_deg_v` with coefficients in `k[T]`, as text.
pub fn defining_text<R: Rng>(rng: &mut R, m: usize, max_deg_v: u32) -> String {
    let d = rng.gen_range(2..=max_deg_v);
    let mut parts = vec![format!("V^{d}")];
    for k in 0..d {
        if rng.gen_bool(0.6) {
            let c = rng.gen_range(-4i64..=4);
            if c == 0 {
                continue;
            }
            let mut mono = vec![format!("{c}")];
            for i in 1..=m {
                let e = rng.gen_range(0..=2);
                if e > 0 {
                    mono.push(format!("T{i}^{e}"));
                }
            }
            if k > 0 {
                mono.push(format!("V^{k}"));
            }
            parts.push(format!("({})", mono.join("*")));
        }
    }
    parts.join(" + ")
}

/// Weights in `-3..=3` for the `t`s and `0..=3` for `v`.
pub fn weights<R: Rng>(rng: &mut R, m: usize) -> WeightVector {
    WeightVector::new((0..m).map(|_| rng.gen_range(-3..=3)).collect(), rng.gen_range(0..=3))
}

/// Exponents in `1..=3`.
pub fn exponents<R: Rng>(rng: &mut R, m: usize) -> Vec<u32> {
    (0..m).map(|_| rng.gen_range(1..=3)).collect()
}
