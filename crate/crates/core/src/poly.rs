//! Sparse multivariate (Laurent) polynomials with exact coefficients.
//!
//! A [`Polynomial`] lives over a [`Universe`] of named variables and stores one exponent per
//! variable in each [`Monomial`]. Exponents are signed so the same type carries the Laurent
//! localizations used as equality oracles; [`Polynomial::is_polynomial`] tells the two apart.
//! Terms iterate in graded-lexicographic order with respect to the declared variable order.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::PolyError;
use crate::field::{FieldElem, FieldSpec};

/// An ordered list of variable names shared by a family of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe(Arc<Vec<String>>);

impl Universe {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Universe(Arc::new(names.iter().map(|s| s.as_ref().to_string()).collect()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.0[idx]
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn same(&self, other: &Universe) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// A universe with `extra` appended; names already present are skipped.
    pub fn extend<S: AsRef<str>>(&self, extra: &[S]) -> Universe {
        let mut names = self.0.as_ref().clone();
        for e in extra {
            if !names.iter().any(|n| n == e.as_ref()) {
                names.push(e.as_ref().to_string());
            }
        }
        Universe(Arc::new(names))
    }

    /// A name not present in the universe, trying `candidates` first and then `S1`, `S2`, ...
    pub fn fresh_name(&self, candidates: &[&str]) -> String {
        for c in candidates {
            if self.index(c).is_none() {
                return c.to_string();
            }
        }
        (1..)
            .map(|i| format!("S{i}"))
            .find(|n| self.index(n).is_none())
            .expect("infinitely many candidates")
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.join(", "))
    }
}

/// Exponent vector indexed by universe position. Ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<i32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn from_exponents(exps: Vec<i32>) -> Self {
        Monomial(exps)
    }

    pub fn var(n: usize, idx: usize, exp: i32) -> Self {
        let mut e = vec![0; n];
        e[idx] = exp;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn exponent(&self, idx: usize) -> i32 {
        self.0[idx]
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|e| -e).collect())
    }

    pub fn with_exponent(&self, idx: usize, exp: i32) -> Monomial {
        let mut e = self.0.clone();
        e[idx] = exp;
        Monomial(e)
    }

    /// `self / other` if every exponent stays nonnegative.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        let exps: Vec<i32> = self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect();
        exps.iter().all(|&e| e >= 0).then_some(Monomial(exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

/// Filtration degree: an integer, or `NegInfinity` for the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(i64),
}

impl Degree {
    pub fn finite(self) -> Option<i64> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::NegInfinity => None,
        }
    }
}

impl Add for Degree {
    type Output = Degree;
    fn add(self, rhs: Degree) -> Degree {
        match (self, rhs) {
            (Degree::Finite(a), Degree::Finite(b)) => Degree::Finite(a + b),
            _ => Degree::NegInfinity,
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => write!(f, "-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// Integer weights `(e_1, ..., e_m; v_weight)` on the `t`-variables and `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector {
    pub t_weights: Vec<i64>,
    pub v_weight: i64,
}

impl WeightVector {
    pub fn new(t_weights: Vec<i64>, v_weight: i64) -> Self {
        WeightVector { t_weights, v_weight }
    }

    /// Binds the weights to variable positions of `universe`. Variables not named get no
    /// weight, and their presence in a polynomial makes degree computations fail.
    pub fn assign<S: AsRef<str>>(
        &self,
        universe: &Universe,
        t_names: &[S],
        v_name: &str,
    ) -> Result<Weights, PolyError> {
        let mut w = vec![None; universe.len()];
        for (name, &e) in t_names.iter().zip(&self.t_weights) {
            let idx = universe
                .index(name.as_ref())
                .ok_or_else(|| PolyError::UnknownVariable(name.as_ref().to_string()))?;
            w[idx] = Some(e);
        }
        if let Some(idx) = universe.index(v_name) {
            w[idx] = Some(self.v_weight);
        }
        Ok(Weights(w))
    }
}

/// Per-position weights over a universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weights(pub Vec<Option<i64>>);

impl Weights {
    fn of(&self, m: &Monomial, universe: &Universe) -> Result<i64, PolyError> {
        let mut total = 0i64;
        for (idx, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let w = self.0[idx].ok_or_else(|| {
                PolyError::UnweightedVariable(universe.name(idx).to_string())
            })?;
            total += w * e as i64;
        }
        Ok(total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: FieldSpec,
    vars: Universe,
    terms: BTreeMap<Monomial, FieldElem>,
}

impl Polynomial {
    pub fn zero(field: FieldSpec, vars: &Universe) -> Self {
        Polynomial {
            field,
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: FieldSpec, vars: &Universe, c: FieldElem) -> Self {
        let mut p = Self::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(field: FieldSpec, vars: &Universe) -> Self {
        Self::constant(field, vars, field.one())
    }

    pub fn from_i64(field: FieldSpec, vars: &Universe, n: i64) -> Self {
        Self::constant(field, vars, field.from_i64(n))
    }

    pub fn var(field: FieldSpec, vars: &Universe, name: &str) -> Result<Self, PolyError> {
        let idx = vars
            .index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::monomial(field, vars, Monomial::var(vars.len(), idx, 1), field.one()))
    }

    pub fn monomial(field: FieldSpec, vars: &Universe, m: Monomial, c: FieldElem) -> Self {
        debug_assert_eq!(m.exponents().len(), vars.len());
        let mut p = Self::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(
        field: FieldSpec,
        vars: &Universe,
        terms: impl IntoIterator<Item = (Monomial, FieldElem)>,
    ) -> Self {
        let mut p = Self::zero(field, vars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn universe(&self) -> &Universe {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElem)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElem {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// The value if the polynomial is constant (zero included).
    pub fn constant_value(&self) -> Option<FieldElem> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => {
                let (m, c) = self.terms.iter().next().expect("one term");
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.exponents().iter().all(|&e| e >= 0))
    }

    /// Indices of variables that occur with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.exponent(i) != 0))
            .collect()
    }

    pub fn mentions(&self, name: &str) -> bool {
        self.vars
            .index(name)
            .is_some_and(|i| self.terms.keys().any(|m| m.exponent(i) != 0))
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: FieldElem) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        if !self.vars.same(&other.vars) {
            return Err(PolyError::UniverseMismatch(
                self.vars.to_string(),
                other.vars.to_string(),
            ));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.compatible(other)?;
        let mut out = Polynomial::zero(self.field, &self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &FieldElem) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field, &self.vars);
        }
        Polynomial {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplication by a (possibly Laurent) monomial.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    /// Exact division by a monomial inside the polynomial ring (no negative exponents created).
    pub fn div_monomial(&self, m: &Monomial) -> Result<Polynomial, PolyError> {
        let mut terms = BTreeMap::new();
        for (t, c) in &self.terms {
            let q = t
                .divide(m)
                .ok_or_else(|| PolyError::InexactDivision(format!("term {t:?} by {m:?}")))?;
            terms.insert(q, c.clone());
        }
        Ok(Polynomial {
            field: self.field,
            vars: self.vars.clone(),
            terms,
        })
    }

    pub fn pow(&self, mut exp: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(self.field, &self.vars);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Largest exponent of the variable at `idx`, `None` for the zero polynomial.
    pub fn degree_in(&self, idx: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(idx)).max()
    }

    pub fn min_exponent_in(&self, idx: usize) -> Option<i32> {
        self.terms.keys().map(|m| m.exponent(idx)).min()
    }

    /// Groups terms by the exponent of the variable at `idx`; coefficients have that
    /// exponent cleared.
    pub fn coefficients_in(&self, idx: usize) -> BTreeMap<i32, Polynomial> {
        let mut out: BTreeMap<i32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(idx);
            out.entry(e)
                .or_insert_with(|| Polynomial::zero(self.field, &self.vars))
                .add_term(m.with_exponent(idx, 0), c.clone());
        }
        out
    }

    /// The coefficient of `var^exp` (with `var` cleared).
    pub fn coefficient_of_power(&self, idx: usize, exp: i32) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            &self.vars,
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(idx) == exp)
                .map(|(m, c)| (m.with_exponent(idx, 0), c.clone())),
        )
    }

    /// Sets the variable at `idx` to zero.
    pub fn eval_zero(&self, idx: usize) -> Polynomial {
        Polynomial::from_terms(
            self.field,
            &self.vars,
            self.terms
                .iter()
                .filter(|(m, _)| m.exponent(idx) == 0)
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// `f_var = sum i c_i var^(i-1)`, with `i` taken in the coefficient field.
    pub fn formal_derivative(&self, name: &str) -> Result<Polynomial, PolyError> {
        let idx = self
            .vars
            .index(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(self.derivative_at(idx))
    }

    pub fn derivative_at(&self, idx: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.field, &self.vars);
        for (m, c) in &self.terms {
            let e = m.exponent(idx);
            if e != 0 {
                out.add_term(
                    m.with_exponent(idx, e - 1),
                    c * &self.field.from_i64(e as i64),
                );
            }
        }
        out
    }

    /// Rewrites the polynomial over `target`, matching variables by name.
    pub fn reembed(&self, target: &Universe) -> Result<Polynomial, PolyError> {
        if self.vars.same(target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|n| target.index(n))
            .collect();
        let mut out = Polynomial::zero(self.field, target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in m.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = map[i]
                    .ok_or_else(|| PolyError::UnknownVariable(self.vars.name(i).to_string()))?;
                e[j] += x;
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Same exponent vectors read over a different universe of the same size.
    pub fn relabel(&self, target: &Universe) -> Polynomial {
        assert_eq!(self.vars.len(), target.len(), "relabel needs equal sizes");
        Polynomial {
            field: self.field,
            vars: target.clone(),
            terms: self.terms.clone(),
        }
    }

    /// Ring homomorphism evaluation: every variable of `self` is replaced by its image in
    /// `images` (polynomials over `target`); variables without an image map to the variable of
    /// the same name in `target`.
    pub fn substitute(
        &self,
        target: &Universe,
        images: &HashMap<String, Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        let n = self.vars.len();
        let mut resolved: Vec<Option<Polynomial>> = Vec::with_capacity(n);
        for name in self.vars.names() {
            match images.get(name) {
                Some(img) => {
                    if img.field != self.field {
                        return Err(PolyError::FieldMismatch(
                            self.field.to_string(),
                            img.field.to_string(),
                        ));
                    }
                    if !img.vars.same(target) {
                        return Err(PolyError::UniverseMismatch(
                            img.vars.to_string(),
                            target.to_string(),
                        ));
                    }
                    resolved.push(Some(img.clone()));
                }
                None => resolved.push(None),
            }
        }
        self.substitute_resolved(target, &resolved)
    }

    /// Like [`Polynomial::substitute`] with images given by universe position.
    pub fn substitute_resolved(
        &self,
        target: &Universe,
        images: &[Option<Polynomial>],
    ) -> Result<Polynomial, PolyError> {
        let n = self.vars.len();
        let mut imgs: Vec<Polynomial> = Vec::with_capacity(n);
        for (i, img) in images.iter().enumerate() {
            match img {
                Some(p) => imgs.push(p.clone()),
                None => {
                    let name = self.vars.name(i);
                    let used = self.terms.keys().any(|m| m.exponent(i) != 0);
                    if used {
                        imgs.push(Polynomial::var(self.field, target, name)?);
                    } else {
                        imgs.push(Polynomial::zero(self.field, target));
                    }
                }
            }
        }
        let mut cache: HashMap<(usize, i32), Polynomial> = HashMap::new();
        let mut out = Polynomial::zero(self.field, target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(self.field, target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let factor = match cache.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = power_of_image(&imgs[i], e, self.vars.name(i))?;
                        cache.insert((i, e), p.clone());
                        p
                    }
                };
                term = &term * &factor;
                if term.is_zero() {
                    break;
                }
            }
            for (tm, tc) in term.terms {
                out.add_term(tm, tc);
            }
        }
        Ok(out)
    }

    /// Division with remainder with respect to the variable at `idx`. The divisor's leading
    /// coefficient in that variable must be a nonzero constant; all other variables (Laurent
    /// ones included) are treated as coefficients.
    pub fn div_rem_in(
        &self,
        divisor: &Polynomial,
        idx: usize,
    ) -> Result<(Polynomial, Polynomial), PolyError> {
        self.compatible(divisor)?;
        let dcoeffs = divisor.coefficients_in(idx);
        let (&ddeg, lead) = dcoeffs
            .iter()
            .next_back()
            .ok_or_else(|| PolyError::InexactDivision("division by zero".into()))?;
        if divisor.min_exponent_in(idx).unwrap_or(0) < 0 {
            return Err(PolyError::InexactDivision(
                "divisor has negative exponent in the division variable".into(),
            ));
        }
        let lead_inv = lead
            .constant_value()
            .and_then(|c| c.inverse())
            .ok_or_else(|| {
                PolyError::InexactDivision("leading coefficient is not a unit constant".into())
            })?;
        let mut rem = self.clone();
        let mut quot = Polynomial::zero(self.field, &self.vars);
        while let Some(rdeg) = rem.degree_in(idx).filter(|&d| d >= ddeg) {
            let top = rem
                .coefficient_of_power(idx, rdeg)
                .mul_monomial(&Monomial::var(self.vars.len(), idx, rdeg - ddeg))
                .scale(&lead_inv);
            rem = &rem - &(&top * divisor);
            quot = &quot + &top;
        }
        Ok((quot, rem))
    }

    /// Exact quotient by `divisor` in the variable at `idx`; fails on a nonzero remainder.
    pub fn div_exact_in(&self, divisor: &Polynomial, idx: usize) -> Result<Polynomial, PolyError> {
        let (q, r) = self.div_rem_in(divisor, idx)?;
        if !r.is_zero() {
            return Err(PolyError::InexactDivision(format!(
                "remainder has {} terms",
                r.num_terms()
            )));
        }
        Ok(q)
    }

    /// Weighted degree: the maximum weight over terms, `NegInfinity` for zero.
    pub fn weighted_degree(&self, w: &Weights) -> Result<Degree, PolyError> {
        let mut best = Degree::NegInfinity;
        for m in self.terms.keys() {
            best = best.max(Degree::Finite(w.of(m, &self.vars)?));
        }
        Ok(best)
    }

    /// The sum of terms attaining the weighted degree.
    pub fn top_form(&self, w: &Weights) -> Result<Polynomial, PolyError> {
        let Degree::Finite(d) = self.weighted_degree(w)? else {
            return Ok(self.clone());
        };
        let mut out = Polynomial::zero(self.field, &self.vars);
        for (m, c) in &self.terms {
            if w.of(m, &self.vars)? == d {
                out.add_term(m.clone(), c.clone());
            }
        }
        Ok(out)
    }

    /// Whether the variable at `idx` divides every term (false for zero).
    pub fn divisible_by_var(&self, idx: usize) -> bool {
        !self.is_zero() && self.terms.keys().all(|m| m.exponent(idx) >= 1)
    }
}

fn power_of_image(img: &Polynomial, e: i32, name: &str) -> Result<Polynomial, PolyError> {
    if e >= 0 {
        return Ok(img.pow(e as u32));
    }
    // Negative exponents are only meaningful for monomial images.
    if img.terms.len() != 1 {
        return Err(PolyError::NonInvertibleSubstitution(name.to_string()));
    }
    let (m, c) = img.terms.iter().next().expect("one term");
    let inv = Polynomial::monomial(
        img.field,
        &img.vars,
        m.inverse(),
        c.inverse().expect("nonzero coefficient"),
    );
    Ok(inv.pow((-e) as u32))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parse::print_poly(self))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            field: self.field,
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn q(text: &str, vars: &Universe) -> Polynomial {
        parse_poly(text, vars, FieldSpec::Rationals).unwrap()
    }

    fn tv() -> Universe {
        Universe::new(&["T1", "V", "W", "a"])
    }

    #[test]
    fn arithmetic_examples() {
        let u = tv();
        assert!((&q("V^2", &u) + &q("-V^2", &u)).is_zero());
        assert_eq!(&q("T1 + V", &u) * &q("T1 - V", &u), q("T1^2 - V^2", &u));
        let f2 = FieldSpec::Prime(2);
        let v = Polynomial::var(f2, &u, "V").unwrap();
        assert!((&v + &v).is_zero());
    }

    #[test]
    fn mismatched_operands_are_rejected() {
        let u = tv();
        let a = q("V", &u);
        let b = Polynomial::var(FieldSpec::Prime(3), &u, "V").unwrap();
        assert!(matches!(a.checked_add(&b), Err(PolyError::FieldMismatch(..))));
        let other = Universe::new(&["V"]);
        let c = q("V", &other);
        assert!(matches!(a.checked_mul(&c), Err(PolyError::UniverseMismatch(..))));
    }

    #[test]
    fn derivative_examples() {
        let u = tv();
        assert_eq!(
            q("V^3 + a*V", &u).formal_derivative("V").unwrap(),
            q("3*V^2 + a", &u)
        );
        let f3 = FieldSpec::Prime(3);
        let v3 = parse_poly("V^3", &u, f3).unwrap();
        assert!(v3.formal_derivative("V").unwrap().is_zero());
        assert_eq!(q("V^2 - 1", &u).formal_derivative("V").unwrap(), q("2*V", &u));
        assert!(matches!(
            q("V", &u).formal_derivative("Z"),
            Err(PolyError::UnknownVariable(_))
        ));
    }

    #[test]
    fn substitution_examples() {
        let u = tv();
        let mut img = HashMap::new();
        img.insert("V".to_string(), q("V + T1^2*W", &u));
        assert_eq!(
            q("V^2", &u).substitute(&u, &img).unwrap(),
            q("V^2 + 2*T1^2*V*W + T1^4*W^2", &u)
        );
        let mut zero = HashMap::new();
        zero.insert("T1".to_string(), Polynomial::zero(FieldSpec::Rationals, &u));
        assert!(q("T1*V", &u).substitute(&u, &zero).unwrap().is_zero());
        let mut ident = HashMap::new();
        ident.insert("V".to_string(), q("V", &u));
        assert_eq!(q("V^2 - 1", &u).substitute(&u, &ident).unwrap(), q("V^2 - 1", &u));
    }

    #[test]
    fn laurent_substitution_needs_monomial_images() {
        let u = tv();
        let t_inv = q("T1", &u).mul_monomial(&Monomial::var(4, 0, -2));
        assert!(!t_inv.is_polynomial());
        let mut img = HashMap::new();
        img.insert("T1".to_string(), q("2*T1", &u));
        let back = t_inv.substitute(&u, &img).unwrap();
        assert_eq!(
            back,
            Polynomial::monomial(
                FieldSpec::Rationals,
                &u,
                Monomial::var(4, 0, -1),
                FieldSpec::Rationals.from_fraction(&1.into(), &2.into()).unwrap()
            )
        );
        img.insert("T1".to_string(), q("T1 + 1", &u));
        assert!(matches!(
            t_inv.substitute(&u, &img),
            Err(PolyError::NonInvertibleSubstitution(_))
        ));
    }

    fn tw(t: i64, v: i64) -> Weights {
        WeightVector::new(vec![t], v)
            .assign(&tv(), &["T1"], "V")
            .unwrap()
    }

    #[test]
    fn weighted_degree_examples() {
        let u = tv();
        assert_eq!(q("T1*V^2", &u).weighted_degree(&tw(-1, 0)).unwrap(), Degree::Finite(-1));
        assert_eq!(q("V^2 + T1*V", &u).weighted_degree(&tw(-1, 0)).unwrap(), Degree::Finite(0));
        assert_eq!(
            Polynomial::zero(FieldSpec::Rationals, &u)
                .weighted_degree(&tw(-1, 0))
                .unwrap(),
            Degree::NegInfinity
        );
        assert!(matches!(
            q("W", &u).weighted_degree(&tw(1, 0)),
            Err(PolyError::UnweightedVariable(n)) if n == "W"
        ));
    }

    #[test]
    fn top_form_examples() {
        let u = tv();
        assert_eq!(q("V^2 + T1*V", &u).top_form(&tw(-1, 0)).unwrap(), q("V^2", &u));
        assert_eq!(q("V^2 + T1*V", &u).top_form(&tw(1, 0)).unwrap(), q("T1*V", &u));
        for d in 0..5 {
            let vd = q("V", &u).pow(d);
            assert_eq!(vd.top_form(&tw(3, 0)).unwrap(), vd);
        }
        let z = Polynomial::zero(FieldSpec::Rationals, &u);
        assert!(z.top_form(&tw(1, 0)).unwrap().is_zero());
    }

    #[test]
    fn division_in_a_variable() {
        let u = tv();
        let f = q("V^2 + T1*V + 1", &u);
        let g = q("V^5 + a*V^3 - T1", &u);
        let (qt, r) = g.div_rem_in(&f, 1).unwrap();
        assert_eq!(&(&qt * &f) + &r, g);
        assert!(r.degree_in(1).unwrap() < 2);
        assert!(matches!(
            g.div_rem_in(&q("T1*V + 1", &u), 1),
            Err(PolyError::InexactDivision(_))
        ));
    }

    #[test]
    fn monomial_order_is_graded_lex() {
        let u = Universe::new(&["x", "y"]);
        let a = Monomial::from_exponents(vec![0, 2]);
        let b = Monomial::from_exponents(vec![1, 0]);
        let c = Monomial::from_exponents(vec![1, 1]);
        let d = Monomial::from_exponents(vec![2, 0]);
        assert!(b < a && a < c && c < d);
        assert_eq!(u.fresh_name(&["x", "U"]), "U");
    }
}
