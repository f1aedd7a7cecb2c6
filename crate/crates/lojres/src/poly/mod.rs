//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Terms are kept in a canonical sorted order (descending graded reverse
//! lexicographic with the ambient variable order) and never store zero
//! coefficients, so two polynomials over the same ambient are equal iff
//! their term vectors are equal. All arithmetic is exact.

mod parse;

pub use parse::{parse_poly, ParseError};

use crate::vars::Vars;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

pub type Rational = BigRational;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("variable `{0}` is not in the ambient")]
    UnknownVariable(String),
    #[error("substitution is missing an image for `{0}`")]
    MissingImage(String),
    #[error("substitution images live over different ambients")]
    MixedAmbients,
}

/// Exponent vector over a fixed ambient; index `i` is the exponent of the
/// `i`-th ambient variable.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub SmallVec<[u16; 6]>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(smallvec::smallvec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = Monomial::one(n);
        e.0[i] = 1;
        e
    }

    pub fn from_exponents(e: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(e))
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    /// Componentwise quotient, `None` when not divisible.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(other.0.iter()) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Graded reverse lexicographic comparison in the ambient variable order.
    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        let (da, db) = (self.degree(), other.degree());
        if da != db {
            return da.cmp(&db);
        }
        // Equal degree: the one whose last nonzero entry of the difference
        // is negative is the larger.
        for i in (0..self.0.len()).rev() {
            if self.0[i] != other.0[i] {
                return other.0[i].cmp(&self.0[i]);
            }
        }
        Ordering::Equal
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mono{:?}", self.0.as_slice())
    }
}

/// A sparse polynomial: terms sorted descending by grevlex, no zeros stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    vars: Vars,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(vars: &Vars) -> Self {
        Polynomial { vars: vars.clone(), terms: Vec::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Polynomial::constant(vars, Rational::one())
    }

    pub fn constant(vars: &Vars, c: Rational) -> Self {
        if c.is_zero() {
            return Polynomial::zero(vars);
        }
        Polynomial { vars: vars.clone(), terms: vec![(Monomial::one(vars.len()), c)] }
    }

    pub fn constant_int(vars: &Vars, c: i64) -> Self {
        Polynomial::constant(vars, Rational::from_integer(BigInt::from(c)))
    }

    pub fn variable(vars: &Vars, i: usize) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: vec![(Monomial::var(vars.len(), i), Rational::one())],
        }
    }

    pub fn monomial(vars: &Vars, m: Monomial, c: Rational) -> Self {
        debug_assert_eq!(m.0.len(), vars.len());
        if c.is_zero() {
            return Polynomial::zero(vars);
        }
        Polynomial { vars: vars.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// merging duplicates and dropping zeros.
    pub fn from_terms(vars: &Vars, terms: Vec<(Monomial, Rational)>) -> Self {
        let mut map: BTreeMap<GrevlexKey, Rational> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.0.len(), vars.len());
            if c.is_zero() {
                continue;
            }
            let e = map.entry(GrevlexKey(m)).or_insert_with(Rational::zero);
            *e += c;
        }
        let mut out: Vec<(Monomial, Rational)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k.0, c))
            .collect();
        out.reverse(); // BTreeMap ascending -> descending
        Polynomial { vars: vars.clone(), terms: out }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Coefficient of the constant term (value at the origin).
    pub fn constant_term(&self) -> Rational {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Rational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// The single term as (monomial, coefficient) if this is one, else None.
    pub fn as_single_term(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            Some((&self.terms[0].0, &self.terms[0].1))
        } else {
            None
        }
    }

    fn assert_same_vars(&self, other: &Polynomial) {
        assert!(
            self.vars == other.vars,
            "polynomials over different ambients: {:?} vs {:?}",
            self.vars,
            other.vars
        );
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_vars(other);
        let mut out: Vec<(Monomial, Rational)> =
            Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.terms[i].0.grevlex_cmp(&other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &self.terms[i].1 + &other.terms[j].1;
                    if !c.is_zero() {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { vars: self.vars.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.assert_same_vars(other);
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        let mut map: BTreeMap<GrevlexKey, Rational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let e = map.entry(GrevlexKey(m)).or_insert_with(Rational::zero);
                *e += ca * cb;
            }
        }
        let mut out: Vec<(Monomial, Rational)> = map
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k.0, c))
            .collect();
        out.reverse();
        Polynomial { vars: self.vars.clone(), terms: out }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(&Monomial::one(self.vars.len()), c)
    }

    pub fn pow(&self, n: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.vars);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / g`; `Ok(None)` when `g` does not divide `self`.
    pub fn divide_exact(&self, g: &Polynomial) -> Result<Option<Polynomial>, PolyError> {
        self.assert_same_vars(g);
        if g.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        let mut rem = self.clone();
        let mut quo: Vec<(Monomial, Rational)> = Vec::new();
        let (glt_m, glt_c) = (&g.terms[0].0, &g.terms[0].1);
        while !rem.is_zero() {
            let (rm, rc) = (&rem.terms[0].0, &rem.terms[0].1);
            let Some(qm) = rm.div(glt_m) else { return Ok(None) };
            let qc = rc / glt_c;
            rem = rem.sub(&g.mul_term(&qm, &qc));
            quo.push((qm, qc));
        }
        // Quotient terms were produced in strictly descending order.
        Ok(Some(Polynomial { vars: self.vars.clone(), terms: quo }))
    }

    /// Largest `k` such that `g^k` divides `self` exactly; `None` for the
    /// zero polynomial (infinite order).
    pub fn order_along(&self, g: &Polynomial) -> Result<Option<u64>, PolyError> {
        if g.is_zero() {
            return Err(PolyError::ZeroDivisor);
        }
        if self.is_zero() {
            return Ok(None);
        }
        let mut k = 0u64;
        let mut cur = self.clone();
        loop {
            match cur.divide_exact(g)? {
                Some(q) => {
                    cur = q;
                    k += 1;
                }
                None => return Ok(Some(k)),
            }
        }
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Polynomial, PolyError> {
        let i = self
            .vars
            .index_of(var)
            .ok_or_else(|| PolyError::UnknownVariable(var.to_string()))?;
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] = e - 1;
            terms.push((m2, c * Rational::from_integer(BigInt::from(e))));
        }
        Ok(Polynomial::from_terms(&self.vars, terms))
    }

    /// Ring-homomorphism image of `self` under `map`.
    pub fn substitute(&self, map: &SubstMap) -> Result<Polynomial, PolyError> {
        if map.source != self.vars {
            return Err(PolyError::MixedAmbients);
        }
        let target = &map.target;
        let mut acc = Polynomial::zero(target);
        for (m, c) in &self.terms {
            let mut term = Polynomial::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&map.images[i].pow(e as u32));
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Evaluates at the point with the listed variables set to zero.
    pub fn set_vars_to_zero(&self, zeroed: &[usize]) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            if zeroed.iter().all(|&i| m.0[i] == 0) {
                terms.push((m.clone(), c.clone()));
            }
        }
        Polynomial { vars: self.vars.clone(), terms }
    }

    /// If `self` is exactly `c * v` for a single variable `v`, returns its index.
    pub fn as_unit_variable(&self) -> Option<usize> {
        let (m, c) = self.as_single_term()?;
        if !c.is_one() || m.degree() != 1 {
            return None;
        }
        m.0.iter().position(|&e| e == 1)
    }

    /// Set of variable indices that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let n = self.vars.len();
        let mut seen = vec![false; n];
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    seen[i] = true;
                }
            }
        }
        (0..n).filter(|&i| seen[i]).collect()
    }
}

/// A substitution `source variable -> polynomial over the target ambient`.
#[derive(Clone, Debug)]
pub struct SubstMap {
    source: Vars,
    target: Vars,
    images: Vec<Polynomial>,
}

impl SubstMap {
    /// Every source variable must get an image and all images must share
    /// one target ambient.
    pub fn new(source: &Vars, images: Vec<(String, Polynomial)>) -> Result<Self, PolyError> {
        let mut slots: Vec<Option<Polynomial>> = vec![None; source.len()];
        let mut target: Option<Vars> = None;
        for (name, img) in images {
            let i = source
                .index_of(&name)
                .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
            match &target {
                None => target = Some(img.vars().clone()),
                Some(t) => {
                    if *t != *img.vars() {
                        return Err(PolyError::MixedAmbients);
                    }
                }
            }
            slots[i] = Some(img);
        }
        let target = target.ok_or_else(|| PolyError::MissingImage("<empty substitution>".into()))?;
        let mut imgs = Vec::with_capacity(source.len());
        for (i, slot) in slots.into_iter().enumerate() {
            match slot {
                Some(p) => imgs.push(p),
                None => return Err(PolyError::MissingImage(source.name(i).to_string())),
            }
        }
        Ok(SubstMap { source: source.clone(), target, images: imgs })
    }

    /// Identity on `vars`, then overridden on the listed variables. Images
    /// are over the same ambient.
    pub fn identity_except(
        vars: &Vars,
        overrides: Vec<(String, Polynomial)>,
    ) -> Result<Self, PolyError> {
        let mut images: Vec<(String, Polynomial)> = vars
            .names()
            .enumerate()
            .map(|(i, n)| (n.to_string(), Polynomial::variable(vars, i)))
            .collect();
        for (name, img) in overrides {
            let i = vars
                .index_of(&name)
                .ok_or_else(|| PolyError::UnknownVariable(name.clone()))?;
            if *img.vars() != *vars {
                return Err(PolyError::MixedAmbients);
            }
            images[i] = (name, img);
        }
        SubstMap::new(vars, images)
    }

    pub fn source(&self) -> &Vars {
        &self.source
    }

    pub fn target(&self) -> &Vars {
        &self.target
    }

    pub fn image(&self, i: usize) -> &Polynomial {
        &self.images[i]
    }

    /// Composition: apply `self`, then `next` (so `next ∘ self`).
    pub fn then(&self, next: &SubstMap) -> Result<SubstMap, PolyError> {
        if self.target != next.source {
            return Err(PolyError::MixedAmbients);
        }
        let images = self
            .source
            .names()
            .enumerate()
            .map(|(i, n)| Ok((n.to_string(), self.images[i].substitute(next)?)))
            .collect::<Result<Vec<_>, PolyError>>()?;
        SubstMap::new(&self.source, images)
    }
}

/// Wrapper ordering monomials ascending by grevlex for use as map keys.
#[derive(PartialEq, Eq, Clone)]
struct GrevlexKey(Monomial);

impl Ord for GrevlexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.grevlex_cmp(&other.0)
    }
}

impl PartialOrd for GrevlexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_coeff_mono(
    f: &mut fmt::Formatter<'_>,
    vars: &Vars,
    m: &Monomial,
    c_abs: &Rational,
) -> fmt::Result {
    let mut wrote = false;
    if !c_abs.is_one() || m.is_one() {
        write!(f, "{}", c_abs)?;
        wrote = true;
    }
    for (i, &e) in m.0.iter().enumerate() {
        if e == 0 {
            continue;
        }
        if wrote {
            write!(f, "*")?;
        }
        write!(f, "{}", vars.name(i))?;
        if e > 1 {
            write!(f, "^{}", e)?;
        }
        wrote = true;
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_coeff_mono(f, &self.vars, m, &c.abs())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
