//! The headline quantities of a verified resolution tree: the Łojasiewicz
//! exponent (max a_i/b_i over exceptional divisors), the integral-closure
//! order μ (min b_i/a_i), its reciprocal θ, integral-closure membership via
//! divisorial inequalities, and the degree of topological determinacy.

use crate::blowup::{DivisorId, OrdValue};
use crate::ideal::Ideal;
use crate::poly::{Polynomial, Rational};
use crate::resolve::ResolutionTree;
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum LojError {
    #[error("the resolution tree does not verify; run the verifier for details")]
    UnverifiedTree,
    #[error("divisor E{0} has b = 0; the companion ideal does not vanish along it")]
    ZeroB(usize),
    #[error("every divisor has a = 0: I pulls back to the unit ideal, the order is undefined")]
    AllAZero,
    #[error("μ is zero or undefined; θ has no value")]
    ZeroMu,
    #[error("negative input")]
    NegativeInput,
    #[error("exponents must be at least 1")]
    ZeroExponent,
    #[error("the tree was built for a different ideal")]
    WrongTree,
    #[error("ambient mismatch")]
    AmbientMismatch,
}

/// An extremal divisor ratio together with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LojResult {
    pub value: Rational,
    pub witness: DivisorId,
}

fn ratio(n: u64, d: u64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Łojasiewicz exponent of I at the origin: max over exceptional divisors
/// of a_i/b_i, for a verified tree whose companion is the maximal ideal.
/// Divisors with a = 0 contribute ratio 0 and never win.
pub fn loj_exponent(tree: &ResolutionTree) -> Result<LojResult, LojError> {
    if !tree.is_verified() {
        return Err(LojError::UnverifiedTree);
    }
    let mut best: Option<LojResult> = None;
    for row in tree.divisor_rows() {
        if row.b == 0 {
            return Err(LojError::ZeroB(row.id.0));
        }
        let r = ratio(row.a, row.b);
        let better = match &best {
            None => true,
            Some(cur) => r > cur.value,
        };
        if better {
            best = Some(LojResult { value: r, witness: row.id });
        }
    }
    best.ok_or(LojError::AllAZero)
}

/// μ_I(J) at the origin: min over divisors with a > 0 of b_i/a_i
/// (divisors with a = 0 contribute ∞).
pub fn mu(tree: &ResolutionTree) -> Result<Rational, LojError> {
    if !tree.is_verified() {
        return Err(LojError::UnverifiedTree);
    }
    let mut best: Option<Rational> = None;
    for row in tree.divisor_rows() {
        if row.a == 0 {
            continue;
        }
        let r = ratio(row.b, row.a);
        if best.as_ref().map(|b| r < *b).unwrap_or(true) {
            best = Some(r);
        }
    }
    best.ok_or(LojError::AllAZero)
}

/// θ at the origin: the reciprocal of μ.
pub fn theta(tree: &ResolutionTree) -> Result<Rational, LojError> {
    let m = mu(tree)?;
    if m.is_zero() {
        return Err(LojError::ZeroMu);
    }
    Ok(m.recip())
}

/// Whether f^q lies in the integral closure of I^p, decided through the
/// log-resolution: q·ord_E(f) ≥ p·a_E for every divisor E of the tree.
/// In debug builds the reduction to divisorial inequalities is re-checked
/// chartwise against the exceptional monomial ideal.
pub fn closure_member(
    f: &Polynomial,
    ideal: &Ideal,
    p: u32,
    q: u32,
    tree: &ResolutionTree,
) -> Result<bool, LojError> {
    if p == 0 || q == 0 {
        return Err(LojError::ZeroExponent);
    }
    if !tree.is_verified() {
        return Err(LojError::UnverifiedTree);
    }
    if !tree.ideal_i().same_ideal(ideal) {
        return Err(LojError::WrongTree);
    }
    if f.vars() != tree.vars() {
        return Err(LojError::AmbientMismatch);
    }
    if f.is_zero() {
        return Ok(true);
    }
    let mut seen: std::collections::BTreeSet<DivisorId> = Default::default();
    let mut verdict = true;
    'leaves: for leaf in tree.leaves() {
        let fp = f
            .substitute(leaf.pullback())
            .expect("pullback substitution is total");
        let f_ideal = Ideal::new(leaf.vars(), vec![fp.clone()]);
        for (&d, _) in leaf.divisors() {
            if seen.contains(&d) {
                continue;
            }
            seen.insert(d);
            let row = tree
                .divisor_rows()
                .iter()
                .find(|r| r.id == d)
                .expect("every visible divisor has a table row");
            let ord_f = match leaf.ord_along(d, &f_ideal) {
                Ok(OrdValue::Finite(v)) => v,
                Ok(OrdValue::Infinite) => continue,
                Err(_) => unreachable!("divisor is visible in this leaf"),
            };
            if (q as u128) * (ord_f as u128) < (p as u128) * (row.a as u128) {
                verdict = false;
                break 'leaves;
            }
        }
    }
    #[cfg(debug_assertions)]
    if verdict {
        debug_check_chartwise(f, p, q, tree);
    }
    Ok(verdict)
}

/// Chartwise belt-and-braces check: the pullback of f^q must lie in the
/// exceptional monomial ideal of I^p in every leaf chart.
#[cfg(debug_assertions)]
fn debug_check_chartwise(f: &Polynomial, p: u32, q: u32, tree: &ResolutionTree) {
    for leaf in tree.leaves() {
        let fq = f.pow(q).substitute(leaf.pullback()).expect("total substitution");
        if fq.is_zero() {
            continue;
        }
        let mut rem = fq;
        for (&d, &eq) in leaf.divisors() {
            let row = tree.divisor_rows().iter().find(|r| r.id == d).unwrap();
            let u = Polynomial::variable(leaf.vars(), eq);
            let need = (p as u64) * row.a;
            for _ in 0..need {
                match rem.divide_exact(&u) {
                    Ok(Some(qt)) => rem = qt,
                    _ => panic!(
                        "chartwise closure check failed in `{}`: divisor E{} demands u^{}",
                        leaf.id, d.0, need
                    ),
                }
            }
        }
    }
}

/// Teissier's degree of topological determinacy: ⌊L⌋ + 1.
pub fn determinacy_degree(l: &Rational) -> Result<u64, LojError> {
    if l.is_negative() {
        return Err(LojError::NegativeInput);
    }
    let fl = l.floor();
    let num = fl.numer();
    let v: u64 = num.try_into().map_err(|_| LojError::NegativeInput)?;
    Ok(v + 1)
}
