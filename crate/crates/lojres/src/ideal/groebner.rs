//! Buchberger's algorithm with the normal pair-selection strategy and both
//! Buchberger criteria, always producing the reduced basis (unique for a
//! fixed order), plus normal-form reduction against a basis.
//!
//! Internally polynomials are re-sorted by the active order and reductions
//! keep coefficients primitive over the integers to limit growth.

use super::order::MonomialOrder;
use crate::poly::{Monomial, Polynomial, Rational};
use crate::vars::Vars;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeSet;

/// Terms sorted strictly descending by the active order, integer
/// coefficients with content 1 and positive leading coefficient.
#[derive(Clone, Debug)]
struct GPoly {
    terms: Vec<(Monomial, BigInt)>,
}

impl GPoly {
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lt(&self) -> &(Monomial, BigInt) {
        &self.terms[0]
    }

    fn from_poly(p: &Polynomial, ord: &MonomialOrder) -> GPoly {
        // Clear denominators, then strip content.
        let mut denom_lcm = BigInt::one();
        for (_, c) in p.terms() {
            denom_lcm = denom_lcm.lcm(c.denom());
        }
        let mut terms: Vec<(Monomial, BigInt)> = p
            .terms()
            .map(|(m, c)| (m.clone(), c.numer() * (&denom_lcm / c.denom())))
            .collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let mut g = GPoly { terms };
        g.strip_content();
        g
    }

    fn to_poly_scaled(&self, vars: &Vars, scale: &Rational) -> Polynomial {
        Polynomial::from_terms(
            vars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::from_integer(c.clone()) * scale))
                .collect(),
        )
    }

    fn to_poly_monic(&self, vars: &Vars) -> Polynomial {
        let lead = if self.is_zero() { BigInt::one() } else { self.terms[0].1.clone() };
        Polynomial::from_terms(
            vars,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Rational::new(c.clone(), lead.clone())))
                .collect(),
        )
    }

    /// Divides out the integer content; returns the (signed) content so the
    /// caller can keep an exact global scale. The leading coefficient is
    /// made positive.
    fn strip_content(&mut self) -> BigInt {
        if self.is_zero() {
            return BigInt::one();
        }
        let mut content = BigInt::zero();
        for (_, c) in &self.terms {
            content = content.gcd(c);
            if content.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        if !content.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &content;
            }
        }
        content
    }
}

/// result := a*f - b*(m * g), merged in descending order. No normalization.
fn cross_sub(
    f_terms: &[(Monomial, BigInt)],
    a: &BigInt,
    g: &GPoly,
    b: &BigInt,
    m: &Monomial,
    ord: &MonomialOrder,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(f_terms.len() + g.terms.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < f_terms.len() && j < g.terms.len() {
        let gm = g.terms[j].0.mul(m);
        match ord.cmp(&f_terms[i].0, &gm) {
            Ordering::Greater => {
                out.push((f_terms[i].0.clone(), a * &f_terms[i].1));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, -(b * &g.terms[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let c = a * &f_terms[i].1 - b * &g.terms[j].1;
                if !c.is_zero() {
                    out.push((f_terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    while i < f_terms.len() {
        out.push((f_terms[i].0.clone(), a * &f_terms[i].1));
        i += 1;
    }
    while j < g.terms.len() {
        out.push((g.terms[j].0.mul(m), -(b * &g.terms[j].1)));
        j += 1;
    }
    out
}

/// Fully reduces `f` modulo `basis` (every term, not just the lead).
///
/// Returns the primitive remainder `r` and a positive rational `s` such that
/// the exact remainder of the input is `s * r`.
fn reduce_full(f: GPoly, basis: &[GPoly], ord: &MonomialOrder) -> (GPoly, Rational) {
    let mut work = f;
    let mut scale = Rational::one();
    let c0 = work.strip_content();
    if !c0.is_one() {
        scale *= Rational::from_integer(c0);
    }
    // Terms before `cursor` are known irreducible and strictly larger than
    // everything that later steps can produce.
    let mut cursor = 0usize;
    'outer: while cursor < work.terms.len() {
        let (fm, fc) = work.terms[cursor].clone();
        for g in basis {
            if g.is_zero() {
                continue;
            }
            let (gm, gc) = g.lt();
            if gm.divides(&fm) {
                let q = fm.div(gm).unwrap();
                let d = fc.gcd(gc);
                let a = gc / &d;
                let b = &fc / &d;
                let mut tail = cross_sub(&work.terms[cursor..], &a, g, &b, &q, ord);
                // Prefix is scaled by `a` to stay consistent with the tail.
                let mut terms: Vec<(Monomial, BigInt)> = work.terms[..cursor]
                    .iter()
                    .map(|(m, c)| (m.clone(), c * &a))
                    .collect();
                terms.append(&mut tail);
                work = GPoly { terms };
                scale /= Rational::from_integer(a);
                let c = work.strip_content();
                if !c.is_one() {
                    scale *= Rational::from_integer(c);
                }
                continue 'outer;
            }
        }
        cursor += 1;
    }
    (work, scale)
}

fn spoly(f: &GPoly, g: &GPoly, ord: &MonomialOrder) -> GPoly {
    let (fm, fc) = f.lt();
    let (gm, gc) = g.lt();
    let l = fm.lcm(gm);
    let mf = l.div(fm).unwrap();
    let mg = l.div(gm).unwrap();
    let d = fc.gcd(gc);
    let shifted: Vec<(Monomial, BigInt)> =
        f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    let mut r = GPoly { terms: cross_sub(&shifted, &(gc / &d), g, &(fc / &d), &mg, ord) };
    r.strip_content();
    r
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
pub fn groebner_basis(gens: &[Polynomial], vars: &Vars, ord: &MonomialOrder) -> Vec<Polynomial> {
    let mut basis: Vec<GPoly> = Vec::new();
    for p in gens {
        if p.is_zero() {
            continue;
        }
        let (g, _) = reduce_full(GPoly::from_poly(p, ord), &basis, ord);
        if !g.is_zero() {
            basis.push(g);
        }
    }
    if basis.is_empty() {
        return Vec::new();
    }

    let mut pending: BTreeSet<(u64, Vec<u16>, usize, usize)> = BTreeSet::new();
    let key = |basis: &[GPoly], i: usize, j: usize| -> (u64, Vec<u16>, usize, usize) {
        let l = basis[i].lt().0.lcm(&basis[j].lt().0);
        (l.degree(), l.0.to_vec(), i, j)
    };
    for i in 0..basis.len() {
        for j in (i + 1)..basis.len() {
            pending.insert(key(&basis, i, j));
        }
    }

    while let Some(k) = pending.iter().next().cloned() {
        pending.remove(&k);
        let (_, _, i, j) = k;
        let lcm_ij = basis[i].lt().0.lcm(&basis[j].lt().0);

        // First Buchberger criterion: coprime leading monomials.
        if basis[i].lt().0.is_coprime(&basis[j].lt().0) {
            continue;
        }
        // Chain criterion: some t with LT(t) | lcm(i,j) whose pairs with i
        // and j are both no longer pending.
        let mut skip = false;
        for (t, other) in basis.iter().enumerate() {
            if t == i || t == j {
                continue;
            }
            if other.lt().0.divides(&lcm_ij) {
                let still_pending = pending.contains(&key(&basis, t.min(i), t.max(i)))
                    || pending.contains(&key(&basis, t.min(j), t.max(j)));
                if !still_pending {
                    skip = true;
                    break;
                }
            }
        }
        if skip {
            continue;
        }

        let s = spoly(&basis[i], &basis[j], ord);
        let (r, _) = reduce_full(s, &basis, ord);
        if !r.is_zero() {
            basis.push(r);
            let n = basis.len() - 1;
            for t in 0..n {
                pending.insert(key(&basis, t, n));
            }
        }
    }

    // Minimalize: drop elements whose lead is divisible by another lead.
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            if basis[j].lt().0.divides(&basis[i].lt().0)
                && (basis[j].lt().0 != basis[i].lt().0 || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<GPoly> =
        basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(g, _)| g).collect();

    // Tail-reduce each element against the others, then sort and make monic.
    let mut reduced: Vec<GPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<GPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let (r, _) = reduce_full(minimal[i].clone(), &others, ord);
        debug_assert!(!r.is_zero());
        reduced.push(r);
    }
    reduced.sort_by(|a, b| ord.cmp(&a.lt().0, &b.lt().0));
    reduced.iter().map(|g| g.to_poly_monic(vars)).collect()
}

/// Exact normal form of `f` with respect to `basis`. Against a Gröbner basis
/// this is the unique remainder, so `f` is in the ideal iff it is zero.
pub fn normal_form(
    f: &Polynomial,
    basis: &[Polynomial],
    vars: &Vars,
    ord: &MonomialOrder,
) -> Polynomial {
    // Scale of the integer image of f relative to f itself.
    let mut denom_lcm = BigInt::one();
    for (_, c) in f.terms() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let gb: Vec<GPoly> =
        basis.iter().filter(|p| !p.is_zero()).map(|p| GPoly::from_poly(p, ord)).collect();
    let g0 = GPoly::from_poly(f, ord);
    // from_poly stripped (content/denom_lcm); recover the exact factor.
    let pre_scale = if f.is_zero() {
        Rational::one()
    } else {
        let raw: Vec<BigInt> =
            f.terms().map(|(_, c)| c.numer() * (&denom_lcm / c.denom())).collect();
        let mut content = BigInt::zero();
        for c in &raw {
            content = content.gcd(c);
        }
        let lead_sign_fix = {
            // from_poly made the (order-)leading coefficient positive
            let mut terms: Vec<(Monomial, BigInt)> =
                f.terms().map(|(m, c)| (m.clone(), c.numer() * (&denom_lcm / c.denom()))).collect();
            terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
            if terms[0].1.is_negative() {
                -BigInt::one()
            } else {
                BigInt::one()
            }
        };
        Rational::new(content * lead_sign_fix, denom_lcm)
    };
    let (r, s) = reduce_full(g0, &gb, ord);
    r.to_poly_scaled(vars, &(pre_scale * s))
}

/// Leading monomials of a basis under the order.
pub fn leading_monomials(basis: &[Polynomial], ord: &MonomialOrder) -> Vec<Monomial> {
    basis
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            p.terms()
                .max_by(|(a, _), (b, _)| ord.cmp(a, b))
                .map(|(m, _)| m.clone())
                .expect("nonzero polynomial has a leading term")
        })
        .collect()
}
