//! Ideal arithmetic via Gröbner bases: membership, powers, colength,
//! Samuel multiplicity, and the integer order functions ν_I.

mod groebner;
mod order;

pub use groebner::{leading_monomials, normal_form};
pub use order::{MonomialOrder, OrderKind};

use crate::poly::{Monomial, Polynomial, Rational};
use crate::vars::Vars;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::sync::{Arc, OnceLock};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("the order function is undefined for the unit ideal")]
    UnitIdeal,
    #[error("the ideal does not have finite colength")]
    InfiniteColength,
    #[error("budget must be at least 1")]
    ZeroBudget,
    #[error("the zero polynomial has infinite order")]
    ZeroPolynomial,
    #[error("ambient mismatch")]
    AmbientMismatch,
    #[error("the Hilbert–Samuel sequence did not stabilize within {0} steps")]
    NoStabilization(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Colength {
    Finite(u64),
    Infinite,
}

impl Colength {
    pub fn finite(self) -> Option<u64> {
        match self {
            Colength::Finite(v) => Some(v),
            Colength::Infinite => None,
        }
    }
}

/// ν_I(f) truncated at a cap: either the exact value, or the statement that
/// membership still holds at the cap, or ∞ (only for f = 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuValue {
    Exact(u32),
    AtLeast(u32),
    Infinite,
}

impl NuValue {
    /// Certified lower bound usable in inequalities.
    pub fn lower_bound(self) -> Option<u32> {
        match self {
            NuValue::Exact(v) => Some(v),
            NuValue::AtLeast(v) => Some(v),
            NuValue::Infinite => None,
        }
    }

    fn min(self, other: NuValue) -> NuValue {
        use NuValue::*;
        match (self, other) {
            (Infinite, x) | (x, Infinite) => x,
            (Exact(a), Exact(b)) => Exact(a.min(b)),
            (Exact(a), AtLeast(_)) | (AtLeast(_), Exact(a)) => Exact(a),
            (AtLeast(a), AtLeast(b)) => AtLeast(a.min(b)),
        }
    }
}

/// An ideal given by generators, with a lazily computed reduced Gröbner
/// basis cached for the first order that asks for it.
#[derive(Clone)]
pub struct Ideal {
    vars: Vars,
    generators: Vec<Polynomial>,
    cache: Arc<OnceLock<(MonomialOrder, Arc<Vec<Polynomial>>)>>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Ideal<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, ">")
    }
}

impl Ideal {
    pub fn new(vars: &Vars, generators: Vec<Polynomial>) -> Ideal {
        assert!(!generators.is_empty(), "an ideal needs at least one generator");
        for g in &generators {
            assert!(g.vars() == vars, "generator over a different ambient");
        }
        Ideal { vars: vars.clone(), generators, cache: Arc::new(OnceLock::new()) }
    }

    /// The maximal ideal of the origin, generated by all ambient variables.
    pub fn maximal_at_origin(vars: &Vars) -> Ideal {
        let gens = (0..vars.len()).map(|i| Polynomial::variable(vars, i)).collect();
        Ideal::new(vars, gens)
    }

    pub fn unit(vars: &Vars) -> Ideal {
        Ideal::new(vars, vec![Polynomial::one(vars)])
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn default_order(&self) -> MonomialOrder {
        MonomialOrder::grevlex(self.vars.len())
    }

    /// Reduced Gröbner basis for the given order (unique for that order).
    pub fn groebner_basis(&self, ord: &MonomialOrder) -> Arc<Vec<Polynomial>> {
        if let Some((cached_ord, basis)) = self.cache.get() {
            if cached_ord == ord {
                return basis.clone();
            }
            return Arc::new(groebner::groebner_basis(&self.generators, &self.vars, ord));
        }
        let basis = Arc::new(groebner::groebner_basis(&self.generators, &self.vars, ord));
        let _ = self.cache.set((ord.clone(), basis.clone()));
        // Another thread may have won the race; return the stored value.
        let (cached_ord, stored) = self.cache.get().expect("cache was just set");
        if cached_ord == ord {
            stored.clone()
        } else {
            basis
        }
    }

    fn default_basis(&self) -> Arc<Vec<Polynomial>> {
        self.groebner_basis(&self.default_order())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.default_basis().is_empty()
    }

    pub fn contains_one(&self) -> bool {
        let b = self.default_basis();
        b.len() == 1 && b[0].is_one()
    }

    /// Membership via normal form against the reduced basis.
    pub fn member(&self, f: &Polynomial) -> bool {
        if f.is_zero() {
            return true;
        }
        if f.vars() != &self.vars {
            return false;
        }
        let basis = self.default_basis();
        groebner::normal_form(f, &basis, &self.vars, &self.default_order()).is_zero()
    }

    /// Two ideals are equal iff each contains the other's generators.
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.vars == other.vars
            && other.generators.iter().all(|g| self.member(g))
            && self.generators.iter().all(|g| other.member(g))
    }

    /// I^m generated by all m-fold products of generators, deduplicated.
    /// `power(0)` is the unit ideal.
    pub fn power(&self, m: u32) -> Ideal {
        if m == 0 {
            return Ideal::unit(&self.vars);
        }
        if m == 1 {
            return self.clone();
        }
        let mut products: Vec<Polynomial> = vec![Polynomial::one(&self.vars)];
        for _ in 0..m {
            let mut next: Vec<Polynomial> = Vec::new();
            for p in &products {
                for g in &self.generators {
                    let q = p.mul(g);
                    if !next.contains(&q) {
                        next.push(q);
                    }
                }
            }
            products = next;
        }
        products.retain(|p| !p.is_zero());
        if products.is_empty() {
            products.push(Polynomial::zero(&self.vars));
        }
        Ideal::new(&self.vars, products)
    }

    /// Minimal pure-power exponent of each variable among the leading
    /// monomials, or None for a variable without one.
    fn pure_power_bounds(&self, lts: &[Monomial]) -> Vec<Option<u16>> {
        let n = self.vars.len();
        let mut bounds: Vec<Option<u16>> = vec![None; n];
        for m in lts {
            let support: Vec<usize> =
                (0..n).filter(|&i| m.0[i] > 0).collect();
            if m.is_one() {
                // unit ideal: everything collapses
                for b in &mut bounds {
                    *b = Some(0);
                }
            } else if support.len() == 1 {
                let i = support[0];
                let e = m.0[i];
                bounds[i] = Some(match bounds[i] {
                    Some(old) => old.min(e),
                    None => e,
                });
            }
        }
        bounds
    }

    /// Number of standard monomials (monomials outside the leading-term
    /// ideal); infinite iff some variable has no pure power among the
    /// leading terms.
    pub fn colength(&self) -> Colength {
        let basis = self.default_basis();
        if basis.is_empty() {
            return Colength::Infinite; // zero ideal in n >= 1 variables
        }
        let ord = self.default_order();
        let lts = groebner::leading_monomials(&basis, &ord);
        let bounds = self.pure_power_bounds(&lts);
        let Some(limits) = bounds.into_iter().collect::<Option<Vec<u16>>>() else {
            return Colength::Infinite;
        };
        if self.vars.is_empty() {
            return Colength::Finite(if lts.is_empty() { 1 } else { 0 });
        }
        // Walk the box below the pure-power staircase and count monomials
        // not divisible by any leading term.
        let n = self.vars.len();
        let mut count: u64 = 0;
        let mut exps: Vec<u16> = vec![0; n];
        'walk: loop {
            let mono = Monomial::from_exponents(&exps);
            if !lts.iter().any(|lt| lt.divides(&mono)) {
                count += 1;
            }
            for i in 0..n {
                if exps[i] + 1 < limits[i] {
                    exps[i] += 1;
                    continue 'walk;
                }
                exps[i] = 0;
            }
            break;
        }
        Colength::Finite(count)
    }

    /// ν_I(f) = sup{m : f ∈ I^m}, truncated at `cap`.
    pub fn nu(&self, f: &Polynomial, cap: u32) -> Result<NuValue, IdealError> {
        if self.contains_one() {
            return Err(IdealError::UnitIdeal);
        }
        if f.is_zero() {
            return Ok(NuValue::Infinite);
        }
        for m in 1..=cap {
            if !self.power(m).member(f) {
                return Ok(NuValue::Exact(m - 1));
            }
        }
        Ok(NuValue::AtLeast(cap))
    }

    /// ν_I(J) = min over generators of J of ν_I.
    pub fn nu_ideal(&self, j: &Ideal, cap: u32) -> Result<NuValue, IdealError> {
        if self.contains_one() {
            return Err(IdealError::UnitIdeal);
        }
        if j.vars != self.vars {
            return Err(IdealError::AmbientMismatch);
        }
        let mut acc = NuValue::Infinite;
        for g in &j.generators {
            let v = self.nu(g, cap)?;
            acc = acc.min(v);
            if acc == NuValue::Exact(0) {
                break;
            }
        }
        Ok(acc)
    }

    /// Exact ν_I(f), looping until membership fails (no cap). Only for
    /// nonzero f and proper I, where the value is finite.
    fn nu_exact(&self, f: &Polynomial, powers: &mut Vec<Ideal>) -> u64 {
        let mut m: usize = 1;
        loop {
            while powers.len() < m {
                let next = powers.len() as u32 + 1;
                powers.push(self.power(next));
            }
            if !powers[m - 1].member(f) {
                return (m - 1) as u64;
            }
            m += 1;
            assert!(m < 100_000, "nu did not terminate");
        }
    }

    /// Certified lower bound for the reduced order ν̄_I(f): the maximum of
    /// ν_I(f^n)/n over all n ≤ 2^budget. The doubling subsequence makes the
    /// bound nondecreasing in the budget.
    pub fn nubar_lower(&self, f: &Polynomial, budget: u32) -> Result<Rational, IdealError> {
        Ok(self.nubar_lower_trace(f, budget)?.0)
    }

    /// As `nubar_lower`, also returning the trace rows (n, ν_I(f^n), ratio).
    pub fn nubar_lower_trace(
        &self,
        f: &Polynomial,
        budget: u32,
    ) -> Result<(Rational, Vec<(u64, u64, Rational)>), IdealError> {
        if budget == 0 {
            return Err(IdealError::ZeroBudget);
        }
        if self.contains_one() {
            return Err(IdealError::UnitIdeal);
        }
        if f.is_zero() {
            return Err(IdealError::ZeroPolynomial);
        }
        let budget = budget.min(16);
        let n_max: u64 = 1u64 << budget;
        let mut powers: Vec<Ideal> = Vec::new();
        let mut best = Rational::zero();
        let mut trace = Vec::new();
        let mut fp = Polynomial::one(f.vars());
        for n in 1..=n_max {
            fp = fp.mul(f);
            let nu_n = self.nu_exact(&fp, &mut powers);
            let ratio = Rational::new(BigInt::from(nu_n), BigInt::from(n));
            if ratio > best {
                best = ratio.clone();
            }
            if n.is_power_of_two() {
                trace.push((n, nu_n, ratio));
            }
        }
        Ok((best, trace))
    }

    /// Samuel multiplicity e(I): the stable n-th finite difference of the
    /// Hilbert–Samuel function m ↦ colength(I^m), required constant over
    /// n+1 consecutive steps starting from m = 1.
    pub fn samuel_multiplicity(&self) -> Result<u64, IdealError> {
        let n = self.vars.len();
        let Colength::Finite(_) = self.colength() else {
            return Err(IdealError::InfiniteColength);
        };
        const MAX_M: u32 = 40;
        let mut h: Vec<i128> = Vec::new(); // h[k] = colength(I^(k+1))
        for m in 1..=MAX_M {
            match self.power(m).colength() {
                Colength::Finite(v) => h.push(v as i128),
                Colength::Infinite => return Err(IdealError::InfiniteColength),
            }
            if h.len() >= 2 * n + 1 {
                // n-th differences d[k] computable for k = 0..h.len()-n-1
                let mut d = h.clone();
                for _ in 0..n {
                    d = d.windows(2).map(|w| w[1] - w[0]).collect();
                }
                let window = &d[d.len() - (n + 1)..];
                if window.iter().all(|&v| v == window[0]) && window[0] >= 0 {
                    return Ok(window[0] as u64);
                }
            }
        }
        Err(IdealError::NoStabilization(MAX_M))
    }

    /// Colength of the localization at the origin: the stable value of
    /// colength(I + m₀^N). Stabilization for one step already certifies
    /// the local value (Nakayama); `Infinite` when the origin lies on a
    /// positive-dimensional component.
    pub fn local_colength_at_origin(&self) -> Colength {
        if !self.origin_is_isolated_or_absent() {
            return Colength::Infinite;
        }
        let mut prev: Option<u64> = None;
        for n in 1u32.. {
            let mut gens = self.generators.to_vec();
            gens.extend(monomials_of_degree(&self.vars, n));
            let c = Ideal::new(&self.vars, gens)
                .colength()
                .finite()
                .expect("ideal containing a power of the maximal ideal");
            if prev == Some(c) {
                return Colength::Finite(c);
            }
            prev = Some(c);
        }
        unreachable!("an isolated origin stabilizes the local Hilbert function")
    }

    /// Whether the origin is an isolated point of the zero set (or not in
    /// it at all): the saturation I : m₀^∞ removes the component at the
    /// origin, so the origin is non-isolated iff the saturation still
    /// vanishes there.
    fn origin_is_isolated_or_absent(&self) -> bool {
        let sat = self.saturate_at_origin();
        sat.generators.iter().any(|g| !g.constant_term().is_zero())
            || sat.contains_one()
    }

    /// I : m₀^∞, by iterating the colon with the maximal ideal.
    pub fn saturate_at_origin(&self) -> Ideal {
        let mut current = self.clone();
        loop {
            let mut next: Option<Ideal> = None;
            for i in 0..self.vars.len() {
                let q = current.quotient_by(&Polynomial::variable(&self.vars, i));
                next = Some(match next {
                    None => q,
                    Some(acc) => ideal_intersection(&acc, &q),
                });
            }
            let next = next.expect("at least one variable");
            if next.same_ideal(&current) {
                return current;
            }
            current = next;
        }
    }

    /// The ideal quotient I : ⟨g⟩ = (I ∩ ⟨g⟩)/g.
    pub fn quotient_by(&self, g: &Polynomial) -> Ideal {
        assert!(!g.is_zero());
        let inter = ideal_intersection(self, &Ideal::new(&self.vars, vec![g.clone()]));
        let gens: Vec<Polynomial> = inter
            .generators
            .iter()
            .map(|h| {
                h.divide_exact(g)
                    .expect("nonzero divisor")
                    .expect("elements of I ∩ ⟨g⟩ are multiples of g")
            })
            .collect();
        Ideal::new(&self.vars, gens)
    }

    /// Lifts this ideal to a larger ambient containing the same variable names.
    pub fn lift_to(&self, target: &Vars) -> Ideal {
        let map = crate::poly::SubstMap::new(
            &self.vars,
            self.vars
                .names()
                .map(|n| {
                    let i = target.index_of(n).expect("target ambient misses a variable");
                    (n.to_string(), Polynomial::variable(target, i))
                })
                .collect(),
        )
        .expect("lift substitution is well-formed");
        Ideal::new(
            target,
            self.generators.iter().map(|g| g.substitute(&map).unwrap()).collect(),
        )
    }
}

/// All monomials of total degree exactly `n` (the generators of m₀^n).
pub fn monomials_of_degree(vars: &Vars, n: u32) -> Vec<Polynomial> {
    let k = vars.len();
    let mut out = Vec::new();
    let mut exps = vec![0u16; k];
    fn rec(i: usize, left: u32, exps: &mut Vec<u16>, vars: &Vars, out: &mut Vec<Polynomial>) {
        if i + 1 == exps.len() {
            exps[i] = left as u16;
            out.push(Polynomial::monomial(
                vars,
                Monomial::from_exponents(exps),
                Rational::one(),
            ));
            return;
        }
        for e in 0..=left {
            exps[i] = e as u16;
            rec(i + 1, left - e, exps, vars, out);
        }
    }
    rec(0, n, &mut exps, vars, &mut out);
    out
}

/// I ∩ J, by eliminating t from t·I + (1-t)·J.
pub fn ideal_intersection(a: &Ideal, b: &Ideal) -> Ideal {
    assert!(a.vars() == b.vars());
    let vars = a.vars();
    let mut names: Vec<String> = vec![String::from("_t")];
    while vars.names().any(|n| n == names[0]) {
        names[0].push('_');
    }
    names.extend(vars.names().map(|s| s.to_string()));
    let ext = Vars::new(&names);
    let t = Polynomial::variable(&ext, 0);
    let one_minus_t = Polynomial::one(&ext).sub(&t);
    let lift = |p: &Polynomial| -> Polynomial {
        let map = crate::poly::SubstMap::new(
            vars,
            vars.names()
                .map(|n| {
                    let i = ext.index_of(n).unwrap();
                    (n.to_string(), Polynomial::variable(&ext, i))
                })
                .collect(),
        )
        .unwrap();
        p.substitute(&map).unwrap()
    };
    let mut gens: Vec<Polynomial> = a.generators().iter().map(|g| t.mul(&lift(g))).collect();
    gens.extend(b.generators().iter().map(|g| one_minus_t.mul(&lift(g))));
    let ext_ideal = Ideal::new(&ext, gens);
    // Lex order with t first eliminates t.
    let ord = MonomialOrder::lex(ext.len());
    let basis = ext_ideal.groebner_basis(&ord);
    let drop_t = |p: &Polynomial| -> Option<Polynomial> {
        if p.support_vars().contains(&0) {
            return None;
        }
        let map = crate::poly::SubstMap::new(
            &ext,
            ext.names()
                .enumerate()
                .map(|(i, n)| {
                    let img = match vars.index_of(n) {
                        Some(j) => Polynomial::variable(vars, j),
                        None => Polynomial::zero(vars), // t never occurs
                    };
                    let _ = i;
                    (n.to_string(), img)
                })
                .collect(),
        )
        .unwrap();
        Some(p.substitute(&map).unwrap())
    };
    let mut out: Vec<Polynomial> = basis.iter().filter_map(drop_t).collect();
    if out.is_empty() {
        out.push(Polynomial::zero(vars));
    }
    Ideal::new(vars, out)
}

/// Radical membership test: f ∈ √I iff 1 ∈ I + ⟨1 - t·f⟩ in an extended ring.
pub fn radical_member(f: &Polynomial, ideal: &Ideal) -> bool {
    if f.is_zero() {
        return true;
    }
    let vars = ideal.vars();
    let mut names: Vec<String> = vars.names().map(|s| s.to_string()).collect();
    let mut t_name = String::from("_t");
    while names.contains(&t_name) {
        t_name.push('_');
    }
    names.push(t_name);
    let ext = Vars::new(&names);
    let lifted = ideal.lift_to(&ext);
    let f_l = Ideal::new(vars, vec![f.clone()]).lift_to(&ext).generators()[0].clone();
    let t = Polynomial::variable(&ext, ext.len() - 1);
    let one = Polynomial::one(&ext);
    let witness = one.sub(&t.mul(&f_l));
    let mut gens = lifted.generators().to_vec();
    gens.push(witness);
    Ideal::new(&ext, gens).contains_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn xy() -> Vars {
        Vars::new(&["x", "y"])
    }

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &xy()).unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        let v = xy();
        Ideal::new(&v, gens.iter().map(|s| parse_poly(s, &v).unwrap()).collect())
    }

    #[test]
    fn member_basics() {
        let i = ideal(&["x"]);
        assert!(i.member(&p("x^2 + x*y")));
        assert!(!i.member(&p("y")));
    }

    #[test]
    fn member_in_powers() {
        // I = <x^2, y^3>: I^2 = <x^4, x^2 y^3, y^6>, I^3 = <x^6, x^4 y^3, x^2 y^6, y^9>
        let i = ideal(&["x^2", "y^3"]);
        let f = p("x^2*y^3");
        assert!(i.power(2).member(&f));
        assert!(!i.power(3).member(&f));
    }

    #[test]
    fn power_products() {
        let i = ideal(&["x", "y"]);
        let sq = i.power(2);
        let expect = ideal(&["x^2", "x*y", "y^2"]);
        assert!(sq.same_ideal(&expect));
        assert!(i.power(1).same_ideal(&i));
        let j = ideal(&["x^2", "y^3"]);
        assert!(j.power(2).same_ideal(&ideal(&["x^4", "x^2*y^3", "y^6"])));
        assert!(i.power(0).contains_one());
    }

    #[test]
    fn colength_cases() {
        assert_eq!(ideal(&["x", "y"]).colength(), Colength::Finite(1));
        assert_eq!(ideal(&["x"]).colength(), Colength::Infinite);
        // standard monomials of <x^2, y^3>: {1, x, y, xy, y^2, xy^2}
        assert_eq!(ideal(&["x^2", "y^3"]).colength(), Colength::Finite(6));
    }

    #[test]
    fn colength_of_maximal_powers() {
        let m = ideal(&["x", "y"]);
        for k in 1..=8u32 {
            let expect = (k as u64) * (k as u64 + 1) / 2;
            assert_eq!(m.power(k).colength(), Colength::Finite(expect), "m^{k}");
        }
    }

    #[test]
    fn nu_cases() {
        let m = ideal(&["x", "y"]);
        assert_eq!(m.nu(&p("x^2 + y^3"), 10).unwrap(), NuValue::Exact(2));
        assert_eq!(m.nu(&p("0"), 10).unwrap(), NuValue::Infinite);
        let i = ideal(&["x^2", "y^3"]);
        assert_eq!(i.nu(&p("x^2*y^3"), 10).unwrap(), NuValue::Exact(2));
        assert_eq!(Ideal::unit(&xy()).nu(&p("x"), 4).unwrap_err(), IdealError::UnitIdeal);
        assert_eq!(m.nu(&p("x"), 1).unwrap(), NuValue::AtLeast(1));
    }

    #[test]
    fn nu_ideal_cases() {
        let m = ideal(&["x", "y"]);
        let j = ideal(&["x^2", "y^3"]);
        assert_eq!(m.nu_ideal(&j, 10).unwrap(), NuValue::Exact(2));
        assert_eq!(m.nu_ideal(&m, 10).unwrap(), NuValue::Exact(1));
        assert_eq!(m.nu_ideal(&Ideal::unit(&xy()), 10).unwrap(), NuValue::Exact(0));
    }

    #[test]
    fn nubar_lower_reaches_five_sixths() {
        // f = xy over I = <x^2, y^3>: sup ν(f^n)/n = 5/6, attained at n = 6.
        let i = ideal(&["x^2", "y^3"]);
        let f = p("x*y");
        let v = i.nubar_lower(&f, 3).unwrap();
        assert_eq!(v, Rational::new(BigInt::from(5), BigInt::from(6)));
        // nondecreasing in budget
        let v4 = i.nubar_lower(&f, 4).unwrap();
        assert!(v4 >= v);
    }

    #[test]
    fn nubar_lower_simple_cases() {
        let i = ideal(&["x"]);
        assert_eq!(i.nubar_lower(&p("x"), 2).unwrap(), Rational::one());
        let m = ideal(&["x", "y"]);
        assert!(m.nubar_lower(&p("x^2 + x*y"), 1).unwrap() >= Rational::one());
        assert_eq!(m.nubar_lower(&p("x"), 0).unwrap_err(), IdealError::ZeroBudget);
        assert_eq!(m.nubar_lower(&p("0"), 2).unwrap_err(), IdealError::ZeroPolynomial);
    }

    #[test]
    fn samuel_multiplicity_cases() {
        assert_eq!(ideal(&["x", "y"]).samuel_multiplicity().unwrap(), 1);
        assert_eq!(ideal(&["x^2", "y^3"]).samuel_multiplicity().unwrap(), 6);
        assert_eq!(
            ideal(&["x"]).samuel_multiplicity().unwrap_err(),
            IdealError::InfiniteColength
        );
    }

    #[test]
    fn radical_membership() {
        let i = ideal(&["x^2", "x*y^3"]);
        assert!(radical_member(&p("x"), &i));
        assert!(!radical_member(&p("y"), &i));
        let j = ideal(&["x^2 + y^2"]);
        assert!(radical_member(&p("x^2 + y^2"), &j));
        assert!(!radical_member(&p("x"), &j));
    }

    #[test]
    fn cache_returns_same_basis(){
        let i = ideal(&["x^2 + y", "x*y"]);
        let o = i.default_order();
        let b1 = i.groebner_basis(&o);
        let b2 = i.groebner_basis(&o);
        assert!(Arc::ptr_eq(&b1, &b2));
        // a different order bypasses the cache but still works
        let lex = MonomialOrder::lex(2);
        let bl = i.groebner_basis(&lex);
        assert!(!bl.is_empty());
    }
}
