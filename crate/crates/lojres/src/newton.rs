//! Newton-polyhedron oracles (ambient dimension at most 3): integral
//! closure of monomial ideals, monomial Łojasiewicz exponents via axis
//! intercepts, the Kouchnirenko Newton number through exact rational
//! volumes, and the Milnor number as a Jacobian colength.

use crate::ideal::{Colength, Ideal};
use crate::poly::{Monomial, Polynomial, Rational};
use crate::vars::Vars;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum NewtonError {
    #[error("ambient dimension {0} is not supported (at most 3)")]
    DimensionTooLarge(usize),
    #[error("empty exponent set")]
    Empty,
    #[error("generator `{0}` is not a monomial")]
    NonMonomialGenerator(String),
    #[error("the ideal does not have finite colength")]
    InfiniteColength,
    #[error("the polynomial is not convenient: no pure power of `{0}`")]
    NotConvenient(String),
    #[error("the polynomial does not vanish at the origin")]
    NonzeroConstantTerm,
}

/// conv(points) + the nonnegative orthant, in vertex/inequality double
/// description. Inequalities are `normal · x >= rhs` with integer normals
/// having nonnegative entries; the list always cuts out the polyhedron
/// exactly (it contains every facet, possibly with redundant members).
#[derive(Debug, Clone)]
pub struct NewtonPolyhedron {
    dim: usize,
    /// Componentwise-minimal generating exponents.
    points: Vec<Vec<u16>>,
    facets: Vec<(Vec<BigInt>, BigInt)>,
}

fn dot(w: &[BigInt], p: &[u16]) -> BigInt {
    w.iter().zip(p.iter()).map(|(a, &b)| a * BigInt::from(b)).sum()
}

fn cross(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Divides by the gcd and orients nonnegative; None for zero or
/// mixed-sign vectors (which cannot support a Newton polyhedron facet).
fn normalize_normal(mut w: Vec<BigInt>) -> Option<Vec<BigInt>> {
    if w.iter().all(|c| c.is_zero()) {
        return None;
    }
    if w.iter().all(|c| !c.is_positive()) {
        for c in &mut w {
            *c = -c.clone();
        }
    }
    if w.iter().any(|c| c.is_negative()) {
        return None;
    }
    let mut g = BigInt::zero();
    for c in &w {
        g = g.gcd(c);
    }
    for c in &mut w {
        *c /= &g;
    }
    Some(w)
}

impl NewtonPolyhedron {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn points(&self) -> &[Vec<u16>] {
        &self.points
    }

    pub fn facets(&self) -> &[(Vec<BigInt>, BigInt)] {
        &self.facets
    }

    /// Whether the rational point lies in the polyhedron.
    pub fn contains(&self, point: &[Rational]) -> bool {
        assert_eq!(point.len(), self.dim);
        if point.iter().any(|c| c.is_negative()) {
            return false;
        }
        self.facets.iter().all(|(w, c)| {
            let lhs: Rational = w
                .iter()
                .zip(point.iter())
                .map(|(a, b)| Rational::from_integer(a.clone()) * b)
                .sum();
            lhs >= Rational::from_integer(c.clone())
        })
    }

    /// Whether the lattice point lies in `scale` times the polyhedron.
    pub fn contains_scaled_lattice(&self, point: &[u16], scale: u32) -> bool {
        assert_eq!(point.len(), self.dim);
        self.facets
            .iter()
            .all(|(w, c)| dot(w, point) >= c * BigInt::from(scale))
    }

    /// The j-axis intercept: the smallest t with t·e_j on the boundary.
    /// None when the polyhedron misses the axis (infinite intercept).
    pub fn axis_intercept(&self, j: usize) -> Option<Rational> {
        let mut best: Option<Rational> = None;
        for (w, c) in &self.facets {
            if w[j].is_zero() {
                if c.is_positive() {
                    return None;
                }
                continue;
            }
            let t = Rational::new(c.clone(), w[j].clone());
            if best.as_ref().map(|b| t > *b).unwrap_or(true) {
                best = Some(t);
            }
        }
        best
    }
}

/// Builds conv(exponents) + ℝ^n_+ for n ≤ 3 as an exact double description.
pub fn newton_polyhedron(exponents: &[Vec<u16>]) -> Result<NewtonPolyhedron, NewtonError> {
    if exponents.is_empty() {
        return Err(NewtonError::Empty);
    }
    let dim = exponents[0].len();
    if dim > 3 {
        return Err(NewtonError::DimensionTooLarge(dim));
    }
    assert!(exponents.iter().all(|p| p.len() == dim));

    // Componentwise-minimal points generate the same polyhedron.
    let mut points: Vec<Vec<u16>> = Vec::new();
    for p in exponents {
        if exponents
            .iter()
            .any(|q| q != p && q.iter().zip(p.iter()).all(|(a, b)| a <= b))
        {
            // strictly dominated by q (q <= p componentwise, q != p)
            let dominated = exponents
                .iter()
                .any(|q| q != p && q.iter().zip(p.iter()).all(|(a, b)| a <= b));
            if dominated {
                continue;
            }
        }
        if !points.contains(p) {
            points.push(p.clone());
        }
    }
    points.sort();

    let mut candidates: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for i in 0..dim {
        let mut e = vec![BigInt::zero(); dim];
        e[i] = BigInt::one();
        candidates.insert(e);
    }
    match dim {
        1 => {}
        2 => {
            for p in &points {
                for q in &points {
                    if p == q {
                        continue;
                    }
                    let d = [
                        BigInt::from(p[0]) - BigInt::from(q[0]),
                        BigInt::from(p[1]) - BigInt::from(q[1]),
                    ];
                    if let Some(w) = normalize_normal(vec![d[1].clone(), -d[0].clone()]) {
                        candidates.insert(w);
                    }
                }
            }
        }
        3 => {
            let as_vec3 = |p: &Vec<u16>, q: &Vec<u16>| -> [BigInt; 3] {
                [
                    BigInt::from(p[0]) - BigInt::from(q[0]),
                    BigInt::from(p[1]) - BigInt::from(q[1]),
                    BigInt::from(p[2]) - BigInt::from(q[2]),
                ]
            };
            let units: [[BigInt; 3]; 3] = [
                [BigInt::one(), BigInt::zero(), BigInt::zero()],
                [BigInt::zero(), BigInt::one(), BigInt::zero()],
                [BigInt::zero(), BigInt::zero(), BigInt::one()],
            ];
            for (i, p) in points.iter().enumerate() {
                for q in points.iter().skip(i + 1) {
                    let d = as_vec3(p, q);
                    for e in &units {
                        if let Some(w) = normalize_normal(cross(&d, e).to_vec()) {
                            candidates.insert(w);
                        }
                    }
                    for r in &points {
                        if r == p || r == q {
                            continue;
                        }
                        let d2 = as_vec3(r, q);
                        if let Some(w) = normalize_normal(cross(&d, &d2).to_vec()) {
                            candidates.insert(w);
                        }
                    }
                }
            }
        }
        _ => unreachable!(),
    }

    let mut facets: Vec<(Vec<BigInt>, BigInt)> = Vec::new();
    for w in candidates {
        let c = points.iter().map(|p| dot(&w, p)).min().expect("nonempty");
        facets.push((w, c));
    }
    Ok(NewtonPolyhedron { dim, points, facets })
}

/// Łojasiewicz exponent of a monomial ideal of finite colength: the
/// largest axis intercept of its Newton polyhedron.
pub fn monomial_loj(ideal: &Ideal) -> Result<Rational, NewtonError> {
    let n = ideal.vars().len();
    let mut exps: Vec<Vec<u16>> = Vec::new();
    for g in ideal.generators() {
        let Some((m, _)) = g.as_single_term() else {
            return Err(NewtonError::NonMonomialGenerator(format!("{}", g)));
        };
        exps.push(m.0.to_vec());
    }
    // finite colength of a monomial ideal: a pure power on every axis
    for i in 0..n {
        let has = exps
            .iter()
            .any(|e| e[i] > 0 && e.iter().enumerate().all(|(j, &v)| j == i || v == 0));
        if !has {
            return Err(NewtonError::InfiniteColength);
        }
    }
    let np = newton_polyhedron(&exps)?;
    let mut best = Rational::zero();
    for j in 0..n {
        let t = np.axis_intercept(j).ok_or(NewtonError::InfiniteColength)?;
        if t > best {
            best = t;
        }
    }
    Ok(best)
}

fn half_plane_index(a: &Rational, b: &Rational) -> u8 {
    // 0 for the upper half (b > 0, or b = 0 and a > 0), 1 for the lower
    if b.is_positive() || (b.is_zero() && a.is_positive()) {
        0
    } else {
        1
    }
}

/// Volume of the region of ℝ^k_+ under the Newton diagram, by summing the
/// cones from the origin over the compact (strictly positive normal)
/// boundary pieces. Supporting sets of dimension < k-1 contribute zero.
fn under_volume(points: &[Vec<u16>], dim: usize) -> Rational {
    let np = newton_polyhedron(points).expect("dimension was checked");
    let mut total = Rational::zero();
    for (w, c) in np.facets() {
        if w.iter().any(|x| !x.is_positive()) {
            continue; // non-compact direction
        }
        let eq: Vec<&Vec<u16>> = np.points().iter().filter(|p| &dot(w, p) == c).collect();
        match dim {
            1 => {
                // single point d: segment [0, d]
                total += Rational::from_integer(BigInt::from(eq[0][0]));
            }
            2 => {
                // cone over a segment: sort along the segment, sum triangles
                let mut pts: Vec<&Vec<u16>> = eq.clone();
                pts.sort_by_key(|p| (p[0], p[1]));
                for pair in pts.windows(2) {
                    let d = BigInt::from(pair[0][0]) * BigInt::from(pair[1][1])
                        - BigInt::from(pair[0][1]) * BigInt::from(pair[1][0]);
                    total += Rational::new(d.abs(), BigInt::from(2));
                }
            }
            3 => {
                if eq.len() < 3 {
                    continue;
                }
                // order the polygon vertices around the centroid, fan out
                let k = Rational::from_integer(BigInt::from(eq.len() as u64));
                let centroid: Vec<Rational> = (0..3)
                    .map(|i| {
                        let s: BigInt = eq.iter().map(|p| BigInt::from(p[i])).sum();
                        Rational::from_integer(s) / &k
                    })
                    .collect();
                let to_rat = |p: &Vec<u16>| -> Vec<Rational> {
                    p.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect()
                };
                let sub = |p: &[Rational], q: &[Rational]| -> Vec<Rational> {
                    p.iter().zip(q.iter()).map(|(a, b)| a - b).collect()
                };
                let u = sub(&to_rat(eq[0]), &centroid);
                let wr: Vec<Rational> =
                    w.iter().map(|x| Rational::from_integer(x.clone())).collect();
                let v = vec![
                    &wr[1] * &u[2] - &wr[2] * &u[1],
                    &wr[2] * &u[0] - &wr[0] * &u[2],
                    &wr[0] * &u[1] - &wr[1] * &u[0],
                ];
                let plane_coords: Vec<(Rational, Rational, &Vec<u16>)> = eq
                    .iter()
                    .map(|p| {
                        let d = sub(&to_rat(p), &centroid);
                        let a: Rational = d.iter().zip(u.iter()).map(|(x, y)| x * y).sum();
                        let b: Rational = d.iter().zip(v.iter()).map(|(x, y)| x * y).sum();
                        (a, b, *p)
                    })
                    .collect();
                let mut ordered = plane_coords;
                ordered.sort_by(|p, q| {
                    let hp = half_plane_index(&p.0, &p.1);
                    let hq = half_plane_index(&q.0, &q.1);
                    hp.cmp(&hq).then_with(|| {
                        let cross = &q.0 * &p.1 - &p.0 * &q.1;
                        // p before q when cross(p, q) > 0
                        (-cross).cmp(&Rational::zero())
                    })
                });
                let det3 = |p: &[u16], q: &[u16], r: &[u16]| -> BigInt {
                    let m: Vec<BigInt> = p
                        .iter()
                        .chain(q.iter())
                        .chain(r.iter())
                        .map(|&x| BigInt::from(x))
                        .collect();
                    &m[0] * (&m[4] * &m[8] - &m[5] * &m[7])
                        - &m[1] * (&m[3] * &m[8] - &m[5] * &m[6])
                        + &m[2] * (&m[3] * &m[7] - &m[4] * &m[6])
                };
                for i in 1..ordered.len() - 1 {
                    let d = det3(ordered[0].2, ordered[i].2, ordered[i + 1].2);
                    total += Rational::new(d.abs(), BigInt::from(6));
                }
            }
            _ => unreachable!(),
        }
    }
    total
}

/// Kouchnirenko's Newton number of a convenient polynomial in n ≤ 3
/// variables: n!V_n - (n-1)!V_{n-1} + ... + (-1)^n, where V_k sums the
/// exact under-diagram volumes over the k-dimensional coordinate
/// subspaces.
pub fn newton_number(f: &Polynomial) -> Result<BigInt, NewtonError> {
    let n = f.vars().len();
    if n > 3 {
        return Err(NewtonError::DimensionTooLarge(n));
    }
    if !f.constant_term().is_zero() {
        return Err(NewtonError::NonzeroConstantTerm);
    }
    let support: Vec<Vec<u16>> = f.terms().map(|(m, _)| m.0.to_vec()).collect();
    for i in 0..n {
        let has = support
            .iter()
            .any(|e| e[i] > 0 && e.iter().enumerate().all(|(j, &v)| j == i || v == 0));
        if !has {
            return Err(NewtonError::NotConvenient(f.vars().name(i).to_string()));
        }
    }

    let mut acc = Rational::zero();
    let mut factorial = vec![BigInt::one(); n + 1];
    for k in 1..=n {
        factorial[k] = &factorial[k - 1] * BigInt::from(k as u64);
    }
    for mask in 1u32..(1 << n) {
        let subset: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let k = subset.len();
        let restricted: Vec<Vec<u16>> = support
            .iter()
            .filter(|e| e.iter().enumerate().all(|(j, &v)| v == 0 || subset.contains(&j)))
            .map(|e| subset.iter().map(|&j| e[j]).collect())
            .collect();
        debug_assert!(!restricted.is_empty(), "convenience provides axis points");
        let vol = under_volume(&restricted, k);
        let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
        acc += vol * Rational::from_integer(&factorial[k] * BigInt::from(sign));
    }
    let sign0 = if n % 2 == 0 { 1 } else { -1 };
    acc += Rational::from_integer(BigInt::from(sign0));
    assert!(acc.denom().is_one(), "the alternating volume sum is an integer");
    Ok(acc.numer().clone())
}

/// Milnor number: colength of the Jacobian ideal in the local ring at the
/// origin (critical points away from the origin do not count); infinite
/// for a non-isolated singularity.
pub fn milnor_number(f: &Polynomial) -> Result<Colength, NewtonError> {
    if !f.constant_term().is_zero() {
        return Err(NewtonError::NonzeroConstantTerm);
    }
    Ok(jacobian_ideal(f).local_colength_at_origin())
}

/// The Jacobian ideal of f (used by the gradient entry point).
pub fn jacobian_ideal(f: &Polynomial) -> Ideal {
    let vars = f.vars();
    let partials: Vec<Polynomial> = vars
        .names()
        .map(|v| f.partial_derivative(v).expect("ambient variable"))
        .collect();
    Ideal::new(vars, partials)
}

pub use crate::poly::parse_poly;
