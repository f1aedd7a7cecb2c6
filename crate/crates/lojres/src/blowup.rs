//! Affine charts of iterated blow-ups along smooth coordinate-aligned
//! centers: pullbacks, total transforms, divisor valuations, and
//! monomiality detection.
//!
//! A blow-up with center {v1,...,vk} produces one chart per center
//! variable v: in the v-chart v is unchanged and every other center
//! variable w maps to v*w, with the fresh variable reusing the name w.
//! The newborn exceptional divisor has local equation v there. A
//! previously visible divisor keeps its equation, except in the chart
//! named by its own equation, where its strict transform becomes a unit
//! and the divisor leaves the chart.

use crate::ideal::Ideal;
use crate::poly::{PolyError, Polynomial, SubstMap};
use crate::vars::Vars;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BlowupError {
    #[error("center must have at least 2 distinct variables, got {0}")]
    CenterTooSmall(usize),
    #[error("center variable `{0}` repeated or unknown")]
    BadCenterVariable(String),
    #[error("substitution is not an invertible triangular change: {0}")]
    NotTriangular(String),
    #[error("divisor E{0}'s local equation `{1}` does not stay a coordinate")]
    DivisorEquationLost(usize, String),
    #[error("divisor E{0} is not visible in chart `{1}`")]
    DivisorNotVisible(usize, String),
    #[error("ideal lives over a different ambient than the chart")]
    AmbientMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Global index of an exceptional divisor; equals its birth step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorId(pub usize);

impl fmt::Display for DivisorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E{}", self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExceptionalDivisor {
    pub id: DivisorId,
    pub birth_step: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdValue {
    Finite(u64),
    Infinite,
}

impl OrdValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            OrdValue::Finite(v) => Some(v),
            OrdValue::Infinite => None,
        }
    }
}

/// One affine coordinate patch of the blown-up space.
#[derive(Clone, Debug)]
pub struct Chart {
    pub id: String,
    vars: Vars,
    /// Map from base variables to polynomials over this chart's ambient.
    pullback: SubstMap,
    /// Visible exceptional divisors: divisor id -> index of its local
    /// equation (a chart variable). Divisors absent here do not meet the
    /// chart.
    divisors: BTreeMap<DivisorId, usize>,
    pub parent: Option<(String, usize)>,
}

impl Chart {
    /// The base chart: identity pullback, no exceptional divisors.
    pub fn root(vars: &Vars) -> Chart {
        let identity = SubstMap::identity_except(vars, vec![]).expect("identity substitution");
        Chart {
            id: "root".to_string(),
            vars: vars.clone(),
            pullback: identity,
            divisors: BTreeMap::new(),
            parent: None,
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn pullback(&self) -> &SubstMap {
        &self.pullback
    }

    pub fn divisors(&self) -> &BTreeMap<DivisorId, usize> {
        &self.divisors
    }

    pub fn divisor_equation(&self, d: DivisorId) -> Option<&str> {
        self.divisors.get(&d).map(|&i| self.vars.name(i))
    }

    /// Blows up the coordinate subspace cut out by `center` (variable
    /// names), assigning the newborn divisor the given id. Returns one
    /// chart per center variable, in center order.
    pub fn blow_up(
        &self,
        center: &[String],
        new_divisor: DivisorId,
    ) -> Result<Vec<Chart>, BlowupError> {
        if center.len() < 2 {
            return Err(BlowupError::CenterTooSmall(center.len()));
        }
        let mut idx = Vec::with_capacity(center.len());
        for name in center {
            let i = self
                .vars
                .index_of(name)
                .ok_or_else(|| BlowupError::BadCenterVariable(name.clone()))?;
            if idx.contains(&i) {
                return Err(BlowupError::BadCenterVariable(name.clone()));
            }
            idx.push(i);
        }

        let mut charts = Vec::with_capacity(idx.len());
        for &v in &idx {
            let v_poly = Polynomial::variable(&self.vars, v);
            let overrides: Vec<(String, Polynomial)> = idx
                .iter()
                .filter(|&&w| w != v)
                .map(|&w| {
                    (
                        self.vars.name(w).to_string(),
                        v_poly.mul(&Polynomial::variable(&self.vars, w)),
                    )
                })
                .collect();
            let step = SubstMap::identity_except(&self.vars, overrides)?;
            let pullback = self.pullback.then(&step)?;
            let mut divisors = BTreeMap::new();
            for (&d, &eq) in &self.divisors {
                // The divisor whose equation is this chart's center variable
                // has unit strict transform here and leaves the chart.
                if eq != v {
                    divisors.insert(d, eq);
                }
            }
            divisors.insert(new_divisor, v);
            charts.push(Chart {
                id: format!("{}.{}", self.id, self.vars.name(v)),
                vars: self.vars.clone(),
                pullback,
                divisors,
                parent: Some((self.id.clone(), new_divisor.0)),
            });
        }
        Ok(charts)
    }

    /// Applies an invertible triangular (or permutation) coordinate change.
    /// `overrides` maps chart variables to their expressions in the new
    /// coordinates; omitted variables stay fixed.
    pub fn apply_coordinate_change(
        &self,
        overrides: Vec<(String, Polynomial)>,
    ) -> Result<Chart, BlowupError> {
        let subs = SubstMap::identity_except(&self.vars, overrides)?;
        check_triangular_invertible(&subs, &self.vars)?;
        let pullback = self.pullback.then(&subs)?;
        let mut divisors = BTreeMap::new();
        for (&d, &eq) in &self.divisors {
            let image = Polynomial::variable(&self.vars, eq).substitute(&subs)?;
            match image.as_unit_variable() {
                Some(new_eq) => {
                    divisors.insert(d, new_eq);
                }
                None => {
                    return Err(BlowupError::DivisorEquationLost(
                        d.0,
                        self.vars.name(eq).to_string(),
                    ))
                }
            }
        }
        Ok(Chart {
            id: self.id.clone(),
            vars: self.vars.clone(),
            pullback,
            divisors,
            parent: self.parent.clone(),
        })
    }

    /// Ideal generated by the pullbacks of the base ideal's generators.
    pub fn total_transform(&self, base_ideal: &Ideal) -> Result<Ideal, BlowupError> {
        if base_ideal.vars() != self.pullback.source() {
            return Err(BlowupError::AmbientMismatch);
        }
        let gens = base_ideal
            .generators()
            .iter()
            .map(|g| g.substitute(&self.pullback))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal::new(&self.vars, gens))
    }

    /// Order of vanishing of `ideal` along the divisor, computed at the
    /// generic point: the minimum over generators of the largest power of
    /// the local equation dividing them exactly.
    pub fn ord_along(&self, d: DivisorId, ideal: &Ideal) -> Result<OrdValue, BlowupError> {
        let &eq = self
            .divisors
            .get(&d)
            .ok_or_else(|| BlowupError::DivisorNotVisible(d.0, self.id.clone()))?;
        if ideal.vars() != &self.vars {
            return Err(BlowupError::AmbientMismatch);
        }
        let u = Polynomial::variable(&self.vars, eq);
        let mut best: Option<u64> = None;
        for g in ideal.generators() {
            if let Some(k) = g.order_along(&u)? {
                best = Some(match best {
                    Some(b) => b.min(k),
                    None => k,
                });
                if best == Some(0) {
                    break;
                }
            }
        }
        Ok(match best {
            Some(k) => OrdValue::Finite(k),
            None => OrdValue::Infinite,
        })
    }

    /// Divides every generator by the exceptional monomial (the product of
    /// visible divisor equations raised to their generic orders).
    pub fn cofactor_ideal(
        &self,
        ideal: &Ideal,
    ) -> Result<(Ideal, BTreeMap<DivisorId, u64>), BlowupError> {
        let mut ords = BTreeMap::new();
        for &d in self.divisors.keys() {
            match self.ord_along(d, ideal)? {
                OrdValue::Finite(k) => {
                    ords.insert(d, k);
                }
                OrdValue::Infinite => {
                    // zero ideal: no meaningful cofactor
                    return Ok((ideal.clone(), BTreeMap::new()));
                }
            }
        }
        let mut cofactors = Vec::with_capacity(ideal.generators().len());
        for g in ideal.generators() {
            let mut c = g.clone();
            for (&d, &k) in &ords {
                let u = Polynomial::variable(&self.vars, self.divisors[&d]);
                for _ in 0..k {
                    c = c
                        .divide_exact(&u)?
                        .expect("generator is divisible by the generic order power");
                }
            }
            cofactors.push(c);
        }
        Ok((Ideal::new(&self.vars, cofactors), ords))
    }

    /// Whether `ideal` is a monomial on this chart, supported on the
    /// exceptional divisors: every generator factors through the
    /// exceptional monomial and the cofactor ideal is trivial at every
    /// point of the exceptional locus (the locus over the base origin).
    /// Also returns the divisor multiplicities.
    pub fn is_monomialized(
        &self,
        ideal: &Ideal,
    ) -> Result<(bool, BTreeMap<DivisorId, u64>), BlowupError> {
        let (cof, ords) = self.cofactor_ideal(ideal)?;
        if ords.len() != self.divisors.len() {
            return Ok((false, ords)); // zero ideal
        }
        Ok((self.cofactor_unit_on_fiber(&cof)?, ords))
    }

    /// Checks that `cof` is the unit ideal locally along the exceptional
    /// locus: 1 ∈ cof + ⟨u⟩ for every visible divisor equation u. On the
    /// root chart (no divisors yet) the relevant locus is the origin
    /// itself.
    pub fn cofactor_unit_on_fiber(&self, cof: &Ideal) -> Result<bool, BlowupError> {
        use num_traits::Zero;
        if self.divisors.is_empty() {
            return Ok(cof.generators().iter().any(|g| !g.constant_term().is_zero()));
        }
        for &eq in self.divisors.values() {
            let restricted: Vec<Polynomial> =
                cof.generators().iter().map(|g| g.set_vars_to_zero(&[eq])).collect();
            if !Ideal::new(&self.vars, restricted).contains_one() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Verifies that a substitution is either a permutation of the variables or
/// a triangular map v -> v + g(other variables) whose dependency graph is
/// acyclic, and checks invertibility by constructing the inverse.
pub fn check_triangular_invertible(subs: &SubstMap, vars: &Vars) -> Result<SubstMap, BlowupError> {
    let n = vars.len();

    // Pure permutation?
    let as_perm: Option<Vec<usize>> = (0..n).map(|i| subs.image(i).as_unit_variable()).collect();
    if let Some(perm) = as_perm {
        let mut seen = vec![false; n];
        for &p in &perm {
            if seen[p] {
                return Err(BlowupError::NotTriangular("not a bijection".into()));
            }
            seen[p] = true;
        }
        let mut inv_images = vec![None; n];
        for (i, &p) in perm.iter().enumerate() {
            inv_images[p] = Some((vars.name(p).to_string(), Polynomial::variable(vars, i)));
        }
        let inverse = SubstMap::new(vars, inv_images.into_iter().map(|o| o.unwrap()).collect())
            .map_err(|e| BlowupError::NotTriangular(e.to_string()))?;
        return Ok(inverse);
    }

    // Triangular: image_i = v_i + g_i with g_i free of v_i, acyclic deps.
    let mut shifts: Vec<Polynomial> = Vec::with_capacity(n);
    for i in 0..n {
        let g = subs.image(i).sub(&Polynomial::variable(vars, i));
        if g.support_vars().contains(&i) {
            return Err(BlowupError::NotTriangular(format!(
                "image of `{}` involves itself beyond the identity part",
                vars.name(i)
            )));
        }
        shifts.push(g);
    }
    // Topological order: v_i depends on the variables of g_i.
    let mut order: Vec<usize> = Vec::new();
    let mut placed = vec![false; n];
    while order.len() < n {
        let before = order.len();
        for i in 0..n {
            if placed[i] {
                continue;
            }
            if shifts[i].support_vars().iter().all(|&j| placed[j]) {
                placed[i] = true;
                order.push(i);
            }
        }
        if order.len() == before {
            return Err(BlowupError::NotTriangular("cyclic variable dependencies".into()));
        }
    }
    // Back-substitute: inv(v_i) = v_i - g_i(inv(...)), in dependency order.
    let mut inv_images: Vec<Polynomial> = (0..n).map(|i| Polynomial::variable(vars, i)).collect();
    for &i in &order {
        let partial = SubstMap::new(
            vars,
            (0..n).map(|j| (vars.name(j).to_string(), inv_images[j].clone())).collect(),
        )
        .map_err(|e| BlowupError::NotTriangular(e.to_string()))?;
        let g_inv = shifts[i].substitute(&partial).map_err(BlowupError::Poly)?;
        inv_images[i] = Polynomial::variable(vars, i).sub(&g_inv);
    }
    let inverse = SubstMap::new(
        vars,
        (0..n).map(|j| (vars.name(j).to_string(), inv_images[j].clone())).collect(),
    )
    .map_err(|e| BlowupError::NotTriangular(e.to_string()))?;

    // Confirm both compositions are the identity.
    let fwd_back = subs.then(&inverse).map_err(BlowupError::Poly)?;
    let back_fwd = inverse.then(subs).map_err(BlowupError::Poly)?;
    for i in 0..n {
        let v = Polynomial::variable(vars, i);
        let ok = fwd_back.image(i) == &v && back_fwd.image(i) == &v;
        if !ok {
            return Err(BlowupError::NotTriangular("substitution is not invertible".into()));
        }
    }
    Ok(inverse)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn xyz() -> Vars {
        Vars::new(&["x", "y", "z"])
    }

    fn xy() -> Vars {
        Vars::new(&["x", "y"])
    }

    fn p(v: &Vars, s: &str) -> Polynomial {
        parse_poly(s, v).unwrap()
    }

    fn ideal(v: &Vars, gens: &[&str]) -> Ideal {
        Ideal::new(v, gens.iter().map(|s| p(v, s)).collect())
    }

    #[test]
    fn blow_up_plane_origin() {
        let v = xy();
        let root = Chart::root(&v);
        let charts = root.blow_up(&["x".into(), "y".into()], DivisorId(1)).unwrap();
        assert_eq!(charts.len(), 2);
        let cx = &charts[0];
        assert_eq!(cx.id, "root.x");
        assert_eq!(cx.pullback().image(0), &p(&v, "x"));
        assert_eq!(cx.pullback().image(1), &p(&v, "x*y"));
        assert_eq!(cx.divisor_equation(DivisorId(1)), Some("x"));
        let cy = &charts[1];
        assert_eq!(cy.pullback().image(0), &p(&v, "x*y"));
        assert_eq!(cy.pullback().image(1), &p(&v, "y"));
        assert_eq!(cy.divisor_equation(DivisorId(1)), Some("y"));
    }

    #[test]
    fn blow_up_along_axis_keeps_third_variable() {
        let v = xyz();
        let root = Chart::root(&v);
        let charts = root.blow_up(&["x".into(), "y".into()], DivisorId(1)).unwrap();
        assert_eq!(charts.len(), 2);
        for c in &charts {
            assert_eq!(c.pullback().image(2), &p(&v, "z"));
        }
        let charts3 = root.blow_up(&["x".into(), "y".into(), "z".into()], DivisorId(1)).unwrap();
        assert_eq!(charts3.len(), 3);
        for c in &charts3 {
            assert!(c.divisors().contains_key(&DivisorId(1)));
        }
    }

    #[test]
    fn blow_up_rejects_small_or_repeated_centers() {
        let v = xy();
        let root = Chart::root(&v);
        assert!(matches!(
            root.blow_up(&["x".into()], DivisorId(1)),
            Err(BlowupError::CenterTooSmall(1))
        ));
        assert!(root.blow_up(&["x".into(), "x".into()], DivisorId(1)).is_err());
    }

    #[test]
    fn coordinate_change_shear() {
        let v = xyz();
        let root = Chart::root(&v);
        let sheared =
            root.apply_coordinate_change(vec![("x".to_string(), p(&v, "x + 3*z"))]).unwrap();
        assert_eq!(sheared.pullback().image(0), &p(&v, "x + 3*z"));
        // identity change leaves the chart alone
        let same = root.apply_coordinate_change(vec![]).unwrap();
        for i in 0..3 {
            assert_eq!(same.pullback().image(i), root.pullback().image(i));
        }
        // shear then inverse shear restores the pullback
        let back =
            sheared.apply_coordinate_change(vec![("x".to_string(), p(&v, "x - 3*z"))]).unwrap();
        for i in 0..3 {
            assert_eq!(back.pullback().image(i), root.pullback().image(i));
        }
    }

    #[test]
    fn coordinate_change_rejects_noninvertible() {
        let v = xy();
        let root = Chart::root(&v);
        assert!(root.apply_coordinate_change(vec![("x".to_string(), p(&v, "x + x*y"))]).is_err());
        assert!(root
            .apply_coordinate_change(vec![
                ("x".to_string(), p(&v, "x + y")),
                ("y".to_string(), p(&v, "y + x")),
            ])
            .is_err());
        // a swap is fine
        assert!(root
            .apply_coordinate_change(vec![
                ("x".to_string(), p(&v, "y")),
                ("y".to_string(), p(&v, "x")),
            ])
            .is_ok());
    }

    #[test]
    fn coordinate_change_protects_divisor_equations() {
        let v = xy();
        let root = Chart::root(&v);
        let charts = root.blow_up(&["x".into(), "y".into()], DivisorId(1)).unwrap();
        let cx = &charts[0]; // divisor equation x
        let err =
            cx.apply_coordinate_change(vec![("x".to_string(), p(&v, "x + y"))]).unwrap_err();
        assert!(matches!(err, BlowupError::DivisorEquationLost(1, _)));
        // changing y is fine; the divisor stays {x = 0}
        let ok = cx.apply_coordinate_change(vec![("y".to_string(), p(&v, "x + y"))]).unwrap();
        assert_eq!(ok.divisor_equation(DivisorId(1)), Some("x"));
    }

    #[test]
    fn total_transform_examples() {
        let v = xy();
        let root = Chart::root(&v);
        let charts = root.blow_up(&["x".into(), "y".into()], DivisorId(1)).unwrap();
        let cx = &charts[0];
        let cy = &charts[1];
        let m = ideal(&v, &["x", "y"]);
        let t = cx.total_transform(&m).unwrap();
        assert!(t.same_ideal(&ideal(&v, &["x"])));
        let i = ideal(&v, &["x^2", "y^3"]);
        let tx = cx.total_transform(&i).unwrap();
        assert!(tx.same_ideal(&ideal(&v, &["x^2", "x^3*y^3"])));
        let ty = cy.total_transform(&i).unwrap();
        assert!(ty.same_ideal(&ideal(&v, &["x^2*y^2", "y^3"])));
    }

    #[test]
    fn ord_along_examples() {
        let v = xy();
        let root = Chart::root(&v);
        let charts = root.blow_up(&["x".into(), "y".into()], DivisorId(1)).unwrap();
        let cx = &charts[0];
        let e1 = DivisorId(1);
        // <u^3(1 + uv)> along {u = 0} -> 3 (in chart coordinates x, y)
        let principal = ideal(&v, &["x^3*(1 + x*y)"]);
        assert_eq!(cx.ord_along(e1, &principal).unwrap(), OrdValue::Finite(3));
        assert_eq!(cx.ord_along(e1, &Ideal::unit(&v)).unwrap(), OrdValue::Finite(0));
        let t = ideal(&v, &["x^2", "x^3*y^3"]);
        assert_eq!(cx.ord_along(e1, &t).unwrap(), OrdValue::Finite(2));
        let zero = Ideal::new(&v, vec![Polynomial::zero(&v)]);
        assert_eq!(cx.ord_along(e1, &zero).unwrap(), OrdValue::Infinite);
        assert!(matches!(
            cx.ord_along(DivisorId(7), &t),
            Err(BlowupError::DivisorNotVisible(7, _))
        ));
    }

    #[test]
    fn monomialized_examples() {
        let v = xy();
        let root = Chart::root(&v);
        let charts = root.blow_up(&["x".into(), "y".into()], DivisorId(1)).unwrap();
        let cx = &charts[0];
        let cy = &charts[1];
        let (ok, ords) = cx.is_monomialized(&ideal(&v, &["x^2", "x^3*y^3"])).unwrap();
        assert!(ok);
        assert_eq!(ords[&DivisorId(1)], 2);
        let (ok, ords) = cy.is_monomialized(&ideal(&v, &["x^2*y^2", "y^3"])).unwrap();
        assert!(!ok);
        assert_eq!(ords[&DivisorId(1)], 2);
        let (ok, ords) = cx.is_monomialized(&Ideal::unit(&v)).unwrap();
        assert!(ok);
        assert!(ords.values().all(|&k| k == 0));
    }

    #[test]
    fn monomialized_sees_units_local_to_the_fiber() {
        // <x^2*(1 + x*y^3)> is monomial near the exceptional locus {x=0}
        // even though 1 + x*y^3 is not a global unit.
        let v = xy();
        let root = Chart::root(&v);
        let charts = root.blow_up(&["x".into(), "y".into()], DivisorId(1)).unwrap();
        let cx = &charts[0];
        let (ok, ords) = cx.is_monomialized(&ideal(&v, &["x^2*(1 + x*y^3)"])).unwrap();
        assert!(ok);
        assert_eq!(ords[&DivisorId(1)], 2);
    }

    #[test]
    fn pullback_composes_through_chain() {
        let v = xy();
        let root = Chart::root(&v);
        let step1 = root.blow_up(&["x".into(), "y".into()], DivisorId(1)).unwrap();
        let cy = step1[1].clone();
        let step2 = cy.blow_up(&["x".into(), "y".into()], DivisorId(2)).unwrap();
        let cyx = &step2[0];
        // base x -> (x*y under step1) -> substitute y -> x*y: x*(x*y) = x^2*y
        assert_eq!(cyx.pullback().image(0), &p(&v, "x^2*y"));
        assert_eq!(cyx.pullback().image(1), &p(&v, "x*y"));
        // divisor bookkeeping: E1 had equation y in root.y; in root.y.x it
        // stays y, and E2 is born with equation x.
        assert_eq!(cyx.divisor_equation(DivisorId(1)), Some("y"));
        assert_eq!(cyx.divisor_equation(DivisorId(2)), Some("x"));
        // in root.y.y the old divisor's strict transform leaves the chart
        let cyy = &step2[1];
        assert_eq!(cyy.divisor_equation(DivisorId(1)), None);
        assert_eq!(cyy.divisor_equation(DivisorId(2)), Some("y"));
    }
}
