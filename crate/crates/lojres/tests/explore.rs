//! Interactive exploration harness used to construct the shipped fixture
//! plans. Not part of the regular test suite; run with `--ignored` to
//! search for a resolution plan and print it.

use lojres::blowup::{Chart, DivisorId};
use lojres::ideal::{radical_member, Ideal};
use lojres::poly::{parse_poly, Polynomial};
use lojres::resolve::{execute_plan, Plan, PlanStep};
use lojres::vars::Vars;
use num_traits::Zero as _;

struct Explorer {
    ideal: Ideal,
    nodes: usize,
    node_budget: usize,
    /// canonical chart signature -> depth at which solving failed
    failed: std::collections::HashMap<String, usize>,
}

fn chart_signature(chart: &Chart, ideal: &Ideal) -> String {
    let mut gens: Vec<String> = match chart.total_transform(ideal) {
        Ok(t) => t.generators().iter().map(|g| format!("{}", g)).collect(),
        Err(_) => vec!["<err>".into()],
    };
    gens.sort();
    let mut eqs: Vec<String> = chart
        .divisors()
        .values()
        .map(|&e| chart.vars().name(e).to_string())
        .collect();
    eqs.sort();
    format!("{} | {}", eqs.join(","), gens.join(" ; "))
}

fn cofactor_if_bad(chart: &Chart, ideal: &Ideal) -> Option<Ideal> {
    let t = chart.total_transform(ideal).ok()?;
    let (cof, _) = chart.cofactor_ideal(&t).ok()?;
    if chart.cofactor_unit_on_fiber(&cof).unwrap_or(false) {
        None
    } else {
        Some(cof)
    }
}

fn subsets(vars: &Vars) -> Vec<Vec<String>> {
    let n = vars.len();
    let mut out = Vec::new();
    // small centers first: lines before point blow-ups
    let mut masks: Vec<u32> = (1..(1u32 << n)).collect();
    masks.sort_by_key(|m| m.count_ones());
    for mask in masks {
        if mask.count_ones() < 2 {
            continue;
        }
        let set: Vec<String> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| vars.name(i).to_string())
            .collect();
        out.push(set);
    }
    out
}

fn center_candidates(chart: &Chart, ideal: &Ideal) -> Vec<Vec<String>> {
    let Ok(t) = chart.total_transform(ideal) else { return vec![] };
    let vars = chart.vars();
    subsets(vars)
        .into_iter()
        .filter(|set| {
            let idx: Vec<usize> = set.iter().map(|s| vars.index_of(s).unwrap()).collect();
            t.generators().iter().all(|g| g.set_vars_to_zero(&idx).is_zero())
        })
        .collect()
}

/// Coordinate-change candidates from linear factors of cofactor generators
/// ((v - c*w) | g suggests v -> v + c*w, (v - c) | g suggests v -> v + c),
/// from linear parts of generators, and from Groebner elements of the
/// per-divisor bad loci.
fn change_candidates(chart: &Chart, cof: &Ideal) -> Vec<Vec<(String, Polynomial)>> {
    let vars = chart.vars();
    let n = vars.len();
    let mut out: Vec<Vec<(String, Polynomial)>> = Vec::new();
    let mut push = |change: Vec<(String, Polynomial)>| {
        if !out.contains(&change) {
            out.push(change);
        }
    };
    // harvest from the bad-locus ideals along each divisor
    let mut harvest_pool: Vec<Polynomial> = cof.generators().to_vec();
    for &eq in chart.divisors().values() {
        let restricted: Vec<Polynomial> =
            cof.generators().iter().map(|g| g.set_vars_to_zero(&[eq])).collect();
        let comp = Ideal::new(vars, restricted);
        if comp.contains_one() {
            continue;
        }
        let gb = comp.groebner_basis(&comp.default_order());
        harvest_pool.extend(gb.iter().cloned());
    }
    for g in &harvest_pool {
        if g.is_zero() {
            continue;
        }
        // pure shift elements v - c in the pool align off-origin loci
        if g.total_degree() == 1 && g.num_terms() == 2 {
            let lin: Vec<(usize, lojres::poly::Rational)> = g
                .terms()
                .filter(|(m, _)| m.degree() == 1)
                .map(|(m, c)| (m.0.iter().position(|&e| e == 1).unwrap(), c.clone()))
                .collect();
            if lin.len() == 1 {
                let (v, cv) = &lin[0];
                let konst = g.constant_term();
                // locus at v = -konst/cv, so the aligned coordinate is
                // v_new = v_old - root, i.e. subs(v) = v + root
                let root = -(konst / cv);
                let img = Polynomial::variable(vars, *v)
                    .add(&Polynomial::constant(vars, root));
                push(vec![(vars.name(*v).to_string(), img)]);
            }
        }
        // tangent absorption: if g has a degree-1 term c*v, the change
        // v -> v - h/c with h the v-free part of the tail moves the
        // hypersurface {g = 0} onto higher contact with {v = 0}
        let linear_terms: Vec<(usize, lojres::poly::Rational)> = g
            .terms()
            .filter(|(m, _)| m.degree() == 1)
            .map(|(m, c)| (m.0.iter().position(|&e| e == 1).unwrap(), c.clone()))
            .collect();
        for (v, cv) in &linear_terms {
            let tail_terms: Vec<(lojres::poly::Monomial, lojres::poly::Rational)> = g
                .terms()
                .filter(|(m, _)| m.0[*v] == 0)
                .map(|(m, c)| (m.clone(), -(c / cv)))
                .collect();
            if tail_terms.is_empty() {
                continue;
            }
            let h = Polynomial::from_terms(vars, tail_terms);
            if h.is_zero() || !h.constant_term().is_zero() {
                continue;
            }
            let img = Polynomial::variable(vars, *v).add(&h);
            push(vec![(vars.name(*v).to_string(), img)]);
        }
        for v in 0..n {
            for w in 0..n {
                if v == w {
                    continue;
                }
                for c in [-1i64, 1, -2, 2, -3, 3, -4, 4, -6, 6, -9, 9] {
                    let form = Polynomial::variable(vars, v)
                        .sub(&Polynomial::variable(vars, w).scale(&lojres::poly::Rational::from_integer(c.into())));
                    if let Ok(Some(_)) = g.divide_exact(&form) {
                        let img = Polynomial::variable(vars, v)
                            .add(&Polynomial::variable(vars, w).scale(&lojres::poly::Rational::from_integer(c.into())));
                        push(vec![(vars.name(v).to_string(), img)]);
                    }
                }
            }
            for c in [-1i64, 1, -2, 2, -3, 3] {
                let form =
                    Polynomial::variable(vars, v).sub(&Polynomial::constant_int(vars, c));
                if let Ok(Some(_)) = g.divide_exact(&form) {
                    let img =
                        Polynomial::variable(vars, v).add(&Polynomial::constant_int(vars, c));
                    push(vec![(vars.name(v).to_string(), img)]);
                }
            }
        }
    }
    out
}

impl Explorer {
    fn solve(&mut self, chart: &Chart, depth: usize, next_id: usize) -> Option<Vec<PlanStep>> {
        let Some(cof) = cofactor_if_bad(chart, &self.ideal) else {
            return Some(vec![]);
        };
        if depth == 0 {
            return None;
        }
        let sig = chart_signature(chart, &self.ideal);
        if let Some(&tried) = self.failed.get(&sig) {
            if tried >= depth {
                return None;
            }
        }
        self.nodes += 1;
        if self.nodes % 20_000 == 0 {
            eprintln!("... {} nodes, {} failure signatures", self.nodes, self.failed.len());
        }
        if self.nodes > self.node_budget {
            return None;
        }

        // moves: plain centers, then harvested coordinate changes x centers
        let mut moves: Vec<(Vec<(String, Polynomial)>, Vec<String>)> = Vec::new();
        for c in center_candidates(chart, &self.ideal) {
            moves.push((vec![], c));
        }
        for change in change_candidates(chart, &cof) {
            if let Ok(changed) = chart.apply_coordinate_change(change.clone()) {
                for c in center_candidates(&changed, &self.ideal) {
                    moves.push((change.clone(), c));
                }
            }
        }

        // prune dead ends: a divisor whose bad locus leaves the coordinate
        // subspace arrangement cannot be repaired without a change
        if !moves.iter().any(|(ch, _)| !ch.is_empty()) && self.bad_locus_escapes_axes(chart, &cof)
        {
            return None;
        }

        for (changes, center) in moves {
            let changed = if changes.is_empty() {
                chart.clone()
            } else {
                match chart.apply_coordinate_change(changes.clone()) {
                    Ok(c) => c,
                    Err(_) => continue,
                }
            };
            let Ok(children) = changed.blow_up(&center, DivisorId(next_id)) else {
                continue;
            };
            let mut steps = vec![PlanStep {
                chart: chart.id.clone(),
                changes: changes.iter().map(|(v, p)| (v.clone(), format!("{}", p))).collect(),
                center: center.clone(),
            }];
            let mut ok = true;
            let mut id = next_id + 1;
            for child in &children {
                match self.solve(child, depth - 1, id) {
                    Some(sub) => {
                        id += sub.len() + 8;
                        steps.extend(sub);
                    }
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok {
                return Some(steps);
            }
        }
        let entry = self.failed.entry(sig).or_insert(0);
        if depth > *entry {
            *entry = depth;
        }
        None
    }
}

impl Explorer {
    /// True when the cofactor's bad locus along some divisor has points
    /// outside every codimension-2 coordinate subspace (checked by radical
    /// membership of the squarefree degree-(n-1) monomials).
    fn bad_locus_escapes_axes(&self, chart: &Chart, cof: &Ideal) -> bool {
        let vars = chart.vars();
        let n = vars.len();
        for &eq in chart.divisors().values() {
            let mut restricted: Vec<Polynomial> =
                cof.generators().iter().map(|g| g.set_vars_to_zero(&[eq])).collect();
            if Ideal::new(vars, restricted.clone()).contains_one() {
                continue;
            }
            restricted.push(Polynomial::variable(vars, eq));
            let component = Ideal::new(vars, restricted);
            for omit in 0..n {
                let mut mono = Polynomial::one(vars);
                for v in 0..n {
                    if v != omit {
                        mono = mono.mul(&Polynomial::variable(vars, v));
                    }
                }
                if !radical_member(&mono, &component) {
                    return true;
                }
            }
        }
        false
    }
}

fn search_plan(ideal: &Ideal, depth: usize) -> Option<Plan> {
    let root = Chart::root(ideal.vars());
    let mut ex = Explorer { ideal: ideal.clone(), nodes: 0, node_budget: 2_000_000, failed: Default::default() };
    let steps = ex.solve(&root, depth, 1)?;
    eprintln!("search visited {} nodes", ex.nodes);
    Some(Plan { steps })
}

fn report(ideal: &Ideal, plan: &Plan) {
    let m = Ideal::maximal_at_origin(ideal.vars());
    match execute_plan(ideal, &m, plan) {
        Ok(tree) => {
            println!("--- plan ({} steps) ---\n{}", plan.steps.len(), plan.render());
            println!("--- verification ---\n{}", tree.verify().render());
            println!("--- divisors ---");
            for r in tree.divisor_rows() {
                println!("E{} a={} b={}", r.id.0, r.a, r.b);
            }
            match lojres::loj::loj_exponent(&tree) {
                Ok(l) => println!("L = {} (witness E{})", l.value, l.witness.0),
                Err(e) => println!("loj failed: {e}"),
            }
        }
        Err(e) => println!("execute failed: {e}"),
    }
}

#[test]
#[ignore]
fn explore_example2_gradient() {
    let v = Vars::new(&["x", "y", "z"]);
    let f = parse_poly("y^6 + z^4 + x*(x - 3*z)^2", &v).unwrap();
    let i = lojres::newton::jacobian_ideal(&f);
    println!("jacobian: {:?}", i);
    for depth in [6, 8, 10, 12, 14] {
        eprintln!("=== depth {depth}");
        if let Some(plan) = search_plan(&i, depth) {
            report(&i, &plan);
            return;
        }
    }
    panic!("no plan found");
}

#[test]
#[ignore]
fn explore_example1() {
    let v = Vars::new(&["x", "y", "z"]);
    let gens = ["x^4 + x*y*z + y^4", "x*y^2*z", "y^5 + z^5"]
        .iter()
        .map(|s| parse_poly(s, &v).unwrap())
        .collect();
    let i = Ideal::new(&v, gens);
    for depth in [8, 10, 12, 14, 16] {
        eprintln!("=== depth {depth}");
        if let Some(plan) = search_plan(&i, depth) {
            report(&i, &plan);
            return;
        }
    }
    panic!("no plan found");
}

/// Executes the plan in EXPLORE_PLAN (if set) against Example 1 and dumps
/// every non-monomial leaf with its cofactor and move candidates.
#[test]
#[ignore]
fn inspect_example1_frontier() {
    let v = Vars::new(&["x", "y", "z"]);
    let gens = ["x^4 + x*y*z + y^4", "x*y^2*z", "y^5 + z^5"]
        .iter()
        .map(|s| parse_poly(s, &v).unwrap())
        .collect();
    let i = Ideal::new(&v, gens);
    let m = Ideal::maximal_at_origin(&v);
    let plan_text = std::env::var("EXPLORE_PLAN").unwrap_or_else(|_| "chart root\ncenter x y z\n".into());
    let plan = Plan::parse(&plan_text).expect("plan parses");
    let tree = match execute_plan(&i, &m, &plan) {
        Ok(t) => t,
        Err(e) => {
            println!("EXECUTE FAILED: {e}");
            return;
        }
    };
    println!("steps: {}   leaves: {}", tree.steps().len(), tree.leaves().len());
    for leaf in tree.leaves() {
        let Some(cof) = cofactor_if_bad(leaf, &i) else { continue };
        println!("=== BAD leaf {}", leaf.id);
        println!("  divisors: {:?}",
            leaf.divisors().iter().map(|(d, &e)| format!("E{}={}", d.0, leaf.vars().name(e))).collect::<Vec<_>>());
        for g in cof.generators() {
            println!("  cof gen: {}", g);
        }
        for &eq in leaf.divisors().values() {
            let restricted: Vec<Polynomial> =
                cof.generators().iter().map(|g| g.set_vars_to_zero(&[eq])).collect();
            let comp = Ideal::new(leaf.vars(), restricted);
            if comp.contains_one() {
                continue;
            }
            println!("  bad along {}=0: restricted gens {:?}", leaf.vars().name(eq),
                comp.generators().iter().filter(|g| !g.is_zero()).map(|g| format!("{}", g)).collect::<Vec<_>>());
        }
        println!("  eligible centers: {:?}", center_candidates(leaf, &i));
        for ch in change_candidates(leaf, &cof) {
            println!("  change candidate: {:?}", ch.iter().map(|(v, p)| format!("{} -> {}", v, p)).collect::<Vec<_>>());
        }
    }
    println!("--- verification ---\n{}", tree.verify().render());
}

/// Solves a single leaf chart's subtree: env EXPLORE_PREFIX gives the plan
/// so far, EXPLORE_TARGET the leaf id, EXPLORE_DEPTH the depth cap.
#[test]
#[ignore]
fn solve_example1_leaf() {
    let v = Vars::new(&["x", "y", "z"]);
    let gens = ["x^4 + x*y*z + y^4", "x*y^2*z", "y^5 + z^5"]
        .iter()
        .map(|s| parse_poly(s, &v).unwrap())
        .collect();
    let i = Ideal::new(&v, gens);
    let m = Ideal::maximal_at_origin(&v);
    let prefix_text = std::env::var("EXPLORE_PREFIX").expect("EXPLORE_PREFIX");
    let target = std::env::var("EXPLORE_TARGET").expect("EXPLORE_TARGET");
    let depth: usize = std::env::var("EXPLORE_DEPTH").map(|s| s.parse().unwrap()).unwrap_or(10);
    let prefix = Plan::parse(&prefix_text).unwrap();
    let tree = execute_plan(&i, &m, &prefix).unwrap();
    let leaf = tree.leaves().iter().find(|c| c.id == target).expect("target leaf exists").clone();
    let mut ex = Explorer { ideal: i.clone(), nodes: 0, node_budget: 3_000_000, failed: Default::default() };
    match ex.solve(&leaf, depth, 100) {
        Some(steps) => {
            eprintln!("visited {} nodes", ex.nodes);
            println!("SOLVED {target} in {} steps:\n{}", steps.len(), Plan { steps }.render());
        }
        None => panic!("no solution for {target} at depth {depth} ({} nodes)", ex.nodes),
    }
}
