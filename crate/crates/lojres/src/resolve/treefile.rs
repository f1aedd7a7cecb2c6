//! Structured text document for a resolution tree: the input pair, the
//! step log (in plan format), the divisor table, and the leaf pullbacks.

use super::{Plan, ResolutionTree, ResolveError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeFile {
    pub vars: Vec<String>,
    pub i_gens: Vec<String>,
    pub j_gens: Vec<String>,
    pub plan: Plan,
    /// Rows (divisor index, a, b) as stored in the document.
    pub rows: Vec<(usize, u64, u64)>,
}

pub fn write_tree_file(tree: &ResolutionTree) -> String {
    let mut out = String::new();
    out.push_str(&format!("vars: {}\n", tree.vars()));
    let gens = |i: &crate::ideal::Ideal| {
        i.generators().iter().map(|g| format!("{}", g)).collect::<Vec<_>>().join("; ")
    };
    out.push_str(&format!("I: {}\n", gens(tree.ideal_i())));
    out.push_str(&format!("J: {}\n", gens(tree.ideal_j())));
    out.push_str("plan:\n");
    out.push_str(&tree.executed_plan().render());
    out.push_str("end plan\n");
    out.push_str("divisors:\n");
    for row in tree.divisor_rows() {
        out.push_str(&format!("E{} a={} b={}\n", row.id.0, row.a, row.b));
    }
    out.push_str("end divisors\n");
    out.push_str("leaves:\n");
    for leaf in tree.leaves() {
        let pullback = (0..tree.vars().len())
            .map(|i| format!("{} -> {}", tree.vars().name(i), leaf.pullback().image(i)))
            .collect::<Vec<_>>()
            .join("; ");
        let divisors = leaf
            .divisors()
            .iter()
            .map(|(d, &eq)| format!("{}={}", d, leaf.vars().name(eq)))
            .collect::<Vec<_>>()
            .join(" ");
        out.push_str(&format!("leaf {}: {} | {}\n", leaf.id, pullback, divisors));
    }
    out.push_str("end leaves\n");
    out
}

pub fn parse_tree_file(text: &str) -> Result<TreeFile, ResolveError> {
    let mut vars: Option<Vec<String>> = None;
    let mut i_gens: Option<Vec<String>> = None;
    let mut j_gens: Option<Vec<String>> = None;
    let mut plan_text = String::new();
    let mut rows: Vec<(usize, u64, u64)> = Vec::new();
    let mut section = "";
    let mut saw_plan = false;

    for (lineno, raw) in text.lines().enumerate() {
        let err = |message: String| ResolveError::TreeParse { line: lineno + 1, message };
        let line = raw.trim_end();
        match section {
            "plan" => {
                if line.trim() == "end plan" {
                    section = "";
                } else {
                    plan_text.push_str(line);
                    plan_text.push('\n');
                }
                continue;
            }
            "divisors" => {
                let t = line.trim();
                if t == "end divisors" {
                    section = "";
                    continue;
                }
                if t.is_empty() {
                    continue;
                }
                let mut words = t.split_whitespace();
                let id_tok = words.next().unwrap_or("");
                let id: usize = id_tok
                    .strip_prefix('E')
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err(format!("bad divisor id `{id_tok}`")))?;
                let mut a: Option<u64> = None;
                let mut b: Option<u64> = None;
                for w in words {
                    if let Some(v) = w.strip_prefix("a=") {
                        a = v.parse().ok();
                    } else if let Some(v) = w.strip_prefix("b=") {
                        b = v.parse().ok();
                    }
                }
                let (Some(a), Some(b)) = (a, b) else {
                    return Err(err("divisor row needs `a=<nat> b=<nat>`".into()));
                };
                rows.push((id, a, b));
                continue;
            }
            "leaves" => {
                if line.trim() == "end leaves" {
                    section = "";
                }
                continue; // informational section
            }
            _ => {}
        }
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        if let Some(rest) = t.strip_prefix("vars:") {
            vars = Some(rest.split_whitespace().map(|s| s.to_string()).collect());
        } else if let Some(rest) = t.strip_prefix("I:") {
            i_gens = Some(rest.split(';').map(|s| s.trim().to_string()).collect());
        } else if let Some(rest) = t.strip_prefix("J:") {
            j_gens = Some(rest.split(';').map(|s| s.trim().to_string()).collect());
        } else if t == "plan:" {
            section = "plan";
            saw_plan = true;
        } else if t == "divisors:" {
            section = "divisors";
        } else if t == "leaves:" {
            section = "leaves";
        } else {
            return Err(err(format!("unrecognized line `{t}`")));
        }
    }

    let fail = |msg: &str| ResolveError::TreeParse { line: 0, message: msg.to_string() };
    let vars = vars.ok_or_else(|| fail("missing `vars:` line"))?;
    let i_gens = i_gens.ok_or_else(|| fail("missing `I:` line"))?;
    let j_gens = j_gens.ok_or_else(|| fail("missing `J:` line"))?;
    if !saw_plan {
        return Err(fail("missing `plan:` section"));
    }
    let plan = Plan::parse(&plan_text)?;
    Ok(TreeFile { vars, i_gens, j_gens, plan, rows })
}
