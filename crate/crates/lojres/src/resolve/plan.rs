//! Line-oriented plan files.
//!
//! ```text
//! chart <id>
//! change <var> -> <poly>        # zero or more, triangular
//! center <var> <var> [<var>...]
//! ```
//!
//! Steps are separated by blank lines; `#` starts a comment. Chart ids are
//! `root`, then `<parent>.<center-variable>` for each blow-up chart.

use super::ResolveError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanStep {
    pub chart: String,
    /// Coordinate-change lines, kept as raw expressions; they are parsed
    /// over the selected chart's ambient at execution time.
    pub changes: Vec<(String, String)>,
    pub center: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Plan {
    pub steps: Vec<PlanStep>,
}

impl Plan {
    pub fn parse(text: &str) -> Result<Plan, ResolveError> {
        let mut steps = Vec::new();
        let mut current: Option<PlanStep> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            let err = |message: &str| ResolveError::PlanParse {
                line: lineno + 1,
                message: message.to_string(),
            };
            if line.is_empty() {
                if let Some(step) = current.take() {
                    if step.center.is_empty() {
                        return Err(err("step ended without a `center` line"));
                    }
                    steps.push(step);
                }
                continue;
            }
            let mut words = line.split_whitespace();
            match words.next() {
                Some("chart") => {
                    if current.is_some() {
                        return Err(err("`chart` before the previous step's `center`"));
                    }
                    let id = words.next().ok_or_else(|| err("`chart` needs an id"))?;
                    if words.next().is_some() {
                        return Err(err("trailing tokens after chart id"));
                    }
                    current = Some(PlanStep {
                        chart: id.to_string(),
                        changes: Vec::new(),
                        center: Vec::new(),
                    });
                }
                Some("change") => {
                    let step = current.as_mut().ok_or_else(|| err("`change` outside a step"))?;
                    if !step.center.is_empty() {
                        return Err(err("`change` after `center`"));
                    }
                    let rest = line.trim_start_matches("change").trim();
                    let (var, expr) = rest
                        .split_once("->")
                        .ok_or_else(|| err("`change` needs the form `var -> poly`"))?;
                    let var = var.trim();
                    if var.is_empty() || expr.trim().is_empty() {
                        return Err(err("`change` needs the form `var -> poly`"));
                    }
                    step.changes.push((var.to_string(), expr.trim().to_string()));
                }
                Some("center") => {
                    let step = current.as_mut().ok_or_else(|| err("`center` outside a step"))?;
                    if !step.center.is_empty() {
                        return Err(err("duplicate `center` line"));
                    }
                    step.center = words.map(|w| w.to_string()).collect();
                    if step.center.is_empty() {
                        return Err(err("`center` needs at least one variable"));
                    }
                }
                Some(other) => return Err(err(&format!("unknown directive `{other}`"))),
                None => unreachable!(),
            }
        }
        if let Some(step) = current.take() {
            if step.center.is_empty() {
                return Err(ResolveError::PlanParse {
                    line: text.lines().count(),
                    message: "step ended without a `center` line".into(),
                });
            }
            steps.push(step);
        }
        Ok(Plan { steps })
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            out.push_str(&format!("chart {}\n", step.chart));
            for (var, expr) in &step.changes {
                out.push_str(&format!("change {} -> {}\n", var, expr));
            }
            out.push_str(&format!("center {}\n", step.center.join(" ")));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        let text = "\
# resolve the plane cusp ideal
chart root
center x y

chart root.y
center x y

chart root.y.x
change y -> y + 3*x
center x y
";
        let plan = Plan::parse(text).unwrap();
        assert_eq!(plan.steps.len(), 3);
        assert_eq!(plan.steps[2].changes, vec![("y".to_string(), "y + 3*x".to_string())]);
        let rendered = plan.render();
        let reparsed = Plan::parse(&rendered).unwrap();
        assert_eq!(plan, reparsed);
    }

    #[test]
    fn parse_rejects_malformed_plans() {
        assert!(Plan::parse("center x y\n").is_err());
        assert!(Plan::parse("chart root\n").is_err());
        assert!(Plan::parse("chart root\ncenter x y\nchange x -> y\n").is_err());
        assert!(Plan::parse("chart root\nblow x y\n").is_err());
        assert!(Plan::parse("chart root\nchange x y\ncenter x y\n").is_err());
    }
}
