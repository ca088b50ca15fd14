//! Dense linear programs and the solver behind the metric relaxations.
//!
//! The simplex itself is delegated to `microlp`; this module owns the model,
//! the post-solve feasibility audit and a CPLEX-style text export.

use std::fmt::Write as _;

use thiserror::Error;

/// Constraint satisfaction tolerance, relative on rows with large terms.
pub const TOLERANCE: f64 = 1e-7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

impl Relation {
    fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Eq => "=",
            Relation::Ge => ">=",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub terms: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    names: Vec<String>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    sense: Sense,
    objective: Vec<(usize, f64)>,
    constraints: Vec<Constraint>,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LpError {
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("malformed linear program: {0}")]
    Malformed(String),
    #[error("solver failure: {0}")]
    Solver(String),
    #[error("solution violates {what} by {violation:e}")]
    Tolerance { what: String, violation: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub values: Vec<f64>,
    pub objective: f64,
}

impl LpSolution {
    #[inline]
    pub fn value(&self, var: usize) -> f64 {
        self.values[var]
    }
}

impl LinearProgram {
    pub fn new(sense: Sense) -> Self {
        LinearProgram {
            names: Vec::new(),
            lower: Vec::new(),
            upper: Vec::new(),
            sense,
            objective: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn add_var(&mut self, name: impl Into<String>, lower: f64, upper: f64) -> usize {
        self.names.push(name.into());
        self.lower.push(lower);
        self.upper.push(upper);
        self.names.len() - 1
    }

    /// Fixes `var` to `value` through its bounds.
    pub fn fix_var(&mut self, var: usize, value: f64) {
        self.lower[var] = value;
        self.upper[var] = value;
    }

    pub fn set_objective(&mut self, sense: Sense, terms: Vec<(usize, f64)>) {
        self.sense = sense;
        self.objective = terms;
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        self.constraints.push(Constraint { terms, relation, rhs });
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn bounds(&self, var: usize) -> (f64, f64) {
        (self.lower[var], self.upper[var])
    }

    pub fn sense(&self) -> Sense {
        self.sense
    }

    pub fn objective(&self) -> &[(usize, f64)] {
        &self.objective
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    pub fn validate(&self) -> Result<(), LpError> {
        let nv = self.num_vars();
        let check_terms = |terms: &[(usize, f64)], ctx: &str| -> Result<(), LpError> {
            for &(v, c) in terms {
                if v >= nv {
                    return Err(LpError::Malformed(format!("{ctx} references undeclared variable {v}")));
                }
                if !c.is_finite() {
                    return Err(LpError::Malformed(format!("{ctx} has a non-finite coefficient")));
                }
            }
            Ok(())
        };
        check_terms(&self.objective, "objective")?;
        for (i, c) in self.constraints.iter().enumerate() {
            check_terms(&c.terms, &format!("row {i}"))?;
            if !c.rhs.is_finite() {
                return Err(LpError::Malformed(format!("row {i} has a non-finite bound")));
            }
        }
        for v in 0..nv {
            let (lo, hi) = (self.lower[v], self.upper[v]);
            if lo.is_nan() || hi.is_nan() || lo == f64::INFINITY || hi == f64::NEG_INFINITY {
                return Err(LpError::Malformed(format!("variable `{}` has invalid bounds", self.names[v])));
            }
            if lo > hi {
                return Err(LpError::Infeasible);
            }
        }
        Ok(())
    }

    /// Largest scaled violation over rows and bounds, with a description.
    pub fn max_violation(&self, values: &[f64]) -> (f64, String) {
        let mut worst = (0.0, String::from("nothing"));
        for (v, &x) in values.iter().enumerate() {
            let viol = (self.lower[v] - x).max(x - self.upper[v]).max(0.0);
            if viol > worst.0 {
                worst = (viol, format!("bounds of `{}`", self.names[v]));
            }
        }
        for (i, c) in self.constraints.iter().enumerate() {
            let mut lhs = 0.0;
            let mut scale = c.rhs.abs().max(1.0);
            for &(v, a) in &c.terms {
                lhs += a * values[v];
                scale = scale.max((a * values[v]).abs());
            }
            let raw = match c.relation {
                Relation::Le => lhs - c.rhs,
                Relation::Ge => c.rhs - lhs,
                Relation::Eq => (lhs - c.rhs).abs(),
            };
            let viol = raw.max(0.0) / scale;
            if viol > worst.0 {
                worst = (viol, format!("row {i}"));
            }
        }
        worst
    }

    /// CPLEX-style LP text. [`parse_lp_format`] reads it back exactly.
    pub fn to_lp_format(&self) -> String {
        let mut out = String::new();
        out.push_str(match self.sense {
            Sense::Minimize => "Minimize\n",
            Sense::Maximize => "Maximize\n",
        });
        writeln!(out, " obj:{}", self.format_terms(&self.objective)).unwrap();
        out.push_str("Subject To\n");
        for (i, c) in self.constraints.iter().enumerate() {
            writeln!(out, " c{i}:{} {} {}", self.format_terms(&c.terms), c.relation.symbol(), c.rhs).unwrap();
        }
        out.push_str("Bounds\n");
        for v in 0..self.num_vars() {
            writeln!(out, " {} <= {} <= {}", fmt_bound(self.lower[v]), self.names[v], fmt_bound(self.upper[v]))
                .unwrap();
        }
        out.push_str("End\n");
        out
    }

    fn format_terms(&self, terms: &[(usize, f64)]) -> String {
        let mut s = String::new();
        for &(v, c) in terms {
            let sign = if c.is_sign_negative() { '-' } else { '+' };
            write!(s, " {sign} {} {}", c.abs(), self.names[v]).unwrap();
        }
        if terms.is_empty() {
            s.push_str(" 0");
        }
        s
    }
}

fn fmt_bound(x: f64) -> String {
    if x == f64::INFINITY {
        "+inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        x.to_string()
    }
}

fn parse_bound(tok: &str) -> Option<f64> {
    match tok {
        "+inf" | "inf" => Some(f64::INFINITY),
        "-inf" => Some(f64::NEG_INFINITY),
        t => t.parse().ok(),
    }
}

/// Reads the text produced by [`LinearProgram::to_lp_format`]. Variables are
/// declared in the order of the `Bounds` section.
pub fn parse_lp_format(text: &str) -> Result<LinearProgram, LpError> {
    let bad = |msg: String| LpError::Malformed(msg);
    let mut section = "";
    let mut sense = None;
    let mut objective_line = None;
    let mut rows: Vec<String> = Vec::new();
    let mut lp = LinearProgram::new(Sense::Minimize);
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('\\') {
            continue;
        }
        match line {
            "Minimize" => {
                sense = Some(Sense::Minimize);
                section = "obj";
                continue;
            }
            "Maximize" => {
                sense = Some(Sense::Maximize);
                section = "obj";
                continue;
            }
            "Subject To" => {
                section = "rows";
                continue;
            }
            "Bounds" => {
                section = "bounds";
                continue;
            }
            "End" => {
                section = "end";
                continue;
            }
            _ => {}
        }
        match section {
            "obj" => objective_line = Some(line.to_string()),
            "rows" => rows.push(line.to_string()),
            "bounds" => {
                let toks: Vec<&str> = line.split_whitespace().collect();
                if toks.len() != 5 || toks[1] != "<=" || toks[3] != "<=" {
                    return Err(bad(format!("bad bound line `{line}`")));
                }
                let lo = parse_bound(toks[0]).ok_or_else(|| bad(format!("bad bound `{}`", toks[0])))?;
                let hi = parse_bound(toks[4]).ok_or_else(|| bad(format!("bad bound `{}`", toks[4])))?;
                lp.add_var(toks[2], lo, hi);
            }
            _ => return Err(bad(format!("content outside a section: `{line}`"))),
        }
    }
    let sense = sense.ok_or_else(|| bad("missing objective sense".into()))?;
    let lookup = |name: &str| lp.var_index(name).ok_or_else(|| bad(format!("undeclared variable `{name}`")));
    let parse_terms = |body: &str| -> Result<Vec<(usize, f64)>, LpError> {
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks == ["0"] {
            return Ok(Vec::new());
        }
        if toks.len() % 3 != 0 {
            return Err(bad(format!("bad linear expression `{body}`")));
        }
        toks.chunks(3)
            .map(|ch| {
                let c: f64 = ch[1].parse().map_err(|_| bad(format!("bad coefficient `{}`", ch[1])))?;
                let c = match ch[0] {
                    "+" => c,
                    "-" => -c,
                    s => return Err(bad(format!("bad sign `{s}`"))),
                };
                Ok((lookup(ch[2])?, c))
            })
            .collect()
    };
    let objective = match objective_line {
        Some(l) => {
            let body = l.split_once(':').map(|(_, b)| b).ok_or_else(|| bad("objective needs a label".into()))?;
            parse_terms(body)?
        }
        None => Vec::new(),
    };
    let mut constraints = Vec::with_capacity(rows.len());
    for row in &rows {
        let body = row.split_once(':').map(|(_, b)| b).ok_or_else(|| bad(format!("row needs a label: `{row}`")))?;
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(bad(format!("bad row `{row}`")));
        }
        let (expr, tail) = toks.split_at(toks.len() - 2);
        let relation = match tail[0] {
            "<=" => Relation::Le,
            ">=" => Relation::Ge,
            "=" => Relation::Eq,
            r => return Err(bad(format!("bad relation `{r}`"))),
        };
        let rhs: f64 = tail[1].parse().map_err(|_| bad(format!("bad right-hand side `{}`", tail[1])))?;
        constraints.push(Constraint { terms: parse_terms(&expr.join(" "))?, relation, rhs });
    }
    lp.set_objective(sense, objective);
    lp.constraints = constraints;
    Ok(lp)
}

/// Solves `lp` to optimality and audits the returned point against every row
/// and bound at [`TOLERANCE`].
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    lp.validate()?;
    let direction = match lp.sense {
        Sense::Minimize => microlp::OptimizationDirection::Minimize,
        Sense::Maximize => microlp::OptimizationDirection::Maximize,
    };
    let mut obj = vec![0.0; lp.num_vars()];
    for &(v, c) in &lp.objective {
        obj[v] += c;
    }
    let mut problem = microlp::Problem::new(direction);
    let vars: Vec<_> = (0..lp.num_vars()).map(|v| problem.add_var(obj[v], (lp.lower[v], lp.upper[v]))).collect();
    for c in &lp.constraints {
        let expr: Vec<_> = c.terms.iter().map(|&(v, a)| (vars[v], a)).collect();
        let op = match c.relation {
            Relation::Le => microlp::ComparisonOp::Le,
            Relation::Eq => microlp::ComparisonOp::Eq,
            Relation::Ge => microlp::ComparisonOp::Ge,
        };
        problem.add_constraint(expr.as_slice(), op, c.rhs);
    }
    let outcome = problem.solve().map_err(|e| match e {
        microlp::Error::Infeasible => LpError::Infeasible,
        microlp::Error::Unbounded => LpError::Unbounded,
        other => LpError::Solver(other.to_string()),
    })?;
    let solution = outcome.into_solution().map_err(|_| LpError::Solver("solve interrupted".into()))?;
    let values: Vec<f64> = vars.iter().map(|&v| solution.var_value(v)).collect();
    let (violation, what) = lp.max_violation(&values);
    if violation > TOLERANCE {
        return Err(LpError::Tolerance { what, violation });
    }
    let objective = lp.objective.iter().map(|&(v, c)| c * values[v]).sum();
    Ok(LpSolution { values, objective })
}
