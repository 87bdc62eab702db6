//! Acyclic structural causal models over finite symbolic domains.
//!
//! A [`CausalModel`] pairs a [`Signature`] (variables and their ranges) with
//! one structural equation per endogenous variable. Models are immutable:
//! interventions return a new model with the targeted equations replaced by
//! constants. [`solve`] computes the unique solution of the equations in a
//! [`Context`], and [`evaluate`] decides causal formulas `[Y <- y] phi`.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;
use thiserror::Error;

/// Index into a variable's range. Ranges are tiny (finite symbolic domains),
/// so a byte is plenty.
pub type Value = u8;

/// Identifier of a variable within a [`Signature`], in declaration order
/// (exogenous block first, then endogenous).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub(crate) u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum ModelError {
    #[error("cycle among variables: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("value `{value}` is not in the range of `{variable}`")]
    ValueOutOfRange { variable: String, value: String },
    #[error("missing equation for endogenous variable `{0}`")]
    MissingEquation(String),
    #[error("equation given for `{0}`, which is not an endogenous variable")]
    UnexpectedEquation(String),
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("duplicate value `{value}` in the range of `{variable}`")]
    DuplicateValue { variable: String, value: String },
    #[error("empty range for variable `{0}`")]
    EmptyRange(String),
    #[error("invalid identifier `{0}`")]
    InvalidIdentifier(String),
    #[error("range of `{0}` mixes the reserved tokens 0/1 with other values; the Boolean range is exactly [0, 1]")]
    MalformedBooleanRange(String),
    #[error("cannot intervene on exogenous variable `{0}`")]
    ExogenousIntervention(String),
    #[error("context does not assign exogenous variable `{0}`")]
    IncompleteContext(String),
    #[error("variable `{0}` is not endogenous")]
    NotEndogenous(String),
    #[error("bare reference to `{0}` requires the Boolean range [0, 1]")]
    NotBoolean(String),
    #[error("expression is not Boolean-valued where a truth value is required (variable `{0}`)")]
    NotBooleanValued(String),
    #[error("duplicate intervention target `{0}`")]
    DuplicateTarget(String),
    #[error("signature mismatch between model and context")]
    SignatureMismatch,
}

/// Words with a fixed meaning in the model DSL; they cannot name variables
/// or values.
pub const KEYWORDS: &[&str] = &[
    "model", "context", "outcome", "agent", "action", "epistemic", "world", "var", "exo", "in",
    "case", "else", "not", "and", "or",
];

/// True for `[A-Za-z][A-Za-z0-9_]*` that is not a DSL keyword.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || c == '_') {
        return false;
    }
    !KEYWORDS.contains(&s)
}

fn is_value_token(s: &str) -> bool {
    s == "0" || s == "1" || is_identifier(s)
}

/// Variable declarations: names plus ranges, split into exogenous and
/// endogenous blocks. Boolean domains are exactly the two-token range
/// `[0, 1]`; the tokens `0` and `1` are reserved for that purpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    names: Vec<String>,
    ranges: Vec<Vec<String>>,
    exogenous: Vec<VarId>,
    endogenous: Vec<VarId>,
    index: HashMap<String, VarId>,
}

impl Signature {
    pub fn new(
        exogenous: Vec<(String, Vec<String>)>,
        endogenous: Vec<(String, Vec<String>)>,
    ) -> Result<Self, ModelError> {
        let mut sig = Signature {
            names: Vec::new(),
            ranges: Vec::new(),
            exogenous: Vec::new(),
            endogenous: Vec::new(),
            index: HashMap::new(),
        };
        let exo_count = exogenous.len();
        for (i, (name, range)) in exogenous.into_iter().chain(endogenous).enumerate() {
            if !is_identifier(&name) {
                return Err(ModelError::InvalidIdentifier(name));
            }
            if range.is_empty() {
                return Err(ModelError::EmptyRange(name));
            }
            let mut seen = BTreeSet::new();
            for v in &range {
                if !is_value_token(v) {
                    return Err(ModelError::InvalidIdentifier(v.clone()));
                }
                if !seen.insert(v.clone()) {
                    return Err(ModelError::DuplicateValue {
                        variable: name.clone(),
                        value: v.clone(),
                    });
                }
            }
            let uses_bool_tokens = range.iter().any(|v| v == "0" || v == "1");
            if uses_bool_tokens && range != ["0", "1"] {
                return Err(ModelError::MalformedBooleanRange(name));
            }
            if range.len() > Value::MAX as usize {
                return Err(ModelError::EmptyRange(name)); // unreachable at desk scale
            }
            let id = VarId(sig.names.len() as u32);
            if sig.index.insert(name.clone(), id).is_some() {
                return Err(ModelError::DuplicateVariable(name));
            }
            if i < exo_count {
                sig.exogenous.push(id);
            } else {
                sig.endogenous.push(id);
            }
            sig.names.push(name);
            sig.ranges.push(range);
        }
        Ok(sig)
    }

    /// Shorthand: every listed variable is Boolean.
    pub fn boolean(exogenous: &[&str], endogenous: &[&str]) -> Result<Self, ModelError> {
        let b = |names: &[&str]| {
            names
                .iter()
                .map(|n| (n.to_string(), vec!["0".to_string(), "1".to_string()]))
                .collect::<Vec<_>>()
        };
        Signature::new(b(exogenous), b(endogenous))
    }

    pub fn var(&self, name: &str) -> Option<VarId> {
        self.index.get(name).copied()
    }

    pub fn require_var(&self, name: &str) -> Result<VarId, ModelError> {
        self.var(name)
            .ok_or_else(|| ModelError::UnknownVariable(name.to_string()))
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.names[id.index()]
    }

    pub fn range(&self, id: VarId) -> &[String] {
        &self.ranges[id.index()]
    }

    pub fn is_exogenous(&self, id: VarId) -> bool {
        self.exogenous.contains(&id)
    }

    pub fn is_endogenous(&self, id: VarId) -> bool {
        !self.is_exogenous(id)
    }

    pub fn is_boolean(&self, id: VarId) -> bool {
        self.range(id) == ["0", "1"]
    }

    pub fn value_index(&self, id: VarId, token: &str) -> Result<Value, ModelError> {
        self.range(id)
            .iter()
            .position(|v| v == token)
            .map(|i| i as Value)
            .ok_or_else(|| ModelError::ValueOutOfRange {
                variable: self.name(id).to_string(),
                value: token.to_string(),
            })
    }

    pub fn value_token(&self, id: VarId, value: Value) -> &str {
        &self.range(id)[value as usize]
    }

    pub fn exogenous(&self) -> &[VarId] {
        &self.exogenous
    }

    pub fn endogenous(&self) -> &[VarId] {
        &self.endogenous
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    /// Product of the endogenous range sizes, saturating.
    pub fn endogenous_state_count(&self) -> u128 {
        self.endogenous
            .iter()
            .map(|&v| self.range(v).len() as u128)
            .fold(1u128, |a, b| a.saturating_mul(b))
    }
}

/// Unbound expression tree over variable and value names. Bare `Var`
/// references and `IsNot` are sugar over Boolean domains; they are resolved
/// against a [`Signature`] when a model is built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExprAst {
    /// A value literal from the target variable's range.
    Lit(String),
    /// Bare Boolean reference, sugar for `Var == 1`.
    Var(String),
    Is(String, String),
    IsNot(String, String),
    Not(Box<ExprAst>),
    And(Box<ExprAst>, Box<ExprAst>),
    Or(Box<ExprAst>, Box<ExprAst>),
    /// Ordered guard -> value arms with a mandatory else value.
    Case {
        arms: Vec<(ExprAst, String)>,
        default: String,
    },
}

impl ExprAst {
    pub fn var(name: &str) -> Self {
        ExprAst::Var(name.to_string())
    }
    pub fn lit(value: &str) -> Self {
        ExprAst::Lit(value.to_string())
    }
    pub fn is(name: &str, value: &str) -> Self {
        ExprAst::Is(name.to_string(), value.to_string())
    }
    pub fn is_not(name: &str, value: &str) -> Self {
        ExprAst::IsNot(name.to_string(), value.to_string())
    }
    pub fn not(e: ExprAst) -> Self {
        ExprAst::Not(Box::new(e))
    }
    pub fn and(a: ExprAst, b: ExprAst) -> Self {
        ExprAst::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: ExprAst, b: ExprAst) -> Self {
        ExprAst::Or(Box::new(a), Box::new(b))
    }
}

/// Bound expression: variables and values resolved to indices. Boolean
/// positions evaluate to range index 0/1, which coincides with the token
/// because the Boolean range is exactly `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Expr {
    Lit(Value),
    Is(VarId, Value),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Case {
        arms: Vec<(Expr, Value)>,
        default: Value,
    },
}

impl Expr {
    fn eval(&self, values: &[Value]) -> Value {
        match self {
            Expr::Lit(v) => *v,
            Expr::Is(var, v) => (values[var.index()] == *v) as Value,
            Expr::Not(e) => (e.eval(values) == 0) as Value,
            Expr::And(a, b) => (a.eval(values) == 1 && b.eval(values) == 1) as Value,
            Expr::Or(a, b) => (a.eval(values) == 1 || b.eval(values) == 1) as Value,
            Expr::Case { arms, default } => arms
                .iter()
                .find(|(guard, _)| guard.eval(values) == 1)
                .map(|(_, v)| *v)
                .unwrap_or(*default),
        }
    }

    fn referenced(&self, out: &mut BTreeSet<VarId>) {
        match self {
            Expr::Lit(_) => {}
            Expr::Is(var, _) => {
                out.insert(*var);
            }
            Expr::Not(e) => e.referenced(out),
            Expr::And(a, b) | Expr::Or(a, b) => {
                a.referenced(out);
                b.referenced(out);
            }
            Expr::Case { arms, .. } => {
                for (guard, _) in arms {
                    guard.referenced(out);
                }
            }
        }
    }
}

/// What kind of atoms a Boolean position may test.
#[derive(Clone, Copy, PartialEq, Eq)]
enum AtomScope {
    /// Equations may read any variable.
    AnyVariable,
    /// Causal formulas test endogenous variables only.
    EndogenousOnly,
}

fn bind_bool(ast: &ExprAst, sig: &Signature, scope: AtomScope, at: &str) -> Result<Expr, ModelError> {
    let atom = |name: &str, value: &str| -> Result<Expr, ModelError> {
        let var = sig.require_var(name)?;
        if scope == AtomScope::EndogenousOnly && !sig.is_endogenous(var) {
            return Err(ModelError::NotEndogenous(name.to_string()));
        }
        let v = sig.value_index(var, value)?;
        Ok(Expr::Is(var, v))
    };
    match ast {
        ExprAst::Lit(tok) if tok == "0" => Ok(Expr::Lit(0)),
        ExprAst::Lit(tok) if tok == "1" => Ok(Expr::Lit(1)),
        ExprAst::Lit(_) | ExprAst::Case { .. } => {
            Err(ModelError::NotBooleanValued(at.to_string()))
        }
        ExprAst::Var(name) => {
            let var = sig.require_var(name)?;
            if scope == AtomScope::EndogenousOnly && !sig.is_endogenous(var) {
                return Err(ModelError::NotEndogenous(name.clone()));
            }
            if !sig.is_boolean(var) {
                return Err(ModelError::NotBoolean(name.clone()));
            }
            Ok(Expr::Is(var, 1))
        }
        ExprAst::Is(name, value) => atom(name, value),
        ExprAst::IsNot(name, value) => Ok(Expr::Not(Box::new(atom(name, value)?))),
        ExprAst::Not(e) => Ok(Expr::Not(Box::new(bind_bool(e, sig, scope, at)?))),
        ExprAst::And(a, b) => Ok(Expr::And(
            Box::new(bind_bool(a, sig, scope, at)?),
            Box::new(bind_bool(b, sig, scope, at)?),
        )),
        ExprAst::Or(a, b) => Ok(Expr::Or(
            Box::new(bind_bool(a, sig, scope, at)?),
            Box::new(bind_bool(b, sig, scope, at)?),
        )),
    }
}

/// Binds an equation right-hand side for `target`: the expression must yield
/// a value in the target's range for every assignment.
fn bind_value(ast: &ExprAst, sig: &Signature, target: VarId) -> Result<Expr, ModelError> {
    match ast {
        ExprAst::Lit(tok) => Ok(Expr::Lit(sig.value_index(target, tok)?)),
        ExprAst::Case { arms, default } => {
            let mut bound = Vec::with_capacity(arms.len());
            for (guard, value) in arms {
                bound.push((
                    bind_bool(guard, sig, AtomScope::AnyVariable, sig.name(target))?,
                    sig.value_index(target, value)?,
                ));
            }
            Ok(Expr::Case {
                arms: bound,
                default: sig.value_index(target, default)?,
            })
        }
        _ => {
            if !sig.is_boolean(target) {
                return Err(ModelError::NotBooleanValued(sig.name(target).to_string()));
            }
            bind_bool(ast, sig, AtomScope::AnyVariable, sig.name(target))
        }
    }
}

/// Total assignment of every exogenous variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Context {
    signature: Arc<Signature>,
    values: Vec<Value>, // parallel to signature.exogenous()
}

impl Context {
    pub fn new(signature: Arc<Signature>, pairs: &[(&str, &str)]) -> Result<Self, ModelError> {
        let mut map = HashMap::new();
        for (name, value) in pairs {
            let var = signature.require_var(name)?;
            if !signature.is_exogenous(var) {
                return Err(ModelError::NotEndogenous(name.to_string())); // exogenous expected
            }
            let v = signature.value_index(var, value)?;
            if map.insert(var, v).is_some() {
                return Err(ModelError::DuplicateVariable(name.to_string()));
            }
        }
        let mut values = Vec::with_capacity(signature.exogenous().len());
        for &u in signature.exogenous() {
            match map.get(&u) {
                Some(&v) => values.push(v),
                None => {
                    return Err(ModelError::IncompleteContext(
                        signature.name(u).to_string(),
                    ))
                }
            }
        }
        Ok(Context { signature, values })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        let var = self.signature.var(name)?;
        let pos = self.signature.exogenous().iter().position(|&u| u == var)?;
        Some(self.signature.value_token(var, self.values[pos]))
    }

    pub(crate) fn values(&self) -> &[Value] {
        &self.values
    }
}

/// Total assignment of every variable; the unique solution of a model's
/// equations in a context.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    signature: Arc<Signature>,
    values: Vec<Value>, // indexed by VarId
}

impl Assignment {
    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn value(&self, id: VarId) -> Value {
        self.values[id.index()]
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        let var = self.signature.var(name)?;
        Some(self.signature.value_token(var, self.value(var)))
    }

    /// `(name, value-token)` pairs in declaration order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.values.iter().enumerate().map(move |(i, &v)| {
            let id = VarId(i as u32);
            (self.signature.name(id), self.signature.value_token(id, v))
        })
    }

    pub(crate) fn values(&self) -> &[Value] {
        &self.values
    }
}

/// An acyclic structural causal model. Intervened variables carry a fixed
/// constant instead of an equation; interventions never mutate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalModel {
    signature: Arc<Signature>,
    equations: Vec<Option<Expr>>,
    fixed: Vec<Option<Value>>,
    parents: Vec<Vec<VarId>>,
    children: Vec<Vec<VarId>>,
    topo: Vec<VarId>,
}

/// Validates equations against the signature and derives the syntactic
/// parent graph, rejecting cycles.
pub fn build_model(
    signature: Arc<Signature>,
    equations: Vec<(String, ExprAst)>,
) -> Result<CausalModel, ModelError> {
    let n = signature.num_vars();
    let mut bound: Vec<Option<Expr>> = vec![None; n];
    for (name, ast) in &equations {
        let var = signature.require_var(name)?;
        if !signature.is_endogenous(var) {
            return Err(ModelError::UnexpectedEquation(name.clone()));
        }
        if bound[var.index()].is_some() {
            return Err(ModelError::DuplicateVariable(name.clone()));
        }
        bound[var.index()] = Some(bind_value(ast, &signature, var)?);
    }
    for &v in signature.endogenous() {
        if bound[v.index()].is_none() {
            return Err(ModelError::MissingEquation(signature.name(v).to_string()));
        }
    }
    CausalModel::assemble(signature, bound, vec![None; n])
}

impl CausalModel {
    fn assemble(
        signature: Arc<Signature>,
        equations: Vec<Option<Expr>>,
        fixed: Vec<Option<Value>>,
    ) -> Result<Self, ModelError> {
        let n = signature.num_vars();
        let mut parents: Vec<Vec<VarId>> = vec![Vec::new(); n];
        for i in 0..n {
            if let Some(eq) = &equations[i] {
                let mut refs = BTreeSet::new();
                eq.referenced(&mut refs);
                parents[i] = refs.into_iter().collect();
            }
        }
        let mut children: Vec<Vec<VarId>> = vec![Vec::new(); n];
        // declaration order of children follows declaration order of the
        // child variables, which VarId ordering already provides
        for &child in signature.endogenous() {
            for &p in &parents[child.index()] {
                children[p.index()].push(child);
            }
        }
        let topo = toposort(&signature, &parents)?;
        Ok(CausalModel {
            signature,
            equations,
            fixed,
            parents,
            children,
            topo,
        })
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    /// Syntactic parents of `var` under the current equations (empty for
    /// exogenous and fixed variables).
    pub fn parents(&self, var: VarId) -> &[VarId] {
        &self.parents[var.index()]
    }

    /// Endogenous variables whose equation references `var`, in declaration
    /// order.
    pub fn children(&self, var: VarId) -> &[VarId] {
        &self.children[var.index()]
    }

    pub fn fixed_value(&self, var: VarId) -> Option<Value> {
        self.fixed[var.index()]
    }

    pub(crate) fn equation(&self, var: VarId) -> Option<&Expr> {
        self.equations[var.index()].as_ref()
    }

    /// Returns a new model with each target's equation replaced by the given
    /// constant; later interventions overwrite earlier ones on the same
    /// variable. Targets must be distinct within one call.
    pub fn intervene(&self, targets: &[(&str, &str)]) -> Result<CausalModel, ModelError> {
        let mut resolved = Vec::with_capacity(targets.len());
        let mut seen = BTreeSet::new();
        for (name, value) in targets {
            let var = self.signature.require_var(name)?;
            if self.signature.is_exogenous(var) {
                return Err(ModelError::ExogenousIntervention(name.to_string()));
            }
            if !seen.insert(var) {
                return Err(ModelError::DuplicateTarget(name.to_string()));
            }
            resolved.push((var, self.signature.value_index(var, value)?));
        }
        Ok(self.intervene_ids(&resolved))
    }

    pub(crate) fn intervene_ids(&self, targets: &[(VarId, Value)]) -> CausalModel {
        if targets.is_empty() {
            return self.clone();
        }
        let mut equations = self.equations.clone();
        let mut fixed = self.fixed.clone();
        for &(var, value) in targets {
            equations[var.index()] = None;
            fixed[var.index()] = Some(value);
        }
        // removing edges from a DAG cannot create a cycle
        CausalModel::assemble(self.signature.clone(), equations, fixed)
            .expect("intervention preserves acyclicity")
    }

    pub fn solve(&self, context: &Context) -> Result<Assignment, ModelError> {
        if !Arc::ptr_eq(context.signature(), &self.signature)
            && *context.signature().as_ref() != *self.signature
        {
            return Err(ModelError::SignatureMismatch);
        }
        Ok(self.solve_with(context, &[]))
    }

    /// Solves with extra interventions applied on top of the model's fixed
    /// map, without cloning the model. Removing incoming edges keeps the
    /// existing topological order valid.
    pub(crate) fn solve_with(&self, context: &Context, overrides: &[(VarId, Value)]) -> Assignment {
        let mut values = vec![0 as Value; self.signature.num_vars()];
        for (pos, &u) in self.signature.exogenous().iter().enumerate() {
            values[u.index()] = context.values()[pos];
        }
        let lookup = |var: VarId| -> Option<Value> {
            overrides
                .iter()
                .rev()
                .find(|(v, _)| *v == var)
                .map(|&(_, val)| val)
        };
        for &v in &self.topo {
            values[v.index()] = if let Some(val) = lookup(v) {
                val
            } else if let Some(val) = self.fixed[v.index()] {
                val
            } else {
                self.equations[v.index()]
                    .as_ref()
                    .expect("non-fixed endogenous variable has an equation")
                    .eval(&values)
            };
        }
        Assignment {
            signature: self.signature.clone(),
            values,
        }
    }
}

fn toposort(signature: &Signature, parents: &[Vec<VarId>]) -> Result<Vec<VarId>, ModelError> {
    // Kahn's algorithm over endogenous variables with declaration-order
    // tie-breaking, so solving is deterministic.
    let mut indegree: HashMap<VarId, usize> = HashMap::new();
    for &v in signature.endogenous() {
        let deg = parents[v.index()]
            .iter()
            .filter(|p| signature.is_endogenous(**p))
            .count();
        indegree.insert(v, deg);
    }
    let mut ready: BTreeSet<VarId> = indegree
        .iter()
        .filter(|(_, &d)| d == 0)
        .map(|(&v, _)| v)
        .collect();
    let mut order = Vec::with_capacity(indegree.len());
    while let Some(&v) = ready.iter().next() {
        ready.remove(&v);
        order.push(v);
        for &child in signature.endogenous() {
            if parents[child.index()].contains(&v) {
                let d = indegree.get_mut(&child).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(child);
                }
            }
        }
    }
    if order.len() < indegree.len() {
        let mut cycle: Vec<String> = indegree
            .iter()
            .filter(|(v, _)| !order.contains(v))
            .map(|(&v, _)| v)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .map(|v| signature.name(v).to_string())
            .collect();
        cycle.sort();
        return Err(ModelError::Cycle(cycle));
    }
    Ok(order)
}

/// `[Y1 <- y1, ..., Yk <- yk] phi`: a list of distinct endogenous
/// interventions and a Boolean body over endogenous atoms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalFormula {
    interventions: Vec<(VarId, Value)>,
    body: Expr,
}

impl CausalFormula {
    pub fn new(
        signature: &Signature,
        interventions: &[(&str, &str)],
        body: &ExprAst,
    ) -> Result<Self, ModelError> {
        let mut resolved = Vec::with_capacity(interventions.len());
        let mut seen = BTreeSet::new();
        for (name, value) in interventions {
            let var = signature.require_var(name)?;
            if signature.is_exogenous(var) {
                return Err(ModelError::ExogenousIntervention(name.to_string()));
            }
            if !seen.insert(var) {
                return Err(ModelError::DuplicateTarget(name.to_string()));
            }
            resolved.push((var, signature.value_index(var, value)?));
        }
        let body = bind_bool(body, signature, AtomScope::EndogenousOnly, "formula")?;
        Ok(CausalFormula {
            interventions: resolved,
            body,
        })
    }
}

/// `(M, u) |= [Y <- y] phi`: applies the formula's interventions, solves,
/// and evaluates the Boolean body against the solution.
pub fn evaluate(
    model: &CausalModel,
    context: &Context,
    formula: &CausalFormula,
) -> Result<bool, ModelError> {
    if *context.signature().as_ref() != *model.signature().as_ref() {
        return Err(ModelError::SignatureMismatch);
    }
    let solution = model.solve_with(context, &formula.interventions);
    Ok(formula.body.eval(solution.values()) == 1)
}
