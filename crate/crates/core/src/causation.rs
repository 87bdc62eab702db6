//! Actual-causation relations with explicit witnesses.
//!
//! Four definitions are implemented over a causal setting `(M, u)`:
//! sufficiency and direct NESS (a necessary element of an actually-realized
//! sufficient set), NESS along a parent-child path, CNESS (a NESS cause whose
//! counterfactual value would not NESS-cause the effect along any subpath),
//! and the modified HP definition (minimal conjunctions with a frozen
//! witness set).
//!
//! Everything enumerates in a canonical order — subsets by size then
//! declaration order, assignments and counterfactual values in range
//! declaration order, paths by depth-first search over declaration-ordered
//! children — and returns the first witness found, so verdicts are
//! reproducible.

use crate::model::{Assignment, CausalModel, Context, ModelError, Value, VarId};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

/// Default cap on the endogenous state space (`2^20`); every definition here
/// is exponential and desk scale is the contract.
pub const DEFAULT_MAX_STATES: u64 = 1 << 20;

/// Enumeration guards for the exponential searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    /// Refuse models whose endogenous assignment count exceeds this.
    pub max_states: u64,
    /// Largest HP conjunct set searched; `None` means all endogenous
    /// variables minus the effect.
    pub max_conjuncts: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: DEFAULT_MAX_STATES,
            max_conjuncts: None,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum QueryError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("state space of {states} endogenous assignments exceeds the cap of {cap}")]
    StateSpaceExceeded { states: u128, cap: u64 },
    #[error("effect variable `{0}` appears in the candidate set")]
    EffectInSet(String),
    #[error("cause and effect use the same variable `{0}`")]
    SameVariable(String),
    #[error("effect {variable}={value} does not hold in the actual setting")]
    EffectNotActual { variable: String, value: String },
    #[error("duplicate event variable `{0}`")]
    DuplicateEvent(String),
    #[error("no HP cause found within the conjunct-size cap of {cap}; raise the cap to decide")]
    ConjunctCapExceeded { cap: usize },
    #[error("epistemic state has no worlds")]
    EmptyEpistemicState,
    #[error("world weights sum to {0}, expected 1")]
    WeightSum(String),
    #[error("negative world weight {0}")]
    NegativeWeight(String),
}

/// An atomic event `X = x` over an endogenous variable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Event {
    pub variable: String,
    pub value: String,
}

impl Event {
    pub fn new(variable: &str, value: &str) -> Self {
        Event {
            variable: variable.to_string(),
            value: value.to_string(),
        }
    }

    /// Parses a `Var=value` token.
    pub fn parse(token: &str) -> Option<Event> {
        let (var, value) = token.split_once('=')?;
        let (var, value) = (var.trim(), value.trim());
        if var.is_empty() || value.is_empty() {
            return None;
        }
        Some(Event::new(var, value))
    }

    fn resolve(&self, model: &CausalModel) -> Result<(VarId, Value), QueryError> {
        let sig = model.signature();
        let var = sig.require_var(&self.variable)?;
        if !sig.is_endogenous(var) {
            return Err(QueryError::Model(ModelError::NotEndogenous(
                self.variable.clone(),
            )));
        }
        let value = sig.value_index(var, &self.value)?;
        Ok((var, value))
    }
}

impl std::fmt::Display for Event {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}={}", self.variable, self.value)
    }
}

/// A directed path of distinct endogenous variables; consecutive variables
/// are parent and child in the model's syntactic graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalPath {
    pub variables: Vec<String>,
}

impl std::fmt::Display for CausalPath {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{{}}}", self.variables.join(","))
    }
}

/// Evidence attached to a positive verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// `W = w`: the set completing the sufficient set, at actual values.
    DirectNess { support: Vec<Event> },
    /// The first actual path of direct-NESS causes.
    Ness { path: CausalPath },
    /// The actual path plus the counterfactual value that NESS-causes the
    /// effect along no subpath.
    Cness {
        path: CausalPath,
        counterfactual: String,
    },
    /// The passing conjunct set with its frozen witness set and flip setting.
    Hp {
        conjuncts: Vec<Event>,
        support: Vec<Event>,
        flip: Vec<Event>,
    },
}

/// A causation verdict; `witness` is populated exactly when `holds` and is
/// the first witness in canonical enumeration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CausalVerdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl CausalVerdict {
    fn negative() -> Self {
        CausalVerdict {
            holds: false,
            witness: None,
        }
    }

    fn positive(witness: Witness) -> Self {
        CausalVerdict {
            holds: true,
            witness: Some(witness),
        }
    }
}

/// Selects one of the four causation definitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CausationDef {
    DirectNess,
    Ness,
    Cness,
    Hp,
}

impl CausationDef {
    pub const ALL: [CausationDef; 4] = [
        CausationDef::DirectNess,
        CausationDef::Ness,
        CausationDef::Cness,
        CausationDef::Hp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CausationDef::DirectNess => "direct-ness",
            CausationDef::Ness => "ness",
            CausationDef::Cness => "cness",
            CausationDef::Hp => "hp",
        }
    }
}

impl std::fmt::Display for CausationDef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CausationDef {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "direct-ness" | "direct_ness" | "dness" => Ok(CausationDef::DirectNess),
            "ness" => Ok(CausationDef::Ness),
            "cness" => Ok(CausationDef::Cness),
            "hp" => Ok(CausationDef::Hp),
            other => Err(format!(
                "unknown causation definition `{other}` (expected direct-ness, ness, cness, or hp)"
            )),
        }
    }
}

fn check_cap(model: &CausalModel, limits: &Limits) -> Result<(), QueryError> {
    let states = model.signature().endogenous_state_count();
    if states > limits.max_states as u128 {
        return Err(QueryError::StateSpaceExceeded {
            states,
            cap: limits.max_states,
        });
    }
    Ok(())
}

/// Odometer over the cross-product of ranges, first position most
/// significant; yields assignments in range declaration order.
struct Assignments {
    sizes: Vec<usize>,
    current: Option<Vec<Value>>,
}

impl Assignments {
    fn new(sizes: Vec<usize>) -> Self {
        let current = if sizes.iter().all(|&s| s > 0) {
            Some(vec![0; sizes.len()])
        } else {
            None
        };
        Assignments { sizes, current }
    }
}

impl Iterator for Assignments {
    type Item = Vec<Value>;

    fn next(&mut self) -> Option<Vec<Value>> {
        let current = self.current.as_mut()?;
        let out = current.clone();
        let mut i = self.sizes.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            if (current[i] as usize) + 1 < self.sizes[i] {
                current[i] += 1;
                for slot in current.iter_mut().skip(i + 1) {
                    *slot = 0;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Subsets of `0..n` by size, then lexicographically by index; the canonical
/// witness-set enumeration order.
struct Subsets {
    n: usize,
    size: usize,
    combo: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize) -> Self {
        Subsets {
            n,
            size: 0,
            combo: Some(Vec::new()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let combo = self.combo.take()?;
        let out = combo.clone();
        // advance the combination of the current size
        let mut next = combo;
        let mut i = self.size;
        let advanced = loop {
            if i == 0 {
                break false;
            }
            i -= 1;
            if next[i] < self.n - (self.size - i) {
                next[i] += 1;
                for j in i + 1..self.size {
                    next[j] = next[j - 1] + 1;
                }
                break true;
            }
        };
        if advanced {
            self.combo = Some(next);
        } else if self.size < self.n {
            self.size += 1;
            self.combo = Some((0..self.size).collect());
        } else {
            self.combo = None;
        }
        Some(out)
    }
}

fn event_of(model: &CausalModel, var: VarId, value: Value) -> Event {
    let sig = model.signature();
    Event::new(sig.name(var), sig.value_token(var, value))
}

/// Id-level sufficiency: `set` forces `effect` under every assignment of the
/// remaining endogenous variables.
fn sufficient_ids(
    model: &CausalModel,
    context: &Context,
    set: &[(VarId, Value)],
    effect: (VarId, Value),
) -> bool {
    let sig = model.signature();
    let excluded: BTreeSet<VarId> = set
        .iter()
        .map(|&(v, _)| v)
        .chain(std::iter::once(effect.0))
        .collect();
    let quantified: Vec<VarId> = sig
        .endogenous()
        .iter()
        .copied()
        .filter(|v| !excluded.contains(v))
        .collect();
    let sizes: Vec<usize> = quantified.iter().map(|&v| sig.range(v).len()).collect();
    let mut overrides: Vec<(VarId, Value)> = set.to_vec();
    let base = overrides.len();
    overrides.extend(quantified.iter().map(|&v| (v, 0)));
    for values in Assignments::new(sizes) {
        for (slot, value) in overrides[base..].iter_mut().zip(values) {
            slot.1 = value;
        }
        let solution = model.solve_with(context, &overrides);
        if solution.value(effect.0) != effect.1 {
            return false;
        }
    }
    true
}

/// Whether `X=x` together with `W` at actual values is sufficient while `W`
/// alone is not (DN2 and DN3); DN1 is checked by the caller.
fn direct_ness_with(
    model: &CausalModel,
    context: &Context,
    actual: &Assignment,
    cause: (VarId, Value),
    effect: (VarId, Value),
) -> Option<Vec<(VarId, Value)>> {
    let sig = model.signature();
    if actual.value(cause.0) != cause.1 || actual.value(effect.0) != effect.1 {
        return None;
    }
    let candidates: Vec<VarId> = sig
        .endogenous()
        .iter()
        .copied()
        .filter(|&v| v != cause.0 && v != effect.0)
        .collect();
    for indices in Subsets::new(candidates.len()) {
        let support: Vec<(VarId, Value)> = indices
            .iter()
            .map(|&i| (candidates[i], actual.value(candidates[i])))
            .collect();
        let mut with_cause = Vec::with_capacity(support.len() + 1);
        with_cause.push(cause);
        with_cause.extend_from_slice(&support);
        if sufficient_ids(model, context, &with_cause, effect)
            && !sufficient_ids(model, context, &support, effect)
        {
            return Some(support);
        }
    }
    None
}

type LinkMemo = HashMap<(VarId, VarId), bool>;

fn direct_link(
    model: &CausalModel,
    context: &Context,
    actual: &Assignment,
    from: VarId,
    to: VarId,
    memo: &mut LinkMemo,
) -> bool {
    if let Some(&known) = memo.get(&(from, to)) {
        return known;
    }
    let holds = direct_ness_with(
        model,
        context,
        actual,
        (from, actual.value(from)),
        (to, actual.value(to)),
    )
    .is_some();
    memo.insert((from, to), holds);
    holds
}

/// All paths of direct-NESS causes from `cause` to `effect`, in depth-first
/// order over declaration-ordered children. Values along the path are read
/// from the actual solution.
fn ness_paths_ids(
    model: &CausalModel,
    context: &Context,
    actual: &Assignment,
    cause: (VarId, Value),
    effect: (VarId, Value),
) -> Vec<Vec<VarId>> {
    if actual.value(cause.0) != cause.1 || actual.value(effect.0) != effect.1 {
        return Vec::new();
    }
    let mut memo = LinkMemo::new();
    let mut out = Vec::new();
    let mut path = vec![cause.0];
    dfs_paths(
        model, context, actual, cause.0, effect.0, &mut path, &mut out, &mut memo,
    );
    out
}

#[allow(clippy::too_many_arguments)]
fn dfs_paths(
    model: &CausalModel,
    context: &Context,
    actual: &Assignment,
    current: VarId,
    effect: VarId,
    path: &mut Vec<VarId>,
    out: &mut Vec<Vec<VarId>>,
    memo: &mut LinkMemo,
) {
    for &child in model.children(current) {
        if path.contains(&child) {
            continue;
        }
        if !direct_link(model, context, actual, current, child, memo) {
            continue;
        }
        if child == effect {
            let mut found = path.clone();
            found.push(child);
            out.push(found);
            continue;
        }
        path.push(child);
        dfs_paths(model, context, actual, child, effect, path, out, memo);
        path.pop();
    }
}

fn path_names(model: &CausalModel, path: &[VarId]) -> CausalPath {
    CausalPath {
        variables: path
            .iter()
            .map(|&v| model.signature().name(v).to_string())
            .collect(),
    }
}

fn resolve_pair(
    model: &CausalModel,
    cause: &Event,
    effect: &Event,
) -> Result<((VarId, Value), (VarId, Value)), QueryError> {
    let c = cause.resolve(model)?;
    let e = effect.resolve(model)?;
    if c.0 == e.0 {
        return Err(QueryError::SameVariable(cause.variable.clone()));
    }
    Ok((c, e))
}

/// Def. Sufficiency: `set` forces `effect` for every assignment of the
/// remaining endogenous variables (exhaustive enumeration).
pub fn is_sufficient(
    model: &CausalModel,
    context: &Context,
    set: &[Event],
    effect: &Event,
    limits: &Limits,
) -> Result<bool, QueryError> {
    check_cap(model, limits)?;
    let e = effect.resolve(model)?;
    let mut resolved = Vec::with_capacity(set.len());
    let mut seen = BTreeSet::new();
    for event in set {
        let (var, value) = event.resolve(model)?;
        if var == e.0 {
            return Err(QueryError::EffectInSet(effect.variable.clone()));
        }
        if !seen.insert(var) {
            return Err(QueryError::DuplicateEvent(event.variable.clone()));
        }
        resolved.push((var, value));
    }
    Ok(sufficient_ids(model, context, &resolved, e))
}

/// Def. Direct NESS: `cause` is an actual, necessary member of an
/// actually-realized sufficient set for `effect`. The witness is the
/// lexicographically-first completing set `W = w`.
pub fn direct_ness_cause(
    model: &CausalModel,
    context: &Context,
    cause: &Event,
    effect: &Event,
    limits: &Limits,
) -> Result<CausalVerdict, QueryError> {
    check_cap(model, limits)?;
    let (c, e) = resolve_pair(model, cause, effect)?;
    let actual = model.solve(context)?;
    match direct_ness_with(model, context, &actual, c, e) {
        Some(support) => Ok(CausalVerdict::positive(Witness::DirectNess {
            support: support
                .into_iter()
                .map(|(v, val)| event_of(model, v, val))
                .collect(),
        })),
        None => Ok(CausalVerdict::negative()),
    }
}

/// Def. NESS: all paths along which `cause` transmits direct-NESS causation
/// to `effect`; an empty list means `cause` is not a NESS cause.
pub fn ness_cause(
    model: &CausalModel,
    context: &Context,
    cause: &Event,
    effect: &Event,
    limits: &Limits,
) -> Result<Vec<CausalPath>, QueryError> {
    check_cap(model, limits)?;
    let (c, e) = resolve_pair(model, cause, effect)?;
    let actual = model.solve(context)?;
    Ok(ness_paths_ids(model, context, &actual, c, e)
        .into_iter()
        .map(|p| path_names(model, &p))
        .collect())
}

/// Def. CNESS: some actual NESS path `p` and counterfactual value `x'` exist
/// such that `X=x'` NESS-causes the effect along no subpath of `p` in the
/// intervened setting. Subpaths compare variable sets.
pub fn cness_cause(
    model: &CausalModel,
    context: &Context,
    cause: &Event,
    effect: &Event,
    limits: &Limits,
) -> Result<CausalVerdict, QueryError> {
    check_cap(model, limits)?;
    let (c, e) = resolve_pair(model, cause, effect)?;
    let actual = model.solve(context)?;
    let paths = ness_paths_ids(model, context, &actual, c, e);
    let sig = model.signature();
    for path in &paths {
        let path_set: BTreeSet<VarId> = path.iter().copied().collect();
        for flip in 0..sig.range(c.0).len() as Value {
            if flip == c.1 {
                continue;
            }
            let counterfactual = model.intervene_ids(&[(c.0, flip)]);
            let cf_actual = counterfactual.solve_with(context, &[]);
            let cf_paths = ness_paths_ids(&counterfactual, context, &cf_actual, (c.0, flip), e);
            let blocked = cf_paths
                .iter()
                .any(|p| p.iter().all(|v| path_set.contains(v)));
            if !blocked {
                return Ok(CausalVerdict::positive(Witness::Cness {
                    path: path_names(model, path),
                    counterfactual: sig.value_token(c.0, flip).to_string(),
                }));
            }
        }
    }
    Ok(CausalVerdict::negative())
}

/// AC2 search: a witness set `W` at actual values and a flip setting for the
/// conjuncts under which the effect fails. `W` enumerates by size then
/// declaration order; flips in range declaration order.
fn ac2_search(
    model: &CausalModel,
    context: &Context,
    actual: &Assignment,
    conjuncts: &[VarId],
    effect: (VarId, Value),
) -> Option<(Vec<(VarId, Value)>, Vec<Value>)> {
    let sig = model.signature();
    let in_conjuncts: BTreeSet<VarId> = conjuncts.iter().copied().collect();
    let candidates: Vec<VarId> = sig
        .endogenous()
        .iter()
        .copied()
        .filter(|v| *v != effect.0 && !in_conjuncts.contains(v))
        .collect();
    let flip_sizes: Vec<usize> = conjuncts.iter().map(|&v| sig.range(v).len()).collect();
    for indices in Subsets::new(candidates.len()) {
        let support: Vec<(VarId, Value)> = indices
            .iter()
            .map(|&i| (candidates[i], actual.value(candidates[i])))
            .collect();
        for flip in Assignments::new(flip_sizes.clone()) {
            let mut overrides: Vec<(VarId, Value)> = conjuncts
                .iter()
                .zip(&flip)
                .map(|(&v, &val)| (v, val))
                .collect();
            overrides.extend_from_slice(&support);
            let solution = model.solve_with(context, &overrides);
            if solution.value(effect.0) != effect.1 {
                return Some((support, flip));
            }
        }
    }
    None
}

/// AC1 + AC2 + AC3 for a fixed conjunct variable set at actual values.
fn hp_set_ids(
    model: &CausalModel,
    context: &Context,
    actual: &Assignment,
    conjuncts: &[VarId],
    effect: (VarId, Value),
) -> Option<(Vec<(VarId, Value)>, Vec<Value>)> {
    let witness = ac2_search(model, context, actual, conjuncts, effect)?;
    // AC3: no strict subset satisfies AC2 (the empty set never can, since
    // freezing actual values reproduces the actual solution)
    for indices in Subsets::new(conjuncts.len()) {
        if indices.is_empty() || indices.len() == conjuncts.len() {
            continue;
        }
        let subset: Vec<VarId> = indices.iter().map(|&i| conjuncts[i]).collect();
        if ac2_search(model, context, actual, &subset, effect).is_some() {
            return None;
        }
    }
    Some(witness)
}

/// Modified HP over an explicit conjunct set `X = x`.
pub fn hp_cause_set(
    model: &CausalModel,
    context: &Context,
    conjuncts: &[Event],
    effect: &Event,
    limits: &Limits,
) -> Result<CausalVerdict, QueryError> {
    check_cap(model, limits)?;
    let e = effect.resolve(model)?;
    let mut vars = Vec::with_capacity(conjuncts.len());
    let mut seen = BTreeSet::new();
    let mut values = Vec::with_capacity(conjuncts.len());
    for event in conjuncts {
        let (var, value) = event.resolve(model)?;
        if var == e.0 {
            return Err(QueryError::EffectInSet(effect.variable.clone()));
        }
        if !seen.insert(var) {
            return Err(QueryError::DuplicateEvent(event.variable.clone()));
        }
        vars.push(var);
        values.push(value);
    }
    let actual = model.solve(context)?;
    // AC1
    if actual.value(e.0) != e.1
        || vars
            .iter()
            .zip(&values)
            .any(|(&v, &val)| actual.value(v) != val)
    {
        return Ok(CausalVerdict::negative());
    }
    match hp_set_ids(model, context, &actual, &vars, e) {
        Some((support, flip)) => Ok(CausalVerdict::positive(Witness::Hp {
            conjuncts: conjuncts.to_vec(),
            support: support
                .into_iter()
                .map(|(v, val)| event_of(model, v, val))
                .collect(),
            flip: vars
                .iter()
                .zip(&flip)
                .map(|(&v, &val)| event_of(model, v, val))
                .collect(),
        })),
        None => Ok(CausalVerdict::negative()),
    }
}

/// Atomic HP causation: `cause` appears in some HP-cause conjunct set.
/// Conjunct sets enumerate at actual values, by size then declaration order,
/// up to `limits.max_conjuncts`.
pub fn hp_atomic_cause(
    model: &CausalModel,
    context: &Context,
    cause: &Event,
    effect: &Event,
    limits: &Limits,
) -> Result<CausalVerdict, QueryError> {
    check_cap(model, limits)?;
    let (c, e) = resolve_pair(model, cause, effect)?;
    let actual = model.solve(context)?;
    if actual.value(c.0) != c.1 || actual.value(e.0) != e.1 {
        return Ok(CausalVerdict::negative());
    }
    let sig = model.signature();
    let candidates: Vec<VarId> = sig
        .endogenous()
        .iter()
        .copied()
        .filter(|&v| v != e.0)
        .collect();
    let full = candidates.len();
    let cap = limits.max_conjuncts.unwrap_or(full).min(full);
    let mut truncated = false;
    for indices in Subsets::new(candidates.len()) {
        let set: Vec<VarId> = indices.iter().map(|&i| candidates[i]).collect();
        if !set.contains(&c.0) {
            continue;
        }
        if set.len() > cap {
            truncated = true;
            continue;
        }
        if let Some((support, flip)) = hp_set_ids(model, context, &actual, &set, e) {
            return Ok(CausalVerdict::positive(Witness::Hp {
                conjuncts: set
                    .iter()
                    .map(|&v| event_of(model, v, actual.value(v)))
                    .collect(),
                support: support
                    .into_iter()
                    .map(|(v, val)| event_of(model, v, val))
                    .collect(),
                flip: set
                    .iter()
                    .zip(&flip)
                    .map(|(&v, &val)| event_of(model, v, val))
                    .collect(),
            }));
        }
    }
    if truncated {
        return Err(QueryError::ConjunctCapExceeded { cap });
    }
    Ok(CausalVerdict::negative())
}

/// Runs the selected definition; NESS verdicts hold when the path list is
/// nonempty and carry the first path as witness.
pub fn decide_cause(
    model: &CausalModel,
    context: &Context,
    cause: &Event,
    effect: &Event,
    definition: CausationDef,
    limits: &Limits,
) -> Result<CausalVerdict, QueryError> {
    match definition {
        CausationDef::DirectNess => direct_ness_cause(model, context, cause, effect, limits),
        CausationDef::Ness => {
            let paths = ness_cause(model, context, cause, effect, limits)?;
            Ok(match paths.into_iter().next() {
                Some(path) => CausalVerdict::positive(Witness::Ness { path }),
                None => CausalVerdict::negative(),
            })
        }
        CausationDef::Cness => cness_cause(model, context, cause, effect, limits),
        CausationDef::Hp => hp_atomic_cause(model, context, cause, effect, limits),
    }
}

/// Tests every atomic event at its actual value against the selected
/// definition, in declaration order.
pub fn find_causes(
    model: &CausalModel,
    context: &Context,
    effect: &Event,
    definition: CausationDef,
    limits: &Limits,
) -> Result<Vec<(Event, CausalVerdict)>, QueryError> {
    check_cap(model, limits)?;
    let e = effect.resolve(model)?;
    let actual = model.solve(context)?;
    if actual.value(e.0) != e.1 {
        return Err(QueryError::EffectNotActual {
            variable: effect.variable.clone(),
            value: effect.value.clone(),
        });
    }
    let sig = model.signature().clone();
    let mut out = Vec::new();
    for &v in sig.endogenous() {
        if v == e.0 {
            continue;
        }
        let cause = event_of(model, v, actual.value(v));
        let verdict = decide_cause(model, context, &cause, effect, definition, limits)?;
        out.push((cause, verdict));
    }
    Ok(out)
}

/// Re-checks a verdict's witness against the raw defining conditions.
/// Returns true for negative verdicts (nothing to check).
pub fn verify_witness(
    model: &CausalModel,
    context: &Context,
    cause: &Event,
    effect: &Event,
    verdict: &CausalVerdict,
) -> Result<bool, QueryError> {
    if !verdict.holds {
        return Ok(verdict.witness.is_none());
    }
    let e = effect.resolve(model)?;
    let actual = model.solve(context)?;
    match verdict.witness.as_ref() {
        Some(Witness::DirectNess { support }) => {
            let c = cause.resolve(model)?;
            let mut w = Vec::with_capacity(support.len());
            for event in support {
                let (var, value) = event.resolve(model)?;
                if actual.value(var) != value {
                    return Ok(false);
                }
                w.push((var, value));
            }
            let mut with_cause = vec![c];
            with_cause.extend_from_slice(&w);
            Ok(actual.value(c.0) == c.1
                && actual.value(e.0) == e.1
                && sufficient_ids(model, context, &with_cause, e)
                && !sufficient_ids(model, context, &w, e))
        }
        Some(Witness::Ness { path }) => verify_path(model, context, &actual, cause, effect, path),
        Some(Witness::Cness {
            path,
            counterfactual,
        }) => {
            let c = cause.resolve(model)?;
            if verify_path(model, context, &actual, cause, effect, path)? != true {
                return Ok(false);
            }
            let flip = model.signature().value_index(c.0, counterfactual)?;
            if flip == c.1 {
                return Ok(false);
            }
            let path_vars: BTreeSet<&str> = path.variables.iter().map(|s| s.as_str()).collect();
            let counterfactual_model = model.intervene_ids(&[(c.0, flip)]);
            let cf_actual = counterfactual_model.solve_with(context, &[]);
            let cf_paths =
                ness_paths_ids(&counterfactual_model, context, &cf_actual, (c.0, flip), e);
            let sig = model.signature();
            Ok(!cf_paths.iter().any(|p| {
                p.iter().all(|&v| path_vars.contains(sig.name(v)))
            }))
        }
        Some(Witness::Hp {
            conjuncts,
            support,
            flip,
        }) => {
            // AC1 + AC2 with the recorded witness; AC3 by re-running the
            // subset search
            let mut overrides = Vec::new();
            let mut vars = Vec::new();
            for (conjunct, flipped) in conjuncts.iter().zip(flip) {
                let (var, value) = conjunct.resolve(model)?;
                if actual.value(var) != value {
                    return Ok(false);
                }
                let (fvar, fvalue) = flipped.resolve(model)?;
                if fvar != var {
                    return Ok(false);
                }
                vars.push(var);
                overrides.push((var, fvalue));
            }
            for event in support {
                let (var, value) = event.resolve(model)?;
                if actual.value(var) != value {
                    return Ok(false);
                }
                overrides.push((var, value));
            }
            if actual.value(e.0) != e.1 {
                return Ok(false);
            }
            let solution = model.solve_with(context, &overrides);
            if solution.value(e.0) == e.1 {
                return Ok(false);
            }
            for indices in Subsets::new(vars.len()) {
                if indices.is_empty() || indices.len() == vars.len() {
                    continue;
                }
                let subset: Vec<VarId> = indices.iter().map(|&i| vars[i]).collect();
                if ac2_search(model, context, &actual, &subset, e).is_some() {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        None => Ok(false),
    }
}

fn verify_path(
    model: &CausalModel,
    context: &Context,
    actual: &Assignment,
    cause: &Event,
    effect: &Event,
    path: &CausalPath,
) -> Result<bool, QueryError> {
    let sig = model.signature();
    if path.variables.len() < 2
        || path.variables.first() != Some(&cause.variable)
        || path.variables.last() != Some(&effect.variable)
    {
        return Ok(false);
    }
    let mut ids = Vec::with_capacity(path.variables.len());
    for name in &path.variables {
        ids.push(sig.require_var(name)?);
    }
    let distinct: BTreeSet<VarId> = ids.iter().copied().collect();
    if distinct.len() != ids.len() {
        return Ok(false);
    }
    let c = cause.resolve(model)?;
    let e = effect.resolve(model)?;
    if actual.value(c.0) != c.1 || actual.value(e.0) != e.1 {
        return Ok(false);
    }
    for pair in ids.windows(2) {
        if !model.children(pair[0]).contains(&pair[1]) {
            return Ok(false);
        }
        if direct_ness_with(
            model,
            context,
            actual,
            (pair[0], actual.value(pair[0])),
            (pair[1], actual.value(pair[1])),
        )
        .is_none()
        {
            return Ok(false);
        }
    }
    Ok(true)
}
