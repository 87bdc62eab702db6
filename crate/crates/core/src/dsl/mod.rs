//! Textual format for models and scenarios.
//!
//! A model file has a `model { ... }` block of variable declarations, a
//! `context { ... }` block assigning every exogenous variable, and an
//! optional `outcome` statement. A scenario file adds `agent` blocks, each
//! naming an action variable and an epistemic distribution over worlds; a
//! world carries a weight plus context overrides (`U = 1`) and replacement
//! equations (`V := expr`) against the base model.
//!
//! ```text
//! model {
//!   exo U1 in {0, 1}
//!   exo U2 in {0, 1}
//!   var A1 in {0, 1} := U1
//!   var A2 in {0, 1} := U2
//!   var V in {0, 1} := A1 | A2
//! }
//!
//! context {
//!   U1 = 1
//!   U2 = 1
//! }
//!
//! outcome V == 1
//!
//! agent Assassin1 {
//!   action A1
//!   epistemic {
//!     world 0.7 { U2 = 1 }
//!     world 0.3 { U2 = 0 }
//!   }
//! }
//! ```
//!
//! Parsing recovers from errors and reports every diagnostic with a line,
//! column, and source excerpt. Serialization is canonical: parsing the
//! output of [`serialize`] reproduces the same [`Document`].

mod lex;
mod parse;
mod print;

pub use print::{document_from_model, serialize};

use crate::causation::Event;
use crate::model::{build_model, CausalModel, Context, Signature};
use crate::responsibility::{EpistemicState, Rational, ResponsibilitySetting, World};
use crate::ExprAst;
use std::collections::BTreeSet;
use std::sync::Arc;

/// How serious a diagnostic is; parsing currently only emits errors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Severity {
    Error,
    Warning,
}

/// A positioned message about the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceDiagnostic {
    pub severity: Severity,
    pub message: String,
    /// 1-based line number.
    pub line: usize,
    /// 1-based column number.
    pub column: usize,
    /// The full source line the diagnostic points at.
    pub excerpt: String,
}

impl std::fmt::Display for SourceDiagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "error: {} at {}:{}", self.message, self.line, self.column)?;
        write!(f, "  | {}", self.excerpt)
    }
}

fn diag(src: &str, line: usize, column: usize, message: &str) -> SourceDiagnostic {
    SourceDiagnostic {
        severity: Severity::Error,
        message: message.to_string(),
        line,
        column,
        excerpt: src.lines().nth(line.saturating_sub(1)).unwrap_or("").to_string(),
    }
}

/// One variable declaration; `equation: None` marks an exogenous variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarDecl {
    pub name: String,
    pub range: Vec<String>,
    pub equation: Option<ExprAst>,
}

/// One epistemically possible world: a weight plus edits to the base
/// setting.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldDecl {
    pub weight: Rational,
    /// Context overrides `U = value`.
    pub overrides: Vec<(String, String)>,
    /// Replacement equations `V := expr`.
    pub equations: Vec<(String, ExprAst)>,
}

/// An agent with an action variable and an epistemic distribution.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentDecl {
    pub name: String,
    pub action: String,
    pub worlds: Vec<WorldDecl>,
}

/// Parsed source file: declarations, context, and the optional outcome and
/// agents. Field order follows source order, so serialization round-trips.
#[derive(Debug, Clone, PartialEq)]
pub struct Document {
    pub declarations: Vec<VarDecl>,
    pub context: Vec<(String, String)>,
    pub outcome: Option<(String, String)>,
    pub agents: Vec<AgentDecl>,
}

/// A fully built scenario: the actual setting plus one responsibility query
/// per agent.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub model: CausalModel,
    pub context: Context,
    pub outcome: Option<Event>,
    pub agents: Vec<(String, ResponsibilitySetting)>,
}

impl Scenario {
    pub fn agent(&self, name: &str) -> Option<&ResponsibilitySetting> {
        self.agents
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, s)| s)
    }
}

/// Parses source into a [`Document`] without semantic checks beyond syntax.
pub fn parse_document(src: &str) -> Result<Document, Vec<SourceDiagnostic>> {
    parse::parse(src).map(|p| p.document)
}

struct Builder<'a> {
    src: &'a str,
    diagnostics: Vec<SourceDiagnostic>,
}

impl<'a> Builder<'a> {
    fn report(&mut self, pos: (usize, usize), message: &str) {
        self.diagnostics.push(diag(self.src, pos.0, pos.1, message));
    }

    fn signature(
        &mut self,
        doc: &Document,
        spans: &parse::Spans,
    ) -> Option<Arc<Signature>> {
        let mut exo = Vec::new();
        let mut endo = Vec::new();
        for decl in &doc.declarations {
            let entry = (decl.name.clone(), decl.range.clone());
            if decl.equation.is_none() {
                exo.push(entry);
            } else {
                endo.push(entry);
            }
        }
        match Signature::new(exo, endo) {
            Ok(sig) => Some(Arc::new(sig)),
            Err(e) => {
                self.report(spans.model, &e.to_string());
                None
            }
        }
    }

    fn model(
        &mut self,
        sig: &Arc<Signature>,
        equations: Vec<(String, ExprAst)>,
        pos: (usize, usize),
    ) -> Option<CausalModel> {
        match build_model(sig.clone(), equations) {
            Ok(model) => Some(model),
            Err(e) => {
                self.report(pos, &e.to_string());
                None
            }
        }
    }

    fn context(
        &mut self,
        sig: &Arc<Signature>,
        doc: &Document,
        spans: &parse::Spans,
    ) -> Option<Context> {
        let mut seen = BTreeSet::new();
        for (i, (name, value)) in doc.context.iter().enumerate() {
            let pos = spans
                .context_entries
                .get(i)
                .copied()
                .unwrap_or(spans.model);
            if !seen.insert(name.clone()) {
                self.report(pos, &format!("duplicate context assignment for `{name}`"));
                return None;
            }
            match sig.var(name) {
                None => {
                    self.report(pos, &format!("unknown variable `{name}`"));
                    return None;
                }
                Some(var) if !sig.is_exogenous(var) => {
                    self.report(
                        pos,
                        &format!("`{name}` is endogenous; the context assigns exogenous variables"),
                    );
                    return None;
                }
                Some(var) => {
                    if sig.value_index(var, value).is_err() {
                        self.report(
                            pos,
                            &format!("value `{value}` is not in the range of `{name}`"),
                        );
                        return None;
                    }
                }
            }
        }
        let pairs: Vec<(&str, &str)> = doc
            .context
            .iter()
            .map(|(n, v)| (n.as_str(), v.as_str()))
            .collect();
        match Context::new(sig.clone(), &pairs) {
            Ok(ctx) => Some(ctx),
            Err(e) => {
                self.report(spans.model, &e.to_string());
                None
            }
        }
    }
}

fn base_equations(doc: &Document) -> Vec<(String, ExprAst)> {
    doc.declarations
        .iter()
        .filter_map(|d| d.equation.clone().map(|e| (d.name.clone(), e)))
        .collect()
}

/// Parses and builds the model and context, ignoring any agents.
pub fn parse_model(src: &str) -> Result<(CausalModel, Context), Vec<SourceDiagnostic>> {
    let parsed = parse::parse(src)?;
    let mut builder = Builder {
        src,
        diagnostics: Vec::new(),
    };
    let built = (|| {
        let sig = builder.signature(&parsed.document, &parsed.spans)?;
        let model = builder.model(&sig, base_equations(&parsed.document), parsed.spans.model)?;
        let context = builder.context(&sig, &parsed.document, &parsed.spans)?;
        Some((model, context))
    })();
    match built {
        Some(pair) if builder.diagnostics.is_empty() => Ok(pair),
        _ => Err(builder.diagnostics),
    }
}

/// Parses and builds a full scenario: the base setting plus a
/// [`ResponsibilitySetting`] per agent, with world edits applied and weights
/// checked to sum to one.
pub fn parse_scenario(src: &str) -> Result<Scenario, Vec<SourceDiagnostic>> {
    let parsed = parse::parse(src)?;
    let doc = &parsed.document;
    let spans = &parsed.spans;
    let mut builder = Builder {
        src,
        diagnostics: Vec::new(),
    };
    let sig = match builder.signature(doc, spans) {
        Some(sig) => sig,
        None => return Err(builder.diagnostics),
    };
    let model = builder.model(&sig, base_equations(doc), spans.model);
    let context = builder.context(&sig, doc, spans);
    let (model, context) = match (model, context) {
        (Some(m), Some(c)) => (m, c),
        _ => return Err(builder.diagnostics),
    };

    let outcome = match &doc.outcome {
        None => None,
        Some((name, value)) => {
            let ok = sig
                .var(name)
                .filter(|&v| sig.is_endogenous(v))
                .map(|v| sig.value_index(v, value).is_ok())
                .unwrap_or(false);
            if !ok {
                builder.report(
                    spans.outcome,
                    &format!("outcome `{name} == {value}` does not name an endogenous variable and a value in its range"),
                );
            }
            Some(Event::new(name, value))
        }
    };

    let mut agents = Vec::new();
    let mut names = BTreeSet::new();
    for (i, agent) in doc.agents.iter().enumerate() {
        let agent_span = spans.agents.get(i).map(|a| a.pos).unwrap_or(spans.model);
        if !names.insert(agent.name.clone()) {
            builder.report(agent_span, &format!("duplicate agent `{}`", agent.name));
            continue;
        }
        if !matches!(sig.var(&agent.action), Some(v) if sig.is_endogenous(v)) {
            builder.report(
                agent_span,
                &format!("action `{}` is not an endogenous variable", agent.action),
            );
            continue;
        }
        let outcome = match &outcome {
            Some(event) => event.clone(),
            None => {
                builder.report(agent_span, "agents need an `outcome` statement to be responsible for");
                continue;
            }
        };
        let mut worlds = Vec::new();
        let mut failed = false;
        for (j, world) in agent.worlds.iter().enumerate() {
            let world_span = spans
                .agents
                .get(i)
                .and_then(|a| a.worlds.get(j))
                .copied()
                .unwrap_or(agent_span);
            match build_world(&builder_sig(&sig), doc, &context, world) {
                Ok(built) => worlds.push(built),
                Err(message) => {
                    builder.report(world_span, &message);
                    failed = true;
                }
            }
        }
        if failed {
            continue;
        }
        match EpistemicState::new(worlds) {
            Ok(epistemic) => agents.push((
                agent.name.clone(),
                ResponsibilitySetting {
                    model: model.clone(),
                    context: context.clone(),
                    action: agent.action.clone(),
                    outcome,
                    epistemic,
                },
            )),
            Err(e) => builder.report(agent_span, &e.to_string()),
        }
    }

    if builder.diagnostics.is_empty() {
        Ok(Scenario {
            model,
            context,
            outcome,
            agents,
        })
    } else {
        Err(builder.diagnostics)
    }
}

fn builder_sig(sig: &Arc<Signature>) -> Arc<Signature> {
    sig.clone()
}

fn build_world(
    sig: &Arc<Signature>,
    doc: &Document,
    base_context: &Context,
    world: &WorldDecl,
) -> Result<World, String> {
    // replacement equations substitute by name into the base equation list
    let mut equations = base_equations(doc);
    for (name, expr) in &world.equations {
        match equations.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = expr.clone(),
            None => {
                return Err(format!(
                    "`{name}` is not an endogenous variable of the model"
                ))
            }
        }
    }
    let model = build_model(sig.clone(), equations).map_err(|e| e.to_string())?;
    // overrides replace base context values
    let mut pairs: Vec<(String, String)> = sig
        .exogenous()
        .iter()
        .map(|&u| {
            let name = sig.name(u);
            (
                name.to_string(),
                base_context.get(name).unwrap().to_string(),
            )
        })
        .collect();
    for (name, value) in &world.overrides {
        match pairs.iter_mut().find(|(n, _)| n == name) {
            Some(slot) => slot.1 = value.clone(),
            None => {
                return Err(format!(
                    "`{name}` is not an exogenous variable of the model"
                ))
            }
        }
    }
    let borrowed: Vec<(&str, &str)> = pairs.iter().map(|(n, v)| (n.as_str(), v.as_str())).collect();
    let context = Context::new(sig.clone(), &borrowed).map_err(|e| e.to_string())?;
    Ok(World {
        weight: world.weight.clone(),
        model,
        context,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causation::{ness_cause, Limits};
    use crate::responsibility::{outcome_probability, responsible, ResponsibilityDef};
    use num_traits::One;

    const ASSASSINS: &str = "\
model {
  exo U1 in {0, 1}
  exo U2 in {0, 1}
  var A1 in {0, 1} := U1
  var A2 in {0, 1} := U2
  var V in {0, 1} := A1 | A2
}

context {
  U1 = 1
  U2 = 1
}

outcome V == 1

agent Assassin1 {
  action A1
  epistemic {
    world 0.7 {
      U2 = 1
    }
    world 0.3 {
      U2 = 0
    }
  }
}
";

    fn ratio(num: i64, den: i64) -> Rational {
        Rational::new(num.into(), den.into())
    }

    #[test]
    fn parses_and_solves_a_model() {
        let (model, ctx) = parse_model(ASSASSINS).unwrap();
        let solution = model.solve(&ctx).unwrap();
        assert_eq!(solution.get("V"), Some("1"));
        assert_eq!(solution.get("A2"), Some("1"));
    }

    #[test]
    fn round_trips_canonically() {
        let doc = parse_document(ASSASSINS).unwrap();
        let text = serialize(&doc);
        let again = parse_document(&text).unwrap();
        assert_eq!(doc, again);
        // canonical output is a fixed point
        assert_eq!(text, serialize(&again));
    }

    #[test]
    fn scenario_weights_are_exact_decimals() {
        let scenario = parse_scenario(ASSASSINS).unwrap();
        let setting = scenario.agent("Assassin1").unwrap();
        let worlds = setting.epistemic.worlds();
        assert_eq!(worlds[0].weight, ratio(7, 10));
        assert_eq!(worlds[1].weight, ratio(3, 10));
        assert_eq!(
            outcome_probability(&setting.epistemic, &Event::new("A1", "0"), &setting.outcome)
                .unwrap(),
            ratio(7, 10)
        );
        let verdict = responsible(setting, ResponsibilityDef::Hk, &Limits::default()).unwrap();
        assert!(verdict.responsible);
    }

    #[test]
    fn unicode_and_word_operators() {
        let src = "\
model {
  exo U in {0, 1}
  var A in {0, 1} := U
  var B in {0, 1} := \u{ac}A
  var C in {0, 1} := A \u{2228} B
  var D in {0, 1} := not A and (A or B)
}
context { U = 1 }
";
        let (model, ctx) = parse_model(src).unwrap();
        let solution = model.solve(&ctx).unwrap();
        assert_eq!(solution.get("B"), Some("0"));
        assert_eq!(solution.get("C"), Some("1"));
        assert_eq!(solution.get("D"), Some("0"));
    }

    #[test]
    fn case_expressions_and_symbolic_ranges() {
        let src = "\
model {
  exo Wind in {calm, breezy, storm}
  var Sail in {stowed, reefed, full} := case {
    Wind == storm -> stowed,
    Wind == breezy -> reefed,
    else -> full
  }
  var Capsize in {0, 1} := Sail == full & Wind == storm
}
context { Wind = breezy }
";
        let (model, ctx) = parse_model(src).unwrap();
        let solution = model.solve(&ctx).unwrap();
        assert_eq!(solution.get("Sail"), Some("reefed"));
        assert_eq!(solution.get("Capsize"), Some("0"));

        let doc = parse_document(src).unwrap();
        assert_eq!(doc, parse_document(&serialize(&doc)).unwrap());
    }

    #[test]
    fn fraction_weights() {
        let src = "\
model {
  exo U in {0, 1}
  exo W in {0, 1}
  var A in {0, 1} := U
  var V in {0, 1} := A | W
}
context { U = 1  W = 0 }
outcome V
agent Solo {
  action A
  epistemic {
    world 1/3 { W = 1 }
    world 2/3 { W = 0 }
  }
}
";
        let scenario = parse_scenario(src).unwrap();
        let setting = scenario.agent("Solo").unwrap();
        assert_eq!(setting.epistemic.worlds()[0].weight, ratio(1, 3));
        assert_eq!(scenario.outcome, Some(Event::new("V", "1")));
    }

    #[test]
    fn replacement_equations_in_worlds() {
        let src = "\
model {
  exo U in {0, 1}
  var A in {0, 1} := U
  var V in {0, 1} := A
}
context { U = 1 }
outcome V == 1
agent Solo {
  action A
  epistemic {
    world 1 { V := !A }
  }
}
";
        let scenario = parse_scenario(src).unwrap();
        let setting = scenario.agent("Solo").unwrap();
        // in the believed world, acting prevents the outcome
        assert_eq!(
            outcome_probability(&setting.epistemic, &Event::new("A", "1"), &setting.outcome)
                .unwrap(),
            Rational::zero()
        );
        assert_eq!(
            outcome_probability(&setting.epistemic, &Event::new("A", "0"), &setting.outcome)
                .unwrap(),
            Rational::one()
        );
        use num_traits::Zero;
    }

    #[test]
    fn collects_multiple_diagnostics() {
        let src = "\
model {
  exo U in {0, 1}
  var A in {0 1} := U &
  var B in {0, 1} := ??
}
context { U = 2 }
";
        let errs = parse_model(src).unwrap_err();
        assert!(errs.len() >= 2, "got {errs:#?}");
        for e in &errs {
            assert!(e.line >= 1 && e.column >= 1);
            assert!(!e.excerpt.is_empty());
        }
    }

    #[test]
    fn semantic_diagnostics_have_positions() {
        let src = "\
model {
  exo U in {0, 1}
  var A in {0, 1} := U
}
context {
  U = 1
  X = 1
}
";
        let errs = parse_model(src).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert!(errs[0].message.contains("unknown variable `X`"));
        assert_eq!(errs[0].line, 7);
        assert_eq!(errs[0].excerpt, "  X = 1");
    }

    #[test]
    fn weight_sum_is_reported_exactly() {
        let src = "\
model {
  exo U in {0, 1}
  exo W in {0, 1}
  var A in {0, 1} := U
  var V in {0, 1} := A | W
}
context { U = 1  W = 0 }
outcome V
agent Solo {
  action A
  epistemic {
    world 0.5 { W = 1 }
    world 0.25 { W = 0 }
  }
}
";
        let errs = parse_scenario(src).unwrap_err();
        assert_eq!(errs.len(), 1);
        assert!(errs[0].message.contains("sum to 0.75"), "{}", errs[0].message);
    }

    #[test]
    fn cycles_are_reported_with_a_position() {
        let src = "\
model {
  exo U in {0, 1}
  var A in {0, 1} := B
  var B in {0, 1} := A
}
context { U = 1 }
";
        let errs = parse_model(src).unwrap_err();
        assert!(errs[0].message.contains("cycle"));
    }

    #[test]
    fn comments_and_commas_are_ignored() {
        let src = "\
# overdetermination, two shooters
model {
  exo U1 in {0, 1}, exo U2 in {0, 1}
  var A1 in {0, 1} := U1  # first shooter
  var A2 in {0, 1} := U2
  var V in {0, 1} := A1 | A2
}
context { U1 = 1, U2 = 1 }
";
        let (model, ctx) = parse_model(src).unwrap();
        assert_eq!(model.solve(&ctx).unwrap().get("V"), Some("1"));
    }

    #[test]
    fn document_from_model_round_trips() {
        let (model, ctx) = crate::testfix::late_preemption("1", "1");
        let doc = document_from_model(&model, &ctx);
        let (again, again_ctx) = parse_model(&serialize(&doc)).unwrap();
        assert_eq!(
            model.solve(&ctx).unwrap().iter().collect::<Vec<_>>(),
            again.solve(&again_ctx).unwrap().iter().collect::<Vec<_>>()
        );
        assert_eq!(doc, parse_document(&serialize(&doc)).unwrap());
    }

    #[test]
    fn intervened_models_serialize_as_constants() {
        let (model, ctx) = crate::testfix::late_preemption("1", "1");
        let intervened = model.intervene(&[("A1", "0")]).unwrap();
        let doc = document_from_model(&intervened, &ctx);
        let (rebuilt, rebuilt_ctx) = parse_model(&serialize(&doc)).unwrap();
        let expected = intervened.solve(&ctx).unwrap();
        let actual = rebuilt.solve(&rebuilt_ctx).unwrap();
        assert_eq!(
            expected.iter().collect::<Vec<_>>(),
            actual.iter().collect::<Vec<_>>()
        );
        // causal structure also matches: the fixed variable keeps its
        // outgoing edges, so the NESS path through both hits survives
        let expected_path = crate::causation::CausalPath {
            variables: vec!["A1".into(), "BH1".into(), "BH2".into(), "V".into()],
        };
        for m in [&intervened, &rebuilt] {
            let paths = ness_cause(
                m,
                &ctx,
                &Event::new("A1", "0"),
                &Event::new("V", "1"),
                &Limits::default(),
            )
            .unwrap();
            assert_eq!(paths, vec![expected_path.clone()]);
        }
    }

    #[test]
    fn operator_precedence_and_parentheses() {
        let src = "\
model {
  exo U in {0, 1}
  var A in {0, 1} := U
  var B in {0, 1} := U
  var C in {0, 1} := A | B & !A
  var D in {0, 1} := (A | B) & !A
}
context { U = 0 }
";
        let doc = parse_document(src).unwrap();
        let c = &doc.declarations[3];
        // `&` binds tighter than `|`
        assert_eq!(
            c.equation,
            Some(ExprAst::or(
                ExprAst::var("A"),
                ExprAst::and(ExprAst::var("B"), ExprAst::not(ExprAst::var("A")))
            ))
        );
        let d = &doc.declarations[4];
        assert_eq!(
            d.equation,
            Some(ExprAst::and(
                ExprAst::or(ExprAst::var("A"), ExprAst::var("B")),
                ExprAst::not(ExprAst::var("A"))
            ))
        );
        assert_eq!(doc, parse_document(&serialize(&doc)).unwrap());
    }

    #[test]
    fn keywords_cannot_name_variables() {
        let src = "\
model {
  exo case in {0, 1}
}
context { case = 1 }
";
        assert!(parse_model(src).is_err());
    }

    #[test]
    fn no_panic_on_garbage() {
        for src in [
            "",
            "model",
            "model {",
            "model { var }",
            "model { exo U in {0, 1} } context { U = }",
            "}}}{{{",
            "model { var A in {0, 1} := ((((A",
            "outcome",
            "agent X { action }",
            "model { exo U in {0, 1} } context { U = 1 } agent A { action U epistemic { world } }",
            "\u{ac}\u{2227}\u{2228}",
            "model { exo U in {0,1} } context { U = 1 } outcome U == 1",
            // recovery must not loop when a block is left unterminated and
            // the next token opens a different statement
            "model { exo U in {0, 1} # }\ncontext { U = 1 }",
            "model { exo U in {0, 1} ? context { U = 1 }",
            "model { } context { ? outcome V == 1",
            "agent A { action X epistemic { world 1 { ? agent B { action Y } }",
        ] {
            let _ = parse_scenario(src);
            let _ = parse_model(src);
            let _ = parse_document(src);
        }
    }
}
