//! Actual causation and moral responsibility over finite structural causal
//! models.
//!
//! The crate decides four actual-causation relations (sufficiency/direct
//! NESS, NESS along a path, CNESS, and modified HP) with explicit witnesses,
//! evaluates three responsibility definitions (BvH, HK, and the combined
//! CNESS-based definition) against an agent's epistemic state, and computes a
//! graded degree of responsibility from causal-strength measures. All
//! probabilities are exact rationals.

pub mod causation;
pub mod corpus;
pub mod dsl;
pub mod model;
pub mod responsibility;
pub mod testkit;

pub use causation::{
    cness_cause, decide_cause, direct_ness_cause, find_causes, hp_atomic_cause, hp_cause_set,
    is_sufficient, ness_cause, CausalPath, CausalVerdict, CausationDef, Event, Limits, QueryError,
    Witness,
};
pub use model::{
    build_model, evaluate, Assignment, CausalFormula, CausalModel, Context, ExprAst, ModelError,
    Signature, Value, VarId,
};
pub use responsibility::{
    causal_strength_actual, causal_strength_eells, causation_probability, degree_of_responsibility,
    format_rational, outcome_probability, responsible, DegreeReport, EpistemicEvidence,
    EpistemicState, Rational, ResponsibilityDef, ResponsibilitySetting, ResponsibilityVerdict,
    World,
};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(test)]
pub(crate) mod testfix {
    use crate::model::{build_model, CausalModel, Context, ExprAst, Signature};
    use std::sync::Arc;

    fn boolean_model(
        exo: &[&str],
        endo: &[&str],
        equations: &[(&str, ExprAst)],
        context: &[(&str, &str)],
    ) -> (CausalModel, Context) {
        let sig = Arc::new(Signature::boolean(exo, endo).unwrap());
        let model = build_model(
            sig.clone(),
            equations
                .iter()
                .map(|(n, e)| (n.to_string(), e.clone()))
                .collect(),
        )
        .unwrap();
        let ctx = Context::new(sig, context).unwrap();
        (model, ctx)
    }

    /// Two assassins, both shoot: V = A1 | A2.
    pub fn assassins(a1: &str, a2: &str) -> (CausalModel, Context) {
        boolean_model(
            &["U1", "U2"],
            &["A1", "A2", "V"],
            &[
                ("A1", ExprAst::var("U1")),
                ("A2", ExprAst::var("U2")),
                ("V", ExprAst::or(ExprAst::var("A1"), ExprAst::var("A2"))),
            ],
            &[("U1", a1), ("U2", a2)],
        )
    }

    /// Late preemption: V = BH1 | BH2, BH1 = A1, BH2 = A2 & !BH1.
    pub fn late_preemption(a1: &str, a2: &str) -> (CausalModel, Context) {
        boolean_model(
            &["U1", "U2"],
            &["A1", "A2", "BH1", "BH2", "V"],
            &[
                ("A1", ExprAst::var("U1")),
                ("A2", ExprAst::var("U2")),
                ("BH1", ExprAst::var("A1")),
                (
                    "BH2",
                    ExprAst::and(ExprAst::var("A2"), ExprAst::not(ExprAst::var("BH1"))),
                ),
                ("V", ExprAst::or(ExprAst::var("BH1"), ExprAst::var("BH2"))),
            ],
            &[("U1", a1), ("U2", a2)],
        )
    }

    /// Bombing: B = D1 | D2 | D3, D1 = S1 & !S2, D2 = S2 & !S1, D3 = S1.
    pub fn bombing(s1: &str, s2: &str) -> (CausalModel, Context) {
        boolean_model(
            &["U1", "U2"],
            &["S1", "S2", "D1", "D2", "D3", "B"],
            &[
                ("S1", ExprAst::var("U1")),
                ("S2", ExprAst::var("U2")),
                (
                    "D1",
                    ExprAst::and(ExprAst::var("S1"), ExprAst::not(ExprAst::var("S2"))),
                ),
                (
                    "D2",
                    ExprAst::and(ExprAst::var("S2"), ExprAst::not(ExprAst::var("S1"))),
                ),
                ("D3", ExprAst::var("S1")),
                (
                    "B",
                    ExprAst::or(
                        ExprAst::or(ExprAst::var("D1"), ExprAst::var("D2")),
                        ExprAst::var("D3"),
                    ),
                ),
            ],
            &[("U1", s1), ("U2", s2)],
        )
    }

    /// Loader: D = (A & B) | C with C exogenous-driven (base) or C = !B
    /// (variant).
    pub fn loader(variant: bool, a: &str, b: &str, c: &str) -> (CausalModel, Context) {
        if variant {
            boolean_model(
                &["UA", "UB"],
                &["A", "B", "C", "D"],
                &[
                    ("A", ExprAst::var("UA")),
                    ("B", ExprAst::var("UB")),
                    ("C", ExprAst::not(ExprAst::var("B"))),
                    (
                        "D",
                        ExprAst::or(
                            ExprAst::and(ExprAst::var("A"), ExprAst::var("B")),
                            ExprAst::var("C"),
                        ),
                    ),
                ],
                &[("UA", a), ("UB", b)],
            )
        } else {
            boolean_model(
                &["UA", "UB", "UC"],
                &["A", "B", "C", "D"],
                &[
                    ("A", ExprAst::var("UA")),
                    ("B", ExprAst::var("UB")),
                    ("C", ExprAst::var("UC")),
                    (
                        "D",
                        ExprAst::or(
                            ExprAst::and(ExprAst::var("A"), ExprAst::var("B")),
                            ExprAst::var("C"),
                        ),
                    ),
                ],
                &[("UA", a), ("UB", b), ("UC", c)],
            )
        }
    }

    /// Rosenberg-Glymour: Y = X | D, X = D.
    pub fn rosenberg_glymour(d: &str) -> (CausalModel, Context) {
        boolean_model(
            &["UD"],
            &["D", "X", "Y"],
            &[
                ("D", ExprAst::var("UD")),
                ("X", ExprAst::var("D")),
                ("Y", ExprAst::or(ExprAst::var("X"), ExprAst::var("D"))),
            ],
            &[("UD", d)],
        )
    }

    /// Frankfurt: SD = JP | JS, JS = BM, BM = !JP.
    pub fn frankfurt(jp: &str) -> (CausalModel, Context) {
        boolean_model(
            &["UJ"],
            &["JP", "BM", "JS", "SD"],
            &[
                ("JP", ExprAst::var("UJ")),
                ("BM", ExprAst::not(ExprAst::var("JP"))),
                ("JS", ExprAst::var("BM")),
                ("SD", ExprAst::or(ExprAst::var("JP"), ExprAst::var("JS"))),
            ],
            &[("UJ", jp)],
        )
    }
}
