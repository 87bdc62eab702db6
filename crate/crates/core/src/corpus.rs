//! Built-in example models and scenarios.
//!
//! Every entry ships the source text of a model file, a scenario file, or
//! both; the texts parse with [`crate::dsl`] and back the integration tests,
//! the CLI `corpus` command, and the benchmarks.

/// One named example with its source texts.
#[derive(Debug, Clone, Copy)]
pub struct CorpusEntry {
    pub name: &'static str,
    /// One-line description of what the example exercises.
    pub summary: &'static str,
    /// Model file text, when the example ships one.
    pub model: Option<&'static str>,
    /// Scenario file text (model plus agents), when the example ships one.
    pub scenario: Option<&'static str>,
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "ex1_assassins",
        summary: "overdetermination: two simultaneous shots, each lethal",
        model: Some(include_str!("../fixtures/ex1_assassins.scm")),
        scenario: Some(include_str!("../fixtures/ex1_assassins.rsp")),
    },
    CorpusEntry {
        name: "ex2_latepreemption",
        summary: "late preemption: the first bullet stops the second from hitting",
        model: Some(include_str!("../fixtures/ex2_latepreemption.scm")),
        scenario: None,
    },
    CorpusEntry {
        name: "ex3_counterfactual",
        summary: "omission as cause: the first assassin holds fire, the second's shot lands",
        model: Some(include_str!("../fixtures/ex3_counterfactual.scm")),
        scenario: Some(include_str!("../fixtures/ex3_counterfactual.rsp")),
    },
    CorpusEntry {
        name: "ex4_loader",
        summary: "conjunctive loading alongside an independent lone cause",
        model: Some(include_str!("../fixtures/ex4_loader.scm")),
        scenario: None,
    },
    CorpusEntry {
        name: "ex4b_loader_variant",
        summary: "loader variant where the backup fires exactly when loading fails",
        model: Some(include_str!("../fixtures/ex4b_loader_variant.scm")),
        scenario: None,
    },
    CorpusEntry {
        name: "ex5_bombing",
        summary: "two bombers whose devices mask each other; the second planted under uncertainty",
        model: None,
        scenario: Some(include_str!("../fixtures/ex5_bombing.rsp")),
    },
    CorpusEntry {
        name: "ex6_typicality",
        summary: "symmetric overdetermination with asymmetric prior beliefs",
        model: None,
        scenario: Some(include_str!("../fixtures/ex6_typicality.rsp")),
    },
    CorpusEntry {
        name: "firing_squad",
        summary: "a shooter who knows the victim dies regardless",
        model: None,
        scenario: Some(include_str!("../fixtures/firing_squad.rsp")),
    },
    CorpusEntry {
        name: "frankfurt",
        summary: "an agent acting on their own while a hidden manipulator stands by",
        model: None,
        scenario: Some(include_str!("../fixtures/frankfurt.rsp")),
    },
    CorpusEntry {
        name: "rosenberg_glymour",
        summary: "a variable that transmits causation both directly and through an intermediary",
        model: Some(include_str!("../fixtures/rosenberg_glymour.scm")),
        scenario: None,
    },
];

/// Looks an example up by name.
pub fn entry(name: &str) -> Option<&'static CorpusEntry> {
    CORPUS.iter().find(|e| e.name == name)
}

mod checks;
pub use checks::verify;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_document, parse_model, parse_scenario, serialize};

    #[test]
    fn every_entry_parses() {
        for entry in CORPUS {
            assert!(
                entry.model.is_some() || entry.scenario.is_some(),
                "{} ships no text",
                entry.name
            );
            if let Some(text) = entry.model {
                parse_model(text).unwrap_or_else(|e| panic!("{}: {e:#?}", entry.name));
            }
            if let Some(text) = entry.scenario {
                let scenario =
                    parse_scenario(text).unwrap_or_else(|e| panic!("{}: {e:#?}", entry.name));
                assert!(!scenario.agents.is_empty(), "{} has no agents", entry.name);
                assert!(scenario.outcome.is_some(), "{} has no outcome", entry.name);
            }
        }
    }

    #[test]
    fn every_entry_round_trips() {
        for entry in CORPUS {
            for text in [entry.model, entry.scenario].into_iter().flatten() {
                let doc = parse_document(text).unwrap();
                let printed = serialize(&doc);
                assert_eq!(
                    doc,
                    parse_document(&printed).unwrap(),
                    "{} does not round-trip",
                    entry.name
                );
            }
        }
    }

    #[test]
    fn lookup_by_name() {
        assert!(entry("ex1_assassins").is_some());
        assert!(entry("no_such_example").is_none());
    }
}
