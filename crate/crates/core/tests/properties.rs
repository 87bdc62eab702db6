//! Property tests over the text format and the random model generator:
//! the parser must reject garbage gracefully and the serializer must be a
//! fixed point of parse-then-print.

use proptest::prelude::*;
use resp_core::corpus::CORPUS;
use resp_core::dsl::{parse_document, serialize};
use resp_core::testkit::{random_specimen, GenParams};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parser_never_panics_on_arbitrary_text(src in "\\PC*") {
        let _ = parse_document(&src);
    }

    #[test]
    fn parser_never_panics_on_token_soup(
        tokens in proptest::collection::vec(
            prop_oneof![
                Just("model"), Just("context"), Just("outcome"), Just("agent"),
                Just("action"), Just("epistemic"), Just("world"), Just("exo"),
                Just("var"), Just("in"), Just("case"), Just("else"),
                Just("{"), Just("}"), Just("("), Just(")"), Just(":="),
                Just("=="), Just("!="), Just("="), Just("->"), Just(","),
                Just("&"), Just("|"), Just("!"), Just("0"), Just("1"),
                Just("2"), Just("1/2"), Just("0.5"), Just("A"), Just("V"),
                Just("U"), Just("x"),
            ],
            0..48,
        )
    ) {
        let _ = parse_document(&tokens.join(" "));
    }

    #[test]
    fn parser_never_panics_on_mutated_fixtures(
        index in 0usize..CORPUS.len(),
        position in any::<u16>(),
        insert in "\\PC{0,8}",
        delete in 0usize..8,
    ) {
        let entry = &CORPUS[index];
        let source = entry.scenario.or(entry.model).unwrap();
        let mut chars: Vec<char> = source.chars().collect();
        let at = position as usize % (chars.len() + 1);
        let end = (at + delete).min(chars.len());
        chars.splice(at..end, insert.chars());
        let mutated: String = chars.into_iter().collect();
        let _ = parse_document(&mutated);
    }

    #[test]
    fn generated_documents_round_trip(seed in any::<u64>()) {
        let specimen = random_specimen(seed, &GenParams::default());
        let printed = serialize(&specimen.document);
        let reparsed = parse_document(&printed)
            .map_err(|e| TestCaseError::fail(format!("{e:#?}")))?;
        prop_assert_eq!(&specimen.document, &reparsed);
        prop_assert_eq!(serialize(&reparsed), printed);
    }
}
