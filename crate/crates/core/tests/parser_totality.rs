use ontograph_core::corpus::{fixture_lexicon, gen_random_statement};
use ontograph_core::parser::{parse_sentence, ParseError};

const NEAR_MISSES: &str = include_str!("data/near_misses.tsv");

fn near_misses() -> Vec<(&'static str, String, usize)> {
    NEAR_MISSES
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let (kind, marked) = l.split_once('\t').expect("kind and sentence");
            let offset = marked.find('|').expect("error marker");
            (kind, marked.replacen('|', "", 1), offset)
        })
        .collect()
}

#[test]
fn generated_statements_all_parse() {
    let lex = fixture_lexicon();
    for seed in 0..10_000 {
        let s = gen_random_statement(seed, &lex);
        let ast = parse_sentence(&s, &lex).unwrap_or_else(|e| panic!("seed {seed}: {s:?}: {e}"));
        assert_eq!(ast.to_string(), s);
    }
}

#[test]
fn near_misses_are_rejected_where_marked() {
    let lex = fixture_lexicon();
    let cases = near_misses();
    assert!(cases.len() >= 50);
    for (kind, sentence, offset) in cases {
        let err = match parse_sentence(&sentence, &lex) {
            Ok(ast) => panic!("{sentence:?} was accepted as {ast:?}"),
            Err(e) => e,
        };
        let kind_ok = match kind {
            "syntax" => matches!(err, ParseError::Syntax { .. }),
            "mixed" => matches!(err, ParseError::MixedConnective { .. }),
            "unbound" => matches!(err, ParseError::UnboundAnaphor { .. }),
            "period" => matches!(err, ParseError::MissingPeriod { .. }),
            "unknown" => matches!(err, ParseError::UnknownWord { .. }),
            other => panic!("unknown kind {other}"),
        };
        assert!(kind_ok, "{sentence:?}: expected {kind}, got {err:?}");
        assert_eq!(err.offset(), offset, "{sentence:?}: {err}");
    }
}

#[test]
fn syntax_errors_list_expected_tokens() {
    let lex = fixture_lexicon();
    match parse_sentence("Mary buys at 2 presents.", &lex) {
        Err(ParseError::Syntax {
            expected, found, ..
        }) => {
            assert_eq!(found, "2");
            assert!(
                expected.contains(&"\"most\"") && expected.contains(&"\"least\""),
                "{expected:?}"
            );
        }
        other => panic!("{other:?}"),
    }
}
