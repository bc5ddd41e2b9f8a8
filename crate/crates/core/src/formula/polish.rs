use thiserror::Error;

use super::{Formula, Operator, Variable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown token `{token}` at position {position}")]
    UnknownToken { token: String, position: usize },
    #[error("formula ends before all operands are given")]
    TruncatedFormula,
    #[error("{count} trailing token(s) after a complete formula, starting at position {position}")]
    TrailingTokens { position: usize, count: usize },
}

/// Splits a surface string on whitespace.
pub fn tokenize(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}

/// Parses a complete Polish-notation token sequence.
pub fn parse_polish<S: AsRef<str>>(tokens: &[S]) -> Result<Formula, ParseError> {
    let mut pos = 0;
    let formula = parse_at(tokens, &mut pos)?;
    if pos != tokens.len() {
        return Err(ParseError::TrailingTokens {
            position: pos,
            count: tokens.len() - pos,
        });
    }
    Ok(formula)
}

// Iterative so that adversarially deep inputs cannot blow the stack.
fn parse_at<S: AsRef<str>>(tokens: &[S], pos: &mut usize) -> Result<Formula, ParseError> {
    enum Frame {
        Not,
        BinLeft(super::Connective),
        BinRight(super::Connective, Formula),
    }

    let mut stack: Vec<Frame> = Vec::new();
    loop {
        let token = tokens.get(*pos).ok_or(ParseError::TruncatedFormula)?.as_ref();
        let position = *pos;
        *pos += 1;

        let mut done = match Operator::from_token(token) {
            Some(Operator::Not) => {
                stack.push(Frame::Not);
                continue;
            }
            Some(Operator::Binary(op)) => {
                stack.push(Frame::BinLeft(op));
                continue;
            }
            None => match Variable::from_name(token) {
                Some(v) => Formula::Var(v),
                None => {
                    return Err(ParseError::UnknownToken {
                        token: token.to_string(),
                        position,
                    })
                }
            },
        };

        loop {
            match stack.pop() {
                None => return Ok(done),
                Some(Frame::Not) => done = Formula::not(done),
                Some(Frame::BinLeft(op)) => {
                    stack.push(Frame::BinRight(op, done));
                    break;
                }
                Some(Frame::BinRight(op, lhs)) => done = Formula::bin(op, lhs, done),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Variable as V;

    fn var(v: V) -> Formula {
        Formula::Var(v)
    }

    #[test]
    fn parses_table_one_formulas() {
        let expected = Formula::and(Formula::not(var(V::A)), Formula::or(var(V::B), var(V::C)));
        assert_eq!(parse_polish(&tokenize("& ! a | b c")).unwrap(), expected);

        let expected = Formula::xor(var(V::A), Formula::not(var(V::E)));
        assert_eq!(parse_polish(&tokenize("xor a ! e")).unwrap(), expected);

        assert_eq!(parse_polish(&["a"]).unwrap(), var(V::A));
    }

    #[test]
    fn prints_table_one_formulas() {
        assert_eq!(var(V::A).to_polish(), vec!["a"]);
        let f = Formula::and(Formula::not(var(V::A)), Formula::or(var(V::B), var(V::C)));
        assert_eq!(f.to_polish().join(" "), "& ! a | b c");
        let f = Formula::xor(var(V::A), Formula::not(var(V::E)));
        assert_eq!(f.to_polish().join(" "), "xor a ! e");
        let f = Formula::iff(var(V::D), var(V::B));
        assert_eq!(f.to_string(), "<-> d b");
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_polish(&tokenize("& a x")),
            Err(ParseError::UnknownToken {
                token: "x".into(),
                position: 2
            })
        );
        assert_eq!(parse_polish(&tokenize("& a")), Err(ParseError::TruncatedFormula));
        assert_eq!(parse_polish::<&str>(&[]), Err(ParseError::TruncatedFormula));
        assert_eq!(parse_polish(&tokenize("! !")), Err(ParseError::TruncatedFormula));
        assert_eq!(
            parse_polish(&tokenize("a b c")),
            Err(ParseError::TrailingTokens { position: 1, count: 2 })
        );
        // `<->` is a single token, its pieces are not
        assert!(matches!(
            parse_polish(&tokenize("< - > a b")),
            Err(ParseError::UnknownToken { .. })
        ));
    }

    #[test]
    fn deep_input_does_not_overflow() {
        let mut tokens = vec!["!"; 200_000];
        tokens.push("a");
        // peel iteratively, recursive drop would overflow here
        let mut cur = parse_polish(&tokens).unwrap();
        let mut nots = 0;
        while let Formula::Not(inner) = cur {
            cur = *inner;
            nots += 1;
        }
        assert_eq!(nots, 200_000);
        assert_eq!(cur, var(V::A));
    }
}
