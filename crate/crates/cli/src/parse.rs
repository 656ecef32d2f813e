//! Recursive-descent parser and exact evaluator for radical
//! expressions.
//!
//! The grammar covers everything the engine can print — and nothing it
//! cannot represent — so parsing a canonical rendering always round-trips
//! to the identical value:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := factor (('*' | '/') factor)*
//! factor  := '-' factor | primary ('^' digits)?
//! primary := digits | 'sqrt' '(' expr ')' | func '(' angle ')' | '(' expr ')'
//! func    := 'sin' | 'cos' | 'tan' | 'cot' | 'sec' | 'csc'
//! angle   := '-'? digits 'deg'
//! ```
//!
//! Function values are looked up exactly: the degree argument is split
//! into quadrant and reference angle, the reference angle must be one of
//! the table angles (0, 30, 45, 60, 90), and the quotient functions are
//! expanded as ratios at parse time, failing loudly where undefined.

use gasing_core::derive::{decompose_degrees, quadrant_signed_special, FnKind, SpecialAngle};
use gasing_core::exactnum::{ExactReal, NumError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {at}")]
    UnexpectedChar { at: usize, found: char },
    #[error("expected {want} at byte {at}, found {found}")]
    Unexpected {
        at: usize,
        want: &'static str,
        found: String,
    },
    #[error("trailing input at byte {at}")]
    Trailing { at: usize },
    #[error("unknown function {name:?} at byte {at}")]
    UnknownFunction { at: usize, name: String },
    #[error("number at byte {at} is too large")]
    NumberTooLarge { at: usize },
    #[error("exponent at byte {at} is too large (limit {limit})")]
    ExponentTooLarge { at: usize, limit: u32 },
    #[error("no exact table entry for {degrees} degrees (at byte {at})")]
    UnsupportedAngle { at: usize, degrees: i64 },
    #[error("{func}({degrees}deg) is undefined")]
    UndefinedValue { func: &'static str, degrees: i64 },
    #[error("arithmetic at byte {at}: {source}")]
    Arithmetic {
        at: usize,
        #[source]
        source: NumError,
    },
    #[error("table lookup at byte {at}: {source}")]
    Table {
        at: usize,
        #[source]
        source: gasing_core::derive::DeriveError,
    },
}

/// Largest exponent `^n` the parser will expand.
const MAX_EXPONENT: u32 = 64;

// ======================================================================
// Lexer
// ======================================================================

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(u64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl std::fmt::Display for Tok {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Plus => write!(f, "'+'"),
            Tok::Minus => write!(f, "'-'"),
            Tok::Star => write!(f, "'*'"),
            Tok::Slash => write!(f, "'/'"),
            Tok::Caret => write!(f, "'^'"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::End => write!(f, "end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer { src, pos: 0 }
    }

    fn skip_space(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    /// The next token and the byte offset where it starts.
    fn next(&mut self) -> Result<(usize, Tok), ParseError> {
        self.skip_space();
        let at = self.pos;
        let Some(c) = self.src[self.pos..].chars().next() else {
            return Ok((at, Tok::End));
        };
        let simple = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return Ok((at, t));
        }
        if c.is_ascii_digit() {
            let rest = &self.src[self.pos..];
            let len = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
            let text = &rest[..len];
            self.pos += len;
            let n: u64 = text
                .parse()
                .map_err(|_| ParseError::NumberTooLarge { at })?;
            return Ok((at, Tok::Num(n)));
        }
        if c.is_ascii_alphabetic() {
            let rest = &self.src[self.pos..];
            let len = rest
                .find(|c: char| !c.is_ascii_alphanumeric())
                .unwrap_or(rest.len());
            let text = &rest[..len];
            self.pos += len;
            return Ok((at, Tok::Ident(text.to_string())));
        }
        Err(ParseError::UnexpectedChar { at, found: c })
    }
}

// ======================================================================
// Parser
// ======================================================================

struct Parser<'a> {
    lexer: Lexer<'a>,
    /// One token of lookahead, with its start offset.
    peeked: (usize, Tok),
}

/// Parse and exactly evaluate a radical expression.
pub fn parse_exact(input: &str) -> Result<ExactReal, ParseError> {
    let mut lexer = Lexer::new(input);
    let peeked = lexer.next()?;
    let mut p = Parser { lexer, peeked };
    let value = p.expr()?;
    match p.peeked {
        (_, Tok::End) => Ok(value),
        (at, _) => Err(ParseError::Trailing { at }),
    }
}

impl<'a> Parser<'a> {
    fn advance(&mut self) -> Result<(usize, Tok), ParseError> {
        let next = self.lexer.next()?;
        Ok(std::mem::replace(&mut self.peeked, next))
    }

    fn expect(&mut self, want: Tok, label: &'static str) -> Result<usize, ParseError> {
        let (at, tok) = self.advance()?;
        if tok == want {
            Ok(at)
        } else {
            Err(ParseError::Unexpected {
                at,
                want: label,
                found: tok.to_string(),
            })
        }
    }

    fn expr(&mut self) -> Result<ExactReal, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peeked.1 {
                Tok::Plus => {
                    self.advance()?;
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.advance()?;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<ExactReal, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peeked.1 {
                Tok::Star => {
                    self.advance()?;
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    let (at, _) = self.advance()?;
                    let rhs = self.factor()?;
                    acc = acc
                        .checked_div(&rhs)
                        .map_err(|source| ParseError::Arithmetic { at, source })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<ExactReal, ParseError> {
        if self.peeked.1 == Tok::Minus {
            self.advance()?;
            return Ok(-&self.factor()?);
        }
        let base = self.primary()?;
        if self.peeked.1 == Tok::Caret {
            self.advance()?;
            let (at, tok) = self.advance()?;
            let Tok::Num(n) = tok else {
                return Err(ParseError::Unexpected {
                    at,
                    want: "an integer exponent",
                    found: tok.to_string(),
                });
            };
            if n > u64::from(MAX_EXPONENT) {
                return Err(ParseError::ExponentTooLarge {
                    at,
                    limit: MAX_EXPONENT,
                });
            }
            return Ok(base.pow(n as u32));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<ExactReal, ParseError> {
        let (at, tok) = self.advance()?;
        match tok {
            Tok::Num(n) => {
                i64::try_from(n)
                    .map(ExactReal::from_int)
                    .map_err(|_| ParseError::NumberTooLarge { at })
            }
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Tok::Ident(name) if name == "sqrt" => {
                self.expect(Tok::LParen, "'('")?;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                inner
                    .sqrt()
                    .map_err(|source| ParseError::Arithmetic { at, source })
            }
            Tok::Ident(name) => {
                let func = match name.as_str() {
                    "sin" => FnKind::Sin,
                    "cos" => FnKind::Cos,
                    "tan" => FnKind::Tan,
                    "cot" => FnKind::Cot,
                    "sec" => FnKind::Sec,
                    "csc" => FnKind::Csc,
                    _ => return Err(ParseError::UnknownFunction { at, name }),
                };
                self.expect(Tok::LParen, "'('")?;
                let degrees = self.degrees()?;
                self.expect(Tok::RParen, "')'")?;
                exact_function(func, degrees, at)
            }
            other => Err(ParseError::Unexpected {
                at,
                want: "a number, 'sqrt', a function, or '('",
                found: other.to_string(),
            }),
        }
    }

    /// `'-'? digits 'deg'`, e.g. `30deg` or `-45deg`.
    fn degrees(&mut self) -> Result<i64, ParseError> {
        let negative = if self.peeked.1 == Tok::Minus {
            self.advance()?;
            true
        } else {
            false
        };
        let (at, tok) = self.advance()?;
        let Tok::Num(n) = tok else {
            return Err(ParseError::Unexpected {
                at,
                want: "an angle like 30deg",
                found: tok.to_string(),
            });
        };
        let (at, tok) = self.advance()?;
        if !matches!(&tok, Tok::Ident(unit) if unit == "deg") {
            return Err(ParseError::Unexpected {
                at,
                want: "the unit 'deg'",
                found: tok.to_string(),
            });
        }
        let magnitude = i64::try_from(n).map_err(|_| ParseError::NumberTooLarge { at })?;
        Ok(if negative { -magnitude } else { magnitude })
    }
}

/// Exact value of `func(degrees)` through quadrant decomposition.
pub fn exact_function(func: FnKind, degrees: i64, at: usize) -> Result<ExactReal, ParseError> {
    let (quadrant, reference) = decompose_degrees(degrees);
    let special = SpecialAngle::from_degrees(reference)
        .ok_or(ParseError::UnsupportedAngle { at, degrees })?;
    let (cos, sin) = quadrant_signed_special(special, quadrant)
        .map_err(|source| ParseError::Table { at, source })?;
    let one = ExactReal::one();
    let undefined = |name| ParseError::UndefinedValue {
        func: name,
        degrees,
    };
    match func {
        FnKind::Sin => Ok(sin),
        FnKind::Cos => Ok(cos),
        FnKind::Tan => sin.checked_div(&cos).map_err(|_| undefined("tan")),
        FnKind::Cot => cos.checked_div(&sin).map_err(|_| undefined("cot")),
        FnKind::Sec => one.checked_div(&cos).map_err(|_| undefined("sec")),
        FnKind::Csc => one.checked_div(&sin).map_err(|_| undefined("csc")),
    }
}

// ======================================================================
// Tests
// ======================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use gasing_core::exactnum::rat;

    fn parsed(s: &str) -> ExactReal {
        parse_exact(s).unwrap_or_else(|e| panic!("{s:?}: {e}"))
    }

    #[test]
    fn arithmetic_follows_precedence() {
        assert_eq!(parsed("1 + 2*3"), ExactReal::from_int(7));
        assert_eq!(parsed("(1 + 2)*3"), ExactReal::from_int(9));
        assert_eq!(parsed("10/4"), ExactReal::from_ratio(5, 2));
        assert_eq!(parsed("2^10"), ExactReal::from_int(1024));
        assert_eq!(parsed("-2^2"), ExactReal::from_int(-4));
        assert_eq!(parsed("6*sqrt(3)/2"), parsed("3*sqrt(3)"));
    }

    #[test]
    fn radicals_canonicalize_while_parsing() {
        assert_eq!(parsed("sqrt(12)"), parsed("2*sqrt(3)"));
        assert_eq!(parsed("sqrt(9/4)"), ExactReal::from_ratio(3, 2));
        assert_eq!(parsed("sqrt(2)*sqrt(3)"), parsed("sqrt(6)"));
    }

    #[test]
    fn function_values_use_the_exact_table() {
        assert_eq!(parsed("sin(30deg)"), ExactReal::from_ratio(1, 2));
        assert_eq!(parsed("cos(45deg)"), ExactReal::sqrt_of(&rat(1, 2)).unwrap());
        assert_eq!(parsed("tan(60deg)"), ExactReal::sqrt_int(3));
        assert_eq!(parsed("sec(60deg)"), ExactReal::from_int(2));
        assert_eq!(parsed("sin(150deg)"), ExactReal::from_ratio(1, 2));
        assert_eq!(parsed("cos(120deg)"), ExactReal::from_ratio(-1, 2));
        assert_eq!(parsed("sin(-30deg)"), ExactReal::from_ratio(-1, 2));
        assert_eq!(parsed("cos(720deg)"), ExactReal::one());
        assert_eq!(
            parsed("sin(30deg)^2 + cos(30deg)^2"),
            ExactReal::one()
        );
    }

    #[test]
    fn undefined_and_unsupported_values_are_reported() {
        assert!(matches!(
            parse_exact("tan(90deg)"),
            Err(ParseError::UndefinedValue { func: "tan", .. })
        ));
        assert!(matches!(
            parse_exact("cot(180deg)"),
            Err(ParseError::UndefinedValue { func: "cot", .. })
        ));
        assert!(matches!(
            parse_exact("sin(17deg)"),
            Err(ParseError::UnsupportedAngle { degrees: 17, .. })
        ));
        assert!(matches!(
            parse_exact("1/0"),
            Err(ParseError::Arithmetic { .. })
        ));
        assert!(matches!(
            parse_exact("sqrt(1 + sqrt(2))"),
            Err(ParseError::Arithmetic { .. })
        ));
    }

    #[test]
    fn error_positions_point_into_the_source() {
        match parse_exact("1 + $") {
            Err(ParseError::UnexpectedChar { at, found: '$' }) => assert_eq!(at, 4),
            other => panic!("unexpected result: {other:?}"),
        }
        match parse_exact("1 + 2 3") {
            Err(ParseError::Trailing { at }) => assert_eq!(at, 6),
            other => panic!("unexpected result: {other:?}"),
        }
    }

    #[test]
    fn canonical_rendering_round_trips() {
        for text in [
            "0",
            "6 + 6*sqrt(3)",
            "sqrt(3)/2",
            "-1/2 - 3*sqrt(7)/2",
            "25 + 12*sqrt(3)",
            "1/3 + sqrt(2) + 5*sqrt(6)/7",
        ] {
            let value = parsed(text);
            assert_eq!(value.to_string(), text, "canonical form is stable");
            assert_eq!(parsed(&value.to_string()), value);
        }
    }
}
