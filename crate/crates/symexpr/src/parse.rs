use num_traits::ToPrimitive;

use crate::lex::{tokenize, SpannedToken, Token};
use crate::{Chart, Error, Rational, ScalarField};

/// Parse a scalar expression (`+ - * / ^ ( )` over integers and coordinates).
pub fn parse_scalar(text: &str, chart: &Chart) -> Result<ScalarField, Error> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        chart,
        end: text.len(),
    };
    let value = p.expr(0)?;
    p.expect_end()?;
    Ok(value)
}

struct Parser<'a> {
    tokens: &'a [SpannedToken],
    pos: usize,
    chart: &'a Chart,
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&'a SpannedToken> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a SpannedToken> {
        let t = self.tokens.get(self.pos);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> usize {
        self.peek().map(|t| t.position).unwrap_or(self.end)
    }

    fn expect_end(&self) -> Result<(), Error> {
        if self.pos == self.tokens.len() {
            Ok(())
        } else {
            Err(Error::Syntax {
                position: self.here(),
                message: "trailing input".into(),
            })
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<ScalarField, Error> {
        let mut lhs = self.atom()?;
        loop {
            let (op, position) = match self.peek() {
                Some(t) => (t.token.clone(), t.position),
                None => break,
            };
            let (lbp, rbp) = match op {
                Token::Plus | Token::Minus => (1, 2),
                Token::Star | Token::Slash => (3, 4),
                Token::Caret => (5, 6),
                Token::RParen => break,
                _ => {
                    return Err(Error::Syntax {
                        position,
                        message: "expected operator".into(),
                    })
                }
            };
            if lbp < min_bp {
                break;
            }
            self.next();
            match op {
                Token::Caret => {
                    let exp = self.integer_exponent()?;
                    lhs = lhs.pow(exp)?;
                    // continue at same precedence level
                    let _ = rbp;
                }
                Token::Plus => {
                    let rhs = self.expr(rbp)?;
                    lhs = lhs.add(&rhs)?;
                }
                Token::Minus => {
                    let rhs = self.expr(rbp)?;
                    lhs = lhs.sub(&rhs)?;
                }
                Token::Star => {
                    let rhs = self.expr(rbp)?;
                    lhs = lhs.mul(&rhs)?;
                }
                Token::Slash => {
                    let rhs = self.expr(rbp)?;
                    lhs = lhs.div(&rhs).map_err(|e| match e {
                        Error::DivisionByZero => Error::Syntax {
                            position,
                            message: "division by zero".into(),
                        },
                        other => other,
                    })?;
                }
                _ => unreachable!(),
            }
        }
        Ok(lhs)
    }

    fn integer_exponent(&mut self) -> Result<i32, Error> {
        let position = self.here();
        let negative = matches!(self.peek().map(|t| &t.token), Some(Token::Minus)) && {
            self.next();
            true
        };
        match self.next() {
            Some(SpannedToken {
                token: Token::Int(n),
                ..
            }) => {
                let mag = n.to_i32().ok_or(Error::Syntax {
                    position,
                    message: "exponent too large".into(),
                })?;
                Ok(if negative { -mag } else { mag })
            }
            _ => Err(Error::Syntax {
                position,
                message: "exponent must be an integer literal".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<ScalarField, Error> {
        let position = self.here();
        match self.next().map(|t| t.token.clone()) {
            Some(Token::Int(n)) => Ok(ScalarField::constant(
                self.chart,
                Rational::from_integer(n),
            )),
            Some(Token::Ident(name)) => match self.chart.index_of(&name) {
                Some(i) => Ok(ScalarField::coordinate(self.chart, i)?),
                None => Err(Error::UnknownCoordinate { name, position }),
            },
            Some(Token::Minus) => {
                let inner = self.expr(5)?;
                Ok(inner.neg())
            }
            Some(Token::LParen) => {
                let inner = self.expr(0)?;
                match self.next().map(|t| t.token.clone()) {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Syntax {
                        position: self.here(),
                        message: "expected `)`".into(),
                    }),
                }
            }
            Some(Token::At) => Err(Error::Syntax {
                position,
                message: "`@` is not allowed in a scalar expression".into(),
            }),
            _ => Err(Error::Syntax {
                position,
                message: "expected a value".into(),
            }),
        }
    }
}
