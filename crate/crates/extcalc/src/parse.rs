//! Parser and printer for the shared graded expression grammar.
//!
//! `d x` is a basis 1-form, `@x` a basis vector field, `^` wedges graded
//! factors, scalars multiply on the left with an explicit `*`:
//! `d z + x*d y`, `(1+x^2)*d x ^ d y`, `@x ^ @y - x*@x ^ @z`.

use std::fmt;

use symexpr::lex::{tokenize, SpannedToken, Token};
use symexpr::{Chart, Error as SymError, Rational, ScalarField};

use crate::graded::Graded;
use crate::{DifferentialForm, Error, MultiVectorField};

/// Result of parsing a graded expression.
#[derive(Clone, PartialEq, Debug)]
pub enum Value {
    Scalar(ScalarField),
    Form(DifferentialForm),
    MultiVector(MultiVectorField),
}

impl Value {
    pub fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "scalar",
            Value::Form(_) => "form",
            Value::MultiVector(_) => "multivector",
        }
    }
}

/// Parse any value of the grammar: scalar, form, or multivector field.
pub fn parse_value(text: &str, chart: &Chart) -> Result<Value, Error> {
    let tokens = tokenize(text).map_err(Error::Scalar)?;
    let mut p = Parser {
        tokens: &tokens,
        pos: 0,
        chart,
        end: text.len(),
    };
    let v = p.expr(0)?;
    p.expect_end()?;
    Ok(v)
}

/// Parse a differential form; plain scalars become 0-forms.
pub fn parse_form(text: &str, chart: &Chart) -> Result<DifferentialForm, Error> {
    match parse_value(text, chart)? {
        Value::Form(f) => Ok(f),
        Value::Scalar(s) => Ok(DifferentialForm::scalar(s)),
        Value::MultiVector(_) => Err(Error::KindMismatch { expected: "form" }),
    }
}

/// Parse a multivector field; plain scalars become 0-vectors.
pub fn parse_multivector(text: &str, chart: &Chart) -> Result<MultiVectorField, Error> {
    match parse_value(text, chart)? {
        Value::MultiVector(m) => Ok(m),
        Value::Scalar(s) => Ok(MultiVectorField::scalar(s)),
        Value::Form(_) => Err(Error::KindMismatch {
            expected: "multivector",
        }),
    }
}

struct Parser<'a> {
    tokens: &'a [SpannedToken],
    pos: usize,
    chart: &'a Chart,
    end: usize,
}

fn syntax(position: usize, message: &str) -> Error {
    Error::Scalar(SymError::Syntax {
        position,
        message: message.into(),
    })
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
            Err(syntax(self.here(), "trailing input"))
        }
    }

    fn expr(&mut self, min_bp: u8) -> Result<Value, Error> {
        let mut lhs = self.atom()?;
        loop {
            let (op, position) = match self.peek() {
                Some(t) => (t.token.clone(), t.position),
                None => break,
            };
            let lbp = match op {
                Token::Plus | Token::Minus => 1,
                Token::Star | Token::Slash => 3,
                Token::Caret => 5,
                Token::RParen => break,
                _ => return Err(syntax(position, "expected operator")),
            };
            if lbp < min_bp {
                break;
            }
            self.next();
            lhs = match op {
                Token::Plus => add_values(lhs, self.expr(2)?, position)?,
                Token::Minus => add_values(lhs, neg_value(self.expr(2)?), position)?,
                Token::Star => mul_values(lhs, self.expr(4)?, position)?,
                Token::Slash => div_values(lhs, self.expr(4)?, position)?,
                Token::Caret => {
                    // Scalar base takes an integer exponent; graded bases wedge.
                    match (&lhs, self.peek().map(|t| t.token.clone())) {
                        (Value::Scalar(_), Some(Token::Int(_)))
                        | (Value::Scalar(_), Some(Token::Minus)) => {
                            let exp = self.integer_exponent()?;
                            match lhs {
                                Value::Scalar(s) => {
                                    Value::Scalar(s.pow(exp).map_err(Error::Scalar)?)
                                }
                                _ => unreachable!(),
                            }
                        }
                        _ => {
                            let rhs = self.expr(6)?;
                            wedge_values(lhs, rhs, position)?
                        }
                    }
                }
                _ => unreachable!(),
            };
        }
        Ok(lhs)
    }

    fn integer_exponent(&mut self) -> Result<i32, Error> {
        let position = self.here();
        let negative = matches!(self.peek().map(|t| &t.token), Some(Token::Minus)) && {
            self.next();
            true
        };
        match self.next().map(|t| t.token.clone()) {
            Some(Token::Int(n)) => {
                let mag: i32 = n
                    .try_into()
                    .map_err(|_| syntax(position, "exponent too large"))?;
                Ok(if negative { -mag } else { mag })
            }
            _ => Err(syntax(position, "exponent must be an integer literal")),
        }
    }

    fn atom(&mut self) -> Result<Value, Error> {
        let position = self.here();
        match self.next().map(|t| t.token.clone()) {
            Some(Token::Int(n)) => Ok(Value::Scalar(ScalarField::constant(
                self.chart,
                Rational::from_integer(n),
            ))),
            Some(Token::Ident(name)) if name == "d" => {
                let position = self.here();
                match self.next().map(|t| t.token.clone()) {
                    Some(Token::Ident(coord)) => match self.chart.index_of(&coord) {
                        Some(i) => Ok(Value::Form(
                            DifferentialForm::basis(self.chart, &[i])?,
                        )),
                        None => Err(Error::Scalar(SymError::UnknownCoordinate {
                            name: coord,
                            position,
                        })),
                    },
                    _ => Err(syntax(position, "`d` must be followed by a coordinate")),
                }
            }
            Some(Token::Ident(name)) => match self.chart.index_of(&name) {
                Some(i) => Ok(Value::Scalar(
                    ScalarField::coordinate(self.chart, i).map_err(Error::Scalar)?,
                )),
                None => Err(Error::Scalar(SymError::UnknownCoordinate { name, position })),
            },
            Some(Token::At) => {
                let position = self.here();
                match self.next().map(|t| t.token.clone()) {
                    Some(Token::Ident(coord)) => match self.chart.index_of(&coord) {
                        Some(i) => Ok(Value::MultiVector(
                            MultiVectorField::basis(self.chart, &[i])?,
                        )),
                        None => Err(Error::Scalar(SymError::UnknownCoordinate {
                            name: coord,
                            position,
                        })),
                    },
                    _ => Err(syntax(position, "`@` must be followed by a coordinate")),
                }
            }
            Some(Token::Minus) => Ok(neg_value(self.expr(5)?)),
            Some(Token::LParen) => {
                let inner = self.expr(0)?;
                match self.next().map(|t| t.token.clone()) {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(syntax(self.here(), "expected `)`")),
                }
            }
            _ => Err(syntax(position, "expected a value")),
        }
    }
}

fn neg_value(v: Value) -> Value {
    match v {
        Value::Scalar(s) => Value::Scalar(s.neg()),
        Value::Form(f) => Value::Form(f.neg()),
        Value::MultiVector(m) => Value::MultiVector(m.neg()),
    }
}

fn add_values(a: Value, b: Value, position: usize) -> Result<Value, Error> {
    // A zero scalar coerces to the zero of any kind and degree.
    match (a, b) {
        (Value::Scalar(a), Value::Scalar(b)) => {
            Ok(Value::Scalar(a.add(&b).map_err(Error::Scalar)?))
        }
        (Value::Form(f), Value::Scalar(s)) | (Value::Scalar(s), Value::Form(f)) => {
            if s.is_zero() {
                Ok(Value::Form(f))
            } else if f.degree() == 0 {
                Ok(Value::Form(f.add(&DifferentialForm::scalar(s))?))
            } else {
                Err(syntax(position, "cannot add a scalar to a form of positive degree"))
            }
        }
        (Value::MultiVector(m), Value::Scalar(s)) | (Value::Scalar(s), Value::MultiVector(m)) => {
            if s.is_zero() {
                Ok(Value::MultiVector(m))
            } else if m.degree() == 0 {
                Ok(Value::MultiVector(m.add(&MultiVectorField::scalar(s))?))
            } else {
                Err(syntax(
                    position,
                    "cannot add a scalar to a multivector of positive degree",
                ))
            }
        }
        (Value::Form(a), Value::Form(b)) => Ok(Value::Form(a.add(&b)?)),
        (Value::MultiVector(a), Value::MultiVector(b)) => Ok(Value::MultiVector(a.add(&b)?)),
        _ => Err(syntax(position, "cannot mix forms and multivector fields")),
    }
}

fn mul_values(a: Value, b: Value, position: usize) -> Result<Value, Error> {
    match (a, b) {
        (Value::Scalar(a), Value::Scalar(b)) => {
            Ok(Value::Scalar(a.mul(&b).map_err(Error::Scalar)?))
        }
        (Value::Scalar(s), Value::Form(f)) | (Value::Form(f), Value::Scalar(s)) => {
            Ok(Value::Form(f.scale(&s)?))
        }
        (Value::Scalar(s), Value::MultiVector(m)) | (Value::MultiVector(m), Value::Scalar(s)) => {
            Ok(Value::MultiVector(m.scale(&s)?))
        }
        _ => Err(syntax(position, "`*` needs a scalar operand; use `^` to wedge")),
    }
}

fn div_values(a: Value, b: Value, position: usize) -> Result<Value, Error> {
    match (a, b) {
        (Value::Scalar(a), Value::Scalar(b)) => Ok(Value::Scalar(a.div(&b).map_err(|e| {
            match e {
                SymError::DivisionByZero => syntax(position, "division by zero"),
                other => Error::Scalar(other),
            }
        })?)),
        _ => Err(syntax(position, "`/` is defined for scalars only")),
    }
}

fn wedge_values(a: Value, b: Value, position: usize) -> Result<Value, Error> {
    match (a, b) {
        (Value::Form(a), Value::Form(b)) => Ok(Value::Form(a.wedge(&b)?)),
        (Value::MultiVector(a), Value::MultiVector(b)) => Ok(Value::MultiVector(a.wedge(&b)?)),
        _ => Err(syntax(
            position,
            "`^` wedges two forms or two multivector fields",
        )),
    }
}

/// Canonical printer shared by forms (`prefix = "d "`) and multivector
/// fields (`prefix = "@"`). Uses only grammar the parser accepts.
pub(crate) fn display_graded(g: &Graded, prefix: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if g.is_zero() {
        return write!(f, "0");
    }
    if g.degree == 0 {
        let c = g.coeffs.get(&0).expect("nonzero scalar");
        return write!(f, "{c}");
    }
    // Terms sorted by index tuple, lexicographically.
    let mut terms: Vec<(Vec<usize>, &ScalarField)> = g
        .coeffs
        .iter()
        .map(|(b, c)| (crate::blade::indices(*b).collect(), c))
        .collect();
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut first = true;
    for (indices, c) in terms {
        let basis = indices
            .iter()
            .map(|&i| format!("{}{}", prefix, g.chart.coord_name(i)))
            .collect::<Vec<_>>()
            .join(" ^ ");
        let (sign_negative, body) = coefficient_body(c, &basis);
        if first {
            if sign_negative {
                write!(f, "-")?;
            }
            first = false;
        } else if sign_negative {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        write!(f, "{body}")?;
    }
    Ok(())
}

/// Renders `c * basis`, extracting an overall sign when the coefficient is a
/// single monomial; parenthesizes compound coefficients.
fn coefficient_body(c: &ScalarField, basis: &str) -> (bool, String) {
    if c.is_one() {
        return (false, basis.to_string());
    }
    if c.neg().is_one() {
        return (true, basis.to_string());
    }
    let single_monomial = c.is_polynomial() && c.numerator().num_terms() == 1;
    if single_monomial {
        let neg = c.to_string().starts_with('-');
        let mag = if neg { c.neg() } else { c.clone() };
        if mag.is_one() {
            return (neg, basis.to_string());
        }
        return (neg, format!("{mag}*{basis}"));
    }
    (false, format!("({c})*{basis}"))
}
