//! The polynomial-expression grammar for morphism images: integer
//! coefficients, generator names, `*`, `^`, `+`, `-`, parentheses;
//! whitespace-insensitive. Example: `-6*t^2`.

use crate::error::{Error, Result};
use crate::linalg::{Scalar, SparseVec, VecBuilder};

use super::free::FreeGca;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(i64),
    Ident(String),
    Star,
    Caret,
    Plus,
    Minus,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let mut n = 0i64;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    n = n
                        .checked_mul(10)
                        .and_then(|n| n.checked_add(chars[i] as i64 - '0' as i64))
                        .ok_or_else(|| Error::ExprParse {
                            reason: "integer literal too large".into(),
                        })?;
                    i += 1;
                }
                out.push(Token::Int(n));
            }
            c if c.is_alphanumeric() || c == '_' => {
                let mut s = String::new();
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    s.push(chars[i]);
                    i += 1;
                }
                out.push(Token::Ident(s));
            }
            other => {
                return Err(Error::ExprParse {
                    reason: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    gca: &'a FreeGca,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<SparseVec> {
        let ring = self.gca.algebra.ring;
        let mut acc = VecBuilder::new();
        acc.add_vec(&ring, &self.term()?, &Scalar::ONE);
        while let Some(t) = self.peek() {
            match t {
                Token::Plus => {
                    self.bump();
                    acc.add_vec(&ring, &self.term()?, &Scalar::ONE);
                }
                Token::Minus => {
                    self.bump();
                    acc.add_vec(&ring, &self.term()?, &ring.from_i64(-1));
                }
                _ => break,
            }
        }
        Ok(acc.build())
    }

    // term := factor ('*' factor)*
    fn term(&mut self) -> Result<SparseVec> {
        let mut v = self.factor()?;
        while matches!(self.peek(), Some(Token::Star)) {
            self.bump();
            let w = self.factor()?;
            v = self.gca.algebra.mult_vec(&v, &w);
        }
        Ok(v)
    }

    // factor := INT | IDENT ('^' INT)? | '-' factor | '(' expr ')'
    fn factor(&mut self) -> Result<SparseVec> {
        let ring = self.gca.algebra.ring;
        match self.bump() {
            Some(Token::Int(n)) => {
                let c = ring.from_i64(n);
                if c.is_zero() {
                    Ok(Vec::new())
                } else {
                    Ok(crate::linalg::vec_scale(&ring, &self.gca.algebra.unit, &c))
                }
            }
            Some(Token::Minus) => {
                let v = self.factor()?;
                Ok(crate::linalg::vec_scale(&ring, &v, &ring.from_i64(-1)))
            }
            Some(Token::LParen) => {
                let v = self.expr()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(v),
                    _ => Err(Error::ExprParse {
                        reason: "expected `)`".into(),
                    }),
                }
            }
            Some(Token::Ident(name)) => {
                let gen = self
                    .gca
                    .generator_index(&name)
                    .ok_or(Error::UnknownGenerator { name: name.clone() })?;
                let mut power = 1u32;
                if matches!(self.peek(), Some(Token::Caret)) {
                    self.bump();
                    match self.bump() {
                        Some(Token::Int(n)) if n >= 0 => power = n as u32,
                        _ => {
                            return Err(Error::ExprParse {
                                reason: "expected a nonnegative exponent after `^`".into(),
                            })
                        }
                    }
                }
                let g = vec![(self.gca.generator_basis_index(gen), Scalar::ONE)];
                let mut v = self.gca.algebra.unit.clone();
                for _ in 0..power {
                    v = self.gca.algebra.mult_vec(&v, &g);
                }
                Ok(v)
            }
            other => Err(Error::ExprParse {
                reason: format!("unexpected token {:?}", other),
            }),
        }
    }
}

/// Evaluate an expression to a vector in the free GCA. Powers that escape the
/// cutoff truncate to zero, which callers guard by degree checks.
pub fn evaluate_expression(gca: &FreeGca, text: &str) -> Result<SparseVec> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::ExprParse {
            reason: "empty expression".into(),
        });
    }
    let mut p = Parser {
        tokens,
        pos: 0,
        gca,
    };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::ExprParse {
            reason: "trailing input".into(),
        });
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dga::free::{build_free_gca, FreeGcaPresentation, GcaGenerator};
    use crate::linalg::CoefficientRing;

    fn kx_t() -> FreeGca {
        build_free_gca(&FreeGcaPresentation {
            generators: vec![GcaGenerator::new("t", 2)],
            ring: CoefficientRing::Integers,
            cutoff: 8,
        })
        .unwrap()
    }

    #[test]
    fn parses_with_and_without_whitespace() {
        let g = kx_t();
        let a = evaluate_expression(&g, "-6*t^2").unwrap();
        let b = evaluate_expression(&g, " - 6 * t ^ 2 ").unwrap();
        assert_eq!(a, b);
        let t2 = g.algebra.basis().index_of("t^2").unwrap();
        assert_eq!(a, vec![(t2, Scalar::Int(-6))]);
    }

    #[test]
    fn sums_and_parens() {
        let g = kx_t();
        let v = evaluate_expression(&g, "2*(t + t) - 3*t").unwrap();
        let t = g.algebra.basis().index_of("t").unwrap();
        assert_eq!(v, vec![(t, Scalar::Int(1))]);
    }

    #[test]
    fn zero_literal_and_unknown_name() {
        let g = kx_t();
        assert!(evaluate_expression(&g, "0").unwrap().is_empty());
        assert!(matches!(
            evaluate_expression(&g, "q^2"),
            Err(Error::UnknownGenerator { .. })
        ));
    }
}
