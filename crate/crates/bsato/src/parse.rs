//! Text format for operators and polynomials: sums of `*`-joined factors
//! over the tokens `x1..xn`, `d1..dn`, `s`, rational literals `p/q`, powers
//! `^k`, and parentheses, e.g. `-1/2*x1*d1 + x3*d3` or `s^2 + 2*s + 1`.
//! Factors multiply in written order, which matters: `d1*x1` and `x1*d1`
//! differ by 1.
//!
//! Variable indices in the text are 1-based.  The variable count is taken
//! from the caller when given (indices are then range checked), otherwise
//! from the largest index that occurs.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::Error;
use crate::poly::Polynomial;
use crate::rat::Rat;
use crate::weyl::WeylOperator;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(BigInt),
    X(usize),
    D(usize),
    S,
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<Token>, Error> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
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
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let value = lit
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad integer literal {lit}")))?;
                out.push(Token::Num(value));
            }
            'x' | 'd' => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                if i == start + 1 {
                    return Err(Error::Parse(format!(
                        "`{c}` needs a variable index, like {c}1"
                    )));
                }
                let idx: String = chars[start + 1..i].iter().collect();
                let idx = idx
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad variable index {idx}")))?;
                if idx == 0 {
                    return Err(Error::Parse("variable indices start at 1".into()));
                }
                out.push(if c == 'x' {
                    Token::X(idx - 1)
                } else {
                    Token::D(idx - 1)
                });
            }
            's' => {
                out.push(Token::S);
                i += 1;
            }
            other => return Err(Error::Parse(format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    n: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<WeylOperator, Error> {
        let mut negate = false;
        while let Some(Token::Plus | Token::Minus) = self.peek() {
            if let Some(Token::Minus) = self.peek() {
                negate = !negate;
            }
            self.pos += 1;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        while let Some(tok) = self.peek() {
            let minus = match tok {
                Token::Plus => false,
                Token::Minus => true,
                _ => break,
            };
            self.pos += 1;
            let t = self.term()?;
            acc = if minus { &acc - &t } else { &acc + &t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<WeylOperator, Error> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<WeylOperator, Error> {
        let base = self.atom()?;
        if let Some(Token::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Token::Num(k)) => {
                    let k = u32::try_from(&k)
                        .map_err(|_| Error::Parse(format!("exponent {k} out of range")))?;
                    Ok(base.pow(k))
                }
                _ => Err(Error::Parse(
                    "`^` needs a nonnegative integer exponent".into(),
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<WeylOperator, Error> {
        match self.next() {
            Some(Token::Num(p)) => {
                let value = if let Some(Token::Slash) = self.peek() {
                    self.pos += 1;
                    match self.next() {
                        Some(Token::Num(q)) if !q.is_zero() => Rat::new(p, q),
                        Some(Token::Num(_)) => return Err(Error::Parse("division by zero".into())),
                        _ => return Err(Error::Parse("`/` needs an integer denominator".into())),
                    }
                } else {
                    Rat::from_integer(p)
                };
                Ok(WeylOperator::scalar(self.n, value))
            }
            Some(Token::X(i)) => {
                self.index_checked(i)?;
                Ok(WeylOperator::x(self.n, i))
            }
            Some(Token::D(i)) => {
                self.index_checked(i)?;
                Ok(WeylOperator::d(self.n, i))
            }
            Some(Token::S) => Ok(WeylOperator::s(self.n)),
            Some(Token::LParen) => {
                let inner = self.expr()?;
                match self.next() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(Error::Parse("missing closing parenthesis".into())),
                }
            }
            Some(tok) => Err(Error::Parse(format!("unexpected token {tok:?}"))),
            None => Err(Error::Parse("unexpected end of input".into())),
        }
    }

    fn index_checked(&self, i: usize) -> Result<(), Error> {
        if i >= self.n {
            return Err(Error::Parse(format!(
                "index {} out of range for {} variables",
                i + 1,
                self.n
            )));
        }
        Ok(())
    }
}

/// Parses an operator expression.  `n` fixes the variable count; when
/// absent it is inferred from the largest index present (at least 1).
pub fn parse_operator(text: &str, n: Option<usize>) -> Result<WeylOperator, Error> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let inferred = tokens
        .iter()
        .filter_map(|t| match t {
            Token::X(i) | Token::D(i) => Some(i + 1),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    let n = n.unwrap_or(inferred);
    let mut parser = Parser { tokens, pos: 0, n };
    let op = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(Error::Parse(format!(
            "trailing input at token {:?}",
            parser.tokens[parser.pos]
        )));
    }
    Ok(op)
}

/// Parses a polynomial: an operator expression that must stay inside the
/// commutative subring generated by `x1..xn`.
pub fn parse_polynomial(text: &str, n: Option<usize>) -> Result<Polynomial, Error> {
    let op = parse_operator(text, n)?;
    let mut out = Polynomial::zero(op.n());
    for ((beta, alpha, k), c) in op.terms() {
        if !alpha.is_zero() || *k != 0 {
            return Err(Error::Parse(
                "polynomials admit only x tokens, not d or s".into(),
            ));
        }
        out.add_term(beta.clone(), c.clone());
    }
    Ok(out)
}

/// Parses a univariate polynomial in `s` into ascending coefficients.
pub fn parse_bpoly(text: &str) -> Result<Vec<Rat>, Error> {
    let op = parse_operator(text, Some(1))?;
    let mut coeffs: Vec<Rat> = Vec::new();
    for ((beta, alpha, k), c) in op.terms() {
        if !beta.is_zero() || !alpha.is_zero() {
            return Err(Error::Parse(
                "a b-polynomial admits only the token s".into(),
            ));
        }
        let k = *k as usize;
        if coeffs.len() <= k {
            coeffs.resize(k + 1, Rat::zero());
        }
        coeffs[k] = c.clone();
    }
    if coeffs.is_empty() {
        coeffs.push(Rat::zero());
    }
    Ok(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multiindex::MultiIndex;
    use crate::rat::{rat, ratio};
    use num_traits::Zero;

    #[test]
    fn operator_roundtrip_display() {
        let text = "-1/2*x1*d1 - 1/2*x2*d2 + x3*d3 + x4*d4";
        let op = parse_operator(text, None).unwrap();
        assert_eq!(op.n(), 4);
        assert_eq!(op.to_string(), text);
    }

    #[test]
    fn order_of_factors_matters() {
        let a = parse_operator("d1*x1", Some(1)).unwrap();
        let b = parse_operator("x1*d1 + 1", Some(1)).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, parse_operator("x1*d1", Some(1)).unwrap());
    }

    #[test]
    fn parentheses_and_powers() {
        let a = parse_operator("(s+1)^2", None).unwrap();
        let b = parse_operator("s^2 + 2*s + 1", None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn polynomial_parsing() {
        let f = parse_polynomial("x1*x2*x3 + x1^2*x4 + x2^2*x4", None).unwrap();
        assert_eq!(f.n(), 4);
        assert_eq!(f.coeff(&MultiIndex(vec![1, 1, 1, 0])), rat(1));
        assert_eq!(f.coeff(&MultiIndex(vec![2, 0, 0, 1])), rat(1));
        assert!(parse_polynomial("x1*d1", None).is_err());
        assert!(parse_polynomial("s + x1", None).is_err());
    }

    #[test]
    fn bpoly_parsing() {
        assert_eq!(
            parse_bpoly("(s+1)^2").unwrap(),
            vec![rat(1), rat(2), rat(1)]
        );
        assert_eq!(
            parse_bpoly("s^2 + 3/2*s").unwrap(),
            vec![Rat::zero(), ratio(3, 2), rat(1)]
        );
        assert!(parse_bpoly("x1 + s").is_err());
    }

    #[test]
    fn rational_literals() {
        let op = parse_operator("3/4", None).unwrap();
        assert_eq!(op, WeylOperator::scalar(1, ratio(3, 4)));
        assert!(parse_operator("1/0", None).is_err());
    }

    #[test]
    fn range_checks() {
        assert!(parse_operator("x3", Some(2)).is_err());
        assert!(parse_operator("x0", None).is_err());
        assert!(parse_operator("", None).is_err());
        assert!(parse_operator("x1 +", None).is_err());
        assert!(parse_operator("(x1", None).is_err());
        assert!(parse_operator("x1 x2", None).is_err());
    }

    #[test]
    fn leading_minus() {
        let op = parse_operator("-x1", None).unwrap();
        assert_eq!(op, -&WeylOperator::x(1, 0));
        let double = parse_operator("--x1", None).unwrap();
        assert_eq!(double, WeylOperator::x(1, 0));
    }
}
