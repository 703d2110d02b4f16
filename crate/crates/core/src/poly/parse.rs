//! Reader for strings such as `"1+t^2"`, `"-3/2*X11*X23^2"` or `"p124 p356"`.
//!
//! Grammar: `poly := [sign] term (sign term)*`, `term := factor ([*] factor)*`,
//! `factor := (number | name) [^ exponent]`. Juxtaposition multiplies.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Field, Monomial, PolyError, Polynomial, VarContext};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Num(Rational),
    Name(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(s: &str) -> Result<Vec<Token>, String> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| -> String {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect()
    };
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' | '\u{b7}' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            c if c.is_ascii_digit() => {
                let num: BigInt = digits(&mut i).parse().map_err(|_| "bad number")?;
                let mut value = Rational::from_integer(num);
                if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                    i += 1;
                    let den: BigInt = digits(&mut i).parse().map_err(|_| "bad number")?;
                    if den == BigInt::from(0) {
                        return Err("division by zero".into());
                    }
                    value /= Rational::from_integer(den);
                }
                out.push(Token::Num(value));
            }
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Name(chars[start..i].iter().collect()));
            }
            other => return Err(format!("unexpected character {other:?}")),
        }
    }
    Ok(out)
}

pub(super) fn parse(s: &str, ctx: &Arc<VarContext>, field: Field) -> Result<Polynomial, PolyError> {
    let err = |m: &str| PolyError::Parse(s.to_string(), m.to_string());
    let tokens = tokenize(s).map_err(|m| err(&m))?;
    if tokens.is_empty() {
        return Err(err("empty input"));
    }
    let mut pos = 0;
    let mut result = Polynomial::zero(ctx, field);
    let mut first = true;
    while pos < tokens.len() {
        let mut negative = false;
        match tokens[pos] {
            Token::Plus => pos += 1,
            Token::Minus => {
                negative = true;
                pos += 1;
            }
            _ if first => {}
            _ => return Err(err("expected + or -")),
        }
        first = false;
        let mut coef = Rational::from_integer(BigInt::from(if negative { -1 } else { 1 }));
        let mut mono = Monomial::one(ctx.len());
        let mut factors = 0;
        loop {
            if pos < tokens.len() && tokens[pos] == Token::Star {
                if factors == 0 {
                    return Err(err("dangling *"));
                }
                pos += 1;
                if !matches!(tokens.get(pos), Some(Token::Num(_)) | Some(Token::Name(_))) {
                    return Err(err("expected a factor after *"));
                }
            }
            let factor = match tokens.get(pos) {
                Some(Token::Num(v)) => Ok(v.clone()),
                Some(Token::Name(n)) => Err(n.clone()),
                _ => break,
            };
            pos += 1;
            let mut exponent: u32 = 1;
            if pos < tokens.len() && tokens[pos] == Token::Caret {
                pos += 1;
                match tokens.get(pos) {
                    Some(Token::Num(v)) if v.is_integer() => {
                        exponent = v.to_integer().try_into().map_err(|_| err("exponent too large"))?;
                        pos += 1;
                    }
                    _ => return Err(err("expected a nonnegative integer exponent")),
                }
            }
            match factor {
                Ok(v) => coef *= num_traits::pow(v, exponent as usize),
                Err(name) => {
                    let i = ctx.index_of(&name).ok_or(PolyError::UnknownVariable(name))?;
                    mono.0[i] += exponent;
                }
            }
            factors += 1;
        }
        if factors == 0 {
            return Err(err("expected a term"));
        }
        let coef = field.element(&coef)?;
        result = &result + &Polynomial::monomial(ctx, field, mono, coef);
    }
    Ok(result)
}
