//! Rational arithmetic over named atoms and parameters.
//!
//! Grammar:
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := number | ident | '(' expr ')'
//! number := digits ('/' digits)?     -- only when written without spaces
//! ```

use std::collections::BTreeMap;

use crate::Rational;

use super::FlagError;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Expr {
    Num(Rational),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    /// `None` on division by zero. Unknown names are reported by the caller
    /// before evaluation.
    pub(crate) fn eval(&self, env: &BTreeMap<String, Rational>) -> Option<Rational> {
        Some(match self {
            Expr::Num(r) => *r,
            Expr::Var(name) => *env.get(name)?,
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => {
                let d = b.eval(env)?;
                if d == Rational::from_integer(0) {
                    return None;
                }
                a.eval(env)? / d
            }
            Expr::Pow(a, e) => {
                let base = a.eval(env)?;
                (0..*e).fold(Rational::from_integer(1), |acc, _| acc * base)
            }
        })
    }

    pub(crate) fn names(&self, out: &mut Vec<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(n) => out.push(n.clone()),
            Expr::Neg(a) | Expr::Pow(a, _) => a.names(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.names(out);
                b.names(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, FlagError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |i: &mut usize| {
        let start = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        chars[start..*i].iter().collect::<String>()
    };
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let num: i128 = digits(&mut i)
                .parse()
                .map_err(|e| FlagError::Parse(format!("{e} in `{s}`")))?;
            let mut den = 1;
            if i + 1 < chars.len() && chars[i] == '/' && chars[i + 1].is_ascii_digit() {
                i += 1;
                den = digits(&mut i)
                    .parse()
                    .map_err(|e| FlagError::Parse(format!("{e} in `{s}`")))?;
                if den == 0 {
                    return Err(FlagError::Parse(format!("zero denominator in `{s}`")));
                }
            }
            out.push(Tok::Num(Rational::new(num, den)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(FlagError::Parse(format!("unexpected `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, what: &str) -> FlagError {
        FlagError::Parse(format!("{what} at token {} of `{}`", self.pos, self.src))
    }

    fn eat(&mut self, op: char) -> bool {
        if self.toks.get(self.pos) == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, FlagError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, FlagError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, FlagError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos) {
                Some(Tok::Num(r)) if r.is_integer() && *r.numer() >= 0 => {
                    let e =
                        u32::try_from(*r.numer()).map_err(|_| self.err("exponent too large"))?;
                    self.pos += 1;
                    return Ok(Expr::Pow(Box::new(base), e));
                }
                _ => return Err(self.err("expected a non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, FlagError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(Expr::Num(r))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a number, name or `(`")),
        }
    }
}

pub(crate) fn parse(src: &str) -> Result<Expr, FlagError> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        src,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(s: &str, env: &[(&str, Rational)]) -> Option<Rational> {
        let env = env.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        parse(s).unwrap().eval(&env)
    }

    #[test]
    fn precedence_and_fractions() {
        let x = Rational::new(1, 3);
        assert_eq!(eval("1/2 - x*3", &[("x", x)]), Some(Rational::new(-1, 2)));
        assert_eq!(
            eval("-(1 - 3*x)^2 + 2^3", &[("x", x)]),
            Some(Rational::from_integer(8))
        );
        assert_eq!(eval("1 / (x - 1/3)", &[("x", x)]), None);
        assert_eq!(eval("-2^2", &[]), Some(Rational::from_integer(-4)));
        assert_eq!(eval("6 / 2 / 3", &[]), Some(Rational::from_integer(1)));
    }

    #[test]
    fn rejects_malformed_input() {
        for s in ["1 +", "(1", "x^y", "1/0", "a $ b", "2 3"] {
            assert!(parse(s).is_err(), "{s}");
        }
    }
}
