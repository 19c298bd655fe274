//! Closed-form scalar expressions in up to two named parameters, with a
//! hand-written recursive-descent parser. The same grammar serves curve
//! coordinates (parameter `t`), surface coordinates (`u`, `v`) and planar
//! parameter curves.
//!
//! Grammar (whitespace-insensitive), loosest to tightest:
//!
//! ```text
//! expr   := term  (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := '-' factor | power
//! power  := atom ('^' factor)?            right-associative
//! atom   := number | name | name '(' expr ')' | '(' expr ')'
//! ```
//!
//! Names: the declared parameters, the constants `pi` and `e`, and the
//! functions `sin cos tan sinh cosh tanh exp log sqrt`.

use crate::jet::Calc;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
}

impl Func {
    fn from_name(s: &str) -> Option<Func> {
        Some(match s {
            "sin" => Func::Sin,
            "cos" => Func::Cos,
            "tan" => Func::Tan,
            "sinh" => Func::Sinh,
            "cosh" => Func::Cosh,
            "tanh" => Func::Tanh,
            "exp" => Func::Exp,
            "log" => Func::Log,
            "sqrt" => Func::Sqrt,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    /// Index into the parameter list the expression was parsed against.
    Var(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[derive(Debug, Error, PartialEq)]
#[error("parse error at byte {pos}: {msg} in `{src}`")]
pub struct ParseError {
    pub src: String,
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { src: self.src.to_string(), pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(b'-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat(b'/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.eat(b'-') {
            return Ok(Expr::Neg(Box::new(self.factor()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let exp = self.factor()?;
            return Ok(Expr::Pow(Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => self.name(),
            Some(c) => self.err(format!("unexpected `{}`", c as char)),
            None => self.err("unexpected end of expression"),
        }
    }

    fn number(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() {
            let c = self.bytes[self.pos];
            if c.is_ascii_digit() || c == b'.' {
                self.pos += 1;
            } else if (c == b'e' || c == b'E')
                && self.pos > start
                && self
                    .bytes
                    .get(self.pos + 1)
                    .is_some_and(|&d| d.is_ascii_digit() || d == b'+' || d == b'-')
            {
                self.pos += 2;
            } else {
                break;
            }
        }
        let text = &self.src[start..self.pos];
        match text.parse::<f64>() {
            Ok(v) => Ok(Expr::Const(v)),
            Err(_) => self.err(format!("bad number literal `{text}`")),
        }
    }

    fn name(&mut self) -> Result<Expr, ParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len()
            && (self.bytes[self.pos].is_ascii_alphanumeric() || self.bytes[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = &self.src[start..self.pos];
        if let Some(i) = self.vars.iter().position(|v| *v == name) {
            return Ok(Expr::Var(i));
        }
        match name {
            "pi" => return Ok(Expr::Const(std::f64::consts::PI)),
            "e" => return Ok(Expr::Const(std::f64::consts::E)),
            _ => {}
        }
        if let Some(f) = Func::from_name(name) {
            if !self.eat(b'(') {
                return self.err(format!("function `{name}` needs parentheses"));
            }
            let arg = self.expr()?;
            if !self.eat(b')') {
                return self.err("expected `)`");
            }
            return Ok(Expr::Call(f, Box::new(arg)));
        }
        self.err(format!("unknown name `{name}`"))
    }
}

impl Expr {
    /// Parse `src` against the declared parameter names (e.g. `["t"]` for a
    /// curve coordinate, `["u", "v"]` for a patch coordinate).
    pub fn parse(src: &str, vars: &[&str]) -> Result<Expr, ParseError> {
        let mut p = Parser { src, bytes: src.as_bytes(), pos: 0, vars };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.bytes.len() {
            return p.err("trailing input");
        }
        Ok(e)
    }

    /// Evaluate over any `Calc` type; `vars[i]` seeds `Var(i)`.
    pub fn eval<T: Calc>(&self, vars: &[T]) -> T {
        match self {
            Expr::Const(c) => T::constant(*c),
            Expr::Var(i) => vars[*i],
            Expr::Add(a, b) => a.eval(vars) + b.eval(vars),
            Expr::Sub(a, b) => a.eval(vars) - b.eval(vars),
            Expr::Mul(a, b) => a.eval(vars) * b.eval(vars),
            Expr::Div(a, b) => a.eval(vars) / b.eval(vars),
            Expr::Neg(a) => -a.eval(vars),
            Expr::Pow(a, b) => {
                let base = a.eval(vars);
                if let Expr::Const(p) = **b {
                    if p.fract() == 0.0 && p.abs() <= 64.0 {
                        return base.powi(p as i32);
                    }
                    return base.powf(p);
                }
                // general exponent: a^b = exp(b ln a)
                (b.eval(vars) * base.ln()).exp()
            }
            Expr::Call(f, a) => {
                let x = a.eval(vars);
                match f {
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Tan => x.tan(),
                    Func::Sinh => x.sinh(),
                    Func::Cosh => x.cosh(),
                    Func::Tanh => x.tanh(),
                    Func::Exp => x.exp(),
                    Func::Log => x.ln(),
                    Func::Sqrt => x.sqrt(),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jet::Jet3;

    fn ev(src: &str, t: f64) -> f64 {
        Expr::parse(src, &["t"]).unwrap().eval(&[t])
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(ev("1+2*3", 0.0), 7.0);
        assert_eq!(ev("2*3^2", 0.0), 18.0);
        assert!((ev("2^3^2", 0.0) - 512.0).abs() < 1e-9); // right-assoc
        assert_eq!(ev("-2^2", 0.0), -4.0); // unary minus binds looser than ^
        assert_eq!(ev("2^-1", 0.0), 0.5);
        assert_eq!(ev("6/3/2", 0.0), 1.0); // left-assoc
        assert_eq!(ev("1 - 2 - 3", 0.0), -4.0);
        assert_eq!(ev(" sin( pi / 2 ) ", 0.0), 1.0);
    }

    #[test]
    fn variables_and_functions() {
        assert!((ev("cosh(t)^2 - sinh(t)^2", 0.83) - 1.0).abs() < 1e-12);
        assert!((ev("exp(log(t))", 2.5) - 2.5).abs() < 1e-12);
        let e = Expr::parse("u*v + sin(u)", &["u", "v"]).unwrap();
        assert!((e.eval(&[0.5, 2.0]) - (1.0 + 0.5f64.sin())).abs() < 1e-12);
    }

    #[test]
    fn jet_evaluation_derivatives() {
        let e = Expr::parse("t^3 + 2*t", &["t"]).unwrap();
        let j = e.eval(&[Jet3::variable(2.0)]);
        assert_eq!(j.v, 12.0);
        assert_eq!(j.d1, 14.0);
        assert_eq!(j.d2, 12.0);
        assert_eq!(j.d3, 6.0);
    }

    #[test]
    fn parse_errors() {
        assert!(Expr::parse("1 +", &["t"]).is_err());
        assert!(Expr::parse("bogus(t)", &["t"]).is_err());
        assert!(Expr::parse("t u", &["t", "u"]).is_err());
        assert!(Expr::parse("sin t", &["t"]).is_err());
        assert!(Expr::parse("(1+2", &["t"]).is_err());
    }
}
