//! Expression grammar, evaluation, and pointwise comparison for running-time
//! functions of a positive integer argument `n`.
//!
//! A function is admissible when it evaluates to a strictly positive real at
//! every probed point. Evaluation that leaves the representable range
//! saturates to `+inf`; the reciprocal of a saturated value is exactly `0`,
//! so saturated points contribute nothing to distance sums.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Expression tree for a running-time function of `n`.
///
/// `Factorial` covers both the postfix `!` and the `fact(...)` spelling;
/// `log` is the natural logarithm.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Number(f64),
    Var,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, Box<Expr>),
    Log(Box<Expr>),
    Sqrt(Box<Expr>),
    Exp(Box<Expr>),
    Factorial(Box<Expr>),
}

/// A parsed running-time function together with the text it came from.
#[derive(Debug, Clone)]
pub struct ComplexityFunction {
    source: String,
    ast: Expr,
}

impl PartialEq for ComplexityFunction {
    fn eq(&self, other: &Self) -> bool {
        self.ast == other.ast
    }
}

impl ComplexityFunction {
    /// Parses an expression in the grammar
    /// `expr := term (('+'|'-') term)*`, `term := unary (('*'|'/') unary)*`,
    /// `unary := '-' unary | postfix`, `postfix := atom ('!')*`,
    /// `atom := number | 'n' | name '(' expr ')' | '(' expr ')' | atom '^' unary`.
    pub fn parse(input: &str) -> Result<Self> {
        let ast = parser::parse(input)?;
        Ok(Self {
            source: input.trim().to_string(),
            ast,
        })
    }

    /// Wraps an already-built tree; the source text is the canonical
    /// rendering, so `parse(f.to_string())` reproduces the same tree.
    pub fn from_expr(ast: Expr) -> Self {
        let source = render(&ast);
        Self { source, ast }
    }

    /// The text this function was parsed from (or its canonical rendering
    /// when it was built programmatically).
    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn expr(&self) -> &Expr {
        &self.ast
    }

    /// Value at integer argument `n >= 1`. Errors unless the result is
    /// strictly positive; overflow saturates to `+inf`, which is accepted.
    pub fn eval(&self, n: u64) -> Result<f64> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "evaluation points start at n = 1".into(),
            ));
        }
        self.eval_at(n as f64)
    }

    /// Value at a real argument; used when sample points exceed `u64`.
    pub fn eval_at(&self, x: f64) -> Result<f64> {
        let v = eval_expr(&self.ast, x)?;
        if v <= 0.0 {
            return Err(Error::Domain(format!(
                "`{}` evaluates to {v} at n = {x}, outside (0, inf)",
                self.source
            )));
        }
        Ok(v)
    }

    /// `1/f(n)`; exactly `0` when the value saturates to `+inf`.
    pub fn recip(&self, n: u64) -> Result<f64> {
        let v = self.eval(n)?;
        Ok(if v.is_infinite() { 0.0 } else { 1.0 / v })
    }

    /// `ln f(x)`, computed structurally so that values far beyond `f64`
    /// range (for example `2^n` at `n = 2^16`) still yield a finite log.
    pub fn ln_at(&self, x: f64) -> Result<f64> {
        ln_expr(&self.ast, x)
    }
}

impl fmt::Display for ComplexityFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.ast))
    }
}

impl FromStr for ComplexityFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

/// Outcome of a pointwise comparison over a finite horizon.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceVerdict {
    pub dominates: bool,
    pub first_violation: Option<u64>,
    pub horizon: u32,
}

/// True when `f(n) <= g(n)` at every `1 <= n <= horizon`, comparing values
/// exactly as computed (saturated values compare as `+inf`).
pub fn dominates(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    horizon: u32,
) -> Result<DominanceVerdict> {
    if horizon == 0 {
        return Err(Error::InvalidParameter("horizon must be at least 1".into()));
    }
    for n in 1..=u64::from(horizon) {
        if f.eval(n)? > g.eval(n)? {
            return Ok(DominanceVerdict {
                dominates: false,
                first_violation: Some(n),
                horizon,
            });
        }
    }
    Ok(DominanceVerdict {
        dominates: true,
        first_violation: None,
        horizon,
    })
}

fn eval_expr(expr: &Expr, x: f64) -> Result<f64> {
    let v = match expr {
        Expr::Number(c) => *c,
        Expr::Var => x,
        Expr::Neg(a) => -eval_expr(a, x)?,
        Expr::Add(a, b) => eval_expr(a, x)? + eval_expr(b, x)?,
        Expr::Sub(a, b) => eval_expr(a, x)? - eval_expr(b, x)?,
        Expr::Mul(a, b) => eval_expr(a, x)? * eval_expr(b, x)?,
        Expr::Div(a, b) => {
            let d = eval_expr(b, x)?;
            if d == 0.0 {
                return Err(Error::Domain(format!("division by zero at n = {x}")));
            }
            eval_expr(a, x)? / d
        }
        Expr::Pow(a, b) => pow(eval_expr(a, x)?, eval_expr(b, x)?, x)?,
        Expr::Log(a) => {
            let v = eval_expr(a, x)?;
            if v <= 0.0 {
                return Err(Error::Domain(format!(
                    "log of non-positive value {v} at n = {x}"
                )));
            }
            v.ln()
        }
        Expr::Sqrt(a) => {
            let v = eval_expr(a, x)?;
            if v < 0.0 {
                return Err(Error::Domain(format!(
                    "sqrt of negative value {v} at n = {x}"
                )));
            }
            v.sqrt()
        }
        Expr::Exp(a) => eval_expr(a, x)?.exp(),
        Expr::Factorial(a) => factorial(eval_expr(a, x)?, x)?,
    };
    if v.is_nan() {
        return Err(Error::Domain(format!("undefined arithmetic at n = {x}")));
    }
    Ok(v)
}

fn pow(base: f64, exponent: f64, x: f64) -> Result<f64> {
    if base == 0.0 && exponent < 0.0 {
        return Err(Error::Domain(format!(
            "zero raised to a negative power at n = {x}"
        )));
    }
    let integral = exponent.fract() == 0.0 && exponent.abs() <= i32::MAX as f64;
    if base < 0.0 {
        // Exact signed integer power; powf would return NaN here.
        if !integral {
            return Err(Error::Domain(format!(
                "negative base {base} with non-integer exponent at n = {x}"
            )));
        }
        let sign = if (exponent as i64) % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(sign * (-base).powi(exponent as i32));
    }
    if integral {
        Ok(base.powi(exponent as i32))
    } else {
        Ok(base.powf(exponent))
    }
}

fn factorial(v: f64, x: f64) -> Result<f64> {
    if v.is_infinite() {
        return Ok(f64::INFINITY);
    }
    if v < 0.0 || v.fract() != 0.0 {
        return Err(Error::Domain(format!(
            "factorial of non-natural value {v} at n = {x}"
        )));
    }
    if v > 170.0 {
        // 171! exceeds f64 range.
        return Ok(f64::INFINITY);
    }
    let mut acc = 1.0;
    let mut k = 2.0;
    while k <= v {
        acc *= k;
        k += 1.0;
    }
    Ok(acc)
}

fn ln_expr(expr: &Expr, x: f64) -> Result<f64> {
    // When the value itself is representable, its log is the answer.
    if let Ok(v) = eval_expr(expr, x) {
        if v > 0.0 && v.is_finite() {
            return Ok(v.ln());
        }
        if v <= 0.0 {
            return Err(Error::Domain(format!(
                "log-space evaluation of a non-positive value at n = {x}"
            )));
        }
    }
    match expr {
        Expr::Mul(a, b) => Ok(ln_expr(a, x)? + ln_expr(b, x)?),
        Expr::Div(a, b) => Ok(ln_expr(a, x)? - ln_expr(b, x)?),
        Expr::Pow(a, b) => {
            let e = eval_expr(b, x)?;
            if !e.is_finite() {
                return Err(Error::Domain(format!(
                    "exponent overflows in log-space at n = {x}"
                )));
            }
            Ok(e * ln_expr(a, x)?)
        }
        Expr::Exp(a) => eval_expr(a, x),
        Expr::Sqrt(a) => Ok(ln_expr(a, x)? / 2.0),
        Expr::Log(a) => {
            let la = ln_expr(a, x)?;
            if la <= 0.0 {
                return Err(Error::Domain(format!(
                    "log of a value at most 1 in log-space at n = {x}"
                )));
            }
            Ok(la.ln())
        }
        Expr::Add(a, b) => Ok(log_add_exp(ln_expr(a, x)?, ln_expr(b, x)?)),
        Expr::Factorial(a) => ln_factorial(eval_expr(a, x)?, x),
        Expr::Number(_) | Expr::Var | Expr::Neg(_) | Expr::Sub(..) => Err(Error::Domain(format!(
            "cannot evaluate in log-space at n = {x}"
        ))),
    }
}

fn log_add_exp(a: f64, b: f64) -> f64 {
    let m = a.max(b);
    if m.is_infinite() {
        return m;
    }
    m + ((a - m).exp() + (b - m).exp()).ln()
}

fn ln_factorial(v: f64, x: f64) -> Result<f64> {
    if v.is_infinite() {
        return Ok(f64::INFINITY);
    }
    if v < 0.0 || v.fract() != 0.0 {
        return Err(Error::Domain(format!(
            "factorial of non-natural value {v} at n = {x}"
        )));
    }
    if v <= 10_000.0 {
        let mut acc = 0.0;
        let mut k = 2.0;
        while k <= v {
            acc += f64::ln(k);
            k += 1.0;
        }
        return Ok(acc);
    }
    // Stirling with the first correction term; relative error < 1e-12 here.
    let t = std::f64::consts::TAU * v;
    Ok(v * v.ln() - v + 0.5 * t.ln() + 1.0 / (12.0 * v))
}

fn precedence(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Neg(_) => 3,
        Expr::Pow(..) => 4,
        Expr::Factorial(_) => 5,
        _ => 6,
    }
}

fn render(e: &Expr) -> String {
    let mut out = String::new();
    render_into(e, 0, &mut out);
    out
}

fn render_into(e: &Expr, min: u8, out: &mut String) {
    if precedence(e) < min {
        out.push('(');
        render_into(e, 0, out);
        out.push(')');
        return;
    }
    match e {
        Expr::Number(c) => out.push_str(&format!("{c}")),
        Expr::Var => out.push('n'),
        Expr::Neg(a) => {
            out.push('-');
            render_into(a, 3, out);
        }
        Expr::Add(a, b) => {
            render_into(a, 1, out);
            out.push_str(" + ");
            render_into(b, 2, out);
        }
        Expr::Sub(a, b) => {
            render_into(a, 1, out);
            out.push_str(" - ");
            render_into(b, 2, out);
        }
        Expr::Mul(a, b) => {
            render_into(a, 2, out);
            out.push_str(" * ");
            render_into(b, 3, out);
        }
        Expr::Div(a, b) => {
            render_into(a, 2, out);
            out.push_str(" / ");
            render_into(b, 3, out);
        }
        // The base must be an atom and exponentiation is right-associative,
        // so a Pow or postfix base gets parenthesised.
        Expr::Pow(a, b) => {
            render_into(a, 6, out);
            out.push('^');
            render_into(b, 3, out);
        }
        Expr::Factorial(a) => {
            render_into(a, 5, out);
            out.push('!');
        }
        Expr::Log(a) => render_call("log", a, out),
        Expr::Sqrt(a) => render_call("sqrt", a, out),
        Expr::Exp(a) => render_call("exp", a, out),
    }
}

fn render_call(name: &str, arg: &Expr, out: &mut String) {
    out.push_str(name);
    out.push('(');
    render_into(arg, 0, out);
    out.push(')');
}

mod parser {
    use super::Expr;
    use crate::error::{Error, Result};

    #[derive(Debug, Clone, Copy, PartialEq)]
    enum Name {
        Log,
        Sqrt,
        Exp,
        Fact,
    }

    #[derive(Debug, Clone, PartialEq)]
    enum Tok {
        Num(f64),
        Var,
        Func(Name),
        Plus,
        Minus,
        Star,
        Slash,
        Caret,
        Bang,
        Open,
        Close,
    }

    fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
        let bytes = src.as_bytes();
        let mut toks = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let tok = match c {
                ' ' | '\t' | '\r' | '\n' => {
                    i += 1;
                    continue;
                }
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '!' => Tok::Bang,
                '(' => Tok::Open,
                ')' => Tok::Close,
                '0'..='9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i + 1 < bytes.len() && bytes[i] == b'.' && bytes[i + 1].is_ascii_digit() {
                        i += 1;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                    let text = &src[start..i];
                    let value: f64 = text.parse().map_err(|_| Error::Syntax {
                        position: start,
                        message: format!("malformed number `{text}`"),
                    })?;
                    if !value.is_finite() {
                        return Err(Error::Syntax {
                            position: start,
                            message: format!("numeric literal `{text}` out of range"),
                        });
                    }
                    toks.push((Tok::Num(value), start));
                    continue;
                }
                'a'..='z' | 'A'..='Z' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                        i += 1;
                    }
                    let name = &src[start..i];
                    let tok = match name {
                        "n" => Tok::Var,
                        "log" => Tok::Func(Name::Log),
                        "sqrt" => Tok::Func(Name::Sqrt),
                        "exp" => Tok::Func(Name::Exp),
                        "fact" => Tok::Func(Name::Fact),
                        _ => {
                            return Err(Error::UnknownIdentifier {
                                name: name.to_string(),
                                position: start,
                            })
                        }
                    };
                    toks.push((tok, start));
                    continue;
                }
                _ => {
                    return Err(Error::Syntax {
                        position: i,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            toks.push((tok, i));
            i += 1;
        }
        Ok(toks)
    }

    struct P {
        toks: Vec<(Tok, usize)>,
        i: usize,
        end: usize,
    }

    impl P {
        fn peek(&self) -> Option<&Tok> {
            self.toks.get(self.i).map(|(t, _)| t)
        }

        fn pos(&self) -> usize {
            self.toks.get(self.i).map_or(self.end, |(_, p)| *p)
        }

        fn bump(&mut self) -> Option<Tok> {
            let t = self.toks.get(self.i).map(|(t, _)| t.clone());
            if t.is_some() {
                self.i += 1;
            }
            t
        }

        fn expect_close(&mut self) -> Result<()> {
            match self.bump() {
                Some(Tok::Close) => Ok(()),
                _ => Err(Error::Syntax {
                    position: self.pos_prev(),
                    message: "expected `)`".into(),
                }),
            }
        }

        fn pos_prev(&self) -> usize {
            self.toks
                .get(self.i.saturating_sub(1))
                .map_or(self.end, |(_, p)| *p)
        }

        fn expr(&mut self) -> Result<Expr> {
            let mut node = self.term()?;
            loop {
                match self.peek() {
                    Some(Tok::Plus) => {
                        self.bump();
                        node = Expr::Add(Box::new(node), Box::new(self.term()?));
                    }
                    Some(Tok::Minus) => {
                        self.bump();
                        node = Expr::Sub(Box::new(node), Box::new(self.term()?));
                    }
                    _ => return Ok(node),
                }
            }
        }

        fn term(&mut self) -> Result<Expr> {
            let mut node = self.unary()?;
            loop {
                match self.peek() {
                    Some(Tok::Star) => {
                        self.bump();
                        node = Expr::Mul(Box::new(node), Box::new(self.unary()?));
                    }
                    Some(Tok::Slash) => {
                        self.bump();
                        node = Expr::Div(Box::new(node), Box::new(self.unary()?));
                    }
                    _ => return Ok(node),
                }
            }
        }

        fn unary(&mut self) -> Result<Expr> {
            if self.peek() == Some(&Tok::Minus) {
                self.bump();
                return Ok(Expr::Neg(Box::new(self.unary()?)));
            }
            self.postfix()
        }

        fn postfix(&mut self) -> Result<Expr> {
            let mut node = self.atom()?;
            while self.peek() == Some(&Tok::Bang) {
                self.bump();
                node = Expr::Factorial(Box::new(node));
            }
            Ok(node)
        }

        fn atom(&mut self) -> Result<Expr> {
            let mut node = self.primary()?;
            while self.peek() == Some(&Tok::Caret) {
                self.bump();
                node = Expr::Pow(Box::new(node), Box::new(self.unary()?));
            }
            Ok(node)
        }

        fn primary(&mut self) -> Result<Expr> {
            let position = self.pos();
            match self.bump() {
                Some(Tok::Num(v)) => Ok(Expr::Number(v)),
                Some(Tok::Var) => Ok(Expr::Var),
                Some(Tok::Func(name)) => {
                    if self.bump() != Some(Tok::Open) {
                        return Err(Error::Syntax {
                            position: self.pos_prev(),
                            message: "expected `(` after function name".into(),
                        });
                    }
                    let arg = Box::new(self.expr()?);
                    self.expect_close()?;
                    Ok(match name {
                        Name::Log => Expr::Log(arg),
                        Name::Sqrt => Expr::Sqrt(arg),
                        Name::Exp => Expr::Exp(arg),
                        Name::Fact => Expr::Factorial(arg),
                    })
                }
                Some(Tok::Open) => {
                    let inner = self.expr()?;
                    self.expect_close()?;
                    Ok(inner)
                }
                _ => Err(Error::Syntax {
                    position,
                    message: "expected an expression".into(),
                }),
            }
        }
    }

    pub fn parse(src: &str) -> Result<Expr> {
        let toks = lex(src)?;
        let end = src.len();
        let mut p = P { toks, i: 0, end };
        let node = p.expr()?;
        if p.i != p.toks.len() {
            return Err(Error::Syntax {
                position: p.pos(),
                message: "unexpected trailing input".into(),
            });
        }
        Ok(node)
    }
}
