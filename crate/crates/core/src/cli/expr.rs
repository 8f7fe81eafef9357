//! Infix polynomial sugar such as `z^2+2`, `(z^2-z)/2` or `3*T1*T2^2`.

use crate::field::{parse_rat, MPoly, Poly, Rat, Scalar};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rat),
    Var(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = cs[start..i].iter().collect();
            out.push(Tok::Num(
                parse_rat(&lit).ok_or_else(|| format!("bad number {lit}"))?,
            ));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            i += 1;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Var(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character '{c}'"));
        }
    }
    Ok(out)
}

#[derive(Debug, Clone)]
enum Ast {
    Num(Rat),
    Var(String),
    Neg(Box<Ast>),
    Bin(char, Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Ast, String> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Ast::Bin('+', Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Ast::Bin('-', Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Ast, String> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Ast::Bin('*', Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Ast::Bin('/', Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(
                self.peek(),
                Some(Tok::Var(_)) | Some(Tok::Num(_)) | Some(Tok::Op('('))
            ) {
                // implicit product, as in 2z or z(z-1)
                lhs = Ast::Bin('*', Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Ast, String> {
        if self.eat('-') {
            Ok(Ast::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Ast, String> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) if n.is_integer() => {
                    self.pos += 1;
                    let e: u32 = n
                        .to_integer()
                        .try_into()
                        .map_err(|_| "exponent too large".to_string())?;
                    Ok(Ast::Pow(Box::new(base), e))
                }
                _ => Err("exponent must be a nonnegative integer".into()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Ast, String> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Ast::Num(n))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Ast::Var(v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err("missing ')'".into());
                }
                Ok(e)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of expression".into()),
        }
    }
}

fn parse(s: &str) -> Result<Ast, String> {
    let mut p = Parser {
        toks: lex(s)?,
        pos: 0,
    };
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing input after token {}", p.pos));
    }
    Ok(ast)
}

fn rational_fn(ast: &Ast) -> Result<(Poly, Poly), String> {
    Ok(match ast {
        Ast::Num(n) => (
            Poly::constant(Scalar::new(n.clone())),
            Poly::constant(Scalar::one()),
        ),
        Ast::Var(v) if v == "z" || v == "T" => (Poly::x(), Poly::constant(Scalar::one())),
        Ast::Var(v) => return Err(format!("unknown variable {v}; use z")),
        Ast::Neg(a) => {
            let (n, d) = rational_fn(a)?;
            (-&n, d)
        }
        Ast::Pow(a, e) => {
            let (n, d) = rational_fn(a)?;
            (n.pow(*e as usize), d.pow(*e as usize))
        }
        Ast::Bin(op, a, b) => {
            let (an, ad) = rational_fn(a)?;
            let (bn, bd) = rational_fn(b)?;
            match op {
                '+' => (&(&an * &bd) + &(&bn * &ad), &ad * &bd),
                '-' => (&(&an * &bd) - &(&bn * &ad), &ad * &bd),
                '*' => (&an * &bn, &ad * &bd),
                '/' => {
                    if bn.is_zero() {
                        return Err("division by zero".into());
                    }
                    (&an * &bd, &ad * &bn)
                }
                _ => unreachable!(),
            }
        }
    })
}

/// A rational function of `z` in lowest terms with a monic denominator.
pub fn parse_rational_function(s: &str) -> Result<(Poly, Poly), String> {
    let (n, d) = rational_fn(&parse(s)?)?;
    let g = n.gcd(&d);
    let (n, _) = n.div_rem(&g);
    let (d, _) = d.div_rem(&g);
    let lead = d.leading().expect("nonzero denominator").recip();
    Ok((n.scale(&lead), d.scale(&lead)))
}

fn mpoly(ast: &Ast, var: &dyn Fn(&str) -> Option<usize>, nvars: usize) -> Result<MPoly, String> {
    Ok(match ast {
        Ast::Num(n) => MPoly::constant(nvars, Scalar::new(n.clone())),
        Ast::Var(v) => MPoly::var(
            nvars,
            var(v).ok_or_else(|| format!("unknown variable {v}"))?,
        ),
        Ast::Neg(a) => mpoly(a, var, nvars)?.scale(&Scalar::from_int(-1)),
        Ast::Pow(a, e) => mpoly(a, var, nvars)?.pow(*e as usize),
        Ast::Bin(op, a, b) => {
            let (x, y) = (mpoly(a, var, nvars)?, mpoly(b, var, nvars)?);
            match op {
                '+' => &x + &y,
                '-' => &x - &y,
                '*' => &x * &y,
                '/' => {
                    let c = constant_of(&y).ok_or("only division by constants is allowed")?;
                    if c.is_zero() {
                        return Err("division by zero".into());
                    }
                    x.scale(&c.recip())
                }
                _ => unreachable!(),
            }
        }
    })
}

fn constant_of(m: &MPoly) -> Option<Scalar> {
    if m.is_zero() {
        return Some(Scalar::zero());
    }
    let mut it = m.terms();
    let (e, c) = it.next()?;
    if it.next().is_none() && e.iter().all(|&k| k == 0) {
        Some(c.clone())
    } else {
        None
    }
}

/// A polynomial in `nvars` variables named `<prefix>1..<prefix>n`, with
/// the bare prefix accepted when there is a single variable. Both `z` and
/// `T` work as prefixes.
pub fn parse_mpoly(s: &str, nvars: usize) -> Result<MPoly, String> {
    let var = move |name: &str| -> Option<usize> {
        let rest = name.strip_prefix('z').or_else(|| name.strip_prefix('T'))?;
        if rest.is_empty() {
            return (nvars == 1).then_some(0);
        }
        let i: usize = rest.parse().ok()?;
        (1..=nvars).contains(&i).then(|| i - 1)
    };
    mpoly(&parse(s)?, &var, nvars)
}
