use std::fmt;

use thiserror::Error;

use super::{is_permutation, Colour, Generator, Sign, Tangle, TangleError};

/// Composition tree over the generating tangles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TangleExpr {
    Gen(Generator),
    /// `outer ∘_slot inner`.
    Compose(Box<TangleExpr>, usize, Box<TangleExpr>),
    /// Disc `i` of the inner expression becomes disc `sigma[i-1]`.
    Renumber(Vec<usize>, Box<TangleExpr>),
}

impl TangleExpr {
    pub fn gen(g: Generator) -> Self {
        TangleExpr::Gen(g)
    }

    pub fn compose(outer: TangleExpr, slot: usize, inner: TangleExpr) -> Self {
        TangleExpr::Compose(Box::new(outer), slot, Box::new(inner))
    }

    pub fn renumber(sigma: Vec<usize>, inner: TangleExpr) -> Self {
        TangleExpr::Renumber(sigma, Box::new(inner))
    }

    pub fn outer(&self) -> Colour {
        match self {
            TangleExpr::Gen(g) => g.outer(),
            TangleExpr::Compose(o, _, _) => o.outer(),
            TangleExpr::Renumber(_, e) => e.outer(),
        }
    }

    /// Internal disc colours in the order used by [`TangleExpr::realize`].
    pub fn slots(&self) -> Vec<Colour> {
        match self {
            TangleExpr::Gen(g) => g.slots(),
            TangleExpr::Compose(o, i, e) => {
                let mut s = o.slots();
                if *i == 0 || *i > s.len() {
                    return s;
                }
                let tail = s.split_off(*i);
                s.pop();
                s.extend(e.slots());
                s.extend(tail);
                s
            }
            TangleExpr::Renumber(sigma, e) => {
                let inner = e.slots();
                let mut out = inner.clone();
                for (i, c) in inner.into_iter().enumerate() {
                    if let Some(&t) = sigma.get(i) {
                        if t >= 1 && t <= out.len() {
                            out[t - 1] = c;
                        }
                    }
                }
                out
            }
        }
    }

    pub fn arity(&self) -> usize {
        self.slots().len()
    }

    /// Height of the generator tree: a subtree plugged into a disc sits one
    /// level below the tangle owning that disc.
    pub fn depth(&self) -> usize {
        match self {
            TangleExpr::Gen(_) => 1,
            TangleExpr::Compose(o, _, e) => o.depth().max(1 + e.depth()),
            TangleExpr::Renumber(_, e) => e.depth(),
        }
    }

    /// Folds the tree through composition and renumbering.
    pub fn realize(&self) -> Result<Tangle, TangleError> {
        match self {
            TangleExpr::Gen(g) => g.tangle(),
            TangleExpr::Compose(o, i, e) => o.realize()?.compose(*i, &e.realize()?),
            TangleExpr::Renumber(sigma, e) => {
                let t = e.realize()?;
                if !is_permutation(sigma, t.discs().len()) {
                    return Err(TangleError::NotAPermutation(t.discs().len()));
                }
                t.renumber(sigma)
            }
        }
    }
}

impl fmt::Display for TangleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TangleExpr::Gen(g) => write!(f, "{g}"),
            TangleExpr::Compose(o, i, e) => write!(f, "(compose {o} {i} {e})"),
            TangleExpr::Renumber(sigma, e) => {
                write!(f, "(renumber (")?;
                for (j, s) in sigma.iter().enumerate() {
                    if j > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{s}")?;
                }
                write!(f, ") {e})")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Debug, Clone, PartialEq)]
enum Sexp {
    Atom(String, usize),
    List(Vec<Sexp>, usize),
}

impl Sexp {
    fn pos(&self) -> usize {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        pos,
        msg: msg.into(),
    })
}

fn read_sexp(src: &str) -> Result<Sexp, ParseError> {
    let bytes = src.as_bytes();
    let mut stack: Vec<(Vec<Sexp>, usize)> = Vec::new();
    let mut result = None;
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if result.is_some() {
            return err(i, "trailing input");
        }
        match c {
            '(' => {
                stack.push((Vec::new(), i));
                i += 1;
            }
            ')' => {
                let Some((items, start)) = stack.pop() else {
                    return err(i, "unbalanced ')'");
                };
                let node = Sexp::List(items, start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => result = Some(node),
                }
                i += 1;
            }
            _ => {
                let start = i;
                while i < bytes.len() && !(bytes[i] as char).is_whitespace() && bytes[i] != b'(' && bytes[i] != b')' {
                    i += 1;
                }
                let node = Sexp::Atom(src[start..i].to_string(), start);
                match stack.last_mut() {
                    Some((parent, _)) => parent.push(node),
                    None => result = Some(node),
                }
            }
        }
    }
    if let Some((_, start)) = stack.last() {
        return err(*start, "unclosed '('");
    }
    result.ok_or(ParseError {
        pos: 0,
        msg: "empty input".into(),
    })
}

fn atom(s: &Sexp) -> Result<&str, ParseError> {
    match s {
        Sexp::Atom(a, _) => Ok(a),
        Sexp::List(_, p) => err(*p, "expected an atom"),
    }
}

fn number(s: &Sexp) -> Result<usize, ParseError> {
    let a = atom(s)?;
    a.parse().or_else(|_| err(s.pos(), format!("expected a number, found '{a}'")))
}

fn colour(s: &Sexp) -> Result<Colour, ParseError> {
    match atom(s)? {
        "0+" | "0" => Ok(Colour::ZERO_PLUS),
        "0-" => Ok(Colour::ZERO_MINUS),
        _ => Ok(Colour::new(number(s)?)),
    }
}

fn parse_gen(items: &[Sexp], pos: usize) -> Result<Generator, ParseError> {
    let Some(kind) = items.first() else {
        return err(pos, "missing generator kind");
    };
    let args = &items[1..];
    let want = |n: usize| -> Result<(), ParseError> {
        if args.len() == n {
            Ok(())
        } else {
            err(pos, format!("generator expects {n} argument(s), got {}", args.len()))
        }
    };
    let g = match atom(kind)? {
        "unit" => {
            want(1)?;
            match atom(&args[0])? {
                "plus" | "+" => Generator::Unit(Sign::Plus),
                "minus" | "-" => Generator::Unit(Sign::Minus),
                other => return err(args[0].pos(), format!("unknown unit sign '{other}'")),
            }
        }
        "id" => {
            want(1)?;
            Generator::Identity(colour(&args[0])?)
        }
        "M" => {
            want(1)?;
            Generator::Multiply(colour(&args[0])?)
        }
        "E" => {
            want(2)?;
            let (k, k1) = (number(&args[0])?, number(&args[1])?);
            if k1 != k + 1 {
                return err(pos, "E expects colours k and k+1");
            }
            Generator::Expectation(k)
        }
        "I" => {
            want(2)?;
            let (k1, k) = (number(&args[0])?, number(&args[1])?);
            if k1 != k + 1 {
                return err(pos, "I expects colours k+1 and k");
            }
            Generator::Inclusion(k)
        }
        "Eprime" => {
            want(1)?;
            Generator::LeftExpectation(number(&args[0])?)
        }
        "jones" => {
            want(1)?;
            Generator::Jones(number(&args[0])?)
        }
        other => return err(kind.pos(), format!("unknown generator '{other}'")),
    };
    Ok(g)
}

fn build(s: &Sexp) -> Result<TangleExpr, ParseError> {
    let Sexp::List(items, pos) = s else {
        return err(s.pos(), "expected a list");
    };
    let Some(head) = items.first() else {
        return err(*pos, "empty list");
    };
    match atom(head)? {
        "gen" => Ok(TangleExpr::Gen(parse_gen(&items[1..], *pos)?)),
        "compose" => {
            if items.len() != 4 {
                return err(*pos, "compose expects (compose <expr> <slot> <expr>)");
            }
            Ok(TangleExpr::compose(build(&items[1])?, number(&items[2])?, build(&items[3])?))
        }
        "renumber" => {
            if items.len() != 3 {
                return err(*pos, "renumber expects (renumber (<perm>) <expr>)");
            }
            let perm = match &items[1] {
                Sexp::List(xs, _) => xs.iter().map(number).collect::<Result<Vec<_>, _>>()?,
                other => vec![number(other)?],
            };
            Ok(TangleExpr::renumber(perm, build(&items[2])?))
        }
        other => err(head.pos(), format!("unknown form '{other}'")),
    }
}

/// Parses the s-expression tangle format, e.g.
/// `(compose (gen E 2 3) 1 (gen I 3 2))`.
pub fn parse_expr(src: &str) -> Result<TangleExpr, ParseError> {
    build(&read_sexp(src)?)
}
