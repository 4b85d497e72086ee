//! Syntactic endofunctors over the finite-set kernel.
//!
//! A [`FunctorExpr`] is a closed grammar of set-valued functors: constants,
//! identity, binary products and coproducts, exponentials with a fixed
//! base, covariant powerset, and composition. Evaluating one at an object or
//! a morphism is total up to the size cap, and the action on morphisms is
//! computed structurally (powerset by direct image, exponential by
//! post-composition).
//!
//! The same grammar has a concrete text syntax used by the command line:
//!
//! ```text
//! Const({a,b}) | Id | Prod(F,G) | Coprod(F,G) | Exp({s0,s1},F) | Pow(F) | Comp(F,G)
//! ```
//!
//! plus the sugar `Writer(S)`, `Reader(S)`, `Maybe`, `Costate(S)`, which
//! expand to their definitions and print back expanded. A set literal is
//! either `{l1,l2,...}` or a bare number `n` meaning the canonical n-element
//! set `{e0,...}`.

use std::fmt;

use crate::error::{Error, Result};
use crate::finset::{
    checked_pow, coproduct, coproduct_map, exponential, identity, powerset, product, product_map,
    FinFun, FinSet,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FunctorExpr {
    Const(FinSet),
    Id,
    Prod(Box<FunctorExpr>, Box<FunctorExpr>),
    Coprod(Box<FunctorExpr>, Box<FunctorExpr>),
    /// `Exp(S, F)` is `X -> [S, F(X)]`.
    Exp(FinSet, Box<FunctorExpr>),
    Pow(Box<FunctorExpr>),
    /// `Comp(F, G)` is `X -> F(G(X))`.
    Comp(Box<FunctorExpr>, Box<FunctorExpr>),
}

impl FunctorExpr {
    /// `X -> S x X`.
    pub fn writer(s: FinSet) -> Self {
        FunctorExpr::Prod(Box::new(FunctorExpr::Const(s)), Box::new(FunctorExpr::Id))
    }

    /// `X -> [S, X]`.
    pub fn reader(s: FinSet) -> Self {
        FunctorExpr::Exp(s, Box::new(FunctorExpr::Id))
    }

    /// `X -> 1 + X`, with the `inl *` element playing "nothing".
    pub fn maybe() -> Self {
        FunctorExpr::Coprod(
            Box::new(FunctorExpr::Const(FinSet::unit())),
            Box::new(FunctorExpr::Id),
        )
    }

    /// `X -> S x [S, X]`.
    pub fn costate(s: FinSet) -> Self {
        FunctorExpr::Prod(
            Box::new(FunctorExpr::Const(s.clone())),
            Box::new(FunctorExpr::reader(s)),
        )
    }

    pub fn prod(f: FunctorExpr, g: FunctorExpr) -> Self {
        FunctorExpr::Prod(Box::new(f), Box::new(g))
    }

    pub fn coprod(f: FunctorExpr, g: FunctorExpr) -> Self {
        FunctorExpr::Coprod(Box::new(f), Box::new(g))
    }

    pub fn comp(f: FunctorExpr, g: FunctorExpr) -> Self {
        FunctorExpr::Comp(Box::new(f), Box::new(g))
    }

    pub fn apply_obj(&self, x: &FinSet, cap: usize) -> Result<FinSet> {
        match self {
            FunctorExpr::Const(a) => Ok(a.clone()),
            FunctorExpr::Id => Ok(x.clone()),
            FunctorExpr::Prod(f, g) => {
                let fx = f.apply_obj(x, cap)?;
                let gx = g.apply_obj(x, cap)?;
                guard(
                    (fx.size() as u128).checked_mul(gx.size() as u128),
                    cap,
                )?;
                Ok(product(&fx, &gx).object)
            }
            FunctorExpr::Coprod(f, g) => {
                let fx = f.apply_obj(x, cap)?;
                let gx = g.apply_obj(x, cap)?;
                guard(
                    (fx.size() as u128).checked_add(gx.size() as u128),
                    cap,
                )?;
                Ok(coproduct(&fx, &gx).object)
            }
            FunctorExpr::Exp(s, f) => {
                let fx = f.apply_obj(x, cap)?;
                guard(checked_pow(fx.size(), s.size()), cap)?;
                Ok(exponential(s, &fx).object)
            }
            FunctorExpr::Pow(f) => {
                let fx = f.apply_obj(x, cap)?;
                guard(checked_pow(2, fx.size()), cap)?;
                Ok(powerset(&fx).object)
            }
            FunctorExpr::Comp(f, g) => {
                let gx = g.apply_obj(x, cap)?;
                f.apply_obj(&gx, cap)
            }
        }
    }

    pub fn apply_mor(&self, h: &FinFun, cap: usize) -> Result<FinFun> {
        match self {
            FunctorExpr::Const(a) => Ok(identity(a)),
            FunctorExpr::Id => Ok(h.clone()),
            FunctorExpr::Prod(f, g) => {
                // cap-check via the object evaluation before materializing tables
                self.apply_obj(h.dom(), cap)?;
                self.apply_obj(h.cod(), cap)?;
                Ok(product_map(&f.apply_mor(h, cap)?, &g.apply_mor(h, cap)?))
            }
            FunctorExpr::Coprod(f, g) => {
                self.apply_obj(h.dom(), cap)?;
                self.apply_obj(h.cod(), cap)?;
                Ok(coproduct_map(&f.apply_mor(h, cap)?, &g.apply_mor(h, cap)?))
            }
            FunctorExpr::Exp(s, f) => {
                self.apply_obj(h.dom(), cap)?;
                self.apply_obj(h.cod(), cap)?;
                let fh = f.apply_mor(h, cap)?;
                let src = exponential(s, fh.dom());
                let dst = exponential(s, fh.cod());
                let mut values = Vec::with_capacity(s.size());
                Ok(FinFun::from_fn(
                    src.object.clone(),
                    dst.object.clone(),
                    |i| {
                        values.clear();
                        values.extend(src.decode(i).into_iter().map(|v| fh.apply(v)));
                        dst.encode(&values)
                    },
                ))
            }
            FunctorExpr::Pow(f) => {
                self.apply_obj(h.dom(), cap)?;
                self.apply_obj(h.cod(), cap)?;
                let fh = f.apply_mor(h, cap)?;
                let src = powerset(fh.dom());
                let dst = powerset(fh.cod());
                Ok(src.direct_image(&fh, &dst))
            }
            FunctorExpr::Comp(f, g) => {
                let gh = g.apply_mor(h, cap)?;
                f.apply_mor(&gh, cap)
            }
        }
    }

    pub fn parse(input: &str) -> Result<Self> {
        let mut p = Parser::new(input);
        let e = p.expr()?;
        p.expect_end()?;
        Ok(e)
    }
}

fn guard(size: Option<u128>, cap: usize) -> Result<()> {
    match size {
        Some(s) if s <= cap as u128 => Ok(()),
        Some(s) => Err(Error::SizeCap { size: s, cap }),
        None => Err(Error::SizeCap {
            size: u128::MAX,
            cap,
        }),
    }
}

impl fmt::Display for FunctorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctorExpr::Const(a) => write!(f, "Const({})", set_literal(a)),
            FunctorExpr::Id => write!(f, "Id"),
            FunctorExpr::Prod(a, b) => write!(f, "Prod({a},{b})"),
            FunctorExpr::Coprod(a, b) => write!(f, "Coprod({a},{b})"),
            FunctorExpr::Exp(s, a) => write!(f, "Exp({},{a})", set_literal(s)),
            FunctorExpr::Pow(a) => write!(f, "Pow({a})"),
            FunctorExpr::Comp(a, b) => write!(f, "Comp({a},{b})"),
        }
    }
}

fn set_literal(s: &FinSet) -> String {
    format!("{{{}}}", s.labels().join(","))
}

/// Parses a standalone set literal (`{a,b}` or a bare size).
pub fn parse_set(input: &str) -> Result<FinSet> {
    let mut p = Parser::new(input);
    let s = p.set()?;
    p.expect_end()?;
    Ok(s)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn advance(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(b' ' | b'\t' | b'\n' | b'\r')) {
            self.advance();
        }
    }

    fn eat(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(found) if found == c => {
                self.advance();
                Ok(())
            }
            Some(found) => Err(self.err(format!(
                "expected {:?}, found {:?}",
                c as char, found as char
            ))),
            None => Err(self.err(format!("expected {:?}, found end of input", c as char))),
        }
    }

    fn word(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || matches!(c, b'_' | b'*' | b'-' | b'.' | b'\'') {
                self.advance();
            } else {
                break;
            }
        }
        if self.pos == start {
            return Err(self.err("expected a name"));
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn set(&mut self) -> Result<FinSet> {
        self.skip_ws();
        match self.peek() {
            Some(b'{') => {
                self.advance();
                let mut labels = Vec::new();
                self.skip_ws();
                if self.peek() == Some(b'}') {
                    self.advance();
                    return FinSet::new(labels);
                }
                loop {
                    labels.push(self.word()?);
                    self.skip_ws();
                    match self.peek() {
                        Some(b',') => {
                            self.advance();
                        }
                        Some(b'}') => {
                            self.advance();
                            break;
                        }
                        _ => return Err(self.err("expected ',' or '}' in set literal")),
                    }
                }
                FinSet::new(labels)
            }
            Some(c) if c.is_ascii_digit() => {
                let w = self.word()?;
                let n: usize = w
                    .parse()
                    .map_err(|_| self.err(format!("bad set size {w:?}")))?;
                Ok(FinSet::canonical(n))
            }
            _ => Err(self.err("expected a set literal ('{...}' or a size)")),
        }
    }

    fn expr(&mut self) -> Result<FunctorExpr> {
        let name = self.word()?;
        match name.as_str() {
            "Id" => Ok(FunctorExpr::Id),
            "Maybe" => Ok(FunctorExpr::maybe()),
            "Const" => {
                self.eat(b'(')?;
                let s = self.set()?;
                self.eat(b')')?;
                Ok(FunctorExpr::Const(s))
            }
            "Prod" | "Coprod" | "Comp" => {
                self.eat(b'(')?;
                let a = self.expr()?;
                self.eat(b',')?;
                let b = self.expr()?;
                self.eat(b')')?;
                Ok(match name.as_str() {
                    "Prod" => FunctorExpr::prod(a, b),
                    "Coprod" => FunctorExpr::coprod(a, b),
                    _ => FunctorExpr::comp(a, b),
                })
            }
            "Exp" => {
                self.eat(b'(')?;
                let s = self.set()?;
                self.eat(b',')?;
                let a = self.expr()?;
                self.eat(b')')?;
                Ok(FunctorExpr::Exp(s, Box::new(a)))
            }
            "Pow" => {
                self.eat(b'(')?;
                let a = self.expr()?;
                self.eat(b')')?;
                Ok(FunctorExpr::Pow(Box::new(a)))
            }
            "Writer" | "Reader" | "Costate" => {
                self.eat(b'(')?;
                let s = self.set()?;
                self.eat(b')')?;
                Ok(match name.as_str() {
                    "Writer" => FunctorExpr::writer(s),
                    "Reader" => FunctorExpr::reader(s),
                    _ => FunctorExpr::costate(s),
                })
            }
            other => Err(self.err(format!("unknown functor constructor {other:?}"))),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        self.skip_ws();
        if let Some(c) = self.peek() {
            return Err(self.err(format!("unexpected trailing input starting at {:?}", c as char)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::{all_functions, compose};

    const CAP: usize = 4096;

    fn two() -> FinSet {
        FinSet::canonical(2)
    }

    #[test]
    fn functor_laws_hold_structurally() {
        let exprs = vec![
            FunctorExpr::Id,
            FunctorExpr::writer(two()),
            FunctorExpr::reader(two()),
            FunctorExpr::maybe(),
            FunctorExpr::costate(two()),
            FunctorExpr::Pow(Box::new(FunctorExpr::Id)),
            FunctorExpr::comp(FunctorExpr::maybe(), FunctorExpr::writer(two())),
            FunctorExpr::coprod(FunctorExpr::reader(two()), FunctorExpr::Id),
        ];
        let a = FinSet::canonical(2);
        let b = FinSet::canonical(3);
        let c = FinSet::unit();
        for e in &exprs {
            let ida = identity(&a);
            assert_eq!(
                e.apply_mor(&ida, CAP).unwrap(),
                identity(&e.apply_obj(&a, CAP).unwrap()),
                "identity preservation for {e}"
            );
            for f in all_functions(&a, &b) {
                for g in all_functions(&b, &c) {
                    let gf = compose(&g, &f).unwrap();
                    let lhs = e.apply_mor(&gf, CAP).unwrap();
                    let rhs = compose(&e.apply_mor(&g, CAP).unwrap(), &e.apply_mor(&f, CAP).unwrap())
                        .unwrap();
                    assert_eq!(lhs, rhs, "composition preservation for {e}");
                }
            }
        }
    }

    #[test]
    fn maybe_adds_a_fresh_point() {
        let m = FunctorExpr::maybe();
        let x = FinSet::canonical(2);
        let mx = m.apply_obj(&x, CAP).unwrap();
        assert_eq!(mx.labels(), &["inl *", "inr e0", "inr e1"]);
        let empty = m.apply_obj(&FinSet::empty(), CAP).unwrap();
        assert_eq!(empty.size(), 1);
    }

    #[test]
    fn powerset_morphism_is_direct_image() {
        let p = FunctorExpr::Pow(Box::new(FunctorExpr::Id));
        let a = FinSet::canonical(2);
        let b = FinSet::canonical(2);
        // collapse both elements to e0: direct image sends {e0},{e1},{e0,e1} to {e0}
        let f = FinFun::constant(a.clone(), b.clone(), 0);
        let pf = p.apply_mor(&f, CAP).unwrap();
        assert_eq!(pf.table(), &[0, 1, 1, 1]);
    }

    #[test]
    fn size_cap_is_a_reported_error() {
        let p = FunctorExpr::Pow(Box::new(FunctorExpr::Pow(Box::new(FunctorExpr::Id))));
        let x = FinSet::canonical(3);
        match p.apply_obj(&x, 64) {
            Err(Error::SizeCap { size, cap }) => {
                assert_eq!(size, 256);
                assert_eq!(cap, 64);
            }
            other => panic!("expected a size-cap error, got {other:?}"),
        }
    }

    #[test]
    fn parser_roundtrips_and_reports_positions() {
        let cases = [
            "Id",
            "Const({a,b})",
            "Prod(Const({s0,s1}),Id)",
            "Coprod(Const({*}),Id)",
            "Exp({s0,s1},Id)",
            "Pow(Id)",
            "Comp(Pow(Id),Maybe)",
        ];
        for c in cases {
            let e = FunctorExpr::parse(c).unwrap();
            assert_eq!(FunctorExpr::parse(&e.to_string()).unwrap(), e);
        }
        assert_eq!(FunctorExpr::parse("Writer(2)").unwrap(), FunctorExpr::writer(two()));
        assert_eq!(FunctorExpr::parse("Maybe").unwrap(), FunctorExpr::maybe());
        assert_eq!(
            FunctorExpr::parse("Costate(2)").unwrap(),
            FunctorExpr::costate(two())
        );
        match FunctorExpr::parse("Prod(Id Id)") {
            Err(Error::Parse { line: 1, col, .. }) => assert!(col > 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
