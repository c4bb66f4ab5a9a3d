//! Parser for the problem-file format.
//!
//! ```text
//! ring    { derivations: [d]; indeterminates: [y, z]; }
//! ranking { orderly; }                    # or: elimination: [y],[z],[x],[t];
//! system  { d(y)^2 + y; }
//! probe   { y' + 1; }                     # for member / invert
//! second  { y; }                          # second system for equal
//! bound   { 1; }                          # optional order bound
//! ```
//!
//! Expressions use `+ - * ^`, integer and rational literals, derivation
//! application `d(...)`, and the prime shorthand `y''` in ordinary rings.
//! Multiplication is always explicit.

use num::BigInt;

use crate::arith::{Poly, Rat};
use crate::diff::{Derivative, DiffPoly, DiffRing, Ranking, RingSpec};
use crate::error::Error;

/// A parsed problem: ring, ranking, and the task payloads.
#[derive(Debug, Clone)]
pub struct ProblemFile {
    pub ring: DiffRing,
    pub ranking: Ranking,
    pub system: Vec<DiffPoly>,
    pub second: Option<Vec<DiffPoly>>,
    pub probe: Option<DiffPoly>,
    pub bound: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Prime,
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Caret,
    Star,
    Plus,
    Minus,
    Slash,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, col, msg: msg.into() }
}

fn lex(text: &str) -> Result<Vec<Spanned>, Error> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tl, tc) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump(&mut chars);
            }
            '#' => {
                while let Some(&d) = chars.peek() {
                    if d == '\n' {
                        break;
                    }
                    bump(&mut chars);
                }
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                let n: BigInt = s.parse().expect("digits");
                out.push(Spanned { tok: Tok::Int(n), line: tl, col: tc });
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_alphanumeric() || d == '_' {
                        s.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                out.push(Spanned { tok: Tok::Ident(s), line: tl, col: tc });
            }
            _ => {
                let c = bump(&mut chars);
                let tok = match c {
                    '\'' => Tok::Prime,
                    '{' => Tok::LBrace,
                    '}' => Tok::RBrace,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '[' => Tok::LBracket,
                    ']' => Tok::RBracket,
                    ',' => Tok::Comma,
                    ';' => Tok::Semi,
                    ':' => Tok::Colon,
                    '^' => Tok::Caret,
                    '*' => Tok::Star,
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '/' => Tok::Slash,
                    other => return Err(err(tl, tc, format!("unexpected character `{other}`"))),
                };
                out.push(Spanned { tok, line: tl, col: tc });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Spanned> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|s| (s.line, s.col))
            .or_else(|| self.toks.last().map(|s| (s.line, s.col + 1)))
            .unwrap_or((1, 1))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), Error> {
        let (l, c) = self.here();
        match self.next() {
            Some(s) if s.tok == tok => Ok(()),
            _ => Err(err(l, c, format!("expected {what}"))),
        }
    }

    fn expect_ident(&mut self, what: &str) -> Result<(String, usize, usize), Error> {
        let (l, c) = self.here();
        match self.next() {
            Some(Spanned { tok: Tok::Ident(s), line, col }) => Ok((s, line, col)),
            _ => Err(err(l, c, format!("expected {what}"))),
        }
    }

    fn name_list(&mut self) -> Result<Vec<String>, Error> {
        self.expect(Tok::LBracket, "`[`")?;
        let mut names = Vec::new();
        loop {
            let (name, _, _) = self.expect_ident("a name")?;
            names.push(name);
            match self.peek().map(|s| s.tok.clone()) {
                Some(Tok::Comma) => {
                    self.next();
                }
                _ => break,
            }
        }
        self.expect(Tok::RBracket, "`]`")?;
        Ok(names)
    }
}

/// Expression parser over an existing ring. `ranking` is unused by the
/// grammar itself but the ordinary prime shorthand requires the ring.
struct ExprParser<'a> {
    ring: &'a DiffRing,
}

impl ExprParser<'_> {
    fn expr(&self, p: &mut Parser) -> Result<DiffPoly, Error> {
        let mut acc = self.term(p)?;
        loop {
            match p.peek().map(|s| s.tok.clone()) {
                Some(Tok::Plus) => {
                    p.next();
                    acc = &acc + &self.term(p)?;
                }
                Some(Tok::Minus) => {
                    p.next();
                    acc = &acc - &self.term(p)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&self, p: &mut Parser) -> Result<DiffPoly, Error> {
        let mut acc = self.factor(p)?;
        while let Some(Tok::Star) = p.peek().map(|s| s.tok.clone()) {
            p.next();
            acc = &acc * &self.factor(p)?;
        }
        Ok(acc)
    }

    fn factor(&self, p: &mut Parser) -> Result<DiffPoly, Error> {
        if let Some(Tok::Minus) = p.peek().map(|s| s.tok.clone()) {
            p.next();
            let inner = self.factor(p)?;
            return Ok(-&inner);
        }
        self.power(p)
    }

    fn power(&self, p: &mut Parser) -> Result<DiffPoly, Error> {
        let base = self.atom(p)?;
        if let Some(Tok::Caret) = p.peek().map(|s| s.tok.clone()) {
            p.next();
            let (l, c) = p.here();
            match p.next() {
                Some(Spanned { tok: Tok::Int(n), .. }) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| err(l, c, "exponent out of range"))?;
                    Ok(base.pow(e))
                }
                _ => Err(err(l, c, "expected an integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn primes(&self, p: &mut Parser, mut f: DiffPoly, line: usize, col: usize) -> Result<DiffPoly, Error> {
        while let Some(Tok::Prime) = p.peek().map(|s| s.tok.clone()) {
            if !self.ring.is_ordinary() {
                return Err(err(line, col, "the prime shorthand needs an ordinary ring"));
            }
            p.next();
            f = f.differentiate(0);
        }
        Ok(f)
    }

    fn atom(&self, p: &mut Parser) -> Result<DiffPoly, Error> {
        let (l, c) = p.here();
        match p.next() {
            Some(Spanned { tok: Tok::Int(n), .. }) => {
                // a rational literal is `int / int`
                if let Some(Tok::Slash) = p.peek().map(|s| s.tok.clone()) {
                    p.next();
                    let (dl, dc) = p.here();
                    match p.next() {
                        Some(Spanned { tok: Tok::Int(d), .. }) => {
                            if d == BigInt::from(0) {
                                return Err(err(dl, dc, "zero denominator"));
                            }
                            Ok(DiffPoly::constant(self.ring, Rat::new(n, d)))
                        }
                        _ => Err(err(dl, dc, "expected a denominator")),
                    }
                } else {
                    Ok(DiffPoly::new(self.ring, Poly::constant(Rat::from_integer(n))))
                }
            }
            Some(Spanned { tok: Tok::LParen, .. }) => {
                let inner = self.expr(p)?;
                p.expect(Tok::RParen, "`)`")?;
                self.primes(p, inner, l, c)
            }
            Some(Spanned { tok: Tok::Ident(name), line, col }) => {
                if let Some(idx) = self.ring.indeterminate_index(&name) {
                    let base = DiffPoly::from_derivative(
                        self.ring,
                        &Derivative::base(idx, self.ring.num_derivations()),
                    );
                    self.primes(p, base, line, col)
                } else if let Some(delta) = self.ring.derivation_index(&name) {
                    p.expect(Tok::LParen, "`(` after a derivation name")?;
                    let inner = self.expr(p)?;
                    p.expect(Tok::RParen, "`)`")?;
                    let derived = inner.differentiate(delta);
                    self.primes(p, derived, line, col)
                } else {
                    Err(err(line, col, format!("undeclared identifier `{name}`")))
                }
            }
            _ => Err(err(l, c, "expected an expression")),
        }
    }
}

fn parse_expr_list(p: &mut Parser, ring: &DiffRing) -> Result<Vec<DiffPoly>, Error> {
    let ep = ExprParser { ring };
    let mut out = Vec::new();
    loop {
        if let Some(Tok::RBrace) = p.peek().map(|s| s.tok.clone()) {
            break;
        }
        let f = ep.expr(p)?;
        p.expect(Tok::Semi, "`;` after the expression")?;
        out.push(f);
    }
    Ok(out)
}

/// Parse a whole problem file.
pub fn parse(text: &str) -> Result<ProblemFile, Error> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };

    let mut ring: Option<DiffRing> = None;
    let mut ranking_spec: Option<RankingBlock> = None;
    let mut system: Option<Vec<DiffPoly>> = None;
    let mut second: Option<Vec<DiffPoly>> = None;
    let mut probe: Option<DiffPoly> = None;
    let mut bound: Option<u32> = None;

    enum RankingBlock {
        Orderly,
        Elimination(Vec<Vec<String>>),
    }

    while p.peek().is_some() {
        let (name, line, col) = p.expect_ident("a block name")?;
        p.expect(Tok::LBrace, "`{`")?;
        match name.as_str() {
            "ring" => {
                let mut derivations: Option<Vec<String>> = None;
                let mut indeterminates: Option<Vec<String>> = None;
                loop {
                    if let Some(Tok::RBrace) = p.peek().map(|s| s.tok.clone()) {
                        break;
                    }
                    let (key, kl, kc) = p.expect_ident("`derivations` or `indeterminates`")?;
                    p.expect(Tok::Colon, "`:`")?;
                    let names = p.name_list()?;
                    p.expect(Tok::Semi, "`;`")?;
                    match key.as_str() {
                        "derivations" => derivations = Some(names),
                        "indeterminates" => indeterminates = Some(names),
                        other => {
                            return Err(err(kl, kc, format!("unknown ring field `{other}`")))
                        }
                    }
                }
                let derivations = derivations
                    .ok_or_else(|| err(line, col, "ring block lacks `derivations`"))?;
                let indeterminates = indeterminates
                    .ok_or_else(|| err(line, col, "ring block lacks `indeterminates`"))?;
                let spec = RingSpec { derivations, indeterminates };
                ring = Some(DiffRing::new(spec).map_err(|e| err(line, col, e.to_string()))?);
            }
            "ranking" => {
                let (kind, kl, kc) = p.expect_ident("`orderly` or `elimination`")?;
                match kind.as_str() {
                    "orderly" => {
                        p.expect(Tok::Semi, "`;`")?;
                        ranking_spec = Some(RankingBlock::Orderly);
                    }
                    "elimination" => {
                        p.expect(Tok::Colon, "`:`")?;
                        let mut blocks = Vec::new();
                        loop {
                            blocks.push(p.name_list()?);
                            match p.peek().map(|s| s.tok.clone()) {
                                Some(Tok::Comma) => {
                                    p.next();
                                }
                                _ => break,
                            }
                        }
                        p.expect(Tok::Semi, "`;`")?;
                        ranking_spec = Some(RankingBlock::Elimination(blocks));
                    }
                    other => {
                        return Err(err(kl, kc, format!("unknown ranking kind `{other}`")))
                    }
                }
            }
            "system" | "second" => {
                let ring_ref = ring
                    .as_ref()
                    .ok_or_else(|| err(line, col, "the ring block must come first"))?;
                let polys = parse_expr_list(&mut p, ring_ref)?;
                if name == "system" {
                    system = Some(polys);
                } else {
                    second = Some(polys);
                }
            }
            "probe" => {
                let ring_ref = ring
                    .as_ref()
                    .ok_or_else(|| err(line, col, "the ring block must come first"))?;
                let polys = parse_expr_list(&mut p, ring_ref)?;
                if polys.len() != 1 {
                    return Err(err(line, col, "probe block must hold exactly one expression"));
                }
                probe = Some(polys.into_iter().next().unwrap());
            }
            "bound" => {
                let (bl, bc) = p.here();
                match p.next() {
                    Some(Spanned { tok: Tok::Int(n), .. }) => {
                        bound = Some(
                            n.try_into().map_err(|_| err(bl, bc, "bound out of range"))?,
                        );
                    }
                    _ => return Err(err(bl, bc, "expected an integer bound")),
                }
                p.expect(Tok::Semi, "`;`")?;
            }
            other => return Err(err(line, col, format!("unknown block `{other}`"))),
        }
        p.expect(Tok::RBrace, "`}`")?;
    }

    let ring = ring.ok_or_else(|| err(1, 1, "missing ring block"))?;
    let ranking = match ranking_spec {
        None | Some(RankingBlock::Orderly) => Ranking::orderly(&ring),
        Some(RankingBlock::Elimination(blocks)) => {
            let mut index_blocks = Vec::with_capacity(blocks.len());
            for block in blocks {
                let mut ib = Vec::with_capacity(block.len());
                for name in block {
                    let idx = ring.indeterminate_index(&name).ok_or_else(|| {
                        err(1, 1, format!("ranking names undeclared indeterminate `{name}`"))
                    })?;
                    ib.push(idx);
                }
                index_blocks.push(ib);
            }
            Ranking::elimination(&ring, index_blocks)
                .map_err(|e| err(1, 1, e.to_string()))?
        }
    };
    let system = system.ok_or_else(|| err(1, 1, "missing system block"))?;
    if system.is_empty() {
        return Err(err(1, 1, "the system block is empty"));
    }
    Ok(ProblemFile { ring, ranking, system, second, probe, bound })
}

/// Parse a single expression in an existing ring (used by tests and the
/// round-trip property).
pub fn parse_expression(ring: &DiffRing, text: &str) -> Result<DiffPoly, Error> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let ep = ExprParser { ring };
    let f = ep.expr(&mut p)?;
    if p.peek().is_some() {
        let (l, c) = p.here();
        return Err(err(l, c, "trailing input after the expression"));
    }
    Ok(f)
}
