//! Text literals for elements, pseudonorms, topologies, nets and dual pairs.
//!
//! Every `Display` form produced by this crate parses back to an equal value.

use std::str::FromStr;

use crate::convergence::{NetSpec, Rate, TableTail};
use crate::dualpair::{DualPair, Functional};
use crate::error::Error;
use crate::lattice::{Harmonic, LatticeElement, NormTag, SeqElement, Space};
use crate::pseudonorm::PseudonormExpr;
use crate::scalar::{Scalar, ScalarParseError};
use crate::topology::{product_topology, tau_prime, unbounded_topology, CollectionSpec, TopologySpec};

/// A parse failure with the byte offset it was detected at.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("at {pos}: {source}")]
    Semantic { pos: usize, source: Error },
}

impl ParseError {
    pub fn pos(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. } | ParseError::Semantic { pos, .. } => *pos,
        }
    }
}

type PResult<T> = std::result::Result<T, ParseError>;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(String),
    Sym(char),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

fn lex(text: &str) -> PResult<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(text[start..i].to_string()), start));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'-') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "[]{}(),=/;^-+:".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(ParseError::Syntax { pos: i, message: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

impl Parser {
    fn new(text: &str) -> PResult<Self> {
        Ok(Parser { toks: lex(text)?, at: 0, end: text.len() })
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError::Syntax { pos: self.pos(), message: message.into() })
    }

    fn sem<T>(&self, pos: usize, r: crate::error::Result<T>) -> PResult<T> {
        r.map_err(|source| ParseError::Semantic { pos, source })
    }

    fn is_sym(&self, c: char) -> bool {
        self.peek() == Some(&Tok::Sym(c))
    }

    fn eat(&mut self, c: char) -> bool {
        if self.is_sym(c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> PResult<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<()> {
        let pos = self.pos();
        let id = self.ident()?;
        if id == kw {
            self.expect('=')
        } else {
            Err(ParseError::Syntax { pos, message: format!("expected `{kw}=`, found `{id}`") })
        }
    }

    fn uint(&mut self) -> PResult<String> {
        match self.peek() {
            Some(Tok::Int(s)) => {
                let s = s.clone();
                self.at += 1;
                Ok(s)
            }
            _ => self.err("expected integer"),
        }
    }

    fn finish(&self) -> PResult<()> {
        if self.at < self.toks.len() {
            self.err("unexpected trailing input")
        } else {
            Ok(())
        }
    }

    fn scalar(&mut self) -> PResult<Scalar> {
        let pos = self.pos();
        let mut text = String::new();
        if self.eat('-') {
            text.push('-');
        } else {
            self.eat('+');
        }
        text.push_str(&self.uint()?);
        if self.eat('/') {
            text.push('/');
            text.push_str(&self.uint()?);
        }
        Scalar::from_str(&text).map_err(|e| ParseError::Syntax {
            pos,
            message: match e {
                ScalarParseError::ZeroDenominator => "zero denominator".into(),
                other => other.to_string(),
            },
        })
    }

    fn scalars(&mut self) -> PResult<Vec<Scalar>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if !self.eat(']') {
            loop {
                out.push(self.scalar()?);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok(out)
    }

    /// `pieces=[[start, d, c], ...]}` after the opening brace.
    fn pieces(&mut self, pos: usize) -> PResult<LatticeElement> {
        self.keyword("pieces")?;
        self.expect('[')?;
        let mut pieces = Vec::new();
        loop {
            let at = self.pos();
            let v = self.scalars()?;
            let [start, d, c] = <[Scalar; 3]>::try_from(v)
                .map_err(|_| ParseError::Syntax { pos: at, message: "expected `[start, d, c]`".into() })?;
            let start = match start.floor_natural() {
                Some(k) if start.is_integer() => k,
                _ => {
                    return Err(ParseError::Syntax {
                        pos: at,
                        message: "piece start must be a positive integer".into(),
                    })
                }
            };
            pieces.push((start, Harmonic::new(d, c)));
            if self.eat(']') {
                break;
            }
            self.expect(',')?;
        }
        self.expect('}')?;
        let seq = self.sem(pos, SeqElement::from_pieces(pieces))?;
        Ok(LatticeElement::Seq(seq))
    }

    fn element(&mut self) -> PResult<LatticeElement> {
        let pos = self.pos();
        if self.is_sym('[') {
            let v = self.scalars()?;
            if v.is_empty() {
                return Err(ParseError::Syntax { pos, message: "empty coordinate vector".into() });
            }
            Ok(LatticeElement::coord(v))
        } else if self.eat('{') {
            if matches!(self.peek(), Some(Tok::Ident(s)) if s == "pieces") {
                return self.pieces(pos);
            }
            self.keyword("prefix")?;
            let prefix = self.scalars()?;
            self.expect(',')?;
            self.keyword("d")?;
            let d = self.scalar()?;
            self.expect(',')?;
            self.keyword("c")?;
            let c = self.scalar()?;
            self.expect('}')?;
            Ok(LatticeElement::Seq(SeqElement::new(prefix, Harmonic::new(d, c))))
        } else if self.eat('(') {
            let mut blocks = vec![self.element()?];
            while self.eat(',') {
                blocks.push(self.element()?);
            }
            self.expect(')')?;
            Ok(LatticeElement::Product(blocks))
        } else {
            self.err("expected element `[..]`, `{prefix=..}` or `(..)`")
        }
    }

    fn elements(&mut self) -> PResult<Vec<LatticeElement>> {
        self.expect('[')?;
        let mut out = Vec::new();
        if !self.eat(']') {
            loop {
                out.push(self.element()?);
                if self.eat(']') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok(out)
    }

    fn space(&mut self) -> PResult<Space> {
        let pos = self.pos();
        match self.ident()?.as_str() {
            "rn" => {
                self.expect(':')?;
                let n: usize =
                    self.uint()?.parse().map_err(|_| ParseError::Syntax { pos, message: "bad dimension".into() })?;
                if n == 0 {
                    return Err(ParseError::Syntax { pos, message: "dimension must be positive".into() });
                }
                Ok(Space::Coord(n))
            }
            "seq" | "c0" => Ok(Space::Seq),
            "prod" => {
                self.expect('(')?;
                let mut blocks = vec![self.space()?];
                while self.eat(',') {
                    blocks.push(self.space()?);
                }
                self.expect(')')?;
                Ok(Space::Product(blocks))
            }
            other => Err(ParseError::Syntax { pos, message: format!("unknown space `{other}`") }),
        }
    }

    /// Optional `, T=zero` suffix selecting the zero pairing.
    fn zero_pairing(&mut self) -> PResult<bool> {
        if !self.eat(',') {
            return Ok(false);
        }
        self.keyword("T")?;
        let pos = self.pos();
        match self.ident()?.as_str() {
            "zero" => Ok(true),
            "standard" => Ok(false),
            other => Err(ParseError::Syntax { pos, message: format!("unknown pairing `{other}`") }),
        }
    }

    fn pair_for(space: Space, zero: bool) -> DualPair {
        if zero {
            DualPair::zeroed(space)
        } else {
            DualPair::standard(space)
        }
    }

    fn functional(&mut self) -> PResult<Functional> {
        let pos = self.pos();
        let e = self.element()?;
        self.sem(pos, Functional::new(e))
    }

    fn pseudonorm(&mut self) -> PResult<PseudonormExpr> {
        let pos = self.pos();
        let head = self.ident()?;
        self.expect('(')?;
        let out = match head.as_str() {
            "norm" => {
                let tpos = self.pos();
                let tag = self.ident()?;
                let tag = NormTag::from_str(&tag)
                    .map_err(|_| ParseError::Syntax { pos: tpos, message: format!("unknown norm `{tag}`") })?;
                PseudonormExpr::norm(tag)
            }
            "restrict" => {
                let inner = self.pseudonorm()?;
                self.expect(',')?;
                let u = self.element()?;
                self.sem(pos, inner.restrict(u))?
            }
            "usup" => {
                let inner = self.pseudonorm()?;
                self.expect(',')?;
                let family = self.elements()?;
                self.sem(pos, inner.unbounded_sup(family))?
            }
            "dual" => {
                self.keyword("a")?;
                let a = self.element()?;
                self.expect(',')?;
                self.keyword("y")?;
                let y = self.functional()?;
                let pair = Self::pair_for(a.space(), self.zero_pairing()?);
                self.sem(pos, PseudonormExpr::dual(pair, a, y))?
            }
            "absw" => {
                let y = self.functional()?;
                let pair = Self::pair_for(y.element().space(), self.zero_pairing()?);
                self.sem(pos, PseudonormExpr::abs_weak(pair, y))?
            }
            other => return Err(ParseError::Syntax { pos, message: format!("unknown pseudonorm `{other}`") }),
        };
        self.expect(')')?;
        Ok(out)
    }

    fn topology(&mut self) -> PResult<TopologySpec> {
        let pos = self.pos();
        let head = self.ident()?;
        self.expect('(')?;
        let out = match head.as_str() {
            "tau" => {
                let mut members = vec![self.pseudonorm()?];
                let mut space = None;
                while self.eat(',') {
                    if matches!(self.peek(), Some(Tok::Ident(s)) if s == "space") {
                        self.keyword("space")?;
                        space = Some(self.space()?);
                        break;
                    }
                    members.push(self.pseudonorm()?);
                }
                let t = self.sem(pos, TopologySpec::base(members))?;
                match space {
                    Some(s) => self.sem(pos, t.with_space(s))?,
                    None => t,
                }
            }
            "u" => {
                let parent = self.topology()?;
                self.expect(',')?;
                self.keyword("AA")?;
                self.expect('[')?;
                let mut sets = Vec::new();
                if !self.eat(']') {
                    loop {
                        let spos = self.pos();
                        let set = self.elements()?;
                        if set.is_empty() {
                            return Err(ParseError::Semantic { pos: spos, source: Error::EmptyFamily });
                        }
                        sets.push(set);
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                let collection = self.sem(pos, CollectionSpec::new(sets))?;
                self.sem(pos, unbounded_topology(&parent, &collection))?
            }
            "tauprime" => {
                let parent = self.topology()?;
                self.expect(',')?;
                self.keyword("probes")?;
                let probes = self.elements()?;
                self.sem(pos, tau_prime(&parent, &probes))?
            }
            "prod" => {
                let mut parts = vec![self.topology()?];
                while self.eat(',') {
                    parts.push(self.topology()?);
                }
                self.sem(pos, product_topology(&parts))?
            }
            other => return Err(ParseError::Syntax { pos, message: format!("unknown topology `{other}`") }),
        };
        self.expect(')')?;
        Ok(out)
    }

    fn rate(&mut self) -> PResult<Rate> {
        let pos = self.pos();
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == "const") {
            self.at += 1;
            return Ok(Rate::Constant);
        }
        let one = self.uint()?;
        self.expect('/')?;
        let rate = if self.eat_ident("k") {
            Rate::Harmonic
        } else {
            let two = self.uint()?;
            self.expect('^')?;
            if !self.eat_ident("k") || two != "2" {
                return Err(ParseError::Syntax { pos, message: "expected rate `1/k`, `1/2^k` or `const`".into() });
            }
            Rate::Geometric
        };
        if one != "1" {
            return Err(ParseError::Syntax { pos, message: "expected rate `1/k`, `1/2^k` or `const`".into() });
        }
        Ok(rate)
    }

    fn eat_ident(&mut self, id: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Ident(s)) if s == id) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn net(&mut self) -> PResult<NetSpec> {
        let pos = self.pos();
        let head = self.ident()?;
        match head.as_str() {
            "unitwalk" => return Ok(NetSpec::UnitWalk),
            "sin2d" => return Ok(NetSpec::sin2d()),
            _ => {}
        }
        self.expect('(')?;
        let out = match head.as_str() {
            "scaled" => {
                let v = self.element()?;
                self.expect(',')?;
                self.keyword("rate")?;
                NetSpec::scaled(v, self.rate()?)
            }
            "monup" => {
                self.keyword("limit")?;
                let limit = self.element()?;
                self.expect(',')?;
                self.keyword("rate")?;
                let rate = self.rate()?;
                self.sem(pos, limit.require_positive())?;
                NetSpec::monotone_up(limit, rate)
            }
            "sinusoid" => {
                self.keyword("base")?;
                let base = self.scalars()?;
                self.expect(',')?;
                self.keyword("amp")?;
                let amp = self.scalars()?;
                if base.len() != amp.len() || base.is_empty() {
                    return Err(ParseError::Syntax {
                        pos,
                        message: "base and amp must have equal nonzero length".into(),
                    });
                }
                NetSpec::Sinusoid { base, amp }
            }
            "table" => {
                let entries = self.elements()?;
                self.expect(';')?;
                self.keyword("tail")?;
                let tpos = self.pos();
                let tail = match self.ident()?.as_str() {
                    "const" => TableTail::Repeat,
                    "zero" => TableTail::Zero,
                    other => return Err(ParseError::Syntax { pos: tpos, message: format!("unknown tail `{other}`") }),
                };
                self.sem(pos, NetSpec::table(entries, tail))?
            }
            other => return Err(ParseError::Syntax { pos, message: format!("unknown net `{other}`") }),
        };
        self.expect(')')?;
        Ok(out)
    }

    fn dual_pair(&mut self) -> PResult<DualPair> {
        let pos = self.pos();
        if self.ident()? != "pair" {
            return Err(ParseError::Syntax { pos, message: "expected `pair(E=..)`".into() });
        }
        self.expect('(')?;
        self.keyword("E")?;
        let space = self.space()?;
        let zero = self.zero_pairing()?;
        self.expect(')')?;
        Ok(Self::pair_for(space, zero))
    }
}

fn whole<T>(text: &str, f: impl FnOnce(&mut Parser) -> PResult<T>) -> PResult<T> {
    let mut p = Parser::new(text)?;
    let out = f(&mut p)?;
    p.finish()?;
    Ok(out)
}

pub fn parse_element(text: &str) -> PResult<LatticeElement> {
    whole(text, Parser::element)
}

/// An element literal, or `0` for the zero of `space`.
pub fn parse_element_in(text: &str, space: &Space) -> PResult<LatticeElement> {
    if text.trim() == "0" {
        return Ok(space.zero());
    }
    let pos = text.len() - text.trim_start().len();
    let e = parse_element(text)?;
    space.check(&e).map_err(|source| ParseError::Semantic { pos, source })?;
    Ok(e)
}

/// A bracketed list of elements, `[e1, e2, ...]`.
pub fn parse_elements(text: &str) -> PResult<Vec<LatticeElement>> {
    whole(text, Parser::elements)
}

pub fn parse_functional(text: &str) -> PResult<Functional> {
    whole(text, Parser::functional)
}

pub fn parse_pseudonorm(text: &str) -> PResult<PseudonormExpr> {
    whole(text, Parser::pseudonorm)
}

pub fn parse_topology(text: &str) -> PResult<TopologySpec> {
    whole(text, Parser::topology)
}

pub fn parse_net(text: &str) -> PResult<NetSpec> {
    whole(text, Parser::net)
}

pub fn parse_space(text: &str) -> PResult<Space> {
    whole(text, Parser::space)
}

pub fn parse_pair(text: &str) -> PResult<DualPair> {
    whole(text, Parser::dual_pair)
}

pub fn parse_collection(text: &str) -> PResult<CollectionSpec> {
    let pos = text.len() - text.trim_start().len();
    let sets = whole(text, |p| {
        p.expect('[')?;
        let mut sets = Vec::new();
        if !p.eat(']') {
            loop {
                sets.push(p.elements()?);
                if p.eat(']') {
                    break;
                }
                p.expect(',')?;
            }
        }
        Ok(sets)
    })?;
    CollectionSpec::new(sets).map_err(|source| ParseError::Semantic { pos, source })
}

/// Anything the parser accepts at top level.
#[derive(Clone, Debug, PartialEq)]
pub enum Expression {
    Element(LatticeElement),
    Pseudonorm(PseudonormExpr),
    Topology(TopologySpec),
    Net(NetSpec),
}

/// Parse by the head of the text: element brackets, or a known constructor.
pub fn parse_expression(text: &str) -> PResult<Expression> {
    let t = text.trim_start();
    let head: String = t.chars().take_while(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
    match head.as_str() {
        "" => parse_element(text).map(Expression::Element),
        "norm" | "restrict" | "usup" | "dual" | "absw" => parse_pseudonorm(text).map(Expression::Pseudonorm),
        "tau" | "u" | "tauprime" | "prod" => parse_topology(text).map(Expression::Topology),
        "unitwalk" | "scaled" | "monup" | "sin2d" | "sinusoid" | "table" => parse_net(text).map(Expression::Net),
        other => {
            Err(ParseError::Syntax { pos: text.len() - t.len(), message: format!("unknown identifier `{other}`") })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elements() {
        assert_eq!(
            parse_element("[1, -2, 5/3]").unwrap(),
            LatticeElement::coord(vec![Scalar::one(), Scalar::from_int(-2), Scalar::ratio(5, 3)])
        );
        let e = parse_element("{prefix=[1,1/2], d=0, c=1}").unwrap();
        assert_eq!(e.as_seq().unwrap().entry(3), Scalar::ratio(1, 3));
        assert_eq!(
            parse_element("([1],[2,3])").unwrap().space(),
            Space::Product(vec![Space::Coord(1), Space::Coord(2)])
        );
    }

    #[test]
    fn piecewise_sequences_round_trip() {
        let e = LatticeElement::Seq(SeqElement::unit(500));
        let text = e.to_string();
        assert_eq!(text, "{pieces=[[1, 0, 0], [500, 1, 0], [501, 0, 0]]}");
        assert_eq!(parse_element(&text).unwrap(), e);
        assert!(parse_element("{pieces=[[2, 0, 0]]}").is_err());
    }

    #[test]
    fn zero_denominator_is_a_syntax_error() {
        let err = parse_element("[1, 1/0]").unwrap_err();
        assert!(matches!(&err, ParseError::Syntax { pos: 4, message } if message == "zero denominator"), "{err}");
    }

    #[test]
    fn empty_family_message() {
        let err = parse_pseudonorm("usup(norm(sup), [])").unwrap_err();
        assert!(err.to_string().contains("empty A generates discrete topology"), "{err}");
    }

    #[test]
    fn restrict_node_and_value() {
        let p = parse_pseudonorm("restrict(norm(sup), [2,2,2])").unwrap();
        assert!(matches!(p, PseudonormExpr::Restrict { .. }));
        assert_eq!(p.evaluate(&parse_element("[3,-1,0]").unwrap()).unwrap(), Scalar::from_int(2));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "norm(l1)",
            "restrict(norm(sup), [2,2,2])",
            "usup(norm(sup), [[1,0], [0,1]])",
            "dual(a=[1,1], y=[1,0])",
            "dual(a=[1,1], y=[1,0], T=zero)",
            "absw({prefix=[1,0,2], d=0, c=0})",
        ] {
            assert_eq!(parse_pseudonorm(s).unwrap().to_string(), s);
        }
        for s in [
            "tau(norm(sup))",
            "u(tau(norm(sup)), AA=[[[1,0]]])",
            "tauprime(tau(norm(sup)), probes=[[1,1]])",
            "prod(tau(norm(sup), space=rn:2), tau(norm(l1), space=rn:3))",
        ] {
            let t = parse_topology(s).unwrap();
            assert_eq!(parse_topology(&t.to_string()).unwrap().to_string(), t.to_string(), "{s}");
        }
        for s in [
            "unitwalk",
            "scaled([1,1], rate=1/k)",
            "monup(limit=[1,2], rate=1/2^k)",
            "sin2d",
            "table([[1], [0]]; tail=const)",
        ] {
            assert_eq!(parse_net(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_pair("pair(E=rn:3)").unwrap(), DualPair::standard(Space::Coord(3)));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse_pseudonorm("norm(sup").unwrap_err().pos(), 8);
        assert!(matches!(parse_expression("frob(1)"), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(parse_topology("u(tau(norm(sup)), AA=[[]])").unwrap_err().to_string().contains("empty A"));
        assert!(parse_element_in("[1,2]", &Space::Coord(3)).is_err());
        assert_eq!(parse_element_in("0", &Space::Seq).unwrap(), Space::Seq.zero());
    }
}
