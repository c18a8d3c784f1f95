//! A small two-sorted expression language over a mnesor space.
//!
//! ```text
//! statement := [ name "=" ] expr
//! expr      := term { "+" term }
//! term      := atom { "*" gfactor }
//! atom      := "[" name* "]" | "0" | name | "(" expr ")"
//! gexpr     := gfactor { "|" gfactor }
//! gfactor   := gatom { "&" gatom }
//! gatom     := "{" name* "}" | "top" | "bot" | name | "(" gexpr ")"
//! ```
//!
//! A statement is either a mnesor expression or a granular expression. A
//! bare name is sort-ambiguous and resolved against the environment.

use alloc::borrow::ToOwned;
use alloc::boxed::Box;
use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::MnesorSpace;
use crate::checker::Value;
use crate::lattice::GranularId;
use crate::lattice_model::SelfActionSpace;
use crate::seq_model::{SeqError, SeqMnesor, SeqSpace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MExpr {
    Tuple(Vec<String>),
    Zero,
    Name(String),
    Sum(Box<MExpr>, Box<MExpr>),
    Act(Box<MExpr>, GExpr),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum GExpr {
    Set(Vec<String>),
    Top,
    Bot,
    Name(String),
    Join(Box<GExpr>, Box<GExpr>),
    Meet(Box<GExpr>, Box<GExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// A bare name, resolved by the environment.
    Name(String),
    Mnesor(MExpr),
    Granular(GExpr),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Statement {
    pub target: Option<String>,
    pub expr: Expr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnknownToken,
    UnexpectedToken,
    UnbalancedBracket,
    SortMismatch,
}

/// A syntax error at a byte offset, with the set of tokens that would
/// have been accepted there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub offset: usize,
    pub expected: BTreeSet<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            ParseErrorKind::UnknownToken => "unknown token",
            ParseErrorKind::UnexpectedToken => "unexpected token",
            ParseErrorKind::UnbalancedBracket => "unbalanced bracket",
            ParseErrorKind::SortMismatch => "sort error",
        };
        write!(f, "{what} at offset {}: found {}", self.offset, self.found)?;
        if !self.expected.is_empty() {
            let list: Vec<&str> = self.expected.iter().map(String::as_str).collect();
            write!(f, ", expected {}", list.join(" or "))?;
        }
        Ok(())
    }
}

impl core::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    LParen,
    RParen,
    Plus,
    Star,
    Bar,
    Amp,
    Eq,
    Word(String),
    /// A character outside the language; lexing stops there.
    Bad(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::End => "end of input".to_string(),
            Tok::Bad(c) => format!("`{c}`"),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LBrack => "[",
            Tok::RBrack => "]",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::Plus => "+",
            Tok::Star => "*",
            Tok::Bar => "|",
            Tok::Amp => "&",
            Tok::Eq => "=",
            Tok::Word(_) | Tok::Bad(_) | Tok::End => "",
        }
    }
}

const NAME: &str = "name";
const END: &str = "end of input";

fn lex(src: &str) -> Vec<(usize, Tok)> {
    let mut out = Vec::new();
    let mut chars = src.char_indices().peekable();
    while let Some(&(i, c)) = chars.peek() {
        let tok = match c {
            c if c.is_whitespace() => {
                chars.next();
                continue;
            }
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '+' => Tok::Plus,
            '*' => Tok::Star,
            '|' => Tok::Bar,
            '&' => Tok::Amp,
            '=' => Tok::Eq,
            c if is_word_char(c) => {
                let mut end = i;
                while let Some(&(j, d)) = chars.peek() {
                    if !is_word_char(d) {
                        break;
                    }
                    end = j + d.len_utf8();
                    chars.next();
                }
                out.push((i, Tok::Word(src[i..end].to_owned())));
                continue;
            }
            other => {
                out.push((i, Tok::Bad(other)));
                break;
            }
        };
        chars.next();
        out.push((i, tok));
    }
    out.push((src.len(), Tok::End));
    out
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Whether `w` can stand alone as a name (outside literals).
pub fn is_identifier(w: &str) -> bool {
    let mut cs = w.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic() || c == '_')
        && cs.all(is_word_char)
        && !is_keyword(w)
}

fn is_keyword(w: &str) -> bool {
    matches!(w, "top" | "bot")
}

struct Parser<'t> {
    toks: &'t [(usize, Tok)],
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl<'t> Parser<'t> {
    fn peek(&self) -> &'t Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> &'t Tok {
        let t = &self.toks[self.pos].1;
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, kind: ParseErrorKind, expected: &[&str]) -> ParseError {
        ParseError {
            kind: match self.peek() {
                Tok::Bad(_) => ParseErrorKind::UnknownToken,
                _ => kind,
            },
            offset: self.offset(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().describe(),
        }
    }

    fn names_until(&mut self, close: Tok) -> PResult<Vec<String>> {
        let mut names = Vec::new();
        loop {
            match self.peek() {
                Tok::Word(w) => {
                    names.push(w.clone());
                    self.bump();
                }
                t if *t == close => {
                    self.bump();
                    return Ok(names);
                }
                Tok::End | Tok::RBrack | Tok::RBrace | Tok::RParen => {
                    return Err(self.error(
                        ParseErrorKind::UnbalancedBracket,
                        &[NAME, quote(close.symbol())],
                    ))
                }
                _ => {
                    return Err(self.error(
                        ParseErrorKind::UnexpectedToken,
                        &[NAME, quote(close.symbol())],
                    ))
                }
            }
        }
    }

    fn close(&mut self, close: Tok, also: &[&str]) -> PResult<()> {
        if *self.peek() == close {
            self.bump();
            return Ok(());
        }
        let mut expected: Vec<&str> = also.to_vec();
        expected.push(quote(close.symbol()));
        let kind = match self.peek() {
            Tok::End | Tok::RBrack | Tok::RBrace | Tok::RParen => ParseErrorKind::UnbalancedBracket,
            _ => ParseErrorKind::UnexpectedToken,
        };
        Err(self.error(kind, &expected))
    }

    fn mexpr(&mut self) -> PResult<MExpr> {
        let mut e = self.mterm()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let r = self.mterm()?;
            e = MExpr::Sum(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn mterm(&mut self) -> PResult<MExpr> {
        let mut e = self.matom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let g = self.gfactor()?;
            e = MExpr::Act(Box::new(e), g);
        }
        Ok(e)
    }

    fn matom(&mut self) -> PResult<MExpr> {
        const EXPECTED: [&str; 4] = ["`[`", "`0`", NAME, "`(`"];
        match self.peek() {
            Tok::LBrack => {
                self.bump();
                Ok(MExpr::Tuple(self.names_until(Tok::RBrack)?))
            }
            Tok::Word(w) if w == "0" => {
                self.bump();
                Ok(MExpr::Zero)
            }
            Tok::Word(w) if is_identifier(w) => {
                self.bump();
                Ok(MExpr::Name(w.clone()))
            }
            Tok::LParen => {
                self.bump();
                let e = self.mexpr()?;
                self.close(Tok::RParen, &["`+`", "`*`"])?;
                Ok(e)
            }
            Tok::LBrace => Err(self.error(ParseErrorKind::SortMismatch, &EXPECTED)),
            Tok::Word(w) if is_keyword(w) => {
                Err(self.error(ParseErrorKind::SortMismatch, &EXPECTED))
            }
            _ => Err(self.error(ParseErrorKind::UnexpectedToken, &EXPECTED)),
        }
    }

    fn gexpr(&mut self) -> PResult<GExpr> {
        let mut e = self.gfactor()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let r = self.gfactor()?;
            e = GExpr::Join(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn gfactor(&mut self) -> PResult<GExpr> {
        let mut e = self.gatom()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let r = self.gatom()?;
            e = GExpr::Meet(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn gatom(&mut self) -> PResult<GExpr> {
        const EXPECTED: [&str; 5] = ["`{`", "`top`", "`bot`", NAME, "`(`"];
        match self.peek() {
            Tok::LBrace => {
                self.bump();
                Ok(GExpr::Set(self.names_until(Tok::RBrace)?))
            }
            Tok::Word(w) if w == "top" => {
                self.bump();
                Ok(GExpr::Top)
            }
            Tok::Word(w) if w == "bot" => {
                self.bump();
                Ok(GExpr::Bot)
            }
            Tok::Word(w) if is_identifier(w) => {
                self.bump();
                Ok(GExpr::Name(w.clone()))
            }
            Tok::LParen => {
                self.bump();
                let e = self.gexpr()?;
                self.close(Tok::RParen, &["`|`", "`&`"])?;
                Ok(e)
            }
            Tok::LBrack => Err(self.error(ParseErrorKind::SortMismatch, &EXPECTED)),
            Tok::Word(w) if w == "0" => Err(self.error(ParseErrorKind::SortMismatch, &EXPECTED)),
            _ => Err(self.error(ParseErrorKind::UnexpectedToken, &EXPECTED)),
        }
    }

    fn end(&mut self, operators: &[&str], foreign: &[Tok]) -> PResult<()> {
        if *self.peek() == Tok::End {
            return Ok(());
        }
        let mut expected = operators.to_vec();
        expected.push(END);
        let kind = if foreign.contains(self.peek()) {
            ParseErrorKind::SortMismatch
        } else if matches!(self.peek(), Tok::RBrack | Tok::RBrace | Tok::RParen) {
            ParseErrorKind::UnbalancedBracket
        } else {
            ParseErrorKind::UnexpectedToken
        };
        Err(self.error(kind, &expected))
    }
}

fn quote(sym: &str) -> &'static str {
    match sym {
        "]" => "`]`",
        "}" => "`}`",
        ")" => "`)`",
        _ => "token",
    }
}

fn parse_tokens(toks: &[(usize, Tok)]) -> PResult<Expr> {
    if let [(_, Tok::Word(w)), (_, Tok::End)] = toks {
        if is_identifier(w) {
            return Ok(Expr::Name(w.clone()));
        }
    }
    let mut mp = Parser { toks, pos: 0 };
    let m = mp
        .mexpr()
        .and_then(|e| mp.end(&["`+`", "`*`"], &[Tok::Bar, Tok::Amp]).map(|_| e));
    let m_err = match m {
        Ok(MExpr::Name(n)) => return Ok(Expr::Name(n)),
        Ok(e) => return Ok(Expr::Mnesor(e)),
        Err(e) => e,
    };
    let mut gp = Parser { toks, pos: 0 };
    let g = gp
        .gexpr()
        .and_then(|e| gp.end(&["`|`", "`&`"], &[Tok::Plus, Tok::Star]).map(|_| e));
    let g_err = match g {
        Ok(GExpr::Name(n)) => return Ok(Expr::Name(n)),
        Ok(e) => return Ok(Expr::Granular(e)),
        Err(e) => e,
    };
    Err(merge(m_err, g_err))
}

/// Keeps the error that got further; merges expectations on a tie.
fn merge(a: ParseError, b: ParseError) -> ParseError {
    use core::cmp::Ordering::*;
    match a.offset.cmp(&b.offset) {
        Greater => a,
        Less => b,
        Equal => {
            let rank = |k: ParseErrorKind| match k {
                ParseErrorKind::UnexpectedToken => 0,
                ParseErrorKind::SortMismatch => 1,
                ParseErrorKind::UnbalancedBracket => 2,
                ParseErrorKind::UnknownToken => 3,
            };
            // a sort error in one reading is only a sort error if the other
            // reading failed on the very same token for another reason
            let kind = if rank(a.kind) >= rank(b.kind) {
                a.kind
            } else {
                b.kind
            };
            let mut expected = a.expected;
            expected.extend(b.expected);
            ParseError {
                kind,
                offset: a.offset,
                expected,
                found: a.found,
            }
        }
    }
}

/// Parses an expression of either sort.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    parse_tokens(&lex(src))
}

/// Parses `[name =] expr`.
pub fn parse_statement(src: &str) -> Result<Statement, ParseError> {
    let toks = lex(src);
    if let [(_, Tok::Word(w)), (_, Tok::Eq), rest @ ..] = toks.as_slice() {
        if is_identifier(w) {
            return Ok(Statement {
                target: Some(w.clone()),
                expr: parse_tokens(rest)?,
            });
        }
    }
    Ok(Statement {
        target: None,
        expr: parse_tokens(&toks)?,
    })
}

impl fmt::Display for MExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MExpr::Tuple(names) => write!(f, "[{}]", names.join(" ")),
            MExpr::Zero => f.write_str("0"),
            MExpr::Name(n) => f.write_str(n),
            MExpr::Sum(a, b) => {
                if matches!(**b, MExpr::Sum(..)) {
                    write!(f, "{a} + ({b})")
                } else {
                    write!(f, "{a} + {b}")
                }
            }
            MExpr::Act(a, g) => {
                if matches!(**a, MExpr::Sum(..)) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                if matches!(g, GExpr::Join(..)) {
                    write!(f, " * ({g})")
                } else {
                    write!(f, " * {g}")
                }
            }
        }
    }
}

impl fmt::Display for GExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GExpr::Set(names) => write!(f, "{{{}}}", names.join(" ")),
            GExpr::Top => f.write_str("top"),
            GExpr::Bot => f.write_str("bot"),
            GExpr::Name(n) => f.write_str(n),
            GExpr::Join(a, b) => {
                if matches!(**b, GExpr::Join(..)) {
                    write!(f, "{a} | ({b})")
                } else {
                    write!(f, "{a} | {b}")
                }
            }
            GExpr::Meet(a, b) => {
                if matches!(**a, GExpr::Join(..)) {
                    write!(f, "({a})")?;
                } else {
                    write!(f, "{a}")?;
                }
                if matches!(**b, GExpr::Join(..) | GExpr::Meet(..)) {
                    write!(f, " & ({b})")
                } else {
                    write!(f, " & {b}")
                }
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(n) => f.write_str(n),
            Expr::Mnesor(m) => write!(f, "{m}"),
            Expr::Granular(g) => write!(f, "{g}"),
        }
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(t) = &self.target {
            write!(f, "{t} = ")?;
        }
        write!(f, "{}", self.expr)
    }
}

/// Canonical rendering with minimal parentheses.
pub fn print(e: &Expr) -> String {
    e.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("unbound name `{0}`")]
    Unbound(String),
    #[error("`{0}` is a granular, expected a mnesor")]
    NotAMnesor(String),
    #[error("`{0}` is a mnesor, expected a granular")]
    NotAGranular(String),
    #[error("lattice has no bottom element")]
    NoBottom,
    #[error("bad literal: {0}")]
    Literal(String),
}

impl From<SeqError> for EvalError {
    fn from(e: SeqError) -> Self {
        EvalError::Literal(e.to_string())
    }
}

/// Interpretation of tuple and set literals for a model.
pub trait DslModel: MnesorSpace {
    fn tuple_literal(&self, names: &[String]) -> Result<Self::Elem, EvalError>;

    fn set_literal(&self, names: &[String]) -> Result<GranularId, EvalError>;

    /// Granulars bound by name when an environment is created.
    fn predefined(&self) -> Vec<(String, GranularId)> {
        Vec::new()
    }
}

impl DslModel for SeqSpace {
    fn tuple_literal(&self, names: &[String]) -> Result<SeqMnesor, EvalError> {
        Ok(self.universe().tuple(names)?)
    }

    fn set_literal(&self, names: &[String]) -> Result<GranularId, EvalError> {
        Ok(self.universe().subset(names)?)
    }

    fn predefined(&self) -> Vec<(String, GranularId)> {
        self.named_granulars().to_vec()
    }
}

impl DslModel for SelfActionSpace {
    /// `[]` is zero; `[l]` is the element labelled `l`.
    fn tuple_literal(&self, names: &[String]) -> Result<GranularId, EvalError> {
        match names {
            [] => Ok(self.zero()),
            [one] => self
                .lattice()
                .find(one)
                .ok_or_else(|| EvalError::Literal(format!("unknown element `{one}`"))),
            _ => Err(EvalError::Literal(
                "tuples in the self-action model hold at most one element".to_string(),
            )),
        }
    }

    /// Join of the labelled elements; `{}` is the bottom.
    fn set_literal(&self, names: &[String]) -> Result<GranularId, EvalError> {
        let l = self.lattice();
        let mut acc = l.bottom().ok_or(EvalError::NoBottom)?;
        for n in names {
            let g = l
                .find(n)
                .ok_or_else(|| EvalError::Literal(format!("unknown element `{n}`")))?;
            acc = l.join_id(acc, g);
        }
        Ok(acc)
    }
}

/// Name bindings for both sorts over one model.
pub struct Environment<'m, M: DslModel> {
    model: &'m M,
    mnesors: BTreeMap<String, M::Elem>,
    granulars: BTreeMap<String, GranularId>,
}

impl<'m, M: DslModel> Environment<'m, M> {
    pub fn new(model: &'m M) -> Self {
        Environment {
            model,
            mnesors: BTreeMap::new(),
            granulars: model.predefined().into_iter().collect(),
        }
    }

    pub fn model(&self) -> &'m M {
        self.model
    }

    pub fn bind(&mut self, name: impl Into<String>, value: Value<M::Elem>) {
        match value {
            Value::Mnesor(e) => {
                self.mnesors.insert(name.into(), e);
            }
            Value::Granular(g) => {
                self.granulars.insert(name.into(), g);
            }
        }
    }

    pub fn eval(&self, e: &Expr) -> Result<Value<M::Elem>, EvalError> {
        match e {
            Expr::Name(n) => {
                if let Some(v) = self.mnesors.get(n) {
                    Ok(Value::Mnesor(v.clone()))
                } else if let Some(g) = self.granulars.get(n) {
                    Ok(Value::Granular(*g))
                } else {
                    Err(EvalError::Unbound(n.clone()))
                }
            }
            Expr::Mnesor(m) => self.mnesor(m).map(Value::Mnesor),
            Expr::Granular(g) => self.granular(g).map(Value::Granular),
        }
    }

    pub fn mnesor(&self, e: &MExpr) -> Result<M::Elem, EvalError> {
        let s = self.model;
        Ok(match e {
            MExpr::Tuple(names) => s.tuple_literal(names)?,
            MExpr::Zero => s.zero(),
            MExpr::Name(n) => match self.mnesors.get(n) {
                Some(v) => v.clone(),
                None if self.granulars.contains_key(n) => {
                    return Err(EvalError::NotAMnesor(n.clone()))
                }
                None => return Err(EvalError::Unbound(n.clone())),
            },
            MExpr::Sum(a, b) => s.add(&self.mnesor(a)?, &self.mnesor(b)?),
            MExpr::Act(a, g) => s.act(&self.mnesor(a)?, self.granular(g)?),
        })
    }

    pub fn granular(&self, e: &GExpr) -> Result<GranularId, EvalError> {
        let l = self.model.lattice();
        Ok(match e {
            GExpr::Set(names) => self.model.set_literal(names)?,
            GExpr::Top => l.top(),
            GExpr::Bot => l.bottom().ok_or(EvalError::NoBottom)?,
            GExpr::Name(n) => match self.granulars.get(n) {
                Some(g) => *g,
                None if self.mnesors.contains_key(n) => {
                    return Err(EvalError::NotAGranular(n.clone()))
                }
                None => return Err(EvalError::Unbound(n.clone())),
            },
            GExpr::Join(a, b) => l.join_id(self.granular(a)?, self.granular(b)?),
            GExpr::Meet(a, b) => l.meet_id(self.granular(a)?, self.granular(b)?),
        })
    }

    /// Evaluates a statement, binding the result when it has a target.
    pub fn run(&mut self, st: &Statement) -> Result<Value<M::Elem>, EvalError> {
        let v = self.eval(&st.expr)?;
        if let Some(t) = &st.target {
            self.bind(t.clone(), v.clone());
        }
        Ok(v)
    }

    pub fn render(&self, v: &Value<M::Elem>) -> String {
        match v {
            Value::Mnesor(e) => self.model.render(e),
            Value::Granular(g) => self.model.lattice().label(*g),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::FiniteLattice;
    use crate::seq_model::geo_fixture;

    fn tuple(names: &[&str]) -> MExpr {
        MExpr::Tuple(names.iter().map(|s| s.to_string()).collect())
    }

    #[test]
    fn parses_filter_example() {
        let e = parse("[France Russia Sweden] * EU").unwrap();
        assert_eq!(
            e,
            Expr::Mnesor(MExpr::Act(
                Box::new(tuple(&["France", "Russia", "Sweden"])),
                GExpr::Name("EU".into())
            ))
        );
    }

    #[test]
    fn parses_meet_in_action() {
        let e = parse("x * (EU & NATO)").unwrap();
        assert_eq!(
            e,
            Expr::Mnesor(MExpr::Act(
                Box::new(MExpr::Name("x".into())),
                GExpr::Meet(
                    Box::new(GExpr::Name("EU".into())),
                    Box::new(GExpr::Name("NATO".into()))
                )
            ))
        );
        assert_eq!(print(&e), "x * EU & NATO");
        assert_eq!(parse(&print(&e)).unwrap(), e);
    }

    #[test]
    fn unterminated_tuple() {
        let err = parse("[a b").unwrap_err();
        assert_eq!(err.offset, 4);
        assert_eq!(err.kind, ParseErrorKind::UnbalancedBracket);
        let exp: Vec<&str> = err.expected.iter().map(String::as_str).collect();
        assert_eq!(exp, ["`]`", "name"]);
    }

    #[test]
    fn sort_errors_are_positioned() {
        let err = parse("{a} + [b]").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::SortMismatch);
        assert_eq!(err.offset, 4);
        let err = parse("[a] | {b}").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::SortMismatch);
        assert_eq!(err.offset, 4);
        let err = parse("[a] * [b]").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::SortMismatch);
        assert_eq!(err.offset, 6);
    }

    #[test]
    fn unknown_characters() {
        let err = parse("[a] ^ [b]").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownToken);
        assert_eq!(err.offset, 4);
        assert_eq!(err.found, "`^`");
        assert!(err.expected.contains("`+`") && err.expected.contains("end of input"));
        assert!(err.to_string().contains("offset 4"));
        let err = parse("^").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::UnknownToken);
        assert!(err.expected.contains("`[`") && err.expected.contains("`{`"));
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse("a + b + c").unwrap();
        let Expr::Mnesor(MExpr::Sum(l, _)) = &e else {
            panic!()
        };
        assert!(matches!(**l, MExpr::Sum(..)));
        let e = parse("a + b * g").unwrap();
        let Expr::Mnesor(MExpr::Sum(_, r)) = &e else {
            panic!()
        };
        assert!(matches!(**r, MExpr::Act(..)));
        let e = parse("{a} | {b} & {c}").unwrap();
        let Expr::Granular(GExpr::Join(_, r)) = &e else {
            panic!()
        };
        assert!(matches!(**r, GExpr::Meet(..)));
        let e = parse("a + (b + c)").unwrap();
        assert_eq!(print(&e), "a + (b + c)");
        let e = parse("(a + b) * g").unwrap();
        assert_eq!(print(&e), "(a + b) * g");
        let e = parse("x * g * h").unwrap();
        assert_eq!(print(&e), "x * g * h");
    }

    #[test]
    fn bare_names_are_ambiguous() {
        assert_eq!(parse("EU").unwrap(), Expr::Name("EU".into()));
        assert_eq!(parse("((EU))").unwrap(), Expr::Name("EU".into()));
        assert!(parse("top").is_ok());
        assert_eq!(parse("0").unwrap(), Expr::Mnesor(MExpr::Zero));
    }

    #[test]
    fn statements() {
        let st = parse_statement("x = [a] + [b]").unwrap();
        assert_eq!(st.target.as_deref(), Some("x"));
        assert_eq!(st.to_string(), "x = [a] + [b]");
        assert!(parse_statement("x =").is_err());
    }

    fn eval_geo(src: &str) -> String {
        let g = geo_fixture();
        let env = Environment::new(&g);
        let v = env.eval(&parse(src).unwrap()).unwrap();
        env.render(&v)
    }

    #[test]
    fn evaluates_geo_examples() {
        assert_eq!(eval_geo("([Italy] + [Switzerland]) * NATO"), "[Italy]");
        assert_eq!(eval_geo("[Spain] + [Spain]"), "[Spain]");
        assert_eq!(eval_geo("0 + [Germany]"), "[Germany]");
        assert_eq!(eval_geo("[Germany] * top"), "[Germany]");
        assert_eq!(eval_geo("[India Taiwan] * EU"), "[]");
        assert_eq!(eval_geo("[France Italy] * ({Italy} | bot)"), "[Italy]");
    }

    #[test]
    fn environment_bindings() {
        let g = geo_fixture();
        let mut env = Environment::new(&g);
        env.run(&parse_statement("x = [France Russia]").unwrap())
            .unwrap();
        let v = env.run(&parse_statement("x * EU").unwrap()).unwrap();
        assert_eq!(env.render(&v), "[France]");
        let v = env.eval(&parse("EU").unwrap()).unwrap();
        assert!(matches!(v, Value::Granular(_)));
        assert_eq!(
            env.eval(&parse("y + x").unwrap()),
            Err(EvalError::Unbound("y".into()))
        );
        assert_eq!(
            env.eval(&parse("EU + x").unwrap()),
            Err(EvalError::NotAMnesor("EU".into()))
        );
        assert_eq!(
            env.eval(&parse("x * x").unwrap()),
            Err(EvalError::NotAGranular("x".into()))
        );
        assert!(matches!(
            env.eval(&parse("[Atlantis]").unwrap()),
            Err(EvalError::Literal(_))
        ));
    }

    #[test]
    fn bot_needs_a_bottom() {
        let c = FiniteLattice::chain(2).unwrap();
        let s = SelfActionSpace::new(c).unwrap();
        let env = Environment::new(&s);
        let v = env.eval(&parse("[1] * bot").unwrap()).unwrap();
        assert_eq!(env.render(&v), "0");
        let v = env.eval(&parse("[1] * {0}").unwrap()).unwrap();
        assert_eq!(env.render(&v), "0");
        assert_eq!(
            env.eval(&parse("[0 1]").unwrap()).map(|_| ()),
            Err(EvalError::Literal(
                "tuples in the self-action model hold at most one element".into()
            ))
        );
    }
}
