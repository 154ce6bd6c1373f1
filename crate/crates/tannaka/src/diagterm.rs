//! A small term language for string diagrams in the reconstruction setting.
//!
//! Grammar (`;` binds looser than `*`, both left-associative):
//!
//! ```text
//! term    := par | term ";" par
//! par     := atom | par "*" atom
//! atom    := "(" term ")"
//!          | "id" "(" objexpr ")" | "gen" "(" name ")" | "F" "(" term ")"
//!          | "lax2" "(" name "," name ")" | "lax0"
//!          | "oplax2" "(" name "," name ")" | "oplax0"
//!          | "braid" "(" objexpr "," objexpr ")"
//!          | "ev" "(" name ")" | "coev" "(" name ")"
//!          | "alpha" "(" name ")" | "pi" "(" name ")"
//!          | "mu" | "eta" | "delta" | "eps" | "S" | "eps_s" | "eps_t"
//! objexpr := objatom | objexpr "*" objatom
//! objatom := "E" | "k" | name
//! ```
//!
//! Terms denote linear maps between tensor words whose letters are either the
//! reconstructed object `E` or images `F(x)` of category objects; the ground
//! field `k` is dropped when boundaries are normalized. `a ; b` composes left
//! to right, `a * b` is the tensor (Kronecker) product.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::exactlin::{compose, kronecker, swap_matrix, Matrix};
use crate::fincat::{DualData, FinMonCat};
use crate::reconstruct::{action_alpha, EndObject, StructureMaps};
use crate::repfun::{induced_duality, RepFunctor};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjAtom {
    /// The reconstructed object E_F.
    E,
    /// The monoidal unit of vector spaces; dropped under normalization.
    K,
    /// A named object of the base category, denoting F(x).
    Obj(String),
}

/// A tensor word of object atoms, as written (k's are kept for printing).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjExpr(pub Vec<ObjAtom>);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Term {
    Id(ObjExpr),
    Gen(String),
    Fbox(Box<Term>),
    Lax2(String, String),
    Lax0,
    Oplax2(String, String),
    Oplax0,
    Braid(ObjExpr, ObjExpr),
    Ev(String),
    Coev(String),
    Alpha(String),
    Pi(String),
    Mu,
    Eta,
    Delta,
    Eps,
    Antipode,
    EpsS,
    EpsT,
    Seq(Box<Term>, Box<Term>),
    Par(Box<Term>, Box<Term>),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("parse error at {line}:{col}: {message}")]
    Parse { line: usize, col: usize, message: String },
    #[error("type error: {0}")]
    Type(String),
    #[error("evaluation error: {0}")]
    Eval(String),
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Semi,
    Star,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone)]
struct SpannedTok {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(input: &str) -> Result<Vec<SpannedTok>, TermError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();
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
            ' ' | '\t' | '\n' | '\r' => {
                bump(&mut chars);
            }
            ';' | '*' | '(' | ')' | ',' => {
                bump(&mut chars);
                let tok = match c {
                    ';' => Tok::Semi,
                    '*' => Tok::Star,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    _ => Tok::Comma,
                };
                out.push(SpannedTok { tok, line: tl, col: tc });
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut name = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(bump(&mut chars));
                    } else {
                        break;
                    }
                }
                out.push(SpannedTok { tok: Tok::Ident(name), line: tl, col: tc });
            }
            other => {
                return Err(TermError::Parse {
                    line: tl,
                    col: tc,
                    message: format!("unexpected character {other:?}"),
                })
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

struct Parser {
    toks: Vec<SpannedTok>,
    pos: usize,
    end_line: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|t| (t.line, t.col))
            .unwrap_or((self.end_line, self.end_col))
    }

    fn err(&self, message: impl Into<String>) -> TermError {
        let (line, col) = self.here();
        TermError::Parse { line, col, message: message.into() }
    }

    fn advance(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), TermError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {what}")))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, TermError> {
        match self.peek() {
            Some(Tok::Ident(_)) => {
                if let Some(Tok::Ident(name)) = self.advance() {
                    Ok(name)
                } else {
                    unreachable!()
                }
            }
            _ => Err(self.err(format!("expected {what}"))),
        }
    }

    fn term(&mut self) -> Result<Term, TermError> {
        let mut acc = self.par()?;
        while self.peek() == Some(&Tok::Semi) {
            self.pos += 1;
            let rhs = self.par()?;
            acc = Term::Seq(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn par(&mut self) -> Result<Term, TermError> {
        let mut acc = self.atom()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.atom()?;
            acc = Term::Par(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn objatom(&mut self) -> Result<ObjAtom, TermError> {
        let name = self.ident("an object expression")?;
        Ok(match name.as_str() {
            "E" => ObjAtom::E,
            "k" => ObjAtom::K,
            _ => ObjAtom::Obj(name),
        })
    }

    fn objexpr(&mut self) -> Result<ObjExpr, TermError> {
        let mut atoms = vec![self.objatom()?];
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            atoms.push(self.objatom()?);
        }
        Ok(ObjExpr(atoms))
    }

    fn atom(&mut self) -> Result<Term, TermError> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let t = self.term()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(t)
            }
            Some(Tok::Ident(_)) => {
                let head = self.ident("a term")?;
                match head.as_str() {
                    "mu" => Ok(Term::Mu),
                    "eta" => Ok(Term::Eta),
                    "delta" => Ok(Term::Delta),
                    "eps" => Ok(Term::Eps),
                    "S" => Ok(Term::Antipode),
                    "eps_s" => Ok(Term::EpsS),
                    "eps_t" => Ok(Term::EpsT),
                    "lax0" => Ok(Term::Lax0),
                    "oplax0" => Ok(Term::Oplax0),
                    "id" => {
                        self.expect(Tok::LParen, "'(' after 'id'")?;
                        let oe = self.objexpr()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Term::Id(oe))
                    }
                    "gen" => {
                        self.expect(Tok::LParen, "'(' after 'gen'")?;
                        let name = self.ident("a morphism name")?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Term::Gen(name))
                    }
                    "F" => {
                        self.expect(Tok::LParen, "'(' after 'F'")?;
                        let inner = self.term()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Term::Fbox(Box::new(inner)))
                    }
                    "lax2" | "oplax2" => {
                        self.expect(Tok::LParen, "'('")?;
                        let x = self.ident("an object name")?;
                        self.expect(Tok::Comma, "','")?;
                        let y = self.ident("an object name")?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(if head == "lax2" {
                            Term::Lax2(x, y)
                        } else {
                            Term::Oplax2(x, y)
                        })
                    }
                    "braid" => {
                        self.expect(Tok::LParen, "'(' after 'braid'")?;
                        let a = self.objexpr()?;
                        self.expect(Tok::Comma, "','")?;
                        let b = self.objexpr()?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(Term::Braid(a, b))
                    }
                    "ev" | "coev" | "alpha" | "pi" => {
                        self.expect(Tok::LParen, "'('")?;
                        let x = self.ident("an object name")?;
                        self.expect(Tok::RParen, "')'")?;
                        Ok(match head.as_str() {
                            "ev" => Term::Ev(x),
                            "coev" => Term::Coev(x),
                            "alpha" => Term::Alpha(x),
                            _ => Term::Pi(x),
                        })
                    }
                    other => Err(self.err(format!("unknown term head '{other}'"))),
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Parse a complete term, requiring all input to be consumed.
pub fn parse(input: &str) -> Result<Term, TermError> {
    let toks = lex(input)?;
    let lines: Vec<&str> = input.split('\n').collect();
    let end_line = lines.len().max(1);
    let end_col = lines.last().map(|l| l.chars().count() + 1).unwrap_or(1);
    let mut p = Parser { toks, pos: 0, end_line, end_col };
    let t = p.term()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input after term"));
    }
    Ok(t)
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

impl fmt::Display for ObjAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjAtom::E => write!(f, "E"),
            ObjAtom::K => write!(f, "k"),
            ObjAtom::Obj(name) => write!(f, "{name}"),
        }
    }
}

impl fmt::Display for ObjExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

const PREC_SEQ: u8 = 0;
const PREC_PAR: u8 = 1;
const PREC_ATOM: u8 = 2;

fn prec(t: &Term) -> u8 {
    match t {
        Term::Seq(..) => PREC_SEQ,
        Term::Par(..) => PREC_PAR,
        _ => PREC_ATOM,
    }
}

fn fmt_at(t: &Term, ctx: u8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mine = prec(t);
    if mine < ctx {
        write!(f, "(")?;
        fmt_at(t, PREC_SEQ, f)?;
        return write!(f, ")");
    }
    match t {
        Term::Seq(a, b) => {
            fmt_at(a, PREC_SEQ, f)?;
            write!(f, " ; ")?;
            // right operand one level up so a right-nested Seq keeps its parens
            fmt_at(b, PREC_PAR, f)
        }
        Term::Par(a, b) => {
            fmt_at(a, PREC_PAR, f)?;
            write!(f, " * ")?;
            fmt_at(b, PREC_ATOM, f)
        }
        Term::Id(oe) => write!(f, "id({oe})"),
        Term::Gen(name) => write!(f, "gen({name})"),
        Term::Fbox(inner) => {
            write!(f, "F(")?;
            fmt_at(inner, PREC_SEQ, f)?;
            write!(f, ")")
        }
        Term::Lax2(x, y) => write!(f, "lax2({x},{y})"),
        Term::Lax0 => write!(f, "lax0"),
        Term::Oplax2(x, y) => write!(f, "oplax2({x},{y})"),
        Term::Oplax0 => write!(f, "oplax0"),
        Term::Braid(a, b) => write!(f, "braid({a},{b})"),
        Term::Ev(x) => write!(f, "ev({x})"),
        Term::Coev(x) => write!(f, "coev({x})"),
        Term::Alpha(x) => write!(f, "alpha({x})"),
        Term::Pi(x) => write!(f, "pi({x})"),
        Term::Mu => write!(f, "mu"),
        Term::Eta => write!(f, "eta"),
        Term::Delta => write!(f, "delta"),
        Term::Eps => write!(f, "eps"),
        Term::Antipode => write!(f, "S"),
        Term::EpsS => write!(f, "eps_s"),
        Term::EpsT => write!(f, "eps_t"),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_at(self, PREC_SEQ, f)
    }
}

// ---------------------------------------------------------------------------
// Typechecking
// ---------------------------------------------------------------------------

/// Everything needed to resolve, type, and evaluate a term.
pub struct TermContext<'a> {
    pub cat: &'a FinMonCat,
    pub rf: &'a RepFunctor,
    pub end: &'a EndObject,
    pub maps: &'a StructureMaps,
    pub duals: Option<&'a DualData>,
}

/// A letter of a normalized boundary word.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BAtom {
    E,
    Obj(usize),
}

pub type Boundary = Vec<BAtom>;

/// Render a boundary word for diagnostics; the empty word is `k`.
pub fn boundary_to_string(b: &Boundary, cat: &FinMonCat) -> String {
    if b.is_empty() {
        return "k".into();
    }
    b.iter()
        .map(|a| match a {
            BAtom::E => "E".to_string(),
            BAtom::Obj(i) => cat.objects[*i].clone(),
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl<'a> TermContext<'a> {
    fn batom_dim(&self, a: &BAtom) -> usize {
        match a {
            BAtom::E => self.end.dim(),
            BAtom::Obj(i) => self.rf.dim[*i],
        }
    }

    fn boundary_dim(&self, b: &Boundary) -> usize {
        b.iter().map(|a| self.batom_dim(a)).product()
    }

    fn resolve_obj(&self, name: &str) -> Result<usize, TermError> {
        self.cat
            .object_index(name)
            .ok_or_else(|| TermError::Type(format!("unknown object '{name}'")))
    }

    /// Normalize an object expression to a boundary word, dropping k's.
    fn resolve_objexpr(&self, oe: &ObjExpr) -> Result<Boundary, TermError> {
        let mut out = Vec::new();
        for atom in &oe.0 {
            match atom {
                ObjAtom::E => out.push(BAtom::E),
                ObjAtom::K => {}
                ObjAtom::Obj(name) => out.push(BAtom::Obj(self.resolve_obj(name)?)),
            }
        }
        Ok(out)
    }

    /// Fold an object expression inside `F(...)` to a single category object;
    /// `k` reads as the monoidal unit, `E` is not available there.
    fn resolve_objexpr_in_cat(&self, oe: &ObjExpr) -> Result<usize, TermError> {
        let mut acc = self.cat.unit;
        for atom in &oe.0 {
            let next = match atom {
                ObjAtom::E => {
                    return Err(TermError::Type("'E' cannot appear inside F(...)".into()))
                }
                ObjAtom::K => self.cat.unit,
                ObjAtom::Obj(name) => self.resolve_obj(name)?,
            };
            acc = self.cat.tensor(acc, next);
        }
        Ok(acc)
    }

    /// Resolve a category-level term (built from gen, id, ';', '*') to a
    /// morphism index via the composition and tensor tables.
    fn resolve_mor(&self, t: &Term) -> Result<usize, TermError> {
        match t {
            Term::Gen(name) => self
                .cat
                .morphism_index(name)
                .ok_or_else(|| TermError::Type(format!("unknown morphism '{name}'"))),
            Term::Id(oe) => {
                let x = self.resolve_objexpr_in_cat(oe)?;
                Ok(self.cat.identities[x])
            }
            Term::Seq(a, b) => {
                let f = self.resolve_mor(a)?;
                let g = self.resolve_mor(b)?;
                self.cat.compose_mor(g, f).ok_or_else(|| {
                    TermError::Type(format!(
                        "composite {}∘{} is not in the composition table",
                        self.cat.morphisms[g].name, self.cat.morphisms[f].name
                    ))
                })
            }
            Term::Par(a, b) => {
                let f = self.resolve_mor(a)?;
                let g = self.resolve_mor(b)?;
                self.cat.tensor_mor.get(&(f, g)).copied().ok_or_else(|| {
                    TermError::Type(format!(
                        "tensor {}⊗{} is not in the tensor table",
                        self.cat.morphisms[f].name, self.cat.morphisms[g].name
                    ))
                })
            }
            other => Err(TermError::Type(format!(
                "only gen, id, ';' and '*' may appear inside F(...), found '{other}'"
            ))),
        }
    }

    fn dual_of(&self, x: usize) -> Result<usize, TermError> {
        let d = self
            .duals
            .ok_or_else(|| TermError::Type("the model declares no duals".into()))?;
        Ok(d.left_dual[x])
    }

    /// Source and target boundary of a term.
    pub fn typecheck(&self, t: &Term) -> Result<(Boundary, Boundary), TermError> {
        match t {
            Term::Id(oe) => {
                let b = self.resolve_objexpr(oe)?;
                Ok((b.clone(), b))
            }
            Term::Gen(name) => Err(TermError::Type(format!(
                "bare gen({name}) has no linear meaning; wrap it in F(...)"
            ))),
            Term::Fbox(inner) => {
                let f = self.resolve_mor(inner)?;
                let m = &self.cat.morphisms[f];
                Ok((vec![BAtom::Obj(m.src)], vec![BAtom::Obj(m.dst)]))
            }
            Term::Lax2(x, y) => {
                let (x, y) = (self.resolve_obj(x)?, self.resolve_obj(y)?);
                Ok((
                    vec![BAtom::Obj(x), BAtom::Obj(y)],
                    vec![BAtom::Obj(self.cat.tensor(x, y))],
                ))
            }
            Term::Lax0 => Ok((vec![], vec![BAtom::Obj(self.cat.unit)])),
            Term::Oplax2(x, y) => {
                let (x, y) = (self.resolve_obj(x)?, self.resolve_obj(y)?);
                Ok((
                    vec![BAtom::Obj(self.cat.tensor(x, y))],
                    vec![BAtom::Obj(x), BAtom::Obj(y)],
                ))
            }
            Term::Oplax0 => Ok((vec![BAtom::Obj(self.cat.unit)], vec![])),
            Term::Braid(a, b) => {
                let (a, b) = (self.resolve_objexpr(a)?, self.resolve_objexpr(b)?);
                let src: Boundary = a.iter().chain(&b).copied().collect();
                let dst: Boundary = b.iter().chain(&a).copied().collect();
                Ok((src, dst))
            }
            Term::Ev(x) => {
                let x = self.resolve_obj(x)?;
                let lx = self.dual_of(x)?;
                Ok((vec![BAtom::Obj(lx), BAtom::Obj(x)], vec![]))
            }
            Term::Coev(x) => {
                let x = self.resolve_obj(x)?;
                let lx = self.dual_of(x)?;
                Ok((vec![], vec![BAtom::Obj(x), BAtom::Obj(lx)]))
            }
            Term::Alpha(x) => {
                let x = self.resolve_obj(x)?;
                Ok((vec![BAtom::E, BAtom::Obj(x)], vec![BAtom::Obj(x)]))
            }
            Term::Pi(x) => {
                let x = self.resolve_obj(x)?;
                Ok((vec![BAtom::E], vec![BAtom::Obj(x), BAtom::Obj(x)]))
            }
            Term::Mu => Ok((vec![BAtom::E, BAtom::E], vec![BAtom::E])),
            Term::Eta => Ok((vec![], vec![BAtom::E])),
            Term::Delta => Ok((vec![BAtom::E], vec![BAtom::E, BAtom::E])),
            Term::Eps => Ok((vec![BAtom::E], vec![])),
            Term::Antipode | Term::EpsS | Term::EpsT => {
                Ok((vec![BAtom::E], vec![BAtom::E]))
            }
            Term::Seq(a, b) => {
                let (sa, ta) = self.typecheck(a)?;
                let (sb, tb) = self.typecheck(b)?;
                if ta != sb {
                    return Err(TermError::Type(format!(
                        "cannot compose '{a}' into '{b}': boundary {} does not match {}",
                        boundary_to_string(&ta, self.cat),
                        boundary_to_string(&sb, self.cat)
                    )));
                }
                Ok((sa, tb))
            }
            Term::Par(a, b) => {
                let (sa, ta) = self.typecheck(a)?;
                let (sb, tb) = self.typecheck(b)?;
                Ok((
                    sa.into_iter().chain(sb).collect(),
                    ta.into_iter().chain(tb).collect(),
                ))
            }
        }
    }

    fn eval_inner(
        &self,
        t: &Term,
        dual_cache: &mut HashMap<usize, (Matrix, Matrix)>,
    ) -> Result<Matrix, TermError> {
        let required = |m: &Option<Matrix>, what: &str| {
            m.clone()
                .ok_or_else(|| TermError::Eval(format!("{what} is not available on this model")))
        };
        match t {
            Term::Id(oe) => {
                let b = self.resolve_objexpr(oe)?;
                Ok(Matrix::identity(self.boundary_dim(&b)))
            }
            Term::Gen(name) => Err(TermError::Type(format!(
                "bare gen({name}) has no linear meaning; wrap it in F(...)"
            ))),
            Term::Fbox(inner) => Ok(self.rf.apply(self.resolve_mor(inner)?).clone()),
            Term::Lax2(x, y) => {
                let (x, y) = (self.resolve_obj(x)?, self.resolve_obj(y)?);
                Ok(self.rf.m2(x, y).clone())
            }
            Term::Lax0 => Ok(self.rf.lax0.clone()),
            Term::Oplax2(x, y) => {
                let (x, y) = (self.resolve_obj(x)?, self.resolve_obj(y)?);
                Ok(self.rf.w2(x, y).clone())
            }
            Term::Oplax0 => Ok(self.rf.oplax0.clone()),
            Term::Braid(a, b) => {
                let (a, b) = (self.resolve_objexpr(a)?, self.resolve_objexpr(b)?);
                Ok(swap_matrix(self.boundary_dim(&a), self.boundary_dim(&b)))
            }
            Term::Ev(x) | Term::Coev(x) => {
                let xi = self.resolve_obj(x)?;
                self.dual_of(xi)?;
                if let std::collections::hash_map::Entry::Vacant(slot) = dual_cache.entry(xi) {
                    let d = self.duals.unwrap();
                    let pair = induced_duality(self.cat, self.rf, d, xi)
                        .map_err(|e| TermError::Eval(e.to_string()))?;
                    slot.insert(pair);
                }
                let (ev_f, coev_f) = &dual_cache[&xi];
                Ok(match t {
                    Term::Ev(_) => ev_f.clone(),
                    _ => coev_f.clone(),
                })
            }
            Term::Alpha(x) => Ok(action_alpha(self.end, self.resolve_obj(x)?)),
            Term::Pi(x) => Ok(self.end.project(self.resolve_obj(x)?)),
            Term::Mu => Ok(self.maps.mu.clone()),
            Term::Eta => Ok(self.maps.eta.clone()),
            Term::Delta => Ok(self.maps.delta.clone()),
            Term::Eps => Ok(self.maps.eps.clone()),
            Term::Antipode => required(&self.maps.antipode, "the antipode"),
            Term::EpsS => required(&self.maps.eps_s, "eps_s"),
            Term::EpsT => required(&self.maps.eps_t, "eps_t"),
            Term::Seq(a, b) => {
                let fa = self.eval_inner(a, dual_cache)?;
                let fb = self.eval_inner(b, dual_cache)?;
                compose(&fb, &fa).map_err(|e| TermError::Eval(e.to_string()))
            }
            Term::Par(a, b) => {
                let fa = self.eval_inner(a, dual_cache)?;
                let fb = self.eval_inner(b, dual_cache)?;
                Ok(kronecker(&fa, &fb))
            }
        }
    }

    /// Typecheck and evaluate a term to its matrix.
    pub fn evaluate(&self, t: &Term) -> Result<Matrix, TermError> {
        self.typecheck(t)?;
        self.eval_inner(t, &mut HashMap::new())
    }
}

/// First differing entry of two matrices, rendered for reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermDiff {
    pub row: usize,
    pub col: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Check two terms for equal boundaries and equal matrices; `Ok(None)` means
/// they agree, `Ok(Some(diff))` locates the first disagreement.
pub fn terms_equal(
    ctx: &TermContext,
    lhs: &Term,
    rhs: &Term,
) -> Result<Option<TermDiff>, TermError> {
    let (sl, tl) = ctx.typecheck(lhs)?;
    let (sr, tr) = ctx.typecheck(rhs)?;
    if sl != sr || tl != tr {
        return Err(TermError::Type(format!(
            "boundary mismatch: '{lhs}' is {} -> {} but '{rhs}' is {} -> {}",
            boundary_to_string(&sl, ctx.cat),
            boundary_to_string(&tl, ctx.cat),
            boundary_to_string(&sr, ctx.cat),
            boundary_to_string(&tr, ctx.cat)
        )));
    }
    let ml = ctx.evaluate(lhs)?;
    let mr = ctx.evaluate(rhs)?;
    Ok(ml.first_diff(&mr).map(|(row, col)| TermDiff {
        row,
        col,
        lhs: ml.get(row, col).to_string(),
        rhs: mr.get(row, col).to_string(),
    }))
}
