//! The `.arq` text format: quivers, ray quivers, representations,
//! subcategories, torsion pairs and finitely presented representations.
//!
//! ```text
//! quiver A2 { vertices 1 2; arrow a: 1 -> 2 }
//! rep P1 over A2 prime 32003 { dims { 1: 1; 2: 1 }; mat a = [[1]] }
//! subcat C over A2 { gens P1 }
//! ```
//!
//! Declarations must precede their use. Parsing validates everything that
//! does not need a computation: names, shapes, primes and acyclicity.

mod lexer;
mod parse;
mod render;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use arq_core::infinite::FPRep;
use arq_core::{Quiver, RayQuiver, Rep};

pub use parse::{parse, parse_with_prime};
pub use render::render;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
    /// tokens that would have been accepted, for syntax errors
    pub expected: Vec<String>,
}

impl ParseError {
    pub fn at(pos: Pos, message: impl Into<String>) -> Self {
        ParseError { pos, message: message.into(), expected: Vec::new() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: String,
    pub source: String,
    pub target: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverDecl {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayDecl {
    pub name: String,
    pub attach: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayQuiverDecl {
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    pub rays: Vec<RayDecl>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepDecl {
    pub name: String,
    pub over: String,
    pub prime: u32,
    pub dims: Vec<(String, usize)>,
    pub mats: Vec<(String, Vec<Vec<i64>>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcatDecl {
    pub name: String,
    pub over: String,
    pub gens: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionDecl {
    pub name: String,
    pub over: String,
    pub torsion: Vec<String>,
    pub free: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPRepDecl {
    pub name: String,
    pub over: String,
    pub prime: Option<u32>,
    pub p1: Vec<String>,
    pub p0: Vec<String>,
    /// one row per `p0` summand, one entry per `p1` summand, each entry the
    /// coefficients over the paths between the two vertices
    pub f: Vec<Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decl {
    Quiver(QuiverDecl),
    RayQuiver(RayQuiverDecl),
    Rep(RepDecl),
    Subcat(SubcatDecl),
    Torsion(TorsionDecl),
    FPRep(FPRepDecl),
}

impl Decl {
    pub fn name(&self) -> &str {
        match self {
            Decl::Quiver(d) => &d.name,
            Decl::RayQuiver(d) => &d.name,
            Decl::Rep(d) => &d.name,
            Decl::Subcat(d) => &d.name,
            Decl::Torsion(d) => &d.name,
            Decl::FPRep(d) => &d.name,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Decl::Quiver(_) => "quiver",
            Decl::RayQuiver(_) => "rayquiver",
            Decl::Rep(_) => "rep",
            Decl::Subcat(_) => "subcat",
            Decl::Torsion(_) => "torsion",
            Decl::FPRep(_) => "fprep",
        }
    }
}

/// Objects built from the declarations.
#[derive(Clone, Debug, Default)]
struct Model {
    quivers: BTreeMap<String, Arc<Quiver>>,
    rays: BTreeMap<String, Arc<RayQuiver>>,
    reps: BTreeMap<String, Rep>,
    fpreps: BTreeMap<String, FPRep>,
}

/// A parsed and validated document. Equality compares declarations only.
#[derive(Clone, Debug)]
pub struct Document {
    pub decls: Vec<Decl>,
    positions: Vec<Pos>,
    model: Model,
}

impl PartialEq for Document {
    fn eq(&self, o: &Self) -> bool {
        self.decls == o.decls
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("no {kind} named {name}")]
pub struct Missing {
    pub kind: &'static str,
    pub name: String,
}

fn missing(kind: &'static str, name: &str) -> Missing {
    Missing { kind, name: name.to_string() }
}

impl Document {
    pub fn decl(&self, name: &str) -> Option<&Decl> {
        self.decls.iter().find(|d| d.name() == name)
    }

    pub fn position(&self, name: &str) -> Option<Pos> {
        self.decls.iter().position(|d| d.name() == name).map(|k| self.positions[k])
    }

    pub fn quiver(&self, name: &str) -> Result<&Arc<Quiver>, Missing> {
        self.model.quivers.get(name).ok_or_else(|| missing("quiver", name))
    }

    pub fn ray_quiver(&self, name: &str) -> Result<&Arc<RayQuiver>, Missing> {
        self.model.rays.get(name).ok_or_else(|| missing("rayquiver", name))
    }

    pub fn rep(&self, name: &str) -> Result<&Rep, Missing> {
        self.model.reps.get(name).ok_or_else(|| missing("rep", name))
    }

    pub fn reps(&self, names: &[String]) -> Result<Vec<Rep>, Missing> {
        names.iter().map(|n| self.rep(n).cloned()).collect()
    }

    pub fn fprep(&self, name: &str) -> Result<&FPRep, Missing> {
        self.model.fpreps.get(name).ok_or_else(|| missing("fprep", name))
    }

    pub fn subcat(&self, name: &str) -> Result<&SubcatDecl, Missing> {
        match self.decl(name) {
            Some(Decl::Subcat(d)) => Ok(d),
            _ => Err(missing("subcat", name)),
        }
    }

    pub fn torsion(&self, name: &str) -> Result<&TorsionDecl, Missing> {
        match self.decl(name) {
            Some(Decl::Torsion(d)) => Ok(d),
            _ => Err(missing("torsion", name)),
        }
    }

    /// Name of a declared representation equal to `m`, if any.
    pub fn name_of(&self, m: &Rep) -> Option<&str> {
        self.model.reps.iter().find(|(_, r)| *r == m).map(|(n, _)| n.as_str())
    }
}
