use std::sync::Arc;

use arq_core::infinite::FPRep;
use arq_core::{Fp, Matrix, Quiver, RayQuiver, Rep, DEFAULT_PRIME};

use super::lexer::{lex, Tok};
use super::{
    ArrowDecl, Decl, Document, FPRepDecl, Model, ParseError, Pos, QuiverDecl, RayDecl, RayQuiverDecl, RepDecl,
    SubcatDecl, TorsionDecl,
};

/// Parses and validates a document.
pub fn parse(src: &str) -> Result<Document, ParseError> {
    parse_with_prime(src, DEFAULT_PRIME)
}

/// As [`parse`], with the prime used by `fprep` blocks that name none.
pub fn parse_with_prime(src: &str, default_prime: u32) -> Result<Document, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        default_prime,
        doc: Document { decls: Vec::new(), positions: Vec::new(), model: Model::default() },
    };
    while p.peek() != &Tok::Eof {
        p.block()?;
    }
    Ok(p.doc)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    default_prime: u32,
    doc: Document,
}

/// Words that end a vertex list.
const KEYWORDS: &[&str] = &["vertices", "arrow", "ray"];

type PResult<T> = Result<T, ParseError>;

/// Vertices with their positions, and arrows with the positions of their
/// name, source and target.
type QuiverBody = (Vec<(String, Pos)>, Vec<(ArrowDecl, [Pos; 3])>);

fn semantic(pos: Pos, msg: impl Into<String>) -> ParseError {
    ParseError::at(pos, msg)
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::Eof {
            self.at += 1;
        }
        t
    }

    fn unexpected(&self, expected: &[&str]) -> ParseError {
        let found = self.peek().show();
        let list = expected.join(" or ");
        ParseError {
            pos: self.pos(),
            message: format!("expected {list}, found {found}"),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn expect(&mut self, t: Tok) -> PResult<Pos> {
        if *self.peek() == t {
            Ok(self.bump().1)
        } else {
            Err(self.unexpected(&[&t.show()]))
        }
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> PResult<(String, Pos)> {
        match self.peek().clone() {
            Tok::Id(s) => {
                let pos = self.bump().1;
                Ok((s, pos))
            }
            _ => Err(self.unexpected(&[what])),
        }
    }

    fn keyword(&mut self, kw: &str) -> PResult<Pos> {
        match self.peek() {
            Tok::Id(s) if s == kw => Ok(self.bump().1),
            _ => Err(self.unexpected(&[&format!("`{kw}`")])),
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Id(s) if s == kw)
    }

    fn int(&mut self) -> PResult<(i64, Pos)> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Neg(n) => {
                self.bump();
                Ok((n, pos))
            }
            Tok::Id(s) if s.bytes().all(|b| b.is_ascii_digit()) => {
                self.bump();
                s.parse().map(|n| (n, pos)).map_err(|_| semantic(pos, format!("integer {s} out of range")))
            }
            _ => Err(self.unexpected(&["an integer"])),
        }
    }

    fn natural(&mut self) -> PResult<(usize, Pos)> {
        let (n, pos) = self.int()?;
        usize::try_from(n).map(|n| (n, pos)).map_err(|_| semantic(pos, format!("expected a non-negative integer, found {n}")))
    }

    fn prime(&mut self) -> PResult<(u32, Pos)> {
        let (n, pos) = self.int()?;
        let p = u32::try_from(n).map_err(|_| semantic(pos, format!("{n} is not a prime")))?;
        Fp::new(p).map_err(|e| semantic(pos, e.to_string()))?;
        Ok((p, pos))
    }

    /// After an item: `}` closes the block (returns false), `;` separates
    /// it from the next item and may also precede the `}`.
    fn more_items(&mut self) -> PResult<bool> {
        if self.eat(&Tok::RBrace) {
            return Ok(false);
        }
        if !self.eat(&Tok::Semi) {
            return Err(self.unexpected(&["`;`", "`}`"]));
        }
        Ok(!self.eat(&Tok::RBrace))
    }

    fn declare(&mut self, d: Decl, pos: Pos, name_pos: Pos) -> PResult<()> {
        if self.doc.decl(d.name()).is_some() {
            return Err(semantic(name_pos, format!("duplicate id {}", d.name())));
        }
        self.doc.decls.push(d);
        self.doc.positions.push(pos);
        Ok(())
    }

    fn block(&mut self) -> PResult<()> {
        let (kw, pos) = self.ident("a block keyword")?;
        match kw.as_str() {
            "quiver" => self.quiver_block(pos),
            "rayquiver" => self.ray_block(pos),
            "rep" => self.rep_block(pos),
            "subcat" => self.subcat_block(pos),
            "torsion" => self.torsion_block(pos),
            "fprep" => self.fprep_block(pos),
            other => Err(ParseError {
                pos,
                message: format!("unknown block `{other}`"),
                expected: ["quiver", "rayquiver", "rep", "subcat", "torsion", "fprep"].iter().map(|s| s.to_string()).collect(),
            }),
        }
    }

    /// Shared body of `quiver` and `rayquiver`; `rays` is `None` for plain
    /// quivers.
    fn quiver_body(
        &mut self,
        mut rays: Option<&mut Vec<(RayDecl, Pos)>>,
    ) -> PResult<QuiverBody> {
        self.expect(Tok::LBrace)?;
        let mut vertices = Vec::new();
        let mut arrows = Vec::new();
        if self.eat(&Tok::RBrace) {
            return Ok((vertices, arrows));
        }
        loop {
            if self.is_keyword("vertices") {
                self.bump();
                while matches!(self.peek(), Tok::Id(s) if !KEYWORDS.contains(&s.as_str())) {
                    vertices.push(self.ident("a vertex")?);
                }
            } else if self.is_keyword("arrow") {
                self.bump();
                let (name, pos) = self.ident("an arrow id")?;
                self.expect(Tok::Colon)?;
                let (source, spos) = self.ident("a vertex")?;
                self.expect(Tok::Arrow)?;
                let (target, tpos) = self.ident("a vertex")?;
                arrows.push((ArrowDecl { name, source, target }, [pos, spos, tpos]));
            } else if self.is_keyword("ray") && rays.is_some() {
                self.bump();
                let (name, pos) = self.ident("a ray id")?;
                self.expect(Tok::Colon)?;
                let (dir, dpos) = self.ident("`into`")?;
                if dir != "into" {
                    return Err(semantic(dpos, format!("rays must point into the core (`into`), found `{dir}`")));
                }
                let (attach, _) = self.ident("a vertex")?;
                if let Some(r) = rays.as_deref_mut() {
                    r.push((RayDecl { name, attach }, pos));
                }
            } else if rays.is_some() {
                return Err(self.unexpected(&["`vertices`", "`arrow`", "`ray`", "`}`"]));
            } else {
                return Err(self.unexpected(&["`vertices`", "`arrow`", "`}`"]));
            }
            if !self.more_items()? {
                return Ok((vertices, arrows));
            }
        }
    }

    fn build_quiver(name: &str, vertices: &[(String, Pos)], arrows: &[(ArrowDecl, [Pos; 3])], pos: Pos) -> PResult<Quiver> {
        for (k, (v, p)) in vertices.iter().enumerate() {
            if vertices[..k].iter().any(|(w, _)| w == v) {
                return Err(semantic(*p, format!("duplicate vertex {v}")));
            }
        }
        for (k, (a, [p, sp, tp])) in arrows.iter().enumerate() {
            if arrows[..k].iter().any(|(b, _)| b.name == a.name) {
                return Err(semantic(*p, format!("duplicate arrow {}", a.name)));
            }
            for (end, ep) in [(&a.source, sp), (&a.target, tp)] {
                if !vertices.iter().any(|(v, _)| v == end) {
                    return Err(semantic(*ep, format!("unknown vertex {end}")));
                }
            }
        }
        let vs: Vec<&str> = vertices.iter().map(|(v, _)| v.as_str()).collect();
        let ars: Vec<(&str, &str, &str)> =
            arrows.iter().map(|(a, _)| (a.name.as_str(), a.source.as_str(), a.target.as_str())).collect();
        let q = Quiver::new(name, &vs, &ars).map_err(|e| semantic(pos, e.to_string()))?;
        if !q.is_acyclic() {
            return Err(semantic(pos, format!("quiver {name} has an oriented cycle")));
        }
        Ok(q)
    }

    fn quiver_block(&mut self, pos: Pos) -> PResult<()> {
        let (name, npos) = self.ident("a quiver name")?;
        let (vertices, arrows) = self.quiver_body(None)?;
        let q = Self::build_quiver(&name, &vertices, &arrows, npos)?;
        let decl = QuiverDecl {
            name: name.clone(),
            vertices: vertices.into_iter().map(|v| v.0).collect(),
            arrows: arrows.into_iter().map(|a| a.0).collect(),
        };
        self.declare(Decl::Quiver(decl), pos, npos)?;
        self.doc.model.quivers.insert(name, Arc::new(q));
        Ok(())
    }

    fn ray_block(&mut self, pos: Pos) -> PResult<()> {
        let (name, npos) = self.ident("a rayquiver name")?;
        let mut rays = Vec::new();
        let (vertices, arrows) = self.quiver_body(Some(&mut rays))?;
        let core = Self::build_quiver(&name, &vertices, &arrows, npos)?;
        for (r, p) in &rays {
            if !vertices.iter().any(|(v, _)| *v == r.attach) {
                return Err(semantic(*p, format!("unknown vertex {}", r.attach)));
            }
        }
        let pairs: Vec<(&str, &str)> = rays.iter().map(|(r, _)| (r.name.as_str(), r.attach.as_str())).collect();
        let rq = RayQuiver::new(core, &pairs).map_err(|e| semantic(npos, e.to_string()))?;
        let decl = RayQuiverDecl {
            name: name.clone(),
            vertices: vertices.into_iter().map(|v| v.0).collect(),
            arrows: arrows.into_iter().map(|a| a.0).collect(),
            rays: rays.into_iter().map(|r| r.0).collect(),
        };
        self.declare(Decl::RayQuiver(decl), pos, npos)?;
        self.doc.model.rays.insert(name, Arc::new(rq));
        Ok(())
    }

    fn quiver_ref(&mut self) -> PResult<(String, Arc<Quiver>)> {
        self.keyword("over")?;
        let (q, qpos) = self.ident("a quiver name")?;
        let quiver = self
            .doc
            .model
            .quivers
            .get(&q)
            .cloned()
            .ok_or_else(|| semantic(qpos, format!("unknown quiver {q}")))?;
        Ok((q, quiver))
    }

    fn matrix(&mut self) -> PResult<(Vec<Vec<i64>>, Pos)> {
        let pos = self.expect(Tok::LBracket)?;
        let mut rows = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok((rows, pos));
        }
        loop {
            self.expect(Tok::LBracket)?;
            let mut row = Vec::new();
            if !self.eat(&Tok::RBracket) {
                loop {
                    row.push(self.int()?.0);
                    if self.eat(&Tok::RBracket) {
                        break;
                    }
                    if !self.eat(&Tok::Comma) {
                        return Err(self.unexpected(&["`,`", "`]`"]));
                    }
                }
            }
            rows.push(row);
            if self.eat(&Tok::RBracket) {
                return Ok((rows, pos));
            }
            if !self.eat(&Tok::Comma) {
                return Err(self.unexpected(&["`,`", "`]`"]));
            }
        }
    }

    fn rep_block(&mut self, pos: Pos) -> PResult<()> {
        let (name, npos) = self.ident("a rep name")?;
        let (over, q) = self.quiver_ref()?;
        self.keyword("prime")?;
        let (prime, _) = self.prime()?;
        self.expect(Tok::LBrace)?;
        let mut dims: Vec<(String, usize)> = Vec::new();
        let mut mats: Vec<(String, Vec<Vec<i64>>)> = Vec::new();
        let mut mat_pos = Vec::new();
        let mut open = !self.eat(&Tok::RBrace);
        while open {
            if self.is_keyword("dims") {
                self.bump();
                self.expect(Tok::LBrace)?;
                let mut more = !self.eat(&Tok::RBrace);
                while more {
                    let (v, vpos) = self.ident("a vertex")?;
                    q.vertex_index(&v).map_err(|_| semantic(vpos, format!("unknown vertex {v}")))?;
                    if dims.iter().any(|(w, _)| *w == v) {
                        return Err(semantic(vpos, format!("dimension of {v} given twice")));
                    }
                    self.expect(Tok::Colon)?;
                    let (n, _) = self.natural()?;
                    dims.push((v, n));
                    more = self.more_items()?;
                }
            } else if self.is_keyword("mat") {
                self.bump();
                let (a, apos) = self.ident("an arrow id")?;
                if q.arrow_index(&a).is_none() {
                    return Err(semantic(apos, format!("unknown arrow {a}")));
                }
                if mats.iter().any(|(b, _)| *b == a) {
                    return Err(semantic(apos, format!("matrix of {a} given twice")));
                }
                self.expect(Tok::Eq)?;
                let (m, _) = self.matrix()?;
                mats.push((a, m));
                mat_pos.push(apos);
            } else {
                return Err(self.unexpected(&["`dims`", "`mat`", "`}`"]));
            }
            open = self.more_items()?;
        }
        let field = Fp::new(prime).map_err(|e| semantic(npos, e.to_string()))?;
        let dim_of = |v: usize| dims.iter().find(|(w, _)| *w == q.vertices()[v]).map_or(0, |d| d.1);
        let dvec: Vec<usize> = (0..q.num_vertices()).map(dim_of).collect();
        let mut matrices = Vec::new();
        for (k, arrow) in q.arrows().iter().enumerate() {
            let (r, c) = (dvec[arrow.target], dvec[arrow.source]);
            let found = mats.iter().position(|(a, _)| *a == arrow.name);
            let m = match found {
                None => Matrix::zeros(field, r, c),
                Some(i) => {
                    let rows = &mats[i].1;
                    let shape_ok = if r == 0 {
                        rows.is_empty()
                    } else {
                        rows.len() == r && rows.iter().all(|row| row.len() == c)
                    };
                    if !shape_ok {
                        let got_c = rows.first().map_or(0, |row| row.len());
                        return Err(semantic(
                            mat_pos[i],
                            format!("matrix for {} must be {r}x{c}, found {}x{got_c}", arrow.name, rows.len()),
                        ));
                    }
                    let data: Vec<u32> = rows.iter().flatten().map(|&x| field.elem(x)).collect();
                    Matrix::from_vec(field, r, c, data).map_err(|e| semantic(mat_pos[i], e.to_string()))?
                }
            };
            debug_assert_eq!(k, matrices.len());
            matrices.push(m);
        }
        let rep = Rep::new(q, field, dvec, matrices).map_err(|e| semantic(npos, e.to_string()))?;
        self.declare(Decl::Rep(RepDecl { name: name.clone(), over, prime, dims, mats }), pos, npos)?;
        self.doc.model.reps.insert(name, rep);
        Ok(())
    }

    fn rep_names(&mut self, over: &str, stop: &[Tok]) -> PResult<Vec<String>> {
        let mut out = Vec::new();
        while !stop.contains(self.peek()) {
            let (r, rpos) = self.ident("a rep name")?;
            match self.doc.decl(&r) {
                Some(Decl::Rep(d)) if d.over == over => {}
                Some(Decl::Rep(d)) => {
                    return Err(semantic(rpos, format!("rep {r} is over {}, not {over}", d.over)));
                }
                _ => return Err(semantic(rpos, format!("unknown rep {r}"))),
            }
            if let (Some(first), Some(this)) = (out.first(), self.doc.model.reps.get(&r)) {
                let first: &Rep = &self.doc.model.reps[first];
                if first.field() != this.field() {
                    return Err(semantic(rpos, format!("rep {r} uses a different prime")));
                }
            }
            out.push(r);
        }
        Ok(out)
    }

    fn subcat_block(&mut self, pos: Pos) -> PResult<()> {
        let (name, npos) = self.ident("a subcat name")?;
        let (over, _) = self.quiver_ref()?;
        self.expect(Tok::LBrace)?;
        self.keyword("gens")?;
        let gens = self.rep_names(&over, &[Tok::Semi, Tok::RBrace])?;
        self.eat(&Tok::Semi);
        self.expect(Tok::RBrace)?;
        self.declare(Decl::Subcat(SubcatDecl { name, over, gens }), pos, npos)
    }

    fn torsion_block(&mut self, pos: Pos) -> PResult<()> {
        let (name, npos) = self.ident("a torsion pair name")?;
        let (over, _) = self.quiver_ref()?;
        self.expect(Tok::LBrace)?;
        let (mut torsion, mut free) = (None, None);
        let mut open = !self.eat(&Tok::RBrace);
        while open {
            let (kw, kpos) = self.ident("`torsion` or `free`")?;
            let names = self.rep_names(&over, &[Tok::Semi, Tok::RBrace])?;
            let slot = match kw.as_str() {
                "torsion" => &mut torsion,
                "free" => &mut free,
                _ => {
                    return Err(ParseError {
                        pos: kpos,
                        message: format!("expected `torsion` or `free`, found `{kw}`"),
                        expected: vec!["`torsion`".into(), "`free`".into()],
                    })
                }
            };
            if slot.is_some() {
                return Err(semantic(kpos, format!("`{kw}` given twice")));
            }
            *slot = Some(names);
            open = self.more_items()?;
        }
        let decl = TorsionDecl { name, over, torsion: torsion.unwrap_or_default(), free: free.unwrap_or_default() };
        self.declare(Decl::Torsion(decl), pos, npos)
    }

    fn proj_sum(&mut self) -> PResult<Vec<(String, Pos)>> {
        if matches!(self.peek(), Tok::Id(s) if s == "0") {
            self.bump();
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        loop {
            self.keyword("P")?;
            self.expect(Tok::LBracket)?;
            out.push(self.ident("a vertex")?);
            self.expect(Tok::RBracket)?;
            if !self.eat(&Tok::Plus) {
                return Ok(out);
            }
        }
    }

    fn path_matrix(&mut self) -> PResult<(Vec<Vec<Vec<i64>>>, Pos)> {
        let pos = self.expect(Tok::LBracket)?;
        let mut rows = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok((rows, pos));
        }
        loop {
            self.expect(Tok::LBracket)?;
            let mut row = Vec::new();
            if !self.eat(&Tok::RBracket) {
                loop {
                    if *self.peek() == Tok::LBracket {
                        let (m, _) = self.flat_list()?;
                        row.push(m);
                    } else {
                        row.push(vec![self.int()?.0]);
                    }
                    if self.eat(&Tok::RBracket) {
                        break;
                    }
                    if !self.eat(&Tok::Comma) {
                        return Err(self.unexpected(&["`,`", "`]`"]));
                    }
                }
            }
            rows.push(row);
            if self.eat(&Tok::RBracket) {
                return Ok((rows, pos));
            }
            if !self.eat(&Tok::Comma) {
                return Err(self.unexpected(&["`,`", "`]`"]));
            }
        }
    }

    fn flat_list(&mut self) -> PResult<(Vec<i64>, Pos)> {
        let pos = self.expect(Tok::LBracket)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok((out, pos));
        }
        loop {
            out.push(self.int()?.0);
            if self.eat(&Tok::RBracket) {
                return Ok((out, pos));
            }
            if !self.eat(&Tok::Comma) {
                return Err(self.unexpected(&["`,`", "`]`"]));
            }
        }
    }

    fn fprep_block(&mut self, pos: Pos) -> PResult<()> {
        let (name, npos) = self.ident("an fprep name")?;
        self.keyword("over")?;
        let (over, opos) = self.ident("a rayquiver name")?;
        let rq = self
            .doc
            .model
            .rays
            .get(&over)
            .cloned()
            .ok_or_else(|| semantic(opos, format!("unknown rayquiver {over}")))?;
        let prime = if self.is_keyword("prime") {
            self.bump();
            Some(self.prime()?.0)
        } else {
            None
        };
        self.expect(Tok::LBrace)?;
        let (mut p1, mut p0, mut f) = (None, None, None);
        let mut open = !self.eat(&Tok::RBrace);
        while open {
            let (kw, kpos) = self.ident("`p1`, `p0` or `f`")?;
            self.expect(Tok::Eq)?;
            match kw.as_str() {
                "p1" if p1.is_none() => p1 = Some(self.proj_sum()?),
                "p0" if p0.is_none() => p0 = Some(self.proj_sum()?),
                "f" if f.is_none() => f = Some(self.path_matrix()?),
                "p1" | "p0" | "f" => return Err(semantic(kpos, format!("`{kw}` given twice"))),
                _ => {
                    return Err(ParseError {
                        pos: kpos,
                        message: format!("expected `p1`, `p0` or `f`, found `{kw}`"),
                        expected: vec!["`p1`".into(), "`p0`".into(), "`f`".into()],
                    })
                }
            }
            open = self.more_items()?;
        }
        let p1 = p1.unwrap_or_default();
        let p0 = p0.ok_or_else(|| semantic(npos, "fprep needs `p0`"))?;
        let (f, fpos) = f.unwrap_or((Vec::new(), npos));
        let locate = |vs: &[(String, Pos)]| {
            vs.iter()
                .map(|(v, p)| rq.locate(v).map_err(|_| semantic(*p, format!("unknown vertex {v}"))))
                .collect::<PResult<Vec<_>>>()
        };
        let l1 = locate(&p1)?;
        let l0 = locate(&p0)?;
        let rows_ok = f.len() == p0.len() && f.iter().all(|r| r.len() == p1.len());
        let empty_ok = p1.is_empty() && f.iter().all(|r| r.is_empty()) && (f.is_empty() || f.len() == p0.len());
        if !rows_ok && !empty_ok {
            return Err(semantic(fpos, format!("f must have {} rows of {} entries", p0.len(), p1.len())));
        }
        let p = prime.unwrap_or(self.default_prime);
        let field = Fp::new(p).map_err(|e| semantic(npos, e.to_string()))?;
        let blocks: Vec<Vec<Vec<u32>>> = (0..p0.len())
            .map(|i| {
                (0..p1.len()).map(|j| f[i][j].iter().map(|&x| field.elem(x)).collect()).collect()
            })
            .collect();
        let m = FPRep::new(rq, field, l1, l0, blocks).map_err(|e| semantic(fpos, e.to_string()))?;
        let decl = FPRepDecl {
            name: name.clone(),
            over,
            prime,
            p1: p1.into_iter().map(|v| v.0).collect(),
            p0: p0.into_iter().map(|v| v.0).collect(),
            f,
        };
        self.declare(Decl::FPRep(decl), pos, npos)?;
        self.doc.model.fpreps.insert(name, m);
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = "quiver A2 { vertices 1 2; arrow a: 1 -> 2 }";

    #[test]
    fn minimal_quiver() {
        let d = parse(A2).unwrap();
        let q = d.quiver("A2").unwrap();
        assert_eq!((q.num_vertices(), q.arrows().len()), (2, 1));
    }

    #[test]
    fn unknown_vertex_is_reported_with_position() {
        let e = parse("quiver A2 { vertices 1 2; arrow a: 1 -> 3 }").unwrap_err();
        assert_eq!(e.message, "unknown vertex 3");
        assert_eq!((e.pos.line, e.pos.col), (1, 41));
    }

    #[test]
    fn rays() {
        let d = parse("rayquiver R { vertices 0; ray t: into 0 }").unwrap();
        let rq = d.ray_quiver("R").unwrap();
        assert_eq!(rq.rays().len(), 1);
        let e = parse("rayquiver R { vertices 0; ray t: from 0 }").unwrap_err();
        assert!(e.message.contains("into the core"));
    }

    #[test]
    fn reps_and_shapes() {
        let src = format!("{A2}\nrep P1 over A2 prime 7 {{ dims {{ 1: 1; 2: 1 }}; mat a = [[-1]] }}");
        let d = parse(&src).unwrap();
        let r = d.rep("P1").unwrap();
        assert_eq!(r.mat(0).get(0, 0), 6);
        let bad = format!("{A2}\nrep P1 over A2 prime 7 {{ dims {{ 1: 1; 2: 1 }}; mat a = [[1, 0]] }}");
        let e = parse(&bad).unwrap_err();
        assert!(e.message.contains("must be 1x1"), "{e}");
        assert_eq!(e.pos.line, 2);
        let bad = format!("{A2}\nrep P1 over A2 prime 8 {{ }}");
        assert!(parse(&bad).unwrap_err().message.contains("not a prime"));
        let dup = format!("{A2}\n{A2}");
        assert!(parse(&dup).unwrap_err().message.contains("duplicate id"));
    }

    #[test]
    fn syntax_errors_list_expectations() {
        let e = parse("quiver A2 { vertices 1 2 arrow a: 1 -> 2 }").unwrap_err();
        assert_eq!(e.message, "expected `;` or `}`, found `arrow`");
        let e = parse("blob X {}").unwrap_err();
        assert_eq!(e.expected.len(), 6);
        let e = parse("quiver A2 { vertices 1 2").unwrap_err();
        assert!(e.message.contains("end of input"));
    }

    #[test]
    fn cyclic_quivers_are_rejected() {
        let e = parse("quiver C { vertices 1 2; arrow a: 1 -> 2; arrow b: 2 -> 1 }").unwrap_err();
        assert!(e.message.contains("cycle"));
    }

    #[test]
    fn subcats_torsion_and_fpreps() {
        let src = format!(
            "{A2}
            rep S1 over A2 prime 32003 {{ dims {{ 1: 1 }} }}
            rep S2 over A2 prime 32003 {{ dims {{ 2: 1 }} }}
            subcat C over A2 {{ gens S1 S2 }}
            torsion T over A2 {{ torsion S1; free S2 }}
            rayquiver R {{ vertices 0; ray r: into 0 }}
            fprep M over R {{ p1 = P[r.1]; p0 = P[r.2]; f = [[1]] }}
            fprep N over R prime 7 {{ p1 = 0; p0 = P[0] }}"
        );
        let d = parse(&src).unwrap();
        assert_eq!(d.subcat("C").unwrap().gens, vec!["S1", "S2"]);
        assert_eq!(d.torsion("T").unwrap().free, vec!["S2"]);
        assert_eq!(d.fprep("M").unwrap().coker_rep(3).unwrap().total_dim(), 1);
        assert_eq!(d.fprep("N").unwrap().field().p(), 7);
        let bad = format!("{A2}\nsubcat C over A2 {{ gens X }}");
        assert!(parse(&bad).unwrap_err().message.contains("unknown rep X"));
    }
}
