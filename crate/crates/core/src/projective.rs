//! Indecomposable projectives and injectives, radical/top/socle, projective
//! covers, injective envelopes, minimal (co)presentations, and morphisms
//! between sums of projectives (or injectives) in path coordinates.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Fp, Matrix};
use crate::quiver::Quiver;
use crate::rep::{direct_sum, row_morphism_into, DirectSum, Morphism, Rep};

/// `P_x`: basis at `y` is the canonical list of paths `x -> y`; arrows act by
/// appending.
pub fn projective(q: &Arc<Quiver>, field: Fp, x: usize) -> Result<Rep> {
    let paths = q.paths_from(x)?;
    let dims: Vec<usize> = paths.iter().map(|p| p.len()).collect();
    let mut mats = Vec::with_capacity(q.arrows().len());
    for (ai, a) in q.arrows().iter().enumerate() {
        let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
        for (c, p) in paths[a.source].iter().enumerate() {
            let mut ext = p.clone();
            ext.push(ai);
            let r = paths[a.target].iter().position(|t| *t == ext).expect("extended path is listed");
            m.set(r, c, 1);
        }
        mats.push(m);
    }
    Rep::new(q.clone(), field, dims, mats)
}

/// Canonical paths `y -> x` for every `y`.
fn paths_into(q: &Quiver, x: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    (0..q.num_vertices()).map(|y| Ok(q.paths_between(y, x)?.paths)).collect()
}

/// `I_x`: basis at `y` is the canonical list of paths `y -> x`; an arrow
/// `a: y -> z` sends the basis vector of `a·q` to that of `q` and kills paths
/// not starting with `a`.
pub fn injective(q: &Arc<Quiver>, field: Fp, x: usize) -> Result<Rep> {
    let paths = paths_into(q, x)?;
    let dims: Vec<usize> = paths.iter().map(|p| p.len()).collect();
    let mut mats = Vec::with_capacity(q.arrows().len());
    for (ai, a) in q.arrows().iter().enumerate() {
        let mut m = Matrix::zeros(field, dims[a.target], dims[a.source]);
        for (c, p) in paths[a.source].iter().enumerate() {
            if p.first() == Some(&ai) {
                let r = paths[a.target].iter().position(|t| t[..] == p[1..]).expect("suffix is listed");
                m.set(r, c, 1);
            }
        }
        mats.push(m);
    }
    Rep::new(q.clone(), field, dims, mats)
}

/// The morphism `P_x -> m` sending the trivial path to `v ∈ m_x`.
pub fn from_projective_generator(px: &Rep, x: usize, m: &Rep, v: &[u32]) -> Result<Morphism> {
    let q = m.quiver();
    let paths = q.paths_from(x)?;
    let field = m.field();
    let vcol = Matrix::column(field, v);
    let mut comps = Vec::with_capacity(q.num_vertices());
    for (y, ps) in paths.iter().enumerate() {
        let mut c = Matrix::zeros(field, m.dim(y), ps.len());
        for (j, p) in ps.iter().enumerate() {
            let img = m.path_matrix(x, p).mul(&vcol);
            for r in 0..m.dim(y) {
                c.set(r, j, img.get(r, 0));
            }
        }
        comps.push(c);
    }
    Morphism::unchecked(px.clone(), m.clone(), comps)
}

/// The morphism `m -> I_x` corresponding to the functional `xi` on `m_x`.
pub fn to_injective_cogenerator(m: &Rep, ix: &Rep, x: usize, xi: &[u32]) -> Result<Morphism> {
    let q = m.quiver();
    let paths = paths_into(q, x)?;
    let field = m.field();
    let row = Matrix::from_vec(field, 1, xi.len(), xi.to_vec())?;
    let mut comps = Vec::with_capacity(q.num_vertices());
    for (y, ps) in paths.iter().enumerate() {
        let mut c = Matrix::zeros(field, ps.len(), m.dim(y));
        for (i, p) in ps.iter().enumerate() {
            let r = row.mul(&m.path_matrix(y, p));
            for col in 0..m.dim(y) {
                c.set(i, col, r.get(0, col));
            }
        }
        comps.push(c);
    }
    Morphism::unchecked(m.clone(), ix.clone(), comps)
}

/// Radical with its inclusion: at each vertex the sum of images of incoming arrows.
pub fn radical(m: &Rep) -> Result<(Rep, Morphism)> {
    let q = m.quiver();
    let bases = (0..q.num_vertices())
        .map(|y| {
            let mut span = Matrix::zeros(m.field(), m.dim(y), 0);
            for a in q.arrows_into(y) {
                span = span.hstack(m.mat(a));
            }
            span.column_space()
        })
        .collect();
    m.subrep(bases)
}

/// Top `m / rad m` with the projection.
pub fn top(m: &Rep) -> Result<(Rep, Morphism)> {
    let (_, incl) = radical(m)?;
    m.quotient(incl.comps())
}

/// Socle with its inclusion: at each vertex the common kernel of outgoing arrows.
pub fn socle(m: &Rep) -> Result<(Rep, Morphism)> {
    let q = m.quiver();
    let bases = (0..q.num_vertices())
        .map(|x| {
            let mut stacked = Matrix::zeros(m.field(), 0, m.dim(x));
            for a in q.arrows_from(x) {
                stacked = stacked.vstack(m.mat(a));
            }
            stacked.kernel_basis()
        })
        .collect();
    m.subrep(bases)
}

/// A direct sum of indecomposable projectives (or injectives), one summand
/// per listed vertex.
#[derive(Clone, Debug)]
pub struct BasicSum {
    pub vertices: Vec<usize>,
    pub parts: DirectSum,
}

impl BasicSum {
    pub fn rep(&self) -> &Rep {
        &self.parts.sum
    }

    pub fn projectives(q: &Arc<Quiver>, field: Fp, vertices: &[usize]) -> Result<Self> {
        let reps = vertices.iter().map(|&x| projective(q, field, x)).collect::<Result<Vec<_>>>()?;
        Ok(BasicSum { vertices: vertices.to_vec(), parts: direct_sum(q, field, &reps)? })
    }

    pub fn injectives(q: &Arc<Quiver>, field: Fp, vertices: &[usize]) -> Result<Self> {
        let reps = vertices.iter().map(|&x| injective(q, field, x)).collect::<Result<Vec<_>>>()?;
        Ok(BasicSum { vertices: vertices.to_vec(), parts: direct_sum(q, field, &reps)? })
    }

    /// Morphism from a sum of projectives given the image of each generator.
    pub fn map_from_generators(&self, target: &Rep, images: &[Vec<u32>]) -> Result<Morphism> {
        let maps = self
            .vertices
            .iter()
            .zip(&self.parts.projections)
            .zip(images)
            .map(|((&x, p), v)| from_projective_generator(p.dst(), x, target, v))
            .collect::<Result<Vec<_>>>()?;
        row_morphism_into(&self.parts, &maps, target)
    }

    /// Morphism into a sum of injectives given one functional per summand.
    pub fn map_to_cogenerators(&self, source: &Rep, functionals: &[Vec<u32>]) -> Result<Morphism> {
        let mut acc = Morphism::zero(source, self.rep());
        for ((&x, inj), xi) in self.vertices.iter().zip(&self.parts.injections).zip(functionals) {
            let g = to_injective_cogenerator(source, inj.src(), x, xi)?;
            acc = acc.add(&inj.compose(&g)?)?;
        }
        Ok(acc)
    }

    /// Offset of summand `j`'s basis block at vertex `v` inside the sum.
    fn offset(&self, j: usize, v: usize) -> usize {
        self.parts.injections[..j].iter().map(|i| i.src().dim(v)).sum()
    }
}

/// Basis vectors (columns) of `m_x` extending a basis of `sub` (columns) to
/// the whole space, chosen among the standard basis in increasing order.
fn complement_columns(field: Fp, sub: &Matrix, n: usize) -> Matrix {
    let aug = sub.hstack(&Matrix::identity(field, n));
    let piv = aug.rref().pivots;
    let chosen: Vec<usize> = piv.into_iter().filter(|&c| c >= sub.cols()).map(|c| c - sub.cols()).collect();
    Matrix::identity(field, n).select_cols(&chosen)
}

/// Projective cover `p0 -> m` lifting a basis of the top.
pub fn projective_cover(m: &Rep) -> Result<(BasicSum, Morphism)> {
    let (_, rad) = radical(m)?;
    let q = m.quiver();
    let mut vertices = Vec::new();
    let mut images = Vec::new();
    for x in 0..q.num_vertices() {
        let lifts = complement_columns(m.field(), rad.comp(x), m.dim(x));
        for j in 0..lifts.cols() {
            vertices.push(x);
            images.push(lifts.col(j));
        }
    }
    let p0 = BasicSum::projectives(q, m.field(), &vertices)?;
    let epi = p0.map_from_generators(m, &images)?;
    Ok((p0, epi))
}

/// Injective envelope `m -> i0` dual to a basis of the socle.
pub fn injective_envelope(m: &Rep) -> Result<(BasicSum, Morphism)> {
    let (_, soc) = socle(m)?;
    let q = m.quiver();
    let mut vertices = Vec::new();
    let mut functionals = Vec::new();
    for x in 0..q.num_vertices() {
        let s = soc.comp(x);
        if s.cols() == 0 {
            continue;
        }
        let xi = s.left_inverse().ok_or_else(|| Error::Internal("socle basis not independent".into()))?;
        for r in 0..xi.rows() {
            vertices.push(x);
            functionals.push(xi.row(r).to_vec());
        }
    }
    let i0 = BasicSum::injectives(q, m.field(), &vertices)?;
    let mono = i0.map_to_cogenerators(m, &functionals)?;
    Ok((i0, mono))
}

/// `m` is projective iff its projective cover is injective, i.e. has the
/// same dimension.
pub fn is_projective(m: &Rep) -> Result<bool> {
    let (p0, _) = projective_cover(m)?;
    Ok(p0.rep().total_dim() == m.total_dim())
}

pub fn is_injective(m: &Rep) -> Result<bool> {
    let (i0, _) = injective_envelope(m)?;
    Ok(i0.rep().total_dim() == m.total_dim())
}

/// `0 -> p1 -f-> p0 -epi-> m -> 0` with `p0 -> m` a projective cover.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation {
    pub p1: BasicSum,
    pub p0: BasicSum,
    pub f: Morphism,
    pub epi: Morphism,
}

pub fn minimal_projective_presentation(m: &Rep) -> Result<ProjectivePresentation> {
    if m.is_zero() {
        return Err(Error::Usage("projective presentation of the zero representation".into()));
    }
    let (p0, epi) = projective_cover(m)?;
    let (k, incl) = epi.kernel()?;
    let (p1, cover) = projective_cover(&k)?;
    let f = incl.compose(&cover)?;
    Ok(ProjectivePresentation { p1, p0, f, epi })
}

/// `0 -> m -mono-> i0 -g-> i1 -> 0` with `m -> i0` an injective envelope.
#[derive(Clone, Debug)]
pub struct InjectiveCopresentation {
    pub i0: BasicSum,
    pub i1: BasicSum,
    pub mono: Morphism,
    pub g: Morphism,
}

pub fn minimal_injective_copresentation(m: &Rep) -> Result<InjectiveCopresentation> {
    if m.is_zero() {
        return Err(Error::Usage("injective copresentation of the zero representation".into()));
    }
    let (i0, mono) = injective_envelope(m)?;
    let (_, proj) = mono.cokernel()?;
    let (i1, env) = injective_envelope(proj.dst())?;
    let g = env.compose(&proj)?;
    Ok(InjectiveCopresentation { i0, i1, mono, g })
}

/// A morphism between sums of indecomposable projectives (or injectives) in
/// path coordinates: `blocks[i][j]` lists the coefficients, over the
/// canonical paths `dst[i] -> src[j]`, of the component from summand `j` to
/// summand `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathMap {
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
    pub blocks: Vec<Vec<Vec<u32>>>,
}

impl PathMap {
    /// Checks every block has one coefficient per path.
    pub fn validate(&self, q: &Quiver, field: Fp) -> Result<()> {
        if self.blocks.len() != self.dst.len() {
            return Err(Error::Usage("path map needs one block row per target summand".into()));
        }
        for (i, row) in self.blocks.iter().enumerate() {
            if row.len() != self.src.len() {
                return Err(Error::Usage("path map needs one block per source summand".into()));
            }
            for (j, coeffs) in row.iter().enumerate() {
                let n = q.paths_between(self.dst[i], self.src[j])?.paths.len();
                if coeffs.len() != n {
                    return Err(Error::Usage(format!(
                        "block ({i},{j}) needs {n} path coefficients, got {}",
                        coeffs.len()
                    )));
                }
                if coeffs.iter().any(|&c| c >= field.p()) {
                    return Err(Error::Usage("path coefficient not reduced".into()));
                }
            }
        }
        Ok(())
    }

    /// Reads the path coordinates of a morphism between sums of projectives.
    pub fn from_projective_morphism(f: &Morphism, src: &BasicSum, dst: &BasicSum) -> Self {
        let mut blocks = vec![vec![Vec::new(); src.vertices.len()]; dst.vertices.len()];
        for (j, &x) in src.vertices.iter().enumerate() {
            // the trivial path is the first basis vector of P_x at x
            let col = f.comp(x).col(src.offset(j, x));
            for (i, inj) in dst.parts.injections.iter().enumerate() {
                let off = dst.offset(i, x);
                let len = inj.src().dim(x);
                blocks[i][j] = col[off..off + len].to_vec();
            }
        }
        PathMap { src: src.vertices.clone(), dst: dst.vertices.clone(), blocks }
    }

    pub fn to_projective_morphism(&self, src: &BasicSum, dst: &BasicSum) -> Result<Morphism> {
        let images: Vec<Vec<u32>> = (0..self.src.len())
            .map(|j| self.blocks.iter().flat_map(|row| row[j].iter().copied()).collect())
            .collect();
        src.map_from_generators(dst.rep(), &images)
    }

    /// Reads the path coordinates of a morphism between sums of injectives.
    pub fn from_injective_morphism(g: &Morphism, src: &BasicSum, dst: &BasicSum) -> Self {
        let mut blocks = vec![vec![Vec::new(); src.vertices.len()]; dst.vertices.len()];
        for (i, &y) in dst.vertices.iter().enumerate() {
            // I_y at y is spanned by the trivial path
            let row = dst.offset(i, y);
            for (j, inj) in src.parts.injections.iter().enumerate() {
                let off = src.offset(j, y);
                let len = inj.src().dim(y);
                blocks[i][j] = (off..off + len).map(|c| g.comp(y).get(row, c)).collect();
            }
        }
        PathMap { src: src.vertices.clone(), dst: dst.vertices.clone(), blocks }
    }

    pub fn to_injective_morphism(&self, src: &BasicSum, dst: &BasicSum) -> Result<Morphism> {
        let mut acc = Morphism::zero(src.rep(), dst.rep());
        for (i, (&y, dinj)) in self.dst.iter().zip(&dst.parts.injections).enumerate() {
            for (j, sproj) in src.parts.projections.iter().enumerate() {
                let piece = to_injective_cogenerator(sproj.dst(), dinj.src(), y, &self.blocks[i][j])?;
                acc = acc.add(&dinj.compose(&piece)?.compose(sproj)?)?;
            }
        }
        Ok(acc)
    }
}
