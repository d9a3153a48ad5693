//! Representations of finite quivers and their morphisms.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Fp, Matrix};
use crate::quiver::Quiver;

/// A representation: a vector space `F_p^{dims[v]}` at each vertex and a
/// matrix of shape `dims[target] x dims[source]` on each arrow.
#[derive(Clone, Debug)]
pub struct Rep {
    quiver: Arc<Quiver>,
    field: Fp,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

impl PartialEq for Rep {
    fn eq(&self, o: &Self) -> bool {
        self.same_category(o) && self.dims == o.dims && self.mats == o.mats
    }
}
impl Eq for Rep {}

impl Rep {
    pub fn new(quiver: Arc<Quiver>, field: Fp, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() || mats.len() != quiver.arrows().len() {
            return Err(Error::Dimension(format!(
                "representation of {} needs {} dims and {} matrices",
                quiver.name(),
                quiver.num_vertices(),
                quiver.arrows().len()
            )));
        }
        for (a, m) in quiver.arrows().iter().zip(&mats) {
            if m.shape() != (dims[a.target], dims[a.source]) {
                return Err(Error::Dimension(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a.name,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::QuiverMismatch);
            }
        }
        Ok(Rep { quiver, field, dims, mats })
    }

    /// Builds from named dimensions and arrow matrices; unnamed vertices get
    /// dimension zero and unnamed arrows the zero matrix.
    pub fn from_named(
        quiver: Arc<Quiver>,
        field: Fp,
        dims: &[(&str, usize)],
        mats: &[(&str, Matrix)],
    ) -> Result<Self> {
        let mut d = vec![0; quiver.num_vertices()];
        for (v, n) in dims {
            d[quiver.vertex_index(v)?] = *n;
        }
        let mut ms: Vec<Matrix> = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, d[a.target], d[a.source]))
            .collect();
        for (a, m) in mats {
            let i = quiver
                .arrow_index(a)
                .ok_or_else(|| Error::Usage(format!("unknown arrow {a}")))?;
            ms[i] = m.clone();
        }
        Rep::new(quiver, field, d, ms)
    }

    pub fn zero(quiver: Arc<Quiver>, field: Fp) -> Self {
        let n = quiver.num_vertices();
        let mats = quiver.arrows().iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Rep { quiver, field, dims: vec![0; n], mats }
    }

    pub fn simple(quiver: Arc<Quiver>, field: Fp, v: usize) -> Self {
        let mut dims = vec![0; quiver.num_vertices()];
        dims[v] = 1;
        let mats = quiver
            .arrows()
            .iter()
            .map(|a| Matrix::zeros(field, dims[a.target], dims[a.source]))
            .collect();
        Rep { quiver, field, dims, mats }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }
    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }
    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }
    pub fn mat(&self, a: usize) -> &Matrix {
        &self.mats[a]
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn same_category(&self, o: &Rep) -> bool {
        self.field == o.field && (Arc::ptr_eq(&self.quiver, &o.quiver) || *self.quiver == *o.quiver)
    }

    pub fn check_same(&self, o: &Rep) -> Result<()> {
        if self.same_category(o) {
            Ok(())
        } else {
            Err(Error::QuiverMismatch)
        }
    }

    /// Vertices with nonzero dimension.
    pub fn support(&self) -> Vec<usize> {
        (0..self.dims.len()).filter(|&v| self.dims[v] > 0).collect()
    }

    /// Matrix of a path (arrow indices from its source), `dims[t] x dims[s]`.
    pub fn path_matrix(&self, source: usize, path: &[usize]) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dims[source]);
        for &a in path {
            m = self.mats[a].mul(&m);
        }
        m
    }

    /// Subrepresentation spanned at each vertex by the columns of `bases`
    /// (full column rank, stable under every arrow), with its inclusion.
    pub fn subrep(&self, bases: Vec<Matrix>) -> Result<(Rep, Morphism)> {
        let mut mats = Vec::with_capacity(self.mats.len());
        for (a, arrow) in self.quiver.arrows().iter().enumerate() {
            let image = self.mats[a].mul(&bases[arrow.source]);
            let m = bases[arrow.target].solve(&image)?.ok_or_else(|| {
                Error::Internal(format!("subspace not stable under arrow {}", arrow.name))
            })?;
            mats.push(m);
        }
        let dims = bases.iter().map(|b| b.cols()).collect();
        let sub = Rep::new(self.quiver.clone(), self.field, dims, mats)?;
        let incl = Morphism::new(sub.clone(), self.clone(), bases)?;
        Ok((sub, incl))
    }

    /// Quotient by the subrepresentation spanned by `bases`, with the
    /// projection.
    pub fn quotient(&self, bases: &[Matrix]) -> Result<(Rep, Morphism)> {
        let projs: Vec<Matrix> = bases.iter().map(|b| b.cokernel_projection()).collect();
        let mut mats = Vec::with_capacity(self.mats.len());
        for (a, arrow) in self.quiver.arrows().iter().enumerate() {
            let src_proj = &projs[arrow.source];
            let section = src_proj
                .right_inverse()
                .ok_or_else(|| Error::Internal("cokernel projection not surjective".into()))?;
            mats.push(projs[arrow.target].mul(&self.mats[a]).mul(&section));
        }
        let dims = projs.iter().map(|p| p.rows()).collect();
        let q = Rep::new(self.quiver.clone(), self.field, dims, mats)?;
        let proj = Morphism::new(self.clone(), q.clone(), projs)?;
        Ok((q, proj))
    }

    /// Same data over the opposite quiver with transposed matrices.
    pub fn dual(&self) -> Rep {
        Rep {
            quiver: Arc::new(self.quiver.opposite()),
            field: self.field,
            dims: self.dims.clone(),
            mats: self.mats.iter().map(|m| m.transpose()).collect(),
        }
    }

    /// Dual over a given opposite quiver (avoids re-allocating it).
    pub fn dual_over(&self, opposite: &Arc<Quiver>) -> Rep {
        Rep {
            quiver: opposite.clone(),
            field: self.field,
            dims: self.dims.clone(),
            mats: self.mats.iter().map(|m| m.transpose()).collect(),
        }
    }

    /// Moves the representation to another quiver by matching vertex and
    /// arrow names; vertices missing here get dimension zero. Fails if a
    /// supported vertex is missing from `target`.
    pub fn transport(&self, target: &Arc<Quiver>) -> Result<Rep> {
        for v in self.support() {
            target.vertex_index(&self.quiver.vertices()[v])?;
        }
        let local = |name: &str| self.quiver.vertex_index(name).ok();
        let dims: Vec<usize> = target
            .vertices()
            .iter()
            .map(|v| local(v).map_or(0, |i| self.dims[i]))
            .collect();
        let mut mats = Vec::new();
        for a in target.arrows() {
            let m = match self.quiver.arrow_index(&a.name) {
                Some(i)
                    if self.quiver.vertices()[self.quiver.arrows()[i].source] == target.vertices()[a.source]
                        && self.quiver.vertices()[self.quiver.arrows()[i].target]
                            == target.vertices()[a.target] =>
                {
                    self.mats[i].clone()
                }
                _ => Matrix::zeros(self.field, dims[a.target], dims[a.source]),
            };
            mats.push(m);
        }
        Rep::new(target.clone(), self.field, dims, mats)
    }

    pub fn describe(&self) -> String {
        let parts: Vec<String> = self.dims.iter().map(|d| format!("{d}")).collect();
        format!("[{}]", parts.join(","))
    }
}

/// A family of vertex maps commuting with all arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    src: Rep,
    dst: Rep,
    comps: Vec<Matrix>,
}

impl Morphism {
    /// Checks shapes and every commuting square.
    pub fn new(src: Rep, dst: Rep, comps: Vec<Matrix>) -> Result<Self> {
        let m = Self::unchecked(src, dst, comps)?;
        for (a, arrow) in m.src.quiver.arrows().iter().enumerate() {
            let lhs = m.dst.mats[a].mul(&m.comps[arrow.source]);
            let rhs = m.comps[arrow.target].mul(&m.src.mats[a]);
            if lhs != rhs {
                return Err(Error::NotCommuting(arrow.name.clone()));
            }
        }
        Ok(m)
    }

    /// Shape-checked only; callers must guarantee the squares commute.
    pub(crate) fn unchecked(src: Rep, dst: Rep, comps: Vec<Matrix>) -> Result<Self> {
        src.check_same(&dst)?;
        if comps.len() != src.dims.len() {
            return Err(Error::Dimension("wrong number of vertex maps".into()));
        }
        for (v, c) in comps.iter().enumerate() {
            if c.shape() != (dst.dims[v], src.dims[v]) {
                return Err(Error::Dimension(format!(
                    "vertex map at {} has shape {}x{}, expected {}x{}",
                    src.quiver.vertices()[v],
                    c.rows(),
                    c.cols(),
                    dst.dims[v],
                    src.dims[v]
                )));
            }
        }
        Ok(Morphism { src, dst, comps })
    }

    pub fn identity(m: &Rep) -> Self {
        let comps = m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect();
        Morphism { src: m.clone(), dst: m.clone(), comps }
    }

    pub fn zero(src: &Rep, dst: &Rep) -> Self {
        let comps = src
            .dims
            .iter()
            .zip(&dst.dims)
            .map(|(&s, &d)| Matrix::zeros(src.field, d, s))
            .collect();
        Morphism { src: src.clone(), dst: dst.clone(), comps }
    }

    pub fn src(&self) -> &Rep {
        &self.src
    }
    pub fn dst(&self) -> &Rep {
        &self.dst
    }
    pub fn comps(&self) -> &[Matrix] {
        &self.comps
    }
    pub fn comp(&self, v: usize) -> &Matrix {
        &self.comps[v]
    }

    /// `self ∘ g`.
    pub fn compose(&self, g: &Morphism) -> Result<Morphism> {
        if g.dst != self.src {
            return Err(Error::Usage("composition of non-composable morphisms".into()));
        }
        let comps = self.comps.iter().zip(&g.comps).map(|(a, b)| a.mul(b)).collect();
        Ok(Morphism { src: g.src.clone(), dst: self.dst.clone(), comps })
    }

    fn check_parallel(&self, o: &Morphism) -> Result<()> {
        if self.src != o.src || self.dst != o.dst {
            return Err(Error::Usage("morphisms are not parallel".into()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Morphism) -> Result<Morphism> {
        self.check_parallel(o)?;
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.add(b)).collect();
        Ok(Morphism { src: self.src.clone(), dst: self.dst.clone(), comps })
    }

    pub fn sub(&self, o: &Morphism) -> Result<Morphism> {
        self.check_parallel(o)?;
        let comps = self.comps.iter().zip(&o.comps).map(|(a, b)| a.sub(b)).collect();
        Ok(Morphism { src: self.src.clone(), dst: self.dst.clone(), comps })
    }

    pub fn scale(&self, s: u32) -> Morphism {
        let comps = self.comps.iter().map(|a| a.scale(s)).collect();
        Morphism { src: self.src.clone(), dst: self.dst.clone(), comps }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn is_mono(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.cols())
    }

    pub fn is_epi(&self) -> bool {
        self.comps.iter().all(|c| c.rank() == c.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(|c| c.is_invertible())
    }

    pub fn inverse(&self) -> Option<Morphism> {
        let comps = self.comps.iter().map(|c| c.inverse()).collect::<Option<Vec<_>>>()?;
        Some(Morphism { src: self.dst.clone(), dst: self.src.clone(), comps })
    }

    /// All vertex maps flattened row-major and concatenated in vertex order.
    pub fn to_coords(&self) -> Vec<u32> {
        self.comps.iter().flat_map(|c| c.data().iter().copied()).collect()
    }

    /// Inverse of [`Morphism::to_coords`]; the caller guarantees commutativity
    /// (for example, a linear combination of morphisms).
    pub(crate) fn from_coords(src: &Rep, dst: &Rep, coords: &[u32]) -> Morphism {
        let mut comps = Vec::with_capacity(src.dims.len());
        let mut at = 0;
        for v in 0..src.dims.len() {
            let (r, c) = (dst.dims[v], src.dims[v]);
            comps.push(Matrix::from_vec(src.field, r, c, coords[at..at + r * c].to_vec()).unwrap());
            at += r * c;
        }
        Morphism { src: src.clone(), dst: dst.clone(), comps }
    }

    /// Transposed maps between the duals, reversing direction.
    pub fn dual_over(&self, opposite: &Arc<Quiver>) -> Morphism {
        Morphism {
            src: self.dst.dual_over(opposite),
            dst: self.src.dual_over(opposite),
            comps: self.comps.iter().map(|c| c.transpose()).collect(),
        }
    }

    pub fn kernel(&self) -> Result<(Rep, Morphism)> {
        let bases = self.comps.iter().map(|c| c.kernel_basis()).collect();
        self.src.subrep(bases)
    }

    pub fn cokernel(&self) -> Result<(Rep, Morphism)> {
        let images: Vec<Matrix> = self.comps.iter().map(|c| c.column_space()).collect();
        self.dst.quotient(&images)
    }

    /// Image with its inclusion into the target and the corestriction.
    pub fn image(&self) -> Result<(Rep, Morphism, Morphism)> {
        let bases: Vec<Matrix> = self.comps.iter().map(|c| c.column_space()).collect();
        let (im, incl) = self.dst.subrep(bases.clone())?;
        let mut comps = Vec::with_capacity(bases.len());
        for (b, c) in bases.iter().zip(&self.comps) {
            comps.push(b.solve(c)?.ok_or_else(|| Error::Internal("image basis".into()))?);
        }
        let proj = Morphism::unchecked(self.src.clone(), im.clone(), comps)?;
        Ok((im, incl, proj))
    }
}

/// A direct sum with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub sum: Rep,
    pub injections: Vec<Morphism>,
    pub projections: Vec<Morphism>,
}

/// Direct sum of representations over the same quiver, in the given order.
pub fn direct_sum(quiver: &Arc<Quiver>, field: Fp, parts: &[Rep]) -> Result<DirectSum> {
    for p in parts {
        if p.field != field || *p.quiver != **quiver {
            return Err(Error::QuiverMismatch);
        }
    }
    let n = quiver.num_vertices();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let mats = (0..quiver.arrows().len())
        .map(|a| {
            let blocks: Vec<Matrix> = parts.iter().map(|p| p.mats[a].clone()).collect();
            Matrix::block_diag(field, &blocks)
        })
        .collect();
    let sum = Rep { quiver: quiver.clone(), field, dims, mats };
    let mut offsets = vec![0usize; n];
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for p in parts {
        let mut inj = Vec::with_capacity(n);
        let mut proj = Vec::with_capacity(n);
        for (v, off) in offsets.iter_mut().enumerate() {
            let mut i = Matrix::zeros(field, sum.dims[v], p.dims[v]);
            i.paste(*off, 0, &Matrix::identity(field, p.dims[v]));
            proj.push(i.transpose());
            inj.push(i);
            *off += p.dims[v];
        }
        injections.push(Morphism { src: p.clone(), dst: sum.clone(), comps: inj });
        projections.push(Morphism { src: sum.clone(), dst: p.clone(), comps: proj });
    }
    Ok(DirectSum { sum, injections, projections })
}

/// `(f_1, ..., f_k): ⊕ A_i -> B` given maps `f_i: A_i -> B` and the sum.
pub fn row_morphism(sum: &DirectSum, maps: &[Morphism]) -> Result<Morphism> {
    let target = maps
        .first()
        .map(|m| m.dst.clone())
        .ok_or_else(|| Error::Usage("empty row morphism needs an explicit target".into()))?;
    row_morphism_into(sum, maps, &target)
}

pub fn row_morphism_into(sum: &DirectSum, maps: &[Morphism], target: &Rep) -> Result<Morphism> {
    let mut acc = Morphism::zero(&sum.sum, target);
    for (f, p) in maps.iter().zip(&sum.projections) {
        acc = acc.add(&f.compose(p)?)?;
    }
    Ok(acc)
}

/// `(f_1; ...; f_k): A -> ⊕ B_i`.
pub fn column_morphism(source: &Rep, sum: &DirectSum, maps: &[Morphism]) -> Result<Morphism> {
    let mut acc = Morphism::zero(source, &sum.sum);
    for (f, i) in maps.iter().zip(&sum.injections) {
        acc = acc.add(&i.compose(f)?)?;
    }
    Ok(acc)
}
