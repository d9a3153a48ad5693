//! Hom spaces as solution spaces of the commuting-square system, and
//! factorisation of morphisms through other morphisms.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::rep::{Morphism, Rep};

/// Offsets of each vertex block in the flattened coordinates of `Hom(m, n)`.
fn offsets(m: &Rep, n: &Rep) -> (Vec<usize>, usize) {
    let mut off = Vec::with_capacity(m.dims().len());
    let mut total = 0;
    for v in 0..m.dims().len() {
        off.push(total);
        total += m.dim(v) * n.dim(v);
    }
    (off, total)
}

/// The linear system whose kernel is `Hom(m, n)` in flattened coordinates.
fn commuting_system(m: &Rep, n: &Rep) -> Matrix {
    let f = m.field();
    let (off, total) = offsets(m, n);
    let q = m.quiver();
    let rows: usize = q.arrows().iter().map(|a| n.dim(a.target) * m.dim(a.source)).sum();
    let mut sys = Matrix::zeros(f, rows, total);
    let mut row = 0;
    for (ai, a) in q.arrows().iter().enumerate() {
        let (x, y) = (a.source, a.target);
        let (mx, nx, ny) = (m.dim(x), n.dim(x), n.dim(y));
        let (na, ma) = (n.mat(ai), m.mat(ai));
        for r in 0..ny {
            for c in 0..mx {
                // (N_a F_x)[r][c] - (F_y M_a)[r][c]
                for i in 0..nx {
                    let v = na.get(r, i);
                    if v != 0 {
                        let idx = off[x] + i * mx + c;
                        sys.set(row, idx, f.add(sys.get(row, idx), v));
                    }
                }
                let my = m.dim(y);
                for j in 0..my {
                    let v = ma.get(j, c);
                    if v != 0 {
                        let idx = off[y] + r * my + j;
                        sys.set(row, idx, f.sub(sys.get(row, idx), v));
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

/// A basis of `Hom(m, n)` in the kernel-basis order of the commuting system.
pub fn hom_basis(m: &Rep, n: &Rep) -> Result<Vec<Morphism>> {
    Ok(HomSpace::new(m, n)?.basis)
}

/// `Hom(src, dst)` with a fixed basis and coordinate extraction.
#[derive(Clone, Debug)]
pub struct HomSpace {
    src: Rep,
    dst: Rep,
    basis: Vec<Morphism>,
    /// basis morphisms as flattened columns
    matrix: Matrix,
    /// positions where the basis restricts to the identity
    free: Vec<usize>,
}

impl HomSpace {
    pub fn new(m: &Rep, n: &Rep) -> Result<Self> {
        m.check_same(n)?;
        let (k, free) = commuting_system(m, n).kernel_with_free();
        let basis = (0..k.cols()).map(|j| Morphism::from_coords(m, n, &k.col(j))).collect();
        Ok(HomSpace { src: m.clone(), dst: n.clone(), basis, matrix: k, free })
    }

    pub fn src(&self) -> &Rep {
        &self.src
    }
    pub fn dst(&self) -> &Rep {
        &self.dst
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn basis(&self) -> &[Morphism] {
        &self.basis
    }
    /// Basis vectors as flattened columns.
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn combine(&self, coeffs: &[u32]) -> Morphism {
        assert_eq!(coeffs.len(), self.dim());
        let col = self.matrix.mul(&Matrix::column(self.src.field(), coeffs));
        Morphism::from_coords(&self.src, &self.dst, &col.col(0))
    }

    /// Coordinates of `f` in the basis. The kernel basis is the identity on
    /// the free positions, so coordinates are read off there.
    pub fn coords(&self, f: &Morphism) -> Result<Vec<u32>> {
        if f.src().dims() != self.src.dims() || f.dst().dims() != self.dst.dims() {
            return Err(Error::Usage("morphism from a different Hom space".into()));
        }
        let flat = f.to_coords();
        Ok(self.free.iter().map(|&i| flat[i]).collect())
    }
}

/// Flattened coordinates of morphisms as columns of a matrix with `rows` rows.
pub fn coords_matrix(morphs: &[Morphism], rows: usize, field: crate::field::Fp) -> Matrix {
    let mut m = Matrix::zeros(field, rows, morphs.len());
    for (j, g) in morphs.iter().enumerate() {
        for (i, v) in g.to_coords().into_iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

pub(crate) fn flat_dim(a: &Rep, b: &Rep) -> usize {
    offsets(a, b).1
}

/// Some `w` with `w ∘ i = u`, if one exists (`i: A -> B`, `u: A -> C`).
pub fn factor_through_source(u: &Morphism, i: &Morphism) -> Result<Option<Morphism>> {
    if u.src() != i.src() {
        return Err(Error::Usage("factorisation needs a common source".into()));
    }
    let hom = HomSpace::new(i.dst(), u.dst())?;
    let composites: Vec<Morphism> =
        hom.basis().iter().map(|w| w.compose(i)).collect::<Result<_>>()?;
    let field = u.src().field();
    let mat = coords_matrix(&composites, flat_dim(u.src(), u.dst()), field);
    let target = Matrix::column(field, &u.to_coords());
    Ok(mat.solve(&target)?.map(|x| hom.combine(&x.col(0))))
}

/// Some `w` with `p ∘ w = u`, if one exists (`p: B -> C`, `u: A -> C`).
pub fn factor_through_target(u: &Morphism, p: &Morphism) -> Result<Option<Morphism>> {
    if u.dst() != p.dst() {
        return Err(Error::Usage("factorisation needs a common target".into()));
    }
    let hom = HomSpace::new(u.src(), p.src())?;
    let composites: Vec<Morphism> =
        hom.basis().iter().map(|w| p.compose(w)).collect::<Result<_>>()?;
    let field = u.src().field();
    let mat = coords_matrix(&composites, flat_dim(u.src(), u.dst()), field);
    let target = Matrix::column(field, &u.to_coords());
    Ok(mat.solve(&target)?.map(|x| hom.combine(&x.col(0))))
}
