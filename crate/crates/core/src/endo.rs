//! Endomorphism algebras: structure constants and the Jacobson radical via
//! the trace form of the regular representation.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Matrix, QuotientSpace};
use crate::hom::HomSpace;
use crate::rep::{Morphism, Rep};

#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub hom: HomSpace,
    /// `left_mult[i]` is the matrix of `y -> b_i ∘ y` in the basis
    pub left_mult: Vec<Matrix>,
    /// radical basis as columns in basis coordinates
    pub radical: Matrix,
    rad_quotient: QuotientSpace,
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.hom.dim()
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.cols()
    }

    /// Dimension of `End / rad End`.
    pub fn semisimple_dim(&self) -> usize {
        self.dim() - self.radical_dim()
    }

    /// Structure constants: coordinates of `b_i ∘ b_j`.
    pub fn product_coords(&self, i: usize, j: usize) -> Vec<u32> {
        self.left_mult[i].col(j)
    }

    pub fn in_radical(&self, f: &Morphism) -> Result<bool> {
        Ok(self.rad_quotient.contains(&self.hom.coords(f)?))
    }

    pub fn radical_basis(&self) -> Vec<Morphism> {
        (0..self.radical.cols()).map(|j| self.hom.combine(&self.radical.col(j))).collect()
    }

    /// Image of an endomorphism in `End / rad`, in quotient coordinates.
    pub fn residue(&self, f: &Morphism) -> Result<Vec<u32>> {
        Ok(self.rad_quotient.coords(&self.hom.coords(f)?))
    }
}

/// `End(m)` with its radical, which is the kernel of `(x, y) -> tr(L_x L_y)`.
/// Valid when `p > dim End(m)`, which is checked.
pub fn end_algebra(m: &Rep) -> Result<EndAlgebra> {
    let hom = HomSpace::new(m, m)?;
    let field = m.field();
    let d = hom.dim();
    if field.p() as usize <= d {
        return Err(Error::PrimeTooSmall { p: field.p(), needed: d });
    }
    let mut left_mult = Vec::with_capacity(d);
    for bi in hom.basis() {
        let mut lm = Matrix::zeros(field, d, d);
        for (j, bj) in hom.basis().iter().enumerate() {
            let prod = bi.compose(bj)?;
            for (r, c) in hom.coords(&prod)?.into_iter().enumerate() {
                lm.set(r, j, c);
            }
        }
        left_mult.push(lm);
    }
    let mut form = Matrix::zeros(field, d, d);
    for i in 0..d {
        for j in i..d {
            let t = left_mult[i].mul(&left_mult[j]).trace();
            form.set(i, j, t);
            form.set(j, i, t);
        }
    }
    let radical = form.kernel_basis();
    let rad_quotient = QuotientSpace::new(field, d, &radical);
    Ok(EndAlgebra { hom, left_mult, radical, rad_quotient })
}
