//! Injectively and projectively trivial morphisms, the stable Hom spaces,
//! and the pairings between stable Hom and Ext.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::ext::{ExtClass, ExtSpace};
use crate::field::{Matrix, QuotientSpace};
use crate::hom::{factor_through_source, factor_through_target, hom_basis, HomSpace};
use crate::projective::{injective_envelope, projective_cover};
use crate::rep::{Morphism, Rep};

/// `u: X -> Y` factors through the injective envelope of `X`.
pub fn is_injectively_trivial(u: &Morphism) -> Result<bool> {
    if u.is_zero() {
        return Ok(true);
    }
    let (_, mono) = injective_envelope(u.src())?;
    Ok(factor_through_source(u, &mono)?.is_some())
}

/// `u: X -> Y` factors through the projective cover of `Y`.
pub fn is_projectively_trivial(u: &Morphism) -> Result<bool> {
    if u.is_zero() {
        return Ok(true);
    }
    let (_, epi) = projective_cover(u.dst())?;
    Ok(factor_through_target(u, &epi)?.is_some())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// modulo injectively trivial maps
    Inj,
    /// modulo projectively trivial maps
    Proj,
}

/// `Hom(A, B)` modulo the trivial morphisms of the given side.
#[derive(Clone, Debug)]
pub struct StableHom {
    pub hom: HomSpace,
    pub side: Side,
    quotient: QuotientSpace,
}

impl StableHom {
    pub fn new(a: &Rep, b: &Rep, side: Side) -> Result<Self> {
        let hom = HomSpace::new(a, b)?;
        let field = a.field();
        let trivial: Vec<Morphism> = if a.is_zero() || b.is_zero() {
            Vec::new()
        } else {
            match side {
                Side::Inj => {
                    let (env, mono) = injective_envelope(a)?;
                    hom_basis(env.rep(), b)?.iter().map(|w| w.compose(&mono)).collect::<Result<_>>()?
                }
                Side::Proj => {
                    let (cov, epi) = projective_cover(b)?;
                    hom_basis(a, cov.rep())?.iter().map(|w| epi.compose(w)).collect::<Result<_>>()?
                }
            }
        };
        let mut span = Matrix::zeros(field, hom.dim(), trivial.len());
        for (k, t) in trivial.iter().enumerate() {
            for (r, v) in hom.coords(t)?.into_iter().enumerate() {
                span.set(r, k, v);
            }
        }
        let quotient = QuotientSpace::new(field, hom.dim(), &span);
        Ok(StableHom { hom, side, quotient })
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Morphisms lifting the canonical quotient basis.
    pub fn basis(&self) -> Vec<Morphism> {
        (0..self.dim())
            .map(|k| {
                let mut c = alloc::vec![0; self.dim()];
                c[k] = 1;
                self.hom.combine(&self.quotient.lift(&c))
            })
            .collect()
    }

    pub fn coords(&self, f: &Morphism) -> Result<Vec<u32>> {
        Ok(self.quotient.coords(&self.hom.coords(f)?))
    }

    pub fn is_trivial(&self, f: &Morphism) -> Result<bool> {
        Ok(self.quotient.contains(&self.hom.coords(f)?))
    }
}

/// `Hom-bar(L, X)`.
pub fn stable_hom_inj(l: &Rep, x: &Rep) -> Result<StableHom> {
    StableHom::new(l, x, Side::Inj)
}

/// `Hom-under(Z, L)`.
pub fn stable_hom_proj(z: &Rep, l: &Rep) -> Result<StableHom> {
    StableHom::new(z, l, Side::Proj)
}

fn apply(phi: &[u32], c: &ExtClass, space: &ExtSpace) -> Result<u32> {
    if phi.len() != space.dim() {
        return Err(Error::Usage("linear form has the wrong length".into()));
    }
    let f = space.z().field();
    Ok(phi.iter().zip(&c.coords).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
}

/// Matrix of the pairing attached to a linear form `phi` on
/// `space = Ext^1(Z, X)`.
///
/// `Side::Inj`: rows a basis of `Hom-bar(L, X)`, columns a basis of
/// `Ext^1(Z, L)`, entries `phi(f η)`.
/// `Side::Proj`: rows a basis of `Ext^1(L, X)`, columns a basis of
/// `Hom-under(Z, L)`, entries `phi(ζ g)`.
pub fn pairing_matrix(phi: &[u32], space: &ExtSpace, l: &Rep, side: Side) -> Result<Matrix> {
    let field = space.z().field();
    match side {
        Side::Inj => {
            let st = stable_hom_inj(l, space.x())?;
            let ext = ExtSpace::new(space.z(), l)?;
            let mut m = Matrix::zeros(field, st.dim(), ext.dim());
            for (r, f) in st.basis().iter().enumerate() {
                for (c, eta) in ext.basis().iter().enumerate() {
                    let pushed = ext.pushout(f, eta, space)?;
                    m.set(r, c, apply(phi, &pushed, space)?);
                }
            }
            Ok(m)
        }
        Side::Proj => {
            let st = stable_hom_proj(space.z(), l)?;
            let ext = ExtSpace::new(l, space.x())?;
            let mut m = Matrix::zeros(field, ext.dim(), st.dim());
            for (r, zeta) in ext.basis().iter().enumerate() {
                for (c, g) in st.basis().iter().enumerate() {
                    let pulled = ext.pullback(zeta, g, space)?;
                    m.set(r, c, apply(phi, &pulled, space)?);
                }
            }
            Ok(m)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::projective::{injective, projective};
    use crate::quiver::Quiver;
    use alloc::sync::Arc;

    fn f() -> Fp {
        Fp::new(32003).unwrap()
    }

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::new("A2", &["1", "2"], &[("a", "1", "2")]).unwrap())
    }

    #[test]
    fn trivial_morphisms() {
        let q = a2();
        let i1 = injective(&q, f(), 0).unwrap();
        let s2 = Rep::simple(q.clone(), f(), 1);
        assert!(is_injectively_trivial(&Morphism::identity(&i1)).unwrap());
        assert!(!is_injectively_trivial(&Morphism::identity(&s2)).unwrap());
        assert!(is_injectively_trivial(&Morphism::zero(&s2, &i1)).unwrap());
        let p2 = projective(&q, f(), 1).unwrap();
        assert!(is_projectively_trivial(&Morphism::identity(&p2)).unwrap());
        let s1 = Rep::simple(q.clone(), f(), 0);
        assert!(!is_projectively_trivial(&Morphism::identity(&s1)).unwrap());
    }

    #[test]
    fn stable_dimensions() {
        let q = a2();
        let s2 = Rep::simple(q.clone(), f(), 1);
        let s1 = Rep::simple(q.clone(), f(), 0);
        let p1 = projective(&q, f(), 0).unwrap();
        assert_eq!(stable_hom_inj(&s2, &s2).unwrap().dim(), 1);
        // P1 = I2 is injective
        assert_eq!(stable_hom_inj(&s2, &p1).unwrap().dim(), 0);
        assert_eq!(stable_hom_proj(&p1, &s1).unwrap().dim(), 0);
        assert_eq!(stable_hom_proj(&s1, &s1).unwrap().dim(), 1);
    }

    #[test]
    fn a2_pairing() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let s2 = Rep::simple(q.clone(), f(), 1);
        let e = ExtSpace::new(&s1, &s2).unwrap();
        let m = pairing_matrix(&[1], &e, &s2, Side::Inj).unwrap();
        assert_eq!(m.shape(), (1, 1));
        assert_ne!(m.get(0, 0), 0);
        let z = pairing_matrix(&[0], &e, &s2, Side::Inj).unwrap();
        assert!(z.is_zero());
        let p1 = projective(&q, f(), 0).unwrap();
        assert_eq!(pairing_matrix(&[1], &e, &p1, Side::Inj).unwrap().rows(), 0);
        let m = pairing_matrix(&[1], &e, &s1, Side::Proj).unwrap();
        assert_eq!(m.shape(), (1, 1));
        assert_ne!(m.get(0, 0), 0);
    }
}
