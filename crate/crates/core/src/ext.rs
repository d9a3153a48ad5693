//! Short exact sequences and `Ext^1(Z, X)` coordinatised through the
//! minimal projective presentation of `Z`.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::{Matrix, QuotientSpace};
use crate::hom::{factor_through_source, factor_through_target, HomSpace};
use crate::projective::{minimal_projective_presentation, ProjectivePresentation};
use crate::rep::{column_morphism, direct_sum, row_morphism_into, Morphism, Rep};

/// `0 -> X -i-> Y -p-> Z -> 0`, exactness checked on construction.
#[derive(Clone, Debug)]
pub struct ShortExact {
    i: Morphism,
    p: Morphism,
}

impl ShortExact {
    pub fn new(i: Morphism, p: Morphism) -> Result<Self> {
        if i.dst() != p.src() {
            return Err(Error::Usage("middle terms of the sequence differ".into()));
        }
        if !i.is_mono() {
            return Err(Error::NotExact("left map is not injective".into()));
        }
        if !p.is_epi() {
            return Err(Error::NotExact("right map is not surjective".into()));
        }
        if !p.compose(&i)?.is_zero() {
            return Err(Error::NotExact("composite is nonzero".into()));
        }
        let y = i.dst();
        for v in 0..y.dims().len() {
            if i.src().dim(v) + p.dst().dim(v) != y.dim(v) {
                return Err(Error::NotExact(format!("dimensions do not add up at vertex {}", y.quiver().vertices()[v])));
            }
        }
        Ok(ShortExact { i, p })
    }

    pub fn i(&self) -> &Morphism {
        &self.i
    }
    pub fn p(&self) -> &Morphism {
        &self.p
    }
    pub fn left(&self) -> &Rep {
        self.i.src()
    }
    pub fn middle(&self) -> &Rep {
        self.i.dst()
    }
    pub fn right(&self) -> &Rep {
        self.p.dst()
    }

    /// A retraction `r` of `i` (`r ∘ i = id`), if the sequence splits.
    pub fn retraction(&self) -> Result<Option<Morphism>> {
        factor_through_source(&Morphism::identity(self.left()), &self.i)
    }

    pub fn is_split(&self) -> Result<bool> {
        Ok(self.retraction()?.is_some())
    }

    /// `0 -> X -> X ⊕ Z -> Z -> 0`.
    pub fn split(x: &Rep, z: &Rep) -> Result<Self> {
        let s = direct_sum(x.quiver(), x.field(), &[x.clone(), z.clone()])?;
        ShortExact::new(s.injections[0].clone(), s.projections[1].clone())
    }

    /// Direct sum of two sequences.
    pub fn sum(&self, other: &ShortExact) -> Result<ShortExact> {
        let q = self.left().quiver();
        let f = self.left().field();
        let xs = direct_sum(q, f, &[self.left().clone(), other.left().clone()])?;
        let ys = direct_sum(q, f, &[self.middle().clone(), other.middle().clone()])?;
        let zs = direct_sum(q, f, &[self.right().clone(), other.right().clone()])?;
        let i = sum_map(&xs, &ys, &[&self.i, &other.i])?;
        let p = sum_map(&ys, &zs, &[&self.p, &other.p])?;
        ShortExact::new(i, p)
    }
}

/// `f_1 ⊕ f_2 ⊕ ...` between two direct sums.
fn sum_map(src: &crate::rep::DirectSum, dst: &crate::rep::DirectSum, maps: &[&Morphism]) -> Result<Morphism> {
    let mut acc = Morphism::zero(&src.sum, &dst.sum);
    for (k, f) in maps.iter().enumerate() {
        acc = acc.add(&dst.injections[k].compose(f)?.compose(&src.projections[k])?)?;
    }
    Ok(acc)
}

/// A class in a given `Ext^1(Z, X)`, by coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtClass {
    pub coords: Vec<u32>,
}

impl ExtClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// `Ext^1(Z, X) = coker(Hom(P0, X) -> Hom(P1, X))`.
#[derive(Clone, Debug)]
pub struct ExtSpace {
    z: Rep,
    x: Rep,
    pres: Option<ProjectivePresentation>,
    /// `Hom(P1, X)`
    h1: Option<HomSpace>,
    quotient: QuotientSpace,
}

impl ExtSpace {
    pub fn new(z: &Rep, x: &Rep) -> Result<Self> {
        z.check_same(x)?;
        z.quiver().require_acyclic()?;
        let field = z.field();
        if z.is_zero() {
            let quotient = QuotientSpace::new(field, 0, &Matrix::zeros(field, 0, 0));
            return Ok(ExtSpace { z: z.clone(), x: x.clone(), pres: None, h1: None, quotient });
        }
        let pres = minimal_projective_presentation(z)?;
        let h1 = HomSpace::new(pres.p1.rep(), x)?;
        let h0 = HomSpace::new(pres.p0.rep(), x)?;
        let mut image = Matrix::zeros(field, h1.dim(), h0.dim());
        for (k, u) in h0.basis().iter().enumerate() {
            let c = h1.coords(&u.compose(&pres.f)?)?;
            for (r, v) in c.into_iter().enumerate() {
                image.set(r, k, v);
            }
        }
        let quotient = QuotientSpace::new(field, h1.dim(), &image);
        Ok(ExtSpace { z: z.clone(), x: x.clone(), pres: Some(pres), h1: Some(h1), quotient })
    }

    pub fn z(&self) -> &Rep {
        &self.z
    }
    pub fn x(&self) -> &Rep {
        &self.x
    }
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
    pub fn presentation(&self) -> Option<&ProjectivePresentation> {
        self.pres.as_ref()
    }

    pub fn zero(&self) -> ExtClass {
        ExtClass { coords: alloc::vec![0; self.dim()] }
    }

    pub fn basis(&self) -> Vec<ExtClass> {
        (0..self.dim())
            .map(|k| {
                let mut c = alloc::vec![0; self.dim()];
                c[k] = 1;
                ExtClass { coords: c }
            })
            .collect()
    }

    fn check(&self, c: &ExtClass) -> Result<()> {
        if c.coords.len() != self.dim() {
            return Err(Error::Usage("class from a different Ext space".into()));
        }
        Ok(())
    }

    /// The class of a cocycle `h: P1 -> X`.
    pub fn class_of(&self, h: &Morphism) -> Result<ExtClass> {
        match &self.h1 {
            None => Ok(self.zero()),
            Some(h1) => Ok(ExtClass { coords: self.quotient.coords(&h1.coords(h)?) }),
        }
    }

    /// The canonical cocycle `P1 -> X` representing `c`.
    pub fn cocycle(&self, c: &ExtClass) -> Result<Morphism> {
        self.check(c)?;
        let h1 = self.h1.as_ref().ok_or_else(|| Error::Usage("Ext space of the zero object".into()))?;
        Ok(h1.combine(&self.quotient.lift(&c.coords)))
    }

    pub fn baer_sum(&self, a: &ExtClass, b: &ExtClass) -> Result<ExtClass> {
        self.check(a)?;
        self.check(b)?;
        let f = self.z.field();
        Ok(ExtClass { coords: a.coords.iter().zip(&b.coords).map(|(&u, &v)| f.add(u, v)).collect() })
    }

    pub fn scale(&self, c: &ExtClass, s: u32) -> Result<ExtClass> {
        self.check(c)?;
        let f = self.z.field();
        Ok(ExtClass { coords: c.coords.iter().map(|&u| f.mul(u, s)).collect() })
    }

    /// Class of `0 -> X -> Y -> Z -> 0`: lift the cover `P0 -> Z` to `Y` and
    /// restrict to `P1`.
    pub fn ses_to_class(&self, s: &ShortExact) -> Result<ExtClass> {
        if s.left().dims() != self.x.dims() || s.right().dims() != self.z.dims() {
            return Err(Error::Usage("sequence ends do not match the Ext space".into()));
        }
        let pres = match &self.pres {
            None => return Ok(self.zero()),
            Some(p) => p,
        };
        // transport the presentation epi onto the sequence's copy of Z
        let epi = Morphism::new(pres.p0.rep().clone(), s.right().clone(), pres.epi.comps().to_vec())?;
        let w0 = factor_through_target(&epi, s.p())?
            .ok_or_else(|| Error::Internal("projective cover does not lift".into()))?;
        let w0f = w0.compose(&pres.f)?;
        let h = factor_through_target(&w0f, s.i())?
            .ok_or_else(|| Error::Internal("lifted cocycle misses the kernel".into()))?;
        let h = Morphism::new(pres.p1.rep().clone(), self.x.clone(), h.comps().to_vec())?;
        self.class_of(&h)
    }

    /// Pushout of the presentation sequence along the canonical cocycle.
    pub fn class_to_ses(&self, c: &ExtClass) -> Result<ShortExact> {
        self.check(c)?;
        let pres = match &self.pres {
            None => return ShortExact::split(&self.x, &self.z),
            Some(p) => p,
        };
        let h = self.cocycle(c)?;
        let q = self.z.quiver();
        let field = self.z.field();
        let s = direct_sum(q, field, &[pres.p0.rep().clone(), self.x.clone()])?;
        let fh = column_morphism(pres.p1.rep(), &s, &[pres.f.clone(), h.scale(field.p() - 1)])?;
        let (y, proj) = fh.cokernel()?;
        let i = proj.compose(&s.injections[1])?;
        // p is induced by (epi, 0) on P0 ⊕ X
        let e = row_morphism_into(&s, &[pres.epi.clone(), Morphism::zero(&self.x, &self.z)], &self.z)?;
        let section = proj_section(&proj)?;
        let p = Morphism::new(y, self.z.clone(), e.compose(&section)?.comps().to_vec())?;
        ShortExact::new(i, p)
    }

    /// Matrix of `c -> u c` from this space to `target = Ext^1(Z, M)`.
    pub fn pushout_matrix(&self, u: &Morphism, target: &ExtSpace) -> Result<Matrix> {
        if u.src().dims() != self.x.dims() || u.dst().dims() != target.x.dims() || target.z != self.z {
            return Err(Error::Usage("pushout endpoints do not match".into()));
        }
        let field = self.z.field();
        let mut m = Matrix::zeros(field, target.dim(), self.dim());
        for (k, b) in self.basis().iter().enumerate() {
            let img = target.class_of(&u.compose(&self.cocycle(b)?)?)?;
            for (r, v) in img.coords.into_iter().enumerate() {
                m.set(r, k, v);
            }
        }
        Ok(m)
    }

    /// `u c` for `u: X -> M`, landing in `target = Ext^1(Z, M)`.
    pub fn pushout(&self, u: &Morphism, c: &ExtClass, target: &ExtSpace) -> Result<ExtClass> {
        self.check(c)?;
        if u.src().dims() != self.x.dims() || u.dst().dims() != target.x.dims() || target.z != self.z {
            return Err(Error::Usage("pushout endpoints do not match".into()));
        }
        if self.dim() == 0 {
            return Ok(target.zero());
        }
        target.class_of(&u.compose(&self.cocycle(c)?)?)
    }

    /// Chain map between presentations over `v: N -> Z`, where `target`
    /// is `Ext^1(N, X)`: returns `v1: P1(N) -> P1(Z)`.
    fn lift_to_presentations(&self, v: &Morphism, target: &ExtSpace) -> Result<Option<Morphism>> {
        let (pz, pn) = match (&self.pres, &target.pres) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(None),
        };
        let ve = v.compose(&pn.epi)?;
        let ve = Morphism::new(pn.p0.rep().clone(), pz.epi.dst().clone(), ve.comps().to_vec())?;
        let v0 = factor_through_target(&ve, &pz.epi)?
            .ok_or_else(|| Error::Internal("map does not lift to projective covers".into()))?;
        let v0f = v0.compose(&pn.f)?;
        let v1 = factor_through_target(&v0f, &pz.f)?
            .ok_or_else(|| Error::Internal("lift misses the syzygy".into()))?;
        Ok(Some(v1))
    }

    /// `c v` for `v: N -> Z`, landing in `target = Ext^1(N, X)`.
    pub fn pullback(&self, c: &ExtClass, v: &Morphism, target: &ExtSpace) -> Result<ExtClass> {
        self.check(c)?;
        if v.dst().dims() != self.z.dims() || v.src().dims() != target.z.dims() || target.x != self.x {
            return Err(Error::Usage("pullback endpoints do not match".into()));
        }
        match self.lift_to_presentations(v, target)? {
            None => Ok(target.zero()),
            Some(v1) => target.class_of(&self.cocycle(c)?.compose(&v1)?),
        }
    }

    /// Matrix of `c -> c v` from this space to `target = Ext^1(N, X)`.
    pub fn pullback_matrix(&self, v: &Morphism, target: &ExtSpace) -> Result<Matrix> {
        if v.dst().dims() != self.z.dims() || v.src().dims() != target.z.dims() || target.x != self.x {
            return Err(Error::Usage("pullback endpoints do not match".into()));
        }
        let field = self.z.field();
        let mut m = Matrix::zeros(field, target.dim(), self.dim());
        if let Some(v1) = self.lift_to_presentations(v, target)? {
            for (k, b) in self.basis().iter().enumerate() {
                let img = target.class_of(&self.cocycle(b)?.compose(&v1)?)?;
                for (r, val) in img.coords.into_iter().enumerate() {
                    m.set(r, k, val);
                }
            }
        }
        Ok(m)
    }
}

/// A right inverse of a vertexwise surjective morphism, as vertex maps
/// (not necessarily a morphism of representations).
fn proj_section(proj: &Morphism) -> Result<Morphism> {
    let comps = proj
        .comps()
        .iter()
        .map(|c| c.right_inverse().ok_or_else(|| Error::Internal("projection not surjective".into())))
        .collect::<Result<Vec<_>>>()?;
    Morphism::unchecked(proj.dst().clone(), proj.src().clone(), comps)
}

/// The ladder produced by a pushout or pullback: the new sequence and the
/// middle comparison map.
#[derive(Clone, Debug)]
pub struct Ladder {
    pub seq: ShortExact,
    pub middle: Morphism,
}

/// Pushout of `s: 0 -> X -> Y -> Z -> 0` along `u: X -> M`:
/// `Y' = (Y ⊕ M) / {(i x, -u x)}`; `middle: Y -> Y'`.
pub fn pushout_diagram(u: &Morphism, s: &ShortExact) -> Result<Ladder> {
    if u.src() != s.left() {
        return Err(Error::Usage("pushout map must start at the left end".into()));
    }
    let m = u.dst();
    let q = m.quiver();
    let field = m.field();
    let sum = direct_sum(q, field, &[s.middle().clone(), m.clone()])?;
    let iu = column_morphism(s.left(), &sum, &[s.i().clone(), u.scale(field.p() - 1)])?;
    let (y2, proj) = iu.cokernel()?;
    let middle = proj.compose(&sum.injections[0])?;
    let i2 = proj.compose(&sum.injections[1])?;
    let e = row_morphism_into(&sum, &[s.p().clone(), Morphism::zero(m, s.right())], s.right())?;
    let p2 = Morphism::new(y2, s.right().clone(), e.compose(&proj_section(&proj)?)?.comps().to_vec())?;
    Ok(Ladder { seq: ShortExact::new(i2, p2)?, middle })
}

/// Pullback of `s` along `v: N -> Z`: `Y' = ker(Y ⊕ N -> Z, (y, n) -> p y - v n)`;
/// `middle: Y' -> Y`.
pub fn pullback_diagram(s: &ShortExact, v: &Morphism) -> Result<Ladder> {
    if v.dst() != s.right() {
        return Err(Error::Usage("pullback map must end at the right end".into()));
    }
    let n = v.src();
    let q = n.quiver();
    let field = n.field();
    let sum = direct_sum(q, field, &[s.middle().clone(), n.clone()])?;
    let d = row_morphism_into(&sum, &[s.p().clone(), v.scale(field.p() - 1)], s.right())?;
    let (_, incl) = d.kernel()?;
    let middle = sum.projections[0].compose(&incl)?;
    let p2 = sum.projections[1].compose(&incl)?;
    // i2: X -> Y' is (i, 0) factored through the kernel
    let i0 = column_morphism(s.left(), &sum, &[s.i().clone(), Morphism::zero(s.left(), n)])?;
    let i2 = factor_through_target(&i0, &incl)?.ok_or_else(|| Error::Internal("pullback kernel".into()))?;
    Ok(Ladder { seq: ShortExact::new(i2, p2)?, middle })
}

/// Diagrammatic Baer sum: pull back the direct sum along the diagonal and
/// push out along the codiagonal.
pub fn baer_sum_diagram(a: &ShortExact, b: &ShortExact) -> Result<ShortExact> {
    if a.left() != b.left() || a.right() != b.right() {
        return Err(Error::Usage("Baer sum needs sequences with common ends".into()));
    }
    let x = a.left();
    let z = a.right();
    let sum = a.sum(b)?;
    let zs = direct_sum(z.quiver(), z.field(), &[z.clone(), z.clone()])?;
    let diag = column_morphism(z, &zs, &[Morphism::identity(z), Morphism::identity(z)])?;
    let diag = Morphism::new(z.clone(), sum.right().clone(), diag.comps().to_vec())?;
    let pulled = pullback_diagram(&sum, &diag)?.seq;
    let xs = direct_sum(x.quiver(), x.field(), &[x.clone(), x.clone()])?;
    let codiag = row_morphism_into(&xs, &[Morphism::identity(x), Morphism::identity(x)], x)?;
    let codiag = Morphism::new(pulled.left().clone(), x.clone(), codiag.comps().to_vec())?;
    Ok(pushout_diagram(&codiag, &pulled)?.seq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::projective::projective;
    use crate::quiver::Quiver;
    use alloc::sync::Arc;

    fn f() -> Fp {
        Fp::new(32003).unwrap()
    }

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::new("A2", &["1", "2"], &[("a", "1", "2")]).unwrap())
    }

    #[test]
    fn a2_ext_dimensions() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let s2 = Rep::simple(q.clone(), f(), 1);
        let p1 = projective(&q, f(), 0).unwrap();
        assert_eq!(ExtSpace::new(&s1, &s2).unwrap().dim(), 1);
        assert_eq!(ExtSpace::new(&s2, &s1).unwrap().dim(), 0);
        assert_eq!(ExtSpace::new(&p1, &s2).unwrap().dim(), 0);
        assert_eq!(ExtSpace::new(&s1, &s1).unwrap().dim(), 0);
    }

    #[test]
    fn nonsplit_sequence_has_nonzero_class() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let s2 = Rep::simple(q.clone(), f(), 1);
        let p1 = projective(&q, f(), 0).unwrap();
        let i = crate::hom::hom_basis(&s2, &p1).unwrap().remove(0);
        let p = crate::hom::hom_basis(&p1, &s1).unwrap().remove(0);
        let s = ShortExact::new(i, p).unwrap();
        assert!(!s.is_split().unwrap());
        let e = ExtSpace::new(&s1, &s2).unwrap();
        let c = e.ses_to_class(&s).unwrap();
        assert!(!c.is_zero());
        let back = e.class_to_ses(&c).unwrap();
        assert_eq!(e.ses_to_class(&back).unwrap(), c);
        assert_eq!(back.middle().dims(), &[1, 1]);
        let split = ShortExact::split(&s2, &s1).unwrap();
        assert!(e.ses_to_class(&split).unwrap().is_zero());
        assert!(e.class_to_ses(&e.zero()).unwrap().is_split().unwrap());
    }

    #[test]
    fn vector_space_rules() {
        let q = a2();
        let p7 = Fp::new(7).unwrap();
        let s1 = Rep::simple(q.clone(), p7, 0);
        let s2 = Rep::simple(q.clone(), p7, 1);
        let e = ExtSpace::new(&s1, &s2).unwrap();
        let c = e.basis().remove(0);
        assert_eq!(e.baer_sum(&c, &e.zero()).unwrap(), c);
        let neg = e.scale(&c, 6).unwrap();
        assert!(e.baer_sum(&c, &neg).unwrap().is_zero());
        let three = e.scale(&c, 3).unwrap();
        let four = e.scale(&c, 4).unwrap();
        assert!(e.baer_sum(&three, &four).unwrap().is_zero());
        assert!(e.baer_sum(&c, &ExtClass { coords: alloc::vec![] }).is_err());
    }

    #[test]
    fn pushout_identity_and_zero() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let s2 = Rep::simple(q.clone(), f(), 1);
        let e = ExtSpace::new(&s1, &s2).unwrap();
        let c = e.basis().remove(0);
        assert_eq!(e.pushout(&Morphism::identity(&s2), &c, &e).unwrap(), c);
        assert!(e.pushout(&Morphism::zero(&s2, &s2), &c, &e).unwrap().is_zero());
        assert_eq!(e.pullback(&c, &Morphism::identity(&s1), &e).unwrap(), c);
    }

    #[test]
    fn diagrams_match_coordinates() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let s2 = Rep::simple(q.clone(), f(), 1);
        let e = ExtSpace::new(&s1, &s2).unwrap();
        let c = e.basis().remove(0);
        let s = e.class_to_ses(&c).unwrap();
        let two = Morphism::identity(&s2).scale(2);
        let pushed = pushout_diagram(&two, &s).unwrap().seq;
        assert_eq!(e.ses_to_class(&pushed).unwrap(), e.scale(&c, 2).unwrap());
        let three = Morphism::identity(&s1).scale(3);
        let pulled = pullback_diagram(&s, &three).unwrap().seq;
        assert_eq!(e.ses_to_class(&pulled).unwrap(), e.scale(&c, 3).unwrap());
        let b = baer_sum_diagram(&s, &s).unwrap();
        assert_eq!(e.ses_to_class(&b).unwrap(), e.scale(&c, 2).unwrap());
    }

    #[test]
    fn exactness_is_checked() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let p1 = projective(&q, f(), 0).unwrap();
        let p = crate::hom::hom_basis(&p1, &s1).unwrap().remove(0);
        let zero_in = Morphism::zero(&Rep::zero(q.clone(), f()), &p1);
        assert!(matches!(ShortExact::new(zero_in, p), Err(Error::NotExact(_))));
    }
}
