//! Torsion pairs given by generators, canonical sequences and the transfer
//! of almost split sequences to either side.

use alloc::format;
use alloc::vec::Vec;

use crate::ar::{verify_ass, Certificate};
use crate::decompose::is_certified_indecomposable;
use crate::error::{Error, Result};
use crate::ext::ShortExact;
use crate::field::Matrix;
use crate::hom::{factor_through_source, factor_through_target, hom_basis};
use crate::rep::{Morphism, Rep};
use crate::subcat::{is_ext_injective_in, is_ext_projective_in, membership, SubcatSpec};

#[derive(Clone, Debug)]
pub struct TorsionPair {
    pub torsion: SubcatSpec,
    pub free: SubcatSpec,
}

impl TorsionPair {
    /// Checks that every generator is certified indecomposable and that
    /// `Hom(T, F) = 0` on generators.
    pub fn new(torsion: Vec<Rep>, free: Vec<Rep>) -> Result<Self> {
        for g in torsion.iter().chain(&free) {
            if !is_certified_indecomposable(g)? {
                return Err(Error::Precondition(format!("{} is not certified indecomposable", g.describe())));
            }
        }
        for t in &torsion {
            for f in &free {
                t.check_same(f)?;
                if !hom_basis(t, f)?.is_empty() {
                    return Err(Error::Precondition(format!(
                        "Hom({}, {}) is nonzero",
                        t.describe(),
                        f.describe()
                    )));
                }
            }
        }
        Ok(TorsionPair { torsion: SubcatSpec::trusted(torsion), free: SubcatSpec::trusted(free) })
    }
}

/// Sum of the images of all maps from the generators into `x`, as column
/// bases per vertex.
fn trace_bases(x: &Rep, gens: &[Rep]) -> Result<Vec<Matrix>> {
    let field = x.field();
    let n = x.quiver().num_vertices();
    let mut bases: Vec<Matrix> = (0..n).map(|v| Matrix::zeros(field, x.dim(v), 0)).collect();
    for g in gens {
        for f in hom_basis(g, x)? {
            for (v, b) in bases.iter_mut().enumerate() {
                *b = b.hstack(f.comp(v));
            }
        }
    }
    Ok(bases.iter().map(|b| b.column_space()).collect())
}

/// Largest subobject of `x` built from the generators: the trace, iterated
/// on quotients until it stops growing. Returns the inclusion.
pub fn torsion_part(x: &Rep, gens: &[Rep]) -> Result<Morphism> {
    let n = x.quiver().num_vertices();
    let mut bases: Vec<Matrix> = (0..n).map(|v| Matrix::zeros(x.field(), x.dim(v), 0)).collect();
    loop {
        let (quot, proj) = x.quotient(&bases)?;
        let extra = trace_bases(&quot, gens)?;
        if extra.iter().all(|b| b.cols() == 0) {
            break;
        }
        for v in 0..n {
            // preimage of the new trace under the projection
            let section = proj
                .comp(v)
                .right_inverse()
                .ok_or_else(|| Error::Internal("quotient projection not surjective".into()))?;
            let lifted = section.mul(&extra[v]);
            bases[v] = bases[v].hstack(&lifted).column_space();
        }
    }
    Ok(x.subrep(bases)?.1)
}

/// `0 -> t(x) -> x -> f(x) -> 0`.
#[derive(Clone, Debug)]
pub struct Canonical {
    pub seq: ShortExact,
}

impl Canonical {
    pub fn torsion_part(&self) -> &Rep {
        self.seq.left()
    }
    pub fn free_part(&self) -> &Rep {
        self.seq.right()
    }
}

pub fn torsion_canonical_seq(x: &Rep, t: &TorsionPair, seed: u64) -> Result<Canonical> {
    let incl = torsion_part(x, &t.torsion.gens)?;
    let (_, proj) = incl.cokernel()?;
    let seq = ShortExact::new(incl, proj)?;
    if membership(seq.left(), &t.torsion, seed)?.member != Some(true) {
        return Err(Error::Precondition(format!(
            "not a torsion pair on this object: trace {} is not torsion",
            seq.left().describe()
        )));
    }
    if membership(seq.right(), &t.free, seed)?.member != Some(true) {
        return Err(Error::Precondition(format!(
            "not a torsion pair on this object: quotient {} is not torsion-free",
            seq.right().describe()
        )));
    }
    Ok(Canonical { seq })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorsionSide {
    Torsion,
    Free,
}

#[derive(Clone, Debug)]
pub struct Transferred {
    pub seq: ShortExact,
    pub certificate: Certificate,
}

/// Restricts an ambient almost split sequence to the torsion class (via the
/// traces of its left and middle terms) or to the torsion-free class (via
/// the quotients of its middle and right terms).
pub fn torsion_transfer_ass(s: &ShortExact, t: &TorsionPair, side: TorsionSide, seed: u64) -> Result<Transferred> {
    match side {
        TorsionSide::Torsion => {
            let z = s.right();
            if membership(z, &t.torsion, seed)?.member != Some(true) {
                return Err(Error::Precondition(format!("{} is not in the torsion class", z.describe())));
            }
            if is_ext_projective_in(z, &t.torsion, seed)? {
                return Err(Error::Precondition(format!("{} is Ext-projective in the torsion class", z.describe())));
            }
            let incl_x = torsion_part(s.left(), &t.torsion.gens)?;
            let incl_y = torsion_part(s.middle(), &t.torsion.gens)?;
            let i = factor_through_target(&s.i().compose(&incl_x)?, &incl_y)?
                .ok_or_else(|| Error::Internal("trace is not functorial".into()))?;
            let p = s.p().compose(&incl_y)?;
            let seq = ShortExact::new(i, p)?;
            let certificate = verify_ass(&seq, &t.torsion.gens)?;
            Ok(Transferred { seq, certificate })
        }
        TorsionSide::Free => {
            let x = s.left();
            if membership(x, &t.free, seed)?.member != Some(true) {
                return Err(Error::Precondition(format!("{} is not in the torsion-free class", x.describe())));
            }
            if is_ext_injective_in(x, &t.free, seed)? {
                return Err(Error::Precondition(format!("{} is Ext-injective in the torsion-free class", x.describe())));
            }
            let (_, proj_y) = torsion_part(s.middle(), &t.torsion.gens)?.cokernel()?;
            let (_, proj_z) = torsion_part(s.right(), &t.torsion.gens)?.cokernel()?;
            let i = proj_y.compose(s.i())?;
            let p = factor_through_source(&proj_z.compose(s.p())?, &proj_y)?
                .ok_or_else(|| Error::Internal("torsion-free quotient is not functorial".into()))?;
            let seq = ShortExact::new(i, p)?;
            let certificate = verify_ass(&seq, &t.free.gens)?;
            Ok(Transferred { seq, certificate })
        }
    }
}

/// Index sets `(T, F)` of all torsion pairs on a complete list of
/// indecomposables, ordered by the bitmask of `T`. A subset `T` qualifies
/// when `T = ⊥(T^⊥)` computed from `Hom` dimensions.
pub fn enumerate_torsion_pairs(indecs: &[Rep]) -> Result<Vec<(Vec<usize>, Vec<usize>)>> {
    let n = indecs.len();
    if n > 20 {
        return Err(Error::Usage("too many indecomposables to enumerate subsets".into()));
    }
    let mut nonzero = alloc::vec![alloc::vec![false; n]; n];
    for (a, ra) in indecs.iter().enumerate() {
        for (b, rb) in indecs.iter().enumerate() {
            nonzero[a][b] = !hom_basis(ra, rb)?.is_empty();
        }
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let t: Vec<usize> = (0..n).filter(|&k| mask >> k & 1 == 1).collect();
        let f: Vec<usize> = (0..n).filter(|&b| t.iter().all(|&a| !nonzero[a][b])).collect();
        let back: Vec<usize> = (0..n).filter(|&a| f.iter().all(|&b| !nonzero[a][b])).collect();
        if back == t {
            out.push((t, f));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::{almost_split_sequence, ar_quiver, DEFAULT_AR_CAP};
    use crate::field::Fp;
    use crate::projective::projective;
    use crate::quiver::Quiver;
    use alloc::sync::Arc;
    use alloc::vec;

    fn f() -> Fp {
        Fp::new(32003).unwrap()
    }

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::new("A2", &["1", "2"], &[("a", "1", "2")]).unwrap())
    }

    #[test]
    fn a2_canonical_sequences() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let s2 = Rep::simple(q.clone(), f(), 1);
        let p1 = projective(&q, f(), 0).unwrap();
        let t = TorsionPair::new(vec![s1.clone()], vec![s2.clone(), p1.clone()]).unwrap();
        let c = torsion_canonical_seq(&p1, &t, 0).unwrap();
        assert!(c.torsion_part().is_zero());
        assert_eq!(c.free_part().dims(), &[1, 1]);
        let c = torsion_canonical_seq(&s1, &t, 0).unwrap();
        assert_eq!(c.torsion_part().dims(), &[1, 0]);
        assert!(c.free_part().is_zero());
        assert!(TorsionPair::new(vec![s2.clone()], vec![p1.clone()]).is_err());
    }

    #[test]
    fn torsion_part_iterates() {
        // T = {S2, P1}: trace of P1 in P1 is everything
        let q = a2();
        let s2 = Rep::simple(q.clone(), f(), 1);
        let p1 = projective(&q, f(), 0).unwrap();
        let t = TorsionPair::new(vec![s2.clone(), p1.clone()], vec![]).unwrap();
        let sum = crate::rep::direct_sum(&q, f(), &[p1.clone(), s2]).unwrap().sum;
        let c = torsion_canonical_seq(&sum, &t, 0).unwrap();
        assert_eq!(c.torsion_part().dims(), &[1, 2]);
    }

    #[test]
    fn catalan_counts() {
        let q = a2();
        let arq = ar_quiver(&q, f(), 0, DEFAULT_AR_CAP).unwrap();
        assert_eq!(enumerate_torsion_pairs(&arq.indecomposables()).unwrap().len(), 5);
        let q3 = Arc::new(Quiver::new("A3", &["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap());
        let arq = ar_quiver(&q3, f(), 0, DEFAULT_AR_CAP).unwrap();
        assert_eq!(enumerate_torsion_pairs(&arq.indecomposables()).unwrap().len(), 14);
    }

    #[test]
    fn transfer_with_everything_is_identity() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let s2 = Rep::simple(q.clone(), f(), 1);
        let p1 = projective(&q, f(), 0).unwrap();
        let ass = almost_split_sequence(&s1).unwrap();
        let t = TorsionPair::new(vec![s1.clone(), s2.clone(), p1.clone()], vec![]).unwrap();
        let out = torsion_transfer_ass(&ass.seq, &t, TorsionSide::Torsion, 0).unwrap();
        assert!(out.certificate.is_valid());
        assert_eq!(out.seq.middle().dims(), ass.seq.middle().dims());
        let t = TorsionPair::new(vec![s2], vec![s1]).unwrap();
        assert!(matches!(
            torsion_transfer_ass(&ass.seq, &t, TorsionSide::Torsion, 0),
            Err(Error::Precondition(_))
        ));
    }
}
