//! Krull-Schmidt decomposition by splitting along idempotents of the
//! endomorphism algebra, and isomorphism tests built on it.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::endo::end_algebra;
use crate::error::{Error, Result};
use crate::field::Matrix;
use crate::hom::{hom_basis, HomSpace};
use crate::poly::{factor, min_poly};
use crate::projective::projective;
use crate::rep::{direct_sum, row_morphism_into, Morphism, Rep};

/// Candidates tried per part before giving up on splitting it.
pub const DEFAULT_BUDGET: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    CertifiedIndec,
    Undetermined,
}

#[derive(Clone, Debug)]
pub struct Part {
    pub rep: Rep,
    pub multiplicity: usize,
    pub verdict: Verdict,
    pub end_dim: usize,
    /// `dim Hom(rep, P_x)` for every vertex `x`
    pub fingerprint: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub parts: Vec<Part>,
    /// Isomorphism from the direct sum of the parts, each repeated by its
    /// multiplicity in order, onto the input.
    pub iso: Morphism,
}

impl DecompositionReport {
    pub fn is_certified(&self) -> bool {
        self.parts.iter().all(|p| p.verdict == Verdict::CertifiedIndec)
    }

    /// Parts expanded by multiplicity, in the order used by `iso`.
    pub fn summands(&self) -> Vec<Rep> {
        self.parts.iter().flat_map(|p| core::iter::repeat_n(p.rep.clone(), p.multiplicity)).collect()
    }

    pub fn num_summands(&self) -> usize {
        self.parts.iter().map(|p| p.multiplicity).sum()
    }
}

/// A summand found so far, with its inclusion into the input.
struct Piece {
    rep: Rep,
    incl: Morphism,
    verdict: Verdict,
    end_dim: usize,
}

/// `true` when `End(m)` is local with residue field `F_p`.
pub fn is_certified_indecomposable(m: &Rep) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(end_algebra(m)?.semisimple_dim() == 1)
}

/// Splits `m` along the primary components of `f` when its minimal
/// polynomial has at least two distinct irreducible factors.
fn split_along(m: &Rep, f: &Morphism, seed: u64) -> Result<Option<Vec<(Rep, Morphism)>>> {
    let field = m.field();
    let blocks: Vec<Matrix> = f.comps().to_vec();
    let big = Matrix::block_diag(field, &blocks);
    let mp = min_poly(&big)?;
    let factors = factor(&mp, seed)?;
    if factors.len() < 2 {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(factors.len());
    for (g, e) in factors {
        let ge = g.pow(e as u64);
        let bases = f.comps().iter().map(|c| ge.eval_matrix(c).kernel_basis()).collect();
        out.push(m.subrep(bases)?);
    }
    Ok(Some(out))
}

fn random_coeffs(rng: &mut ChaCha8Rng, p: u32, n: usize) -> Vec<u32> {
    (0..n).map(|_| rng.next_u32() % p).collect()
}

/// Deterministic candidate schedule: basis elements, pairwise sums, pairwise
/// products, then seeded random combinations.
fn candidates(end: &HomSpace, budget: usize, seed: u64) -> Result<Vec<Morphism>> {
    let b = end.basis();
    let mut out: Vec<Morphism> = Vec::new();
    out.extend(b.iter().take(budget).cloned());
    'sums: for i in 0..b.len() {
        for j in i + 1..b.len() {
            if out.len() >= budget {
                break 'sums;
            }
            out.push(b[i].add(&b[j])?);
        }
    }
    'prods: for i in 0..b.len() {
        for j in 0..b.len() {
            if out.len() >= budget {
                break 'prods;
            }
            out.push(b[i].compose(&b[j])?);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = end.src().field().p();
    while out.len() < budget {
        out.push(end.combine(&random_coeffs(&mut rng, p, b.len())));
    }
    Ok(out)
}

fn split_recursive(rep: Rep, incl: Morphism, budget: usize, seed: u64, out: &mut Vec<Piece>) -> Result<()> {
    if rep.is_zero() {
        return Ok(());
    }
    let end = end_algebra(&rep)?;
    if end.semisimple_dim() == 1 {
        out.push(Piece { rep, incl, verdict: Verdict::CertifiedIndec, end_dim: end.dim() });
        return Ok(());
    }
    // Lazily build candidates: basis elements usually split at once.
    let basis_first: Vec<Morphism> = end.hom.basis().to_vec();
    let mut tried = 0;
    for f in basis_first.iter() {
        tried += 1;
        if let Some(parts) = split_along(&rep, f, seed)? {
            return recurse(parts, &incl, budget, seed, out);
        }
    }
    for f in candidates(&end.hom, budget, seed)?.into_iter().skip(tried) {
        if let Some(parts) = split_along(&rep, &f, seed)? {
            return recurse(parts, &incl, budget, seed, out);
        }
    }
    out.push(Piece { rep, incl, verdict: Verdict::Undetermined, end_dim: end.dim() });
    Ok(())
}

fn recurse(parts: Vec<(Rep, Morphism)>, incl: &Morphism, budget: usize, seed: u64, out: &mut Vec<Piece>) -> Result<()> {
    for (sub, k) in parts {
        split_recursive(sub, incl.compose(&k)?, budget, seed, out)?;
    }
    Ok(())
}

/// An isomorphism `a -> b` if one is detected among basis morphisms. For
/// `a` with local endomorphism ring the answer is exact: `a ≅ b` iff some
/// `g ∘ f` with `f: a -> b`, `g: b -> a` basis morphisms is invertible.
pub fn find_iso(a: &Rep, b: &Rep) -> Result<Option<Morphism>> {
    if a.dims() != b.dims() {
        return Ok(None);
    }
    if a.is_zero() {
        return Ok(Some(Morphism::zero(a, b)));
    }
    let fs = hom_basis(a, b)?;
    let gs = hom_basis(b, a)?;
    for f in &fs {
        if f.is_iso() {
            return Ok(Some(f.clone()));
        }
    }
    for f in &fs {
        for g in &gs {
            if g.compose(f)?.is_iso() {
                return Ok(Some(f.clone()));
            }
        }
    }
    Ok(None)
}

fn fingerprint(m: &Rep) -> Result<Vec<usize>> {
    let q = m.quiver();
    (0..q.num_vertices())
        .map(|x| Ok(hom_basis(m, &projective(q, m.field(), x)?)?.len()))
        .collect()
}

fn part_cmp(a: &Part, b: &Part) -> Ordering {
    a.rep
        .dims()
        .cmp(b.rep.dims())
        .then(a.end_dim.cmp(&b.end_dim))
        .then_with(|| a.fingerprint.cmp(&b.fingerprint))
}

/// Krull-Schmidt decomposition of `m` with the default candidate budget.
pub fn decompose(m: &Rep, seed: u64) -> Result<DecompositionReport> {
    decompose_with_budget(m, seed, DEFAULT_BUDGET)
}

pub fn decompose_with_budget(m: &Rep, seed: u64, budget: usize) -> Result<DecompositionReport> {
    let d = HomSpace::new(m, m)?.dim();
    if m.field().p() as usize <= d {
        return Err(Error::PrimeTooSmall { p: m.field().p(), needed: d });
    }
    let mut pieces = Vec::new();
    split_recursive(m.clone(), Morphism::identity(m), budget, seed, &mut pieces)?;

    // group isomorphic pieces; each group keeps (part, [maps part -> m])
    let mut groups: Vec<(Part, Vec<Morphism>)> = Vec::new();
    for piece in pieces {
        let mut placed = false;
        for (part, maps) in groups.iter_mut() {
            if part.verdict != piece.verdict || part.end_dim != piece.end_dim {
                continue;
            }
            if let Some(phi) = find_iso(&part.rep, &piece.rep)? {
                maps.push(piece.incl.compose(&phi)?);
                part.multiplicity += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            let part = Part {
                fingerprint: fingerprint(&piece.rep)?,
                rep: piece.rep,
                multiplicity: 1,
                verdict: piece.verdict,
                end_dim: piece.end_dim,
            };
            groups.push((part, vec![piece.incl]));
        }
    }
    groups.sort_by(|a, b| part_cmp(&a.0, &b.0));

    let q = m.quiver();
    let field = m.field();
    let summands: Vec<Rep> =
        groups.iter().flat_map(|(p, _)| core::iter::repeat_n(p.rep.clone(), p.multiplicity)).collect();
    let maps: Vec<Morphism> = groups.iter().flat_map(|(_, ms)| ms.iter().cloned()).collect();
    let sum = direct_sum(q, field, &summands)?;
    let iso = row_morphism_into(&sum, &maps, m)?;
    if !iso.is_iso() {
        return Err(Error::Internal("decomposition map is not an isomorphism".into()));
    }
    Ok(DecompositionReport { parts: groups.into_iter().map(|(p, _)| p).collect(), iso })
}

#[derive(Clone, Debug)]
pub enum IsoVerdict {
    /// an isomorphism `m -> n`
    Yes(Morphism),
    No(String),
    Undetermined,
}

impl IsoVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, IsoVerdict::Yes(_))
    }
    pub fn is_no(&self) -> bool {
        matches!(self, IsoVerdict::No(_))
    }
}

/// Decides `m ≅ n` by matching decompositions part by part.
pub fn is_isomorphic(m: &Rep, n: &Rep, seed: u64) -> Result<IsoVerdict> {
    m.check_same(n)?;
    if m.dims() != n.dims() {
        return Ok(IsoVerdict::No(format!("dimension vectors {} and {} differ", m.describe(), n.describe())));
    }
    let dm = decompose(m, seed)?;
    let dn = decompose(n, seed)?;
    let certified = dm.is_certified() && dn.is_certified();
    // match the expanded summands of m against those of n
    let sm = dm.summands();
    let sn = dn.summands();
    let mut used = vec![false; sn.len()];
    let mut blocks: Vec<(usize, Morphism)> = Vec::with_capacity(sm.len());
    for a in &sm {
        let mut hit = None;
        for (j, b) in sn.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(phi) = find_iso(a, b)? {
                hit = Some((j, phi));
                break;
            }
        }
        match hit {
            Some((j, phi)) => {
                used[j] = true;
                blocks.push((j, phi));
            }
            None if certified => {
                return Ok(IsoVerdict::No(format!("summand {} of the first has no partner", a.describe())));
            }
            None => return Ok(IsoVerdict::Undetermined),
        }
    }
    if used.iter().any(|u| !u) {
        return Ok(if certified {
            IsoVerdict::No("summand multisets differ".into())
        } else {
            IsoVerdict::Undetermined
        });
    }
    let q = m.quiver();
    let field = m.field();
    let sum_m = direct_sum(q, field, &sm)?;
    let sum_n = direct_sum(q, field, &sn)?;
    let mut block = Morphism::zero(&sum_m.sum, &sum_n.sum);
    for (i, (j, phi)) in blocks.iter().enumerate() {
        let piece = sum_n.injections[*j].compose(phi)?.compose(&sum_m.projections[i])?;
        block = block.add(&piece)?;
    }
    let inv_m = dm.iso.inverse().ok_or_else(|| Error::Internal("decomposition iso".into()))?;
    let iso = dn.iso.compose(&block)?.compose(&inv_m)?;
    let iso = Morphism::new(m.clone(), n.clone(), iso.comps().to_vec())?;
    if !iso.is_iso() {
        return Err(Error::Internal("assembled map is not an isomorphism".into()));
    }
    Ok(IsoVerdict::Yes(iso))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fp;
    use crate::quiver::Quiver;
    use alloc::sync::Arc;

    fn f() -> Fp {
        Fp::new(32003).unwrap()
    }

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::new("A2", &["1", "2"], &[("a", "1", "2")]).unwrap())
    }

    #[test]
    fn projective_plus_simple() {
        let q = a2();
        let p1 = projective(&q, f(), 0).unwrap();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let m = direct_sum(&q, f(), &[s1.clone(), p1.clone()]).unwrap().sum;
        let r = decompose(&m, 0).unwrap();
        assert_eq!(r.parts.len(), 2);
        assert!(r.is_certified());
        // sorted by dimension vector: S1 = (1,0) before P1 = (1,1)
        assert!(find_iso(&r.parts[0].rep, &s1).unwrap().is_some());
        assert!(find_iso(&r.parts[1].rep, &p1).unwrap().is_some());
        assert!(r.iso.is_iso());
    }

    #[test]
    fn zero_and_indecomposable() {
        let q = a2();
        assert!(decompose(&Rep::zero(q.clone(), f()), 3).unwrap().parts.is_empty());
        let p1 = projective(&q, f(), 0).unwrap();
        let r = decompose(&p1, 3).unwrap();
        assert_eq!(r.parts.len(), 1);
        assert_eq!(r.parts[0].multiplicity, 1);
        assert_eq!(r.parts[0].end_dim, 1);
    }

    #[test]
    fn multiplicities_are_grouped() {
        let q = a2();
        let s2 = Rep::simple(q.clone(), f(), 1);
        let m = direct_sum(&q, f(), &[s2.clone(), s2.clone(), s2]).unwrap().sum;
        let r = decompose(&m, 11).unwrap();
        assert_eq!(r.parts.len(), 1);
        assert_eq!(r.parts[0].multiplicity, 3);
    }

    #[test]
    fn iso_verdicts() {
        let q = a2();
        let p1 = projective(&q, f(), 0).unwrap();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let s2 = Rep::simple(q.clone(), f(), 1);
        let ss = direct_sum(&q, f(), &[s1, s2]).unwrap().sum;
        assert!(is_isomorphic(&p1, &p1, 0).unwrap().is_yes());
        assert!(is_isomorphic(&p1, &ss, 0).unwrap().is_no());
        let with_zero = direct_sum(&q, f(), &[p1.clone(), Rep::zero(q.clone(), f())]).unwrap().sum;
        match is_isomorphic(&p1, &with_zero, 0).unwrap() {
            IsoVerdict::Yes(phi) => assert!(phi.is_iso()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_prime_is_rejected() {
        let q = a2();
        let f3 = Fp::new(3).unwrap();
        let s = Rep::simple(q.clone(), f3, 0);
        let m = direct_sum(&q, f3, &[s.clone(), s]).unwrap().sum;
        assert!(matches!(decompose(&m, 0), Err(Error::PrimeTooSmall { .. })));
    }
}
