//! The Nakayama functor on path coordinates, the translates `DTr` and
//! `TrD`, almost split sequences with verification, and AR quivers of
//! representation-finite quivers.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::decompose::{decompose, find_iso, is_certified_indecomposable};
use crate::endo::{end_algebra, EndAlgebra};
use crate::error::{Error, Result};
use crate::ext::{ExtClass, ExtSpace, ShortExact};
use crate::field::{Fp, Matrix, QuotientSpace};
use crate::hom::{coords_matrix, flat_dim, HomSpace};
use crate::projective::{
    is_injective, is_projective, minimal_injective_copresentation, minimal_projective_presentation, projective,
    BasicSum, PathMap,
};
use crate::quiver::Quiver;
use crate::rep::{Morphism, Rep};
use crate::stable::{stable_hom_inj, stable_hom_proj};

/// `ν(f)`: the same path coefficients, read between sums of injectives.
pub fn nakayama(pm: &PathMap, q: &Arc<Quiver>, field: Fp) -> Result<Morphism> {
    pm.validate(q, field)?;
    let src = BasicSum::injectives(q, field, &pm.src)?;
    let dst = BasicSum::injectives(q, field, &pm.dst)?;
    pm.to_injective_morphism(&src, &dst)
}

/// `ν⁻(g)`: the same path coefficients, read between sums of projectives.
pub fn nakayama_inverse(pm: &PathMap, q: &Arc<Quiver>, field: Fp) -> Result<Morphism> {
    pm.validate(q, field)?;
    let src = BasicSum::projectives(q, field, &pm.src)?;
    let dst = BasicSum::projectives(q, field, &pm.dst)?;
    pm.to_projective_morphism(&src, &dst)
}

/// `DTr m = ker ν(f)` for the minimal projective presentation `f`, without
/// checking for projective summands.
pub fn dtr_unchecked(m: &Rep) -> Result<Rep> {
    if m.is_zero() {
        return Ok(m.clone());
    }
    let pres = minimal_projective_presentation(m)?;
    let pm = PathMap::from_projective_morphism(&pres.f, &pres.p1, &pres.p0);
    let nf = nakayama(&pm, m.quiver(), m.field())?;
    Ok(nf.kernel()?.0)
}

/// `TrD m = coker ν⁻(g)` for the minimal injective copresentation `g`,
/// without checking for injective summands.
pub fn trd_unchecked(m: &Rep) -> Result<Rep> {
    if m.is_zero() {
        return Ok(m.clone());
    }
    let cop = minimal_injective_copresentation(m)?;
    let pm = PathMap::from_injective_morphism(&cop.g, &cop.i0, &cop.i1);
    let g = nakayama_inverse(&pm, m.quiver(), m.field())?;
    Ok(g.cokernel()?.0)
}

pub fn dtr(m: &Rep, seed: u64) -> Result<Rep> {
    m.quiver().require_acyclic()?;
    for part in decompose(m, seed)?.parts {
        if is_projective(&part.rep)? {
            return Err(Error::ProjectiveSummand(format!("summand {}", part.rep.describe())));
        }
    }
    dtr_unchecked(m)
}

pub fn trd(m: &Rep, seed: u64) -> Result<Rep> {
    m.quiver().require_acyclic()?;
    for part in decompose(m, seed)?.parts {
        if is_injective(&part.rep)? {
            return Err(Error::InjectiveSummand(format!("summand {}", part.rep.describe())));
        }
    }
    trd_unchecked(m)
}

/// An almost split sequence `0 -> X -> Y -> Z -> 0` with its class.
#[derive(Clone, Debug)]
pub struct AlmostSplit {
    pub space: ExtSpace,
    pub delta: ExtClass,
    /// dimension of the two-sided socle of `Ext^1(Z, X)`
    pub socle_dim: usize,
    pub seq: ShortExact,
}

impl AlmostSplit {
    pub fn x(&self) -> &Rep {
        self.space.x()
    }
    pub fn z(&self) -> &Rep {
        self.space.z()
    }
}

/// Matrices of the radical actions on `Ext^1(Z, X)`: pushouts along
/// `rad End(X)` and pullbacks along `rad End(Z)`.
pub fn radical_actions(space: &ExtSpace) -> Result<(Vec<Matrix>, Vec<Matrix>)> {
    let ex = end_algebra(space.x())?;
    let ez = end_algebra(space.z())?;
    let left = ex.radical_basis().iter().map(|r| space.pushout_matrix(r, space)).collect::<Result<_>>()?;
    let right = ez.radical_basis().iter().map(|r| space.pullback_matrix(r, space)).collect::<Result<_>>()?;
    Ok((left, right))
}

/// The almost split sequence ending at a certified indecomposable,
/// non-projective `z`.
pub fn almost_split_sequence(z: &Rep) -> Result<AlmostSplit> {
    z.quiver().require_acyclic()?;
    if z.is_zero() {
        return Err(Error::Precondition("zero representation".into()));
    }
    if is_projective(z)? {
        return Err(Error::Projective);
    }
    if !is_certified_indecomposable(z)? {
        return Err(Error::Precondition(format!("{} is not certified indecomposable", z.describe())));
    }
    let x = dtr_unchecked(z)?;
    let space = ExtSpace::new(z, &x)?;
    let (left, right) = radical_actions(&space)?;
    let field = z.field();
    let mut stacked = Matrix::zeros(field, 0, space.dim());
    for m in left.iter().chain(&right) {
        stacked = stacked.vstack(m);
    }
    let socle = stacked.kernel_basis();
    if socle.cols() == 0 {
        return Err(Error::Internal("Ext socle is zero".into()));
    }
    let delta = ExtClass { coords: socle.col(0) };
    let seq = space.class_to_ses(&delta)?;
    Ok(AlmostSplit { space, delta, socle_dim: socle.cols(), seq })
}

/// A morphism that a verification step expected to factor but did not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// index into the test list
    pub test: usize,
    pub morphism: Morphism,
}

#[derive(Clone, Debug)]
pub struct Certificate {
    pub non_split: bool,
    pub end_x_local: bool,
    pub end_z_local: bool,
    /// non-retractions `L -> Z` not factoring through `p`
    pub right_failures: Vec<Witness>,
    /// non-sections `X -> L` not factoring through `i`
    pub left_failures: Vec<Witness>,
    /// `{e ∈ End Y : p e = 0} ⊆ rad End Y`
    pub right_minimal: bool,
    /// `{e ∈ End Y : e i = 0} ⊆ rad End Y`
    pub left_minimal: bool,
    pub tested: usize,
}

impl Certificate {
    pub fn is_valid(&self) -> bool {
        self.non_split
            && self.end_x_local
            && self.end_z_local
            && self.right_failures.is_empty()
            && self.left_failures.is_empty()
            && self.right_minimal
            && self.left_minimal
    }

    /// First failing check, for reporting.
    pub fn failure(&self) -> Option<String> {
        if !self.non_split {
            Some("sequence splits".into())
        } else if !self.end_x_local {
            Some("End of the left term is not local".into())
        } else if !self.end_z_local {
            Some("End of the right term is not local".into())
        } else if let Some(w) = self.right_failures.first() {
            Some(format!("non-retraction from test object {} does not factor through the epimorphism", w.test))
        } else if let Some(w) = self.left_failures.first() {
            Some(format!("non-section to test object {} does not factor through the monomorphism", w.test))
        } else if !self.right_minimal {
            Some("epimorphism is not right minimal".into())
        } else if !self.left_minimal {
            Some("monomorphism is not left minimal".into())
        } else {
            None
        }
    }
}

/// Coordinates (columns) of morphisms in a Hom space.
fn hom_coords(h: &HomSpace, ms: &[Morphism]) -> Result<Matrix> {
    let mut out = Matrix::zeros(h.src().field(), h.dim(), ms.len());
    for (k, m) in ms.iter().enumerate() {
        for (r, v) in h.coords(m)?.into_iter().enumerate() {
            out.set(r, k, v);
        }
    }
    Ok(out)
}

/// Basis (coordinates in `Hom(L, Z)`) of the maps `h` with `h g ∈ rad End Z`
/// for all `g: Z -> L`; these are the non-retractions when `End Z` is local.
fn radical_into(h: &HomSpace, end_z: &EndAlgebra) -> Result<Matrix> {
    let z = h.dst();
    let gs = HomSpace::new(z, h.src())?;
    let field = z.field();
    let q = end_z.semisimple_dim();
    let mut map = Matrix::zeros(field, q * gs.dim(), h.dim());
    for (c, hb) in h.basis().iter().enumerate() {
        for (j, g) in gs.basis().iter().enumerate() {
            for (k, v) in end_z.residue(&hb.compose(g)?)?.into_iter().enumerate() {
                map.set(j * q + k, c, v);
            }
        }
    }
    Ok(map.kernel_basis())
}

/// Dual of [`radical_into`]: maps `h: X -> L` with `g h ∈ rad End X`.
fn radical_from(h: &HomSpace, end_x: &EndAlgebra) -> Result<Matrix> {
    let x = h.src();
    let gs = HomSpace::new(h.dst(), x)?;
    let field = x.field();
    let q = end_x.semisimple_dim();
    let mut map = Matrix::zeros(field, q * gs.dim(), h.dim());
    for (c, hb) in h.basis().iter().enumerate() {
        for (j, g) in gs.basis().iter().enumerate() {
            for (k, v) in end_x.residue(&g.compose(hb)?)?.into_iter().enumerate() {
                map.set(j * q + k, c, v);
            }
        }
    }
    Ok(map.kernel_basis())
}

/// Columns of `sub` lying outside the span of `span`.
fn outside(field: Fp, ambient: usize, span: &Matrix, sub: &Matrix) -> Vec<usize> {
    let qs = QuotientSpace::new(field, ambient, span);
    (0..sub.cols()).filter(|&j| !qs.contains(&sub.col(j))).collect()
}

/// Checks that `s` is almost split against a list of indecomposable test
/// objects. All checks are linear: the non-retractions `L -> Z` form the
/// subspace `rad(L, Z)` when `End Z` is local, so a basis suffices.
pub fn verify_ass(s: &ShortExact, tests: &[Rep]) -> Result<Certificate> {
    let (x, y, z) = (s.left(), s.middle(), s.right());
    let field = x.field();
    let non_split = !s.is_split()?;
    let ex = end_algebra(x)?;
    let ez = end_algebra(z)?;
    let end_x_local = !x.is_zero() && ex.semisimple_dim() == 1;
    let end_z_local = !z.is_zero() && ez.semisimple_dim() == 1;
    let mut right_failures = Vec::new();
    let mut left_failures = Vec::new();
    if end_x_local && end_z_local {
        for (t, l) in tests.iter().enumerate() {
            // right almost split
            let hz = HomSpace::new(l, z)?;
            let rad = radical_into(&hz, &ez)?;
            let hy = HomSpace::new(l, y)?;
            let through: Vec<Morphism> = hy.basis().iter().map(|w| s.p().compose(w)).collect::<Result<_>>()?;
            let span = hom_coords(&hz, &through)?;
            for j in outside(field, hz.dim(), &span, &rad) {
                right_failures.push(Witness { test: t, morphism: hz.combine(&rad.col(j)) });
            }
            // left almost split
            let hx = HomSpace::new(x, l)?;
            let rad = radical_from(&hx, &ex)?;
            let hyl = HomSpace::new(y, l)?;
            let through: Vec<Morphism> = hyl.basis().iter().map(|w| w.compose(s.i())).collect::<Result<_>>()?;
            let span = hom_coords(&hx, &through)?;
            for j in outside(field, hx.dim(), &span, &rad) {
                left_failures.push(Witness { test: t, morphism: hx.combine(&rad.col(j)) });
            }
        }
    }
    let ey = end_algebra(y)?;
    let right_minimal = kills_only_radical(&ey, |e| s.p().compose(e), flat_dim(y, z), field)?;
    let left_minimal = kills_only_radical(&ey, |e| e.compose(s.i()), flat_dim(x, y), field)?;
    Ok(Certificate {
        non_split,
        end_x_local,
        end_z_local,
        right_failures,
        left_failures,
        right_minimal,
        left_minimal,
        tested: tests.len(),
    })
}

/// `{e ∈ End Y : act(e) = 0} ⊆ rad End Y`.
fn kills_only_radical<F>(ey: &EndAlgebra, act: F, rows: usize, field: Fp) -> Result<bool>
where
    F: Fn(&Morphism) -> Result<Morphism>,
{
    let images: Vec<Morphism> = ey.hom.basis().iter().map(&act).collect::<Result<_>>()?;
    let k = coords_matrix(&images, rows, field).kernel_basis();
    for j in 0..k.cols() {
        if !ey.in_radical(&ey.hom.combine(&k.col(j)))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A vertex of an AR quiver: `τ^{-power} P_orbit`.
#[derive(Clone, Debug)]
pub struct ArVertex {
    pub rep: Rep,
    pub name: String,
    /// quiver vertex of the projective starting the orbit
    pub orbit: usize,
    pub power: usize,
    pub projective: bool,
    pub injective: bool,
}

/// Almost split sequence ending at `z` (`x = τ z`), middle term by vertex
/// with multiplicity.
#[derive(Clone, Debug)]
pub struct Mesh {
    pub z: usize,
    pub x: usize,
    pub middle: Vec<(usize, usize)>,
}

#[derive(Clone, Debug)]
pub struct ArQuiver {
    pub quiver: Arc<Quiver>,
    pub vertices: Vec<ArVertex>,
    pub meshes: Vec<Mesh>,
    /// irreducible maps `(from, to, multiplicity)`
    pub arrows: Vec<(usize, usize, usize)>,
}

impl ArQuiver {
    pub fn find(&self, m: &Rep) -> Result<Option<usize>> {
        for (k, v) in self.vertices.iter().enumerate() {
            if find_iso(&v.rep, m)?.is_some() {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }

    pub fn indecomposables(&self) -> Vec<Rep> {
        self.vertices.iter().map(|v| v.rep.clone()).collect()
    }
}

pub const DEFAULT_AR_CAP: usize = 500;

fn vertex_name(q: &Quiver, orbit: usize, power: usize) -> String {
    let p = format!("P{}", q.vertices()[orbit]);
    if power == 0 {
        p
    } else {
        format!("t-{power}{p}")
    }
}

/// Enumerates the indecomposables by applying `TrD` to the projectives
/// until an injective is reached, then computes every mesh.
pub fn ar_quiver(q: &Arc<Quiver>, field: Fp, seed: u64, cap: usize) -> Result<ArQuiver> {
    q.require_acyclic()?;
    let mut vertices: Vec<ArVertex> = Vec::new();
    for x in 0..q.num_vertices() {
        let mut rep = projective(q, field, x)?;
        let mut power = 0;
        loop {
            if vertices.len() >= cap {
                return Err(Error::NotRepresentationFinite(cap));
            }
            let injective = is_injective(&rep)?;
            vertices.push(ArVertex {
                name: vertex_name(q, x, power),
                projective: power == 0,
                injective,
                orbit: x,
                power,
                rep: rep.clone(),
            });
            if injective {
                break;
            }
            rep = trd_unchecked(&rep)?;
            power += 1;
        }
    }
    let mut out = ArQuiver { quiver: q.clone(), vertices, meshes: Vec::new(), arrows: Vec::new() };
    let mut arrows: Vec<(usize, usize, usize)> = Vec::new();
    for zi in 0..out.vertices.len() {
        let z = out.vertices[zi].rep.clone();
        let incoming: Vec<(usize, usize)> = if out.vertices[zi].projective {
            let (rad, _) = crate::projective::radical(&z)?;
            locate_summands(&out, &rad, seed)?
        } else {
            let ass = almost_split_sequence(&z)?;
            let xi = out
                .find(ass.x())?
                .ok_or_else(|| Error::Internal(format!("translate of {} not enumerated", out.vertices[zi].name)))?;
            let middle = locate_summands(&out, ass.seq.middle(), seed)?;
            out.meshes.push(Mesh { z: zi, x: xi, middle: middle.clone() });
            middle
        };
        for (from, mult) in incoming {
            arrows.push((from, zi, mult));
        }
    }
    arrows.sort();
    out.arrows = arrows;
    Ok(out)
}

fn locate_summands(arq: &ArQuiver, m: &Rep, seed: u64) -> Result<Vec<(usize, usize)>> {
    let mut found = Vec::new();
    if m.is_zero() {
        return Ok(found);
    }
    for part in decompose(m, seed)?.parts {
        let k = arq
            .find(&part.rep)?
            .ok_or_else(|| Error::Internal(format!("summand {} not enumerated", part.rep.describe())))?;
        found.push((k, part.multiplicity));
    }
    found.sort();
    Ok(found)
}

/// One row of the duality table for `Z` and a test object `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityRow {
    pub test: usize,
    pub ext_z_l: usize,
    pub hombar_l_x: usize,
    pub ext_l_x: usize,
    pub homunder_z_l: usize,
}

impl DualityRow {
    pub fn first_holds(&self) -> bool {
        self.ext_z_l == self.hombar_l_x
    }
    pub fn second_holds(&self) -> bool {
        self.ext_l_x == self.homunder_z_l
    }
}

/// `dim Ext^1(Z, L) = dim Hom-bar(L, DTr Z)` and
/// `dim Ext^1(L, DTr Z) = dim Hom-under(Z, L)` for each test object.
pub fn duality_report(z: &Rep, tests: &[Rep], seed: u64) -> Result<Vec<DualityRow>> {
    let x = dtr(z, seed)?;
    tests
        .iter()
        .enumerate()
        .map(|(t, l)| {
            Ok(DualityRow {
                test: t,
                ext_z_l: ExtSpace::new(z, l)?.dim(),
                hombar_l_x: stable_hom_inj(l, &x)?.dim(),
                ext_l_x: ExtSpace::new(l, &x)?.dim(),
                homunder_z_l: stable_hom_proj(z, l)?.dim(),
            })
        })
        .collect()
}

/// Multiplicity lists are small; this keeps a stable textual form.
pub fn middle_description(arq: &ArQuiver, mesh: &Mesh) -> String {
    let parts: Vec<String> = mesh
        .middle
        .iter()
        .map(|&(k, m)| if m == 1 { arq.vertices[k].name.clone() } else { format!("{}^{m}", arq.vertices[k].name) })
        .collect();
    parts.join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::is_isomorphic;
    use crate::projective::injective;
    use alloc::vec;

    fn f() -> Fp {
        Fp::new(32003).unwrap()
    }

    fn a2() -> Arc<Quiver> {
        Arc::new(Quiver::new("A2", &["1", "2"], &[("a", "1", "2")]).unwrap())
    }

    fn a3() -> Arc<Quiver> {
        Arc::new(Quiver::new("A3", &["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap())
    }

    #[test]
    fn a2_translates() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let s2 = Rep::simple(q.clone(), f(), 1);
        let t = dtr(&s1, 0).unwrap();
        assert!(is_isomorphic(&t, &s2, 0).unwrap().is_yes());
        let t = trd(&s2, 0).unwrap();
        assert!(is_isomorphic(&t, &s1, 0).unwrap().is_yes());
        let p1 = projective(&q, f(), 0).unwrap();
        assert!(matches!(dtr(&p1, 0), Err(Error::ProjectiveSummand(_))));
        assert!(matches!(trd(&p1, 0), Err(Error::InjectiveSummand(_))));
    }

    #[test]
    fn nakayama_identity_and_zero() {
        let q = a2();
        let id = PathMap { src: vec![0, 1], dst: vec![0, 1], blocks: vec![vec![vec![1], vec![0]], vec![vec![], vec![1]]] };
        let n = nakayama(&id, &q, f()).unwrap();
        assert!(n.is_iso());
        assert_eq!(n.src(), &crate::rep::direct_sum(&q, f(), &[injective(&q, f(), 0).unwrap(), injective(&q, f(), 1).unwrap()]).unwrap().sum);
        let zero = PathMap { src: vec![1], dst: vec![0], blocks: vec![vec![vec![0]]] };
        assert!(nakayama(&zero, &q, f()).unwrap().is_zero());
        let bad = PathMap { src: vec![1], dst: vec![0], blocks: vec![vec![vec![]]] };
        assert!(nakayama(&bad, &q, f()).is_err());
    }

    #[test]
    fn a2_almost_split() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let ass = almost_split_sequence(&s1).unwrap();
        assert_eq!(ass.socle_dim, 1);
        assert_eq!(ass.seq.middle().dims(), &[1, 1]);
        let tests = vec![Rep::simple(q.clone(), f(), 1), projective(&q, f(), 0).unwrap(), s1.clone()];
        let cert = verify_ass(&ass.seq, &tests).unwrap();
        assert!(cert.is_valid(), "{:?}", cert.failure());
        let p2 = projective(&q, f(), 1).unwrap();
        assert_eq!(almost_split_sequence(&p2).unwrap_err(), Error::Projective);
    }

    #[test]
    fn split_sequence_fails_verification() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let s2 = Rep::simple(q.clone(), f(), 1);
        let s = ShortExact::split(&s2, &s1).unwrap();
        let cert = verify_ass(&s, &[s1, s2]).unwrap();
        assert!(!cert.non_split);
        assert!(!cert.is_valid());
    }

    #[test]
    fn a3_middle_terms() {
        // linear orientation: 0 -> S3 -> P2 -> S2 -> 0
        let q = a3();
        let s2 = Rep::simple(q.clone(), f(), 1);
        let ass = almost_split_sequence(&s2).unwrap();
        assert_eq!(ass.x().dims(), &[0, 0, 1]);
        let parts = decompose(ass.seq.middle(), 0).unwrap();
        let dims: Vec<Vec<usize>> = parts.parts.iter().map(|p| p.rep.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![0, 1, 1]]);
        // with 2 a source the simple S2 is injective and the middle splits
        let q = Arc::new(Quiver::new("A3s", &["1", "2", "3"], &[("a", "2", "1"), ("b", "2", "3")]).unwrap());
        let s2 = Rep::simple(q.clone(), f(), 1);
        let ass = almost_split_sequence(&s2).unwrap();
        assert_eq!(ass.x().dims(), &[1, 1, 1]);
        let parts = decompose(ass.seq.middle(), 0).unwrap();
        let dims: Vec<Vec<usize>> = parts.parts.iter().map(|p| p.rep.dims().to_vec()).collect();
        assert_eq!(dims, vec![vec![0, 1, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn ar_quiver_counts() {
        let arq = ar_quiver(&a2(), f(), 0, DEFAULT_AR_CAP).unwrap();
        assert_eq!((arq.vertices.len(), arq.meshes.len()), (3, 1));
        let arq = ar_quiver(&a3(), f(), 0, DEFAULT_AR_CAP).unwrap();
        assert_eq!((arq.vertices.len(), arq.meshes.len()), (6, 3));
    }

    #[test]
    fn a2_duality_row() {
        let q = a2();
        let s1 = Rep::simple(q.clone(), f(), 0);
        let s2 = Rep::simple(q.clone(), f(), 1);
        let rows = duality_report(&s1, &[s2], 0).unwrap();
        assert_eq!(rows[0], DualityRow { test: 0, ext_z_l: 1, hombar_l_x: 1, ext_l_x: 0, homunder_z_l: 0 });
    }
}
