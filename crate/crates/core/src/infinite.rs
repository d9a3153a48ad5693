//! Finitely presented representations of ray quivers, `DTr` on finite
//! windows with a stabilization certificate, and the decision whether an
//! almost split sequence ends at such a representation.
//!
//! A projective `P_x` of a ray quiver only sees the vertices between `x` and
//! the core, so it is the same in every window containing `x`. Injectives
//! are infinite, but beyond the presentation they repeat ring by ring; the
//! kernel of `ν(f)` is computed vertexwise, so a window two rings past the
//! presentation shows every ray in its stable state.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::ar::{almost_split_sequence, ar_quiver, nakayama, verify_ass, Certificate, DEFAULT_AR_CAP};
use crate::decompose::{decompose, find_iso, is_certified_indecomposable};
use crate::error::{Error, Result};
use crate::ext::ShortExact;
use crate::field::{Fp, Matrix};
use crate::projective::{
    injective, is_projective, minimal_projective_presentation, projective, BasicSum, PathMap,
};
use crate::quiver::{Quiver, RayQuiver, RayVertex, Truncation};
use crate::rep::{Morphism, Rep};

/// `coker(f: P_1 -> P_0)` over a ray quiver, `f` in path coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FPRep {
    rq: Arc<RayQuiver>,
    field: Fp,
    p1: Vec<RayVertex>,
    p0: Vec<RayVertex>,
    /// `blocks[i][j]`: coefficients over the paths `p0[i] -> p1[j]`
    blocks: Vec<Vec<Vec<u32>>>,
}

/// A finite window with its quiver shared for building representations.
#[derive(Clone, Debug)]
pub struct Window {
    pub depth: usize,
    pub quiver: Arc<Quiver>,
    pub truncation: Truncation,
}

impl Window {
    pub fn new(rq: &RayQuiver, depth: usize) -> Result<Self> {
        let truncation = rq.truncate(depth)?;
        Ok(Window { depth, quiver: Arc::new(truncation.quiver.clone()), truncation })
    }

    pub fn index(&self, rq: &RayQuiver, v: RayVertex) -> Result<usize> {
        self.quiver.vertex_index(&rq.vertex_name(v))
    }

    /// Index of `r.n`.
    pub fn ray_vertex(&self, rq: &RayQuiver, ray: usize, n: usize) -> Result<usize> {
        self.index(rq, RayVertex::Tail(ray, n))
    }
}

fn ray_index(v: RayVertex) -> usize {
    match v {
        RayVertex::Core(_) => 0,
        RayVertex::Tail(_, n) => n,
    }
}

impl FPRep {
    pub fn new(
        rq: Arc<RayQuiver>,
        field: Fp,
        p1: Vec<RayVertex>,
        p0: Vec<RayVertex>,
        blocks: Vec<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        let m = FPRep { rq, field, p1, p0, blocks };
        let w = m.window(m.min_depth())?;
        m.path_map(&w)?.validate(&w.quiver, field)?;
        Ok(m)
    }

    /// The presentation of a finite representation living on some window
    /// of `rq` (vertices are matched by name).
    pub fn from_rep(rq: Arc<RayQuiver>, m: &Rep) -> Result<Self> {
        if m.is_zero() {
            return Ok(FPRep { rq, field: m.field(), p1: Vec::new(), p0: Vec::new(), blocks: Vec::new() });
        }
        let pres = minimal_projective_presentation(m)?;
        let pm = PathMap::from_projective_morphism(&pres.f, &pres.p1, &pres.p0);
        let names = m.quiver().vertices();
        let locate = |vs: &[usize]| vs.iter().map(|&v| rq.locate(&names[v])).collect::<Result<Vec<_>>>();
        let p1 = locate(&pm.src)?;
        let p0 = locate(&pm.dst)?;
        FPRep::new(rq.clone(), m.field(), p1, p0, pm.blocks)
    }

    /// The simple representation at a vertex.
    pub fn simple(rq: Arc<RayQuiver>, field: Fp, v: RayVertex) -> Result<Self> {
        let w = Window::new(&rq, ray_index(v).max(1))?;
        let s = Rep::simple(w.quiver.clone(), field, w.index(&rq, v)?);
        FPRep::from_rep(rq, &s)
    }

    pub fn ray_quiver(&self) -> &Arc<RayQuiver> {
        &self.rq
    }
    pub fn field(&self) -> Fp {
        self.field
    }
    pub fn p1(&self) -> &[RayVertex] {
        &self.p1
    }
    pub fn p0(&self) -> &[RayVertex] {
        &self.p0
    }
    pub fn blocks(&self) -> &[Vec<Vec<u32>>] {
        &self.blocks
    }

    /// Largest ray position used by the presentation (0 if it stays in the
    /// core).
    pub fn reach(&self) -> usize {
        self.p1.iter().chain(&self.p0).map(|&v| ray_index(v)).max().unwrap_or(0)
    }

    /// Smallest window on which the cokernel can be realized.
    pub fn min_depth(&self) -> usize {
        self.reach() + 1
    }

    pub fn window(&self, depth: usize) -> Result<Window> {
        Window::new(&self.rq, depth)
    }

    fn path_map(&self, w: &Window) -> Result<PathMap> {
        let idx = |vs: &[RayVertex]| vs.iter().map(|&v| w.index(&self.rq, v)).collect::<Result<Vec<_>>>();
        Ok(PathMap { src: idx(&self.p1)?, dst: idx(&self.p0)?, blocks: self.blocks.clone() })
    }

    /// The presentation realized on a window.
    pub fn presentation(&self, w: &Window) -> Result<Morphism> {
        let pm = self.path_map(w)?;
        let src = BasicSum::projectives(&w.quiver, self.field, &pm.src)?;
        let dst = BasicSum::projectives(&w.quiver, self.field, &pm.dst)?;
        pm.to_projective_morphism(&src, &dst)
    }

    /// The cokernel on the window of the given depth.
    pub fn coker_rep(&self, depth: usize) -> Result<Rep> {
        if depth < self.min_depth() {
            return Err(Error::Usage(format!("truncation depth {depth} too small: need at least {}", self.min_depth())));
        }
        let w = self.window(depth)?;
        Ok(self.presentation(&w)?.cokernel()?.0)
    }
}

/// Stabilization evidence for one ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayCertificate {
    pub ray: usize,
    pub name: String,
    /// rings compared: `ring - 1` and `ring`
    pub ring: usize,
    /// `ν(f)` has literally the same matrix at both rings
    pub blocks_equal: bool,
    /// the connecting arrow acts as the identity on both injective sums
    pub connecting_identity: bool,
    /// kernel dimension at the compared rings
    pub dim: usize,
}

impl RayCertificate {
    pub fn holds(&self) -> bool {
        self.blocks_equal && self.connecting_identity
    }
}

#[derive(Clone, Debug)]
pub enum DtrKind {
    /// `DTr` with support inside the window
    Finite(Rep),
    Infinite { ray: usize, name: String, stable_dim: usize },
}

#[derive(Clone, Debug)]
pub struct DtrVerdict {
    pub kind: DtrKind,
    pub depth: usize,
    pub rays: Vec<RayCertificate>,
    /// the stored presentation was already minimal
    pub presentation_minimal: bool,
}

impl DtrVerdict {
    pub fn is_finite(&self) -> bool {
        matches!(self.kind, DtrKind::Finite(_))
    }
    pub fn certified(&self) -> bool {
        self.rays.iter().all(RayCertificate::holds)
    }
    /// Same verdict, and for finite verdicts the same representation once
    /// both are moved to the larger window.
    pub fn agrees_with(&self, o: &DtrVerdict) -> Result<bool> {
        match (&self.kind, &o.kind) {
            (DtrKind::Finite(a), DtrKind::Finite(b)) => {
                let (small, big) = if a.quiver().num_vertices() <= b.quiver().num_vertices() { (a, b) } else { (b, a) };
                Ok(small.transport(big.quiver())? == *big)
            }
            (
                DtrKind::Infinite { ray: r1, stable_dim: d1, .. },
                DtrKind::Infinite { ray: r2, stable_dim: d2, .. },
            ) => Ok(r1 == r2 && d1 == d2),
            _ => Ok(false),
        }
    }
}

/// `DTr m` on the smallest certifiable window.
pub fn dtr_inf(m: &FPRep, seed: u64) -> Result<DtrVerdict> {
    dtr_inf_at(m, m.min_depth() + 1, seed)
}

/// `DTr m` computed on the window of the given depth (at least two rings
/// past the presentation).
pub fn dtr_inf_at(m: &FPRep, depth: usize, seed: u64) -> Result<DtrVerdict> {
    if depth < m.min_depth() + 1 {
        return Err(Error::Usage(format!("truncation depth {depth} too small: need at least {}", m.min_depth() + 1)));
    }
    let rq = &m.rq;
    let w = m.window(depth)?;
    let given = m.presentation(&w)?;
    let coker = given.cokernel()?.0;
    if coker.is_zero() {
        return Err(Error::Precondition("zero representation".into()));
    }
    for part in decompose(&coker, seed)?.parts {
        if is_projective(&part.rep)? {
            return Err(Error::ProjectiveSummand(coker.describe()));
        }
    }
    let pres = minimal_projective_presentation(&coker)?;
    let presentation_minimal = pres.p0.vertices.len() == m.p0.len() && pres.p1.vertices.len() == m.p1.len();
    let pm = PathMap::from_projective_morphism(&pres.f, &pres.p1, &pres.p0);
    let nf = nakayama(&pm, &w.quiver, m.field)?;
    let (ker, _) = nf.kernel()?;
    let field = m.field;
    let mut rays = Vec::new();
    for (r, ray) in rq.rays().iter().enumerate() {
        let outer = w.ray_vertex(rq, r, depth)?;
        let inner = w.ray_vertex(rq, r, depth - 1)?;
        let blocks_equal = nf.comp(outer) == nf.comp(inner);
        let arrow = w
            .quiver
            .arrow_index(&format!("{}.a{}", ray.name, depth))
            .ok_or_else(|| Error::Internal("missing ray arrow".into()))?;
        let ident = |rep: &Rep| {
            let a = rep.mat(arrow);
            a.is_square() && *a == Matrix::identity(field, a.rows())
        };
        let connecting_identity = ident(nf.src()) && ident(nf.dst());
        rays.push(RayCertificate {
            ray: r,
            name: ray.name.clone(),
            ring: depth,
            blocks_equal,
            connecting_identity,
            dim: ker.dim(outer),
        });
    }
    if let Some(c) = rays.iter().find(|c| !c.holds()) {
        return Err(Error::Internal(format!("ray {} did not stabilize at depth {depth}", c.name)));
    }
    let kind = match rays.iter().find(|c| c.dim > 0) {
        Some(c) => DtrKind::Infinite { ray: c.ray, name: c.name.clone(), stable_dim: c.dim },
        None => DtrKind::Finite(ker),
    };
    Ok(DtrVerdict { kind, depth, rays, presentation_minimal })
}

/// A sequence in `rep⁺` realized on a window.
#[derive(Clone, Debug)]
pub struct RepPlusSequence {
    pub depth: usize,
    pub seq: ShortExact,
    pub certificate: Certificate,
    /// every term vanishes on the boundary ring
    pub support_inside: bool,
    /// the left term agrees with the `DTr` verdict
    pub matches_dtr: bool,
    /// the test set is every indecomposable of the window interior
    pub tests_exhaustive: bool,
    pub tests: usize,
}

impl RepPlusSequence {
    pub fn is_valid(&self) -> bool {
        self.certificate.is_valid() && self.support_inside && self.matches_dtr
    }
}

#[derive(Clone, Debug)]
pub enum RepPlusOutcome {
    NoAss { verdict: DtrVerdict },
    Sequence(alloc::boxed::Box<RepPlusSequence>),
}

/// Indecomposables of the window interior, moved onto the window; falls
/// back to projectives, injectives and the given extras when the interior
/// is not representation-finite.
fn interior_tests(rq: &RayQuiver, w: &Window, field: Fp, extras: &[&Rep], seed: u64) -> Result<(Vec<Rep>, bool)> {
    let inner = Window::new(rq, w.depth - 1)?;
    match ar_quiver(&inner.quiver, field, seed, DEFAULT_AR_CAP) {
        Ok(arq) => {
            let reps = arq.indecomposables().iter().map(|r| r.transport(&w.quiver)).collect::<Result<_>>()?;
            Ok((reps, true))
        }
        Err(Error::NotRepresentationFinite(_)) => {
            let mut reps = Vec::new();
            for x in 0..inner.quiver.num_vertices() {
                reps.push(projective(&inner.quiver, field, x)?.transport(&w.quiver)?);
                reps.push(injective(&inner.quiver, field, x)?.transport(&w.quiver)?);
            }
            for e in extras {
                if !e.is_zero() {
                    reps.extend(decompose(e, seed)?.summands());
                }
            }
            Ok((reps, false))
        }
        Err(e) => Err(e),
    }
}

fn vanishes_on(m: &Rep, vertices: &[usize]) -> bool {
    vertices.iter().all(|&v| m.dim(v) == 0)
}

/// The almost split sequence in `rep⁺` ending at `m`, or the ray along
/// which `DTr m` is infinite.
pub fn ass_in_rep_plus(m: &FPRep, seed: u64) -> Result<RepPlusOutcome> {
    let verdict = dtr_inf(m, seed)?;
    let dtr = match &verdict.kind {
        DtrKind::Infinite { .. } => return Ok(RepPlusOutcome::NoAss { verdict }),
        DtrKind::Finite(r) => r.clone(),
    };
    let depth = verdict.depth;
    let w = m.window(depth)?;
    let z = m.coker_rep(depth)?;
    if !is_certified_indecomposable(&z)? {
        return Err(Error::Precondition(format!("{} is not certified indecomposable", z.describe())));
    }
    let ass = almost_split_sequence(&z)?;
    let boundary = &w.truncation.boundary;
    let seq = ass.seq;
    let support_inside =
        vanishes_on(seq.left(), boundary) && vanishes_on(seq.middle(), boundary) && vanishes_on(seq.right(), boundary);
    let matches_dtr = find_iso(seq.left(), &dtr)?.is_some();
    let (tests, tests_exhaustive) = interior_tests(&m.rq, &w, m.field, &[seq.left(), seq.middle(), seq.right()], seed)?;
    let certificate = verify_ass(&seq, &tests)?;
    Ok(RepPlusOutcome::Sequence(alloc::boxed::Box::new(RepPlusSequence {
        depth,
        tests: tests.len(),
        seq,
        certificate,
        support_inside,
        matches_dtr,
        tests_exhaustive,
    })))
}

/// `TrD` of the finitely copresented representation `D m` over the ray
/// quiver with every arrow reversed (rays pointing out of the core). The
/// finite answer is returned over the reversed window.
pub fn trd_inf(m: &FPRep, seed: u64) -> Result<DtrVerdict> {
    let mut v = dtr_inf(m, seed)?;
    if let DtrKind::Finite(r) = &v.kind {
        v.kind = DtrKind::Finite(r.dual());
    }
    Ok(v)
}

/// The dual sequence: the almost split sequence in `rep⁻` starting at
/// `D m` over the reversed ray quiver.
pub fn ass_in_rep_minus(m: &FPRep, seed: u64) -> Result<RepPlusOutcome> {
    match ass_in_rep_plus(m, seed)? {
        RepPlusOutcome::Sequence(mut s) => {
            let opposite = Arc::new(s.seq.middle().quiver().opposite());
            let i = s.seq.p().dual_over(&opposite);
            let p = s.seq.i().dual_over(&opposite);
            s.seq = ShortExact::new(i, p)?;
            Ok(RepPlusOutcome::Sequence(s))
        }
        RepPlusOutcome::NoAss { mut verdict } => {
            if let DtrKind::Finite(r) = &verdict.kind {
                verdict.kind = DtrKind::Finite(r.dual());
            }
            Ok(RepPlusOutcome::NoAss { verdict })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ar::dtr;
    use alloc::vec;

    fn f() -> Fp {
        Fp::new(32003).unwrap()
    }

    fn single_ray() -> Arc<RayQuiver> {
        let core = Quiver::new("C", &["0"], &[] as &[(&str, &str, &str)]).unwrap();
        Arc::new(RayQuiver::new(core, &[("r", "0")]).unwrap())
    }

    fn two_rays() -> Arc<RayQuiver> {
        let core = Quiver::new("C", &["0"], &[] as &[(&str, &str, &str)]).unwrap();
        Arc::new(RayQuiver::new(core, &[("r1", "0"), ("r2", "0")]).unwrap())
    }

    #[test]
    fn cokernels() {
        let rq = single_ray();
        // P_{r.1} -> P_{r.2} along the arrow r.2 -> r.1
        let m = FPRep::new(
            rq.clone(),
            f(),
            vec![RayVertex::Tail(0, 1)],
            vec![RayVertex::Tail(0, 2)],
            vec![vec![vec![1]]],
        )
        .unwrap();
        assert!(matches!(m.coker_rep(2), Err(Error::Usage(_))));
        let c = m.coker_rep(4).unwrap();
        let w = m.window(4).unwrap();
        let s = Rep::simple(w.quiver.clone(), f(), w.ray_vertex(&rq, 0, 2).unwrap());
        assert_eq!(c, s);
        let free = FPRep::new(rq.clone(), f(), vec![], vec![RayVertex::Tail(0, 1)], vec![vec![]]).unwrap();
        assert_eq!(free.coker_rep(3).unwrap().total_dim(), 2);
        let id = FPRep::new(rq, f(), vec![RayVertex::Core(0)], vec![RayVertex::Core(0)], vec![vec![vec![1]]]).unwrap();
        assert!(id.coker_rep(1).unwrap().is_zero());
    }

    #[test]
    fn single_ray_is_finite() {
        let rq = single_ray();
        let m = FPRep::simple(rq.clone(), f(), RayVertex::Tail(0, 1)).unwrap();
        let v = dtr_inf(&m, 0).unwrap();
        assert!(v.certified());
        match &v.kind {
            DtrKind::Finite(r) => {
                let w = m.window(v.depth).unwrap();
                assert_eq!(*r, Rep::simple(w.quiver.clone(), f(), w.index(&rq, RayVertex::Core(0)).unwrap()));
            }
            k => panic!("{k:?}"),
        }
        for d in 4..7 {
            assert!(dtr_inf_at(&m, d, 0).unwrap().agrees_with(&v).unwrap());
        }
        match ass_in_rep_plus(&m, 0).unwrap() {
            RepPlusOutcome::Sequence(s) => {
                assert!(s.is_valid() && s.tests_exhaustive);
                assert_eq!(s.seq.middle().total_dim(), 2);
            }
            o => panic!("{o:?}"),
        }
    }

    #[test]
    fn two_rays_is_infinite() {
        let rq = two_rays();
        let m = FPRep::simple(rq.clone(), f(), RayVertex::Tail(0, 1)).unwrap();
        for d in 4..7 {
            let v = dtr_inf_at(&m, d, 0).unwrap();
            assert!(v.certified());
            match v.kind {
                DtrKind::Infinite { ray, stable_dim, .. } => assert_eq!((ray, stable_dim), (1, 1)),
                k => panic!("{k:?}"),
            }
        }
        assert!(matches!(ass_in_rep_plus(&m, 0).unwrap(), RepPlusOutcome::NoAss { .. }));
    }

    #[test]
    fn core_only_matches_finite_theory() {
        let core = Quiver::new("A3", &["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3")]).unwrap();
        let rq = Arc::new(RayQuiver::new(core, &[]).unwrap());
        let m = FPRep::simple(rq.clone(), f(), RayVertex::Core(1)).unwrap();
        let v = dtr_inf(&m, 0).unwrap();
        let w = m.window(v.depth).unwrap();
        let s = Rep::simple(w.quiver.clone(), f(), 1);
        match v.kind {
            DtrKind::Finite(r) => assert!(find_iso(&r, &dtr(&s, 0).unwrap()).unwrap().is_some()),
            k => panic!("{k:?}"),
        }
    }

    #[test]
    fn projective_is_rejected() {
        let rq = single_ray();
        let m = FPRep::new(rq, f(), vec![], vec![RayVertex::Tail(0, 1)], vec![vec![]]).unwrap();
        assert!(matches!(dtr_inf(&m, 0), Err(Error::ProjectiveSummand(_))));
    }

    #[test]
    fn rep_minus_is_dual() {
        let rq = single_ray();
        let m = FPRep::simple(rq, f(), RayVertex::Tail(0, 1)).unwrap();
        match ass_in_rep_minus(&m, 0).unwrap() {
            RepPlusOutcome::Sequence(s) => {
                assert_eq!(s.seq.left().total_dim(), 1);
                assert!(!s.seq.is_split().unwrap());
            }
            o => panic!("{o:?}"),
        }
    }
}
