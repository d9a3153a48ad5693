//! Finite quivers, ray-extended infinite quivers and path enumeration.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver. Vertex and arrow ids are unique; the acyclicity flag is
/// computed once at construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    acyclic: bool,
}

/// A path as a sequence of arrow indices, traversed from `source`.
pub type Path = Vec<usize>;

/// All paths between two vertices in canonical order (length, then
/// lexicographic on arrow indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSet {
    pub source: usize,
    pub target: usize,
    pub paths: Vec<Path>,
}

fn is_id(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.')
}

impl Quiver {
    /// Builds a quiver from vertex names and `(arrow, source, target)` triples.
    pub fn new<S: AsRef<str>>(name: &str, vertices: &[S], arrows: &[(S, S, S)]) -> Result<Self> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !is_id(v) {
                return Err(Error::Usage(format!("invalid vertex id {v:?}")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::Usage(format!("duplicate vertex {v}")));
            }
        }
        let mut names = BTreeSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (a, s, t) in arrows {
            let a = a.as_ref();
            if !is_id(a) {
                return Err(Error::Usage(format!("invalid arrow id {a:?}")));
            }
            if !names.insert(a.to_string()) {
                return Err(Error::Usage(format!("duplicate arrow {a}")));
            }
            let find = |v: &str| {
                vertices
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| Error::UnknownVertex(v.to_string()))
            };
            out.push(Arrow { name: a.to_string(), source: find(s.as_ref())?, target: find(t.as_ref())? });
        }
        let acyclic = topological_order(vertices.len(), &out).is_some();
        Ok(Quiver { name: name.to_string(), vertices, arrows: out, acyclic })
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }
    pub fn is_acyclic(&self) -> bool {
        self.acyclic
    }

    pub fn require_acyclic(&self) -> Result<()> {
        if self.acyclic {
            Ok(())
        } else {
            Err(Error::Cyclic(self.name.clone()))
        }
    }

    pub fn vertex_index(&self, v: &str) -> Result<usize> {
        self.vertices.iter().position(|x| x == v).ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn arrow_index(&self, a: &str) -> Option<usize> {
        self.arrows.iter().position(|x| x.name == a)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v).map(|(i, _)| i)
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
            .collect();
        Quiver {
            name: format!("{}_op", self.name),
            vertices: self.vertices.clone(),
            arrows,
            acyclic: self.acyclic,
        }
    }

    /// All paths out of `x`, grouped by endpoint, each group in canonical order.
    pub fn paths_from(&self, x: usize) -> Result<Vec<Vec<Path>>> {
        self.require_acyclic()?;
        let mut by_target: Vec<Vec<Path>> = vec![Vec::new(); self.num_vertices()];
        let mut stack: Vec<(usize, Path)> = vec![(x, Vec::new())];
        while let Some((v, path)) = stack.pop() {
            for a in self.arrows_from(v) {
                let mut next = path.clone();
                next.push(a);
                stack.push((self.arrows[a].target, next));
            }
            by_target[v].push(path);
        }
        for group in &mut by_target {
            group.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        }
        Ok(by_target)
    }

    pub fn paths(&self, x: &str, y: &str) -> Result<PathSet> {
        let (xi, yi) = (self.vertex_index(x)?, self.vertex_index(y)?);
        self.paths_between(xi, yi)
    }

    pub fn paths_between(&self, x: usize, y: usize) -> Result<PathSet> {
        if x >= self.num_vertices() || y >= self.num_vertices() {
            return Err(Error::UnknownVertex(format!("#{}", x.max(y))));
        }
        let mut all = self.paths_from(x)?;
        Ok(PathSet { source: x, target: y, paths: core::mem::take(&mut all[y]) })
    }

    pub fn path_name(&self, p: &[usize], source: usize) -> String {
        if p.is_empty() {
            return format!("e_{}", self.vertices[source]);
        }
        let names: Vec<&str> = p.iter().map(|&a| self.arrows[a].name.as_str()).collect();
        names.join("*")
    }
}

fn topological_order(n: usize, arrows: &[Arrow]) -> Option<Vec<usize>> {
    let mut indeg = vec![0usize; n];
    for a in arrows {
        indeg[a.target] += 1;
    }
    let mut ready: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop() {
        order.push(v);
        for a in arrows.iter().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                ready.push(a.target);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// An A-infinity tail `... -> r.3 -> r.2 -> r.1 -> attach`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ray {
    pub name: String,
    pub attach: usize,
}

/// A finite acyclic core with finitely many tails oriented into the core.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RayQuiver {
    core: Quiver,
    rays: Vec<Ray>,
}

/// A finite window of a ray quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Truncation {
    pub quiver: Quiver,
    pub depth: usize,
    /// the depth-th vertex of each ray, in ray order
    pub boundary: Vec<usize>,
    /// every other vertex
    pub interior: Vec<usize>,
}

/// Where a vertex of a ray quiver sits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RayVertex {
    Core(usize),
    /// ray index and position (1-based)
    Tail(usize, usize),
}

impl RayQuiver {
    pub fn new(core: Quiver, rays: &[(&str, &str)]) -> Result<Self> {
        core.require_acyclic()?;
        let mut out: Vec<Ray> = Vec::new();
        for (name, attach) in rays {
            if !is_id(name) || name.contains('.') {
                return Err(Error::Usage(format!("invalid ray id {name:?}")));
            }
            if out.iter().any(|r| r.name == *name) {
                return Err(Error::Usage(format!("duplicate ray {name}")));
            }
            if core.vertices().iter().any(|v| v.starts_with(&format!("{name}."))) {
                return Err(Error::Usage(format!("ray {name} clashes with core vertex names")));
            }
            out.push(Ray { name: name.to_string(), attach: core.vertex_index(attach)? });
        }
        Ok(RayQuiver { core, rays: out })
    }

    pub fn core(&self) -> &Quiver {
        &self.core
    }
    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }
    pub fn name(&self) -> &str {
        self.core.name()
    }

    pub fn tail_vertex_name(&self, ray: usize, n: usize) -> String {
        format!("{}.{}", self.rays[ray].name, n)
    }

    pub fn locate(&self, v: &str) -> Result<RayVertex> {
        if let Ok(i) = self.core.vertex_index(v) {
            return Ok(RayVertex::Core(i));
        }
        if let Some((r, n)) = v.rsplit_once('.') {
            if let (Some(ri), Ok(n)) = (self.rays.iter().position(|x| x.name == r), n.parse::<usize>()) {
                if n >= 1 {
                    return Ok(RayVertex::Tail(ri, n));
                }
            }
        }
        Err(Error::UnknownVertex(v.to_string()))
    }

    pub fn vertex_name(&self, v: RayVertex) -> String {
        match v {
            RayVertex::Core(i) => self.core.vertices()[i].clone(),
            RayVertex::Tail(r, n) => self.tail_vertex_name(r, n),
        }
    }

    /// Core plus the first `depth` vertices of every ray. Vertex names are
    /// stable across depths: `r.1, r.2, ...`; the arrow leaving `r.n` is
    /// named `r.a<n>`.
    pub fn truncate(&self, depth: usize) -> Result<Truncation> {
        if depth == 0 {
            return Err(Error::Usage("truncation depth must be at least 1".into()));
        }
        let mut vertices: Vec<String> = self.core.vertices().to_vec();
        let mut arrows: Vec<(String, String, String)> = self
            .core
            .arrows()
            .iter()
            .map(|a| {
                (
                    a.name.clone(),
                    self.core.vertices()[a.source].clone(),
                    self.core.vertices()[a.target].clone(),
                )
            })
            .collect();
        let mut boundary = Vec::new();
        for (ri, ray) in self.rays.iter().enumerate() {
            for n in 1..=depth {
                vertices.push(self.tail_vertex_name(ri, n));
                let target = if n == 1 {
                    self.core.vertices()[ray.attach].clone()
                } else {
                    self.tail_vertex_name(ri, n - 1)
                };
                arrows.push((format!("{}.a{}", ray.name, n), self.tail_vertex_name(ri, n), target));
            }
            boundary.push(vertices.len() - 1);
        }
        let quiver = Quiver::new(&format!("{}@{}", self.core.name(), depth), &vertices, &arrows)?;
        let interior = (0..vertices.len()).filter(|v| !boundary.contains(v)).collect();
        Ok(Truncation { quiver, depth, boundary, interior })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        Quiver::new("A2", &["1", "2"], &[("a", "1", "2")]).unwrap()
    }

    #[test]
    fn a2_paths() {
        let q = a2();
        assert_eq!(q.paths("1", "2").unwrap().paths, vec![vec![0]]);
        assert!(q.paths("2", "1").unwrap().paths.is_empty());
        assert_eq!(q.paths("1", "1").unwrap().paths, vec![Vec::<usize>::new()]);
        assert!(matches!(q.paths("1", "3"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn validation() {
        assert!(matches!(
            Quiver::new("Q", &["1", "2"], &[("a", "1", "3")]),
            Err(Error::UnknownVertex(v)) if v == "3"
        ));
        assert!(Quiver::new("Q", &["1", "1"], &[] as &[(&str, &str, &str)]).is_err());
        let cyc = Quiver::new("C", &["1", "2"], &[("a", "1", "2"), ("b", "2", "1")]).unwrap();
        assert!(!cyc.is_acyclic());
        assert!(matches!(cyc.paths("1", "2"), Err(Error::Cyclic(_))));
    }

    #[test]
    fn canonical_order_and_length_one_paths() {
        // 1 -a-> 2 -b-> 3 and a shortcut 1 -c-> 3, plus a double arrow 2 => 3
        let q = Quiver::new(
            "Q",
            &["1", "2", "3"],
            &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3"), ("d", "2", "3")],
        )
        .unwrap();
        let ps = q.paths("1", "3").unwrap().paths;
        assert_eq!(ps, vec![vec![2], vec![0, 1], vec![0, 3]]);
        for x in 0..3 {
            for y in 0..3 {
                let ones: Vec<usize> = q
                    .paths_between(x, y)
                    .unwrap()
                    .paths
                    .into_iter()
                    .filter(|p| p.len() == 1)
                    .map(|p| p[0])
                    .collect();
                let direct: Vec<usize> =
                    q.arrows_from(x).filter(|&a| q.arrows()[a].target == y).collect();
                assert_eq!(ones, direct);
            }
        }
    }

    fn one_ray() -> RayQuiver {
        let core = Quiver::new("C", &["0"], &[] as &[(&str, &str, &str)]).unwrap();
        RayQuiver::new(core, &[("r", "0")]).unwrap()
    }

    #[test]
    fn truncate_one_ray() {
        let rq = one_ray();
        let t = rq.truncate(3).unwrap();
        assert_eq!(t.quiver.vertices(), &["0", "r.1", "r.2", "r.3"]);
        let arrows: Vec<(String, usize, usize)> =
            t.quiver.arrows().iter().map(|a| (a.name.clone(), a.source, a.target)).collect();
        assert_eq!(
            arrows,
            vec![("r.a1".into(), 1, 0), ("r.a2".into(), 2, 1), ("r.a3".into(), 3, 2)]
        );
        assert_eq!(t.boundary, vec![3]);
        assert_eq!(rq.truncate(1).unwrap().boundary, vec![1]);
        assert!(rq.truncate(0).is_err());
    }

    #[test]
    fn truncate_two_rays_and_monotone() {
        let core = Quiver::new("C", &["0"], &[] as &[(&str, &str, &str)]).unwrap();
        let rq = RayQuiver::new(core, &[("r1", "0"), ("r2", "0")]).unwrap();
        let t2 = rq.truncate(2).unwrap();
        assert_eq!(t2.quiver.num_vertices(), 5);
        assert_eq!(t2.boundary.len(), 2);
        let t3 = rq.truncate(3).unwrap();
        for a in t2.quiver.arrows() {
            let b = &t3.quiver.arrows()[t3.quiver.arrow_index(&a.name).unwrap()];
            assert_eq!(t2.quiver.vertices()[a.source], t3.quiver.vertices()[b.source]);
            assert_eq!(t2.quiver.vertices()[a.target], t3.quiver.vertices()[b.target]);
        }
        // induced: arrows of t3 between t2 vertices are exactly those of t2
        let between = t3
            .quiver
            .arrows()
            .iter()
            .filter(|a| {
                t2.quiver.vertex_index(&t3.quiver.vertices()[a.source]).is_ok()
                    && t2.quiver.vertex_index(&t3.quiver.vertices()[a.target]).is_ok()
            })
            .count();
        assert_eq!(between, t2.quiver.arrows().len());
    }

    #[test]
    fn locate_ray_vertices() {
        let rq = one_ray();
        assert_eq!(rq.locate("0").unwrap(), RayVertex::Core(0));
        assert_eq!(rq.locate("r.7").unwrap(), RayVertex::Tail(0, 7));
        assert!(rq.locate("r.0").is_err());
        assert!(rq.locate("s.1").is_err());
    }
}
