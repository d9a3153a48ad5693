use arq::dsl::{parse, render, ArrowDecl, Decl, Document, FPRepDecl, QuiverDecl, RayDecl, RayQuiverDecl, RepDecl, SubcatDecl, TorsionDecl};
use proptest::prelude::*;

const PRIMES: [u32; 4] = [2, 3, 7, 32003];

/// A quiver on `n` vertices with arrows only from lower to higher index,
/// so it is acyclic.
fn quiver_decl(name: String, n: usize, pairs: Vec<(usize, usize)>) -> QuiverDecl {
    let vertices: Vec<String> = (0..n).map(|k| format!("v{k}")).collect();
    let arrows = pairs
        .into_iter()
        .filter(|(a, b)| a < b && *b < n)
        .enumerate()
        .map(|(k, (a, b))| ArrowDecl { name: format!("a{k}"), source: vertices[a].clone(), target: vertices[b].clone() })
        .collect();
    QuiverDecl { name, vertices, arrows }
}

fn rep_decl(q: &QuiverDecl, name: String, prime: u32, dims: &[usize], entries: &[i64], keep: &[bool]) -> RepDecl {
    // vertices left out of the `dims` block have dimension zero
    let kept = |k: usize| keep[k % keep.len()];
    let dim = |v: &str| q.vertices.iter().position(|w| w == v).filter(|&k| kept(k)).map_or(0, |k| dims[k % dims.len()]);
    let mut it = entries.iter().cycle();
    let mats = q
        .arrows
        .iter()
        .zip(keep.iter().cycle())
        .filter(|(_, k)| **k)
        .map(|(a, _)| {
            let (r, c) = (dim(&a.target), dim(&a.source));
            let m = (0..r).map(|_| (0..c).map(|_| *it.next().unwrap()).collect()).collect();
            (a.name.clone(), m)
        })
        .collect();
    let dims = q
        .vertices
        .iter()
        .enumerate()
        .filter(|(k, _)| kept(*k))
        .map(|(_, v)| (v.clone(), dim(v)))
        .collect();
    RepDecl { name, over: q.name.clone(), prime, dims, mats }
}

prop_compose! {
    fn document()(
        n in 1usize..5,
        pairs in prop::collection::vec((0usize..5, 0usize..5), 0..6),
        prime in prop::sample::select(PRIMES.to_vec()),
        reps in prop::collection::vec(
            (prop::collection::vec(0usize..3, 1..5), prop::collection::vec(-40i64..40, 1..8), prop::collection::vec(any::<bool>(), 1..6)),
            0..4,
        ),
        rays in 0usize..3,
        fprep in any::<bool>(),
    ) -> Vec<Decl> {
        let q = quiver_decl("Q".into(), n, pairs);
        let mut decls = vec![Decl::Quiver(q.clone())];
        let mut names = Vec::new();
        for (k, (dims, entries, keep)) in reps.iter().enumerate() {
            let name = format!("R{k}");
            decls.push(Decl::Rep(rep_decl(&q, name.clone(), prime, dims, entries, keep)));
            names.push(name);
        }
        decls.push(Decl::Subcat(SubcatDecl { name: "C".into(), over: "Q".into(), gens: names.clone() }));
        let (t, f) = names.split_at(names.len() / 2);
        decls.push(Decl::Torsion(TorsionDecl { name: "T".into(), over: "Q".into(), torsion: t.to_vec(), free: f.to_vec() }));
        if rays > 0 {
            let rq = RayQuiverDecl {
                name: "R".into(),
                vertices: q.vertices.clone(),
                arrows: q.arrows.clone(),
                rays: (0..rays).map(|k| RayDecl { name: format!("t{k}"), attach: q.vertices[k % n].clone() }).collect(),
            };
            decls.push(Decl::RayQuiver(rq));
            if fprep {
                // the cokernel of 0 -> P[t0.2] needs no path coefficients
                decls.push(Decl::FPRep(FPRepDecl {
                    name: "M".into(),
                    over: "R".into(),
                    prime: Some(prime),
                    p1: Vec::new(),
                    p0: vec!["t0.2".into(), q.vertices[0].clone()],
                    f: vec![Vec::new(), Vec::new()],
                }));
            }
        }
        decls
    }
}

/// A document holding exactly these declarations.
fn build(decls: Vec<Decl>) -> Document {
    let mut doc = parse("").unwrap();
    doc.decls = decls;
    doc
}

proptest! {
    #[test]
    fn render_then_parse_is_identity(decls in document()) {
        let doc = build(decls);
        let text = render(&doc);
        let back = parse(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(render(&back), text);
    }
}

#[test]
fn samples_round_trip() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("samples");
    for name in ["a2.arq", "a3.arq", "rays.arq"] {
        let src = std::fs::read_to_string(dir.join(name)).unwrap();
        let doc = parse(&src).unwrap();
        let again = parse(&render(&doc)).unwrap();
        assert_eq!(doc, again, "{name}");
    }
}
