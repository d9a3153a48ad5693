use std::fmt::Write;

use super::{ArrowDecl, Decl, Document};

fn list<T>(items: &[T], show: impl Fn(&T) -> String) -> String {
    items.iter().map(show).collect::<Vec<_>>().join(", ")
}

fn matrix(rows: &[Vec<i64>]) -> String {
    format!("[{}]", list(rows, |r| format!("[{}]", list(r, |x| x.to_string()))))
}

fn entry(e: &[i64]) -> String {
    if e.len() == 1 {
        e[0].to_string()
    } else {
        format!("[{}]", list(e, |x| x.to_string()))
    }
}

fn proj_sum(vs: &[String]) -> String {
    if vs.is_empty() {
        "0".into()
    } else {
        vs.iter().map(|v| format!("P[{v}]")).collect::<Vec<_>>().join(" + ")
    }
}

fn quiver_body(out: &mut String, vertices: &[String], arrows: &[ArrowDecl]) {
    if !vertices.is_empty() {
        let _ = writeln!(out, "  vertices {};", vertices.join(" "));
    }
    for a in arrows {
        let _ = writeln!(out, "  arrow {}: {} -> {};", a.name, a.source, a.target);
    }
}

/// Canonical text of a document. Parsing the output gives back an equal
/// document.
pub fn render(doc: &Document) -> String {
    let mut out = String::new();
    for (k, d) in doc.decls.iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        match d {
            Decl::Quiver(q) => {
                let _ = writeln!(out, "quiver {} {{", q.name);
                quiver_body(&mut out, &q.vertices, &q.arrows);
            }
            Decl::RayQuiver(q) => {
                let _ = writeln!(out, "rayquiver {} {{", q.name);
                quiver_body(&mut out, &q.vertices, &q.arrows);
                for r in &q.rays {
                    let _ = writeln!(out, "  ray {}: into {};", r.name, r.attach);
                }
            }
            Decl::Rep(r) => {
                let _ = writeln!(out, "rep {} over {} prime {} {{", r.name, r.over, r.prime);
                let dims: Vec<String> = r.dims.iter().map(|(v, n)| format!("{v}: {n}")).collect();
                let _ = writeln!(out, "  dims {{ {} }};", dims.join("; "));
                for (a, m) in &r.mats {
                    let _ = writeln!(out, "  mat {a} = {};", matrix(m));
                }
            }
            Decl::Subcat(s) => {
                let _ = writeln!(out, "subcat {} over {} {{", s.name, s.over);
                let _ = writeln!(out, "  gens {};", s.gens.join(" "));
            }
            Decl::Torsion(t) => {
                let _ = writeln!(out, "torsion {} over {} {{", t.name, t.over);
                let _ = writeln!(out, "  torsion {};", t.torsion.join(" "));
                let _ = writeln!(out, "  free {};", t.free.join(" "));
            }
            Decl::FPRep(f) => {
                let _ = write!(out, "fprep {} over {}", f.name, f.over);
                if let Some(p) = f.prime {
                    let _ = write!(out, " prime {p}");
                }
                out.push_str(" {\n");
                let _ = writeln!(out, "  p1 = {};", proj_sum(&f.p1));
                let _ = writeln!(out, "  p0 = {};", proj_sum(&f.p0));
                let rows = list(&f.f, |r| format!("[{}]", list(r, |e| entry(e))));
                let _ = writeln!(out, "  f = [{rows}];");
            }
        }
        out.push_str("}\n");
    }
    out
}
