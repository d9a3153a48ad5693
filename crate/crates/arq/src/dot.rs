//! Graphviz output for AR quivers.

use std::fmt::Write;

use arq_core::ar::ArQuiver;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Vertices are labelled `name [d1,...,dn]`; irreducible maps are solid
/// edges carrying their multiplicity, the translate `Z -> τZ` is dashed.
pub fn ar_quiver_dot(arq: &ArQuiver) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "digraph {} {{", quote(&format!("AR({})", arq.quiver.name())));
    let _ = writeln!(out, "  rankdir=LR;");
    for (k, v) in arq.vertices.iter().enumerate() {
        let dims: Vec<String> = v.rep.dims().iter().map(|d| d.to_string()).collect();
        let label = format!("{} [{}]", v.name, dims.join(","));
        let _ = writeln!(out, "  v{k} [label={}];", quote(&label));
    }
    for &(from, to, mult) in &arq.arrows {
        let _ = writeln!(out, "  v{from} -> v{to} [style=solid, multiplicity={mult}, label=\"{mult}\"];");
    }
    for mesh in &arq.meshes {
        let _ = writeln!(out, "  v{} -> v{} [style=dashed, constraint=false];", mesh.z, mesh.x);
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use arq_core::ar::ar_quiver;
    use arq_core::{Fp, Quiver};
    use std::sync::Arc;

    #[test]
    fn a2_dot() {
        let q = Arc::new(Quiver::new("A2", &["1", "2"], &[("a", "1", "2")]).unwrap());
        let arq = ar_quiver(&q, Fp::new(32003).unwrap(), 0, 100).unwrap();
        let d = ar_quiver_dot(&arq);
        assert_eq!(d.matches("label=\"P").count() + d.matches("label=\"t-").count(), 3);
        assert_eq!(d.matches("style=solid").count(), 2);
        assert_eq!(d.matches("style=dashed").count(), 1);
        assert!(d.contains("[1,1]"));
    }
}
