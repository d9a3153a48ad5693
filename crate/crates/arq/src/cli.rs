//! The `arq` command line.
//!
//! Exit codes: 0 success, 1 mathematical negative (the report says why),
//! 2 usage or parse error, 3 undetermined verdict. Reports go to standard
//! output, diagnostics to standard error.

use std::io::Write;
use std::path::PathBuf;

use arq_core::ar::{almost_split_sequence, ar_quiver, dtr, trd, verify_ass, ArQuiver, DEFAULT_AR_CAP};
use arq_core::decompose::{decompose_with_budget, find_iso, Verdict, DEFAULT_BUDGET};
use arq_core::ext::ExtSpace;
use arq_core::hom::HomSpace;
use arq_core::infinite::{ass_in_rep_plus, dtr_inf, dtr_inf_at, DtrKind, DtrVerdict, FPRep, RepPlusOutcome};
use arq_core::subcat::{left_stable_approx, right_stable_approx, subcat_ass, ApproxSide, SubcatOutcome, SubcatSpec};
use arq_core::torsion::{torsion_canonical_seq, torsion_transfer_ass, TorsionPair, TorsionSide};
use arq_core::{Error, Fp, Rep, DEFAULT_PRIME};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::dot::ar_quiver_dot;
use crate::dsl::{parse_with_prime, Decl, Document};
use crate::report::{to_json, to_text, to_value, CertificateJson, Envelope, MorphismJson, RepJson, SequenceJson, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    /// Graphviz, `arquiver` only
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Right,
    Left,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum TorsionSideArg {
    Torsion,
    Free,
}

fn prime_arg(s: &str) -> Result<u32, String> {
    let p: u32 = s.parse().map_err(|_| format!("{s} is not an integer"))?;
    Fp::new(p).map_err(|e| e.to_string())?;
    Ok(p)
}

#[derive(Debug, Parser)]
#[command(name = "arq", version, about = "Auslander-Reiten theory for quiver representations over F_p")]
pub struct Cli {
    /// Prime for `fprep` blocks that do not name one
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME, value_parser = prime_arg)]
    pub prime: u32,
    /// Seed for every randomized step
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Candidate endomorphisms tried per part when decomposing
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    /// Largest AR quiver enumerated before giving up
    #[arg(long, global = true, default_value_t = DEFAULT_AR_CAP)]
    pub ar_cap: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a file, including subcategory closure and torsion pairs
    Check { file: PathBuf },
    /// Krull-Schmidt decomposition
    Decompose {
        file: PathBuf,
        #[arg(long)]
        rep: String,
    },
    /// A basis of Hom(A, B)
    Hom {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Ext^1(Z, X) with a realized basis
    Ext {
        file: PathBuf,
        #[arg(long)]
        z: String,
        #[arg(long)]
        x: String,
    },
    /// The AR translate DTr
    Dtr {
        file: PathBuf,
        #[arg(long)]
        rep: String,
    },
    /// The inverse translate TrD
    Trd {
        file: PathBuf,
        #[arg(long)]
        rep: String,
    },
    /// The almost split sequence ending at a representation
    Ass {
        file: PathBuf,
        #[arg(long)]
        rep: String,
        /// `all` (every indecomposable) or a comma-separated list of reps
        #[arg(long)]
        verify_against: Option<String>,
    },
    /// The AR quiver of a representation-finite quiver
    Arquiver {
        file: PathBuf,
        #[arg(long)]
        quiver: String,
        /// Also write Graphviz output to this path
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Minimal injectively (right) or projectively (left) stable approximation
    Approx {
        file: PathBuf,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        subcat: String,
        #[arg(long, value_enum, default_value_t = SideArg::Right)]
        side: SideArg,
    },
    /// The almost split sequence inside an extension-closed subcategory
    SubcatAss {
        file: PathBuf,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        subcat: String,
    },
    /// Canonical sequence of a rep, or transfer of an almost split sequence
    Torsion {
        file: PathBuf,
        #[arg(long)]
        pair: String,
        #[arg(long, conflicts_with = "transfer", required_unless_present = "transfer")]
        rep: Option<String>,
        /// End of the ambient sequence lying in the class: its right term
        /// for `torsion`, its left term for `free`
        #[arg(long, requires = "side")]
        transfer: Option<String>,
        #[arg(long, value_enum)]
        side: Option<TorsionSideArg>,
    },
    /// DTr of a finitely presented representation of a ray quiver
    InfDtr {
        file: PathBuf,
        #[arg(long)]
        fprep: String,
        /// Window depth; the smallest certifiable one by default
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Decide whether an almost split sequence ends at a finitely presented rep
    InfAss {
        file: PathBuf,
        #[arg(long)]
        fprep: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Decompose { .. } => "decompose",
            Command::Hom { .. } => "hom",
            Command::Ext { .. } => "ext",
            Command::Dtr { .. } => "dtr",
            Command::Trd { .. } => "trd",
            Command::Ass { .. } => "ass",
            Command::Arquiver { .. } => "arquiver",
            Command::Approx { .. } => "approx",
            Command::SubcatAss { .. } => "subcat-ass",
            Command::Torsion { .. } => "torsion",
            Command::InfDtr { .. } => "inf-dtr",
            Command::InfAss { .. } => "inf-ass",
        }
    }

    fn file(&self) -> &PathBuf {
        match self {
            Command::Check { file }
            | Command::Decompose { file, .. }
            | Command::Hom { file, .. }
            | Command::Ext { file, .. }
            | Command::Dtr { file, .. }
            | Command::Trd { file, .. }
            | Command::Ass { file, .. }
            | Command::Arquiver { file, .. }
            | Command::Approx { file, .. }
            | Command::SubcatAss { file, .. }
            | Command::Torsion { file, .. }
            | Command::InfDtr { file, .. }
            | Command::InfAss { file, .. } => file,
        }
    }
}

/// Why a command stopped without a report.
enum Failure {
    /// exit 2, message printed as is
    Usage(String),
    Math(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

type Out = Result<(Status, Value), Failure>;

/// Exit code of an error from the algebra: input problems are usage
/// errors, undecided computations are undetermined, the rest are
/// negatives.
pub fn error_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_)
        | Error::UnknownVertex(_)
        | Error::QuiverMismatch
        | Error::NotPrime(_)
        | Error::Dimension(_)
        | Error::PrimeTooSmall { .. } => 2,
        Error::Undetermined(_) => 3,
        _ => 1,
    }
}

struct Ctx {
    doc: Document,
    seed: u64,
    budget: usize,
    ar_cap: usize,
    file: String,
}

impl Ctx {
    fn rep(&self, name: &str) -> Result<&Rep, Failure> {
        self.doc.rep(name).map_err(|m| Failure::Usage(format!("{}: {m}", self.file)))
    }

    fn reps(&self, names: &[String]) -> Result<Vec<Rep>, Failure> {
        names.iter().map(|n| self.rep(n).cloned()).collect()
    }

    fn fprep(&self, name: &str) -> Result<&FPRep, Failure> {
        self.doc.fprep(name).map_err(|m| Failure::Usage(format!("{}: {m}", self.file)))
    }

    /// First declared rep isomorphic to `m` (exact for indecomposable `m`).
    fn identify(&self, m: &Rep) -> Result<Option<String>, Error> {
        for d in &self.doc.decls {
            if let Decl::Rep(r) = d {
                let n = self.doc.rep(&r.name).expect("declared reps are built");
                if n.same_category(m) && find_iso(m, n)?.is_some() {
                    return Ok(Some(r.name.clone()));
                }
            }
        }
        Ok(None)
    }

    fn rep_json(&self, m: &Rep) -> Result<RepJson, Error> {
        Ok(RepJson::new(m, self.identify(m)?.as_deref()))
    }

    fn subcat(&self, name: &str) -> Result<SubcatSpec, Failure> {
        let d = self.doc.subcat(name).map_err(|m| Failure::Usage(format!("{}: {m}", self.file)))?;
        Ok(SubcatSpec::new(self.reps(&d.gens)?, self.seed)?)
    }

    fn torsion_pair(&self, name: &str) -> Result<TorsionPair, Failure> {
        let d = self.doc.torsion(name).map_err(|m| Failure::Usage(format!("{}: {m}", self.file)))?;
        Ok(TorsionPair::new(self.reps(&d.torsion)?, self.reps(&d.free)?)?)
    }

    fn ar_quiver_of(&self, m: &Rep) -> Result<ArQuiver, Error> {
        ar_quiver(m.quiver(), m.field(), self.seed, self.ar_cap)
    }
}

fn closure_json(c: &SubcatSpec, names: &[String]) -> Value {
    json!({
        "closed": c.closure.closed,
        "exhaustive": c.closure.exhaustive,
        "witness": c.closure.witness.map(|(a, b)| json!([names[a], names[b]])),
    })
}

fn not_closed(c: &SubcatSpec, names: &[String], subcat: &str) -> Value {
    json!({
        "reason": format!("subcategory {subcat} is not extension closed"),
        "closure": closure_json(c, names),
    })
}

fn check(ctx: &Ctx) -> Out {
    let mut decls = Vec::new();
    let mut status = Status::Ok;
    for d in &ctx.doc.decls {
        let pos = ctx.doc.position(d.name()).unwrap_or_default();
        let mut entry = json!({"kind": d.kind(), "name": d.name(), "line": pos.line, "col": pos.col});
        match d {
            Decl::Subcat(s) => {
                let spec = SubcatSpec::new(ctx.reps(&s.gens)?, ctx.seed);
                entry["valid"] = match spec {
                    Ok(spec) => {
                        if !spec.is_closed() {
                            status = Status::Negative;
                        }
                        entry["closure"] = closure_json(&spec, &s.gens);
                        json!(spec.is_closed())
                    }
                    Err(e) if error_code(&e) == 1 => {
                        status = Status::Negative;
                        entry["reason"] = json!(e.to_string());
                        json!(false)
                    }
                    Err(e) => return Err(e.into()),
                };
            }
            Decl::Torsion(t) => {
                entry["valid"] = match TorsionPair::new(ctx.reps(&t.torsion)?, ctx.reps(&t.free)?) {
                    Ok(_) => json!(true),
                    Err(e) if error_code(&e) == 1 => {
                        status = Status::Negative;
                        entry["reason"] = json!(e.to_string());
                        json!(false)
                    }
                    Err(e) => return Err(e.into()),
                };
            }
            _ => {}
        }
        decls.push(entry);
    }
    Ok((status, json!({ "declarations": decls })))
}

fn decompose_cmd(ctx: &Ctx, name: &str) -> Out {
    let m = ctx.rep(name)?;
    let r = decompose_with_budget(m, ctx.seed, ctx.budget)?;
    let mut parts = Vec::new();
    for p in &r.parts {
        parts.push(json!({
            "rep": ctx.rep_json(&p.rep)?,
            "multiplicity": p.multiplicity,
            "verdict": match p.verdict {
                Verdict::CertifiedIndec => "certified",
                Verdict::Undetermined => "undetermined",
            },
            "end_dim": p.end_dim,
        }));
    }
    let status = if r.is_certified() { Status::Ok } else { Status::Undetermined };
    Ok((status, json!({"rep": name, "certified": r.is_certified(), "summands": parts, "iso": MorphismJson::new(&r.iso)})))
}

fn hom_cmd(ctx: &Ctx, from: &str, to: &str) -> Out {
    let h = HomSpace::new(ctx.rep(from)?, ctx.rep(to)?)?;
    let basis: Vec<MorphismJson> = h.basis().iter().map(MorphismJson::new).collect();
    Ok((Status::Ok, json!({"from": from, "to": to, "dim": h.dim(), "basis": basis})))
}

fn ext_cmd(ctx: &Ctx, z: &str, x: &str) -> Out {
    let e = ExtSpace::new(ctx.rep(z)?, ctx.rep(x)?)?;
    let mut basis = Vec::new();
    for c in e.basis() {
        basis.push(SequenceJson::new(&e.class_to_ses(&c)?, Some((&c, e.dim()))));
    }
    Ok((Status::Ok, json!({"z": z, "x": x, "dim": e.dim(), "basis": basis})))
}

fn translate_cmd(ctx: &Ctx, name: &str, inverse: bool) -> Out {
    let m = ctx.rep(name)?;
    let t = if inverse { trd(m, ctx.seed)? } else { dtr(m, ctx.seed)? };
    Ok((Status::Ok, json!({"rep": name, "translate": ctx.rep_json(&t)?})))
}

/// Test objects for `--verify-against` and whether they are all the
/// indecomposables.
fn verification_tests(ctx: &Ctx, z: &Rep, spec: Option<&str>) -> Result<(Vec<Rep>, bool), Failure> {
    match spec {
        None => Ok((Vec::new(), false)),
        Some("all") => match ctx.ar_quiver_of(z) {
            Ok(arq) => Ok((arq.indecomposables(), true)),
            Err(Error::NotRepresentationFinite(_)) => {
                // fall back to the summands of every declared rep on the quiver
                let mut tests = Vec::new();
                for d in &ctx.doc.decls {
                    if let Decl::Rep(r) = d {
                        let m = ctx.rep(&r.name)?;
                        if m.same_category(z) && !m.is_zero() {
                            tests.extend(decompose_with_budget(m, ctx.seed, ctx.budget)?.summands());
                        }
                    }
                }
                Ok((tests, false))
            }
            Err(e) => Err(e.into()),
        },
        Some(list) => {
            let names: Vec<String> = list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
            let reps = ctx.reps(&names)?;
            if let Some(bad) = reps.iter().position(|r| !r.same_category(z)) {
                return Err(Failure::Usage(format!("{}: rep {} lives over another quiver or prime", ctx.file, names[bad])));
            }
            Ok((reps, false))
        }
    }
}

fn ass_cmd(ctx: &Ctx, name: &str, verify: Option<&str>) -> Out {
    let z = ctx.rep(name)?;
    let a = almost_split_sequence(z)?;
    let (tests, exhaustive) = verification_tests(ctx, z, verify)?;
    let cert = verify_ass(&a.seq, &tests)?;
    let mut middle = Vec::new();
    if !a.seq.middle().is_zero() {
        for p in decompose_with_budget(a.seq.middle(), ctx.seed, ctx.budget)?.parts {
            middle.push(json!({"rep": ctx.rep_json(&p.rep)?, "multiplicity": p.multiplicity}));
        }
    }
    let status = if cert.is_valid() { Status::Ok } else { Status::Negative };
    Ok((
        status,
        json!({
            "rep": name,
            "translate": ctx.rep_json(a.x())?,
            "socle_dim": a.socle_dim,
            "sequence": SequenceJson::new(&a.seq, Some((&a.delta, a.space.dim()))),
            "middle_summands": middle,
            "tests": {"count": tests.len(), "exhaustive": exhaustive},
            "certificate": CertificateJson::new(&cert),
        }),
    ))
}

fn arquiver_json(arq: &ArQuiver) -> Value {
    let vertices: Vec<Value> = arq
        .vertices
        .iter()
        .map(|v| {
            json!({
                "name": v.name,
                "dims": v.rep.dims(),
                "projective": v.projective,
                "injective": v.injective,
            })
        })
        .collect();
    let name = |k: usize| arq.vertices[k].name.clone();
    let arrows: Vec<Value> =
        arq.arrows.iter().map(|&(f, t, m)| json!({"from": name(f), "to": name(t), "multiplicity": m})).collect();
    let meshes: Vec<Value> = arq
        .meshes
        .iter()
        .map(|m| {
            let middle: Vec<Value> = m.middle.iter().map(|&(k, c)| json!({"name": name(k), "multiplicity": c})).collect();
            json!({"right": name(m.z), "left": name(m.x), "middle": middle})
        })
        .collect();
    json!({
        "quiver": arq.quiver.name(),
        "count": arq.vertices.len(),
        "vertices": vertices,
        "arrows": arrows,
        "meshes": meshes,
    })
}

fn approx_cmd(ctx: &Ctx, name: &str, subcat: &str, side: SideArg) -> Out {
    let x = ctx.rep(name)?;
    let gens = &ctx.doc.subcat(subcat).map_err(|m| Failure::Usage(format!("{}: {m}", ctx.file)))?.gens;
    let c = ctx.subcat(subcat)?;
    if !c.is_closed() {
        return Ok((Status::Negative, not_closed(&c, gens, subcat)));
    }
    let a = match side {
        SideArg::Right => right_stable_approx(x, &c)?,
        SideArg::Left => left_stable_approx(x, &c)?,
    };
    let summands: Vec<&String> = a.summands.iter().map(|&k| &gens[k]).collect();
    let onto = match a.side {
        ApproxSide::Right => "stable_hom_onto",
        ApproxSide::Left => "stable_hom_onto_dual",
    };
    let status = if a.is_minimal() { Status::Ok } else { Status::Negative };
    Ok((
        status,
        json!({
            "rep": name,
            "subcat": subcat,
            "side": if side == SideArg::Right { "right" } else { "left" },
            "closure": closure_json(&c, gens),
            "summands": summands,
            "object": RepJson::new(&a.source_or_target, None),
            "map": MorphismJson::new(&a.map),
            "checks": {onto: a.surjective, "no_removable_summand": a.no_removable_summand, "stably_minimal": a.stably_minimal},
            "minimal": a.is_minimal(),
        }),
    ))
}

fn subcat_ass_cmd(ctx: &Ctx, name: &str, subcat: &str) -> Out {
    let z = ctx.rep(name)?;
    let gens = &ctx.doc.subcat(subcat).map_err(|m| Failure::Usage(format!("{}: {m}", ctx.file)))?.gens;
    let c = ctx.subcat(subcat)?;
    if !c.is_closed() {
        return Ok((Status::Negative, not_closed(&c, gens, subcat)));
    }
    match subcat_ass(z, &c, ctx.seed)? {
        SubcatOutcome::ExtProjective => Ok((
            Status::Negative,
            json!({
                "rep": name,
                "subcat": subcat,
                "outcome": "ext_projective",
                "reason": format!("{name} is Ext-projective in {subcat}: no almost split sequence ends here"),
            }),
        )),
        SubcatOutcome::Sequence(s) => {
            let summands: Vec<&String> = s.approx.summands.iter().map(|&k| &gens[k]).collect();
            let status = if s.is_valid() { Status::Ok } else { Status::Negative };
            Ok((
                status,
                json!({
                    "rep": name,
                    "subcat": subcat,
                    "outcome": "sequence",
                    "approximation": {"summands": summands, "map": MorphismJson::new(&s.approx.map), "minimal": s.approx.is_minimal()},
                    "sequence": SequenceJson::new(&s.seq, Some((&s.eta, s.space.dim()))),
                    "pushout_injective": s.pushout_injective,
                    "middle_member": s.middle_member,
                    "certificate": CertificateJson::new(&s.certificate),
                }),
            ))
        }
    }
}

fn torsion_cmd(ctx: &Ctx, pair: &str, rep: Option<&str>, transfer: Option<&str>, side: Option<TorsionSideArg>) -> Out {
    let t = ctx.torsion_pair(pair)?;
    if let Some(name) = rep {
        let x = ctx.rep(name)?;
        let c = torsion_canonical_seq(x, &t, ctx.seed)?;
        return Ok((
            Status::Ok,
            json!({
                "pair": pair,
                "rep": name,
                "torsion_part": ctx.rep_json(c.torsion_part())?,
                "free_part": ctx.rep_json(c.free_part())?,
                "sequence": SequenceJson::new(&c.seq, None),
            }),
        ));
    }
    let name = transfer.ok_or_else(|| Failure::Usage("torsion: give --rep or --transfer".into()))?;
    let side = side.ok_or_else(|| Failure::Usage("torsion: --transfer needs --side".into()))?;
    let m = ctx.rep(name)?;
    let (ambient, side_core, side_name) = match side {
        TorsionSideArg::Torsion => (almost_split_sequence(m)?, TorsionSide::Torsion, "torsion"),
        TorsionSideArg::Free => (almost_split_sequence(&trd(m, ctx.seed)?)?, TorsionSide::Free, "free"),
    };
    let tr = torsion_transfer_ass(&ambient.seq, &t, side_core, ctx.seed)?;
    let status = if tr.certificate.is_valid() { Status::Ok } else { Status::Negative };
    Ok((
        status,
        json!({
            "pair": pair,
            "rep": name,
            "side": side_name,
            "ambient": SequenceJson::new(&ambient.seq, Some((&ambient.delta, ambient.space.dim()))),
            "sequence": SequenceJson::new(&tr.seq, None),
            "certificate": CertificateJson::new(&tr.certificate),
        }),
    ))
}

fn verdict_json(v: &DtrVerdict) -> Value {
    let rays: Vec<Value> = v
        .rays
        .iter()
        .map(|r| {
            json!({
                "ray": r.name,
                "ring": r.ring,
                "blocks_equal": r.blocks_equal,
                "connecting_identity": r.connecting_identity,
                "dim": r.dim,
                "holds": r.holds(),
            })
        })
        .collect();
    let mut out = json!({
        "depth": v.depth,
        "certified": v.certified(),
        "presentation_minimal": v.presentation_minimal,
        "rays": rays,
    });
    match &v.kind {
        DtrKind::Finite(r) => {
            out["kind"] = json!("finite");
            out["rep"] = to_value(&RepJson::new(r, None));
        }
        DtrKind::Infinite { name, stable_dim, .. } => {
            out["kind"] = json!("infinite");
            out["ray"] = json!(name);
            out["stable_dim"] = json!(stable_dim);
        }
    }
    out
}

fn inf_dtr_cmd(ctx: &Ctx, name: &str, depth: Option<usize>) -> Out {
    let m = ctx.fprep(name)?;
    let v = match depth {
        Some(d) => dtr_inf_at(m, d, ctx.seed)?,
        None => dtr_inf(m, ctx.seed)?,
    };
    let status = if v.certified() { Status::Ok } else { Status::Undetermined };
    Ok((status, json!({"fprep": name, "verdict": verdict_json(&v)})))
}

fn inf_ass_cmd(ctx: &Ctx, name: &str) -> Out {
    let m = ctx.fprep(name)?;
    match ass_in_rep_plus(m, ctx.seed)? {
        RepPlusOutcome::NoAss { verdict } => {
            let status = if verdict.certified() { Status::Negative } else { Status::Undetermined };
            let reason = match &verdict.kind {
                DtrKind::Infinite { name: ray, .. } => format!("DTr {name} is infinite along ray {ray}: no almost split sequence ends here"),
                DtrKind::Finite(_) => "no almost split sequence".to_string(),
            };
            Ok((status, json!({"fprep": name, "outcome": "no_ass", "reason": reason, "verdict": verdict_json(&verdict)})))
        }
        RepPlusOutcome::Sequence(s) => {
            let status = if s.is_valid() { Status::Ok } else { Status::Negative };
            Ok((
                status,
                json!({
                    "fprep": name,
                    "outcome": "sequence",
                    "depth": s.depth,
                    "sequence": SequenceJson::new(&s.seq, None),
                    "support_inside": s.support_inside,
                    "matches_dtr": s.matches_dtr,
                    "tests": {"count": s.tests, "exhaustive": s.tests_exhaustive},
                    "certificate": CertificateJson::new(&s.certificate),
                }),
            ))
        }
    }
}

fn dispatch(ctx: &Ctx, cmd: &Command, format: Format, out: &mut dyn Write) -> Result<Option<(Status, Value)>, Failure> {
    let r = match cmd {
        Command::Check { .. } => check(ctx)?,
        Command::Decompose { rep, .. } => decompose_cmd(ctx, rep)?,
        Command::Hom { from, to, .. } => hom_cmd(ctx, from, to)?,
        Command::Ext { z, x, .. } => ext_cmd(ctx, z, x)?,
        Command::Dtr { rep, .. } => translate_cmd(ctx, rep, false)?,
        Command::Trd { rep, .. } => translate_cmd(ctx, rep, true)?,
        Command::Ass { rep, verify_against, .. } => ass_cmd(ctx, rep, verify_against.as_deref())?,
        Command::Arquiver { quiver, dot, .. } => {
            let q = ctx.doc.quiver(quiver).map_err(|m| Failure::Usage(format!("{}: {m}", ctx.file)))?;
            let field = ctx
                .doc
                .decls
                .iter()
                .find_map(|d| match d {
                    Decl::Rep(r) if r.over == *quiver => Some(r.prime),
                    _ => None,
                })
                .map_or(Fp::new(DEFAULT_PRIME), Fp::new)?;
            let arq = ar_quiver(q, field, ctx.seed, ctx.ar_cap)?;
            let text = ar_quiver_dot(&arq);
            if let Some(path) = dot {
                std::fs::write(path, &text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            }
            if format == Format::Dot {
                let _ = out.write_all(text.as_bytes());
                return Ok(None);
            }
            (Status::Ok, arquiver_json(&arq))
        }
        Command::Approx { rep, subcat, side, .. } => approx_cmd(ctx, rep, subcat, *side)?,
        Command::SubcatAss { rep, subcat, .. } => subcat_ass_cmd(ctx, rep, subcat)?,
        Command::Torsion { pair, rep, transfer, side, .. } => {
            torsion_cmd(ctx, pair, rep.as_deref(), transfer.as_deref(), *side)?
        }
        Command::InfDtr { fprep, depth, .. } => inf_dtr_cmd(ctx, fprep, *depth)?,
        Command::InfAss { fprep, .. } => inf_ass_cmd(ctx, fprep)?,
    };
    Ok(Some(r))
}

fn emit(env: &Envelope, format: Format, out: &mut dyn Write) {
    let s = match format {
        Format::Text => to_text(env),
        _ => to_json(env),
    };
    let _ = out.write_all(s.as_bytes());
}

/// Runs one invocation with explicit streams; returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let command = cli.command.name();
    if cli.format == Format::Dot && command != "arquiver" {
        let _ = writeln!(err, "--format dot is only available for arquiver");
        return 2;
    }
    let path = cli.command.file();
    let file = path.display().to_string();
    let src = match std::fs::read_to_string(path) {
        Ok(s) => s,
        Err(e) => {
            let _ = writeln!(err, "{file}: {e}");
            return 2;
        }
    };
    let doc = match parse_with_prime(&src, cli.prime) {
        Ok(d) => d,
        Err(e) => {
            let _ = writeln!(err, "{file}:{e}");
            return 2;
        }
    };
    let ctx = Ctx { doc, seed: cli.seed, budget: cli.budget, ar_cap: cli.ar_cap, file: file.clone() };
    match dispatch(&ctx, &cli.command, cli.format, out) {
        Ok(None) => 0,
        Ok(Some((status, result))) => {
            if status != Status::Ok {
                if let Some(reason) = result.get("reason").and_then(Value::as_str) {
                    let _ = writeln!(err, "{file}: {reason}");
                }
            }
            emit(&Envelope { command: command.into(), status, result }, cli.format, out);
            status.exit_code()
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "{msg}");
            2
        }
        Err(Failure::Math(e)) => {
            let code = error_code(&e);
            let _ = writeln!(err, "{file}: {e}");
            if code != 2 {
                let status = if code == 3 { Status::Undetermined } else { Status::Negative };
                let result = json!({"reason": e.to_string()});
                emit(&Envelope { command: command.into(), status, result }, cli.format, out);
            }
            code
        }
    }
}

/// Runs with the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let mut out = stdout.lock();
    let mut err = stderr.lock();
    let code = run_with(argv, &mut out, &mut err);
    let _ = out.flush();
    code
}
