use std::path::PathBuf;

use serde_json::{json, Value};

use super::input::{self, InputDocument, InputError, LieAlgebraDoc, Payload};
use super::report::{matrix_value, subspace_value, vector_value, Report};
use super::{Args, Command};
use crate::conventions::{Conventions, SignLedger};
use crate::error::Error;
use crate::liepoisson::algebra::LieAlgebra;
use crate::liepoisson::algebroid::{is_frame, whitney_point, AlgebroidPointData};
use crate::liepoisson::gstar::{coadjoint_leaf_match, gstar_k, gstar_k_integrability};
use crate::matrix::{is_zero_vec, sub_vec, unit};
use crate::polypoisson::{dirac_type, from_polysymplectic, AxiomVerdict, PolyPoissonPoint};
use crate::polysymplectic::{k_coadjoint_polyform, PolyForm};
use crate::reduction::{cotangent_group, covelocity_principal_local, ReductionProblem, SUBBUNDLE_PROXY_NOTE};
use crate::sampling::Sampler;
use crate::scalar::{Field, Tol};

pub(super) struct Ctx<'a> {
    pub command: &'a Command,
    pub args: &'a Args,
    pub conv: Conventions,
    pub doc: Option<InputDocument>,
    pub base_dir: PathBuf,
}

enum Failure {
    Input(String),
    /// A construction refused the data for a mathematical reason.
    Math(String, Error),
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure::Input(e.to_string())
    }
}

fn classify(label: &str, e: Error) -> Failure {
    match e {
        Error::DimensionMismatch { .. }
        | Error::NotSkew { .. }
        | Error::NotAntisymmetric { .. }
        | Error::Invalid(_)
        | Error::NotInDomain(_)
        | Error::ExactRequired(_) => Failure::Input(e.to_string()),
        other => Failure::Math(label.to_string(), other),
    }
}

trait Ctxt<T> {
    fn at(self, label: &str) -> Result<T, Failure>;
}

impl<T> Ctxt<T> for crate::error::Result<T> {
    fn at(self, label: &str) -> Result<T, Failure> {
        self.map_err(|e| classify(label, e))
    }
}

type Out = Result<(), Failure>;

pub(super) fn execute<T: Field>(ctx: &Ctx, tol: Tol, mut report: Report) -> Report {
    let mut ledger = SignLedger::new();
    let result = match ctx.command {
        Command::CheckPolysymplectic(_) => check_polysymplectic::<T>(ctx, tol, &mut report),
        Command::FromPolysymplectic(_) => from_polysymplectic_cmd::<T>(ctx, tol, &mut report),
        Command::Dirac(_) => dirac::<T>(ctx, tol, &mut report),
        Command::Whitney(_) => whitney::<T>(ctx, tol, &mut report, &mut ledger),
        Command::Gstar(_) => gstar::<T>(ctx, tol, &mut report, &mut ledger),
        Command::Integrability(_) => integrability::<T>(ctx, tol, &mut report),
        Command::OrbitForm(_) => orbit_form::<T>(ctx, tol, &mut report),
        Command::Reduce(_) => reduce::<T>(ctx, tol, &mut report),
        Command::CotangentGroup(_) => cotangent::<T>(ctx, tol, &mut report, &mut ledger),
        Command::PrincipalLocal(_) => principal::<T>(ctx, tol, &mut report, &mut ledger),
        Command::Crosscheck(_) => crosscheck::<T>(ctx, tol, &mut report, &mut ledger),
    };
    report.record_ledger(&ledger);
    match result {
        Ok(()) => report.finish(),
        Err(Failure::Input(msg)) => report.input_error(msg),
        Err(Failure::Math(label, e)) => {
            let witness = match &e {
                Error::Degenerate { witness, .. } | Error::Rejected { witness, .. } => Some(Value::from(witness.clone())),
                _ => None,
            };
            report.check(&label, false, Some(e.to_string()), witness);
            report.finish()
        }
    }
}

fn payload<'a>(ctx: &'a Ctx, want: &str) -> Result<&'a Payload, Failure> {
    match &ctx.doc {
        None => Err(Failure::Input(format!("an input document with payload kind {want} is required"))),
        Some(d) => Ok(&d.payload),
    }
}

fn wrong_kind(p: &Payload, want: &str) -> Failure {
    Failure::Input(format!("at `payload.kind`: expected {want}, found {}", p.kind()))
}

fn polyform_input<T: Field>(ctx: &Ctx, tol: Tol) -> Result<PolyForm<T>, Failure> {
    match payload(ctx, "polyform")? {
        Payload::Polyform(p) => Ok(input::polyform(p, ctx.conv, tol, "payload")?),
        other => Err(wrong_kind(other, "polyform")),
    }
}

fn axiom_checks<T: Field>(report: &mut Report, prefix: &str, v: &AxiomVerdict<T>) {
    report.check(
        &format!("{prefix}axiom i (skewness)"),
        v.axiom_i,
        None,
        v.witness_i.as_ref().map(|w| vector_value(w)),
    );
    report.check(
        &format!("{prefix}pairing antisymmetry"),
        v.antisymmetry,
        None,
        v.witness_antisymmetry.map(|(a, i, j)| json!([a + 1, i + 1, j + 1])),
    );
    report.check(
        &format!("{prefix}axiom ii (weak nondegeneracy)"),
        v.axiom_ii,
        None,
        v.witness_ii.as_ref().map(|w| vector_value(w)),
    );
}

fn point_objects<T: Field>(report: &mut Report, prefix: &str, p: &PolyPoissonPoint<T>) {
    report.object(&format!("{prefix}S"), subspace_value(p.s()));
    report.object(&format!("{prefix}sharp"), matrix_value(p.sharp()));
    report.object(
        &format!("{prefix}characteristic_distribution"),
        subspace_value(&p.characteristic_distribution()),
    );
}

fn polysymplectic_gate<T: Field>(report: &mut Report, omega: &PolyForm<T>) -> bool {
    let v = omega.is_polysymplectic();
    report.check(
        "polysymplectic",
        v.pass,
        Some(format!("common kernel dimension {}", v.kernel_dim)),
        v.witness.as_ref().map(|w| vector_value(w)),
    );
    v.pass
}

fn check_polysymplectic<T: Field>(ctx: &Ctx, tol: Tol, report: &mut Report) -> Out {
    let omega: PolyForm<T> = polyform_input(ctx, tol)?;
    report.check("skew components", true, Some(format!("m = {}, k = {}", omega.m(), omega.k())), None);
    polysymplectic_gate(report, &omega);
    report.object("flat", matrix_value(&omega.flat()));
    report.note("constant coefficients: closedness is automatic");
    Ok(())
}

fn from_polysymplectic_cmd<T: Field>(ctx: &Ctx, tol: Tol, report: &mut Report) -> Out {
    let omega: PolyForm<T> = polyform_input(ctx, tol)?;
    if !polysymplectic_gate(report, &omega) {
        return Ok(());
    }
    let pp = from_polysymplectic(&omega).at("construction")?;
    axiom_checks(report, "", &pp.check_axioms());
    let flat = omega.flat();
    let mut bad = None;
    for i in 0..omega.m() {
        let back = pp.apply(&flat.col(i));
        let e = unit::<T>(omega.m(), i);
        if back.map(|b| !is_zero_vec(&sub_vec(&b, &e), tol)).unwrap_or(true) {
            bad = Some(i + 1);
            break;
        }
    }
    report.check(
        "sharp after flat is the identity",
        bad.is_none(),
        None,
        bad.map(|i| json!({ "basis_vector": i })),
    );
    report.check(
        "characteristic distribution is the whole space",
        pp.characteristic_distribution().is_full(),
        None,
        None,
    );
    point_objects(report, "", &pp);
    Ok(())
}

fn dirac<T: Field>(ctx: &Ctx, tol: Tol, report: &mut Report) -> Out {
    let (omega, d): (PolyForm<T>, _) = match payload(ctx, "dirac")? {
        Payload::Dirac(p) => (
            input::polyform(&p.polyform, ctx.conv, tol, "payload.polyform")?,
            input::subspace(&p.subspace, tol, "payload.subspace")?,
        ),
        other => return Err(wrong_kind(other, "dirac")),
    };
    if d.ambient() != omega.m() {
        return Err(Failure::Input(format!(
            "at `payload.subspace.ambient`: expected {}, found {}",
            omega.m(),
            d.ambient()
        )));
    }
    if !polysymplectic_gate(report, &omega) {
        return Ok(());
    }
    let dp = dirac_type(&omega, &d).at("D meets its polysymplectic orthogonal trivially")?;
    report.check("D meets its polysymplectic orthogonal trivially", true, None, None);
    axiom_checks(report, "", &dp.point.check_axioms());
    let (m, r, k) = (omega.m(), d.dim(), omega.k());
    let expected = r + (m - r) * k;
    report.check(
        "dim S = r + (m - r) k",
        dp.point.s().dim() == expected,
        Some(format!("dim S = {}, r = {r}, m = {m}, k = {k}", dp.point.s().dim())),
        None,
    );
    report.check(
        "characteristic distribution equals D",
        dp.point.characteristic_distribution().same_as(&d),
        None,
        None,
    );
    report.object("D", subspace_value(&d));
    report.object("D_perp", subspace_value(&dp.d_perp));
    point_objects(report, "", &dp.point);
    Ok(())
}

fn builtin<T: Field>(name: &str, conv: Conventions) -> Option<LieAlgebra<T>> {
    match name {
        "so3" => Some(LieAlgebra::so3(conv)),
        "heisenberg3" | "h3" => Some(LieAlgebra::heisenberg3(conv)),
        "sl2" => Some(LieAlgebra::sl2(conv)),
        "non_jacobi" => Some(LieAlgebra::non_jacobi(conv)),
        _ => {
            let n = name.strip_prefix("abelian")?.trim_start_matches('_');
            n.parse().ok().filter(|&n| n > 0).map(|n| LieAlgebra::abelian(n, conv))
        }
    }
}

fn algebra_from_ref<T: Field>(reference: &str, base: &PathBuf, conv: Conventions, tol: Tol) -> Result<LieAlgebra<T>, Failure> {
    let candidates = [PathBuf::from(reference), base.join(reference)];
    for path in candidates.iter() {
        if path.is_file() {
            let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            let doc = input::parse_document(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            return match &doc.payload {
                Payload::LieAlgebra(a) => Ok(input::lie_algebra(a, conv, tol, "payload")?),
                other => Err(Failure::Input(format!(
                    "{}: expected payload kind lie_algebra, found {}",
                    path.display(),
                    other.kind()
                ))),
            };
        }
    }
    builtin(reference, conv)
        .map(|g: LieAlgebra<T>| g.with_tol(tol))
        .ok_or_else(|| Failure::Input(format!("--algebra: {reference:?} is neither a file nor a bundled algebra")))
}

fn inline_algebra<T: Field>(doc: &LieAlgebraDoc, conv: Conventions, tol: Tol, path: &str) -> Result<LieAlgebra<T>, Failure> {
    Ok(input::lie_algebra(doc, conv, tol, path)?)
}

/// Algebra from `--algebra`, a `lie_algebra` payload or a `gstar` payload.
fn algebra<T: Field>(ctx: &Ctx, tol: Tol) -> Result<LieAlgebra<T>, Failure> {
    if let Some(r) = &ctx.args.algebra {
        return algebra_from_ref(r, &PathBuf::from("."), ctx.conv, tol);
    }
    match ctx.doc.as_ref().map(|d| &d.payload) {
        Some(Payload::LieAlgebra(a)) => inline_algebra(a, ctx.conv, tol, "payload"),
        Some(Payload::Gstar(g)) => match (&g.algebra, &g.algebra_ref) {
            (Some(a), _) => inline_algebra(a, ctx.conv, tol, "payload.algebra"),
            (None, Some(r)) => algebra_from_ref(r, &ctx.base_dir, ctx.conv, tol),
            (None, None) => Err(Failure::Input("at `payload`: gstar needs algebra or algebra_ref".into())),
        },
        Some(other) => Err(wrong_kind(other, "lie_algebra or gstar")),
        None => Err(Failure::Input("no algebra given: pass --algebra or an input document".into())),
    }
}

/// Momenta from `--mu` or the `gstar` payload, checked against `--k`.
fn momenta<T: Field>(ctx: &Ctx, n: usize) -> Result<Vec<Vec<T>>, Failure> {
    let mus: Vec<Vec<T>> = match (&ctx.args.mu, ctx.doc.as_ref().map(|d| &d.payload)) {
        (Some(text), _) => input::vector_list(text, "--mu")?,
        (None, Some(Payload::Gstar(g))) => g
            .mu
            .iter()
            .enumerate()
            .map(|(i, v)| input::vector(v, n, &format!("payload.mu[{i}]")))
            .collect::<Result<_, _>>()?,
        _ => return Err(Failure::Input("no momenta given: pass --mu".into())),
    };
    if mus.is_empty() {
        return Err(Failure::Input("--mu: need at least one covector".into()));
    }
    for (i, mu) in mus.iter().enumerate() {
        if mu.len() != n {
            return Err(Failure::Input(format!("--mu[{i}]: expected {n} entries, found {}", mu.len())));
        }
    }
    let k = ctx.args.k.or(match ctx.doc.as_ref().map(|d| &d.payload) {
        Some(Payload::Gstar(g)) => g.k,
        _ => None,
    });
    if let Some(k) = k {
        if k != mus.len() {
            return Err(Failure::Input(format!("--k = {k} but {} momenta were given", mus.len())));
        }
    }
    Ok(mus)
}

fn compare_points<T: Field>(
    report: &mut Report,
    ledger: &mut SignLedger,
    label: &str,
    ours: &PolyPoissonPoint<T>,
    theirs: &PolyPoissonPoint<T>,
) {
    match ours.relation_to(theirs) {
        None => report.check(&format!("{label}: same S"), false, None, None),
        Some(rel) => {
            report.check(&format!("{label}: same S"), true, None, None);
            let r = ledger.observe(label, rel);
            report.check(
                &format!("{label}: sharp maps agree up to sigma"),
                r.is_ok(),
                r.err().map(|e| e.to_string()),
                None,
            );
        }
    }
}

fn whitney<T: Field>(ctx: &Ctx, tol: Tol, report: &mut Report, ledger: &mut SignLedger) -> Out {
    let doc = match payload(ctx, "algebroid_point")? {
        Payload::AlgebroidPoint(a) => a,
        other => return Err(wrong_kind(other, "algebroid_point")),
    };
    let data: AlgebroidPointData<T> = input::algebroid(doc, tol, "payload")?;
    let (m, n) = (data.base_dim(), data.fiber_dim());
    let fiber: Vec<Vec<T>> = match (&ctx.args.mu, &doc.fiber) {
        (Some(text), _) => input::vector_list(text, "--mu")?,
        (None, Some(rows)) => rows
            .iter()
            .enumerate()
            .map(|(i, r)| input::vector(r, n, &format!("payload.fiber[{i}]")))
            .collect::<Result<_, _>>()?,
        (None, None) => return Err(Failure::Input("no fiber point: pass --mu or payload.fiber".into())),
    };
    if fiber.is_empty() || fiber.iter().any(|p| p.len() != n) {
        return Err(Failure::Input(format!("fiber point needs k >= 1 covectors of length {n}")));
    }
    let k = fiber.len();
    let sv = data.structure_equations_check();
    report.check(
        "anchor structure equation",
        sv.anchor_equation,
        None,
        sv.anchor_witness.map(|w| json!(w.map(|i| i + 1))),
    );
    report.check(
        "cyclic structure equation",
        sv.cyclic_equation,
        None,
        sv.cyclic_witness.map(|w| json!(w.map(|i| i + 1))),
    );
    let wp = whitney_point(&data, &fiber, ctx.conv).at("Whitney construction")?;
    axiom_checks(report, "", &wp.point.check_axioms());
    report.check(
        "dim S = mk + n",
        wp.point.s().dim() == m * k + n,
        Some(format!("dim S = {}, m = {m}, k = {k}, n = {n}", wp.point.s().dim())),
        None,
    );
    report.check("commutators of fibre generators", wp.commutators.fibre_fibre, None, None);
    report.check("commutators of fibre and mixed generators", wp.commutators.fibre_mixed, None, None);
    report.check("commutators of mixed generators", wp.commutators.mixed_mixed, None, None);
    if k == n {
        let frame = is_frame(&data, &fiber).at("frame test")?;
        report.object("frame", Value::from(frame));
    }
    if let Some(target) = &ctx.args.crosscheck {
        match target.as_str() {
            "canonical" => {
                if n != m {
                    return Err(Failure::Input("--crosscheck canonical needs n = m".into()));
                }
                let canon = from_polysymplectic(&PolyForm::canonical_covelocity(m, k, tol, ctx.conv)).at("canonical")?;
                compare_points(report, ledger, "whitney vs canonical covelocity", &wp.point, &canon);
            }
            other => return Err(Failure::Input(format!("--crosscheck: unknown target {other:?} for whitney (canonical)"))),
        }
    }
    point_objects(report, "", &wp.point);
    Ok(())
}

fn gstar<T: Field>(ctx: &Ctx, tol: Tol, report: &mut Report, ledger: &mut SignLedger) -> Out {
    let g: LieAlgebra<T> = algebra(ctx, tol)?;
    let mus = momenta(ctx, g.dim())?;
    let k = mus.len();
    let pp = gstar_k(&g, &mus).at("gstar construction")?;
    axiom_checks(report, "", &pp.check_axioms());
    if T::EXACT {
        let iv = gstar_k_integrability(&g, k).at("integrability")?;
        report.check(
            "integrability identity",
            iv.pass,
            Some(format!("{} basis pairs", iv.pairs_checked)),
            iv.witness.map(|w| json!(w.map(|i| i + 1))),
        );
    } else {
        report.note("integrability identity skipped: it is only checked in exact mode");
    }
    let lm = coadjoint_leaf_match(&g, &mus).at("leaf form")?;
    report.check(
        "leaf form matches the k-coadjoint orbit form",
        lm.pass,
        Some(format!("leaf dimension {}", lm.leaf.tangent.dim())),
        None,
    );
    if let Some(target) = &ctx.args.crosscheck {
        match target.as_str() {
            "whitney" => {
                let wp = whitney_point(&AlgebroidPointData::over_point(&g), &mus, ctx.conv).at("Whitney construction")?;
                compare_points(report, ledger, "gstar vs whitney over a point", &pp, &wp.point);
            }
            "cotangent-group" => {
                let cg = cotangent_group(&g, &mus, &[]).at("cotangent reduction")?;
                compare_points(report, ledger, "gstar vs cotangent reduction", &pp, &cg.reduced.point);
            }
            other => {
                return Err(Failure::Input(format!(
                    "--crosscheck: unknown target {other:?} for gstar (whitney, cotangent-group)"
                )))
            }
        }
    }
    point_objects(report, "", &pp);
    Ok(())
}

fn integrability<T: Field>(ctx: &Ctx, tol: Tol, report: &mut Report) -> Out {
    if !T::EXACT {
        return Err(Failure::Input("integrability checks require --scalar exact".into()));
    }
    let g: LieAlgebra<T> = algebra(ctx, tol)?;
    let ks: Vec<usize> = match (ctx.args.k, ctx.doc.as_ref().map(|d| &d.payload)) {
        (Some(k), _) => vec![k],
        (None, Some(Payload::Gstar(p))) if p.k.is_some() => vec![p.k.unwrap_or(1)],
        _ => vec![1, 2, 3],
    };
    if ks.contains(&0) {
        return Err(Failure::Input("--k must be at least 1".into()));
    }
    let jv = g.jacobi_check();
    report.check(
        "Jacobi identity",
        jv.pass,
        jv.residual.as_ref().map(|r| format!("cyclic sum component {r}")),
        jv.witness.map(|w| json!(w.map(|i| i + 1))),
    );
    for k in ks {
        let iv = gstar_k_integrability(&g, k).at("integrability")?;
        report.check(
            &format!("integrability identity (k = {k})"),
            iv.pass,
            Some(format!("{} basis pairs", iv.pairs_checked)),
            iv.witness.map(|w| json!({ "basis_pair": w.map(|i| i + 1) })),
        );
    }
    report.object("brackets", bracket_value(&g));
    Ok(())
}

fn bracket_value<T: Field>(g: &LieAlgebra<T>) -> Value {
    Value::from(
        g.bracket_table()
            .into_iter()
            .map(|(a, b, c, v)| json!([a + 1, b + 1, c + 1, v.render()]))
            .collect::<Vec<_>>(),
    )
}

fn orbit_form<T: Field>(ctx: &Ctx, tol: Tol, report: &mut Report) -> Out {
    let g: LieAlgebra<T> = algebra(ctx, tol)?;
    let mus = momenta(ctx, g.dim())?;
    let orbit = k_coadjoint_polyform(&g, &mus).at("orbit form")?;
    let nondeg = orbit.form.m() == 0 || orbit.form.is_polysymplectic().pass;
    report.check("orbit form is polysymplectic", nondeg, Some(format!("orbit dimension {}", orbit.tangent.dim())), None);
    let lm = coadjoint_leaf_match(&g, &mus).at("leaf form")?;
    report.check("leaf form of (g*)^k matches", lm.pass, None, None);
    report.object("tangent", subspace_value(&orbit.tangent));
    report.object(
        "preimages",
        Value::from(orbit.preimages.iter().map(|p| vector_value(p)).collect::<Vec<_>>()),
    );
    report.object(
        "forms",
        Value::from(orbit.form.forms().iter().map(matrix_value).collect::<Vec<_>>()),
    );
    Ok(())
}

fn reduce<T: Field>(ctx: &Ctx, tol: Tol, report: &mut Report) -> Out {
    let doc = match payload(ctx, "reduction")? {
        Payload::Reduction(r) => r,
        other => return Err(wrong_kind(other, "reduction")),
    };
    let omega: PolyForm<T> = input::polyform(&doc.polyform, ctx.conv, tol, "payload.polyform")?;
    let w = input::subspace(&doc.w, tol, "payload.w")?;
    let samples = doc
        .samples
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let p = format!("payload.samples[{i}]");
            Ok((
                input::polyform(&s.polyform, ctx.conv, tol, &format!("{p}.polyform"))?,
                input::subspace(&s.w, tol, &format!("{p}.w"))?,
            ))
        })
        .collect::<Result<Vec<_>, Failure>>()?;
    if !polysymplectic_gate(report, &omega) {
        return Ok(());
    }
    let problem = ReductionProblem::new(omega, w, samples).at("reduction problem")?;
    let h = problem.check_hypotheses().at("hypotheses")?;
    report.check(
        "hypothesis i (constant dimension of S and (W annihilator)^k)",
        h.hyp_i,
        Some(format!("dimensions {:?}", h.dims)),
        h.offending_sample.map(|j| json!({ "sample": j + 1 })),
    );
    report.check(
        "hypothesis ii",
        h.hyp_ii,
        None,
        h.witness_ii.as_ref().map(|w| {
            json!({
                "vector": vector_value(w),
                "at": match h.hyp_ii_location.flatten() {
                    None => "base point".to_string(),
                    Some(j) => format!("sample {}", j + 1),
                },
            })
        }),
    );
    report.note(SUBBUNDLE_PROXY_NOTE);
    if !h.pass() {
        return Ok(());
    }
    let red = problem.reduce().at("reduction")?;
    axiom_checks(report, "reduced ", &red.point.check_axioms());
    report.check("image of reduced sharp equals Q(W-perp)", red.image_identity, None, None);
    report.object(
        "quotient_coordinates",
        Value::from(red.quotient.free_columns.iter().map(|i| i + 1).collect::<Vec<_>>()),
    );
    report.object("projection", matrix_value(&red.quotient.projection));
    report.object("projected_w_perp", subspace_value(&red.projected_orthogonal));
    point_objects(report, "reduced_", &red.point);
    Ok(())
}

fn random_momenta<T: Field>(sampler: &mut Sampler, n: usize, k: usize, count: usize) -> Vec<Vec<Vec<T>>> {
    (0..count).map(|_| sampler.momenta(n, k)).collect()
}

fn cotangent<T: Field>(ctx: &Ctx, tol: Tol, report: &mut Report, ledger: &mut SignLedger) -> Out {
    let g: LieAlgebra<T> = algebra(ctx, tol)?;
    let mus = momenta(ctx, g.dim())?;
    let mut sampler = Sampler::new(ctx.args.seed);
    let samples = random_momenta(&mut sampler, g.dim(), mus.len(), ctx.args.samples.unwrap_or(0));
    let cg = cotangent_group(&g, &mus, &samples).at("cotangent reduction")?;
    let h = &cg.hypotheses;
    report.check(
        "hypothesis i (constant dimension of S and (W annihilator)^k)",
        h.hyp_i,
        Some(format!("{} points", h.dims.len())),
        h.offending_sample.map(|j| json!({ "sample": j + 1 })),
    );
    report.check("hypothesis ii", h.hyp_ii, None, h.witness_ii.as_ref().map(|w| vector_value(w)));
    let d = &cg.diagnostics;
    report.check("S and (W annihilator)^k meet in the diagonal", d.diagonal_intersection, None, None);
    report.check("triple intersection is the isotropy diagonal", d.isotropy_intersection, None, None);
    report.check("W-perp is the graph of the coadjoint generators", d.orthogonal_graph, None, None);
    axiom_checks(report, "reduced ", &cg.reduced.point.check_axioms());
    report.check("image of reduced sharp equals Q(W-perp)", cg.reduced.image_identity, None, None);
    if let Some(target) = &ctx.args.crosscheck {
        match target.as_str() {
            "gstar" => {
                let gs = gstar_k(&g, &mus).at("gstar construction")?;
                compare_points(report, ledger, "cotangent reduction vs gstar", &cg.reduced.point, &gs);
            }
            other => return Err(Failure::Input(format!("--crosscheck: unknown target {other:?} for cotangent-group (gstar)"))),
        }
    }
    report.note(SUBBUNDLE_PROXY_NOTE);
    point_objects(report, "reduced_", &cg.reduced.point);
    Ok(())
}

fn principal<T: Field>(ctx: &Ctx, tol: Tol, report: &mut Report, ledger: &mut SignLedger) -> Out {
    let g: LieAlgebra<T> = algebra(ctx, tol)?;
    let mus = momenta(ctx, g.dim())?;
    let m_base = ctx.args.m_base.unwrap_or(1);
    let base: Vec<Vec<T>> = match &ctx.args.point {
        Some(text) => input::vector_list(text, "--point")?,
        None => vec![vec![T::zero(); m_base]; mus.len()],
    };
    if base.len() != mus.len() || base.iter().any(|p| p.len() != m_base) {
        return Err(Failure::Input(format!(
            "--point: need {} covectors of length {m_base}",
            mus.len()
        )));
    }
    let pl = covelocity_principal_local(&g, m_base, &base, &mus).at("principal reduction")?;
    axiom_checks(report, "reduced ", &pl.reduced.point.check_axioms());
    report.check("image of reduced sharp equals Q(W-perp)", pl.reduced.image_identity, None, None);
    compare_points(report, ledger, "principal reduction vs Atiyah whitney", &pl.reduced.point, &pl.whitney);
    if let Some(f) = pl.frame {
        report.object("frame", Value::from(f));
    }
    report.note("comparison target: trivialized Atiyah algebroid (anchor = base projection, brackets = constants of g)");
    point_objects(report, "reduced_", &pl.reduced.point);
    Ok(())
}

const CROSSCHECK_TARGETS: [&str; 4] = ["canonical", "gstar", "whitney-gstar", "principal"];

fn crosscheck<T: Field>(ctx: &Ctx, tol: Tol, report: &mut Report, ledger: &mut SignLedger) -> Out {
    let targets: Vec<&str> = match ctx.args.crosscheck.as_deref() {
        None | Some("all") => CROSSCHECK_TARGETS.to_vec(),
        Some(t) if CROSSCHECK_TARGETS.contains(&t) => vec![t],
        Some(t) => {
            return Err(Failure::Input(format!(
                "--crosscheck: unknown target {t:?} (all, {})",
                CROSSCHECK_TARGETS.join(", ")
            )))
        }
    };
    let algebras: Vec<(String, LieAlgebra<T>)> = match &ctx.args.algebra {
        Some(r) => vec![(r.clone(), algebra_from_ref(r, &PathBuf::from("."), ctx.conv, tol)?)],
        None => ["so3", "heisenberg3", "abelian3", "sl2"]
            .iter()
            .map(|n| (n.to_string(), builtin::<T>(n, ctx.conv).expect("bundled").with_tol(tol)))
            .collect(),
    };
    let samples = ctx.args.samples.unwrap_or(5);
    let mut sampler = Sampler::new(ctx.args.seed);
    for target in targets {
        let mut runs = 0;
        let mut failure: Option<String> = None;
        let mut note = |label: String, ours: &PolyPoissonPoint<T>, theirs: &PolyPoissonPoint<T>, ledger: &mut SignLedger, failure: &mut Option<String>| {
            runs += 1;
            if failure.is_some() {
                return;
            }
            *failure = match ours.relation_to(theirs) {
                None => Some(format!("{label}: S differs")),
                Some(rel) => ledger.observe(target, rel).err().map(|e| format!("{label}: {e}")),
            };
        };
        match target {
            "canonical" => {
                for m in 1..=3 {
                    for k in 1..=3 {
                        for _ in 0..samples {
                            let fiber = sampler.momenta::<T>(m, k);
                            let wp = whitney_point(&AlgebroidPointData::trivial_tangent(m, tol), &fiber, ctx.conv)
                                .at("Whitney construction")?;
                            let canon = from_polysymplectic(&PolyForm::canonical_covelocity(m, k, tol, ctx.conv))
                                .at("canonical")?;
                            note(format!("m = {m}, k = {k}"), &wp.point, &canon, ledger, &mut failure);
                        }
                    }
                }
            }
            "gstar" | "whitney-gstar" => {
                for (name, g) in &algebras {
                    for k in 1..=3 {
                        for _ in 0..samples {
                            let mus = sampler.momenta::<T>(g.dim(), k);
                            let gs = gstar_k(g, &mus).at("gstar construction")?;
                            let other = if target == "gstar" {
                                let cg = cotangent_group(g, &mus, &[]).at("cotangent reduction")?;
                                if !cg.diagnostics.pass() || !cg.reduced.image_identity {
                                    failure.get_or_insert(format!("{name}, k = {k}: diagnostics failed"));
                                }
                                cg.reduced.point
                            } else {
                                whitney_point(&AlgebroidPointData::over_point(g), &mus, ctx.conv)
                                    .at("Whitney construction")?
                                    .point
                            };
                            note(format!("{name}, k = {k}"), &other, &gs, ledger, &mut failure);
                        }
                    }
                }
            }
            _ => {
                for (name, g) in &algebras {
                    for m_base in 0..=2 {
                        for _ in 0..samples {
                            let k = sampler.usize(1, 2);
                            let mus = sampler.momenta::<T>(g.dim(), k);
                            let base = sampler.momenta::<T>(m_base, k);
                            let pl = covelocity_principal_local(g, m_base, &base, &mus).at("principal reduction")?;
                            note(format!("{name}, m_base = {m_base}"), &pl.reduced.point, &pl.whitney, ledger, &mut failure);
                        }
                    }
                }
            }
        }
        report.check(
            &format!("crosscheck {target}"),
            failure.is_none(),
            Some(failure.clone().unwrap_or_else(|| format!("{runs} comparisons"))),
            None,
        );
    }
    report.note(format!("samples per configuration: {samples}, seed {}", ctx.args.seed));
    Ok(())
}
