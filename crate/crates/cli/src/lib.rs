//! Dispatch for the `quadmod` command-line tool.
//!
//! Every verb reads named objects from a parsed [`Bundle`] and produces a
//! report plus, for constructions, a result bundle. Reports come in a text
//! form and a machine form (canonical JSON).

use quadmod::bundle::write_canonical;
use quadmod::coset::{max_cosets_from_env, CosetLimits};
use quadmod::induced::{
    adjunction_count, cokernel, epi_oracle_check, induce_nil2_epi, induce_nil2_general, induce_nil2_mono, induce_quad_epi,
    induce_quad_general, induced_presentation, SampleReport,
};
use quadmod::pullback::{pullback_nil2, pullback_quad};
use quadmod::quadratic::{check_quadratic, from_nil2, to_crossed_complex};
use quadmod::{
    abelian_invariants, classify, enumerate_homs, tensor_square, tensor_square_order, verify_quadratic, Bundle, Error, HomBound,
    Nil2Module, QuadraticMorphism, VerificationReport,
};
use serde_json::{json, Map, Value};

pub const VERBS: [&str; 12] = [
    "verify",
    "classify",
    "from-nil2",
    "to-crossed-complex",
    "pullback-nil2",
    "pullback-quad",
    "induce-nil2",
    "induce-quad",
    "cokernel",
    "tensor",
    "homs",
    "adjunction-check",
];

/// Largest tensor square the `tensor` verb will tabulate.
pub const MAX_TENSOR_ORDER: usize = 4096;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub format: Format,
    /// Bound on both groups of an exhaustive hom search.
    pub max_order: usize,
    pub max_cosets: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            format: Format::Text,
            max_order: HomBound::default().max_source,
            max_cosets: max_cosets_from_env(),
            samples: 2000,
            seed: 0,
        }
    }
}

impl Options {
    fn hom_bound(&self) -> HomBound {
        HomBound::square(self.max_order)
    }

    fn coset_limits(&self) -> CosetLimits {
        CosetLimits {
            max_cosets: self.max_cosets,
            ..CosetLimits::default()
        }
    }
}

/// Result of one command: exit status, report and optional result bundle.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub verb: String,
    pub status: i32,
    pub lines: Vec<String>,
    pub fields: Map<String, Value>,
    pub bundle: Option<Bundle>,
}

impl Outcome {
    fn new(verb: &str) -> Outcome {
        Outcome {
            verb: verb.to_string(),
            status: EXIT_OK,
            lines: Vec::new(),
            fields: Map::new(),
            bundle: None,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    fn field(&mut self, key: &str, v: Value) {
        self.fields.insert(key.to_string(), v);
    }

    fn fail(&mut self) {
        self.status = self.status.max(EXIT_FAILURE);
    }

    /// Outcome for an error raised before dispatch, e.g. a parse error.
    pub fn from_error(verb: &str, err: &Error, status: i32) -> Outcome {
        let mut out = Outcome::new(verb);
        out.status = status;
        record_error(&mut out, err);
        out
    }

    pub fn usage(verb: &str, message: &str) -> Outcome {
        let mut out = Outcome::new(verb);
        out.status = EXIT_USAGE;
        out.line(format!("error: usage: {message}"));
        out.field("error", json!({ "kind": "Usage", "message": message }));
        out
    }

    fn status_name(&self) -> &'static str {
        match self.status {
            EXIT_OK => "ok",
            EXIT_FAILURE => "fail",
            _ => "error",
        }
    }

    /// Renders the report; the result bundle is embedded when `embed` is set.
    pub fn render(&self, format: Format, embed: bool) -> String {
        match format {
            Format::Text => {
                let mut s = String::new();
                for l in &self.lines {
                    s.push_str(l);
                    s.push('\n');
                }
                if let (true, Some(b)) = (embed, &self.bundle) {
                    s.push_str(&b.to_canonical_string());
                }
                s
            }
            Format::Machine => {
                let mut top = Map::new();
                top.insert("verb".into(), json!(self.verb));
                top.insert("status".into(), json!(self.status_name()));
                top.insert("exit".into(), json!(self.status));
                top.insert("result".into(), Value::Object(self.fields.clone()));
                if let (true, Some(b)) = (embed, &self.bundle) {
                    let v: Value = serde_json::from_str(&b.to_canonical_string()).expect("canonical bundle is JSON");
                    top.insert("bundle".into(), v);
                }
                let mut s = String::new();
                write_canonical(&Value::Object(top), 0, &mut s);
                s.push('\n');
                s
            }
        }
    }
}

pub fn error_kind(err: &Error) -> &'static str {
    match err {
        Error::MalformedTable(_) => "MalformedTable",
        Error::NotAssociative { .. } => "NotAssociative",
        Error::NoIdentity => "NoIdentity",
        Error::NoInverse { .. } => "NoInverse",
        Error::NotHomomorphism { .. } => "NotHomomorphism",
        Error::NotAction(_) => "NotAction",
        Error::NotNormal { .. } => "NotNormal",
        Error::NotAbelian { .. } => "NotAbelian",
        Error::BoundExceeded(_) => "BoundExceeded",
        Error::TypeMismatch(_) => "TypeMismatch",
        Error::NotEquivariant { .. } => "NotEquivariant",
        Error::NotNil2 { .. } => "NotNil2",
        Error::NotWellDefined(_) => "NotWellDefined",
        Error::AxiomFailure(_) => "AxiomFailure",
        Error::PreconditionFailure { .. } => "PreconditionFailure",
        Error::OmegaNotTrivial { .. } => "OmegaNotTrivial",
        Error::DerivedPropertyFailure(_) => "DerivedPropertyFailure",
        Error::NotMonomorphism { .. } => "NotMonomorphism",
        Error::NotEpimorphism { .. } => "NotEpimorphism",
        Error::NotMorphism(_) => "NotMorphism",
        Error::NoFactorization(_) => "NoFactorization",
        Error::NonUnique { .. } => "NonUnique",
        Error::NotComputable(_) => "NotComputable",
        Error::SyntaxError { .. } => "SyntaxError",
        Error::UnresolvedReference(_) => "UnresolvedReference",
        Error::UnsupportedVersion(_) => "UnsupportedVersion",
    }
}

fn error_witness(err: &Error) -> Value {
    match err {
        Error::NotAssociative { a, b, c } => json!([a, b, c]),
        Error::NoInverse { element } => json!([element]),
        Error::NotHomomorphism { a, b } | Error::NotAbelian { a, b } => json!([a, b]),
        Error::NotNormal { n, g } => json!([n, g]),
        Error::NotEquivariant { m, q } => json!([m, q]),
        Error::NotNil2 { x, y, z } => json!([x, y, z]),
        Error::OmegaNotTrivial { element } => json!([element]),
        Error::NotMonomorphism { kernel_element } => json!([kernel_element]),
        Error::NotEpimorphism { missing } => json!([missing]),
        Error::NonUnique { candidates } => json!([candidates]),
        Error::SyntaxError { line, column, .. } => json!([line, column]),
        Error::AxiomFailure(report) => report_value(report),
        _ => Value::Null,
    }
}

fn record_error(out: &mut Outcome, err: &Error) {
    let kind = error_kind(err);
    match err {
        Error::AxiomFailure(report) => {
            out.line(format!("error: {kind}"));
            out.lines.extend(report.to_string().lines().map(str::to_string));
        }
        _ => out.line(format!("error: {kind}: {err}")),
    }
    out.field(
        "error",
        json!({ "kind": kind, "message": err.to_string(), "witness": error_witness(err) }),
    );
}

/// Usage-level errors exit 2; every other failure exits 1.
fn status_for(err: &Error) -> i32 {
    match err {
        Error::TypeMismatch(_)
        | Error::SyntaxError { .. }
        | Error::UnresolvedReference(_)
        | Error::UnsupportedVersion(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

fn report_value(r: &VerificationReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn report_lines(out: &mut Outcome, r: &VerificationReport) {
    if r.passed() {
        let names: Vec<&str> = r.axioms.iter().map(|a| a.axiom.as_str()).collect();
        match (names.first(), names.last()) {
            (Some(a), Some(b)) if names.len() > 1 => out.line(format!("{a}..{b}: pass")),
            _ => out.line(format!("{}: pass", names.join(", "))),
        }
    } else {
        out.lines.extend(r.to_string().lines().map(str::to_string));
    }
}

fn sample_lines(out: &mut Outcome, r: &SampleReport) {
    out.line(format!("sampled laws: {} samples, {} violations", r.samples, r.violations()));
    for l in &r.laws {
        out.line(format!("  {}: {} checked, {} violations", l.law, l.checked, l.violations));
    }
    out.field("samples", serde_json::to_value(r).expect("sample report serializes"));
    if !r.passed() {
        out.fail();
    }
}

enum Failure {
    Usage(String),
    Module(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        Failure::Module(e)
    }
}

/// Runs `verb` on `names` inside `bundle`. Never panics on bad input.
pub fn run_command(verb: &str, names: &[String], bundle: &Bundle, opts: &Options) -> Outcome {
    let mut out = Outcome::new(verb);
    match dispatch(verb, names, bundle, opts, &mut out) {
        Ok(()) => out,
        Err(Failure::Usage(msg)) => Outcome::usage(verb, &msg),
        Err(Failure::Module(e)) => {
            out.status = status_for(&e);
            record_error(&mut out, &e);
            out
        }
    }
}

fn arity(verb: &str, names: &[String], want: &[&str]) -> Result<(), Failure> {
    if names.len() != want.len() {
        return Err(Failure::Usage(format!(
            "{verb} expects {} object names ({}), got {}",
            want.len(),
            want.join(" "),
            names.len()
        )));
    }
    Ok(())
}

fn objects_of_kind(bundle: &Bundle, kind: &str, names: &[String]) -> Vec<String> {
    if names.is_empty() {
        bundle
            .names()
            .filter(|n| bundle.kind_of(n) == Some(kind))
            .map(str::to_string)
            .collect()
    } else {
        names.to_vec()
    }
}

fn dispatch(verb: &str, names: &[String], bundle: &Bundle, opts: &Options, out: &mut Outcome) -> Result<(), Failure> {
    let mut result = Bundle::new();
    match verb {
        "verify" => {
            let targets = objects_of_kind(bundle, "quadmod", names);
            if targets.is_empty() {
                return Err(Failure::Usage("bundle contains no quadmod object".into()));
            }
            let mut reports = Map::new();
            for name in &targets {
                let (report, _) = check_quadratic(bundle.quadratic(name)?)?;
                if targets.len() > 1 {
                    out.line(format!("{name}:"));
                }
                report_lines(out, &report);
                if !report.passed() {
                    out.fail();
                }
                reports.insert(name.clone(), report_value(&report));
            }
            out.field("reports", Value::Object(reports));
            return Ok(());
        }
        "classify" => {
            let targets = objects_of_kind(bundle, "precrossed", names);
            if targets.is_empty() {
                return Err(Failure::Usage("bundle contains no precrossed object".into()));
            }
            let mut map = Map::new();
            for name in &targets {
                let c = classify(&bundle.precrossed(name)?);
                let line = match &c {
                    quadmod::Classification::Crossed => format!("{name}: Crossed"),
                    quadmod::Classification::Nil2NotCrossed { witness } => {
                        format!("{name}: Nil2NotCrossed, Peiffer commutator nontrivial at {witness:?}")
                    }
                    quadmod::Classification::NotNil2 { witness, bracket } => {
                        format!("{name}: NotNil2, {bracket:?} bracket nontrivial at {witness:?}")
                    }
                };
                out.line(line);
                map.insert(name.clone(), serde_json::to_value(&c).expect("classification serializes"));
            }
            out.field("classification", Value::Object(map));
            return Ok(());
        }
        "from-nil2" => {
            arity(verb, names, &["PRECROSSED"])?;
            let n = Nil2Module::new(bundle.precrossed(&names[0])?)?;
            let q = from_nil2(&n)?;
            out.line(format!("orders C2 C1 C0: {:?}", q.order_profile()));
            out.line("QM1..QM4: pass");
            out.field("orders", json!(q.order_profile()));
            result.insert_quadratic("result", q.candidate());
        }
        "to-crossed-complex" => {
            arity(verb, names, &["QUADMOD"])?;
            let q = verify_quadratic(bundle.quadratic(&names[0])?)?;
            let cc = to_crossed_complex(&q)?;
            out.line(format!("crossed complex with orders {:?}", q.order_profile()));
            out.field("orders", json!(q.order_profile()));
            result.insert_hom("complex.d1", &cc.d1);
            result.insert_hom("complex.d2", &cc.d2);
            result.insert_action("complex.act1", &cc.act1);
            result.insert_action("complex.act2", &cc.act2);
        }
        "pullback-nil2" => {
            arity(verb, names, &["PRECROSSED", "SIGMA"])?;
            let n = Nil2Module::new(bundle.precrossed(&names[0])?)?;
            let pb = pullback_nil2(&n, &bundle.hom(&names[1])?)?;
            let order = pb.group().order();
            out.line(format!("pullback order {order}"));
            out.line(format!("classification: {}", classify(pb.result.precrossed()).name()));
            out.field("order", json!(order));
            result.insert_precrossed("pullback", pb.result.precrossed());
            result.insert_hom("pullback.proj_m", &pb.proj_m);
        }
        "pullback-quad" => {
            arity(verb, names, &["QUADMOD", "SIGMA"])?;
            let q = verify_quadratic(bundle.quadratic(&names[0])?)?;
            let sigma = bundle.hom(&names[1])?;
            if let Some(kernel_element) = sigma.kernel_witness() {
                return Err(Error::NotMonomorphism { kernel_element }.into());
            }
            let pq = pullback_quad(&q, &sigma)?;
            out.line(format!("orders C2 C1 C0: {:?}", pq.result.order_profile()));
            out.line("QM1..QM4: pass");
            out.field("orders", json!(pq.result.order_profile()));
            result.insert_quadratic("pullback", pq.result.candidate());
            result.insert_hom("pullback.to_source.f1", &pq.morphism.f1);
            result.insert_hom("pullback.to_source.f2", &pq.morphism.f2);
        }
        "induce-nil2" => {
            arity(verb, names, &["PRECROSSED", "F"])?;
            let n = Nil2Module::new(bundle.precrossed(&names[0])?)?;
            let f = bundle.hom(&names[1])?;
            if f.is_epi() {
                let ind = induce_nil2_epi(&n, &f)?;
                let order = ind.result.source().order();
                out.line("case: epimorphism");
                out.line(format!(
                    "kernel order {}, displacement order {}, induced order {order}",
                    ind.kernel.order(),
                    ind.displacement.subgroup.order()
                ));
                out.field("case", json!("epi"));
                out.field("order", json!(order));
                let pres = induced_presentation(&n, &f)?;
                let dump = pres.dump();
                out.lines.extend(dump.lines().map(str::to_string));
                out.field("presentation", json!(dump.lines().collect::<Vec<_>>()));
                match epi_oracle_check(&n, &f, opts.coset_limits()) {
                    Ok(cmp) => {
                        out.line(format!(
                            "coset enumeration: order {}, {} compatible isomorphisms, agrees: {}",
                            cmp.presented_order,
                            cmp.isomorphisms,
                            cmp.agrees()
                        ));
                        if !cmp.agrees() {
                            out.fail();
                        }
                        out.field("oracle", serde_json::to_value(&cmp).expect("comparison serializes"));
                    }
                    Err(e @ (Error::NotComputable(_) | Error::BoundExceeded(_))) => {
                        out.line(format!("coset enumeration: not completed ({e})"));
                        out.field("oracle", json!({ "not_completed": e.to_string() }));
                    }
                    Err(e) => return Err(e.into()),
                }
                result.insert_precrossed("induced", ind.result.precrossed());
                result.insert_hom("induced.unit", &ind.theta);
            } else if f.is_mono() {
                let mono = induce_nil2_mono(&n, &f)?;
                out.line("case: monomorphism");
                out.line(format!("transversal size {}", mono.transversal().len()));
                out.field("case", json!("mono"));
                out.field("copies", json!(mono.transversal().len()));
                sample_lines(out, &mono.check_samples(opts.samples, opts.seed));
            } else {
                let g = induce_nil2_general(&n, &f, opts.samples, opts.seed)?;
                out.line("case: general");
                out.line(format!(
                    "image order {}, epi stage order {}, copies {}",
                    g.image.group.order(),
                    g.epi.result.source().order(),
                    g.mono.transversal().len()
                ));
                out.field("case", json!("general"));
                out.field("copies", json!(g.mono.transversal().len()));
                sample_lines(out, &g.report);
                result.insert_precrossed("epi_stage", g.epi.result.precrossed());
                result.insert_hom("iota", &g.iota);
            }
        }
        "induce-quad" => {
            arity(verb, names, &["QUADMOD", "PHI"])?;
            let q = verify_quadratic(bundle.quadratic(&names[0])?)?;
            let phi = bundle.hom(&names[1])?;
            if phi.is_epi() {
                let ind = induce_quad_epi(&q, &phi)?;
                out.line("case: epimorphism");
                out.line(format!("orders C2 C1 C0: {:?}", ind.result.order_profile()));
                out.line(format!("top kernel enlarged: {}", ind.top_enlarged));
                out.line("QM1..QM4: pass");
                out.field("case", json!("epi"));
                out.field("orders", json!(ind.result.order_profile()));
                out.field("top_enlarged", json!(ind.top_enlarged));
                result.insert_quadratic("induced", ind.result.candidate());
                result.insert_hom("induced.unit.f1", &ind.unit.f1);
                result.insert_hom("induced.unit.f2", &ind.unit.f2);
            } else {
                let g = induce_quad_general(&q, &phi, opts.samples, opts.seed)?;
                out.line(if phi.is_mono() { "case: monomorphism" } else { "case: general" });
                out.line(format!(
                    "image order {}, epi stage orders {:?}, copies {}",
                    g.image.group.order(),
                    g.epi.result.order_profile(),
                    g.mono.middle().transversal().len()
                ));
                out.field("case", json!(if phi.is_mono() { "mono" } else { "general" }));
                out.field("copies", json!(g.mono.middle().transversal().len()));
                sample_lines(out, &g.report);
                result.insert_quadratic("epi_stage", g.epi.result.candidate());
                result.insert_hom("iota", &g.iota);
            }
        }
        "cokernel" => {
            arity(verb, names, &["SOURCE", "TARGET", "F0", "F1", "F2"])?;
            let s = verify_quadratic(bundle.quadratic(&names[0])?)?;
            let t = verify_quadratic(bundle.quadratic(&names[1])?)?;
            let m = QuadraticMorphism::new(&s, &t, bundle.hom(&names[2])?, bundle.hom(&names[3])?, bundle.hom(&names[4])?)?;
            let c = cokernel(&s, &t, &m)?;
            out.line(format!("orders C2 C1 C0: {:?}", c.result.order_profile()));
            out.line("QM1..QM4: pass");
            out.field("orders", json!(c.result.order_profile()));
            result.insert_quadratic("cokernel", c.result.candidate());
            result.insert_hom("cokernel.projection.f0", &c.projection.f0);
            result.insert_hom("cokernel.projection.f1", &c.projection.f1);
            result.insert_hom("cokernel.projection.f2", &c.projection.f2);
        }
        "tensor" => {
            arity(verb, names, &["GROUP"])?;
            let d = abelian_invariants(&bundle.group(&names[0])?)?;
            let size = tensor_square_order(&d);
            if size > MAX_TENSOR_ORDER {
                return Err(Error::BoundExceeded(format!(
                    "tensor square of order {size} exceeds {MAX_TENSOR_ORDER}"
                ))
                .into());
            }
            let t = tensor_square(&d);
            let order = t.product().order();
            out.line(format!("invariant factors {:?}", d.invariant_factors()));
            out.line(format!("tensor square basis orders {:?}, order {order}", t.basis_orders()));
            out.field("invariants", json!(d.invariant_factors()));
            out.field("basis_orders", json!(t.basis_orders()));
            out.field("order", json!(order));
            result.insert_group("tensor", t.product());
        }
        "homs" => {
            arity(verb, names, &["SOURCE", "TARGET"])?;
            let homs = enumerate_homs(&bundle.group(&names[0])?, &bundle.group(&names[1])?, opts.hom_bound())?;
            out.line(format!("{} homomorphisms", homs.len()));
            for (i, h) in homs.iter().enumerate() {
                out.line(format!("  hom{i}: {:?}", h.map()));
            }
            out.field("count", json!(homs.len()));
            out.field("maps", json!(homs.iter().map(|h| h.map().to_vec()).collect::<Vec<_>>()));
            for (i, h) in homs.iter().enumerate() {
                result.insert_hom(&format!("hom{i}"), h);
            }
        }
        "adjunction-check" => {
            arity(verb, names, &["SIGMA", "X", "Y"])?;
            let sigma = bundle.hom(&names[0])?;
            let x = verify_quadratic(bundle.quadratic(&names[1])?)?;
            let y = verify_quadratic(bundle.quadratic(&names[2])?)?;
            let c = adjunction_count(&sigma, &x, &y, opts.hom_bound())?;
            out.line(format!("Hom(induced X, Y) = {}", c.induced_side));
            out.line(format!("Hom(X, pullback Y) = {}", c.pullback_side));
            out.line(format!("balanced: {}", c.balanced()));
            out.field("counts", serde_json::to_value(c).expect("counts serialize"));
            if !c.balanced() {
                out.fail();
            }
            return Ok(());
        }
        other => {
            return Err(Failure::Usage(format!(
                "unknown verb {other:?}; expected one of {}",
                VERBS.join(", ")
            )))
        }
    }
    out.bundle = Some(result);
    Ok(())
}
