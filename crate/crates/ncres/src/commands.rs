//! One function per subcommand. Each writes its primary output to `out`
//! and files under `Settings::out_dir`.

use std::io::Write;
use std::path::{Path, PathBuf};

use ncres_core::groebner::complete;
use ncres_core::module::{FreeModule, Signature};
use ncres_core::oracle::ReducedWords;
use ncres_core::resolution::resolve;
use ncres_core::steenrod::{adem_relations, steenrod_algebra};
use ncres_core::syzygy::{lift_syzygies, Provenance, SyzygyProblem};
use ncres_core::text::word_to_string;
use ncres_core::{FreeAlgebra, Polynomial, ReducerSet, TruncatedContext};
use serde::Serialize;
use serde_json::json;

use crate::formats::{chart_svg, chart_tsv, parse_chart_tsv, verify_threaded, ReportDoc, ResolutionDoc};
use crate::spec::{read_json, AlgebraSpec, JobSpec, ModuleSpec, Outputs, Preset, RowsSpec};
use crate::CliError;

pub const DEFAULT_K: u32 = 20;
pub const DEFAULT_S_MAX: usize = 4;
const PROBE_GENERATORS: u32 = 256;

#[derive(Clone, Debug)]
pub struct Settings {
    pub algebra: AlgebraSpec,
    pub k: Option<u32>,
    pub threads: usize,
    pub emit_trace: bool,
    pub out_dir: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    VerificationFailed,
}

type Out<'a> = &'a mut dyn Write;

fn io(e: std::io::Error) -> CliError {
    CliError::Input(e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

impl Settings {
    fn dir(&self) -> &Path {
        self.out_dir.as_deref().unwrap_or(Path::new("."))
    }

    fn write_file(&self, name: &str, contents: &str) -> Result<PathBuf, CliError> {
        let dir = self.dir();
        std::fs::create_dir_all(dir).map_err(io)?;
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Ok(path)
    }

    fn is_preset(&self) -> bool {
        self.algebra.preset == Some(Preset::Steenrod2)
    }

    /// The free algebra without relations, for reading input before the
    /// truncation degree is known. The preset's generators depend on `k`,
    /// so it gets a generous supply.
    fn probe_context(&self) -> Result<TruncatedContext, CliError> {
        let alg = if self.is_preset() {
            steenrod_algebra(PROBE_GENERATORS)
        } else {
            self.algebra.context(0)?.algebra().clone()
        };
        Ok(TruncatedContext::new(ReducerSet::new(alg), PROBE_GENERATORS))
    }

    /// Parses `src`, picking a truncation degree that covers it when none
    /// was given.
    fn parse_with_k(&self, src: &str) -> Result<(TruncatedContext, Polynomial), CliError> {
        let parse = |alg: &FreeAlgebra| alg.parse(src).map_err(|e| CliError::Input(e.to_string()));
        let k = match self.k {
            Some(k) => k,
            None => {
                let probe = self.probe_context()?;
                parse(probe.algebra())?.terms().iter().map(|t| t.monomial.degree()).max().unwrap_or(0)
            }
        };
        let ctx = self.algebra.context(k)?;
        let f = parse(ctx.algebra())?;
        Ok((ctx, f))
    }
}

pub fn nf(settings: &Settings, poly: &str, out: Out) -> Result<Outcome, CliError> {
    let (ctx, f) = settings.parse_with_k(poly)?;
    let alg = ctx.algebra();
    let (n, trace) = ctx.omega().normal_form_traced(&f);
    writeln!(out, "{}", alg.display(&n)).map_err(io)?;
    if settings.emit_trace {
        let steps: Vec<_> = trace
            .iter()
            .map(|s| {
                json!({
                    "reducer": alg.display(&ctx.omega().reducers()[s.reducer]).to_string(),
                    "left": word_to_string(&s.left, alg.generators()),
                    "right": word_to_string(&s.right, alg.generators()),
                    "coeff": s.coeff.value(),
                })
            })
            .collect();
        let doc = json!({"input": alg.display(&f).to_string(), "steps": steps, "result": alg.display(&n).to_string()});
        settings.write_file("trace.json", &to_json(&doc))?;
    }
    Ok(Outcome::Ok)
}

pub fn groebner(settings: &Settings, out: Out) -> Result<Outcome, CliError> {
    let k = settings.k.unwrap_or(DEFAULT_K);
    let ctx = settings.algebra.context(k)?;
    let alg = ctx.algebra().clone();
    let seed = ctx.omega().reducers().to_vec();
    // for a preset this re-derives the completion; custom relations were
    // already completed by `context`, and completing again records the pairs
    let gb = complete(&alg, &seed, k)?;
    let basis: Vec<String> = gb.elements().iter().map(|p| alg.display(p).to_string()).collect();
    let doc = json!({
        "field": alg.field().characteristic(),
        "order": alg.order().name(),
        "k": k,
        "basis": basis,
    });
    write_primary(settings, "groebner.json", &to_json(&doc), out)?;
    if settings.emit_trace {
        let pairs: Vec<_> = gb
            .pairs()
            .iter()
            .map(|p| {
                json!({
                    "first": p.first,
                    "second": p.second,
                    "degree": p.degree,
                    "kind": format!("{:?}", p.triple.kind).to_lowercase(),
                    "reduced_to_zero": p.reduced_to_zero,
                })
            })
            .collect();
        settings.write_file("trace.json", &to_json(&json!({ "pairs": pairs })))?;
    }
    Ok(Outcome::Ok)
}

/// Prints to stdout, or writes `name` under `--out` when one was given.
fn write_primary(settings: &Settings, name: &str, text: &str, out: Out) -> Result<(), CliError> {
    if settings.out_dir.is_some() {
        settings.write_file(name, text)?;
    } else {
        out.write_all(text.as_bytes()).map_err(io)?;
    }
    Ok(())
}

pub fn adem(settings: &Settings, out: Out) -> Result<Outcome, CliError> {
    let k = settings.k.unwrap_or(DEFAULT_K);
    let alg = steenrod_algebra(k.max(1));
    for r in adem_relations(&alg, k) {
        writeln!(out, "{}", alg.display(&r.polynomial)).map_err(io)?;
    }
    Ok(Outcome::Ok)
}

pub fn basis(settings: &Settings, degree: u32, out: Out) -> Result<Outcome, CliError> {
    let k = settings.k.unwrap_or(degree).max(degree);
    let ctx = settings.algebra.context(k)?;
    let words = ReducedWords::new(ctx.omega(), degree);
    for w in words.of_degree(degree) {
        writeln!(out, "{}", word_to_string(w, ctx.algebra().generators())).map_err(io)?;
    }
    Ok(Outcome::Ok)
}

#[derive(Clone, Debug, Default)]
pub struct ResolveArgs {
    pub job: Option<PathBuf>,
    pub s_max: Option<usize>,
    pub verify: bool,
    pub svg: bool,
}

pub fn resolve_cmd(settings: &Settings, args: &ResolveArgs, out: Out) -> Result<Outcome, CliError> {
    let mut job = match &args.job {
        Some(p) => JobSpec::load(p)?,
        None => JobSpec {
            module: ModuleSpec::TrivialK,
            k: DEFAULT_K,
            s_max: DEFAULT_S_MAX,
            outputs: Outputs::default(),
        },
    };
    if let Some(k) = settings.k {
        job.k = k;
    }
    if let Some(s) = args.s_max {
        job.s_max = s;
    }
    job.outputs.chart_svg |= args.svg;

    let ctx = settings.algebra.context(job.k)?;
    let presentation = job.module.presentation(&ctx)?;
    let res = resolve(ctx, presentation, job.s_max).map_err(|e| match e {
        ncres_core::AlgebraError::Config(m) => CliError::Input(m),
        e => e.into(),
    })?;
    let chart = res.chart();

    if job.outputs.resolution_json {
        let doc = ResolutionDoc::from_resolution(&res, &settings.algebra, &job.module);
        let p = settings.write_file("resolution.json", &to_json(&doc))?;
        writeln!(out, "wrote {}", p.display()).map_err(io)?;
    }
    if job.outputs.chart_tsv {
        let p = settings.write_file("chart.tsv", &chart_tsv(&chart))?;
        writeln!(out, "wrote {}", p.display()).map_err(io)?;
    }
    if job.outputs.chart_svg {
        let entries: Vec<_> = chart.iter().collect();
        let p = settings.write_file("chart.svg", &chart_svg(&entries))?;
        writeln!(out, "wrote {}", p.display()).map_err(io)?;
    }
    if args.verify {
        let report = verify_threaded(&res, settings.threads);
        let p = settings.write_file("verify.json", &to_json(&ReportDoc::new(&report)))?;
        writeln!(out, "wrote {}", p.display()).map_err(io)?;
        if !report.is_ok() {
            return Ok(Outcome::VerificationFailed);
        }
    }
    Ok(Outcome::Ok)
}

pub fn verify(settings: &Settings, resolution: &Path, out: Out) -> Result<Outcome, CliError> {
    let doc: ResolutionDoc = read_json(resolution)?;
    let res = doc.to_resolution()?;
    let report = verify_threaded(&res, settings.threads);
    out.write_all(to_json(&ReportDoc::new(&report)).as_bytes()).map_err(io)?;
    Ok(if report.is_ok() { Outcome::Ok } else { Outcome::VerificationFailed })
}

/// Renders a chart from `chart.tsv` or `resolution.json`.
pub fn chart(input: &Path, svg: bool, out: Out) -> Result<Outcome, CliError> {
    let text = std::fs::read_to_string(input).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
    let entries = if text.trim_start().starts_with('{') {
        let doc: ResolutionDoc =
            serde_json::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", input.display())))?;
        doc.to_resolution()?.chart().iter().collect()
    } else {
        let mut e = parse_chart_tsv(&text)?;
        e.sort_unstable();
        e
    };
    let rendered = if svg {
        chart_svg(&entries)
    } else {
        let mut s = String::from(crate::formats::TSV_HEADER);
        s.push('\n');
        for (a, b, c) in &entries {
            s.push_str(&format!("{a}\t{b}\t{c}\n"));
        }
        s
    };
    out.write_all(rendered.as_bytes()).map_err(io)?;
    Ok(Outcome::Ok)
}

fn provenance_string(p: &Provenance, alg: &FreeAlgebra) -> String {
    match p {
        Provenance::Pair { first, second } => format!("pair({first},{second})"),
        Provenance::Relation { element, relation, z } => {
            format!("relation({element},{relation},{})", word_to_string(z, alg.generators()))
        }
        Provenance::Lifted(inner) => format!("lifted({})", provenance_string(inner, alg)),
        Provenance::Residual(j) => format!("residual({j})"),
    }
}

pub fn syzygy(settings: &Settings, rows: &Path, out: Out) -> Result<Outcome, CliError> {
    let spec = RowsSpec::load(rows)?;
    let sig = Signature::new(spec.degrees.iter().copied());
    let k = match settings.k {
        Some(k) => k,
        None => {
            // the degree of the highest row, read off a generous probe
            let probe = FreeModule::new(settings.probe_context()?, sig.clone());
            crate::spec::parse_rows(&probe, &spec.rows)?
                .iter()
                .filter_map(|r| r.degree(&sig))
                .max()
                .unwrap_or(0)
        }
    };
    let ctx = settings.algebra.context(k)?;
    let module = FreeModule::new(ctx.clone(), sig);
    let parsed = crate::spec::parse_rows(&module, &spec.rows)?;
    let mut normal = Vec::new();
    for (i, r) in parsed.iter().enumerate() {
        let v = module.normalize(r);
        if v.is_zero() {
            return Err(CliError::Input(format!("row {i} is zero in the quotient")));
        }
        normal.push(v);
    }
    let problem = SyzygyProblem::new(module, normal).map_err(|e| CliError::Input(e.to_string()))?;
    let syz = lift_syzygies(&problem)?;
    let alg = ctx.algebra();
    let gens: Vec<_> = syz
        .rows
        .iter()
        .zip(&syz.provenance)
        .map(|(r, p)| {
            json!({
                "row": r.display(alg),
                "degree": r.degree(problem.source().signature()),
                "provenance": provenance_string(p, alg),
            })
        })
        .collect();
    let doc = json!({
        "k": k,
        "source_degrees": problem.source().signature().degrees(),
        "generators": gens,
    });
    write_primary(settings, "syzygies.json", &to_json(&doc), out)?;
    Ok(Outcome::Ok)
}
