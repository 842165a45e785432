//! On-disk formats: resolution JSON, chart TSV and SVG, verification
//! reports.

use std::fmt::Write as _;

use ncres_core::module::FreeModule;
use ncres_core::oracle::{verify_degree, verify_unit_terms, ReducedWords, VerificationReport, Violation, ViolationKind};
use ncres_core::resolution::{ExtChart, Resolution};
use serde::{Deserialize, Serialize};

use crate::spec::{parse_rows, AlgebraSpec, ModuleSpec};
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenDoc {
    pub id: String,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageDoc {
    pub gens: Vec<GenDoc>,
    /// `d(e_i)` for each generator, in vector text syntax; empty at stage 0.
    pub diff: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionDoc {
    pub stages: Vec<StageDoc>,
    pub k: u32,
    pub field: u32,
    pub algebra: AlgebraSpec,
    pub module: ModuleSpec,
}

impl ResolutionDoc {
    pub fn from_resolution(res: &Resolution, algebra: &AlgebraSpec, module: &ModuleSpec) -> Self {
        let alg = res.ctx().algebra();
        let stages = res
            .stages()
            .iter()
            .map(|st| StageDoc {
                gens: st
                    .generators()
                    .iter()
                    .map(|g| GenDoc {
                        id: g.to_string(),
                        degree: g.degree,
                    })
                    .collect(),
                diff: st.differential().iter().map(|r| r.display(alg)).collect(),
            })
            .collect();
        ResolutionDoc {
            stages,
            k: res.k(),
            field: alg.field().characteristic(),
            algebra: algebra.clone(),
            module: module.clone(),
        }
    }

    /// Rebuilds the resolution, re-checking shapes, `d d = 0` and that the
    /// recorded generator degrees match the rows.
    pub fn to_resolution(&self) -> Result<Resolution, CliError> {
        if self.field != self.algebra.field {
            return Err(CliError::Input("field disagrees with the algebra".into()));
        }
        let ctx = self.algebra.context(self.k)?;
        let presentation = self.module.presentation(&ctx)?;
        let mut diffs = Vec::new();
        for s in 1..self.stages.len() {
            let prev: Vec<u32> = self.stages[s - 1].gens.iter().map(|g| g.degree).collect();
            let module = FreeModule::new(ctx.clone(), ncres_core::module::Signature::new(prev));
            let rows = parse_rows(&module, &self.stages[s].diff).map_err(|e| CliError::Input(format!("stage {s}: {e}")))?;
            diffs.push(rows);
        }
        let res = Resolution::from_differentials(ctx, presentation, diffs).map_err(|e| CliError::Input(e.to_string()))?;
        for (s, (st, doc)) in res.stages().iter().zip(&self.stages).enumerate() {
            let got: Vec<u32> = st.generators().iter().map(|g| g.degree).collect();
            let want: Vec<u32> = doc.gens.iter().map(|g| g.degree).collect();
            if got != want {
                return Err(CliError::Input(format!("stage {s}: generator degrees {want:?} do not match the rows")));
            }
        }
        Ok(res)
    }
}

pub const TSV_HEADER: &str = "#s\tt\tdim";

pub fn chart_tsv(chart: &ExtChart) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for (s, t, d) in chart.iter() {
        writeln!(out, "{s}\t{t}\t{d}").unwrap();
    }
    out
}

pub fn parse_chart_tsv(text: &str) -> Result<Vec<(usize, u32, usize)>, CliError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        let bad = || CliError::Input(format!("chart line {}: expected s<TAB>t<TAB>dim", i + 1));
        if f.len() != 3 {
            return Err(bad());
        }
        out.push((
            f[0].parse().map_err(|_| bad())?,
            f[1].parse().map_err(|_| bad())?,
            f[2].parse().map_err(|_| bad())?,
        ));
    }
    Ok(out)
}

/// Adams-style chart: one dot per basis element at `(t - s, s)`.
pub fn chart_svg(entries: &[(usize, u32, usize)]) -> String {
    const CELL: i64 = 32;
    const MARGIN: i64 = 40;
    let xmax = entries.iter().map(|&(s, t, _)| t as i64 - s as i64).max().unwrap_or(0).max(1);
    let ymax = entries.iter().map(|&(s, _, _)| s as i64).max().unwrap_or(0).max(1);
    let w = 2 * MARGIN + CELL * xmax;
    let h = 2 * MARGIN + CELL * ymax;
    let px = |x: i64| MARGIN + CELL * x;
    let py = |y: i64| h - MARGIN - CELL * y;

    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    writeln!(out, r#"<rect width="{w}" height="{h}" fill="white"/>"#).unwrap();
    writeln!(out, r#"<g stroke="black" stroke-width="1">"#).unwrap();
    writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(0), py(0), px(xmax), py(0)).unwrap();
    writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, px(0), py(0), px(0), py(ymax)).unwrap();
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g font-family="sans-serif" font-size="10" text-anchor="middle">"#).unwrap();
    for x in 0..=xmax {
        writeln!(out, r#"<text x="{}" y="{}">{x}</text>"#, px(x), py(0) + 14).unwrap();
    }
    for y in 0..=ymax {
        writeln!(out, r#"<text x="{}" y="{}">{y}</text>"#, px(0) - 12, py(y) + 4).unwrap();
    }
    writeln!(out, r#"<text x="{}" y="{}">t - s</text>"#, px(xmax) - 10, py(0) + 30).unwrap();
    writeln!(out, r#"<text x="{}" y="{}">s</text>"#, px(0) - 28, py(ymax)).unwrap();
    writeln!(out, "</g>").unwrap();
    writeln!(out, r#"<g fill="black">"#).unwrap();
    for &(s, t, d) in entries {
        let (x, y) = (t as i64 - s as i64, s as i64);
        for i in 0..d as i64 {
            let dx = (2 * i - (d as i64 - 1)) * 5;
            writeln!(out, r#"<circle cx="{}" cy="{}" r="3"/>"#, px(x) + dx, py(y)).unwrap();
        }
    }
    writeln!(out, "</g>").unwrap();
    out.push_str("</svg>\n");
    out
}

/// Degrees are checked independently; with `threads > 1` they are dealt
/// out round-robin. The report is ordered as in the sequential case.
pub fn verify_threaded(res: &Resolution, threads: usize) -> VerificationReport {
    let words = ReducedWords::new(res.ctx().omega(), res.k());
    let degrees: Vec<u32> = (0..=res.k()).collect();
    let threads = threads.max(1).min(degrees.len());
    let mut per_degree: Vec<Vec<Violation>> = vec![Vec::new(); degrees.len()];
    if threads == 1 {
        for &t in &degrees {
            per_degree[t as usize] = verify_degree(res, &words, t);
        }
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|w| {
                    let words = &words;
                    let mine: Vec<u32> = degrees.iter().copied().skip(w).step_by(threads).collect();
                    scope.spawn(move || mine.into_iter().map(|t| (t, verify_degree(res, words, t))).collect::<Vec<_>>())
                })
                .collect();
            for h in handles {
                for (t, v) in h.join().expect("verification worker panicked") {
                    per_degree[t as usize] = v;
                }
            }
        });
    }
    let mut violations = verify_unit_terms(res);
    violations.extend(per_degree.into_iter().flatten());
    VerificationReport { violations }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub stage: usize,
    pub degree: u32,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub status: String,
    pub violations: Vec<ViolationDoc>,
}

impl ReportDoc {
    pub fn new(report: &VerificationReport) -> Self {
        let violations = report
            .violations
            .iter()
            .map(|v| {
                let (kind, kernel, image) = match v.kind {
                    ViolationKind::Composite => ("composite", None, None),
                    ViolationKind::Exactness { kernel, image } => ("exactness", Some(kernel), Some(image)),
                    ViolationKind::UnitTerm => ("unit-term", None, None),
                    ViolationKind::Augmentation => ("augmentation", None, None),
                };
                ViolationDoc {
                    stage: v.stage,
                    degree: v.degree,
                    kind: kind.into(),
                    kernel,
                    image,
                }
            })
            .collect();
        ReportDoc {
            status: if report.is_ok() { "ok" } else { "failed" }.into(),
            violations,
        }
    }
}
