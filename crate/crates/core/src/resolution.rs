//! Minimal free resolutions over `Γ = R / <Omega>`, truncated at internal
//! degree `k`, and the Ext chart read off from them.
//!
//! Stage `s` is the free module `P_s`; for `s >= 1` it carries the rows of
//! the differential `P_s -> P_{s-1}`, one per generator. Because every
//! differential is minimal, `dim Ext^{s,t}(M, K)` is the number of
//! generators of `P_s` in degree `t`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::AlgebraError;
use crate::field::FieldElement;
use crate::module::{FreeModule, ModuleVector, Signature};
use crate::monomial::Monomial;
use crate::reduction::TruncatedContext;
use crate::syzygy::{lift_syzygies, minimalize, SyzygyProblem};

/// The module being resolved.
#[derive(Clone, Debug)]
pub enum ModulePresentation {
    /// The ground field, through the augmentation `Γ -> K`.
    TrivialModule,
    /// The cokernel of `relations`, rows over the free module `signature`.
    /// No relations presents a free module.
    Cokernel {
        signature: Signature,
        relations: Vec<ModuleVector>,
    },
}

impl ModulePresentation {
    pub fn free(signature: Signature) -> Self {
        ModulePresentation::Cokernel {
            signature,
            relations: Vec::new(),
        }
    }

    /// Generator degrees of `P_0`.
    pub fn signature(&self) -> Signature {
        match self {
            ModulePresentation::TrivialModule => Signature::new([0]),
            ModulePresentation::Cokernel { signature, .. } => signature.clone(),
        }
    }
}

/// Stable name of a generator: `(stage, index, degree)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub stage: usize,
    pub index: usize,
    pub degree: u32,
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}_{}", self.stage, self.index)
    }
}

/// One free module of the resolution and the differential leaving it.
#[derive(Clone, Debug)]
pub struct Stage {
    module: FreeModule,
    ids: Vec<GeneratorId>,
    differential: Vec<ModuleVector>,
}

impl Stage {
    pub fn module(&self) -> &FreeModule {
        &self.module
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.ids
    }

    /// Images of the generators in the previous stage; empty for `P_0`.
    pub fn differential(&self) -> &[ModuleVector] {
        &self.differential
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }
}

/// `dim Ext^{s,t}` for `s <= s_max`, `t <= k`; absent entries are zero.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExtChart {
    pub s_max: usize,
    pub k: u32,
    entries: BTreeMap<(usize, u32), usize>,
}

impl ExtChart {
    pub fn get(&self, s: usize, t: u32) -> usize {
        self.entries.get(&(s, t)).copied().unwrap_or(0)
    }

    /// Nonzero entries ordered by `(s, t)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, u32, usize)> + '_ {
        self.entries.iter().map(|(&(s, t), &d)| (s, t, d))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Keeps only entries with `t <= k`.
    pub fn truncated(&self, k: u32) -> ExtChart {
        ExtChart {
            s_max: self.s_max,
            k: k.min(self.k),
            entries: self.entries.iter().filter(|(&(_, t), _)| t <= k).map(|(&a, &b)| (a, b)).collect(),
        }
    }
}

/// Generators of the kernel of `P_0 -> M`, made minimal.
pub fn initial_kernel(presentation: &ModulePresentation, ctx: &TruncatedContext) -> Result<Vec<ModuleVector>, AlgebraError> {
    let p0 = FreeModule::new(ctx.clone(), presentation.signature());
    match presentation {
        ModulePresentation::TrivialModule => {
            let alg = ctx.algebra();
            if alg.generators().is_empty() {
                return Err(AlgebraError::Config("algebra has no generators".to_string()));
            }
            let rows: Vec<ModuleVector> = alg
                .generators()
                .iter()
                .filter(|(_, g)| g.degree <= ctx.k())
                .map(|(l, _)| ModuleVector::from_term(alg, 1, 0, FieldElement::ONE, Monomial::generator(l, alg.generators())))
                .collect();
            minimalize(&p0, &rows)
        }
        ModulePresentation::Cokernel { relations, .. } => minimalize(&p0, relations),
    }
}

/// A minimal resolution built stage by stage.
#[derive(Clone, Debug)]
pub struct Resolution {
    ctx: TruncatedContext,
    presentation: ModulePresentation,
    stages: Vec<Stage>,
}

impl Resolution {
    /// Just `P_0`.
    pub fn new(ctx: TruncatedContext, presentation: ModulePresentation) -> Result<Self, AlgebraError> {
        let sig = presentation.signature();
        if let ModulePresentation::Cokernel { relations, .. } = &presentation {
            let p0 = FreeModule::new(ctx.clone(), sig.clone());
            for r in relations {
                if !p0.owns(r) {
                    return Err(AlgebraError::Mismatch);
                }
                if !r.is_homogeneous(&sig) {
                    return Err(AlgebraError::NotHomogeneous);
                }
            }
        }
        let stage0 = Stage {
            module: FreeModule::new(ctx.clone(), sig.clone()),
            ids: ids_for(0, sig.degrees()),
            differential: Vec::new(),
        };
        Ok(Resolution {
            ctx,
            presentation,
            stages: alloc::vec![stage0],
        })
    }

    /// Rebuilds a resolution from stored differentials, checking shapes
    /// and that the composites vanish.
    pub fn from_differentials(
        ctx: TruncatedContext,
        presentation: ModulePresentation,
        differentials: Vec<Vec<ModuleVector>>,
    ) -> Result<Self, AlgebraError> {
        let mut res = Resolution::new(ctx, presentation)?;
        for rows in differentials {
            res.push_stage(rows)?;
        }
        Ok(res)
    }

    pub fn ctx(&self) -> &TruncatedContext {
        &self.ctx
    }

    pub fn k(&self) -> u32 {
        self.ctx.k()
    }

    pub fn presentation(&self) -> &ModulePresentation {
        &self.presentation
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// Highest stage index present.
    pub fn s_max(&self) -> usize {
        self.stages.len() - 1
    }

    /// Appends `P_{s+1}`: the minimal generators of the kernel of the last
    /// differential (of `P_0 -> M` for the first step).
    pub fn extend(&mut self) -> Result<(), AlgebraError> {
        let rows = if self.stages.len() == 1 {
            initial_kernel(&self.presentation, &self.ctx)?
        } else {
            let last = self.stages.last().expect("nonempty");
            let prev = &self.stages[self.stages.len() - 2];
            if last.differential.is_empty() {
                Vec::new()
            } else {
                let problem = SyzygyProblem::new(prev.module.clone(), last.differential.clone())?;
                let syz = lift_syzygies(&problem)?;
                // a unit coefficient here would mean the last differential
                // was not minimal
                if let Some(r) = syz.rows.iter().find(|r| r.unit_term().is_some()) {
                    return Err(AlgebraError::Contract(format!(
                        "stage {} is not minimal: syzygy {}",
                        self.stages.len() - 1,
                        r.display(self.ctx.algebra())
                    )));
                }
                minimalize(problem.source(), &syz.rows)?
            }
        };
        self.push_stage(rows)
    }

    pub fn extend_to(&mut self, s_max: usize) -> Result<(), AlgebraError> {
        while self.s_max() < s_max {
            self.extend()?;
        }
        Ok(())
    }

    fn push_stage(&mut self, rows: Vec<ModuleVector>) -> Result<(), AlgebraError> {
        let s = self.stages.len();
        let prev = self.stages.last().expect("nonempty").module.clone();
        let psig = prev.signature();
        let mut degrees = Vec::with_capacity(rows.len());
        for r in &rows {
            if !prev.owns(r) {
                return Err(AlgebraError::Mismatch);
            }
            if !r.is_homogeneous(psig) {
                return Err(AlgebraError::NotHomogeneous);
            }
            let d = r.degree(psig).ok_or_else(|| AlgebraError::Contract(format!("zero differential row at stage {s}")))?;
            if d > self.k() {
                return Err(AlgebraError::Contract(format!("row of degree {d} above k at stage {s}")));
            }
            if r.unit_term().is_some() {
                return Err(AlgebraError::Contract(format!("unit coefficient in the differential at stage {s}")));
            }
            degrees.push(d);
        }
        if s >= 2 {
            let before = &self.stages[s - 1].differential;
            let pp = &self.stages[s - 2].module;
            for r in &rows {
                if !pp.combine(r, before).is_zero() {
                    return Err(AlgebraError::Contract(format!("d o d is not zero at stage {s}")));
                }
            }
        }
        let module = FreeModule::new(self.ctx.clone(), Signature::new(degrees.iter().copied()));
        self.stages.push(Stage {
            module,
            ids: ids_for(s, &degrees),
            differential: rows,
        });
        Ok(())
    }

    /// `(s, t) -> #{generators of P_s of degree t}`.
    pub fn chart(&self) -> ExtChart {
        let mut entries = BTreeMap::new();
        for (s, st) in self.stages.iter().enumerate() {
            for id in &st.ids {
                *entries.entry((s, id.degree)).or_insert(0) += 1;
            }
        }
        ExtChart {
            s_max: self.s_max(),
            k: self.k(),
            entries,
        }
    }

    /// Rows of every differential in text form, stage by stage.
    pub fn describe(&self) -> Vec<Vec<String>> {
        self.stages
            .iter()
            .map(|st| st.differential.iter().map(|r| r.display(self.ctx.algebra())).collect())
            .collect()
    }
}

fn ids_for(stage: usize, degrees: &[u32]) -> Vec<GeneratorId> {
    degrees
        .iter()
        .enumerate()
        .map(|(index, &degree)| GeneratorId { stage, index, degree })
        .collect()
}

/// Resolves `presentation` through stage `s_max`.
pub fn resolve(ctx: TruncatedContext, presentation: ModulePresentation, s_max: usize) -> Result<Resolution, AlgebraError> {
    let mut res = Resolution::new(ctx, presentation)?;
    res.extend_to(s_max)?;
    Ok(res)
}

/// The ext chart of a resolution.
pub fn ext_chart(res: &Resolution) -> ExtChart {
    res.chart()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::steenrod::steenrod_context;

    #[test]
    fn first_stages_over_the_steenrod_algebra() {
        let res = resolve(steenrod_context(12), ModulePresentation::TrivialModule, 3).unwrap();
        let chart = res.chart();
        assert_eq!(chart.get(0, 0), 1);
        let ones: Vec<u32> = (0..=12).filter(|&t| chart.get(1, t) == 1).collect();
        assert_eq!(ones, [1, 2, 4, 8]);
        for s in 0..=3 {
            assert_eq!(chart.get(s, s as u32), 1, "h0 tower at {s}");
        }
        assert_eq!(chart.get(2, 2), 1);
        assert_eq!(chart.get(2, 4), 1);
        assert_eq!(chart.get(2, 3), 0);
    }

    #[test]
    fn free_module_has_nothing_to_resolve() {
        let p = ModulePresentation::free(Signature::new([0, 3]));
        let res = resolve(steenrod_context(8), p, 2).unwrap();
        let chart = res.chart();
        assert_eq!(chart.iter().collect::<Vec<_>>(), [(0, 0, 1), (0, 3, 1)]);
        assert!(res.stages()[1].is_empty() && res.stages()[2].is_empty());
    }

    #[test]
    fn rejects_non_minimal_input() {
        let ctx = steenrod_context(6);
        let p0 = FreeModule::new(ctx.clone(), Signature::new([0]));
        let rows = alloc::vec![p0.parse("[Sq1]").unwrap(), p0.parse("[Sq1]").unwrap()];
        let mut res = Resolution::from_differentials(ctx, ModulePresentation::TrivialModule, alloc::vec![rows]).unwrap();
        assert!(matches!(res.extend(), Err(AlgebraError::Contract(_))));
    }
}
