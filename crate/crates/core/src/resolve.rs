//! Minimal free resolutions and Ext dimensions.
//!
//! The resolution is built stage by stage and, within a stage, degree by
//! degree. In degree `t` of stage `s` we take the kernel of `d_{s-1}` (for
//! `s = 0`, the whole module in degree `t`), span the part already hit by
//! multiples of lower-degree generators, and adjoin one new generator per
//! kernel vector that is independent of everything so far. The kernel in
//! degree `t` only involves generators of degree at most `t`, so every
//! entry of the box `s <= s_max, t <= t_max` is exact.
//!
//! By minimality, `dim Ext^{s,t}` is the number of stage-`s` generators in
//! degree `t`.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::sync::Arc;

use crate::f2core::{BitMatrix, BitVector, Subspace};
use crate::fpmodule::{apply_images, format_free_element, FpModule, FreeMap, FreeModule};
use crate::steenrod::AlgebraTag;

/// One stage `F_s` and the images of its generators under `d_s`.
#[derive(Clone, Debug)]
pub struct Stage {
    pub free: FreeModule,
    /// For `s = 0` these live in the free module on the module's generators
    /// and are reduced modulo the relations; otherwise in `F_{s-1}`.
    pub images: Vec<BitVector>,
}

#[derive(Debug)]
pub struct Resolution {
    pub module: Arc<FpModule>,
    pub s_max: u32,
    pub t_max: u32,
    stages: Vec<Stage>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub s_max: u32,
    pub t_max: u32,
    /// Nonzero dimensions only.
    pub dims: BTreeMap<(u32, u32), u32>,
}

impl ExtTable {
    pub fn dim(&self, s: u32, t: u32) -> u32 {
        self.dims.get(&(s, t)).copied().unwrap_or(0)
    }

    /// Whether `(s, t)` lies in the computed box. Every value there is exact.
    pub fn is_trusted(&self, s: u32, t: u32) -> bool {
        s <= self.s_max && t <= self.t_max
    }

    /// Largest stem `n` whose column is computed for every `s <= s_max`.
    pub fn complete_stem(&self) -> Option<u32> {
        self.t_max.checked_sub(self.s_max)
    }

    pub fn total(&self) -> u32 {
        self.dims.values().sum()
    }

    /// Restriction to `s <= s_max, t - s <= n_max`.
    pub fn restrict(&self, s_max: u32, n_max: u32) -> BTreeMap<(u32, u32), u32> {
        self.dims
            .iter()
            .filter(|((s, t), _)| *s <= s_max && t - s <= n_max)
            .map(|(&k, &v)| (k, v))
            .collect()
    }
}

impl Resolution {
    pub fn tag(&self) -> AlgebraTag {
        self.module.tag
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    /// The target of `d_s`: the presentation's free module for `s = 0`.
    pub fn codomain(&self, s: u32) -> &FreeModule {
        if s == 0 {
            self.module.free_module()
        } else {
            &self.stages[s as usize - 1].free
        }
    }

    /// `d_s` as a map of free modules. For `s = 0` this is a lift of the
    /// augmentation to the free module on the module's generators.
    pub fn differential(&self, s: u32) -> FreeMap {
        let stage = &self.stages[s as usize];
        FreeMap::new(stage.free.clone(), self.codomain(s).clone(), stage.images.clone())
    }

    /// Matrix of `d_s` in degree `t`; for `s = 0` the columns are reduced
    /// modulo the relations, so its kernel is the kernel of the augmentation.
    pub fn differential_matrix(&self, s: u32, t: u32) -> BitMatrix {
        differential_matrix(&self.module, &self.stages, s, t)
    }

    pub fn ext_table(&self) -> ExtTable {
        let mut dims = BTreeMap::new();
        for (s, stage) in self.stages.iter().enumerate() {
            for &t in &stage.free.gen_degrees {
                *dims.entry((s as u32, t)).or_insert(0) += 1;
            }
        }
        ExtTable {
            s_max: self.s_max,
            t_max: self.t_max,
            dims,
        }
    }

    /// Degrees `t` in which the truncated Euler characteristic must equal
    /// the module dimension: stage `s` has no generators below degree
    /// `s + min_degree`, so stages past `s_max` cannot contribute there.
    pub fn euler_window(&self) -> Option<u32> {
        self.module.min_degree().map(|m| (self.s_max + m).min(self.t_max))
    }

    /// `(t, sum_s (-1)^s dim F_s(t), dim M(t))` for each `t` in the Euler window.
    pub fn euler_characteristics(&self) -> Vec<(u32, i64, i64)> {
        let Some(top) = self.euler_window() else {
            return Vec::new();
        };
        (0..=top)
            .map(|t| {
                let chi: i64 = self
                    .stages
                    .iter()
                    .enumerate()
                    .map(|(s, st)| {
                        let d = st.free.dim(t) as i64;
                        if s % 2 == 0 {
                            d
                        } else {
                            -d
                        }
                    })
                    .sum();
                (t, chi, self.module.module_dim(t) as i64)
            })
            .collect()
    }

    /// Checks `d_{s-1} d_s = 0` degreewise; returns the first failing `(s, t)`.
    pub fn check_d_squared(&self) -> Result<(), (u32, u32)> {
        for s in 1..self.stages.len() as u32 {
            for t in 0..=self.t_max {
                let prod = self
                    .differential_matrix(s - 1, t)
                    .mul(&self.differential_matrix(s, t))
                    .expect("composable");
                if !prod.is_zero() {
                    return Err((s, t));
                }
            }
        }
        Ok(())
    }

    /// Checks that no differential `d_s`, `s >= 1`, has a unit coefficient,
    /// i.e. that `Hom(F_*, F2)` has zero differential. Returns the first
    /// offending `(s, generator index)`.
    pub fn check_minimal(&self) -> Result<(), (u32, usize)> {
        for s in 1..self.stages.len() as u32 {
            let stage = &self.stages[s as usize];
            let target = self.codomain(s);
            for (i, (&t, img)) in stage.free.gen_degrees.iter().zip(&stage.images).enumerate() {
                let has_unit = target
                    .blocks(t)
                    .iter()
                    .filter(|b| target.gen_degrees[b.gen] == t)
                    .any(|b| (b.offset..b.offset + b.len).any(|k| img.get(k)));
                if has_unit {
                    return Err((s, i));
                }
            }
        }
        Ok(())
    }

    /// Text dump: `gen s=.. t=.. idx=..` followed by that generator's
    /// `diff s=.. idx=.. -> ..` line, in ascending `(s, t, idx)` order.
    /// Stage-0 differentials name the module's generators; later stages
    /// name generators of the previous stage as `g<idx>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (s, stage) in self.stages.iter().enumerate() {
            let s = s as u32;
            let target = self.codomain(s);
            for (idx, (&t, img)) in stage.free.gen_degrees.iter().zip(&stage.images).enumerate() {
                let rhs = format_free_element(target, t, img, |g| {
                    if s == 0 {
                        self.module.generators[g].0.clone()
                    } else {
                        format!("g{g}")
                    }
                });
                writeln!(out, "gen s={s} t={t} idx={idx}").unwrap();
                writeln!(out, "diff s={s} idx={idx} -> {rhs}").unwrap();
            }
        }
        out
    }
}

fn differential_matrix(module: &FpModule, stages: &[Stage], s: u32, t: u32) -> BitMatrix {
    let stage = &stages[s as usize];
    let target = if s == 0 {
        module.free_module()
    } else {
        &stages[s as usize - 1].free
    };
    let relations = (s == 0).then(|| module.degree_data(t));
    let n = stage.free.dim(t);
    let columns: Vec<BitVector> = (0..n)
        .map(|j| {
            let mut v = apply_images(&stage.free, target, &stage.images, t, &BitVector::unit(n, j));
            if let Some(rel) = &relations {
                rel.relations.reduce(&mut v);
            }
            v
        })
        .collect();
    BitMatrix::from_columns(target.dim(t), &columns).expect("consistent dimensions")
}

/// Resolves `module` through stage `s_max` and internal degree `t_max`.
pub fn minimal_resolution(module: Arc<FpModule>, s_max: u32, t_max: u32) -> Resolution {
    let tag = module.tag;
    let mut stages: Vec<Stage> = Vec::with_capacity(s_max as usize + 1);
    for s in 0..=s_max {
        stages.push(Stage {
            free: FreeModule::new(tag, Vec::new()),
            images: Vec::new(),
        });
        for t in 0..=t_max {
            let cycles: Vec<BitVector> = if s == 0 {
                let data = module.degree_data(t);
                let n = data.relations.ambient_dim();
                let mut is_pivot = vec![false; n];
                for &p in data.relations.pivots() {
                    is_pivot[p] = true;
                }
                (0..n)
                    .filter(|&i| !is_pivot[i])
                    .map(|i| BitVector::unit(n, i))
                    .collect()
            } else {
                differential_matrix(&module, &stages, s - 1, t).kernel_basis()
            };
            if cycles.is_empty() {
                continue;
            }
            let ambient = cycles[0].len();
            // Everything here has degree < t, so this is the decomposable image.
            let mut hit = Subspace::new(ambient);
            for col in differential_matrix(&module, &stages, s, t).transpose().row_vectors() {
                hit.add(col.clone());
            }
            let stage = stages.last_mut().expect("pushed above");
            for z in cycles {
                if hit.add(z.clone()) {
                    stage.free.gen_degrees.push(t);
                    stage.images.push(z);
                }
            }
        }
    }
    Resolution {
        module,
        s_max,
        t_max,
        stages,
    }
}

pub fn ext_dims(module: Arc<FpModule>, s_max: u32, t_max: u32) -> ExtTable {
    minimal_resolution(module, s_max, t_max).ext_table()
}
