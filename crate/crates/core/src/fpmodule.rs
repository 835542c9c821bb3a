//! Finitely presented graded modules over A or A(n), free modules, and maps
//! between free modules.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::f2core::{BitMatrix, BitVector, Subspace};
use crate::steenrod::{Algebra, AlgebraElement, AlgebraTag, SteenrodError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("unknown preset {0:?} (expected one of sphere-A, sphere-A1, ko-A1, ko-A)")]
    UnknownPreset(String),
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("relation is not homogeneous")]
    InhomogeneousRelation,
    #[error(transparent)]
    Algebra(#[from] SteenrodError),
}

/// A free module over one algebra, given by its generator degrees in
/// creation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeModule {
    pub tag: AlgebraTag,
    pub gen_degrees: Vec<u32>,
}

/// One block of the degree-`t` basis of a free module: the algebra basis of
/// degree `t - deg(gen)` times the generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub gen: usize,
    pub offset: usize,
    pub len: usize,
}

impl FreeModule {
    pub fn new(tag: AlgebraTag, gen_degrees: Vec<u32>) -> Self {
        FreeModule { tag, gen_degrees }
    }

    pub fn num_gens(&self) -> usize {
        self.gen_degrees.len()
    }

    pub fn blocks(&self, t: u32) -> Vec<Block> {
        let alg = Algebra::get(self.tag);
        let mut offset = 0;
        self.gen_degrees
            .iter()
            .enumerate()
            .filter(|(_, &g)| g <= t)
            .map(|(gen, &g)| {
                let len = alg.dim(t - g);
                let b = Block { gen, offset, len };
                offset += len;
                b
            })
            .filter(|b| b.len > 0)
            .collect()
    }

    pub fn dim(&self, t: u32) -> usize {
        self.blocks(t).iter().map(|b| b.len).sum()
    }

    /// Offset of generator `gen`'s block in degree `t`.
    pub fn block_offset(&self, t: u32, gen: usize) -> Option<usize> {
        self.blocks(t).into_iter().find(|b| b.gen == gen).map(|b| b.offset)
    }

    /// Coordinates of `a * gen`, summed over the given terms.
    pub fn element(&self, t: u32, terms: &[(AlgebraElement, usize)]) -> Result<BitVector, ModuleError> {
        let alg = Algebra::get(self.tag);
        let blocks = self.blocks(t);
        let mut v = BitVector::zeros(self.dim(t));
        for (coeff, gen) in terms {
            if coeff.degree() + self.gen_degrees[*gen] != t {
                return Err(ModuleError::InhomogeneousRelation);
            }
            let coords = alg.coordinates(coeff).ok_or_else(|| SteenrodError::NotInSubalgebra {
                element: coeff.to_string(),
                algebra: self.tag,
            })?;
            if let Some(b) = blocks.iter().find(|b| b.gen == *gen) {
                for i in coords.iter_ones() {
                    v.flip(b.offset + i);
                }
            }
        }
        Ok(v)
    }

    /// Splits a degree-`t` vector into `(coefficient, generator)` pairs.
    pub fn decompose(&self, t: u32, v: &BitVector) -> Vec<(AlgebraElement, usize)> {
        let alg = Algebra::get(self.tag);
        self.blocks(t)
            .into_iter()
            .filter_map(|b| {
                let coords = v.slice(b.offset, b.offset + b.len);
                if coords.is_zero() {
                    return None;
                }
                let basis = alg.basis_in_degree(t - self.gen_degrees[b.gen]);
                Some((basis.element_from_coordinates(&coords), b.gen))
            })
            .collect()
    }

    /// `a * v` where `a = basis(deg_a)[a_idx]` and `v` lives in degree `t`.
    pub fn act(&self, deg_a: u32, a_idx: usize, t: u32, v: &BitVector) -> BitVector {
        let alg = Algebra::get(self.tag);
        let source = self.blocks(t);
        let target = self.blocks(t + deg_a);
        let mut out = BitVector::zeros(self.dim(t + deg_a));
        for b in &source {
            let table = alg.product_table(deg_a, a_idx, t - self.gen_degrees[b.gen]);
            // No block means the algebra is zero in that degree.
            let Some(tb) = target.iter().find(|x| x.gen == b.gen) else {
                continue;
            };
            for i in v.iter_ones().filter(|&i| i >= b.offset && i < b.offset + b.len) {
                for j in table[i - b.offset].iter_ones() {
                    out.flip(tb.offset + j);
                }
            }
        }
        out
    }
}

/// A degree-preserving map of free modules, stored as the image of each
/// source generator in the target's degree-`deg(gen)` coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeMap {
    pub source: FreeModule,
    pub target: FreeModule,
    pub images: Vec<BitVector>,
}

impl FreeMap {
    pub fn new(source: FreeModule, target: FreeModule, images: Vec<BitVector>) -> Self {
        assert_eq!(source.num_gens(), images.len());
        assert_eq!(source.tag, target.tag);
        for (g, img) in source.gen_degrees.iter().zip(&images) {
            assert_eq!(img.len(), target.dim(*g), "image has the wrong length");
        }
        FreeMap { source, target, images }
    }

    /// Entry `(i, j)`: the coefficient of target generator `i` in the image
    /// of source generator `j`.
    pub fn entry(&self, target_gen: usize, source_gen: usize) -> AlgebraElement {
        let deg = self.source.gen_degrees[source_gen];
        let tdeg = self.target.gen_degrees[target_gen];
        let zero = AlgebraElement::zero(self.source.tag, deg.saturating_sub(tdeg));
        self.target
            .decompose(deg, &self.images[source_gen])
            .into_iter()
            .find(|(_, g)| *g == target_gen)
            .map_or(zero, |(a, _)| a)
    }

    pub fn apply(&self, t: u32, v: &BitVector) -> BitVector {
        apply_images(&self.source, &self.target, &self.images, t, v)
    }

    /// Matrix in degree `t`: rows index the target basis, columns the source basis.
    pub fn matrix(&self, t: u32) -> BitMatrix {
        let n = self.source.dim(t);
        let columns: Vec<BitVector> = (0..n).map(|j| self.apply(t, &BitVector::unit(n, j))).collect();
        BitMatrix::from_columns(self.target.dim(t), &columns).expect("consistent dimensions")
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &FreeMap) -> FreeMap {
        assert_eq!(inner.target, self.source, "maps are not composable");
        let images = inner
            .source
            .gen_degrees
            .iter()
            .zip(&inner.images)
            .map(|(&g, img)| self.apply(g, img))
            .collect();
        FreeMap::new(inner.source.clone(), self.target.clone(), images)
    }

    pub fn matrix_entries(&self) -> Vec<Vec<AlgebraElement>> {
        (0..self.target.num_gens())
            .map(|i| (0..self.source.num_gens()).map(|j| self.entry(i, j)).collect())
            .collect()
    }
}

/// Applies the map determined by generator images to a degree-`t` vector
/// of `source`. `images` may cover only a prefix of the generators as long
/// as `v` has no support on the rest.
pub fn apply_images(
    source: &FreeModule,
    target: &FreeModule,
    images: &[BitVector],
    t: u32,
    v: &BitVector,
) -> BitVector {
    let mut out = BitVector::zeros(target.dim(t));
    for b in source.blocks(t) {
        let g = source.gen_degrees[b.gen];
        for i in v.iter_ones().filter(|&i| i >= b.offset && i < b.offset + b.len) {
            out.add_assign(&target.act(t - g, i - b.offset, g, &images[b.gen]));
        }
    }
    out
}

/// Degreewise data of a presented module: the relation subspace inside the
/// free module on the generators.
#[derive(Debug)]
pub struct DegreeData {
    pub relations: Subspace,
}

impl DegreeData {
    pub fn dim(&self) -> usize {
        self.relations.ambient_dim() - self.relations.dim()
    }
}

pub struct FpModule {
    pub name: String,
    pub tag: AlgebraTag,
    pub generators: Vec<(String, u32)>,
    /// Each relation is `(degree, coordinates in the free module on the generators)`.
    pub relations: Vec<(u32, BitVector)>,
    free: FreeModule,
    cache: RwLock<HashMap<u32, Arc<DegreeData>>>,
}

impl fmt::Debug for FpModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FpModule")
            .field("name", &self.name)
            .field("tag", &self.tag)
            .field("generators", &self.generators)
            .field("relations", &self.relation_strings())
            .finish()
    }
}

impl FpModule {
    pub fn new(name: impl Into<String>, tag: AlgebraTag, generators: Vec<(String, u32)>) -> Self {
        let free = FreeModule::new(tag, generators.iter().map(|(_, d)| *d).collect());
        FpModule {
            name: name.into(),
            tag,
            generators,
            relations: Vec::new(),
            free,
            cache: RwLock::default(),
        }
    }

    /// Adds the relation `sum coeff * gen = 0`.
    pub fn add_relation(&mut self, terms: &[(AlgebraElement, usize)]) -> Result<(), ModuleError> {
        let Some((first, g)) = terms.first() else {
            return Ok(());
        };
        for (coeff, _) in terms {
            if coeff.tag() != self.tag {
                return Err(SteenrodError::AlgebraMismatch(coeff.tag(), self.tag).into());
            }
        }
        let degree = first.degree() + self.generators[*g].1;
        let v = self.free.element(degree, terms)?;
        self.relations.push((degree, v));
        self.cache.write().unwrap().clear();
        Ok(())
    }

    pub fn free_module(&self) -> &FreeModule {
        &self.free
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.generators.iter().map(|(_, d)| *d).min()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|(n, _)| n == name)
    }

    /// The relations saturated under the algebra action in degree `t`.
    pub fn degree_data(&self, t: u32) -> Arc<DegreeData> {
        if let Some(d) = self.cache.read().unwrap().get(&t) {
            return Arc::clone(d);
        }
        let alg = Algebra::get(self.tag);
        let mut sub = Subspace::new(self.free.dim(t));
        for (deg, rel) in self.relations.iter().filter(|(d, _)| *d <= t) {
            for idx in 0..alg.dim(t - deg) {
                sub.add(self.free.act(t - deg, idx, *deg, rel));
            }
        }
        let data = Arc::new(DegreeData { relations: sub });
        Arc::clone(self.cache.write().unwrap().entry(t).or_insert(data))
    }

    pub fn module_dim(&self, t: u32) -> usize {
        self.degree_data(t).dim()
    }

    pub fn relation_strings(&self) -> Vec<String> {
        self.relations
            .iter()
            .map(|(deg, v)| format_free_element(&self.free, *deg, v, |g| self.generators[g].0.clone()))
            .collect()
    }

    /// Serializes into the module text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("algebra {}\n", self.tag);
        for (name, deg) in &self.generators {
            out.push_str(&format!("gen {name} {deg}\n"));
        }
        for rel in self.relation_strings() {
            out.push_str(&format!("rel {rel}\n"));
        }
        out
    }

    /// Parses the module text format:
    ///
    /// ```text
    /// algebra A
    /// gen i 0
    /// rel Sq(1)*i
    /// rel Sq(2)*i
    /// ```
    ///
    /// The `algebra` line is optional (default A) but must precede the
    /// generators. `#` starts a comment.
    pub fn parse(name: &str, text: &str) -> Result<FpModule, ModuleError> {
        let mut tag = AlgebraTag::Full;
        let mut generators: Vec<(String, u32)> = Vec::new();
        let mut rel_lines = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let err = |reason: String| ModuleError::Parse { line: line_no, reason };
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match keyword {
                "algebra" => {
                    if !generators.is_empty() {
                        return Err(err("`algebra` must come before generators".into()));
                    }
                    tag = rest.parse().map_err(|e: SteenrodError| err(e.to_string()))?;
                }
                "gen" => {
                    let fields: Vec<&str> = rest.split_whitespace().collect();
                    let [gen_name, deg] = fields[..] else {
                        return Err(err("expected `gen <name> <degree>`".into()));
                    };
                    if !valid_name(gen_name) {
                        return Err(err(format!("invalid generator name {gen_name:?}")));
                    }
                    if generators.iter().any(|(n, _)| n == gen_name) {
                        return Err(err(format!("duplicate generator {gen_name:?}")));
                    }
                    let deg = deg.parse().map_err(|_| err(format!("invalid degree {deg:?}")))?;
                    generators.push((gen_name.to_string(), deg));
                }
                "rel" => rel_lines.push((line_no, rest.to_string())),
                other => return Err(err(format!("unknown keyword {other:?}"))),
            }
        }
        let mut module = FpModule::new(name, tag, generators);
        for (line_no, rel) in rel_lines {
            let terms = module.parse_free_element(&rel).map_err(|e| ModuleError::Parse {
                line: line_no,
                reason: e.to_string(),
            })?;
            module.add_relation(&terms).map_err(|e| ModuleError::Parse {
                line: line_no,
                reason: e.to_string(),
            })?;
        }
        Ok(module)
    }

    /// Parses `Sq(2)*i + Sq(3)*j + k`.
    pub fn parse_free_element(&self, text: &str) -> Result<Vec<(AlgebraElement, usize)>, ModuleError> {
        let mut terms = Vec::new();
        let mut degree = None;
        for term in text.split('+') {
            let term = term.trim();
            let (coeff, gen) = match term.rsplit_once('*') {
                Some((c, g)) => (c.trim(), g.trim()),
                None => ("1", term),
            };
            let g = self
                .generator_index(gen)
                .ok_or_else(|| ModuleError::UnknownGenerator(gen.to_string()))?;
            let a = AlgebraElement::parse(self.tag, coeff)?;
            let d = a.degree() + self.generators[g].1;
            if *degree.get_or_insert(d) != d {
                return Err(ModuleError::InhomogeneousRelation);
            }
            terms.push((a, g));
        }
        Ok(terms)
    }
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || c == '_') && s != "0" && s != "1"
}

/// Writes `sum coeff * gen` in the monomial syntax, expanding each
/// coefficient so that the output never needs parentheses.
pub fn format_free_element(free: &FreeModule, t: u32, v: &BitVector, gen_name: impl Fn(usize) -> String) -> String {
    let parts: Vec<String> = free
        .decompose(t, v)
        .into_iter()
        .flat_map(|(coeff, g)| {
            let name = gen_name(g);
            coeff.terms().map(|m| format!("{m}*{name}")).collect::<Vec<_>>()
        })
        .collect();
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// The built-in modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Preset {
    /// F2 over A.
    SphereA,
    /// F2 over A(1).
    SphereA1,
    /// H^*(ko) realized through change of rings: F2 over A(1).
    KoA1,
    /// H^*(ko) = A/A{Sq(1), Sq(2)} over A.
    KoA,
}

impl Preset {
    pub fn name(self) -> &'static str {
        match self {
            Preset::SphereA => "sphere-A",
            Preset::SphereA1 => "sphere-A1",
            Preset::KoA1 => "ko-A1",
            Preset::KoA => "ko-A",
        }
    }

    /// Builds the module with every relation of degree at most `t_max`.
    /// The trivial module over A needs `Sq(2^i)` for all `i`, so it is
    /// only presented through the degree that will be resolved.
    pub fn build(self, t_max: u32) -> FpModule {
        match self {
            Preset::SphereA => trivial_module(self.name(), AlgebraTag::Full, t_max),
            Preset::SphereA1 | Preset::KoA1 => trivial_module(self.name(), AlgebraTag::Sub(1), t_max),
            Preset::KoA => {
                let mut m = FpModule::new(self.name(), AlgebraTag::Full, vec![("i".to_string(), 0)]);
                for i in [1, 2] {
                    let sq = AlgebraElement::sq(AlgebraTag::Full, i).expect("Sq(i) is in A");
                    m.add_relation(&[(sq, 0)]).expect("valid relation");
                }
                m
            }
        }
    }
}

/// F2 in degree 0 with `Sq(2^i) i = 0` for every indecomposable `Sq(2^i)`
/// of the algebra (for A, those of degree at most `t_max`).
pub fn trivial_module(name: &str, tag: AlgebraTag, t_max: u32) -> FpModule {
    let mut m = FpModule::new(name, tag, vec![("i".to_string(), 0)]);
    // A(n) is finitely presented; A only through t_max.
    let top = tag.top_generator_degree().unwrap_or(t_max.max(1));
    let mut g = 1u32;
    while g <= top {
        let sq = AlgebraElement::sq(tag, g).expect("indecomposables lie in the algebra");
        m.add_relation(&[(sq, 0)]).expect("valid relation");
        match g.checked_mul(2) {
            Some(next) => g = next,
            None => break,
        }
    }
    m
}

impl FromStr for Preset {
    type Err = ModuleError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sphere-A" | "sphere/A" => Ok(Preset::SphereA),
            "sphere-A1" | "sphere/A(1)" => Ok(Preset::SphereA1),
            "ko-A1" | "ko-as-A(1)-trivial" => Ok(Preset::KoA1),
            "ko-A" | "ko-as-A-module" => Ok(Preset::KoA),
            other => Err(ModuleError::UnknownPreset(other.to_string())),
        }
    }
}

pub fn preset_module(name: &str, t_max: u32) -> Result<FpModule, ModuleError> {
    Ok(name.parse::<Preset>()?.build(t_max))
}
