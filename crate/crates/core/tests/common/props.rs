//! Randomized invariants shared by the `properties` and `acceptance` targets.
//! Each check runs its own proptest runner and returns the first failure.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use adams_hurewicz::chart::{chart_from_ext, connective_cover_chart, Chart, Window};
use adams_hurewicz::f2core::{BitMatrix, BitVector, Subspace};
use adams_hurewicz::fpmodule::{FreeMap, FreeModule, Preset};
use adams_hurewicz::hurewicz::{annotate_delta, apply_criterion};
use adams_hurewicz::resolve::ext_dims;
use adams_hurewicz::steenrod::{adem_reduce, is_admissible, multiply, Algebra, AlgebraElement, AlgebraTag};

use super::cobar;

fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

fn bits(len: usize) -> impl Strategy<Value = BitVector> {
    proptest::collection::vec(any::<bool>(), len).prop_map(|b| BitVector::from_bits(&b))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
    (1..=max_rows, 1..=max_cols, 0.0f64..1.0).prop_flat_map(|(r, c, density)| {
        proptest::collection::vec(proptest::collection::vec(proptest::bool::weighted(density), c), r).prop_map(
            move |rows| BitMatrix::from_rows(c, rows.iter().map(|b| BitVector::from_bits(b)).collect()).unwrap(),
        )
    })
}

pub fn rank_nullity() -> Result<(), String> {
    run(1000, matrix(64, 64), |m| {
        let kernel = m.kernel_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        let mut span = Subspace::new(m.cols());
        for v in kernel {
            prop_assert!(m.mul_vec(&v).unwrap().is_zero());
            prop_assert!(span.add(v), "kernel basis is dependent");
        }
        prop_assert_eq!(m.transpose().rank(), m.rank());
        Ok(())
    })
}

pub fn solve_brute_force() -> Result<(), String> {
    let strategy = matrix(12, 12).prop_flat_map(|m| {
        let r = m.rows();
        (Just(m), bits(r))
    });
    run(300, strategy, |(m, b)| {
        let n = m.cols();
        let exists = (0u32..1 << n).any(|mask| {
            let x = BitVector::from_bits(&(0..n).map(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
            m.mul_vec(&x).unwrap() == b
        });
        match m.solve(&b).unwrap() {
            Some(x) => prop_assert_eq!(&m.mul_vec(&x).unwrap(), &b),
            None => prop_assert!(!exists),
        }
        prop_assert_eq!(m.solve(&b).unwrap().is_some(), exists);
        Ok(())
    })
}

pub fn adem_idempotent() -> Result<(), String> {
    run(500, proptest::collection::vec(1u32..9, 0..5), |word| {
        let reduced = adem_reduce(&word);
        prop_assert_eq!(reduced.degree(), word.iter().sum::<u32>());
        for term in reduced.terms() {
            prop_assert!(is_admissible(term.exponents()));
            let again = adem_reduce(term.exponents());
            prop_assert_eq!(again.terms().collect::<Vec<_>>(), vec![term]);
        }
        Ok(())
    })
}

fn random_element(tag: AlgebraTag, d: u32, seed: &[bool]) -> AlgebraElement {
    let basis = Algebra::get(tag).basis_in_degree(d);
    let coords = BitVector::from_bits(&seed[..basis.len()]);
    basis.element_from_coordinates(&coords)
}

pub fn associativity() -> Result<(), String> {
    let strategy = (
        prop_oneof![
            Just(AlgebraTag::Full),
            Just(AlgebraTag::Sub(1)),
            Just(AlgebraTag::Sub(2))
        ],
        0u32..=12,
        0u32..=12,
        0u32..=12,
        proptest::collection::vec(any::<bool>(), 3 * 16),
    )
        .prop_filter("total degree at most 12", |(_, a, b, c, _)| a + b + c <= 12);
    run(300, strategy, |(tag, a, b, c, seed)| {
        let x = random_element(tag, a, &seed[0..16]);
        let y = random_element(tag, b, &seed[16..32]);
        let z = random_element(tag, c, &seed[32..48]);
        let left = multiply(&multiply(&x, &y).unwrap(), &z).unwrap();
        let right = multiply(&x, &multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        Ok(())
    })
}

/// Milnor basis sizes of A(n): Sq(r_1, r_2, ...) with r_i < 2^{n+2-i}.
fn milnor_count(tag: AlgebraTag, d: u32) -> usize {
    cobar::monomials(d)
        .iter()
        .filter(|m| match tag {
            AlgebraTag::Full => true,
            AlgebraTag::Sub(n) => m
                .iter()
                .enumerate()
                .all(|(i, &r)| (i as u32) <= n && r < 1 << (n + 1 - i as u32) || r == 0),
        })
        .count()
}

pub fn algebra_dimensions() -> Result<(), String> {
    let a1: Vec<usize> = (0..=7).map(|d| Algebra::get(AlgebraTag::Sub(1)).dim(d)).collect();
    if a1 != [1, 1, 1, 2, 1, 1, 1, 0] {
        return Err(format!("A(1) series {a1:?}"));
    }
    for tag in [
        AlgebraTag::Full,
        AlgebraTag::Sub(0),
        AlgebraTag::Sub(1),
        AlgebraTag::Sub(2),
    ] {
        for d in 0..=12 {
            let (ours, milnor) = (Algebra::get(tag).dim(d), milnor_count(tag, d));
            if ours != milnor {
                return Err(format!("dim {tag}_{d}: {ours} vs Milnor count {milnor}"));
            }
        }
    }
    let a2: usize = (0..=23).map(|d| Algebra::get(AlgebraTag::Sub(2)).dim(d)).sum();
    if a2 != 64 {
        return Err(format!("dim A(2) = {a2}"));
    }
    Ok(())
}

fn free_module(degrees: Vec<u32>) -> FreeModule {
    FreeModule::new(AlgebraTag::Sub(1), degrees)
}

fn free_map(source: &FreeModule, target: &FreeModule, seed: &[bool]) -> FreeMap {
    let images = source
        .gen_degrees
        .iter()
        .enumerate()
        .map(|(i, &g)| {
            let len = target.dim(g);
            BitVector::from_bits(&seed[i * 16..i * 16 + len])
        })
        .collect();
    FreeMap::new(source.clone(), target.clone(), images)
}

pub fn composition_associative() -> Result<(), String> {
    let degrees = || proptest::collection::vec(0u32..6, 1..4);
    let strategy = (
        degrees(),
        degrees(),
        degrees(),
        degrees(),
        proptest::collection::vec(any::<bool>(), 3 * 4 * 16),
    );
    run(200, strategy, |(d0, d1, d2, d3, seed)| {
        let (m0, m1, m2, m3) = (free_module(d0), free_module(d1), free_module(d2), free_module(d3));
        let f = free_map(&m1, &m0, &seed[0..64]);
        let g = free_map(&m2, &m1, &seed[64..128]);
        let h = free_map(&m3, &m2, &seed[128..192]);
        let left = f.compose(&g).compose(&h);
        let right = f.compose(&g.compose(&h));
        prop_assert_eq!(&left, &right);
        for t in 0..12 {
            prop_assert_eq!(
                left.matrix(t),
                f.matrix(t).mul(&g.matrix(t)).unwrap().mul(&h.matrix(t)).unwrap()
            );
        }
        Ok(())
    })
}

fn chart_strategy(min_n: u32) -> impl Strategy<Value = Chart> {
    (
        proptest::collection::vec((0u32..12, min_n..min_n + 30, 1u32..4), 0..25),
        proptest::option::of((0u32..20, 0u32..40)),
        proptest::option::of(prop_oneof![Just("ko-A1".to_string()), Just("sphere-A".to_string())]),
    )
        .prop_map(move |(dots, window, source)| {
            let mut ch = Chart::new(2, min_n);
            for (s, n, m) in dots {
                ch.add_dots(s, n, m);
            }
            ch.window = window.map(|(s_max, t_max)| Window { s_max, t_max });
            ch.source = source;
            ch
        })
}

pub fn chart_round_trip() -> Result<(), String> {
    run(300, (chart_strategy(1), any::<bool>()), |(ch, zero_connected)| {
        prop_assert_eq!(Chart::parse(&ch.serialize()).unwrap(), ch.clone());
        let annotated = annotate_delta(&apply_criterion(&ch, 1, 2).unwrap(), zero_connected);
        let back = Chart::parse(&annotated.serialize()).unwrap();
        prop_assert_eq!(&back, &annotated);
        let mut bare = back.clone();
        bare.clear_annotations();
        prop_assert_eq!(
            apply_criterion(&bare, 1, 2).unwrap(),
            apply_criterion(&ch, 1, 2).unwrap()
        );
        Ok(())
    })
}

fn survivors(ch: &Chart) -> BTreeSet<(u32, u32)> {
    ch.dots()
        .filter(|d| d.annotation.is_some_and(|a| a.is_survivor()))
        .map(|d| (d.s, d.n))
        .collect()
}

pub fn criterion_monotone() -> Result<(), String> {
    let strategy = (1u32..10, 0u32..10, prop_oneof![Just(2u32), Just(3), Just(5)])
        .prop_flat_map(|(c1, dc, p)| (Just(c1), Just(c1 + dc), Just(p), chart_strategy(c1 + dc)));
    run(300, strategy, |(c1, c2, p, ch)| {
        let at_c1 = apply_criterion(&ch, c1, p).unwrap();
        let at_c2 = apply_criterion(&ch, c2, p).unwrap();
        prop_assert!(survivors(&at_c2).is_subset(&survivors(&at_c1)));
        for &(s, n) in &survivors(&at_c1) {
            let mut column = Chart::new(2, c1);
            for lower in 0..=s {
                column.add_dots(lower, n, 1);
            }
            let col = apply_criterion(&column, c1, p).unwrap();
            prop_assert_eq!(survivors(&col).len() as u32, s + 1);
        }
        prop_assert_eq!(at_c1.total(), ch.total());
        Ok(())
    })
}

fn ko_fixture() -> &'static (u32, Chart) {
    static KO: OnceLock<(u32, Chart)> = OnceLock::new();
    KO.get_or_init(|| {
        let ext = ext_dims(std::sync::Arc::new(Preset::KoA1.build(30)), 14, 30);
        (ext.total(), chart_from_ext(&ext))
    })
}

pub fn cover_properties() -> Result<(), String> {
    let (ext_total, ko) = ko_fixture();
    if *ext_total != ko.total() {
        return Err(format!("chart_from_ext total {} vs Ext total {ext_total}", ko.total()));
    }
    for c in [1u32, 2, 4, 8, 9, 10, 12, 16] {
        let cover = connective_cover_chart(ko, c).map_err(|e| e.to_string())?;
        if cover.mult(0, c) != 1 || cover.positions().keys().any(|&(_, n)| n < c) {
            return Err(format!("cover c={c} is not based at (0,{c})"));
        }
        let again = connective_cover_chart(&cover, c).map_err(|e| e.to_string())?;
        if again != cover {
            return Err(format!("cover c={c} is not idempotent"));
        }
    }
    for c in [3u32, 5, 6, 7, 11] {
        if connective_cover_chart(ko, c).is_ok() {
            return Err(format!("cover c={c} should be rejected"));
        }
    }
    Ok(())
}

pub type Check = (&'static str, fn() -> Result<(), String>);

pub const ALL: [Check; 9] = [
    ("f2core rank-nullity and kernel (1000 cases)", rank_nullity),
    ("f2core solve vs brute force", solve_brute_force),
    ("steenrod Adem idempotence", adem_idempotent),
    ("steenrod associativity, degree <= 12", associativity),
    ("steenrod A(1) series and Milnor counts, d <= 12", algebra_dimensions),
    ("fpmodule composition associativity", composition_associative),
    ("chart serialization round trip", chart_round_trip),
    ("criterion monotone in s and c", criterion_monotone),
    ("cover shape, idempotence, chart_from_ext totals", cover_properties),
];
