//! Brute-force Ext_A(F2, F2) from the cobar complex of the dual Steenrod
//! algebra A_* = F2[xi_1, xi_2, ...], |xi_i| = 2^i - 1, with coproduct
//! Delta(xi_n) = sum_i xi_{n-i}^{2^i} (x) xi_i.
//!
//! Shares no code with the library: monomials are exponent arrays and ranks
//! are computed by a plain `Vec<bool>` elimination.

use std::collections::{BTreeMap, HashMap};

const GENS: usize = 4;

pub type Mono = [u32; GENS];

fn xi_degree(i: usize) -> u32 {
    (1 << (i + 1)) - 1
}

pub fn mono_degree(m: &Mono) -> u32 {
    m.iter().enumerate().map(|(i, &r)| r * xi_degree(i)).sum()
}

/// Milnor basis monomials of degree `d` (only xi_1..xi_4, enough for d < 31).
pub fn monomials(d: u32) -> Vec<Mono> {
    fn go(i: usize, rest: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
        if i == GENS {
            if rest == 0 {
                out.push(*cur);
            }
            return;
        }
        let deg = xi_degree(i);
        for r in 0..=rest / deg {
            cur[i] = r;
            go(i + 1, rest - r * deg, cur, out);
        }
        cur[i] = 0;
    }
    assert!(d < 31);
    let mut out = Vec::new();
    go(0, d, &mut [0; GENS], &mut out);
    out.sort();
    out
}

fn mono_mul(a: &Mono, b: &Mono) -> Mono {
    let mut out = [0; GENS];
    for i in 0..GENS {
        out[i] = a[i] + b[i];
    }
    out
}

type Tensor = HashMap<(Mono, Mono), bool>;

fn tensor_mul(x: &Tensor, y: &Tensor) -> Tensor {
    let mut out = Tensor::new();
    for ((a1, b1), _) in x.iter().filter(|(_, &c)| c) {
        for ((a2, b2), _) in y.iter().filter(|(_, &c)| c) {
            let e = out.entry((mono_mul(a1, a2), mono_mul(b1, b2))).or_insert(false);
            *e = !*e;
        }
    }
    out.retain(|_, c| *c);
    out
}

fn coproduct_xi(n: usize) -> Tensor {
    // xi index n is 1-based here; xi_0 = 1.
    let mut t = Tensor::new();
    for i in 0..=n {
        let mut left = [0; GENS];
        if n - i > 0 {
            left[n - i - 1] = 1 << i;
        }
        let mut right = [0; GENS];
        if i > 0 {
            right[i - 1] = 1;
        }
        t.insert((left, right), true);
    }
    t
}

/// Reduced coproduct of a monomial: all terms with both factors of positive degree.
pub fn reduced_coproduct(m: &Mono) -> Vec<(Mono, Mono)> {
    let mut acc: Tensor = HashMap::from([(([0; GENS], [0; GENS]), true)]);
    for (i, &r) in m.iter().enumerate() {
        let d = coproduct_xi(i + 1);
        for _ in 0..r {
            acc = tensor_mul(&acc, &d);
        }
    }
    let mut out: Vec<(Mono, Mono)> = acc
        .into_iter()
        .filter(|((a, b), c)| *c && mono_degree(a) > 0 && mono_degree(b) > 0)
        .map(|(k, _)| k)
        .collect();
    out.sort();
    out
}

/// Basis of the cobar complex in homological degree `s`, internal degree `t`:
/// s-tuples of positive-degree monomials with total degree t.
fn cobar_basis(s: usize, t: u32) -> Vec<Vec<Mono>> {
    fn go(s: usize, t: u32, prefix: &mut Vec<Mono>, out: &mut Vec<Vec<Mono>>) {
        if s == 0 {
            if t == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for first in 1..=t {
            if t - first < (s as u32 - 1) {
                break;
            }
            for m in monomials(first) {
                prefix.push(m);
                go(s - 1, t - first, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(s, t, &mut Vec::new(), &mut out);
    out
}

fn rank(mut rows: Vec<Vec<bool>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c]) else {
            continue;
        };
        rows.swap(r, p);
        for i in 0..rows.len() {
            if i != r && rows[i][c] {
                let pivot = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank of the cobar differential C^s_t -> C^{s+1}_t.
fn differential_rank(s: usize, t: u32) -> usize {
    let source = cobar_basis(s, t);
    let target = cobar_basis(s + 1, t);
    if source.is_empty() || target.is_empty() {
        return 0;
    }
    let index: HashMap<&Vec<Mono>, usize> = target.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let rows: Vec<Vec<bool>> = source
        .iter()
        .map(|tuple| {
            let mut row = vec![false; target.len()];
            for (pos, m) in tuple.iter().enumerate() {
                for (a, b) in reduced_coproduct(m) {
                    let mut img = tuple[..pos].to_vec();
                    img.push(a);
                    img.push(b);
                    img.extend_from_slice(&tuple[pos + 1..]);
                    let k = index[&img];
                    row[k] = !row[k];
                }
            }
            row
        })
        .collect();
    rank(rows)
}

/// dim Ext^{s,t}_A(F2, F2) for all `s <= s_max`, `t <= t_max`.
pub fn ext_sphere(s_max: usize, t_max: u32) -> BTreeMap<(usize, u32), usize> {
    let mut out = BTreeMap::new();
    for t in 0..=t_max {
        for s in 0..=s_max {
            let dim = if s == 0 {
                usize::from(t == 0)
            } else {
                cobar_basis(s, t).len() - differential_rank(s, t) - differential_rank(s - 1, t)
            };
            out.insert((s, t), dim);
        }
    }
    out
}
