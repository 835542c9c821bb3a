//! The mod 2 Steenrod algebra in the admissible basis, and its finite
//! subalgebras A(n).
//!
//! Products are computed by concatenating monomials and rewriting with the
//! Adem relations, always at the leftmost inadmissible pair. Both pair
//! expansions and whole-word reductions are memoized in process-wide tables.
//!
//! For A(n) the degreewise basis is the reduced echelon form (over the
//! admissible monomials of A) of the span of all products of
//! `Sq(1), Sq(2), ..., Sq(2^n)`. Its elements are generally sums of
//! admissible monomials, e.g. `Sq(4,1)+Sq(5)` in A(1).

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use thiserror::Error;

use crate::f2core::{BitMatrix, BitVector, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SteenrodError {
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(AlgebraTag, AlgebraTag),
    #[error("element {element} is not in {algebra}")]
    NotInSubalgebra { element: String, algebra: AlgebraTag },
    #[error("inhomogeneous element: degrees {0} and {1}")]
    Inhomogeneous(u32, u32),
    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Which algebra an element or module lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AlgebraTag {
    Full,
    /// A(n), generated by `Sq(1), Sq(2), ..., Sq(2^n)`.
    Sub(u32),
}

impl AlgebraTag {
    /// Largest degree of a multiplicative generator, if the algebra is finite.
    pub fn top_generator_degree(self) -> Option<u32> {
        match self {
            AlgebraTag::Full => None,
            AlgebraTag::Sub(n) => Some(1 << n),
        }
    }

    /// Top nonzero degree of A(n); `None` for A.
    pub fn top_degree(self) -> Option<u32> {
        match self {
            AlgebraTag::Full => None,
            // Profile of A(n) is (n+1, n, ..., 1): xi_i^(2^(n+2-i) - 1).
            AlgebraTag::Sub(n) => Some(
                (1..=n + 1)
                    .map(|i| ((1u32 << (n + 2 - i)) - 1) * ((1u32 << i) - 1))
                    .sum(),
            ),
        }
    }
}

impl fmt::Display for AlgebraTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraTag::Full => write!(f, "A"),
            AlgebraTag::Sub(n) => write!(f, "A({n})"),
        }
    }
}

impl FromStr for AlgebraTag {
    type Err = SteenrodError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "A" {
            return Ok(AlgebraTag::Full);
        }
        s.strip_prefix("A(")
            .and_then(|r| r.strip_suffix(')'))
            .and_then(|n| n.trim().parse().ok())
            .filter(|&n: &u32| n < 8)
            .map(AlgebraTag::Sub)
            .ok_or_else(|| SteenrodError::Parse {
                input: s.to_string(),
                reason: "expected `A` or `A(n)`".into(),
            })
    }
}

/// `Sq(i1,...,ik)` with `i_j >= 2 i_{j+1}`. The empty sequence is the unit.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct AdmissibleMonomial(Vec<u32>);

impl AdmissibleMonomial {
    pub fn unit() -> Self {
        AdmissibleMonomial(Vec::new())
    }

    pub fn new(exponents: Vec<u32>) -> Option<Self> {
        is_admissible(&exponents).then_some(AdmissibleMonomial(exponents))
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        write!(f, "Sq(")?;
        for (k, e) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for AdmissibleMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn is_admissible(word: &[u32]) -> bool {
    word.iter().all(|&e| e > 0) && word.windows(2).all(|w| w[0] >= 2 * w[1])
}

/// `binom(n, k) mod 2` by Lucas' theorem; zero when `k > n` or either is negative.
pub fn binomial_mod2(n: i64, k: i64) -> bool {
    n >= 0 && k >= 0 && k <= n && (k & !n) == 0
}

type Terms = BTreeSet<AdmissibleMonomial>;

type PairMemo = RwLock<HashMap<(u32, u32), Arc<Vec<Vec<u32>>>>>;

fn pair_memo() -> &'static PairMemo {
    static MEMO: OnceLock<PairMemo> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

fn word_memo() -> &'static RwLock<HashMap<Vec<u32>, Arc<Terms>>> {
    static MEMO: OnceLock<RwLock<HashMap<Vec<u32>, Arc<Terms>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// Adem expansion of `Sq(a)Sq(b)` for `a < 2b`, as a list of words of
/// length one or two.
fn adem_pair(a: u32, b: u32) -> Arc<Vec<Vec<u32>>> {
    if let Some(hit) = pair_memo().read().unwrap().get(&(a, b)) {
        return Arc::clone(hit);
    }
    let terms: Vec<Vec<u32>> = (0..=a / 2)
        .filter(|&c| binomial_mod2(b as i64 - c as i64 - 1, a as i64 - 2 * c as i64))
        .map(|c| if c == 0 { vec![a + b] } else { vec![a + b - c, c] })
        .collect();
    let terms = Arc::new(terms);
    pair_memo().write().unwrap().insert((a, b), Arc::clone(&terms));
    terms
}

fn reduce_word(word: &[u32]) -> Arc<Terms> {
    if let Some(hit) = word_memo().read().unwrap().get(word) {
        return Arc::clone(hit);
    }
    let result = match word.windows(2).position(|w| w[0] < 2 * w[1]) {
        None => {
            let mut t = Terms::new();
            t.insert(AdmissibleMonomial(word.to_vec()));
            t
        }
        Some(i) => {
            let mut acc = Terms::new();
            for replacement in adem_pair(word[i], word[i + 1]).iter() {
                let mut w = Vec::with_capacity(word.len());
                w.extend_from_slice(&word[..i]);
                w.extend_from_slice(replacement);
                w.extend_from_slice(&word[i + 2..]);
                for m in reduce_word(&w).iter() {
                    toggle(&mut acc, m.clone());
                }
            }
            acc
        }
    };
    let result = Arc::new(result);
    word_memo().write().unwrap().insert(word.to_vec(), Arc::clone(&result));
    result
}

fn toggle(terms: &mut Terms, m: AdmissibleMonomial) {
    if !terms.remove(&m) {
        terms.insert(m);
    }
}

/// A homogeneous element of A or A(n): a set of admissible monomials of one
/// degree, summed mod 2.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    tag: AlgebraTag,
    degree: u32,
    terms: Terms,
}

impl AlgebraElement {
    pub fn zero(tag: AlgebraTag, degree: u32) -> Self {
        AlgebraElement {
            tag,
            degree,
            terms: Terms::new(),
        }
    }

    pub fn unit(tag: AlgebraTag) -> Self {
        let mut terms = Terms::new();
        terms.insert(AdmissibleMonomial::unit());
        AlgebraElement { tag, degree: 0, terms }
    }

    /// `Sq(i)`, checked against the subalgebra when `tag` is A(n).
    pub fn sq(tag: AlgebraTag, i: u32) -> Result<Self, SteenrodError> {
        if i == 0 {
            return Ok(Self::unit(tag));
        }
        Self::from_terms(tag, i, [AdmissibleMonomial(vec![i])])
    }

    /// The reduced product of a word of squares.
    pub fn from_word(tag: AlgebraTag, word: &[u32]) -> Result<Self, SteenrodError> {
        Self::from_terms(tag, word.iter().sum(), adem_reduce(word).terms)
    }

    pub fn from_terms(
        tag: AlgebraTag,
        degree: u32,
        monomials: impl IntoIterator<Item = AdmissibleMonomial>,
    ) -> Result<Self, SteenrodError> {
        let mut terms = Terms::new();
        for m in monomials {
            if m.degree() != degree {
                return Err(SteenrodError::Inhomogeneous(degree, m.degree()));
            }
            toggle(&mut terms, m);
        }
        let el = AlgebraElement { tag, degree, terms };
        if let AlgebraTag::Sub(_) = tag {
            if Algebra::get(tag).coordinates(&el).is_none() {
                return Err(SteenrodError::NotInSubalgebra {
                    element: el.to_string(),
                    algebra: tag,
                });
            }
        }
        Ok(el)
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = &AdmissibleMonomial> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &AlgebraElement) -> Result<AlgebraElement, SteenrodError> {
        if self.tag != other.tag {
            return Err(SteenrodError::AlgebraMismatch(self.tag, other.tag));
        }
        if self.degree != other.degree {
            return Err(SteenrodError::Inhomogeneous(self.degree, other.degree));
        }
        let mut out = self.clone();
        for m in &other.terms {
            toggle(&mut out.terms, m.clone());
        }
        Ok(out)
    }

    /// Parses `Sq(3,1)+Sq(4)`, `1`, or `0`. Inadmissible words are reduced.
    pub fn parse(tag: AlgebraTag, input: &str) -> Result<Self, SteenrodError> {
        let bad = |reason: &str| SteenrodError::Parse {
            input: input.to_string(),
            reason: reason.to_string(),
        };
        let mut words = Vec::new();
        for part in input.split('+') {
            let part = part.trim();
            match part {
                "0" => {}
                "1" => words.push(Vec::new()),
                _ => {
                    let inner = part
                        .strip_prefix("Sq(")
                        .and_then(|r| r.strip_suffix(')'))
                        .ok_or_else(|| bad("expected `Sq(...)`, `1` or `0`"))?;
                    let word = inner
                        .split(',')
                        .map(|e| e.trim().parse::<u32>().ok().filter(|&e| e > 0))
                        .collect::<Option<Vec<_>>>()
                        .ok_or_else(|| bad("exponents must be positive integers"))?;
                    words.push(word);
                }
            }
        }
        let degree = words.first().map_or(0, |w| w.iter().sum());
        let mut terms = Terms::new();
        for w in &words {
            let d: u32 = w.iter().sum();
            if d != degree {
                return Err(SteenrodError::Inhomogeneous(degree, d));
            }
            for m in reduce_word(w).iter() {
                toggle(&mut terms, m.clone());
            }
        }
        Self::from_terms(tag, degree, terms)
    }
}

impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.tag, self)
    }
}

/// Rewrites `Sq(a1)...Sq(ak)` into the admissible basis of A.
pub fn adem_reduce(word: &[u32]) -> AlgebraElement {
    let degree = word.iter().sum();
    let word: Vec<u32> = word.iter().copied().filter(|&e| e > 0).collect();
    AlgebraElement {
        tag: AlgebraTag::Full,
        degree,
        terms: (*reduce_word(&word)).clone(),
    }
}

pub fn multiply(x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement, SteenrodError> {
    if x.tag != y.tag {
        return Err(SteenrodError::AlgebraMismatch(x.tag, y.tag));
    }
    let mut terms = Terms::new();
    let mut word = Vec::new();
    for a in &x.terms {
        for b in &y.terms {
            word.clear();
            word.extend_from_slice(&a.0);
            word.extend_from_slice(&b.0);
            for m in reduce_word(&word).iter() {
                toggle(&mut terms, m.clone());
            }
        }
    }
    Ok(AlgebraElement {
        tag: x.tag,
        degree: x.degree + y.degree,
        terms,
    })
}

/// All admissible monomials of degree `d`, lexicographically ordered.
pub fn admissible_monomials(d: u32) -> Vec<AdmissibleMonomial> {
    fn extend(rest: u32, max_first: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for first in 1..=rest.min(max_first) {
            prefix.push(first);
            extend(rest - first, first / 2, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(d, d, &mut Vec::new(), &mut out);
    out.sort();
    out.into_iter().map(AdmissibleMonomial).collect()
}

/// Ordered basis of one degree of A or A(n).
#[derive(Clone, Debug)]
pub struct AlgebraBasis {
    pub tag: AlgebraTag,
    pub degree: u32,
    pub elements: Vec<AlgebraElement>,
    /// The admissible monomials of degree `degree`, in order; elements are
    /// written in these coordinates.
    ambient: Vec<AdmissibleMonomial>,
    ambient_index: HashMap<AdmissibleMonomial, usize>,
    /// Reduced echelon rows over `ambient`, one per element.
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl AlgebraBasis {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn ambient_vector(&self, el: &AlgebraElement) -> Option<BitVector> {
        let mut v = BitVector::zeros(self.ambient.len());
        for m in &el.terms {
            v.set(*self.ambient_index.get(m)?, true);
        }
        Some(v)
    }

    /// Coordinates of `el` in this basis, or `None` if `el` is not in the span.
    pub fn coordinates(&self, el: &AlgebraElement) -> Option<BitVector> {
        if el.degree != self.degree {
            return None;
        }
        let v = self.ambient_vector(el)?;
        let mut coords = BitVector::zeros(self.rows.len());
        let mut residual = v.clone();
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if v.get(p) {
                coords.set(i, true);
                residual.add_assign(row);
            }
        }
        residual.is_zero().then_some(coords)
    }

    pub fn element_from_coordinates(&self, coords: &BitVector) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.tag, self.degree);
        for i in coords.iter_ones() {
            for m in &self.elements[i].terms {
                toggle(&mut out.terms, m.clone());
            }
        }
        out
    }

    fn from_rows(tag: AlgebraTag, degree: u32, ambient: Vec<AdmissibleMonomial>, sub: Subspace) -> Self {
        let (rows, pivots) = sub.into_sorted_parts();
        let elements = rows
            .iter()
            .map(|r| AlgebraElement {
                tag,
                degree,
                terms: r.iter_ones().map(|i| ambient[i].clone()).collect(),
            })
            .collect();
        let ambient_index = ambient.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        AlgebraBasis {
            tag,
            degree,
            elements,
            ambient,
            ambient_index,
            rows,
            pivots,
        }
    }
}

type ProductTable = Vec<BitVector>;

/// Degreewise data for one algebra: cached bases and multiplication tables.
pub struct Algebra {
    tag: AlgebraTag,
    bases: RwLock<HashMap<u32, Arc<AlgebraBasis>>>,
    // (deg a, index of a, deg b) -> images of a * b_j for each basis b_j.
    products: RwLock<HashMap<(u32, usize, u32), Arc<ProductTable>>>,
}

impl Algebra {
    fn new(tag: AlgebraTag) -> Self {
        Algebra {
            tag,
            bases: RwLock::default(),
            products: RwLock::default(),
        }
    }

    /// Shared instance for `tag`.
    pub fn get(tag: AlgebraTag) -> Arc<Algebra> {
        static REGISTRY: OnceLock<RwLock<HashMap<AlgebraTag, Arc<Algebra>>>> = OnceLock::new();
        let registry = REGISTRY.get_or_init(Default::default);
        if let Some(a) = registry.read().unwrap().get(&tag) {
            return Arc::clone(a);
        }
        Arc::clone(
            registry
                .write()
                .unwrap()
                .entry(tag)
                .or_insert_with(|| Arc::new(Algebra::new(tag))),
        )
    }

    pub fn tag(&self) -> AlgebraTag {
        self.tag
    }

    pub fn dim(&self, d: u32) -> usize {
        self.basis_in_degree(d).len()
    }

    pub fn basis_in_degree(&self, d: u32) -> Arc<AlgebraBasis> {
        if let Some(b) = self.bases.read().unwrap().get(&d) {
            return Arc::clone(b);
        }
        let basis = Arc::new(self.compute_basis(d));
        Arc::clone(self.bases.write().unwrap().entry(d).or_insert(basis))
    }

    fn compute_basis(&self, d: u32) -> AlgebraBasis {
        let ambient = admissible_monomials(d);
        let mut sub = Subspace::new(ambient.len());
        match self.tag {
            AlgebraTag::Full => {
                for i in 0..ambient.len() {
                    sub.add(BitVector::unit(ambient.len(), i));
                }
            }
            AlgebraTag::Sub(n) => {
                let index: HashMap<&AdmissibleMonomial, usize> =
                    ambient.iter().enumerate().map(|(i, m)| (m, i)).collect();
                if d == 0 {
                    sub.add(BitVector::unit(1, 0));
                } else if self.tag.top_degree().is_some_and(|top| d <= top) {
                    for k in 0..=n {
                        let g = 1u32 << k;
                        if g > d {
                            break;
                        }
                        let lower = self.basis_in_degree(d - g);
                        for el in &lower.elements {
                            let mut v = BitVector::zeros(ambient.len());
                            for m in &el.terms {
                                let mut word = Vec::with_capacity(m.0.len() + 1);
                                word.push(g);
                                word.extend_from_slice(&m.0);
                                for r in reduce_word(&word).iter() {
                                    v.flip(index[r]);
                                }
                            }
                            sub.add(v);
                        }
                    }
                }
            }
        }
        AlgebraBasis::from_rows(self.tag, d, ambient, sub)
    }

    /// Coordinates of `el` in the basis of its degree, if it lies in this algebra.
    pub fn coordinates(&self, el: &AlgebraElement) -> Option<BitVector> {
        self.basis_in_degree(el.degree).coordinates(el)
    }

    /// For `a = basis(deg_a)[idx]`, the coordinates of `a * b_j` for every
    /// `b_j` in `basis(deg_b)`.
    pub fn product_table(&self, deg_a: u32, idx: usize, deg_b: u32) -> Arc<ProductTable> {
        let key = (deg_a, idx, deg_b);
        if let Some(t) = self.products.read().unwrap().get(&key) {
            return Arc::clone(t);
        }
        let a = self.basis_in_degree(deg_a).elements[idx].clone();
        let target = self.basis_in_degree(deg_a + deg_b);
        let table: ProductTable = self
            .basis_in_degree(deg_b)
            .elements
            .iter()
            .map(|b| {
                let prod = multiply(&a, b).expect("same algebra");
                target
                    .coordinates(&prod)
                    .expect("subalgebra closed under multiplication")
            })
            .collect();
        let table = Arc::new(table);
        Arc::clone(self.products.write().unwrap().entry(key).or_insert(table))
    }

    /// Matrix of `x -> g x` from degree `d` to degree `d + deg g`, columns in
    /// the degree-`d` basis order.
    pub fn left_mult_matrix(&self, g: &AlgebraElement, d: u32) -> Result<BitMatrix, SteenrodError> {
        if g.tag != self.tag {
            return Err(SteenrodError::AlgebraMismatch(g.tag, self.tag));
        }
        let source = self.basis_in_degree(d);
        let target = self.basis_in_degree(d + g.degree);
        let columns: Vec<BitVector> = source
            .elements
            .iter()
            .map(|x| {
                let prod = multiply(g, x)?;
                target.coordinates(&prod).ok_or_else(|| SteenrodError::NotInSubalgebra {
                    element: prod.to_string(),
                    algebra: self.tag,
                })
            })
            .collect::<Result<_, _>>()?;
        Ok(BitMatrix::from_columns(target.len(), &columns).expect("column lengths agree"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(word: &[u32]) -> String {
        adem_reduce(word).to_string()
    }

    #[test]
    fn adem_examples() {
        assert_eq!(a(&[1, 1]), "0");
        assert_eq!(a(&[1, 2]), "Sq(3)");
        assert_eq!(a(&[2, 2]), "Sq(3,1)");
        assert_eq!(a(&[2, 3]), "Sq(4,1)+Sq(5)");
        assert_eq!(a(&[]), "1");
    }

    #[test]
    fn lucas() {
        assert!(binomial_mod2(1, 1));
        assert!(!binomial_mod2(0, 1));
        assert!(!binomial_mod2(1, 2));
        assert!(binomial_mod2(0, 0));
        assert!(!binomial_mod2(-1, 0));
        assert!(binomial_mod2(7, 3));
        assert!(!binomial_mod2(6, 3));
    }

    #[test]
    fn multiply_examples() {
        let full = AlgebraTag::Full;
        let sq1 = AlgebraElement::sq(full, 1).unwrap();
        let sq2 = AlgebraElement::sq(full, 2).unwrap();
        let unit = AlgebraElement::unit(full);
        assert_eq!(multiply(&unit, &sq2).unwrap(), sq2);
        assert!(multiply(&sq1, &sq1).unwrap().is_zero());
        assert_eq!(multiply(&sq2, &sq2).unwrap().to_string(), "Sq(3,1)");
    }

    #[test]
    fn multiply_rejects_mixed_algebras() {
        let x = AlgebraElement::sq(AlgebraTag::Full, 1).unwrap();
        let y = AlgebraElement::sq(AlgebraTag::Sub(1), 1).unwrap();
        assert!(matches!(multiply(&x, &y), Err(SteenrodError::AlgebraMismatch(..))));
    }

    #[test]
    fn full_basis_examples() {
        let alg = Algebra::get(AlgebraTag::Full);
        let b0 = alg.basis_in_degree(0);
        assert_eq!(b0.len(), 1);
        assert!(b0.elements[0].terms().next().unwrap().is_unit());
        let b5: Vec<String> = alg
            .basis_in_degree(5)
            .elements
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(b5, ["Sq(4,1)", "Sq(5)"]);
    }

    #[test]
    fn a1_poincare_series() {
        let alg = Algebra::get(AlgebraTag::Sub(1));
        let dims: Vec<usize> = (0..10).map(|d| alg.dim(d)).collect();
        assert_eq!(dims, [1, 1, 1, 2, 1, 1, 1, 0, 0, 0]);
        assert_eq!(AlgebraTag::Sub(1).top_degree(), Some(6));
        assert_eq!(AlgebraTag::Sub(2).top_degree(), Some(23));
        let five: Vec<String> = alg
            .basis_in_degree(5)
            .elements
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(five, ["Sq(4,1)+Sq(5)"]);
    }

    #[test]
    fn a0_is_exterior() {
        let alg = Algebra::get(AlgebraTag::Sub(0));
        assert_eq!((0..4).map(|d| alg.dim(d)).collect::<Vec<_>>(), [1, 1, 0, 0]);
    }

    #[test]
    fn a2_has_dimension_64() {
        let alg = Algebra::get(AlgebraTag::Sub(2));
        let total: usize = (0..=24).map(|d| alg.dim(d)).sum();
        assert_eq!(total, 64);
        assert_eq!(alg.dim(23), 1);
    }

    #[test]
    fn subalgebra_membership() {
        let a1 = AlgebraTag::Sub(1);
        assert!(AlgebraElement::sq(a1, 4).is_err());
        assert!(AlgebraElement::parse(a1, "Sq(5)").is_err());
        assert!(AlgebraElement::parse(a1, "Sq(5)+Sq(4,1)").is_ok());
        assert!(AlgebraElement::parse(a1, "Sq(2,1,2)").is_ok());
    }

    #[test]
    fn left_mult_examples() {
        let a1 = Algebra::get(AlgebraTag::Sub(1));
        let unit = AlgebraElement::unit(AlgebraTag::Sub(1));
        assert_eq!(a1.left_mult_matrix(&unit, 3).unwrap(), BitMatrix::identity(2));

        let sq1 = AlgebraElement::sq(AlgebraTag::Sub(1), 1).unwrap();
        assert_eq!(a1.left_mult_matrix(&sq1, 0).unwrap(), BitMatrix::identity(1));

        let sq2 = AlgebraElement::sq(AlgebraTag::Sub(1), 2).unwrap();
        let m = a1.left_mult_matrix(&sq2, 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert!(m.get(0, 0));
        assert_eq!(a1.basis_in_degree(4).elements[0].to_string(), "Sq(3,1)");
    }

    #[test]
    fn parse_and_display() {
        let x = AlgebraElement::parse(AlgebraTag::Full, "Sq(4) + Sq(3,1)").unwrap();
        assert_eq!(x.to_string(), "Sq(3,1)+Sq(4)");
        assert_eq!(
            AlgebraElement::parse(AlgebraTag::Full, "Sq(2,2)").unwrap().to_string(),
            "Sq(3,1)"
        );
        assert!(AlgebraElement::parse(AlgebraTag::Full, "Sq(1)+Sq(2)").is_err());
        assert!(AlgebraElement::parse(AlgebraTag::Full, "Sq(0)").is_err());
        assert!(AlgebraElement::parse(AlgebraTag::Full, "Sq(x)").is_err());
        assert_eq!("A(1)".parse::<AlgebraTag>().unwrap(), AlgebraTag::Sub(1));
        assert_eq!("A".parse::<AlgebraTag>().unwrap(), AlgebraTag::Full);
    }
}
