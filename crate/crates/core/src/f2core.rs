//! Dense linear algebra over the field with two elements.
//!
//! Vectors are packed 64 entries to a word and matrices are stored row-major,
//! one [`BitVector`] per row. All elimination uses the first-nonzero pivot
//! rule with rows processed in their stored order, so kernel bases and
//! solutions are reproducible bit for bit.

use std::fmt;

use thiserror::Error;

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum F2Error {
    #[error("dimension mismatch: expected length {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid bit character {0:?}")]
    BadBit(char),
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    /// Parses a string of `0`/`1` characters, index 0 first.
    pub fn parse(s: &str) -> Result<Self, F2Error> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(F2Error::BadBit(other)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_bits(&bits))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "index {i} out of range {}", self.len);
        self.words[i / WORD] ^= 1u64 << (i % WORD);
    }

    pub fn add_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "adding vectors of different length");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= *b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    None
                } else {
                    let bit = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    Some(k * WORD + bit)
                }
            })
        })
    }

    /// Parity of the bitwise AND, i.e. the standard inner product.
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "dot product of vectors of different length");
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    /// Concatenation `self ++ other`.
    pub fn concat(&self, other: &BitVector) -> BitVector {
        let mut out = BitVector::zeros(self.len + other.len);
        for i in self.iter_ones() {
            out.set(i, true);
        }
        for i in other.iter_ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> BitVector {
        let mut out = BitVector::zeros(end - start);
        for i in self.iter_ones().filter(|&i| i >= start && i < end) {
            out.set(i - start, true);
        }
        out
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitVector({self})")
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        BitMatrix {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i].set(i, true);
        }
        m
    }

    /// Builds a matrix from its rows; `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<BitVector>) -> Result<Self, F2Error> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(F2Error::DimensionMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(BitMatrix {
            rows: rows.len(),
            cols,
            data: rows,
        })
    }

    /// Builds a matrix whose `j`th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[BitVector]) -> Result<Self, F2Error> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(F2Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for i in col.iter_ones() {
                m.data[i].set(j, true);
            }
        }
        Ok(m)
    }

    /// Parses rows written as `0`/`1` strings.
    pub fn parse_rows(cols: usize, rows: &[&str]) -> Result<Self, F2Error> {
        let rows = rows
            .iter()
            .map(|r| BitVector::parse(r))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &BitVector {
        &self.data[i]
    }

    pub fn row_vectors(&self) -> &[BitVector] {
        &self.data
    }

    pub fn column(&self, j: usize) -> BitVector {
        let mut v = BitVector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.get(j) {
                v.set(i, true);
            }
        }
        v
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.data[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        self.data[i].set(j, value);
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BitVector::is_zero)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for j in row.iter_ones() {
                t.data[j].set(i, true);
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVector) -> Result<BitVector, F2Error> {
        if v.len() != self.cols {
            return Err(F2Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let mut out = BitVector::zeros(self.rows);
        for (i, row) in self.data.iter().enumerate() {
            if row.dot(v) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// The product `self * rhs`.
    pub fn mul(&self, rhs: &BitMatrix) -> Result<BitMatrix, F2Error> {
        if self.cols != rhs.rows {
            return Err(F2Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            for k in row.iter_ones() {
                out.data[i].add_assign(&rhs.data[k]);
            }
        }
        Ok(out)
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row. Zero rows are dropped.
    pub fn row_reduce(&self) -> (Vec<BitVector>, Vec<usize>) {
        let mut sub = Subspace::new(self.cols);
        for row in &self.data {
            sub.add(row.clone());
        }
        sub.into_sorted_parts()
    }

    pub fn rank(&self) -> usize {
        let mut sub = Subspace::new(self.cols);
        for row in &self.data {
            sub.add(row.clone());
        }
        sub.dim()
    }

    /// A basis of `{v : Mv = 0}`, one vector per non-pivot column in
    /// ascending column order.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let (rows, pivots) = self.row_reduce();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|free| {
                let mut v = BitVector::unit(self.cols, free);
                for (row, &p) in rows.iter().zip(&pivots) {
                    if row.get(free) {
                        v.set(p, true);
                    }
                }
                v
            })
            .collect()
    }

    /// Some `x` with `Mx = b`, or `Ok(None)` if `b` is not in the column space.
    pub fn solve(&self, b: &BitVector) -> Result<Option<BitVector>, F2Error> {
        if b.len() != self.rows {
            return Err(F2Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let augmented: Vec<BitVector> = self
            .data
            .iter()
            .enumerate()
            .map(|(i, row)| row.concat(&BitVector::from_bits(&[b.get(i)])))
            .collect();
        let mut sub = Subspace::new(self.cols + 1);
        for row in augmented {
            sub.add(row);
        }
        let (rows, pivots) = sub.into_sorted_parts();
        let mut x = BitVector::zeros(self.cols);
        for (row, &p) in rows.iter().zip(&pivots) {
            if p == self.cols {
                return Ok(None);
            }
            if row.get(self.cols) {
                x.set(p, true);
            }
        }
        Ok(Some(x))
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{} [", self.rows, self.cols)?;
        for row in &self.data {
            writeln!(f, "  {row}")?;
        }
        write!(f, "]")
    }
}

/// A subspace kept in fully reduced echelon form: every stored row has a
/// pivot, and that pivot column is zero in every other stored row.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` in place to its normal form modulo the subspace; the
    /// result is zero on every pivot column.
    pub fn reduce(&self, v: &mut BitVector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.add_assign(row);
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    /// Adds `v` to the spanning set. Returns `false` if it was already in the
    /// span.
    pub fn add(&mut self, mut v: BitVector) -> bool {
        assert_eq!(v.len(), self.ambient, "vector does not fit the ambient space");
        self.reduce(&mut v);
        let Some(p) = v.first_one() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.add_assign(&v);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    /// Rows sorted by pivot column.
    pub fn into_sorted_parts(self) -> (Vec<BitVector>, Vec<usize>) {
        let mut pairs: Vec<(usize, BitVector)> = self.pivots.into_iter().zip(self.rows).collect();
        pairs.sort_by_key(|(p, _)| *p);
        pairs.into_iter().map(|(p, r)| (r, p)).unzip()
    }
}
