use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::{self, Rational};

type Row = Vec<(usize, Rational)>;

/// A matrix of exact rationals.
///
/// Storage is row-sparse: each row keeps its nonzero entries sorted by
/// column. Equality is exact entry-wise equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Row>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![Rational::one(); n])
    }

    pub fn diagonal(d: &[Rational]) -> Self {
        let data = d
            .iter()
            .enumerate()
            .map(|(i, x)| {
                if x.is_zero() {
                    vec![]
                } else {
                    vec![(i, x.clone())]
                }
            })
            .collect();
        ExactMatrix {
            rows: d.len(),
            cols: d.len(),
            data,
        }
    }

    /// The matrix unit E_{i,j} (0-based).
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(rows, cols);
        m.data[i].push((j, Rational::one()));
        m
    }

    pub fn from_dense(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged dense rows".into()));
        }
        let data = rows
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .collect()
            })
            .collect();
        Ok(ExactMatrix {
            rows: r,
            cols: c,
            data,
        })
    }

    pub fn from_ints(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_dense(
            rows.iter()
                .map(|r| r.iter().map(|&x| scalar::int(x)).collect())
                .collect(),
        )
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions add.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Rational)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); rows];
        for (i, j, x) in entries {
            assert!(
                i < rows && j < cols,
                "entry ({i},{j}) outside {rows}x{cols}"
            );
            *acc[i].entry(j).or_insert_with(Rational::zero) += x;
        }
        ExactMatrix {
            rows,
            cols,
            data: acc.into_iter().map(collect_row).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        let row = &self.data[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => row[k].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Nonzero entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.data[i]
    }

    /// All nonzero entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Rational)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().map(move |(j, x)| (i, j.to_owned(), x)))
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    fn check_same_shape(&self, other: &Self, op: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &other.data[*k] {
                        *acc.entry(*j).or_insert_with(Rational::zero) += a * b;
                    }
                }
                collect_row(acc)
            })
            .collect();
        Ok(ExactMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    fn combine(&self, other: &Self, sign: &Rational) -> Self {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| {
                let mut out = Vec::with_capacity(a.len() + b.len());
                let (mut p, mut q) = (0, 0);
                while p < a.len() || q < b.len() {
                    let ca = a.get(p).map_or(usize::MAX, |e| e.0);
                    let cb = b.get(q).map_or(usize::MAX, |e| e.0);
                    if ca < cb {
                        out.push(a[p].clone());
                        p += 1;
                    } else if cb < ca {
                        out.push((cb, &b[q].1 * sign));
                        q += 1;
                    } else {
                        let x = &a[p].1 + &b[q].1 * sign;
                        if !x.is_zero() {
                            out.push((ca, x));
                        }
                        p += 1;
                        q += 1;
                    }
                }
                out
            })
            .collect();
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sum")?;
        Ok(self.combine(other, &Rational::one()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "difference")?;
        Ok(self.combine(other, &-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|row| row.iter().map(|(j, x)| (*j, x * c)).collect())
                .collect(),
        }
    }

    /// `self + c·I`.
    pub fn add_scalar(&self, c: &Rational) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "shift of a non-square matrix".into(),
            ));
        }
        self.add(&Self::identity(self.rows).scale(c))
    }

    /// [A, B] = AB − BA.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "power of a non-square matrix".into(),
            ));
        }
        let mut out = Self::identity(self.rows);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).fold(Rational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn transpose(&self) -> Self {
        Self::from_entries(
            self.cols,
            self.rows,
            self.entries().map(|(i, j, x)| (j, i, x.clone())),
        )
    }

    /// Kronecker product A ⊗ B.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut data = Vec::with_capacity(rows);
        for arow in &self.data {
            for brow in &other.data {
                let mut out = Vec::with_capacity(arow.len() * brow.len());
                for (ja, a) in arow {
                    for (jb, b) in brow {
                        out.push((ja * other.cols + jb, a * b));
                    }
                }
                data.push(out);
            }
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn block_diag(blocks: &[ExactMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut data = Vec::with_capacity(rows);
        let mut offset = 0;
        for b in blocks {
            for row in &b.data {
                data.push(row.iter().map(|(j, x)| (j + offset, x.clone())).collect());
            }
            offset += b.cols;
        }
        ExactMatrix { rows, cols, data }
    }

    pub fn is_diagonal(&self) -> bool {
        self.data
            .iter()
            .enumerate()
            .all(|(i, row)| row.iter().all(|(j, _)| *j == i))
    }

    pub fn diagonal_entries(&self) -> Vec<Rational> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i))
            .collect()
    }

    /// Entry of largest absolute value, with its position; `None` for zero.
    pub fn max_abs_entry(&self) -> Option<(usize, usize, Rational)> {
        let mut best: Option<(usize, usize, Rational)> = None;
        for (i, j, x) in self.entries() {
            if best.as_ref().is_none_or(|b| x.abs() > b.2.abs()) {
                best = Some((i, j, x.clone()));
            }
        }
        best
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        let mut ech = super::echelon::Echelon::new(self.cols);
        for row in &self.data {
            ech.insert_rational(row.iter().map(|(j, x)| (*j, x.clone())));
        }
        ech.len()
    }

    /// Row-major vectorization as `(row * cols + col, value)` pairs.
    pub fn vectorize(&self) -> impl Iterator<Item = (usize, Rational)> + '_ {
        let cols = self.cols;
        self.entries()
            .map(move |(i, j, x)| (i * cols + j, x.clone()))
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut out = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (i, j, x) in self.entries() {
            out[i][j] = x.clone();
        }
        out
    }
}

fn collect_row(acc: BTreeMap<usize, Rational>) -> Row {
    acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(scalar::to_short).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Wire {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .to_dense()
                .iter()
                .flatten()
                .map(scalar::to_pq)
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        if w.entries.len() != w.rows * w.cols {
            return Err(D::Error::custom("entry count does not match shape"));
        }
        let vals = w
            .entries
            .iter()
            .map(|s| scalar::parse_pq(s))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let cols = w.cols;
        Ok(ExactMatrix::from_entries(
            w.rows,
            w.cols,
            vals.into_iter()
                .enumerate()
                .map(|(k, x)| (k / cols.max(1), k % cols.max(1), x)),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> ExactMatrix {
        ExactMatrix::from_ints(rows).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        let a = m(&[vec![1, 2], vec![3, 4]]);
        let b = m(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.mul(&b).unwrap(), m(&[vec![2, 1], vec![4, 3]]));
        assert_eq!(a.add(&b).unwrap(), m(&[vec![1, 3], vec![4, 4]]));
        assert_eq!(a.sub(&a).unwrap(), ExactMatrix::zeros(2, 2));
        assert_eq!(a.trace(), int(5));
        assert_eq!(a.transpose(), m(&[vec![1, 3], vec![2, 4]]));
        assert_eq!(b.pow(2).unwrap(), ExactMatrix::identity(2));
        assert_eq!(a.rank(), 2);
        assert_eq!(m(&[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert!(a.mul(&ExactMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn kron_and_blocks() {
        let a = m(&[vec![1, 2], vec![0, 1]]);
        let i2 = ExactMatrix::identity(2);
        let k = a.kron(&i2);
        assert_eq!(k.get(0, 2), int(2));
        assert_eq!(k.get(1, 3), int(2));
        assert_eq!(k.get(0, 3), int(0));
        let bd = ExactMatrix::block_diag(&[ExactMatrix::zeros(1, 1), a.clone()]);
        assert_eq!(bd.rows(), 3);
        assert_eq!(bd.get(1, 2), int(2));
        assert_eq!(bd.get(0, 0), int(0));
    }

    #[test]
    fn max_abs_and_diagonal() {
        let a =
            ExactMatrix::from_dense(vec![vec![frac(1, 2), int(0)], vec![int(-3), int(0)]]).unwrap();
        assert_eq!(a.max_abs_entry(), Some((1, 0, int(-3))));
        assert!(!a.is_diagonal());
        assert!(ExactMatrix::identity(3).is_diagonal());
        assert_eq!(ExactMatrix::zeros(2, 2).max_abs_entry(), None);
    }

    #[test]
    fn json_roundtrip() {
        let a = ExactMatrix::from_dense(vec![vec![frac(1, 2), int(3)]]).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"{"rows":1,"cols":2,"entries":["1/2","3/1"]}"#);
        let back: ExactMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
    }

    fn small() -> impl Strategy<Value = ExactMatrix> {
        prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3)
            .prop_map(|rows| ExactMatrix::from_ints(&rows).unwrap())
    }

    proptest! {
        #[test]
        fn product_is_associative(a in small(), b in small(), c in small()) {
            prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        }

        #[test]
        fn kron_mixed_product(a in small(), b in small(), c in small(), d in small()) {
            // (A⊗B)(C⊗D) = AC ⊗ BD
            let lhs = a.kron(&b).mul(&c.kron(&d)).unwrap();
            let rhs = a.mul(&c).unwrap().kron(&b.mul(&d).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn sparse_matches_dense(a in small(), b in small()) {
            let (da, db) = (a.to_dense(), b.to_dense());
            let mut prod = vec![vec![Rational::zero(); 3]; 3];
            for i in 0..3 { for j in 0..3 { for k in 0..3 {
                prod[i][j] += &da[i][k] * &db[k][j];
            }}}
            prop_assert_eq!(a.mul(&b).unwrap(), ExactMatrix::from_dense(prod).unwrap());
        }
    }
}
