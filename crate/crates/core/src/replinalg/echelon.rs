//! Fraction-free incremental row echelon form over ℤ.
//!
//! Vectors are sparse `(column, value)` lists. Rational inputs are cleared
//! of denominators and every stored row is made primitive, which keeps
//! coefficient growth in check without any rational arithmetic in the
//! inner loop.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::scalar::Rational;

pub type SparseVec = Vec<(usize, BigInt)>;

#[derive(Clone, Debug, Default)]
pub struct Echelon {
    width: usize,
    rows: BTreeMap<usize, SparseVec>,
    rref: OnceLock<Vec<Vec<(usize, Rational)>>>,
}

impl Echelon {
    pub fn new(width: usize) -> Self {
        Echelon {
            width,
            rows: BTreeMap::new(),
            rref: OnceLock::new(),
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Reduces `v` against the stored rows until its leading column is not a
    /// pivot. The result is primitive with positive leading entry, or empty.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        make_primitive(&mut v);
        while let Some((lead, coeff)) = v.first().cloned() {
            let Some(row) = self.rows.get(&lead) else {
                break;
            };
            let pivot = &row[0].1;
            let (q, rem) = coeff.div_rem(pivot);
            v = if rem.is_zero() {
                axpy(&BigInt::one(), &v, &(-q), row)
            } else {
                let g = coeff.gcd(pivot);
                axpy(&(pivot / &g), &v, &(-(&coeff / &g)), row)
            };
            make_primitive(&mut v);
        }
        v
    }

    /// Inserts `v`; returns whether it enlarged the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce(v);
        match v.first() {
            None => false,
            Some(&(lead, _)) => {
                assert!(
                    lead < self.width,
                    "column {lead} outside width {}",
                    self.width
                );
                self.rows.insert(lead, v);
                self.rref = OnceLock::new();
                true
            }
        }
    }

    pub fn insert_rational(&mut self, v: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        self.insert(clear_denominators(v))
    }

    pub fn contains_rational(&self, v: impl IntoIterator<Item = (usize, Rational)>) -> bool {
        self.reduce(clear_denominators(v)).is_empty()
    }

    /// The reduced row echelon basis of the span, normalized with unit pivots
    /// and sorted by pivot column. It depends only on the span.
    pub fn rref(&self) -> &[Vec<(usize, Rational)>] {
        self.rref.get_or_init(|| {
            let mut out: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
            // Back-substitute from the last pivot upward.
            for (&p, row) in self.rows.iter().rev() {
                let lead = Rational::from_integer(row[0].1.clone());
                let mut r: BTreeMap<usize, Rational> = row
                    .iter()
                    .map(|(j, x)| (*j, Rational::from_integer(x.clone()) / &lead))
                    .collect();
                let later: Vec<usize> = r
                    .keys()
                    .copied()
                    .filter(|&j| j > p && out.contains_key(&j))
                    .collect();
                for q in later {
                    let c = match r.get(&q) {
                        Some(c) if !c.is_zero() => c.clone(),
                        _ => continue,
                    };
                    for (j, x) in &out[&q] {
                        let e = r.entry(*j).or_insert_with(Rational::zero);
                        *e -= &c * x;
                    }
                }
                r.retain(|_, x| !x.is_zero());
                out.insert(p, r);
            }
            out.into_values().map(|r| r.into_iter().collect()).collect()
        })
    }
}

/// `a·x + b·y` for sparse vectors sorted by column.
fn axpy(a: &BigInt, x: &SparseVec, b: &BigInt, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut p, mut q) = (0, 0);
    while p < x.len() || q < y.len() {
        let cx = x.get(p).map_or(usize::MAX, |e| e.0);
        let cy = y.get(q).map_or(usize::MAX, |e| e.0);
        if cx < cy {
            out.push((cx, a * &x[p].1));
            p += 1;
        } else if cy < cx {
            out.push((cy, b * &y[q].1));
            q += 1;
        } else {
            let s = a * &x[p].1 + b * &y[q].1;
            if !s.is_zero() {
                out.push((cx, s));
            }
            p += 1;
            q += 1;
        }
    }
    out
}

fn make_primitive(v: &mut SparseVec) {
    v.retain(|(_, x)| !x.is_zero());
    let Some(first) = v.first() else {
        return;
    };
    let mut g = first.1.abs();
    for (_, x) in v.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(x);
    }
    if v[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Scales a rational sparse vector by the lcm of its denominators.
pub fn clear_denominators(v: impl IntoIterator<Item = (usize, Rational)>) -> SparseVec {
    let mut entries: Vec<(usize, Rational)> = v.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    entries.sort_by_key(|(j, _)| *j);
    let l = entries
        .iter()
        .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    entries
        .into_iter()
        .map(|(j, x)| (j, x.numer() * (&l / x.denom())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};
    use proptest::prelude::*;

    fn iv(v: &[i64]) -> SparseVec {
        v.iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(j, x)| (j, BigInt::from(*x)))
            .collect()
    }

    #[test]
    fn span_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(iv(&[2, 4, 0])));
        assert!(e.insert(iv(&[0, 3, 3])));
        assert!(!e.insert(iv(&[1, 5, 3])));
        assert!(e.contains_rational(vec![(0, frac(1, 2)), (1, int(1))]));
        assert!(!e.contains_rational(vec![(2, int(1))]));
        assert_eq!(e.len(), 2);
        let r = e.rref();
        assert_eq!(r[0], vec![(0, int(1)), (2, int(-2))]);
        assert_eq!(r[1], vec![(1, int(1)), (2, int(1))]);
    }

    #[test]
    fn reduce_leaves_non_pivot_lead() {
        let mut e = Echelon::new(4);
        e.insert(iv(&[1, 1, 0, 0]));
        let v = e.reduce(iv(&[3, 0, 0, 5]));
        assert_eq!(v.first().unwrap().0, 1);
    }

    proptest! {
        #[test]
        fn rref_independent_of_insertion_order(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..6)) {
            let mut a = Echelon::new(4);
            let mut b = Echelon::new(4);
            for r in &rows { a.insert(iv(r)); }
            for r in rows.iter().rev() { b.insert(iv(r)); }
            prop_assert_eq!(a.len(), b.len());
            prop_assert_eq!(a.rref(), b.rref());
            for r in &rows {
                prop_assert!(a.reduce(iv(r)).is_empty());
            }
        }
    }
}
