use std::collections::VecDeque;

use rayon::prelude::*;

use super::echelon::Echelon;
use super::matrix::ExactMatrix;
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// The unital associative algebra generated by a set of square matrices.
#[derive(Clone, Debug)]
pub struct AlgebraClosure {
    size: usize,
    echelon: Echelon,
}

impl AlgebraClosure {
    pub fn dimension(&self) -> usize {
        self.echelon.len()
    }

    /// Side length of the matrices in the algebra.
    pub fn matrix_size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, x: &ExactMatrix) -> bool {
        x.rows() == self.size
            && x.cols() == self.size
            && self.echelon.contains_rational(x.vectorize())
    }

    /// The reduced row echelon basis, reshaped into matrices. Two generating
    /// sets give the same list exactly when they generate the same algebra.
    pub fn canonical_basis(&self) -> Vec<ExactMatrix> {
        let n = self.size;
        self.echelon
            .rref()
            .iter()
            .map(|row| {
                ExactMatrix::from_entries(n, n, row.iter().map(|(k, x)| (k / n, k % n, x.clone())))
            })
            .collect()
    }

    pub fn same_algebra(&self, other: &AlgebraClosure) -> bool {
        self.size == other.size && self.echelon.rref() == other.echelon.rref()
    }
}

/// Spans words in the generators by breadth-first left multiplication,
/// starting from the identity. Products of one basis element with all
/// generators are formed in parallel and reduced in generator order.
pub fn algebra_closure(mats: &[ExactMatrix]) -> Result<AlgebraClosure> {
    let Some(first) = mats.first() else {
        return Err(Error::DimensionMismatch(
            "closure needs at least one generator".into(),
        ));
    };
    let size = first.rows();
    for m in mats {
        if m.rows() != size || m.cols() != size {
            return Err(Error::DimensionMismatch(format!(
                "closure generators must all be {size}x{size}, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
    }
    let mut echelon = Echelon::new(size * size);
    let id = ExactMatrix::identity(size);
    echelon.insert_rational(id.vectorize());
    let mut queue = VecDeque::from([id]);
    while let Some(b) = queue.pop_front() {
        let products: Vec<ExactMatrix> = mats
            .par_iter()
            .map(|g| g.mul(&b).expect("shapes checked"))
            .collect();
        for p in products {
            let v: Vec<(usize, Rational)> = p.vectorize().collect();
            if echelon.insert_rational(v) {
                queue.push_back(p);
            }
        }
    }
    Ok(AlgebraClosure { size, echelon })
}
