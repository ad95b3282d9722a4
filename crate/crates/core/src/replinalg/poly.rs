use std::fmt;

use num_traits::{One, Signed, Zero};

use super::echelon::{clear_denominators, Echelon};
use super::matrix::ExactMatrix;
use crate::error::{Error, Result};
use crate::scalar::{self, Rational};

/// A univariate polynomial over ℚ in the variable T, coefficients stored from
/// the constant term upward with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Poly::new(vec![Rational::one()])
    }

    /// ∏ (T − rᵢ).
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Poly::one(), |acc, r| {
            acc.mul(&Poly::new(vec![-r.clone(), Rational::one()]))
        })
    }

    pub fn from_int_roots(roots: &[i64]) -> Self {
        Self::from_roots(&roots.iter().map(|&k| scalar::int(k)).collect::<Vec<_>>())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// p(X) by Horner's rule.
    pub fn eval_matrix(&self, x: &ExactMatrix) -> Result<ExactMatrix> {
        if !x.is_square() {
            return Err(Error::DimensionMismatch(
                "polynomial of a non-square matrix".into(),
            ));
        }
        let mut acc = ExactMatrix::zeros(x.rows(), x.cols());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x)?.add_scalar(c)?;
        }
        Ok(acc)
    }

    /// Quotient and remainder by a nonzero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.coeffs[dd].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); rem.len().saturating_sub(dd)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() / &lead;
            for (i, b) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * b;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.div_rem(self).1.is_zero()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = k == 0 || !mag.is_one();
            if show_coeff {
                f.write_str(&scalar::to_short(&mag))?;
            }
            match k {
                0 => {}
                1 => f.write_str("T")?,
                _ => write!(f, "T^{k}")?,
            }
        }
        Ok(())
    }
}

/// The monic minimal polynomial of a square matrix.
///
/// Powers I, X, X², … are vectorized with an extra coordinate recording the
/// exponent; the first power that falls into the span of its predecessors
/// leaves behind exactly the coefficients of the annihilating relation.
pub fn minimal_polynomial(x: &ExactMatrix) -> Result<Poly> {
    if !x.is_square() {
        return Err(Error::DimensionMismatch(
            "minimal polynomial of a non-square matrix".into(),
        ));
    }
    let n = x.rows();
    let base = n * n;
    let mut ech = Echelon::new(base + n + 1);
    let mut power = ExactMatrix::identity(n);
    for k in 0..=n {
        let mut v: Vec<(usize, Rational)> = power.vectorize().collect();
        v.push((base + k, Rational::one()));
        let reduced = ech.reduce(clear_denominators(v));
        let lead = reduced
            .first()
            .map(|e| e.0)
            .expect("augmented coordinate survives");
        if lead >= base {
            let top = reduced
                .iter()
                .find(|(j, _)| *j == base + k)
                .map(|(_, c)| Rational::from_integer(c.clone()))
                .expect("relation involves the newest power");
            let mut coeffs = vec![Rational::zero(); k + 1];
            for (j, c) in &reduced {
                coeffs[j - base] = Rational::from_integer(c.clone()) / &top;
            }
            return Ok(Poly::new(coeffs));
        }
        ech.insert(reduced);
        power = power.mul(x)?;
    }
    unreachable!("Cayley-Hamilton bounds the degree by n")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;
    use proptest::prelude::*;

    #[test]
    fn roots_and_display() {
        let p = Poly::from_int_roots(&[1, -1]);
        assert_eq!(p.to_string(), "T^2 - 1");
        assert_eq!(Poly::from_int_roots(&[-1, 0]).to_string(), "T^2 + T");
        assert_eq!(p.eval(&int(3)), int(8));
        assert_eq!(Poly::zero().to_string(), "0");
    }

    #[test]
    fn division() {
        let p = Poly::from_int_roots(&[-2, -1, 0, 1, 2]);
        let d = Poly::from_int_roots(&[-2, 0, 2]);
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_int_roots(&[-1, 1]));
        assert!(d.divides(&p));
        assert!(!Poly::from_int_roots(&[3]).divides(&p));
    }

    #[test]
    fn minimal_polynomial_examples() {
        assert_eq!(
            minimal_polynomial(&ExactMatrix::identity(4)).unwrap(),
            Poly::from_int_roots(&[1])
        );
        let nil = ExactMatrix::from_ints(&[vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(
            minimal_polynomial(&nil).unwrap(),
            Poly::from_int_roots(&[0, 0])
        );
        let d = ExactMatrix::from_ints(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, -1]]).unwrap();
        assert_eq!(
            minimal_polynomial(&d).unwrap(),
            Poly::from_int_roots(&[2, -1])
        );
    }

    proptest! {
        #[test]
        fn minimal_polynomial_annihilates(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3)) {
            let x = ExactMatrix::from_ints(&rows).unwrap();
            let p = minimal_polynomial(&x).unwrap();
            prop_assert!(p.is_monic());
            prop_assert!(p.eval_matrix(&x).unwrap().is_zero());
            // Minimality: I, X, …, X^(deg−1) are linearly independent.
            let deg = p.degree().unwrap();
            let mut ech = Echelon::new(9);
            let mut pw = ExactMatrix::identity(3);
            for _ in 0..deg {
                prop_assert!(ech.insert_rational(pw.vectorize()));
                pw = pw.mul(&x).unwrap();
            }
        }

        #[test]
        fn div_rem_reconstructs(a in prop::collection::vec(-4i64..=4, 1..6), b in prop::collection::vec(-4i64..=4, 1..4)) {
            let p = Poly::new(a.iter().map(|&x| int(x)).collect());
            let d = Poly::new(b.iter().map(|&x| int(x)).collect());
            prop_assume!(!d.is_zero());
            let (q, r) = p.div_rem(&d);
            let mut sum = q.mul(&d).coeffs().to_vec();
            let len = sum.len().max(r.coeffs().len());
            sum.resize(len, Rational::zero());
            for (i, c) in r.coeffs().iter().enumerate() { sum[i] += c; }
            prop_assert_eq!(Poly::new(sum), p);
            prop_assert!(r.degree().is_none_or(|rd| rd < d.degree().unwrap()));
        }
    }
}
