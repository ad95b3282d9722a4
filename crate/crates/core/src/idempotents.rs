//! The annihilating polynomials P₁, P₂ and the weight idempotents 1_λ.
//!
//! For λ ∈ Π the idempotent is
//! `1_λ = ∏ᵢ P₁^{(λᵢ)}(Hᵢ) / P₁^{(λᵢ)}(λᵢ)` where `P₁^{(k)}` is P₁ with the
//! factor (T − k) removed. It is evaluated one linear factor at a time.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::replinalg::{ExactMatrix, Poly, Representation};
use crate::rootdata::{Family, LieType, RootSystem, Weight};
use crate::scalar::{self, Rational};
use crate::weightsets::{tensor_weights, WeightSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AnnihilatorKind {
    P1,
    P2,
}

/// P₁(T) = ∏_{k=−r}^{r} (T − k) or P₂(T) = ∏_{k=−r, step 2}^{r} (T − k).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnnihilatorPolynomial {
    pub kind: AnnihilatorKind,
    pub r: usize,
    pub roots: Vec<i64>,
}

impl AnnihilatorPolynomial {
    pub fn new(kind: AnnihilatorKind, r: usize) -> Self {
        let r_i = r as i64;
        let step = match kind {
            AnnihilatorKind::P1 => 1,
            AnnihilatorKind::P2 => 2,
        };
        AnnihilatorPolynomial {
            kind,
            r,
            roots: (-r_i..=r_i).step_by(step).collect(),
        }
    }

    /// The kind used for the J relations: P₁ in type B, P₂ in types C, D.
    pub fn for_j(family: Family, r: usize) -> Self {
        match family {
            Family::B => Self::new(AnnihilatorKind::P1, r),
            Family::C | Family::D => Self::new(AnnihilatorKind::P2, r),
        }
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn poly(&self) -> Poly {
        Poly::from_int_roots(&self.roots)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.roots
            .iter()
            .fold(scalar::one(), |acc, &k| acc * (x - scalar::int(k)))
    }

    /// P(X) as a product of shifted copies of X.
    pub fn eval_matrix(&self, x: &ExactMatrix) -> Result<ExactMatrix> {
        let mut acc = ExactMatrix::identity(x.rows());
        for &k in &self.roots {
            acc = acc.mul(&x.add_scalar(&scalar::int(-k))?)?;
        }
        Ok(acc)
    }
}

/// P₁(T)/(T − k), of degree 2r.
pub fn deleted_factor_poly(r: usize, k: i64) -> Result<Poly> {
    let r_i = r as i64;
    if k < -r_i || k > r_i {
        return Err(Error::FactorOutOfRange { k, r });
    }
    let roots: Vec<i64> = (-r_i..=r_i).filter(|&j| j != k).collect();
    Ok(Poly::from_int_roots(&roots))
}

/// The family {1_λ : λ ∈ Π} on one representation.
#[derive(Clone, Debug)]
pub struct IdempotentFamily {
    ty: LieType,
    r: usize,
    dim: usize,
    pi: WeightSet,
    table: BTreeMap<Weight, ExactMatrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdempotentRank {
    pub weight: Vec<i64>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySummary {
    pub family: Family,
    pub rank: usize,
    pub r: usize,
    pub carrier_dim: usize,
    pub count: usize,
    pub idempotents: Vec<IdempotentRank>,
}

fn diagonal_spectrum(rep: &Representation) -> Result<Vec<Vec<Rational>>> {
    let r = rep.r as i64;
    rep.gens
        .h
        .iter()
        .enumerate()
        .map(|(i, h)| {
            if !h.is_diagonal() {
                return Err(Error::NonDiagonalCartan(i + 1));
            }
            let d = h.diagonal_entries();
            for x in &d {
                let ok = scalar::to_i64(x).is_some_and(|v| (-r..=r).contains(&v));
                if !ok {
                    return Err(Error::SpectrumOutOfRange {
                        index: i + 1,
                        value: scalar::to_short(x),
                        r: rep.r,
                    });
                }
            }
            Ok(d)
        })
        .collect()
}

/// Evaluates the interpolation formula at λ on the given Cartan matrices.
fn interpolate(h: &[ExactMatrix], lam: &Weight, r: usize) -> Result<ExactMatrix> {
    let dim = h[0].rows();
    let r_i = r as i64;
    let mut acc = ExactMatrix::identity(dim);
    for (i, hi) in h.iter().enumerate() {
        let li = &lam.coords()[i];
        for k in -r_i..=r_i {
            let k = scalar::int(k);
            if &k == li {
                continue;
            }
            let factor = hi
                .add_scalar(&-k.clone())?
                .scale(&(scalar::one() / (li - &k)));
            acc = acc.mul(&factor)?;
        }
    }
    Ok(acc)
}

/// Builds 1_λ for every λ ∈ Π(E^{⊗r}) from the interpolation formula and
/// checks each one against the eigenspace indicator.
pub fn build_idempotents(rep: &Representation) -> Result<IdempotentFamily> {
    let ty = rep.ty();
    let spectrum = diagonal_spectrum(rep)?;
    let pi = tensor_weights(ty, rep.r);
    let h = &rep.gens.h;
    let dim = rep.dim();
    let entries: Vec<(Weight, ExactMatrix)> = pi
        .elements()
        .par_iter()
        .map(|lam| {
            let m = interpolate(h, lam, rep.r)?;
            let indicator: Vec<Rational> = (0..dim)
                .map(|v| {
                    let hit = spectrum.iter().zip(lam.coords()).all(|(d, li)| &d[v] == li);
                    if hit {
                        scalar::one()
                    } else {
                        scalar::zero()
                    }
                })
                .collect();
            if m != ExactMatrix::diagonal(&indicator) {
                return Err(Error::IdempotentMismatch(lam.to_string()));
            }
            Ok((lam.clone(), m))
        })
        .collect::<Result<_>>()?;
    Ok(IdempotentFamily {
        ty,
        r: rep.r,
        dim,
        pi,
        table: entries.into_iter().collect(),
    })
}

impl IdempotentFamily {
    pub fn ty(&self) -> LieType {
        self.ty
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// The full index set Π, including any weight whose idempotent has been
    /// removed.
    pub fn pi(&self) -> &WeightSet {
        &self.pi
    }

    pub fn get(&self, lam: &Weight) -> Option<&ExactMatrix> {
        self.table.get(lam)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Present idempotents in descending weight order.
    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &ExactMatrix)> {
        self.table.iter().rev()
    }

    /// A copy with 1_λ dropped from the table (Π is unchanged).
    pub fn without(&self, lam: &Weight) -> IdempotentFamily {
        let mut out = self.clone();
        out.table.remove(lam);
        out
    }

    /// Σ_λ λᵢ 1_λ.
    pub fn reconstruct_h(&self, i: usize) -> Result<ExactMatrix> {
        if i >= self.ty.rank() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.ty.rank(),
            });
        }
        let mut acc = ExactMatrix::zeros(self.dim, self.dim);
        for (lam, m) in &self.table {
            acc = acc.add(&m.scale(&lam.coords()[i]))?;
        }
        Ok(acc)
    }

    pub fn ranks(&self) -> BTreeMap<Weight, usize> {
        self.table
            .iter()
            .map(|(w, m)| (w.clone(), m.rank()))
            .collect()
    }

    pub fn summary(&self) -> FamilySummary {
        FamilySummary {
            family: self.ty.family(),
            rank: self.ty.rank(),
            r: self.r,
            carrier_dim: self.dim,
            count: self.table.len(),
            idempotents: self
                .iter()
                .map(|(w, m)| IdempotentRank {
                    weight: w.to_ints().expect("weights of Π are integral"),
                    rank: m.rank(),
                })
                .collect(),
        }
    }

    /// 1_μ, or zero when μ ∉ Π.
    fn get_or_zero(&self, mu: &Weight) -> Option<ExactMatrix> {
        if self.pi.contains(mu) {
            self.table.get(mu).cloned()
        } else {
            Some(ExactMatrix::zeros(self.dim, self.dim))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderViolation {
    /// `"e"` or `"f"`.
    pub generator: String,
    /// 1-based simple root index.
    pub index: usize,
    pub weight: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LadderReport {
    pub checked: usize,
    pub violations: Vec<LadderViolation>,
}

impl LadderReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks e_i 1_λ = 1_{λ+α_i} e_i and f_i 1_λ = 1_{λ−α_i} f_i for all i and
/// all λ ∈ Π, with 1_μ = 0 for μ ∉ Π.
pub fn ladder_check(fam: &IdempotentFamily, rep: &Representation) -> Result<LadderReport> {
    if fam.ty != rep.ty() || fam.dim != rep.dim() {
        return Err(Error::FamilyMismatch(format!(
            "family on {} ({}-dim), representation on {} ({}-dim)",
            fam.ty,
            fam.dim,
            rep.ty(),
            rep.dim()
        )));
    }
    let rs = RootSystem::new(rep.ty());
    let mut cases = Vec::new();
    for i in 0..rs.rank() {
        for lam in fam.pi.iter() {
            cases.push((i, lam.clone()));
        }
    }
    let results: Vec<Result<Vec<LadderViolation>>> = cases
        .par_iter()
        .map(|(i, lam)| {
            let mut out = Vec::new();
            let Some(one_lam) = fam.table.get(lam) else {
                return Ok(out);
            };
            let alpha = &rs.simple_roots()[*i];
            for (name, x, target) in [
                ("e", &rep.gens.e[*i], lam + alpha),
                ("f", &rep.gens.f[*i], lam - alpha),
            ] {
                let Some(one_t) = fam.get_or_zero(&target) else {
                    continue;
                };
                if x.mul(one_lam)? != one_t.mul(x)? {
                    out.push(LadderViolation {
                        generator: name.to_string(),
                        index: i + 1,
                        weight: lam.to_string(),
                    });
                }
            }
            Ok(out)
        })
        .collect();
    let mut violations = Vec::new();
    for r in results {
        violations.extend(r?);
    }
    Ok(LadderReport {
        checked: 2 * cases.len(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::replinalg::{tensor_power_rep, tower_rep};
    use crate::scalar::int;

    fn ty(f: Family, n: usize) -> LieType {
        LieType::new(f, n).unwrap()
    }

    #[test]
    fn annihilator_degrees() {
        assert_eq!(
            AnnihilatorPolynomial::new(AnnihilatorKind::P1, 3).degree(),
            7
        );
        assert_eq!(
            AnnihilatorPolynomial::new(AnnihilatorKind::P2, 3).degree(),
            4
        );
        assert_eq!(
            AnnihilatorPolynomial::new(AnnihilatorKind::P2, 2).roots,
            vec![-2, 0, 2]
        );
    }

    #[test]
    fn deleted_factor_examples() {
        assert_eq!(
            deleted_factor_poly(1, 0).unwrap(),
            Poly::from_int_roots(&[-1, 1])
        );
        assert_eq!(
            deleted_factor_poly(1, 1).unwrap(),
            Poly::from_int_roots(&[-1, 0])
        );
        assert_eq!(deleted_factor_poly(2, 1).unwrap().degree(), Some(4));
        for k in -3..=3 {
            assert_ne!(deleted_factor_poly(3, k).unwrap().eval(&int(k)), int(0));
        }
        assert_eq!(
            deleted_factor_poly(1, 2),
            Err(Error::FactorOutOfRange { k: 2, r: 1 })
        );
    }

    #[test]
    fn family_on_c2_power() {
        let rep = tensor_power_rep(ty(Family::C, 2), 2, 3000).unwrap();
        let fam = build_idempotents(&rep).unwrap();
        assert_eq!(fam.len(), 9);
        assert_eq!(fam.ranks()[&Weight::from_ints(&[2, 0])], 1);
        assert_eq!(fam.ranks()[&Weight::zero(2)], 4);
        let mut sum = ExactMatrix::zeros(16, 16);
        for (a, ma) in fam.iter() {
            sum = sum.add(ma).unwrap();
            for (b, mb) in fam.iter() {
                let p = ma.mul(mb).unwrap();
                if a == b {
                    assert_eq!(&p, ma);
                } else {
                    assert!(p.is_zero());
                }
            }
        }
        assert_eq!(sum, ExactMatrix::identity(16));
        for i in 0..2 {
            assert_eq!(fam.reconstruct_h(i).unwrap(), rep.gens.h[i]);
            for (lam, m) in fam.iter() {
                assert_eq!(rep.gens.h[i].mul(m).unwrap(), m.scale(&lam.coords()[i]));
            }
        }
    }

    #[test]
    fn ladders_on_c2_tower() {
        let rep = tower_rep(ty(Family::C, 2), 2, 3000).unwrap();
        let fam = build_idempotents(&rep).unwrap();
        let report = ladder_check(&fam, &rep).unwrap();
        assert!(report.holds(), "{:?}", report.violations);
        assert_eq!(report.checked, 2 * 2 * 9);
        // λ = (2,0): λ + α₁ = (3,−1) ∉ Π, so e₁ 1_λ = 0.
        let top = fam.get(&Weight::from_ints(&[2, 0])).unwrap();
        assert!(rep.gens.e[0].mul(top).unwrap().is_zero());
        assert!(rep.gens.f[1]
            .mul(fam.get(&Weight::from_ints(&[-2, 0])).unwrap())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn spectrum_guard() {
        // The degree-2 tower paired with r = 1 has eigenvalues ±2.
        let mut rep = tower_rep(ty(Family::C, 1), 2, 3000).unwrap();
        rep.r = 1;
        assert!(matches!(
            build_idempotents(&rep),
            Err(Error::SpectrumOutOfRange { index: 1, .. })
        ));
    }

    #[test]
    fn trivial_carrier_reconstructs_zero() {
        let mut rep = tower_rep(ty(Family::B, 1), 1, 3000).unwrap();
        rep.gens.h = vec![ExactMatrix::zeros(1, 1)];
        rep.gens.space_dim = 1;
        let fam = build_idempotents(&rep).unwrap();
        assert!(fam.reconstruct_h(0).unwrap().is_zero());
    }

    #[test]
    fn annihilators_vanish_on_every_sign_choice() {
        for (t, r) in [
            (ty(Family::B, 2), 2),
            (ty(Family::C, 2), 2),
            (ty(Family::D, 3), 2),
        ] {
            let rep = tower_rep(t, r, 3000).unwrap();
            let p1 = AnnihilatorPolynomial::new(AnnihilatorKind::P1, r);
            let pj = AnnihilatorPolynomial::for_j(t.family(), r);
            for h in &rep.gens.h {
                assert!(p1.eval_matrix(h).unwrap().is_zero());
            }
            let n = t.rank();
            for mask in 0..(1u32 << n) {
                let mut j = ExactMatrix::zeros(rep.dim(), rep.dim());
                for (i, h) in rep.gens.h.iter().enumerate() {
                    let s = if mask >> i & 1 == 1 { int(-1) } else { int(1) };
                    j = j.add(&h.scale(&s)).unwrap();
                }
                assert!(pj.eval_matrix(&j).unwrap().is_zero(), "{t} mask={mask}");
            }
        }
    }
}
