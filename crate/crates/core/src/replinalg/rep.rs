use std::fmt;

use serde::Serialize;

use super::matrix::ExactMatrix;
use crate::error::{Error, Result};
use crate::rootdata::{Family, LieType, Weight};
use crate::scalar::{self, Rational};

/// Chevalley generators `e_i`, `f_i` and Cartan elements `H_i` acting on a
/// common space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    pub ty: LieType,
    pub e: Vec<ExactMatrix>,
    pub f: Vec<ExactMatrix>,
    pub h: Vec<ExactMatrix>,
    pub space_dim: usize,
}

impl GeneratorSet {
    /// Every generator in the order e₁…eₙ, f₁…fₙ, H₁…Hₙ.
    pub fn all(&self) -> Vec<ExactMatrix> {
        self.e
            .iter()
            .chain(&self.f)
            .chain(&self.h)
            .cloned()
            .collect()
    }

    fn map(&self, space_dim: usize, g: impl Fn(&ExactMatrix) -> ExactMatrix) -> GeneratorSet {
        GeneratorSet {
            ty: self.ty,
            e: self.e.iter().map(&g).collect(),
            f: self.f.iter().map(&g).collect(),
            h: self.h.iter().map(&g).collect(),
            space_dim,
        }
    }
}

/// 1-based matrix unit E_{a,b} on the natural module.
fn eu(m: usize, a: usize, b: usize) -> ExactMatrix {
    ExactMatrix::unit(m, m, a - 1, b - 1)
}

fn diff(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix {
    a.sub(&b).expect("same shape")
}

/// Generators on the natural module E under the standard forms.
pub fn natural_rep(ty: LieType) -> GeneratorSet {
    let n = ty.rank();
    let m = ty.natural_dim();
    let h: Vec<ExactMatrix> = (1..=n)
        .map(|i| diff(eu(m, i, i), eu(m, n + i, n + i)))
        .collect();
    let mut e = Vec::with_capacity(n);
    let mut f = Vec::with_capacity(n);
    for i in 1..n {
        e.push(diff(eu(m, i, i + 1), eu(m, n + i + 1, n + i)));
        f.push(diff(eu(m, i + 1, i), eu(m, n + i, n + i + 1)));
    }
    let (en, fn_) = match ty.family() {
        Family::B => (
            diff(eu(m, n, 2 * n + 1), eu(m, 2 * n + 1, 2 * n)),
            diff(eu(m, 2 * n + 1, n), eu(m, 2 * n, 2 * n + 1)).scale(&scalar::int(2)),
        ),
        Family::C => (eu(m, n, 2 * n), eu(m, 2 * n, n)),
        Family::D => (
            diff(eu(m, n - 1, 2 * n), eu(m, n, 2 * n - 1)),
            diff(eu(m, 2 * n, n - 1), eu(m, 2 * n - 1, n)),
        ),
    };
    e.push(en);
    f.push(fn_);
    GeneratorSet {
        ty,
        e,
        f,
        h,
        space_dim: m,
    }
}

/// Matrix M of the invariant form on E.
pub fn form_matrix(ty: LieType) -> ExactMatrix {
    let n = ty.rank();
    let m = ty.natural_dim();
    let one = scalar::one();
    let mut entries = Vec::new();
    for i in 0..n {
        let lower = match ty.family() {
            Family::C => -one.clone(),
            _ => one.clone(),
        };
        entries.push((i, n + i, one.clone()));
        entries.push((n + i, i, lower));
    }
    if ty.family() == Family::B {
        entries.push((2 * n, 2 * n, one));
    }
    ExactMatrix::from_entries(m, m, entries)
}

/// Weights of the standard basis of E: v_i ↦ εᵢ, v_{n+i} ↦ −εᵢ, v_{2n+1} ↦ 0.
pub fn natural_weights(ty: LieType) -> Vec<Weight> {
    let n = ty.rank();
    let mut out: Vec<Weight> = (0..n).map(|i| Weight::unit(n, i)).collect();
    out.extend((0..n).map(|i| -&Weight::unit(n, i)));
    if ty.family() == Family::B {
        out.push(Weight::zero(n));
    }
    out
}

/// Σ_k Id^{⊗k} ⊗ X ⊗ Id^{⊗(r−1−k)}: the derivation action on E^{⊗r}.
pub fn tensor_lift(x: &ExactMatrix, r: usize) -> Result<ExactMatrix> {
    if r < 1 {
        return Err(Error::ZeroDegree);
    }
    if !x.is_square() {
        return Err(Error::DimensionMismatch(
            "tensor lift of a non-square matrix".into(),
        ));
    }
    let m = x.rows();
    let mut acc = ExactMatrix::zeros(m.pow(r as u32), m.pow(r as u32));
    for k in 0..r {
        let left = ExactMatrix::identity(m.pow(k as u32));
        let right = ExactMatrix::identity(m.pow((r - 1 - k) as u32));
        acc = acc.add(&left.kron(x).kron(&right))?;
    }
    Ok(acc)
}

/// What space a representation acts on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "degrees", rename_all = "snake_case")]
pub enum Carrier {
    /// E^{⊗r}.
    TensorPower(usize),
    /// ⊕ E^{⊗s} over the listed degrees, in this block order.
    Tower(Vec<usize>),
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Carrier::TensorPower(r) => write!(f, "E^{r}"),
            Carrier::Tower(ds) => {
                let parts: Vec<String> = ds.iter().map(|s| format!("E^{s}")).collect();
                f.write_str(&parts.join(" + "))
            }
        }
    }
}

/// Degrees s of the tower ⊕ E^{⊗s} attached to (type, r), ascending.
pub fn tower_degrees(family: Family, r: usize) -> Vec<usize> {
    match family {
        Family::B => (0..=r).collect(),
        Family::C | Family::D => (r % 2..=r).step_by(2).collect(),
    }
}

/// Generators acting on a concrete carrier, with the weight of every basis
/// vector.
#[derive(Clone, Debug)]
pub struct Representation {
    pub gens: GeneratorSet,
    pub carrier: Carrier,
    pub weights: Vec<Weight>,
    pub r: usize,
}

impl Representation {
    pub fn ty(&self) -> LieType {
        self.gens.ty
    }

    pub fn dim(&self) -> usize {
        self.gens.space_dim
    }

    /// A copy with f_i replaced by c·f_i (fault injection).
    pub fn with_scaled_f(&self, i: usize, c: &Rational) -> Result<Representation> {
        if i >= self.gens.f.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                rank: self.gens.f.len(),
            });
        }
        let mut out = self.clone();
        out.gens.f[i] = out.gens.f[i].scale(c);
        Ok(out)
    }
}

fn tensor_weights_of(ty: LieType, s: usize) -> Vec<Weight> {
    let base = natural_weights(ty);
    let mut out = vec![Weight::zero(ty.rank())];
    for _ in 0..s {
        out = out
            .iter()
            .flat_map(|w| base.iter().map(move |b| w + b))
            .collect();
    }
    out
}

fn power_dim(ty: LieType, s: usize) -> usize {
    ty.natural_dim().saturating_pow(s as u32)
}

fn check_cap(dim: usize, max_dim: usize) -> Result<()> {
    if dim > max_dim {
        return Err(Error::CarrierTooLarge { dim, cap: max_dim });
    }
    Ok(())
}

fn power_block(nat: &GeneratorSet, s: usize) -> Result<GeneratorSet> {
    if s == 0 {
        return Ok(nat.map(1, |_| ExactMatrix::zeros(1, 1)));
    }
    let dim = nat.space_dim.pow(s as u32);
    let lift = |x: &ExactMatrix| tensor_lift(x, s).expect("degree and shape already checked");
    Ok(nat.map(dim, lift))
}

/// The representation on E^{⊗r}.
pub fn tensor_power_rep(ty: LieType, r: usize, max_dim: usize) -> Result<Representation> {
    if r < 1 {
        return Err(Error::ZeroDegree);
    }
    check_cap(power_dim(ty, r), max_dim)?;
    let gens = power_block(&natural_rep(ty), r)?;
    Ok(Representation {
        gens,
        carrier: Carrier::TensorPower(r),
        weights: tensor_weights_of(ty, r),
        r,
    })
}

/// The representation on the tower ⊕ E^{⊗s}: s = 0…r in type B and
/// s ≡ r (mod 2), s ≤ r in types C, D. Blocks are in ascending s.
pub fn tower_rep(ty: LieType, r: usize, max_dim: usize) -> Result<Representation> {
    if r < 1 {
        return Err(Error::ZeroDegree);
    }
    let degrees = tower_degrees(ty.family(), r);
    let dim: usize = degrees.iter().map(|&s| power_dim(ty, s)).sum();
    check_cap(dim, max_dim)?;
    let nat = natural_rep(ty);
    let blocks = degrees
        .iter()
        .map(|&s| power_block(&nat, s))
        .collect::<Result<Vec<_>>>()?;
    let stack = |pick: &dyn Fn(&GeneratorSet) -> &Vec<ExactMatrix>, i: usize| {
        let parts: Vec<ExactMatrix> = blocks.iter().map(|b| pick(b)[i].clone()).collect();
        ExactMatrix::block_diag(&parts)
    };
    let n = ty.rank();
    let gens = GeneratorSet {
        ty,
        e: (0..n).map(|i| stack(&|b| &b.e, i)).collect(),
        f: (0..n).map(|i| stack(&|b| &b.f, i)).collect(),
        h: (0..n).map(|i| stack(&|b| &b.h, i)).collect(),
        space_dim: dim,
    };
    let weights = degrees
        .iter()
        .flat_map(|&s| tensor_weights_of(ty, s))
        .collect();
    Ok(Representation {
        gens,
        carrier: Carrier::Tower(degrees),
        weights,
        r,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::RootSystem;
    use crate::scalar::int;
    use proptest::prelude::*;

    fn ty(f: Family, n: usize) -> LieType {
        LieType::new(f, n).unwrap()
    }

    fn all_types(max: usize) -> Vec<LieType> {
        let mut out = Vec::new();
        for n in 1..=max {
            out.push(ty(Family::B, n));
            out.push(ty(Family::C, n));
            if n >= 2 {
                out.push(ty(Family::D, n));
            }
        }
        out
    }

    fn bracket_target(g: &GeneratorSet, i: usize) -> ExactMatrix {
        let n = g.ty.rank();
        if i + 1 < n {
            return g.h[i].sub(&g.h[i + 1]).unwrap();
        }
        match g.ty.family() {
            Family::B => g.h[n - 1].scale(&int(2)),
            Family::C => g.h[n - 1].clone(),
            Family::D => g.h[n - 2].add(&g.h[n - 1]).unwrap(),
        }
    }

    #[test]
    fn c2_h1_and_b2_bracket() {
        let c2 = natural_rep(ty(Family::C, 2));
        assert_eq!(
            c2.h[0],
            ExactMatrix::diagonal(&[int(1), int(0), int(-1), int(0)])
        );
        let b2 = natural_rep(ty(Family::B, 2));
        assert_eq!(
            b2.e[1].commutator(&b2.f[1]).unwrap(),
            b2.h[1].scale(&int(2))
        );
    }

    #[test]
    fn natural_generators_are_valid() {
        for t in all_types(4) {
            let g = natural_rep(t);
            let rs = RootSystem::new(t);
            let m = form_matrix(t);
            let n = t.rank();
            for x in g.all() {
                let lhs = x
                    .transpose()
                    .mul(&m)
                    .unwrap()
                    .add(&m.mul(&x).unwrap())
                    .unwrap();
                assert!(lhs.is_zero(), "{t}: form not preserved");
            }
            for (i, h) in g.h.iter().enumerate() {
                assert!(h.is_diagonal());
                let w = natural_weights(t);
                for (k, wk) in w.iter().enumerate() {
                    assert_eq!(h.get(k, k), wk.coords()[i].clone());
                }
            }
            for i in 0..n {
                for j in 0..n {
                    let br = g.e[i].commutator(&g.f[j]).unwrap();
                    if i == j {
                        assert_eq!(br, bracket_target(&g, i), "{t} i={i}");
                    } else {
                        assert!(br.is_zero());
                    }
                    // [H_i, e_j] = (ε_i, α_j) e_j
                    let c = rs.simple_roots()[j].coords()[i].clone();
                    assert_eq!(g.h[i].commutator(&g.e[j]).unwrap(), g.e[j].scale(&c));
                    assert_eq!(g.h[i].commutator(&g.f[j]).unwrap(), g.f[j].scale(&-c));
                }
            }
        }
    }

    #[test]
    fn tensor_lift_examples() {
        let g = natural_rep(ty(Family::C, 2));
        assert_eq!(tensor_lift(&g.e[0], 1).unwrap(), g.e[0]);
        assert_eq!(tensor_lift(&g.h[0], 0), Err(Error::ZeroDegree));
        let b = natural_rep(ty(Family::B, 2));
        let x = b.h[0]
            .add(&b.e[0])
            .unwrap()
            .add(&ExactMatrix::identity(5))
            .unwrap();
        assert_eq!(tensor_lift(&x, 2).unwrap().trace(), int(2 * 5) * x.trace());
        let lifted = tensor_lift(&g.h[0], 2).unwrap();
        assert!(lifted.is_diagonal());
        let mut got: Vec<Rational> = lifted.diagonal_entries();
        got.sort();
        let base = [1, 0, -1, 0];
        let mut expect: Vec<Rational> = base
            .iter()
            .flat_map(|a| base.iter().map(move |b| int(a + b)))
            .collect();
        expect.sort();
        assert_eq!(got, expect);
    }

    #[test]
    fn tower_dimensions() {
        assert_eq!(tower_rep(ty(Family::B, 2), 2, 3000).unwrap().dim(), 31);
        assert_eq!(tower_rep(ty(Family::C, 1), 2, 3000).unwrap().dim(), 5);
        assert_eq!(tower_rep(ty(Family::C, 2), 3, 3000).unwrap().dim(), 68);
        assert_eq!(tower_degrees(Family::D, 3), vec![1, 3]);
        assert!(matches!(
            tower_rep(ty(Family::B, 3), 4, 1000),
            Err(Error::CarrierTooLarge {
                dim: 2801,
                cap: 1000
            })
        ));
    }

    #[test]
    fn weights_match_cartan_diagonals() {
        for t in all_types(2) {
            for r in 1..=3 {
                let rep = tower_rep(t, r, 3000).unwrap();
                assert_eq!(rep.weights.len(), rep.dim());
                for (i, h) in rep.gens.h.iter().enumerate() {
                    assert!(h.is_diagonal());
                    for (k, w) in rep.weights.iter().enumerate() {
                        assert_eq!(h.get(k, k), w.coords()[i].clone());
                    }
                }
            }
        }
    }

    #[test]
    fn fault_injection_scales_one_generator() {
        let rep = tower_rep(ty(Family::C, 2), 2, 3000).unwrap();
        let bad = rep.with_scaled_f(1, &int(2)).unwrap();
        assert_eq!(bad.gens.f[1], rep.gens.f[1].scale(&int(2)));
        assert_eq!(bad.gens.f[0], rep.gens.f[0]);
        assert!(rep.with_scaled_f(2, &int(2)).is_err());
    }

    proptest! {
        #[test]
        fn lift_commutes_with_bracket(a in 0usize..9, b in 0usize..9, r in 1usize..=3) {
            let g = natural_rep(ty(Family::B, 3));
            let all = g.all();
            let (x, y) = (&all[a], &all[b]);
            let lhs = tensor_lift(&x.commutator(y).unwrap(), r).unwrap();
            let rhs = tensor_lift(x, r).unwrap().commutator(&tensor_lift(y, r).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
