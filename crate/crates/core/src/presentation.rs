//! Relation checkers for the Serre-type presentations (X1)–(X7) with
//! X ∈ {B, C, D} and for the idempotent presentation (R1)–(R8), evaluated as
//! exact operator identities on a concrete representation.
//!
//! Also: the zero-locus scan for the Cartan relations and the comparison of
//! the algebra generated on E^{⊗r} with the one generated on the tower.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::idempotents::{AnnihilatorKind, AnnihilatorPolynomial, IdempotentFamily};
use crate::replinalg::{algebra_closure, tensor_power_rep, tower_rep, ExactMatrix, Representation};
use crate::rootdata::{Family, LieType, RootSystem, Weight};
use crate::scalar::{self, Rational};
use crate::weightsets::{tensor_weights, WeightSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
}

/// Location and value of the largest residual entry of a failing instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub instance: String,
    pub row: usize,
    pub col: usize,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationStatus {
    pub label: String,
    pub status: Status,
    /// Instances evaluated.
    pub instances: usize,
    /// Instances not evaluated because they involve an idempotent missing
    /// from the family.
    pub skipped: usize,
    /// Instances that failed.
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub presentation: String,
    pub family: Family,
    pub rank: usize,
    pub r: usize,
    pub carrier: String,
    pub reduced_word: Vec<usize>,
    pub generator_convention: String,
    pub relations: Vec<RelationStatus>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.relations.iter().all(|r| r.status == Status::Holds)
    }

    pub fn failed_labels(&self) -> Vec<&str> {
        self.relations
            .iter()
            .filter(|r| r.status == Status::Fails)
            .map(|r| r.label.as_str())
            .collect()
    }

    pub fn get(&self, label: &str) -> Option<&RelationStatus> {
        self.relations.iter().find(|r| r.label == label)
    }
}

/// Human-readable statement of the root vectors on E (1-based units E_{a,b}).
pub fn generator_convention(family: Family) -> String {
    let common = "H_i = E_{i,i} - E_{n+i,n+i}; e_i = E_{i,i+1} - E_{n+i+1,n+i}, \
                  f_i = E_{i+1,i} - E_{n+i,n+i+1} (i<n)";
    let last = match family {
        Family::B => "e_n = E_{n,2n+1} - E_{2n+1,2n}, f_n = 2(E_{2n+1,n} - E_{2n,2n+1})",
        Family::C => "e_n = E_{n,2n}, f_n = E_{2n,n}",
        Family::D => "e_n = E_{n-1,2n} - E_{n,2n-1}, f_n = E_{2n,n-1} - E_{2n-1,n}",
    };
    format!("{common}; {last}")
}

/// One evaluated instance: `None` when skipped.
type Instance = (String, Option<ExactMatrix>);

fn summarize(label: String, instances: Vec<Instance>) -> RelationStatus {
    let mut evaluated = 0;
    let mut skipped = 0;
    let mut failures = 0;
    let mut witness = None;
    for (name, residual) in instances {
        match residual {
            None => skipped += 1,
            Some(res) => {
                evaluated += 1;
                if let Some((row, col, x)) = res.max_abs_entry() {
                    failures += 1;
                    if witness.is_none() {
                        witness = Some(Witness {
                            instance: name,
                            row,
                            col,
                            residual: scalar::to_pq(&x),
                        });
                    }
                }
            }
        }
    }
    RelationStatus {
        label,
        status: if failures == 0 {
            Status::Holds
        } else {
            Status::Fails
        },
        instances: evaluated,
        skipped,
        failures,
        witness,
    }
}

fn binomial(n: i64, k: i64) -> i64 {
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

/// Σ_s (−1)^s C(1−a, s) x_i^{1−a−s} x_j x_i^s.
fn serre_element(xi: &ExactMatrix, xj: &ExactMatrix, a: i64) -> Result<ExactMatrix> {
    let top = 1 - a;
    let mut acc = ExactMatrix::zeros(xi.rows(), xi.cols());
    for s in 0..=top {
        let c = binomial(top, s) * if s % 2 == 0 { 1 } else { -1 };
        let term = xi.pow((top - s) as u32)?.mul(xj)?.mul(&xi.pow(s as u32)?)?;
        acc = acc.add(&term.scale(&scalar::int(c)))?;
    }
    Ok(acc)
}

fn serre_instances(rs: &RootSystem, x: &[ExactMatrix]) -> Result<Vec<Instance>> {
    let n = rs.rank();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let a = rs.cartan()[i][j];
            Ok((
                format!("i={},j={}", i + 1, j + 1),
                Some(serre_element(&x[i], &x[j], a)?),
            ))
        })
        .collect()
}

/// Target of [e_i, f_i] in the Serre-type presentation.
fn bracket_target(ty: LieType, h: &[ExactMatrix], i: usize) -> Result<ExactMatrix> {
    let n = ty.rank();
    if i + 1 < n {
        return h[i].sub(&h[i + 1]);
    }
    Ok(match ty.family() {
        Family::B => h[n - 1].scale(&scalar::int(2)),
        Family::C => h[n - 1].clone(),
        Family::D => h[n - 2].add(&h[n - 1])?,
    })
}

/// All J = ±H₁ ± ⋯ ± Hₙ with their sign strings; bit i of the mask flips Hᵢ.
fn sign_choices(h: &[ExactMatrix]) -> Result<Vec<(String, ExactMatrix)>> {
    let n = h.len();
    let dim = h[0].rows();
    (0..(1u32 << n))
        .map(|mask| {
            let mut j = ExactMatrix::zeros(dim, dim);
            let mut name = String::new();
            for (i, hi) in h.iter().enumerate() {
                let neg = mask >> i & 1 == 1;
                name.push_str(&format!("{}H{}", if neg { "-" } else { "+" }, i + 1));
                j = if neg { j.sub(hi)? } else { j.add(hi)? };
            }
            Ok((name, j))
        })
        .collect()
}

fn check_type(ty: LieType, r: usize, rep: &Representation) -> Result<()> {
    if rep.ty() != ty || rep.r != r {
        return Err(Error::TypeMismatch {
            expected: format!("{ty}, r={r}"),
            found: format!("{}, r={}", rep.ty(), rep.r),
        });
    }
    Ok(())
}

fn base_report(presentation: &str, ty: LieType, r: usize, rep: &Representation) -> RelationReport {
    let rs = RootSystem::new(ty);
    RelationReport {
        presentation: presentation.to_string(),
        family: ty.family(),
        rank: ty.rank(),
        r,
        carrier: rep.carrier.to_string(),
        reduced_word: rs.longest_element().word_one_based(),
        generator_convention: generator_convention(ty.family()),
        relations: Vec::new(),
    }
}

type RelationJob<'a> = Box<dyn Fn() -> Result<Vec<Instance>> + Send + Sync + 'a>;

fn run_jobs(prefix: &str, jobs: Vec<RelationJob<'_>>) -> Result<Vec<RelationStatus>> {
    jobs.par_iter()
        .enumerate()
        .map(|(k, job)| Ok(summarize(format!("{prefix}{}", k + 1), job()?)))
        .collect()
}

/// Checks (X1)–(X7) of the Serre-type presentation for the family X of `ty`.
pub fn verify_serre_presentation(
    ty: LieType,
    r: usize,
    rep: &Representation,
) -> Result<RelationReport> {
    check_type(ty, r, rep)?;
    let rs = RootSystem::new(ty);
    let n = ty.rank();
    let g = &rep.gens;
    let h = &g.h;

    let x1: RelationJob = Box::new(|| {
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                out.push((
                    format!("i={},j={}", i + 1, j + 1),
                    Some(h[i].commutator(&h[j])?),
                ));
            }
        }
        Ok(out)
    });
    let x2: RelationJob = Box::new(|| {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let mut res = g.e[i].commutator(&g.f[j])?;
                if i == j {
                    res = res.sub(&bracket_target(ty, h, i)?)?;
                }
                out.push((format!("i={},j={}", i + 1, j + 1), Some(res)));
            }
        }
        Ok(out)
    });
    let x3: RelationJob = Box::new(|| {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let c = rs.simple_roots()[j].coords()[i].clone();
                let re = h[i].commutator(&g.e[j])?.sub(&g.e[j].scale(&c))?;
                let rf = h[i].commutator(&g.f[j])?.add(&g.f[j].scale(&c))?;
                out.push((format!("H{} e{}", i + 1, j + 1), Some(re)));
                out.push((format!("H{} f{}", i + 1, j + 1), Some(rf)));
            }
        }
        Ok(out)
    });
    let x4: RelationJob = Box::new(|| serre_instances(&rs, &g.e));
    let x5: RelationJob = Box::new(|| serre_instances(&rs, &g.f));
    let x6: RelationJob = Box::new(|| {
        let p1 = AnnihilatorPolynomial::new(AnnihilatorKind::P1, r);
        h.iter()
            .enumerate()
            .map(|(i, hi)| Ok((format!("i={}", i + 1), Some(p1.eval_matrix(hi)?))))
            .collect()
    });
    let x7: RelationJob = Box::new(|| {
        let p = AnnihilatorPolynomial::for_j(ty.family(), r);
        sign_choices(h)?
            .into_par_iter()
            .map(|(name, j)| Ok((format!("J={name}"), Some(p.eval_matrix(&j)?))))
            .collect()
    });

    let mut report = base_report(&ty.family().to_string(), ty, r, rep);
    report.relations = run_jobs(&ty.family().to_string(), vec![x1, x2, x3, x4, x5, x6, x7])?;
    Ok(report)
}

/// Checks (R1)–(R8) on `rep` using the idempotents in `fam`.
///
/// The index set is always the true Π. An instance whose identity involves an
/// idempotent absent from `fam` (with nonzero coefficient) is skipped and
/// counted, except the completeness sum in (R1), which is taken over the
/// idempotents present.
pub fn verify_idempotent_presentation(
    ty: LieType,
    r: usize,
    rep: &Representation,
    fam: &IdempotentFamily,
) -> Result<RelationReport> {
    check_type(ty, r, rep)?;
    if fam.ty() != ty || fam.r() != r || fam.dim() != rep.dim() {
        return Err(Error::FamilyMismatch(format!(
            "family on {} r={} ({}-dim), representation on {ty} r={r} ({}-dim)",
            fam.ty(),
            fam.r(),
            fam.dim(),
            rep.dim()
        )));
    }
    let rs = RootSystem::new(ty);
    let n = ty.rank();
    let g = &rep.gens;
    let dim = rep.dim();
    let pi = fam.pi();
    let zero = ExactMatrix::zeros(dim, dim);

    // 1_μ for μ ∈ Π if present, zero for μ ∉ Π, None if missing.
    let idem = |mu: &Weight| -> Option<ExactMatrix> {
        if pi.contains(mu) {
            fam.get(mu).cloned()
        } else {
            Some(zero.clone())
        }
    };

    let r1: RelationJob = Box::new(|| {
        let lams = pi.elements();
        let mut out: Vec<Instance> = lams
            .par_iter()
            .flat_map_iter(|a| {
                lams.iter().map(move |b| {
                    let name = format!("1_{a} 1_{b}");
                    match (fam.get(a), fam.get(b)) {
                        (Some(ma), Some(mb)) => {
                            let p = ma.mul(mb).expect("square");
                            let res = if a == b {
                                p.sub(ma).expect("square")
                            } else {
                                p
                            };
                            (name, Some(res))
                        }
                        _ => (name, None),
                    }
                })
            })
            .collect();
        let mut sum = ExactMatrix::zeros(dim, dim);
        for (_, m) in fam.iter() {
            sum = sum.add(m)?;
        }
        out.push((
            "sum = 1".to_string(),
            Some(sum.sub(&ExactMatrix::identity(dim))?),
        ));
        Ok(out)
    });
    let r2: RelationJob = Box::new(|| {
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let name = format!("i={},j={}", i + 1, j + 1);
                let mut res = g.e[i].commutator(&g.f[j])?;
                if i == j {
                    let mut complete = true;
                    for lam in pi.iter() {
                        let c = rs.pairing(lam, i);
                        if c == Rational::from_integer(0.into()) {
                            continue;
                        }
                        match fam.get(lam) {
                            Some(m) => res = res.sub(&m.scale(&c))?,
                            None => complete = false,
                        }
                    }
                    if !complete {
                        out.push((name, None));
                        continue;
                    }
                }
                out.push((name, Some(res)));
            }
        }
        Ok(out)
    });

    // Ladder relations: `left` = true means x·1_λ, else 1_λ·x; `shift` is ±α.
    let ladder = |x: &'_ [ExactMatrix], sign: i64, left: bool| -> Result<Vec<Instance>> {
        let cases: Vec<(usize, &Weight)> = (0..n)
            .flat_map(|i| pi.iter().map(move |l| (i, l)))
            .collect();
        Ok(cases
            .par_iter()
            .map(|&(i, lam)| {
                let name = format!("i={},lambda={lam}", i + 1);
                let alpha = rs.simple_roots()[i].scale(&scalar::int(sign));
                let target = lam + &alpha;
                let (Some(one_l), Some(one_t)) = (fam.get(lam).cloned(), idem(&target)) else {
                    return (name, None);
                };
                let res = if left {
                    x[i].mul(&one_l).and_then(|a| a.sub(&one_t.mul(&x[i])?))
                } else {
                    one_l.mul(&x[i]).and_then(|a| a.sub(&x[i].mul(&one_t)?))
                };
                (name, Some(res.expect("square")))
            })
            .collect())
    };
    // (R3) e_i 1_λ = 1_{λ+α} e_i; (R4) f_i 1_λ = 1_{λ−α} f_i;
    // (R5) 1_λ e_i = e_i 1_{λ−α}; (R6) 1_λ f_i = f_i 1_{λ+α}.
    let r3: RelationJob = Box::new(|| ladder(&g.e, 1, true));
    let r4: RelationJob = Box::new(|| ladder(&g.f, -1, true));
    let r5: RelationJob = Box::new(|| ladder(&g.e, -1, false));
    let r6: RelationJob = Box::new(|| ladder(&g.f, 1, false));
    let r7: RelationJob = Box::new(|| serre_instances(&rs, &g.e));
    let r8: RelationJob = Box::new(|| serre_instances(&rs, &g.f));

    let mut report = base_report("R", ty, r, rep);
    report.relations = run_jobs("R", vec![r1, r2, r3, r4, r5, r6, r7, r8])?;
    Ok(report)
}

/// Common zeros in (½ℤ)ⁿ ∩ [−r, r]ⁿ of the J relations (P₁(J) in type B,
/// P₂(J) in types C, D), together with P₁(Hᵢ) when `include_p1hi` is set.
pub fn zero_locus(ty: LieType, r: usize, include_p1hi: bool) -> WeightSet {
    let n = ty.rank();
    let pj = AnnihilatorPolynomial::for_j(ty.family(), r);
    let p1 = AnnihilatorPolynomial::new(AnnihilatorKind::P1, r);
    let half = scalar::frac(1, 2);
    let steps = 4 * r as i64 + 1;
    let total = (steps as usize).pow(n as u32);
    let points: Vec<Weight> = (0..total)
        .into_par_iter()
        .filter_map(|mut code| {
            let coords: Vec<Rational> = (0..n)
                .map(|_| {
                    let k = (code % steps as usize) as i64 - 2 * r as i64;
                    code /= steps as usize;
                    scalar::int(k) * &half
                })
                .collect();
            let v = Weight::new(coords);
            let on_j = (0..(1u32 << n)).all(|mask| {
                let j = v
                    .coords()
                    .iter()
                    .enumerate()
                    .fold(scalar::zero(), |acc, (i, c)| {
                        if mask >> i & 1 == 1 {
                            acc - c
                        } else {
                            acc + c
                        }
                    });
                pj.eval(&j) == scalar::zero()
            });
            let on_h = !include_p1hi || v.coords().iter().all(|c| p1.eval(c) == scalar::zero());
            (on_j && on_h).then_some(v)
        })
        .collect();
    let tag = if include_p1hi { "" } else { ",no-P1(H)" };
    WeightSet::new(format!("V({},{},{}{tag})", ty.family(), n, r), points)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroLocusReport {
    pub family: Family,
    pub rank: usize,
    pub r: usize,
    pub include_p1hi: bool,
    pub locus: WeightSet,
    pub pi: WeightSet,
    pub equals_pi: bool,
    /// Points of the locus outside Π.
    pub extra: WeightSet,
    /// Points of Π outside the locus.
    pub missing: WeightSet,
}

pub fn zero_locus_report(ty: LieType, r: usize, include_p1hi: bool) -> ZeroLocusReport {
    let locus = zero_locus(ty, r, include_p1hi);
    let pi = tensor_weights(ty, r);
    let extra = locus.difference(&pi, "V\\Pi");
    let missing = pi.difference(&locus, "Pi\\V");
    ZeroLocusReport {
        family: ty.family(),
        rank: ty.rank(),
        r,
        include_p1hi,
        equals_pi: extra.is_empty() && missing.is_empty(),
        locus,
        pi,
        extra,
        missing,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientReport {
    pub family: Family,
    pub rank: usize,
    pub r: usize,
    /// Dimension of the algebra generated on E^{⊗r} (the Schur algebra).
    pub dim_power: usize,
    /// Dimension of the algebra generated on the tower (S(π)).
    pub dim_tower: usize,
    pub difference: usize,
    pub proper_quotient: bool,
}

/// Compares the algebras generated by e_i, f_i, H_i on E^{⊗r} and on the tower.
pub fn quotient_witness(ty: LieType, r: usize, max_dim: usize) -> Result<QuotientReport> {
    let power = tensor_power_rep(ty, r, max_dim)?;
    let tower = tower_rep(ty, r, max_dim)?;
    let dp = algebra_closure(&power.gens.all())?.dimension();
    let dt = algebra_closure(&tower.gens.all())?.dimension();
    Ok(QuotientReport {
        family: ty.family(),
        rank: ty.rank(),
        r,
        dim_power: dp,
        dim_tower: dt,
        difference: dt.saturating_sub(dp),
        proper_quotient: dp < dt,
    })
}

/// Whether {e_i, f_i, H_i} and {e_i, f_i} ∪ {1_λ} generate the same algebra.
pub fn presentations_generate_same_algebra(
    rep: &Representation,
    fam: &IdempotentFamily,
) -> Result<bool> {
    let serre = algebra_closure(&rep.gens.all())?;
    let mut gens: Vec<ExactMatrix> = rep.gens.e.iter().chain(&rep.gens.f).cloned().collect();
    gens.extend(fam.iter().map(|(_, m)| m.clone()));
    let idem = algebra_closure(&gens)?;
    Ok(serre.same_algebra(&idem))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::idempotents::build_idempotents;

    fn ty(f: Family, n: usize) -> LieType {
        LieType::new(f, n).unwrap()
    }

    #[test]
    fn serre_holds_on_b2_and_c2() {
        for (t, r) in [(ty(Family::B, 2), 2), (ty(Family::C, 2), 3)] {
            let rep = tower_rep(t, r, 3000).unwrap();
            let rep_ = verify_serre_presentation(t, r, &rep).unwrap();
            assert!(rep_.all_hold(), "{t}: {:?}", rep_.failed_labels());
            let labels: Vec<&str> = rep_.relations.iter().map(|x| x.label.as_str()).collect();
            let f = t.family();
            let expect: Vec<String> = (1..=7).map(|k| format!("{f}{k}")).collect();
            assert_eq!(labels, expect);
        }
    }

    #[test]
    fn scaled_fn_breaks_only_c2() {
        let t = ty(Family::C, 2);
        let rep = tower_rep(t, 2, 3000)
            .unwrap()
            .with_scaled_f(1, &scalar::int(2))
            .unwrap();
        let report = verify_serre_presentation(t, 2, &rep).unwrap();
        assert_eq!(report.failed_labels(), vec!["C2"]);
        let c2 = report.get("C2").unwrap();
        assert_eq!(c2.failures, 1);
        assert_eq!(c2.witness.as_ref().unwrap().instance, "i=2,j=2");
    }

    #[test]
    fn type_mismatch_is_an_error() {
        let rep = tower_rep(ty(Family::C, 2), 2, 3000).unwrap();
        assert!(matches!(
            verify_serre_presentation(ty(Family::B, 2), 2, &rep),
            Err(Error::TypeMismatch { .. })
        ));
    }

    #[test]
    fn idempotent_presentation_on_d3() {
        let t = ty(Family::D, 3);
        let rep = tower_rep(t, 2, 3000).unwrap();
        let fam = build_idempotents(&rep).unwrap();
        let report = verify_idempotent_presentation(t, 2, &rep, &fam).unwrap();
        assert!(report.all_hold(), "{:?}", report.failed_labels());
        assert_eq!(report.relations.len(), 8);
        assert!(report.relations.iter().all(|x| x.skipped == 0));
    }

    #[test]
    fn removing_an_idempotent_flags_only_r1() {
        let t = ty(Family::C, 2);
        let rep = tower_rep(t, 2, 3000).unwrap();
        let fam = build_idempotents(&rep).unwrap();
        for lam in [Weight::zero(2), Weight::from_ints(&[1, 1])] {
            let report = verify_idempotent_presentation(t, 2, &rep, &fam.without(&lam)).unwrap();
            assert_eq!(report.failed_labels(), vec!["R1"], "removed {lam}");
            let r1 = report.get("R1").unwrap();
            assert_eq!(r1.witness.as_ref().unwrap().instance, "sum = 1");
        }
    }

    #[test]
    fn zero_locus_examples() {
        let c2 = ty(Family::C, 2);
        assert!(zero_locus_report(c2, 2, true).equals_pi);
        assert!(zero_locus_report(c2, 2, false).equals_pi);
        let b2 = ty(Family::B, 2);
        assert!(zero_locus_report(b2, 2, true).equals_pi);
        let dropped = zero_locus_report(b2, 2, false);
        assert!(!dropped.equals_pi && dropped.missing.is_empty());
        let w = Weight::new(vec![scalar::frac(3, 2), scalar::frac(1, 2)]);
        assert!(dropped.extra.contains(&w));
        let b1 = zero_locus(ty(Family::B, 1), 1, true);
        assert_eq!(
            b1.to_int_vectors().unwrap(),
            vec![vec![1], vec![0], vec![-1]]
        );
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(3, 0), 1);
        assert_eq!(binomial(3, 1), 3);
        assert_eq!(binomial(3, 2), 3);
        assert_eq!(binomial(2, 1), 2);
    }
}
