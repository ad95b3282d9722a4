//! Acceptance suite: one PASS/FAIL line per criterion, exact arithmetic only.
//!
//! Runs without the libtest harness so the verdict lines always reach the
//! terminal. The process fails if any criterion fails, except for a failure
//! whose every counterexample is listed in `KNOWN_EXCEPTIONS`.

use std::time::{Duration, Instant};

use schurkit::decomposition::{
    compare_pi0_pi, decompose_tensor_character, irreducible_character, schur_dimensions,
    tensor_character, weyl_dimension,
};
use schurkit::idempotents::{build_idempotents, ladder_check};
use schurkit::pathmodel::{basis_census, Crystal, DEFAULT_CRYSTAL_CAP};
use schurkit::presentation::{
    verify_idempotent_presentation, verify_serre_presentation, zero_locus_report, RelationReport,
};
use schurkit::replinalg::{
    algebra_closure, tensor_power_rep, tower_degrees, tower_rep, ExactMatrix, Representation,
};
use schurkit::weightsets::{tensor_dominant, tensor_weights};
use schurkit::{scalar, Family, LieType, RootSystem, Weight, DEFAULT_MAX_DIM};

/// Zero-locus cases where dropping P₁(H_i) cannot enlarge the solution set:
/// in rank one, P₁(±H₁) = P₁(H₁) already belongs to the remaining equations.
const KNOWN_EXCEPTIONS: &[&str] = &[
    "zero-locus B1 r=1",
    "zero-locus B1 r=2",
    "zero-locus B1 r=3",
    "zero-locus B1 r=4",
];

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    failures: Vec<String>,
    detail: String,
}

fn types(n_max: usize) -> Vec<LieType> {
    let mut out = Vec::new();
    for f in [Family::B, Family::C, Family::D] {
        for n in 1..=n_max {
            if let Ok(t) = LieType::new(f, n) {
                out.push(t);
            }
        }
    }
    out
}

fn tower_dim(ty: LieType, r: usize) -> usize {
    let m = ty.natural_dim();
    tower_degrees(ty.family(), r)
        .iter()
        .map(|&s| m.pow(s as u32))
        .sum()
}

fn criterion_cases() -> Vec<(LieType, usize)> {
    let mut cases = Vec::new();
    for ty in types(3) {
        for r in 1..=3 {
            if tower_dim(ty, r) <= DEFAULT_MAX_DIM {
                cases.push((ty, r));
            }
        }
    }
    cases
}

fn failed(report: &RelationReport, tag: &str, out: &mut Vec<String>) {
    for label in report.failed_labels() {
        out.push(format!("{tag}: {label}"));
    }
}

fn presentations() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (ty, r) in criterion_cases() {
        let tag = format!("{ty} r={r}");
        let rep = tower_rep(ty, r, DEFAULT_MAX_DIM).expect("within cap");
        let serre = verify_serre_presentation(ty, r, &rep).expect("well-typed");
        let fam = build_idempotents(&rep).expect("idempotents");
        let idem = verify_idempotent_presentation(ty, r, &rep, &fam).expect("well-typed");
        failed(&serre, &tag, &mut failures);
        failed(&idem, &tag, &mut failures);
        checked += serre.relations.len() + idem.relations.len();
    }
    let detail = format!(
        "{} cases, {checked} relation families",
        criterion_cases().len()
    );
    Outcome { failures, detail }
}

fn zero_locus() -> Outcome {
    let mut failures = Vec::new();
    let mut witnesses = Vec::new();
    for ty in types(3) {
        for r in 1..=4 {
            let tag = format!("{ty} r={r}");
            let full = zero_locus_report(ty, r, true);
            if !full.equals_pi {
                failures.push(format!("locus != Pi for {tag}"));
            }
            let dropped = zero_locus_report(ty, r, false);
            if !dropped.missing.is_empty() {
                failures.push(format!("dropping P1(H) lost points of Pi for {tag}"));
            }
            match ty.family() {
                Family::B => match dropped.extra.elements().first() {
                    Some(w) => {
                        if !w.coords().iter().any(|c| !c.is_integer()) {
                            failures.push(format!("integral extra point {w} for {tag}"));
                        }
                        if r == 2 && ty.rank() == 2 {
                            witnesses.push(format!("{w} for {tag}"));
                        }
                    }
                    None => failures.push(format!("zero-locus {ty} r={r}")),
                },
                Family::C | Family::D => {
                    if !dropped.equals_pi {
                        failures.push(format!("dropping P1(H) changed the locus for {tag}"));
                    }
                }
            }
        }
    }
    Outcome {
        failures,
        detail: format!("half-integer witness {}", witnesses.join(", ")),
    }
}

fn idempotent_family() -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    for (ty, r) in criterion_cases() {
        let tag = format!("{ty} r={r}");
        let rep = tower_rep(ty, r, DEFAULT_MAX_DIM).expect("within cap");
        let fam = build_idempotents(&rep).expect("idempotents");
        let dim = rep.dim();
        let ids: Vec<(&Weight, &ExactMatrix)> = fam.iter().collect();
        let mut sum = ExactMatrix::zeros(dim, dim);
        for (a, (la, pa)) in ids.iter().enumerate() {
            sum = sum.add(pa).expect("shape");
            for (b, (_, pb)) in ids.iter().enumerate() {
                let prod = pa.mul(pb).expect("shape");
                let ok = if a == b { &prod == *pa } else { prod.is_zero() };
                if !ok {
                    failures.push(format!("orthogonality at {la} for {tag}"));
                }
            }
        }
        if sum != ExactMatrix::identity(dim) {
            failures.push(format!("completeness for {tag}"));
        }
        for i in 0..ty.rank() {
            if fam.reconstruct_h(i).expect("reconstruct") != rep.gens.h[i] {
                failures.push(format!("H_{} reconstruction for {tag}", i + 1));
            }
        }
        let ladder = ladder_check(&fam, &rep).expect("ladder");
        for v in &ladder.violations {
            failures.push(format!(
                "ladder {}_{} at {} for {tag}",
                v.generator, v.index, v.weight
            ));
        }
        let characters: Vec<_> = tower_degrees(ty.family(), r)
            .into_iter()
            .map(|s| tensor_character(ty, s))
            .collect();
        for (lam, p) in &ids {
            let mult: u64 = characters.iter().map(|c| c.multiplicity(lam)).sum();
            if p.rank() as u64 != mult {
                failures.push(format!("rank of 1_{lam} for {tag}"));
            }
        }
        count += ids.len();
    }
    Outcome {
        failures,
        detail: format!("{count} idempotents"),
    }
}

fn decomposition_oracle() -> Outcome {
    let mut failures = Vec::new();
    let mut cases = 0;
    for ty in types(3) {
        for r in 1..=4 {
            let tag = format!("{ty} r={r}");
            if let Err(e) = compare_pi0_pi(ty, r) {
                failures.push(format!("{tag}: {e}"));
            }
            let dec = decompose_tensor_character(ty, r).expect("decomposition");
            let total: u64 = dec
                .factors
                .iter()
                .map(|f| f.multiplicity * f.dimension)
                .sum();
            if total != (ty.natural_dim() as u64).pow(r as u32) {
                failures.push(format!("dimension identity for {tag}: {total}"));
            }
            cases += 1;
        }
    }
    Outcome {
        failures,
        detail: format!("{cases} cases"),
    }
}

fn dichotomy() -> Outcome {
    let mut failures = Vec::new();
    let ty = |f, n| LieType::new(f, n).expect("type");
    for t in types(3) {
        if t.family() == Family::B {
            continue;
        }
        for r in 1..=4 {
            if !compare_pi0_pi(t, r).expect("compare").equal {
                failures.push(format!("{t} r={r} not equal"));
            }
        }
    }
    for n in 1..=3 {
        if compare_pi0_pi(ty(Family::B, n), 1).expect("compare").equal {
            failures.push(format!("B{n} r=1 equal"));
        }
    }
    let b22 = compare_pi0_pi(ty(Family::B, 2), 2).expect("compare");
    if b22.equal || b22.pi_minus_pi0.elements() != [Weight::from_ints(&[1, 0])] {
        failures.push(format!("B2 r=2 difference {}", b22.pi_minus_pi0));
    }
    for r in 2..=6 {
        if !compare_pi0_pi(ty(Family::B, 1), r).expect("compare").equal {
            failures.push(format!("B1 r={r} not equal"));
        }
    }
    Outcome {
        failures,
        detail: format!(
            "B2 r=2: pi minus pi0 = {:?}",
            b22.pi_minus_pi0.to_int_vectors().unwrap_or_default()
        ),
    }
}

const CLOSURE_CASES: &[(Family, usize, usize)] = &[
    (Family::C, 1, 2),
    (Family::C, 2, 2),
    (Family::B, 2, 2),
    (Family::D, 2, 2),
];

fn closure_dimension(rep: &Representation) -> u64 {
    algebra_closure(&rep.gens.all())
        .expect("closure")
        .dimension() as u64
}

fn dimension_closure() -> Outcome {
    let mut failures = Vec::new();
    let mut parts = Vec::new();
    for &(f, n, r) in CLOSURE_CASES {
        let ty = LieType::new(f, n).expect("type");
        let (tower_expected, power_expected) = schur_dimensions(ty, r).expect("dims");
        for (name, rep, expected) in [
            (
                "tower",
                tower_rep(ty, r, DEFAULT_MAX_DIM).expect("rep"),
                tower_expected,
            ),
            (
                "power",
                tensor_power_rep(ty, r, DEFAULT_MAX_DIM).expect("rep"),
                power_expected,
            ),
        ] {
            let start = Instant::now();
            let got = closure_dimension(&rep);
            let took = start.elapsed();
            if got != expected {
                failures.push(format!("{ty} r={r} {name}: {got} != {expected}"));
            }
            if took >= Duration::from_secs(60) {
                failures.push(format!("{ty} r={r} {name}: {took:?}"));
            }
            if name == "tower" {
                parts.push(format!("{ty}:{got}"));
            } else {
                parts.push(format!("/{got}"));
            }
        }
    }
    Outcome {
        failures,
        detail: parts
            .chunks(2)
            .map(|c| c.concat())
            .collect::<Vec<_>>()
            .join(" "),
    }
}

fn path_model() -> Outcome {
    let mut failures = Vec::new();
    let mut crystals = 0;
    for ty in types(3) {
        let rs = RootSystem::new(ty);
        let mut seen = std::collections::BTreeSet::new();
        for r in 1..=4 {
            for lam in tensor_dominant(ty, r).iter() {
                if !seen.insert(lam.clone()) {
                    continue;
                }
                let dim = weyl_dimension(&rs, lam).expect("dim");
                if dim > 200 {
                    continue;
                }
                let cr = Crystal::generate(&rs, lam, DEFAULT_CRYSTAL_CAP).expect("crystal");
                if cr.len() as u64 != dim {
                    failures.push(format!("{ty} {lam}: {} elements, dim {dim}", cr.len()));
                }
                if cr.character() != *irreducible_character(&rs, lam).expect("character") {
                    failures.push(format!("{ty} {lam}: endpoint multiset"));
                }
                crystals += 1;
            }
        }
    }
    let mut totals = Vec::new();
    for &(f, n, r) in CLOSURE_CASES {
        let ty = LieType::new(f, n).expect("type");
        let census = basis_census(ty, r, DEFAULT_CRYSTAL_CAP).expect("census");
        let closure = closure_dimension(&tower_rep(ty, r, DEFAULT_MAX_DIM).expect("rep"));
        if !census.ok || census.total != closure {
            failures.push(format!(
                "{ty} r={r} census {} vs closure {closure}",
                census.total
            ));
        }
        totals.push(format!("{ty}:{}", census.total));
    }
    Outcome {
        failures,
        detail: format!("{crystals} crystals; census {}", totals.join(" ")),
    }
}

fn fault_injection() -> Outcome {
    let mut failures = Vec::new();
    let two = scalar::int(2);
    for n in 1..=3 {
        let ty = LieType::new(Family::C, n).expect("type");
        for r in 1..=3 {
            let rep = tower_rep(ty, r, DEFAULT_MAX_DIM).expect("rep");
            let bad = rep.with_scaled_f(n - 1, &two).expect("scale");
            let a = verify_serre_presentation(ty, r, &bad).expect("report");
            let b = verify_serre_presentation(ty, r, &bad).expect("report");
            if a.failed_labels() != ["C2"] || a != b {
                failures.push(format!(
                    "{ty} r={r} scaled f_n flags {:?}",
                    a.failed_labels()
                ));
            }
        }
    }
    for (f, n, r) in [
        (Family::B, 2, 2),
        (Family::C, 2, 2),
        (Family::D, 3, 1),
        (Family::C, 1, 3),
    ] {
        let ty = LieType::new(f, n).expect("type");
        let rep = tower_rep(ty, r, DEFAULT_MAX_DIM).expect("rep");
        let fam = build_idempotents(&rep).expect("idempotents");
        for lam in tensor_weights(ty, r).iter() {
            let rep_a =
                verify_idempotent_presentation(ty, r, &rep, &fam.without(lam)).expect("report");
            let rep_b =
                verify_idempotent_presentation(ty, r, &rep, &fam.without(lam)).expect("report");
            if rep_a.failed_labels() != ["R1"] || rep_a != rep_b {
                failures.push(format!(
                    "{ty} r={r} without 1_{lam} flags {:?}",
                    rep_a.failed_labels()
                ));
            }
        }
    }
    Outcome {
        failures,
        detail: "scaled f_n -> C2 only; missing idempotent -> R1 only".into(),
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("presentations hold on the tower", presentations),
        ("zero locus and the role of P1(H_i)", zero_locus),
        ("idempotent family", idempotent_family),
        (
            "exponent rules agree with the character oracle",
            decomposition_oracle,
        ),
        ("pi0 versus pi", dichotomy),
        ("closure dimensions", dimension_closure),
        ("path model", path_model),
        ("fault injection", fault_injection),
    ];
    let mut hard_failure = false;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        if outcome.failures.is_empty() {
            println!(
                "criterion {}: PASS  {name} ({}; {secs:.1}s)",
                k + 1,
                outcome.detail
            );
            continue;
        }
        let known = outcome
            .failures
            .iter()
            .all(|f| KNOWN_EXCEPTIONS.contains(&f.as_str()));
        println!(
            "criterion {}: FAIL  {name} ({} failure(s): {})",
            k + 1,
            outcome.failures.len(),
            outcome.failures.join("; ")
        );
        if known {
            println!(
                "    known: in B1 the equations P1(+-H_1) coincide with P1(H_1), so no extra points can appear; \
                 every B case with n >= 2 is strictly enlarged ({})",
                outcome.detail
            );
        } else {
            hard_failure = true;
        }
    }
    if hard_failure {
        std::process::exit(1);
    }
}
