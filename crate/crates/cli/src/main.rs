//! Batch front end: one job per invocation, one document on stdout.
//!
//! Exit status is 0 when every check of the job passes, 1 when a check fails
//! (the failing label goes to stderr) and 2 for invalid arguments or a job
//! that exceeds the configured caps.

mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use schurkit::decomposition::{
    classify_type_b, compare_pi0_pi, irreducible_character, pi0_weyl_rules, schur_dimensions,
    weyl_dimension,
};
use schurkit::idempotents::{build_idempotents, ladder_check};
use schurkit::pathmodel::{basis_census, string_tuples, Crystal, DEFAULT_CRYSTAL_CAP};
use schurkit::presentation::{
    verify_idempotent_presentation, verify_serre_presentation, zero_locus_report, RelationReport,
};
use schurkit::replinalg::{algebra_closure, tensor_power_rep, tower_rep, Representation};
use schurkit::weightsets::{is_saturated, tensor_dominant, tensor_weights};
use schurkit::{scalar, Error, Family, LieType, RootSystem, Weight, DEFAULT_MAX_DIM};

use output::{elements, ints, Document, Format, Header, Table};

#[derive(Parser, Debug)]
#[command(
    name = "schurkit",
    version,
    about = "Exact computations for generalized Schur algebras in types B, C, D"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    /// Cap on the carrier dimension of any representation built.
    #[arg(long, global = true, env = "SCHURKIT_MAX_DIM", default_value_t = DEFAULT_MAX_DIM)]
    max_dim: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Job {
    /// B, C or D.
    family: Family,
    /// Rank n.
    rank: usize,
    /// Tensor degree r.
    r: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CarrierArg {
    Tower,
    Power,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum PresentationArg {
    Serre,
    Idempotent,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The weights Π of E^{⊗r} and the dominant ones π.
    Weights(Job),
    /// The highest weights π₀ of composition factors of E^{⊗r}.
    Pi0(Job),
    /// Compares π₀ with π and cross-checks π₀ against the character oracle.
    Compare(Job),
    /// Tabulates whether π₀ = π in type B.
    ClassifyB {
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 6)]
        r_max: usize,
    },
    /// Builds the weight idempotents and checks their properties.
    Idempotents {
        #[command(flatten)]
        job: Job,
        #[arg(long, value_enum, default_value = "tower")]
        carrier: CarrierArg,
    },
    /// Checks a presentation as operator identities on a carrier.
    Verify {
        #[command(flatten)]
        job: Job,
        #[arg(long, value_enum)]
        presentation: PresentationArg,
        #[arg(long, value_enum, default_value = "tower")]
        carrier: CarrierArg,
        /// Replace f_n by 2·f_n before checking.
        #[arg(long)]
        scale_fn: bool,
        /// Remove the idempotent of this weight (idempotent presentation only).
        #[arg(long, allow_hyphen_values = true)]
        drop_idempotent: Option<String>,
    },
    /// Solves the Cartan relations on the half-integer grid.
    ZeroLocus {
        #[command(flatten)]
        job: Job,
        /// Omit the equations P₁(H_i) = 0.
        #[arg(long)]
        drop_p1hi: bool,
    },
    /// Σ dim L(λ)² over π and over π₀.
    Dims(Job),
    /// Dimension of the algebra generated on the tower and on E^{⊗r}.
    Closure {
        #[command(flatten)]
        job: Job,
        /// Restrict to one carrier.
        #[arg(long, value_enum)]
        carrier: Option<CarrierArg>,
    },
    /// The path crystal of a dominant weight.
    Crystal {
        family: Family,
        rank: usize,
        /// Highest weight as comma-separated integers.
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = DEFAULT_CRYSTAL_CAP)]
        max_elements: usize,
    },
    /// Counts string parametrizations over π.
    Census {
        #[command(flatten)]
        job: Job,
        #[arg(long, default_value_t = DEFAULT_CRYSTAL_CAP)]
        max_elements: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(doc) => {
            let mut out = std::io::stdout().lock();
            if let Err(e) = doc.render(cli.format, &mut out).and_then(|_| out.flush()) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            match &doc.failure {
                None => ExitCode::SUCCESS,
                Some(label) => {
                    eprintln!("check failed: {label}");
                    ExitCode::from(1)
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Errors from bad input or exceeded caps are usage errors; the rest are
/// failed checks.
fn exit_code(e: &Error) -> u8 {
    match e {
        Error::RankOutOfRange { .. }
        | Error::IndexOutOfRange { .. }
        | Error::NotDominant(_)
        | Error::NotInLattice(_)
        | Error::ZeroDegree
        | Error::CarrierTooLarge { .. }
        | Error::CrystalTooLarge(_)
        | Error::DimensionMismatch(_)
        | Error::Parse(_) => 2,
        _ => 1,
    }
}

fn lie_type(family: Family, rank: usize) -> schurkit::Result<LieType> {
    LieType::new(family, rank)
}

fn representation(
    job: &Job,
    carrier: CarrierArg,
    max_dim: usize,
) -> schurkit::Result<Representation> {
    let ty = lie_type(job.family, job.rank)?;
    if job.r == 0 {
        return Err(Error::ZeroDegree);
    }
    match carrier {
        CarrierArg::Tower => tower_rep(ty, job.r, max_dim),
        CarrierArg::Power => tensor_power_rep(ty, job.r, max_dim),
    }
}

fn run(cli: &Cli) -> schurkit::Result<Document> {
    match &cli.command {
        Command::Weights(job) => weights(job),
        Command::Pi0(job) => pi0(job),
        Command::Compare(job) => compare(job),
        Command::ClassifyB { n_max, r_max } => classify(*n_max, *r_max),
        Command::Idempotents { job, carrier } => idempotents(job, *carrier, cli.max_dim),
        Command::Verify {
            job,
            presentation,
            carrier,
            scale_fn,
            drop_idempotent,
        } => verify(
            job,
            *presentation,
            *carrier,
            *scale_fn,
            drop_idempotent.as_deref(),
            cli.max_dim,
        ),
        Command::ZeroLocus { job, drop_p1hi } => zero_locus(job, *drop_p1hi),
        Command::Dims(job) => dims(job),
        Command::Closure { job, carrier } => closure(job, *carrier, cli.max_dim),
        Command::Crystal {
            family,
            rank,
            lambda,
            max_elements,
        } => crystal(*family, *rank, lambda, *max_elements),
        Command::Census { job, max_elements } => census(job, *max_elements),
    }
}

fn job_type(job: &Job) -> schurkit::Result<LieType> {
    lie_type(job.family, job.rank)
}

fn weight_table(doc: &mut Document, sets: &[(&str, &schurkit::WeightSet)]) {
    let mut t = Table::new(&["set", "weight"]);
    for (name, ws) in sets {
        for w in ws.iter() {
            t.push(vec![name.to_string(), w.to_string()]);
        }
    }
    doc.table = t;
}

fn weights(job: &Job) -> schurkit::Result<Document> {
    let ty = job_type(job)?;
    let all = tensor_weights(ty, job.r);
    let dom = tensor_dominant(ty, job.r);
    let saturated = is_saturated(&RootSystem::new(ty), &dom)?;
    let mut doc = Document::new(Header::new(ty, Some(job.r)));
    doc.set("Pi", elements(&all));
    doc.set("pi", elements(&dom));
    doc.set("pi_saturated", saturated);
    weight_table(&mut doc, &[("Pi", &all), ("pi", &dom)]);
    if !saturated {
        doc.fail("pi saturated");
    }
    Ok(doc)
}

fn pi0(job: &Job) -> schurkit::Result<Document> {
    let ty = job_type(job)?;
    let p0 = pi0_weyl_rules(ty, job.r);
    let mut doc = Document::new(Header::new(ty, Some(job.r)));
    doc.set("pi0", elements(&p0));
    weight_table(&mut doc, &[("pi0", &p0)]);
    Ok(doc)
}

fn compare(job: &Job) -> schurkit::Result<Document> {
    let ty = job_type(job)?;
    let mut doc = Document::new(Header::new(ty, Some(job.r)));
    let res = match compare_pi0_pi(ty, job.r) {
        Ok(res) => res,
        Err(e @ Error::Pi0Disagreement { .. }) => {
            doc.set("error", e.to_string());
            doc.fail("pi0 oracle agreement");
            return Ok(doc);
        }
        Err(e) => return Err(e),
    };
    doc.set("equal", res.equal);
    doc.set("pi_minus_pi0", elements(&res.pi_minus_pi0));
    doc.set("pi", elements(&res.pi));
    doc.set("pi0", elements(&res.pi0));
    doc.set("factors", &res.factors);
    let mut t = Table::new(&["weight", "in_pi0", "multiplicity", "dimension"]);
    for w in res.pi.iter() {
        let v = w.to_ints().expect("integral");
        t.push(vec![
            ints(&v),
            res.pi0.contains(w).to_string(),
            res.multiplicity(&v).to_string(),
            weyl_dimension(&RootSystem::new(ty), w)?.to_string(),
        ]);
    }
    doc.table = t;
    Ok(doc)
}

fn classify(n_max: usize, r_max: usize) -> schurkit::Result<Document> {
    let ty = lie_type(Family::B, n_max.max(1))?;
    let mut doc = Document::new(Header::new(ty, Some(r_max)));
    match classify_type_b(n_max, r_max) {
        Ok(rows) => {
            let mut t = Table::new(&[
                "family",
                "n",
                "r",
                "equal",
                "pi_len",
                "pi0_len",
                "dim_s_pi",
                "dim_schur",
            ]);
            for row in &rows {
                t.push(vec![
                    row.family.to_string(),
                    row.n.to_string(),
                    row.r.to_string(),
                    row.equal.to_string(),
                    row.pi_len.to_string(),
                    row.pi0_len.to_string(),
                    row.dim_s_pi.to_string(),
                    row.dim_schur.to_string(),
                ]);
            }
            doc.set("rows", &rows);
            doc.table = t;
        }
        Err(e @ Error::Pi0Disagreement { .. }) => {
            doc.set("error", e.to_string());
            doc.fail("pi0 oracle agreement");
        }
        Err(e) => return Err(e),
    }
    Ok(doc)
}

fn idempotents(job: &Job, carrier: CarrierArg, max_dim: usize) -> schurkit::Result<Document> {
    let ty = job_type(job)?;
    let rep = representation(job, carrier, max_dim)?;
    let mut doc = Document::new(Header::new(ty, Some(job.r)));
    doc.set("carrier", rep.carrier.to_string());
    let fam = match build_idempotents(&rep) {
        Ok(f) => f,
        Err(e @ Error::IdempotentMismatch(_)) => {
            doc.set("error", e.to_string());
            doc.fail("idempotent interpolation");
            return Ok(doc);
        }
        Err(e) => return Err(e),
    };
    let summary = fam.summary();
    let mut t = Table::new(&["weight", "rank", "multiplicity"]);
    let mut rank_ok = true;
    for entry in &summary.idempotents {
        let w = Weight::from_ints(&entry.weight);
        let mult = rep.weights.iter().filter(|x| **x == w).count();
        rank_ok &= mult == entry.rank;
        t.push(vec![
            ints(&entry.weight),
            entry.rank.to_string(),
            mult.to_string(),
        ]);
    }
    let mut h_ok = true;
    for i in 0..ty.rank() {
        h_ok &= fam.reconstruct_h(i)? == rep.gens.h[i];
    }
    let ladder = ladder_check(&fam, &rep)?;
    doc.set("summary", &summary);
    doc.set("rank_equals_multiplicity", rank_ok);
    doc.set("cartan_reconstructed", h_ok);
    doc.set("ladder", &ladder);
    doc.table = t;
    if !rank_ok {
        doc.fail("rank = multiplicity");
    }
    if !h_ok {
        doc.fail("H_i = sum lambda_i 1_lambda");
    }
    if let Some(v) = ladder.violations.first() {
        doc.fail(format!(
            "ladder {}_{} at {}",
            v.generator, v.index, v.weight
        ));
    }
    Ok(doc)
}

fn relation_table(report: &RelationReport) -> Table {
    let mut t = Table::new(&[
        "label",
        "status",
        "instances",
        "skipped",
        "failures",
        "witness",
    ]);
    for rel in &report.relations {
        let witness = rel.witness.as_ref().map_or(String::new(), |w| {
            format!("{} [{},{}] = {}", w.instance, w.row, w.col, w.residual)
        });
        t.push(vec![
            rel.label.clone(),
            serde_json::to_value(rel.status)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default(),
            rel.instances.to_string(),
            rel.skipped.to_string(),
            rel.failures.to_string(),
            witness,
        ]);
    }
    t
}

fn verify(
    job: &Job,
    presentation: PresentationArg,
    carrier: CarrierArg,
    scale_fn: bool,
    drop: Option<&str>,
    max_dim: usize,
) -> schurkit::Result<Document> {
    let ty = job_type(job)?;
    let mut rep = representation(job, carrier, max_dim)?;
    if scale_fn {
        rep = rep.with_scaled_f(ty.rank() - 1, &scalar::int(2))?;
    }
    let report = match presentation {
        PresentationArg::Serre => {
            if drop.is_some() {
                return Err(Error::Parse(
                    "--drop-idempotent applies to the idempotent presentation".into(),
                ));
            }
            verify_serre_presentation(ty, job.r, &rep)?
        }
        PresentationArg::Idempotent => {
            let mut fam = build_idempotents(&rep)?;
            if let Some(d) = drop {
                let w = Weight::parse(d)?;
                if !w.is_integral() || w.len() != ty.rank() || fam.get(&w).is_none() {
                    return Err(Error::Parse(format!("no idempotent of weight {d}")));
                }
                fam = fam.without(&w);
            }
            verify_idempotent_presentation(ty, job.r, &rep, &fam)?
        }
    };
    let mut doc = Document::new(Header::new(ty, Some(job.r)));
    doc.table = relation_table(&report);
    let failed: Vec<String> = report
        .failed_labels()
        .iter()
        .map(|s| s.to_string())
        .collect();
    doc.set("report", &report);
    if !failed.is_empty() {
        doc.fail(failed.join(", "));
    }
    Ok(doc)
}

fn zero_locus(job: &Job, drop_p1hi: bool) -> schurkit::Result<Document> {
    let ty = job_type(job)?;
    let rep = zero_locus_report(ty, job.r, !drop_p1hi);
    let mut doc = Document::new(Header::new(ty, Some(job.r)));
    doc.set("include_p1hi", rep.include_p1hi);
    doc.set("equals_pi", rep.equals_pi);
    doc.set("locus_size", rep.locus.len());
    doc.set("pi_size", rep.pi.len());
    doc.set("extra", elements(&rep.extra));
    doc.set("missing", elements(&rep.missing));
    doc.set("locus", elements(&rep.locus));
    weight_table(
        &mut doc,
        &[("extra", &rep.extra), ("missing", &rep.missing)],
    );
    if !rep.missing.is_empty() {
        doc.fail("Pi within zero locus");
    } else if !drop_p1hi && !rep.equals_pi {
        doc.fail("zero locus = Pi");
    }
    Ok(doc)
}

fn dims(job: &Job) -> schurkit::Result<Document> {
    let ty = job_type(job)?;
    let rs = RootSystem::new(ty);
    let (tower, power) = schur_dimensions(ty, job.r)?;
    let p0 = pi0_weyl_rules(ty, job.r);
    let mut t = Table::new(&["weight", "in_pi0", "dimension", "dimension_squared"]);
    for w in tensor_dominant(ty, job.r).iter() {
        let d = weyl_dimension(&rs, w)?;
        t.push(vec![
            w.to_string(),
            p0.contains(w).to_string(),
            d.to_string(),
            (d * d).to_string(),
        ]);
    }
    let mut doc = Document::new(Header::new(ty, Some(job.r)));
    doc.set("dim_s_pi", tower);
    doc.set("dim_schur", power);
    doc.table = t;
    Ok(doc)
}

fn closure(job: &Job, carrier: Option<CarrierArg>, max_dim: usize) -> schurkit::Result<Document> {
    let ty = job_type(job)?;
    let (tower_expected, power_expected) = schur_dimensions(ty, job.r)?;
    let mut doc = Document::new(Header::new(ty, Some(job.r)));
    let mut t = Table::new(&["carrier", "carrier_dim", "closure_dim", "expected"]);
    let which: Vec<CarrierArg> = match carrier {
        Some(c) => vec![c],
        None => vec![CarrierArg::Tower, CarrierArg::Power],
    };
    let mut rows = Vec::new();
    for c in which {
        let rep = representation(job, c, max_dim)?;
        let dim = algebra_closure(&rep.gens.all())?.dimension() as u64;
        let (name, expected) = match c {
            CarrierArg::Tower => ("tower", tower_expected),
            CarrierArg::Power => ("power", power_expected),
        };
        t.push(vec![
            name.to_string(),
            rep.dim().to_string(),
            dim.to_string(),
            expected.to_string(),
        ]);
        rows.push(serde_json::json!({
            "carrier": name,
            "description": rep.carrier.to_string(),
            "carrier_dim": rep.dim(),
            "closure_dim": dim,
            "expected": expected,
        }));
        if dim != expected {
            doc.fail(format!("closure dimension on {name}"));
        }
    }
    doc.set("closures", rows);
    doc.table = t;
    Ok(doc)
}

fn crystal(family: Family, rank: usize, lambda: &str, cap: usize) -> schurkit::Result<Document> {
    let ty = lie_type(family, rank)?;
    let rs = RootSystem::new(ty);
    let lam = Weight::parse(lambda)?;
    if !lam.is_integral() {
        return Err(Error::Parse(format!(
            "--lambda takes integers, got {lambda}"
        )));
    }
    if lam.len() != rank {
        return Err(Error::DimensionMismatch(format!(
            "--lambda has {} coordinates, rank is {rank}",
            lam.len()
        )));
    }
    let cr = Crystal::generate(&rs, &lam, cap)?;
    let word = rs.longest_element().word().to_vec();
    let strings = string_tuples(&rs, &cr, &word)?;
    let dim = weyl_dimension(&rs, &lam)?;
    let char_ok = cr.character() == *irreducible_character(&rs, &lam)?;
    let mut doc = Document::new(Header::new(ty, None));
    doc.set("highest_weight", lam.to_ints());
    doc.set("size", cr.len());
    doc.set("weyl_dimension", dim);
    doc.set("character_matches", char_ok);
    doc.set("crystal", &cr);
    doc.set("strings", &strings);
    let mut t = Table::new(&["index", "endpoint", "string"]);
    for (k, (p, s)) in cr.elements().iter().zip(&strings).enumerate() {
        let endpoint = p
            .endpoint()
            .to_ints()
            .map_or_else(|| p.endpoint().to_string(), |v| ints(&v));
        t.push(vec![
            k.to_string(),
            endpoint,
            ints(&s.0.iter().map(|&x| x as i64).collect::<Vec<_>>()),
        ]);
    }
    doc.table = t;
    if cr.len() as u64 != dim {
        doc.fail("crystal size = Weyl dimension");
    }
    if !char_ok {
        doc.fail("crystal character");
    }
    Ok(doc)
}

fn census(job: &Job, cap: usize) -> schurkit::Result<Document> {
    let ty = job_type(job)?;
    let report = basis_census(ty, job.r, cap)?;
    let mut t = Table::new(&[
        "weight",
        "dual_weight",
        "strings",
        "dual_strings_opp",
        "product",
        "weyl_dim_squared",
    ]);
    for e in &report.entries {
        t.push(vec![
            ints(&e.weight),
            ints(&e.dual_weight),
            e.strings.to_string(),
            e.dual_strings_opp.to_string(),
            e.product.to_string(),
            e.weyl_dim_squared.to_string(),
        ]);
    }
    let mut doc = Document::new(Header::new(ty, Some(job.r)));
    doc.set("entries", &report.entries);
    doc.set("total", report.total);
    doc.set("expected_total", report.expected_total);
    doc.table = t;
    if let Some(e) = report.entries.iter().find(|e| !e.ok) {
        doc.fail(format!("census at {}", ints(&e.weight)));
    } else if !report.ok {
        doc.fail("census total");
    }
    Ok(doc)
}
