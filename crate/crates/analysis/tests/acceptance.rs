//! End-to-end acceptance run. Prints one line per criterion and exits with a
//! failure status if any criterion fails.
//!
//! The 12-crossing criteria use a subset by default: every knot in an
//! annotated group, every achiral knot and 200 random others. Set
//! `LG_ACCEPTANCE_FULL=1` to evaluate the whole table.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use lg_analysis::batch::{run_batch, ResultsFile};
use lg_analysis::{cluster_fingerprints, symmetry_flags, Annotations, CliqueKind};
use lg_core::alexander::alexander_oracle;
use lg_core::engine::representation;
use lg_core::knot::read_knot_table_strict;
use lg_core::vogel::pd_to_braid_traced;
use lg_core::{lg11, lg21, BraidWord, Invariant, KnotName, KnotRecord, LaurentPoly2, PdCode, SymmetryClass, Var};

fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

fn table(rel: &str) -> Vec<KnotRecord> {
    read_knot_table_strict(BufReader::new(File::open(data(rel)).unwrap())).unwrap()
}

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

struct Report {
    lines: Vec<(String, bool, String)>,
}

impl Report {
    fn record(&mut self, id: &str, pass: bool, detail: String) {
        let mut err = std::io::stderr().lock();
        let _ = writeln!(err, "criterion {id}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
        self.lines.push((id.to_string(), pass, detail));
    }
}

/// Every value computed during the run, for the property checks.
#[derive(Default)]
struct Values(Vec<(String, LaurentPoly2)>);

impl Values {
    fn add_results(&mut self, r: &ResultsFile) {
        for k in &r.results {
            if let Some(v) = &k.value {
                self.0.push((k.name.to_string(), v.clone()));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Reference listings

/// `(p-exponents, sign, q-terms)` of one block as printed.
type Block = (Vec<i32>, i64, Vec<(i32, i64)>);

struct Listing {
    names: Vec<KnotName>,
    blocks: Vec<Block>,
}

type Erratum = (&'static str, &'static str, fn(&mut Listing));

impl Listing {
    fn value(&self) -> LaurentPoly2 {
        let terms = self
            .blocks
            .iter()
            .flat_map(|(ps, sign, qs)| ps.iter().flat_map(move |&p| qs.iter().map(move |&(q, c)| (p, q, sign * c))));
        LaurentPoly2::from_int_terms(terms)
    }
}

fn read_listings() -> Vec<Listing> {
    let text = std::fs::read_to_string(data("reference/lg21.txt")).unwrap();
    let mut out: Vec<Listing> = vec![];
    for line in text.lines() {
        let line = line.split('#').next().unwrap();
        let f: Vec<&str> = line.split_whitespace().collect();
        match f.first() {
            None => continue,
            Some(&"knot") => {
                out.push(Listing { names: f[1..].iter().map(|s| s.parse().unwrap()).collect(), blocks: vec![] })
            }
            Some(&"p") => {
                let mut i = 1;
                let first: i32 = f[i].parse().unwrap();
                let ps = if first < 0 {
                    i += 2;
                    vec![first, f[2].parse().unwrap()]
                } else {
                    i += 1;
                    if first == 0 {
                        vec![0]
                    } else {
                        vec![-first, first]
                    }
                };
                let sign = if f[i] == "+" { 1 } else { -1 };
                let q0: i32 = f[i + 1].parse().unwrap();
                let sym = f.last() == Some(&"sym");
                let coeffs: Vec<i64> = f[i + 2..].iter().filter(|s| **s != "sym").map(|s| s.parse().unwrap()).collect();
                let mut qs = vec![];
                for (j, &c) in coeffs.iter().enumerate() {
                    let q = q0 + 2 * j as i32;
                    qs.push((q, c));
                    if sym && q < 0 {
                        qs.push((-q, c));
                    }
                }
                out.last_mut().unwrap().blocks.push((ps, sign, qs));
            }
            Some(other) => panic!("bad listing line starting with {other}"),
        }
    }
    out
}

/// Known misprints in the listings, as (knot, description, correction).
fn errata() -> Vec<Erratum> {
    vec![
        ("14a_13107", "block printed as (p^-8 + p^4), computed (p^-8 + p^8)", |l| {
            for b in &mut l.blocks {
                if b.0 == [-8, 4] {
                    b.0 = vec![-8, 8];
                }
            }
        }),
        ("12n_90", "q^0 coefficient of the p^±8 block printed 2, computed 20", |l| {
            for b in &mut l.blocks {
                if b.0 == [-8, 8] {
                    for t in &mut b.2 {
                        if *t == (0, 2) {
                            t.1 = 20;
                        }
                    }
                }
            }
        }),
    ]
}

fn criterion_1(report: &mut Report, values: &mut Values, braids: &BTreeMap<KnotName, KnotRecord>) {
    let started = Instant::now();
    let mut ok = true;
    let mut notes = vec![];
    for mut listing in read_listings() {
        let printed = listing.value();
        let mut corrected = None;
        for (knot, what, fix) in errata() {
            if listing.names.iter().any(|n| n.to_string() == knot) {
                fix(&mut listing);
                corrected = Some((knot, what, listing.value()));
            }
        }
        for name in &listing.names {
            let v = lg21(&braids[name].braid).unwrap();
            values.0.push((name.to_string(), v.clone()));
            let matches = |f: &LaurentPoly2| *f == v || *f == v.substitute_inverse(Var::Q);
            if matches(&printed) {
                notes.push(format!("{name} exact"));
                continue;
            }
            match &corrected {
                // The misprint must be the whole difference, and the listing
                // must disagree with the computed value only there.
                Some((knot, what, fixed)) if matches(fixed) => {
                    let _ = writeln!(std::io::stderr(), "  listing erratum for {name} (clique of {knot}): {what}");
                    notes.push(format!("{name} exact after erratum"));
                }
                _ => {
                    ok = false;
                    notes.push(format!("{name} MISMATCH"));
                }
            }
        }
    }
    let secs = started.elapsed().as_secs_f64();
    report.record("1", ok && secs < 60.0, format!("{}; {secs:.1}s", notes.join(", ")));
}

// ---------------------------------------------------------------------------

fn clusters_match(res: &ResultsFile, expected: &[Vec<KnotName>]) -> (bool, String) {
    let found = cluster_fingerprints(&res.fingerprints());
    let errors = res.results.iter().filter(|r| r.error.is_some()).count();
    let extra: Vec<_> = found.iter().filter(|g| !expected.contains(g)).collect();
    let missing: Vec<_> = expected.iter().filter(|g| !found.contains(g)).collect();
    let detail = format!(
        "{} knots, {} clusters, {} expected, {} unexpected, {} missing, {} errors",
        res.results.len(),
        found.len(),
        expected.len(),
        extra.len(),
        missing.len(),
        errors
    );
    for g in extra.iter().chain(missing.iter()) {
        let names: Vec<String> = g.iter().map(|n| n.to_string()).collect();
        let _ = writeln!(std::io::stderr(), "  differs: {}", names.join(" "));
    }
    (extra.is_empty() && missing.is_empty() && errors == 0, detail)
}

fn criterion_2(report: &mut Report, values: &mut Values, ann: &Annotations) {
    let started = Instant::now();
    let t = table("knots/11.tsv");
    let rep = representation(Invariant::LG21);
    let res = run_batch(&t, rep, jobs());
    values.add_results(&res);
    let expected = ann.expected_groups(Some(11));
    let (ok, detail) = clusters_match(&res, &expected);
    let pairs = expected.iter().all(|g| g.len() == 2) && expected.len() == 16;
    report.record("2", ok && pairs && t.len() == 552, format!("{detail}; {:.0}s", started.elapsed().as_secs_f64()));
}

fn criterion_3_and_4(report: &mut Report, values: &mut Values, ann: &Annotations, full: bool) {
    let started = Instant::now();
    let all = table("knots/12.tsv");
    let records: Vec<KnotRecord> = if full {
        all.clone()
    } else {
        let members = ann.members();
        let (mut keep, rest): (Vec<KnotRecord>, Vec<KnotRecord>) =
            all.iter().cloned().partition(|r| members.contains(&r.name) || r.symmetry == SymmetryClass::Achiral);
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        keep.extend(rest.choose_multiple(&mut rng, 200).cloned());
        keep
    };
    let rep = representation(Invariant::LG21);
    let res = run_batch(&records, rep, jobs());
    values.add_results(&res);
    let expected = ann.expected_groups(Some(12));
    let (ok, detail) = clusters_match(&res, &expected);
    let twelve: Vec<_> = ann.cliques.iter().filter(|c| c.members[0].crossings() == Some(12)).collect();
    let mutant = twelve.iter().filter(|c| c.kind == CliqueKind::Mutant).count();
    let scope = if full { "full table" } else { "CI subset" };
    report.record(
        "3",
        ok && mutant == 75,
        format!(
            "{scope}: {detail} from {mutant} mutant and {} nonmutant cliques; {:.0}s",
            twelve.len() - mutant,
            started.elapsed().as_secs_f64()
        ),
    );

    // Chirality over the 12-crossing knots.
    let mut wrong = vec![];
    let mut undetected = 0;
    for r in &res.results {
        let Some(v) = &r.value else { continue };
        let detected = symmetry_flags(v).chirality_detected;
        undetected += !detected as usize;
        if detected == (r.symmetry == SymmetryClass::Achiral) {
            wrong.push(r.name.to_string());
        }
    }
    let achiral = all.iter().filter(|r| r.symmetry == SymmetryClass::Achiral).count();
    let evaluated_achiral = res.results.iter().filter(|r| r.symmetry == SymmetryClass::Achiral).count();

    // The listed chiral 14-crossing knots.
    let extra = table("knots/extra.tsv");
    let xres = run_batch(&extra, rep, jobs());
    values.add_results(&xres);
    let mut chiral14 = 0;
    let mut chiral14_detected = vec![];
    for r in &xres.results {
        if r.name.crossings() == Some(14) && r.symmetry == SymmetryClass::Chiral {
            chiral14 += 1;
            if symmetry_flags(r.value.as_ref().unwrap()).chirality_detected {
                chiral14_detected.push(r.name.to_string());
            }
        }
    }
    let ok4 =
        wrong.is_empty() && achiral == 58 && evaluated_achiral == 58 && chiral14 == 8 && chiral14_detected.is_empty();
    report.record(
        "4",
        ok4,
        format!(
            "{scope}: undetected on {undetected} of {} knots, {evaluated_achiral} of {achiral} achiral evaluated, {} mismatches; 14-crossing chiral undetected {} of {chiral14}",
            res.results.len(),
            wrong.len(),
            chiral14 - chiral14_detected.len()
        ),
    );
}

// ---------------------------------------------------------------------------

fn random_braid(rng: &mut ChaCha8Rng) -> BraidWord {
    let s = rng.gen_range(1..=4usize);
    let len = if s == 1 { 0 } else { rng.gen_range(0..=12usize) };
    let letters = (0..len)
        .map(|_| {
            let g = rng.gen_range(1..s as i32);
            if rng.gen() {
                g
            } else {
                -g
            }
        })
        .collect();
    BraidWord::new(s, letters).unwrap()
}

fn q_parity(f: &LaurentPoly2) -> bool {
    f.p_blocks()
        .iter()
        .all(|(p2, b)| p2 % 4 == 0 && b.terms().iter().all(|(m, _)| (m.q2 / 2 - p2 / 4).rem_euclid(2) == 0))
}

fn criterion_5(report: &mut Report, values: &mut Values, full: bool) {
    // (a)
    let mut ok = true;
    for inv in [Invariant::LG21, Invariant::LG11] {
        ok &= representation(inv).validate().passed();
    }
    report.record("5a", ok, "Yang-Baxter, inverse and Markov trace identities for LG21 and LG11".into());

    // (b), (c)
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut markov, mut mirror) = (0, 0);
    for _ in 0..200 {
        let b = random_braid(&mut rng);
        let v = lg21(&b).unwrap();
        let s = b.strands() as i32;
        let w: Vec<i32> =
            (0..3).filter(|_| s > 1).map(|_| rng.gen_range(1..s) * if rng.gen() { 1 } else { -1 }).collect();
        let mut moved = vec![b.stabilize(rng.gen()), b.conjugate(&w).unwrap(), b.rotate(rng.gen_range(0..13))];
        if let Ok(c) = b.braid_relation_rewrite(rng.gen_range(0..12)) {
            moved.push(c);
        }
        markov += moved.iter().all(|m| lg21(m).unwrap() == v) as usize;
        let refl = lg21(&b.reflect()).unwrap();
        let inv = lg21(&b.invert()).unwrap();
        mirror += (refl == v.substitute_inverse(Var::Q) && inv.dot_eq(&v)) as usize;
        values.0.push((b.to_string(), v));
    }
    report.record(
        "5b",
        markov == 200,
        format!("{markov}/200 braids invariant under stabilization, conjugation, rotation, braid relations"),
    );
    report.record("5c", mirror == 200, format!("{mirror}/200 braids: reflection = q-inversion, inversion dot-equal"));

    // (f) also needs the small knots.
    let small = table("knots/upto10.tsv");
    let res = run_batch(&small, representation(Invariant::LG21), jobs());
    values.add_results(&res);

    // (d)
    let bad: Vec<&str> = values
        .0
        .iter()
        .filter(|(_, v)| !(v.dot_eq(&v.substitute_inverse(Var::P)) && q_parity(v)))
        .map(|(n, _)| n.as_str())
        .collect();
    report.record(
        "5d",
        bad.is_empty(),
        format!("{} values checked, {} violations {:?}", values.0.len(), bad.len(), bad),
    );

    // (e)
    let mut checked = 0;
    let mut wrong = vec![];
    for r in small.iter().filter(|r| r.name.to_string().split('_').next().unwrap().parse::<u32>().unwrap() <= 8) {
        let a = alexander_oracle(&r.braid).unwrap().in_p_squared();
        checked += 1;
        if !lg11(&r.braid).unwrap().dot_eq(&a) {
            wrong.push(r.name.to_string());
        }
    }
    report.record(
        "5e",
        wrong.is_empty() && checked == 36,
        format!("{checked} knots with c <= 8, mismatches {wrong:?}"),
    );

    // (f)
    let one = LaurentPoly2::one();
    // Table names contain an underscore; random braids do not.
    let knots: Vec<&(String, LaurentPoly2)> = values.0.iter().filter(|(n, _)| n.contains('_')).collect();
    let mut names = BTreeSet::new();
    let mut trivial = vec![];
    for (n, v) in &knots {
        if !names.insert(n.clone()) {
            continue;
        }
        if (*v == one) != (n == "0_1") {
            trivial.push(n.clone());
        }
    }
    let scope = if full { "" } else { " (12-crossing CI subset)" };
    report.record(
        "5f",
        trivial.is_empty(),
        format!("{} bundled knots{scope}, lg21 = 1 only for the unknot; exceptions {trivial:?}", names.len()),
    );
}

fn criterion_6(report: &mut Report) {
    let reference: BTreeMap<String, BraidWord> = table("knots/upto10.tsv")
        .into_iter()
        .chain(table("knots/extra.tsv"))
        .map(|r| (r.name.to_string(), r.braid))
        .collect();
    let mut compared = 0;
    let mut failures = vec![];
    for rel in ["pd/upto10.pd", "pd/extra.pd"] {
        for line in std::fs::read_to_string(data(rel)).unwrap().lines().filter(|l| !l.starts_with('#')) {
            let (name, code) = line.split_once(' ').unwrap();
            let pd = PdCode::parse(code).unwrap();
            let (b, trace) = match pd_to_braid_traced(&pd) {
                Ok(x) => x,
                Err(e) => {
                    failures.push(format!("{name}: {e}"));
                    continue;
                }
            };
            if !trace.incoherence.windows(2).all(|w| w[1] < w[0]) {
                failures.push(format!("{name}: not monotone {:?}", trace.incoherence));
            }
            if b.strands() > 6 {
                continue;
            }
            let want = lg21(&reference[name]).unwrap().canonical_fingerprint();
            if lg21(&b).unwrap().canonical_fingerprint() != want {
                failures.push(format!("{name}: fingerprint differs"));
            }
            compared += 1;
        }
    }
    report.record(
        "6",
        failures.is_empty() && compared >= 20,
        format!("{compared} PD codes compared by fingerprint, all traces strictly decreasing; failures {failures:?}"),
    );
}

fn main() -> ExitCode {
    let full = std::env::var("LG_ACCEPTANCE_FULL").is_ok_and(|v| v == "1");
    let ann = Annotations::bundled();
    let mut report = Report { lines: vec![] };
    let mut values = Values::default();
    let braids: BTreeMap<KnotName, KnotRecord> =
        table("knots/12.tsv").into_iter().chain(table("knots/extra.tsv")).map(|r| (r.name.clone(), r)).collect();

    criterion_1(&mut report, &mut values, &braids);
    criterion_2(&mut report, &mut values, &ann);
    criterion_3_and_4(&mut report, &mut values, &ann, full);
    criterion_5(&mut report, &mut values, full);
    criterion_6(&mut report);

    let failed: Vec<&str> = report.lines.iter().filter(|l| !l.1).map(|l| l.0.as_str()).collect();
    let _ = writeln!(
        std::io::stderr(),
        "acceptance: {} criteria, {} failed {:?}",
        report.lines.len(),
        failed.len(),
        failed
    );
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
