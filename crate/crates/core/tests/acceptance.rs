//! Acceptance suite. Prints one `[PASS]` or `[FAIL]` line per criterion and
//! exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use quasitoric::charpair::{CharacteristicPair, Omniorientation};
use quasitoric::constructions::{cp2_sum, cpn, hirzebruch, product, standard_omniorientation};
use quasitoric::invariants::{intersection_form, report, todd_genus_4d};
use quasitoric::polytope::is_coherent;
use quasitoric::positivity::{
    brute_force_decide, decide_positive, verify_witness, PositivityResult,
};
use quasitoric::Sign;

const PARITY_TIME_LIMIT: Duration = Duration::from_secs(1);
const TORIC_TIME_LIMIT: Duration = Duration::from_secs(5);
const ORACLE_CASES_PER_FAMILY: usize = 120;
const ORACLE_MAX_FACETS: usize = 12;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn decide(pair: &CharacteristicPair) -> Result<PositivityResult, String> {
    decide_positive(pair).map_err(|e| e.to_string())
}

/// Certificate if positive, else all-plus.
fn reference_omni(pair: &CharacteristicPair) -> Result<Omniorientation, String> {
    Ok(match decide(pair)? {
        PositivityResult::Sat { certificate, .. } => certificate,
        PositivityResult::Unsat { .. } => Omniorientation::all_plus(pair.num_facets()),
    })
}

fn sigma(pair: &CharacteristicPair, omni: &Omniorientation) -> Result<i64, String> {
    Ok(intersection_form(pair, omni)
        .map_err(|e| e.to_string())?
        .signature())
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    for k in 1..=7usize {
        let pair = cp2_sum(k).map_err(|e| e.to_string())?;
        match decide(&pair)? {
            PositivityResult::Sat { certificate, .. } => {
                ensure(k % 2 == 1, || format!("k = {k}: SAT for even k"))?;
                ensure(
                    pair.all_signs(&certificate)
                        .iter()
                        .all(|&s| s == Sign::Plus),
                    || format!("k = {k}: certificate has a negative fixed point"),
                )?;
            }
            PositivityResult::Unsat { witness } => {
                ensure(k % 2 == 0, || format!("k = {k}: UNSAT for odd k"))?;
                ensure(verify_witness(&pair, &witness), || {
                    format!("k = {k}: witness fails the parity check")
                })?;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < PARITY_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "SAT iff k odd for k = 1..7, certificates and witnesses verified, {elapsed:?}"
    ))
}

fn criterion_2() -> Outcome {
    for k in 1..=7i64 {
        let pair = cp2_sum(k as usize).map_err(|e| e.to_string())?;
        let r = report(&pair, &standard_omniorientation(&pair)).map_err(|e| e.to_string())?;
        let expected = BigRational::new(BigInt::from(k + 1), BigInt::from(2));
        ensure(r.todd.as_ref() == Some(&expected), || {
            format!("k = {k}: td = {:?}", r.todd)
        })?;
        ensure(r.euler == k + 2, || format!("k = {k}: chi = {}", r.euler))?;
        ensure(r.signature == Some(k), || {
            format!("k = {k}: sigma = {:?}", r.signature)
        })?;
        ensure(r.almost_complex_4d == Some(k % 2 == 1), || {
            format!("k = {k}: almost complex = {:?}", r.almost_complex_4d)
        })?;
    }
    Ok("td = (k+1)/2 exactly, chi = k+2, sigma = k, almost complex iff k odd, k = 1..7".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut factors: Vec<(String, CharacteristicPair)> = Vec::new();
    for n in 1..=6 {
        factors.push((format!("cpn({n})"), cpn(n).map_err(|e| e.to_string())?));
    }
    for a in -3..=3 {
        factors.push((
            format!("hirzebruch({a})"),
            hirzebruch(a).map_err(|e| e.to_string())?,
        ));
    }
    // Multisets of factors as non-decreasing index sequences.
    let mut stack: Vec<(usize, Vec<usize>, usize)> = vec![(0, Vec::new(), 0)];
    let mut checked = 0usize;
    while let Some((from, chosen, dim)) = stack.pop() {
        if !chosen.is_empty() {
            let mut pair = factors[chosen[0]].1.clone();
            for &i in &chosen[1..] {
                pair = product(&pair, &factors[i].1).map_err(|e| e.to_string())?;
            }
            let result = decide(&pair)?;
            ensure(result.is_sat(), || {
                let names: Vec<&str> = chosen.iter().map(|&i| factors[i].0.as_str()).collect();
                format!("UNSAT for {}", names.join(" x "))
            })?;
            checked += 1;
        }
        for (i, (_, factor)) in factors.iter().enumerate().skip(from) {
            let d = dim + factor.dim();
            if d <= 6 {
                let mut next = chosen.clone();
                next.push(i);
                stack.push((i, next, d));
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < TORIC_TIME_LIMIT, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{checked} toric pairs and products up to dimension 6 all SAT, {elapsed:?}"
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = common::rng(0x5eed);
    let mut cases = Vec::new();
    for _ in 0..ORACLE_CASES_PER_FAMILY {
        let m = 3 + cases.len() % 8;
        cases.push(common::random_polygon_pair(&mut rng, m));
    }
    for _ in 0..ORACLE_CASES_PER_FAMILY {
        cases.push(common::random_3d_pair(&mut rng, ORACLE_MAX_FACETS));
    }
    let (mut sat, mut unsat) = (0usize, 0usize);
    for (i, pair) in cases.iter().enumerate() {
        ensure(pair.num_facets() <= ORACLE_MAX_FACETS, || {
            format!("case {i}: too many facets")
        })?;
        let fast = decide(pair)?;
        let slow = brute_force_decide(pair).map_err(|e| e.to_string())?;
        ensure(fast.is_sat() == slow.satisfiable, || {
            format!("case {i}: SAT/UNSAT mismatch")
        })?;
        ensure(fast.count() == BigUint::from(slow.count), || {
            format!(
                "case {i}: count {} vs brute force {}",
                fast.count(),
                slow.count
            )
        })?;
        if fast.is_sat() {
            sat += 1;
        } else {
            unsat += 1;
        }
    }
    Ok(format!(
        "{} random pairs ({sat} SAT, {unsat} UNSAT), zero mismatches",
        cases.len()
    ))
}

fn criterion_5() -> Outcome {
    let mut rng = common::rng(0xface);
    let fixtures = common::fixtures();
    for (name, pair) in &fixtures {
        let base = decide(pair)?;
        let omni = reference_omni(pair)?;
        let signs = pair.all_signs(&omni);

        let perm = common::random_perm(&mut rng, pair.num_facets());
        let (relabeled, omni_r) = pair
            .permute_facets(&perm, &omni)
            .map_err(|e| e.to_string())?;
        let r = decide(&relabeled)?;
        ensure(
            r.is_sat() == base.is_sat() && r.count() == base.count(),
            || format!("{name}: decision changes under relabeling"),
        )?;

        let a = common::random_sl(&mut rng, pair.dim());
        let changed = pair.basis_change(&a).map_err(|e| e.to_string())?;
        let c = decide(&changed)?;
        ensure(
            c.is_sat() == base.is_sat() && c.count() == base.count(),
            || format!("{name}: decision changes under basis change"),
        )?;
        ensure(changed.all_signs(&omni) == signs, || {
            format!("{name}: signs change under basis change")
        })?;

        let flipped = omni.with_global_flipped();
        let negated: Vec<Sign> = signs.iter().map(|&s| -s).collect();
        ensure(pair.all_signs(&flipped) == negated, || {
            format!("{name}: global flip does not negate signs")
        })?;

        if pair.dim() == 2 {
            let s = sigma(pair, &omni)?;
            let td = todd_genus_4d(pair, &omni).map_err(|e| e.to_string())?;
            ensure(sigma(&relabeled, &omni_r)? == s, || {
                format!("{name}: signature changes under relabeling")
            })?;
            ensure(
                todd_genus_4d(&relabeled, &omni_r).map_err(|e| e.to_string())? == td,
                || format!("{name}: td changes under relabeling"),
            )?;
            ensure(sigma(&changed, &omni)? == s, || {
                format!("{name}: signature changes under basis change")
            })?;
            ensure(
                todd_genus_4d(&changed, &omni).map_err(|e| e.to_string())? == td,
                || format!("{name}: td changes under basis change"),
            )?;
            ensure(sigma(pair, &flipped)? == -s, || {
                format!("{name}: global flip does not negate signature")
            })?;
        }
    }
    Ok(format!(
        "{} fixtures: relabeling, det +1 basis change, global flip",
        fixtures.len()
    ))
}

fn criterion_6() -> Outcome {
    let mut rng = common::rng(0xd5);
    let fixtures = common::fixtures();
    let mut forms = 0usize;
    for (name, pair) in &fixtures {
        let poly = pair.polytope();
        ensure(is_coherent(poly, poly.orientation()), || {
            format!("{name}: incoherent orientation")
        })?;
        let h = poly.h_vector();
        ensure(h.iter().eq(h.iter().rev()), || {
            format!("{name}: h-vector {h:?} not palindromic")
        })?;
        if pair.dim() == 2 {
            let mut omnis = vec![
                reference_omni(pair)?,
                Omniorientation::all_plus(pair.num_facets()),
            ];
            for _ in 0..4 {
                use rand::Rng;
                omnis.push(Omniorientation::from_bits(rng.gen(), pair.num_facets()));
            }
            for omni in &omnis {
                let form = intersection_form(pair, omni).map_err(|e| e.to_string())?;
                ensure(form.is_symmetric() && form.is_unimodular(), || {
                    format!("{name}: form {:?} not unimodular", form.matrix)
                })?;
                let td = todd_genus_4d(pair, omni).map_err(|e| e.to_string())?;
                let chi = pair.polytope().num_vertices() as i64;
                ensure(
                    td * BigRational::from_integer(4.into())
                        == BigRational::from_integer((chi + form.signature()).into()),
                    || format!("{name}: 4 td != chi + sigma"),
                )?;
                forms += 1;
            }
        }
    }
    let small: Vec<&(String, CharacteristicPair)> =
        fixtures.iter().filter(|(_, p)| p.dim() <= 2).collect();
    let mut products = 0usize;
    for (n1, p1) in &small {
        for (n2, p2) in &small {
            let prod = product(p1, p2).map_err(|e| e.to_string())?;
            let expected = decide(p1)?.is_sat() && decide(p2)?.is_sat();
            ensure(decide(&prod)?.is_sat() == expected, || {
                format!("{n1} x {n2}: product positivity mismatch")
            })?;
            products += 1;
        }
    }
    Ok(format!(
        "{} fixtures coherent and palindromic, {forms} unimodular forms with 4 td = chi + sigma, {products} products factorize",
        fixtures.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("parity law for connected sums of planes", criterion_1),
        ("Todd genus of connected sums of planes", criterion_2),
        ("toric positivity", criterion_3),
        ("GF(2) decision agrees with brute force", criterion_4),
        (
            "invariance under relabeling, basis change, global flip",
            criterion_5,
        ),
        ("structural invariants", criterion_6),
    ];
    let mut failed = 0;
    for (i, (title, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] criterion {}: {title}: {detail}", i + 1),
            Err(reason) => {
                println!("[FAIL] criterion {}: {title}: {reason}", i + 1);
                failed += 1;
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
