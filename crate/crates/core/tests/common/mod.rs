//! Fixtures and seeded random characteristic pairs shared by the integration
//! tests.

#![allow(dead_code)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use quasitoric::charpair::{CharacteristicMatrix, CharacteristicPair};
use quasitoric::constructions::{cp2_sum, cpn, hirzebruch, polygon, product, vertex_cut};
use quasitoric::exact::bareiss_det;

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

fn det2(a: &[i64; 2], b: &[i64; 2]) -> i64 {
    a[0] * b[1] - a[1] * b[0]
}

fn extend_cycle(
    columns: &mut Vec<[i64; 2]>,
    m: usize,
    candidates: &[[i64; 2]],
    budget: &mut u32,
) -> bool {
    if *budget == 0 {
        return false;
    }
    *budget -= 1;
    if columns.len() == m {
        return det2(&columns[m - 1], &columns[0]).abs() == 1;
    }
    let last = *columns.last().unwrap();
    for c in candidates {
        if det2(&last, c).abs() != 1 {
            continue;
        }
        columns.push(*c);
        if extend_cycle(columns, m, candidates, budget) {
            return true;
        }
        columns.pop();
    }
    false
}

/// A polygon with `m` facets and a random characteristic matrix with entries
/// in `[-2, 2]`, found by backtracking around the boundary cycle.
pub fn random_polygon_pair(rng: &mut ChaCha8Rng, m: usize) -> CharacteristicPair {
    let mut candidates: Vec<[i64; 2]> = (-2..=2)
        .flat_map(|x| (-2..=2).map(move |y| [x, y]))
        .filter(|c| *c != [0, 0])
        .collect();
    loop {
        candidates.shuffle(rng);
        let mut columns = vec![candidates[0]];
        let mut budget = 20_000;
        if extend_cycle(&mut columns, m, &candidates, &mut budget) {
            let rows: Vec<Vec<i64>> = (0..2)
                .map(|i| columns.iter().map(|c| c[i]).collect())
                .collect();
            let poly = polygon(m).unwrap();
            return CharacteristicPair::new(poly, CharacteristicMatrix::from_i64(&rows)).unwrap();
        }
    }
}

/// Negates a random subset of columns; the result is again characteristic.
pub fn random_column_signs(rng: &mut ChaCha8Rng, pair: &CharacteristicPair) -> CharacteristicPair {
    let flips: Vec<bool> = (0..pair.num_facets()).map(|_| rng.gen()).collect();
    let rows: Vec<Vec<BigInt>> = pair
        .lambda()
        .rows()
        .iter()
        .map(|r| {
            r.iter()
                .zip(&flips)
                .map(|(x, &f)| if f { -x } else { x.clone() })
                .collect()
        })
        .collect();
    CharacteristicPair::new(pair.polytope().clone(), CharacteristicMatrix::new(rows)).unwrap()
}

/// Cuts a random vertex, giving the new facet the column `sum +-lambda_f`
/// over the facets at that vertex with random signs.
pub fn random_signed_cut(rng: &mut ChaCha8Rng, pair: &CharacteristicPair) -> CharacteristicPair {
    let v = rng.gen_range(0..pair.polytope().num_vertices());
    let at_v = pair.polytope().vertex(v).to_vec();
    let cut = vertex_cut(pair, v).unwrap();
    let m = pair.num_facets();
    let signs: Vec<i64> = at_v
        .iter()
        .map(|_| if rng.gen() { 1 } else { -1 })
        .collect();
    let rows: Vec<Vec<BigInt>> = cut
        .lambda()
        .rows()
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r[m] = at_v
                .iter()
                .zip(&signs)
                .fold(BigInt::from(0), |acc, (&f, &s)| acc + &r[f] * s);
            r
        })
        .collect();
    CharacteristicPair::new(cut.polytope().clone(), CharacteristicMatrix::new(rows)).unwrap()
}

/// A random 3-dimensional pair with at most `max_facets` facets: a simplex,
/// prism or cube with random column signs, then random signed vertex cuts.
pub fn random_3d_pair(rng: &mut ChaCha8Rng, max_facets: usize) -> CharacteristicPair {
    let line = cpn(1).unwrap();
    let mut pair = match rng.gen_range(0..4) {
        0 => cpn(3).unwrap(),
        1 => product(&random_polygon_pair(rng, 3), &line).unwrap(),
        2 => product(&random_polygon_pair(rng, 4), &line).unwrap(),
        _ => {
            let m = rng.gen_range(3..=6);
            product(&line, &random_polygon_pair(rng, m)).unwrap()
        }
    };
    pair = random_column_signs(rng, &pair);
    let cuts = rng.gen_range(0..=max_facets - pair.num_facets());
    for _ in 0..cuts {
        pair = random_signed_cut(rng, &pair);
    }
    pair
}

/// A random unimodular `n x n` matrix with determinant `+1`, as a product of
/// elementary shears.
pub fn random_sl(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let k: i64 = rng.gen_range(-2..=2);
        let src = a[j].clone();
        for (x, s) in a[i].iter_mut().zip(&src) {
            *x += k * s;
        }
    }
    let a: Vec<Vec<BigInt>> = a
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    assert_eq!(bareiss_det(&a), BigInt::from(1));
    a
}

/// A random permutation of `0..m`.
pub fn random_perm(rng: &mut ChaCha8Rng, m: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..m).collect();
    p.shuffle(rng);
    p
}

/// Named pairs built by the library's constructions.
pub fn fixtures() -> Vec<(String, CharacteristicPair)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("cpn({n})"), cpn(n).unwrap()));
    }
    for a in -3..=3 {
        out.push((format!("hirzebruch({a})"), hirzebruch(a).unwrap()));
    }
    for k in 1..=7 {
        out.push((format!("cp2_sum({k})"), cp2_sum(k).unwrap()));
    }
    let cp2 = cpn(2).unwrap();
    out.push(("cut(cpn(2))".into(), vertex_cut(&cp2, 0).unwrap()));
    let cp3 = cpn(3).unwrap();
    out.push(("cut(cpn(3))".into(), vertex_cut(&cp3, 1).unwrap()));
    let line = cpn(1).unwrap();
    out.push(("cpn(1)^2".into(), product(&line, &line).unwrap()));
    out.push((
        "cpn(1)^3".into(),
        product(&product(&line, &line).unwrap(), &line).unwrap(),
    ));
    out.push(("cpn(2)xcpn(1)".into(), product(&cp2, &line).unwrap()));
    out.push((
        "cp2_sum(2)xcpn(1)".into(),
        product(&cp2_sum(2).unwrap(), &line).unwrap(),
    ));
    let mut r = rng(7);
    for m in 3..=8 {
        out.push((
            format!("random_polygon({m})"),
            random_polygon_pair(&mut r, m),
        ));
    }
    for i in 0..6 {
        out.push((format!("random_3d({i})"), random_3d_pair(&mut r, 10)));
    }
    out
}
