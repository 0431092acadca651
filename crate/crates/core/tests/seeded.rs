use compgf::bivariate::bivariate_table;
use compgf::genfun::{composition_gf, counts};
use compgf::oracle::enumerate;
use compgf::{parse_setspec, LinearRecurrence, PartSet};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_set(rng: &mut ChaCha8Rng) -> PartSet {
    let modulus = rng.random_range(1..=6u64);
    let residues: Vec<u64> = (0..modulus).filter(|_| rng.random_bool(0.5)).collect();
    let mut added = Vec::new();
    let mut removed = Vec::new();
    for v in 1..=12u64 {
        match rng.random_range(0..8) {
            0 => added.push(v),
            1 => removed.push(v),
            _ => {}
        }
    }
    PartSet::new(modulus, residues, added, removed).unwrap()
}

#[test]
fn recurrence_and_gf_agree_on_random_sets() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for _ in 0..20 {
        let set = random_set(&mut rng);
        let gf = composition_gf(&set);
        let rec = LinearRecurrence::from_gf(&gf);
        let series = gf.series(60);
        assert_eq!(rec.terms(60).as_slice(), series.coeffs(), "{set}");
        assert_eq!(counts(&set, 60).as_slice(), series.coeffs(), "{set}");
        let json = rec.to_json();
        assert_eq!(LinearRecurrence::from_json(&json).unwrap(), rec);
    }
}

/// Pascal's rule built from scratch, independent of any factorial code.
fn pascal(rows: usize) -> Vec<Vec<BigInt>> {
    let mut t: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
    for r in 1..=rows {
        let prev = &t[r - 1];
        let row = (0..=r)
            .map(|j| {
                let left = if j > 0 {
                    prev[j - 1].clone()
                } else {
                    BigInt::from(0)
                };
                let right = prev.get(j).cloned().unwrap_or_default();
                left + right
            })
            .collect();
        t.push(row);
    }
    t
}

/// Odd parts: `c(n, m) = C((n + m)/2 - 1, m - 1)` when `n = m (mod 2)`, else 0.
#[test]
fn odd_parts_by_length_is_binomial() {
    let odd = parse_setspec("mod:2:1").unwrap();
    let binom = pascal(60);
    let formula = |n: usize, m: usize| -> BigInt {
        if m == 0 || m > n || (n + m) % 2 == 1 {
            return BigInt::from((n == 0 && m == 0) as u8);
        }
        binom[(n + m) / 2 - 1][m - 1].clone()
    };

    // the formula is first confirmed against brute force
    for n in 1..=14usize {
        let mut by_length = vec![BigInt::from(0); n + 1];
        for c in enumerate(&odd, n as u64).unwrap() {
            by_length[c.length()] += 1;
        }
        for (m, v) in by_length.iter().enumerate() {
            assert_eq!(v, &formula(n, m), "n={n} m={m}");
        }
    }

    let table = bivariate_table(&odd, 60);
    for n in 0..=60 {
        for m in 0..=n {
            assert_eq!(table.get(n, m), formula(n, m), "n={n} m={m}");
        }
    }
}
