mod common;

use common::{cases, table, DENSITIES};
use qmc_core::oracle::is_implicant;
use qmc_core::{find_primes_dense, find_primes_sparse, oracle_primes, DenseOptions, PrimeSet, Trit, TruthTable};

fn check_against_oracle(tt: &TruthTable, label: &str) -> PrimeSet {
    let want = oracle_primes(tt).unwrap();
    let dense = find_primes_dense(tt, &DenseOptions::default()).unwrap();
    let sparse = find_primes_sparse(tt).unwrap();
    assert_eq!(dense, want, "dense vs oracle on {label}");
    assert_eq!(sparse, want, "sparse vs oracle on {label}");
    want
}

#[test]
fn engines_match_oracle_up_to_ten_variables() {
    for (n, d, seed, tt) in cases(1..=10, &DENSITIES, 4) {
        let primes = check_against_oracle(&tt, &format!("n={n} d={d} seed={seed}"));
        assert!(primes.covers_exactly(&tt));
        assert!(primes.is_antichain());
    }
}

#[test]
fn exact_count_tables_match_oracle() {
    for n in [6, 9] {
        for k in [1, 2, 3, 5, 8] {
            let d = k as f64 / (1u64 << n) as f64;
            let tt = qmc_core::io::random_function_exact(n, d, k).unwrap();
            assert_eq!(tt.count_ones(), k);
            check_against_oracle(&tt, &format!("n={n} |S|={k}"));
        }
    }
}

/// Every output is an implicant and no single widening is.
#[test]
fn outputs_are_prime_beyond_oracle_enumeration_size() {
    for (seed, d) in [(1, 0.5), (2, 0.85)] {
        let tt = table(14, d, seed);
        let primes = find_primes_dense(&tt, &DenseOptions::default()).unwrap();
        assert_eq!(primes, find_primes_sparse(&tt).unwrap());
        // a deterministic sample keeps the brute-force check cheap
        for s in primes.iter().step_by(97) {
            assert!(is_implicant(s, &tt).unwrap(), "{s} is not an implicant");
            for k in 0..s.len() {
                if s.get(k) != Trit::Star {
                    let wider = s.with(k, Trit::Star);
                    assert!(!is_implicant(&wider, &tt).unwrap(), "{s} widens to {wider}");
                }
            }
        }
        assert!(primes.covers_exactly(&tt));
    }
}

#[test]
fn golden_hex_function() {
    let text = include_str!("data/golden4.hex");
    let tt = qmc_core::io::parse(text, qmc_core::io::Format::Hex, Some(4)).unwrap();
    let want: Vec<&str> = include_str!("data/golden4.primes").lines().collect();
    let got = find_primes_dense(&tt, &DenseOptions::default()).unwrap();
    let got: Vec<String> = got.output_order().iter().map(|s| s.to_string()).collect();
    assert_eq!(got, want);
    assert_eq!(find_primes_sparse(&tt).unwrap(), oracle_primes(&tt).unwrap());
}
