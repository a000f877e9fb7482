//! Cross-checks between independent brute-force computations.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use parity_blocks::lattice_paths;
use parity_blocks::partitions::{self, Partition};
use parity_blocks::posets::{self, Composition, SBetaStructure};
use parity_blocks::qseries::{self, QSeries};
use parity_blocks::sign::parse_sign_word;
use parity_blocks::Sign;

/// `p(n)` by listing partitions, with `p(negative) = 0`.
fn p(n: i64) -> u64 {
    if n < 0 {
        0
    } else {
        partitions::enumerate_partitions(n as u32).len() as u64
    }
}

fn catalan(n: usize) -> usize {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

/// `a^±_m(n; d)` by filtering the full list of partitions of `n`.
fn count_by_filter(n: u32, d: usize, m: usize, sign: Sign) -> u64 {
    partitions::enumerate_partitions(n)
        .iter()
        .filter(|p| p.durfee_side() == d)
        .filter(|p| {
            let b = partitions::to_frobenius(p).unwrap().parity_blocks();
            b.count() == m && b.last_sign() == Some(sign)
        })
        .count() as u64
}

#[test]
fn symbol_enumeration_agrees_with_filtering() {
    for n in 1..=22u32 {
        for d in 1..=4 {
            for m in 1..=d {
                for sign in Sign::BOTH {
                    assert_eq!(
                        partitions::count_a(n as u64, d, m, sign),
                        count_by_filter(n, d, m, sign),
                        "n={n} d={d} m={m} {sign}"
                    );
                }
            }
        }
    }
}

#[test]
fn one_block_counts() {
    for n in 1..=30i64 {
        assert_eq!(partitions::count_a_by_blocks(n as u64, 1, Sign::Plus), p(n) - p(n - 1));
        assert_eq!(partitions::count_a_by_blocks(n as u64, 1, Sign::Minus), p(n) - p(n - 2));
    }
    assert_eq!(partitions::count_a_by_blocks(1, 1, Sign::Minus), 1);
}

#[test]
fn minus_count_is_shifted_plus_count() {
    for n in 1..=30u64 {
        for d in 1..=5 {
            for m in 1..=d {
                assert_eq!(
                    partitions::count_a(n, d, m, Sign::Minus),
                    partitions::count_a(n + d as u64, d, m, Sign::Plus)
                );
            }
        }
    }
}

#[test]
fn blocks_difference() {
    for n in 1..=30i64 {
        for m in 1..=4i64 {
            let lhs = partitions::count_a_by_blocks(n as u64, m as usize, Sign::Minus) as i64
                - partitions::count_a_by_blocks(n as u64, m as usize, Sign::Plus) as i64;
            let rhs = p(n - (3 * m * m - m) / 2) as i64 - p(n - (3 * m * m + m) / 2) as i64;
            assert_eq!(lhs, rhs, "n={n} m={m}");
        }
    }
}

#[test]
fn columns_difference() {
    for n in 1..=30i64 {
        for d in 1..=4i64 {
            let lhs = partitions::count_a_by_columns(n as u64, d as usize, Sign::Minus) as i64
                - partitions::count_a_by_columns(n as u64, d as usize, Sign::Plus) as i64;
            let rhs: u64 = (1..)
                .map(|j| n - 2 * d * j + 1)
                .take_while(|&k| k >= 0)
                .map(|k| partitions::count_all_columns(k as u64, d as usize - 1))
                .sum();
            assert_eq!(lhs, rhs as i64, "n={n} d={d}");
        }
    }
}

#[test]
fn partition_of_unity() {
    for n in 1..=30u64 {
        let by_blocks: u64 = (1..=6)
            .flat_map(|m| Sign::BOTH.map(|s| partitions::count_a_by_blocks(n, m, s)))
            .sum();
        let by_columns: u64 = (1..=6)
            .flat_map(|d| Sign::BOTH.map(|s| partitions::count_a_by_columns(n, d, s)))
            .sum();
        assert_eq!(by_blocks, p(n as i64));
        assert_eq!(by_columns, p(n as i64));
    }
}

#[test]
fn negative_prefix_alone_is_not_p_n_minus_1() {
    // Only together with the prefix PN does the class reach p(n-1).
    let n_only = partitions::count_prefix_pattern(5, &parse_sign_word("N").unwrap()).unwrap();
    let pn = partitions::count_prefix_pattern(5, &parse_sign_word("PN").unwrap()).unwrap();
    assert_eq!((n_only, pn), (4, 1));
    for n in 1..=30i64 {
        let a = partitions::count_prefix_pattern(n as u64, &[Sign::Minus]).unwrap();
        let b = partitions::count_prefix_pattern(n as u64, &[Sign::Plus, Sign::Minus]).unwrap();
        assert_eq!(a + b, p(n - 1));
    }
}

#[test]
fn prefix_classes() {
    for m in 1..=3usize {
        for n in 1..=30i64 {
            for last in Sign::BOTH {
                let short: Vec<Sign> = (0..m)
                    .map(|k| if (m - 1 - k) % 2 == 0 { last } else { last.flip() })
                    .collect();
                let mut long = vec![short[0].flip()];
                long.extend(&short);
                let total = partitions::count_prefix_pattern(n as u64, &short).unwrap()
                    + partitions::count_prefix_pattern(n as u64, &long).unwrap();
                let shift = match last {
                    Sign::Minus => (3 * m * m - m) / 2,
                    Sign::Plus => (3 * m * m + m) / 2,
                } as i64;
                assert_eq!(total, p(n - shift), "m={m} n={n} last={last}");
            }
        }
    }
}

#[test]
fn partition_numbers_agree() {
    let table = qseries::partition_table(25);
    let euler = qseries::euler_inverse(25);
    for (n, pn) in table.iter().enumerate() {
        let listed = BigInt::from(p(n as i64));
        assert_eq!(&BigInt::from(pn.clone()), &listed);
        assert_eq!(euler.coeff(n), listed);
    }
}

#[test]
fn qbinomial_counts_partitions_in_a_box() {
    for n in 0..=10usize {
        for k in 0..=n {
            let poly = qseries::qbinomial_poly(n, k as i64);
            for (w, c) in poly.iter().enumerate() {
                let fits = if w == 0 {
                    1
                } else {
                    partitions::enumerate_partitions(w as u32)
                        .iter()
                        .filter(|p| p.parts().len() <= k && p.parts().iter().all(|&x| x as usize <= n - k))
                        .count()
                };
                assert_eq!(c, &BigInt::from(fits), "[{n},{k}] at q^{w}");
            }
        }
    }
}

#[test]
fn frobenius_size_formula() {
    for d in 1..=3usize {
        for f in (0..=60).flat_map(|n| partitions::frobenius_symbols(n, d)) {
            if f.top().iter().chain(f.bottom()).all(|&v| v <= 6) {
                assert_eq!(partitions::from_frobenius(&f).size(), f.size());
            }
        }
    }
    let p = Partition::new(vec![2]).unwrap();
    assert_eq!(partitions::to_frobenius(&p).unwrap().top(), &[1]);
}

#[test]
fn unmarked_dyck_paths_are_catalan() {
    for s in 1..=10 {
        assert_eq!(lattice_paths::enumerate_exact_marks(s, 0).len(), catalan(s));
    }
}

#[test]
fn exact_mark_families_partition_all_marked_paths() {
    for s in 1..=6 {
        let all = lattice_paths::enumerate_marked_paths(s, s, 0).unwrap();
        let top = 3 * s * s;
        let mut sum = QSeries::zero(top);
        for r in 0..=s {
            sum = sum.add(&lattice_paths::gf_vmr(&lattice_paths::enumerate_exact_marks(s, r), top));
        }
        assert_eq!(sum, lattice_paths::gf_vmr(&all, top));
    }
    let sizes: Vec<usize> = (0..=2).map(|r| lattice_paths::enumerate_exact_marks(2, r).len()).collect();
    assert_eq!(sizes, vec![2, 1, 0]);
}

#[test]
fn marks_sit_on_returns() {
    for s in 1..=6 {
        for t in 0..=s {
            for p in lattice_paths::enumerate_marked_paths(s, t, 0).unwrap() {
                let rets = p.returns();
                assert!(p.marks().iter().all(|x| rets.contains(x) && x % 2 == 0));
                assert_eq!((p.s(), p.t()), (s, t));
            }
        }
    }
}

#[test]
fn extension_counts_are_catalan_products() {
    for d in 1..=6 {
        for beta in Composition::all_of(d) {
            let s = SBetaStructure::new(beta.clone());
            let expect: usize = beta.parts().iter().map(|&b| catalan(b)).product();
            assert_eq!(posets::linear_extensions(&s).len(), expect, "{beta}");
        }
    }
}

#[test]
fn block_extension_prefix_and_descents() {
    for b in 1..=6 {
        let s = SBetaStructure::new(Composition::new(vec![b]).unwrap());
        for w in posets::linear_extensions(&s) {
            let word = w.word();
            let mut low = 0i64;
            for &v in word {
                low += if v <= b { 1 } else { -1 };
                assert!(low >= 0);
            }
            for k in 0..word.len() - 1 {
                if word[k] > word[k + 1] {
                    assert!(word[k] > b && b >= word[k + 1]);
                }
            }
        }
    }
}

#[test]
fn generic_extension_oracle() {
    for d in 1..=4 {
        for beta in Composition::all_of(d) {
            let s = SBetaStructure::new(beta);
            let fast: BTreeSet<Vec<usize>> =
                posets::linear_extensions(&s).into_iter().map(|w| w.word().to_vec()).collect();
            let slow: BTreeSet<Vec<usize>> = posets::linear_extensions_generic(&s).into_iter().collect();
            assert_eq!(fast, slow);
        }
    }
}

#[test]
fn two_chain_partitions_have_at_most_two_parts() {
    let s = SBetaStructure::new(Composition::new(vec![1]).unwrap());
    let hist = posets::enumerate_poset_partitions(&s, 20);
    for (n, &c) in hist.iter().enumerate() {
        let listed = if n == 0 {
            1
        } else {
            partitions::enumerate_partitions(n as u32)
                .iter()
                .filter(|p| p.parts().len() <= 2)
                .count() as u64
        };
        assert_eq!(c, listed);
    }
}

#[test]
fn poset_partition_list_matches_histogram() {
    for d in 1..=3 {
        for beta in Composition::all_of(d) {
            let s = SBetaStructure::new(beta);
            let hist = posets::enumerate_poset_partitions(&s, 8);
            let mut from_list = vec![0u64; 9];
            for pp in posets::list_poset_partitions(&s, 8) {
                from_list[pp.weight() as usize] += 1;
            }
            assert_eq!(hist, from_list);
        }
    }
}
