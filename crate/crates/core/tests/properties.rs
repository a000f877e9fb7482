use proptest::prelude::*;

use num_bigint::BigInt;
use parity_blocks::bijections;
use parity_blocks::lattice_paths::{self, MarkedBallotPath};
use parity_blocks::partitions::{self, FrobeniusSymbol, Partition};
use parity_blocks::posets::{self, Composition, PosetPartition, SBetaStructure};
use parity_blocks::qseries::{self, QSeries};
use parity_blocks::Sign;

/// A strictly decreasing row of `len` values drawn from `0..bound`.
fn strict_row(len: usize, bound: u32) -> impl Strategy<Value = Vec<u32>> {
    proptest::sample::subsequence((0..bound).collect::<Vec<_>>(), len).prop_map(|mut v| {
        v.reverse();
        v
    })
}

fn symbol() -> impl Strategy<Value = FrobeniusSymbol> {
    (1usize..=6).prop_flat_map(|d| {
        (strict_row(d, 14), strict_row(d, 14))
            .prop_map(|(t, b)| FrobeniusSymbol::new(t, b).unwrap())
    })
}

fn partition() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(1u32..12, 1..12).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition::new(v).unwrap()
    })
}

fn composition(max_d: usize) -> impl Strategy<Value = Composition> {
    proptest::collection::vec(1usize..=3, 1..=max_d).prop_map(|v| Composition::new(v).unwrap())
}

fn series(precision: usize) -> impl Strategy<Value = QSeries> {
    proptest::collection::vec(-20i64..20, precision + 1)
        .prop_map(move |v| QSeries::from_coeffs(v, precision))
}

/// A series with constant term 1, so that it is invertible.
fn unit_series(precision: usize) -> impl Strategy<Value = QSeries> {
    series(precision).prop_map(move |s| {
        let mut c = s.into_coeffs();
        c[0] = BigInt::from(1);
        QSeries::from_coeffs(c, precision)
    })
}

/// Row lengths of the Ferrers graph read directly off the symbol.
fn ranks_from_ferrers(f: &FrobeniusSymbol) -> Vec<i64> {
    let p = partitions::from_frobenius(f);
    let conj = p.conjugate();
    (0..f.columns())
        .map(|i| p.parts()[i] as i64 - conj.parts()[i] as i64)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn symbol_round_trip(f in symbol()) {
        let p = partitions::from_frobenius(&f);
        prop_assert_eq!(p.size(), f.size());
        prop_assert_eq!(p.durfee_side(), f.columns());
        prop_assert_eq!(partitions::to_frobenius(&p).unwrap(), f);
    }

    #[test]
    fn partition_round_trip(p in partition()) {
        let f = partitions::to_frobenius(&p).unwrap();
        prop_assert_eq!(partitions::from_frobenius(&f), p.clone());
        prop_assert_eq!(p.conjugate().conjugate(), p);
    }

    #[test]
    fn ranks_match_ferrers_graph(f in symbol()) {
        prop_assert_eq!(f.successive_ranks(), ranks_from_ferrers(&f));
    }

    #[test]
    fn blocks_alternate_and_cover(f in symbol()) {
        let b = f.parity_blocks();
        prop_assert_eq!(b.sizes().iter().sum::<usize>(), f.columns());
        prop_assert!(b.signs().windows(2).all(|w| w[0] != w[1]));
        let mut k = 0;
        for (&size, &s) in b.sizes().iter().zip(b.signs()) {
            for &r in &b.column_ranks()[k..k + size] {
                prop_assert_eq!(Sign::of_rank(r), s);
            }
            k += size;
        }
    }

    #[test]
    fn staircase_keeps_blocks(f in symbol()) {
        let mu = bijections::symbol_to_array(&f);
        prop_assert_eq!(mu.weight() + (f.columns() * f.columns()) as u64, f.size());
        prop_assert!(mu.top().windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(mu.bottom().windows(2).all(|w| w[0] >= w[1]));
        let ranks: Vec<i64> = mu.top().iter().zip(mu.bottom()).map(|(&x, &y)| x as i64 - y as i64).collect();
        prop_assert_eq!(partitions::ParityBlocks::from_ranks(&ranks), f.parity_blocks());
        prop_assert_eq!(bijections::array_to_symbol(&mu).unwrap(), f);
    }

    #[test]
    fn chain_round_trip(f in symbol()) {
        let mu = bijections::symbol_to_array(&f);
        let gamma = bijections::array_to_gamma(&mu).unwrap();
        prop_assert_eq!(gamma.weight(), mu.weight());
        let (pi, sign) = bijections::lambda_to_pi(&f).unwrap();
        prop_assert_eq!(gamma.weight() - pi.weight(), bijections::weight_drop(pi.beta(), sign));
        prop_assert_eq!(bijections::pi_to_lambda(&pi, sign).unwrap(), f);
    }

    #[test]
    fn gamma_strict_down_positive_columns(f in symbol()) {
        let mu = bijections::symbol_to_array(&f);
        let gamma = bijections::array_to_gamma(&mu).unwrap();
        let s = gamma.structure();
        let r = s.beta().partial_sums();
        for (l, &sign) in mu.blocks().signs().iter().enumerate() {
            if sign == Sign::Plus {
                for j in r[l] + 1..=r[l + 1] {
                    let top = gamma.value(s.label(l + 1, j).unwrap());
                    let bottom = gamma.value(s.label(l + 2, j).unwrap());
                    prop_assert!(top > bottom);
                }
            }
        }
    }

    #[test]
    fn labeling_is_natural(beta in composition(5)) {
        let s = SBetaStructure::new(beta.clone());
        prop_assert_eq!(s.size(), 2 * beta.total());
        prop_assert!(s.is_naturally_labeled());
        let mut labels: Vec<usize> = s.labels().iter().map(|t| t.2).collect();
        labels.sort();
        prop_assert_eq!(labels, (1..=s.size()).collect::<Vec<_>>());
    }

    #[test]
    fn extensions_give_fixed_return_paths(beta in composition(4)) {
        let s = SBetaStructure::new(beta.clone());
        let correction = 2 * beta.interior_sums().iter().sum::<usize>() as u64;
        for w in posets::linear_extensions(&s) {
            prop_assert!(posets::is_linear_extension(&s, w.word()));
            let d = posets::word_to_dyck(&w);
            prop_assert_eq!(lattice_paths::maj(&d) - correction, posets::maj_word(w.word()));
            let marks: Vec<usize> = beta.interior_sums().iter().map(|x| 2 * x).collect();
            prop_assert_eq!(d.marks(), marks.as_slice());
        }
    }

    #[test]
    fn small_poset_partitions_invert(beta in composition(3), seed in 0usize..1000) {
        let s = SBetaStructure::new(beta);
        let all = posets::list_poset_partitions(&s, 5);
        let p: &PosetPartition = &all[seed % all.len()];
        for sign in Sign::BOTH {
            let lambda = bijections::pi_to_lambda(p, sign).unwrap();
            prop_assert_eq!(bijections::lambda_to_pi(&lambda).unwrap(), (p.clone(), sign));
        }
    }

    #[test]
    fn path_text_round_trip(s in 1usize..6, extra in 0usize..3, pick in 0usize..10_000) {
        let t = s.saturating_sub(extra);
        let objs = lattice_paths::enumerate_marked_paths(s, t, 0).unwrap();
        let p = &objs[pick % objs.len()];
        let text = p.to_string();
        prop_assert_eq!(&text.parse::<MarkedBallotPath>().unwrap(), p);
        let json = serde_json::to_string(p).unwrap();
        prop_assert_eq!(&serde_json::from_str::<MarkedBallotPath>(&json).unwrap(), p);
        prop_assert!(lattice_paths::vmr(p) <= lattice_paths::maj(p));
    }

    #[test]
    fn series_ring_laws(a in series(12), b in series(12), c in series(12)) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn unit_inverse(u in unit_series(15)) {
        let inv = u.invert_unit().unwrap();
        prop_assert_eq!(u.mul(&inv), QSeries::one(15));
    }

    #[test]
    fn series_json_round_trip(a in series(8)) {
        let json = serde_json::to_string(&a).unwrap();
        let back: QSeries = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn qbinomial_at_one_is_binomial(n in 0usize..20, k in 0usize..20) {
        let k = k.min(n);
        let exact: u64 = (0..k as u64).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1));
        prop_assert_eq!(qseries::eval_at_one(&qseries::qbinomial_poly(n, k as i64)), BigInt::from(exact));
    }
}
