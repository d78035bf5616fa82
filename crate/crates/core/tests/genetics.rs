use proptest::prelude::*;
use sciworld_core::engine::genetics::{phenotype, punnett_cross, Allele, GenePair, Genotype, TraitDef};
use sciworld_core::rng::stream;

fn trait_def() -> TraitDef {
    TraitDef {
        name: "flower color".into(),
        symbol: 'b',
        dominant: "purple".into(),
        recessive: "white".into(),
    }
}

fn g(a: Allele, b: Allele) -> Genotype {
    Genotype(vec![GenePair {
        trait_name: "flower color".into(),
        alleles: [a, b],
    }])
}

/// Survival function of chi-square with two degrees of freedom.
fn p_value_df2(x: f64) -> f64 {
    (-x / 2.0).exp()
}

#[test]
fn heterozygous_cross_fits_one_two_one() {
    use Allele::{Dominant as D, Recessive as R};
    let mut rng = stream(2024, "chi-square");
    let n = 10_000;
    let mut counts = [0f64; 3];
    for _ in 0..n {
        let c = punnett_cross(&g(D, R), &g(D, R), &mut rng).unwrap();
        match c.notation(&trait_def()).unwrap().as_str() {
            "BB" => counts[0] += 1.0,
            "Bb" => counts[1] += 1.0,
            "bb" => counts[2] += 1.0,
            other => panic!("{other}"),
        }
    }
    let expected = [0.25, 0.5, 0.25].map(|p| p * n as f64);
    let chi: f64 = counts.iter().zip(expected).map(|(o, e)| (o - e).powi(2) / e).sum();
    assert!(p_value_df2(chi) > 0.01, "chi-square {chi} counts {counts:?}");
}

#[test]
fn survival_function_matches_table() {
    // 0.99 quantile of chi-square(2) is 9.2103
    assert!((p_value_df2(9.2103) - 0.01).abs() < 1e-5);
}

fn allele() -> impl Strategy<Value = Allele> {
    prop_oneof![Just(Allele::Dominant), Just(Allele::Recessive)]
}

proptest! {
    #[test]
    fn offspring_alleles_come_from_parents(a in [allele(), allele()], b in [allele(), allele()], seed in any::<u64>()) {
        let mut rng = stream(seed, "cross");
        let c = punnett_cross(&g(a[0], a[1]), &g(b[0], b[1]), &mut rng).unwrap();
        let [x, y] = c.0[0].alleles;
        prop_assert!(a.contains(&x));
        prop_assert!(b.contains(&y));
        let td = trait_def();
        let shown = phenotype(&c, &td).unwrap();
        prop_assert_eq!(shown == "purple", x == Allele::Dominant || y == Allele::Dominant);
    }
}
