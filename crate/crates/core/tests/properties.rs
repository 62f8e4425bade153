use hn_core::degree::{ExactDegree, Slope};
use hn_core::engine::polygon::{measure_to_polygon, polygon_to_measure};
use hn_core::engine::{chain_from_filtration, hn_filtration, hn_run, hn_sequence, verify_run, HnCategory};
use hn_core::filtration::{pullback, pushforward_strong, pushforward_weak};
use hn_core::fp::random::{random_filtration, random_iso, random_multifilt};
use hn_core::fp::{FpHost, FpMap, FpSpace, MultiFiltSpace};
use hn_core::lattice::random::random_lattice;
use hn_core::lattice::{destabilizer_box, destabilizer_enum, EnumConfig, EuclideanLattice, LatticeHost};
use hn_core::rational::{decimal, parse_q, Q};
use hn_core::suites::oracle::{closure_vs_bruteforce, single_filtration_identity, OracleOutcome};
use hn_core::suites::trial_rng;
use num::{BigInt, Signed};
use proptest::prelude::*;

fn fp_object(seed: u64, p: u64, dim: usize, n: usize) -> MultiFiltSpace {
    random_multifilt(&mut trial_rng(seed), p, dim, n)
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rationals_roundtrip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let x = Q::new(BigInt::from(n), BigInt::from(d));
        prop_assert_eq!(parse_q(&x.to_string()).unwrap(), x.clone());
        let dec = decimal(&x, 6);
        let back = parse_q(&dec).unwrap();
        prop_assert!((back - x).abs() * Q::from_integer(2_000_000.into()) <= Q::from_integer(1.into()));
    }

    #[test]
    fn hn_theorem_holds_on_fp(seed in any::<u64>(), p in prime(), dim in 0usize..=4, n in 1usize..=3) {
        let host = FpHost::default();
        let x = fp_object(seed, p, dim, n);
        let run = hn_run(&host, &x).unwrap();
        prop_assert_eq!(verify_run(&host, &x, &run).unwrap(), Vec::<String>::new());
        let dec = &run.decomposition;
        prop_assert_eq!(dec.chain.last().map(|s| s.dim()).unwrap_or(0), dim);
        let (chain, slopes) = chain_from_filtration(&hn_filtration(&host, &x).unwrap());
        prop_assert_eq!(&chain, &dec.chain);
        prop_assert_eq!(&slopes, &dec.slopes);
    }

    #[test]
    fn closure_matches_bruteforce(seed in any::<u64>(), p in prop::sample::select(vec![2u64, 3]), dim in 0usize..=3, n in 1usize..=3) {
        let x = fp_object(seed, p, dim, n);
        prop_assert_eq!(closure_vs_bruteforce(&x, 1_000_000, 4096), OracleOutcome::Match);
    }

    #[test]
    fn single_filtration_is_its_own_hn(seed in any::<u64>(), p in prime(), dim in 0usize..=5) {
        let mut rng = trial_rng(seed);
        let sp = FpSpace::new(p, dim).unwrap();
        let x = MultiFiltSpace::single(sp, random_filtration(&mut rng, &sp)).unwrap();
        prop_assert_eq!(single_filtration_identity(&FpHost::default(), &x).unwrap(), Ok(()));
    }

    #[test]
    fn polygon_and_measure_determine_each_other(seed in any::<u64>(), p in prime(), dim in 1usize..=4, n in 1usize..=3) {
        let host = FpHost::default();
        let x = fp_object(seed, p, dim, n);
        let dec = hn_sequence(&host, &x).unwrap();
        let poly = dec.polygon();
        let nu = dec.measure();
        prop_assert!(poly.is_concave().unwrap());
        prop_assert_eq!(nu.total_mass(), Q::from_integer(1.into()));
        prop_assert_eq!(nu.first_moment().unwrap(), Slope::new(host.degree(&x), dim).unwrap());
        prop_assert_eq!(measure_to_polygon(&nu).unwrap().vertices.len(), poly.vertices.len());
        let back = polygon_to_measure(&measure_to_polygon(&nu).unwrap()).unwrap();
        prop_assert_eq!(back.atoms.len(), nu.atoms.len());
        for (a, b) in back.atoms.iter().zip(&nu.atoms) {
            prop_assert_eq!(&a.location, &b.location);
            prop_assert_eq!(&a.mass, &b.mass);
        }
    }

    #[test]
    fn scaling_weights_scales_slopes(seed in any::<u64>(), p in prime(), dim in 1usize..=4, c in 1i64..5) {
        let host = FpHost::default();
        let x = fp_object(seed, p, dim, 2);
        let c = Q::from_integer(c.into());
        let a = hn_sequence(&host, &x).unwrap();
        let b = hn_sequence(&host, &x.scaled(&c)).unwrap();
        prop_assert_eq!(&a.chain, &b.chain);
        for (s, t) in a.slopes.iter().zip(&b.slopes) {
            prop_assert_eq!(s.as_rational().unwrap() * &c, t.as_rational().unwrap());
        }
    }

    #[test]
    fn filtration_functors(seed in any::<u64>(), p in prime(), dim in 0usize..=4) {
        let mut rng = trial_rng(seed);
        let sp = FpSpace::new(p, dim).unwrap();
        let f = random_filtration(&mut rng, &sp);
        let id = FpMap::identity(&sp);
        prop_assert_eq!(pullback(&id, &f).canonicalize(), f.canonicalize());
        prop_assert_eq!(pushforward_strong(&id, &f).canonicalize(), f.canonicalize());
        let g = random_iso(&mut rng, &sp);
        let back = pullback(&g, &pushforward_weak(&g, &f));
        prop_assert_eq!(back.canonicalize(), f.canonicalize());
        prop_assert_eq!(f.canonicalize().canonicalize(), f.canonicalize());
    }

    #[test]
    fn lattice_hn_theorem(seed in any::<u64>(), rank in 1usize..=3) {
        let host = LatticeHost::default();
        let l = random_lattice(&mut trial_rng(seed), rank);
        let run = hn_run(&host, &l).unwrap();
        prop_assert_eq!(verify_run(&host, &l, &run).unwrap(), Vec::<String>::new());
        let dec = &run.decomposition;
        let (chain, slopes) = chain_from_filtration(&hn_filtration(&host, &l).unwrap());
        prop_assert_eq!(&chain, &dec.chain);
        prop_assert_eq!(&slopes, &dec.slopes);
        for s in &dec.slopes {
            prop_assert!(matches!(s.degree, ExactDegree::LogRational(_)));
        }
    }

    #[test]
    fn lattice_enumeration_matches_box(seed in any::<u64>()) {
        let l = random_lattice(&mut trial_rng(seed), 2);
        let res = destabilizer_enum(&l, &EnumConfig::default()).unwrap();
        let b: i64 = res.proof_bound.clone().try_into().unwrap();
        prop_assert_eq!(destabilizer_box(&l, b.max(1)).unwrap(), res.sub);
    }

    #[test]
    fn diagonal_lattices_sort_their_entries(a in 1i64..20, b in 1i64..20, c in 1i64..20) {
        let host = LatticeHost::default();
        let entries: Vec<Q> = [a, b, c].iter().map(|&x| Q::new(BigInt::from(x), BigInt::from(4))).collect();
        let l = EuclideanLattice::diagonal(&entries).unwrap();
        let dec = hn_sequence(&host, &l).unwrap();
        let total: usize = dec.slopes.len();
        let mut distinct = entries.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(total, distinct.len());
        for (s, e) in dec.slopes.iter().zip(&distinct) {
            prop_assert_eq!(s, &Slope { degree: ExactDegree::LogRational(e.clone()), rank: 1 });
        }
    }
}
