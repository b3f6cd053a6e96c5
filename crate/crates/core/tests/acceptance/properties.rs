//! Seeded property suites over the catalog groups.

use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};
use unitexp::algebra::{brauer_square, AlgebraElement, GroupAlgebra};
use unitexp::group::{all_subgroups, Elem, Group};

use crate::oracles;

pub struct Suite {
    pub name: &'static str,
    pub cases: u64,
    pub failure: Option<String>,
}

fn runner(cases: u32, seed: u64, salt: u64) -> TestRunner {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&salt.to_le_bytes());
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &key))
}

fn element(alg: &Arc<GroupAlgebra>, words: &[u64]) -> AlgebraElement {
    let n = alg.order();
    let mut bits: Vec<u64> = words[..n.div_ceil(64)].to_vec();
    if !n.is_multiple_of(64) {
        *bits.last_mut().unwrap() &= (1u64 << (n % 64)) - 1;
    }
    alg.from_bits(bits).unwrap()
}

fn with_augmentation(mut x: AlgebraElement, aug: bool) -> AlgebraElement {
    if x.augmentation() != aug {
        x.flip(Elem::IDENTITY);
    }
    x
}

fn report<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Option<String> {
    r.err().map(|e| format!("{e}"))
}

/// Runs every suite on `g` with `cases` cases each.
pub fn run_all(g: &Arc<Group>, cases: u32, seed: u64) -> Vec<Suite> {
    let alg = GroupAlgebra::new(Arc::clone(g));
    let n = g.order();
    let words = prop::collection::vec(any::<u64>(), n.div_ceil(64));
    let mut out = Vec::new();
    let mut suite = |name: &'static str, failure: Option<String>| {
        out.push(Suite {
            name,
            cases: cases as u64,
            failure,
        })
    };

    let r = runner(cases, seed, 1).run(&words, |w| {
        let x = element(&alg, &w);
        let sq = x.square();
        prop_assert_eq!(&sq, &(&x * &x));
        prop_assert_eq!(
            oracles::coeffs(&sq),
            oracles::mul(g, &oracles::coeffs(&x), &oracles::coeffs(&x))
        );
        Ok(())
    });
    suite("square_is_self_product", report(r));

    let central: Vec<Vec<Elem>> = if n <= 64 {
        all_subgroups(g)
            .unwrap()
            .iter()
            .filter(|s| s.is_central())
            .map(|s| s.members().to_vec())
            .collect()
    } else {
        vec![g.center().members().to_vec()]
    };
    let r = runner(cases, seed, 2).run(&(words.clone(), 0..central.len()), |(w, k)| {
        let x = element(&alg, &w);
        let sub = g.subgroup_generated(&central[k]);
        prop_assert_eq!(brauer_square(&x, &sub).unwrap(), x.square());
        Ok(())
    });
    suite("brauer_square_is_square", report(r));

    let r = runner(cases, seed, 3).run(&words, |w| {
        let z = with_augmentation(element(&alg, &w), false);
        let one = alg.one();
        prop_assert_eq!((&one + &z).pow(4), &one + &z.pow(4));
        Ok(())
    });
    suite("freshman_fourth_power", report(r));

    let r = runner(cases, seed, 4).run(&(0..n, 0..n, 0..n), |(a, b, c)| {
        let (a, b, c) = (Elem::new(a), Elem::new(b), Elem::new(c));
        let comm = |x, y| g.commutator(x, y);
        prop_assert_eq!(comm(a, b), oracles::commutator(g, a, b));
        // (a,bc) = (a,b)(a,c)(a,b,c) and (ab,c) = (a,c)(a,c,b)(b,c), left-normed
        let lhs = comm(a, g.mul(b, c));
        let rhs = g.mul(g.mul(comm(a, b), comm(a, c)), comm(comm(a, b), c));
        prop_assert_eq!(lhs, rhs);
        let lhs = comm(g.mul(a, b), c);
        let rhs = g.mul(g.mul(comm(a, c), comm(comm(a, c), b)), comm(b, c));
        prop_assert_eq!(lhs, rhs);
        Ok(())
    });
    suite("commutator_expansions", report(r));

    let log = n.trailing_zeros();
    let r = runner(cases, seed, 5).run(&words, |w| {
        let x = with_augmentation(element(&alg, &w), true);
        let mut p = x.clone();
        let mut steps = 0;
        while !p.is_one() && steps < log {
            p = p.square();
            steps += 1;
        }
        prop_assert!(p.is_one(), "{} does not reach 1 in {} squarings", x, log);
        Ok(())
    });
    suite("units_reach_one", report(r));

    out
}
