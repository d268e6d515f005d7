use cyclic_mackey::abelian::FinGenAb;
use cyclic_mackey::bredon::oracle_table;
use cyclic_mackey::cohomology::mackey_table;
use cyclic_mackey::picard::{rep_to_pic, PicCoord, VirtualRep};
use proptest::prelude::*;

fn actual_rep(p: u64, n: u32) -> impl Strategy<Value = VirtualRep> {
    let top = p.pow(n);
    (0i64..=1, proptest::collection::vec((1..top, 1i64..=1), 0..=2)).prop_map(|(t, parts)| {
        parts.into_iter().fold(VirtualRep::triv(t), |v, (j, m)| v.sum(&VirtualRep::rho(j, m)))
    })
}

fn coords(p: u64, n: u32) -> impl Strategy<Value = PicCoord> {
    let n_us = n as usize;
    (proptest::collection::vec(-3i64..=3, n_us + 1), proptest::collection::vec(1u64..p.pow(n), n_us)).prop_filter_map(
        "units only",
        move |(beta, raw)| {
            let gamma: Vec<u64> = (0..n_us).map(|s| raw[s] % p.pow(n - s as u32)).collect();
            PicCoord::new(p, n, beta, gamma).ok()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn oracle_matches_engine_for_c9(v in actual_rep(3, 2)) {
        let w = (0, 2 * v.dim() + 2);
        let oracle = oracle_table(3, 2, &v, w).unwrap();
        let engine = mackey_table(&rep_to_pic(3, 2, &v).unwrap().neg(), w).unwrap();
        for a in 0..=2 {
            for (i, g) in &oracle.values[a] {
                prop_assert_eq!(g, &engine.values[a][i]);
            }
        }
        for a in 0..2 {
            for (i, h) in &oracle.inc[a] {
                prop_assert!(h.equivalent_up_to_basis(&engine.inc[a][i]));
            }
        }
    }

    #[test]
    fn oracle_matches_engine_for_c5(v in actual_rep(5, 1)) {
        let w = (0, 2 * v.dim() + 2);
        let oracle = oracle_table(5, 1, &v, w).unwrap();
        let engine = mackey_table(&rep_to_pic(5, 1, &v).unwrap().neg(), w).unwrap();
        for a in 0..=1 {
            for (i, g) in &oracle.values[a] {
                prop_assert_eq!(g, &engine.values[a][i]);
            }
        }
    }

    #[test]
    fn underlying_level_is_a_shifted_integer(c in coords(3, 2)) {
        let t = mackey_table(&c, (-12, 12)).unwrap();
        let nonzero: Vec<(&i64, &FinGenAb)> = t.values[0].iter().filter(|(_, g)| !g.is_zero()).collect();
        prop_assert_eq!(nonzero.len(), usize::from(c.beta[0].abs() <= 12));
        if let Some((i, g)) = nonzero.first() {
            prop_assert_eq!(*g, &FinGenAb::free(1));
            prop_assert_eq!(**i, -c.beta[0]);
        }
    }

    #[test]
    fn adding_and_removing_a_line_is_the_identity(c in coords(5, 1), j in 1u64..5) {
        let line = rep_to_pic(5, 1, &VirtualRep::rho(j, 1)).unwrap();
        let back = c.add(&line).unwrap().add(&line.neg()).unwrap();
        prop_assert!(back.same_element(&c));
        let (t, u) = (mackey_table(&c, (-6, 6)).unwrap(), mackey_table(&back, (-6, 6)).unwrap());
        prop_assert!(t.equivalent(&u));
    }
}
