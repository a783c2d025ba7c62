use lensgrid::corpus::{lens_pairs, random_diagram, rng};
use lensgrid::cover::dualize;
use lensgrid::format::{emit_grid, emit_script, parse_grid, parse_script};
use lensgrid::legendrian::classical::{classical_invariants, invariants_of, projection, Routing};
use lensgrid::legendrian::moves::{
    apply_move, destabilization_sites, destabilize_at, legality, stabilize, GridMove, Legality,
    StabType,
};
use lensgrid::rational::qi;
use lensgrid::{Complex, CoverGrid, Generator, GridDiagram};
use proptest::prelude::*;

fn diagram(max_p: usize, max_n: usize) -> impl Strategy<Value = GridDiagram> {
    (any::<u64>(), 0..lens_pairs(max_p).len(), 1..=max_n).prop_map(move |(seed, pair, n)| {
        let (p, q) = lens_pairs(max_p)[pair];
        random_diagram(&mut rng(seed), p, q, n)
    })
}

fn three_generators(d: &GridDiagram, picks: (usize, usize, usize)) -> [Generator; 3] {
    let gens = d.generators();
    let at = |k: usize| gens[k % gens.len()].clone();
    [at(picks.0), at(picks.1), at(picks.2)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lgrid_round_trip(d in diagram(7, 4)) {
        let text = emit_grid(&d);
        prop_assert_eq!(parse_grid(&text).unwrap(), d);
        prop_assert_eq!(emit_grid(&parse_grid(&text).unwrap()), text);
    }

    #[test]
    fn script_round_trip(picks in prop::collection::vec((0..4usize, 0..8usize, 0..5usize), 0..6)) {
        let moves: Vec<GridMove> = picks
            .into_iter()
            .map(|(kind, t, i)| match kind {
                0 => GridMove::CommuteColumns(i),
                1 => GridMove::CommuteRows(i),
                2 => GridMove::Stabilize(StabType::ALL[t], i),
                _ => GridMove::Destabilize(i),
            })
            .collect();
        prop_assert_eq!(parse_script(&emit_script(&moves)).unwrap(), moves);
    }

    #[test]
    fn spinc_is_additive(d in diagram(5, 3), picks in any::<(usize, usize, usize)>()) {
        let [x, y, z] = three_generators(&d, picks);
        let sum = d.spinc_difference(&x, &y) + d.spinc_difference(&y, &z);
        prop_assert_eq!(sum % d.p, d.spinc_difference(&x, &z));
        prop_assert_eq!(d.spinc_difference(&x, &x), 0);
    }

    #[test]
    fn routing_does_not_change_classical_invariants(d in diagram(5, 4), bits in any::<u64>()) {
        let n = d.n;
        let routing = Routing {
            up: (0..n).map(|i| bits >> i & 1 == 1).collect(),
            left: (0..n).map(|i| bits >> (i + 32) & 1 == 1).collect(),
        };
        let a = invariants_of(&projection(&d, &routing), d.p);
        let b = classical_invariants(&d);
        prop_assert_eq!((a.tb, a.rot, a.sl), (b.tb, b.rot, b.sl));
    }

    #[test]
    fn dual_tb_sums_to_minus_index(d in diagram(7, 4)) {
        let e = dualize(&d);
        prop_assert_eq!(dualize(&e), d.clone());
        prop_assert_eq!(classical_invariants(&d).tb + classical_invariants(&e).tb, qi(-(d.n as i64)));
    }

    #[test]
    fn cover_is_deck_invariant(d in diagram(7, 4)) {
        let c = CoverGrid::of(&d);
        prop_assert!(c.is_deck_invariant());
        prop_assert!(c.is_grid());
        prop_assert_eq!(c.to_base().unwrap(), d);
    }

    #[test]
    fn stabilization_is_undone(d in diagram(5, 3), t in 0..8usize, row in 0..3usize) {
        let row = row % d.n;
        let big = stabilize(&d, StabType::ALL[t], row).unwrap();
        prop_assert_eq!(big.n, d.n + 1);
        let back = destabilization_sites(&big)
            .iter()
            .any(|s| destabilize_at(&big, s).as_ref() == Ok(&d));
        prop_assert!(back);
    }

    #[test]
    fn commutations_preserve_classical_invariants(d in diagram(5, 3), i in 0..3usize, rows in any::<bool>()) {
        let mv = if rows { GridMove::CommuteRows(i % d.n) } else { GridMove::CommuteColumns(i % d.n) };
        if let Ok(e) = apply_move(&d, &mv) {
            let (a, b) = (classical_invariants(&d), classical_invariants(&e));
            prop_assert_eq!((a.tb, a.rot, a.sl), (b.tb, b.rot, b.sl));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn legality_classes_preserve_their_invariants(
        d in diagram(5, 2),
        script in prop::collection::vec((0..3usize, 0..8usize, 0..4usize), 1..4),
    ) {
        let mut g = d.clone();
        let mut classes = vec![Legality::Legendrian, Legality::Transverse];
        for (kind, t, i) in script {
            let mv = match kind {
                0 => GridMove::CommuteColumns(i % g.n),
                1 => GridMove::CommuteRows(i % g.n),
                _ => GridMove::Stabilize(StabType::ALL[t], i % g.n),
            };
            let Ok(next) = apply_move(&g, &mv) else { continue };
            let legal = legality(&g, &mv).unwrap();
            classes.retain(|c| legal.contains(c));
            g = next;
        }
        let (a, b) = (classical_invariants(&d), classical_invariants(&g));
        if classes.contains(&Legality::Legendrian) {
            prop_assert_eq!((a.tb, a.rot), (b.tb, b.rot));
        }
        if classes.contains(&Legality::Transverse) {
            prop_assert_eq!(a.sl, b.sl);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn boundary_squares_to_zero(d in diagram(5, 3)) {
        let c = Complex::new(&d);
        for x in &c.gens {
            prop_assert!(c.boundary_minus(&c.boundary_of(x)).is_zero());
        }
    }
}
