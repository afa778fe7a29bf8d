use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rgdual_core::random::random_rotation;
use rgdual_core::*;

fn any_map(max_edges: usize) -> impl Strategy<Value = FlagMap> {
    (1..=max_edges, any::<u64>(), any::<u64>()).prop_map(|(k, t, seed)| {
        let twists = (t % (k as u64 + 1)) as usize;
        random_map(k, twists, seed).unwrap()
    })
}

fn any_rotation(max_edges: usize) -> impl Strategy<Value = RotationSystem> {
    (1..=max_edges, any::<u64>())
        .prop_map(|(k, seed)| random_rotation(k, &mut ChaCha8Rng::seed_from_u64(seed)))
}

fn any_permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (0..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|images| Permutation::from_images(&images).unwrap())
}

/// Conjugates every involution of `m` by a seeded random flag bijection.
fn relabel(m: &FlagMap, seed: u64) -> FlagMap {
    let n = m.flag_count();
    let mut images: Vec<usize> = (1..=n).collect();
    images.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let r = Permutation::from_images(&images).unwrap();
    let conj = |t: &Permutation| r.compose(t).unwrap().compose(&r.inverse()).unwrap();
    FlagMap::new(conj(m.tau(0)), conj(m.tau(1)), conj(m.tau(2)), None).unwrap()
}

fn subset(m: &FlagMap, bits: u64) -> EdgeSet {
    let k = m.edge_count();
    EdgeSet::from_mask(m, bits & ((1u64 << k) - 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn compose_with_inverse_is_identity(p in any_permutation(30)) {
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.inverse().compose(&p).unwrap().is_identity());
    }

    #[test]
    fn cycle_notation_round_trips(p in any_permutation(30)) {
        let text = p.format_cycles();
        prop_assert_eq!(Permutation::parse_cycles(&text, p.degree()).unwrap(), p);
    }

    #[test]
    fn orbits_of_one_generator_are_its_cycles(p in any_permutation(30)) {
        let mut cycles: Vec<Vec<usize>> = p.cycles().into_iter().map(|mut c| { c.sort_unstable(); c }).collect();
        cycles.sort();
        prop_assert_eq!(orbits(&[&p], p.degree()).unwrap(), cycles);
    }

    #[test]
    fn euler_relation_holds(m in any_map(8)) {
        let mt = m.metrics();
        prop_assert_eq!(m.flag_count(), 4 * mt.e);
        prop_assert_eq!(mt.v as i64 - mt.e as i64 + mt.f as i64, 2 * mt.c as i64 - mt.euler_genus as i64);
        prop_assert_eq!(mt.component_signature.len(), mt.c);
        if mt.orientable {
            prop_assert_eq!(mt.euler_genus % 2, 0);
        }
        prop_assert_eq!(mt.orientable, m.is_orientable());
    }

    #[test]
    fn total_dual_swaps_vertices_and_faces(m in any_map(8)) {
        let (a, b) = (m.metrics(), m.total_dual().metrics());
        prop_assert_eq!((a.e, a.c, a.euler_genus, a.orientable), (b.e, b.c, b.euler_genus, b.orientable));
        prop_assert_eq!((a.v, a.f), (b.f, b.v));
        prop_assert_eq!(m.total_dual().total_dual(), m);
    }

    #[test]
    fn isomorphism_is_an_equivalence(m in any_map(6), s1 in any::<u64>(), s2 in any::<u64>()) {
        let a = relabel(&m, s1);
        let b = relabel(&m, s2);
        prop_assert!(m.is_isomorphic(&m));
        prop_assert!(m.is_isomorphic(&a) && a.is_isomorphic(&m));
        prop_assert!(a.is_isomorphic(&b));
    }

    #[test]
    fn isomorphism_witness_conjugates(m in any_map(6), seed in any::<u64>()) {
        let other = relabel(&m, seed);
        let w = m.isomorphism(&other).unwrap();
        for i in 0..3 {
            for x in 1..=m.flag_count() {
                prop_assert_eq!(w[m.tau(i).apply(x) - 1], other.tau(i).apply(w[x - 1]));
            }
        }
    }

    #[test]
    fn partial_dual_of_everything_is_total_dual(m in any_map(6)) {
        prop_assert!(partial_dual(&m, &EdgeSet::all(&m)).unwrap().is_isomorphic(&m.total_dual()));
    }

    #[test]
    fn single_edge_dual_is_an_involution(m in any_map(8), pick in any::<usize>()) {
        let label = m.edges()[pick % m.edge_count()].label.clone();
        let d = partial_dual_edge(&m, &label).unwrap();
        prop_assert_eq!(partial_dual_edge(&d, &label).unwrap(), m.clone());
        prop_assert_eq!(d.edges(), m.edges());
    }

    #[test]
    fn duals_compose_by_symmetric_difference(m in any_map(7), a in any::<u64>(), b in any::<u64>()) {
        let (a, b) = (subset(&m, a), subset(&m, b));
        let lhs = partial_dual(&partial_dual(&m, &a).unwrap(), &b).unwrap();
        prop_assert_eq!(lhs, partial_dual(&m, &a.symmetric_difference(&b)).unwrap());
    }

    #[test]
    fn partial_dual_invariants(m in any_map(7), a in any::<u64>()) {
        let a = subset(&m, a);
        let d = partial_dual(&m, &a).unwrap();
        let (x, y) = (m.metrics(), d.metrics());
        prop_assert_eq!((x.e, x.c, x.orientable), (y.e, y.c, y.orientable));
        let c = partial_dual(&m, &a.complement(&m)).unwrap().metrics();
        prop_assert_eq!(y.component_signature, c.component_signature);
    }

    #[test]
    fn spliced_tau1_is_fpf_involution(m in any_map(8), a in any::<u64>()) {
        let g = induced_subgraph(&m, &subset(&m, a)).unwrap();
        prop_assert!(g.submap.tau(1).is_fpf_involution() || g.submap.flag_count() == 0);
        prop_assert_eq!(g.submap.flag_count(), 4 * g.edges.len());
    }

    #[test]
    fn induced_on_all_edges_is_the_map(m in any_map(8)) {
        prop_assert_eq!(induced_subgraph(&m, &EdgeSet::all(&m)).unwrap().submap, m);
    }

    #[test]
    fn genus_change_matches_direct_dual(m in any_map(6), a in any::<u64>()) {
        let a = subset(&m, a);
        let direct = partial_dual(&m, &a).unwrap().metrics().euler_genus as i64
            - m.metrics().euler_genus as i64;
        prop_assert_eq!(genus_change(&m, &a).unwrap(), direct);
    }

    #[test]
    fn rotation_dual_properties(rs in any_rotation(8), pick in any::<usize>()) {
        let a = 1 + pick % rs.half_edges();
        let b = rs.sigma_e().apply(a);
        let d = rs.partial_dual(a, b).unwrap();
        let (x, y) = (rs.metrics(), d.metrics());
        prop_assert_eq!((x.e, x.c), (y.e, y.c));
        prop_assert_eq!(d.partial_dual(a, b).unwrap(), rs.clone());
        let chi = y.v as i64 - y.e as i64 + y.f as i64;
        prop_assert_eq!((2 * y.c as i64 - chi) % 2, 0);
        prop_assert!(y.euler_genus % 2 == 0);
    }

    #[test]
    fn rotation_flag_round_trip(rs in any_rotation(8)) {
        let m = rs.to_flag_map();
        prop_assert!(m.is_orientable());
        prop_assert_eq!(m.metrics(), rs.metrics());
        prop_assert_eq!(RotationSystem::from_flag_map(&m).unwrap(), rs);
    }

    #[test]
    fn from_flag_map_preserves_metrics(rs in any_rotation(6), seed in any::<u64>()) {
        // A relabelled map need not come back to the same rotation system.
        let m = relabel(&rs.to_flag_map(), seed);
        let back = RotationSystem::from_flag_map(&m).unwrap();
        prop_assert_eq!(back.metrics(), m.metrics());
        prop_assert!(back.to_flag_map().is_isomorphic(&m));
    }

    #[test]
    fn polynomial_invariants(m in any_map(5), b in any::<u64>()) {
        let opts = PolynomialOptions { verify: true, ..Default::default() };
        let p = pd_genus_polynomial(&m, &opts).unwrap();
        prop_assert_eq!(p.total(), 1u64 << m.edge_count());
        prop_assert!(p.coefficients().values().all(|c| c % 2 == 0));
        let other = partial_dual(&m, &subset(&m, b)).unwrap();
        prop_assert_eq!(pd_genus_polynomial(&other, &opts).unwrap(), p);
    }

    #[test]
    fn emitted_files_reparse(m in any_map(8), rs in any_rotation(8)) {
        prop_assert_eq!(parse_flagmap(&write_flagmap(&m)).unwrap(), m);
        prop_assert_eq!(parse_rotation(&write_rotation(&rs)).unwrap(), rs);
    }
}

#[test]
fn random_maps_always_validate() {
    for seed in 0..1000u64 {
        let k = 1 + (seed % 8) as usize;
        let t = (seed / 8 % (k as u64 + 1)) as usize;
        let m = random_map(k, t, seed).unwrap();
        // Re-validate from the raw involutions.
        let [t0, t1, t2] = m.taus().clone();
        assert_eq!(FlagMap::new(t0, t1, t2, None).unwrap(), m);
        if t == 0 {
            assert!(m.is_orientable());
        }
    }
}

#[test]
fn parallel_enumeration_matches_sequential() {
    let m = random_map(10, 3, 99).unwrap();
    let seq = pd_genus_polynomial(&m, &PolynomialOptions::default()).unwrap();
    let par = pd_genus_polynomial(
        &m,
        &PolynomialOptions {
            parallel: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(seq, par);
    assert_eq!(seq.total(), 1024);
}
