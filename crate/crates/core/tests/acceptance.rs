//! Exit criteria for the library. Run with
//! `cargo test -p rgdual-core --test acceptance -- --nocapture`
//! to see one PASS/FAIL line per criterion.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use rgdual_core::random::random_rotation;
use rgdual_core::*;

const TRIANGLE_MAP: &str = include_str!("data/triangle.map");
const TRIANGLE_ROT: &str = include_str!("data/triangle.rot");
const TRIANGLE_DOT: &str = include_str!("data/triangle.dot");

const PROPERTY_POOL: u64 = 200;
const PROPERTY_MAX_EDGES: u64 = 6;
const PROPERTY_TIME_LIMIT: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn triangle() -> FlagMap {
    parse_flagmap(TRIANGLE_MAP).unwrap()
}

fn counts(m: &MapMetrics) -> (usize, usize, usize, usize, usize) {
    (m.v, m.e, m.f, m.c, m.euler_genus)
}

/// Seeded pool with `1..=max_edges` edges and a mix of twist counts.
fn pool(size: u64, max_edges: u64, salt: u64) -> Vec<FlagMap> {
    (0..size)
        .map(|i| {
            let k = 1 + i % max_edges;
            let twists = (i / max_edges) % (k + 1);
            random_map(
                k as usize,
                twists as usize,
                salt ^ i.wrapping_mul(0x9e37_79b9),
            )
            .unwrap()
        })
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rotation_formula_dual() -> Outcome {
    let rs = parse_rotation(TRIANGLE_ROT).map_err(|e| e.to_string())?;
    let got = rs
        .partial_dual(3, 4)
        .map_err(|e| e.to_string())?
        .sigma_v()
        .format_cycles();
    ensure(got == "(1 6)(2 4 5 3)", || format!("sigma_v' = {got}"))?;
    Ok(got)
}

fn flag_formula_dual() -> Outcome {
    let m = triangle();
    let label = m.edge_of_flag(5).unwrap().label.clone();
    let d = partial_dual_edge(&m, &label).map_err(|e| e.to_string())?;
    let t0 = d.tau(0).format_cycles();
    let t2 = d.tau(2).format_cycles();
    ensure(t0 == "(1 2)(3 4)(5 6)(7 8)(9 12)(10 11)", || {
        format!("tau0' = {t0}")
    })?;
    ensure(t2 == "(1 4)(2 3)(5 8)(6 7)(9 10)(11 12)", || {
        format!("tau2' = {t2}")
    })?;
    ensure(d.tau(1) == m.tau(1), || "tau1 changed".into())?;
    Ok(format!("tau0'={t0} tau2'={t2}"))
}

fn metrics_of_triangle_and_torus() -> Outcome {
    let m = triangle();
    let base = m.metrics();
    ensure(counts(&base) == (3, 3, 2, 1, 0) && base.orientable, || {
        format!("triangle: {base}")
    })?;
    let a = EdgeSet::resolve(&m, ["e3"]).unwrap();
    let torus = partial_dual(&m, &a).unwrap().metrics();
    ensure(
        counts(&torus) == (2, 3, 1, 1, 2) && torus.orientable,
        || format!("dual: {torus}"),
    )?;
    Ok(format!("G: {base}; G^{{e3}}: {torus}"))
}

fn genus_change_formula() -> Outcome {
    let m = triangle();
    let a = EdgeSet::resolve(&m, ["e3"]).unwrap();
    let g = induced_subgraph(&m, &a).unwrap().submap.metrics();
    let d = dual_induced(&m, &a).unwrap().submap.metrics();
    let change = genus_change(&m, &a).unwrap();
    let got = (g.v, d.v, g.f, d.f, change);
    ensure(got == (2, 2, 1, 1, 2), || {
        format!("(v, v*, f, f*, change) = {got:?}")
    })?;
    Ok(format!("{}+{}-{}-{}={}", g.v, d.v, g.f, d.f, change))
}

fn duality_property_suite() -> Outcome {
    let start = Instant::now();
    let maps = pool(PROPERTY_POOL, PROPERTY_MAX_EDGES, 0xa11ce);
    let non_orientable = maps.iter().filter(|m| !m.is_orientable()).count();
    ensure(non_orientable > 0 && non_orientable < maps.len(), || {
        format!("pool is not mixed: {non_orientable} non-orientable")
    })?;
    let mut total = DualityReport::default();
    for m in &maps {
        total.merge(check_duality_properties(m, &SubsetBudget::All));
    }
    let elapsed = start.elapsed();
    ensure(total.passed(), || {
        format!("{} failures\n{total}", total.failures.len())
    })?;
    ensure(elapsed < PROPERTY_TIME_LIMIT, || {
        format!("took {elapsed:?}")
    })?;
    let checks: usize = total.checked.iter().sum();
    Ok(format!(
        "{} maps ({non_orientable} non-orientable), {checks} checks, 0 failures, {elapsed:.2?}",
        maps.len()
    ))
}

fn dual_of_everything() -> Outcome {
    let mut maps = vec![triangle()];
    maps.extend(pool(100, 5, 0xd0a1));
    for (i, m) in maps.iter().enumerate() {
        let all = partial_dual(m, &EdgeSet::all(m)).unwrap();
        ensure(all.is_isomorphic(&m.total_dual()), || format!("map #{i}"))?;
    }
    Ok(format!("{} maps", maps.len()))
}

fn genus_change_oracle() -> Outcome {
    let maps = pool(50, 5, 0x6e05);
    let mut subsets = 0;
    for (i, m) in maps.iter().enumerate() {
        let base = m.metrics().euler_genus as i64;
        for mask in 0..1u64 << m.edge_count() {
            let a = EdgeSet::from_mask(m, mask);
            let direct = partial_dual(m, &a).unwrap().metrics().euler_genus as i64 - base;
            let formula = genus_change(m, &a).unwrap();
            ensure(formula == direct, || {
                format!("map #{i}, A={a}: formula {formula}, direct {direct}")
            })?;
            subsets += 1;
        }
    }
    Ok(format!("{} maps, {subsets} subsets", maps.len()))
}

/// Independent enumeration: dualize every subset and read off the exponent.
fn polynomial_by_enumeration(m: &FlagMap, mode: GenusMode) -> BTreeMap<usize, u64> {
    let mut out = BTreeMap::new();
    for mask in 0..1u64 << m.edge_count() {
        let gamma = partial_dual(m, &EdgeSet::from_mask(m, mask))
            .unwrap()
            .metrics()
            .euler_genus;
        let exponent = match mode {
            GenusMode::Genus => gamma / 2,
            GenusMode::EulerGenus => gamma,
        };
        *out.entry(exponent).or_insert(0) += 1;
    }
    out
}

fn polynomial_checks() -> Outcome {
    let opts = PolynomialOptions::default();
    let t = triangle();
    let tp = pd_genus_polynomial(&t, &opts).map_err(|e| e.to_string())?;
    ensure(tp.to_string() == "2 + 6*z", || format!("triangle: {tp}"))?;
    ensure(
        *tp.coefficients() == polynomial_by_enumeration(&t, GenusMode::Genus),
        || "triangle disagrees with enumeration".into(),
    )?;

    let mut maps = vec![
        t,
        parse_flagmap(include_str!("data/twisted_loop.map")).unwrap(),
    ];
    maps.extend(pool(60, 4, 0x901));
    let mut duals = 0;
    for (i, m) in maps.iter().enumerate() {
        let p = pd_genus_polynomial(m, &opts).map_err(|e| format!("map #{i}: {e}"))?;
        ensure(
            *p.coefficients() == polynomial_by_enumeration(m, p.mode),
            || format!("map #{i}: {p} disagrees with enumeration"),
        )?;
        ensure(p.total() == 1 << m.edge_count(), || {
            format!("map #{i}: {p} at z=1")
        })?;
        ensure(p.coefficients().values().all(|c| c % 2 == 0), || {
            format!("map #{i}: odd count in {p}")
        })?;
        for mask in 0..1u64 << m.edge_count() {
            let other = partial_dual(m, &EdgeSet::from_mask(m, mask)).unwrap();
            let q = pd_genus_polynomial(&other, &opts).unwrap();
            ensure(q == p, || format!("map #{i}, B mask {mask:b}: {q} vs {p}"))?;
            duals += 1;
        }
    }
    Ok(format!(
        "triangle {tp}; {} maps, {duals} dual polynomials",
        maps.len()
    ))
}

fn cross_representation() -> Outcome {
    let mut edges = 0;
    for seed in 0..100u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(0xc055 + seed);
        let rs = random_rotation(1 + (seed % 6) as usize, &mut rng);
        let m = rs.to_flag_map();
        for a in 1..=rs.half_edges() {
            let b = rs.sigma_e().apply(a);
            if b < a {
                continue;
            }
            let via_rotation = rs.partial_dual(a, b).unwrap().to_flag_map();
            let label = m.edge_of_flag(2 * a - 1).unwrap().label.clone();
            let via_flags = partial_dual_edge(&m, &label).unwrap();
            ensure(via_rotation.is_isomorphic(&via_flags), || {
                format!("seed {seed}, edge ({a} {b})")
            })?;
            edges += 1;
        }
    }
    Ok(format!("100 maps, {edges} edges"))
}

fn round_trips() -> Outcome {
    let mut files = 0;
    let mut maps = vec![triangle()];
    maps.extend(pool(100, 8, 0x7e57));
    for (i, m) in maps.iter().enumerate() {
        for out in [
            m.clone(),
            m.total_dual(),
            partial_dual(m, &EdgeSet::from_mask(m, 1)).unwrap(),
        ] {
            let text = write_flagmap(&out);
            ensure(parse_flagmap(&text).as_ref() == Ok(&out), || {
                format!("flagmap #{i}:\n{text}")
            })?;
            ensure(
                write_flagmap(&parse_flagmap(&text).unwrap()) == text,
                || format!("rewrite #{i}"),
            )?;
            files += 1;
            if let Ok(rs) = RotationSystem::from_flag_map(&out) {
                let text = write_rotation(&rs);
                ensure(parse_rotation(&text).as_ref() == Ok(&rs), || {
                    format!("rotation #{i}:\n{text}")
                })?;
                files += 1;
            }
        }
    }
    let rs = parse_rotation(TRIANGLE_ROT).unwrap();
    ensure(write_rotation(&rs) == TRIANGLE_ROT, || {
        "rotation fixture not canonical".into()
    })?;
    let dot = triangle().gem_dot();
    ensure(dot == TRIANGLE_DOT, || {
        format!("gem drifted from golden file:\n{dot}")
    })?;
    ensure(dot == triangle().gem_dot(), || "gem output unstable".into())?;
    Ok(format!("{files} files re-parsed; gem matches golden file"))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("rotation-formula dual", rotation_formula_dual),
        ("flag-formula dual", flag_formula_dual),
        (
            "metrics of triangle and torus",
            metrics_of_triangle_and_torus,
        ),
        ("genus-change formula", genus_change_formula),
        ("partial-duality property suite", duality_property_suite),
        ("dual of every edge is the total dual", dual_of_everything),
        ("genus-change oracle equivalence", genus_change_oracle),
        ("partial-dual genus polynomial", polynomial_checks),
        ("rotation/flag dual commutation", cross_representation),
        ("file round-trips and gem stability", round_trips),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                println!("FAIL {:>2} {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
