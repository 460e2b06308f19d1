use num_rational::Ratio;
use proptest::prelude::*;
use symcone::catalog;
use symcone::invariants::{betti, cohomology_table, lefschetz_ranks};
use symcone::{ConeComplex, GradedModel, Model, Rational, Scalar};

fn small_catalog() -> Vec<Model> {
    catalog::all::<Rational>()
        .into_iter()
        .filter(|m| m.dim() <= 64)
        .collect()
}

#[test]
fn formula_matches_cone_on_catalog() {
    for m in catalog::all::<Rational>() {
        for p in 0..=2 {
            let t = cohomology_table(&m, p).unwrap();
            assert!(
                t.paths_agree(),
                "{} p={p}: {:?} vs {:?}",
                m.name(),
                t.b_phi_formula,
                t.b_phi_direct
            );
        }
    }
}

#[test]
fn catalog_models_validate_and_are_poincare_dual() {
    for m in catalog::all::<Rational>() {
        let report = m.validate();
        assert!(
            report.passed(),
            "{}: {:?}",
            m.name(),
            report.failures().collect::<Vec<_>>()
        );
        let t = cohomology_table(&m, 1).unwrap();
        assert!(t.poincare_dual(), "{}: {:?}", m.name(), t.b);
    }
}

#[test]
fn lefschetz_ranks_are_bounded() {
    for m in catalog::all::<Rational>() {
        let b = betti(&m);
        for q in 1..=3 {
            let r = lefschetz_ranks(&m, q).unwrap();
            for (i, &ri) in r.iter().enumerate() {
                let target = b.get(i + 2 * q).copied().unwrap_or(0);
                assert!(ri <= b[i].min(target), "{} q={q} i={i}", m.name());
            }
        }
    }
}

#[test]
fn torus_models_agree() {
    for m in 1..=3 {
        let ce: Model = catalog::torus(m).unwrap();
        let ring: Model = catalog::torus_ring(m).unwrap();
        for p in 0..=2 {
            let a = cohomology_table(&ce, p).unwrap();
            let b = cohomology_table(&ring, p).unwrap();
            assert_eq!(a.b_phi_direct, b.b_phi_direct, "torus({m}) p={p}");
            assert_eq!(a.r, b.r);
        }
    }
}

fn convolve(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

#[test]
fn kunneth() {
    let models = small_catalog();
    for a in &models {
        for b in &models {
            if a.dim() * b.dim() > 256 {
                continue;
            }
            let ab = catalog::product(&[a.clone(), b.clone()]).unwrap();
            assert_eq!(
                betti(&ab),
                convolve(&betti(a), &betti(b)),
                "{} x {}",
                a.name(),
                b.name()
            );
        }
    }
}

#[test]
fn fixed_width_scalars_agree() {
    for name in ["kt_x_s2", "s2xs2xs2", "surface_g2", "torus4"] {
        let big: Model = catalog::by_name(name).unwrap();
        let small: GradedModel<Ratio<i128>> = catalog::by_name(name).unwrap();
        for p in 0..=2 {
            let a = cohomology_table(&big, p).unwrap();
            let b = cohomology_table(&small, p).unwrap();
            assert_eq!(a, b, "{name} p={p}");
        }
    }
}

#[test]
fn fingerprints_are_deterministic() {
    let a: Model = catalog::by_name("kt_x_s2").unwrap();
    let b: Model = catalog::by_name("kt_x_s2").unwrap();
    assert_eq!(a.fingerprint(), b.fingerprint());
    assert_ne!(
        a.fingerprint(),
        catalog::by_name::<Rational>("s2xs2xs2").unwrap().fingerprint()
    );
}

/// A permutation of the basis that only shuffles within each degree.
fn degree_preserving_perm(m: &Model, seed: u64) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..m.dim()).collect();
    let mut state = seed | 1;
    let mut start = 0;
    while start < perm.len() {
        let deg = m.degree(perm[start]);
        let end = (start..perm.len())
            .find(|&i| m.degree(perm[i]) != deg)
            .unwrap_or(perm.len());
        for i in (start + 1..end).rev() {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            let j = start + (state % (i - start + 1) as u64) as usize;
            perm.swap(i, j);
        }
        start = end;
    }
    perm
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scaling_omega_preserves_invariants(idx in 0usize..9, num in 1i64..7, den in 1i64..5, neg in any::<bool>()) {
        let models = small_catalog();
        let m = &models[idx % models.len()];
        let c = Rational::new((if neg { -num } else { num }).into(), den.into());
        let scaled = m.with_scaled_omega(&c);
        for p in 0..=1 {
            let a = cohomology_table(m, p).unwrap();
            let b = cohomology_table(&scaled, p).unwrap();
            prop_assert_eq!(a.b_phi_direct, b.b_phi_direct);
            prop_assert_eq!(a.r, b.r);
        }
    }

    #[test]
    fn basis_order_does_not_matter(idx in 0usize..9, seed in any::<u64>(), p in 0usize..3) {
        let models = small_catalog();
        let m = &models[idx % models.len()];
        let perm = degree_preserving_perm(m, seed);
        let pm = m.permuted(&perm).unwrap();
        let a = ConeComplex::build(m, p).unwrap().betti();
        let b = ConeComplex::build(&pm, p).unwrap().betti();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn random_products_vanish(picks in proptest::collection::vec(0usize..5, 1..4)) {
        let pool = ["sphere2", "torus2", "surface_g1", "surface_g2", "kodaira_thurston"];
        let factors: Vec<Model> = picks.iter().map(|&i| catalog::by_name(pool[i]).unwrap()).collect();
        let m = catalog::product(&factors).unwrap();
        prop_assume!(m.dim() <= 256);
        let t = cohomology_table(&m, 1).unwrap();
        prop_assert!(t.paths_agree());
        prop_assert_eq!(t.euler, 0);
        if m.top_degree() % 4 == 2 {
            prop_assert_eq!(t.ell, Some(0));
        }
    }
}

#[test]
fn scalar_parsing() {
    assert_eq!(Rational::parse("-3/6"), Some(Rational::new((-1).into(), 2.into())));
    assert_eq!(Rational::parse("1/0"), None);
}
