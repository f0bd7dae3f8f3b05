mod common;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;

use common::{coeff, fd_wirtinger, point_strategy, poly_strategy};
use mixsing::discgeom::jacobian::jacobian_det;
use mixsing::discgeom::discriminant::containment_failures;
use mixsing::discgeom::{branch_restriction_singular, discriminant_curve, line_components, LineKind, PlaneCurve, PuiseuxBranch};
use mixsing::error::MixError;
use mixsing::milnor::residual::milnor_residual_with;
use mixsing::milnor::{relative_sing_residual, sing_residual_parts, singular_points, ScanOptions};
use mixsing::mixed::{ExponentPair, MixedPolynomial};
use mixsing::parser::{format, parse_with};
use mixsing::polar::{orbit_check, solve_polar, weights_valid, PolarStatus, PolarWeights};
use mixsing::rational::ComplexRational;
use mixsing::thomprobe::curve::rational_unit;
use mixsing::thomprobe::grassmann::{to_real, Subspace};
use mixsing::thomprobe::{FrameEvaluator, SymbolicFamily};

const Z3: [&str; 3] = ["z1", "z2", "z3"];

fn cfg(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg(96))]

    #[test]
    fn ring_laws(a in poly_strategy(2), b in poly_strategy(2), c in poly_strategy(2)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &MixedPolynomial::one(2), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn product_rule_and_conjugation(a in poly_strategy(3), b in poly_strategy(3)) {
        let ab = &a * &b;
        for j in 0..3 {
            prop_assert_eq!(ab.d_z(j), &(&a.d_z(j) * &b) + &(&a * &b.d_z(j)));
            prop_assert_eq!(ab.d_zbar(j), &(&a.d_zbar(j) * &b) + &(&a * &b.d_zbar(j)));
            prop_assert_eq!(a.d_z(j).conjugate(), a.conjugate().d_zbar(j));
        }
        prop_assert_eq!(a.conjugate().conjugate(), a);
    }

    #[test]
    fn wirtinger_matches_finite_differences(a in poly_strategy(2), z in point_strategy(2)) {
        for j in 0..2 {
            let (d, dbar) = fd_wirtinger(&a, &z, j, 1e-5);
            let exact = a.d_z(j).compile().eval(&z);
            let exact_bar = a.d_zbar(j).compile().eval(&z);
            prop_assert!((d - exact).norm() <= 1e-6 * (1.0 + exact.norm()));
            prop_assert!((dbar - exact_bar).norm() <= 1e-6 * (1.0 + exact_bar.norm()));
        }
    }

    #[test]
    fn format_round_trips(a in poly_strategy(3)) {
        let text = format(&a);
        let back = parse_with(&text, &Z3).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(format(&back), text);
    }
}

/// All admissible `(p, k)` with `|p_j| ≤ 3`, every entry nonzero.
fn brute_force_weights(f: &MixedPolynomial) -> Vec<(Vec<i64>, i64)> {
    let n = f.n_vars();
    let diffs: Vec<Vec<i64>> = f.terms().map(|(e, _)| e.difference()).collect();
    let mut out = Vec::new();
    let mut p = vec![-3i64; n];
    loop {
        if p.iter().all(|&x| x != 0) {
            let ks: Vec<i64> = diffs.iter().map(|d| d.iter().zip(&p).map(|(a, b)| a * b).sum()).collect();
            if ks.windows(2).all(|w| w[0] == w[1]) && ks.first().is_some_and(|&k| k != 0) {
                out.push((p.clone(), ks[0]));
            }
        }
        let mut j = 0;
        while j < n && p[j] == 3 {
            p[j] = -3;
            j += 1;
        }
        if j == n {
            return out;
        }
        p[j] += 1;
    }
}

fn in_span(basis: &[Vec<i64>], v: &[i64]) -> bool {
    if basis.is_empty() {
        return v.iter().all(|&x| x == 0);
    }
    let cols: Vec<DVector<f64>> = basis.iter().map(|b| DVector::from_iterator(b.len(), b.iter().map(|&x| x as f64))).collect();
    let m = DMatrix::from_columns(&cols);
    let target = DVector::from_iterator(v.len(), v.iter().map(|&x| x as f64));
    let sol = m.clone().svd(true, true).solve(&target, 1e-10).unwrap();
    (&m * sol - target).norm() < 1e-8
}

fn term_strategy(n: usize) -> impl Strategy<Value = (Vec<u32>, Vec<u32>)> {
    (prop::collection::vec(0u32..=3, n), prop::collection::vec(0u32..=3, n))
}

proptest! {
    #![proptest_config(cfg(128))]

    #[test]
    fn polar_weights_are_sound_and_complete(
        terms in prop::collection::vec(term_strategy(2), 1..4),
        lambda in 0.0f64..6.3,
        z in point_strategy(2),
    ) {
        let f = MixedPolynomial::from_terms(
            2,
            terms.into_iter().enumerate().map(|(i, (nu, mu))| (ExponentPair::new(nu, mu), ComplexRational::from_int(i as i64 + 1))),
        );
        prop_assume!(!f.is_zero());
        let sol = solve_polar(&f).unwrap();
        let brute = brute_force_weights(&f);
        for (p, k) in &brute {
            let mut v = p.clone();
            v.push(*k);
            prop_assert!(in_span(&sol.lattice_basis, &v), "({:?}, {}) outside the solution lattice", p, k);
        }
        if !brute.is_empty() {
            prop_assert_eq!(sol.polar, PolarStatus::Yes);
        }
        if let Some(w) = &sol.canonical {
            prop_assert!(weights_valid(&f, w));
            let best = brute.iter().map(|(p, _)| p.iter().map(|x| x.abs()).sum::<i64>()).min();
            if let Some(b) = best {
                prop_assert!(w.p.iter().map(|x| x.abs()).sum::<i64>() <= b);
            }
            let r = orbit_check(&f, w, Complex64::from_polar(1.0, lambda), &z.clone().into()).unwrap();
            prop_assert!(r <= 1e-10, "orbit residual {}", r);
        }
        if sol.polar == PolarStatus::No {
            prop_assert!(brute.is_empty());
        }
    }

    #[test]
    fn polar_weights_scale_with_gcd(s in 2i64..5) {
        let f = parse_with("x~*y*(x+z^2)", &["x", "y", "z"]).unwrap();
        let w = solve_polar(&f).unwrap().canonical.unwrap();
        let scaled = PolarWeights { p: w.p.iter().map(|x| x * s).collect(), k: w.k * s };
        prop_assert!(weights_valid(&f, &scaled));
        let off = PolarWeights { p: scaled.p.clone(), k: scaled.k + 1 };
        prop_assert!(!weights_valid(&f, &off));
    }
}

/// Rank deficiency of the real Jacobian of `t ↦ u·conj(v)` at every sample.
fn rank_oracle(b: &PuiseuxBranch, ts: &[Complex64]) -> bool {
    let h = 1e-6;
    ts.iter().all(|&t| {
        let phi = |s: Complex64| {
            let (u, v) = b.eval(s);
            u * v.conj()
        };
        let dx = (phi(t + h) - phi(t - h)) / (2.0 * h);
        let dy = (phi(t + Complex64::new(0.0, h)) - phi(t - Complex64::new(0.0, h))) / (2.0 * h);
        (dx.re * dy.im - dx.im * dy.re).abs() / (dx.norm_sqr() + dy.norm_sqr()) < 1e-6
    })
}

proptest! {
    #![proptest_config(cfg(50))]

    #[test]
    fn branch_test_matches_rank_oracle(
        p in 1u32..=4,
        mask in 1u8..16,
        same in any::<bool>(),
        seed in any::<u64>(),
        samples in prop::collection::vec((0.05f64..0.9, 0.0f64..6.3), 24),
    ) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mut qs: Vec<u32> = (1..=4).filter(|q| mask & (1 << (q - 1)) != 0).take(3).collect();
        if same {
            qs = vec![p];
        }
        let terms = qs.into_iter().map(|q| (rational_unit(&mut rng), q)).collect();
        let b = PuiseuxBranch::new(p, terms).unwrap();
        let ts: Vec<Complex64> = samples.iter().map(|&(r, a)| Complex64::from_polar(r, a)).collect();
        prop_assert_eq!(branch_restriction_singular(&b), rank_oracle(&b, &ts));
    }

    #[test]
    fn line_components_recover_planted_lines(
        slopes in prop::collection::vec((-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3), 0..3),
        eu in 0u32..2,
        ev in 0u32..2,
        curved in any::<bool>(),
    ) {
        let uv = ["u", "v"];
        let u = MixedPolynomial::var(2, 0);
        let v = MixedPolynomial::var(2, 1);
        let mut want: Vec<ComplexRational> = slopes
            .iter()
            .map(|&(a, b, c, d)| coeff((a, b), (c, d)))
            .filter(|s| !s.is_zero())
            .collect();
        want.sort_by_key(|s| s.canonical_string());
        want.dedup();
        let mut h = &u.pow(eu) * &v.pow(ev);
        for a in &want {
            h = &h * &(&v - &u.scale(a));
        }
        if curved {
            h = &h * &parse_with("v - u^2 - u^3", &uv).unwrap();
        }
        prop_assume!(!h.is_constant());
        let lines = line_components(&PlaneCurve::from_polynomial(&h).unwrap());
        prop_assert_eq!(lines.iter().any(|l| l.kind == LineKind::AxisU), ev > 0);
        prop_assert_eq!(lines.iter().any(|l| l.kind == LineKind::AxisV), eu > 0);
        let got: Vec<ComplexRational> = lines.iter().filter_map(|l| l.slope.clone()).collect();
        prop_assert_eq!(got, want);
    }
}

fn holo_strategy() -> impl Strategy<Value = MixedPolynomial> {
    let term = (0u32..=2, 0u32..=2, -3i64..=3);
    prop::collection::vec(term, 1..4).prop_map(|ts| {
        MixedPolynomial::from_terms(
            2,
            ts.into_iter().filter(|t| t.0 + t.1 > 0).map(|(a, b, c)| (ExponentPair::new(vec![a, b], vec![0, 0]), ComplexRational::from_int(c))),
        )
    })
}

proptest! {
    #![proptest_config(cfg(32))]

    #[test]
    fn discriminant_contains_critical_values(f in holo_strategy(), g in holo_strategy(), seed in 0u64..1000) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        match discriminant_curve(&f, &g) {
            Ok(PlaneCurve::Curve(h)) => {
                let jac = jacobian_det(&f, &g).unwrap();
                prop_assert_eq!(containment_failures(&f, &g, &jac, &h, 20, seed), 0);
            }
            Ok(_) | Err(MixError::DegreeBound { .. }) | Err(MixError::EliminationDegenerate(_)) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }
}

fn plane_at(ev: &FrameEvaluator, z: &[Complex64]) -> Subspace {
    let fr = ev.frame(z);
    Subspace::span(&[to_real(&fr.n_one), to_real(&fr.n_i)], 1e-12, 2 * z.len())
}

proptest! {
    #![proptest_config(cfg(64))]

    #[test]
    fn frame_members_agree_with_symbolic_family(f in poly_strategy(2), z in point_strategy(2), seed in any::<u64>()) {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let mu = rational_unit(&mut rng);
        let fam = SymbolicFamily::of(&f);
        let fr = FrameEvaluator::new(&f).frame(&z);
        let numeric = fr.member(mu.to_complex64());
        for (j, p) in fam.member(&mu).iter().enumerate() {
            let exact = p.compile().eval(&z);
            prop_assert!((numeric[j] - exact).norm() <= 1e-9 * (1.0 + exact.norm()));
        }
        // n_one is the real gradient of Re F, n_i that of Im F.
        for j in 0..2 {
            let (d, dbar) = fd_wirtinger(&f, &z, j, 1e-5);
            let grad_re = d.conj() + dbar;
            let grad_im = Complex64::i() * (d.conj() - dbar);
            prop_assert!((grad_re - fr.n_one[j]).norm() <= 1e-6 * (1.0 + grad_re.norm()));
            prop_assert!((grad_im - fr.n_i[j]).norm() <= 1e-6 * (1.0 + grad_im.norm()));
        }
    }

    #[test]
    fn normal_planes_follow_the_circle_action(theta in 0.0f64..6.3, z in point_strategy(3)) {
        let f = parse_with("x~*y*(x+z^2)", &["x", "y", "z"]).unwrap();
        let w = solve_polar(&f).unwrap().canonical.unwrap();
        let lambda = Complex64::from_polar(1.0, theta);
        let act = |v: &[Complex64]| -> Vec<Complex64> { v.iter().zip(&w.p).map(|(c, &p)| c * lambda.powi(p as i32)).collect() };
        let ev = FrameEvaluator::new(&f);
        let fr = ev.frame(&z);
        prop_assume!(Subspace::span(&[to_real(&fr.n_one), to_real(&fr.n_i)], 1e-6, 6).dim() == 2);
        let moved = Subspace::span(&[to_real(&act(&fr.n_one)), to_real(&act(&fr.n_i))], 1e-12, 6);
        let d = plane_at(&ev, &act(&z)).distance(&moved).unwrap();
        prop_assert!(d < 1e-8, "distance {}", d);
    }

    #[test]
    fn grassmann_distance_is_a_metric(vs in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 6), 6)) {
        let planes: Vec<Subspace> = vs
            .chunks(2)
            .map(|c| Subspace::span(&[DVector::from_vec(c[0].clone()), DVector::from_vec(c[1].clone())], 1e-6, 6))
            .collect();
        prop_assume!(planes.iter().all(|s| s.dim() == 2));
        let d = |a: usize, b: usize| planes[a].distance(&planes[b]).unwrap();
        prop_assert!(d(0, 0) < 1e-12);
        prop_assert!((d(0, 1) - d(1, 0)).abs() < 1e-12);
        prop_assert!(d(0, 2) <= d(0, 1) + d(1, 2) + 1e-12);
        prop_assert!(d(0, 1) >= 0.0 && d(0, 1) <= 2f64.sqrt() + 1e-12);
    }

    #[test]
    fn milnor_residual_is_scale_invariant(z in point_strategy(2), c in 0.01f64..100.0) {
        for text in ["z1", "z1*z2*z1~"] {
            let f = parse_with(text, &["z1", "z2"]).unwrap();
            let ev = FrameEvaluator::new(&f);
            let scaled: Vec<Complex64> = z.iter().map(|w| w * c).collect();
            if let (Ok(a), Ok(b)) = (milnor_residual_with(&ev, &z), milnor_residual_with(&ev, &scaled)) {
                prop_assert!((0.0..=1.0).contains(&a));
                prop_assert!((a - b).abs() <= 1e-10, "{}: {} vs {}", text, a, b);
            }
        }
    }

    #[test]
    fn sing_residual_is_nonnegative(f in poly_strategy(2), z in point_strategy(2)) {
        let (a, b) = FrameEvaluator::new(&f).parts(&z);
        prop_assert!(sing_residual_parts(&a, &b) >= 0.0);
        let rel = relative_sing_residual(&a, &b);
        prop_assert!((0.0..=1.0 + 1e-12).contains(&rel));
    }
}

proptest! {
    #![proptest_config(cfg(50))]

    /// `F = α z_1 + β z̄_1` with `|α| = |β|` has `conj(dF) = λ ∂̄F`
    /// everywhere; so does `x·conj(x + y²)` along `y = 0`.
    #[test]
    fn sing_residual_vanishes_on_constructed_singular_points(
        s1 in any::<u64>(), s2 in any::<u64>(), m in 1i64..5, z in point_strategy(2),
    ) {
        let mut r1 = rand_chacha::ChaCha8Rng::seed_from_u64(s1);
        let mut r2 = rand_chacha::ChaCha8Rng::seed_from_u64(s2);
        let alpha = &rational_unit(&mut r1) * &ComplexRational::from_int(m);
        let beta = &rational_unit(&mut r2) * &ComplexRational::from_int(m);
        let f = &MixedPolynomial::var(2, 0).scale(&alpha) + &MixedPolynomial::conj_var(2, 0).scale(&beta);
        let (a, b) = FrameEvaluator::new(&f).parts(&z);
        prop_assert!(sing_residual_parts(&a, &b) <= 1e-12);

        let g = parse_with("x*conj(x+y^2)", &["x", "y"]).unwrap();
        let on_line = [z[0], Complex64::new(0.0, 0.0)];
        let (a, b) = FrameEvaluator::new(&g).parts(&on_line);
        prop_assert!(sing_residual_parts(&a, &b) <= 1e-12);
    }

    #[test]
    fn sing_residual_is_positive_at_regular_points(z in point_strategy(2)) {
        let f = parse_with("z1", &["z1", "z2"]).unwrap();
        let (a, b) = FrameEvaluator::new(&f).parts(&z);
        prop_assert!(sing_residual_parts(&a, &b) > 1e-6);
    }
}

/// Singular points of `f·ḡ` off `V` found by the sampler lie in `Sing(f, g)`:
/// the holomorphic Jacobian of `(f, g)` is numerically rank deficient there.
#[test]
fn singular_points_of_the_product_lie_in_sing_of_the_pair() {
    let opts = ScanOptions { samples: 40, max_iters: 2000, residual_tol: 1e-10, ..ScanOptions::default() };
    let mut checked = 0;
    for (fs, gs, vars) in [
        ("x", "x+y^2", &["x", "y"][..]),
        ("x", "x+x^2+y^2", &["x", "y"][..]),
        ("x^2", "y^3+x", &["x", "y"][..]),
        ("y*(x+z^2)", "x+y", &["x", "y", "z"][..]),
    ] {
        let f = parse_with(fs, vars).unwrap();
        let g = parse_with(gs, vars).unwrap();
        let prod = MixedPolynomial::from_pair(&f, &g).unwrap();
        let ev = FrameEvaluator::new(&prod);
        let n = vars.len();
        let df: Vec<_> = (0..n).map(|j| f.d_z(j).compile()).collect();
        let dg: Vec<_> = (0..n).map(|j| g.d_z(j).compile()).collect();
        for z in singular_points(&prod, &opts).unwrap().into_iter().flatten() {
            let (a, b) = ev.parts(&z);
            if sing_residual_parts(&a, &b) >= 1e-8 {
                continue;
            }
            let jac = DMatrix::from_fn(2, n, |i, j| if i == 0 { df[j].eval(&z) } else { dg[j].eval(&z) });
            let sv = jac.singular_values();
            let smallest = sv.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!(smallest < 1e-6 * sv.max().max(1.0), "{fs}, {gs} at {z:?}: singular values {sv:?}");
            checked += 1;
        }
    }
    assert!(checked >= 100, "only {checked} singular points checked");
}
