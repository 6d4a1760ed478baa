//! Cross-checks the library against deliberately naive reimplementations
//! of every definition: attribution as the literal weighted sum over
//! subsets, explanations by testing all subsets for minimality, issues and
//! diagnostics recomputed from scratch. Exhaustive for arities 1..=3 and
//! over a seeded random sample for arity 4.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use svaudit_core::*;

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Average of f over the points that agree with v on s, by filtration.
fn brute_phi(f: &BooleanFunction, v: Point, s: FeatureSet) -> Rational {
    let m = f.arity();
    let mut ones = 0i64;
    let mut count = 0i64;
    for idx in 0..1u32 << m {
        let x = Point::from_index(m, idx).unwrap();
        if s.iter().all(|i| x.coordinate(i) == v.coordinate(i)) {
            count += 1;
            ones += f.bit(idx) as i64;
        }
    }
    Rational::new(ones, count)
}

/// The attribution of feature i, as the definition writes it.
fn brute_sv(f: &BooleanFunction, v: Point, i: usize) -> Rational {
    let m = f.arity();
    let mut total = Rational::ZERO;
    for mask in 0..1u32 << m {
        let s = FeatureSet::from_mask(mask);
        if s.contains(i) {
            continue;
        }
        let k = s.len();
        let weight = Rational::new(factorial(k) * factorial(m - 1 - k), factorial(m));
        total = total + weight * (brute_phi(f, v, s.insert(i)) - brute_phi(f, v, s));
    }
    total
}

/// Sufficiency by scanning every point.
fn brute_waxp(f: &BooleanFunction, v: Point, s: FeatureSet) -> bool {
    let m = f.arity();
    let c = f.bit(v.index());
    (0..1u32 << m).all(|idx| {
        let x = Point::from_index(m, idx).unwrap();
        let agrees = s.iter().all(|i| x.coordinate(i) == v.coordinate(i));
        !agrees || f.bit(idx) == c
    })
}

/// Whether freeing y (fixing everything else at v) can flip the prediction.
fn brute_wcxp(f: &BooleanFunction, v: Point, y: FeatureSet) -> bool {
    let m = f.arity();
    let c = f.bit(v.index());
    (0..1u32 << m).any(|idx| {
        let x = Point::from_index(m, idx).unwrap();
        let outside_agrees = (1..=m)
            .filter(|&i| !y.contains(i))
            .all(|i| x.coordinate(i) == v.coordinate(i));
        outside_agrees && f.bit(idx) != c
    })
}

/// Minimal sets of a predicate, testing every proper subset (not just
/// immediate predecessors).
fn brute_minimal(m: usize, pred: impl Fn(FeatureSet) -> bool) -> Vec<FeatureSet> {
    let mut out = Vec::new();
    for mask in 0..1u32 << m {
        let s = FeatureSet::from_mask(mask);
        if !pred(s) {
            continue;
        }
        let mut sub = mask;
        let mut minimal = true;
        while sub > 0 {
            sub = (sub - 1) & mask;
            if pred(FeatureSet::from_mask(sub)) {
                minimal = false;
                break;
            }
        }
        if minimal {
            out.push(s);
        }
    }
    out.sort_by_key(|s| (s.len(), s.mask()));
    out
}

fn is_minimal_hitting_set(h: FeatureSet, family: &[FeatureSet]) -> bool {
    let hits = |candidate: FeatureSet| family.iter().all(|&s| !(s & candidate).is_empty());
    hits(h) && h.iter().all(|i| !hits(h.remove(i)))
}

/// Runs every definitional check on one instance.
fn check_instance(f: &BooleanFunction, v: Point) {
    let m = f.arity();
    let label = format!("{} at {}", f.render(), v.render());
    let e = ExplanationProblem::new(f, v).unwrap();
    assert_eq!(e.class(), f.bit(v.index()), "{label}");
    let sv = shapley_all(&e);
    let sigma = sigma_build(&e);
    let ex = ExplanationSet::build(&e);

    // Attributions against the definitional sum, feature by feature.
    for i in 1..=m {
        assert_eq!(sv.get(i), brute_sv(f, v, i), "sv({i}) {label}");
        assert_eq!(shapley_value(&e, i).unwrap(), sv.get(i), "{label}");
    }

    // Efficiency.
    let total = sv.values().iter().fold(Rational::ZERO, |a, &b| a + b);
    let expected = Rational::from_int(e.class() as i64) - phi(&e, FeatureSet::EMPTY);
    assert_eq!(total, expected, "efficiency {label}");

    // Subcube averages and the sufficiency table, on every feature set.
    for mask in 0..1u32 << m {
        let s = FeatureSet::from_mask(mask);
        assert_eq!(phi(&e, s), brute_phi(f, v, s), "phi({s}) {label}");
        assert_eq!(sigma.get(s), brute_waxp(f, v, s), "sigma({s}) {label}");
        assert_eq!(waxp(&e, s), brute_waxp(f, v, s), "waxp({s}) {label}");
        assert_eq!(wcxp(&e, s), brute_wcxp(f, v, s), "wcxp({s}) {label}");
        // Sufficiency forces the subcube average to the class value.
        if sigma.get(s) {
            assert_eq!(
                phi(&e, s),
                Rational::from_int(e.class() as i64),
                "sufficient set with off-class average: {s} {label}"
            );
        }
    }

    // Explanation families against full-minimality enumeration.
    let axps = brute_minimal(m, |s| brute_waxp(f, v, s));
    let cxps = brute_minimal(m, |y| brute_wcxp(f, v, y));
    assert_eq!(ex.axps, axps, "axps {label}");
    assert_eq!(ex.cxps, cxps, "cxps {label}");
    assert_eq!(enumerate_axps(&sigma), axps, "{label}");
    assert_eq!(enumerate_cxps(&sigma), cxps, "{label}");

    // Hitting-set duality, both directions.
    for &x in &axps {
        assert!(is_minimal_hitting_set(x, &cxps), "axp {x} not MHS {label}");
    }
    for &y in &cxps {
        assert!(is_minimal_hitting_set(y, &axps), "cxp {y} not MHS {label}");
    }

    // Relevancy: essential-variable test vs membership in either family.
    let union_axps = axps.iter().fold(FeatureSet::EMPTY, |a, &s| a | s);
    let union_cxps = cxps.iter().fold(FeatureSet::EMPTY, |a, &s| a | s);
    assert_eq!(ex.relevant, union_axps, "{label}");
    assert_eq!(ex.relevant, union_cxps, "{label}");
    for i in 1..=m {
        assert_eq!(relevant(&sigma, i), ex.relevant.contains(i), "{label}");
    }

    // Importance: recomputed scores, positivity, and total.
    let iv = axp_importance(&ex.axps, m, WeightRule::ReciprocalSize);
    let mut scores = vec![Rational::ZERO; m];
    for x in &axps {
        for i in x.iter() {
            scores[i - 1] = scores[i - 1] + Rational::new(1, x.len() as i64);
        }
    }
    assert_eq!(iv.values(), &scores[..], "importance {label}");
    for i in 1..=m {
        assert_eq!(!iv.get(i).is_zero(), ex.relevant.contains(i), "{label}");
    }
    let sum = iv.values().iter().fold(Rational::ZERO, |a, &b| a + b);
    assert_eq!(sum, Rational::from_int(axps.len() as i64), "{label}");

    // Issues from their definitions.
    let report = detect_issues(&sv, ex.relevant);
    let irr: Vec<usize> = (1..=m).filter(|&i| !ex.relevant.contains(i)).collect();
    let rel: Vec<usize> = (1..=m).filter(|&i| ex.relevant.contains(i)).collect();
    let i1 = irr.iter().any(|&i| !sv.get(i).is_zero());
    let i2 = irr
        .iter()
        .any(|&i| rel.iter().any(|&r| sv.get(i).abs() > sv.get(r).abs()));
    let i3 = rel.iter().any(|&r| sv.get(r).is_zero());
    assert_eq!(report.i1, i1, "{label}");
    assert_eq!(report.i2, i2, "{label}");
    assert_eq!(report.i3, i3, "{label}");
    assert_eq!(report.i4, i1 && i3, "{label}");
    if report.i4 {
        assert!(report.i1 && report.i3, "{label}");
    }
    if report.i2 {
        assert!(report.i1, "an outranking irrelevant feature is nonzero: {label}");
    }

    // Domination from its definition.
    let dominate = !irr.is_empty()
        && !rel.is_empty()
        && irr.iter().all(|&i| {
            rel.iter().all(|&r| sv.get(i).abs() > sv.get(r).abs())
        });
    assert_eq!(all_irrelevant_dominate(&sv, ex.relevant), dominate, "{label}");

    // Ranking and diagnostics for every depth.
    let mut expected_order: Vec<usize> = (1..=m).collect();
    expected_order.sort_by(|&a, &b| {
        sv.get(b)
            .abs()
            .cmp(&sv.get(a).abs())
            .then(a.cmp(&b))
    });
    assert_eq!(
        rank_features(sv.values(), RankingMode::Absolute),
        expected_order,
        "{label}"
    );
    for k in 1..=m {
        let d = ranking_diagnostics(&sv, ex.relevant, k, RankingMode::Absolute).unwrap();
        assert_eq!(d.out_of_order, i2, "out_of_order vs issue 2 {label}");
        let topk = &expected_order[..k];
        let botk = &expected_order[m - k..];
        let exists_r = botk.iter().any(|&r| {
            ex.relevant.contains(r)
                && irr.iter().any(|&i| sv.get(i).abs() > sv.get(r).abs())
        });
        let exists_i = topk.iter().any(|&i| {
            !ex.relevant.contains(i)
                && rel.iter().any(|&r| sv.get(i).abs() > sv.get(r).abs())
        });
        assert_eq!(d.exists_r_in_botk, exists_r, "k={k} {label}");
        assert_eq!(d.exists_i_in_topk, exists_i, "k={k} {label}");
        let rel_bot = botk.iter().filter(|&&r| ex.relevant.contains(r)).count();
        let irr_top = topk.iter().filter(|&&i| !ex.relevant.contains(i)).count();
        assert_eq!(d.maj_r_in_botk, rel_bot * 2 > k && exists_r, "k={k} {label}");
        assert_eq!(d.maj_i_in_topk, irr_top * 2 > k && exists_i, "k={k} {label}");
    }
}

#[test]
fn exhaustive_up_to_three_variables() {
    for m in 1..=3usize {
        let top = (1u64 << (1u32 << m)) - 1;
        for bits in 1..top {
            let f = BooleanFunction::from_bits(m, bits).unwrap();
            for idx in 0..1u32 << m {
                check_instance(&f, Point::from_index(m, idx).unwrap());
            }
        }
    }
}

#[test]
fn sampled_four_variable_instances() {
    let mut rng = StdRng::seed_from_u64(0x5eed_cafe);
    for _ in 0..300 {
        let bits = rng.gen_range(1..=u16::MAX - 1) as u64;
        let f = BooleanFunction::from_bits(4, bits).unwrap();
        let idx = rng.gen_range(0..16u32);
        check_instance(&f, Point::from_index(4, idx).unwrap());
    }
}

#[test]
fn known_instances_in_depth() {
    // The worked m=4 instances whose full reports are fixed by hand.
    for (tt, v, svs, i4) in [
        (
            "0110101111111111",
            "0,0,0,1",
            vec![
                Rational::new(-11, 64),
                Rational::new(23, 192),
                Rational::new(23, 192),
                Rational::new(23, 192),
            ],
            false,
        ),
        (
            "0000000000011000",
            "1,0,0,0",
            vec![
                Rational::new(1, 12),
                Rational::new(-5, 24),
                Rational::ZERO,
                Rational::ZERO,
            ],
            true,
        ),
        (
            "0000000000011011",
            "1,0,0,0",
            vec![
                Rational::new(1, 8),
                Rational::new(-7, 24),
                Rational::new(-1, 12),
                Rational::ZERO,
            ],
            true,
        ),
    ] {
        let f = BooleanFunction::parse_tt(tt).unwrap();
        let v = Point::parse(v).unwrap();
        let e = ExplanationProblem::new(&f, v).unwrap();
        let sv = shapley_all(&e);
        assert_eq!(sv.values(), &svs[..], "{tt}");
        let ex = ExplanationSet::build(&e);
        assert_eq!(detect_issues(&sv, ex.relevant).i4, i4, "{tt}");
        check_instance(&f, v);
    }
}

#[test]
fn scan_counters_match_per_instance_recounts() {
    // Recount every scan statistic definitionally for m = 2 and 3.
    for m in 2..=3usize {
        let mut expected = (0u64, 0u64, 0u64, 0u64); // with_i1..i4
        let mut inst = (0u64, 0u64, 0u64, 0u64);
        let mut dominate = 0u64;
        let top = (1u64 << (1u32 << m)) - 1;
        for bits in 1..top {
            let f = BooleanFunction::from_bits(m, bits).unwrap();
            let mut flags = (false, false, false, false);
            for idx in 0..1u32 << m {
                let e = ExplanationProblem::new(&f, Point::from_index(m, idx).unwrap()).unwrap();
                let sv = shapley_all(&e);
                let rel = relevancy_all(&sigma_build(&e));
                let r = detect_issues(&sv, rel);
                inst.0 += r.i1 as u64;
                inst.1 += r.i2 as u64;
                inst.2 += r.i3 as u64;
                inst.3 += r.i4 as u64;
                dominate += all_irrelevant_dominate(&sv, rel) as u64;
                flags.0 |= r.i1;
                flags.1 |= r.i2;
                flags.2 |= r.i3;
                flags.3 |= r.i4;
            }
            expected.0 += flags.0 as u64;
            expected.1 += flags.1 as u64;
            expected.2 += flags.2 as u64;
            expected.3 += flags.3 as u64;
        }
        let s = scan_functions(&ScanConfig::new(m)).unwrap();
        assert_eq!(
            (s.with_i1, s.with_i2, s.with_i3, s.with_i4),
            expected,
            "m={m}"
        );
        assert_eq!(
            (s.instances_i1, s.instances_i2, s.instances_i3, s.instances_i4),
            inst,
            "m={m}"
        );
        assert_eq!(s.instances_all_irrelevant_dominate, dominate, "m={m}");
        assert_eq!(s.instances_out_of_order, s.instances_i2, "m={m}");
    }
}

#[test]
fn circuit_fixtures_feed_the_pipeline() {
    let k1 = parse_circuit(include_str!("data/k1.cir")).unwrap();
    let k2 = parse_circuit(include_str!("data/k2.cir")).unwrap();
    for (c, table) in [(&k1, "0000000000011000"), (&k2, "0000000000011011")] {
        assert_eq!(c.arity(), 4);
        assert!(check_decomposable(c));
        assert!(check_deterministic(c, DEFAULT_MAX_ARITY).unwrap());
        let f = materialize(c, DEFAULT_MAX_ARITY).unwrap();
        assert_eq!(f.render(), table);
        // Bit-parallel materialization against the pointwise evaluator.
        for idx in 0..16u32 {
            let p = Point::from_index(4, idx).unwrap();
            assert_eq!(f.eval(p).unwrap(), c.evaluate(p).unwrap());
        }
    }

    // The instance both circuits are audited at: prediction 0 at (1,0,0,0),
    // attribution mass on irrelevant feature 1, none on relevant feature 4.
    let v = Point::parse("1,0,0,0").unwrap();
    for (c, sv1) in [(&k1, Rational::new(1, 12)), (&k2, Rational::new(1, 8))] {
        let f = materialize(c, DEFAULT_MAX_ARITY).unwrap();
        let e = ExplanationProblem::new(&f, v).unwrap();
        assert!(!e.class());
        let sv = shapley_all(&e);
        assert_eq!(sv.get(1), sv1);
        assert_eq!(sv.get(4), Rational::ZERO);
        let rel = relevancy_all(&sigma_build(&e));
        assert!(!rel.contains(1) && rel.contains(4));
        let report = detect_issues(&sv, rel);
        assert!(report.i1 && report.i2 && report.i3 && report.i4);
    }
}
