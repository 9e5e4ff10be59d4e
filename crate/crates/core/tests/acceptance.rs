//! Acceptance suite. Prints one pass/fail line per criterion and exits
//! nonzero if any fails. All comparisons are exact.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use lensurg::arith::{is_prime, rational, SquareTable};
use lensurg::obstruct::{
    self, determine_a_sign, hflo, hflo_prime_form, hflo_with, l4n3_verdict,
    nonloose_unknot_exists, surgery_homology_order, torus_knot_tb_max, triangle_lspace_check,
    Rule,
};
use lensurg::otwist::{degree_shift, source_d3_solver};
use lensurg::planar::{self, b2_bound, crossing_profile, positive_factorization_necessary, Twist};
use lensurg::tightbook::{count_tight, enumerate_tight};
use lensurg::{
    ContactSurgeryDiagram, Error, LegendrianComponent, LensSpace, PlanarMonodromy, Verdict,
};

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn l(p: i64, q: i64) -> LensSpace {
    LensSpace::new(p, q).unwrap()
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn diagram(name: &str) -> ContactSurgeryDiagram {
    lensurg::cli::parse_diagram(&fixture(name)).unwrap()
}

fn monodromy(name: &str) -> PlanarMonodromy {
    lensurg::cli::parse_monodromy(&fixture(name)).unwrap()
}

fn lens_spaces(p_max: i64) -> Vec<LensSpace> {
    obstruct::lens_spaces_up_to(p_max)
}

fn shark_and_empty() -> Check {
    let shark = diagram("shark.json").d3().map_err(|e| e.to_string())?;
    ensure(shark == rational(1, 2), || format!("shark d3 = {shark}"))?;
    let empty = ContactSurgeryDiagram::empty().d3().map_err(|e| e.to_string())?;
    ensure(empty == rational(-1, 2), || format!("empty d3 = {empty}"))
}

fn l74_chains() -> Check {
    let xi: Vec<_> = ["l74_xi0.json", "l74_xi1.json", "l74_xi2.json"]
        .iter()
        .map(|f| diagram(f))
        .collect();
    let d3: Vec<_> = xi.iter().map(|d| d.d3().unwrap()).collect();
    ensure(
        d3 == vec![rational(0, 1), rational(-2, 7), rational(-2, 7)],
        || format!("d3 = {d3:?}"),
    )?;
    for d in &xi {
        ensure(d.chain_lens() == Some(l(7, 4)), || "fixture is not a chain for L(7,4)".into())?;
    }
    ensure(xi[1].spin_c_class() != xi[2].spin_c_class(), || {
        "rot (0,2) and (0,-2) share a spin-c class".into()
    })?;
    ensure(xi[1].spin_c_class() == xi[2].spin_c_class().conjugate(), || {
        "rot (0,2) is not conjugate to (0,-2)".into()
    })?;
    ensure(xi[0].spin_c_class().is_self_conjugate(), || {
        "rot (0,0) is not self-conjugate".into()
    })
}

fn tight_counts() -> Check {
    ensure(count_tight(&l(7, 4)) == Ok(3), || "L(7,4)".into())?;
    ensure(enumerate_tight(&l(7, 4)).map(|v| v.len()) == Ok(3), || "enumerate L(7,4)".into())?;
    ensure(count_tight(&l(3, 1)) == Ok(2), || "L(3,1)".into())?;
    for p in 2..=50 {
        ensure(count_tight(&l(p, p - 1)) == Ok(1), || format!("L({p},{})", p - 1))?;
    }
    Ok(())
}

fn hflo_family_and_prime_form() -> Check {
    let l31 = l(3, 1);
    for r in 1..=30 {
        let p1 = 3 * r - 1;
        for q in 1..p1 {
            let Ok(src) = LensSpace::new(p1, q) else { continue };
            let v = hflo(&src, &l31);
            ensure(v.verdict == Verdict::Obstructed, || {
                format!("hflo({src}, L(3,1)) = {}: {}", v.verdict, v.details)
            })?;
        }
    }
    let mut compared = 0u64;
    for p2 in (2..=300).filter(|&p| is_prime(p)) {
        let table = SquareTable::new(p2).unwrap();
        for p1 in 2..=300 {
            if p1 % p2 == 0 {
                continue;
            }
            let src = LensSpace::from_params(p1, 1).unwrap();
            for q2 in 1..p2 {
                let tgt = l(p2, q2);
                let a = hflo_with(&table, &src, &tgt).verdict;
                let b = hflo_prime_form(&src, &tgt).map_err(|e| e.to_string())?.verdict;
                ensure(a == b, || format!("{src} -> {tgt}: hflo {a}, prime form {b}"))?;
                compared += 1;
            }
        }
    }
    ensure(compared > 0, || "no pairs compared".into())
}

fn triangle_replay() -> Check {
    // The criterion reads only p1, so q1 = 1 stands for every q1.
    let mut obstructed = 0u64;
    for tgt in lens_spaces(100) {
        let table = SquareTable::new(tgt.p()).unwrap();
        for p1 in 2..=100 {
            let src = LensSpace::from_params(p1, 1).unwrap();
            if hflo_with(&table, &src, &tgt).verdict != Verdict::Obstructed {
                continue;
            }
            obstructed += 1;
            let a = determine_a_sign(&src, &tgt);
            ensure(a == Some(-p1), || format!("{src} -> {tgt}: a = {a:?}"))?;
            let h = surgery_homology_order(-p1, tgt.p(), 1);
            ensure(h == (p1 + tgt.p()) as u128, || format!("{src} -> {tgt}: |H1| = {h}"))?;
            ensure(triangle_lspace_check(p1, tgt.p(), -p1), || {
                format!("{src} -> {tgt}: triangle check failed")
            })?;
        }
    }
    ensure(obstructed > 0, || "no obstructed pairs".into())
}

fn torus_knots() -> Check {
    for n in 1..=20 {
        let tb = torus_knot_tb_max(2 * n + 1, 2).map_err(|e| e.to_string())?;
        ensure(tb == 2 * n - 1, || format!("tb_max(T({},2)) = {tb}", 2 * n + 1))?;
        let v = l4n3_verdict(n).map_err(|e| e.to_string())?;
        ensure(v.verdict == Verdict::Obstructed && v.rule == Rule::TorusKnotTb, || {
            format!("n = {n}: {}", v.verdict)
        })?;
        let trace = format!("required tb = {} > tb_max = {}", 4 * n + 4, 2 * n - 1);
        ensure(v.details.contains(&trace), || format!("n = {n}: trace {}", v.details))?;
    }
    Ok(())
}

fn nonloose_unknots() -> Check {
    for tb in -5..=5 {
        for rot in -6..=6i64 {
            let expected = (1..=6).any(|n| tb == n && rot.abs() == n - 1);
            ensure(nonloose_unknot_exists(tb, rot) == expected, || {
                format!("(tb, rot) = ({tb}, {rot})")
            })?;
        }
    }
    Ok(())
}

fn rot_solver() -> Check {
    let sols = source_d3_solver(7, &rational(-2, 7), 7).map_err(|e| e.to_string())?;
    let want: BTreeSet<_> = [(-1, rational(-1, 2)), (1, rational(-1, 2))].into();
    ensure(sols == want, || format!("solutions {sols:?}"))?;
    let shift = degree_shift(&rational(-1, 7), 1, -1);
    ensure(shift == rational(3, 14), || format!("degree shift {shift}"))?;
    let d_s3 = LensSpace::sphere().d_invariants().values()[0].clone();
    ensure(shift == rational(-2, 7) + rational(1, 2) - d_s3, || "shift identity".into())
}

fn planar_engine() -> Check {
    let lhs = crossing_profile(&monodromy("lantern_lhs.json"));
    let rhs = crossing_profile(&monodromy("lantern_rhs.json"));
    ensure(lhs.views.len() == 4, || format!("{} views", lhs.views.len()))?;
    ensure(lhs == rhs, || "lantern sides differ".into())?;

    let base = PlanarMonodromy::lantern_lhs();
    let padded = base
        .clone()
        .then(Twist::positive([1, 3]))
        .and_then(|f| f.then(Twist::negative([1, 3])))
        .map_err(|e| e.to_string())?;
    ensure(crossing_profile(&padded) == crossing_profile(&base), || {
        "cancelling twists change the profile".into()
    })?;

    for p in 2..=30 {
        let annulus = PlanarMonodromy::annulus_power(p);
        ensure(b2_bound(&annulus) == Ok(p as u64), || format!("annulus t^{p}"))?;
        let filling_b2 = (p - 1) as u64;
        ensure(b2_bound(&annulus).unwrap() >= filling_b2, || format!("L({p},{}) bound", p - 1))?;
        ensure(
            obstruct::filling_b2_multiset(&l(p, p - 1)) == Some(vec![filling_b2]),
            || format!("L({p},{}) filling table", p - 1),
        )?;
    }
    for name in ["annulus_t2.json", "annulus_t3.json", "annulus_t4.json", "annulus_t7.json"] {
        let f = monodromy(name);
        let p = f.twists().len() as u64;
        ensure(b2_bound(&f) == Ok(p), || format!("{name}: bound"))?;
    }

    let neg = PlanarMonodromy::new(2, vec![Twist::negative([1, 2])]).map_err(|e| e.to_string())?;
    ensure(!positive_factorization_necessary(&neg), || "single negative twist".into())?;
    ensure(
        matches!(planar::b2_bound(&neg), Err(Error::NoPositiveFactorization(_))),
        || "negative twist has a bound".into(),
    )
}

fn diagram_strategy() -> impl Strategy<Value = (ContactSurgeryDiagram, i64, i64, Vec<i64>)> {
    (1usize..=5)
        .prop_flat_map(|n| {
            let comps = proptest::collection::vec(
                (-6i64..=6, -7i64..=7, prop::bool::ANY),
                n,
            );
            let links = proptest::collection::vec(-3i64..=3, n * (n - 1) / 2);
            let pair = (-6i64..=6, -7i64..=7, proptest::collection::vec(-3i64..=3, n));
            (comps, links, pair)
        })
        .prop_map(|(comps, links, (tb, rot, pair_links))| {
            let n = comps.len();
            let components = comps
                .into_iter()
                .map(|(tb, rot, plus)| LegendrianComponent {
                    tb,
                    rot,
                    coeff: if plus { 1 } else { -1 },
                })
                .collect();
            let mut linking = vec![vec![0; n]; n];
            let mut it = links.into_iter();
            for i in 0..n {
                for j in i + 1..n {
                    let v = it.next().unwrap();
                    linking[i][j] = v;
                    linking[j][i] = v;
                }
            }
            let d = ContactSurgeryDiagram::new(components, linking).unwrap();
            (d, tb, rot, pair_links)
        })
}

fn cancelling_pairs() -> Check {
    let config = Config {
        cases: 50,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    let mut runner = TestRunner::new_with_rng(config, rng);
    runner
        .run(&diagram_strategy(), |(d, tb, rot, links)| {
            let e = d.with_cancelling_pair(tb, rot, &links).unwrap();
            prop_assert_eq!(d.h1_order(), e.h1_order());
            prop_assert_eq!(d.d3(), e.d3());
            Ok(())
        })
        .map_err(|e| e.to_string())?;
    let fixture_pair = diagram("cancelling_pair.json");
    ensure(fixture_pair.d3() == Ok(rational(-1, 2)), || "fixture d3".into())?;
    ensure(fixture_pair.h1_order() == 1.into(), || "fixture h1".into())
}

fn d3_within_d_invariants() -> Check {
    let half = rational(1, 2);
    for space in lens_spaces(60) {
        let shifted: Vec<_> = enumerate_tight(&space)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|s| &s.d3 + &half)
            .collect();
        ensure(space.d_invariants().contains_multiset(&shifted), || {
            format!("{space}: {shifted:?}")
        })?;
    }
    Ok(())
}

fn verdict_consistency() -> Check {
    let reports = obstruct::sweep_reports(50);
    for r in &reports {
        ensure(!r.is_contradictory(), || {
            format!("{} -> {}: rules disagree", r.source, r.target)
        })?;
        let hflo_obstructs = r
            .verdicts
            .iter()
            .any(|v| v.rule == Rule::Hflo && v.verdict == Verdict::Obstructed);
        let stein_possible = r
            .verdicts
            .iter()
            .any(|v| v.rule == Rule::SteinFillings && v.verdict == Verdict::Possible);
        ensure(!(hflo_obstructs && stein_possible), || {
            format!("{} -> {}: hflo Obstructed, stein Possible", r.source, r.target)
        })?;
    }
    ensure(reports.iter().any(|r| r.combined() == Verdict::Possible), || {
        "sweep exhibited no surgery at all".into()
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 12] = [
        ("d3 of shark and empty diagrams", shark_and_empty),
        ("L(7,4) chains: d3 and spin-c classes", l74_chains),
        ("tight structure counts", tight_counts),
        ("hflo on L(3r-1,q) -> L(3,1); prime form agreement", hflo_family_and_prime_form),
        ("surgery triangle replay for obstructed pairs", triangle_replay),
        ("torus knot tb bound and L(4n+3,4) verdicts", torus_knots),
        ("non-loose unknot table", nonloose_unknots),
        ("source d3 solver and degree shift", rot_solver),
        ("planar crossing profiles and b2 bounds", planar_engine),
        ("cancelling pairs preserve d3 and |H1|", cancelling_pairs),
        ("tight d3 + 1/2 within correction terms", d3_within_d_invariants),
        ("verdict consistency across sweep", verdict_consistency),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:>2}: pass  {name} ({secs:.2}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("{} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
