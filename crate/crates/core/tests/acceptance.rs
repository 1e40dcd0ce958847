use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use stringalg::bridges::BridgeVertex;
use stringalg::oracle::{run_all_checks, OracleBudget};
use stringalg::ranks::RankClass;
use stringalg::*;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rendered_bands(a: &StringAlgebra) -> BTreeSet<String> {
    a.prime_bands().iter().map(|b| a.render(&b.rep)).collect()
}

fn set(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

fn ac1() -> Check {
    let l = fixtures::lambda2();
    let bands: Vec<Vec<Syllable>> = stringalg::oracle::oracle_bands(&l, 8);
    ensure!(bands.len() == 4, "{} bands up to length 8", bands.len());
    let primes = rendered_bands(&l);
    let expected = set(&["a b'", "b a'", "d e'", "e d'"]);
    ensure!(primes == expected, "prime bands {primes:?}");
    for b in &bands {
        ensure!(
            l.is_prime_syllables(b),
            "{} not prime",
            l.render_syllables(b)
        );
        ensure!(
            l.prime_bands()
                .iter()
                .any(|p| l.is_rotation_of(b, p.syllables())),
            "{} missing",
            l.render_syllables(b)
        );
    }
    ensure!(l.classify_algebra().domestic, "not domestic");
    Ok("bands {aB, bA, dE, eD}, all prime, domestic".into())
}

fn ac2() -> Check {
    let g = fixtures::gp23();
    let primes = rendered_bands(&g);
    ensure!(
        primes == set(&["a b'", "b a'", "a b' b'", "b b a'"]),
        "prime bands {primes:?}"
    );
    let w = g.parse_word("a b' b' a b'").map_err(|e| e.to_string())?;
    ensure!(g.is_band(&w), "aB2aB is not a band");
    ensure!(
        !g.is_prime_syllables(w.syllables()),
        "aB2aB classified prime"
    );
    let c = g.classify_algebra();
    ensure!(!c.domestic, "classified domestic");
    let witness = c.witnesses.get("meta_band").ok_or("no meta-band witness")?;
    Ok(format!(
        "prime bands {{aB, aB2, bA, b2A}}, aB2aB composite, meta-band {witness}"
    ))
}

fn ac3() -> Check {
    let g = fixtures::gp23();
    let arrows =
        |sign: Sign, band: &str| -> std::result::Result<BTreeSet<(String, bool)>, String> {
            let w = g.parse_word(band).map_err(|e| e.to_string())?;
            let index = g
                .band_index(&w)
                .ok_or(format!("{band} is not a prime band"))?;
            Ok(g.half_bridges_from(0, sign, true)
                .into_iter()
                .filter(|x| x.target == BridgeVertex::Band { index })
                .map(|x| (g.render(&x.label), x.weak_only))
                .collect())
        };
    let minus = arrows(Sign::Minus, "a b'")?;
    let expected_minus: BTreeSet<(String, bool)> = [
        ("1(v,-)".into(), false),
        ("a".into(), false),
        ("b'".into(), true),
    ]
    .into();
    ensure!(minus == expected_minus, "1(v,-) -> aB: {minus:?}");
    let plus = arrows(Sign::Plus, "b b a'")?;
    let expected_plus: BTreeSet<(String, bool)> = [
        ("1(v,+)".into(), false),
        ("b".into(), false),
        ("b b".into(), true),
    ]
    .into();
    ensure!(plus == expected_plus, "1(v,+) -> b2A: {plus:?}");
    let half = g
        .half_bridges_from(0, Sign::Plus, true)
        .into_iter()
        .filter(|x| !x.weak_only && g.render(&x.label) != "1(v,+)")
        .filter(|x| g.render_vertex(&x.target) == "b b a'")
        .map(|x| x.sigma_ba)
        .next()
        .ok_or("no non-trivial half bridge into b2A")?;
    let lazy = g
        .half_bridges_from(0, Sign::Plus, true)
        .into_iter()
        .find(|x| g.render(&x.label) == "1(v,+)" && g.render_vertex(&x.target) == "b b a'")
        .map(|x| x.sigma_ba)
        .ok_or("no lazy half bridge into b2A")?;
    ensure!(half != lazy, "sigma^Ba agrees for 1 and b");
    Ok("1(v,-)->aB {1, a; B weak}, 1(v,+)->b2A {1, b; b2 weak}, b kept by sigma^Ba".into())
}

fn ac4() -> Check {
    let l = fixtures::lambda2();
    let a = l.parse_word("a").map_err(|e| e.to_string())?;
    let c = l.parse_word("c").map_err(|e| e.to_string())?;
    let show = |w: Option<Word>| w.map_or("undefined".to_string(), |w| l.render(&w));
    ensure!(
        show(l.op_l(&a)) == "e c a b' a",
        "l(a) = {}",
        show(l.op_l(&a))
    );
    ensure!(
        show(l.op_lbar(&a)) == "c a",
        "lbar(a) = {}",
        show(l.op_lbar(&a))
    );
    ensure!(l.op_l(&c).is_none(), "l(c) = {}", show(l.op_l(&c)));

    let n = fixtures::not_torsion_free();
    let a = n.parse_word("a").map_err(|e| e.to_string())?;
    let once = n.op_lbar(&a).ok_or("lbar(a) undefined")?;
    ensure!(n.render(&once) == "c a", "lbar(a) = {}", n.render(&once));
    ensure!(n.op_lbar(&once).is_none(), "lbar^2(a) defined");
    let t = n.is_torsion_free();
    ensure!(!t.torsion_free, "reported torsion-free");
    let hit = t
        .witnesses
        .iter()
        .any(|w| n.render(&w.word) == "a" && w.op == Op::LBar);
    ensure!(hit, "no (a, lbar) witness in {:?}", t.witnesses);
    Ok(
        "l(a)=ecaBa, lbar(a)=ca, l(c) undefined; lbar(a)=ca, lbar^2(a) undefined, not torsion-free"
            .into(),
    )
}

fn ac5() -> Check {
    let n = fixtures::negative_power();
    let band = n
        .band_index(&n.parse_word("c d' b'").map_err(|e| e.to_string())?)
        .ok_or("cDB is not a prime band")?;
    let data = n.bridge_data();
    let half = data
        .half
        .iter()
        .find(|x| n.render(&x.label) == "c d' a" && x.target == BridgeVertex::Band { index: band })
        .ok_or("no half bridge cDa")?;
    let rev = data
        .reverse_half
        .iter()
        .find(|x| n.render(&x.label) == "e b'" && x.source == BridgeVertex::Band { index: band })
        .ok_or("no reverse half bridge eB")?;
    let path = PathSpec {
        arrows: vec![half.clone(), rev.clone()],
        exponents: vec![-1],
    };
    let w = n.generate_string(&path).map_err(|e| e.to_string())?;
    ensure!(
        n.render(&w) == "e a",
        "negative exponent gives {}",
        n.render(&w)
    );

    let g = fixtures::gp23();
    let b = g.parse_word("b'").map_err(|e| e.to_string())?;
    let paths = g.generating_paths(&b, 3, 10);
    ensure!(paths.len() >= 2, "{} generating paths for B", paths.len());

    let mut total = 0;
    for (name, _) in fixtures::ALL {
        let a = fixtures::by_name(name).ok_or(name)?;
        for u in a.enumerate_strings(10, false) {
            total += 1;
            let p = a
                .find_generating_path(&u)
                .ok_or(format!("{name}: no path for {}", a.render(&u)))?;
            let back = a.generate_string(&p).map_err(|e| e.to_string())?;
            ensure!(
                back == u,
                "{name}: {} round-trips to {}",
                a.render(&u),
                a.render(&back)
            );
        }
    }
    Ok(format!(
        "e a from exponent -1, {} paths for B, {total} strings round-trip",
        paths.len()
    ))
}

fn ac6() -> Check {
    let g = fixtures::gp23();
    let x = g.parse_word("b'").map_err(|e| e.to_string())?;
    let w = g
        .find_recursive_system(&x, (0, Sign::Minus))
        .map_err(|e| e.to_string())?
        .ok_or("no recursive system")?;
    ensure!(g.verify_recursive_system(&w), "window verification failed");
    let terms = (
        w.mu.to_string(),
        w.tau1.to_string(),
        w.tau.to_string(),
        w.tau2.to_string(),
    );
    ensure!(
        terms == ("lbar_1 lbar".into(), "l".into(), "l_1".into(), "l".into()),
        "terms {terms:?}"
    );
    let base = Word::lazy(0, Sign::Minus);
    let u = g.apply_graded(Op::L, &base, 1).map_err(|e| e.to_string())?;
    let d = GraphMapDescriptor::Ss {
        w: base.clone(),
        v: base,
        u,
    };
    let rank = g.rank_ss(&d).map_err(|e| e.to_string())?;
    ensure!(
        rank.class == RankClass::StableRadical,
        "inclusion ranked {:?}",
        rank.class
    );
    Ok(format!(
        "<lbar_1 lbar | l l_1 l>(1) = l_1(1) over window {}, inclusion stable radical",
        w.window
    ))
}

fn ac7() -> Check {
    let expected = [
        (fixtures::stable_omega(), StableRank::Omega, 3),
        (
            fixtures::stable_omega_plus_one(),
            StableRank::OmegaPlusOne,
            2,
        ),
        (
            fixtures::stable_omega_plus_two(),
            StableRank::OmegaPlusTwo,
            2,
        ),
    ];
    let mut got = Vec::new();
    for (a, rank, primes) in expected {
        let est = a.stable_rank_estimate().map_err(|e| e.to_string())?;
        let count = a.prime_bands().len() / 2;
        ensure!(
            est.value == rank,
            "{}: {} instead of {rank}",
            a.name(),
            est.value
        );
        ensure!(
            count == primes,
            "{}: {count} prime bands up to inverse",
            a.name()
        );
        got.push(format!("{}/{count}", est.value));
    }
    Ok(got.join(", "))
}

fn ac8() -> Check {
    let start = Instant::now();
    let budget = OracleBudget::default();
    let mut checks = 0;
    let mut population = 0;
    for (name, _) in fixtures::ALL {
        let a = fixtures::by_name(name).ok_or(name)?;
        for r in run_all_checks(&a, &budget) {
            checks += 1;
            population += r.population;
            ensure!(r.passed(), "{name} {}: {:?}", r.check, r.mismatches.first());
        }
    }
    let elapsed = start.elapsed();
    ensure!(
        elapsed <= Duration::from_secs(60),
        "oracle took {elapsed:?}"
    );
    Ok(format!(
        "{checks} checks over {population} cases, zero mismatches in {elapsed:.1?}"
    ))
}

fn ac9() -> Check {
    let mut done = Vec::new();
    for a in [
        fixtures::stable_omega(),
        fixtures::stable_omega_plus_one(),
        fixtures::stable_omega_plus_two(),
    ] {
        let audit = a.ss_audit(8);
        for (class, count) in &audit.counts {
            ensure!(
                *count == 0 || matches!(class, RankClass::Finite | RankClass::StableRadical),
                "{}: {count} descriptors ranked {class:?}",
                a.name()
            );
        }
        done.push(audit.descriptors.to_string());
    }
    let l = fixtures::lambda2();
    ensure!(
        !l.classify_algebra().meta_torsion_free,
        "lambda2 meta-torsion-free"
    );
    let audit = l.ss_audit(8);
    ensure!(
        audit.first_indeterminate.is_some(),
        "no indeterminate descriptor on lambda2"
    );
    Ok(format!(
        "{} descriptors dichotomous; lambda2 has an indeterminate one",
        done.join("+")
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1", ac1),
        ("AC2", ac2),
        ("AC3", ac3),
        ("AC4", ac4),
        ("AC5", ac5),
        ("AC6", ac6),
        ("AC7", ac7),
        ("AC8", ac8),
        ("AC9", ac9),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match std::panic::catch_unwind(check) {
            Ok(Ok(detail)) => println!("{name} PASS {detail}"),
            Ok(Err(why)) => {
                failed += 1;
                println!("{name} FAIL {why}");
            }
            Err(_) => {
                failed += 1;
                println!("{name} FAIL panicked");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
