//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
//!
//! Runs without the libtest harness so the lines are always printed.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fewnomial::rootcount::{count_distinct, count_with_multiplicity, sturm_count_distinct};
use fewnomial::sharpsearch::{
    critical_pattern, derive_phi, filter_exponents, search, FilterOutcome, NecessaryCondition,
    SearchConfig,
};
use fewnomial::signvar::{newton_interval, sign_variations, strictly_inside, v_interval};
use fewnomial::theorem::{bound_for, verify_batch};
use fewnomial::{
    substitute_line, Bound, DensePoly, DistributionTarget, ExponentTuple, Fewnomial2, IntervalId,
    Line, Rational, Term, Transform,
};
use fewnomial_cli::{ReproduceOutput, PUBLISHED_ROOTS};

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], ok_detail: String) -> Self {
        if failures.is_empty() {
            Outcome {
                pass: true,
                detail: ok_detail,
            }
        } else {
            Outcome {
                pass: false,
                detail: failures.join("; "),
            }
        }
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_fewnomial"))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn random_dense(rng: &mut ChaCha8Rng, max_deg: usize, zero_bias: f64) -> DensePoly {
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<Rational> = (0..=deg)
            .map(|_| {
                if rng.gen_bool(zero_bias) {
                    Rational::zero()
                } else {
                    Rational::from(rng.gen_range(-20i64..=20))
                }
            })
            .collect();
        let p = DensePoly::from_coeffs(coeffs);
        if !p.is_zero() {
            return p;
        }
    }
}

fn random_sparse(rng: &mut ChaCha8Rng, t: usize, max_exp: usize) -> DensePoly {
    let mut coeffs = vec![Rational::zero(); max_exp + 1];
    let mut placed = 0;
    while placed < t {
        let e = rng.gen_range(0..=max_exp);
        if coeffs[e].is_zero() {
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-30i64..=30);
            }
            coeffs[e] = Rational::from(c);
            placed += 1;
        }
    }
    DensePoly::from_coeffs(coeffs)
}

fn random_fewnomial(rng: &mut ChaCha8Rng, t: usize, max_exp: u32, coeff_bound: i64) -> Fewnomial2 {
    let mut pairs = BTreeSet::new();
    while pairs.len() < t {
        pairs.insert((rng.gen_range(0..=max_exp), rng.gen_range(0..=max_exp)));
    }
    let terms = pairs
        .into_iter()
        .map(|(bx, by)| {
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-coeff_bound..=coeff_bound);
            }
            Term::new(Rational::from(c), bx, by)
        })
        .collect();
    Fewnomial2::from_terms(terms).unwrap()
}

// ---------------------------------------------------------------------------

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let out = bin()
        .args(["reproduce", "--json"])
        .output()
        .expect("run reproduce");
    let elapsed = start.elapsed();
    let mut failures = Vec::new();
    if out.status.code() != Some(0) {
        failures.push(format!("reproduce exited with {:?}", out.status.code()));
    }
    let doc: ReproduceOutput = match serde_json::from_slice(&out.stdout) {
        Ok(d) => d,
        Err(e) => {
            return Outcome::new(
                &[format!("unparseable reproduce output: {e}")],
                String::new(),
            )
        }
    };
    let ex = &doc.example;
    if ex.a != q(-601, 250_000) || ex.b != 29 {
        failures.push(format!(
            "unexpected coefficients a = {}, b = {}",
            ex.a, ex.b
        ));
    }
    if ex.reduced_counts != [4, 2, 3] {
        failures.push(format!("reduced counts {:?}", ex.reduced_counts));
    }
    if !ex.all_simple {
        failures.push("reduced roots not all simple".into());
    }
    let r = &ex.report;
    if r.total != 11 || !r.root_at_zero || !r.root_at_special {
        failures.push(format!(
            "total {} (root at 0: {}, at -1: {})",
            r.total, r.root_at_zero, r.root_at_special
        ));
    }
    let tol = q(1, 10_000);
    let mut computed: Vec<Rational> = ex.roots.iter().map(|iv| iv.midpoint()).collect();
    computed.sort();
    let mut published: Vec<Rational> = PUBLISHED_ROOTS.iter().map(|s| s.parse().unwrap()).collect();
    published.sort();
    if computed.len() != 9 {
        failures.push(format!("{} reduced roots instead of 9", computed.len()));
    } else {
        for (c, p) in computed.iter().zip(&published) {
            if (c - p).abs() > tol {
                failures.push(format!(
                    "root {} vs published {}",
                    c.to_decimal_string(6),
                    p.to_decimal_string(5)
                ));
            }
        }
    }
    if elapsed > Duration::from_secs(5) {
        failures.push(format!("took {elapsed:?}"));
    }
    Outcome::new(
        &failures,
        format!("11 points, counts 4/2/3, nine roots within 1e-4 of the published values ({elapsed:.2?})"),
    )
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for t in 2..=5usize {
        let b = verify_batch(t, 10_000, 30, 50, 20_240_611);
        summary.push(format!(
            "t={t}: max {} (bound {})",
            b.max_total,
            bound_for(t, false)
        ));
        if let Some(v) = b.violations.first() {
            failures.push(format!(
                "t={t}: {} violations, e.g. f = {} on line {} has {} > {}",
                b.violations.len(),
                v.poly,
                v.line,
                v.report.total,
                v.report.bound
            ));
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(120) {
        failures.push(format!("took {elapsed:?}"));
    }
    Outcome::new(
        &failures,
        format!(
            "0 violations in 4 x 10,000 instances; {} ({elapsed:.1?})",
            summary.join(", ")
        ),
    )
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut failures: Vec<String> = Vec::new();
    let mut fail = |name: &str, msg: String| {
        if failures.iter().filter(|f| f.starts_with(name)).count() < 2 {
            failures.push(format!("{name}: {msg}"));
        }
    };
    let x_plus_one = DensePoly::from_i64(&[1, 1]);

    for _ in 0..1000 {
        let f = random_dense(&mut rng, 30, 0.3);
        let g = &x_plus_one * &f;
        if sign_variations(&g).unwrap() > sign_variations(&f).unwrap() {
            fail("V((x+1)f) <= V(f)", format!("f = {f}"));
        }
    }

    let mut equalities = 0;
    for _ in 0..1000 {
        let f = random_dense(&mut rng, 25, 0.4);
        let t = rng.gen_range(1..=4);
        let g = random_sparse(&mut rng, t, 25);
        let sum = &f + &g;
        if sum.is_zero() {
            continue;
        }
        let (vs, vf) = (sign_variations(&sum).unwrap(), sign_variations(&f).unwrap());
        if vs > vf + 2 * t {
            fail("V(f+g) <= V(f)+2t", format!("f = {f}, g = {g}"));
        }
        if vs == vf + 2 * t {
            equalities += 1;
            if !strictly_inside(newton_interval(&g).unwrap(), newton_interval(&f).unwrap()) {
                fail("equality implies containment", format!("f = {f}, g = {g}"));
            }
        }
    }

    for _ in 0..1000 {
        let t = rng.gen_range(1..=5);
        let f = random_fewnomial(&mut rng, t, 20, 50);
        let g = substitute_line(&f, &Line::unit());
        if !g.is_zero() && sign_variations(&g).unwrap() > 2 * t - 2 {
            fail("V(f(x,x+1)) <= 2t-2", format!("f = {f}"));
        }
    }

    // The identities are stated for transforms that keep the degree, i.e.
    // h(0) != 0 and h(-1) != 0.
    let mut checked = 0;
    while checked < 1000 {
        let h = random_dense(&mut rng, 16, 0.2);
        if h.coeff(0).is_zero() || h.eval(&Rational::from(-1)).is_zero() {
            continue;
        }
        checked += 1;
        use IntervalId::*;
        let v = |p: &DensePoly, i| v_interval(p, i).unwrap();
        let h1 = h.transform(Transform::H1).unwrap();
        let h2 = h.transform(Transform::H2).unwrap();
        let h3 = h.transform(Transform::H3).unwrap();
        let identities = [
            (v(&h1, I1), v(&h, I1)),
            (v(&h2, I2), v(&h, I2)),
            (v(&h3, I3), v(&h, I3)),
            (v(&h2, I1), v(&h, I3)),
            (v(&h3, I1), v(&h, I2)),
            (v(&h1, I2), v(&h, I3)),
            (v(&h3, I2), v(&h, I1)),
            (v(&h1, I3), v(&h, I2)),
            (v(&h2, I3), v(&h, I1)),
        ];
        if identities.iter().any(|(a, b)| a != b) {
            fail("interval symmetry identities", format!("h = {h}"));
        }
    }

    let mut sum_failures: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..1000 {
        let t = 2 + i % 4;
        let f = random_fewnomial(&mut rng, t, 30, 50);
        let g = substitute_line(&f, &Line::unit());
        if g.is_zero() {
            continue;
        }
        let total: usize = IntervalId::ALL
            .iter()
            .map(|&id| v_interval(&g, id).unwrap())
            .sum();
        if total as i64 > 6 * t as i64 - 9 {
            *sum_failures.entry(t).or_default() += 1;
            fail(
                "V_I1+V_I2+V_I3 <= 6t-9",
                format!("t = {t}, f = {f}, sum {total}"),
            );
        }
    }
    if !sum_failures.is_empty() {
        failures.push(format!("sum bound failures by t: {sum_failures:?}"));
    }
    Outcome::new(
        &failures,
        format!("all sign-variation checks hold on 1,000 samples each ({equalities} equality cases of V(f+g) = V(f)+2t)"),
    )
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let random_bound =
        |rng: &mut ChaCha8Rng, roots: &[(Rational, usize)]| match rng.gen_range(0..10) {
            0 => Bound::NegInf,
            1 => Bound::PosInf,
            // land exactly on a root now and then
            2 if !roots.is_empty() => Bound::Finite(roots[rng.gen_range(0..roots.len())].0.clone()),
            _ => Bound::Finite(q(rng.gen_range(-60..=60), rng.gen_range(1..=5))),
        };
    let mut built = 0;
    let mut queries = 0;
    while built < 500 {
        let mut roots: BTreeMap<Rational, usize> = BTreeMap::new();
        let mut poly = DensePoly::constant(Rational::from(
            rng.gen_range(1i64..=5) * if rng.gen_bool(0.5) { 1 } else { -1 },
        ));
        let mut degree = 0;
        for _ in 0..rng.gen_range(0..=6) {
            let m = rng.gen_range(1..=3);
            let r = q(rng.gen_range(-12..=12), rng.gen_range(1..=4));
            if degree + m > 12 {
                break;
            }
            degree += m;
            *roots.entry(r.clone()).or_default() += m;
            poly = &poly * &DensePoly::from_coeffs(vec![-r, Rational::one()]).pow(m as u32);
        }
        for _ in 0..rng.gen_range(0..=2) {
            if degree + 2 > 12 {
                break;
            }
            degree += 2;
            let (s, c) = (rng.gen_range(-5i64..=5), rng.gen_range(1i64..=9));
            poly = &poly * &DensePoly::from_i64(&[s * s + c, -2 * s, 1]);
        }
        if poly.degree() == Some(0) {
            continue;
        }
        built += 1;
        let roots: Vec<(Rational, usize)> = roots.into_iter().collect();
        for _ in 0..100 {
            let (a, b) = (
                random_bound(&mut rng, &roots),
                random_bound(&mut rng, &roots),
            );
            let (lo, hi) = match a.cmp(&b) {
                std::cmp::Ordering::Less => (a, b),
                std::cmp::Ordering::Greater => (b, a),
                std::cmp::Ordering::Equal => continue,
            };
            queries += 1;
            let within = |x: &Rational, closed: bool| {
                let x = Bound::Finite(x.clone());
                lo < x && (x < hi || (closed && x == hi))
            };
            let truth_half = roots.iter().filter(|(r, _)| within(r, true)).count();
            let truth_open = roots.iter().filter(|(r, _)| within(r, false)).count();
            let mult_open: usize = roots
                .iter()
                .filter(|(r, _)| within(r, false))
                .map(|(_, m)| m)
                .sum();
            let mult_closed: usize = roots
                .iter()
                .filter(|(r, _)| within(r, true))
                .map(|(_, m)| m)
                .sum();
            let got = (
                sturm_count_distinct(&poly, &lo, &hi).unwrap(),
                count_distinct(&poly, &lo, &hi).unwrap(),
                count_with_multiplicity(&poly, &lo, &hi, true).unwrap(),
                count_with_multiplicity(&poly, &lo, &hi, false).unwrap(),
            );
            if got != (truth_half, truth_open, mult_open, mult_closed) && failures.len() < 3 {
                failures.push(format!(
                    "p = {poly} on ({lo}, {hi}): got {got:?}, expected {:?}",
                    (truth_half, truth_open, mult_open, mult_closed)
                ));
            }
        }
    }
    Outcome::new(
        &failures,
        format!("{built} polynomials, {queries} interval queries, all counts match"),
    )
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = Vec::new();
    let one_plus_x = DensePoly::from_i64(&[1, 1]);
    for _ in 0..100 {
        let k2 = rng.gen_range(2u32..=14);
        let k3 = rng.gen_range(1..k2);
        let l2 = rng.gen_range(0u32..=8);
        let l1 = k2 + l2 + 1 + rng.gen_range(0u32..=10);
        let e = ExponentTuple::new(k2, k3, l2, l1).unwrap();
        let mut bn = 0;
        while bn == 0 {
            bn = rng.gen_range(-500i64..=500);
        }
        let b = q(bn, rng.gen_range(1..=12));
        let phi = derive_phi(&b, &e).unwrap();
        // (1+x)^(l1+1) f' = N'(1+x) - l1 N for f = N / (1+x)^l1
        let n = &DensePoly::binomial_power(l2 as usize)
            .shift_up(k2 as usize)
            .scale(&b)
            + &DensePoly::monomial(Rational::one(), k3 as usize);
        let lhs = &(&n.derivative() * &one_plus_x) - &n.scale(&Rational::from(l1 as i64));
        let rhs = (&(&DensePoly::binomial_power(l2 as usize).shift_up((k2 - k3) as usize)
            * &phi.a1)
            .scale(&b)
            + &phi.a2)
            .shift_up(k3 as usize - 1);
        if !(&lhs - &rhs).is_zero() {
            failures.push(format!("identity fails for b = {b}, {e}"));
        }
    }
    let e = ExponentTuple::new(5, 2, 2, 17).unwrap();
    let b = Rational::from(29);
    let pattern = critical_pattern(&b, &e).unwrap();
    if pattern != [3, 1, 2] {
        failures.push(format!("pattern {pattern:?} instead of [3, 1, 2]"));
    }
    let phi = derive_phi(&b, &e).unwrap();
    if phi.rho1 != q(1, 2) || phi.rho2 != q(2, 15) {
        failures.push(format!("rho1 = {}, rho2 = {}", phi.rho1, phi.rho2));
    }
    Outcome::new(
        &failures,
        "identity exact on 100 tuples; pattern (3,1,2), rho1 = 1/2, rho2 = 2/15".into(),
    )
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let target = DistributionTarget::canonical();
    let mut failures = Vec::new();
    let mut b_grid: Vec<Rational> = (-6..=16).map(|k| Rational::from(2).pow(k)).collect();
    b_grid.extend([
        Rational::from(29),
        Rational::from(-1),
        Rational::from(-29),
        Rational::from(-1024),
    ]);
    let config = SearchConfig {
        k2: 1..=18,
        k3: 1..=18,
        l2: 0..=17,
        l1: 2..=19,
        b_grid,
        target,
        apply_filter: false,
        width: Rational::new(1, 100_000),
    };
    let tuples = ExponentTuple::enumerate(
        config.k2.clone(),
        config.k3.clone(),
        config.l2.clone(),
        config.l1.clone(),
    );
    let found = search(&config).unwrap();
    let certified: BTreeSet<ExponentTuple> = found
        .iter()
        .filter(|ex| ex.within_target)
        .map(|ex| ex.exponents)
        .collect();
    for e in &certified {
        if !filter_exponents(e, &target).unwrap().passed() {
            failures.push(format!("{e} is certified but rejected by the filter"));
        }
    }
    let published = ExponentTuple::new(5, 2, 2, 17).unwrap();
    if !certified.contains(&published) {
        failures.push("(5,2,2,17) not certified by the enumeration".into());
    }
    let expect = [
        ((5, 2, 2, 17), None),
        ((5, 2, 2, 16), Some(NecessaryCondition::Parity)),
        ((5, 6, 2, 17), Some(NecessaryCondition::NewtonInterval)),
        ((4, 2, 2, 17), Some(NecessaryCondition::Parity)),
    ];
    for ((k2, k3, l2, l1), want) in expect {
        let e = ExponentTuple::new(k2, k3, l2, l1).unwrap();
        let got = match filter_exponents(&e, &target).unwrap() {
            FilterOutcome::Pass => None,
            FilterOutcome::Fail { condition, .. } => Some(condition),
        };
        if got != want {
            failures.push(format!("{e}: filter gave {got:?}, expected {want:?}"));
        }
    }
    Outcome::new(
        &failures,
        format!(
            "{} tuples x {} b values searched; {} certified examples over {} tuples, all pass the filter; named tuples classified correctly ({:.1?})",
            tuples.len(),
            config.b_grid.len(),
            found.len(),
            certified.len(),
            start.elapsed()
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let run = |args: &[&str]| {
        let out = bin()
            .args(args)
            .env_remove("FEWNOMIAL_LOG")
            .output()
            .expect("run binary");
        (out.status.code(), out.stdout)
    };
    let verify = [
        "verify", "--t", "2..5", "--trials", "2000", "--seed", "7", "--json",
    ];
    let search = [
        "search",
        "--k2",
        "3..9",
        "--k3",
        "1..4",
        "--l2",
        "0..4",
        "--l1-range",
        "9..17",
        "--json",
    ];
    for (name, args) in [("verify", &verify[..]), ("search", &search[..])] {
        let base = run(args);
        let again = run(args);
        let one = run(&[args, &["--jobs", "1"]].concat());
        let four = run(&[args, &["--jobs", "4"]].concat());
        if base.1.is_empty() {
            failures.push(format!("{name} printed nothing"));
        }
        if base != again {
            failures.push(format!("{name} differs between identical runs"));
        }
        if one != four || one != base {
            failures.push(format!("{name} differs across pool sizes"));
        }
    }
    Outcome::new(
        &failures,
        "verify and search byte-identical across runs and --jobs 1/4/default".into(),
    )
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 reproduction of the eleven-point trinomial", criterion_1),
        ("2 intersection bound on random instances", criterion_2),
        ("3 sign-variation inequalities", criterion_3),
        (
            "4 root counts against constructed ground truth",
            criterion_4,
        ),
        ("5 critical-point machinery", criterion_5),
        ("6 exponent filter soundness", criterion_6),
        ("7 determinism", criterion_7),
    ];
    let mut all = true;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        all &= outcome.pass;
        println!(
            "{} criterion {name}: {} [{:.1?}]",
            if outcome.pass { "PASS" } else { "FAIL" },
            outcome.detail,
            start.elapsed()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
