//! The invariant suite behind `cmlp check` and the acceptance target.

use std::time::{Duration, Instant};

use cmlp_dirichlet::{char_table, gauss_sum, gen_bernoulli_l, DirichletChar};
use cmlp_hecke::{conductor_ppart, enumerate_chars, HeckeChar};
use cmlp_lfun::{
    forward_differences, interpolation_check, lp_two_var_coeffs, lp_value, lp_value_twisted,
    monomial_differences, orthogonality_vanish, InterpolationData, MockOracle, OracleContext,
    PolynomialFamily,
};
use cmlp_nabla::{check_coleman, check_commutation, nabla_nu, nabla_steps, WSection};
use cmlp_padic::{euler_phi, CycloRational, Padic, RootEmbedding};
use cmlp_qexp::{
    deplete, deplete_eigen, eisenstein, eisenstein_eigenvalue, op_u, op_v, QExpansion,
};
use cmlp_quadform::{hgroup, is_fundamental, kronecker, HGroup};
use cmlp_valuation::{canonical_valuations, radius_params, sweep, LocalCase, Q};
use cmlp_weights::Weight;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Quick,
    Full,
}

impl Scale {
    fn pick<T>(self, quick: T, full: T) -> T {
        match self {
            Scale::Quick => quick,
            Scale::Full => full,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl Outcome {
    pub fn within_limit(&self) -> bool {
        self.elapsed <= self.limit
    }

    pub fn line(&self) -> String {
        let verdict = if self.passed && self.within_limit() { "PASS" } else { "FAIL" };
        format!(
            "{verdict} {:>2} {:<28} {:>8.3}s (limit {}s) {}",
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

fn timed(
    id: u32,
    name: &'static str,
    limit_secs: u64,
    f: impl FnOnce() -> Result<String, String>,
) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome { id, name, passed, detail, elapsed, limit: Duration::from_secs(limit_secs) }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn random_depleted(p: u64, truncation: usize, precision: u32, rng: &mut ChaCha8Rng) -> QExpansion {
    let coeffs: Vec<i64> = (0..=truncation)
        .map(|n| if (n as u64).is_multiple_of(p) { 0 } else { rng.random_range(-10_000..10_000) })
        .collect();
    QExpansion::from_integers(p, precision, &coeffs)
}

pub fn operator_identities(scale: Scale) -> Outcome {
    timed(1, "operator identities", scale.pick(1, 1) * 3, || {
        let terms = scale.pick(60, 200);
        let mut checked = 0;
        for p in [5u64, 7] {
            let forms: Vec<(u32, DirichletChar)> = vec![
                (4, DirichletChar::trivial(1)),
                (6, DirichletChar::trivial(1)),
                (3, DirichletChar::quadratic(3)),
            ];
            for (k, chi) in forms {
                let f = eisenstein(k, &chi, terms, p, 20).map_err(err)?;
                ensure(op_u(&op_v(&f)).approx_eq(&f), || format!("UV != Id (p={p}, k={k})"))?;
                ensure(op_u(&deplete(&f)).is_zero(), || format!("U deplete != 0 (p={p})"))?;
                let a_p = eisenstein_eigenvalue(k, &chi, p, 20).map_err(err)?;
                let nebentype = (!chi.is_trivial()).then_some(&chi);
                let eigen = deplete_eigen(&f, &a_p, k, nebentype).map_err(err)?;
                ensure(eigen.approx_eq(&deplete(&f)), || {
                    format!("deplete_eigen != deplete (p={p}, k={k})")
                })?;
                checked += 1;
            }
        }
        Ok(format!("{checked} Eisenstein series, {terms} coefficients"))
    })
}

pub fn specialization(scale: Scale) -> Outcome {
    timed(2, "nabla specialization", 10, || {
        let terms = scale.pick(40, 100);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let mut count = 0;
        for p in [5u64, 7] {
            for k in [2i64, 4] {
                let f = random_depleted(p, terms, 20, &mut rng);
                let kw = Weight::classical(p, k);
                for m in 0..=5i64 {
                    let (direct, _) = nabla_nu(&f, &kw, &Weight::classical(p, m), m as usize)
                        .map_err(err)?;
                    let start = WSection::concentrated(kw.clone(), f.clone(), 0);
                    let stepped = nabla_steps(&start, m as usize);
                    ensure(direct.approx_eq(&stepped), || format!("p={p} k={k} m={m}"))?;
                    count += 1;
                }
            }
        }
        Ok(format!("{count} cases"))
    })
}

pub fn commutation(scale: Scale) -> Outcome {
    timed(3, "commutation", 5, || {
        let n = scale.pick(10, 50);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for i in 0..n {
            let p = if i % 2 == 0 { 5 } else { 7 };
            let f = random_depleted(p, 60, 20, &mut rng);
            let report = check_commutation(&f, &Weight::classical(p, 2 + 2 * (i % 3) as i64));
            ensure(report.passed(), || format!("series {i}: {report:?}"))?;
        }
        Ok(format!("{n} random depleted series"))
    })
}

pub fn coleman_chain(scale: Scale) -> Outcome {
    timed(4, "coleman chain", 10, || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let terms = scale.pick(30, 60);
        let mut count = 0;
        for p in [5u64, 7] {
            let h = random_depleted(p, terms, 20, &mut rng);
            for r in 0..=4 {
                let c = check_coleman(&h, r).map_err(err)?;
                ensure(c.passed(), || format!("p={p} r={r}: {c:?}"))?;
                count += 1;
            }
        }
        Ok(format!("{count} (p, r) pairs"))
    })
}

/// Reduced primitive forms of discriminant d, counted directly.
fn count_reduced(d: i64) -> u64 {
    let mut h = 0;
    let mut a = 1i64;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            if gcd(gcd(a, b.abs()), c) == 1 {
                h += 1;
            }
        }
        a += 1;
    }
    h
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// h(O_c) = h(O_K) c / [O_K^*: O_c^*] prod_{l | c} (1 - (D/l)/l).
fn order_class_number(d: i64, c: u64) -> u64 {
    let hk = count_reduced(d) as i128;
    let mut num = hk * c as i128;
    let mut den = 1i128;
    for l in prime_factors(c) {
        num *= l as i128 - kronecker(d, l) as i128;
        den *= l as i128;
    }
    let units = match (d, c) {
        (_, 1) => 1,
        (-3, _) => 3,
        (-4, _) => 2,
        _ => 1,
    };
    (num / (den * units)) as u64
}

pub fn group_theory(scale: Scale) -> Outcome {
    timed(5, "group orders", 30, || {
        let want = scale.pick(20, 60);
        let conductors = [1u64, 2, 3, 4, 5, 6, 7, 9, 10, 11, 15, 25];
        let mut triples = Vec::new();
        // discriminants spaced geometrically, conductors cycled
        let mut threshold = 3.0f64;
        let mut turn = 0;
        let mut d = -3i64;
        while triples.len() < want && d > -100_000 {
            if is_fundamental(d) && (-d) as f64 >= threshold {
                threshold *= 1.15;
                let fits: Vec<u64> =
                    conductors.iter().copied().filter(|&c| (c * c) as i64 * -d <= 100_000).collect();
                let c = fits[turn % fits.len()];
                turn += 1;
                let found = [2u64, 3, 5, 7, 11, 13, 17, 19, 23]
                    .into_iter()
                    .filter(|&n| gcd(c as i64, n as i64) == 1)
                    .find_map(|n| hgroup(d, c, n).ok().map(|hg| (d, c, n, hg)));
                triples.extend(found);
            }
            d -= 1;
        }
        ensure(triples.len() >= want, || format!("only {} triples", triples.len()))?;
        for (d, c, n, hg) in &triples {
            let h = hg.classes().class_number() as u64;
            ensure(h == order_class_number(*d, *c), || {
                format!("h(O_{c}) for D={d}: enumeration {h}, formula {}", order_class_number(*d, *c))
            })?;
            ensure(hg.len() as u64 == euler_phi(*n) * h, || format!("|H| for ({d},{c},{n})"))?;
        }
        let max = triples.iter().map(|t| t.1 * t.1 * t.0.unsigned_abs()).max().unwrap_or(0);
        Ok(format!("{} triples, max c^2|D| = {max}", triples.len()))
    })
}

pub fn valuation_tables(_: Scale) -> Outcome {
    timed(6, "valuation tables", 1, || {
        for p in [3u64, 5, 7, 13] {
            let pi = p as i128;
            for n in 1..=4u32 {
                let i = canonical_valuations(p, LocalCase::Inert, n).map_err(err)?;
                let r = canonical_valuations(p, LocalCase::Ramified, n).map_err(err)?;
                ensure(i.hdg == Q::new(1, pi.pow(n - 1) * (pi + 1)), || format!("hdg inert {p} {n}"))?;
                ensure(r.hdg == Q::new(1, 2 * pi.pow(n)), || format!("hdg ramified {p} {n}"))?;
                ensure(i.period == Q::new(1, pi.pow(n - 1) * (pi * pi - 1)), || {
                    format!("period inert {p} {n}")
                })?;
                ensure(r.period == Q::new(1, 2 * pi.pow(n) * (pi - 1)), || {
                    format!("period ramified {p} {n}")
                })?;
            }
        }
        let c = radius_params(true, 5).map_err(err)?;
        let a = radius_params(false, 5).map_err(err)?;
        ensure(c.n_inert == 2 && a.n_inert == 3, || format!("n_k(5): {} {}", c.n_inert, a.n_inert))?;
        Ok("p in {3,5,7,13}, n <= 4; n_k(5) = 2, 3".into())
    })
}

pub fn inequality_sweeps(scale: Scale) -> Outcome {
    timed(7, "inequality sweeps", 60, || {
        let j_max = scale.pick(10_000, 100_000);
        let reports = sweep(&[5, 7, 11], j_max, 10);
        let failing: Vec<String> = reports
            .iter()
            .filter(|r| !r.holds())
            .map(|r| {
                format!(
                    "{} p={}: {} (margin {})",
                    r.name,
                    r.prime,
                    r.first_counterexample.clone().unwrap_or_default(),
                    r.worst_margin
                )
            })
            .collect();
        if failing.is_empty() {
            Ok(format!("{} checks, j <= {j_max}, h <= 10", reports.len()))
        } else {
            Err(format!("counterexamples: {}", failing.join("; ")))
        }
    })
}

pub const ASSEMBLY_CONTEXTS: [(u64, i64, u64, u64); 4] =
    [(5, -3, 7, 25), (5, -15, 2, 25), (7, -4, 5, 49), (7, -7, 2, 49)];

fn wide_characters(hg: &HGroup, p: u64, level: u64) -> Result<Vec<HeckeChar>, String> {
    let chars = enumerate_chars(hg, 2, 0, &DirichletChar::trivial(level)).map_err(err)?;
    let mut out = Vec::new();
    for c in chars {
        if conductor_ppart(&c, p).map_err(err)? == 2 {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn assembly_laws(scale: Scale) -> Outcome {
    timed(8, "assembly laws", 30, || {
        let oracles = scale.pick(3, 10);
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for (p, d, n, c) in ASSEMBLY_CONTEXTS {
            let hg = hgroup(d, c, n).map_err(err)?;
            let ctx = OracleContext::for_group(&hg, p, 2, 20).map_err(err)?;
            let gate = radius_params(true, p).map_err(err)?;
            let gate = Some(match ctx.case {
                LocalCase::Inert => gate.n_inert,
                LocalCase::Ramified => gate.n_ramified,
            });
            let wide = wide_characters(&hg, p, n)?;
            ensure(!wide.is_empty(), || format!("no conductor p^2 characters for D={d}"))?;
            for chi in &wide {
                let o = orthogonality_vanish(chi, p, 1).map_err(err)?;
                ensure(o.vanishes, || format!("kernel sum nonzero D={d}"))?;
            }
            let pn = (p as i64).pow(ctx.n);
            for seed in 0..oracles as u64 {
                let chi = &wide[seed as usize % wide.len()];
                let mock = MockOracle::new(ctx.clone(), hg.len(), seed);
                let nu = Weight::classical(p, 1 + seed as i64);
                let base = lp_value(chi, &hg, &mock, &nu, gate).map_err(err)?;
                let twists: Vec<Padic> = (0..hg.len())
                    .map(|_| Padic::from_int(p, 1 + pn * rng.random_range(-1000..1000), 20))
                    .collect();
                let moved =
                    lp_value_twisted(chi, &hg, &mock, &nu, &twists, gate).map_err(err)?;
                ensure(base.agrees(&moved), || format!("r-twist changed the value D={d}"))?;

                let data = InterpolationData::random(&hg, ctx.clone(), seed).map_err(err)?;
                let a_p = Padic::from_int(p, rng.random_range(-50..50), 20);
                let eps_p = Padic::exact(p, 1);
                let rep = interpolation_check(chi, &hg, &data, &a_p, &eps_p, 0, gate)
                    .map_err(err)?;
                ensure(rep.agree && rep.lower_terms.iter().all(|t| t.is_zero()), || {
                    format!("interpolation mismatch D={d} seed={seed}")
                })?;
            }
        }
        Ok(format!("4 contexts x {oracles} synthetic oracles"))
    })
}

pub fn polynomial_family(scale: Scale) -> Outcome {
    timed(9, "polynomial family", 30, || {
        let contexts = scale.pick(&ASSEMBLY_CONTEXTS[..2], &ASSEMBLY_CONTEXTS[..]);
        for &(p, d, n, c) in contexts {
            let hg = hgroup(d, c, n).map_err(err)?;
            let ctx = OracleContext::for_group(&hg, p, 2, 20).map_err(err)?;
            let wide = wide_characters(&hg, p, n)?;
            for degree in 0..=4usize {
                let chi = &wide[degree % wide.len()];
                let fam = PolynomialFamily::random(ctx.clone(), hg.len(), degree, 90 + degree as u64);
                let coeffs: Vec<_> = lp_two_var_coeffs(chi, &hg, &fam, None)
                    .map_err(err)?
                    .into_iter()
                    .map(|l| l.value)
                    .collect();
                let nu = Weight::trivial(p);
                let mut points = Vec::new();
                for u in 0..=degree as i64 {
                    let o = fam.specialize(&Padic::exact(p, u));
                    points.push(lp_value(chi, &hg, &o, &nu, None).map_err(err)?.value);
                }
                let lhs = forward_differences(&points);
                let rhs = monomial_differences(&coeffs);
                ensure(lhs.iter().zip(&rhs).all(|(a, b)| a.approx_eq(b)), || {
                    format!("D={d} degree {degree}")
                })?;
            }
        }
        Ok(format!("{} contexts, D <= 4", contexts.len()))
    })
}

pub fn eisenstein_constants(_: Scale) -> Outcome {
    timed(10, "eisenstein constants", 10, || {
        let p = 5;
        let trivial = DirichletChar::trivial(1);
        let e4 = eisenstein(4, &trivial, 10, p, 20).map_err(err)?;
        let (_, l) = gen_bernoulli_l(&trivial, 4);
        let l = l.as_constant().ok_or("L(-3) not rational")?;
        let expected = BigRational::new(BigInt::from(1), BigInt::from(120));
        ensure(l == expected, || format!("L(-3) = {l}"))?;
        let emb = RootEmbedding::new(p, 20);
        let mapped = emb.rational_cyclo(&CycloRational::rational(1, l)).map_err(err)?;
        ensure(e4.coeff(0).approx_eq(&mapped), || "constant term".into())?;
        let mut count = 0;
        for modulus in 1..=12u64 {
            for eps in char_table(modulus) {
                if !eps.is_primitive() {
                    continue;
                }
                let s = gauss_sum(&eps).map_err(err)?;
                let sbar = gauss_sum(&eps.conjugate()).map_err(err)?;
                let sign = if eps.is_even() { 1 } else { -1 };
                let target = CycloRational::integer(1, sign * modulus as i64);
                ensure(s.mul(&sbar) == target, || format!("Gauss sum norm, N = {modulus}"))?;
                count += 1;
            }
        }
        Ok(format!("E_4 constant 1/120; {count} primitive characters"))
    })
}

pub fn run_all(scale: Scale) -> Vec<Outcome> {
    vec![
        operator_identities(scale),
        specialization(scale),
        commutation(scale),
        coleman_chain(scale),
        group_theory(scale),
        valuation_tables(scale),
        inequality_sweeps(scale),
        assembly_laws(scale),
        polynomial_family(scale),
        eisenstein_constants(scale),
    ]
}
