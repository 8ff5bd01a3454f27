//! Acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::oracle::{self, Strategy};
use skewalg::amitsur::{lemma34_offenders, parse_r, PidExtension};
use skewalg::center::center_upto;
use skewalg::leftideal::{member_bruteforce, LeftIdeal};
use skewalg::module::{quotient_module, QuotientModule, ENUMERATION_BOUND};
use skewalg::monomials::{MultiIndex, OrderKind, TermOrder};
use skewalg::orepoly::OreRing;
use skewalg::pipeline::{cor47_pipeline, prop43_demo, weyl_demo};
use skewalg::scalars::Domain;
use skewalg::skewring::{SkewPoly, SkewRing};

/// A failed criterion. `known` marks a failure that is a property of the
/// mathematics rather than of the code; it is reported but does not fail the run.
struct Failure {
    msg: String,
    known: bool,
}

impl Failure {
    fn known(msg: String) -> Self {
        Failure { msg, known: true }
    }
}

impl From<String> for Failure {
    fn from(msg: String) -> Self {
        Failure { msg, known: false }
    }
}

type Outcome = Result<String, Failure>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<Duration, String> {
    let e = t.elapsed();
    ensure(e < limit, || format!("took {e:.2?}, limit {limit:?}"))?;
    Ok(e)
}

fn le_additivity() -> Outcome {
    let t = Instant::now();
    let rings = [
        ("GF(4)[x1,x2;Frob] lex", SkewRing::gf_frobenius(2, 2, 2, OrderKind::Lex).unwrap()),
        ("GF(9)[x1,x2;Frob] deglex", SkewRing::gf_frobenius(3, 2, 2, OrderKind::DegLex).unwrap()),
        ("Weyl Q[x,t] deglex", SkewRing::weyl(OrderKind::DegLex)),
        ("F2[y,x1,x2] lex", SkewRing::commutative(Domain::prime(2).unwrap(), &["y", "x1", "x2"], OrderKind::Lex).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (name, ring) in &rings {
        for i in 0..10_000 {
            let f = ring.random_nonzero(4, 4, &mut rng);
            let g = ring.random_nonzero(4, 4, &mut rng);
            let prod = ring.mul(&f, &g);
            let expect = &ring.le(&f).unwrap() + &ring.le(&g).unwrap();
            ensure(ring.le(&prod) == Some(expect.clone()), || {
                format!("{name}, pair {i}: le({} * {}) != {expect:?}", ring.format(&f), ring.format(&g))
            })?;
        }
    }
    let e = within(t, Duration::from_secs(30))?;
    Ok(format!("4 rings x 10^4 pairs in {e:.2?}"))
}

fn structural_endos() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let rings = common::shipped_rings();
    let mut maps = 0;
    for (name, ring) in &rings {
        let d = ring.domain();
        for k in 0..ring.nvars() {
            let e = ring.structural_endo(k).map_err(|err| format!("{name}: {err}"))?;
            ensure(e.eq_on_generators(ring.sigma(k), d), || {
                format!("{name}, var {k}: recovered {} but configured {}", e.format(d), ring.sigma(k).format(d))
            })?;
            ensure(e.apply(d, &d.one()) == d.one(), || format!("{name}, var {k}: unit not fixed"))?;
            for _ in 0..1000 {
                let (a, b) = (d.random(&mut rng), d.random(&mut rng));
                let (ea, eb) = (e.apply(d, &a), e.apply(d, &b));
                ensure(e.apply(d, &d.add(&a, &b)) == d.add(&ea, &eb), || {
                    format!("{name}, var {k}: not additive on {}, {}", d.format(&a), d.format(&b))
                })?;
                ensure(e.apply(d, &d.mul(&a, &b)) == d.mul(&ea, &eb), || {
                    format!("{name}, var {k}: not multiplicative on {}, {}", d.format(&a), d.format(&b))
                })?;
                ensure(ea == ring.sigma(k).apply(d, &a), || format!("{name}, var {k}: differs at {}", d.format(&a)))?;
            }
            maps += 1;
        }
    }
    Ok(format!("{maps} maps over {} descriptors, 10^3 pairs each", rings.len()))
}

fn division_contract() -> Outcome {
    let ore = OreRing::gf_frobenius(2, 2).unwrap();
    let d = ore.domain().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let random = |rng: &mut ChaCha8Rng, maxdeg: usize| {
        let deg = rng.gen_range(0..=maxdeg);
        ore.poly((0..=deg).map(|_| d.random(rng)).collect())
    };
    let mut oracle_checked = 0;
    for i in 0..10_000 {
        let f = random(&mut rng, 8);
        let mut g = random(&mut rng, 5);
        while g.is_zero() {
            g = random(&mut rng, 5);
        }
        let (q, r) = ore.right_divmod(&f, &g).map_err(|e| e.to_string())?;
        let qg = ore.mul(&q, &g);
        ensure(ore.add(&qg, &r) == f, || format!("pair {i}: f != q g + r for f = {}, g = {}", ore.format(&f), ore.format(&g)))?;
        ensure(r.degree().is_none_or(|dr| dr < g.degree().unwrap()), || format!("pair {i}: deg r >= deg g"))?;
        if i % 20 == 0 {
            let s = ore.as_skew();
            let w = oracle::word_mul(s, &ore.to_skew(&q), &ore.to_skew(&g), Strategy::LeftmostFirst);
            ensure(ore.from_skew_poly(&w) == qg, || format!("pair {i}: product disagrees with rewriting oracle"))?;
            oracle_checked += 1;
        }
    }
    Ok(format!("10^4 right divisions in GF(4)[x;Frob], {oracle_checked} products rechecked by rewriting"))
}

/// Members of `I` of total degree at most 3, built from the generators.
fn positives(ring: &SkewRing, ideal: &LeftIdeal, gb: &skewalg::leftideal::GroebnerBasis, rng: &mut ChaCha8Rng) -> Vec<SkewPoly> {
    let d = ring.domain();
    let mut out: Vec<SkewPoly> = ideal.gens().to_vec();
    for g in ideal.gens() {
        let room = 3 - g.total_degree().unwrap();
        let u = MultiIndex::random(ring.nvars(), room, rng);
        if u.degree() <= room {
            let c = d.random_nonzero(rng);
            out.push(ring.mul(&ring.monomial(u, c), g));
        }
    }
    for _ in 0..4 {
        let f = ring.random_nonzero(4, 3, rng);
        let m = ring.sub(&f, &gb.reduce(&f));
        if !m.is_zero() && m.total_degree().unwrap() <= 3 {
            out.push(m);
        }
    }
    out.retain(|f| !f.is_zero() && f.total_degree().unwrap() <= 3);
    out
}

fn gb_vs_bruteforce() -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut lines = Vec::new();
    let mut skipped = Vec::new();
    let mut unwitnessed: Vec<String> = Vec::new();
    let (mut total_pos, mut total_missed) = (0, 0);
    for (name, ring) in common::shipped_rings() {
        let ring = if ring.domain().is_polynomial() {
            match PidExtension::from_ring(&ring).and_then(|e| e.encode()) {
                Ok(enc) => enc,
                Err(_) => {
                    skipped.push(name);
                    continue;
                }
            }
        } else {
            ring
        };
        let (mut pos, mut neg, mut missed) = (0, 0, 0);
        for i in 0..200 {
            let ngens = rng.gen_range(1..=3);
            let gens: Vec<SkewPoly> = (0..ngens).map(|_| ring.random_nonzero(3, 3, &mut rng)).collect();
            let ideal = LeftIdeal::new(&ring, gens).map_err(|e| e.to_string())?;
            let gb = ideal.groebner().map_err(|e| format!("{name}, ideal {i}: {e}"))?;
            let mut probes: Vec<(SkewPoly, bool)> =
                positives(&ring, &ideal, &gb, &mut rng).into_iter().map(|f| (f, true)).collect();
            for _ in 0..3 {
                probes.push((ring.random_nonzero(4, 3, &mut rng), false));
            }
            for (f, known) in probes {
                let m = gb.member(&f);
                ensure(m || !known, || format!("{name}, ideal {i}: constructed member {} rejected", ring.format(&f)))?;
                let b = member_bruteforce(&f, &ideal, 6).map_err(|e| format!("{name}: {e}"))?;
                ensure(!b.is_yes() || m, || format!("{name}, ideal {i}: oracle proves {} but member says no", ring.format(&f)))?;
                if !m {
                    neg += 1;
                    continue;
                }
                pos += 1;
                if !b.is_yes() {
                    missed += 1;
                    if unwitnessed.len() < 2 && unwitnessed.iter().all(|u| !u.starts_with(&format!("{} in", ring.format(&f)))) {
                        let cap = (7..=12).find(|&c| member_bruteforce(&f, &ideal, c).is_ok_and(|b| b.is_yes()));
                        let gens: Vec<String> = ideal.gens().iter().map(|g| ring.format(g)).collect();
                        unwitnessed.push(format!(
                            "{} in <{}> over {name} first witnessed at cap {}",
                            ring.format(&f),
                            gens.join(", "),
                            cap.map_or("> 12".into(), |c| c.to_string())
                        ));
                    }
                }
            }
        }
        total_pos += pos;
        total_missed += missed;
        lines.push(format!("{name} {pos}+/{neg}-/{missed} unwitnessed"));
    }
    let e = within(t, Duration::from_secs(120))?;
    let summary = format!(
        "no contradictions; {}; skipped (no left Groebner bases over these coefficients): {}; {e:.2?}",
        lines.join(", "),
        if skipped.is_empty() { "none".into() } else { skipped.join(", ") }
    );
    if unwitnessed.is_empty() {
        return Ok(summary);
    }
    Err(Failure::known(format!(
        "{total_missed} of {total_pos} degree <= 3 members need cofactors above degree 6, e.g. {}; {summary}",
        unwitnessed.join("; ")
    )))
}

fn offenders_exhaustive() -> Outcome {
    let mut count = 0;
    for (p, maxdeg) in [(2u64, 5usize), (3, 3)] {
        for d in 0..=maxdeg {
            for r0 in oracle::monics(d, p) {
                let got: BTreeSet<Vec<u64>> =
                    lemma34_offenders(&r0, p).map_err(|e| format!("{r0:?} over F{p}: {e}"))?.into_iter().collect();
                let want: BTreeSet<Vec<u64>> = oracle::trial_factor(&r0, p).into_iter().collect();
                ensure(got == want, || format!("{r0:?} over F{p}: offenders {got:?}, factors {want:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} monic r0 over F2 (deg <= 5) and F3 (deg <= 3)"))
}

fn strictly_decreasing(trace: &[skewalg::amitsur::DescentStep], order: &TermOrder) -> bool {
    trace.windows(2).all(|w| order.cmp(&w[1].le, &w[0].le) == std::cmp::Ordering::Less)
}

fn extraction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let recs = prop43_demo(2, 2, 20, &mut rng).map_err(|e| e.to_string())?;
    ensure(recs.len() == 20, || format!("only {} ideals", recs.len()))?;
    let enc = PidExtension::commutative(2, 2).unwrap().encode().unwrap();
    let xorder = TermOrder::lex(2);
    let mut steps = 0;
    for (i, r) in recs.iter().enumerate() {
        let gens: Vec<&str> = r.generators.iter().map(String::as_str).collect();
        let ideal = LeftIdeal::parse(&enc, &gens).map_err(|e| e.to_string())?;
        let gb = ideal.groebner().map_err(|e| e.to_string())?;
        ensure(!gb.is_whole_ring() && r.simple, || format!("ideal {i} is not maximal"))?;
        ensure(!r.elimination.is_empty(), || format!("ideal {i}: elimination to y is empty"))?;
        let h = parse_r(2, &r.generators[0]).map_err(|e| e.to_string())?;
        for s in &r.elimination {
            let f = enc.parse(s).map_err(|e| e.to_string())?;
            ensure(!f.is_zero() && f.supported_on(&[0]) && gb.member(&f), || format!("ideal {i}: bad elimination {s}"))?;
        }
        for (label, x) in [("minimal", &r.minimal), ("lifted", &r.lifted)] {
            ensure(!x.element_r.is_empty(), || format!("ideal {i}, {label}: zero element"))?;
            ensure(x.element_poly.supported_on(&[0]) && gb.member(&x.element_poly), || {
                format!("ideal {i}, {label}: {} is not in I ∩ F2[y]", x.element)
            })?;
            ensure(oracle::exact_div(&x.element_r, &h, 2).is_some(), || {
                format!("ideal {i}, {label}: {} not divisible by {}", x.element, r.generators[0])
            })?;
            ensure(strictly_decreasing(&x.trace, &xorder), || format!("ideal {i}, {label}: trace not decreasing"))?;
        }
        let start = enc.parse(r.lifted.start.as_deref().unwrap_or("0")).map_err(|e| e.to_string())?;
        ensure(start.supported_on(&[0]) == r.lifted.trace.is_empty(), || {
            format!("ideal {i}: lifted start {:?} with {} descent steps", r.lifted.start, r.lifted.trace.len())
        })?;
        ensure(r.consistent, || format!("ideal {i}: inconsistent extraction"))?;
        steps += r.lifted.trace.len();
    }
    ensure(steps > 0, || "no ideal exercised the descent".into())?;
    Ok(format!("20 maximal ideals, {steps} descent steps, all elements certified"))
}

fn weyl_negative() -> Outcome {
    let rep = weyl_demo(10, 6).map_err(|e| e.to_string())?;
    ensure(!rep.one_in_it, || "1 in S t".into())?;
    ensure(rep.slice_intersection_dims == vec![0; 11], || format!("slices {:?}", rep.slice_intersection_dims))?;
    ensure(rep.center_nonconstant.is_none(), || format!("central {:?}", rep.center_nonconstant))?;
    let ring = SkewRing::weyl(OrderKind::DegLex);
    let it = LeftIdeal::parse(&ring, &["t"]).unwrap();
    let b = member_bruteforce(&ring.one(), &it, 6).map_err(|e| e.to_string())?;
    ensure(!b.is_yes(), || "oracle expresses 1 in S t".into())?;
    Ok("1 not in S t, slices 0..10 trivial, center constant up to degree 6".into())
}

fn center_frobenius() -> Outcome {
    let mut out = Vec::new();
    for (p, k) in [(2u64, 2usize), (3, 2), (2, 3)] {
        let ring = SkewRing::gf_frobenius(p, k, 1, OrderKind::Lex).unwrap();
        let d = ring.domain();
        let rep = center_upto(&ring, 2 * k as u32).map_err(|e| e.to_string())?;
        let want: Vec<SkewPoly> =
            [0, k, 2 * k].iter().map(|&e| ring.monomial(MultiIndex::from_slice(&[e as u32]), d.one())).collect();
        ensure(rep.basis == want, || {
            format!("GF({p}^{k}): basis {:?}", rep.basis.iter().map(|f| ring.format(f)).collect::<Vec<_>>())
        })?;
        // Independent: which monomials x^i commute with every scalar and with x.
        let elems = d.elements().unwrap();
        let central: Vec<usize> = (0..=2 * k)
            .filter(|&i| {
                let xi = ring.monomial(MultiIndex::from_slice(&[i as u32]), d.one());
                let comm = |a: &SkewPoly| {
                    oracle::word_mul(&ring, &xi, a, Strategy::RightmostFirst)
                        == oracle::word_mul(&ring, a, &xi, Strategy::LeftmostFirst)
                };
                comm(&ring.var(0)) && elems.iter().all(|c| comm(&ring.constant(c.clone())))
            })
            .collect();
        ensure(central == vec![0, k, 2 * k], || format!("GF({p}^{k}): rewriting finds central degrees {central:?}"))?;
        let fixed = elems.iter().filter(|c| d.frobenius(c) == **c).count() as u64;
        ensure(fixed == p, || format!("GF({p}^{k}): {fixed} Frobenius-fixed scalars"))?;
        out.push(format!("({p},{k})"));
    }
    Ok(format!("basis {{1, x^k, x^2k}} for {}", out.join(", ")))
}

fn cor47_desk() -> Outcome {
    let t = Instant::now();
    let rep = cor47_pipeline(2, 2, 2, 2).map_err(|e| e.to_string())?;
    let e = within(t, Duration::from_secs(300))?;
    ensure(rep.ideals.len() >= 5, || format!("only {} ideals", rep.ideals.len()))?;
    let distinct: BTreeSet<&Vec<String>> = rep.ideals.iter().map(|r| &r.groebner_basis).collect();
    ensure(distinct.len() == rep.ideals.len(), || "duplicate ideals".into())?;
    let ring = SkewRing::gf_frobenius(2, 2, 2, OrderKind::Lex).unwrap();
    for (i, r) in rep.ideals.iter().enumerate() {
        ensure(r.dim >= 1 && r.dim <= 8, || format!("ideal {i}: dim {}", r.dim))?;
        ensure(r.simple, || format!("ideal {i}: not simple"))?;
        let gens: Vec<&str> = r.groebner_basis.iter().map(String::as_str).collect();
        let gb = LeftIdeal::parse(&ring, &gens).and_then(|i| i.groebner()).map_err(|e| e.to_string())?;
        for (j, el) in r.eliminations.iter().enumerate() {
            let el = el.as_ref().ok_or_else(|| format!("ideal {i}: no element in F4[x{}]", j + 1))?;
            let f = ring.parse(el).map_err(|e| e.to_string())?;
            ensure(!f.is_zero() && f.supported_on(&[j]) && gb.member(&f), || format!("ideal {i}: bad elimination {el}"))?;
        }
    }
    let maxdim = rep.ideals.iter().map(|r| r.dim).max().unwrap();
    Ok(format!("{} distinct maximal left ideals, dims <= {maxdim}, all simple, {e:.2?}", rep.ideals.len()))
}

/// Re-derives every law with direct arithmetic, not through the module's own checks.
fn module_laws(q: &QuotientModule, label: &str) -> Result<(), String> {
    let m = &q.module;
    m.check_semilinear().map_err(|e| format!("{label}: {e}"))?;
    m.check_commutation().map_err(|e| format!("{label}: {e}"))?;
    let ring = m.ring();
    let d = ring.domain();
    let gens = d.generators();
    for k in 0..ring.nvars() {
        let (s, dl) = (ring.sigma(k), ring.delta(k));
        for j in 0..m.dim() {
            let e = m.unit(j);
            let via_ring = q.coords(&oracle::word_mul(ring, &ring.var(k), &q.lift(&e), Strategy::LeftmostFirst));
            ensure(m.act(k, &e) == via_ring, || format!("{label}: T{k}(e{j}) disagrees with multiplication"))?;
            for a in gens.iter().chain([d.one()].iter()) {
                let lhs = m.act(k, &m.scale(a, &e));
                let t = m.act(k, &e);
                let (sa, da) = (s.apply(d, a), dl.apply(s, d, a));
                let rhs: Vec<_> = t.iter().zip(&e).map(|(ti, ei)| d.add(&d.mul(&sa, ti), &d.mul(&da, ei))).collect();
                ensure(lhs == rhs, || format!("{label}: semilinear law fails for x{k}, e{j}"))?;
            }
            for l in 0..ring.nvars() {
                let kl = m.act(k, &m.act(l, &e));
                let lk = m.act(l, &m.act(k, &e));
                let c = match (k < l, ring.commutator(k.min(l), k.max(l))) {
                    (_, None) => d.zero(),
                    (true, Some(c)) => d.neg(c),
                    (false, Some(c)) => c.clone(),
                };
                let want: Vec<_> = lk.iter().zip(&e).map(|(x, ei)| d.add(x, &d.mul(&c, ei))).collect();
                ensure(kl == want, || format!("{label}: T{k} T{l} != T{l} T{k} + d on e{j}"))?;
            }
        }
    }
    Ok(())
}

fn semilinear_laws() -> Outcome {
    let mut n = 0;
    let ring = SkewRing::gf_frobenius(2, 2, 2, OrderKind::Lex).unwrap();
    let rep = cor47_pipeline(2, 2, 2, 2).map_err(|e| e.to_string())?;
    for (i, r) in rep.ideals.iter().enumerate() {
        let gens: Vec<&str> = r.groebner_basis.iter().map(String::as_str).collect();
        let q = quotient_module(&LeftIdeal::parse(&ring, &gens).unwrap()).map_err(|e| e.to_string())?;
        module_laws(&q, &format!("cor47 ideal {i}"))?;
        let sum = q.module.direct_sum(&q.module).map_err(|e| e.to_string())?;
        sum.check_semilinear().and_then(|_| sum.check_commutation()).map_err(|e| format!("cor47 sum {i}: {e}"))?;
        let simple = sum.is_simple(ENUMERATION_BOUND).map_err(|e| e.to_string())?.simple;
        ensure(!simple, || format!("cor47 sum {i}: direct sum reported simple"))?;
        n += 2;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let enc = PidExtension::commutative(2, 2).unwrap().encode().unwrap();
    for (i, r) in prop43_demo(2, 2, 20, &mut rng).map_err(|e| e.to_string())?.iter().enumerate() {
        let gens: Vec<&str> = r.generators.iter().map(String::as_str).collect();
        let q = quotient_module(&LeftIdeal::parse(&enc, &gens).unwrap()).map_err(|e| e.to_string())?;
        module_laws(&q, &format!("point ideal {i}"))?;
        n += 1;
    }
    let weyl3 = SkewRing::from_json(r#"{"domain":{"kind":"fp","p":3},"vars":["x","t"],"commutators":{"x,t":"1"}}"#).unwrap();
    let q = quotient_module(&LeftIdeal::parse(&weyl3, &["x^3", "t^3"]).unwrap()).map_err(|e| e.to_string())?;
    module_laws(&q, "F3 Weyl")?;
    n += 1;
    for text in ["x1 + w, x2 + w", "x1^2 + x1 + 1, x2 + 1"] {
        let gf4 = SkewRing::gf_frobenius(2, 2, 2, OrderKind::DegLex).unwrap();
        let gens: Vec<&str> = text.split(", ").collect();
        let q = quotient_module(&LeftIdeal::parse(&gf4, &gens).unwrap()).map_err(|e| e.to_string())?;
        module_laws(&q, text)?;
        n += 1;
    }
    Ok(format!("{n} modules satisfy both laws on all basis vectors and generators"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("le-additivity", le_additivity),
        ("structural endomorphisms", structural_endos),
        ("division contract", division_contract),
        ("Groebner membership vs brute force", gb_vs_bruteforce),
        ("offenders equal prime factors", offenders_exhaustive),
        ("elimination and extraction", extraction),
        ("Weyl negative control", weyl_negative),
        ("center of GF(p^k)[x;Frob]", center_frobenius),
        ("maximal left ideals of GF(4)[x1,x2;Frob]", cor47_desk),
        ("semilinear module laws", semilinear_laws),
    ];
    let (mut failed, mut unexpected) = (0, 0);
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.2?}]", i + 1, t.elapsed()),
            Err(f) => {
                failed += 1;
                if !f.known {
                    unexpected += 1;
                }
                let tag = if f.known { " (known limitation)" } else { "" };
                println!("FAIL {:>2} {name}{tag}: {} [{:.2?}]", i + 1, f.msg, t.elapsed());
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if unexpected > 0 {
        std::process::exit(1);
    }
}
