//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every criterion is reported even when an earlier one
//! fails. The process exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use sumrank::csc::{defining_set_from_codewords, dimension_from_defining_set, is_csc, is_left_ideal, CscCode};
use sumrank::decoder::{sample_error, Decoder};
use sumrank::linalg::Matrix;
use sumrank::lrs::{build_genmat, check_assumptions, csc_lrs, dual_from_seed, orthogonal, root_points, shifted_normal_bases, DualSeed};
use sumrank::quotient_rings::{cyclotomic_cosets, factor_cyclotomic, BivariateRing, Crt};
use sumrank::skew_poly::{conjugate_of_one, minimal_linearized_poly, SkewPoly};
use sumrank::srbch::{appendix_tower, bound_eq33, defining_structure, k_profile, subfield_subcode, SrBchCode};
use sumrank::gf_tower::RelativeBasis;
use sumrank::sum_rank::{code_size, min_sum_rank_distance_bruteforce, weight, Extension, Partition};
use sumrank::{Elem, Error, Tower};

const TABLE_TIME_LIMIT: Duration = Duration::from_secs(5);
const DIMENSION_TIME_LIMIT: Duration = Duration::from_secs(60);
const DISTANCE_TIME_LIMIT: Duration = Duration::from_secs(600);
const ENUMERATION_LIMIT: u128 = 1 << 20;
const RANDOM_CASES: usize = 200;
const DECODING_TRIALS: usize = 100;

/// Outcome of one criterion: a pass flag and a one-line summary.
type Outcome = (bool, String);

fn n_of(t: &Tower) -> usize {
    t.ell() * t.m() as usize
}

fn divisors(x: u128, max: u128) -> Vec<u64> {
    (1..=max.min(x)).filter(|d| x % d == 0).map(|d| d as u64).collect()
}

/// Towers with `q0 = p`, the given shape filter, and valid canonical `a`, `β`.
fn towers(primes: &[u64], max_size: u128, shape: impl Fn(u64, u32, u32, u64) -> bool) -> Vec<Arc<Tower>> {
    let mut out = Vec::new();
    for &p in primes {
        for m in 1..=8u32 {
            for s in 1..=8u32 {
                let deg = m * s;
                if deg > 8 || (p as u128).pow(deg) > max_size {
                    continue;
                }
                let q = (p as u128).pow(s);
                for ell in divisors(q - 1, 64) {
                    if !shape(p, m, s, ell) {
                        continue;
                    }
                    let Ok(t) = Tower::new(p, 1, m, s, ell) else { continue };
                    if n_of(&t) >= 2 && check_assumptions(&t, t.primitive_root_of_unity(), t.normal_element()).is_ok() {
                        out.push(Arc::new(t));
                    }
                }
            }
        }
    }
    out
}

/// `m = 2`, `s ≤ 3`, `ℓ ≤ 7`.
fn small_family() -> Vec<Arc<Tower>> {
    towers(&[2, 3, 5, 7], 1 << 20, |_, m, s, ell| m == 2 && s <= 3 && ell <= 7)
}

/// Every tower of degree at most 8 over `F_p` with `n ≤ 40` and at most `2^16` elements.
fn degree_eight_family() -> Vec<Arc<Tower>> {
    towers(&[2, 3, 5, 7], 1 << 16, |_, m, _, ell| ell as usize * m as usize <= 40)
}

fn short(t: &Tower) -> String {
    let p = t.params();
    format!("(p={},m={},s={},ell={})", p.p, p.m, p.s, p.ell)
}

// ---------------------------------------------------------------- criterion 1

#[derive(Debug, PartialEq, Eq, Clone, Copy)]
struct TableLine {
    delta: usize,
    b: usize,
    singleton: i64,
    eq33: i64,
    delsarte: i64,
    bold: bool,
}

fn expected_tables() -> BTreeMap<u32, Vec<TableLine>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/appendix_tables.csv");
    let mut rd = csv::Reader::from_path(path).expect("fixture exists");
    let mut out: BTreeMap<u32, Vec<TableLine>> = BTreeMap::new();
    for rec in rd.records() {
        let r = rec.expect("fixture row");
        let int = |i: usize| r[i].parse::<i64>().expect("integer field");
        out.entry(int(0) as u32).or_default().push(TableLine {
            delta: int(1) as usize,
            b: int(2) as usize,
            singleton: int(3),
            eq33: int(4),
            delsarte: int(5),
            bold: &r[6] == "true",
        });
    }
    out
}

fn table_output(s: u32) -> Vec<TableLine> {
    let out = Command::new(env!("CARGO_BIN_EXE_sumrank"))
        .args(["table", "--preset", "appendix", "--s", &s.to_string()])
        .output()
        .expect("binary runs");
    assert!(out.status.success(), "table --s {s} failed: {}", String::from_utf8_lossy(&out.stderr));
    let mut rd = csv::Reader::from_reader(out.stdout.as_slice());
    let headers = rd.headers().expect("header").clone();
    let col = |name: &str| headers.iter().position(|h| h == name).unwrap_or_else(|| panic!("column {name}"));
    let (d, b, sg, e, ds, bd) = (col("delta"), col("b"), col("singleton"), col("eq33"), col("delsarte"), col("beats_delsarte"));
    rd.records()
        .map(|rec| {
            let r = rec.expect("csv row");
            TableLine {
                delta: r[d].parse().unwrap(),
                b: r[b].parse().unwrap(),
                singleton: r[sg].parse().unwrap(),
                eq33: r[e].parse().unwrap(),
                delsarte: r[ds].parse().unwrap(),
                bold: &r[bd] == "true",
            }
        })
        .collect()
}

fn table_reproduction() -> Outcome {
    let expected = expected_tables();
    let start = Instant::now();
    let got: BTreeMap<u32, Vec<TableLine>> = (1..=7).map(|s| (s, table_output(s))).collect();
    let elapsed = start.elapsed();
    let mut mismatches = Vec::new();
    let mut rows = 0;
    for s in 1..=7 {
        let (e, g) = (&expected[&s], &got[&s]);
        rows += e.len();
        if e.len() != g.len() {
            mismatches.push(format!("s={s}: {} rows expected, {} produced", e.len(), g.len()));
        }
        for (x, y) in e.iter().zip(g) {
            if x != y {
                mismatches.push(format!("s={s}: expected {x:?}, got {y:?}"));
            }
        }
    }
    let ok = mismatches.is_empty() && elapsed < TABLE_TIME_LIMIT;
    let mut msg = format!("{rows} rows for s = 1..7, {} mismatches, {:.2} s (limit {} s)", mismatches.len(), elapsed.as_secs_f64(), TABLE_TIME_LIMIT.as_secs());
    if let Some(first) = mismatches.first() {
        msg += &format!("; first: {first}");
    }
    (ok, msg)
}

// ---------------------------------------------------------------- criterion 2

fn coset_profile() -> Outcome {
    let literal: BTreeSet<BTreeSet<usize>> = [vec![0], vec![1, 4], vec![2, 8], vec![3, 12], vec![5], vec![6, 9], vec![7, 13], vec![10], vec![11, 14]]
        .into_iter()
        .map(|c| c.into_iter().collect())
        .collect();
    let computed: BTreeSet<BTreeSet<usize>> = cyclotomic_cosets(15, 4).into_iter().map(|c| c.into_iter().collect()).collect();
    let t = appendix_tower(4).expect("tower");
    let fact = factor_cyclotomic(&t, t.primitive_root_of_unity()).expect("factorization");
    let k = k_profile(&fact, 1, 5);
    // the cosets met by 1, 2, 3, 4 are those of 1 (twice), 2 and 3
    let profile: Vec<(usize, usize)> = [1, 2, 3].iter().map(|&j| fact.locate(j).0).map(|i| (k[i], fact.degrees()[i])).collect();
    let others_empty = (0..fact.count()).filter(|&i| ![1, 2, 3].iter().any(|&j| fact.locate(j).0 == i)).all(|i| k[i] == 0);
    let bound = bound_eq33(&fact, 1, 5, 2, 4);
    let ok = computed == literal && profile == [(2, 2), (1, 2), (1, 2)] && others_empty && bound == 18;
    (ok, format!("{} cosets of 4 mod 15 (match: {}), profile (k,d) = {profile:?}, bound {bound} (expected 18)", computed.len(), computed == literal))
}

// ---------------------------------------------------------------- criterion 3

fn crt_for(t: &Arc<Tower>) -> Arc<Crt> {
    let ring = BivariateRing::new(t.clone(), t.m() as usize).expect("ring");
    Arc::new(Crt::new(ring, factor_cyclotomic(t, t.primitive_root_of_unity()).expect("factorization")).expect("crt"))
}

fn all_codes(t: &Tower) -> Vec<(usize, usize)> {
    (0..t.ell()).flat_map(|b| (2..=n_of(t)).map(move |d| (b, d))).collect()
}

fn dimension_agreement() -> Outcome {
    let start = Instant::now();
    let family = small_family();
    let mut cases = 0;
    let mut failures = Vec::new();
    for t in &family {
        let crt = crt_for(t);
        let fact = crt.factorization();
        let (a, beta) = (t.primitive_root_of_unity(), t.normal_element());
        let rb = RelativeBasis::new(t, t.deg_f(), t.degree()).expect("basis");
        for (b, delta) in all_codes(t) {
            cases += 1;
            let structure = defining_structure(t, fact, beta, b, delta).expect("structure").exact_dim;
            let parity = csc_lrs(t, a, beta, b, delta - 1).expect("parity code");
            let sub = subfield_subcode(t, parity.genmat(), &rb).expect("subcode");
            let rank = sub.rank(t) as i64;
            let ds = defining_set_from_codewords(&crt, &sub).expect("defining set");
            let from_ds = dimension_from_defining_set(&ds, fact, n_of(t));
            let built = SrBchCode::construct(t.clone(), b, delta).map(|c| c.exact_dim() as i64);
            if structure != rank || rank != from_ds || built != Ok(rank) {
                failures.push(format!("{} b={b} delta={delta}: {structure} / {rank} / {from_ds} / {built:?}", short(t)));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = failures.is_empty() && elapsed < DIMENSION_TIME_LIMIT && cases > 0;
    let mut msg = format!("{cases} codes on {} towers, {} disagreements, {:.1} s (limit {} s)", family.len(), failures.len(), elapsed.as_secs_f64(), DIMENSION_TIME_LIMIT.as_secs());
    if let Some(f) = failures.first() {
        msg += &format!("; first: {f}");
    }
    (ok, msg)
}

// ---------------------------------------------------------------- criterion 4

fn prescribed_distance() -> Outcome {
    let start = Instant::now();
    let family = small_family();
    let jobs: Vec<(Arc<Tower>, usize, usize)> = family.iter().flat_map(|t| all_codes(t).into_iter().map(move |(b, d)| (t.clone(), b, d))).collect();
    let results: Vec<Option<(bool, String)>> = jobs
        .par_iter()
        .map(|(t, b, delta)| {
            let code = SrBchCode::construct(t.clone(), *b, *delta).expect("code");
            let dim = code.exact_dim();
            if dim == 0 || code_size(t, t.deg_f(), dim) > ENUMERATION_LIMIT {
                return None;
            }
            let part = Partition::new(t.ell(), t.m() as usize);
            let d = min_sum_rank_distance_bruteforce(t, code.generator_matrix(), part, Extension::inner(t), ENUMERATION_LIMIT).expect("within limit");
            Some((d.is_some_and(|d| d >= *delta), format!("{} b={b} delta={delta} dim={dim}: d0 = {d:?}", short(t))))
        })
        .collect();
    let elapsed = start.elapsed();
    let checked: Vec<&(bool, String)> = results.iter().flatten().collect();
    let bad: Vec<&String> = checked.iter().filter(|r| !r.0).map(|r| &r.1).collect();
    let ok = bad.is_empty() && !checked.is_empty() && elapsed < DISTANCE_TIME_LIMIT;
    let mut msg = format!(
        "{} nonzero codes with |F|^dim <= 2^20 on {} towers ({} of {} codes in range), {} below delta, {:.1} s (limit {} s)",
        checked.len(),
        family.len(),
        checked.len(),
        jobs.len(),
        bad.len(),
        elapsed.as_secs_f64(),
        DISTANCE_TIME_LIMIT.as_secs()
    );
    if let Some(f) = bad.first() {
        msg += &format!("; first: {f}");
    }
    (ok, msg)
}

// ---------------------------------------------------------------- criterion 5

fn msrd() -> Outcome {
    let family = degree_eight_family();
    let jobs: Vec<(Arc<Tower>, usize, usize)> = family
        .iter()
        .flat_map(|t| {
            let t = t.clone();
            (0..t.ell()).flat_map(move |b| {
                let t = t.clone();
                (1..=n_of(&t)).filter(|&k| code_size(&t, t.degree(), k) <= ENUMERATION_LIMIT).map(|k| (t.clone(), b, k)).collect::<Vec<_>>()
            })
        })
        .collect();
    let bad: Vec<String> = jobs
        .par_iter()
        .filter_map(|(t, b, k)| {
            let code = csc_lrs(t, t.primitive_root_of_unity(), t.normal_element(), *b, *k).expect("lrs code");
            let part = Partition::new(t.ell(), t.m() as usize);
            let d = min_sum_rank_distance_bruteforce(t, code.genmat(), part, Extension::outer(t), ENUMERATION_LIMIT).expect("within limit");
            let n = n_of(t);
            (d != Some(n - k + 1)).then(|| format!("{} b={b} k={k}: d = {d:?}, n-k+1 = {}", short(t), n - k + 1))
        })
        .collect();
    let mut msg = format!("{} codes with at most 2^20 codewords on {} towers, {} not MSRD", jobs.len(), family.len(), bad.len());
    if let Some(f) = bad.first() {
        msg += &format!("; first: {f}");
    }
    (bad.is_empty() && !jobs.is_empty(), msg)
}

// ---------------------------------------------------------------- criterion 6

fn property_crts() -> Vec<Arc<Crt>> {
    [(2, 2, 2, 3), (2, 2, 3, 7), (2, 2, 4, 15), (3, 2, 1, 2), (2, 4, 2, 3), (5, 2, 1, 4), (2, 3, 1, 1)]
        .into_iter()
        .map(|(p, m, s, ell)| crt_for(&Arc::new(Tower::new(p, 1, m, s, ell).expect("tower"))))
        .collect()
}

fn random_in(elems: &[Elem], len: usize, rng: &mut impl Rng) -> Vec<Elem> {
    (0..len).map(|_| *elems.choose(rng).unwrap()).collect()
}

fn random_code(crt: &Arc<Crt>, rng: &mut impl Rng) -> CscCode {
    let t = crt.ring().tower();
    let comps = crt
        .factorization()
        .degrees()
        .iter()
        .map(|&d| {
            let betas: Vec<Elem> = (0..rng.gen_range(0..3)).map(|_| Elem(rng.gen_range(1..t.size()))).collect();
            minimal_linearized_poly(t, &betas, d as u32).expect("minimal polynomial")
        })
        .collect();
    CscCode::from_components(crt.clone(), comps).expect("code")
}

fn random_skew(t: &Tower, max_len: usize, rng: &mut impl Rng) -> SkewPoly {
    SkewPoly::new((0..rng.gen_range(0..=max_len)).map(|_| Elem(rng.gen_range(0..t.size()))).collect())
}

/// Runs `case` on `RANDOM_CASES` seeded inputs and returns the number of failures.
fn randomized(label: u64, mut case: impl FnMut(&Arc<Crt>, &mut ChaCha8Rng) -> bool) -> usize {
    let crts = property_crts();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ label);
    (0..RANDOM_CASES)
        .filter(|&i| {
            let crt = &crts[i % crts.len()];
            !case(crt, &mut rng)
        })
        .count()
}

fn algebraic_suite() -> Outcome {
    let mut results: Vec<(&str, usize)> = Vec::new();
    let mut closed = 0;
    results.push((
        "ideal <=> csc",
        randomized(1, |crt, rng| {
            let ring = crt.ring();
            let t = ring.tower();
            let basis = if rng.gen_bool(0.5) {
                random_code(crt, rng).generator_matrix().clone()
            } else {
                let f = t.subfield_elements(t.deg_f()).unwrap();
                let rows = (0..rng.gen_range(1..4)).map(|_| random_in(&f, ring.len(), rng)).collect();
                Matrix::from_rows(ring.len(), rows)
            };
            let c = is_csc(ring, &basis);
            closed += c as usize;
            c == is_left_ideal(ring, &basis)
        }),
    ));
    results.push((
        "g h = h g = z^N - 1",
        randomized(2, |crt, rng| {
            let ring = crt.ring();
            let code = random_code(crt, rng);
            let target = ring.poly_z_pow_minus_one();
            ring.poly_mul(code.generator(), code.check_poly()) == target && ring.poly_mul(code.check_poly(), code.generator()) == target
        }),
    ));
    results.push((
        "idempotents",
        randomized(3, |crt, rng| {
            let ring = crt.ring();
            let t = ring.tower();
            let fact = crt.factorization();
            let f_elems = t.subfield_elements(t.deg_f()).unwrap();
            let f = ring.s_from_poly(&random_in(&f_elems, ring.ell(), rng));
            let e = crt.idempotents();
            let parts: Vec<_> = e.iter().map(|ei| ring.s_mul(ei, &f)).collect();
            let sum = parts.iter().fold(ring.s_zero(), |acc, x| ring.s_add(&acc, x));
            let mut ok = sum == f;
            for (i, ei) in e.iter().enumerate() {
                for (j, pj) in parts.iter().enumerate() {
                    let prod = ring.s_mul(ei, pj);
                    ok &= if i == j { prod == *pj } else { prod.is_zero() };
                    let root = fact.rep_root(t, i);
                    let want = if i == j { ring.s_eval(&f, root) } else { Elem::ZERO };
                    ok &= ring.s_eval(pj, root) == want;
                }
            }
            ok
        }),
    ));
    results.push((
        "crt round trip",
        randomized(4, |crt, rng| {
            let ring = crt.ring();
            let t = ring.tower();
            let f_elems = t.subfield_elements(t.deg_f()).unwrap();
            let f = ring.nu(&random_in(&f_elems, ring.len(), rng)).unwrap();
            let g = ring.nu(&random_in(&f_elems, ring.len(), rng)).unwrap();
            let zn = SkewPoly::z_pow_minus_one(t, ring.n_blocks());
            let (rf, rg, rfg) = (crt.rho(&f), crt.rho(&g), crt.rho(&ring.mul(&f, &g)));
            crt.inverse(&rf).unwrap() == f
                && (0..rf.len()).all(|i| rf[i].mul(&rg[i], t).right_divide(&zn, t).unwrap().1 == rfg[i])
        }),
    ));
    results.push((
        "total evaluation routes",
        randomized(5, |crt, rng| {
            let ring = crt.ring();
            let t = ring.tower();
            let f_elems = t.subfield_elements(t.deg_f()).unwrap();
            let f = ring.nu(&random_in(&f_elems, ring.len(), rng)).unwrap();
            let a = t.pow(crt.factorization().root(), rng.gen_range(0..ring.ell()) as u128);
            let beta = Elem(rng.gen_range(1..t.size()));
            ring.ev_total_arith(a, beta, &f).unwrap() == ring.ev_total_formula(a, beta, &f).unwrap()
        }),
    ));
    results.push((
        "arithmetic vs linearized evaluation",
        randomized(6, |crt, rng| {
            let t = crt.ring().tower();
            let f = random_skew(t, 8, rng);
            let beta = Elem(rng.gen_range(1..t.size()));
            f.evaluate(t, conjugate_of_one(t, beta).unwrap()) == t.mul(f.to_linearized().evaluate(t, beta), t.inv(beta).unwrap())
        }),
    ));
    results.push((
        "product rule",
        randomized(7, |crt, rng| {
            // (f g)(α) = f(α^{g(α)}) g(α) with α^c = σ(c) α c^{-1}, and 0 when g(α) = 0
            let t = crt.ring().tower();
            let (f, g) = (random_skew(t, 6, rng), random_skew(t, 6, rng));
            let alpha = Elem(rng.gen_range(0..t.size()));
            let ga = g.evaluate(t, alpha);
            let lhs = f.mul(&g, t).evaluate(t, alpha);
            match t.inv(ga) {
                None => lhs.is_zero(),
                Some(inv) => {
                    let conj = t.mul(t.mul(t.sigma(ga, 1), alpha), inv);
                    lhs == t.mul(f.evaluate(t, conj), ga)
                }
            }
        }),
    ));
    let failures: usize = results.iter().map(|r| r.1).sum();
    let detail: Vec<String> = results.iter().map(|(n, f)| format!("{n} {}/{RANDOM_CASES}", RANDOM_CASES - f)).collect();
    let ok = failures == 0 && closed > 0 && closed < RANDOM_CASES;
    (ok, format!("{}; {closed} of the closure cases were CSC", detail.join(", ")))
}

// ---------------------------------------------------------------- criterion 7

fn decoder_round_trip() -> Outcome {
    let specs: [(u64, u32, u32, u64, usize, usize); 4] = [(2, 2, 2, 3, 0, 3), (7, 2, 1, 3, 0, 5), (2, 2, 3, 7, 1, 5), (2, 2, 3, 7, 1, 7)];
    let dec = Decoder::with_budget(sumrank::sum_rank::budget());
    let mut lines = Vec::new();
    let mut ok = true;
    for (k, &(p, m, s, ell, b, delta)) in specs.iter().enumerate() {
        let t = Arc::new(Tower::new(p, 1, m, s, ell).expect("tower"));
        let code = SrBchCode::construct(t.clone(), b, delta).expect("code");
        let radius = Decoder::radius(&code);
        assert!(code.exact_dim() > 0 && radius > 0, "decoding code {k} is trivial");
        let part = Partition::new(t.ell(), t.m() as usize);
        let f = t.subfield_elements(t.deg_f()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(k as u64);
        let (mut exact, mut beyond_ok, mut beyond_lucky, mut wrong, mut wrong_within) = (0, 0, 0, 0, 0);
        let beyond_possible = radius < t.ell() * Extension::inner(&t).dim().min(t.m() as usize);
        for _ in 0..DECODING_TRIALS {
            let msg = random_in(&f, code.exact_dim(), &mut rng);
            let c = code.encode(&msg).unwrap();
            let w = rng.gen_range(0..=radius);
            let e = sample_error(&t, part, Extension::inner(&t), w, &mut rng).unwrap();
            let y: Vec<Elem> = c.iter().zip(&e).map(|(&x, &z)| t.add(x, z)).collect();
            if matches!(dec.decode(&code, &y), Ok(r) if r.codeword == c && r.message == msg && r.error_weight == w) {
                exact += 1;
            }
            if beyond_possible {
                let e = sample_error(&t, part, Extension::inner(&t), radius + 1, &mut rng).unwrap();
                let y: Vec<Elem> = c.iter().zip(&e).map(|(&x, &z)| t.add(x, z)).collect();
                match dec.decode(&code, &y) {
                    Ok(r) if r.codeword == c => beyond_lucky += 1,
                    Err(Error::RadiusExceeded { .. }) => beyond_ok += 1,
                    Ok(r) => {
                        wrong += 1;
                        // a wrong codeword within the radius of y is what any bounded-distance decoder returns
                        let diff: Vec<Elem> = y.iter().zip(&r.codeword).map(|(&a, &b)| t.sub(a, b)).collect();
                        wrong_within += (weight(&t, &diff, part, t.deg_q0()).unwrap() <= radius) as usize;
                    }
                    Err(e) => panic!("unexpected decoder error {e}"),
                }
            }
        }
        ok &= exact == DECODING_TRIALS && wrong == 0;
        lines.push(format!(
            "{} b={b} delta={delta} t={radius}: {exact}/{DECODING_TRIALS} exact, t+1: {beyond_ok} refused, {beyond_lucky} correct, {wrong} wrong ({wrong_within} of them within t of the received word)",
            short(&t)
        ));
    }
    (ok, lines.join("; "))
}

// ---------------------------------------------------------------- criterion 8

fn duality() -> Outcome {
    let family = degree_eight_family();
    let jobs: Vec<(Arc<Tower>, usize)> = family.iter().flat_map(|t| (0..t.ell()).map(move |b| (t.clone(), b))).collect();
    let results: Vec<(String, usize, usize, Vec<String>)> = jobs
        .par_iter()
        .map(|(t, b)| {
            let (a, beta) = (t.primitive_root_of_unity(), t.normal_element());
            let n = n_of(t);
            let seed = DualSeed::new(t, a, beta, *b).expect("dual seed");
            let mut bad = Vec::new();
            for delta in 2..=n {
                let primal = csc_lrs(t, a, beta, *b, delta - 1).unwrap();
                let d = match dual_from_seed(t, &seed, delta) {
                    Ok(d) => d,
                    Err(e) => {
                        bad.push(format!("delta={delta}: {e}"));
                        continue;
                    }
                };
                // rebuild C_{n-δ+1}(A, B') with B'_i = {σ^j(γ) a^{ci}} on the original points
                let shaped = build_genmat(t, n - delta + 1, &root_points(t, a), &shifted_normal_bases(t, a, d.gamma, d.c)).unwrap();
                let orth = orthogonal(t, primal.genmat(), d.dual.genmat()) && d.dual.k() + primal.k() == n;
                let shape = t.is_normal(d.gamma) && shaped.genmat().same_row_space(d.dual.genmat(), t) && orthogonal(t, primal.genmat(), shaped.genmat());
                if !orth || !shape {
                    bad.push(format!("delta={delta}: orthogonal {orth}, original-points shape {shape} ({:?})", d.route));
                }
            }
            (short(t), *b, n - 1, bad)
        })
        .collect();
    let total: usize = results.iter().map(|r| r.2).sum();
    let failing: Vec<&(String, usize, usize, Vec<String>)> = results.iter().filter(|r| !r.3.is_empty()).collect();
    let failed: usize = failing.iter().map(|r| r.3.len()).sum();
    let towers_failing: BTreeSet<&String> = failing.iter().map(|r| &r.0).collect();
    let mut msg = format!("{total} duals on {} towers, {failed} failing", family.len());
    if !towers_failing.is_empty() {
        msg += &format!(" on {:?}", towers_failing);
        let f = failing[0];
        msg += &format!("; first: {} b={} {}", f.0, f.1, f.3[0]);
    }
    (failed == 0, msg)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("table reproduction", table_reproduction),
        ("coset profile", coset_profile),
        ("dimension agreement", dimension_agreement),
        ("prescribed distance", prescribed_distance),
        ("msrd", msrd),
        ("algebraic properties", algebraic_suite),
        ("decoder round trip", decoder_round_trip),
        ("duality", duality),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let (ok, msg) = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let text = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default();
            (false, format!("panicked: {text}"))
        });
        failed += !ok as usize;
        println!("{} {}. {name}: {msg} [{:.1} s]", if ok { "PASS" } else { "FAIL" }, i + 1, start.elapsed().as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
