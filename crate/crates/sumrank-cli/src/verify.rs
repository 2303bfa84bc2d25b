//! The property suite behind `sumrank verify`.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use sumrank::csc::is_csc;
use sumrank::decoder::{sample_error, Decoder};
use sumrank::lrs::{check_assumptions, csc_lrs, dual_from_seed, orthogonal, DualSeed};
use sumrank::quotient_rings::BivariateRing;
use sumrank::srbch::SrBchCode;
use sumrank::sum_rank::{code_size, min_sum_rank_distance_bruteforce, Extension, Partition};
use sumrank::{Elem, Tower};

#[derive(Serialize, Debug, Clone)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub tower: String,
    pub checks: Vec<Check>,
    pub failures: usize,
}

fn check(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), passed, detail: detail.into() }
}

fn from_result<T>(name: String, r: sumrank::Result<T>, ok: impl FnOnce(T) -> (bool, String)) -> Check {
    match r {
        Ok(v) => {
            let (p, d) = ok(v);
            check(name, p, d)
        }
        Err(e) => check(name, false, e.to_string()),
    }
}

/// LRS codes: CSC closure and MSRD by brute force where affordable.
fn lrs_checks(t: &Arc<Tower>, budget: u128) -> Vec<Check> {
    let n = t.ell() * t.m() as usize;
    let (a, beta) = (t.primitive_root_of_unity(), t.normal_element());
    let part = Partition::new(t.ell(), t.m() as usize);
    let ring = match BivariateRing::new(t.clone(), t.m() as usize) {
        Ok(r) => r,
        Err(e) => return vec![check("lrs ring", false, e.to_string())],
    };
    (1..=n)
        .into_par_iter()
        .flat_map_iter(|k| {
            let mut out = Vec::new();
            match csc_lrs(t, a, beta, 0, k) {
                Ok(code) => {
                    out.push(check(format!("lrs k={k} is csc"), is_csc(&ring, code.genmat()), ""));
                    if code_size(t, t.degree(), k) <= budget {
                        out.push(from_result(
                            format!("lrs k={k} msrd"),
                            min_sum_rank_distance_bruteforce(t, code.genmat(), part, Extension::outer(t), budget),
                            |d| (d == Some(n - k + 1), format!("d = {d:?}, n - k + 1 = {}", n - k + 1)),
                        ));
                    }
                }
                Err(e) => out.push(check(format!("lrs k={k}"), false, e.to_string())),
            }
            out
        })
        .collect()
}

/// Duals: orthogonality and complementary dimension always; the shape with the original
/// evaluation points as a separate check.
fn dual_checks(t: &Tower) -> Vec<Check> {
    let n = t.ell() * t.m() as usize;
    let (a, beta) = (t.primitive_root_of_unity(), t.normal_element());
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for b in 0..t.ell().max(2) {
        let seed = match DualSeed::new(t, a, beta, b) {
            Ok(s) => s,
            Err(e) => {
                out.push(check(format!("dual seed b={b}"), false, e.to_string()));
                continue;
            }
        };
        let results: Vec<Check> = (2..=n)
            .into_par_iter()
            .flat_map_iter(|delta| {
                let name = format!("dual b={b} delta={delta}");
                match (dual_from_seed(t, &seed, delta), csc_lrs(t, a, beta, b, delta - 1)) {
                    (Ok(d), Ok(primal)) => {
                        let orth = orthogonal(t, primal.genmat(), d.dual.genmat()) && d.dual.k() + primal.k() == n;
                        vec![
                            check(name.clone(), orth, format!("c = {}, gamma = {}", d.c, t.format(d.gamma))),
                            check(format!("{name} keeps points"), d.route.keeps_points(), format!("{:?}", d.route)),
                        ]
                    }
                    (Err(e), _) | (_, Err(e)) => vec![check(name, false, e.to_string())],
                }
            })
            .collect();
        out.extend(results);
    }
    out
}

/// SR-BCH codes: construction cross-checks, bound chain, prescribed distance and decoding.
fn srbch_checks(t: &Arc<Tower>, budget: u128, trials: usize, seed: u64) -> Vec<Check> {
    let n = t.ell() * t.m() as usize;
    let part = Partition::new(t.ell(), t.m() as usize);
    let pairs: Vec<(usize, usize)> = (2..=n).flat_map(|d| [(d, 0), (d, 1)]).collect();
    pairs
        .par_iter()
        .flat_map_iter(|&(delta, b)| {
            let name = format!("srbch b={b} delta={delta}");
            let code = match SrBchCode::construct(t.clone(), b, delta) {
                Ok(c) => c,
                Err(e) => return vec![check(name, false, e.to_string())],
            };
            let bd = code.bounds();
            let dim = code.exact_dim() as i64;
            let mut out = vec![check(
                format!("{name} bounds"),
                bd.delsarte <= bd.eq33 && bd.eq33 <= dim && dim <= bd.singleton && bd.eq33 <= bd.singleton,
                format!("delsarte {} eq33 {} dim {dim} singleton {}", bd.delsarte, bd.eq33, bd.singleton),
            )];
            if dim > 0 && code_size(t, t.deg_f(), code.exact_dim()) <= budget {
                out.push(from_result(
                    format!("{name} distance"),
                    min_sum_rank_distance_bruteforce(t, code.generator_matrix(), part, Extension::inner(t), budget),
                    |d| (d.is_some_and(|d| d >= delta), format!("d0 = {d:?}")),
                ));
            }
            let radius = Decoder::radius(&code);
            if dim > 0 && radius > 0 && trials > 0 {
                let dec = Decoder::with_budget(budget);
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((delta as u64) << 8) ^ b as u64);
                let f = t.subfield_elements(t.deg_f()).expect("F is a subfield");
                let mut ok = 0;
                let mut detail = String::new();
                for _ in 0..trials {
                    let msg: Vec<Elem> = (0..code.exact_dim()).map(|_| *f.choose(&mut rng).unwrap()).collect();
                    let c = code.encode(&msg).expect("message over F");
                    let e = sample_error(t, part, Extension::inner(t), radius, &mut rng).expect("radius is feasible");
                    let y: Vec<Elem> = c.iter().zip(&e).map(|(&x, &z)| t.add(x, z)).collect();
                    match dec.decode(&code, &y) {
                        Ok(r) if r.codeword == c => ok += 1,
                        Ok(_) => detail = "wrong codeword".into(),
                        Err(sumrank::Error::BudgetExceeded { .. }) => {
                            detail = "skipped: over budget".into();
                            ok = trials;
                            break;
                        }
                        Err(e) => detail = e.to_string(),
                    }
                }
                out.push(check(format!("{name} decoding"), ok == trials, format!("{ok}/{trials} {detail}")));
            }
            out
        })
        .collect()
}

pub fn run(t: Tower, budget: u128, trials: usize, seed: u64) -> Report {
    let t = Arc::new(t);
    let mut checks = vec![from_result("assumptions".into(), check_assumptions(&t, t.primitive_root_of_unity(), t.normal_element()), |_| (true, String::new()))];
    if checks[0].passed {
        checks.extend(lrs_checks(&t, budget));
        checks.extend(dual_checks(&t));
        checks.extend(srbch_checks(&t, budget, trials, seed));
    }
    let failures = checks.iter().filter(|c| !c.passed).count();
    Report { tower: t.describe(), checks, failures }
}
