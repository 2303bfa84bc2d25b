//! Ordinary (commutative) univariate polynomials over the ambient field, little endian.

use crate::gf_tower::{Elem, Tower};

pub fn trim(mut a: Vec<Elem>) -> Vec<Elem> {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn add(t: &Tower, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| t.add(get(a, i), get(b, i))).collect())
}

pub fn sub(t: &Tower, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| t.sub(get(a, i), get(b, i))).collect())
}

fn get(a: &[Elem], i: usize) -> Elem {
    a.get(i).copied().unwrap_or(Elem::ZERO)
}

pub fn mul(t: &Tower, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![Elem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = t.add(r[i + j], t.mul(x, y));
        }
    }
    trim(r)
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(t: &Tower, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let b = trim(b.to_vec());
    let db = b.len() - 1;
    let inv = t.inv(b[db]).expect("nonzero divisor");
    let mut r = trim(a.to_vec());
    let mut q = vec![Elem::ZERO; r.len().saturating_sub(db)];
    while r.len() > db {
        let top = r.len() - 1;
        let c = t.mul(r[top], inv);
        q[top - db] = c;
        for (j, &bj) in b.iter().enumerate() {
            r[top - db + j] = t.sub(r[top - db + j], t.mul(c, bj));
        }
        r = trim(r);
    }
    (trim(q), r)
}

pub fn eval(t: &Tower, a: &[Elem], x: Elem) -> Elem {
    a.iter().rev().fold(Elem::ZERO, |acc, &c| t.add(t.mul(acc, x), c))
}

/// Extended Euclid: `(g, u, v)` with `u·a + v·b = g`, `g` monic.
pub fn ext_gcd(t: &Tower, a: &[Elem], b: &[Elem]) -> (Vec<Elem>, Vec<Elem>, Vec<Elem>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut u0, mut u1) = (vec![Elem::ONE], Vec::new());
    let (mut v0, mut v1) = (Vec::new(), vec![Elem::ONE]);
    while !r1.is_empty() {
        let (q, r) = divrem(t, &r0, &r1);
        let u2 = sub(t, &u0, &mul(t, &q, &u1));
        let v2 = sub(t, &v0, &mul(t, &q, &v1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u2);
        v0 = std::mem::replace(&mut v1, v2);
    }
    if let Some(&lead) = r0.last() {
        let inv = t.inv(lead).expect("nonzero");
        let sc = |p: Vec<Elem>| trim(p.into_iter().map(|c| t.mul(c, inv)).collect());
        return (sc(r0), sc(u0), sc(v0));
    }
    (r0, u0, v0)
}

/// `x^ℓ − 1`.
pub fn x_pow_minus_one(t: &Tower, ell: usize) -> Vec<Elem> {
    let mut v = vec![Elem::ZERO; ell + 1];
    v[0] = t.neg(Elem::ONE);
    v[ell] = t.add(v[ell], Elem::ONE);
    trim(v)
}
