//! Arithmetic over the prime field F_p: integers, polynomials and linear algebra.
//!
//! Everything here works on plain `u64` digits in `[0, p)`.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut b: u64, mut e: u128, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod_p(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, (p - 2) as u128, p)
}

/// Polynomials over F_p as little-endian coefficient vectors.
pub(crate) mod poly {
    use super::inv_mod_p;

    pub(crate) fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut r: Vec<u64> = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut r);
        r
    }

    pub(crate) fn rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let df = f.len() - 1;
        let lead_inv = inv_mod_p(f[df], p);
        while r.len() > df {
            let top = r.len() - 1;
            let c = r[top] * lead_inv % p;
            if c != 0 {
                for (j, &fj) in f.iter().enumerate() {
                    let idx = top - df + j;
                    r[idx] = (r[idx] + p - c * fj % p) % p;
                }
            }
            trim(&mut r);
        }
        r
    }

    pub(crate) fn mul_mod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % p;
            }
        }
        rem(&r, f, p)
    }

    pub(crate) fn pow_mod(base: &[u64], mut e: u128, f: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![1u64];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                r = mul_mod(&r, &b, f, p);
            }
            b = mul_mod(&b, &b, f, p);
            e >>= 1;
        }
        r
    }

    pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// `x^(p^k) mod f`, by `k` successive p-th powers.
    pub(crate) fn x_pow_p_pow(k: u32, f: &[u64], p: u64) -> Vec<u64> {
        let mut r = rem(&[0, 1], f, p);
        for _ in 0..k {
            r = pow_mod(&r, p as u128, f, p);
        }
        r
    }

    /// Rabin's irreducibility test for a monic `f` of degree `d ≥ 1`.
    pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
        let d = (f.len() - 1) as u32;
        if d == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x = vec![0u64, 1];
        if x_pow_p_pow(d, f, p) != rem(&x, f, p) {
            return false;
        }
        for r in super::prime_factors(d as u128) {
            let h = x_pow_p_pow(d / r as u32, f, p);
            let g = gcd(f, &sub(&h, &x, p), p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

/// Row reduction over F_p.
///
/// Rows are dense digit vectors of a common length.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    p: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
    /// Combination of the inserted vectors producing each echelon row.
    combos: Vec<Vec<u64>>,
    inserted: usize,
}

impl Echelon {
    pub(crate) fn new(p: u64) -> Self {
        Echelon { p, rows: Vec::new(), pivots: Vec::new(), combos: Vec::new(), inserted: 0 }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [u64], combo: &mut Vec<u64>) {
        let p = self.p;
        for (k, row) in self.rows.iter().enumerate() {
            let c = v[self.pivots[k]];
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = (*x + p - c * y % p) % p;
            }
            if combo.len() < self.combos[k].len() {
                combo.resize(self.combos[k].len(), 0);
            }
            for (x, &y) in combo.iter_mut().zip(&self.combos[k]) {
                *x = (*x + p - c * y % p) % p;
            }
        }
    }

    /// Inserts a vector; returns true if it increased the rank.
    pub(crate) fn insert(&mut self, v: &[u64]) -> bool {
        let idx = self.inserted;
        let mut w = v.to_vec();
        let mut combo = vec![0u64; idx + 1];
        combo[idx] = 1;
        self.reduce(&mut w, &mut combo);
        self.insert_reduced(w, combo)
    }

    fn insert_reduced(&mut self, w: Vec<u64>, combo: Vec<u64>) -> bool {
        let p = self.p;
        self.inserted += 1;
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod_p(w[piv], p);
        let w: Vec<u64> = w.iter().map(|x| x * inv % p).collect();
        let combo: Vec<u64> = combo.iter().map(|x| x * inv % p).collect();
        // keep rows fully reduced at the new pivot
        for k in 0..self.rows.len() {
            let c = self.rows[k][piv];
            if c == 0 {
                continue;
            }
            for (x, &y) in self.rows[k].iter_mut().zip(&w) {
                *x = (*x + p - c * y % p) % p;
            }
            if self.combos[k].len() < combo.len() {
                self.combos[k].resize(combo.len(), 0);
            }
            for (x, &y) in self.combos[k].iter_mut().zip(&combo) {
                *x = (*x + p - c * y % p) % p;
            }
        }
        self.rows.push(w);
        self.pivots.push(piv);
        self.combos.push(combo);
        true
    }

    /// Coefficients expressing `v` in terms of the inserted vectors, if `v` is in their span.
    pub(crate) fn decompose(&self, v: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let mut w = v.to_vec();
        let mut acc = vec![0u64; self.inserted];
        for (k, row) in self.rows.iter().enumerate() {
            let c = w[self.pivots[k]];
            if c == 0 {
                continue;
            }
            for (x, &y) in w.iter_mut().zip(row) {
                *x = (*x + p - c * y % p) % p;
            }
            for (x, &y) in acc.iter_mut().zip(&self.combos[k]) {
                *x = (*x + c * y) % p;
            }
        }
        if w.iter().any(|&x| x != 0) {
            return None;
        }
        Some(acc)
    }
}

/// Kernel of `c ↦ Σ c_i rows[i]`, as a basis of coefficient vectors.
pub(crate) fn left_kernel(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = rows.len();
    let mut ech = Echelon::new(p);
    let mut kernel = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut w = r.clone();
        let mut combo = vec![0u64; i + 1];
        combo[i] = 1;
        ech.reduce(&mut w, &mut combo);
        if w.iter().all(|&x| x == 0) {
            combo.resize(n, 0);
            kernel.push(combo);
            ech.inserted += 1;
        } else {
            ech.insert_reduced(w, combo);
        }
    }
    kernel
}

/// Rank of a set of vectors over F_2 packed as bit masks.
pub(crate) fn rank_gf2(vals: impl IntoIterator<Item = u64>) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for mut v in vals {
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                rank += 1;
                break;
            }
            v ^= basis[top];
        }
    }
    rank
}
