//! Linearized Reed–Solomon codes over `F_{q^m}`, measured in the sum-rank metric for
//! `F_q ⊆ F_{q^m}`.
//!
//! The generator matrix `D(A, B)` has, in block `i` and column `j` of row `r`, the entry
//! `D_{a_i}^r(β_{i,j}) = σ^r(β_{i,j})·N_r(a_i)`.
//!
//! ```
//! use sumrank::gf_tower::Tower;
//! use sumrank::lrs::csc_lrs;
//!
//! let t = Tower::new(2, 1, 2, 2, 3).unwrap();
//! let code = csc_lrs(&t, t.primitive_root_of_unity(), t.normal_element(), 0, 2).unwrap();
//! assert_eq!(code.genmat().rows(), 2);
//! assert_eq!(code.genmat().cols(), 6);
//! ```

use crate::error::{Error, Result};
use crate::fp;
use crate::gf_tower::{Elem, Tower};
use crate::linalg::Matrix;
use crate::skew_poly::op_d;

/// A linearized Reed–Solomon code `C^σ_k(A, B)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrsCode {
    k: usize,
    a: Vec<Elem>,
    bases: Vec<Vec<Elem>>,
    genmat: Matrix,
}

impl LrsCode {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn points(&self) -> &[Elem] {
        &self.a
    }

    pub fn bases(&self) -> &[Vec<Elem>] {
        &self.bases
    }

    pub fn genmat(&self) -> &Matrix {
        &self.genmat
    }

    pub fn len(&self) -> usize {
        self.genmat.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn n_blocks(&self) -> usize {
        self.a.len()
    }

    /// Columns per block (the common basis length).
    pub fn block_len(&self) -> usize {
        self.bases.first().map_or(0, |b| b.len())
    }
}

/// Whether the nonzero elements of `a` are pairwise non-conjugate, decided by their norms
/// `x^{(q^m−1)/(q−1)}` to `F_q`.
pub fn pairwise_nonconjugate(t: &Tower, a: &[Elem]) -> Result<bool> {
    let e = (t.size() as u128 - 1) / (t.params().q() - 1);
    let mut norms = Vec::with_capacity(a.len());
    for &x in a {
        if x.is_zero() {
            return Err(Error::ZeroEntry);
        }
        let nx = t.pow(x, e);
        if norms.contains(&nx) {
            return Ok(false);
        }
        norms.push(nx);
    }
    Ok(true)
}

/// `D(A, B)` with `k` rows.
pub fn build_genmat(t: &Tower, k: usize, a: &[Elem], bases: &[Vec<Elem>]) -> Result<LrsCode> {
    if a.len() != bases.len() {
        return Err(Error::LengthMismatch { expected: a.len(), found: bases.len() });
    }
    if !pairwise_nonconjugate(t, a)? {
        for i in 0..a.len() {
            for j in i + 1..a.len() {
                if !pairwise_nonconjugate(t, &[a[i], a[j]])? {
                    return Err(Error::ConjugateEvaluationPoints(i, j));
                }
            }
        }
    }
    let n_blocks = bases.first().map_or(0, |b| b.len());
    for (i, b) in bases.iter().enumerate() {
        if b.len() != n_blocks {
            return Err(Error::LengthMismatch { expected: n_blocks, found: b.len() });
        }
        if t.rank_over(b, t.deg_q())? != b.len() {
            return Err(Error::DependentBasis(i));
        }
    }
    let n = a.len() * n_blocks;
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("dimension {k} outside [1, {n}]")));
    }
    let mut m = Matrix::zeros(k, n);
    for r in 0..k {
        for (i, (&ai, b)) in a.iter().zip(bases).enumerate() {
            for (j, &beta) in b.iter().enumerate() {
                m.set(r, i * n_blocks + j, op_d(t, ai, r, beta));
            }
        }
    }
    if m.rank(t) != k {
        return Err(Error::VerificationFailed("linearized Reed-Solomon generator is rank deficient".into()));
    }
    Ok(LrsCode { k, a: a.to_vec(), bases: bases.to_vec(), genmat: m })
}

/// `A = {1, a, …, a^{ℓ−1}}`.
pub fn root_points(t: &Tower, a: Elem) -> Vec<Elem> {
    (0..t.ell()).map(|i| t.pow(a, i as u128)).collect()
}

/// `B_i = {σ^j(β)·a^{bi} : 0 ≤ j < m}`.
pub fn shifted_normal_bases(t: &Tower, a: Elem, beta: Elem, b: usize) -> Vec<Vec<Elem>> {
    (0..t.ell())
        .map(|i| {
            let f = t.pow(a, (b * i) as u128);
            (0..t.m() as i64).map(|j| t.mul(t.sigma(beta, j), f)).collect()
        })
        .collect()
}

/// Checks the standing assumptions on `ℓ`, `a` and `β`.
pub fn check_assumptions(t: &Tower, a: Elem, beta: Elem) -> Result<()> {
    let ell = t.ell() as u64;
    let m = t.m() as u64;
    let q = t.params().q();
    if fp::gcd(ell, m) != 1 {
        return Err(Error::AssumptionViolated(format!("gcd(ell, m) = gcd({ell}, {m}) != 1")));
    }
    if q % ell as u128 == 0 && ell > 1 {
        return Err(Error::AssumptionViolated(format!("ell = {ell} is not coprime with q = {q}")));
    }
    if (q - 1) % ell as u128 != 0 {
        return Err(Error::AssumptionViolated(format!("ell = {ell} does not divide q - 1 = {}", q - 1)));
    }
    if a.is_zero() || t.order(a) != ell as u128 {
        return Err(Error::AssumptionViolated("a is not a primitive ell-th root of unity".into()));
    }
    if !t.is_normal(beta) {
        return Err(Error::AssumptionViolated("beta is not a normal element of F_{q^m} over F_q".into()));
    }
    Ok(())
}

/// The CSC linearized Reed–Solomon code with `A = {a^i}` and `B_i = {σ^j(β) a^{bi}}`.
pub fn csc_lrs(t: &Tower, a: Elem, beta: Elem, b: usize, k: usize) -> Result<LrsCode> {
    check_assumptions(t, a, beta)?;
    build_genmat(t, k, &root_points(t, a), &shifted_normal_bases(t, a, beta, b))
}

/// How the dual pair `(c, γ)` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualRoute {
    /// `γ = σ^{δ−n}(γ̃)` with `γ̃` and `c` read off the one-dimensional dual of `C_{n−1}`.
    Constructive,
    /// `γ = σ^e(γ̃)`, `c` as in the constructive route.
    FrobeniusShift(usize),
    /// `γ` solved for by linear algebra, with the points `A` unchanged.
    Solved,
    /// No `B'` works with the points `A`; the dual uses the reflected points `a_i = a^{−i}`.
    Reflected,
}

impl DualRoute {
    /// Whether the dual keeps the evaluation points `A = {a^i}` in their original order.
    pub fn keeps_points(self) -> bool {
        self != DualRoute::Reflected
    }
}

/// Result of [`dual_csc_lrs`].
#[derive(Clone, Debug)]
pub struct DualCscLrs {
    pub c: usize,
    pub gamma: Elem,
    /// `γ̃` from the one-dimensional dual of `C_{n−1}`.
    pub gamma_tilde: Elem,
    pub route: DualRoute,
    pub dual: LrsCode,
}

/// Whether `G_1 G_2ᵀ = 0`.
pub fn orthogonal(t: &Tower, g1: &Matrix, g2: &Matrix) -> bool {
    g1.mul(&g2.transpose(), t).entries().iter().all(|x| x.is_zero())
}

/// The data `(γ̃, c)` extracted from the one-dimensional dual `⟨α⟩` of `C_{n−1}(A, B)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DualSeed {
    pub a: Elem,
    pub beta: Elem,
    pub b: usize,
    pub gamma_tilde: Elem,
    pub c: usize,
}

impl DualSeed {
    pub fn new(t: &Tower, a: Elem, beta: Elem, b: usize) -> Result<DualSeed> {
        let (gamma_tilde, c) = dual_seed(t, a, beta, b)?;
        Ok(DualSeed { a, beta, b, gamma_tilde, c })
    }
}

fn dual_seed(t: &Tower, a: Elem, beta: Elem, b: usize) -> Result<(Elem, usize)> {
    let ell = t.ell();
    let m = t.m() as usize;
    let n = ell * m;
    if n < 2 {
        return Err(Error::InvalidParameter("length must be at least 2".into()));
    }
    let big = csc_lrs(t, a, beta, b, n - 1)?;
    let ker = big.genmat.right_kernel(t);
    if ker.rows() != 1 {
        return Err(Error::VerificationFailed(format!("dual of C_(n-1) has dimension {}", ker.rows())));
    }
    let alpha = ker.row(0).to_vec();
    let at = |i: usize, j: usize| alpha[i * m + j];
    // σ(α^{(i)}_{j−1}) = λ α^{(i)}_j and α^{(i−1)}_j = μ α^{(i)}_j, indices cyclic
    let lambda = t.div(t.sigma(at(0, m - 1), 1), at(0, 0))?;
    let mu = t.div(at(ell - 1, 0), at(0, 0))?;
    for i in 0..ell {
        for j in 0..m {
            let prev_j = if j == 0 { at(i, m - 1) } else { at(i, j - 1) };
            let prev_i = at((i + ell - 1) % ell, j);
            if t.sigma(prev_j, 1) != t.mul(lambda, at(i, j)) || prev_i != t.mul(mu, at(i, j)) {
                return Err(Error::VerificationFailed("dual vector is not shift-structured".into()));
            }
        }
    }
    let mu_inv = t.inv(mu).ok_or(Error::DivByZero)?;
    let c = (0..ell).find(|&c| t.pow(a, c as u128) == mu_inv).ok_or_else(|| Error::VerificationFailed("mu is not a power of a".into()))?;
    // Hilbert 90: λ = σ(ν)/ν; the solutions form an F_q-line
    let nu = t
        .fp_kernel(|v| vec![t.sub(t.sigma(v, 1), t.mul(lambda, v))])
        .into_iter()
        .next()
        .ok_or_else(|| Error::VerificationFailed("lambda has no Hilbert 90 preimage".into()))?;
    let gamma_tilde = t.div(at(0, 0), nu)?;
    if !t.is_normal(gamma_tilde) {
        return Err(Error::VerificationFailed("gamma tilde is not normal".into()));
    }
    Ok((gamma_tilde, c))
}

/// The dual of `C_{δ−1}(A, B)` written as `C_{n−δ+1}(A, B')` with
/// `B'_i = {σ^j(γ) a^{ci}}`, verified by exact orthogonality and dimension.
///
/// The candidate from the structure of the length-`n − 1` dual is tried first, then the other
/// Frobenius conjugates of `γ̃`. After that `γ` is solved for: for fixed `c` the orthogonality
/// conditions are `F_q`-linear in `γ`, and the first normal element of the solution space is
/// taken. If no `c` admits one, the same is done with the points `a^{−i}`.
pub fn dual_csc_lrs(t: &Tower, a: Elem, beta: Elem, b: usize, delta: usize) -> Result<DualCscLrs> {
    dual_from_seed(t, &DualSeed::new(t, a, beta, b)?, delta)
}

/// The points `a^{−i}`.
pub fn reflected_points(t: &Tower, a: Elem) -> Vec<Elem> {
    let inv = t.inv(a).expect("a is a root of unity");
    root_points(t, inv)
}

/// [`dual_csc_lrs`] reusing the `δ`-independent part of the computation.
pub fn dual_from_seed(t: &Tower, seed: &DualSeed, delta: usize) -> Result<DualCscLrs> {
    let n = t.ell() * t.m() as usize;
    if delta < 2 || delta > n {
        return Err(Error::InvalidParameter(format!("delta = {delta} outside [2, {n}]")));
    }
    let DualSeed { a, beta, b, gamma_tilde, c } = *seed;
    let primal = csc_lrs(t, a, beta, b, delta - 1)?;
    let kdual = n - delta + 1;
    let same = root_points(t, a);
    let try_pair = |c: usize, gamma: Elem| -> Result<Option<LrsCode>> {
        let dual = build_genmat(t, kdual, &same, &shifted_normal_bases(t, a, gamma, c))?;
        Ok(orthogonal(t, primal.genmat(), dual.genmat()).then_some(dual))
    };
    let m = t.m() as i64;
    let shift = (delta as i64 - n as i64).rem_euclid(m);
    let gamma = t.sigma(gamma_tilde, shift);
    if let Some(dual) = try_pair(c, gamma)? {
        return Ok(DualCscLrs { c, gamma, gamma_tilde, route: DualRoute::Constructive, dual });
    }
    for e in 0..m {
        let gamma = t.sigma(gamma_tilde, e);
        if let Some(dual) = try_pair(c, gamma)? {
            return Ok(DualCscLrs { c, gamma, gamma_tilde, route: DualRoute::FrobeniusShift(e as usize), dual });
        }
    }
    for (points, route) in [(same.clone(), DualRoute::Solved), (reflected_points(t, a), DualRoute::Reflected)] {
        for c in 0..t.ell() {
            if let Some(gamma) = solve_gamma(t, &primal, &points, a, c, kdual) {
                let dual = build_genmat(t, kdual, &points, &shifted_normal_bases(t, a, gamma, c))?;
                if !orthogonal(t, primal.genmat(), dual.genmat()) {
                    return Err(Error::VerificationFailed("solved dual basis is not orthogonal".into()));
                }
                return Ok(DualCscLrs { c, gamma, gamma_tilde, route, dual });
            }
        }
    }
    Err(Error::VerificationFailed("no (c, gamma) gives the dual code".into()))
}

/// The first normal `γ`, in the canonical order of the solution space, for which the rows
/// `σ^{u+j}(γ) a^{ci} N_u(p_i)` are orthogonal to the primal code.
fn solve_gamma(t: &Tower, primal: &LrsCode, points: &[Elem], a: Elem, c: usize, kdual: usize) -> Option<Elem> {
    let m = t.m() as usize;
    let g = primal.genmat();
    let scale: Vec<Elem> = (0..t.ell()).map(|i| t.pow(a, (c * i) as u128)).collect();
    let norms: Vec<Vec<Elem>> = points.iter().map(|&p| (0..kdual).map(|u| crate::skew_poly::norm(t, p, u)).collect()).collect();
    let ker = t.fp_kernel(|gamma| {
        let conj: Vec<Elem> = (0..(kdual + m) as i64).map(|k| t.sigma(gamma, k)).collect();
        let mut out = Vec::with_capacity(kdual * g.rows());
        for u in 0..kdual {
            for r in 0..g.rows() {
                let mut acc = Elem::ZERO;
                for i in 0..t.ell() {
                    let f = t.mul(scale[i], norms[i][u]);
                    for j in 0..m {
                        acc = t.add(acc, t.mul(t.mul(conj[u + j], f), g.get(r, i * m + j)));
                    }
                }
                out.push(acc);
            }
        }
        out
    });
    let p = t.p();
    let mut digits = vec![0u64; ker.len()];
    loop {
        // odometer over the F_p-span, skipping zero
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            return None;
        }
        let gamma = t.sum(digits.iter().zip(&ker).map(|(&k, &v)| t.mul(t.from_int(k), v)));
        if t.is_normal(gamma) {
            return Some(gamma);
        }
    }
}
