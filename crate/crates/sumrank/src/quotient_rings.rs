//! The rings `S = F[x]/(x^ℓ − 1)` and `R = S[z; σ]/(z^N − 1)`, the coordinate maps between
//! `F^n` and `R`, the factorization of `x^ℓ − 1` and its idempotents, and the evaluation maps.
//!
//! A vector of length `n = ℓN` is read as `ℓ` consecutive blocks of length `N`; entry `j` of
//! block `i` becomes the coefficient of `x^i z^j`.
//!
//! ```
//! use std::sync::Arc;
//! use sumrank::gf_tower::Tower;
//! use sumrank::quotient_rings::{factor_cyclotomic, BivariateRing};
//!
//! let t = Arc::new(Tower::new(2, 1, 2, 4, 15).unwrap());
//! let fact = factor_cyclotomic(&t, t.primitive_root_of_unity()).unwrap();
//! assert_eq!(fact.cosets()[1], vec![1, 4]);
//! assert_eq!(fact.cosets().len(), 9);
//! let ring = BivariateRing::new(t.clone(), 2).unwrap();
//! let c: Vec<_> = (0..30).map(|i| t.from_int(i % 2)).collect();
//! assert_eq!(ring.nu_inv(&ring.nu(&c).unwrap()), c);
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp;
use crate::gf_tower::{Elem, Tower};
use crate::skew_poly::SkewPoly;
use crate::upoly;

/// An element of `S = F[x]/(x^ℓ − 1)`: `coeffs[i]` is the coefficient of `x^i`, length `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SElem {
    coeffs: Vec<Elem>,
}

impl SElem {
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// An element of `R`; `coeffs[j]` is the coefficient of `z^j`, length `N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivarElem {
    coeffs: Vec<SElem>,
}

impl BivarElem {
    pub fn coeffs(&self) -> &[SElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }
}

/// An element of `S[z; σ]` without reduction modulo `z^N − 1`. Trailing zeros are trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    coeffs: Vec<SElem>,
}

impl BivarPoly {
    pub fn coeffs(&self) -> &[SElem] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn trimmed(mut coeffs: Vec<SElem>) -> BivarPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        BivarPoly { coeffs }
    }
}

/// A vector seen in `R' = S'[x]/(x^ℓ − 1)` with `S' = F[z; σ]/(z^N − 1)`:
/// `blocks[i]` holds the `z`-coefficients attached to `x^i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RPrimeElem {
    blocks: Vec<Vec<Elem>>,
}

impl RPrimeElem {
    pub fn blocks(&self) -> &[Vec<Elem>] {
        &self.blocks
    }
}

/// Context for arithmetic in `S` and `R` for a fixed `ℓ` (from the tower) and `N`.
#[derive(Clone, Debug)]
pub struct BivariateRing {
    tower: Arc<Tower>,
    ell: usize,
    n_blocks: usize,
}

impl BivariateRing {
    /// `z^N − 1` is central in `S[z; σ]` exactly when `σ^N` fixes `F`.
    pub fn new(tower: Arc<Tower>, n_blocks: usize) -> Result<BivariateRing> {
        if n_blocks == 0 {
            return Err(Error::InvalidParameter("N must be positive".into()));
        }
        let m = tower.m() as u64;
        let order = m / fp::gcd(m, tower.s() as u64);
        if n_blocks as u64 % order != 0 {
            return Err(Error::RingNotWellDefined(format!("sigma has order {order} on F, N = {n_blocks}")));
        }
        let ell = tower.ell();
        Ok(BivariateRing { tower, ell, n_blocks })
    }

    pub fn tower(&self) -> &Tower {
        &self.tower
    }

    pub fn tower_arc(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn n_blocks(&self) -> usize {
        self.n_blocks
    }

    pub fn len(&self) -> usize {
        self.ell * self.n_blocks
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    // ---- S ----

    pub fn s_zero(&self) -> SElem {
        SElem { coeffs: vec![Elem::ZERO; self.ell] }
    }

    pub fn s_one(&self) -> SElem {
        self.s_monomial(Elem::ONE, 0)
    }

    /// `c·x^k` in `S`.
    pub fn s_monomial(&self, c: Elem, k: usize) -> SElem {
        let mut s = self.s_zero();
        s.coeffs[k % self.ell] = c;
        s
    }

    /// Reduces an ordinary polynomial modulo `x^ℓ − 1`.
    pub fn s_from_poly(&self, p: &[Elem]) -> SElem {
        let t = &self.tower;
        let mut s = self.s_zero();
        for (i, &c) in p.iter().enumerate() {
            let k = i % self.ell;
            s.coeffs[k] = t.add(s.coeffs[k], c);
        }
        s
    }

    pub fn s_add(&self, a: &SElem, b: &SElem) -> SElem {
        let t = &self.tower;
        SElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| t.add(x, y)).collect() }
    }

    pub fn s_sub(&self, a: &SElem, b: &SElem) -> SElem {
        let t = &self.tower;
        SElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| t.sub(x, y)).collect() }
    }

    pub fn s_mul(&self, a: &SElem, b: &SElem) -> SElem {
        let t = &self.tower;
        let mut r = self.s_zero();
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                let k = (i + j) % self.ell;
                r.coeffs[k] = t.add(r.coeffs[k], t.mul(x, y));
            }
        }
        r
    }

    /// `σ^k` applied to the coefficients (σ fixes `x`).
    pub fn s_sigma(&self, a: &SElem, k: i64) -> SElem {
        SElem { coeffs: a.coeffs.iter().map(|&c| self.tower.sigma(c, k)).collect() }
    }

    pub fn s_eval(&self, a: &SElem, x: Elem) -> Elem {
        upoly::eval(&self.tower, &a.coeffs, x)
    }

    // ---- R and S[z; σ] ----

    pub fn zero(&self) -> BivarElem {
        BivarElem { coeffs: vec![self.s_zero(); self.n_blocks] }
    }

    pub fn one(&self) -> BivarElem {
        let mut f = self.zero();
        f.coeffs[0] = self.s_one();
        f
    }

    /// `c·x^i·z^j` in `R`.
    pub fn monomial(&self, c: Elem, i: usize, j: usize) -> BivarElem {
        let mut f = self.zero();
        f.coeffs[j % self.n_blocks] = self.s_monomial(c, i);
        f
    }

    pub fn add(&self, a: &BivarElem, b: &BivarElem) -> BivarElem {
        BivarElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.s_add(x, y)).collect() }
    }

    pub fn sub(&self, a: &BivarElem, b: &BivarElem) -> BivarElem {
        BivarElem { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| self.s_sub(x, y)).collect() }
    }

    /// Product in `R`: `(Σ f_j z^j)(Σ g_k z^k) = Σ f_j σ^j(g_k) z^{j+k mod N}`.
    pub fn mul(&self, a: &BivarElem, b: &BivarElem) -> BivarElem {
        let mut r = self.zero();
        for (j, f) in a.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (k, g) in b.coeffs.iter().enumerate() {
                let idx = (j + k) % self.n_blocks;
                let prod = self.s_mul(f, &self.s_sigma(g, j as i64));
                r.coeffs[idx] = self.s_add(&r.coeffs[idx], &prod);
            }
        }
        r
    }

    pub fn poly_from_elem(&self, a: &BivarElem) -> BivarPoly {
        BivarPoly::trimmed(a.coeffs.clone())
    }

    pub fn poly_from_coeffs(&self, coeffs: Vec<SElem>) -> BivarPoly {
        BivarPoly::trimmed(coeffs)
    }

    /// `z^N − 1` in `S[z; σ]`.
    pub fn poly_z_pow_minus_one(&self) -> BivarPoly {
        let t = &self.tower;
        let mut c = vec![self.s_zero(); self.n_blocks + 1];
        c[0] = self.s_monomial(t.neg(Elem::ONE), 0);
        c[self.n_blocks] = self.s_add(&c[self.n_blocks], &self.s_one());
        BivarPoly::trimmed(c)
    }

    /// Product in `S[z; σ]`.
    pub fn poly_mul(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        if a.coeffs.is_empty() || b.coeffs.is_empty() {
            return BivarPoly { coeffs: Vec::new() };
        }
        let mut r = vec![self.s_zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (j, f) in a.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (k, g) in b.coeffs.iter().enumerate() {
                let prod = self.s_mul(f, &self.s_sigma(g, j as i64));
                r[j + k] = self.s_add(&r[j + k], &prod);
            }
        }
        BivarPoly::trimmed(r)
    }

    pub fn poly_add(&self, a: &BivarPoly, b: &BivarPoly) -> BivarPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.s_zero();
        BivarPoly::trimmed((0..n).map(|i| self.s_add(a.coeffs.get(i).unwrap_or(&z), b.coeffs.get(i).unwrap_or(&z))).collect())
    }

    /// Reduction `S[z; σ] → R` modulo `z^N − 1`.
    pub fn reduce(&self, a: &BivarPoly) -> BivarElem {
        let mut r = self.zero();
        for (j, c) in a.coeffs.iter().enumerate() {
            let idx = j % self.n_blocks;
            r.coeffs[idx] = self.s_add(&r.coeffs[idx], c);
        }
        r
    }

    // ---- coordinates ----

    fn check_len(&self, v: &[Elem]) -> Result<()> {
        if v.len() != self.len() {
            return Err(Error::LengthMismatch { expected: self.len(), found: v.len() });
        }
        Ok(())
    }

    /// `ν(c) = Σ_j (Σ_i c^{(i)}_j x^i) z^j`.
    pub fn nu(&self, v: &[Elem]) -> Result<BivarElem> {
        self.check_len(v)?;
        let n = self.n_blocks;
        Ok(BivarElem { coeffs: (0..n).map(|j| SElem { coeffs: (0..self.ell).map(|i| v[i * n + j]).collect() }).collect() })
    }

    pub fn nu_inv(&self, f: &BivarElem) -> Vec<Elem> {
        let n = self.n_blocks;
        let mut v = vec![Elem::ZERO; self.len()];
        for (j, c) in f.coeffs.iter().enumerate() {
            for (i, &x) in c.coeffs.iter().enumerate() {
                v[i * n + j] = x;
            }
        }
        v
    }

    /// `μ(c) = Σ_i (Σ_j c^{(i)}_j z^j) x^i`.
    pub fn mu(&self, v: &[Elem]) -> Result<RPrimeElem> {
        self.check_len(v)?;
        Ok(RPrimeElem { blocks: v.chunks(self.n_blocks).map(|b| b.to_vec()).collect() })
    }

    pub fn mu_inv(&self, f: &RPrimeElem) -> Vec<Elem> {
        f.blocks.concat()
    }

    /// `x·f` in `R'`.
    pub fn rprime_mul_x(&self, f: &RPrimeElem) -> RPrimeElem {
        let mut blocks = f.blocks.clone();
        blocks.rotate_right(1);
        RPrimeElem { blocks }
    }

    /// `z·f` in `R'`: each block `Σ c_j z^j` becomes `Σ σ(c_j) z^{j+1}` modulo `z^N − 1`.
    pub fn rprime_mul_z(&self, f: &RPrimeElem) -> RPrimeElem {
        let t = &self.tower;
        let blocks = f
            .blocks
            .iter()
            .map(|b| {
                let mut nb: Vec<Elem> = b.iter().map(|&c| t.sigma(c, 1)).collect();
                nb.rotate_right(1);
                nb
            })
            .collect();
        RPrimeElem { blocks }
    }

    // ---- evaluation maps ----

    fn check_root(&self, a: Elem) -> Result<()> {
        if a.is_zero() || self.tower.pow(a, self.ell as u128) != Elem::ONE {
            return Err(Error::NotRootOfUnity);
        }
        Ok(())
    }

    /// `Ev_{a,z}`: substitutes `x = a` in every `z`-coefficient.
    pub fn ev_partial(&self, a: Elem, f: &BivarElem) -> Result<SkewPoly> {
        self.check_root(a)?;
        Ok(SkewPoly::new(f.coeffs.iter().map(|c| self.s_eval(c, a)).collect()))
    }

    pub fn ev_partial_poly(&self, a: Elem, f: &BivarPoly) -> Result<SkewPoly> {
        self.check_root(a)?;
        Ok(SkewPoly::new(f.coeffs.iter().map(|c| self.s_eval(c, a)).collect()))
    }

    /// `Ev_{a,β}(f) = f(a, 1^β)`, arithmetic evaluation of the partial evaluation.
    pub fn ev_total_arith(&self, a: Elem, beta: Elem, f: &BivarElem) -> Result<Elem> {
        let one_b = crate::skew_poly::conjugate_of_one(&self.tower, beta)?;
        Ok(self.ev_partial(a, f)?.evaluate(&self.tower, one_b))
    }

    /// `Ev_{a,β}(f) = (Σ_j f_j(a) σ^j(β))·β^{−1}`.
    pub fn ev_total_formula(&self, a: Elem, beta: Elem, f: &BivarElem) -> Result<Elem> {
        let t = &self.tower;
        let inv = t.inv(beta).ok_or(Error::ZeroBeta)?;
        self.check_root(a)?;
        let s = t.sum(f.coeffs.iter().enumerate().map(|(j, c)| t.mul(self.s_eval(c, a), t.sigma(beta, j as i64))));
        Ok(t.mul(s, inv))
    }

    /// `Ev_{a,β}(f)`, computed both ways; disagreement is reported as a verification failure.
    pub fn ev_total(&self, a: Elem, beta: Elem, f: &BivarElem) -> Result<Elem> {
        let x = self.ev_total_arith(a, beta, f)?;
        let y = self.ev_total_formula(a, beta, f)?;
        if x != y {
            return Err(Error::VerificationFailed("total evaluation routes disagree".into()));
        }
        Ok(x)
    }
}

/// The factorization `x^ℓ − 1 = ∏ m_i(x)` over `F` by `q0^m`-cyclotomic cosets modulo `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycFactorization {
    a: Elem,
    ell: usize,
    /// Each coset in orbit order `j, jQ, jQ², …` with `Q = q0^m`; `cosets[i][0]` is its minimum.
    cosets: Vec<Vec<usize>>,
    /// `m_i(x)`, little endian, monic.
    factors: Vec<Vec<Elem>>,
}

impl CycFactorization {
    pub fn root(&self) -> Elem {
        self.a
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn cosets(&self) -> &[Vec<usize>] {
        &self.cosets
    }

    pub fn factors(&self) -> &[Vec<Elem>] {
        &self.factors
    }

    pub fn count(&self) -> usize {
        self.cosets.len()
    }

    /// Coset representatives `j_i` (the minimal exponents).
    pub fn reps(&self) -> Vec<usize> {
        self.cosets.iter().map(|c| c[0]).collect()
    }

    /// Coset sizes `d_i`.
    pub fn degrees(&self) -> Vec<usize> {
        self.cosets.iter().map(|c| c.len()).collect()
    }

    /// `(i, h)` with `j ≡ j_i·Q^h (mod ℓ)`.
    pub fn locate(&self, j: usize) -> (usize, usize) {
        let j = j % self.ell;
        for (i, c) in self.cosets.iter().enumerate() {
            if let Some(h) = c.iter().position(|&x| x == j) {
                return (i, h);
            }
        }
        unreachable!("cosets partition Z/ell")
    }

    /// `a^{j_i}` for coset `i`.
    pub fn rep_root(&self, t: &Tower, i: usize) -> Elem {
        t.pow(self.a, self.cosets[i][0] as u128)
    }
}

/// The cosets of `Z/ℓ` under multiplication by `Q`, each listed in orbit order and sorted by
/// their minimal element.
pub fn cyclotomic_cosets(ell: usize, q: u128) -> Vec<Vec<usize>> {
    let q = (q % ell as u128) as usize;
    let mut seen = vec![false; ell];
    let mut out = Vec::new();
    for j in 0..ell {
        if seen[j] {
            continue;
        }
        let mut c = Vec::new();
        let mut x = j;
        while !seen[x] {
            seen[x] = true;
            c.push(x);
            x = x * q % ell;
        }
        out.push(c);
    }
    out
}

/// Factors `x^ℓ − 1` over `F` using the primitive `ℓ`-th root `a`.
pub fn factor_cyclotomic(t: &Tower, a: Elem) -> Result<CycFactorization> {
    let ell = t.ell();
    if ell as u64 % t.p() == 0 {
        return Err(Error::PDividesEll);
    }
    if a.is_zero() || t.order(a) != ell as u128 {
        return Err(Error::NotRootOfUnity);
    }
    let q = t.params().q0().pow(t.m());
    let cosets = cyclotomic_cosets(ell, q);
    let mut factors = Vec::new();
    for c in &cosets {
        let mut f = vec![Elem::ONE];
        for &j in c {
            f = upoly::mul(t, &f, &[t.neg(t.pow(a, j as u128)), Elem::ONE]);
        }
        if f.iter().any(|&x| !t.in_subfield(x, t.deg_f()).unwrap_or(false)) {
            return Err(Error::VerificationFailed(format!("factor for coset {c:?} is not defined over F")));
        }
        factors.push(f);
    }
    Ok(CycFactorization { a, ell, cosets, factors })
}

/// The primitive idempotents `e_i = a_i·(x^ℓ − 1)/m_i` of `S`.
pub fn primitive_idempotents(ring: &BivariateRing, fact: &CycFactorization) -> Result<Vec<SElem>> {
    let t = ring.tower();
    let full = upoly::x_pow_minus_one(t, fact.ell);
    let mut out = Vec::new();
    for f in &fact.factors {
        let (cof, r) = upoly::divrem(t, &full, f);
        debug_assert!(r.is_empty());
        let (g, u, _) = upoly::ext_gcd(t, &cof, f);
        if g != vec![Elem::ONE] {
            return Err(Error::NonCoprimeFactors);
        }
        let e = ring.s_from_poly(&upoly::mul(t, &u, &cof));
        if e.coeffs.iter().any(|&c| !t.in_subfield(c, t.deg_f()).unwrap_or(false) || t.sigma(c, 1) != c) {
            return Err(Error::VerificationFailed("idempotent is not sigma-invariant over F".into()));
        }
        out.push(e);
    }
    Ok(out)
}

/// Idempotents plus interpolation data for the isomorphism `R ≅ ∏_i F_{q0^{m d_i}}[z; σ]/(z^N − 1)`.
///
/// Component `i` is identified with its image under `x ↦ a^{j_i}`.
#[derive(Clone, Debug)]
pub struct Crt {
    ring: BivariateRing,
    fact: CycFactorization,
    idempotents: Vec<SElem>,
    /// Lagrange basis polynomials at the roots of each `m_i`, in orbit order.
    lagrange: Vec<Vec<Vec<Elem>>>,
}

impl Crt {
    pub fn new(ring: BivariateRing, fact: CycFactorization) -> Result<Crt> {
        let idempotents = primitive_idempotents(&ring, &fact)?;
        let t = ring.tower();
        let mut lagrange = Vec::new();
        for c in &fact.cosets {
            let roots: Vec<Elem> = c.iter().map(|&j| t.pow(fact.a, j as u128)).collect();
            let mut basis = Vec::new();
            for (h, &r) in roots.iter().enumerate() {
                let mut num = vec![Elem::ONE];
                let mut den = Elem::ONE;
                for (k, &s) in roots.iter().enumerate() {
                    if k != h {
                        num = upoly::mul(t, &num, &[t.neg(s), Elem::ONE]);
                        den = t.mul(den, t.sub(r, s));
                    }
                }
                let inv = t.inv(den).ok_or(Error::NonCoprimeFactors)?;
                basis.push(num.into_iter().map(|x| t.mul(x, inv)).collect());
            }
            lagrange.push(basis);
        }
        Ok(Crt { ring, fact, idempotents, lagrange })
    }

    pub fn ring(&self) -> &BivariateRing {
        &self.ring
    }

    pub fn factorization(&self) -> &CycFactorization {
        &self.fact
    }

    pub fn idempotents(&self) -> &[SElem] {
        &self.idempotents
    }

    /// The unique `r(x) ∈ F[x]` of degree `< d_i` with `r(a^{j_i}) = c`, for
    /// `c ∈ F_{q0^{m d_i}}`; reduced into `S`.
    pub fn lift(&self, i: usize, c: Elem) -> Result<SElem> {
        let t = self.ring.tower();
        let mut r: Vec<Elem> = Vec::new();
        for (h, l) in self.lagrange[i].iter().enumerate() {
            // value at the h-th conjugate root is the h-th Frobenius conjugate of c
            let v = t.frob_f(c, h as i64);
            r = upoly::add(t, &r, &l.iter().map(|&x| t.mul(x, v)).collect::<Vec<_>>());
        }
        if r.iter().any(|&x| !t.in_subfield(x, t.deg_f()).unwrap_or(false)) {
            return Err(Error::NotInSubfield(format!("{} is not in the component field of coset {i}", t.format(c))));
        }
        Ok(self.ring.s_from_poly(&r))
    }

    /// `ρ(f)`: the partial evaluations at the coset representatives.
    pub fn rho(&self, f: &BivarElem) -> Vec<SkewPoly> {
        let t = self.ring.tower();
        (0..self.fact.count()).map(|i| self.ring.ev_partial(self.fact.rep_root(t, i), f).expect("root of unity")).collect()
    }

    pub fn rho_poly(&self, f: &BivarPoly) -> Vec<SkewPoly> {
        let t = self.ring.tower();
        (0..self.fact.count()).map(|i| self.ring.ev_partial_poly(self.fact.rep_root(t, i), f).expect("root of unity")).collect()
    }

    /// `Σ e_i(x)·lift(f_i)` in `S[z; σ]` (not reduced modulo `z^N − 1`).
    pub fn inverse_poly(&self, comps: &[SkewPoly]) -> Result<BivarPoly> {
        if comps.len() != self.fact.count() {
            return Err(Error::ComponentCountMismatch { expected: self.fact.count(), found: comps.len() });
        }
        let len = comps.iter().filter_map(|c| c.degree()).max().map_or(0, |d| d + 1);
        let mut coeffs = vec![self.ring.s_zero(); len];
        for (i, g) in comps.iter().enumerate() {
            for (j, &c) in g.coeffs().iter().enumerate() {
                let l = self.lift(i, c)?;
                let term = self.ring.s_mul(&self.idempotents[i], &l);
                coeffs[j] = self.ring.s_add(&coeffs[j], &term);
            }
        }
        Ok(BivarPoly::trimmed(coeffs))
    }

    /// `ρ^{−1}`; components must have degree `< N`.
    pub fn inverse(&self, comps: &[SkewPoly]) -> Result<BivarElem> {
        Ok(self.ring.reduce(&self.inverse_poly(comps)?))
    }
}
