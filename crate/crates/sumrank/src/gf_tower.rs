//! The field tower `F_p ⊆ F_{q0} ⊆ {F, F_q} ⊆ F_{q^m}`.
//!
//! Here `q0 = p^e`, `F = F_{q0^m}`, `F_q = F_{q0^s}` and the ambient field is `F_{q^m}`, of
//! degree `e·s·m` over `F_p`. All four fields live inside the ambient field, so inclusions
//! are identities and a subfield is only ever named by its degree over `F_p`.
//!
//! Elements are stored as the integer whose base-`p` digits are the coefficients of the
//! polynomial representative, least significant digit first. That integer is also the
//! canonical order used to pick distinguished elements.
//!
//! ```
//! use sumrank::gf_tower::Tower;
//!
//! let t = Tower::new(2, 1, 2, 4, 15).unwrap();
//! assert_eq!(t.degree(), 8);
//! let a = t.primitive_root_of_unity();
//! assert_eq!(t.pow(a, 15), t.one());
//! assert!(t.in_subfield(a, t.deg_q()).unwrap());
//! ```

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fp;

/// An element of the ambient field, as its canonical integer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u64);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Parameters `(p, e, m, s, ℓ)` of a tower.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TowerParams {
    pub p: u64,
    pub e: u32,
    pub m: u32,
    pub s: u32,
    pub ell: u64,
}

impl TowerParams {
    pub fn big_degree(&self) -> u32 {
        self.e * self.s * self.m
    }

    pub fn q0(&self) -> u128 {
        (self.p as u128).pow(self.e)
    }

    pub fn q(&self) -> u128 {
        self.q0().pow(self.s)
    }

    /// Block length restricted to `N = m`.
    pub fn n(&self) -> usize {
        self.ell as usize * self.m as usize
    }
}

/// Largest field for which log/antilog tables are built.
const TABLE_LIMIT: u64 = 1 << 20;
/// Largest supported field size.
const SIZE_LIMIT: u128 = 1 << 62;

#[derive(Clone, Debug)]
struct LogTables {
    exp: Vec<u64>,
    log: Vec<u32>,
}

/// A concrete tower: the parameters plus the ambient field `F_{p^D}`, `D = e·s·m`.
#[derive(Clone)]
pub struct Tower {
    params: TowerParams,
    degree: u32,
    size: u64,
    /// Monic modulus, little endian, length `degree + 1`.
    modulus: Vec<u64>,
    /// Modulus as an integer, for `p = 2` bit arithmetic.
    modulus_bits: u128,
    tables: Option<LogTables>,
    /// `p^j mod (size - 1)` for `j < degree`.
    frob_exp: Vec<u64>,
    /// `F_p`-basis of the subfield of each degree dividing `degree`.
    subfields: BTreeMap<u32, Vec<Elem>>,
}

impl fmt::Debug for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Tower({})", self.describe())
    }
}

impl Tower {
    /// Builds the tower for `(p, e, m, s, ℓ)`.
    ///
    /// The modulus is the smallest monic irreducible polynomial of degree `e·s·m` over `F_p`,
    /// in the canonical order of coefficient sequences.
    pub fn new(p: u64, e: u32, m: u32, s: u32, ell: u64) -> Result<Tower> {
        Self::from_params(TowerParams { p, e, m, s, ell })
    }

    pub fn from_params(params: TowerParams) -> Result<Tower> {
        let TowerParams { p, e, m, s, ell } = params;
        if !fp::is_prime(p) || p > u32::MAX as u64 {
            return Err(Error::NonPrimeP(p));
        }
        if e == 0 || m == 0 || s == 0 || ell == 0 {
            return Err(Error::InvalidParameter("e, m, s and ell must be positive".into()));
        }
        let degree = e.checked_mul(s).and_then(|x| x.checked_mul(m)).ok_or(Error::FieldTooLarge { p, degree: u32::MAX })?;
        let size = (p as u128).checked_pow(degree).filter(|&x| x <= SIZE_LIMIT).ok_or(Error::FieldTooLarge { p, degree })?;
        let q_minus_one = params.q() - 1;
        if q_minus_one % ell as u128 != 0 {
            return Err(Error::EllNotDividingQMinus1 { ell, q_minus_one });
        }
        if ell % p == 0 {
            return Err(Error::PDividesEll);
        }
        let size = size as u64;
        let modulus = find_modulus(p, degree);
        let modulus_bits = if p == 2 { modulus.iter().enumerate().map(|(i, &c)| (c as u128) << i).sum() } else { 0 };
        let frob_exp = (0..degree).map(|j| fp::pow_mod(p, j as u128, size - 1)).collect();
        let mut tower = Tower { params, degree, size, modulus, modulus_bits, tables: None, frob_exp, subfields: BTreeMap::new() };
        if size <= TABLE_LIMIT && size > 2 {
            tower.tables = Some(tower.build_tables());
        }
        for d in 1..=degree {
            if degree % d == 0 {
                let basis = tower.compute_subfield_basis(d);
                tower.subfields.insert(d, basis);
            }
        }
        Ok(tower)
    }

    pub fn params(&self) -> &TowerParams {
        &self.params
    }

    pub fn p(&self) -> u64 {
        self.params.p
    }

    pub fn m(&self) -> u32 {
        self.params.m
    }

    pub fn s(&self) -> u32 {
        self.params.s
    }

    pub fn e(&self) -> u32 {
        self.params.e
    }

    pub fn ell(&self) -> usize {
        self.params.ell as usize
    }

    /// Degree of the ambient field over `F_p`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Degree of `F = F_{q0^m}` over `F_p`.
    pub fn deg_f(&self) -> u32 {
        self.params.e * self.params.m
    }

    /// Degree of `F_q = F_{q0^s}` over `F_p`.
    pub fn deg_q(&self) -> u32 {
        self.params.e * self.params.s
    }

    /// Degree of `F_{q0}` over `F_p`.
    pub fn deg_q0(&self) -> u32 {
        self.params.e
    }

    /// Number of elements of the ambient field.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Modulus coefficients, least significant first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    /// The class of `x` in the polynomial representation.
    pub fn generator_x(&self) -> Elem {
        if self.degree == 1 {
            // x mod (x - c) is the constant c
            Elem((self.params.p - self.modulus[0]) % self.params.p)
        } else {
            Elem(self.params.p)
        }
    }

    /// The image of an integer in `F_p ⊆` ambient field.
    pub fn from_int(&self, n: u64) -> Elem {
        Elem(n % self.params.p)
    }

    /// Base-`p` digits of the representative, least significant first.
    pub fn digits(&self, x: Elem) -> Vec<u64> {
        let p = self.params.p;
        let mut v = x.0;
        (0..self.degree)
            .map(|_| {
                let d = v % p;
                v /= p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u64]) -> Elem {
        let p = self.params.p;
        Elem(digits.iter().rev().fold(0u64, |acc, &d| acc * p + d % p))
    }

    pub fn is_valid(&self, x: Elem) -> bool {
        x.0 < self.size
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.params.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        let p = self.params.p;
        let (mut x, mut y, mut r, mut w) = (a.0, b.0, 0u64, 1u64);
        while x != 0 || y != 0 {
            r += ((x % p + y % p) % p) * w;
            x /= p;
            y /= p;
            w = w.wrapping_mul(p);
        }
        Elem(r)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.params.p == 2 {
            return a;
        }
        let p = self.params.p;
        let (mut x, mut r, mut w) = (a.0, 0u64, 1u64);
        while x != 0 {
            r += ((p - x % p) % p) * w;
            x /= p;
            w = w.wrapping_mul(p);
        }
        Elem(r)
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn sum(&self, it: impl IntoIterator<Item = Elem>) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let i = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                Elem(t.exp[i])
            }
            None => self.mul_poly(a, b),
        }
    }

    /// Multiplication through the polynomial representation, without tables.
    pub fn mul_poly(&self, a: Elem, b: Elem) -> Elem {
        let p = self.params.p;
        let d = self.degree as usize;
        if p == 2 {
            let mut r: u128 = 0;
            for i in 0..d {
                if (b.0 >> i) & 1 == 1 {
                    r ^= (a.0 as u128) << i;
                }
            }
            for i in (d..2 * d).rev() {
                if (r >> i) & 1 == 1 {
                    r ^= self.modulus_bits << (i - d);
                }
            }
            return Elem(r as u64);
        }
        let x = self.digits(a);
        let y = self.digits(b);
        let r = fp::poly::mul_mod(&x, &y, &self.modulus, p);
        self.from_digits(&r)
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a.is_zero() {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let n = self.size as usize - 1;
                let l = t.log[a.0 as usize] as usize;
                Elem(t.exp[(n - l) % n])
            }
            None => self.pow(a, (self.size - 2) as u128),
        })
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        let bi = self.inv(b).ok_or(Error::DivByZero)?;
        Ok(self.mul(a, bi))
    }

    pub fn pow(&self, a: Elem, k: u128) -> Elem {
        if k == 0 {
            return Elem::ONE;
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        if let Some(t) = &self.tables {
            let n = self.size as u128 - 1;
            let i = (t.log[a.0 as usize] as u128 * (k % n)) % n;
            return Elem(t.exp[i as usize]);
        }
        let mut r = Elem::ONE;
        let mut b = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul_poly(r, b);
            }
            b = self.mul_poly(b, b);
            k >>= 1;
        }
        r
    }

    /// `x^(p^j)`; `j` is taken modulo the ambient degree.
    pub fn frob(&self, x: Elem, j: i64) -> Elem {
        let d = self.degree as i64;
        let j = j.rem_euclid(d) as usize;
        if j == 0 || x.is_zero() {
            return x;
        }
        if let Some(t) = &self.tables {
            let n = self.size - 1;
            let l = t.log[x.0 as usize] as u64;
            return Elem(t.exp[fp::mul_mod(l, self.frob_exp[j], n) as usize]);
        }
        let mut r = x;
        for _ in 0..j {
            r = self.pow(r, self.params.p as u128);
        }
        r
    }

    /// `σ^k(x) = x^(q^k)`; `k` may be negative.
    #[inline]
    pub fn sigma(&self, x: Elem, k: i64) -> Elem {
        self.frob(x, k * self.deg_q() as i64)
    }

    /// `x^(q0^(m·h))`, the Frobenius of the extension `F ⊆ F_{q^m}` raised to `h`.
    pub fn frob_f(&self, x: Elem, h: i64) -> Elem {
        self.frob(x, h * self.deg_f() as i64)
    }

    /// `x^(q0^v)`.
    pub fn frob_q0(&self, x: Elem, v: i64) -> Elem {
        self.frob(x, v * self.deg_q0() as i64)
    }

    /// Whether `x` lies in the subfield of degree `d` over `F_p`.
    pub fn in_subfield(&self, x: Elem, d: u32) -> Result<bool> {
        if d == 0 || self.degree % d != 0 {
            return Err(Error::BadDegree { sub: d, big: self.degree });
        }
        Ok(self.frob(x, d as i64) == x)
    }

    /// `F_p`-basis of the subfield of degree `d`.
    pub fn subfield_basis(&self, d: u32) -> Result<&[Elem]> {
        self.subfields.get(&d).map(|v| v.as_slice()).ok_or(Error::BadDegree { sub: d, big: self.degree })
    }

    /// All elements of the subfield of degree `d`, in canonical order.
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<Elem>> {
        let basis = self.subfield_basis(d)?;
        let mut out = self.fp_span(basis);
        out.sort();
        Ok(out)
    }

    /// All `F_p`-linear combinations of `basis` (assumed independent).
    pub fn fp_span(&self, basis: &[Elem]) -> Vec<Elem> {
        let p = self.params.p;
        let mut out = vec![Elem::ZERO];
        for &b in basis {
            let prev = out.clone();
            let mut mult = b;
            for _ in 1..p {
                out.extend(prev.iter().map(|&x| self.add(x, mult)));
                mult = self.add(mult, b);
            }
        }
        out
    }

    /// An `F_p`-basis of the kernel of an `F_p`-linear map out of the ambient field.
    pub fn fp_kernel(&self, map: impl Fn(Elem) -> Vec<Elem>) -> Vec<Elem> {
        let basis = self.subfield_basis(self.degree()).expect("ambient degree").to_vec();
        let rows: Vec<Vec<u64>> = basis.iter().map(|&b| map(b).into_iter().flat_map(|y| self.digits(y)).collect()).collect();
        fp::left_kernel(&rows, self.params.p)
            .into_iter()
            .map(|c| self.sum(c.iter().zip(&basis).filter(|(&k, _)| k != 0).map(|(&k, &b)| self.mul(self.from_int(k), b))))
            .collect()
    }

    /// `F_p`-rank of a set of elements.
    pub fn fp_rank(&self, vals: &[Elem]) -> usize {
        if self.params.p == 2 {
            return fp::rank_gf2(vals.iter().map(|x| x.0));
        }
        let mut ech = fp::Echelon::new(self.params.p);
        for &v in vals {
            ech.insert(&self.digits(v));
        }
        ech.rank()
    }

    /// Dimension over the subfield of degree `base` of the span of `vals`.
    pub fn rank_over(&self, vals: &[Elem], base: u32) -> Result<usize> {
        let kappa = self.subfield_basis(base)?;
        if base == 1 {
            return Ok(self.fp_rank(vals));
        }
        let mut all = Vec::with_capacity(vals.len() * kappa.len());
        for &v in vals {
            for &k in kappa {
                all.push(self.mul(k, v));
            }
        }
        Ok(self.fp_rank(&all) / base as usize)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, x: Elem) -> u128 {
        assert!(!x.is_zero(), "order of zero");
        let mut n = self.size as u128 - 1;
        for r in fp::prime_factors(n) {
            while n % r == 0 && self.pow(x, n / r) == Elem::ONE {
                n /= r;
            }
        }
        n
    }

    fn has_order(&self, x: Elem, ell: u128) -> bool {
        if x.is_zero() || self.pow(x, ell) != Elem::ONE {
            return false;
        }
        fp::prime_factors(ell).into_iter().all(|r| self.pow(x, ell / r) != Elem::ONE)
    }

    /// The smallest element (canonical order) of multiplicative order exactly `ℓ`.
    ///
    /// It lies in `F_q` because `ℓ` divides `q − 1`.
    pub fn primitive_root_of_unity(&self) -> Elem {
        let ell = self.params.ell as u128;
        (1..self.size).map(Elem).find(|&x| self.has_order(x, ell)).expect("ell divides q - 1")
    }

    /// Whether `{β, σ(β), …, σ^{m−1}(β)}` is a basis of `F_{q^m}` over `F_q`.
    pub fn is_normal(&self, beta: Elem) -> bool {
        if beta.is_zero() {
            return false;
        }
        let orbit: Vec<Elem> = (0..self.params.m as i64).map(|i| self.sigma(beta, i)).collect();
        self.rank_over(&orbit, self.deg_q()).expect("deg_q divides degree") == self.params.m as usize
    }

    /// The first normal element of `F_q ⊆ F_{q^m}` in canonical order.
    pub fn normal_element(&self) -> Elem {
        (1..self.size).map(Elem).find(|&x| self.is_normal(x)).expect("normal elements exist")
    }

    /// The smallest generator of the multiplicative group.
    pub fn primitive_element(&self) -> Elem {
        let n = self.size as u128 - 1;
        let factors = fp::prime_factors(n);
        (1..self.size)
            .map(Elem)
            .find(|&x| factors.iter().all(|&r| self.pow_slow(x, n / r) != Elem::ONE))
            .expect("multiplicative group is cyclic")
    }

    fn pow_slow(&self, a: Elem, mut k: u128) -> Elem {
        let mut r = Elem::ONE;
        let mut b = a;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul_poly(r, b);
            }
            b = self.mul_poly(b, b);
            k >>= 1;
        }
        r
    }

    fn build_tables(&self) -> LogTables {
        let g = self.primitive_element();
        let n = self.size as usize - 1;
        let mut exp = vec![0u64; 2 * n];
        let mut log = vec![0u32; self.size as usize];
        let mut x = Elem::ONE;
        for i in 0..n {
            exp[i] = x.0;
            exp[i + n] = x.0;
            log[x.0 as usize] = i as u32;
            x = self.mul_poly(x, g);
        }
        LogTables { exp, log }
    }

    fn compute_subfield_basis(&self, d: u32) -> Vec<Elem> {
        let p = self.params.p;
        // kernel of x -> x^(p^d) - x over F_p
        let rows: Vec<Vec<u64>> = (0..self.degree)
            .map(|i| {
                let b = Elem(p.pow(i));
                self.digits(self.sub(self.frob(b, d as i64), b))
            })
            .collect();
        let ker = fp::left_kernel(&rows, p);
        ker.iter()
            .map(|c| {
                let mut x = Elem::ZERO;
                for (i, &ci) in c.iter().enumerate() {
                    x = self.add(x, self.mul(Elem(ci), Elem(p.pow(i as u32))));
                }
                x
            })
            .collect()
    }

    /// Text form of an element: hexadecimal for `p = 2`, base-`p` digits otherwise,
    /// most significant first.
    pub fn format(&self, x: Elem) -> String {
        format_digits(self.params.p, x.0)
    }

    pub fn parse(&self, s: &str) -> Result<Elem> {
        let v = parse_digits(self.params.p, s)?;
        if v >= self.size {
            return Err(Error::Parse(format!("element {s} out of range")));
        }
        Ok(Elem(v))
    }

    /// Text form `p=..,e=..,m=..,s=..,ell=..,modulus=<digits>`.
    pub fn describe(&self) -> String {
        let TowerParams { p, e, m, s, ell } = self.params;
        let mut v = 0u128;
        for &c in self.modulus.iter().rev() {
            v = v * p as u128 + c as u128;
        }
        let modulus = if p == 2 { format!("{v:x}") } else { self.modulus.iter().rev().map(|&c| digit_char(p, c)).collect::<String>() };
        format!("p={p},e={e},m={m},s={s},ell={ell},modulus={modulus}")
    }

    /// Parses the output of [`Tower::describe`], checking the modulus if present.
    pub fn from_description(text: &str) -> Result<Tower> {
        let mut kv = BTreeMap::new();
        for part in text.trim().split(',') {
            let (k, v) = part.split_once('=').ok_or_else(|| Error::Parse(format!("bad field `{part}`")))?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let get = |k: &str| -> Result<u64> {
            kv.get(k).ok_or_else(|| Error::Parse(format!("missing `{k}`")))?.parse::<u64>().map_err(|e| Error::Parse(format!("{k}: {e}")))
        };
        let small = |k: &str| -> Result<u32> { u32::try_from(get(k)?).map_err(|_| Error::Parse(format!("{k} out of range"))) };
        let t = Tower::new(get("p")?, small("e")?, small("m")?, small("s")?, get("ell")?)?;
        if let Some(md) = kv.get("modulus") {
            let want = t.describe();
            let got = want.rsplit_once('=').map(|x| x.1).unwrap_or("");
            if got != md {
                return Err(Error::Parse(format!("modulus {md} does not match the canonical modulus {got}")));
            }
        }
        Ok(t)
    }
}

/// A fixed basis of the subfield `L` (degree `top`) over the subfield `K` (degree `base`),
/// with coordinate maps `L → K^M`, `M = top / base`.
#[derive(Clone, Debug)]
pub struct RelativeBasis {
    base: u32,
    top: u32,
    basis: Vec<Elem>,
    kappa: Vec<Elem>,
    solver: fp::Echelon,
}

impl RelativeBasis {
    pub fn new(t: &Tower, base: u32, top: u32) -> Result<RelativeBasis> {
        if base == 0 || top % base != 0 {
            return Err(Error::BadDegree { sub: base, big: top });
        }
        let kappa = t.subfield_basis(base)?.to_vec();
        let mut basis: Vec<Elem> = Vec::new();
        for &b in t.subfield_basis(top)? {
            let mut cand = basis.clone();
            cand.push(b);
            if t.rank_over(&cand, base)? == cand.len() {
                basis = cand;
            }
        }
        debug_assert_eq!(basis.len() as u32, top / base);
        let mut solver = fp::Echelon::new(t.p());
        for &l in &basis {
            for &k in &kappa {
                solver.insert(&t.digits(t.mul(k, l)));
            }
        }
        Ok(RelativeBasis { base, top, basis, kappa, solver })
    }

    pub fn base(&self) -> u32 {
        self.base
    }

    pub fn top(&self) -> u32 {
        self.top
    }

    /// The basis `λ_0, …, λ_{M−1}` of `L` over `K`.
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates `c_h ∈ K` with `x = Σ c_h λ_h`.
    pub fn coords(&self, t: &Tower, x: Elem) -> Result<Vec<Elem>> {
        let c = self.solver.decompose(&t.digits(x)).ok_or_else(|| Error::NotInSubfield(t.format(x)))?;
        let k = self.kappa.len();
        Ok((0..self.basis.len())
            .map(|h| {
                let mut acc = Elem::ZERO;
                for (i, &kap) in self.kappa.iter().enumerate() {
                    let ci = c[h * k + i];
                    if ci != 0 {
                        acc = t.add(acc, t.mul(t.from_int(ci), kap));
                    }
                }
                acc
            })
            .collect())
    }

    pub fn from_coords(&self, t: &Tower, c: &[Elem]) -> Elem {
        t.sum(c.iter().zip(&self.basis).map(|(&a, &l)| t.mul(a, l)))
    }
}

fn find_modulus(p: u64, degree: u32) -> Vec<u64> {
    let d = degree as usize;
    let mut c = vec![0u64; d];
    loop {
        let mut f = c.clone();
        f.push(1);
        if fp::poly::is_irreducible(&f, p) {
            return f;
        }
        // next coefficient vector in canonical order
        let mut i = 0;
        loop {
            c[i] += 1;
            if c[i] < p {
                break;
            }
            c[i] = 0;
            i += 1;
            assert!(i < d, "irreducible polynomials exist in every degree");
        }
    }
}

fn digit_char(p: u64, d: u64) -> char {
    debug_assert!(d < p);
    std::char::from_digit(d as u32, 36).unwrap_or('?')
}

pub(crate) fn format_digits(p: u64, mut v: u64) -> String {
    if p == 2 {
        return format!("{v:x}");
    }
    if p > 36 {
        let mut ds = Vec::new();
        loop {
            ds.push((v % p).to_string());
            v /= p;
            if v == 0 {
                break;
            }
        }
        ds.reverse();
        return ds.join(".");
    }
    let mut s = Vec::new();
    loop {
        s.push(digit_char(p, v % p));
        v /= p;
        if v == 0 {
            break;
        }
    }
    s.iter().rev().collect()
}

pub(crate) fn parse_digits(p: u64, s: &str) -> Result<u64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad element `{s}`"));
    if s.is_empty() {
        return Err(bad());
    }
    if p == 2 {
        return u64::from_str_radix(s, 16).map_err(|_| bad());
    }
    let mut v: u64 = 0;
    if p > 36 {
        for part in s.split('.') {
            let d: u64 = part.parse().map_err(|_| bad())?;
            if d >= p {
                return Err(bad());
            }
            v = v.checked_mul(p).and_then(|x| x.checked_add(d)).ok_or_else(bad)?;
        }
        return Ok(v);
    }
    for ch in s.chars() {
        let d = ch.to_digit(36).ok_or_else(bad)? as u64;
        if d >= p {
            return Err(bad());
        }
        v = v.checked_mul(p).and_then(|x| x.checked_add(d)).ok_or_else(bad)?;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_towers() -> Vec<Tower> {
        [(2, 1, 2, 4, 15), (2, 1, 2, 3, 7), (2, 1, 2, 2, 3), (3, 1, 2, 1, 2), (2, 2, 2, 1, 3), (3, 1, 1, 2, 8), (5, 1, 2, 1, 4)]
            .iter()
            .map(|&(p, e, m, s, l)| Tower::new(p, e, m, s, l).unwrap())
            .collect()
    }

    #[test]
    fn builds_small_towers() {
        let t = Tower::new(2, 1, 2, 4, 15).unwrap();
        assert_eq!(t.degree(), 8);
        assert_eq!(t.deg_f(), 2);
        assert_eq!(t.deg_q(), 4);
        assert_eq!(t.describe(), "p=2,e=1,m=2,s=4,ell=15,modulus=11b");
        let t = Tower::new(2, 1, 2, 3, 7).unwrap();
        assert_eq!(t.size(), 64);
        let t = Tower::new(2, 1, 1, 1, 1).unwrap();
        assert_eq!(t.size(), 2);
        for d in [1] {
            assert_eq!(t.subfield_elements(d).unwrap(), vec![Elem(0), Elem(1)]);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(Tower::new(4, 1, 2, 2, 3).unwrap_err(), Error::NonPrimeP(4));
        assert!(matches!(Tower::new(2, 1, 2, 2, 5), Err(Error::EllNotDividingQMinus1 { .. })));
        assert!(matches!(Tower::new(2, 1, 0, 2, 3), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn modulus_is_smallest_irreducible() {
        // degree 4 over F_2: x^4 + x + 1
        assert_eq!(Tower::new(2, 1, 2, 2, 3).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        // degree 2 over F_3: x^2 + 1
        assert_eq!(Tower::new(3, 1, 2, 1, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn tables_agree_with_polynomial_arithmetic() {
        for t in small_towers() {
            let n = t.size().min(300);
            for a in 0..n {
                for b in 0..n {
                    assert_eq!(t.mul(Elem(a), Elem(b)), t.mul_poly(Elem(a), Elem(b)), "{t:?} {a} {b}");
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        let t = Tower::new(3, 1, 2, 1, 2).unwrap();
        let all: Vec<Elem> = (0..t.size()).map(Elem).collect();
        for &a in &all {
            assert_eq!(t.add(a, t.neg(a)), Elem::ZERO);
            if !a.is_zero() {
                assert_eq!(t.mul(a, t.inv(a).unwrap()), Elem::ONE);
            }
            for &b in &all {
                for &c in &all {
                    assert_eq!(t.mul(a, t.add(b, c)), t.add(t.mul(a, b), t.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn sigma_is_an_automorphism_of_order_m() {
        for t in small_towers() {
            if t.degree() > 8 {
                continue;
            }
            let all: Vec<Elem> = (0..t.size()).map(Elem).collect();
            for &x in &all {
                assert_eq!(t.sigma(x, t.m() as i64), x);
                assert_eq!(t.sigma(t.sigma(x, 1), -1), x);
                for &y in all.iter().step_by(7) {
                    assert_eq!(t.sigma(t.add(x, y), 1), t.add(t.sigma(x, 1), t.sigma(y, 1)));
                    assert_eq!(t.sigma(t.mul(x, y), 1), t.mul(t.sigma(x, 1), t.sigma(y, 1)));
                }
            }
            assert_eq!(t.sigma(Elem::ZERO, 1), Elem::ZERO);
            assert_eq!(t.sigma(Elem::ONE, 3), Elem::ONE);
        }
    }

    #[test]
    fn subfields_have_the_right_size() {
        for t in small_towers() {
            for d in 1..=t.degree() {
                if t.degree() % d != 0 {
                    assert!(t.in_subfield(Elem::ONE, d).is_err());
                    continue;
                }
                let els = t.subfield_elements(d).unwrap();
                assert_eq!(els.len() as u64, t.p().pow(d));
                assert!(els.iter().all(|&x| t.in_subfield(x, d).unwrap()));
                let count = (0..t.size()).filter(|&x| t.in_subfield(Elem(x), d).unwrap()).count();
                assert_eq!(count, els.len());
            }
        }
    }

    #[test]
    fn subfield_lattice() {
        for t in small_towers() {
            let g = t.e() * fp::gcd(t.m() as u64, t.s() as u64) as u32;
            for x in 0..t.size() {
                let x = Elem(x);
                if t.in_subfield(x, t.deg_f()).unwrap() && t.in_subfield(x, t.deg_q()).unwrap() {
                    assert!(t.in_subfield(x, g).unwrap());
                }
            }
        }
    }

    #[test]
    fn primitive_element_is_in_no_proper_subfield() {
        for t in small_towers() {
            let g = t.primitive_element();
            assert_eq!(t.order(g), t.size() as u128 - 1);
            for d in 1..t.degree() {
                if t.degree() % d == 0 {
                    assert!(!t.in_subfield(g, d).unwrap());
                }
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let t = Tower::new(2, 1, 2, 4, 1).unwrap();
        assert_eq!(t.primitive_root_of_unity(), Elem::ONE);
        // F_4 inside F_16: the order-3 elements are x^5 = x^2 + x and x^10 = x^2 + x + 1
        let t = Tower::new(2, 1, 2, 2, 3).unwrap();
        let a = t.primitive_root_of_unity();
        assert_eq!(a, Elem(0b110));
        assert_eq!(t.order(a), 3);
        let t = Tower::new(2, 1, 2, 4, 15).unwrap();
        let a = t.primitive_root_of_unity();
        assert_eq!(t.order(a), 15);
        assert!(t.in_subfield(a, 4).unwrap());
        for t in small_towers() {
            let a = t.primitive_root_of_unity();
            for j in 0..t.ell() as u128 {
                let r = t.pow(a, j);
                assert_eq!(t.sigma(r, 1), r);
                assert!(t.in_subfield(r, t.deg_q()).unwrap());
            }
        }
    }

    #[test]
    fn normal_elements() {
        let t = Tower::new(2, 1, 1, 4, 15).unwrap();
        assert_eq!(t.normal_element(), Elem::ONE);
        for t in small_towers() {
            let b = t.normal_element();
            assert!(t.is_normal(b));
            assert!(!t.is_normal(t.mul(b, Elem::ZERO)));
            // first hit: no smaller element is normal
            assert!((1..b.0).all(|x| !t.is_normal(Elem(x))));
        }
    }

    #[test]
    fn relative_coordinates_round_trip() {
        for t in small_towers() {
            for (base, top) in [(t.deg_q(), t.degree()), (t.deg_q0(), t.deg_f()), (1, t.degree())] {
                let rb = RelativeBasis::new(&t, base, top).unwrap();
                assert_eq!(rb.dim() as u32, top / base);
                for x in t.subfield_elements(top).unwrap().into_iter().take(200) {
                    let c = rb.coords(&t, x).unwrap();
                    assert!(c.iter().all(|&ci| t.in_subfield(ci, base).unwrap()));
                    assert_eq!(rb.from_coords(&t, &c), x);
                }
            }
        }
        let t = Tower::new(2, 1, 2, 4, 15).unwrap();
        let rb = RelativeBasis::new(&t, 1, 2).unwrap();
        let outside = (0..t.size()).map(Elem).find(|&x| !t.in_subfield(x, 2).unwrap()).unwrap();
        assert!(rb.coords(&t, outside).is_err());
    }

    #[test]
    fn text_round_trip() {
        let t = Tower::new(3, 1, 2, 1, 2).unwrap();
        for x in 0..t.size() {
            assert_eq!(t.parse(&t.format(Elem(x))).unwrap(), Elem(x));
        }
        assert_eq!(t.format(Elem(5)), "12");
        let t = Tower::new(2, 1, 2, 4, 15).unwrap();
        assert_eq!(t.format(Elem(0xab)), "ab");
        assert!(t.parse("100").is_err());
        let d = t.describe();
        assert_eq!(Tower::from_description(&d).unwrap().describe(), d);
        assert!(Tower::from_description("p=2,e=1,m=2,s=4,ell=15,modulus=1").is_err());
    }
}
