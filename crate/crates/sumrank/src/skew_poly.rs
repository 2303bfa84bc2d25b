//! Skew polynomials `K[z; σ]` with `z·a = σ(a)·z`, where `σ(a) = a^q`.
//!
//! Coefficients are ambient field elements; any subfield stable under `σ` (every subfield
//! of the tower is) gives a subring. The linearized polynomial of `f = Σ f_i z^i` is
//! `f^σ(y) = Σ f_i y^{q^i}`, and `f ↦ f^σ` turns products into compositions.
//!
//! ```
//! use sumrank::gf_tower::Tower;
//! use sumrank::skew_poly::{conjugate_of_one, SkewPoly};
//!
//! let t = Tower::new(2, 1, 2, 2, 3).unwrap();
//! let beta = t.normal_element();
//! let f = SkewPoly::new(vec![t.from_int(1), beta, t.one()]);
//! let lhs = f.evaluate(&t, conjugate_of_one(&t, beta).unwrap());
//! let rhs = t.mul(f.to_linearized().evaluate(&t, beta), t.inv(beta).unwrap());
//! assert_eq!(lhs, rhs);
//! ```

use crate::error::{Error, Result};
use crate::gf_tower::{Elem, Tower};

/// A skew polynomial; `coeffs[i]` is the coefficient of `z^i`, with no trailing zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SkewPoly {
    coeffs: Vec<Elem>,
}

impl SkewPoly {
    pub fn new(mut coeffs: Vec<Elem>) -> SkewPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { coeffs }
    }

    pub fn zero() -> SkewPoly {
        SkewPoly { coeffs: Vec::new() }
    }

    pub fn one() -> SkewPoly {
        SkewPoly { coeffs: vec![Elem::ONE] }
    }

    pub fn constant(c: Elem) -> SkewPoly {
        SkewPoly::new(vec![c])
    }

    /// `c·z^k`.
    pub fn monomial(c: Elem, k: usize) -> SkewPoly {
        let mut v = vec![Elem::ZERO; k + 1];
        v[k] = c;
        SkewPoly::new(v)
    }

    /// `z^n − 1`.
    pub fn z_pow_minus_one(t: &Tower, n: usize) -> SkewPoly {
        let mut v = vec![Elem::ZERO; n + 1];
        v[0] = t.neg(Elem::ONE);
        v[n] = t.add(v[n], Elem::ONE);
        SkewPoly::new(v)
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `z^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == Some(Elem::ONE)
    }

    /// Degree over `F_p` of the smallest subfield containing every coefficient.
    pub fn coeff_field_degree(&self, t: &Tower) -> u32 {
        (1..=t.degree())
            .filter(|d| t.degree() % d == 0)
            .find(|&d| self.coeffs.iter().all(|&c| t.in_subfield(c, d).unwrap_or(false)))
            .unwrap_or(t.degree())
    }

    pub fn add(&self, other: &SkewPoly, t: &Tower) -> SkewPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        SkewPoly::new((0..n).map(|i| t.add(self.coeff(i), other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &SkewPoly, t: &Tower) -> SkewPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        SkewPoly::new((0..n).map(|i| t.sub(self.coeff(i), other.coeff(i))).collect())
    }

    /// `c·f`.
    pub fn scale_left(&self, c: Elem, t: &Tower) -> SkewPoly {
        SkewPoly::new(self.coeffs.iter().map(|&x| t.mul(c, x)).collect())
    }

    /// The product `self · other`: `(Σ f_i z^i)(Σ g_j z^j) = Σ f_i σ^i(g_j) z^{i+j}`.
    pub fn mul(&self, other: &SkewPoly, t: &Tower) -> SkewPoly {
        if self.is_zero() || other.is_zero() {
            return SkewPoly::zero();
        }
        let mut r = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &f) in self.coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (j, &g) in other.coeffs.iter().enumerate() {
                r[i + j] = t.add(r[i + j], t.mul(f, t.sigma(g, i as i64)));
            }
        }
        SkewPoly::new(r)
    }

    /// Right division: `self = q·g + r` with `deg r < deg g`.
    pub fn right_divide(&self, g: &SkewPoly, t: &Tower) -> Result<(SkewPoly, SkewPoly)> {
        let dg = g.degree().ok_or(Error::DivByZero)?;
        let gl = g.coeffs[dg];
        let mut r = self.coeffs.clone();
        let mut q = vec![Elem::ZERO; r.len().saturating_sub(dg)];
        while r.len() > dg && !r.is_empty() {
            let top = r.len() - 1;
            let k = top - dg;
            // (c z^k) g has leading coefficient c σ^k(g_lead)
            let c = t.div(r[top], t.sigma(gl, k as i64))?;
            q[k] = c;
            for (j, &gj) in g.coeffs.iter().enumerate() {
                r[k + j] = t.sub(r[k + j], t.mul(c, t.sigma(gj, k as i64)));
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Ok((SkewPoly::new(q), SkewPoly::new(r)))
    }

    /// Left division: `self = g·q + r` with `deg r < deg g`.
    pub fn left_divide(&self, g: &SkewPoly, t: &Tower) -> Result<(SkewPoly, SkewPoly)> {
        let dg = g.degree().ok_or(Error::DivByZero)?;
        let gl = g.coeffs[dg];
        let mut r = self.coeffs.clone();
        let mut q = vec![Elem::ZERO; r.len().saturating_sub(dg)];
        while r.len() > dg && !r.is_empty() {
            let top = r.len() - 1;
            let k = top - dg;
            // g (c z^k) has leading coefficient g_lead σ^dg(c)
            let c = t.sigma(t.div(r[top], gl)?, -(dg as i64));
            q[k] = c;
            for (j, &gj) in g.coeffs.iter().enumerate() {
                r[k + j] = t.sub(r[k + j], t.mul(gj, t.sigma(c, j as i64)));
            }
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Ok((SkewPoly::new(q), SkewPoly::new(r)))
    }

    /// Arithmetic evaluation `f(α) = Σ f_i N_i(α)`.
    pub fn evaluate(&self, t: &Tower, alpha: Elem) -> Elem {
        let mut acc = Elem::ZERO;
        let mut n = Elem::ONE;
        for &f in &self.coeffs {
            acc = t.add(acc, t.mul(f, n));
            n = t.mul(t.sigma(n, 1), alpha);
        }
        acc
    }

    /// Arithmetic evaluation as the remainder of right division by `z − α`.
    pub fn evaluate_by_division(&self, t: &Tower, alpha: Elem) -> Elem {
        let g = SkewPoly::new(vec![t.neg(alpha), Elem::ONE]);
        let (_, r) = self.right_divide(&g, t).expect("z - alpha is nonzero");
        r.coeff(0)
    }

    pub fn to_linearized(&self) -> LinearizedPoly {
        LinearizedPoly { coeffs: self.coeffs.clone() }
    }

    /// Text form `c0 + c1*z + c2*z^2`, zero terms omitted.
    pub fn format(&self, t: &Tower) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| match i {
                0 => t.format(c),
                1 => format!("{}*z", t.format(c)),
                _ => format!("{}*z^{}", t.format(c), i),
            })
            .collect();
        terms.join(" + ")
    }

    pub fn parse(t: &Tower, s: &str) -> Result<SkewPoly> {
        let mut coeffs: Vec<Elem> = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let (c, k) = match term.split_once('*') {
                None => (term, 0usize),
                Some((c, zpart)) => {
                    let zpart = zpart.trim();
                    let k = match zpart.strip_prefix('z') {
                        Some("") => 1,
                        Some(rest) => rest
                            .strip_prefix('^')
                            .and_then(|e| e.trim().parse().ok())
                            .ok_or_else(|| Error::Parse(format!("bad term `{term}`")))?,
                        None => return Err(Error::Parse(format!("bad term `{term}`"))),
                    };
                    (c, k)
                }
            };
            let c = t.parse(c)?;
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Elem::ZERO);
            }
            coeffs[k] = t.add(coeffs[k], c);
        }
        Ok(SkewPoly::new(coeffs))
    }
}

/// A linearized polynomial `G(y) = Σ G_i y^{q^i}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LinearizedPoly {
    coeffs: Vec<Elem>,
}

impl LinearizedPoly {
    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn evaluate(&self, t: &Tower, y: Elem) -> Elem {
        t.sum(self.coeffs.iter().enumerate().map(|(i, &g)| t.mul(g, t.sigma(y, i as i64))))
    }

    pub fn to_skew(&self) -> SkewPoly {
        SkewPoly::new(self.coeffs.clone())
    }
}

/// `1^β = σ(β)·β^{−1}`.
pub fn conjugate_of_one(t: &Tower, beta: Elem) -> Result<Elem> {
    let inv = t.inv(beta).ok_or(Error::ZeroBeta)?;
    Ok(t.mul(t.sigma(beta, 1), inv))
}

/// `N_i(a) = σ^{i−1}(a) ⋯ σ(a)·a`, with `N_0(a) = 1`.
pub fn norm(t: &Tower, a: Elem, i: usize) -> Elem {
    let mut n = Elem::ONE;
    for _ in 0..i {
        n = t.mul(t.sigma(n, 1), a);
    }
    n
}

/// `D_a^i(b) = σ^i(b)·N_i(a)`.
pub fn op_d(t: &Tower, a: Elem, i: usize, b: Elem) -> Elem {
    t.mul(t.sigma(b, i as i64), norm(t, a, i))
}

/// A greedy basis over the subfield of degree `base` of the span of `vals`, in input order.
pub fn basis_over(t: &Tower, vals: &[Elem], base: u32) -> Result<Vec<Elem>> {
    let mut basis: Vec<Elem> = Vec::new();
    for &v in vals {
        if v.is_zero() {
            continue;
        }
        basis.push(v);
        if t.rank_over(&basis, base)? < basis.len() {
            basis.pop();
        }
    }
    Ok(basis)
}

/// All `K`-linear combinations of a `K`-independent list, `K` of degree `base`.
pub fn span_over(t: &Tower, basis: &[Elem], base: u32) -> Result<Vec<Elem>> {
    let scalars = t.subfield_elements(base)?;
    let mut out = vec![Elem::ZERO];
    for &b in basis {
        let prev = std::mem::take(&mut out);
        for &c in &scalars {
            let cb = t.mul(c, b);
            out.extend(prev.iter().map(|&x| t.add(x, cb)));
        }
    }
    Ok(out)
}

/// The minimal linearized polynomial of `B` with coefficients in `F_{q0^{md}}`, as a
/// monic skew polynomial.
///
/// Forms `U = {β^{q0^{umd}} : β ∈ B, 0 ≤ u < s/d}` and `V = span_{F_q}(U)` and expands
/// `∏_{v ∈ V} (y − v)`, whose only nonzero coefficients sit at the powers `y^{q^i}`.
/// The empty set gives `V = {0}` and the constant `1`.
pub fn minimal_linearized_poly(t: &Tower, b: &[Elem], d: u32) -> Result<SkewPoly> {
    let s = t.s();
    if d == 0 || s % d != 0 {
        return Err(Error::BadSubfieldDegree { d, s });
    }
    let mut u_set = Vec::new();
    for &beta in b {
        for u in 0..(s / d) as i64 {
            u_set.push(t.frob_f(beta, u * d as i64));
        }
    }
    let basis = basis_over(t, &u_set, t.deg_q())?;
    let v = span_over(t, &basis, t.deg_q())?;
    // ordinary product ∏ (y − v), little endian in y
    let mut prod = vec![Elem::ONE];
    for &x in &v {
        let nx = t.neg(x);
        let mut next = vec![Elem::ZERO; prod.len() + 1];
        for (i, &c) in prod.iter().enumerate() {
            next[i + 1] = t.add(next[i + 1], c);
            next[i] = t.add(next[i], t.mul(c, nx));
        }
        prod = next;
    }
    let q = t.params().q();
    let r = basis.len();
    let mut coeffs = Vec::with_capacity(r + 1);
    let mut qpow: u128 = 1;
    let mut next_q = 1usize;
    for (i, &c) in prod.iter().enumerate() {
        if i == next_q {
            coeffs.push(c);
            qpow *= q;
            next_q = qpow as usize;
        } else if i != 0 && !c.is_zero() {
            return Err(Error::VerificationFailed(format!("non q-power coefficient at y^{i}")));
        } else if i == 0 && !c.is_zero() {
            return Err(Error::VerificationFailed("nonzero constant term".into()));
        }
    }
    let g = SkewPoly::new(coeffs);
    debug_assert_eq!(g.degree(), Some(r));
    let target = t.deg_f() * d;
    if g.coeffs().iter().any(|&c| !t.in_subfield(c, target).unwrap_or(false)) {
        return Err(Error::VerificationFailed("minimal linearized polynomial escapes its coefficient field".into()));
    }
    Ok(g)
}
