//! Cyclic-skew-cyclic codes: `F`-linear codes closed under the block rotation `φ` and the
//! blockwise skew shift `ψ`, i.e. left ideals of `R`.
//!
//! A code is described by one monic right divisor `g_i` of `z^N − 1` per cyclotomic coset,
//! with coefficients in `F_{q0^{m d_i}}`. The minimal generator is `g = Σ e_i g̃_i`.
//!
//! ```
//! use std::sync::Arc;
//! use sumrank::csc::{is_csc, CscCode};
//! use sumrank::gf_tower::Tower;
//! use sumrank::quotient_rings::{factor_cyclotomic, BivariateRing, Crt};
//! use sumrank::skew_poly::SkewPoly;
//!
//! let t = Arc::new(Tower::new(2, 1, 2, 2, 3).unwrap());
//! let fact = factor_cyclotomic(&t, t.primitive_root_of_unity()).unwrap();
//! let crt = Arc::new(Crt::new(BivariateRing::new(t.clone(), 2).unwrap(), fact).unwrap());
//! let zm1 = SkewPoly::z_pow_minus_one(&t, 2);
//! let code = CscCode::from_components(crt.clone(), vec![SkewPoly::one(), zm1.clone(), zm1]).unwrap();
//! assert_eq!(code.dim(), 2);
//! assert!(is_csc(crt.ring(), code.generator_matrix()));
//! ```

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf_tower::{Elem, Tower, TowerParams};
use crate::linalg::Matrix;
use crate::quotient_rings::{BivarElem, BivarPoly, BivariateRing, Crt, CycFactorization};
use crate::skew_poly::{basis_over, minimal_linearized_poly, SkewPoly};

/// `φ`: rotates the blocks one step to the right.
pub fn shift_inter(ring: &BivariateRing, v: &[Elem]) -> Result<Vec<Elem>> {
    Ok(ring.mu_inv(&ring.rprime_mul_x(&ring.mu(v)?)))
}

/// `ψ` applied to every block: `(c_0, …, c_{N−1}) ↦ (σ(c_{N−1}), σ(c_0), …, σ(c_{N−2}))`.
pub fn shift_intra(ring: &BivariateRing, v: &[Elem]) -> Result<Vec<Elem>> {
    Ok(ring.mu_inv(&ring.rprime_mul_z(&ring.mu(v)?)))
}

/// Whether the row space of `basis` is closed under `φ` and `ψ`.
pub fn is_csc(ring: &BivariateRing, basis: &Matrix) -> bool {
    let t = ring.tower();
    let (ech, _) = basis.rref(t);
    let r = ech.rows();
    let mut m = ech.clone();
    for row in ech.row_vecs() {
        let (Ok(a), Ok(b)) = (shift_inter(ring, &row), shift_intra(ring, &row)) else {
            return false;
        };
        m.push_row(&a);
        m.push_row(&b);
    }
    m.rank(t) == r
}

/// Whether `ν` of the row space is a left ideal of `R`, tested on left multiplication by
/// `x` and `z`.
pub fn is_left_ideal(ring: &BivariateRing, basis: &Matrix) -> bool {
    let t = ring.tower();
    let (ech, _) = basis.rref(t);
    let r = ech.rows();
    let x = ring.monomial(Elem::ONE, 1, 0);
    let z = ring.monomial(Elem::ONE, 0, 1);
    let mut m = ech.clone();
    for row in ech.row_vecs() {
        let Ok(f) = ring.nu(&row) else {
            return false;
        };
        m.push_row(&ring.nu_inv(&ring.mul(&x, &f)));
        m.push_row(&ring.nu_inv(&ring.mul(&z, &f)));
    }
    m.rank(t) == r
}

/// Per representative exponent `j_i`, an `F_q`-basis of `T_C(a^{j_i}) ∪ {0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DefiningSet {
    reps: Vec<usize>,
    bases: Vec<Vec<Elem>>,
}

impl DefiningSet {
    pub fn new(reps: Vec<usize>, bases: Vec<Vec<Elem>>) -> DefiningSet {
        DefiningSet { reps, bases }
    }

    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn bases(&self) -> &[Vec<Elem>] {
        &self.bases
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    /// A basis of `T_C(a^j)` for any exponent `j`, by Frobenius transport from the
    /// representative of its coset.
    pub fn at(&self, t: &Tower, fact: &CycFactorization, j: usize) -> Vec<Elem> {
        let (i, h) = fact.locate(j);
        self.bases[i].iter().map(|&b| t.frob_f(b, h as i64)).collect()
    }
}

/// `n − Σ d_i·dim T_C(a^{j_i})`.
pub fn dimension_from_defining_set(ds: &DefiningSet, fact: &CycFactorization, n: usize) -> i64 {
    n as i64 - ds.bases.iter().zip(fact.degrees()).map(|(b, d)| (b.len() * d) as i64).sum::<i64>()
}

fn require_n_eq_m(ring: &BivariateRing) -> Result<()> {
    let m = ring.tower().m();
    if ring.n_blocks() != m as usize {
        return Err(Error::RequiresNEqualsM { n_blocks: ring.n_blocks(), m });
    }
    Ok(())
}

/// Defining set read off from codewords: for each representative, the common kernel of
/// `β ↦ Σ_j c_j(a^{j_i}) σ^j(β)` over the rows of `basis`.
pub fn defining_set_from_codewords(crt: &Crt, basis: &Matrix) -> Result<DefiningSet> {
    let ring = crt.ring();
    require_n_eq_m(ring)?;
    let t = ring.tower();
    let fact = crt.factorization();
    let mut polys = Vec::new();
    for row in basis.row_vecs() {
        polys.push(ring.nu(&row)?);
    }
    let mut bases = Vec::new();
    for i in 0..fact.count() {
        let a = fact.rep_root(t, i);
        let comps: Vec<SkewPoly> = polys.iter().map(|f| ring.ev_partial(a, f)).collect::<Result<_>>()?;
        let ker = t.fp_kernel(|beta| comps.iter().map(|c| c.to_linearized().evaluate(t, beta)).collect());
        bases.push(basis_over(t, &ker, t.deg_q())?);
    }
    Ok(DefiningSet::new(fact.reps(), bases))
}

/// The skew-cyclic code `C(a)` generated by `g(a, z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationComponent {
    pub coset: usize,
    pub generator: SkewPoly,
    /// Degree over `F_p` of the coefficient field `F(a)`.
    pub field_degree: u32,
    /// `dim_F C(a)`.
    pub dim_over_f: usize,
}

/// Serializable description of a CSC code.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct CscRecord {
    pub tower: TowerParams,
    pub ell: usize,
    #[serde(rename = "N")]
    pub n_blocks: usize,
    pub components: Vec<ComponentRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ComponentRecord {
    pub coset: Vec<usize>,
    /// Coefficients of `g_i`, constant term first, in the tower's text form.
    pub g: Vec<String>,
}

/// A CSC code with its generator and check polynomials and a generator matrix over `F`.
#[derive(Clone, Debug)]
pub struct CscCode {
    crt: Arc<Crt>,
    components: Vec<SkewPoly>,
    checks: Vec<SkewPoly>,
    g: BivarPoly,
    h: BivarPoly,
    genmat: Matrix,
}

impl CscCode {
    /// Assembles the code with projections `g_i`, one per coset in factorization order.
    pub fn from_components(crt: Arc<Crt>, components: Vec<SkewPoly>) -> Result<CscCode> {
        let ring = crt.ring();
        let t = ring.tower();
        let fact = crt.factorization();
        if components.len() != fact.count() {
            return Err(Error::ComponentCountMismatch { expected: fact.count(), found: components.len() });
        }
        let zn = SkewPoly::z_pow_minus_one(t, ring.n_blocks());
        let mut checks = Vec::new();
        for (i, gi) in components.iter().enumerate() {
            if !gi.is_monic() {
                return Err(Error::NotMonic(i));
            }
            let field = t.deg_f() * fact.degrees()[i] as u32;
            for &c in gi.coeffs() {
                if !t.in_subfield(c, field)? {
                    return Err(Error::NotInSubfield(format!("coefficient {} of g_{i}", t.format(c))));
                }
            }
            let (_, r) = zn.right_divide(gi, t)?;
            let (hi, rl) = zn.left_divide(gi, t)?;
            if !r.is_zero() || !rl.is_zero() {
                return Err(Error::NotDivisor(i));
            }
            checks.push(hi);
        }
        let g = crt.inverse_poly(&components)?;
        let h = crt.inverse_poly(&checks)?;
        let target = ring.poly_z_pow_minus_one();
        if ring.poly_mul(&g, &h) != target || ring.poly_mul(&h, &g) != target {
            return Err(Error::VerificationFailed("g h = h g = z^N - 1 does not hold".into()));
        }
        let genmat = Self::build_genmat(&crt, &components, &g)?;
        Ok(CscCode { crt, components, checks, g, h, genmat })
    }

    fn build_genmat(crt: &Crt, components: &[SkewPoly], g: &BivarPoly) -> Result<Matrix> {
        let ring = crt.ring();
        let t = ring.tower();
        let fact = crt.factorization();
        let n_blocks = ring.n_blocks();
        let gr = ring.reduce(g);
        let mut m = Matrix::zeros(0, ring.len());
        for (i, gi) in components.iter().enumerate() {
            let k = n_blocks - gi.degree().expect("monic");
            // e_i(x)·g as an element of R
            let eg = ring.mul(&Self::s_as_elem(ring, &crt.idempotents()[i]), &gr);
            for u in 0..fact.degrees()[i] {
                for v in 0..k {
                    let row = ring.mul(&ring.monomial(Elem::ONE, u, v), &eg);
                    m.push_row(&ring.nu_inv(&row));
                }
            }
        }
        if m.rank(t) != m.rows() {
            return Err(Error::VerificationFailed("generator rows are dependent".into()));
        }
        Ok(m)
    }

    fn s_as_elem(ring: &BivariateRing, s: &crate::quotient_rings::SElem) -> BivarElem {
        let p = ring.poly_from_coeffs(vec![s.clone()]);
        ring.reduce(&p)
    }

    /// The largest CSC code whose defining set contains the pairs `(a^j, β)`.
    pub fn largest_from_root_pairs(crt: Arc<Crt>, pairs: &[(usize, Elem)]) -> Result<CscCode> {
        require_n_eq_m(crt.ring())?;
        let t = crt.ring().tower();
        let fact = crt.factorization();
        let mut per: Vec<Vec<Elem>> = vec![Vec::new(); fact.count()];
        for &(j, beta) in pairs {
            if beta.is_zero() {
                return Err(Error::ZeroBeta);
            }
            let (i, h) = fact.locate(j);
            per[i].push(t.frob_f(beta, -(h as i64)));
        }
        let comps = per
            .iter()
            .zip(fact.degrees())
            .map(|(b, d)| minimal_linearized_poly(t, b, d as u32))
            .collect::<Result<Vec<_>>>()?;
        CscCode::from_components(crt, comps)
    }

    /// Recovers the code spanned by `basis` (which must be CSC) through its defining set.
    pub fn from_basis(crt: Arc<Crt>, basis: &Matrix) -> Result<CscCode> {
        let ring = crt.ring();
        if !is_csc(ring, basis) {
            return Err(Error::VerificationFailed("basis does not span a CSC code".into()));
        }
        let ds = defining_set_from_codewords(&crt, basis)?;
        let t = ring.tower().clone();
        let comps = ds
            .bases()
            .iter()
            .zip(crt.factorization().degrees())
            .map(|(b, d)| minimal_linearized_poly(&t, b, d as u32))
            .collect::<Result<Vec<_>>>()?;
        let code = CscCode::from_components(crt.clone(), comps)?;
        if !code.genmat.same_row_space(basis, &t) {
            return Err(Error::VerificationFailed("defining set does not determine the code".into()));
        }
        Ok(code)
    }

    pub fn crt(&self) -> &Arc<Crt> {
        &self.crt
    }

    pub fn ring(&self) -> &BivariateRing {
        self.crt.ring()
    }

    pub fn tower(&self) -> &Tower {
        self.crt.ring().tower()
    }

    pub fn components(&self) -> &[SkewPoly] {
        &self.components
    }

    pub fn checks(&self) -> &[SkewPoly] {
        &self.checks
    }

    /// Minimal generator in `S[z; σ]`.
    pub fn generator(&self) -> &BivarPoly {
        &self.g
    }

    /// Minimal check polynomial in `S[z; σ]`.
    pub fn check_poly(&self) -> &BivarPoly {
        &self.h
    }

    pub fn generator_matrix(&self) -> &Matrix {
        &self.genmat
    }

    pub fn len(&self) -> usize {
        self.ring().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `k_i = N − deg g_i`.
    pub fn k_profile(&self) -> Vec<usize> {
        let n = self.ring().n_blocks();
        self.components.iter().map(|g| n - g.degree().expect("monic")).collect()
    }

    /// `Σ d_i k_i`.
    pub fn dim(&self) -> usize {
        self.k_profile().iter().zip(self.crt.factorization().degrees()).map(|(k, d)| k * d).sum()
    }

    pub fn contains(&self, c: &[Elem]) -> bool {
        c.len() == self.len() && self.genmat.row_space_contains(c, self.tower())
    }

    /// Kernels of the linearized maps of `g(a^{j_i}, z) = g_i`.
    pub fn defining_set(&self) -> Result<DefiningSet> {
        let ring = self.ring();
        require_n_eq_m(ring)?;
        let t = ring.tower();
        let fact = self.crt.factorization();
        let mut bases = Vec::new();
        for i in 0..fact.count() {
            let gi = ring.ev_partial_poly(fact.rep_root(t, i), &self.g)?;
            debug_assert_eq!(gi, self.components[i]);
            let lin = gi.to_linearized();
            let ker = t.fp_kernel(|beta| vec![lin.evaluate(t, beta)]);
            bases.push(basis_over(t, &ker, t.deg_q())?);
        }
        Ok(DefiningSet::new(fact.reps(), bases))
    }

    /// Membership through the defining set: `ν(c)(a^{j_i}, 1^β) = 0` for all stored `β`.
    pub fn contains_via_defining_set(&self, ds: &DefiningSet, c: &[Elem]) -> Result<bool> {
        let ring = self.ring();
        let t = ring.tower();
        let f = ring.nu(c)?;
        let fact = self.crt.factorization();
        for (i, basis) in ds.bases().iter().enumerate() {
            let a = fact.rep_root(t, i);
            for &beta in basis {
                if !ring.ev_total(a, beta, &f)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `C(a)` for an `ℓ`-th root of unity `a`.
    pub fn evaluation_component(&self, a: Elem) -> Result<EvaluationComponent> {
        let ring = self.ring();
        let t = ring.tower();
        let fact = self.crt.factorization();
        let j = (0..ring.ell()).find(|&j| t.pow(fact.root(), j as u128) == a).ok_or(Error::NotRootOfUnity)?;
        let (i, _) = fact.locate(j);
        let generator = ring.ev_partial_poly(a, &self.g)?;
        let d = fact.degrees()[i];
        let k = ring.n_blocks() - generator.degree().expect("monic");
        Ok(EvaluationComponent { coset: i, generator, field_degree: t.deg_f() * d as u32, dim_over_f: d * k })
    }

    pub fn to_record(&self) -> CscRecord {
        let t = self.tower();
        CscRecord {
            tower: t.params().clone(),
            ell: self.ring().ell(),
            n_blocks: self.ring().n_blocks(),
            components: self
                .crt
                .factorization()
                .cosets()
                .iter()
                .zip(&self.components)
                .map(|(c, g)| ComponentRecord { coset: c.clone(), g: g.coeffs().iter().map(|&x| t.format(x)).collect() })
                .collect(),
        }
    }

    /// Rebuilds a code from its record using the canonical root of unity.
    pub fn from_record(rec: &CscRecord) -> Result<CscCode> {
        let t = Arc::new(Tower::from_params(rec.tower.clone())?);
        if rec.ell != t.ell() {
            return Err(Error::InvalidParameter(format!("record ell {} differs from tower ell {}", rec.ell, t.ell())));
        }
        let fact = crate::quotient_rings::factor_cyclotomic(&t, t.primitive_root_of_unity())?;
        if fact.cosets().len() != rec.components.len() || fact.cosets().iter().zip(&rec.components).any(|(c, r)| *c != r.coset) {
            return Err(Error::InvalidParameter("coset list does not match the tower".into()));
        }
        let comps = rec
            .components
            .iter()
            .map(|r| r.g.iter().map(|s| t.parse(s)).collect::<Result<Vec<_>>>().map(SkewPoly::new))
            .collect::<Result<Vec<_>>>()?;
        let ring = BivariateRing::new(t, rec.n_blocks)?;
        CscCode::from_components(Arc::new(Crt::new(ring, fact)?), comps)
    }
}
