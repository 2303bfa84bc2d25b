//! Sum-rank BCH codes `C_δ(a^b, β) ⊆ F^n`: the codewords over `F` with the pairs
//! `(a^{b+j}, σ^j(β))`, `0 ≤ j ≤ δ − 2`, in their defining set.
//!
//! Equivalently, the subfield subcode over `F` of the dual of the CSC linearized Reed–Solomon
//! code `C^σ_{δ−1}(A, B)`, whose generator matrix is therefore a parity-check matrix.
//!
//! ```
//! use std::sync::Arc;
//! use sumrank::srbch::{appendix_tower, SrBchCode};
//!
//! let t = Arc::new(appendix_tower(2).unwrap());
//! let code = SrBchCode::construct(t, 0, 3).unwrap();
//! assert_eq!(code.exact_dim(), 2);
//! assert_eq!(code.bounds().eq33, 2);
//! assert_eq!(code.bounds().singleton, 4);
//! ```

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::csc::{defining_set_from_codewords, dimension_from_defining_set};
use crate::error::{Error, Result};
use crate::gf_tower::{Elem, RelativeBasis, Tower, TowerParams};
use crate::linalg::Matrix;
use crate::lrs::{check_assumptions, csc_lrs, dual_csc_lrs, DualCscLrs, LrsCode};
use crate::quotient_rings::{factor_cyclotomic, BivariateRing, Crt, CycFactorization};
use crate::skew_poly::basis_over;

/// The tower `q0 = 2, m = 2, ℓ = 2^s − 1` of the standard bound tables.
pub fn appendix_tower(s: u32) -> Result<Tower> {
    if !(1..=7).contains(&s) {
        return Err(Error::InvalidParameter(format!("standard tables exist for s in 1..=7, got {s}")));
    }
    Tower::new(2, 1, 2, s, (1u64 << s) - 1)
}

/// The `(δ, b)` rows of the standard table for `s`, ordered by `(δ, b)`.
pub fn appendix_rows(s: u32) -> Result<Vec<(usize, usize)>> {
    let deltas: Vec<usize> = match s {
        1 => vec![2],
        2 => vec![2, 3],
        3 => (2..=7).collect(),
        4 => (2..=12).chain([14]).collect(),
        5 => (2..=8).chain([10, 12, 14, 18, 22, 26, 30]).collect(),
        6 | 7 => (2..=7).chain([10, 14, 22, 30, 38, 46, 54, 62]).collect(),
        _ => return Err(Error::InvalidParameter(format!("standard tables exist for s in 1..=7, got {s}"))),
    };
    Ok(deltas.into_iter().flat_map(|d| [(d, 0), (d, 1)]).collect())
}

/// The Singleton bound, the coset-profile lower bound `eq33` and the Delsarte lower bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    /// `n − δ + 1`.
    pub singleton: i64,
    /// `n − Σ_i d_i·min(m, s·k_i/d_i)`.
    pub eq33: i64,
    /// `n − s(δ − 1)`.
    pub delsarte: i64,
}

/// How many of the exponents `b, …, b+δ−2` fall into each coset.
pub fn k_profile(fact: &CycFactorization, b: usize, delta: usize) -> Vec<usize> {
    let mut k = vec![0; fact.count()];
    for j in 0..delta.saturating_sub(1) {
        k[fact.locate(b + j).0] += 1;
    }
    k
}

/// `n − Σ_i min(m·d_i, s·k_i)`.
pub fn bound_eq33(fact: &CycFactorization, b: usize, delta: usize, m: u32, s: u32) -> i64 {
    let n = (fact.ell() * m as usize) as i64;
    let k = k_profile(fact, b, delta);
    n - fact.degrees().iter().zip(&k).map(|(&d, &k)| (m as i64 * d as i64).min(s as i64 * k as i64)).sum::<i64>()
}

pub fn bound_delsarte(n: usize, s: u32, delta: usize) -> i64 {
    n as i64 - s as i64 * (delta as i64 - 1)
}

pub fn bounds(fact: &CycFactorization, b: usize, delta: usize, m: u32, s: u32) -> Bounds {
    let n = fact.ell() * m as usize;
    Bounds {
        singleton: n as i64 - delta as i64 + 1,
        eq33: bound_eq33(fact, b, delta, m, s),
        delsarte: bound_delsarte(n, s, delta),
    }
}

/// The data attached to one coset by the dimension formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetStructure {
    pub coset: Vec<usize>,
    /// `J_i`: the `j ∈ [0, δ−2]` with `b + j` in the coset.
    pub js: Vec<usize>,
    /// The chosen `j̃_i ∈ J_i`.
    pub j_tilde: Option<usize>,
    /// `h_λ ∈ [0, d_i)` with `b + j̃_i ≡ (b + j_λ)·Q^{h_λ} (mod ℓ)`.
    pub shifts: Vec<usize>,
    /// The exponents `v` with `V_i = ⟨β^{q0^v}⟩_{F_q}`.
    pub exponents: Vec<usize>,
    /// An `F_q`-basis of `V_i` (not serialized; it is recomputed from the exponents).
    #[serde(skip)]
    pub basis: Vec<Elem>,
}

impl CosetStructure {
    pub fn degree(&self) -> usize {
        self.coset.len()
    }

    pub fn dim_v(&self) -> usize {
        self.basis.len()
    }
}

/// Defining set of `C_δ(a^b, β)` read off the pairs, and the dimension it implies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefiningStructure {
    pub cosets: Vec<CosetStructure>,
    pub exact_dim: i64,
}

/// [`defining_structure_with`] taking `j̃_i = min J_i`.
pub fn defining_structure(t: &Tower, fact: &CycFactorization, beta: Elem, b: usize, delta: usize) -> Result<DefiningStructure> {
    defining_structure_with(t, fact, beta, b, delta, |js| js[0])
}

/// The defining structure with `j̃_i = pick(J_i)`; `pick` must return an element of its
/// argument.
pub fn defining_structure_with(
    t: &Tower,
    fact: &CycFactorization,
    beta: Elem,
    b: usize,
    delta: usize,
    pick: impl Fn(&[usize]) -> usize,
) -> Result<DefiningStructure> {
    let ell = fact.ell();
    let m = t.m() as usize;
    let s = t.s() as usize;
    let n = ell * m;
    if delta < 2 || delta > n {
        return Err(Error::InvalidParameter(format!("delta = {delta} outside [2, {n}]")));
    }
    let big_q = t.params().q0().pow(m as u32);
    let mut cosets = Vec::with_capacity(fact.count());
    let mut used = 0i64;
    for coset in fact.cosets() {
        let d = coset.len();
        if s % d != 0 {
            return Err(Error::AssumptionViolated(format!("coset size {d} does not divide s = {s}")));
        }
        let js: Vec<usize> = (0..delta - 1).filter(|&j| coset.contains(&((b + j) % ell))).collect();
        let mut cs = CosetStructure { coset: coset.clone(), js: js.clone(), j_tilde: None, shifts: vec![], exponents: vec![], basis: vec![] };
        if !js.is_empty() {
            let jt = pick(&js);
            if !js.contains(&jt) {
                return Err(Error::InvalidParameter(format!("j tilde = {jt} is not in J_i")));
            }
            let target = (b + jt) % ell;
            for &j in &js {
                let mut cur = ((b + j) % ell) as u128;
                let h = (0..d)
                    .find(|_| {
                        let hit = cur as usize == target;
                        cur = cur * big_q % ell as u128;
                        hit
                    })
                    .ok_or_else(|| Error::VerificationFailed("no Frobenius shift solves the congruence".into()))?;
                cs.shifts.push(h);
            }
            let mut vs: Vec<usize> = Vec::new();
            for (&j, &h) in js.iter().zip(&cs.shifts) {
                for u in 0..s / d {
                    let v = (s * j + m * (u * d + h)) % (s * m);
                    if !vs.contains(&v) {
                        vs.push(v);
                    }
                }
            }
            let gens: Vec<Elem> = vs.iter().map(|&v| t.frob_q0(beta, v as i64)).collect();
            cs.basis = basis_over(t, &gens, t.deg_q())?;
            cs.exponents = vs;
            cs.j_tilde = Some(jt);
        }
        used += (d * cs.basis.len()) as i64;
        cosets.push(cs);
    }
    Ok(DefiningStructure { cosets, exact_dim: n as i64 - used })
}

/// Subfield subcode over the subfield of degree `rb.base()` of the code with parity-check
/// rows `parity`: each row is expanded into `rb.dim()` rows over the subfield, and a basis
/// of the kernel is returned.
pub fn subfield_subcode(t: &Tower, parity: &Matrix, rb: &RelativeBasis) -> Result<Matrix> {
    let n = parity.cols();
    if parity.rows() == 0 {
        return Ok(Matrix::identity(n));
    }
    let mut expanded = Matrix::zeros(0, n);
    for row in parity.row_vecs() {
        let coords: Vec<Vec<Elem>> = row.iter().map(|&x| rb.coords(t, x)).collect::<Result<_>>()?;
        for h in 0..rb.dim() {
            expanded.push_row(&coords.iter().map(|c| c[h]).collect::<Vec<_>>());
        }
    }
    Ok(expanded.right_kernel(t))
}

/// One row of a bound table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub delta: usize,
    pub b: usize,
    pub singleton: i64,
    pub eq33: i64,
    pub delsarte: i64,
    pub exact_dim: Option<i64>,
    pub beats_delsarte: bool,
}

/// Table rows for the given `(δ, b)` pairs, with the exact dimension from the coset
/// structure when `with_dim` is set.
pub fn generate_table(t: &Tower, rows: &[(usize, usize)], with_dim: bool) -> Result<Vec<TableRow>> {
    let a = t.primitive_root_of_unity();
    let beta = t.normal_element();
    check_assumptions(t, a, beta)?;
    let fact = factor_cyclotomic(t, a)?;
    rows.iter()
        .map(|&(delta, b)| table_row(t, &fact, beta, delta, b, with_dim))
        .collect()
}

/// A single table row; see [`generate_table`].
pub fn table_row(t: &Tower, fact: &CycFactorization, beta: Elem, delta: usize, b: usize, with_dim: bool) -> Result<TableRow> {
    let n = fact.ell() * t.m() as usize;
    if delta < 2 || delta > n {
        return Err(Error::InvalidParameter(format!("delta = {delta} outside [2, {n}]")));
    }
    let bd = bounds(fact, b, delta, t.m(), t.s());
    let exact_dim = if with_dim { Some(defining_structure(t, fact, beta, b, delta)?.exact_dim) } else { None };
    Ok(TableRow {
        delta,
        b,
        singleton: bd.singleton,
        eq33: bd.eq33,
        delsarte: bd.delsarte,
        exact_dim,
        beats_delsarte: bd.eq33 > bd.delsarte,
    })
}

/// A sum-rank BCH code with everything needed to verify and decode it.
#[derive(Clone, Debug)]
pub struct SrBchCode {
    tower: Arc<Tower>,
    b: usize,
    delta: usize,
    a: Elem,
    beta: Elem,
    factorization: CycFactorization,
    parity: LrsCode,
    parent: DualCscLrs,
    genmat: Matrix,
    structure: DefiningStructure,
    bounds: Bounds,
}

/// Serializable description of an [`SrBchCode`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SrBchRecord {
    pub tower: TowerParams,
    pub b: usize,
    pub delta: usize,
    pub a: String,
    pub beta: String,
    pub n: usize,
    pub dim: usize,
    pub bounds: Bounds,
    pub structure: DefiningStructure,
    /// Generator matrix over `F`, one row of formatted elements per codeword basis vector.
    pub generator: Vec<Vec<String>>,
}

impl SrBchCode {
    /// Builds `C_δ(a^b, β)` with the tower's canonical `a` and `β`.
    pub fn construct(tower: Arc<Tower>, b: usize, delta: usize) -> Result<SrBchCode> {
        let a = tower.primitive_root_of_unity();
        let beta = tower.normal_element();
        Self::construct_with(tower, a, beta, b, delta)
    }

    /// Builds `C_δ(a^b, β)` and cross-checks its dimension three ways.
    pub fn construct_with(tower: Arc<Tower>, a: Elem, beta: Elem, b: usize, delta: usize) -> Result<SrBchCode> {
        let t = &*tower;
        check_assumptions(t, a, beta)?;
        let n = t.ell() * t.m() as usize;
        if delta < 2 || delta > n {
            return Err(Error::InvalidParameter(format!("delta = {delta} outside [2, {n}]")));
        }
        let factorization = factor_cyclotomic(t, a)?;
        let parity = csc_lrs(t, a, beta, b, delta - 1)?;
        let parent = dual_csc_lrs(t, a, beta, b, delta)?;
        let rb = RelativeBasis::new(t, t.deg_f(), t.degree())?;
        let genmat = subfield_subcode(t, parity.genmat(), &rb)?;
        let structure = defining_structure(t, &factorization, beta, b, delta)?;
        let bounds = bounds(&factorization, b, delta, t.m(), t.s());
        let code = SrBchCode { tower: tower.clone(), b, delta, a, beta, factorization, parity, parent, genmat, structure, bounds };
        code.cross_check()?;
        Ok(code)
    }

    fn cross_check(&self) -> Result<()> {
        let t = &*self.tower;
        let exact = self.structure.exact_dim;
        let rank = self.genmat.rows() as i64;
        if rank != exact {
            return Err(Error::CrossCheckMismatch { what: "structure dimension vs subfield subcode rank".into(), left: exact, right: rank });
        }
        if self.genmat.entries().iter().any(|&x| !t.in_subfield(x, t.deg_f()).unwrap_or(false)) {
            return Err(Error::VerificationFailed("subfield subcode has entries outside F".into()));
        }
        if self.genmat.rows() > 0 {
            let product = self.parity.genmat().mul(&self.genmat.transpose(), t);
            if product.entries().iter().any(|x| !x.is_zero()) {
                return Err(Error::VerificationFailed("subfield subcode violates a parity check".into()));
            }
            let parent = self.parent.dual.genmat();
            if parent.vstack(&self.genmat).rank(t) != parent.rows() {
                return Err(Error::VerificationFailed("code is not inside its parent code".into()));
            }
        }
        let ring = BivariateRing::new(self.tower.clone(), t.m() as usize)?;
        let crt = Crt::new(ring, self.factorization.clone())?;
        let ds = defining_set_from_codewords(&crt, &self.genmat)?;
        let from_ds = dimension_from_defining_set(&ds, &self.factorization, self.len());
        if from_ds != exact {
            return Err(Error::CrossCheckMismatch { what: "structure dimension vs defining-set dimension".into(), left: exact, right: from_ds });
        }
        for cs in &self.structure.cosets {
            let got = match cs.j_tilde {
                Some(jt) => ds.at(t, &self.factorization, self.b + jt),
                None => {
                    let i = self.factorization.locate(cs.coset[0]).0;
                    ds.bases()[i].clone()
                }
            };
            let joint = t.rank_over(&[got.clone(), cs.basis.clone()].concat(), t.deg_q())?;
            if got.len() != cs.basis.len() || joint != got.len() {
                return Err(Error::CrossCheckMismatch { what: format!("defining set on coset {:?}", cs.coset), left: cs.basis.len() as i64, right: got.len() as i64 });
            }
        }
        Ok(())
    }

    pub fn tower(&self) -> &Arc<Tower> {
        &self.tower
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn a(&self) -> Elem {
        self.a
    }

    pub fn beta(&self) -> Elem {
        self.beta
    }

    pub fn len(&self) -> usize {
        self.genmat.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn factorization(&self) -> &CycFactorization {
        &self.factorization
    }

    /// The code `C^σ_{δ−1}(A, B)` whose rows are the parity checks.
    pub fn parity_code(&self) -> &LrsCode {
        &self.parity
    }

    /// The parent code `C^σ_{n−δ+1}(A, B')` over `F_{q^m}` containing this code.
    pub fn parent(&self) -> &DualCscLrs {
        &self.parent
    }

    /// Generator matrix over `F` (entries lie in the subfield `F`).
    pub fn generator_matrix(&self) -> &Matrix {
        &self.genmat
    }

    pub fn structure(&self) -> &DefiningStructure {
        &self.structure
    }

    pub fn exact_dim(&self) -> usize {
        self.genmat.rows()
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Whether `c ∈ F^n` satisfies every parity check.
    pub fn contains(&self, c: &[Elem]) -> bool {
        let t = &*self.tower;
        c.len() == self.len()
            && c.iter().all(|&x| t.in_subfield(x, t.deg_f()).unwrap_or(false))
            && self.parity.genmat().row_vecs().iter().all(|r| t.sum(r.iter().zip(c).map(|(&h, &x)| t.mul(h, x))).is_zero())
    }

    /// `message · G` with the message over `F`.
    pub fn encode(&self, message: &[Elem]) -> Result<Vec<Elem>> {
        let t = &*self.tower;
        if message.len() != self.exact_dim() {
            return Err(Error::LengthMismatch { expected: self.exact_dim(), found: message.len() });
        }
        if let Some(x) = message.iter().find(|&&x| !t.in_subfield(x, t.deg_f()).unwrap_or(false)) {
            return Err(Error::NotInSubfield(t.format(*x)));
        }
        Ok(self.genmat.left_mul_vec(message, t))
    }

    /// The message encoding to `c`, if `c` is a codeword.
    pub fn unencode(&self, c: &[Elem]) -> Option<Vec<Elem>> {
        if !self.contains(c) {
            return None;
        }
        self.genmat.solve_left(c, &self.tower)
    }

    pub fn to_record(&self) -> SrBchRecord {
        let t = &*self.tower;
        SrBchRecord {
            tower: *t.params(),
            b: self.b,
            delta: self.delta,
            a: t.format(self.a),
            beta: t.format(self.beta),
            n: self.len(),
            dim: self.exact_dim(),
            bounds: self.bounds,
            structure: self.structure.clone(),
            generator: self.genmat.row_vecs().iter().map(|r| r.iter().map(|&x| t.format(x)).collect()).collect(),
        }
    }

    /// Rebuilds the code from a record and checks that the stored data matches.
    pub fn from_record(rec: &SrBchRecord) -> Result<SrBchCode> {
        let t = Arc::new(Tower::from_params(rec.tower)?);
        let a = t.parse(&rec.a)?;
        let beta = t.parse(&rec.beta)?;
        let code = Self::construct_with(t.clone(), a, beta, rec.b, rec.delta)?;
        let stored: Vec<Vec<Elem>> = rec.generator.iter().map(|r| r.iter().map(|x| t.parse(x)).collect::<Result<_>>()).collect::<Result<_>>()?;
        let stored = Matrix::from_rows(code.len(), stored);
        if !stored.same_row_space(code.generator_matrix(), &t) {
            return Err(Error::VerificationFailed("stored generator does not span the code".into()));
        }
        Ok(code)
    }
}
