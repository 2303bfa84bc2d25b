//! Bounded-distance decoding of sum-rank BCH codes up to `t = ⌊(δ−1)/2⌋` errors in
//! `wt^0_SR`.
//!
//! Since `wt_SR(e) ≤ wt^0_SR(e)`, an error of `wt^0_SR` at most `t` is also within radius `t`
//! of the parent linearized Reed–Solomon code over `F_{q^m}`, which has minimum distance `δ`.
//! Decoding there and checking the answer lies in `F^n` decodes the subcode. The engines
//! shipped here are exhaustive; a faster parent decoder can be plugged in through
//! [`ParentDecoder`].
//!
//! ```
//! use std::sync::Arc;
//! use sumrank::decoder::Decoder;
//! use sumrank::srbch::{appendix_tower, SrBchCode};
//!
//! let t = Arc::new(appendix_tower(2).unwrap());
//! let code = SrBchCode::construct(t.clone(), 0, 3).unwrap();
//! let c = code.encode(&[sumrank::Elem(1), sumrank::Elem(0)]).unwrap();
//! let mut y = c.clone();
//! y[4] = t.add(y[4], sumrank::Elem(1));
//! let out = Decoder::default().decode(&code, &y).unwrap();
//! assert_eq!(out.codeword, c);
//! assert_eq!(out.error_weight, 1);
//! ```

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::gf_tower::{Elem, RelativeBasis, Tower};
use crate::linalg::Matrix;
use crate::srbch::SrBchCode;
use crate::sum_rank::{budget, code_size, codewords_within, weight, Extension, Partition, PartitionedVector};

/// Which engine produced a decoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Engine {
    /// Nearest codeword in the parent code over `F_{q^m}` in `wt_SR`.
    Parent,
    /// Nearest codeword in the code itself in `wt^0_SR`.
    Subcode,
    /// A registered [`ParentDecoder`].
    External,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeResult {
    pub codeword: Vec<Elem>,
    pub message: Vec<Elem>,
    /// `wt^0_SR(y − codeword)`.
    pub error_weight: usize,
    pub engine: Engine,
}

/// A decoder for the parent code `C^σ_{n−δ+1}(A, B')` correcting up to `radius` errors in
/// `wt_SR`. Returns `None` on decoding failure.
pub trait ParentDecoder: Send + Sync {
    fn decode_parent(&self, code: &SrBchCode, y: &[Elem], radius: usize) -> Result<Option<Vec<Elem>>>;
}

/// Engine selection and the enumeration budget.
pub struct Decoder {
    budget: u128,
    external: Option<Box<dyn ParentDecoder>>,
}

impl Default for Decoder {
    fn default() -> Self {
        Decoder { budget: budget(), external: None }
    }
}

impl Decoder {
    pub fn with_budget(budget: u128) -> Decoder {
        Decoder { budget, external: None }
    }

    /// Registers a parent decoder, used when exhaustive search exceeds the budget.
    pub fn with_parent_decoder(mut self, dec: Box<dyn ParentDecoder>) -> Decoder {
        self.external = Some(dec);
        self
    }

    pub fn budget(&self) -> u128 {
        self.budget
    }

    /// The decoding radius `⌊(δ−1)/2⌋`.
    pub fn radius(code: &SrBchCode) -> usize {
        (code.delta() - 1) / 2
    }

    pub fn decode(&self, code: &SrBchCode, y: &[Elem]) -> Result<DecodeResult> {
        let t = &**code.tower();
        let n = code.len();
        if y.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: y.len() });
        }
        if let Some(x) = y.iter().find(|&&x| !t.in_subfield(x, t.deg_f()).unwrap_or(false)) {
            return Err(Error::NotInSubfield(t.format(*x)));
        }
        let radius = Self::radius(code);
        let part = Partition::new(t.ell(), t.m() as usize);
        let parent = code.parent().dual.genmat();
        let parent_size = code_size(t, t.degree(), parent.rows());
        let sub_size = code_size(t, t.deg_f(), code.exact_dim());
        let (candidate, engine) = if parent_size <= self.budget {
            let found = codewords_within(t, parent, part, Extension::outer(t), y, radius, self.budget)?;
            if found.len() > 1 {
                return Err(Error::VerificationFailed(format!("{} parent codewords within radius {radius}", found.len())));
            }
            (found.into_iter().next(), Engine::Parent)
        } else if sub_size <= self.budget {
            let found = codewords_within(t, code.generator_matrix(), part, Extension::inner(t), y, radius, self.budget)?;
            if found.len() > 1 {
                return Err(Error::VerificationFailed(format!("{} codewords within radius {radius}", found.len())));
            }
            (found.into_iter().next(), Engine::Subcode)
        } else if let Some(ext) = &self.external {
            (ext.decode_parent(code, y, radius)?, Engine::External)
        } else {
            return Err(Error::BudgetExceeded { needed: parent_size.min(sub_size), budget: self.budget });
        };
        let c = candidate.ok_or(Error::RadiusExceeded { radius })?;
        // a parent codeword outside F^n, or too far in wt^0, means more than t errors
        let message = code.unencode(&c).ok_or(Error::RadiusExceeded { radius })?;
        let e: Vec<Elem> = y.iter().zip(&c).map(|(&a, &b)| t.sub(a, b)).collect();
        let w = weight(t, &e, part, t.deg_q0())?;
        if w > radius {
            return Err(Error::RadiusExceeded { radius });
        }
        Ok(DecodeResult { codeword: c, message, error_weight: w, engine })
    }
}

/// A random `rows × cols` matrix with entries from `elems` (a subfield) and rank exactly `r`.
fn random_rank_matrix(t: &Tower, elems: &[Elem], rows: usize, cols: usize, r: usize, rng: &mut impl Rng) -> Matrix {
    if r == 0 {
        return Matrix::zeros(rows, cols);
    }
    loop {
        let a = Matrix::from_rows(r, (0..rows).map(|_| (0..r).map(|_| *elems.choose(rng).unwrap()).collect()).collect());
        let b = Matrix::from_rows(cols, (0..r).map(|_| (0..cols).map(|_| *elems.choose(rng).unwrap()).collect()).collect());
        let m = a.mul(&b, t);
        if m.rank(t) == r {
            return m;
        }
    }
}

/// A random vector over `L` with `wt = target` measured over `K ⊆ L` (given by `ext`), built
/// from random rank-`r_i` coordinate matrices with `Σ r_i = target`.
pub fn sample_error(t: &Tower, part: Partition, ext: Extension, target: usize, rng: &mut impl Rng) -> Result<Vec<Elem>> {
    let cap = ext.dim().min(part.n_blocks);
    let max = part.ell * cap;
    if target > max {
        return Err(Error::WeightInfeasible { target, max });
    }
    let mut ranks = vec![0usize; part.ell];
    for _ in 0..target {
        let open: Vec<usize> = (0..part.ell).filter(|&i| ranks[i] < cap).collect();
        ranks[*open.choose(rng).unwrap()] += 1;
    }
    let elems = t.subfield_elements(ext.base)?;
    let rb = RelativeBasis::new(t, ext.base, ext.top)?;
    let mats: Vec<Matrix> = ranks.iter().map(|&r| random_rank_matrix(t, &elems, ext.dim(), part.n_blocks, r, rng)).collect();
    Ok(PartitionedVector::from_matrices(t, &mats, &rb, ext)?.data().to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::srbch::appendix_tower;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    #[test]
    fn sampled_weights_are_exact() {
        let t = appendix_tower(2).unwrap();
        let part = Partition::new(3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for ext in [Extension::inner(&t), Extension::outer(&t)] {
            for w in 0..=6 {
                for _ in 0..20 {
                    let e = sample_error(&t, part, ext, w, &mut rng).unwrap();
                    assert_eq!(weight(&t, &e, part, ext.base).unwrap(), w);
                    assert!(e.iter().all(|&x| t.in_subfield(x, ext.top).unwrap()));
                }
            }
        }
        assert_eq!(sample_error(&t, part, Extension::inner(&t), 0, &mut rng).unwrap(), vec![Elem::ZERO; 6]);
        assert_eq!(sample_error(&t, part, Extension::inner(&t), 7, &mut rng), Err(Error::WeightInfeasible { target: 7, max: 6 }));
    }

    #[test]
    fn round_trip_and_radius() {
        let t = Arc::new(appendix_tower(2).unwrap());
        let code = SrBchCode::construct(t.clone(), 0, 3).unwrap();
        let dec = Decoder::default();
        let f = t.subfield_elements(t.deg_f()).unwrap();
        let part = Partition::new(3, 2);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..30 {
            let msg: Vec<Elem> = (0..code.exact_dim()).map(|_| *f.choose(&mut rng).unwrap()).collect();
            let c = code.encode(&msg).unwrap();
            let e = sample_error(&t, part, Extension::inner(&t), 1, &mut rng).unwrap();
            let y: Vec<Elem> = c.iter().zip(&e).map(|(&a, &b)| t.add(a, b)).collect();
            let out = dec.decode(&code, &y).unwrap();
            assert_eq!((out.codeword, out.message, out.error_weight, out.engine), (c.clone(), msg, 1, Engine::Parent));
            let sub = Decoder::with_budget(1 << 10).decode(&code, &y).unwrap();
            assert_eq!((sub.codeword, sub.engine), (c, Engine::Subcode));
        }
        assert!(matches!(Decoder::with_budget(4).decode(&code, &vec![Elem::ZERO; 6]), Err(Error::BudgetExceeded { .. })));
        assert!(matches!(dec.decode(&code, &[Elem::ZERO]), Err(Error::LengthMismatch { .. })));
    }

    struct Oracle;

    impl ParentDecoder for Oracle {
        fn decode_parent(&self, code: &SrBchCode, _y: &[Elem], _radius: usize) -> Result<Option<Vec<Elem>>> {
            Ok(Some(vec![Elem::ZERO; code.len()]))
        }
    }

    #[test]
    fn external_decoder_is_checked() {
        let t = Arc::new(appendix_tower(2).unwrap());
        let code = SrBchCode::construct(t.clone(), 0, 3).unwrap();
        let dec = Decoder::with_budget(1).with_parent_decoder(Box::new(Oracle));
        let mut y = vec![Elem::ZERO; 6];
        assert_eq!(dec.decode(&code, &y).unwrap().engine, Engine::External);
        y[0] = Elem::ONE;
        y[3] = Elem::ONE;
        assert_eq!(dec.decode(&code, &y).unwrap_err(), Error::RadiusExceeded { radius: 1 });
    }
}
