//! Sum-rank weights, matrix representations and exhaustive minimum distance.
//!
//! A vector of length `n = ℓN` over a field `L` is split into `ℓ` blocks of `N` entries.
//! Its weight over a subfield `K ⊆ L` is the sum of the `K`-dimensions of the spans of the
//! blocks.
//!
//! ```
//! use sumrank::gf_tower::{Elem, Tower};
//! use sumrank::sum_rank::{Extension, Partition, PartitionedVector};
//!
//! let t = Tower::new(2, 1, 2, 2, 3).unwrap();
//! let ext = Extension::outer(&t);
//! let v = PartitionedVector::new(vec![Elem(1), Elem(0), Elem(0), Elem(0), Elem(1), Elem(2)], Partition::new(3, 2), ext).unwrap();
//! assert_eq!(v.weight(&t).unwrap(), 3);
//! ```

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf_tower::{Elem, RelativeBasis, Tower};
use crate::linalg::Matrix;

/// Default number of codewords an exhaustive search may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 22;

/// Enumeration budget; the `SUMRANK_BUDGET` environment variable overrides the default.
pub fn budget() -> u128 {
    std::env::var("SUMRANK_BUDGET").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Block structure `(ℓ, N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Partition {
    pub ell: usize,
    pub n_blocks: usize,
}

impl Partition {
    pub fn new(ell: usize, n_blocks: usize) -> Partition {
        Partition { ell, n_blocks }
    }

    pub fn len(&self) -> usize {
        self.ell * self.n_blocks
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn check(&self, len: usize) -> Result<()> {
        if len != self.len() {
            return Err(Error::BadPartition { len, ell: self.ell, n_blocks: self.n_blocks });
        }
        Ok(())
    }
}

/// The pair `K ⊆ L`, given by degrees over `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Extension {
    pub base: u32,
    pub top: u32,
}

impl Extension {
    /// `F_{q0} ⊆ F`, the extension behind `wt^0_SR`.
    pub fn inner(t: &Tower) -> Extension {
        Extension { base: t.deg_q0(), top: t.deg_f() }
    }

    /// `F_q ⊆ F_{q^m}`, the extension behind `wt_SR`.
    pub fn outer(t: &Tower) -> Extension {
        Extension { base: t.deg_q(), top: t.degree() }
    }

    /// `[L : K]`.
    pub fn dim(&self) -> usize {
        (self.top / self.base) as usize
    }
}

/// A partitioned vector together with the extension its weight is measured over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartitionedVector {
    data: Vec<Elem>,
    partition: Partition,
    ext: Extension,
}

impl PartitionedVector {
    pub fn new(data: Vec<Elem>, partition: Partition, ext: Extension) -> Result<PartitionedVector> {
        partition.check(data.len())?;
        Ok(PartitionedVector { data, partition, ext })
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn partition(&self) -> Partition {
        self.partition
    }

    pub fn extension(&self) -> Extension {
        self.ext
    }

    pub fn block(&self, i: usize) -> &[Elem] {
        let n = self.partition.n_blocks;
        &self.data[i * n..(i + 1) * n]
    }

    pub fn weight(&self, t: &Tower) -> Result<usize> {
        sum_rank_weight(t, self)
    }

    /// The `ℓ` coordinate matrices (`[L:K] × N`, entries in `K`) w.r.t. `basis`.
    pub fn to_matrices(&self, t: &Tower, basis: &RelativeBasis) -> Result<Vec<Matrix>> {
        let n = self.partition.n_blocks;
        let mut out = Vec::with_capacity(self.partition.ell);
        for i in 0..self.partition.ell {
            let mut m = Matrix::zeros(basis.dim(), n);
            for (j, &x) in self.block(i).iter().enumerate() {
                for (h, c) in basis.coords(t, x)?.into_iter().enumerate() {
                    m.set(h, j, c);
                }
            }
            out.push(m);
        }
        Ok(out)
    }

    pub fn from_matrices(t: &Tower, mats: &[Matrix], basis: &RelativeBasis, ext: Extension) -> Result<PartitionedVector> {
        let n = mats.first().map_or(0, |m| m.cols());
        let mut data = Vec::with_capacity(mats.len() * n);
        for m in mats {
            for j in 0..m.cols() {
                let col: Vec<Elem> = (0..m.rows()).map(|h| m.get(h, j)).collect();
                data.push(basis.from_coords(t, &col));
            }
        }
        PartitionedVector::new(data, Partition::new(mats.len(), n), ext)
    }
}

/// `Σ_i dim_K ⟨c^{(i)}⟩`.
pub fn sum_rank_weight(t: &Tower, v: &PartitionedVector) -> Result<usize> {
    weight(t, &v.data, v.partition, v.ext.base)
}

/// Sum-rank weight of a raw slice over the subfield of degree `base`.
pub fn weight(t: &Tower, data: &[Elem], part: Partition, base: u32) -> Result<usize> {
    part.check(data.len())?;
    let mut w = 0;
    for block in data.chunks(part.n_blocks.max(1)) {
        w += t.rank_over(block, base)?;
    }
    Ok(w)
}

/// Hamming weight, for comparison.
pub fn hamming_weight(data: &[Elem]) -> usize {
    data.iter().filter(|x| !x.is_zero()).count()
}

/// `n − d + 1`.
pub fn singleton_rhs(n: usize, d: usize) -> i64 {
    n as i64 - d as i64 + 1
}

/// The `F_p`-rows `κ·g` for `g` a row of `gen` and `κ` in the `F_p`-basis of `L`.
fn fp_rows(t: &Tower, gen: &Matrix, top: u32) -> Result<Vec<Vec<Elem>>> {
    let kappa = t.subfield_basis(top)?;
    let mut out = Vec::new();
    for r in 0..gen.rows() {
        for &k in kappa {
            out.push(gen.row(r).iter().map(|&x| t.mul(k, x)).collect());
        }
    }
    Ok(out)
}

fn add_into(t: &Tower, acc: &mut [Elem], v: &[Elem]) {
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = t.add(*a, b);
    }
}

/// Number of codewords `|L|^k`, saturating.
pub fn code_size(t: &Tower, top: u32, k: usize) -> u128 {
    let base = (t.p() as u128).saturating_pow(top);
    base.checked_pow(k as u32).unwrap_or(u128::MAX)
}

/// Visits `start + Σ d_i rows[i]` for all digit vectors `d ∈ F_p^{rows}` in parallel and
/// returns the minimum of `f` (or `None` if `f` is `None` everywhere).
///
/// Each odometer step changes one digit by `+1 (mod p)`, which adds exactly one row.
fn par_min_over_span<F>(t: &Tower, start: &[Elem], rows: &[Vec<Elem>], floor: usize, f: F) -> Option<usize>
where
    F: Fn(&[Elem]) -> Option<usize> + Sync,
{
    let p = t.p() as u128;
    // the last `split` rows are fixed per task
    let split = rows.len().min(match p {
        2 => 10,
        3 => 6,
        _ => 4,
    });
    let (inner, outer) = rows.split_at(rows.len() - split);
    let tasks = p.pow(split as u32) as u64;
    let best = AtomicUsize::new(usize::MAX);
    (0..tasks).into_par_iter().for_each(|task| {
        if best.load(Ordering::Relaxed) <= floor {
            return;
        }
        let mut v = start.to_vec();
        let mut rem = task;
        for r in outer {
            for _ in 0..(rem % p as u64) {
                add_into(t, &mut v, r);
            }
            rem /= p as u64;
        }
        let mut digits = vec![0u64; inner.len()];
        let mut local = usize::MAX;
        loop {
            if let Some(w) = f(&v) {
                local = local.min(w);
                if local <= floor {
                    break;
                }
            }
            let mut i = 0;
            loop {
                if i == inner.len() {
                    best.fetch_min(local, Ordering::Relaxed);
                    return;
                }
                add_into(t, &mut v, &inner[i]);
                digits[i] += 1;
                if digits[i] == p as u64 {
                    digits[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
        best.fetch_min(local, Ordering::Relaxed);
    });
    match best.into_inner() {
        usize::MAX => None,
        w => Some(w),
    }
}

/// Minimum sum-rank distance of the `L`-linear code spanned by the rows of `gen` (which must
/// have entries in `L`), by exhaustive enumeration of one representative per `L`-line.
///
/// Returns `None` for the zero code.
pub fn min_sum_rank_distance_bruteforce(t: &Tower, gen: &Matrix, part: Partition, ext: Extension, budget: u128) -> Result<Option<usize>> {
    part.check(gen.cols())?;
    let (echelon, _) = gen.rref(t);
    let k = echelon.rows();
    if k == 0 {
        return Ok(None);
    }
    let needed = code_size(t, ext.top, k);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let rows = fp_rows(t, &echelon, ext.top)?;
    let deg = ext.top as usize;
    let mut best: Option<usize> = None;
    // projective enumeration: the first nonzero message coordinate is 1
    for lead in 0..k {
        let start = echelon.row(lead).to_vec();
        let tail = &rows[(lead + 1) * deg..];
        let w = par_min_over_span(t, &start, tail, 1, |c| weight(t, c, part, ext.base).ok());
        best = match (best, w) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        if best == Some(1) {
            break;
        }
    }
    Ok(best)
}

/// All codewords `c` of the `L`-span of `gen` with `wt(y − c) ≤ radius`, found exhaustively.
pub fn codewords_within(t: &Tower, gen: &Matrix, part: Partition, ext: Extension, y: &[Elem], radius: usize, budget: u128) -> Result<Vec<Vec<Elem>>> {
    part.check(gen.cols())?;
    part.check(y.len())?;
    let (echelon, _) = gen.rref(t);
    let needed = code_size(t, ext.top, echelon.rows());
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let rows: Vec<Vec<Elem>> = fp_rows(t, &echelon, ext.top)?.into_iter().map(|r| r.into_iter().map(|x| t.neg(x)).collect()).collect();
    // enumerate y − c directly
    let found = std::sync::Mutex::new(Vec::new());
    par_min_over_span(t, y, &rows, 0, |e| {
        let w = weight(t, e, part, ext.base).ok()?;
        if w <= radius {
            let c: Vec<Elem> = y.iter().zip(e).map(|(&a, &b)| t.sub(a, b)).collect();
            found.lock().unwrap().push(c);
        }
        None
    });
    let mut out = found.into_inner().unwrap();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn tower() -> Tower {
        Tower::new(2, 1, 2, 2, 3).unwrap()
    }

    #[test]
    fn weight_examples() {
        let t = tower();
        let ext = Extension::outer(&t);
        let part = Partition::new(3, 2);
        assert_eq!(weight(&t, &[Elem::ZERO; 6], part, ext.base).unwrap(), 0);
        let mut v = vec![Elem::ZERO; 6];
        v[3] = Elem(9);
        assert_eq!(weight(&t, &v, part, ext.base).unwrap(), 1);
        // a basis of L/K as one block
        let rb = RelativeBasis::new(&t, ext.base, ext.top).unwrap();
        let b = rb.basis().to_vec();
        assert_eq!(weight(&t, &b, Partition::new(1, 2), ext.base).unwrap(), 2);
        assert!(matches!(weight(&t, &v[1..], part, ext.base), Err(Error::BadPartition { .. })));
    }

    #[test]
    fn matrices_round_trip() {
        let t = Tower::new(2, 1, 2, 4, 15).unwrap();
        let ext = Extension::outer(&t);
        let rb = RelativeBasis::new(&t, ext.base, ext.top).unwrap();
        let zero = PartitionedVector::new(vec![Elem::ZERO; 4], Partition::new(2, 2), ext).unwrap();
        assert!(zero.to_matrices(&t, &rb).unwrap().iter().all(|m| m.entries().iter().all(|x| x.is_zero())));
        let v = PartitionedVector::new(vec![rb.basis()[0], Elem::ZERO, Elem(77), rb.basis()[1]], Partition::new(2, 2), ext).unwrap();
        let mats = v.to_matrices(&t, &rb).unwrap();
        assert_eq!(mats[0].get(0, 0), Elem::ONE);
        assert_eq!(mats[0].get(1, 0), Elem::ZERO);
        for (i, m) in mats.iter().enumerate() {
            assert_eq!(m.rank(&t), t.rank_over(v.block(i), ext.base).unwrap());
        }
        assert_eq!(PartitionedVector::from_matrices(&t, &mats, &rb, ext).unwrap(), v);
    }

    #[test]
    fn singleton() {
        assert_eq!(singleton_rhs(30, 5), 26);
        assert_eq!(singleton_rhs(14, 5), 10);
        assert_eq!(singleton_rhs(9, 1), 9);
    }

    #[test]
    fn brute_force_examples() {
        let t = tower();
        let ext = Extension::outer(&t);
        let rb = RelativeBasis::new(&t, ext.base, ext.top).unwrap();
        assert_eq!(rb.dim(), 2);
        let id = Matrix::identity(6);
        assert_eq!(min_sum_rank_distance_bruteforce(&t, &Matrix::identity(2), Partition::new(1, 2), ext, 1 << 22).unwrap(), Some(1));
        assert!(matches!(min_sum_rank_distance_bruteforce(&t, &id, Partition::new(3, 2), ext, 1000), Err(Error::BudgetExceeded { .. })));
        // repetition code in the Hamming specialization
        let t1 = Tower::new(2, 1, 1, 1, 1).unwrap();
        let rep = Matrix::from_rows(5, vec![vec![Elem::ONE; 5]]);
        let e1 = Extension::outer(&t1);
        assert_eq!(min_sum_rank_distance_bruteforce(&t1, &rep, Partition::new(5, 1), e1, 1 << 22).unwrap(), Some(5));
        assert_eq!(min_sum_rank_distance_bruteforce(&t, &Matrix::zeros(0, 6), Partition::new(3, 2), ext, 1 << 22).unwrap(), None);
    }

    #[test]
    fn codewords_within_radius() {
        let t = tower();
        let ext = Extension::outer(&t);
        let rep = Matrix::from_rows(2, vec![vec![Elem::ONE, Elem::ONE]]);
        let part = Partition::new(2, 1);
        let y = vec![Elem(5), Elem(5)];
        assert_eq!(codewords_within(&t, &rep, part, ext, &y, 0, 1 << 20).unwrap(), vec![y.clone()]);
        assert_eq!(codewords_within(&t, &rep, part, ext, &y, 1, 1 << 20).unwrap().len(), 1);
        assert_eq!(codewords_within(&t, &rep, part, ext, &y, 2, 1 << 20).unwrap().len(), 16);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn prop_inner_weight_dominates_outer(v in prop::collection::vec(0usize..16, 6)) {
            let t = Tower::new(2, 1, 2, 2, 3).unwrap();
            let f = t.subfield_elements(t.deg_f()).unwrap();
            let e: Vec<Elem> = v.iter().map(|&i| f[i % f.len()]).collect();
            let part = Partition::new(3, 2);
            let w0 = weight(&t, &e, part, Extension::inner(&t).base).unwrap();
            let w = weight(&t, &e, part, Extension::outer(&t).base).unwrap();
            prop_assert!(w <= w0);
        }

        #[test]
        fn prop_specializations(v in prop::collection::vec(0u64..64, 1..8)) {
            // m = N = 1: Hamming weight
            let t1 = Tower::new(2, 1, 1, 6, 1).unwrap();
            let e: Vec<Elem> = v.iter().map(|&x| Elem(x)).collect();
            let ext = Extension::outer(&t1);
            prop_assert_eq!(weight(&t1, &e, Partition::new(e.len(), 1), ext.base).unwrap(), hamming_weight(&e));
            // ℓ = 1: matrix rank
            let t2 = Tower::new(2, 1, 6, 1, 1).unwrap();
            let ext2 = Extension::outer(&t2);
            let rb = RelativeBasis::new(&t2, ext2.base, ext2.top).unwrap();
            let pv = PartitionedVector::new(e.clone(), Partition::new(1, e.len()), ext2).unwrap();
            prop_assert_eq!(pv.weight(&t2).unwrap(), pv.to_matrices(&t2, &rb).unwrap()[0].rank(&t2));
        }

        #[test]
        fn prop_column_operations_preserve_weight(v in prop::collection::vec(0u64..256, 6), a in prop::collection::vec(0u64..16, 4)) {
            let t = Tower::new(2, 1, 2, 4, 15).unwrap();
            let ext = Extension::outer(&t);
            let k = t.subfield_elements(ext.base).unwrap();
            let (a00, a01, a10, a11) = (k[a[0] as usize], k[a[1] as usize], k[a[2] as usize], k[a[3] as usize]);
            let det = t.sub(t.mul(a00, a11), t.mul(a01, a10));
            prop_assume!(!det.is_zero());
            let e: Vec<Elem> = v.iter().map(|&x| Elem(x)).collect();
            let part = Partition::new(3, 2);
            let f: Vec<Elem> = e.chunks(2).flat_map(|b| {
                vec![t.add(t.mul(b[0], a00), t.mul(b[1], a10)), t.add(t.mul(b[0], a01), t.mul(b[1], a11))]
            }).collect();
            prop_assert_eq!(weight(&t, &e, part, ext.base).unwrap(), weight(&t, &f, part, ext.base).unwrap());
        }
    }
}
