//! Exact arithmetic in the integral group rings Z[C_{p^r}].
//!
//! Elements are dense coefficient vectors indexed by the exponent of the
//! generator σ. Matrices over the ring act on column vectors from the left;
//! [`GroupRingMatrix::expand`] realizes them over the underlying free
//! abelian group with basis 1, σ, σ², ….

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::zmat::Matrix;

/// Default cap on the group order p^r.
pub const DEFAULT_MAX_ORDER: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CyclicGroupCtx {
    p: u64,
    r: u32,
    order: usize,
}

impl CyclicGroupCtx {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        Self::with_limit(p, r, DEFAULT_MAX_ORDER)
    }

    pub fn with_limit(p: u64, r: u32, max_order: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        let order = p
            .checked_pow(r)
            .filter(|&o| o <= max_order)
            .ok_or_else(|| Error::InvalidArgument(format!("group order {p}^{r} exceeds limit {max_order}")))?;
        Ok(CyclicGroupCtx { p, r, order: order as usize })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Context of the quotient C_{p^{r-1}}.
    pub fn quotient(&self) -> Result<Self> {
        if self.r == 0 {
            return Err(Error::InvalidArgument("the trivial group has no C_p quotient".into()));
        }
        Ok(CyclicGroupCtx { p: self.p, r: self.r - 1, order: self.order / self.p as usize })
    }

    pub fn zero(&self) -> GroupRingElt {
        GroupRingElt { ctx: *self, coeffs: vec![BigInt::zero(); self.order] }
    }

    pub fn one(&self) -> GroupRingElt {
        self.scalar(BigInt::one())
    }

    pub fn scalar(&self, c: impl Into<BigInt>) -> GroupRingElt {
        let mut x = self.zero();
        x.coeffs[0] = c.into();
        x
    }

    /// σ^k, exponent taken mod p^r.
    pub fn sigma_pow(&self, k: i64) -> GroupRingElt {
        let mut x = self.zero();
        x.coeffs[k.rem_euclid(self.order as i64) as usize] = BigInt::one();
        x
    }

    /// The element 1 − σ.
    pub fn one_minus_sigma(&self) -> GroupRingElt {
        self.one().sub(&self.sigma_pow(1))
    }

    pub fn from_coeffs<T: Into<BigInt>>(&self, coeffs: Vec<T>) -> Result<GroupRingElt> {
        if coeffs.len() != self.order {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                self.order,
                coeffs.len()
            )));
        }
        Ok(GroupRingElt { ctx: *self, coeffs: coeffs.into_iter().map(Into::into).collect() })
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupRingElt {
    ctx: CyclicGroupCtx,
    coeffs: Vec<BigInt>,
}

impl GroupRingElt {
    pub fn ctx(&self) -> CyclicGroupCtx {
        self.ctx
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn augmentation(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    pub fn add(&self, other: &GroupRingElt) -> GroupRingElt {
        assert_eq!(self.ctx, other.ctx, "group ring context mismatch");
        GroupRingElt { ctx: self.ctx, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &GroupRingElt) -> GroupRingElt {
        assert_eq!(self.ctx, other.ctx, "group ring context mismatch");
        GroupRingElt { ctx: self.ctx, coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn neg(&self) -> GroupRingElt {
        GroupRingElt { ctx: self.ctx, coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> GroupRingElt {
        GroupRingElt { ctx: self.ctx, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Convolution product; panics on a context mismatch (see [`ring_mul`]).
    pub fn mul(&self, other: &GroupRingElt) -> GroupRingElt {
        assert_eq!(self.ctx, other.ctx, "group ring context mismatch");
        let q = self.ctx.order;
        let mut out = vec![BigInt::zero(); q];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[(i + j) % q] += a * b;
                }
            }
        }
        GroupRingElt { ctx: self.ctx, coeffs: out }
    }

    /// Left multiplication as a p^r × p^r integer matrix; column j is x·σ^j.
    pub fn circulant(&self) -> Matrix {
        let q = self.ctx.order;
        Matrix::from_fn(q, q, |i, j| self.coeffs[(i + q - j) % q].clone())
    }
}

impl fmt::Debug for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for GroupRingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "σ".to_string(),
                _ => format!("σ^{i}"),
            };
            let term = if mono.is_empty() {
                c.to_string()
            } else if c.is_one() {
                mono
            } else if *c == -BigInt::one() {
                format!("-{mono}")
            } else {
                format!("{c}{mono}")
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
        }
    }
}

/// The norm element Σ σ^i of Z[C_{p^r}].
pub fn norm_elt(ctx: CyclicGroupCtx) -> GroupRingElt {
    GroupRingElt { ctx, coeffs: vec![BigInt::one(); ctx.order] }
}

/// Sum over the order-p subgroup: Σ_{t<p} σ^{t·p^{r-1}}.
pub fn orbit_sum(ctx: CyclicGroupCtx) -> Result<GroupRingElt> {
    let q = ctx.quotient()?.order;
    let mut x = ctx.zero();
    for t in 0..ctx.p as usize {
        x.coeffs[t * q] = BigInt::one();
    }
    Ok(x)
}

pub fn ring_mul(a: &GroupRingElt, b: &GroupRingElt) -> Result<GroupRingElt> {
    if a.ctx != b.ctx {
        return Err(Error::ContextMismatch(format!("{:?} vs {:?}", a.ctx, b.ctx)));
    }
    Ok(a.mul(b))
}

/// The ring map Z[C_{p^r}] → Z[C_{p^{r-1}}], σ ↦ σ̄.
pub fn quotient_map(x: &GroupRingElt) -> Result<GroupRingElt> {
    let target = x.ctx.quotient()?;
    let q = target.order;
    let mut out = target.zero();
    for (i, c) in x.coeffs.iter().enumerate() {
        out.coeffs[i % q] += c;
    }
    Ok(out)
}

/// Integer matrix of the coordinatewise projection Z[C_{p^r}] → Z[C_{p^{r-1}}].
pub fn projection_matrix(ctx: CyclicGroupCtx) -> Result<Matrix> {
    let q = ctx.quotient()?.order;
    Ok(Matrix::from_fn(q, ctx.order, |j, i| if i % q == j { BigInt::one() } else { BigInt::zero() }))
}

/// Integer matrix of σ̄^j ↦ σ^j·N₁, the orbit-sum section of the projection.
pub fn orbit_section_matrix(ctx: CyclicGroupCtx) -> Result<Matrix> {
    let q = ctx.quotient()?.order;
    Ok(Matrix::from_fn(ctx.order, q, |i, j| if i % q == j { BigInt::one() } else { BigInt::zero() }))
}

#[derive(Clone, PartialEq, Eq)]
pub struct GroupRingMatrix {
    ctx: CyclicGroupCtx,
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElt>,
}

impl GroupRingMatrix {
    pub fn zeros(ctx: CyclicGroupCtx, rows: usize, cols: usize) -> Self {
        GroupRingMatrix { ctx, rows, cols, entries: vec![ctx.zero(); rows * cols] }
    }

    pub fn identity(ctx: CyclicGroupCtx, n: usize) -> Self {
        Self::diagonal(ctx, &ctx.one(), n)
    }

    pub fn diagonal(ctx: CyclicGroupCtx, x: &GroupRingElt, n: usize) -> Self {
        let mut m = Self::zeros(ctx, n, n);
        for i in 0..n {
            m.entries[i * n + i] = x.clone();
        }
        m
    }

    /// A 1×1 matrix.
    pub fn single(x: GroupRingElt) -> Self {
        GroupRingMatrix { ctx: x.ctx, rows: 1, cols: 1, entries: vec![x] }
    }

    pub fn from_entries(ctx: CyclicGroupCtx, rows: usize, cols: usize, entries: Vec<GroupRingElt>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::InvalidArgument("entry count does not match shape".into()));
        }
        if let Some(bad) = entries.iter().find(|e| e.ctx != ctx) {
            return Err(Error::ContextMismatch(format!("{:?} vs {:?}", bad.ctx, ctx)));
        }
        Ok(GroupRingMatrix { ctx, rows, cols, entries })
    }

    pub fn ctx(&self) -> CyclicGroupCtx {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElt {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GroupRingElt) {
        assert_eq!(x.ctx, self.ctx, "group ring context mismatch");
        self.entries[i * self.cols + j] = x;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupRingElt::is_zero)
    }

    pub fn mul(&self, other: &GroupRingMatrix) -> GroupRingMatrix {
        assert_eq!(self.ctx, other.ctx, "group ring context mismatch");
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.entries[idx] = out.entries[idx].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    fn zip(&self, other: &GroupRingMatrix, f: impl Fn(&GroupRingElt, &GroupRingElt) -> GroupRingElt) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        GroupRingMatrix {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn add(&self, other: &GroupRingMatrix) -> Self {
        self.zip(other, GroupRingElt::add)
    }

    pub fn sub(&self, other: &GroupRingMatrix) -> Self {
        self.zip(other, GroupRingElt::sub)
    }

    pub fn map(&self, f: impl Fn(&GroupRingElt) -> GroupRingElt) -> Self {
        GroupRingMatrix { ctx: self.ctx, rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(GroupRingElt::neg)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.map(|x| x.scale(c))
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &GroupRingMatrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.entries[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
    }

    /// Entrywise image under [`quotient_map`].
    pub fn quotient_map(&self) -> Result<GroupRingMatrix> {
        let ctx = self.ctx.quotient()?;
        let entries = self.entries.iter().map(quotient_map).collect::<Result<Vec<_>>>()?;
        Ok(GroupRingMatrix { ctx, rows: self.rows, cols: self.cols, entries })
    }

    /// Underlying integer matrix: each entry becomes its p^r × p^r circulant block.
    pub fn expand(&self) -> Matrix {
        let q = self.ctx.order;
        let mut out = Matrix::zeros(self.rows * q, self.cols * q);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                if !x.is_zero() {
                    out.set_block(i * q, j * q, &x.circulant());
                }
            }
        }
        out
    }
}

impl fmt::Debug for GroupRingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "] over Z[C_{}^{}]", self.ctx.p, self.ctx.r)
    }
}

/// Underlying-Z expansion of a group ring matrix.
pub fn expand_to_z(m: &GroupRingMatrix) -> Matrix {
    m.expand()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(p: u64, r: u32) -> CyclicGroupCtx {
        CyclicGroupCtx::new(p, r).unwrap()
    }

    fn elt(c: CyclicGroupCtx, v: &[i64]) -> GroupRingElt {
        c.from_coeffs(v.to_vec()).unwrap()
    }

    #[test]
    fn norm_examples() {
        assert_eq!(norm_elt(ctx(3, 0)), ctx(3, 0).one());
        assert_eq!(norm_elt(ctx(3, 1)).coeffs(), elt(ctx(3, 1), &[1, 1, 1]).coeffs());
        assert_eq!(norm_elt(ctx(5, 1)).augmentation(), BigInt::from(5));
    }

    #[test]
    fn multiplication_examples() {
        let c = ctx(3, 1);
        let a = elt(c, &[1, 1, 0]);
        let b = elt(c, &[1, -1, 0]);
        assert_eq!(ring_mul(&a, &b).unwrap(), elt(c, &[1, 0, -1]));
        let n = norm_elt(c);
        assert_eq!(n.mul(&c.sigma_pow(1)), n);
        assert_eq!(n.mul(&n), n.scale(&BigInt::from(3)));
        assert!(ring_mul(&a, &ctx(3, 2).one()).is_err());
    }

    #[test]
    fn quotient_examples() {
        let c = ctx(3, 2);
        let q = c.quotient().unwrap();
        assert_eq!(quotient_map(&c.one_minus_sigma()).unwrap(), q.one_minus_sigma());
        assert_eq!(quotient_map(&norm_elt(c)).unwrap(), norm_elt(q).scale(&BigInt::from(3)));
        assert_eq!(quotient_map(&c.sigma_pow(3)).unwrap(), q.one());
        assert!(quotient_map(&ctx(3, 0).one()).is_err());
    }

    #[test]
    fn expansion_examples() {
        let c = ctx(3, 1);
        let m = GroupRingMatrix::single(c.one_minus_sigma()).expand();
        assert_eq!(m, Matrix::from_rows(&[vec![1, 0, -1], vec![-1, 1, 0], vec![0, -1, 1]]));
        let n = GroupRingMatrix::single(norm_elt(c)).expand();
        assert_eq!(n, Matrix::from_rows(&[vec![1, 1, 1], vec![1, 1, 1], vec![1, 1, 1]]));
        let five = GroupRingMatrix::single(ctx(5, 0).scalar(5)).expand();
        assert_eq!(five, Matrix::from_rows(&[vec![5]]));
    }

    #[test]
    fn projection_and_section() {
        for (p, r) in [(3, 1), (3, 2), (5, 2)] {
            let c = ctx(p, r);
            let pi = projection_matrix(c).unwrap();
            let inc = orbit_section_matrix(c).unwrap();
            let q = c.quotient().unwrap().order();
            assert_eq!(pi.mul(&inc), Matrix::scalar(&BigInt::from(p), q));
            let n1 = GroupRingMatrix::single(orbit_sum(c).unwrap()).expand();
            assert_eq!(inc.mul(&pi), n1);
        }
    }

    #[test]
    fn rejects_bad_contexts() {
        assert!(CyclicGroupCtx::new(4, 1).is_err());
        assert!(CyclicGroupCtx::with_limit(3, 5, 100).is_err());
        assert!(CyclicGroupCtx::new(2, 3).is_ok());
    }

    fn arb_elt(c: CyclicGroupCtx) -> impl Strategy<Value = GroupRingElt> {
        proptest::collection::vec(-20i64..20, c.order()).prop_map(move |v| c.from_coeffs(v).unwrap())
    }

    proptest! {
        #[test]
        fn ring_axioms(
            (a, b, d) in (arb_elt(ctx(3, 2)), arb_elt(ctx(3, 2)), arb_elt(ctx(3, 2)))
        ) {
            prop_assert_eq!(a.mul(&b).mul(&d), a.mul(&b.mul(&d)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).augmentation(), a.augmentation() * b.augmentation());
        }

        #[test]
        fn quotient_is_multiplicative((a, b) in (arb_elt(ctx(5, 1)), arb_elt(ctx(5, 1)))) {
            let lhs = quotient_map(&a.mul(&b)).unwrap();
            let rhs = quotient_map(&a).unwrap().mul(&quotient_map(&b).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn expansion_is_multiplicative((a, b) in (arb_elt(ctx(3, 2)), arb_elt(ctx(3, 2)))) {
            let lhs = GroupRingMatrix::single(a.mul(&b)).expand();
            let rhs = GroupRingMatrix::single(a).expand().mul(&GroupRingMatrix::single(b).expand());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn norm_projects_to_p_times_norm() {
        for p in [2u64, 3, 5, 7] {
            for r in 1..=3 {
                let c = ctx(p, r);
                let q = c.quotient().unwrap();
                assert_eq!(quotient_map(&norm_elt(c)).unwrap(), norm_elt(q).scale(&BigInt::from(p)));
            }
        }
    }
}
