//! The explicit complexes of free Z[C_{p^r}]-modules (all of rank 0 or 1 in
//! each degree) and the chain maps and homotopies relating them.
//!
//! | complex  | support  | ∂ out of even n | ∂ out of odd n                         |
//! |----------|----------|-----------------|----------------------------------------|
//! | Z^a_r    | n ≤ 0    | 1 − σ           | p^a N                                  |
//! | C^i_r    | all n    | 1 − σ           | p^{i+1} N (n > 0), p^i N (n < 0)        |
//! | T^i_r    | all n    | 1 − σ           | p^{i+1} N                              |
//! | _iS_r    | n ≥ 0    | p^i N           | 1 − σ                                  |
//!
//! Ĉ_r is the cone of genNm: _1S_r → _0S_r.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
#[cfg(test)]
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::complexes::{cone, cone_map, ChainHomotopy, ChainMap, Complex, LazyComplex, ZChainMap, ZHomotopy};
use crate::error::{Error, Result};
use crate::groupring::{norm_elt, orbit_section_matrix, projection_matrix, CyclicGroupCtx, GroupRingElt, GroupRingMatrix};
use crate::zmat::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CatalogKind {
    Z,
    C,
    T,
    S,
    Ctilde,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CatalogId {
    pub kind: CatalogKind,
    /// The superscript a or i (ignored for Ĉ).
    pub index: u32,
    pub level: u32,
}

impl CatalogId {
    pub fn new(kind: CatalogKind, index: u32, level: u32) -> Self {
        CatalogId { kind, index, level }
    }
}

fn pow(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

fn single(x: GroupRingElt) -> GroupRingMatrix {
    GroupRingMatrix::single(x)
}

/// p^k·N.
fn pn(ctx: CyclicGroupCtx, k: u32) -> GroupRingElt {
    norm_elt(ctx).scale(&pow(ctx.p(), k))
}

fn rank1_when(pred: impl Fn(i64) -> bool + Send + Sync + 'static) -> impl Fn(i64) -> usize + Send + Sync + 'static {
    move |n| usize::from(pred(n))
}

pub fn complex_z(ctx: CyclicGroupCtx, a: u32) -> LazyComplex {
    Complex::new(ctx, rank1_when(|n| n <= 0), move |n| {
        if n % 2 == 0 {
            single(ctx.one_minus_sigma())
        } else {
            single(pn(ctx, a))
        }
    })
    .with_bounds(None, Some(0))
}

pub fn complex_c(ctx: CyclicGroupCtx, i: u32) -> LazyComplex {
    Complex::new(ctx, |_| 1, move |n| {
        if n % 2 == 0 {
            single(ctx.one_minus_sigma())
        } else if n > 0 {
            single(pn(ctx, i + 1))
        } else {
            single(pn(ctx, i))
        }
    })
}

pub fn complex_t(ctx: CyclicGroupCtx, i: u32) -> LazyComplex {
    Complex::new(ctx, |_| 1, move |n| {
        if n % 2 == 0 {
            single(ctx.one_minus_sigma())
        } else {
            single(pn(ctx, i + 1))
        }
    })
}

pub fn complex_s(ctx: CyclicGroupCtx, i: u32) -> LazyComplex {
    Complex::new(ctx, rank1_when(|n| n >= 0), move |n| {
        if n % 2 == 0 {
            single(pn(ctx, i))
        } else {
            single(ctx.one_minus_sigma())
        }
    })
    .with_bounds(Some(0), None)
}

/// genNm: _1S_r → _0S_r, multiplication by p^{⌊m/2⌋+1} in degree m ≥ 0.
pub fn map_gen_nm(ctx: CyclicGroupCtx) -> ChainMap<CyclicGroupCtx> {
    ChainMap::new(complex_s(ctx, 1), complex_s(ctx, 0), move |m| single(ctx.scalar(pow(ctx.p(), (m / 2) as u32 + 1))))
}

/// i: _0S_r → Z^0_r, the norm element in degree 0.
pub fn map_i(ctx: CyclicGroupCtx) -> ChainMap<CyclicGroupCtx> {
    ChainMap::new(complex_s(ctx, 0), complex_z(ctx, 0), move |_| single(norm_elt(ctx)))
}

pub fn complex_chat(ctx: CyclicGroupCtx) -> LazyComplex {
    cone(&map_gen_nm(ctx))
}

pub fn build_complex(p: u64, id: CatalogId) -> Result<LazyComplex> {
    let ctx = CyclicGroupCtx::new(p, id.level)?;
    Ok(match id.kind {
        CatalogKind::Z => complex_z(ctx, id.index),
        CatalogKind::C => complex_c(ctx, id.index),
        CatalogKind::T => complex_t(ctx, id.index),
        CatalogKind::S => complex_s(ctx, id.index),
        CatalogKind::Ctilde => complex_chat(ctx),
    })
}

/// q: Z^a_r → T^{a−1}_r, identity in degrees ≤ 0.
pub fn map_q(ctx: CyclicGroupCtx, a: u32) -> Result<ChainMap<CyclicGroupCtx>> {
    if a == 0 {
        return Err(Error::InvalidArgument("q needs a ≥ 1".into()));
    }
    Ok(ChainMap::new(complex_z(ctx, a), complex_t(ctx, a - 1), move |_| single(ctx.one())))
}

/// e: C^i_r → T^i_r, identity in positive degrees and p^{⌊j/2⌋} in degree −j.
pub fn map_e(ctx: CyclicGroupCtx, i: u32) -> ChainMap<CyclicGroupCtx> {
    ChainMap::new(complex_c(ctx, i), complex_t(ctx, i), move |n| {
        if n > 0 {
            single(ctx.one())
        } else {
            single(ctx.scalar(pow(ctx.p(), (-n / 2) as u32)))
        }
    })
}

/// g: C^{i+1}_r → T^i_r, identity in negative degrees and p^{⌈j/2⌉} in degree j ≥ 0.
pub fn map_g(ctx: CyclicGroupCtx, i: u32) -> ChainMap<CyclicGroupCtx> {
    ChainMap::new(complex_c(ctx, i + 1), complex_t(ctx, i), move |n| {
        if n < 0 {
            single(ctx.one())
        } else {
            single(ctx.scalar(pow(ctx.p(), ((n + 1) / 2) as u32)))
        }
    })
}

/// The degreewise identity Σ^{from} T^i_r → Σ^{to} T^i_r, for from ≡ to mod 2.
pub fn map_periodicity(ctx: CyclicGroupCtx, i: u32, from: i64, to: i64) -> Result<ChainMap<CyclicGroupCtx>> {
    if (from - to).rem_euclid(2) != 0 {
        return Err(Error::InvalidArgument("periodicity shifts must differ by an even amount".into()));
    }
    let t = complex_t(ctx, i);
    Ok(ChainMap::new(t.shift(from), t.shift(to), move |_| single(ctx.one())))
}

/// c: T^i_r → Σ² T^i_r.
pub fn map_c(ctx: CyclicGroupCtx, i: u32) -> ChainMap<CyclicGroupCtx> {
    map_periodicity(ctx, i, 0, 2).expect("even shift")
}

/// c^m: T^i_r → Σ^{2m} T^i_r for any integer m.
pub fn map_c_pow(ctx: CyclicGroupCtx, i: u32, m: i64) -> ChainMap<CyclicGroupCtx> {
    map_periodicity(ctx, i, 0, 2 * m).expect("even shift")
}

/// Cone(i∘genNm) → C^0_r; the two complexes agree entry by entry.
pub fn cone_to_c0(ctx: CyclicGroupCtx) -> ChainMap<CyclicGroupCtx> {
    let src = cone(&map_i(ctx).compose(&map_gen_nm(ctx)));
    ChainMap::new(src, complex_c(ctx, 0), move |_| single(ctx.one()))
}

/// k: Ĉ_r → C^0_r, induced on cones by (id, i).
pub fn map_k(ctx: CyclicGroupCtx) -> ChainMap<CyclicGroupCtx> {
    let gen = map_gen_nm(ctx);
    let i = map_i(ctx);
    let on_cones = cone_map(&gen, &i.compose(&gen), &ChainMap::identity(complex_s(ctx, 1)), &i);
    cone_to_c0(ctx).compose(&on_cones)
}

fn block_diag(block: &Matrix, copies: usize) -> Matrix {
    let mut m = Matrix::zeros(block.rows() * copies, block.cols() * copies);
    for c in 0..copies {
        m.set_block(c * block.rows(), c * block.cols(), block);
    }
    m
}

/// Coordinatewise projection X → triv(X^{C_p}), σ^j ↦ σ̄^j.
pub fn trf_map(x: &LazyComplex) -> Result<ZChainMap> {
    let pi = projection_matrix(x.ctx())?;
    let fixed = x.cp_fixedpoints()?;
    let xs = x.clone();
    Ok(ChainMap::new(x.underlying(), fixed.underlying(), move |n| block_diag(&pi, xs.rank(n))))
}

/// Orbit-sum inclusion triv(X^{C_p}) → X, σ̄^j ↦ σ^j·N₁.
pub fn inc_map(x: &LazyComplex) -> Result<ZChainMap> {
    let sec = orbit_section_matrix(x.ctx())?;
    let fixed = x.cp_fixedpoints()?;
    let xs = x.clone();
    Ok(ChainMap::new(fixed.underlying(), x.underlying(), move |n| block_diag(&sec, xs.rank(n))))
}

/// The nullhomotopy h of g^0_{r−1}∘trf∘k: Ĉ_r → triv(T^0_{r−1}).
///
/// h_0 is the projection, h_n = (−1)^n (0 1)·projection for n > 0.
pub fn homotopy_h(ctx: CyclicGroupCtx) -> Result<ZHomotopy> {
    let q = ctx.quotient()?;
    let chat = complex_chat(ctx);
    let c0 = complex_c(ctx, 0);
    let trf = trf_map(&c0)?;
    let g = map_g(q, 0).underlying();
    let k = map_k(ctx).underlying();
    let f = g.retarget(trf.target.clone(), complex_t(q, 0).underlying()).compose(&trf).compose(&k);
    let f = f.retarget(chat.underlying(), complex_t(q, 0).underlying());
    let zero = ChainMap::zero(f.source.clone(), f.target.clone());
    let pi = projection_matrix(ctx)?;
    let w = ctx.order();
    Ok(ChainHomotopy::new(f, zero, move |n| {
        if n == 0 {
            pi.clone()
        } else {
            let mut m = Matrix::zeros(pi.rows(), 2 * w);
            let s = if n % 2 == 0 { pi.clone() } else { pi.neg() };
            m.set_block(0, w, &s);
            m
        }
    }))
}

/// The nullhomotopy of q^0_{r−1}∘trf∘i: _0S_r → triv(T^0_{r−1}), h_n = (−1)^n·projection.
pub fn homotopy_h_s(ctx: CyclicGroupCtx) -> Result<ZHomotopy> {
    let q = ctx.quotient()?;
    let s0 = complex_s(ctx, 0);
    let z0 = complex_z(ctx, 0);
    let trf = trf_map(&z0)?;
    let qmap = map_q(q, 1)?.underlying();
    let f = qmap.retarget(trf.target.clone(), complex_t(q, 0).underlying()).compose(&trf).compose(&map_i(ctx).underlying());
    let f = f.retarget(s0.underlying(), complex_t(q, 0).underlying());
    let zero = ChainMap::zero(f.source.clone(), f.target.clone());
    let pi = projection_matrix(ctx)?;
    Ok(ChainHomotopy::new(f, zero, move |n| if n % 2 == 0 { pi.clone() } else { pi.neg() }))
}

/// Checks that the differentials of `x` and `y` agree exactly on `degrees`.
pub fn same_differentials(x: &LazyComplex, y: &LazyComplex, degrees: RangeInclusive<i64>) -> Result<()> {
    if x.ctx() != y.ctx() {
        return Err(Error::ContextMismatch(format!("{:?} vs {:?}", x.ctx(), y.ctx())));
    }
    for n in degrees {
        if x.rank(n) != y.rank(n) || x.diff(n) != y.diff(n) {
            return Err(Error::Validation(format!("complexes differ in degree {n}")));
        }
    }
    Ok(())
}

/// The catalog object whose differentials match the C_p-fixed points of `id`.
pub fn fixedpoint_partner(id: CatalogId) -> Option<CatalogId> {
    match id.kind {
        CatalogKind::Ctilde => None,
        _ if id.level == 0 => None,
        kind => Some(CatalogId::new(kind, id.index + 1, id.level - 1)),
    }
}

/// The scalar p as a 1×1 integer matrix, for checks of trf∘inc.
pub fn scalar_p(p: u64, n: usize) -> Matrix {
    Matrix::scalar(&BigInt::from(p), n)
}

#[cfg(test)]
fn is_identity(m: &Matrix) -> bool {
    m.rows() == m.cols() && (0..m.rows()).all(|i| (0..m.cols()).all(|j| if i == j { m[(i, j)].is_one() } else { m[(i, j)].is_zero() }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::FinGenAb;
    use crate::homology::{homology_at, induced_on_homology};

    fn ctx(p: u64, r: u32) -> CyclicGroupCtx {
        CyclicGroupCtx::new(p, r).unwrap()
    }

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn tate_complex_over_trivial_group() {
        let t = complex_t(ctx(3, 0), 0);
        assert_eq!(t.diff(1), single(ctx(3, 0).scalar(3)));
        assert!(t.diff(0).is_zero());
    }

    #[test]
    fn z_complex_over_trivial_group() {
        let z = complex_z(ctx(3, 0), 2);
        assert_eq!(z.rank(1), 0);
        assert!(z.diff(0).is_zero());
        assert_eq!(z.diff(-1), single(ctx(3, 0).scalar(9)));
    }

    #[test]
    fn s_complex_differentials() {
        let c = ctx(3, 1);
        let s = complex_s(c, 0);
        assert_eq!(s.diff(1), single(c.one_minus_sigma()));
        assert_eq!(s.diff(2), single(norm_elt(c)));
        assert_eq!(s.diff(3), single(c.one_minus_sigma()));
    }

    #[test]
    fn catalog_complexes_square_to_zero() {
        for p in [3, 5] {
            for r in 0..=2 {
                let c = ctx(p, r);
                for i in 0..=2 {
                    for x in [complex_z(c, i), complex_c(c, i), complex_t(c, i), complex_s(c, i)] {
                        x.check_d_squared(-12..=12).unwrap();
                    }
                }
                complex_chat(c).check_d_squared(-12..=12).unwrap();
            }
        }
    }

    #[test]
    fn map_components() {
        let c = ctx(3, 1);
        let q = map_q(c, 2).unwrap();
        assert_eq!(q.comp(0), single(c.one()));
        assert!(q.comp(1).is_zero() && q.comp(1).cols() == 0);
        q.validate(-3..=1).unwrap();
        assert!(map_q(c, 0).is_err());
        let e = map_e(c, 0);
        let got: Vec<_> = [1, 0, -1, -2, -3].iter().map(|&n| e.comp(n)).collect();
        let want: Vec<_> = [1, 1, 1, 3, 3].iter().map(|&x| single(c.scalar(x))).collect();
        assert_eq!(got, want);
        e.validate(-4..=2).unwrap();
        let g = map_g(c, 0);
        let got: Vec<_> = [2, 1, 0, -1].iter().map(|&n| g.comp(n)).collect();
        let want: Vec<_> = [3, 3, 1, 1].iter().map(|&x| single(c.scalar(x))).collect();
        assert_eq!(got, want);
        g.validate(-2..=3).unwrap();
    }

    #[test]
    fn e_and_g_on_homology_over_trivial_group() {
        let c = ctx(3, 0);
        let e = induced_on_homology(&map_e(c, 0).underlying(), 0).unwrap();
        assert_eq!(e.src, FinGenAb::cyclic(3));
        assert!(e.is_iso());
        let g = induced_on_homology(&map_g(c, 0).underlying(), 0).unwrap();
        assert_eq!(g.src, FinGenAb::cyclic(9));
        assert_eq!(g.dst, FinGenAb::cyclic(3));
        assert_eq!(g.cokernel(), FinGenAb::zero());
        assert_eq!(g.kernel(), FinGenAb::cyclic(3));
    }

    #[test]
    fn c_is_invertible() {
        let c = ctx(3, 0);
        let up = map_c(c, 1);
        up.validate(-5..=5).unwrap();
        let down = map_periodicity(c, 1, 2, 0).unwrap();
        let both = down.compose(&up);
        for n in -5..=5 {
            assert_eq!(both.comp(n), GroupRingMatrix::identity(c, 1));
        }
        map_c_pow(c, 1, -3).validate(-5..=5).unwrap();
        assert!(map_periodicity(c, 0, 0, 1).is_err());
    }

    #[test]
    fn c_induces_isomorphisms_between_tate_groups() {
        let c = ctx(5, 0);
        for i in 0..=2 {
            let map = map_c(c, i).underlying();
            for k in [-4, -2, 0, 2] {
                let src = homology_at(&map.source, k).unwrap();
                let tgt = homology_at(&map.target, k).unwrap();
                assert_eq!(src.group, FinGenAb::cyclic(5i64.pow(i + 1)));
                assert_eq!(tgt.group, src.group);
                let h = crate::homology::induced_between(&map, &src, &tgt).unwrap();
                assert!(h.is_iso());
            }
        }
    }

    #[test]
    fn trf_and_inc() {
        let c = ctx(3, 2);
        let x = complex_t(c, 0);
        let trf = trf_map(&x).unwrap();
        let inc = inc_map(&x).unwrap();
        trf.validate(-4..=4).unwrap();
        inc.validate(-4..=4).unwrap();
        let composite = trf.compose(&inc);
        for n in -4..=4 {
            assert_eq!(composite.comp(n), scalar_p(3, 3));
        }
        // σ² ↦ σ̄² coordinatewise, and 1 ↦ 1 + σ³ + σ⁶.
        let t0 = trf.comp(0);
        assert_eq!(t0.col(2), vec![b(0), b(0), b(1)]);
        let i0 = inc.comp(0);
        let expect: Vec<BigInt> = (0..9).map(|j| if j % 3 == 0 { b(1) } else { b(0) }).collect();
        assert_eq!(i0.col(0), expect);
        let n1 = GroupRingMatrix::single(crate::groupring::orbit_sum(c).unwrap()).expand();
        assert_eq!(inc.compose(&trf).comp(0), n1);
        let z = complex_z(c, 1);
        trf_map(&z).unwrap().validate(-4..=1).unwrap();
        assert!(trf_map(&complex_t(ctx(3, 0), 0)).is_err());
    }

    #[test]
    fn fixed_points_match_catalog() {
        for p in [3, 5] {
            for r in 1..=2 {
                for i in 0..=2 {
                    for kind in [CatalogKind::Z, CatalogKind::C, CatalogKind::T, CatalogKind::S] {
                        let id = CatalogId::new(kind, i, r);
                        let x = build_complex(p, id).unwrap();
                        let y = build_complex(p, fixedpoint_partner(id).unwrap()).unwrap();
                        same_differentials(&x.cp_fixedpoints().unwrap(), &y, -8..=8).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn gen_nm_and_k() {
        for p in [3, 5] {
            for r in 0..=2 {
                let c = ctx(p, r);
                map_gen_nm(c).validate(-2..=10).unwrap();
                map_i(c).validate(-2..=10).unwrap();
                let iso = cone_to_c0(c);
                iso.validate(-10..=10).unwrap();
                same_differentials(&iso.source, &complex_c(c, 0), -10..=10).unwrap();
                map_k(c).validate(-10..=10).unwrap();
            }
        }
    }

    #[test]
    fn k_is_a_quasi_isomorphism() {
        let c = ctx(3, 0);
        let k = map_k(c).underlying();
        for n in -10..=10 {
            let h = induced_on_homology(&k, n).unwrap();
            assert!(h.is_iso(), "degree {n}");
        }
        assert_eq!(homology_at(&k.source, 0).unwrap().group, FinGenAb::cyclic(3));
    }

    #[test]
    fn h_components_and_identity() {
        let c = ctx(3, 1);
        let h = homotopy_h(c).unwrap();
        assert!(h.h(-1).is_zero());
        assert_eq!(h.h(0), projection_matrix(c).unwrap());
        assert_eq!(h.h(1).block(0, 3, 1, 3), projection_matrix(c).unwrap().neg());
        assert!(h.h(1).block(0, 0, 1, 3).is_zero());
        h.validate(-2..=6).unwrap();
        for p in [3, 5] {
            for r in 1..=2 {
                homotopy_h(ctx(p, r)).unwrap().validate(-5..=12).unwrap();
                homotopy_h_s(ctx(p, r)).unwrap().validate(-5..=12).unwrap();
            }
        }
    }

    #[test]
    fn s_complex_is_a_point_at_level_zero() {
        let x = complex_s(ctx(3, 0), 0).underlying();
        assert_eq!(homology_at(&x, 0).unwrap().group, FinGenAb::free(1));
        for n in 1..=8 {
            assert!(homology_at(&x, n).unwrap().group.is_zero());
        }
    }

    #[test]
    fn identity_helper() {
        assert!(is_identity(&Matrix::identity(2)));
        assert!(!is_identity(&scalar_p(3, 1)));
    }
}
