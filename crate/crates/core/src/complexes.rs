//! Unbounded chain complexes queried degree by degree.
//!
//! Differentials lower degree: `diff(n)` maps degree n to degree n − 1 and
//! has shape `rank(n-1) × rank(n)`. Complexes are generic over the
//! coefficient ring: [`LazyComplex`] lives over a group ring Z[C_{p^r}],
//! [`ZComplex`] over the integers (typically an underlying expansion).

use std::collections::HashMap;
use std::fmt;
use std::ops::RangeInclusive;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::groupring::{CyclicGroupCtx, GroupRingMatrix};
use crate::zmat::Matrix;

pub trait Coeffs: Clone + Send + Sync + fmt::Debug + 'static {
    type Mat: Clone + Send + Sync + PartialEq + fmt::Debug + 'static;
    fn zeros(&self, rows: usize, cols: usize) -> Self::Mat;
    fn identity(&self, n: usize) -> Self::Mat;
    fn rows(m: &Self::Mat) -> usize;
    fn cols(m: &Self::Mat) -> usize;
    fn mul(a: &Self::Mat, b: &Self::Mat) -> Self::Mat;
    fn add(a: &Self::Mat, b: &Self::Mat) -> Self::Mat;
    fn sub(a: &Self::Mat, b: &Self::Mat) -> Self::Mat;
    fn neg(a: &Self::Mat) -> Self::Mat;
    fn scale(a: &Self::Mat, c: &BigInt) -> Self::Mat;
    fn is_zero(a: &Self::Mat) -> bool;
    fn set_block(a: &mut Self::Mat, r0: usize, c0: usize, b: &Self::Mat);
}

/// The integers as a coefficient ring.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Coeffs for Integers {
    type Mat = Matrix;
    fn zeros(&self, rows: usize, cols: usize) -> Matrix {
        Matrix::zeros(rows, cols)
    }
    fn identity(&self, n: usize) -> Matrix {
        Matrix::identity(n)
    }
    fn rows(m: &Matrix) -> usize {
        m.rows()
    }
    fn cols(m: &Matrix) -> usize {
        m.cols()
    }
    fn mul(a: &Matrix, b: &Matrix) -> Matrix {
        a.mul(b)
    }
    fn add(a: &Matrix, b: &Matrix) -> Matrix {
        a.add(b)
    }
    fn sub(a: &Matrix, b: &Matrix) -> Matrix {
        a.sub(b)
    }
    fn neg(a: &Matrix) -> Matrix {
        a.neg()
    }
    fn scale(a: &Matrix, c: &BigInt) -> Matrix {
        a.scale(c)
    }
    fn is_zero(a: &Matrix) -> bool {
        a.is_zero()
    }
    fn set_block(a: &mut Matrix, r0: usize, c0: usize, b: &Matrix) {
        a.set_block(r0, c0, b)
    }
}

impl Coeffs for CyclicGroupCtx {
    type Mat = GroupRingMatrix;
    fn zeros(&self, rows: usize, cols: usize) -> GroupRingMatrix {
        GroupRingMatrix::zeros(*self, rows, cols)
    }
    fn identity(&self, n: usize) -> GroupRingMatrix {
        GroupRingMatrix::identity(*self, n)
    }
    fn rows(m: &GroupRingMatrix) -> usize {
        m.rows()
    }
    fn cols(m: &GroupRingMatrix) -> usize {
        m.cols()
    }
    fn mul(a: &GroupRingMatrix, b: &GroupRingMatrix) -> GroupRingMatrix {
        a.mul(b)
    }
    fn add(a: &GroupRingMatrix, b: &GroupRingMatrix) -> GroupRingMatrix {
        a.add(b)
    }
    fn sub(a: &GroupRingMatrix, b: &GroupRingMatrix) -> GroupRingMatrix {
        a.sub(b)
    }
    fn neg(a: &GroupRingMatrix) -> GroupRingMatrix {
        a.neg()
    }
    fn scale(a: &GroupRingMatrix, c: &BigInt) -> GroupRingMatrix {
        a.scale(c)
    }
    fn is_zero(a: &GroupRingMatrix) -> bool {
        a.is_zero()
    }
    fn set_block(a: &mut GroupRingMatrix, r0: usize, c0: usize, b: &GroupRingMatrix) {
        a.set_block(r0, c0, b)
    }
}

type RankFn = Arc<dyn Fn(i64) -> usize + Send + Sync>;
type MatFn<M> = Arc<dyn Fn(i64) -> M + Send + Sync>;
type DiffCache<M> = Arc<Mutex<HashMap<i64, M>>>;

fn sign(k: i64) -> BigInt {
    if k.rem_euclid(2) == 0 {
        BigInt::from(1)
    } else {
        BigInt::from(-1)
    }
}

pub struct Complex<R: Coeffs> {
    ring: R,
    rank: RankFn,
    diff: MatFn<R::Mat>,
    bounds: (Option<i64>, Option<i64>),
    cache: Option<DiffCache<R::Mat>>,
}

impl<R: Coeffs> Clone for Complex<R> {
    fn clone(&self) -> Self {
        Complex {
            ring: self.ring.clone(),
            rank: self.rank.clone(),
            diff: self.diff.clone(),
            bounds: self.bounds,
            cache: self.cache.clone(),
        }
    }
}

impl<R: Coeffs> fmt::Debug for Complex<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex over {:?}, support {:?}", self.ring, self.bounds)
    }
}

pub type LazyComplex = Complex<CyclicGroupCtx>;
pub type ZComplex = Complex<Integers>;
pub type ZChainMap = ChainMap<Integers>;
pub type ZHomotopy = ChainHomotopy<Integers>;

impl<R: Coeffs> Complex<R> {
    pub fn new(
        ring: R,
        rank: impl Fn(i64) -> usize + Send + Sync + 'static,
        diff: impl Fn(i64) -> R::Mat + Send + Sync + 'static,
    ) -> Self {
        Complex { ring, rank: Arc::new(rank), diff: Arc::new(diff), bounds: (None, None), cache: None }
    }

    /// Records advisory support bounds; `None` means unbounded on that side.
    pub fn with_bounds(mut self, lo: Option<i64>, hi: Option<i64>) -> Self {
        self.bounds = (lo, hi);
        self
    }

    pub fn zero(ring: R) -> Self {
        let r = ring.clone();
        Complex::new(ring, |_| 0, move |_| r.zeros(0, 0)).with_bounds(Some(0), Some(-1))
    }

    /// A single free module of the given rank in degree `deg`.
    pub fn point(ring: R, rank: usize, deg: i64) -> Self {
        let r = ring.clone();
        Complex::new(ring, move |n| if n == deg { rank } else { 0 }, move |n| {
            let rows = if n - 1 == deg { rank } else { 0 };
            let cols = if n == deg { rank } else { 0 };
            r.zeros(rows, cols)
        })
        .with_bounds(Some(deg), Some(deg))
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn bounds(&self) -> (Option<i64>, Option<i64>) {
        self.bounds
    }

    pub fn rank(&self, n: i64) -> usize {
        (self.rank)(n)
    }

    pub fn diff(&self, n: i64) -> R::Mat {
        let (rows, cols) = (self.rank(n - 1), self.rank(n));
        if rows == 0 || cols == 0 {
            return self.ring.zeros(rows, cols);
        }
        if let Some(cache) = &self.cache {
            if let Some(m) = cache.lock().expect("cache poisoned").get(&n) {
                return m.clone();
            }
        }
        let m = (self.diff)(n);
        assert_eq!((R::rows(&m), R::cols(&m)), (rows, cols), "differential out of degree {n} has the wrong shape");
        if let Some(cache) = &self.cache {
            cache.lock().expect("cache poisoned").insert(n, m.clone());
        }
        m
    }

    /// Same complex with differentials remembered after first use.
    pub fn memoized(&self) -> Self {
        let mut c = self.clone();
        c.cache = Some(Arc::new(Mutex::new(HashMap::new())));
        c
    }

    /// Σ^k: rank'(n) = rank(n−k), diff'(n) = (−1)^k diff(n−k).
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 {
            return self.clone();
        }
        let a = self.clone();
        let b = self.clone();
        let s = sign(k);
        Complex::new(self.ring.clone(), move |n| a.rank(n - k), move |n| R::scale(&b.diff(n - k), &s))
            .with_bounds(self.bounds.0.map(|x| x + k), self.bounds.1.map(|x| x + k))
    }

    pub fn check_d_squared(&self, degrees: RangeInclusive<i64>) -> Result<()> {
        for n in degrees {
            let dd = R::mul(&self.diff(n - 1), &self.diff(n));
            if !R::is_zero(&dd) {
                return Err(Error::Validation(format!("d∘d ≠ 0 out of degree {n}")));
            }
        }
        Ok(())
    }
}

impl LazyComplex {
    pub fn ctx(&self) -> CyclicGroupCtx {
        self.ring
    }

    /// Underlying complex of free abelian groups.
    pub fn underlying(&self) -> ZComplex {
        let q = self.ring.order();
        let a = self.clone();
        let b = self.clone();
        Complex::new(Integers, move |n| a.rank(n) * q, move |n| b.diff(n).expand()).with_bounds(self.bounds.0, self.bounds.1)
    }

    /// C_p-fixed points on the orbit-sum basis: same ranks, differentials
    /// pushed through Z[C_{p^r}] → Z[C_{p^{r-1}}].
    pub fn cp_fixedpoints(&self) -> Result<LazyComplex> {
        let q = self.ring.quotient()?;
        let a = self.clone();
        let b = self.clone();
        Ok(Complex::new(q, move |n| a.rank(n), move |n| b.diff(n).quotient_map().expect("level is positive"))
            .with_bounds(self.bounds.0, self.bounds.1))
    }
}

/// Pullback of a level-(r−1) complex to C_{p^r} along the quotient; on
/// underlying groups this is the expansion itself.
pub fn triv(x: &LazyComplex) -> ZComplex {
    x.underlying()
}

pub struct ChainMap<R: Coeffs> {
    pub source: Complex<R>,
    pub target: Complex<R>,
    comp: MatFn<R::Mat>,
}

impl<R: Coeffs> Clone for ChainMap<R> {
    fn clone(&self) -> Self {
        ChainMap { source: self.source.clone(), target: self.target.clone(), comp: self.comp.clone() }
    }
}

impl<R: Coeffs> fmt::Debug for ChainMap<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ChainMap({:?} -> {:?})", self.source, self.target)
    }
}

impl<R: Coeffs> ChainMap<R> {
    pub fn new(source: Complex<R>, target: Complex<R>, comp: impl Fn(i64) -> R::Mat + Send + Sync + 'static) -> Self {
        ChainMap { source, target, comp: Arc::new(comp) }
    }

    pub fn zero(source: Complex<R>, target: Complex<R>) -> Self {
        let ring = source.ring.clone();
        let (s, t) = (source.clone(), target.clone());
        ChainMap::new(source, target, move |n| ring.zeros(t.rank(n), s.rank(n)))
    }

    pub fn identity(x: Complex<R>) -> Self {
        let ring = x.ring.clone();
        let y = x.clone();
        ChainMap::new(x.clone(), x, move |n| ring.identity(y.rank(n)))
    }

    pub fn comp(&self, n: i64) -> R::Mat {
        let (rows, cols) = (self.target.rank(n), self.source.rank(n));
        if rows == 0 || cols == 0 {
            return self.source.ring.zeros(rows, cols);
        }
        let m = (self.comp)(n);
        assert_eq!((R::rows(&m), R::cols(&m)), (rows, cols), "chain map component in degree {n} has the wrong shape");
        m
    }

    pub fn validate(&self, degrees: RangeInclusive<i64>) -> Result<()> {
        for n in degrees {
            let lhs = R::mul(&self.target.diff(n), &self.comp(n));
            let rhs = R::mul(&self.comp(n - 1), &self.source.diff(n));
            if lhs != rhs {
                return Err(Error::Validation(format!("chain map square fails out of degree {n}")));
            }
        }
        Ok(())
    }

    /// Σ^k f between the shifted complexes, with unchanged components.
    pub fn shift(&self, k: i64) -> Self {
        let f = self.clone();
        ChainMap::new(self.source.shift(k), self.target.shift(k), move |n| f.comp(n - k))
    }

    /// self ∘ first.
    pub fn compose(&self, first: &ChainMap<R>) -> Self {
        let (g, f) = (self.clone(), first.clone());
        ChainMap::new(first.source.clone(), self.target.clone(), move |n| R::mul(&g.comp(n), &f.comp(n)))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        let f = self.clone();
        let c = c.clone();
        ChainMap::new(self.source.clone(), self.target.clone(), move |n| R::scale(&f.comp(n), &c))
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn sub(&self, other: &ChainMap<R>) -> Self {
        let (f, g) = (self.clone(), other.clone());
        ChainMap::new(self.source.clone(), self.target.clone(), move |n| R::sub(&f.comp(n), &g.comp(n)))
    }

    /// Same components, re-typed between other complexes with equal ranks.
    pub fn retarget(&self, source: Complex<R>, target: Complex<R>) -> Self {
        let f = self.clone();
        ChainMap::new(source, target, move |n| f.comp(n))
    }
}

impl ChainMap<CyclicGroupCtx> {
    pub fn underlying(&self) -> ZChainMap {
        let f = self.clone();
        ChainMap::new(self.source.underlying(), self.target.underlying(), move |n| f.comp(n).expand())
    }
}

/// h with d·h(n) + h(n−1)·d = f(n) − g(n), h(n) of shape rank_target(n+1) × rank_source(n).
pub struct ChainHomotopy<R: Coeffs> {
    pub f: ChainMap<R>,
    pub g: ChainMap<R>,
    h: MatFn<R::Mat>,
}

impl<R: Coeffs> Clone for ChainHomotopy<R> {
    fn clone(&self) -> Self {
        ChainHomotopy { f: self.f.clone(), g: self.g.clone(), h: self.h.clone() }
    }
}

impl<R: Coeffs> ChainHomotopy<R> {
    pub fn new(f: ChainMap<R>, g: ChainMap<R>, h: impl Fn(i64) -> R::Mat + Send + Sync + 'static) -> Self {
        ChainHomotopy { f, g, h: Arc::new(h) }
    }

    pub fn zero(f: ChainMap<R>) -> Self {
        let ring = f.source.ring.clone();
        let (s, t) = (f.source.clone(), f.target.clone());
        ChainHomotopy::new(f.clone(), f, move |n| ring.zeros(t.rank(n + 1), s.rank(n)))
    }

    pub fn h(&self, n: i64) -> R::Mat {
        let (rows, cols) = (self.f.target.rank(n + 1), self.f.source.rank(n));
        if rows == 0 || cols == 0 {
            return self.f.source.ring.zeros(rows, cols);
        }
        let m = (self.h)(n);
        assert_eq!((R::rows(&m), R::cols(&m)), (rows, cols), "homotopy component in degree {n} has the wrong shape");
        m
    }

    pub fn validate(&self, degrees: RangeInclusive<i64>) -> Result<()> {
        let (src, tgt) = (&self.f.source, &self.f.target);
        for n in degrees {
            let lhs = R::add(&R::mul(&tgt.diff(n + 1), &self.h(n)), &R::mul(&self.h(n - 1), &src.diff(n)));
            let rhs = R::sub(&self.f.comp(n), &self.g.comp(n));
            if lhs != rhs {
                return Err(Error::Validation(format!("homotopy identity fails in degree {n}")));
            }
        }
        Ok(())
    }

    /// Shifting both ends by k multiplies the homotopy by (−1)^k.
    pub fn shift(&self, k: i64) -> Self {
        let s = sign(k);
        let this = self.clone();
        ChainHomotopy::new(self.f.shift(k), self.g.shift(k), move |n| R::scale(&this.h(n - k), &s))
    }
}

/// Cone(f)_n = M_{n−1} ⊕ N_n with ∂ = [[∂^M_{n−1}, 0], [(−1)^{n−1} f_{n−1}, ∂^N_n]].
pub fn cone<R: Coeffs>(f: &ChainMap<R>) -> Complex<R> {
    let (m, nn) = (f.source.clone(), f.target.clone());
    let (m2, n2, f2) = (f.source.clone(), f.target.clone(), f.clone());
    let ring = f.source.ring.clone();
    let lo = match (f.source.bounds.0, f.target.bounds.0) {
        (Some(a), Some(b)) => Some((a + 1).min(b)),
        _ => None,
    };
    let hi = match (f.source.bounds.1, f.target.bounds.1) {
        (Some(a), Some(b)) => Some((a + 1).max(b)),
        _ => None,
    };
    Complex::new(
        f.source.ring.clone(),
        move |n| m.rank(n - 1) + nn.rank(n),
        move |n| {
            let (mr0, mr1, nr0, nr1) = (m2.rank(n - 2), m2.rank(n - 1), n2.rank(n - 1), n2.rank(n));
            let mut d = ring.zeros(mr0 + nr0, mr1 + nr1);
            R::set_block(&mut d, 0, 0, &m2.diff(n - 1));
            R::set_block(&mut d, mr0, 0, &R::scale(&f2.comp(n - 1), &sign(n - 1)));
            R::set_block(&mut d, mr0, mr1, &n2.diff(n));
            d
        },
    )
    .with_bounds(lo, hi)
}

/// Fib(f) = Σ^{−1} Cone(f): Fib_n = M_n ⊕ N_{n+1}.
pub fn fiber<R: Coeffs>(f: &ChainMap<R>) -> Complex<R> {
    cone(f).shift(-1)
}

/// Map of cones induced by a strictly commuting square b∘f = f'∘a.
pub fn cone_map<R: Coeffs>(f: &ChainMap<R>, f2: &ChainMap<R>, a: &ChainMap<R>, b: &ChainMap<R>) -> ChainMap<R> {
    let (src, tgt) = (cone(f), cone(f2));
    let (a, b) = (a.clone(), b.clone());
    let (s, t) = (src.clone(), tgt.clone());
    let ring = f.source.ring.clone();
    let (fs, f2s) = (f.source.clone(), f2.source.clone());
    ChainMap::new(src, tgt, move |n| {
        let mut c = ring.zeros(t.rank(n), s.rank(n));
        R::set_block(&mut c, 0, 0, &a.comp(n - 1));
        R::set_block(&mut c, f2s.rank(n - 1), fs.rank(n - 1), &b.comp(n));
        c
    })
}

/// A direct sum remembering its summands.
pub struct DirectSum<R: Coeffs> {
    pub parts: Vec<Complex<R>>,
    pub total: Complex<R>,
}

impl<R: Coeffs> Clone for DirectSum<R> {
    fn clone(&self) -> Self {
        DirectSum { parts: self.parts.clone(), total: self.total.clone() }
    }
}

impl<R: Coeffs> DirectSum<R> {
    pub fn new(ring: R, parts: Vec<Complex<R>>) -> Self {
        let p1 = parts.clone();
        let p2 = parts.clone();
        let r = ring.clone();
        let total = Complex::new(
            ring,
            move |n| p1.iter().map(|x| x.rank(n)).sum(),
            move |n| {
                let rows: usize = p2.iter().map(|x| x.rank(n - 1)).sum();
                let cols: usize = p2.iter().map(|x| x.rank(n)).sum();
                let mut d = r.zeros(rows, cols);
                let (mut r0, mut c0) = (0, 0);
                for x in &p2 {
                    let (a, b) = (x.rank(n - 1), x.rank(n));
                    if a > 0 && b > 0 {
                        R::set_block(&mut d, r0, c0, &x.diff(n));
                    }
                    r0 += a;
                    c0 += b;
                }
                d
            },
        );
        DirectSum { parts, total }
    }

    pub fn offsets(&self, n: i64) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.parts.len() + 1);
        let mut acc = 0;
        out.push(0);
        for x in &self.parts {
            acc += x.rank(n);
            out.push(acc);
        }
        out
    }
}

/// A degree-d family of block matrices between direct sums: entry (i, j)
/// maps summand j of `src` (degree n) to summand i of `dst` (degree n + d).
pub fn block_family<R: Coeffs>(
    src: &DirectSum<R>,
    dst: &DirectSum<R>,
    degree: i64,
    blocks: Vec<(usize, usize, MatFn<R::Mat>)>,
) -> impl Fn(i64) -> R::Mat + Send + Sync + 'static {
    let (src, dst) = (src.clone(), dst.clone());
    let ring = src.total.ring.clone();
    move |n| {
        let so = src.offsets(n);
        let to = dst.offsets(n + degree);
        let mut m = ring.zeros(*to.last().unwrap(), *so.last().unwrap());
        for (i, j, b) in &blocks {
            let (rows, cols) = (to[i + 1] - to[*i], so[j + 1] - so[*j]);
            if rows == 0 || cols == 0 {
                continue;
            }
            let blk = b(n);
            assert_eq!((R::rows(&blk), R::cols(&blk)), (rows, cols), "block ({i},{j}) has the wrong shape in degree {n}");
            R::set_block(&mut m, to[*i], so[*j], &blk);
        }
        m
    }
}

/// Arrows T_{s−1} → B_s (`diag`) and T_s → B_s (`vert`), s = 1..a.
pub struct ZigzagDiagram<R: Coeffs> {
    pub top: Vec<Complex<R>>,
    pub bottom: Vec<Complex<R>>,
    pub diag: Vec<ChainMap<R>>,
    pub vert: Vec<ChainMap<R>>,
}

impl<R: Coeffs> Clone for ZigzagDiagram<R> {
    fn clone(&self) -> Self {
        ZigzagDiagram { top: self.top.clone(), bottom: self.bottom.clone(), diag: self.diag.clone(), vert: self.vert.clone() }
    }
}

impl<R: Coeffs> ZigzagDiagram<R> {
    pub fn a(&self) -> usize {
        self.bottom.len()
    }

    pub fn check_shape(&self, probe: RangeInclusive<i64>) -> Result<()> {
        let a = self.bottom.len();
        if self.top.len() != a + 1 || self.diag.len() != a || self.vert.len() != a {
            return Err(Error::InvalidArgument(format!(
                "zigzag with {} bottom objects needs {} top objects and {} arrows of each kind",
                a,
                a + 1,
                a
            )));
        }
        for n in probe {
            for s in 1..=a {
                let same = |x: &Complex<R>, y: &Complex<R>| x.rank(n) == y.rank(n);
                if !same(&self.diag[s - 1].source, &self.top[s - 1])
                    || !same(&self.diag[s - 1].target, &self.bottom[s - 1])
                    || !same(&self.vert[s - 1].source, &self.top[s])
                    || !same(&self.vert[s - 1].target, &self.bottom[s - 1])
                {
                    return Err(Error::InvalidArgument(format!("arrow {s} does not fit the zigzag in degree {n}")));
                }
            }
        }
        Ok(())
    }

    pub fn validate_arrows(&self, degrees: RangeInclusive<i64>) -> Result<()> {
        for f in self.diag.iter().chain(&self.vert) {
            f.validate(degrees.clone())?;
        }
        Ok(())
    }
}

impl ZigzagDiagram<CyclicGroupCtx> {
    pub fn underlying(&self) -> ZigzagDiagram<Integers> {
        ZigzagDiagram {
            top: self.top.iter().map(LazyComplex::underlying).collect(),
            bottom: self.bottom.iter().map(LazyComplex::underlying).collect(),
            diag: self.diag.iter().map(ChainMap::underlying).collect(),
            vert: self.vert.iter().map(ChainMap::underlying).collect(),
        }
    }
}

/// The homotopy limit of a zigzag, kept together with its fiber data.
#[derive(Clone)]
pub struct Holim {
    pub tops: DirectSum<Integers>,
    pub bottoms: DirectSum<Integers>,
    pub phi: ZChainMap,
    pub complex: ZComplex,
}

/// holim = Fib(Φ) with Φ: ⊕T_s → ⊕B_s, B_s-component f_s∘pr_{s−1} − g_s∘pr_s.
pub fn holim_zigzag(z: &ZigzagDiagram<Integers>) -> Result<Holim> {
    z.check_shape(-2..=2)?;
    let a = z.a();
    let tops = DirectSum::new(Integers, z.top.clone());
    let bottoms = DirectSum::new(Integers, z.bottom.clone());
    let mut blocks: Vec<(usize, usize, MatFn<Matrix>)> = Vec::new();
    for s in 1..=a {
        let f = z.diag[s - 1].clone();
        let g = z.vert[s - 1].clone();
        blocks.push((s - 1, s - 1, Arc::new(move |n| f.comp(n))));
        blocks.push((s - 1, s, Arc::new(move |n| g.comp(n).neg())));
    }
    let phi = ChainMap::new(tops.total.clone(), bottoms.total.clone(), block_family(&tops, &bottoms, 0, blocks));
    let complex = fiber(&phi).memoized();
    Ok(Holim { tops, bottoms, phi, complex })
}

/// Objectwise maps between two zigzags of the same length, with optional
/// homotopies for non-commuting squares.
///
/// `diag_htpy[s-1]` goes from f'_s∘F_{s−1} to F^B_s∘f_s and `vert_htpy[s-1]`
/// from g'_s∘F_s to F^B_s∘g_s; `None` marks a strict square.
pub struct ZigzagMorphism {
    pub top: Vec<ZChainMap>,
    pub bottom: Vec<ZChainMap>,
    pub diag_htpy: Vec<Option<ZHomotopy>>,
    pub vert_htpy: Vec<Option<ZHomotopy>>,
}

impl ZigzagMorphism {
    pub fn strict(top: Vec<ZChainMap>, bottom: Vec<ZChainMap>) -> Self {
        let a = bottom.len();
        ZigzagMorphism { top, bottom, diag_htpy: vec![None; a], vert_htpy: vec![None; a] }
    }
}

/// The lax map on fibers: (t, b) ↦ (F^T t, F^B b + (−1)^{n+1} H t) in degree n,
/// where H: ⊕T_s → ⊕B'_s is assembled from the square homotopies.
pub struct LaxMap {
    pub map: ZChainMap,
    pub ft: ZChainMap,
    pub fb: ZChainMap,
    h: MatFn<Matrix>,
    src_phi: ZChainMap,
    dst_phi: ZChainMap,
}

impl LaxMap {
    /// Φ'∘F^T − F^B∘Φ = ∂H + H∂ on the given degrees.
    pub fn check_homotopies(&self, degrees: RangeInclusive<i64>) -> Result<()> {
        let tsrc = &self.src_phi.source;
        let bdst = &self.dst_phi.target;
        for n in degrees {
            let lhs = self.dst_phi.comp(n).mul(&self.ft.comp(n)).sub(&self.fb.comp(n).mul(&self.src_phi.comp(n)));
            let rhs = bdst.diff(n + 1).mul(&(self.h)(n)).add(&(self.h)(n - 1).mul(&tsrc.diff(n)));
            if lhs != rhs {
                return Err(Error::Validation(format!("square homotopies fail in degree {n}")));
            }
        }
        Ok(())
    }

    pub fn validate(&self, degrees: RangeInclusive<i64>) -> Result<()> {
        self.ft.validate(degrees.clone())?;
        self.fb.validate(degrees.clone())?;
        self.check_homotopies(degrees.clone())?;
        self.map.validate(degrees)
    }
}

pub fn lax_map_on_holim(src: &Holim, dst: &Holim, mor: &ZigzagMorphism) -> Result<LaxMap> {
    let a = src.bottoms.parts.len();
    if dst.bottoms.parts.len() != a || mor.top.len() != a + 1 || mor.bottom.len() != a {
        return Err(Error::InvalidArgument("zigzag morphism shape mismatch".into()));
    }
    if mor.diag_htpy.len() != a || mor.vert_htpy.len() != a {
        return Err(Error::InvalidArgument("one homotopy slot per square is required".into()));
    }
    let tblocks: Vec<(usize, usize, MatFn<Matrix>)> = mor
        .top
        .iter()
        .enumerate()
        .map(|(s, f)| {
            let f = f.clone();
            (s, s, Arc::new(move |n| f.comp(n)) as MatFn<Matrix>)
        })
        .collect();
    let bblocks: Vec<(usize, usize, MatFn<Matrix>)> = mor
        .bottom
        .iter()
        .enumerate()
        .map(|(s, f)| {
            let f = f.clone();
            (s, s, Arc::new(move |n| f.comp(n)) as MatFn<Matrix>)
        })
        .collect();
    let ft = ChainMap::new(src.tops.total.clone(), dst.tops.total.clone(), block_family(&src.tops, &dst.tops, 0, tblocks));
    let fb = ChainMap::new(
        src.bottoms.total.clone(),
        dst.bottoms.total.clone(),
        block_family(&src.bottoms, &dst.bottoms, 0, bblocks),
    );
    let mut hblocks: Vec<(usize, usize, MatFn<Matrix>)> = Vec::new();
    for s in 1..=a {
        if let Some(h) = mor.diag_htpy[s - 1].clone() {
            hblocks.push((s - 1, s - 1, Arc::new(move |n| h.h(n))));
        }
        if let Some(h) = mor.vert_htpy[s - 1].clone() {
            hblocks.push((s - 1, s, Arc::new(move |n| h.h(n).neg())));
        }
    }
    let h: MatFn<Matrix> = Arc::new(block_family(&src.tops, &dst.bottoms, 1, hblocks));
    let (ft2, fb2, h2) = (ft.clone(), fb.clone(), h.clone());
    let (st, dt) = (src.tops.total.clone(), dst.tops.total.clone());
    let (dbt, sbt) = (dst.bottoms.total.clone(), src.bottoms.total.clone());
    let map = ChainMap::new(src.complex.clone(), dst.complex.clone(), move |n| {
        let mut m = Matrix::zeros(dt.rank(n) + dbt.rank(n + 1), st.rank(n) + sbt.rank(n + 1));
        m.set_block(0, 0, &ft2.comp(n));
        m.set_block(dt.rank(n), 0, &h2(n).scale(&sign(n + 1)));
        m.set_block(dt.rank(n), st.rank(n), &fb2.comp(n + 1));
        m
    });
    Ok(LaxMap { map, ft, fb, h, src_phi: src.phi.clone(), dst_phi: dst.phi.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_at;
    use crate::abelian::FinGenAb;

    fn zpoint() -> ZComplex {
        Complex::point(Integers, 1, 0)
    }

    fn scalar_map(x: &ZComplex, y: &ZComplex, c: i64) -> ZChainMap {
        let a = x.clone();
        ChainMap::new(x.clone(), y.clone(), move |n| Matrix::scalar(&BigInt::from(c), a.rank(n)))
    }

    #[test]
    fn shift_examples() {
        let x = zpoint();
        assert_eq!(x.shift(0).rank(0), 1);
        let y = x.shift(1).shift(-1);
        assert_eq!((y.rank(0), y.rank(1)), (1, 0));
        let z = x.shift(2);
        assert_eq!((z.rank(2), z.rank(0)), (1, 0));
    }

    #[test]
    fn cone_examples() {
        let x = zpoint();
        let c = cone(&ChainMap::identity(x.clone()));
        for k in -2..=2 {
            assert!(homology_at(&c, k).unwrap().group.is_zero());
        }
        let c3 = cone(&scalar_map(&x, &x, 3));
        assert_eq!(homology_at(&c3, 0).unwrap().group, FinGenAb::cyclic(3));
        assert!(homology_at(&c3, 1).unwrap().group.is_zero());
        assert!(homology_at(&c3, -1).unwrap().group.is_zero());
        let c0 = cone(&ChainMap::zero(Complex::zero(Integers), x.clone()));
        assert_eq!(c0.rank(0), 1);
        assert_eq!(homology_at(&c0, 0).unwrap().group, FinGenAb::free(1));
    }

    #[test]
    fn holim_of_identities_is_equalizer() {
        let x = zpoint();
        let id = ChainMap::identity(x.clone());
        let z = ZigzagDiagram { top: vec![x.clone(), x.clone()], bottom: vec![x.clone()], diag: vec![id.clone()], vert: vec![id] };
        let h = holim_zigzag(&z).unwrap();
        assert_eq!(homology_at(&h.complex, 0).unwrap().group, FinGenAb::free(1));
        for k in [-2, -1, 1, 2] {
            assert!(homology_at(&h.complex, k).unwrap().group.is_zero());
        }
    }

    #[test]
    fn holim_of_trivial_zigzag_is_top() {
        let x = zpoint().shift(3);
        let z = ZigzagDiagram { top: vec![x.clone()], bottom: vec![], diag: vec![], vert: vec![] };
        let h = holim_zigzag(&z).unwrap();
        for n in -5..=5 {
            assert_eq!(h.complex.rank(n), x.rank(n));
            assert_eq!(h.complex.diff(n), x.diff(n));
        }
    }

    #[test]
    fn lax_identity_morphism_is_identity() {
        let x = zpoint();
        let id = ChainMap::identity(x.clone());
        let z = ZigzagDiagram { top: vec![x.clone(), x.clone()], bottom: vec![x.clone()], diag: vec![id.clone()], vert: vec![id.clone()] };
        let h = holim_zigzag(&z).unwrap();
        let mor = ZigzagMorphism::strict(vec![id.clone(), id.clone()], vec![id]);
        let lax = lax_map_on_holim(&h, &h, &mor).unwrap();
        lax.validate(-3..=3).unwrap();
        for n in -3..=3 {
            assert_eq!(lax.map.comp(n), Matrix::identity(h.complex.rank(n)));
        }
    }

    #[test]
    fn nonzero_homotopy_enters_with_the_derived_sign() {
        // C --0--> C <-- 0 mapped to C --id--> C <-- 0 by identities, with C
        // acyclic; the diagonal square commutes only up to a contraction.
        let x = zpoint();
        let c = cone(&ChainMap::identity(x.clone()));
        let zero_c = Complex::zero(Integers);
        let f0 = ChainMap::zero(c.clone(), c.clone());
        let id_c = ChainMap::identity(c.clone());
        let src = ZigzagDiagram {
            top: vec![c.clone(), zero_c.clone()],
            bottom: vec![c.clone()],
            diag: vec![f0.clone()],
            vert: vec![ChainMap::zero(zero_c.clone(), c.clone())],
        };
        let dst = ZigzagDiagram {
            top: vec![c.clone(), zero_c.clone()],
            bottom: vec![c.clone()],
            diag: vec![id_c.clone()],
            vert: vec![ChainMap::zero(zero_c.clone(), c.clone())],
        };
        let hs = holim_zigzag(&src).unwrap();
        let hd = holim_zigzag(&dst).unwrap();
        // id_C is null-homotopic via the contraction of the acyclic cone.
        let cc = c.clone();
        let htpy = ChainHomotopy::new(id_c.clone(), f0.clone(), move |n| {
            let mut m = Matrix::zeros(cc.rank(n + 1), cc.rank(n));
            if n == 0 {
                m[(0, 0)] = BigInt::from(1);
            }
            m
        });
        htpy.validate(-3..=3).unwrap();
        let mor = ZigzagMorphism {
            top: vec![id_c.clone(), ChainMap::identity(zero_c)],
            bottom: vec![id_c],
            diag_htpy: vec![Some(htpy)],
            vert_htpy: vec![None],
        };
        let lax = lax_map_on_holim(&hs, &hd, &mor).unwrap();
        lax.validate(-4..=4).unwrap();
    }
}
