//! Smith normal form over Z with optional unimodular transforms, and the
//! integer linear solver built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::zmat::Matrix;

/// U·A·V = D with D diagonal, d_1 | d_2 | … | d_rank all positive.
#[derive(Clone, Debug)]
pub struct Smith {
    pub diag: Vec<BigInt>,
    pub rank: usize,
    pub transforms: Option<Transforms>,
}

#[derive(Clone, Debug)]
pub struct Transforms {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
}

struct Work {
    a: Vec<Vec<BigInt>>,
    m: usize,
    n: usize,
    track: bool,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
    v_inv: Vec<Vec<BigInt>>,
}

fn ident(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn to_matrix(rows: Vec<Vec<BigInt>>, cols: usize) -> Matrix {
    let r = rows.len();
    let mut it = rows.into_iter().flatten();
    Matrix::from_fn(r, cols, |_, _| it.next().unwrap())
}

impl Work {
    fn row_addmul(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        let (src, dst) = pair_mut(&mut self.a, j, i);
        for (d, s) in dst.iter_mut().zip(src.iter()) {
            if !s.is_zero() {
                *d += c * s;
            }
        }
        if self.track {
            let (src, dst) = pair_mut(&mut self.u, j, i);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d += c * s;
                }
            }
            for row in self.u_inv.iter_mut() {
                if !row[i].is_zero() {
                    let t = c * &row[i];
                    row[j] -= t;
                }
            }
        }
    }

    fn row_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if self.track {
            self.u.swap(i, j);
            for row in self.u_inv.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    fn row_neg(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if self.track {
            for x in self.u[i].iter_mut() {
                *x = -&*x;
            }
            for row in self.u_inv.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }

    fn col_addmul(&mut self, i: usize, j: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for row in self.a.iter_mut() {
            if !row[j].is_zero() {
                let t = c * &row[j];
                row[i] += t;
            }
        }
        if self.track {
            for row in self.v.iter_mut() {
                if !row[j].is_zero() {
                    let t = c * &row[j];
                    row[i] += t;
                }
            }
            let (src, dst) = pair_mut(&mut self.v_inv, i, j);
            for (d, s) in dst.iter_mut().zip(src.iter()) {
                if !s.is_zero() {
                    *d -= c * s;
                }
            }
        }
    }

    fn col_swap(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if self.track {
            for row in self.v.iter_mut() {
                row.swap(i, j);
            }
            self.v_inv.swap(i, j);
        }
    }

    fn min_in(&self, t: usize, cross_only: bool) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        let consider = |i: usize, j: usize, best: &mut Option<(usize, usize)>| {
            let x = &self.a[i][j];
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < self.a[bi][bj].abs()) {
                *best = Some((i, j));
            }
        };
        if cross_only {
            for i in t..self.m {
                consider(i, t, &mut best);
            }
            for j in t + 1..self.n {
                consider(t, j, &mut best);
            }
        } else {
            for i in t..self.m {
                for j in t..self.n {
                    consider(i, j, &mut best);
                }
            }
        }
        best
    }

    fn run(&mut self) -> Vec<BigInt> {
        let mut diag = Vec::new();
        let k = self.m.min(self.n);
        for t in 0..k {
            let Some((pi, pj)) = self.min_in(t, false) else { break };
            self.row_swap(t, pi);
            self.col_swap(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.m {
                    if !self.a[i][t].is_zero() {
                        let q = self.a[i][t].div_floor(&self.a[t][t]);
                        self.row_addmul(i, t, &-q);
                        clean &= self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.n {
                    if !self.a[t][j].is_zero() {
                        let q = self.a[t][j].div_floor(&self.a[t][t]);
                        self.col_addmul(j, t, &-q);
                        clean &= self.a[t][j].is_zero();
                    }
                }
                if !clean {
                    let (pi, pj) = self.min_in(t, true).expect("pivot cross is nonzero");
                    self.row_swap(t, pi);
                    self.col_swap(t, pj);
                    continue;
                }
                let d = self.a[t][t].clone();
                let bad = (t + 1..self.m).find(|&i| (t + 1..self.n).any(|j| !self.a[i][j].is_multiple_of(&d)));
                match bad {
                    Some(i) => self.row_addmul(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.row_neg(t);
            }
            diag.push(self.a[t][t].clone());
        }
        diag
    }
}

fn pair_mut<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (lo, hi) = v.split_at_mut(dst);
        (&lo[src], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(src);
        (&hi[0], &mut lo[dst])
    }
}

pub fn smith(a: &Matrix, with_transforms: bool) -> Smith {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: (0..m).map(|i| a.row(i).to_vec()).collect(),
        m,
        n,
        track: with_transforms,
        u: if with_transforms { ident(m) } else { Vec::new() },
        u_inv: if with_transforms { ident(m) } else { Vec::new() },
        v: if with_transforms { ident(n) } else { Vec::new() },
        v_inv: if with_transforms { ident(n) } else { Vec::new() },
    };
    let diag = w.run();
    let rank = diag.len();
    let transforms = with_transforms.then(|| Transforms {
        u: to_matrix(std::mem::take(&mut w.u), m),
        u_inv: to_matrix(std::mem::take(&mut w.u_inv), m),
        v: to_matrix(std::mem::take(&mut w.v), n),
        v_inv: to_matrix(std::mem::take(&mut w.v_inv), n),
    });
    Smith { diag, rank, transforms }
}

/// Invariant factors only.
pub fn invariant_factors(a: &Matrix) -> (Vec<BigInt>, usize) {
    let s = smith(a, false);
    (s.diag, s.rank)
}

/// Some integer solution of A·x = b, if one exists.
pub fn solve(a: &Matrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows(), b.len(), "solve shape mismatch");
    let s = smith(a, true);
    let t = s.transforms.as_ref().unwrap();
    let ub = t.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); a.cols()];
    for (i, c) in ub.iter().enumerate() {
        if i < s.rank {
            let (q, r) = c.div_rem(&s.diag[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !c.is_zero() {
            return None;
        }
    }
    Some(t.v.mul_vec(&y))
}

/// Columns of a basis of {x : A·x = 0}.
pub fn kernel_basis(a: &Matrix) -> Matrix {
    let s = smith(a, true);
    let t = s.transforms.unwrap();
    let idx: Vec<usize> = (s.rank..a.cols()).collect();
    t.v.select_cols(&idx)
}
