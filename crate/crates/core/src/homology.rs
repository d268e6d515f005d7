//! Homology of integer chain complexes via Smith normal form, with explicit
//! cycle representatives so that chain maps induce matrices on generators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::abelian::{FinGenAb, Hom};
use crate::complexes::{ZChainMap, ZComplex};
use crate::error::{Error, Result};
use crate::snf::smith;
use crate::zmat::Matrix;

/// H_k = ker(d_k)/im(d_{k+1}) together with generators and coordinates.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub degree: i64,
    pub group: FinGenAb,
    /// Column j is a cycle representing generator j.
    pub gens: Matrix,
    /// Row j extracts the j-th coordinate of a cycle (before reduction).
    pub coord: Matrix,
}

impl HomologyGroup {
    /// Coordinates of a cycle on the canonical generators, reduced.
    pub fn coordinates(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        let moduli = self.group.moduli();
        self.coord
            .mul_vec(cycle)
            .into_iter()
            .zip(moduli)
            .map(|(y, d)| if d.is_zero() { y } else { y.mod_floor(&d) })
            .collect()
    }
}

/// Homology from the outgoing differential d_k and the incoming d_{k+1}.
pub fn homology_from(degree: i64, d_out: &Matrix, d_in: &Matrix) -> Result<HomologyGroup> {
    if d_out.cols() != d_in.rows() {
        return Err(Error::Validation(format!("differentials around degree {degree} do not compose")));
    }
    if !d_out.mul(d_in).is_zero() {
        return Err(Error::Validation(format!("d∘d ≠ 0 at degree {degree}")));
    }
    let c = d_out.cols();
    let s1 = smith(d_out, true);
    let t1 = s1.transforms.as_ref().unwrap();
    let ker_idx: Vec<usize> = (s1.rank..c).collect();
    let kernel = t1.v.select_cols(&ker_idx);
    let to_kernel = t1.v_inv.select_rows(&ker_idx);
    let b = to_kernel.mul(d_in);
    let s2 = smith(&b, true);
    let t2 = s2.transforms.as_ref().unwrap();
    let m = ker_idx.len();
    let mut keep = Vec::new();
    let mut torsion = Vec::new();
    for i in 0..s2.rank {
        if !s2.diag[i].is_one() {
            keep.push(i);
            torsion.push(s2.diag[i].clone());
        }
    }
    keep.extend(s2.rank..m);
    let gens = kernel.mul(&t2.u_inv.select_cols(&keep));
    let coord = t2.u.select_rows(&keep).mul(&to_kernel);
    Ok(HomologyGroup { degree, group: FinGenAb { free_rank: m - s2.rank, torsion }, gens, coord })
}

pub fn homology_at(x: &ZComplex, k: i64) -> Result<HomologyGroup> {
    homology_from(k, &x.diff(k), &x.diff(k + 1))
}

/// The homomorphism induced by `f` between precomputed homology groups.
pub fn induced_between(f: &ZChainMap, src: &HomologyGroup, dst: &HomologyGroup) -> Result<Hom> {
    let k = src.degree;
    if dst.degree != k {
        return Err(Error::InvalidArgument("homology groups sit in different degrees".into()));
    }
    f.validate(k..=k + 1)?;
    let fk = f.comp(k);
    let mut m = Matrix::zeros(dst.group.num_gens(), src.group.num_gens());
    for j in 0..src.group.num_gens() {
        let img = fk.mul_vec(&src.gens.col(j));
        for (i, y) in dst.coordinates(&img).into_iter().enumerate() {
            m[(i, j)] = y;
        }
    }
    Hom::new(src.group.clone(), dst.group.clone(), m)
}

pub fn induced_on_homology(f: &ZChainMap, k: i64) -> Result<Hom> {
    let hs = homology_at(&f.source, k)?;
    let ht = homology_at(&f.target, k)?;
    induced_between(f, &hs, &ht)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::{ChainMap, Complex, Integers};
    use proptest::prelude::*;

    fn two_term(d: Matrix) -> ZComplex {
        let (r, c) = (d.rows(), d.cols());
        Complex::new(Integers, move |n| match n {
            0 => r,
            1 => c,
            _ => 0,
        }, move |_| d.clone())
    }

    #[test]
    fn cyclic_quotient_and_kernel() {
        let x = two_term(Matrix::from_rows(&[vec![3]]));
        assert_eq!(homology_at(&x, 0).unwrap().group, FinGenAb::cyclic(3));
        assert!(homology_at(&x, 1).unwrap().group.is_zero());
        let y = two_term(Matrix::from_rows(&[vec![2, 4]]));
        assert_eq!(homology_at(&y, 1).unwrap().group, FinGenAb::free(1));
        assert_eq!(homology_at(&y, 0).unwrap().group, FinGenAb::cyclic(2));
    }

    #[test]
    fn induced_examples() {
        let x = Complex::point(Integers, 1, 0);
        let id = ChainMap::identity(x.clone());
        assert!(induced_on_homology(&id, 0).unwrap().same_map(&Hom::identity(&FinGenAb::free(1))));
        let xx = x.clone();
        let three = ChainMap::new(x.clone(), x.clone(), move |n| Matrix::scalar(&BigInt::from(3), xx.rank(n)));
        assert!(induced_on_homology(&three, 0).unwrap().same_map(&Hom::scalar(&FinGenAb::free(1), 3)));
    }

    #[test]
    fn rejects_non_complex() {
        let d_out = Matrix::from_rows(&[vec![1]]);
        let d_in = Matrix::from_rows(&[vec![1]]);
        assert!(homology_from(0, &d_out, &d_in).is_err());
    }

    /// Independent computation: rank over Q by fraction-free elimination and
    /// torsion from the nonunit elementary divisors of d_in restricted to
    /// the kernel lattice, read off as gcds of k×k minors.
    fn rank_q(m: &Matrix) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let (rows, cols) = (m.rows(), m.cols());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
            a.swap(rank, p);
            let pivot = a[rank].clone();
            for (r, row) in a.iter_mut().enumerate() {
                if r != rank && !row[c].is_zero() {
                    let (x, y) = (pivot[c].clone(), row[c].clone());
                    for (v, w) in row.iter_mut().zip(&pivot) {
                        *v = &*v * &x - w * &y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn minors_gcd(m: &Matrix, k: usize) -> BigInt {
        fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for last in k - 1..n {
                for mut c in combos(last, k - 1) {
                    c.push(last);
                    out.push(c);
                }
            }
            out
        }
        fn det(a: &Matrix) -> BigInt {
            let n = a.rows();
            if n == 0 {
                return BigInt::one();
            }
            let mut s = BigInt::zero();
            for j in 0..n {
                if a[(0, j)].is_zero() {
                    continue;
                }
                let rows: Vec<usize> = (1..n).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
                let minor = a.select_rows(&rows).select_cols(&cols);
                let t = &a[(0, j)] * det(&minor);
                if j % 2 == 0 {
                    s += t
                } else {
                    s -= t
                }
            }
            s
        }
        let mut g = BigInt::zero();
        for r in combos(m.rows(), k) {
            for c in combos(m.cols(), k) {
                g = g.gcd(&det(&m.select_rows(&r).select_cols(&c)));
            }
        }
        g
    }

    /// Torsion of coker(d_in) equals torsion of H (kernel is saturated), and
    /// the elementary divisors of d_in are ratios of successive minor gcds.
    fn naive_torsion(d_in: &Matrix) -> Vec<BigInt> {
        let r = rank_q(d_in);
        let mut prev = BigInt::one();
        let mut out = Vec::new();
        for k in 1..=r {
            let g = minors_gcd(d_in, k);
            let e = &g / &prev;
            if !e.is_one() {
                out.push(e);
            }
            prev = g;
        }
        out
    }

    proptest! {
        #[test]
        fn agrees_with_naive_computation(
            a in proptest::collection::vec(-3i64..4, 6),
            mult in proptest::collection::vec(-3i64..4, 4),
        ) {
            // d_in: 3×2 random, d_out: a 2×3 matrix annihilating im(d_in) built
            // from a random row combination of a left-kernel basis.
            let d_in = Matrix::from_fn(3, 2, |i, j| BigInt::from(a[i * 2 + j]));
            let left = crate::snf::kernel_basis(&d_in.transpose()).transpose();
            let comb = Matrix::from_fn(2, left.rows(), |i, j| BigInt::from(mult[(i * 2 + j) % 4]));
            let d_out = comb.mul(&left);
            let h = homology_from(1, &d_out, &d_in).unwrap();
            let free = 3 - rank_q(&d_out) - rank_q(&d_in);
            prop_assert_eq!(h.group.free_rank, free);
            prop_assert_eq!(h.group.torsion.clone(), naive_torsion(&d_in));
        }
    }
}
