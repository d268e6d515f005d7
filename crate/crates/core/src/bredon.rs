//! Brute-force Bredon cohomology of representation spheres with constant Z
//! coefficients, as cellular cohomology of orbit spaces.
//!
//! S^V is built as a smash product of the one-dimensional pieces: S^{ρ_triv}
//! has a single reduced cell in degree 1, and S^{ρ_j} has reduced cells
//! e_m (degree 2), f_m (degree 1) for m ∈ Z/p^{n−k(j)} and one cell in
//! degree 0, with ∂e_m = f_m − f_{m+1}, ∂f_m = pt and σ acting by m ↦ m + γ(j).

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::abelian::{FinGenAb, Hom};
use crate::complexes::{ChainMap, Complex, Integers, ZChainMap, ZComplex};
use crate::error::{Error, Result};
use crate::homology::{homology_at, homology_from, induced_between};
use crate::picard::{checked_pow, vp_split, VirtualRep};
use crate::zmat::Matrix;

/// A finite complex of permutation modules: in each degree a set of cells
/// permuted by the generator σ, each with stabilizer C_{p^k}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqCellComplex {
    pub p: u64,
    pub n: u32,
    /// sigma[d][c]: the cell σ·c.
    pub sigma: Vec<Vec<usize>>,
    /// stab[d][c]: exponent k of the stabilizer C_{p^k} of c.
    pub stab: Vec<Vec<u32>>,
    /// diff[d]: C_d → C_{d−1}; diff[0] has no rows.
    pub diff: Vec<Matrix>,
}

impl EqCellComplex {
    pub fn top_degree(&self) -> usize {
        self.sigma.len() - 1
    }

    pub fn cells(&self, d: usize) -> usize {
        self.sigma.get(d).map_or(0, Vec::len)
    }

    /// S⁰: one fixed cell in degree 0.
    pub fn s0(p: u64, n: u32) -> Self {
        EqCellComplex { p, n, sigma: vec![vec![0]], stab: vec![vec![n]], diff: vec![Matrix::zeros(0, 1)] }
    }

    fn trivial_circle(p: u64, n: u32) -> Self {
        EqCellComplex { p, n, sigma: vec![vec![], vec![0]], stab: vec![vec![], vec![n]], diff: vec![Matrix::zeros(0, 0), Matrix::zeros(0, 1)] }
    }

    fn rotation_sphere(p: u64, n: u32, j: u64) -> Result<Self> {
        let (k, g) = vp_split(j, p, n)?;
        let m = checked_pow(p, n - k)? as usize;
        let g = g as usize;
        let rot: Vec<usize> = (0..m).map(|x| (x + g) % m).collect();
        let d2 = Matrix::from_fn(m, m, |r, c| {
            let mut x = 0i64;
            if r == c {
                x += 1;
            }
            if r == (c + 1) % m {
                x -= 1;
            }
            BigInt::from(x)
        });
        let d1 = Matrix::from_fn(1, m, |_, _| BigInt::from(1));
        Ok(EqCellComplex {
            p,
            n,
            sigma: vec![vec![0], rot.clone(), rot],
            stab: vec![vec![n], vec![k; m], vec![k; m]],
            diff: vec![Matrix::zeros(0, 1), d1, d2],
        })
    }

    /// X ∧ Y, with d(x⊗y) = dx⊗y + (−1)^{|x|} x⊗dy and diagonal action.
    pub fn smash(&self, other: &EqCellComplex) -> EqCellComplex {
        let top = self.top_degree() + other.top_degree();
        // index[d1][x][y] inside total degree d1 + d2
        let mut layout: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); top + 1];
        for d1 in 0..=self.top_degree() {
            for d2 in 0..=other.top_degree() {
                for x in 0..self.cells(d1) {
                    for y in 0..other.cells(d2) {
                        layout[d1 + d2].push((d1, x, y));
                    }
                }
            }
        }
        let pos = |d: usize, d1: usize, x: usize, y: usize| -> usize {
            layout[d].iter().position(|&t| t == (d1, x, y)).expect("cell exists")
        };
        let mut sigma = Vec::new();
        let mut stab = Vec::new();
        let mut diff = Vec::new();
        for d in 0..=top {
            sigma.push(layout[d].iter().map(|&(d1, x, y)| pos(d, d1, self.sigma[d1][x], other.sigma[d - d1][y])).collect());
            stab.push(layout[d].iter().map(|&(d1, x, y)| self.stab[d1][x].min(other.stab[d - d1][y])).collect());
            let rows = if d == 0 { 0 } else { layout[d - 1].len() };
            let mut m = Matrix::zeros(rows, layout[d].len());
            if d > 0 {
                for (c, &(d1, x, y)) in layout[d].iter().enumerate() {
                    let d2 = d - d1;
                    if d1 > 0 {
                        let dx = &self.diff[d1];
                        for x2 in 0..dx.rows() {
                            if !dx[(x2, x)].is_zero_ref() {
                                let r = pos(d - 1, d1 - 1, x2, y);
                                m[(r, c)] += &dx[(x2, x)];
                            }
                        }
                    }
                    if d2 > 0 {
                        let dy = &other.diff[d2];
                        let s = if d1 % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                        for y2 in 0..dy.rows() {
                            if !dy[(y2, y)].is_zero_ref() {
                                let r = pos(d - 1, d1, x, y2);
                                m[(r, c)] += &s * &dy[(y2, y)];
                            }
                        }
                    }
                }
            }
            diff.push(m);
        }
        EqCellComplex { p: self.p, n: self.n, sigma, stab, diff }
    }

    /// The reduced complex over Z, in degrees 0..=top.
    pub fn underlying(&self) -> ZComplex {
        chain_complex(self.sigma.iter().map(Vec::len).collect(), self.diff.clone())
    }

    /// The subcomplex of cells fixed by C_{p^a}.
    pub fn fixed_subcomplex(&self, a: u32) -> ZComplex {
        let keep: Vec<Vec<usize>> = self.stab.iter().map(|s| (0..s.len()).filter(|&c| s[c] >= a).collect()).collect();
        let diffs = (0..self.sigma.len())
            .map(|d| {
                let rows: Vec<usize> = if d == 0 { vec![] } else { keep[d - 1].clone() };
                self.diff[d].select_rows(&rows).select_cols(&keep[d])
            })
            .collect();
        chain_complex(keep.iter().map(Vec::len).collect(), diffs)
    }

    /// Orbits of g = σ^{p^{n−a}} on the cells of degree d, each as a sorted list.
    pub fn orbits(&self, a: u32, d: usize) -> Vec<Vec<usize>> {
        let step = self.p.pow(self.n - a) as usize;
        let perm = &self.sigma[d];
        let g = |mut c: usize| {
            for _ in 0..step {
                c = perm[c];
            }
            c
        };
        let mut seen = vec![false; perm.len()];
        let mut out = Vec::new();
        for c in 0..perm.len() {
            if seen[c] {
                continue;
            }
            let mut orbit = vec![c];
            seen[c] = true;
            let mut x = g(c);
            while x != c {
                seen[x] = true;
                orbit.push(x);
                x = g(x);
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    fn orbit_index(&self, a: u32, d: usize) -> (usize, Vec<usize>) {
        let orbits = self.orbits(a, d);
        let mut idx = vec![0; self.cells(d)];
        for (o, cells) in orbits.iter().enumerate() {
            for &c in cells {
                idx[c] = o;
            }
        }
        (orbits.len(), idx)
    }

    /// Differential of the C_{p^a}-coinvariants: orbits_d → orbits_{d−1}.
    fn coinvariant_diff(&self, a: u32, d: usize) -> Matrix {
        let (cols, _) = self.orbit_index(a, d);
        if d == 0 {
            return Matrix::zeros(0, cols);
        }
        let orbits = self.orbits(a, d);
        let (rows, lower) = self.orbit_index(a, d - 1);
        let mut m = Matrix::zeros(rows, cols);
        for (o, cells) in orbits.iter().enumerate() {
            let c = cells[0];
            for r in 0..self.diff[d].rows() {
                let x = &self.diff[d][(r, c)];
                if !x.is_zero_ref() {
                    m[(lower[r], o)] += x;
                }
            }
        }
        m
    }

    /// Cochains of the orbit space X/C_{p^a}: D_{−i} = Z^{orbits_i}.
    pub fn orbit_cochains(&self, a: u32) -> ZComplex {
        let top = self.top_degree() as i64;
        let ranks: Vec<usize> = (0..=self.top_degree()).map(|d| self.orbits(a, d).len()).collect();
        let diffs: Vec<Matrix> = (0..=self.top_degree() + 1)
            .map(|d| if d <= self.top_degree() { self.coinvariant_diff(a, d).transpose() } else { Matrix::zeros(0, 0) })
            .collect();
        let r2 = ranks.clone();
        Complex::new(
            Integers,
            move |k| if (-top..=0).contains(&k) { r2[(-k) as usize] } else { 0 },
            move |k| {
                // out of degree −i: (d̄_{i+1})^T
                let i = -k;
                if (0..top).contains(&i) {
                    diffs[(i + 1) as usize].clone()
                } else {
                    Matrix::zeros(0, 0)
                }
            },
        )
        .with_bounds(Some(-top), Some(0))
    }
}

trait ZeroRef {
    fn is_zero_ref(&self) -> bool;
}

impl ZeroRef for BigInt {
    fn is_zero_ref(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

fn chain_complex(ranks: Vec<usize>, diffs: Vec<Matrix>) -> ZComplex {
    let top = ranks.len() as i64 - 1;
    let r2 = ranks.clone();
    Complex::new(
        Integers,
        move |d| if (0..=top).contains(&d) { r2[d as usize] } else { 0 },
        move |d| if (1..=top).contains(&d) { diffs[d as usize].clone() } else { Matrix::zeros(0, 0) },
    )
    .with_bounds(Some(0), Some(top))
}

/// The reduced cellular complex of S^V for an actual representation V.
pub fn rep_sphere_chains(p: u64, n: u32, v: &VirtualRep) -> Result<EqCellComplex> {
    if !v.is_actual() {
        return Err(Error::InvalidArgument(format!("{v} has a negative multiplicity")));
    }
    checked_pow(p, n)?;
    let mut x = EqCellComplex::s0(p, n);
    for _ in 0..v.m_triv {
        x = x.smash(&EqCellComplex::trivial_circle(p, n));
    }
    for (&j, &m) in &v.m {
        let piece = EqCellComplex::rotation_sphere(p, n, j)?;
        for _ in 0..m {
            x = x.smash(&piece);
        }
    }
    Ok(x)
}

/// H̃^i of the orbit space S^V / C_{p^a}.
pub fn orbit_cohomology(p: u64, n: u32, a: u32, v: &VirtualRep, i: i64) -> Result<FinGenAb> {
    let x = rep_sphere_chains(p, n, v)?;
    check_level(&x, a)?;
    Ok(homology_at(&x.orbit_cochains(a), -i)?.group)
}

fn check_level(x: &EqCellComplex, a: u32) -> Result<()> {
    if a > x.n {
        return Err(Error::InvalidArgument(format!("level {a} exceeds n = {}", x.n)));
    }
    Ok(())
}

/// Pullback along X/C_{p^a} → X/C_{p^{a+1}} on cochains.
pub fn orbit_inclusion_map(x: &EqCellComplex, a: u32) -> Result<ZChainMap> {
    check_level(x, a + 1)?;
    let src = x.orbit_cochains(a + 1);
    let dst = x.orbit_cochains(a);
    let mut mats = Vec::new();
    for d in 0..=x.top_degree() {
        let (upper_count, upper) = x.orbit_index(a + 1, d);
        let lower_orbits = x.orbits(a, d);
        // P^T: rows orbits at level a, cols orbits at level a+1
        let m = Matrix::from_fn(lower_orbits.len(), upper_count, |r, c| BigInt::from(u8::from(upper[lower_orbits[r][0]] == c)));
        mats.push(m);
    }
    Ok(ChainMap::new(src, dst, move |k| mats[(-k) as usize].clone()))
}

/// The inclusion (restriction) H̃^i(S^V/C_{p^{a+1}}) → H̃^i(S^V/C_{p^a}).
pub fn oracle_inclusion(p: u64, n: u32, a: u32, v: &VirtualRep, i: i64) -> Result<Hom> {
    let x = rep_sphere_chains(p, n, v)?;
    let f = orbit_inclusion_map(&x, a)?;
    let k = -i;
    let hs = homology_from(k, &f.source.diff(k), &f.source.diff(k + 1))?;
    let ht = homology_from(k, &f.target.diff(k), &f.target.diff(k + 1))?;
    induced_between(&f, &hs, &ht)
}

/// Oracle values and inclusions over a degree window, levels 0..=n.
pub struct OracleTable {
    pub values: Vec<Vec<(i64, FinGenAb)>>,
    pub inc: Vec<Vec<(i64, Hom)>>,
}

pub fn oracle_table(p: u64, n: u32, v: &VirtualRep, window: (i64, i64)) -> Result<OracleTable> {
    let x = rep_sphere_chains(p, n, v)?;
    let degs: Vec<i64> = (window.0..=window.1).collect();
    let values = (0..=n)
        .into_par_iter()
        .map(|a| {
            let c = x.orbit_cochains(a);
            degs.iter().map(|&i| Ok((i, homology_at(&c, -i)?.group))).collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let inc = (0..n)
        .into_par_iter()
        .map(|a| {
            let f = orbit_inclusion_map(&x, a)?;
            degs.iter()
                .map(|&i| {
                    let hs = homology_at(&f.source, -i)?;
                    let ht = homology_at(&f.target, -i)?;
                    Ok((i, induced_between(&f, &hs, &ht)?))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleTable { values, inc })
}

/// Underlying and fixed-point sphere checks for an actual representation.
pub fn check_sphere(p: u64, n: u32, v: &VirtualRep) -> Result<()> {
    let x = rep_sphere_chains(p, n, v)?;
    for d in 0..=x.top_degree() {
        for c in 0..x.cells(d) {
            if x.stab[d][c] > n {
                return Err(Error::Validation("stabilizer exponent exceeds n".into()));
            }
        }
        let sigma = Matrix::from_fn(x.cells(d), x.cells(d), |r, c| BigInt::from(u8::from(x.sigma[d][c] == r)));
        if d > 0 {
            let sigma_low = Matrix::from_fn(x.cells(d - 1), x.cells(d - 1), |r, c| BigInt::from(u8::from(x.sigma[d - 1][c] == r)));
            if x.diff[d].mul(&sigma) != sigma_low.mul(&x.diff[d]) {
                return Err(Error::Validation(format!("differential out of degree {d} is not equivariant")));
            }
        }
    }
    for a in 0..=n {
        let fixed = x.fixed_subcomplex(a);
        let dim = v.m_triv + 2 * v.m.iter().filter(|(&j, _)| vp_split(j, p, n).map(|s| s.0 >= a).unwrap_or(false)).map(|(_, m)| m).sum::<i64>();
        for k in -1..=x.top_degree() as i64 + 1 {
            let h = homology_at(&fixed, k)?.group;
            let want = if k == dim { FinGenAb::free(1) } else { FinGenAb::zero() };
            if h != want {
                return Err(Error::Validation(format!("C_{p}^{a}-fixed points of S^({v}) have H_{k} = {h}, expected {want}")));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(s: &str) -> VirtualRep {
        s.parse().unwrap()
    }

    #[test]
    fn small_sphere_shapes() {
        let x = rep_sphere_chains(3, 1, &rep("triv")).unwrap();
        assert_eq!((x.top_degree(), x.cells(0), x.cells(1)), (1, 0, 1));
        let y = rep_sphere_chains(3, 1, &rep("rho(1)")).unwrap();
        assert_eq!((y.cells(2), y.cells(1), y.cells(0)), (3, 3, 1));
        assert_eq!(y.diff[2].col(0), vec![BigInt::from(1), BigInt::from(-1), BigInt::from(0)]);
        let z = rep_sphere_chains(3, 2, &rep("rho(3)")).unwrap();
        assert_eq!(z.cells(2), 3);
        assert_eq!(z.stab[2], vec![1, 1, 1]);
        assert!(rep_sphere_chains(3, 1, &rep("rho(1)*-1")).is_err());
    }

    #[test]
    fn sphere_checks() {
        for v in ["0", "triv", "rho(1)", "rho(3)", "rho(1), rho(3)", "rho(1)*2", "triv, rho(1)", "rho(2), rho(6)"] {
            check_sphere(3, 2, &rep(v)).unwrap();
        }
        check_sphere(5, 1, &rep("rho(2)*2, triv")).unwrap();
    }

    #[test]
    fn orbit_spaces() {
        for a in 0..=2 {
            for i in 0..=3 {
                let g = orbit_cohomology(3, 2, a, &rep("triv"), i).unwrap();
                assert_eq!(g, if i == 1 { FinGenAb::free(1) } else { FinGenAb::zero() });
            }
        }
        for a in 0..=1 {
            for i in 0..=4 {
                let g = orbit_cohomology(3, 1, a, &rep("rho(1)"), i).unwrap();
                assert_eq!(g, if i == 2 { FinGenAb::free(1) } else { FinGenAb::zero() });
            }
        }
        assert_eq!(orbit_cohomology(3, 1, 0, &rep("0"), 0).unwrap(), FinGenAb::free(1));
    }

    #[test]
    fn oracle_inclusions() {
        let h = oracle_inclusion(3, 2, 0, &rep("triv"), 1).unwrap();
        assert!(h.is_iso());
        let h = oracle_inclusion(3, 1, 0, &rep("0"), 0).unwrap();
        assert!(h.is_iso());
        let h = oracle_inclusion(3, 1, 0, &rep("rho(1)"), 2).unwrap();
        assert_eq!(h.src, FinGenAb::free(1));
        assert_eq!(h.matrix[(0, 0)].clone() * h.matrix[(0, 0)].clone(), BigInt::from(9));
        assert!(oracle_inclusion(3, 1, 1, &rep("triv"), 1).is_err());
    }

    #[test]
    fn oracle_table_matches_single_calls() {
        let v = rep("rho(1), triv");
        let t = oracle_table(3, 1, &v, (0, 4)).unwrap();
        for a in 0..=1u32 {
            for (i, g) in &t.values[a as usize] {
                assert_eq!(*g, orbit_cohomology(3, 1, a, &v, *i).unwrap());
            }
        }
        for (i, h) in &t.inc[0] {
            assert!(h.same_map(&oracle_inclusion(3, 1, 0, &v, *i).unwrap()));
        }
    }
}
