//! Finitely generated abelian groups in invariant-factor form, and
//! homomorphisms between them written on the canonical generators.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::snf::{smith, solve};
use crate::zmat::Matrix;

/// Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k with 1 < d_1 | d_2 | … | d_k.
///
/// Generators are ordered torsion first (ascending), then free.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FinGenAb {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl FinGenAb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FinGenAb { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(d: impl Into<BigInt>) -> Self {
        let d = d.into();
        if d.is_zero() {
            Self::free(1)
        } else if d.is_one() || d == -BigInt::one() {
            Self::zero()
        } else {
            FinGenAb { free_rank: 0, torsion: vec![num_traits::Signed::abs(&d)] }
        }
    }

    /// The group presented by a diagonal of orders (0 = Z), normalized.
    pub fn from_orders<I: IntoIterator<Item = BigInt>>(orders: I) -> Self {
        let orders: Vec<BigInt> = orders.into_iter().collect();
        let n = orders.len();
        let mut m = Matrix::zeros(n, n);
        for (i, d) in orders.into_iter().enumerate() {
            m[(i, i)] = d;
        }
        cokernel(&m)
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn num_gens(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    /// Order of each generator, 0 for free generators.
    pub fn moduli(&self) -> Vec<BigInt> {
        self.torsion.iter().cloned().chain(std::iter::repeat_n(BigInt::zero(), self.free_rank)).collect()
    }

    /// Relation matrix whose columns span the relations among the generators.
    pub fn relations(&self) -> Matrix {
        let g = self.num_gens();
        let mut m = Matrix::zeros(g, self.torsion.len());
        for (i, d) in self.torsion.iter().enumerate() {
            m[(i, i)] = d.clone();
        }
        m
    }

    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }
}

impl fmt::Display for FinGenAb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FinGenAbJson {
    rank: usize,
    torsion: Vec<serde_json::Value>,
}

impl Serialize for FinGenAb {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FinGenAbJson { rank: self.free_rank, torsion: self.torsion.iter().map(bigint_json).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FinGenAb {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FinGenAbJson::deserialize(d)?;
        let torsion = raw
            .torsion
            .iter()
            .map(|v| json_bigint(v).ok_or_else(|| serde::de::Error::custom("torsion entries must be integers")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(FinGenAb { free_rank: raw.rank, torsion })
    }
}

/// Integers that fit in i64 become JSON numbers, larger ones decimal strings.
pub fn bigint_json(x: &BigInt) -> serde_json::Value {
    match i64::try_from(x) {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::String(x.to_string()),
    }
}

pub fn json_bigint(v: &serde_json::Value) -> Option<BigInt> {
    match v {
        serde_json::Value::Number(n) => n.as_i64().map(BigInt::from),
        serde_json::Value::String(s) => s.parse().ok(),
        _ => None,
    }
}

/// Z^rows / column span of `m`.
pub fn cokernel(m: &Matrix) -> FinGenAb {
    let s = smith(m, false);
    FinGenAb {
        free_rank: m.rows() - s.rank,
        torsion: s.diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

/// span(S)/span(R) for column generators with span(R) ⊆ span(S).
pub fn subquotient(s_gens: &Matrix, r_gens: &Matrix) -> Result<FinGenAb> {
    assert_eq!(s_gens.rows(), r_gens.rows(), "subquotient ambient mismatch");
    let sm = smith(s_gens, true);
    let t = sm.transforms.as_ref().unwrap();
    let ur = t.u.mul(r_gens);
    let mut coords = Matrix::zeros(sm.rank, r_gens.cols());
    for j in 0..r_gens.cols() {
        for i in 0..ur.rows() {
            let c = &ur[(i, j)];
            if i < sm.rank {
                let (q, rem) = c.div_rem(&sm.diag[i]);
                if !rem.is_zero() {
                    return Err(Error::Validation("relation lattice is not contained in the generator lattice".into()));
                }
                coords[(i, j)] = q;
            } else if !c.is_zero() {
                return Err(Error::Validation("relation lattice is not contained in the generator lattice".into()));
            }
        }
    }
    Ok(cokernel(&coords))
}

/// A homomorphism src → dst written on the canonical generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    pub src: FinGenAb,
    pub dst: FinGenAb,
    pub matrix: Matrix,
}

impl Hom {
    pub fn new(src: FinGenAb, dst: FinGenAb, matrix: Matrix) -> Result<Self> {
        if matrix.rows() != dst.num_gens() || matrix.cols() != src.num_gens() {
            return Err(Error::Validation(format!(
                "homomorphism matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                dst.num_gens(),
                src.num_gens()
            )));
        }
        let mut h = Hom { src, dst, matrix };
        h.reduce();
        if !h.is_well_defined() {
            return Err(Error::Validation("matrix does not respect the torsion relations".into()));
        }
        Ok(h)
    }

    pub fn identity(g: &FinGenAb) -> Self {
        Hom { src: g.clone(), dst: g.clone(), matrix: Matrix::identity(g.num_gens()) }.reduced()
    }

    pub fn scalar(g: &FinGenAb, c: impl Into<BigInt>) -> Self {
        Hom { src: g.clone(), dst: g.clone(), matrix: Matrix::scalar(&c.into(), g.num_gens()) }.reduced()
    }

    fn reduced(mut self) -> Self {
        self.reduce();
        self
    }

    fn reduce(&mut self) {
        let moduli = self.dst.moduli();
        for (i, d) in moduli.iter().enumerate() {
            if d.is_zero() {
                continue;
            }
            for j in 0..self.matrix.cols() {
                let x = self.matrix[(i, j)].mod_floor(d);
                self.matrix[(i, j)] = x;
            }
        }
    }

    fn is_well_defined(&self) -> bool {
        let rel = self.matrix.mul(&self.src.relations());
        let moduli = self.dst.moduli();
        (0..rel.rows()).all(|i| (0..rel.cols()).all(|j| rel[(i, j)].is_zero() || (!moduli[i].is_zero() && rel[(i, j)].is_multiple_of(&moduli[i]))))
    }

    pub fn compose(&self, first: &Hom) -> Result<Hom> {
        if first.dst != self.src {
            return Err(Error::Validation("composition of incompatible homomorphisms".into()));
        }
        Ok(Hom { src: first.src.clone(), dst: self.dst.clone(), matrix: self.matrix.mul(&first.matrix) }.reduced())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    fn augmented(&self) -> Matrix {
        self.matrix.hstack(&self.dst.relations())
    }

    pub fn kernel(&self) -> FinGenAb {
        let na = self.src.num_gens();
        let aug = self.matrix.hstack(&self.dst.relations().neg());
        let k = crate::snf::kernel_basis(&aug);
        let idx: Vec<usize> = (0..na).collect();
        let kx = k.select_rows(&idx);
        subquotient(&kx, &self.src.relations()).expect("kernel contains the source relations")
    }

    pub fn image(&self) -> FinGenAb {
        subquotient(&self.augmented(), &self.dst.relations()).expect("image contains the target relations")
    }

    pub fn cokernel(&self) -> FinGenAb {
        cokernel(&self.augmented())
    }

    pub fn is_iso(&self) -> bool {
        self.kernel().is_zero() && self.cokernel().is_zero()
    }

    pub fn inverse(&self) -> Result<Hom> {
        if !self.is_iso() {
            return Err(Error::Validation("homomorphism is not invertible".into()));
        }
        let aug = self.augmented();
        let nb = self.dst.num_gens();
        let na = self.src.num_gens();
        let mut inv = Matrix::zeros(na, nb);
        for j in 0..nb {
            let e: Vec<BigInt> = (0..nb).map(|i| if i == j { BigInt::one() } else { BigInt::zero() }).collect();
            let x = solve(&aug, &e).ok_or_else(|| Error::Validation("no preimage for a generator".into()))?;
            for i in 0..na {
                inv[(i, j)] = x[i].clone();
            }
        }
        Ok(Hom { src: self.dst.clone(), dst: self.src.clone(), matrix: inv }.reduced())
    }

    /// Equality as homomorphisms, i.e. modulo the target relations.
    pub fn same_map(&self, other: &Hom) -> bool {
        self.src == other.src && self.dst == other.dst && self.matrix == other.matrix
    }

    /// Isomorphism types of source, target, kernel, image and cokernel agree.
    pub fn equivalent_up_to_basis(&self, other: &Hom) -> bool {
        self.src == other.src
            && self.dst == other.dst
            && self.kernel() == other.kernel()
            && self.image() == other.image()
            && self.cokernel() == other.cokernel()
    }

    /// Short text form: "×c" for maps between cyclic groups, else the matrix.
    pub fn describe(&self) -> String {
        if self.matrix.rows() == 1 && self.matrix.cols() == 1 {
            format!("×{}", self.matrix[(0, 0)])
        } else if self.matrix.rows() == 0 || self.matrix.cols() == 0 {
            "0".to_string()
        } else {
            format!("{:?}", self.matrix).split(" (").next().unwrap_or_default().to_string()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn normal_form_from_orders() {
        let g = FinGenAb::from_orders([b(6), b(4), b(0), b(1)]);
        assert_eq!(g, FinGenAb { free_rank: 1, torsion: vec![b(2), b(12)] });
        assert_eq!(g.to_string(), "Z ⊕ Z/2 ⊕ Z/12");
        assert_eq!(FinGenAb::zero().to_string(), "0");
    }

    #[test]
    fn subquotient_of_lattices() {
        let s = Matrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        let r = Matrix::from_rows(&[vec![6], vec![0]]);
        assert_eq!(subquotient(&s, &r).unwrap(), FinGenAb { free_rank: 1, torsion: vec![b(3)] });
        let bad = Matrix::from_rows(&[vec![1], vec![0]]);
        assert!(subquotient(&s, &bad).is_err());
    }

    #[test]
    fn hom_invariants() {
        let z = FinGenAb::free(1);
        let z9 = FinGenAb::cyclic(9);
        let h = Hom::new(z.clone(), z9.clone(), Matrix::from_rows(&[vec![3]])).unwrap();
        assert_eq!(h.image(), FinGenAb::cyclic(3));
        assert_eq!(h.cokernel(), FinGenAb::cyclic(3));
        assert_eq!(h.kernel(), FinGenAb::free(1));
        let h2 = Hom::new(z, z9, Matrix::from_rows(&[vec![6]])).unwrap();
        assert!(h.equivalent_up_to_basis(&h2));
        assert!(!h.same_map(&h2));
        assert!(Hom::new(FinGenAb::cyclic(3), FinGenAb::free(1), Matrix::from_rows(&[vec![1]])).is_err());
    }

    #[test]
    fn inverse_of_unit_multiple() {
        let g = FinGenAb::cyclic(9);
        let h = Hom::scalar(&g, 2);
        let inv = h.inverse().unwrap();
        assert!(inv.compose(&h).unwrap().same_map(&Hom::identity(&g)));
        assert!(Hom::scalar(&g, 3).inverse().is_err());
    }

    #[test]
    fn json_shape() {
        let g = FinGenAb { free_rank: 1, torsion: vec![b(3)] };
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v, serde_json::json!({"rank": 1, "torsion": [3]}));
        let back: FinGenAb = serde_json::from_value(v).unwrap();
        assert_eq!(back, g);
    }
}
