//! The Picard group of genuine C_{p^n}-Z-modules and the map from virtual
//! representations.
//!
//! A [`PicCoord`] is a pair (β⃗, γ⃗) with β⃗ ∈ Z^{n+1} and γ_s a unit of
//! Z/p^{n−s+1}. Two coordinates present the same Picard element exactly when
//! they agree after replacing each γ_s by ±γ_s.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::FinGenAb;
use crate::error::{Error, Result};
use crate::groupring::is_prime;

/// p^k, or an error when it does not fit in a u64.
pub fn checked_pow(p: u64, k: u32) -> Result<u64> {
    p.checked_pow(k).ok_or_else(|| Error::InvalidArgument(format!("{p}^{k} overflows")))
}

fn check_odd_prime(p: u64, n: u32) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    checked_pow(p, n)?;
    Ok(())
}

/// The modulus p^{n−s+1} of the slot γ_s.
pub fn slot_modulus(p: u64, n: u32, s: usize) -> u64 {
    p.pow(n + 1 - s as u32)
}

fn inverse_mod(x: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let e = (x as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

fn mul_mod(x: u64, y: u64, m: u64) -> u64 {
    ((x as u128 * y as u128) % m as u128) as u64
}

/// Euler's totient of p^k.
pub fn phi_prime_power(p: u64, k: u32) -> u64 {
    if k == 0 {
        1
    } else {
        p.pow(k - 1) * (p - 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PicCoord {
    pub p: u64,
    pub n: u32,
    pub beta: Vec<i64>,
    /// γ_1, …, γ_n as least nonnegative residues.
    pub gamma: Vec<u64>,
}

impl PicCoord {
    pub fn new(p: u64, n: u32, beta: Vec<i64>, gamma: Vec<u64>) -> Result<Self> {
        check_odd_prime(p, n)?;
        if beta.len() != n as usize + 1 || gamma.len() != n as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} β-entries and {} γ-entries, got {} and {}",
                n + 1,
                n,
                beta.len(),
                gamma.len()
            )));
        }
        let mut reduced = Vec::with_capacity(gamma.len());
        for (idx, g) in gamma.into_iter().enumerate() {
            let m = slot_modulus(p, n, idx + 1);
            let g = g % m;
            if g.is_multiple_of(p) {
                return Err(Error::InvalidArgument(format!("γ_{} = {g} is not a unit mod {m}", idx + 1)));
            }
            reduced.push(g);
        }
        Ok(PicCoord { p, n, beta, gamma: reduced })
    }

    /// The tensor unit (β⃗ = 0, γ⃗ = 1⃗).
    pub fn unit(p: u64, n: u32) -> Result<Self> {
        Self::new(p, n, vec![0; n as usize + 1], vec![1; n as usize])
    }

    /// The element with β₀ = k and all else trivial, presenting Σ^k of the unit.
    pub fn suspension(p: u64, n: u32, k: i64) -> Result<Self> {
        let mut beta = vec![0; n as usize + 1];
        beta[0] = k;
        Self::new(p, n, beta, vec![1; n as usize])
    }

    /// β_{≤s} = β₀ + 2(β₁ + ⋯ + β_s).
    pub fn beta_le(&self, s: usize) -> i64 {
        self.beta[0] + 2 * self.beta[1..=s].iter().sum::<i64>()
    }

    pub fn is_unit(&self) -> bool {
        self.beta.iter().all(|&b| b == 0) && self.reduce().gamma.iter().all(|&g| g == 1)
    }

    fn check_same(&self, other: &PicCoord) -> Result<()> {
        if self.p != other.p || self.n != other.n {
            return Err(Error::ContextMismatch(format!("(p,n) = ({},{}) vs ({},{})", self.p, self.n, other.p, other.n)));
        }
        Ok(())
    }

    pub fn add(&self, other: &PicCoord) -> Result<PicCoord> {
        self.check_same(other)?;
        let beta = self.beta.iter().zip(&other.beta).map(|(a, b)| a + b).collect();
        let gamma = (0..self.gamma.len())
            .map(|i| mul_mod(self.gamma[i], other.gamma[i], slot_modulus(self.p, self.n, i + 1)))
            .collect();
        Ok(PicCoord { p: self.p, n: self.n, beta, gamma })
    }

    pub fn neg(&self) -> PicCoord {
        let beta = self.beta.iter().map(|b| -b).collect();
        let gamma = (0..self.gamma.len())
            .map(|i| inverse_mod(self.gamma[i], slot_modulus(self.p, self.n, i + 1)).expect("γ is a unit"))
            .collect();
        PicCoord { p: self.p, n: self.n, beta, gamma }
    }

    /// Integer multiple k·a in the group law.
    pub fn times(&self, k: i64) -> PicCoord {
        let base = if k < 0 { self.neg() } else { self.clone() };
        let mut acc = PicCoord::unit(self.p, self.n).expect("valid (p,n)");
        for _ in 0..k.unsigned_abs() {
            acc = acc.add(&base).expect("same (p,n)");
        }
        acc
    }

    /// Canonical representative: each γ_s replaced by the smaller of γ_s and p^{n−s+1} − γ_s.
    pub fn reduce(&self) -> PicCoord {
        let gamma = (0..self.gamma.len())
            .map(|i| {
                let m = slot_modulus(self.p, self.n, i + 1);
                let g = self.gamma[i] % m;
                g.min((m - g) % m)
            })
            .collect();
        PicCoord { p: self.p, n: self.n, beta: self.beta.clone(), gamma }
    }

    /// Whether the two coordinates present the same Picard element.
    pub fn same_element(&self, other: &PicCoord) -> bool {
        self.p == other.p && self.n == other.n && self.reduce() == other.reduce()
    }

    /// Parses the text form "b0,…,bn;g1,…,gn".
    pub fn parse(p: u64, n: u32, text: &str) -> Result<PicCoord> {
        let (b, g) = text.split_once(';').unwrap_or((text, ""));
        let list = |s: &str| -> Result<Vec<i64>> {
            s.split(',')
                .map(str::trim)
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<i64>().map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
                .collect()
        };
        let beta = list(b)?;
        let gamma = list(g)?
            .into_iter()
            .enumerate()
            .map(|(i, x)| {
                if i >= n as usize {
                    return Ok(0);
                }
                Ok(x.rem_euclid(slot_modulus(p, n, i + 1) as i64) as u64)
            })
            .collect::<Result<Vec<_>>>()?;
        PicCoord::new(p, n, beta, gamma)
    }
}

impl fmt::Display for PicCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<String> = self.beta.iter().map(|x| x.to_string()).collect();
        let g: Vec<String> = self.gamma.iter().map(|x| x.to_string()).collect();
        write!(f, "{};{}", b.join(","), g.join(","))
    }
}

/// (k, γ) with j = p^k·γ and p ∤ γ, γ read as a unit of Z/p^{n−k}.
pub fn vp_split(j: u64, p: u64, n: u32) -> Result<(u32, u64)> {
    let top = checked_pow(p, n)?;
    if j == 0 || j >= top {
        return Err(Error::InvalidArgument(format!("ρ_{j} needs 1 ≤ j < {top}")));
    }
    let (mut k, mut g) = (0, j);
    while g % p == 0 {
        g /= p;
        k += 1;
    }
    Ok((k, g))
}

/// A virtual representation m_triv·ρ_triv + Σ m_j·ρ_j.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualRep {
    pub m_triv: i64,
    pub m: BTreeMap<u64, i64>,
}

impl VirtualRep {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn triv(m: i64) -> Self {
        VirtualRep { m_triv: m, m: BTreeMap::new() }
    }

    pub fn rho(j: u64, m: i64) -> Self {
        let mut v = VirtualRep::zero();
        v.m.insert(j, m);
        v.normalize()
    }

    fn normalize(mut self) -> Self {
        self.m.retain(|_, m| *m != 0);
        self
    }

    pub fn sum(&self, other: &VirtualRep) -> VirtualRep {
        let mut out = self.clone();
        out.m_triv += other.m_triv;
        for (&j, &m) in &other.m {
            *out.m.entry(j).or_insert(0) += m;
        }
        out.normalize()
    }

    pub fn negate(&self) -> VirtualRep {
        VirtualRep { m_triv: -self.m_triv, m: self.m.iter().map(|(&j, &m)| (j, -m)).collect() }
    }

    pub fn is_actual(&self) -> bool {
        self.m_triv >= 0 && self.m.values().all(|&m| m >= 0)
    }

    /// Real dimension m_triv + 2Σ m_j.
    pub fn dim(&self) -> i64 {
        self.m_triv + 2 * self.m.values().sum::<i64>()
    }
}

impl FromStr for VirtualRep {
    type Err = Error;

    /// Grammar: comma-separated terms `triv[*m]` or `rho(j)[*m]`; "0" or "" is the zero representation.
    fn from_str(s: &str) -> Result<Self> {
        let mut v = VirtualRep::zero();
        for term in s.split(',').map(str::trim).filter(|t| !t.is_empty() && *t != "0") {
            let (name, mult) = match term.split_once('*') {
                Some((a, b)) => {
                    let m = b.trim().parse::<i64>().map_err(|e| Error::Parse(format!("multiplicity in {term:?}: {e}")))?;
                    (a.trim(), m)
                }
                None => (term, 1),
            };
            if name == "triv" {
                v.m_triv += mult;
            } else if let Some(inner) = name.strip_prefix("rho(").and_then(|r| r.strip_suffix(')')) {
                let j = inner.trim().parse::<u64>().map_err(|e| Error::Parse(format!("index in {term:?}: {e}")))?;
                *v.m.entry(j).or_insert(0) += mult;
            } else {
                return Err(Error::Parse(format!("unrecognized term {term:?}")));
            }
        }
        Ok(v.normalize())
    }
}

impl fmt::Display for VirtualRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        if self.m_triv != 0 {
            terms.push(format!("triv*{}", self.m_triv));
        }
        for (j, m) in &self.m {
            terms.push(format!("rho({j})*{m}"));
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(", "))
        }
    }
}

/// ρ_triv ↦ (β₀ = 1), ρ_j ↦ (β₀ = 2, β_{k(j)+1} = −1, γ_{k(j)+1} = γ(j)).
pub fn rep_to_pic(p: u64, n: u32, v: &VirtualRep) -> Result<PicCoord> {
    check_odd_prime(p, n)?;
    let mut acc = PicCoord::suspension(p, n, v.m_triv)?;
    for (&j, &m) in &v.m {
        let (k, g) = vp_split(j, p, n)?;
        let mut beta = vec![0; n as usize + 1];
        beta[0] = 2;
        beta[k as usize + 1] = -1;
        let mut gamma = vec![1; n as usize];
        gamma[k as usize] = g;
        acc = acc.add(&PicCoord::new(p, n, beta, gamma)?.times(m))?;
    }
    Ok(acc)
}

pub fn pic_add(a: &PicCoord, b: &PicCoord) -> Result<PicCoord> {
    a.add(b)
}

pub fn pic_neg(a: &PicCoord) -> PicCoord {
    a.neg()
}

pub fn reduce_to_p(a: &PicCoord) -> PicCoord {
    a.reduce()
}

/// An element (α⃗, γ⃗) of the monoid of gluing data: γ_s ∈ Z/p^{n−s+1} arbitrary,
/// but γ_s = 0 whenever α_s is odd.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidElt {
    pub p: u64,
    pub n: u32,
    pub alpha: Vec<i64>,
    pub gamma: Vec<u64>,
}

impl MonoidElt {
    pub fn new(p: u64, n: u32, alpha: Vec<i64>, gamma: Vec<u64>) -> Result<Self> {
        check_odd_prime(p, n)?;
        if alpha.len() != n as usize + 1 || gamma.len() != n as usize {
            return Err(Error::InvalidArgument("wrong number of α or γ entries".into()));
        }
        let gamma: Vec<u64> = gamma.iter().enumerate().map(|(i, g)| g % slot_modulus(p, n, i + 1)).collect();
        for s in 1..=n as usize {
            if alpha[s].rem_euclid(2) == 1 && gamma[s - 1] != 0 {
                return Err(Error::InvalidArgument(format!("α_{s} is odd but γ_{s} ≠ 0")));
            }
        }
        Ok(MonoidElt { p, n, alpha, gamma })
    }

    pub fn add(&self, other: &MonoidElt) -> Result<MonoidElt> {
        if self.p != other.p || self.n != other.n {
            return Err(Error::ContextMismatch("monoid elements over different (p,n)".into()));
        }
        let alpha = self.alpha.iter().zip(&other.alpha).map(|(a, b)| a + b).collect();
        let gamma = (0..self.gamma.len())
            .map(|i| mul_mod(self.gamma[i], other.gamma[i], slot_modulus(self.p, self.n, i + 1)))
            .collect();
        MonoidElt::new(self.p, self.n, alpha, gamma)
    }

    pub fn is_invertible(&self) -> bool {
        (1..=self.n as usize).all(|s| self.alpha[s] % 2 == 0 && !self.gamma[s - 1].is_multiple_of(self.p))
    }

    /// The Picard coordinate of an invertible element (β₀ = α₀, β_s = α_s/2).
    pub fn to_pic(&self) -> Option<PicCoord> {
        if !self.is_invertible() {
            return None;
        }
        let mut beta = vec![self.alpha[0]];
        beta.extend(self.alpha[1..].iter().map(|a| a / 2));
        PicCoord::new(self.p, self.n, beta, self.gamma.clone()).ok()
    }

    pub fn from_pic(c: &PicCoord) -> MonoidElt {
        let mut alpha = vec![c.beta[0]];
        alpha.extend(c.beta[1..].iter().map(|b| 2 * b));
        MonoidElt { p: c.p, n: c.n, alpha, gamma: c.gamma.clone() }
    }
}

/// Invariant-factor structure of Pic: Z^{n+1} ⊕ ⊕_s (Z/p^{n−s+1})^×/{±1}.
pub fn pic_structure(p: u64, n: u32) -> Result<FinGenAb> {
    check_odd_prime(p, n)?;
    let orders = (1..=n).map(|s| phi_prime_power(p, n - s + 1) / 2).filter(|&o| o > 1).map(num_bigint::BigInt::from);
    let torsion = FinGenAb::from_orders(orders);
    Ok(FinGenAb { free_rank: n as usize + 1, torsion: torsion.torsion })
}

/// Human-readable description, e.g. "Z^2 ⊕ (Z/3)^×/{±1} ≅ Z^2".
pub fn pic_structure_string(p: u64, n: u32) -> Result<String> {
    let structure = pic_structure(p, n)?;
    let mut parts = vec![if n == 0 { "Z".to_string() } else { format!("Z^{}", n + 1) }];
    for s in 1..=n {
        parts.push(format!("(Z/{})^×/{{±1}}", slot_modulus(p, n, s as usize)));
    }
    Ok(format!("{} ≅ {}", parts.join(" ⊕ "), structure))
}

/// Size of (Z/m)^×/{±1}, counted through the canonical representatives.
pub fn count_unit_classes(p: u64, m: u64) -> usize {
    let mut reps: Vec<u64> = (1..m)
        .filter(|g| g % p != 0)
        .map(|g| g.min(m - g))
        .collect();
    reps.sort_unstable();
    reps.dedup();
    reps.len()
}
