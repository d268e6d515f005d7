//! Finite permutation groups and the coset combinatorics indexing the summands
//! of gluing functors: C(H,K), its double cosets and the induced-orbit
//! decomposition, all by exhaustive enumeration.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::abelian::FinGenAb;
use crate::error::{Error, Result};

pub const DEFAULT_MAX_ORDER: usize = 200;

pub type Perm = Vec<usize>;

/// A subgroup as a sorted list of element indices.
pub type Subgroup = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a·b)(x) = a(b(x))
    b.iter().map(|&x| a[x]).collect()
}

/// Parses cycle notation on points 1..=m, e.g. "(1 2 3)(4 5)" or "(1,2)".
pub fn parse_cycles(s: &str, m: usize) -> Result<Perm> {
    let mut perm: Perm = (0..m).collect();
    let s = s.trim();
    if s.is_empty() || s == "()" || s == "e" {
        return Ok(perm);
    }
    let mut rest = s;
    while !rest.is_empty() {
        let body_start = rest.find('(').ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
        if !rest[..body_start].trim().is_empty() {
            return Err(Error::Parse(format!("unexpected text in {s:?}")));
        }
        let end = rest.find(')').ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
        let pts = rest[body_start + 1..end]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                let x: usize = t.parse().map_err(|_| Error::Parse(format!("bad point {t:?}")))?;
                if x == 0 || x > m {
                    return Err(Error::Parse(format!("point {x} outside 1..={m}")));
                }
                Ok(x - 1)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut cycle = (0..m).collect::<Perm>();
        for (i, &x) in pts.iter().enumerate() {
            cycle[x] = pts[(i + 1) % pts.len()];
        }
        if pts.iter().collect::<BTreeSet<_>>().len() != pts.len() {
            return Err(Error::Parse(format!("repeated point in {s:?}")));
        }
        // cycles are applied right to left
        perm = compose(&perm, &cycle);
        rest = rest[end + 1..].trim_start();
    }
    Ok(perm)
}

fn largest_point(s: &str) -> usize {
    s.split(|c: char| !c.is_ascii_digit()).filter_map(|t| t.parse::<usize>().ok()).max().unwrap_or(1)
}

/// A finite permutation group with its multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub name: String,
    pub degree: usize,
    pub elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    pub identity: usize,
}

impl FiniteGroup {
    pub fn from_generators(name: &str, degree: usize, gens: &[Perm], max_order: usize) -> Result<Self> {
        let id: Perm = (0..degree).collect();
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree || g.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidArgument("generator is not a permutation of the points".into()));
            }
        }
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for g in gens {
                let x = compose(g, &elements[i]);
                if !index.contains_key(&x) {
                    if elements.len() >= max_order {
                        return Err(Error::InvalidArgument(format!("group {name} has order above {max_order}")));
                    }
                    index.insert(x.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(x);
                }
            }
        }
        let n = elements.len();
        let mul: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| index[&compose(&elements[i], &elements[j])]).collect()).collect();
        let identity = 0;
        let inv = (0..n).map(|i| (0..n).find(|&j| mul[i][j] == identity).expect("finite group")).collect();
        Ok(FiniteGroup { name: name.to_string(), degree, elements, index, mul, inv, identity })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        let g: Perm = (0..n).map(|x| (x + 1) % n).collect();
        Self::from_generators(&format!("C{n}"), n.max(1), &[g], DEFAULT_MAX_ORDER)
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push((0..n).map(|x| (x + 1) % n).collect());
            let mut t: Perm = (0..n).collect();
            t.swap(0, 1);
            gens.push(t);
        }
        Self::from_generators(&format!("S{n}"), n.max(1), &gens, DEFAULT_MAX_ORDER)
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let gens: Vec<Perm> = (2..n)
            .map(|k| {
                let mut t: Perm = (0..n).collect();
                t[0] = 1;
                t[1] = k;
                t[k] = 0;
                t
            })
            .collect();
        Self::from_generators(&format!("A{n}"), n.max(1), &gens, DEFAULT_MAX_ORDER)
    }

    /// The dihedral group of order 2n acting on an n-gon.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument("dihedral groups need n ≥ 3".into()));
        }
        let r: Perm = (0..n).map(|x| (x + 1) % n).collect();
        let s: Perm = (0..n).map(|x| (n - x) % n).collect();
        Self::from_generators(&format!("D{n}"), n, &[r, s], DEFAULT_MAX_ORDER)
    }

    /// "Cn", "Sn", "An", "Dn", or generators in cycle notation separated by ';'.
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        let named = |prefix: char| spec.strip_prefix(prefix).and_then(|r| r.parse::<usize>().ok());
        if let Some(n) = named('C') {
            return Self::cyclic(n);
        }
        if let Some(n) = named('S') {
            return Self::symmetric(n);
        }
        if let Some(n) = named('A') {
            return Self::alternating(n);
        }
        if let Some(n) = named('D') {
            return Self::dihedral(n);
        }
        let degree = largest_point(spec);
        let gens = spec.split(';').map(|g| parse_cycles(g, degree)).collect::<Result<Vec<_>>>()?;
        Self::from_generators(spec, degree, &gens, DEFAULT_MAX_ORDER)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn whole(&self) -> Subgroup {
        (0..self.order()).collect()
    }

    pub fn trivial(&self) -> Subgroup {
        vec![self.identity]
    }

    pub fn generated(&self, gens: &[usize]) -> Subgroup {
        let mut set = BTreeSet::from([self.identity]);
        let mut queue: VecDeque<usize> = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if set.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        set.into_iter().collect()
    }

    /// HSPEC: "e" for the trivial subgroup, "G" for the whole group, otherwise
    /// generators in cycle notation separated by ';'.
    pub fn parse_subgroup(&self, spec: &str) -> Result<Subgroup> {
        let spec = spec.trim();
        match spec {
            "e" | "1" => return Ok(self.trivial()),
            "G" => return Ok(self.whole()),
            _ => {}
        }
        let gens = spec
            .split(';')
            .map(|g| {
                let p = parse_cycles(g, self.degree)?;
                self.element(&p).ok_or_else(|| Error::InvalidArgument(format!("{g:?} is not an element of {}", self.name)))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.generated(&gens))
    }

    pub fn conjugate(&self, g: usize, h: &Subgroup) -> Subgroup {
        let mut out: Vec<usize> = h.iter().map(|&x| self.conj(g, x)).collect();
        out.sort_unstable();
        out
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        (0..self.order()).filter(|&g| self.conjugate(g, h) == *h).collect()
    }

    pub fn is_subset(a: &Subgroup, b: &Subgroup) -> bool {
        a.iter().all(|x| b.binary_search(x).is_ok())
    }

    pub fn intersect(a: &Subgroup, b: &Subgroup) -> Subgroup {
        a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
    }

    /// The set product A·B.
    pub fn product_set(&self, a: &[usize], b: &[usize]) -> Vec<usize> {
        let set: BTreeSet<usize> = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).map(|(x, y)| self.mul(x, y)).collect();
        set.into_iter().collect()
    }

    /// Every subgroup, by closing cyclic subgroups under joins.
    pub fn subgroups(&self) -> Vec<Subgroup> {
        let mut all: BTreeSet<Subgroup> = (0..self.order()).map(|g| self.generated(&[g])).collect();
        let mut frontier: Vec<Subgroup> = all.iter().cloned().collect();
        let cyclic: Vec<Subgroup> = frontier.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if Self::is_subset(c, h) {
                        continue;
                    }
                    let mut gens = h.clone();
                    gens.extend(c);
                    let j = self.generated(&gens);
                    if all.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        let mut out: Vec<Subgroup> = all.into_iter().collect();
        out.sort_by_key(|s| (s.len(), s.clone()));
        out
    }

    /// Subgroups up to conjugacy, one representative (the least in the list) per class.
    pub fn subgroup_classes(&self) -> Vec<Subgroup> {
        let mut seen = BTreeSet::new();
        let mut reps = Vec::new();
        for h in self.subgroups() {
            if seen.contains(&h) {
                continue;
            }
            for g in 0..self.order() {
                seen.insert(self.conjugate(g, &h));
            }
            reps.push(h);
        }
        reps
    }

    /// Left coset xK as a sorted element list.
    pub fn left_coset(&self, x: usize, k: &Subgroup) -> Vec<usize> {
        let mut c: Vec<usize> = k.iter().map(|&y| self.mul(x, y)).collect();
        c.sort_unstable();
        c
    }

    /// The abelian invariants of L/H when H is normal in L and the quotient is
    /// abelian, otherwise `None`.
    pub fn quotient_invariants(&self, l: &Subgroup, h: &Subgroup) -> Option<FinGenAb> {
        let in_h = |x: usize| h.binary_search(&x).is_ok();
        if l.iter().any(|&x| h.iter().any(|&y| !in_h(self.conj(x, y)))) {
            return None;
        }
        let comm = |x: usize, y: usize| self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)));
        if l.iter().any(|&x| l.iter().any(|&y| !in_h(comm(x, y)))) {
            return None;
        }
        let m = l.len() / h.len();
        let power_in_h = |x: usize, e: usize| {
            let mut y = self.identity;
            for _ in 0..e {
                y = self.mul(y, x);
            }
            in_h(y)
        };
        // for each prime q, count cosets killed by q^k to read off the elementary divisors
        let mut elementary = Vec::new();
        let mut rest = m;
        let mut q = 2;
        while rest > 1 {
            if rest.is_multiple_of(q) {
                let mut qm = 1;
                while rest.is_multiple_of(q) {
                    rest /= q;
                    qm *= q;
                }
                let mut counts = vec![1usize];
                let mut e = q;
                while e <= qm {
                    let killed = l.iter().filter(|&&x| power_in_h(x, e)).count() / h.len();
                    counts.push(killed);
                    e *= q;
                }
                let logs: Vec<u32> = counts.iter().map(|&c| (c as f64).log(q as f64).round() as u32).collect();
                // number of cyclic factors of exponent ≥ k is logs[k] − logs[k−1]
                let ge: Vec<u32> = (1..logs.len()).map(|k| logs[k] - logs[k - 1]).collect();
                for k in 0..ge.len() {
                    let next = ge.get(k + 1).copied().unwrap_or(0);
                    for _ in 0..ge[k] - next {
                        elementary.push(BigInt::from(q.pow(k as u32 + 1)));
                    }
                }
            }
            q += 1;
        }
        Some(FinGenAb::from_orders(elementary))
    }

    /// Cm when cyclic, the abelian invariants when abelian, nonabelian(m) otherwise.
    pub fn quotient_name(&self, l: &Subgroup, h: &Subgroup) -> String {
        let m = l.len() / h.len();
        match self.quotient_invariants(l, h) {
            Some(a) if a.torsion.len() <= 1 => format!("C{m}"),
            Some(a) => a.torsion.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("×"),
            None => format!("nonabelian({m})"),
        }
    }
}

/// C̃(H,K) = {g : H ⊆ gKg⁻¹ ⊆ N(H)}.
pub fn c_tilde(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<usize> {
    let nh = g.normalizer(h);
    (0..g.order())
        .filter(|&x| {
            let l = g.conjugate(x, k);
            FiniteGroup::is_subset(h, &l) && FiniteGroup::is_subset(&l, &nh)
        })
        .collect()
}

/// C(H,K) = C̃(H,K)/K as a list of left cosets.
pub fn c_set(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<Vec<usize>> {
    let cosets: BTreeSet<Vec<usize>> = c_tilde(g, h, k).into_iter().map(|x| g.left_coset(x, k)).collect();
    cosets.into_iter().collect()
}

/// The partition of C(H,K) into N(H)\C(H,K)/N(K) classes, as lists of indices into `c_set`.
pub fn double_cosets(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let cs = c_set(g, h, k);
    let pos: HashMap<Vec<usize>, usize> = cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let (nh, nk) = (g.normalizer(h), g.normalizer(k));
    let mut class = vec![usize::MAX; cs.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..cs.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut members = vec![start];
        class[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let x = cs[i][0];
            let moves = nh.iter().map(|&a| g.mul(a, x)).chain(nk.iter().map(|&b| g.mul(x, b)));
            for y in moves.collect::<Vec<_>>() {
                let j = pos[&g.left_coset(y, k)];
                if class[j] == usize::MAX {
                    class[j] = id;
                    members.push(j);
                    queue.push_back(j);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    (cs, classes)
}

/// One summand: representative g, L = gKg⁻¹, induction subgroup
/// (N(H) ∩ N(L))/L and Tate quotient L/H.
#[derive(Clone, Debug, Serialize)]
pub struct GluingIndexDatum {
    pub representative: Perm,
    pub class_size: usize,
    pub induction_order: usize,
    pub induction_name: String,
    pub tate_order: usize,
    pub tate_name: String,
}

impl fmt::Display for GluingIndexDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "g = {}: |class| = {}, induction from {} (order {}), Tate quotient {} (order {})",
            cycle_string(&self.representative),
            self.class_size,
            self.induction_name,
            self.induction_order,
            self.tate_name,
            self.tate_order
        )
    }
}

/// Cycle notation on points 1..=m.
pub fn cycle_string(p: &Perm) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cyc = vec![s + 1];
        seen[s] = true;
        let mut x = p[s];
        while x != s {
            seen[x] = true;
            cyc.push(x + 1);
            x = p[x];
        }
        out.push('(');
        out.push_str(&cyc.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "));
        out.push(')');
    }
    if out.is_empty() {
        "()".into()
    } else {
        out
    }
}

pub fn gluing_index(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<GluingIndexDatum> {
    let (cs, classes) = double_cosets(g, h, k);
    let nh = g.normalizer(h);
    classes
        .iter()
        .map(|cl| {
            let x = cs[cl[0]][0];
            let l = g.conjugate(x, k);
            let induction = FiniteGroup::intersect(&nh, &g.normalizer(&l));
            GluingIndexDatum {
                representative: g.elements[x].clone(),
                class_size: cl.len(),
                induction_order: induction.len() / l.len(),
                induction_name: g.quotient_name(&induction, &l),
                tate_order: l.len() / h.len(),
                tate_name: g.quotient_name(&l, h),
            }
        })
        .collect()
}

/// Checks every structural claim about C(H,K) for one pair:
/// bimodule stability, triviality of the H-action, the classification of
/// double cosets by N(H)-classes of conjugates of K, and the bijection
/// (N(H)·N(L))/L → class for each representative.
pub fn verify_pair(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Result<()> {
    let fail = |what: String| Err(Error::Validation(what));
    let ct: BTreeSet<usize> = c_tilde(g, h, k).into_iter().collect();
    let (nh, nk) = (g.normalizer(h), g.normalizer(k));
    for &x in &ct {
        if nh.iter().any(|&a| !ct.contains(&g.mul(a, x))) || nk.iter().any(|&b| !ct.contains(&g.mul(x, b))) {
            return fail("C̃(H,K) is not an (N(H), N(K))-bimodule".into());
        }
        if h.iter().any(|&a| g.left_coset(g.mul(a, x), k) != g.left_coset(x, k)) {
            return fail("H acts nontrivially on C(H,K)".into());
        }
    }
    let (cs, classes) = double_cosets(g, h, k);
    if classes.iter().map(Vec::len).sum::<usize>() != cs.len() {
        return fail("double cosets do not partition C(H,K)".into());
    }
    // N(H)-conjugacy class (canonical: least conjugate) of L = xKx⁻¹
    let canon = |l: &Subgroup| -> Subgroup { nh.iter().map(|&a| g.conjugate(a, l)).min().expect("nonempty") };
    let mut labels = BTreeSet::new();
    for cl in &classes {
        let mut seen = BTreeSet::new();
        for &i in cl {
            seen.insert(canon(&g.conjugate(cs[i][0], k)));
        }
        if seen.len() != 1 {
            return fail("a double coset meets two N(H)-classes of conjugates of K".into());
        }
        if !labels.insert(seen.into_iter().next().unwrap()) {
            return fail("two double cosets give the same N(H)-class".into());
        }
    }
    // every J with H ⊆ J ⊆ N(H) conjugate to K must be hit
    let mut targets = BTreeSet::new();
    for x in 0..g.order() {
        let j = g.conjugate(x, k);
        if FiniteGroup::is_subset(h, &j) && FiniteGroup::is_subset(&j, &nh) {
            targets.insert(canon(&j));
        }
    }
    if targets != labels {
        return fail("double cosets do not biject with N(H)-classes of intermediate conjugates of K".into());
    }
    for cl in &classes {
        let x = cs[cl[0]][0];
        let l = g.conjugate(x, k);
        let nl = g.normalizer(&l);
        let prod = g.product_set(&nh, &nl);
        let expected = nh.len() * nl.len() / FiniteGroup::intersect(&nh, &nl).len();
        if prod.len() != expected {
            return fail("|N(H)·N(L)| disagrees with the product formula".into());
        }
        let mut image: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for &z in &prod {
            image.entry(g.left_coset(z, &l)).or_default().push(z);
        }
        let mut hit = BTreeSet::new();
        for zl in image.keys() {
            let coset = g.left_coset(g.mul(zl[0], x), k);
            if zl.iter().any(|&z| g.left_coset(g.mul(z, x), k) != coset) {
                return fail("xyL ↦ xygK is not well defined".into());
            }
            if !hit.insert(coset) {
                return fail("xyL ↦ xygK is not injective".into());
            }
        }
        let class_set: BTreeSet<Vec<usize>> = cl.iter().map(|&i| cs[i].clone()).collect();
        if hit != class_set {
            return fail("(N(H)·N(L))/L does not map onto its double coset".into());
        }
        // right equivariance along N(K) ≅ N(L), m ↦ xmx⁻¹
        for &m in &nk {
            let mc = g.conj(x, m);
            for zl in image.keys() {
                let lhs = g.left_coset(g.mul(g.mul(zl[0], mc), x), k);
                let rhs = g.left_coset(g.mul(g.mul(zl[0], x), m), k);
                if lhs != rhs {
                    return fail("the bijection is not right N(K)-equivariant".into());
                }
            }
        }
    }
    Ok(())
}

/// Runs [`verify_pair`] on all pairs of subgroups (not only class representatives).
pub fn verify_group(g: &FiniteGroup) -> Result<usize> {
    use rayon::prelude::*;
    let subs = g.subgroups();
    let pairs: Vec<(usize, usize)> = (0..subs.len()).flat_map(|i| (0..subs.len()).map(move |j| (i, j))).collect();
    pairs.par_iter().try_for_each(|&(i, j)| verify_pair(g, &subs[i], &subs[j]))?;
    Ok(pairs.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sub(g: &FiniteGroup, s: &str) -> Subgroup {
        g.parse_subgroup(s).unwrap()
    }

    #[test]
    fn group_orders() {
        assert_eq!(FiniteGroup::parse("S3").unwrap().order(), 6);
        assert_eq!(FiniteGroup::parse("A4").unwrap().order(), 12);
        assert_eq!(FiniteGroup::parse("D4").unwrap().order(), 8);
        assert_eq!(FiniteGroup::parse("C27").unwrap().order(), 27);
        assert_eq!(FiniteGroup::parse("S5").unwrap().order(), 120);
        assert_eq!(FiniteGroup::parse("(1 2 3 4);(1 3)").unwrap().order(), 8);
        assert!(FiniteGroup::parse("S6").is_err());
        assert!(FiniteGroup::parse("(1 2").is_err());
    }

    #[test]
    fn subgroup_counts() {
        let count = |s: &str| FiniteGroup::parse(s).unwrap().subgroups().len();
        assert_eq!(count("S3"), 6);
        assert_eq!(count("A4"), 10);
        assert_eq!(count("D4"), 10);
        assert_eq!(count("C27"), 4);
        assert_eq!(count("S4"), 30);
        assert_eq!(FiniteGroup::parse("A4").unwrap().subgroup_classes().len(), 5);
    }

    #[test]
    fn cycle_notation() {
        let p = parse_cycles("(1 2 3)", 3).unwrap();
        assert_eq!(p, vec![1, 2, 0]);
        assert_eq!(cycle_string(&p), "(1 2 3)");
        assert_eq!(cycle_string(&parse_cycles("(1 2)(3 4)", 4).unwrap()), "(1 2)(3 4)");
        assert_eq!(cycle_string(&parse_cycles("()", 2).unwrap()), "()");
        assert!(parse_cycles("(1 1)", 2).is_err());
        assert!(parse_cycles("(1 5)", 2).is_err());
    }

    #[test]
    fn alternating_four_examples() {
        let g = FiniteGroup::parse("A4").unwrap();
        let c3 = sub(&g, "(1 2 3)");
        let c2 = sub(&g, "(1 2)(3 4)");
        let v4 = sub(&g, "(1 2)(3 4);(1 3)(2 4)");
        assert!(c_set(&g, &c3, &g.whole()).is_empty());
        let d = gluing_index(&g, &c2, &v4);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].tate_name, "C2");
        let d = gluing_index(&g, &v4, &g.whole());
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].tate_name, "C3");
        let (_, classes) = double_cosets(&g, &g.trivial(), &c2);
        assert_eq!(classes.len(), 1);
        assert_eq!(gluing_index(&g, &g.trivial(), &v4)[0].tate_name, "C2×C2");
        assert_eq!(gluing_index(&g, &g.trivial(), &g.whole())[0].tate_name, "nonabelian(12)");
    }

    #[test]
    fn symmetric_three_example() {
        let g = FiniteGroup::parse("S3").unwrap();
        assert!(c_set(&g, &sub(&g, "(1 2)"), &g.whole()).is_empty());
    }

    #[test]
    fn cyclic_groups_have_one_summand() {
        let g = FiniteGroup::cyclic(27).unwrap();
        let subs = g.subgroups();
        for h in &subs {
            for k in &subs {
                let d = gluing_index(&g, h, k);
                if FiniteGroup::is_subset(h, k) {
                    assert_eq!(d.len(), 1);
                    assert_eq!(d[0].class_size, 27 / k.len());
                    assert_eq!(d[0].tate_name, format!("C{}", k.len() / h.len()));
                    assert_eq!(d[0].induction_order, 27 / k.len());
                } else {
                    assert!(d.is_empty());
                }
            }
        }
    }

    #[test]
    fn exhaustive_checks() {
        for name in ["S3", "A4", "C27", "D4"] {
            let g = FiniteGroup::parse(name).unwrap();
            assert!(verify_group(&g).unwrap() > 0);
        }
    }

    #[test]
    fn quotient_invariants() {
        let g = FiniteGroup::parse("D4").unwrap();
        let e = g.trivial();
        assert_eq!(g.quotient_invariants(&g.whole(), &e), None);
        let center = g.generated(&[g.element(&parse_cycles("(1 3)(2 4)", 4).unwrap()).unwrap()]);
        assert_eq!(g.quotient_name(&g.whole(), &center), "C2×C2");
        let c4 = FiniteGroup::parse("C4").unwrap();
        assert_eq!(c4.quotient_name(&c4.whole(), &c4.trivial()), "C4");
    }
}
