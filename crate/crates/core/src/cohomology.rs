//! Values, inclusions and transfers of the Picard-graded cohomology of a point,
//! computed as homology of homotopy limits of zigzags of catalog complexes.
//!
//! For a Picard coordinate L the value at level a (the subgroup C_{p^a}) in
//! degree i is H_{−i} of the holim of the level-a zigzag over Z[C_{p^{n−a}}],
//! read over the integers.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::abelian::{bigint_json, json_bigint, FinGenAb, Hom};
use crate::catalog::{
    complex_c, complex_chat, complex_s, complex_t, complex_z, homotopy_h, homotopy_h_s, inc_map, map_e, map_g, map_i, map_k,
    map_periodicity, map_q, trf_map,
};
use crate::complexes::{
    holim_zigzag, lax_map_on_holim, ChainMap, Complex, Holim, Integers, LaxMap, LazyComplex, ZChainMap, ZComplex, ZHomotopy,
    ZigzagDiagram, ZigzagMorphism,
};
use crate::error::{Error, Result};
use crate::groupring::CyclicGroupCtx;
use crate::homology::{homology_at, induced_between, HomologyGroup};
use crate::picard::{slot_modulus, PicCoord};
use crate::zmat::Matrix;

/// β⃗ together with chosen integer lifts γ̃_s of the gluing units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GluingCoords {
    pub p: u64,
    pub n: u32,
    pub beta: Vec<i64>,
    pub lifts: Vec<BigInt>,
}

impl GluingCoords {
    /// Lifts are the least positive residues of the canonical representative.
    pub fn from_pic(c: &PicCoord) -> Self {
        Self::from_raw(&c.reduce())
    }

    /// Lifts are the least positive residues of γ⃗ exactly as given.
    pub fn from_raw(c: &PicCoord) -> Self {
        GluingCoords { p: c.p, n: c.n, beta: c.beta.clone(), lifts: c.gamma.iter().map(|&g| BigInt::from(g)).collect() }
    }

    /// Adds k·p^{n−s+1} to the lift in slot s.
    pub fn with_lift_shift(&self, s: usize, k: i64) -> Self {
        let mut out = self.clone();
        out.lifts[s - 1] += BigInt::from(k) * BigInt::from(slot_modulus(self.p, self.n, s));
        out
    }

    pub fn beta_le(&self, s: usize) -> i64 {
        self.beta[0] + 2 * self.beta[1..=s].iter().sum::<i64>()
    }

    fn check(&self) -> Result<()> {
        if self.beta.len() != self.n as usize + 1 || self.lifts.len() != self.n as usize {
            return Err(Error::InvalidArgument("coordinate vectors have the wrong length".into()));
        }
        for (s, g) in self.lifts.iter().enumerate() {
            if (g % BigInt::from(self.p)).is_zero() {
                return Err(Error::InvalidArgument(format!("lift γ̃_{} = {g} is divisible by p", s + 1)));
            }
        }
        Ok(())
    }

    fn ctx(&self, a: u32) -> Result<CyclicGroupCtx> {
        if a > self.n {
            return Err(Error::InvalidArgument(format!("level {a} exceeds n = {}", self.n)));
        }
        CyclicGroupCtx::new(self.p, self.n - a)
    }
}

/// The level-a zigzag over Z[C_{p^{n−a}}].
pub fn build_value_zigzag(coords: &GluingCoords, a: u32) -> Result<ZigzagDiagram<CyclicGroupCtx>> {
    coords.check()?;
    let ctx = coords.ctx(a)?;
    let b = |s: u32| coords.beta_le(s as usize);
    let mut top = vec![complex_z(ctx, a).shift(b(0))];
    let mut bottom = Vec::new();
    let mut diag = Vec::new();
    let mut vert = Vec::new();
    for s in 1..=a {
        top.push(complex_c(ctx, a - s).shift(b(s)));
        bottom.push(complex_t(ctx, a - s).shift(b(s - 1)));
        diag.push(if s == 1 { map_q(ctx, a)?.shift(b(0)) } else { map_g(ctx, a - s).shift(b(s - 1)) });
        let c = map_periodicity(ctx, a - s, b(s), b(s - 1))?;
        vert.push(c.compose(&map_e(ctx, a - s).shift(b(s))).scale(&coords.lifts[s as usize - 1]));
    }
    Ok(ZigzagDiagram { top, bottom, diag, vert })
}

/// Appends a zero top and a zero bottom object, so the zigzag gains one column.
fn pad(z: &ZigzagDiagram<Integers>) -> ZigzagDiagram<Integers> {
    let zero = Complex::zero(Integers);
    let mut out = z.clone();
    let last = z.top.last().expect("a zigzag has a top object").clone();
    out.top.push(zero.clone());
    out.bottom.push(zero.clone());
    out.diag.push(ChainMap::zero(last, zero.clone()));
    out.vert.push(ChainMap::zero(zero.clone(), zero));
    out
}

fn zero_map(source: &ZComplex, target: &ZComplex) -> ZChainMap {
    ChainMap::zero(source.clone(), target.clone())
}

/// The holim presenting level a.
pub fn value_holim(coords: &GluingCoords, a: u32) -> Result<Holim> {
    holim_zigzag(&build_value_zigzag(coords, a)?.underlying())
}

pub fn mackey_value(coords: &GluingCoords, a: u32, i: i64) -> Result<FinGenAb> {
    Ok(homology_at(&value_holim(coords, a)?.complex, -i)?.group)
}

/// The strict morphism from level a+1 to the padded level-a zigzag, built
/// from the orbit-sum inclusions.
pub fn inclusion_morphism(coords: &GluingCoords, a: u32) -> Result<(ZigzagDiagram<Integers>, ZigzagDiagram<Integers>, ZigzagMorphism)> {
    if a >= coords.n {
        return Err(Error::InvalidArgument(format!("no inclusion out of level {}", a + 1)));
    }
    let src = build_value_zigzag(coords, a + 1)?.underlying();
    let dst_gr = build_value_zigzag(coords, a)?;
    let dst = pad(&dst_gr.underlying());
    let objmap = |x: &LazyComplex, source: &ZComplex| -> Result<ZChainMap> { Ok(inc_map(x)?.retarget(source.clone(), x.underlying())) };
    let mut top = Vec::new();
    for s in 0..=a as usize {
        top.push(objmap(&dst_gr.top[s], &src.top[s])?);
    }
    top.push(zero_map(&src.top[a as usize + 1], &dst.top[a as usize + 1]));
    let mut bottom = Vec::new();
    for s in 0..a as usize {
        bottom.push(objmap(&dst_gr.bottom[s], &src.bottom[s])?);
    }
    bottom.push(zero_map(&src.bottom[a as usize], &dst.bottom[a as usize]));
    Ok((src, dst, ZigzagMorphism::strict(top, bottom)))
}

pub fn build_inclusion(coords: &GluingCoords, a: u32) -> Result<LaxMap> {
    let (src, dst, mor) = inclusion_morphism(coords, a)?;
    lax_map_on_holim(&holim_zigzag(&src)?, &holim_zigzag(&dst)?, &mor)
}

/// Pieces of the transfer out of level a.
pub struct TransferData {
    /// Level a with its rightmost top object replaced (Ĉ for a ≥ 1, _0S for a = 0), padded.
    pub replaced: Holim,
    /// Level a, padded.
    pub original: Holim,
    /// Level a+1.
    pub target: Holim,
    /// The quasi-isomorphism replaced → original.
    pub kmap: LaxMap,
    /// The lax map replaced → level a+1.
    pub lax: LaxMap,
}

pub fn build_transfer(coords: &GluingCoords, a: u32) -> Result<TransferData> {
    if a >= coords.n {
        return Err(Error::InvalidArgument(format!("no transfer out of level {a}")));
    }
    let ctx = coords.ctx(a)?;
    let shift = coords.beta_le(a as usize);
    let orig_gr = build_value_zigzag(coords, a)?;
    let orig = orig_gr.underlying();
    let dst = build_value_zigzag(coords, a + 1)?.underlying();
    let last = a as usize;

    // The replacement of the last top object, the quasi-isomorphism onto it,
    // the transfer on it and the nullhomotopy for the new square.
    let (new_top, kq, tr, h): (LazyComplex, ZChainMap, ZChainMap, ZHomotopy) = if a == 0 {
        let k = map_i(ctx).shift(shift);
        let tr = trf_map(&complex_z(ctx, 0).shift(shift))?;
        (complex_s(ctx, 0).shift(shift), k.underlying(), tr, homotopy_h_s(ctx)?.shift(shift))
    } else {
        let k = map_k(ctx).shift(shift);
        let tr = trf_map(&complex_c(ctx, 0).shift(shift))?;
        (complex_chat(ctx).shift(shift), k.underlying(), tr, homotopy_h(ctx)?.shift(shift))
    };

    let mut repl = orig.clone();
    repl.top[last] = new_top.underlying();
    if a >= 1 {
        repl.vert[last - 1] = orig.vert[last - 1].compose(&kq).retarget(repl.top[last].clone(), orig.bottom[last - 1].clone());
    }
    let repl = pad(&repl);
    let orig_p = pad(&orig);

    let mut ktop: Vec<ZChainMap> = (0..last).map(|s| ChainMap::identity(orig.top[s].clone())).collect();
    ktop.push(kq.retarget(repl.top[last].clone(), orig.top[last].clone()));
    ktop.push(zero_map(&repl.top[last + 1], &orig_p.top[last + 1]));
    let mut kbottom: Vec<ZChainMap> = orig.bottom.iter().map(|x| ChainMap::identity(x.clone())).collect();
    kbottom.push(zero_map(&repl.bottom[last], &orig_p.bottom[last]));

    let trf_obj = |x: &LazyComplex, target: &ZComplex| -> Result<ZChainMap> { Ok(trf_map(x)?.retarget(x.underlying(), target.clone())) };
    let mut ttop = Vec::new();
    for s in 0..last {
        ttop.push(trf_obj(&orig_gr.top[s], &dst.top[s])?);
    }
    ttop.push(tr.compose(&kq).retarget(repl.top[last].clone(), dst.top[last].clone()));
    ttop.push(zero_map(&repl.top[last + 1], &dst.top[last + 1]));
    let mut tbottom = Vec::new();
    for s in 0..last {
        tbottom.push(trf_obj(&orig_gr.bottom[s], &dst.bottom[s])?);
    }
    tbottom.push(zero_map(&repl.bottom[last], &dst.bottom[last]));
    let mut tmor = ZigzagMorphism::strict(ttop, tbottom);
    tmor.diag_htpy[last] = Some(h);

    let replaced = holim_zigzag(&repl)?;
    let original = holim_zigzag(&orig_p)?;
    let target = holim_zigzag(&dst)?;
    let kmap = lax_map_on_holim(&replaced, &original, &ZigzagMorphism::strict(ktop, kbottom))?;
    let lax = lax_map_on_holim(&replaced, &target, &tmor)?;
    Ok(TransferData { replaced, original, target, kmap, lax })
}

/// Mackey table over a degree window: values, inclusions H(a+1) → H(a) and
/// transfers H(a) → H(a+1) on the canonical homology generators.
#[derive(Clone, Debug, PartialEq)]
pub struct MackeyTable {
    pub p: u64,
    pub n: u32,
    pub pic: PicCoord,
    pub window: (i64, i64),
    /// values[a][i]
    pub values: Vec<BTreeMap<i64, FinGenAb>>,
    /// inc[a][i]: level a+1 → level a.
    pub inc: Vec<BTreeMap<i64, Hom>>,
    /// trf[a][i]: level a → level a+1.
    pub trf: Vec<BTreeMap<i64, Hom>>,
}

fn degrees(window: (i64, i64)) -> RangeInclusive<i64> {
    window.0..=window.1
}

fn chain_degrees(window: (i64, i64)) -> RangeInclusive<i64> {
    -window.1 - 1..=-window.0 + 1
}

fn level_groups(h: &Holim, window: (i64, i64)) -> Result<BTreeMap<i64, HomologyGroup>> {
    degrees(window).into_par_iter().map(|i| Ok((i, homology_at(&h.complex, -i)?))).collect()
}

/// Computes the full table for the given Picard element.
pub fn mackey_table(pic: &PicCoord, window: (i64, i64)) -> Result<MackeyTable> {
    mackey_table_with(&GluingCoords::from_pic(pic), pic, window)
}

/// As [`mackey_table`], with explicitly chosen lifts.
pub fn mackey_table_with(coords: &GluingCoords, pic: &PicCoord, window: (i64, i64)) -> Result<MackeyTable> {
    coords.check()?;
    if window.0 > window.1 {
        return Err(Error::InvalidArgument(format!("empty window [{}, {}]", window.0, window.1)));
    }
    let n = coords.n;
    let holims: Vec<Holim> = (0..=n).into_par_iter().map(|a| value_holim(coords, a)).collect::<Result<_>>()?;
    let groups: Vec<BTreeMap<i64, HomologyGroup>> = holims.par_iter().map(|h| level_groups(h, window)).collect::<Result<_>>()?;
    let maps: Vec<(BTreeMap<i64, Hom>, BTreeMap<i64, Hom>)> = (0..n)
        .into_par_iter()
        .map(|a| structure_maps(coords, a, &groups[a as usize], &groups[a as usize + 1], window))
        .collect::<Result<_>>()?;
    let (mut inc, mut trf): (Vec<_>, Vec<_>) = maps.into_iter().unzip();
    normalize_signs(&mut inc, &mut trf);
    let values = groups.iter().map(|g| g.iter().map(|(&i, h)| (i, h.group.clone())).collect()).collect();
    let table = MackeyTable { p: coords.p, n, pic: pic.clone(), window, values, inc, trf };
    table.check_trf_inc()?;
    Ok(table)
}

fn structure_maps(
    coords: &GluingCoords,
    a: u32,
    lower: &BTreeMap<i64, HomologyGroup>,
    upper: &BTreeMap<i64, HomologyGroup>,
    window: (i64, i64),
) -> Result<(BTreeMap<i64, Hom>, BTreeMap<i64, Hom>)> {
    let range = chain_degrees(window);
    let inclusion = build_inclusion(coords, a)?;
    inclusion.check_homotopies(range.clone())?;
    let t = build_transfer(coords, a)?;
    t.lax.check_homotopies(range.clone())?;
    t.kmap.check_homotopies(range)?;
    let mut inc = BTreeMap::new();
    let mut trf = BTreeMap::new();
    for i in degrees(window) {
        inc.insert(i, induced_between(&inclusion.map, &upper[&i], &lower[&i])?);
        let hr = homology_at(&t.replaced.complex, -i)?;
        let k = induced_between(&t.kmap.map, &hr, &lower[&i])?;
        let lax = induced_between(&t.lax.map, &hr, &upper[&i])?;
        trf.insert(i, lax.compose(&k.inverse()?)?);
    }
    Ok((inc, trf))
}

fn negate_row(h: &mut Hom, row: usize) {
    let m = h.matrix.clone();
    h.matrix = Hom::new(h.src.clone(), h.dst.clone(), Matrix::from_fn(m.rows(), m.cols(), |i, j| if i == row { -m[(i, j)].clone() } else { m[(i, j)].clone() }))
        .expect("sign change keeps the map well defined")
        .matrix;
}

fn negate_col(h: &mut Hom, col: usize) {
    let m = h.matrix.clone();
    h.matrix = Hom::new(h.src.clone(), h.dst.clone(), Matrix::from_fn(m.rows(), m.cols(), |i, j| if j == col { -m[(i, j)].clone() } else { m[(i, j)].clone() }))
        .expect("sign change keeps the map well defined")
        .matrix;
}

/// Where levels a+1 and a are both Z in some degree, flip the level-a
/// generator so that the inclusion is multiplication by a positive integer.
/// Works downward from the top level, so earlier choices are never revisited.
fn normalize_signs(inc: &mut [BTreeMap<i64, Hom>], trf: &mut [BTreeMap<i64, Hom>]) {
    for a in (0..inc.len()).rev() {
        let degs: Vec<i64> = inc[a].keys().copied().collect();
        for i in degs {
            let h = &inc[a][&i];
            let z = FinGenAb::free(1);
            if h.src != z || h.dst != z || !h.matrix[(0, 0)].is_negative() {
                continue;
            }
            negate_row(inc[a].get_mut(&i).unwrap(), 0);
            negate_col(trf[a].get_mut(&i).unwrap(), 0);
            if a > 0 {
                negate_col(inc[a - 1].get_mut(&i).unwrap(), 0);
                negate_row(trf[a - 1].get_mut(&i).unwrap(), 0);
            }
        }
    }
}

impl MackeyTable {
    pub fn value(&self, a: u32, i: i64) -> Option<&FinGenAb> {
        self.values.get(a as usize)?.get(&i)
    }

    /// trf∘inc = ×p on level a+1 in every stored degree.
    pub fn check_trf_inc(&self) -> Result<()> {
        for a in 0..self.n as usize {
            for (i, inc) in &self.inc[a] {
                let composite = self.trf[a][i].compose(inc)?;
                if !composite.same_map(&Hom::scalar(&inc.src, self.p)) {
                    return Err(Error::Validation(format!("trf∘inc ≠ ×{} at level {} in degree {i}", self.p, a + 1)));
                }
            }
        }
        Ok(())
    }

    /// Same values everywhere and structure maps of the same isomorphism type.
    pub fn equivalent(&self, other: &MackeyTable) -> bool {
        self.window == other.window
            && self.values == other.values
            && self.inc.len() == other.inc.len()
            && self.inc.iter().zip(&other.inc).chain(self.trf.iter().zip(&other.trf)).all(|(x, y)| {
                x.len() == y.len() && x.iter().all(|(i, h)| y.get(i).is_some_and(|g| h.equivalent_up_to_basis(g)))
            })
    }

    /// Whether `other` is this table with every degree moved from i to i − k.
    pub fn is_shift_of(&self, other: &MackeyTable, k: i64) -> bool {
        let moved = |map: &BTreeMap<i64, FinGenAb>, i: i64| map.get(&(i - k)).cloned();
        let (lo, hi) = (self.window.0.max(other.window.0 + k), self.window.1.min(other.window.1 + k));
        if lo > hi {
            return false;
        }
        (lo..=hi).all(|i| {
            (0..=self.n as usize).all(|a| self.values[a].get(&i).cloned() == moved(&other.values[a], i))
                && (0..self.n as usize).all(|a| {
                    let same = |x: &BTreeMap<i64, Hom>, y: &BTreeMap<i64, Hom>| match (x.get(&i), y.get(&(i - k))) {
                        (Some(f), Some(g)) => f.equivalent_up_to_basis(g),
                        _ => false,
                    };
                    same(&self.inc[a], &other.inc[a]) && same(&self.trf[a], &other.trf[a])
                })
        })
    }

    pub fn to_json(&self) -> Value {
        let matrix = |h: &Hom| -> Value {
            (0..h.matrix.rows()).map(|r| Value::Array(h.matrix.row(r).iter().map(bigint_json).collect())).collect()
        };
        let levels: Vec<Value> = (0..=self.n as usize)
            .map(|a| {
                let groups: serde_json::Map<String, Value> =
                    self.values[a].iter().map(|(i, g)| (i.to_string(), serde_json::to_value(g).expect("serializable"))).collect();
                let maps = |m: Option<&BTreeMap<i64, Hom>>| -> Value {
                    let obj: serde_json::Map<String, Value> =
                        m.map(|m| m.iter().map(|(i, h)| (i.to_string(), matrix(h))).collect()).unwrap_or_default();
                    Value::Object(obj)
                };
                json!({ "a": a, "groups": groups, "inc": maps(self.inc.get(a)), "trf": maps(self.trf.get(a)) })
            })
            .collect();
        json!({
            "schema": 1,
            "p": self.p,
            "n": self.n,
            "pic": { "beta": self.pic.beta, "gamma": self.pic.gamma },
            "window": [self.window.0, self.window.1],
            "levels": levels,
        })
    }

    pub fn from_json(v: &Value) -> Result<MackeyTable> {
        let bad = |what: &str| Error::Parse(format!("table JSON: {what}"));
        if v["schema"] != json!(1) {
            return Err(bad("unsupported schema"));
        }
        let p = v["p"].as_u64().ok_or_else(|| bad("p"))?;
        let n = v["n"].as_u64().ok_or_else(|| bad("n"))? as u32;
        let beta: Vec<i64> = serde_json::from_value(v["pic"]["beta"].clone()).map_err(|_| bad("pic.beta"))?;
        let gamma: Vec<u64> = serde_json::from_value(v["pic"]["gamma"].clone()).map_err(|_| bad("pic.gamma"))?;
        let pic = PicCoord::new(p, n, beta, gamma)?;
        let w: Vec<i64> = serde_json::from_value(v["window"].clone()).map_err(|_| bad("window"))?;
        if w.len() != 2 {
            return Err(bad("window"));
        }
        let levels = v["levels"].as_array().ok_or_else(|| bad("levels"))?;
        if levels.len() != n as usize + 1 {
            return Err(bad("number of levels"));
        }
        let mut values = Vec::new();
        for level in levels {
            let mut m = BTreeMap::new();
            for (i, g) in level["groups"].as_object().ok_or_else(|| bad("groups"))? {
                let i: i64 = i.parse().map_err(|_| bad("degree key"))?;
                m.insert(i, serde_json::from_value::<FinGenAb>(g.clone()).map_err(|_| bad("group"))?);
            }
            values.push(m);
        }
        let read_maps = |key: &str, a: usize, src: usize, dst: usize| -> Result<BTreeMap<i64, Hom>> {
            let mut out = BTreeMap::new();
            for (i, rows) in levels[a][key].as_object().ok_or_else(|| bad(key))? {
                let i: i64 = i.parse().map_err(|_| bad("degree key"))?;
                let (sg, dg) = (values[src].get(&i).ok_or_else(|| bad("map without group"))?, values[dst].get(&i).ok_or_else(|| bad("map without group"))?);
                let rows = rows.as_array().ok_or_else(|| bad("matrix"))?;
                let mut m = Matrix::zeros(dg.num_gens(), sg.num_gens());
                if rows.len() != m.rows() {
                    return Err(bad("matrix shape"));
                }
                for (r, row) in rows.iter().enumerate() {
                    let row = row.as_array().ok_or_else(|| bad("matrix row"))?;
                    if row.len() != m.cols() {
                        return Err(bad("matrix shape"));
                    }
                    for (c, x) in row.iter().enumerate() {
                        m[(r, c)] = json_bigint(x).ok_or_else(|| bad("matrix entry"))?;
                    }
                }
                out.insert(i, Hom::new(sg.clone(), dg.clone(), m)?);
            }
            Ok(out)
        };
        let mut inc = Vec::new();
        let mut trf = Vec::new();
        for a in 0..n as usize {
            inc.push(read_maps("inc", a, a + 1, a)?);
            trf.push(read_maps("trf", a, a, a + 1)?);
        }
        Ok(MackeyTable { p, n, pic, window: (w[0], w[1]), values, inc, trf })
    }

    /// Plain-text rendering, one block per level.
    pub fn render(&self) -> String {
        let mut out = format!("p = {}, n = {}, L = {}, degrees {}..={}\n", self.p, self.n, self.pic, self.window.0, self.window.1);
        for a in 0..=self.n as usize {
            out.push_str(&format!("level a = {a} (subgroup C_{}^{a})\n", self.p));
            for (i, g) in &self.values[a] {
                let mut line = format!("  i = {i:>4}: {g}");
                if let Some(h) = self.inc.get(a).and_then(|m| m.get(i)) {
                    if !h.src.is_zero() || !h.dst.is_zero() {
                        line.push_str(&format!("   inc from a={}: {}", a + 1, h.describe()));
                    }
                }
                if let Some(h) = self.trf.get(a).and_then(|m| m.get(i)) {
                    if !h.src.is_zero() || !h.dst.is_zero() {
                        line.push_str(&format!("   trf to a={}: {}", a + 1, h.describe()));
                    }
                }
                out.push_str(&line);
                out.push('\n');
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::picard::{rep_to_pic, VirtualRep};

    fn unit(p: u64, n: u32) -> PicCoord {
        PicCoord::unit(p, n).unwrap()
    }

    #[test]
    fn level_zero_is_a_single_complex() {
        let z = build_value_zigzag(&GluingCoords::from_pic(&unit(3, 2)), 0).unwrap();
        assert_eq!((z.top.len(), z.bottom.len()), (1, 0));
    }

    #[test]
    fn zigzag_for_the_trivial_line() {
        let c = GluingCoords::from_pic(&rep_to_pic(3, 1, &VirtualRep::triv(1)).unwrap());
        let z = build_value_zigzag(&c, 1).unwrap();
        let ctx = CyclicGroupCtx::new(3, 0).unwrap();
        for n in -6..=6 {
            assert_eq!(z.top[0].diff(n), complex_z(ctx, 1).shift(1).diff(n));
            assert_eq!(z.top[1].diff(n), complex_c(ctx, 0).shift(1).diff(n));
            assert_eq!(z.bottom[0].diff(n), complex_t(ctx, 0).shift(1).diff(n));
            assert_eq!(z.vert[0].comp(n), map_e(ctx, 0).shift(1).comp(n));
        }
        z.validate_arrows(-6..=6).unwrap();
    }

    #[test]
    fn unit_values() {
        let c = GluingCoords::from_pic(&unit(3, 2));
        for a in 0..=2 {
            assert_eq!(mackey_value(&c, a, 0).unwrap(), FinGenAb::free(1));
            for i in [-3, -2, -1, 1, 2, 3] {
                assert!(mackey_value(&c, a, i).unwrap().is_zero(), "a={a} i={i}");
            }
        }
    }

    #[test]
    fn desuspended_unit() {
        let c = GluingCoords::from_pic(&rep_to_pic(3, 2, &VirtualRep::triv(1)).unwrap().neg());
        for a in 0..=2 {
            for i in -3..=4 {
                let g = mackey_value(&c, a, i).unwrap();
                assert_eq!(g, if i == 1 { FinGenAb::free(1) } else { FinGenAb::zero() });
            }
        }
    }

    #[test]
    fn unit_table_structure_maps() {
        let t = mackey_table(&unit(3, 2), (-4, 4)).unwrap();
        for a in 0..2 {
            assert_eq!(t.inc[a][&0].matrix, Matrix::scalar(&BigInt::from(1), 1));
            assert_eq!(t.trf[a][&0].matrix, Matrix::scalar(&BigInt::from(3), 1));
        }
    }

    #[test]
    fn maps_validate_and_replacement_is_quasi_iso() {
        let pic = rep_to_pic(3, 2, &"rho(1)*1, rho(3)*-1".parse().unwrap()).unwrap();
        let c = GluingCoords::from_pic(&pic);
        for a in 0..2 {
            let inc = build_inclusion(&c, a).unwrap();
            inc.validate(-6..=6).unwrap();
            let t = build_transfer(&c, a).unwrap();
            t.lax.validate(-6..=6).unwrap();
            t.kmap.validate(-6..=6).unwrap();
            for k in -5..=5 {
                let hr = homology_at(&t.replaced.complex, k).unwrap();
                let ho = homology_at(&t.original.complex, k).unwrap();
                assert!(induced_between(&t.kmap.map, &hr, &ho).unwrap().is_iso());
            }
        }
    }

    #[test]
    fn padding_does_not_change_the_matrices() {
        let c = GluingCoords::from_pic(&rep_to_pic(3, 2, &VirtualRep::rho(1, 1)).unwrap());
        let h = value_holim(&c, 1).unwrap();
        let hp = holim_zigzag(&pad(&build_value_zigzag(&c, 1).unwrap().underlying())).unwrap();
        for n in -5..=5 {
            assert_eq!(h.complex.diff(n), hp.complex.diff(n));
        }
    }

    #[test]
    fn json_round_trip() {
        let pic = rep_to_pic(3, 1, &VirtualRep::rho(1, 1)).unwrap();
        let t = mackey_table(&pic, (-3, 5)).unwrap();
        let back = MackeyTable::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(MackeyTable::from_json(&json!({"schema": 2})).is_err());
        assert!(t.render().contains("level a = 1"));
    }

    #[test]
    fn bad_coordinates() {
        let mut c = GluingCoords::from_pic(&unit(3, 1));
        c.lifts[0] = BigInt::from(3);
        assert!(build_value_zigzag(&c, 1).is_err());
        assert!(build_value_zigzag(&GluingCoords::from_pic(&unit(3, 1)), 2).is_err());
        assert!(build_inclusion(&GluingCoords::from_pic(&unit(3, 1)), 1).is_err());
        assert!(mackey_table(&unit(3, 1), (2, 1)).is_err());
    }
}
