//! The acceptance criteria as runnable checks, grouped into suites.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;

use crate::abelian::FinGenAb;
use crate::bredon::oracle_table;
use crate::catalog::{
    build_complex, cone_to_c0, fixedpoint_partner, homotopy_h, homotopy_h_s, inc_map, map_c, map_e, map_g, map_gen_nm, map_i,
    map_k, map_q, same_differentials, scalar_p, trf_map, CatalogId, CatalogKind,
};
use crate::cohomology::{mackey_table, mackey_table_with, GluingCoords, MackeyTable};
use crate::complexes::ZComplex;
use crate::error::{Error, Result};
use crate::groupring::CyclicGroupCtx;
use crate::homology::homology_at;
use crate::picard::{rep_to_pic, slot_modulus, PicCoord, VirtualRep};
use crate::stratcomb::{c_set, gluing_index, verify_group, FiniteGroup};
use crate::zmat::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Catalog,
    Tate,
    Unit,
    Oracle,
    Stratcomb,
    All,
}

impl Suite {
    pub fn criteria(self) -> Vec<u8> {
        match self {
            Suite::Tate => vec![1, 2, 3],
            Suite::Unit => vec![4, 6, 7],
            Suite::Oracle => vec![5],
            Suite::Catalog => vec![8],
            Suite::Stratcomb => vec![9],
            Suite::All => (1..=9).collect(),
        }
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "catalog" => Suite::Catalog,
            "tate" => Suite::Tate,
            "unit" => Suite::Unit,
            "oracle" => Suite::Oracle,
            "stratcomb" => Suite::Stratcomb,
            "all" => Suite::All,
            _ => return Err(Error::Parse(format!("unknown suite {s:?}"))),
        })
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] criterion {}: {} ({:.2?} of {:?}) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed,
            self.budget,
            self.detail
        )
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Validation(msg()))
    }
}

fn pow(p: u64, k: u32) -> BigInt {
    BigInt::from(p).pow(k)
}

fn homology(x: &ZComplex, k: i64) -> Result<FinGenAb> {
    Ok(homology_at(x, k)?.group)
}

fn criterion_tate() -> Result<String> {
    let mut checked = 0;
    for p in [3, 5] {
        for i in 0..=2 {
            let t = build_complex(p, CatalogId::new(CatalogKind::T, i, 0))?.underlying();
            for k in -40..=40 {
                let want = if k % 2 == 0 { FinGenAb::cyclic(pow(p, i + 1)) } else { FinGenAb::zero() };
                let got = homology(&t, k)?;
                ensure(got == want, || format!("H_{k}(T^{i}_0) = {got} for p = {p}, expected {want}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} groups"))
}

fn criterion_group_cohomology() -> Result<String> {
    let mut checked = 0;
    for p in [3, 5] {
        for a in 1..=3 {
            let z = build_complex(p, CatalogId::new(CatalogKind::Z, a, 0))?.underlying();
            for k in -41..=40 {
                let want = if k == 0 {
                    FinGenAb::free(1)
                } else if k < 0 && k % 2 == 0 {
                    FinGenAb::cyclic(pow(p, a))
                } else {
                    FinGenAb::zero()
                };
                let got = homology(&z, k)?;
                ensure(got == want, || format!("H_{k}(Z^{a}_0) = {got} for p = {p}, expected {want}"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} groups"))
}

fn criterion_thh() -> Result<String> {
    let mut checked = 0;
    for p in [3, 5] {
        let c = build_complex(p, CatalogId::new(CatalogKind::C, 0, 0))?.underlying();
        for k in -40..=41 {
            let want = if k >= 0 && k % 2 == 0 { FinGenAb::cyclic(p) } else { FinGenAb::zero() };
            let got = homology(&c, k)?;
            ensure(got == want, || format!("H_{k}(C^0_0) = {got} for p = {p}, expected {want}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} groups"))
}

fn criterion_unit() -> Result<String> {
    for (p, n) in [(3, 1), (3, 2), (3, 3), (5, 2)] {
        let t = mackey_table(&PicCoord::unit(p, n)?, (-20, 20))?;
        for a in 0..=n {
            for i in -20..=20 {
                let want = if i == 0 { FinGenAb::free(1) } else { FinGenAb::zero() };
                let got = t.value(a, i).cloned().unwrap_or_default();
                ensure(got == want, || format!("({p},{n}) level {a} degree {i}: {got}"))?;
            }
        }
        for a in 0..n as usize {
            let one = Matrix::scalar(&BigInt::from(1), 1);
            ensure(t.inc[a][&0].matrix == one, || format!("({p},{n}) inclusion into level {a} is {}", t.inc[a][&0].describe()))?;
            ensure(t.trf[a][&0].matrix == scalar_p(p, 1), || format!("({p},{n}) transfer out of level {a} is {}", t.trf[a][&0].describe()))?;
        }
    }
    Ok("4 groups, all levels, |i| ≤ 20".into())
}

/// The representations of the oracle criterion.
pub const ORACLE_REPS: [&str; 6] = ["triv", "rho(1)", "rho(3)", "rho(1), rho(3)", "rho(1)*2", "triv, rho(1)"];

fn criterion_oracle() -> Result<String> {
    let (p, n) = (3, 2);
    let mut checked = 0;
    for spec in ORACLE_REPS {
        let v: VirtualRep = spec.parse()?;
        let window = (0, 2 * v.dim() + 2);
        let oracle = oracle_table(p, n, &v, window)?;
        let engine = mackey_table(&rep_to_pic(p, n, &v)?.neg(), window)?;
        for a in 0..=n as usize {
            for (i, g) in &oracle.values[a] {
                let e = &engine.values[a][i];
                ensure(g == e, || format!("S^({v}), level {a}, degree {i}: oracle {g}, engine {e}"))?;
                checked += 1;
            }
        }
        for a in 0..n as usize {
            for (i, h) in &oracle.inc[a] {
                let e = &engine.inc[a][i];
                ensure(h.equivalent_up_to_basis(e), || {
                    format!("S^({v}), inclusion into level {a}, degree {i}: oracle {}, engine {}", h.describe(), e.describe())
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} values and inclusions"))
}

/// Picard coordinates used by the well-definedness and suspension criteria.
pub fn sample_coords() -> Result<Vec<PicCoord>> {
    let mut out = vec![
        PicCoord::parse(5, 1, "0,0;2")?,
        PicCoord::parse(5, 1, "1,-1;2")?,
        PicCoord::parse(5, 1, "-2,1;3")?,
        PicCoord::parse(5, 1, "3,2;4")?,
        PicCoord::parse(3, 2, "0,0,0;2,1")?,
        PicCoord::parse(3, 2, "1,-1,0;4,2")?,
        PicCoord::parse(3, 2, "2,0,-1;5,1")?,
        PicCoord::parse(3, 2, "0,1,1;7,2")?,
    ];
    out.push(rep_to_pic(3, 2, &"rho(1), rho(3)*-1".parse()?)?);
    out.push(rep_to_pic(5, 1, &"rho(2)*2".parse()?)?);
    Ok(out)
}

const WINDOW: (i64, i64) = (-10, 10);

fn criterion_picard() -> Result<String> {
    let mut compared = 0;
    for c in sample_coords()?.into_iter().filter(|c| (c.p, c.n) == (5, 1) || (c.p, c.n) == (3, 2)) {
        let base = mackey_table_with(&GluingCoords::from_raw(&c), &c, WINDOW)?;
        let n = c.n as usize;
        let mut variants: Vec<(String, GluingCoords)> = Vec::new();
        for mask in 1u32..(1 << n) {
            let mut flipped = c.clone();
            for s in 0..n {
                if mask & (1 << s) != 0 {
                    flipped.gamma[s] = slot_modulus(c.p, c.n, s + 1) - flipped.gamma[s];
                }
            }
            variants.push((format!("sign flip {mask:b}"), GluingCoords::from_raw(&flipped)));
        }
        for s in 1..=n {
            for k in [1, 2, -1] {
                variants.push((format!("lift shift {k} in slot {s}"), GluingCoords::from_raw(&c).with_lift_shift(s, k)));
            }
        }
        for (what, coords) in variants {
            let t = mackey_table_with(&coords, &c, WINDOW)?;
            ensure(t.equivalent(&base), || format!("{c}: {what} changes the table"))?;
            compared += 1;
        }
    }
    Ok(format!("{compared} variant tables"))
}

fn criterion_suspension() -> Result<String> {
    let mut compared = 0;
    let mut coords = sample_coords()?;
    coords.push(PicCoord::unit(3, 3)?);
    coords.push(rep_to_pic(3, 2, &"rho(1)".parse()?)?);
    for c in coords {
        let base = mackey_table(&c, WINDOW)?;
        let two = mackey_table(&c.add(&PicCoord::suspension(c.p, c.n, 2)?)?, WINDOW)?;
        ensure(two.is_shift_of(&base, -2), || format!("{c}: adding β₀ = 2 is not the shift i ↦ i − 2"))?;
        let one = mackey_table(&c.add(&rep_to_pic(c.p, c.n, &VirtualRep::triv(1))?)?, WINDOW)?;
        ensure(one.is_shift_of(&base, -1), || format!("{c}: adding ρ_triv is not the shift i ↦ i − 1"))?;
        compared += 2;
    }
    Ok(format!("{compared} shifted tables"))
}

fn criterion_catalog() -> Result<String> {
    let degrees = -10..=12;
    let mut checks = 0usize;
    for p in [3, 5] {
        for r in 0..=3 {
            let ctx = CyclicGroupCtx::new(p, r)?;
            for idx in 0..=3 {
                for kind in [CatalogKind::Z, CatalogKind::C, CatalogKind::T, CatalogKind::S] {
                    let id = CatalogId::new(kind, idx, r);
                    let x = build_complex(p, id)?;
                    x.check_d_squared(degrees.clone())?;
                    checks += 1;
                    if let Some(partner) = fixedpoint_partner(id) {
                        same_differentials(&x.cp_fixedpoints()?, &build_complex(p, partner)?, degrees.clone())?;
                        let inc = inc_map(&x)?;
                        let trf = trf_map(&x)?;
                        inc.validate(degrees.clone())?;
                        trf.validate(degrees.clone())?;
                        let q = p.pow(r - 1) as usize;
                        for n in degrees.clone() {
                            let m = trf.comp(n).mul(&inc.comp(n));
                            ensure(m == scalar_p(p, q * x.rank(n)), || format!("trf∘inc ≠ p on {id:?} in degree {n}"))?;
                        }
                        checks += 4;
                    }
                }
                if idx >= 1 {
                    map_q(ctx, idx)?.validate(degrees.clone())?;
                    checks += 1;
                }
                map_e(ctx, idx).validate(degrees.clone())?;
                map_g(ctx, idx).validate(degrees.clone())?;
                map_c(ctx, idx).validate(degrees.clone())?;
                checks += 3;
            }
            build_complex(p, CatalogId::new(CatalogKind::Ctilde, 0, r))?.check_d_squared(degrees.clone())?;
            map_gen_nm(ctx).validate(degrees.clone())?;
            map_i(ctx).validate(degrees.clone())?;
            map_k(ctx).validate(degrees.clone())?;
            let iso = cone_to_c0(ctx);
            same_differentials(&iso.source, &iso.target, degrees.clone())?;
            checks += 5;
            if r >= 1 {
                homotopy_h(ctx)?.validate(degrees.clone())?;
                homotopy_h_s(ctx)?.validate(degrees.clone())?;
                checks += 2;
            }
        }
    }
    Ok(format!("{checks} checks"))
}

fn criterion_stratcomb() -> Result<String> {
    let mut pairs = 0;
    for name in ["S3", "A4", "C27", "D4"] {
        pairs += verify_group(&FiniteGroup::parse(name)?)?;
    }
    let g = FiniteGroup::parse("A4")?;
    let c3 = g.parse_subgroup("(1 2 3)")?;
    let c2 = g.parse_subgroup("(1 2)(3 4)")?;
    let v4 = g.parse_subgroup("(1 2)(3 4);(1 3)(2 4)")?;
    ensure(c_set(&g, &c3, &g.whole()).is_empty(), || "C(C3, A4) is not empty".into())?;
    let d = gluing_index(&g, &c2, &v4);
    ensure(d.len() == 1 && d[0].tate_name == "C2", || format!("C2 → V4 data: {d:?}"))?;
    let d = gluing_index(&g, &v4, &g.whole());
    ensure(d.len() == 1 && d[0].tate_name == "C3", || format!("V4 → A4 data: {d:?}"))?;
    Ok(format!("{pairs} subgroup pairs"))
}

type Check = fn() -> Result<String>;

fn criterion(id: u8) -> (&'static str, Duration, Check) {
    let s = Duration::from_secs;
    match id {
        1 => ("Tate ring H_*(T^i_0)", s(1), criterion_tate),
        2 => ("group cohomology H_*(Z^a_0)", s(1), criterion_group_cohomology),
        3 => ("THH(F_p) check H_*(C^0_0)", s(1), criterion_thh),
        4 => ("unit Mackey functor", s(30), criterion_unit),
        5 => ("oracle equivalence", s(120), criterion_oracle),
        6 => ("Picard well-definedness", s(60), criterion_picard),
        7 => ("suspension coherence", s(60), criterion_suspension),
        8 => ("catalog validators", s(10), criterion_catalog),
        9 => ("stratification combinatorics", s(30), criterion_stratcomb),
        _ => panic!("criteria are numbered 1 to 9"),
    }
}

/// Runs one criterion; it passes when every check holds within its time budget.
pub fn run_criterion(id: u8) -> CriterionReport {
    let (name, budget, check) = criterion(id);
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let (passed, detail) = match outcome {
        Ok(d) if elapsed <= budget => (true, d),
        Ok(d) => (false, format!("{d}; over the time budget")),
        Err(e) => (false, e.to_string()),
    };
    CriterionReport { id, name, passed, detail, elapsed, budget }
}

pub fn run_suite(suite: Suite) -> Vec<CriterionReport> {
    suite.criteria().into_iter().map(run_criterion).collect()
}

/// A unit table, used by callers that want a quick smoke check.
pub fn unit_table(p: u64, n: u32, window: (i64, i64)) -> Result<MackeyTable> {
    mackey_table(&PicCoord::unit(p, n)?, window)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_cover_every_criterion() {
        let mut all: Vec<u8> = ["catalog", "tate", "unit", "oracle", "stratcomb"]
            .iter()
            .flat_map(|s| s.parse::<Suite>().unwrap().criteria())
            .collect();
        all.sort_unstable();
        assert_eq!(all, Suite::All.criteria());
        assert!("everything".parse::<Suite>().is_err());
    }

    #[test]
    fn fast_criteria() {
        for id in [1, 2, 3] {
            let r = run_criterion(id);
            assert!(r.detail.contains("groups"), "{r}");
        }
    }
}
