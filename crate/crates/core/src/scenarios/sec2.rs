//! The classes over `H` attached to the diagram `Y_D → Y → Y_O`.
//!
//! Everything lives in `H^2(H, Res Y_D)`, which splits along
//! `Res_H Y_D = M ⊕ N_g` with `M` the first block and `N_g = Ind_K^H(gM)`
//! the remaining blocks, `K = H ∩ gHg⁻¹`.

use std::sync::Arc;

use serde_json::json;

use super::util::{combine, injective, rows_i64};
use super::{ms_in, Outcome, Params, Recorder};
use crate::cohomology::{
    cohomology, connecting, extension_class, inflate_cochain, prop07_package, pushforward, restricted_generators,
    shapiro_inverse, CohomologyGroup, CohomologyView, Complex, DoubleCosetSetup,
};
use crate::error::{Error, Result};
use crate::glattice::{
    coordinate_sublattice, direct_sum, equivariant_section, find_equivariant_iso, weyl_lattices, perm_lattice,
    same_span, trivial_lattice, Diagram, GLattice, GMap, Induction, WeylLattices,
};
use crate::groups::{block_flip_hom, conjugate_subgroup, intersection, z2, Subgroup};
use crate::zmat::{is_unimodular, IntMatrix};

pub struct BetaClasses {
    /// `H` as a group in its own right
    pub h: Subgroup,
    /// `K = H ∩ gHg⁻¹` as a subgroup of `H`
    pub k: Subgroup,
    pub yd_h: Arc<GLattice>,
    pub h2: Arc<CohomologyGroup>,
    /// `h ↦ h·d₁ − d₁` in `Z⁻[S_m/S_m-1]`
    pub alpha: Vec<i64>,
    /// connecting image of `alpha` along the bottom row over `H`
    pub beta: Vec<i64>,
    /// inflation along `p₁` of the nonzero class of `H^2(Z/2, Z)`, placed on `y12 + y21`
    pub beta_h: Vec<i64>,
    /// the same along `p₂` on `K` in `gM`, induced up to `H`
    pub beta_gh: Vec<i64>,
    pub ng_induction: Induction,
}

fn unit_col(n: usize, i: usize) -> IntMatrix {
    IntMatrix::from_fn(n, 1, |r, _| (r == i) as i64)
}

/// The nonzero class of `H^2(Z/2, Z)` inflated along `p` and pushed onto
/// coordinate `slot` of `target` (which must be fixed there).
fn inflated_class(sub: &Subgroup, block: usize, target: &Arc<GLattice>, slot: usize, budget: u128) -> Result<Vec<i64>> {
    let c2 = z2();
    let zq = Arc::new(trivial_lattice(&c2, 1));
    let hq = cohomology(&zq, 2, budget)?;
    if hq.orders() != [2] {
        return Err(Error::Internal("H^2(Z/2, Z) is not Z/2".into()));
    }
    let p = block_flip_hom(sub, block, &c2)?;
    let zk = Arc::new(trivial_lattice(sub.group(), 1));
    let inf = inflate_cochain(&Complex::new(&zq), &Complex::new(&zk), &p, 2, &hq.generators()[0])?;
    let f = GMap::new(&zk, target, unit_col(target.rank(), slot))?;
    pushforward(&f, &Complex::new(&zk), &Complex::new(target), 2, &inf)
}

impl BetaClasses {
    pub fn new(p: &WeylLattices, budget: u128) -> Result<BetaClasses> {
        let w = &p.weyl;
        let m = p.m;
        let hw = &w.h;
        let hg = hw.group().clone();
        let h = Subgroup::whole(&hg).with_name("H");
        let ghg = conjugate_subgroup(hw, w.g()?)?;
        let kw = intersection(hw, &ghg, "K")?;
        let k_elems: Vec<usize> = kw
            .embedding()
            .iter()
            .map(|&x| hw.local(x).expect("K ⊂ H"))
            .collect();
        let k = Subgroup::from_elements(&hg, &k_elems, "K")?;

        let bottom = p.diagram.bottom.restrict(&hg)?;
        let yd_h = bottom.sub().clone();
        let zc = Complex::new(bottom.quotient());
        let alpha = zc.from_fn(1, |t, out| {
            if hg.element(t[0]).apply(0) == 1 {
                out[0] = -1;
            }
            Ok(())
        })?;
        let beta = connecting(&bottom, 1, &alpha)?;
        let h2 = cohomology(&yd_h, 2, budget)?;

        let beta_h = inflated_class(&h, 0, &yd_h, 2, budget)?;

        let rest: Vec<usize> = (3..3 * m).collect();
        let (ng, ng_incl) = coordinate_sublattice(&yd_h, &rest, "N_g")?;
        let ng_k = Arc::new(ng.restrict(k.group())?);
        let (gm, _) = coordinate_sublattice(&ng_k, &[0, 1, 2], "gM")?;
        let iota = IntMatrix::from_fn(3 * (m - 1), 3, |i, j| (i == j) as i64);
        let ng_induction = Induction::new(&ng, &k, &gm, iota.clone(), iota.transpose())?;
        let on_k = inflated_class(&k, 1, &gm, 2, budget)?;
        let on_h = shapiro_inverse(&ng_induction, 2, &on_k)?;
        let beta_gh = pushforward(&ng_incl, &Complex::new(&ng), &Complex::new(&yd_h), 2, &on_h)?;

        Ok(BetaClasses {
            h,
            k,
            yd_h,
            h2,
            alpha,
            beta,
            beta_h,
            beta_gh,
            ng_induction,
        })
    }

    pub fn coords(&self, c: &[i64]) -> Result<Vec<i64>> {
        self.h2.coordinates(c)
    }

    /// `β_H + β_gH`.
    pub fn pair(&self) -> Vec<i64> {
        self.beta_h.iter().zip(&self.beta_gh).map(|(a, b)| a + b).collect()
    }
}

/// `η' = (m−1)f₁ − Σ_{i≠1} f_i` in the basis `f_k − f_1` of `I_m`.
pub fn eta_prime(m: usize) -> Vec<i64> {
    vec![-1; m - 1]
}

/// `δ(η)`: `η'` through the top row and then the left column, over `H`.
pub fn delta_eta(p: &WeylLattices) -> Result<Vec<i64>> {
    let hg = p.weyl.h.group().clone();
    let top = p.diagram.top.restrict(&hg)?;
    let left = p.diagram.left.restrict(&hg)?;
    let eta = connecting(&top, 0, &eta_prime(p.m))?;
    connecting(&left, 1, &eta)
}


fn h_local(p: &WeylLattices, sub: &Subgroup, name: &str) -> Result<Subgroup> {
    let h = &p.weyl.h;
    let elems: Vec<usize> = sub
        .embedding()
        .iter()
        .map(|&x| h.local(x).ok_or_else(|| Error::Precondition(format!("{name} is not inside H"))))
        .collect::<Result<_>>()?;
    Subgroup::from_elements(h.group(), &elems, name)
}

/// Injectivity of `H^3(W, Y_D) → H^3(H, Y_D)`, read through Shapiro for
/// `m ≥ 3`; returns the verdict with the two groups.
pub fn h3_injective(p: &WeylLattices, budget: u128) -> Result<(bool, Vec<u64>, Vec<u64>)> {
    let h = &p.weyl.h;
    let res = Arc::new(p.yd.restrict(h.group())?);
    let dst = cohomology(&res, 3, budget)?;
    let via = if p.m >= 3 { Some(&p.yd_induction) } else { None };
    let src = CohomologyView::new(&p.yd, 3, budget, via)?;
    let mat = restricted_generators(&src, &dst, &Complex::new(&p.yd), h)?;
    Ok((injective(src.orders(), dst.orders(), &mat), src.orders().to_vec(), dst.orders().to_vec()))
}

fn with_lattices(rec: &mut Recorder, m: usize, f: impl FnOnce(&mut Recorder, &WeylLattices)) {
    match weyl_lattices(m) {
        Ok(p) => f(rec, &p),
        Err(e) => rec.check(format!("m = {m}: named lattices"), || Err(e)),
    }
}

pub fn structure(params: &Params, rec: &mut Recorder) {
    for m in ms_in(params, 2, 3) {
        with_lattices(rec, m, |rec, p| {
            rec.check(format!("m = {m}: Y' is the direct sum of Y_D' and Y_O'"), || {
                let both = p.yd_prime_incl.matrix().hstack(p.yo_prime_incl.matrix());
                let ok = is_unimodular(&both);
                Ok(Outcome::pass_if(
                    ok,
                    json!({ "rank_yd_prime": p.yd_prime.rank(), "rank_yo_prime": p.yo_prime.rank(), "rank_y_prime": p.y_prime.rank() }),
                ))
            });
            rec.check(format!("m = {m}: Y_D ≅ Ind_H^W M with M spanned by y11, y22, y12 + y21"), || {
                let ind = &p.yd_induction;
                let ok = ind.cosets().len() == m && ind.small().rank() * m == p.yd.rank();
                Ok(Outcome::pass_if(
                    ok,
                    json!({ "cosets": ind.cosets().len(), "rank_m": ind.small().rank(), "rank_yd": p.yd.rank(), "labels_m": ind.small().labels() }),
                ))
            });
            rec.check(format!("m = {m}: M ≅ Z[H/H'] ⊕ Z over H"), || {
                let h1 = h_local(p, &p.weyl.h1, "H'")?;
                let perm = perm_lattice(&h1)?;
                let z = trivial_lattice(p.weyl.h.group(), 1);
                let target = Arc::new(direct_sum(&[&perm, &z], "Z[H/H'] ⊕ Z")?);
                let found = find_equivariant_iso(&p.m_h, &target, params.iso_bound)?;
                let v = match found.found() {
                    Some(f) => json!({ "outcome": found.label(), "iso": rows_i64(f.matrix()) }),
                    None => json!({ "outcome": found.label() }),
                };
                Ok(Outcome::pass_if(found.is_found(), v))
            });
            rec.check(format!("m = {m}: squares of the 3×3 diagram commute after restriction to H"), || {
                let hg = p.weyl.h.group().clone();
                let d = &p.diagram;
                let r = Diagram {
                    top: d.top.restrict(&hg)?,
                    middle: d.middle.restrict(&hg)?,
                    bottom: d.bottom.restrict(&hg)?,
                    left: d.left.restrict(&hg)?,
                    center: d.center.restrict(&hg)?,
                    right: d.right.restrict(&hg)?,
                };
                let sq = r.squares()?;
                Ok(Outcome::pass_if(
                    sq.iter().all(|(_, c)| *c),
                    json!({ "squares": sq.iter().map(|(n, c)| json!({"square": n, "commutes": c})).collect::<Vec<_>>() }),
                ))
            });
            rec.check(
                format!("m = {m}: H^1 vanishes for Y_D over W, H, H', H'', K and for Y_D', Y_O' over W"),
                || {
                    let w = &p.weyl;
                    let ghg = conjugate_subgroup(&w.h, w.g()?)?;
                    let k = intersection(&w.h, &ghg, "K")?;
                    let mut rows = Vec::new();
                    let mut ok = true;
                    let mut probe = |name: String, lat: Arc<GLattice>| -> Result<()> {
                        let h1 = cohomology(&lat, 1, params.budget)?;
                        ok &= h1.is_trivial();
                        rows.push(json!({ "case": name, "h1": h1.orders() }));
                        Ok(())
                    };
                    probe("Y_D over W".into(), p.yd.clone())?;
                    for sub in [&w.h, &w.h1, w.h2()?, &k] {
                        probe(format!("Y_D over {}", sub.name()), Arc::new(p.yd.restrict(sub.group())?))?;
                    }
                    probe("Y_D' over W".into(), p.yd_prime.clone())?;
                    probe("Y_O' over W".into(), p.yo_prime.clone())?;
                    Ok(Outcome::pass_if(ok, json!({ "cases": rows })))
                },
            );
            rec.check(format!("m = {m}: H^3(W, Y_D) → H^3(H, Y_D) is injective"), || {
                let (inj, src, dst) = h3_injective(p, params.budget)?;
                Ok(Outcome::pass_if(
                    inj,
                    json!({ "h3_w": src, "h3_h": dst, "via_shapiro": m >= 3 }),
                ))
            });
        });
    }
}

pub fn eta(params: &Params, rec: &mut Recorder) {
    for m in ms_in(params, 2, 3) {
        with_lattices(rec, m, |rec, p| {
            rec.check(format!("m = {m}: η' = (m − 1)f₁ − Σ_{{i≠1}} f_i is fixed by H and generates I_m^H"), || {
                let hg = p.weyl.h.group();
                let im_h = p.im.restrict(hg)?;
                let e = eta_prime(m);
                let fixed = im_h.is_fixed(&e)?;
                let col = IntMatrix::from_fn(m - 1, 1, |i, _| e[i]);
                let spans = same_span(&im_h.fixed_basis(), &col);
                Ok(Outcome::pass_if(fixed && spans, json!({ "eta_prime": e, "fixed": fixed, "generates": spans })))
            });
            let anchor = format!("m = {m}: δ(η) = ±(0, β_gH) in H^2(H, M) ⊕ H^2(H, N_g)");
            rec.check(anchor, || {
                let b = BetaClasses::new(p, params.budget)?;
                let de = delta_eta(p)?;
                let plus = b.h2.is_zero(&combine(&de, &b.beta_gh, -1))?;
                let minus = b.h2.is_zero(&combine(&de, &b.beta_gh, 1))?;
                let v = json!({
                    "h2_h_yd": b.h2.orders(),
                    "delta_eta": b.coords(&de)?,
                    "beta_h": b.coords(&b.beta_h)?,
                    "beta_gh": b.coords(&b.beta_gh)?,
                    "sign": if plus { Some(1) } else if minus { Some(-1) } else { None },
                });
                if m % 2 == 1 {
                    Ok(Outcome::pass_if(plus || minus, v))
                } else {
                    Ok(Outcome::reported(v))
                }
            });
        });
    }
}

fn odd_or_report(m: usize, ok: bool, v: serde_json::Value) -> Outcome {
    if m % 2 == 1 {
        Outcome::pass_if(ok, v)
    } else {
        Outcome::reported(v)
    }
}

pub fn beta(params: &Params, rec: &mut Recorder) {
    for m in ms_in(params, 2, 3) {
        with_lattices(rec, m, |rec, p| {
            let w = &p.weyl;
            let built = w
                .g()
                .and_then(|g| DoubleCosetSetup::new(&w.h, w.h2()?, g, &p.yd))
                .and_then(|s| Ok((s, BetaClasses::new(p, params.budget)?)));
            let (setup, b) = match built {
                Ok(x) => x,
                Err(e) => return rec.check(format!("m = {m}: β, β_H, β_gH over H"), || Err(e)),
            };
            let via = if m >= 3 { Some(&p.yd_induction) } else { None };
            let routing = json!({
                "h_order": b.h.order(),
                "largest_direct_rank": b.yd_h.rank(),
                "h2_w_via_shapiro": via.is_some(),
            });
            rec.check(format!("m = {m}: β is the class β_H of the first block"), || {
                let same = b.h2.is_zero(&combine(&b.beta, &b.beta_h, -1))?;
                Ok(Outcome::pass_if(same, json!({ "beta": b.coords(&b.beta)?, "beta_h": b.coords(&b.beta_h)? })))
            });
            rec.check(format!("m = {m}: β is not in the image of H^2(W, Y_D); its α is nonzero"), || {
                let r = prop07_package(&setup, &b.beta, params.budget, via)?;
                let ok = r.in_a && !r.member && r.alpha_order.is_some_and(|o| o > 1) && r.iff_holds == Some(true);
                let mut v = serde_json::to_value(&r)?;
                v["routing"] = routing.clone();
                Ok(odd_or_report(m, ok, v))
            });
            rec.check(format!("m = {m}: (β_H, β_gH) is in the image of H^2(W, Y_D)"), || {
                let r = prop07_package(&setup, &b.pair(), params.budget, via)?;
                let ok = r.member && r.iff_holds != Some(false);
                let mut v = serde_json::to_value(&r)?;
                v["routing"] = routing.clone();
                Ok(odd_or_report(m, ok, v))
            });
            rec.check(format!("m = {m}: 0 → Y_D → Y → Y_O → 0 is not split"), || {
                let left = &p.diagram.left;
                let (_, phi) = extension_class(left)?;
                let hom_ind = Induction::hom_from(left.quotient(), &p.yd_induction)?;
                let view = CohomologyView::new(hom_ind.big(), 1, params.budget, Some(&hom_ind))?;
                let coords = view.coordinates(&phi)?;
                let nonzero = coords.iter().zip(view.orders()).any(|(&c, &d)| c.rem_euclid(d as i64) != 0);
                let section = equivariant_section(left.right())?.is_some();
                Ok(odd_or_report(
                    m,
                    nonzero && !section,
                    json!({
                        "ext1_yo_yd": view.orders(), "class": coords,
                        "class_nonzero": nonzero, "equivariant_section_exists": section,
                    }),
                ))
            });
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::DEFAULT_BUDGET;

    #[test]
    fn beta_splits_and_eta_hits_the_second_component() {
        for m in [2, 3] {
            let p = weyl_lattices(m).unwrap();
            let b = BetaClasses::new(&p, DEFAULT_BUDGET).unwrap();
            let h2 = &b.h2;
            for c in [&b.beta, &b.beta_h, &b.beta_gh] {
                assert!(h2.complex().is_cocycle(2, c).unwrap());
                assert!(!h2.is_zero(c).unwrap());
            }
            assert!(h2.is_zero(&combine(&b.beta, &b.beta_h, -1)).unwrap(), "m = {m}");
            let de = delta_eta(&p).unwrap();
            let hits = h2.is_zero(&combine(&de, &b.beta_gh, -1)).unwrap() || h2.is_zero(&combine(&de, &b.beta_gh, 1)).unwrap();
            // for even m the image picks up β_H as well
            assert_eq!(hits, m % 2 == 1, "m = {m}");
        }
    }
}
