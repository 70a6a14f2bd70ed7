//! The class of `0 → Y → Y' → I_2m → 0` over `W` and its split into a
//! 2-primary and an odd part.

use serde_json::json;

use super::util::combine;
use super::{ms_in, Outcome, Params, Recorder};
use crate::cohomology::{class_order_decomposition, cohomology, connecting, CohClass, Complex};
use crate::error::Result;
use crate::glattice::{weyl_lattices, WeylLattices, ShortExactSeq};

/// `res_W α_2m`: `g ↦ g·d₁ − d₁` on `I_2m` (basis `d_i − d_1`).
pub fn res_alpha_2m(p: &WeylLattices) -> Result<Vec<i64>> {
    let w = &p.weyl.w;
    Complex::new(&p.i2m).from_fn(1, |t, out| {
        let j = w.element(t[0]).apply(0);
        if j > 0 {
            out[j - 1] = 1;
        }
        Ok(())
    })
}

/// `γ = δ(res_W α_2m) ∈ H^2(W, Y)` through the middle row.
pub fn gamma_class(p: &WeylLattices, budget: u128) -> Result<CohClass> {
    let z = connecting(&p.diagram.middle, 1, &res_alpha_2m(p)?)?;
    let h2 = cohomology(&p.y, 2, budget)?;
    h2.class(z)
}

pub fn decomposition(params: &Params, rec: &mut Recorder) {
    for m in ms_in(params, 3, 3) {
        let p = match weyl_lattices(m) {
            Ok(p) => p,
            Err(e) => return rec.check(format!("m = {m}: named lattices"), || Err(e)),
        };
        let gamma = match gamma_class(&p, params.budget) {
            Ok(g) => g,
            Err(e) => return rec.check(format!("m = {m}: γ in H^2(W, Y)"), || Err(e)),
        };
        rec.check(
            format!("m = {m}: γ = γ_2 + γ_m with γ_i of order i, for γ of order 2m in H^2(W, Y)"),
            || {
                let (two, odd) = class_order_decomposition(&gamma);
                let sum_ok = two.add(&odd).same_class(&gamma);
                let ok = gamma.order() == 2 * m as u64 && two.order() == 2 && odd.order() == m as u64 && sum_ok;
                Ok(Outcome::pass_if(
                    ok,
                    json!({
                        "h2_w_y": gamma.group.orders(),
                        "gamma": gamma.coords, "gamma_order": gamma.order(),
                        "gamma_2": two.coords, "order_2": two.order(),
                        "gamma_odd": odd.coords, "order_odd": odd.order(),
                        "sum_is_gamma": sum_ok,
                    }),
                ))
            },
        );
        rec.check(
            format!("m = {m}: the class of 0 → Y → Y_2 → I_m → 0 is twice γ"),
            || {
                let ses = ShortExactSeq::new(p.y_in_y2.clone(), p.y2_to_im.clone())?;
                let gamma2 = connecting(&ses, 1, &super::sec1::alpha_m(&p)?)?;
                let twice: Vec<i64> = gamma.rep.iter().map(|x| 2 * x).collect();
                let h2 = &gamma.group;
                let equal = h2.is_zero(&combine(&gamma2, &twice, -1))?;
                let g2 = h2.coordinates(&gamma2)?;
                Ok(Outcome::pass_if(
                    equal,
                    json!({ "y2_class": g2, "order": h2.class_order(&g2), "equals_twice_gamma": equal }),
                ))
            },
        );
    }
}
