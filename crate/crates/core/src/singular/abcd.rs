//! The sℓ(2)-quadruple a, b, c, d in U(L₋) and its multiplication rules.

use thiserror::Error;

use crate::classify::notation::*;
use crate::e510::GeneratorId;
use crate::verma::VModule;

#[derive(Debug, Clone, PartialEq)]
pub struct Abcd {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
    pub d: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("relation {0} fails")]
pub struct AbcdError(pub String);

/// Outcome of one relation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub group: &'static str,
    pub name: String,
    pub holds: bool,
}

/// sℓ(2) generator acting on a pure U(L₋) element (adjoint action).
pub fn sl2(g: GeneratorId, u: &Poly) -> Poly {
    u.act(g, VModule::p(0)).expect("pure U(L-) element")
}

/// a = d⁺₁₂₃, b = f₃a, c = ½f₃b, d = d⁻₁₂₃, after checking every relation.
pub fn build_abcd() -> Result<Abcd, AbcdError> {
    let q = quadruple();
    match q.relations().into_iter().find(|r| !r.holds) {
        Some(r) => Err(AbcdError(format!("{} {}", r.group, r.name))),
        None => Ok(q),
    }
}

fn quadruple() -> Abcd {
    let a = dps(&[1, 2, 3]);
    let b = sl2(GeneratorId::F3, &a);
    let c = sl2(GeneratorId::F3, &b).scale(&scalar(1, 2));
    Abcd { a, b, c, d: dms(&[1, 2, 3]) }
}

impl Abcd {
    pub fn ladder(&self) -> [&Poly; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// Every relation of the calculus, evaluated by direct multiplication in U(L₋).
    pub fn relations(&self) -> Vec<RelationCheck> {
        let mut out = Vec::new();
        let mut push = |group: &'static str, name: String, holds: bool| out.push(RelationCheck { group, name, holds });
        let l = self.ladder();
        let names = ["a", "b", "c", "d"];
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let (fm, fp) = (fam_dm(), fam_dp());

        push("formulas", "b = <d-,d+,d+> - Dhat(d+)".into(), *b == cyc(&fm, &fp, &fp) - delta_hat(&fp));
        push("formulas", "c = <d-,d-,d+> - Dhat(d-)".into(), *c == cyc(&fm, &fm, &fp) - delta_hat(&fm));

        use GeneratorId::{E3Sl2, F3};
        for k in 0..4 {
            let f = sl2(F3, l[k]);
            let want = if k < 3 { l[k + 1].scale(&scalar(k as i64 + 1, 1)) } else { Poly::zero() };
            push("ladder", format!("f3 {} = {}·{}", names[k], k + 1, names.get(k + 1).unwrap_or(&"0")), f == want);
            let e = sl2(E3Sl2, l[k]);
            let want = if k > 0 { l[k - 1].scale(&scalar(4 - k as i64, 1)) } else { Poly::zero() };
            push("ladder", format!("e3 {} = {}·{}", names[k], 4 - k, if k > 0 { names[k - 1] } else { "0" }), e == want);
        }

        // d⁺ᵢ X_{k+1} = −d⁻ᵢ X_k with X_{−1} = X_4 = 0, on both sides
        for i in 1..=3u8 {
            for k in 0..=4usize {
                let lhs = |left: bool| match k {
                    4 => Poly::zero(),
                    _ if left => dp(i) * l[k],
                    _ => l[k] * dp(i),
                };
                let rhs = |left: bool| match k {
                    0 => Poly::zero(),
                    _ if left => -(dm(i) * l[k - 1]),
                    _ => -(l[k - 1] * dm(i)),
                };
                for left in [true, false] {
                    let side = if left { "left" } else { "right" };
                    push("d-rules", format!("{side} i={i} k={k}"), lhs(left) == rhs(left));
                }
            }
        }

        // X_k Δ⁻ = −X_{k+1} Δ⁺ for Δ±(∂_*), Δ̂(d±_*), on both sides
        let v = fam_var();
        let pairs: [(&str, Poly, Poly); 2] = [
            ("D(v)", delta_minus(&v), delta_plus(&v)),
            ("Dhat(d)", delta_hat(&fm), delta_hat(&fp)),
        ];
        for (name, minus, plus) in &pairs {
            for k in 0..=4usize {
                for left in [true, false] {
                    let mul = |x: &Poly, y: &Poly| if left { y * x } else { x * y };
                    let lhs = if k == 0 { Poly::zero() } else { mul(l[k - 1], minus) };
                    let rhs = if k == 4 { Poly::zero() } else { -mul(l[k], plus) };
                    let side = if left { "left" } else { "right" };
                    push("contraction", format!("{name} {side} k={k}"), lhs == rhs);
                }
            }
        }

        let dhm = delta_hat(&fm);
        let three = scalar(3, 1);
        push("products", "ab = 0".into(), (a * b).is_zero());
        push("products", "ba = 0".into(), (b * a).is_zero());
        push("products", "ac = ca".into(), a * c == c * a);
        push("products", "bc - cb = 3(da - ad)".into(), b * c - c * b == (d * a - a * d).scale(&three));
        push("products", "cd = 0".into(), (c * d).is_zero());
        push("products", "dc = 0".into(), (d * c).is_zero());
        push("products", "bd = db".into(), b * d == d * b);
        push("products", "ad + da = -Dhat(d-) b".into(), a * d + d * a == -(&dhm * b));
        let da_ad = d * a - a * d;
        push("products", "da - ad = 2da + Dhat(d-) b".into(), da_ad == (d * a).scale(&scalar(2, 1)) + &dhm * b);
        push("invariant", "f3(da - ad) = 0".into(), sl2(F3, &da_ad).is_zero());
        push("invariant", "e3(da - ad) = 0".into(), sl2(E3Sl2, &da_ad).is_zero());
        push("invariant", "da - ad != 0".into(), !da_ad.is_zero());
        out
    }

    /// Printed forms of three product relations that do not hold as printed; each is paired with the
    /// form checked in `relations` (the sℓ(2) images of ab = 0, ba = 0 and ac = ca decide them).
    pub fn printed_variants(&self) -> Vec<(RelationCheck, &'static str)> {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let chk = |name: &str, holds: bool| RelationCheck { group: "printed", name: name.into(), holds };
        vec![
            (chk("bc - cb = 3(ad - da)", b * c - c * b == (a * d - d * a).scale(&scalar(3, 1))), "bc - cb = 3(da - ad)"),
            (chk("bd = 0", (b * d).is_zero()), "cd = 0"),
            (chk("db = 0", (d * b).is_zero()), "dc = 0"),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadruple_builds() {
        let q = build_abcd().unwrap();
        assert_eq!(q.a, dps(&[1, 2, 3]));
        assert_eq!(q.d, dms(&[1, 2, 3]));
    }
}
