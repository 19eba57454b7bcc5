//! The bracket of E(5,10).

use crate::exactalg::poly::{CommPoly, VarSet};
use crate::exactalg::scalar::{int, Scalar};

use super::element::{pair_index, Element510, PAIRS};

/// Bracket context. `epsilon_sign` is +1 for the genuine algebra; −1 flips the
/// odd–odd bracket and exists only to check that relation checks detect it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct E510 {
    epsilon_sign: i64,
}

impl Default for E510 {
    fn default() -> Self {
        E510 { epsilon_sign: 1 }
    }
}

/// Sign of a permutation of 0..5, or 0 if an index repeats.
pub fn epsilon(p: [usize; 5]) -> i64 {
    let mut seen = [false; 5];
    for &x in &p {
        if seen[x] {
            return 0;
        }
        seen[x] = true;
    }
    let mut inv = 0;
    for a in 0..5 {
        for b in a + 1..5 {
            if p[a] > p[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

fn apply_field(x: &[CommPoly; 5], f: &CommPoly) -> CommPoly {
    (0..5).fold(CommPoly::zero(VarSet::X), |acc, j| {
        if x[j].is_zero() {
            acc
        } else {
            acc.add(&x[j].mul(&f.derivative(j)))
        }
    })
}

impl E510 {
    pub fn standard() -> Self {
        Self::default()
    }

    /// The algebra with the odd–odd bracket sign reversed (not a Lie superalgebra).
    pub fn with_flipped_epsilon() -> Self {
        E510 { epsilon_sign: -1 }
    }

    pub fn is_standard(&self) -> bool {
        self.epsilon_sign == 1
    }

    fn field_field(x: &[CommPoly; 5], y: &[CommPoly; 5]) -> [CommPoly; 5] {
        std::array::from_fn(|i| apply_field(x, &y[i]).sub(&apply_field(y, &x[i])))
    }

    /// Lie derivative of a 2-form along a vector field.
    fn lie_derivative(x: &[CommPoly; 5], b: &[CommPoly; 10]) -> [CommPoly; 10] {
        let mut out: [CommPoly; 10] = std::array::from_fn(|_| CommPoly::zero(VarSet::X));
        for (p, &(j, k)) in PAIRS.iter().enumerate() {
            let bjk = &b[p];
            if bjk.is_zero() {
                continue;
            }
            out[p] = out[p].add(&apply_field(x, bjk));
            for l in 0..5 {
                // b · (∂_l a_j) dx_l ∧ dx_k
                if l != k {
                    let c = x[j].derivative(l);
                    if !c.is_zero() {
                        let q = pair_index(l, k);
                        let s = if l < k { 1 } else { -1 };
                        out[q] = out[q].add(&bjk.mul(&c).scale(&int(s)));
                    }
                }
                // b · (∂_l a_k) dx_j ∧ dx_l
                if l != j {
                    let c = x[k].derivative(l);
                    if !c.is_zero() {
                        let q = pair_index(j, l);
                        let s = if j < l { 1 } else { -1 };
                        out[q] = out[q].add(&bjk.mul(&c).scale(&int(s)));
                    }
                }
            }
        }
        out
    }

    fn form_form(&self, a: &[CommPoly; 10], b: &[CommPoly; 10]) -> [CommPoly; 5] {
        let mut out: [CommPoly; 5] = std::array::from_fn(|_| CommPoly::zero(VarSet::X));
        for (p, &(j, k)) in PAIRS.iter().enumerate() {
            if a[p].is_zero() {
                continue;
            }
            for (q, &(l, m)) in PAIRS.iter().enumerate() {
                if b[q].is_zero() {
                    continue;
                }
                if l == j || l == k || m == j || m == k {
                    continue;
                }
                let i = 10 - j - k - l - m;
                let s = epsilon([i, j, k, l, m]) * self.epsilon_sign;
                out[i] = out[i].add(&a[p].mul(&b[q]).scale(&int(s)));
            }
        }
        out
    }

    /// Super bracket [a, b].
    pub fn bracket(&self, a: &Element510, b: &Element510) -> Element510 {
        let mut out = Element510::zero();
        let (ae, ao) = (!a.is_odd(), !a.is_even());
        let (be, bo) = (!b.is_odd(), !b.is_even());
        if ae && be {
            let f = Self::field_field(&a.field, &b.field);
            for i in 0..5 {
                out.field[i] = out.field[i].add(&f[i]);
            }
        }
        if ae && bo {
            let l = Self::lie_derivative(&a.field, &b.form);
            for p in 0..10 {
                out.form[p] = out.form[p].add(&l[p]);
            }
        }
        if ao && be {
            let l = Self::lie_derivative(&b.field, &a.form);
            for p in 0..10 {
                out.form[p] = out.form[p].sub(&l[p]);
            }
        }
        if ao && bo {
            let f = self.form_form(&a.form, &b.form);
            for i in 0..5 {
                out.field[i] = out.field[i].add(&f[i]);
            }
        }
        out
    }

    /// The involution induced by x₄ ↔ x₅. The bare substitution reverses the orientation
    /// used by the odd–odd bracket, so each degree-d component of parity π is also
    /// multiplied by (−1)^((d+π)/2).
    pub fn phi(&self, a: &Element510) -> Element510 {
        let mut out = Element510::zero();
        for (d, part) in a.split_degrees() {
            for (half, par) in [(part.even_part(), 0i64), (part.odd_part(), 1)] {
                if half.is_zero() {
                    continue;
                }
                let e = (d + par).div_euclid(2);
                let s = if e.rem_euclid(2) == 0 { 1 } else { -1 };
                out = out.add(&half.swap45().scale(&int(s)));
            }
        }
        out
    }

    /// Left side minus right side of the super Jacobi identity
    /// [a,[b,c]] = [[a,b],c] + (−1)^{|a||b|}[b,[a,c]] for homogeneous a, b.
    pub fn jacobi_defect(&self, a: &Element510, b: &Element510, c: &Element510) -> Element510 {
        let s = match (a.parity(), b.parity()) {
            (Some(x), Some(y)) => x.sign_with(y),
            _ => 1,
        };
        let lhs = self.bracket(a, &self.bracket(b, c));
        let r1 = self.bracket(&self.bracket(a, b), c);
        let r2 = self.bracket(b, &self.bracket(a, c)).scale(&Scalar::from_integer(s.into()));
        lhs.sub(&r1).sub(&r2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;

    #[test]
    fn epsilon_signs() {
        assert_eq!(epsilon([0, 1, 2, 3, 4]), 1);
        assert_eq!(epsilon([1, 0, 2, 3, 4]), -1);
        assert_eq!(epsilon([0, 0, 2, 3, 4]), 0);
    }

    #[test]
    fn odd_odd_rule() {
        let alg = E510::standard();
        // [d_{14}, d_{25}] = ε_{31425} ∂₃ ; (2,0,3,1,4) has 3 inversions
        let a = Element510::form_term(int(1), &[], 0, 3);
        let b = Element510::form_term(int(1), &[], 1, 4);
        let r = alg.bracket(&a, &b);
        assert_eq!(r, Element510::field_term(int(-1), &[], 2));
    }

    #[test]
    fn lie_derivative_keeps_closedness() {
        let alg = E510::standard();
        let x = Element510::field_term(int(1), &[4], 1);
        let c = Element510::form_term(int(1), &[], 2, 4);
        let r = alg.bracket(&x, &c);
        assert!(r.is_closed());
        assert_eq!(alg.bracket(&c, &x), r.neg());
    }
}
