//! Operators in S # U(sl₃) as formal words, evaluated on module elements.

use std::fmt;

use num_traits::{One, Zero};

use crate::e510::GeneratorId;
use crate::exactalg::coeff::Coeff;
use crate::exactalg::scalar::{int, Scalar};
use crate::verma::{Engine, MElement};

/// A word in S # U(sl₃) (plus any other generator acting on M(V ⊗ T)).
/// `Prod` factors are applied right to left.
#[derive(Clone, PartialEq)]
pub enum DOp {
    Gen(GeneratorId),
    Const(Scalar),
    Sum(Vec<DOp>),
    Prod(Vec<DOp>),
}

use GeneratorId as G;

impl DOp {
    pub fn id() -> DOp {
        DOp::Const(Scalar::one())
    }

    pub fn zero() -> DOp {
        DOp::Sum(Vec::new())
    }

    pub fn gen(g: GeneratorId) -> DOp {
        DOp::Gen(g)
    }

    pub fn scalar(c: Scalar) -> DOp {
        DOp::Const(c)
    }

    pub fn dhat(i: u8) -> DOp {
        DOp::Gen(G::DHat(i))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            DOp::Const(c) => c.is_zero(),
            DOp::Sum(v) => v.iter().all(|x| x.is_zero()),
            DOp::Prod(v) => v.iter().any(|x| x.is_zero()),
            DOp::Gen(_) => false,
        }
    }

    pub fn add(&self, o: &DOp) -> DOp {
        let mut v = match self {
            DOp::Sum(v) => v.clone(),
            x => vec![x.clone()],
        };
        match o {
            DOp::Sum(w) => v.extend(w.iter().cloned()),
            x => v.push(x.clone()),
        }
        DOp::Sum(v)
    }

    pub fn sub(&self, o: &DOp) -> DOp {
        self.add(&o.scale(&-Scalar::one()))
    }

    /// Composition `self ∘ o` (o is applied first).
    pub fn mul(&self, o: &DOp) -> DOp {
        let mut v = match self {
            DOp::Prod(v) => v.clone(),
            x => vec![x.clone()],
        };
        match o {
            DOp::Prod(w) => v.extend(w.iter().cloned()),
            x => v.push(x.clone()),
        }
        DOp::Prod(v)
    }

    pub fn scale(&self, c: &Scalar) -> DOp {
        DOp::Const(c.clone()).mul(self)
    }

    /// self + c·1
    pub fn shifted(&self, c: i64) -> DOp {
        if c == 0 {
            return self.clone();
        }
        self.add(&DOp::Const(int(c)))
    }

    pub fn pow(&self, n: u32) -> DOp {
        DOp::Prod(vec![self.clone(); n as usize])
    }

    /// A^{[n]} = A(A−1)⋯(A−n+1).
    pub fn falling(&self, n: u32) -> DOp {
        DOp::Prod((0..n as i64).map(|i| self.shifted(-i)).collect())
    }

    pub fn product(ops: impl IntoIterator<Item = DOp>) -> DOp {
        let mut acc = DOp::Prod(Vec::new());
        for o in ops {
            acc = acc.mul(&o);
        }
        acc
    }

    pub fn apply<C: Coeff>(&self, eng: &Engine, m: &MElement<C>) -> MElement<C> {
        if m.is_zero() {
            return m.clone();
        }
        match self {
            DOp::Gen(g) => eng.act_gen(*g, m),
            DOp::Const(c) => m.scale(c),
            DOp::Sum(v) => {
                let mut acc = MElement::zero(&m.ctx);
                for x in v {
                    acc = acc.add(&x.apply(eng, m));
                }
                acc
            }
            DOp::Prod(v) => {
                let mut cur = m.clone();
                for x in v.iter().rev() {
                    cur = x.apply(eng, &cur);
                    if cur.is_zero() {
                        break;
                    }
                }
                cur
            }
        }
    }
}

impl fmt::Debug for DOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for DOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DOp::Gen(g) => write!(f, "{}", g.pretty()),
            DOp::Const(c) => write!(f, "{}", crate::exactalg::scalar::display_scalar(c)),
            DOp::Sum(v) if v.is_empty() => write!(f, "0"),
            DOp::Sum(v) => {
                write!(f, "(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            DOp::Prod(v) if v.is_empty() => write!(f, "1"),
            DOp::Prod(v) => {
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, "·")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
        }
    }
}

pub fn h1() -> DOp {
    DOp::gen(G::H1)
}

pub fn h2() -> DOp {
    DOp::gen(G::H2)
}

pub fn f1() -> DOp {
    DOp::gen(G::F1)
}

pub fn f2() -> DOp {
    DOp::gen(G::F2)
}

pub fn f12() -> DOp {
    DOp::gen(G::F12)
}

/// h′{s} = h₁ + h₂ + s + 1
pub fn h_prime(s: i64) -> DOp {
    h1().add(&h2()).shifted(s + 1)
}

/// h₂{s} = h₂ + s
pub fn h2_shift(s: i64) -> DOp {
    h2().shifted(s)
}

/// B = f₁₂h₁ + f₂f₁
pub fn b_op() -> DOp {
    f12().mul(&h1()).add(&f2().mul(&f1()))
}

/// B = f₁₂(h₁+1) + f₁f₂, the second expression.
pub fn b_op_alt() -> DOp {
    f12().mul(&h1().shifted(1)).add(&f1().mul(&f2()))
}

/// C = ∂̂₁f₂ − ∂̂₂f₁₂
pub fn c_op() -> DOp {
    DOp::dhat(1).mul(&f2()).sub(&DOp::dhat(2).mul(&f12()))
}

/// K{s} = C(h′ + s) + ∂̂₂B, with h′ = h′{0}.
pub fn k_op(s: i64) -> DOp {
    c_op().mul(&h_prime(s)).add(&DOp::dhat(2).mul(&b_op()))
}

/// K written as ∂̂₁f₂h′ − ∂̂₂(f₁₂h₂ − f₁f₂).
pub fn k_op_expanded() -> DOp {
    let inner = f12().mul(&h2()).sub(&f1().mul(&f2()));
    DOp::dhat(1).mul(&f2()).mul(&h_prime(0)).sub(&DOp::dhat(2).mul(&inner))
}

/// D_i{s}, i ∈ {1,2,3}.
pub fn d_op(i: u8, s: i64) -> DOp {
    match i {
        1 => DOp::dhat(1)
            .mul(&h1())
            .mul(&h_prime(s))
            .add(&DOp::dhat(2).mul(&f1()).mul(&h_prime(s)))
            .add(&DOp::dhat(3).mul(&b_op())),
        2 => DOp::dhat(2).mul(&h2_shift(s)).add(&DOp::dhat(3).mul(&f2())),
        3 => DOp::dhat(3),
        _ => panic!("D index must be 1, 2 or 3"),
    }
}

/// ∂̂^a as a word.
pub fn dhat_power(a: [u32; 3]) -> DOp {
    DOp::product((0..3).flat_map(|i| std::iter::repeat(DOp::dhat(i as u8 + 1)).take(a[i] as usize)))
}
