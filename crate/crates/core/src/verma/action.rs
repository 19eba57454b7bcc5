//! Action of E(3,6) on M(V ⊗ T), obtained by commuting generators to the right.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, RwLock};

use num_traits::{One, Zero};
use once_cell::sync::Lazy;

use crate::e510::{express, Element510, GeneratorId, Parity, E510};
use crate::exactalg::coeff::Coeff;
use crate::exactalg::poly::Exp;
use crate::exactalg::scalar::{int, Scalar};
use crate::exactalg::theta::ThetaPoly;

use super::module::{Context, Family, Key, MElement, TModule, VModule};
use super::monomial::{Letter, SuperMonomial, UElem, ULminus};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VermaError {
    #[error("operator `{0}` does not lie in E(3,6): {1}")]
    NotInAlgebra(String, String),
    #[error("operator `{0}` is not homogeneous in parity")]
    MixedParity(String),
    #[error("{0}")]
    Relation(String),
    #[error("element is not a weight vector for {0}")]
    NotWeightVector(String),
    #[error("{0}")]
    Context(String),
}

/// Action of a degree-0 element on V and T.
#[derive(Debug, Clone)]
struct G0Action {
    /// image of x_j (j = 0,1,2) as combination of x_i
    x_img: [Vec<(usize, Scalar)>; 3],
    /// image of ∂_k as combination of ∂_j
    d_img: [Vec<(usize, Scalar)>; 3],
    /// image of z₊ = x₄, z₋ = x₅
    z_img: [Vec<(usize, Scalar)>; 2],
    /// coefficient of θ
    chi: Scalar,
}

#[derive(Debug)]
enum Bracketed {
    Zero,
    Lminus(Vec<(Letter, Scalar)>),
    Op(Arc<OpTable>),
}

/// Data for a homogeneous element of degree ≥ 0.
#[derive(Debug)]
pub struct OpTable {
    elem: Element510,
    odd: bool,
    degree: i64,
    g0: Option<G0Action>,
    brackets: Vec<Bracketed>,
}

/// A validated operator: an L₋ part acting by left multiplication plus tables for the rest.
#[derive(Debug, Clone)]
pub struct Operator {
    pub elem: Element510,
    lminus: Vec<(Letter, Scalar)>,
    tables: Vec<Arc<OpTable>>,
}

impl Operator {
    pub fn is_odd(&self) -> bool {
        self.elem.parity() == Some(Parity::Odd)
    }
}

fn linear_coeff(p: &crate::exactalg::poly::CommPoly, var: usize) -> Scalar {
    let mut e: Exp = [0; 5];
    e[var] = 1;
    p.coeff(&e)
}

fn g0_action(g: &Element510) -> G0Action {
    // g = Σ_j a_j ∂_j with a_j = Σ_i A_ij x_i
    let a = |i: usize, j: usize| linear_coeff(&g.field[j], i);
    let collect = |it: Vec<(usize, Scalar)>| it.into_iter().filter(|(_, c)| !c.is_zero()).collect::<Vec<_>>();
    G0Action {
        x_img: std::array::from_fn(|j| collect((0..3).map(|i| (i, a(i, j))).collect())),
        d_img: std::array::from_fn(|k| collect((0..3).map(|j| (j, -a(k, j))).collect())),
        z_img: std::array::from_fn(|j| collect((0..2).map(|i| (i, a(3 + i, 3 + j))).collect())),
        chi: -(a(3, 3) + a(4, 4)) / int(2),
    }
}

/// Derivation action of `img` (images of the three generators) on a monomial.
fn derive_poly(e: &[u16; 3], img: &[Vec<(usize, Scalar)>; 3]) -> Vec<([u16; 3], Scalar)> {
    let mut out = Vec::new();
    for j in 0..3 {
        if e[j] == 0 {
            continue;
        }
        for (i, c) in &img[j] {
            let mut e2 = *e;
            e2[j] -= 1;
            e2[*i] += 1;
            out.push((e2, c * int(e[j] as i64)));
        }
    }
    out
}

/// Engine holding the derived tables.
pub struct Engine {
    alg: E510,
    ulm: ULminus,
    cache: Mutex<HashMap<Element510, Arc<OpTable>>>,
    gens: Mutex<HashMap<GeneratorId, Operator>>,
    images: RwLock<HashMap<ImageKey, Image>>,
    letter_weights: [[Scalar; 4]; 9],
}

/// (generator, V, r, basis vector)
type ImageKey = (GeneratorId, VModule, Option<u32>, Key);
/// Image of a basis vector: terms with coefficient a + bθ.
type Image = Arc<Vec<(Key, Scalar, Scalar)>>;

const IMAGE_CACHE_LIMIT: usize = 1 << 22;

static STANDARD: Lazy<Engine> = Lazy::new(|| Engine::new(E510::standard()).expect("standard algebra"));

/// Weight of a basis vector: (h₁, h₂, h₃, Y-constant, Y-θ-coefficient).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KeyWeight {
    pub h1: i64,
    pub h2: i64,
    pub h3: i64,
    pub y: Scalar,
    pub theta: bool,
}

impl Engine {
    pub fn standard() -> &'static Engine {
        &STANDARD
    }

    pub fn new(alg: E510) -> Result<Self, VermaError> {
        let ulm = ULminus::from_algebra(&alg).map_err(|e| VermaError::Relation(e.to_string()))?;
        let mut letter_weights: [[Scalar; 4]; 9] = Default::default();
        for l in Letter::all() {
            let x = l.generator().realize();
            for (n, h) in [GeneratorId::H1, GeneratorId::H2, GeneratorId::H3, GeneratorId::Y].iter().enumerate() {
                let b = alg.bracket(&h.realize(), &x);
                letter_weights[l.index()][n] = if b.is_zero() { Some(Scalar::zero()) } else { b.is_scalar_multiple_of(&x) }
                    .ok_or_else(|| VermaError::Relation(format!("{} is not an eigenvector of {}", l.generator(), h)))?;
            }
        }
        Ok(Engine { alg, ulm, cache: Mutex::new(HashMap::new()), gens: Mutex::new(HashMap::new()), images: RwLock::new(HashMap::new()), letter_weights })
    }

    pub fn algebra(&self) -> &E510 {
        &self.alg
    }

    pub fn ulm(&self) -> &ULminus {
        &self.ulm
    }

    fn table(&self, g: &Element510) -> Result<Arc<OpTable>, VermaError> {
        if let Some(t) = self.cache.lock().unwrap().get(g) {
            return Ok(t.clone());
        }
        let degree = g.degree().expect("homogeneous");
        let odd = match g.parity() {
            Some(p) => p == Parity::Odd,
            None => return Err(VermaError::MixedParity(g.to_string())),
        };
        let g0 = if degree == 0 {
            let a = g0_action(g);
            // the linear part must reproduce g exactly
            let mut rebuilt = Element510::zero();
            for j in 0..5 {
                for i in 0..5 {
                    let c = linear_coeff(&g.field[j], i);
                    if !c.is_zero() {
                        rebuilt = rebuilt.add(&Element510::field_term(c, &[i], j));
                    }
                }
            }
            if rebuilt != *g || (0..3).any(|j| (3..5).any(|i| !linear_coeff(&g.field[j], i).is_zero()))
                || (3..5).any(|j| (0..3).any(|i| !linear_coeff(&g.field[j], i).is_zero()))
            {
                return Err(VermaError::NotInAlgebra(g.to_string(), "degree-0 part outside g0".into()));
            }
            Some(a)
        } else {
            None
        };
        let mut brackets = Vec::with_capacity(9);
        for l in Letter::all() {
            let b = self.alg.bracket(g, &l.generator().realize());
            if b.is_zero() {
                brackets.push(Bracketed::Zero);
                continue;
            }
            let d = degree + l.generator().degree();
            if d < 0 {
                let comb = express(&b).map_err(|e| VermaError::NotInAlgebra(g.to_string(), e.to_string()))?;
                let mut v = Vec::new();
                for (h, c) in comb {
                    match Letter::from_generator(h) {
                        Some(x) => v.push((x, c)),
                        None => return Err(VermaError::NotInAlgebra(g.to_string(), b.to_string())),
                    }
                }
                brackets.push(Bracketed::Lminus(v));
            } else {
                brackets.push(Bracketed::Op(self.table(&b)?));
            }
        }
        let t = Arc::new(OpTable { elem: g.clone(), odd, degree, g0, brackets });
        self.cache.lock().unwrap().insert(g.clone(), t.clone());
        Ok(t)
    }

    /// Validates an element of E(3,6) for use as an operator.
    pub fn operator(&self, g: &Element510) -> Result<Operator, VermaError> {
        if g.parity().is_none() && !g.is_zero() {
            return Err(VermaError::MixedParity(g.to_string()));
        }
        let mut lminus = Vec::new();
        let mut tables = Vec::new();
        for (d, part) in g.split_degrees() {
            if d < 0 {
                let comb = express(&part).map_err(|e| VermaError::NotInAlgebra(g.to_string(), e.to_string()))?;
                for (h, c) in comb {
                    let l = Letter::from_generator(h)
                        .ok_or_else(|| VermaError::NotInAlgebra(g.to_string(), part.to_string()))?;
                    lminus.push((l, c));
                }
            } else {
                tables.push(self.table(&part)?);
            }
        }
        Ok(Operator { elem: g.clone(), lminus, tables })
    }

    pub fn gen(&self, g: GeneratorId) -> Operator {
        if let Some(op) = self.gens.lock().unwrap().get(&g) {
            return op.clone();
        }
        let op = self.operator(&g.realize()).expect("named generators lie in E(3,6)");
        self.gens.lock().unwrap().insert(g, op.clone());
        op
    }

    fn g0_apply<C: Coeff>(&self, a: &G0Action, ctx: &Context<C>, key: &Key, out: &mut Vec<(Key, C)>) {
        let img = match ctx.v.family {
            Family::X => &a.x_img,
            Family::Partial => &a.d_img,
        };
        for (v2, c) in derive_poly(&key.v, img) {
            out.push((Key { v: v2, ..*key }, C::from(c)));
        }
        if let Some(t) = &ctx.t {
            let r = t.r as i64;
            let j = key.t as i64;
            // z₊^{r−j} z₋^j
            let ez = [r - j, j];
            for (s, &e) in ez.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                for (i, c) in &a.z_img[s] {
                    let mut e2 = ez;
                    e2[s] -= 1;
                    e2[*i] += 1;
                    out.push((Key { t: e2[1] as u8, ..*key }, C::from(c * int(e))));
                }
            }
            if !a.chi.is_zero() {
                out.push((*key, t.theta.scale(&a.chi)));
            }
        }
    }

    fn act_key<C: Coeff>(&self, t: &OpTable, ctx: &Context<C>, key: &Key) -> Vec<(Key, C)> {
        let mut out = Vec::new();
        let Some((letter, rest)) = key.mono.split_first() else {
            if let Some(a) = &t.g0 {
                self.g0_apply(a, ctx, key, &mut out);
            }
            return out;
        };
        let rest_key = Key { mono: rest, ..*key };
        match &t.brackets[letter.index()] {
            Bracketed::Zero => {}
            Bracketed::Lminus(comb) => {
                for (l2, s) in comb {
                    for (m2, c2) in self.ulm.left_mul(*l2, &rest) {
                        out.push((Key { mono: m2, ..*key }, C::from(s * c2)));
                    }
                }
            }
            Bracketed::Op(t2) => out.extend(self.act_key(t2, ctx, &rest_key)),
        }
        let sign = if t.odd && letter.is_odd() { -Scalar::one() } else { Scalar::one() };
        let inner = merge(self.act_key(t, ctx, &rest_key));
        for (k, c) in inner {
            for (m2, c2) in self.ulm.left_mul(letter, &k.mono) {
                out.push((Key { mono: m2, ..k }, c.scale(&(&c2 * &sign))));
            }
        }
        out
    }

    /// g · m
    pub fn act<C: Coeff>(&self, g: &Operator, m: &MElement<C>) -> MElement<C> {
        let mut acc: BTreeMap<Key, C> = BTreeMap::new();
        for (key, c) in m.terms() {
            for (l, s) in &g.lminus {
                for (m2, c2) in self.ulm.left_mul(*l, &key.mono) {
                    add_into(&mut acc, Key { mono: m2, ..*key }, c.scale(&(s * c2)));
                }
            }
            for t in &g.tables {
                for (k2, c2) in self.act_key(t, &m.ctx, key) {
                    add_into(&mut acc, k2, c.clone() * c2);
                }
            }
        }
        MElement::from_terms(&m.ctx, acc)
    }

    fn image<C: Coeff>(&self, g: GeneratorId, ctx: &Context<C>, key: &Key) -> Image {
        let ik = (g, ctx.v, ctx.t.as_ref().map(|t| t.r), *key);
        if let Some(img) = self.images.read().unwrap().get(&ik) {
            return img.clone();
        }
        let formal: Context<ThetaPoly> =
            Context { v: ctx.v, t: ctx.t.as_ref().map(|t| TModule { r: t.r, theta: ThetaPoly::theta() }) };
        let out = self.act(&self.gen(g), &MElement::basis(&formal, *key));
        let img: Image = Arc::new(
            out.terms()
                .map(|(k, c)| {
                    let cs = c.coeffs();
                    assert!(cs.len() <= 2, "action is affine in θ");
                    let a = cs.first().cloned().unwrap_or_else(Scalar::zero);
                    let b = cs.get(1).cloned().unwrap_or_else(Scalar::zero);
                    (*k, a, b)
                })
                .collect(),
        );
        let mut cache = self.images.write().unwrap();
        if cache.len() >= IMAGE_CACHE_LIMIT {
            cache.clear();
        }
        cache.insert(ik, img.clone());
        img
    }

    /// g · m for a named generator (basis images are memoized).
    pub fn act_gen<C: Coeff>(&self, g: GeneratorId, m: &MElement<C>) -> MElement<C> {
        let theta = m.ctx.t.as_ref().map(|t| &t.theta);
        let mut acc: BTreeMap<Key, C> = BTreeMap::new();
        for (key, c) in m.terms() {
            for (k2, a, b) in self.image(g, &m.ctx, key).iter() {
                let mut x = c.scale(a);
                if !b.is_zero() {
                    let th = theta.expect("θ term needs a T factor");
                    x = x + c.clone() * th.scale(b);
                }
                add_into(&mut acc, *k2, x);
            }
        }
        MElement::from_terms(&m.ctx, acc)
    }

    pub fn act_elem<C: Coeff>(&self, g: &Element510, m: &MElement<C>) -> Result<MElement<C>, VermaError> {
        Ok(self.act(&self.operator(g)?, m))
    }

    /// Weight of a basis vector.
    pub fn key_weight<C: Coeff>(&self, ctx: &Context<C>, key: &Key) -> KeyWeight {
        let mut w: [Scalar; 4] = Default::default();
        for l in key.mono.letters() {
            for n in 0..4 {
                w[n] += &self.letter_weights[l.index()][n];
            }
        }
        let (hx1, hx2, yx) = match ctx.v.family {
            Family::X => ([1i64, -1, 0], [0i64, 1, -1], Scalar::new(2.into(), 3.into())),
            Family::Partial => ([-1, 1, 0], [0, -1, 1], Scalar::new((-2).into(), 3.into())),
        };
        let h1: i64 = (0..3).map(|i| hx1[i] * key.v[i] as i64).sum();
        let h2: i64 = (0..3).map(|i| hx2[i] * key.v[i] as i64).sum();
        let deg: i64 = key.v.iter().map(|&e| e as i64).sum();
        let mut y = &w[3] + yx * int(deg);
        let mut h3 = w[2].to_integer().try_into().unwrap_or(0i64);
        let theta = ctx.t.is_some();
        if let Some(t) = &ctx.t {
            let r = t.r as i64;
            let j = key.t as i64;
            h3 += r - 2 * j;
            y -= int(r);
        }
        KeyWeight {
            h1: h1 + i64::try_from(w[0].to_integer()).unwrap(),
            h2: h2 + i64::try_from(w[1].to_integer()).unwrap(),
            h3,
            y,
            theta,
        }
    }

    /// Map from a key to its weight, with the V contribution derived from the g₀ action
    /// (used to cross-check `key_weight`).
    pub fn key_weight_by_action<C: Coeff>(&self, ctx: &Context<C>, key: &Key) -> Option<[C; 4]> {
        let m = MElement::basis(ctx, *key);
        let mut out: [C; 4] = std::array::from_fn(|_| C::zero());
        for (n, h) in [GeneratorId::H1, GeneratorId::H2, GeneratorId::H3, GeneratorId::Y].iter().enumerate() {
            let hm = self.act_gen(*h, &m);
            if hm.is_zero() {
                continue;
            }
            if hm.len() != 1 {
                return None;
            }
            let (k, c) = hm.terms().next().unwrap();
            if k != key {
                return None;
            }
            out[n] = c.clone();
        }
        Some(out)
    }

    /// Image of a U(L₋) monomial under φ.
    pub fn phi_mono(&self, m: &SuperMonomial) -> UElem {
        let mut acc: UElem = [(SuperMonomial::ONE, Scalar::one())].into();
        for l in m.letters().into_iter().rev() {
            let img = express(&self.alg.phi(&l.generator().realize())).expect("φ preserves L-");
            let mut next = UElem::new();
            for (g, c) in img {
                let l2 = Letter::from_generator(g).expect("φ preserves L-");
                for (m2, c2) in self.ulm.left_mul_elem(l2, &acc) {
                    super::monomial::uelem_add_term(&mut next, m2, c2 * &c);
                }
            }
            acc = next;
        }
        acc
    }
}

fn add_into<C: Coeff>(acc: &mut BTreeMap<Key, C>, k: Key, c: C) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&k) {
        Some(e) => {
            let s = std::mem::replace(e, C::zero()) + c;
            if s.is_zero() {
                acc.remove(&k);
            } else {
                *e = s;
            }
        }
        None => {
            acc.insert(k, c);
        }
    }
}

fn merge<C: Coeff>(v: Vec<(Key, C)>) -> BTreeMap<Key, C> {
    let mut acc = BTreeMap::new();
    for (k, c) in v {
        add_into(&mut acc, k, c);
    }
    acc
}

impl std::fmt::Debug for Engine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Engine").field("alg", &self.alg).finish()
    }
}

impl OpTable {
    pub fn element(&self) -> &Element510 {
        &self.elem
    }
    pub fn degree(&self) -> i64 {
        self.degree
    }
}
