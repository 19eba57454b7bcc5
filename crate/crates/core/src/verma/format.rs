//! JSON interchange and text rendering of module elements (Unicode math notation or plain ASCII).

use serde_json::{json, Value};

use crate::exactalg::coeff::Coeff;
use crate::exactalg::scalar::{format_scalar, parse_scalar, Scalar};
use crate::exactalg::theta::ThetaPoly;

use super::module::{Context, Element, Family, Key, MElement, TModule, ThetaElement, VModule};
use super::monomial::SuperMonomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct FormatError(pub String);

fn err<T>(m: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError(m.into()))
}

fn theta_json<C: Coeff>(theta: &C) -> Value {
    match (C::formal_theta(), theta.as_scalar()) {
        (Some(t), _) if *theta == t => json!("formal"),
        (_, Some(s)) => json!(format_scalar(&s)),
        _ => theta.to_json(),
    }
}

pub fn context_to_json<C: Coeff>(ctx: &Context<C>) -> Value {
    json!({
        "family": match ctx.v.family { Family::X => "p", Family::Partial => "q" },
        "p_or_q": ctx.v.degree,
        "r": ctx.t.as_ref().map(|t| t.r),
        "theta": ctx.t.as_ref().map(|t| theta_json(&t.theta)),
    })
}

pub fn to_json<C: Coeff>(m: &MElement<C>) -> Value {
    let terms: Vec<Value> = m
        .terms()
        .map(|(k, c)| {
            json!({
                "dhat": k.mono.dhat,
                "dminus": k.mono.minus_indices(),
                "dplus": k.mono.plus_indices(),
                "v_exp": k.v,
                "t_j": m.ctx.t.as_ref().map(|_| k.t),
                "coeff": c.to_json(),
            })
        })
        .collect();
    json!({ "context": context_to_json(&m.ctx), "terms": terms })
}

fn context_from_json<C: Coeff>(v: &Value) -> Result<Context<C>, FormatError> {
    let family = match v.get("family").and_then(|f| f.as_str()) {
        Some("p") => Family::X,
        Some("q") => Family::Partial,
        other => return err(format!("bad family {other:?}")),
    };
    let degree = v.get("p_or_q").and_then(|d| d.as_u64()).ok_or(FormatError("missing p_or_q".into()))? as u32;
    let vm = VModule { family, degree };
    let r = v.get("r").and_then(|r| r.as_u64());
    let t = match r {
        None => None,
        Some(r) => {
            let th = v.get("theta").ok_or(FormatError("missing theta".into()))?;
            let theta = match th.as_str() {
                Some("formal") => C::formal_theta().ok_or(FormatError("formal θ needs θ-polynomial coefficients".into()))?,
                _ => C::from_json(th).map_err(FormatError)?,
            };
            Some(TModule { r: r as u32, theta })
        }
    };
    Ok(Context { v: vm, t })
}

fn index_list(v: &Value, name: &str) -> Result<Vec<u8>, FormatError> {
    let arr = v.get(name).and_then(|a| a.as_array()).ok_or(FormatError(format!("missing {name}")))?;
    let mut out = Vec::new();
    for x in arr {
        let i = x.as_u64().ok_or(FormatError(format!("bad index in {name}")))?;
        if !(1..=3).contains(&i) || out.contains(&(i as u8)) {
            return err(format!("bad index {i} in {name}"));
        }
        out.push(i as u8);
    }
    Ok(out)
}

fn triple(v: &Value, name: &str) -> Result<[u16; 3], FormatError> {
    let arr = v.get(name).and_then(|a| a.as_array()).ok_or(FormatError(format!("missing {name}")))?;
    if arr.len() != 3 {
        return err(format!("{name} needs three entries"));
    }
    let mut out = [0u16; 3];
    for (i, x) in arr.iter().enumerate() {
        out[i] = x.as_u64().ok_or(FormatError(format!("bad {name}")))? as u16;
    }
    Ok(out)
}

/// Sign of reordering a list of distinct indices into ascending order.
fn sort_sign(v: &[u8]) -> i64 {
    let mut inv = 0;
    for a in 0..v.len() {
        for b in a + 1..v.len() {
            if v[a] > v[b] {
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

pub fn from_json<C: Coeff>(v: &Value) -> Result<MElement<C>, FormatError> {
    let ctx = context_from_json::<C>(v.get("context").ok_or(FormatError("missing context".into()))?)?;
    let mut m = MElement::zero(&ctx);
    let terms = v.get("terms").and_then(|t| t.as_array()).ok_or(FormatError("missing terms".into()))?;
    for t in terms {
        let dhat = triple(t, "dhat")?;
        let minus = index_list(t, "dminus")?;
        let plus = index_list(t, "dplus")?;
        let vexp = triple(t, "v_exp")?;
        if vexp.iter().map(|&e| e as u32).sum::<u32>() != ctx.v.degree {
            return err(format!("v_exp {vexp:?} has the wrong degree"));
        }
        let tj = match (&ctx.t, t.get("t_j").and_then(|x| x.as_u64())) {
            (Some(tm), Some(j)) if j as u32 <= tm.r => j as u8,
            (None, None) => 0,
            _ => return err("t_j inconsistent with context"),
        };
        let c = C::from_json(t.get("coeff").ok_or(FormatError("missing coeff".into()))?).map_err(FormatError)?;
        let s = sort_sign(&minus) * sort_sign(&plus);
        let key = Key { mono: SuperMonomial::new(dhat, &minus, &plus), v: vexp, t: tj };
        m.add_term(key, c.scale(&Scalar::from_integer(s.into())));
    }
    Ok(m)
}

/// Element with either kind of coefficient.
#[derive(Debug, Clone, PartialEq)]
pub enum AnyElement {
    Scalar(Element),
    Theta(ThetaElement),
}

pub fn any_from_json(v: &Value) -> Result<AnyElement, FormatError> {
    let formal = v.pointer("/context/theta").and_then(|t| t.as_str()) == Some("formal")
        || v.pointer("/context/theta").is_some_and(|t| t.is_object())
        || v.get("terms").and_then(|t| t.as_array()).is_some_and(|ts| ts.iter().any(|t| t.get("coeff").is_some_and(|c| c.is_object())));
    if formal {
        from_json::<ThetaPoly>(v).map(AnyElement::Theta)
    } else {
        from_json::<Scalar>(v).map(AnyElement::Scalar)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Style {
    Math,
    Plain,
}

const SUB: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
const SUP: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

fn sup(n: u32, style: Style) -> String {
    match (n, style) {
        (1, _) => String::new(),
        (_, Style::Plain) => format!("^{n}"),
        (_, Style::Math) => n.to_string().chars().map(|c| SUP[c.to_digit(10).unwrap() as usize]).collect(),
    }
}

fn sub(s: &str, style: Style) -> String {
    match style {
        Style::Plain => s.to_string(),
        Style::Math => s.chars().map(|c| SUB[c.to_digit(10).unwrap() as usize]).collect(),
    }
}

fn render_theta<C: Coeff>(theta: &C, style: Style) -> String {
    if C::formal_theta().is_some_and(|t| *theta == t) {
        return match style {
            Style::Math => "θ".into(),
            Style::Plain => "theta".into(),
        };
    }
    let s = theta.render(style == Style::Math);
    match style {
        Style::Math => s.replace('-', "−"),
        Style::Plain => s,
    }
}

fn render_body<C: Coeff>(ctx: &Context<C>, k: &Key, style: Style) -> String {
    let mut s = String::new();
    let sp = if style == Style::Plain { " " } else { "" };
    let mut parts: Vec<String> = Vec::new();
    let (dh, dm, dp, zp, zm, dot) = match style {
        Style::Math => ("∂̂", "d⁻", "d⁺", "z₊", "z₋", "·"),
        Style::Plain => ("dh", "dm", "dp", "zp", "zm", "*"),
    };
    for i in 0..3 {
        if k.mono.dhat[i] > 0 {
            parts.push(format!("{dh}{}{}", sub(&(i + 1).to_string(), style), sup(k.mono.dhat[i] as u32, style)));
        }
    }
    let idx = |v: Vec<u8>| v.iter().map(|i| i.to_string()).collect::<String>();
    if k.mono.minus != 0 {
        parts.push(format!("{dm}{}", sub(&idx(k.mono.minus_indices()), style)));
    }
    if k.mono.plus != 0 {
        parts.push(format!("{dp}{}", sub(&idx(k.mono.plus_indices()), style)));
    }
    let vx = match (ctx.v.family, style) {
        (Family::X, _) => "x",
        (Family::Partial, Style::Math) => "∂",
        (Family::Partial, Style::Plain) => "D",
    };
    for i in 0..3 {
        if k.v[i] > 0 {
            parts.push(format!("{vx}{}{}", sub(&(i + 1).to_string(), style), sup(k.v[i] as u32, style)));
        }
    }
    if parts.is_empty() {
        parts.push("1".into());
    }
    s.push_str(&parts.join(sp));
    if let Some(t) = &ctx.t {
        let j = k.t as u32;
        let mut zs = Vec::new();
        if t.r - j > 0 {
            zs.push(format!("{zp}{}", sup(t.r - j, style)));
        }
        if j > 0 {
            zs.push(format!("{zm}{}", sup(j, style)));
        }
        if zs.is_empty() {
            zs.push("1".into());
        }
        s.push_str(&format!(" {dot} {}[{}]", zs.join(sp), render_theta(&t.theta, style)));
    }
    s
}

pub fn render<C: Coeff>(m: &MElement<C>, style: Style) -> String {
    if m.is_zero() {
        return "0".into();
    }
    let minus = if style == Style::Math { "−" } else { "-" };
    let mut out = String::new();
    for (n, (k, c)) in m.terms().enumerate() {
        let body = render_body(&m.ctx, k, style);
        let (neg, coef) = match c.as_scalar() {
            Some(s) => {
                let neg = s < Scalar::from_integer(0.into());
                let mag = if neg { -s } else { s };
                let txt = if mag == Scalar::from_integer(1.into()) { String::new() } else { format!("{} ", crate::exactalg::scalar::display_scalar(&mag)) };
                (neg, txt)
            }
            None => (false, format!("{} ", c.render(style == Style::Math))),
        };
        if n == 0 {
            if neg {
                out.push_str(minus);
            }
        } else {
            if neg {
                out.push_str(&format!(" {minus} "));
            } else {
                out.push_str(" + ");
            }
        }
        out.push_str(&coef);
        out.push_str(&body);
    }
    out
}

/// Converts Unicode symbols to the plain alphabet.
fn to_plain(s: &str) -> String {
    let mut t = s.replace("∂\u{302}", "dh").replace("d⁻", "dm").replace("d⁺", "dp");
    t = t.replace("z₊", "zp").replace("z₋", "zm").replace('∂', "D").replace('·', "*");
    t = t.replace('−', "-").replace('θ', "theta");
    let mut out = String::new();
    let mut in_sup = false;
    for ch in t.chars() {
        if let Some(d) = SUB.iter().position(|&c| c == ch) {
            in_sup = false;
            out.push(char::from_digit(d as u32, 10).unwrap());
        } else if let Some(d) = SUP.iter().position(|&c| c == ch) {
            if !in_sup {
                out.push('^');
                in_sup = true;
            }
            out.push(char::from_digit(d as u32, 10).unwrap());
        } else {
            in_sup = false;
            out.push(ch);
        }
    }
    out
}

fn split_terms(s: &str) -> Result<Vec<(bool, String)>, FormatError> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for ch in s.chars() {
        match ch {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            _ => {}
        }
        if depth == 0 && (ch == '+' || ch == '-') {
            if cur.trim().is_empty() {
                if out.is_empty() && ch == '-' {
                    neg = !neg;
                    continue;
                }
                if out.is_empty() && ch == '+' {
                    continue;
                }
                return err("dangling sign");
            }
            out.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
            continue;
        }
        cur.push(ch);
    }
    if depth != 0 {
        return err("unbalanced brackets");
    }
    if cur.trim().is_empty() {
        return err("empty term");
    }
    out.push((neg, cur));
    Ok(out)
}

struct Scanner<'a> {
    s: &'a [u8],
    i: usize,
}

impl Scanner<'_> {
    fn ws(&mut self) {
        while self.i < self.s.len() && self.s[self.i].is_ascii_whitespace() {
            self.i += 1;
        }
    }
    fn eat(&mut self, p: &str) -> bool {
        self.ws();
        if self.s[self.i..].starts_with(p.as_bytes()) {
            self.i += p.len();
            true
        } else {
            false
        }
    }
    fn digits(&mut self) -> Option<String> {
        let st = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        (self.i > st).then(|| String::from_utf8_lossy(&self.s[st..self.i]).into_owned())
    }
    fn power(&mut self) -> Result<u32, FormatError> {
        if self.i < self.s.len() && self.s[self.i] == b'^' {
            self.i += 1;
            return self.digits().and_then(|d| d.parse().ok()).ok_or(FormatError("bad exponent".into()));
        }
        Ok(1)
    }
    fn done(&mut self) -> bool {
        self.ws();
        self.i >= self.s.len()
    }
}

fn parse_index(sc: &mut Scanner) -> Result<u8, FormatError> {
    if sc.i < sc.s.len() && (b'1'..=b'3').contains(&sc.s[sc.i]) {
        sc.i += 1;
        Ok(sc.s[sc.i - 1] - b'0')
    } else {
        err("expected index 1-3")
    }
}

/// Parses the output of `render` (either style) in a known context.
pub fn parse_rendered<C: Coeff>(text: &str, ctx: &Context<C>) -> Result<MElement<C>, FormatError> {
    let plain = to_plain(text);
    let mut m = MElement::zero(ctx);
    if plain.trim() == "0" {
        return Ok(m);
    }
    for (neg, term) in split_terms(&plain)? {
        let mut sc = Scanner { s: term.as_bytes(), i: 0 };
        sc.ws();
        let mut coef = C::one();
        if sc.eat("(") {
            let st = sc.i;
            let end = term[st..].find(')').ok_or(FormatError("unclosed (".into()))? + st;
            coef = parse_theta_poly::<C>(&term[st..end])?;
            sc.i = end + 1;
        } else if let Some(d) = sc.digits() {
            let mut txt = d;
            if sc.eat("/") {
                txt = format!("{txt}/{}", sc.digits().ok_or(FormatError("bad fraction".into()))?);
            }
            coef = C::from(parse_scalar(&txt).map_err(|e| FormatError(e.to_string()))?);
        }
        let mut dhat = [0u16; 3];
        let mut minus = Vec::new();
        let mut plus = Vec::new();
        let mut v = [0u16; 3];
        let mut t = 0u8;
        let mut saw_t = false;
        loop {
            if sc.done() {
                break;
            }
            if sc.eat("dh") {
                let i = parse_index(&mut sc)?;
                dhat[i as usize - 1] += sc.power()? as u16;
            } else if sc.eat("dm") {
                while sc.i < sc.s.len() && sc.s[sc.i].is_ascii_digit() {
                    minus.push(parse_index(&mut sc)?);
                }
            } else if sc.eat("dp") {
                while sc.i < sc.s.len() && sc.s[sc.i].is_ascii_digit() {
                    plus.push(parse_index(&mut sc)?);
                }
            } else if sc.eat("x") || sc.eat("D") {
                let fam = if sc.s[sc.i - 1] == b'x' { Family::X } else { Family::Partial };
                if fam != ctx.v.family {
                    return err("V variable does not match the context");
                }
                let i = parse_index(&mut sc)?;
                v[i as usize - 1] += sc.power()? as u16;
            } else if sc.eat("1") {
            } else if sc.eat("*") {
                let tm = ctx.t.as_ref().ok_or(FormatError("T factor without T in context".into()))?;
                saw_t = true;
                let mut ez = [0u32; 2];
                loop {
                    if sc.eat("zp") {
                        ez[0] += sc.power()?;
                    } else if sc.eat("zm") {
                        ez[1] += sc.power()?;
                    } else if sc.eat("1") {
                    } else {
                        break;
                    }
                }
                if ez[0] + ez[1] != tm.r {
                    return err("T monomial has the wrong degree");
                }
                t = ez[1] as u8;
                if !sc.eat("[") {
                    return err("expected [θ]");
                }
                let st = sc.i;
                let end = term[st..].find(']').ok_or(FormatError("unclosed [".into()))? + st;
                let th = term[st..end].trim();
                if th != render_theta(&tm.theta, Style::Plain) {
                    return err(format!("θ value `{th}` does not match the context"));
                }
                sc.i = end + 1;
            } else {
                return err(format!("unexpected input in `{}`", term.trim()));
            }
        }
        if ctx.t.is_some() && !saw_t {
            return err("missing T factor");
        }
        if v.iter().map(|&e| e as u32).sum::<u32>() != ctx.v.degree {
            return err("V monomial has the wrong degree");
        }
        let s = sort_sign(&minus) * sort_sign(&plus);
        let mut dedup = minus.clone();
        dedup.sort();
        dedup.dedup();
        let mut dedup2 = plus.clone();
        dedup2.sort();
        dedup2.dedup();
        if dedup.len() != minus.len() || dedup2.len() != plus.len() {
            continue; // repeated odd letter: the term vanishes
        }
        let key = Key { mono: SuperMonomial::new(dhat, &minus, &plus), v, t };
        let sgn = if neg { -s } else { s };
        m.add_term(key, coef.scale(&Scalar::from_integer(sgn.into())));
    }
    Ok(m)
}

fn parse_theta_poly<C: Coeff>(s: &str) -> Result<C, FormatError> {
    let theta = C::formal_theta();
    let mut acc = C::zero();
    for (neg, term) in split_terms(s)? {
        let t = term.trim();
        let (num, pow) = match t.find("theta") {
            None => (t.to_string(), 0u32),
            Some(pos) => {
                let rest = &t[pos + 5..];
                let pow = match rest.strip_prefix('^') {
                    Some(d) => d.trim().parse().map_err(|_| FormatError("bad θ power".into()))?,
                    None if rest.trim().is_empty() => 1,
                    None => return err("bad θ term"),
                };
                (t[..pos].trim().to_string(), pow)
            }
        };
        let c = if num.is_empty() { Scalar::from_integer(1.into()) } else { parse_scalar(&num).map_err(|e| FormatError(e.to_string()))? };
        let mut x = C::from(if neg { -c } else { c });
        for _ in 0..pow {
            x = x * theta.clone().ok_or(FormatError("θ in a rational context".into()))?;
        }
        acc = acc + x;
    }
    Ok(acc)
}
