//! Coefficient rings usable in module elements.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use super::scalar::{display_scalar, format_scalar, parse_scalar, Scalar};
use super::theta::ThetaPoly;

/// Exact commutative coefficient ring containing ℚ.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + From<Scalar>
{
    fn scale(&self, s: &Scalar) -> Self;
    /// The formal parameter θ, if the ring contains it.
    fn formal_theta() -> Option<Self>;
    fn as_scalar(&self) -> Option<Scalar>;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, String>;
    /// Unicode style uses `−` and `θ`; plain style uses `-` and `theta`.
    fn render(&self, unicode: bool) -> String;
    /// True if a rendered coefficient needs no parentheses and carries its own sign.
    fn is_simple(&self) -> bool {
        self.as_scalar().is_some()
    }
    fn is_negative_scalar(&self) -> bool {
        self.as_scalar().is_some_and(|s| s.is_negative())
    }
}

impl Coeff for Scalar {
    fn scale(&self, s: &Scalar) -> Self {
        self * s
    }
    fn formal_theta() -> Option<Self> {
        None
    }
    fn as_scalar(&self) -> Option<Scalar> {
        Some(self.clone())
    }
    fn to_json(&self) -> Value {
        json!(format_scalar(self))
    }
    fn from_json(v: &Value) -> Result<Self, String> {
        match v {
            Value::String(s) => parse_scalar(s).map_err(|e| e.to_string()),
            Value::Number(n) if n.is_i64() => Ok(super::scalar::int(n.as_i64().unwrap())),
            _ => Err(format!("expected a rational string, got {v}")),
        }
    }
    fn render(&self, _unicode: bool) -> String {
        display_scalar(self)
    }
}

impl Coeff for ThetaPoly {
    fn scale(&self, s: &Scalar) -> Self {
        ThetaPoly::scale(self, s)
    }
    fn formal_theta() -> Option<Self> {
        Some(ThetaPoly::theta())
    }
    fn as_scalar(&self) -> Option<Scalar> {
        self.as_constant()
    }
    fn to_json(&self) -> Value {
        json!({ "theta_poly": self.coeffs().iter().map(format_scalar).collect::<Vec<_>>() })
    }
    fn from_json(v: &Value) -> Result<Self, String> {
        if let Some(arr) = v.get("theta_poly").and_then(|a| a.as_array()) {
            let cs = arr
                .iter()
                .map(|c| c.as_str().ok_or("theta_poly entries must be strings".to_string()))
                .map(|c| c.and_then(|s| parse_scalar(s).map_err(|e| e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(ThetaPoly::new(cs))
        } else {
            Scalar::from_json(v).map(ThetaPoly::constant)
        }
    }
    fn render(&self, unicode: bool) -> String {
        match self.as_constant() {
            Some(c) => display_scalar(&c),
            None if unicode => format!("({})", ThetaPoly::render(self, "θ", "−")),
            None => format!("({})", ThetaPoly::render(self, "theta", "-")),
        }
    }
}

/// Falling factorial x(x−1)…(x−n+1) for scalars.
pub fn falling_scalar(x: &Scalar, n: u32) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..n {
        acc *= x - super::scalar::int(i as i64);
    }
    acc
}
