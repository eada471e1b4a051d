//! Angles given as plain radians (`0.785`) or as multiples of pi
//! (`pi/4`, `2pi/5`, `-3*pi/8`, `π`).

use crate::error::{AppError, Result};
use std::f64::consts::PI;

pub fn parse_angle(text: &str) -> Result<f64> {
    let bad = || AppError::Config(format!("cannot parse angle {text:?}"));
    let s = text.trim().to_ascii_lowercase().replace('π', "pi");
    let Some((coef, rest)) = s.split_once("pi") else {
        let v: f64 = s.parse().map_err(|_| bad())?;
        return if v.is_finite() { Ok(v) } else { Err(bad()) };
    };
    let coef = coef.trim().trim_end_matches('*').trim();
    let coef = match coef {
        "" | "+" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = rest.trim();
    let den = if rest.is_empty() {
        1.0
    } else {
        let den = rest.strip_prefix('/').ok_or_else(bad)?.trim();
        den.parse::<f64>().map_err(|_| bad())?
    };
    let v = coef * PI / den;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}
