//! Line-oriented text formats: filter chains and target matrices.
//!
//! Chain file:
//!
//! ```text
//! # comment
//! ATT eta=<float> axis=<float> [t=<float>]
//! ROT phi=<float>
//! PHS delta=<float>
//! ```
//!
//! Matrix file: whitespace-separated reals, `#` comments allowed. Eight values
//! are a 2×2 complex matrix as row-major `(re, im)` pairs; sixteen values are a
//! 4×4 real matrix in row-major order.

use num_complex::Complex64;

use crate::error::ParseError;
use crate::filter::{FilterChain, FilterElement, Target};
use crate::matrix::{Matrix2, Matrix4};

/// Formats `x` with 17 significant digits, `%.17g` style: positional for
/// moderate exponents, scientific otherwise, trailing zeros trimmed.
pub fn fmt_sig17(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("`{:e}` always has an exponent");
    let exp: i32 = exp.parse().expect("exponent is an integer");
    if (-5..17).contains(&exp) {
        let decimals = (16 - exp).max(0) as usize;
        trim_zeros(format!("{x:.decimals$}"))
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa.to_string()),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn parse_float(line: usize, key: &str, raw: &str) -> Result<f64, ParseError> {
    match raw.parse::<f64>() {
        Ok(v) if v.is_finite() => Ok(v),
        _ => Err(ParseError::new(line, format!("non-finite number for `{key}`: `{raw}`"))),
    }
}

/// Collects `key=value` tokens, checking against the allowed set.
fn parse_keys<'a>(
    line: usize,
    tokens: impl Iterator<Item = &'a str>,
    allowed: &[&str],
) -> Result<Vec<(&'a str, f64)>, ParseError> {
    let mut out: Vec<(&str, f64)> = Vec::new();
    for tok in tokens {
        let (key, raw) = tok
            .split_once('=')
            .ok_or_else(|| ParseError::new(line, format!("expected key=value, got `{tok}`")))?;
        if !allowed.contains(&key) {
            return Err(ParseError::new(line, format!("unknown key `{key}`")));
        }
        if out.iter().any(|(k, _)| *k == key) {
            return Err(ParseError::new(line, format!("duplicate key `{key}`")));
        }
        out.push((key, parse_float(line, key, raw)?));
    }
    Ok(out)
}

fn required(line: usize, keys: &[(&str, f64)], key: &str) -> Result<f64, ParseError> {
    keys.iter()
        .find(|(k, _)| *k == key)
        .map(|(_, v)| *v)
        .ok_or_else(|| ParseError::new(line, format!("missing key `{key}`")))
}

fn parse_element(line: usize, text: &str) -> Result<FilterElement, ParseError> {
    let mut tokens = text.split_whitespace();
    let keyword = tokens.next().unwrap_or_default();
    let element = match keyword {
        "ATT" => {
            let keys = parse_keys(line, tokens, &["eta", "axis", "t"])?;
            let eta = required(line, &keys, "eta")?;
            let axis = required(line, &keys, "axis")?;
            let t = keys.iter().find(|(k, _)| *k == "t").map_or(1.0, |(_, v)| *v);
            if !(t > 0.0 && t <= 1.0) {
                return Err(ParseError::new(line, format!("transmittance {t} outside (0, 1]")));
            }
            FilterElement::Attenuator {
                eta,
                axis,
                transmittance: t,
            }
        }
        "ROT" => {
            let keys = parse_keys(line, tokens, &["phi"])?;
            FilterElement::Rotator {
                phi: required(line, &keys, "phi")?,
            }
        }
        "PHS" => {
            let keys = parse_keys(line, tokens, &["delta"])?;
            FilterElement::PhaseShifter {
                delta: required(line, &keys, "delta")?,
            }
        }
        other => return Err(ParseError::new(line, format!("unknown keyword `{other}`"))),
    };
    element.validate().map_err(|e| ParseError::new(line, e.to_string()))?;
    Ok(element)
}

pub fn parse_chain(text: &str) -> Result<FilterChain, ParseError> {
    let mut elements = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        elements.push(parse_element(idx + 1, trimmed)?);
    }
    Ok(FilterChain::from_elements(elements).expect("elements validated while parsing"))
}

pub fn format_element(e: &FilterElement) -> String {
    match *e {
        FilterElement::Attenuator {
            eta,
            axis,
            transmittance,
        } => {
            let mut s = format!("ATT eta={} axis={}", fmt_sig17(eta), fmt_sig17(axis));
            if transmittance != 1.0 {
                s.push_str(&format!(" t={}", fmt_sig17(transmittance)));
            }
            s
        }
        FilterElement::Rotator { phi } => format!("ROT phi={}", fmt_sig17(phi)),
        FilterElement::PhaseShifter { delta } => format!("PHS delta={}", fmt_sig17(delta)),
    }
}

/// One element per line, each line newline-terminated.
pub fn format_chain(chain: &FilterChain) -> String {
    chain.elements().iter().map(|e| format_element(e) + "\n").collect()
}

/// Reads a 2×2 or 4×4 target, detected by value count.
pub fn parse_matrix(text: &str) -> Result<Target, ParseError> {
    let mut values = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or_default();
        for tok in content.split_whitespace() {
            values.push(parse_float(idx + 1, "matrix entry", tok)?);
            last_line = idx + 1;
        }
    }
    match values.len() {
        8 => {
            let z = |k: usize| Complex64::new(values[2 * k], values[2 * k + 1]);
            Ok(Target::Jones(Matrix2::new(z(0), z(1), z(2), z(3))))
        }
        16 => {
            let mut m = [[0.0; 4]; 4];
            for (k, v) in values.iter().enumerate() {
                m[k / 4][k % 4] = *v;
            }
            Ok(Target::Mueller(Matrix4(m)))
        }
        n => Err(ParseError::new(
            last_line.max(1),
            format!("expected 8 (2x2 complex) or 16 (4x4 real) values, found {n}"),
        )),
    }
}

pub fn format_matrix(target: &Target) -> String {
    let mut out = String::new();
    match target {
        Target::Jones(m) => {
            for row in &m.0 {
                let cells: Vec<String> = row.iter().flat_map(|z| [fmt_sig17(z.re), fmt_sig17(z.im)]).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
        Target::Mueller(m) => {
            for row in &m.0 {
                let cells: Vec<String> = row.iter().map(|&x| fmt_sig17(x)).collect();
                out.push_str(&cells.join(" "));
                out.push('\n');
            }
        }
    }
    out
}
