//! Plain-text monomial notation shared by the polynomial printers and parsers:
//! `mu^4*x^12 + mu*x^8 + x^2 + mu^4`.

use crate::error::{Error, Result};
use crate::gf2m::{Field, Fq};

/// One parsed term: a coefficient and one exponent per variable.
pub type Term = (Fq, Vec<u32>);

/// Parses a sum of monomials in the given variables. `-` is accepted as a
/// separator (characteristic 2), braces around exponents are ignored and
/// factors may be joined by `*` or whitespace.
pub fn parse_terms(field: &Field, src: &str, vars: &[&str]) -> Result<Vec<Term>> {
    parse_terms_with(field, src, vars, field.generator())
}

/// As [`parse_terms`], reading the symbol `mu` as the element `mu`.
pub fn parse_terms_with(field: &Field, src: &str, vars: &[&str], mu: Fq) -> Result<Vec<Term>> {
    let cleaned: String = src
        .chars()
        .filter(|c| *c != '{' && *c != '}' && *c != '\n' && *c != '\r')
        .collect();
    let cleaned = cleaned
        .trim()
        .trim_end_matches("=0")
        .trim_end_matches("= 0");
    let mut out = Vec::new();
    for raw in cleaned.split(['+', '-']) {
        let raw = raw.trim();
        if raw.is_empty() {
            continue;
        }
        let mut coef = Fq::ONE;
        let mut exps = vec![0u32; vars.len()];
        for factor in raw.split(|c: char| c == '*' || c.is_whitespace()) {
            let factor = factor.trim();
            if factor.is_empty() {
                continue;
            }
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (
                    b.trim(),
                    e.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?,
                ),
                None => (factor, 1),
            };
            if base == "mu" {
                coef = field.mul(coef, field.pow(mu, exp as u64));
            } else if let Some(i) = vars.iter().position(|v| *v == base) {
                exps[i] += exp;
            } else if base == "1" && exp == 1 {
            } else if base == "0" {
                coef = Fq::ZERO;
            } else {
                return Err(Error::Parse(format!("unknown factor `{factor}`")));
            }
        }
        out.push((coef, exps));
    }
    if out.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    Ok(out)
}

/// Formats a single monomial; `exps` pairs variable names with exponents.
pub fn format_monomial(field: &Field, c: Fq, exps: &[(&str, u32)]) -> String {
    let mut parts = Vec::new();
    let vars: Vec<String> = exps
        .iter()
        .filter(|(_, e)| *e > 0)
        .map(|(v, e)| {
            if *e == 1 {
                v.to_string()
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    if c != Fq::ONE || vars.is_empty() {
        parts.push(field.format(c));
    }
    parts.extend(vars);
    parts.join("*")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_juxtaposed_terms() {
        let f = Field::with_degree(4).unwrap();
        let terms = parse_terms(
            &f,
            "Z^4X^{28} + \\mu Z^4 X^26 + mu^7*Z^4*X^24 + 1",
            &["X", "Z"],
        );
        assert!(terms.is_err()); // backslash is not part of the notation
        let terms = parse_terms(
            &f,
            "Z^4*X^{28} + mu*Z^4*X^26 + mu^7 Z^4 X^24 + 1",
            &["X", "Z"],
        )
        .unwrap();
        assert_eq!(terms.len(), 4);
        assert_eq!(terms[0], (Fq::ONE, vec![28, 4]));
        assert_eq!(terms[1], (f.generator(), vec![26, 4]));
        assert_eq!(terms[3], (Fq::ONE, vec![0, 0]));
    }
}
