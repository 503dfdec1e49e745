//! Golden files: printed polynomials in the canonical text format with a
//! `# field <spec>` header, a `# vars ...` header and either one body line
//! or `name: body` entries.

use std::path::Path;
use std::sync::Arc;

use crate::bivar::{BivarPoly, Chart, HomPoly};
use crate::error::{Error, Result};
use crate::gf2m::{Field, Fq};
use crate::poly::Poly;

const EMBEDDED: [(&str, &str); 13] = [
    ("6.1a", include_str!("../../golden/6.1a.txt")),
    ("6.1a-witt", include_str!("../../golden/6.1a-witt.txt")),
    ("6.1b", include_str!("../../golden/6.1b.txt")),
    ("6.1b-witt", include_str!("../../golden/6.1b-witt.txt")),
    ("6.2", include_str!("../../golden/6.2.txt")),
    ("6.5-curve", include_str!("../../golden/6.5-curve.txt")),
    ("6.5-maps", include_str!("../../golden/6.5-maps.txt")),
    ("6.5-quartic", include_str!("../../golden/6.5-quartic.txt")),
    (
        "6.5-hyperelliptic",
        include_str!("../../golden/6.5-hyperelliptic.txt"),
    ),
    ("6.6-f1", include_str!("../../golden/6.6-f1.txt")),
    ("6.6-f2", include_str!("../../golden/6.6-f2.txt")),
    ("6.6-f3", include_str!("../../golden/6.6-f3.txt")),
    ("6.6-f4", include_str!("../../golden/6.6-f4.txt")),
];

/// Names of all golden files (without the `.txt` suffix).
pub const GOLDEN_NAMES: [&str; 13] = [
    "6.1a",
    "6.1a-witt",
    "6.1b",
    "6.1b-witt",
    "6.2",
    "6.5-curve",
    "6.5-maps",
    "6.5-quartic",
    "6.5-hyperelliptic",
    "6.6-f1",
    "6.6-f2",
    "6.6-f3",
    "6.6-f4",
];

#[derive(Clone, Debug)]
pub struct GoldenFile {
    pub name: String,
    pub field_spec: String,
    pub vars: Vec<String>,
    /// `(entry name, body)`; the name is empty for a bare body line
    pub entries: Vec<(String, String)>,
}

/// Reads a golden file from `dir` when given, else the built-in copy.
pub fn load_golden(name: &str, dir: Option<&Path>) -> Result<GoldenFile> {
    let text = match dir {
        Some(d) => std::fs::read_to_string(d.join(format!("{name}.txt")))?,
        None => EMBEDDED
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, t)| t.to_string())
            .ok_or_else(|| Error::Parse(format!("no golden file `{name}`")))?,
    };
    GoldenFile::parse(name, &text)
}

impl GoldenFile {
    pub fn parse(name: &str, text: &str) -> Result<GoldenFile> {
        let mut field_spec = None;
        let mut vars = Vec::new();
        let mut entries = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if let Some(h) = line.strip_prefix('#') {
                let h = h.trim();
                if let Some(spec) = h.strip_prefix("field") {
                    field_spec = Some(spec.trim().to_string());
                } else if let Some(v) = h.strip_prefix("vars") {
                    vars = v.split_whitespace().map(String::from).collect();
                }
                continue;
            }
            match line.split_once(':') {
                Some((k, body)) if !k.contains(' ') && !k.contains('^') => {
                    entries.push((k.to_string(), body.trim().to_string()))
                }
                _ => entries.push((String::new(), line.to_string())),
            }
        }
        let field_spec = field_spec
            .ok_or_else(|| Error::Parse(format!("golden file `{name}` lacks a field header")))?;
        if entries.is_empty() {
            return Err(Error::Parse(format!("golden file `{name}` is empty")));
        }
        Ok(GoldenFile {
            name: name.to_string(),
            field_spec,
            vars,
            entries,
        })
    }

    /// The header field, or `override_spec` when given.
    pub fn field(&self, override_spec: Option<&str>) -> Result<Arc<Field>> {
        Field::parse_spec(override_spec.unwrap_or(&self.field_spec))
    }

    /// The bare body line.
    pub fn body(&self) -> Result<&str> {
        self.entry("")
    }

    pub fn entry(&self, key: &str) -> Result<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, b)| b.as_str())
            .ok_or_else(|| {
                Error::Parse(format!("golden file `{}` has no entry `{key}`", self.name))
            })
    }

    fn var(&self, i: usize) -> Result<&str> {
        self.vars.get(i).map(String::as_str).ok_or_else(|| {
            Error::Parse(format!(
                "golden file `{}` declares too few variables",
                self.name
            ))
        })
    }

    /// The body as a polynomial in the two declared variables, reading
    /// `mu` as the element `mu`.
    pub fn bivar(&self, field: &Arc<Field>, mu: Fq) -> Result<BivarPoly> {
        BivarPoly::parse_with(field, self.body()?, self.var(0)?, self.var(1)?, mu)
    }

    /// The body as a homogeneous polynomial in `X, Y, Z`, returned in the
    /// chart `Z = 1`.
    pub fn projective(&self, field: &Arc<Field>, mu: Fq) -> Result<BivarPoly> {
        Ok(HomPoly::parse_with(field, self.body()?, mu)?.dehomogenize(Chart::Z))
    }

    /// A named entry as a univariate polynomial in the first variable.
    pub fn univariate(&self, key: &str, field: &Arc<Field>, mu: Fq) -> Result<Poly> {
        let v = self.var(0)?;
        let p = BivarPoly::parse_with(field, self.entry(key)?, v, "_unused", mu)?;
        if p.deg_y() > 0 {
            return Err(Error::Parse(format!("entry `{key}` is not univariate")));
        }
        Ok(p.as_poly_in_y().swap_remove(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_builtin_golden_file_parses() {
        for name in GOLDEN_NAMES {
            let g = load_golden(name, None).unwrap();
            let f = g.field(None).unwrap();
            assert_eq!(f.spec(), "gf2^4:0x13");
            assert!(!g.vars.is_empty(), "{name}");
        }
        let g = load_golden("6.1a-witt", None).unwrap();
        let f = g.field(None).unwrap();
        let xi = g.univariate("xi", &f, f.generator()).unwrap();
        assert_eq!(xi.deg(), 16);
        let g = load_golden("6.2", None).unwrap();
        let p = g.bivar(&f, f.generator()).unwrap();
        assert_eq!((p.deg_x(), p.deg_y()), (8, 4));
    }

    #[test]
    fn named_entries_and_errors() {
        let g = GoldenFile::parse(
            "t",
            "# field gf2^4:0x13\n# vars X Y Z\npsi: X; Y; Z\nX^2*Y + Z",
        )
        .unwrap();
        assert_eq!(g.entry("psi").unwrap(), "X; Y; Z");
        assert_eq!(g.body().unwrap(), "X^2*Y + Z");
        assert!(GoldenFile::parse("t", "X + Y").is_err());
    }
}
