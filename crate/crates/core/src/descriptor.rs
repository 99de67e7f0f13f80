//! Space descriptors: `lp:<p>:<n>`, `lorentz:<p>:<q>:<n>`,
//! `gweak:pow:<a>:<n>`, `gweak:file:<path>:<n>`. The trailing `:<n>` may be
//! omitted; `p`, `q` accept `inf`.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::growth::GrowthSequence;
use crate::scalar::Real;
use crate::seq::SymmetricSpace;
use crate::space::NormedSpace;

#[derive(Debug, Clone, PartialEq)]
pub struct Descriptor<T> {
    pub family: SymmetricSpace<T>,
    pub dim: Option<usize>,
}

fn bad(token: &str, reason: impl Into<String>) -> Error {
    Error::Descriptor { token: token.to_string(), reason: reason.into() }
}

fn real<T: Real>(token: &str) -> Result<T> {
    match token {
        "inf" | "infinity" | "Inf" => Ok(T::infinity()),
        _ => f64::from_str(token).map(T::lit).map_err(|_| bad(token, "expected a number")),
    }
}

fn dim(token: &str) -> Result<usize> {
    match token.parse::<usize>() {
        Ok(0) => Err(bad(token, "dimension must be positive")),
        Ok(n) => Ok(n),
        Err(_) => Err(bad(token, "expected a dimension")),
    }
}

fn family_err(token: &str, e: Error) -> Error {
    match e {
        Error::InvalidParameter { reason, .. } => bad(token, reason),
        other => other,
    }
}

impl<T: Real> Descriptor<T> {
    /// The space, with `default_dim` used when the descriptor has no `n`.
    pub fn space(&self, default_dim: Option<usize>) -> Result<NormedSpace<T>> {
        let n = self
            .dim
            .or(default_dim)
            .ok_or_else(|| bad(&self.family_label(), "no dimension given"))?;
        NormedSpace::new(self.family.clone(), n)
    }

    fn family_label(&self) -> String {
        format!("{:?}", self.family)
    }
}

pub fn parse_descriptor<T: Real>(text: &str) -> Result<Descriptor<T>> {
    let tokens: Vec<&str> = text.split(':').collect();
    let opt_dim = |rest: &[&str], arity: usize| -> Result<Option<usize>> {
        match rest.len() {
            l if l == arity => Ok(None),
            l if l == arity + 1 => dim(rest[arity]).map(Some),
            _ => Err(bad(text, format!("expected {arity} parameter(s) and an optional dimension"))),
        }
    };
    match tokens[0] {
        "lp" => {
            let rest = &tokens[1..];
            let d = opt_dim(rest, 1)?;
            let p = real(rest[0])?;
            Ok(Descriptor { family: SymmetricSpace::lp(p).map_err(|e| family_err(rest[0], e))?, dim: d })
        }
        "lorentz" => {
            let rest = &tokens[1..];
            let d = opt_dim(rest, 2)?;
            let (p, q) = (real(rest[0])?, real(rest[1])?);
            let family = SymmetricSpace::lorentz(p, q).map_err(|e| family_err(&format!("{}:{}", rest[0], rest[1]), e))?;
            Ok(Descriptor { family, dim: d })
        }
        "gweak" => match tokens.get(1).copied() {
            Some("pow") => {
                let rest = &tokens[2..];
                let d = opt_dim(rest, 1)?;
                let a: T = real(rest[0])?;
                if !(a >= T::zero() && a <= T::one()) {
                    return Err(bad(rest[0], "exponent must lie in [0, 1]"));
                }
                Ok(Descriptor { family: SymmetricSpace::gweak(GrowthSequence::power(a)), dim: d })
            }
            Some("file") => {
                let rest = &tokens[2..];
                if rest.is_empty() || rest[0].is_empty() {
                    return Err(bad(text, "missing growth table path"));
                }
                // paths may contain ':'; a numeric last token is the dimension
                let (path, d) = match rest.split_last() {
                    Some((last, init)) if !init.is_empty() && last.parse::<usize>().is_ok() => (init.join(":"), Some(dim(last)?)),
                    _ => (rest.join(":"), None),
                };
                let g = GrowthSequence::from_file(&path).map_err(|e| bad(&path, e.to_string()))?;
                Ok(Descriptor { family: SymmetricSpace::gweak(g), dim: d })
            }
            Some(other) => Err(bad(other, "expected `pow` or `file`")),
            None => Err(bad(text, "expected `gweak:pow:<a>` or `gweak:file:<path>`")),
        },
        other => Err(bad(other, "unknown family, expected lp, lorentz or gweak")),
    }
}

/// Comma- or whitespace-separated reals.
pub fn parse_vector<T: Real>(text: &str) -> Result<Vec<T>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(real)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write as _;

    #[test]
    fn parses_families() {
        let d: Descriptor<f64> = parse_descriptor("lp:2:5").unwrap();
        assert_eq!(d.dim, Some(5));
        assert!(d.space(None).unwrap().is_euclidean());
        let d: Descriptor<f64> = parse_descriptor("lorentz:2:1").unwrap();
        assert_eq!(d.dim, None);
        assert_eq!(d.space(Some(2)).unwrap().dim(), 2);
        let d: Descriptor<f64> = parse_descriptor("lp:inf:3").unwrap();
        assert_eq!(d.space(None).unwrap().as_lp(), Some(f64::INFINITY));
        let d: Descriptor<f64> = parse_descriptor("gweak:pow:0.5:64").unwrap();
        assert_eq!(d.dim, Some(64));
    }

    #[test]
    fn growth_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "1 1\n2 1.5\n3 1.8").unwrap();
        let text = format!("gweak:file:{}:3", f.path().display());
        let d: Descriptor<f64> = parse_descriptor(&text).unwrap();
        assert_eq!(d.space(None).unwrap().dim(), 3);
    }

    #[test]
    fn errors_name_token() {
        let msg = |s: &str| parse_descriptor::<f64>(s).unwrap_err().to_string();
        assert!(msg("lq:2:3").contains("`lq`"));
        assert!(msg("lp:abc:3").contains("`abc`"));
        assert!(msg("lp:2:x").contains("`x`"));
        assert!(msg("lp:0.5:3").contains("`0.5`"));
        assert!(msg("gweak:exp:1").contains("`exp`"));
        assert!(msg("lp:2:0").contains("`0`"));
    }

    #[test]
    fn vectors() {
        assert_eq!(parse_vector::<f64>("1, 2 3").unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(parse_vector::<f64>("1,z").is_err());
    }
}
