//! Parser for the line-oriented presentation format.
//!
//! ```text
//! # a truncated polynomial line over F_2
//! field 2
//! algebra commutative
//! generator x 2
//! generator y 4
//! product x x = y
//! ```
//!
//! Directives may appear in any order; `#` starts a comment.  Products
//! and differentials that are never mentioned default to zero, written
//! `= 0` when spelled out.  Right-hand sides are linear combinations
//! `c1*m1 + c2*m2` with integer or `p/q` coefficients; a bare monomial
//! means coefficient one.

use std::collections::BTreeMap;

use cotriple_core::linear::Lin;
use cotriple_core::presentation::{ABasis, AlgebraKind, AlgebraPresentation};
use cotriple_core::scalar::{FieldSpec, Scalar};
use cotriple_core::{Error, Result};

fn syntax(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn check_name(line: usize, name: &str) -> Result<()> {
    let mut chars = name.chars();
    let head_ok = chars
        .next()
        .is_some_and(|c| c.is_ascii_alphabetic() || c == '_');
    if head_ok && chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') {
        Ok(())
    } else {
        Err(syntax(line, format!("invalid generator name `{name}`")))
    }
}

fn parse_coefficient(line: usize, text: &str, field: FieldSpec) -> Result<Scalar> {
    let int = |s: &str| -> Result<i64> {
        s.parse()
            .map_err(|_| syntax(line, format!("invalid coefficient `{text}`")))
    };
    match text.split_once('/') {
        Some((num, den)) => field
            .fraction(int(num.trim())?, int(den.trim())?)
            .map_err(|e| syntax(line, e.to_string())),
        None => Ok(field.integer(int(text)?)),
    }
}

/// Parses `c1*m1 + c2*m2 + ...` (or the literal `0`) against the declared
/// generator degrees.
fn parse_combination(
    line: usize,
    text: &str,
    field: FieldSpec,
    degrees: &BTreeMap<String, i64>,
) -> Result<Lin<ABasis>> {
    let text = text.trim();
    if text.is_empty() {
        return Err(syntax(line, "missing right-hand side"));
    }
    if text == "0" {
        return Ok(Lin::zero());
    }
    let mut out = Lin::zero();
    for term in text.split('+') {
        let term = term.trim();
        if term.is_empty() {
            return Err(syntax(line, "empty term in linear combination"));
        }
        let (coeff, name) = match term.split_once('*') {
            Some((c, m)) => (parse_coefficient(line, c.trim(), field)?, m.trim()),
            None => (field.one(), term),
        };
        check_name(line, name)?;
        let Some(&degree) = degrees.get(name) else {
            return Err(syntax(line, format!("unknown generator `{name}`")));
        };
        out.add_term(ABasis::new(name, degree), coeff);
    }
    Ok(out)
}

/// Reads a presentation from `text`.  A field override replaces the
/// file's `field` directive; coefficients are then read in the override
/// field.
pub fn parse_presentation(
    text: &str,
    field_override: Option<FieldSpec>,
) -> Result<AlgebraPresentation> {
    let mut field_decl: Option<FieldSpec> = None;
    let mut kind_decl: Option<AlgebraKind> = None;
    let mut generators: Vec<(usize, String, i64)> = Vec::new();
    // Right-hand sides stay unparsed until the field and all generator
    // degrees are known.
    let mut products: Vec<(usize, String, String, String)> = Vec::new();
    let mut differentials: Vec<(usize, String, String)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (head, rest) = body.split_at(body.find(char::is_whitespace).unwrap_or(body.len()));
        let rest = rest.trim();
        match head {
            "field" => {
                let c: u64 = rest
                    .parse()
                    .map_err(|_| syntax(line, format!("expected a characteristic, got `{rest}`")))?;
                let f = FieldSpec::from_characteristic(c)
                    .map_err(|e| syntax(line, e.to_string()))?;
                if field_decl.replace(f).is_some() {
                    return Err(syntax(line, "field declared twice"));
                }
            }
            "algebra" => {
                let k = match rest {
                    "commutative" => AlgebraKind::Commutative,
                    "free" => AlgebraKind::Free,
                    other => {
                        return Err(syntax(
                            line,
                            format!("expected `commutative` or `free`, got `{other}`"),
                        ))
                    }
                };
                if kind_decl.replace(k).is_some() {
                    return Err(syntax(line, "algebra kind declared twice"));
                }
            }
            "generator" => {
                let mut words = rest.split_whitespace();
                let (Some(name), Some(degree), None) =
                    (words.next(), words.next(), words.next())
                else {
                    return Err(syntax(line, "expected `generator <name> <degree>`"));
                };
                check_name(line, name)?;
                let degree: i64 = degree
                    .parse()
                    .map_err(|_| syntax(line, format!("invalid degree `{degree}`")))?;
                generators.push((line, name.to_string(), degree));
            }
            "product" => {
                let Some((left, rhs)) = rest.split_once('=') else {
                    return Err(syntax(line, "expected `product <g> <h> = <value>`"));
                };
                let mut words = left.split_whitespace();
                let (Some(g), Some(h), None) = (words.next(), words.next(), words.next())
                else {
                    return Err(syntax(line, "expected `product <g> <h> = <value>`"));
                };
                check_name(line, g)?;
                check_name(line, h)?;
                products.push((line, g.to_string(), h.to_string(), rhs.to_string()));
            }
            "differential" => {
                let Some((left, rhs)) = rest.split_once('=') else {
                    return Err(syntax(line, "expected `differential <g> = <value>`"));
                };
                let g = left.trim();
                check_name(line, g)?;
                differentials.push((line, g.to_string(), rhs.to_string()));
            }
            other => {
                return Err(syntax(line, format!("unrecognized directive `{other}`")));
            }
        }
    }

    let field = match field_override.or(field_decl) {
        Some(f) => f,
        None => return Err(Error::Validation("presentation never declares a field".into())),
    };
    let kind = match kind_decl {
        Some(k) => k,
        None => {
            return Err(Error::Validation(
                "presentation never declares an algebra kind".into(),
            ))
        }
    };

    let mut degrees: BTreeMap<String, i64> = BTreeMap::new();
    for (line, name, degree) in &generators {
        if degrees.insert(name.clone(), *degree).is_some() {
            return Err(syntax(*line, format!("generator `{name}` declared twice")));
        }
    }
    let named = |line: usize, name: &str| -> Result<()> {
        if degrees.contains_key(name) {
            Ok(())
        } else {
            Err(syntax(line, format!("unknown generator `{name}`")))
        }
    };

    let mut product_table = Vec::new();
    for (line, g, h, rhs) in &products {
        named(*line, g)?;
        named(*line, h)?;
        let value = parse_combination(*line, rhs, field, &degrees)?;
        product_table.push(((g.clone(), h.clone()), value));
    }
    let mut differential_table = Vec::new();
    for (line, g, rhs) in &differentials {
        named(*line, g)?;
        let value = parse_combination(*line, rhs, field, &degrees)?;
        differential_table.push((g.clone(), value));
    }

    AlgebraPresentation::new(
        field,
        kind,
        generators.into_iter().map(|(_, n, d)| (n, d)).collect(),
        product_table,
        differential_table,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_a_truncated_polynomial_presentation() {
        let text = "\
# squares truncate onto y
field 2
algebra commutative
generator x 2
generator y 4
product x x = y
";
        let a = parse_presentation(text, None).unwrap();
        assert_eq!(a.field().characteristic(), 2);
        assert_eq!(a.basis_in_degree(2).unwrap().len(), 1);
        let f = a.field();
        let x = Lin::single(ABasis::new("x", 2), f.one());
        let pair = cotriple_core::barratt_eccles::PermTuple::e(2);
        let sq = a
            .act(&Lin::single(pair, f.one()), &[x.clone(), x])
            .unwrap();
        assert_eq!(sq.len(), 1);
        assert_eq!(sq.iter().next().unwrap().0, &ABasis::new("y", 4));
    }

    #[test]
    fn rational_coefficients_and_differentials_round_trip() {
        let text = "\
field 0
algebra commutative
generator w 1
generator z 2
differential z = 3/2*w + -1*w   # net 1/2 w
";
        let a = parse_presentation(text, None).unwrap();
        let dz = a.differential(&ABasis::new("z", 2)).unwrap();
        let f = a.field();
        let mut expected = Lin::zero();
        expected.add_term(ABasis::new("w", 1), f.fraction(1, 2).unwrap());
        assert_eq!(dz, expected);
    }

    #[test]
    fn the_field_override_replaces_the_declared_field() {
        let text = "field 0\nalgebra commutative\ngenerator x 1\n";
        let f2 = FieldSpec::from_characteristic(2).unwrap();
        let a = parse_presentation(text, Some(f2)).unwrap();
        assert_eq!(a.field().characteristic(), 2);
    }

    #[test]
    fn syntax_errors_carry_their_line_number() {
        let cases = [
            ("field 2\nalgebra commutative\nwobble x 1\n", 3, "unrecognized directive"),
            ("field 4\nalgebra commutative\n", 1, "not prime"),
            ("field 2\nalgebra commutative\ngenerator x\n", 3, "expected `generator"),
            (
                "field 2\nalgebra commutative\ngenerator x 1\nproduct x x = y\n",
                4,
                "unknown generator",
            ),
            (
                "field 2\nalgebra commutative\ngenerator x 1\ndifferential x = 1/2*x\n",
                4,
                "denominator",
            ),
            (
                "field 2\nalgebra commutative\ngenerator x 1\ngenerator x 2\n",
                4,
                "declared twice",
            ),
        ];
        for (text, want_line, want_msg) in cases {
            match parse_presentation(text, None) {
                Err(Error::Parse { line, msg }) => {
                    assert_eq!(line, want_line, "for input {text:?}");
                    assert!(msg.contains(want_msg), "got `{msg}` for input {text:?}");
                }
                other => panic!("expected a parse error for {text:?}, got {other:?}"),
            }
        }
    }

    #[test]
    fn semantic_violations_surface_as_validation_errors() {
        let degree_zero = "field 2\nalgebra commutative\ngenerator x 0\n";
        let err = parse_presentation(degree_zero, None).unwrap_err();
        assert!(matches!(err, Error::Validation(ref m) if m.contains("degrees >= 1")));

        let additivity = "\
field 0
algebra commutative
generator x 1
generator y 3
product x x = y
";
        let err = parse_presentation(additivity, None).unwrap_err();
        assert!(matches!(err, Error::Validation(ref m) if m.contains("degree-additive")));

        let missing_field = "algebra commutative\ngenerator x 1\n";
        let err = parse_presentation(missing_field, None).unwrap_err();
        assert!(matches!(err, Error::Validation(ref m) if m.contains("field")));
    }
}
