//! Object coordinates: `(p,i)` on ℤQ, `d1,...,dn@s` for a shifted module,
//! and `P*` for all indecomposable projectives. Lists are `;`-separated.

use orbitcat_core::{DerivedCategory, DerivedIndec, DimVector, Error, Result, ZQVertex};

fn bad(input: &str, message: impl Into<String>) -> Error {
    Error::BadCoordinate {
        input: input.to_string(),
        message: message.into(),
    }
}

pub fn parse_object(dc: &DerivedCategory, text: &str) -> Result<DerivedIndec> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let n = dc.quiver().n();
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let (p, i) = inner.split_once(',').ok_or_else(|| bad(text, "expected (p,i)"))?;
        let p: i64 = p.parse().map_err(|_| bad(text, "p is not an integer"))?;
        let i: usize = i.parse().map_err(|_| bad(text, "i is not a vertex number"))?;
        if i == 0 || i > n {
            return Err(bad(text, format!("vertex {i} is not in 1..={n}")));
        }
        return Ok(dc.indec_at(ZQVertex::new(p, i)));
    }
    if let Some((d, shift)) = s.split_once('@') {
        let shift: i64 = shift.parse().map_err(|_| bad(text, "shift is not an integer"))?;
        let entries: Vec<i64> = d
            .split(',')
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad(text, "dimension vector entries must be integers"))?;
        if entries.len() != n {
            return Err(bad(text, format!("expected {n} entries, got {}", entries.len())));
        }
        let d = DimVector(entries);
        return dc.indec(&d, shift).map_err(|e| match e {
            Error::NotARoot(_) => bad(text, format!("{d} is not a positive root")),
            e => e,
        });
    }
    Err(bad(text, "expected (p,i) or d1,...,dn@shift"))
}

pub fn parse_object_list(dc: &DerivedCategory, text: &str) -> Result<Vec<DerivedIndec>> {
    let mut out = Vec::new();
    for item in text.split(';').map(str::trim).filter(|s| !s.is_empty()) {
        if item == "P*" {
            out.extend((1..=dc.quiver().n()).map(|i| dc.projective(i)));
        } else {
            out.push(parse_object(dc, item)?);
        }
    }
    if out.is_empty() {
        return Err(bad(text, "empty object list"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use orbitcat_core::Quiver;

    #[test]
    fn both_coordinate_systems() {
        let dc = DerivedCategory::new(Quiver::linear_a(2)).unwrap();
        let a = parse_object(&dc, "(0, 1)").unwrap();
        let b = parse_object(&dc, "1,1@0").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_object_list(&dc, "P*").unwrap().len(), 2);
        assert_eq!(parse_object_list(&dc, "(0,1); 0,1@1").unwrap().len(), 2);
        for bad in ["(0,3)", "1,1", "2,1@0", "1@0", "(x,1)", ""] {
            assert!(
                matches!(parse_object_list(&dc, bad), Err(Error::BadCoordinate { .. })),
                "{bad}"
            );
        }
    }
}
