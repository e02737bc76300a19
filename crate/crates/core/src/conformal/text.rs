//! Group elements as text: products of the tokens `nbar(v1,...,vn)`,
//! `m:<element>`, `a(r)`, `n(u1,...,un)`, `w` and `w^-1`, separated by
//! spaces or `*`.  A Spin(n) element is written as a blade product such as
//! `e1e2` or as a parenthesized combination like `(3/5 + 4/5*e1^e2)`.

use super::GroupElement;
use crate::clifford::{Multivector, Signature};
use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational};

/// Splits at top-level separators, keeping parenthesized groups intact.
fn split_top(text: &str, is_sep: impl Fn(char) -> bool) -> Result<Vec<String>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        if depth < 0 {
            return Err(Error::Parse(format!("unbalanced ')' in {text:?}")));
        }
        if depth == 0 && is_sep(ch) {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push(ch);
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced '(' in {text:?}")));
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    Ok(out)
}

fn parse_args(inner: &str, n: usize) -> Result<Vec<Rational>> {
    let vals = inner.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
    if vals.len() != n {
        return Err(Error::Parse(format!("expected {n} coordinates, found {}", vals.len())));
    }
    Ok(vals)
}

fn call<'a>(token: &'a str, name: &str) -> Option<&'a str> {
    token.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')
}

/// `e1e2`, `e1^e3`, `e_1 e_2`: the product of the named generators.
fn parse_blade(sig: Signature, text: &str) -> Result<Multivector<Rational>> {
    let cleaned: String = text.chars().filter(|c| !matches!(c, '^' | '_' | ' ')).collect();
    let mut indices = Vec::new();
    for part in cleaned.split('e').skip(1) {
        let i: usize = part.parse().map_err(|_| Error::Parse(format!("bad generator in {text:?}")))?;
        if i < sig.first_index() || i >= sig.first_index() + sig.dim() {
            return Err(Error::OutOfRange(format!("generator e{i}")));
        }
        indices.push(i);
    }
    if !cleaned.starts_with('e') || indices.is_empty() {
        return Err(Error::Parse(format!("expected a blade, found {text:?}")));
    }
    Ok(Multivector::product_of(sig, &indices))
}

/// Parses a signed sum of `coefficient`, `blade` or `coefficient*blade` terms.
pub fn parse_multivector(sig: Signature, text: &str) -> Result<Multivector<Rational>> {
    let mut body = text.trim();
    while let Some(inner) = body.strip_prefix('(').and_then(|b| b.strip_suffix(')')) {
        body = inner.trim();
    }
    let mut acc = Multivector::zero(sig);
    let mut start = 0;
    let chars: Vec<(usize, char)> = body.char_indices().collect();
    let mut pieces = Vec::new();
    for (k, (i, ch)) in chars.iter().enumerate() {
        let after_op = k > 0 && matches!(chars[k - 1].1, '*' | '/' | '^');
        if (*ch == '+' || *ch == '-') && *i > start && !after_op {
            pieces.push(&body[start..*i]);
            start = *i;
        }
    }
    pieces.push(&body[start..]);
    for piece in pieces {
        let piece = piece.trim();
        let (sign, rest) = match piece.strip_prefix('-') {
            Some(r) => (-1, r.trim()),
            None => (1, piece.strip_prefix('+').unwrap_or(piece).trim()),
        };
        if rest.is_empty() {
            return Err(Error::Parse(format!("empty term in {text:?}")));
        }
        let term = match rest.split_once('*') {
            Some((c, b)) => parse_blade(sig, b.trim())?.scale(&parse_rational(c)?),
            None if rest.starts_with('e') => parse_blade(sig, rest)?,
            None => Multivector::scalar(sig, parse_rational(rest)?),
        };
        let term = if sign < 0 { -&term } else { term };
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Parses a product of group-element tokens for the given `n`.
pub fn parse_group_element(n: usize, text: &str) -> Result<GroupElement<Rational>> {
    let mut acc = GroupElement::identity(n);
    let tokens = split_top(text, |c| c.is_whitespace() || c == '*')?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty group element".into()));
    }
    for token in tokens {
        let g = if let Some(inner) = call(&token, "nbar") {
            GroupElement::nbar(&parse_args(inner, n)?)
        } else if let Some(inner) = call(&token, "n") {
            GroupElement::n_elem(&parse_args(inner, n)?)
        } else if let Some(inner) = call(&token, "a") {
            GroupElement::a(n, &parse_rational(inner)?)?
        } else if token == "w" {
            GroupElement::w(n)
        } else if token == "w^-1" || token == "w^{-1}" {
            GroupElement::w(n).inverse()
        } else if let Some(body) = token.strip_prefix("m:") {
            GroupElement::m(&parse_multivector(Signature::euclidean(n), body)?)?
        } else {
            return Err(Error::Parse(format!("unknown group-element token {token:?}")));
        };
        acc = acc.mul(&g);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::gn_factorize;
    use crate::scalar::rational;

    #[test]
    fn tokens() {
        let g = parse_group_element(2, "w^-1 * nbar(3/5,4/5)").unwrap();
        let expect = GroupElement::w(2).inverse().mul(&GroupElement::nbar(&[rational(3, 5), rational(4, 5)]));
        assert_eq!(g, expect);
        let g = parse_group_element(2, "nbar(1,2) m:e1e2 a(2) n(0,1/3)").unwrap();
        let f = gn_factorize(&g).unwrap();
        assert_eq!(f.r, rational(2, 1));
        assert_eq!(f.v, vec![rational(1, 1), rational(2, 1)]);
        assert_eq!(parse_group_element(2, &f.render()).unwrap(), g);
        assert!(parse_group_element(2, "m:(3/5 + 4/5*e1^e2)").is_ok());
        assert!(parse_group_element(2, "m:(3/5 + 1/5*e1^e2)").is_err());
        assert!(parse_group_element(2, "nbar(1)").is_err());
        assert!(parse_group_element(2, "q").is_err());
        assert!(parse_group_element(2, "a(-1)").is_err());
    }

    #[test]
    fn multivector_text() {
        let sig = Signature::euclidean(3);
        let m = parse_multivector(sig, "-1/2 + e2 - 3*e1^e3").unwrap();
        assert_eq!(m.render(), "-1/2 + e2 - 3*e1^e3");
        assert_eq!(parse_multivector(sig, &m.render()).unwrap(), m);
        assert!(parse_multivector(sig, "e4").is_err());
    }
}
