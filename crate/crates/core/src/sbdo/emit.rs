//! Serialized forms of the source operator and of `B^(m)_k`: JSON with
//! exact coefficient strings, plain text, and LaTeX with coefficients split
//! into linear factors where possible.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::scalar::{ExactRender, GaussianRational, Var};
use crate::weyl::{DerivIndex, Op};
use crate::Poly;

/// `{n, k, m, lambda, mu, terms: [{dx, dy, map}]}`, where `map` is the
/// row-major matrix from `S (x) S'` to `k`-forms.
pub fn sbdo_json(b: &Op, k: usize, m: usize, lambda: &Poly, mu: &Poly) -> Value {
    let n = b.n();
    let terms: Vec<Value> = b
        .terms()
        .map(|(d, c)| json!({ "dx": d.alpha(n), "dy": d.beta(n), "map": c.render_rows() }))
        .collect();
    json!({ "n": n, "k": k, "m": m, "lambda": lambda.render(), "mu": mu.render(), "terms": terms })
}

/// `{n, lambda, mu, terms: [{dx, dy, coeff}]}` for `E_{lambda,mu}`.
pub fn source_json(e: &Op, lambda: &Poly, mu: &Poly) -> Value {
    json!({ "n": e.n(), "lambda": lambda.render(), "mu": mu.render(), "terms": e.to_json() })
}

/// Integer content of a polynomial with Gaussian-integer-free rational
/// coefficients, signed like the leading coefficient; `None` when some
/// coefficient is not a real integer.
fn integer_content(p: &Poly) -> Option<num_bigint::BigInt> {
    let mut g = num_bigint::BigInt::zero();
    for (_, c) in p.terms() {
        if !c.im.is_zero() || !c.re.is_integer() {
            return None;
        }
        g = g.gcd(&c.re.to_integer());
    }
    let (_, lead) = p.leading()?;
    Some(if lead.re.is_negative() { -g } else { g })
}

fn is_integral(p: &Poly) -> bool {
    p.terms().all(|(_, c)| c.im.is_zero() && c.re.is_integer())
}

fn linear(a: i64, b: i64, c: i64) -> Poly {
    &(&(&Poly::var(Var::LAMBDA) * &Poly::from_int(a)) + &(&Poly::var(Var::MU) * &Poly::from_int(b))) + &Poly::from_int(c)
}

/// Candidate factors `a lambda + b mu + c` with small integer coefficients,
/// `lambda` before `mu`.
fn candidates(bound: i64) -> Vec<Poly> {
    let mut out = Vec::new();
    for (a, b) in [(1, 0), (2, 0), (0, 1), (0, 2), (1, 1), (2, 2)] {
        out.push(linear(a, b, 0));
        for c in 1..=bound {
            out.push(linear(a, b, c));
            out.push(linear(a, b, -c));
        }
    }
    out
}

/// `p = c * f_1 * ... * f_r * rest` with integer `c`, linear `f_i` in
/// `lambda`, `mu` and everything left over in `rest` (which is `1` when
/// the factorization is complete).
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFactors {
    pub constant: GaussianRational,
    pub factors: Vec<Poly>,
    pub rest: Poly,
}

pub fn factor_linear(p: &Poly) -> LinearFactors {
    let content = integer_content(p).filter(|c| !c.is_zero());
    let constant = match &content {
        Some(c) => GaussianRational::new(crate::Rational::from_integer(c.clone()), Zero::zero()),
        None => GaussianRational::one(),
    };
    let mut rest = p.scale(&(GaussianRational::one() / constant.clone()));
    let mut factors = Vec::new();
    if p.is_zero() || p.is_constant() {
        return LinearFactors { constant: p.constant_term(), factors, rest: Poly::one() };
    }
    let cands = candidates(12);
    'outer: while !rest.is_constant() {
        for f in &cands {
            if let Some(q) = rest.div_exact(f) {
                if is_integral(&q) {
                    factors.push(f.clone());
                    rest = q;
                    continue 'outer;
                }
            }
        }
        break;
    }
    if rest.is_constant() {
        let c = rest.constant_term();
        return LinearFactors { constant: constant * c, factors, rest: Poly::one() };
    }
    LinearFactors { constant, factors, rest }
}

fn paren(p: &Poly) -> String {
    format!("({})", tighten(&p.latex()))
}

/// LaTeX of a scalar coefficient as a product of linear factors, with its
/// sign split off: `(negative, "2\mu(2\mu+1)")`.
pub fn coefficient_latex(p: &Poly) -> (bool, String) {
    let f = factor_linear(p);
    let negative = f.constant.im.is_zero() && f.constant.re.is_negative();
    let c = if negative { -f.constant.clone() } else { f.constant.clone() };
    let mut out = if c.is_one() && !(f.factors.is_empty() && f.rest.is_one()) { String::new() } else { c.render() };
    let mut parts: Vec<String> = Vec::new();
    let single_var = |q: &Poly| q.terms().count() == 1 && is_integral(q);
    for (i, q) in f.factors.iter().enumerate() {
        if i == 0 && single_var(q) {
            parts.push(tighten(&q.latex()));
        } else {
            parts.push(paren(q));
        }
    }
    if !f.rest.is_one() {
        parts.push(paren(&f.rest));
    }
    out.push_str(&parts.concat());
    (negative, tighten(&out))
}

/// Drops spaces except between two letters, where `\lambda x` needs one.
fn tighten(s: &str) -> String {
    let chars: Vec<char> = s.chars().collect();
    let mut out = String::new();
    for (i, c) in chars.iter().enumerate() {
        if *c == ' ' {
            let before = i > 0 && chars[i - 1].is_alphabetic();
            let after = chars.get(i + 1).is_some_and(|c| c.is_alphabetic());
            if !(before && after) {
                continue;
            }
        }
        out.push(*c);
    }
    out
}

fn derivative_latex(d: &DerivIndex, n: usize) -> String {
    let order = d.order();
    let name = |block: &str, j: usize| if n == 1 { block.to_string() } else { format!("{block}_{{{j}}}") };
    let mut den = Vec::new();
    for (block, exps) in [("x", d.alpha(n)), ("y", d.beta(n))] {
        for (j, e) in exps.iter().enumerate() {
            match e {
                0 => {}
                1 => den.push(format!("\\partial {}", name(block, j + 1))),
                e => den.push(format!("\\partial {}^{{{e}}}", name(block, j + 1))),
            }
        }
    }
    if order == 0 {
        return String::new();
    }
    let top = if order == 1 { "\\partial".to_string() } else { format!("\\partial^{{{order}}}") };
    format!("\\frac{{{top}}}{{{}}}", den.join(""))
}

/// Pure `x` derivatives first, then pure `y`, then mixed terms.
fn latex_order(d: &DerivIndex, n: usize) -> (u8, Vec<u8>, Vec<u8>) {
    let (a, b) = (d.alpha(n), d.beta(n));
    let group = match (a.iter().any(|e| *e > 0), b.iter().any(|e| *e > 0)) {
        (_, false) => 0,
        (false, true) => 1,
        (true, true) => 2,
    };
    (group, a.iter().map(|e| u8::MAX - e).collect(), b.iter().map(|e| u8::MAX - e).collect())
}

/// LaTeX of a bi-differential operator.  Scalar (`1 x 1`) coefficients are
/// factored; matrix coefficients are written as `pmatrix` blocks.
pub fn operator_latex(op: &Op) -> String {
    let n = op.n();
    let mut terms: Vec<_> = op.terms().collect();
    terms.sort_by_key(|(d, _)| latex_order(d, n));
    let mut out = String::new();
    for (d, m) in terms {
        let deriv = derivative_latex(d, n);
        let (negative, body) = if m.rows() == 1 && m.cols() == 1 {
            let (neg, c) = coefficient_latex(m.get(0, 0));
            (neg, if c.is_empty() && deriv.is_empty() { "1".to_string() } else { c })
        } else {
            let rows: Vec<String> = (0..m.rows())
                .map(|i| (0..m.cols()).map(|j| m.get(i, j).latex()).collect::<Vec<_>>().join(" & "))
                .collect();
            (false, format!("\\begin{{pmatrix}}{}\\end{{pmatrix}}", rows.join(" \\\\ ")))
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        out.push_str(&body);
        out.push_str(&deriv);
    }
    if out.is_empty() {
        "0".into()
    } else {
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sbdo::{build_b, formal_parameters};
    use crate::spin::CliffordModule;

    #[test]
    fn linear_factors_of_the_bracket_coefficients() {
        let (l, u) = formal_parameters();
        let two_mu = &u * &Poly::from_int(2);
        let p = &two_mu * &(&two_mu + &Poly::one());
        assert_eq!(coefficient_latex(&p), (false, "2\\mu(2\\mu+1)".into()));
        let q = &(&(&(&l * &Poly::from_int(2)) + &Poly::one()) * &(&two_mu + &Poly::one())) * &Poly::from_int(-2);
        assert_eq!(coefficient_latex(&q), (true, "2(2\\lambda+1)(2\\mu+1)".into()));
        assert_eq!(coefficient_latex(&Poly::from_int(-3)), (true, "3".into()));
    }

    #[test]
    fn one_dimensional_display() {
        let (l, u) = formal_parameters();
        let b = build_b(&CliffordModule::new(1).unwrap(), 0, &l, &u, 1).unwrap();
        assert_eq!(
            operator_latex(&b),
            "2\\mu(2\\mu+1)\\frac{\\partial^{2}}{\\partial x^{2}} + 2\\lambda(2\\lambda+1)\\frac{\\partial^{2}}{\\partial y^{2}} \
             - 2(2\\lambda+1)(2\\mu+1)\\frac{\\partial^{2}}{\\partial x\\partial y}"
        );
    }

    #[test]
    fn json_schema() {
        let (l, u) = formal_parameters();
        let b = build_b(&CliffordModule::new(2).unwrap(), 1, &l, &u, 1).unwrap();
        let v = sbdo_json(&b, 1, 1, &l, &u);
        assert_eq!(v["k"], 1);
        let t = &v["terms"][0];
        assert_eq!(t["dx"].as_array().unwrap().len(), 2);
        assert_eq!(t["map"].as_array().unwrap().len(), 2);
        assert_eq!(t["map"][0].as_array().unwrap().len(), 4);
    }
}
