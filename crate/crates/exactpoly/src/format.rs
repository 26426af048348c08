//! Line-oriented text format for constraint systems.
//!
//! A polytope file is a `vars` header followed by one constraint per
//! line:
//!
//! ```text
//! vars a0 a1 a2 b0 b1 b2 c0 c1 c2
//! a0 + a1 + a2 + b0 + b1 + b2 + c0 + c1 + c2 = 3
//! a0 a2 b2 <= 1
//! 2 b1 - 1/2 c0 <= 3/4
//! ```
//!
//! Parsing is whitespace-insensitive. Juxtaposed variables abbreviate a
//! sum (`a0 a2 b2` is `a0 + a2 + b2`), while a number followed by a
//! variable is a coefficient (`2 b1`). `>=` is accepted and normalized
//! to `<=`; constants may appear on either side. Blank lines and `#`
//! comments are skipped. Serialization is canonical: variables in
//! declared order, coefficients cleared to coprime integers, relations
//! only `<=` and `=`.

use std::collections::HashMap;

use crate::error::PolyError;
use crate::polytope::{Constraint, HPolytope, Relation};
use crate::scalar::Scalar;

/// A parsed linear expression: sum of `coeff * name` terms plus a constant.
#[derive(Clone, Debug)]
pub struct LinExpr<S> {
    pub terms: Vec<(String, S)>,
    pub constant: S,
}

impl<S: Scalar> LinExpr<S> {
    pub fn constant_only(c: S) -> Self {
        LinExpr {
            terms: Vec::new(),
            constant: c,
        }
    }

    pub fn var(name: &str) -> Self {
        LinExpr {
            terms: vec![(name.to_string(), S::one())],
            constant: S::zero(),
        }
    }

    pub fn add_scaled(&mut self, other: &LinExpr<S>, scale: &S) {
        for (name, c) in &other.terms {
            let scaled = c.clone() * scale;
            match self.terms.iter_mut().find(|(n, _)| n == name) {
                Some((_, acc)) => *acc = acc.clone() + scaled,
                None => self.terms.push((name.clone(), scaled)),
            }
        }
        let delta = other.constant.clone() * scale;
        self.constant = self.constant.clone() + delta;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParsedRel {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, PartialEq)]
enum Tok<S> {
    Num(S),
    Ident(String),
    Plus,
    Minus,
    Star,
    Rel(ParsedRel),
}

fn tokenize<S: Scalar>(line: &str) -> Result<Vec<Tok<S>>, String> {
    let mut toks = Vec::new();
    let bytes: Vec<char> = line.chars().collect();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '+' {
            toks.push(Tok::Plus);
            i += 1;
        } else if c == '-' {
            toks.push(Tok::Minus);
            i += 1;
        } else if c == '*' {
            toks.push(Tok::Star);
            i += 1;
        } else if c == '<' || c == '>' {
            if i + 1 >= bytes.len() || bytes[i + 1] != '=' {
                return Err(format!("expected `{c}=`"));
            }
            toks.push(Tok::Rel(if c == '<' { ParsedRel::Le } else { ParsedRel::Ge }));
            i += 2;
        } else if c == '=' {
            toks.push(Tok::Rel(ParsedRel::Eq));
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            // Optional /denominator, allowing spaces around the slash.
            let mut j = i;
            while j < bytes.len() && bytes[j].is_whitespace() {
                j += 1;
            }
            let text: String = if j < bytes.len() && bytes[j] == '/' {
                j += 1;
                while j < bytes.len() && bytes[j].is_whitespace() {
                    j += 1;
                }
                let dstart = j;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if dstart == j {
                    return Err("missing denominator after `/`".to_string());
                }
                let num: String = bytes[start..i].iter().collect();
                let den: String = bytes[dstart..j].iter().collect();
                i = j;
                format!("{num}/{den}")
            } else {
                let t: String = bytes[start..i].iter().collect();
                t
            };
            let v = S::parse_frac(&text).ok_or_else(|| format!("bad rational `{text}`"))?;
            toks.push(Tok::Num(v));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            toks.push(Tok::Ident(bytes[start..i].iter().collect()));
        } else {
            return Err(format!("unexpected character `{c}`"));
        }
    }
    Ok(toks)
}

fn parse_expr<S: Scalar>(toks: &[Tok<S>]) -> Result<LinExpr<S>, String> {
    let mut expr = LinExpr {
        terms: Vec::new(),
        constant: S::zero(),
    };
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut sign = S::one();
        loop {
            match toks.get(i) {
                Some(Tok::Plus) => {
                    i += 1;
                }
                Some(Tok::Minus) => {
                    sign = -sign;
                    i += 1;
                }
                _ => break,
            }
        }
        // Between terms a sign or juxtaposition is fine; an expression may
        // also start bare.
        let _ = first;
        first = false;
        match toks.get(i) {
            Some(Tok::Num(v)) => {
                let coeff = sign * v;
                i += 1;
                if matches!(toks.get(i), Some(Tok::Star)) {
                    i += 1;
                    let Some(Tok::Ident(name)) = toks.get(i) else {
                        return Err("expected variable after `*`".to_string());
                    };
                    expr.add_scaled(&LinExpr::var(name), &coeff);
                    i += 1;
                } else if let Some(Tok::Ident(name)) = toks.get(i) {
                    expr.add_scaled(&LinExpr::var(name), &coeff);
                    i += 1;
                } else {
                    expr.constant = expr.constant.clone() + coeff;
                }
            }
            Some(Tok::Ident(name)) => {
                expr.add_scaled(&LinExpr::var(name), &sign);
                i += 1;
            }
            other => return Err(format!("expected a term, found {other:?}")),
        }
    }
    Ok(expr)
}

/// Splits `lhs <rel> rhs` and parses both sides.
pub fn parse_relation_line<S: Scalar>(
    line: &str,
) -> Result<(LinExpr<S>, ParsedRel, LinExpr<S>), String> {
    let toks = tokenize::<S>(line)?;
    let rel_pos = toks
        .iter()
        .position(|t| matches!(t, Tok::Rel(_)))
        .ok_or_else(|| "missing relation (`<=`, `>=` or `=`)".to_string())?;
    if toks
        .iter()
        .skip(rel_pos + 1)
        .any(|t| matches!(t, Tok::Rel(_)))
    {
        return Err("more than one relation".to_string());
    }
    let Tok::Rel(rel) = toks[rel_pos] else {
        unreachable!()
    };
    let lhs = parse_expr(&toks[..rel_pos])?;
    let rhs = parse_expr(&toks[rel_pos + 1..])?;
    Ok((lhs, rel, rhs))
}

/// Turns a parsed relation into a dense constraint over `vars`, expanding
/// derived symbols through `substitutions` first. Unknown names are
/// input errors.
pub fn relation_to_constraint<S: Scalar>(
    lhs: &LinExpr<S>,
    rel: ParsedRel,
    rhs: &LinExpr<S>,
    vars: &[String],
    substitutions: &HashMap<String, LinExpr<S>>,
) -> Result<Constraint<S>, String> {
    let mut net = LinExpr {
        terms: Vec::new(),
        constant: S::zero(),
    };
    net.add_scaled(lhs, &S::one());
    net.add_scaled(rhs, &-S::one());
    // Expand derived symbols (which may themselves not recurse).
    let mut expanded = LinExpr {
        terms: Vec::new(),
        constant: net.constant.clone(),
    };
    for (name, c) in &net.terms {
        match substitutions.get(name) {
            Some(sub) => expanded.add_scaled(sub, c),
            None => expanded.add_scaled(&LinExpr::var(name), c),
        }
    }
    let mut coeffs = vec![S::zero(); vars.len()];
    for (name, c) in &expanded.terms {
        if c.is_zero() {
            continue;
        }
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| format!("unknown variable `{name}`"))?;
        coeffs[idx] = coeffs[idx].clone() + c;
    }
    let rhs_value = -expanded.constant;
    let (coeffs, rhs_value, relation) = match rel {
        ParsedRel::Le => (coeffs, rhs_value, Relation::Le),
        ParsedRel::Eq => (coeffs, rhs_value, Relation::Eq),
        ParsedRel::Ge => (
            coeffs.into_iter().map(|c| -c).collect(),
            -rhs_value,
            Relation::Le,
        ),
    };
    Constraint::new(coeffs, rhs_value, relation).map_err(|e| e.to_string())
}

pub fn parse_constraint_line<S: Scalar>(
    line: &str,
    vars: &[String],
    substitutions: &HashMap<String, LinExpr<S>>,
) -> Result<Constraint<S>, String> {
    let (lhs, rel, rhs) = parse_relation_line(line)?;
    relation_to_constraint(&lhs, rel, &rhs, vars, substitutions)
}

pub fn parse_polytope<S: Scalar>(text: &str) -> Result<HPolytope<S>, PolyError> {
    let mut poly: Option<HPolytope<S>> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars") {
            if poly.is_some() {
                return Err(PolyError::parse(lineno + 1, "duplicate vars header"));
            }
            let vars: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
            if vars.is_empty() {
                return Err(PolyError::parse(lineno + 1, "empty vars header"));
            }
            poly = Some(HPolytope::whole_space(vars).map_err(|e| {
                PolyError::parse(lineno + 1, e.to_string())
            })?);
            continue;
        }
        let Some(p) = poly.as_mut() else {
            return Err(PolyError::parse(
                lineno + 1,
                "constraint before vars header",
            ));
        };
        let c = parse_constraint_line(line, p.vars(), &HashMap::new())
            .map_err(|e| PolyError::parse(lineno + 1, e))?;
        p.push(c).map_err(|e| PolyError::parse(lineno + 1, e.to_string()))?;
    }
    poly.ok_or_else(|| PolyError::parse(0, "missing vars header"))
}

pub fn serialize_constraint<S: Scalar>(c: &Constraint<S>, vars: &[String]) -> String {
    let canon = c.canonical();
    let mut out = String::new();
    let mut first = true;
    for (i, coeff) in canon.coeffs.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let mag = coeff.abs();
        if first {
            if coeff.is_negative() {
                out.push_str("- ");
            }
            first = false;
        } else if coeff.is_negative() {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push(' ');
        }
        out.push_str(&vars[i]);
    }
    let rel = match canon.relation {
        Relation::Le => "<=",
        Relation::Eq => "=",
    };
    out.push_str(&format!(" {rel} {}", canon.rhs));
    out
}

pub fn serialize_polytope<S: Scalar>(p: &HPolytope<S>) -> String {
    let mut out = format!("vars {}\n", p.vars().join(" "));
    for c in p.equalities() {
        out.push_str(&serialize_constraint(c, p.vars()));
        out.push('\n');
    }
    for c in p.inequalities() {
        out.push_str(&serialize_constraint(c, p.vars()));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Q;

    #[test]
    fn parse_serialize_round_trip() {
        let text = "vars x y\nx + y = 1\n2 x - 1/2 y <= 3/4\n";
        let p = parse_polytope::<Q>(text).unwrap();
        assert_eq!(p.equalities().len(), 1);
        assert_eq!(p.inequalities().len(), 1);
        let s = serialize_polytope(&p);
        let p2 = parse_polytope::<Q>(&s).unwrap();
        assert_eq!(serialize_polytope(&p2), s);
        assert!(p.same_point_set(&p2).unwrap());
    }

    #[test]
    fn juxtaposition_is_summation() {
        let vars: Vec<String> = vec!["a0".into(), "a2".into(), "b2".into()];
        let c =
            parse_constraint_line::<Q>("a0 a2 b2 <= 1", &vars, &HashMap::new()).unwrap();
        assert_eq!(c.coeffs, vec![Q::from_int(1); 3]);
        assert_eq!(c.rhs, Q::from_int(1));
        let tight = parse_constraint_line::<Q>("a0+a2+b2<=1", &vars, &HashMap::new()).unwrap();
        assert_eq!(tight, c);
    }

    #[test]
    fn constants_fold_into_rhs_and_ge_flips() {
        let vars: Vec<String> = vec!["a1".into(), "b1".into(), "c1".into()];
        let c = parse_constraint_line::<Q>(
            "a1 + b1 + c1 - 1 <= 0",
            &vars,
            &HashMap::new(),
        )
        .unwrap();
        assert_eq!(c.rhs, Q::from_int(1));
        let g =
            parse_constraint_line::<Q>("b1 >= 1/2", &vars, &HashMap::new()).unwrap();
        assert_eq!(g.coeffs[1], Q::from_int(-1));
        assert_eq!(g.rhs, Q::fraction(-1, 2));
    }

    #[test]
    fn substitution_expands_derived_symbols() {
        let vars: Vec<String> = vec!["x".into(), "y".into()];
        let mut subs = HashMap::new();
        let mut e = LinExpr::<Q>::var("x");
        e.add_scaled(&LinExpr::var("y"), &Q::from_int(1));
        e.constant = -Q::from_int(1);
        subs.insert("s".to_string(), e);
        let c = parse_constraint_line::<Q>("s <= 0", &vars, &subs).unwrap();
        assert_eq!(c.coeffs, vec![Q::from_int(1), Q::from_int(1)]);
        assert_eq!(c.rhs, Q::from_int(1));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_polytope::<Q>("vars x\nx <= $\n").unwrap_err();
        assert!(err.to_string().contains("line 2"));
        let err = parse_polytope::<Q>("x <= 1\n").unwrap_err();
        assert!(err.to_string().contains("line 1"));
    }
}
