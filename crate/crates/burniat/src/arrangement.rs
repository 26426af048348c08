//! Weighted line/hyperplane arrangements.
//!
//! An arrangement is `n` labeled lines in `P^{r-1}` with a weight per
//! line. Geometry is given either by rational homogeneous forms or, for
//! degenerate configurations whose coordinates are awkward, purely
//! combinatorially (which lines coincide, which triples and larger
//! bundles are concurrent; `r = 3` only). Ranks of line subsets, their
//! closures and the closed flats drive both the direct log-canonicity
//! test and the matroid polytope construction.

use std::collections::BTreeSet;

use exactpoly::format::parse_relation_line;
use exactpoly::num_traits::Zero;
use exactpoly::{linalg, PolyError, Scalar, Q};

use crate::hypersimplex::Weight;

#[derive(Clone, Debug)]
pub enum Geometry {
    /// One nonzero homogeneous form of length `r` per line.
    Realized(Vec<Vec<Q>>),
    /// `r = 3` incidence data: coincidence class per line, declared
    /// concurrent bundles (as sorted line index sets).
    Combinatorial {
        class_of: Vec<usize>,
        points: Vec<Vec<usize>>,
    },
}

#[derive(Clone, Debug)]
pub struct ArrangementSpec {
    r: usize,
    names: Vec<String>,
    geometry: Geometry,
    weight: Weight,
}

/// A closed flat with defect: the lines, and the codimension (rank) of
/// their common intersection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flat {
    pub lines: Vec<usize>,
    pub rank: usize,
}

impl ArrangementSpec {
    pub fn realized(
        names: Vec<String>,
        forms: Vec<Vec<Q>>,
        weight: Weight,
        r: usize,
    ) -> Result<Self, PolyError> {
        let n = names.len();
        if forms.len() != n || weight.len() != n {
            return Err(PolyError::input(
                "names, forms and weight must have equal length".to_string(),
            ));
        }
        if n < r {
            return Err(PolyError::input(format!(
                "need at least r = {r} lines, got {n}"
            )));
        }
        for (i, f) in forms.iter().enumerate() {
            if f.len() != r {
                return Err(PolyError::input(format!(
                    "form for line {} has {} coefficients, expected {r}",
                    names[i],
                    f.len()
                )));
            }
            if f.iter().all(Zero::is_zero) {
                return Err(PolyError::input(format!("form for line {} is zero", names[i])));
            }
        }
        Ok(ArrangementSpec {
            r,
            names,
            geometry: Geometry::Realized(forms),
            weight,
        })
    }

    /// Combinatorial mode, `r = 3`. `coincident` lists groups of equal
    /// lines; `concurrent` lists bundles of three or more lines through a
    /// common point.
    pub fn combinatorial(
        names: Vec<String>,
        coincident: Vec<Vec<usize>>,
        concurrent: Vec<Vec<usize>>,
        weight: Weight,
    ) -> Result<Self, PolyError> {
        let n = names.len();
        if weight.len() != n {
            return Err(PolyError::input(
                "names and weight must have equal length".to_string(),
            ));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for group in &coincident {
            let Some(&first) = group.first() else { continue };
            for &l in group {
                if l >= n || first >= n {
                    return Err(PolyError::input(format!("line index {l} out of range")));
                }
                let (a, b) = (find(&mut parent, first), find(&mut parent, l));
                parent[a.max(b)] = a.min(b);
            }
        }
        let class_of: Vec<usize> = (0..n).map(|l| find(&mut parent, l)).collect();
        // Close declared points under coincidence and validate them.
        let mut points: Vec<Vec<usize>> = Vec::new();
        for bundle in &concurrent {
            let mut set: BTreeSet<usize> = BTreeSet::new();
            for &l in bundle {
                if l >= n {
                    return Err(PolyError::input(format!("line index {l} out of range")));
                }
                for j in 0..n {
                    if class_of[j] == class_of[l] {
                        set.insert(j);
                    }
                }
            }
            let classes: BTreeSet<usize> = set.iter().map(|&l| class_of[l]).collect();
            if classes.len() < 3 {
                return Err(PolyError::input(
                    "a concurrent bundle needs at least 3 distinct lines".to_string(),
                ));
            }
            points.push(set.into_iter().collect());
        }
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let ci: BTreeSet<usize> = points[i].iter().map(|&l| class_of[l]).collect();
                let cj: BTreeSet<usize> = points[j].iter().map(|&l| class_of[l]).collect();
                if ci.intersection(&cj).count() > 1 {
                    return Err(PolyError::input(
                        "two concurrent bundles share two distinct lines".to_string(),
                    ));
                }
            }
        }
        Ok(ArrangementSpec {
            r: 3,
            names,
            geometry: Geometry::Combinatorial { class_of, points },
            weight,
        })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weight(&self) -> &Weight {
        &self.weight
    }

    pub fn line_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Rank (codimension of the common intersection) of a line subset.
    pub fn rank(&self, subset: &[usize]) -> usize {
        if subset.is_empty() {
            return 0;
        }
        match &self.geometry {
            Geometry::Realized(forms) => {
                let rows: Vec<Vec<Q>> = subset.iter().map(|&i| forms[i].clone()).collect();
                linalg::rank(&rows)
            }
            Geometry::Combinatorial { class_of, points } => {
                let classes: BTreeSet<usize> =
                    subset.iter().map(|&i| class_of[i]).collect();
                if classes.len() == 1 {
                    return 1;
                }
                if classes.len() == 2 {
                    return 2;
                }
                let covered = points.iter().any(|p| {
                    let pset: BTreeSet<usize> = p.iter().copied().collect();
                    subset.iter().all(|i| pset.contains(i))
                });
                if covered {
                    2
                } else {
                    3
                }
            }
        }
    }

    /// All lines whose hyperplane contains the intersection of `subset`.
    pub fn closure(&self, subset: &[usize]) -> Vec<usize> {
        let base = self.rank(subset);
        let mut out = Vec::new();
        let mut extended: Vec<usize> = subset.to_vec();
        for j in 0..self.n() {
            if subset.contains(&j) {
                continue;
            }
            extended.push(j);
            if self.rank(&extended) == base {
                out.push(j);
            }
            extended.pop();
        }
        out.extend_from_slice(subset);
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Closed flats with nonempty intersection and a binding constraint:
    /// rank strictly below both `|flat|` and `r`.
    pub fn flats(&self) -> Vec<Flat> {
        let n = self.n();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        // Closures of small seed subsets suffice: a closed flat of rank k
        // is the closure of any k of its lines in general position, and
        // every flat with rank < |flat| is the closure of a subset of size
        // rank + 1 <= r.
        let seeds = subsets_up_to(n, self.r.min(n));
        for seed in seeds {
            if seed.len() < 2 {
                continue;
            }
            let lines = self.closure(&seed);
            let rank = self.rank(&lines);
            if rank >= self.r || rank >= lines.len() {
                continue;
            }
            if seen.insert(lines.clone()) {
                out.push(Flat { lines, rank });
            }
        }
        out.sort_by(|a, b| (a.rank, &a.lines).cmp(&(b.rank, &b.lines)));
        out
    }

    /// Maximal line bundles through each point where at least two distinct
    /// lines meet (`r = 3` only): the `I(p)` sets of the arrangement.
    pub fn multiple_points(&self) -> Result<Vec<Vec<usize>>, PolyError> {
        if self.r != 3 {
            return Err(PolyError::input(
                "multiple points are only enumerated for r = 3".to_string(),
            ));
        }
        let n = self.n();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.rank(&[i, j]) != 2 {
                    continue; // coincident pair: no isolated point
                }
                let closure = self.closure(&[i, j]);
                seen.insert(closure);
            }
        }
        Ok(seen.into_iter().collect())
    }
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for size in 1..=k {
        let mut next = Vec::new();
        for s in out.iter().filter(|s| s.len() == size - 1) {
            let start = s.last().map_or(0, |&l| l + 1);
            for j in start..n {
                let mut t = s.clone();
                t.push(j);
                next.push(t);
            }
        }
        out.extend(next);
    }
    out
}

/// Parses the arrangement text format:
///
/// ```text
/// line a0 1 0 0          # realized: homogeneous coefficients
/// line a1                # combinatorial: name only
/// weight a0 1/2
/// coincident a1 a2
/// concurrent a1 b1 c1
/// ```
///
/// Realized and combinatorial line rows must not be mixed. Missing
/// weights default to 1/2.
pub fn parse_arrangement(text: &str) -> Result<ArrangementSpec, PolyError> {
    let mut names: Vec<String> = Vec::new();
    let mut forms: Vec<Vec<Q>> = Vec::new();
    let mut bare = false;
    let mut weights: Vec<Option<Q>> = Vec::new();
    let mut coincident: Vec<Vec<String>> = Vec::new();
    let mut concurrent: Vec<Vec<String>> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let keyword = parts.next().unwrap();
        match keyword {
            "line" => {
                let name = parts
                    .next()
                    .ok_or_else(|| PolyError::parse(lineno + 1, "line needs a name"))?;
                if names.iter().any(|n| n == name) {
                    return Err(PolyError::parse(lineno + 1, format!("duplicate line `{name}`")));
                }
                let coeffs: Vec<Q> = parts
                    .map(|t| {
                        Q::parse_frac(t).ok_or_else(|| {
                            PolyError::parse(lineno + 1, format!("bad coefficient `{t}`"))
                        })
                    })
                    .collect::<Result<_, _>>()?;
                if coeffs.is_empty() {
                    bare = true;
                } else {
                    forms.push(coeffs);
                }
                names.push(name.to_string());
                weights.push(None);
            }
            "weight" => {
                let name = parts
                    .next()
                    .ok_or_else(|| PolyError::parse(lineno + 1, "weight needs a line name"))?;
                let val = parts
                    .next()
                    .ok_or_else(|| PolyError::parse(lineno + 1, "weight needs a value"))?;
                let idx = names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| PolyError::parse(lineno + 1, format!("unknown line `{name}`")))?;
                weights[idx] = Some(Q::parse_frac(val).ok_or_else(|| {
                    PolyError::parse(lineno + 1, format!("bad weight `{val}`"))
                })?);
            }
            "coincident" => {
                coincident.push(parts.map(str::to_string).collect());
            }
            "concurrent" => {
                concurrent.push(parts.map(str::to_string).collect());
            }
            other => {
                return Err(PolyError::parse(
                    lineno + 1,
                    format!("unknown keyword `{other}`"),
                ));
            }
        }
    }
    if names.is_empty() {
        return Err(PolyError::parse(0, "no lines declared"));
    }
    if bare && !forms.is_empty() {
        return Err(PolyError::input(
            "mix of realized and combinatorial line rows".to_string(),
        ));
    }
    let weight = Weight::new(
        weights
            .into_iter()
            .map(|w| w.unwrap_or_else(|| Q::fraction(1, 2)))
            .collect(),
    )?;
    let resolve = |group: &[String]| -> Result<Vec<usize>, PolyError> {
        group
            .iter()
            .map(|name| {
                names
                    .iter()
                    .position(|n| n == name)
                    .ok_or_else(|| PolyError::input(format!("unknown line `{name}`")))
            })
            .collect()
    };
    if bare {
        let coincident = coincident
            .iter()
            .map(|g| resolve(g))
            .collect::<Result<Vec<_>, _>>()?;
        let concurrent = concurrent
            .iter()
            .map(|g| resolve(g))
            .collect::<Result<Vec<_>, _>>()?;
        ArrangementSpec::combinatorial(names, coincident, concurrent, weight)
    } else {
        if !coincident.is_empty() || !concurrent.is_empty() {
            return Err(PolyError::input(
                "incidence rows are only for combinatorial arrangements".to_string(),
            ));
        }
        let r = forms[0].len();
        ArrangementSpec::realized(names, forms, weight, r)
    }
}

/// Convenience for tests and shipped examples: parse forms given as
/// relation-free expressions is overkill, so lines are written directly.
pub fn form_from_expr(expr: &str, coords: &[&str]) -> Result<Vec<Q>, PolyError> {
    let (lhs, _rel, _rhs) =
        parse_relation_line::<Q>(&format!("{expr} = 0")).map_err(PolyError::input)?;
    let mut out = vec![Q::zero(); coords.len()];
    for (name, c) in &lhs.terms {
        let idx = coords
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::input(format!("unknown coordinate `{name}`")))?;
        out[idx] = out[idx].clone() + c;
    }
    if !lhs.constant.is_zero() {
        return Err(PolyError::input("homogeneous form expected".to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(list: &[&str]) -> Vec<String> {
        list.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn realized_ranks_and_closure() {
        // x, y, z, x - z: the triple {x, z, x-z} is concurrent at (0:1:0).
        let a = ArrangementSpec::realized(
            names(&["l1", "l2", "l3", "l4"]),
            vec![
                form_from_expr("x", &["x", "y", "z"]).unwrap(),
                form_from_expr("y", &["x", "y", "z"]).unwrap(),
                form_from_expr("z", &["x", "y", "z"]).unwrap(),
                form_from_expr("x - z", &["x", "y", "z"]).unwrap(),
            ],
            Weight::half(4),
            3,
        )
        .unwrap();
        assert_eq!(a.rank(&[0, 2, 3]), 2);
        assert_eq!(a.rank(&[0, 1, 2]), 3);
        assert_eq!(a.closure(&[0, 2]), vec![0, 2, 3]);
        let flats = a.flats();
        assert_eq!(flats.len(), 1);
        assert_eq!(flats[0].lines, vec![0, 2, 3]);
        assert_eq!(flats[0].rank, 2);
    }

    #[test]
    fn combinatorial_matches_realized() {
        let c = ArrangementSpec::combinatorial(
            names(&["l1", "l2", "l3", "l4"]),
            vec![],
            vec![vec![0, 2, 3]],
            Weight::half(4),
        )
        .unwrap();
        assert_eq!(c.rank(&[0, 2, 3]), 2);
        assert_eq!(c.rank(&[0, 1]), 2);
        assert_eq!(c.rank(&[0, 1, 2]), 3);
        let flats = c.flats();
        assert_eq!(flats.len(), 1);
        assert_eq!(flats[0].lines, vec![0, 2, 3]);
    }

    #[test]
    fn coincident_lines_have_rank_one() {
        let c = ArrangementSpec::combinatorial(
            names(&["l1", "l2", "l3"]),
            vec![vec![0, 1]],
            vec![],
            Weight::half(3),
        )
        .unwrap();
        assert_eq!(c.rank(&[0, 1]), 1);
        assert_eq!(c.rank(&[0, 1, 2]), 2);
        let flats = c.flats();
        // {l1, l2} is a rank-1 flat; {l1, l2, l3} is a rank-2 flat since the
        // doubled line meets l3 in a point lying on all three.
        assert_eq!(flats.len(), 2);
    }

    #[test]
    fn multiple_points_of_a_triangle() {
        let a = ArrangementSpec::realized(
            names(&["l1", "l2", "l3"]),
            vec![
                form_from_expr("x", &["x", "y", "z"]).unwrap(),
                form_from_expr("y", &["x", "y", "z"]).unwrap(),
                form_from_expr("z", &["x", "y", "z"]).unwrap(),
            ],
            Weight::half(3),
            3,
        )
        .unwrap();
        let pts = a.multiple_points().unwrap();
        assert_eq!(pts.len(), 3);
        assert!(pts.iter().all(|p| p.len() == 2));
    }

    #[test]
    fn parse_both_modes() {
        let realized = parse_arrangement(
            "line a 1 0 0\nline b 0 1 0\nline c 0 0 1\nweight a 1/2\nweight b 1/2\nweight c 1/2\n",
        )
        .unwrap();
        assert_eq!(realized.n(), 3);
        assert_eq!(realized.rank(&[0, 1, 2]), 3);
        let comb = parse_arrangement(
            "line a\nline b\nline c\nline d\nconcurrent a b c\n",
        )
        .unwrap();
        assert_eq!(comb.rank(&[0, 1, 2]), 2);
        assert!(parse_arrangement("line a 1 0 0\nline b\n").is_err());
    }
}
