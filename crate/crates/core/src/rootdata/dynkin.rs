//! Dynkin type recognition for simple systems of (possibly reducible) root systems.

use super::weight::Weight;
use crate::scalar::Scalar;

/// One simple component, e.g. `("D", 5)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub letter: char,
    pub rank: usize,
}

/// Classifies the Dynkin type of the system spanned by `simple`.
///
/// Components are normalized (`D3 = A3`, `C2 = B2`, ...) and sorted by rank,
/// largest first. A torus of dimension `torus` is appended as `T<torus>`.
pub fn type_label<T: Scalar>(simple: &[Weight<T>], torus: usize) -> String {
    let mut comps = classify(simple);
    comps.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.letter.cmp(&b.letter)));
    let mut parts: Vec<String> = comps.iter().map(|c| format!("{}{}", c.letter, c.rank)).collect();
    if torus > 0 {
        parts.push(format!("T{torus}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

/// Canonical label of a single simple type, mapping low-rank coincidences.
pub fn normalize(letter: char, rank: usize) -> Vec<Component> {
    let c = |letter, rank| Component { letter, rank };
    match (letter, rank) {
        (_, 0) => vec![],
        ('B' | 'C', 1) => vec![c('A', 1)],
        ('C', 2) => vec![c('B', 2)],
        ('D', 1) => vec![],
        ('D', 2) => vec![c('A', 1), c('A', 1)],
        ('D', 3) => vec![c('A', 3)],
        _ => vec![c(letter, rank)],
    }
}

/// Builds a label from a list of simple factors, normalizing low ranks.
pub fn label_from_factors(factors: &[(char, usize)], torus: usize) -> String {
    let mut torus = torus;
    let mut comps = Vec::new();
    for &(l, r) in factors {
        if l == 'D' && r == 1 {
            torus += 1;
        }
        comps.extend(normalize(l, r));
    }
    comps.sort_by(|a, b| b.rank.cmp(&a.rank).then(a.letter.cmp(&b.letter)));
    let mut parts: Vec<String> = comps.iter().map(|c| format!("{}{}", c.letter, c.rank)).collect();
    if torus > 0 {
        parts.push(format!("T{torus}"));
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

fn classify<T: Scalar>(simple: &[Weight<T>]) -> Vec<Component> {
    let n = simple.len();
    // bond[i][j] = number of lines between nodes i and j.
    let mut bond = vec![vec![0usize; n]; n];
    let norms: Vec<T> = simple.iter().map(|a| a.norm2()).collect();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let d = simple[i].dot(&simple[j]);
                if !d.is_zero() {
                    let four = T::from_i64(4).unwrap();
                    let prod = four * d.clone() * d / (norms[i].clone() * norms[j].clone());
                    bond[i][j] = prod
                        .to_big_rational()
                        .and_then(|q| num_traits::ToPrimitive::to_usize(&q.to_integer()))
                        .unwrap_or(0);
                }
            }
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            let v = comp[k];
            for w in 0..n {
                if bond[v][w] > 0 && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        out.extend(classify_connected(&comp, &bond, &norms));
    }
    out
}

fn classify_connected<T: Scalar>(nodes: &[usize], bond: &[Vec<usize>], norms: &[T]) -> Vec<Component> {
    let r = nodes.len();
    let degree = |v: usize| nodes.iter().filter(|&&w| bond[v][w] > 0).count();
    let max_bond = nodes.iter().flat_map(|&v| nodes.iter().map(move |&w| bond[v][w])).max().unwrap_or(0);
    if r == 1 {
        return normalize('A', 1);
    }
    if max_bond == 3 {
        return vec![Component { letter: 'G', rank: 2 }];
    }
    if max_bond == 2 {
        if r == 4 {
            // F4 has its double bond between the two middle nodes.
            let (a, b) = double_bond(nodes, bond);
            if degree(a) == 2 && degree(b) == 2 {
                return vec![Component { letter: 'F', rank: 4 }];
            }
        }
        if r == 2 {
            return normalize('B', 2);
        }
        // B_r: a single short root at the end; C_r: a single long root at the end.
        let (a, b) = double_bond(nodes, bond);
        let end = if degree(a) == 1 { a } else { b };
        let other = if end == a { b } else { a };
        let letter = if norms[end] < norms[other] { 'B' } else { 'C' };
        return normalize(letter, r);
    }
    let branch = nodes.iter().copied().find(|&v| degree(v) == 3);
    match branch {
        None => normalize('A', r),
        Some(b) => {
            let mut legs: Vec<usize> =
                nodes.iter().copied().filter(|&w| bond[b][w] > 0).map(|w| leg_length(b, w, nodes, bond)).collect();
            legs.sort_unstable();
            match legs.as_slice() {
                [1, 1, _] => normalize('D', r),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => vec![Component { letter: 'E', rank: r }],
                _ => vec![Component { letter: '?', rank: r }],
            }
        }
    }
}

fn double_bond(nodes: &[usize], bond: &[Vec<usize>]) -> (usize, usize) {
    for &a in nodes {
        for &b in nodes {
            if a < b && bond[a][b] == 2 {
                return (a, b);
            }
        }
    }
    unreachable!("caller checked for a double bond")
}

fn leg_length(from: usize, start: usize, nodes: &[usize], bond: &[Vec<usize>]) -> usize {
    let (mut prev, mut cur, mut len) = (from, start, 1);
    loop {
        let next: Vec<usize> = nodes.iter().copied().filter(|&w| w != prev && bond[cur][w] > 0).collect();
        match next.as_slice() {
            [n] => {
                prev = cur;
                cur = *n;
                len += 1;
            }
            _ => return len,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, LieType};

    #[test]
    fn recognizes_simple_types() {
        let cases = [
            (LieType::A, 3, "A3"),
            (LieType::B, 3, "B3"),
            (LieType::C, 3, "C3"),
            (LieType::C, 2, "B2"),
            (LieType::D, 5, "D5"),
            (LieType::D, 3, "A3"),
            (LieType::E, 6, "E6"),
            (LieType::E, 7, "E7"),
            (LieType::E, 8, "E8"),
            (LieType::F, 4, "F4"),
            (LieType::G, 2, "G2"),
        ];
        for (t, r, want) in cases {
            let rs = build_root_system(t, r).unwrap();
            assert_eq!(type_label(rs.simple_roots(), 0), want);
        }
    }

    #[test]
    fn factor_labels() {
        assert_eq!(label_from_factors(&[('D', 2), ('B', 1)], 0), "A1+A1+A1");
        assert_eq!(label_from_factors(&[('A', 2), ('A', 0)], 1), "A2+T1");
        assert_eq!(label_from_factors(&[('D', 1), ('B', 2)], 0), "B2+T1");
    }
}
