use std::collections::BTreeSet;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty group table")]
    Empty,
    #[error("table is not square: row {0} has length {1}")]
    NotSquare(usize, usize),
    #[error("table entry {0} out of range")]
    EntryOutOfRange(usize),
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("not associative at ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("label count {0} does not match order {1}")]
    LabelCount(usize, usize),
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
}

impl FiniteGroup {
    /// Validates the group axioms exhaustively.
    pub fn from_table(table: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::NotSquare(i, row.len()));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(GroupError::EntryOutOfRange(x));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(GroupError::NoIdentity)?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative(a, b, c));
                    }
                }
            }
        }
        let mut inverse = Vec::with_capacity(n);
        for g in 0..n {
            let h = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or(GroupError::NoInverse(g))?;
            inverse.push(h);
        }
        let labels = match labels {
            Some(l) if l.len() != n => return Err(GroupError::LabelCount(l.len(), n)),
            Some(l) => l,
            None => (0..n).map(|i| format!("g{i}")).collect(),
        };
        Ok(FiniteGroup {
            labels,
            table,
            inverse,
            identity,
        })
    }

    /// The cyclic group of order `n`, elements `e, a, a^2, ...`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let labels = (0..n)
            .map(|i| match i {
                0 => "e".to_string(),
                1 => "a".to_string(),
                _ => format!("a^{i}"),
            })
            .collect();
        Self::from_table(table, Some(labels)).expect("cyclic group")
    }

    /// The symmetric group on `{1..n}`, permutations listed lexicographically
    /// and labelled in cycle notation. The product `st` applies `t` first.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=6).contains(&n), "symmetric group size out of supported range");
        let perms = permutations(n);
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|s| {
                perms
                    .iter()
                    .map(|t| index(&t.iter().map(|&i| s[i]).collect()))
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| cycle_label(p)).collect();
        Self::from_table(table, Some(labels)).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `h g h^{-1}`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let class: BTreeSet<usize> = (0..self.order()).map(|h| self.conjugate(g, h)).collect();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(n, cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn cycle_label(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut s = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        s.push('(');
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            s.push_str(&(i + 1).to_string());
            i = p[i];
        }
        s.push(')');
    }
    if s.is_empty() {
        "e".to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s3_labels_and_products() {
        let g = FiniteGroup::symmetric(3);
        assert_eq!(g.order(), 6);
        let c = g.element("(123)").unwrap();
        let t23 = g.element("(23)").unwrap();
        assert_eq!(g.label(g.inv(c)), "(132)");
        assert_eq!(g.label(g.conjugate(t23, c)), "(13)");
        assert_eq!(g.conjugacy_classes().len(), 3);
        assert!(!g.is_abelian());
    }

    #[test]
    fn cyclic_groups() {
        let z3 = FiniteGroup::cyclic(3);
        assert_eq!(z3.conjugacy_classes().len(), 3);
        assert_eq!(z3.label(2), "a^2");
        assert_eq!(z3.inv(1), 2);
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(FiniteGroup::from_table(vec![], None), Err(GroupError::Empty));
        assert_eq!(
            FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None),
            Err(GroupError::NoInverse(1))
        );
        assert_eq!(
            FiniteGroup::from_table(vec![vec![1, 0], vec![0, 0]], None),
            Err(GroupError::NoIdentity)
        );
        assert!(matches!(FiniteGroup::from_table(vec![vec![0, 2], vec![1, 0]], None), Err(GroupError::EntryOutOfRange(2))));
    }
}
