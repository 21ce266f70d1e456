//! Finite posets given by cover relations, with filters, intervals, bounds
//! and order complexes.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// A finite poset on elements `0..len`. The order is stored as a full
/// comparability table derived from the cover lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    labels: Vec<String>,
    /// `upper[x]` lists the elements covering `x`.
    upper: Vec<Vec<usize>>,
    leq: Vec<Vec<bool>>,
}

impl Poset {
    /// Builds a poset from `(lower, upper)` relation pairs; the transitive
    /// closure is taken and redundant pairs are dropped from the covers.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Poset> {
        let n = labels.len();
        let mut leq = vec![vec![false; n]; n];
        for (x, row) in leq.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(a, b) in relations {
            if a >= n {
                return Err(Error::UnknownElement(a));
            }
            if b >= n {
                return Err(Error::UnknownElement(b));
            }
            leq[a][b] = true;
        }
        // Warshall closure
        for k in 0..n {
            let row_k = leq[k].clone();
            for row in leq.iter_mut().filter(|r| r[k]) {
                for (x, &y) in row.iter_mut().zip(&row_k) {
                    *x |= y;
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if leq[i][j] && leq[j][i] {
                    return Err(Error::MalformedSpec(format!(
                        "order relation has a cycle through {} and {}",
                        labels[i], labels[j]
                    )));
                }
            }
        }
        let mut upper = vec![Vec::new(); n];
        for x in 0..n {
            for y in 0..n {
                if x != y && leq[x][y] && !(0..n).any(|z| z != x && z != y && leq[x][z] && leq[z][y]) {
                    upper[x].push(y);
                }
            }
        }
        Ok(Poset { labels, upper, leq })
    }

    /// A chain `0 < 1 < ... < len-1`.
    pub fn chain(len: usize) -> Poset {
        let labels = (0..len).map(|i| i.to_string()).collect();
        let rel: Vec<(usize, usize)> = (1..len).map(|i| (i - 1, i)).collect();
        Poset::from_relations(labels, &rel).expect("a chain is acyclic")
    }

    /// An antichain of `len` elements.
    pub fn antichain(len: usize) -> Poset {
        Poset::from_relations((0..len).map(|i| i.to_string()).collect(), &[]).expect("no relations")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq[x][y]
    }

    pub fn covers(&self, x: usize) -> &[usize] {
        &self.upper[x]
    }

    pub fn cover_count(&self) -> usize {
        self.upper.iter().map(Vec::len).sum()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| (0..self.len()).all(|y| !self.lt(y, x))).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper[x].is_empty()).collect()
    }

    /// Rank function when the poset is graded (every maximal chain has the
    /// same length), with minimal elements at rank 0.
    pub fn rank_function(&self) -> Option<Vec<i32>> {
        let n = self.len();
        let mut rank = vec![-1i32; n];
        let mut order: Vec<usize> = (0..n).collect();
        // linear extension: fewer elements below come first
        order.sort_by_key(|&x| (0..n).filter(|&y| self.leq[y][x]).count());
        for &x in &order {
            let below: Vec<usize> = (0..n).filter(|&y| self.upper[y].contains(&x)).collect();
            if below.is_empty() {
                rank[x] = 0;
                continue;
            }
            let r = rank[below[0]] + 1;
            if below.iter().any(|&y| rank[y] + 1 != r) {
                return None;
            }
            rank[x] = r;
        }
        let maxes = self.maximal_elements();
        if let Some(&m) = maxes.first() {
            if maxes.iter().any(|&y| rank[y] != rank[m]) {
                return None;
            }
        }
        Some(rank)
    }

    pub fn is_graded(&self) -> bool {
        self.rank_function().is_some()
    }

    /// Length of the maximal chains of a graded poset; `-1` when empty.
    pub fn rank(&self) -> Result<i32> {
        let ranks = self.rank_function().ok_or(Error::NonGradedPoset)?;
        Ok(ranks.into_iter().max().unwrap_or(-1))
    }

    fn check(&self, xs: &[usize]) -> Result<()> {
        match xs.iter().find(|&&x| x >= self.len()) {
            Some(&x) => Err(Error::UnknownElement(x)),
            None => Ok(()),
        }
    }

    /// The filter `F(R)`: all `x` with `x >= r` for some `r` in `R`.
    pub fn filter(&self, gens: &[usize]) -> Result<BTreeSet<usize>> {
        self.check(gens)?;
        Ok((0..self.len()).filter(|&x| gens.iter().any(|&r| self.leq[r][x])).collect())
    }

    /// The order ideal of elements strictly below `x`.
    pub fn strictly_below(&self, x: usize) -> Result<BTreeSet<usize>> {
        self.check(&[x])?;
        Ok((0..self.len()).filter(|&y| self.lt(y, x)).collect())
    }

    /// Induced subposet on `elements`, relabelled `0..` in increasing order.
    pub fn induced(&self, elements: &BTreeSet<usize>) -> Poset {
        let keep: Vec<usize> = elements.iter().copied().collect();
        let labels = keep.iter().map(|&x| self.labels[x].clone()).collect();
        let mut rel = Vec::new();
        for (a, &x) in keep.iter().enumerate() {
            for (b, &y) in keep.iter().enumerate() {
                if self.lt(x, y) {
                    rel.push((a, b));
                }
            }
        }
        Poset::from_relations(labels, &rel).expect("subposet of a poset is acyclic")
    }

    /// Induced subposet on the complement of `removed`.
    pub fn delete(&self, removed: &BTreeSet<usize>) -> Poset {
        let keep = (0..self.len()).filter(|x| !removed.contains(x)).collect();
        self.induced(&keep)
    }

    /// The open interval `(x, y)`. Requires `x < y`.
    pub fn open_interval(&self, x: usize, y: usize) -> Result<Poset> {
        self.check(&[x, y])?;
        if !self.lt(x, y) {
            return Err(Error::NotStrictlyBelow(x, y));
        }
        let between = (0..self.len()).filter(|&z| self.lt(x, z) && self.lt(z, y)).collect();
        Ok(self.induced(&between))
    }

    /// `P̂`: the poset with a new bottom and top. Returns the poset and the
    /// indices of the adjoined bottom and top (the last two elements).
    pub fn with_bounds(&self) -> (Poset, usize, usize) {
        let n = self.len();
        let mut labels = self.labels.clone();
        labels.push("0̂".to_string());
        labels.push("1̂".to_string());
        let mut rel = Vec::new();
        for x in 0..n {
            for &y in &self.upper[x] {
                rel.push((x, y));
            }
            rel.push((n, x));
            rel.push((x, n + 1));
        }
        rel.push((n, n + 1));
        let p = Poset::from_relations(labels, &rel).expect("bounded extension is acyclic");
        (p, n, n + 1)
    }

    /// Every pair has a unique supremum and a unique infimum.
    pub fn is_lattice(&self) -> bool {
        let n = self.len();
        let unique_extreme = |cands: Vec<usize>, below: bool| -> bool {
            cands.iter().any(|&m| cands.iter().all(|&c| if below { self.leq[c][m] } else { self.leq[m][c] }))
        };
        for x in 0..n {
            for y in (x + 1)..n {
                let lower: Vec<usize> = (0..n).filter(|&z| self.leq[z][x] && self.leq[z][y]).collect();
                let upper: Vec<usize> = (0..n).filter(|&z| self.leq[x][z] && self.leq[y][z]).collect();
                if !unique_extreme(lower, true) || !unique_extreme(upper, false) {
                    return false;
                }
            }
        }
        true
    }

    /// The order complex: all chains, on vertices `0..len`.
    pub fn order_complex(&self) -> SimplicialComplex {
        let n = self.len();
        let mut faces = BTreeSet::new();
        faces.insert(Vec::new());
        // chains are enumerated in increasing order along a linear extension
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&x| (0..n).filter(|&y| self.leq[y][x]).count());
        let pos: Vec<usize> = {
            let mut p = vec![0; n];
            for (i, &x) in order.iter().enumerate() {
                p[x] = i;
            }
            p
        };
        let mut stack: Vec<Vec<usize>> = (0..n).map(|x| vec![x]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("chains are nonempty");
            for y in 0..n {
                if self.lt(last, y) && pos[y] > pos[last] {
                    let mut c = chain.clone();
                    c.push(y);
                    stack.push(c);
                }
            }
            let mut sorted = chain;
            sorted.sort_unstable();
            faces.insert(sorted);
        }
        SimplicialComplex::from_closed_faces(n, faces)
    }
}
