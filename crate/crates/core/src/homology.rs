//! Augmented cellular chain complexes, reduced homology and the degreewise
//! tables of enriched homology and cohomology.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::cell::{Cell, CellComplex};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::par;
use crate::subset::VertexSet;

/// Reduced homology dimensions, indexed from degree `-1`. Trailing zeros
/// are trimmed so that equal homology compares equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ReducedHomology {
    dims: Vec<usize>,
}

impl ReducedHomology {
    /// `dims[k]` is the dimension in degree `k - 1`.
    pub fn from_dims(mut dims: Vec<usize>) -> ReducedHomology {
        while dims.last() == Some(&0) {
            dims.pop();
        }
        ReducedHomology { dims }
    }

    pub fn zero() -> ReducedHomology {
        ReducedHomology::default()
    }

    pub fn get(&self, p: i32) -> usize {
        if p < -1 {
            return 0;
        }
        self.dims.get((p + 1) as usize).copied().unwrap_or(0)
    }

    pub fn dims_from_minus_one(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_acyclic(&self) -> bool {
        self.dims.is_empty()
    }

    /// Homology of a `d`-sphere: `k` in degree `d`, zero elsewhere.
    pub fn is_sphere(&self, d: i32) -> bool {
        self.get(d) == 1 && self.total() == 1
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Degrees with nonzero homology.
    pub fn support(&self) -> Vec<i32> {
        (0..self.dims.len()).filter(|&k| self.dims[k] != 0).map(|k| k as i32 - 1).collect()
    }
}

/// Augmented chain complex of (a subcomplex of) a cell complex. Degree `d`
/// has one basis element per kept cell of dimension `d`, from `-1` up.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    field: Field,
    bases: Vec<Vec<usize>>,
    boundaries: Vec<Matrix>,
}

impl ChainComplex {
    pub fn of(complex: &CellComplex, field: Field) -> ChainComplex {
        ChainComplex::of_subcomplex(complex, field, |_, _| true)
    }

    /// The subcomplex on cells selected by `keep(index, cell)`; the
    /// selection must be closed under taking faces.
    pub fn of_subcomplex<P>(complex: &CellComplex, field: Field, keep: P) -> ChainComplex
    where
        P: Fn(usize, &Cell) -> bool,
    {
        let mut bases: Vec<Vec<usize>> = Vec::new();
        let mut pos = vec![usize::MAX; complex.cell_count()];
        for (i, c) in complex.cells().iter().enumerate() {
            if !keep(i, c) {
                continue;
            }
            let k = (c.dim + 1) as usize;
            if bases.len() <= k {
                bases.resize(k + 1, Vec::new());
            }
            pos[i] = bases[k].len();
            bases[k].push(i);
        }
        let mut boundaries = Vec::with_capacity(bases.len());
        for k in 0..bases.len() {
            let rows = if k == 0 { 0 } else { bases[k - 1].len() };
            let mut m = Matrix::zeros(field, rows, bases[k].len());
            for (j, &c) in bases[k].iter().enumerate() {
                let cell = complex.cell(c);
                if k == 0 {
                    continue;
                }
                for (&f, &s) in cell.facets.iter().zip(&cell.signs) {
                    debug_assert!(pos[f] != usize::MAX, "subcomplex not closed");
                    m.set(pos[f], j, field.from_i64(s as i64));
                }
            }
            boundaries.push(m);
        }
        ChainComplex { field, bases, boundaries }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Highest degree with a nonzero chain group, `-2` when empty.
    pub fn top_degree(&self) -> i32 {
        self.bases.len() as i32 - 2
    }

    /// Cell indices forming the basis of `C_d`.
    pub fn basis(&self, d: i32) -> &[usize] {
        if d < -1 {
            return &[];
        }
        self.bases.get((d + 1) as usize).map_or(&[], |b| b.as_slice())
    }

    /// `∂_d : C_d → C_{d-1}`, a `|C_{d-1}| × |C_d|` matrix.
    pub fn boundary(&self, d: i32) -> Matrix {
        if d >= -1 && ((d + 1) as usize) < self.boundaries.len() {
            return self.boundaries[(d + 1) as usize].clone();
        }
        Matrix::zeros(self.field, self.basis(d - 1).len(), self.basis(d).len())
    }

    /// Every composite `∂_{d-1} ∘ ∂_d` is the zero matrix.
    pub fn squares_to_zero(&self) -> bool {
        (1..=self.top_degree()).all(|d| self.boundary(d - 1).mul(&self.boundary(d)).is_zero())
    }

    pub fn reduced_homology(&self) -> ReducedHomology {
        let ranks: Vec<usize> = self.boundaries.iter().map(|m| m.rank()).collect();
        let dims = (0..self.bases.len())
            .map(|k| self.bases[k].len() - ranks[k] - ranks.get(k + 1).copied().unwrap_or(0))
            .collect();
        ReducedHomology::from_dims(dims)
    }
}

pub fn reduced_homology_dims(complex: &CellComplex, field: Field) -> ReducedHomology {
    ChainComplex::of(complex, field).reduced_homology()
}

/// Homology of the restriction `Γ_R`, without materializing it.
pub fn restricted_homology(complex: &CellComplex, r: VertexSet, field: Field) -> ReducedHomology {
    ChainComplex::of_subcomplex(complex, field, |_, c| c.vertices.is_subset(r)).reduced_homology()
}

/// Sparse table of dimensions indexed by `(degree, vertex subset)`. Only
/// nonzero entries are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedPieceTable {
    n: usize,
    entries: BTreeMap<(i32, VertexSet), usize>,
}

impl GradedPieceTable {
    pub fn new(n: usize) -> GradedPieceTable {
        GradedPieceTable { n, entries: BTreeMap::new() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: i32, s: VertexSet) -> usize {
        self.entries.get(&(i, s)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: i32, s: VertexSet, dim: usize) {
        if dim == 0 {
            self.entries.remove(&(i, s));
        } else {
            self.entries.insert((i, s), dim);
        }
    }

    pub fn add(&mut self, i: i32, s: VertexSet, dim: usize) {
        let cur = self.get(i, s);
        self.set(i, s, cur + dim);
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    /// Degrees carrying a nonzero entry, ascending.
    pub fn degrees(&self) -> Vec<i32> {
        let mut d: Vec<i32> = self.entries.keys().map(|&(i, _)| i).collect();
        d.dedup();
        d
    }

    /// Nonzero entries ordered by degree, then by subset mask.
    pub fn iter(&self) -> impl Iterator<Item = (i32, VertexSet, usize)> + '_ {
        self.entries.iter().map(|(&(i, s), &d)| (i, s, d))
    }

    /// The entries of one degree, as a single-degree table at degree 0.
    pub fn row(&self, i: i32) -> GradedPieceTable {
        let mut t = GradedPieceTable::new(self.n);
        for (j, s, d) in self.iter() {
            if j == i {
                t.set(0, s, d);
            }
        }
        t
    }

    /// Every degree moved by `delta`.
    pub fn shifted(&self, delta: i32) -> GradedPieceTable {
        let mut t = GradedPieceTable::new(self.n);
        for (i, s, d) in self.iter() {
            t.set(i + delta, s, d);
        }
        t
    }

    /// Subsets replaced by their complements.
    pub fn complemented(&self) -> GradedPieceTable {
        let mut t = GradedPieceTable::new(self.n);
        for (i, s, d) in self.iter() {
            t.set(i, s.complement(self.n), d);
        }
        t
    }

    /// Rows `degree \t bitstring \t dim`, nonzero entries only.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for (i, s, d) in self.iter() {
            let _ = writeln!(out, "{i}\t{}\t{d}", s.bitstring(self.n));
        }
        out
    }
}

impl Serialize for GradedPieceTable {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            i: i32,
            subset: String,
            dim: usize,
        }
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for (i, s, dim) in self.iter() {
            seq.serialize_element(&Entry { i, subset: s.bitstring(self.n), dim })?;
        }
        seq.end()
    }
}

/// Entry `(i, R)` is `dim H̃_i(Γ_R)` for every `R ⊆ V`.
pub fn enriched_homology_table(complex: &CellComplex, field: Field) -> GradedPieceTable {
    let n = complex.vertex_count();
    let pieces = par::map_range(1usize << n, |m| restricted_homology(complex, VertexSet(m as u32), field));
    let mut table = GradedPieceTable::new(n);
    for (m, h) in pieces.iter().enumerate() {
        for p in h.support() {
            table.set(p, VertexSet(m as u32), h.get(p));
        }
    }
    table
}

/// `dim H̃_i(Γ)`, the rank of the `i`-th enriched homology module.
pub fn enriched_rank(complex: &CellComplex, i: i32, field: Field) -> usize {
    let rank = reduced_homology_dims(complex, field).get(i);
    debug_assert_eq!(rank, restricted_homology(complex, VertexSet::full(complex.vertex_count()), field).get(i));
    rank
}

/// Entry `(i, T)` is the dimension of `H^i` of the dual enriched complex at
/// square-free degree `T`, computed by evaluating that free complex.
pub fn enriched_cohomology_table(complex: &CellComplex, field: Field) -> GradedPieceTable {
    crate::hexagon::enriched_cohomology(complex, field).homology_table()
}
