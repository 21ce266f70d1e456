//! Cochain complexes of free square-free modules, the functors `D` and `A`,
//! minimal free resolutions and linear strands.

use std::collections::{BTreeMap, HashMap};

use crate::field::{Field, Scalar};
use crate::homology::GradedPieceTable;
use crate::linalg::Matrix;
use crate::par;
use crate::sqfree::{SqModComplex, SquareFreeModule};
use crate::subset::VertexSet;

/// A bounded cochain complex of free square-free modules. Level `i` has
/// generators with square-free degrees; `diff(i)` is the scalar matrix of
/// `d^i` from level `i` to `i + 1`, where a nonzero entry from a generator
/// of degree `F` to one of degree `G` requires `G ⊆ F` and stands for the
/// monomial `x^{F ∖ G}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeSqComplex {
    field: Field,
    n: usize,
    gens: BTreeMap<i32, Vec<VertexSet>>,
    diffs: BTreeMap<i32, Matrix>,
}

impl FreeSqComplex {
    pub fn new(field: Field, n: usize) -> FreeSqComplex {
        FreeSqComplex { field, n, gens: BTreeMap::new(), diffs: BTreeMap::new() }
    }

    /// A single free module `S(-F)` at `level`.
    pub fn free_module(field: Field, n: usize, f: VertexSet, level: i32) -> FreeSqComplex {
        let mut p = FreeSqComplex::new(field, n);
        p.push_level(level, vec![f]);
        p
    }

    /// Sets the generator degrees of a level, replacing any previous ones.
    pub fn push_level(&mut self, level: i32, degrees: Vec<VertexSet>) {
        if degrees.is_empty() {
            self.gens.remove(&level);
        } else {
            self.gens.insert(level, degrees);
        }
    }

    /// Sets `d^level`; entries must respect degree containment.
    pub fn set_diff(&mut self, level: i32, d: Matrix) {
        let (src, dst) = (self.generators(level), self.generators(level + 1));
        assert_eq!((d.rows(), d.cols()), (dst.len(), src.len()), "differential shape");
        for (j, f) in src.iter().enumerate() {
            for (i, g) in dst.iter().enumerate() {
                assert!(d.get(i, j).is_zero() || g.is_subset(*f), "entry without a monomial");
            }
        }
        if d.rows() == 0 || d.cols() == 0 {
            self.diffs.remove(&level);
        } else {
            self.diffs.insert(level, d);
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn generators(&self, level: i32) -> &[VertexSet] {
        self.gens.get(&level).map_or(&[], |g| g.as_slice())
    }

    /// Levels with at least one generator, ascending.
    pub fn levels(&self) -> Vec<i32> {
        self.gens.keys().copied().collect()
    }

    pub fn diff(&self, level: i32) -> Matrix {
        self.diffs.get(&level).cloned().unwrap_or_else(|| {
            Matrix::zeros(self.field, self.generators(level + 1).len(), self.generators(level).len())
        })
    }

    pub fn squares_to_zero(&self) -> bool {
        self.levels().iter().all(|&i| self.diff(i + 1).mul(&self.diff(i)).is_zero())
    }

    /// No nonzero entry between generators of equal degree.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|(&i, d)| {
            let (src, dst) = (self.generators(i), self.generators(i + 1));
            (0..d.cols()).all(|j| (0..d.rows()).all(|r| dst[r] != src[j] || d.get(r, j).is_zero()))
        })
    }

    /// `(level, F) ↦ dim B^level_F`.
    pub fn betti_table(&self) -> GradedPieceTable {
        let mut t = GradedPieceTable::new(self.n);
        for (&i, gens) in &self.gens {
            for &f in gens {
                t.add(i, f, 1);
            }
        }
        t
    }

    pub fn total_betti(&self) -> usize {
        self.gens.values().map(|g| g.len()).sum()
    }

    /// The pieces at every square-free degree: level `i` at `T` is spanned by
    /// the generators of level `i` with degree inside `T`.
    pub fn evaluate(&self) -> SqModComplex {
        let n = self.n;
        let field = self.field;
        let levels = self.levels();
        let (lo, hi) = match (levels.first(), levels.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => return SqModComplex::single(SquareFreeModule::zero(field, n), 0),
        };
        let inside = |level: i32, t: VertexSet| -> Vec<usize> {
            let g = self.generators(level);
            (0..g.len()).filter(|&k| g[k].is_subset(t)).collect()
        };
        let modules: Vec<SquareFreeModule> = (lo..=hi)
            .map(|i| {
                let dims = VertexSet::all(n).map(|t| inside(i, t).len()).collect();
                SquareFreeModule::new(field, n, dims, |v, t| {
                    let (small, big) = (inside(i, t), inside(i, t.with(v)));
                    let mut m = Matrix::zeros(field, big.len(), small.len());
                    for (c, g) in small.iter().enumerate() {
                        let r = big.iter().position(|x| x == g).expect("inclusion");
                        m.set(r, c, field.one());
                    }
                    m
                })
            })
            .collect();
        let diffs: Vec<Vec<Matrix>> = (lo..hi)
            .map(|i| {
                let d = self.diff(i);
                VertexSet::all(n).map(|t| d.select(&inside(i + 1, t), &inside(i, t))).collect()
            })
            .collect();
        SqModComplex::new_unchecked(field, n, lo, modules, diffs)
    }

    /// Homology dimensions at every square-free degree.
    pub fn homology_table(&self) -> GradedPieceTable {
        if self.gens.is_empty() {
            return GradedPieceTable::new(self.n);
        }
        self.evaluate().homology_table()
    }

    /// Homology modules, with their multiplication maps.
    pub fn homology_modules(&self) -> Vec<(i32, SquareFreeModule)> {
        self.evaluate().homology()
    }

    /// `D(P) = Hom(P, ω_S)`: a generator of degree `F` at level `i` becomes
    /// one of degree `F^c` at level `-i`; `d^{-i-1}` is the transpose of
    /// `d^i` times `(-1)^i`.
    pub fn dual(&self) -> FreeSqComplex {
        let n = self.n;
        let mut out = FreeSqComplex::new(self.field, n);
        for (&i, gens) in &self.gens {
            out.push_level(-i, gens.iter().map(|f| f.complement(n)).collect());
        }
        for (&i, d) in &self.diffs {
            let sign = if i.rem_euclid(2) == 0 { self.field.one() } else { -self.field.one() };
            out.set_diff(-i - 1, d.transpose().scaled(&sign));
        }
        out
    }

    /// `P[s]`, with `P[s]^i = P^{i+s}`.
    pub fn shift(&self, s: i32) -> FreeSqComplex {
        FreeSqComplex {
            field: self.field,
            n: self.n,
            gens: self.gens.iter().map(|(&i, g)| (i - s, g.clone())).collect(),
            diffs: self.diffs.iter().map(|(&i, d)| (i - s, d.clone())).collect(),
        }
    }

    /// The generators of level `j` and degree `F` with `|F| = i - j`, with
    /// the differential entries among them.
    pub fn linear_strand(&self, i: i32) -> FreeSqComplex {
        let mut out = FreeSqComplex::new(self.field, self.n);
        let keep = |j: i32| -> Vec<usize> {
            let g = self.generators(j);
            (0..g.len()).filter(|&k| g[k].len() as i32 == i - j).collect()
        };
        for &j in self.gens.keys() {
            let g = self.generators(j);
            out.push_level(j, keep(j).iter().map(|&k| g[k]).collect());
        }
        for &j in self.diffs.keys() {
            out.set_diff(j, self.diff(j).select(&keep(j + 1), &keep(j)));
        }
        out
    }

    /// Indices `i = level + |F|` of the nonempty linear strands.
    pub fn strand_indices(&self) -> Vec<i32> {
        let mut s: Vec<i32> =
            self.gens.iter().flat_map(|(&j, g)| g.iter().map(move |f| j + f.len() as i32)).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Exactly one nonempty linear strand.
    pub fn is_linear(&self) -> bool {
        self.strand_indices().len() == 1
    }

    /// Generators reordered by `(|F|, F)` within each level; the order of
    /// equal degrees is kept.
    pub fn normalized(&self) -> FreeSqComplex {
        let order: BTreeMap<i32, Vec<usize>> = self
            .gens
            .iter()
            .map(|(&i, g)| {
                let mut idx: Vec<usize> = (0..g.len()).collect();
                idx.sort_by_key(|&k| (g[k].len(), g[k]));
                (i, idx)
            })
            .collect();
        let mut out = FreeSqComplex::new(self.field, self.n);
        for (&i, idx) in &order {
            out.push_level(i, idx.iter().map(|&k| self.gens[&i][k]).collect());
        }
        let empty = Vec::new();
        for (&i, d) in &self.diffs {
            let rows = order.get(&(i + 1)).unwrap_or(&empty);
            let cols = order.get(&i).unwrap_or(&empty);
            out.set_diff(i, d.select(rows, cols));
        }
        out
    }
}

struct Generator {
    level: i32,
    degree: VertexSet,
    /// `d e` as coefficients on earlier generators one level up.
    d: Vec<(usize, Scalar)>,
    /// Image of `e` in the target complex, at degree `degree`.
    phi: Vec<Scalar>,
}

/// The minimal free resolution of a bounded complex of square-free modules:
/// a minimal free complex with a quasi-isomorphism to `c`.
///
/// Degrees are handled by increasing cardinality. At `T`, the generators of
/// smaller degree span a subcomplex `Q'_T` mapping to `C_T`; each homology
/// class `(a, c)` of the cone `Q'^{i+1}_T ⊕ C^i_T` yields a new generator
/// `e` at `(T, i)` with `d e = -a` and image `c`. New generators only reach
/// generators of strictly smaller degree, so the result is minimal.
pub fn minimal_free_resolution(c: &SqModComplex) -> FreeSqComplex {
    let n = c.vertex_count();
    let field = c.field();
    let mut gens: Vec<Generator> = Vec::new();
    for size in 0..=n {
        let degrees: Vec<VertexSet> = VertexSet::of_size(n, size).collect();
        let found = par::map_vec(degrees, |t| classes_at(c, &gens, t));
        for (t, list) in found {
            for (level, d, phi) in list {
                gens.push(Generator { level, degree: t, d, phi });
            }
        }
    }
    let mut out = FreeSqComplex::new(field, n);
    let mut by_level: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (k, g) in gens.iter().enumerate() {
        by_level.entry(g.level).or_default().push(k);
    }
    let mut position = vec![0; gens.len()];
    for (&level, idx) in &by_level {
        for (p, &k) in idx.iter().enumerate() {
            position[k] = p;
        }
        out.push_level(level, idx.iter().map(|&k| gens[k].degree).collect());
    }
    for (&level, idx) in &by_level {
        let rows = by_level.get(&(level + 1)).map_or(0, |v| v.len());
        let mut d = Matrix::zeros(field, rows, idx.len());
        for (col, &k) in idx.iter().enumerate() {
            for (target, s) in &gens[k].d {
                d.set(position[*target], col, s.clone());
            }
        }
        out.set_diff(level, d);
    }
    out.normalized()
}

type NewGenerators = (VertexSet, Vec<(i32, Vec<(usize, Scalar)>, Vec<Scalar>)>);

fn classes_at(c: &SqModComplex, gens: &[Generator], t: VertexSet) -> NewGenerators {
    let field = c.field();
    let mut by_level: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    for (k, g) in gens.iter().enumerate() {
        if g.degree.is_subset(t) {
            by_level.entry(g.level).or_default().push(k);
        }
    }
    let pos: HashMap<usize, usize> =
        by_level.values().flat_map(|v| v.iter().enumerate().map(|(p, &k)| (k, p))).collect();
    let q = |j: i32| -> &[usize] { by_level.get(&j).map_or(&[], |v| v.as_slice()) };
    let c_levels = c.levels();
    let lo = by_level.keys().next().map_or(c_levels.start, |&m| m.min(c_levels.start + 1) - 1);
    let hi = c_levels.end - 1;

    let d_q = |j: i32| -> Matrix {
        let mut m = Matrix::zeros(field, q(j + 1).len(), q(j).len());
        for (col, &k) in q(j).iter().enumerate() {
            for (target, s) in &gens[k].d {
                m.set(pos[target], col, s.clone());
            }
        }
        m
    };
    let phi = |j: i32| -> Matrix {
        let Some(m) = c.module(j) else {
            return Matrix::zeros(field, 0, q(j).len());
        };
        let cols: Vec<Vec<Scalar>> =
            q(j).iter().map(|&k| m.mult_along(gens[k].degree, t).mul_vec(&gens[k].phi)).collect();
        Matrix::from_columns(field, c.piece_dim(j, t), &cols)
    };
    // cone^i = Q'^{i+1} ⊕ C^i, d(a, c) = (-d_Q a, φ a + d_C c)
    let cone = |i: i32| -> Matrix {
        let top = d_q(i + 1).scaled(&-field.one()).hstack(&Matrix::zeros(field, q(i + 2).len(), c.piece_dim(i, t)));
        let bottom = phi(i + 1).hstack(&c.diff(i, t));
        top.vstack(&bottom)
    };
    let mut out = Vec::new();
    for i in lo..=hi {
        let d = cone(i);
        if d.cols() == 0 {
            continue;
        }
        let z = d.kernel_basis();
        if z.cols() == 0 {
            continue;
        }
        let b = cone(i - 1);
        let reps = Matrix::extending_columns(&b, &z);
        let split = q(i + 1).len();
        for r in reps {
            let v = z.column(r);
            let dval: Vec<(usize, Scalar)> = (0..split)
                .filter(|&p| !v[p].is_zero())
                .map(|p| (q(i + 1)[p], -&v[p]))
                .collect();
            out.push((i, dval, v[split..].to_vec()));
        }
    }
    (t, out)
}

/// `A(P)`: the minimal free resolution of the Alexander dual of `P`.
pub fn alexander(p: &FreeSqComplex) -> FreeSqComplex {
    if p.total_betti() == 0 {
        return FreeSqComplex::new(p.field(), p.vertex_count());
    }
    minimal_free_resolution(&p.evaluate().alexander_dual())
}
