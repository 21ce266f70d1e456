//! Square-free modules stored as their pieces at subsets of the vertices,
//! with morphisms, complexes, subquotients and Alexander duality.

use std::fmt::Write as _;

use crate::cell::CellComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::free::FreeSqComplex;
use crate::homology::GradedPieceTable;
use crate::linalg::Matrix;
use crate::par;
use crate::subset::VertexSet;

/// A square-free module: a vector space at each `T ⊆ V` and the
/// multiplication maps `x_v : M_T → M_{T ∪ v}` for `v ∉ T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeModule {
    field: Field,
    n: usize,
    dims: Vec<usize>,
    /// `mults[T][v]`, a `dims[T ∪ v] × dims[T]` matrix; empty for `v ∈ T`.
    mults: Vec<Vec<Matrix>>,
}

impl SquareFreeModule {
    /// Builds a module from piece dimensions and a multiplication rule.
    /// The commuting squares are not checked here; see [`Self::check`].
    pub fn new<F>(field: Field, n: usize, dims: Vec<usize>, mult: F) -> SquareFreeModule
    where
        F: Fn(usize, VertexSet) -> Matrix,
    {
        assert_eq!(dims.len(), 1 << n);
        let mults = (0..1usize << n)
            .map(|t| {
                let t = VertexSet(t as u32);
                (0..n)
                    .map(|v| {
                        if t.contains(v) {
                            return Matrix::zeros(field, 0, 0);
                        }
                        let m = mult(v, t);
                        assert_eq!((m.rows(), m.cols()), (dims[t.with(v).index()], dims[t.index()]));
                        m
                    })
                    .collect()
            })
            .collect();
        SquareFreeModule { field, n, dims, mults }
    }

    pub fn zero(field: Field, n: usize) -> SquareFreeModule {
        SquareFreeModule::new(field, n, vec![0; 1 << n], |_, _| Matrix::zeros(field, 0, 0))
    }

    /// `k` on the subsets where `support` holds, multiplication the
    /// identity between two such subsets and zero otherwise.
    pub fn indicator<P: Fn(VertexSet) -> bool>(field: Field, n: usize, support: P) -> SquareFreeModule {
        let dims: Vec<usize> = VertexSet::all(n).map(|t| support(t) as usize).collect();
        let d = dims.clone();
        SquareFreeModule::new(field, n, dims, move |v, t| {
            let (a, b) = (d[t.with(v).index()], d[t.index()]);
            let mut m = Matrix::zeros(field, a, b);
            if a == 1 && b == 1 {
                m.set(0, 0, field.one());
            }
            m
        })
    }

    /// The free module `S(-F)`.
    pub fn free(field: Field, n: usize, f: VertexSet) -> SquareFreeModule {
        SquareFreeModule::indicator(field, n, |t| f.is_subset(t))
    }

    /// The polynomial ring `S`.
    pub fn polynomial_ring(field: Field, n: usize) -> SquareFreeModule {
        SquareFreeModule::free(field, n, VertexSet::EMPTY)
    }

    /// The residue field `k = S / m`.
    pub fn residue_field(field: Field, n: usize) -> SquareFreeModule {
        SquareFreeModule::indicator(field, n, |t| t.is_empty())
    }

    /// The Stanley-Reisner ring of the complex whose faces are `faces`.
    pub fn stanley_reisner(field: Field, n: usize, faces: &[VertexSet]) -> SquareFreeModule {
        SquareFreeModule::indicator(field, n, |t| faces.contains(&t))
    }

    /// The square-free monomial ideal generated by `m_G` for `G` in `gens`.
    pub fn monomial_ideal(field: Field, n: usize, gens: &[VertexSet]) -> SquareFreeModule {
        SquareFreeModule::indicator(field, n, |t| gens.iter().any(|g| g.is_subset(t)))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn dim(&self, t: VertexSet) -> usize {
        self.dims[t.index()]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// `x_v : M_T → M_{T ∪ v}`, for `v ∉ T`.
    pub fn mult(&self, v: usize, t: VertexSet) -> &Matrix {
        assert!(!t.contains(v), "multiplication is stored for v outside T only");
        &self.mults[t.index()][v]
    }

    /// The composite multiplication `M_F → M_T` for `F ⊆ T`, adding the
    /// vertices of `T ∖ F` in increasing order.
    pub fn mult_along(&self, f: VertexSet, t: VertexSet) -> Matrix {
        let mut m = Matrix::identity(self.field, self.dim(f));
        let mut cur = f;
        for v in t.difference(f).iter() {
            m = self.mult(v, cur).mul(&m);
            cur = cur.with(v);
        }
        m
    }

    /// Checks that the multiplications commute.
    pub fn check(&self) -> Result<()> {
        for t in VertexSet::all(self.n) {
            for v in 0..self.n {
                for w in (v + 1)..self.n {
                    if t.contains(v) || t.contains(w) {
                        continue;
                    }
                    let a = self.mult(w, t.with(v)).mul(self.mult(v, t));
                    let b = self.mult(v, t.with(w)).mul(self.mult(w, t));
                    if a != b {
                        return Err(Error::NonCommutingMorphism(t.0));
                    }
                }
            }
        }
        Ok(())
    }

    /// Dimensions as a table at degree 0.
    pub fn dimension_table(&self) -> GradedPieceTable {
        let mut t = GradedPieceTable::new(self.n);
        for s in VertexSet::all(self.n) {
            t.set(0, s, self.dim(s));
        }
        t
    }

    /// Rows `bitstring \t dim`, nonzero pieces only.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for s in VertexSet::all(self.n).filter(|&s| self.dim(s) != 0) {
            let _ = writeln!(out, "{}\t{}", s.bitstring(self.n), self.dim(s));
        }
        out
    }

    /// `(M*)_T = Hom(M_{T^c}, k)`, with multiplication by `x_v` at `T`
    /// the transpose of `x_v : M_{(T ∪ v)^c} → M_{T^c}`.
    pub fn alexander_dual(&self) -> SquareFreeModule {
        let n = self.n;
        let dims = VertexSet::all(n).map(|t| self.dim(t.complement(n))).collect();
        SquareFreeModule::new(self.field, n, dims, |v, t| self.mult(v, t.with(v).complement(n)).transpose())
    }

    /// Generators needed at `F`: the cokernel dimension of
    /// `⊕_{v ∈ F} M_{F ∖ v} → M_F`.
    pub fn minimal_generators(&self) -> GradedPieceTable {
        let mut table = GradedPieceTable::new(self.n);
        for f in VertexSet::all(self.n) {
            let mut incoming = Matrix::zeros(self.field, self.dim(f), 0);
            for v in f.iter() {
                incoming = incoming.hstack(self.mult(v, f.without(v)));
            }
            table.set(0, f, self.dim(f) - incoming.rank());
        }
        table
    }

    /// Rank of every multiplication map, keyed by `(T, v)` in storage order.
    pub fn mult_ranks(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for t in VertexSet::all(self.n) {
            for v in (0..self.n).filter(|&v| !t.contains(v)) {
                out.push(self.mult(v, t).rank());
            }
        }
        out
    }
}

/// A degreewise map of square-free modules commuting with multiplication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqModMorphism {
    maps: Vec<Matrix>,
}

impl SqModMorphism {
    /// Checks shapes and that every naturality square commutes.
    pub fn new(source: &SquareFreeModule, target: &SquareFreeModule, maps: Vec<Matrix>) -> Result<SqModMorphism> {
        let n = source.n;
        assert_eq!(maps.len(), 1 << n);
        for t in VertexSet::all(n) {
            let m = &maps[t.index()];
            assert_eq!((m.rows(), m.cols()), (target.dim(t), source.dim(t)));
            for v in (0..n).filter(|&v| !t.contains(v)) {
                let a = maps[t.with(v).index()].mul(source.mult(v, t));
                let b = target.mult(v, t).mul(m);
                if a != b {
                    return Err(Error::NonCommutingMorphism(t.0));
                }
            }
        }
        Ok(SqModMorphism { maps })
    }

    pub fn at(&self, t: VertexSet) -> &Matrix {
        &self.maps[t.index()]
    }

    pub fn identity(m: &SquareFreeModule) -> SqModMorphism {
        SqModMorphism { maps: VertexSet::all(m.n).map(|t| Matrix::identity(m.field, m.dim(t))).collect() }
    }

    pub fn zero(source: &SquareFreeModule, target: &SquareFreeModule) -> SqModMorphism {
        SqModMorphism {
            maps: VertexSet::all(source.n).map(|t| Matrix::zeros(source.field, target.dim(t), source.dim(t))).collect(),
        }
    }
}

/// `Z / B` inside `ambient`, where the columns of `cycles[T]` span `Z_T` and
/// those of `boundaries[T]` span `B_T ⊆ Z_T`.
fn subquotient(ambient: &SquareFreeModule, cycles: &[Matrix], boundaries: &[Matrix]) -> SquareFreeModule {
    let n = ambient.n;
    let field = ambient.field;
    // basis of Z_T: independent boundary columns, then representatives
    let parts: Vec<(Matrix, usize)> = par::map_range(1 << n, |t| {
        let b = boundaries[t].image_basis();
        let reps = Matrix::extending_columns(&b, &cycles[t]);
        let rows: Vec<usize> = (0..cycles[t].rows()).collect();
        let r = cycles[t].select(&rows, &reps);
        (b.hstack(&r), r.cols())
    });
    let dims = parts.iter().map(|p| p.1).collect();
    SquareFreeModule::new(field, n, dims, |v, t| {
        let (basis, h) = &parts[t.index()];
        let (target, th) = &parts[t.with(v).index()];
        let skip = target.cols() - th;
        let m = ambient.mult(v, t);
        let cols: Vec<Vec<_>> = (basis.cols() - h..basis.cols())
            .map(|j| {
                let image = m.mul_vec(&basis.column(j));
                let x = target.solve(&image).expect("multiplication preserves the subspace");
                x[skip..].to_vec()
            })
            .collect();
        Matrix::from_columns(field, *th, &cols)
    })
}

pub fn kernel(phi: &SqModMorphism, source: &SquareFreeModule) -> SquareFreeModule {
    let cycles: Vec<Matrix> = phi.maps.iter().map(|m| m.kernel_basis()).collect();
    let zero: Vec<Matrix> = cycles.iter().map(|c| Matrix::zeros(source.field, c.rows(), 0)).collect();
    subquotient(source, &cycles, &zero)
}

pub fn image(phi: &SqModMorphism, target: &SquareFreeModule) -> SquareFreeModule {
    let cycles: Vec<Matrix> = phi.maps.iter().map(|m| m.image_basis()).collect();
    let zero: Vec<Matrix> = cycles.iter().map(|c| Matrix::zeros(target.field, c.rows(), 0)).collect();
    subquotient(target, &cycles, &zero)
}

pub fn cokernel(phi: &SqModMorphism, target: &SquareFreeModule) -> SquareFreeModule {
    let cycles: Vec<Matrix> = VertexSet::all(target.n).map(|t| Matrix::identity(target.field, target.dim(t))).collect();
    subquotient(target, &cycles, &phi.maps)
}

/// A bounded cochain complex of square-free modules; `modules[k]` sits at
/// level `start + k` and `diffs[k][T]` maps its piece at `T` to the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqModComplex {
    field: Field,
    n: usize,
    start: i32,
    modules: Vec<SquareFreeModule>,
    diffs: Vec<Vec<Matrix>>,
}

impl SqModComplex {
    /// Checks naturality of every differential and `d ∘ d = 0`.
    pub fn new(
        field: Field,
        n: usize,
        start: i32,
        modules: Vec<SquareFreeModule>,
        diffs: Vec<Vec<Matrix>>,
    ) -> Result<SqModComplex> {
        let c = SqModComplex::new_unchecked(field, n, start, modules, diffs);
        c.check()?;
        Ok(c)
    }

    pub(crate) fn new_unchecked(
        field: Field,
        n: usize,
        start: i32,
        modules: Vec<SquareFreeModule>,
        diffs: Vec<Vec<Matrix>>,
    ) -> SqModComplex {
        assert_eq!(diffs.len() + 1, modules.len().max(1));
        SqModComplex { field, n, start, modules, diffs }
    }

    /// A single module at `level`.
    pub fn single(module: SquareFreeModule, level: i32) -> SqModComplex {
        SqModComplex { field: module.field, n: module.n, start: level, modules: vec![module], diffs: Vec::new() }
    }

    pub fn check(&self) -> Result<()> {
        for k in 0..self.diffs.len() {
            SqModMorphism::new(&self.modules[k], &self.modules[k + 1], self.diffs[k].clone())
                .map_err(|_| Error::NotAComplex(self.start + k as i32))?;
            if k + 1 < self.diffs.len() {
                for t in 0..1usize << self.n {
                    if !self.diffs[k + 1][t].mul(&self.diffs[k][t]).is_zero() {
                        return Err(Error::NotAComplex(self.start + k as i32));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Levels carrying a module (possibly zero), ascending.
    pub fn levels(&self) -> std::ops::Range<i32> {
        self.start..self.start + self.modules.len() as i32
    }

    pub fn module(&self, level: i32) -> Option<&SquareFreeModule> {
        let k = level - self.start;
        (k >= 0).then(|| self.modules.get(k as usize)).flatten()
    }

    pub fn piece_dim(&self, level: i32, t: VertexSet) -> usize {
        self.module(level).map_or(0, |m| m.dim(t))
    }

    /// `d^level` at `T`, zero outside the stored range.
    pub fn diff(&self, level: i32, t: VertexSet) -> Matrix {
        let k = level - self.start;
        if k >= 0 && (k as usize) < self.diffs.len() {
            return self.diffs[k as usize][t.index()].clone();
        }
        Matrix::zeros(self.field, self.piece_dim(level + 1, t), self.piece_dim(level, t))
    }

    /// `H^i` for every stored level.
    pub fn homology(&self) -> Vec<(i32, SquareFreeModule)> {
        self.levels()
            .map(|i| {
                let m = self.module(i).expect("level in range");
                let cycles: Vec<Matrix> = VertexSet::all(self.n).map(|t| self.diff(i, t).kernel_basis()).collect();
                let bounds: Vec<Matrix> = VertexSet::all(self.n).map(|t| self.diff(i - 1, t)).collect();
                (i, subquotient(m, &cycles, &bounds))
            })
            .collect()
    }

    /// Homology dimensions `(level, T) ↦ dim H^level_T`.
    pub fn homology_table(&self) -> GradedPieceTable {
        let n = self.n;
        let levels: Vec<i32> = self.levels().collect();
        let pieces = par::map_range(1 << n, |t| {
            let t = VertexSet(t as u32);
            levels
                .iter()
                .map(|&i| {
                    let d = self.diff(i, t);
                    d.cols() - d.rank() - self.diff(i - 1, t).rank()
                })
                .collect::<Vec<usize>>()
        });
        let mut table = GradedPieceTable::new(n);
        for (t, dims) in pieces.iter().enumerate() {
            for (k, &d) in dims.iter().enumerate() {
                table.set(levels[k], VertexSet(t as u32), d);
            }
        }
        table
    }

    /// The dual complex: `(C*)^{-i} = (C^i)*` with differentials the
    /// transposes of those of `C` at complementary degrees.
    pub fn alexander_dual(&self) -> SqModComplex {
        let n = self.n;
        let modules: Vec<SquareFreeModule> = self.modules.iter().rev().map(|m| m.alexander_dual()).collect();
        let len = self.modules.len();
        let diffs = (0..self.diffs.len())
            .map(|k| {
                // new level -(start + len - 1) + k maps to the next one up;
                // it is the transpose of old d from level start + len - 2 - k
                let old = len - 2 - k;
                VertexSet::all(n).map(|t| self.diffs[old][t.complement(n).index()].transpose()).collect()
            })
            .collect();
        let start = -(self.start + len as i32 - 1);
        SqModComplex::new_unchecked(self.field, n, start, modules, diffs)
    }
}

pub fn homology_of_sqmod_complex(c: &SqModComplex) -> Result<Vec<(i32, SquareFreeModule)>> {
    c.check()?;
    Ok(c.homology())
}

/// `k^i[Γ]`: `k` at the vertex sets `F` of cells `f` with
/// `|F| = dim f + i + 1`, multiplication the identity between such sets.
pub fn k_i_module(complex: &CellComplex, i: i32, field: Field) -> SquareFreeModule {
    let n = complex.vertex_count();
    let support: Vec<VertexSet> = complex
        .cells()
        .iter()
        .filter(|c| c.vertices.len() as i32 == c.dim + i + 1)
        .map(|c| c.vertices)
        .collect();
    SquareFreeModule::indicator(field, n, |t| support.contains(&t))
}

/// The complex `L(M)`: level `i` has one generator per basis vector of
/// `M_R` for `|R| = i`, in degree `R^c`; the differential sends the piece at
/// `R` to `R ∪ j` through `x_j` with sign `(-1)^{α(j, R)}`, where `α(j, R)`
/// counts the elements of `R` below `j`.
pub fn l_complex(m: &SquareFreeModule) -> FreeSqComplex {
    let n = m.n;
    let field = m.field;
    let mut levels: Vec<Vec<(VertexSet, usize)>> = vec![Vec::new(); n + 1];
    for r in VertexSet::all(n) {
        for b in 0..m.dim(r) {
            levels[r.len()].push((r, b));
        }
    }
    let mut out = FreeSqComplex::new(field, n);
    for (i, gens) in levels.iter().enumerate() {
        out.push_level(i as i32, gens.iter().map(|&(r, _)| r.complement(n)).collect());
    }
    for i in 0..n {
        let (src, dst) = (&levels[i], &levels[i + 1]);
        let mut d = Matrix::zeros(field, dst.len(), src.len());
        for (col, &(r, b)) in src.iter().enumerate() {
            for j in (0..n).filter(|&j| !r.contains(j)) {
                let alpha = r.iter().filter(|&x| x < j).count();
                let sign = if alpha % 2 == 0 { field.one() } else { -field.one() };
                let mult = m.mult(j, r);
                let target = r.with(j);
                for (row, &(s, c)) in dst.iter().enumerate() {
                    if s == target {
                        let v = mult.get(c, b);
                        if !v.is_zero() {
                            d.set(row, col, &sign * v);
                        }
                    }
                }
            }
        }
        out.set_diff(i as i32, d);
    }
    out
}
