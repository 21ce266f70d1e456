//! Finite regular cell complexes with the intersection property.
//!
//! A complex is validated on construction: facets are one dimension down,
//! vertex sets are unions of facet vertex sets, any two cells have a unique
//! maximal common face, and every cell boundary has the reduced homology of a
//! sphere. Incidence signs are the `±1` coordinates of the top homology
//! generator of each cell boundary, assigned in order of increasing dimension.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::ChainComplex;
use crate::poset::Poset;
use crate::simplicial::SimplicialComplex;
use crate::subset::{VertexSet, MAX_VERTICES};

/// Identifier given to the synthesized empty cell.
pub const EMPTY_CELL_ID: &str = "empty";

/// JSON description of a complex. The empty cell may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDescription {
    pub vertices: Vec<String>,
    pub cells: Vec<CellDescription>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CellDescription {
    pub id: String,
    pub dim: i32,
    pub vertices: Vec<String>,
    #[serde(default)]
    pub facets: Vec<String>,
}

impl ComplexDescription {
    pub fn from_json(text: &str) -> Result<ComplexDescription> {
        serde_json::from_str(text).map_err(|e| Error::MalformedSpec(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("description serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub id: String,
    pub dim: i32,
    pub vertices: VertexSet,
    /// Indices of the facets (cells one dimension down).
    pub facets: Vec<usize>,
    /// Incidence sign of each facet, aligned with `facets`.
    pub signs: Vec<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplex {
    names: Vec<String>,
    /// Sorted by dimension; index 0 is the empty cell.
    cells: Vec<Cell>,
    /// `below[c]` holds every cell `<= c`, as a bit set over cell indices.
    below: Vec<Vec<u64>>,
}

fn bit(set: &[u64], i: usize) -> bool {
    set[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(set: &mut [u64], i: usize) {
    set[i / 64] |= 1 << (i % 64);
}

fn is_subset_bits(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

impl CellComplex {
    /// Validates a description and computes incidence signs. The sphere
    /// condition on cell boundaries is checked over ℚ and, if different,
    /// over `field` as well.
    pub fn build(desc: &ComplexDescription, field: Field) -> Result<CellComplex> {
        let n = desc.vertices.len();
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { got: n, max: MAX_VERTICES });
        }
        let mut vindex = HashMap::new();
        for (i, v) in desc.vertices.iter().enumerate() {
            if vindex.insert(v.as_str(), i).is_some() {
                return Err(Error::MalformedSpec(format!("duplicate vertex {v:?}")));
            }
        }

        let empties: Vec<&CellDescription> = desc.cells.iter().filter(|c| c.dim == -1).collect();
        if empties.len() > 1 {
            return Err(Error::MalformedSpec("more than one cell of dimension -1".into()));
        }
        let empty_id = empties.first().map_or(EMPTY_CELL_ID.to_string(), |c| c.id.clone());
        if let Some(e) = empties.first() {
            if !e.vertices.is_empty() || !e.facets.is_empty() {
                return Err(Error::MalformedSpec("the empty cell has no vertices or facets".into()));
            }
        }
        if let Some(c) = desc.cells.iter().find(|c| c.dim < -1) {
            return Err(Error::MalformedSpec(format!("cell {} has dimension {}", c.id, c.dim)));
        }

        let mut order: Vec<&CellDescription> = desc.cells.iter().filter(|c| c.dim >= 0).collect();
        order.sort_by_key(|c| c.dim);
        let mut index: HashMap<&str, usize> = HashMap::new();
        index.insert(empty_id.as_str(), 0);
        for (i, c) in order.iter().enumerate() {
            if index.insert(c.id.as_str(), i + 1).is_some() {
                return Err(Error::MalformedSpec(format!("duplicate cell id {:?}", c.id)));
            }
        }

        let mut cells = vec![Cell {
            id: empty_id.clone(),
            dim: -1,
            vertices: VertexSet::EMPTY,
            facets: Vec::new(),
            signs: Vec::new(),
        }];
        let mut zero_cells: HashMap<usize, &str> = HashMap::new();
        for c in &order {
            let listed = c
                .vertices
                .iter()
                .map(|v| {
                    vindex.get(v.as_str()).copied().ok_or_else(|| {
                        Error::MalformedSpec(format!("cell {} names unknown vertex {v:?}", c.id))
                    })
                })
                .collect::<Result<Vec<usize>>>()?;
            let listed_set = VertexSet::from_indices(listed.iter().copied());
            let mut facets = Vec::new();
            for f in &c.facets {
                let &fi = index
                    .get(f.as_str())
                    .ok_or_else(|| Error::MalformedSpec(format!("cell {} names unknown facet {f:?}", c.id)))?;
                let fdim = if fi == 0 { -1 } else { order[fi - 1].dim };
                if fdim != c.dim - 1 {
                    return Err(Error::NonGraded { cell: c.id.clone(), facet: f.clone() });
                }
                if facets.contains(&fi) {
                    return Err(Error::MalformedSpec(format!("cell {} lists facet {f:?} twice", c.id)));
                }
                facets.push(fi);
            }
            let vertices = if c.dim == 0 {
                if listed.len() != 1 {
                    return Err(Error::MalformedSpec(format!("0-cell {} must name exactly one vertex", c.id)));
                }
                if let Some(other) = zero_cells.insert(listed[0], c.id.as_str()) {
                    return Err(Error::MalformedSpec(format!(
                        "0-cells {other} and {} share a vertex",
                        c.id
                    )));
                }
                facets = vec![0];
                listed_set
            } else {
                if facets.is_empty() {
                    return Err(Error::BoundaryNotSphere(c.id.clone()));
                }
                let union = facets.iter().fold(VertexSet::EMPTY, |acc, &f| acc.union(cells[f].vertices));
                if union != listed_set || listed.len() != listed_set.len() {
                    return Err(Error::MalformedSpec(format!(
                        "cell {}: vertex list does not match the union of its facets",
                        c.id
                    )));
                }
                union
            };
            cells.push(Cell { id: c.id.clone(), dim: c.dim, vertices, facets, signs: Vec::new() });
        }

        let mut complex = CellComplex { names: desc.vertices.clone(), cells, below: Vec::new() };
        complex.below = complex.compute_below();
        complex.check_intersection_property()?;
        complex.assign_signs(field)?;
        Ok(complex)
    }

    /// Builds a complex whose faces are given by vertex sets and dimensions;
    /// the facets of a face are the faces one dimension down with a smaller
    /// vertex set. Suited to polytopal and simplicial complexes.
    pub fn from_faces(names: Vec<String>, faces: &[(i32, VertexSet)], field: Field) -> Result<CellComplex> {
        Self::build(&describe_faces(&names, faces), field)
    }

    /// The cell complex of a simplicial complex, vertices named by `names`.
    pub fn from_simplicial(names: Vec<String>, complex: &SimplicialComplex) -> Result<CellComplex> {
        let faces: Vec<(i32, VertexSet)> = complex
            .faces()
            .filter(|f| !f.is_empty())
            .map(|f| (f.len() as i32 - 1, VertexSet::from_indices(f.iter().copied())))
            .collect();
        CellComplex::from_faces(names, &faces, Field::Rational)
    }

    fn compute_below(&self) -> Vec<Vec<u64>> {
        let words = self.cells.len().div_ceil(64);
        let mut below: Vec<Vec<u64>> = Vec::with_capacity(self.cells.len());
        for (i, c) in self.cells.iter().enumerate() {
            let mut set = vec![0u64; words];
            set_bit(&mut set, i);
            for &f in &c.facets {
                for (w, x) in set.iter_mut().zip(&below[f]) {
                    *w |= x;
                }
            }
            below.push(set);
        }
        below
    }

    fn check_intersection_property(&self) -> Result<()> {
        let m = self.cells.len();
        for a in 0..m {
            for b in (a + 1)..m {
                let common: Vec<u64> = self.below[a].iter().zip(&self.below[b]).map(|(x, y)| x & y).collect();
                let has_meet = (0..m).any(|c| bit(&common, c) && is_subset_bits(&common, &self.below[c]));
                if !has_meet {
                    return Err(Error::IntersectionPropertyViolation(
                        self.cells[a].id.clone(),
                        self.cells[b].id.clone(),
                    ));
                }
            }
        }
        Ok(())
    }

    fn assign_signs(&mut self, field: Field) -> Result<()> {
        for i in 0..self.cells.len() {
            let dim = self.cells[i].dim;
            if dim == -1 {
                continue;
            }
            if dim == 0 {
                self.cells[i].signs = vec![1];
                continue;
            }
            let boundary: Vec<u64> = {
                let mut b = self.below[i].clone();
                b[i / 64] &= !(1 << (i % 64));
                b
            };
            let keep = |j: usize, _: &Cell| bit(&boundary, j);
            let chain = ChainComplex::of_subcomplex(self, Field::Rational, keep);
            let sphere_dims = chain.reduced_homology();
            if !sphere_dims.is_sphere(dim - 1) {
                return Err(Error::BoundaryNotSphere(self.cells[i].id.clone()));
            }
            if field != Field::Rational {
                let h = ChainComplex::of_subcomplex(self, field, keep).reduced_homology();
                if !h.is_sphere(dim - 1) {
                    return Err(Error::BoundaryNotSphere(self.cells[i].id.clone()));
                }
            }
            // top cycles of the boundary = kernel of its top differential
            let top = chain.boundary(dim - 1);
            let kernel = top.kernel_basis();
            if kernel.cols() != 1 {
                return Err(Error::BoundaryNotSphere(self.cells[i].id.clone()));
            }
            let basis = chain.basis(dim - 1);
            let coeffs = kernel.column(0);
            let first = coeffs.iter().find(|c| !c.is_zero()).expect("nonzero kernel vector").clone();
            let flip = first.sign() == Some(-1);
            let mut signs = Vec::with_capacity(self.cells[i].facets.len());
            for &f in &self.cells[i].facets {
                let pos = basis.iter().position(|&b| b == f).expect("facet lies in the boundary");
                let s = coeffs[pos].sign().ok_or_else(|| Error::BoundaryNotSphere(self.cells[i].id.clone()))?;
                signs.push(if flip { -s } else { s });
            }
            if basis.len() != self.cells[i].facets.len() {
                return Err(Error::BoundaryNotSphere(self.cells[i].id.clone()));
            }
            self.cells[i].signs = signs;
        }
        Ok(())
    }

    /// Closed subcomplex on the cells satisfying `keep`; the predicate must
    /// select a downward-closed family containing the empty cell.
    fn subcomplex<P: Fn(&Cell) -> bool>(&self, keep: P) -> CellComplex {
        let mut remap = vec![usize::MAX; self.cells.len()];
        let mut cells = Vec::new();
        for (i, c) in self.cells.iter().enumerate() {
            if i == 0 || keep(c) {
                remap[i] = cells.len();
                let mut c = c.clone();
                c.facets = c.facets.iter().map(|&f| remap[f]).collect();
                debug_assert!(c.facets.iter().all(|&f| f != usize::MAX), "subcomplex not closed");
                cells.push(c);
            }
        }
        let mut out = CellComplex { names: self.names.clone(), cells, below: Vec::new() };
        out.below = out.compute_below();
        out
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.names
    }

    /// Number of ambient vertices (variables of the polynomial ring).
    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    /// Vertices that are 0-cells.
    pub fn support(&self) -> VertexSet {
        self.cells.iter().filter(|c| c.dim == 0).fold(VertexSet::EMPTY, |a, c| a.union(c.vertices))
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, i: usize) -> &Cell {
        &self.cells[i]
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn cell_index(&self, id: &str) -> Option<usize> {
        self.cells.iter().position(|c| c.id == id)
    }

    /// Dimension; `-1` when only the empty cell is present.
    pub fn dim(&self) -> i32 {
        self.cells.iter().map(|c| c.dim).max().unwrap_or(-1)
    }

    pub fn cells_of_dim(&self, d: i32) -> impl Iterator<Item = (usize, &Cell)> {
        self.cells.iter().enumerate().filter(move |(_, c)| c.dim == d)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (-1..=self.dim()).map(|d| self.cells_of_dim(d).count()).collect()
    }

    /// `a <= b` in the face order.
    pub fn is_face_of(&self, a: usize, b: usize) -> bool {
        bit(&self.below[b], a)
    }

    /// Cells not properly contained in another cell.
    pub fn maximal_cells(&self) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&a| (0..self.cells.len()).all(|b| a == b || !self.is_face_of(a, b)))
            .collect()
    }

    /// Incidence sign `ε(facet, cell)`, zero when `facet` is not a facet of `cell`.
    pub fn incidence(&self, facet: usize, cell: usize) -> i8 {
        let c = &self.cells[cell];
        c.facets.iter().position(|&f| f == facet).map_or(0, |p| c.signs[p])
    }

    /// `Γ_R`: cells whose vertex set lies in `r`. The ambient vertex list
    /// is kept; vertices outside `r` simply have no 0-cell.
    pub fn restriction(&self, r: VertexSet) -> CellComplex {
        self.subcomplex(|c| c.vertices.is_subset(r))
    }

    /// `Γ_{-R}`, the restriction to the complement of `r`.
    pub fn deletion(&self, r: VertexSet) -> CellComplex {
        self.restriction(r.complement(self.vertex_count()))
    }

    /// Cells of dimension at most `d`.
    pub fn skeleton(&self, d: i32) -> Result<CellComplex> {
        if d < -1 {
            return Err(Error::InvalidSkeleton(d));
        }
        Ok(self.subcomplex(|c| c.dim <= d))
    }

    /// Every cell has exactly `dim + 1` vertices.
    pub fn is_simplicial(&self) -> bool {
        self.cells.iter().all(|c| c.vertices.len() as i32 == c.dim + 1)
    }

    /// All subsets of the support are faces: a full simplex on its vertices.
    pub fn is_full_simplex(&self) -> bool {
        let faces: BTreeSet<VertexSet> = self.cells.iter().map(|c| c.vertices).collect();
        self.is_simplicial() && self.support().subsets().all(|s| faces.contains(&s))
    }

    /// The simplicial complex with the same faces, when simplicial.
    pub fn to_simplicial(&self) -> Result<SimplicialComplex> {
        if !self.is_simplicial() {
            return Err(Error::NonSimplicial);
        }
        Ok(SimplicialComplex::from_facets(
            self.vertex_count(),
            self.cells.iter().map(|c| c.vertices.iter().collect::<Vec<_>>()),
        ))
    }

    /// Nonempty cells ordered by inclusion; element `i` is cell `i + 1`.
    pub fn face_poset(&self) -> Poset {
        let labels = self.cells[1..].iter().map(|c| c.id.clone()).collect();
        let mut rel = Vec::new();
        for (i, c) in self.cells.iter().enumerate().skip(1) {
            for &f in &c.facets {
                if f != 0 {
                    rel.push((f - 1, i - 1));
                }
            }
        }
        Poset::from_relations(labels, &rel).expect("face order is acyclic")
    }

    /// The description this complex would be built from.
    pub fn description(&self) -> ComplexDescription {
        ComplexDescription {
            vertices: self.names.clone(),
            cells: self.cells[1..]
                .iter()
                .map(|c| CellDescription {
                    id: c.id.clone(),
                    dim: c.dim,
                    vertices: c.vertices.iter().map(|v| self.names[v].clone()).collect(),
                    facets: c.facets.iter().filter(|&&f| f != 0).map(|&f| self.cells[f].id.clone()).collect(),
                })
                .collect(),
        }
    }

    pub fn vertex_set_names(&self, s: VertexSet) -> Vec<String> {
        s.iter().map(|v| self.names[v].clone()).collect()
    }
}

/// Cell id for a face: its vertex names joined by commas.
pub fn face_id(names: &[String], s: VertexSet) -> String {
    s.iter().map(|v| names[v].as_str()).collect::<Vec<_>>().join(",")
}

/// Description of a complex given by `(dim, vertex set)` faces, with
/// facets found by vertex-set containment one dimension down.
pub fn describe_faces(names: &[String], faces: &[(i32, VertexSet)]) -> ComplexDescription {
    let cells = faces
        .iter()
        .filter(|(d, _)| *d >= 0)
        .map(|&(d, s)| CellDescription {
            id: face_id(names, s),
            dim: d,
            vertices: s.iter().map(|v| names[v].clone()).collect(),
            facets: if d == 0 {
                Vec::new()
            } else {
                faces
                    .iter()
                    .filter(|&&(e, t)| e == d - 1 && t.is_subset(s) && t != s)
                    .map(|&(_, t)| face_id(names, t))
                    .collect()
            },
        })
        .collect();
    ComplexDescription { vertices: names.to_vec(), cells }
}
