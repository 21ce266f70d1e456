//! Abstract simplicial complexes with the standard alternating-sign boundary.
//!
//! These serve both as a domain type (order complexes, links) and as an
//! independent homology route that never touches computed incidence signs.

use std::collections::{BTreeSet, HashMap};

use crate::field::Field;
use crate::homology::ReducedHomology;
use crate::linalg::sparse_rank;

/// A downward-closed family of faces on vertices `0..n`. Faces are sorted
/// vertex lists; the empty face is present unless the complex is void.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    n: usize,
    faces: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    /// The void complex: no faces at all, not even the empty one.
    pub fn void(n: usize) -> SimplicialComplex {
        SimplicialComplex { n, faces: BTreeSet::new() }
    }

    /// The complex generated by the given faces and all their subsets.
    pub fn from_facets<I, F>(n: usize, facets: I) -> SimplicialComplex
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[usize]>,
    {
        let mut faces = BTreeSet::new();
        faces.insert(Vec::new());
        for f in facets {
            let mut f: Vec<usize> = f.as_ref().to_vec();
            f.sort_unstable();
            f.dedup();
            assert!(f.iter().all(|&v| v < n), "facet vertex out of range");
            for mask in 0u64..(1 << f.len()) {
                let sub: Vec<usize> =
                    f.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect();
                faces.insert(sub);
            }
        }
        SimplicialComplex { n, faces }
    }

    /// Builds from an already downward-closed face family.
    pub(crate) fn from_closed_faces(n: usize, faces: BTreeSet<Vec<usize>>) -> SimplicialComplex {
        debug_assert!(faces.iter().all(|f| f.windows(2).all(|w| w[0] < w[1])));
        SimplicialComplex { n, faces }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: &[usize]) -> bool {
        self.faces.contains(face)
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    /// Dimension, `-1` for `{∅}` and `i32::MIN` never: the void complex also reports `-1`.
    pub fn dim(&self) -> i32 {
        self.faces.iter().map(|f| f.len() as i32 - 1).max().unwrap_or(-1)
    }

    /// Maximal faces, in face order.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let maximal: Vec<&Vec<usize>> = self
            .faces
            .iter()
            .filter(|f| {
                (0..self.n).all(|v| {
                    if f.contains(&v) {
                        return true;
                    }
                    let mut g = (*f).clone();
                    g.push(v);
                    g.sort_unstable();
                    !self.faces.contains(&g)
                })
            })
            .collect();
        maximal.into_iter().cloned().collect()
    }

    /// Vertices that occur as 0-faces.
    pub fn used_vertices(&self) -> Vec<usize> {
        self.faces.iter().filter(|f| f.len() == 1).map(|f| f[0]).collect()
    }

    /// Faces whose vertices all satisfy `keep`.
    pub fn restrict<P: Fn(usize) -> bool>(&self, keep: P) -> SimplicialComplex {
        let faces = self.faces.iter().filter(|f| f.iter().all(|&v| keep(v))).cloned().collect();
        SimplicialComplex { n: self.n, faces }
    }

    /// `Δ_{-R}`: faces avoiding every vertex of `removed`.
    pub fn delete(&self, removed: &[usize]) -> SimplicialComplex {
        self.restrict(|v| !removed.contains(&v))
    }

    /// Link of `face`: faces `Y` disjoint from it with `Y ∪ face` in the complex.
    /// Empty (void) if `face` is not itself a face.
    pub fn link(&self, face: &[usize]) -> SimplicialComplex {
        let faces = self
            .faces
            .iter()
            .filter(|y| y.iter().all(|v| !face.contains(v)))
            .filter(|y| {
                let mut u: Vec<usize> = y.iter().chain(face.iter()).copied().collect();
                u.sort_unstable();
                u.dedup();
                self.faces.contains(&u)
            })
            .cloned()
            .collect();
        SimplicialComplex { n: self.n, faces }
    }

    /// Reduced homology with the alternating-sign simplicial boundary.
    pub fn reduced_homology(&self, field: Field) -> ReducedHomology {
        if self.faces.is_empty() {
            return ReducedHomology::zero();
        }
        let top = self.dim();
        let mut by_dim: Vec<Vec<&Vec<usize>>> = vec![Vec::new(); (top + 2) as usize];
        for f in &self.faces {
            by_dim[f.len()].push(f);
        }
        let index: Vec<HashMap<&Vec<usize>, usize>> = by_dim
            .iter()
            .map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect())
            .collect();
        let mut ranks = vec![0usize; by_dim.len() + 1];
        for k in 1..by_dim.len() {
            let columns = by_dim[k]
                .iter()
                .map(|f| {
                    (0..f.len())
                        .map(|drop| {
                            let g: Vec<usize> =
                                f.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &v)| v).collect();
                            let sign = if drop % 2 == 0 { 1 } else { -1 };
                            (index[k - 1][&g], field.from_i64(sign))
                        })
                        .collect()
                })
                .collect();
            ranks[k] = sparse_rank(columns);
        }
        let dims = (0..by_dim.len()).map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1]).collect();
        ReducedHomology::from_dims(dims)
    }

    /// Relabels vertices through `perm` (vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> SimplicialComplex {
        let faces = self
            .faces
            .iter()
            .map(|f| {
                let mut g: Vec<usize> = f.iter().map(|&v| perm[v]).collect();
                g.sort_unstable();
                g
            })
            .collect();
        SimplicialComplex { n: self.n, faces }
    }
}
