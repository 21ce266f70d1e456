//! For simplicial complexes, the Betti and homology tables of the six hexagon
//! complexes are given by restriction and link homology. This module
//! computes those formulas and compares them with the hexagon.

use serde::Serialize;

use crate::cell::CellComplex;
use crate::error::Result;
use crate::field::Field;
use crate::hexagon::{build_hexagon, Corner};
use crate::homology::{GradedPieceTable, ReducedHomology};
use crate::par;
use crate::simplicial::SimplicialComplex;
use crate::subset::VertexSet;

/// Computed and predicted tables of one corner.
#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub corner: &'static str,
    pub betti: GradedPieceTable,
    #[serde(rename = "bettiOracle")]
    pub betti_oracle: GradedPieceTable,
    pub homology: GradedPieceTable,
    #[serde(rename = "homologyOracle")]
    pub homology_oracle: GradedPieceTable,
}

impl TableRow {
    pub fn matches(&self) -> bool {
        self.betti == self.betti_oracle && self.homology == self.homology_oracle
    }
}

struct Oracle {
    n: usize,
    /// `H̃(Δ_T)` for every `T`.
    restricted: Vec<ReducedHomology>,
    /// `H̃(lk T)` for every `T`; zero when `T` is not a face.
    links: Vec<ReducedHomology>,
    faces: Vec<bool>,
}

impl Oracle {
    fn new(delta: &SimplicialComplex, field: Field) -> Oracle {
        let n = delta.vertex_count();
        let verts = |t: usize| VertexSet(t as u32).iter().collect::<Vec<usize>>();
        let restricted = par::map_range(1 << n, |t| {
            delta.restrict(|v| VertexSet(t as u32).contains(v)).reduced_homology(field)
        });
        let links = par::map_range(1 << n, |t| delta.link(&verts(t)).reduced_homology(field));
        let faces = (0..1usize << n).map(|t| delta.contains(&verts(t))).collect();
        Oracle { n, restricted, links, faces }
    }

    fn tables(&self) -> [(GradedPieceTable, GradedPieceTable); 6] {
        let n = self.n;
        let ni = n as i32;
        let mut out: [(GradedPieceTable, GradedPieceTable); 6] = Default::default();
        for t in VertexSet::all(n) {
            let c = t.complement(n);
            let (k, kc) = (t.len() as i32, c.len() as i32);
            let res = |s: VertexSet| &self.restricted[s.index()];
            let lk = |s: VertexSet| &self.links[s.index()];
            for i in -(ni + 2)..=(ni + 2) {
                // E[-1]
                out[0].1.set(-i, t, res(t).get(i - 1));
                // G^∨
                out[1].0.set(i, t, lk(t).get(i - 1));
                out[1].1.set(i, t, res(c).get(i - 1));
                // G
                out[2].0.set(-i, t, lk(c).get(i - 1));
                // F^∨
                out[3].0.set(i, t, res(t).get(k + i - 1));
                // F
                out[4].0.set(-i, t, res(c).get(kc + i - 1));
                out[4].1.set(-i, t, lk(t).get(ni + i - 1 - k));
                // E^∨[-1]
                out[5].1.set(i, t, lk(c).get(i - 1 - kc));
            }
            if self.faces[t.index()] {
                out[0].0.set(-k, t, 1);
                out[5].0.set(k, c, 1);
                out[3].1.set(0, t, 1);
            }
            if self.faces[c.index()] {
                out[2].1.set(0, t, 1);
            }
        }
        for (b, h) in out.iter_mut() {
            *b = fix_n(b, n);
            *h = fix_n(h, n);
        }
        out
    }
}

fn fix_n(t: &GradedPieceTable, n: usize) -> GradedPieceTable {
    let mut out = GradedPieceTable::new(n);
    for (i, s, d) in t.iter() {
        out.set(i, s, d);
    }
    out
}

/// The six corners of a simplicial complex beside their predicted tables.
pub fn simplicial_table(complex: &CellComplex, field: Field) -> Result<Vec<TableRow>> {
    let delta = complex.to_simplicial()?;
    let (bundle, oracle) = par::join(|| build_hexagon(complex, field), || Oracle::new(&delta, field));
    let predicted = oracle.tables();
    Ok(Corner::ALL
        .iter()
        .zip(predicted)
        .map(|(&c, (betti_oracle, homology_oracle))| TableRow {
            corner: c.name(),
            betti: bundle.get(c).betti_table(),
            betti_oracle,
            homology: bundle.get(c).homology_table(),
            homology_oracle,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;
    use crate::error::Error;

    #[test]
    fn small_spheres_match() {
        for c in [builtins::boundary_simplex(2), builtins::vertex(), builtins::simplex(2)] {
            let rows = simplicial_table(&c, Field::Rational).unwrap();
            for r in rows {
                assert!(r.matches(), "{}", r.corner);
            }
        }
    }

    #[test]
    fn cells_are_rejected() {
        assert!(matches!(simplicial_table(&builtins::cube_boundary(), Field::Rational), Err(Error::NonSimplicial)));
    }
}
