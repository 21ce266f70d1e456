//! The enriched complexes of a cell complex and the hexagon of six minimal
//! free complexes obtained by alternating `A` and `D`.

use std::fmt;

use serde::Serialize;

use crate::cell::CellComplex;
use crate::cm;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::free::{alexander, FreeSqComplex};
use crate::homology::GradedPieceTable;
use crate::linalg::Matrix;
use crate::par;
use crate::sqfree::{k_i_module, l_complex, SquareFreeModule};
use crate::subset::VertexSet;

/// `E[-1]`: a cell of dimension `d` is a generator of degree its vertex set
/// at level `-(d + 1)`; differentials are the incidence signs.
pub fn enriched_complex(complex: &CellComplex, field: Field) -> FreeSqComplex {
    let n = complex.vertex_count();
    let mut p = FreeSqComplex::new(field, n);
    let top = complex.dim();
    let cells_at = |d: i32| -> Vec<usize> { complex.cells_of_dim(d).map(|(i, _)| i).collect() };
    for d in -1..=top {
        p.push_level(-(d + 1), cells_at(d).iter().map(|&i| complex.cell(i).vertices).collect());
    }
    for d in 0..=top {
        let (src, dst) = (cells_at(d), cells_at(d - 1));
        let mut m = Matrix::zeros(field, dst.len(), src.len());
        for (j, &c) in src.iter().enumerate() {
            for (r, &f) in dst.iter().enumerate() {
                let s = complex.incidence(f, c);
                if s != 0 {
                    m.set(r, j, field.from_i64(s as i64));
                }
            }
        }
        p.set_diff(-(d + 1), m);
    }
    p
}

/// The dual enriched complex `Hom(E, ω_S)`, with a cell of dimension `d`
/// at level `d`.
pub fn enriched_cohomology(complex: &CellComplex, field: Field) -> FreeSqComplex {
    enriched_complex(complex, field).dual().shift(1)
}

/// Positions around the hexagon.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Corner {
    E,
    GDual,
    G,
    FDual,
    F,
    EDual,
}

impl Corner {
    pub const ALL: [Corner; 6] = [Corner::E, Corner::GDual, Corner::G, Corner::FDual, Corner::F, Corner::EDual];

    pub fn name(self) -> &'static str {
        match self {
            Corner::E => "E[-1]",
            Corner::GDual => "G^v",
            Corner::G => "G",
            Corner::FDual => "F^v",
            Corner::F => "F",
            Corner::EDual => "E^v[-1]",
        }
    }

    fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Corner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The six complexes `E[-1]`, `G^∨ = A(E[-1])`, `G = D(G^∨)`,
/// `F^∨ = A(G)`, `F = D(F^∨)` and `E^∨[-1] = D(E[-1])`.
#[derive(Clone, Debug)]
pub struct HexagonBundle {
    pub n: usize,
    pub field: Field,
    corners: [FreeSqComplex; 6],
}

impl HexagonBundle {
    pub fn get(&self, c: Corner) -> &FreeSqComplex {
        &self.corners[c.index()]
    }
}

pub fn build_hexagon(complex: &CellComplex, field: Field) -> HexagonBundle {
    let e = enriched_complex(complex, field);
    let ((g_dual, g, f_dual, f), e_dual) = par::join(
        || {
            let g_dual = alexander(&e);
            let g = g_dual.dual();
            let f_dual = alexander(&g);
            let f = f_dual.dual();
            (g_dual, g, f_dual, f)
        },
        || e.dual(),
    );
    HexagonBundle { n: complex.vertex_count(), field, corners: [e, g_dual, g, f_dual, f, e_dual] }
}

/// Outcome of comparing two complexes by their tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TableMatch {
    pub betti: bool,
    pub homology: bool,
}

impl TableMatch {
    pub fn compare(a: &FreeSqComplex, b: &FreeSqComplex) -> TableMatch {
        TableMatch { betti: a.betti_table() == b.betti_table(), homology: a.homology_table() == b.homology_table() }
    }

    pub fn holds(self) -> bool {
        self.betti && self.homology
    }
}

/// Compares `(D A)^3 (E[-1])`, continuing from `F`, with `E[-1][-n]`.
pub fn verify_hexagon_identity(bundle: &HexagonBundle) -> TableMatch {
    let around = alexander(bundle.get(Corner::F)).dual();
    TableMatch::compare(&around, &bundle.get(Corner::E).shift(-(bundle.n as i32)))
}

/// For the opposite pairs `(P, Q)` with `Q = A D A (P)`, the shift applied
/// to the stored corner `Q`.
fn opposite(p: Corner, q: Corner) -> Option<(Corner, Corner, bool)> {
    use Corner::*;
    let pairs = [(E, FDual, false), (G, EDual, true), (F, GDual, true)];
    pairs.iter().find_map(|&(a, b, shifted)| {
        if (a, b) == (p, q) || (a, b) == (q, p) {
            Some((a, b, shifted))
        } else {
            None
        }
    })
}

/// The `i`-th linear strand of `P` against `D(L(H^{-i}(Q)))[-i]`, for
/// every `i`, where `Q = A D A (P)` is the opposite corner.
pub fn verify_strand_duality(bundle: &HexagonBundle, p: Corner, q: Corner) -> Result<bool> {
    let (p, q, shifted) = opposite(p, q).ok_or_else(|| Error::NotOpposite(p.to_string(), q.to_string()))?;
    let pc = bundle.get(p);
    let qc = if shifted { bundle.get(q).shift(bundle.n as i32) } else { bundle.get(q).clone() };
    let homology = if qc.total_betti() == 0 { Vec::new() } else { qc.homology_modules() };
    let mut indices = pc.strand_indices();
    indices.extend(homology.iter().filter(|(_, h)| !h.is_zero()).map(|(j, _)| -j));
    indices.sort_unstable();
    indices.dedup();
    let zero = SquareFreeModule::zero(bundle.field, bundle.n);
    Ok(par::all(indices, |i| {
        let h = homology.iter().find(|(j, _)| *j == -i).map_or(&zero, |(_, h)| h);
        let expected = l_complex(h).dual().shift(-i);
        TableMatch::compare(&pc.linear_strand(i), &expected).holds()
    }))
}

/// `H^{-i}(F^∨)` against `k^i[Γ]`, as dimension tables, for every `i`.
pub fn verify_ki_theorem(complex: &CellComplex, bundle: &HexagonBundle) -> bool {
    let h = bundle.get(Corner::FDual).homology_table();
    let n = complex.vertex_count() as i32;
    let levels_ok = h.degrees().iter().all(|&j| (-n..=0).contains(&j));
    levels_ok
        && (0..=n).all(|i| h.row(-i) == k_i_module(complex, i, bundle.field).dimension_table())
}

/// Which corners are linear complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Linearity {
    #[serde(rename = "E[-1]")]
    pub e: bool,
    #[serde(rename = "G")]
    pub g: bool,
    #[serde(rename = "F")]
    pub f: bool,
}

pub fn linearity(bundle: &HexagonBundle) -> Linearity {
    Linearity {
        e: bundle.get(Corner::E).is_linear(),
        g: bundle.get(Corner::G).is_linear(),
        f: bundle.get(Corner::F).is_linear(),
    }
}

/// `ω_Γ`: the Alexander dual of the top enriched cohomology module.
pub fn canonical_module(complex: &CellComplex, field: Field) -> Result<SquareFreeModule> {
    if !cm::is_cm_cell(complex, field).0 {
        return Err(Error::NotCohenMacaulay);
    }
    Ok(top_cohomology_module(complex, field).alexander_dual())
}

/// `H^{dim Γ}` of the dual enriched complex, as a module.
pub fn top_cohomology_module(complex: &CellComplex, field: Field) -> SquareFreeModule {
    let top = complex.dim();
    enriched_cohomology(complex, field)
        .homology_modules()
        .into_iter()
        .find(|(i, _)| *i == top)
        .map_or_else(|| SquareFreeModule::zero(field, complex.vertex_count()), |(_, m)| m)
}

/// `k` at the subsets contained in the vertex set of some facet of `∂Γ`.
pub fn polytope_quotient_ring(boundary: &CellComplex, field: Field) -> Result<SquareFreeModule> {
    if !cm::is_gorenstein_star(boundary, field) {
        return Err(Error::NotGorensteinStar);
    }
    let facets: Vec<VertexSet> = boundary.maximal_cells().iter().map(|&f| boundary.cell(f).vertices).collect();
    Ok(SquareFreeModule::indicator(field, boundary.vertex_count(), |t| facets.iter().any(|f| t.is_subset(*f))))
}

/// Tables of one corner.
#[derive(Clone, Debug, Serialize)]
pub struct CornerTables {
    pub name: &'static str,
    pub betti: GradedPieceTable,
    pub homology: GradedPieceTable,
}

/// Everything `cellmac hexagon` reports.
#[derive(Clone, Debug, Serialize)]
pub struct HexagonReport {
    pub field: String,
    pub n: usize,
    pub corners: Vec<CornerTables>,
    pub identity: TableMatch,
    #[serde(rename = "kiTheorem")]
    pub ki_theorem: bool,
    #[serde(rename = "strandDuality")]
    pub strand_duality: Vec<StrandVerdict>,
    pub linearity: Linearity,
    /// Dimension tables of the nonzero `k^i[Γ]`, keyed by `i`.
    #[serde(rename = "kModules")]
    pub k_modules: Vec<(i32, GradedPieceTable)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StrandVerdict {
    pub p: &'static str,
    pub q: &'static str,
    pub holds: bool,
}

pub fn hexagon_report(complex: &CellComplex, field: Field) -> HexagonReport {
    let bundle = build_hexagon(complex, field);
    let corners = Corner::ALL
        .iter()
        .map(|&c| CornerTables { name: c.name(), betti: bundle.get(c).betti_table(), homology: bundle.get(c).homology_table() })
        .collect();
    let strand_duality = [(Corner::E, Corner::FDual), (Corner::G, Corner::EDual), (Corner::F, Corner::GDual)]
        .iter()
        .map(|&(p, q)| StrandVerdict {
            p: p.name(),
            q: q.name(),
            holds: verify_strand_duality(&bundle, p, q).expect("listed pairs are opposite"),
        })
        .collect();
    let n = complex.vertex_count() as i32;
    let k_modules = (0..=n)
        .map(|i| (i, k_i_module(complex, i, field).dimension_table()))
        .filter(|(_, t)| !t.is_zero())
        .collect();
    HexagonReport {
        field: field.id(),
        n: bundle.n,
        identity: verify_hexagon_identity(&bundle),
        ki_theorem: verify_ki_theorem(complex, &bundle),
        strand_duality,
        linearity: linearity(&bundle),
        k_modules,
        corners,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    const Q: Field = Field::Rational;

    #[test]
    fn enriched_complex_of_a_vertex() {
        let e = enriched_complex(&builtins::vertex(), Q);
        assert_eq!(e.generators(0), &[VertexSet::EMPTY]);
        assert_eq!(e.generators(-1), &[VertexSet::singleton(0)]);
        assert!(e.diff(-1).get(0, 0).is_one());
        let h = e.homology_table();
        assert_eq!(h.iter().collect::<Vec<_>>(), vec![(0, VertexSet::EMPTY, 1)]);
    }

    #[test]
    fn single_vertex_hexagon() {
        let b = build_hexagon(&builtins::vertex(), Q);
        let v = VertexSet::singleton(0);
        let only = |c: Corner| b.get(c).betti_table().iter().collect::<Vec<_>>();
        assert_eq!(only(Corner::GDual), vec![(0, v, 1)]);
        assert_eq!(only(Corner::G), vec![(0, VertexSet::EMPTY, 1)]);
        assert_eq!(only(Corner::FDual), vec![(0, VertexSet::EMPTY, 1)]);
        assert_eq!(only(Corner::F), vec![(0, v, 1)]);
        assert_eq!(b.get(Corner::EDual).total_betti(), 2);
        assert!(verify_hexagon_identity(&b).holds());
    }

    #[test]
    fn enriched_homology_of_the_square_at_full_degree() {
        let e = enriched_complex(&builtins::square_boundary(), Q);
        assert_eq!(e.homology_table().get(-2, VertexSet::full(4)), 1);
    }

    #[test]
    fn enriched_cohomology_of_a_vertex() {
        let t = enriched_cohomology(&builtins::vertex(), Q).homology_table();
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![(0, VertexSet::EMPTY, 1)]);
    }

    #[test]
    fn hexagon_identity_small_cases() {
        for c in [builtins::boundary_simplex(2), builtins::solid_square()] {
            let b = build_hexagon(&c, Q);
            assert!(verify_hexagon_identity(&b).holds());
            for corner in Corner::ALL {
                assert!(b.get(corner).is_minimal());
                assert!(b.get(corner).squares_to_zero());
            }
        }
    }

    #[test]
    fn stanley_reisner_resolution() {
        let tri = builtins::boundary_simplex(2);
        let b = build_hexagon(&tri, Q);
        let h = b.get(Corner::FDual).homology_table();
        assert_eq!(h.degrees(), vec![0]);
        assert!(verify_ki_theorem(&tri, &b));
    }

    #[test]
    fn solid_square_has_two_k_modules() {
        let sq = builtins::solid_square();
        let b = build_hexagon(&sq, Q);
        assert_eq!(b.get(Corner::FDual).homology_table().degrees(), vec![-1, 0]);
        assert!(verify_ki_theorem(&sq, &b));
    }

    #[test]
    fn strand_duality_and_precondition() {
        let b = build_hexagon(&builtins::boundary_simplex(2), Q);
        assert_eq!(verify_strand_duality(&b, Corner::E, Corner::FDual), Ok(true));
        let sq = build_hexagon(&builtins::square_boundary(), Q);
        assert_eq!(verify_strand_duality(&sq, Corner::G, Corner::EDual), Ok(true));
        assert_eq!(verify_strand_duality(&sq, Corner::F, Corner::GDual), Ok(true));
        assert!(matches!(verify_strand_duality(&sq, Corner::G, Corner::G), Err(Error::NotOpposite(..))));
    }

    #[test]
    fn linearity_examples() {
        let sq = linearity(&build_hexagon(&builtins::solid_square(), Q));
        assert!(!sq.e);
        let wedge = linearity(&build_hexagon(&builtins::triangle_wedge(), Q));
        assert!(!wedge.g);
        let simplex = linearity(&build_hexagon(&builtins::simplex(2), Q));
        assert!(simplex.e && simplex.g && simplex.f);
    }

    #[test]
    fn canonical_module_examples() {
        let tri = builtins::boundary_simplex(2);
        let w = canonical_module(&tri, Q).unwrap();
        assert_eq!(w.dimension_table(), polytope_quotient_ring(&tri, Q).unwrap().dimension_table());
        assert_eq!(canonical_module(&builtins::triangle_wedge(), Q), Err(Error::NotCohenMacaulay));
        assert_eq!(polytope_quotient_ring(&builtins::solid_square(), Q), Err(Error::NotGorensteinStar));
    }
}
