//! Cohen-Macaulay, l-CM and Gorenstein* tests for cell complexes, posets
//! and simplicial complexes.

use std::collections::BTreeSet;

use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::cell::CellComplex;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::homology::{reduced_homology_dims, restricted_homology, ReducedHomology};
use crate::par;
use crate::poset::Poset;
use crate::simplicial::SimplicialComplex;
use crate::subset::VertexSet;

/// A pair `(p, R)` with `H̃_p(Γ_{-R}) ≠ 0` and `p + |R| < dim Γ`.
pub type Witness = (i32, VertexSet);

/// Dimension of `Γ_A`, the restriction to `allowed`.
fn restricted_dim(complex: &CellComplex, allowed: VertexSet) -> i32 {
    complex.cells().iter().filter(|c| c.vertices.is_subset(allowed)).map(|c| c.dim).max().unwrap_or(-1)
}

/// Violations of the CM criterion for `Γ_A` taken as a complex of
/// dimension `dim` on the vertex set `A`. With `first_only`, stops
/// looking after the smallest `|R|` that produces one.
fn violations(complex: &CellComplex, allowed: VertexSet, dim: i32, field: Field, first_only: bool) -> Vec<Witness> {
    let mut found = Vec::new();
    // p >= -1 forces |R| <= dim
    for size in 0..=dim.max(-1) {
        let deletions: Vec<VertexSet> = allowed.subsets().filter(|r| r.len() as i32 == size).collect();
        let homologies: Vec<(VertexSet, ReducedHomology)> = par::map_vec(deletions, |r| {
            (r, restricted_homology(complex, allowed.difference(r), field))
        });
        for (r, h) in homologies {
            for p in -1..(dim - size) {
                if h.get(p) != 0 {
                    found.push((p, r));
                }
            }
        }
        if first_only && !found.is_empty() {
            break;
        }
    }
    found
}

/// Keeps the witnesses with no witness of the same `p` on a proper subset,
/// sorted by `(|R|, p, R)`.
fn minimal(mut witnesses: Vec<Witness>) -> Vec<Witness> {
    let all: BTreeSet<Witness> = witnesses.iter().copied().collect();
    witnesses.retain(|&(p, r)| !all.iter().any(|&(q, s)| q == p && s != r && s.is_subset(r)));
    witnesses.sort_by_key(|&(p, r)| (r.len(), p, r));
    witnesses
}

/// CM verdict for `Γ` together with every minimal witness against it.
/// A complex of dimension `-1` satisfies the criterion vacuously.
pub fn is_cm_cell(complex: &CellComplex, field: Field) -> (bool, Vec<Witness>) {
    let all = VertexSet::full(complex.vertex_count());
    let w = minimal(violations(complex, all, complex.dim(), field, false));
    (w.is_empty(), w)
}

fn is_cm_within(complex: &CellComplex, allowed: VertexSet, dim: i32, field: Field) -> bool {
    violations(complex, allowed, dim, field, true).is_empty()
}

/// Whether `Γ_{-R}` is CM of the same dimension as `Γ` for every `|R| < l`.
pub fn is_l_cm(complex: &CellComplex, l: usize, field: Field) -> bool {
    let n = complex.vertex_count();
    let dim = complex.dim();
    let all = VertexSet::full(n);
    (0..l.min(n + 1)).all(|size| {
        let deletions: Vec<VertexSet> = VertexSet::of_size(n, size).collect();
        par::all(deletions, |r| {
            let allowed = all.difference(r);
            restricted_dim(complex, allowed) == dim && is_cm_within(complex, allowed, dim, field)
        })
    })
}

/// The largest `l` with `Γ` l-CM; `0` when `Γ` is not CM. Since deleting
/// every vertex leaves only the empty cell, the value is at most `n` unless
/// `dim Γ = -1`, where every deletion is `Γ` itself and `n + 1` is returned.
pub fn lcm_order(complex: &CellComplex, field: Field) -> usize {
    lcm_order_capped(complex, field, usize::MAX)
}

/// [`lcm_order`], but stops once `cap` is reached.
pub fn lcm_order_capped(complex: &CellComplex, field: Field, cap: usize) -> usize {
    let n = complex.vertex_count();
    let dim = complex.dim();
    let all = VertexSet::full(n);
    let mut l = 0;
    // l-CM adds the deletions of size l - 1 to the (l-1)-CM conditions
    while l < cap && l <= n {
        let size = l;
        let deletions: Vec<VertexSet> = VertexSet::of_size(n, size).collect();
        let ok = par::all(deletions, |r| {
            let allowed = all.difference(r);
            restricted_dim(complex, allowed) == dim && is_cm_within(complex, allowed, dim, field)
        });
        if !ok {
            break;
        }
        l += 1;
    }
    l
}

/// 2-CM with one-dimensional top homology.
pub fn is_gorenstein_star(complex: &CellComplex, field: Field) -> bool {
    reduced_homology_dims(complex, field).get(complex.dim()) == 1 && lcm_order_capped(complex, field, 2) >= 2
}

/// Generators `m_V / m_f` over the facets `f`, as vertex sets, with
/// non-minimal ones (divisible by another) removed.
pub fn gorenstein_top_ideal(complex: &CellComplex, field: Field) -> Result<Vec<VertexSet>> {
    if !is_gorenstein_star(complex, field) {
        return Err(Error::NotGorensteinStar);
    }
    Ok(facet_complement_monomials(complex))
}

/// The monomials `m_V / m_f` for maximal cells `f`, minimalized.
pub fn facet_complement_monomials(complex: &CellComplex) -> Vec<VertexSet> {
    let n = complex.vertex_count();
    let gens: BTreeSet<VertexSet> =
        complex.maximal_cells().iter().map(|&f| complex.cell(f).vertices.complement(n)).collect();
    gens.iter().copied().filter(|&g| !gens.iter().any(|&h| h != g && h.is_subset(g))).collect()
}

/// Checks that the codimension `r` skeleton is at least `(l + r)`-CM where
/// `l` is the CM order of `Γ`.
pub fn verify_skeleton_lcm(complex: &CellComplex, r: i32, field: Field) -> Result<bool> {
    let dim = complex.dim();
    if r < 0 || r > dim + 1 {
        return Err(Error::CodimensionOutOfRange { r, dim });
    }
    let l = lcm_order(complex, field);
    let skeleton = complex.skeleton(dim - r)?;
    let need = l + r as usize;
    Ok(lcm_order_capped(&skeleton, field, need) >= need)
}

/// Compares `Γ` being 2-CM with the order complex of its face poset being
/// 2-CM in the simplicial sense.
pub fn verify_2cm_poset_equivalence(complex: &CellComplex, field: Field) -> bool {
    let cell_side = lcm_order_capped(complex, field, 2) >= 2;
    let poset_side = simplicial_is_l_cm(&complex.face_poset().order_complex(), 2, field);
    cell_side == poset_side
}

/// Simplicial l-CM test: `H̃_p(Δ_{-R}) = 0` whenever
/// `p + |R| < dim Δ + l - 1` and `p < dim Δ`. Only `R` with
/// `|R| <= dim Δ + l - 1` can matter.
pub fn simplicial_is_l_cm(complex: &SimplicialComplex, l: usize, field: Field) -> bool {
    let n = complex.vertex_count();
    let dim = complex.dim();
    let bound = dim + l as i32 - 1;
    let max_size = bound.clamp(0, n as i32) as usize;
    let deletions: Vec<Vec<usize>> = subsets_up_to(n, max_size);
    par::all(deletions, |r| {
        // highest degree that has to vanish for this R
        let top = (bound - r.len() as i32).min(dim) - 1;
        if top < -1 {
            return true;
        }
        let kept = complex
            .faces()
            .filter(|f| f.len() as i32 <= top + 2 && f.iter().all(|v| !r.contains(v)))
            .cloned()
            .collect();
        let h = SimplicialComplex::from_closed_faces(n, kept).reduced_homology(field);
        (-1..=top).all(|p| h.get(p) == 0)
    })
}

/// Simplicial CM test (the l = 1 case).
pub fn simplicial_is_cm(complex: &SimplicialComplex, field: Field) -> bool {
    simplicial_is_l_cm(complex, 1, field)
}

fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..k {
        let mut next = Vec::new();
        for s in &frontier {
            let start = s.last().map_or(0, |&v: &usize| v + 1);
            for v in start..n {
                let mut t: Vec<usize> = s.clone();
                t.push(v);
                next.push(t);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Poset CM test: every open interval `(x, y)` of `P̂` has homology
/// concentrated in degree `rk y - rk x - 2`.
pub fn is_cm_poset(poset: &Poset, field: Field) -> Result<bool> {
    let (hat, _, _) = poset.with_bounds();
    let rank = hat.rank_function().ok_or(Error::NonGradedPoset)?;
    let pairs: Vec<(usize, usize)> =
        (0..hat.len()).flat_map(|x| (0..hat.len()).map(move |y| (x, y))).filter(|&(x, y)| hat.lt(x, y)).collect();
    Ok(par::all(pairs, |(x, y)| {
        let h = hat.open_interval(x, y).expect("x < y").order_complex().reduced_homology(field);
        let expected = rank[y] - rank[x] - 2;
        h.support().iter().all(|&p| p == expected)
    }))
}

/// Whether deleting the filter generated by `x` leaves an acyclic order
/// complex.
pub fn filter_deletion_acyclic(poset: &Poset, x: usize, field: Field) -> Result<bool> {
    let filter = poset.filter(&[x])?;
    Ok(poset.delete(&filter).order_complex().reduced_homology(field).is_acyclic())
}

/// Whether some maximal element lies above some but not all of `r`.
pub fn separating_maximal_element(poset: &Poset, r: &[usize]) -> bool {
    poset.maximal_elements().iter().any(|&m| {
        let above = r.iter().filter(|&&x| poset.leq(x, m)).count();
        above > 0 && above < r.len()
    })
}

/// The complete CM summary of a complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CMReport {
    pub field: String,
    pub dim: i32,
    #[serde(rename = "isCM")]
    pub is_cm: bool,
    #[serde(rename = "lcmOrder")]
    pub lcm_order: usize,
    #[serde(rename = "gorensteinStar")]
    pub gorenstein_star: bool,
    #[serde(rename = "topCohomologyRank")]
    pub top_cohomology_rank: usize,
    pub witnesses: Vec<NamedWitness>,
}

/// A witness with its vertex set given by vertex names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedWitness {
    pub p: i32,
    pub vertices: Vec<String>,
}

impl Serialize for NamedWitness {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.p)?;
        t.serialize_element(&self.vertices)?;
        t.end()
    }
}

pub fn cm_report(complex: &CellComplex, field: Field) -> CMReport {
    let (is_cm, witnesses) = is_cm_cell(complex, field);
    let lcm = if is_cm { lcm_order(complex, field) } else { 0 };
    let top = reduced_homology_dims(complex, field).get(complex.dim());
    CMReport {
        field: field.id(),
        dim: complex.dim(),
        is_cm,
        lcm_order: lcm,
        gorenstein_star: lcm >= 2 && top == 1,
        top_cohomology_rank: top,
        witnesses: witnesses
            .into_iter()
            .map(|(p, r)| NamedWitness { p, vertices: complex.vertex_set_names(r) })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins;

    const Q: Field = Field::Rational;

    fn named(c: &CellComplex, name: &str) -> usize {
        c.vertex_names().iter().position(|v| v == name).unwrap()
    }

    #[test]
    fn cm_examples() {
        assert!(is_cm_cell(&builtins::solid_square(), Q).0);
        let wedge = builtins::triangle_wedge();
        let s = named(&wedge, "s");
        assert_eq!(is_cm_cell(&wedge, Q), (false, vec![(0, VertexSet::singleton(s))]));
        assert_eq!(is_cm_cell(&builtins::triangle_plus_edge(), Q), (false, vec![(0, VertexSet::EMPTY)]));
    }

    #[test]
    fn degenerate_dimensions() {
        assert!(is_cm_cell(&builtins::vertex(), Q).0);
        // two points are CM: the criterion only asks for nonemptiness
        assert!(is_cm_cell(&builtins::boundary_simplex(1), Q).0);
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(lcm_order(&builtins::square_boundary(), Q), 2);
        assert_eq!(lcm_order(&builtins::solid_square(), Q), 1);
        assert_eq!(lcm_order(&builtins::cube_boundary(), Q), 2);
        assert_eq!(lcm_order(&builtins::bowtie_graph(), Q), 1);
        assert_eq!(lcm_order(&builtins::triangle_wedge(), Q), 0);
    }

    #[test]
    fn gorenstein_examples() {
        assert!(is_gorenstein_star(&builtins::cube_boundary(), Q));
        assert!(is_gorenstein_star(&builtins::square_boundary(), Q));
        assert!(!is_gorenstein_star(&builtins::solid_square(), Q));
    }

    #[test]
    fn top_ideal_examples() {
        let tri = gorenstein_top_ideal(&builtins::boundary_simplex(2), Q).unwrap();
        assert_eq!(tri, (0..3).map(VertexSet::singleton).collect::<Vec<_>>());
        let sq = gorenstein_top_ideal(&builtins::square_boundary(), Q).unwrap();
        assert_eq!(sq.len(), 4);
        assert!(sq.iter().all(|m| m.len() == 2));
        let cube = gorenstein_top_ideal(&builtins::cube_boundary(), Q).unwrap();
        assert_eq!(cube.len(), 6);
        assert!(cube.iter().all(|m| m.len() == 4));
        assert_eq!(gorenstein_top_ideal(&builtins::solid_square(), Q), Err(Error::NotGorensteinStar));
    }

    #[test]
    fn skeleton_examples() {
        assert!(verify_skeleton_lcm(&builtins::cube_boundary(), 1, Q).unwrap());
        assert!(verify_skeleton_lcm(&builtins::cross_polytope_boundary(3), 1, Q).unwrap());
        assert!(verify_skeleton_lcm(&builtins::solid_square(), 1, Q).unwrap());
        assert!(verify_skeleton_lcm(&builtins::solid_square(), 4, Q).is_err());
    }

    #[test]
    fn two_cm_equivalence_examples() {
        for c in [builtins::square_boundary(), builtins::triangle_wedge(), builtins::cube_boundary()] {
            assert!(verify_2cm_poset_equivalence(&c, Q));
        }
        assert!(simplicial_is_l_cm(&builtins::square_boundary().face_poset().order_complex(), 2, Q));
        assert!(!simplicial_is_l_cm(&builtins::triangle_wedge().face_poset().order_complex(), 2, Q));
    }

    #[test]
    fn poset_examples() {
        assert_eq!(is_cm_poset(&Poset::chain(3), Q), Ok(true));
        assert_eq!(is_cm_poset(&builtins::square_boundary().face_poset(), Q), Ok(true));
        assert_eq!(is_cm_poset(&builtins::triangle_wedge().face_poset(), Q), Ok(false));
        let bent = Poset::from_relations(vec!["a".into(), "b".into(), "c".into(), "d".into()], &[(0, 1), (1, 2), (0, 3)])
            .unwrap();
        assert_eq!(is_cm_poset(&bent, Q), Err(Error::NonGradedPoset));
    }

    #[test]
    fn report_json_shape() {
        let r = cm_report(&builtins::triangle_wedge(), Q);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["isCM"], false);
        assert_eq!(json["witnesses"], serde_json::json!([[0, ["s"]]]));
        assert_eq!(json["field"], "QQ");
        let cube = cm_report(&builtins::cube_boundary(), Q);
        assert!(cube.is_cm && cube.gorenstein_star && cube.lcm_order == 2);
        assert_eq!(cube.top_cohomology_rank, 1);
    }

    #[test]
    fn filter_deletions_of_a_sphere_are_acyclic() {
        let p = builtins::cube_boundary().face_poset();
        for x in 0..p.len() {
            assert_eq!(filter_deletion_acyclic(&p, x, Q), Ok(true));
        }
    }
}
