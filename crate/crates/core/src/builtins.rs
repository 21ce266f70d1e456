//! Built-in complexes, generated in code.

use crate::cell::{CellComplex, ComplexDescription};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::simplicial::SimplicialComplex;
use crate::subset::VertexSet;

/// Names accepted by [`builtin`], besides the parametrized `simplex-k` and
/// `boundary-simplex-k`.
pub const FIXED_NAMES: &[&str] = &[
    "vertex",
    "edge",
    "solid-square",
    "square-boundary",
    "cube-boundary",
    "cross-polytope-boundary-3",
    "triangular-prism-boundary",
    "triangle-wedge",
    "triangle-plus-edge",
    "bowtie-graph",
];

/// Largest `k` accepted by `simplex-k`.
pub const MAX_SIMPLEX: usize = 4;
/// Largest `k` accepted by `boundary-simplex-k`.
pub const MAX_BOUNDARY_SIMPLEX: usize = 5;

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

fn build(names: Vec<String>, faces: &[(i32, VertexSet)]) -> CellComplex {
    CellComplex::from_faces(names, faces, Field::Rational).expect("built-in complexes are valid")
}

fn simplicial(names: Vec<String>, faces: impl Iterator<Item = VertexSet>) -> CellComplex {
    let faces: Vec<(i32, VertexSet)> =
        faces.filter(|f| !f.is_empty()).map(|f| (f.len() as i32 - 1, f)).collect();
    build(names, &faces)
}

/// A single vertex.
pub fn vertex() -> CellComplex {
    simplex(0)
}

/// The full `k`-simplex on vertices `1..=k+1`.
pub fn simplex(k: usize) -> CellComplex {
    simplicial(numbered(k + 1), VertexSet::all(k + 1))
}

/// The boundary of the `k`-simplex, a `(k-1)`-sphere.
pub fn boundary_simplex(k: usize) -> CellComplex {
    let full = VertexSet::full(k + 1);
    simplicial(numbered(k + 1), VertexSet::all(k + 1).filter(|&f| f != full))
}

/// The simplicial complex generated by the facets, on vertices `1..=n`.
pub fn simplicial_from_facets(n: usize, facets: &[&[usize]]) -> CellComplex {
    let s = SimplicialComplex::from_facets(n, facets.iter().map(|f| f.to_vec()));
    CellComplex::from_simplicial(numbered(n), &s).expect("simplicial complexes are valid")
}

fn square_faces(solid: bool) -> Vec<(i32, VertexSet)> {
    let mut faces: Vec<(i32, VertexSet)> = (0..4).map(|v| (0, VertexSet::singleton(v))).collect();
    for v in 0..4 {
        faces.push((1, VertexSet::from_indices([v, (v + 1) % 4])));
    }
    if solid {
        faces.push((2, VertexSet::full(4)));
    }
    faces
}

/// A square 2-cell on vertices `1..4` in cyclic order, with its edges.
pub fn solid_square() -> CellComplex {
    build(numbered(4), &square_faces(true))
}

/// The 4-cycle on vertices `1..4`.
pub fn square_boundary() -> CellComplex {
    build(numbered(4), &square_faces(false))
}

/// The boundary of the `d`-cube. Vertices are the points of `{0,1}^d`,
/// named by their coordinates; vertex `i` has the binary digits of `i`.
pub fn cube_boundary_dim(d: usize) -> CellComplex {
    let names: Vec<String> =
        (0..1usize << d).map(|i| (0..d).map(|b| if i >> b & 1 == 1 { '1' } else { '0' }).collect()).collect();
    let mut faces = Vec::new();
    // a face is a pattern in {0,1,*}^d, not all stars
    let patterns = 3usize.pow(d as u32);
    for p in 0..patterns {
        let mut digits = Vec::with_capacity(d);
        let mut q = p;
        for _ in 0..d {
            digits.push(q % 3);
            q /= 3;
        }
        let stars = digits.iter().filter(|&&x| x == 2).count();
        if stars == d {
            continue;
        }
        let vertices = VertexSet::from_indices(
            (0..1usize << d).filter(|&i| (0..d).all(|b| digits[b] == 2 || digits[b] == (i >> b & 1))),
        );
        faces.push((stars as i32, vertices));
    }
    faces.sort_by_key(|&(dim, s)| (dim, s));
    build(names, &faces)
}

/// The boundary of the 3-cube.
pub fn cube_boundary() -> CellComplex {
    cube_boundary_dim(3)
}

/// The boundary of the `d`-dimensional cross-polytope. Vertex `2i` is `+e_i`
/// and `2i+1` is `-e_i`; faces contain no antipodal pair.
pub fn cross_polytope_boundary(d: usize) -> CellComplex {
    let names: Vec<String> = (1..=d).flat_map(|i| [format!("+{i}"), format!("-{i}")]).collect();
    let faces = VertexSet::all(2 * d).filter(|f| (0..d).all(|i| !(f.contains(2 * i) && f.contains(2 * i + 1))));
    simplicial(names, faces)
}

/// The product of a complex with an interval. Each vertex `v` becomes `v`
/// and `v'`; each nonempty cell `c` yields `c`, `c'` and `c × I`.
pub fn prism(base: &CellComplex) -> CellComplex {
    let n = base.vertex_count();
    let mut names: Vec<String> = base.vertex_names().to_vec();
    names.extend(base.vertex_names().iter().map(|v| format!("{v}'")));
    let lift = |s: VertexSet| VertexSet(s.0 << n);
    let mut faces = Vec::new();
    for c in base.cells().iter().filter(|c| c.dim >= 0) {
        faces.push((c.dim, c.vertices));
        faces.push((c.dim, lift(c.vertices)));
        faces.push((c.dim + 1, c.vertices.union(lift(c.vertices))));
    }
    faces.sort_by_key(|&(dim, s)| (dim, s));
    build(names, &faces)
}

/// The complex with its unique maximal cell removed; for a polytope, its
/// boundary.
pub fn drop_top_cell(solid: &CellComplex) -> CellComplex {
    let top = solid.maximal_cells();
    assert_eq!(top.len(), 1, "expected a unique maximal cell");
    let faces: Vec<(i32, VertexSet)> = solid
        .cells()
        .iter()
        .enumerate()
        .filter(|&(i, c)| i != top[0] && c.dim >= 0)
        .map(|(_, c)| (c.dim, c.vertices))
        .collect();
    build(solid.vertex_names().to_vec(), &faces)
}

/// Boundary of the triangular prism: two triangles and three squares.
pub fn triangular_prism_boundary() -> CellComplex {
    drop_top_cell(&prism(&simplex(2)))
}

/// Two filled triangles `abs` and `cds` sharing the vertex `s`.
pub fn triangle_wedge() -> CellComplex {
    let names: Vec<String> = ["a", "b", "c", "d", "s"].iter().map(|s| s.to_string()).collect();
    let s = SimplicialComplex::from_facets(5, [[0, 1, 4], [2, 3, 4]]);
    CellComplex::from_simplicial(names, &s).expect("valid")
}

/// A filled triangle `123` and a disjoint edge `45`.
pub fn triangle_plus_edge() -> CellComplex {
    simplicial_from_facets(5, &[&[0, 1, 2], &[3, 4]])
}

/// Two triangle graphs `abs` and `cds` sharing the vertex `s`.
pub fn bowtie_graph() -> CellComplex {
    let names: Vec<String> = ["a", "b", "c", "d", "s"].iter().map(|s| s.to_string()).collect();
    let s = SimplicialComplex::from_facets(5, [[0, 1], [1, 4], [0, 4], [2, 3], [3, 4], [2, 4]]);
    CellComplex::from_simplicial(names, &s).expect("valid")
}

/// Looks up a built-in by name.
pub fn builtin(name: &str) -> Result<CellComplex> {
    let parametrized = |prefix: &str, max: usize, min: usize| -> Option<usize> {
        let k: usize = name.strip_prefix(prefix)?.parse().ok()?;
        (min..=max).contains(&k).then_some(k)
    };
    if let Some(k) = parametrized("boundary-simplex-", MAX_BOUNDARY_SIMPLEX, 1) {
        return Ok(boundary_simplex(k));
    }
    if let Some(k) = parametrized("simplex-", MAX_SIMPLEX, 0) {
        return Ok(simplex(k));
    }
    Ok(match name {
        "vertex" => vertex(),
        "edge" => simplex(1),
        "solid-square" => solid_square(),
        "square-boundary" => square_boundary(),
        "cube-boundary" => cube_boundary(),
        "cross-polytope-boundary-3" => cross_polytope_boundary(3),
        "triangular-prism-boundary" => triangular_prism_boundary(),
        "triangle-wedge" => triangle_wedge(),
        "triangle-plus-edge" => triangle_plus_edge(),
        "bowtie-graph" => bowtie_graph(),
        _ => return Err(Error::UnknownBuiltin(name.to_string())),
    })
}

/// Every built-in name, with the parametrized families expanded.
pub fn all_names() -> Vec<String> {
    let mut names: Vec<String> = FIXED_NAMES.iter().map(|s| s.to_string()).collect();
    names.extend((0..=MAX_SIMPLEX).map(|k| format!("simplex-{k}")));
    names.extend((1..=MAX_BOUNDARY_SIMPLEX).map(|k| format!("boundary-simplex-{k}")));
    names
}

/// Every built-in, paired with its name.
pub fn corpus() -> Vec<(String, CellComplex)> {
    all_names().into_iter().map(|n| {
        let c = builtin(&n).expect("listed names resolve");
        (n, c)
    }).collect()
}

/// The description of a built-in, as a JSON-ready value.
pub fn description(name: &str) -> Result<ComplexDescription> {
    Ok(builtin(name)?.description())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::reduced_homology_dims;

    #[test]
    fn f_vectors() {
        assert_eq!(cube_boundary().f_vector(), vec![1, 8, 12, 6]);
        assert_eq!(cube_boundary().cell_count(), 27);
        assert_eq!(cross_polytope_boundary(3).f_vector(), vec![1, 6, 12, 8]);
        assert_eq!(triangular_prism_boundary().f_vector(), vec![1, 6, 9, 5]);
        assert_eq!(simplex(3).f_vector(), vec![1, 4, 6, 4, 1]);
        assert_eq!(boundary_simplex(2).f_vector(), vec![1, 3, 3]);
        assert_eq!(triangle_wedge().f_vector(), vec![1, 5, 6, 2]);
        assert_eq!(bowtie_graph().f_vector(), vec![1, 5, 6]);
        assert_eq!(triangle_plus_edge().f_vector(), vec![1, 5, 4, 1]);
    }

    #[test]
    fn spheres_are_spheres() {
        for (c, d) in [
            (cube_boundary(), 2),
            (cross_polytope_boundary(3), 2),
            (triangular_prism_boundary(), 2),
            (boundary_simplex(4), 3),
            (cube_boundary_dim(4), 3),
        ] {
            assert!(reduced_homology_dims(&c, Field::Rational).is_sphere(d));
        }
    }

    #[test]
    fn every_name_resolves() {
        for name in all_names() {
            assert!(builtin(&name).is_ok(), "{name}");
        }
        assert_eq!(builtin("simplex-5"), Err(Error::UnknownBuiltin("simplex-5".into())));
        assert!(builtin("torus").is_err());
    }
}
