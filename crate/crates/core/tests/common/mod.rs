//! Reference computations used to check the library. Nothing here calls the
//! library's linear algebra or homology code: ranks come from a small sparse
//! elimination over `BigRational` and chain complexes are assembled from raw
//! face lists.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use cellmac_core::CellComplex;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

type Row = BTreeMap<usize, BigRational>;

/// Rank over Q of the rows given as `(column, value)` lists.
pub fn rank_q(rows: &[Vec<(usize, i64)>]) -> usize {
    let mut pivots: HashMap<usize, Row> = HashMap::new();
    for r in rows {
        let mut row: Row = BTreeMap::new();
        for &(c, v) in r {
            if v != 0 {
                *row.entry(c).or_insert_with(BigRational::zero) += BigRational::from_integer(BigInt::from(v));
            }
        }
        row.retain(|_, v| !v.is_zero());
        while let Some(c) = row.keys().copied().find(|c| pivots.contains_key(c)) {
            let factor = row[&c].clone();
            for (k, pv) in &pivots[&c] {
                let e = row.entry(*k).or_insert_with(BigRational::zero);
                *e -= &factor * pv;
            }
            row.retain(|_, v| !v.is_zero());
        }
        if let Some((&lead, lv)) = row.iter().next() {
            let inv = lv.recip();
            for v in row.values_mut() {
                *v *= &inv;
            }
            pivots.insert(lead, row);
        }
    }
    pivots.len()
}

/// Rank modulo a prime.
pub fn rank_mod_p(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv = pow_mod(m[rank][c], p - 2, p);
        for i in 0..m.len() {
            if i != rank && m[i][c] != 0 {
                let f = m[i][c] * inv % p;
                let pivot_row = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut r = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Reduced Betti numbers over Q from degree -1, trailing zeros trimmed.
/// `faces` must be closed under taking subsets; the empty face is added.
pub fn reduced_betti(faces: &BTreeSet<Vec<usize>>) -> Vec<usize> {
    let mut by_dim: Vec<Vec<&Vec<usize>>> = Vec::new();
    let empty = Vec::new();
    by_dim.push(vec![&empty]);
    for f in faces.iter().filter(|f| !f.is_empty()) {
        if by_dim.len() <= f.len() {
            by_dim.resize(f.len() + 1, Vec::new());
        }
        by_dim[f.len()].push(f);
    }
    let index: Vec<HashMap<&Vec<usize>, usize>> =
        by_dim.iter().map(|fs| fs.iter().enumerate().map(|(i, f)| (*f, i)).collect()).collect();
    // ranks[k]: rank of the boundary from faces with k vertices
    let mut ranks = vec![0; by_dim.len() + 1];
    for k in 1..by_dim.len() {
        let rows: Vec<Vec<(usize, i64)>> = by_dim[k]
            .iter()
            .map(|f| {
                (0..f.len())
                    .map(|j| {
                        let mut g = (*f).clone();
                        g.remove(j);
                        (index[k - 1][&g], if j % 2 == 0 { 1 } else { -1 })
                    })
                    .collect()
            })
            .collect();
        ranks[k] = rank_q(&rows);
    }
    let mut out: Vec<usize> = (0..by_dim.len()).map(|k| by_dim[k].len() - ranks[k] - ranks[k + 1]).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// All subsets of the given facets.
pub fn closure(facets: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    for f in facets {
        for m in 0..1u32 << f.len() {
            out.insert((0..f.len()).filter(|i| m >> i & 1 == 1).map(|i| f[i]).collect());
        }
    }
    out
}

pub fn bits(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn mask(face: &[usize]) -> u32 {
    face.iter().fold(0, |m, &v| m | 1 << v)
}

/// Faces with every vertex in `r`.
pub fn restrict(faces: &BTreeSet<Vec<usize>>, r: u32) -> BTreeSet<Vec<usize>> {
    faces.iter().filter(|f| mask(f) & !r == 0).cloned().collect()
}

/// `lk σ`; empty when `σ` is not a face.
pub fn link(faces: &BTreeSet<Vec<usize>>, sigma: u32) -> BTreeSet<Vec<usize>> {
    if !faces.contains(&bits(sigma)) {
        return BTreeSet::new();
    }
    faces
        .iter()
        .filter(|f| mask(f) & sigma == 0 && faces.contains(&bits(mask(f) | sigma)))
        .cloned()
        .collect()
}

pub fn dim(faces: &BTreeSet<Vec<usize>>) -> i32 {
    faces.iter().map(|f| f.len() as i32 - 1).max().unwrap_or(-1)
}

/// `β̃_i` of a face set, zero outside the stored range. A face set without
/// the empty face is the void complex, whose homology is zero.
pub fn betti_at(faces: &BTreeSet<Vec<usize>>, i: i32) -> usize {
    if faces.is_empty() {
        return 0;
    }
    let b = reduced_betti(faces);
    usize::try_from(i + 1).ok().and_then(|k| b.get(k).copied()).unwrap_or(0)
}

/// Reisner: every link has vanishing homology below its dimension.
pub fn reisner_cm(faces: &BTreeSet<Vec<usize>>) -> bool {
    faces.iter().all(|f| {
        let lk = link(faces, mask(f));
        let b = reduced_betti(&lk);
        let d = dim(&lk);
        b.iter().enumerate().all(|(k, &x)| x == 0 || k as i32 > d)
    })
}

/// Chains of the strict order `lt` on `0..len`, as sorted index lists.
pub fn chains<F: Fn(usize, usize) -> bool>(elements: &[usize], lt: F) -> BTreeSet<Vec<usize>> {
    let mut out = BTreeSet::new();
    out.insert(Vec::new());
    let mut stack: Vec<Vec<usize>> = elements.iter().map(|&e| vec![e]).collect();
    while let Some(c) = stack.pop() {
        let top = *c.last().unwrap();
        for &e in elements {
            if lt(top, e) {
                let mut d = c.clone();
                d.push(e);
                stack.push(d);
            }
        }
        let mut sorted = c;
        sorted.sort_unstable();
        out.insert(sorted);
    }
    out
}

/// Order complex of the nonempty cells of `cx` that satisfy `keep`.
pub fn face_order_complex<P: Fn(usize) -> bool>(cx: &CellComplex, keep: P) -> BTreeSet<Vec<usize>> {
    let elems: Vec<usize> = (1..cx.cell_count()).filter(|&i| keep(i)).collect();
    chains(&elems, |a, b| a != b && cx.is_face_of(a, b))
}

/// Reduced Betti numbers over Q of the cellular chain complex of the cells
/// satisfying `keep` (which must form a subcomplex containing the empty
/// cell), using the stored incidence numbers.
pub fn cellular_betti<P: Fn(usize) -> bool>(cx: &CellComplex, keep: P) -> Vec<usize> {
    let top = cx.dim();
    let mut out = Vec::new();
    let mut index: Vec<HashMap<usize, usize>> = Vec::new();
    for d in -1..=top {
        let ids: Vec<usize> = cx.cells_of_dim(d).map(|(i, _)| i).filter(|&i| keep(i)).collect();
        index.push(ids.iter().enumerate().map(|(k, &i)| (i, k)).collect());
    }
    let rank_of = |d: i32| -> usize {
        if d < 0 || d > top {
            return 0;
        }
        let rows: Vec<Vec<(usize, i64)>> = index[(d + 1) as usize]
            .keys()
            .map(|&c| {
                cx.cell(c).facets.iter().map(|&f| (index[d as usize][&f], cx.incidence(f, c) as i64)).collect()
            })
            .collect();
        rank_q(&rows)
    };
    let ranks: Vec<usize> = (-1..=top + 1).map(rank_of).collect();
    for d in -1..=top {
        let k = (d + 1) as usize;
        out.push(index[k].len() - ranks[k] - ranks[k + 1]);
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Every simplicial complex on exactly `m` vertices (each vertex used), one
/// per isomorphism class, as face sets.
pub fn simplicial_complexes_up_to_iso(m: usize) -> Vec<BTreeSet<Vec<usize>>> {
    let masks: Vec<u32> = {
        let mut v: Vec<u32> = (1..1u32 << m).collect();
        v.sort_by_key(|x| (x.count_ones(), *x));
        v
    };
    let perms = permutations(m);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut chosen = BTreeSet::new();
    enumerate_downsets(&masks, 0, &mut chosen, &mut |set: &BTreeSet<u32>| {
        if (0..m).any(|v| !set.contains(&(1 << v))) {
            return;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut image: Vec<u32> =
                    set.iter().map(|&f| bits(f).iter().fold(0, |a, &v| a | 1 << p[v])).collect();
                image.sort_unstable();
                image
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            let mut faces: BTreeSet<Vec<usize>> = set.iter().map(|&f| bits(f)).collect();
            faces.insert(Vec::new());
            out.push(faces);
        }
    });
    out
}

fn enumerate_downsets<F: FnMut(&BTreeSet<u32>)>(masks: &[u32], k: usize, chosen: &mut BTreeSet<u32>, visit: &mut F) {
    if k == masks.len() {
        visit(chosen);
        return;
    }
    let f = masks[k];
    enumerate_downsets(masks, k + 1, chosen, visit);
    let boundary_present = f.count_ones() == 1 || bits(f).iter().all(|&v| chosen.contains(&(f & !(1 << v))));
    if boundary_present {
        chosen.insert(f);
        enumerate_downsets(masks, k + 1, chosen, visit);
        chosen.remove(&f);
    }
}

fn permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(m - 1) {
        for pos in 0..m {
            let mut q = p.clone();
            q.insert(pos, m - 1);
            out.push(q);
        }
    }
    out
}

/// Builds the library's complex from a face set on `0..n`.
pub fn to_cell_complex(n: usize, faces: &BTreeSet<Vec<usize>>) -> CellComplex {
    let facets: Vec<Vec<usize>> = faces
        .iter()
        .filter(|f| !faces.iter().any(|g| g.len() > f.len() && f.iter().all(|v| g.contains(v))))
        .cloned()
        .collect();
    let refs: Vec<&[usize]> = facets.iter().map(Vec::as_slice).collect();
    cellmac_core::builtins::simplicial_from_facets(n, &refs)
}

/// Face set of a simplicial cell complex, by vertex indices.
pub fn faces_of(cx: &CellComplex) -> BTreeSet<Vec<usize>> {
    cx.cells().iter().map(|c| c.vertices.iter().collect()).collect()
}

#[test]
fn oracle_self_checks() {
    assert_eq!(rank_q(&[vec![(0, 1), (1, 1)], vec![(0, 2), (1, 2)], vec![(1, 3)]]), 2);
    assert_eq!(rank_mod_p(&[vec![1, 1], vec![1, -1]], 2), 1);
    let circle = closure(&[vec![0, 1], vec![1, 2], vec![0, 2]]);
    assert_eq!(reduced_betti(&circle), vec![0, 0, 1]);
    let two_points = closure(&[vec![0], vec![1]]);
    assert_eq!(reduced_betti(&two_points), vec![0, 1]);
    assert_eq!(reduced_betti(&closure(&[vec![]])), vec![1]);
    assert!(reisner_cm(&circle));
    assert!(!reisner_cm(&closure(&[vec![0, 1], vec![2]])));
    // isomorphism classes with every vertex used: 1, 2, 5, 20, 180
    let counts: Vec<usize> = (1..=4).map(|m| simplicial_complexes_up_to_iso(m).len()).collect();
    assert_eq!(counts, vec![1, 2, 5, 20]);
}
