//! Simplicial lattice polytopes with the origin in their interior, and
//! their face fans.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{det, rank, solve_rational, IntMatrix, LatticePoint};
use crate::rational::{int, Rational};

/// Raw polytope data, as read from input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeData {
    pub dimension: usize,
    pub vertices: Vec<LatticePoint>,
    /// 0-based vertex index sets; `None` means "simplex, generate facets".
    pub facets: Option<Vec<Vec<usize>>>,
}

/// A facet of a validated polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    /// Sorted vertex indices.
    pub vertices: Vec<usize>,
    /// Primitive outer normal `w`: `<w, x> <= level` on the polytope with
    /// equality exactly on this facet.
    pub normal: Vec<i64>,
    /// Lattice distance of the facet hyperplane from the origin.
    pub level: i64,
    /// `|det|` of the facet vertices, the index of the cone they span.
    pub multiplicity: i64,
}

/// A validated simplicial polytope. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polytope {
    dimension: usize,
    vertices: Vec<LatticePoint>,
    facets: Vec<Facet>,
}

/// A face of the fan, i.e. the cone over a set of vertices of one facet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub vertex_indices: Vec<usize>,
}

impl Face {
    pub fn new(mut vertex_indices: Vec<usize>) -> Self {
        vertex_indices.sort_unstable();
        vertex_indices.dedup();
        Face { vertex_indices }
    }

    pub fn dim(&self) -> usize {
        self.vertex_indices.len()
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.vertex_indices.iter().all(|v| other.vertex_indices.binary_search(v).is_ok())
    }
}

/// Weight of a simplex: `q_i = |det(v_0, .., v_i^, .., v_n)|`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplexWeights {
    q: Vec<u64>,
    mu: u64,
}

impl SimplexWeights {
    pub fn new(mut q: Vec<u64>) -> Result<Self> {
        if q.len() < 2 || q.contains(&0) {
            return Err(Error::NonPositiveWeight);
        }
        q.sort_unstable();
        let mu = q.iter().sum();
        Ok(SimplexWeights { q, mu })
    }

    pub fn q(&self) -> &[u64] {
        &self.q
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// Ambient dimension `n` (there are `n + 1` weights).
    pub fn dimension(&self) -> usize {
        self.q.len() - 1
    }

    pub fn gcd(&self) -> u64 {
        self.q.iter().fold(0, |g, &x| g.gcd(&x))
    }

    pub fn is_reduced(&self) -> bool {
        self.gcd() == 1
    }

    pub fn ensure_reduced(&self) -> Result<()> {
        match self.gcd() {
            1 => Ok(()),
            g => Err(Error::NotReduced(self.q.clone(), g)),
        }
    }

    /// Reflexivity criterion for simplices: every `q_i` divides `mu`.
    pub fn is_reflexive(&self) -> bool {
        self.q.iter().all(|&q| self.mu.is_multiple_of(q))
    }
}

pub fn is_reduced(w: &SimplexWeights) -> bool {
    w.is_reduced()
}

fn columns(vertices: &[LatticePoint], idx: &[usize], n: usize) -> IntMatrix {
    IntMatrix::from_columns(n, idx.iter().map(|&i| vertices[i].clone()).collect())
        .expect("vertex lengths checked")
}

/// All `k`-element subsets of `0..m` in lexicographic order.
pub(crate) fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, m, k, &mut Vec::with_capacity(k), &mut out);
    out
}

fn primitive(v: &[Rational]) -> (Vec<i64>, i64) {
    let l = v.iter().fold(1i64, |l, r| l.lcm(r.denom()));
    let ints: Vec<i64> = v.iter().map(|r| (r * int(l)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |g, x| g.gcd(x)).max(1);
    (ints.iter().map(|x| x / g).collect(), l / g)
}

fn dot_q(u: &[Rational], x: &[i64]) -> Rational {
    u.iter().zip(x).map(|(a, &b)| a * int(b)).sum()
}

/// Checks simpliciality, convex position and interiority of the origin,
/// computing facet normals and levels along the way.
pub fn validate_polytope(data: PolytopeData) -> Result<Polytope> {
    let n = data.dimension;
    if n == 0 || data.vertices.is_empty() {
        return Err(Error::Empty);
    }
    for v in &data.vertices {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    let mut seen = BTreeSet::new();
    for (i, v) in data.vertices.iter().enumerate() {
        if !seen.insert(v) {
            return Err(Error::DuplicateVertex(i));
        }
    }
    let m = data.vertices.len();
    let raw_facets = match data.facets {
        Some(f) => f,
        None if m == n + 1 => subsets(m, n),
        None => return Err(Error::NotASimplex),
    };

    let mut facets = Vec::with_capacity(raw_facets.len());
    for (fi, raw) in raw_facets.iter().enumerate() {
        if let Some(&index) = raw.iter().find(|&&i| i >= m) {
            return Err(Error::VertexOutOfRange { facet: fi, index });
        }
        let verts = Face::new(raw.clone()).vertex_indices;
        if verts.len() != n {
            return Err(Error::NonSimplicialFacet(fi));
        }
        let b = columns(&data.vertices, &verts, n);
        let d = det(&b)?;
        if d == 0 {
            // Linearly dependent: either the affine hull is degenerate or it
            // passes through the origin.
            let affine = IntMatrix::from_columns(
                n + 1,
                verts.iter().map(|&i| {
                    let mut c = data.vertices[i].clone();
                    c.push(1);
                    c
                }).collect(),
            )?;
            return Err(if rank(&affine) < n {
                Error::DegenerateFacet(fi)
            } else {
                Error::OriginNotInterior(fi)
            });
        }
        // Facet hyperplane {x : <u, x> = 1}, i.e. B^T u = 1.
        let bt = IntMatrix::from_columns(n, (0..n).map(|r| (0..n).map(|c| b.get(r, c)).collect()).collect())?;
        let u = solve_rational(&bt, &vec![1; n])?.ok_or(Error::DependentColumns)?;
        let (mut above, mut on, mut below) = (false, false, false);
        for (vi, v) in data.vertices.iter().enumerate() {
            if verts.binary_search(&vi).is_ok() {
                continue;
            }
            let val = dot_q(&u, v);
            match val.cmp(&int(1)) {
                std::cmp::Ordering::Less => below = true,
                std::cmp::Ordering::Equal => on = true,
                std::cmp::Ordering::Greater => above = true,
            }
        }
        if on {
            return Err(Error::NonSimplicialFacet(fi));
        }
        if above && below {
            return Err(Error::NotConvexPosition(fi));
        }
        if above {
            return Err(Error::OriginNotInterior(fi));
        }
        let (normal, level) = primitive(&u);
        facets.push(Facet { vertices: verts, normal, level, multiplicity: d.abs() });
    }

    // Every ridge must be shared by exactly two facets for the cones to
    // cover R^n.
    let mut ridges: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    for f in &facets {
        for skip in 0..n {
            let ridge: Vec<usize> = f.vertices.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
            *ridges.entry(ridge).or_default() += 1;
        }
    }
    if let Some((ridge, &count)) = ridges.iter().find(|(_, &c)| c != 2) {
        return Err(Error::FacetsNotClosed(ridge.clone(), count));
    }
    let mut uniq = BTreeSet::new();
    for (fi, f) in facets.iter().enumerate() {
        if !uniq.insert(f.vertices.clone()) {
            return Err(Error::NonSimplicialFacet(fi));
        }
    }

    Ok(Polytope { dimension: n, vertices: data.vertices, facets })
}

impl Polytope {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vertices(&self) -> &[LatticePoint] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn is_simplex(&self) -> bool {
        self.vertices.len() == self.dimension + 1
    }

    pub fn cone_generators(&self, face: &[usize]) -> IntMatrix {
        columns(&self.vertices, face, self.dimension)
    }

    /// Realizes the simplex of the given weights. With a weight equal to 1 the
    /// vertices are `e_1, .., e_n` and `-(q_1, .., q_n)`; otherwise the
    /// vertices are the images of the unit vectors in `Z^{n+1} / Z q`.
    pub fn from_weights(w: &SimplexWeights) -> Result<Polytope> {
        w.ensure_reduced()?;
        let n = w.dimension();
        let q: Vec<i64> = w.q().iter().map(|&x| x as i64).collect();
        let vertices = if q[0] == 1 {
            let mut v: Vec<LatticePoint> = (0..n).map(|j| crate::lattice::unit(n, j)).collect();
            v.push(q[1..].iter().map(|x| -x).collect());
            v
        } else {
            quotient_realization(&q)
        };
        validate_polytope(PolytopeData { dimension: n, vertices, facets: None })
    }

    pub fn faces(&self) -> Vec<Face> {
        enumerate_faces(self)
    }
}

/// Columns of the last `n` rows of a unimodular `U` with `U q = e_0`.
fn quotient_realization(q: &[i64]) -> Vec<LatticePoint> {
    let m = q.len();
    let mut w = q.to_vec();
    let mut u: Vec<Vec<i64>> = (0..m).map(|i| crate::lattice::unit(m, i)).collect();
    loop {
        let nonzero: Vec<usize> = (0..m).filter(|&i| w[i] != 0).collect();
        if nonzero.len() == 1 {
            let i = nonzero[0];
            w.swap(0, i);
            u.swap(0, i);
            break;
        }
        let p = *nonzero.iter().min_by_key(|&&i| w[i].abs()).unwrap();
        for &j in &nonzero {
            if j != p {
                let c = Integer::div_floor(&w[j], &w[p]);
                w[j] -= c * w[p];
                let row = u[p].clone();
                for (x, y) in u[j].iter_mut().zip(row) {
                    *x -= c * y;
                }
            }
        }
    }
    debug_assert_eq!(w[0].abs(), 1);
    (0..m).map(|col| (1..m).map(|row| u[row][col]).collect()).collect()
}

pub fn simplex_weights(p: &Polytope) -> Result<SimplexWeights> {
    if !p.is_simplex() {
        return Err(Error::NotASimplex);
    }
    SimplexWeights::new(vertex_weights(p)?)
}

/// Per-vertex weights `q_i` in vertex order (unsorted).
pub fn vertex_weights(p: &Polytope) -> Result<Vec<u64>> {
    if !p.is_simplex() {
        return Err(Error::NotASimplex);
    }
    let n = p.dimension;
    (0..=n)
        .map(|i| {
            let idx: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
            Ok(det(&p.cone_generators(&idx))?.unsigned_abs())
        })
        .collect()
}

/// Reflexive when every facet hyperplane sits at lattice distance one.
/// For a simplex this agrees with `q_i | mu`.
pub fn is_reflexive(p: &Polytope) -> bool {
    p.facets.iter().all(|f| f.level == 1)
}

/// Solves `v = sum q_i b_i` in a facet cone containing `v`.
pub fn cone_coordinates(p: &Polytope, v: &[i64]) -> Option<(usize, Vec<Rational>)> {
    p.facets.iter().enumerate().find_map(|(fi, f)| {
        let q = solve_rational(&p.cone_generators(&f.vertices), v).ok()??;
        q.iter().all(|c| !c.is_negative()).then_some((fi, q))
    })
}

/// The piecewise-linear function equal to 1 on vertices and linear on each
/// facet cone.
pub fn newton_value(p: &Polytope, v: &[i64]) -> Rational {
    if v.iter().all(|&x| x == 0) {
        return Rational::zero();
    }
    let (_, q) = cone_coordinates(p, v).expect("the facet cones cover the ambient space");
    q.iter().sum()
}

pub fn normalized_volume(p: &Polytope) -> u64 {
    p.facets.iter().map(|f| f.multiplicity as u64).sum()
}

/// Every nonempty subset of a facet, deduplicated, ordered by size then
/// lexicographically.
pub fn enumerate_faces(p: &Polytope) -> Vec<Face> {
    let mut faces = BTreeSet::new();
    for f in &p.facets {
        let k = f.vertices.len();
        for mask in 1u32..(1 << k) {
            let idx = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| f.vertices[b]).collect();
            faces.insert(Face::new(idx));
        }
    }
    let mut out: Vec<Face> = faces.into_iter().collect();
    out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.cmp(b)));
    out
}

/// Cross-polytope `conv(+-e_i)` with its `2^n` facets.
pub fn cross_polytope(n: usize) -> Result<Polytope> {
    let mut vertices = Vec::with_capacity(2 * n);
    for i in 0..n {
        vertices.push(crate::lattice::unit(n, i));
        let mut v = vec![0; n];
        v[i] = -1;
        vertices.push(v);
    }
    let facets = (0u32..(1 << n))
        .map(|signs| (0..n).map(|i| 2 * i + (signs >> i & 1) as usize).collect())
        .collect();
    validate_polytope(PolytopeData { dimension: n, vertices, facets: Some(facets) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::unit;
    use crate::rational::ratio;

    fn weights(q: &[u64]) -> SimplexWeights {
        SimplexWeights::new(q.to_vec()).unwrap()
    }

    fn square() -> PolytopeData {
        PolytopeData {
            dimension: 2,
            vertices: vec![vec![1, 0], vec![0, 1], vec![-1, 0], vec![0, -1]],
            facets: Some(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]]),
        }
    }

    #[test]
    fn validates_weighted_simplex() {
        let mut vertices: Vec<_> = (0..5).map(|j| unit(5, j)).collect();
        vertices.push(vec![-2, -2, -3, -3, -3]);
        let p = validate_polytope(PolytopeData { dimension: 5, vertices, facets: None }).unwrap();
        assert_eq!(p.facets().len(), 6);
        assert_eq!(simplex_weights(&p).unwrap().q(), &[1, 2, 2, 3, 3, 3]);
    }

    #[test]
    fn validates_square() {
        let p = validate_polytope(square()).unwrap();
        assert!(p.facets().iter().all(|f| f.level == 1 && f.multiplicity == 1));
        assert!(is_reflexive(&p));
        assert_eq!(normalized_volume(&p), 4);
        assert_eq!(enumerate_faces(&p).len(), 8);
    }

    #[test]
    fn rejects_shifted_triangle() {
        let data = PolytopeData {
            dimension: 2,
            vertices: vec![vec![2, 0], vec![1, 1], vec![0, -1]],
            facets: None,
        };
        assert!(matches!(validate_polytope(data), Err(Error::OriginNotInterior(_))));
    }

    #[test]
    fn rejects_origin_on_boundary() {
        let data = PolytopeData {
            dimension: 2,
            vertices: vec![vec![1, 0], vec![-1, 0], vec![0, 1]],
            facets: None,
        };
        assert!(matches!(validate_polytope(data), Err(Error::OriginNotInterior(_))));
    }

    #[test]
    fn rejects_bad_facets() {
        let mut d = square();
        d.facets = Some(vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        assert!(matches!(validate_polytope(d), Err(Error::FacetsNotClosed(..))));

        let mut d = square();
        d.facets = Some(vec![vec![0, 1, 2], vec![2, 3], vec![3, 0]]);
        assert_eq!(validate_polytope(d), Err(Error::NonSimplicialFacet(0)));

        // {e1, -e1} spans a line through the origin
        let mut d = square();
        d.facets = Some(vec![vec![0, 2], vec![1, 3]]);
        assert!(matches!(validate_polytope(d), Err(Error::OriginNotInterior(_))));

        // (0,0)-free degenerate facet: three collinear points in 3D
        let d = PolytopeData {
            dimension: 3,
            vertices: vec![vec![1, 0, 1], vec![2, 0, 1], vec![3, 0, 1], vec![0, 0, -1]],
            facets: Some(vec![vec![0, 1, 2]]),
        };
        assert_eq!(validate_polytope(d), Err(Error::DegenerateFacet(0)));

        // a vertex pushed inside the square is not in convex position
        let d = PolytopeData {
            dimension: 2,
            vertices: vec![vec![2, 0], vec![0, 2], vec![-2, 0], vec![0, -2], vec![1, 0]],
            facets: Some(vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 0]]),
        };
        assert!(matches!(validate_polytope(d), Err(Error::NotConvexPosition(_))));

        let mut d = square();
        d.vertices[3] = vec![1, 0];
        assert_eq!(validate_polytope(d), Err(Error::DuplicateVertex(3)));
    }

    #[test]
    fn weights_of_simplices() {
        for (q, mu) in [
            (&[1u64, 2, 2, 3, 3, 3][..], 14),
            (&[1, 2, 3, 4, 7, 11], 28),
            (&[1, 5, 12, 12, 30], 60),
        ] {
            let p = Polytope::from_weights(&weights(q)).unwrap();
            let w = simplex_weights(&p).unwrap();
            assert_eq!(w.q(), q);
            assert_eq!(w.mu(), mu);
            assert_eq!(normalized_volume(&p), mu);
        }
        let p = Polytope::from_weights(&weights(&[1, 2, 3, 4, 7, 11])).unwrap();
        assert_eq!(p.vertices()[5], vec![-2, -3, -4, -7, -11]);
    }

    #[test]
    fn quotient_realization_recovers_weights() {
        for q in [&[2u64, 3][..], &[2, 3, 5], &[3, 4, 5, 7], &[6, 10, 15], &[4, 6, 9, 14, 15]] {
            let w = weights(q);
            let p = Polytope::from_weights(&w).unwrap();
            assert_eq!(simplex_weights(&p).unwrap(), w, "{q:?}");
        }
        assert!(matches!(Polytope::from_weights(&weights(&[2, 4, 6])), Err(Error::NotReduced(_, 2))));
    }

    #[test]
    fn reduced_and_reflexive() {
        assert!(weights(&[1, 2, 2, 3, 3, 3]).is_reduced());
        assert!(!weights(&[2, 4, 6]).is_reduced());
        assert!(weights(&[1, 1, 1]).is_reduced());
        assert!(weights(&[1, 5, 12, 12, 30]).is_reflexive());
        assert!(!weights(&[1, 2, 2, 3, 3, 3]).is_reflexive());
        for q in [&[1u64, 5, 12, 12, 30][..], &[1, 2, 2, 3, 3, 3], &[1, 1, 1], &[1, 1, 2], &[2, 3, 5]] {
            let w = weights(q);
            let p = Polytope::from_weights(&w).unwrap();
            assert_eq!(is_reflexive(&p), w.is_reflexive(), "{q:?}");
        }
    }

    #[test]
    fn newton_values() {
        let p = Polytope::from_weights(&weights(&[1, 2, 2, 3, 3, 3])).unwrap();
        for v in p.vertices() {
            assert_eq!(newton_value(&p, v), int(1));
        }
        assert_eq!(newton_value(&p, &[0; 5]), int(0));
        // label 1/2: coefficients (1/2, 0, 0, 1/2, 1/2, 1/2) on (e1, .., e5, v_neg)
        // reordered, i.e. half of e3 + e4 + e5 + v_neg.
        assert_eq!(newton_value(&p, &[-1, -1, -1, -1, -1]), int(2));
        assert_eq!(newton_value(&p, &[3, 0, 0, 0, 0]), int(3));
        // cone of {e1, e2, e4, e5, v_neg}: coefficients (1/3, 1/3, 1, 1, 2/3)
        assert_eq!(newton_value(&p, &[-1, -1, -2, -1, -1]), ratio(10, 3));
    }

    #[test]
    fn newton_value_agrees_on_shared_cones() {
        let polys = [cross_polytope(3).unwrap(), Polytope::from_weights(&weights(&[1, 2, 3, 5])).unwrap()];
        for p in &polys {
            for x in -2..=2i64 {
                for y in -2..=2i64 {
                    for z in -2..=2i64 {
                        let v = [x, y, z];
                        let sums: Vec<Rational> = p
                            .facets()
                            .iter()
                            .filter_map(|f| solve_rational(&p.cone_generators(&f.vertices), &v).unwrap())
                            .filter(|c| c.iter().all(|q| !q.is_negative()))
                            .map(|c| c.iter().sum())
                            .collect();
                        assert!(!sums.is_empty());
                        assert!(sums.iter().all(|s| *s == newton_value(p, &v)), "{v:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn face_counts() {
        let p = Polytope::from_weights(&weights(&[1, 1, 1, 1, 1, 1])).unwrap();
        assert_eq!(enumerate_faces(&p).len(), 62);
        let line = PolytopeData { dimension: 1, vertices: vec![vec![1], vec![-1]], facets: None };
        let p = validate_polytope(line).unwrap();
        assert_eq!(enumerate_faces(&p).len(), 2);
        let cross3 = cross_polytope(3).unwrap();
        assert_eq!(enumerate_faces(&cross3).len(), 6 + 12 + 8);
    }
}
