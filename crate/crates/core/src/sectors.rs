//! Inertia sectors of the stacky fan over the faces of a polytope.
//!
//! A twisted sector is a box element `v = sum q_i b_i` (all `0 < q_i < 1`)
//! of some cone of the fan. Its age is the Newton value of `v`, its dimension
//! is `n - dim sigma(v)`, and its cohomology is the even cohomology of the
//! toric variety of the quotient fan, i.e. the h-vector of the star of
//! `sigma(v)`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{enumerate_open_parallelepiped, half_open_parallelepiped, LatticePoint};
use crate::polytope::{enumerate_faces, vertex_weights, Face, Polytope, SimplexWeights};
use crate::rational::{fract, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxElement {
    pub point: LatticePoint,
    /// Minimal face containing the point.
    pub support: Face,
    /// Coefficients on `support`, each strictly inside `(0, 1)`.
    pub coefficients: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SectorLabel {
    Untwisted,
    Box(BoxElement),
    /// Label `f` of a weighted projective space sector (`0` is untwisted).
    Fraction(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sector {
    pub label: SectorLabel,
    pub age: Rational,
    pub dim: usize,
    /// `(b_0, b_2, .., b_{2 dim})`.
    pub betti: Vec<u64>,
    /// Index of the sector labelled by the inverse element.
    pub inverse: usize,
}

impl Sector {
    pub fn is_untwisted(&self) -> bool {
        match &self.label {
            SectorLabel::Untwisted => true,
            SectorLabel::Fraction(f) => f.is_zero(),
            SectorLabel::Box(_) => false,
        }
    }

    pub fn has_integral_age(&self) -> bool {
        self.age.is_integer()
    }

    /// `b_{2k}`, zero outside `0..=dim`.
    pub fn betti_at(&self, k: i64) -> u64 {
        if k < 0 {
            return 0;
        }
        self.betti.get(k as usize).copied().unwrap_or(0)
    }

    pub fn total_betti(&self) -> u64 {
        self.betti.iter().sum()
    }
}

/// Sectors of an `n`-dimensional orbifold, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectorTable {
    pub n: usize,
    pub sectors: Vec<Sector>,
}

impl SectorTable {
    pub fn len(&self) -> usize {
        self.sectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Sector> {
        self.sectors.iter()
    }

    pub fn inverse_of(&self, index: usize) -> &Sector {
        &self.sectors[self.sectors[index].inverse]
    }

    /// Total dimension of the orbifold cohomology.
    pub fn mu(&self) -> u64 {
        self.sectors.iter().map(Sector::total_betti).sum()
    }
}

pub fn involution<'a>(s: &Sector, all: &'a SectorTable) -> Result<&'a Sector> {
    all.sectors.get(s.inverse).ok_or_else(|| match &s.label {
        SectorLabel::Box(b) => Error::InverseNotFound(b.point.clone()),
        _ => Error::InverseNotFound(Vec::new()),
    })
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// h-vector of the star of `face` in the fan: the even Betti numbers of the
/// toric variety of the quotient fan.
pub fn star_betti(p: &Polytope, faces: &[Face], face: &Face) -> Vec<u64> {
    let k = face.dim();
    let d = p.dimension() - k;
    let mut f = vec![0i64; d + 1];
    f[0] = 1;
    for t in faces {
        if t.dim() > k && face.is_subface_of(t) {
            f[t.dim() - k] += 1;
        }
    }
    (0..=d as i64)
        .map(|i| {
            let h: i64 = (0..=i)
                .map(|j| {
                    let s = if (i - j) % 2 == 0 { 1 } else { -1 };
                    s * binomial(d as i64 - j, i - j) * f[j as usize]
                })
                .sum();
            u64::try_from(h).expect("h-vector of a complete simplicial fan is nonnegative")
        })
        .collect()
}

pub fn sector_betti(p: &Polytope, s: &Sector) -> Vec<u64> {
    let faces = enumerate_faces(p);
    let face = match &s.label {
        SectorLabel::Box(b) => b.support.clone(),
        _ => Face::new(Vec::new()),
    };
    star_betti(p, &faces, &face)
}

/// All box elements of all cones of the fan, keyed by lattice point.
pub fn box_elements(p: &Polytope) -> Result<BTreeMap<LatticePoint, BoxElement>> {
    let mut found = BTreeMap::new();
    for facet in p.facets() {
        let b = p.cone_generators(&facet.vertices);
        for (point, q) in half_open_parallelepiped(&b)? {
            let (support, coefficients): (Vec<usize>, Vec<Rational>) = facet
                .vertices
                .iter()
                .zip(&q)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&v, c)| (v, *c))
                .unzip();
            if support.is_empty() {
                continue;
            }
            found.entry(point.clone()).or_insert(BoxElement {
                point,
                support: Face { vertex_indices: support },
                coefficients,
            });
        }
    }
    Ok(found)
}

pub fn enumerate_sectors(p: &Polytope) -> Result<SectorTable> {
    let n = p.dimension();
    let faces = enumerate_faces(p);
    let boxes = box_elements(p)?;

    let mut sectors = vec![Sector {
        label: SectorLabel::Untwisted,
        age: Rational::zero(),
        dim: n,
        betti: star_betti(p, &faces, &Face::new(Vec::new())),
        inverse: 0,
    }];
    for b in boxes.values() {
        sectors.push(Sector {
            age: b.coefficients.iter().sum(),
            dim: n - b.support.dim(),
            betti: star_betti(p, &faces, &b.support),
            label: SectorLabel::Box(b.clone()),
            inverse: 0,
        });
    }
    sectors.sort_by(|a, b| a.age.cmp(&b.age).then_with(|| point_of(a).cmp(&point_of(b))));

    let index: BTreeMap<LatticePoint, usize> =
        sectors.iter().enumerate().map(|(i, s)| (point_of(s), i)).collect();
    let inverses = sectors
        .iter()
        .map(|s| match &s.label {
            SectorLabel::Box(b) => {
                // v^{-1} = sum (1 - q_i) b_i
                let inv: LatticePoint = (0..n)
                    .map(|i| {
                        let c: Rational = b
                            .support
                            .vertex_indices
                            .iter()
                            .zip(&b.coefficients)
                            .map(|(&v, c)| (Rational::one() - c) * int(p.vertices()[v][i]))
                            .sum();
                        debug_assert!(c.is_integer());
                        c.to_integer()
                    })
                    .collect();
                index.get(&inv).copied().ok_or(Error::InverseNotFound(b.point.clone()))
            }
            _ => Ok(0),
        })
        .collect::<Result<Vec<_>>>()?;
    for (s, inv) in sectors.iter_mut().zip(inverses) {
        s.inverse = inv;
    }
    Ok(SectorTable { n, sectors })
}

fn point_of(s: &Sector) -> LatticePoint {
    match &s.label {
        SectorLabel::Box(b) => b.point.clone(),
        _ => Vec::new(),
    }
}

/// For each facet: `(|det|, 1 + sum over nonempty subfaces of |box|)`.
pub fn facet_box_counts(p: &Polytope) -> Result<Vec<(u64, u64)>> {
    p.facets()
        .iter()
        .map(|f| {
            let k = f.vertices.len();
            let mut count = 1u64;
            for mask in 1u32..(1 << k) {
                let sub: Vec<usize> = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| f.vertices[b]).collect();
                count += enumerate_open_parallelepiped(&p.cone_generators(&sub))?.len() as u64;
            }
            Ok((f.multiplicity as u64, count))
        })
        .collect()
}

/// Dimension of `H^{2 alpha}_orb` for every degree `alpha` that occurs.
pub fn graded_dims(table: &SectorTable) -> BTreeMap<Rational, u64> {
    let mut dims = BTreeMap::new();
    for s in table.iter() {
        for (k, &b) in s.betti.iter().enumerate() {
            if b > 0 {
                *dims.entry(s.age + int(k as i64)).or_insert(0) += b;
            }
        }
    }
    dims
}

/// Labels `F = { j / q_i }` of a weighted projective space, with
/// `S_f = { i : q_i f in Z }` and `d_f = |S_f|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WpsLabelSet {
    pub labels: Vec<Rational>,
    pub d: Vec<usize>,
    /// Index sets into the (sorted) weights.
    pub s: Vec<Vec<usize>>,
}

pub fn wps_label_set(w: &SimplexWeights) -> Result<WpsLabelSet> {
    w.ensure_reduced()?;
    let mut labels: Vec<Rational> = w
        .q()
        .iter()
        .flat_map(|&q| (0..q as i64).map(move |j| Rational::new(j, q as i64)))
        .collect();
    labels.sort();
    labels.dedup();
    let s: Vec<Vec<usize>> = labels
        .iter()
        .map(|f| (0..w.q().len()).filter(|&i| (f * int(w.q()[i] as i64)).is_integer()).collect())
        .collect();
    let d = s.iter().map(Vec::len).collect();
    Ok(WpsLabelSet { labels, d, s })
}

fn label_inverse(f: &Rational) -> Rational {
    fract(&(Rational::one() - f))
}

/// Sector table of a weighted projective space from its weights alone,
/// ordered by label.
pub fn wps_sector_table(w: &SimplexWeights) -> Result<SectorTable> {
    let set = wps_label_set(w)?;
    let mu = int(w.mu() as i64);
    let mut preceding = 0usize;
    let mut sectors = Vec::with_capacity(set.labels.len());
    for (f, &d) in set.labels.iter().zip(&set.d) {
        let age = if f.is_zero() { Rational::zero() } else { int(preceding as i64) - mu * f };
        let inv = label_inverse(f);
        let inverse = set.labels.binary_search(&inv).map_err(|_| Error::LabelNotFound(inv.to_string()))?;
        sectors.push(Sector { label: SectorLabel::Fraction(*f), age, dim: d - 1, betti: vec![1; d], inverse });
        preceding += d;
    }
    Ok(SectorTable { n: w.dimension(), sectors })
}

/// Weighted-projective-space label of each sector of a reduced simplex, in
/// table order. The sector of label `f` is the box element
/// `sum_i frac(-f q_i) v_i`.
pub fn wps_labels(p: &Polytope, table: &SectorTable) -> Result<Vec<Rational>> {
    let qv = vertex_weights(p)?;
    let w = SimplexWeights::new(qv.clone())?;
    let set = wps_label_set(&w)?;
    let mut by_coeffs: BTreeMap<Vec<Rational>, Rational> = BTreeMap::new();
    for f in &set.labels {
        let c: Vec<Rational> = qv.iter().map(|&q| fract(&(-f * int(q as i64)))).collect();
        by_coeffs.insert(c, *f);
    }
    table
        .iter()
        .map(|s| match &s.label {
            SectorLabel::Untwisted => Ok(Rational::zero()),
            SectorLabel::Fraction(f) => Ok(*f),
            SectorLabel::Box(b) => {
                let mut c = vec![Rational::zero(); qv.len()];
                for (&v, x) in b.support.vertex_indices.iter().zip(&b.coefficients) {
                    c[v] = *x;
                }
                by_coeffs.get(&c).copied().ok_or_else(|| Error::LabelNotFound(format!("{:?}", b.point)))
            }
        })
        .collect()
}
