//! Primitive subspaces of the weight graded pieces, their Hodge
//! decomposition, and the Hermitian form values certifying a polarization
//! for weighted projective spaces.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hodge::{weight_filtration, Part};
use crate::polytope::SimplexWeights;
use crate::rational::{floor, int, Rational};
use crate::sectors::{wps_sector_table, SectorLabel, SectorTable};

/// `rational * (2 pi)^two_pi_exponent`, kept symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoPiValue {
    #[serde(with = "crate::rational::serde_str")]
    pub rational: Rational,
    pub two_pi_exponent: i64,
}

impl TwoPiValue {
    pub fn is_positive(&self) -> bool {
        self.rational.is_positive()
    }
}

impl fmt::Display for TwoPiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.two_pi_exponent {
            0 => write!(f, "{}", self.rational),
            e => write!(f, "{}*(2pi)^{}", self.rational, e),
        }
    }
}

/// Weight of the polarization on a part: `n` for integral ages, `n - 1`
/// otherwise.
pub fn part_weight(n: usize, part: Part) -> usize {
    match part {
        Part::Fractional => n - 1,
        _ => n,
    }
}

fn in_part(part: Part, integral_age: bool) -> bool {
    match part {
        Part::Total => true,
        Part::Integral => integral_age,
        Part::Fractional => !integral_age,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveEntry {
    pub nu: usize,
    pub dim: u64,
    /// Hodge index `p` to the dimension of `F^p P cap conj(F^{r+nu-p} P)`.
    pub split: BTreeMap<i64, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveReport {
    pub part: Part,
    pub r: usize,
    /// One entry per `nu = 0..=r`.
    pub entries: Vec<PrimitiveEntry>,
}

impl PrimitiveReport {
    pub fn dim(&self, nu: usize) -> u64 {
        self.entries.get(nu).map_or(0, |e| e.dim)
    }
}

/// Primitive classes of sector `l` feeding `P_{r+nu}`: degree `2k` with
/// `2k = n_l - nu`, counted by `b_{2k} - b_{2k-2}`, in Hodge index
/// `r - floor(age) - k`.
fn contributions(table: &SectorTable, part: Part, nu: usize) -> impl Iterator<Item = (i64, u64)> + '_ {
    let r = part_weight(table.n, part) as i64;
    table.iter().filter(move |s| in_part(part, s.has_integral_age())).filter_map(move |s| {
        if s.dim < nu || !(s.dim - nu).is_multiple_of(2) {
            return None;
        }
        let k = (s.dim - nu) / 2;
        let prev = if k == 0 { 0 } else { s.betti[k - 1] };
        let primitive = s.betti[k] - prev;
        (primitive > 0).then(|| (r - floor(&s.age) - k as i64, primitive))
    })
}

pub fn primitive_hodge_split(table: &SectorTable, part: Part, nu: usize) -> BTreeMap<i64, u64> {
    let mut split = BTreeMap::new();
    for (p, d) in contributions(table, part, nu) {
        *split.entry(p).or_insert(0) += d;
    }
    split
}

pub fn primitive_dims(table: &SectorTable, part: Part) -> PrimitiveReport {
    let r = part_weight(table.n, part);
    let entries = (0..=r)
        .map(|nu| {
            let dim = contributions(table, part, nu).map(|(_, d)| d).sum();
            PrimitiveEntry { nu, dim, split: primitive_hodge_split(table, part, nu) }
        })
        .collect();
    PrimitiveReport { part, r, entries }
}

/// `dim gr^W_{r+l} = sum_{i >= 0} dim P_{r+|l|+2i}` for every `l`.
pub fn lefschetz_reassembly_holds(table: &SectorTable, report: &PrimitiveReport) -> bool {
    let wf = weight_filtration(table);
    let r = report.r as i64;
    (0..=2 * r).all(|m| {
        let l = (m - r).unsigned_abs() as usize;
        let rebuilt: u64 = (l..=report.r).step_by(2).map(|nu| report.dim(nu)).sum();
        wf.gr_part(report.part, m) == rebuilt
    })
}

fn checked_pow(base: i64, exp: usize) -> Result<i64> {
    base.checked_pow(exp as u32).ok_or(Error::Overflow)
}

/// `int_{X_l} N^{n_l} = mu^{n_l} / prod_{i in I(l)} q_i` with
/// `I(l) = { i : q_i l in Z }`.
pub fn orbifold_integral(w: &SimplexWeights, label: Rational) -> Result<TwoPiValue> {
    let table = wps_sector_table(w)?;
    if !table.iter().any(|s| s.label == SectorLabel::Fraction(label)) {
        return Err(Error::LabelNotFound(label.to_string()));
    }
    let fixed: Vec<i64> = w
        .q()
        .iter()
        .map(|&q| q as i64)
        .filter(|&q| (label * int(q)).is_integer())
        .collect();
    let dim = fixed.len() - 1;
    let denom = fixed.iter().try_fold(1i64, |acc, &q| acc.checked_mul(q).ok_or(Error::Overflow))?;
    let numer = checked_pow(w.mu() as i64, dim)?;
    Ok(TwoPiValue { rational: Rational::new(numer, denom), two_pi_exponent: 0 })
}

/// `h_nu(a, a)` on the generator of `H^0(X_l)`, with `nu = n_l`.
pub fn h_value(w: &SimplexWeights, label: Rational) -> Result<TwoPiValue> {
    let integral = orbifold_integral(w, label)?;
    let table = wps_sector_table(w)?;
    let s = table
        .iter()
        .find(|s| s.label == SectorLabel::Fraction(label))
        .ok_or_else(|| Error::LabelNotFound(label.to_string()))?;
    let part = if s.has_integral_age() { Part::Integral } else { Part::Fractional };
    let r = part_weight(w.dimension(), part) as i64;
    Ok(TwoPiValue { rational: integral.rational, two_pi_exponent: -(r - s.dim as i64) })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HValue {
    pub label: Rational,
    pub value: TwoPiValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartReport {
    pub primitive: PrimitiveReport,
    pub reassembly: bool,
    pub splits_sum: bool,
    /// Weighted projective spaces: `dim P_{r+nu} = #{ l : n_l = nu }`.
    pub wps_dims: Option<bool>,
    pub h_values: Vec<HValue>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationReport {
    pub parts: Vec<PartReport>,
    pub pass: bool,
}

pub fn polarization_report(table: &SectorTable, weights: Option<&SimplexWeights>) -> Result<PolarizationReport> {
    let wps = match weights {
        Some(w) => Some((w, wps_sector_table(w)?)),
        None => None,
    };
    let mut parts = Vec::new();
    for part in [Part::Integral, Part::Fractional] {
        let primitive = primitive_dims(table, part);
        let reassembly = lefschetz_reassembly_holds(table, &primitive);
        let splits_sum = primitive.entries.iter().all(|e| e.split.values().sum::<u64>() == e.dim);
        let mut h_values = Vec::new();
        let mut wps_dims = None;
        if let Some((w, wt)) = &wps {
            let members: Vec<_> = wt.iter().filter(|s| in_part(part, s.has_integral_age())).collect();
            wps_dims = Some(
                primitive
                    .entries
                    .iter()
                    .all(|e| e.dim == members.iter().filter(|s| s.dim == e.nu).count() as u64),
            );
            for s in members {
                let SectorLabel::Fraction(label) = s.label else { continue };
                h_values.push(HValue { label, value: h_value(w, label)? });
            }
        }
        parts.push(PartReport { primitive, reassembly, splits_sum, wps_dims, h_values });
    }
    let pass = parts.iter().all(|p| {
        p.reassembly
            && p.splits_sum
            && p.wps_dims.unwrap_or(true)
            && p.h_values.iter().all(|h| h.value.is_positive() && !h.value.rational.is_zero())
    });
    Ok(PolarizationReport { parts, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::Polytope;
    use crate::rational::ratio;
    use crate::sectors::enumerate_sectors;

    fn weights(q: &[u64]) -> SimplexWeights {
        SimplexWeights::new(q.to_vec()).unwrap()
    }

    fn table(q: &[u64]) -> SectorTable {
        enumerate_sectors(&Polytope::from_weights(&weights(q)).unwrap()).unwrap()
    }

    #[test]
    fn primitive_dimensions() {
        let t = table(&[1, 2, 2, 3, 3, 3]);
        assert_eq!(primitive_dims(&t, Part::Fractional).dim(2), 2);
        assert_eq!(primitive_dims(&t, Part::Integral).dim(5), 1);
        let pn = table(&[1, 1, 1, 1]);
        let rep = primitive_dims(&pn, Part::Integral);
        assert_eq!(rep.entries.iter().map(|e| e.dim).collect::<Vec<_>>(), vec![0, 0, 0, 1]);
    }

    #[test]
    fn hodge_splits() {
        let t = table(&[1, 2, 2, 3, 3, 3]);
        assert_eq!(primitive_hodge_split(&t, Part::Fractional, 2), BTreeMap::from([(3, 2)]));
        assert_eq!(primitive_hodge_split(&t, Part::Integral, 1), BTreeMap::from([(3, 1)]));
        let pn = table(&[1, 1, 1, 1]);
        assert_eq!(primitive_hodge_split(&pn, Part::Integral, 3), BTreeMap::from([(3, 1)]));
    }

    #[test]
    fn orbifold_integrals() {
        assert_eq!(orbifold_integral(&weights(&[1, 1, 1]), int(0)).unwrap().rational, int(9));
        let w = weights(&[1, 2, 2, 3, 3, 3]);
        assert_eq!(orbifold_integral(&w, ratio(1, 2)).unwrap().rational, ratio(7, 2));
        assert_eq!(orbifold_integral(&w, ratio(1, 3)).unwrap().rational, ratio(196, 27));
        assert!(matches!(orbifold_integral(&w, ratio(1, 5)), Err(Error::LabelNotFound(_))));
    }

    #[test]
    fn h_values() {
        let w = weights(&[1, 2, 2, 3, 3, 3]);
        assert_eq!(h_value(&w, ratio(1, 2)).unwrap(), TwoPiValue { rational: ratio(7, 2), two_pi_exponent: -4 });
        assert_eq!(h_value(&w, ratio(1, 3)).unwrap(), TwoPiValue { rational: ratio(196, 27), two_pi_exponent: -2 });
        assert_eq!(
            h_value(&w, int(0)).unwrap(),
            TwoPiValue { rational: Rational::new(14i64.pow(5), 108), two_pi_exponent: 0 }
        );
        let pn = weights(&[1, 1, 1, 1]);
        assert_eq!(h_value(&pn, int(0)).unwrap(), TwoPiValue { rational: int(64), two_pi_exponent: 0 });
    }

    #[test]
    fn reports_pass() {
        for q in [&[1u64, 2, 2, 3, 3, 3][..], &[1, 2, 3, 4, 7, 11], &[1, 1, 1], &[2, 3, 5]] {
            let w = weights(q);
            let rep = polarization_report(&table(q), Some(&w)).unwrap();
            assert!(rep.pass, "{q:?}");
            assert!(rep.parts.iter().flat_map(|p| &p.h_values).all(|h| h.value.is_positive()));
        }
    }
}
