//! Hodge and weight filtrations on orbifold cohomology, Hodge numbers, and
//! the Hodge-Tate / hard Lefschetz conditions.
//!
//! The cohomology splits into the part coming from sectors of integral age
//! (weight filtration centered at `n`) and the part from sectors of
//! fractional age (centered at `n - 1`). Hodge numbers are tracked
//! separately for the two parts as `h0` and `hneq0`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::polytope::SimplexWeights;
use crate::rational::{floor, fract, int, Rational};
use crate::sectors::{graded_dims, wps_sector_table, SectorTable};

pub type Matrix = Vec<Vec<u64>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeTable {
    pub n: usize,
    pub h0: Matrix,
    pub hneq0: Matrix,
    pub total: Matrix,
}

impl HodgeTable {
    pub fn zero(n: usize) -> Self {
        let z = vec![vec![0; n + 1]; n + 1];
        HodgeTable { n, h0: z.clone(), hneq0: z.clone(), total: z }
    }

    fn finish(mut self) -> Self {
        for p in 0..=self.n {
            for q in 0..=self.n {
                self.total[p][q] = self.h0[p][q] + self.hneq0[p][q];
            }
        }
        self
    }

    pub fn sum(&self) -> u64 {
        self.total.iter().flatten().sum()
    }

    pub fn off_diagonal_vanishes(&self) -> bool {
        (0..=self.n).all(|p| (0..=self.n).all(|q| p == q || self.total[p][q] == 0))
    }

    pub fn diagonal(&self, which: Part) -> Vec<u64> {
        let m = self.matrix(which);
        (0..=self.n).map(|p| m[p][p]).collect()
    }

    pub fn matrix(&self, which: Part) -> &Matrix {
        match which {
            Part::Total => &self.total,
            Part::Integral => &self.h0,
            Part::Fractional => &self.hneq0,
        }
    }
}

/// Which summand of the cohomology (or the whole) a quantity refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    Total,
    /// Sectors of integral age (`h0`).
    Integral,
    /// Sectors of fractional age (`hneq0`).
    Fractional,
}

/// `dim F^p` for `p = 0..=n+1`: `F^{n-p} = sum_{alpha <= p} H^{2 alpha}_orb`.
pub fn hodge_filtration(table: &SectorTable) -> Vec<u64> {
    let n = table.n as i64;
    let dims = graded_dims(table);
    (0..=n + 1)
        .map(|p| dims.range(..=int(n - p)).map(|(_, d)| d).sum())
        .collect()
}

/// Graded pieces of the weight filtration, per part, for `m = 0..=2n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFiltration {
    pub n: usize,
    pub integral_gr: Vec<u64>,
    pub fractional_gr: Vec<u64>,
}

impl WeightFiltration {
    pub fn gr(&self, m: i64) -> u64 {
        self.gr_part(Part::Total, m)
    }

    pub fn gr_part(&self, part: Part, m: i64) -> u64 {
        if m < 0 || m > 2 * self.n as i64 {
            return 0;
        }
        let m = m as usize;
        match part {
            Part::Total => self.integral_gr[m] + self.fractional_gr[m],
            Part::Integral => self.integral_gr[m],
            Part::Fractional => self.fractional_gr[m],
        }
    }

    /// `dim W_m`.
    pub fn w(&self, m: i64) -> u64 {
        (0..=m.min(2 * self.n as i64)).map(|k| self.gr(k)).sum()
    }
}

/// `H^{2j}(X_l)` sits in `gr^W_m` with `m = c + n_l - 2j`, where the center
/// `c` is `n` for integral ages and `n - 1` otherwise.
pub fn weight_filtration(table: &SectorTable) -> WeightFiltration {
    let n = table.n;
    let mut integral_gr = vec![0; 2 * n + 1];
    let mut fractional_gr = vec![0; 2 * n + 1];
    for s in table.iter() {
        let (center, target) = if s.has_integral_age() {
            (n, &mut integral_gr)
        } else {
            (n - 1, &mut fractional_gr)
        };
        for (j, &b) in s.betti.iter().enumerate() {
            target[center + s.dim - 2 * j] += b;
        }
    }
    WeightFiltration { n, integral_gr, fractional_gr }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiltrationProfile {
    /// `dim F^p`, `p = 0..=n+1`.
    pub hodge_dims: Vec<u64>,
    pub weight: WeightFiltration,
}

pub fn filtration_profile(table: &SectorTable) -> FiltrationProfile {
    FiltrationProfile { hodge_dims: hodge_filtration(table), weight: weight_filtration(table) }
}

/// Out-of-range indices are dropped; on a consistent sector table they never
/// occur, and the total then falls short of `mu`.
fn add(m: &mut Matrix, n: usize, p: i64, q: i64, v: u64) {
    let range = 0..=n as i64;
    if v > 0 && range.contains(&p) && range.contains(&q) {
        m[p as usize][q as usize] += v;
    }
}

/// Hodge numbers from ages and Betti numbers of the sectors.
pub fn hodge_numbers(table: &SectorTable) -> HodgeTable {
    let n = table.n;
    let mut t = HodgeTable::zero(n);
    for (i, s) in table.iter().enumerate() {
        let inv = table.inverse_of(i);
        let dim = s.dim as i64;
        let (shift, base, target) = if s.has_integral_age() {
            let (a, b) = (s.age.to_integer(), inv.age.to_integer());
            (a - b, b, &mut t.h0)
        } else {
            let (a, b) = (floor(&s.age), floor(&inv.age));
            (a - b, b, &mut t.hneq0)
        };
        for p in 0..=n as i64 {
            let v = s.betti_at(dim + base - p);
            add(target, n, p, p + shift, v);
        }
    }
    t.finish()
}

/// Counting formula for reduced simplices, which needs only the ages.
pub fn wps_hodge_numbers(w: &SimplexWeights) -> Result<HodgeTable> {
    let table = wps_sector_table(w)?;
    let n = table.n as i64;
    let mut t = HodgeTable::zero(table.n);
    for (i, s) in table.iter().enumerate() {
        let inv = table.inverse_of(i);
        for p in 0..=n {
            if s.has_integral_age() {
                let (a, b) = (s.age.to_integer(), inv.age.to_integer());
                if a <= n - p && b <= p {
                    add(&mut t.h0, table.n, p, p + a - b, 1);
                }
            } else {
                let (a, b) = (floor(&s.age), floor(&inv.age));
                if a <= n - 1 - p && b <= p {
                    add(&mut t.hneq0, table.n, p, p + a - b, 1);
                }
            }
        }
    }
    Ok(t.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HodgeTate {
    Holds,
    /// A sector whose integer part of age differs from its inverse's.
    Fails { sector: usize, inverse: usize },
}

impl HodgeTate {
    pub fn holds(&self) -> bool {
        matches!(self, HodgeTate::Holds)
    }
}

pub fn is_hodge_tate(table: &SectorTable) -> HodgeTate {
    table
        .iter()
        .enumerate()
        .find(|&(i, s)| floor(&s.age) != floor(&table.inverse_of(i).age))
        .map_or(HodgeTate::Holds, |(i, s)| HodgeTate::Fails { sector: i, inverse: s.inverse })
}

/// Rank of `N^j : H^{2 alpha}_orb -> H^{2(alpha + j)}_orb`. On each sector
/// `N` acts by hard Lefschetz, so the rank counts Jordan chains covering
/// both degrees.
pub fn lefschetz_rank(table: &SectorTable, alpha: Rational, j: i64) -> u64 {
    table
        .iter()
        .filter_map(|s| {
            let d = alpha - s.age;
            if !d.is_integer() {
                return None;
            }
            let (i, top) = (d.to_integer(), s.dim as i64);
            (i >= 0 && i + j <= top).then(|| s.betti_at(i.min(top - i - j)))
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LefschetzReport {
    /// `N^{n-2k} : H^{2k} -> H^{2(n-k)}` bijective for all `k <= n/2`.
    pub integral: bool,
    /// `N^{n-1-2k} : H^{2(beta+k)} -> H^{2(beta+n-1-k)}` bijective.
    pub fractional: bool,
    /// Dimension equalities alone (necessary, weaker).
    pub dims_symmetric: bool,
    /// First failing `(alpha, power)`, if any.
    pub failure: Option<(Rational, i64)>,
}

impl LefschetzReport {
    pub fn holds(&self) -> bool {
        self.integral && self.fractional
    }
}

pub fn hard_lefschetz_check(table: &SectorTable) -> LefschetzReport {
    let n = table.n as i64;
    let dims = graded_dims(table);
    let dim = |a: Rational| dims.get(&a).copied().unwrap_or(0);
    let mut report = LefschetzReport { integral: true, fractional: true, dims_symmetric: true, failure: None };

    let check = |alpha: Rational, power: i64, integral: bool, report: &mut LefschetzReport| {
        let (src, dst) = (dim(alpha), dim(alpha + int(power)));
        if src != dst {
            report.dims_symmetric = false;
        }
        if !(src == dst && lefschetz_rank(table, alpha, power) == src) {
            if integral {
                report.integral = false;
            } else {
                report.fractional = false;
            }
            report.failure.get_or_insert((alpha, power));
        }
    };
    for k in 0..=n / 2 {
        check(int(k), n - 2 * k, true, &mut report);
    }
    let betas: BTreeSet<Rational> =
        table.iter().filter(|s| !s.has_integral_age()).map(|s| fract(&s.age)).collect();
    for beta in betas {
        for k in 0..=(n - 1) / 2 {
            check(beta + int(k), n - 1 - 2 * k, false, &mut report);
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightDescription {
    NotApplicable,
    Verified {
        /// `dim W_{2k} = dim W_{2k+1} = sum_{alpha > n-k-1} dim H^{2 alpha}` for all k.
        weight_levels: bool,
        /// When every age is integral: `dim gr^W_{2(n-k)} = dim H^{2k}`.
        graded_matches_degrees: Option<bool>,
    },
}

impl WeightDescription {
    pub fn all_hold(&self) -> bool {
        match self {
            WeightDescription::NotApplicable => true,
            WeightDescription::Verified { weight_levels, graded_matches_degrees } => {
                *weight_levels && graded_matches_degrees.unwrap_or(true)
            }
        }
    }
}

/// Under the Hodge-Tate condition the weight filtration is read off the
/// orbifold degrees.
pub fn ht_weight_description(table: &SectorTable) -> WeightDescription {
    if !is_hodge_tate(table).holds() {
        return WeightDescription::NotApplicable;
    }
    let n = table.n as i64;
    let wf = weight_filtration(table);
    let dims: BTreeMap<Rational, u64> = graded_dims(table);
    let weight_levels = (-1..=n).all(|k| {
        let above: u64 = dims.iter().filter(|(a, _)| **a > int(n - k - 1)).map(|(_, d)| d).sum();
        wf.w(2 * k) == above && wf.w(2 * k + 1) == above
    });
    let graded = table.iter().all(|s| s.has_integral_age()).then(|| {
        (0..=n).all(|k| wf.gr(2 * (n - k)) == dims.get(&int(k)).copied().unwrap_or(0))
    });
    WeightDescription::Verified { weight_levels, graded_matches_degrees: graded }
}

/// Text Hodge diamond: row `r` (top first) lists `h^{p,q}` with `p + q = r`
/// by increasing `p`, on a grid of `2n + 1` columns.
pub fn render_diamond(t: &HodgeTable, which: Part) -> String {
    let n = t.n;
    let m = t.matrix(which);
    let width = m.iter().flatten().map(|v| v.to_string().len()).max().unwrap_or(1);
    let mut out = String::new();
    for r in 0..=2 * n {
        let mut cells = vec![String::new(); 2 * n + 1];
        for p in r.saturating_sub(n)..=r.min(n) {
            let q = r - p;
            cells[n + p - q] = m[p][q].to_string();
        }
        let line: Vec<String> = cells.iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(line.join(" ").trim_end());
        out.push('\n');
    }
    out
}

/// The same diamond as a LaTeX `array`.
pub fn render_diamond_latex(t: &HodgeTable, which: Part) -> String {
    let n = t.n;
    let m = t.matrix(which);
    let mut out = format!("\\begin{{array}}{{{}}}\n", "c".repeat(2 * n + 1));
    for r in 0..=2 * n {
        let mut cells = vec![String::new(); 2 * n + 1];
        for p in r.saturating_sub(n)..=r.min(n) {
            cells[n + p - (r - p)] = m[p][r - p].to_string();
        }
        out.push_str(&cells.join(" & "));
        out.push_str(if r < 2 * n { " \\\\\n" } else { "\n" });
    }
    out.push_str("\\end{array}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cross_polytope, Polytope};
    use crate::rational::ratio;
    use crate::sectors::enumerate_sectors;

    fn table(q: &[u64]) -> SectorTable {
        let w = SimplexWeights::new(q.to_vec()).unwrap();
        enumerate_sectors(&Polytope::from_weights(&w).unwrap()).unwrap()
    }

    fn tokens(row: &str) -> Vec<u64> {
        row.split_whitespace().map(|x| x.parse().unwrap()).collect()
    }

    #[test]
    fn hodge_numbers_1_2_2_3_3_3() {
        let h = hodge_numbers(&table(&[1, 2, 2, 3, 3, 3]));
        assert_eq!(h.diagonal(Part::Total), vec![1, 3, 4, 4, 1, 1]);
        assert_eq!(h.diagonal(Part::Integral), vec![1, 1, 2, 2, 1, 1]);
        assert_eq!(h.diagonal(Part::Fractional), vec![0, 2, 2, 2, 0, 0]);
        assert!(h.off_diagonal_vanishes());
        assert_eq!(h.sum(), 14);
    }

    #[test]
    fn hodge_numbers_1_2_3_4_7_11() {
        let h = hodge_numbers(&table(&[1, 2, 3, 4, 7, 11]));
        let t = &h.total;
        assert_eq!(t[2][2], 12);
        assert_eq!((t[1][3], t[3][1]), (1, 1));
        assert_eq!((t[2][3], t[3][2]), (4, 4));
        assert_eq!(t[3][3], 2);
        for p in [0, 1, 4, 5] {
            assert_eq!(t[p][p], 1);
        }
        assert_eq!(h.sum(), 28);
        assert_eq!((h.h0[2][3], h.h0[3][2]), (4, 4));
        assert_eq!(h.diagonal(Part::Integral), vec![1, 1, 2, 2, 1, 1]);
        assert_eq!(h.hneq0[2][2], 10);
        assert_eq!((h.hneq0[1][3], h.hneq0[3][1]), (1, 1));
    }

    #[test]
    fn hodge_numbers_1_5_12_12_30() {
        let h = hodge_numbers(&table(&[1, 5, 12, 12, 30]));
        let t = &h.total;
        assert_eq!(t[1][1], 6);
        assert_eq!((t[1][2], t[2][1]), (5, 5));
        assert_eq!(t[2][2], 18);
        assert_eq!((t[1][3], t[3][1]), (4, 4));
        assert_eq!(h.sum(), 60);
        for p in 0..=4 {
            for q in 0..=4 {
                assert_eq!(t[p][q], t[q][p]);
                assert_eq!(t[p][q], t[4 - p][4 - q]);
            }
        }
    }

    #[test]
    fn wps_formula_agrees_on_examples() {
        for q in [&[1u64, 2, 2, 3, 3, 3][..], &[1, 2, 3, 4, 7, 11], &[1, 5, 12, 12, 30], &[2, 3, 5]] {
            let w = SimplexWeights::new(q.to_vec()).unwrap();
            assert_eq!(wps_hodge_numbers(&w).unwrap(), hodge_numbers(&table(q)), "{q:?}");
        }
    }

    #[test]
    fn filtrations() {
        let t = table(&[1, 2, 2, 3, 3, 3]);
        let f = hodge_filtration(&t);
        assert_eq!(f[5], 1);
        assert_eq!(f[0], 14);
        assert_eq!(f[6], 0);
        let w = weight_filtration(&t);
        assert_eq!(w.gr(10), 1);
        assert_eq!((0..=10).map(|m| w.gr(m)).sum::<u64>(), 14);

        let pn = table(&[1, 1, 1, 1]);
        assert_eq!(hodge_filtration(&pn), vec![4, 3, 2, 1, 0]);
        let w = weight_filtration(&pn);
        assert_eq!((0..=6).map(|m| w.gr(m)).collect::<Vec<_>>(), vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn hodge_tate_and_lefschetz() {
        let ht = table(&[1, 2, 2, 3, 3, 3]);
        assert!(is_hodge_tate(&ht).holds());
        assert!(hard_lefschetz_check(&ht).holds());

        let bis = table(&[1, 2, 3, 4, 7, 11]);
        let HodgeTate::Fails { sector, inverse } = is_hodge_tate(&bis) else { panic!("expected failure") };
        let (a, b) = (bis.sectors[sector].age, bis.sectors[inverse].age);
        assert_ne!(floor(&a), floor(&b));
        assert!(!hard_lefschetz_check(&bis).holds());
        // label 10/11 (age 17/11) against label 1/11 (age 38/11)
        let i = bis.iter().position(|s| s.age == ratio(17, 11)).unwrap();
        assert_eq!(bis.inverse_of(i).age, ratio(38, 11));

        let pn = table(&[1, 1, 1]);
        assert!(is_hodge_tate(&pn).holds());
        assert!(hard_lefschetz_check(&pn).holds());
    }

    #[test]
    fn weight_description() {
        assert_eq!(
            ht_weight_description(&table(&[1, 2, 2, 3, 3, 3])),
            WeightDescription::Verified { weight_levels: true, graded_matches_degrees: None }
        );
        // integral ages but h^{1,3} = 4, so not Hodge-Tate
        assert_eq!(ht_weight_description(&table(&[1, 5, 12, 12, 30])), WeightDescription::NotApplicable);
        assert_eq!(
            ht_weight_description(&table(&[1, 1, 1, 1])),
            WeightDescription::Verified { weight_levels: true, graded_matches_degrees: Some(true) }
        );
        assert_eq!(ht_weight_description(&table(&[1, 2, 3, 4, 7, 11])), WeightDescription::NotApplicable);
        let c = enumerate_sectors(&cross_polytope(3).unwrap()).unwrap();
        assert!(ht_weight_description(&c).all_hold());
    }

    #[test]
    fn diamonds() {
        let h = hodge_numbers(&table(&[1, 5, 12, 12, 30]));
        let d = render_diamond(&h, Part::Total);
        let rows: Vec<&str> = d.lines().collect();
        assert_eq!(rows.len(), 9);
        assert_eq!(tokens(rows[4]), vec![0, 4, 18, 4, 0]);
        assert_eq!(tokens(rows[2]), vec![0, 6, 0]);
        assert_eq!(tokens(rows[3]), vec![0, 5, 5, 0]);
        for r in 0..9 {
            assert_eq!(rows[r], rows[8 - r]);
        }
        assert_eq!(rows[0].trim(), "1");

        let z = render_diamond(&HodgeTable::zero(2), Part::Total);
        assert!(z.split_whitespace().all(|t| t == "0"));
        assert_eq!(z.lines().count(), 5);

        let h = hodge_numbers(&table(&[1, 2, 2, 3, 3, 3]));
        let d = render_diamond(&h, Part::Fractional);
        let nonzero: Vec<(usize, Vec<u64>)> = d
            .lines()
            .map(tokens)
            .enumerate()
            .filter(|(_, r)| r.iter().any(|&x| x > 0))
            .collect();
        assert_eq!(nonzero.iter().map(|x| x.0).collect::<Vec<_>>(), vec![2, 4, 6]);
        assert!(nonzero.iter().all(|(_, r)| r.iter().sum::<u64>() == 2 && r[r.len() / 2] == 2));

        let latex = render_diamond_latex(&h, Part::Total);
        assert!(latex.starts_with("\\begin{array}{ccccccccccc}"));
        assert_eq!(latex.matches("\\\\").count(), 10);
    }
}
