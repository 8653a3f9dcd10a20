//! Cross-checks that must hold on every input. Each check is computed along
//! two routes wherever one exists (geometric enumeration against closed
//! formulas, Hodge numbers against degrees, Jordan chains against the
//! spectrum).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::hodge::{
    filtration_profile, hard_lefschetz_check, hodge_numbers, ht_weight_description, is_hodge_tate,
    wps_hodge_numbers, HodgeTable, Part,
};
use crate::polarization::{polarization_report, primitive_dims, lefschetz_reassembly_holds};
use crate::polytope::{is_reflexive, newton_value, normalized_volume};
use crate::rational::{int, Rational};
use crate::sectors::{facet_box_counts, graded_dims, wps_sector_table, SectorTable};
use crate::spectrum::{block_pairing, dual_value, jordan_type, spectrum};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

fn check(name: &str, pass: bool, detail: impl Into<String>) -> Check {
    Check { name: name.to_string(), pass, detail: if pass { String::new() } else { detail.into() } }
}

fn hodge_symmetries(h: &HodgeTable) -> Result<(), String> {
    let n = h.n;
    for p in 0..=n {
        for q in 0..=n {
            if h.h0[p][q] != h.h0[q][p] || h.hneq0[p][q] != h.hneq0[q][p] {
                return Err(format!("h^{{{p},{q}}} != h^{{{q},{p}}}"));
            }
            if h.h0[n - p][n - q] != h.h0[p][q] {
                return Err(format!("h0 not symmetric under (p,q) -> (n-p,n-q) at ({p},{q})"));
            }
            if p < n && q < n && h.hneq0[n - 1 - p][n - 1 - q] != h.hneq0[p][q] {
                return Err(format!("hneq0 not symmetric under (p,q) -> (n-1-p,n-1-q) at ({p},{q})"));
            }
            if (p == n || q == n) && h.hneq0[p][q] != 0 {
                return Err(format!("hneq0 nonzero at ({p},{q})"));
            }
        }
        if p > 0 && h.h0[0][p] != 0 {
            return Err(format!("h0^{{0,{p}}} != 0"));
        }
    }
    Ok(())
}

fn sector_laws(t: &SectorTable) -> Result<(), String> {
    let n = int(t.n as i64);
    for (i, s) in t.iter().enumerate() {
        let inv = t.inverse_of(i);
        if t.sectors[s.inverse].inverse != i {
            return Err(format!("involution is not involutive at sector {i}"));
        }
        if s.age + inv.age + int(s.dim as i64) != n {
            return Err(format!("age equation fails at sector {i}"));
        }
        if s.betti != inv.betti {
            return Err(format!("Betti numbers of sector {i} and its inverse differ"));
        }
        if s.betti.len() != s.dim + 1 || s.betti[0] != 1 || s.betti.iter().ne(s.betti.iter().rev()) {
            return Err(format!("Betti vector of sector {i} is not palindromic with b_0 = 1"));
        }
        if s.age < int(0) || s.age >= n {
            return Err(format!("age of sector {i} outside [0, n)"));
        }
    }
    let untwisted: Vec<_> = t.iter().enumerate().filter(|(_, s)| s.is_untwisted()).collect();
    match untwisted.as_slice() {
        [(i, s)] if s.inverse == *i && s.age == int(0) && s.dim == t.n => Ok(()),
        _ => Err("expected exactly one self-inverse untwisted sector of age 0 and dimension n".into()),
    }
}

/// Compares sector tables of a weighted projective space keyed by label.
pub fn compare_with_wps_table(a: &Analysis) -> Option<Result<(), String>> {
    let (w, labels) = (a.weights.as_ref()?, a.labels.as_ref()?);
    let closed = match wps_sector_table(w) {
        Ok(t) => t,
        Err(e) => return Some(Err(e.to_string())),
    };
    let key = |t: &SectorTable, labels: &[Rational]| -> BTreeMap<Rational, (Rational, usize, Vec<u64>, Rational)> {
        t.iter()
            .zip(labels)
            .map(|(s, l)| (*l, (s.age, s.dim, s.betti.clone(), labels[s.inverse])))
            .collect()
    };
    let closed_labels: Vec<Rational> = closed
        .iter()
        .map(|s| match s.label {
            crate::sectors::SectorLabel::Fraction(f) => f,
            _ => int(0),
        })
        .collect();
    let geometric = key(&a.sectors, labels);
    let formula = key(&closed, &closed_labels);
    Some(if geometric == formula {
        Ok(())
    } else {
        Err(format!("box enumeration gives {} sectors, closed formula {}", geometric.len(), formula.len()))
    })
}

pub fn run_invariants(a: &Analysis) -> Vec<Check> {
    let t = &a.sectors;
    let p = &a.polytope;
    let n = t.n;
    let volume = normalized_volume(p);
    let mut out = Vec::new();

    out.push(check(
        "newton value is 1 on vertices",
        p.vertices().iter().all(|v| newton_value(p, v) == int(1)),
        "a vertex has Newton value != 1",
    ));
    let boxes = facet_box_counts(p);
    out.push(match boxes {
        Ok(c) => check(
            "per-facet box count equals |det|",
            c.iter().all(|(d, k)| d == k),
            format!("(|det|, count) per facet: {c:?}"),
        ),
        Err(e) => check("per-facet box count equals |det|", false, e.to_string()),
    });
    out.push(check(
        "orbifold cohomology mass equals normalized volume",
        t.mu() == volume,
        format!("sum of Betti numbers {} != volume {}", t.mu(), volume),
    ));
    let laws = sector_laws(t);
    out.push(check("involution, age equation and Betti symmetry", laws.is_ok(), laws.err().unwrap_or_default()));

    let h = hodge_numbers(t);
    out.push(check("sum of Hodge numbers equals mu", h.sum() == volume, format!("{} != {}", h.sum(), volume)));
    let sym = hodge_symmetries(&h);
    out.push(check("Hodge number symmetries", sym.is_ok(), sym.err().unwrap_or_default()));

    let dims = graded_dims(t);
    let rows_ok = (0..=n as i64).all(|pp| {
        let lo = int(n as i64 - 1 - pp);
        let hi = int(n as i64 - pp);
        let window: u64 = dims.iter().filter(|(a, _)| **a > lo && **a <= hi).map(|(_, d)| d).sum();
        h.total[pp as usize].iter().sum::<u64>() == window
    });
    out.push(check("Hodge row sums match degree windows", rows_ok, "sum_q h^{p,q} != dim gr_F^p"));

    let prof = filtration_profile(t);
    let f = &prof.hodge_dims;
    let w_total: u64 = (0..=2 * n as i64).map(|m| prof.weight.gr(m)).sum();
    out.push(check(
        "filtrations are exhaustive and monotone",
        f[0] == volume && f[n + 1] == 0 && f.windows(2).all(|x| x[0] >= x[1]) && w_total == volume,
        format!("F dims {f:?}, sum of gr^W {w_total}"),
    ));

    let ht = is_hodge_tate(t).holds();
    out.push(check(
        "Hodge-Tate iff off-diagonal Hodge numbers vanish",
        ht == h.off_diagonal_vanishes(),
        format!("Hodge-Tate {ht}, off-diagonal vanishing {}", h.off_diagonal_vanishes()),
    ));
    let hl = hard_lefschetz_check(t);
    out.push(check(
        "hard Lefschetz iff Hodge-Tate",
        hl.holds() == ht,
        format!("hard Lefschetz {}, Hodge-Tate {ht}", hl.holds()),
    ));
    out.push(check(
        "Hodge-Tate weight description",
        ht_weight_description(t).all_hold(),
        "weight levels do not match orbifold degrees",
    ));

    let spec = spectrum(t);
    out.push(check(
        "spectrum symmetric and of size mu",
        spec.is_symmetric(n) && spec.mu == volume,
        format!("mu {} vs volume {volume}", spec.mu),
    ));
    let j = jordan_type(t);
    out.push(check(
        "Jordan chains rebuild the spectrum",
        j.mass() == volume && j.spectral_values() == spec.values && j.blocks.iter().all(|b| b.size <= n + 1),
        format!("Jordan mass {}", j.mass()),
    ));
    out.push(match block_pairing(&j, t) {
        Ok(bp) => check(
            "block pairing is a size-preserving involution",
            bp.is_involution()
                && bp.pairs.iter().all(|&(i, d)| {
                    j.blocks[i].size == j.blocks[d].size && dual_value(n, &j.blocks[i]) == j.blocks[d].value
                }),
            "pairing is not an involution",
        ),
        Err(e) => check("block pairing is a size-preserving involution", false, e.to_string()),
    });

    let parts: Vec<Part> = if n >= 1 { vec![Part::Integral, Part::Fractional] } else { vec![Part::Integral] };
    let reassembly = parts.iter().all(|&part| {
        let rep = primitive_dims(t, part);
        lefschetz_reassembly_holds(t, &rep) && rep.entries.iter().all(|e| e.split.values().sum::<u64>() == e.dim)
    });
    out.push(check("Lefschetz reassembly of primitive subspaces", reassembly, "gr^W != sum of primitives"));

    out.push(match polarization_report(t, a.weights.as_ref()) {
        Ok(rep) => check("polarization certificate", rep.pass, "a polarization check failed"),
        Err(e) => check("polarization certificate", false, e.to_string()),
    });

    if let Some(w) = &a.weights {
        out.push(check(
            "simplex volume equals sum of weights",
            volume == w.mu(),
            format!("{volume} != {}", w.mu()),
        ));
        out.push(check(
            "reflexivity criteria agree",
            is_reflexive(p) == w.is_reflexive(),
            "facet levels and weight divisibility disagree",
        ));
        let cmp = compare_with_wps_table(a).unwrap_or(Ok(()));
        out.push(check("box enumeration matches closed formulas", cmp.is_ok(), cmp.err().unwrap_or_default()));
        out.push(match wps_hodge_numbers(w) {
            Ok(h2) => check("Hodge numbers match the label-counting formula", h2 == h, "tables differ"),
            Err(e) => check("Hodge numbers match the label-counting formula", false, e.to_string()),
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{cross_polytope, SimplexWeights};

    #[test]
    fn all_pass_on_examples() {
        for q in [&[1u64, 2, 2, 3, 3, 3][..], &[1, 2, 3, 4, 7, 11], &[1, 5, 12, 12, 30], &[3, 4, 5, 7]] {
            let a = Analysis::from_weights(&SimplexWeights::new(q.to_vec()).unwrap()).unwrap();
            let failed: Vec<_> = run_invariants(&a).into_iter().filter(|c| !c.pass).collect();
            assert!(failed.is_empty(), "{q:?}: {failed:?}");
        }
        for n in 2..=4 {
            let a = Analysis::new(cross_polytope(n).unwrap()).unwrap();
            assert!(run_invariants(&a).iter().all(|c| c.pass));
        }
    }

    #[test]
    fn detects_corrupted_table() {
        let mut a = Analysis::from_weights(&SimplexWeights::new(vec![1, 2, 2, 3, 3, 3]).unwrap()).unwrap();
        a.sectors.sectors[1].age += int(1);
        let failed: Vec<String> = run_invariants(&a).into_iter().filter(|c| !c.pass).map(|c| c.name).collect();
        assert!(failed.iter().any(|n| n.contains("age equation")), "{failed:?}");
        assert!(failed.iter().any(|n| n.contains("closed formulas")), "{failed:?}");
    }
}
