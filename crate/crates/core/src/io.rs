//! Polytope input documents and deterministic output in text, JSON and
//! LaTeX.
//!
//! JSON documents keep a fixed key order; rationals are written as
//! lowest-terms `"num/den"` strings and integers as bare numbers.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::hodge::{hard_lefschetz_check, hodge_numbers, is_hodge_tate, render_diamond, render_diamond_latex, Part};
use crate::invariants::{run_invariants, Check};
use crate::polarization::polarization_report;
use crate::polytope::{validate_polytope, Polytope, PolytopeData, SimplexWeights};
use crate::rational::Rational;
use crate::sectors::SectorLabel;
use crate::spectrum::{block_pairing, jordan_type, spectrum, Spectrum};

/// Input document: either explicit vertices (facets optional for simplices)
/// or the weight-vector shorthand.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct PolytopeFile {
    dimension: Option<usize>,
    vertices: Option<Vec<Vec<i64>>>,
    facets: Option<Vec<Vec<usize>>>,
    weights: Option<Vec<u64>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolytopeSource {
    Weights(Vec<u64>),
    Data(PolytopeData),
}

pub fn parse_polytope_document(text: &str) -> Result<PolytopeSource> {
    let doc: PolytopeFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    match doc {
        PolytopeFile { weights: Some(w), dimension: None, vertices: None, facets: None } => Ok(PolytopeSource::Weights(w)),
        PolytopeFile { weights: None, dimension: Some(dimension), vertices: Some(vertices), facets } => {
            Ok(PolytopeSource::Data(PolytopeData { dimension, vertices, facets }))
        }
        _ => Err(Error::Parse("expected either {weights} or {dimension, vertices[, facets]}".into())),
    }
}

pub fn polytope_from_source(src: PolytopeSource) -> Result<Polytope> {
    match src {
        PolytopeSource::Weights(w) => Polytope::from_weights(&SimplexWeights::new(w)?),
        PolytopeSource::Data(d) => validate_polytope(d),
    }
}

/// Reads and validates a polytope document. Unreadable or malformed files
/// give [`Error::Parse`]; everything else is a validation error.
pub fn load_polytope(path: &Path) -> Result<Polytope> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    polytope_from_source(parse_polytope_document(&text)?)
}

/// Parses `"1,2,2,3"`.
pub fn parse_weights(s: &str) -> Result<SimplexWeights> {
    let q = s
        .split(',')
        .map(|x| x.trim().parse::<u64>().map_err(|e| Error::Parse(format!("weight {x:?}: {e}"))))
        .collect::<Result<Vec<_>>>()?;
    SimplexWeights::new(q)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Sectors,
    Hodge,
    Spectrum,
    Jordan,
    Polarize,
    Check,
}

impl Command {
    pub const ALL: [Command; 6] =
        [Command::Sectors, Command::Hodge, Command::Spectrum, Command::Jordan, Command::Polarize, Command::Check];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Latex,
}

impl Format {
    pub const ALL: [Format; 3] = [Format::Text, Format::Json, Format::Latex];
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorDoc {
    pub labels: Vec<String>,
    #[serde(with = "crate::rational::serde_str_vec")]
    pub ages: Vec<Rational>,
    pub dims: Vec<usize>,
    pub betti: Vec<Vec<u64>>,
    pub inverse: Vec<usize>,
    /// Row indices in increasing age (ties by box point).
    pub age_order: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDoc {
    pub n: usize,
    pub h0: Vec<Vec<u64>>,
    pub hneq0: Vec<Vec<u64>>,
    pub total: Vec<Vec<u64>>,
    pub hodge_tate: bool,
    pub hard_lefschetz: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDoc {
    #[serde(with = "crate::rational::serde_str")]
    pub value: Rational,
    pub size: usize,
    pub multiplicity: u64,
    pub dual: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JordanDoc {
    pub blocks: Vec<BlockDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    pub nu: usize,
    pub dim: u64,
    pub split: BTreeMap<i64, u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HValueDoc {
    pub label: String,
    #[serde(with = "crate::rational::serde_str")]
    pub rational: Rational,
    pub two_pi_exponent: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartDoc {
    pub r: usize,
    pub entries: Vec<EntryDoc>,
    pub h_values: Vec<HValueDoc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolarizeDoc {
    pub parts: Vec<PartDoc>,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckDoc {
    pub checks: Vec<Check>,
    pub pass: bool,
}

fn label_string(a: &Analysis, i: usize) -> String {
    if let Some(labels) = &a.labels {
        return labels[i].to_string();
    }
    match &a.sectors.sectors[i].label {
        SectorLabel::Box(b) => {
            let coords: Vec<String> = b.point.iter().map(i64::to_string).collect();
            format!("({})", coords.join(","))
        }
        SectorLabel::Fraction(f) => f.to_string(),
        SectorLabel::Untwisted => "0".into(),
    }
}

/// Sector table; for weighted projective spaces the rows are ordered by
/// label, otherwise canonically by age.
pub fn sector_doc(a: &Analysis) -> SectorDoc {
    let t = &a.sectors;
    let mut rows: Vec<usize> = (0..t.len()).collect();
    if let Some(labels) = &a.labels {
        rows.sort_by_key(|&i| labels[i]);
    }
    let mut position = vec![0; t.len()];
    for (row, &i) in rows.iter().enumerate() {
        position[i] = row;
    }
    SectorDoc {
        labels: rows.iter().map(|&i| label_string(a, i)).collect(),
        ages: rows.iter().map(|&i| t.sectors[i].age).collect(),
        dims: rows.iter().map(|&i| t.sectors[i].dim).collect(),
        betti: rows.iter().map(|&i| t.sectors[i].betti.clone()).collect(),
        inverse: rows.iter().map(|&i| position[t.sectors[i].inverse]).collect(),
        age_order: (0..t.len()).map(|i| position[i]).collect(),
    }
}

pub fn hodge_doc(a: &Analysis) -> HodgeDoc {
    let h = hodge_numbers(&a.sectors);
    HodgeDoc {
        n: h.n,
        h0: h.h0,
        hneq0: h.hneq0,
        total: h.total,
        hodge_tate: is_hodge_tate(&a.sectors).holds(),
        hard_lefschetz: hard_lefschetz_check(&a.sectors).holds(),
    }
}

pub fn jordan_doc(a: &Analysis) -> Result<JordanDoc> {
    let j = jordan_type(&a.sectors);
    let pairing = block_pairing(&j, &a.sectors)?;
    Ok(JordanDoc {
        blocks: j
            .blocks
            .iter()
            .zip(&pairing.pairs)
            .map(|(b, &(_, dual))| BlockDoc { value: b.value, size: b.size, multiplicity: b.multiplicity, dual })
            .collect(),
    })
}

pub fn polarize_doc(a: &Analysis) -> Result<PolarizeDoc> {
    let rep = polarization_report(&a.sectors, a.weights.as_ref())?;
    Ok(PolarizeDoc {
        parts: rep
            .parts
            .iter()
            .map(|p| PartDoc {
                r: p.primitive.r,
                entries: p
                    .primitive
                    .entries
                    .iter()
                    .map(|e| EntryDoc { nu: e.nu, dim: e.dim, split: e.split.clone() })
                    .collect(),
                h_values: p
                    .h_values
                    .iter()
                    .map(|h| HValueDoc {
                        label: h.label.to_string(),
                        rational: h.value.rational,
                        two_pi_exponent: h.value.two_pi_exponent,
                    })
                    .collect(),
            })
            .collect(),
        certificate: if rep.pass { "pass" } else { "fail" }.into(),
    })
}

pub fn check_doc(a: &Analysis) -> CheckDoc {
    let checks = run_invariants(a);
    let pass = checks.iter().all(|c| c.pass);
    CheckDoc { checks, pass }
}

/// Rendered output and the process exit code it implies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub body: String,
    pub exit_code: i32,
}

fn json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}

fn latex_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.to_string()
    } else if *r.numer() < 0 {
        format!("-\\frac{{{}}}{{{}}}", -r.numer(), r.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

pub fn emit(a: &Analysis, command: Command, format: Format) -> Result<Output> {
    let mut exit_code = 0;
    let body = match command {
        Command::Sectors => {
            let d = sector_doc(a);
            match format {
                Format::Json => json(&d),
                Format::Text => {
                    let mut s = format!("n = {}, sectors = {}, mu = {}\n", a.n(), d.labels.len(), a.sectors.mu());
                    let width = d.labels.iter().map(String::len).max().unwrap_or(1).max(5);
                    let _ = writeln!(s, "{:<width$}  {:>6}  {:>3}  {:<16}  inverse", "label", "age", "dim", "betti");
                    for i in 0..d.labels.len() {
                        let _ = writeln!(
                            s,
                            "{:<width$}  {:>6}  {:>3}  {:<16}  {}",
                            d.labels[i],
                            d.ages[i].to_string(),
                            d.dims[i],
                            join(&d.betti[i], " "),
                            d.labels[d.inverse[i]]
                        );
                    }
                    s
                }
                Format::Latex => {
                    let mut s = String::from("\\begin{array}{c|c|c|c}\n\\ell & i_\\ell & n_\\ell & \\dim H^{2k}(X_\\ell) \\\\\n\\hline\n");
                    for i in 0..d.labels.len() {
                        let label = a.labels.as_ref().map_or_else(|| d.labels[i].clone(), |_| {
                            latex_rational(&crate::rational::parse(&d.labels[i]).expect("label"))
                        });
                        let _ = writeln!(
                            s,
                            "{} & {} & {} & {} \\\\",
                            label,
                            latex_rational(&d.ages[i]),
                            d.dims[i],
                            join(&d.betti[i], ",")
                        );
                    }
                    s.push_str("\\end{array}\n");
                    s
                }
            }
        }
        Command::Hodge => {
            let d = hodge_doc(a);
            let h = hodge_numbers(&a.sectors);
            let yn = |b: bool| if b { "yes" } else { "no" };
            match format {
                Format::Json => json(&d),
                Format::Text => {
                    let mut s = format!(
                        "n = {}, mu = {}\nhodge-tate: {}\nhard lefschetz: {}\n",
                        d.n,
                        h.sum(),
                        yn(d.hodge_tate),
                        yn(d.hard_lefschetz)
                    );
                    for (name, part) in [("total", Part::Total), ("h0", Part::Integral), ("hneq0", Part::Fractional)] {
                        let _ = write!(s, "\n{name}\n{}", render_diamond(&h, part));
                    }
                    s
                }
                Format::Latex => {
                    let mut s = String::new();
                    for (name, part) in [("total", Part::Total), ("h_0", Part::Integral), ("h_{\\neq 0}", Part::Fractional)] {
                        let _ = write!(s, "% {name}\n$$\n{}$$\n", render_diamond_latex(&h, part));
                    }
                    s
                }
            }
        }
        Command::Spectrum => {
            let sp: Spectrum = spectrum(&a.sectors);
            match format {
                Format::Json => json(&sp),
                Format::Text => format!("mu = {}\n{}\n", sp.mu, join(&sp.values, " ")),
                Format::Latex => {
                    let terms: Vec<String> = sp
                        .multiplicities()
                        .iter()
                        .map(|(v, m)| {
                            let z = format!("z^{{{}}}", latex_rational(v));
                            if *m == 1 { z } else { format!("{m}{z}") }
                        })
                        .collect();
                    format!("\\mathrm{{Spec}}(z) = {}\n", terms.join(" + "))
                }
            }
        }
        Command::Jordan => {
            let d = jordan_doc(a)?;
            match format {
                Format::Json => json(&d),
                Format::Text => {
                    let mut s = String::from("value  size  multiplicity  dual\n");
                    for b in &d.blocks {
                        let _ = writeln!(
                            s,
                            "{:>5}  {:>4}  {:>12}  {}",
                            b.value.to_string(),
                            b.size,
                            b.multiplicity,
                            d.blocks[b.dual].value
                        );
                    }
                    s
                }
                Format::Latex => {
                    let mut s = String::from("\\begin{array}{c|c|c|c}\n\\alpha & \\text{size} & \\text{mult.} & \\text{dual} \\\\\n\\hline\n");
                    for b in &d.blocks {
                        let _ = writeln!(
                            s,
                            "{} & {} & {} & {} \\\\",
                            latex_rational(&b.value),
                            b.size,
                            b.multiplicity,
                            latex_rational(&d.blocks[b.dual].value)
                        );
                    }
                    s.push_str("\\end{array}\n");
                    s
                }
            }
        }
        Command::Polarize => {
            let d = polarize_doc(a)?;
            if d.certificate != "pass" {
                exit_code = 1;
            }
            match format {
                Format::Json => json(&d),
                Format::Text => {
                    let mut s = String::new();
                    for (part, name) in d.parts.iter().zip(["integral ages", "fractional ages"]) {
                        let _ = writeln!(s, "{name}: r = {}", part.r);
                        for e in part.entries.iter().filter(|e| e.dim > 0) {
                            let split: Vec<String> = e.split.iter().map(|(p, d)| format!("{p}:{d}")).collect();
                            let _ = writeln!(s, "  P_{{r+{}}}: dim {}  split {{{}}}", e.nu, e.dim, split.join(", "));
                        }
                        for h in &part.h_values {
                            let _ = writeln!(s, "  h({}) = {} * (2pi)^{}", h.label, h.rational, h.two_pi_exponent);
                        }
                    }
                    let _ = writeln!(s, "polarization certificate: {}", d.certificate);
                    s
                }
                Format::Latex => {
                    let mut s = String::from("\\begin{array}{c|c|c}\n\\ell & h_\\nu(a,a) & r \\\\\n\\hline\n");
                    for part in &d.parts {
                        for h in &part.h_values {
                            let _ = writeln!(
                                s,
                                "{} & {}\\,(2\\pi)^{{{}}} & {} \\\\",
                                latex_rational(&crate::rational::parse(&h.label).expect("label")),
                                latex_rational(&h.rational),
                                h.two_pi_exponent,
                                part.r
                            );
                        }
                    }
                    let _ = write!(s, "\\end{{array}}\n% polarization certificate: {}\n", d.certificate);
                    s
                }
            }
        }
        Command::Check => {
            let d = check_doc(a);
            if !d.pass {
                exit_code = 1;
            }
            match format {
                Format::Json => json(&d),
                Format::Text | Format::Latex => {
                    let comment = if format == Format::Latex { "% " } else { "" };
                    let mut s = String::new();
                    for c in &d.checks {
                        let status = if c.pass { "PASS" } else { "FAIL" };
                        let _ = write!(s, "{comment}{status} {}", c.name);
                        if !c.pass {
                            let _ = write!(s, ": {}", c.detail);
                        }
                        s.push('\n');
                    }
                    let _ = writeln!(s, "{comment}{}", if d.pass { "all invariants hold" } else { "invariant failures" });
                    s
                }
            }
        }
    };
    Ok(Output { body, exit_code })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn p12233() -> Analysis {
        Analysis::from_weights(&SimplexWeights::new(vec![1, 2, 2, 3, 3, 3]).unwrap()).unwrap()
    }

    #[test]
    fn parses_documents() {
        let src = parse_polytope_document(r#"{"dimension":2,"vertices":[[1,0],[0,1],[-1,-1]]}"#).unwrap();
        let p = polytope_from_source(src).unwrap();
        assert_eq!(p.facets().len(), 3);

        let src = parse_polytope_document(r#"{"weights":[1,2,2,3,3,3]}"#).unwrap();
        let p = polytope_from_source(src).unwrap();
        assert_eq!(p.vertices().last().unwrap(), &vec![-2, -2, -3, -3, -3]);
        assert_eq!(crate::polytope::simplex_weights(&p).unwrap().q(), &[1, 2, 2, 3, 3, 3]);

        let src = parse_polytope_document(r#"{"dimension":2,"vertices":[[2,0],[1,1],[0,-1]]}"#).unwrap();
        assert!(matches!(polytope_from_source(src), Err(Error::OriginNotInterior(_))));

        assert!(matches!(parse_polytope_document("{\"dimension\":2"), Err(Error::Parse(_))));
        assert!(matches!(parse_polytope_document(r#"{"weights":[1,1],"dimension":1}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_weights("1,x"), Err(Error::Parse(_))));
        assert!(matches!(parse_weights("1,0,2"), Err(Error::NonPositiveWeight)));
    }

    #[test]
    fn sector_doc_is_label_ordered() {
        let d = sector_doc(&p12233());
        assert_eq!(d.labels, vec!["0", "1/3", "1/2", "2/3"]);
        assert_eq!(d.ages, vec![int(0), ratio(4, 3), int(2), ratio(5, 3)]);
        assert_eq!(d.dims, vec![5, 2, 1, 2]);
        assert_eq!(d.inverse, vec![0, 3, 2, 1]);
        assert_eq!(d.age_order, vec![0, 1, 3, 2]);
        let text = emit(&p12233(), Command::Sectors, Format::Json).unwrap().body;
        assert!(text.contains("\"ages\": [\n    \"0\",\n    \"4/3\",\n    \"2\",\n    \"5/3\"\n  ]"));
    }

    #[test]
    fn json_round_trips() {
        let a = Analysis::from_weights(&SimplexWeights::new(vec![1, 2, 3, 4, 7, 11]).unwrap()).unwrap();
        let s = sector_doc(&a);
        assert_eq!(serde_json::from_str::<SectorDoc>(&json(&s)).unwrap(), s);
        let h = hodge_doc(&a);
        assert_eq!(serde_json::from_str::<HodgeDoc>(&json(&h)).unwrap(), h);
        let sp = spectrum(&a.sectors);
        assert_eq!(serde_json::from_str::<Spectrum>(&json(&sp)).unwrap(), sp);
        let j = jordan_doc(&a).unwrap();
        assert_eq!(serde_json::from_str::<JordanDoc>(&json(&j)).unwrap(), j);
        let p = polarize_doc(&a).unwrap();
        assert_eq!(serde_json::from_str::<PolarizeDoc>(&json(&p)).unwrap(), p);
    }

    #[test]
    fn empty_map_is_empty_object() {
        assert_eq!(serde_json::to_string(&BTreeMap::<i64, u64>::new()).unwrap(), "{}");
    }

    #[test]
    fn all_outputs_render() {
        let a = p12233();
        for c in Command::ALL {
            for f in Format::ALL {
                let out = emit(&a, c, f).unwrap();
                assert_eq!(out.exit_code, 0, "{c:?} {f:?}");
                assert!(!out.body.is_empty());
            }
        }
        let hodge = emit(&a, Command::Hodge, Format::Text).unwrap().body;
        assert!(hodge.contains("hodge-tate: yes"));
        let pol = emit(&a, Command::Polarize, Format::Text).unwrap().body;
        assert!(pol.contains("h(1/3) = 196/27 * (2pi)^-2"));
        assert!(pol.ends_with("polarization certificate: pass\n"));
    }
}
