//! Region unknotting numbers by exhaustive search.
//!
//! For a knot diagram `D` with incidence matrix `M`, every flip vector `y`
//! whose flipped diagram is an unknot is reachable by region crossing
//! changes, and the cheapest region set for it is the minimum-weight vector
//! of the coset `M x = y`. `u_R(D)` is the minimum of those weights.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitVec;
use crate::cert::{is_unknot_capped, Caps};
use crate::codes::{BoundRecord, CorpusEntry, ResultRecord};
use crate::diagram::PdDiagram;
use crate::engine::RccSystem;
use crate::error::{Error, Result};
use crate::gf2::bit_string_less;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UrResult {
    pub ur: usize,
    /// Region indices, ascending.
    pub witness: Vec<usize>,
    pub crossings: usize,
    pub regions: usize,
    /// How many of the `2^c` flip vectors give an unknot.
    pub jones_trivial_flips: usize,
    /// `false` when the value is only an upper bound for the knot, because
    /// not every minimal diagram was searched.
    pub exhaustive: bool,
}

pub fn region_unknotting_number_diagram(diagram: &PdDiagram) -> Result<UrResult> {
    region_unknotting_number_diagram_with(diagram, Caps::default())
}

pub fn region_unknotting_number_diagram_with(diagram: &PdDiagram, caps: Caps) -> Result<UrResult> {
    if !diagram.is_knot() {
        return Err(Error::NotAKnot {
            components: diagram.component_count(),
        });
    }
    let c = diagram.crossing_count();
    if c > caps.cert {
        return Err(Error::Cap {
            what: "unknot certification",
            crossings: c,
            cap: caps.cert,
        });
    }
    let system = RccSystem::new(diagram.clone())?;

    // (weight, witness) for every unknotting flip vector; min by weight
    // then bit-string order, which is associative, so the merge does not
    // depend on scheduling.
    type Best = Option<(usize, BitVec)>;
    let better = |a: Best, b: Best| -> Best {
        match (a, b) {
            (None, x) | (x, None) => x,
            (Some(a), Some(b)) => {
                if b.0 < a.0 || (b.0 == a.0 && bit_string_less(&b.1, &a.1)) {
                    Some(b)
                } else {
                    Some(a)
                }
            }
        }
    };
    let (best, count) = (0u64..1 << c)
        .into_par_iter()
        .map(|mask| -> Result<(Best, usize)> {
            let y = BitVec::from_mask(c, mask);
            if !is_unknot_capped(&diagram.with_flips(&y)?, caps)? {
                return Ok((None, 0));
            }
            let (x, w) = system
                .matrix
                .min_weight_solution(&y)?
                .ok_or(Error::NoSolution)?;
            Ok((Some((w, x)), 1))
        })
        .try_reduce(
            || (None, 0),
            |a, b| Ok((better(a.0, b.0), a.1 + b.1)),
        )?;

    let (ur, bits) = best.ok_or_else(|| Error::Verification {
        crossing: 0,
        message: "no flip vector unknots the diagram".to_string(),
    })?;
    let witness = system.faces.region_set_from_bits(bits);
    if !is_unknot_capped(&system.apply(&witness)?, caps)? {
        return Err(Error::Verification {
            crossing: 0,
            message: "witness does not unknot the diagram".to_string(),
        });
    }
    Ok(UrResult {
        ur,
        witness: witness.indices(),
        crossings: c,
        regions: system.faces.len(),
        jones_trivial_flips: count,
        exhaustive: true,
    })
}

/// Minimum over the given minimal-crossing diagrams of one knot. Set
/// `exhaustive` only when the diagrams are all minimal diagrams of the knot.
/// Ties keep the earliest diagram.
pub fn region_unknotting_number_knot(diagrams: &[PdDiagram], exhaustive: bool) -> Result<UrResult> {
    let mut best: Option<UrResult> = None;
    for d in diagrams {
        let r = region_unknotting_number_diagram(d)?;
        if best.as_ref().is_none_or(|b| r.ur < b.ur) {
            best = Some(r);
        }
    }
    let mut best = best.ok_or(Error::Empty)?;
    best.exhaustive = exhaustive;
    Ok(best)
}

/// `u_R(D) <= c/2 + 1` and `u_R(D) <= regions/2`.
pub fn bound_for(result: &UrResult) -> BoundRecord {
    let crossing_bound = result.crossings as f64 / 2.0 + 1.0;
    let region_bound = result.regions as f64 / 2.0;
    let ur = result.ur as f64;
    BoundRecord {
        holds: ur <= crossing_bound && ur <= region_bound,
        ur: result.ur,
        crossing_bound,
        region_bound,
    }
}

pub fn verify_bound(diagram: &PdDiagram) -> Result<BoundRecord> {
    Ok(bound_for(&region_unknotting_number_diagram(diagram)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub name: String,
    pub crossings: usize,
    pub constraint: Option<BTreeSet<usize>>,
    pub result: std::result::Result<UrResult, RowError>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowError {
    pub code: &'static str,
    pub message: String,
}

impl TableRow {
    /// `Some(true)` when the value lies in the constraint set, `None` when
    /// there is no constraint or no value.
    pub fn within_constraint(&self) -> Option<bool> {
        match (&self.constraint, &self.result) {
            (Some(set), Ok(r)) => Some(set.contains(&r.ur)),
            _ => None,
        }
    }

    pub fn record(&self) -> Option<ResultRecord> {
        let r = self.result.as_ref().ok()?;
        Some(ResultRecord {
            name: self.name.clone(),
            ur: r.ur,
            witness_regions: r.witness.clone(),
            bound: bound_for(r),
            jones_trivial_flips: r.jones_trivial_flips,
        })
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub rows: Vec<TableRow>,
}

impl Report {
    /// Rows that failed, violate their constraint, or break a bound.
    pub fn violations(&self) -> Vec<&TableRow> {
        self.rows
            .iter()
            .filter(|r| {
                r.result.is_err()
                    || r.within_constraint() == Some(false)
                    || r.record().is_some_and(|rec| !rec.bound.holds)
            })
            .collect()
    }

    pub fn json_lines(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            match row.record() {
                Some(rec) => out.push_str(&rec.to_json_line()),
                None => {
                    let e = row.result.as_ref().expect_err("row without record failed");
                    out.push_str(
                        &serde_json::json!({"name": row.name, "error": e.code, "message": e.message})
                            .to_string(),
                    );
                }
            }
            out.push('\n');
        }
        out
    }

    pub fn text_table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:<8} {:>2} {:>3} {:<8} {:<5} {:<6} witness",
            "knot", "c", "u_R", "allowed", "check", "bound"
        )
        .unwrap();
        for row in &self.rows {
            let allowed = row.constraint.as_ref().map_or("-".to_string(), |s| {
                format!("{{{}}}", s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(","))
            });
            match &row.result {
                Ok(r) => {
                    let check = match row.within_constraint() {
                        Some(true) => "ok",
                        Some(false) => "FAIL",
                        None => "-",
                    };
                    let bound = if bound_for(r).holds { "ok" } else { "FAIL" };
                    writeln!(
                        out,
                        "{:<8} {:>2} {:>3} {:<8} {:<5} {:<6} {:?}",
                        row.name, row.crossings, r.ur, allowed, check, bound, r.witness
                    )
                    .unwrap();
                }
                Err(e) => {
                    writeln!(
                        out,
                        "{:<8} {:>2} {:>3} {:<8} {:<5} {:<6} {}: {}",
                        row.name, row.crossings, "?", allowed, "ERR", "-", e.code, e.message
                    )
                    .unwrap();
                }
            }
        }
        out
    }
}

/// One row per corpus entry. Row failures are recorded, not raised.
pub fn generate_table(corpus: &[CorpusEntry], caps: Caps) -> Report {
    let rows = corpus
        .par_iter()
        .map(|entry| TableRow {
            name: entry.name.clone(),
            crossings: entry.crossing_number,
            constraint: entry.expected_ur_constraint.clone(),
            result: region_unknotting_number_diagram_with(&entry.diagram, caps).map_err(|e| {
                RowError {
                    code: e.code(),
                    message: e.to_string(),
                }
            }),
        })
        .collect();
    Report { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_corpus;

    fn trefoil() -> PdDiagram {
        PdDiagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0).unwrap()
    }

    #[test]
    fn trefoil_needs_one_region() {
        let r = region_unknotting_number_diagram(&trefoil()).unwrap();
        assert_eq!(r.ur, 1);
        assert_eq!(r.witness.len(), 1);
        assert_eq!((r.crossings, r.regions), (3, 5));
        // One or two changes unknot it; none or all three leave a trefoil.
        assert_eq!(r.jones_trivial_flips, 6);
        let b = bound_for(&r);
        assert!(b.holds);
        assert_eq!(b.crossing_bound, 2.5);
    }

    #[test]
    fn unknots_need_none() {
        for d in [
            PdDiagram::unknot(),
            PdDiagram::from_pd(&[[1, 1, 2, 2]], 0).unwrap(),
            trefoil().crossing_change(0).unwrap(),
        ] {
            let r = region_unknotting_number_diagram(&d).unwrap();
            assert_eq!(r.ur, 0);
            assert!(r.witness.is_empty());
        }
    }

    #[test]
    fn refusals() {
        let hopf = PdDiagram::from_pd(&[[1, 3, 2, 4], [3, 1, 4, 2]], 0).unwrap();
        assert!(matches!(
            region_unknotting_number_diagram(&hopf),
            Err(Error::NotAKnot { components: 2 })
        ));
        let caps = Caps { bracket: 24, cert: 2 };
        assert!(matches!(
            region_unknotting_number_diagram_with(&trefoil(), caps),
            Err(Error::Cap { .. })
        ));
    }

    #[test]
    fn knot_level_minimum_and_flag() {
        let r = region_unknotting_number_knot(&[trefoil(), trefoil().mirror()], false).unwrap();
        assert_eq!(r.ur, 1);
        assert!(!r.exhaustive);
        assert!(matches!(region_unknotting_number_knot(&[], true), Err(Error::Empty)));
    }

    #[test]
    fn table_collects_row_errors() {
        let text = "3_1\tPD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]\t3\t{2}\n\
                    hopf\tPD[X[1,3,2,4],X[3,1,4,2]]\t2\t-\n";
        let corpus = parse_corpus(text).unwrap();
        let report = generate_table(&corpus, Caps::default());
        assert_eq!(report.rows.len(), 2);
        assert_eq!(report.rows[0].within_constraint(), Some(false));
        assert_eq!(report.violations().len(), 2);
        let json = report.json_lines();
        let lines: Vec<&str> = json.lines().collect();
        assert!(lines[0].contains("\"ur\":1"));
        assert!(lines[1].contains("E_DOMAIN"));
        assert!(report.text_table().contains("FAIL"));
        assert!(generate_table(&[], Caps::default()).rows.is_empty());
    }
}
