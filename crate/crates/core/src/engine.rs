//! The incidence algebra of regions against crossings, and the constructive
//! realization of a single crossing change by region crossing changes.
//!
//! A region set `x` acts on a diagram through the flip vector `M * x`, where
//! `M` is the crossings-by-regions incidence matrix over GF(2).

use std::collections::VecDeque;

use crate::bits::BitVec;
use crate::coloring::{checkerboard_coloring, sub_checkerboard_coloring, Color, Coloring};
use crate::diagram::{PdDiagram, Port};
use crate::error::{Error, Result};
use crate::faces::{faces, reducible_crossings, FaceMap, RegionSet};
use crate::gf2::Gf2Matrix;
use crate::splice::{splice_with, Splice};

/// How often a region crossing change at `R` changes a crossing that has
/// several corners in `R`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum RegionRule {
    /// Once per corner, mod 2: a crossing met twice by `R` is left alone.
    #[default]
    Parity,
    /// Once if the crossing lies on the boundary of `R` at all.
    Boundary,
}

/// Incidence matrix under the parity rule.
pub fn incidence_matrix(map: &FaceMap) -> Gf2Matrix {
    incidence_matrix_with(map, RegionRule::Parity)
}

pub fn incidence_matrix_with(map: &FaceMap, rule: RegionRule) -> Gf2Matrix {
    let mut m = Gf2Matrix::zeros(map.crossing_count(), map.len());
    for x in 0..map.crossing_count() {
        for f in map.around(x) {
            match rule {
                RegionRule::Parity => {
                    let cur = m.get(x, f);
                    m.set(x, f, !cur);
                }
                RegionRule::Boundary => m.set(x, f, true),
            }
        }
    }
    m
}

/// A diagram together with its regions and incidence matrix.
#[derive(Clone, Debug)]
pub struct RccSystem {
    pub diagram: PdDiagram,
    pub faces: FaceMap,
    pub matrix: Gf2Matrix,
    pub rule: RegionRule,
}

impl RccSystem {
    pub fn new(diagram: PdDiagram) -> Result<Self> {
        Self::with_rule(diagram, RegionRule::Parity)
    }

    pub fn with_rule(diagram: PdDiagram, rule: RegionRule) -> Result<Self> {
        let faces = faces(&diagram)?;
        let matrix = incidence_matrix_with(&faces, rule);
        Ok(RccSystem {
            diagram,
            faces,
            matrix,
            rule,
        })
    }

    pub fn crossing_count(&self) -> usize {
        self.diagram.crossing_count()
    }

    pub fn flips(&self, regions: &RegionSet) -> Result<BitVec> {
        if !regions.belongs_to(&self.faces) {
            return Err(Error::ForeignRegionSet);
        }
        self.matrix.mul(regions.bits())
    }

    pub fn apply(&self, regions: &RegionSet) -> Result<PdDiagram> {
        let flips = self.flips(regions)?;
        self.diagram.with_flips(&flips)
    }

    pub fn unit_target(&self, crossing: usize) -> Result<BitVec> {
        let count = self.crossing_count();
        if crossing >= count {
            return Err(Error::CrossingOutOfRange {
                index: crossing,
                count,
            });
        }
        Ok(BitVec::unit(count, crossing))
    }

    pub fn solve_flip(&self, target: &BitVec) -> Result<Option<RegionSet>> {
        Ok(self
            .matrix
            .solve(target)?
            .map(|x| self.faces.region_set_from_bits(x)))
    }

    pub fn nullspace(&self) -> Vec<RegionSet> {
        self.matrix
            .nullspace()
            .into_iter()
            .map(|v| self.faces.region_set_from_bits(v))
            .collect()
    }

    pub fn min_weight_solution(&self, target: &BitVec) -> Result<Option<(RegionSet, usize)>> {
        Ok(self
            .matrix
            .min_weight_solution(target)?
            .map(|(x, w)| (self.faces.region_set_from_bits(x), w)))
    }

    /// Whether `regions` lies in `particular + nullspace`.
    pub fn same_coset(&self, regions: &RegionSet, particular: &RegionSet) -> Result<bool> {
        let diff = regions.symmetric_difference(particular)?;
        Ok(self.matrix.mul(diff.bits())?.is_zero())
    }
}

pub fn solve_flip(system: &RccSystem, target: &BitVec) -> Result<Option<RegionSet>> {
    system.solve_flip(target)
}

pub fn nullspace(system: &RccSystem) -> Vec<RegionSet> {
    system.nullspace()
}

pub fn min_weight_solution(
    system: &RccSystem,
    target: &BitVec,
) -> Result<Option<(RegionSet, usize)>> {
    system.min_weight_solution(target)
}

/// Which recoloring a reducible part received.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Recoloring {
    /// Outer region black, opposite region white: the part turned black.
    AllBlack,
    /// Outer and opposite regions black: the part was re-checkered with its
    /// outside black.
    Checkered,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoloredPart {
    /// Reducible crossing of the original diagram.
    pub crossing: usize,
    pub kind: Recoloring,
    /// Original faces inside the part.
    pub regions: Vec<usize>,
}

/// The region set produced by the splice-and-color construction, with the
/// intermediate data that produced it.
#[derive(Clone, Debug)]
pub struct Construction {
    pub crossing: usize,
    pub regions: RegionSet,
    pub splice: Splice,
    /// Spliced component whose arcs switch colors.
    pub colored_component: usize,
    /// Final coloring of the original faces.
    pub coloring: Coloring,
    pub recolored: Vec<RecoloredPart>,
    /// Whether the coloring had to start from the opposite anchor color.
    pub inverted: bool,
}

/// Region set changing exactly crossing `crossing`, under the parity rule.
pub fn region_set_for_crossing(diagram: &PdDiagram, crossing: usize) -> Result<RegionSet> {
    let system = RccSystem::new(diagram.clone())?;
    Ok(construct(&system, crossing)?.regions)
}

/// Runs the construction for one crossing and checks the result against
/// the system's incidence matrix.
///
/// 1. Smooth the crossing coherently; the knot falls into two components.
/// 2. Color the spliced regions so colors change only across the component
///    holding the lowest-numbered original edge (the region matching face 0
///    is white), and pull the colors back to the original faces. Under
///    [`RegionRule::Boundary`], the part hanging off each other reducible
///    crossing, on the side away from the smoothed one, is then recolored,
///    outermost first. Under the parity rule a region met twice at a
///    crossing already cancels itself, so no recoloring is needed.
/// 3. The black faces form the region set.
pub fn construct(system: &RccSystem, crossing: usize) -> Result<Construction> {
    let diagram = &system.diagram;
    let target = system.unit_target(crossing)?;
    let splice = splice_with(diagram, &system.faces, crossing)?;
    let colored_component = splice.edge_component[0];
    let anchor = splice.correspondence[0];
    let spliced = sub_checkerboard_coloring(&splice.diagram, &splice.faces, colored_component, anchor)?;
    let base = Coloring::new(
        splice
            .correspondence
            .iter()
            .map(|&r| spliced.color(r))
            .collect(),
    );
    let parts = match system.rule {
        RegionRule::Parity => Vec::new(),
        RegionRule::Boundary => reducible_parts(diagram, &system.faces, crossing),
    };

    let mut failure = String::new();
    for inverted in [false, true] {
        if inverted && system.rule == RegionRule::Parity {
            break;
        }
        let mut coloring = if inverted { base.inverted() } else { base.clone() };
        let recolored = recolor(diagram, &system.faces, &parts, &mut coloring)?;
        let regions = system.faces.region_set(coloring.black_faces())?;
        let flips = system.flips(&regions)?;
        if flips == target {
            return Ok(Construction {
                crossing,
                regions,
                splice,
                colored_component,
                coloring,
                recolored,
                inverted,
            });
        }
        failure = format!(
            "region set {:?} changes crossings {:?}",
            regions.indices(),
            flips.ones().collect::<Vec<_>>()
        );
    }
    Err(Error::Verification {
        crossing,
        message: failure,
    })
}

struct Part {
    crossing: usize,
    outer: usize,
    opposite: usize,
    inner: usize,
    regions: Vec<usize>,
}

/// Crossings joined to the edge at `start` without passing through `cut`.
fn side_crossings(diagram: &PdDiagram, cut: usize, start: usize) -> Vec<bool> {
    let mut seen = vec![false; diagram.crossing_count()];
    let mut seen_edge = vec![false; diagram.edge_count()];
    seen_edge[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(e) = queue.pop_front() {
        for end in [diagram.tail(e), diagram.head(e)] {
            let x = end.crossing;
            if x == cut || seen[x] {
                continue;
            }
            seen[x] = true;
            for slot in 0..4 {
                let f = diagram.edge_at(Port { crossing: x, slot });
                if !seen_edge[f] {
                    seen_edge[f] = true;
                    queue.push_back(f);
                }
            }
        }
    }
    seen
}

/// The part hanging off every reducible crossing other than `smoothed`, on
/// the side that does not hold `smoothed`. A part's faces are the inner
/// face at its crossing and every face other than the outer one whose
/// corners all lie inside the part.
fn reducible_parts(diagram: &PdDiagram, map: &FaceMap, smoothed: usize) -> Vec<Part> {
    let mut parts = Vec::new();
    for x in reducible_crossings(map) {
        if x == smoothed {
            continue;
        }
        let f = map.around(x);
        let (outer, sides) = if f[0] == f[2] { (f[0], [1, 3]) } else { (f[1], [2, 0]) };
        for (k, &q) in sides.iter().enumerate() {
            // Slot q borders quadrant q, so its edge runs into that side.
            let e = diagram.edge_at(Port {
                crossing: x,
                slot: q as u8,
            });
            let inside = side_crossings(diagram, x, e);
            if inside[smoothed] {
                continue;
            }
            let inner = f[q];
            let mut regions: Vec<usize> = (0..map.len())
                .filter(|&r| {
                    r == inner
                        || (r != outer
                            && map.faces()[r]
                                .corners
                                .iter()
                                .all(|c| c.crossing != x && inside[c.crossing]))
                })
                .collect();
            regions.sort_unstable();
            parts.push(Part {
                crossing: x,
                outer,
                opposite: f[sides[1 - k]],
                inner,
                regions,
            });
            break;
        }
    }
    // Enclosing parts are strictly larger than the parts they contain.
    parts.sort_by(|a, b| {
        b.regions
            .len()
            .cmp(&a.regions.len())
            .then(a.crossing.cmp(&b.crossing))
    });
    parts
}

fn recolor(
    diagram: &PdDiagram,
    map: &FaceMap,
    parts: &[Part],
    coloring: &mut Coloring,
) -> Result<Vec<RecoloredPart>> {
    let mut done = Vec::new();
    for part in parts {
        if coloring.color(part.outer) != Color::Black {
            continue;
        }
        let kind = if coloring.color(part.opposite) == Color::White {
            for &r in &part.regions {
                coloring.set(r, Color::Black);
            }
            Recoloring::AllBlack
        } else {
            // The inner face borders the outer one, so the outside is black.
            let checker = checkerboard_coloring(diagram, map, part.inner)?;
            for &r in &part.regions {
                coloring.set(r, checker.color(r));
            }
            Recoloring::Checkered
        };
        done.push(RecoloredPart {
            crossing: part.crossing,
            kind,
            regions: part.regions.clone(),
        });
    }
    Ok(done)
}

/// Region set changing exactly the crossings listed: the symmetric
/// difference of the single-crossing constructions.
pub fn compose_targets(diagram: &PdDiagram, crossings: &[usize]) -> Result<RegionSet> {
    let system = RccSystem::new(diagram.clone())?;
    compose_in(&system, crossings)
}

pub fn compose_in(system: &RccSystem, crossings: &[usize]) -> Result<RegionSet> {
    let mut acc = system.faces.empty_set();
    for &c in crossings {
        acc = acc.symmetric_difference(&construct(system, c)?.regions)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> PdDiagram {
        PdDiagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0).unwrap()
    }

    fn hopf() -> PdDiagram {
        PdDiagram::from_pd(&[[1, 3, 2, 4], [3, 1, 4, 2]], 0).unwrap()
    }

    #[test]
    fn hopf_matrix_is_all_ones() {
        let sys = RccSystem::new(hopf()).unwrap();
        assert_eq!(sys.matrix.row_count(), 2);
        assert_eq!(sys.matrix.col_count(), 4);
        for i in 0..2 {
            assert_eq!(sys.matrix.row(i).count_ones(), 4);
        }
        assert_eq!(sys.matrix.rank(), 1);
        assert_eq!(sys.nullspace().len(), 3);
        for c in 0..2 {
            assert!(sys.solve_flip(&sys.unit_target(c).unwrap()).unwrap().is_none());
        }
    }

    #[test]
    fn kink_column_vanishes_for_doubled_face() {
        let kink = PdDiagram::from_pd(&[[1, 1, 2, 2]], 0).unwrap();
        let sys = RccSystem::new(kink).unwrap();
        let f = sys.faces.around(0);
        let doubled = if f[0] == f[2] { f[0] } else { f[1] };
        assert!(!sys.matrix.get(0, doubled));
        let boundary = incidence_matrix_with(&sys.faces, RegionRule::Boundary);
        assert!(boundary.get(0, doubled));
    }

    #[test]
    fn trefoil_rank_and_nullspace() {
        let sys = RccSystem::new(trefoil()).unwrap();
        assert_eq!(sys.matrix.rank(), 3);
        let null = sys.nullspace();
        assert_eq!(null.len(), 2);
        for v in &null {
            assert_eq!(sys.apply(v).unwrap(), sys.diagram);
        }
    }

    #[test]
    fn construction_flips_only_its_crossing() {
        let d = trefoil();
        for c in 0..3 {
            let p = region_set_for_crossing(&d, c).unwrap();
            let sys = RccSystem::new(d.clone()).unwrap();
            assert_eq!(sys.apply(&p).unwrap(), d.crossing_change(c).unwrap());
        }
    }

    #[test]
    fn construction_on_kink_under_both_rules() {
        let kink = PdDiagram::from_pd(&[[1, 1, 2, 2]], 0).unwrap();
        for rule in [RegionRule::Parity, RegionRule::Boundary] {
            let sys = RccSystem::with_rule(kink.clone(), rule).unwrap();
            let con = construct(&sys, 0).unwrap();
            assert_eq!(sys.flips(&con.regions).unwrap(), BitVec::unit(1, 0));
        }
    }

    #[test]
    fn compose_empty_and_all() {
        let d = trefoil();
        assert!(compose_targets(&d, &[]).unwrap().is_empty());
        let all = compose_targets(&d, &[0, 1, 2]).unwrap();
        let sys = RccSystem::new(d.clone()).unwrap();
        assert_eq!(sys.apply(&all).unwrap(), d.mirror());
    }
}
