//! Regions of a diagram and region crossing changes.
//!
//! Quadrant `q` of a crossing is the corner between frame slots `q` and
//! `q + 1`. Faces are found by walking corners: leaving a corner along the
//! edge at slot `q + 1` keeps the face on the right, and the walk arrives in
//! the corner whose quadrant equals the arrival slot.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::diagram::{PdDiagram, Port};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Corner {
    pub crossing: usize,
    pub quadrant: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    /// Boundary corners; in walk order for maps built by [`faces`].
    pub corners: Vec<Corner>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceMap {
    faces: Vec<Face>,
    corner_face: Vec<[usize; 4]>,
    /// `(left, right)` faces of each edge, by edge index.
    edge_sides: Vec<(usize, usize)>,
    /// `(inside, outside)` faces of each split crossingless circle.
    loop_sides: Vec<(usize, usize)>,
    fingerprint: u64,
}

impl FaceMap {
    pub(crate) fn assemble(
        faces: Vec<Face>,
        corner_face: Vec<[usize; 4]>,
        edge_sides: Vec<(usize, usize)>,
        loop_sides: Vec<(usize, usize)>,
    ) -> FaceMap {
        let mut h = DefaultHasher::new();
        corner_face.hash(&mut h);
        faces.len().hash(&mut h);
        edge_sides.hash(&mut h);
        loop_sides.hash(&mut h);
        FaceMap {
            faces,
            corner_face,
            edge_sides,
            loop_sides,
            fingerprint: h.finish(),
        }
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face_of(&self, corner: Corner) -> usize {
        self.corner_face[corner.crossing][corner.quadrant as usize]
    }

    /// Faces at quadrants 0..4 of a crossing.
    pub fn around(&self, crossing: usize) -> [usize; 4] {
        self.corner_face[crossing]
    }

    pub fn crossing_count(&self) -> usize {
        self.corner_face.len()
    }

    pub fn edge_sides(&self) -> &[(usize, usize)] {
        &self.edge_sides
    }

    pub fn loop_sides(&self) -> &[(usize, usize)] {
        &self.loop_sides
    }

    /// Identifies the underlying 4-valent graph; region sets carry it.
    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    /// Regions adjacent across some arc, with multiplicity per arc.
    pub fn neighbours(&self, face: usize) -> Vec<usize> {
        self.edge_sides
            .iter()
            .chain(&self.loop_sides)
            .filter_map(|&(a, b)| {
                if a == face {
                    Some(b)
                } else if b == face {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn region_set<I: IntoIterator<Item = usize>>(&self, faces: I) -> Result<RegionSet> {
        let mut bits = BitVec::zeros(self.len());
        for f in faces {
            if f >= self.len() {
                return Err(Error::FaceOutOfRange {
                    index: f,
                    count: self.len(),
                });
            }
            bits.set(f, true);
        }
        Ok(RegionSet {
            bits,
            map: self.fingerprint,
        })
    }

    pub fn empty_set(&self) -> RegionSet {
        RegionSet {
            bits: BitVec::zeros(self.len()),
            map: self.fingerprint,
        }
    }

    pub fn all_regions(&self) -> RegionSet {
        self.region_set(0..self.len()).expect("in range")
    }

    pub(crate) fn region_set_from_bits(&self, bits: BitVec) -> RegionSet {
        assert_eq!(bits.len(), self.len());
        RegionSet {
            bits,
            map: self.fingerprint,
        }
    }
}

/// A subset of the regions of one particular face map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegionSet {
    bits: BitVec,
    map: u64,
}

impl RegionSet {
    pub fn bits(&self) -> &BitVec {
        &self.bits
    }

    pub fn contains(&self, face: usize) -> bool {
        self.bits.get(face)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_zero()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.bits.ones().collect()
    }

    pub fn belongs_to(&self, map: &FaceMap) -> bool {
        self.map == map.fingerprint && self.bits.len() == map.len()
    }

    pub fn symmetric_difference(&self, other: &RegionSet) -> Result<RegionSet> {
        if self.map != other.map {
            return Err(Error::ForeignRegionSet);
        }
        Ok(RegionSet {
            bits: self.bits.xor(&other.bits),
            map: self.map,
        })
    }

    pub fn difference(&self, other: &RegionSet) -> Result<RegionSet> {
        if self.map != other.map {
            return Err(Error::ForeignRegionSet);
        }
        Ok(RegionSet {
            bits: self.bits.xor(&self.bits.and(&other.bits)),
            map: self.map,
        })
    }
}

/// Enumerates the regions of a connected diagram.
///
/// Faces are ordered by their smallest corner. The crossingless circle has
/// two corner-free faces, inside (0) and outside (1).
pub fn faces(diagram: &PdDiagram) -> Result<FaceMap> {
    let n = diagram.crossing_count();
    if n == 0 {
        if diagram.loops() != 1 {
            return Err(Error::Disconnected);
        }
        return Ok(FaceMap::assemble(
            vec![Face { corners: vec![] }, Face { corners: vec![] }],
            vec![],
            vec![],
            vec![(0, 1)],
        ));
    }
    if !diagram.is_connected() {
        return Err(Error::Disconnected);
    }

    let mut corner_face = vec![[usize::MAX; 4]; n];
    let mut faces = Vec::new();
    for x in 0..n {
        for q in 0..4u8 {
            if corner_face[x][q as usize] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut corners = Vec::new();
            let mut c = Corner {
                crossing: x,
                quadrant: q,
            };
            while corner_face[c.crossing][c.quadrant as usize] == usize::MAX {
                corner_face[c.crossing][c.quadrant as usize] = id;
                corners.push(c);
                let far = diagram.opposite_end(Port {
                    crossing: c.crossing,
                    slot: (c.quadrant + 1) % 4,
                });
                c = Corner {
                    crossing: far.crossing,
                    quadrant: far.slot,
                };
            }
            if c != corners[0] {
                return Err(Error::Euler {
                    faces: faces.len(),
                    crossings: n,
                });
            }
            faces.push(Face { corners });
        }
    }
    if faces.len() != n + 2 {
        return Err(Error::Euler {
            faces: faces.len(),
            crossings: n,
        });
    }

    let edge_sides = (0..diagram.edge_count())
        .map(|e| {
            let t = diagram.tail(e);
            let row = corner_face[t.crossing];
            (row[t.slot as usize], row[(t.slot as usize + 3) % 4])
        })
        .collect();
    Ok(FaceMap::assemble(faces, corner_face, edge_sides, vec![]))
}

fn check_pair(diagram: &PdDiagram, map: &FaceMap, regions: &RegionSet) -> Result<()> {
    if !regions.belongs_to(map) {
        return Err(Error::ForeignRegionSet);
    }
    if map.crossing_count() != diagram.crossing_count() {
        return Err(Error::DimensionMismatch {
            expected: diagram.crossing_count(),
            found: map.crossing_count(),
        });
    }
    Ok(())
}

/// Crossings changed by region crossing changes at `regions`: a crossing
/// changes once per corner it has in the set, counted mod 2.
pub fn flip_vector(diagram: &PdDiagram, map: &FaceMap, regions: &RegionSet) -> Result<BitVec> {
    check_pair(diagram, map, regions)?;
    let mut flips = BitVec::zeros(diagram.crossing_count());
    for x in 0..diagram.crossing_count() {
        let odd = map
            .around(x)
            .iter()
            .filter(|&&f| regions.contains(f))
            .count()
            % 2
            == 1;
        flips.set(x, odd);
    }
    Ok(flips)
}

/// The diagram after region crossing changes at every region of the set.
pub fn apply_region_set(
    diagram: &PdDiagram,
    map: &FaceMap,
    regions: &RegionSet,
) -> Result<PdDiagram> {
    let flips = flip_vector(diagram, map, regions)?;
    diagram.with_flips(&flips)
}

/// Crossings with two opposite quadrants in the same region.
pub fn reducible_crossings(map: &FaceMap) -> Vec<usize> {
    (0..map.crossing_count())
        .filter(|&x| {
            let f = map.around(x);
            f[0] == f[2] || f[1] == f[3]
        })
        .collect()
}
