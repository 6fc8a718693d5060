use std::collections::VecDeque;

use crate::bits::BitVec;
use crate::diagram::PdDiagram;
use crate::error::{Error, Result};
use crate::faces::{FaceMap, RegionSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn flip(self) -> Color {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }
}

/// A two-coloring of the regions of a face map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Self {
        Coloring { colors }
    }

    pub fn color(&self, face: usize) -> Color {
        self.colors[face]
    }

    pub fn set(&mut self, face: usize, color: Color) {
        self.colors[face] = color;
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn black_faces(&self) -> Vec<usize> {
        self.faces_of(Color::Black)
    }

    pub fn white_faces(&self) -> Vec<usize> {
        self.faces_of(Color::White)
    }

    fn faces_of(&self, color: Color) -> Vec<usize> {
        (0..self.colors.len())
            .filter(|&f| self.colors[f] == color)
            .collect()
    }

    /// `(b, w)`: number of black and white regions.
    pub fn counts(&self) -> (usize, usize) {
        let b = self.colors.iter().filter(|&&c| c == Color::Black).count();
        (b, self.colors.len() - b)
    }

    pub fn inverted(&self) -> Coloring {
        Coloring {
            colors: self.colors.iter().map(|c| c.flip()).collect(),
        }
    }

    pub fn black_set(&self, map: &FaceMap) -> RegionSet {
        assert_eq!(map.len(), self.colors.len());
        let bits = BitVec::from_indices(map.len(), self.black_faces());
        map.region_set_from_bits(bits)
    }
}

/// Ordinary checkerboard coloring: neighbours across every arc differ.
pub fn checkerboard_coloring(diagram: &PdDiagram, map: &FaceMap, anchor: usize) -> Result<Coloring> {
    propagate(diagram, map, anchor, |_| true)
}

/// Coloring that changes only across arcs of `component`; arcs of every
/// other component are ignored. `anchor` is white.
pub fn sub_checkerboard_coloring(
    diagram: &PdDiagram,
    map: &FaceMap,
    component: usize,
    anchor: usize,
) -> Result<Coloring> {
    if component >= diagram.component_count() {
        return Err(Error::Coloring(format!(
            "no component {component} in a diagram with {}",
            diagram.component_count()
        )));
    }
    propagate(diagram, map, anchor, |k| k == component)
}

fn propagate(
    diagram: &PdDiagram,
    map: &FaceMap,
    anchor: usize,
    flips_across: impl Fn(usize) -> bool,
) -> Result<Coloring> {
    if anchor >= map.len() {
        return Err(Error::FaceOutOfRange {
            index: anchor,
            count: map.len(),
        });
    }
    if map.edge_sides().len() != diagram.edge_count() || map.loop_sides().len() != diagram.loops()
    {
        return Err(Error::Coloring("face map does not match diagram".into()));
    }
    let first_loop = diagram.component_count() - diagram.loops();
    let comps = diagram.components();
    let mut adjacency: Vec<Vec<(usize, bool)>> = vec![Vec::new(); map.len()];
    let arcs = map
        .edge_sides()
        .iter()
        .enumerate()
        .map(|(e, &s)| (s, comps[e]))
        .chain(
            map.loop_sides()
                .iter()
                .enumerate()
                .map(|(k, &s)| (s, first_loop + k)),
        );
    for ((a, b), component) in arcs {
        let f = flips_across(component);
        adjacency[a].push((b, f));
        adjacency[b].push((a, f));
    }

    let mut colors: Vec<Option<Color>> = vec![None; map.len()];
    colors[anchor] = Some(Color::White);
    let mut queue = VecDeque::from([anchor]);
    while let Some(f) = queue.pop_front() {
        let here = colors[f].expect("queued faces are colored");
        for &(g, flip) in &adjacency[f] {
            let want = if flip { here.flip() } else { here };
            match colors[g] {
                None => {
                    colors[g] = Some(want);
                    queue.push_back(g);
                }
                Some(c) if c != want => {
                    return Err(Error::Coloring(format!(
                        "faces {f} and {g} receive conflicting colors"
                    )))
                }
                Some(_) => {}
            }
        }
    }
    let colors = colors
        .into_iter()
        .enumerate()
        .map(|(f, c)| c.ok_or_else(|| Error::Coloring(format!("face {f} is unreachable"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(Coloring { colors })
}
