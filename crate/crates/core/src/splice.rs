//! Orientation-coherent smoothing of one crossing of a knot diagram.
//!
//! In the crossing frame the strands enter at slots 0 and 1 and leave at 2
//! and 3, so the coherent smoothing joins 0 to 3 and 1 to 2. The two arcs
//! open a channel that merges the faces at quadrants 0 and 2.
//!
//! The spliced diagram may fall apart into split pieces (always the case at
//! a nugatory crossing), so its regions are derived from the regions of the
//! original diagram instead of being re-enumerated from crossing data.

use crate::diagram::{Crossing, EdgeLabel, PdDiagram, Port};
use crate::error::{Error, Result};
use crate::faces::{faces, Corner, Face, FaceMap};

/// An arc of the spliced diagram: an edge (by index) or a split circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Arc {
    Edge(usize),
    Loop(usize),
}

#[derive(Clone, Debug)]
pub struct Splice {
    /// The two-component diagram left after smoothing.
    pub diagram: PdDiagram,
    /// Regions of the spliced diagram.
    pub faces: FaceMap,
    /// Region of the spliced diagram containing each face of the original.
    pub correspondence: Vec<usize>,
    /// Index in the spliced diagram of each original crossing.
    pub crossing_map: Vec<Option<usize>>,
    /// The arcs created by the smoothing: `[0 -> 3, 1 -> 2]`.
    pub spliced_arcs: [Arc; 2],
    /// Component of the spliced diagram holding each original edge.
    pub edge_component: Vec<usize>,
    pub crossing: usize,
}

impl Splice {
    /// Regions at the smoothed crossing: `(channel, across the 0->3 arc,
    /// across the 1->2 arc)`.
    pub fn channel_regions(&self, original: &FaceMap) -> (usize, usize, usize) {
        let f = original.around(self.crossing);
        (
            self.correspondence[f[0]],
            self.correspondence[f[3]],
            self.correspondence[f[1]],
        )
    }

    pub fn arc_component(&self, arc: Arc) -> usize {
        match arc {
            Arc::Edge(e) => self.diagram.components()[e],
            Arc::Loop(k) => self.diagram.component_count() - self.diagram.loops() + k,
        }
    }

    pub fn arc_sides(&self, arc: Arc) -> (usize, usize) {
        match arc {
            Arc::Edge(e) => self.faces.edge_sides()[e],
            Arc::Loop(k) => self.faces.loop_sides()[k],
        }
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

pub fn splice(diagram: &PdDiagram, crossing: usize) -> Result<Splice> {
    let map = faces(diagram)?;
    splice_with(diagram, &map, crossing)
}

pub fn splice_with(diagram: &PdDiagram, map: &FaceMap, c: usize) -> Result<Splice> {
    let n = diagram.crossing_count();
    if c >= n {
        return Err(Error::CrossingOutOfRange { index: c, count: n });
    }
    if !diagram.is_knot() {
        return Err(Error::NotAKnot {
            components: diagram.component_count(),
        });
    }
    let at = |slot: u8| diagram.edge_at(Port { crossing: c, slot });
    let ne = diagram.edge_count();

    // Follow an arc from the original edge `e` leaving a surviving crossing;
    // returns the chain and the port where it ends.
    let chain_from = |e: usize| -> (Vec<usize>, Port) {
        let mut chain = vec![e];
        let mut cur = e;
        loop {
            let h = diagram.head(cur);
            if h.crossing != c {
                return (chain, h);
            }
            cur = diagram.edge_at(Port {
                crossing: c,
                slot: 3 - h.slot,
            });
            chain.push(cur);
        }
    };

    // Group original edges into spliced components, ordered by the smallest
    // original label they contain.
    let mut comp_of_edge = vec![usize::MAX; ne];
    let mut component_chains: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut loop_arcs: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<(bool, usize)> = Vec::new();
    for start in 0..ne {
        if comp_of_edge[start] != usize::MAX {
            continue;
        }
        let id = order.len();
        // Walk the whole strand, original edge by original edge.
        let mut edges = Vec::new();
        let mut cur = start;
        loop {
            comp_of_edge[cur] = id;
            edges.push(cur);
            let h = diagram.head(cur);
            let slot = if h.crossing == c { 3 - h.slot } else { h.slot + 2 };
            cur = diagram.edge_at(Port {
                crossing: h.crossing,
                slot,
            });
            if cur == start {
                break;
            }
        }
        let closed_loop = edges.iter().all(|&e| diagram.tail(e).crossing == c);
        if closed_loop {
            order.push((true, loop_arcs.len()));
            loop_arcs.push(edges);
        } else {
            // Begin at the arc holding the smallest original edge: back up to
            // the start of that arc.
            let mut first = start;
            while diagram.tail(first).crossing == c {
                let t = diagram.tail(first);
                first = diagram.edge_at(Port {
                    crossing: c,
                    slot: 3 - t.slot,
                });
            }
            let mut chains = Vec::new();
            let mut e = first;
            loop {
                let (chain, end) = chain_from(e);
                chains.push(chain);
                e = diagram.edge_at(Port {
                    crossing: end.crossing,
                    slot: end.slot + 2,
                });
                if e == first {
                    break;
                }
            }
            order.push((false, component_chains.len()));
            component_chains.push(chains);
        }
    }

    // Fresh labels, consecutive along each component.
    let mut label_of = vec![0 as EdgeLabel; ne];
    let mut next: EdgeLabel = 1;
    for chains in &component_chains {
        for chain in chains {
            for &e in chain {
                label_of[e] = next;
            }
            next += 1;
        }
    }

    let mut crossing_map = vec![None; n];
    let mut kept = Vec::with_capacity(n.saturating_sub(1));
    for (x, cr) in diagram.crossings().iter().enumerate() {
        if x == c {
            continue;
        }
        crossing_map[x] = Some(kept.len());
        let ports = std::array::from_fn(|s| {
            label_of[diagram.edge_at(Port {
                crossing: x,
                slot: s as u8,
            })]
        });
        kept.push(Crossing::new(ports, cr.under_strand()));
    }
    let spliced = PdDiagram::from_crossings(kept, diagram.loops() + loop_arcs.len())?;

    // Regions: original faces with the channel pair merged.
    let around_c = map.around(c);
    let mut regions = Dsu::new(map.len());
    regions.union(around_c[0], around_c[2]);
    let mut root_ids: Vec<usize> = {
        let mut r: Vec<usize> = (0..map.len()).map(|f| regions.find(f)).collect();
        r.sort_unstable();
        r.dedup();
        r
    };
    let new_corner = |x: usize, q: u8| -> Option<Corner> {
        crossing_map[x].map(|nx| Corner {
            crossing: nx,
            quadrant: q,
        })
    };
    let mut region_corners: Vec<(usize, Vec<Corner>)> = root_ids
        .iter()
        .map(|&r| {
            let mut corners: Vec<Corner> = (0..map.len())
                .filter(|&f| regions.find(f) == r)
                .flat_map(|f| map.faces()[f].corners.clone())
                .filter_map(|k| new_corner(k.crossing, k.quadrant))
                .collect();
            corners.sort_unstable();
            (r, corners)
        })
        .collect();
    region_corners.sort_by(|a, b| match (a.1.first(), b.1.first()) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.0.cmp(&b.0),
    });
    root_ids = region_corners.iter().map(|(r, _)| *r).collect();
    let region_of_root = |r: usize| root_ids.iter().position(|&x| x == r).expect("root");
    let correspondence: Vec<usize> = (0..map.len())
        .map(|f| region_of_root(regions.find(f)))
        .collect();

    let mut corner_face = vec![[0usize; 4]; spliced.crossing_count()];
    for (x, nx) in crossing_map.iter().enumerate() {
        if let Some(nx) = *nx {
            let f = map.around(x);
            corner_face[nx] = f.map(|g| correspondence[g]);
        }
    }
    let side = |e: usize| {
        let (l, r) = map.edge_sides()[e];
        (correspondence[l], correspondence[r])
    };
    let mut edge_sides = vec![(0, 0); spliced.edge_count()];
    for e in 0..ne {
        if label_of[e] != 0 {
            edge_sides[spliced.edge_index(label_of[e]).expect("labelled")] = side(e);
        }
    }
    let loop_sides: Vec<(usize, usize)> = loop_arcs.iter().map(|l| side(l[0])).collect();
    let faces_out: Vec<Face> = region_corners
        .into_iter()
        .map(|(_, corners)| Face { corners })
        .collect();
    let faces = FaceMap::assemble(faces_out, corner_face, edge_sides, loop_sides);

    let arc_of = |e: usize| -> Arc {
        match order[comp_of_edge[e]] {
            (true, k) => Arc::Loop(k),
            (false, _) => Arc::Edge(spliced.edge_index(label_of[e]).expect("labelled")),
        }
    };
    let spliced_arcs = [arc_of(at(0)), arc_of(at(1))];

    let first_loop = spliced.component_count() - spliced.loops();
    let edge_component = (0..ne)
        .map(|e| match order[comp_of_edge[e]] {
            (true, k) => first_loop + k,
            (false, _) => {
                spliced.components()[spliced.edge_index(label_of[e]).expect("labelled")]
            }
        })
        .collect();

    Ok(Splice {
        diagram: spliced,
        faces,
        correspondence,
        crossing_map,
        spliced_arcs,
        edge_component,
        crossing: c,
    })
}
