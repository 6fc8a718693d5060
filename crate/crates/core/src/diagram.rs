//! Oriented knot and link diagrams in planar-diagram (PD) form.
//!
//! A PD tuple `X[a, b, c, d]` lists the four edges meeting at a crossing
//! counterclockwise, starting from the incoming under-strand. Edges are the
//! arcs of the underlying 4-valent graph between consecutive crossings.
//!
//! Internally each crossing is stored in an orientation frame that does not
//! depend on which strand is on top: slots 0 and 1 hold the two incoming
//! ends, in counterclockwise order, and slot `k + 2` is where the strand
//! entering at slot `k` leaves. A crossing change only toggles
//! [`Crossing::under_strand`], so quadrant numbering (and with it the face
//! structure) is untouched by crossing changes.

use std::collections::{BTreeMap, HashMap};

use crate::bits::BitVec;
use crate::error::{Error, Result};

pub type EdgeLabel = u32;

/// A port is one end of an edge at a crossing: `(crossing index, frame slot)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub crossing: usize,
    pub slot: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    ports: [EdgeLabel; 4],
    under: u8,
}

impl Crossing {
    /// `ports` in frame order (incoming at 0 and 1); `under` selects the
    /// strand `under -> under + 2` as the under-strand.
    pub fn new(ports: [EdgeLabel; 4], under: u8) -> Self {
        assert!(under < 2, "under strand must be 0 or 1");
        Crossing { ports, under }
    }

    /// Builds a crossing from a PD tuple, given which over slot is incoming.
    pub fn from_pd(tuple: [EdgeLabel; 4], over_in_slot: u8) -> Self {
        match over_in_slot {
            1 => Crossing::new(tuple, 0),
            3 => Crossing::new([tuple[3], tuple[0], tuple[1], tuple[2]], 1),
            _ => panic!("incoming over slot must be 1 or 3"),
        }
    }

    pub fn ports(&self) -> [EdgeLabel; 4] {
        self.ports
    }

    pub fn under_strand(&self) -> u8 {
        self.under
    }

    /// The PD tuple, starting at the incoming under-strand.
    pub fn pd_tuple(&self) -> [EdgeLabel; 4] {
        let p = self.ports;
        if self.under == 0 {
            p
        } else {
            [p[1], p[2], p[3], p[0]]
        }
    }

    /// +1 for a right-handed crossing, -1 for a left-handed one.
    pub fn sign(&self) -> i32 {
        if self.under == 1 {
            1
        } else {
            -1
        }
    }

    pub fn flipped(&self) -> Crossing {
        Crossing {
            ports: self.ports,
            under: 1 - self.under,
        }
    }
}

/// An oriented knot or link diagram.
///
/// `loops` counts split crossingless circles; the single crossingless circle
/// is the diagram with no crossings and `loops == 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PdDiagram {
    crossings: Vec<Crossing>,
    loops: usize,
    topo: Topology,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Topology {
    labels: Vec<EdgeLabel>,
    tail: Vec<Port>,
    head: Vec<Port>,
    component: Vec<usize>,
    edge_components: usize,
}

impl PdDiagram {
    /// The crossingless unknot.
    pub fn unknot() -> Self {
        Self::from_crossings(Vec::new(), 1).expect("circle is valid")
    }

    /// Builds a diagram from PD tuples; orientation is recovered from the
    /// under-strands and, for components that never pass under, from
    /// consecutive edge numbering.
    pub fn from_pd(tuples: &[[EdgeLabel; 4]], loops: usize) -> Result<Self> {
        let crossings = orient(tuples)?;
        Self::from_crossings(crossings, loops)
    }

    /// Builds a diagram from crossings already in frame form.
    pub fn from_crossings(crossings: Vec<Crossing>, loops: usize) -> Result<Self> {
        if crossings.is_empty() && loops == 0 {
            return Err(Error::Empty);
        }
        let topo = Topology::build(&crossings)?;
        Ok(PdDiagram {
            crossings,
            loops,
            topo,
        })
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn edge_count(&self) -> usize {
        self.topo.labels.len()
    }

    /// Edge labels in increasing order; an edge's index is its position here.
    pub fn edge_labels(&self) -> &[EdgeLabel] {
        &self.topo.labels
    }

    pub fn edge_index(&self, label: EdgeLabel) -> Option<usize> {
        self.topo.labels.binary_search(&label).ok()
    }

    /// Where edge `e` (by index) leaves a crossing.
    pub fn tail(&self, e: usize) -> Port {
        self.topo.tail[e]
    }

    /// Where edge `e` (by index) enters a crossing.
    pub fn head(&self, e: usize) -> Port {
        self.topo.head[e]
    }

    pub fn edge_at(&self, port: Port) -> usize {
        let label = self.crossings[port.crossing].ports[port.slot as usize];
        self.edge_index(label).expect("port labels are edges")
    }

    /// The far end of the edge attached at `port`.
    pub fn opposite_end(&self, port: Port) -> Port {
        let e = self.edge_at(port);
        if self.topo.tail[e] == port {
            self.topo.head[e]
        } else {
            self.topo.tail[e]
        }
    }

    /// Edge leaving the crossing after edge `e` along its strand.
    pub fn next_edge(&self, e: usize) -> usize {
        let h = self.topo.head[e];
        self.edge_at(Port {
            crossing: h.crossing,
            slot: h.slot + 2,
        })
    }

    pub fn component_count(&self) -> usize {
        self.topo.edge_components + self.loops
    }

    /// Component label per edge index. Components carrying crossings are
    /// numbered by their smallest edge label; split circles take the labels
    /// after them.
    pub fn components(&self) -> &[usize] {
        &self.topo.component
    }

    pub fn is_knot(&self) -> bool {
        self.component_count() == 1
    }

    /// Whether the crossings form one connected piece with nothing split off.
    pub fn is_connected(&self) -> bool {
        if self.crossings.is_empty() {
            return self.loops == 1;
        }
        if self.loops > 0 {
            return false;
        }
        let n = self.crossings.len();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for slot in 0..4u8 {
                let y = self.opposite_end(Port { crossing: x, slot }).crossing;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn writhe(&self) -> i32 {
        self.crossings.iter().map(Crossing::sign).sum()
    }

    pub fn crossing_change(&self, index: usize) -> Result<PdDiagram> {
        let count = self.crossings.len();
        if index >= count {
            return Err(Error::CrossingOutOfRange { index, count });
        }
        let mut out = self.clone();
        out.crossings[index] = out.crossings[index].flipped();
        Ok(out)
    }

    /// Changes every crossing whose bit is set.
    pub fn with_flips(&self, flips: &BitVec) -> Result<PdDiagram> {
        if flips.len() != self.crossings.len() {
            return Err(Error::DimensionMismatch {
                expected: self.crossings.len(),
                found: flips.len(),
            });
        }
        let mut out = self.clone();
        for i in flips.ones() {
            out.crossings[i] = out.crossings[i].flipped();
        }
        Ok(out)
    }

    pub fn mirror(&self) -> PdDiagram {
        let mut out = self.clone();
        for x in &mut out.crossings {
            *x = x.flipped();
        }
        out
    }

    pub fn pd_tuples(&self) -> Vec<[EdgeLabel; 4]> {
        self.crossings.iter().map(Crossing::pd_tuple).collect()
    }
}

impl Topology {
    fn build(crossings: &[Crossing]) -> Result<Topology> {
        let mut ends: BTreeMap<EdgeLabel, Vec<Port>> = BTreeMap::new();
        for (i, x) in crossings.iter().enumerate() {
            for (slot, &label) in x.ports.iter().enumerate() {
                ends.entry(label).or_default().push(Port {
                    crossing: i,
                    slot: slot as u8,
                });
            }
        }
        let labels: Vec<EdgeLabel> = ends.keys().copied().collect();
        let mut tail = Vec::with_capacity(labels.len());
        let mut head = Vec::with_capacity(labels.len());
        for (&label, ports) in &ends {
            if ports.len() != 2 {
                return Err(Error::EdgePairing {
                    edge: label,
                    count: ports.len(),
                });
            }
            let (inc, out): (Vec<Port>, Vec<Port>) = ports.iter().partition(|p| p.slot < 2);
            if inc.len() != 1 {
                return Err(Error::Orientation {
                    crossing: ports[0].crossing,
                    message: format!(
                        "edge {label} must enter exactly one crossing and leave exactly one"
                    ),
                });
            }
            head.push(inc[0]);
            tail.push(out[0]);
        }

        let index = |label: EdgeLabel| labels.binary_search(&label).expect("known label");
        let mut component = vec![usize::MAX; labels.len()];
        let mut next_label = 0;
        for start in 0..labels.len() {
            if component[start] != usize::MAX {
                continue;
            }
            let mut e = start;
            while component[e] == usize::MAX {
                component[e] = next_label;
                let h = head[e];
                e = index(crossings[h.crossing].ports[h.slot as usize + 2]);
            }
            next_label += 1;
        }
        Ok(Topology {
            labels,
            tail,
            head,
            component,
            edge_components: next_label,
        })
    }
}

/// Recovers the direction of every over-strand from PD tuples.
fn orient(tuples: &[[EdgeLabel; 4]]) -> Result<Vec<Crossing>> {
    let mut ends: HashMap<EdgeLabel, Vec<(usize, usize)>> = HashMap::new();
    for (i, t) in tuples.iter().enumerate() {
        for (s, &label) in t.iter().enumerate() {
            ends.entry(label).or_default().push((i, s));
        }
    }
    let mut sorted: Vec<EdgeLabel> = ends.keys().copied().collect();
    sorted.sort_unstable();
    for &label in &sorted {
        let count = ends[&label].len();
        if count != 2 {
            return Err(Error::EdgePairing { edge: label, count });
        }
    }

    // Walk every strand cycle once. A step enters crossing i at PD slot s and
    // leaves at slot (s + 2) % 4.
    let mut visited = vec![[false; 4]; tuples.len()];
    let mut over_in: Vec<Option<usize>> = vec![None; tuples.len()];
    for &start in &sorted {
        let first = ends[&start][0];
        if visited[first.0][first.1] {
            continue;
        }
        let mut steps: Vec<(usize, usize)> = Vec::new();
        let mut labels: Vec<EdgeLabel> = Vec::new();
        let (mut x, mut s) = first;
        loop {
            visited[x][s] = true;
            let leave = (s + 2) % 4;
            visited[x][leave] = true;
            steps.push((x, s));
            let label = tuples[x][leave];
            labels.push(label);
            let pair = &ends[&label];
            let next = if pair[0] == (x, leave) { pair[1] } else { pair[0] };
            (x, s) = next;
            if (x, s) == first {
                break;
            }
        }

        let forward_hits = steps.iter().filter(|&&(_, s)| s == 0).count();
        let backward_hits = steps.iter().filter(|&&(_, s)| s == 2).count();
        let forward = if forward_hits + backward_hits > 0 {
            if forward_hits > 0 && backward_hits > 0 {
                let bad = steps.iter().find(|&&(_, s)| s == 2).expect("exists").0;
                return Err(Error::Orientation {
                    crossing: bad,
                    message: "under-strands disagree on the direction of their component"
                        .to_string(),
                });
            }
            forward_hits > 0
        } else {
            numbering_direction(&labels)
        };

        for &(x, s) in &steps {
            if s % 2 == 1 {
                over_in[x] = Some(if forward { s } else { (s + 2) % 4 });
            }
        }
    }

    Ok(tuples
        .iter()
        .zip(over_in)
        .map(|(&t, o)| Crossing::from_pd(t, o.expect("every over-strand is walked") as u8))
        .collect())
}

/// Picks the traversal direction that best matches consecutive numbering of
/// the edge labels met (in walk order). Ties keep the walk direction.
fn numbering_direction(labels: &[EdgeLabel]) -> bool {
    let n = labels.len();
    let mut up = 0;
    let mut down = 0;
    for i in 0..n {
        let a = labels[i];
        let b = labels[(i + 1) % n];
        if b == a.wrapping_add(1) {
            up += 1;
        }
        if a == b.wrapping_add(1) {
            down += 1;
        }
    }
    up >= down
}
