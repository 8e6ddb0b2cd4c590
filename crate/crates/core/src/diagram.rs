//! The standard pretzel diagram as a planar 4-valent graph.
//!
//! Band `i` is a vertical column of nodes, top to bottom. Every node has four
//! ports in counterclockwise order `NE, NW, SW, SE`. Inside a band the bottom
//! ports of one node meet the top ports of the next; the top-right port of each
//! band meets the top-left port of the band to its right (band `n` wraps around
//! to band 1 over the top), and likewise along the bottom.
//!
//! A node is either a crossing or a fixed smoothing. Fixed smoothings appear in
//! skein-triple diagrams and stand in for a band with zero twists.

use serde::{Deserialize, Serialize};

use crate::pretzel::PretzelParams;

pub const NE: usize = 0;
pub const NW: usize = 1;
pub const SW: usize = 2;
pub const SE: usize = 3;

/// Direction each port points away from the node centre.
const PORT_VEC: [(i64, i64); 4] = [(1, 1), (-1, 1), (-1, -1), (1, -1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Node {
    /// Crossing with the `NE-SW` strand on top. Bands with `a_i > 0` use these.
    Slash,
    /// Crossing with the `NW-SE` strand on top.
    Backslash,
    /// Smoothing joining `NE-NW` and `SW-SE` (cap over cup).
    Cap,
    /// Smoothing joining `NW-SW` and `NE-SE` (two vertical strands).
    Straight,
}

impl Node {
    pub fn is_crossing(self) -> bool {
        matches!(self, Node::Slash | Node::Backslash)
    }

    pub fn flipped(self) -> Node {
        match self {
            Node::Slash => Node::Backslash,
            Node::Backslash => Node::Slash,
            other => other,
        }
    }

    /// The port a strand leaves through after entering at `port`.
    pub fn through(self, port: usize) -> usize {
        match self {
            Node::Slash | Node::Backslash => (port + 2) % 4,
            Node::Cap => [NW, NE, SE, SW][port],
            Node::Straight => [SE, SW, NW, NE][port],
        }
    }

    /// Ports of the over-strand of a crossing.
    fn over_ports(self) -> Option<[usize; 2]> {
        match self {
            Node::Slash => Some([NE, SW]),
            Node::Backslash => Some([NW, SE]),
            _ => None,
        }
    }
}

/// A pretzel-shaped diagram: a cyclic row of bands, each a vertical stack of nodes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Vec<Node>>", into = "Vec<Vec<Node>>")]
pub struct PretzelDiagram {
    bands: Vec<Vec<Node>>,
    offsets: Vec<usize>,
    partner: Vec<usize>,
}

impl From<Vec<Vec<Node>>> for PretzelDiagram {
    fn from(bands: Vec<Vec<Node>>) -> Self {
        PretzelDiagram::from_bands(bands)
    }
}

impl From<PretzelDiagram> for Vec<Vec<Node>> {
    fn from(d: PretzelDiagram) -> Self {
        d.bands
    }
}

impl PretzelDiagram {
    pub fn from_params(p: &PretzelParams) -> Self {
        Self::from_twists(p.as_slice())
    }

    /// Like [`PretzelDiagram::from_params`] but a zero entry yields an untwisted band.
    pub fn from_twists(twists: &[i64]) -> Self {
        let bands = twists
            .iter()
            .map(|&a| match a {
                0 => vec![Node::Straight],
                a if a > 0 => vec![Node::Slash; a as usize],
                a => vec![Node::Backslash; a.unsigned_abs() as usize],
            })
            .collect();
        Self::from_bands(bands)
    }

    pub fn from_bands(bands: Vec<Vec<Node>>) -> Self {
        assert!(!bands.is_empty(), "a pretzel diagram needs a band");
        assert!(bands.iter().all(|b| !b.is_empty()), "bands need at least one node");
        let mut offsets = Vec::with_capacity(bands.len() + 1);
        let mut total = 0;
        for b in &bands {
            offsets.push(total);
            total += b.len();
        }
        offsets.push(total);
        let mut d = PretzelDiagram {
            bands,
            offsets,
            partner: vec![usize::MAX; 4 * total],
        };
        d.connect();
        d
    }

    fn connect(&mut self) {
        let n = self.bands.len();
        let link = |p: &mut Vec<usize>, a: usize, b: usize| {
            p[a] = b;
            p[b] = a;
        };
        let mut partner = std::mem::take(&mut self.partner);
        for i in 0..n {
            let len = self.bands[i].len();
            for j in 0..len - 1 {
                let (top, bottom) = (self.global(i, j), self.global(i, j + 1));
                link(&mut partner, 4 * top + SW, 4 * bottom + NW);
                link(&mut partner, 4 * top + SE, 4 * bottom + NE);
            }
            let next = (i + 1) % n;
            let (first, next_first) = (self.global(i, 0), self.global(next, 0));
            link(&mut partner, 4 * first + NE, 4 * next_first + NW);
            let last = self.global(i, len - 1);
            let next_last = self.global(next, self.bands[next].len() - 1);
            link(&mut partner, 4 * last + SE, 4 * next_last + SW);
        }
        self.partner = partner;
    }

    pub fn bands(&self) -> &[Vec<Node>] {
        &self.bands
    }

    pub fn band_count(&self) -> usize {
        self.bands.len()
    }

    pub fn node_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes().filter(|n| n.is_crossing()).count()
    }

    /// Global index of node `j` of band `i`.
    pub fn global(&self, band: usize, j: usize) -> usize {
        self.offsets[band] + j
    }

    pub fn node(&self, g: usize) -> Node {
        let band = self.band_of(g);
        self.bands[band][g - self.offsets[band]]
    }

    pub fn band_of(&self, g: usize) -> usize {
        self.offsets.partition_point(|&o| o <= g) - 1
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> + '_ {
        self.bands.iter().flatten().copied()
    }

    /// The port on the other end of the edge leaving `port`.
    pub fn partner(&self, port: usize) -> usize {
        self.partner[port]
    }

    pub fn through(&self, port: usize) -> usize {
        4 * (port / 4) + self.node(port / 4).through(port % 4)
    }

    pub fn with_node(&self, g: usize, node: Node) -> Self {
        let mut bands = self.bands.clone();
        let band = self.band_of(g);
        bands[band][g - self.offsets[band]] = node;
        Self::from_bands(bands)
    }

    /// The ports visited by the strand that enters a node at `start`, in order
    /// `enter, leave, enter, leave, ...`.
    pub fn strand_from(&self, start: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut p = start;
        loop {
            let q = self.through(p);
            out.push(p);
            out.push(q);
            p = self.partner(q);
            if p == start {
                return out;
            }
        }
    }

    /// Component index of every port.
    pub fn components(&self) -> (usize, Vec<usize>) {
        let mut comp = vec![usize::MAX; 4 * self.node_count()];
        let mut count = 0;
        for start in 0..comp.len() {
            if comp[start] != usize::MAX {
                continue;
            }
            for p in self.strand_from(start) {
                comp[p] = count;
            }
            count += 1;
        }
        (count, comp)
    }

    /// Planar-diagram code; see [`PdCode`].
    pub fn pd_code(&self, orientation: Option<&Orientation>) -> PdCode {
        let ports = 4 * self.node_count();
        let mut uf = UnionFind::new(ports);
        for p in 0..ports {
            uf.union(p, self.partner(p));
            if !self.node(p / 4).is_crossing() {
                uf.union(p, self.through(p));
            }
        }
        let mut next = 1;
        let mut crossings = Vec::new();
        let mut seen_root = std::collections::HashMap::new();
        let mut arc_of = |p: usize, uf: &mut UnionFind| {
            let root = uf.find(p);
            *seen_root.entry(root).or_insert_with(|| {
                let l = next;
                next += 1;
                l
            })
        };
        for g in 0..self.node_count() {
            let node = self.node(g);
            let Some(over) = node.over_ports() else {
                continue;
            };
            let under = [(over[0] + 1) % 4, (over[1] + 1) % 4];
            let start = match orientation {
                Some(o) if !o.enters(4 * g + under[0]) => under[1],
                _ => under[0],
            };
            let arcs = [0, 1, 2, 3].map(|k| arc_of(4 * g + (start + k) % 4, &mut uf));
            let sign = orientation.map(|o| o.crossing_sign(self, g));
            crossings.push(PdCrossing { arcs, sign });
        }
        let free_loops = {
            let mut roots: Vec<usize> = (0..ports).map(|p| uf.find(p)).collect();
            roots.sort_unstable();
            roots.dedup();
            roots.len() - seen_root.len()
        };
        PdCode {
            crossings,
            free_loops,
        }
    }
}

/// One crossing of a [`PdCode`]: arc labels counterclockwise starting from an
/// under-strand arc (the incoming one when oriented). The A-smoothing joins
/// `arcs[0]` with `arcs[1]` and `arcs[2]` with `arcs[3]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdCrossing {
    pub arcs: [usize; 4],
    pub sign: Option<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PdCode {
    pub crossings: Vec<PdCrossing>,
    /// Closed loops that meet no crossing.
    pub free_loops: usize,
}

impl PdCode {
    pub fn arc_count(&self) -> usize {
        self.crossings
            .iter()
            .flat_map(|c| c.arcs)
            .max()
            .unwrap_or(0)
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra] = rb;
        }
    }
}

/// Orientation of every strand, recorded as whether it enters its node at each port.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orientation {
    enters: Vec<bool>,
}

impl Orientation {
    /// Orients the strand entering band 1 at the top left downward, then every
    /// other component at its first port met sweeping bands left to right, nodes
    /// top to bottom, ports `NW, NE, SW, SE`, entering the node there.
    pub fn standard(d: &PretzelDiagram) -> Self {
        let ports = 4 * d.node_count();
        let mut enters = vec![false; ports];
        let mut done = vec![false; ports];
        for g in 0..d.node_count() {
            for port in [NW, NE, SW, SE] {
                let start = 4 * g + port;
                if done[start] {
                    continue;
                }
                for (k, p) in d.strand_from(start).into_iter().enumerate() {
                    enters[p] = k % 2 == 0;
                    done[p] = true;
                }
            }
        }
        Orientation { enters }
    }

    pub fn enters(&self, port: usize) -> bool {
        self.enters[port]
    }

    /// Reverses every component whose bit is set in `mask`.
    pub fn reversed_components(&self, d: &PretzelDiagram, mask: u64) -> Self {
        let (_, comp) = d.components();
        Orientation {
            enters: self
                .enters
                .iter()
                .zip(&comp)
                .map(|(&e, &c)| if mask >> c & 1 == 1 { !e } else { e })
                .collect(),
        }
    }

    /// Some orientation in which the two strands of every twisted band run in
    /// opposite directions, if one exists.
    pub fn antiparallel(d: &PretzelDiagram) -> Option<Self> {
        let base = Orientation::standard(d);
        let (count, _) = d.components();
        (0..1u64 << (count - 1))
            .map(|mask| base.reversed_components(d, mask))
            .find(|o| {
                d.bands().iter().enumerate().all(|(i, band)| {
                    !band[0].is_crossing()
                        || o.band_relation(d, i) == Some(StrandRelation::Antiparallel)
                })
            })
    }

    /// Sign of crossing `g`: `+1` for right-handed.
    pub fn crossing_sign(&self, d: &PretzelDiagram, g: usize) -> i8 {
        let node = d.node(g);
        let over = node.over_ports().expect("crossing");
        let under = [(over[0] + 1) % 4, (over[1] + 1) % 4];
        let dir = |pair: [usize; 2]| {
            let exit = if self.enters(4 * g + pair[0]) { pair[1] } else { pair[0] };
            PORT_VEC[exit]
        };
        let (o, u) = (dir(over), dir(under));
        let cross = o.0 * u.1 - o.1 * u.0;
        cross.signum() as i8
    }

    pub fn writhe(&self, d: &PretzelDiagram) -> i64 {
        (0..d.node_count())
            .filter(|&g| d.node(g).is_crossing())
            .map(|g| i64::from(self.crossing_sign(d, g)))
            .sum()
    }

    /// Whether the strands through the top node of band `i` run the same way.
    pub fn band_relation(&self, d: &PretzelDiagram, band: usize) -> Option<StrandRelation> {
        let g = d.global(band, 0);
        if !d.node(g).is_crossing() {
            return None;
        }
        Some(if self.enters(4 * g + NE) == self.enters(4 * g + NW) {
            StrandRelation::Parallel
        } else {
            StrandRelation::Antiparallel
        })
    }

    /// The smoothing of crossing `g` that respects this orientation.
    pub fn oriented_smoothing(&self, g: usize) -> Node {
        if self.enters(4 * g + NE) != self.enters(4 * g + NW) {
            Node::Cap
        } else {
            Node::Straight
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StrandRelation {
    Parallel,
    Antiparallel,
}

/// A diagram together with an orientation of its strands.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrientedDiagram {
    pub diagram: PretzelDiagram,
    pub orientation: Orientation,
}

impl OrientedDiagram {
    pub fn standard(p: &PretzelParams) -> Self {
        let diagram = PretzelDiagram::from_params(p);
        let orientation = Orientation::standard(&diagram);
        OrientedDiagram {
            diagram,
            orientation,
        }
    }

    pub fn antiparallel(p: &PretzelParams) -> Option<Self> {
        let diagram = PretzelDiagram::from_params(p);
        let orientation = Orientation::antiparallel(&diagram)?;
        Some(OrientedDiagram {
            diagram,
            orientation,
        })
    }

    pub fn writhe(&self) -> i64 {
        self.orientation.writhe(&self.diagram)
    }

    pub fn component_count(&self) -> usize {
        self.diagram.components().0
    }

    pub fn crossing_sign(&self, g: usize) -> i8 {
        self.orientation.crossing_sign(&self.diagram, g)
    }

    /// Same strands and directions, with crossing `g` switched.
    pub fn change_crossing(&self, g: usize) -> Self {
        OrientedDiagram {
            diagram: self.diagram.with_node(g, self.diagram.node(g).flipped()),
            orientation: self.orientation.clone(),
        }
    }

    /// Crossing `g` replaced by its orientation-respecting smoothing.
    pub fn smooth(&self, g: usize) -> Self {
        OrientedDiagram {
            diagram: self
                .diagram
                .with_node(g, self.orientation.oriented_smoothing(g)),
            orientation: self.orientation.clone(),
        }
    }

    pub fn pd_code(&self) -> PdCode {
        self.diagram.pd_code(Some(&self.orientation))
    }

    pub fn trace(&self) -> DiagramTrace {
        let bands = (0..self.diagram.band_count())
            .map(|i| {
                let g = self.diagram.global(i, 0);
                let node = self.diagram.node(g);
                BandTrace {
                    relation: self.orientation.band_relation(&self.diagram, i),
                    crossing_sign: node.is_crossing().then(|| self.crossing_sign(g)),
                }
            })
            .collect();
        DiagramTrace {
            component_count: self.component_count(),
            writhe: self.writhe(),
            bands,
            orientation_id: "standard".to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandTrace {
    pub relation: Option<StrandRelation>,
    pub crossing_sign: Option<i8>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagramTrace {
    pub component_count: usize,
    pub writhe: i64,
    pub bands: Vec<BandTrace>,
    pub orientation_id: String,
}

/// Components, strand directions and crossing signs of the standard diagram
/// under the standard orientation.
pub fn trace_diagram(p: &PretzelParams) -> DiagramTrace {
    OrientedDiagram::standard(p).trace()
}
