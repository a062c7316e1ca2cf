//! Discrete d-interval hypergraphs.
//!
//! A ground set is one line (non-separated families) or `d` labelled lines
//! (separated families) of integer points `1..=len`. Every edge is a union of
//! at most `d` pairwise disjoint closed intervals `[lo, hi]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

/// A ground-set point. Ordered line first, then position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Point {
    pub line: usize,
    pub pos: u64,
}

impl Point {
    pub fn new(line: usize, pos: u64) -> Self {
        Point { line, pos }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.pos, self.line)
    }
}

/// Closed discrete interval `[lo, hi]` on one line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Component {
    pub line: usize,
    pub lo: u64,
    pub hi: u64,
}

impl Component {
    pub fn new(line: usize, lo: u64, hi: u64) -> Self {
        Component { line, lo, hi }
    }

    pub fn contains(&self, p: Point) -> bool {
        self.line == p.line && self.lo <= p.pos && p.pos <= self.hi
    }

    pub fn meets(&self, other: &Component) -> bool {
        self.line == other.line && self.lo <= other.hi && other.lo <= self.hi
    }

    /// Number of points, `hi - lo + 1`.
    pub fn len(&self) -> u64 {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        self.hi < self.lo
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (self.lo..=self.hi).map(move |pos| Point::new(self.line, pos))
    }
}

/// A union of disjoint components, kept in `(line, lo)` order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DInterval {
    pub components: Vec<Component>,
}

impl DInterval {
    pub fn new(mut components: Vec<Component>) -> Self {
        components.sort();
        DInterval { components }
    }

    /// Single interval on line 0.
    pub fn interval(lo: u64, hi: u64) -> Self {
        DInterval::new(vec![Component::new(0, lo, hi)])
    }

    /// Union of intervals on line 0.
    pub fn on_line(parts: &[(u64, u64)]) -> Self {
        DInterval::new(parts.iter().map(|&(lo, hi)| Component::new(0, lo, hi)).collect())
    }

    pub fn contains(&self, p: Point) -> bool {
        self.components.iter().any(|c| c.contains(p))
    }

    /// Total number of points.
    pub fn size(&self) -> u64 {
        self.components.iter().map(Component::len).sum()
    }

    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.components.iter().flat_map(Component::points)
    }

    /// Endpoint slots `(component index, point)`: every component contributes
    /// its left and its right endpoint, even when they coincide.
    pub fn endpoints(&self) -> impl Iterator<Item = (usize, Point)> + '_ {
        self.components.iter().enumerate().flat_map(|(i, c)| {
            [(i, Point::new(c.line, c.lo)), (i, Point::new(c.line, c.hi))]
        })
    }
}

/// True iff some component of `a` shares a point with some component of `b`.
pub fn intersects(a: &DInterval, b: &DInterval) -> bool {
    a.components
        .iter()
        .any(|ca| b.components.iter().any(|cb| ca.meets(cb)))
}

/// `sum_{v in h} g(v)`.
pub fn covers_count(h: &DInterval, g: &BTreeMap<Point, u64>) -> u64 {
    h.components
        .iter()
        .map(|c| {
            g.range(Point::new(c.line, c.lo)..=Point::new(c.line, c.hi))
                .map(|(_, v)| *v)
                .sum::<u64>()
        })
        .sum()
}

/// Positive integer weight per edge, aligned with the edge sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightSystem(pub Vec<u64>);

impl WeightSystem {
    pub fn unit(edges: usize) -> Self {
        WeightSystem(vec![1; edges])
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn max(&self) -> u64 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&w| w == 1)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for WeightSystem {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.0[i]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DIntervalFamily {
    pub d: usize,
    pub separated: bool,
    pub line_lengths: Vec<u64>,
    pub edges: Vec<DInterval>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    BadDimension,
    LineLengths,
    EmptyEdge,
    TooManyComponents,
    UnknownLine,
    InvertedComponent,
    OutOfRange,
    ComponentsNotDisjoint,
    SeparatedForm,
    NonSeparatedLine,
    WeightCount,
    ZeroWeight,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ViolationKind::BadDimension => "d must be positive",
            ViolationKind::LineLengths => "line lengths",
            ViolationKind::EmptyEdge => "edge has no components",
            ViolationKind::TooManyComponents => "more than d components",
            ViolationKind::UnknownLine => "unknown line",
            ViolationKind::InvertedComponent => "component has lo > hi",
            ViolationKind::OutOfRange => "component outside its line",
            ViolationKind::ComponentsNotDisjoint => "components not disjoint",
            ViolationKind::SeparatedForm => "separated-form",
            ViolationKind::NonSeparatedLine => "non-separated edge off line 0",
            ViolationKind::WeightCount => "weight count differs from edge count",
            ViolationKind::ZeroWeight => "weight must be positive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Offending edge, when the violation is tied to one.
    pub edge: Option<usize>,
    pub kind: ViolationKind,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.edge {
            Some(e) => write!(f, "edge {e}: {} ({})", self.kind, self.detail),
            None => write!(f, "{} ({})", self.kind, self.detail),
        }
    }
}

impl DIntervalFamily {
    pub fn new(d: usize, separated: bool, line_lengths: Vec<u64>, edges: Vec<DInterval>) -> Self {
        DIntervalFamily { d, separated, line_lengths, edges }
    }

    /// Non-separated family on a single line of `len` points.
    pub fn on_line(d: usize, len: u64, edges: Vec<DInterval>) -> Self {
        DIntervalFamily::new(d, false, vec![len], edges)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn num_lines(&self) -> usize {
        self.line_lengths.len()
    }

    /// Total number of ground-set points over all lines.
    pub fn ground_size(&self) -> u64 {
        self.line_lengths.iter().sum()
    }

    pub fn ground_points(&self) -> impl Iterator<Item = Point> + '_ {
        self.line_lengths
            .iter()
            .enumerate()
            .flat_map(|(line, &len)| (1..=len).map(move |pos| Point::new(line, pos)))
    }

    pub fn intersects(&self, a: usize, b: usize) -> bool {
        intersects(&self.edges[a], &self.edges[b])
    }

    /// Number of edges containing `p`.
    pub fn degree(&self, p: Point) -> usize {
        self.edges.iter().filter(|e| e.contains(p)).count()
    }

    /// Maximum point degree Δ over every line (0 for an empty family).
    pub fn max_degree(&self) -> usize {
        // the degree is maximised at some left endpoint
        self.edges
            .iter()
            .flat_map(|e| e.components.iter().map(|c| Point::new(c.line, c.lo)))
            .map(|p| self.degree(p))
            .max()
            .unwrap_or(0)
    }

    /// Sizes `|e|` used as the length weight system.
    pub fn size_weights(&self) -> WeightSystem {
        WeightSystem(self.edges.iter().map(DInterval::size).collect())
    }

    /// Checks every structural invariant and lists each violation.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut push = |edge: Option<usize>, kind, detail: String| {
            out.push(Violation { edge, kind, detail })
        };
        if self.d == 0 {
            push(None, ViolationKind::BadDimension, "d = 0".into());
        }
        let expected_lines = if self.separated { self.d } else { 1 };
        if self.line_lengths.len() != expected_lines {
            push(
                None,
                ViolationKind::LineLengths,
                format!("expected {expected_lines} line lengths, got {}", self.line_lengths.len()),
            );
        }
        if let Some(i) = self.line_lengths.iter().position(|&l| l == 0) {
            push(None, ViolationKind::LineLengths, format!("line {i} has length 0"));
        }
        for (i, edge) in self.edges.iter().enumerate() {
            let comps = &edge.components;
            if comps.is_empty() {
                push(Some(i), ViolationKind::EmptyEdge, String::new());
                continue;
            }
            if comps.len() > self.d {
                push(
                    Some(i),
                    ViolationKind::TooManyComponents,
                    format!("{} components, d = {}", comps.len(), self.d),
                );
            }
            for (j, c) in comps.iter().enumerate() {
                if !self.separated && c.line != 0 {
                    push(Some(i), ViolationKind::NonSeparatedLine, format!("component {j} on line {}", c.line));
                    continue;
                }
                let Some(&len) = self.line_lengths.get(c.line) else {
                    push(Some(i), ViolationKind::UnknownLine, format!("component {j} on line {}", c.line));
                    continue;
                };
                if c.lo > c.hi {
                    push(Some(i), ViolationKind::InvertedComponent, format!("component {j} = [{}, {}]", c.lo, c.hi));
                } else if c.lo < 1 || c.hi > len {
                    push(
                        Some(i),
                        ViolationKind::OutOfRange,
                        format!("component {j} = [{}, {}] on a line of length {len}", c.lo, c.hi),
                    );
                }
            }
            let mut sorted = comps.clone();
            sorted.sort();
            for pair in sorted.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                if a.line != b.line {
                    continue;
                }
                if self.separated {
                    push(Some(i), ViolationKind::SeparatedForm, format!("two components on line {}", a.line));
                } else if b.lo <= a.hi {
                    push(
                        Some(i),
                        ViolationKind::ComponentsNotDisjoint,
                        format!("[{}, {}] and [{}, {}]", a.lo, a.hi, b.lo, b.hi),
                    );
                }
            }
        }
        out
    }

    pub fn validate_weights(&self, w: &WeightSystem) -> Vec<Violation> {
        let mut out = Vec::new();
        if w.len() != self.edges.len() {
            out.push(Violation {
                edge: None,
                kind: ViolationKind::WeightCount,
                detail: format!("{} weights for {} edges", w.len(), self.edges.len()),
            });
        }
        for (i, &x) in w.0.iter().enumerate() {
            if x == 0 {
                out.push(Violation { edge: Some(i), kind: ViolationKind::ZeroWeight, detail: String::new() });
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }
}
