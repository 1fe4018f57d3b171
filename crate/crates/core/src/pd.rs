//! Planar diagram codes.
//!
//! Grammar: a diagram is one or more crossings `X(a,b,c,d)` separated by
//! commas and/or whitespace; labels are positive integers and every label
//! occurs exactly twice. Each tuple lists the four arcs at a crossing
//! counterclockwise, starting with the incoming under-strand, so slots 0
//! and 2 are the under-strand and slots 1 and 3 the over-strand.
//!
//! The standard right-handed trefoil:
//!
//! ```text
//! X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)
//! ```
//!
//! Corner `k` of a crossing is the region between slots `k` and `k + 1`
//! (mod 4). Corners 1 and 3 are the regions swept when the over-strand is
//! rotated counterclockwise onto the under-strand; a crossing gets sign +1
//! in the Tait graph when those are the shaded corners, and -1 otherwise.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::tait::{SignedTaitGraph, UnionFind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PdError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("label {label} occurs {count} times (expected 2)")]
    LabelCount { label: u64, count: usize },
    #[error("diagram has no crossings")]
    Empty,
    #[error("diagram is not connected")]
    Disconnected,
    #[error("not planar: {faces} faces for {crossings} crossings (expected {})", crossings + 2)]
    NonPlanar { crossings: usize, faces: usize },
    #[error("plane graph: {0}")]
    PlaneGraph(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PdDiagram {
    crossings: Vec<[u64; 4]>,
}

/// Position of a corner: crossing index and corner number (0..4).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub crossing: usize,
    pub corner: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Corners in traversal order.
    pub corners: Vec<Corner>,
}

/// Which checkerboard class becomes the vertex set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ColorChoice {
    /// The class of the unbounded face.
    #[default]
    ShadeA,
    /// The other class.
    ShadeB,
}

pub fn parse_pd(text: &str) -> Result<PdDiagram, PdError> {
    text.parse()
}

impl PdDiagram {
    pub fn new(crossings: Vec<[u64; 4]>) -> Result<Self, PdError> {
        if crossings.is_empty() {
            return Err(PdError::Empty);
        }
        let mut count: BTreeMap<u64, usize> = BTreeMap::new();
        for x in &crossings {
            for &l in x {
                *count.entry(l).or_default() += 1;
            }
        }
        if let Some((&label, &count)) = count.iter().find(|(_, &n)| n != 2) {
            return Err(PdError::LabelCount { label, count });
        }
        Ok(Self { crossings })
    }

    pub fn crossings(&self) -> &[[u64; 4]] {
        &self.crossings
    }

    pub fn len(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty()
    }

    /// The other end of the arc at `(crossing, slot)`.
    fn partners(&self) -> HashMap<(usize, usize), (usize, usize)> {
        let mut seen: HashMap<u64, (usize, usize)> = HashMap::new();
        let mut out = HashMap::new();
        for (c, x) in self.crossings.iter().enumerate() {
            for (s, &l) in x.iter().enumerate() {
                if let Some(p) = seen.insert(l, (c, s)) {
                    out.insert(p, (c, s));
                    out.insert((c, s), p);
                }
            }
        }
        out
    }

    fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.crossings.len());
        for (&(c, _), &(d, _)) in &self.partners() {
            uf.union(c, d);
        }
        (1..self.crossings.len()).all(|c| uf.find(c) == uf.find(0))
    }

    /// Build the alternating-by-sign diagram of a plane graph: one crossing
    /// per edge, with `rotation[v]` listing the edge ids at `v` in
    /// counterclockwise order. Loops are not supported.
    pub fn from_plane_graph(
        vertex_count: usize,
        edges: &[(usize, usize, i64)],
        rotation: &[Vec<usize>],
    ) -> Result<Self, PdError> {
        let bad = |m: String| Err(PdError::PlaneGraph(m));
        if rotation.len() != vertex_count {
            return bad(format!("{} rotations for {vertex_count} vertices", rotation.len()));
        }
        for (id, &(u, v, s)) in edges.iter().enumerate() {
            if u == v || u >= vertex_count || v >= vertex_count || s.abs() != 1 {
                return bad(format!("edge {id} = ({u}, {v}, {s}) is not allowed"));
            }
            for w in [u, v] {
                if rotation[w].iter().filter(|&&e| e == id).count() != 1 {
                    return bad(format!("edge {id} must occur once in the rotation at {w}"));
                }
            }
        }
        if rotation.iter().map(Vec::len).sum::<usize>() != 2 * edges.len() {
            return bad("rotation lists contain extra entries".into());
        }
        // Crossing for edge (u, v) drawn with u to the south: arcs leave
        // NE, NW, SW, SE. Seen from the endpoint w, the arc on the
        // counterclockwise side of the edge is NE at v and SW at u.
        const NE: usize = 0;
        const NW: usize = 1;
        const SW: usize = 2;
        const SE: usize = 3;
        let arc = |e: usize, w: usize, ccw: bool| -> (usize, usize) {
            let at_v = edges[e].1 == w;
            let slot = match (at_v, ccw) {
                (true, true) => NE,
                (true, false) => NW,
                (false, true) => SW,
                (false, false) => SE,
            };
            (e, slot)
        };
        let mut labels = vec![[0u64; 4]; edges.len()];
        let mut next = 1;
        for (w, rot) in rotation.iter().enumerate() {
            for (i, &e) in rot.iter().enumerate() {
                let f = rot[(i + 1) % rot.len()];
                let (e1, s1) = arc(e, w, true);
                let (e2, s2) = arc(f, w, false);
                labels[e1][s1] = next;
                labels[e2][s2] = next;
                next += 1;
            }
        }
        let crossings = labels
            .iter()
            .zip(edges)
            .map(|(l, &(_, _, s))| {
                if s > 0 {
                    [l[NW], l[SW], l[SE], l[NE]]
                } else {
                    [l[NE], l[NW], l[SW], l[SE]]
                }
            })
            .collect();
        Self::new(crossings)
    }
}

impl fmt::Display for PdDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, [a, b, c, d]) in self.crossings.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "X({a},{b},{c},{d})")?;
        }
        Ok(())
    }
}

impl FromStr for PdDiagram {
    type Err = PdError;

    fn from_str(text: &str) -> Result<Self, PdError> {
        let bytes = text.as_bytes();
        let mut pos = 0;
        let err = |pos: usize, msg: &str| PdError::Syntax { pos, msg: msg.to_string() };
        let skip = |pos: &mut usize, commas: bool| {
            while *pos < bytes.len() && (bytes[*pos].is_ascii_whitespace() || (commas && bytes[*pos] == b',')) {
                *pos += 1;
            }
        };
        let mut crossings = Vec::new();
        loop {
            skip(&mut pos, true);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'X' {
                return Err(err(pos, "expected 'X'"));
            }
            pos += 1;
            skip(&mut pos, false);
            if bytes.get(pos) != Some(&b'(') {
                return Err(err(pos, "expected '('"));
            }
            pos += 1;
            let mut entries = Vec::new();
            loop {
                skip(&mut pos, false);
                let start = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                let label: u64 = text[start..pos].parse().map_err(|_| err(start, "expected a positive integer"))?;
                if label == 0 {
                    return Err(err(start, "labels must be positive"));
                }
                entries.push(label);
                skip(&mut pos, false);
                match bytes.get(pos) {
                    Some(b',') => pos += 1,
                    Some(b')') => {
                        pos += 1;
                        break;
                    }
                    _ => return Err(err(pos, "expected ',' or ')'")),
                }
            }
            let tuple: [u64; 4] = entries
                .try_into()
                .map_err(|e: Vec<u64>| err(pos - 1, &format!("crossing has {} entries, expected 4", e.len())))?;
            crossings.push(tuple);
        }
        PdDiagram::new(crossings)
    }
}

/// Faces of the diagram and, for each corner, the index of its face.
struct FaceData {
    faces: Vec<Face>,
    face_of: HashMap<Corner, usize>,
}

fn trace_faces(pd: &PdDiagram) -> Result<FaceData, PdError> {
    if !pd.is_connected() {
        return Err(PdError::Disconnected);
    }
    let partner = pd.partners();
    let mut faces = Vec::new();
    let mut face_of = HashMap::new();
    for crossing in 0..pd.len() {
        for corner in 0..4 {
            let start = Corner { crossing, corner };
            if face_of.contains_key(&start) {
                continue;
            }
            let id = faces.len();
            let mut corners = Vec::new();
            let mut at = start;
            loop {
                face_of.insert(at, id);
                corners.push(at);
                // leave along the arc closing this corner; the face lies on
                // the right, which is the corner after the arrival slot
                let (c, s) = partner[&(at.crossing, (at.corner + 1) % 4)];
                at = Corner { crossing: c, corner: s };
                if at == start {
                    break;
                }
                if face_of.contains_key(&at) {
                    return Err(PdError::NonPlanar { crossings: pd.len(), faces: faces.len() + 1 });
                }
            }
            faces.push(Face { corners });
        }
    }
    if faces.len() != pd.len() + 2 {
        return Err(PdError::NonPlanar { crossings: pd.len(), faces: faces.len() });
    }
    Ok(FaceData { faces, face_of })
}

/// Face cycles, each corner appearing in exactly one face.
pub fn faces(pd: &PdDiagram) -> Result<Vec<Face>, PdError> {
    Ok(trace_faces(pd)?.faces)
}

/// Checkerboard colour (0 or 1) of each face; faces sharing an arc differ.
fn two_colour(pd: &PdDiagram, data: &FaceData) -> Result<Vec<u8>, PdError> {
    let n = data.faces.len();
    let mut adj = vec![Vec::new(); n];
    for crossing in 0..pd.len() {
        for corner in 0..4 {
            let a = data.face_of[&Corner { crossing, corner }];
            let b = data.face_of[&Corner { crossing, corner: (corner + 1) % 4 }];
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    let mut colour = vec![u8::MAX; n];
    colour[0] = 0;
    let mut stack = vec![0];
    while let Some(f) = stack.pop() {
        for &g in &adj[f] {
            if colour[g] == u8::MAX {
                colour[g] = 1 - colour[f];
                stack.push(g);
            } else if colour[g] == colour[f] {
                return Err(PdError::NonPlanar { crossings: pd.len(), faces: n });
            }
        }
    }
    Ok(colour)
}

/// The unbounded face: the one containing the corner just after the first
/// occurrence of the largest label.
fn outer_corner(pd: &PdDiagram) -> Corner {
    let max = pd.crossings.iter().flatten().max().copied().expect("nonempty");
    pd.crossings
        .iter()
        .enumerate()
        .find_map(|(c, x)| x.iter().position(|&l| l == max).map(|s| Corner { crossing: c, corner: s }))
        .expect("label present")
}

/// Tait graph of the shaded class selected by `choice`.
///
/// Vertices are the shaded faces in order of discovery; the outer vertex is
/// the unbounded face for `ShadeA` and the face across the largest label
/// from it for `ShadeB`.
pub fn to_tait(pd: &PdDiagram, choice: ColorChoice) -> Result<SignedTaitGraph, PdError> {
    let data = trace_faces(pd)?;
    let colour = two_colour(pd, &data)?;
    let outer = outer_corner(pd);
    let outer = match choice {
        ColorChoice::ShadeA => outer,
        ColorChoice::ShadeB => Corner { crossing: outer.crossing, corner: (outer.corner + 3) % 4 },
    };
    let outer_face = data.face_of[&outer];
    let shade = colour[outer_face];
    let mut vertex = vec![usize::MAX; data.faces.len()];
    let mut n = 0;
    for (f, &c) in colour.iter().enumerate() {
        if c == shade {
            vertex[f] = n;
            n += 1;
        }
    }
    let mut edges = Vec::with_capacity(pd.len());
    for crossing in 0..pd.len() {
        let face = |corner| data.face_of[&Corner { crossing, corner }];
        let (first, sign) = if colour[face(1)] == shade { (1, 1) } else { (0, -1) };
        edges.push((vertex[face(first)], vertex[face(first + 2)], sign));
    }
    SignedTaitGraph::new(n, vertex[outer_face], &edges).map_err(|e| PdError::PlaneGraph(e.to_string()))
}
