//! Stacked curve diagrams as combinatorial maps.
//!
//! Every crossing has four ports numbered counterclockwise. A curve passing
//! through a crossing enters at port `p` and leaves at `p + 2`, so ports
//! `{0, 2}` form one strand and `{1, 3}` the other. Quadrant `q` is the corner
//! between ports `q` and `q + 1`.

mod format;

use std::fmt;

pub use format::parse_diagram;

/// One visit of a curve to a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Passage {
    pub crossing: usize,
    pub entry: u8,
}

impl Passage {
    pub fn new(crossing: usize, entry: u8) -> Self {
        debug_assert!(entry < 4);
        Passage { crossing, entry }
    }

    pub fn exit(self) -> u8 {
        (self.entry + 2) % 4
    }
}

/// A half-edge: leaving `crossing` through `port`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub crossing: usize,
    pub port: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub crossing: usize,
    pub quadrant: u8,
}

/// Who occupies a port: curve, position along the curve, and whether the curve enters there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PortUse {
    pub curve: usize,
    pub index: usize,
    pub entry: bool,
}

/// A face as its cyclic corner walk (face kept on the left of each side).
///
/// Corner `i` departs along the dart `(corner.crossing, corner.quadrant)` and the
/// arc it follows ends at corner `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Face {
    corners: Vec<Corner>,
}

impl Face {
    pub fn corners(&self) -> &[Corner] {
        &self.corners
    }

    pub fn len(&self) -> usize {
        self.corners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.corners.is_empty()
    }

    /// Dart leaving corner `i` along side `i` of the face.
    pub fn side(&self, i: usize) -> Dart {
        let c = self.corners[i % self.corners.len()];
        Dart {
            crossing: c.crossing,
            port: c.quadrant,
        }
    }

    pub fn visits_crossing_twice(&self) -> Option<usize> {
        let mut seen: Vec<usize> = self.corners.iter().map(|c| c.crossing).collect();
        seen.sort_unstable();
        seen.windows(2).find(|w| w[0] == w[1]).map(|w| w[0])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

/// One of the two circle arcs over a crossing. FORWARD runs from the lower
/// curve index to the higher one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    pub crossing: usize,
    pub direction: Direction,
}

impl Chord {
    pub fn forward(crossing: usize) -> Self {
        Chord {
            crossing,
            direction: Direction::Forward,
        }
    }

    pub fn backward(crossing: usize) -> Self {
        Chord {
            crossing,
            direction: Direction::Backward,
        }
    }

    /// Variable index: `2x` for FORWARD, `2x + 1` for BACKWARD.
    pub fn index(self) -> usize {
        2 * self.crossing + usize::from(self.direction == Direction::Backward)
    }

    pub fn from_index(i: usize) -> Self {
        Chord {
            crossing: i / 2,
            direction: if i % 2 == 0 {
                Direction::Forward
            } else {
                Direction::Backward
            },
        }
    }

    pub fn opposite(self) -> Self {
        Chord {
            crossing: self.crossing,
            direction: match self.direction {
                Direction::Forward => Direction::Backward,
                Direction::Backward => Direction::Forward,
            },
        }
    }
}

/// Choice of the curve labeled first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Labeling(pub usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllowabilityReport {
    /// `(face index, crossing)` for the first face whose walk revisits a crossing.
    pub revisiting_face: Option<(usize, usize)>,
    /// `(pair index i, |γ_i ∩ γ_{i+1}|)` for every consecutive pair not meeting exactly once.
    pub bad_pairs: Vec<(usize, usize)>,
}

impl AllowabilityReport {
    pub fn faces_embedded(&self) -> bool {
        self.revisiting_face.is_none()
    }

    pub fn pairs_meet_once(&self) -> bool {
        self.bad_pairs.is_empty()
    }

    pub fn is_allowable(&self) -> bool {
        self.faces_embedded() && self.pairs_meet_once()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("port reused: crossing {crossing} port {port}")]
    PortReused { crossing: String, port: u8 },
    #[error("strands at crossing must be perpendicular pairs {{0,2}},{{1,3}} on distinct curves: crossing {crossing} has both strands on curve {curve}")]
    StrandCurvesEqual { crossing: String, curve: usize },
    #[error("open traversal: crossing {crossing} port {port} is unused")]
    OpenTraversal { crossing: String, port: u8 },
    #[error("curve {curve} has no crossings")]
    EmptyCurve { curve: usize },
    #[error("diagram needs at least one curve")]
    NoCurves,
    #[error("disconnected diagram: curve {curve} is not linked to curve 1 through crossings")]
    Disconnected { curve: usize },
    #[error("genus mismatch: computed {computed}, declared {declared}")]
    GenusMismatch { declared: usize, computed: usize },
    #[error("salient designation: {0}")]
    Salient(String),
    #[error("no crossing between consecutive curves {0} and {1}")]
    NoConsecutiveCrossing(usize, usize),
    #[error("consecutive curves {0} and {1} meet {2} times; a salient designation is required")]
    AmbiguousConsecutiveCrossing(usize, usize, usize),
}

/// A validated stacked diagram. Immutable; moves build new values.
#[derive(Clone, PartialEq, Eq)]
pub struct StackedDiagram {
    genus_declared: Option<usize>,
    names: Vec<String>,
    curves: Vec<Vec<Passage>>,
    salient: Option<Vec<usize>>,
    ports: Vec<[PortUse; 4]>,
    faces: Vec<Face>,
    face_of_corner: Vec<[usize; 4]>,
    genus: usize,
}

impl fmt::Debug for StackedDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

impl StackedDiagram {
    /// Validates and builds a diagram. Curves are 0-based here; `names[x]` is the
    /// external name of crossing `x`; `salient[i]` designates the crossing used for
    /// the pair `(i, i+1)`.
    pub fn new(
        curves: Vec<Vec<Passage>>,
        names: Vec<String>,
        genus_declared: Option<usize>,
        salient: Option<Vec<usize>>,
    ) -> Result<Self, DiagramError> {
        if curves.is_empty() {
            return Err(DiagramError::NoCurves);
        }
        let n = names.len();
        let mut ports: Vec<[Option<PortUse>; 4]> = vec![[None; 4]; n];
        for (ci, curve) in curves.iter().enumerate() {
            if curve.is_empty() {
                return Err(DiagramError::EmptyCurve { curve: ci + 1 });
            }
            for (idx, p) in curve.iter().enumerate() {
                assert!(p.crossing < n, "passage references unknown crossing");
                for (port, entry) in [(p.entry, true), (p.exit(), false)] {
                    let slot = &mut ports[p.crossing][port as usize];
                    if slot.is_some() {
                        return Err(DiagramError::PortReused {
                            crossing: names[p.crossing].clone(),
                            port,
                        });
                    }
                    *slot = Some(PortUse {
                        curve: ci,
                        index: idx,
                        entry,
                    });
                }
            }
        }
        let mut full = Vec::with_capacity(n);
        for (x, ps) in ports.iter().enumerate() {
            let mut arr = [PortUse {
                curve: 0,
                index: 0,
                entry: false,
            }; 4];
            for (port, slot) in ps.iter().enumerate() {
                match slot {
                    Some(u) => arr[port] = *u,
                    None => {
                        return Err(DiagramError::OpenTraversal {
                            crossing: names[x].clone(),
                            port: port as u8,
                        })
                    }
                }
            }
            if arr[0].curve == arr[1].curve {
                return Err(DiagramError::StrandCurvesEqual {
                    crossing: names[x].clone(),
                    curve: arr[0].curve + 1,
                });
            }
            full.push(arr);
        }
        let mut d = StackedDiagram {
            genus_declared,
            names,
            curves,
            salient: None,
            ports: full,
            faces: Vec::new(),
            face_of_corner: vec![[usize::MAX; 4]; n],
            genus: 0,
        };
        d.check_connected()?;
        d.trace_faces();
        let (v, f) = (n as i64, d.faces.len() as i64);
        let twice = 2 + v - f;
        debug_assert!(twice >= 0 && twice % 2 == 0, "corrupted map: Euler characteristic");
        d.genus = (twice / 2) as usize;
        if let Some(g) = genus_declared {
            if g != d.genus {
                return Err(DiagramError::GenusMismatch {
                    declared: g,
                    computed: d.genus,
                });
            }
        }
        if d.genus < 3 {
            log::warn!("diagram genus {} is below 3", d.genus);
        }
        if let Some(s) = salient {
            d.set_salient(s)?;
        }
        Ok(d)
    }

    fn check_connected(&self) -> Result<(), DiagramError> {
        let k = self.curves.len();
        let mut seen = vec![false; k];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for p in &self.curves[c] {
                for u in &self.ports[p.crossing] {
                    if !seen[u.curve] {
                        seen[u.curve] = true;
                        stack.push(u.curve);
                    }
                }
            }
        }
        match seen.iter().position(|s| !s) {
            Some(c) => Err(DiagramError::Disconnected { curve: c + 1 }),
            None => Ok(()),
        }
    }

    fn trace_faces(&mut self) {
        let n = self.names.len();
        let mut visited = vec![[false; 4]; n];
        let mut faces = Vec::new();
        for x in 0..n {
            for q in 0..4u8 {
                if visited[x][q as usize] {
                    continue;
                }
                let mut corners = Vec::new();
                let mut c = Corner {
                    crossing: x,
                    quadrant: q,
                };
                while !visited[c.crossing][c.quadrant as usize] {
                    visited[c.crossing][c.quadrant as usize] = true;
                    corners.push(c);
                    c = self.next_corner(c);
                }
                let start = (0..corners.len()).min_by_key(|&i| corners[i]).unwrap();
                corners.rotate_left(start);
                faces.push(Face { corners });
            }
        }
        faces.sort_by(|a, b| a.corners[0].cmp(&b.corners[0]));
        for (fi, face) in faces.iter().enumerate() {
            for c in &face.corners {
                self.face_of_corner[c.crossing][c.quadrant as usize] = fi;
            }
        }
        self.faces = faces;
    }

    /// The dart at the far end of the arc leaving through `dart`.
    pub fn arc_end(&self, dart: Dart) -> Dart {
        let u = self.ports[dart.crossing][dart.port as usize];
        let curve = &self.curves[u.curve];
        if u.entry {
            let prev = curve[(u.index + curve.len() - 1) % curve.len()];
            Dart {
                crossing: prev.crossing,
                port: prev.exit(),
            }
        } else {
            let next = curve[(u.index + 1) % curve.len()];
            Dart {
                crossing: next.crossing,
                port: next.entry,
            }
        }
    }

    /// Next corner of the face walk: follow the arc, then turn to the clockwise-previous port.
    pub fn next_corner(&self, c: Corner) -> Corner {
        let end = self.arc_end(Dart {
            crossing: c.crossing,
            port: c.quadrant,
        });
        Corner {
            crossing: end.crossing,
            quadrant: (end.port + 3) % 4,
        }
    }

    pub fn curve_count(&self) -> usize {
        self.curves.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.names.len()
    }

    pub fn curves(&self) -> &[Vec<Passage>] {
        &self.curves
    }

    pub fn curve(&self, i: usize) -> &[Passage] {
        &self.curves[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn crossing_by_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn genus_declared(&self) -> Option<usize> {
        self.genus_declared
    }

    pub fn port_use(&self, x: usize, port: u8) -> PortUse {
        self.ports[x][port as usize]
    }

    /// Curves on the `{0,2}` and `{1,3}` strands.
    pub fn strand_curves(&self, x: usize) -> (usize, usize) {
        (self.ports[x][0].curve, self.ports[x][1].curve)
    }

    /// The two curves at `x`, lower index first.
    pub fn crossing_curves(&self, x: usize) -> (usize, usize) {
        let (a, b) = self.strand_curves(x);
        (a.min(b), a.max(b))
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, i: usize) -> &Face {
        &self.faces[i]
    }

    pub fn face_of_corner(&self, c: Corner) -> usize {
        self.face_of_corner[c.crossing][c.quadrant as usize]
    }

    /// Face on the left of the arc leaving through `dart`.
    pub fn face_left_of(&self, dart: Dart) -> usize {
        self.face_of_corner(Corner {
            crossing: dart.crossing,
            quadrant: dart.port,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn salient_designation(&self) -> Option<&[usize]> {
        self.salient.as_deref()
    }

    /// Crossings shared by curves `i` and `j`, in crossing order.
    pub fn crossings_between(&self, i: usize, j: usize) -> Vec<usize> {
        (0..self.names.len())
            .filter(|&x| {
                let (a, b) = self.crossing_curves(x);
                (a, b) == (i.min(j), i.max(j))
            })
            .collect()
    }

    /// Returns a copy with the given designation (validated), or none.
    pub fn with_salient(&self, salient: Option<Vec<usize>>) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        d.salient = None;
        if let Some(s) = salient {
            d.set_salient(s)?;
        }
        Ok(d)
    }

    fn set_salient(&mut self, s: Vec<usize>) -> Result<(), DiagramError> {
        let k = self.curves.len();
        if s.len() != k {
            return Err(DiagramError::Salient(format!(
                "expected {k} crossings, found {}",
                s.len()
            )));
        }
        for (i, &x) in s.iter().enumerate() {
            let j = (i + 1) % k;
            let (a, b) = self.crossing_curves(x);
            if (a, b) != (i.min(j), i.max(j)) {
                return Err(DiagramError::Salient(format!(
                    "crossing {} is not between curves {} and {}",
                    self.names[x],
                    i + 1,
                    j + 1
                )));
            }
        }
        self.salient = Some(s);
        Ok(())
    }

    pub fn check_allowable(&self) -> AllowabilityReport {
        let revisiting_face = self
            .faces
            .iter()
            .enumerate()
            .find_map(|(i, f)| f.visits_crossing_twice().map(|x| (i, x)));
        let k = self.curves.len();
        let mut counts = std::collections::HashMap::new();
        for x in 0..self.names.len() {
            *counts.entry(self.crossing_curves(x)).or_insert(0usize) += 1;
        }
        let mut bad_pairs = Vec::new();
        if k >= 2 {
            for i in 0..k {
                let j = (i + 1) % k;
                let c = counts.get(&(i.min(j), i.max(j))).copied().unwrap_or(0);
                if c != 1 {
                    bad_pairs.push((i, c));
                }
            }
        }
        AllowabilityReport {
            revisiting_face,
            bad_pairs,
        }
    }

    /// All chords in variable order.
    pub fn chords(&self) -> Vec<Chord> {
        (0..2 * self.names.len()).map(Chord::from_index).collect()
    }

    /// Label of curve `c` under `l` (0-based).
    pub fn label(&self, c: usize, l: Labeling) -> usize {
        let k = self.curves.len();
        (c + k - l.0 % k) % k
    }

    /// Active chord at `x`: from the lesser label to the greater one.
    pub fn active_chord(&self, x: usize, l: Labeling) -> Chord {
        let (i, j) = self.crossing_curves(x);
        if self.label(i, l) < self.label(j, l) {
            Chord::forward(x)
        } else {
            Chord::backward(x)
        }
    }

    /// Curve of the under strand (lesser label) at `x`.
    pub fn under_curve(&self, x: usize, l: Labeling) -> usize {
        let (i, j) = self.crossing_curves(x);
        if self.label(i, l) < self.label(j, l) {
            i
        } else {
            j
        }
    }

    /// +1 iff the counterclockwise-first port of the quadrant lies on the under strand.
    pub fn quadrant_sign(&self, c: Corner, l: Labeling) -> i8 {
        let port_curve = self.ports[c.crossing][c.quadrant as usize].curve;
        if port_curve == self.under_curve(c.crossing, l) {
            1
        } else {
            -1
        }
    }

    /// The salient chord for each consecutive pair `(i, i+1)`: the arc from
    /// `θ_i` to `θ_{i+1}`.
    pub fn salient_chords(&self) -> Result<Vec<Chord>, DiagramError> {
        let k = self.curves.len();
        let mut out = Vec::with_capacity(k);
        for i in 0..k {
            let j = (i + 1) % k;
            let x = match &self.salient {
                Some(s) => s[i],
                None => {
                    let xs = self.crossings_between(i, j);
                    match xs.len() {
                        0 => return Err(DiagramError::NoConsecutiveCrossing(i + 1, j + 1)),
                        1 => xs[0],
                        m => return Err(DiagramError::AmbiguousConsecutiveCrossing(i + 1, j + 1, m)),
                    }
                }
            };
            out.push(if i < j { Chord::forward(x) } else { Chord::backward(x) });
        }
        Ok(out)
    }

    /// Relabels the curves so that old curve `r` becomes curve 0.
    pub fn rotate_curves(&self, r: usize) -> StackedDiagram {
        let k = self.curves.len();
        let r = r % k;
        let mut curves = self.curves.clone();
        curves.rotate_left(r);
        let salient = self.salient.as_ref().map(|s| {
            let mut s = s.clone();
            s.rotate_left(r);
            s
        });
        StackedDiagram::new(curves, self.names.clone(), self.genus_declared, salient)
            .expect("rotation preserves validity")
    }

    /// Same diagram with crossings renamed `x1, x2, ...` in index order.
    pub fn with_default_names(&self) -> StackedDiagram {
        let mut d = self.clone();
        d.names = (1..=self.names.len()).map(|i| format!("x{i}")).collect();
        d
    }

    pub fn to_text(&self) -> String {
        format::serialize(self)
    }
}
