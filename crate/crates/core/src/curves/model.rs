use super::geom::{Dir, Point, Seg, Q};
use super::CurveError;

/// Axis-parallel rectangle `[x0, x1] x [y0, y1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rect {
    pub x0: Q,
    pub y0: Q,
    pub x1: Q,
    pub y1: Q,
}

/// Side of a rectangle, in counterclockwise order starting at the bottom.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Bottom,
    Right,
    Top,
    Left,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];

    pub fn outward(self) -> Dir {
        match self {
            Side::Bottom => Dir::S,
            Side::Right => Dir::E,
            Side::Top => Dir::N,
            Side::Left => Dir::W,
        }
    }
}

impl Rect {
    pub fn new(x0: Q, y0: Q, x1: Q, y1: Q) -> Self {
        Rect { x0, y0, x1, y1 }
    }

    /// Square of half-size `h` centred at `c`.
    pub fn square(c: &Point, h: &Q) -> Self {
        Rect::new(&c.x - h, &c.y - h, &c.x + h, &c.y + h)
    }

    pub fn is_proper(&self) -> bool {
        self.x0 < self.x1 && self.y0 < self.y1
    }

    pub fn corners(&self) -> [Point; 4] {
        [
            Point::new(self.x0.clone(), self.y0.clone()),
            Point::new(self.x1.clone(), self.y0.clone()),
            Point::new(self.x1.clone(), self.y1.clone()),
            Point::new(self.x0.clone(), self.y1.clone()),
        ]
    }

    /// Sides traversed counterclockwise, interior on the left.
    pub fn side_seg(&self, s: Side) -> Seg {
        let c = self.corners();
        match s {
            Side::Bottom => Seg::new(c[0].clone(), c[1].clone()),
            Side::Right => Seg::new(c[1].clone(), c[2].clone()),
            Side::Top => Seg::new(c[2].clone(), c[3].clone()),
            Side::Left => Seg::new(c[3].clone(), c[0].clone()),
        }
    }

    pub fn sides(&self) -> [Seg; 4] {
        Side::ALL.map(|s| self.side_seg(s))
    }

    pub fn contains_closed(&self, p: &Point) -> bool {
        self.x0 <= p.x && p.x <= self.x1 && self.y0 <= p.y && p.y <= self.y1
    }

    pub fn contains_open(&self, p: &Point) -> bool {
        self.x0 < p.x && p.x < self.x1 && self.y0 < p.y && p.y < self.y1
    }

    /// The side whose relative interior contains `p`.
    pub fn side_of(&self, p: &Point) -> Option<Side> {
        let inside_x = self.x0 < p.x && p.x < self.x1;
        let inside_y = self.y0 < p.y && p.y < self.y1;
        if inside_x && p.y == self.y0 {
            Some(Side::Bottom)
        } else if inside_x && p.y == self.y1 {
            Some(Side::Top)
        } else if inside_y && p.x == self.x0 {
            Some(Side::Left)
        } else if inside_y && p.x == self.x1 {
            Some(Side::Right)
        } else {
            None
        }
    }

    /// Closed rectangles share a point.
    pub fn meets(&self, o: &Rect) -> bool {
        !(self.x1 < o.x0 || o.x1 < self.x0 || self.y1 < o.y0 || o.y1 < self.y0)
    }

    /// Closed segment meets the closed rectangle.
    pub fn meets_seg(&self, s: &Seg) -> bool {
        !(s.max_x() < &self.x0 || &self.x1 < s.min_x() || s.max_y() < &self.y0 || &self.y1 < s.min_y())
    }
}

/// Reflection in the line `x = c` or `y = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mirror {
    X(Q),
    Y(Q),
}

impl Mirror {
    pub fn apply(&self, p: &Point) -> Point {
        match self {
            Mirror::X(c) => Point::new(c * Q::from_integer(2.into()) - &p.x, p.y.clone()),
            Mirror::Y(c) => Point::new(p.x.clone(), c * Q::from_integer(2.into()) - &p.y),
        }
    }

    pub fn apply_rect(&self, r: &Rect) -> Rect {
        let a = self.apply(&Point::new(r.x0.clone(), r.y0.clone()));
        let b = self.apply(&Point::new(r.x1.clone(), r.y1.clone()));
        Rect::new(
            a.x.clone().min(b.x.clone()),
            a.y.clone().min(b.y.clone()),
            a.x.max(b.x),
            a.y.max(b.y),
        )
    }
}

/// Two holes whose boundaries are glued by the mirror; this adds one handle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HolePair {
    pub a: Rect,
    pub b: Rect,
    pub mirror: Mirror,
}

impl HolePair {
    pub fn new(a: Rect, mirror: Mirror) -> Self {
        let b = mirror.apply_rect(&a);
        HolePair { a, b, mirror }
    }

    pub fn hole(&self, which: usize) -> &Rect {
        if which == 0 {
            &self.a
        } else {
            &self.b
        }
    }
}

/// Where a point sits on a hole boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HoleSide {
    pub pair: usize,
    pub which: usize,
    pub side: Side,
}

/// A closed oriented surface: the sphere (frame interior plus a cap at
/// infinity) with rectangular holes glued in pairs by reflections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarModel {
    pub frame: Rect,
    pub pairs: Vec<HolePair>,
}

impl PlanarModel {
    pub fn new(frame: Rect, pairs: Vec<HolePair>) -> Result<Self, CurveError> {
        let m = PlanarModel { frame, pairs };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<(), CurveError> {
        let bad = |s: String| Err(CurveError::Model(s));
        if !self.frame.is_proper() {
            return bad("frame must have positive size".into());
        }
        let holes: Vec<&Rect> = self.pairs.iter().flat_map(|p| [&p.a, &p.b]).collect();
        for (i, p) in self.pairs.iter().enumerate() {
            if !p.a.is_proper() {
                return bad(format!("hole pair {} has an empty hole", i + 1));
            }
            if p.mirror.apply_rect(&p.a) != p.b {
                return bad(format!("hole pair {}: second hole is not the mirror image of the first", i + 1));
            }
        }
        for (i, h) in holes.iter().enumerate() {
            let inside = self.frame.contains_open(&Point::new(h.x0.clone(), h.y0.clone()))
                && self.frame.contains_open(&Point::new(h.x1.clone(), h.y1.clone()));
            if !inside {
                return bad(format!("hole {} is not inside the frame", i + 1));
            }
            for (j, o) in holes.iter().enumerate().skip(i + 1) {
                if h.meets(o) {
                    return bad(format!("holes {} and {} overlap", i + 1, j + 1));
                }
            }
        }
        Ok(())
    }

    pub fn genus(&self) -> usize {
        self.pairs.len()
    }

    pub fn holes(&self) -> impl Iterator<Item = (usize, usize, &Rect)> {
        self.pairs
            .iter()
            .enumerate()
            .flat_map(|(i, p)| [(i, 0, &p.a), (i, 1, &p.b)])
    }

    pub fn hole_side_of(&self, p: &Point) -> Option<HoleSide> {
        self.holes()
            .find_map(|(pair, which, r)| r.side_of(p).map(|side| HoleSide { pair, which, side }))
    }

    /// The glued partner of a point on a hole side.
    pub fn partner(&self, p: &Point) -> Option<(Point, HoleSide)> {
        let hs = self.hole_side_of(p)?;
        let img = self.pairs[hs.pair].mirror.apply(p);
        let other = self.pairs[hs.pair].hole(1 - hs.which);
        let side = other.side_of(&img)?;
        Some((
            img,
            HoleSide {
                pair: hs.pair,
                which: 1 - hs.which,
                side,
            },
        ))
    }

    pub fn in_hole(&self, p: &Point) -> bool {
        self.holes().any(|(_, _, r)| r.contains_open(p))
    }
}
