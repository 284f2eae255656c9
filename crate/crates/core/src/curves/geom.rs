//! Exact axis-parallel geometry.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn ints(x: i64, y: i64) -> Self {
        Point::new(q(x), q(y))
    }

    pub fn step(&self, d: Dir, amount: &Q) -> Point {
        let (dx, dy) = d.unit();
        Point::new(&self.x + amount * q(dx), &self.y + amount * q(dy))
    }

    /// L-infinity distance.
    pub fn dist(&self, o: &Point) -> Q {
        let dx = (&self.x - &o.x).abs();
        let dy = (&self.y - &o.y).abs();
        if dx > dy {
            dx
        } else {
            dy
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    E,
    N,
    W,
    S,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::E, Dir::N, Dir::W, Dir::S];

    pub fn of(a: &Point, b: &Point) -> Option<Dir> {
        if a.y == b.y && a.x < b.x {
            Some(Dir::E)
        } else if a.y == b.y && a.x > b.x {
            Some(Dir::W)
        } else if a.x == b.x && a.y < b.y {
            Some(Dir::N)
        } else if a.x == b.x && a.y > b.y {
            Some(Dir::S)
        } else {
            None
        }
    }

    pub fn unit(self) -> (i64, i64) {
        match self {
            Dir::E => (1, 0),
            Dir::N => (0, 1),
            Dir::W => (-1, 0),
            Dir::S => (0, -1),
        }
    }

    /// Counterclockwise quarter turn.
    pub fn left(self) -> Dir {
        match self {
            Dir::E => Dir::N,
            Dir::N => Dir::W,
            Dir::W => Dir::S,
            Dir::S => Dir::E,
        }
    }

    pub fn right(self) -> Dir {
        self.left().opposite()
    }

    pub fn opposite(self) -> Dir {
        self.left().left()
    }

    pub fn is_horizontal(self) -> bool {
        matches!(self, Dir::E | Dir::W)
    }

    /// z-component of the cross product of the unit vectors.
    pub fn cross(self, o: Dir) -> i64 {
        let (a, b) = self.unit();
        let (c, d) = o.unit();
        a * d - b * c
    }
}

/// Closed axis-parallel segment from `a` to `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seg {
    pub a: Point,
    pub b: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Contact {
    None,
    /// Perpendicular crossing at interior points of both.
    Cross(Point),
    /// Meet at a single point that is an endpoint of at least one.
    Touch(Point),
    /// Collinear with positive-length overlap.
    Overlap,
}

impl Seg {
    pub fn new(a: Point, b: Point) -> Self {
        Seg { a, b }
    }

    pub fn dir(&self) -> Dir {
        Dir::of(&self.a, &self.b).expect("segment must be axis-parallel with positive length")
    }

    pub fn is_horizontal(&self) -> bool {
        self.a.y == self.b.y
    }

    pub fn min_x(&self) -> &Q {
        if self.a.x < self.b.x {
            &self.a.x
        } else {
            &self.b.x
        }
    }

    pub fn max_x(&self) -> &Q {
        if self.a.x < self.b.x {
            &self.b.x
        } else {
            &self.a.x
        }
    }

    pub fn min_y(&self) -> &Q {
        if self.a.y < self.b.y {
            &self.a.y
        } else {
            &self.b.y
        }
    }

    pub fn max_y(&self) -> &Q {
        if self.a.y < self.b.y {
            &self.b.y
        } else {
            &self.a.y
        }
    }

    pub fn len(&self) -> Q {
        self.a.dist(&self.b)
    }

    /// Distance from `a` to a point on the segment.
    pub fn offset_of(&self, p: &Point) -> Q {
        self.a.dist(p)
    }

    pub fn point_at(&self, t: &Q) -> Point {
        self.a.step(self.dir(), t)
    }

    pub fn contains(&self, p: &Point) -> bool {
        if self.is_horizontal() {
            p.y == self.a.y && self.min_x() <= &p.x && &p.x <= self.max_x()
        } else {
            p.x == self.a.x && self.min_y() <= &p.y && &p.y <= self.max_y()
        }
    }

    pub fn bbox_f64(&self) -> [f64; 4] {
        [
            to_f64(self.min_x()),
            to_f64(self.min_y()),
            to_f64(self.max_x()),
            to_f64(self.max_y()),
        ]
    }
}

pub fn contact(s: &Seg, t: &Seg) -> Contact {
    if s.min_x() > t.max_x() || t.min_x() > s.max_x() || s.min_y() > t.max_y() || t.min_y() > s.max_y() {
        return Contact::None;
    }
    match (s.is_horizontal(), t.is_horizontal()) {
        (true, true) | (false, false) => {
            // Boxes overlap, so the segments are collinear.
            let (lo, hi) = if s.is_horizontal() {
                (s.min_x().max(t.min_x()), s.max_x().min(t.max_x()))
            } else {
                (s.min_y().max(t.min_y()), s.max_y().min(t.max_y()))
            };
            if lo < hi {
                return Contact::Overlap;
            }
            let p = if s.is_horizontal() {
                Point::new(lo.clone(), s.a.y.clone())
            } else {
                Point::new(s.a.x.clone(), lo.clone())
            };
            Contact::Touch(p)
        }
        (true, false) => meet(s, t),
        (false, true) => meet(t, s),
    }
}

fn meet(h: &Seg, v: &Seg) -> Contact {
    let p = Point::new(v.a.x.clone(), h.a.y.clone());
    let interior_h = h.min_x() < &p.x && &p.x < h.max_x();
    let interior_v = v.min_y() < &p.y && &p.y < v.max_y();
    if interior_h && interior_v {
        Contact::Cross(p)
    } else {
        Contact::Touch(p)
    }
}

/// L-infinity distance between two disjoint segments (zero if they meet).
pub fn seg_dist(s: &Seg, t: &Seg) -> Q {
    let gap = |lo1: &Q, hi1: &Q, lo2: &Q, hi2: &Q| {
        if hi1 < lo2 {
            lo2 - hi1
        } else if hi2 < lo1 {
            lo1 - hi2
        } else {
            Q::zero()
        }
    };
    let dx = gap(s.min_x(), s.max_x(), t.min_x(), t.max_x());
    let dy = gap(s.min_y(), s.max_y(), t.min_y(), t.max_y());
    if dx > dy {
        dx
    } else {
        dy
    }
}

pub fn min_q(a: Q, b: Q) -> Q {
    if a < b {
        a
    } else {
        b
    }
}

/// Rational in lowest terms for data files: `n` or `n/d`.
pub fn fmt_q(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// Parses `n`, `n/d` or a decimal like `-1.25`.
pub fn parse_q(s: &str) -> Option<Q> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_part: BigInt = if int == "-" || int.is_empty() { BigInt::zero() } else { int.parse().ok()? };
        let scale = BigInt::from(10).pow(frac.len() as u32);
        let f: BigInt = frac.parse().ok()?;
        let mag = int_part.abs() * &scale + f;
        let n = if neg { -mag } else { mag };
        return Some(Q::new(n, scale));
    }
    s.parse::<BigInt>().ok().map(Q::from_integer)
}
