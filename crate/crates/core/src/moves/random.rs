//! Random legal rewrites, for property tests.

use std::collections::VecDeque;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{apply_command, arc_of_dart, face_across, MoveCommand};
use crate::diagram::StackedDiagram;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    R2Insert,
    R2Remove,
    R3,
    Slide,
    Finger,
}

/// Draws moves of the given kinds until one applies. Returns the move and its
/// result, or `None` after `tries` failed proposals.
pub fn random_move<R: Rng>(
    d: &StackedDiagram,
    kinds: &[MoveKind],
    rng: &mut R,
    tries: usize,
) -> Option<(MoveCommand, StackedDiagram)> {
    for _ in 0..tries {
        let kind = *kinds.choose(rng)?;
        let Some(cmd) = propose(d, kind, rng) else { continue };
        if let Ok(out) = apply_command(d, &cmd) {
            return Some((cmd, out));
        }
    }
    None
}

fn propose<R: Rng>(d: &StackedDiagram, kind: MoveKind, rng: &mut R) -> Option<MoveCommand> {
    let nf = d.faces().len();
    match kind {
        MoveKind::R2Insert => {
            let face = rng.gen_range(0..nf);
            let f = d.face(face);
            let sides: Vec<_> = (0..f.len()).map(|i| arc_of_dart(d, f.side(i)).0).collect();
            let a = *sides.choose(rng)?;
            let others: Vec<_> = sides.iter().copied().filter(|s| s.curve != a.curve).collect();
            let b = *others.choose(rng)?;
            Some(MoveCommand::R2Insert { face, a, b })
        }
        MoveKind::R2Remove => {
            let bigons: Vec<usize> = (0..nf).filter(|&i| d.face(i).len() == 2).collect();
            Some(MoveCommand::R2Remove { face: *bigons.choose(rng)? })
        }
        MoveKind::R3 => {
            let tris: Vec<usize> = (0..nf).filter(|&i| d.face(i).len() == 3).collect();
            Some(MoveCommand::R3 { face: *tris.choose(rng)? })
        }
        MoveKind::Slide => {
            let k = d.curve_count();
            let pairs: Vec<(usize, usize)> = (0..k)
                .flat_map(|a| (0..k).map(move |b| (a, b)))
                .filter(|&(a, b)| a != b && d.crossings_between(a, b).is_empty())
                .collect();
            let &(a, b) = pairs.choose(rng)?;
            let path = dual_path(d, rng, |f| touches(d, f, a), |f| touches(d, f, b), &[a, b])?;
            Some(MoveCommand::Slide { a, b, path })
        }
        MoveKind::Finger => {
            let face = rng.gen_range(0..nf);
            let f = d.face(face);
            let side = f.side(rng.gen_range(0..f.len()));
            let arc = arc_of_dart(d, side).0;
            let len = rng.gen_range(2..=3);
            let mut path = vec![face];
            while path.len() < len {
                let last = d.face(*path.last().expect("nonempty"));
                let next: Vec<usize> = (0..last.len())
                    .map(|i| last.side(i))
                    .filter(|&s| arc_of_dart(d, s).0.curve != arc.curve)
                    .map(|s| face_across(d, s))
                    .filter(|g| !path.contains(g))
                    .collect();
                path.push(*next.choose(rng)?);
            }
            Some(MoveCommand::Finger { arc, path })
        }
    }
}

fn touches(d: &StackedDiagram, face: usize, c: usize) -> bool {
    let f = d.face(face);
    (0..f.len()).any(|i| arc_of_dart(d, f.side(i)).0.curve == c)
}

/// Shortest face path from a random `start` face to an `end` face, not
/// crossing walls on the curves in `avoid`.
fn dual_path<R: Rng>(
    d: &StackedDiagram,
    rng: &mut R,
    start: impl Fn(usize) -> bool,
    end: impl Fn(usize) -> bool,
    avoid: &[usize],
) -> Option<Vec<usize>> {
    let nf = d.faces().len();
    let starts: Vec<usize> = (0..nf).filter(|&f| start(f)).collect();
    let s = *starts.choose(rng)?;
    let mut prev = vec![usize::MAX; nf];
    prev[s] = s;
    let mut queue = VecDeque::from([s]);
    while let Some(f) = queue.pop_front() {
        if end(f) {
            let mut path = vec![f];
            while *path.last().expect("nonempty") != s {
                path.push(prev[*path.last().expect("nonempty")]);
            }
            path.reverse();
            return Some(path);
        }
        let face = d.face(f);
        let mut nbrs: Vec<usize> = (0..face.len())
            .map(|i| face.side(i))
            .filter(|&sd| !avoid.contains(&arc_of_dart(d, sd).0.curve))
            .map(|sd| face_across(d, sd))
            .collect();
        nbrs.shuffle(rng);
        for g in nbrs {
            if prev[g] == usize::MAX {
                prev[g] = f;
                queue.push_back(g);
            }
        }
    }
    None
}
