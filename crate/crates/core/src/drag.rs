//! Bounded segment-dragging queries over a static point set.
//!
//! A query translates a segment rightward (or upward) until it reaches a
//! limit line and reports the first point it meets. The index is a kd-tree
//! searched best-first by a lower bound on the drag distance of each cell;
//! `Up` queries run on a second tree over the mirrored points.
//!
//! Rightward drags whose segment slope was registered at build time instead
//! use a merge-sort tree over y keyed by `x - slope * y`, which answers them
//! in polylogarithmic time.

use std::cmp::Ordering;

use crate::error::{HullError, Result};
use crate::geometry::Point;
use crate::scalar::Scalar;

const LEAF: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DragDirection {
    Right,
    Up,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DragQuery<T> {
    pub a: Point<T>,
    pub b: Point<T>,
    pub direction: DragDirection,
    /// Stop line `x = limit` (right) or `y = limit` (up); `None` is unbounded.
    pub limit: Option<T>,
}

/// First point met by a drag. `index` is the position in the build input.
#[derive(Debug, Clone, PartialEq)]
pub struct DragHit<T> {
    pub index: usize,
    pub point: Point<T>,
    pub distance: T,
}

#[derive(Debug, Clone)]
struct Node<T> {
    lo: Point<T>,
    hi: Point<T>,
    /// Children, or `None` for a leaf over `items[start..end]`.
    kids: Option<(usize, usize)>,
    start: usize,
    end: usize,
}

#[derive(Debug, Clone)]
struct KdTree<T> {
    items: Vec<(Point<T>, usize)>,
    nodes: Vec<Node<T>>,
}

impl<T: Scalar> KdTree<T> {
    fn build(points: Vec<(Point<T>, usize)>) -> Self {
        let mut tree = KdTree {
            items: points,
            nodes: Vec::new(),
        };
        if !tree.items.is_empty() {
            let n = tree.items.len();
            tree.build_node(0, n, 0);
        }
        tree
    }

    fn build_node(&mut self, start: usize, end: usize, depth: usize) -> usize {
        let slice = &self.items[start..end];
        let mut lo = slice[0].0.clone();
        let mut hi = slice[0].0.clone();
        for (p, _) in &slice[1..] {
            lo.x = T::min_of(&lo.x, &p.x);
            lo.y = T::min_of(&lo.y, &p.y);
            hi.x = T::max_of(&hi.x, &p.x);
            hi.y = T::max_of(&hi.y, &p.y);
        }
        let id = self.nodes.len();
        self.nodes.push(Node {
            lo,
            hi,
            kids: None,
            start,
            end,
        });
        if end - start > LEAF {
            let mid = start + (end - start) / 2;
            let by_x = depth % 2 == 0;
            self.items[start..end].select_nth_unstable_by(mid - start, |a, b| {
                let (u, v) = if by_x {
                    (&a.0.x, &b.0.x)
                } else {
                    (&a.0.y, &b.0.y)
                };
                u.partial_cmp(v).unwrap_or(Ordering::Equal)
            });
            let l = self.build_node(start, mid, depth + 1);
            let r = self.build_node(mid, end, depth + 1);
            self.nodes[id].kids = Some((l, r));
        }
        id
    }
}

/// A horizontal sweep: `x(y) = x0 + (y - y0) * slope` for `y in [y0, y1]`.
struct Sweep<T> {
    y0: T,
    y1: T,
    x0: T,
    slope: T,
    limit: Option<T>,
}

impl<T: Scalar> Sweep<T> {
    fn new(a: &Point<T>, b: &Point<T>, limit: Option<T>) -> Result<Self> {
        let (a, b) = if a.y <= b.y { (a, b) } else { (b, a) };
        if a.y == b.y {
            return Err(HullError::DegenerateSegment);
        }
        let slope = (b.x.clone() - a.x.clone()) / (b.y.clone() - a.y.clone());
        Ok(Sweep {
            y0: a.y.clone(),
            y1: b.y.clone(),
            x0: a.x.clone(),
            slope,
            limit,
        })
    }

    fn x_at(&self, y: &T) -> T {
        self.x0.clone() + (y.clone() - self.y0.clone()) * self.slope.clone()
    }

    /// Drag distance of `p`, or `None` if the sweep never reaches it.
    fn distance(&self, p: &Point<T>) -> Option<T> {
        if p.y < self.y0 || p.y > self.y1 {
            return None;
        }
        if let Some(l) = &self.limit {
            if &p.x > l {
                return None;
            }
        }
        let d = p.x.clone() - self.x_at(&p.y);
        if d.is_negative() {
            None
        } else {
            Some(d)
        }
    }

    /// Lower bound on the drag distance of anything in the box, or `None`
    /// if the box cannot contain a reachable point.
    fn bound(&self, lo: &Point<T>, hi: &Point<T>) -> Option<T> {
        let ya = T::max_of(&lo.y, &self.y0);
        let yb = T::min_of(&hi.y, &self.y1);
        if ya > yb {
            return None;
        }
        if let Some(l) = &self.limit {
            if &lo.x > l {
                return None;
            }
        }
        let (xa, xb) = (self.x_at(&ya), self.x_at(&yb));
        let (xmin, xmax) = if xa <= xb { (xa, xb) } else { (xb, xa) };
        if hi.x < xmin {
            return None;
        }
        let d = lo.x.clone() - xmax;
        Some(if d.is_negative() { T::zero() } else { d })
    }
}

/// Orders candidate hits: smaller distance, then smaller y, then smaller x
/// (all in query coordinates), then smaller index.
fn better<T: Scalar>(
    d: &T,
    p: &Point<T>,
    idx: usize,
    best: &Option<(T, Point<T>, usize)>,
    dir: DragDirection,
) -> bool {
    let (bd, bp, bi) = match best {
        None => return true,
        Some((bd, bp, bi)) => (bd, bp, *bi),
    };
    let key = |q: &Point<T>| match dir {
        DragDirection::Right => (q.y.clone(), q.x.clone()),
        // Mirrored frame: the real y is the query x.
        DragDirection::Up => (q.x.clone(), q.y.clone()),
    };
    match d.partial_cmp(bd).unwrap_or(Ordering::Equal) {
        Ordering::Less => true,
        Ordering::Greater => false,
        Ordering::Equal => {
            let (k, bk) = (key(p), key(bp));
            k.0 < bk.0 || (k.0 == bk.0 && (k.1 < bk.1 || (k.1 == bk.1 && idx < bi)))
        }
    }
}

/// Points in y order with a bottom-up merge-sort tree: level `k` lists the
/// positions of each aligned block of `2^k` positions sorted by key.
#[derive(Debug, Clone)]
struct SlopeTree<T> {
    slope: T,
    items: Vec<(Point<T>, usize)>,
    keys: Vec<T>,
    levels: Vec<Vec<u32>>,
}

impl<T: Scalar> SlopeTree<T> {
    fn build(points: &[Point<T>], slope: T) -> Self {
        let mut items: Vec<(Point<T>, usize)> = points.iter().cloned().zip(0..).collect();
        items.sort_by(|a, b| a.0.y.partial_cmp(&b.0.y).unwrap_or(Ordering::Equal));
        let keys: Vec<T> = items
            .iter()
            .map(|(p, _)| p.x.clone() - slope.clone() * p.y.clone())
            .collect();
        let n = items.len();
        let mut tree = SlopeTree {
            slope,
            items,
            keys,
            levels: vec![(0..n as u32).collect()],
        };
        let mut width = 1;
        while width < n {
            let prev = tree.levels.last().expect("level 0");
            let mut next = Vec::with_capacity(n);
            for chunk in prev.chunks(2 * width) {
                let (l, r) = chunk.split_at(chunk.len().min(width));
                let (mut i, mut j) = (0, 0);
                while i < l.len() || j < r.len() {
                    let take_left =
                        j == r.len() || (i < l.len() && tree.cmp(l[i], r[j]) != Ordering::Greater);
                    if take_left {
                        next.push(l[i]);
                        i += 1;
                    } else {
                        next.push(r[j]);
                        j += 1;
                    }
                }
            }
            tree.levels.push(next);
            width *= 2;
        }
        tree
    }

    /// Drag order: key, then y, then x, then build index.
    fn cmp(&self, a: u32, b: u32) -> Ordering {
        let (pa, pb) = (&self.items[a as usize], &self.items[b as usize]);
        let by = |u: &T, v: &T| u.partial_cmp(v).unwrap_or(Ordering::Equal);
        by(&self.keys[a as usize], &self.keys[b as usize])
            .then_with(|| by(&pa.0.y, &pb.0.y))
            .then_with(|| by(&pa.0.x, &pb.0.x))
            .then(pa.1.cmp(&pb.1))
    }

    /// Smallest position in `[lo, hi)` whose key is at least `beta`, and the
    /// number of blocks searched.
    fn first_at_least(&self, beta: &T, lo: usize, hi: usize) -> (Option<u32>, usize) {
        let (mut l, mut r, mut k) = (lo, hi, 0);
        let mut best: Option<u32> = None;
        let mut blocks = 0;
        let visit = |k: usize, b: usize, best: &mut Option<u32>| {
            let n = self.items.len();
            let block = &self.levels[k][(b << k)..((b + 1) << k).min(n)];
            let at = block.partition_point(|&p| &self.keys[p as usize] < beta);
            if let Some(&p) = block.get(at) {
                if best.map_or(true, |q| self.cmp(p, q) == Ordering::Less) {
                    *best = Some(p);
                }
            }
        };
        while l < r {
            if l & 1 == 1 {
                visit(k, l, &mut best);
                blocks += 1;
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                visit(k, r, &mut best);
                blocks += 1;
            }
            l >>= 1;
            r >>= 1;
            k += 1;
        }
        (best, blocks)
    }

    fn drag(&self, sweep: &Sweep<T>) -> (Option<(T, Point<T>, usize)>, usize) {
        let beta = sweep.x0.clone() - self.slope.clone() * sweep.y0.clone();
        let mut lo = self.items.partition_point(|(p, _)| p.y < sweep.y0);
        let mut hi = self.items.partition_point(|(p, _)| p.y <= sweep.y1);
        let mut probes = 0;
        while lo < hi {
            let (found, blocks) = self.first_at_least(&beta, lo, hi);
            probes += blocks;
            let Some(pos) = found else { break };
            let (p, idx) = &self.items[pos as usize];
            match &sweep.limit {
                // Anything nearer the segment but inside the limit lies where
                // the segment is further left than at this hit.
                Some(limit) if &p.x > limit => {
                    if self.slope.is_zero() {
                        break;
                    } else if self.slope.is_positive() {
                        hi = self.items.partition_point(|(q, _)| q.y < p.y);
                    } else {
                        lo = self.items.partition_point(|(q, _)| q.y <= p.y);
                    }
                }
                _ => {
                    let d = p.x.clone() - sweep.x_at(&p.y);
                    let d = if d.is_negative() { T::zero() } else { d };
                    return (Some((d, p.clone(), *idx)), probes);
                }
            }
        }
        (None, probes)
    }
}

/// Static index answering drag queries in both directions.
#[derive(Debug, Clone)]
pub struct DragIndex<T> {
    right: KdTree<T>,
    up: KdTree<T>,
    sloped: Vec<SlopeTree<T>>,
}

pub fn build_index<T: Scalar>(points: &[Point<T>]) -> DragIndex<T> {
    build_index_with_slopes(points, &[])
}

/// Index with fast paths for rightward drags of segments with the given
/// slopes (`dx / dy`).
pub fn build_index_with_slopes<T: Scalar>(points: &[Point<T>], slopes: &[T]) -> DragIndex<T> {
    let direct: Vec<(Point<T>, usize)> = points.iter().cloned().zip(0..).collect();
    let mirrored: Vec<(Point<T>, usize)> = points.iter().map(Point::reflect).zip(0..).collect();
    let sloped = slopes
        .iter()
        .map(|s| SlopeTree::build(points, s.clone()))
        .collect();
    DragIndex {
        right: KdTree::build(direct),
        up: KdTree::build(mirrored),
        sloped,
    }
}

impl<T: Scalar> DragIndex<T> {
    pub fn len(&self) -> usize {
        self.right.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.right.items.is_empty()
    }

    /// First hit of the query and the number of tree nodes visited.
    pub fn drag(&self, q: &DragQuery<T>) -> Result<(Option<DragHit<T>>, usize)> {
        let (tree, a, b) = match q.direction {
            DragDirection::Right => (&self.right, q.a.clone(), q.b.clone()),
            DragDirection::Up => (&self.up, q.a.reflect(), q.b.reflect()),
        };
        let sweep = Sweep::new(&a, &b, q.limit.clone())?;
        let mut best: Option<(T, Point<T>, usize)> = None;
        let mut probes = 0;
        let fast = match q.direction {
            DragDirection::Right => self.sloped.iter().find(|t| t.slope.near(&sweep.slope)),
            DragDirection::Up => None,
        };
        if let Some(t) = fast {
            (best, probes) = t.drag(&sweep);
        } else if !tree.nodes.is_empty() {
            self.search(tree, 0, &sweep, q.direction, &mut best, &mut probes);
        }
        let hit = best.map(|(distance, p, index)| DragHit {
            index,
            point: match q.direction {
                DragDirection::Right => p,
                DragDirection::Up => p.reflect(),
            },
            distance,
        });
        Ok((hit, probes))
    }

    fn search(
        &self,
        tree: &KdTree<T>,
        id: usize,
        sweep: &Sweep<T>,
        dir: DragDirection,
        best: &mut Option<(T, Point<T>, usize)>,
        probes: &mut usize,
    ) {
        *probes += 1;
        let node = &tree.nodes[id];
        match node.kids {
            None => {
                for (p, idx) in &tree.items[node.start..node.end] {
                    if let Some(d) = sweep.distance(p) {
                        if better(&d, p, *idx, best, dir) {
                            *best = Some((d, p.clone(), *idx));
                        }
                    }
                }
            }
            Some((l, r)) => {
                let bl = sweep.bound(&tree.nodes[l].lo, &tree.nodes[l].hi);
                let br = sweep.bound(&tree.nodes[r].lo, &tree.nodes[r].hi);
                let mut order = [(l, bl), (r, br)];
                if let (Some(x), Some(y)) = (&order[0].1, &order[1].1) {
                    if y < x {
                        order.swap(0, 1);
                    }
                }
                for (child, bound) in order {
                    let Some(bound) = bound else { continue };
                    if let Some((bd, _, _)) = best {
                        if &bound > bd {
                            continue;
                        }
                    }
                    self.search(tree, child, sweep, dir, best, probes);
                }
            }
        }
    }

    /// Any indexed point accepted by `keep`, descending only into boxes
    /// accepted by `enter`. Returns the smallest build index among matches
    /// found in the first matching leaf order, with the probe count.
    pub fn find_first<E, K>(&self, enter: E, keep: K) -> (Option<(usize, Point<T>)>, usize)
    where
        E: Fn(&Point<T>, &Point<T>) -> bool,
        K: Fn(&Point<T>) -> bool,
    {
        let tree = &self.right;
        let mut probes = 0;
        if tree.nodes.is_empty() {
            return (None, 0);
        }
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            probes += 1;
            let node = &tree.nodes[id];
            if !enter(&node.lo, &node.hi) {
                continue;
            }
            match node.kids {
                None => {
                    if let Some((p, idx)) = tree.items[node.start..node.end]
                        .iter()
                        .find(|(p, _)| keep(p))
                    {
                        return (Some((*idx, p.clone())), probes);
                    }
                }
                Some((l, r)) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        (None, probes)
    }

    /// Every indexed point accepted by `keep` inside boxes accepted by `enter`.
    pub fn find_all<E, K>(&self, enter: E, keep: K) -> Vec<usize>
    where
        E: Fn(&Point<T>, &Point<T>) -> bool,
        K: Fn(&Point<T>) -> bool,
    {
        let tree = &self.right;
        let mut out = Vec::new();
        if tree.nodes.is_empty() {
            return out;
        }
        let mut stack = vec![0usize];
        while let Some(id) = stack.pop() {
            let node = &tree.nodes[id];
            if !enter(&node.lo, &node.hi) {
                continue;
            }
            match node.kids {
                None => out.extend(
                    tree.items[node.start..node.end]
                        .iter()
                        .filter(|(p, _)| keep(p))
                        .map(|(_, i)| *i),
                ),
                Some((l, r)) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }
}

/// Reference answer by scanning every point.
pub fn drag_linear<T: Scalar>(points: &[Point<T>], q: &DragQuery<T>) -> Result<Option<DragHit<T>>> {
    let (a, b) = match q.direction {
        DragDirection::Right => (q.a.clone(), q.b.clone()),
        DragDirection::Up => (q.a.reflect(), q.b.reflect()),
    };
    let sweep = Sweep::new(&a, &b, q.limit.clone())?;
    let mut best: Option<(T, Point<T>, usize)> = None;
    for (i, p) in points.iter().enumerate() {
        let p = match q.direction {
            DragDirection::Right => p.clone(),
            DragDirection::Up => p.reflect(),
        };
        if let Some(d) = sweep.distance(&p) {
            if better(&d, &p, i, &best, q.direction) {
                best = Some((d, p, i));
            }
        }
    }
    Ok(best.map(|(distance, p, index)| DragHit {
        index,
        point: match q.direction {
            DragDirection::Right => p,
            DragDirection::Up => p.reflect(),
        },
        distance,
    }))
}
