//! Exact small-instance oracles: maximum `ε`-separated subsets and minimum
//! covers with centres in the cloud.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::geometry::{dist2, PointCloud};

/// Largest cloud the exact oracles accept.
pub const EXACT_CAP: usize = 400;

#[derive(Clone, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    fn full(n: usize) -> Self {
        let mut b = Bits::new(n);
        for i in 0..n {
            b.set(i);
        }
        b
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & !b).collect())
    }

    fn and_count(&self, o: &Bits) -> usize {
        self.0
            .iter()
            .zip(&o.0)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn is_subset_of(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * 64 + w.trailing_zeros() as usize)
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            core::iter::from_fn(move || {
                (w != 0).then(|| {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    k * 64 + t
                })
            })
        })
    }
}

fn check_cap(cloud: &PointCloud) -> Result<()> {
    if cloud.len() > EXACT_CAP {
        return Err(Error::Budget {
            what: "exact oracle point",
            limit: EXACT_CAP as u64,
            partial: 0.0,
        });
    }
    Ok(())
}

/// `adj[i]` holds every `j ≠ i` with `|x_i − x_j| ≤ r`.
fn proximity(cloud: &PointCloud, r: f64) -> Vec<Bits> {
    let n = cloud.len();
    let r2 = r * r;
    let mut adj = vec![Bits::new(n); n];
    for i in 0..n {
        for j in i + 1..n {
            if dist2(cloud.point(i), cloud.point(j)) <= r2 {
                adj[i].set(j);
                adj[j].set(i);
            }
        }
    }
    adj
}

/// Maximum independent set by colour-ordered branch and bound: greedy
/// clique covers of the candidates play the role of colour classes.
struct Mis {
    /// Adjacency after relabelling vertices by ascending degree.
    adj: Vec<Bits>,
    best: Vec<usize>,
}

impl Mis {
    fn new(adj: &[Bits], within: &Bits) -> (Self, Vec<usize>) {
        let mut order: Vec<usize> = within.iter().collect();
        order.sort_by_key(|&v| (adj[v].and_count(within), v));
        let n = order.len();
        let mut local = vec![Bits::new(n); n];
        for (a, &u) in order.iter().enumerate() {
            for (b, &v) in order.iter().enumerate() {
                if a != b && adj[u].has(v) {
                    local[a].set(b);
                }
            }
        }
        let mut solver = Mis {
            adj: local,
            best: Vec::new(),
        };
        solver.best = solver.greedy(&Bits::full(n));
        (solver, order)
    }

    /// Min-degree greedy on `cand`.
    fn greedy(&self, cand: &Bits) -> Vec<usize> {
        let mut rest = cand.clone();
        let mut out = Vec::new();
        while let Some(v) = rest.iter().min_by_key(|&v| (self.adj[v].and_count(&rest), v)) {
            out.push(v);
            rest.clear(v);
            rest = rest.and_not(&self.adj[v]);
        }
        out
    }

    /// Candidates with their clique-cover bound, in ascending bound order.
    fn cover_order(&self, cand: &Bits) -> Vec<(usize, usize)> {
        let mut rest = cand.clone();
        let mut out = Vec::with_capacity(cand.count());
        let mut k = 0;
        while !rest.is_empty() {
            k += 1;
            let mut pool = rest.clone();
            while let Some(v) = pool.first() {
                pool.clear(v);
                pool = pool.and(&self.adj[v]);
                rest.clear(v);
                out.push((v, k));
            }
        }
        out
    }

    fn expand(&mut self, current: &mut Vec<usize>, mut cand: Bits) {
        let ordered = self.cover_order(&cand);
        for &(v, bound) in ordered.iter().rev() {
            if current.len() + bound <= self.best.len() {
                return;
            }
            current.push(v);
            let mut next = cand.and_not(&self.adj[v]);
            next.clear(v);
            if next.is_empty() {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
            } else {
                self.expand(current, next);
            }
            current.pop();
            cand.clear(v);
        }
    }
}

/// Connected components of the subgraph induced on `within`.
fn components_within(adj: &[Bits], within: &Bits) -> Vec<Bits> {
    let n = adj.len();
    let mut left = within.clone();
    let mut out = Vec::new();
    while let Some(s) = left.first() {
        let mut comp = Bits::new(n);
        let mut frontier = Bits::new(n);
        frontier.set(s);
        left.clear(s);
        while let Some(u) = frontier.first() {
            frontier.clear(u);
            comp.set(u);
            let fresh = adj[u].and(&left);
            for v in fresh.iter() {
                left.clear(v);
                frontier.set(v);
            }
        }
        out.push(comp);
    }
    out
}

/// Most partial solutions the sweep keeps alive at once.
pub const SWEEP_STATE_BUDGET: usize = 1 << 18;

const NONE: u32 = u32::MAX;

struct SweepState {
    /// Chosen points still within `ε` of the sweep line, in sweep order.
    active: Vec<u32>,
    count: u32,
    /// Last entry of the solution in the arena.
    tail: u32,
}

/// Exact maximum `ε`-separated subset by a sweep along the widest axis.
///
/// A point can only conflict with chosen points less than `ε` behind it
/// along the axis, so partial solutions with the same such points are
/// interchangeable and only the largest is kept. Returns `None` when more
/// than `budget` partial solutions would be alive.
fn sweep_separated(cloud: &PointCloud, eps: f64, budget: usize) -> Option<Vec<usize>> {
    let (lo, hi) = cloud.bounding_box();
    let axis = (0..cloud.dim())
        .max_by(|&a, &b| (hi[a] - lo[a]).total_cmp(&(hi[b] - lo[b])).then(b.cmp(&a)))
        .unwrap_or(0);
    let x = |i: u32| cloud.point(i as usize)[axis];
    let mut order: Vec<u32> = (0..cloud.len() as u32).collect();
    order.sort_by(|&a, &b| x(a).total_cmp(&x(b)).then(a.cmp(&b)));
    let eps2 = eps * eps;

    let mut states = vec![SweepState {
        active: Vec::new(),
        count: 0,
        tail: NONE,
    }];
    let mut arena: Vec<(u32, u32)> = Vec::new();
    for &i in &order {
        let xi = x(i);
        let p = cloud.point(i as usize);
        let mut next: Vec<SweepState> = Vec::with_capacity(2 * states.len());
        let mut seen: hashbrown::HashMap<Vec<u32>, usize> = hashbrown::HashMap::new();
        let mut offer = |next: &mut Vec<SweepState>, active: Vec<u32>, count: u32, tail: u32| {
            match seen.get(&active) {
                Some(&k) => {
                    if count > next[k].count {
                        next[k].count = count;
                        next[k].tail = tail;
                    }
                }
                None => {
                    seen.insert(active.clone(), next.len());
                    next.push(SweepState { active, count, tail });
                }
            }
        };
        for st in &states {
            let kept: Vec<u32> = st
                .active
                .iter()
                .copied()
                .filter(|&j| (xi - x(j)) * (xi - x(j)) <= eps2)
                .collect();
            let free = kept.iter().all(|&j| dist2(p, cloud.point(j as usize)) > eps2);
            if free {
                let mut with = kept.clone();
                with.push(i);
                arena.push((i, st.tail));
                offer(&mut next, with, st.count + 1, (arena.len() - 1) as u32);
            }
            offer(&mut next, kept, st.count, st.tail);
        }
        if next.len() > budget {
            return None;
        }
        states = next;
    }
    let best = states.iter().max_by(|a, b| a.count.cmp(&b.count).then(b.tail.cmp(&a.tail)))?;
    let mut out = Vec::with_capacity(best.count as usize);
    let mut t = best.tail;
    while t != NONE {
        let (i, parent) = arena[t as usize];
        out.push(i as usize);
        t = parent;
    }
    out.sort_unstable();
    Some(out)
}

/// Sorted positions on the line and the matching indices.
fn line_order(cloud: &PointCloud) -> Vec<usize> {
    let mut order: Vec<usize> = (0..cloud.len()).collect();
    order.sort_by(|&a, &b| cloud.point(a)[0].total_cmp(&cloud.point(b)[0]).then(a.cmp(&b)));
    order
}

/// A maximum `ε`-separated subset (pairwise distances `> ε`).
///
/// On the line the left-to-right greedy pass is optimal; elsewhere the
/// answer comes from branch and bound with component splitting.
pub fn max_separated(cloud: &PointCloud, eps: f64) -> Result<Vec<usize>> {
    check_cap(cloud)?;
    if cloud.dim() == 1 {
        let mut out = Vec::new();
        let mut last = f64::NEG_INFINITY;
        for i in line_order(cloud) {
            let x = cloud.point(i)[0];
            let d = x - last;
            if out.is_empty() || d * d > eps * eps {
                out.push(i);
                last = x;
            }
        }
        out.sort_unstable();
        return Ok(out);
    }
    Ok(sweep_separated(cloud, eps, SWEEP_STATE_BUDGET)
        .unwrap_or_else(|| branch_and_bound_separated(cloud, eps)))
}

fn branch_and_bound_separated(cloud: &PointCloud, eps: f64) -> Vec<usize> {
    let adj = proximity(cloud, eps);
    let mut all = Vec::new();
    for comp in components_within(&adj, &Bits::full(cloud.len())) {
        let (mut solver, labels) = Mis::new(&adj, &comp);
        solver.expand(&mut Vec::new(), Bits::full(labels.len()));
        all.extend(solver.best.iter().map(|&v| labels[v]));
    }
    all.sort_unstable();
    all
}

struct Cover<'a> {
    /// Targets inside each centre's closed ball.
    ball: &'a [Bits],
    /// Centres able to cover each target.
    reach: &'a [Vec<usize>],
    /// Targets within `2ε` of each target.
    near: &'a [Bits],
    targets: usize,
}

impl Cover<'_> {
    /// Targets pairwise more than `2ε` apart need distinct centres.
    fn lower_bound(&self, uncovered: &Bits) -> usize {
        let mut order: Vec<usize> = uncovered.iter().collect();
        order.sort_by_key(|&e| (self.reach[e].len(), e));
        let mut blocked = Bits::new(self.targets);
        let mut count = 0;
        for e in order {
            if !blocked.has(e) {
                count += 1;
                blocked.set(e);
                for f in self.near[e].iter() {
                    blocked.set(f);
                }
            }
        }
        count
    }

    fn greedy(&self, uncovered: &Bits) -> Vec<usize> {
        let mut out = Vec::new();
        let mut left = uncovered.clone();
        while let Some(e) = left.first() {
            let c = self.reach[e]
                .iter()
                .copied()
                .max_by_key(|&c| (self.ball[c].and_count(&left), core::cmp::Reverse(c)))
                .expect("reachable");
            out.push(c);
            left = left.and_not(&self.ball[c]);
        }
        out
    }

    /// A minimum set of centres covering `uncovered`. Targets in different
    /// components of the `2ε` graph share no centre.
    fn solve(&self, uncovered: Bits) -> Vec<usize> {
        let parts = components_within(self.near, &uncovered);
        if parts.len() > 1 {
            return parts.into_iter().flat_map(|p| self.solve(p)).collect();
        }
        let mut best = self.greedy(&uncovered);
        self.search(uncovered, &mut Vec::new(), &mut best);
        best
    }

    fn search(&self, uncovered: Bits, chosen: &mut Vec<usize>, best: &mut Vec<usize>) {
        if uncovered.is_empty() {
            if chosen.len() < best.len() {
                *best = chosen.clone();
            }
            return;
        }
        if chosen.len() + self.lower_bound(&uncovered) >= best.len() {
            return;
        }
        let parts = components_within(self.near, &uncovered);
        if parts.len() > 1 {
            let mut whole = chosen.clone();
            for p in parts {
                whole.extend(self.solve(p));
                if whole.len() >= best.len() {
                    return;
                }
            }
            *best = whole;
            return;
        }
        let e = uncovered
            .iter()
            .min_by_key(|&e| (self.reach[e].len(), e))
            .expect("non-empty");
        let mut centres: Vec<(usize, Bits)> = self.reach[e]
            .iter()
            .map(|&c| (c, self.ball[c].and(&uncovered)))
            .collect();
        centres.sort_by_key(|(c, gain)| (core::cmp::Reverse(gain.count()), *c));
        for k in 0..centres.len() {
            if centres[..k].iter().any(|(_, g)| centres[k].1.is_subset_of(g)) {
                continue;
            }
            chosen.push(centres[k].0);
            let rest = uncovered.and_not(&centres[k].1);
            self.search(rest, chosen, best);
            chosen.pop();
        }
    }
}

/// A minimum set of cloud points whose closed `ε`-balls cover the cloud.
pub fn min_cover(cloud: &PointCloud, eps: f64) -> Result<Vec<usize>> {
    min_cover_from(cloud, cloud, eps)
}

fn unreachable_target() -> Error {
    crate::error::domain("a target lies farther than ε from every centre")
}

/// On the line: take the leftmost uncovered target and the rightmost centre
/// that reaches it, which is optimal by an exchange argument.
fn min_cover_line(targets: &PointCloud, centres: &PointCloud, eps: f64) -> Result<Vec<usize>> {
    let eps2 = eps * eps;
    let within = |a: f64, b: f64| (a - b) * (a - b) <= eps2;
    let ts = line_order(targets);
    let cs = line_order(centres);
    let cx: Vec<f64> = cs.iter().map(|&c| centres.point(c)[0]).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < ts.len() {
        let e = targets.point(ts[i])[0];
        let mut k = cx.partition_point(|&c| c < e || within(c, e));
        if k == 0 || !within(cx[k - 1], e) {
            return Err(unreachable_target());
        }
        k -= 1;
        while k > 0 && cx[k - 1] == cx[k] {
            k -= 1;
        }
        let c = cx[k];
        out.push(cs[k]);
        while i < ts.len() && within(targets.point(ts[i])[0], c) {
            i += 1;
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// A minimum set of `centres` whose closed `ε`-balls cover `targets`,
/// as indices into `centres`.
pub fn min_cover_from(targets: &PointCloud, centres: &PointCloud, eps: f64) -> Result<Vec<usize>> {
    check_cap(targets)?;
    check_cap(centres)?;
    if targets.dim() != centres.dim() {
        return Err(crate::error::domain("targets and centres differ in dimension"));
    }
    if targets.dim() == 1 {
        return min_cover_line(targets, centres, eps);
    }
    let (m, k) = (targets.len(), centres.len());
    let eps2 = eps * eps;
    let mut ball = vec![Bits::new(m); k];
    let mut reach = vec![Vec::new(); m];
    for e in 0..m {
        for c in 0..k {
            if dist2(targets.point(e), centres.point(c)) <= eps2 {
                ball[c].set(e);
                reach[e].push(c);
            }
        }
        if reach[e].is_empty() {
            return Err(unreachable_target());
        }
    }
    let near = proximity(targets, 2.0 * eps);
    let solver = Cover {
        ball: &ball,
        reach: &reach,
        near: &near,
        targets: m,
    };
    let mut all = solver.solve(Bits::full(m));
    all.sort_unstable();
    all.dedup();
    Ok(all)
}
