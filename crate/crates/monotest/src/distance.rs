//! Exact distance-to-monotonicity oracles.
//!
//! On the line the distance equals `n - LNDS(f)`: the points off a longest
//! non-decreasing subsequence must change, and changing exactly those always
//! suffices when values may land anywhere in an unbounded total order. On a
//! general poset the distance equals the minimum vertex cover of the
//! violation graph: a modification set must touch every violating pair, and
//! deleting a cover leaves a violation-free partial function that extends
//! monotonically.

use crate::error::{Error, Result};
use crate::function::{LineFunction, PosetOrder, ViolationPair};

/// Ground-set cap for the exact poset oracle. The oracle is exponential in
/// the worst case; this keeps it at desk scale.
pub const POSET_ORACLE_CAP: u64 = 1 << 12;

/// Length of the longest non-decreasing subsequence, by patience sorting in
/// `O(n log n)` comparisons.
pub fn lnds_length(f: &LineFunction) -> u64 {
    let values = f.values();
    // tails[len] = index of the smallest possible last element of a
    // non-decreasing subsequence of length len+1.
    let mut tails: Vec<usize> = Vec::new();
    for (i, v) in values.iter().enumerate() {
        // First tail strictly greater than v gets replaced.
        let pos = tails.partition_point(|&t| values[t] <= *v);
        if pos == tails.len() {
            tails.push(i);
        } else {
            tails[pos] = i;
        }
    }
    tails.len() as u64
}

/// Exact distance to monotone on the line: the number of points whose values
/// must change, with replacement values unconstrained by the range bound.
pub fn distance_to_monotone_line(f: &LineFunction) -> u64 {
    f.n() - lnds_length(f)
}

/// All violating pairs of `f` under `order`, in lexicographic order.
/// Quadratic in the ground-set size.
pub fn violating_pairs(f: &LineFunction, order: &PosetOrder) -> Result<Vec<ViolationPair>> {
    let n = order.ground_size()?;
    if f.n() != n {
        return Err(Error::DomainMismatch { expected: n, actual: f.n() });
    }
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            if order.leq(x, y) && f.value(x) > f.value(y) {
                pairs.push(ViolationPair::unchecked(x, y));
            }
        }
    }
    Ok(pairs)
}

/// A maximal set of pairwise-disjoint violating pairs, greedily matched in
/// lexicographic order. Its size is a lower bound on the distance.
pub fn disjoint_violating_pairs_greedy(
    f: &LineFunction,
    order: &PosetOrder,
) -> Result<Vec<ViolationPair>> {
    let n = order.ground_size()?;
    if f.n() != n {
        return Err(Error::DomainMismatch { expected: n, actual: f.n() });
    }
    let mut used = vec![false; n as usize];
    let mut pairs = Vec::new();
    for x in 0..n {
        if used[x as usize] {
            continue;
        }
        for y in x + 1..n {
            if !used[y as usize] && order.leq(x, y) && f.value(x) > f.value(y) {
                used[x as usize] = true;
                used[y as usize] = true;
                pairs.push(ViolationPair::unchecked(x, y));
                break;
            }
        }
    }
    Ok(pairs)
}

/// Exact distance to monotone over an arbitrary poset order, as the minimum
/// vertex cover of the violation graph. Connected components are solved
/// independently; bipartite components via maximum matching, the rest by
/// branch and bound. Exponential worst case, hence the ground-set cap.
pub fn distance_to_monotone_poset(f: &LineFunction, order: &PosetOrder) -> Result<u64> {
    let n = order.ground_size()?;
    if n > POSET_ORACLE_CAP {
        return Err(Error::capacity(format!(
            "poset distance oracle handles ground sets up to {POSET_ORACLE_CAP} points, got {n}"
        )));
    }
    let pairs = violating_pairs(f, order)?;
    if pairs.is_empty() {
        return Ok(0);
    }

    // Compact the graph to the vertices that occur in some violation.
    let mut vertex_ids: Vec<u64> = pairs.iter().flat_map(|p| [p.x, p.y]).collect();
    vertex_ids.sort_unstable();
    vertex_ids.dedup();
    let index_of = |v: u64| vertex_ids.binary_search(&v).expect("vertex present");
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertex_ids.len()];
    for p in &pairs {
        let (a, b) = (index_of(p.x), index_of(p.y));
        adj[a].push(b);
        adj[b].push(a);
    }

    let mut total = 0u64;
    let mut component = vec![usize::MAX; adj.len()];
    for start in 0..adj.len() {
        if component[start] != usize::MAX {
            continue;
        }
        let mut members = Vec::new();
        let mut stack = vec![start];
        component[start] = start;
        while let Some(v) = stack.pop() {
            members.push(v);
            for &w in &adj[v] {
                if component[w] == usize::MAX {
                    component[w] = start;
                    stack.push(w);
                }
            }
        }
        total += component_cover(&adj, &members)?;
    }
    Ok(total)
}

/// Minimum vertex cover size of one connected component.
fn component_cover(adj: &[Vec<usize>], members: &[usize]) -> Result<u64> {
    if let Some(sides) = two_color(adj, members) {
        return Ok(bipartite_matching(adj, members, &sides));
    }
    if members.len() > 64 {
        return Err(Error::capacity(format!(
            "non-bipartite violation component with {} vertices exceeds the branch-and-bound cap",
            members.len()
        )));
    }
    Ok(branch_and_bound_cover(adj, members))
}

/// 2-coloring; `Some(colors)` when the component is bipartite.
fn two_color(adj: &[Vec<usize>], members: &[usize]) -> Option<Vec<bool>> {
    let mut color = vec![None; adj.len()];
    let mut stack = vec![members[0]];
    color[members[0]] = Some(false);
    while let Some(v) = stack.pop() {
        let c = color[v].unwrap();
        for &w in &adj[v] {
            match color[w] {
                None => {
                    color[w] = Some(!c);
                    stack.push(w);
                }
                Some(cw) if cw == c => return None,
                _ => {}
            }
        }
    }
    Some(members.iter().map(|&v| color[v].unwrap()).collect())
}

/// Maximum matching of a bipartite component via augmenting paths; by
/// Konig's theorem this equals the minimum vertex cover size.
fn bipartite_matching(adj: &[Vec<usize>], members: &[usize], sides: &[bool]) -> u64 {
    let left: Vec<usize> = members
        .iter()
        .zip(sides)
        .filter(|(_, &s)| !s)
        .map(|(&v, _)| v)
        .collect();
    let mut matched: Vec<Option<usize>> = vec![None; adj.len()];
    let mut size = 0u64;
    for &u in &left {
        let mut visited = vec![false; adj.len()];
        if augment(adj, u, &mut matched, &mut visited) {
            size += 1;
        }
    }
    size
}

fn augment(adj: &[Vec<usize>], u: usize, matched: &mut [Option<usize>], visited: &mut [bool]) -> bool {
    for &w in &adj[u] {
        if visited[w] {
            continue;
        }
        visited[w] = true;
        if matched[w].is_none() || augment(adj, matched[w].unwrap(), matched, visited) {
            matched[w] = Some(u);
            return true;
        }
    }
    false
}

/// Branch-and-bound minimum vertex cover on a component of at most 64
/// vertices, with degree-one reduction and a greedy-matching lower bound.
fn branch_and_bound_cover(adj: &[Vec<usize>], members: &[usize]) -> u64 {
    let n = members.len();
    let local = |v: usize| members.iter().position(|&m| m == v).unwrap();
    let mut mask_adj = vec![0u64; n];
    for (i, &v) in members.iter().enumerate() {
        for &w in &adj[v] {
            mask_adj[i] |= 1 << local(w);
        }
    }
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best = n as u64;
    solve_cover(&mask_adj, all, 0, &mut best);
    best
}

fn solve_cover(adj: &[u64], alive: u64, current: u64, best: &mut u64) {
    if current >= *best {
        return;
    }
    // Degree-one reduction: cover the neighbor of any pendant vertex.
    let mut alive = alive;
    let mut current = current;
    loop {
        let mut reduced = false;
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if alive & (1 << v) == 0 {
                continue;
            }
            let nb = adj[v] & alive;
            if nb.count_ones() == 1 {
                let w = nb.trailing_zeros();
                alive &= !(1 << v);
                alive &= !(1u64 << w);
                current += 1;
                reduced = true;
                if current >= *best {
                    return;
                }
            }
        }
        if !reduced {
            break;
        }
    }

    // Pick the highest-degree live vertex; none with edges means done.
    let mut pick = None;
    let mut max_deg = 0;
    let mut rest = alive;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let deg = (adj[v] & alive).count_ones();
        if deg > max_deg {
            max_deg = deg;
            pick = Some(v);
        }
    }
    let Some(v) = pick else {
        *best = (*best).min(current);
        return;
    };

    // Lower bound: a greedy matching of the live graph.
    let mut lb = 0u64;
    let mut scratch = alive;
    while scratch != 0 {
        let a = scratch.trailing_zeros() as usize;
        scratch &= scratch - 1;
        let nb = adj[a] & scratch;
        if nb != 0 {
            let b = nb.trailing_zeros();
            scratch &= !(1u64 << b);
            lb += 1;
        }
    }
    if current + lb >= *best {
        return;
    }

    // Branch: v in the cover, or all of v's neighbors in the cover.
    solve_cover(adj, alive & !(1 << v), current + 1, best);
    let nb = adj[v] & alive;
    solve_cover(
        adj,
        alive & !nb & !(1 << v),
        current + u64::from(nb.count_ones()),
        best,
    );
}
