//! Pathwidth and rooted pathwidth of trees (used on dual trees).

use std::collections::HashMap;

use crate::error::DepthError;
use crate::graph::{DualTree, FaceId};

pub const PATHWIDTH_GUARD: usize = 25;

/// Exact pathwidth by the main-path recursion: 0 for one node, otherwise
/// `1 + min` over paths `P` of the largest pathwidth among the components
/// of `T - P`.
pub fn tree_pathwidth(t: &DualTree) -> Result<u32, DepthError> {
    tree_pathwidth_guarded(t, PATHWIDTH_GUARD)
}

pub fn tree_pathwidth_guarded(t: &DualTree, guard: usize) -> Result<u32, DepthError> {
    let k = t.node_count();
    if k == 0 {
        return Err(DepthError::EmptyTree);
    }
    let guard = guard.min(32);
    if k > guard {
        return Err(DepthError::Guard { what: "tree_pathwidth", size: k, guard });
    }
    let full = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let mut search = PathSearch { t, memo: HashMap::new() };
    Ok(search.pw(full))
}

struct PathSearch<'a> {
    t: &'a DualTree,
    memo: HashMap<u32, u32>,
}

impl PathSearch<'_> {
    fn pw(&mut self, mask: u32) -> u32 {
        if mask.count_ones() <= 1 {
            return 0;
        }
        if let Some(&v) = self.memo.get(&mask) {
            return v;
        }
        let nodes: Vec<usize> = (0..32).filter(|i| mask >> i & 1 == 1).collect();
        // Any single node as the path gives an upper bound of 1 + |T|.
        let mut best = nodes.len() as u32;
        'outer: for (i, &s) in nodes.iter().enumerate() {
            for &e in &nodes[i..] {
                let path = self.path_mask(mask, s, e);
                let mut worst = 0;
                for comp in self.components(mask & !path) {
                    worst = worst.max(self.pw(comp));
                    if 1 + worst >= best {
                        break;
                    }
                }
                best = best.min(1 + worst);
                if best == 1 {
                    break 'outer;
                }
            }
        }
        self.memo.insert(mask, best);
        best
    }

    fn path_mask(&self, mask: u32, s: usize, e: usize) -> u32 {
        let mut parent = [usize::MAX; 32];
        let mut stack = vec![s];
        parent[s] = s;
        while let Some(x) = stack.pop() {
            if x == e {
                break;
            }
            for &y in self.t.neighbors(x as FaceId) {
                let y = y as usize;
                if mask >> y & 1 == 1 && parent[y] == usize::MAX {
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        let mut out = 0u32;
        let mut x = e;
        loop {
            out |= 1 << x;
            if x == s {
                break;
            }
            x = parent[x];
        }
        out
    }

    fn components(&self, mut rest: u32) -> Vec<u32> {
        let mut out = Vec::new();
        while rest != 0 {
            let start = rest.trailing_zeros() as usize;
            let mut comp = 1u32 << start;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for &y in self.t.neighbors(x as FaceId) {
                    let y = y as usize;
                    if rest >> y & 1 == 1 && comp >> y & 1 == 0 {
                        comp |= 1 << y;
                        stack.push(y);
                    }
                }
            }
            rest &= !comp;
            out.push(comp);
        }
        out
    }
}

/// Rooted pathwidth with the path forced to start at `r`.
pub fn rooted_pathwidth(t: &DualTree, r: FaceId) -> Result<u32, DepthError> {
    let k = t.node_count();
    if k == 0 {
        return Err(DepthError::EmptyTree);
    }
    if r as usize >= k {
        return Err(DepthError::NoSuchNode(r));
    }
    let mut parent = vec![u32::MAX; k];
    let mut order = Vec::with_capacity(k);
    parent[r as usize] = r;
    order.push(r);
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        for &y in t.neighbors(x) {
            if parent[y as usize] == u32::MAX {
                parent[y as usize] = x;
                order.push(y);
            }
        }
        i += 1;
    }
    let mut val = vec![0u32; k];
    for &x in order.iter().rev() {
        // Two largest child values.
        let (mut top, mut second) = (0u32, 0u32);
        for &y in t.neighbors(x) {
            if parent[y as usize] != x || y == x {
                continue;
            }
            let v = val[y as usize];
            if v > top {
                second = top;
                top = v;
            } else if v > second {
                second = v;
            }
        }
        // Stop here, or continue into the largest child.
        val[x as usize] = (1 + top).min(top.max(1 + second));
    }
    Ok(val[r as usize])
}

/// Minimum rooted pathwidth over leaf roots; the smallest such leaf wins ties.
pub fn free_rooted_pathwidth(t: &DualTree) -> Result<(u32, FaceId), DepthError> {
    let mut candidates = t.leaves();
    if candidates.is_empty() {
        if t.node_count() == 0 {
            return Err(DepthError::EmptyTree);
        }
        candidates.push(0);
    }
    let mut best: Option<(u32, FaceId)> = None;
    for r in candidates {
        let v = rooted_pathwidth(t, r)?;
        if best.map_or(true, |(b, _)| v < b) {
            best = Some((v, r));
        }
    }
    Ok(best.expect("at least one candidate"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tree(k: usize, edges: &[(u32, u32)]) -> DualTree {
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        DualTree::from_adjacency(adj)
    }

    fn binary7() -> DualTree {
        tree(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
    }

    #[test]
    fn single_node() {
        let t = tree(1, &[]);
        assert_eq!(tree_pathwidth(&t).unwrap(), 0);
        assert_eq!(rooted_pathwidth(&t, 0).unwrap(), 1);
        assert_eq!(free_rooted_pathwidth(&t).unwrap(), (1, 0));
    }

    #[test]
    fn paths() {
        let t = tree(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(tree_pathwidth(&t).unwrap(), 1);
        assert_eq!(rooted_pathwidth(&t, 0).unwrap(), 1);
        assert_eq!(rooted_pathwidth(&t, 2).unwrap(), 2);
        assert_eq!(free_rooted_pathwidth(&t).unwrap(), (1, 0));
    }

    #[test]
    fn complete_binary_tree() {
        let t = binary7();
        assert_eq!(tree_pathwidth(&t).unwrap(), 1);
        assert_eq!(rooted_pathwidth(&t, 0).unwrap(), 3);
        assert_eq!(free_rooted_pathwidth(&t).unwrap(), (2, 3));
    }

    #[test]
    fn errors() {
        let t = binary7();
        assert_eq!(rooted_pathwidth(&t, 9), Err(DepthError::NoSuchNode(9)));
        assert!(matches!(tree_pathwidth_guarded(&t, 5), Err(DepthError::Guard { .. })));
        assert_eq!(tree_pathwidth(&tree(0, &[])), Err(DepthError::EmptyTree));
    }
}
