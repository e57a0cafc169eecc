//! Brute-force reference implementations for small graphs.
//!
//! Nothing here shares code with the main algorithms beyond
//! [`Graph::has_edge`]: no canonical forms, no chain labelling, no pruning
//! heuristics. Everything is exponential and meant for `n <= 9` or so.

use crate::graph::Graph;

/// Calls `f` on every assignment in `{1..=q}^n`, stopping early when it
/// returns `true`. Returns whether any call did.
fn any_assignment(n: usize, q: usize, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if q == 0 {
        return n == 0 && f(&[]);
    }
    let mut a = vec![1usize; n];
    loop {
        if f(&a) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            if a[i] < q {
                a[i] += 1;
                break;
            }
            a[i] = 1;
            i += 1;
        }
    }
}

pub fn proper(g: &Graph, a: &[usize]) -> bool {
    let n = g.n();
    (0..n).all(|u| (u + 1..n).all(|v| !g.has_edge(u, v) || a[u] != a[v]))
}

/// Smallest `q` admitting a proper assignment, by trying `q = 0, 1, ...`.
pub fn chromatic_number(g: &Graph) -> usize {
    (0..=g.n())
        .find(|&q| any_assignment(g.n(), q, &mut |a| proper(g, a)))
        .expect("n colors always suffice")
}

/// Number of proper assignments with colors `1..=q`.
pub fn count_proper(g: &Graph, q: usize) -> u64 {
    let mut count = 0;
    any_assignment(g.n(), q, &mut |a| {
        if proper(g, a) {
            count += 1;
        }
        false
    });
    count
}

/// Vertices whose neighbors show every color in `1..=q` except their own.
pub fn critical(g: &Graph, a: &[usize], q: usize) -> Vec<usize> {
    let n = g.n();
    (0..n)
        .filter(|&v| {
            (1..=q)
                .filter(|&c| c != a[v])
                .all(|c| (0..n).any(|u| g.has_edge(u, v) && a[u] == c))
        })
        .collect()
}

/// Whether `u` reaches `v` using only vertices colored `ci` or `cj`.
pub fn same_chain(g: &Graph, a: &[usize], ci: usize, cj: usize, u: usize, v: usize) -> bool {
    let n = g.n();
    let inside = |x: usize| a[x] == ci || a[x] == cj;
    if !inside(u) || !inside(v) {
        return false;
    }
    let mut reach = vec![false; n];
    reach[u] = true;
    // Relax until nothing changes.
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            if !reach[x] {
                continue;
            }
            for y in 0..n {
                if !reach[y] && inside(y) && g.has_edge(x, y) {
                    reach[y] = true;
                    changed = true;
                }
            }
        }
    }
    reach[v]
}

/// Whether the assignment is a correct coloring: every color used and some
/// choice of one critical vertex per color has all pairs in a common chain.
/// Tries every transversal.
pub fn is_correct(g: &Graph, a: &[usize], q: usize) -> bool {
    if !proper(g, a) || (1..=q).any(|c| !a.contains(&c)) {
        return false;
    }
    let crit = critical(g, a, q);
    let per_color: Vec<Vec<usize>> = (1..=q)
        .map(|c| crit.iter().copied().filter(|&v| a[v] == c).collect())
        .collect();
    if per_color.iter().any(Vec::is_empty) {
        return false;
    }
    let mut idx = vec![0usize; q];
    loop {
        let pick: Vec<usize> = (0..q).map(|c| per_color[c][idx[c]]).collect();
        let ok = (0..q).all(|x| (x + 1..q).all(|y| same_chain(g, a, x + 1, y + 1, pick[x], pick[y])));
        if ok {
            return true;
        }
        let mut i = 0;
        loop {
            if i == q {
                return false;
            }
            idx[i] += 1;
            if idx[i] < per_color[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// Whether any proper assignment with colors `1..=q` is correct.
pub fn correct_coloring_exists(g: &Graph, q: usize) -> bool {
    any_assignment(g.n(), q, &mut |a| is_correct(g, a, q))
}

/// Whether `g` has a `K_q` minor: tries every map from vertices to
/// `{unused, 1..=q}` and checks that the `q` parts are nonempty, connected,
/// and pairwise joined by an edge.
pub fn has_complete_minor(g: &Graph, q: usize) -> bool {
    let n = g.n();
    if q == 0 {
        return true;
    }
    if q > n {
        return false;
    }
    // Label 0 means "not in any branch set".
    let mut found = false;
    any_assignment(n, q + 1, &mut |raw| {
        let part: Vec<usize> = raw.iter().map(|&x| x - 1).collect();
        if (1..=q).any(|s| !part.contains(&s)) {
            return false;
        }
        for s in 1..=q {
            let members: Vec<usize> = (0..n).filter(|&v| part[v] == s).collect();
            let mut reach = vec![false; n];
            reach[members[0]] = true;
            let mut changed = true;
            while changed {
                changed = false;
                for &x in &members {
                    if reach[x] {
                        for &y in &members {
                            if !reach[y] && g.has_edge(x, y) {
                                reach[y] = true;
                                changed = true;
                            }
                        }
                    }
                }
            }
            if members.iter().any(|&m| !reach[m]) {
                return false;
            }
        }
        for s in 1..=q {
            for t in s + 1..=q {
                let joined = (0..n).any(|u| part[u] == s && (0..n).any(|v| part[v] == t && g.has_edge(u, v)));
                if !joined {
                    return false;
                }
            }
        }
        found = true;
        true
    });
    found
}
