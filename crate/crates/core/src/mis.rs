//! Exact maximum independent set via branch-and-bound maximum clique on the
//! complement graph, with a greedy-coloring upper bound. Deterministic for a
//! fixed vertex order; the node budget turns the result into a lower bound
//! when exceeded.

#[derive(Clone)]
pub struct Bits {
    w: Vec<u64>,
}

impl Bits {
    pub fn new(n: usize) -> Bits {
        Bits { w: vec![0; n.div_ceil(64)] }
    }

    pub fn set(&mut self, i: usize) {
        self.w[i / 64] |= 1 << (i % 64);
    }

    pub fn clear(&mut self, i: usize) {
        self.w[i / 64] &= !(1 << (i % 64));
    }

    pub fn test(&self, i: usize) -> bool {
        self.w[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.w.iter().all(|&x| x == 0)
    }

    pub fn count(&self) -> usize {
        self.w.iter().map(|x| x.count_ones() as usize).sum()
    }

    pub fn first(&self) -> Option<usize> {
        for (i, &x) in self.w.iter().enumerate() {
            if x != 0 {
                return Some(i * 64 + x.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn and(&self, other: &Bits) -> Bits {
        Bits { w: self.w.iter().zip(&other.w).map(|(a, b)| a & b).collect() }
    }

    pub fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.w.iter_mut().zip(&other.w) {
            *a &= !b;
        }
    }
}

pub struct MisResult {
    /// Vertex indices of the independent set (original labels, sorted).
    pub set: Vec<usize>,
    /// True when the branch-and-bound ran to completion.
    pub optimal: bool,
    pub nodes: u64,
}

struct Search<'a> {
    nb: &'a [Bits],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
    budget: u64,
    exceeded: bool,
}

impl Search<'_> {
    /// Greedy coloring of the candidate set; returns (vertex, color) sorted
    /// by color ascending, so iterating in reverse visits high-bound
    /// vertices first.
    fn color_sort(&self, p: &Bits) -> Vec<(usize, usize)> {
        let mut uncolored = p.clone();
        let mut out = Vec::with_capacity(p.count());
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut avail = uncolored.clone();
            while let Some(v) = avail.first() {
                avail.clear(v);
                uncolored.clear(v);
                avail.and_not_assign(&self.nb[v]);
                out.push((v, color));
            }
        }
        out
    }

    fn expand(&mut self, p: &Bits) {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exceeded = true;
            return;
        }
        if p.is_empty() {
            if self.current.len() > self.best.len() {
                self.best = self.current.clone();
            }
            return;
        }
        let colored = self.color_sort(p);
        let mut p = p.clone();
        for &(v, bound) in colored.iter().rev() {
            if self.current.len() + bound <= self.best.len() || self.exceeded {
                return;
            }
            self.current.push(v);
            self.expand(&p.and(&self.nb[v]));
            self.current.pop();
            p.clear(v);
        }
    }
}

/// Maximum independent set of the graph on vertices 0..n given by `adj`.
pub fn max_independent_set(n: usize, adj: &dyn Fn(usize, usize) -> bool, node_budget: u64) -> MisResult {
    // complement adjacency with a static degree-descending order
    let mut comp: Vec<Bits> = (0..n).map(|_| Bits::new(n)).collect();
    let mut deg = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if !adj(i, j) {
                comp[i].set(j);
                comp[j].set(i);
                deg[i] += 1;
                deg[j] += 1;
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| deg[b].cmp(&deg[a]).then(a.cmp(&b)));
    let mut pos = vec![0usize; n];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let nb: Vec<Bits> = order
        .iter()
        .map(|&old| {
            let mut b = Bits::new(n);
            for j in 0..n {
                if comp[old].test(j) {
                    b.set(pos[j]);
                }
            }
            b
        })
        .collect();
    let mut all = Bits::new(n);
    for i in 0..n {
        all.set(i);
    }
    let mut search = Search { nb: &nb, best: Vec::new(), current: Vec::new(), nodes: 0, budget: node_budget, exceeded: false };
    search.expand(&all);
    let mut set: Vec<usize> = search.best.iter().map(|&v| order[v]).collect();
    set.sort_unstable();
    MisResult { set, optimal: !search.exceeded, nodes: search.nodes }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edgeless_graph() {
        let r = max_independent_set(7, &|_, _| false, 1 << 20);
        assert_eq!(r.set, (0..7).collect::<Vec<_>>());
        assert!(r.optimal);
    }

    #[test]
    fn complete_graph() {
        let r = max_independent_set(6, &|_, _| true, 1 << 20);
        assert_eq!(r.set.len(), 1);
        assert!(r.optimal);
    }

    #[test]
    fn five_cycle() {
        let adj = |a: usize, b: usize| (a + 1) % 5 == b || (b + 1) % 5 == a;
        let r = max_independent_set(5, &adj, 1 << 20);
        assert_eq!(r.set.len(), 2);
    }

    #[test]
    fn petersen_graph() {
        // outer 5-cycle, inner pentagram, spokes; alpha = 4
        let adj = |a: usize, b: usize| {
            let (a, b) = (a.min(b), a.max(b));
            (a < 5 && b < 5 && ((a + 1) % 5 == b || (b + 1) % 5 == a))
                || (a >= 5 && b >= 5 && ((a - 5 + 2) % 5 == b - 5 || (b - 5 + 2) % 5 == a - 5))
                || (b == a + 5)
        };
        let r = max_independent_set(10, &adj, 1 << 20);
        assert_eq!(r.set.len(), 4);
        for (i, &u) in r.set.iter().enumerate() {
            for &v in &r.set[i + 1..] {
                assert!(!adj(u, v));
            }
        }
    }

    #[test]
    fn budget_exhaustion_flags_result() {
        let adj = |a: usize, b: usize| (a + b) % 3 == 0;
        let r = max_independent_set(30, &adj, 2);
        assert!(!r.optimal);
    }
}
