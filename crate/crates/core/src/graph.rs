//! Labelled directed graphs over profile ranks.

use std::collections::VecDeque;
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::game::{PlayerId, Profile};

/// An improvement relation materialized over every profile of a game.
/// State `i` is the profile of rank `i` in odometer order.
#[derive(Clone, Debug)]
pub struct StateGraph {
    degrees: Vec<usize>,
    adj: Vec<Vec<(u32, PlayerId)>>,
}

impl StateGraph {
    pub fn new(degrees: Vec<usize>, adj: Vec<Vec<(u32, PlayerId)>>) -> Self {
        StateGraph { degrees, adj }
    }

    pub fn n_states(&self) -> usize {
        self.adj.len()
    }

    pub fn n_edges(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn profile(&self, state: u32) -> Profile {
        Profile::unrank(state as u64, &self.degrees)
    }

    pub fn state(&self, s: &Profile) -> u32 {
        s.rank(&self.degrees) as u32
    }

    pub fn successors(&self, state: u32) -> &[(u32, PlayerId)] {
        &self.adj[state as usize]
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, PlayerId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, out)| out.iter().map(move |&(v, a)| (u as u32, v, a)))
    }

    pub fn has_edge(&self, from: u32, to: u32) -> bool {
        self.adj[from as usize].iter().any(|&(v, _)| v == to)
    }

    pub fn sinks(&self) -> Vec<u32> {
        (0..self.adj.len() as u32).filter(|&u| self.adj[u as usize].is_empty()).collect()
    }

    fn petgraph(&self) -> DiGraph<(), PlayerId, u32> {
        let mut g = DiGraph::with_capacity(self.adj.len(), self.n_edges());
        for _ in 0..self.adj.len() {
            g.add_node(());
        }
        for (u, v, a) in self.edges() {
            g.add_edge(u.into(), v.into(), a);
        }
        g
    }

    /// Component index per state; components come out in reverse topological order.
    pub fn scc_ids(&self) -> Vec<usize> {
        let mut id = vec![0; self.adj.len()];
        for (k, comp) in tarjan_scc(&self.petgraph()).into_iter().enumerate() {
            for n in comp {
                id[n.index()] = k;
            }
        }
        id
    }

    pub fn sccs(&self) -> Vec<Vec<u32>> {
        tarjan_scc(&self.petgraph())
            .into_iter()
            .map(|c| {
                let mut c: Vec<u32> = c.into_iter().map(|n| n.index() as u32).collect();
                c.sort_unstable();
                c
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.find_cycle().is_none()
    }

    /// Some closed walk `c[0] → c[1] → … → c[0]`, if any exists.
    pub fn find_cycle(&self) -> Option<Vec<u32>> {
        let ids = self.scc_ids();
        let (u, v, _) = self.edges().find(|&(u, v, _)| ids[u as usize] == ids[v as usize])?;
        Some(self.close_cycle(u, v, &ids))
    }

    /// A cycle using an edge labelled `a`, if any exists.
    pub fn cycle_through_label(&self, a: PlayerId) -> Option<Vec<u32>> {
        let ids = self.scc_ids();
        let (u, v, _) = self
            .edges()
            .find(|&(u, v, b)| b == a && ids[u as usize] == ids[v as usize])?;
        Some(self.close_cycle(u, v, &ids))
    }

    /// `u`, then a shortest path from `v` back to `u` inside their component.
    fn close_cycle(&self, u: u32, v: u32, ids: &[usize]) -> Vec<u32> {
        if u == v {
            return vec![u];
        }
        let comp = ids[u as usize];
        let mut prev = vec![u32::MAX; self.adj.len()];
        let mut queue = VecDeque::from([v]);
        prev[v as usize] = v;
        while let Some(x) = queue.pop_front() {
            if x == u {
                break;
            }
            for &(y, _) in &self.adj[x as usize] {
                if ids[y as usize] == comp && prev[y as usize] == u32::MAX {
                    prev[y as usize] = x;
                    queue.push_back(y);
                }
            }
        }
        let mut back = vec![u];
        let mut x = u;
        while x != v {
            x = prev[x as usize];
            back.push(x);
        }
        // back = u, …, v in reverse walk order; the cycle is u → v → … → u
        let mut cycle = vec![u];
        cycle.extend(back[1..].iter().rev());
        cycle
    }

    /// Length of the shortest cycle, if the graph has one.
    pub fn girth(&self) -> Option<usize> {
        let ids = self.scc_ids();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.adj.len()];
        for start in 0..self.adj.len() as u32 {
            let cyclic_here = self.adj[start as usize]
                .iter()
                .any(|&(v, _)| ids[v as usize] == ids[start as usize]);
            if !cyclic_here {
                continue;
            }
            let mut touched = vec![start];
            dist[start as usize] = 0;
            let mut queue = VecDeque::from([start]);
            'bfs: while let Some(x) = queue.pop_front() {
                for &(y, _) in &self.adj[x as usize] {
                    if y == start {
                        let len = dist[x as usize] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                        break 'bfs;
                    }
                    if dist[y as usize] == usize::MAX && ids[y as usize] == ids[start as usize] {
                        dist[y as usize] = dist[x as usize] + 1;
                        touched.push(y);
                        queue.push_back(y);
                    }
                }
            }
            for t in touched {
                dist[t as usize] = usize::MAX;
            }
        }
        best
    }

    /// Whether `states` (closing back to its first entry) is a walk in the graph.
    pub fn is_closed_walk(&self, states: &[u32]) -> bool {
        !states.is_empty()
            && (0..states.len()).all(|i| self.has_edge(states[i], states[(i + 1) % states.len()]))
    }

    fn topological_order(&self) -> Option<Vec<u32>> {
        let mut indegree = vec![0usize; self.adj.len()];
        for (_, v, _) in self.edges() {
            indegree[v as usize] += 1;
        }
        let mut order: Vec<u32> = (0..self.adj.len() as u32).filter(|&u| indegree[u as usize] == 0).collect();
        let mut head = 0;
        while head < order.len() {
            let u = order[head];
            head += 1;
            for &(v, _) in &self.adj[u as usize] {
                indegree[v as usize] -= 1;
                if indegree[v as usize] == 0 {
                    order.push(v);
                }
            }
        }
        (order.len() == self.adj.len()).then_some(order)
    }

    /// Edge count of the longest path; `None` when the graph has a cycle.
    pub fn longest_path(&self) -> Option<usize> {
        self.longest_weighted(|_| 1)
    }

    /// Largest number of `a`-labelled edges along any path; `None` on cycles.
    pub fn longest_label_count(&self, a: PlayerId) -> Option<usize> {
        self.longest_weighted(|b| usize::from(b == a))
    }

    fn longest_weighted(&self, weight: impl Fn(PlayerId) -> usize) -> Option<usize> {
        let order = self.topological_order()?;
        let mut best = vec![0usize; self.adj.len()];
        for &u in order.iter().rev() {
            best[u as usize] = self.adj[u as usize]
                .iter()
                .map(|&(v, a)| weight(a) + best[v as usize])
                .max()
                .unwrap_or(0);
        }
        Some(best.into_iter().max().unwrap_or(0))
    }

    /// DOT text; `node_label` names states, `edge_label` names players.
    pub fn to_dot(&self, node_label: impl Fn(u32) -> String, edge_label: impl Fn(PlayerId) -> String) -> String {
        let mut out = String::from("digraph improvement {\n");
        for u in 0..self.adj.len() as u32 {
            let shape = if self.adj[u as usize].is_empty() { "doublecircle" } else { "ellipse" };
            let _ = writeln!(out, "  s{u} [label=\"{}\", shape={shape}];", escape(&node_label(u)));
        }
        for (u, v, a) in self.edges() {
            let _ = writeln!(out, "  s{u} -> s{v} [label=\"{}\"];", escape(&edge_label(a)));
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
