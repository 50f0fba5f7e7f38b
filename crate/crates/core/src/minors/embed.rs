//! Subhypergraph embedding of line structures into uniform hypergraphs.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::matroid::LineStructure;
use crate::subset::{ElementSet, MAX_ELEMENTS};

/// An injective map from the support of a target line structure into a host
/// ground set, sending every target line onto a host edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    map: Vec<(u32, u32)>,
    lines: Vec<(ElementSet, ElementSet)>,
}

impl Embedding {
    /// `(target element, host element)` pairs, ascending by target element.
    pub fn map(&self) -> &[(u32, u32)] {
        &self.map
    }

    /// `(target line, host edge)` pairs, ascending by target line.
    pub fn lines(&self) -> &[(ElementSet, ElementSet)] {
        &self.lines
    }

    pub fn apply(&self, e: u32) -> Option<u32> {
        self.map
            .binary_search_by_key(&e, |&(t, _)| t)
            .ok()
            .map(|i| self.map[i].1)
    }

    /// The host elements hit by the map.
    pub fn image(&self) -> ElementSet {
        self.map.iter().map(|&(_, h)| h).collect()
    }

    /// The host edges hit by the map, ascending.
    pub fn image_edges(&self) -> Vec<ElementSet> {
        let mut edges: Vec<ElementSet> = self.lines.iter().map(|&(_, h)| h).collect();
        edges.sort_unstable();
        edges
    }
}

struct Search<'a> {
    host: &'a [ElementSet],
    order: Vec<ElementSet>,
    forward: [u32; MAX_ELEMENTS + 1],
    used: ElementSet,
    chosen: Vec<ElementSet>,
}

impl Search<'_> {
    fn snapshot(&self) -> Embedding {
        let mut map: Vec<(u32, u32)> = (1..=MAX_ELEMENTS as u32)
            .filter(|&e| self.forward[e as usize] != 0)
            .map(|e| (e, self.forward[e as usize]))
            .collect();
        map.sort_unstable();
        let mut lines: Vec<(ElementSet, ElementSet)> = self
            .order
            .iter()
            .copied()
            .zip(self.chosen.iter().copied())
            .collect();
        lines.sort_unstable();
        Embedding { map, lines }
    }

    fn image_of(&self, set: ElementSet) -> ElementSet {
        set.iter().map(|e| self.forward[e as usize]).collect()
    }

    fn run(
        &mut self,
        depth: usize,
        visit: &mut dyn FnMut(&Embedding) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if depth == self.order.len() {
            return visit(&self.snapshot());
        }
        let line = self.order[depth];
        let mapped: ElementSet = line
            .iter()
            .filter(|&e| self.forward[e as usize] != 0)
            .collect();
        let fixed = self.image_of(mapped);
        let unmapped = (line - mapped).to_vec();
        for &edge in self.host {
            if edge.len() != line.len() || !fixed.is_subset(edge) {
                continue;
            }
            let free = edge - fixed;
            if !free.is_disjoint(self.used) {
                continue;
            }
            self.chosen.push(edge);
            let targets = free.to_vec();
            let mut taken = vec![false; targets.len()];
            self.assign(depth, &unmapped, 0, &targets, &mut taken, visit)?;
            self.chosen.pop();
        }
        ControlFlow::Continue(())
    }

    /// Tries every bijection `unmapped -> targets`, then recurses.
    fn assign(
        &mut self,
        depth: usize,
        unmapped: &[u32],
        next: usize,
        targets: &[u32],
        taken: &mut [bool],
        visit: &mut dyn FnMut(&Embedding) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if next == unmapped.len() {
            return self.run(depth + 1, visit);
        }
        let e = unmapped[next];
        for i in 0..targets.len() {
            if taken[i] {
                continue;
            }
            taken[i] = true;
            self.forward[e as usize] = targets[i];
            self.used = self.used.with(targets[i]);
            let flow = self.assign(depth, unmapped, next + 1, targets, taken, visit);
            self.used = self.used.without(targets[i]);
            self.forward[e as usize] = 0;
            taken[i] = false;
            flow?;
        }
        ControlFlow::Continue(())
    }
}

/// Target lines by decreasing number of other lines they meet, then bitmask.
fn line_order(target: &LineStructure) -> Vec<ElementSet> {
    let lines = target.lines();
    let mut keyed: Vec<(usize, ElementSet)> = lines
        .iter()
        .map(|&l| {
            let degree = lines
                .iter()
                .filter(|&&m| m != l && !m.is_disjoint(l))
                .count();
            (degree, l)
        })
        .collect();
    keyed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    keyed.into_iter().map(|(_, l)| l).collect()
}

/// Calls `visit` on every embedding of `target` into the `host` edges, in
/// search order, until it breaks.
pub fn for_each_embedding(
    host: &[ElementSet],
    target: &LineStructure,
    mut visit: impl FnMut(&Embedding) -> ControlFlow<()>,
) {
    let mut sorted = host.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut search = Search {
        host: &sorted,
        order: line_order(target),
        forward: [0; MAX_ELEMENTS + 1],
        used: ElementSet::EMPTY,
        chosen: Vec::new(),
    };
    let _ = search.run(0, &mut visit);
}

/// First embedding of `target` into the `host` edges: lines are placed by
/// decreasing degree, each onto host edges in bitmask order.
pub fn contains_line_structure(host: &[ElementSet], target: &LineStructure) -> Option<Embedding> {
    let mut found = None;
    for_each_embedding(host, target, |e| {
        found = Some(e.clone());
        ControlFlow::Break(())
    });
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[u32]) -> ElementSet {
        xs.iter().copied().collect()
    }

    fn ls(rank: usize, lines: &[&[u32]]) -> LineStructure {
        LineStructure::new(rank, lines.iter().map(|l| set(l))).unwrap()
    }

    #[test]
    fn single_line_maps_to_first_edge() {
        let host = [set(&[2, 5, 6]), set(&[1, 2, 3])];
        let e = contains_line_structure(&host, &ls(3, &[&[4, 5, 6]])).unwrap();
        assert_eq!(e.lines(), &[(set(&[4, 5, 6]), set(&[1, 2, 3]))]);
        assert_eq!(e.map(), &[(4, 1), (5, 2), (6, 3)]);
        assert!(contains_line_structure(&[], &ls(3, &[&[1, 2, 3]])).is_none());
    }

    #[test]
    fn disjoint_lines_need_disjoint_edges() {
        let target = ls(2, &[&[1, 2], &[3, 4]]);
        assert!(contains_line_structure(&[set(&[1, 2]), set(&[2, 3])], &target).is_none());
        assert!(
            contains_line_structure(&[set(&[1, 2]), set(&[2, 3]), set(&[5, 6])], &target).is_some()
        );
    }

    #[test]
    fn whirl_into_itself() {
        let lines = [set(&[1, 2, 4]), set(&[2, 3, 5]), set(&[1, 3, 6])];
        let target = LineStructure::new(3, lines).unwrap();
        let e = contains_line_structure(target.lines(), &target).unwrap();
        assert_eq!(e.image_edges(), target.lines().to_vec());
        for (t, h) in e.lines() {
            let mapped: ElementSet = t.iter().map(|x| e.apply(x).unwrap()).collect();
            assert_eq!(mapped, *h);
        }
    }

    #[test]
    fn empty_target_embeds_trivially() {
        let e = contains_line_structure(&[], &LineStructure::empty(3)).unwrap();
        assert!(e.map().is_empty());
    }

    #[test]
    fn counts_all_automorphisms() {
        // a single 3-line into a single 3-edge: 3! bijections
        let mut count = 0;
        for_each_embedding(&[set(&[1, 2, 3])], &ls(3, &[&[1, 2, 3]]), |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 6);
        // the whirl's three lines form a triangle: 6 automorphisms of the
        // triangle, each fixing the loose elements
        let w = ls(3, &[&[1, 2, 4], &[2, 3, 5], &[1, 3, 6]]);
        let mut count = 0;
        for_each_embedding(w.lines(), &w, |_| {
            count += 1;
            ControlFlow::Continue(())
        });
        assert_eq!(count, 6);
    }

    #[test]
    fn overlapping_host_rejects_forced_collisions() {
        // two lines sharing one element cannot land on disjoint edges
        let target = ls(3, &[&[1, 2, 3], &[3, 4, 5]]);
        assert!(contains_line_structure(&[set(&[1, 2, 3]), set(&[4, 5, 6])], &target).is_none());
        let host = [set(&[1, 2, 3]), set(&[4, 5, 6]), set(&[3, 6, 7])];
        let e = contains_line_structure(&host, &target).unwrap();
        assert_eq!(e.image().len(), 5);
    }
}
