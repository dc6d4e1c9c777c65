//! Maximum bipartite matching by augmenting paths (Kuhn's algorithm).

/// Finds a maximum matching in the bipartite graph given by `adjacency`
/// (for each left vertex, the list of right vertices it may pair with).
/// Returns, for each left vertex, its matched right vertex if any.
pub fn maximum_bipartite_matching(
    left_count: usize,
    right_count: usize,
    adjacency: &[Vec<usize>],
) -> Vec<Option<usize>> {
    assert_eq!(adjacency.len(), left_count);
    let mut right_match: Vec<Option<usize>> = vec![None; right_count];

    fn try_augment(
        u: usize,
        adjacency: &[Vec<usize>],
        seen: &mut [bool],
        right_match: &mut [Option<usize>],
    ) -> bool {
        for &v in &adjacency[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let free = match right_match[v] {
                None => true,
                Some(owner) => try_augment(owner, adjacency, seen, right_match),
            };
            if free {
                right_match[v] = Some(u);
                return true;
            }
        }
        false
    }

    for u in 0..left_count {
        let mut seen = vec![false; right_count];
        try_augment(u, adjacency, &mut seen, &mut right_match);
    }

    let mut left_match = vec![None; left_count];
    for (v, owner) in right_match.iter().enumerate() {
        if let Some(u) = owner {
            left_match[*u] = Some(v);
        }
    }
    left_match
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_matching_on_a_cycle() {
        // 0-0, 0-1, 1-1, 1-2, 2-2, 2-0: a 6-cycle has a perfect matching.
        let adjacency = vec![vec![0, 1], vec![1, 2], vec![2, 0]];
        let matching = maximum_bipartite_matching(3, 3, &adjacency);
        assert!(matching.iter().all(Option::is_some));
        let mut rights: Vec<usize> = matching.iter().map(|m| m.unwrap()).collect();
        rights.sort_unstable();
        assert_eq!(rights, vec![0, 1, 2]);
    }

    #[test]
    fn augmenting_reroutes_earlier_choices() {
        // Left 0 can only take right 0; left 1 prefers 0 but must switch.
        let adjacency = vec![vec![0, 1], vec![0]];
        let matching = maximum_bipartite_matching(2, 2, &adjacency);
        assert_eq!(matching[0], Some(1));
        assert_eq!(matching[1], Some(0));
    }

    #[test]
    fn deficient_graph() {
        let adjacency = vec![vec![0], vec![0], vec![]];
        let matching = maximum_bipartite_matching(3, 1, &adjacency);
        assert_eq!(matching.iter().filter(|m| m.is_some()).count(), 1);
    }
}
