//! Built-in graph families for instance generation.

/// All `n (n-1) / 2` edges of the complete graph on `n` vertices.
pub fn complete_graph(n: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push((i, j));
        }
    }
    edges
}

/// Two-dimensional king's graph on a `rows x cols` grid.
///
/// Vertex `(r, c)` has index `r * cols + c` and is adjacent to its up to
/// eight surrounding cells (horizontal, vertical, and both diagonals).
pub fn kings_graph(rows: usize, cols: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let index = |r: usize, c: usize| r * cols + c;
    for r in 0..rows {
        for c in 0..cols {
            // Emit each edge once, toward larger (r, c).
            if c + 1 < cols {
                edges.push((index(r, c), index(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((index(r, c), index(r + 1, c)));
                if c + 1 < cols {
                    edges.push((index(r, c), index(r + 1, c + 1)));
                }
                if c > 0 {
                    edges.push((index(r, c), index(r + 1, c - 1)));
                }
            }
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn complete_graph_edge_count() {
        assert_eq!(complete_graph(1).len(), 0);
        assert_eq!(complete_graph(4).len(), 6);
        assert_eq!(complete_graph(10).len(), 45);
    }

    #[test]
    fn kings_graph_counts_and_uniqueness() {
        // rows x cols king's graph has r(c-1) + (r-1)c + 2(r-1)(c-1) edges.
        for (r, c) in [(1, 1), (1, 5), (3, 3), (4, 7), (10, 10)] {
            let edges = kings_graph(r, c);
            let expected = r * (c - 1) + (r - 1) * c + 2 * (r - 1) * (c - 1);
            assert_eq!(edges.len(), expected, "({r}, {c})");
            let set: HashSet<(usize, usize)> = edges
                .iter()
                .map(|&(u, v)| (u.min(v), u.max(v)))
                .collect();
            assert_eq!(set.len(), edges.len());
            assert!(edges.iter().all(|&(u, v)| u != v && u < r * c && v < r * c));
        }
    }

    #[test]
    fn kings_graph_3x3_center_touches_everyone() {
        let edges = kings_graph(3, 3);
        let center = 4usize;
        let degree = edges
            .iter()
            .filter(|&&(u, v)| u == center || v == center)
            .count();
        assert_eq!(degree, 8);
    }
}
