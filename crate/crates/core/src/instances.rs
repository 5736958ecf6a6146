//! Named reference instances and golden values.
//!
//! Servers of the four-server replication map are numbered `ab = 1`,
//! `ac = 2`, `bc = 3`, `d = 4`; streams `a, b, c, d` are stored on
//! `{ab, ac}`, `{ab, bc}`, `{ac, bc}` and `{d}`.

use crate::error::Result;
use crate::model::Problem;
use crate::rational::Rat;

pub const FIG1_SERVER_NAMES: [&str; 4] = ["ab", "ac", "bc", "d"];

/// The four-server map with the given entanglement cliques.
pub fn fig1_with(cliques: Vec<Vec<usize>>) -> Result<Problem> {
    Problem::with_names(
        4,
        ["a", "b", "c", "d"].iter().map(|s| s.to_string()).collect(),
        vec![vec![1, 2], vec![1, 3], vec![2, 3], vec![4]],
        cliques,
    )
}

/// The four-server map, fully entangled.
pub fn fig1_problem() -> Problem {
    fig1_with(vec![vec![1, 2, 3, 4]]).expect("valid fixture")
}

/// Renders a clique list with the four-server names, e.g. `({ab,ac},{d})`.
pub fn fig1_label(cliques: &[Vec<usize>]) -> String {
    let parts: Vec<String> = cliques
        .iter()
        .map(|e| format!("{{{}}}", e.iter().map(|&s| FIG1_SERVER_NAMES[s - 1]).collect::<Vec<_>>().join(",")))
        .collect();
    format!("({})", parts.join(","))
}

#[derive(Clone, Debug)]
pub struct GoldenMap {
    pub cliques: Vec<Vec<usize>>,
    pub capacity: Rat,
}

impl GoldenMap {
    pub fn label(&self) -> String {
        fig1_label(&self.cliques)
    }

    pub fn problem(&self) -> Problem {
        fig1_with(self.cliques.clone()).expect("valid fixture")
    }
}

/// The eleven entanglement maps of the four-server table with their capacities.
pub fn table1() -> Vec<GoldenMap> {
    let rows: [(&[&[usize]], i64, i64); 11] = [
        (&[&[1, 2, 3, 4]], 4, 5),
        (&[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]], 3, 4),
        (&[&[1, 2], &[1, 4], &[2, 4], &[3, 4]], 3, 4),
        (&[&[1, 2], &[2, 3, 4]], 2, 3),
        (&[&[1, 2], &[2, 3], &[2, 4], &[3, 4]], 2, 3),
        (&[&[1], &[2, 3, 4]], 2, 3),
        (&[&[1], &[2, 3], &[2, 4], &[3, 4]], 2, 3),
        (&[&[1, 2, 3], &[4]], 1, 2),
        (&[&[1, 2], &[1, 3], &[2, 3], &[4]], 1, 2),
        (&[&[1, 2], &[3, 4]], 1, 2),
        (&[&[1], &[2], &[3], &[4]], 2, 5),
    ];
    rows.iter()
        .map(|(c, n, d)| GoldenMap { cliques: c.iter().map(|e| e.to_vec()).collect(), capacity: Rat::new(*n, *d) })
        .collect()
}

/// `C_α^(β)` for `S = 8`, indexed `[α-1][β-1]`, as (numerator, denominator).
pub const TABLE2_S8: [[(i64, i64); 8]; 8] = [
    [(1, 8), (1, 4), (1, 4), (1, 4), (1, 4), (1, 4), (1, 4), (1, 4)],
    [(1, 4), (13, 28), (13, 28), (1, 2), (1, 2), (1, 2), (1, 2), (1, 2)],
    [(3, 8), (9, 14), (9, 14), (5, 7), (5, 7), (3, 4), (3, 4), (3, 4)],
    [(1, 2), (11, 14), (11, 14), (61, 70), (61, 70), (13, 14), (13, 14), (1, 1)],
    [(5, 8), (25, 28), (25, 28), (27, 28), (27, 28), (1, 1), (1, 1), (1, 1)],
    [(3, 4), (27, 28), (27, 28), (1, 1), (1, 1), (1, 1), (1, 1), (1, 1)],
    [(7, 8), (1, 1), (1, 1), (1, 1), (1, 1), (1, 1), (1, 1), (1, 1)],
    [(1, 1), (1, 1), (1, 1), (1, 1), (1, 1), (1, 1), (1, 1), (1, 1)],
];

pub fn table2_golden() -> Vec<Vec<Rat>> {
    TABLE2_S8.iter().map(|row| row.iter().map(|&(n, d)| Rat::new(n, d)).collect()).collect()
}

/// Four servers holding the 3-subsets of four streams plus a fifth server with
/// a private stream: 5-party entanglement beats every 4-party map.
pub fn strict_gap_problem(cliques: Vec<Vec<usize>>) -> Result<Problem> {
    Problem::new(5, vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4], vec![5]], cliques)
}

/// A replication map split into two halves for the separability check:
/// `(left, right, joined)`, each fully entangled.
#[derive(Clone, Debug)]
pub struct SeparabilityCase {
    pub left: Problem,
    pub right: Problem,
    pub joined: Problem,
    pub separable: bool,
}

pub fn separability_cases() -> Vec<SeparabilityCase> {
    let full = |s: usize| vec![(1..=s).collect::<Vec<_>>()];
    let tri = Problem::new(3, vec![vec![1, 2], vec![1, 3], vec![2, 3]], full(3)).expect("valid fixture");
    let one = Problem::new(1, vec![vec![1]], full(1)).expect("valid fixture");
    let pair = Problem::new(2, vec![vec![1], vec![2]], full(2)).expect("valid fixture");
    vec![
        SeparabilityCase { joined: fig1_problem(), left: tri, right: one, separable: false },
        SeparabilityCase {
            joined: Problem::new(4, (1..=4).map(|s| vec![s]).collect(), full(4)).expect("valid fixture"),
            left: pair.clone(),
            right: pair,
            separable: true,
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::concat_problems;

    #[test]
    fn labels_and_shapes() {
        let t = table1();
        assert_eq!(t.len(), 11);
        assert_eq!(t[0].label(), "({ab,ac,bc,d})");
        assert_eq!(t[9].label(), "({ab,ac},{bc,d})");
        assert!(t[0].problem().is_fully_entangled());
        assert!(t[10].problem().is_unentangled());
        assert_eq!(table2_golden()[3][3], Rat::new(61, 70));
    }

    #[test]
    fn separability_joins_are_concatenations() {
        for c in separability_cases() {
            let j = concat_problems(&c.left, &c.right).unwrap();
            assert_eq!(j.streams(), c.joined.streams());
            assert_eq!(j.cliques(), c.joined.cliques());
        }
    }
}
