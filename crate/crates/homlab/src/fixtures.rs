//! Hand-built instances shared across module tests.

use crate::digraph::Digraph;

/// Transitive reflexive closure of a relation, asserted to be a poset.
pub fn poset(n: usize, rel: &[(usize, usize)]) -> Digraph {
    let g = Digraph::from_arcs(n, rel)
        .unwrap()
        .transitive_hull()
        .with_all_loops();
    assert!(g.is_poset(), "fixture relation does not generate a poset");
    g
}

/// Chain 0<1<2<3 with vertex 4 squeezed between 0 and 3 only.
pub fn chain_plus_z() -> Digraph {
    poset(5, &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 3)])
}

/// Diamond 0 < {1, 2} < 3.
pub fn diamond() -> Digraph {
    poset(4, &[(0, 1), (0, 2), (1, 3), (2, 3)])
}

/// Two parallel length-4 chains 0<1<2<3<7 and 0<4<5<6<7 sharing their ends,
/// plus vertex 8 with 1 < 8, 4 < 8, 8 < 7: an off-top vertex whose bottom
/// shell has two elements.
pub fn double_ladder_plus_c() -> Digraph {
    poset(
        9,
        &[
            (0, 1),
            (1, 2),
            (2, 3),
            (3, 7),
            (0, 4),
            (4, 5),
            (5, 6),
            (6, 7),
            (1, 8),
            (4, 8),
            (8, 7),
        ],
    )
}
