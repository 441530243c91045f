//! The canonical MAG <-> classical graph isomorphism, with vertex rank as the bijection.

use crate::error::MagError;
use crate::mag::{num_vertices, ClassicalGraph, CompanionTuple, CompositeEdge, Mag};
use crate::ordering::{rank_vertex, vertex_rank};

pub fn mag_to_graph(g: &Mag) -> Result<ClassicalGraph, MagError> {
    let n: u64 = num_vertices(g.tau())?;
    let edges = g
        .edges()
        .iter()
        .map(|e| Ok((vertex_rank(e.lo(), g.tau())?, vertex_rank(e.hi(), g.tau())?)))
        .collect::<Result<Vec<(u64, u64)>, MagError>>()?;
    ClassicalGraph::new(n, edges)
}

pub fn graph_to_mag(graph: &ClassicalGraph, tau: &CompanionTuple) -> Result<Mag, MagError> {
    let n: u64 = num_vertices(tau)?;
    if graph.n() != n {
        return Err(MagError::SizeMismatch {
            expected: n.to_string(),
            found: graph.n().to_string(),
        });
    }
    let mut g = Mag::empty(tau.clone());
    for &(a, b) in graph.edges() {
        g.insert(CompositeEdge::new(rank_vertex(&a, tau)?, rank_vertex(&b, tau)?)?)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::char_string_to_mag;
    use crate::mag::{validate_mag, CompositeVertex};

    fn t(s: &[u64]) -> CompanionTuple {
        CompanionTuple::new(s.to_vec()).unwrap()
    }

    #[test]
    fn examples() {
        let empty = Mag::empty(t(&[2, 2]));
        let g = mag_to_graph(&empty).unwrap();
        assert_eq!((g.n(), g.edges().len()), (4, 0));

        let one = validate_mag(
            t(&[2, 2]),
            [(CompositeVertex::from([1, 1]), CompositeVertex::from([2, 2]))],
        )
        .unwrap();
        let g = mag_to_graph(&one).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edges().iter().copied().collect::<Vec<_>>(), [(1, 4)]);

        let k3 = char_string_to_mag(&"111".parse().unwrap(), &t(&[3])).unwrap();
        let g = mag_to_graph(&k3).unwrap();
        assert_eq!(g, ClassicalGraph::new(3, [(1, 2), (1, 3), (2, 3)]).unwrap());
    }

    #[test]
    fn inverse_and_size_check() {
        let k4 = ClassicalGraph::new(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        let g = graph_to_mag(&k4, &t(&[2, 2])).unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(mag_to_graph(&g).unwrap(), k4);
        assert!(matches!(
            graph_to_mag(&k4, &t(&[3])),
            Err(MagError::SizeMismatch { .. })
        ));
    }
}
