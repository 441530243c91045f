use crate::error::MagError;
use crate::mag::{num_vertices, CompositeVertex, Mag, VertexIter};
use crate::ordering::vertex_rank;

/// Largest vertex count the bitset adjacency accepts.
pub const MAX_VERTICES: u64 = 1 << 16;

/// Dense adjacency over vertex ranks `0..n` (rank - 1), one bit row per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitGraph {
    n: usize,
    words: usize,
    rows: Vec<u64>,
}

impl BitGraph {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Self {
            n,
            words,
            rows: vec![0; n * words],
        }
    }

    pub fn from_mag(g: &Mag) -> Result<Self, MagError> {
        let n: u64 = num_vertices(g.tau()).map_err(|_| MagError::TooLarge {
            n: u64::MAX,
            limit: MAX_VERTICES,
        })?;
        if n > MAX_VERTICES {
            return Err(MagError::TooLarge {
                n,
                limit: MAX_VERTICES,
            });
        }
        let mut graph = Self::new(n as usize);
        for e in g.edges() {
            let a: u64 = vertex_rank(e.lo(), g.tau())?;
            let b: u64 = vertex_rank(e.hi(), g.tau())?;
            graph.add_edge(a as usize - 1, b as usize - 1);
        }
        Ok(graph)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, a: usize, b: usize) {
        self.rows[a * self.words + b / 64] |= 1 << (b % 64);
        self.rows[b * self.words + a / 64] |= 1 << (a % 64);
    }

    pub fn row(&self, a: usize) -> &[u64] {
        &self.rows[a * self.words..(a + 1) * self.words]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.row(a)[b / 64] >> (b % 64) & 1 == 1
    }

    pub fn degree(&self, a: usize) -> usize {
        self.row(a).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Neighbors of `a` in ascending rank order.
    pub fn neighbors(&self, a: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(a).iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let t = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + t)
            })
        })
    }

    /// Number of common neighbors of `a` and `b`.
    pub fn common(&self, a: usize, b: usize) -> usize {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    /// Shortest-path distances from `src`; `None` marks unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut visited = vec![0u64; self.words];
        let mut frontier = vec![0u64; self.words];
        visited[src / 64] |= 1 << (src % 64);
        frontier[src / 64] |= 1 << (src % 64);
        dist[src] = Some(0);
        let mut level = 0;
        loop {
            let mut next = vec![0u64; self.words];
            for (w, &word) in frontier.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let v = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    for (acc, r) in next.iter_mut().zip(self.row(v)) {
                        *acc |= r;
                    }
                }
            }
            for (acc, seen) in next.iter_mut().zip(&visited) {
                *acc &= !seen;
            }
            if next.iter().all(|&w| w == 0) {
                return dist;
            }
            level += 1;
            for (w, &word) in next.iter().enumerate() {
                visited[w] |= word;
                let mut bits = word;
                while bits != 0 {
                    dist[w * 64 + bits.trailing_zeros() as usize] = Some(level);
                    bits &= bits - 1;
                }
            }
            frontier = next;
        }
    }
}

/// Vertices of `g` indexed by rank - 1.
pub fn vertex_table(g: &Mag) -> Vec<CompositeVertex> {
    VertexIter::new(g.tau()).collect()
}
