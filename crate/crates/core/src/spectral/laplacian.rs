use crate::error::{Error, Result};
use crate::graph::{components_excluding, ComponentLabeling, Graph, VertexId};
use crate::spectral::matrix::{dot, SymmetricMatrix};
use crate::spectral::LaplacianKind;

/// One diagonal block of a pinned Laplacian: the rows and columns of a
/// single connected component of `G - i`.
#[derive(Debug, Clone, PartialEq)]
pub struct PinnedBlock {
    /// Original vertex of each local row, ascending.
    pub vertices: Vec<usize>,
    pub matrix: SymmetricMatrix,
}

/// A Laplacian with the row and column of `pinned` deleted, split block
/// diagonally by the components of `G - pinned`.
#[derive(Debug, Clone, PartialEq)]
pub struct PinnedLaplacian {
    pub pinned: VertexId,
    pub kind: LaplacianKind,
    pub labeling: ComponentLabeling,
    pub blocks: Vec<PinnedBlock>,
}

impl PinnedLaplacian {
    /// `<f, L_i f>` for a full-length `f`; the entry at the pinned vertex
    /// does not take part.
    pub fn quadratic_form(&self, f: &[f64]) -> f64 {
        self.blocks
            .iter()
            .map(|b| {
                let local: Vec<f64> = b.vertices.iter().map(|&v| f[v]).collect();
                b.matrix.quadratic_form(&local)
            })
            .sum()
    }
}

/// Builds the pinned Laplacian of `kind`. Degrees come from `g` itself, so
/// the neighbors of the pinned vertex keep their full degree on the diagonal.
///
/// The random-walk operator is not symmetric; its block is the symmetric
/// normalized one, which is similar to it via `D^1/2`.
pub fn assemble_pinned_laplacian(
    g: &Graph,
    pinned: VertexId,
    kind: LaplacianKind,
) -> Result<PinnedLaplacian> {
    let i = g.vertex(pinned.index())?.index();
    g.require_connected()?;
    let labeling = components_excluding(g, Some(i));
    let mut local = vec![usize::MAX; g.n()];
    let blocks = labeling
        .members()
        .into_iter()
        .map(|vertices| {
            for (k, &v) in vertices.iter().enumerate() {
                local[v] = k;
            }
            let rows = vertices
                .iter()
                .map(|&v| {
                    let dv = g.degree(v) as f64;
                    let mut row = Vec::with_capacity(g.degree(v) + 1);
                    row.push((local[v], diagonal(kind, dv)));
                    for &w in g.neighbors(v).iter().filter(|&&w| w != i) {
                        let off = match kind {
                            LaplacianKind::Combinatorial => -1.0,
                            LaplacianKind::RandomWalk | LaplacianKind::SymmetricNormalized => {
                                -1.0 / (dv * g.degree(w) as f64).sqrt()
                            }
                        };
                        row.push((local[w], off));
                    }
                    row
                })
                .collect();
            PinnedBlock {
                vertices,
                matrix: SymmetricMatrix::from_rows(rows),
            }
        })
        .collect();
    Ok(PinnedLaplacian {
        pinned: VertexId(i),
        kind,
        labeling,
        blocks,
    })
}

fn diagonal(kind: LaplacianKind, degree: f64) -> f64 {
    match kind {
        LaplacianKind::Combinatorial => degree,
        LaplacianKind::RandomWalk | LaplacianKind::SymmetricNormalized => 1.0,
    }
}

/// `<v, M v> / <v, v>`.
pub fn rayleigh_quotient(m: &SymmetricMatrix, v: &[f64]) -> Result<f64> {
    let vv = dot(v, v);
    if vv == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(m.quadratic_form(v) / vv)
}

/// `sum over edges (f(u) - f(v))^2`, the quadratic form of `D - A`.
pub fn dirichlet_energy(g: &Graph, f: &[f64]) -> f64 {
    g.edges().map(|(u, v)| (f[u] - f[v]).powi(2)).sum()
}

/// `sum over edges (f(u)/sqrt(deg u) - f(v)/sqrt(deg v))^2`, the quadratic
/// form of `Id - D^-1/2 A D^-1/2` on a graph without isolated vertices.
pub fn normalized_dirichlet_energy(g: &Graph, f: &[f64]) -> f64 {
    g.edges()
        .map(|(u, v)| {
            (f[u] / (g.degree(u) as f64).sqrt() - f[v] / (g.degree(v) as f64).sqrt()).powi(2)
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(m: &SymmetricMatrix) -> Vec<Vec<f64>> {
        (0..m.dim())
            .map(|i| (0..m.dim()).map(|j| m.get(i, j)).collect())
            .collect()
    }

    #[test]
    fn k3_pinned_at_zero() {
        let p = assemble_pinned_laplacian(
            &Graph::complete(3),
            VertexId(0),
            LaplacianKind::Combinatorial,
        )
        .unwrap();
        assert_eq!(p.blocks.len(), 1);
        assert_eq!(
            dense(&p.blocks[0].matrix),
            vec![vec![2.0, -1.0], vec![-1.0, 2.0]]
        );
        assert_eq!(p.blocks[0].vertices, vec![1, 2]);
    }

    #[test]
    fn star_pinned_at_center_decouples() {
        let p =
            assemble_pinned_laplacian(&Graph::star(3), VertexId(0), LaplacianKind::Combinatorial)
                .unwrap();
        assert_eq!(p.blocks.len(), 3);
        for b in &p.blocks {
            assert_eq!(dense(&b.matrix), vec![vec![1.0]]);
        }
        assert_eq!(
            p.labeling.component_of,
            vec![None, Some(0), Some(1), Some(2)]
        );
    }

    #[test]
    fn path_pinned_at_end() {
        let p =
            assemble_pinned_laplacian(&Graph::path(3), VertexId(0), LaplacianKind::Combinatorial)
                .unwrap();
        assert_eq!(
            dense(&p.blocks[0].matrix),
            vec![vec![2.0, -1.0], vec![-1.0, 1.0]]
        );
    }

    #[test]
    fn normalized_block_entries() {
        let p = assemble_pinned_laplacian(
            &Graph::path(3),
            VertexId(0),
            LaplacianKind::SymmetricNormalized,
        )
        .unwrap();
        let s = -1.0 / 2f64.sqrt();
        assert_eq!(dense(&p.blocks[0].matrix), vec![vec![1.0, s], vec![s, 1.0]]);
        let rw = assemble_pinned_laplacian(&Graph::path(3), VertexId(0), LaplacianKind::RandomWalk)
            .unwrap();
        assert_eq!(rw.blocks, p.blocks);
    }

    #[test]
    fn disconnected_and_out_of_range_are_errors() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            assemble_pinned_laplacian(&g, VertexId(0), LaplacianKind::Combinatorial),
            Err(Error::Disconnected { components: 2 })
        );
        assert!(matches!(
            assemble_pinned_laplacian(&Graph::path(3), VertexId(3), LaplacianKind::Combinatorial),
            Err(Error::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn rayleigh_examples() {
        let m =
            SymmetricMatrix::from_rows(vec![vec![(0, 2.0), (1, -1.0)], vec![(0, -1.0), (1, 2.0)]]);
        assert_eq!(rayleigh_quotient(&m, &[1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(rayleigh_quotient(&m, &[0.0, 0.0]), Err(Error::ZeroVector));
        assert_eq!(
            dirichlet_energy(&Graph::star(3), &[0.0, 1.0, 1.0, 1.0]),
            3.0
        );
    }

    #[test]
    fn pinned_form_matches_edge_sum() {
        let g = Graph::petersen();
        let p = assemble_pinned_laplacian(&g, VertexId(4), LaplacianKind::Combinatorial).unwrap();
        let mut f: Vec<f64> = (0..10).map(|v| (v as f64 * 0.37).sin()).collect();
        f[4] = 0.0;
        assert!((p.quadratic_form(&f) - dirichlet_energy(&g, &f)).abs() < 1e-12);
    }
}
