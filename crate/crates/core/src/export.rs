//! Writes every matrix of interest for one `m` in the coordinate text format.
//!
//! File names are `m{m}_{kind}[_{label}].mtx`: `A_3`, `Estar_0`,
//! `orbit_II_2,1,2,1`, `psi`, `basis_centralizer`, `basis_terwilliger`.
//! Basis files hold one vectorized `n × n` matrix per row.

use std::fs;
use std::path::{Path, PathBuf};

use crate::centralizer::{CentralizerBasis, OrbitLabel};
use crate::combinatorics::DoubledOddGraph;
use crate::covering::build_psi;
use crate::error::{io_err, Result};
use crate::linalg::{write_mtx_file, SpanBasis, SparseExactMatrix};
use crate::terwilliger::dual_idempotents;

pub fn orbit_file_name(m: usize, label: &OrbitLabel) -> String {
    format!("m{m}_orbit_{}_{}.mtx", label.block, label.tuple)
}

/// Stacks the basis rows into a `dim × n²` matrix.
pub fn basis_as_matrix(basis: &SpanBasis) -> SparseExactMatrix {
    let cols = basis.ambient_dim();
    let triplets = basis
        .rows()
        .iter()
        .enumerate()
        .flat_map(|(r, row)| row.entries().iter().map(move |(c, v)| (r, *c, v.clone())));
    SparseExactMatrix::from_triplets(basis.dim(), cols, triplets).expect("entries within shape")
}

#[derive(Clone, Debug, Default)]
pub struct ExportSummary {
    pub files: Vec<PathBuf>,
}

impl ExportSummary {
    pub fn count_with_prefix(&self, prefix: &str) -> usize {
        self.files
            .iter()
            .filter(|p| {
                p.file_name()
                    .and_then(|n| n.to_str())
                    .is_some_and(|n| n.starts_with(prefix))
            })
            .count()
    }
}

/// Writes the distance matrices, dual idempotents, orbit matrices, `ψ` and
/// the reduced bases. `terwilliger` is optional so callers that have not
/// built `T` can still export the rest.
pub fn export_matrices(
    dir: &Path,
    graph: &DoubledOddGraph,
    centralizer: &CentralizerBasis,
    terwilliger: Option<&SpanBasis>,
) -> Result<ExportSummary> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let m = graph.m();
    let mut summary = ExportSummary::default();
    let mut put = |name: String, matrix: &SparseExactMatrix| -> Result<()> {
        let path = dir.join(name);
        write_mtx_file(matrix, &path)?;
        summary.files.push(path);
        Ok(())
    };

    for (i, a) in graph.distance_matrices().iter().enumerate() {
        put(format!("m{m}_A_{i}.mtx"), a)?;
    }
    for e in dual_idempotents(graph) {
        put(format!("m{m}_Estar_{}.mtx", e.i), &e.matrix)?;
    }
    for (label, matrix) in centralizer.labels().iter().zip(centralizer.matrices()) {
        put(orbit_file_name(m, label), matrix)?;
    }
    put(format!("m{m}_psi.mtx"), &build_psi(graph))?;
    put(
        format!("m{m}_basis_centralizer.mtx"),
        &basis_as_matrix(centralizer.span()),
    )?;
    if let Some(t) = terwilliger {
        put(format!("m{m}_basis_terwilliger.mtx"), &basis_as_matrix(t))?;
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::build_centralizer;
    use crate::linalg::read_mtx_file;

    #[test]
    fn m1_export_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let g = DoubledOddGraph::new(1).unwrap();
        let c = build_centralizer(&g).unwrap();
        let summary = export_matrices(dir.path(), &g, &c, None).unwrap();
        assert_eq!(summary.count_with_prefix("m1_orbit_"), 20);
        assert_eq!(summary.count_with_prefix("m1_A_"), 4);
        assert!(dir.path().join("m1_orbit_I_1,1,1,1.mtx").exists());
        let back = read_mtx_file(&dir.path().join("m1_basis_centralizer.mtx")).unwrap();
        assert_eq!(back, basis_as_matrix(c.span()));
    }

    #[test]
    fn unwritable_directory_reports_path() {
        let dir = tempfile::tempdir().unwrap();
        let blocker = dir.path().join("file");
        fs::write(&blocker, b"").unwrap();
        let g = DoubledOddGraph::new(1).unwrap();
        let c = build_centralizer(&g).unwrap();
        let err = export_matrices(&blocker.join("sub"), &g, &c, None).unwrap_err();
        assert!(err.to_string().contains("file"), "{err}");
    }
}
