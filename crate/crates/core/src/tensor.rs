use crate::linalg::CMat;
use crate::C64;

/// Sparse rank-3 structure tensor stored as a map from an outer index to a
/// sparse vector over an inner index.
///
/// The product `e_i·e_j = Σ_k m[i][j][k] e_k` uses outer index `i*n + j` and
/// inner index `k`; the coproduct `Δ(e_i) = Σ d[i][j][k] e_j⊗e_k` uses outer
/// index `i` and inner index `j*n + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureTensor {
    rows: Vec<Vec<(usize, C64)>>,
    inner_len: usize,
}

impl StructureTensor {
    /// Duplicate entries are summed and exact zeros dropped.
    pub fn from_entries(
        outer_len: usize,
        inner_len: usize,
        entries: impl IntoIterator<Item = (usize, usize, C64)>,
    ) -> Self {
        let mut dense: Vec<std::collections::BTreeMap<usize, C64>> = vec![Default::default(); outer_len];
        for (o, i, v) in entries {
            *dense[o].entry(i).or_insert(C64::new(0.0, 0.0)) += v;
        }
        let rows =
            dense.into_iter().map(|m| m.into_iter().filter(|(_, v)| *v != C64::new(0.0, 0.0)).collect()).collect();
        Self { rows, inner_len }
    }

    /// Builds the tensor from the columns of a dense `inner_len × outer_len`
    /// matrix, dropping entries below `drop` in modulus.
    pub fn from_matrix(m: &CMat, drop: f64) -> Self {
        let entries = (0..m.ncols()).flat_map(|o| {
            (0..m.nrows()).filter_map(move |i| {
                let v = m[(i, o)];
                (v.norm() > drop).then_some((o, i, v))
            })
        });
        Self::from_entries(m.ncols(), m.nrows(), entries.collect::<Vec<_>>())
    }

    #[inline]
    pub fn row(&self, outer: usize) -> &[(usize, C64)] {
        &self.rows[outer]
    }

    pub fn outer_len(&self) -> usize {
        self.rows.len()
    }

    pub fn inner_len(&self) -> usize {
        self.inner_len
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Dense `inner_len × outer_len` matrix.
    pub fn to_matrix(&self) -> CMat {
        let mut m = CMat::zeros(self.inner_len, self.rows.len());
        for (o, row) in self.rows.iter().enumerate() {
            for &(i, v) in row {
                m[(i, o)] = v;
            }
        }
        m
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, C64)> + '_ {
        self.rows.iter().enumerate().flat_map(|(o, row)| row.iter().map(move |&(i, v)| (o, i, v)))
    }
}
