use super::{FemError, Mesh};
use faer::sparse::linalg::solvers::{Llt, SymbolicLlt};
use faer::sparse::{SparseColMat, Triplet};
use faer::Side;

/// Stiffness, consistent mass and boundary mass matrices of P1 elements,
/// stored on one shared symmetric sparsity pattern (CSR, full).
#[derive(Debug, Clone)]
pub struct Forms {
    pub n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    stiffness: Vec<f64>,
    mass: Vec<f64>,
    boundary: Vec<f64>,
}

pub fn assemble(mesh: &Mesh) -> Forms {
    let n = mesh.node_count();
    let mut raw: Vec<(usize, usize, [f64; 3])> = Vec::with_capacity(9 * mesh.triangles.len() + 4 * mesh.boundary_edges.len());
    for (t, tri) in mesh.triangles.iter().enumerate() {
        let area = mesh.triangle_area(t);
        let g = mesh.hat_gradients(t);
        for a in 0..3 {
            for b in 0..3 {
                let k = area * (g[a][0] * g[b][0] + g[a][1] * g[b][1]);
                let m = area / 12.0 * if a == b { 2.0 } else { 1.0 };
                raw.push((tri[a], tri[b], [k, m, 0.0]));
            }
        }
    }
    for (e, edge) in mesh.boundary_edges.iter().enumerate() {
        let len = mesh.edge_length(e);
        for a in 0..2 {
            for b in 0..2 {
                let v = len / 6.0 * if a == b { 2.0 } else { 1.0 };
                raw.push((edge[a], edge[b], [0.0, 0.0, v]));
            }
        }
    }
    raw.sort_unstable_by_key(|&(i, j, _)| (i, j));
    let mut row_ptr = vec![0usize; n + 1];
    let (mut cols, mut stiffness, mut mass, mut boundary) = (vec![], vec![], vec![], vec![]);
    let mut last = None;
    for (i, j, v) in raw {
        if last == Some((i, j)) {
            let k = cols.len() - 1;
            stiffness[k] += v[0];
            mass[k] += v[1];
            boundary[k] += v[2];
        } else {
            cols.push(j);
            stiffness.push(v[0]);
            mass.push(v[1]);
            boundary.push(v[2]);
            row_ptr[i + 1] = cols.len();
            last = Some((i, j));
        }
    }
    for i in 0..n {
        row_ptr[i + 1] = row_ptr[i + 1].max(row_ptr[i]);
    }
    Forms { n, row_ptr, cols, stiffness, mass, boundary }
}

/// Coefficients `(k, m, b)` of the combination `k K + m M + b B`.
pub type Combo = [f64; 3];

impl Forms {
    fn value(&self, idx: usize, c: Combo) -> f64 {
        c[0] * self.stiffness[idx] + c[1] * self.mass[idx] + c[2] * self.boundary[idx]
    }

    pub fn apply(&self, c: Combo, x: &[f64]) -> Vec<f64> {
        (0..self.n)
            .map(|i| (self.row_ptr[i]..self.row_ptr[i + 1]).map(|k| self.value(k, c) * x[self.cols[k]]).sum())
            .collect()
    }

    pub fn form(&self, c: Combo, x: &[f64], y: &[f64]) -> f64 {
        self.apply(c, x).iter().zip(y).map(|(a, b)| a * b).sum()
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    fn sparse(&self, c: Combo) -> SparseColMat<usize, f64> {
        let trip: Vec<Triplet<usize, usize, f64>> = (0..self.n)
            .flat_map(|i| (self.row_ptr[i]..self.row_ptr[i + 1]).map(move |k| (i, k)))
            .map(|(i, k)| Triplet::new(i, self.cols[k], self.value(k, c)))
            .collect();
        SparseColMat::try_new_from_triplets(self.n, self.n, &trip).expect("pattern is valid")
    }

    pub fn symbolic(&self) -> Result<SymbolicLlt<usize>, FemError> {
        let m = self.sparse([1.0, 1.0, 1.0]);
        SymbolicLlt::try_new(m.symbolic(), Side::Lower).map_err(|e| FemError::Factorization(format!("{e:?}")))
    }

    /// Cholesky factor of the combination, or `None` if it is not
    /// positive definite.
    pub fn cholesky(&self, sym: &SymbolicLlt<usize>, c: Combo) -> Option<Llt<usize, f64>> {
        let m = self.sparse(c);
        Llt::try_new_with_symbolic(sym.clone(), m.as_ref(), Side::Lower).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fem::triangulate;
    use crate::geom::ConvexPolygon;

    #[test]
    fn forms_reproduce_measures() {
        let poly = ConvexPolygon::regular(7, 1.0).unwrap();
        let mesh = triangulate(&poly, 2);
        let f = assemble(&mesh);
        let one = vec![1.0; f.n];
        assert!((f.form([0.0, 1.0, 0.0], &one, &one) - poly.area()).abs() < 1e-12);
        assert!((f.form([0.0, 0.0, 1.0], &one, &one) - poly.perimeter()).abs() < 1e-12);
        assert!(f.apply([1.0, 0.0, 0.0], &one).iter().all(|v| v.abs() < 1e-12));
        // linear function: energy = |grad|^2 area
        let x: Vec<f64> = mesh.nodes.iter().map(|p| 2.0 * p[0] - p[1]).collect();
        assert!((f.form([1.0, 0.0, 0.0], &x, &x) - 5.0 * poly.area()).abs() < 1e-11);
    }

    #[test]
    fn cholesky_detects_indefinite() {
        let mesh = triangulate(&ConvexPolygon::rectangle(1.0, 1.0).unwrap(), 2);
        let f = assemble(&mesh);
        let sym = f.symbolic().unwrap();
        assert!(f.cholesky(&sym, [1.0, 1.0, 0.0]).is_some());
        assert!(f.cholesky(&sym, [1.0, -1.0, 0.0]).is_none());
    }
}
