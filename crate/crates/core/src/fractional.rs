//! Spectral realization of `(2μ)^{-1}(-Δ_Γ)^{s}` on the interface grid.
//!
//! With the interface stiffness `A` and facet mass `M`, the generalized
//! eigenpairs `A U = M U E` (`UᵀMU = I`) give the dense matrix
//! `S = scale · M U E^{s} Uᵀ M`, the discrete counterpart of
//! `Σ_i λ_i^{s} (·, u_i)(·, u_i)`.

use faer::Mat;

use crate::error::{Error, Result};
use crate::linalg::{dense_sym_gevp, CsrMatrix, DenseEigenDecomp, TripletList};
use crate::mesh::StaggeredMesh;

/// Boundary treatment at the endpoints of `Γ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FractionalVariant {
    /// Natural endpoints; the operator is `-Δ_Γ + I`.
    #[default]
    Neumann,
    /// Zero endpoint values; the operator is `-Δ_Γ`.
    Dirichlet,
}

impl std::str::FromStr for FractionalVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "neumann" => Ok(Self::Neumann),
            "dirichlet" => Ok(Self::Dirichlet),
            _ => Err(Error::Config(format!("unknown fractional variant '{s}'"))),
        }
    }
}

/// Two-point discretization of the interface operator and the facet mass.
///
/// Neighbouring facets are joined by `1/h`; in the Dirichlet variant each
/// endpoint facet is closed with the half-cell transmissibility `2/h`.
pub fn interface_laplacian(mesh: &StaggeredMesh, variant: FractionalVariant) -> Result<(CsrMatrix, Vec<f64>)> {
    let facets = mesh.interface_facets();
    interface_laplacian_1d(&facets.iter().map(|f| f.length).collect::<Vec<_>>(), variant)
}

/// Same as [`interface_laplacian`] for an explicit list of segment lengths.
pub fn interface_laplacian_1d(lengths: &[f64], variant: FractionalVariant) -> Result<(CsrMatrix, Vec<f64>)> {
    let n = lengths.len();
    if n == 0 || (n < 2 && variant == FractionalVariant::Dirichlet) {
        return Err(Error::Config(format!("{n} interface facets are too few for the {variant:?} operator")));
    }
    let mut t = TripletList::new(n, n);
    for i in 0..n.saturating_sub(1) {
        let tr = 1.0 / (0.5 * lengths[i] + 0.5 * lengths[i + 1]);
        t.push(i, i, tr);
        t.push(i + 1, i + 1, tr);
        t.push(i, i + 1, -tr);
        t.push(i + 1, i, -tr);
    }
    match variant {
        FractionalVariant::Neumann => {
            for (i, &l) in lengths.iter().enumerate() {
                t.push(i, i, l);
            }
        }
        FractionalVariant::Dirichlet => {
            t.push(0, 0, 2.0 / lengths[0]);
            t.push(n - 1, n - 1, 2.0 / lengths[n - 1]);
        }
    }
    Ok((t.into_csr(), lengths.to_vec()))
}

/// The dense interface operator with its spectral data.
#[derive(Debug, Clone)]
pub struct SpectralFractionalOp {
    pub decomp: DenseEigenDecomp,
    pub scale: f64,
    pub exponent: f64,
    pub variant: FractionalVariant,
    matrix: Mat<f64>,
}

impl SpectralFractionalOp {
    pub fn dim(&self) -> usize {
        self.decomp.len()
    }

    /// `S` as a dense matrix.
    pub fn matrix(&self) -> &Mat<f64> {
        &self.matrix
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[(i, j)]
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim();
        assert_eq!(x.len(), n);
        (0..n).map(|i| (0..n).map(|j| self.matrix[(i, j)] * x[j]).sum()).collect()
    }

    /// `Πᵀ S Π` on the Darcy cells: `cells[f]` is the cell below facet `f`.
    pub fn lift(&self, cells: &[usize], n_cells: usize) -> CsrMatrix {
        let n = self.dim();
        assert_eq!(cells.len(), n);
        let mut t = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                t.push((cells[i], cells[j], self.matrix[(i, j)]));
            }
        }
        CsrMatrix::from_triplets(n_cells, n_cells, t)
    }
}

/// Builds `S = (2μ)^{-1} M U E^{exponent} Uᵀ M`.
pub fn build_fractional(a: &CsrMatrix, mass: &[f64], mu: f64, exponent: f64, variant: FractionalVariant) -> Result<SpectralFractionalOp> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::Parameter(format!("viscosity must be positive, got {mu}")));
    }
    build_fractional_scaled(a, mass, 1.0 / (2.0 * mu), exponent, variant)
}

/// As [`build_fractional`] with an explicit prefactor.
pub fn build_fractional_scaled(
    a: &CsrMatrix,
    mass: &[f64],
    scale: f64,
    exponent: f64,
    variant: FractionalVariant,
) -> Result<SpectralFractionalOp> {
    let decomp = dense_sym_gevp(&a.to_dense(), mass)?;
    if let Some(&l) = decomp.eigenvalues.first() {
        if !(l > 0.0) {
            return Err(Error::Parameter(format!("interface operator has nonpositive eigenvalue {l:.3e}")));
        }
    }
    let n = decomp.len();
    // W = M U, S = scale · W diag(E^s) Wᵀ
    let w = Mat::<f64>::from_fn(n, n, |i, j| mass[i] * decomp.eigenvectors[(i, j)]);
    let d: Vec<f64> = decomp.eigenvalues.iter().map(|l| l.powf(exponent)).collect();
    let wd = Mat::<f64>::from_fn(n, n, |i, j| w[(i, j)] * d[j]);
    let s = &wd * w.transpose();
    let matrix = Mat::<f64>::from_fn(n, n, |i, j| scale * 0.5 * (s[(i, j)] + s[(j, i)]));
    Ok(SpectralFractionalOp { decomp, scale, exponent, variant, matrix })
}

/// Convenience: interface operator of `mesh` with exponent `-1/2`.
pub fn fractional_for_mesh(mesh: &StaggeredMesh, mu: f64, variant: FractionalVariant) -> Result<SpectralFractionalOp> {
    let (a, m) = interface_laplacian(mesh, variant)?;
    build_fractional(&a, &m, mu, -0.5, variant)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mesh::build_mesh;

    #[test]
    fn two_facet_neumann_problem() {
        let mesh = build_mesh(2, 2, 2).unwrap();
        let (a, m) = interface_laplacian(&mesh, FractionalVariant::Neumann).unwrap();
        let d = a.to_dense();
        assert_eq!((d[(0, 0)], d[(0, 1)], d[(1, 0)], d[(1, 1)]), (2.5, -2.0, -2.0, 2.5));
        assert_eq!(m, vec![0.5, 0.5]);
        let s = build_fractional(&a, &m, 0.5, -0.5, FractionalVariant::Neumann).unwrap();
        assert!((s.decomp.eigenvalues[0] - 1.0).abs() < 1e-12);
        assert!((s.decomp.eigenvalues[1] - 9.0).abs() < 1e-12);
        assert!((s.get(0, 0) - 1.0 / 3.0).abs() < 1e-12);
        assert!((s.get(0, 1) - 1.0 / 6.0).abs() < 1e-12);
        assert!((s.get(1, 1) - 1.0 / 3.0).abs() < 1e-12);
        let y = s.apply(&[1.0, 1.0]);
        assert!((y[0] - 0.5).abs() < 1e-12 && (y[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn constant_is_the_lowest_neumann_mode() {
        for nx in [2usize, 3, 8, 64, 256] {
            let (a, m) = interface_laplacian_1d(&vec![1.0 / nx as f64; nx], FractionalVariant::Neumann).unwrap();
            let a1 = a.mul_vec(&vec![1.0; nx]);
            for (x, mi) in a1.iter().zip(&m) {
                assert!((x - mi).abs() < 1e-12);
            }
            let d = dense_sym_gevp(&a.to_dense(), &m).unwrap();
            assert!((d.eigenvalues[0] - 1.0).abs() < 1e-9, "nx={nx}: {}", d.eigenvalues[0]);
        }
    }

    #[test]
    fn dirichlet_variant_is_definite() {
        let (a, m) = interface_laplacian_1d(&[0.25; 4], FractionalVariant::Dirichlet).unwrap();
        assert!(a.mul_vec(&[1.0; 4]).iter().any(|v| v.abs() > 0.0));
        let d = dense_sym_gevp(&a.to_dense(), &m).unwrap();
        assert!(d.eigenvalues[0] > 0.0);
        assert!(interface_laplacian_1d(&[1.0], FractionalVariant::Dirichlet).is_err());
        assert!(interface_laplacian_1d(&[1.0], FractionalVariant::Neumann).is_ok());
    }

    #[test]
    fn exponent_zero_gives_scaled_mass() {
        let (a, m) = interface_laplacian_1d(&[0.2, 0.3, 0.5], FractionalVariant::Neumann).unwrap();
        let s = build_fractional_scaled(&a, &m, 3.0, 0.0, FractionalVariant::Neumann).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let expect = if i == j { 3.0 * m[i] } else { 0.0 };
                assert!((s.get(i, j) - expect).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn spectral_reconstruction_symmetry_and_scaling() {
        let mesh = build_mesh(12, 4, 4).unwrap();
        for variant in [FractionalVariant::Neumann, FractionalVariant::Dirichlet] {
            let s1 = fractional_for_mesh(&mesh, 0.7, variant).unwrap();
            let s2 = fractional_for_mesh(&mesh, 1.4, variant).unwrap();
            let n = s1.dim();
            for i in 0..n {
                let u = s1.decomp.eigenvector(i);
                let su = s1.apply(&u);
                let l = s1.decomp.eigenvalues[i];
                for r in 0..n {
                    let expect = s1.scale * l.powf(-0.5) * s1.decomp.mass[r] * u[r];
                    assert!((su[r] - expect).abs() <= 1e-10);
                }
                for j in 0..n {
                    assert_eq!(s1.get(i, j), s1.get(j, i));
                    assert_eq!(s2.get(i, j), 0.5 * s1.get(i, j));
                }
            }
        }
    }

    #[test]
    fn lift_is_a_selection() {
        let mesh = build_mesh(2, 2, 2).unwrap();
        let s = fractional_for_mesh(&mesh, 0.5, FractionalVariant::Neumann).unwrap();
        let cells: Vec<usize> = mesh.interface_facets().iter().map(|f| f.darcy_cell).collect();
        let l = s.lift(&cells, mesh.n_darcy_cells());
        assert_eq!(l.max_asymmetry(), 0.0);
        for (i, j, v) in l.iter() {
            assert!(cells.contains(&i) && cells.contains(&j));
            let fi = cells.iter().position(|&c| c == i).unwrap();
            let fj = cells.iter().position(|&c| c == j).unwrap();
            assert_eq!(v, s.get(fi, fj));
        }
        let mut x = vec![1.0; mesh.n_darcy_cells()];
        for &c in &cells {
            x[c] = 0.0;
        }
        assert!(l.mul_vec(&x).iter().all(|&v| v == 0.0));
    }

    /// Independent oracle: nalgebra eigendecomposition of `M^{-1/2} A M^{-1/2}`
    /// and the matrix function `scale · M^{1/2} C^{-1/2} M^{1/2}`.
    #[test]
    fn matches_matrix_function_oracle() {
        for nx in 2..=8usize {
            let lengths: Vec<f64> = (0..nx).map(|i| (1.0 + 0.1 * i as f64) / nx as f64).collect();
            for variant in [FractionalVariant::Neumann, FractionalVariant::Dirichlet] {
                let (a, m) = interface_laplacian_1d(&lengths, variant).unwrap();
                let s = build_fractional(&a, &m, 0.8, -0.5, variant).unwrap();
                let ad = a.to_dense();
                let c = nalgebra::DMatrix::from_fn(nx, nx, |i, j| ad[(i, j)] / (m[i] * m[j]).sqrt());
                let eig = nalgebra::SymmetricEigen::new(c);
                let f = nalgebra::DMatrix::from_diagonal(&eig.eigenvalues.map(|l| l.powf(-0.5)));
                let g = &eig.eigenvectors * f * eig.eigenvectors.transpose();
                for i in 0..nx {
                    for j in 0..nx {
                        let oracle = g[(i, j)] * (m[i] * m[j]).sqrt() / (2.0 * 0.8);
                        assert!((s.get(i, j) - oracle).abs() <= 1e-10, "nx={nx} {variant:?}");
                    }
                }
            }
        }
    }
}
