//! Persistence modules over a finite grid: homology of each stage with the
//! maps induced by the stage inclusions.

use super::PersistenceDiagram;
use crate::error::{Error, Result};
use crate::filtration::FilteredClosureSpace;
use crate::homology::{chain_complex, chain_map, induced_map_between, ChainComplex, FieldHomology, Flavor};
use crate::linalg::field::{dense_rank, mat_mul, Field, Vector};
use crate::space::{is_continuous, ClosureSpace};

/// Dense row-major matrix over a field, with explicit shape so that empty
/// matrices keep their dimensions.
#[derive(Debug, Clone)]
pub struct Matrix<F: Field> {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vector<F>>,
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Vector<F>>) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::ShapeMismatch(format!("entries do not form a {rows}×{cols} matrix")));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(field: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![vec![field.zero(); cols]; rows],
        }
    }

    pub fn identity(field: &F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i][i] = field.one();
        }
        m
    }

    /// `self · other`.
    pub fn mul(&self, field: &F, other: &Matrix<F>) -> Result<Matrix<F>> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            entries: mat_mul(field, &self.entries, &other.entries, self.cols, other.cols),
        })
    }

    pub fn rank(&self, field: &F) -> usize {
        if self.rows == 0 || self.cols == 0 {
            0
        } else {
            dense_rank(field, &self.entries)
        }
    }
}

/// Where a tower came from, kept so that maps into other towers can be
/// induced later.
#[derive(Debug, Clone)]
struct StageData<F: Field> {
    spaces: Vec<ClosureSpace>,
    complexes: Vec<ChainComplex>,
    homology: Vec<FieldHomology<F>>,
    flavor: Flavor,
}

/// Vector spaces on a grid with maps between consecutive grid values.
#[derive(Debug, Clone)]
pub struct PersistenceTower<F: Field> {
    field: F,
    degree: usize,
    grid: Vec<f64>,
    dims: Vec<usize>,
    maps: Vec<Matrix<F>>,
    stages: Option<StageData<F>>,
}

impl<F: Field> PersistenceTower<F> {
    /// `maps[i]` goes from grid value `i` to `i + 1`.
    pub fn new(field: F, degree: usize, grid: Vec<f64>, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if grid.len() != dims.len() || maps.len() + 1 != dims.len().max(1) {
            return Err(Error::InconsistentTower(format!(
                "{} grid values, {} dimensions and {} maps",
                grid.len(),
                dims.len(),
                maps.len()
            )));
        }
        if grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InconsistentTower("grid must be strictly increasing".into()));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.cols != dims[i] || m.rows != dims[i + 1] {
                return Err(Error::ShapeMismatch(format!(
                    "map {i} is {}×{} between spaces of dimension {} and {}",
                    m.rows,
                    m.cols,
                    dims[i],
                    dims[i + 1]
                )));
            }
        }
        Ok(PersistenceTower {
            field,
            degree,
            grid,
            dims,
            maps,
            stages: None,
        })
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn maps(&self) -> &[Matrix<F>] {
        &self.maps
    }

    pub fn stage_index_at(&self, t: f64) -> Option<usize> {
        self.grid.partition_point(|&g| g <= t).checked_sub(1)
    }

    pub fn dim_at(&self, t: f64) -> usize {
        self.stage_index_at(t).map_or(0, |i| self.dims[i])
    }

    /// Composite of the maps from grid index `i` to grid index `j ≥ i`.
    pub fn structure_map(&self, i: usize, j: usize) -> Matrix<F> {
        let mut m = Matrix::identity(&self.field, self.dims[i]);
        for k in i..j {
            m = self.maps[k].mul(&self.field, &m).expect("tower maps chain");
        }
        m
    }

    /// The map `M_s → M_t` for reals `s ≤ t`.
    pub fn map_between(&self, s: f64, t: f64) -> Matrix<F> {
        match (self.stage_index_at(s), self.stage_index_at(t)) {
            (Some(i), Some(j)) => self.structure_map(i, j),
            (None, _) => Matrix::zeros(&self.field, self.dim_at(t), 0),
            (Some(_), None) => unreachable!("s ≤ t"),
        }
    }
}

/// Homology in one degree of every stage, with the inclusion-induced maps.
pub fn persistence_tower<F: Field>(
    field: &F,
    filtration: &FilteredClosureSpace,
    flavor: Flavor,
    degree: usize,
    reduced: bool,
) -> Result<PersistenceTower<F>> {
    let spaces: Vec<ClosureSpace> = filtration.stages().to_vec();
    let complexes = spaces
        .iter()
        .map(|s| chain_complex(s, flavor, degree + 1))
        .collect::<Result<Vec<_>>>()?;
    let homology = complexes
        .iter()
        .map(|c| FieldHomology::new(field, c, degree, reduced))
        .collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::new();
    for i in 1..spaces.len() {
        let images = inclusion_images(&spaces[i - 1], &spaces[i])?;
        let chain = chain_map(flavor, &complexes[i - 1], &complexes[i], &images, degree);
        let entries = induced_map_between(field, &homology[i - 1], &homology[i], &chain);
        maps.push(Matrix::new(homology[i].dim(), homology[i - 1].dim(), entries)?);
    }
    let dims = homology.iter().map(FieldHomology::dim).collect();
    let mut tower = PersistenceTower::new(field.clone(), degree, filtration.grid().to_vec(), dims, maps)?;
    tower.stages = Some(StageData {
        spaces,
        complexes,
        homology,
        flavor,
    });
    Ok(tower)
}

/// Position in `to` of every point of `from`, checking continuity.
fn inclusion_images(from: &ClosureSpace, to: &ClosureSpace) -> Result<Vec<usize>> {
    let images = from.labels().iter().map(|l| to.require(l)).collect::<Result<Vec<_>>>()?;
    if !is_continuous(from, to, &images) {
        let bad = (0..from.len())
            .find(|&x| from.closure_of_point(x).ones().any(|y| !to.related(images[x], images[y])))
            .expect("some point breaks continuity");
        return Err(Error::NotContinuous(from.label(bad).clone()));
    }
    Ok(images)
}

/// Bars `[t_i, t_j)` from ranks of composite maps by inclusion–exclusion.
pub fn tower_to_diagram<F: Field>(tower: &PersistenceTower<F>) -> Result<PersistenceDiagram> {
    let k = tower.grid.len();
    let mut rank = vec![vec![0usize; k]; k];
    for i in 0..k {
        let mut m = Matrix::identity(&tower.field, tower.dims[i]);
        rank[i][i] = tower.dims[i];
        for j in i + 1..k {
            m = tower.maps[j - 1].mul(&tower.field, &m)?;
            rank[i][j] = m.rank(&tower.field);
        }
    }
    let r = |i: isize, j: usize| -> i64 {
        if i < 0 || j >= k || (i as usize) > j {
            0
        } else {
            rank[i as usize][j] as i64
        }
    };
    let mut pairs = Vec::new();
    for i in 0..k {
        for j in i + 1..=k {
            let ii = i as isize;
            let mult = r(ii, j - 1) - r(ii, j) - r(ii - 1, j - 1) + r(ii - 1, j);
            if mult < 0 {
                return Err(Error::InconsistentTower(format!("negative multiplicity for bar starting at index {i}")));
            }
            let death = if j == k { f64::INFINITY } else { tower.grid[j] };
            pairs.extend(std::iter::repeat_n((tower.grid[i], death), mult as usize));
        }
    }
    PersistenceDiagram::new(tower.degree, pairs)
}

/// Grid on which every map of an `eps`-interleaving between two towers is
/// constant between consecutive values.
pub fn interleaving_grid<F: Field>(m: &PersistenceTower<F>, n: &PersistenceTower<F>, eps: f64) -> Vec<f64> {
    let mut g: Vec<f64> = Vec::new();
    for shift in [0.0, eps, 2.0 * eps] {
        g.extend(m.grid.iter().chain(&n.grid).map(|t| t - shift));
    }
    g.sort_by(f64::total_cmp);
    g.dedup();
    g
}

fn step_index(grid: &[f64], t: f64) -> Option<usize> {
    grid.partition_point(|&g| g <= t).checked_sub(1)
}

/// Checks the interleaving identities for `phi[k] : M_{g_k} → N_{g_k+ε}` and
/// `psi[k] : N_{g_k} → M_{g_k+ε}` given on [`interleaving_grid`].
pub fn verify_interleaving<F: Field>(
    m: &PersistenceTower<F>,
    n: &PersistenceTower<F>,
    eps: f64,
    phi: &[Matrix<F>],
    psi: &[Matrix<F>],
) -> Result<bool> {
    if eps < 0.0 {
        return Err(Error::NegativeEpsilon(eps));
    }
    let grid = interleaving_grid(m, n, eps);
    let field = &m.field;
    if phi.len() != grid.len() || psi.len() != grid.len() {
        return Err(Error::ShapeMismatch(format!("expected {} maps in each direction", grid.len())));
    }
    for (k, &g) in grid.iter().enumerate() {
        if phi[k].cols != m.dim_at(g) || phi[k].rows != n.dim_at(g + eps) {
            return Err(Error::ShapeMismatch(format!("forward map at {g} has the wrong shape")));
        }
        if psi[k].cols != n.dim_at(g) || psi[k].rows != m.dim_at(g + eps) {
            return Err(Error::ShapeMismatch(format!("backward map at {g} has the wrong shape")));
        }
    }
    // Naturality on every pair of grid values.
    for (fwd, src, dst) in [(phi, m, n), (psi, n, m)] {
        for k in 0..grid.len() {
            for l in k..grid.len() {
                let left = fwd[l].mul(field, &src.map_between(grid[k], grid[l]))?;
                let right = dst.map_between(grid[k] + eps, grid[l] + eps).mul(field, &fwd[k])?;
                if left != right {
                    return Ok(false);
                }
            }
        }
    }
    // Round trips, on a grid fine enough for both factors.
    let mut probes: Vec<f64> = grid.iter().flat_map(|&g| [g, g - eps]).collect();
    probes.sort_by(f64::total_cmp);
    probes.dedup();
    for p in probes {
        let (Some(here), Some(there)) = (step_index(&grid, p), step_index(&grid, p + eps)) else {
            continue;
        };
        let back_forth = psi[there].mul(field, &phi[here])?;
        if back_forth != m.map_between(p, p + 2.0 * eps) {
            return Ok(false);
        }
        let forth_back = phi[there].mul(field, &psi[here])?;
        if forth_back != n.map_between(p, p + 2.0 * eps) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Maps `M_p → N_{p+shift}` induced by inclusions of stages, at each `p`.
/// Both towers must come from [`persistence_tower`] with the same flavor.
pub fn tower_inclusion_maps<F: Field>(
    from: &PersistenceTower<F>,
    to: &PersistenceTower<F>,
    shift: f64,
    points: &[f64],
) -> Result<Vec<Matrix<F>>> {
    let (Some(a), Some(b)) = (&from.stages, &to.stages) else {
        return Err(Error::BadParameter("towers must be built from filtrations".into()));
    };
    if a.flavor != b.flavor || from.degree != to.degree {
        return Err(Error::BadParameter("towers use different theories".into()));
    }
    let field = &from.field;
    points
        .iter()
        .map(|&p| match (from.stage_index_at(p), to.stage_index_at(p + shift)) {
            (None, _) => Ok(Matrix::zeros(field, to.dim_at(p + shift), 0)),
            (Some(_), None) => Err(Error::ShapeMismatch(format!("target tower is empty at {}", p + shift))),
            (Some(i), Some(j)) => {
                let images = inclusion_images(&a.spaces[i], &b.spaces[j])?;
                let chain = chain_map(a.flavor, &a.complexes[i], &b.complexes[j], &images, from.degree);
                let entries = induced_map_between(field, &a.homology[i], &b.homology[j], &chain);
                Matrix::new(b.homology[j].dim(), a.homology[i].dim(), entries)
            }
        })
        .collect()
}

/// The structure maps `M_p → M_{p+shift}` at each `p`.
pub fn shifted_structure_maps<F: Field>(tower: &PersistenceTower<F>, shift: f64, points: &[f64]) -> Vec<Matrix<F>> {
    points.iter().map(|&p| tower.map_between(p, p + shift)).collect()
}
