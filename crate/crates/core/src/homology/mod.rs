//! Cubical and simplicial singular homology of closure spaces, plus plain
//! simplicial-complex homology.

mod cubes;
mod induced;
mod simplicial;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::complexes::{complex_up_to, Construction, SimplicialComplex};
use crate::constructions::ProductKind;
use crate::error::{Error, Result};
use crate::interval::IntervalSpec;
use crate::linalg::field::rank_over;
use crate::linalg::{lattice_invariants, Invariants, PrimeField, SparseMatrix};
use crate::space::ClosureSpace;

pub use cubes::{cube_face, cube_space, enumerate_cubes, is_degenerate_cube};
pub use induced::{chain_map, induced_map, induced_map_between, induced_maps_agree_integrally, FieldHomology};
pub use simplicial::{enumerate_simplices, simplex_space};

/// Highest cube dimension built unless a cap is given.
pub const DEFAULT_CUBE_CAP: usize = 6;
/// Highest singular simplex dimension built unless a cap is given.
pub const DEFAULT_SIMPLEX_CAP: usize = 4;

/// The two-point intervals used to build cubes and singular simplices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseInterval {
    J1,
    JPlus,
}

impl BaseInterval {
    pub fn spec(self) -> IntervalSpec {
        match self {
            BaseInterval::J1 => IntervalSpec::j1(),
            BaseInterval::JPlus => IntervalSpec::j_plus(),
        }
    }
}

impl fmt::Display for BaseInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseInterval::J1 => "j1",
            BaseInterval::JPlus => "j+",
        })
    }
}

impl FromStr for BaseInterval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "j1" => Ok(BaseInterval::J1),
            "j+" | "jplus" | "j_+" => Ok(BaseInterval::JPlus),
            _ => Err(Error::BadParameter(format!("unknown interval '{s}' (expected j1 or j+)"))),
        }
    }
}

/// Which chain complex to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Flavor {
    Cubical { interval: BaseInterval, product: ProductKind },
    /// Singular simplices; `normalized` drops simplices repeating a vertex
    /// in consecutive positions.
    Simplicial { interval: BaseInterval, normalized: bool },
    /// Oriented simplicial chains of the VR or Čech complex.
    Complex(Construction),
}

impl Flavor {
    pub fn cubical(interval: BaseInterval, product: ProductKind) -> Self {
        Flavor::Cubical { interval, product }
    }

    pub fn simplicial(interval: BaseInterval) -> Self {
        Flavor::Simplicial {
            interval,
            normalized: false,
        }
    }

    /// The four cubical theories.
    pub fn all_cubical() -> [Flavor; 4] {
        [
            Flavor::cubical(BaseInterval::J1, ProductKind::Product),
            Flavor::cubical(BaseInterval::J1, ProductKind::Inductive),
            Flavor::cubical(BaseInterval::JPlus, ProductKind::Product),
            Flavor::cubical(BaseInterval::JPlus, ProductKind::Inductive),
        ]
    }

    fn default_cap(self) -> usize {
        match self {
            Flavor::Cubical { .. } => DEFAULT_CUBE_CAP,
            Flavor::Simplicial { .. } => DEFAULT_SIMPLEX_CAP,
            Flavor::Complex(_) => usize::MAX,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::Cubical { interval, product } => write!(f, "cubical:{interval}:{product}"),
            Flavor::Simplicial { interval, normalized } => {
                write!(f, "simplicial:{interval}")?;
                if *normalized {
                    f.write_str(":normalized")?;
                }
                Ok(())
            }
            Flavor::Complex(Construction::Vr) => f.write_str("complex:vr"),
            Flavor::Complex(Construction::Cech) => f.write_str("complex:cech"),
        }
    }
}

impl FromStr for Flavor {
    type Err = Error;

    /// Accepts `cubical:j1:x`, `cubical:j+:box`, `simplicial:j1`,
    /// `simplicial:j+:normalized`, `complex:vr`, `complex:cech`, and the
    /// shorthands `j1x`, `j1box`, `j+x`, `j+box`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let parts: Vec<&str> = lower.split(':').collect();
        let bad = || Error::BadParameter(format!("unknown theory '{s}'"));
        match parts.as_slice() {
            ["cubical", i, p] => Ok(Flavor::cubical(i.parse()?, p.parse()?)),
            ["simplicial", i] => Ok(Flavor::simplicial(i.parse()?)),
            ["simplicial", i, "normalized"] => Ok(Flavor::Simplicial {
                interval: i.parse()?,
                normalized: true,
            }),
            ["complex", c] => Ok(Flavor::Complex(c.parse()?)),
            ["vr"] | ["cech"] => Ok(Flavor::Complex(parts[0].parse()?)),
            [short] => {
                for (prefix, interval) in [("j1", BaseInterval::J1), ("j+", BaseInterval::JPlus)] {
                    if let Some(rest) = short.strip_prefix(prefix) {
                        return Ok(Flavor::cubical(interval, rest.parse().map_err(|_| bad())?));
                    }
                }
                Err(bad())
            }
            _ => Err(bad()),
        }
    }
}

/// Coefficient ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Rationals,
    Prime(u64),
}

impl Coefficients {
    pub fn is_field(self) -> bool {
        !matches!(self, Coefficients::Integers)
    }

    fn validate(self) -> Result<()> {
        match self {
            Coefficients::Prime(p) if PrimeField::new(p).is_none() => {
                Err(Error::BadParameter(format!("{p} is not a prime below 2^32")))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => f.write_str("z"),
            Coefficients::Rationals => f.write_str("q"),
            Coefficients::Prime(p) => write!(f, "f{p}"),
        }
    }
}

impl FromStr for Coefficients {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let c = match lower.as_str() {
            "z" | "int" | "integers" => Coefficients::Integers,
            "q" | "rationals" => Coefficients::Rationals,
            other => {
                let p = other
                    .strip_prefix('f')
                    .and_then(|d| d.parse::<u64>().ok())
                    .ok_or_else(|| Error::BadParameter(format!("unknown coefficients '{s}'")))?;
                Coefficients::Prime(p)
            }
        };
        c.validate()?;
        Ok(c)
    }
}

/// A homology theory together with coefficients and reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TheorySpec {
    pub flavor: Flavor,
    pub coefficients: Coefficients,
    pub reduced: bool,
}

impl TheorySpec {
    pub fn new(flavor: Flavor, coefficients: Coefficients, reduced: bool) -> Result<Self> {
        coefficients.validate()?;
        Ok(TheorySpec {
            flavor,
            coefficients,
            reduced,
        })
    }

    pub fn integral(flavor: Flavor) -> Self {
        TheorySpec {
            flavor,
            coefficients: Coefficients::Integers,
            reduced: false,
        }
    }
}

/// A finitely generated homology group: free rank plus torsion over `ℤ`,
/// or a dimension over a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub coefficients: Coefficients,
    pub rank: usize,
    /// Invariant factors above 1, each dividing the next. Empty over fields.
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn free(coefficients: Coefficients, rank: usize) -> Self {
        HomologyGroup {
            coefficients,
            rank,
            torsion: Vec::new(),
        }
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let ring = match self.coefficients {
            Coefficients::Integers => "Z".to_string(),
            Coefficients::Rationals => "Q".to_string(),
            Coefficients::Prime(p) => format!("F{p}"),
        };
        let mut parts = Vec::new();
        if self.rank > 0 {
            parts.push(format!("{ring}^{}", self.rank));
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        f.write_str(&parts.join(" + "))
    }
}

/// Free chain complex with an explicit basis in each degree `0..=top`.
///
/// Cells are point-index lists: cube value tables, singular simplex vertex
/// tuples, or sorted simplices.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    cells: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
    /// `boundaries[n]` is `∂_n : C_n → C_{n-1}`; `∂_0` has no rows.
    boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Checks `∂_{n-1} ∂_n = 0` and shapes.
    pub fn new(cells: Vec<Vec<Vec<usize>>>, boundaries: Vec<SparseMatrix>) -> Self {
        assert_eq!(cells.len(), boundaries.len(), "one boundary per degree");
        for n in 0..cells.len() {
            assert_eq!(boundaries[n].ncols(), cells[n].len());
            let below = if n == 0 { 0 } else { cells[n - 1].len() };
            assert_eq!(boundaries[n].rows(), below);
            if n >= 2 {
                assert!(boundaries[n - 1].mul(&boundaries[n]).is_zero(), "boundary squared is non-zero in degree {n}");
            }
        }
        let index = cells
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        ChainComplex {
            cells,
            index,
            boundaries,
        }
    }

    /// Builds cells through degree `top` from alternating-sign faces.
    fn from_faces(cells: Vec<Vec<Vec<usize>>>, faces: impl Fn(usize, &[usize]) -> Vec<(Vec<usize>, i64)>) -> Self {
        let index: Vec<HashMap<Vec<usize>, usize>> = cells
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        let mut boundaries = vec![SparseMatrix::from_columns(0, vec![Vec::new(); cells.first().map_or(0, |c| c.len())])];
        for n in 1..cells.len() {
            let cols = cells[n]
                .iter()
                .map(|cell| {
                    let mut acc: std::collections::BTreeMap<usize, i64> = Default::default();
                    for (face, sign) in faces(n, cell) {
                        if let Some(&row) = index[n - 1].get(&face) {
                            *acc.entry(row).or_default() += sign;
                        }
                    }
                    acc.into_iter().filter(|&(_, v)| v != 0).collect()
                })
                .collect();
            boundaries.push(SparseMatrix::from_columns(cells[n - 1].len(), cols));
        }
        Self::new(cells, boundaries)
    }

    /// Highest degree with a basis.
    pub fn top_degree(&self) -> usize {
        self.cells.len() - 1
    }

    pub fn cells(&self, n: usize) -> &[Vec<usize>] {
        &self.cells[n]
    }

    pub fn cell_index(&self, n: usize, cell: &[usize]) -> Option<usize> {
        self.index.get(n)?.get(cell).copied()
    }

    pub fn rank(&self, n: usize) -> usize {
        self.cells.get(n).map_or(0, |c| c.len())
    }

    pub fn boundary(&self, n: usize) -> &SparseMatrix {
        &self.boundaries[n]
    }

    /// `∂_n`, or the augmentation when `n = 0` and `reduced`.
    pub fn boundary_for(&self, n: usize, reduced: bool) -> std::borrow::Cow<'_, SparseMatrix> {
        if n == 0 && reduced {
            std::borrow::Cow::Owned(SparseMatrix::augmentation(self.rank(0)))
        } else {
            std::borrow::Cow::Borrowed(&self.boundaries[n])
        }
    }

    fn check_degree(&self, n: usize) -> Result<()> {
        if n >= self.top_degree() {
            return Err(Error::DegreeOutOfRange(n));
        }
        Ok(())
    }

    /// `H_n`; needs the basis in degree `n + 1`.
    pub fn homology(&self, n: usize, coefficients: Coefficients, reduced: bool) -> Result<HomologyGroup> {
        Ok(self.homology_range(n..=n, coefficients, reduced)?.remove(0))
    }

    /// Homology in each degree of `degrees`, sharing matrix reductions.
    pub fn homology_range(
        &self,
        degrees: std::ops::RangeInclusive<usize>,
        coefficients: Coefficients,
        reduced: bool,
    ) -> Result<Vec<HomologyGroup>> {
        coefficients.validate()?;
        let (lo, hi) = (*degrees.start(), *degrees.end());
        if lo > hi {
            return Ok(Vec::new());
        }
        self.check_degree(hi)?;
        let mut invariants: HashMap<usize, Invariants> = HashMap::new();
        let mut get = |n: usize| -> Invariants {
            invariants
                .entry(n)
                .or_insert_with(|| {
                    let m = self.boundary_for(n, reduced);
                    match coefficients {
                        Coefficients::Prime(p) => Invariants {
                            rank: rank_over(&PrimeField::new(p).expect("validated prime"), &m),
                            torsion: Vec::new(),
                        },
                        _ => lattice_invariants(&m),
                    }
                })
                .clone()
        };
        let mut out = Vec::new();
        for n in lo..=hi {
            let incoming = get(n + 1);
            let outgoing = get(n);
            let rank = self.rank(n) - outgoing.rank - incoming.rank;
            let torsion = if coefficients == Coefficients::Integers {
                incoming.torsion
            } else {
                Vec::new()
            };
            out.push(HomologyGroup {
                coefficients,
                rank,
                torsion,
            });
        }
        Ok(out)
    }
}

/// Chain complex of `space` in the given flavor with bases through degree
/// `top`, using the flavor's default dimension cap.
pub fn chain_complex(space: &ClosureSpace, flavor: Flavor, top: usize) -> Result<ChainComplex> {
    chain_complex_capped(space, flavor, top, flavor.default_cap())
}

pub fn chain_complex_capped(space: &ClosureSpace, flavor: Flavor, top: usize, cap: usize) -> Result<ChainComplex> {
    if top > cap {
        return Err(Error::DimensionTooLarge { requested: top, cap });
    }
    match flavor {
        Flavor::Cubical { interval, product } => cubes::cubical_chain_complex(space, interval, product, top),
        Flavor::Simplicial { interval, normalized } => {
            simplicial::singular_chain_complex(space, interval, normalized, top)
        }
        Flavor::Complex(construction) => Ok(complex_chain_complex(&complex_up_to(space, construction, top), top)),
    }
}

/// Oriented chains of a simplicial complex through degree `top`.
pub fn complex_chain_complex(complex: &SimplicialComplex, top: usize) -> ChainComplex {
    let cells: Vec<Vec<Vec<usize>>> = (0..=top).map(|d| complex.simplices_of_dim(d)).collect();
    ChainComplex::from_faces(cells, simplicial::deletion_faces)
}

/// Homology of a space in each degree of `degrees`.
pub fn space_homology(
    space: &ClosureSpace,
    theory: &TheorySpec,
    degrees: std::ops::RangeInclusive<usize>,
) -> Result<Vec<HomologyGroup>> {
    let cx = chain_complex(space, theory.flavor, degrees.end() + 1)?;
    cx.homology_range(degrees, theory.coefficients, theory.reduced)
}
