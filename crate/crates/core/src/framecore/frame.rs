use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::FrameError;
use crate::exactalg::{unit_power, CycPolynomial, Cyclotomic, ExactMatrix};
use crate::genfamily::{ExponentFamily, Tau, DEFAULT_TAU};
use crate::groups::InducedRep;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FrameMode {
    Exact,
    Numeric,
}

impl FrameMode {
    pub fn as_str(self) -> &'static str {
        match self {
            FrameMode::Exact => "exact",
            FrameMode::Numeric => "numeric",
        }
    }
}

/// How a frame was produced. Column `i` is `column_order[i] = [ℓ, k]`, the
/// `k`-th shift of the `ℓ`-th diagonal applied to the generating vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub family: String,
    pub vector: String,
    pub column_order: Vec<[usize; 2]>,
    pub h_enumeration: Option<Vec<u64>>,
    /// `τ` with `t = e^{2πiτ}` used whenever exact entries are evaluated.
    pub tau: f64,
}

impl Provenance {
    pub fn plain(description: &str, count: usize) -> Self {
        Provenance {
            family: description.to_string(),
            vector: String::new(),
            column_order: (0..count).map(|i| [i, 0]).collect(),
            h_enumeration: None,
            tau: DEFAULT_TAU,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum FrameData {
    Exact(ExactMatrix),
    Numeric(DMatrix<Complex64>),
}

/// A `d × M` matrix whose columns are the frame vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameMatrix {
    data: FrameData,
    provenance: Provenance,
}

impl FrameMatrix {
    pub fn exact(m: ExactMatrix, provenance: Provenance) -> Result<Self, FrameError> {
        for c in 0..m.cols() {
            if (0..m.rows()).all(|r| m.get(r, c).is_zero()) {
                return Err(FrameError::ZeroColumn(c));
            }
        }
        Self::checked(FrameData::Exact(m), provenance)
    }

    pub fn numeric(m: DMatrix<Complex64>, provenance: Provenance) -> Result<Self, FrameError> {
        for (c, col) in m.column_iter().enumerate() {
            if col.norm() == 0.0 {
                return Err(FrameError::ZeroColumn(c));
            }
        }
        Self::checked(FrameData::Numeric(m), provenance)
    }

    fn checked(data: FrameData, provenance: Provenance) -> Result<Self, FrameError> {
        let f = FrameMatrix { data, provenance };
        if f.dim() == 0 || f.count() == 0 {
            return Err(FrameError::Shape("a frame needs at least one row and one column".into()));
        }
        if f.provenance.column_order.len() != f.count() {
            return Err(FrameError::Shape(format!(
                "column order lists {} columns for a frame of {}",
                f.provenance.column_order.len(),
                f.count()
            )));
        }
        Ok(f)
    }

    pub fn dim(&self) -> usize {
        match &self.data {
            FrameData::Exact(m) => m.rows(),
            FrameData::Numeric(m) => m.nrows(),
        }
    }

    pub fn count(&self) -> usize {
        match &self.data {
            FrameData::Exact(m) => m.cols(),
            FrameData::Numeric(m) => m.ncols(),
        }
    }

    pub fn mode(&self) -> FrameMode {
        match self.data {
            FrameData::Exact(_) => FrameMode::Exact,
            FrameData::Numeric(_) => FrameMode::Numeric,
        }
    }

    pub fn data(&self) -> &FrameData {
        &self.data
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn exact_matrix(&self) -> Option<&ExactMatrix> {
        match &self.data {
            FrameData::Exact(m) => Some(m),
            FrameData::Numeric(_) => None,
        }
    }

    /// Cyclotomic order of exact entries; `None` for numeric frames.
    pub fn ambient_order(&self) -> Option<u32> {
        self.exact_matrix().map(ExactMatrix::order)
    }

    /// Numeric matrix: exact entries are evaluated at `t = e^{2πiτ}` with the
    /// provenance's `τ`.
    pub fn to_numeric_matrix(&self) -> DMatrix<Complex64> {
        match &self.data {
            FrameData::Numeric(m) => m.clone(),
            FrameData::Exact(m) => {
                let tau = self.provenance.tau;
                DMatrix::from_fn(m.rows(), m.cols(), |r, c| m.get(r, c).eval_unit(tau))
            }
        }
    }

    /// The numeric frame obtained by evaluating exact entries at `t = e^{2πiτ}`.
    pub fn specialize(&self, tau: f64) -> Result<FrameMatrix, FrameError> {
        let mut provenance = self.provenance.clone();
        provenance.tau = tau;
        let tmp = FrameMatrix {
            data: self.data.clone(),
            provenance,
        };
        let m = tmp.to_numeric_matrix();
        FrameMatrix::numeric(m, tmp.provenance)
    }

    /// Frame with the selected columns, keeping their provenance labels.
    pub fn select_columns(&self, cols: &[usize]) -> Result<FrameMatrix, FrameError> {
        if let Some(&c) = cols.iter().find(|&&c| c >= self.count()) {
            return Err(FrameError::Shape(format!("column {c} out of range")));
        }
        let mut provenance = self.provenance.clone();
        provenance.column_order = cols.iter().map(|&c| self.provenance.column_order[c]).collect();
        match &self.data {
            FrameData::Exact(m) => {
                let rows: Vec<usize> = (0..m.rows()).collect();
                FrameMatrix::exact(m.submatrix(&rows, cols), provenance)
            }
            FrameData::Numeric(m) => FrameMatrix::numeric(m.select_columns(cols), provenance),
        }
    }
}

/// The vector `v` whose orbit forms the frame.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratingVector {
    /// `v_k = t^{e_k}`.
    Monomial(Vec<u64>),
    ExplicitExact(Vec<CycPolynomial>),
    ExplicitNumeric(Vec<Complex64>),
    /// Seeded random entries: integers in `[-1000, 1000]` in exact mode,
    /// standard complex Gaussians in numeric mode.
    RandomGaussian(u64),
}

impl GeneratingVector {
    /// `v_k = t^{k²}` for `k = 0..d`.
    pub fn monomial_squares(d: usize) -> Self {
        GeneratingVector::Monomial((0..d as u64).map(|k| k * k).collect())
    }

    pub fn describe(&self) -> String {
        match self {
            GeneratingVector::Monomial(e) => {
                if e.iter().enumerate().all(|(k, &x)| x == (k * k) as u64) {
                    "monomial-squares".into()
                } else {
                    format!("monomial:{}", join(e))
                }
            }
            GeneratingVector::ExplicitExact(v) => {
                let parts: Vec<String> = v.iter().map(|p| p.to_string()).collect();
                format!("explicit:{}", parts.join(","))
            }
            GeneratingVector::ExplicitNumeric(v) => {
                let parts: Vec<String> = v
                    .iter()
                    .map(|z| if z.im == 0.0 { format!("{}", z.re) } else { format!("{}{:+}i", z.re, z.im) })
                    .collect();
                format!("explicit:{}", parts.join(","))
            }
            GeneratingVector::RandomGaussian(seed) => format!("random:{seed}"),
        }
    }

    fn check_len(&self, d: usize) -> Result<(), FrameError> {
        let len = match self {
            GeneratingVector::Monomial(e) => e.len(),
            GeneratingVector::ExplicitExact(v) => v.len(),
            GeneratingVector::ExplicitNumeric(v) => v.len(),
            GeneratingVector::RandomGaussian(_) => d,
        };
        if len != d {
            return Err(FrameError::DimensionMismatch { expected: d, got: len });
        }
        Ok(())
    }

    /// Exact entries in `Q(ζ_order)[t]`.
    pub fn exact_entries(&self, d: usize, order: u32) -> Result<Vec<CycPolynomial>, FrameError> {
        self.check_len(d)?;
        let v = match self {
            GeneratingVector::Monomial(e) => e
                .iter()
                .map(|&x| CycPolynomial::monomial(Cyclotomic::one(order), x))
                .collect(),
            GeneratingVector::ExplicitExact(v) => v.clone(),
            GeneratingVector::ExplicitNumeric(_) => {
                return Err(FrameError::ModeMismatch(
                    "a floating-point generating vector cannot build an exact frame".into(),
                ))
            }
            GeneratingVector::RandomGaussian(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                loop {
                    let v: Vec<i64> = (0..d).map(|_| rng.random_range(-1000..=1000)).collect();
                    if v.iter().any(|&x| x != 0) {
                        break v.into_iter().map(|x| CycPolynomial::from_integer(order, x)).collect();
                    }
                }
            }
        };
        if v.iter().all(CycPolynomial::is_zero) {
            return Err(FrameError::ZeroVector);
        }
        Ok(v)
    }

    /// Numeric entries with `t = e^{2πiτ}`.
    pub fn numeric_entries(&self, d: usize, tau: f64) -> Result<Vec<Complex64>, FrameError> {
        self.check_len(d)?;
        let v: Vec<Complex64> = match self {
            GeneratingVector::Monomial(e) => e.iter().map(|&x| unit_power(tau, x)).collect(),
            GeneratingVector::ExplicitExact(v) => v.iter().map(|p| p.eval_unit(tau)).collect(),
            GeneratingVector::ExplicitNumeric(v) => v.clone(),
            GeneratingVector::RandomGaussian(seed) => random_gaussian_vector(d, *seed),
        };
        if v.iter().all(|z| z.norm() == 0.0) {
            return Err(FrameError::ZeroVector);
        }
        Ok(v)
    }
}

/// Seeded vector of independent standard complex Gaussians.
pub fn random_gaussian_vector(d: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..d)
        .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect()
}

fn join(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// A set of diagonal matrices `M_ℓ` together with shifts, whose products
/// applied to a vector give an orbit frame.
#[derive(Clone, Copy, Debug)]
pub enum OrbitFamily<'a> {
    /// `π(x,1) π(0,h_k) v` for an induced representation of `Z_N ⋊ H`.
    Group(&'a InducedRep),
    /// `D_{λ_ℓ} T^k v` with `D_λ = diag(t^{λ ξ_j})`.
    Exponent(&'a ExponentFamily),
    /// `diag(column ℓ of M) · T^k v` for an explicit `d × m` matrix `M`.
    Matrix(&'a ExactMatrix),
}

impl OrbitFamily<'_> {
    pub fn dim(&self) -> usize {
        match self {
            OrbitFamily::Group(r) => r.dim(),
            OrbitFamily::Exponent(f) => f.dim(),
            OrbitFamily::Matrix(m) => m.rows(),
        }
    }

    /// Number of diagonal matrices.
    pub fn diagonals(&self) -> usize {
        match self {
            OrbitFamily::Group(r) => r.n() as usize,
            OrbitFamily::Exponent(f) => f.count(),
            OrbitFamily::Matrix(m) => m.cols(),
        }
    }

    fn order(&self) -> u32 {
        match self {
            OrbitFamily::Group(r) => r.n() as u32,
            OrbitFamily::Exponent(f) => f.ambient_order(),
            OrbitFamily::Matrix(m) => m.order(),
        }
    }

    /// `τ` for the generating vector's `t`. It coincides with the family's
    /// `t` for transcendental exponent families and is an independent
    /// indeterminate otherwise.
    fn vector_tau(&self) -> f64 {
        match self {
            OrbitFamily::Exponent(f) if f.tau() == Tau::Transcendental => f.numeric_tau(),
            _ => DEFAULT_TAU,
        }
    }

    /// `perm[k][j]`: coordinate j of the k-th shift of `v` is `v[perm[k][j]]`.
    fn shifts(&self) -> Vec<Vec<usize>> {
        let d = self.dim();
        match self {
            OrbitFamily::Group(r) => r.h_enumeration().iter().map(|&h| r.shift_permutation(h)).collect(),
            _ => (0..d).map(|k| (0..d).map(|j| (j + d - k) % d).collect()).collect(),
        }
    }

    fn diag_exact(&self, l: usize, j: usize) -> CycPolynomial {
        match self {
            OrbitFamily::Group(r) => {
                let e = r.diagonal_exponents(l as u64)[j];
                CycPolynomial::constant(Cyclotomic::root_of_unity(r.n() as u32, e as i64))
            }
            OrbitFamily::Exponent(f) => f.power(f.exponent(j, l)),
            OrbitFamily::Matrix(m) => m.get(j, l).clone(),
        }
    }

    fn diag_numeric(&self, l: usize, j: usize) -> Complex64 {
        match self {
            OrbitFamily::Group(r) => {
                let e = r.diagonal_exponents(l as u64)[j];
                Complex64::from_polar(1.0, std::f64::consts::TAU * e as f64 / r.n() as f64)
            }
            OrbitFamily::Exponent(f) => f.power_numeric(f.exponent(j, l)),
            OrbitFamily::Matrix(m) => m.get(j, l).eval_unit(DEFAULT_TAU),
        }
    }

    fn describe(&self) -> String {
        match self {
            OrbitFamily::Group(r) => format!(
                "Z_{} x| H, H={:?}, xi={}",
                r.n(),
                r.group().subgroup().elements(),
                r.xi()
            ),
            OrbitFamily::Exponent(f) => f.describe(),
            OrbitFamily::Matrix(m) => format!("diagonals from a {}x{} matrix", m.rows(), m.cols()),
        }
    }

    fn h_enumeration(&self) -> Option<Vec<u64>> {
        match self {
            OrbitFamily::Group(r) => Some(r.h_enumeration().to_vec()),
            _ => None,
        }
    }
}

/// Builds the orbit frame with columns `M_ℓ · shift_k(v)` for `ℓ ∈ [0, m)`,
/// `k ∈ [0, d)`, column index `ℓ·d + k`.
pub fn orbit_frame(family: OrbitFamily<'_>, v: &GeneratingVector, mode: FrameMode) -> Result<FrameMatrix, FrameError> {
    let d = family.dim();
    let m = family.diagonals();
    let shifts = family.shifts();
    let tau = family.vector_tau();
    let provenance = Provenance {
        family: family.describe(),
        vector: v.describe(),
        column_order: (0..m).flat_map(|l| (0..d).map(move |k| [l, k])).collect(),
        h_enumeration: family.h_enumeration(),
        tau,
    };
    match mode {
        FrameMode::Exact => {
            let entries = v.exact_entries(d, family.order())?;
            let diag: Vec<Vec<CycPolynomial>> = (0..m)
                .map(|l| (0..d).map(|j| family.diag_exact(l, j)).collect())
                .collect();
            let mut cells = Vec::with_capacity(d * m * d);
            for j in 0..d {
                for row in &diag {
                    for shift in &shifts {
                        cells.push(row[j].checked_mul(&entries[shift[j]])?);
                    }
                }
            }
            FrameMatrix::exact(ExactMatrix::new(d, m * d, cells)?, provenance)
        }
        FrameMode::Numeric => {
            let entries = v.numeric_entries(d, tau)?;
            let mat = DMatrix::from_fn(d, m * d, |j, c| {
                let (l, k) = (c / d, c % d);
                family.diag_numeric(l, j) * entries[shifts[k][j]]
            });
            FrameMatrix::numeric(mat, provenance)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{induced_rep, GroupElement, SemidirectGroup};

    fn z5() -> InducedRep {
        induced_rep(&SemidirectGroup::from_parts(5, &[1, 2, 3, 4]).unwrap(), 1)
    }

    #[test]
    fn group_orbit_shape_and_columns() {
        let rep = z5();
        let v = GeneratingVector::monomial_squares(4);
        let f = orbit_frame(OrbitFamily::Group(&rep), &v, FrameMode::Exact).unwrap();
        assert_eq!((f.dim(), f.count()), (4, 20));
        assert_eq!(f.provenance().column_order[7], [1, 3]);
        assert_eq!(f.provenance().h_enumeration, Some(vec![1, 2, 4, 3]));
        // oracle: column (x, k) is π(x, h_k) v computed by matrix product
        let m = f.exact_matrix().unwrap();
        let vcol = ExactMatrix::new(4, 1, v.exact_entries(4, 5).unwrap()).unwrap();
        for (c, &[x, k]) in f.provenance().column_order.iter().enumerate() {
            let g = GroupElement::new(x as u64, rep.h_enumeration()[k]);
            let expect = rep.matrix(g).unwrap().checked_mul(&vcol).unwrap();
            for j in 0..4 {
                assert_eq!(m.get(j, c), expect.get(j, 0), "column {c}");
            }
        }
    }

    #[test]
    fn sqrt2_family_numeric_frame() {
        let fam = ExponentFamily::new(vec![1, 2, 3, 4], (0..7).collect(), Tau::Transcendental).unwrap();
        let v = GeneratingVector::ExplicitNumeric([1.0, 2.0, 3.0, 4.0].map(|x| Complex64::new(x, 0.0)).to_vec());
        let f = orbit_frame(OrbitFamily::Exponent(&fam), &v, FrameMode::Numeric).unwrap();
        assert_eq!((f.dim(), f.count(), f.mode()), (4, 28, FrameMode::Numeric));
        let m = f.to_numeric_matrix();
        // column (ℓ=2, k=1): entry j = t^{2 ξ_j} v_{j-1}
        let expect = unit_power(DEFAULT_TAU, 2 * 3) * Complex64::new(2.0, 0.0);
        assert!((m[(2, 2 * 4 + 1)] - expect).norm() < 1e-12);
    }

    #[test]
    fn one_dimensional_family() {
        let fam = ExponentFamily::new(vec![1], (0..3).collect(), Tau::Transcendental).unwrap();
        let v = GeneratingVector::ExplicitExact(vec![CycPolynomial::one(1)]);
        let f = orbit_frame(OrbitFamily::Exponent(&fam), &v, FrameMode::Exact).unwrap();
        assert_eq!((f.dim(), f.count()), (1, 3));
    }

    #[test]
    fn vector_errors() {
        let rep = z5();
        let short = GeneratingVector::Monomial(vec![0, 1]);
        assert!(matches!(
            orbit_frame(OrbitFamily::Group(&rep), &short, FrameMode::Exact),
            Err(FrameError::DimensionMismatch { expected: 4, got: 2 })
        ));
        let zero = GeneratingVector::ExplicitNumeric(vec![Complex64::new(0.0, 0.0); 4]);
        assert!(matches!(
            orbit_frame(OrbitFamily::Group(&rep), &zero, FrameMode::Numeric),
            Err(FrameError::ZeroVector)
        ));
        let numeric = GeneratingVector::ExplicitNumeric(vec![Complex64::new(1.0, 0.0); 4]);
        assert!(matches!(
            orbit_frame(OrbitFamily::Group(&rep), &numeric, FrameMode::Exact),
            Err(FrameError::ModeMismatch(_))
        ));
    }

    #[test]
    fn random_vectors_are_seeded() {
        let a = GeneratingVector::RandomGaussian(42).numeric_entries(3, 0.1).unwrap();
        let b = GeneratingVector::RandomGaussian(42).numeric_entries(3, 0.1).unwrap();
        assert_eq!(a, b);
        let e = GeneratingVector::RandomGaussian(7).exact_entries(3, 1).unwrap();
        for p in e {
            let c = p.as_constant().unwrap().as_rational().unwrap();
            assert!(c.is_integer() && c.to_f64().abs() <= 1000.0);
        }
    }

    #[test]
    fn specialization_matches_numeric_build() {
        let rep = z5();
        let v = GeneratingVector::monomial_squares(4);
        let exact = orbit_frame(OrbitFamily::Group(&rep), &v, FrameMode::Exact).unwrap();
        let numeric = orbit_frame(OrbitFamily::Group(&rep), &v, FrameMode::Numeric).unwrap();
        let diff = exact.specialize(DEFAULT_TAU).unwrap().to_numeric_matrix() - numeric.to_numeric_matrix();
        assert!(diff.norm() < 1e-12);
    }
}
