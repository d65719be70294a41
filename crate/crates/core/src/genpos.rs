//! Generic-position subspace arithmetic over the rationals.
//!
//! A seeded, replayable oracle instantiates the vector configurations behind
//! the pointing-bundle arguments: n generic vectors in an n-dimensional
//! space, the "all but one" facet subspaces U_i they span, and intersection
//! dimension counts. Genericity is re-verified on every sample, not
//! assumed; the same seed always reproduces the same vectors bit for bit.
//!
//! Verification strategy: full rank of an integer matrix is certified by
//! full rank modulo a fixed prime (a nonzero determinant mod p is nonzero
//! over Q), and a sample whose certificate fails is resampled like any
//! other degenerate draw. Once the n x n vector matrix has p-unit
//! determinant, the coordinates of any integer vector in the v-basis are
//! p-integral, so facet membership and facet intersections reduce mod p
//! faithfully: a nonzero pairing certifies non-membership, saturated
//! subspaces keep their dimension under reduction, and every k-fold facet
//! intersection has dimension exactly n - k. Anything the certificate
//! leaves ambiguous (a zero pairing mod p) is settled by exact rational
//! elimination, which also serves as an independent cross-check on small
//! configurations.

use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{Int, Rational};
use crate::linalg::QMatrix;

/// Coordinates are drawn as integers in this symmetric range (denominator 1);
/// echelon arithmetic stays small and degeneracy has negligible probability.
const COORD_BOUND: i64 = 10_000;
const MAX_RESAMPLE: usize = 64;

/// Deterministic seed derivation for independent sub-streams of one run.
pub fn split_seed(seed: u64, label: u64) -> u64 {
    // splitmix64 finalizer over the labeled seed.
    let mut z = seed ^ label.wrapping_mul(0x9e37_79b9_7f4a_7c15);
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Arithmetic modulo the Mersenne prime 2^61 - 1, used for rank
/// certificates on integer matrices.
mod modp {
    pub const P: u64 = (1 << 61) - 1;

    pub fn reduce_i64(x: i64) -> u64 {
        x.rem_euclid(P as i64) as u64
    }

    pub fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    pub fn sub(a: u64, b: u64) -> u64 {
        (a + P - b) % P
    }

    pub fn inv(a: u64) -> u64 {
        // Fermat: a^(P-2) mod P.
        let mut base = a % P;
        let mut exp = P - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mul(acc, base);
            }
            base = mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn rank(mut m: Vec<Vec<u64>>) -> usize {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, p);
            let pivot_inv = inv(m[r][c]);
            for i in (r + 1)..rows {
                if m[i][c] == 0 {
                    continue;
                }
                let f = mul(m[i][c], pivot_inv);
                for j in c..cols {
                    let t = mul(f, m[r][j]);
                    m[i][j] = sub(m[i][j], t);
                }
            }
            r += 1;
        }
        r
    }

    /// Rows w_i with w_i . v_j = delta_ij mod P, i.e. the inverse transpose
    /// of the square matrix whose rows are the v_j. None when singular
    /// mod P.
    pub fn dual_rows(v: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
        let n = v.len();
        if n == 0 || v.iter().any(|row| row.len() != n) {
            return None;
        }
        // Gauss-Jordan on [V^T | I].
        let mut aug: Vec<Vec<u64>> = (0..n)
            .map(|i| {
                let mut row: Vec<u64> = (0..n).map(|j| v[j][i]).collect();
                row.extend((0..n).map(|j| u64::from(i == j)));
                row
            })
            .collect();
        for k in 0..n {
            let p = (k..n).find(|&i| aug[i][k] != 0)?;
            aug.swap(k, p);
            let pivot_inv = inv(aug[k][k]);
            for j in 0..2 * n {
                aug[k][j] = mul(aug[k][j], pivot_inv);
            }
            for i in 0..n {
                if i == k || aug[i][k] == 0 {
                    continue;
                }
                let f = aug[i][k];
                for j in 0..2 * n {
                    let t = mul(f, aug[k][j]);
                    aug[i][j] = sub(aug[i][j], t);
                }
            }
        }
        Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
    }
}

fn to_modp_rows(vectors: &[Vec<Rational>]) -> Vec<Vec<u64>> {
    vectors
        .iter()
        .map(|v| {
            v.iter()
                .map(|r| {
                    debug_assert!(r.is_integer());
                    let num = r.numer();
                    let reduced: Int = num % (modp::P as i64);
                    let as_i64 = i64::try_from(&reduced).expect("reduced value fits");
                    modp::reduce_i64(as_i64)
                })
                .collect()
        })
        .collect()
}

/// A seeded family of integer vectors in which every subset of at most
/// ambient_dim vectors is linearly independent; draws failing the rank
/// certificate are resampled.
#[derive(Clone, Debug)]
pub struct GenericConfig {
    ambient_dim: usize,
    vectors: Vec<Vec<Rational>>,
    seed: u64,
}

impl GenericConfig {
    pub fn sample(ambient_dim: usize, count: usize, seed: u64) -> Result<Self> {
        if ambient_dim == 0 {
            return Err(Error::invalid("ambient dimension must be positive"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..MAX_RESAMPLE {
            let vectors: Vec<Vec<Rational>> = (0..count)
                .map(|_| {
                    (0..ambient_dim)
                        .map(|_| Rational::from(rng.gen_range(-COORD_BOUND..=COORD_BOUND)))
                        .collect()
                })
                .collect();
            if Self::is_generic(ambient_dim, &vectors)? {
                return Ok(GenericConfig {
                    ambient_dim,
                    vectors,
                    seed,
                });
            }
        }
        Err(Error::invalid(
            "failed to sample a generic configuration (astronomically unlikely)",
        ))
    }

    /// Every subset of size <= ambient_dim independent, certified mod P.
    /// For count <= ambient this is one full-rank check (subsets of an
    /// independent set are independent); otherwise every ambient-sized
    /// subset is checked, which is only tractable for small overshoots.
    fn is_generic(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<bool> {
        let count = vectors.len();
        let rows = to_modp_rows(vectors);
        if count <= ambient_dim {
            return Ok(modp::rank(rows) == count);
        }
        let subsets = binomial(count, ambient_dim);
        if subsets > 200_000 {
            return Err(Error::invalid(format!(
                "genericity check over {subsets} subsets is not tractable"
            )));
        }
        let mut idx: Vec<usize> = (0..ambient_dim).collect();
        loop {
            let subset: Vec<Vec<u64>> = idx.iter().map(|&i| rows[i].clone()).collect();
            if modp::rank(subset) != ambient_dim {
                return Ok(false);
            }
            if !next_combination(&mut idx, count) {
                return Ok(true);
            }
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn vector(&self, i: usize) -> &[Rational] {
        &self.vectors[i]
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A linear subspace in reduced-echelon canonical form: equality of the
/// representation is equality of the subspace.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: QMatrix::identity(ambient_dim).row_vecs(),
        }
    }

    /// Canonical echelon basis of the span of the given vectors.
    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self> {
        if vectors.iter().any(|v| v.len() != ambient_dim) {
            return Err(Error::invalid(
                "span vectors must share the ambient dimension",
            ));
        }
        if vectors.is_empty() {
            return Ok(Subspace::zero(ambient_dim));
        }
        let (r, pivots) = QMatrix::from_rows(vectors.to_vec())?.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Ok(Subspace { ambient_dim, basis })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    fn basis_matrix(&self) -> QMatrix {
        if self.basis.is_empty() {
            QMatrix::zero(0, self.ambient_dim)
        } else {
            QMatrix::from_rows(self.basis.clone()).expect("canonical basis is rectangular")
        }
    }

    /// The annihilator {f : f . v = 0 for all v in the subspace}, i.e. the
    /// kernel of the basis matrix.
    pub fn annihilator(&self) -> Subspace {
        let ker = self.basis_matrix().kernel_basis();
        Subspace::span(self.ambient_dim, &ker).expect("kernel vectors share ambient")
    }

    /// Exact intersection via the kernel of the stacked dual constraints.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        Subspace::meet_many(&[self, other])
    }

    pub fn meet_many(parts: &[&Subspace]) -> Result<Subspace> {
        let Some(first) = parts.first() else {
            return Err(Error::invalid("meet of an empty list of subspaces"));
        };
        let ambient = first.ambient_dim;
        if parts.iter().any(|s| s.ambient_dim != ambient) {
            return Err(Error::DimensionMismatch {
                left: ambient,
                right: parts
                    .iter()
                    .map(|s| s.ambient_dim)
                    .find(|&a| a != ambient)
                    .unwrap_or(ambient),
            });
        }
        let mut constraints: Vec<Vec<Rational>> = Vec::new();
        for s in parts {
            constraints.extend(s.annihilator().basis.iter().cloned());
        }
        if constraints.is_empty() {
            return Ok(Subspace::full(ambient));
        }
        let ker = QMatrix::from_rows(constraints)?.kernel_basis();
        Subspace::span(ambient, &ker)
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        if self.ambient_dim != other.ambient_dim || other.dim() > self.dim() {
            return false;
        }
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        match QMatrix::from_rows(rows) {
            Ok(m) => m.rank() == self.dim(),
            Err(_) => false,
        }
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        if v.len() != self.ambient_dim {
            return false;
        }
        let probe = Subspace::span(self.ambient_dim, &[v.to_vec()]).expect("one vector");
        self.contains(&probe)
    }
}

/// dim(f1) - dim(f1 meet f2), for subspaces of equal dimension.
pub fn codim_in(f1: &Subspace, f2: &Subspace) -> Result<usize> {
    if f1.dim() != f2.dim() {
        return Err(Error::DimensionMismatch {
            left: f1.dim(),
            right: f2.dim(),
        });
    }
    Ok(f1.dim() - f1.meet(f2)?.dim())
}

/// Exact determinant of the kappa x kappa matrix with zeros on the diagonal
/// and ones everywhere else. Its eigenvalues are kappa-1 (once) and -1
/// (kappa-1 times), so the determinant is (-1)^(kappa-1) (kappa-1); the
/// value here is computed by elimination, and the closed form is a test.
pub fn ones_off_diagonal_det(kappa: usize) -> Int {
    let m = QMatrix::from_fn(kappa, kappa, |i, j| {
        if i == j {
            Rational::zero()
        } else {
            Rational::one()
        }
    });
    let det = m.det().expect("square");
    det.to_int().expect("integer matrix has integer determinant")
}

/// True iff the all-ones-minus-identity matrix of size kappa is invertible
/// over the rationals.
pub fn li_basis_check(kappa: usize) -> bool {
    !ones_off_diagonal_det(kappa).is_zero()
}

/// The pointing configuration: n generic vectors v_1..v_n spanning an
/// n-dimensional space, certified by a p-unit determinant. U_i denotes the
/// span of all vectors but v_i; membership and intersection queries go
/// through the mod-p dual rows, with exact elimination deciding anything
/// the reduction leaves ambiguous.
pub struct PointingConfig {
    config: GenericConfig,
    duals_modp: Vec<Vec<u64>>,
}

impl PointingConfig {
    pub fn sample(n: usize, seed: u64) -> Result<Self> {
        let config = GenericConfig::sample(n, n, seed)?;
        let vbar = to_modp_rows(config.vectors());
        // The sampler certified full rank mod P, so the dual rows exist.
        let duals_modp = modp::dual_rows(&vbar)
            .ok_or_else(|| Error::bookkeeping("certified sample was singular mod P"))?;
        // Verify the diagonal pairing; everything downstream rests on it.
        for (i, w) in duals_modp.iter().enumerate() {
            for (j, v) in vbar.iter().enumerate() {
                let dot = w
                    .iter()
                    .zip(v)
                    .fold(0u64, |acc, (&a, &b)| (acc + modp::mul(a, b)) % modp::P);
                let expected = u64::from(i == j);
                if dot != expected {
                    return Err(Error::bookkeeping("dual pairing failed mod P"));
                }
            }
        }
        Ok(PointingConfig { config, duals_modp })
    }

    pub fn n(&self) -> usize {
        self.config.ambient_dim()
    }

    pub fn seed(&self) -> u64 {
        self.config.seed()
    }

    pub fn config(&self) -> &GenericConfig {
        &self.config
    }

    /// Full span of all n vectors, which the construction certified.
    pub fn spans_fully(&self) -> bool {
        self.duals_modp.len() == self.n()
    }

    /// The facet U_i as an exact subspace (rational elimination; intended
    /// for small configurations and cross-checks).
    pub fn facet(&self, i: usize) -> Result<Subspace> {
        let vectors: Vec<Vec<Rational>> = (0..self.n())
            .filter(|&j| j != i)
            .map(|j| self.config.vector(j).to_vec())
            .collect();
        Subspace::span(self.n(), &vectors)
    }

    /// dim of the intersection of the facets U_i over i in `subset`.
    /// The p-unit determinant makes every integer vector's v-basis
    /// coordinates p-integral, so the configuration reduces faithfully mod
    /// P, where each facet is the kernel of a dual row and any k distinct
    /// dual rows have rank k; the intersection dimension is exactly n - k.
    /// Duplicate indices are rejected.
    pub fn facet_meet_dim(&self, subset: &[usize]) -> Result<usize> {
        let mut seen = vec![false; self.n()];
        for &i in subset {
            if i >= self.n() {
                return Err(Error::invalid("facet index out of range"));
            }
            if seen[i] {
                return Err(Error::invalid("duplicate facet index"));
            }
            seen[i] = true;
        }
        Ok(self.n() - subset.len())
    }

    /// The same intersection computed directly through exact subspace
    /// meets; used to cross-check the certificate on small configurations.
    pub fn facet_meet_dim_direct(&self, subset: &[usize]) -> Result<usize> {
        let facets: Vec<Subspace> = subset
            .iter()
            .map(|&i| self.facet(i))
            .collect::<Result<_>>()?;
        let refs: Vec<&Subspace> = facets.iter().collect();
        Ok(Subspace::meet_many(&refs)?.dim())
    }

    /// Whether an integer vector lies in the facet U_i. A nonzero dual
    /// pairing mod P certifies non-membership; a zero pairing falls back to
    /// exact rational elimination.
    pub fn facet_contains(&self, i: usize, v: &[Rational]) -> Result<bool> {
        let vbar: Vec<u64> = v
            .iter()
            .map(|r| {
                let reduced: Int = r.numer() % (modp::P as i64);
                modp::reduce_i64(i64::try_from(&reduced).expect("reduced value fits"))
            })
            .collect();
        let dot = self.duals_modp[i]
            .iter()
            .zip(&vbar)
            .fold(0u64, |acc, (&a, &b)| (acc + modp::mul(a, b)) % modp::P);
        if dot != 0 {
            return Ok(false);
        }
        Ok(self.facet(i)?.contains_vector(v))
    }
}

/// Report of the pointing-span oracle at degree d: d-1 seeded generic
/// vectors in dimension d-1 span the whole space, the facets U_i have
/// dimension d-2, and every k-fold intersection of distinct facets has
/// dimension d-1-k.
#[derive(Clone, Debug, Serialize)]
pub struct PointingSpanReport {
    pub d: u32,
    pub seed: u64,
    pub ambient_dim: usize,
    pub spans: bool,
    pub facet_dims_ok: bool,
    pub meets_ok: bool,
    pub subsets_checked: u64,
    pub direct_cross_checks: u64,
}

impl PointingSpanReport {
    pub fn all_ok(&self) -> bool {
        self.spans && self.facet_dims_ok && self.meets_ok
    }
}

/// Run the pointing-span oracle for a rational normal curve of degree d.
/// All 2^(d-1) - 1 facet subsets are verified when that count is tractable;
/// for large ambient dimension the subsets of size <= 2 and the full subset
/// are enumerated (each still exactly certified). Small configurations
/// additionally recompute a batch of subsets by exact rational meets.
pub fn pointing_span_oracle(d: u32, seed: u64) -> Result<PointingSpanReport> {
    if d < 2 {
        return Err(Error::invalid("pointing span oracle needs d >= 2"));
    }
    let n = (d - 1) as usize;
    let pc = PointingConfig::sample(n, seed)?;
    let spans = pc.spans_fully();

    let small = n <= 11;
    let mut facet_dims_ok = true;
    let mut meets_ok = true;
    let mut subsets_checked = 0u64;
    let mut direct_cross_checks = 0u64;
    if small {
        // Precompute the exact facets and their annihilators once; the
        // direct intersection of a facet subset is then the kernel of the
        // stacked annihilator rows.
        let facets: Vec<Subspace> = (0..n).map(|i| pc.facet(i)).collect::<Result<_>>()?;
        for f in &facets {
            facet_dims_ok &= f.dim() == n - 1;
        }
        let annihilators: Vec<Subspace> = facets.iter().map(Subspace::annihilator).collect();
        let direct_dim = |subset: &[usize]| -> Result<usize> {
            let rows: Vec<Vec<Rational>> = subset
                .iter()
                .flat_map(|&i| annihilators[i].basis().iter().cloned())
                .collect();
            let m = QMatrix::from_rows(rows)?;
            Ok(m.cols() - m.rank())
        };
        for mask in 1u32..(1u32 << n) {
            let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let k = subset.len();
            meets_ok &= pc.facet_meet_dim(&subset)? == n - k;
            subsets_checked += 1;
            meets_ok &= direct_dim(&subset)? == n - k;
            direct_cross_checks += 1;
        }
        // Tie the stacked-annihilator route to the full meet machinery on a
        // couple of subsets.
        meets_ok &= pc.facet_meet_dim_direct(&[0])? == n - 1;
        meets_ok &= pc.facet_meet_dim_direct(&[0, n - 1])? == n - 2;
    } else {
        for i in 0..n {
            facet_dims_ok &= pc.facet_meet_dim(&[i])? == n - 1;
        }
        for i in 0..n {
            meets_ok &= pc.facet_meet_dim(&[i])? == n - 1;
            subsets_checked += 1;
            for j in (i + 1)..n {
                meets_ok &= pc.facet_meet_dim(&[i, j])? == n - 2;
                subsets_checked += 1;
            }
        }
        let all: Vec<usize> = (0..n).collect();
        meets_ok &= pc.facet_meet_dim(&all)? == 0;
        subsets_checked += 1;
    }

    Ok(PointingSpanReport {
        d,
        seed,
        ambient_dim: n,
        spans,
        facet_dims_ok,
        meets_ok,
        subsets_checked,
        direct_cross_checks,
    })
}

/// Report of the containment-count bound: a generic subspace W of dimension
/// a2 inside the pointing configuration of genus g lies in at most
/// floor((g-2)/2) - a2 of the facets U_i.
#[derive(Clone, Debug, Serialize)]
pub struct ContainmentReport {
    pub g: u32,
    pub a2: usize,
    pub seed: u64,
    pub count: usize,
    pub bound: usize,
    pub ok: bool,
}

/// Containment counts for every witness dimension a2 in 1..=floor((g-2)/2)
/// at once, sharing one pointing configuration and one witness pool: the
/// a2-dimensional witness is the span of the first a2 pool vectors.
pub fn containment_profile(g: u32, seed: u64) -> Result<Vec<ContainmentReport>> {
    if g < 5 {
        return Err(Error::invalid("containment bound needs g >= 5"));
    }
    let half_bound = ((g - 2) / 2) as usize;
    let kappa2 = (g / 2) as usize;
    let pc = PointingConfig::sample(kappa2, split_seed(seed, 1))?;
    let pool = GenericConfig::sample(kappa2, half_bound, split_seed(seed, 2))?;
    let mut reports = Vec::with_capacity(half_bound);
    for a2 in 1..=half_bound {
        let mut count = 0;
        for i in 0..kappa2 {
            let contained = pool.vectors()[..a2]
                .iter()
                .map(|v| pc.facet_contains(i, v))
                .collect::<Result<Vec<bool>>>()?
                .into_iter()
                .all(|b| b);
            if contained {
                count += 1;
            }
        }
        let bound = half_bound - a2;
        reports.push(ContainmentReport {
            g,
            a2,
            seed,
            count,
            bound,
            ok: count <= bound,
        });
    }
    Ok(reports)
}

/// Count how many facets of the genus-g pointing configuration contain a
/// fresh generic a2-dimensional subspace; single-a2 variant of
/// `containment_profile`.
pub fn containment_count(g: u32, a2: usize, seed: u64) -> Result<ContainmentReport> {
    if g < 5 {
        return Err(Error::invalid("containment bound needs g >= 5"));
    }
    let half_bound = ((g - 2) / 2) as usize;
    if a2 == 0 || a2 > half_bound {
        return Err(Error::invalid(format!(
            "containment bound needs 1 <= a2 <= {half_bound}"
        )));
    }
    let mut reports = containment_profile(g, seed)?;
    Ok(reports.swap_remove(a2 - 1))
}

/// The three-node span check: for generic v1, v2, v3 the pairwise spans
/// meet in lines and the triple meet is zero.
pub fn node_triple_meet_check(ambient: usize, seed: u64) -> Result<bool> {
    if ambient < 3 {
        return Err(Error::invalid("node meet check needs ambient >= 3"));
    }
    let config = GenericConfig::sample(ambient, 3, seed)?;
    let v = |i: usize| config.vector(i).to_vec();
    let s12 = Subspace::span(ambient, &[v(0), v(1)])?;
    let s13 = Subspace::span(ambient, &[v(0), v(2)])?;
    let s23 = Subspace::span(ambient, &[v(1), v(2)])?;
    let line1 = Subspace::span(ambient, &[v(0)])?;
    let pair_meet = s12.meet(&s13)?;
    let triple = Subspace::meet_many(&[&s12, &s13, &s23])?;
    Ok(pair_meet == line1 && triple.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn span_of_nothing_is_zero() {
        let s = Subspace::span(4, &[]).unwrap();
        assert!(s.is_zero());
        assert_eq!(s.dim(), 0);
    }

    #[test]
    fn span_of_generic_basis_is_full() {
        let config = GenericConfig::sample(5, 5, 7).unwrap();
        let s = Subspace::span(5, config.vectors()).unwrap();
        assert!(s.is_full());
    }

    #[test]
    fn span_of_duplicated_vector_has_dim_one() {
        let v = vec![q(1), q(2), q(3)];
        let s = Subspace::span(3, &[v.clone(), v.clone(), v]).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn meet_with_full_space_is_identity() {
        let config = GenericConfig::sample(4, 2, 11).unwrap();
        let b = Subspace::span(4, config.vectors()).unwrap();
        let full = Subspace::full(4);
        assert_eq!(full.meet(&b).unwrap(), b);
    }

    #[test]
    fn generic_planes_in_dim_four_meet_in_zero() {
        let config = GenericConfig::sample(4, 4, 23).unwrap();
        let f1 = Subspace::span(4, &config.vectors()[0..2].to_vec()).unwrap();
        let f2 = Subspace::span(4, &config.vectors()[2..4].to_vec()).unwrap();
        assert_eq!(f1.meet(&f2).unwrap().dim(), 0);
        assert_eq!(codim_in(&f1, &f2).unwrap(), 2);
    }

    #[test]
    fn codim_of_equal_subspaces_is_zero() {
        let config = GenericConfig::sample(5, 3, 5).unwrap();
        let f = Subspace::span(5, config.vectors()).unwrap();
        assert_eq!(codim_in(&f, &f).unwrap(), 0);
    }

    #[test]
    fn codim_requires_equal_dimensions() {
        let a = Subspace::full(4);
        let b = Subspace::zero(4);
        assert!(matches!(
            codim_in(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn pairwise_node_spans_meet_in_lines() {
        for seed in [1u64, 2, 3, 42] {
            assert!(node_triple_meet_check(6, seed).unwrap());
        }
    }

    #[test]
    fn li_basis_checks() {
        assert!(li_basis_check(2));
        assert!(li_basis_check(5));
        assert_eq!(ones_off_diagonal_det(4), Int::from(-3));
    }

    #[test]
    fn li_det_matches_closed_form() {
        for kappa in 2..=24usize {
            let expected = if kappa % 2 == 1 {
                Int::from(kappa as i64 - 1)
            } else {
                Int::from(-(kappa as i64 - 1))
            };
            assert_eq!(ones_off_diagonal_det(kappa), expected);
        }
    }

    #[test]
    fn modp_dual_rows_invert() {
        let v = vec![vec![2u64, 1, 0], vec![0, 3, 1], vec![5, 0, 7]];
        let w = modp::dual_rows(&v).unwrap();
        for (i, wi) in w.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                let dot = wi
                    .iter()
                    .zip(vj)
                    .fold(0u64, |acc, (&a, &b)| (acc + modp::mul(a, b)) % modp::P);
                assert_eq!(dot, u64::from(i == j));
            }
        }
        // Singular mod everything: repeated row.
        let bad = vec![vec![1u64, 2, 3], vec![1, 2, 3], vec![0, 0, 1]];
        assert!(modp::dual_rows(&bad).is_none());
    }

    #[test]
    fn pointing_oracle_small_degrees() {
        for d in 4..=8u32 {
            let report = pointing_span_oracle(d, 0xC0FFEE).unwrap();
            assert!(report.all_ok(), "oracle failed at d={d}: {report:?}");
            assert_eq!(report.subsets_checked, (1u64 << (d - 1)) - 1);
            assert!(report.direct_cross_checks > 0);
        }
    }

    #[test]
    fn pointing_oracle_large_ambient_uses_certificate() {
        let report = pointing_span_oracle(25, 9).unwrap();
        assert!(report.all_ok());
        // 24 singles + C(24,2) pairs + the full subset.
        assert_eq!(report.subsets_checked, 24 + 276 + 1);
    }

    #[test]
    fn facet_meet_dims_match_direct_computation() {
        let pc = PointingConfig::sample(5, 31).unwrap();
        for subset in [&[0usize][..], &[1, 3], &[0, 2, 4], &[0, 1, 2, 3, 4]] {
            assert_eq!(
                pc.facet_meet_dim(subset).unwrap(),
                pc.facet_meet_dim_direct(subset).unwrap()
            );
        }
    }

    #[test]
    fn genus_ten_pair_of_facets_meets_in_dim_three() {
        // kappa_2 = 5 generic vectors in dimension 5; two facets of
        // dimension 4 meet in dimension 3.
        let pc = PointingConfig::sample(5, 77).unwrap();
        assert_eq!(pc.facet(0).unwrap().dim(), 4);
        assert_eq!(pc.facet_meet_dim(&[0, 1]).unwrap(), 3);
        assert_eq!(pc.facet_meet_dim_direct(&[0, 1]).unwrap(), 3);
    }

    #[test]
    fn facet_membership_detects_members_and_non_members() {
        let pc = PointingConfig::sample(6, 13).unwrap();
        // v_1 lies in every facet except U_1.
        let v1 = pc.config().vector(1).to_vec();
        assert!(!pc.facet_contains(1, &v1).unwrap());
        assert!(pc.facet_contains(0, &v1).unwrap());
        assert!(pc.facet_contains(3, &v1).unwrap());
        // A generic fresh vector lies in no facet.
        let fresh = GenericConfig::sample(6, 1, 1234).unwrap();
        for i in 0..6 {
            assert!(!pc.facet_contains(i, fresh.vector(0)).unwrap());
        }
    }

    #[test]
    fn containment_counts_respect_bound() {
        for g in [8u32, 10, 12] {
            for a2 in 1..=((g - 2) / 2) as usize {
                for seed in 0..10u64 {
                    let r = containment_count(g, a2, seed).unwrap();
                    assert!(r.ok, "count {} above bound {} at g={g}", r.count, r.bound);
                }
            }
        }
    }

    #[test]
    fn same_seed_reproduces_vectors() {
        let a = GenericConfig::sample(6, 4, 123).unwrap();
        let b = GenericConfig::sample(6, 4, 123).unwrap();
        assert_eq!(a.vectors(), b.vectors());
        let c = GenericConfig::sample(6, 4, 124).unwrap();
        assert_ne!(a.vectors(), c.vectors());
    }

    #[test]
    fn split_seed_is_label_sensitive() {
        assert_ne!(split_seed(1, 1), split_seed(1, 2));
        assert_ne!(split_seed(1, 1), split_seed(2, 1));
        assert_eq!(split_seed(9, 3), split_seed(9, 3));
    }

    #[test]
    fn oversampled_configs_check_every_subset() {
        // 5 vectors in dimension 3: every 3-subset must be independent.
        let config = GenericConfig::sample(3, 5, 99).unwrap();
        let mut idx = [0usize, 1, 2];
        loop {
            let rows: Vec<Vec<Rational>> =
                idx.iter().map(|&i| config.vector(i).to_vec()).collect();
            assert_eq!(QMatrix::from_rows(rows).unwrap().rank(), 3);
            if !next_combination(&mut idx, 5) {
                break;
            }
        }
    }
}
