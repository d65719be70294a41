//! The tetragonal genus-6 analysis: del Pezzo slope bookkeeping, the
//! three-step semistable filtration that fails the decreasing-slope test,
//! the two-step Harder-Narasimhan filtration, and the Segre-threefold
//! quadric computations by exact linear algebra.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{serialize_int, Int, Rational};
use crate::linalg::QMatrix;
use crate::surfaces::IntersectionLattice;
use crate::trigonal::{mu_canonical_normal, mu_curve_in_pn, FiltrationStep, HNReport};

/// A quadratic form on P^5, stored as its symmetric 6x6 rational matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuadricForm {
    mat: QMatrix,
}

impl QuadricForm {
    pub fn from_matrix(mat: QMatrix) -> Result<Self> {
        if mat.rows() != 6 || mat.cols() != 6 {
            return Err(Error::invalid("quadric matrix must be 6x6"));
        }
        for i in 0..6 {
            for j in 0..6 {
                if mat.get(i, j) != mat.get(j, i) {
                    return Err(Error::invalid("quadric matrix must be symmetric"));
                }
            }
        }
        Ok(QuadricForm { mat })
    }

    /// Build from monomial coefficients: (i, j, c) contributes c * z_i z_j
    /// for i <= j.
    pub fn from_monomials(terms: &[(usize, usize, i64)]) -> Result<Self> {
        let mut mat = QMatrix::zero(6, 6);
        for &(i, j, c) in terms {
            if i > j || j >= 6 {
                return Err(Error::invalid("monomial index out of range"));
            }
            let c = Rational::from(c);
            if i == j {
                mat.set(i, i, mat.get(i, i) + &c);
            } else {
                let half = c.checked_div(&Rational::from(2))?;
                mat.set(i, j, mat.get(i, j) + &half);
                mat.set(j, i, mat.get(j, i) + &half);
            }
        }
        QuadricForm::from_matrix(mat)
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.mat
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn rank(&self) -> usize {
        self.mat.rank()
    }

    /// Matrix rank and the projective dimension of the singular locus
    /// (the projectivized kernel): sing_dim = 5 - rank, -1 meaning empty.
    pub fn singular_locus_dim(&self) -> Result<(usize, i64)> {
        if self.is_zero() {
            return Err(Error::invalid("zero form has no singular locus data"));
        }
        let rank = self.rank();
        Ok((rank, 5 - rank as i64))
    }

    /// Coefficient vector in the 21 quadric monomials z_i z_j, i <= j,
    /// ordered lexicographically.
    pub fn monomial_vec(&self) -> Vec<Rational> {
        let mut out = Vec::with_capacity(21);
        for i in 0..6 {
            for j in i..6 {
                if i == j {
                    out.push(self.mat.get(i, i).clone());
                } else {
                    out.push(Rational::from(2) * self.mat.get(i, j));
                }
            }
        }
        out
    }

    pub fn from_monomial_vec(v: &[Rational]) -> Result<Self> {
        if v.len() != 21 {
            return Err(Error::invalid("monomial vector must have 21 entries"));
        }
        let mut mat = QMatrix::zero(6, 6);
        let mut idx = 0;
        for i in 0..6 {
            for j in i..6 {
                if i == j {
                    mat.set(i, i, v[idx].clone());
                } else {
                    let half = v[idx].checked_div(&Rational::from(2))?;
                    mat.set(i, j, half.clone());
                    mat.set(j, i, half);
                }
                idx += 1;
            }
        }
        QuadricForm::from_matrix(mat)
    }

    pub fn eval(&self, z: &[Rational; 6]) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..6 {
            for j in 0..6 {
                let m = self.mat.get(i, j);
                if !m.is_zero() {
                    acc = acc + m * &z[i] * &z[j];
                }
            }
        }
        acc
    }
}

/// The bilinear parametrization ([s:t],[x:y:z]) -> [sx:sy:sz:tx:ty:tz] of
/// the Segre threefold, acting on quadrics by substitution into the 18
/// bidegree-(2,2) monomials (s-part quadratic) x (p-part quadratic).
pub struct SegreParam;

/// z_a = u_a * w_a with u = (s,s,s,t,t,t) and w = (x,y,z,x,y,z).
const U_OF: [usize; 6] = [0, 0, 0, 1, 1, 1];
const W_OF: [usize; 6] = [0, 1, 2, 0, 1, 2];

fn sym2_index(a: usize, b: usize, n: usize) -> usize {
    // Index of the pair (min, max) among all i <= j over n variables.
    let (i, j) = if a <= b { (a, b) } else { (b, a) };
    i * n - i * (i + 1) / 2 + j
}

impl SegreParam {
    /// The 18 x 21 substitution matrix from quadrics in z_0..z_5 to
    /// bidegree-(2,2) forms: each quadric monomial z_i z_j maps to exactly
    /// one bidegree monomial.
    pub fn substitution_matrix() -> QMatrix {
        let mut m = QMatrix::zero(18, 21);
        let mut col = 0;
        for i in 0..6 {
            for j in i..6 {
                let s_part = sym2_index(U_OF[i], U_OF[j], 2); // 3 choices
                let p_part = sym2_index(W_OF[i], W_OF[j], 3); // 6 choices
                let row = s_part * 6 + p_part;
                m.set(row, col, m.get(row, col) + &Rational::one());
                col += 1;
            }
        }
        m
    }

    /// Coefficients of the pullback of a quadric along the parametrization.
    pub fn pullback(q: &QuadricForm) -> Vec<Rational> {
        let m = Self::substitution_matrix();
        let v = q.monomial_vec();
        (0..m.rows())
            .map(|r| {
                (0..m.cols()).fold(Rational::zero(), |acc, c| acc + m.get(r, c) * &v[c])
            })
            .collect()
    }

    /// True iff the quadric vanishes identically on the parametrized
    /// threefold (polynomial identity in s, t, x, y, z).
    pub fn annihilates(q: &QuadricForm) -> bool {
        Self::pullback(q).iter().all(Rational::is_zero)
    }
}

/// The three rank-4 generators z0 z4 - z1 z3, z0 z5 - z2 z3, z1 z5 - z2 z4.
pub fn segre_generators() -> Vec<QuadricForm> {
    [
        &[(0usize, 4usize, 1i64), (1, 3, -1)][..],
        &[(0, 5, 1), (2, 3, -1)][..],
        &[(1, 5, 1), (2, 4, -1)][..],
    ]
    .iter()
    .map(|terms| QuadricForm::from_monomials(terms).expect("valid generator"))
    .collect()
}

/// Compute the space of quadrics through the Segre threefold by exact
/// linear algebra: the kernel of the substitution map. Asserts the
/// dimension is 3 and that the canonical kernel basis row-reduces to the
/// three expected generators; both failures are hard errors.
pub fn quadrics_through_segre() -> Result<Vec<QuadricForm>> {
    let kernel = SegreParam::substitution_matrix().kernel_basis();
    if kernel.len() != 3 {
        return Err(Error::bookkeeping(format!(
            "space of quadrics through the Segre threefold has dimension {}, expected 3",
            kernel.len()
        )));
    }
    let (kernel_rref, _) = QMatrix::from_rows(kernel)?.rref();
    let expected_rows: Vec<Vec<Rational>> =
        segre_generators().iter().map(|q| q.monomial_vec()).collect();
    let (expected_rref, _) = QMatrix::from_rows(expected_rows)?.rref();
    if kernel_rref != expected_rref {
        return Err(Error::bookkeeping(
            "kernel basis does not row-reduce to the standard generators",
        ));
    }
    let out: Result<Vec<QuadricForm>> = (0..3)
        .map(|i| QuadricForm::from_monomial_vec(kernel_rref.row(i)))
        .collect();
    let out = out?;
    for q in &out {
        if !SegreParam::annihilates(q) {
            return Err(Error::bookkeeping(
                "computed quadric does not vanish on the parametrization",
            ));
        }
    }
    Ok(out)
}

/// One row of the genus-6 slope table.
#[derive(Clone, Debug, Serialize)]
pub struct BundleRow {
    pub label: String,
    pub rank: u32,
    #[serde(serialize_with = "serialize_int")]
    pub degree: Int,
    pub slope: Rational,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BundleRow {
    fn new(label: &str, rank: u32, degree: i64, note: Option<&str>) -> Result<Self> {
        Ok(BundleRow {
            label: label.to_string(),
            rank,
            degree: Int::from(degree),
            slope: Rational::new(degree, rank as i64)?,
            note: note.map(str::to_string),
        })
    }
}

/// The full genus-6 table: slopes of the chain
/// 0 < N_(C/S) < N_(C/Q) < N_(C/P^5), the quadric short exact sequence
/// degrees, the degeneration bookkeeping, and the non-decreasing flag for
/// the three-step filtration.
#[derive(Clone, Debug, Serialize)]
pub struct Genus6Table {
    pub curve_degree: i64,
    pub curve_genus: i64,
    #[serde(serialize_with = "serialize_int")]
    pub curve_self_intersection: Int,
    pub brill_noether_rho: i64,
    pub rows: Vec<BundleRow>,
    pub three_step_slopes: [Rational; 3],
    pub three_step_decreasing: bool,
    pub assumptions: Vec<String>,
}

/// Brill-Noether number rho(g, r, d) = g - (r+1)(g - d + r).
fn brill_noether_rho(g: i64, r: i64, d: i64) -> i64 {
    g - (r + 1) * (g - d + r)
}

pub fn genus6_slopes() -> Result<Genus6Table> {
    // Del Pezzo bookkeeping: [C] = 6H - 2 sum E_i, hyperplane 3H - sum E_i.
    let dp = IntersectionLattice::del_pezzo4();
    let c = dp.class_on(&[6, -2, -2, -2, -2])?;
    let h = dp.class_on(&[3, -1, -1, -1, -1])?;
    let self_int = c.self_intersection();
    if self_int != Int::from(20) {
        return Err(Error::bookkeeping("[C]^2 on the del Pezzo is not 20"));
    }
    let degree = c.embedding_degree(&h)?;
    if degree != Int::from(10) {
        return Err(Error::bookkeeping("curve degree is not 10"));
    }
    let genus = c.adjunction_genus()?;
    if genus != Int::from(6) {
        return Err(Error::bookkeeping("adjunction genus is not 6"));
    }
    let rho = brill_noether_rho(6, 2, 6);
    if rho != 0 {
        return Err(Error::bookkeeping("rho(6,2,6) is not 0"));
    }

    // Segre bookkeeping: [C] = 6ab + 4b^2, degree against a + b must be 10,
    // and c1(N_(Q/P^5)) = 6(a+b) + K_Q pairs with [C] to 34.
    let segre = IntersectionLattice::segre_p1xp2();
    let c_q = segre.class_on(&[6, 4])?;
    let hyper = segre.class_on(&[1, 1])?;
    if c_q.embedding_degree(&hyper)? != Int::from(10) {
        return Err(Error::bookkeeping("Segre curve degree is not 10"));
    }
    let k_q = segre.canonical_class()?;
    let chern_normal = 6 * hyper + k_q; // (4, 3) in divisor coordinates
    let deg_nq = c_q.intersect(&chern_normal)?;
    if deg_nq != Int::from(34) {
        return Err(Error::bookkeeping(format!(
            "c1(N_(Q/P^5)).[C] = {deg_nq}, expected 34"
        )));
    }

    // Total slope 35/2 both from the canonical formula and from (d, g, n).
    let mu_total = mu_canonical_normal(6)?;
    if mu_total != mu_curve_in_pn(10, 6, 5)? || mu_total != Rational::new(35, 2)? {
        return Err(Error::bookkeeping("genus-6 total slope routes disagree"));
    }
    let deg_total = 70i64; // rank 4 times 35/2

    // Chain degrees by additivity.
    let deg_ncs = 20i64;
    let deg_nq_c = 34i64; // from the Segre Chern pairing above
    let deg_ncq = deg_total - deg_nq_c; // 36
    let deg_nsq = deg_ncq - deg_ncs; // 16
    if deg_ncq != 36 || deg_nsq != 16 {
        return Err(Error::bookkeeping("chain degree additivity failed"));
    }

    // Quadric short exact sequence: the subbundle is N_(Q/Y)|_C twisted by
    // the two ruling points (34 - 20 + 2 = 16), the quotient is O_C(2)
    // minus the two points (20 - 2 = 18).
    let deg_o2 = 2 * 10i64;
    let seq_sub = deg_nq_c - deg_o2 + 2;
    let seq_quot = deg_o2 - 2;
    if seq_sub + seq_quot != deg_nq_c || seq_sub != 16 || seq_quot != 18 {
        return Err(Error::bookkeeping("quadric sequence degrees failed"));
    }

    // Elliptic normal quintic restrictions in the hyperplane degeneration.
    let mu_quintic = mu_curve_in_pn(5, 1, 4)?;
    if mu_quintic != Rational::new(25, 3)? {
        return Err(Error::bookkeeping("elliptic quintic slope is not 25/3"));
    }

    let rows = vec![
        BundleRow::new("N_{C/S}", 1, deg_ncs, None)?,
        BundleRow::new("N_{S/Q}|_C", 1, deg_nsq, None)?,
        BundleRow::new("N_{C/Q}", 2, deg_ncq, None)?,
        BundleRow::new(
            "N_{Q/P^5}|_C",
            2,
            deg_nq_c,
            Some("slope 17 is odd at rank 2: semistable iff stable"),
        )?,
        BundleRow::new("N_{C/P^5}", 4, deg_total, None)?,
        BundleRow::new("N_{Q/Y_p}|_C(s_1+s_2)", 1, seq_sub, None)?,
        BundleRow::new("O_C(2-s_1-s_2)", 1, seq_quot, None)?,
        BundleRow::new(
            "N_{X_j/P^4} (elliptic quintic)",
            3,
            25,
            Some("semistability of elliptic normal curves is an encoded assumption"),
        )?,
    ];

    let three_step_slopes = [
        Rational::from(20),
        Rational::from(16),
        Rational::from(17),
    ];
    let three_step_decreasing =
        three_step_slopes[0] > three_step_slopes[1] && three_step_slopes[1] > three_step_slopes[2];
    if three_step_decreasing {
        return Err(Error::bookkeeping(
            "three-step factor slopes unexpectedly decreasing",
        ));
    }

    Ok(Genus6Table {
        curve_degree: 10,
        curve_genus: 6,
        curve_self_intersection: self_int,
        brill_noether_rho: rho,
        rows,
        three_step_slopes,
        three_step_decreasing,
        assumptions: vec![
            "hyperelliptic exclusion in the slope-18 case is geometric, not computed".into(),
            "semistability of the elliptic normal quintic restrictions is assumed".into(),
        ],
    })
}

/// The genus-6 Harder-Narasimhan report: slopes (20, 50/3) with
/// 20 > 35/2 > 50/3.
pub fn hn_genus6() -> Result<HNReport> {
    let table = genus6_slopes()?;
    let mu_total = mu_canonical_normal(6)?;
    let filtration = vec![
        FiltrationStep {
            label: "N_{C/S}".into(),
            rank: 1,
            degree: Int::from(20),
            slope: Rational::from(20),
        },
        FiltrationStep {
            label: "N_{C/P^5}/N_{C/S}".into(),
            rank: 3,
            degree: Int::from(50),
            slope: Rational::new(50, 3)?,
        },
    ];
    let quotient_slope = filtration[1].slope.clone();
    if !(Rational::from(20) > mu_total && mu_total > quotient_slope) {
        return Err(Error::bookkeeping(
            "genus-6 HN slopes fail the strict chain",
        ));
    }
    Ok(HNReport {
        g: 6,
        mu_normal: mu_total,
        deg_scroll_sub: Some(Int::from(20)),
        mu_quotient: Some(quotient_slope),
        coprimality_witness: None,
        filtration,
        degeneration_verdict: true,
        seed: 0,
        notes: table.assumptions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn three_quadrics_cut_out_the_threefold() {
        let quadrics = quadrics_through_segre().unwrap();
        assert_eq!(quadrics.len(), 3);
        for q in &quadrics {
            assert!(SegreParam::annihilates(q));
            let (rank, sing) = q.singular_locus_dim().unwrap();
            assert_eq!(rank, 4);
            assert_eq!(sing, 1);
        }
        assert_eq!(quadrics, segre_generators());
    }

    #[test]
    fn quadric_outside_the_span_has_nonzero_pullback() {
        let z0sq = QuadricForm::from_monomials(&[(0, 0, 1)]).unwrap();
        assert!(!SegreParam::annihilates(&z0sq));
        // z0^2 pulls back to s^2 x^2.
        let pb = SegreParam::pullback(&z0sq);
        assert_eq!(pb.iter().filter(|c| !c.is_zero()).count(), 1);
    }

    #[test]
    fn singular_locus_dimensions() {
        let y = segre_generators().remove(0);
        assert_eq!(y.singular_locus_dim().unwrap(), (4, 1));

        let smooth = QuadricForm::from_monomials(&[
            (0, 0, 1),
            (1, 1, 1),
            (2, 2, 1),
            (3, 3, 1),
            (4, 4, 1),
            (5, 5, 1),
        ])
        .unwrap();
        assert_eq!(smooth.singular_locus_dim().unwrap(), (6, -1));

        let double_plane = QuadricForm::from_monomials(&[(0, 0, 1)]).unwrap();
        assert_eq!(double_plane.singular_locus_dim().unwrap(), (1, 4));
    }

    #[test]
    fn span_members_all_have_rank_four() {
        // Every nonzero member of the 3-dimensional span over a seeded
        // sample of coefficient triples has rank exactly 4.
        let gens = segre_generators();
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 21) as i64 - 10
        };
        let mut sampled = 0;
        while sampled < 120 {
            let (a, b, c) = (next(), next(), next());
            if (a, b, c) == (0, 0, 0) {
                continue;
            }
            let mut mat = QMatrix::zero(6, 6);
            for (coef, gen) in [(a, &gens[0]), (b, &gens[1]), (c, &gens[2])] {
                let r = Rational::from(coef);
                for i in 0..6 {
                    for j in 0..6 {
                        mat.set(i, j, mat.get(i, j) + &(gen.matrix().get(i, j) * &r));
                    }
                }
            }
            let q = QuadricForm::from_matrix(mat).unwrap();
            assert_eq!(q.rank(), 4, "coefficients ({a},{b},{c})");
            sampled += 1;
        }
    }

    #[test]
    fn generators_are_linearly_independent() {
        let rows: Vec<Vec<Rational>> = segre_generators()
            .iter()
            .map(|q| q.monomial_vec())
            .collect();
        assert_eq!(QMatrix::from_rows(rows).unwrap().rank(), 3);
    }

    #[test]
    fn slope_table_values() {
        let t = genus6_slopes().unwrap();
        let slope_of = |label: &str| {
            t.rows
                .iter()
                .find(|r| r.label == label)
                .unwrap_or_else(|| panic!("missing row {label}"))
                .slope
                .clone()
        };
        assert_eq!(slope_of("N_{C/S}"), Rational::from(20));
        assert_eq!(slope_of("N_{C/P^5}"), rat(35, 2).unwrap());
        assert_eq!(slope_of("N_{C/Q}"), Rational::from(18));
        assert_eq!(slope_of("N_{S/Q}|_C"), Rational::from(16));
        assert_eq!(slope_of("N_{Q/P^5}|_C"), Rational::from(17));
        assert!(!t.three_step_decreasing);
        assert_eq!(t.brill_noether_rho, 0);
        assert_eq!(t.curve_degree, 10);
    }

    #[test]
    fn degree_additivity() {
        let t = genus6_slopes().unwrap();
        let deg_of = |label: &str| {
            t.rows
                .iter()
                .find(|r| r.label == label)
                .unwrap()
                .degree
                .clone()
        };
        // 16 + 18 = 34 across the quadric sequence.
        assert_eq!(
            deg_of("N_{Q/Y_p}|_C(s_1+s_2)") + deg_of("O_C(2-s_1-s_2)"),
            deg_of("N_{Q/P^5}|_C")
        );
        // 20 + 16 = 36 and 36 + 34 = 70 along the chain.
        assert_eq!(deg_of("N_{C/S}") + deg_of("N_{S/Q}|_C"), deg_of("N_{C/Q}"));
        assert_eq!(
            deg_of("N_{C/Q}") + deg_of("N_{Q/P^5}|_C"),
            deg_of("N_{C/P^5}")
        );
    }

    #[test]
    fn hn_filtration_genus_six() {
        let r = hn_genus6().unwrap();
        assert_eq!(r.slopes(), vec![Rational::from(20), rat(50, 3).unwrap()]);
        assert!(r.slopes_strictly_decreasing());
        // 20 + 50 = 70 = 4 * 35/2.
        let total: Int = r.filtration.iter().map(|s| s.degree.clone()).sum();
        assert_eq!(total, Int::from(70));
    }
}
