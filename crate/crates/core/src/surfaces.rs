//! Intersection lattices for the rational surfaces and the Segre threefold,
//! with divisor-class arithmetic, adjunction, and embedding degrees.
//!
//! Each lattice is a fixed registry entry: a labeled basis, an integer Gram
//! matrix of pairwise intersection numbers, and (where it makes sense) the
//! canonical class. The Segre threefold is modeled only through its
//! curve-class/divisor-class degree pairing; there is no general Chow ring.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Int;

/// Whether the Gram matrix is an honest self-pairing of divisor classes on a
/// surface, or a degree pairing of curve classes against divisor classes
/// (the threefold case, where adjunction does not apply).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LatticeKind {
    Surface,
    CurveDivisorPairing,
}

#[derive(Clone, Debug)]
pub struct IntersectionLattice {
    name: String,
    basis: Vec<String>,
    gram: Vec<Vec<Int>>,
    canonical: Option<Vec<Int>>,
    kind: LatticeKind,
}

impl PartialEq for IntersectionLattice {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}
impl Eq for IntersectionLattice {}

impl IntersectionLattice {
    fn build(
        name: &str,
        basis: &[&str],
        gram: Vec<Vec<i64>>,
        canonical: Option<Vec<i64>>,
        kind: LatticeKind,
    ) -> Arc<Self> {
        let gram: Vec<Vec<Int>> = gram
            .into_iter()
            .map(|r| r.into_iter().map(Int::from).collect())
            .collect();
        for i in 0..gram.len() {
            for j in 0..gram.len() {
                assert_eq!(gram[i][j], gram[j][i], "gram matrix must be symmetric");
            }
        }
        Arc::new(IntersectionLattice {
            name: name.to_string(),
            basis: basis.iter().map(|s| s.to_string()).collect(),
            gram,
            canonical: canonical.map(|v| v.into_iter().map(Int::from).collect()),
            kind,
        })
    }

    /// The Hirzebruch surface F_n with basis (E, F): E^2 = -n, F^2 = 0,
    /// E.F = 1, K = -2E - (n+2)F.
    pub fn hirzebruch(n: u32) -> Arc<Self> {
        let n_i = n as i64;
        Self::build(
            &format!("hirzebruch{n}"),
            &["E", "F"],
            vec![vec![-n_i, 1], vec![1, 0]],
            Some(vec![-2, -(n_i + 2)]),
            LatticeKind::Surface,
        )
    }

    /// The degree-5 del Pezzo surface, the plane blown up at 4 general
    /// points: basis (H, E1..E4), K = -3H + sum E_i.
    pub fn del_pezzo4() -> Arc<Self> {
        Self::build(
            "delpezzo4",
            &["H", "E1", "E2", "E3", "E4"],
            vec![
                vec![1, 0, 0, 0, 0],
                vec![0, -1, 0, 0, 0],
                vec![0, 0, -1, 0, 0],
                vec![0, 0, 0, -1, 0],
                vec![0, 0, 0, 0, -1],
            ],
            Some(vec![-3, 1, 1, 1, 1]),
            LatticeKind::Surface,
        )
    }

    /// The Segre threefold P^1 x P^2 in P^5, reduced to its degree pairing:
    /// curve classes (ab, b2) against divisor classes (a, b), where
    /// a^2 = 0, b^3 = 0 and a.b^2 = ab.b = 1 are the only surviving products.
    /// `canonical` holds K = -2a - 3b in divisor coordinates.
    pub fn segre_p1xp2() -> Arc<Self> {
        Self::build(
            "segre_p1xp2",
            &["ab", "b2"],
            vec![vec![0, 1], vec![1, 0]],
            Some(vec![-2, -3]),
            LatticeKind::CurveDivisorPairing,
        )
    }

    /// Registry lookup by name, as used by the CLI.
    pub fn by_name(name: &str) -> Option<Arc<Self>> {
        match name {
            "hirzebruch0" | "f0" | "F0" => Some(Self::hirzebruch(0)),
            "hirzebruch1" | "f1" | "F1" => Some(Self::hirzebruch(1)),
            "delpezzo4" => Some(Self::del_pezzo4()),
            "segre_p1xp2" | "segre" => Some(Self::segre_p1xp2()),
            _ => None,
        }
    }

    /// A caller-supplied lattice, mostly useful in tests.
    pub fn custom(
        name: &str,
        basis: &[&str],
        gram: Vec<Vec<i64>>,
        canonical: Option<Vec<i64>>,
    ) -> Arc<Self> {
        Self::build(name, basis, gram, canonical, LatticeKind::Surface)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn gram(&self) -> &[Vec<Int>] {
        &self.gram
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn canonical_coords(&self) -> Option<&[Int]> {
        self.canonical.as_deref()
    }

    pub fn class_on(self: &Arc<Self>, coords: &[i64]) -> Result<DivisorClass> {
        if coords.len() != self.rank() {
            return Err(Error::invalid(format!(
                "class on {} needs {} coordinates, got {}",
                self.name,
                self.rank(),
                coords.len()
            )));
        }
        Ok(DivisorClass {
            lattice: Arc::clone(self),
            coords: coords.iter().map(|&c| Int::from(c)).collect(),
        })
    }

    pub fn canonical_class(self: &Arc<Self>) -> Result<DivisorClass> {
        let coords = self
            .canonical
            .clone()
            .ok_or_else(|| Error::AdjunctionUnsupported(self.name.clone()))?;
        Ok(DivisorClass {
            lattice: Arc::clone(self),
            coords,
        })
    }
}

/// An integer coordinate vector on a fixed lattice basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DivisorClass {
    lattice: Arc<IntersectionLattice>,
    coords: Vec<Int>,
}

impl DivisorClass {
    pub fn lattice(&self) -> &Arc<IntersectionLattice> {
        &self.lattice
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    fn check_same_lattice(&self, other: &DivisorClass) -> Result<()> {
        if self.lattice.name != other.lattice.name {
            return Err(Error::LatticeMismatch {
                left: self.lattice.name.clone(),
                right: other.lattice.name.clone(),
            });
        }
        Ok(())
    }

    /// The intersection number coords^T . gram . coords, exact.
    pub fn intersect(&self, other: &DivisorClass) -> Result<Int> {
        self.check_same_lattice(other)?;
        let gram = &self.lattice.gram;
        let mut acc = Int::zero();
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc += a * &gram[i][j] * b;
            }
        }
        Ok(acc)
    }

    pub fn self_intersection(&self) -> Int {
        self.intersect(self).expect("same lattice")
    }

    /// Arithmetic genus from adjunction: 2g - 2 = C.(C + K).
    pub fn adjunction_genus(&self) -> Result<Int> {
        if self.lattice.kind != LatticeKind::Surface {
            return Err(Error::AdjunctionUnsupported(self.lattice.name.clone()));
        }
        let k = self.lattice.canonical_class()?;
        let pairing = self.intersect(&(self.clone() + k))?;
        if (&pairing % 2i32) != Int::zero() {
            return Err(Error::NonIntegralGenus { pairing });
        }
        Ok(pairing / 2 + 1)
    }

    /// Degree of the curve class under the hyperplane class h.
    pub fn embedding_degree(&self, h: &DivisorClass) -> Result<Int> {
        self.intersect(h)
    }
}

impl Add for DivisorClass {
    type Output = DivisorClass;
    fn add(self, rhs: DivisorClass) -> DivisorClass {
        self.check_same_lattice(&rhs).expect("lattice mismatch");
        DivisorClass {
            lattice: self.lattice,
            coords: self
                .coords
                .into_iter()
                .zip(rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for DivisorClass {
    type Output = DivisorClass;
    fn sub(self, rhs: DivisorClass) -> DivisorClass {
        self + (-rhs)
    }
}

impl Neg for DivisorClass {
    type Output = DivisorClass;
    fn neg(self) -> DivisorClass {
        DivisorClass {
            lattice: self.lattice,
            coords: self.coords.into_iter().map(|c| -c).collect(),
        }
    }
}

impl Mul<DivisorClass> for i64 {
    type Output = DivisorClass;
    fn mul(self, rhs: DivisorClass) -> DivisorClass {
        DivisorClass {
            lattice: rhs.lattice,
            coords: rhs.coords.into_iter().map(|c| c * self).collect(),
        }
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (c, label) in self.coords.iter().zip(&self.lattice.basis) {
            if c.is_zero() {
                continue;
            }
            if first {
                if c < &Int::zero() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < &Int::zero() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.magnitude();
            if !mag.is_zero() && *mag != num_bigint::BigUint::from(1u32) {
                write!(f, "{}", mag)?;
            }
            write!(f, "{}", label)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("DivisorClass", 2)?;
        s.serialize_field("lattice", self.lattice.name())?;
        let coords: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        s.serialize_field("coords", &coords)?;
        s.end()
    }
}
