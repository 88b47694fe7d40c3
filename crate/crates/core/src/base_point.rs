//! Base points on the torus (or in a real box) whose integer powers serve as
//! evaluation nodes.

use crate::error::{Error, Result};
use crate::multi_index::MultiIndex;
use num_complex::Complex64;
use std::f64::consts::TAU;

/// How the base-point coordinates were chosen; decoding of exponents from
/// atoms is only defined for the two torus schemes.
#[derive(Debug, Clone, PartialEq)]
pub enum PointScheme {
    /// Coordinate j is exp(2*pi*i/N_j).
    RootsOfUnity(Vec<u64>),
    /// Coordinate j is exp(i*theta_j); theta_j = 1 by default.
    IntegerAngles(Vec<f64>),
    /// Coordinates in (-1, 1); evaluation only, no decoding.
    RealBox(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasePoint {
    coordinates: Vec<Complex64>,
    scheme: PointScheme,
}

impl BasePoint {
    pub fn roots_of_unity(orders: Vec<u64>) -> Result<Self> {
        if orders.is_empty() || orders.iter().any(|&n| n < 2) {
            return Err(Error::Input("each root order must be at least 2".into()));
        }
        let coordinates = orders
            .iter()
            .map(|&n| Complex64::from_polar(1.0, TAU / n as f64))
            .collect();
        Ok(BasePoint {
            coordinates,
            scheme: PointScheme::RootsOfUnity(orders),
        })
    }

    /// Same root order N in every coordinate.
    pub fn roots_of_unity_uniform(n: usize, order: u64) -> Result<Self> {
        Self::roots_of_unity(vec![order; n])
    }

    pub fn integer_angles(thetas: Vec<f64>) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::Input("empty angle list".into()));
        }
        let coordinates = thetas.iter().map(|&t| Complex64::from_polar(1.0, t)).collect();
        Ok(BasePoint {
            coordinates,
            scheme: PointScheme::IntegerAngles(thetas),
        })
    }

    /// The default torus point with theta_j = 1 in every coordinate.
    pub fn unit_angles(n: usize) -> Result<Self> {
        Self::integer_angles(vec![1.0; n])
    }

    pub fn real_box(coords: Vec<f64>) -> Result<Self> {
        if coords.is_empty() || coords.iter().any(|&x| x.abs() >= 1.0) {
            return Err(Error::Input("real box coordinates must lie in (-1, 1)".into()));
        }
        let coordinates = coords.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        Ok(BasePoint {
            coordinates,
            scheme: PointScheme::RealBox(coords),
        })
    }

    pub fn dimension(&self) -> usize {
        self.coordinates.len()
    }

    pub fn coordinates(&self) -> &[Complex64] {
        &self.coordinates
    }

    pub fn scheme(&self) -> &PointScheme {
        &self.scheme
    }

    pub fn is_torus(&self) -> bool {
        !matches!(self.scheme, PointScheme::RealBox(_))
    }

    /// The evaluation node phi^alpha, computed from coordinate angles so that
    /// large exponents do not lose accuracy.
    pub fn power(&self, alpha: &MultiIndex) -> Result<Vec<Complex64>> {
        if alpha.dim() != self.dimension() {
            return Err(Error::Input(format!(
                "index {} has dimension {}, expected {}",
                alpha,
                alpha.dim(),
                self.dimension()
            )));
        }
        let point = match &self.scheme {
            PointScheme::RootsOfUnity(orders) => alpha
                .entries()
                .iter()
                .zip(orders)
                .map(|(&a, &n)| {
                    let k = a.rem_euclid(n as i64);
                    Complex64::from_polar(1.0, TAU * k as f64 / n as f64)
                })
                .collect(),
            PointScheme::IntegerAngles(thetas) => alpha
                .entries()
                .iter()
                .zip(thetas)
                .map(|(&a, &t)| Complex64::from_polar(1.0, (a as f64 * t) % TAU))
                .collect(),
            PointScheme::RealBox(coords) => alpha
                .entries()
                .iter()
                .zip(coords)
                .map(|(&a, &x)| Complex64::new(x.powi(a as i32), 0.0))
                .collect(),
        };
        Ok(point)
    }
}
