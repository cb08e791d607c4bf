//! Two-node Reissner beam element with selective one-point integration:
//! energy, internal force vector, consistent tangent and nodal loads.

use crate::kinematics::{strain_nonlinear, ElementDofs};
use crate::model::SectionStiffness;

/// Generalized nodal forces ordered `(u₁, w₁, φ₁, u₂, w₂, φ₂)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ElementForces(pub [f64; 6]);

/// Symmetric 6×6 element tangent.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ElementTangent(pub [[f64; 6]; 6]);

impl ElementTangent {
    pub fn is_symmetric(&self) -> bool {
        (0..6).all(|i| (0..6).all(|j| self.0[i][j] == self.0[j][i]))
    }
}

pub fn internal_energy(section: &SectionStiffness, dofs: &ElementDofs) -> f64 {
    let s = strain_nonlinear(dofs);
    0.5 * (section.axial * s.epsilon * s.epsilon
        + section.shear * s.gamma * s.gamma
        + section.bending * s.kappa * s.kappa)
        * dofs.length
}

pub fn internal_force(section: &SectionStiffness, dofs: &ElementDofs) -> ElementForces {
    let s = strain_nonlinear(dofs);
    let (sin_b, cos_b) = dofs.mean_rotation().sin_cos();
    let normal = section.axial * s.epsilon;
    let shear = section.shear * s.gamma;
    let moment = section.bending * s.kappa;
    let f1 = -normal * cos_b - shear * sin_b;
    let f2 = normal * sin_b - shear * cos_b;
    let lever = -0.5 * (dofs.length + dofs.delta_u()) * f2 + 0.5 * dofs.delta_w() * f1;
    ElementForces([f1, f2, lever - moment, -f1, -f2, lever + moment])
}

pub fn tangent_stiffness(section: &SectionStiffness, dofs: &ElementDofs) -> ElementTangent {
    let s = strain_nonlinear(dofs);
    let l = dofs.length;
    let (ea, ga, ei) = (section.axial, section.shear, section.bending);
    let beta = dofs.mean_rotation();
    let (sin_b, cos_b) = beta.sin_cos();

    let k11 = (ea * cos_b * cos_b + ga * sin_b * sin_b) / l;
    let k12 = (ga - ea) * (2.0 * beta).sin() / (2.0 * l);
    let k13 = 0.5 * ((ea - ga) * (s.epsilon * sin_b + s.gamma * cos_b) - ga * sin_b);
    let k22 = (ea * sin_b * sin_b + ga * cos_b * cos_b) / l;
    let k23 = 0.5 * ((ea - ga) * (s.epsilon * cos_b - s.gamma * sin_b) - ga * cos_b);
    let k33 = 0.5 * (-(l + dofs.delta_u()) * k23 + dofs.delta_w() * k13) + ei / l;
    let k36 = k33 - 2.0 * ei / l;

    ElementTangent([
        [k11, k12, k13, -k11, -k12, k13],
        [k12, k22, k23, -k12, -k22, k23],
        [k13, k23, k33, -k13, -k23, k36],
        [-k11, -k12, -k13, k11, k12, -k13],
        [-k12, -k22, -k23, k12, k22, -k23],
        [k13, k23, k36, -k13, -k23, k33],
    ])
}

/// Transverse loads acting on one element: a constant distributed intensity
/// (N/m) and point forces (N) at its two nodes.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ElementLoad {
    pub distributed: f64,
    pub point: [f64; 2],
}

/// Consistent nodal forces for linear shape functions (dead load).
pub fn external_force(load: &ElementLoad, length: f64) -> ElementForces {
    let half = 0.5 * load.distributed * length;
    ElementForces([
        0.0,
        half + load.point[0],
        0.0,
        0.0,
        half + load.point[1],
        0.0,
    ])
}
