//! Nodal compatibility between adjacent layers: gap values, their Jacobian
//! block and the multiplier-weighted curvature.
//!
//! A constraint block couples the `(u, w, φ)` triple of the upper layer `i`
//! and the lower layer `i + 1` at one node; local columns are ordered
//! `(uⁱ, wⁱ, φⁱ, uⁱ⁺¹, wⁱ⁺¹, φⁱ⁺¹)`.

/// Gaps `(c_X, c_Z)` between the bottom fiber of the upper layer and the top
/// fiber of the lower layer at one node.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct ConstraintPair {
    pub c_x: f64,
    pub c_z: f64,
}

/// Lagrange multipliers, interface-major then node then `(X, Z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MultiplierVector {
    values: Vec<f64>,
    n_nodes: usize,
}

impl MultiplierVector {
    pub fn zeros(n_interfaces: usize, n_nodes: usize) -> Self {
        Self {
            values: vec![0.0; 2 * n_interfaces * n_nodes],
            n_nodes,
        }
    }

    pub fn from_vec(values: Vec<f64>, n_nodes: usize) -> Self {
        assert_eq!(values.len() % (2 * n_nodes.max(1)), 0);
        Self { values, n_nodes }
    }

    pub fn index(n_nodes: usize, interface: usize, node: usize, direction: Direction) -> usize {
        2 * (interface * n_nodes + node) + direction as usize
    }

    /// Multiplier pair `(λ_X, λ_Z)` of one node at one interface.
    pub fn pair(&self, interface: usize, node: usize) -> [f64; 2] {
        let k = Self::index(self.n_nodes, interface, node, Direction::X);
        [self.values[k], self.values[k + 1]]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }

    pub fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.values
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    X = 0,
    Z = 1,
}

/// Thicknesses of the two layers meeting at an interface.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct InterfacePair {
    pub upper: f64,
    pub lower: f64,
}

pub fn constraint_values(upper: [f64; 3], lower: [f64; 3], h: InterfacePair) -> ConstraintPair {
    let [ua, wa, pa] = upper;
    let [ub, wb, pb] = lower;
    ConstraintPair {
        c_x: ua - ub + 0.5 * (h.upper * pa.sin() + h.lower * pb.sin()),
        c_z: -0.5 * (h.upper + h.lower) + wa - wb + 0.5 * (h.upper * pa.cos() + h.lower * pb.cos()),
    }
}

/// `∂(c_X, c_Z)/∂(uⁱ, wⁱ, φⁱ, uⁱ⁺¹, wⁱ⁺¹, φⁱ⁺¹)`.
pub fn constraint_jacobian_block(
    phi_upper: f64,
    phi_lower: f64,
    h: InterfacePair,
) -> [[f64; 6]; 2] {
    let (sa, ca) = phi_upper.sin_cos();
    let (sb, cb) = phi_lower.sin_cos();
    [
        [1.0, 0.0, 0.5 * h.upper * ca, -1.0, 0.0, 0.5 * h.lower * cb],
        [
            0.0,
            1.0,
            -0.5 * h.upper * sa,
            0.0,
            -1.0,
            -0.5 * h.lower * sb,
        ],
    ]
}

/// Diagonal entries `(K_λ,φⁱ, K_λ,φⁱ⁺¹)`; every other entry of the block is zero.
pub fn constraint_hessian_diagonal(
    lambda: [f64; 2],
    phi_upper: f64,
    phi_lower: f64,
    h: InterfacePair,
) -> [f64; 2] {
    let [lx, lz] = lambda;
    let (sa, ca) = phi_upper.sin_cos();
    let (sb, cb) = phi_lower.sin_cos();
    [
        -0.5 * h.upper * (sa * lx + ca * lz),
        -0.5 * h.lower * (sb * lx + cb * lz),
    ]
}

/// `λ_X ∂²c_X/∂d² + λ_Z ∂²c_Z/∂d²` over the six local DOFs.
pub fn constraint_hessian_contribution(
    lambda: [f64; 2],
    phi_upper: f64,
    phi_lower: f64,
    h: InterfacePair,
) -> [[f64; 6]; 6] {
    let [ka, kb] = constraint_hessian_diagonal(lambda, phi_upper, phi_lower, h);
    let mut block = [[0.0; 6]; 6];
    block[2][2] = ka;
    block[5][5] = kb;
    block
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: InterfacePair = InterfacePair {
        upper: 0.005,
        lower: 0.00038,
    };

    #[test]
    fn undeformed_and_translated_are_compatible() {
        assert_eq!(
            constraint_values([0.0; 3], [0.0; 3], H),
            ConstraintPair::default()
        );
        let c = constraint_values([0.3, -0.2, 0.0], [0.3, -0.2, 0.0], H);
        assert_eq!(c.c_x, 0.0);
        assert!(c.c_z.abs() < 1e-16);
    }

    #[test]
    fn common_rotation_gap() {
        // ½(h₁+h₂)·sin 0.1 and ½(h₁+h₂)(cos 0.1 − 1)
        let c = constraint_values([0.0, 0.0, 0.1], [0.0, 0.0, 0.1], H);
        assert!((c.c_x - 2.685519e-4).abs() < 1e-9);
        assert!((c.c_z - (-1.343879e-5)).abs() < 1e-10);
    }

    #[test]
    fn jacobian_special_angles() {
        let j = constraint_jacobian_block(0.0, 0.0, H);
        assert_eq!(j[0][2], 0.5 * H.upper);
        assert_eq!(j[0][5], 0.5 * H.lower);
        assert_eq!(j[1][2], 0.0);
        assert_eq!(j[1][5], 0.0);
        let half_pi = std::f64::consts::FRAC_PI_2;
        let j = constraint_jacobian_block(half_pi, half_pi, H);
        assert!(j[0][2].abs() < 1e-18 && j[0][5].abs() < 1e-18);
    }

    #[test]
    fn hessian_special_cases() {
        assert_eq!(
            constraint_hessian_contribution([0.0, 0.0], 0.3, -0.2, H),
            [[0.0; 6]; 6]
        );
        let b = constraint_hessian_contribution([0.0, 7.0], 0.0, 0.0, H);
        assert_eq!(b[2][2], -0.5 * H.upper * 7.0);
        assert_eq!(b[5][5], -0.5 * H.lower * 7.0);
        let nonzero = b.iter().flatten().filter(|v| **v != 0.0).count();
        assert_eq!(nonzero, 2);
    }

    #[test]
    fn multiplier_layout() {
        let mut lambda = MultiplierVector::zeros(2, 41);
        assert_eq!(lambda.len(), 164);
        let k = MultiplierVector::index(41, 1, 3, Direction::Z);
        assert_eq!(k, 2 * (41 + 3) + 1);
        lambda.as_mut_slice()[k] = 2.5;
        assert_eq!(lambda.pair(1, 3), [0.0, 2.5]);
    }
}
