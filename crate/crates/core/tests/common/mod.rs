#![allow(dead_code)]

use laminated_beam::constraints::{constraint_values, InterfacePair};
use laminated_beam::element::{internal_energy, internal_force};
use laminated_beam::kinematics::ElementDofs;
use laminated_beam::model::SectionStiffness;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub const SEED: u64 = 0x1a_b3_9f;

pub fn rng() -> StdRng {
    StdRng::seed_from_u64(SEED)
}

/// Glass- to interlayer-like sections, `b·h` rectangles with `A_s = 5/6·A`.
pub fn random_section(rng: &mut StdRng) -> SectionStiffness {
    let e = 10f64.powf(rng.random_range(6.0..11.0));
    let g = e / rng.random_range(2.0..3.0);
    let b = rng.random_range(0.02..0.2);
    let h = rng.random_range(3e-4..1e-2);
    let a = b * h;
    SectionStiffness::new(e * a, g * 5.0 / 6.0 * a, e * b * h.powi(3) / 12.0)
}

/// Moderately large deformation: nodal translations up to 5% of the
/// element length and rotations up to `max_rotation`.
pub fn random_dofs(rng: &mut StdRng, max_rotation: f64) -> ElementDofs {
    let l = rng.random_range(0.005..0.1);
    let mut v = [0.0; 6];
    for node in 0..2 {
        v[3 * node] = rng.random_range(-0.05..0.05) * l;
        v[3 * node + 1] = rng.random_range(-0.05..0.05) * l;
        v[3 * node + 2] = rng.random_range(-max_rotation..max_rotation);
    }
    ElementDofs::new(v, l)
}

/// Step used for the `k`-th element DOF.
pub fn step(dofs: &ElementDofs, k: usize) -> f64 {
    if k % 3 == 2 {
        1e-6
    } else {
        1e-6 * dofs.length
    }
}

fn perturbed(dofs: &ElementDofs, k: usize, delta: f64) -> ElementDofs {
    let mut d = *dofs;
    d.values[k] += delta;
    d
}

/// Central-difference gradient of the element energy.
pub fn fd_force(section: &SectionStiffness, dofs: &ElementDofs) -> [f64; 6] {
    let mut g = [0.0; 6];
    for (k, gk) in g.iter_mut().enumerate() {
        let h = step(dofs, k);
        let plus = internal_energy(section, &perturbed(dofs, k, h));
        let minus = internal_energy(section, &perturbed(dofs, k, -h));
        *gk = (plus - minus) / (2.0 * h);
    }
    g
}

/// Central-difference Jacobian of the internal force.
pub fn fd_tangent(section: &SectionStiffness, dofs: &ElementDofs) -> [[f64; 6]; 6] {
    let mut k = [[0.0; 6]; 6];
    for j in 0..6 {
        let h = step(dofs, j);
        let plus = internal_force(section, &perturbed(dofs, j, h)).0;
        let minus = internal_force(section, &perturbed(dofs, j, -h)).0;
        for (i, row) in k.iter_mut().enumerate() {
            row[j] = (plus[i] - minus[i]) / (2.0 * h);
        }
    }
    k
}

pub fn split(v: [f64; 6]) -> ([f64; 3], [f64; 3]) {
    ([v[0], v[1], v[2]], [v[3], v[4], v[5]])
}

/// Central-difference Jacobian of `(c_X, c_Z)` over the six interface DOFs.
pub fn fd_constraint_jacobian(v: [f64; 6], h: InterfacePair) -> [[f64; 6]; 2] {
    let mut jac = [[0.0; 6]; 2];
    for j in 0..6 {
        let d = 1e-6;
        let (mut p, mut m) = (v, v);
        p[j] += d;
        m[j] -= d;
        let (pu, pl) = split(p);
        let (mu, ml) = split(m);
        let cp = constraint_values(pu, pl, h);
        let cm = constraint_values(mu, ml, h);
        jac[0][j] = (cp.c_x - cm.c_x) / (2.0 * d);
        jac[1][j] = (cp.c_z - cm.c_z) / (2.0 * d);
    }
    jac
}

/// Second differences of `λ_X c_X + λ_Z c_Z`.
pub fn fd_constraint_hessian(v: [f64; 6], lambda: [f64; 2], h: InterfacePair) -> [[f64; 6]; 6] {
    let phi = |x: [f64; 6]| {
        let (u, l) = split(x);
        let c = constraint_values(u, l, h);
        lambda[0] * c.c_x + lambda[1] * c.c_z
    };
    let d = 1e-3;
    let mut hess = [[0.0; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let at = |si: f64, sj: f64| {
                let mut x = v;
                x[i] += si * d;
                x[j] += sj * d;
                phi(x)
            };
            hess[i][j] =
                (at(1.0, 1.0) - at(1.0, -1.0) - at(-1.0, 1.0) + at(-1.0, -1.0)) / (4.0 * d * d);
        }
    }
    hess
}

pub fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}

pub fn rel_diff(a: &[f64], b: &[f64]) -> f64 {
    let diff: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    norm(&diff) / norm(b).max(f64::MIN_POSITIVE)
}

pub fn flatten<const N: usize, const M: usize>(m: &[[f64; M]; N]) -> Vec<f64> {
    m.iter().flatten().copied().collect()
}
