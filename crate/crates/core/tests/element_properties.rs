mod common;

use laminated_beam::constraints::{
    constraint_hessian_contribution, constraint_jacobian_block, constraint_values, InterfacePair,
};
use laminated_beam::element::{internal_energy, internal_force, tangent_stiffness};
use laminated_beam::kinematics::{
    biot_strain_oracle, strain_linear, strain_nonlinear, ElementDofs,
};
use laminated_beam::model::SectionStiffness;
use proptest::prelude::*;

use common::{flatten, rel_diff};

fn section() -> impl Strategy<Value = SectionStiffness> {
    (6.0f64..11.0, 2.0f64..3.0, 0.02f64..0.2, 3e-4f64..1e-2).prop_map(|(log_e, ratio, b, h)| {
        let e = 10f64.powf(log_e);
        let a = b * h;
        SectionStiffness::new(e * a, e / ratio * 5.0 / 6.0 * a, e * b * h.powi(3) / 12.0)
    })
}

fn dofs(max_rotation: f64) -> impl Strategy<Value = ElementDofs> {
    (
        0.005f64..0.1,
        prop::array::uniform4(-0.05f64..0.05),
        prop::array::uniform2(-max_rotation..max_rotation),
    )
        .prop_map(|(l, t, r)| {
            ElementDofs::new([t[0] * l, t[1] * l, r[0], t[2] * l, t[3] * l, r[1]], l)
        })
}

fn interface() -> impl Strategy<Value = InterfacePair> {
    (3e-4f64..1e-2, 3e-4f64..1e-2).prop_map(|(upper, lower)| InterfacePair { upper, lower })
}

proptest! {
    #[test]
    fn internal_force_is_energy_gradient(s in section(), d in dofs(1.0)) {
        let err = rel_diff(&common::fd_force(&s, &d), &internal_force(&s, &d).0);
        prop_assert!(err <= 1e-6, "relative error {err:e}");
    }

    #[test]
    fn tangent_is_force_jacobian(s in section(), d in dofs(1.0)) {
        let k = tangent_stiffness(&s, &d);
        let err = rel_diff(&flatten(&common::fd_tangent(&s, &d)), &flatten(&k.0));
        prop_assert!(err <= 1e-5, "relative error {err:e}");
        prop_assert!(k.is_symmetric());
    }

    #[test]
    fn biot_oracle_matches_beam_strains(d in dofs(0.3), t in -0.5f64..0.5, h in 3e-4f64..1e-2) {
        let z = t * h;
        let s = strain_nonlinear(&d);
        let (h11, h21) = biot_strain_oracle(&d, z).unwrap();
        let err = rel_diff(&[h11, h21], &[s.epsilon + s.kappa * z, s.gamma]);
        prop_assert!(err <= 1e-7, "relative error {err:e}");
    }

    #[test]
    fn rigid_motion_is_strain_free(
        s in section(),
        l in 0.005f64..0.1,
        a in -0.1f64..0.1,
        c in -0.1f64..0.1,
        alpha in -3.0f64..3.0,
    ) {
        let d = ElementDofs::rigid(l, a, c, alpha);
        let strain = strain_nonlinear(&d);
        prop_assert!(strain.epsilon.abs() <= 1e-12);
        prop_assert!(strain.gamma.abs() <= 1e-12);
        prop_assert!(strain.kappa.abs() <= 1e-12);
        prop_assert!(internal_energy(&s, &d) <= 1e-12 * (s.axial + s.shear) * l);
        let f = internal_force(&s, &d).0;
        let scale = s.axial.max(s.shear);
        prop_assert!(f.iter().all(|v| v.abs() <= 1e-10 * scale), "{f:?}");
    }

    #[test]
    fn small_motion_strains_linearize(d in dofs(1.0), t in 1e-7f64..1e-6) {
        let small = d.scaled(t);
        let lin = strain_linear(&small);
        let non = strain_nonlinear(&small);
        let err = rel_diff(&[non.epsilon, non.gamma, non.kappa], &[lin.epsilon, lin.gamma, lin.kappa]);
        prop_assert!(err <= 1e-5, "relative error {err:e}");
    }

    #[test]
    fn energy_is_non_negative(s in section(), d in dofs(3.0)) {
        prop_assert!(internal_energy(&s, &d) >= 0.0);
    }

    #[test]
    fn constraint_jacobian_matches_differences(
        t in prop::array::uniform6(-0.01f64..0.01),
        r in prop::array::uniform2(-1.0f64..1.0),
        h in interface(),
    ) {
        let v = [t[0], t[1], r[0], t[3], t[4], r[1]];
        let exact = constraint_jacobian_block(r[0], r[1], h);
        let err = rel_diff(&flatten(&common::fd_constraint_jacobian(v, h)), &flatten(&exact));
        prop_assert!(err <= 1e-8, "relative error {err:e}");
    }

    #[test]
    fn constraint_hessian_matches_second_differences(
        t in prop::array::uniform6(-0.01f64..0.01),
        r in prop::array::uniform2(-1.0f64..1.0),
        lambda in prop::array::uniform2(-100.0f64..100.0),
        h in interface(),
    ) {
        let v = [t[0], t[1], r[0], t[3], t[4], r[1]];
        let exact = constraint_hessian_contribution(lambda, r[0], r[1], h);
        let err = rel_diff(&flatten(&common::fd_constraint_hessian(v, lambda, h)), &flatten(&exact));
        prop_assert!(err <= 1e-6, "relative error {err:e}");
    }

    #[test]
    fn common_translation_keeps_interface_closed(a in -1.0f64..1.0, c in -1.0f64..1.0, h in interface()) {
        let gap = constraint_values([a, c, 0.0], [a, c, 0.0], h);
        prop_assert!(gap.c_x.abs() <= 1e-15);
        prop_assert!(gap.c_z.abs() <= 1e-15 * (1.0 + c.abs()));
    }
}
