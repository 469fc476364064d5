import numpy as np
import pytest

from .analysis import (ScalingParameters, evaluate_quantity, frequency_parameter,
                       nondimensionalize_static, recover_inplane_stress, recover_transverse_shear,
                       scale_factors, solve_modes, solve_static, static_report, stress_field,
                       through_thickness_profile)
from .assembly import DofMap, GlobalSystem, Load, assemble
from .errors import InvalidParameterError, SingularSystemError
from .fgmwarnings import AlwaysWarning
from .kinematics import PlateModel
from .material import SandwichLayup, default_materials
from .mesh import build_mesh

ALUMINA, ALUMINUM, _ = default_materials()


def plate(model="HSDT13", grading="A", ratio="1-2-1", n=1.0, a=1.0, a_over_h=10.0, nx=4,
          load=None, ceramic=ALUMINA, metal=ALUMINUM, scheme="RuleOfMixtures"):
    stack = SandwichLayup.from_ratio(ratio, a / a_over_h, grading, n, ceramic, metal)
    return assemble(build_mesh(a, a, nx, nx), PlateModel(model), stack, scheme, load=load)


def loaded(**kwargs):
    return plate(load=Load("mechanical", 1.0), **kwargs)


def test_modes_residual_and_orthonormality():
    modal = solve_modes(plate(a_over_h=5.0), m=4)
    assert len(modal) == 4
    assert np.all(np.diff(modal.eigenvalues) >= 0.0)
    assert np.all(modal.residuals() <= 1e-8)
    V, M = modal.vectors, modal.system.M
    assert np.allclose(V.T.dot(M.dot(V)), np.eye(4), rtol=0.0, atol=1e-10)
    # Largest component of every mode is positive
    assert np.all(V[np.argmax(np.abs(V), axis=0), np.arange(4)] > 0.0)
    assert np.allclose(modal.frequency_parameters(),
                       frequency_parameter(modal.omega, 1.0, 0.2))


def test_modes_match_cholesky_reduction():
    system = plate("FSDT5", a_over_h=5.0, nx=2)
    K, M = system.K.toarray(), system.M.toarray()
    L = np.linalg.cholesky(M)
    Linv = np.linalg.inv(L)
    expected = np.linalg.eigvalsh(Linv.dot(K).dot(Linv.T))[:6]
    modal = solve_modes(system, m=6)
    assert np.allclose(modal.eigenvalues, expected, rtol=1e-8, atol=0.0)


def test_sparse_solvers_agree_with_dense():
    system = loaded(model="HSDT9")
    dense = solve_modes(system, m=3)
    with pytest.warns(AlwaysWarning):
        sparse = solve_modes(system, m=3, dense_limit=0)
    assert np.allclose(sparse.eigenvalues, dense.eigenvalues, rtol=1e-7, atol=0.0)

    d1 = solve_static(system).displacement
    d2 = solve_static(system, dense_limit=0).displacement
    assert np.allclose(d2, d1, rtol=1e-7, atol=1e-8 * np.abs(d1).max())


def test_solver_arguments():
    system = plate(nx=2)
    with pytest.raises(InvalidParameterError):
        solve_modes(system, m=0)
    with pytest.raises(InvalidParameterError):
        solve_modes(system, m=system.nfree + 1)
    # No load: zero displacement without factorizing
    assert not np.any(solve_static(system).displacement)


def test_singular_stiffness():
    system = loaded(nx=2)
    broken = GlobalSystem(0.0 * system.K_full, system.M_full, system.f_full, system.dofmap,
                          system.mesh, system.model, system.layup, system.scheme,
                          system.rigidities, system.load)
    with pytest.raises(SingularSystemError) as err:
        solve_static(broken)
    assert len(err.value.suspects) == 5


def test_static_linearity():
    system = loaded()
    first = solve_static(system)
    assert first.residual <= 1e-10
    tripled = solve_static(system.with_load(Load("mechanical", 3.0)))
    assert np.allclose(tripled.displacement, 3.0 * first.displacement, rtol=1e-8,
                       atol=1e-9 * np.abs(first.displacement).max())


def test_nondimensional_values_are_scale_free():
    small = static_report(solve_static(plate(a=1.0, load=Load("mechanical", 1.0))))
    large = static_report(solve_static(plate(a=3.0, load=Load("mechanical", 7.0))))
    for key in small.values:
        assert np.isclose(large[key], small[key], rtol=1e-7, atol=1e-12), key
    assert np.allclose(small.points["w"], (0.5, 0.5, -0.05))
    assert np.allclose(small.points["sxy"], (0.0, 0.0, -0.05))
    assert np.allclose(small.points["sxx"], (0.5, 0.5, -0.05))


def test_static_report_arguments():
    solution = solve_static(loaded(nx=2))
    report = static_report(solution, quantities=["w"], points={"w": (0.25, 0.5, 0.0)})
    assert list(report.values) == ["w"]
    assert report.points["w"] == (0.25, 0.5, 0.0)
    with pytest.raises(InvalidParameterError):
        static_report(solution, quantities=["temperature"])
    with pytest.raises(InvalidParameterError):
        evaluate_quantity(solution, "u", 0.0, 0.5, "max")


@pytest.mark.parametrize("model", ["HSDT13", "HSDT9"])
def test_shear_recovery_of_symmetric_plate(model):
    # Symmetric graded stack under a mid-surface load: no stretching, so the
    # recovered shear is even in z and vanishes on both faces
    solution = solve_static(loaded(model=model))
    z, sxz, _ = recover_transverse_shear(solution, 0.0, 0.5)
    peak = np.abs(sxz).max()
    assert peak > 0.0
    assert sxz[0] == 0.0
    assert abs(sxz[-1]) <= 0.01 * peak
    assert np.allclose(sxz, sxz[::-1], rtol=0.0, atol=1e-8 * peak)
    assert np.allclose(z, -z[::-1])


def test_stress_field_through_thickness():
    solution = solve_static(loaded())
    bottom, top = solution.layup.z_interfaces[0], solution.layup.z_interfaces[3]
    z = np.linspace(bottom, top, 11)
    field = stress_field(solution, 0.25, 0.5, z)
    assert np.allclose(field.z, z)
    sxx, syy, sxy = recover_inplane_stress(solution, 0.25, 0.5, z)
    assert np.allclose(field.xx, sxx) and np.allclose(field.yy, syy) and np.allclose(field.xy, sxy)
    assert field.xz[0] == 0.0
    value, height = field.extremum("xz")
    assert abs(value) == np.abs(field.xz).max()
    assert height in field.z


def test_zero_index_is_homogeneous_ceramic():
    graded = solve_modes(plate(n=0.0), m=2).eigenvalues
    monolithic = solve_modes(plate(grading="FGM", n=0.0), m=2).eigenvalues
    ceramic = solve_modes(plate(grading="B", n=2.0, metal=ALUMINA), m=2).eigenvalues
    assert np.allclose(monolithic, graded, rtol=1e-10, atol=0.0)
    assert np.allclose(ceramic, graded, rtol=1e-10, atol=0.0)


def test_hsdt13_without_zigzag_is_hsdt11():
    full = loaded(model="HSDT13", ratio="2-1-2", nx=2)
    reduced = loaded(model="HSDT11", ratio="2-1-2", nx=2)

    dofmap = DofMap(full.mesh, full.model)
    dofmap.constrain(full.dofmap.constrained)
    dofmap.constrain([dofmap.index(node, label) for node in range(full.mesh.nnodes)
                      for label in ("psi_x", "psi_y")])
    pinned = GlobalSystem(full.K_full, full.M_full, full.f_full, dofmap, full.mesh, full.model,
                          full.layup, full.scheme, full.rigidities, full.load)
    assert pinned.nfree == reduced.nfree

    assert np.allclose(solve_modes(pinned, m=3).eigenvalues, solve_modes(reduced, m=3).eigenvalues,
                       rtol=1e-9, atol=0.0)
    expected = solve_static(reduced).nodal
    assert np.allclose(solve_static(pinned).nodal, expected, rtol=1e-7,
                       atol=1e-8 * np.abs(expected).max())


def test_fundamental_frequency_against_gradient_index():
    def omega(grading, n):
        return solve_modes(plate("HSDT9", grading, n=n), m=1).frequency_parameters()[0]

    type_a = [omega("A", n) for n in (0.0, 0.5, 1.0, 5.0)]
    assert np.all(np.diff(type_a) < 0.0)
    type_b = [omega("B", n) for n in (0.5, 1.0, 5.0)]
    assert np.all(np.diff(type_b) > 0.0)


def test_frequency_parameter():
    assert frequency_parameter(0.0, 1.0, 0.1) == 0.0
    assert np.isclose(frequency_parameter(1e3, 1.0, 0.1), 1e4 / np.sqrt(1e9))
    with pytest.raises(InvalidParameterError):
        frequency_parameter(-1.0, 1.0, 0.1)


def test_scale_factors():
    params = ScalingParameters(1.0, 0.1, 2.0, 1e9, 70e9, 23e-6)
    standard = scale_factors("mechanical", params)
    assert np.isclose(standard["w"], 100.0 * 1e9 / (2.0 * 0.1 * 1e4))
    assert np.isclose(standard["sxx"], 1.0 / 200.0)
    assert np.isclose(standard["sxz"], 1.0 / 20.0)
    bench = scale_factors("mechanical", params, "elasticity-benchmark")
    assert np.isclose(bench["u"], 100.0 * 70e9 / (2.0 * 0.1 * 1e3))
    assert np.isclose(bench["sxx"], 10.0 / 200.0)
    thermal = scale_factors("thermal", params)
    assert np.isclose(thermal["w"], 1.0 / (0.1 * 23e-6 * 2.0 * 100.0))
    assert np.isclose(thermal["sxx"], 1.0 / (70e9 * 23e-6 * 2.0))
    with pytest.raises(InvalidParameterError):
        scale_factors("mechanical", params, "zenith")
    with pytest.raises(InvalidParameterError):
        scale_factors("acoustic", params)


def test_nondimensionalize_zero_amplitude():
    params = ScalingParameters(1.0, 0.1, 0.0, 1e9, 70e9, 23e-6)
    assert nondimensionalize_static({"w": 0.0}, "mechanical", params) == {"w": 0.0}
    with pytest.raises(InvalidParameterError):
        nondimensionalize_static({"w": 1e-3}, "mechanical", params)


def test_profile_layers():
    solution = solve_static(loaded(model="FSDT5", nx=2))
    profile = through_thickness_profile(solution, 0.0, 0.5, "u")
    assert list(profile.layer) == [1] * 21 + [2] * 21 + [3] * 21
    z1, z2, _, _ = solution.layup.z_interfaces
    assert np.sum(np.isclose(profile.z, z2)) == 2
    # First-order shear deformation: u is linear in z in every layer
    assert np.allclose(np.diff(profile.value.reshape(3, 21), 2, axis=1), 0.0,
                       atol=1e-10 * np.abs(profile.value).max())
    assert len(profile.rows()) == 63

    hollow = solve_static(loaded(model="FSDT5", ratio="1-0-1", nx=2))
    assert len(through_thickness_profile(hollow, 0.5, 0.5, "w").z) == 42
    with pytest.raises(InvalidParameterError):
        through_thickness_profile(solution, 0.5, 0.5, "temperature")
    with pytest.raises(InvalidParameterError):
        through_thickness_profile(solution, 0.5, 0.5, "u", samples_per_layer=1)


def test_thickness_stretch_in_fundamental_mode():
    modal = solve_modes(plate(nx=2), m=1)
    w = through_thickness_profile(modal.mode(0), 0.5, 0.5, "w").value
    assert np.ptp(w) > 1e-6 * np.abs(w).max()


def test_homogeneous_plate_in_plane_displacement_is_odd():
    solution = solve_static(loaded(grading="FGM", n=0.0))
    z = np.linspace(-0.05, 0.05, 11)
    u = through_thickness_profile(solution, 0.0, 0.5, "u", z=z).value
    assert np.allclose(u, -u[::-1], rtol=0.0, atol=1e-8 * np.abs(u).max())


def test_thin_plate_free_of_shear_locking():
    # Homogeneous FSDT plate under a sinusoidal load: bending plus shear deflection
    a, h = 1.0, 0.005
    stack = SandwichLayup.from_ratio("1-1-1", h, "A", 0.0, ALUMINA, ALUMINUM)
    E, nu = ALUMINA.young_modulus, ALUMINA.poisson_ratio
    D = E * h ** 3 / (12.0 * (1.0 - nu ** 2))
    lam = 2.0 * np.pi ** 2 / a ** 2
    exact = 1.0 / (D * lam ** 2) + 1.0 / (5.0 / 6.0 * E / (2.0 * (1.0 + nu)) * h * lam)

    def centre(shear_order):
        system = assemble(build_mesh(a, a, 8, 8), PlateModel("FSDT5"), stack, "RuleOfMixtures",
                          load=Load("mechanical", 1.0), shear_order=shear_order)
        return evaluate_quantity(solve_static(system), "w", 0.5 * a, 0.5 * a, 0.0)[0]

    reduced, full = centre(2), centre(3)
    assert np.isclose(reduced, exact, rtol=2e-3)
    assert abs(full - exact) > abs(reduced - exact)
