import numpy as np
import pytest

from .assembly import (DofMap, Load, apply_simply_supported, assemble, element_stiffness,
                       load_vector_mechanical, load_vector_thermal, simply_supported_dofs,
                       strain_displacement)
from .errors import InvalidParameterError, SolverError
from .kinematics import (DOF_LABELS, GA, NDOF_FULL, NSTRAIN_BM, TX, TY, U0, V0, W0, W1, PlateModel,
                         integrate_rigidities)
from .material import SandwichLayup, default_materials
from .mesh import Mesh, build_mesh, gauss_rule

ALUMINA, ALUMINUM, _ = default_materials()
MODELS = ["HSDT13", "HSDT11", "HSDT9", "FSDT5"]


def layup(ratio="1-2-1", grading="A", n=1.0, h=1.0):
    return SandwichLayup.from_ratio(ratio, h, grading, n, ALUMINA, ALUMINUM)


def full_vector(mesh, model, func):
    """Global vector of a model from ``func(x, y) -> dict of DOF label to value``"""
    out = np.zeros((mesh.nnodes, NDOF_FULL))
    for i, (x, y) in enumerate(mesh.nodes):
        for label, value in func(x, y).items():
            out[i, DOF_LABELS.index(label)] = value
    return out[:, model.active].ravel()


def boundary_nodes(mesh):
    return np.unique(np.concatenate([mesh.edges[key] for key in ("x0", "xa", "y0", "yb")]))


def solve_patch(mesh, model, stack, exact):
    """Prescribe ``exact`` on the boundary nodes and solve for the interior"""
    system = assemble(mesh, model, stack, "RuleOfMixtures", boundary=None)
    K = system.K_full.toarray()
    d = full_vector(mesh, model, exact)
    ndof = model.dofs_per_node
    fixed = (boundary_nodes(mesh)[:, None] * ndof + np.arange(ndof)).ravel()
    free = np.setdiff1d(np.arange(d.size), fixed)
    interior = np.linalg.solve(K[np.ix_(free, free)], -K[np.ix_(free, fixed)].dot(d[fixed]))
    return interior, d[free]


def distorted_mesh():
    """2x2 patch with the centre node moved off the grid and straight edges kept"""
    mesh = build_mesh(2.0, 2.0, 2, 2)
    nodes = mesh.nodes.copy()

    def node(x, y):
        return int(np.argmin(np.hypot(nodes[:, 0] - x, nodes[:, 1] - y)))

    centre = np.array([1.1, 0.9])
    for neighbour, midside in (((0.0, 1.0), (0.5, 1.0)), ((2.0, 1.0), (1.5, 1.0)),
                               ((1.0, 0.0), (1.0, 0.5)), ((1.0, 2.0), (1.0, 1.5))):
        nodes[node(*midside)] = 0.5 * (centre + neighbour)
    nodes[node(1.0, 1.0)] = centre
    return Mesh(mesh.a, mesh.b, mesh.nx, mesh.ny, nodes, mesh.elements, mesh.edges)


@pytest.mark.parametrize("name", ["HSDT9", "FSDT5"])
def test_membrane_patch(name):
    mesh = distorted_mesh()

    def exact(x, y):
        return {"u0": 1e-3 * (x + 2.0 * y), "v0": 1e-3 * (3.0 * x - y)}

    computed, expected = solve_patch(mesh, PlateModel(name), layup(n=0.0), exact)
    assert np.allclose(computed, expected, rtol=0.0, atol=1e-8 * 4e-3)


@pytest.mark.parametrize("name", ["HSDT9", "FSDT5"])
def test_constant_curvature_patch(name):
    # A sheared mesh keeps every element affine, so quadratic deflections are exact
    mesh = build_mesh(1.0, 1.0, 3, 3)
    nodes = mesh.nodes.copy()
    nodes[:, 0] += 0.3 * nodes[:, 1]
    mesh = Mesh(mesh.a, mesh.b, mesh.nx, mesh.ny, nodes, mesh.elements, mesh.edges)
    kappa = 2e-3

    def exact(x, y):
        return {"w0": -0.5 * kappa * x * x, "theta_x": kappa * x, "u0": 1e-3 * y}

    computed, expected = solve_patch(mesh, PlateModel(name), layup(n=0.0), exact)
    assert np.allclose(computed, expected, rtol=0.0, atol=1e-8 * kappa)


@pytest.mark.parametrize("name", MODELS)
def test_matrices_symmetric(name):
    system = assemble(build_mesh(1.0, 1.0, 2, 2), PlateModel(name), layup(h=0.1), "MoriTanaka")
    for A in (system.K_full, system.M_full):
        assert abs(A - A.T).max() <= 1e-10 * abs(A).max()
    assert system.K.shape == (system.nfree, system.nfree)


@pytest.mark.parametrize("name", MODELS)
def test_rigid_body_modes(name):
    mesh = build_mesh(2.0, 2.0, 2, 2)
    model = PlateModel(name)
    system = assemble(mesh, model, layup(), "RuleOfMixtures", boundary=None)
    K = system.K_full.toarray()

    rigid = [
        lambda x, y: {"u0": 1.0},
        lambda x, y: {"v0": 1.0},
        lambda x, y: {"w0": 1.0},
        lambda x, y: {"u0": -y, "v0": x},
        lambda x, y: {"w0": x, "theta_x": -1.0},
        lambda x, y: {"w0": y, "theta_y": -1.0},
    ]
    scale = abs(K).max()
    for func in rigid:
        r = full_vector(mesh, model, func)
        assert np.linalg.norm(K.dot(r)) <= 1e-10 * scale * np.linalg.norm(r)

    # Nothing else is free of strain energy
    eigenvalues = np.linalg.eigvalsh(K)
    assert np.sum(eigenvalues < 1e-10 * eigenvalues[-1]) == 6


@pytest.mark.parametrize("name", MODELS)
def test_mass_conservation(name):
    mesh = build_mesh(2.0, 3.0, 2, 3)
    model = PlateModel(name)
    system = assemble(mesh, model, layup("2-1-2", n=2.0), "RuleOfMixtures", boundary=None)
    M = system.M_full.toarray()
    mass_per_area = system.rigidities.inertia[W0, W0]
    for label in ("u0", "v0", "w0"):
        r = full_vector(mesh, model, lambda x, y: {label: 1.0})
        assert np.isclose(r.dot(M.dot(r)), mass_per_area * 6.0, rtol=1e-12)
    assert np.linalg.eigvalsh(M)[0] > 0.0


def test_uniform_load_resultant():
    mesh = build_mesh(2.0, 1.0, 4, 2)
    model = PlateModel("HSDT11")
    f = load_vector_mechanical(mesh, model, 3.0, distribution="uniform")
    rows = f.reshape(mesh.nnodes, model.dofs_per_node)
    assert np.isclose(rows[:, model.dof_labels.index("w0")].sum(), 6.0, rtol=1e-13)
    # A mid-surface pressure only works on w0
    rows[:, model.dof_labels.index("w0")] = 0.0
    assert not np.any(rows)


def test_sinusoidal_load_resultant_and_linearity():
    mesh = build_mesh(1.0, 1.0, 8, 8)
    model = PlateModel("FSDT5")
    f1 = load_vector_mechanical(mesh, model, 1.0)
    f2 = load_vector_mechanical(mesh, model, 2.5)
    assert np.allclose(f2, 2.5 * f1, rtol=1e-14, atol=0.0)
    assert np.isclose(f1[W0::model.dofs_per_node].sum(), 4.0 / np.pi ** 2, rtol=1e-6)


def test_top_surface_load():
    mesh = build_mesh(1.0, 1.0, 2, 2)
    model = PlateModel("HSDT13")
    stack = layup(h=0.4)
    f = load_vector_mechanical(mesh, model, 1.0, layup=stack, surface="top").reshape(mesh.nnodes, -1)
    assert np.allclose(f[:, W1], 0.2 * f[:, W0])
    assert np.allclose(f[:, GA], 0.04 * f[:, W0])
    with pytest.raises(InvalidParameterError):
        load_vector_mechanical(mesh, model, 1.0, surface="top")
    top = assemble(mesh, model, stack, "RuleOfMixtures", load=Load("mechanical", 1.0, surface="top"),
                   boundary=None)
    assert np.allclose(top.f_full.reshape(mesh.nnodes, -1)[:, W1], 0.2 * f[:, W0])


@pytest.mark.parametrize("name", ["HSDT13", "FSDT5"])
def test_selective_shear_integration(name):
    mesh = build_mesh(1.0, 1.0, 2, 2)
    model = PlateModel(name)
    R = integrate_rigidities(layup(h=0.1), "RuleOfMixtures", model)
    full = element_stiffness(mesh, 0, model, R, order=3, shear_order=3)
    pts, wts = gauss_rule(3)
    N, dNdx, detJ, _ = mesh.geometry(0, pts[:, 0], pts[:, 1])
    B = strain_displacement(N, dNdx, model)
    assert np.allclose(full, np.einsum("g,gia,ij,gjb->ab", wts * detJ, B, R.stiffness, B))
    # Only the transverse shear part changes with the reduced rule
    reduced = element_stiffness(mesh, 0, model, R)
    Bs = B[:, NSTRAIN_BM:, :]
    bending = np.einsum("g,gia,ij,gjb->ab", wts * detJ, B[:, :NSTRAIN_BM, :], R.A, B[:, :NSTRAIN_BM, :])
    assert np.allclose(full - bending, np.einsum("g,gia,ij,gjb->ab", wts * detJ, Bs, R.D, Bs))
    assert not np.allclose(reduced, full)
    assert np.allclose(reduced, reduced.T)


def test_thermal_load_of_homogeneous_plate():
    # Through-thickness linear temperature in a homogeneous plate bends it without stretching
    mesh = build_mesh(1.0, 1.0, 4, 4)
    model = PlateModel("FSDT5")
    stack = layup(n=0.0)
    system = assemble(mesh, model, stack, "RuleOfMixtures", load=Load("thermal", 10.0), boundary=None)
    thermal = system.rigidities.thermal
    assert abs(thermal[0]) <= 1e-12 * abs(thermal[4])
    assert np.isclose(thermal[4], thermal[5])
    f = system.f_full.reshape(mesh.nnodes, -1)
    assert np.abs(f[:, [U0, V0]]).max() <= 1e-12 * np.abs(f[:, [TX, TY]]).max()
    assert np.allclose(system.f_full, load_vector_thermal(mesh, model, stack, "RuleOfMixtures", 10.0))


def test_load_validation():
    with pytest.raises(InvalidParameterError):
        Load("acoustic")
    with pytest.raises(InvalidParameterError):
        Load("thermal", 1.0, distribution="uniform")
    with pytest.raises(InvalidParameterError):
        Load("mechanical", float("nan"))
    with pytest.raises(InvalidParameterError):
        Load("mechanical", 1.0, surface="bottom")
    load = Load("Mechanical", 2.0).scaled(0.5)
    assert load.amplitude == 1.0 and load.kind == "mechanical" and not load.is_thermal


def test_dofmap():
    mesh = build_mesh(1.0, 1.0, 2, 2)
    dofmap = DofMap(mesh, PlateModel("FSDT5"))
    assert dofmap.size == 21 * 5
    assert dofmap.index(3, "w0") == 17
    assert dofmap.describe(17).startswith("w0@node 3 ")
    assert len(dofmap.element_dofs(0)) == 40
    with pytest.raises(InvalidParameterError):
        dofmap.index(0, "psi_x")
    with pytest.raises(SolverError):
        dofmap.constrain([dofmap.size])
    dofmap.constrain([0, 1, 1])
    assert dofmap.nfree == dofmap.size - 2
    assert list(dofmap.free[:2]) == [2, 3]


@pytest.mark.parametrize("name, expected", [("FSDT5", 4 * 5 + 28 * 3), ("HSDT13", 4 * 13 + 28 * 8)])
def test_simply_supported_dofs(name, expected):
    mesh = build_mesh(1.0, 1.0, 4, 4)
    dofmap = DofMap(mesh, PlateModel(name))
    fixed = simply_supported_dofs(mesh, dofmap)
    assert len(fixed) == expected
    # Normal rotations stay free along an edge
    node = mesh.edges["y0"][3]
    assert dofmap.index(node, "theta_y") not in fixed
    assert dofmap.index(node, "theta_x") in fixed


def test_apply_simply_supported():
    mesh = build_mesh(1.0, 1.0, 4, 4)
    model = PlateModel("HSDT13")
    free = assemble(mesh, model, layup(h=0.1), "RuleOfMixtures", boundary=None)
    supported = apply_simply_supported(free)
    assert supported.nfree == free.nfree - (4 * 13 + 28 * 8)
    assert supported.K_full is free.K_full
    nodal = supported.nodal(np.ones(supported.nfree))
    corner = mesh.edges["x0"][0]
    assert np.all(nodal[corner] == 0.0)
    with pytest.raises(InvalidParameterError):
        assemble(mesh, model, layup(h=0.1), "RuleOfMixtures", boundary="clamped")
