"""Static and modal solutions, stress recovery and nondimensional reports

In-plane stresses come straight from the constitutive law at the query
height. Transverse shear stresses are recovered by integrating the 3-D
equilibrium equations through the thickness::

    sigma_xz(z) = - int_{-h/2}^{z} (d sigma_xx/dx + d sigma_xy/dy) dz'
    sigma_yz(z) = - int_{-h/2}^{z} (d sigma_xy/dx + d sigma_yy/dy) dz'

with the in-plane derivatives taken from a bilinear fit of the
generalized strains at the 2x2 Gauss points of each element.

"""

from __future__ import division

import logging
from collections import OrderedDict, namedtuple

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .errors import InvalidParameterError, SingularSystemError, SolverError
from .fgmwarnings import alwayswarn
from .kinematics import (constitutive_matrix, displacement_field, strain_vectors,
                         thermal_strain_direction, thickness_operator, through_thickness_integral,
                         zigzag)
from .material import effective_properties
from .mesh import shape_functions

logger = logging.getLogger(__name__)

# Largest number of free DOFs handled by the dense solvers
DENSE_LIMIT = 3000

# Reference density and modulus of the frequency parameter
RHO_REF = 1.0
E_REF = 1.0e9

STRESS_COMPONENTS = ("xx", "yy", "zz", "xy", "xz", "yz")
DISPLACEMENTS = ("u", "v", "w")
IN_PLANE_STRESSES = ("sxx", "syy", "szz", "sxy")
SHEAR_STRESSES = ("sxz", "syz")
QUANTITIES = DISPLACEMENTS + IN_PLANE_STRESSES + SHEAR_STRESSES

# Default evaluation points as fractions (x/a, y/b, z/h); "max" reports
# the through-thickness extremum. The sandwich reference tables sample
# the displacements and the in-plane stresses on the bottom face z = -h/2
EVALUATION_POINTS = OrderedDict([
    ("u", (0.0, 0.5, -0.5)),
    ("v", (0.5, 0.0, -0.5)),
    ("w", (0.5, 0.5, -0.5)),
    ("sxx", (0.5, 0.5, -0.5)),
    ("syy", (0.5, 0.5, -0.5)),
    ("sxy", (0.0, 0.0, -0.5)),
    ("sxz", (0.0, 0.5, "max")),
    ("syz", (0.5, 0.0, "max")),
])

# Number of through-thickness samples used to locate shear extrema
SHEAR_SAMPLES = 201

_GP = 1.0 / np.sqrt(3.0)
_PATCH_POINTS = np.array([[-_GP, -_GP], [_GP, -_GP], [_GP, _GP], [-_GP, _GP]])
_PATCH_BASIS = np.column_stack([np.ones(4), _PATCH_POINTS[:, 0], _PATCH_POINTS[:, 1],
                                _PATCH_POINTS[:, 0] * _PATCH_POINTS[:, 1]])


class FieldState(object):
    """Generalized DOF field on a mesh, with point evaluation

    Base of :py:class:`StaticSolution` and of single modes of a
    :py:class:`ModalSolution`.
    """

    def __init__(self, system, nodal, thermal_amplitude=0.0):
        self.system = system
        self.nodal = nodal
        self.thermal_amplitude = float(thermal_amplitude)

    @property
    def mesh(self):
        return self.system.mesh

    @property
    def model(self):
        return self.system.model

    @property
    def layup(self):
        return self.system.layup

    @property
    def scheme(self):
        return self.system.scheme

    def _element_state(self, e, xi, eta):
        N, dNdx, _, _ = self.mesh.geometry(e, xi, eta)
        values = self.nodal[self.mesh.elements[e]]
        f = np.einsum("...a,aj->...j", N, values)
        fx = np.einsum("...a,aj->...j", dNdx[..., 0], values)
        fy = np.einsum("...a,aj->...j", dNdx[..., 1], values)
        return f, fx, fy

    def dofs_at(self, x, y):
        """Generalized DOFs and their x, y derivatives at ``(x, y)``

        Values on element boundaries are averaged over the adjacent
        elements.
        """
        states = [self._element_state(e, xi, eta) for e, xi, eta in self.mesh.locate(x, y)]
        return tuple(np.mean([s[i] for s in states], axis=0) for i in range(3))

    def strains_at(self, x, y):
        """The 28 generalized strains at ``(x, y)``"""
        g = [strain_vectors(self.model, *self._element_state(e, xi, eta)).as_vector()
             for e, xi, eta in self.mesh.locate(x, y)]
        return np.mean(g, axis=0)

    def strain_gradients_at(self, x, y):
        """x and y derivatives of the generalized strains at ``(x, y)``"""
        gx, gy = [], []
        for e, xi, eta in self.mesh.locate(x, y):
            f, fx, fy = self._element_state(e, _PATCH_POINTS[:, 0], _PATCH_POINTS[:, 1])
            g = strain_vectors(self.model, f, fx, fy).as_vector()
            coef = np.linalg.solve(_PATCH_BASIS, g)
            dxi = coef[1] + coef[3] * eta
            deta = coef[2] + coef[3] * xi
            _, dN = shape_functions(xi, eta)
            J = dN.T.dot(self.mesh.element_coordinates(e))
            grads = np.linalg.solve(J, np.vstack([dxi, deta]))
            gx.append(grads[0])
            gy.append(grads[1])
        return np.mean(gx, axis=0), np.mean(gy, axis=0)

    def _load_shape(self, x, y):
        load = self.system.load
        if load is None or not load.is_thermal or self.thermal_amplitude == 0.0:
            return 0.0, (0.0, 0.0)
        return load.shape(self.mesh, x, y), load.shape_gradient(self.mesh, x, y)

    def _section(self, z, layer):
        props = effective_properties(self.layup, self.scheme, z, layer=layer)
        C = constitutive_matrix(props["E"], props["nu"], self.model.has_thickness_stretch)
        C[..., 4:, 4:] *= self.system.rigidities.shear_factor
        S, dSdz = zigzag(self.layup, z, layer=layer)
        F = thickness_operator(z, S, dSdz)
        thermal = (self.thermal_amplitude * props["alpha"] * 2.0 * z / self.layup.thickness)[..., None] \
            * thermal_strain_direction(self.model.has_thickness_stretch)
        return C, F, thermal

    def stresses(self, x, y, z, layer=None):
        """Constitutive stresses ``(..., 6)`` in :py:data:`STRESS_COMPONENTS` order"""
        z = self.layup.check_inside(z)
        g = self.strains_at(x, y)
        s, _ = self._load_shape(x, y)
        C, F, thermal = self._section(z, layer)
        eps = np.einsum("...ij,j->...i", F, g) - s * thermal
        return np.einsum("...ij,...j->...i", C, eps)

    def displacements(self, x, y, z, layer=None):
        f, _, _ = self.dofs_at(x, y)
        return displacement_field(self.model, f, z, self.layup, layer=layer)


class StaticSolution(FieldState):
    """Displacements of a static load case

    Attributes
    ----------
    displacement : numpy.ndarray
        Free-DOF solution vector
    nodal : numpy.ndarray
        ``(nnodes, 13)`` generalized DOFs (zeros for inactive DOFs)

    """

    def __init__(self, system, displacement):
        self.displacement = displacement
        load = system.load
        thermal = load.amplitude if load is not None and load.is_thermal else 0.0
        super(StaticSolution, self).__init__(system, system.nodal(displacement), thermal)

    @property
    def load(self):
        return self.system.load

    @property
    def residual(self):
        """``||K d - f|| / ||f||`` (absolute norm when f = 0)"""
        r = np.linalg.norm(self.system.K.dot(self.displacement) - self.system.f)
        scale = np.linalg.norm(self.system.f)
        return r / scale if scale > 0 else r


class ModalSolution(object):
    """Lowest eigenpairs of ``K v = lambda M v``

    Attributes
    ----------
    eigenvalues : numpy.ndarray
        ``omega**2``, ascending
    vectors : numpy.ndarray
        ``(nfree, m)`` mass-orthonormal mode vectors; the largest
        magnitude component of each is positive

    """

    def __init__(self, system, eigenvalues, vectors):
        self.system = system
        self.eigenvalues = eigenvalues
        self.vectors = vectors

    def __len__(self):
        return len(self.eigenvalues)

    @property
    def omega(self):
        return np.sqrt(np.clip(self.eigenvalues, 0.0, None))

    def frequency_parameters(self, rho_ref=RHO_REF, E_ref=E_REF):
        return frequency_parameter(self.omega, self.system.mesh.a, self.system.layup.thickness,
                                   rho_ref, E_ref)

    def mode(self, i):
        """Mode ``i`` (0-based) as a :py:class:`FieldState`"""
        return FieldState(self.system, self.system.nodal(self.vectors[:, i]))

    def nodal_modes(self):
        """``(m, nnodes, 13)`` generalized DOFs of all modes"""
        return np.array([self.system.nodal(self.vectors[:, i]) for i in range(len(self))])

    def residuals(self):
        """``||K v - lambda M v|| / ||K v||`` per mode"""
        K, M = self.system.K, self.system.M
        out = []
        for lam, v in zip(self.eigenvalues, self.vectors.T):
            Kv = K.dot(v)
            out.append(np.linalg.norm(Kv - lam * M.dot(v)) / np.linalg.norm(Kv))
        return np.array(out)


def _suspect_dofs(system, count=5):
    """Free DOFs with the smallest relative stiffness diagonal"""
    diag = np.abs(system.K.diagonal())
    if diag.size == 0:
        return []
    order = np.argsort(diag, kind="stable")[:count]
    return [system.dofmap.describe(system.free[i]) for i in order]


def solve_static(system, dense_limit=DENSE_LIMIT):
    """Solve ``K d = f`` on the free DOFs

    A dense Cholesky factorization is used up to ``dense_limit`` free DOFs,
    a sparse LU factorization above.

    Raises
    ------
    SingularSystemError
        If ``K`` is not positive definite (e.g. missing constraints)

    """
    n = system.nfree
    if n == 0:
        raise SolverError("No free DOFs left after applying constraints")
    if not np.any(system.f):
        return StaticSolution(system, np.zeros(n))

    try:
        if n <= dense_limit:
            factor = scipy.linalg.cho_factor(system.K.toarray())
            d = scipy.linalg.cho_solve(factor, system.f)
        else:
            d = scipy.sparse.linalg.splu(system.K.tocsc()).solve(system.f)
    except (np.linalg.LinAlgError, RuntimeError) as err:
        raise SingularSystemError("Stiffness factorization failed: {}".format(err),
                                  suspects=_suspect_dofs(system))
    if not np.all(np.isfinite(d)):
        raise SingularSystemError("Stiffness solve produced non-finite values",
                                  suspects=_suspect_dofs(system))

    solution = StaticSolution(system, d)
    logger.debug("Static solve: %d DOFs, residual %.3e", n, solution.residual)
    return solution


def _fix_signs(vectors):
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def solve_modes(system, m=6, dense_limit=DENSE_LIMIT):
    """Lowest ``m`` free-vibration eigenpairs

    Up to ``dense_limit`` free DOFs the symmetric-definite problem is
    solved densely; larger systems fall back to shift-invert Lanczos
    about zero.

    Raises
    ------
    InvalidParameterError
        If ``m`` is not between 1 and the number of free DOFs
    SingularSystemError
        If ``M`` is not positive definite or ``K`` admits a rigid mode

    """
    n = system.nfree
    if not 1 <= m <= n:
        raise InvalidParameterError("Requested {} modes but the system has {} free DOFs".format(m, n))

    if n <= dense_limit:
        try:
            vals, vecs = scipy.linalg.eigh(system.K.toarray(), system.M.toarray(),
                                           subset_by_index=[0, m - 1])
        except np.linalg.LinAlgError as err:
            raise SingularSystemError("Mass matrix is not positive definite: {}".format(err))
    else:
        alwayswarn("{} free DOFs exceed the dense limit of {}; using shift-invert Lanczos".format(
            n, dense_limit))
        if m >= n - 1:
            raise InvalidParameterError("Too many modes requested for the sparse eigensolver")
        vals, vecs = scipy.sparse.linalg.eigsh(system.K.tocsc(), k=m, M=system.M.tocsc(),
                                               sigma=0.0, which="LM")
        order = np.argsort(vals, kind="stable")
        vals, vecs = vals[order], vecs[:, order]

    if vals[0] <= 0:
        worst = np.argsort(-np.abs(vecs[:, 0]), kind="stable")[:5]
        raise SingularSystemError("Non-positive eigenvalue {:g}; the plate is not fully restrained".format(
            vals[0]), suspects=[system.dofmap.describe(system.free[i]) for i in worst])

    norms = np.sqrt(np.einsum("im,im->m", vecs, system.M.dot(vecs)))
    vecs = _fix_signs(vecs / norms)
    logger.debug("Modal solve: %d DOFs, lowest eigenvalue %.6e", n, vals[0])
    return ModalSolution(system, vals, vecs)


def frequency_parameter(omega, a, h, rho_ref=RHO_REF, E_ref=E_REF):
    """Nondimensional frequency ``omega a^2 / h sqrt(rho_ref / E_ref)``"""
    omega = np.asarray(omega, dtype=float)
    if np.any(omega < 0):
        raise InvalidParameterError("Circular frequency must be non-negative")
    return omega * a * a / h * np.sqrt(rho_ref / E_ref)


def recover_stresses(state, x, y, z, layer=None):
    """All six constitutive stress components at ``(x, y, z)``

    Returns
    -------
    OrderedDict
        Component name (``xx`` ... ``yz``) to array of the shape of ``z``

    """
    sigma = state.stresses(x, y, z, layer=layer)
    return OrderedDict((name, sigma[..., i]) for i, name in enumerate(STRESS_COMPONENTS))


def recover_inplane_stress(state, x, y, z, layer=None):
    """``(sigma_xx, sigma_yy, sigma_xy)`` at ``(x, y, z)``"""
    sigma = state.stresses(x, y, z, layer=layer)
    return sigma[..., 0], sigma[..., 1], sigma[..., 3]


def recover_transverse_shear(state, x, y, z=None, order=10):
    """Transverse shear stresses from through-thickness equilibrium

    Parameters
    ----------
    state : FieldState
        Static solution or mode
    x, y : float
        In-plane position
    z : array_like, optional
        Heights; default is :py:data:`SHEAR_SAMPLES` points spanning the
        thickness
    order : int, optional
        Gauss points per (partial) layer

    Returns
    -------
    (z, sigma_xz, sigma_yz) : tuple of numpy.ndarray

    """
    layup = state.layup
    if z is None:
        z = np.linspace(layup.z_interfaces[0], layup.z_interfaces[3], SHEAR_SAMPLES)
    z = np.atleast_1d(layup.check_inside(z))

    gx, gy = state.strain_gradients_at(x, y)
    _, (sx, sy) = state._load_shape(x, y)

    def divergence(zeta, layer):
        C, F, thermal = state._section(zeta, layer)
        dx = np.einsum("nij,j->ni", F, gx) - sx * thermal
        dy = np.einsum("nij,j->ni", F, gy) - sy * thermal
        sig_x = np.einsum("nij,nj->ni", C, dx)
        sig_y = np.einsum("nij,nj->ni", C, dy)
        return -np.column_stack([sig_x[:, 0] + sig_y[:, 3], sig_x[:, 3] + sig_y[:, 1]])

    tau = through_thickness_integral(layup, divergence, z, order=order)
    return z, tau[:, 0], tau[:, 1]


def transverse_shear_extremum(state, x, y, component="sxz"):
    """Signed transverse shear stress of largest magnitude and its height"""
    z, sxz, syz = recover_transverse_shear(state, x, y)
    values = sxz if component == "sxz" else syz
    i = int(np.argmax(np.abs(values)))
    return values[i], z[i]


class StressField(namedtuple("StressField", ["x", "y", "z", "xx", "yy", "xy", "zz", "xz", "yz"])):
    """Stresses along the thickness line through ``(x, y)``

    ``xx``, ``yy``, ``xy`` and ``zz`` come from the constitutive law,
    ``xz`` and ``yz`` from equilibrium integration (zero on the bottom
    face).
    """
    __slots__ = ()

    def extremum(self, component="xz"):
        """Signed value of largest magnitude of one component and its height"""
        values = getattr(self, component)
        i = int(np.argmax(np.abs(values)))
        return values[i], self.z[i]


def stress_field(state, x, y, z=None):
    """Full stress state of ``state`` through the thickness at ``(x, y)``

    Parameters
    ----------
    z : array_like, optional
        Heights; default is :py:data:`SHEAR_SAMPLES` points spanning the
        thickness

    Returns
    -------
    StressField

    """
    z, sxz, syz = recover_transverse_shear(state, x, y, z)
    sigma = recover_stresses(state, x, y, z)
    return StressField(x, y, z, sigma["xx"], sigma["yy"], sigma["xy"], sigma["zz"], sxz, syz)


def evaluate_quantity(state, quantity, x, y, z):
    """Raw value of one quantity; ``z = "max"`` for shear extrema

    Returns
    -------
    (value, z) : the value and the height actually used

    """
    if quantity not in QUANTITIES:
        raise InvalidParameterError("Unknown quantity '{}' (known: {})".format(quantity, ", ".join(QUANTITIES)))
    if quantity in SHEAR_STRESSES:
        if z == "max":
            return transverse_shear_extremum(state, x, y, quantity)
        _, sxz, syz = recover_transverse_shear(state, x, y, [z])
        return (sxz if quantity == "sxz" else syz)[0], z
    if z == "max":
        raise InvalidParameterError("Only transverse shear stresses support z = 'max'")
    if quantity in DISPLACEMENTS:
        return float(state.displacements(x, y, z)[DISPLACEMENTS.index(quantity)]), z
    sigma = state.stresses(x, y, z)
    return float(sigma[STRESS_COMPONENTS.index(quantity[1:])]), z


class ScalingParameters(namedtuple("ScalingParameters", ["side", "thickness", "amplitude",
                                                         "reference_modulus", "metal_modulus",
                                                         "metal_expansion"])):
    """Quantities entering the nondimensional scaling

    ``amplitude`` is ``q0`` for mechanical and ``T0`` for thermal loads.
    """
    __slots__ = ()

    @classmethod
    def from_system(cls, system, reference_modulus=E_REF):
        metal = system.layup.metal
        return cls(system.mesh.a, system.layup.thickness, system.load.amplitude,
                   reference_modulus, metal.young_modulus, metal.thermal_expansion)


CONVENTIONS = ("standard", "elasticity-benchmark")


def scale_factors(loading, params, convention="standard"):
    """Multipliers turning raw quantities into nondimensional ones"""
    if convention not in CONVENTIONS:
        raise InvalidParameterError("Unknown convention '{}' (known: {})".format(convention, CONVENTIONS))
    S = params.side / params.thickness
    h = params.thickness
    amp = params.amplitude
    bench = convention == "elasticity-benchmark"

    if loading == "mechanical":
        E = params.metal_modulus if bench else params.reference_modulus
        disp = 100.0 * E / (amp * h * S ** 3)
        deflection = 100.0 * E / (amp * h * S ** 4)
        inplane = (10.0 if bench else 1.0) / (amp * S * S)
        shear = (10.0 if bench else 1.0) / (amp * S)
    elif loading == "thermal":
        alpha = params.metal_expansion
        if alpha == 0:
            raise InvalidParameterError("Thermal scaling needs a non-zero metal expansion coefficient")
        disp = (100.0 if bench else 1.0) / (h * alpha * amp * S)
        deflection = (100.0 if bench else 1.0) / (h * alpha * amp * S * S)
        inplane = shear = (10.0 if bench else 1.0) / (params.metal_modulus * alpha * amp)
    else:
        raise InvalidParameterError("Loading must be 'mechanical' or 'thermal', got '{}'".format(loading))

    factors = {"u": disp, "v": disp, "w": deflection}
    factors.update((q, inplane) for q in IN_PLANE_STRESSES)
    factors.update((q, shear) for q in SHEAR_STRESSES)
    return factors


def nondimensionalize_static(raw, loading, params, convention="standard"):
    """Scale raw displacements and stresses

    Parameters
    ----------
    raw : dict
        Quantity name (``u``, ``w``, ``sxx``, ...) to raw SI value
    loading : str
        ``mechanical`` or ``thermal``
    params : ScalingParameters
    convention : str, optional
        ``standard`` or ``elasticity-benchmark``

    Returns
    -------
    OrderedDict
        Same keys, nondimensional values

    Raises
    ------
    InvalidParameterError
        If the load amplitude is zero but some raw value is not

    """
    if params.amplitude == 0:
        if any(value != 0 for value in raw.values()):
            raise InvalidParameterError("Cannot scale non-zero results by a zero load amplitude")
        return OrderedDict((key, 0.0) for key in raw)
    factors = scale_factors(loading, params, convention)
    return OrderedDict((key, float(value) * factors[key]) for key, value in raw.items())


class NondimensionalReport(object):
    """Nondimensional values of one static case with their evaluation points

    Attributes
    ----------
    values : OrderedDict
        Quantity to nondimensional value
    raw : OrderedDict
        Quantity to SI value
    points : OrderedDict
        Quantity to the physical ``(x, y, z)`` actually used
    loading, convention : str

    """

    def __init__(self, values, raw, points, loading, convention):
        self.values = values
        self.raw = raw
        self.points = points
        self.loading = loading
        self.convention = convention

    def __getitem__(self, key):
        return self.values[key]

    def __repr__(self):
        body = ", ".join("{}={:.5f}".format(k, v) for k, v in self.values.items())
        return "NondimensionalReport({}, {})".format(self.loading, body)


def static_report(solution, quantities=None, points=None, convention="standard", reference_modulus=E_REF):
    """Evaluate and scale the requested quantities of a static solution

    Parameters
    ----------
    solution : StaticSolution
    quantities : sequence of str, optional
        Default: all of :py:data:`EVALUATION_POINTS`
    points : dict, optional
        Overrides of the fractional evaluation points
    convention : str, optional
    reference_modulus : float, optional

    """
    fractions = OrderedDict(EVALUATION_POINTS)
    fractions.update(points or {})
    if quantities is None:
        quantities = list(EVALUATION_POINTS)
    mesh, h = solution.mesh, solution.layup.thickness

    raw = OrderedDict()
    used = OrderedDict()
    for quantity in quantities:
        try:
            fx, fy, fz = fractions[quantity]
        except KeyError:
            raise InvalidParameterError("No evaluation point for '{}'".format(quantity))
        z = fz if fz == "max" else fz * h
        value, z_used = evaluate_quantity(solution, quantity, fx * mesh.a, fy * mesh.b, z)
        raw[quantity] = float(value)
        used[quantity] = (fx * mesh.a, fy * mesh.b, float(z_used))

    loading = solution.load.kind if solution.load is not None else "mechanical"
    params = ScalingParameters.from_system(solution.system, reference_modulus)
    values = nondimensionalize_static(raw, loading, params, convention)
    return NondimensionalReport(values, raw, used, loading, convention)


class Profile(namedtuple("Profile", ["quantity", "x", "y", "z", "value", "layer"])):
    """Through-thickness samples of one quantity; interfaces appear once per layer"""
    __slots__ = ()

    def rows(self):
        return list(zip(self.z.tolist(), self.value.tolist(), self.layer.tolist()))


def through_thickness_profile(state, x, y, quantity, z=None, samples_per_layer=21):
    """Sample a displacement or stress through the thickness at ``(x, y)``

    Parameters
    ----------
    state : FieldState
        Static solution or mode
    x, y : float
        In-plane position
    quantity : str
        One of :py:data:`QUANTITIES`
    z : array_like, optional
        Explicit heights. By default each non-empty layer is sampled with
        ``samples_per_layer`` points including both of its faces, so the
        interface heights appear once for each adjacent layer.
    samples_per_layer : int, optional

    Returns
    -------
    Profile

    """
    if quantity not in QUANTITIES:
        raise InvalidParameterError("Unknown quantity '{}' (known: {})".format(quantity, ", ".join(QUANTITIES)))
    layup = state.layup
    if z is None:
        if samples_per_layer < 2:
            raise InvalidParameterError("Need at least 2 samples per layer")
        zs, ks = [], []
        for k, zb, zt in layup.layers():
            zs.append(np.linspace(zb, zt, samples_per_layer))
            ks.append(np.full(samples_per_layer, k))
        z = np.concatenate(zs)
        layer = np.concatenate(ks)
    else:
        z = np.atleast_1d(layup.check_inside(z))
        layer = layup.layer_of(z)

    if quantity in DISPLACEMENTS:
        value = state.displacements(x, y, z, layer=layer)[DISPLACEMENTS.index(quantity)]
    elif quantity in IN_PLANE_STRESSES:
        value = state.stresses(x, y, z, layer=layer)[:, STRESS_COMPONENTS.index(quantity[1:])]
    else:
        _, sxz, syz = recover_transverse_shear(state, x, y, z)
        value = sxz if quantity == "sxz" else syz
    return Profile(quantity, float(x), float(y), z, np.asarray(value, dtype=float), layer)
