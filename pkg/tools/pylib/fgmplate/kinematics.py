"""Plate theories, zig-zag function and through-thickness rigidities

All four theories share one displacement expansion in layer ``k``::

    u = u0 + z theta_x + z^2 beta_x + z^3 phi_x + S^k psi_x
    v = v0 + z theta_y + z^2 beta_y + z^3 phi_y + S^k psi_y
    w = w0 + z w1 + z^2 Gamma

and differ only in which of the 13 generalized DOFs are kept. Internally
everything is written for the full 13-DOF set; a model's mask drops the
columns it does not own.

The 28 generalized strains are stored as::

    [eps0(4), eps1(4), eps2(4), eps3(4), eps4(4), gam0(2), gam1(2), gam2(2), gam3(2)]

with membrane/bending components ``(xx, yy, zz, xy)`` and transverse
shear components ``(xz, yz)``. Physical strains at ``z`` follow from the
weights ``[1, z, z^2, z^3, S]`` and ``[1, z, z^2, dS/dz]``.

"""

from __future__ import division

from collections import namedtuple
from enum import Enum

import numpy as np

from .errors import InvalidParameterError
from .material import HomogenizationScheme, effective_properties

DOF_LABELS = ("u0", "v0", "w0", "theta_x", "theta_y", "w1", "beta_x", "beta_y",
              "Gamma", "phi_x", "phi_y", "psi_x", "psi_y")

(U0, V0, W0, TX, TY, W1, BX, BY, GA, PX, PY, SX, SY) = range(13)

NDOF_FULL = len(DOF_LABELS)
NSTRAIN_BM = 20
NSTRAIN = 28

# Smallest number of Gauss points per layer accepted for thickness integrals
MIN_THICKNESS_ORDER = 2


class ModelKind(Enum):
    HSDT13 = 13
    HSDT11 = 11
    HSDT9 = 9
    FSDT5 = 5

    @classmethod
    def from_name(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().upper()
        if key == "FSDT":
            key = "FSDT5"
        try:
            return cls[key]
        except KeyError:
            raise InvalidParameterError("Unknown plate model '{}' (known: {})".format(
                name, ", ".join(k.name for k in cls)))


_MODEL_DOFS = {
    ModelKind.HSDT13: DOF_LABELS,
    ModelKind.HSDT11: DOF_LABELS[:11],
    ModelKind.HSDT9: ("u0", "v0", "w0", "theta_x", "theta_y", "beta_x", "beta_y", "phi_x", "phi_y"),
    ModelKind.FSDT5: ("u0", "v0", "w0", "theta_x", "theta_y"),
}

ENERGY_EQUIVALENCE = "energy"
HOMOGENEOUS_SHEAR_FACTOR = 5.0 / 6.0

_DEFAULT = object()


class PlateModel(object):
    """One of the four kinematic theories

    Parameters
    ----------
    kind : ModelKind or str
        ``HSDT13``, ``HSDT11``, ``HSDT9`` or ``FSDT5`` (``FSDT`` accepted)
    shear_correction : None, "energy" or float, optional
        Transverse shear correction. Only meaningful for FSDT5, where it
        defaults to 5/6. ``"energy"`` uses the energy-equivalence factor
        of the graded section instead.

    """

    def __init__(self, kind, shear_correction=_DEFAULT):
        self.kind = ModelKind.from_name(kind)
        if shear_correction is _DEFAULT:
            shear_correction = HOMOGENEOUS_SHEAR_FACTOR if self.kind is ModelKind.FSDT5 else None
        if shear_correction is not None:
            if self.kind is not ModelKind.FSDT5:
                raise InvalidParameterError(
                    "A shear correction applies to FSDT5 only, not {}".format(self.kind.name))
            if shear_correction != ENERGY_EQUIVALENCE:
                try:
                    shear_correction = float(shear_correction)
                except (TypeError, ValueError):
                    raise InvalidParameterError(
                        "Unknown shear correction policy '{}'".format(shear_correction))
                if not shear_correction > 0:
                    raise InvalidParameterError("Shear correction factor must be positive")
        self.shear_correction = shear_correction

        self.dof_labels = _MODEL_DOFS[self.kind]
        self.active = np.array([DOF_LABELS.index(label) for label in self.dof_labels])
        self.mask = np.zeros(NDOF_FULL, dtype=bool)
        self.mask[self.active] = True

    @property
    def name(self):
        return self.kind.name

    @property
    def dofs_per_node(self):
        return len(self.dof_labels)

    @property
    def has_thickness_stretch(self):
        """True when w varies through the thickness (w1 and Gamma present)"""
        return bool(self.mask[W1])

    def __repr__(self):
        return "PlateModel({0}, shear_correction={1!r})".format(self.kind.name, self.shear_correction)

    def __eq__(self, other):
        return (isinstance(other, PlateModel) and self.kind is other.kind
                and self.shear_correction == other.shear_correction)

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.kind, self.shear_correction))


class ZigZag(namedtuple("ZigZag", ["layer_index", "layer_center", "layer_thickness"])):
    """Piecewise-linear zig-zag function of one layer

    ``S^k(z) = 2 (-1)^k (z - centre) / h_k`` which is -1 or +1 on the
    layer faces, alternating from interface to interface. An empty
    layer has zero slope.
    """
    __slots__ = ()

    @classmethod
    def of_layer(cls, layup, k):
        zb, zt = layup.layer_bounds(k)
        return cls(k, 0.5 * (zb + zt), zt - zb)

    @property
    def slope(self):
        if self.layer_thickness <= 0:
            return 0.0
        return 2.0 * (-1) ** self.layer_index / self.layer_thickness

    def value(self, z):
        return self.slope * (np.asarray(z, dtype=float) - self.layer_center)


def _layer_geometry(layup, k):
    """Centre and zig-zag slope of layer ``k`` (array of 1, 2 or 3)"""
    k = np.asarray(k)
    pieces = [ZigZag.of_layer(layup, j) for j in (1, 2, 3)]
    centre = np.array([p.layer_center for p in pieces])
    slope = np.array([p.slope for p in pieces])
    return centre[k - 1], slope[k - 1]


def zigzag(layup, z, layer=None):
    """Zig-zag function value and slope at ``z``

    Returns
    -------
    (S, dS/dz) : tuple of numpy.ndarray

    """
    z = layup.check_inside(z)
    k = layup.layer_of(z) if layer is None else np.broadcast_to(layer, z.shape)
    centre, slope = _layer_geometry(layup, k)
    return slope * (z - centre), slope


def displacement_interpolation(z, S, mask=None):
    """Matrix mapping the 13 generalized DOFs to ``(u, v, w)`` at ``z``

    Returns an array of shape ``z.shape + (3, 13)``.
    """
    z = np.asarray(z, dtype=float)
    S = np.broadcast_to(S, z.shape)
    H = np.zeros(z.shape + (3, NDOF_FULL))
    one = np.ones_like(z)
    for row, cols in ((0, (U0, TX, BX, PX, SX)), (1, (V0, TY, BY, PY, SY))):
        for col, weight in zip(cols, (one, z, z * z, z ** 3, S)):
            H[..., row, col] = weight
    for col, weight in zip((W0, W1, GA), (one, z, z * z)):
        H[..., 2, col] = weight
    if mask is not None:
        H[..., ~mask] = 0.0
    return H


def _as_full_dofs(model, dofs):
    if isinstance(dofs, dict):
        full = np.zeros(NDOF_FULL)
        for label, value in dofs.items():
            if label not in DOF_LABELS:
                raise InvalidParameterError("Unknown DOF label '{}'".format(label))
            full[DOF_LABELS.index(label)] = value
        dofs = full
    dofs = np.asarray(dofs, dtype=float)
    if dofs.shape[-1] == model.dofs_per_node and model.dofs_per_node != NDOF_FULL:
        full = np.zeros(dofs.shape[:-1] + (NDOF_FULL,))
        full[..., model.active] = dofs
        dofs = full
    if dofs.shape[-1] != NDOF_FULL:
        raise InvalidParameterError("Expected {} or {} DOF values per point".format(
            model.dofs_per_node, NDOF_FULL))
    return np.where(model.mask, dofs, 0.0)


def displacement_field(model, nodal_dofs, z, layup, layer=None):
    """Displacements ``(u, v, w)`` at heights ``z`` for given generalized DOFs

    Parameters
    ----------
    model : PlateModel
        Active theory; DOFs it does not own are ignored
    nodal_dofs : array_like or dict
        13 values in :py:data:`DOF_LABELS` order, the model's own DOF
        values in its label order, or a mapping ``label -> value``
    z : float or array_like
        Heights inside the plate
    layup : SandwichLayup
        Stack providing the zig-zag layers
    layer : int, optional
        Force the layer (for the two sides of an interface)

    """
    dofs = _as_full_dofs(model, nodal_dofs)
    S, _ = zigzag(layup, z, layer=layer)
    H = displacement_interpolation(layup.check_inside(z), S, mask=model.mask)
    uvw = np.einsum("...ij,j->...i", H, dofs)
    return uvw[..., 0], uvw[..., 1], uvw[..., 2]


def _strain_selectors():
    """Constant matrices so that ``g = E_val f + E_dx f_x + E_dy f_y``"""
    e_val = np.zeros((NSTRAIN, NDOF_FULL))
    e_dx = np.zeros((NSTRAIN, NDOF_FULL))
    e_dy = np.zeros((NSTRAIN, NDOF_FULL))

    # Membrane/bending vectors eps0..eps4 built from the in-plane pairs
    inplane = ((U0, V0), (TX, TY), (BX, BY), (PX, PY), (SX, SY))
    for p, (ix, iy) in enumerate(inplane):
        e_dx[4 * p + 0, ix] = 1.0
        e_dy[4 * p + 1, iy] = 1.0
        e_dy[4 * p + 3, ix] = 1.0
        e_dx[4 * p + 3, iy] = 1.0
    # Thickness stretch: eps_zz = w1 + 2 z Gamma
    e_val[0 * 4 + 2, W1] = 1.0
    e_val[1 * 4 + 2, GA] = 2.0

    # Transverse shear gam0..gam3
    shear = (((TX, 1.0), W0), ((BX, 2.0), W1), ((PX, 3.0), GA), ((SX, 1.0), None))
    for q, ((ix, factor), wterm) in enumerate(shear):
        row = NSTRAIN_BM + 2 * q
        e_val[row, ix] = factor
        e_val[row + 1, ix + 1] = factor
        if wterm is not None:
            e_dx[row, wterm] = 1.0
            e_dy[row + 1, wterm] = 1.0
    return e_val, e_dx, e_dy


STRAIN_VALUE, STRAIN_DX, STRAIN_DY = _strain_selectors()


class GeneralizedStrainState(namedtuple("GeneralizedStrainState", ["eps", "gamma"])):
    """Generalized strains: ``eps`` is (5, 4), ``gamma`` is (4, 2)"""
    __slots__ = ()

    @classmethod
    def from_vector(cls, g):
        g = np.asarray(g, dtype=float)
        return cls(g[..., :NSTRAIN_BM].reshape(g.shape[:-1] + (5, 4)),
                   g[..., NSTRAIN_BM:].reshape(g.shape[:-1] + (4, 2)))

    def as_vector(self):
        lead = self.eps.shape[:-2]
        return np.concatenate([self.eps.reshape(lead + (NSTRAIN_BM,)),
                               self.gamma.reshape(lead + (8,))], axis=-1)

    def physical(self, z, S, dSdz):
        """Physical strains ``(eps_bm(4), eps_s(2))`` at height ``z``"""
        F = thickness_operator(z, S, dSdz)
        e = np.einsum("...ij,j->...i", F, self.as_vector())
        return e[..., :4], e[..., 4:]


def strain_vectors(model, values, dx, dy):
    """Generalized strain vectors from DOF fields and their derivatives

    Parameters
    ----------
    model : PlateModel
        Active theory; other DOFs are treated as zero
    values, dx, dy : array_like
        The 13 DOF fields and their x and y derivatives at a point (or
        arrays with the DOF index last)

    Returns
    -------
    GeneralizedStrainState

    """
    f = _as_full_dofs(model, values)
    fx = _as_full_dofs(model, dx)
    fy = _as_full_dofs(model, dy)
    g = (np.einsum("ij,...j->...i", STRAIN_VALUE, f)
         + np.einsum("ij,...j->...i", STRAIN_DX, fx)
         + np.einsum("ij,...j->...i", STRAIN_DY, fy))
    return GeneralizedStrainState.from_vector(g)


def thickness_operator(z, S, dSdz):
    """Map from the 28 generalized strains to the 6 physical strains at ``z``

    Rows are ``(xx, yy, zz, xy, xz, yz)``. Returns ``z.shape + (6, 28)``.
    """
    z = np.asarray(z, dtype=float)
    S = np.broadcast_to(S, z.shape)
    dSdz = np.broadcast_to(dSdz, z.shape)
    F = np.zeros(z.shape + (6, NSTRAIN))
    one = np.ones_like(z)
    for p, weight in enumerate((one, z, z * z, z ** 3, S)):
        for c in range(4):
            F[..., c, 4 * p + c] = weight
    for q, weight in enumerate((one, z, z * z, dSdz)):
        for c in range(2):
            F[..., 4 + c, NSTRAIN_BM + 2 * q + c] = weight
    return F


def constitutive_matrix(E, nu, thickness_stretch=False):
    """Layer stiffness relating ``(xx, yy, zz, xy, xz, yz)`` strains and stresses

    Parameters
    ----------
    E : float or array_like
        Young's modulus (E >= 0; zero gives a void)
    nu : float or array_like
        Poisson's ratio, ``0 <= nu < 0.5``
    thickness_stretch : bool, optional
        If True the membrane/bending block is the 3-D isotropic stiffness
        restricted to ``(xx, yy, zz, xy)``. Otherwise it is the reduced
        plane-stress stiffness with a zero ``zz`` row and column.

    Returns
    -------
    numpy.ndarray
        Shape ``E.shape + (6, 6)``

    """
    E = np.asarray(E, dtype=float)
    nu = np.broadcast_to(np.asarray(nu, dtype=float), E.shape)
    if np.any(E < 0):
        raise InvalidParameterError("Young's modulus must be non-negative")
    if np.any(nu < 0) or np.any(nu >= 0.5):
        raise InvalidParameterError("Poisson's ratio must be in [0, 0.5)")

    G = E / (2.0 * (1.0 + nu))
    Q = np.zeros(E.shape + (6, 6))
    if thickness_stretch:
        lam = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu))
        for i in range(3):
            for j in range(3):
                Q[..., i, j] = lam
            Q[..., i, i] = lam + 2.0 * G
    else:
        q11 = E / (1.0 - nu * nu)
        Q[..., 0, 0] = Q[..., 1, 1] = q11
        Q[..., 0, 1] = Q[..., 1, 0] = nu * q11
    Q[..., 3, 3] = G
    Q[..., 4, 4] = G
    Q[..., 5, 5] = G
    return Q


def thermal_strain_direction(thickness_stretch):
    """Unit thermal strain ``(xx, yy, zz, xy, xz, yz)`` per unit ``alpha * T``"""
    return np.array([1.0, 1.0, 1.0 if thickness_stretch else 0.0, 0.0, 0.0, 0.0])


def gauss_points(order, bottom, top):
    """Gauss-Legendre points and weights on ``[bottom, top]``"""
    if order < 1:
        raise InvalidParameterError("Quadrature order must be at least 1")
    xi, wt = np.polynomial.legendre.leggauss(int(order))
    half = 0.5 * (top - bottom)
    return 0.5 * (top + bottom) + half * xi, half * wt


def _layer_points(layup, order):
    """Concatenated Gauss points, weights and layer tags over all layers"""
    zs, ws, ks = [], [], []
    for k, zb, zt in layup.layers():
        z, w = gauss_points(order, zb, zt)
        zs.append(z)
        ws.append(w)
        ks.append(np.full(z.shape, k))
    return np.concatenate(zs), np.concatenate(ws), np.concatenate(ks)


def through_thickness_integral(layup, func, z, order=10):
    """Running integral ``int_{z1}^{z} func(zeta) dzeta`` for each ``z``

    Parameters
    ----------
    layup : SandwichLayup
        The stack; integration restarts its Gauss rule in every layer so
        jumps in the integrand at interfaces are handled exactly
    func : callable
        ``func(zeta, layer)`` with 1-D ``zeta`` and matching integer
        ``layer``; returns an array whose first axis matches ``zeta``
    z : array_like
        Upper limits
    order : int, optional
        Gauss points per (partial) layer

    Returns
    -------
    numpy.ndarray
        Shape ``z.shape + func_result.shape[1:]``

    """
    z = np.atleast_1d(layup.check_inside(z)).astype(float)
    flat = z.ravel()
    xi, wt = np.polynomial.legendre.leggauss(int(order))

    # Integral over each complete layer
    full = {}
    for k, zb, zt in layup.layers():
        zg, wg = gauss_points(order, zb, zt)
        vals = np.asarray(func(zg, np.full(zg.shape, k)))
        full[k] = np.tensordot(wg, vals, axes=(0, 0))
    tail_shape = next(iter(full.values())).shape

    k_of = layup.layer_of(flat)
    bottoms = np.asarray(layup.z_interfaces)[k_of - 1]
    half = 0.5 * (flat - bottoms)
    pts = (bottoms + half)[:, None] + half[:, None] * xi[None, :]
    vals = np.asarray(func(pts.ravel(), np.repeat(k_of, len(xi))))
    vals = vals.reshape((flat.size, len(xi)) + tail_shape)
    partial = np.einsum("i,ni...->n...", wt, vals) * half.reshape((-1,) + (1,) * len(tail_shape))

    result = np.zeros((flat.size,) + tail_shape)
    for n in range(flat.size):
        below = [full[k] for k, _, _ in layup.layers() if k < k_of[n]]
        result[n] = partial[n] + (np.sum(below, axis=0) if below else 0.0)
    return result.reshape(z.shape + tail_shape)


def shear_correction_factor(layup, scheme, order=10):
    """Energy-equivalence transverse shear correction for a graded section

    The transverse shear stress of cylindrical bending, obtained by
    integrating the equilibrium equation through the thickness about the
    physical neutral surface, is compared with the constant shear strain
    of first-order theory; equating the two shear strain energies gives::

        k = (int g dz)^2 / (int G dz * int g^2 / G dz)
        g(z) = int_{z1}^{z} Q11(zeta) (zeta - z_n) dzeta

    which reduces to 5/6 for a homogeneous section.

    Returns
    -------
    numpy.ndarray
        ``k * I`` as a 2x2 matrix (the section is isotropic in-plane)

    """
    if order < MIN_THICKNESS_ORDER:
        raise InvalidParameterError("Thickness quadrature order must be >= {}".format(MIN_THICKNESS_ORDER))
    scheme = HomogenizationScheme.from_name(scheme)

    def moduli(zeta, layer):
        props = effective_properties(layup, scheme, zeta, layer=layer)
        E, nu = props["E"], props["nu"]
        return E / (1.0 - nu * nu), E / (2.0 * (1.0 + nu))

    zq, wq, kq = _layer_points(layup, order)
    q11, shear = moduli(zq, kq)
    z_neutral = np.dot(wq, q11 * zq) / np.dot(wq, q11)

    def stress_shape(zeta, layer):
        return moduli(zeta, layer)[0] * (zeta - z_neutral)

    g = np.empty_like(zq)
    # Evaluate layer by layer so each point is integrated in its own layer
    for k, _, _ in layup.layers():
        sel = kq == k
        g[sel] = _running_integral_in_layer(layup, stress_shape, zq[sel], k, order)

    numerator = np.dot(wq, g) ** 2
    denominator = np.dot(wq, shear) * np.dot(wq, g * g / shear)
    return (numerator / denominator) * np.eye(2)


def _running_integral_in_layer(layup, func, z, k, order):
    """Like :py:func:`through_thickness_integral` but with the layer fixed"""
    xi, wt = np.polynomial.legendre.leggauss(int(order))
    total = 0.0
    for kk, zb, zt in layup.layers():
        if kk < k:
            zg, wg = gauss_points(order, zb, zt)
            total = total + np.dot(wg, func(zg, np.full(zg.shape, kk)))
    bottom = layup.z_interfaces[k - 1]
    half = 0.5 * (z - bottom)
    pts = (bottom + half)[:, None] + half[:, None] * xi[None, :]
    vals = func(pts.ravel(), np.full(pts.size, k)).reshape(pts.shape)
    return total + half * np.dot(vals, wt)


class RigidityMatrices(object):
    """Through-thickness integrated section properties

    Attributes
    ----------
    stiffness : numpy.ndarray
        28x28 matrix ``R`` so the strain energy per unit area is
        ``g^T R g / 2`` for generalized strains ``g``. Block-diagonal:
        the 20x20 membrane/bending block :py:attr:`A` and the 8x8
        transverse shear block :py:attr:`D`.
    inertia : numpy.ndarray
        13x13 matrix ``I`` so the kinetic energy per unit area is
        ``d'^T I d' / 2`` for generalized DOF rates ``d'``
    thermal : numpy.ndarray
        28 generalized thermal resultants per unit temperature amplitude
        for the profile ``T = T0 (2z/h)``
    shear_factor : float
        Shear correction applied to the shear block (1 unless FSDT5)

    """

    def __init__(self, stiffness, inertia, thermal, model, shear_factor=1.0, order=10):
        self.stiffness = stiffness
        self.inertia = inertia
        self.thermal = thermal
        self.model = model
        self.shear_factor = float(shear_factor)
        self.order = int(order)

    @property
    def A(self):
        return self.stiffness[:NSTRAIN_BM, :NSTRAIN_BM]

    @property
    def D(self):
        return self.stiffness[NSTRAIN_BM:, NSTRAIN_BM:]

    def block(self, p, q):
        """4x4 membrane/bending block pairing weights p and q of ``[1, z, z^2, z^3, S]``"""
        return self.A[4 * p:4 * p + 4, 4 * q:4 * q + 4]

    def shear_block(self, p, q):
        """2x2 shear block pairing weights p and q of ``[1, z, z^2, dS/dz]``"""
        return self.D[2 * p:2 * p + 2, 2 * q:2 * q + 2]

    def __repr__(self):
        return "RigidityMatrices({0}, order={1}, shear_factor={2:.6g})".format(
            self.model.name, self.order, self.shear_factor)


def integrate_rigidities(layup, scheme, model, order=10):
    """Integrate stiffness, inertia and thermal resultants through the thickness

    Each layer gets its own ``order``-point Gauss-Legendre rule, so the
    result is exact for polynomial property profiles of degree up to
    ``2*order - 7`` (the highest weight product is z^6).

    Parameters
    ----------
    layup : SandwichLayup
    scheme : HomogenizationScheme or str
    model : PlateModel
    order : int, optional
        Gauss points per layer (default 10)

    Returns
    -------
    RigidityMatrices

    """
    if order < MIN_THICKNESS_ORDER:
        raise InvalidParameterError("Thickness quadrature order must be >= {}".format(MIN_THICKNESS_ORDER))
    scheme = HomogenizationScheme.from_name(scheme)

    shear_factor = 1.0
    if model.shear_correction == ENERGY_EQUIVALENCE:
        shear_factor = shear_correction_factor(layup, scheme, order)[0, 0]
    elif model.shear_correction is not None:
        shear_factor = float(model.shear_correction)

    z, w, k = _layer_points(layup, order)
    props = effective_properties(layup, scheme, z, layer=k)
    Q = constitutive_matrix(props["E"], props["nu"], model.has_thickness_stretch)
    Q[..., 4:, 4:] *= shear_factor

    S, dSdz = zigzag(layup, z, layer=k)
    F = thickness_operator(z, S, dSdz)
    stiffness = np.einsum("g,gai,gab,gbj->ij", w, F, Q, F, optimize=True)
    stiffness = 0.5 * (stiffness + stiffness.T)

    H = displacement_interpolation(z, S)
    inertia = np.einsum("g,g,gai,gaj->ij", w, props["rho"], H, H, optimize=True)
    inertia = 0.5 * (inertia + inertia.T)

    direction = thermal_strain_direction(model.has_thickness_stretch)
    eth = (props["alpha"] * 2.0 * z / layup.thickness)[:, None] * direction[None, :]
    thermal = np.einsum("g,gai,gab,gb->i", w, F, Q, eth)

    return RigidityMatrices(stiffness, inertia, thermal, model, shear_factor, order)
