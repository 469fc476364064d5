"""Element matrices, loads, boundary conditions and global assembly

Element matrices are built in the full 13-DOF space from the strain
selectors of :py:mod:`fgmplate.kinematics` and then restricted to the
DOFs of the active :py:class:`~fgmplate.kinematics.PlateModel`.

"""

from __future__ import division

import logging

import numpy as np
import scipy.sparse as sparse

from .errors import InvalidParameterError, SolverError
from .kinematics import (GA, NDOF_FULL, NSTRAIN_BM, STRAIN_DX, STRAIN_DY, STRAIN_VALUE,
                         W0, W1, integrate_rigidities)
from .mesh import gauss_rule

logger = logging.getLogger(__name__)

IN_PLANE_ORDER = 3
# Transverse shear is under-integrated to keep thin plates free of locking
SHEAR_ORDER = 2

# Constrained DOFs of a simply supported edge, by edge direction
SS_EDGE_Y = ("u0", "w0", "theta_x", "w1", "Gamma", "beta_x", "phi_x", "psi_x")
SS_EDGE_X = ("v0", "w0", "theta_y", "w1", "Gamma", "beta_y", "phi_y", "psi_y")


class Load(object):
    """Transverse pressure or through-thickness temperature load

    Parameters
    ----------
    kind : str
        ``mechanical`` (amplitude ``q0`` in Pa) or ``thermal``
        (amplitude ``T0`` in K of ``T = T0 (2z/h) s(x, y)``)
    amplitude : float
        Load amplitude
    distribution : str, optional
        ``sinusoidal`` (``s = sin(pi x/a) sin(pi y/b)``, the default) or
        ``uniform`` (mechanical only)
    surface : str, optional
        ``mid`` (default) or ``top`` for where a pressure acts

    """

    KINDS = ("mechanical", "thermal")
    DISTRIBUTIONS = ("sinusoidal", "uniform")
    SURFACES = ("mid", "top")

    def __init__(self, kind="mechanical", amplitude=1.0, distribution="sinusoidal", surface="mid"):
        kind = str(kind).lower()
        distribution = str(distribution).lower()
        surface = str(surface).lower()
        if kind not in self.KINDS:
            raise InvalidParameterError("Load kind must be one of {}, got '{}'".format(self.KINDS, kind))
        if distribution not in self.DISTRIBUTIONS:
            raise InvalidParameterError("Load distribution must be one of {}".format(self.DISTRIBUTIONS))
        if surface not in self.SURFACES:
            raise InvalidParameterError("Load surface must be one of {}".format(self.SURFACES))
        if kind == "thermal" and distribution != "sinusoidal":
            raise InvalidParameterError("Thermal loads are sinusoidal in-plane")
        if not np.isfinite(amplitude):
            raise InvalidParameterError("Load amplitude must be finite")
        self.kind = kind
        self.amplitude = float(amplitude)
        self.distribution = distribution
        self.surface = surface

    @property
    def is_thermal(self):
        return self.kind == "thermal"

    def scaled(self, factor):
        return Load(self.kind, self.amplitude * factor, self.distribution, self.surface)

    def shape(self, mesh, x, y):
        """In-plane load shape ``s(x, y)``"""
        if self.distribution == "uniform":
            return np.ones(np.broadcast(x, y).shape)
        return np.sin(np.pi * x / mesh.a) * np.sin(np.pi * y / mesh.b)

    def shape_gradient(self, mesh, x, y):
        """``(ds/dx, ds/dy)`` of the in-plane shape"""
        if self.distribution == "uniform":
            zero = np.zeros(np.broadcast(x, y).shape)
            return zero, zero
        px, py = np.pi / mesh.a, np.pi / mesh.b
        return (px * np.cos(px * x) * np.sin(py * y),
                py * np.sin(px * x) * np.cos(py * y))

    def as_dict(self):
        return {"kind": self.kind, "amplitude": self.amplitude,
                "distribution": self.distribution, "surface": self.surface}

    def __repr__(self):
        return "Load({kind}, amplitude={amplitude:g}, {distribution}, surface={surface})".format(**self.as_dict())


class DofMap(object):
    """Global numbering of the active DOFs and the constrained set

    Node ``i`` owns global DOFs ``i*ndof ... i*ndof + ndof - 1`` in the
    order of ``model.dof_labels``.
    """

    def __init__(self, mesh, model):
        self.mesh = mesh
        self.model = model
        self.ndof = model.dofs_per_node
        self.size = mesh.nnodes * self.ndof
        self.constrained = np.zeros(0, dtype=int)

    def index(self, node, label):
        try:
            local = self.model.dof_labels.index(label)
        except ValueError:
            raise InvalidParameterError("DOF '{}' is not part of {}".format(label, self.model.name))
        return int(node) * self.ndof + local

    def element_dofs(self, e):
        nodes = self.mesh.elements[e]
        return (nodes[:, None] * self.ndof + np.arange(self.ndof)[None, :]).ravel()

    def constrain(self, indices):
        indices = np.asarray(indices, dtype=int)
        if indices.size and (indices.min() < 0 or indices.max() >= self.size):
            raise SolverError("Constrained DOF index out of range")
        self.constrained = np.union1d(self.constrained, indices)

    @property
    def free(self):
        mask = np.ones(self.size, dtype=bool)
        mask[self.constrained] = False
        return np.flatnonzero(mask)

    @property
    def nfree(self):
        return self.size - self.constrained.size

    def describe(self, index):
        """Human readable name of a global DOF, e.g. ``w1@node 17 (0.5, 0)``"""
        node, local = divmod(int(index), self.ndof)
        x, y = self.mesh.nodes[node]
        return "{0}@node {1} ({2:g}, {3:g})".format(self.model.dof_labels[local], node, x, y)


def strain_displacement(N, dNdx, model):
    """B matrix mapping element DOFs to the 28 generalized strains

    Parameters
    ----------
    N : numpy.ndarray
        ``(..., 8)`` shape function values
    dNdx : numpy.ndarray
        ``(..., 8, 2)`` physical gradients
    model : PlateModel

    Returns
    -------
    numpy.ndarray
        ``(..., 28, 8 * model.dofs_per_node)``

    """
    B = (np.einsum("ij,...a->...iaj", STRAIN_VALUE, N)
         + np.einsum("ij,...a->...iaj", STRAIN_DX, dNdx[..., 0])
         + np.einsum("ij,...a->...iaj", STRAIN_DY, dNdx[..., 1]))
    B = B[..., model.active]
    return B.reshape(B.shape[:-2] + (-1,))


def displacement_matrix(N, model):
    """Matrix mapping element DOFs to the 13 generalized DOF fields"""
    eye = np.eye(NDOF_FULL)[:, model.active]
    G = np.einsum("jk,...a->...jak", eye, N)
    return G.reshape(G.shape[:-2] + (-1,))


def element_stiffness(mesh, e, model, rigidities, order=IN_PLANE_ORDER, shear_order=SHEAR_ORDER):
    """Element stiffness ``int B^T R B dA``

    The membrane and bending part uses an ``order`` x ``order`` Gauss
    rule and the transverse shear part a ``shear_order`` x ``shear_order``
    one; the two strain groups do not couple in an isotropic section.
    Equal orders give the fully integrated element.
    """
    Ke = _stiffness_part(mesh, e, model, rigidities.A, slice(None, NSTRAIN_BM), order)
    Ke += _stiffness_part(mesh, e, model, rigidities.D, slice(NSTRAIN_BM, None),
                          shear_order)
    return 0.5 * (Ke + Ke.T)


def _stiffness_part(mesh, e, model, R, rows, order):
    pts, wts = gauss_rule(order)
    N, dNdx, detJ, _ = mesh.geometry(e, pts[:, 0], pts[:, 1])
    B = strain_displacement(N, dNdx, model)[:, rows, :]
    return np.einsum("g,gia,ij,gjb->ab", wts * detJ, B, R, B, optimize=True)


def element_mass(mesh, e, model, rigidities, order=IN_PLANE_ORDER):
    """Consistent element mass including in-plane and rotary inertia"""
    pts, wts = gauss_rule(order)
    N, _, detJ, _ = mesh.geometry(e, pts[:, 0], pts[:, 1])
    G = displacement_matrix(N, model)
    Me = np.einsum("g,gia,ij,gjb->ab", wts * detJ, G, rigidities.inertia, G, optimize=True)
    return 0.5 * (Me + Me.T)


def _surface_weights(model, layup, surface):
    """Generalized-DOF weights of ``w`` on the loaded surface"""
    weights = np.zeros(NDOF_FULL)
    weights[W0] = 1.0
    if surface == "top":
        zt = 0.5 * layup.thickness
        weights[W1] = zt
        weights[GA] = zt * zt
    return np.where(model.mask, weights, 0.0)


def element_load_mechanical(mesh, e, model, layup, load, order=IN_PLANE_ORDER):
    pts, wts = gauss_rule(order)
    N, _, detJ, xy = mesh.geometry(e, pts[:, 0], pts[:, 1])
    q = load.amplitude * load.shape(mesh, xy[:, 0], xy[:, 1])
    G = displacement_matrix(N, model)
    return np.einsum("g,gia,i->a", wts * detJ * q, G, _surface_weights(model, layup, load.surface))


def element_load_thermal(mesh, e, model, rigidities, load, order=IN_PLANE_ORDER):
    pts, wts = gauss_rule(order)
    N, dNdx, detJ, xy = mesh.geometry(e, pts[:, 0], pts[:, 1])
    s = load.amplitude * load.shape(mesh, xy[:, 0], xy[:, 1])
    B = strain_displacement(N, dNdx, model)
    return np.einsum("g,gia,i->a", wts * detJ * s, B, rigidities.thermal)


def _scatter_vector(mesh, dofmap, element_vector):
    f = np.zeros(dofmap.size)
    for e in range(mesh.nelements):
        np.add.at(f, dofmap.element_dofs(e), element_vector(e))
    return f


def load_vector_mechanical(mesh, model, q0, layup=None, distribution="sinusoidal",
                           surface="mid", order=IN_PLANE_ORDER):
    """Consistent nodal loads of a transverse pressure

    The pressure does work on ``w`` of the loaded surface, so a mid-surface
    load only loads ``w0`` rows. A top-surface load also loads ``w1`` and
    ``Gamma`` (and needs the ``layup`` for the thickness).

    Returns
    -------
    numpy.ndarray
        Unconstrained global load vector

    """
    load = q0 if isinstance(q0, Load) else Load("mechanical", q0, distribution, surface)
    if load.surface == "top" and layup is None:
        raise InvalidParameterError("A top-surface load needs the layup thickness")
    dofmap = DofMap(mesh, model)
    return _scatter_vector(mesh, dofmap,
                           lambda e: element_load_mechanical(mesh, e, model, layup, load, order))


def load_vector_thermal(mesh, model, layup, scheme, T0, rigidities=None, order=IN_PLANE_ORDER):
    """Nodal loads equivalent to the temperature ``T0 (2z/h) sin(pi x/a) sin(pi y/b)``"""
    load = T0 if isinstance(T0, Load) else Load("thermal", T0)
    if rigidities is None:
        rigidities = integrate_rigidities(layup, scheme, model)
    dofmap = DofMap(mesh, model)
    return _scatter_vector(mesh, dofmap,
                           lambda e: element_load_thermal(mesh, e, model, rigidities, load, order))


def simply_supported_dofs(mesh, dofmap):
    """Global indices fixed by simply supported conditions on all four edges"""
    model = dofmap.model
    fixed = []
    for edge, labels in (("y0", SS_EDGE_Y), ("yb", SS_EDGE_Y), ("x0", SS_EDGE_X), ("xa", SS_EDGE_X)):
        active = [label for label in labels if label in model.dof_labels]
        for node in mesh.edges[edge]:
            fixed.extend(dofmap.index(node, label) for label in active)
    return np.unique(fixed)


class GlobalSystem(object):
    """Assembled stiffness, mass and load of one analysis case

    ``K``, ``M`` and ``f`` act on the free DOFs only once boundary
    conditions are applied; the unconstrained matrices are kept as
    ``K_full``, ``M_full`` and ``f_full``.
    """

    def __init__(self, K_full, M_full, f_full, dofmap, mesh, model, layup, scheme,
                 rigidities, load=None):
        self.K_full = K_full
        self.M_full = M_full
        self.f_full = f_full
        self.dofmap = dofmap
        self.mesh = mesh
        self.model = model
        self.layup = layup
        self.scheme = scheme
        self.rigidities = rigidities
        self.load = load
        self._reduce()

    def _reduce(self):
        free = self.dofmap.free
        self.free = free
        self.K = self.K_full[free][:, free].tocsr()
        self.M = self.M_full[free][:, free].tocsr()
        self.f = self.f_full[free]

    @property
    def nfree(self):
        return self.free.size

    def expand(self, x):
        """Full-size vector(s) from free-DOF values, zeros on constraints"""
        x = np.asarray(x)
        full = np.zeros((self.dofmap.size,) + x.shape[1:], dtype=x.dtype)
        full[self.free] = x
        return full

    def nodal(self, x):
        """``(nnodes, 13)`` generalized DOFs from a free-DOF vector"""
        full = self.expand(x).reshape(self.mesh.nnodes, self.dofmap.ndof)
        out = np.zeros((self.mesh.nnodes, NDOF_FULL))
        out[:, self.model.active] = full
        return out

    def with_load(self, load):
        """Same matrices, new load"""
        f_full = _case_load(self.mesh, self.model, self.layup, self.rigidities, load)
        return GlobalSystem(self.K_full, self.M_full, f_full, self.dofmap, self.mesh, self.model,
                            self.layup, self.scheme, self.rigidities, load)

    def __repr__(self):
        return "GlobalSystem({0}, {1!r}, free={2}/{3})".format(
            self.model.name, self.mesh, self.nfree, self.dofmap.size)


def apply_simply_supported(system):
    """Eliminate the simply supported DOFs of all four edges from ``system``

    Constraints are imposed by deleting rows and columns; the returned
    system shares the unconstrained matrices.
    """
    dofmap = DofMap(system.mesh, system.model)
    dofmap.constrain(system.dofmap.constrained)
    dofmap.constrain(simply_supported_dofs(system.mesh, dofmap))
    logger.debug("Simply supported: %d of %d DOFs constrained", dofmap.constrained.size, dofmap.size)
    return GlobalSystem(system.K_full, system.M_full, system.f_full, dofmap, system.mesh,
                        system.model, system.layup, system.scheme, system.rigidities, system.load)


def _case_load(mesh, model, layup, rigidities, load):
    if load is None or load.amplitude == 0.0:
        return np.zeros(mesh.nnodes * model.dofs_per_node)
    if load.is_thermal:
        return load_vector_thermal(mesh, model, layup, None, load, rigidities=rigidities)
    return load_vector_mechanical(mesh, model, load, layup=layup)


def assemble(mesh, model, layup, scheme, load=None, rigidities=None, boundary="simply-supported",
             thickness_order=10, order=IN_PLANE_ORDER, shear_order=SHEAR_ORDER):
    """Assemble the global system of a plate analysis

    Parameters
    ----------
    mesh : Mesh
    model : PlateModel
    layup : SandwichLayup
    scheme : HomogenizationScheme or str
    load : Load, optional
        Static load; None assembles matrices only (free vibration)
    rigidities : RigidityMatrices, optional
        Reuse precomputed section properties
    boundary : str or None, optional
        ``simply-supported`` (default) or None for the unconstrained system
    thickness_order : int, optional
        Gauss points per layer for the rigidities
    order : int, optional
        In-plane Gauss order
    shear_order : int, optional
        In-plane Gauss order of the transverse shear stiffness

    Returns
    -------
    GlobalSystem

    """
    if rigidities is None:
        rigidities = integrate_rigidities(layup, scheme, model, thickness_order)
    dofmap = DofMap(mesh, model)

    # Elements of a uniform mesh share their geometry, so matrices are
    # cached by element size
    cache = {}
    rows, cols, kvals, mvals = [], [], [], []
    for e in range(mesh.nelements):
        X = mesh.element_coordinates(e)
        key = tuple(np.round((X - X[0]).ravel() / max(mesh.dx, mesh.dy), 12))
        if key not in cache:
            cache[key] = (element_stiffness(mesh, e, model, rigidities, order, shear_order),
                          element_mass(mesh, e, model, rigidities, order))
        Ke, Me = cache[key]
        dofs = dofmap.element_dofs(e)
        r, c = np.meshgrid(dofs, dofs, indexing="ij")
        rows.append(r.ravel())
        cols.append(c.ravel())
        kvals.append(Ke.ravel())
        mvals.append(Me.ravel())

    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    shape = (dofmap.size, dofmap.size)
    K = sparse.coo_matrix((np.concatenate(kvals), (rows, cols)), shape=shape).tocsr()
    M = sparse.coo_matrix((np.concatenate(mvals), (rows, cols)), shape=shape).tocsr()
    f = _case_load(mesh, model, layup, rigidities, load)

    system = GlobalSystem(K, M, f, dofmap, mesh, model, layup, scheme, rigidities, load)
    logger.debug("Assembled %d element(s), %d distinct element matrices", mesh.nelements, len(cache))
    if boundary is None:
        return system
    if str(boundary).lower() not in ("simply-supported", "ssss"):
        raise InvalidParameterError("Unsupported boundary condition '{}'".format(boundary))
    return apply_simply_supported(system)
