"""Structured meshes of eight-noded serendipity quadrilaterals

Local node order of an element (reference coordinates)::

    3 --- 6 --- 2        (-1, 1)  (0, 1)  (1, 1)
    |           |
    7           5        (-1, 0)          (1, 0)
    |           |
    0 --- 4 --- 1        (-1,-1)  (0,-1)  (1,-1)

"""

from __future__ import division

import logging

import numpy as np

from .errors import DomainError, InvalidParameterError

logger = logging.getLogger(__name__)

NODE_XI = np.array([[-1.0, -1.0], [1.0, -1.0], [1.0, 1.0], [-1.0, 1.0],
                    [0.0, -1.0], [1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]])

EDGES = ("x0", "xa", "y0", "yb")

# Tolerance, relative to the element size, for point location
_LOCATE_TOL = 1e-10


def shape_functions(xi, eta):
    """Serendipity shape functions and their reference-space gradients

    Parameters
    ----------
    xi, eta : float or array_like
        Reference coordinates in ``[-1, 1]``

    Returns
    -------
    N : numpy.ndarray
        Shape ``xi.shape + (8,)``
    dN : numpy.ndarray
        Shape ``xi.shape + (8, 2)``, derivatives with respect to
        ``(xi, eta)``

    Raises
    ------
    DomainError
        If a point lies outside the reference square

    """
    xi, eta = np.broadcast_arrays(np.asarray(xi, dtype=float), np.asarray(eta, dtype=float))
    if np.any(np.abs(xi) > 1.0 + 1e-12) or np.any(np.abs(eta) > 1.0 + 1e-12):
        raise DomainError("Reference coordinates must lie in [-1, 1]")
    x = xi[..., None]
    e = eta[..., None]
    xn = NODE_XI[:, 0]
    en = NODE_XI[:, 1]

    N = np.empty(xi.shape + (8,))
    dN = np.empty(xi.shape + (8, 2))

    c = slice(0, 4)
    N[..., c] = 0.25 * (1 + x * xn[c]) * (1 + e * en[c]) * (x * xn[c] + e * en[c] - 1)
    dN[..., c, 0] = 0.25 * xn[c] * (1 + e * en[c]) * (2 * x * xn[c] + e * en[c])
    dN[..., c, 1] = 0.25 * en[c] * (1 + x * xn[c]) * (x * xn[c] + 2 * e * en[c])

    # Mid-side nodes on eta = +-1 (4, 6) and on xi = +-1 (5, 7)
    for i in (4, 6):
        N[..., i] = 0.5 * (1 - xi * xi) * (1 + eta * en[i])
        dN[..., i, 0] = -xi * (1 + eta * en[i])
        dN[..., i, 1] = 0.5 * (1 - xi * xi) * en[i]
    for i in (5, 7):
        N[..., i] = 0.5 * (1 + xi * xn[i]) * (1 - eta * eta)
        dN[..., i, 0] = 0.5 * xn[i] * (1 - eta * eta)
        dN[..., i, 1] = -eta * (1 + xi * xn[i])
    return N, dN


def gauss_rule(order):
    """Tensor-product Gauss-Legendre rule on the reference square

    Returns
    -------
    points : numpy.ndarray
        ``(order**2, 2)`` array of ``(xi, eta)``
    weights : numpy.ndarray
        ``(order**2,)``

    """
    if order < 1:
        raise InvalidParameterError("Gauss order must be at least 1")
    x, w = np.polynomial.legendre.leggauss(int(order))
    xi, eta = np.meshgrid(x, x, indexing="ij")
    return np.column_stack([xi.ravel(), eta.ravel()]), np.outer(w, w).ravel()


class Mesh(object):
    """Rectangular plate meshed with serendipity quadrilaterals

    Use :py:func:`build_mesh` to construct one.

    Attributes
    ----------
    a, b : float
        Plate dimensions along x and y
    nx, ny : int
        Element counts
    nodes : numpy.ndarray
        ``(nnodes, 2)`` node coordinates
    elements : numpy.ndarray
        ``(nelements, 8)`` connectivity; element ``ey*nx + ex`` covers
        ``[ex*dx, (ex+1)*dx] x [ey*dy, (ey+1)*dy]``
    edges : dict
        Node indices on each edge, keyed ``x0``, ``xa``, ``y0``, ``yb``

    """

    def __init__(self, a, b, nx, ny, nodes, elements, edges):
        self.a = float(a)
        self.b = float(b)
        self.nx = int(nx)
        self.ny = int(ny)
        self.nodes = np.asarray(nodes, dtype=float)
        self.elements = np.asarray(elements, dtype=int)
        self.edges = {key: np.asarray(edges[key], dtype=int) for key in EDGES}

    def __repr__(self):
        return "Mesh(a={0:g}, b={1:g}, {2}x{3}, {4} nodes)".format(
            self.a, self.b, self.nx, self.ny, self.nnodes)

    @property
    def nnodes(self):
        return self.nodes.shape[0]

    @property
    def nelements(self):
        return self.elements.shape[0]

    @property
    def dx(self):
        return self.a / self.nx

    @property
    def dy(self):
        return self.b / self.ny

    def element_coordinates(self, e):
        """``(8, 2)`` nodal coordinates of element ``e``"""
        return self.nodes[self.elements[e]]

    def geometry(self, e, xi, eta):
        """Shape functions, physical gradients and Jacobian determinant

        Parameters
        ----------
        e : int
            Element index
        xi, eta : float or array_like
            Reference coordinates

        Returns
        -------
        N : numpy.ndarray
            ``(..., 8)``
        dNdx : numpy.ndarray
            ``(..., 8, 2)`` derivatives with respect to ``(x, y)``
        detJ : numpy.ndarray
            ``(...)``
        xy : numpy.ndarray
            ``(..., 2)`` physical coordinates

        """
        X = self.element_coordinates(e)
        N, dN = shape_functions(xi, eta)
        J = np.einsum("...ai,aj->...ij", dN, X)
        detJ = J[..., 0, 0] * J[..., 1, 1] - J[..., 0, 1] * J[..., 1, 0]
        if np.any(detJ <= 0):
            raise InvalidParameterError("Element {} has a non-positive Jacobian".format(e))
        dNdx = np.einsum("...ai,...ji->...aj", dN, np.linalg.inv(J))
        return N, dNdx, detJ, np.einsum("...a,ai->...i", N, X)

    def locate(self, x, y):
        """All elements containing the point ``(x, y)``

        A point on an element boundary belongs to every adjacent element.

        Returns
        -------
        list of (int, float, float)
            ``(element, xi, eta)`` for each containing element

        Raises
        ------
        DomainError
            If the point lies outside the plate

        """
        x = float(x)
        y = float(y)
        tol_x = _LOCATE_TOL * self.dx
        tol_y = _LOCATE_TOL * self.dy
        if not (-tol_x <= x <= self.a + tol_x and -tol_y <= y <= self.b + tol_y):
            raise DomainError("Point ({}, {}) lies outside the {} x {} plate".format(x, y, self.a, self.b))

        def spans(s, step, count, tol):
            f = s / step
            candidates = {int(np.floor(f)), int(np.floor(f)) - 1, int(np.floor(f)) + 1}
            found = []
            for i in sorted(candidates):
                if 0 <= i < count and i * step - tol <= s <= (i + 1) * step + tol:
                    local = np.clip(2.0 * (s - (i + 0.5) * step) / step, -1.0, 1.0)
                    found.append((i, local))
            return found

        hits = []
        for ey, eta in spans(y, self.dy, self.ny, tol_y):
            for ex, xi in spans(x, self.dx, self.nx, tol_x):
                hits.append((ey * self.nx + ex, float(xi), float(eta)))
        return hits

    def renumbered(self, permutation):
        """Copy of the mesh with node ``i`` renamed ``permutation[i]``"""
        perm = np.asarray(permutation, dtype=int)
        if sorted(perm.tolist()) != list(range(self.nnodes)):
            raise InvalidParameterError("Node renumbering must be a permutation")
        nodes = np.empty_like(self.nodes)
        nodes[perm] = self.nodes
        edges = {key: np.sort(perm[idx]) for key, idx in self.edges.items()}
        return Mesh(self.a, self.b, self.nx, self.ny, nodes, perm[self.elements], edges)


def node_count(nx, ny):
    """Number of serendipity nodes in an ``nx`` by ``ny`` structured mesh"""
    return (2 * nx + 1) * (2 * ny + 1) - nx * ny


def build_mesh(a, b, nx, ny):
    """Uniform structured mesh of the rectangle ``[0, a] x [0, b]``

    Examples
    --------

    >>> build_mesh(1.0, 1.0, 8, 8).nnodes
    225

    """
    if not (a > 0 and b > 0):
        raise InvalidParameterError("Plate dimensions must be positive, got {} x {}".format(a, b))
    if int(nx) != nx or int(ny) != ny or nx < 1 or ny < 1:
        raise InvalidParameterError("Element counts must be positive integers, got {} x {}".format(nx, ny))
    nx = int(nx)
    ny = int(ny)

    # Half-step lattice without the element centres (both indices odd)
    ni, nj = 2 * nx + 1, 2 * ny + 1
    number = -np.ones((nj, ni), dtype=int)
    coords = []
    for j in range(nj):
        for i in range(ni):
            if i % 2 and j % 2:
                continue
            number[j, i] = len(coords)
            coords.append((i * a / (2 * nx), j * b / (2 * ny)))
    nodes = np.array(coords)

    local = [(0, 0), (2, 0), (2, 2), (0, 2), (1, 0), (2, 1), (1, 2), (0, 1)]
    elements = np.empty((nx * ny, 8), dtype=int)
    for ey in range(ny):
        for ex in range(nx):
            i0, j0 = 2 * ex, 2 * ey
            elements[ey * nx + ex] = [number[j0 + dj, i0 + di] for di, dj in local]

    edges = {
        "x0": np.sort(number[:, 0][number[:, 0] >= 0]),
        "xa": np.sort(number[:, -1][number[:, -1] >= 0]),
        "y0": np.sort(number[0, :][number[0, :] >= 0]),
        "yb": np.sort(number[-1, :][number[-1, :] >= 0]),
    }
    mesh = Mesh(a, b, nx, ny, nodes, elements, edges)
    logger.debug("Built %r", mesh)
    return mesh
