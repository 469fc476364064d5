"""Constituent phases, sandwich layups and through-thickness properties

The plate is a three-layer stack between the interface coordinates
``z1 < z2 <= z3 < z4`` with ``z1 = -h/2`` and ``z4 = +h/2``. The ceramic
volume fraction follows a power law inside the graded layers, and the
effective properties at any height are obtained either by the rule of
mixtures or by the Mori-Tanaka estimate with the metal as matrix.

All functions accept scalar or array ``z`` and return arrays of the same
shape.

"""

from __future__ import division

from collections import namedtuple
from enum import Enum

import numpy as np

from .errors import DomainError, InvalidParameterError

# Relative tolerance used when deciding whether z lies inside the plate
_Z_TOL = 1e-12


class GradingType(Enum):
    """How the ceramic volume fraction varies through the stack"""
    TypeA = "A"            # graded faces, ceramic core
    TypeB = "B"            # ceramic bottom face, graded core, metal top face
    MonolithicFGM = "FGM"  # single power law over the whole thickness

    @classmethod
    def from_name(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace(" ", "")
        for grading in cls:
            if key in (grading.name.lower(), grading.value.lower()):
                return grading
        if key in ("monolithic", "power-law", "powerlaw"):
            return cls.MonolithicFGM
        raise InvalidParameterError("Unknown grading type '{}'".format(name))


class HomogenizationScheme(Enum):
    RuleOfMixtures = "RuleOfMixtures"
    MoriTanaka = "MoriTanaka"

    @classmethod
    def from_name(cls, name):
        if isinstance(name, cls):
            return name
        key = str(name).replace("-", "").replace("_", "").replace(" ", "").lower()
        aliases = {"ruleofmixtures": cls.RuleOfMixtures, "rom": cls.RuleOfMixtures,
                   "voigt": cls.RuleOfMixtures, "moritanaka": cls.MoriTanaka,
                   "mt": cls.MoriTanaka}
        try:
            return aliases[key]
        except KeyError:
            raise InvalidParameterError("Unknown homogenization scheme '{}'".format(name))


_PhaseMaterialBase = namedtuple("PhaseMaterial", ["young_modulus", "poisson_ratio", "density",
                                                  "thermal_expansion", "thermal_conductivity",
                                                  "name"])


class PhaseMaterial(_PhaseMaterialBase):
    """Isotropic properties of one constituent phase, in SI units

    Parameters
    ----------
    young_modulus : float
        Young's modulus E [Pa], must be positive
    poisson_ratio : float
        Poisson's ratio, ``0 <= nu < 0.5``
    density : float
        Mass density [kg/m^3], must be positive
    thermal_expansion : float, optional
        Coefficient of thermal expansion [1/K]
    thermal_conductivity : float, optional
        Thermal conductivity [W/(m K)]
    name : str, optional
        Label used in reports

    """
    __slots__ = ()

    def __new__(cls, young_modulus, poisson_ratio, density,
                thermal_expansion=0.0, thermal_conductivity=0.0, name=""):
        if not young_modulus > 0:
            raise InvalidParameterError("Young's modulus must be positive, got {}".format(young_modulus))
        if not density > 0:
            raise InvalidParameterError("Density must be positive, got {}".format(density))
        if not 0.0 <= poisson_ratio < 0.5:
            raise InvalidParameterError("Poisson's ratio must be in [0, 0.5), got {}".format(poisson_ratio))
        return super(PhaseMaterial, cls).__new__(cls, float(young_modulus), float(poisson_ratio),
                                                 float(density), float(thermal_expansion),
                                                 float(thermal_conductivity), str(name))

    @property
    def bulk_modulus(self):
        return self.young_modulus / (3.0 * (1.0 - 2.0 * self.poisson_ratio))

    @property
    def shear_modulus(self):
        return self.young_modulus / (2.0 * (1.0 + self.poisson_ratio))

    def get(self, which):
        """Return the property named by a tag (see :py:data:`PROPERTY_TAGS`)"""
        return getattr(self, _property_field(which))

    def replace(self, **kwargs):
        return PhaseMaterial(**self._replace(**kwargs)._asdict())

    def as_dict(self):
        return dict(self._asdict())


# Accepted tags for effective_property(), mapped onto PhaseMaterial fields
PROPERTY_TAGS = {
    "E": "young_modulus", "young_modulus": "young_modulus",
    "nu": "poisson_ratio", u"ν": "poisson_ratio", "poisson_ratio": "poisson_ratio",
    "rho": "density", u"ρ": "density", "density": "density",
    "alpha": "thermal_expansion", u"α": "thermal_expansion",
    "thermal_expansion": "thermal_expansion",
    "kappa": "thermal_conductivity", u"κ": "thermal_conductivity",
    "thermal_conductivity": "thermal_conductivity",
}


def _property_field(which):
    try:
        return PROPERTY_TAGS[which]
    except (KeyError, TypeError):
        raise InvalidParameterError("Unknown property tag '{}'".format(which))


# Alumina's expansion coefficient is not quoted alongside its other
# constants; this value is used unless a configuration overrides it.
DEFAULT_ALUMINA_EXPANSION = 7.4e-6

DefaultMaterials = namedtuple("DefaultMaterials", ["alumina", "aluminum", "sic"])


def default_materials():
    """Return the built-in phases: alumina, aluminum and silicon carbide

    Returns
    -------
    DefaultMaterials
        Named tuple ``(alumina, aluminum, sic)`` of :py:class:`PhaseMaterial`

    """
    alumina = PhaseMaterial(380e9, 0.3, 3800.0, DEFAULT_ALUMINA_EXPANSION, 10.4, name="alumina")
    aluminum = PhaseMaterial(70e9, 0.3, 2707.0, 23.4e-6, 233.0, name="aluminum")
    sic = PhaseMaterial(427e9, 0.17, 3100.0, 4.3e-6, 65.0, name="sic")
    return DefaultMaterials(alumina, aluminum, sic)


def material_preset(name):
    """Look up one of the :py:func:`default_materials` by name"""
    presets = default_materials()._asdict()
    aliases = {"al2o3": "alumina", "al": "aluminum", "aluminium": "aluminum",
               "silicon_carbide": "sic"}
    key = str(name).strip().lower()
    key = aliases.get(key, key)
    if key not in presets:
        raise InvalidParameterError("Unknown material preset '{}' (known: {})".format(
            name, ", ".join(sorted(presets))))
    return presets[key]


def parse_ratio(label):
    """Split a thickness-ratio label such as ``"1-2-1"`` into three numbers"""
    try:
        parts = [float(p) for p in str(label).strip().split("-")]
    except ValueError:
        raise InvalidParameterError("Malformed thickness ratio '{}'".format(label))
    if len(parts) != 3:
        raise InvalidParameterError("Thickness ratio '{}' must have three parts".format(label))
    if parts[0] <= 0 or parts[2] <= 0 or parts[1] < 0:
        raise InvalidParameterError(
            "Thickness ratio '{}' needs positive face sheets and a non-negative core".format(label))
    return parts


class SandwichLayup(object):
    """Three-layer functionally graded sandwich stack

    Parameters
    ----------
    z_interfaces : sequence of 4 floats
        ``(z1, z2, z3, z4)`` with ``z1 < z2 <= z3 < z4`` and
        ``z1 = -z4`` (thickness centred on the reference surface)
    grading_type : GradingType or str
        Type A, Type B or monolithic
    gradient_index : float
        Power-law exponent n >= 0
    ceramic, metal : PhaseMaterial
        The two constituent phases
    ratio_label : str, optional
        Thickness-ratio label; derived from the interfaces if omitted
    fraction_bounds : pair of floats, optional
        Ceramic fraction (bottom, top) of a monolithic FGM plate; the
        power law is scaled between them. Sandwich gradings keep (0, 1)

    Examples
    --------

    >>> alumina, aluminum, _ = default_materials()
    >>> layup = SandwichLayup.from_ratio("1-2-1", 0.1, "A", 1.0, alumina, aluminum)
    >>> layup.z_interfaces
    (-0.05, -0.025, 0.025, 0.05)

    """

    def __init__(self, z_interfaces, grading_type, gradient_index, ceramic, metal,
                 ratio_label=None, fraction_bounds=(0.0, 1.0)):
        z = tuple(float(v) for v in z_interfaces)
        if len(z) != 4:
            raise InvalidParameterError("A sandwich layup needs exactly 4 interface coordinates")
        if not (z[0] < z[1] <= z[2] < z[3]):
            raise InvalidParameterError("Interfaces must satisfy z1 < z2 <= z3 < z4, got {}".format(z))
        h = z[3] - z[0]
        if abs(z[0] + z[3]) > _Z_TOL * h:
            raise InvalidParameterError("Interfaces must be centred on z = 0, got {}".format(z))
        if not gradient_index >= 0:
            raise InvalidParameterError("Gradient index must be >= 0, got {}".format(gradient_index))

        self.z_interfaces = z
        self.grading_type = GradingType.from_name(grading_type)
        self.gradient_index = float(gradient_index)
        self.ceramic = ceramic
        self.metal = metal
        if ratio_label is None:
            ratio_label = "-".join("{:g}".format(t / h) for t in self.layer_thicknesses)
        self.ratio_label = str(ratio_label)
        lo, hi = (float(v) for v in fraction_bounds)
        if not (0.0 <= lo <= 1.0 and 0.0 <= hi <= 1.0):
            raise InvalidParameterError("Ceramic fraction bounds must lie in [0, 1], got {}".format(
                (lo, hi)))
        if (lo, hi) != (0.0, 1.0) and self.grading_type is not GradingType.MonolithicFGM:
            raise InvalidParameterError("Ceramic fraction bounds only apply to a monolithic FGM plate")
        self.fraction_bounds = (lo, hi)

    @classmethod
    def from_ratio(cls, ratio_label, thickness, grading_type, gradient_index, ceramic, metal,
                   fraction_bounds=(0.0, 1.0)):
        """Build a layup of total ``thickness`` from a label such as ``"2-2-1"``

        The parts give bottom face : core : top face thicknesses.
        """
        if not thickness > 0:
            raise InvalidParameterError("Plate thickness must be positive, got {}".format(thickness))
        parts = parse_ratio(ratio_label)
        total = sum(parts)
        z1 = -0.5 * thickness
        z2 = z1 + thickness * parts[0] / total
        z3 = z2 + thickness * parts[1] / total
        z4 = 0.5 * thickness
        return cls((z1, z2, z3, z4), grading_type, gradient_index, ceramic, metal,
                   ratio_label=str(ratio_label), fraction_bounds=fraction_bounds)

    def __repr__(self):
        return "SandwichLayup({0}, type={1}, n={2:g}, h={3:g}, {4}/{5})".format(
            self.ratio_label, self.grading_type.value, self.gradient_index, self.thickness,
            self.ceramic.name or "ceramic", self.metal.name or "metal")

    @property
    def thickness(self):
        return self.z_interfaces[3] - self.z_interfaces[0]

    @property
    def layer_thicknesses(self):
        z = self.z_interfaces
        return (z[1] - z[0], z[2] - z[1], z[3] - z[2])

    def layer_bounds(self, k):
        """Bottom and top coordinate of layer ``k`` (1, 2 or 3)"""
        if k not in (1, 2, 3):
            raise InvalidParameterError("Layer index must be 1, 2 or 3, got {}".format(k))
        return self.z_interfaces[k - 1], self.z_interfaces[k]

    def layers(self):
        """Non-empty layers as a list of ``(k, z_bottom, z_top)``"""
        return [(k, self.z_interfaces[k - 1], self.z_interfaces[k])
                for k in (1, 2, 3) if self.z_interfaces[k] > self.z_interfaces[k - 1]]

    def check_inside(self, z):
        z = np.asarray(z, dtype=float)
        tol = _Z_TOL * self.thickness
        if np.any(z < self.z_interfaces[0] - tol) or np.any(z > self.z_interfaces[3] + tol):
            raise DomainError("z outside the plate thickness [{}, {}]".format(
                self.z_interfaces[0], self.z_interfaces[3]))
        return np.clip(z, self.z_interfaces[0], self.z_interfaces[3])

    def layer_of(self, z):
        """Layer index (1, 2 or 3) containing each ``z``

        A point on an interface belongs to the layer above it, except the
        top surface which belongs to layer 3. Empty cores are skipped.
        """
        z = self.check_inside(z)
        _, z2, z3, _ = self.z_interfaces
        k = np.where(z < z2, 1, np.where(z < z3, 2, 3))
        return k

    def with_gradient_index(self, n):
        return SandwichLayup(self.z_interfaces, self.grading_type, n, self.ceramic, self.metal,
                             ratio_label=self.ratio_label, fraction_bounds=self.fraction_bounds)


def _power(base, n):
    # numpy gives 0**0 == 1, so n = 0 produces a fully ceramic graded layer
    return np.power(np.clip(base, 0.0, 1.0), n)


def volume_fraction_ceramic(layup, z, layer=None):
    """Ceramic volume fraction V_c at height ``z``

    For Type B the power law gives the metal fraction, so the core
    runs from ceramic at its bottom to metal at its top face.

    Parameters
    ----------
    layup : SandwichLayup
        The stack
    z : float or array_like
        Through-thickness coordinates, ``z1 <= z <= z4``
    layer : int or array_like, optional
        Force the layer used for the evaluation. Useful on an interface
        where the two adjacent definitions differ (Type B with n = 0).

    Returns
    -------
    numpy.ndarray
        V_c in [0, 1], same shape as ``z``

    """
    if layup.gradient_index < 0:
        raise InvalidParameterError("Gradient index must be >= 0")
    z = layup.check_inside(z)
    n = layup.gradient_index
    z1, z2, z3, z4 = layup.z_interfaces
    k = layup.layer_of(z) if layer is None else np.broadcast_to(layer, z.shape)

    with np.errstate(divide="ignore", invalid="ignore"):
        if layup.grading_type is GradingType.TypeA:
            v1 = _power((z - z1) / (z2 - z1), n)
            v2 = np.ones_like(z)
            v3 = _power((z - z4) / (z3 - z4), n)
        elif layup.grading_type is GradingType.TypeB:
            # The Type B power law gives the metal content: ceramic bottom
            # face, core graded towards a metal top face
            v1 = np.ones_like(z)
            if z3 > z2:
                v2 = 1.0 - _power((z - z2) / (z3 - z2), n)
            else:
                v2 = np.ones_like(z)
            v3 = np.zeros_like(z)
        else:
            lo, hi = layup.fraction_bounds
            v = lo + (hi - lo) * _power((2.0 * z + layup.thickness) / (2.0 * layup.thickness), n)
            v1 = v2 = v3 = v
    return np.where(k == 1, v1, np.where(k == 2, v2, v3))


def mori_tanaka_moduli(ceramic, metal, vc):
    """Mori-Tanaka bulk and shear moduli of ceramic particles in a metal matrix

    Returns
    -------
    (K, G) : tuple of numpy.ndarray

    """
    vc = np.asarray(vc, dtype=float)
    vm = 1.0 - vc
    km, gm = metal.bulk_modulus, metal.shear_modulus
    kc, gc = ceramic.bulk_modulus, ceramic.shear_modulus
    fm = gm * (9.0 * km + 8.0 * gm) / (6.0 * (km + 2.0 * gm))
    bulk = km + vc * (kc - km) / (1.0 + vm * (kc - km) / (km + 4.0 * gm / 3.0))
    shear = gm + vc * (gc - gm) / (1.0 + vm * (gc - gm) / (gm + fm))
    return bulk, shear


def _mori_tanaka_property(ceramic, metal, vc, field):
    bulk, shear = mori_tanaka_moduli(ceramic, metal, vc)
    if field == "young_modulus":
        return 9.0 * bulk * shear / (3.0 * bulk + shear)
    if field == "poisson_ratio":
        return (3.0 * bulk - 2.0 * shear) / (2.0 * (3.0 * bulk + shear))
    if field == "density":
        return ceramic.density * vc + metal.density * (1.0 - vc)
    if field == "thermal_expansion":
        # Levin's relation between effective expansion and bulk modulus
        km, kc = metal.bulk_modulus, ceramic.bulk_modulus
        if kc == km:
            return ceramic.thermal_expansion * vc + metal.thermal_expansion * (1.0 - vc)
        ratio = (1.0 / bulk - 1.0 / km) / (1.0 / kc - 1.0 / km)
        return metal.thermal_expansion + (ceramic.thermal_expansion - metal.thermal_expansion) * ratio
    # Hatta-Taya estimate for spherical inclusions
    kap_m, kap_c = metal.thermal_conductivity, ceramic.thermal_conductivity
    if kap_m == 0.0:
        return kap_c * vc
    return kap_m + vc * (kap_c - kap_m) / (1.0 + (1.0 - vc) * (kap_c - kap_m) / (3.0 * kap_m))


def effective_property(layup, scheme, z, which, layer=None):
    """Effective property at height ``z``

    Parameters
    ----------
    layup : SandwichLayup
        The stack
    scheme : HomogenizationScheme or str
        Rule of mixtures or Mori-Tanaka
    z : float or array_like
        Through-thickness coordinates
    which : str
        Property tag: ``E``, ``nu``, ``rho``, ``alpha`` or ``kappa``
        (Greek letters and the :py:class:`PhaseMaterial` field names are
        accepted too)
    layer : int or array_like, optional
        Force the layer, see :py:func:`volume_fraction_ceramic`

    Returns
    -------
    numpy.ndarray
        Property values, same shape as ``z``

    """
    field = _property_field(which)
    scheme = HomogenizationScheme.from_name(scheme)
    vc = volume_fraction_ceramic(layup, z, layer=layer)
    pc = getattr(layup.ceramic, field)
    pm = getattr(layup.metal, field)
    if scheme is HomogenizationScheme.RuleOfMixtures:
        return pc * vc + pm * (1.0 - vc)
    return _mori_tanaka_property(layup.ceramic, layup.metal, vc, field)


def effective_properties(layup, scheme, z, layer=None):
    """E, nu, rho and alpha at ``z`` in one call, as a dict of arrays"""
    return {tag: effective_property(layup, scheme, z, tag, layer=layer)
            for tag in ("E", "nu", "rho", "alpha")}
