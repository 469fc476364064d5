"""Analysis configuration: options tree, JSON input and validation

A configuration is a JSON document of sections (``analysis``,
``material``, ``layup``, ``plate``, ``mesh``, ``quadrature``, ``load``,
``evaluation``, ``profile``, ``output``). It is read into a
:py:class:`PlateOptions` tree, command-line overrides of the form
``section:key=value`` are applied, and the result is validated into an
:py:class:`AnalysisConfig` with every default filled in.

"""

from __future__ import division

import copy
import hashlib
import io
import itertools
import json
import logging
import os
from collections import OrderedDict, namedtuple

from .analysis import QUANTITIES
from .errors import ConfigError, FGMPlateError
from .kinematics import ENERGY_EQUIVALENCE, HOMOGENEOUS_SHEAR_FACTOR, ModelKind, PlateModel
from .material import (GradingType, HomogenizationScheme, PhaseMaterial, SandwichLayup,
                       material_preset, parse_ratio)

logger = logging.getLogger(__name__)


class PlateOptions(object):
    """Tree of sections and key-value pairs with case-insensitive keys

    Parameters
    ----------
    name : str, optional
        Name of the root section (default: "root")
    parent : PlateOptions, optional
        A parent PlateOptions object (default: None)

    Examples
    --------

    >>> opts = PlateOptions()
    >>> opts.getSection("layup")["n"] = 2
    >>> opts["layup"]["N"]
    2
    >>> opts.getSection("layup").path()
    'root:layup'

    """

    def __init__(self, name="root", parent=None):
        self._sections = OrderedDict()
        self._keys = OrderedDict()
        self._name = name
        self._parent = parent

    @classmethod
    def from_dict(cls, tree, name="root", parent=None):
        """Build a tree from nested dictionaries; dicts become sections"""
        return cls(name, parent).update(tree)

    def update(self, tree):
        """Merge nested dictionaries into this section"""
        for key, value in tree.items():
            if isinstance(value, dict):
                self._keys.pop(key.lower(), None)
                self.getSection(key).update(value)
            else:
                self[key] = value
        return self

    def getSection(self, name):
        """Return a section object. If the section does not exist then it is
        created

        """
        name = name.lower()
        if name in self._keys:
            raise ConfigError("'{}' is a value, not a section".format(name), path=self._child_path(name))
        if name not in self._sections:
            self._sections[name] = PlateOptions(name, self)
        return self._sections[name]

    def __getitem__(self, key):
        """
        First check if it's a section, then a value
        """
        key = key.lower()
        if key in self._sections:
            return self._sections[key]
        if key not in self._keys:
            raise KeyError("Key '%s' not in section '%s'" % (key, self.path()))
        return self._keys[key]

    def __setitem__(self, key, value):
        if len(key) == 0:
            return
        key = key.lower()
        # A value replaces a section of the same name and vice versa
        self._sections.pop(key, None)
        self._keys[key] = value

    def __contains__(self, key):
        key = key.lower()
        return key in self._keys or key in self._sections

    def _child_path(self, key):
        return self.path() + ":" + key

    def path(self):
        """Returns the path of this section, joining together names of
        parents

        """
        if self._parent:
            return self._parent.path() + ":" + self._name
        return self._name

    def keys(self):
        return list(self._sections) + list(self._keys)

    def sections(self):
        return list(self._sections.keys())

    def values(self):
        return list(self._keys.keys())

    def as_dict(self):
        """Return a nested dictionary of all the options"""
        tree = OrderedDict((name, self[name]) for name in self.values())
        tree.update((name, self[name].as_dict()) for name in self.sections())
        return tree

    def set_path(self, path, value):
        """Set ``section:sub:key`` creating sections on the way"""
        parts = [p.strip() for p in path.split(":") if p.strip()]
        if not parts:
            raise ConfigError("Empty option path")
        node = self
        for part in parts[:-1]:
            node = node.getSection(part)
        if isinstance(value, dict):
            node._sections.pop(parts[-1].lower(), None)
            node.update({parts[-1]: value})
        else:
            node[parts[-1]] = value

    def __len__(self):
        return len(self._sections) + len(self._keys)

    def __iter__(self):
        """Iterates over all keys. First values, then sections"""
        for k in self._keys:
            yield k
        for s in self._sections:
            yield s

    def __str__(self, indent=""):
        """Print a pretty version of the options tree"""
        text = self._name + "\n"
        for k in self._keys:
            text += indent + " |- " + k + " = " + str(self._keys[k]) + "\n"
        for s in self._sections:
            text += indent + " |- " + self._sections[s].__str__(indent + " |  ")
        return text


def read_options(filename):
    """Read a JSON configuration file into a :py:class:`PlateOptions` tree"""
    if not os.path.isfile(filename):
        raise ConfigError("Configuration file '{}' not found".format(filename))
    with io.open(filename, "r", encoding="utf-8") as f:
        text = f.read()
    try:
        tree = json.loads(text, object_pairs_hook=OrderedDict)
    except ValueError as err:
        raise ConfigError("Malformed JSON: {}".format(getattr(err, "msg", err)),
                          line=getattr(err, "lineno", None))
    if not isinstance(tree, dict):
        raise ConfigError("The configuration must be a JSON object of sections")
    return PlateOptions.from_dict(tree)


def parse_override(text):
    """Split ``section:key=value`` into the path and a decoded value

    The value is decoded as JSON when possible and kept as a bare string
    otherwise, so ``layup:n=[0, 1]`` gives a list and ``layup:type=A``
    the string ``"A"``.
    """
    if "=" not in text:
        raise ConfigError("Override '{}' is not of the form section:key=value".format(text))
    path, raw = text.split("=", 1)
    path = path.strip()
    if ":" not in path:
        raise ConfigError("Override path '{}' must name a section and a key".format(path))
    try:
        value = json.loads(raw, object_pairs_hook=OrderedDict)
    except ValueError:
        value = raw.strip()
    return path, value


def apply_overrides(options, overrides):
    for text in overrides or ():
        path, value = parse_override(text)
        logger.debug("Override %s = %r", path, value)
        options.set_path(path, value)
    return options


# ----------------------------------------------------------------------------
# Converters: take a raw value, return the canonical one or raise ValueError

def _number(value):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ValueError("expected a number, got {!r}".format(value))
    return float(value)


def _positive(value):
    value = _number(value)
    if not value > 0:
        raise ValueError("must be positive, got {}".format(value))
    return value


def _non_negative(value):
    value = _number(value)
    if not value >= 0:
        raise ValueError("must be >= 0, got {}".format(value))
    return value


def _finite(value):
    value = _number(value)
    if value != value or value in (float("inf"), float("-inf")):
        raise ValueError("must be finite")
    return value


def _count(minimum):
    def convert(value):
        if isinstance(value, bool) or not isinstance(value, int) and not (
                isinstance(value, float) and value.is_integer()):
            raise ValueError("expected an integer, got {!r}".format(value))
        value = int(value)
        if value < minimum:
            raise ValueError("must be >= {}, got {}".format(minimum, value))
        return value
    return convert


def _boolean(value):
    if not isinstance(value, bool):
        raise ValueError("expected true or false, got {!r}".format(value))
    return value


def _choice(*choices):
    def convert(value):
        key = str(value).strip().lower()
        if key not in choices:
            raise ValueError("must be one of {}, got {!r}".format(", ".join(choices), value))
        return key
    return convert


def _optional(convert):
    def wrapped(value):
        return None if value is None else convert(value)
    return wrapped


def _model(value):
    return ModelKind.from_name(value).name


def _grading(value):
    return GradingType.from_name(value).value


def _scheme(value):
    return HomogenizationScheme.from_name(value).value


def _ratio(value):
    parse_ratio(value)
    return str(value).strip()


def _shear_correction(value):
    if value is None or value == ENERGY_EQUIVALENCE:
        return value
    return _positive(value)


_PHASE_KEYS = OrderedDict([("e", "young_modulus"), ("nu", "poisson_ratio"), ("rho", "density"),
                           ("alpha", "thermal_expansion"), ("kappa", "thermal_conductivity")])


def _phase(value):
    """A preset name, or a dict of E, nu, rho, alpha, kappa with an optional preset base"""
    if isinstance(value, PlateOptions):
        value = value.as_dict()
    if not isinstance(value, dict):
        material_preset(value)
        return str(value).strip().lower()
    value = OrderedDict((str(k).lower(), v) for k, v in value.items())
    unknown = set(value) - set(_PHASE_KEYS) - {"preset", "name"}
    if unknown:
        raise ValueError("unknown material propert{} {}".format(
            "y" if len(unknown) == 1 else "ies", ", ".join(sorted(unknown))))
    if "preset" not in value:
        missing = [k for k in ("e", "nu", "rho") if k not in value]
        if missing:
            raise ValueError("an explicit material needs {}".format(", ".join(missing)))
    out = OrderedDict()
    for key in ("preset", "name"):
        if key in value:
            out[key] = str(value[key])
    for key in _PHASE_KEYS:
        if key in value:
            out[key] = _number(value[key])
    build_phase(out)
    return out


def build_phase(setting):
    """:py:class:`PhaseMaterial` from a validated material setting"""
    if not isinstance(setting, dict):
        return material_preset(setting)
    base = material_preset(setting["preset"]) if "preset" in setting else None
    kwargs = base.as_dict() if base is not None else {"name": setting.get("name", "custom")}
    if "name" in setting:
        kwargs["name"] = setting["name"]
    for key, field in _PHASE_KEYS.items():
        if key in setting:
            kwargs[field] = setting[key]
    return PhaseMaterial(**kwargs)


def _point(value):
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise ValueError("an evaluation point is [x/a, y/b, z/h or \"max\"]")
    fx, fy = _number(value[0]), _number(value[1])
    if not (0 <= fx <= 1 and 0 <= fy <= 1):
        raise ValueError("in-plane fractions must lie in [0, 1]")
    fz = value[2]
    if fz != "max":
        fz = _number(fz)
        if not -0.5 <= fz <= 0.5:
            raise ValueError("z/h must lie in [-0.5, 0.5]")
    return [fx, fy, fz]


def _points(value):
    if isinstance(value, PlateOptions):
        value = value.as_dict()
    if not isinstance(value, dict):
        raise ValueError("expected a mapping of quantity to point")
    out = OrderedDict()
    for key in sorted(value):
        if key not in QUANTITIES:
            raise ValueError("unknown quantity '{}'".format(key))
        out[key] = _point(value[key])
    return out


def _quantities(value):
    if isinstance(value, str):
        value = [value]
    if not isinstance(value, (list, tuple)) or not value:
        raise ValueError("expected a non-empty list of quantities")
    for q in value:
        if q not in QUANTITIES:
            raise ValueError("unknown quantity '{}'".format(q))
    return list(value)


def _pairs(kind, check):
    def convert(value):
        if not isinstance(value, (list, tuple)) or not value:
            raise ValueError("expected a non-empty list of {}".format(kind))
        out = []
        for item in value:
            if not isinstance(item, (list, tuple)) or len(item) != 2:
                raise ValueError("each entry must be a pair, got {!r}".format(item))
            out.append([check(item[0]), check(item[1])])
        return out
    return convert


def _fraction(value):
    value = _number(value)
    if not 0 <= value <= 1:
        raise ValueError("fractions must lie in [0, 1]")
    return value


def _bounds(value):
    if not isinstance(value, (list, tuple)) or len(value) != 2:
        raise ValueError("expected [bottom, top] ceramic fractions")
    return [_fraction(value[0]), _fraction(value[1])]


# section -> key -> (default, converter, sweepable)
SCHEMA = OrderedDict([
    ("analysis", OrderedDict([
        ("type", ("static", _choice("static", "modal", "convergence", "profile"), False)),
        ("model", ("HSDT13", _model, True)),
        ("shear_correction", (HOMOGENEOUS_SHEAR_FACTOR, _shear_correction, False)),
        ("modes", (6, _count(1), False)),
        ("workers", (1, _count(1), False)),
        ("dense_limit", (3000, _count(1), False)),
    ])),
    ("material", OrderedDict([
        ("ceramic", ("alumina", _phase, False)),
        ("metal", ("aluminum", _phase, False)),
        ("scheme", ("RuleOfMixtures", _scheme, False)),
    ])),
    ("layup", OrderedDict([
        ("type", ("A", _grading, False)),
        ("ratio", ("1-1-1", _ratio, True)),
        ("n", (1.0, _non_negative, True)),
        ("fraction_bounds", ([0.0, 1.0], _bounds, False)),
    ])),
    ("plate", OrderedDict([
        ("a", (1.0, _positive, False)),
        ("b", (None, _optional(_positive), False)),
        ("a_over_h", (10.0, _positive, True)),
    ])),
    ("mesh", OrderedDict([
        ("nx", (8, _count(1), False)),
        ("ny", (8, _count(1), False)),
        ("sequence", ([[4, 4], [6, 6], [8, 8], [16, 16]], _pairs("meshes", _count(1)), False)),
    ])),
    ("quadrature", OrderedDict([
        ("thickness", (10, _count(2), False)),
        ("in_plane", (3, _count(1), False)),
        ("shear", (2, _count(1), False)),
    ])),
    ("load", OrderedDict([
        ("kind", ("mechanical", _choice("mechanical", "thermal"), False)),
        ("amplitude", (1.0, _finite, False)),
        ("distribution", ("sinusoidal", _choice("sinusoidal", "uniform"), False)),
        ("surface", ("top", _choice("mid", "top"), False)),
    ])),
    ("evaluation", OrderedDict([
        ("convention", ("standard", _choice("standard", "elasticity-benchmark"), False)),
        ("quantities", (None, _optional(_quantities), False)),
        ("points", (OrderedDict(), _points, False)),
        ("reference_modulus", (1.0e9, _positive, False)),
        ("reference_density", (1.0, _positive, False)),
    ])),
    ("profile", OrderedDict([
        ("source", ("static", _choice("static", "modal"), False)),
        ("quantities", (["u", "v", "w"], _quantities, False)),
        ("stations", ([[0.5, 0.5], [0.25, 0.25]], _pairs("stations", _fraction), False)),
        ("modes", (3, _count(1), False)),
        ("samples_per_layer", (21, _count(2), False)),
    ])),
    ("output", OrderedDict([
        ("directory", (".", str, False)),
        ("case", (None, _optional(str), False)),
        ("netcdf", (True, _boolean, False)),
    ])),
])

# Keys whose values are mappings rather than sections
_MAPPING_KEYS = {("material", "ceramic"), ("material", "metal"), ("evaluation", "points")}


class Case(namedtuple("Case", ["model", "ratio", "n", "a_over_h"])):
    """One cell of a parameter sweep"""
    __slots__ = ()

    @property
    def sort_key(self):
        return ([k.name for k in ModelKind].index(self.model), parse_ratio(self.ratio), self.n,
                self.a_over_h)

    def key(self, grading="A"):
        return "{0}-{1}{2}-n{3:g}-S{4:g}".format(self.model, grading, self.ratio, self.n, self.a_over_h)

    def as_dict(self):
        return OrderedDict(self._asdict())


class AnalysisConfig(object):
    """Validated analysis configuration with defaults filled in

    Use :py:func:`parse_config` or :py:func:`config_from_dict`. The
    settings are a nested dictionary in canonical form, so
    ``config_from_dict(cfg.as_dict())`` reproduces ``cfg`` exactly.
    """

    def __init__(self, settings):
        self._settings = settings

    def __getitem__(self, section):
        return self._settings[section]

    def get(self, path):
        section, key = path.split(":")
        return self._settings[section][key]

    def as_dict(self):
        return copy.deepcopy(self._settings)

    def canonical_json(self):
        return json.dumps(self._settings, sort_keys=True, separators=(",", ":"))

    def config_hash(self):
        """SHA-256 of the canonical JSON form"""
        return hashlib.sha256(self.canonical_json().encode("utf-8")).hexdigest()

    def write(self, filename):
        with io.open(filename, "w", encoding="utf-8") as f:
            f.write(json.dumps(self._settings, sort_keys=True, indent=2))
            f.write(u"\n")

    def __eq__(self, other):
        return isinstance(other, AnalysisConfig) and self.canonical_json() == other.canonical_json()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "AnalysisConfig({}, {} case(s))".format(self.analysis_type, len(self.cases()))

    @property
    def analysis_type(self):
        return self._settings["analysis"]["type"]

    def with_analysis(self, analysis_type):
        """Copy with ``analysis:type`` replaced (used by the subcommands)"""
        settings = self.as_dict()
        settings["analysis"]["type"] = analysis_type
        return AnalysisConfig(settings)

    def sweep(self, path):
        value = self.get(path)
        return list(value) if isinstance(value, list) else [value]

    def cases(self):
        """All parameter combinations, sorted deterministically"""
        combos = itertools.product(self.sweep("analysis:model"), self.sweep("layup:ratio"),
                                   self.sweep("layup:n"), self.sweep("plate:a_over_h"))
        return sorted((Case(*c) for c in combos), key=lambda c: c.sort_key)

    @property
    def grading(self):
        return self._settings["layup"]["type"]

    @property
    def scheme(self):
        return HomogenizationScheme.from_name(self._settings["material"]["scheme"])

    def phases(self):
        material = self._settings["material"]
        return build_phase(material["ceramic"]), build_phase(material["metal"])

    def dimensions(self, case):
        """``(a, b, h)`` of a case"""
        plate = self._settings["plate"]
        a = plate["a"]
        b = plate["b"] if plate["b"] is not None else a
        return a, b, a / case.a_over_h

    def layup(self, case):
        ceramic, metal = self.phases()
        _, _, h = self.dimensions(case)
        return SandwichLayup.from_ratio(case.ratio, h, self.grading, case.n, ceramic, metal,
                                        fraction_bounds=self._settings["layup"]["fraction_bounds"])

    def plate_model(self, case):
        kind = ModelKind.from_name(case.model)
        if kind is ModelKind.FSDT5:
            return PlateModel(kind, self._settings["analysis"]["shear_correction"])
        return PlateModel(kind)


def config_from_options(options):
    """Validate a :py:class:`PlateOptions` tree into an :py:class:`AnalysisConfig`"""
    for name in options.values():
        raise ConfigError("Options must be inside a section", path=name)
    for name in options.sections():
        if name not in SCHEMA:
            raise ConfigError("Unknown section (known: {})".format(", ".join(SCHEMA)), path=name)

    settings = OrderedDict()
    for section, keys in SCHEMA.items():
        given = options[section] if section in options else PlateOptions(section)
        for name in given.keys():
            if name not in keys:
                raise ConfigError("Unknown option (known: {})".format(", ".join(keys)),
                                  path="{}:{}".format(section, name))
        for name in given.sections():
            if (section, name) not in _MAPPING_KEYS:
                raise ConfigError("Expected a value, not a mapping", path="{}:{}".format(section, name))

        out = OrderedDict()
        for name, (default, convert, sweepable) in keys.items():
            path = "{}:{}".format(section, name)
            raw = given[name] if name in given else copy.deepcopy(default)
            try:
                if sweepable and isinstance(raw, (list, tuple)):
                    if not raw:
                        raise ValueError("an empty sweep list")
                    value = [convert(v) for v in raw]
                else:
                    value = convert(raw)
            except (ValueError, TypeError, FGMPlateError) as err:
                if isinstance(err, ConfigError):
                    raise
                raise ConfigError(str(err), path=path)
            out[name] = value
        settings[section] = out

    if (settings["layup"]["fraction_bounds"] != [0.0, 1.0]
            and GradingType.from_name(settings["layup"]["type"]) is not GradingType.MonolithicFGM):
        raise ConfigError("Ceramic fraction bounds only apply to a monolithic FGM plate",
                          path="layup:fraction_bounds")

    models = settings["analysis"]["model"]
    if settings["analysis"]["shear_correction"] is not None and not any(
            ModelKind.from_name(m) is ModelKind.FSDT5 for m in (models if isinstance(models, list) else [models])):
        logger.debug("analysis:shear_correction only affects FSDT5 cases")
    return AnalysisConfig(settings)


def config_from_dict(tree, overrides=()):
    """Validate a nested dictionary (plus overrides) into an :py:class:`AnalysisConfig`"""
    options = PlateOptions.from_dict(tree)
    return config_from_options(apply_overrides(options, overrides))


def parse_config(path, overrides=()):
    """Read, override and validate a JSON analysis configuration

    Parameters
    ----------
    path : str
        Configuration file
    overrides : sequence of str, optional
        ``section:key=value`` strings applied before validation

    Returns
    -------
    AnalysisConfig

    Raises
    ------
    ConfigError
        Missing file, malformed JSON or schema violation

    """
    options = apply_overrides(read_options(path), overrides)
    config = config_from_options(options)
    logger.debug("Read %s (%s)", path, config.config_hash()[:12])
    return config
