"""Result tables and output files

Every study produces a :py:class:`ResultTable`, always written both as
CSV (five decimals, RFC-4180 quoting) and as JSON (full precision plus
a provenance block). Mode shapes can also be archived in netCDF through
:py:class:`DataFile`.

Output is deterministic: identical configurations give byte-identical
files.

"""

from __future__ import division

import csv
import io
import json
import logging
import os
from collections import OrderedDict

import numpy as np

try:
    from netCDF4 import Dataset
    has_netCDF = True
except ImportError:
    has_netCDF = False

from . import __version__
from .errors import FGMPlateError
from .kinematics import DOF_LABELS

logger = logging.getLogger(__name__)

DECIMALS = 5


def format_cell(value):
    """Text of one CSV cell: fixed five decimals for numbers"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        text = "{:.{}f}".format(float(value), DECIMALS)
        # Avoid "-0.00000"
        return text[1:] if text.startswith("-") and float(text) == 0 else text
    return str(value)


def _parse_cell(text):
    if text == "":
        return None
    if text in ("true", "false"):
        return text == "true"
    for convert in (int, float):
        try:
            return convert(text)
        except ValueError:
            pass
    return text


def _plain(value):
    """JSON-serialisable copy with numpy scalars and arrays converted"""
    if isinstance(value, dict):
        return OrderedDict((str(k), _plain(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, np.ndarray):
        return _plain(value.tolist())
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    return value


class ResultTable(object):
    """Rows of case parameters and nondimensional values

    Parameters
    ----------
    title : str
        Name of the study
    columns : list of str
        Column order; rows may not contain other keys
    provenance : dict, optional
        Config hash, quadrature orders, evaluation points, tool version

    Examples
    --------

    >>> table = ResultTable("modal", ["case", "Omega1"])
    >>> table.add_row(case="HSDT13-A1-1-1-n1-S10", Omega1=1.29)
    >>> table.column("Omega1")
    [1.29]

    """

    def __init__(self, title, columns, provenance=None, rows=None):
        self.title = str(title)
        self.columns = list(columns)
        self.provenance = OrderedDict(provenance or {})
        self.rows = []
        for row in rows or []:
            self.add_row(**row)

    def add_row(self, **values):
        unknown = set(values) - set(self.columns)
        if unknown:
            raise FGMPlateError("Unknown column(s) {} in table '{}'".format(
                ", ".join(sorted(unknown)), self.title))
        self.rows.append(OrderedDict((c, _plain(values.get(c))) for c in self.columns))

    def extend_columns(self, columns):
        for c in columns:
            if c not in self.columns:
                self.columns.append(c)
                for row in self.rows:
                    row[c] = None

    def column(self, name):
        return [row[name] for row in self.rows]

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)

    def as_dict(self):
        return OrderedDict([("title", self.title), ("columns", list(self.columns)),
                            ("provenance", _plain(self.provenance)), ("rows", self.rows)])

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2)

    def to_csv(self):
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\r\n")
        writer.writerow(self.columns)
        for row in self.rows:
            writer.writerow([format_cell(row[c]) for c in self.columns])
        return out.getvalue()

    def write(self, directory, name):
        """Write ``<name>.csv`` and ``<name>.json`` into ``directory``

        Returns
        -------
        list of str
            The paths written
        """
        if not os.path.isdir(directory):
            os.makedirs(directory)
        paths = []
        for ext, text in (("csv", self.to_csv()), ("json", self.to_json() + "\n")):
            path = os.path.join(directory, "{}.{}".format(name, ext))
            with io.open(path, "w", encoding="utf-8", newline="") as f:
                f.write(text)
            paths.append(path)
        logger.info("Wrote %s", ", ".join(paths))
        return paths

    @classmethod
    def from_dict(cls, tree):
        return cls(tree["title"], tree["columns"], tree.get("provenance"), tree.get("rows"))

    @classmethod
    def read_json(cls, path):
        with io.open(path, "r", encoding="utf-8") as f:
            return cls.from_dict(json.load(f, object_pairs_hook=OrderedDict))

    @classmethod
    def read_csv(cls, path, title=None):
        """Read a CSV table back; numbers keep the five written decimals"""
        with io.open(path, "r", encoding="utf-8", newline="") as f:
            reader = csv.reader(f)
            columns = next(reader)
            rows = [OrderedDict(zip(columns, (_parse_cell(c) for c in line))) for line in reader]
        if title is None:
            title = os.path.splitext(os.path.basename(path))[0]
        return cls(title, columns, rows=rows)

    def __eq__(self, other):
        return isinstance(other, ResultTable) and self.as_dict() == other.as_dict()

    def __ne__(self, other):
        return not self == other

    def __repr__(self):
        return "ResultTable({0!r}, {1} rows x {2} columns)".format(self.title, len(self.rows), len(self.columns))


def provenance(config, **extra):
    """Provenance block of a study: enough to rerun any row

    Nothing time- or host-dependent is included so that outputs are
    reproducible byte for byte.
    """
    info = OrderedDict()
    info["tool"] = "fgmplate"
    info["version"] = __version__
    info["config_hash"] = config.config_hash()
    info["scheme"] = config["material"]["scheme"]
    info["quadrature"] = OrderedDict([("thickness_points_per_layer", config["quadrature"]["thickness"]),
                                      ("in_plane_order", config["quadrature"]["in_plane"])])
    info["constitutive"] = ("3-D isotropic (xx, yy, zz, xy) block for HSDT13/HSDT11; "
                            "reduced plane stress for HSDT9/FSDT5")
    info["convention"] = config["evaluation"]["convention"]
    info.update(extra)
    return _plain(info)


def write_profile_csv(path, rows, columns=("case", "model", "mode", "station_x", "station_y",
                                           "quantity", "z", "value", "layer")):
    """Write layer-tagged through-thickness samples for external plotting"""
    table = ResultTable("profile", columns, rows=rows)
    directory = os.path.dirname(path)
    if directory and not os.path.isdir(directory):
        os.makedirs(directory)
    # Profiles keep full precision, interface duplicates included
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\r\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow(["{:.10e}".format(row[c]) if isinstance(row[c], float) else format_cell(row[c])
                         for c in table.columns])
    with io.open(path, "w", encoding="utf-8", newline="") as f:
        f.write(out.getvalue())
    logger.info("Wrote %s", path)
    return path


class DataFile(object):
    """Minimal netCDF file wrapper

    Dimensions are named explicitly when writing, unlike guessing from
    the array rank.

    Parameters
    ----------
    filename : str
        File to open
    write : bool, optional
        Open for appending
    create : bool, optional
        Create a new file (overwrites)
    format : str, optional
        netCDF format of new files

    Examples
    --------

    >>> with DataFile("modes.nc", create=True) as f:
    ...     f.write("omega", omega, ("mode",))

    """

    def __init__(self, filename=None, write=False, create=False, format="NETCDF4"):
        if not has_netCDF:
            raise ImportError("DataFile: the netCDF4 module is required")
        self.handle = None
        if filename is not None:
            self.open(filename, write=write, create=create, format=format)

    def open(self, filename, write=False, create=False, format="NETCDF4"):
        if create:
            self.handle = Dataset(filename, "w", format=format)
        elif write:
            self.handle = Dataset(filename, "a")
        else:
            self.handle = Dataset(filename, "r")
        self.writeable = write or create

    def close(self):
        if self.handle is not None:
            self.handle.close()
        self.handle = None

    def __enter__(self):
        return self

    def __exit__(self, type, value, traceback):
        self.close()

    def keys(self):
        return list(self.handle.variables.keys())

    def read(self, name):
        return np.ma.getdata(self.handle.variables[name][...])

    def __getitem__(self, name):
        return self.read(name)

    def write(self, name, data, dimensions=(), attributes=None):
        if not self.writeable:
            raise FGMPlateError("File not writeable. Open with write=True keyword")
        data = np.asarray(data)
        if data.ndim != len(dimensions):
            raise FGMPlateError("Variable '{}' has rank {} but {} dimension names".format(
                name, data.ndim, len(dimensions)))
        for dim, size in zip(dimensions, data.shape):
            if dim not in self.handle.dimensions:
                self.handle.createDimension(dim, size)
            elif len(self.handle.dimensions[dim]) != size:
                raise FGMPlateError("Dimension '{}' already has size {}".format(
                    dim, len(self.handle.dimensions[dim])))
        var = self.handle.createVariable(name, data.dtype, tuple(dimensions))
        var[...] = data
        for key, value in (attributes or {}).items():
            var.setncattr(key, value)

    def set_attribute(self, name, value):
        self.handle.setncattr(name, value)

    def attribute(self, name):
        return self.handle.getncattr(name)


def write_mode_archive(path, modal, case_key, frequency_parameters):
    """Archive eigenvalues, frequency parameters and nodal mode shapes

    Variables: ``eigenvalue(mode)``, ``omega(mode)``, ``Omega(mode)``,
    ``x(node)``, ``y(node)`` and ``dofs(mode, node, dof)`` with the DOF
    labels in the ``dof_labels`` global attribute.
    """
    directory = os.path.dirname(path)
    if directory and not os.path.isdir(directory):
        os.makedirs(directory)
    mesh = modal.system.mesh
    with DataFile(path, create=True) as f:
        f.set_attribute("case", case_key)
        f.set_attribute("model", modal.system.model.name)
        f.set_attribute("dof_labels", " ".join(DOF_LABELS))
        f.set_attribute("version", __version__)
        f.write("eigenvalue", modal.eigenvalues, ("mode",), {"units": "rad^2/s^2"})
        f.write("omega", modal.omega, ("mode",), {"units": "rad/s"})
        f.write("Omega", np.asarray(frequency_parameters), ("mode",))
        f.write("x", mesh.nodes[:, 0], ("node",), {"units": "m"})
        f.write("y", mesh.nodes[:, 1], ("node",), {"units": "m"})
        f.write("dofs", modal.nodal_modes(), ("mode", "node", "dof"))
    logger.info("Wrote %s", path)
    return path


def read_mode_archive(path):
    """Read back an archive written by :py:func:`write_mode_archive` as a dict"""
    with DataFile(path) as f:
        data = {name: f.read(name) for name in f.keys()}
        data["case"] = f.attribute("case")
        data["model"] = f.attribute("model")
        data["dof_labels"] = f.attribute("dof_labels").split()
    return data
