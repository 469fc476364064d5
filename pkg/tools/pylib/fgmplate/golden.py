"""Published reference values bundled for acceptance checks

Each fixture describes the conditions under which its values apply
(material pair, homogenization, convention, grading) and a list of
entries keyed by model, ratio, gradient index, side-to-thickness ratio
and mesh. :py:func:`check` compares the rows of a
:py:class:`~fgmplate.results.ResultTable` with every entry that matches
them and raises :py:class:`~fgmplate.errors.AcceptanceError` listing the
values outside tolerance.

:py:func:`fixture_config` returns a configuration dictionary that
reproduces a fixture, for the integrated tests and ``--check golden``.

"""

from __future__ import division

import copy
import logging
from collections import OrderedDict, namedtuple

from .errors import AcceptanceError, InvalidParameterError

logger = logging.getLogger(__name__)


class Entry(namedtuple("Entry", ["model", "ratio", "n", "a_over_h", "mesh", "values", "tolerance"])):
    """Reference values of one case

    ``values`` maps a result column (``w``, ``Omega1``, ...) to its
    reference value, ``tolerance`` maps the same columns to the allowed
    relative error.
    """
    __slots__ = ()

    def matches(self, row):
        return (row.get("model") == self.model
                and row.get("ratio") == self.ratio
                and _close(row.get("n"), self.n)
                and _close(row.get("a_over_h"), self.a_over_h)
                and (self.mesh is None or row.get("mesh") == self.mesh))


class Fixture(namedtuple("Fixture", ["name", "title", "conditions", "config", "entries"])):
    """A table of reference values

    ``conditions`` are row columns that must hold for an entry to apply
    (e.g. the homogenization scheme); ``config`` is the base configuration
    that reproduces the table.
    """
    __slots__ = ()

    def applies_to(self, row):
        return all(row.get(k) == v for k, v in self.conditions.items())


def _close(a, b):
    try:
        return abs(float(a) - float(b)) <= 1e-9 * max(1.0, abs(float(b)))
    except (TypeError, ValueError):
        return False


def _entries(models, ratios, n_values, a_over_h, rows, mesh, tolerance, columns):
    """Expand a printed table block into :py:class:`Entry` objects

    ``rows`` maps a model name to one list of values per ratio; each list
    holds ``len(columns)`` values for every gradient index in turn.
    """
    out = []
    for model in models:
        for ratio, values in zip(ratios, rows[model]):
            width = len(columns)
            for i, n in enumerate(n_values[ratio]):
                chunk = values[i * width:(i + 1) * width]
                out.append(Entry(model, ratio, n, a_over_h, mesh,
                                 OrderedDict(zip(columns, chunk)),
                                 OrderedDict((c, tolerance[model][c]) for c in columns)))
    return out


STATIC_COLUMNS = ("u", "w", "sxx", "sxy", "sxz")

# Stress evaluation points are not part of the published tables, hence
# the looser stress tolerance
_STATIC_TOL = {"HSDT13": OrderedDict([("u", 0.01), ("w", 0.01), ("sxx", 0.03), ("sxy", 0.03),
                                      ("sxz", 0.03)])}


def _static_fixture(name, n, rows_by_aoh):
    """Type A sandwich under a top-face pressure

    The published deflection is sampled on the bottom face, with u and
    the in-plane stresses.
    """
    entries = []
    for aoh, rows in rows_by_aoh.items():
        entries.extend(_entries(["HSDT13"], ["1-1-1", "1-2-1"], {"1-1-1": [n], "1-2-1": [n]}, aoh,
                                rows, "8x8", _STATIC_TOL, STATIC_COLUMNS))
    config = OrderedDict([
        ("analysis", OrderedDict([("type", "static"), ("model", "HSDT13")])),
        ("layup", OrderedDict([("type", "A"), ("ratio", ["1-1-1", "1-2-1"]), ("n", n)])),
        ("plate", OrderedDict([("a_over_h", sorted(rows_by_aoh))])),
        ("load", OrderedDict([("kind", "mechanical")])),
        ("evaluation", OrderedDict([("quantities", list(STATIC_COLUMNS))])),
    ])
    return Fixture(name, "Type A, mechanical, n = {:g}".format(n),
                   OrderedDict([("type", "A"), ("scheme", "RuleOfMixtures"), ("loading", "mechanical"),
                                ("convention", "standard"), ("materials", "alumina/aluminum"),
                                ("w_point", "0.5,0.5,-0.5")]),
                   config, entries)


STATIC_N05 = _static_fixture("static-a-n0.5", 0.5, OrderedDict([
    (5.0, {"HSDT13": [[0.01827, 0.01257, -0.05962, 0.03131, 0.26308],
                      [0.01677, 0.01158, -0.05469, 0.02872, 0.26010]]}),
    (10.0, {"HSDT13": [[0.01818, 0.01181, -0.05822, 0.03114, 0.26438],
                       [0.01662, 0.01081, -0.05323, 0.02847, 0.26150]]}),
    (100.0, {"HSDT13": [[0.01813, 0.01154, -0.05771, 0.03107, 0.26548],
                        [0.01655, 0.01054, -0.05270, 0.02838, 0.26255]]}),
]))

STATIC_N5 = _static_fixture("static-a-n5", 5.0, OrderedDict([
    (5.0, {"HSDT13": [[0.04232, 0.02828, -0.13876, 0.07250, 0.31653],
                      [0.03233, 0.02151, -0.10626, 0.05538, 0.31370]]}),
    (10.0, {"HSDT13": [[0.04323, 0.02785, -0.13860, 0.07407, 0.31601],
                       [0.03267, 0.02102, -0.10483, 0.05598, 0.31413]]}),
    (100.0, {"HSDT13": [[0.04351, 0.02771, -0.13853, 0.07460, 0.31667],
                        [0.03277, 0.02086, -0.10432, 0.05617, 0.31504]]}),
]))


# Monolithic Al/SiC plate, Mori-Tanaka, benchmark scaling. The ceramic
# fraction runs from 0 at the bottom to 0.5 at the top with n = 2, and
# every quantity is sampled on the top face z = +h/2.
_ELASTICITY_TOL = OrderedDict([("u", 0.005), ("w", 0.005), ("sxx", 0.03), ("sxy", 0.03)])

ELASTICITY = Fixture(
    "elasticity-mt", "Monolithic Al/SiC, Mori-Tanaka, n = 2, V_c from 0 to 0.5",
    OrderedDict([("type", "FGM"), ("scheme", "MoriTanaka"), ("loading", "mechanical"),
                 ("convention", "elasticity-benchmark"), ("materials", "sic/aluminum"),
                 ("u_point", "0,0.5,0.5"), ("w_point", "0.5,0.5,0.5")]),
    OrderedDict([
        ("analysis", OrderedDict([("type", "static"), ("model", "HSDT11")])),
        ("material", OrderedDict([("ceramic", "sic"), ("metal", "aluminum"), ("scheme", "MoriTanaka")])),
        ("layup", OrderedDict([("type", "FGM"), ("ratio", "1-1-1"), ("n", 2.0),
                               ("fraction_bounds", [0.0, 0.5])])),
        ("plate", OrderedDict([("a_over_h", [5.0, 40.0])])),
        ("evaluation", OrderedDict([("convention", "elasticity-benchmark"),
                                    ("quantities", ["u", "w", "sxx", "sxy"]),
                                    ("points", OrderedDict([("u", [0.0, 0.5, 0.5]),
                                                            ("w", [0.5, 0.5, 0.5]),
                                                            ("sxx", [0.5, 0.5, 0.5]),
                                                            ("sxy", [0.0, 0.0, 0.5])]))])),
    ]),
    [Entry("HSDT11", "1-1-1", 2.0, 5.0, "8x8",
           OrderedDict([("u", -2.9129), ("w", 2.5535), ("sxx", 2.7549), ("sxy", -1.5783)]),
           _ELASTICITY_TOL),
     Entry("HSDT11", "1-1-1", 2.0, 40.0, "8x8",
           OrderedDict([("u", -2.8967), ("w", 2.1152), ("sxx", 2.5494), ("sxy", -1.5704)]),
           _ELASTICITY_TOL)])


THERMAL_COLUMNS = ("u", "w", "sxx", "sxy")
_THERMAL_TOL = {"HSDT13": OrderedDict([("u", 0.01), ("w", 0.01), ("sxx", 0.03), ("sxy", 0.03)])}

# Expansion coefficient of alumina the thermal tables were computed with
THERMAL_ALUMINA_EXPANSION = 11.13e-6


def _thermal_fixture(name, n, rows_by_aoh):
    entries = []
    for aoh, rows in rows_by_aoh.items():
        entries.extend(_entries(["HSDT13"], ["1-1-1", "1-2-1"], {"1-1-1": [n], "1-2-1": [n]}, aoh,
                                rows, "8x8", _THERMAL_TOL, THERMAL_COLUMNS))
    ceramic = OrderedDict([("preset", "alumina"), ("name", "alumina-thermal"),
                           ("alpha", THERMAL_ALUMINA_EXPANSION)])
    config = OrderedDict([
        ("analysis", OrderedDict([("type", "static"), ("model", "HSDT13")])),
        ("material", OrderedDict([("ceramic", ceramic)])),
        ("layup", OrderedDict([("type", "A"), ("ratio", ["1-1-1", "1-2-1"]), ("n", n)])),
        ("plate", OrderedDict([("a_over_h", sorted(rows_by_aoh))])),
        ("load", OrderedDict([("kind", "thermal")])),
        ("evaluation", OrderedDict([("quantities", list(THERMAL_COLUMNS))])),
    ])
    return Fixture(name, "Type A, thermal, n = {:g}".format(n),
                   OrderedDict([("type", "A"), ("scheme", "RuleOfMixtures"), ("loading", "thermal"),
                                ("convention", "standard"), ("materials", "alumina-thermal/aluminum"),
                                ("w_point", "0.5,0.5,-0.5")]),
                   config, entries)


THERMAL_N05 = _thermal_fixture("thermal-a-n0.5", 0.5, OrderedDict([
    (5.0, {"HSDT13": [[0.14143, 0.09551, 1.13358, 0.34643], [0.13275, 0.08966, 1.21775, 0.32518]]}),
    (10.0, {"HSDT13": [[0.13902, 0.08987, 1.14995, 0.34052], [0.13041, 0.08431, 1.23367, 0.31943]]}),
    (100.0, {"HSDT13": [[0.13821, 0.08801, 1.15545, 0.33851], [0.12962, 0.08254, 1.23900, 0.31747]]}),
]))

THERMAL_N5 = _thermal_fixture("thermal-a-n5", 5.0, OrderedDict([
    (5.0, {"HSDT13": [[0.18232, 0.12238, 0.73973, 0.44652], [0.15938, 0.10641, 0.96614, 0.39045]]}),
    (10.0, {"HSDT13": [[0.17888, 0.11544, 0.76316, 0.43812], [0.15522, 0.10004, 0.99415, 0.38025]]}),
    (100.0, {"HSDT13": [[0.17771, 0.11317, 0.77116, 0.43527], [0.15382, 0.09795, 1.00359, 0.37676]]}),
]))


def _omega(values, tol):
    cols = ["Omega{}".format(i + 1) for i in range(len(values))]
    return OrderedDict(zip(cols, values)), OrderedDict((c, tol if i == 0 else 0.005)
                                                       for i, c in enumerate(cols))


def _convergence_entries():
    sequences = OrderedDict([
        ((1.0, 5.0), [1.2297, 1.2294, 1.2293, 1.2293]),
        ((1.0, 10.0), [1.3025, 1.3020, 1.3019, 1.3019]),
        ((10.0, 5.0), [0.8958, 0.8955, 0.8955, 0.8955]),
        ((10.0, 10.0), [0.9423, 0.9419, 0.9418, 0.9418]),
    ])
    entries = []
    for (n, aoh), omegas in sequences.items():
        for mesh, omega in zip(("4x4", "6x6", "8x8", "16x16"), omegas):
            values, tol = _omega([omega], 0.002)
            entries.append(Entry("HSDT13", "2-1-2", n, aoh, mesh, values, tol))
    return entries


CONVERGENCE = Fixture(
    "convergence-a-212", "Type A 2-1-2 mesh convergence",
    OrderedDict([("type", "A"), ("scheme", "RuleOfMixtures"), ("materials", "alumina/aluminum")]),
    OrderedDict([
        ("analysis", OrderedDict([("type", "convergence"), ("model", "HSDT13"), ("modes", 6)])),
        ("layup", OrderedDict([("type", "A"), ("ratio", "2-1-2"), ("n", [1.0, 10.0])])),
        ("plate", OrderedDict([("a_over_h", [5.0, 10.0])])),
        ("mesh", OrderedDict([("sequence", [[4, 4], [6, 6], [8, 8], [16, 16]])])),
    ]),
    _convergence_entries())

SIX_MODES = Fixture(
    "modes-a-212", "Type A 2-1-2, first six modes on 8x8",
    CONVERGENCE.conditions,
    OrderedDict([
        ("analysis", OrderedDict([("type", "modal"), ("model", "HSDT13"), ("modes", 6)])),
        ("layup", OrderedDict([("type", "A"), ("ratio", "2-1-2"), ("n", [1.0, 10.0])])),
        ("plate", OrderedDict([("a_over_h", 5.0)])),
    ]),
    [Entry("HSDT13", "2-1-2", 1.0, 5.0, "8x8",
           *_omega([1.2293, 2.6868, 2.6868, 2.8009, 2.8345, 4.1568], 0.005)),
     Entry("HSDT13", "2-1-2", 10.0, 5.0, "8x8", *_omega([0.8955, 2.0618], 0.005))])


_TYPE_A_N = OrderedDict([("1-1-1", [0.0, 0.5, 1.0, 5.0]), ("1-2-1", [0.5, 1.0, 5.0]),
                         ("2-2-1", [0.5, 1.0, 5.0])])


def _modal_fixture(name, title, grading, tolerance, blocks):
    entries = []
    for aoh, rows in blocks.items():
        models = [m for m in ("HSDT13", "HSDT11", "HSDT9", "FSDT5") if m in rows]
        tol = {m: {"Omega1": tolerance(m, aoh)} for m in models}
        entries.extend(_entries(models, list(_TYPE_A_N), _TYPE_A_N, aoh, rows, "8x8", tol, ("Omega1",)))
    config = OrderedDict([
        ("analysis", OrderedDict([("type", "modal"), ("model", ["HSDT13", "HSDT11", "HSDT9", "FSDT5"]),
                                  ("modes", 1)])),
        ("layup", OrderedDict([("type", grading), ("ratio", list(_TYPE_A_N)), ("n", [0.0, 0.5, 1.0, 5.0])])),
        ("plate", OrderedDict([("a_over_h", sorted(blocks))])),
    ])
    return Fixture(name, title,
                   OrderedDict([("type", grading), ("scheme", "RuleOfMixtures"),
                                ("materials", "alumina/aluminum")]),
                   config, entries)


def _type_a_tolerance(model, a_over_h):
    return 0.002 if model == "HSDT13" else 0.005


def _type_b_tolerance(model, a_over_h):
    if a_over_h >= 100:
        return 0.002
    return 0.005


MODAL_A = _modal_fixture("modal-a", "Type A fundamental frequency", "A", _type_a_tolerance, OrderedDict([
    (5.0, OrderedDict([
        ("HSDT13", [[1.6774, 1.4219, 1.2778, 0.9986], [1.4696, 1.3536, 1.1192], [1.4455, 1.3144, 1.0565]]),
        ("HSDT11", [[1.6774, 1.4219, 1.2778, 0.9988], [1.4696, 1.3537, 1.1193], [1.4455, 1.3144, 1.0566]]),
        ("HSDT9", [[1.6774, 1.4152, 1.2714, 0.9937], [1.4626, 1.3468, 1.1131], [1.4387, 1.3078, 1.0510]]),
        ("FSDT5", [[1.6689, 1.4076, 1.2628, 0.9860], [1.4565, 1.3398, 1.1053], [1.4320, 1.3002, 1.0444]]),
    ])),
    (10.0, OrderedDict([
        ("HSDT13", [[1.8269, 1.5214, 1.3553, 1.0455], [1.5768, 1.4415, 1.1757], [1.5494, 1.3977, 1.1100]]),
        ("HSDT11", [[1.8269, 1.5214, 1.3553, 1.0456], [1.5768, 1.4415, 1.1758], [1.5494, 1.3977, 1.1100]]),
        ("HSDT9", [[1.8245, 1.5193, 1.3553, 1.0441], [1.5746, 1.4394, 1.1740], [1.5472, 1.3957, 1.1084]]),
        ("FSDT5", [[1.8242, 1.5168, 1.3506, 1.0418], [1.5726, 1.4371, 1.1715], [1.5451, 1.3932, 1.1064]]),
    ])),
    (100.0, OrderedDict([
        ("HSDT13", [[1.8884, 1.5605, 1.3852, 1.0631], [1.6192, 1.4756, 1.1970], [1.5904, 1.4300, 1.1303]]),
        ("HSDT11", [[1.8884, 1.5605, 1.3852, 1.0631], [1.6192, 1.4756, 1.1970], [1.5904, 1.4300, 1.1303]]),
        ("HSDT9", [[1.8883, 1.5605, 1.3851, 1.0631], [1.6192, 1.4756, 1.1970], [1.5904, 1.4300, 1.1302]]),
        ("FSDT5", [[1.8883, 1.5605, 1.3851, 1.0631], [1.6192, 1.4756, 1.1970], [1.5904, 1.4299, 1.1302]]),
    ])),
]))

# Only the HSDT13 rows of the thick and moderately thick Type B plates
# are self-consistent across models; the thin-plate rows agree for all.
MODAL_B = _modal_fixture("modal-b", "Type B fundamental frequency", "B", _type_b_tolerance, OrderedDict([
    (5.0, OrderedDict([
        ("HSDT13", [[1.0893, 1.1511, 1.1701, 1.2162], [1.1663, 1.1952, 1.2712], [1.2031, 1.2421, 1.3312]]),
    ])),
    (10.0, OrderedDict([
        ("HSDT13", [[1.2087, 1.2392, 1.2524, 1.2935], [1.2598, 1.2806, 1.3513], [1.2865, 1.3238, 1.4180]]),
    ])),
    (100.0, OrderedDict([
        ("HSDT13", [[1.2616, 1.2751, 1.2854, 1.3239], [1.2981, 1.3148, 1.3825], [1.3198, 1.3559, 1.4519]]),
        ("HSDT11", [[1.2617, 1.2751, 1.2854, 1.3239], [1.2981, 1.3148, 1.3825], [1.3198, 1.3559, 1.4519]]),
        ("HSDT9", [[1.2617, 1.2751, 1.2854, 1.3239], [1.2981, 1.3148, 1.3825], [1.3198, 1.3559, 1.4519]]),
        ("FSDT5", [[1.2618, 1.2751, 1.2854, 1.3239], [1.2981, 1.3148, 1.3825], [1.3198, 1.3559, 1.4518]]),
    ])),
]))

FIXTURES = OrderedDict((f.name, f) for f in (ELASTICITY, STATIC_N05, STATIC_N5, THERMAL_N05, THERMAL_N5,
                                              CONVERGENCE, SIX_MODES, MODAL_A, MODAL_B))

# Fixtures consulted by each study type
FIXTURES_BY_STUDY = {
    "static": ("elasticity-mt", "static-a-n0.5", "static-a-n5", "thermal-a-n0.5", "thermal-a-n5"),
    "modal": ("modes-a-212", "modal-a", "modal-b"),
    "convergence": ("convergence-a-212",),
    "profile": (),
}


def get_fixture(name):
    try:
        return FIXTURES[name]
    except KeyError:
        raise InvalidParameterError("Unknown reference table '{}' (known: {})".format(
            name, ", ".join(FIXTURES)))


def fixture_config(name):
    """Configuration dictionary that reproduces the named fixture"""
    return copy.deepcopy(get_fixture(name).config)


Comparison = namedtuple("Comparison", ["fixture", "case", "column", "computed", "reference",
                                       "relative_error", "tolerance"])


def _passed(comparison):
    return comparison.relative_error <= comparison.tolerance


def compare(table, fixtures=None):
    """All comparisons between ``table`` rows and matching reference entries

    Parameters
    ----------
    table : ResultTable
    fixtures : sequence of str, optional
        Fixture names; default: all fixtures for the table's study type

    Returns
    -------
    list of Comparison

    """
    if fixtures is None:
        fixtures = FIXTURES_BY_STUDY.get(table.title, tuple(FIXTURES))
    out = []
    for name in fixtures:
        fixture = get_fixture(name)
        for row in table:
            if not fixture.applies_to(row):
                continue
            for entry in fixture.entries:
                if not entry.matches(row):
                    continue
                for column, reference in entry.values.items():
                    computed = row.get(column)
                    if computed is None:
                        continue
                    error = abs(computed - reference) / abs(reference)
                    out.append(Comparison(name, row.get("case"), column, computed, reference, error,
                                          entry.tolerance[column]))
    return out


def check(table, fixtures=None):
    """Compare ``table`` with the reference values and fail on any mismatch

    Returns
    -------
    list of Comparison
        Every comparison made (all within tolerance)

    Raises
    ------
    AcceptanceError
        If any value is outside its tolerance

    """
    comparisons = compare(table, fixtures)
    if not comparisons:
        logger.warning("No row of '%s' matches a reference table; nothing was checked", table.title)
        return comparisons
    failed = [c for c in comparisons if not _passed(c)]
    for c in comparisons:
        logger.debug("%s %s %s: %.5f vs %.5f (%.3f%%)", c.fixture, c.case, c.column, c.computed,
                     c.reference, 100 * c.relative_error)
    logger.info("Reference check: %d of %d values within tolerance", len(comparisons) - len(failed),
                len(comparisons))
    if failed:
        lines = ["{0} {1} {2}: computed {3:.5f}, reference {4:.5f}, error {5:.2%} > {6:.2%}".format(
            c.fixture, c.case, c.column, c.computed, c.reference, c.relative_error, c.tolerance)
            for c in failed]
        raise AcceptanceError("{} value(s) outside tolerance:\n  {}".format(len(failed), "\n  ".join(lines)))
    return comparisons
