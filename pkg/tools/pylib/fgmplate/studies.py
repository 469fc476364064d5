"""Static, modal, convergence and profile studies over parameter sweeps

Every study runs the cases of an :py:class:`~fgmplate.options.AnalysisConfig`
(the Cartesian product of the sweep keys) and collects one row per case,
or per case and mesh for convergence studies, into a
:py:class:`~fgmplate.results.ResultTable`. Rows are always in sorted case
order, whatever the number of worker processes.

"""

from __future__ import division

import logging
import multiprocessing
import os
from collections import OrderedDict

import numpy as np

from .analysis import (DISPLACEMENTS, EVALUATION_POINTS, ScalingParameters, scale_factors,
                       solve_modes, solve_static, static_report, through_thickness_profile)
from .assembly import Load, assemble
from .errors import FGMPlateError, SolverError
from .fgmwarnings import AssumptionWarning, alwayswarn, recording
from .kinematics import ENERGY_EQUIVALENCE, ModelKind
from .material import DEFAULT_ALUMINA_EXPANSION
from .mesh import build_mesh
from .progress import CaseProgress
from .results import ResultTable, provenance, write_mode_archive, write_profile_csv

logger = logging.getLogger(__name__)

CASE_COLUMNS = ["case", "model", "type", "ratio", "n", "a_over_h", "mesh", "scheme", "materials"]

# Relative change below which two frequencies count as equal
_MONOTONE_TOL = 1e-10


def mesh_label(nx, ny):
    return "{}x{}".format(nx, ny)


def point_label(point):
    """Compact text of a fractional evaluation point, e.g. ``0,0.5,-0.5``"""
    return ",".join(p if p == "max" else "{:g}".format(p) for p in point)


def _materials(config):
    ceramic, metal = config.phases()
    return "{}/{}".format(ceramic.name, metal.name)


def _case_row(config, case, nx, ny):
    return OrderedDict([("case", case.key(config.grading)), ("model", case.model),
                        ("type", config.grading), ("ratio", case.ratio), ("n", case.n),
                        ("a_over_h", case.a_over_h), ("mesh", mesh_label(nx, ny)),
                        ("scheme", config["material"]["scheme"]), ("materials", _materials(config))])


def config_load(config):
    """The :py:class:`~fgmplate.assembly.Load` described by the ``load`` section"""
    settings = config["load"]
    return Load(settings["kind"], settings["amplitude"], settings["distribution"], settings["surface"])


def case_system(config, case, nx=None, ny=None, load=None):
    """Assemble the simply supported system of one case"""
    nx = config["mesh"]["nx"] if nx is None else nx
    ny = config["mesh"]["ny"] if ny is None else ny
    a, b, _ = config.dimensions(case)
    return assemble(build_mesh(a, b, nx, ny), config.plate_model(case), config.layup(case),
                    config.scheme, load=load, thickness_order=config["quadrature"]["thickness"],
                    order=config["quadrature"]["in_plane"],
                    shear_order=config["quadrature"]["shear"])


def _identify(case_key, func, *args, **kwargs):
    """Run ``func`` and prefix solver errors with the case that raised them"""
    try:
        return func(*args, **kwargs)
    except SolverError as err:
        err.args = ("case {}: {}".format(case_key, err),)
        raise


def evaluation_points(config):
    """Fractional evaluation points with the configured overrides applied"""
    points = OrderedDict((q, list(p)) for q, p in EVALUATION_POINTS.items())
    points.update(config["evaluation"]["points"])
    return points


def static_quantities(config):
    quantities = config["evaluation"]["quantities"]
    return list(EVALUATION_POINTS) if quantities is None else list(quantities)


def _warn_assumptions(config):
    """Warnings a reader of the results must see, once per study

    Returns the messages, for the provenance block.
    """
    models = [ModelKind.from_name(m) for m in config.sweep("analysis:model")]
    with recording() as notes:
        correction = config["analysis"]["shear_correction"]
        if ModelKind.FSDT5 in models and correction == ENERGY_EQUIVALENCE:
            alwayswarn("FSDT5 uses the energy-equivalence shear correction of the graded section",
                       AssumptionWarning)
        elif ModelKind.FSDT5 in models and correction is not None:
            alwayswarn("FSDT5 uses the constant shear correction factor {:.6g}".format(correction),
                       AssumptionWarning)
        if config.analysis_type in ("static", "profile") and config["load"]["kind"] == "thermal":
            for phase in config.phases():
                if phase.name == "alumina" and phase.thermal_expansion == DEFAULT_ALUMINA_EXPANSION:
                    alwayswarn("Thermal load uses the default alumina expansion coefficient {:g}/K; "
                               "set material:ceramic alpha to override".format(DEFAULT_ALUMINA_EXPANSION),
                               AssumptionWarning)
    return notes


def _run_cases(func, config, jobs, progress=False, label="Cases"):
    """Run ``func(config, *job)`` for every job, in parallel if configured

    Results come back in job order.
    """
    workers = min(config["analysis"]["workers"], len(jobs)) if jobs else 1
    bar = CaseProgress(len(jobs), label=label, enabled=progress)
    results = []
    if workers > 1:
        pool = multiprocessing.Pool(workers)
        try:
            pending = [pool.apply_async(func, args=(config,) + tuple(job)) for job in jobs]
            for result in pending:
                results.append(result.get())
                bar.advance()
        finally:
            pool.terminate()
            pool.join()
    else:
        for job in jobs:
            results.append(func(config, *job))
            bar.advance()
    bar.finish()
    return results


def _static_case(config, case):
    nx, ny = config["mesh"]["nx"], config["mesh"]["ny"]
    key = case.key(config.grading)
    system = case_system(config, case, load=config_load(config))
    solution = _identify(key, solve_static, system, config["analysis"]["dense_limit"])

    quantities = static_quantities(config)
    points = evaluation_points(config)
    evaluation = config["evaluation"]
    report = static_report(solution, quantities, points, evaluation["convention"],
                           evaluation["reference_modulus"])
    row = _case_row(config, case, nx, ny)
    row["loading"] = report.loading
    row["convention"] = report.convention
    row.update(report.values)
    for q in quantities:
        row["{}_point".format(q)] = point_label(points[q])
    row["residual"] = solution.residual
    logger.info("%s: %s", key, ", ".join("{}={:.5f}".format(q, report[q]) for q in quantities))
    return row


def run_static(config, progress=False):
    """Nondimensional displacements and stresses of every case

    Returns
    -------
    ResultTable
        Titled ``static``; one row per case with the requested
        quantities and the evaluation point of each

    """
    assumptions = _warn_assumptions(config)
    quantities = static_quantities(config)
    columns = (CASE_COLUMNS + ["loading", "convention"] + quantities
               + ["{}_point".format(q) for q in quantities] + ["residual"])
    points = evaluation_points(config)
    table = ResultTable("static", columns, provenance(
        config, points=OrderedDict((q, points[q]) for q in quantities), load=config["load"],
        assumptions=assumptions))
    for row in _run_cases(_static_case, config, [(c,) for c in config.cases()], progress, "static"):
        table.add_row(**row)
    return table


def _omega_columns(m):
    return ["Omega{}".format(i + 1) for i in range(m)]


def _modal_values(config, system):
    modal = solve_modes(system, config["analysis"]["modes"], config["analysis"]["dense_limit"])
    evaluation = config["evaluation"]
    omegas = modal.frequency_parameters(evaluation["reference_density"], evaluation["reference_modulus"])
    return modal, omegas


def _archive(config, directory, key, modal, omegas):
    if directory is not None and config["output"]["netcdf"]:
        write_mode_archive(os.path.join(directory, "{}-modes.nc".format(key)), modal, key, omegas)


def _modal_case(config, case, directory=None):
    nx, ny = config["mesh"]["nx"], config["mesh"]["ny"]
    key = case.key(config.grading)
    modal, omegas = _identify(key, _modal_values, config, case_system(config, case))
    _archive(config, directory, key, modal, omegas)
    row = _case_row(config, case, nx, ny)
    row.update(zip(_omega_columns(len(omegas)), omegas.tolist()))
    row["residual"] = float(np.max(modal.residuals()))
    logger.info("%s: Omega1 = %.5f", key, omegas[0])
    return row


def run_modal(config, directory=None, progress=False):
    """Frequency parameters of the lowest ``analysis:modes`` modes per case

    With a ``directory`` and ``output:netcdf`` set, each case's modes are
    also archived as ``<case>-modes.nc``.
    """
    assumptions = _warn_assumptions(config)
    m = config["analysis"]["modes"]
    columns = CASE_COLUMNS + _omega_columns(m) + ["residual"]
    table = ResultTable("modal", columns, provenance(config, modes=m, assumptions=assumptions))
    jobs = [(c, directory) for c in config.cases()]
    for row in _run_cases(_modal_case, config, jobs, progress, "modal"):
        table.add_row(**row)
    return table


def _convergence_case(config, case):
    key = case.key(config.grading)
    rows = []
    previous, step = None, None
    for nx, ny in config["mesh"]["sequence"]:
        system = case_system(config, case, nx, ny)
        _, omegas = _identify(key, _modal_values, config, system)
        row = _case_row(config, case, nx, ny)
        row["nfree"] = system.nfree
        row.update(zip(_omega_columns(len(omegas)), omegas.tolist()))

        monotone = True
        omega = float(omegas[0])
        if previous is not None:
            change = omega - previous
            if change > _MONOTONE_TOL * abs(previous):
                monotone = False
            if step is not None and abs(change) > abs(step) + _MONOTONE_TOL * abs(previous):
                monotone = False
            row["change"] = change
            step = change
        row["monotone"] = monotone
        if not monotone:
            logger.warning("%s: non-monotone convergence of Omega1 at mesh %s", key, row["mesh"])
        previous = omega
        rows.append(row)
        logger.info("%s %s: Omega1 = %.5f", key, row["mesh"], omega)
    return rows


def run_convergence(config, progress=False):
    """Frequency parameters over the ``mesh:sequence`` refinements of each case

    Each row carries the change of Omega1 from the previous mesh and a
    ``monotone`` flag that is false when Omega1 rises or the change grows.
    """
    assumptions = _warn_assumptions(config)
    m = config["analysis"]["modes"]
    columns = CASE_COLUMNS + ["nfree"] + _omega_columns(m) + ["change", "monotone"]
    table = ResultTable("convergence", columns, provenance(config, modes=m,
                                                           meshes=config["mesh"]["sequence"],
                                                           assumptions=assumptions))
    for rows in _run_cases(_convergence_case, config, [(c,) for c in config.cases()], progress,
                           "convergence"):
        for row in rows:
            table.add_row(**row)
    monotone = all(table.column("monotone"))
    table.provenance["monotone"] = monotone
    if not monotone:
        alwayswarn("Mesh convergence is not monotone for every case; see the 'monotone' column")
    return table


def _profile_rows(config, case, state, mode, scale=None, normalise=False):
    """Layer-tagged samples of every profile quantity at every station"""
    settings = config["profile"]
    a, b, h = config.dimensions(case)
    out = OrderedDict((q, []) for q in settings["quantities"])
    for fx, fy in settings["stations"]:
        profiles = [through_thickness_profile(state, fx * a, fy * b, q,
                                              samples_per_layer=settings["samples_per_layer"])
                    for q in settings["quantities"]]
        peak = {}
        if normalise:
            shape = [np.max(np.abs(p.value)) for p in profiles if p.quantity in DISPLACEMENTS]
            shape_peak = max(shape) if shape else 0.0
            for p in profiles:
                peak[p.quantity] = shape_peak if p.quantity in DISPLACEMENTS else np.max(np.abs(p.value))
        for p in profiles:
            factor = 1.0
            if scale is not None:
                factor = scale[p.quantity]
            elif normalise and peak[p.quantity] > 0:
                factor = 1.0 / peak[p.quantity]
            for z, value, layer in p.rows():
                out[p.quantity].append(OrderedDict([
                    ("case", case.key(config.grading)), ("model", case.model), ("mode", mode),
                    ("station_x", fx), ("station_y", fy), ("quantity", p.quantity), ("z", z / h),
                    ("value", value * factor), ("layer", layer)]))
    return out


def _profile_case(config, case, directory):
    key = case.key(config.grading)
    settings = config["profile"]
    written = []
    if settings["source"] == "static":
        load = config_load(config)
        system = case_system(config, case, load=load)
        solution = _identify(key, solve_static, system, config["analysis"]["dense_limit"])
        params = ScalingParameters.from_system(system, config["evaluation"]["reference_modulus"])
        scale = None
        if load.amplitude != 0:
            scale = scale_factors(load.kind, params, config["evaluation"]["convention"])
        rows = _profile_rows(config, case, solution, None, scale=scale)
    else:
        config_modes = min(settings["modes"], config["analysis"]["modes"])
        modal, omegas = _identify(key, _modal_values, config, case_system(config, case))
        _archive(config, directory, key, modal, omegas)
        rows = OrderedDict((q, []) for q in settings["quantities"])
        for i in range(min(config_modes, len(modal))):
            for q, samples in _profile_rows(config, case, modal.mode(i), i + 1, normalise=True).items():
                rows[q].extend(samples)

    for quantity, samples in rows.items():
        path = os.path.join(directory, "{}-profile-{}.csv".format(key, quantity))
        write_profile_csv(path, samples)
        written.append(path)
    return written


def run_profile(config, directory, progress=False):
    """Write through-thickness profiles of every case

    Static profiles are nondimensionalized like the static tables; mode
    profiles are normalised by the largest displacement at the station.
    Files are named ``<case>-profile-<quantity>.csv``.

    Returns
    -------
    list of str
        Paths of the files written

    """
    _warn_assumptions(config)
    written = []
    for paths in _run_cases(_profile_case, config, [(c, directory) for c in config.cases()],
                            progress, "profile"):
        written.extend(paths)
    return written


STUDIES = OrderedDict([("static", run_static), ("modal", run_modal),
                       ("convergence", run_convergence), ("profile", run_profile)])


def run_study(config, directory=None, progress=False):
    """Run the study named by ``analysis:type``

    Returns
    -------
    ResultTable or list of str
        The table, or the profile files written

    """
    kind = config.analysis_type
    logger.info("Running %s study: %d case(s)", kind, len(config.cases()))
    if kind == "profile":
        if directory is None:
            raise FGMPlateError("Profile studies need an output directory")
        return run_profile(config, directory, progress)
    if kind == "modal":
        return run_modal(config, directory, progress)
    return STUDIES[kind](config, progress=progress)
