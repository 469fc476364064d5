"""Finite element analysis of functionally graded sandwich plates

Static bending under transverse pressure or through-thickness
temperature, and free vibration, of simply supported rectangular FGM
sandwich plates with four kinematic theories (HSDT13, HSDT11, HSDT9 and
FSDT5) on 8-node serendipity elements.

"""

import logging

__version__ = "1.0.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())

from . import material
from . import kinematics
from . import mesh
from . import assembly
from . import analysis
from . import options
from . import results
from . import golden
from . import studies

from .material import GradingType, HomogenizationScheme, PhaseMaterial, SandwichLayup, default_materials
from .kinematics import ModelKind, PlateModel, integrate_rigidities
from .mesh import build_mesh
from .assembly import Load, assemble
from .analysis import (frequency_parameter, solve_modes, solve_static, static_report,
                       through_thickness_profile)
from .options import parse_config, config_from_dict
from .studies import run_convergence, run_modal, run_profile, run_static

__all__ = ["analysis", "assembly", "golden", "kinematics", "material", "mesh", "options", "results",
           "studies", "GradingType", "HomogenizationScheme", "PhaseMaterial", "SandwichLayup",
           "default_materials", "ModelKind", "PlateModel", "integrate_rigidities", "build_mesh",
           "Load", "assemble", "frequency_parameter", "solve_modes", "solve_static", "static_report",
           "through_thickness_profile", "parse_config", "config_from_dict", "run_convergence",
           "run_modal", "run_profile", "run_static"]
