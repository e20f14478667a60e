"""Exact rational branch and bound for upper bounds on the moving sofa constant."""

__version__ = "0.1.0"

from ._backend import BACKEND, Q
from .bnb import (
    BoundCertificate,
    BoxE,
    Engine,
    EngineConfig,
    ProblemSpec,
    g_eval,
    gamma_eval,
    initial_box,
    iter_run,
    pi_eval,
    run,
    split_box,
    splitting_index,
)
from .compose import RangeBound, TheoremResult, compose_area_bound, compose_rotation_bound, sec_bound, to_ledger
from .kernel import RIGHT_ANGLE, PythagoreanAngle, angle_from_triple, trig_ratios
from .oracle import ConstantEnclosure, closed_form_single_angle, constants, grid_lower_bound
from .profile import Profile, ProfileError, load_profile, parse_profile, serialize
from .region import HalfPlane, Region
from .scene import Interval
