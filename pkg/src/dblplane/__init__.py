"""Exact invariants of affine double planes z^2 = f."""

from .abgroup import FGAbelianGroup, cokernel, smith_normal_form
from .arrangement import Arrangement, ArrangementGraph, ProjLine, cycle_rank
from .classgroup import ScenarioError, cl_hyperelliptic_doubleplane, nagata_class_group
from .cohomology import GModule, UnitModule, cohomology_table
from .crossedprod import CrossedAlgebra
from .polyring import HyperellipticSpec, Poly
from .scenarios import Report, Scenario, run_hyperelliptic_scenario, run_lines_scenario

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "ArrangementGraph", "CrossedAlgebra", "FGAbelianGroup", "GModule",
    "HyperellipticSpec", "Poly", "ProjLine", "Report", "Scenario", "ScenarioError",
    "UnitModule", "cl_hyperelliptic_doubleplane", "cohomology_table", "cokernel",
    "cycle_rank", "nagata_class_group", "run_hyperelliptic_scenario", "run_lines_scenario",
    "smith_normal_form",
]
