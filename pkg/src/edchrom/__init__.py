"""Finite-volume solver for 1-D equilibrium-dispersive chromatography.

Conservative formulation of the ED model with generalized Langmuir (Toth)
adsorption isotherms: conserved-variable transform, secular-equation
eigenstructure, six convective flux discretizations (component-wise and
characteristic-based WENO5, MUSCL, first-order upwind) and a second-order
IMEX midpoint integrator with block-tridiagonal implicit diffusion.
"""

__version__ = "0.1.0"

from .flux import InjectionSchedule, SchemeKind
from .isotherm import IsothermModel, validate_model
from .stepper import GridState, RunResult, SimulationConfig, run

__all__ = [
    "InjectionSchedule",
    "SchemeKind",
    "IsothermModel",
    "validate_model",
    "GridState",
    "RunResult",
    "SimulationConfig",
    "run",
    "__version__",
]
