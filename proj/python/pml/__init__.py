"""Payment-system migration lab.

Sanction-risk mitigation, switching thresholds, endogenous network effects,
replicator dynamics with tipping points, scenario shocks, population
simulation and time-series calibration. All heavy lifting happens in the
C++ extension module.
"""

from ._pml import *  # noqa: F401,F403
from ._pml import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
