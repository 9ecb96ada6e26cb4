"""Certified bounds for Minkowski's G(n), the symplectic analogue H(n), and Phi(n)."""

from minkphi.enclosure import Enclosure, compare
from minkphi.errors import DomainError, InvariantError, SingularityError, SizeError
from minkphi.kernels import BACKEND
from minkphi.minkowski import g_exact, h_exact, log_g, log_h, theorem1_bounds
from minkphi.reports import BoundReport, Status
from minkphi.totient import phi_bulk, phi_of

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundReport",
    "DomainError",
    "Enclosure",
    "InvariantError",
    "SingularityError",
    "SizeError",
    "Status",
    "compare",
    "g_exact",
    "h_exact",
    "log_g",
    "log_h",
    "phi_bulk",
    "phi_of",
    "theorem1_bounds",
]
