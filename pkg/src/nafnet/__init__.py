"""Exact effective admittance of electrical networks over ordered fields.

The fields are the rationals, rational functions of the spectral parameter
``l``, and (truncated) Levi-Civita series in the infinitesimal ``t = 1/l``.
"""

__version__ = "0.1.0"

from .errors import NafnetError, NotInFieldError, ParseError, PrecisionError, TransformError  # noqa: E402
from .fields import (  # noqa: E402
    LEVI_CIVITA,
    RATIONAL,
    RATIONAL_FUNCTION,
    ElementSpec,
    LeviCivita,
    RationalFunction,
    TruncationPolicy,
    element_admittance,
    tau,
    truncation,
)
from .network import (  # noqa: E402
    Network,
    admittance_identities,
    assemble_system,
    build_network,
    dirichlet_energy,
    effective_admittance,
    effective_impedance,
    solve_dirichlet,
)
