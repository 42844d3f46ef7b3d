"""Barnes G-function toolkit: evaluation, coefficient generation, audits.

Evaluate ln Gamma(z) and ln G(z) on the cut plane at two precision tiers,
regenerate the exponential-sum coefficient tables behind them with a
two-point Pade algorithm, and audit the weighted sup-norm errors of any
table.
"""

from ._backend import backend_name
from .auditing import AuditReport, audit, sup_abs_diff
from .errors import (
    BarnesgError,
    CoeffFileError,
    DomainError,
    EvalOverflowError,
    GeneratorError,
    ParseError,
    RootFindingError,
    SingularSystemError,
)
from .evaluate import (
    EvalProfile,
    barnes_g,
    gamma,
    li2,
    ln_g,
    ln_g_halfplane,
    ln_gamma,
    ln_gamma_halfplane,
)
from .generator import ExpSum, RationalApprox, generate, verify_conditions
from .kernel import KernelTables, kernel_derivative, kernel_value, moment
from .precision import PrecisionContext, parse_decimal, principal_log, to_decimal
from .store import builtin_p15, load, load_p45, save

__version__ = "0.1.0"

__all__ = [
    "AuditReport",
    "BarnesgError",
    "CoeffFileError",
    "DomainError",
    "EvalOverflowError",
    "EvalProfile",
    "ExpSum",
    "GeneratorError",
    "KernelTables",
    "ParseError",
    "PrecisionContext",
    "RationalApprox",
    "RootFindingError",
    "SingularSystemError",
    "audit",
    "backend_name",
    "barnes_g",
    "builtin_p15",
    "gamma",
    "generate",
    "kernel_derivative",
    "kernel_value",
    "li2",
    "ln_g",
    "ln_g_halfplane",
    "ln_gamma",
    "ln_gamma_halfplane",
    "load",
    "load_p45",
    "moment",
    "parse_decimal",
    "principal_log",
    "save",
    "sup_abs_diff",
    "to_decimal",
    "verify_conditions",
]
