"""Finite-propagation unitaries on l^2(Z), eventually periodic sequences and
characteristic classes of Hilbert bundles with ends."""
from .bandop import (EPBandOp, MonomialLoop, adjoint, compose, fredholm_index,
                     identity_op, is_periodic, loop_class, propagation, shift_op)
from .bundle import (EndCocycle, alpha1, beta1, cocycle_check, completed_sum_sphere,
                     pushforward_universal_cover)
from .errors import DomainError, EndBundleError, ToleranceExceeded
from .seqcalc import CoinvClass, EPSeq, Functional, coinv_class, is_trivial, pair

__version__ = "0.1.0"

__all__ = [
    "CoinvClass", "DomainError", "EPBandOp", "EPSeq", "EndBundleError", "EndCocycle",
    "Functional", "MonomialLoop", "ToleranceExceeded", "adjoint", "alpha1", "beta1",
    "cocycle_check", "coinv_class", "completed_sum_sphere", "compose", "fredholm_index",
    "identity_op", "is_periodic", "is_trivial", "loop_class", "pair", "propagation",
    "pushforward_universal_cover", "shift_op",
]
