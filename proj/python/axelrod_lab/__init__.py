"""Axelrod model with a variable number of opinions per feature."""

from fractions import Fraction

from . import _core
from ._core import (
    ConsistencyError,
    CouplingError,
    CultureState,
    DomainError,
    ModelParams,
    ParameterError,
    PreconditionError,
    Simulation,
    SpinConfig,
    UnsupportedConfiguration,
    absorption_detect,
    acceptance_threshold,
    density_estimates,
    derive_seed,
    derive_spins,
    hamming,
    init_state,
    interaction_rate,
    make_state,
    run_cli,
    verification_targets,
    verify,
)

__version__ = "0.1.0"


def probabilities(q1, q2):
    """Exact p0, p1, p2, p11, p12 as Fractions."""
    return {k: Fraction(v) for k, v in _core.theory.probabilities(q1, q2).items()}


def h1(q1, q2):
    return Fraction(_core.theory.h1(q1, q2))


def h2(q1, q2):
    return Fraction(_core.theory.h2(q1, q2))


def geometric_tail(q, n):
    """P(Y > n) for the collisions survived at a level with q opinions."""
    return Fraction(_core.theory.geometric_tail(q, n))


def geometric_mean(q):
    return Fraction(_core.theory.geometric_mean(q))


symmetric_fixation_condition = _core.theory.symmetric_fixation_condition
predict_regime = _core.theory.predict_regime
