"""Tolerance record used across density, Monte Carlo and CLI runs."""
from __future__ import annotations

import dataclasses
import os

DEFAULT_SEED = 0


@dataclasses.dataclass(frozen=True)
class Tolerances:
    """One knob set for all numerical checks.

    The defaults are the ones the acceptance suite runs with.
    """

    quadrature_tol: float = 1e-7
    mass_tol: float = 1e-4
    asymptote_tol: float = 0.01
    identity_tol: float = 1e-9
    tangency_tol: float = 1e-12

    def replace(self, **changes) -> "Tolerances":
        return dataclasses.replace(self, **changes)


DEFAULTS = Tolerances()


def default_seed() -> int:
    """Seed from ``ORTHOLAB_SEED`` if set, else 0."""
    raw = os.environ.get("ORTHOLAB_SEED")
    if raw is None or raw.strip() == "":
        return DEFAULT_SEED
    return int(raw)
