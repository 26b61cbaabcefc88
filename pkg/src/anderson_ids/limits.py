"""Resource guards for dense eigensolves and large counting sweeps.

Both guards can be raised (or lowered) through the ``ANDERSON_IDS_MAX_SIZE``
environment variable, which overrides the default cap for whichever guard is
consulted.  The variable is read at call time, not import time, so tests can
toggle it with ``monkeypatch.setenv``.
"""

import os

DENSE_MAX_DEFAULT = 5_000
STURM_MAX_DEFAULT = 20_000_000

ENV_VAR = "ANDERSON_IDS_MAX_SIZE"


class ResourceLimitError(RuntimeError):
    """A requested problem size exceeds the configured guard."""


def _env_override():
    raw = os.environ.get(ENV_VAR)
    if raw is None:
        return None
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_VAR} must be an integer, got {raw!r}") from None
    if value <= 0:
        raise ValueError(f"{ENV_VAR} must be positive, got {value}")
    return value


def dense_max() -> int:
    """Largest matrix dimension the dense eigenvalue routine accepts."""
    override = _env_override()
    return DENSE_MAX_DEFAULT if override is None else override


def sturm_max() -> int:
    """Largest matrix dimension accepted for factorization-based counting."""
    override = _env_override()
    return STURM_MAX_DEFAULT if override is None else override


def check_dense(n: int) -> None:
    cap = dense_max()
    if n > cap:
        raise ResourceLimitError(
            f"dense eigensolve of dimension {n} exceeds the guard {cap}; "
            f"set {ENV_VAR} to override")


def check_sturm(n: int) -> None:
    cap = sturm_max()
    if n > cap:
        raise ResourceLimitError(
            f"matrix dimension {n} exceeds the counting guard {cap}; "
            f"set {ENV_VAR} to override")
