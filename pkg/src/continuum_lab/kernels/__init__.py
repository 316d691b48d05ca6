"""Hot kernels with a compiled core and a pure-Python fallback.

The compiled extension ``_core`` is used when it imports; setting the
environment variable ``CONTINUUM_LAB_PURE_PYTHON=1`` forces the fallback.
``BACKEND`` names the active implementation.
"""
import os

from . import _fallback

fallback = _fallback

core = None
if os.environ.get("CONTINUUM_LAB_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _core as core
    except ImportError:  # extension not built
        core = None

_active = core if core is not None else _fallback

BACKEND = _active.BACKEND
assoc_violation = _active.assoc_violation
distrib_violation = _active.distrib_violation
PlanEvaluator = _active.PlanEvaluator


def available_backends():
    """Kernel modules importable in this process, compiled one first."""
    return [m for m in (core, _fallback) if m is not None]
