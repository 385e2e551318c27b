"""Hot kernels with a compiled core and a pure-Python fallback.

The compiled extension is used when it imports; otherwise the pure module is.
``use_backend`` switches at runtime (tests and the benchmark drive both).
Callers must go through this module's attributes, never ``from ... import``,
so that a switch is seen everywhere.
"""

from __future__ import annotations

from . import _pure

try:
    from . import _fast
except ImportError:  # extension not built
    _fast = None

AVAILABLE = ("compiled", "pure") if _fast is not None else ("pure",)
BACKEND = AVAILABLE[0]

extension_search = (_fast or _pure).extension_search
window_dp = (_fast or _pure).window_dp


def use_backend(name: str) -> str:
    """Select ``"compiled"`` or ``"pure"``; returns the previous backend name."""
    global BACKEND, extension_search, window_dp
    if name not in AVAILABLE:
        raise ValueError(f"backend {name!r} not available (have {AVAILABLE})")
    previous = BACKEND
    impl = _fast if name == "compiled" else _pure
    extension_search = impl.extension_search
    window_dp = impl.window_dp
    BACKEND = name
    return previous
