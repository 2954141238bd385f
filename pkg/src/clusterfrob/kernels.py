"""Backend selection for the term-map kernels.

Imports the compiled accelerator when it exists, otherwise the pure-Python
twin.  CLUSTERFROB_BACKEND=pure forces the fallback; =compiled insists on
the accelerator and fails loudly when it is missing.
"""

from __future__ import annotations

import os

from . import _kernels_py

_choice = os.environ.get("CLUSTERFROB_BACKEND", "auto").lower()

if _choice == "pure":
    _impl = _kernels_py
elif _choice == "compiled":
    from . import _accel as _impl  # type: ignore[no-redef]
else:
    try:
        from . import _accel as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _kernels_py

BACKEND = "compiled" if _impl.__name__.endswith("_accel") else "pure"

add_terms = _impl.add_terms
sub_terms = _impl.sub_terms
neg_terms = _impl.neg_terms
mul_terms = _impl.mul_terms
scale_shift_terms = _impl.scale_shift_terms
submul_terms = _impl.submul_terms


def backend() -> str:
    """Name of the active kernel backend: 'compiled' or 'pure'."""
    return BACKEND
