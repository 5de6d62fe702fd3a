"""Backend selection for the hot kernels.

The compiled extension ``critline._ext`` is used when it imports; otherwise
the numpy fallback in ``critline._kernels_py`` is used.  Setting
``CRITLINE_PURE_PYTHON=1`` forces the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"

if os.environ.get("CRITLINE_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from . import _ext as _impl
        BACKEND = "compiled"
    except ImportError:  # pragma: no cover - depends on build
        _impl = _kernels_py
else:
    _impl = _kernels_py

hurwitz_em = _impl.hurwitz_em
jacobi_hermitian = _impl.jacobi_hermitian
secular_gap_roots = _impl.secular_gap_roots


def backend(name):
    """Return the kernel namespace for ``"compiled"`` or ``"python"``."""
    if name == "python":
        return _kernels_py
    if name == "compiled":
        from . import _ext
        return _ext
    raise ValueError(f"unknown backend {name!r}")
