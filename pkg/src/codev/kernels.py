"""Backend selection for the hot-loop kernels.

Prefers the compiled extension; falls back to the pure-Python twin when the
extension is missing. Set CODEV_BACKEND=python or CODEV_BACKEND=compiled to
force a choice (forcing `compiled` raises if the extension did not build).
Both backends produce bit-identical results from the same random streams.
"""

from __future__ import annotations

import os


class BackendUnavailableError(ImportError):
    """The explicitly requested kernel backend cannot be imported."""


def _select():
    forced = os.environ.get("CODEV_BACKEND")
    if forced not in (None, "", "compiled", "python"):
        raise BackendUnavailableError(
            f"CODEV_BACKEND must be 'compiled' or 'python', got {forced!r}"
        )
    if forced != "python":
        try:
            from . import _kernel
            return _kernel
        except ImportError as exc:
            if forced == "compiled":
                raise BackendUnavailableError(
                    f"compiled kernel requested but unavailable: {exc}"
                ) from exc
    from . import _kernel_py
    return _kernel_py


_impl = _select()

BACKEND = _impl.BACKEND_NAME
eval_vec = _impl.eval_vec
anneal_slice = _impl.anneal_slice
design_slice = _impl.design_slice
run_cycle = _impl.run_cycle
