"""Backend selection for the hot loops.

The compiled extension ``minkphi._kernels`` is used when it imports; otherwise
the numpy implementation in :mod:`minkphi._fallback` is used. Setting
``MINKPHI_PURE_PYTHON=1`` forces the fallback.
"""

import os

from minkphi import _fallback

if os.environ.get("MINKPHI_PURE_PYTHON") == "1":
    _impl = _fallback
    BACKEND = "python"
else:
    try:
        from minkphi import _kernels as _impl
    except ImportError:
        _impl = _fallback
        BACKEND = "python"
    else:
        BACKEND = "compiled"

prime_sieve = _impl.prime_sieve
smallest_factor_sieve = _impl.smallest_factor_sieve
totient_sieve = _impl.totient_sieve
totient_from_spf = _impl.totient_from_spf
inverse_max = _impl.inverse_max
max_over_divisors = _impl.max_over_divisors
scan_max_dividing = _impl.scan_max_dividing
minkowski_exponents = _impl.minkowski_exponents


def available_backends():
    """Map backend name to module, for tests and benchmarks."""
    out = {"python": _fallback}
    try:
        from minkphi import _kernels
    except ImportError:
        pass
    else:
        out["compiled"] = _kernels
    return out
