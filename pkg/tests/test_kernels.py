import math

import numpy as np
import pytest

from minkphi import kernels


def _brute_phi(m):
    return sum(1 for k in range(1, m + 1) if math.gcd(k, m) == 1)


def test_backend_is_reported():
    assert kernels.BACKEND in ("compiled", "python")
    assert kernels.available_backends()["python"]


def test_prime_sieve(backend):
    s = backend.prime_sieve(200)
    brute = [n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1)) for n in range(201)]
    assert s.tolist() == brute


def test_prime_sieve_tiny(backend):
    assert backend.prime_sieve(0).tolist() == [False]
    assert backend.prime_sieve(1).tolist() == [False, False]
    assert backend.prime_sieve(2).tolist() == [False, False, True]


def test_smallest_factor(backend):
    spf = backend.smallest_factor_sieve(500)
    for n in range(2, 501):
        assert spf[n] == min(d for d in range(2, n + 1) if n % d == 0)


def test_totient_paths_agree_with_brute_force(backend):
    limit = 600
    brute = [0] + [_brute_phi(m) for m in range(1, limit + 1)]
    assert backend.totient_sieve(limit).tolist() == brute
    assert backend.totient_from_spf(backend.smallest_factor_sieve(limit)).tolist() == brute


def test_inverse_max(backend):
    phi = backend.totient_sieve(300)
    inv = backend.inverse_max(phi)
    for d in range(1, 301):
        pre = [m for m in range(1, 301) if phi[m] == d]
        assert inv[d] == (max(pre) if pre else 0)
    assert inv[14] == 0  # 14 is a nontotient


def test_max_over_divisors(backend):
    phi = backend.totient_sieve(400)
    inv = backend.inverse_max(phi)
    best = backend.max_over_divisors(inv, 30)
    for n in range(1, 31):
        want = max(m for m in range(1, 401) if (2 * n) % phi[m] == 0)
        assert best[n] == want


def test_scan_max_dividing(backend):
    phi = backend.totient_sieve(100)
    assert backend.scan_max_dividing(phi, 100, 48) == max(m for m in range(1, 101) if 48 % phi[m] == 0)
    assert backend.scan_max_dividing(phi, 100, 1) == 2
    assert backend.scan_max_dividing(phi, 0, 5) == 0


def test_minkowski_exponents(backend):
    primes = np.array([2, 3, 5, 7, 11], dtype=np.int64)
    for n in range(1, 40):
        got = backend.minkowski_exponents(n, primes).tolist()
        want = []
        for q in primes.tolist():
            total = n // 2 if q == 2 else 0
            d = 1 if q == 2 else q - 1
            while d <= n:
                total += n // d
                d *= q
            want.append(total)
        assert got == want


@pytest.mark.parametrize("limit", [1, 2, 97, 5000])
def test_backends_agree(limit):
    from minkphi import _fallback

    try:
        from minkphi import _kernels
    except ImportError:
        pytest.skip("compiled extension not built")
    for name in ("prime_sieve", "smallest_factor_sieve", "totient_sieve"):
        a, b = getattr(_kernels, name)(limit), getattr(_fallback, name)(limit)
        assert np.array_equal(a, b), name
    phi = _kernels.totient_sieve(limit)
    assert np.array_equal(_kernels.inverse_max(phi), _fallback.inverse_max(phi))
    assert np.array_equal(
        _kernels.max_over_divisors(_kernels.inverse_max(phi), limit // 2 or 1),
        _fallback.max_over_divisors(_fallback.inverse_max(phi), limit // 2 or 1),
    )


def test_read_only_inputs_are_accepted(backend):
    phi = backend.totient_sieve(50)
    phi.flags.writeable = False
    assert backend.inverse_max(phi)[4] == 12
    assert backend.scan_max_dividing(phi, 50, 8) == 30


def test_pure_python_backend_end_to_end():
    import os
    import subprocess
    import sys

    code = (
        "from minkphi import kernels, totient, minkowski;"
        "print(kernels.BACKEND);"
        "a = totient.phi_bulk(3000);"
        "print(sum(int(x) for x in a), minkowski.g_exact(50)[1] % 10**9, totient.phi_of(2880))"
    )
    env = dict(os.environ, MINKPHI_PURE_PYTHON="1")
    pure = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    env.pop("MINKPHI_PURE_PYTHON")
    default = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    assert pure.stdout.splitlines()[0] == "python"
    assert pure.stdout.splitlines()[1] == default.stdout.splitlines()[1]
