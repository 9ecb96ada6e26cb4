"""Time the compiled kernels against the numpy/pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--scale 1.0] [--repeat 3]
"""

import argparse
import timeit

import numpy as np

from minkphi.kernels import available_backends
from minkphi.primes import primes_list


def cases(scale):
    limit = int(1_500_000 * scale)
    n_max = int(102_131 * scale)
    primes = np.asarray(primes_list(5001), dtype=np.int64)

    def prepared(mod):
        phi = mod.totient_sieve(limit)
        return {
            "phi": phi,
            "spf": mod.smallest_factor_sieve(limit),
            "inv": mod.inverse_max(phi),
        }

    return [
        ("prime_sieve", lambda mod, d: mod.prime_sieve(limit)),
        ("smallest_factor_sieve", lambda mod, d: mod.smallest_factor_sieve(limit)),
        ("totient_sieve", lambda mod, d: mod.totient_sieve(limit)),
        ("totient_from_spf", lambda mod, d: mod.totient_from_spf(d["spf"])),
        ("inverse_max", lambda mod, d: mod.inverse_max(d["phi"])),
        ("max_over_divisors", lambda mod, d: mod.max_over_divisors(d["inv"], n_max)),
        ("scan_max_dividing", lambda mod, d: mod.scan_max_dividing(d["phi"], limit, 2 * 3 * 5 * 7 * 11 * 13 * 17)),
        ("minkowski_exponents", lambda mod, d: mod.minkowski_exponents(5000, primes)),
    ], prepared


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--scale", type=float, default=1.0, help="multiply problem sizes")
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = available_backends()
    if "compiled" not in backends:
        print("compiled extension not built; timing the fallback only")
    table, prepared = cases(args.scale)
    data = {name: prepared(mod) for name, mod in backends.items()}
    names = sorted(backends)
    print(f"{'kernel':24}" + "".join(f"{n + ' (s)':>16}" for n in names) + f"{'speedup':>10}")
    for label, fn in table:
        timings = {}
        for name in names:
            mod = backends[name]
            timings[name] = min(timeit.repeat(lambda: fn(mod, data[name]), number=1, repeat=args.repeat))
        speed = timings["python"] / timings["compiled"] if "compiled" in timings else float("nan")
        print(f"{label:24}" + "".join(f"{timings[n]:16.4f}" for n in names) + f"{speed:10.1f}")


if __name__ == "__main__":
    main()
