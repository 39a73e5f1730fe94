"""Compare the Cython kernels against the NumPy fallback.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5]

Prints the best-of-``repeat`` wall time for each kernel and backend, the
speedup, and the largest absolute difference between the two outputs.
"""
import argparse
import timeit

import numpy as np

from revival_lab import _pykernels

try:
    from revival_lab import _ckernels
except ImportError:
    _ckernels = None


def cases():
    rng = np.random.default_rng(0)
    w = rng.random(250)
    w /= w.sum()
    t_uniform = np.linspace(0.0, 120.0, 24000)
    t_ragged = np.sort(rng.random(24000) * 120.0)
    return [
        ("revival_probability uniform 250x24000", "revival_probability", (w, t_uniform, 1.0, 0.0)),
        ("revival_probability ragged 250x24000", "revival_probability", (w, t_ragged, 1.0, 0.7)),
        ("hermite_scaled x=3.1 k<=300", "hermite_scaled", (3.1, 300)),
        ("hermite_scaled x=40 k<=300", "hermite_scaled", (40.0, 300)),
    ]


def best_time(fn, args, repeat):
    number = max(1, int(0.2 / max(timeit.timeit(lambda: fn(*args), number=1), 1e-6)))
    return min(timeit.repeat(lambda: fn(*args), number=number, repeat=repeat)) / number


def _as_array(res):
    if isinstance(res, tuple):
        return np.concatenate([np.ravel(np.asarray(x, dtype=complex)) for x in res])
    return np.asarray(res, dtype=complex)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if _ckernels is None:
        print("compiled extension not built; run `python3 setup.py build_ext --inplace` first")
    print(f"{'case':42s} {'python':>11s} {'cython':>11s} {'speedup':>8s} {'max|diff|':>10s}")
    for label, name, fargs in cases():
        py = getattr(_pykernels, name)
        t_py = best_time(py, fargs, args.repeat)
        if _ckernels is None:
            print(f"{label:42s} {t_py * 1e3:9.3f}ms {'-':>11s} {'-':>8s} {'-':>10s}")
            continue
        cy = getattr(_ckernels, name)
        t_cy = best_time(cy, fargs, args.repeat)
        diff = np.abs(_as_array(py(*fargs)) - _as_array(cy(*fargs))).max()
        print(f"{label:42s} {t_py * 1e3:9.3f}ms {t_cy * 1e3:9.3f}ms {t_py / t_cy:7.1f}x {diff:10.1e}")


if __name__ == "__main__":
    main()
