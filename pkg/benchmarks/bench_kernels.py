"""Compiled vs numpy truncated-product kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times ``trunc_mul`` on dense random operands and ``series_exp`` on the
exponents the physics modules actually build.
"""

import argparse
import math
import timeit

import numpy as np

from hybridps.model import Params, build_Z1, build_Z2, build_Z3
from hybridps.series import truncated
from hybridps.series import _kernels_py
from hybridps.series.truncated import _layout

try:
    from hybridps.series import _kernels as _compiled
except ImportError:  # extension not built
    _compiled = None

BACKENDS = {"numpy": _kernels_py.trunc_mul}
if _compiled is not None:
    BACKENDS["cython"] = _compiled.trunc_mul


def _operands(caps, density, rng):
    shape, digits, c = _layout(caps)
    size = math.prod(shape)
    a = (rng.normal(size=size) + 1j * rng.normal(size=size)) * (rng.random(size) < density)
    b = (rng.normal(size=size) + 1j * rng.normal(size=size)) * (rng.random(size) < density)
    return a, b, digits, c


def bench_mul(repeat):
    rng = np.random.default_rng(0)
    rows = []
    for caps, density in (((3, 3, 1, 1, 1, 1), 1.0), ((5, 5, 2, 2), 1.0), ((4, 4, 1, 1, 1, 1), 0.3)):
        args = _operands(caps, density, rng)
        times = {name: min(timeit.repeat(lambda f=f: f(*args), number=1, repeat=repeat)) for name, f in BACKENDS.items()}
        rows.append((f"trunc_mul caps={caps} density={density}", times))
    return rows


def bench_exp(repeat):
    p = Params(alpha=0.7, beta=0.4, g=0.9, phi=1.1, tau=0.4, T=0.8, eta=0.7, m=3)
    rows = []
    for label, z in (("Z1 m=3", build_Z1(p, jet=True)), ("Z2 m=3", build_Z2(p)), ("Z3 m=3", build_Z3(p))):
        times = {}
        for name, f in BACKENDS.items():
            saved = truncated.trunc_mul
            truncated.trunc_mul = f
            try:
                times[name] = min(timeit.repeat(lambda: truncated.series_exp(z), number=1, repeat=repeat))
            finally:
                truncated.trunc_mul = saved
        rows.append((f"series_exp {label}", times))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    names = list(BACKENDS)
    print(f"{'case':<52}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, times in bench_mul(args.repeat) + bench_exp(args.repeat):
        line = f"{label:<52}" + "".join(f"{times[n] * 1e3:>10.3f}ms" for n in names)
        if len(names) == 2:
            line += f"{times['numpy'] / times['cython']:>11.1f}x"
        print(line)


if __name__ == "__main__":
    main()
