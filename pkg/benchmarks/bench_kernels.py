"""Time each hot kernel on its compiled loop and on its numpy twin.

    python3 benchmarks/bench_kernels.py [--repeat N]

Both paths are called directly from the same process, so the numba build is
used for the loop column whenever numba is importable. The compile run is
done once up front and excluded from the timings. Under
``NSGKIT_DISABLE_NUMBA=1`` the loop column is plain interpreted python and
the larger cases are skipped.
"""

import argparse
import timeit

import numpy as np

from nsgkit import BACKEND, FiniteLcaGroup
from nsgkit import _kernels as K
from nsgkit.realline import Beta, Indicator, ramp_down, ramp_up


def cases():
    rng = np.random.default_rng(0)
    g = FiniteLcaGroup((4, 8, 8))
    v = rng.standard_normal(g.cardinality) + 1j * rng.standard_normal(g.cardinality)
    orders = np.array(g.orders, dtype=np.int64)
    yield "dft_direct |G|=256", K._dft_direct_loop, K._dft_direct_numpy, \
        (v, g.residues, orders, -1.0)

    atoms = rng.standard_normal((1536, 256)) + 1j * rng.standard_normal((1536, 256))
    yield "atom_coefficients 1536x256", K._atom_coefficients_loop, \
        K._atom_coefficients_numpy, (v, atoms)
    c = rng.standard_normal(1536) + 0j
    yield "atom_synthesis 1536x256", K._atom_synthesis_loop, K._atom_synthesis_numpy, \
        (c, rng.uniform(0.5, 1.5, 1536), atoms)

    xs = np.linspace(-2.0, 2.0, 10 ** 6)
    yield "window ramp 1e6 points", K._window_loop, K._window_numpy, (*ramp_down().pack(), xs)

    nodes = np.linspace(-1e4, 1e4, 10 ** 6)
    weights = np.full(nodes.size, nodes[1] - nodes[0])
    code, param = Beta.inverse_linear().packed()
    yield "awh_quadrature 1e6 nodes", K._awh_quadrature_loop, K._awh_quadrature_numpy, \
        (0.3, nodes, weights, code, param, K.ETA_IDENTITY, 1.0,
         *ramp_down().pack(), *ramp_up().pack())

    xi = np.linspace(-1.0, 1.0, 201)
    om = np.linspace(-1024.0, 1024.0, 8193)
    yield "energy_quadrature 201x8193", K._energy_quadrature_loop, K._energy_quadrature_numpy, \
        (xi, np.full(201, 0.01), om, np.full(om.size, 0.25), code, param, K.ETA_IDENTITY, 1.0,
         *Indicator(-1.0, 1.0).pack(), *ramp_down().pack())


def best(fn, args, repeat):
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    opts = parser.parse_args()
    print(f"backend: {BACKEND}")
    print(f"{'kernel':32s} {'loop [ms]':>12s} {'numpy [ms]':>12s} {'numpy/loop':>11s}")
    for name, loop, vec, args in cases():
        t_vec = best(vec, args, opts.repeat)
        if BACKEND != "numba" and ("1e6" in name or "|G|" in name or "x8193" in name):
            print(f"{name:32s} {'skipped':>12s} {1e3 * t_vec:12.2f} {'':>11s}")
            continue
        a, b = loop(*args), vec(*args)  # compiles the loop on first call
        assert np.allclose(a, b, rtol=1e-10, atol=1e-10), name
        t_loop = best(loop, args, opts.repeat)
        print(f"{name:32s} {1e3 * t_loop:12.2f} {1e3 * t_vec:12.2f} {t_vec / t_loop:11.2f}")


if __name__ == "__main__":
    main()
