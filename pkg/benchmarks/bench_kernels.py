"""Compiled (Cython) kernels against the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--json out.json]

Each kernel runs on the same inputs in both backends; the table shows the
best-of-repeat wall time and the largest difference between the outputs.
"""

import argparse
import json
import platform
import time

import numpy as np

from critline import friedrichs, hcatalog, kernels, specfun


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases():
    rng = np.random.default_rng(0)
    s = 0.5 + 1j * np.linspace(0.0, 200.0, 4000)
    n_em = specfun.em_terms(float(np.abs(s).max()))
    yield ("hurwitz_em 4000 pts", lambda k: k.hurwitz_em(s, 1.0, n_em, specfun.EM_BERN),
           lambda r: np.abs(r[0]).max())

    for n in (60, 200):
        x = rng.standard_normal((n, n))
        a = x + x.T
        yield (f"jacobi_hermitian n={n}", lambda k, a=a: k.jacobi_hermitian(a),
               lambda r: np.sort(r[0]))

    spec, eta = hcatalog.get("xi2s")
    model = friedrichs.build_model(spec, eta, 120.0, 32, check=False)
    d, z = friedrichs._secular_data(model)
    gaps = np.arange(d.size - 1, dtype=np.int64)
    yield (f"secular_gap_roots {d.size} poles", lambda k: k.secular_gap_roots(d, z, gaps),
           lambda r: np.asarray(r))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--json", metavar="PATH")
    args = ap.parse_args(argv)

    py = kernels.backend("python")
    try:
        ext = kernels.backend("compiled")
    except ImportError:
        print("compiled extension not built; nothing to compare")
        return 1

    rows = []
    print(f"{'kernel':32s} {'python s':>10s} {'compiled s':>11s} {'speedup':>8s} {'max diff':>10s}")
    for name, run, key in cases():
        t_py, r_py = best_of(lambda: run(py), args.repeat)
        t_ext, r_ext = best_of(lambda: run(ext), args.repeat)
        diff = float(np.max(np.abs(np.asarray(key(r_py)) - np.asarray(key(r_ext)))))
        rows.append({"kernel": name, "python_s": t_py, "compiled_s": t_ext,
                     "speedup": t_py / t_ext, "max_diff": diff})
        print(f"{name:32s} {t_py:10.4f} {t_ext:11.4f} {t_py / t_ext:8.1f} {diff:10.2e}")
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"python": platform.python_version(), "numpy": np.__version__,
                       "repeat": args.repeat, "rows": rows}, fh, indent=2)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
