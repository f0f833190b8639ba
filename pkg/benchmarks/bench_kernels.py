"""Compare the numba and numpy enumeration kernels.

    python3 benchmarks/bench_kernels.py [--family C --rank 4 --max-len 18 --repeat 5]

Kernel timings run both implementations in-process on the same arrays. The
end-to-end ``ball`` timing is measured in subprocesses, because the backend
is fixed when the package is imported.
"""

import argparse
import json
import os
import subprocess
import sys
import timeit

import numpy as np

from affweyl import _kernels
from affweyl.group import ball
from affweyl.rootdata import build_root_datum

END_TO_END = """
import json, sys, time
from affweyl import _kernels
from affweyl.group import ball
from affweyl.rootdata import build_root_datum
d = build_root_datum(sys.argv[1], int(sys.argv[2]))
ball(d, None, 4)  # warm up (jit compile or cache load)
t0 = time.perf_counter()
b = ball(d, None, int(sys.argv[3]))
print(json.dumps({"backend": _kernels.backend(), "size": len(b), "seconds": time.perf_counter() - t0}))
"""


def kernel_timings(d, max_len, repeat):
    b = ball(d, None, max_len)
    data = d.kernel_arrays()
    gm, gt = data["gens"][d.generators[-1]]
    M, t = b.M, b.t
    pos, denom = data["pos"], data["denom"]
    out = {"elements": len(b)}
    # outputs must agree exactly before timings mean anything
    nm, nt = _kernels.right_multiply_np(M, t, gm, gt)
    bm, bt = _kernels.right_multiply_nb(M, t, gm, gt)
    assert np.array_equal(nm, bm) and np.array_equal(nt, bt)
    assert np.array_equal(_kernels.lengths_np(nm, nt, pos, denom), _kernels.lengths_nb(nm, nt, pos, denom))
    cases = {
        "right_multiply": (_kernels.right_multiply_np, _kernels.right_multiply_nb, (M, t, gm, gt)),
        "lengths": (_kernels.lengths_np, _kernels.lengths_nb, (nm, nt, pos, denom)),
    }
    for name, (np_fn, nb_fn, args) in cases.items():
        out[name] = {
            "numpy_ms": 1000 * min(timeit.repeat(lambda: np_fn(*args), number=1, repeat=repeat)),
            "numba_ms": 1000 * min(timeit.repeat(lambda: nb_fn(*args), number=1, repeat=repeat)),
        }
    return out


def end_to_end(family, rank, max_len):
    rows = []
    for flag in ("1", "0"):
        env = dict(os.environ, AFFWEYL_NUMBA=flag)
        proc = subprocess.run(
            [sys.executable, "-c", END_TO_END, family, str(rank), str(max_len)],
            env=env, capture_output=True, text=True, check=True,
        )
        rows.append(json.loads(proc.stdout))
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--family", default="C")
    p.add_argument("--rank", type=int, default=4)
    p.add_argument("--max-len", type=int, default=18)
    p.add_argument("--repeat", type=int, default=5)
    args = p.parse_args(argv)
    if not _kernels.HAVE_NUMBA:
        sys.exit("numba is not installed; nothing to compare")
    d = build_root_datum(args.family, args.rank)
    k = kernel_timings(d, args.max_len, args.repeat)
    print(f"{d.name}, ball of radius {args.max_len}: {k['elements']} elements")
    for name in ("right_multiply", "lengths"):
        r = k[name]
        print(f"  {name:<15} numpy {r['numpy_ms']:8.2f} ms   numba {r['numba_ms']:8.2f} ms"
              f"   speedup {r['numpy_ms'] / r['numba_ms']:5.1f}x")
    for row in end_to_end(args.family, args.rank, args.max_len):
        print(f"  ball() with {row['backend']:<6} {row['seconds']:8.3f} s  ({row['size']} elements)")


if __name__ == "__main__":
    main()
