"""Timing comparison of the compiled kernels against the pure-Python path.

Runs the same two workloads in a fresh interpreter per mode (module-level
flags are read once at import, so the mode cannot be toggled in-process):

    lift    full-circle root tracking at max_step 1e-5 (100k grid points)
    jones   signed log-scale product sum at N = 200000

Usage: python benchmarks/bench_backends.py
"""

import json
import math
import os
import subprocess
import sys
import time

REPEATS = 3


def workloads():
    import numpy as np

    from apolylab import backends
    from apolylab.curve_tracker import ArcSeg, PathSpec, StepControls, lift_path
    from apolylab.poly_core import parse_poly, roots_in_l

    A = parse_poly("m^4*l^2 - (m^8 - m^6 - 2*m^4 - m^2 + 1)*l + m^4")
    seed = sorted(roots_in_l(A, 0.3 + 0j), key=abs)[0]
    spec = PathSpec(segments=(ArcSeg(0j, 0.3, 0.0, 2.0 * math.pi),),
                    l_seed=complex(seed), closed=True)
    ctrl = StepControls(max_step=1e-5)

    def bench_lift():
        lift_path(A, spec, ctrl)

    def bench_jones():
        backends.jones_sum(200000, 2.0 * math.pi / 200000)

    return backends, {"lift": bench_lift, "jones": bench_jones}


def run_worker():
    backends, work = workloads()
    out = {"jit": backends.JIT_ENABLED}
    for name, fn in work.items():
        fn()  # warm up (JIT compile / cache load)
        out[name] = min(time_once(fn) for _ in range(REPEATS))
    print(json.dumps(out))


def time_once(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def main():
    rows = {}
    for mode, env_val in (("numba", "0"), ("pure", "1")):
        env = dict(os.environ, APOLYLAB_FORCE_PURE=env_val)
        proc = subprocess.run([sys.executable, __file__, "--worker"],
                              env=env, capture_output=True, text=True)
        if proc.returncode != 0:
            sys.stderr.write(proc.stderr)
            return 1
        rows[mode] = json.loads(proc.stdout.strip().splitlines()[-1])
    if not rows["numba"]["jit"]:
        print("numba unavailable: both rows ran the pure path")
    print("%-8s %12s %12s %10s" % ("kernel", "numba (ms)", "pure (ms)", "speedup"))
    for name in ("lift", "jones"):
        a, b = rows["numba"][name], rows["pure"][name]
        print("%-8s %12.2f %12.2f %9.1fx" % (name, a * 1e3, b * 1e3, b / a))
    return 0


if __name__ == "__main__":
    if "--worker" in sys.argv:
        run_worker()
    else:
        sys.exit(main())
