#!/usr/bin/env python3
"""Smoke test for the mck_py extension module.

Builds the cdylib if needed, loads it directly from the cargo target
directory, and exercises the main types and operations end to end.
Run from the repository root:  python3 python/smoke_test.py
"""

import json
import pathlib
import shutil
import subprocess
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    lib = None
    for profile in ("release", "debug"):
        cand = ROOT / "target" / profile / "libmck_py.so"
        if cand.exists():
            lib = cand
            break
    if lib is None:
        print("building mck-py (release)...")
        subprocess.run(
            ["cargo", "build", "-p", "mck-py", "--release"], cwd=ROOT, check=True
        )
        lib = ROOT / "target" / "release" / "libmck_py.so"
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="mck_py_"))
    shutil.copy(lib, tmp / "mck_py.so")
    sys.path.insert(0, str(tmp))
    import mck_py

    return mck_py


def main():
    mck = load_module()
    print(f"mck_py {mck.__version__}")

    failures = 0

    def check(name, ok):
        nonlocal failures
        print(f"  {'PASS' if ok else 'FAIL'}  {name}")
        if not ok:
            failures += 1

    # Cone membership, float and exact.
    cone = mck.ConvexCone([0.0, 0.0], [], [[1.0, 0.0], [1.0, 1.0]])
    check("cone contains (2,1)", cone.contains([2.0, 1.0]))
    check("cone rejects (-1,0)", not cone.contains([-1.0, 0.0]))
    check("cone contains vertex exactly", cone.contains([0.0, 0.0], exact=True))

    # Hull with an interior point dropped.
    hull = mck.convex_hull([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [0.2, 0.2]])
    check("hull drops interior point", len(hull) == 3)

    # Klee certification of a small filled square.
    cells = [[i, j] for i in range(8) for j in range(8)]
    region = mck.GridRegion([0.0, 0.0], 0.125, cells, closed=True)
    cert = region.klee_certify()
    check("square certifies convex", cert["verdict"] == "Convex")
    check("square is one component", region.component_count() == 1)

    # Local model: momentum formula and the quadrant cone.
    model = mck.LocalModel([0.0, 0.0], 0, [], [[1.0, 0.0], [0.0, 1.0]])
    check("model momentum", model.momentum([], [0.2, 0.4]) == [0.1, 0.2])
    check("model cone membership", model.local_cone().contains([0.3, 0.1]))
    check(
        "vertex neighborhood covered",
        model.check_vertex_neighborhood(0.1, n_samples=20000, seed=1),
    )
    check("fiber connected", model.local_fiber_components([0.1, 0.1]) == 1)

    # The canonical counterexample space.
    verdict = mck.lgp_verdict(mck.builtin_space_json("circle_height_space"))
    check("circle space violates LFC at the extrema",
          verdict["hypotheses"]["lfc_witnesses"] == [0, 32])
    check("circle space fibers disconnected",
          not verdict["conclusions"]["fibers_connected"])
    check("circle space stays consistent", verdict["consistent"])

    # Openness diagnosis on the two worked examples (reduced budget).
    prato = mck.diagnose("prato", h=1.0 / 32.0, samples=40000, seed=1)
    check("prato open onto image", prato["open_onto_image"])
    kl = mck.diagnose("karshon_lerman", h=1.0 / 32.0, samples=40000, seed=1)
    check("karshon_lerman not open", not kl["open_onto_image"])
    check("karshon_lerman witness on the positive axis",
          kl["witness"] is not None and kl["witness"]["center"][0] > 0)

    # Classical oracles at a reduced trial count.
    sh = mck.schur_horn([2.0, 1.0, 0.0], trials=2000, seed=1)
    check("schur-horn no hull failures", sh["failures"] == 0)
    check("schur-horn trace identity", sh["trace_error_max"] <= 1e-12)

    horn = mck.horn_interval([1.0, 0.0], [1.0, 0.0], trials=2000, tol_fill=0.05, seed=1)
    check("horn interval filled", horn["failures"] == 0)

    toric = mck.toric_polytope(samples=20000, h=1.0 / 64.0, seed=1)
    check("toric hull close to the fixed-point hull",
          toric["report"]["max_violation"] <= 2.0 / 64.0)

    print(json.dumps({"failures": failures}))
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
