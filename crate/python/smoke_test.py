#!/usr/bin/env python3
"""Smoke test for the lackawalk_py extension module.

Builds nothing itself: run `cargo build -p lackawalk-python` (or --release)
first, then `python3 python/smoke_test.py`. The script copies the built
cdylib next to a temp directory under the right import name.
"""

import math
import pathlib
import shutil
import sys
import tempfile

ROOT = pathlib.Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / "release" / "liblackawalk_py.so",
        ROOT / "target" / "debug" / "liblackawalk_py.so",
    ]
    built = [p for p in candidates if p.exists()]
    if not built:
        sys.exit("build the extension first: cargo build -p lackawalk-python")
    src = max(built, key=lambda p: p.stat().st_mtime)
    tmp = pathlib.Path(tempfile.mkdtemp(prefix="lackawalk_py_"))
    shutil.copy2(src, tmp / "lackawalk_py.so")
    sys.path.insert(0, str(tmp))
    import lackawalk_py

    return lackawalk_py


def main():
    lw = load_module()
    checks = 0

    def check(name, ok, detail=""):
        nonlocal checks
        checks += 1
        status = "ok" if ok else "FAIL"
        print(f"  [{status}] {name}{': ' + detail if detail else ''}")
        if not ok:
            sys.exit(1)

    print("graph construction")
    c8 = lw.Graph.cycle(8)
    check("cycle(8) shape", c8.n_vertices == 8 and c8.degree == 2, repr(c8))
    check("neighbors ordered", c8.neighbors(0) == [1, 7])
    j52 = lw.Graph.johnson(5, 2)
    check("johnson(5,2) shape", j52.n_vertices == 10 and j52.degree == 6)
    check("johnson is locally arc-transitive", j52.is_locally_arc_transitive())
    moebius = lw.Graph.moebius_ladder(8)
    check("moebius ladder is not", not moebius.is_locally_arc_transitive())
    edge_graph = lw.Graph.from_edge_list("4 2\n0 1\n1 2\n2 3\n3 0\n")
    check("edge list parses", edge_graph.n_vertices == 4)
    try:
        lw.Graph.paley(7)
        check("paley(7) rejected", False)
    except ValueError:
        check("paley(7) rejected", True)

    print("hitting times")
    ht = lw.hitting_time(c8, 0)
    check("cycle(8) HT = N(N+1)/6", abs(ht - 12.0) < 1e-9, f"{ht:.12f}")
    mean, stderr, truncated = lw.hitting_time_mc(c8, 0, trials=50_000, seed=3)
    check(
        "Monte Carlo within 3 sigma",
        abs(mean - ht) <= 3 * stderr and truncated == 0,
        f"{mean:.4f} +- {stderr:.4f}",
    )

    print("quantum hitting time identity")
    for graph in [c8, lw.Graph.torus(4, 4), lw.Graph.complete(8), j52]:
        residual = lw.theorem1_residual(graph, 0)
        check(f"identity on {graph!r}", residual < 1e-9, f"residual {residual:.3e}")

    print("claim residuals on cycle(8)")
    residuals = lw.claim_residuals(c8, 0)
    for claim, (residual, tolerance, ok) in sorted(residuals.items()):
        check(f"{claim} within {tolerance:g}", ok, f"residual {residual:.3e}")

    print("search experiment")
    torus = lw.Graph.torus(10, 10)
    curve = lw.search_curve(torus, 0)
    peak = max(curve)
    check("torus(10,10) search peak >= 0.5", peak >= 0.5, f"max {peak:.4f} at t={curve.index(peak)}")
    spectrum = lw.spectrum_summary(c8, 0)
    c_sq = spectrum["cot_qht"] ** 2
    ht_s = spectrum["ht_s"]
    n = c8.n_vertices
    s = 1 - 1 / n
    want = 2 * ht_s - (1 / n) / (1 - s * (1 - 1 / n))
    check("C^2 = 2 HT(s) - p_M/(1-s(1-p_M))", abs(c_sq - want) < 1e-9)

    print("trajectory distance")
    total, exact, embed = lw.theorem2_max_distance(lw.Graph.torus(6, 6), 0, c=1.0)
    check("coined equals variant route", exact < 1e-9, f"{exact:.3e}")
    check("embedding distance moderate", 0 < embed < 0.5, f"{embed:.4f}")
    check("triangle bound consistent", total <= exact + embed + 1e-12)

    print(f"all {checks} smoke checks passed")


if __name__ == "__main__":
    main()
