"""Smoke test for the ymgraph extension module."""

import json
import math

import ymgraph


def close(a, b, tol=1e-10):
    return abs(a - b) <= tol


def main():
    k4 = ymgraph.Graph.complete(4)
    cx = ymgraph.CliqueComplex(k4)
    assert cx.counts() == [4, 6, 4, 1], cx.counts()
    assert cx.clique_number == 4
    assert cx.betti_numbers() == [1, 0, 0, 0]
    assert all(close(e, 4.0) for e in cx.spectrum(0)[1:])

    g = ymgraph.Graph.from_text("0 1\n1 2\n0 2\n")
    assert ymgraph.CliqueComplex(g).forman_ricci(1) == [3.0, 3.0, 3.0]
    try:
        ymgraph.Graph(3, [(0, 1), (1, 2), (2, 0)])
    except ValueError as e:
        assert "cycle" in str(e)
    else:
        raise AssertionError("cyclic orientation accepted")

    a = ymgraph.Connection.random(cx, "Un", n=2, seed=5)
    rep = ymgraph.identity_suite(cx, a, seed=1)
    assert rep["all_pass"], rep
    value = ymgraph.ym_value(cx, a)
    fixed, gauge = ymgraph.gauge_fix(cx, a)
    assert close(ymgraph.ym_value(cx, fixed), value)
    assert len(gauge) == 4

    back = ymgraph.Connection.from_json(cx, a.to_json(cx))
    assert all(
        abs(x - y) < 1e-15
        for m, n in zip(a.matrices(), back.matrices())
        for r, s in zip(m, n)
        for x, y in zip(r, s)
    )
    assert json.loads(a.to_json(cx))["group"] == "Un"

    best = ymgraph.ym_optimize(cx, maximize=True, starts=4, seed=0)
    assert best["converged"] and close(best["value"], 8.0), best["value"]

    grid = ymgraph.grid_oracle(cx, resolution=60)
    assert any(p["indices"] == [15, 45, 15] for p in grid["passes"])

    k3 = ymgraph.CliqueComplex(g)
    flat = ymgraph.Connection.from_angles(k3, [0.0, 0.0, 0.0])
    assert close(ymgraph.ymh_value(k3, flat, [[1], [1], [0]]), 1.0)
    edge_norms, vertex_norms = ymgraph.ymh_residual_norms(k3, flat, [[1], [1], [0]])
    assert len(edge_norms) == 3 and len(vertex_norms) == 3
    assert all(math.isfinite(x) for x in edge_norms + vertex_norms)

    print("smoke test passed")


if __name__ == "__main__":
    main()
