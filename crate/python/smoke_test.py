"""Smoke test for the dldd Python extension.

Build the extension first, e.g. `maturin develop -m crates/py/Cargo.toml`, or
copy `target/release/libdldd.so` to `dldd.so` somewhere on PYTHONPATH.
"""

import json

import dldd


def main():
    g = dldd.Graph(3, [(0, 1, 2), (1, 2, 2), (2, 0, 2)])
    assert (g.n, g.m) == (3, 3)
    assert dldd.Graph.parse(g.to_edge_list()).edges() == g.edges()

    # A 64-cycle with diameter budget 16 must lose at least one edge.
    cycle = dldd.cycle(64)
    res = dldd.decompose(cycle, 16, seed=5, diagnostics=True)
    assert res.deleted, "long cycle left uncut"
    report = dldd.validate(cycle, res)
    assert report.ok, report.failures
    assert sorted(v for c in res.components for v in c) == list(range(64))

    again = dldd.decompose(cycle, 16, seed=5, diagnostics=True, speedup=False)
    assert again.to_json() == res.to_json()
    assert dldd.LddResult.from_json(res.to_json()).deleted == res.deleted
    assert json.loads(res.diagnostics_json())[0]["depth"] == 0

    sccs = dldd.scc(cycle, res.deleted)
    assert len(sccs) == report.scc_count
    assert dldd.weak_diameter(cycle, [0, 32]) == 32
    assert dldd.weak_diameter(cycle, [0, 1]) == 63
    assert dldd.weak_diameter(dldd.path(4), [0, 3]) is None

    star = dldd.heavy_gadget("close-pair", 16, 32)
    res = dldd.decompose(star, 32)
    assert res.case1_components and dldd.validate(star, res).ok

    rnd = dldd.random_digraph(100, 400, 8, seed=3)
    stats = dldd.estimate_cut_probs(rnd, 12, trials=50, seed=1)
    assert stats.trials == 50 and len(stats.p_hat) == rnd.m
    assert all(0.0 <= p <= 1.0 for p in stats.p_hat)
    assert stats.to_csv().startswith("edge_id,tail,head,weight,p_hat,rho,ci_low,ci_high")

    for bad in (lambda: dldd.Graph(2, [(0, 5, 1)]), lambda: dldd.decompose(g, 0)):
        try:
            bad()
        except ValueError:
            pass
        else:
            raise AssertionError("expected ValueError")

    print("smoke test ok:", res, stats.l_hat)


if __name__ == "__main__":
    main()
