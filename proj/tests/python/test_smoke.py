import json
import math

import pytest

import curvecheb


def test_hyperbola_directions():
    c = curvecheb.Curve.hyperbola()
    assert c.degree == 2
    assert [d.real for d in c.directions] == pytest.approx([-1.0, 1.0])
    v1 = dict(((a, b), z) for a, b, z in c.v(1))
    assert v1[(1, 0)] == pytest.approx(0.5)
    assert v1[(0, 1)] == pytest.approx(-0.5)


def test_invalid_curves_raise_value_error():
    with pytest.raises(ValueError, match="horizontal asymptote"):
        curvecheb.Curve([(1, 1, 1.0), (0, 0, -0.1)])
    with pytest.raises(ValueError):
        curvecheb.Curve([(1, 0, 1.0), (0, 1, 1.0)])
    relaxed = curvecheb.Curve([(1, 1, 1.0), (0, 0, -0.1)], relaxed=True)
    assert relaxed.relaxed


def test_torus_chebyshev_and_robin():
    c = curvecheb.Curve.hyperbola()
    K = curvecheb.sample(c, "AbsV1V2Torus", {"r1": 0.5, "r2": 0.5}, resolution=256)
    assert len(K) == 256
    for n in range(1, 5):
        s = curvecheb.chebyshev_solve(c, K, "MQ:v1", n)
        assert s["converged"]
        assert s["tn"] == pytest.approx(0.5, abs=1e-6)
    est = curvecheb.estimate_class(c, K, "MQ:v2", 8)
    assert est["estimate"] == pytest.approx(0.5, abs=1e-6)
    rep = curvecheb.robin_constants(c, K, 8)
    assert [e["rho"] for e in rep["entries"]] == pytest.approx([math.log(2)] * 2, abs=1e-6)


def test_transfinite_diameter_and_vdm():
    c = curvecheb.Curve.hyperbola()
    K = curvecheb.sample(c, "Z1Disk", {"r": 1.0}, resolution=256)
    d = curvecheb.transfinite_diameter(c, K, "S", 10)
    assert d["estimate"] == pytest.approx(1.0, rel=0.15)
    assert len(d["points"]) == d["blocks"][-1][1]
    assert curvecheb.log_vdm(c, "S", d["points"][:1]) == 0.0


def test_extremal_matches_oracle_on_the_disk():
    c = curvecheb.Curve.hyperbola()
    K = curvecheb.sample(c, "Z1Disk", {"r": 0.8}, resolution=256)
    pts = curvecheb.probe_grid(c, [1.5, 3.0], 4)
    oracle = curvecheb.oracle(c, K, pts)
    for z, o in zip(pts, oracle):
        assert o == pytest.approx(math.log(abs(z[0]) / 0.8))
    vals = [max(a, b) for a, b in zip(curvecheb.extremal(c, K, "Vk", 1, 8, pts),
                                      curvecheb.extremal(c, K, "Vk", 2, 8, pts))]
    assert vals == pytest.approx(oracle, abs=5e-2)


def test_run_verify(tmp_path):
    cfg = {"curve": {"name": "hyperbola"}, "set": {"kind": "AbsV1V2Torus", "r1": 0.5, "r2": 0.5},
           "n_max": 16}
    code, report, files = curvecheb.run("verify", json.dumps(cfg), str(tmp_path))
    assert code == 0, report
    assert any(f.endswith("verify.txt") for f in files)
    cfg["tolerance_override"] = 0
    code, _, _ = curvecheb.run("verify", json.dumps(cfg), str(tmp_path))
    assert code == 1
    with pytest.raises(ValueError):
        curvecheb.run("nonsense", json.dumps(cfg), str(tmp_path))
