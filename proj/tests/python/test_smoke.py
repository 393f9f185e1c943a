import json
import math
import os
import subprocess

import pytest

import liemm


def test_representation_identity():
    for n in range(1, 5):
        for s in range(7):
            assert liemm.sum_dim_squares(s, n) == math.comb(s + n * n, n * n)


def test_staircase_and_max_dim():
    assert liemm.weyl_dim([2, 1, 0], 3) == 8
    lam, d = liemm.max_dim(6, 3)
    assert d == 35 and lam == [5, 1, 0]


def test_omega_bound():
    assert liemm.omega_bound(8, 8, 8, 64, 2) == pytest.approx(2.0, abs=1e-12)
    with pytest.raises(ValueError):
        liemm.omega_bound(2, 2, 2, 64, 2)


def test_report_roundtrip():
    code, rep = liemm.report("repdim", "--n", "3", "--s", "4", "--no-timestamp")
    assert code == 0
    assert rep["schema"] == 1 and rep["verdict"] == "pass"
    assert rep["tool"]["version"] == liemm.__version__
    assert "split-assemble" in liemm.subcommands()


def test_usage_error():
    code, _, err = liemm.run_cli(["repdim", "--format", "xml"])
    assert code == 3 and "error" in err


@pytest.mark.skipif("LIEMM_CLI" not in os.environ, reason="CLI path not provided")
def test_cli_binary_matches_module():
    args = ["embed-demo", "--q", "5", "--no-timestamp"]
    proc = subprocess.run([os.environ["LIEMM_CLI"], *args], capture_output=True, text=True)
    assert proc.returncode == 0
    _, out, _ = liemm.run_cli(args)
    assert json.loads(proc.stdout) == json.loads(out)
