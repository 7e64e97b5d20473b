import json
import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dsrange import berezin as bz
from dsrange.cli import fmt, main, read_csv
from dsrange.config import (ConfigError, RunConfig, dumps_config, parse_config, parse_phi, parse_psi)
from dsrange.operators import (ConstantMap, Dilation, IdentityMap, Mobius, NormalizedKernel, One,
                               SeriesMap, SeriesWeight, build_matrix, weyl_operator)
from dsrange.series import PowerSeries

EXAMPLE = """
[space]
s = 0.5
N = 16          # truncation order

[symbols]
psi = kernel gamma=0.5
phi = mobius gamma=0.5 alpha=-1

[sweep]
angles = 64

[grid]
radial = 8
angular = 16

[run]
seed = 3
"""


def write(tmp_path, text, name="run.ini"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_parse_example():
    cfg = parse_config(EXAMPLE)
    assert cfg.s == 0.5 and cfg.N == 16 and cfg.angles == 64 and cfg.seed == 3
    assert cfg.psi == NormalizedKernel(0.5) and cfg.phi == Mobius(0.5, -1.0)
    assert (cfg.radial, cfg.angular) == (8, 16)


def test_defaults_when_empty():
    assert parse_config("") == RunConfig()


small = st.complex_numbers(max_magnitude=0.9, allow_nan=False, allow_infinity=False)
phis = st.one_of(st.just(IdentityMap()), small.map(ConstantMap), small.map(Dilation),
                 st.builds(Mobius, small, st.sampled_from([1, -1, 1j, -1j])),
                 st.lists(small, min_size=1, max_size=5).map(lambda c: SeriesMap(PowerSeries(c))))
psis = st.one_of(st.just(One()), small.map(NormalizedKernel),
                 st.lists(small, min_size=1, max_size=5).map(lambda c: SeriesWeight(PowerSeries(c))))


@given(st.floats(0.01, 0.99), st.integers(8, 200), psis, phis, st.integers(16, 5000),
       st.integers(4, 100), st.integers(8, 500), st.integers(0, 2 ** 31))
@settings(max_examples=150)
def test_config_round_trip(s, N, psi, phi, M, R, K, seed):
    cfg = RunConfig(s, N, psi, phi, M, R, K, seed)
    again = parse_config(dumps_config(cfg), allow_unverified_selfmap=True)
    assert again == cfg
    assert dumps_config(again) == dumps_config(cfg)


def test_exp_weight_descriptor():
    w = parse_psi("exp scale=1 shift=-1", 64)
    assert w.coeffs[0] == pytest.approx(np.exp(-1)) and w.coeffs.order == 64


@pytest.mark.parametrize("text", [
    "[space]\ns = 1.5\n", "[space]\ns = 0\n", "[space]\nN = 0\n", "[sweep]\nangles = 8\n",
    "[grid]\nradial = 3\n", "[grid]\nangular = 4\n", "[bogus]\nx = 1\n", "[space]\nt = 1\n",
    "[space]\nN = 8.5\n", "[symbols]\nphi = warp k=1\n", "[symbols]\nphi = dilation lambda=2\n",
    "[symbols]\nphi = mobius gamma=0.5 alpha=0.5\n", "[symbols]\npsi = kernel gamma=abc\n",
    "[symbols]\nphi = mobius alpha=1\n", "[symbols]\npsi = kernel gamma=0.1 gamma=0.2\n",
    "no section header\n",
])
def test_invalid_configs(text):
    with pytest.raises(ConfigError):
        parse_config(text)


def test_series_phi_needs_opt_in():
    with pytest.raises(ConfigError, match="allow-unverified-selfmap"):
        parse_phi("series 0,0.5")
    assert parse_phi("series 0,0.5", True) == SeriesMap(PowerSeries([0, 0.5]))


def test_fmt_digits():
    assert fmt(1 / 3) == "0.333333333333333"
    assert fmt(1 - 2j) == "1-2j"


# command line

def run_cli(*args):
    return main(list(args))


def test_matrix_command(tmp_path, capsys):
    cfg = write(tmp_path, "[space]\nN = 4\n[symbols]\npsi = kernel gamma=0.5\nphi = mobius gamma=0.5 alpha=1\n")
    assert run_cli("matrix", "--config", cfg, "--out", str(tmp_path)) == 0
    d = json.loads((tmp_path / "matrix.json").read_text())
    A = build_matrix(weyl_operator(0.5, 1.0, 0.5, 4)).entries
    got = np.array([complex(*e) for e in d["entries"]]).reshape(5, 5)
    np.testing.assert_array_equal(got, A)
    assert "5x5" in capsys.readouterr().out


def test_numrange_command(tmp_path, capsys):
    cfg = write(tmp_path, "[space]\nN = 64\n[symbols]\npsi = series 0,0,1\nphi = dilation lambda=0.5\n")
    assert run_cli("numrange", "--config", cfg, "--out", str(tmp_path), "--angles", "256") == 0
    out = capsys.readouterr().out
    assert "0 interior: true" in out and "numerical radius:" in out
    header, rows = read_csv(tmp_path / "boundary.csv")
    assert header == ["theta", "re", "im"] and len(rows) >= 256
    header, rows = read_csv(tmp_path / "hull.csv")
    assert header == ["re", "im"] and len(rows) >= 3


def test_numrange_segment(tmp_path, capsys):
    cfg = write(tmp_path, "[symbols]\nphi = dilation lambda=0.3\n[space]\nN = 16\n")
    assert run_cli("numrange", "--config", cfg, "--out", str(tmp_path)) == 0
    out = capsys.readouterr().out
    assert "segment" in out and "0 interior: false" in out and "numerical radius: 1\n" in out


def test_berezin_csv_round_trips_exactly(tmp_path, capsys):
    cfg_path = write(tmp_path, EXAMPLE)
    assert run_cli("berezin", "--config", cfg_path, "--out", str(tmp_path), "--grid", "6,12") == 0
    out = capsys.readouterr().out
    assert "Berezin radius estimate: 1\n" in out
    header, rows = read_csv(tmp_path / "berezin.csv")
    assert header == ["r", "theta", "z_re", "z_im", "val_re", "val_im"]
    cfg = parse_config(EXAMPLE)
    S = bz.berezin_grid(cfg.spec(), 6, 12, extra_points=[bz.weyl_fixed_point(0.5)])
    rows = np.array(rows)
    np.testing.assert_array_equal(rows[:, 2] + 1j * rows[:, 3], S.points)
    np.testing.assert_array_equal(rows[:, 4] + 1j * rows[:, 5], S.values)


def test_identity_berezin_radius(tmp_path, capsys):
    assert run_cli("berezin", "--out", str(tmp_path), "--grid", "8,16") == 0
    out = capsys.readouterr().out
    assert "Berezin radius estimate: 1\n" in out and "maximizer: 0\n" in out


def test_verify_single_suite(tmp_path, capsys):
    assert run_cli("verify", "--suite", "ellipses", "--out", str(tmp_path)) == 0
    rep = json.loads((tmp_path / "report.json").read_text())
    assert rep["checks"] and all(c["id"].startswith("ellipse.") for c in rep["checks"])
    assert rep["config"]["suites"] == ["ellipses"]


def test_verify_failures_exit_one(tmp_path, capsys):
    cfg = write(tmp_path, "[space]\nN = 8\n")
    assert run_cli("verify", "--config", cfg, "--suite", "structure", "--out", str(tmp_path)) == 1
    assert "FAIL structure.matrix-berezin-agreement" in capsys.readouterr().out


@pytest.mark.parametrize("text", ["[space]\ns = 1.5\n", "[space]\nN = 4\n",
                                  "[symbols]\nphi = series 0,0.5\n"])
def test_invalid_input_exit_two(tmp_path, capsys, text):
    assert run_cli("numrange", "--config", write(tmp_path, text), "--out", str(tmp_path)) == 2
    assert "error" in capsys.readouterr().err


def test_bad_angles_exit_two(tmp_path):
    assert run_cli("numrange", "--angles", "8", "--out", str(tmp_path)) == 2


def test_unverified_selfmap_flag(tmp_path):
    cfg = write(tmp_path, "[space]\nN = 8\n[symbols]\nphi = series 0,0.5,0.25\n")
    assert run_cli("numrange", "--config", cfg, "--allow-unverified-selfmap", "--out", str(tmp_path),
                   "--angles", "32") == 0


def test_io_errors_exit_three(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    assert run_cli("numrange", "--out", str(blocker / "sub"), "--angles", "32") == 3
    assert run_cli("numrange", "--config", str(tmp_path / "missing.ini")) == 3


def test_no_partial_files_left(tmp_path):
    assert run_cli("matrix", "--out", str(tmp_path)) == 0
    assert sorted(os.listdir(tmp_path)) == ["matrix.json"]


def test_module_entry_point(tmp_path):
    res = subprocess.run([sys.executable, "-m", "dsrange", "matrix", "--out", str(tmp_path)],
                         capture_output=True, text=True)
    assert res.returncode == 0 and (tmp_path / "matrix.json").exists()
    res = subprocess.run([sys.executable, "-m", "dsrange", "frobnicate"], capture_output=True, text=True)
    assert res.returncode == 2
