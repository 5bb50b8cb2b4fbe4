import json
import math

import numpy as np
import pytest

import friedrichs as fr


@pytest.fixture
def two_level():
    return fr.ModelParams([1.0, 1.06], [1.0, 1.2], 0.1)


def test_version():
    assert isinstance(fr.__version__, str) and fr.__version__


def test_poles_and_residues(two_level):
    poles = fr.find_resonances(two_level)
    assert len(poles) == 2
    roots, resonances = fr.find_poles_two_level(two_level)
    assert len(roots) == 8
    for p, q in zip(poles, resonances):
        assert abs(p.z - q.z) < 1e-10
        assert p.gamma > 0
        assert np.asarray(p.residues).shape == (2, 2)
    assert abs(poles[0].z - (1.000738365353155352 - 8.04004828146947e-3j)) < 1e-10


def test_identities(two_level):
    assert fr.check_discontinuity_identity(two_level, 1.5) < 1e-12
    assert np.max(fr.check_sum_rule(two_level, 1e-9)) < 1e-6
    assert all(c.passed for c in fr.verify_identities(two_level))


def test_survival(two_level):
    state = fr.InitialState([1.0, 0.0])
    curve = fr.survival(two_level, state, [0.0, 100.0])
    assert abs(curve.probability[0] - 1.0) < 1e-6
    gamma = fr.find_resonances(two_level)[0].gamma
    assert curve.probability[1] == pytest.approx(math.exp(-200.0 * gamma), rel=0.05)
    a = np.asarray(fr.amplitude_matrix(two_level, 0.0))
    assert np.max(np.abs(a - np.eye(2))) < 1e-6


def test_pheno_and_wavepacket():
    pheno = fr.PhenoParams([1.0, 1.06], [1e-3, 1e-3])
    curve = fr.survival_lowest(pheno, fr.InitialState([0.5, 0.0], normalize=False), [0.0, 500.0])
    assert curve.probability[0] == pytest.approx(0.0625)
    assert curve.probability[1] == pytest.approx(0.0625 * math.exp(-1.0))
    pheno5, state = fr.gaussian_wavepacket(2, 1.0, 0.1, 1e-3)
    assert len(pheno5.omega_tilde) == 5


def test_errors():
    with pytest.raises(fr.InvalidInput):
        fr.ModelParams([1.0, 1.0], [1.0, 1.0], 0.1)
    with pytest.raises(fr.FriedrichsError):
        fr.ModelParams([1.0], [1.0, 2.0], 0.1)


def test_run_config(tmp_path):
    config = {
        "model": {"omega": [1.0, 1.06], "rho": [1.0, 1.2], "lambda": 0.1},
        "state": {"a": [1.0, 0.0]},
        "times": {"t_min": 0.0, "t_max": 100.0, "n_points": 5},
    }
    code, messages, files = fr.run_config(json.dumps(config), str(tmp_path))
    assert code == 0, messages
    assert (tmp_path / "survival.csv").exists()
    assert (tmp_path / "manifest.json").exists()
    code, _, _ = fr.run_config("{not json", str(tmp_path / "bad"))
    assert code == 1
