import json

import numpy as np
import pytest

from transinv import io
from transinv.cli import main
from transinv.forward import TransmissionInstance, StandardCoeffs


def write_json(path, doc):
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def t1(tmp_path):
    return write_json(tmp_path / "t1.json", io.instance_doc(TransmissionInstance([2], [0], [1], [0])))


def read(path):
    return json.loads(open(path).read())


def pairs(doc, name):
    return np.array([complex(*z) for z in doc[name]])


def test_forward_transmission_spectrum(t1, tmp_path):
    out = tmp_path / "s.json"
    assert main(["forward", t1, "--out", str(out)]) == 0
    assert read(out)["eigenvalues"] == [[0.0, 0.0]]


def test_forward_weyl(tmp_path):
    src = write_json(tmp_path / "s.json", io.instance_doc(StandardCoeffs([1, 1], [0, 0])))
    out = tmp_path / "w.json"
    assert main(["forward", src, "--what", "weyl", "--out", str(out)]) == 0
    doc = read(out)
    np.testing.assert_allclose(pairs(doc, "M"), [1, 0, 1, 0])
    assert doc["diagnostics"]["condition"] == "Hankel determinant condition"


def test_forward_invalid_instance(tmp_path, capsys):
    src = write_json(tmp_path / "bad.json", {"kind": "transmission", "l": 1, "alpha": [[0, 0]],
                                             "beta": [[0, 0]], "alpha_dot": [[1, 0]], "beta_dot": [[0, 0]]})
    assert main(["forward", src]) == 2
    assert "alpha_1" in capsys.readouterr().err


def test_forward_degenerate_leading_named(tmp_path, capsys):
    src = write_json(tmp_path / "bad.json", {"kind": "transmission", "l": 1, "alpha": [[1, 0]],
                                             "beta": [[0, 0]], "alpha_dot": [[1, 0]], "beta_dot": [[0, 0]]})
    assert main(["forward", src]) == 2
    assert "alpha_l equals alpha_dot_l" in capsys.readouterr().err


def test_forward_is_deterministic(t1, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["forward", t1, "--out", str(a)])
    main(["forward", t1, "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_inverse_transmission(t1, tmp_path):
    spec = tmp_path / "s.json"
    main(["forward", t1, "--out", str(spec)])
    known = write_json(tmp_path / "k.json", {"kind": "transmission-known", "l": 1,
                                             "alpha_dot": [[1, 0]], "beta_dot": [[0, 0]], "alpha_l": [2, 0]})
    out = tmp_path / "r.json"
    assert main(["inverse", str(spec), "--mode", "transmission", "--known", known, "--out", str(out)]) == 0
    doc = read(out)
    np.testing.assert_allclose(pairs(doc, "alpha"), [2])
    np.testing.assert_allclose(pairs(doc, "beta"), [0], atol=1e-12)


def test_inverse_hochstadt(tmp_path):
    r2 = np.sqrt(2)
    spec = write_json(tmp_path / "mu.json", {"kind": "spectrum", "l": 3, "problem": "dirichlet",
                                             "eigenvalues": [[0, 0], [r2, 0], [-r2, 0]]})
    known = write_json(tmp_path / "k.json", {"kind": "hochstadt-known", "l": 3,
                                             "A_head": [[1, 0]], "B_head": [[0, 0]]})
    out = tmp_path / "J.json"
    assert main(["inverse", spec, "--mode", "hochstadt", "--known", known, "--out", str(out)]) == 0
    doc = read(out)
    np.testing.assert_allclose(pairs(doc, "A"), [1, 1], atol=1e-10)
    np.testing.assert_allclose(pairs(doc, "B"), [0, 0, 0], atol=1e-10)


def test_inverse_weyl_hankel_failure(tmp_path, capsys):
    src = write_json(tmp_path / "w.json", {"kind": "weyl", "l": 2, "M": [[1, 0], [0, 0], [0, 0], [0, 0]]})
    assert main(["inverse", src, "--mode", "weyl"]) == 3
    assert "Hankel determinant condition" in capsys.readouterr().err


def test_inverse_weyl_diagnostics(tmp_path):
    src = write_json(tmp_path / "w.json", {"kind": "weyl", "l": 2, "M": [[1, 0], [0, 0], [1, 0], [0, 0]]})
    out = tmp_path / "s.json"
    assert main(["inverse", src, "--mode", "weyl", "--out", str(out)]) == 0
    doc = read(out)
    assert doc["diagnostics"]["hankel_determinants"] == [[1.0, 0.0]]
    np.testing.assert_allclose(pairs(doc, "a"), [1, 1])


def test_inverse_two_spectra_and_polybc(tmp_path):
    S = StandardCoeffs([0.7, -1.2j], [0.3, 1, -0.5])
    src = write_json(tmp_path / "S.json", io.instance_doc(S))
    ts = tmp_path / "ts.json"
    assert main(["forward", src, "--what", "two-spectra", "--out", str(ts)]) == 0
    out = tmp_path / "o.json"
    assert main(["inverse", str(ts), "--mode", "two-spectra", "--out", str(out)]) == 0
    np.testing.assert_allclose(pairs(read(out), "b"), S.b, atol=1e-10)

    bnd = write_json(tmp_path / "B.json", {"kind": "boundary", "l": 3, "config": "paper",
                                           "R0": [[1, 0], [0, 0], [0, 1], [2, 0]], "R1": [[0.5, 0], [0, 0], [1, 0]]})
    sp = tmp_path / "sp.json"
    assert main(["forward", src, "--boundary", bnd, "--out", str(sp)]) == 0
    assert len(read(sp)["eigenvalues"]) == 5
    assert main(["inverse", str(sp), "--mode", "polybc", "--boundary", bnd, "--out", str(out)]) == 0
    np.testing.assert_allclose(pairs(read(out), "a"), S.a, atol=1e-9)


def test_inverse_missing_inputs(tmp_path):
    spec = write_json(tmp_path / "s.json", {"kind": "spectrum", "l": 1, "eigenvalues": [[0, 0]]})
    assert main(["inverse", spec, "--mode", "transmission"]) == 2
    assert main(["inverse", spec, "--mode", "weyl"]) == 2
    assert main(["inverse", str(tmp_path / "missing.json"), "--mode", "weyl"]) == 2


def test_roundtrip_commands(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert main(["roundtrip", "--seed", "1", "--l", "5", "--trials", "50",
                 "--mode", "transmission", "--out", str(out)]) == 0
    assert read(out)["max_error"] <= 1e-6
    assert main(["roundtrip", "--seed", "1", "--l", "1", "--trials", "1", "--mode", "weyl",
                 "--out", str(out)]) == 0
    assert read(out)["max_error"] <= 1e-14
    assert main(["roundtrip", "--l", "13"]) == 2


def test_roundtrip_failure_echoes_seed(tmp_path, capsys):
    assert main(["roundtrip", "--seed", "4", "--l", "6", "--trials", "3", "--tol", "1e-30",
                 "--mode", "weyl", "--out", str(tmp_path / "r.json")]) == 4
    err = capsys.readouterr().err
    assert "FAIL trial=0 seed=[4, 0]" in err


def test_roundtrip_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        main(["roundtrip", "--seed", "3", "--l", "4", "--trials", "5", "--mode", "polybc", "--out", str(p)])
    assert a.read_bytes() == b.read_bytes()


def test_stability_command(tmp_path):
    src = write_json(tmp_path / "S.json", io.instance_doc(StandardCoeffs([1, 1, 1, 1], [0.5, -0.5, 1, -1, 0])))
    out = tmp_path / "st.json"
    assert main(["stability", src, "--deltas", "0", "1e-3", "--trials", "5", "--out", str(out)]) == 0
    rows = read(out)["rows"]
    assert rows[0]["max_error"] == 0.0
    assert rows[1]["max_error"] > 0
