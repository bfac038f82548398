import json

import numpy as np
import pytest

from transinv import io
from transinv.errors import InvalidInstance
from transinv.experiments import random_boundary, random_standard, random_transmission
from transinv.forward import StandardCoeffs, TransmissionInstance, TwoSpectra, WeylData
from transinv.polynomial import Spectrum
from transinv.reduction import SymmetricJacobi


def test_format_float():
    assert io.format_float(2) == "2.0"
    assert io.format_float(-0.0) == "0.0"
    assert io.format_float(0.1) == "0.10000000000000001"
    assert float(io.format_float(1 / 3)) == 1 / 3
    for x in (1e-300, -2.5e17, 123456789.125, np.nextafter(1.0, 2.0)):
        assert float(io.format_float(x)) == x


def test_output_is_valid_json():
    T = random_transmission(np.random.default_rng(0), 3)
    doc = json.loads(io.dumps(io.instance_doc(T)))
    assert doc["kind"] == "transmission" and doc["l"] == 3
    assert list(doc)[:2] == ["kind", "l"]


@pytest.mark.parametrize("make", [
    lambda rng: random_transmission(rng, 4),
    lambda rng: random_standard(rng, 5),
    lambda rng: SymmetricJacobi(rng.uniform(0.5, 2, 3), rng.uniform(-2, 2, 4)),
])
def test_instance_round_trip_is_byte_identical(make):
    obj = make(np.random.default_rng(1))
    text = io.dumps(io.instance_doc(obj))
    again = io.dumps(io.instance_doc(io.from_doc(io.loads(text))))
    assert text == again


def test_other_documents_round_trip():
    rng = np.random.default_rng(2)
    docs = [
        io.spectrum_doc(Spectrum(rng.normal(size=5) + 1j * rng.normal(size=5)), 3, "polybc"),
        io.two_spectra_doc(TwoSpectra([1, -1], [0])),
        io.weyl_doc(WeylData.from_coefficients([1, 0.5, 2, -1j])),
        io.boundary_doc(random_boundary(rng, 3)),
    ]
    for doc in docs:
        text = io.dumps(doc)
        obj = io.from_doc(io.loads(text))
        rebuilt = {
            "spectrum": lambda o: io.spectrum_doc(o, doc["l"], doc.get("problem"))
            if isinstance(o, Spectrum) else io.two_spectra_doc(o),
            "weyl": io.weyl_doc,
            "boundary": io.boundary_doc,
        }[doc["kind"]](obj)
        assert io.dumps(rebuilt) == text


def test_values_survive_exactly():
    rng = np.random.default_rng(3)
    S = random_standard(rng, 6)
    back = io.from_doc(io.loads(io.dumps(io.instance_doc(S))))
    np.testing.assert_array_equal(back.a, S.a)
    np.testing.assert_array_equal(back.b, S.b)


def test_load_revalidates():
    bad = {"kind": "transmission", "l": 1, "alpha": [[0.0, 0.0]], "beta": [[0.0, 0.0]],
           "alpha_dot": [[1.0, 0.0]], "beta_dot": [[0.0, 0.0]]}
    with pytest.raises(InvalidInstance, match="alpha_1"):
        io.from_doc(bad)
    with pytest.raises(InvalidInstance):
        io.from_doc({"kind": "standard", "l": 3, "a": [[1, 0]], "b": [[0, 0]] * 3})
    with pytest.raises(InvalidInstance):
        io.from_doc({"kind": "spectrum", "l": 2, "problem": "transmission", "eigenvalues": [[0, 0]]})
    with pytest.raises(InvalidInstance):
        io.from_doc({"kind": "spectrum", "l": 2, "mu": [[0, 0]], "nu": []})


def test_schema_errors():
    with pytest.raises(io.FormatError):
        io.loads("{not json")
    with pytest.raises(io.FormatError):
        io.from_doc({"kind": "standard", "l": 0, "a": [], "b": []})
    with pytest.raises(io.FormatError):
        io.from_doc({"kind": "standard", "l": 1, "b": [[0, 0]]})
    with pytest.raises(io.FormatError):
        io.from_doc({"kind": "standard", "l": 1, "a": [], "b": [[0, 0, 0]]})
    with pytest.raises(io.FormatError):
        io.from_doc({"kind": "nonsense", "l": 1})


def test_known_data_documents():
    known = io.from_doc({"kind": "transmission-known", "l": 1, "alpha_dot": [[1, 0]],
                         "beta_dot": [[0, 0]], "alpha_l": [2, 0]})
    assert known["alpha_l"] == 2
    head = io.from_doc({"kind": "hochstadt-known", "l": 3, "A_head": [[1, 0]], "B_head": [[0, 0]]})
    np.testing.assert_array_equal(head["A_head"], [1])
    with pytest.raises(InvalidInstance):
        io.from_doc({"kind": "hochstadt-known", "l": 4, "A_head": [], "B_head": []})


def test_write_and_load(tmp_path):
    T = TransmissionInstance([2], [0], [1], [0])
    path = tmp_path / "t.json"
    io.write(io.instance_doc(T), path)
    doc, obj = io.load(path)
    assert doc["kind"] == "transmission"
    np.testing.assert_array_equal(obj.alpha, [2])
    assert isinstance(io.from_doc(io.instance_doc(StandardCoeffs([], [1]))), StandardCoeffs)
