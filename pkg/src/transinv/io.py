"""On-disk documents: instances, spectra, Weyl data, boundary data and reports.

Every document is a JSON object with ``kind`` and ``l`` first.  Complex
numbers are written as ``[re, im]`` pairs with 17 significant digits, so a
load followed by a dump reproduces the file byte for byte.  Loading
re-validates the target type, so a malformed file fails early with a message
naming the violated invariant.
"""

import json
import math
import sys

import numpy as np

from .errors import InvalidInstance, SpectralError
from .forward import BoundaryPolys, StandardCoeffs, TransmissionInstance, TwoSpectra, WeylData
from .polynomial import Poly, Spectrum
from .reduction import SymmetricJacobi

INSTANCE_KINDS = ("transmission", "standard", "symmetric")


class FormatError(SpectralError):
    """The document is not valid JSON or does not follow the schema."""


# scalar encoding ------------------------------------------------------------

def format_float(x):
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return json.dumps(x)
    if x == 0:
        return "0.0"  # signed zeros from root finding carry no information
    text = f"{x:.17g}"
    if "e" not in text and "." not in text:
        text += ".0"
    return text


def _encode(obj, indent, level):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(doc):
    """Serialize a document (plain dicts, lists, strings and real numbers)."""
    return _encode(doc, 2, 0) + "\n"


def complex_pairs(values):
    return [[float(z.real), float(z.imag)] for z in np.asarray(values, dtype=complex).ravel()]


def parse_complex_array(raw, name):
    if not isinstance(raw, list):
        raise FormatError(f"field {name!r} must be a list of [re, im] pairs")
    out = np.zeros(len(raw), dtype=complex)
    for i, item in enumerate(raw):
        if isinstance(item, (int, float)) and not isinstance(item, bool):
            out[i] = float(item)
            continue
        if (not isinstance(item, list) or len(item) != 2
                or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in item)):
            raise FormatError(f"{name}[{i}] must be an [re, im] pair")
        out[i] = complex(item[0], item[1])
    return out


# documents ------------------------------------------------------------------

def _header(kind, l):
    return {"kind": kind, "l": int(l)}


def instance_doc(obj):
    if isinstance(obj, TransmissionInstance):
        doc = _header("transmission", obj.l)
        doc.update(alpha=complex_pairs(obj.alpha), beta=complex_pairs(obj.beta),
                   alpha_dot=complex_pairs(obj.alpha_dot), beta_dot=complex_pairs(obj.beta_dot))
        return doc
    if isinstance(obj, StandardCoeffs):
        doc = _header("standard", obj.l)
        doc.update(a=complex_pairs(obj.a), b=complex_pairs(obj.b))
        return doc
    if isinstance(obj, SymmetricJacobi):
        doc = _header("symmetric", obj.l)
        doc.update(A=complex_pairs(obj.A), B=complex_pairs(obj.B))
        return doc
    raise TypeError(f"not an instance: {type(obj).__name__}")


def spectrum_doc(values, l, problem):
    """Eigenvalues of a problem of size ``l``.

    ``problem`` is ``"dirichlet"`` (``l`` values: the zeros of ``P_{l+1}``,
    or the eigenvalues of a Jacobi matrix), ``"polybc"`` or
    ``"transmission"`` (``2l - 1`` values).
    """
    vals = values.values if isinstance(values, Spectrum) else np.asarray(values, dtype=complex)
    doc = _header("spectrum", l)
    doc["problem"] = problem
    doc["eigenvalues"] = complex_pairs(vals)
    return doc


def two_spectra_doc(T):
    doc = _header("spectrum", T.l)
    doc["mu"] = complex_pairs(T.mu.values)
    doc["nu"] = complex_pairs(T.nu.values)
    return doc


def weyl_doc(W):
    doc = _header("weyl", W.l)
    doc["M"] = complex_pairs(W.M)
    return doc


def boundary_doc(B):
    doc = _header("boundary", B.size)
    doc["config"] = B.config
    doc["R0"] = complex_pairs(B.R0.coeffs)
    doc["R1"] = complex_pairs(B.R1.coeffs)
    return doc


def poly_doc(p, l, name):
    doc = _header("char-poly", l)
    doc["poly"] = name
    doc["coeffs"] = complex_pairs(p.coeffs)
    return doc


EXPECTED_COUNT = {"dirichlet": lambda l: l, "polybc": lambda l: 2 * l - 1,
                  "transmission": lambda l: 2 * l - 1}


def _require(doc, *fields):
    for f in fields:
        if f not in doc:
            raise FormatError(f"{doc.get('kind')} document is missing field {f!r}")


def _size(doc):
    l = doc.get("l")
    if not isinstance(l, int) or isinstance(l, bool) or l < 1:
        raise FormatError("field 'l' must be a positive integer")
    return l


def _check_len(arr, name, n):
    if arr.size != n:
        raise InvalidInstance(f"{name} must have {n} entries for the declared l, got {arr.size}")


def from_doc(doc):
    """Build the domain object described by ``doc`` (validating it)."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError("document must be an object with a 'kind' field")
    kind = doc["kind"]
    if kind == "report":
        return doc
    l = _size(doc)
    arr = lambda name: parse_complex_array(doc[name], name)  # noqa: E731
    if kind == "transmission":
        _require(doc, "alpha", "beta", "alpha_dot", "beta_dot")
        parts = {k: arr(k) for k in ("alpha", "beta", "alpha_dot", "beta_dot")}
        for k, v in parts.items():
            _check_len(v, k, l)
        return TransmissionInstance(**parts)
    if kind == "standard":
        _require(doc, "a", "b")
        a, b = arr("a"), arr("b")
        _check_len(b, "b", l)
        if a.size not in (l - 1, l):
            raise InvalidInstance(f"a must have l or l - 1 entries, got {a.size}")
        return StandardCoeffs(a, b)
    if kind == "symmetric":
        _require(doc, "A", "B")
        A, B = arr("A"), arr("B")
        _check_len(B, "B", l)
        _check_len(A, "A", l - 1)
        return SymmetricJacobi(A, B)
    if kind == "spectrum":
        if "eigenvalues" in doc:
            vals = arr("eigenvalues")
            problem = doc.get("problem")
            if problem is not None:
                if problem not in EXPECTED_COUNT:
                    raise FormatError(f"unknown spectrum problem {problem!r}")
                _check_len(vals, "eigenvalues", EXPECTED_COUNT[problem](l))
            return Spectrum(vals)
        _require(doc, "mu", "nu")
        mu, nu = arr("mu"), arr("nu")
        _check_len(mu, "mu", l)
        _check_len(nu, "nu", l - 1)
        return TwoSpectra(mu, nu)
    if kind == "weyl":
        _require(doc, "M")
        M = arr("M")
        _check_len(M, "M", 2 * l)
        return WeylData.from_coefficients(M)
    if kind == "boundary":
        _require(doc, "R0", "R1")
        B = BoundaryPolys(Poly(arr("R0")), Poly(arr("R1")), doc.get("config", "paper"))
        if B.size != l:
            raise InvalidInstance(f"boundary polynomials imply size {B.size}, file declares l = {l}")
        return B
    if kind == "transmission-known":
        _require(doc, "alpha_dot", "beta_dot", "alpha_l")
        ad, bd = arr("alpha_dot"), arr("beta_dot")
        _check_len(ad, "alpha_dot", l)
        _check_len(bd, "beta_dot", l)
        al = parse_complex_array([doc["alpha_l"]], "alpha_l")[0]
        return {"alpha_dot": ad, "beta_dot": bd, "alpha_l": al}
    if kind == "hochstadt-known":
        _require(doc, "A_head", "B_head")
        if l % 2 == 0:
            raise InvalidInstance("mixed data need odd l = 2m - 1")
        m = (l + 1) // 2
        A, B = arr("A_head"), arr("B_head")
        _check_len(A, "A_head", m - 1)
        _check_len(B, "B_head", m - 1)
        return {"A_head": A, "B_head": B}
    if kind == "char-poly":
        _require(doc, "coeffs")
        return Poly(arr("coeffs"), trim=False)
    raise FormatError(f"unknown document kind {kind!r}")


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from exc
    return doc


def load(path):
    """Read a file and return ``(doc, object)``."""
    with open(path, encoding="utf-8") as fh:
        doc = loads(fh.read())
    return doc, from_doc(doc)


def write(doc, path=None, stream=None):
    text = dumps(doc)
    if path is None:
        (stream or sys.stdout).write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
