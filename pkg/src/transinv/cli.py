"""Command-line front end: ``transinv forward | inverse | roundtrip | stability``.

Exit codes: 0 success, 2 input error, 3 Hankel determinant condition
violated (the data admit no recurrence), 4 round-trip tolerance exceeded.
"""

import argparse
import sys

from . import io
from .errors import HankelConditionViolated, SpectralError
from .experiments import MAX_L, MODES, roundtrip, stability
from .forward import (
    StandardCoeffs,
    TransmissionInstance,
    char_poly_polybc,
    char_poly_transmission,
    solution_family,
    transmission_spectrum,
    two_spectra_forward,
    weyl_forward,
)
from .polynomial import Spectrum, poly_roots
from .reduction import (
    SymmetricJacobi,
    reconstruct_poly_bc,
    solve_hochstadt_mixed,
    solve_transmission,
    symmetric_to_standard,
)
from .weyl import hankel_condition, solve_two_spectra, solve_weyl, weyl_from_two_spectra

EXIT_OK, EXIT_INPUT, EXIT_HANKEL, EXIT_TOL = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _standard(obj):
    if isinstance(obj, SymmetricJacobi):
        return symmetric_to_standard(obj)
    if isinstance(obj, StandardCoeffs):
        return obj
    raise UsageError("expected a standard or symmetric instance")


def _load_boundary(path):
    if path is None:
        return None
    doc, B = io.load(path)
    if doc["kind"] != "boundary":
        raise UsageError(f"{path}: expected a boundary document, got {doc['kind']!r}")
    return B


def _diagnostics(W):
    check = hankel_condition(W)
    return {
        "condition": "Hankel determinant condition",
        "passed": check.passed,
        "hankel_determinants": io.complex_pairs(check.deltas),
        "margins": [float(m) for m in check.margins],
    }


# forward --------------------------------------------------------------------

def cmd_forward(args):
    _, inst = io.load(args.input)
    B = _load_boundary(args.boundary)
    what = args.what
    if isinstance(inst, TransmissionInstance):
        if B is not None:
            raise UsageError("--boundary does not apply to a transmission instance")
        if what == "spectrum":
            return io.spectrum_doc(transmission_spectrum(inst), inst.l, "transmission")
        if what == "char-poly":
            return io.poly_doc(char_poly_transmission(inst), inst.l, "D")
        raise UsageError(f"--what {what} needs a standard or symmetric instance")
    if not isinstance(inst, (StandardCoeffs, SymmetricJacobi)):
        raise UsageError("forward needs an instance document")
    S = _standard(inst)
    if what == "spectrum":
        if B is not None:
            return io.spectrum_doc(poly_roots(char_poly_polybc(S, B)), S.l, "polybc")
        return io.spectrum_doc(two_spectra_forward(S).mu, S.l, "dirichlet")
    if what == "two-spectra":
        return io.two_spectra_doc(two_spectra_forward(S))
    if what == "weyl":
        W = weyl_forward(S)
        doc = io.weyl_doc(W)
        doc["diagnostics"] = _diagnostics(W)
        return doc
    if what == "char-poly":
        if B is not None:
            return io.poly_doc(char_poly_polybc(S, B), S.l, "E")
        return io.poly_doc(solution_family(S, "P")[S.l + 1], S.l, "P")
    raise UsageError(f"unknown --what {what!r}")


# inverse --------------------------------------------------------------------

def _expect(doc, path, *kinds):
    if doc["kind"] not in kinds:
        raise UsageError(f"{path}: expected {' or '.join(kinds)}, got {doc['kind']!r}")


def _spectrum_values(obj, path):
    if not isinstance(obj, Spectrum):
        raise UsageError(f"{path}: expected an eigenvalue list")
    return obj


def cmd_inverse(args):
    doc, data = io.load(args.input)
    mode = args.mode
    if mode == "weyl":
        _expect(doc, args.input, "weyl")
        S, _ = solve_weyl(data)
        out = io.instance_doc(S)
        out["diagnostics"] = _diagnostics(data)
        return out
    if mode == "two-spectra":
        _expect(doc, args.input, "spectrum")
        if isinstance(data, Spectrum):
            raise UsageError(f"{args.input}: two-spectra mode needs fields mu and nu")
        W = weyl_from_two_spectra(data)
        out = io.instance_doc(solve_two_spectra(data))
        out["diagnostics"] = _diagnostics(W)
        return out
    if mode == "polybc":
        _expect(doc, args.input, "spectrum")
        if args.boundary is None:
            raise UsageError("polybc mode needs --boundary")
        B = _load_boundary(args.boundary)
        sol = reconstruct_poly_bc(B, _spectrum_values(data, args.input))
        out = io.instance_doc(sol.coeffs)
        out["diagnostics"] = _diagnostics(sol.weyl)
        return out
    if mode == "transmission":
        _expect(doc, args.input, "spectrum")
        if args.known is None:
            raise UsageError("transmission mode needs --known")
        kdoc, known = io.load(args.known)
        _expect(kdoc, args.known, "transmission-known", "transmission")
        if isinstance(known, TransmissionInstance):
            known = {"alpha_dot": known.alpha_dot, "beta_dot": known.beta_dot, "alpha_l": known.alpha[-1]}
        alpha, beta = solve_transmission(known["alpha_dot"], known["beta_dot"], known["alpha_l"],
                                         _spectrum_values(data, args.input))
        return io.instance_doc(TransmissionInstance(alpha, beta, known["alpha_dot"], known["beta_dot"]))
    if mode == "hochstadt":
        _expect(doc, args.input, "spectrum")
        if args.known is None:
            raise UsageError("hochstadt mode needs --known")
        kdoc, known = io.load(args.known)
        _expect(kdoc, args.known, "hochstadt-known", "symmetric")
        if isinstance(known, SymmetricJacobi):
            m = (known.l + 1) // 2
            known = {"A_head": known.A[: m - 1], "B_head": known.B[: m - 1]}
        J = solve_hochstadt_mixed(known["A_head"], known["B_head"], _spectrum_values(data, args.input))
        return io.instance_doc(J)
    raise UsageError(f"unknown mode {mode!r}")


# roundtrip / stability ------------------------------------------------------

def cmd_roundtrip(args):
    if not 1 <= args.l <= MAX_L:
        raise UsageError(f"--l must be between 1 and {MAX_L}, got {args.l}")
    if args.mode == "hochstadt" and args.l % 2 == 0:
        raise UsageError("hochstadt mode needs odd --l")
    report = roundtrip(args.mode, args.l, args.trials, args.seed, args.tol)
    print(f"mode={args.mode} l={args.l} trials={args.trials} seed={args.seed} "
          f"max_error={report.max_error:.3e} tol={args.tol:g}", file=sys.stderr)
    for f in report.failures:
        print(f"FAIL trial={f['trial']} seed={f['seed']} error={f['error']}", file=sys.stderr)
    return report.as_dict(), (EXIT_OK if report.ok else EXIT_TOL)


def cmd_stability(args):
    _, inst = io.load(args.input)
    B = _load_boundary(args.boundary)
    if isinstance(inst, SymmetricJacobi):
        inst = symmetric_to_standard(inst)
    if not isinstance(inst, (StandardCoeffs, TransmissionInstance)):
        raise UsageError("stability needs an instance document")
    name, rows = stability(inst, args.deltas, args.trials, args.seed, B)
    print(f"{'delta':>10} {'max_error':>12} {'mean_ratio':>12} {'outside':>8}", file=sys.stderr)
    table = []
    for r in rows:
        print(f"{r.delta:>10.3g} {r.max_error:>12.4e} {r.mean_ratio:>12.4e} {len(r.outside):>8}",
              file=sys.stderr)
        table.append({
            "delta": r.delta,
            "max_error": r.max_error,
            "mean_ratio": r.mean_ratio,
            "ratios": r.ratios,
            "outside_eps_ball": len(r.outside),
            "outside": r.outside,
        })
    doc = {"kind": "report", "report": "stability", "problem": name, "l": int(inst.l),
           "seed": args.seed, "trials": args.trials, "rows": table}
    return doc


# entry point ----------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="transinv", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    f = sub.add_parser("forward", help="spectra, Weyl data or characteristic polynomials of an instance")
    f.add_argument("input")
    f.add_argument("--what", choices=("spectrum", "two-spectra", "weyl", "char-poly"), default="spectrum")
    f.add_argument("--boundary", help="boundary document (R0, R1) for the polynomial-boundary problem")
    f.add_argument("--out")

    i = sub.add_parser("inverse", help="recover coefficients from spectral data")
    i.add_argument("input")
    i.add_argument("--mode", choices=MODES, required=True)
    i.add_argument("--boundary", help="boundary document (polybc mode)")
    i.add_argument("--known", help="a-priori known coefficients (transmission, hochstadt modes)")
    i.add_argument("--out")

    r = sub.add_parser("roundtrip", help="random forward-then-inverse trials")
    r.add_argument("--mode", choices=MODES, default="weyl")
    r.add_argument("--l", type=int, required=True)
    r.add_argument("--trials", type=int, default=10)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--tol", type=float, default=1e-6)
    r.add_argument("--out")

    s = sub.add_parser("stability", help="perturbation sweep on one instance")
    s.add_argument("input")
    s.add_argument("--boundary")
    s.add_argument("--deltas", type=float, nargs="+", default=[1e-2, 1e-3, 1e-4])
    s.add_argument("--trials", type=int, default=20)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--out")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    code = EXIT_OK
    try:
        if args.command == "forward":
            doc = cmd_forward(args)
        elif args.command == "inverse":
            doc = cmd_inverse(args)
        elif args.command == "roundtrip":
            doc, code = cmd_roundtrip(args)
        else:
            doc = cmd_stability(args)
    except HankelConditionViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_HANKEL
    except (SpectralError, UsageError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    io.write(doc, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
