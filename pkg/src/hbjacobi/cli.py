"""Command-line front end.

Subcommands: spectrum, inverse, decompose, hodograph, verify. Input is JSON on
stdin or via --input; results go to stdout as JSON (files for CSV/SVG).
Exit codes: 0 success, 2 validation error, 3 numerical failure. Diagnostics go
to stderr only.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import hodograph as hg
from . import perturbations as pt
from .errors import NumericalError, PreconditionError
from .jacobi import JacobiMatrix, eigen
from .polynomials import ComplexPoly, ZeroSet, from_roots, poly_from_json, poly_to_json, roots
from .tolerances import TOL, set_classification_tolerance
from .transforms import classical_split, generalized_split, pencil_split

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3


def _fail(code: int, message: str) -> int:
    print(message, file=sys.stderr)
    return code


def _load_document(args) -> dict:
    if args.input:
        with open(args.input, "r", encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise PreconditionError("top-level JSON must be an object")
    return doc


def _zeros_from_doc(doc: dict) -> ZeroSet:
    if "zeros" in doc:
        pairs = doc["zeros"]
        try:
            pts = [complex(re, im) for re, im in pairs]
        except (TypeError, ValueError) as exc:
            raise PreconditionError(f"malformed zeros list: {exc}") from None
        if not pts:
            raise PreconditionError("zeros list must be non-empty")
        return ZeroSet.classify(pts)
    if "poly" in doc:
        h = ComplexPoly.monic(poly_from_json(doc["poly"]).coeffs)
        return roots(h)
    raise PreconditionError('input must carry "zeros" or "poly"')


def _zeros_payload(zeros) -> list:
    return [[float(z.real), float(z.imag)] for z in zeros]


def _json_out(payload: dict) -> int:
    json.dump(payload, sys.stdout, indent=2, allow_nan=False)
    sys.stdout.write("\n")
    return EXIT_OK


def _instance_from_doc(doc: dict):
    if "jacobi" not in doc or "perturbation" not in doc:
        raise PreconditionError('input must carry "jacobi" and "perturbation"')
    J = JacobiMatrix.from_dict(doc["jacobi"])
    spec = pt.PerturbationSpec.from_dict(doc["perturbation"])
    return J, spec


def _classification_payload(J, spec, zeros):
    """Verdict block for a computed spectrum, deflating the simple eigenvalue
    at the distinguished point when one is present."""
    payload = {
        "n_plus": zeros.n_plus,
        "n_minus": zeros.n_minus,
        "n_real": zeros.n_real,
        "deflated_eigenvalue": None,
    }
    if spec.kind == pt.ADDITIVE:
        if zeros.n_real:
            verdict = hg.Verdict.HAS_REAL_ZERO
            payload["arg_sum"] = None
        else:
            payload["arg_sum"] = hg.arg_sum(zeros)
            verdict = hg.Verdict.EQUAL if zeros.n_minus == 0 else hg.Verdict.NEITHER
        payload["verdict"] = verdict.value
        payload["sum_im"] = math.fsum(z.imag for z in zeros)
        return payload

    xi = 0.0 if spec.kind == pt.MULTIPLICATIVE else pt.rank2_shift(J, spec)
    alpha = pt.pencil_alpha(J, spec)
    payload["xi"] = xi
    work = zeros
    # singular instance: deflate the simple eigenvalue at xi and classify the rest
    tol = TOL.simple_zero * (1.0 + zeros.shifted(xi).max_abs)
    kept = [z for z in zeros if abs(z - xi) > tol]
    if len(kept) == len(zeros) - 1:
        payload["deflated_eigenvalue"] = xi
        work = ZeroSet.classify(kept)
    report = hg.classify_config(work, alpha, xi)
    payload.update(report.as_dict())
    payload["n_plus"], payload["n_minus"] = work.n_plus, work.n_minus
    return payload


def cmd_spectrum(args) -> int:
    J, spec = _instance_from_doc(_load_document(args))
    zeros = pt.spectrum(J, spec)
    payload = {
        "kind": spec.kind,
        "zeros": _zeros_payload(zeros),
        "report": _classification_payload(J, spec, zeros),
    }
    return _json_out(payload)


def cmd_inverse(args) -> int:
    doc = _load_document(args)
    zeros = _zeros_from_doc(doc)
    kind = doc.get("kind")
    if kind == pt.ADDITIVE:
        J, l = pt.inverse_additive(zeros)
        spec = pt.PerturbationSpec.additive(l)
        params = {"l": l}
    elif kind == pt.MULTIPLICATIVE:
        k = doc.get("k")
        J, k = pt.inverse_multiplicative(zeros, k)
        spec = pt.PerturbationSpec.multiplicative(k)
        params = {"k": k}
    elif kind == pt.RANK2:
        if "xi" not in doc:
            raise PreconditionError('rank-two inverse needs the shift point "xi"')
        J, l, m = pt.inverse_rank2(zeros, float(doc["xi"]), doc.get("A"))
        spec = pt.PerturbationSpec.rank2(l, m)
        params = {"l": l, "m": m, "xi": float(doc["xi"])}
    else:
        raise PreconditionError('inverse problem "kind" must be additive, multiplicative or rank2')
    residual = _spectrum_mismatch(zeros, pt.spectrum(J, spec))
    payload = {"jacobi": J.as_dict(), **params, "residual": residual}
    return _json_out(payload)


def _spectrum_mismatch(given: ZeroSet, resolved: ZeroSet) -> float:
    """Greedy nearest matching; adequate for the well-separated spectra here."""
    remaining = list(resolved.zeros)
    worst = 0.0
    for z in given.zeros:
        best = min(range(len(remaining)), key=lambda i: abs(remaining[i] - z))
        worst = max(worst, abs(remaining.pop(best) - z))
    return worst


def cmd_decompose(args) -> int:
    doc = _load_document(args)
    if "poly" in doc:
        h = ComplexPoly.monic(poly_from_json(doc["poly"]).coeffs)
    elif "zeros" in doc:
        h = from_roots(_zeros_from_doc(doc).zeros)
    else:
        raise PreconditionError('decompose input must carry "poly" or "zeros"')
    mode = doc.get("mode", "classical")
    if mode == "classical":
        split = classical_split(h)
        payload = {
            "mode": mode,
            "p": poly_to_json(split.p),
            "q": None if split.is_hermitian else poly_to_json(split.q),
            "l": split.l,
            "hermitian": split.is_hermitian,
        }
        return _json_out(payload)

    alpha = _alpha_from_doc(doc)
    if mode == "pencil":
        split = pencil_split(h, alpha)
        payload = {
            "mode": mode,
            "p": poly_to_json(split.p),
            "r": poly_to_json(split.r),
            "alpha": [alpha.real, alpha.imag],
        }
        return _json_out(payload)
    if mode == "generalized":
        xi = float(doc.get("xi", 0.0))
        gs = generalized_split(h, alpha, xi)
        payload = {
            "mode": mode,
            "verdict": gs.verdict.value,
            "p": poly_to_json(gs.p),
            "q": poly_to_json(gs.q) if gs.q is not None else None,
            "r": poly_to_json(gs.r) if gs.r is not None else None,
            "xi": xi,
            "alpha": [alpha.real, alpha.imag],
            "p_zeros": list(gs.p_zeros),
            "partner_zeros": list(gs.partner_zeros),
            "interlacing_ok": gs.interlacing_ok,
            "warning": gs.warning,
        }
        return _json_out(payload)
    raise PreconditionError('decompose "mode" must be classical, pencil or generalized')


def _alpha_from_doc(doc: dict) -> complex:
    if "alpha" in doc:
        re, im = doc["alpha"]
        return complex(re, im)
    if "k" in doc:
        k = float(doc["k"])
        if not k > 0:
            raise PreconditionError("k must be positive")
        return complex(1.0, k)
    raise PreconditionError('pencil modes need "alpha": [re, im] or "k": positive real')


def cmd_hodograph(args) -> int:
    doc = _load_document(args)
    zeros = _zeros_from_doc(doc)
    if zeros.n_real:
        raise PreconditionError("the phase trace is undefined when a zero lies on the real axis")
    inc = hg.phase_increment(zeros)
    rows = None
    if args.csv:
        rows = hg.write_hodograph_csv(zeros, args.csv)
    if args.svg:
        _write_hodograph_svg(zeros, args.svg)
    payload = {
        "delta_symbolic": inc.symbolic,
        "delta_numeric": inc.numeric,
        "n_plus": zeros.n_plus,
        "n_minus": zeros.n_minus,
        "csv": args.csv,
        "svg": args.svg,
        "csv_rows": rows,
    }
    return _json_out(payload)


def _write_hodograph_svg(zeros: ZeroSet, path: str, size: int = 800) -> None:
    """Single polyline through the curve h(t) over the adaptive trace, with
    axis cross-hairs through the data origin."""
    samples = hg.phase_trace(zeros)
    h = from_roots(zeros.zeros)
    pts = np.array([h.eval(complex(s.t)) for s in samples])
    xs, ys = pts.real, pts.imag
    lo = min(xs.min(), ys.min(), 0.0)
    hi = max(xs.max(), ys.max(), 0.0)
    span = (hi - lo) or 1.0
    margin = 0.05 * span
    lo, span = lo - margin, span + 2 * margin

    def sx(x):
        return (x - lo) / span * size

    def sy(y):  # SVG y axis points down
        return size - (y - lo) / span * size

    coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
    with open(path, "w", encoding="ascii") as fh:
        fh.write(
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}">\n'
            f'<line x1="0" y1="{sy(0):.2f}" x2="{size}" y2="{sy(0):.2f}" '
            f'stroke="gray" stroke-width="1"/>\n'
            f'<line x1="{sx(0):.2f}" y1="0" x2="{sx(0):.2f}" y2="{size}" '
            f'stroke="gray" stroke-width="1"/>\n'
            f'<polyline points="{coords}" fill="none" stroke="black" stroke-width="1.5"/>\n'
            "</svg>\n"
        )


def cmd_verify(args) -> int:
    doc = _load_document(args)
    J, spec = _instance_from_doc(doc)
    checks = []

    def record(name, passed, detail):
        checks.append({"name": name, "passed": bool(passed), "detail": detail})

    zeros = pt.spectrum(J, spec)
    h = pt.perturbed_char_poly(J, spec)

    if J.n <= 8:
        dense = pt.dense_char_poly(pt.build(J, spec).entries)
        diff = float(np.max(np.abs(h.coeffs - dense.coeffs)))
        scale = float(np.max(np.abs(dense.coeffs)))
        record("char_poly_cross_check", diff <= 1e-10 * max(1.0, scale), f"max coeff diff {diff:.3g}")

    evals = eigen(J)
    if spec.kind == pt.ADDITIVE:
        record("all_upper", zeros.n_plus == len(zeros), f"n_plus={zeros.n_plus} of {len(zeros)}")
        sum_im = math.fsum(z.imag for z in zeros)
        record(
            "imag_sum_equals_l",
            abs(sum_im - spec.l) <= 1e-8 * (1.0 + abs(spec.l)),
            f"sum Im = {sum_im:.12g} vs l = {spec.l:.12g}",
        )
        Jr, l = pt.inverse_additive(zeros)
        err = _matrix_error(J, Jr) + abs(l - spec.l)
        record("inverse_round_trip", err <= 2e-6, f"entrywise+parameter error {err:.3g}")
    else:
        xi = 0.0 if spec.kind == pt.MULTIPLICATIVE else pt.rank2_shift(J, spec)
        alpha = pt.pencil_alpha(J, spec)
        singular = bool(np.min(np.abs(evals - xi)) <= 1e-10 * (1.0 + np.max(np.abs(evals))))
        block = _classification_payload(J, spec, zeros)
        expected = hg.Verdict.LESS.value if singular else hg.Verdict.EQUAL.value
        record("verdict", block["verdict"] == expected, f"verdict {block['verdict']}, expected {expected}")
        if singular:
            record(
                "simple_eigenvalue_deflated",
                block["deflated_eigenvalue"] is not None,
                f"deflated at {block['deflated_eigenvalue']}",
            )
        record(
            "count_identity",
            block["n_plus"] == int(np.sum(evals > xi + 1e-12))
            and block["n_minus"] == int(np.sum(evals < xi - 1e-12)),
            f"n_plus={block['n_plus']}, n_minus={block['n_minus']} vs eigenvalue signs about {xi:.6g}",
        )
        if spec.kind == pt.MULTIPLICATIVE:
            Jr, k = pt.inverse_multiplicative(zeros, spec.k if singular else None)
            err = _matrix_error(J, Jr) + abs(k - spec.k)
        else:
            angle = math.atan(spec.m / J.a[0]) if singular else None
            Jr, l, m = pt.inverse_rank2(zeros, xi, angle)
            err = _matrix_error(J, Jr) + abs(l - spec.l) + abs(m - spec.m)
        record("inverse_round_trip", err <= 2e-6, f"entrywise+parameter error {err:.3g}")

    ok = all(c["passed"] for c in checks)
    _json_out({"ok": ok, "checks": checks})
    return EXIT_OK if ok else EXIT_NUMERICAL


def _matrix_error(J1: JacobiMatrix, J2: JacobiMatrix) -> float:
    if J1.n != J2.n:
        return math.inf
    db = max(abs(x - y) for x, y in zip(J1.b, J2.b))
    da = max((abs(x - y) for x, y in zip(J1.a, J2.a)), default=0.0)
    return max(db, da)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hbjacobi",
        description="Spectra and inverse spectral problems for non-Hermitian "
        "corner perturbations of Jacobi matrices",
    )
    parser.add_argument("--tol", type=float, default=None, help="override the classification tolerances (default 1e-8)")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, func):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", default=None, help="input JSON file (default: stdin)")
        p.set_defaults(func=func)
        return p

    add("spectrum", "spectrum of a perturbed Jacobi matrix, with classification", cmd_spectrum)
    add("inverse", "recover the matrix and parameters from a spectrum", cmd_inverse)
    add("decompose", "split a polynomial into real-pencil components", cmd_decompose)
    ph = add("hodograph", "export the phase trace of a zero set", cmd_hodograph)
    ph.add_argument("--csv", default=None, help="write adaptive samples t,re_h,im_h,phi here")
    ph.add_argument("--svg", default=None, help="write the image curve as an SVG polyline here")
    add("verify", "run the invariant checks on one instance", cmd_verify)
    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.tol is not None:
        try:
            set_classification_tolerance(args.tol)
        except ValueError as exc:
            return _fail(EXIT_VALIDATION, f"invalid --tol: {exc}")
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        return _fail(EXIT_VALIDATION, f"malformed JSON input: {exc}")
    except (PreconditionError, KeyError, TypeError, ValueError) as exc:
        return _fail(EXIT_VALIDATION, f"invalid input: {exc}")
    except NumericalError as exc:
        return _fail(EXIT_NUMERICAL, f"numerical failure: {exc}")
    except OSError as exc:
        return _fail(EXIT_VALIDATION, f"i/o error: {exc}")


if __name__ == "__main__":
    sys.exit(main())
