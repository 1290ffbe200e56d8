"""Command-line front end: ``blobkit <command> FILE [options]``.

Inputs are JSON matrix files::

    {"n": 2, "hbar": 1.0, "kind": "covariance",
     "matrix": [[...], ...], "mean": [0, 0, 0, 0]}

``kind`` is one of ``covariance``, ``M``, ``symplectic`` or ``G``. Reports are
written to stdout as JSON. Exit codes: 0 ok, 1 input error, 2 condition or
hypothesis violated, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
from pathlib import Path

import numpy as np

from . import gromov, purification, states
from .errors import (
    BlobkitError,
    DomainError,
    HypothesisError,
    NotSPDError,
    NotSymmetricError,
    NumericalFailure,
    PropositionViolation,
)
from .symplectic import is_symplectic, num_modes, standard_form, symplectic_residual, symplectic_spectrum, williamson

log = logging.getLogger("blobkit")

KINDS = ("covariance", "M", "symplectic", "G")
EXIT_OK, EXIT_INPUT, EXIT_VIOLATED, EXIT_NUMERICAL = 0, 1, 2, 3


class InputError(BlobkitError, ValueError):
    pass


def default_tol() -> float:
    env = os.environ.get("BLOBKIT_TOL")
    if env is None:
        return 1e-8
    try:
        return float(env)
    except ValueError:
        raise InputError(f"BLOBKIT_TOL is not a number: {env!r}")


# MatrixFile


def load_matrix_file(path, hbar_override=None) -> dict:
    """Parse and validate a matrix file; returns a dict with numpy arrays and the input digest."""
    try:
        raw = Path(path).read_bytes()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}")
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(f"{path}: malformed JSON ({exc})")
    if not isinstance(doc, dict):
        raise InputError(f"{path}: top level must be an object")
    for key in ("n", "kind", "matrix"):
        if key not in doc:
            raise InputError(f"{path}: missing field {key!r}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InputError(f"{path}: n must be a positive integer")
    kind = doc["kind"]
    if kind not in KINDS:
        raise InputError(f"{path}: kind must be one of {KINDS}, got {kind!r}")
    try:
        matrix = np.array(doc["matrix"], dtype=float)
        mean = np.array(doc.get("mean", [0.0] * (2 * n)), dtype=float)
        hbar = float(doc.get("hbar", 1.0))
    except (TypeError, ValueError) as exc:
        raise InputError(f"{path}: non-numeric entries ({exc})")
    if matrix.shape != (2 * n, 2 * n):
        raise InputError(f"{path}: matrix must be {2 * n}x{2 * n}, got {matrix.shape}")
    if mean.shape != (2 * n,):
        raise InputError(f"{path}: mean must have length {2 * n}")
    if not (np.all(np.isfinite(matrix)) and np.all(np.isfinite(mean)) and np.isfinite(hbar)):
        raise InputError(f"{path}: non-finite entries")
    if hbar <= 0:
        raise InputError(f"{path}: hbar must be positive")
    if hbar_override is not None:
        if hbar_override != hbar:
            log.warning("hbar from file (%g) overridden by --hbar %g", hbar, hbar_override)
        hbar = hbar_override
    return {
        "path": str(path),
        "n": n,
        "kind": kind,
        "matrix": matrix,
        "mean": mean,
        "hbar": hbar,
        "digest": hashlib.sha256(raw).hexdigest(),
    }


def matrix_file_doc(kind: str, matrix, hbar: float = 1.0, mean=None) -> dict:
    matrix = np.asarray(matrix, dtype=float)
    n = num_modes(matrix)
    doc = {"n": n, "hbar": hbar, "kind": kind, "matrix": matrix.tolist()}
    if mean is not None:
        doc["mean"] = np.asarray(mean, dtype=float).tolist()
    return doc


def _require_kind(mf: dict, *kinds: str):
    if mf["kind"] not in kinds:
        raise InputError(f"{mf['path']}: expected kind in {kinds}, got {mf['kind']!r}")


def _state(mf: dict) -> states.GaussianMixedState:
    _require_kind(mf, "covariance")
    return states.GaussianMixedState(mf["matrix"], mf["mean"], mf["hbar"])


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


# Commands. Each returns (result, diagnostics, status).


def cmd_williamson(mf: dict, args) -> tuple[dict, dict, str]:
    _require_kind(mf, "M", "covariance")
    M = mf["matrix"]
    if mf["kind"] == "covariance":
        M = states.GaussianMixedState(M, mf["mean"], mf["hbar"]).M
    W = williamson(M, tol=args.tol)
    n = mf["n"]
    J = standard_form(n)
    res_diag = float(np.linalg.norm(W.S.T @ M @ W.S - W.diagonal, 2))
    result = {"S": W.S, "spectrum": W.spectrum, "M": M if mf["kind"] == "covariance" else None}
    diag = {
        "diagonalization_residual": res_diag,
        "diagonalization_bound": args.tol * float(np.linalg.norm(M, 2)),
        "symplectic_residual": float(np.max(np.abs(W.S.T @ J @ W.S - J))),
        "tol": args.tol,
    }
    return result, diag, "ok"


def cmd_check(mf: dict, args) -> tuple[dict, dict, str]:
    rho = _state(mf)
    wanted = {k for k in ("rs", "quantum", "capacity") if getattr(args, k)}
    if not wanted:
        wanted = {"rs", "quantum", "capacity"}
    result, diag, violated = {}, {"tol": args.tol}, []
    if "rs" in wanted:
        rep = states.rs_report(rho, args.tol)
        result["rs"] = rep.as_dict()
        result["rs"]["saturated_indices"] = [j + 1 for j in rep.saturated_indices]
        if np.any(rep.slack < -args.tol * rep.rhs):
            violated.append("rs")
    if "quantum" in wanted:
        ok = states.quantum_condition(rho, args.tol)
        result["quantum"] = {"holds": ok, "min_eigenvalue": states.quantum_margin(rho)}
        diag["quantum_threshold"] = -args.tol * float(np.linalg.norm(rho.sigma, 2))
        if not ok:
            violated.append("quantum")
    if "capacity" in wanted:
        try:
            cap = states.capacity_of_state(rho)
        except NotSPDError:
            cap = None
        target = np.pi * rho.hbar
        result["capacity"] = {"value": cap, "half_h": target, "at_least_half_h": cap is not None and cap >= target * (1 - args.tol)}
        if not result["capacity"]["at_least_half_h"]:
            violated.append("capacity")
    result["violated"] = violated
    return result, diag, "violated" if violated else "ok"


def cmd_purify(mf: dict, args) -> tuple[dict, dict, str]:
    rho = _state(mf)
    j = None if args.index is None else args.index - 1
    if j is not None and not 0 <= j < rho.n:
        raise InputError(f"--index must be in 1..{rho.n}")
    res = purification.purify(rho, j, args.tol)
    cov = states.covariance_of_pure(res.psi)
    result = {
        "saturated_index": res.saturated_index + 1,
        "X": res.psi.X,
        "Y": res.psi.Y,
        "sigma_psi": cov.sigma,
        "blob_canonical": res.blob.canonical,
        "dominates": purification.dominates(res.psi, rho, args.tol),
    }
    if args.emit_pure:
        G = states.wigner_of_pure(res.psi).G
        doc = matrix_file_doc("G", G, rho.hbar, rho.mean)
        Path(args.emit_pure).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        result["emitted"] = str(args.emit_pure)
    return result, dict(res.diagnostics), "ok"


def _parse_plane(text: str, n: int) -> gromov.PlaneSpec:
    text = text.strip()
    if "," not in text:
        try:
            j = int(text)
        except ValueError:
            raise InputError(f"bad plane {text!r}")
        if not 1 <= j <= n:
            raise InputError(f"plane index must be in 1..{n}")
        return gromov.PlaneSpec.conjugate(n, j - 1)
    vecs = []
    for tok in text.split(",", 1):
        tok = tok.strip()
        if not tok.startswith("e"):
            raise InputError(f"plane vectors must be basis labels like e1, got {tok!r}")
        try:
            k = int(tok[1:])
        except ValueError:
            raise InputError(f"bad basis label {tok!r}")
        if not 1 <= k <= 2 * n:
            raise InputError(f"basis label {tok!r} out of range 1..{2 * n}")
        e = np.zeros(2 * n)
        e[k - 1] = 1.0
        vecs.append(e)
    return gromov.PlaneSpec.span(vecs[0], vecs[1], text)


def cmd_gromov(mf: dict, args) -> tuple[dict, dict, str]:
    _require_kind(mf, "symplectic")
    S = mf["matrix"]
    n = mf["n"]
    if not is_symplectic(S, args.tol * (1.0 + np.max(np.abs(S)) ** 2)):
        raise DomainError(f"matrix is not symplectic (residual {symplectic_residual(S):.3e})")
    ball = gromov.SymplecticBall(S, args.radius)
    planes = [_parse_plane(p, n) for p in args.plane] if args.plane else [gromov.PlaneSpec.conjugate(n, j) for j in range(n)]
    target = float(np.pi * args.radius**2)
    sections, violated = [], []
    for k, plane in enumerate(planes):
        sec = gromov.section_area(ball, plane, samples=args.samples, seed=[args.seed, k])
        entry = {"plane": plane.label, **sec.as_dict()}
        conj = plane.label.startswith("conjugate")
        if conj:
            j = int(plane.label[len("conjugate(") : -1]) - 1
            entry["boundary_integral"] = gromov.boundary_integral(ball, j, args.nodes)
            entry["projection_area"] = gromov.projection_area(ball, j)
            entry["matches_pi_R2"] = abs(sec.area_closed_form - target) <= args.tol * target
            if not entry["matches_pi_R2"]:
                violated.append(plane.label)
        sections.append(entry)
    result = {"pi_R2": target, "sections": sections, "violated": violated}
    diag = {"tol": args.tol, "samples": args.samples, "seed": args.seed, "nodes": args.nodes}
    return result, diag, "violated" if violated else "ok"


def cmd_spectrum(mf: dict, args) -> tuple[dict, dict, str]:
    A = mf["matrix"]
    result = {"kind": mf["kind"], "spectrum": symplectic_spectrum(A)}
    if mf["kind"] == "covariance":
        rho = _state(mf)
        result["spectrum_M"] = symplectic_spectrum(rho.M)
        result["capacity"] = states.capacity_of_state(rho)
    return result, {"tol": args.tol}, "ok"


def cmd_blob_equal(mf: dict, args, other: dict) -> tuple[dict, dict, str]:
    _require_kind(mf, "symplectic")
    _require_kind(other, "symplectic")
    cmp = purification.compare_blobs(mf["matrix"], other["matrix"], args.tol)
    equal = purification.blobs_equal(mf["matrix"], other["matrix"], args.tol)
    return {"equal": equal, **cmp}, {"tol": args.tol}, "ok"


COMMANDS = {
    "williamson": cmd_williamson,
    "check": cmd_check,
    "purify": cmd_purify,
    "gromov": cmd_gromov,
    "spectrum": cmd_spectrum,
    "blob-equal": cmd_blob_equal,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=None, help="tolerance (default: $BLOBKIT_TOL or 1e-8)")
    common.add_argument("--hbar", type=float, default=None, help="override hbar from the input file")
    common.add_argument("--verbose", "-v", action="store_true", help="human-readable summary on stderr")
    common.add_argument("--batch", metavar="DIR", help="process every *.json in DIR (sorted)")

    parser = argparse.ArgumentParser(prog="blobkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("williamson", parents=[common], help="symplectic diagonalization")
    p.add_argument("input", nargs="?")

    p = sub.add_parser("check", parents=[common], help="uncertainty, quantum and capacity checks")
    p.add_argument("input", nargs="?")
    p.add_argument("--rs", action="store_true")
    p.add_argument("--quantum", action="store_true")
    p.add_argument("--capacity", action="store_true")

    p = sub.add_parser("purify", parents=[common], help="pure state from a saturated covariance")
    p.add_argument("input", nargs="?")
    p.add_argument("--index", type=int, default=None, help="1-based saturated mode (default: first)")
    p.add_argument("--emit-pure", metavar="PATH", help="write the pure state's G matrix file")

    p = sub.add_parser("gromov", parents=[common], help="areas of central plane sections")
    p.add_argument("input", nargs="?")
    p.add_argument("--radius", type=float, default=1.0)
    p.add_argument("--plane", action="append", help='mode index j or "eK,eL" (repeatable)')
    p.add_argument("--samples", type=int, default=gromov.N_SAMPLES)
    p.add_argument("--nodes", type=int, default=gromov.N_NODES)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("spectrum", parents=[common], help="symplectic spectrum")
    p.add_argument("input", nargs="?")

    p = sub.add_parser("blob-equal", parents=[common], help="compare two symplectic balls")
    p.add_argument("input", nargs="?")
    p.add_argument("other")
    return parser


def _echo(args) -> dict:
    skip = {"verbose", "batch"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run_one(args, path) -> tuple[dict, int]:
    report = {"command": _echo(args), "input": str(path), "input_digest": None}
    try:
        mf = load_matrix_file(path, args.hbar)
        report["input_digest"] = mf["digest"]
        if args.command == "blob-equal":
            other = load_matrix_file(args.other, args.hbar)
            report["input_digest"] = hashlib.sha256((mf["digest"] + other["digest"]).encode()).hexdigest()
            result, diag, status = cmd_blob_equal(mf, args, other)
        else:
            result, diag, status = COMMANDS[args.command](mf, args)
        report.update(result=result, diagnostics=diag, status=status)
        code = EXIT_OK if status == "ok" else EXIT_VIOLATED
    except InputError as exc:
        report.update(status="error", error=str(exc), error_type="input")
        code = EXIT_INPUT
    except (HypothesisError, NotSPDError, NotSymmetricError, DomainError, PropositionViolation) as exc:
        report.update(status="violated", error=str(exc), error_type=type(exc).__name__)
        code = EXIT_VIOLATED
    except (NumericalFailure, np.linalg.LinAlgError) as exc:
        report.update(status="error", error=str(exc), error_type="numerical")
        code = EXIT_NUMERICAL
    except BlobkitError as exc:
        report.update(status="error", error=str(exc), error_type=type(exc).__name__)
        code = EXIT_INPUT
    return _jsonable(report), code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="blobkit: %(message)s")
    try:
        if args.tol is None:
            args.tol = default_tol()
    except InputError as exc:
        print(json.dumps({"status": "error", "error": str(exc)}))
        return EXIT_INPUT

    if args.batch:
        paths = sorted(Path(args.batch).glob("*.json"))
        outputs = [run_one(args, p) for p in paths]
        print(json.dumps([r for r, _ in outputs], indent=2, sort_keys=True))
        return max((c for _, c in outputs), default=EXIT_OK)

    if args.input is None:
        parser.error("an input file is required (or --batch DIR)")
    report, code = run_one(args, args.input)
    print(json.dumps(report, indent=2, sort_keys=True))
    if args.verbose:
        msg = report.get("error") or ", ".join(report.get("result", {}).get("violated", [])) or "all checks passed"
        log.info("%s %s: %s (%s)", args.command, args.input, report["status"], msg)
    return code


if __name__ == "__main__":
    sys.exit(main())
