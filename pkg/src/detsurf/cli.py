"""Command-line interface.

Tensor arguments accept a file path (JSON or text format) or the label of
an embedded fixture (e.g. T001).  Exit codes: 0 success, 2 parse/usage
error, 3 definiteness failure (not absolutely nonsingular), 4 requested
accuracy not reached.
"""

from __future__ import annotations

import argparse
import datetime
import sys
from pathlib import Path

from . import fixtures
from .detpoly import Definiteness, definiteness, det_poly, format_polynomial, sign_normalize
from .equivalence import compare, orbit_table
from .errors import AccuracyError, DefinitenessError, DetsurfError, ParseError
from .invariants import InvariantConfig, fingerprint
from .io import Report, VerdictRow, export_obj, parse_tensor, write_report
from .quadrature import load_design
from .surface import curvature_census, surface_mesh

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_NOT_DEFINITE = 3
EXIT_ACCURACY = 4

#: bundled location of the published 216-point strength-20 design, if installed
DESIGN_DATA_PATH = Path(__file__).parent / "data" / "des.3.216.20.txt"


def _load_tensor(spec):
    path = Path(spec)
    if path.exists():
        try:
            text = path.read_text()
        except OSError as e:
            raise ParseError(f"cannot read {spec!r}: {e}")
        t = parse_tensor(text)
        if t.label is None:
            t = t.relabel(path.stem)
        return t
    if spec in fixtures.FIXTURE_LABELS:
        return fixtures.fixture(spec)
    raise ParseError(
        f"{spec!r} is neither a readable file nor a fixture label "
        f"(available: {', '.join(fixtures.FIXTURE_LABELS)})"
    )


def _invariant_config(args):
    design = None
    if args.backend == "design":
        design_file = args.design_file or (
            str(DESIGN_DATA_PATH) if DESIGN_DATA_PATH.exists() else None
        )
        if design_file is None:
            raise ParseError("design backend needs --design-file (no bundled design found)")
        raw = Path(design_file).read_text()
        design = load_design(raw, strength=args.design_strength,
                             source_name=Path(design_file).name)
    return InvariantConfig(
        backend=args.backend,
        rel_tol=args.tol,
        mc_samples=args.mc_samples,
        seed=args.seed,
        design=design,
    )


def _add_backend_flags(sub):
    sub.add_argument("--backend", choices=("adaptive", "mc", "design"), default="adaptive")
    sub.add_argument("--tol", type=float, default=1e-7,
                     help="adaptive relative tolerance (default 1e-7)")
    sub.add_argument("--mc-samples", type=int, default=1_000_000)
    sub.add_argument("--seed", type=int, default=0)
    sub.add_argument("--design-file", help="path to a design point file (3 reals per point)")
    sub.add_argument("--design-strength", type=int, default=20)


def _report_meta(args):
    return dict(
        backend=args.backend,
        tolerance=args.mc_samples if args.backend == "mc" else args.tol,
        seed=args.seed,
        created_at=datetime.datetime.now(datetime.timezone.utc).isoformat(),
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="detsurf",
        description="Non-equivalence tests for absolutely nonsingular tensors "
                    "via geometric invariants of the determinant-polynomial surface.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("detpoly", help="print the determinant polynomial")
    s.add_argument("tensor")

    s = sub.add_parser("check", help="definiteness / absolute-nonsingularity test")
    s.add_argument("tensor")
    s.add_argument("--resolution", type=int, default=32)

    s = sub.add_parser("invariants", help="compute the invariant fingerprint")
    s.add_argument("tensor")
    _add_backend_flags(s)
    s.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("compare", help="non-equivalence verdict for two tensors")
    s.add_argument("tensor1")
    s.add_argument("tensor2")
    _add_backend_flags(s)
    s.add_argument("--verdict-tol", type=float, default=1e-3)
    s.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("orbit", help="fingerprints along a random group orbit")
    s.add_argument("tensor")
    s.add_argument("--group", choices=("sl3", "gl3", "sl443"), default="sl3")
    s.add_argument("--count", type=int, default=5)
    _add_backend_flags(s)
    s.add_argument("--format", choices=("csv", "json"), default="csv")

    s = sub.add_parser("census", help="Gaussian-curvature sign counts on a lattice")
    s.add_argument("tensor")
    s.add_argument("--res-s", type=int, default=32)
    s.add_argument("--res-t", type=int, default=64)

    s = sub.add_parser("mesh", help="export the constant surface as OBJ")
    s.add_argument("tensor")
    s.add_argument("--res-s", type=int, default=32)
    s.add_argument("--res-t", type=int, default=64)
    s.add_argument("-o", "--output", help="write to file instead of stdout")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except DefinitenessError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_NOT_DEFINITE
    except AccuracyError as e:
        print(f"error: {e} (best estimate {e.best_estimate:.13g} "
              f"+- {e.error_estimate:.3g})", file=sys.stderr)
        return EXIT_ACCURACY
    except (DetsurfError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE


def _dispatch(args):
    if args.command == "detpoly":
        t = _load_tensor(args.tensor)
        print(format_polynomial(det_poly(t)))
        return EXIT_OK

    if args.command == "check":
        t = _load_tensor(args.tensor)
        rep = definiteness(det_poly(t), resolution=args.resolution)
        label = t.label or "tensor"
        if rep.kind is Definiteness.INDEFINITE:
            w = ", ".join(f"{c:.6f}" for c in rep.witness)
            print(f"{label}: {rep.kind.value}; sign changes near ({w})")
            return EXIT_NOT_DEFINITE
        print(f"{label}: {rep.kind.value} (min |f| on refined grid = {rep.min_abs:.6g})")
        if rep.kind is Definiteness.INCONCLUSIVE:
            return EXIT_NOT_DEFINITE
        print(f"{label}: absolutely nonsingular")
        return EXIT_OK

    if args.command == "invariants":
        t = _load_tensor(args.tensor)
        config = _invariant_config(args)
        fp = fingerprint(det_poly(t), config, label=t.label)
        report = Report(fingerprints=(fp,), **_report_meta(args))
        print(write_report(report, args.format), end="")
        return EXIT_OK

    if args.command == "compare":
        t1, t2 = _load_tensor(args.tensor1), _load_tensor(args.tensor2)
        config = _invariant_config(args)
        label1, label2 = t1.label or "A", t2.label or "B"
        fp1 = fingerprint(det_poly(t1), config, label=label1)
        fp2 = fingerprint(det_poly(t2), config, label=label2)
        verdict = compare(fp1, fp2, rel_tol=args.verdict_tol)
        report = Report(
            fingerprints=(fp1, fp2),
            verdicts=(VerdictRow(label1, label2, verdict),),
            **_report_meta(args),
        )
        print(write_report(report, args.format), end="")
        return EXIT_OK

    if args.command == "orbit":
        t = _load_tensor(args.tensor)
        config = _invariant_config(args)
        table = orbit_table(t, args.group, args.count, args.seed, config)
        report = Report(fingerprints=table.fingerprints, **_report_meta(args))
        print(write_report(report, args.format), end="")
        return EXIT_OK

    if args.command == "census":
        t = _load_tensor(args.tensor)
        f = sign_normalize(det_poly(t))
        kp, km, k0 = curvature_census(f, args.res_s, args.res_t)
        print(f"K+ {kp}  K- {km}  K0 {k0}")
        return EXIT_OK

    if args.command == "mesh":
        t = _load_tensor(args.tensor)
        f = sign_normalize(det_poly(t))
        obj = export_obj(surface_mesh(f, args.res_s, args.res_t))
        if args.output:
            Path(args.output).write_text(obj)
        else:
            print(obj, end="")
        return EXIT_OK

    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
