"""File formats: tensors (JSON canonical + plain text), OBJ meshes, reports.

All writers are byte-deterministic given identical inputs; reports carry 13
significant digits.
"""

from __future__ import annotations

import csv
import io as _io
import json
from dataclasses import dataclass

import numpy as np

from .errors import ParseError
from .invariants import InvariantFingerprint
from .equivalence import Evidence, Verdict, VerdictKind
from .surface import SurfaceMesh
from .tensor import Tensor3

_SIG = ".13g"


# ---------------------------------------------------------------- tensors

def parse_tensor(text: str) -> Tensor3:
    """Parse either tensor format; JSON when the first character is '{'."""
    stripped = text.lstrip()
    if not stripped:
        raise ParseError("empty tensor file")
    if stripped[0] == "{":
        return _parse_tensor_json(text)
    return _parse_tensor_text(text)


def _parse_tensor_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno)
    for key in ("n", "p", "slices"):
        if key not in doc:
            raise ParseError(f"missing key {key!r}")
    try:
        slices = tuple(
            tuple(tuple(_int_entry(v) for v in row) for row in s) for s in doc["slices"]
        )
        return Tensor3(n=int(doc["n"]), p=int(doc["p"]), slices=slices,
                       label=doc.get("label"))
    except (TypeError, ValueError) as e:
        raise ParseError(f"bad tensor document: {e}")


def _int_entry(v):
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ValueError(f"entry {v!r} is not a number")
    if isinstance(v, float):
        if not v.is_integer():
            raise ValueError(f"entry {v!r} is not an integer")
        v = int(v)
    return v


def _parse_tensor_text(text):
    lines = text.splitlines()
    rows = []          # (lineno, [tokens])
    for lineno, line in enumerate(lines, start=1):
        body = line.split("#", 1)[0].strip()
        if body:
            rows.append((lineno, body.split()))
    if not rows:
        raise ParseError("empty tensor file")
    head_line, head = rows[0]
    if len(head) < 2:
        raise ParseError("header must be 'n p [label]'", line=head_line)
    try:
        n, p = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError("header must start with two integers", line=head_line)
    label = head[2] if len(head) > 2 else None
    body_rows = rows[1:]
    if len(body_rows) != n * p:
        raise ParseError(
            f"expected {n * p} matrix rows for n={n}, p={p}, found {len(body_rows)}"
        )
    slices = []
    it = iter(body_rows)
    for _ in range(p):
        mat = []
        for _ in range(n):
            lineno, tokens = next(it)
            if len(tokens) != n:
                raise ParseError(f"expected {n} entries in row", line=lineno)
            row = []
            for col, tok in enumerate(tokens, start=1):
                try:
                    row.append(int(tok))
                except ValueError:
                    raise ParseError(f"bad integer {tok!r}", line=lineno, column=col)
            mat.append(tuple(row))
        slices.append(tuple(mat))
    return Tensor3(n=n, p=p, slices=tuple(slices), label=label)


def serialize_tensor(t: Tensor3, fmt: str = "json") -> str:
    if fmt == "json":
        doc = {
            "n": t.n,
            "p": t.p,
            "label": t.label,
            "slices": [[[int(v) for v in row] for row in s] for s in t.slices],
        }
        return json.dumps(doc, indent=1, sort_keys=True) + "\n"
    if fmt == "text":
        out = [f"{t.n} {t.p}" + (f" {t.label}" if t.label else "")]
        for s in t.slices:
            out.append("")
            out.extend(" ".join(str(int(v)) for v in row) for row in s)
        return "\n".join(out) + "\n"
    raise ValueError(f"unknown tensor format {fmt!r}")


# ------------------------------------------------------------------- OBJ

def export_obj(mesh: SurfaceMesh) -> str:
    """Wavefront OBJ text: one 'v' line per vertex, 'f' lines one-based."""
    out = []
    for x, y, z in mesh.vertices:
        out.append(f"v {x:.17g} {y:.17g} {z:.17g}")
    for a, b, c in mesh.faces:
        out.append(f"f {a + 1} {b + 1} {c + 1}")
    return "\n".join(out) + "\n"


def parse_obj(text: str) -> SurfaceMesh:
    vertices, faces = [], []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts or parts[0].startswith("#"):
            continue
        if parts[0] == "v":
            if len(parts) != 4:
                raise ParseError("vertex line needs three coordinates", line=lineno)
            vertices.append([float(v) for v in parts[1:]])
        elif parts[0] == "f":
            idx = [int(v.split("/")[0]) - 1 for v in parts[1:]]
            if len(idx) != 3:
                raise ParseError("only triangle faces are supported", line=lineno)
            faces.append(idx)
    if not vertices:
        raise ParseError("no vertices found")
    return SurfaceMesh(np.array(vertices), np.array(faces, dtype=np.int64))


# ---------------------------------------------------------------- reports

@dataclass(frozen=True)
class VerdictRow:
    label1: str
    label2: str
    verdict: Verdict


@dataclass(frozen=True)
class Report:
    """Fingerprints plus pairwise verdicts and the method metadata."""

    fingerprints: tuple
    verdicts: tuple = ()
    backend: str = "adaptive"
    tolerance: float | int = 1e-7
    seed: int | None = None
    created_at: str = ""

    def __post_init__(self):
        labels = {fp.label for fp in self.fingerprints}
        for row in self.verdicts:
            if row.label1 not in labels or row.label2 not in labels:
                raise ValueError(
                    f"verdict references unknown fingerprints {row.label1!r}, {row.label2!r}"
                )


def write_report(report: Report, fmt: str = "csv") -> str:
    if fmt == "csv":
        return _report_csv(report)
    if fmt == "json":
        return _report_json(report)
    raise ValueError(f"unknown report format {fmt!r}")


_FP_FIELDS = ("volume", "affine_area", "centro_affine_area")


def _report_csv(report):
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(
        ["label", "method", "volume", "affine_area", "centro_affine_area",
         "K_plus", "K_minus", "K_zero", "convex"]
    )
    for fp in report.fingerprints:
        w.writerow(
            [fp.label, fp.method_tag]
            + [format(getattr(fp, f), _SIG) for f in _FP_FIELDS]
            + list(fp.census)
            + [str(fp.convex).lower()]
        )
    if report.verdicts:
        w.writerow([])
        w.writerow(["pair", "verdict", "evidence"])
        for row in report.verdicts:
            ev = "; ".join(
                f"{e.invariant}={e.value1:{_SIG}}|{e.value2:{_SIG}}"
                for e in row.verdict.evidence
            )
            w.writerow([f"{row.label1}:{row.label2}", row.verdict.kind.value, ev])
    return buf.getvalue()


def _report_json(report):
    doc = {
        "backend": report.backend,
        "tolerance": report.tolerance,
        "seed": report.seed,
        "created_at": report.created_at,
        "fingerprints": [
            {
                "label": fp.label,
                "method": fp.method_tag,
                "rel_tol": fp.rel_tol,
                "volume": fp.volume,
                "affine_area": fp.affine_area,
                "centro_affine_area": fp.centro_affine_area,
                "census": list(fp.census),
                "convex": fp.convex,
            }
            for fp in report.fingerprints
        ],
        "verdicts": [
            {
                "label1": row.label1,
                "label2": row.label2,
                "kind": row.verdict.kind.value,
                "evidence": [
                    {
                        "invariant": e.invariant,
                        "value1": e.value1,
                        "value2": e.value2,
                        "tolerance": e.tolerance,
                    }
                    for e in row.verdict.evidence
                ],
                "rough_evidence": list(row.verdict.rough_evidence),
            }
            for row in report.verdicts
        ],
    }
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


def parse_report(text: str) -> Report:
    """Read back a JSON report (the inverse of write_report(..., "json"))."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", line=e.lineno, column=e.colno)
    fingerprints = tuple(
        InvariantFingerprint(
            volume=d["volume"],
            affine_area=d["affine_area"],
            centro_affine_area=d["centro_affine_area"],
            census=tuple(d["census"]),
            convex=d["convex"],
            method_tag=d["method"],
            rel_tol=d["rel_tol"],
            label=d["label"],
        )
        for d in doc["fingerprints"]
    )
    verdicts = tuple(
        VerdictRow(
            label1=d["label1"],
            label2=d["label2"],
            verdict=Verdict(
                kind=VerdictKind(d["kind"]),
                evidence=tuple(
                    Evidence(e["invariant"], e["value1"], e["value2"], e["tolerance"])
                    for e in d["evidence"]
                ),
                rough_evidence=tuple(d.get("rough_evidence", ())),
            ),
        )
        for d in doc["verdicts"]
    )
    return Report(
        fingerprints=fingerprints,
        verdicts=verdicts,
        backend=doc.get("backend", "adaptive"),
        tolerance=doc.get("tolerance", 1e-7),
        seed=doc.get("seed"),
        created_at=doc.get("created_at", ""),
    )
