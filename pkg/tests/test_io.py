import numpy as np
import pytest

from detsurf.equivalence import Evidence, Verdict, VerdictKind
from detsurf.errors import ParseError
from detsurf.fixtures import fixture
from detsurf.invariants import InvariantFingerprint
from detsurf.io import (
    Report,
    VerdictRow,
    export_obj,
    parse_obj,
    parse_report,
    parse_tensor,
    serialize_tensor,
    write_report,
)
from detsurf.surface import surface_mesh
from detsurf.tensor import Tensor3


def _random_tensor(rng, label="R1"):
    slices = tuple(
        tuple(tuple(int(v) for v in row) for row in rng.integers(-5, 6, size=(4, 4)))
        for _ in range(3)
    )
    return Tensor3(4, 3, slices, label)


def _fp(label, vol=2.9197794095194, aff=9.961471493, cen=11.687898336789288):
    return InvariantFingerprint(
        volume=vol, affine_area=aff, centro_affine_area=cen,
        census=(2048, 0, 0), convex=True, method_tag="AdaptiveG7", rel_tol=1e-7,
        label=label,
    )


class TestTensorFormats:
    def test_fixture_roundtrip_json(self):
        t = fixture("T001")
        assert parse_tensor(serialize_tensor(t, "json")) == t

    def test_fixture_roundtrip_text(self):
        t = fixture("T001")
        assert parse_tensor(serialize_tensor(t, "text")) == t

    def test_random_roundtrip_both_formats(self, rng):
        for _ in range(5):
            t = _random_tensor(rng)
            assert parse_tensor(serialize_tensor(t, "json")) == t
            assert parse_tensor(serialize_tensor(t, "text")) == t

    def test_serialization_is_deterministic(self):
        t = fixture("T020")
        assert serialize_tensor(t, "json") == serialize_tensor(t, "json")

    def test_slice_count_mismatch(self):
        text = "4 3\n" + "\n".join("1 0 0 0" for _ in range(8))
        with pytest.raises(ParseError, match="12 matrix rows"):
            parse_tensor(text)

    def test_bad_integer_reports_position(self):
        text = "2 1\n1 0\n0 x"
        with pytest.raises(ParseError, match=r"line 3, column 2"):
            parse_tensor(text)

    def test_short_row_reports_line(self):
        text = "2 1\n1 0\n0"
        with pytest.raises(ParseError, match="line 3"):
            parse_tensor(text)

    def test_bad_header(self):
        with pytest.raises(ParseError, match="header"):
            parse_tensor("four three\n")

    def test_empty_input(self):
        with pytest.raises(ParseError, match="empty"):
            parse_tensor("   \n  ")

    def test_json_missing_key(self):
        with pytest.raises(ParseError, match="slices"):
            parse_tensor('{"n": 4, "p": 3}')

    def test_json_syntax_error_reports_position(self):
        with pytest.raises(ParseError, match="line"):
            parse_tensor('{"n": 4,\n "p": }')

    def test_json_non_integer_entry(self):
        doc = '{"n": 1, "p": 1, "slices": [[[0.5]]]}'
        with pytest.raises(ParseError, match="integer"):
            parse_tensor(doc)

    def test_text_comments_and_label(self):
        text = "# demo tensor\n2 1 demo\n1 0\n0 1\n"
        t = parse_tensor(text)
        assert t.label == "demo"
        assert t.slices == (((1, 0), (0, 1)),)


class TestObjExport:
    def test_vertex_line_count(self, unit_ball_poly):
        obj = export_obj(surface_mesh(unit_ball_poly, 8, 8))
        vlines = [l for l in obj.splitlines() if l.startswith("v ")]
        assert len(vlines) == 66

    def test_faces_reference_existing_vertices(self, unit_ball_poly):
        mesh = surface_mesh(unit_ball_poly, 8, 8)
        obj = export_obj(mesh)
        nv = len(mesh.vertices)
        for line in obj.splitlines():
            if line.startswith("f "):
                idx = [int(v) for v in line.split()[1:]]
                assert all(1 <= i <= nv for i in idx)

    def test_reparse_matches_coordinates(self, t001_poly):
        mesh = surface_mesh(t001_poly, 8, 8)
        back = parse_obj(export_obj(mesh))
        assert np.abs(back.vertices - mesh.vertices).max() < 1e-9
        assert np.array_equal(back.faces, mesh.faces)

    def test_export_deterministic(self, unit_ball_poly):
        mesh = surface_mesh(unit_ball_poly, 8, 8)
        assert export_obj(mesh) == export_obj(mesh)


class TestReports:
    def test_single_row_csv(self):
        report = Report(fingerprints=(_fp("T001"),), created_at="2024-01-01T00:00:00Z")
        lines = write_report(report, "csv").splitlines()
        assert lines[0].startswith("label,method,volume")
        assert len(lines) == 2
        assert lines[1].startswith("T001,AdaptiveG7,2.919779409519")

    def test_thirteen_significant_digits(self):
        text = write_report(Report(fingerprints=(_fp("T001"),)), "csv")
        assert "2.919779409519" in text
        assert "11.68789833679" in text

    def test_orbit_row_labels(self):
        rows = tuple(_fp(f"T001-{i}") for i in range(6))
        lines = write_report(Report(fingerprints=rows), "csv").splitlines()
        assert [l.split(",")[0] for l in lines[1:]] == [f"T001-{i}" for i in range(6)]

    def test_verdict_rows_in_csv(self):
        verdict = Verdict(
            VerdictKind.NOT_SL_EQUIVALENT,
            (Evidence("volume", 2.9197794, 4.0314824, 1e-3),),
        )
        report = Report(
            fingerprints=(_fp("A"), _fp("B", vol=4.0314824)),
            verdicts=(VerdictRow("A", "B", verdict),),
        )
        text = write_report(report, "csv")
        assert "A:B,not-sl-equivalent" in text

    def test_json_roundtrip(self):
        verdict = Verdict(
            VerdictKind.NOT_GL_EQUIVALENT,
            (Evidence("centro_affine_area", 11.68, 11.50, 1e-3),),
            ("convexity mismatch: True vs False",),
        )
        report = Report(
            fingerprints=(_fp("A"), _fp("B", cen=11.50)),
            verdicts=(VerdictRow("A", "B", verdict),),
            backend="adaptive",
            tolerance=1e-7,
            seed=42,
            created_at="2024-01-01T00:00:00Z",
        )
        assert parse_report(write_report(report, "json")) == report

    def test_verdict_must_reference_known_labels(self):
        verdict = Verdict(VerdictKind.INCONCLUSIVE)
        with pytest.raises(ValueError, match="unknown fingerprints"):
            Report(fingerprints=(_fp("A"),), verdicts=(VerdictRow("A", "C", verdict),))

    def test_byte_determinism(self):
        report = Report(fingerprints=(_fp("T001"),), created_at="fixed")
        assert write_report(report, "json") == write_report(report, "json")
        assert write_report(report, "csv") == write_report(report, "csv")

    def test_unknown_format(self):
        with pytest.raises(ValueError):
            write_report(Report(fingerprints=(_fp("A"),)), "xml")
