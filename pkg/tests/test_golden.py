"""Byte-exact comparison of CLI documents with the files in tests/golden."""

from pathlib import Path

import pytest

from arcweier.cli import main

GOLDEN = Path(__file__).parent / "golden"
QUADRIC = str(GOLDEN / "quadric.ci")

CASES = [
    ("model_Y1.txt", ["model", "1"]),
    ("model_Y2.txt", ["model", "2"]),
    ("sd_1_2.txt", ["sd", "1", "2"]),
    ("jets_quadric_0.txt", ["jets", QUADRIC, "0"]),
    ("jets_quadric_1.txt", ["jets", QUADRIC, "1"]),
    ("jets_quadric_2.txt", ["jets", QUADRIC, "2"]),
    ("stratum_quadric_1.txt", ["stratum", QUADRIC, "1"]),
    ("division_div.txt", ["weierstrass", "div", str(GOLDEN / "division.series")]),
    ("division_prep.txt", ["weierstrass", "prep", str(GOLDEN / "division.series")]),
    ("lift_d2.txt", ["lift", QUADRIC, str(GOLDEN / "point_d2.series")]),
]


@pytest.mark.parametrize("name, argv", CASES, ids=[c[0] for c in CASES])
def test_golden_document(name, argv, tmp_path):
    out = tmp_path / name
    assert main(argv + ["-o", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / name).read_bytes()


def test_golden_model_equations_verbatim():
    text = (GOLDEN / "model_Y2.txt").read_text()
    assert "eq rem[t^0]: a*w^2 - v^2" in text and "eq rem[t^1]: b*w^2 - 2*v*w" in text
    assert "eq rem[t^0]: v^2" in (GOLDEN / "model_Y1.txt").read_text()
