import json
import subprocess
import sys

import pytest

from knotsurgery import builtin_knot
from knotsurgery.cli import main, parse_p_spec
from knotsurgery.knots import builtin_monodromy, fibered_knot_to_json


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_parse_p_spec():
    assert parse_p_spec("1..4") == (1, 2, 3, 4)
    assert parse_p_spec("1,3,5") == (1, 3, 5)
    assert parse_p_spec("-2..1,5") == (-2, -1, 0, 1, 5)
    with pytest.raises(ValueError):
        parse_p_spec("4..1")
    with pytest.raises(ValueError):
        parse_p_spec("")


def test_knot_builtin_unknot(capsys):
    code, out, _ = run(["knot", "--builtin", "unknot"], capsys)
    assert code == 0
    assert "alexander: 1" in out


def test_knot_braid_trefoil(capsys, tmp_path):
    code, out, _ = run(["knot", "--braid", "1 1 1", "--out", str(tmp_path)], capsys)
    assert code == 0
    assert "alexander: t^2 - t + 1" in out
    payload = json.loads((tmp_path / "knot.json").read_text())
    assert payload["schema_version"] == 1
    assert payload["presentation"]["generators"] == ["x1", "x2"]
    assert payload["peripheral_ok"] is True


def test_knot_rejects_non_knot(capsys):
    code, _, err = run(["knot", "--braid", "1 1"], capsys)
    assert code == 2
    assert "components" in err


def test_knot_requires_one_source(capsys):
    code, _, err = run(["knot", "--braid", "1 1 1", "--builtin", "unknot"], capsys)
    assert code == 2
    assert "exactly one" in err


def test_family_unknot_unresolved_exit_3(capsys, tmp_path):
    code, out, _ = run(
        ["family", "--builtin", "unknot", "--q", "5", "--p", "1..4", "--out", str(tmp_path)],
        capsys,
    )
    assert code == 3
    assert "UNRESOLVED" in out
    csv_lines = (tmp_path / "spectra.csv").read_text().splitlines()
    assert csv_lines[0].startswith("label,C2,")
    # lens space quotients do not depend on p
    assert len({line.split(",", 1)[1] for line in csv_lines[1:]}) == 1
    manifest = json.loads((tmp_path / "family_manifest.json").read_text())
    assert [m["p"] for m in manifest["members"]] == [1, 2, 3, 4]


def test_family_distinguished_exit_0(capsys, tmp_path):
    # fig8 surgeries 2/1 and 2/3 differ already at S5
    code, out, _ = run(
        ["family", "--builtin", "fig8", "--q", "2", "--p", "1,3", "--out", str(tmp_path)],
        capsys,
    )
    assert code == 0
    assert "1/1 pairs distinguished" in out
    assert "DISTINGUISHED at S5" in out


def test_family_empty_after_filter(capsys, tmp_path):
    code, _, err = run(
        ["family", "--builtin", "unknot", "--q", "2", "--p", "2,4", "--out", str(tmp_path)],
        capsys,
    )
    assert code == 2
    assert "empty family" in err


def test_family_cache_round_trip(capsys, tmp_path):
    argv = ["family", "--builtin", "unknot", "--q", "3", "--p", "1,2", "--out", str(tmp_path)]
    code1, _, _ = run(argv, capsys)
    primary = ["family_manifest.json", "spectra.csv", "distinguish_report.txt"]
    first = {name: (tmp_path / name).read_bytes() for name in primary}
    code2, _, _ = run(argv, capsys)
    second = {name: (tmp_path / name).read_bytes() for name in primary}
    assert code1 == code2
    assert first == second
    meta = json.loads((tmp_path / "run_meta.json").read_text())
    assert meta["cache_hits"] == 2


def test_verify_unknot(capsys):
    code, out, _ = run(["verify", "--builtin", "unknot", "--q", "3", "--p", "1"], capsys)
    assert code == 0
    assert "Z/3" in out
    assert "PASS" in out


def test_verify_trefoil_multiple_slopes(capsys):
    code, out, _ = run(["verify", "--builtin", "trefoil", "--q", "1", "--p", "1,2,3"], capsys)
    assert code == 0
    assert out.count("PASS") == 3


def test_verify_rejects_broken_monodromy(capsys, tmp_path):
    # not an automorphism: backward side does not invert forward
    payload = fibered_knot_to_json(builtin_monodromy("trefoil"))
    payload["backward"]["a1"] = [["a1", 1]]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(payload))
    code, _, err = run(["verify", "--monodromy", str(path), "--q", "1", "--p", "1"], capsys)
    assert code == 2
    assert "identity map" in err


def test_verify_flags_invalid_peripheral_system(capsys, tmp_path):
    # a valid surface automorphism whose mapping torus is not a knot group
    identity = {
        "genus": 1,
        "forward": {"a1": [["a1", 1]], "b1": [["b1", 1]]},
        "backward": {"a1": [["a1", 1]], "b1": [["b1", 1]]},
    }
    path = tmp_path / "identity.json"
    path.write_text(json.dumps(identity))
    code, out, _ = run(["verify", "--monodromy", str(path), "--q", "1", "--p", "1"], capsys)
    assert code == 1
    assert "abelianization-is-Z: FAIL" in out


def test_export_unknot_lens_space(capsys, tmp_path):
    code, _, _ = run(
        ["export", "--builtin", "unknot", "--q", "5", "--p", "1", "--out", str(tmp_path)],
        capsys,
    )
    assert code == 0
    text = (tmp_path / "surgery_q5_p1.g").read_text()
    assert text == 'F := FreeGroup("x1");\nrels := [ x1^5 ];\n'


def test_export_trefoil_relator_count(capsys, tmp_path):
    code, _, _ = run(
        ["export", "--builtin", "trefoil", "--q", "1", "--p", "1", "--out", str(tmp_path)],
        capsys,
    )
    assert code == 0
    text = (tmp_path / "surgery_q1_p1.g").read_text()
    rels_line = text.splitlines()[1]
    n_wirtinger = len(builtin_knot("trefoil").group.relators)
    assert rels_line.count(",") + 1 == n_wirtinger + 1


def test_family_with_custom_suite_file(capsys, tmp_path):
    suite_path = tmp_path / "suite.json"
    suite_path.write_text(
        json.dumps(
            [
                {"name": "C2", "degree": 2, "generators": ["(1 2)"]},
                {"name": "C3", "degree": 3, "generators": ["(1 2 3)"]},
            ]
        )
    )
    out = tmp_path / "out"
    code, _, _ = run(
        [
            "family", "--builtin", "unknot", "--q", "6", "--p", "1,5",
            "--targets", str(suite_path), "--out", str(out),
        ],
        capsys,
    )
    assert code == 3  # Z/6 quotients for both p; tiny suite cannot separate
    header = (out / "spectra.csv").read_text().splitlines()[0]
    assert header == "label,C2,C3"


def test_closure_cap_exit_4(capsys, tmp_path):
    # S9 saturates past the default closure cap
    suite_path = tmp_path / "huge.json"
    suite_path.write_text(
        json.dumps(
            [{"name": "S9", "degree": 9, "generators": ["(1 2)", "(1 2 3 4 5 6 7 8 9)"]}]
        )
    )
    code, _, err = run(
        [
            "family", "--builtin", "unknot", "--q", "2", "--p", "1",
            "--targets", str(suite_path), "--out", str(tmp_path / "out"),
        ],
        capsys,
    )
    assert code == 4
    assert "cap" in err


def test_export_knot_group(capsys, tmp_path):
    code, _, _ = run(
        [
            "export", "--builtin", "trefoil", "--construction", "knot",
            "--q", "1", "--p", "1", "--out", str(tmp_path),
        ],
        capsys,
    )
    assert code == 0
    assert (tmp_path / "knot_group.g").read_text().startswith('F := FreeGroup("x1", "x2");')


def test_workers_env_produces_identical_outputs(capsys, tmp_path, monkeypatch):
    out1 = tmp_path / "serial"
    out2 = tmp_path / "parallel"
    argv = ["family", "--builtin", "unknot", "--q", "4", "--p", "1,3"]
    run(argv + ["--out", str(out1), "--no-cache"], capsys)
    monkeypatch.setenv("KNOTSURGERY_WORKERS", "2")
    run(argv + ["--out", str(out2), "--no-cache"], capsys)
    assert (out1 / "spectra.csv").read_bytes() == (out2 / "spectra.csv").read_bytes()


def test_knot_from_monodromy_file(capsys, tmp_path):
    path = tmp_path / "trefoil.json"
    path.write_text(json.dumps(fibered_knot_to_json(builtin_monodromy("trefoil"))))
    code, out, _ = run(["knot", "--monodromy", str(path)], capsys)
    assert code == 0
    assert "alexander: t^2 - t + 1" in out
    assert "meridian: m" in out


def test_module_entry_point():
    result = subprocess.run(
        [sys.executable, "-m", "knotsurgery", "knot", "--builtin", "unknot"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "alexander: 1" in result.stdout
