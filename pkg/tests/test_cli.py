"""End-to-end behaviour of the command line, through main()."""

import io
import json

import pytest

from digitsquares import render_square
from digitsquares.cli import SquareDocument, main

EXT_DOC = {
    "order": 3,
    "width": 4,
    "alphabet": "012",
    "rows": [["1001", "2222", "0110"],
             ["0220", "1111", "2002"],
             ["2112", "0000", "1221"]],
}

GOLDEN_REPORT = """\
order: 3
width: 4
s1: 3333
s2: -
magic: yes
bimagic: no
pandiagonal: no
pandiagonal-bimagic: no
block 3: 9999
entries: palindromic=yes distinct=yes rotation-closed=yes
"""


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def ext_path(tmp_path):
    path = tmp_path / "ext.json"
    path.write_text(json.dumps(EXT_DOC))
    return str(path)


def test_verify_text_report_is_stable(capsys, ext_path):
    code, out, err = run(capsys, "verify", ext_path)
    assert code == 0
    assert out == GOLDEN_REPORT
    assert err == ""


def test_verify_json_report(capsys, ext_path):
    code, out, _ = run(capsys, "verify", "--format", "json", ext_path)
    assert code == 0
    payload = json.loads(out)
    assert payload["s1"] == 3333
    assert payload["magic"] is True
    assert payload["entries"]["palindromic"] is True
    assert len(payload["lines"]) == 8


def test_verify_checks_set_the_exit_code(capsys, ext_path):
    code, out, _ = run(capsys, "verify", "--magic", ext_path)
    assert code == 0
    assert "check magic: PASS" in out
    code, out, _ = run(capsys, "verify", "--bimagic", ext_path)
    assert code == 1
    assert "check bimagic: FAIL" in out
    # captured output is not a terminal, so no escape codes
    assert "\x1b[" not in out


def test_verify_blocks_flag(capsys, ext_path):
    code, out, _ = run(capsys, "verify", "--blocks", "3", ext_path)
    assert code == 0
    assert "check blocks 3: PASS" in out
    code, _, err = run(capsys, "verify", "--blocks", "2", ext_path)
    assert code == 2
    assert "block size 2" in err


def test_verify_reads_csv(capsys, tmp_path):
    path = tmp_path / "sq.csv"
    path.write_text('# 3,2\n"10","22","01"\n"02","11","20"\n"21","00","12"\n')
    code, out, _ = run(capsys, "verify", str(path))
    assert code == 0
    assert "s1: 33" in out


def test_verify_reads_stdin(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO(json.dumps(EXT_DOC)))
    code, out, _ = run(capsys, "verify", "-")
    assert code == 0
    assert "s1: 3333" in out


def test_verify_rejects_truncated_json(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"order": 3')
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2
    assert "line" in err


def test_verify_rejects_wrong_cell_width(capsys, tmp_path):
    doc = dict(EXT_DOC, rows=[["100", "2222", "0110"],
                              ["0220", "1111", "2002"],
                              ["2112", "0000", "1221"]])
    path = tmp_path / "odd.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2
    assert "cell (0, 0)" in err


def test_verify_rejects_cells_outside_alphabet(capsys, tmp_path):
    doc = dict(EXT_DOC, rows=[["1001", "2222", "0110"],
                              ["0220", "1911", "2002"],
                              ["2112", "0000", "1221"]])
    path = tmp_path / "stray.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "verify", str(path))
    assert code == 2
    assert "alphabet" in err


def test_verify_missing_file(capsys, tmp_path):
    code, _, err = run(capsys, "verify", str(tmp_path / "nope.json"))
    assert code == 2
    assert err


def test_generate_then_verify(capsys, tmp_path):
    out_path = tmp_path / "sq.json"
    code, _, _ = run(capsys, "generate", "--order", "3", "--width", "2",
                     "--line-sum", "3", "--distinct", "--out", str(out_path))
    assert code == 0
    code, out, _ = run(capsys, "verify", "--magic", "--distinct",
                       str(out_path))
    assert code == 0
    assert "s1: 33" in out


def test_generate_json_array(capsys):
    code, out, _ = run(capsys, "generate", "--order", "3", "--width", "1",
                       "--line-sum", "3", "--limit", "3", "--format", "json")
    assert code == 0
    docs = json.loads(out)
    assert len(docs) == 3
    assert all(d["order"] == 3 for d in docs)


def test_generate_text_uses_separators(capsys):
    code, out, _ = run(capsys, "generate", "--order", "3", "--width", "1",
                       "--line-sum", "3", "--limit", "2")
    assert code == 0
    assert out.count("---") == 1


def test_generate_per_place_line_sums(capsys):
    code, out, _ = run(capsys, "generate", "--order", "3", "--width", "2",
                       "--line-sum", "3,6", "--format", "json")
    assert code == 0
    doc = json.loads(out)[0]
    assert sum(int(c) for c in doc["rows"][0]) == 36


def test_generate_unsatisfiable_exits_3(capsys):
    code, _, err = run(capsys, "generate", "--order", "3", "--width", "1",
                       "--line-sum", "7")
    assert code == 3
    assert "no squares" in err


def test_generate_budget_exhausted_exits_3(capsys):
    code, _, err = run(capsys, "generate", "--order", "4", "--width", "4",
                       "--line-sum", "4", "--budget-ms", "0")
    assert code == 3
    assert "budget" in err


def test_generate_flag_conflicts_exit_2(capsys):
    code, _, err = run(capsys, "generate", "--bimagic", "--order", "8",
                       "--width", "4")
    assert code == 2
    assert "order 9" in err
    code, _, err = run(capsys, "generate", "--order", "3", "--width", "2")
    assert code == 2
    assert "--line-sum" in err


def test_generate_bimagic(capsys, tmp_path):
    out_path = tmp_path / "bi.json"
    code, _, _ = run(capsys, "generate", "--order", "9", "--width", "4",
                     "--bimagic", "--deterministic", "--out", str(out_path))
    assert code == 0
    code, out, _ = run(capsys, "verify", "--bimagic", "--blocks", "3",
                       "--distinct", str(out_path))
    assert code == 0
    assert "s2: 17169495" in out


def test_generate_deterministic_is_byte_identical(capsys, tmp_path):
    args = ["generate", "--order", "3", "--width", "2", "--line-sum", "3",
            "--distinct", "--limit", "3", "--deterministic", "--seed", "0"]
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(capsys, *args, "--out", str(a))[0] == 0
    assert run(capsys, *args, "--out", str(b))[0] == 0
    assert a.read_bytes() == b.read_bytes()


def test_transform_rotate_twice_is_identity(capsys, tmp_path, ext_path):
    once = tmp_path / "once.json"
    twice = tmp_path / "twice.json"
    assert run(capsys, "transform", "--rotate180", ext_path,
               "--out", str(once))[0] == 0
    assert run(capsys, "transform", "--rotate180", str(once),
               "--out", str(twice))[0] == 0
    assert json.loads(twice.read_text())["rows"] == EXT_DOC["rows"]


def test_transform_rotated_square_still_verifies(capsys, tmp_path, ext_path):
    rot = tmp_path / "rot.json"
    run(capsys, "transform", "--rotate180", ext_path, "--out", str(rot))
    code, out, _ = run(capsys, "verify", str(rot))
    assert code == 0
    assert "s1: 3333" in out


def test_transform_mirror_changes_alphabet(capsys, ext_path):
    code, out, _ = run(capsys, "transform", "--mirror", ext_path)
    assert code == 0
    assert json.loads(out)["alphabet"] == "015"


def test_transform_failure_exits_1(capsys, tmp_path):
    path = tmp_path / "seven.json"
    path.write_text(json.dumps({
        "order": 3, "width": 1,
        "rows": [["7", "1", "1"], ["1", "1", "1"], ["1", "1", "7"]]}))
    code, _, err = run(capsys, "transform", "--rotate180", str(path))
    assert code == 1
    # the scan hits the source cell (2, 2) first when filling (0, 0)
    assert "cell (2, 2)" in err


def test_transform_needs_exactly_one_mode(ext_path):
    with pytest.raises(SystemExit) as exc:
        main(["transform", ext_path])
    assert exc.value.code == 2


def test_render_matches_library(capsys, ext_path):
    doc = SquareDocument.from_json_dict(EXT_DOC)
    code, out, _ = run(capsys, "render", ext_path)
    assert code == 0
    assert out == render_square(doc.to_square()) + "\n"


def test_render_compact_drops_blank_lines(capsys, ext_path):
    code, out, _ = run(capsys, "render", "--compact", ext_path)
    assert code == 0
    assert "" not in out.rstrip("\n").split("\n")


def test_decompose_text(capsys, ext_path):
    code, out, _ = run(capsys, "decompose", ext_path)
    assert code == 0
    assert "layer 0: scale 1000, line sum 3" in out
    assert "layer 3: scale 1, line sum 3" in out


def test_decompose_json(capsys, ext_path):
    code, out, _ = run(capsys, "decompose", "--format", "json", ext_path)
    assert code == 0
    payload = json.loads(out)
    assert payload["width"] == 4
    assert payload["layers"][0]["line_sum"] == 3
    # outer planes mirror the inner ones on palindromic squares
    assert payload["layers"][0]["rows"] == payload["layers"][3]["rows"]


def test_cli_requires_a_subcommand():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_cli_rejects_unknown_flags():
    with pytest.raises(SystemExit) as exc:
        main(["verify", "--frobnicate", "x.json"])
    assert exc.value.code == 2
