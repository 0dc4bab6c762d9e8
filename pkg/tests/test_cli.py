import json

import pytest

from app.cli import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main

EXAMPLE = "[W^2 -> W@W]{ x1 -> x1 + x1 + x1*x2 + x2 ; x2 -> 3*x1*x2 }"
DELTA_TEXT = "[W -> W@W]{ x1 -> x1*x2 }"
FOLD_TEXT = "[W@W -> W]{ x1 -> x1 ; x2 -> x1 }"


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


def test_check_hom_reports_a_nonvanishing_square(capsys):
    status, out, _ = run(capsys, "check-hom", EXAMPLE)
    assert status == EXIT_FAILED
    assert out.strip() == "FAIL: x1*x1 = 0 in the source but its image is 4*x1*x2"
    status, out, _ = run(capsys, "check-hom", FOLD_TEXT)
    assert status == EXIT_OK
    assert out.strip() == "pass"


def test_check_hom_reports_the_failing_pair(capsys):
    status, out, _ = run(capsys, "check-hom", "[W^2 -> W@W]{ x1 -> x1 ; x2 -> x2 }")
    assert status == EXIT_FAILED
    assert out.startswith("FAIL: x1*x2 = 0")


@pytest.mark.parametrize(
    "text",
    [
        "[W^2 -> W@W]{ x1 -> x1 ; x2 x2 }",
        "[W^2 -> W@W]{ x1 -> x1 ; x1 -> x2 }",
        "[W^2 -> W@W]{ x1 -> x3 ; x2 -> x2 }",
    ],
)
def test_malformed_morphisms_exit_with_input_status(capsys, text):
    status, out, err = run(capsys, "check-hom", text)
    assert status == EXIT_INPUT
    assert out == ""
    assert err.startswith("error: ")
    assert "line 1, column" in err
    assert "^" in err


def test_json_errors_carry_the_position(capsys):
    status, out, _ = run(capsys, "--json", "check-hom", "[W^2 -> W@W]{ x1 -> x1 ; x1 -> x2 }")
    assert status == EXIT_INPUT
    payload = json.loads(out)
    assert payload["success"] is False
    assert payload["error"]["kind"] == "duplicate"
    assert payload["error"]["position"]["column"] == 26


def test_json_flag_after_the_subcommand(capsys):
    status, out, _ = run(capsys, "check-hom", FOLD_TEXT, "--json")
    assert status == EXIT_OK
    assert json.loads(out)["ok"] is True
    status, out, _ = run(capsys, "check-hom", "[W^2 -> W@W]{ x1 -> x1 ; x1 -> x2 }", "--json")
    assert status == EXIT_INPUT
    assert json.loads(out)["error"]["kind"] == "duplicate"
    status, out, _ = run(capsys, "check-hom", FOLD_TEXT)
    assert out.strip() == "pass"


def test_unknown_subcommand_is_an_input_error(capsys):
    assert main(["frobnicate"]) == EXIT_INPUT


def test_normalize(capsys):
    status, out, _ = run(capsys, "normalize", "x2*x1 + x1*x2 + x1", "--ambient", "W@W")
    assert status == EXIT_OK
    assert out.strip() == "x1 + 2*x1*x2"
    status, out, _ = run(capsys, "--json", "normalize", "W @ W^2")
    assert json.loads(out)["kind"] == "algebra"
    assert json.loads(out)["text"] == "W@W^2"


def test_compose(capsys):
    status, out, _ = run(capsys, "compose", FOLD_TEXT, DELTA_TEXT)
    assert status == EXIT_OK
    assert out.strip() == "[W -> W]{ x1 -> 0 }"


def test_tensor(capsys):
    status, out, _ = run(capsys, "tensor", "W^2", "W")
    assert status == EXIT_OK
    assert out.strip() == "W^2@W"
    status, _, _ = run(capsys, "tensor", "W^2", DELTA_TEXT)
    assert status == EXIT_INPUT


def test_pullback_lift(capsys):
    status, out, _ = run(
        capsys,
        "pullback-lift",
        "--square", "vertical",
        "--right", "[W -> W@W]{ x1 -> x1*x2 + 2*x2 }",
        "--bottom", "[W -> N]{ x1 -> 0 }",
    )
    assert status == EXIT_OK
    assert out.strip() == "[W -> W^2]{ x1 -> x1 + 2*x2 }"


def test_pullback_lift_rejects_a_non_commuting_cone(capsys):
    status, _, err = run(
        capsys,
        "pullback-lift",
        "--square", "vertical",
        "--right", "[W -> W@W]{ x1 -> x1 }",
        "--bottom", "[W -> N]{ x1 -> 0 }",
    )
    assert status == EXIT_INPUT
    assert "error:" in err


def test_verify_pullback(capsys):
    status, out, _ = run(capsys, "verify-pullback", "--square", "foundational", "W", "1", "2", "--cones", "20")
    assert status == EXIT_OK
    assert "pass, uniqueness certified, 20 cones" in out
    status, _, _ = run(capsys, "verify-pullback", "--square", "foundational", "W", "one", "2")
    assert status == EXIT_INPUT


def test_phitilde(capsys):
    status, out, _ = run(capsys, "phitilde", DELTA_TEXT)
    assert status == EXIT_OK
    assert out.strip() == "X1^X2"
    _, out, _ = run(capsys, "phitilde", "[W -> N]{ x1 -> 0 }")
    assert out.strip() == "*"
    _, out, _ = run(capsys, "phitilde", "[N -> W]{ }")
    assert out.strip() == "(no components)"


def test_alpha(capsys):
    status, out, _ = run(capsys, "alpha", DELTA_TEXT, FOLD_TEXT)
    assert status == EXIT_OK
    assert "source: W | *" in out
    assert "zeta: X1^X1" in out
    assert "decomposition: pass" in out


def test_check_coherence(capsys):
    status, out, _ = run(capsys, "check-coherence", "--seed", "4", "--count", "5")
    assert status == EXIT_OK
    assert out.startswith("coherence: pass (")
    assert "seed 4)" in out.splitlines()[0]
    status, out, _ = run(capsys, "check-coherence", "--seed", "4", "--count", "5", "--json")
    report = json.loads(out)
    assert report["checked"] + report["skipped"] == 5
    assert report["max_summands"] >= 1
    status, _, _ = run(capsys, "check-coherence", DELTA_TEXT)
    assert status == EXIT_INPUT


def test_check_tangent(capsys):
    status, out, _ = run(capsys, "check-tangent", "--instance", "trivial", "--budget", "3", "--cone-budget", "1")
    assert status == EXIT_OK
    assert out.startswith("instance trivial: pass")


def test_diffobj_check(capsys):
    status, out, _ = run(capsys, "diffobj-check")
    assert status == EXIT_OK
    assert "phat: [[0, 1]]" in out
    status, out, _ = run(capsys, "diffobj-check", "--phat", "[[1,1]]")
    assert status == EXIT_FAILED
    assert "pair.invertible" in out
    status, _, _ = run(capsys, "diffobj-check", "--phat", "[[1,")
    assert status == EXIT_INPUT


def test_derivative(capsys):
    status, out, _ = run(capsys, "derivative", "--f", "[[2]]")
    assert status == EXIT_OK
    assert out.splitlines()[0] == "derivative: [[0, 2]]"


@pytest.mark.parametrize("rows", ["[[1.9]]", "[[true]]", "[[0,\"a\"]]", "[[-1]]", "[1, 2]", "{}"])
def test_derivative_rejects_matrices_that_are_not_natural(capsys, rows):
    status, out, err = run(capsys, "derivative", "--f", rows)
    assert status == EXIT_INPUT
    assert out == ""
    assert err.startswith("error: matrix must be JSON rows of natural numbers")


def test_batch_reports_the_worst_status(capsys, tmp_path):
    script = tmp_path / "session.weil"
    script.write_text(
        "# comments and blank lines are skipped\n"
        "\n"
        "tensor W W\n"
        "check-hom '[W^2 -> W@W]{ x1 -> x1 ; x2 -> x2 }'\n",
        encoding="utf-8",
    )
    status, out, _ = run(capsys, "batch", str(script))
    assert status == EXIT_FAILED
    assert "$ tensor W W" in out
    assert "W@W" in out


def test_batch_rejects_lines_that_are_not_commands(capsys, tmp_path):
    script = tmp_path / "bad.weil"
    script.write_text("W@W\n", encoding="utf-8")
    status, _, err = run(capsys, "batch", str(script))
    assert status == EXIT_INPUT
    assert "not a command" in err
    assert main(["batch", str(tmp_path / "missing.weil")]) == EXIT_INPUT
