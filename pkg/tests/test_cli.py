import pytest

from aprop.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCheck:
    def test_a1_holds(self, capsys):
        code, out, _ = run(capsys, "check", "A1", "a", "b", "c", "d")
        assert code == 0
        assert "holds" in out

    def test_both_frameworks_diverge(self, capsys):
        code, out, _ = run(capsys, "check", "--framework", "both", "EAABB",
                           "a", "a", "b", "b")
        assert code == 1
        assert "sim a:a ~ b:b: fails" in out
        assert "rw a:a ~ b:b: holds" in out

    def test_p_reflexivity_everywhere(self, capsys):
        code, _, _ = run(capsys, "check", "A3", "a", "b", "a", "b")
        assert code == 0

    def test_machine_format(self, capsys):
        code, out, _ = run(capsys, "--format", "machine", "check", "A2",
                           "a", "b", "c", "d")
        assert code == 1
        line = out.strip()
        assert line.startswith("sim a:b ~ c:d fails")
        assert "exact=1" in line


class TestSolve:
    def test_determinism(self, capsys):
        code, out, _ = run(capsys, "solve", "A1", "a", "a", "a")
        assert code == 0
        assert out.split() == ["a"]

    def test_reflexivity_solution(self, capsys):
        code, out, _ = run(capsys, "solve", "A2", "a", "b", "a")
        assert code == 0
        assert "b" in out.split()

    def test_example_solution(self, capsys):
        code, out, _ = run(capsys, "solve", "A1", "a", "b", "c")
        assert "d" in out.split()


class TestSimilar:
    def test_reflexive(self, capsys):
        code, _, _ = run(capsys, "similar", "A2", "a", "a")
        assert code == 0


class TestJustifications:
    def test_a2_single_variable_listing(self, capsys):
        code, out, _ = run(capsys, "--max-vars", "1", "justifications", "A2",
                           "a", "b", "c", "d")
        assert code == 0
        assert "x0 -> f(x0)" in out
        assert "the non-trivial intersection is empty" in out


class TestAxioms:
    def test_pcomm_fails_some(self, capsys):
        code, out, _ = run(capsys, "axioms", "PCOMM")
        assert code == 1
        assert "p-commutativity: fails" in out

    def test_machine_lines(self, capsys):
        _, out, _ = run(capsys, "--format", "machine", "axioms", "A1")
        lines = out.strip().splitlines()
        assert len(lines) == 12
        assert all(line.startswith("axiom sim ") for line in lines)


class TestIso:
    def test_mapping_from_spec_file(self, capsys, tmp_path):
        spec = tmp_path / "swap.spec"
        spec.write_text(
            "algebra S { universe: a, c, d; op f/1: a -> a, c -> d, d -> c; }\n"
            "mapping swap : S -> S { a -> a, c -> d, d -> c }\n"
        )
        code, out, _ = run(capsys, "iso", str(spec), "swap")
        assert code == 0
        assert "second-iso-theorem: pass" in out

    def test_unknown_mapping(self, capsys, tmp_path):
        spec = tmp_path / "empty.spec"
        spec.write_text("algebra S { universe: a; }\n")
        code, _, err = run(capsys, "iso", str(spec), "nope")
        assert code == 2
        assert "nope" in err


class TestCompare:
    def test_eaabb_differences(self, capsys):
        code, out, _ = run(capsys, "compare", "EAABB")
        assert code == 0
        assert "a:a ~ b:b sim=fails rw=holds" in out
        assert "14 differing quadruple(s)" in out


class TestVectors:
    def test_known_bundle_outcome(self, capsys):
        code, out, _ = run(capsys, "--format", "machine", "vectors")
        fails = [l for l in out.splitlines() if " fail " in l]
        assert code == 1
        assert len(fails) == 1
        assert "PTRANS sim p-transitivity" in fails[0]

    def test_output_is_deterministic(self, capsys):
        _, first, _ = run(capsys, "--format", "machine", "vectors")
        _, second, _ = run(capsys, "--format", "machine", "vectors")
        assert first == second


class TestErrors:
    def test_unknown_element(self, capsys):
        code, _, err = run(capsys, "check", "A1", "a", "b", "x", "d")
        assert code == 2
        assert "unknown element" in err

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "check", "no-such-algebra", "a", "b", "c", "d")
        assert code == 2

    def test_bad_bounds(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--max-vars", "0", "check", "A1", "a", "b", "a", "b"])
        assert exc.value.code == 2

    def test_flags_accepted_after_subcommand(self, capsys):
        code, out, _ = run(capsys, "check", "A1", "--format", "machine",
                           "a", "b", "a", "b")
        assert code == 0
        assert out.strip().startswith("sim")
