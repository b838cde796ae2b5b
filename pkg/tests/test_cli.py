"""Tests for the command-line verbs and exit codes."""

from __future__ import annotations

from pathlib import Path

import pytest

from lattice_workbench.cli import EXIT_ERROR, EXIT_NO, EXIT_OK, main
from lattice_workbench.fixtures import chain, m3
from lattice_workbench.formats import parse_lattice_file, parse_lattice_text
from lattice_workbench.order import is_isomorphic

LATTICES = Path(__file__).resolve().parents[1] / "lattices"


def lat(name: str) -> str:
    return str(LATTICES / f"{name}.lat")


def run(capsys, *argv: str) -> tuple[int, str, str]:
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


# ------------------------------------------------------------------
# Finite lattice questions
# ------------------------------------------------------------------


class TestCheck:
    def test_yes(self, capsys) -> None:
        assert run(capsys, "check", "modular", lat("m3"))[:2] == (
            EXIT_OK,
            "modular: yes\n",
        )

    def test_no_with_witness(self, capsys) -> None:
        code, out, _ = run(capsys, "check", "distributive", lat("m3"))
        assert code == EXIT_NO
        assert out.startswith("distributive: no witness (")

    def test_orthomodular_witness(self, capsys) -> None:
        code, out, _ = run(capsys, "check", "orthomodular", lat("benzene"))
        assert code == EXIT_NO
        assert out == "orthomodular: no witness (a, b)\n"

    def test_derived_fact(self, capsys) -> None:
        code, out, _ = run(capsys, "check", "boolean", lat("boolean4"))
        assert (code, out) == (EXIT_OK, "boolean: yes\n")

    def test_unknown_property(self, capsys) -> None:
        code, out, err = run(capsys, "check", "bogus", lat("m3"))
        assert code == EXIT_ERROR
        assert out == ""
        assert err.startswith("error: unknown property 'bogus'")

    def test_missing_file(self, capsys, tmp_path) -> None:
        code, _, err = run(
            capsys, "check", "modular", str(tmp_path / "nope.lat")
        )
        assert code == EXIT_ERROR
        assert err.startswith("error:")

    def test_not_a_lattice(self, capsys, tmp_path) -> None:
        path = tmp_path / "v.lat"
        path.write_text("lattice V\nelements: a b 1\ncovers: a<1 b<1\n")
        code, _, err = run(capsys, "check", "modular", str(path))
        assert code == EXIT_ERROR
        assert "no-meet" in err


class TestListing:
    def test_complements(self, capsys) -> None:
        _, out, _ = run(capsys, "complements", lat("m3"), "a")
        assert out == "complements of a: b c\n"

    def test_no_complements(self, capsys) -> None:
        _, out, _ = run(capsys, "complements", lat("chain3"), "m")
        assert out == "complements of m: none\n"

    def test_classify_kv(self, capsys) -> None:
        code, out, _ = run(capsys, "classify", lat("n5"), "--format", "kv")
        lines = out.splitlines()
        assert code == EXIT_OK
        assert "name=N5" in lines
        assert "modular=false" in lines

    def test_classify_text(self, capsys) -> None:
        _, out, _ = run(capsys, "classify", lat("m3"))
        assert out.startswith("lattice M3 (5 elements)\n")

    def test_dot(self, capsys) -> None:
        _, out, _ = run(capsys, "dot", lat("m3"))
        assert out.startswith('digraph "M3" {\n')

    def test_dot_to_file(self, capsys, tmp_path) -> None:
        path = tmp_path / "m3.dot"
        _, out, _ = run(capsys, "dot", lat("m3"), "--out", str(path))
        assert out == f"wrote {path}\n"
        assert path.read_text().startswith("digraph")


# ------------------------------------------------------------------
# Free lattices
# ------------------------------------------------------------------


class TestFree:
    def test_free_leq(self, capsys) -> None:
        code, out, _ = run(capsys, "free-leq", "x1 ^ x2", "x1")
        assert (code, out) == (EXIT_OK, "x1 ^ x2 <= x1: yes\n")

    def test_free_leq_no(self, capsys) -> None:
        code, _, _ = run(
            capsys, "free-leq", "x1 ^ (x2 v x3)", "(x1 ^ x2) v (x1 ^ x3)"
        )
        assert code == EXIT_NO

    def test_syntax_error(self, capsys) -> None:
        code, _, err = run(capsys, "free-leq", "x1 ^", "x1")
        assert code == EXIT_ERROR
        assert "position 4" in err

    def test_free_canon(self, capsys) -> None:
        assert run(capsys, "free-canon", "x1 v (x1 ^ x2)")[1] == "x1\n"

    def test_gen_fd(self, capsys, tmp_path) -> None:
        path = tmp_path / "fd3.lat"
        code, out, _ = run(capsys, "gen-fd", "3", "--out", str(path))
        lines = out.splitlines()
        assert code == EXIT_OK
        assert lines[0] == "FD(3): 18 elements"
        assert lines[1] == f"wrote {path}"
        assert len(parse_lattice_file(path)) == 18

    def test_gen_fd_discrepancy(self, capsys) -> None:
        lines = run(capsys, "gen-fd", "2")[1].splitlines()
        assert lines[1] == (
            "note: the published table lists 42; computed 4 (discrepancy)"
        )

    def test_gen_fd_six_needs_flag(self, capsys) -> None:
        assert run(capsys, "gen-fd", "6")[0] == EXIT_ERROR

    def test_gen_fm3(self, capsys) -> None:
        lines = run(capsys, "gen-fm3")[1].splitlines()
        assert lines[0] == "FM(3): 28 elements"
        assert lines[1] == "modular: yes"
        assert lines[2].startswith("distributive: no witness")
        assert lines[3] == "interval [u, v] isomorphic to M3: yes"
        assert lines[4] == "quotient on 2-chain evaluations: 18 elements"


# ------------------------------------------------------------------
# Extensions
# ------------------------------------------------------------------


class TestExtensions:
    def test_extend(self, capsys, tmp_path) -> None:
        path = tmp_path / "fq.dot"
        code, out, _ = run(
            capsys,
            "extend",
            lat("chain3"),
            "--element",
            "m",
            "--out",
            str(path),
        )
        lines = out.splitlines()
        assert code == EXIT_OK
        assert "classes: 4" in lines
        assert "complements of u: m" in lines
        assert path.read_text().startswith('digraph "FQ"')

    def test_extend_rejects_bound(self, capsys) -> None:
        code, _, err = run(capsys, "extend", lat("chain3"), "--element", "0")
        assert code == EXIT_ERROR
        assert "bound" in err

    def test_insert(self, capsys) -> None:
        code, out, _ = run(
            capsys, "insert", lat("chain3"), "0", "m", lat("m3")
        )
        name, L = parse_lattice_text(out)
        assert code == EXIT_OK
        assert name == "C3_M3"
        assert len(L) == 6
        assert not is_isomorphic(L, chain(6))

    def test_insert_needs_cover(self, capsys) -> None:
        code = run(capsys, "insert", lat("chain3"), "0", "1", lat("m3"))[0]
        assert code == EXIT_ERROR


# ------------------------------------------------------------------
# Corpus and harness
# ------------------------------------------------------------------


class TestCorpusVerbs:
    def test_enum_then_harness(self, capsys, tmp_path) -> None:
        path = tmp_path / "c4.corpus"
        code, out, _ = run(capsys, "enum", "4", "--corpus", str(path))
        lines = out.splitlines()
        assert code == EXIT_OK
        assert lines[:5] == [
            "1 elements: 1",
            "2 elements: 1",
            "3 elements: 1",
            "4 elements: 2",
            "total: 5",
        ]
        code, out, _ = run(
            capsys, "harness", "--corpus", str(path), "--claim", "S6.6"
        )
        assert code == EXIT_OK
        assert out.split()[:2] == ["S6.6", "confirmed"]

    def test_harness_unknown_claim(self, capsys) -> None:
        code, _, err = run(
            capsys, "harness", "--size", "3", "--claim", "nope"
        )
        assert code == EXIT_ERROR
        assert "unknown claim" in err

    def test_enum_too_large(self, capsys) -> None:
        assert run(capsys, "enum", "9")[0] == EXIT_ERROR

    def test_no_verb(self) -> None:
        with pytest.raises(SystemExit):
            main([])


def test_fixture_files_match_fixtures() -> None:
    assert is_isomorphic(parse_lattice_file(lat("m3")), m3())
    assert is_isomorphic(parse_lattice_file(lat("chain3")), chain(3))
