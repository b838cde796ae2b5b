"""Tests for the lattice text format, DOT output and reports."""

from __future__ import annotations

import pytest

from lattice_workbench.errors import (
    BudgetExceeded,
    LatticeCheckFailure,
    LatticeFormatError,
)
from lattice_workbench.extension import (
    ExtensionSpec,
    adjoin_unique_complement,
    complement_audit,
)
from lattice_workbench.finite_free import free_distributive
from lattice_workbench.fixtures import antichain_poset, chain, m3
from lattice_workbench.formats import (
    audit_text,
    describe,
    emit_dot,
    format_lattice,
    parse_lattice_file,
    parse_lattice_text,
    parse_lattices,
    report_kv,
    report_text,
    term_lines,
    write_dot,
)
from lattice_workbench.order import is_isomorphic
from lattice_workbench.properties import Verdict, classify

M3_TEXT = """\
lattice M3
elements: 0 a b c 1
covers: 0<a 0<b 0<c a<1 b<1 c<1
"""

# ------------------------------------------------------------------
# Lattice text
# ------------------------------------------------------------------


class TestLatticeText:
    def test_format(self) -> None:
        assert format_lattice(m3(), "M3") == M3_TEXT

    def test_parse(self) -> None:
        name, L = parse_lattice_text(M3_TEXT)
        assert name == "M3"
        assert is_isomorphic(L, m3())

    def test_comments_and_repeats(self) -> None:
        text = (
            "# a 3-chain\n"
            "lattice C3   # trailing\n"
            "\n"
            "elements: 0 m\n"
            "elements: 1\n"
            "covers: 0<m\n"
            "covers: m<1\n"
        )
        _, L = parse_lattice_text(text)
        assert L.elements == ("0", "m", "1")
        assert is_isomorphic(L, chain(3))

    def test_several_blocks(self) -> None:
        text = M3_TEXT + format_lattice(chain(3), "C3")
        blocks = parse_lattices(text)
        assert [name for name, _ in blocks] == ["M3", "C3"]
        with pytest.raises(LatticeFormatError):
            parse_lattice_text(text)

    def test_file(self, tmp_path) -> None:
        path = tmp_path / "m3.lat"
        path.write_text(M3_TEXT)
        assert is_isomorphic(parse_lattice_file(path), m3())

    @pytest.mark.parametrize(
        ("text", "line"),
        [
            ("elements: 0\n", 1),
            ("lattice\n", 1),
            ("lattice A\nelements: 0 0\n", 2),
            ("lattice A\nelements: 0 1\ncovers: 0-1\n", 3),
            ("lattice A\nelements: 0 1\ncovers: 0<2\n", 3),
            ("lattice A\nsize: 2\n", 2),
            ("lattice A\nelements 0 1\n", 2),
            ("lattice A\n", 1),
        ],
    )
    def test_syntax_errors_have_lines(self, text, line) -> None:
        with pytest.raises(LatticeFormatError) as info:
            parse_lattices(text)
        assert info.value.line == line

    def test_not_a_lattice_blames_a_line(self) -> None:
        text = (
            "lattice V\n"
            "elements: a b 1\n"
            "covers: a<1\n"
            "covers: b<1\n"
        )
        with pytest.raises(LatticeCheckFailure) as info:
            parse_lattices(text)
        assert info.value.kind == "no-meet"
        assert info.value.line == 4
        assert str(info.value).startswith("line 4: no-meet")


# ------------------------------------------------------------------
# DOT
# ------------------------------------------------------------------


class TestDot:
    def test_m3(self) -> None:
        assert emit_dot(m3(), "M3") == (
            'digraph "M3" {\n'
            "    rankdir=BT;\n"
            "    node [shape=plaintext];\n"
            '    { rank=same; "0"; }\n'
            '    { rank=same; "a"; "b"; "c"; }\n'
            '    { rank=same; "1"; }\n'
            '    "0" -> "a";\n'
            '    "0" -> "b";\n'
            '    "0" -> "c";\n'
            '    "a" -> "1";\n'
            '    "b" -> "1";\n'
            '    "c" -> "1";\n'
            "}\n"
        )

    def test_quotes_are_escaped(self) -> None:
        assert 'digraph "a\\"b" {' in emit_dot(chain(2), 'a"b')

    def test_write(self, tmp_path) -> None:
        path = tmp_path / "c.dot"
        write_dot(chain(2), path, "C2")
        assert path.read_text() == emit_dot(chain(2), "C2")

    def test_too_large(self) -> None:
        with pytest.raises(BudgetExceeded):
            emit_dot(antichain_poset(501))


# ------------------------------------------------------------------
# Reports
# ------------------------------------------------------------------


class TestReports:
    def test_describe(self) -> None:
        assert describe(Verdict(True)) == "yes"
        assert (
            describe(Verdict(False, ("a", "b"), "note"))
            == "no witness (a, b) [note]"
        )

    def test_text_report(self) -> None:
        text = report_text(classify(m3(), "M3"))
        lines = text.splitlines()
        assert lines[0] == "lattice M3 (5 elements)"
        forbidden = "forbidden sublattice M3 at 0 a b c 1".split()
        assert any(line.split() == forbidden for line in lines)
        assert "  a: b c" in lines

    def test_kv_report(self) -> None:
        lines = report_kv(classify(m3(), "M3")).splitlines()
        for expected in (
            "name=M3",
            "size=5",
            "modular=true",
            "distributive=false",
            "complements.a=b,c",
            "forbidden.M3=0,a,b,c,1",
            "width=3",
        ):
            assert expected in lines

    def test_report_is_deterministic(self) -> None:
        assert report_text(classify(m3())) == report_text(classify(m3()))

    def test_term_lines(self) -> None:
        text = term_lines(free_distributive(2))
        assert len(text.splitlines()) == 4
        assert "x1\tx1\n" in text

    def test_audit_text(self) -> None:
        Q = adjoin_unique_complement(ExtensionSpec(chain(3), "m"))
        text = audit_text(complement_audit(Q, 2))
        lines = text.splitlines()
        assert "classes: 4" in lines
        assert "  0 | 1" in lines
        assert "  m | u" in lines
