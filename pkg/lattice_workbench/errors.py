"""Exception hierarchy.

Every error raised on purpose by the package derives from
:class:`LatticeWorkbenchError`, which is a ``ValueError`` so callers
that only know the standard library still catch it.
"""

from __future__ import annotations


class LatticeWorkbenchError(ValueError):
    """Base class for all package errors."""


class LatticeCheckFailure(LatticeWorkbenchError):
    """An order or lattice axiom failed on a concrete witness.

    Parameters
    ----------
    kind
        One of ``not-antisymmetric``, ``not-transitive``,
        ``no-meet``, ``no-join``.
    witness
        Element ids that reproduce the failure when re-tested.
    line
        Source line the failure was traced to, when parsed from text.
    """

    KINDS = ("not-antisymmetric", "not-transitive", "no-meet", "no-join")

    def __init__(
        self, kind: str, witness: tuple[str, ...], line: int | None = None
    ) -> None:
        if kind not in self.KINDS:
            raise ValueError(f"unknown failure kind {kind!r}")
        self.kind = kind
        self.witness = tuple(witness)
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(
            f"{where}{kind}: witness ({', '.join(self.witness)})"
        )


class UnknownElementError(LatticeWorkbenchError, KeyError):
    """An element id does not belong to the structure."""

    def __init__(self, element: str) -> None:
        self.element = element
        LatticeWorkbenchError.__init__(self, f"unknown element {element!r}")

    def __str__(self) -> str:
        return self.args[0]


class TermError(LatticeWorkbenchError):
    """A term cannot be compared or evaluated."""


class TermSyntaxError(TermError):
    """Malformed term text; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int) -> None:
        self.position = position
        super().__init__(f"{message} at position {position}")


class BudgetExceeded(LatticeWorkbenchError):
    """A bounded search hit its budget."""

    def __init__(self, what: str, limit: int) -> None:
        self.what = what
        self.limit = limit
        super().__init__(f"budget exceeded: {what} (limit {limit})")


class ConsistencyError(LatticeWorkbenchError):
    """An internal self-check failed."""


class ExtensionError(LatticeWorkbenchError):
    """Invalid input to an extension construction."""


class LatticeFormatError(LatticeWorkbenchError):
    """Syntax error in the lattice text format."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


class CorpusFileError(LatticeWorkbenchError):
    """A corpus file is truncated or otherwise corrupt."""


class CorpusVersionError(CorpusFileError):
    """A corpus file was written by an incompatible format version."""


class UnknownClaimError(LatticeWorkbenchError, KeyError):
    """A claim id is not in the claim table."""

    def __init__(self, claim_id: str) -> None:
        self.claim_id = claim_id
        LatticeWorkbenchError.__init__(self, f"unknown claim {claim_id!r}")

    def __str__(self) -> str:
        return self.args[0]
