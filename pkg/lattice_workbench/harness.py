"""Claims about lattice classes, tested across a corpus.

A claim is data: facts that must hold for it to apply, and facts it
then promises.  Fact names are the keys of
:attr:`PropertyReport.facts`, plus ``variety-identity``, computed
here.  Claims whose hypotheses are automatic or undecidable on
finite lattices carry a ``vacuous`` note and are not evaluated.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable

from lattice_workbench.corpus import Corpus
from lattice_workbench.errors import UnknownClaimError
from lattice_workbench.formats import describe
from lattice_workbench.order import FiniteLattice
from lattice_workbench.properties import classify, satisfies_identity
from lattice_workbench.terms import parse_term

log = logging.getLogger(__name__)

IMPLIES = "implies"
IFF = "iff"

CONFIRMED = "confirmed"
COUNTEREXAMPLE = "counterexample"
VACUOUS = "vacuous"

UC = ("uniquely-complemented",)

VARIETY_IDENTITY = (
    "(x1 ^ (x2 v x3)) v (x2 ^ (x1 v x4))",
    "((x1 ^ (x2 v x3)) v x2) ^ (x1 v (x2 ^ (x1 v x4)))",
)


@dataclass(frozen=True)
class Claim:
    """``given + hypothesis => conclusion``, or under ``given``,
    ``hypothesis <=> conclusion`` when ``relation`` is ``iff``."""

    id: str
    statement: str
    hypothesis: tuple[str, ...]
    conclusion: tuple[str, ...]
    given: tuple[str, ...] = ()
    relation: str = IMPLIES
    vacuous: str = ""

    def applies(self, facts: dict[str, bool]) -> bool:
        context = self.given
        if self.relation == IMPLIES:
            context = context + self.hypothesis
        return all(facts[k] for k in context)

    def holds(self, facts: dict[str, bool]) -> bool:
        concl = all(facts[k] for k in self.conclusion)
        if self.relation == IFF:
            return all(facts[k] for k in self.hypothesis) == concl
        return concl


def _claim(id, statement, hyp, concl, **kw) -> Claim:
    return Claim(id, statement, tuple(hyp), tuple(concl), **kw)


CLAIMS: tuple[Claim, ...] = (
    _claim(
        "S6.1",
        "a Boolean algebra is a Heyting algebra and orthocomplemented",
        ["boolean"],
        ["heyting", "orthocomplementable"],
    ),
    _claim(
        "S6.2",
        "a distributive orthocomplemented lattice is orthomodular",
        ["distributive", "orthocomplementable"],
        ["orthomodular"],
    ),
    _claim(
        "S6.3",
        "an orthomodular lattice is orthocomplemented and complemented",
        ["orthomodular"],
        ["orthocomplementable", "complemented"],
    ),
    _claim(
        "S6.4",
        "a complemented lattice is bounded",
        ["complemented"],
        ["bounded"],
    ),
    _claim(
        "S6.5",
        "a Heyting algebra is bounded and residuated",
        ["heyting"],
        ["bounded", "residuated"],
    ),
    _claim(
        "S6.6",
        "a distributive lattice is modular",
        ["distributive"],
        ["modular"],
    ),
    _claim(
        "S6.7",
        "a modular complemented lattice is relatively complemented",
        ["modular", "complemented"],
        ["relatively-complemented"],
    ),
    _claim(
        "S6.8",
        "a Heyting algebra is distributive",
        ["heyting"],
        ["distributive"],
    ),
    _claim(
        "S6.9",
        "a totally ordered set is a distributive lattice",
        ["chain"],
        ["distributive"],
    ),
    _claim(
        "S6.10",
        "a modular lattice is semimodular",
        ["modular"],
        ["semimodular"],
    ),
    _claim(
        "S6.11",
        "a semimodular lattice is atomic",
        ["semimodular"],
        ["atomic"],
        vacuous="every finite lattice is atomic",
    ),
    _claim(
        "S6.12",
        "an atomic lattice is a lattice",
        ["atomic"],
        ["lattice"],
        vacuous="every corpus entry is a lattice",
    ),
    _claim(
        "S6.13",
        "a lattice is a semilattice",
        ["lattice"],
        ["semilattice"],
        vacuous="every lattice is a semilattice by definition",
    ),
    _claim(
        "S6.14",
        "a semilattice is a partially ordered set",
        ["semilattice"],
        ["poset"],
        vacuous="every semilattice is ordered by definition",
    ),
    _claim(
        "T4.1",
        "any distributive lattice is modular",
        ["distributive"],
        ["modular"],
    ),
    _claim(
        "T4.2",
        "in a distributive lattice complements are unique when they exist",
        ["distributive"],
        ["at-most-one-complement"],
    ),
    _claim(
        "T4.3",
        "in a distributive lattice complements relativize to intervals",
        ["distributive"],
        ["complements-relativize"],
    ),
    _claim(
        "T4.4",
        "in a distributive lattice all complements and relative "
        "complements that exist are unique",
        ["distributive"],
        ["at-most-one-complement", "relative-complements-unique"],
    ),
    _claim(
        "T4.5",
        "every uniquely complemented atomic lattice is distributive",
        ["uniquely-complemented", "atomic"],
        ["distributive"],
    ),
    _claim(
        "T4.6",
        "a lattice is distributive iff it has no sublattice isomorphic "
        "to M3 or N5",
        ["distributive"],
        ["no-forbidden-sublattice"],
        relation=IFF,
    ),
    _claim(
        "T7.2",
        "a uniquely complemented lattice of finite width is distributive",
        ["uniquely-complemented", "finite-width"],
        ["distributive"],
        vacuous="every finite lattice has finite width",
    ),
    _claim(
        "T7.4",
        "a uniquely complemented modular lattice is distributive",
        ["modular"],
        ["distributive"],
        given=UC,
    ),
    _claim(
        "T7.6",
        "a compactly generated uniquely complemented lattice is "
        "distributive",
        ["uniquely-complemented"],
        ["distributive"],
        vacuous="every finite lattice is compactly generated",
    ),
    _claim(
        "T7.11",
        "a uniquely complemented lattice with ACC or DCC is distributive",
        ["uniquely-complemented", "acc"],
        ["distributive"],
        vacuous="finite lattices satisfy both chain conditions",
    ),
    _claim(
        "T7.12",
        "if the top of a uniquely complemented lattice is the join of "
        "its atoms, the lattice is distributive",
        ["top-join-of-atoms"],
        ["distributive"],
        given=UC,
    ),
    _claim(
        "T7.13",
        "a uniquely complemented lattice where every nonzero element "
        "avoids some prime ideal is distributive",
        ["homs-separate"],
        ["distributive"],
        given=UC,
    ),
    _claim(
        "T7.14",
        "a uniquely complemented lattice is distributive iff two-valued "
        "homomorphisms separate its nonzero elements from 0",
        ["distributive"],
        ["homs-separate"],
        given=UC,
        relation=IFF,
    ),
    _claim(
        "T7.14.D",
        "in a distributive lattice two-valued homomorphisms separate "
        "nonzero elements from 0",
        ["distributive"],
        ["homs-separate"],
    ),
    _claim(
        "T7.15",
        "a sectionally complemented uniquely complemented lattice is "
        "distributive",
        ["sectionally-complemented"],
        ["distributive"],
        given=UC,
    ),
    _claim(
        "T7.16",
        "a uniquely complemented lattice is distributive iff "
        "(x v ((x v y) ^ x')) ^ y vanishes for all x and y > 0",
        ["distributive"],
        ["uc-inequality-zero"],
        given=UC,
        relation=IFF,
        vacuous="inequality evaluated in reports; its direction is "
        "not asserted",
    ),
    _claim(
        "T7.17",
        "in a uniquely complemented lattice, antitone complementation "
        "implies distributivity",
        ["uc-antitone"],
        ["distributive"],
        given=UC,
    ),
    _claim(
        "T7.18",
        "a uniquely complemented 0-semimodular lattice is distributive",
        ["uniquely-complemented"],
        ["distributive"],
        vacuous="0-semimodularity is not decided",
    ),
    _claim(
        "T7.19",
        "a uniquely complemented 0-modular lattice is distributive",
        ["uniquely-complemented"],
        ["distributive"],
        vacuous="0-modularity is not decided",
    ),
    _claim(
        "T7.20",
        "a uniquely complemented ortholattice is distributive",
        ["orthocomplementable"],
        ["distributive"],
        given=UC,
    ),
    _claim(
        "T7.21",
        "a uniquely complemented orthomodular lattice is distributive",
        ["orthomodular"],
        ["distributive"],
        given=UC,
    ),
    _claim(
        "T7.22a",
        "a uniquely complemented lattice obeying De Morgan's law on "
        "comparable pairs is distributive",
        ["uc-de-morgan-comparable"],
        ["distributive"],
        given=UC,
    ),
    _claim(
        "T7.22b",
        "a uniquely complemented lattice obeying De Morgan's law on "
        "incomparable pairs is distributive",
        ["uc-de-morgan-incomparable"],
        ["distributive"],
        given=UC,
    ),
    _claim(
        "T7.23",
        "a uniquely complemented lattice is distributive iff each "
        "nonzero element contains a nonzero regular element",
        ["distributive"],
        ["uc-regular-below-nonzero"],
        given=UC,
        relation=IFF,
    ),
    _claim(
        "T7.24",
        "in a uniquely complemented lattice a < b implies b ^ a > 0",
        ["uniquely-complemented"],
        ["lattice"],
        vacuous="trivial as stated",
    ),
    _claim(
        "T7.25",
        "in a uniquely complemented lattice, if a is covered by b then "
        "b ^ a' is an atom and a relative complement of a in [0, b]",
        ["uniquely-complemented"],
        ["uc-cover-atom"],
    ),
    _claim(
        "T7.27",
        "every distributive lattice satisfies the variety identity "
        + " = ".join(VARIETY_IDENTITY),
        ["distributive"],
        ["variety-identity"],
    ),
    _claim(
        "H2.1",
        "in a uniquely complemented lattice x ^ y = 0 implies y <= x'",
        ["uniquely-complemented"],
        ["uc-huntington"],
    ),
)

CLAIMS_BY_ID = {c.id: c for c in CLAIMS}


def get_claim(claim: str | Claim) -> Claim:
    if isinstance(claim, Claim):
        return claim
    try:
        return CLAIMS_BY_ID[claim]
    except KeyError:
        raise UnknownClaimError(claim) from None


@dataclass
class ClaimResult:
    """Outcome of one claim over a corpus.

    ``witnesses`` pairs the canonical code of each counterexample
    with a description of what failed.
    """

    claim_id: str
    status: str
    instances: int = 0
    witnesses: list[tuple[bytes, str]] = field(default_factory=list)
    note: str = ""

    def line(self) -> str:
        first = self.witnesses[0][0].hex() if self.witnesses else "-"
        return (
            f"{self.claim_id:<8} {self.status:<15} "
            f"counterexamples={len(self.witnesses)} first={first}"
        )


# ------------------------------------------------------------------
# Per-lattice evaluation
# ------------------------------------------------------------------


def variety_identity_holds(L: FiniteLattice) -> bool:
    lhs, rhs = (parse_term(s) for s in VARIETY_IDENTITY)
    return bool(satisfies_identity(L, lhs, rhs))


def lattice_facts(L: FiniteLattice) -> tuple[dict[str, bool], dict]:
    """Facts for claim evaluation and a witness text per false fact."""
    report = classify(L)
    facts = dict(report.facts)
    facts["variety-identity"] = variety_identity_holds(L)
    details = {k: describe(v) for k, v in report.verdicts.items() if not v}
    details.update({k: describe(v) for k, v in report.uc.items() if not v})
    return facts, details


def _detail(claim: Claim, facts: dict[str, bool], details: dict) -> str:
    if claim.relation == IFF:
        lhs = "+".join(claim.hypothesis)
        rhs = "+".join(claim.conclusion)
        return (
            f"{lhs}={str(all(facts[k] for k in claim.hypothesis)).lower()} "
            f"but {rhs}="
            f"{str(all(facts[k] for k in claim.conclusion)).lower()}"
        )
    failed = [k for k in claim.conclusion if not facts[k]]
    return "; ".join(f"{k}: {details.get(k, 'no')}" for k in failed)


def run_harness(
    corpus: Corpus,
    claims: Iterable[str | Claim] | None = None,
    workers: int = 1,
) -> list[ClaimResult]:
    """Evaluate *claims* (default: all) on every corpus lattice.

    Lattices are classified once each, in a process pool when
    *workers* > 1; results keep corpus order.

    Raises
    ------
    UnknownClaimError
        A claim id is not in :data:`CLAIMS`.
    """
    chosen = [get_claim(c) for c in (CLAIMS if claims is None else claims)]
    lattices = [L for _, L in corpus.entries]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            evaluated = list(pool.map(lattice_facts, lattices, chunksize=16))
    else:
        evaluated = [lattice_facts(L) for L in lattices]
    log.info("classified %d lattices", len(evaluated))

    results = []
    for claim in chosen:
        if claim.vacuous:
            results.append(ClaimResult(claim.id, VACUOUS, note=claim.vacuous))
            continue
        result = ClaimResult(claim.id, CONFIRMED)
        for code, (facts, details) in zip(corpus.codes, evaluated):
            if not claim.applies(facts):
                continue
            result.instances += 1
            if not claim.holds(facts):
                result.witnesses.append(
                    (code, _detail(claim, facts, details))
                )
        if result.witnesses:
            result.status = COUNTEREXAMPLE
            log.warning(
                "%s fails on %d lattices", claim.id, len(result.witnesses)
            )
        elif not result.instances:
            result.status = VACUOUS
            result.note = "hypothesis never holds on the corpus"
        results.append(result)
    return results


def replay_counterexample(claim: str | Claim, L: FiniteLattice) -> bool:
    """Re-run the deciders on *L*: does *claim* fail there?"""
    claim = get_claim(claim)
    if claim.vacuous:
        return False
    facts, _ = lattice_facts(L)
    return claim.applies(facts) and not claim.holds(facts)


def harness_report(results: list[ClaimResult]) -> str:
    lines = []
    for r in results:
        line = r.line()
        if r.note:
            line += f"  ({r.note})"
        lines.append(line)
    return "\n".join(lines) + "\n"

