"""Propositional labels and scenarios.

A label is a satisfiable conjunction of literals over a set of letters; the
empty conjunction is the always-true label. A scenario is a truth assignment
over some subset of the letters (complete when it covers all of them).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping


class LabelError(ValueError):
    """Malformed label text or an unsatisfiable conjunction."""


_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Label:
    """Conjunction of (letter, required truth value) literals."""

    literals: frozenset[tuple[str, bool]] = frozenset()

    def __post_init__(self) -> None:
        names = [p for p, _ in self.literals]
        if len(set(names)) != len(names):
            raise LabelError(f"unsatisfiable label: {sorted(names)} contains a letter with both signs")

    @classmethod
    def parse(cls, text: str) -> "Label":
        """Parse ``"a & !b"`` syntax; blank text is the empty label."""
        if not text.strip():
            return cls()
        literals = set()
        for part in text.split("&"):
            token = part.strip()
            if not token:
                raise LabelError(f"empty literal in label {text!r}")
            sign = True
            if token.startswith("!"):
                sign = False
                token = token[1:].strip()
            if not _NAME_RE.match(token):
                raise LabelError(f"bad letter name {token!r} in label {text!r}")
            literals.add((token, sign))
        return cls(frozenset(literals))

    def render(self) -> str:
        return " & ".join(p if v else f"!{p}" for p, v in sorted(self.literals))

    def letters(self) -> frozenset[str]:
        return frozenset(p for p, _ in self.literals)

    def subsumes(self, other: "Label") -> bool:
        """True when this label implies ``other`` (literal-set superset)."""
        return other.literals <= self.literals

    def consistent_with(self, other: "Label") -> bool:
        """True when the conjunction of both labels is satisfiable."""
        names = [p for p, _ in self.literals | other.literals]
        return len(names) == len(set(names))

    def conjoin(self, other: "Label") -> "Label":
        """Conjunction of both labels; raises LabelError if contradictory."""
        return Label(self.literals | other.literals)

    def evaluate(self, scenario: "Scenario") -> bool:
        return all(scenario.value(p) == v for p, v in self.literals)

    def __str__(self) -> str:
        return self.render()


EMPTY_LABEL = Label()


def parse_label(text: str) -> Label:
    return Label.parse(text)


def label_logic(l1: Label, l2: Label) -> tuple[bool, bool]:
    """(consistent, subsumes): l1∧l2 satisfiable, and l1 ⇒ l2."""
    return l1.consistent_with(l2), l1.subsumes(l2)


@dataclass(frozen=True)
class Scenario:
    """Truth assignment letter -> {0,1}; partial when it covers a strict subset."""

    items: tuple[tuple[str, bool], ...]

    def __post_init__(self) -> None:
        names = [p for p, _ in self.items]
        if names != sorted(set(names)):
            raise ValueError("scenario items must be sorted and letter-unique")

    @classmethod
    def of(cls, assignment: Mapping[str, bool] | Iterable[tuple[str, bool]]) -> "Scenario":
        pairs = dict(assignment)
        return cls(tuple(sorted((p, bool(v)) for p, v in pairs.items())))

    @cached_property
    def _map(self) -> dict[str, bool]:
        return dict(self.items)

    def letters(self) -> frozenset[str]:
        return frozenset(self._map)

    def value(self, letter: str) -> bool:
        try:
            return self._map[letter]
        except KeyError:
            raise KeyError(f"scenario does not assign letter {letter!r}") from None

    def satisfies(self, label: Label) -> bool:
        return label.evaluate(self)

    def extends(self, partial: "Scenario") -> bool:
        """True when this assignment agrees with ``partial`` on its whole domain."""
        return all(p in self._map and self._map[p] == v for p, v in partial.items)

    def consistent_with(self, other: "Scenario") -> bool:
        """No letter assigned opposite values by the two assignments."""
        return all(other._map[p] == v for p, v in self.items if p in other._map)

    def as_label(self) -> Label:
        return Label(frozenset(self.items))

    def bits(self) -> str:
        """Compact ``"010"`` form over the sorted letters; ``"-"`` when empty."""
        return "".join("1" if v else "0" for _, v in self.items) or "-"

    def __str__(self) -> str:
        return self.as_label().render()


def all_scenarios(letters: Iterable[str]) -> list[Scenario]:
    """Every complete scenario, lexicographic over sorted letters, 0 before 1."""
    names = sorted(letters)
    return [
        Scenario(tuple(zip(names, bits)))
        for bits in itertools.product((False, True), repeat=len(names))
    ]
