"""JSON file formats for networks, hyperarc networks, strategies and reports.

Network files:
    {"letters": [...],
     "nodes": [{"name": ..., "label": "a & !b", "observes": "a"?}, ...],
     "constraints": [{"u": ..., "v": ..., "w": int, "label": ...}, ...]}
with the meaning v − u ≤ w whenever the label holds. Hyperarc network files:
    {"nodes": [...], "hyperarcs": [{"tail": ..., "heads": {node: weight}}]}
Strategy files map each complete scenario's label to {"times": {...}} plus
{"positions": {...}} for ordered strategies. Times are JSON integers when
integral and exact "N/D" strings otherwise.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .hytn import Hyperarc, Hytn
from .labels import Label, Scenario
from .network import Cstn, LabelledConstraint, ValidationReport
from .strategy import ExecStrategy, PiExecStrategy, Time


class FormatError(ValueError):
    """Input document does not match the expected file format."""


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {text!r}: {exc}") from None


def _time_to_json(t: Time) -> int | str:
    f = Fraction(t)
    return int(f) if f.denominator == 1 else str(f)


def _time_from_json(x: Any) -> Time:
    if isinstance(x, bool):
        raise FormatError(f"bad time value {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        f = parse_fraction(x)
        return int(f) if f.denominator == 1 else f
    raise FormatError(f"times must be integers or 'N/D' strings, got {x!r}")


# -- networks ---------------------------------------------------------------

def cstn_to_doc(g: Cstn) -> dict:
    observed_by = {v: p for p, v in g.observers.items()}
    nodes = []
    for v in g.nodes:
        entry: dict[str, Any] = {"name": v, "label": g.label_of(v).render()}
        if v in observed_by:
            entry["observes"] = observed_by[v]
        nodes.append(entry)
    return {
        "letters": list(g.letters),
        "nodes": nodes,
        "constraints": [
            {"u": c.u, "v": c.v, "w": c.w, "label": c.ell.render()} for c in g.constraints
        ],
    }


def cstn_from_doc(doc: Any) -> Cstn:
    if not isinstance(doc, dict):
        raise FormatError("network document must be a JSON object")
    try:
        letters = tuple(doc["letters"])
        raw_nodes = doc["nodes"]
        raw_constraints = doc.get("constraints", [])
    except KeyError as exc:
        raise FormatError(f"network document is missing field {exc}") from None
    names = []
    labels = {}
    observers = {}
    for entry in raw_nodes:
        name = entry["name"]
        names.append(name)
        labels[name] = Label.parse(entry.get("label", ""))
        if "observes" in entry:
            p = entry["observes"]
            if p in observers:
                raise FormatError(f"letter {p!r} has two observers")
            observers[p] = name
    constraints = []
    for entry in raw_constraints:
        w = entry["w"]
        if isinstance(w, bool) or not isinstance(w, int):
            raise FormatError(f"constraint weight {w!r} is not an integer")
        constraints.append(
            LabelledConstraint(entry["u"], entry["v"], w, Label.parse(entry.get("label", "")))
        )
    try:
        return Cstn(tuple(names), letters, labels, observers, tuple(constraints))
    except (ValueError, TypeError, KeyError) as exc:
        raise FormatError(str(exc)) from None


def load_cstn(path: str) -> Cstn:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from None
    return cstn_from_doc(doc)


def dump_cstn(g: Cstn, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(cstn_to_doc(g), fh, indent=2)
        fh.write("\n")


# -- hyperarc networks ------------------------------------------------------

def hytn_from_doc(doc: Any) -> Hytn:
    if not isinstance(doc, dict):
        raise FormatError("hyperarc network document must be a JSON object")
    try:
        nodes = tuple(doc["nodes"])
        raw_arcs = doc["hyperarcs"]
    except KeyError as exc:
        raise FormatError(f"hyperarc network document is missing field {exc}") from None
    arcs = []
    for entry in raw_arcs:
        heads = entry.get("heads", {})
        for v, w in heads.items():
            if isinstance(w, bool) or not isinstance(w, int):
                raise FormatError(f"head weight {w!r} is not an integer")
        try:
            arcs.append(Hyperarc.make(entry["tail"], heads))
        except (ValueError, KeyError) as exc:
            raise FormatError(str(exc)) from None
    try:
        return Hytn(nodes, tuple(arcs))
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def load_hytn(path: str) -> Hytn:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from None
    return hytn_from_doc(doc)


# -- strategies ---------------------------------------------------------------

def strategy_to_doc(g: Cstn, sigma: ExecStrategy | PiExecStrategy) -> dict:
    doc = {}
    times = sigma.schedules if isinstance(sigma, ExecStrategy) else sigma.times
    for s in g.scenarios():
        entry: dict[str, Any] = {
            "times": {v: _time_to_json(t) for v, t in sorted(times[s].items())}
        }
        if isinstance(sigma, PiExecStrategy):
            entry["positions"] = dict(sorted(sigma.positions[s].items()))
        doc[s.as_label().render()] = entry
    return doc


def strategy_from_doc(doc: Any, g: Cstn, ordered: bool) -> ExecStrategy | PiExecStrategy:
    if not isinstance(doc, dict):
        raise FormatError("strategy document must be a JSON object")
    by_scenario = {}
    for key, entry in doc.items():
        label = Label.parse(key)
        if label.letters() != frozenset(g.letters):
            raise FormatError(f"scenario key {key!r} does not assign every letter exactly once")
        s = Scenario(tuple(sorted(label.literals)))
        by_scenario[s] = entry
    missing = [s for s in g.scenarios() if s not in by_scenario]
    if missing:
        raise FormatError(f"strategy misses scenario {missing[0].as_label().render() or 'λ'!r}")
    times = {}
    positions = {}
    for s, entry in by_scenario.items():
        times[s] = {v: _time_from_json(t) for v, t in entry.get("times", {}).items()}
        if ordered:
            raw = entry.get("positions")
            if raw is None:
                raise FormatError(f"ordered strategy misses positions for {s.as_label().render()!r}")
            positions[s] = {v: int(k) for v, k in raw.items()}
    if ordered:
        return PiExecStrategy(times, positions)
    return ExecStrategy(times)


def load_strategy(path: str, g: Cstn, ordered: bool) -> ExecStrategy | PiExecStrategy:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"{path}: {exc}") from None
    return strategy_from_doc(doc, g, ordered)


def dump_strategy(g: Cstn, sigma: ExecStrategy | PiExecStrategy, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(strategy_to_doc(g, sigma), fh, indent=2)
        fh.write("\n")


# -- reports ------------------------------------------------------------------

@dataclass
class Report:
    property: str
    verdict: str  # yes | no | invalid
    parameters: dict[str, Any] = field(default_factory=dict)
    strategy: dict | None = None
    witnesses: list[dict] = field(default_factory=list)
    seconds: float = 0.0

    def to_doc(self) -> dict:
        return {
            "property": self.property,
            "verdict": self.verdict,
            "parameters": self.parameters,
            "strategy": self.strategy,
            "witnesses": self.witnesses,
            "timing": {"seconds": round(self.seconds, 6)},
        }

    def to_text(self) -> str:
        lines = [f"{self.property}: {self.verdict}"]
        for k, v in self.parameters.items():
            lines.append(f"  {k} = {v}")
        for w in self.witnesses:
            lines.append(f"  witness[{w.get('kind', '?')}]: {w.get('message', '')}")
        if self.strategy is not None:
            lines.append("  strategy:")
            for key, entry in self.strategy.items():
                lines.append(f"    {key or 'λ'}: {json.dumps(entry)}")
        lines.append(f"  time: {self.seconds:.3f}s")
        return "\n".join(lines)


def witnesses_from_report(report: ValidationReport) -> list[dict]:
    return [
        {"kind": v.kind, "message": v.message, "details": dict(v.details)}
        for v in report.violations
    ]
