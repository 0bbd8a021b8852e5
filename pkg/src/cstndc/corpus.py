"""Built-in reference networks and strategies.

Two small networks separate the three consistency notions. The "box" network
races three observations inside a unit window so that a strategy with zero
reaction time exists but no observation can come first in every scenario:
it has a 0-reaction strategy yet is neither dynamically consistent nor
ordered-consistent. The "pi" network schedules an event on the observation
instant itself, which only an ordered strategy can justify: it is
ordered-consistent but not dynamically consistent.
"""

from __future__ import annotations

from .labels import Label, Scenario, all_scenarios
from .network import Cstn, LabelledConstraint
from .strategy import ExecStrategy

_L = Label.parse


def _c(u: str, v: str, w: int, label: str = "") -> LabelledConstraint:
    return LabelledConstraint(u=u, v=v, w=w, ell=_L(label))


def gamma_box() -> Cstn:
    """Three racing observations in a unit window; 0-reaction YES, DC/ordered NO."""
    return Cstn(
        nodes=("bot", "top", "A", "B", "C"),
        letters=("a", "b", "c"),
        node_labels={},
        observers={"a": "A", "b": "B", "c": "C"},
        constraints=(
            _c("bot", "top", 1),
            _c("top", "bot", -1),
            _c("A", "top", 0, "b & !c"),
            _c("B", "top", 0, "a & c"),
            _c("C", "top", 0, "!a & !b"),
            _c("A", "bot", 0),
            _c("bot", "A", 0, "!b"),
            _c("bot", "A", 0, "c"),
            _c("B", "bot", 0),
            _c("bot", "B", 0, "!a"),
            _c("bot", "B", 0, "!c"),
            _c("C", "bot", 0),
            _c("bot", "C", 0, "a"),
            _c("bot", "C", 0, "b"),
        ),
    )


def gamma_pi() -> Cstn:
    """One observation with a same-instant reaction; ordered YES, DC NO."""
    return Cstn(
        nodes=("Op", "X", "top"),
        letters=("p",),
        node_labels={},
        observers={"p": "Op"},
        constraints=(
            _c("Op", "top", 1),
            _c("top", "Op", -1),
            _c("Op", "X", 0, "p"),
            _c("X", "top", 0, "!p"),
        ),
    )


def single_node() -> Cstn:
    """The trivial network: one event, no letters, no constraints."""
    return Cstn(
        nodes=("v0",),
        letters=(),
        node_labels={},
        observers={},
        constraints=(),
    )


def sigma_box_strategy() -> ExecStrategy:
    """The unique viable strategy shape for the box network.

    Each observation runs at 0 except the one its scenario pushes to the top
    of the window; zero reaction time suffices because every scenario pair
    shares some observation run at 0 whose letter separates them.
    """
    schedules: dict[Scenario, dict[str, int]] = {}
    for s in all_scenarios(("a", "b", "c")):
        a, b, c = s.value("a"), s.value("b"), s.value("c")
        schedules[s] = {
            "bot": 0,
            "top": 1,
            "A": 1 if (b and not c) else 0,
            "B": 1 if (a and c) else 0,
            "C": 1 if (not a and not b) else 0,
        }
    return ExecStrategy(schedules)
