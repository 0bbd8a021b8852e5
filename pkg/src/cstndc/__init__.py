"""Dynamic-consistency checking for conditional simple temporal networks.

Decides consistency of labelled difference-constraint networks under three
execution models: a fixed planner reaction time (eps-DC), plain dynamic
consistency (DC), and instantaneous reactions ordered by per-scenario
observation positions (pi-DC). YES answers carry execution strategies that
are re-checked against exhaustive brute-force validators, and the ordered
check is backed by two independent procedures that can cross-validate each
other.
"""

from .labels import EMPTY_LABEL, Label, LabelError, Scenario, all_scenarios, label_logic, parse_label
from .network import (
    Cstn,
    LabelledConstraint,
    ScenarioNode,
    Stn,
    ValidationReport,
    Violation,
    difference_set,
    expand,
    present_nodes,
    present_observations,
    restrict,
    scenario_node_id,
    wd_check,
)
from .hytn import (
    Feasible,
    Hyperarc,
    Hytn,
    HytnStructureError,
    Inconsistent,
    SolveResult,
    solve_hytn,
    stn_consistency,
    stn_to_hytn,
)
from .strategy import (
    ExecStrategy,
    MalformedPositionsError,
    PiExecStrategy,
    SelfValidationError,
    StrategyDomainError,
    history,
    pi_history,
    validate_es,
    validate_pi_es,
)
from .epsdc import EpsHytnEncoding, build_eps_hytn, check_dc, check_eps_dc, epsilon_hat
from .reduction import RelaxedCstn, check_pi_dc, eta_is_valid, relax_cstn, round_to_pi_es, select_eta
from .pstree import (
    CapExceededError,
    IncoherentTreeError,
    PiHytnEncoding,
    PsTree,
    PsTreeStructureError,
    check_coherence,
    check_pi_dc_exhaustive,
    check_pi_dc_on_tree,
    construct_pi_hytn,
    enumerate_c_ps_trees,
    parse_ps_tree,
    walk,
)
from .corpus import gamma_box, gamma_pi, sigma_box_strategy, single_node
from .fileio import (
    FormatError,
    Report,
    dump_cstn,
    dump_strategy,
    load_cstn,
    load_hytn,
    load_strategy,
    strategy_from_doc,
    strategy_to_doc,
)
from .generate import random_cstn

__version__ = "0.1.0"
