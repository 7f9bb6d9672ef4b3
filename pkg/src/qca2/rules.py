"""Compilation of automaton configs into gate lists and their evolution.

One full update is two phases.  The interaction phase flips each cell's
controlled qubit according to the state qubits of its neighbors, using
controlled flips whose controls are always s-bits and whose targets are
always c-bits (so the flips commute and the s-qubits are untouched).  The
evaluation phase applies the same two-qubit unitary inside every cell.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .gates import (
    ControlledFlip,
    GateOp,
    LocalUnitary,
    apply_gate,
    compose_dense,
    is_unitary,
    standard_gate,
)
from .register import MAX_CELLS, RegisterLayout, basis_state, probabilities


class NeighborhoodRule(enum.Enum):
    """Which neighbors' s-qubits drive a cell's c-qubit flip."""

    RIGHT = "right"
    LEFT = "left"
    BOTH = "both"


class BoundaryCondition(enum.Enum):
    CONST_ZERO = "const0"
    CONST_ONE = "const1"
    CYCLIC = "cyclic"


class RecordMode(enum.Enum):
    PER_STEP = "step"
    PER_PHASE = "phase"


class EvaluationKind(enum.Enum):
    IDENTITY = "identity"
    HADAMARD_BOTH = "h_both"
    HADAMARD_S_THEN_CN = "h_s_then_cn"
    CUSTOM = "custom"


@dataclass(frozen=True)
class Evaluation:
    """Per-cell evaluation unitary; `matrix` only for the custom kind.

    A custom matrix acts on the ordered pair (s, c) with s the more
    significant index bit, matching the register convention (s sits at the
    higher bit position inside a cell).
    """

    kind: EvaluationKind
    matrix: np.ndarray | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        if self.kind is EvaluationKind.CUSTOM:
            if self.matrix is None:
                raise ValueError("custom evaluation requires a 4x4 matrix")
            m = np.asarray(self.matrix, dtype=np.complex128)
            if m.shape != (4, 4) or not is_unitary(m):
                raise ValueError("custom evaluation matrix must be 4x4 unitary within 1e-12")
            m.setflags(write=False)
            object.__setattr__(self, "matrix", m)
        elif self.matrix is not None:
            raise ValueError("matrix is only allowed for the custom kind")


IDENTITY_EVAL = Evaluation(EvaluationKind.IDENTITY)
H_BOTH_EVAL = Evaluation(EvaluationKind.HADAMARD_BOTH)
H_S_THEN_CN_EVAL = Evaluation(EvaluationKind.HADAMARD_S_THEN_CN)


@dataclass(frozen=True)
class QcaConfig:
    n_cells: int
    rule: NeighborhoodRule
    boundary: BoundaryCondition = BoundaryCondition.CONST_ZERO
    evaluation: Evaluation = H_BOTH_EVAL
    initial_index: int = 0
    n_steps: int = 0
    record: RecordMode = RecordMode.PER_STEP

    def __post_init__(self) -> None:
        if not 1 <= self.n_cells <= MAX_CELLS:
            raise ValueError(f"n_cells must be in 1..{MAX_CELLS}, got {self.n_cells}")
        if not 0 <= self.initial_index < 4**self.n_cells:
            raise ValueError(
                f"initial_index {self.initial_index} out of range for "
                f"{self.n_cells} cells ({4**self.n_cells} states)"
            )
        if self.n_steps < 0:
            raise ValueError("n_steps must be nonnegative")

    @property
    def layout(self) -> RegisterLayout:
        return RegisterLayout(self.n_cells)


@dataclass(frozen=True)
class CompiledRule:
    """Gate lists for one full update on a register of `n_qubits` qubits."""

    n_qubits: int
    interaction: tuple[GateOp, ...]
    evaluation: tuple[GateOp, ...]


def compile_interaction(config: QcaConfig) -> list[GateOp]:
    """Controlled-flip list realizing the interaction phase with boundaries.

    Constant boundaries pin the phantom neighbor's s-qubit to 0 or 1: a gate
    controlled only by a 0 is dropped, a control pinned to 1 disappears from
    the control set (degrading to fewer controls, possibly an unconditional
    flip).  A boundary s-qubit that would control a missing cell simply
    controls nothing.  Cyclic boundaries wrap indices modulo the cell count.
    """
    layout = config.layout
    n = config.n_cells
    cyclic = config.boundary is BoundaryCondition.CYCLIC
    const_one = config.boundary is BoundaryCondition.CONST_ONE
    gates: list[GateOp] = []

    if config.rule is NeighborhoodRule.RIGHT:
        # s_j controls c_{j+1}; under constant boundaries c_0 has a phantom
        # controller pinned to the boundary constant.
        if not cyclic and const_one:
            gates.append(ControlledFlip((), layout.c_bit(0)))
        for j in range(n):
            tgt = (j + 1) % n if cyclic else j + 1
            if tgt >= n:
                continue
            gates.append(ControlledFlip({layout.s_bit(j)}, layout.c_bit(tgt)))
    elif config.rule is NeighborhoodRule.LEFT:
        for j in range(n):
            tgt = (j - 1) % n if cyclic else j - 1
            if tgt < 0:
                continue
            gates.append(ControlledFlip({layout.s_bit(j)}, layout.c_bit(tgt)))
        if not cyclic and const_one:
            gates.append(ControlledFlip((), layout.c_bit(n - 1)))
    else:
        for j in range(n):
            controls: set[int] = set()
            dropped = False
            for nb in (j + 1, j - 1):
                if cyclic:
                    controls.add(layout.s_bit(nb % n))
                elif 0 <= nb < n:
                    controls.add(layout.s_bit(nb))
                elif not const_one:
                    dropped = True  # phantom control pinned to 0 never fires
            if not dropped:
                gates.append(ControlledFlip(controls, layout.c_bit(j)))
    return gates


_H = standard_gate("H")


def compile_evaluation(config: QcaConfig) -> list[GateOp]:
    """Per-cell evaluation gate list, cell groups in ascending cell order."""
    layout = config.layout
    gates: list[GateOp] = []
    for j in range(config.n_cells):
        s, c = layout.s_bit(j), layout.c_bit(j)
        kind = config.evaluation.kind
        if kind is EvaluationKind.IDENTITY:
            continue
        if kind is EvaluationKind.HADAMARD_BOTH:
            gates.append(LocalUnitary((s,), _H))
            gates.append(LocalUnitary((c,), _H))
        elif kind is EvaluationKind.HADAMARD_S_THEN_CN:
            gates.append(LocalUnitary((s,), _H))
            gates.append(ControlledFlip({s}, c))
        else:
            gates.append(LocalUnitary((c, s), config.evaluation.matrix))
    return gates


def compile_rule(config: QcaConfig) -> CompiledRule:
    return CompiledRule(
        n_qubits=config.layout.n_qubits,
        interaction=tuple(compile_interaction(config)),
        evaluation=tuple(compile_evaluation(config)),
    )


def build_dense_rule(config: QcaConfig) -> np.ndarray:
    """Dense full-update operator (evaluation after interaction)."""
    rule = compile_rule(config)
    n = rule.n_qubits
    return compose_dense(rule.interaction + rule.evaluation, n)


def build_dense_interaction(config: QcaConfig) -> np.ndarray:
    return compose_dense(tuple(compile_interaction(config)), config.layout.n_qubits)


def step(state: np.ndarray, rule: CompiledRule) -> np.ndarray:
    """Advance one full update: all interaction flips, then all evaluations."""
    if state.size != 1 << rule.n_qubits:
        raise ValueError(
            f"state has {state.size} amplitudes, rule expects {1 << rule.n_qubits}"
        )
    for gate in rule.interaction:
        state = apply_gate(state, gate)
    for gate in rule.evaluation:
        state = apply_gate(state, gate)
    return state


def evolve(config: QcaConfig) -> np.ndarray:
    """Probability matrix of the evolution: rows are basis states, columns
    recorded instants in temporal order, column 0 the initial state.

    PER_STEP records one column per full update; PER_PHASE records after the
    interaction phase and again after the evaluation phase of every update.
    """
    rule = compile_rule(config)
    state = basis_state(rule.n_qubits, config.initial_index)
    columns = [probabilities(state)]
    per_phase = config.record is RecordMode.PER_PHASE
    for _ in range(config.n_steps):
        for gate in rule.interaction:
            state = apply_gate(state, gate)
        if per_phase:
            columns.append(probabilities(state))
        for gate in rule.evaluation:
            state = apply_gate(state, gate)
        columns.append(probabilities(state))
    return np.column_stack(columns)


def run_gate_script(
    n_qubits: int,
    initial_index: int,
    script: Sequence[Sequence[GateOp]],
) -> np.ndarray:
    """Run an explicit per-timestep gate script, recording a probability
    column after each timestep (column 0 is the initial state)."""
    state = basis_state(n_qubits, initial_index)
    columns = [probabilities(state)]
    for timestep in script:
        for gate in timestep:
            state = apply_gate(state, gate)
        columns.append(probabilities(state))
    return np.column_stack(columns)
