"""Branching trees of self-reducible counting machines.

A ``SelfReducibleInstance`` is a deterministic state machine that either
halts, steps to a single successor, or splits into two successors, both of
which are known to lead to at least one solution.  The number of solutions
of the instance is recovered as the node count of its *branching tree*:
the tree whose nodes are the split points, addressed by the bitstring of
split choices taken to reach them.

To make node count equal solution count exactly, the machine is wrapped
with one synthetic final split appended at the end of the rightmost run
(the run that never takes a 0 at any split; a split-free run counts as
rightmost).  A wrapped machine with f solutions then has f tree nodes and
f+1 maximal runs.

Replays start from the initial state on every oracle call, keeping the
oracle pure; an optional memo layer keyed by node path can be enabled
where the caller guarantees per-worker use.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable

from .errors import MalformedInstanceError, NotInTreeError
from .trees import BranchingTree, NodePath


@dataclass(frozen=True)
class Halt:
    """The run ends here."""


@dataclass(frozen=True)
class Deterministic:
    """The run continues to a single successor state."""

    state: Any


@dataclass(frozen=True)
class Branch:
    """The run splits; both successors lead to at least one solution."""

    if_zero: Any
    if_one: Any


StepOutcome = Halt | Deterministic | Branch

HALT = Halt()


@dataclass(frozen=True)
class SelfReducibleInstance:
    """Problem-specific machine: step/decision functions plus bounds.

    ``branch_bound`` is the maximum number of split choices on any run of
    the wrapped machine (the tree height bound).  ``step_budget`` bounds
    total ``step`` calls along one run; exceeding it raises instead of
    hanging.  ``decision(initial)`` must be False exactly when the
    instance has no solutions.
    """

    initial: Any
    step: Callable[[Any], StepOutcome]
    decision: Callable[[Any], bool]
    branch_bound: int
    step_budget: int
    label: str = ""


# Sentinel state for the two runs spawned by the synthetic final split.
_SYNTHETIC_LEAF = object()


@dataclass(frozen=True)
class _Cursor:
    """A point mid-run: machine state plus wrapper bookkeeping."""

    state: Any
    all_ones: bool
    steps_used: int
    branches_used: int


def _advance(instance: SelfReducibleInstance, cur: _Cursor, synthetic: bool):
    """Run until the wrapped machine splits or halts.

    Returns ``None`` at a run end, or ``(cursor_if_0, cursor_if_1)`` at a
    split.  The synthetic split fires when the underlying machine halts on
    an all-ones choice prefix (only for nonempty instances).
    """
    state = cur.state
    steps = cur.steps_used
    if state is _SYNTHETIC_LEAF:
        return None
    while True:
        if steps > instance.step_budget:
            raise MalformedInstanceError(
                f"run exceeded the declared step budget of {instance.step_budget}"
            )
        outcome = instance.step(state)
        steps += 1
        if isinstance(outcome, Deterministic):
            state = outcome.state
            continue
        if isinstance(outcome, Halt):
            if synthetic and cur.all_ones:
                if cur.branches_used + 1 > instance.branch_bound:
                    raise MalformedInstanceError(
                        f"run exceeded the declared branch bound of {instance.branch_bound}"
                    )
                return (
                    _Cursor(_SYNTHETIC_LEAF, False, steps, cur.branches_used + 1),
                    _Cursor(_SYNTHETIC_LEAF, True, steps, cur.branches_used + 1),
                )
            return None
        if isinstance(outcome, Branch):
            if cur.branches_used + 1 > instance.branch_bound:
                raise MalformedInstanceError(
                    f"run exceeded the declared branch bound of {instance.branch_bound}"
                )
            return (
                _Cursor(outcome.if_zero, False, steps, cur.branches_used + 1),
                _Cursor(outcome.if_one, cur.all_ones, steps, cur.branches_used + 1),
            )
        raise MalformedInstanceError(f"step returned {outcome!r}, not a StepOutcome")


class InstanceTree(BranchingTree):
    """Branching tree of a wrapped machine, given by replay.

    Node count equals the instance's solution count; height is declared as
    the instance's branch bound.
    """

    def __init__(self, instance: SelfReducibleInstance, memoize: bool = False):
        self.instance = instance
        self.height = instance.branch_bound
        self._nonempty = bool(instance.decision(instance.initial))
        self._memo: dict[NodePath, tuple[_Cursor, _Cursor]] | None = {} if memoize else None

    @property
    def is_empty(self) -> bool:
        return not self._nonempty

    def _split_at(self, node: NodePath) -> tuple[_Cursor, _Cursor]:
        """Child cursors of the split point addressed by ``node``."""
        if self._memo is not None:
            hit = self._memo.get(node)
            if hit is not None:
                return hit
            if node:
                parent_pair = self._split_at(node[:-1])
                pair = _advance(self.instance, parent_pair[node[-1]], synthetic=True)
                if pair is None:
                    raise NotInTreeError(f"node {node!r} is not in the branching tree")
                self._memo[node] = pair
                return pair
        cur = _Cursor(self.instance.initial, True, 0, 0)
        pair = _advance(self.instance, cur, synthetic=True)
        if pair is None:
            raise NotInTreeError("the branching tree is empty")
        for depth, bit in enumerate(node):
            pair = _advance(self.instance, pair[bit], synthetic=True)
            if pair is None:
                raise NotInTreeError(f"node {node[: depth + 1]!r} is not in the branching tree")
        if self._memo is not None:
            self._memo[node] = pair
        return pair

    def children(self, node: NodePath) -> tuple[NodePath, ...]:
        if self.is_empty:
            raise NotInTreeError("the branching tree is empty")
        pair = self._split_at(tuple(node))
        out = []
        for b in (0, 1):
            if _advance(self.instance, pair[b], synthetic=True) is not None:
                out.append(tuple(node) + (b,))
        return tuple(out)

    def __contains__(self, node: NodePath) -> bool:
        if self.is_empty:
            return False
        try:
            self._split_at(tuple(node))
            return True
        except NotInTreeError:
            return False


def build_branching_tree(instance: SelfReducibleInstance, memoize: bool = False) -> InstanceTree:
    """Branching tree with node count equal to the instance's value.

    For a zero-valued instance the returned tree is empty and no machine
    run is ever replayed.
    """
    return InstanceTree(instance, memoize=memoize)


def children_in_tree(instance: SelfReducibleInstance, node: NodePath) -> tuple[NodePath, ...]:
    """Children oracle as a free function over the bare instance."""
    return InstanceTree(instance).children(node)
