"""Exact possible-worlds semantics for domain descriptions.

The model of a domain assigns each well-behaved world a weight: the
narrative evaluation of the world times the summed evaluations of its
traces.  ``enumerate_worlds`` materialises that model exactly (weights
are Fractions and sum to 1); ``check_world`` is an independent
brute-force judge of the three well-behavedness conditions, used as an
oracle against the enumerator; the remaining operations (marginals,
conditionals, transition functions, restriction, sampling) are defined
on top.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Mapping

from .core import (
    ConcurrentActivation,
    ConditionZero,
    DomainSignature,
    FALSE,
    IFormula,
    Outcome,
    RangeError,
    TRUE,
    eval_formula,
    instants_of,
    outcomes_weight,
    satisfies,
    update,
)
from .syntax import CProp, DomainDescription, HProposition


@dataclass(frozen=True)
class FiniteWorld:
    """A world over the finite window: one total state per instant."""

    signature: DomainSignature
    states: tuple[Mapping[str, str], ...]

    def satisfies(self, phi: IFormula) -> bool:
        return satisfies(self.states, phi)

    def fluent_state(self, instant: int) -> dict[str, str]:
        return self.signature.fluent_part(self.states[instant])

    def key(self):
        """Canonical hashable form of the state sequence."""
        return tuple(tuple(sorted(s.items())) for s in self.states)


@dataclass(frozen=True)
class Trace:
    """An initial choice plus one effect choice per occurrence instant."""

    initial: Outcome
    effects: Mapping[int, Outcome]


def trace_eval(tr: Trace) -> Fraction:
    """Evaluation of a trace: the product of its chosen weights."""
    result = tr.initial.weight
    for o in tr.effects.values():
        result *= o.weight
    return result


@dataclass(frozen=True)
class WeightedWorld:
    world: FiniteWorld
    weight: Fraction
    traces: tuple[Trace, ...]


@dataclass(frozen=True)
class WorldReport:
    """Independent verdicts on the three well-behavedness conditions."""

    cwa: bool
    initial: bool
    justified: bool
    traces: tuple[Trace, ...]

    def well_behaved(self) -> bool:
        return self.cwa and self.initial and self.justified


@dataclass(frozen=True)
class TransitionEdge:
    source: Mapping[str, str]  # total fluent state
    actions: tuple[str, ...]  # actions true in the source state
    target: Mapping[str, str]
    weight: Fraction


# ---------------------------------------------------------------------------
# Activation and per-world evaluations


def activated_cprop(dd: DomainDescription, state: Mapping[str, str],
                    instant: int | None = None) -> CProp | None:
    """The unique causal rule whose body the state satisfies, if any.

    Raises ConcurrentActivation when two or more bodies hold: the
    semantics has no meaning for simultaneous activations.
    """
    found = None
    for c in dd.cprops:
        if eval_formula(state, c.body):
            if found is not None:
                raise ConcurrentActivation(state, instant)
            found = c
    return found


def narrative_eval(dd: DomainDescription, world: FiniteWorld) -> Fraction:
    """Product over occurrence statements of P if performed in the world,
    else 1-P; 1 for the empty narrative."""
    result = Fraction(1)
    for p in dd.pprops:
        if world.states[p.instant][p.action] == TRUE:
            result *= p.prob
        else:
            result *= 1 - p.prob
    return result


# ---------------------------------------------------------------------------
# Enumeration


def enumerate_worlds(dd: DomainDescription) -> list[WeightedWorld]:
    """All worlds of non-zero weight, with exact weights and traces.

    Branches over (a) occur/not-occur for every occurrence statement
    with probability below 1 (probability-1 occurrences are forced, all
    other action atoms false, per the closed world assumption), (b) the
    initial choice, and (c) the activated rule's outcome at every
    occurrence instant, simulating forward so the fluent state changes
    only by chosen outcomes.  Leaves reaching the same world are grouped
    into its trace set.  The returned weights always sum to exactly 1.
    """
    sig = dd.signature
    uncertain = [p for p in dd.pprops if p.prob != 1]
    forced = [(p.action, p.instant) for p in dd.pprops if p.prob == 1]
    groups: dict[tuple, list] = {}

    for bits in itertools.product((True, False), repeat=len(uncertain)):
        occurring = set(forced)
        eps = Fraction(1)
        for p, occurs in zip(uncertain, bits):
            if occurs:
                occurring.add((p.action, p.instant))
                eps *= p.prob
            else:
                eps *= 1 - p.prob
        action_rows = [
            {a: (TRUE if (a, i) in occurring else FALSE) for a in sig.actions}
            for i in sig.instants
        ]
        for ic in dd.iprop.head:
            first = {**ic.effect, **action_rows[0]}
            for states, chosen in _simulate(dd, action_rows, first):
                world = FiniteWorld(sig, states)
                entry = groups.setdefault(world.key(), [world, eps, []])
                entry[2].append(Trace(ic, dict(chosen)))

    result = []
    for world, eps, traces in groups.values():
        weight = eps * sum((trace_eval(t) for t in traces), Fraction(0))
        result.append(WeightedWorld(world, weight, tuple(traces)))
    return result


def _simulate(dd, action_rows, first):
    """Yield (states, chosen outcomes) for every effect-choice branch."""
    sig = dd.signature
    last = sig.maxinst

    def go(states, i, chosen):
        if i == last:
            yield tuple(states), tuple(chosen)
            return
        current = states[-1]
        c = activated_cprop(dd, current, instant=i)
        fluents = sig.fluent_part(current)
        if c is None:
            nxt = {**fluents, **action_rows[i + 1]}
            yield from go(states + [nxt], i + 1, chosen)
        else:
            for o in c.head:
                nxt = {**update(fluents, o.effect), **action_rows[i + 1]}
                yield from go(states + [nxt], i + 1, chosen + [(i, o)])

    yield from go([first], 0, [])


# ---------------------------------------------------------------------------
# Independent world checking (the oracle side)


def check_world(dd: DomainDescription, world: FiniteWorld) -> WorldReport:
    """Judge an arbitrary world directly against the three conditions.

    Deliberately ignorant of how enumerate_worlds builds worlds: the
    closed world assumption, initial condition and justified change are
    each checked from their definitions, the latter over every instant
    pair I < I', not only adjacent ones.
    """
    sig = dd.signature
    states = world.states

    licensed = {(p.action, p.instant) for p in dd.pprops}
    cwa = all(
        states[i][a] != TRUE or (a, i) in licensed
        for i in sig.instants for a in sig.actions
    ) and all(
        states[p.instant][p.action] == TRUE
        for p in dd.pprops if p.prob == 1
    )

    fluents = [sig.fluent_part(s) for s in states]
    matching = [ic for ic in dd.iprop.head if dict(ic.effect) == fluents[0]]
    initial = bool(matching)

    occ = []
    for i in sig.instants:
        c = activated_cprop(dd, states[i], instant=i)
        if c is not None:
            occ.append((i, c))
    occ_instants = [i for i, _ in occ]

    def choice_ok(chosen: dict[int, Outcome]) -> bool:
        # justified change over every pair: walking j upward accumulates
        # exactly the occurrences in [i, j) in instant order
        for i in range(len(states)):
            current = fluents[i]
            for j in range(i + 1, len(states)):
                if j - 1 in chosen:
                    current = update(current, chosen[j - 1].effect)
                if current != fluents[j]:
                    return False
        return True

    valid = []
    for combo in itertools.product(*(c.head for _, c in occ)):
        chosen = dict(zip(occ_instants, combo))
        if choice_ok(chosen):
            valid.append(chosen)
    justified = bool(valid)

    traces = ()
    if cwa and initial and justified:
        traces = tuple(Trace(matching[0], chosen) for chosen in valid)
    return WorldReport(cwa, initial, justified, traces)


# ---------------------------------------------------------------------------
# Queries


def _check_window(dd: DomainDescription, phi: IFormula) -> None:
    for i in instants_of(phi):
        if not 0 <= i <= dd.signature.maxinst:
            raise RangeError(
                f"instant {i} outside the window 0..{dd.signature.maxinst}")


def marginal(dd: DomainDescription, phi: IFormula) -> Fraction:
    """Probability of an instant-stamped formula: the summed weight of
    the enumerated worlds satisfying it."""
    _check_window(dd, phi)
    return sum((w.weight for w in enumerate_worlds(dd)
                if w.world.satisfies(phi)), Fraction(0))


def entails(dd: DomainDescription, h: HProposition) -> bool:
    """Exact test that the query's probability equals the stated one."""
    return marginal(dd, h.query) == h.prob


def conditional(dd: DomainDescription, phi: IFormula,
                psi: IFormula) -> Fraction:
    """P(phi | psi) = P(phi and psi) / P(psi); ConditionZero if P(psi)=0."""
    _check_window(dd, phi)
    _check_window(dd, psi)
    worlds = enumerate_worlds(dd)
    denominator = sum((w.weight for w in worlds
                       if w.world.satisfies(psi)), Fraction(0))
    if denominator == 0:
        raise ConditionZero("conditioning formula has probability 0")
    numerator = sum((w.weight for w in worlds
                     if w.world.satisfies(psi) and w.world.satisfies(phi)),
                    Fraction(0))
    return numerator / denominator


# ---------------------------------------------------------------------------
# Transition function


def tset(dd: DomainDescription, state: Mapping[str, str],
         target: Mapping[str, str]) -> list[Outcome]:
    """Outcomes of the activated rule that move ``state`` to ``target``.

    With no activated rule the only transition is staying put, with the
    unit outcome; anything else is impossible.
    """
    c = activated_cprop(dd, state)
    fluents = dd.signature.fluent_part(state)
    if c is not None:
        return [o for o in c.head if update(fluents, o.effect) == dict(target)]
    if fluents == dict(target):
        return [Outcome({}, Fraction(1))]
    return []


def transition(dd: DomainDescription, state: Mapping[str, str],
               target: Mapping[str, str]) -> Fraction:
    """One-step probability of reaching a fluent state, narrative aside."""
    return outcomes_weight(tset(dd, state, target))


def transition_graph(dd: DomainDescription) -> list[TransitionEdge]:
    """Non-trivial transition edges over all states.

    Includes every positive-probability transition out of a state that
    activates a rule, plus weight-1 self-loops for states of already
    included nodes where actions are attempted but nothing is activated.
    Trivial self-loops (no action attempted) are omitted, as are nodes
    only ever reached by them.
    """
    sig = dd.signature

    def fkey(fl):
        return tuple(sorted(fl.items()))

    edges = []
    nodes = set()
    idle = []
    for state in sig.total_states():
        acts = tuple(a for a in sig.actions if state[a] == TRUE)
        c = activated_cprop(dd, state)
        fluents = sig.fluent_part(state)
        if c is None:
            if acts:
                idle.append((fluents, acts))
            continue
        grouped: dict[tuple, list] = {}
        for o in c.head:
            tgt = update(fluents, o.effect)
            entry = grouped.setdefault(fkey(tgt), [tgt, Fraction(0)])
            entry[1] += o.weight
        for tgt, weight in grouped.values():
            edges.append(TransitionEdge(fluents, acts, tgt, weight))
            nodes.add(fkey(fluents))
            nodes.add(fkey(tgt))
    for fluents, acts in idle:
        if fkey(fluents) in nodes:
            edges.append(TransitionEdge(fluents, acts, fluents, Fraction(1)))
    return edges


# ---------------------------------------------------------------------------
# Restriction and indistinguishability


def restrict(dd: DomainDescription, mode: str,
             instant: int | None = None) -> DomainDescription:
    """Truncate the narrative: keep occurrences at instants ``<=``/``<``
    the given one, or none at all (mode ``empty``)."""
    if mode == "empty":
        keep = lambda p: False
    elif mode == "leq":
        keep = lambda p: p.instant <= instant
    elif mode == "lt":
        keep = lambda p: p.instant < instant
    else:
        raise ValueError(f"mode must be 'leq', 'lt' or 'empty', not {mode!r}")
    if mode != "empty" and instant is None:
        raise ValueError(f"mode {mode!r} needs an instant")
    return replace(dd, pprops=tuple(p for p in dd.pprops if keep(p)))


def indistinguishable_up_to(w: FiniteWorld, w2: FiniteWorld,
                            instant: int) -> bool:
    """Fluent states equal at every instant <= ``instant`` and action
    values equal at every instant strictly below it."""
    sig = w.signature
    for i in range(instant + 1):
        if w.fluent_state(i) != w2.fluent_state(i):
            return False
    for i in range(instant):
        if sig.action_part(w.states[i]) != sig.action_part(w2.states[i]):
            return False
    return True


# ---------------------------------------------------------------------------
# Sampling


def sample_world(dd: DomainDescription, seed: int) -> FiniteWorld:
    """Draw one world; well-behaved by construction, fixed per seed."""
    return _sample(dd, random.Random(seed))


def sample_frequency(dd: DomainDescription, phi: IFormula, count: int,
                     seed: int) -> Fraction:
    """Empirical frequency of ``phi`` over ``count`` sampled worlds."""
    if count <= 0:
        raise ValueError("sample count must be positive")
    _check_window(dd, phi)
    rng = random.Random(seed)
    hits = 0
    for _ in range(count):
        if _sample(dd, rng).satisfies(phi):
            hits += 1
    return Fraction(hits, count)


def _sample(dd: DomainDescription, rng: random.Random) -> FiniteWorld:
    sig = dd.signature
    occurring = set()
    for p in dd.pprops:
        if p.prob == 1 or rng.random() < p.prob:
            occurring.add((p.action, p.instant))

    def row(i):
        return {a: (TRUE if (a, i) in occurring else FALSE)
                for a in sig.actions}

    ic = _categorical(rng, dd.iprop.head)
    states = [{**ic.effect, **row(0)}]
    for i in range(sig.maxinst):
        c = activated_cprop(dd, states[-1], instant=i)
        fluents = sig.fluent_part(states[-1])
        if c is not None:
            fluents = update(fluents, _categorical(rng, c.head).effect)
        states.append({**fluents, **row(i + 1)})
    return FiniteWorld(sig, tuple(states))


def _categorical(rng: random.Random, outcomes: tuple[Outcome, ...]) -> Outcome:
    r = rng.random()
    acc = Fraction(0)
    for o in outcomes:
        acc += o.weight
        if r < acc:
            return o
    return outcomes[-1]
