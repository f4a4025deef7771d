"""Core vocabulary for probabilistic event calculus domains.

Defines the domain signature (fluents, actions, value sets, the finite
instant window), literals and formulas over them, states and partial
fluent states, weighted outcomes, and the small algebra everything else
is built on: state update, formula evaluation, satisfaction of
instant-stamped formulas, and propositional (Herbrand) entailment.

States are plain ``dict[str, str]`` mappings from symbol to value;
partial fluent states are the same with only some fluents present.
Probabilities are exact ``fractions.Fraction`` values throughout.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence, Union

TRUE = "true"
FALSE = "false"
BOOLEAN_VALUES = (TRUE, FALSE)


class PecError(Exception):
    """Base class for all errors raised by this package."""


class SignatureError(PecError):
    """A symbol or value does not fit the domain signature in use."""


class RangeError(PecError):
    """An instant lies outside the domain's window {0..maxinst}."""


class ConcurrentActivation(PecError):
    """Two causal rule bodies hold in the same state.

    The semantics presumes at most one rule is activated per state; this
    error carries the offending state (and instant, when known) instead
    of silently picking a winner.
    """

    def __init__(self, state: Mapping[str, str], instant: int | None = None):
        self.state = dict(state)
        self.instant = instant
        where = f" at instant {instant}" if instant is not None else ""
        super().__init__(
            f"more than one causal rule is activated{where} in state "
            + format_state(state)
        )


class ConditionZero(PecError):
    """Conditioning event has probability zero."""


def format_state(state: Mapping[str, str]) -> str:
    inner = ", ".join(f"{k}={v}" for k, v in sorted(state.items()))
    return "{" + inner + "}"


# ---------------------------------------------------------------------------
# Signature


@dataclass(frozen=True)
class DomainSignature:
    """The vocabulary a domain is written in.

    ``vals`` maps each fluent to its non-empty value tuple; actions are
    implicitly boolean (``true``/``false``).  Instants are the integers
    ``0..maxinst`` with the usual order and least element 0.
    """

    fluents: tuple[str, ...]
    actions: tuple[str, ...]
    vals: Mapping[str, tuple[str, ...]]
    maxinst: int

    def __post_init__(self):
        if not self.fluents:
            raise SignatureError("a signature needs at least one fluent")
        overlap = set(self.fluents) & set(self.actions)
        if overlap:
            raise SignatureError(f"fluents and actions overlap: {sorted(overlap)}")
        for f in self.fluents:
            if not self.vals.get(f):
                raise SignatureError(f"fluent {f} has no declared values")
        if self.maxinst < 1:
            raise SignatureError("maxinst must be at least 1")

    @property
    def instants(self) -> range:
        return range(self.maxinst + 1)

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.fluents + self.actions

    def values_of(self, subject: str) -> tuple[str, ...]:
        if subject in self.vals:
            return self.vals[subject]
        if subject in self.actions:
            return BOOLEAN_VALUES
        raise SignatureError(f"unknown symbol {subject!r}")

    def fluent_part(self, state: Mapping[str, str]) -> dict[str, str]:
        """Restriction of a state to its fluent literals."""
        return {f: state[f] for f in self.fluents}

    def action_part(self, state: Mapping[str, str]) -> dict[str, str]:
        return {a: state[a] for a in self.actions}

    def total_fluent_states(self) -> Iterable[dict[str, str]]:
        """All total fluent states, in declared value order."""
        for combo in itertools.product(*(self.vals[f] for f in self.fluents)):
            yield dict(zip(self.fluents, combo))

    def total_states(self) -> Iterable[dict[str, str]]:
        """All total states (fluents and actions), in declared order."""
        names = self.symbols
        domains = [self.values_of(x) for x in names]
        for combo in itertools.product(*domains):
            yield dict(zip(names, combo))


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Lit:
    """A literal ``subject=value`` over a fluent or action."""

    subject: str
    value: str


@dataclass(frozen=True)
class ILit:
    """An instant-stamped literal ``[subject=value]@instant``."""

    subject: str
    value: str
    instant: int


@dataclass(frozen=True)
class Not:
    arg: "Formula | IFormula"


@dataclass(frozen=True)
class And:
    left: "Formula | IFormula"
    right: "Formula | IFormula"


@dataclass(frozen=True)
class Or:
    left: "Formula | IFormula"
    right: "Formula | IFormula"


@dataclass(frozen=True)
class Implies:
    left: "Formula | IFormula"
    right: "Formula | IFormula"


Formula = Union[Lit, Not, And, Or, Implies]
IFormula = Union[ILit, Not, And, Or, Implies]

def _eval(phi, leaf: Callable) -> bool:
    if isinstance(phi, Not):
        return not _eval(phi.arg, leaf)
    if isinstance(phi, And):
        return _eval(phi.left, leaf) and _eval(phi.right, leaf)
    if isinstance(phi, Or):
        return _eval(phi.left, leaf) or _eval(phi.right, leaf)
    if isinstance(phi, Implies):
        return (not _eval(phi.left, leaf)) or _eval(phi.right, leaf)
    return leaf(phi)


def _leaves(phi) -> list:
    """Leaf literals of a formula tree, left to right, duplicates kept."""
    if isinstance(phi, Not):
        return _leaves(phi.arg)
    if isinstance(phi, (And, Or, Implies)):
        return _leaves(phi.left) + _leaves(phi.right)
    return [phi]


def literals_of(phi: Formula) -> list[Lit]:
    """Distinct literals mentioned by a formula, in first-seen order."""
    seen: dict[Lit, None] = {}
    for leaf in _leaves(phi):
        seen.setdefault(leaf, None)
    return list(seen)


def instants_of(phi: IFormula) -> set[int]:
    return {leaf.instant for leaf in _leaves(phi)}


def at_instant(theta: Formula, instant: int) -> IFormula:
    """Stamp every literal of ``theta`` with ``instant`` (the [theta]@I form)."""
    if isinstance(theta, Lit):
        return ILit(theta.subject, theta.value, instant)
    if isinstance(theta, Not):
        return Not(at_instant(theta.arg, instant))
    if isinstance(theta, (And, Or, Implies)):
        return type(theta)(
            at_instant(theta.left, instant), at_instant(theta.right, instant)
        )
    raise TypeError(f"not a formula node: {theta!r}")


def eval_formula(state: Mapping[str, str], phi: Formula) -> bool:
    """Evaluate ``phi`` under the total valuation a state induces.

    A literal ``X=V`` is true iff the state maps ``X`` to ``V``; in
    particular ``not X=V`` is true whenever the state assigns ``X`` any
    other value.
    """

    def leaf(lit: Lit) -> bool:
        try:
            return state[lit.subject] == lit.value
        except KeyError:
            raise SignatureError(f"state does not assign {lit.subject!r}") from None

    return _eval(phi, leaf)


def satisfies(states: Sequence[Mapping[str, str]], phi: IFormula) -> bool:
    """Satisfaction of an i-formula by a finite world.

    ``states`` is the world's state sequence indexed by instant.  An
    i-literal ``[L]@I`` holds iff ``L`` is in the state at instant ``I``;
    connectives are structural.
    """

    def leaf(il: ILit) -> bool:
        if not 0 <= il.instant < len(states):
            raise RangeError(
                f"instant {il.instant} outside the window 0..{len(states) - 1}"
            )
        state = states[il.instant]
        try:
            return state[il.subject] == il.value
        except KeyError:
            raise SignatureError(f"state does not assign {il.subject!r}") from None

    return _eval(phi, leaf)


def herbrand_entails(theta: Formula, theta_prime: Formula) -> bool:
    """Propositional entailment with literals taken as atoms.

    Value exclusivity is deliberately not assumed: ``F=V`` and ``F=V'``
    are independent propositions here, so e.g. their conjunction is
    satisfiable.  Decided by brute force over the mentioned literals.
    """
    atoms = literals_of(theta)
    for lit in literals_of(theta_prime):
        if lit not in atoms:
            atoms.append(lit)
    for bits in itertools.product((False, True), repeat=len(atoms)):
        row = dict(zip(atoms, bits))
        if _eval(theta, row.__getitem__) and not _eval(theta_prime, row.__getitem__):
            return False
    return True


# ---------------------------------------------------------------------------
# States and outcomes


def update(base: Mapping[str, str], delta: Mapping[str, str]) -> dict[str, str]:
    """Fluent state update: ``delta`` overrides, everything else persists.

    Left-associative chaining is just repeated application.  Raises
    SignatureError when ``delta`` mentions a fluent ``base`` does not
    carry (a sign of mixed signatures).
    """
    for name in delta:
        if name not in base:
            raise SignatureError(f"update mentions unknown fluent {name!r}")
    out = dict(base)
    out.update(delta)
    return out


def ensure_probability(value: Fraction, *, positive: bool = False) -> Fraction:
    """Validate a probability value; ``positive`` demands the (0,1] range."""
    if not isinstance(value, Fraction):
        value = Fraction(value)
    if value < 0 or value > 1:
        raise PecError(f"probability {value} outside [0,1]")
    if positive and value == 0:
        raise PecError("probability must be strictly positive")
    return value


@dataclass(frozen=True)
class Outcome:
    """A weighted effect alternative: a partial fluent state and its weight.

    Effect insertion order is preserved (it drives rendering and the
    generated program); equality ignores order.
    """

    effect: Mapping[str, str]
    weight: Fraction

    def __post_init__(self):
        ensure_probability(self.weight, positive=True)


def outcomes_weight(outcomes: Iterable[Outcome]) -> Fraction:
    """Weight of a set of outcomes: the sum of the members' weights."""
    return sum((o.weight for o in outcomes), Fraction(0))


def format_decimal(value: Fraction, digits: int = 6) -> str:
    """Render an exact rational as a decimal string.

    Rounds half-to-even at ``digits`` places using integer arithmetic
    only, so the printed value is the true rounding of the exact number.
    """
    if digits < 0:
        raise ValueError("digits must be non-negative")
    sign = "-" if value < 0 else ""
    p, q = abs(value.numerator), value.denominator
    scaled, rem = divmod(p * 10**digits, q)
    if 2 * rem > q or (2 * rem == q and scaled % 2 == 1):
        scaled += 1
    text = str(scaled).rjust(digits + 1, "0")
    if digits == 0:
        return sign + text
    return f"{sign}{text[:-digits]}.{text[-digits:]}"
