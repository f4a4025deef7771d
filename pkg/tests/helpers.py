"""Shared test machinery: independent reference evaluators and seeded
random generators for domains, formulas and worlds.

The reference evaluators here are deliberately small re-derivations of
the definitions (truth tables, exhaustive world filtering) so the tests
can judge the package's implementations against something that does not
share their code paths.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from pec import (
    And,
    CProp,
    DomainDescription,
    DomainSignature,
    FiniteWorld,
    ILit,
    IProp,
    Implies,
    Lit,
    Not,
    Or,
    Outcome,
    PProp,
    TRUE,
    VProp,
    parse_domain,
    render,
)


# ---------------------------------------------------------------------------
# Reference evaluators


def table_eval(phi, row):
    """Evaluate a formula under a plain literal->bool assignment."""
    if isinstance(phi, (Lit, ILit)):
        return row[phi]
    if isinstance(phi, Not):
        return not table_eval(phi.arg, row)
    if isinstance(phi, And):
        return table_eval(phi.left, row) and table_eval(phi.right, row)
    if isinstance(phi, Or):
        return table_eval(phi.left, row) or table_eval(phi.right, row)
    return (not table_eval(phi.left, row)) or table_eval(phi.right, row)


def table_atoms(phi, acc=None):
    acc = [] if acc is None else acc
    if isinstance(phi, (Lit, ILit)):
        if phi not in acc:
            acc.append(phi)
    elif isinstance(phi, Not):
        table_atoms(phi.arg, acc)
    else:
        table_atoms(phi.left, acc)
        table_atoms(phi.right, acc)
    return acc


def table_entails(theta, theta_prime):
    """Truth-table entailment over literals-as-atoms."""
    atoms = table_atoms(theta_prime, table_atoms(theta))
    for bits in itertools.product((False, True), repeat=len(atoms)):
        row = dict(zip(atoms, bits))
        if table_eval(theta, row) and not table_eval(theta_prime, row):
            return False
    return True


def all_worlds(sig: DomainSignature):
    """Every world over the window: all state sequences, exhaustively."""
    states = [dict(zip(sig.symbols, combo))
              for combo in itertools.product(*(sig.values_of(x)
                                               for x in sig.symbols))]
    for seq in itertools.product(states, repeat=sig.maxinst + 1):
        yield FiniteWorld(sig, tuple(seq))


def canonical_trace(tr):
    """Hashable, order-insensitive form of a trace for set comparison."""
    return (
        tuple(sorted(tr.initial.effect.items())),
        tr.initial.weight,
        tuple(sorted(
            (i, tuple(sorted(o.effect.items())), o.weight)
            for i, o in tr.effects.items())),
    )


# ---------------------------------------------------------------------------
# Random generation


def random_weights(rng: random.Random, k: int) -> list[Fraction]:
    numerators = [rng.randint(1, 9) for _ in range(k)]
    total = sum(numerators)
    return [Fraction(n, total) for n in numerators]


def random_partial_states(rng, fluents, vals, count):
    """``count`` distinct partial fluent states (possibly one empty)."""
    found = []
    for _ in range(200):
        if len(found) == count:
            break
        partial = {f: rng.choice(vals[f]) for f in fluents
                   if rng.random() < 0.6}
        if partial not in found:
            found.append(partial)
    return found


def random_domain(rng: random.Random, *, max_fluents=3, max_values=3,
                  max_actions=2, max_maxinst=4, max_cprops=2,
                  max_pprops=3, max_outcomes=3) -> DomainDescription:
    """A random valid domain description within the given bounds.

    Causal rule bodies are of the shape ``A & F1=v`` with pairwise
    distinct values of the same fluent, which both satisfies the
    pairwise non-entailment condition and guarantees no state ever
    activates two rules at once.
    """
    fluents = tuple(f"F{i}" for i in range(1, rng.randint(1, max_fluents) + 1))
    vals = {f: tuple(f"V{i}" for i in range(1, rng.randint(2, max_values) + 1))
            for f in fluents}
    actions = tuple(f"A{i}" for i in range(1, rng.randint(0, max_actions) + 1))
    maxinst = rng.randint(1, max_maxinst)
    signature = DomainSignature(fluents, actions, vals, maxinst)

    totals = [dict(zip(fluents, combo))
              for combo in itertools.product(*(vals[f] for f in fluents))]
    k = rng.randint(1, min(3, len(totals)))
    initial = tuple(Outcome(eff, w) for eff, w in
                    zip(rng.sample(totals, k), random_weights(rng, k)))
    iprop = IProp(initial)

    cprops = []
    if actions:
        guard = fluents[0]
        n_rules = rng.randint(0, min(max_cprops, len(vals[guard])))
        for guard_value in rng.sample(vals[guard], n_rules):
            body = And(Lit(rng.choice(actions), TRUE), Lit(guard, guard_value))
            n_out = rng.randint(1, max_outcomes)
            effects = random_partial_states(rng, fluents, vals, n_out)
            weights = random_weights(rng, len(effects))
            cprops.append(CProp(body, tuple(
                Outcome(e, w) for e, w in zip(effects, weights))))

    pprops = []
    if actions:
        pairs = [(a, i) for a in actions for i in range(maxinst)]
        for action, instant in rng.sample(
                pairs, rng.randint(0, min(max_pprops, len(pairs)))):
            prob = rng.choice([Fraction(1), Fraction(1, 2), Fraction(1, 4),
                               Fraction(3, 4), Fraction(rng.randint(1, 9), 10)])
            pprops.append(PProp(action, instant, prob))

    built = DomainDescription(
        signature,
        tuple(VProp(f, vals[f]) for f in fluents),
        tuple(cprops),
        tuple(pprops),
        iprop,
    )
    # round through the concrete syntax: proves the domain is valid and
    # representable, and returns the parsed twin
    return parse_domain(render(built))


def micro_domain(rng: random.Random) -> DomainDescription:
    """Small enough for exhaustive world enumeration."""
    return random_domain(rng, max_fluents=2, max_values=2, max_actions=1,
                         max_maxinst=3, max_cprops=2, max_pprops=2,
                         max_outcomes=3)


def random_formula(rng: random.Random, sig: DomainSignature, depth=3):
    if depth == 0 or rng.random() < 0.4:
        subject = rng.choice(sig.symbols)
        return Lit(subject, rng.choice(sig.values_of(subject)))
    kind = rng.randrange(4)
    if kind == 0:
        return Not(random_formula(rng, sig, depth - 1))
    node = (And, Or, Implies)[kind - 1]
    return node(random_formula(rng, sig, depth - 1),
                random_formula(rng, sig, depth - 1))


def random_iformula(rng: random.Random, sig: DomainSignature, depth=3):
    if depth == 0 or rng.random() < 0.4:
        subject = rng.choice(sig.symbols)
        return ILit(subject, rng.choice(sig.values_of(subject)),
                    rng.randint(0, sig.maxinst))
    kind = rng.randrange(4)
    if kind == 0:
        return Not(random_iformula(rng, sig, depth - 1))
    node = (And, Or, Implies)[kind - 1]
    return node(random_iformula(rng, sig, depth - 1),
                random_iformula(rng, sig, depth - 1))
