"""Concrete textual grammar for probabilistic event calculus domains.

A domain file declares fluents with their value sets, actions, the
instant window, one initial distribution, causal rules and action
occurrences::

    % coin that lands heads or tails, tossed once
    maxinst 3
    fluent Coin takes-values {Heads, Tails}
    action Toss
    initially-one-of {({Coin=Heads}, 1)}
    Toss causes-one-of {({Coin=Heads}, 49/100), ({Coin=Tails}, 49/100)}
    Toss performed-at 1

Comments run from ``%`` to end of line.  Whitespace is insignificant.
Probabilities are fractions (``49/100``), decimals (``0.49``, converted
exactly) or ``1``.  Bare ``X`` / ``!X`` in formulas and effects
abbreviate ``X=true`` / ``X=false``.  A causal rule whose head weights
sum to ``s < 1`` and which has no explicit empty effect gets an implicit
``({}, 1-s)`` outcome; an explicit empty effect disables completion.

Queries are instant-stamped formulas such as
``[Coin=Heads]@2 & ![Coin=Tails]@3``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .core import (
    And,
    DomainSignature,
    Formula,
    IFormula,
    Implies,
    Lit,
    Not,
    Or,
    Outcome,
    PecError,
    TRUE,
    FALSE,
    at_instant,
    herbrand_entails,
)

# ---------------------------------------------------------------------------
# Errors and reports


class PecSyntaxError(PecError):
    """Lexical or grammatical error, with source position."""

    def __init__(self, message: str, line: int, col: int):
        self.line = line
        self.col = col
        super().__init__(f"line {line}, col {col}: {message}")


@dataclass(frozen=True)
class Issue:
    """One violated well-formedness condition, tied to a source location."""

    message: str
    line: int
    col: int
    condition: str | None = None

    def __str__(self) -> str:
        tag = f" (condition {self.condition})" if self.condition else ""
        return f"line {self.line}, col {self.col}: {self.message}{tag}"


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...]

    def ok(self) -> bool:
        return not self.issues

    def __str__(self) -> str:
        return "\n".join(str(i) for i in self.issues)


class DomainValidationError(PecError):
    """Raised by parse_domain when the text is not a valid domain."""

    def __init__(self, report: ValidationReport):
        self.report = report
        super().__init__(str(report))


# ---------------------------------------------------------------------------
# Propositions


@dataclass(frozen=True)
class VProp:
    fluent: str
    values: tuple[str, ...]
    loc: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class CProp:
    body: Formula
    head: tuple[Outcome, ...]
    loc: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class IProp:
    head: tuple[Outcome, ...]
    loc: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class PProp:
    action: str
    instant: int
    prob: Fraction
    loc: tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class HProposition:
    """A judgment that a query holds with a given probability."""

    query: IFormula
    prob: Fraction


@dataclass(frozen=True)
class DomainDescription:
    signature: DomainSignature
    vprops: tuple[VProp, ...]
    cprops: tuple[CProp, ...]
    pprops: tuple[PProp, ...]
    iprop: IProp

    def narrative(self) -> tuple[PProp, ...]:
        """All action occurrence statements, in declaration order."""
        return self.pprops


# ---------------------------------------------------------------------------
# Lexer

_TOKEN_RE = re.compile(
    r"""
      (?P<ws>[ \t\r\n]+)
    | (?P<comment>%[^\n]*)
    | (?P<kw>takes-values|initially-one-of|causes-one-of|performed-at|with-prob)
      (?![A-Za-z0-9_-])
    | (?P<id>[A-Za-z][A-Za-z0-9_]*)
    | (?P<dec>\d+\.\d+)
    | (?P<nat>\d+)
    | (?P<arrow>->)
    | (?P<punct>[{}(),=!&|@\[\]/])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Token:
    kind: str  # "id" | "nat" | "dec" | "eof" | keyword or punctuation text
    text: str
    line: int
    col: int


def _lex(text: str) -> list[_Token]:
    tokens = []
    pos, line, col = 0, 1, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PecSyntaxError(f"unexpected character {text[pos]!r}", line, col)
        group = m.lastgroup
        chunk = m.group()
        if group == "kw":
            tokens.append(_Token(chunk, chunk, line, col))
        elif group in ("arrow", "punct"):
            tokens.append(_Token(chunk, chunk, line, col))
        elif group in ("id", "nat", "dec"):
            tokens.append(_Token(group, chunk, line, col))
        # whitespace and comments are skipped
        newlines = chunk.count("\n")
        if newlines:
            line += newlines
            col = len(chunk) - chunk.rfind("\n")
        else:
            col += len(chunk)
        pos = m.end()
    tokens.append(_Token("eof", "", line, col))
    return tokens


# ---------------------------------------------------------------------------
# Raw parse tree (pre-validation)


@dataclass
class _RawOutcome:
    literals: list[tuple[str, str, tuple[int, int]]]  # subject, value, loc
    weight: Fraction
    loc: tuple[int, int]
    implicit: bool = False

    def effect(self) -> dict[str, str]:
        return {s: v for s, v, _ in self.literals}


@dataclass
class _RawStatement:
    kind: str  # "v" | "action" | "maxinst" | "i" | "c" | "p"
    loc: tuple[int, int]
    fluent: str = ""
    values: list[str] = field(default_factory=list)
    name: str = ""
    number: int = 0
    outcomes: list[_RawOutcome] = field(default_factory=list)
    body: Formula | None = None
    body_lits: list[tuple[Lit, tuple[int, int]]] = field(default_factory=list)
    action: str = ""
    instant: int = 0
    prob: Fraction = Fraction(1)


class _Parser:
    def __init__(self, text: str):
        self.tokens = _lex(text)
        self.pos = 0

    def peek(self, ahead: int = 0) -> _Token:
        i = min(self.pos + ahead, len(self.tokens) - 1)
        return self.tokens[i]

    def advance(self) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def expect(self, kind: str, what: str | None = None) -> _Token:
        tok = self.peek()
        if tok.kind != kind:
            want = what or f"{kind!r}"
            found = tok.text or "end of input"
            self.error(f"expected {want}, found {found!r}" if tok.text
                       else f"expected {want}, found end of input", tok)
        return self.advance()

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise PecSyntaxError(message, tok.line, tok.col)

    # -- statements --------------------------------------------------------

    def parse_statements(self) -> list[_RawStatement]:
        stmts = []
        while self.peek().kind != "eof":
            stmts.append(self.parse_statement())
        return stmts

    def parse_statement(self) -> _RawStatement:
        tok = self.peek()
        if tok.kind == "id" and tok.text == "fluent":
            return self._vprop()
        if tok.kind == "id" and tok.text == "action":
            self.advance()
            name = self.expect("id", "an action name")
            return _RawStatement("action", (tok.line, tok.col), name=name.text)
        if tok.kind == "id" and tok.text == "maxinst":
            self.advance()
            n = self.expect("nat", "an instant bound")
            return _RawStatement("maxinst", (tok.line, tok.col), number=int(n.text))
        if tok.kind == "initially-one-of":
            self.advance()
            return _RawStatement("i", (tok.line, tok.col), outcomes=self._outcomes())
        if tok.kind == "id" and self.peek(1).kind == "performed-at":
            return self._pprop()
        return self._cprop()

    def _vprop(self) -> _RawStatement:
        tok = self.advance()  # "fluent"
        name = self.expect("id", "a fluent name")
        self.expect("takes-values")
        self.expect("{")
        values = [self.expect("id", "a value name").text]
        while self.peek().kind == ",":
            self.advance()
            values.append(self.expect("id", "a value name").text)
        self.expect("}")
        return _RawStatement("v", (tok.line, tok.col), fluent=name.text, values=values)

    def _pprop(self) -> _RawStatement:
        name = self.advance()
        self.advance()  # performed-at
        instant = int(self.expect("nat", "an instant").text)
        prob = Fraction(1)
        if self.peek().kind == "with-prob":
            self.advance()
            prob = self._prob()
        return _RawStatement("p", (name.line, name.col), action=name.text,
                             instant=instant, prob=prob)

    def _cprop(self) -> _RawStatement:
        tok = self.peek()
        lits: list[tuple[Lit, tuple[int, int]]] = []
        body = self._formula(lits)
        self.expect("causes-one-of")
        outcomes = self._outcomes()
        stmt = _RawStatement("c", (tok.line, tok.col), body=body, outcomes=outcomes)
        stmt.body_lits = lits
        self._complete_head(stmt)
        return stmt

    @staticmethod
    def _complete_head(stmt: _RawStatement) -> None:
        # Implicit empty outcome: only when weights fall short of 1 and no
        # explicit empty effect is present.
        total = sum((o.weight for o in stmt.outcomes), Fraction(0))
        if total < 1 and all(o.literals for o in stmt.outcomes):
            stmt.outcomes.append(
                _RawOutcome([], 1 - total, stmt.loc, implicit=True))

    def _outcomes(self) -> list[_RawOutcome]:
        self.expect("{")
        outcomes = [self._outcome()]
        while self.peek().kind == ",":
            self.advance()
            outcomes.append(self._outcome())
        self.expect("}")
        return outcomes

    def _outcome(self) -> _RawOutcome:
        start = self.expect("(")
        self.expect("{")
        literals = []
        if self.peek().kind != "}":
            literals.append(self._effect_literal())
            while self.peek().kind == ",":
                self.advance()
                literals.append(self._effect_literal())
        self.expect("}")
        self.expect(",")
        weight = self._prob()
        self.expect(")")
        return _RawOutcome(literals, weight, (start.line, start.col))

    def _effect_literal(self) -> tuple[str, str, tuple[int, int]]:
        if self.peek().kind == "!":
            self.advance()
            name = self.expect("id", "a fluent name")
            return name.text, FALSE, (name.line, name.col)
        name = self.expect("id", "a fluent name")
        if self.peek().kind == "=":
            self.advance()
            value = self.expect("id", "a value name")
            return name.text, value.text, (name.line, name.col)
        return name.text, TRUE, (name.line, name.col)

    def _prob(self) -> Fraction:
        tok = self.peek()
        if tok.kind == "dec":
            self.advance()
            return Fraction(tok.text)
        if tok.kind == "nat":
            self.advance()
            if self.peek().kind == "/":
                self.advance()
                den = self.expect("nat", "a denominator")
                if int(den.text) == 0:
                    self.error("zero denominator", den)
                return Fraction(int(tok.text), int(den.text))
            return Fraction(int(tok.text))
        self.error("expected a probability")

    # -- formulas -----------------------------------------------------------
    # Precedence, loosest first: ->  |  &  !  atom.  -> is right-associative.

    def _formula(self, lits) -> Formula:
        left = self._or(lits)
        if self.peek().kind == "->":
            self.advance()
            return Implies(left, self._formula(lits))
        return left

    def _or(self, lits) -> Formula:
        left = self._and(lits)
        while self.peek().kind == "|":
            self.advance()
            left = Or(left, self._and(lits))
        return left

    def _and(self, lits) -> Formula:
        left = self._unary(lits)
        while self.peek().kind == "&":
            self.advance()
            left = And(left, self._unary(lits))
        return left

    def _unary(self, lits) -> Formula:
        tok = self.peek()
        if tok.kind == "!":
            self.advance()
            nxt = self.peek()
            if nxt.kind == "id" and self.peek(1).kind != "=":
                self.advance()
                lit = Lit(nxt.text, FALSE)
                lits.append((lit, (nxt.line, nxt.col)))
                return lit
            return Not(self._unary(lits))
        return self._atom(lits)

    def _atom(self, lits) -> Formula:
        tok = self.peek()
        if tok.kind == "(":
            self.advance()
            inner = self._formula(lits)
            self.expect(")")
            return inner
        if tok.kind == "id":
            self.advance()
            if self.peek().kind == "=":
                self.advance()
                value = self.expect("id", "a value name")
                lit = Lit(tok.text, value.text)
            else:
                lit = Lit(tok.text, TRUE)
            lits.append((lit, (tok.line, tok.col)))
            return lit
        self.error("expected a literal or '('")

    # -- queries ------------------------------------------------------------

    def parse_iformula(self) -> tuple[IFormula, list[tuple[Lit, int, tuple[int, int]]]]:
        lits: list[tuple[Lit, int, tuple[int, int]]] = []
        phi = self._iimplies(lits)
        return phi, lits

    def _iimplies(self, lits) -> IFormula:
        left = self._ior(lits)
        if self.peek().kind == "->":
            self.advance()
            return Implies(left, self._iimplies(lits))
        return left

    def _ior(self, lits) -> IFormula:
        left = self._iand(lits)
        while self.peek().kind == "|":
            self.advance()
            left = Or(left, self._iand(lits))
        return left

    def _iand(self, lits) -> IFormula:
        left = self._iunary(lits)
        while self.peek().kind == "&":
            self.advance()
            left = And(left, self._iunary(lits))
        return left

    def _iunary(self, lits) -> IFormula:
        if self.peek().kind == "!":
            self.advance()
            return Not(self._iunary(lits))
        return self._iatom(lits)

    def _iatom(self, lits) -> IFormula:
        tok = self.peek()
        if tok.kind == "(":
            self.advance()
            inner = self._iimplies(lits)
            self.expect(")")
            return inner
        if tok.kind == "[":
            self.advance()
            inner_lits: list[tuple[Lit, tuple[int, int]]] = []
            theta = self._formula(inner_lits)
            self.expect("]")
            self.expect("@")
            nat = self.expect("nat", "an instant")
            instant = int(nat.text)
            lits.extend((lit, instant, loc) for lit, loc in inner_lits)
            return at_instant(theta, instant)
        self.error("expected '[' or '('")


# ---------------------------------------------------------------------------
# Validation


def _check_effect_literals(raw: _RawOutcome, sig_vals: dict[str, list[str]],
                           actions: set[str], issues: list[Issue]) -> None:
    for subject, value, (line, col) in raw.literals:
        if subject in actions:
            issues.append(Issue(f"{subject} is an action, not a fluent; "
                                "effects may only mention fluents", line, col))
        elif subject not in sig_vals:
            issues.append(Issue(f"unknown symbol {subject}", line, col))
        elif value not in sig_vals[subject]:
            issues.append(Issue(
                f"{value} is not a possible value of {subject}", line, col))


def _validate_statements(stmts: list[_RawStatement]) -> ValidationReport:
    issues: list[Issue] = []

    maxinsts = [s for s in stmts if s.kind == "maxinst"]
    if not maxinsts:
        issues.append(Issue("missing maxinst statement", 1, 1))
    for extra in maxinsts[1:]:
        issues.append(Issue("duplicate maxinst statement", *extra.loc))
    maxinst = maxinsts[0].number if maxinsts else None
    if maxinst is not None and maxinst < 1:
        issues.append(Issue("maxinst must be at least 1", *maxinsts[0].loc))

    sig_vals: dict[str, list[str]] = {}
    actions: set[str] = set()
    for s in stmts:
        if s.kind == "v":
            if s.fluent in sig_vals:
                issues.append(Issue(
                    f"duplicate value declaration for fluent {s.fluent}",
                    *s.loc, condition="(iii)"))
                continue
            dupes = {v for v in s.values if s.values.count(v) > 1}
            for v in sorted(dupes):
                issues.append(Issue(
                    f"duplicate value {v} in declaration of {s.fluent}", *s.loc))
            sig_vals[s.fluent] = list(dict.fromkeys(s.values))
        elif s.kind == "action":
            if s.name in actions:
                issues.append(Issue(f"duplicate action declaration {s.name}", *s.loc))
            actions.add(s.name)
    both = sorted(set(sig_vals) & actions)
    for name in both:
        issues.append(Issue(f"{name} is declared as both fluent and action", 1, 1))
    if not sig_vals:
        issues.append(Issue("at least one fluent must be declared", 1, 1))

    def check_formula_lits(lits):
        for lit, (line, col) in lits:
            if lit.subject in actions:
                if lit.value not in (TRUE, FALSE):
                    issues.append(Issue(
                        f"{lit.value} is not a possible value of action "
                        f"{lit.subject}", line, col))
            elif lit.subject not in sig_vals:
                issues.append(Issue(f"unknown symbol {lit.subject}", line, col))
            elif lit.value not in sig_vals[lit.subject]:
                issues.append(Issue(
                    f"{lit.value} is not a possible value of {lit.subject}",
                    line, col))

    def check_weights(raw_outcomes, loc, what):
        for o in raw_outcomes:
            if not 0 < o.weight <= 1:
                issues.append(Issue(
                    f"outcome weight {o.weight} outside (0,1]", *o.loc))
        total = sum((o.weight for o in raw_outcomes), Fraction(0))
        if total != 1:
            issues.append(Issue(
                f"{what} weights sum to {total}, expected 1", *loc))
        effects = [o.effect() for o in raw_outcomes]
        for i, eff in enumerate(effects):
            if eff in effects[:i]:
                issues.append(Issue(
                    f"duplicate effect in {what}", *raw_outcomes[i].loc))

    iprops = [s for s in stmts if s.kind == "i"]
    if not iprops:
        issues.append(Issue("no i-proposition", 1, 1, condition="(ii)"))
    for extra in iprops[1:]:
        issues.append(Issue("more than one i-proposition", *extra.loc,
                            condition="(ii)"))
    for s in iprops:
        for o in s.outcomes:
            _check_effect_literals(o, sig_vals, actions, issues)
            missing = sorted(set(sig_vals) - set(o.effect()))
            if missing:
                issues.append(Issue(
                    "initial outcome must assign every fluent "
                    f"(missing {', '.join(missing)})", *o.loc))
        check_weights(s.outcomes, s.loc, "initially-one-of")

    cprops = [s for s in stmts if s.kind == "c"]
    for s in cprops:
        check_formula_lits(s.body_lits)
        for o in s.outcomes:
            _check_effect_literals(o, sig_vals, actions, issues)
        check_weights(s.outcomes, s.loc, "causes-one-of")
        if not any(herbrand_entails(s.body, Lit(a, TRUE)) for a in actions):
            issues.append(Issue(
                "causal rule body does not entail any action", *s.loc))
    for i, s in enumerate(cprops):
        for j, other in enumerate(cprops):
            if i != j and herbrand_entails(s.body, other.body):
                issues.append(Issue(
                    f"causal rule body entails the body of the rule at "
                    f"line {other.loc[0]}", *s.loc, condition="(i)"))

    seen_occurrences: dict[tuple[str, int], tuple[int, int]] = {}
    for s in stmts:
        if s.kind != "p":
            continue
        if s.action in sig_vals:
            issues.append(Issue(f"{s.action} is a fluent, not an action", *s.loc))
        elif s.action not in actions:
            issues.append(Issue(f"unknown action {s.action}", *s.loc))
        if maxinst is not None and s.instant >= maxinst:
            issues.append(Issue(
                f"occurrence instant {s.instant} must be below maxinst "
                f"{maxinst}", *s.loc))
        if not 0 < s.prob <= 1:
            issues.append(Issue(
                f"occurrence probability {s.prob} outside (0,1]", *s.loc))
        key = (s.action, s.instant)
        if key in seen_occurrences:
            issues.append(Issue(
                f"duplicate occurrence of {s.action} at instant {s.instant}",
                *s.loc, condition="(iv)"))
        else:
            seen_occurrences[key] = s.loc

    issues.sort(key=lambda i: (i.line, i.col, i.message))
    return ValidationReport(tuple(issues))


def _assemble(stmts: list[_RawStatement]) -> DomainDescription:
    fluents, vals, vprops = [], {}, []
    actions = []
    maxinst = 0
    iprop = None
    cprops, pprops = [], []
    for s in stmts:
        if s.kind == "v":
            fluents.append(s.fluent)
            vals[s.fluent] = tuple(s.values)
            vprops.append(VProp(s.fluent, tuple(s.values), s.loc))
        elif s.kind == "action":
            actions.append(s.name)
        elif s.kind == "maxinst":
            maxinst = s.number
        elif s.kind == "i":
            iprop = IProp(tuple(Outcome(o.effect(), o.weight)
                                for o in s.outcomes), s.loc)
        elif s.kind == "c":
            cprops.append(CProp(s.body, tuple(Outcome(o.effect(), o.weight)
                                              for o in s.outcomes), s.loc))
        elif s.kind == "p":
            pprops.append(PProp(s.action, s.instant, s.prob, s.loc))
    signature = DomainSignature(tuple(fluents), tuple(actions), vals, maxinst)
    return DomainDescription(signature, tuple(vprops), tuple(cprops),
                             tuple(pprops), iprop)


# ---------------------------------------------------------------------------
# Public entry points


def parse_domain(text: str) -> DomainDescription:
    """Parse and validate a domain description.

    Raises PecSyntaxError on lexical/grammatical problems and
    DomainValidationError (carrying the full report, not just the first
    problem) when the parsed statements violate a well-formedness
    condition.
    """
    stmts = _Parser(text).parse_statements()
    report = _validate_statements(stmts)
    if not report.ok():
        raise DomainValidationError(report)
    return _assemble(stmts)


def validate(text: str) -> ValidationReport:
    """Parse ``text`` and report every violated condition (empty = valid)."""
    stmts = _Parser(text).parse_statements()
    return _validate_statements(stmts)


def parse_query(text: str, signature: DomainSignature) -> IFormula:
    """Parse an instant-stamped query formula against a signature."""
    parser = _Parser(text)
    phi, lits = parser.parse_iformula()
    trailing = parser.peek()
    if trailing.kind != "eof":
        parser.error(f"unexpected input after query: {trailing.text!r}", trailing)
    for lit, instant, (line, col) in lits:
        if lit.subject not in signature.symbols:
            raise PecSyntaxError(f"unknown symbol {lit.subject}", line, col)
        if lit.value not in signature.values_of(lit.subject):
            raise PecSyntaxError(
                f"{lit.value} is not a possible value of {lit.subject}",
                line, col)
        if instant > signature.maxinst:
            raise PecSyntaxError(
                f"instant {instant} beyond maxinst {signature.maxinst}",
                line, col)
    return phi


# ---------------------------------------------------------------------------
# Rendering

_PRECEDENCE = {Implies: 1, Or: 2, And: 3}


def format_formula(phi: Formula) -> str:
    """Deterministic concrete syntax for a formula; reparses to itself."""
    return _fmt(phi, 0)


def _fmt(phi: Formula, parent_prec: int) -> str:
    if isinstance(phi, Lit):
        if phi.value == TRUE:
            return phi.subject
        if phi.value == FALSE:
            return f"!{phi.subject}"
        return f"{phi.subject}={phi.value}"
    if isinstance(phi, Not):
        if isinstance(phi.arg, Lit):
            # never abbreviate here: !X would reparse as X=false
            return f"!{phi.arg.subject}={phi.arg.value}"
        return f"!({_fmt(phi.arg, 0)})"
    op, symbol = type(phi), {Implies: "->", Or: "|", And: "&"}[type(phi)]
    prec = _PRECEDENCE[op]
    if op is Implies:  # right-associative
        text = f"{_fmt(phi.left, prec + 1)} {symbol} {_fmt(phi.right, prec)}"
    else:  # left-associative chains
        text = f"{_fmt(phi.left, prec)} {symbol} {_fmt(phi.right, prec + 1)}"
    return f"({text})" if prec < parent_prec else text


def _fmt_effect_literal(subject: str, value: str) -> str:
    if value == TRUE:
        return subject
    if value == FALSE:
        return f"!{subject}"
    return f"{subject}={value}"


def _fmt_outcomes(head: Iterable[Outcome]) -> str:
    parts = []
    for o in head:
        lits = ", ".join(_fmt_effect_literal(s, v) for s, v in o.effect.items())
        parts.append(f"({{{lits}}}, {o.weight})")
    return "{" + ", ".join(parts) + "}"


def render(dd: DomainDescription) -> str:
    """Pretty-print a domain so that parse_domain(render(dd)) == dd."""
    sig = dd.signature
    lines = [f"maxinst {sig.maxinst}", ""]
    for v in dd.vprops:
        lines.append(f"fluent {v.fluent} takes-values {{{', '.join(v.values)}}}")
    for a in sig.actions:
        lines.append(f"action {a}")
    lines.append("")
    lines.append(f"initially-one-of {_fmt_outcomes(dd.iprop.head)}")
    for c in dd.cprops:
        lines.append(f"{format_formula(c.body)} causes-one-of "
                     f"{_fmt_outcomes(c.head)}")
    if dd.pprops:
        lines.append("")
    for p in dd.pprops:
        suffix = "" if p.prob == 1 else f" with-prob {p.prob}"
        lines.append(f"{p.action} performed-at {p.instant}{suffix}")
    return "\n".join(lines) + "\n"
