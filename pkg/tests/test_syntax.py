"""Grammar, validation diagnostics, and round-trip rendering."""

import random
from fractions import Fraction

import pytest

from pec import (
    And,
    DomainValidationError,
    FALSE,
    ILit,
    Implies,
    Lit,
    PecSyntaxError,
    TRUE,
    parse_domain,
    parse_query,
    render,
    validate,
)
from helpers import random_domain


class TestParseDomain:
    def test_coin(self, coin):
        sig = coin.signature
        assert sig.fluents == ("Coin",)
        assert sig.actions == ("Toss",)
        assert sig.vals["Coin"] == ("Heads", "Tails")
        assert sig.maxinst == 3
        assert len(coin.cprops) == 1
        head = coin.cprops[0].head
        assert [o.weight for o in head] == [Fraction(49, 100),
                                            Fraction(49, 100),
                                            Fraction(1, 50)]
        assert head[2].effect == {}
        assert coin.pprops[0].prob == 1

    def test_antibiotic(self, antibiotic):
        sig = antibiotic.signature
        assert sig.fluents == ("Bacteria", "Rash")
        assert len(antibiotic.cprops) == 2
        assert len(antibiotic.pprops) == 2
        assert [o.weight for o in antibiotic.iprop.head] == \
            [Fraction(9, 10), Fraction(1, 10)]
        assert antibiotic.cprops[1].body == And(
            Lit("TakesMedicine", TRUE), Lit("Bacteria", "Resistant"))

    def test_keys_boolean_shorthand(self, keys):
        assert keys.iprop.head[0].effect == {
            "HasKeys": FALSE, "LockedOut": FALSE, "Location": "Inside"}
        locked_out_body = keys.cprops[0].body
        assert Lit("HasKeys", FALSE) in _conjuncts(locked_out_body)

    def test_empty_input(self):
        report = validate("")
        messages = str(report)
        assert "no i-proposition" in messages
        assert "(ii)" in messages
        with pytest.raises(DomainValidationError):
            parse_domain("")

    def test_decimals_convert_exactly(self):
        dd = parse_domain(
            "maxinst 2\nfluent F takes-values {a, b}\naction A\n"
            "initially-one-of {({F=a}, 0.3), ({F=b}, 0.7)}\n")
        assert [o.weight for o in dd.iprop.head] == \
            [Fraction(3, 10), Fraction(7, 10)]


def _conjuncts(phi):
    if isinstance(phi, And):
        return _conjuncts(phi.left) + _conjuncts(phi.right)
    return [phi]


class TestCompletion:
    def test_implicit_empty_outcome(self):
        dd = parse_domain(
            "maxinst 2\nfluent Coin takes-values {Heads, Tails}\naction Toss\n"
            "initially-one-of {({Coin=Heads}, 1)}\n"
            "Toss causes-one-of {({Coin=Heads}, 49/100), ({Coin=Tails}, 49/100)}\n")
        head = dd.cprops[0].head
        assert len(head) == 3
        assert head[2].effect == {}
        assert head[2].weight == Fraction(1, 50)
        assert sum(o.weight for o in head) == 1

    def test_explicit_empty_disables_completion(self):
        # mirrors the inconsistent treatment rule: 1/13 + 4/13 with an
        # explicit empty outcome must not be silently completed
        report = validate(
            "maxinst 2\nfluent F takes-values {a, b}\naction A\n"
            "initially-one-of {({F=a}, 1)}\n"
            "A causes-one-of {({F=b}, 1/13), ({}, 4/13)}\n")
        assert "weights sum to 5/13" in str(report)

    def test_overweight_head(self):
        report = validate(
            "maxinst 2\nfluent F takes-values {a, b}\naction A\n"
            "initially-one-of {({F=a}, 1)}\n"
            "A causes-one-of {({F=b}, 3/4), ({}, 1/2)}\n")
        assert "weights sum to 5/4" in str(report)


VALID_PREFIX = ("maxinst 3\nfluent F takes-values {a, b}\naction A\n"
                "initially-one-of {({F=a}, 1)}\n")

BAD_DOMAINS = [
    ("duplicate v-prop",
     VALID_PREFIX + "fluent F takes-values {a, b}\n",
     "duplicate value declaration"),
    ("i-prop missing",
     "maxinst 3\nfluent F takes-values {a, b}\n",
     "no i-proposition"),
    ("two i-props",
     VALID_PREFIX + "initially-one-of {({F=b}, 1)}\n",
     "more than one i-proposition"),
    ("i-prop weights",
     "maxinst 3\nfluent F takes-values {a, b}\n"
     "initially-one-of {({F=a}, 1/2), ({F=b}, 1/4)}\n",
     "weights sum to 3/4"),
    ("i-prop not total",
     "maxinst 3\nfluent F takes-values {a, b}\n"
     "fluent G takes-values {c, d}\ninitially-one-of {({F=a}, 1)}\n",
     "must assign every fluent"),
    ("duplicate occurrence",
     VALID_PREFIX + "A performed-at 1\nA performed-at 1 with-prob 1/2\n",
     "duplicate occurrence"),
    ("occurrence at maxinst",
     VALID_PREFIX + "A performed-at 3\n",
     "must be below maxinst"),
    ("body entails no action",
     VALID_PREFIX + "F=a causes-one-of {({F=b}, 1)}\n",
     "does not entail any action"),
    ("body entailment pair",
     VALID_PREFIX + "A causes-one-of {({F=b}, 1)}\n"
     "A & F=a causes-one-of {({F=a}, 1)}\n",
     "entails the body"),
    ("duplicate effects",
     VALID_PREFIX + "A causes-one-of {({F=b}, 1/2), ({F=b}, 1/2)}\n",
     "duplicate effect"),
    ("unknown symbol",
     VALID_PREFIX + "A & G=a causes-one-of {({F=b}, 1)}\n",
     "unknown symbol G"),
    ("bad value",
     VALID_PREFIX + "A causes-one-of {({F=c}, 1)}\n",
     "not a possible value"),
    ("action in effect",
     VALID_PREFIX + "A causes-one-of {({A}, 1)}\n",
     "not a fluent"),
    ("occurrence probability zero",
     VALID_PREFIX + "A performed-at 1 with-prob 0/4\n",
     "outside (0,1]"),
    ("zero maxinst",
     "maxinst 0\nfluent F takes-values {a, b}\n"
     "initially-one-of {({F=a}, 1)}\n",
     "maxinst must be at least 1"),
]


class TestValidation:
    @pytest.mark.parametrize("label,text,fragment", BAD_DOMAINS,
                             ids=[b[0] for b in BAD_DOMAINS])
    def test_rejects(self, label, text, fragment):
        report = validate(text)
        assert not report.ok()
        assert fragment in str(report)

    def test_every_issue_has_a_location(self):
        for _, text, _ in BAD_DOMAINS:
            for issue in validate(text).issues:
                assert issue.line >= 1 and issue.col >= 1

    def test_conditions_cited(self):
        report = validate(VALID_PREFIX +
                          "A performed-at 1\nA performed-at 1\n")
        assert "(iv)" in str(report)

    def test_collects_rather_than_failing_fast(self):
        report = validate(
            "maxinst 3\nfluent F takes-values {a, b}\n"
            "A performed-at 5\n")
        text = str(report)
        assert "no i-proposition" in text
        assert "unknown action A" in text

    def test_shipped_domains_are_clean(self, coin, antibiotic, keys):
        from conftest import EXAMPLES
        for name in ("coin.pec", "antibiotic.pec", "keys.pec"):
            assert validate((EXAMPLES / name).read_text()).ok()


class TestSyntaxErrors:
    @pytest.mark.parametrize("text", [
        "fluent takes-values {a}",
        "maxinst x",
        "fluent F takes-values {a, b",
        "initially-one-of {({F=a} 1)}",
        "$",
    ])
    def test_raises_with_location(self, text):
        with pytest.raises(PecSyntaxError) as err:
            parse_domain(text)
        assert "line" in str(err.value)

    def test_location_points_at_the_offending_line(self):
        text = "maxinst 3\nfluent F takes-values {a, b}\n  fluent ? oops\n"
        with pytest.raises(PecSyntaxError) as err:
            parse_domain(text)
        assert err.value.line == 3 and err.value.col == 10


class TestParseQuery:
    def test_single_literal(self, coin):
        assert parse_query("[Coin=Heads]@2", coin.signature) == \
            ILit("Coin", "Heads", 2)

    def test_conjunction(self, coin):
        phi = parse_query("[Coin=Heads]@1 & [Coin=Tails]@3", coin.signature)
        assert phi == And(ILit("Coin", "Heads", 1), ILit("Coin", "Tails", 3))

    def test_stamp_distributes(self, coin):
        phi = parse_query("[Coin=Heads -> Coin=Heads]@0", coin.signature)
        assert phi == Implies(ILit("Coin", "Heads", 0), ILit("Coin", "Heads", 0))

    def test_boolean_shorthand(self, coin):
        assert parse_query("[Toss]@1", coin.signature) == ILit("Toss", TRUE, 1)
        assert parse_query("[!Toss]@1", coin.signature) == ILit("Toss", FALSE, 1)

    @pytest.mark.parametrize("text,fragment", [
        ("[Coin=Heads]@9", "beyond maxinst"),
        ("[Wind=Heads]@1", "unknown symbol"),
        ("[Coin=Sideways]@1", "not a possible value"),
        ("[Coin=Heads]@1 extra", "unexpected input"),
        ("[Coin=Heads]", "expected"),
    ])
    def test_rejects(self, coin, text, fragment):
        with pytest.raises(PecSyntaxError) as err:
            parse_query(text, coin.signature)
        assert fragment in str(err.value)


class TestRender:
    def test_round_trip_shipped(self, coin, antibiotic, keys):
        for dd in (coin, antibiotic, keys):
            assert parse_domain(render(dd)) == dd

    def test_round_trip_random(self):
        rng = random.Random(31)
        for _ in range(25):
            dd = random_domain(rng)  # generator already parses its render
            assert parse_domain(render(dd)) == dd

    def test_reduced_fractions(self, coin):
        text = render(coin)
        assert "49/100" in text
        assert "0.49" not in text

    def test_completed_outcome_is_explicit(self):
        dd = parse_domain(
            "maxinst 2\nfluent F takes-values {a, b}\naction A\n"
            "initially-one-of {({F=a}, 1)}\n"
            "A causes-one-of {({F=b}, 3/4)}\n")
        assert "({}, 1/4)" in render(dd)

    def test_formula_printer_round_trips(self):
        # negations, implications and mixed associativity all survive a
        # render/parse cycle when embedded as a rule body
        from pec import DomainSignature, format_formula
        rng = random.Random(53)
        sig = DomainSignature(("F", "G"), ("A",),
                              {"F": ("a", "b"), "G": ("a", "b")}, 2)
        from helpers import random_formula
        for _ in range(60):
            phi = random_formula(rng, sig, depth=4)
            text = ("maxinst 2\nfluent F takes-values {a, b}\n"
                    "fluent G takes-values {a, b}\naction A\n"
                    "initially-one-of {({F=a, G=a}, 1)}\n"
                    f"A & ({format_formula(phi)}) "
                    "causes-one-of {({F=b}, 1)}\n")
            parsed = parse_domain(text)
            assert parsed.cprops[0].body == And(Lit("A", TRUE), phi)
