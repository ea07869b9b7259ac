import random

import pytest

import oracles
import randgen
from conftest import fixture_text
from prefarg.arguments import Argument, build_universe
from prefarg.errors import AFFormatError
from prefarg.formulas import parse_formula
from prefarg.framework import (
    Framework,
    PreferenceRelation,
    attacks,
    build_framework,
    framework_to_json,
    parse_abstract_framework,
    rebuts,
    undercuts,
)
from prefarg.kb import parse_kb


def concl(text, level=None, ident="X"):
    return Argument(id=ident, conclusion=parse_formula(text), level=level)


def supported(concl_text, support_texts, level=None, ident="X"):
    return Argument(
        id=ident,
        support_formulas=tuple(parse_formula(t) for t in support_texts),
        conclusion=parse_formula(concl_text),
        level=level,
    )


class TestPreferenceRelation:
    def test_certainty_prefers_lower_level(self):
        strong, weak = concl("a", level=1), concl("b", level=3)
        pref = PreferenceRelation.by_certainty()
        assert pref.prefers(strong, weak)
        assert not pref.prefers(weak, strong)
        assert pref.holds(strong, strong)

    def test_certainty_equal_levels_tie(self):
        x, y = concl("a", level=2), concl("b", level=2)
        pref = PreferenceRelation.by_certainty()
        assert pref.holds(x, y) and pref.holds(y, x)
        assert not pref.prefers(x, y)

    def test_certainty_needs_levels(self):
        pref = PreferenceRelation.by_certainty()
        with pytest.raises(ValueError):
            pref.holds(Argument(id="X"), Argument(id="Y"))

    def test_none_is_reflexive_only(self):
        pref = PreferenceRelation.none()
        x, y = Argument(id="X"), Argument(id="Y")
        assert pref.holds(x, x)
        assert not pref.holds(x, y)
        assert not pref.prefers(x, y)

    def test_explicit_closure_matches_oracle(self):
        rng = random.Random(7)
        for _ in range(50):
            ids = [f"N{i}" for i in range(rng.randint(1, 6))]
            pairs = [
                (rng.choice(ids), rng.choice(ids)) for _ in range(rng.randint(0, 8))
            ]
            pref = PreferenceRelation.explicit(pairs, ids)
            assert pref.pairs == oracles.closure_oracle(pairs, ids)

    def test_explicit_cycle_collapses_to_equivalence(self):
        pref = PreferenceRelation.explicit([("A", "B"), ("B", "A")], ["A", "B"])
        x, y = Argument(id="A"), Argument(id="B")
        assert pref.holds(x, y) and pref.holds(y, x)
        assert not pref.prefers(x, y)

    def test_explicit_unknown_id(self):
        with pytest.raises(ValueError):
            PreferenceRelation.explicit([("A", "Z")], ["A", "B"])

    def test_strict_pairs_listing_order(self):
        pref = PreferenceRelation.explicit([("A", "B"), ("B", "C")], ["A", "B", "C"])
        args = [Argument(id=i) for i in ("A", "B", "C")]
        assert pref.strict_pairs(args) == [("A", "B"), ("A", "C"), ("B", "C")]


class TestDefeatTests:
    def test_rebut_is_semantic(self):
        assert rebuts(concl("r"), concl("!r"))
        assert rebuts(concl("!r"), concl("r"))
        assert rebuts(concl("r"), concl("!!!r"))
        assert rebuts(concl("!(a & b)"), concl("a & b"))
        assert not rebuts(concl("r"), concl("r"))
        assert not rebuts(concl("a"), concl("!b"))

    def test_undercut_hits_any_support_member(self):
        target = supported("q", ["a", "a -> q"])
        assert undercuts(concl("!a"), target)
        assert undercuts(concl("!(a -> q)"), target)
        assert not undercuts(concl("!q"), target)

    def test_undercut_is_semantic(self):
        target = supported("q", ["!a"])
        assert undercuts(concl("a"), target)
        assert undercuts(concl("!!a"), target)

    def test_abstract_arguments_rejected(self):
        with pytest.raises(ValueError):
            rebuts(Argument(id="X"), concl("a"))
        with pytest.raises(ValueError):
            undercuts(concl("a"), Argument(id="Y"))


EXAMPLE2_UNDERCUT_DEFEATS = [
    ("A1", "A2"), ("A1", "A3"),
    ("A2", "A1"), ("A2", "A4"), ("A2", "A6"),
    ("A4", "A6"), ("A4", "A7"), ("A4", "A8"),
    ("A6", "A4"), ("A6", "A5"), ("A6", "A7"),
    ("A7", "A1"), ("A7", "A4"), ("A7", "A6"),
]

# dropped by certainty: A6 and A7 sit above their targets here
EXAMPLE2_UNDERCUT_ATTACKS = [
    ("A1", "A2"), ("A1", "A3"),
    ("A2", "A1"), ("A2", "A4"), ("A2", "A6"),
    ("A4", "A6"), ("A4", "A7"), ("A4", "A8"),
    ("A6", "A7"),
    ("A7", "A6"),
]

EXAMPLE2_REBUT_DEFEATS = [
    ("A1", "A2"), ("A1", "A7"),
    ("A2", "A1"),
    ("A3", "A6"),
    ("A4", "A8"),
    ("A5", "A6"),
    ("A6", "A3"), ("A6", "A5"),
    ("A7", "A1"),
    ("A8", "A4"),
]


class TestBuildFramework:
    def test_example2_undercut_edges(self):
        fw = build_framework(build_universe(parse_kb(fixture_text("example2.kb"))))
        assert list(fw.defeats) == EXAMPLE2_UNDERCUT_DEFEATS
        assert list(fw.attacks) == EXAMPLE2_UNDERCUT_ATTACKS

    def test_example2_rebut_edges(self):
        universe = build_universe(parse_kb(fixture_text("example2.kb")))
        fw = build_framework(universe, "rebut")
        assert list(fw.defeats) == EXAMPLE2_REBUT_DEFEATS
        dropped = set(EXAMPLE2_REBUT_DEFEATS) - set(fw.attacks)
        assert dropped == {("A6", "A3"), ("A6", "A5"), ("A7", "A1"), ("A8", "A4")}

    def test_no_preference_keeps_every_defeat(self):
        universe = build_universe(parse_kb(fixture_text("example2.kb")))
        fw = build_framework(universe, "undercut", PreferenceRelation.none())
        assert fw.attacks == fw.defeats

    def test_unknown_defeat_kind(self):
        universe = build_universe(parse_kb(fixture_text("example2.kb")))
        with pytest.raises(ValueError):
            build_framework(universe, "bite")

    @pytest.mark.parametrize("seed", range(20))
    @pytest.mark.parametrize("defeat", ["rebut", "undercut"])
    def test_edges_match_pairwise_oracle(self, seed, defeat):
        _, universe = randgen.random_kb(random.Random(seed), max_universe=10)
        fw = build_framework(universe, defeat)
        relation = rebuts if defeat == "rebut" else undercuts
        expected = [
            (x.id, y.id)
            for x in universe.arguments
            for y in universe.arguments
            if relation(x, y)
        ]
        assert sorted(fw.defeats) == sorted(expected)
        stricter = {
            (x.id, y.id)
            for x in universe.arguments
            for y in universe.arguments
            if x.level < y.level
        }
        assert sorted(fw.attacks) == sorted(
            oracles.derive_attacks_oracle(fw.defeats, stricter)
        )

    def test_attack_rule_spot_check(self):
        universe = build_universe(parse_kb(fixture_text("example2.kb")))
        fw = build_framework(universe)
        a4, a6 = universe.argument("A4"), universe.argument("A6")
        assert fw.has_defeat("A6", "A4")
        assert not attacks(fw, a6, a4)  # the level-2 target shrugs it off
        assert attacks(fw, a4, a6)


class TestFrameworkClass:
    def test_duplicate_ids_rejected(self):
        args = (Argument(id="X"), Argument(id="X"))
        with pytest.raises(ValueError):
            Framework(args, [], PreferenceRelation.none(), "abstract")

    def test_unknown_edge_endpoint_rejected(self):
        args = (Argument(id="X"),)
        with pytest.raises(ValueError):
            Framework(args, [("X", "Z")], PreferenceRelation.none(), "abstract")

    def test_position_and_lookup(self):
        fw = parse_abstract_framework("arg(A). arg(B). def(A,B).")
        assert fw.position("B") == 1
        assert fw.argument("A").id == "A"
        with pytest.raises(ValueError):
            fw.position("Z")

    def test_defeats_sorted_by_position(self):
        fw = parse_abstract_framework("arg(A). arg(B). def(B,A). def(A,B).")
        assert fw.defeats == (("A", "B"), ("B", "A"))


class TestAbstractParsing:
    def test_fixture_example1(self):
        fw = parse_abstract_framework(fixture_text("example1.af"))
        assert fw.ids == ("A", "B", "C", "D")
        assert fw.defeats == (("C", "D"), ("D", "C"))
        assert fw.preference.kind == "none"
        assert fw.attacks == fw.defeats

    def test_fixture_with_preference(self):
        fw = parse_abstract_framework(fixture_text("example1_pref.af"))
        assert fw.preference.kind == "explicit"
        assert fw.attacks == (("C", "D"),)

    def test_facts_share_lines_and_comments(self):
        fw = parse_abstract_framework("arg(A). arg(B). % trailing\ndef(A,B). arg(C).\n")
        assert fw.ids == ("A", "B", "C")
        assert fw.defeats == (("A", "B"),)

    def test_explicit_preference_closure(self):
        fw = parse_abstract_framework(
            "arg(A). arg(B). arg(C). def(C,A). pref(A,B). pref(B,C)."
        )
        x, z = fw.argument("A"), fw.argument("C")
        assert fw.preference.prefers(x, z)  # closed through B
        assert fw.attacks == ()  # A is preferred to its defeater

    @pytest.mark.parametrize("text,fragment", [
        ("arg(A). arg(A).", "duplicate argument"),
        ("arg(A,B).", "takes one name"),
        ("arg(A). def(A).", "takes two names"),
        ("arg(A). def(A,Z).", "undeclared"),
        ("arg(A). pref(Z,A).", "undeclared"),
        ("arg(A). defeat(A,A).", "cannot parse"),
        ("arg(A) def(A,A).", "cannot parse"),
    ])
    def test_errors(self, text, fragment):
        with pytest.raises(AFFormatError) as err:
            parse_abstract_framework(text)
        assert fragment in str(err.value)

    def test_deterministic(self):
        text = fixture_text("example4.af")
        one, two = parse_abstract_framework(text), parse_abstract_framework(text)
        assert one.ids == two.ids
        assert one.defeats == two.defeats
        assert one.attacks == two.attacks


def test_framework_to_json():
    fw = parse_abstract_framework(fixture_text("example1_pref.af"))
    assert framework_to_json(fw) == {
        "arguments": ["A", "B", "C", "D"],
        "defeats": [["C", "D"], ["D", "C"]],
        "preference": [["C", "D"]],
        "attacks": [["C", "D"]],
    }
