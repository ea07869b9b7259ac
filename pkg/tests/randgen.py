"""Seeded random inputs: abstract frameworks and stratified bases.

Both generators go through the public text parsers, so the random
suites also exercise parsing. Frameworks stay at 8 arguments or fewer
to keep full subset enumeration cheap; bases are filtered down to
universes small enough to enumerate extensions over.
"""

from __future__ import annotations

import random

from prefarg.arguments import ArgumentUniverse, build_universe
from prefarg.errors import CapExceededError, KBFormatError
from prefarg.framework import Framework, parse_abstract_framework
from prefarg.kb import StratifiedKB, parse_kb

ATOM_NAMES = ["a", "b", "c", "d", "e", "f"]


def random_framework(rng: random.Random) -> Framework:
    n = rng.randint(1, 8)
    names = [f"N{i}" for i in range(n)]
    density = rng.choice([0.05, 0.15, 0.3, 0.5, 0.7])
    lines = [" ".join(f"arg({x})." for x in names)]
    for x in names:
        for y in names:
            if rng.random() < density:
                lines.append(f"def({x},{y}).")
    style = rng.random()
    if style < 0.45:
        pass  # no preference facts at all
    elif style < 0.75:
        # total preorder induced by random ranks
        rank = {x: rng.randint(1, 3) for x in names}
        for x in names:
            for y in names:
                if x != y and rank[x] <= rank[y]:
                    lines.append(f"pref({x},{y}).")
    else:
        # a few arbitrary pairs; the parser closes them into a preorder
        for _ in range(rng.randint(1, n)):
            lines.append(f"pref({rng.choice(names)},{rng.choice(names)}).")
    return parse_abstract_framework("\n".join(lines) + "\n")


def random_formula_text(rng: random.Random, names: list[str], depth: int) -> str:
    roll = rng.random()
    if depth <= 0 or roll < 0.4:
        return rng.choice(names)
    if roll < 0.6:
        return "!" + _wrap(rng, random_formula_text(rng, names, depth - 1))
    op = rng.choice(["&", "|", "->", "<->"])
    left = random_formula_text(rng, names, depth - 1)
    right = random_formula_text(rng, names, depth - 1)
    return f"{_wrap(rng, left)} {op} {_wrap(rng, right)}"


def _wrap(rng: random.Random, text: str) -> str:
    if len(text) > 1 or rng.random() < 0.2:
        return f"({text})"
    return text


def random_kb(
    rng: random.Random, max_universe: int = 14, query_chance: float = 0.5
) -> tuple[StratifiedKB, ArgumentUniverse]:
    """A parsed base plus its universe, retried until small enough."""
    while True:
        names = ATOM_NAMES[: rng.randint(2, 6)]
        lines = []
        if rng.random() < 0.3:
            lines.append("[core]")
            lines.append(rng.choice(names))
        n_strata = rng.randint(1, 4)
        total = rng.randint(n_strata, 8)
        per = [1] * n_strata
        for _ in range(total - n_strata):
            per[rng.randrange(n_strata)] += 1
        for j in range(1, n_strata + 1):
            lines.append(f"[stratum {j}]")
            for _ in range(per[j - 1]):
                lines.append(random_formula_text(rng, names, rng.randint(0, 2)))
        text = "\n".join(lines) + "\n"
        try:
            base = parse_kb(text)
        except KBFormatError:
            continue  # duplicate formula or inconsistent core
        query = None
        if rng.random() < query_chance:
            from prefarg.formulas import parse_formula

            query = parse_formula(random_formula_text(rng, names, 1))
        try:
            universe = build_universe(base, query)
        except CapExceededError:
            continue
        if len(universe.arguments) <= max_universe:
            return base, universe
