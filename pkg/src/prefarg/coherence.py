"""Consistent views of a stratified base, tied back to extensions.

A base with contradictions supports several coherent readings. Walking
strata best-first gives the preferred subbases: keep a maximal
consistent slice of stratum 1, extend it maximally through stratum 2,
and so on. Ignoring strata gives the plain maximal consistent subsets.
Both selections live here, together with the cross-checks connecting
them to the extension machinery built on undercut and certainty
preference: subbase arguments against stable extensions, the support of
the unattacked class against the common core of all preferred subbases,
and the flat-base equivalence between the two pictures.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .arguments import DEFAULT_CAP, Argument, ArgumentUniverse, build_universe, supp_of
from .errors import CapExceededError
from .formulas import Formula, TruthTable, atoms, render
from .framework import PreferenceRelation, build_framework
from .kb import BeliefRef, StratifiedKB
from .semantics import class_cr_pref, grounded_extension, stable_extensions


@dataclass(frozen=True)
class Subbase:
    """A selection of beliefs, kept as sorted references into the base."""

    refs: tuple[BeliefRef, ...]

    def slice_at(self, stratum: int) -> tuple[BeliefRef, ...]:
        return tuple(r for r in self.refs if r.stratum == stratum)

    def formulas(self, kb: StratifiedKB) -> tuple[Formula, ...]:
        return tuple(kb.resolve(r) for r in self.refs)


def _kb_table(kb: StratifiedKB) -> TruthTable:
    names: set[str] = set()
    for f in kb.core:
        names |= atoms(f)
    for _, f in kb.beliefs():
        names |= atoms(f)
    return TruthTable(sorted(names))


def _check_cap(kb: StratifiedKB, cap: int) -> None:
    n = sum(len(s) for s in kb.strata)
    if n > cap:
        raise CapExceededError(f"{n} beliefs exceed the enumeration cap of {cap}")


def _maximal_augmentations(
    refs: list[BeliefRef], masks: list[int], prefix_mask: int
) -> list[tuple[tuple[BeliefRef, ...], int]]:
    """Maximal subsets of refs whose masks stay satisfiable with the prefix.

    Satisfiability is closed under removal, so a subset is maximal as
    soon as no single further belief can join it.
    """
    m = len(refs)
    model = [0] * (1 << m)
    model[0] = prefix_mask
    for s in range(1, 1 << m):
        low = s & -s
        model[s] = model[s ^ low] & masks[low.bit_length() - 1]
    out = []
    for s in range(1 << m):
        if model[s] == 0:
            continue
        if any(not s >> i & 1 and model[s | 1 << i] != 0 for i in range(m)):
            continue
        out.append((tuple(refs[i] for i in range(m) if s >> i & 1), model[s]))
    return out


def incl_subbases(kb: StratifiedKB, cap: int = DEFAULT_CAP) -> list[Subbase]:
    """All preferred subbases, prefix-maximal consistent stratum by stratum.

    A selection qualifies when, at every stratum j, the beliefs kept
    from strata 1..j form a maximal consistent subset of those strata
    together with the core. The enumeration extends each partial
    selection with every maximal consistent augmentation from the next
    stratum; maximality of the earlier prefix is never disturbed because
    anything it excluded stays contradictory in any superset.
    """
    _check_cap(kb, cap)
    table = _kb_table(kb)
    core_mask = table.conjunction_mask(kb.core)
    branches: list[tuple[tuple[BeliefRef, ...], int]] = [((), core_mask)]
    for stratum_index, stratum in enumerate(kb.strata, start=1):
        refs = [BeliefRef(stratum_index, pos) for pos in range(len(stratum))]
        masks = [table.mask(f) for f in stratum]
        grown = []
        for kept, prefix_mask in branches:
            for pick, pick_mask in _maximal_augmentations(refs, masks, prefix_mask):
                grown.append((kept + pick, pick_mask))
        branches = grown
    return sorted((Subbase(kept) for kept, _ in branches), key=lambda sb: sb.refs)


def intersection_incl(kb: StratifiedKB, cap: int = DEFAULT_CAP) -> frozenset[BeliefRef]:
    """The belief references kept by every preferred subbase."""
    subbases = incl_subbases(kb, cap)
    common = set(subbases[0].refs)
    for sb in subbases[1:]:
        common &= set(sb.refs)
    return frozenset(common)


def max_consistent_subbases(kb: StratifiedKB, cap: int = DEFAULT_CAP) -> list[Subbase]:
    """Maximal selections consistent with the core, stratification ignored."""
    _check_cap(kb, cap)
    table = _kb_table(kb)
    refs = list(kb.belief_refs())
    masks = [table.mask(kb.resolve(r)) for r in refs]
    core_mask = table.conjunction_mask(kb.core)
    picks = _maximal_augmentations(refs, masks, core_mask)
    return sorted((Subbase(pick) for pick, _ in picks), key=lambda sb: sb.refs)


def arg_of(
    universe: ArgumentUniverse, subbase: Subbase | Iterable[BeliefRef]
) -> tuple[Argument, ...]:
    """The universe members whose support lies inside the subbase."""
    refs = set(subbase.refs) if isinstance(subbase, Subbase) else set(subbase)
    return tuple(a for a in universe.arguments if refs >= set(a.support))


@dataclass(frozen=True)
class ClauseResult:
    name: str
    status: str  # "pass" | "fail" | "info"
    detail: str = ""
    counterexample: dict | None = None


@dataclass(frozen=True)
class CorrespondenceReport:
    clauses: tuple[ClauseResult, ...]

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.clauses)

    def clause(self, name: str) -> ClauseResult:
        for c in self.clauses:
            if c.name == name:
                return c
        raise ValueError(f"no clause named {name!r}")


def _show_refs(kb: StratifiedKB, refs: Iterable[BeliefRef]) -> str:
    return "{" + ", ".join(render(kb.resolve(r)) for r in sorted(refs)) + "}"


def check_correspondence(
    kb: StratifiedKB,
    universe: ArgumentUniverse | None = None,
    cap: int = DEFAULT_CAP,
) -> CorrespondenceReport:
    """Cross-check subbase selection against undercut/certainty extensions.

    Four clauses are verified, each a finite-universe verification: the
    argument-side statements quantify over the canonical universe, not
    over every derivable conclusion.

      subbase_arguments_are_stable   each preferred subbase induces a
                                     stable extension
      class_support_within_intersection  supports of never-attacked
                                     arguments sit in every subbase
      class_within_every_stable      never-attacked arguments belong to
                                     each stable extension
      flat_stable_equals_max_consistent  with strata collapsed and no
                                     preference, stable extensions are
                                     exactly the argument sets of the
                                     maximal consistent subbases

    A final informational clause shows the grounded extension's support
    next to the subbase intersection without asserting anything.
    """
    if universe is None:
        universe = build_universe(kb, cap=cap)
    elif universe.kb != kb:
        raise ValueError("universe was built from a different knowledge base")
    clauses: list[ClauseResult] = []

    subbases = incl_subbases(kb, cap)
    common = set(subbases[0].refs)
    for sb in subbases[1:]:
        common &= set(sb.refs)

    fw = build_framework(universe, defeat="undercut")
    stable = stable_extensions(fw, "weak", cap)

    bad = None
    for sb in subbases:
        ids = frozenset(a.id for a in arg_of(universe, sb))
        if ids not in stable:
            bad = {
                "subbase": [render(f) for f in sb.formulas(kb)],
                "arguments": sorted(ids),
            }
            break
    clauses.append(ClauseResult(
        "subbase_arguments_are_stable",
        "fail" if bad else "pass",
        f"{len(subbases)} subbases against {len(stable)} stable extensions "
        "(finite-universe verification)",
        bad,
    ))

    class_ids = class_cr_pref(fw)
    class_args = [universe.argument(i) for i in sorted(class_ids)]
    stray = supp_of(class_args) - common
    clauses.append(ClauseResult(
        "class_support_within_intersection",
        "fail" if stray else "pass",
        f"support of {len(class_ids)} unattacked arguments against "
        f"{len(common)} common references",
        {"references": [render(kb.resolve(r)) for r in sorted(stray)]} if stray else None,
    ))

    outside = None
    for ext in stable:
        if not class_ids <= ext:
            outside = {"extension": sorted(ext), "class": sorted(class_ids)}
            break
    clauses.append(ClauseResult(
        "class_within_every_stable",
        "fail" if outside else "pass",
        f"{len(class_ids)} unattacked arguments against {len(stable)} stable extensions",
        outside,
    ))

    flat = kb.flatten()
    flat_universe = build_universe(flat, universe.query, cap)
    flat_fw = build_framework(flat_universe, "undercut", PreferenceRelation.none())
    flat_stable = {frozenset(e) for e in stable_extensions(flat_fw, "weak", cap)}
    flat_expected = {
        frozenset(a.id for a in arg_of(flat_universe, sb))
        for sb in max_consistent_subbases(flat, cap)
    }
    mismatch = None
    if flat_stable != flat_expected:
        mismatch = {
            "stable_only": sorted(sorted(e) for e in flat_stable - flat_expected),
            "subbase_only": sorted(sorted(e) for e in flat_expected - flat_stable),
        }
    clauses.append(ClauseResult(
        "flat_stable_equals_max_consistent",
        "fail" if mismatch else "pass",
        f"{len(flat_stable)} stable extensions against "
        f"{len(flat_expected)} maximal consistent subbases",
        mismatch,
    ))

    grounded_ids, _ = grounded_extension(fw)
    grounded_support = supp_of([universe.argument(i) for i in grounded_ids])
    clauses.append(ClauseResult(
        "grounded_support_vs_intersection",
        "info",
        f"grounded support {_show_refs(kb, grounded_support)}, "
        f"common references {_show_refs(kb, common)}",
    ))

    return CorrespondenceReport(tuple(clauses))


def ref_to_json(kb: StratifiedKB, ref: BeliefRef) -> dict:
    return {
        "stratum": ref.stratum,
        "position": ref.position,
        "formula": render(kb.resolve(ref)),
    }


def subbase_to_json(kb: StratifiedKB, subbase: Subbase) -> list[dict]:
    return [ref_to_json(kb, r) for r in subbase.refs]


def correspondence_to_json(report: CorrespondenceReport) -> dict:
    """JSON-ready dict with a fixed key order."""
    return {
        "ok": report.ok,
        "clauses": [
            {
                "name": c.name,
                "status": c.status,
                "detail": c.detail,
                "counterexample": c.counterexample,
            }
            for c in report.clauses
        ],
    }
