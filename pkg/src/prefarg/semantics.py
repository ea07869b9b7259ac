"""Extension semantics over frameworks: acceptance classes and fixed points.

Two operators drive everything. f_step maps a set S to the arguments
whose every attacker is itself attacked by S (the arguments S defends);
g_step maps S to the arguments not attacked by S. Unattacked arguments
form the basic acceptance class. The grounded extension is the least
fixed point of f_step, reached by iterating from the empty set; complete
extensions are the conflict-free fixed points of f_step; stable
extensions are the conflict-free fixed points of g_step, equivalently
the conflict-free sets attacking every outside argument.

Conflict-freeness is checked against attack edges by default ("weak");
"strict" mode rules out defeat edges inside a set even when preference
would cancel them.

Sets travel as frozensets of argument ids at the public boundary and as
position bitmasks internally. Subset enumeration refuses to run past
the cap (default 20 arguments); the grounded computation is polynomial
and never capped.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator

from .arguments import DEFAULT_CAP
from .errors import CapExceededError
from .framework import Framework

MODES = ("weak", "strict")


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _mask_of(fw: Framework, ids: Iterable[str]) -> int:
    m = 0
    for arg_id in ids:
        m |= 1 << fw.position(arg_id)
    return m


def _ids_of(fw: Framework, mask: int) -> frozenset[str]:
    return frozenset(fw.arguments[i].id for i in _bits(mask))


def _ordered_ids(fw: Framework, mask: int) -> tuple[str, ...]:
    return tuple(a.id for i, a in enumerate(fw.arguments) if mask >> i & 1)


def _attacked_by(fw: Framework, s: int) -> int:
    out = 0
    for i in _bits(s):
        out |= fw.attack_targets_mask[i]
    return out


def _f_mask(fw: Framework, s: int) -> int:
    counterattacked = _attacked_by(fw, s)
    out = 0
    for i in range(len(fw.arguments)):
        if fw.attackers_mask[i] & ~counterattacked == 0:
            out |= 1 << i
    return out


def _g_mask(fw: Framework, s: int) -> int:
    full = (1 << len(fw.arguments)) - 1
    return full & ~_attacked_by(fw, s)


def _conflict_free_mask(fw: Framework, s: int, mode: str) -> bool:
    targets = fw.defeat_targets_mask if mode == "strict" else fw.attack_targets_mask
    for i in _bits(s):
        if targets[i] & s:
            return False
    return True


def class_cr(fw: Framework) -> frozenset[str]:
    """Arguments with no defeater at all."""
    return frozenset(a.id for i, a in enumerate(fw.arguments) if fw.defeaters_mask[i] == 0)


def class_cr_pref(fw: Framework) -> frozenset[str]:
    """Arguments strictly preferred to every defeater, i.e. never attacked."""
    return frozenset(a.id for i, a in enumerate(fw.arguments) if fw.attackers_mask[i] == 0)


def conflict_free(fw: Framework, ids: Iterable[str], mode: str = "weak") -> bool:
    """No internal attack edge ("weak") or no internal defeat edge ("strict")."""
    _check_mode(mode)
    return _conflict_free_mask(fw, _mask_of(fw, ids), mode)


def f_step(fw: Framework, ids: Iterable[str]) -> frozenset[str]:
    """The arguments defended by the given set: every attacker is counterattacked."""
    return _ids_of(fw, _f_mask(fw, _mask_of(fw, ids)))


def g_step(fw: Framework, ids: Iterable[str]) -> frozenset[str]:
    """The arguments not attacked by the given set."""
    return _ids_of(fw, _g_mask(fw, _mask_of(fw, ids)))


def grounded_extension(fw: Framework) -> tuple[frozenset[str], int]:
    """Least fixed point of f_step, iterated up from the empty set.

    Also returns the number of f_step applications performed, including
    the final one that confirmed the fixed point.
    """
    s = 0
    iterations = 0
    while True:
        nxt = _f_mask(fw, s)
        iterations += 1
        if nxt == s:
            return _ids_of(fw, s), iterations
        s = nxt


def _check_cap(fw: Framework, cap: int) -> None:
    n = len(fw.arguments)
    if n > cap:
        raise CapExceededError(f"{n} arguments exceed the enumeration cap of {cap}")


def complete_extensions(
    fw: Framework, mode: str = "weak", cap: int = DEFAULT_CAP
) -> list[frozenset[str]]:
    """Conflict-free fixed points of f_step, ordered by size then position bitmask."""
    _check_mode(mode)
    _check_cap(fw, cap)
    out = []
    for s in range(1 << len(fw.arguments)):
        if _conflict_free_mask(fw, s, mode) and _f_mask(fw, s) == s:
            out.append(s)
    out.sort(key=lambda s: (s.bit_count(), s))
    return [_ids_of(fw, s) for s in out]


def stable_extensions(
    fw: Framework, mode: str = "weak", cap: int = DEFAULT_CAP
) -> list[frozenset[str]]:
    """Conflict-free fixed points of g_step, ordered by size then position bitmask."""
    _check_mode(mode)
    _check_cap(fw, cap)
    out = []
    for s in range(1 << len(fw.arguments)):
        if _conflict_free_mask(fw, s, mode) and _g_mask(fw, s) == s:
            out.append(s)
    out.sort(key=lambda s: (s.bit_count(), s))
    return [_ids_of(fw, s) for s in out]


def greatest_fixed_point(fw: Framework) -> frozenset[str]:
    """g_step applied to the grounded extension: the greatest fixed point of f_step."""
    grounded, _ = grounded_extension(fw)
    return g_step(fw, grounded)


@dataclass(frozen=True)
class ExtensionReport:
    """Everything evaluate() computes; id tuples follow framework order.

    unique_complete records whether the greatest fixed point is
    conflict-free in the weak sense. When it is, the grounded extension
    is the one and only complete extension; the converse can fail, since
    an odd attack cycle leaves a unique complete extension while the
    greatest fixed point still contains the cycle.
    """

    mode: str
    class_r: tuple[str, ...]
    class_r_pref: tuple[str, ...]
    grounded: tuple[str, ...]
    greatest_fixed_point: tuple[str, ...]
    complete: tuple[tuple[str, ...], ...]
    stable: tuple[tuple[str, ...], ...]
    unique_complete: bool
    iterations: int
    capped: bool


def evaluate(fw: Framework, mode: str = "weak", cap: int = DEFAULT_CAP) -> ExtensionReport:
    """Full semantic summary of a framework.

    When the framework has more arguments than the cap allows, the
    extension lists are left empty and the report is flagged as capped;
    the polynomial parts are still computed.
    """
    _check_mode(mode)
    grounded_ids, iterations = grounded_extension(fw)
    gfp_mask = _g_mask(fw, _mask_of(fw, grounded_ids))
    capped = len(fw.arguments) > cap
    if capped:
        complete: list[frozenset[str]] = []
        stable: list[frozenset[str]] = []
    else:
        complete = complete_extensions(fw, mode, cap)
        stable = stable_extensions(fw, mode, cap)
    return ExtensionReport(
        mode=mode,
        class_r=_ordered_ids(fw, _mask_of(fw, class_cr(fw))),
        class_r_pref=_ordered_ids(fw, _mask_of(fw, class_cr_pref(fw))),
        grounded=_ordered_ids(fw, _mask_of(fw, grounded_ids)),
        greatest_fixed_point=_ordered_ids(fw, gfp_mask),
        complete=tuple(_ordered_ids(fw, _mask_of(fw, e)) for e in complete),
        stable=tuple(_ordered_ids(fw, _mask_of(fw, e)) for e in stable),
        unique_complete=_conflict_free_mask(fw, gfp_mask, "weak"),
        iterations=iterations,
        capped=capped,
    )


def report_to_json(report: ExtensionReport) -> dict:
    """JSON-ready dict with a fixed key order."""
    return {
        "mode": report.mode,
        "capped": report.capped,
        "iterations": report.iterations,
        "unique_complete": report.unique_complete,
        "class_r": list(report.class_r),
        "class_r_pref": list(report.class_r_pref),
        "grounded": list(report.grounded),
        "greatest_fixed_point": list(report.greatest_fixed_point),
        "complete": [list(e) for e in report.complete],
        "stable": [list(e) for e in report.stable],
    }


def report_from_json(data: dict) -> ExtensionReport:
    """Inverse of report_to_json."""
    return ExtensionReport(
        mode=data["mode"],
        class_r=tuple(data["class_r"]),
        class_r_pref=tuple(data["class_r_pref"]),
        grounded=tuple(data["grounded"]),
        greatest_fixed_point=tuple(data["greatest_fixed_point"]),
        complete=tuple(tuple(e) for e in data["complete"]),
        stable=tuple(tuple(e) for e in data["stable"]),
        unique_complete=data["unique_complete"],
        iterations=data["iterations"],
        capped=data["capped"],
    )


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # "pass" | "fail" | "skipped"
    detail: str = ""


@dataclass(frozen=True)
class SelfCheckReport:
    """Outcome of the invariant suite, plus the f/g interchange tallies.

    The interchange identity f_step(S) == g_step(f_step(S)) is tallied
    as a diagnostic only: it fails for arbitrary S, and it even fails at
    fixed points of f_step (two mutually attacking arguments make the
    empty set such a fixed point, yet g_step of it is everything). It
    provably holds at fixed points of g_step, because f_step is g_step
    applied twice, and that variant is enforced as a real check.
    """

    results: tuple[CheckResult, ...]
    fgf_checked: int
    fgf_mismatches: int
    fgf_f_fixed_point_mismatches: int
    fgf_g_fixed_point_mismatches: int

    @property
    def ok(self) -> bool:
        return all(r.status != "fail" for r in self.results)


def _subset_pool(n: int, max_exhaustive: int, sample: int, seed: int) -> list[int]:
    if n <= max_exhaustive:
        return list(range(1 << n))
    rng = random.Random(seed)
    pool = {0, (1 << n) - 1}
    while len(pool) < sample:
        pool.add(rng.getrandbits(n))
    return sorted(pool)


def self_check(
    fw: Framework,
    cap: int = DEFAULT_CAP,
    max_exhaustive: int = 12,
    sample: int = 1024,
    seed: int = 0,
) -> SelfCheckReport:
    """Run the semantic invariant suite on one framework.

    Subset-quantified laws are checked over every subset when the
    framework is small, otherwise over a seeded random pool. Extension
    laws need full enumeration and are skipped above the cap.
    """
    n = len(fw.arguments)
    full = (1 << n) - 1
    exhaustive = n <= max_exhaustive
    pool = _subset_pool(n, max_exhaustive, sample, seed)
    f_of = {s: _f_mask(fw, s) for s in pool}
    g_of = {s: _g_mask(fw, s) for s in pool}
    results: list[CheckResult] = []

    def record(name: str, ok: bool, detail: str = "") -> None:
        results.append(CheckResult(name, "pass" if ok else "fail", detail))

    def show(mask: int) -> str:
        return "{" + ", ".join(_ordered_ids(fw, mask)) + "}"

    # Structural laws for the attack relation and the preference.
    record("attacks_within_defeats", set(fw.attacks) <= set(fw.defeats))
    if fw.preference.kind == "none":
        record("empty_preference_keeps_all_defeats", fw.attacks == fw.defeats)
    else:
        results.append(CheckResult("empty_preference_keeps_all_defeats", "skipped",
                                   "preference is not empty"))
    args = fw.arguments
    strict_ok = True
    for a in args:
        for b in args:
            if fw.preference.prefers(a, b) and fw.preference.prefers(b, a):
                strict_ok = False
    transitive_ok = True
    strict = {(a.id, b.id) for a in args for b in args if fw.preference.prefers(a, b)}
    for x, y in strict:
        for y2, z in strict:
            if y == y2 and x != z and (x, z) not in strict:
                transitive_ok = False
    record("preference_strict_part_asymmetric", strict_ok)
    record("preference_strict_part_transitive", transitive_ok)

    # Pointwise operator laws over the pool.
    record("f_of_empty_is_unattacked_class", f_of[0] == _mask_of(fw, class_cr_pref(fw)))
    record("g_of_empty_is_everything", g_of[0] == full)
    record(
        "g_of_everything_is_unattacked_class",
        _g_mask(fw, full) == _mask_of(fw, class_cr_pref(fw)),
    )
    record(
        "unattacked_class_conflict_free",
        _conflict_free_mask(fw, _mask_of(fw, class_cr_pref(fw)), "weak"),
    )

    cf_ok = True
    f_cf_ok = True
    for s in pool:
        if _conflict_free_mask(fw, s, "weak") != (s & ~g_of[s] == 0):
            cf_ok = False
        if _conflict_free_mask(fw, s, "weak") and not _conflict_free_mask(fw, f_of[s], "weak"):
            f_cf_ok = False
    record("conflict_free_iff_within_g", cf_ok)
    record("f_preserves_conflict_freeness", f_cf_ok)

    # Monotonicity over subset pairs.
    f_mono = True
    g_anti = True
    if exhaustive:
        for s in pool:
            sub = s
            while True:
                sub = (sub - 1) & s
                if f_of[sub] & ~f_of[s]:
                    f_mono = False
                if g_of[s] & ~g_of[sub]:
                    g_anti = False
                if sub == 0:
                    break
    else:
        rng = random.Random(seed + 1)
        for s in pool:
            for _ in range(4):
                sub = s & rng.getrandbits(n)
                if _f_mask(fw, sub) & ~f_of[s]:
                    f_mono = False
                if g_of[s] & ~_g_mask(fw, sub):
                    g_anti = False
    record("f_monotone", f_mono)
    record("g_antimonotone", g_anti)

    # Grounded extension laws.
    grounded_ids, _ = grounded_extension(fw)
    grounded = _mask_of(fw, grounded_ids)
    record("grounded_is_fixed_point", _f_mask(fw, grounded) == grounded)
    record("grounded_conflict_free", _conflict_free_mask(fw, grounded, "weak"))
    chain = _mask_of(fw, class_cr_pref(fw))
    union = chain
    while True:
        chain = _f_mask(fw, chain)
        if union | chain == union:
            break
        union |= chain
    record("grounded_is_union_of_f_chain", union == grounded, show(union))

    gfp = _g_mask(fw, grounded)
    record("gfp_is_fixed_point_of_f", _f_mask(fw, gfp) == gfp)
    # Conflict-freeness of the greatest fixed point collapses the whole
    # fixed-point interval: any member outside the grounded extension
    # keeps an attacker inside the gfp.
    record(
        "gfp_conflict_free_iff_equals_grounded",
        _conflict_free_mask(fw, gfp, "weak") == (gfp == grounded),
        show(gfp),
    )

    # Fixed-point laws over the pool, including the f/g interchange tally.
    fgf_checked = 0
    fgf_mismatch = 0
    fgf_f_fp_mismatch = 0
    fgf_g_fp_mismatch = 0
    sandwich_ok = True
    g_fp_ok = True
    f_is_g_twice_ok = True
    for s in pool:
        fs = f_of[s]
        gs = g_of[s]
        fgf_checked += 1
        gfs = g_of[fs] if fs in g_of else _g_mask(fw, fs)
        if _g_mask(fw, gs) != fs:
            f_is_g_twice_ok = False
        if fs != gfs:
            fgf_mismatch += 1
            if fs == s:
                fgf_f_fp_mismatch += 1
            if gs == s:
                fgf_g_fp_mismatch += 1
        if fs == s:
            if s & ~gfp or grounded & ~s:
                sandwich_ok = False
            if _f_mask(fw, gs) != gs:
                g_fp_ok = False
    record("fixed_points_between_grounded_and_gfp", sandwich_ok)
    record("g_of_fixed_point_is_fixed_point", g_fp_ok)
    record("f_step_is_g_step_twice", f_is_g_twice_ok)
    record("f_g_interchange_at_g_fixed_points", fgf_g_fp_mismatch == 0,
           f"{fgf_g_fp_mismatch} mismatches at fixed points of g_step")
    record("f_g_interchange_diagnostic", True,
           f"{fgf_mismatch}/{fgf_checked} pool subsets differ, "
           f"{fgf_f_fp_mismatch} at fixed points of f_step")

    # Extension laws need full enumeration.
    if n <= cap and exhaustive:
        complete = [_mask_of(fw, e) for e in complete_extensions(fw, "weak", cap)]
        stable = [_mask_of(fw, e) for e in stable_extensions(fw, "weak", cap)]
        record("grounded_is_complete", grounded in complete)
        record("grounded_least_complete", all(grounded & ~s == 0 for s in complete))
        record("stable_implies_complete", all(s in complete for s in stable))
        stable_char_ok = True
        for s in pool:
            is_stable = _conflict_free_mask(fw, s, "weak") and g_of[s] == s
            attacks_outside = _conflict_free_mask(fw, s, "weak") and (
                full & ~s & ~_attacked_by(fw, s) == 0
            )
            if is_stable != attacks_outside:
                stable_char_ok = False
        record("stable_iff_attacks_every_outsider", stable_char_ok)
        maximal_ok = True
        for s in stable:
            rest = full & ~s
            sup = rest
            while True:
                candidate = s | sup
                if candidate != s and _conflict_free_mask(fw, candidate, "weak"):
                    maximal_ok = False
                if sup == 0:
                    break
                sup = (sup - 1) & rest
            if not maximal_ok:
                break
        record("stable_maximal_conflict_free", maximal_ok)
        # Only one direction is sound: a conflict-free gfp forces the
        # grounded extension to be the sole complete extension. The
        # converse fails whenever an odd attack cycle (a self-attack
        # included) leaves extra fixed points that are not conflict-free.
        record(
            "gfp_conflict_free_implies_unique_complete",
            not _conflict_free_mask(fw, gfp, "weak") or complete == [grounded],
        )
    else:
        for name in (
            "grounded_is_complete",
            "grounded_least_complete",
            "stable_implies_complete",
            "stable_iff_attacks_every_outsider",
            "stable_maximal_conflict_free",
            "gfp_conflict_free_implies_unique_complete",
        ):
            results.append(CheckResult(name, "skipped", "framework too large to enumerate"))

    return SelfCheckReport(
        results=tuple(results),
        fgf_checked=fgf_checked,
        fgf_mismatches=fgf_mismatch,
        fgf_f_fixed_point_mismatches=fgf_f_fp_mismatch,
        fgf_g_fixed_point_mismatches=fgf_g_fp_mismatch,
    )
