"""General results: the avoidance-counting criterion, adjacent-vs-subword
equality, and the stooge-sort normalization machinery.

Permutation comparison throughout is lexicographic on one-line notation
(rearranging a factor to something smaller makes the whole permutation
smaller, which is the property the termination arguments need).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal, Sequence

import numpy as np

from . import engine, perms, relation
from .perms import Perm
from .relation import ReplacementPartition

DownJumpStrategy = Literal["leftmost", "rightmost"]


@dataclass(frozen=True)
class CriterionReport:
    """Outcome of the N_k = A_k avoidance criterion and its propagation."""

    partition_text: str
    c: int
    k: int
    N_k: int
    A_k: int
    holds: bool
    propagation_checked_to: int
    propagation_ok: bool
    per_n: dict[int, tuple[int, int]]  # n -> (N_n, A_n) for checked n > k

    def to_json_dict(self) -> dict:
        return {
            "partition": self.partition_text,
            "c": self.c,
            "k": self.k,
            "N_k": self.N_k,
            "A_k": self.A_k,
            "holds": self.holds,
            "propagation_checked_to": self.propagation_checked_to,
            "propagation_ok": self.propagation_ok,
            "per_n": {str(n): list(v) for n, v in sorted(self.per_n.items())},
        }


@dataclass(frozen=True)
class EqualityReport:
    """Whether factor and subword modes create identical classes."""

    partition_text: str
    k: int
    equal_at_k: bool
    checked_to: int
    equal_through: int | None  # deepest n with equality, None if not at k

    def to_json_dict(self) -> dict:
        return {
            "partition": self.partition_text,
            "k": self.k,
            "equal_at_k": self.equal_at_k,
            "checked_to": self.checked_to,
            "equal_through": self.equal_through,
        }


@dataclass(frozen=True)
class StoogeSets:
    """Minimal lefted/righted/middled representatives per class."""

    n: int
    partition_text: str
    L: tuple[Perm, ...]
    R: tuple[Perm, ...]
    I: tuple[Perm, ...]

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "partition": self.partition_text,
            "L": [perms.format_perm(p) for p in self.L],
            "R": [perms.format_perm(p) for p in self.R],
            "I": [perms.format_perm(p) for p in self.I],
        }


def global_minima(partition: ReplacementPartition) -> tuple[Perm, ...]:
    """Lexicographic minima of the nontrivial parts (the D set)."""
    return partition.D


def count_U_avoiders(n: int, partition: ReplacementPartition) -> int:
    """A_n: permutations avoiding every U pattern as a factor."""
    return engine.count_avoiders(n, partition.c, partition.U)


def repeated_down_jump(
    p: Sequence[int],
    partition: ReplacementPartition,
    strategy: DownJumpStrategy = "leftmost",
) -> Perm:
    """Rewrite U-hits into their part's minimum until no U-hit remains.

    Each step is lexicographically decreasing, so this terminates; when
    the avoidance criterion holds at some k <= n the endpoint does not
    depend on the strategy.
    """
    cur = tuple(p)
    c = partition.c
    while True:
        sites = []
        for i in range(len(cur) - c + 1):
            pat = perms.standardize(cur[i : i + c])
            j = partition.part_index(pat)
            if j is not None and pat != partition.nontrivial_parts[j][0]:
                sites.append((i, partition.nontrivial_parts[j][0]))
        if not sites:
            return cur
        i, d = sites[0] if strategy == "leftmost" else sites[-1]
        cur = relation._rewrite(cur, range(i, i + c), d)


def avoider_criterion(
    partition: ReplacementPartition, k: int, check_to: int | None = None
) -> CriterionReport:
    """Check N_k = A_k (k >= 2c-1) and brute-force the propagation."""
    c = partition.c
    if k < 2 * c - 1:
        raise ValueError(f"criterion needs k >= 2c-1 = {2 * c - 1}, got {k}")
    n_k = engine.enumerate_classes(k, partition).num_classes
    a_k = count_U_avoiders(k, partition)
    holds = n_k == a_k
    top = check_to if check_to is not None else k
    per_n: dict[int, tuple[int, int]] = {}
    ok = holds
    if holds:
        for n in range(k + 1, top + 1):
            nn = engine.enumerate_classes(n, partition).num_classes
            an = count_U_avoiders(n, partition)
            per_n[n] = (nn, an)
            if nn != an:
                ok = False
    return CriterionReport(
        partition_text=partition.text(),
        c=c,
        k=k,
        N_k=n_k,
        A_k=a_k,
        holds=holds,
        propagation_checked_to=top,
        propagation_ok=ok,
        per_n=per_n,
    )


def adjacent_equals_subword(
    partition: ReplacementPartition, k: int, check_to: int | None = None
) -> EqualityReport:
    """Compare factor- and subword-mode class decompositions at k..check_to."""
    if k <= partition.c:
        raise ValueError(f"need k > c = {partition.c}")
    top = check_to if check_to is not None else k

    def equal_at(n: int) -> bool:
        a = engine.enumerate_classes(n, partition, mode="factor")
        b = engine.enumerate_classes(n, partition, mode="subword")
        return bool(np.array_equal(a.class_id, b.class_id))

    eq_k = equal_at(k)
    through = None
    if eq_k:
        through = k
        for n in range(k + 1, top + 1):
            if not equal_at(n):
                break
            through = n
    return EqualityReport(
        partition_text=partition.text(),
        k=k,
        equal_at_k=eq_k,
        checked_to=top,
        equal_through=through,
    )


def stooge_sets(n: int, partition: ReplacementPartition) -> StoogeSets:
    """L_n / R_n / I_n: the smallest lefted/righted/middled member of each
    class that has one."""
    if n < partition.c + 1:
        raise ValueError(f"stooge sets need n >= c+1 = {partition.c + 1}")
    dec = engine.enumerate_classes(n, partition)
    best: dict[str, dict[int, Perm]] = {"L": {}, "R": {}, "I": {}}
    for r in range(len(dec.class_id)):
        p = perms.unrank(r, n)
        cid = int(dec.class_id[r])
        kinds = []
        if relation.is_lefted(p, partition):
            kinds.append("L")
        if relation.is_righted(p, partition):
            kinds.append("R")
        if n >= partition.c + 2 and relation.is_middled(p, partition):
            kinds.append("I")
        for kind in kinds:
            if cid not in best[kind]:  # rank order = lexicographic order
                best[kind][cid] = p
    return StoogeSets(
        n=n,
        partition_text=partition.text(),
        L=tuple(sorted(best["L"].values())),
        R=tuple(sorted(best["R"].values())),
        I=tuple(sorted(best["I"].values())),
    )


class _SideNormalizer:
    """Rearranges an (n-1)-letter flank to its class's L/R representative."""

    def __init__(self, n: int, partition: ReplacementPartition):
        self.partition = partition
        sets = stooge_sets(n - 1, partition)
        dec = engine.enumerate_classes(n - 1, partition)
        self.left_of: dict[int, Perm] = {
            dec.class_of_perm(p): p for p in sets.L
        }
        self.right_of: dict[int, Perm] = {
            dec.class_of_perm(p): p for p in sets.R
        }
        self.dec = dec

    def _target(self, word: Sequence[int], table: dict[int, Perm]) -> tuple[int, ...]:
        std = perms.standardize(word)
        target = table[self.dec.class_of_perm(std)]
        letters = sorted(word)
        return tuple(letters[t - 1] for t in target)

    def l(self, w: Perm) -> Perm:
        return self._target(w[:-1], self.left_of) + w[-1:]

    def r(self, w: Perm) -> Perm:
        return w[:1] + self._target(w[1:], self.right_of)


@lru_cache(maxsize=32)
def _side_normalizer(n: int, partition: ReplacementPartition) -> _SideNormalizer:
    return _SideNormalizer(n, partition)


def stooge_normalize(
    p: Sequence[int], partition: ReplacementPartition
) -> Perm:
    """Alternate rearranging the first and last n-1 letters to their
    L_{n-1} / R_{n-1} members until fixed.

    Requires a middled input (so the flanks always have lefted/righted
    class members); each application is lexicographically non-increasing,
    so the alternation terminates.
    """
    w = perms.as_perm(p)
    n = len(w)
    if n < partition.c + 2:
        raise ValueError(f"stooge normalization needs n >= c+2 = {partition.c + 2}")
    if not relation.is_middled(w, partition):
        raise ValueError(f"{perms.format_perm(w)} is not middled")
    norm = _side_normalizer(n, partition)
    while True:
        nxt = norm.r(norm.l(w))
        if nxt == w:
            return w
        w = nxt


def middled_reachability(n: int, partition: ReplacementPartition) -> bool:
    """Every nontrivial class contains a middled permutation (engine check)."""
    dec = engine.enumerate_classes(n, partition)
    has_middled = np.zeros(dec.num_classes, dtype=bool)
    for r in range(len(dec.class_id)):
        p = perms.unrank(r, n)
        if relation.is_middled(p, partition):
            has_middled[dec.class_id[r]] = True
    nontrivial = dec.class_sizes > 1
    return bool(has_middled[nontrivial].all())
