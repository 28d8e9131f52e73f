"""Replacement partitions of S_c and the one-step transformation relation.

A replacement partition groups the patterns of S_c into disjoint parts;
only parts of size >= 2 ("nontrivial") matter, and unlisted patterns are
implicitly singletons.  Text syntax is concatenated brace groups, e.g.
``{123,321}{132,231}``; whitespace is ignored.

A *hit* in a permutation is a length-c factor whose standardization lies
in a nontrivial part; a one-step transformation rearranges a hit's
letters so the factor standardizes to another member of the same part.
Subword mode does the same over non-adjacent index tuples, permuting the
values at the chosen indices in place.

Within each nontrivial part the lexicographic minimum is the part's D
pattern; the remaining members form U.  Rewriting a U-hit into its
part's D pattern (a "down jump") is strictly lexicographically
decreasing, which is what makes repeated down jumps terminate.
"""

from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Literal, Sequence

from . import perms
from .errors import PartitionParseError
from .perms import Perm

Mode = Literal["factor", "subword"]

#: nontrivial parts with patterns longer than this are refused by default
#: (the enumeration engine's cost explodes in c); override with allow_large_c.
MAX_PATTERN_LEN = 6


@dataclass(frozen=True)
class ReplacementPartition:
    """A set partition of S_c, stored by its nontrivial parts.

    Parts are kept in canonical order: patterns inside a part sorted
    lexicographically, parts sorted by their lexicographic minimum.  This
    makes serialization deterministic.
    """

    c: int
    nontrivial_parts: tuple[tuple[Perm, ...], ...]
    _part_of: dict[Perm, int] = field(
        default_factory=dict, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        for i, part in enumerate(self.nontrivial_parts):
            for pat in part:
                self._part_of[pat] = i

    def part_index(self, pattern: Perm) -> int | None:
        """Index into nontrivial_parts, or None for singleton patterns."""
        return self._part_of.get(pattern)

    @property
    def parts(self) -> tuple[tuple[Perm, ...], ...]:
        """All parts including the implicit singletons, canonical order."""
        listed = {p for part in self.nontrivial_parts for p in part}
        singles = tuple(
            (p,) for p in perms.all_perms(self.c) if p not in listed
        )
        return tuple(sorted(self.nontrivial_parts + singles))

    @property
    def D(self) -> tuple[Perm, ...]:
        """Per-nontrivial-part lexicographic minima."""
        return tuple(part[0] for part in self.nontrivial_parts)

    @property
    def U(self) -> tuple[Perm, ...]:
        """Nontrivial-part members that are not their part's minimum."""
        return tuple(
            p for part in self.nontrivial_parts for p in part[1:]
        )

    @property
    def nontrivial_patterns(self) -> tuple[Perm, ...]:
        return tuple(p for part in self.nontrivial_parts for p in part)

    def text(self) -> str:
        """Canonical serialization, e.g. ``{123,321}{132,231}``."""
        return "".join(
            "{" + ",".join(perms.format_perm(p) for p in part) + "}"
            for part in self.nontrivial_parts
        )

    def __str__(self) -> str:
        return self.text()


def make_partition(
    nontrivial_parts: Iterable[Iterable[Sequence[int]]],
    c: int | None = None,
    allow_large_c: bool = False,
) -> ReplacementPartition:
    """Build a partition from its nontrivial parts, canonicalizing order."""
    parts = []
    seen: dict[Perm, int] = {}
    for part in nontrivial_parts:
        pats = sorted(perms.as_perm(p) for p in part)
        if not pats:
            continue
        if len(pats) == 1:
            warnings.warn(
                f"part {{{perms.format_perm(pats[0])}}} has a single pattern; "
                "treating it as trivial",
                stacklevel=2,
            )
            continue
        if len(set(pats)) != len(pats):
            raise PartitionParseError(f"duplicate pattern inside a part: {pats}")
        for p in pats:
            if p in seen:
                raise PartitionParseError(
                    f"pattern {perms.format_perm(p)} appears in two parts"
                )
            seen[p] = 1
        parts.append(tuple(pats))
    lens = {len(p) for pats in parts for p in pats}
    if len(lens) > 1:
        raise PartitionParseError(f"mixed pattern lengths: {sorted(lens)}")
    if c is None:
        if not lens:
            raise PartitionParseError("cannot infer pattern length: no nontrivial part")
        c = lens.pop()
    elif lens and lens != {c}:
        raise PartitionParseError(f"patterns have length {lens.pop()}, expected {c}")
    if parts and c > MAX_PATTERN_LEN and not allow_large_c:
        raise PartitionParseError(
            f"pattern length {c} exceeds the default limit {MAX_PATTERN_LEN}; "
            "pass allow_large_c=True to override"
        )
    return ReplacementPartition(c=c, nontrivial_parts=tuple(sorted(parts)))


def singleton_partition(c: int) -> ReplacementPartition:
    """The all-singleton partition of S_c (the discrete equivalence)."""
    return ReplacementPartition(c=c, nontrivial_parts=())


_BRACE_GROUP = re.compile(r"\{([^{}]*)\}")


def parse_partition(text: str, allow_large_c: bool = False) -> ReplacementPartition:
    """Parse the brace-group abbreviation, e.g. ``{123,321}{132,231}``."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise PartitionParseError("empty partition text")
    groups = _BRACE_GROUP.findall(s)
    if _BRACE_GROUP.sub("", s):
        raise PartitionParseError(f"stray characters outside brace groups: {text!r}")
    parts = []
    for g in groups:
        if not g:
            raise PartitionParseError("empty brace group")
        try:
            parts.append([perms.parse_perm(tok) for tok in g.split(",") if tok])
        except ValueError as e:
            raise PartitionParseError(f"bad pattern token in {{{g}}}: {e}") from e
    lens = {len(p) for part in parts for p in part}
    if len(lens) != 1:
        raise PartitionParseError(f"mixed pattern lengths: {sorted(lens)}")
    return make_partition(parts, c=lens.pop(), allow_large_c=allow_large_c)


@dataclass(frozen=True)
class Transformation:
    """One rewrite step: source and target differ only at ``indices``.

    ``indices`` are 1-based positions; consecutive in factor mode.  The
    factor/subword at those indices standardizes to from_pattern in the
    source and to_pattern in the target, both in the same part.
    """

    source: Perm
    target: Perm
    indices: tuple[int, ...]
    from_pattern: Perm
    to_pattern: Perm

    @property
    def position(self) -> int:
        """1-based start position of the rewritten factor/subword."""
        return self.indices[0]


def hits(p: Sequence[int], partition: ReplacementPartition) -> list[tuple[int, Perm]]:
    """All (1-based position, pattern) with the factor there in a nontrivial part."""
    c = partition.c
    out = []
    for i in range(len(p) - c + 1):
        pat = perms.standardize(p[i : i + c])
        if partition.part_index(pat) is not None:
            out.append((i + 1, pat))
    return out


def subword_hits(
    p: Sequence[int], partition: ReplacementPartition
) -> list[tuple[tuple[int, ...], Perm]]:
    """Subword-mode hits: (1-based index tuple, pattern) pairs."""
    c = partition.c
    out = []
    for idx in itertools.combinations(range(len(p)), c):
        pat = perms.standardize(tuple(p[i] for i in idx))
        if partition.part_index(pat) is not None:
            out.append((tuple(i + 1 for i in idx), pat))
    return out


def is_avoider(p: Sequence[int], partition: ReplacementPartition) -> bool:
    """True iff p contains no hit."""
    c = partition.c
    for i in range(len(p) - c + 1):
        if partition.part_index(perms.standardize(p[i : i + c])) is not None:
            return False
    return True


def _rewrite(p: Sequence[int], idx: Sequence[int], target: Perm) -> Perm:
    """Rearrange the letters at idx (0-based) so they standardize to target."""
    letters = sorted(p[i] for i in idx)
    out = list(p)
    for i, t in zip(idx, target):
        out[i] = letters[t - 1]
    return tuple(out)


def neighbors(
    p: Sequence[int],
    partition: ReplacementPartition,
    mode: Mode = "factor",
) -> list[Transformation]:
    """All one-step transformations applicable to p."""
    p = tuple(p)
    c = partition.c
    out = []
    if mode == "factor":
        sites = [
            (tuple(range(i, i + c)), perms.standardize(p[i : i + c]))
            for i in range(len(p) - c + 1)
        ]
    elif mode == "subword":
        sites = [
            (idx, perms.standardize(tuple(p[i] for i in idx)))
            for idx in itertools.combinations(range(len(p)), c)
        ]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for idx, pat in sites:
        k = partition.part_index(pat)
        if k is None:
            continue
        for q in partition.nontrivial_parts[k]:
            if q == pat:
                continue
            out.append(
                Transformation(
                    source=p,
                    target=_rewrite(p, idx, q),
                    indices=tuple(i + 1 for i in idx),
                    from_pattern=pat,
                    to_pattern=q,
                )
            )
    return out


def down_jumps(p: Sequence[int], partition: ReplacementPartition) -> list[Perm]:
    """Targets of rewriting some U-hit into its part's D pattern."""
    p = tuple(p)
    c = partition.c
    out = []
    for i in range(len(p) - c + 1):
        pat = perms.standardize(p[i : i + c])
        k = partition.part_index(pat)
        if k is None:
            continue
        d = partition.nontrivial_parts[k][0]
        if pat != d:
            out.append(_rewrite(p, range(i, i + c), d))
    return out


def is_u_avoider(p: Sequence[int], partition: ReplacementPartition) -> bool:
    """True iff no factor of p standardizes to a U pattern."""
    c = partition.c
    u = set(partition.U)
    return not any(
        perms.standardize(p[i : i + c]) in u for i in range(len(p) - c + 1)
    )


def is_lefted(p: Sequence[int], partition: ReplacementPartition) -> bool:
    """A hit exists within the final n-1 letters."""
    return any(pos >= 2 for pos, _ in hits(p, partition))


def is_righted(p: Sequence[int], partition: ReplacementPartition) -> bool:
    """A hit exists within the first n-1 letters."""
    n, c = len(p), partition.c
    return any(pos + c - 1 <= n - 1 for pos, _ in hits(p, partition))


def is_middled(p: Sequence[int], partition: ReplacementPartition) -> bool:
    """A hit exists that uses neither the first nor the last letter."""
    n, c = len(p), partition.c
    return any(2 <= pos and pos + c - 1 <= n - 1 for pos, _ in hits(p, partition))


def _map_partition(
    partition: ReplacementPartition, op
) -> ReplacementPartition:
    return make_partition(
        [[op(p) for p in part] for part in partition.nontrivial_parts],
        c=partition.c,
    )


def symmetry_orbit(
    partition: ReplacementPartition,
) -> tuple[ReplacementPartition, ...]:
    """Orbit under part-wise reverse/complement (a Klein four-group for c >= 3).

    Class counts in S_n are equal across the orbit.
    """
    orbit = {
        partition,
        _map_partition(partition, perms.reverse),
        _map_partition(partition, perms.complement),
        _map_partition(partition, lambda p: perms.reverse(perms.complement(p))),
    }
    return tuple(sorted(orbit, key=ReplacementPartition.text))


def lift_partition(partition: ReplacementPartition) -> ReplacementPartition:
    """The partition of S_{c+1} whose parts are the K-equivalence classes.

    The lifted partition generates the same equivalence on S_n for n > c.
    """
    from . import engine  # deferred: engine depends on this module

    dec = engine.enumerate_classes(partition.c + 1, partition, mode="factor")
    classes: dict[int, list[Perm]] = {}
    for r, cid in enumerate(dec.class_id):
        classes.setdefault(int(cid), []).append(perms.unrank(r, partition.c + 1))
    return make_partition(
        [members for members in classes.values() if len(members) > 1],
        c=partition.c + 1,
        allow_large_c=True,
    )
