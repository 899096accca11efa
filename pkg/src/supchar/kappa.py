"""Building the class-side partition for a candidate character partition.

Given a partition of the non-trivial character indices (the trivial
character is an implicit extra part), the class side is forced: two classes
can share a part only if every sigma row of the candidate takes equal
values on them.  The builder therefore intersects the per-part level-set
partitions of the non-identity classes, keeping the identity class alone.
The candidate extends to a supercharacter theory exactly when the forced
class partition has the same number of parts as the character side.

Failures are values, not exceptions.  Exceeding the part budget is reported
with a certifying column: restricted to classes 2..column, the rows already
processed force more parts than allowed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Union

from .exactnum import Cyclotomic
from .sigma import SigmaMatrix, indices_of

CharPartition = tuple[int, ...]

TOO_MANY_PARTS: Literal["too_many_parts"] = "too_many_parts"
TOO_FEW_PARTS: Literal["too_few_parts"] = "too_few_parts"


@dataclass(frozen=True)
class KappaFailure:
    """Why a candidate character partition admits no matching class partition."""

    reason: str
    column: int | None = None


@dataclass(frozen=True)
class SuperTheory:
    """A supercharacter theory given by matching character and class partitions.

    x_parts and k_parts are tuples of index masks ordered by part minima,
    both including the index-1 singleton.  st is the square table of
    sigma_X values at one representative class per class part (first
    occurrence order, so the first column belongs to the identity class).
    """

    x_parts: tuple[int, ...]
    k_parts: tuple[int, ...]
    st: tuple[tuple[Cyclotomic, ...], ...]

    @property
    def r(self) -> int:
        return len(self.x_parts)

    def x_indices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(indices_of(m) for m in self.x_parts)

    def k_indices(self) -> tuple[tuple[int, ...], ...]:
        return tuple(indices_of(m) for m in self.k_parts)

    def encoding(self) -> tuple:
        """Canonical identity: the two index partitions."""
        return (self.x_indices(), self.k_indices())

    def sort_key(self) -> tuple:
        return (self.r, self.x_indices(), self.k_indices())


KappaResult = Union[SuperTheory, KappaFailure]


def _sort_parts(parts: CharPartition) -> tuple[int, ...]:
    return tuple(sorted(parts, key=lambda m: m & -m))


def create_kappa(matrix: SigmaMatrix, irrp: CharPartition) -> KappaResult:
    """Force the class partition for a character partition of {2..n}.

    irrp holds the non-trivial parts as masks; the trivial part {1} is
    implicit.  Returns the completed SuperTheory when the class side ends up
    with exactly len(irrp)+1 parts, otherwise a KappaFailure.
    """
    n = matrix.n
    if n < 2:
        raise ValueError("class-partition construction needs at least 2 classes")
    covered = 0
    for mask in irrp:
        if mask == 0 or mask & 1 or mask >= (1 << n) or (covered & mask):
            raise ValueError("parts must be disjoint nonempty subsets of {2..n}")
        covered |= mask
    if covered != (1 << n) - 2:
        raise ValueError("parts must partition the indices 2..n")
    target = len(irrp)  # allowed class parts beyond the identity singleton
    meet = None
    for mask in irrp:
        pid = matrix.level_id(mask)
        meet = pid if meet is None else matrix.meet(meet, pid)
        if matrix.level_count(meet) > target:
            rgs = matrix.level_rgs(meet)
            column = rgs.index(target) + 2
            return KappaFailure(TOO_MANY_PARTS, column)
    count = matrix.level_count(meet)
    if count < target:
        return KappaFailure(TOO_FEW_PARTS, None)
    rgs = matrix.level_rgs(meet)
    k_masks = [0] * count
    reps = [0] * count
    for pos, label in enumerate(rgs):
        j = pos + 2
        k_masks[label] |= 1 << (j - 1)
        if reps[label] == 0:
            reps[label] = j
    x_parts = (1,) + _sort_parts(irrp)
    k_parts = (1,) + tuple(k_masks)
    rep_cols = [1] + reps
    rows = []
    for mask in x_parts:
        values = matrix.sigma_values(mask)
        rows.append(tuple(values[j - 1] for j in rep_cols))
    return SuperTheory(x_parts=x_parts, k_parts=k_parts, st=tuple(rows))


def supercharacter_values(table, part_mask: int) -> tuple[Cyclotomic, ...]:
    """sigma_X on every class, computed directly from the table values.

    Deliberately avoids SigmaMatrix so verification does not share the
    search's code path.
    """
    n = table.n
    order = table.root_order
    out = []
    idxs = indices_of(part_mask)
    for j in range(1, n + 1):
        acc = Cyclotomic.zero(order)
        for i in idxs:
            acc = acc + table.value(i, 1) * table.value(i, j)
        out.append(acc)
    return tuple(out)


def verify_theory(table, theory: SuperTheory) -> bool:
    """Re-check the definition directly from the table.

    Conditions: both sides partition {1..n}, the identity class is alone in
    a part, the sides have equal size, and each sigma_X is constant on each
    class part (matching the stored supercharacter table entry).
    """
    n = table.n
    full = (1 << n) - 1
    for parts in (theory.x_parts, theory.k_parts):
        union = 0
        for mask in parts:
            if mask == 0 or (union & mask):
                return False
            union |= mask
        if union != full:
            return False
    if 1 not in theory.k_parts:
        return False
    if len(theory.x_parts) != len(theory.k_parts):
        return False
    if len(theory.st) != len(theory.x_parts) or any(
        len(row) != len(theory.k_parts) for row in theory.st
    ):
        return False
    for row_idx, x_mask in enumerate(theory.x_parts):
        values = supercharacter_values(table, x_mask)
        for col_idx, k_mask in enumerate(theory.k_parts):
            expected = theory.st[row_idx][col_idx]
            for j in indices_of(k_mask):
                if values[j - 1] != expected:
                    return False
    return True
