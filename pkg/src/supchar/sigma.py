"""Weighted character-sum rows and the distinguishing-part test.

For a subset X of characters, sigma_X is the class function
sum_{chi in X} chi(1) * chi.  A nonempty subset of the non-trivial indices
{2..n} is a *bad part* when sigma_X takes pairwise distinct values on the
non-identity classes: such a part forces the class side of any containing
theory to split completely, so partitions using it (other than the
all-singleton one) can never extend to a supercharacter theory.

Index subsets are plain ints used as bitmasks: bit j-1 set means index j is
in the subset, so masks stay within one machine word for n <= 64.

SigmaMatrix also caches, per part, the partition of the non-identity
classes into level sets of sigma_X (as a restricted-growth label string),
plus memoized pairwise meets of those partitions; the class-partition
builder consumes these.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

import numpy as np

from .chartab import CharacterTable
from .exactnum import Cyclotomic, _context

_INT64_GUARD = 1 << 60


def mask_of(indices: Iterable[int]) -> int:
    """Bitmask of 1-based indices."""
    m = 0
    for i in indices:
        if i < 1:
            raise ValueError(f"indices are 1-based, got {i}")
        m |= 1 << (i - 1)
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    """Sorted 1-based indices of a bitmask."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


@dataclass(frozen=True)
class BadPartSet:
    """Bad parts in global mask encoding."""

    masks: frozenset[int]

    @property
    def count(self) -> int:
        return len(self.masks)

    def __contains__(self, mask: int) -> bool:
        return mask in self.masks

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.masks))


class SigmaMatrix:
    """Degree-weighted character rows of one table, with level-set caches."""

    def __init__(self, table: CharacterTable):
        self.table = table
        self.n = table.n
        self.degree = _context(table.root_order).degree
        base_rows = []
        for i in range(self.n):
            d = table.values[i][0]
            base_rows.append(tuple(d * v for v in table.values[i]))
        self.base: tuple[tuple[Cyclotomic, ...], ...] = tuple(base_rows)
        self._vecs = [
            [v.coeff_vector() for v in row] for row in self.base
        ]
        self._np_blocks = self._build_np_blocks()
        # level-partition caches (append-only; safe under the GIL)
        self._level_ids: dict[int, int] = {}
        self._interned: dict[tuple[int, ...], int] = {}
        self._id_rgs: list[tuple[int, ...]] = []
        self._id_counts: list[int] = []
        self._meets: dict[tuple[int, int], int] = {}

    # -- fast-path setup -----------------------------------------------------

    def _build_np_blocks(self):
        flat = [c for row in self._vecs for vec in row for c in vec]
        if not all(isinstance(c, int) for c in flat):
            return None
        bound = max((abs(c) for c in flat), default=0)
        if (self.n + 1) * max(bound, 1) >= _INT64_GUARD:
            return None
        if self.n < 2:
            return None
        # blocks[p][c-2] = coefficient vector of row p+2 on class c
        return [
            np.array(self._vecs[i][1:], dtype=np.int64) for i in range(1, self.n)
        ]

    # -- sigma values ----------------------------------------------------------

    def _part_vectors(self, part_mask: int, cols: range) -> list[list]:
        vecs = [[0] * self.degree for _ in cols]
        m = part_mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            row = self._vecs[i]
            for slot, j in enumerate(cols):
                rv = row[j]
                tv = vecs[slot]
                for a in range(self.degree):
                    c = rv[a]
                    if c:
                        tv[a] += c
        return vecs

    def sigma_values(self, part_mask: int) -> tuple[Cyclotomic, ...]:
        """sigma_X on every class, identity first."""
        if part_mask <= 0 or part_mask >= (1 << self.n):
            raise ValueError(f"part mask {part_mask:#x} out of range for n={self.n}")
        order = self.table.root_order
        vecs = self._part_vectors(part_mask, range(self.n))
        return tuple(
            Cyclotomic(order, tuple((e, c) for e, c in enumerate(vec) if c), _reduced=True)
            for vec in vecs
        )

    # -- level-set partitions ---------------------------------------------------

    def _intern(self, rgs: tuple[int, ...]) -> int:
        pid = self._interned.get(rgs)
        if pid is None:
            pid = len(self._id_rgs)
            self._id_rgs.append(rgs)
            self._id_counts.append((max(rgs) + 1) if rgs else 0)
            self._interned[rgs] = pid
        return pid

    def level_id(self, part_mask: int) -> int:
        """Interned id of the level-set partition of classes 2..n under sigma_part."""
        pid = self._level_ids.get(part_mask)
        if pid is None:
            vecs = self._part_vectors(part_mask, range(1, self.n))
            labels: dict[tuple, int] = {}
            rgs = []
            for vec in vecs:
                key = tuple(vec)
                label = labels.get(key)
                if label is None:
                    label = len(labels)
                    labels[key] = label
                rgs.append(label)
            pid = self._intern(tuple(rgs))
            self._level_ids[part_mask] = pid
        return pid

    def level_rgs(self, pid: int) -> tuple[int, ...]:
        return self._id_rgs[pid]

    def level_count(self, pid: int) -> int:
        return self._id_counts[pid]

    def meet(self, a: int, b: int) -> int:
        """Common refinement of two interned class partitions."""
        if a == b:
            return a
        if self._id_counts[a] == self.n - 1:
            return a
        if self._id_counts[b] == self.n - 1:
            return b
        if a > b:
            a, b = b, a
        key = (a, b)
        out = self._meets.get(key)
        if out is None:
            ra, rb = self._id_rgs[a], self._id_rgs[b]
            labels: dict[tuple[int, int], int] = {}
            rgs = []
            for pair in zip(ra, rb):
                label = labels.get(pair)
                if label is None:
                    label = len(labels)
                    labels[pair] = label
                rgs.append(label)
            out = self._intern(tuple(rgs))
            self._meets[key] = out
        return out


def sigma_matrix(t: CharacterTable) -> SigmaMatrix:
    """Matrix of the rows chi(1)*chi for every character of the table."""
    return SigmaMatrix(t)


def sigma_of_part(matrix: SigmaMatrix, part_mask: int) -> tuple[Cyclotomic, ...]:
    """Values of sigma_X on all classes (identity first) for X given as a mask."""
    return matrix.sigma_values(part_mask)


def _check_part_argument(matrix: SigmaMatrix, part_mask: int) -> None:
    if part_mask == 0:
        raise ValueError("part is empty")
    if part_mask & 1:
        raise ValueError("part may not contain index 1 (the trivial character)")
    if part_mask >= (1 << matrix.n):
        raise ValueError(f"part mask {part_mask:#x} out of range for n={matrix.n}")


def is_bad_part(matrix: SigmaMatrix, part_mask: int) -> bool:
    """True when sigma_part separates all non-identity classes pairwise."""
    _check_part_argument(matrix, part_mask)
    vecs = matrix._part_vectors(part_mask, range(1, matrix.n))
    return len({tuple(v) for v in vecs}) == matrix.n - 1


def find_bad_parts(t: CharacterTable, *, matrix: SigmaMatrix | None = None) -> BadPartSet:
    """All bad parts among the nonempty subsets of {2..n}, as global masks.

    Subsets are scanned in Gray-code order so each step updates the running
    sigma sums by one character row.
    """
    m = matrix if matrix is not None else SigmaMatrix(t)
    n = m.n
    if n < 2:
        return BadPartSet(frozenset())
    if m._np_blocks is not None:
        return BadPartSet(frozenset(_find_bad_parts_int64(m)))
    return BadPartSet(frozenset(_find_bad_parts_exact(m)))


def _find_bad_parts_int64(m: SigmaMatrix) -> list[int]:
    n = m.n
    blocks = m._np_blocks
    state = np.zeros((n - 1, m.degree), dtype=np.int64)
    cur = 0
    bad = []
    want = n - 1
    for g in range(1, 1 << (n - 1)):
        low = g & -g
        p = low.bit_length() - 1
        bit = 1 << p
        cur ^= bit
        if cur & bit:
            state += blocks[p]
        else:
            state -= blocks[p]
        keys = {state[c].tobytes() for c in range(want)}
        if len(keys) == want:
            bad.append(cur << 1)
    return bad


def _find_bad_parts_exact(m: SigmaMatrix) -> list[int]:
    n = m.n
    deg = m.degree
    rows = [m._vecs[i][1:] for i in range(1, n)]  # rows[p][c-2]
    state = [[0] * deg for _ in range(n - 1)]
    cur = 0
    bad = []
    want = n - 1
    for g in range(1, 1 << (n - 1)):
        low = g & -g
        p = low.bit_length() - 1
        bit = 1 << p
        cur ^= bit
        sign = 1 if cur & bit else -1
        block = rows[p]
        for c in range(want):
            vec = state[c]
            bv = block[c]
            for a in range(deg):
                coeff = bv[a]
                if coeff:
                    vec[a] += coeff if sign > 0 else -coeff
        keys = {tuple(state[c]) for c in range(want)}
        if len(keys) == want:
            bad.append(cur << 1)
    return bad


def alpha_ratio(t: CharacterTable, *, bad: BadPartSet | None = None) -> Fraction:
    """Share of bad parts among the 2^(n-1) - 1 candidate parts, exact."""
    if t.n < 2:
        raise ValueError("alpha ratio needs at least one non-trivial index")
    if bad is None:
        bad = find_bad_parts(t)
    return Fraction(bad.count, (1 << (t.n - 1)) - 1)
