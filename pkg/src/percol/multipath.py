"""
Periodic colorings of the infinite multipath graphs C∞·K̄n and C∞·Kn.

This module provides:
- Immutable value types: ``Family``, ``PeriodicColoring``, ``ParameterMatrix``
- Perfectness verification and parameter-matrix inference
- Canonical forms up to rotation, reflection, primitive root and color renaming

A coloring is stored as a period of block profiles. A block profile is the
count vector ``(N_0, ..., N_{k-1})`` of one block (one copy of K̄n or Kn).
Vertices inside a block are interchangeable, so the profile is all that
matters for perfectness.

Example usage:
    >>> from percol.multipath import PeriodicColoring, infer_matrix
    >>> c = PeriodicColoring.from_path([2, 1, 0, 0, 1, 2])
    >>> print(infer_matrix(c))
    1 1 0
    1 0 1
    0 1 1
"""

from dataclasses import dataclass
from enum import Enum
from itertools import permutations, product
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

BlockProfile = Tuple[int, ...]
"""Count vector over colors for one block."""


class ColoringError(ValueError):
    """Raised when a coloring, family or matrix violates its invariants."""

    pass


class ColorAbsentError(ValueError):
    """Raised when a color is queried at a block that does not contain it."""

    pass


@dataclass(frozen=True)
class NotPerfect:
    """Witness that a coloring is not perfect.

    Two sites carrying the same color see different neighbor color counts.
    For periodic colorings a site is a block index; for finite graphs it is
    a vertex index.
    """

    color: int
    first_site: int
    site: int
    expected: Tuple[int, ...]
    found: Tuple[int, ...]

    def __str__(self) -> str:
        return (
            f"color {self.color}: site {self.first_site} sees {list(self.expected)}, "
            f"site {self.site} sees {list(self.found)}"
        )


class NotPerfectError(ValueError):
    """Raised when a coloring that must be perfect is not."""

    def __init__(self, witness: NotPerfect) -> None:
        self.witness = witness
        super().__init__(f"Coloring is not perfect: {witness}")


# Families


class Kind(str, Enum):
    """Block type of a multipath family."""

    EMPTY = "empty"
    COMPLETE = "complete"


@dataclass(frozen=True)
class Family:
    """A multipath graph C∞·K̄n (``Kind.EMPTY``) or C∞·Kn (``Kind.COMPLETE``)."""

    kind: Kind
    n: int

    def __post_init__(self) -> None:
        if not isinstance(self.kind, Kind):
            try:
                object.__setattr__(self, "kind", Kind(self.kind))
            except ValueError:
                raise ColoringError(f"Unknown family kind: {self.kind!r}") from None
        if not isinstance(self.n, int) or self.n < 1:
            raise ColoringError(f"Block size must be a positive integer, got {self.n!r}")

    @classmethod
    def empty(cls, n: int) -> "Family":
        return cls(Kind.EMPTY, n)

    @classmethod
    def complete(cls, n: int) -> "Family":
        return cls(Kind.COMPLETE, n)

    @classmethod
    def path(cls) -> "Family":
        """The infinite path C∞ itself, i.e. C∞·K̄1."""
        return cls(Kind.EMPTY, 1)

    @property
    def degree(self) -> int:
        """Common vertex degree: 2n for empty blocks, 3n-1 for complete blocks."""
        if self.kind is Kind.EMPTY:
            return 2 * self.n
        return 3 * self.n - 1

    def __str__(self) -> str:
        return f"{self.kind.value}(n={self.n})"


# Profile arithmetic


def unit(k: int, color: int, scale: int = 1) -> BlockProfile:
    """Return ``scale`` times the unit count vector of ``color`` over ``k`` colors."""
    return tuple(scale if j == color else 0 for j in range(k))


def add_profiles(a: Sequence[int], b: Sequence[int]) -> BlockProfile:
    return tuple(x + y for x, y in zip(a, b))


def sub_profiles(a: Sequence[int], b: Sequence[int]) -> BlockProfile:
    return tuple(x - y for x, y in zip(a, b))


def support(profile: Sequence[int]) -> Tuple[int, ...]:
    """Colors with positive count in ``profile``."""
    return tuple(j for j, count in enumerate(profile) if count > 0)


def all_profiles(n: int, k: int) -> List[BlockProfile]:
    """All count vectors over ``k`` colors summing to ``n``, in lexicographic order."""
    if k == 0:
        return [()] if n == 0 else []
    if k == 1:
        return [(n,)]
    result: List[BlockProfile] = []
    for first in range(n + 1):
        for rest in all_profiles(n - first, k - 1):
            result.append((first,) + rest)
    return result


def profile_count(n: int, k: int) -> int:
    """Number of block profiles: C(n+k-1, k-1)."""
    return comb(n + k - 1, k - 1)


# Parameter matrices


@dataclass(frozen=True)
class ParameterMatrix:
    """Square nonnegative integer matrix M = (m_ij) of a perfect coloring.

    Row ``i`` counts, per color ``j``, the neighbors of color ``j`` around any
    vertex of color ``i``.
    """

    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(x) for x in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        size = len(rows)
        if size == 0:
            raise ColoringError("Parameter matrix must have at least one row")
        for row in rows:
            if len(row) != size:
                raise ColoringError(f"Parameter matrix must be square, got row {list(row)}")
            if any(x < 0 for x in row):
                raise ColoringError(f"Parameter matrix entries must be nonnegative: {list(row)}")

    @property
    def size(self) -> int:
        return len(self.rows)

    def __len__(self) -> int:
        return len(self.rows)

    def __getitem__(self, color: int) -> Tuple[int, ...]:
        return self.rows[color]

    def row_sums(self) -> Tuple[int, ...]:
        return tuple(sum(row) for row in self.rows)

    def is_zero_symmetric(self) -> bool:
        """True iff m_ij = 0 exactly when m_ji = 0."""
        k = self.size
        return all(
            (self.rows[i][j] == 0) == (self.rows[j][i] == 0) for i in range(k) for j in range(k)
        )

    def renamed(self, renaming: Sequence[int]) -> "ParameterMatrix":
        """Return the matrix after the bijective renaming ``old -> renaming[old]``."""
        k = self.size
        if sorted(renaming) != list(range(k)):
            raise ColoringError(f"Renaming {list(renaming)} is not a permutation of 0..{k - 1}")
        rows = [[0] * k for _ in range(k)]
        for i in range(k):
            for j in range(k):
                rows[renaming[i]][renaming[j]] = self.rows[i][j]
        return ParameterMatrix(tuple(tuple(row) for row in rows))

    def __str__(self) -> str:
        width = max(len(str(x)) for row in self.rows for x in row)
        return "\n".join(" ".join(str(x).rjust(width) for x in row) for row in self.rows)


# Periodic colorings


def _rank_labels(labels: Sequence[int]) -> Dict[int, int]:
    """Map arbitrary integer labels to contiguous colors by sorted value."""
    return {label: rank for rank, label in enumerate(sorted(set(labels)))}


@dataclass(frozen=True)
class PeriodicColoring:
    """A periodic coloring of a multipath family, stored as block profiles.

    Parameters
    ----------
    family : Family
        The multipath graph being colored.
    colors : int
        Number of colors k; every color in 0..k-1 occurs somewhere.
    period : tuple of BlockProfile
        ``period[i][j]`` is the number of ``j``-colored vertices in block ``i``.
        Block indices are taken modulo ``len(period)``.
    """

    family: Family
    colors: int
    period: Tuple[BlockProfile, ...]

    def __post_init__(self) -> None:
        period = tuple(tuple(int(x) for x in profile) for profile in self.period)
        object.__setattr__(self, "period", period)
        if not isinstance(self.family, Family):
            raise ColoringError(f"Expected Family, got {type(self.family).__name__}")
        if self.colors < 1:
            raise ColoringError(f"Number of colors must be positive, got {self.colors}")
        if not period:
            raise ColoringError("Period must contain at least one block")
        used = [False] * self.colors
        for i, profile in enumerate(period):
            if len(profile) != self.colors:
                raise ColoringError(
                    f"Block {i} has {len(profile)} counts, expected {self.colors}"
                )
            if any(x < 0 for x in profile):
                raise ColoringError(f"Block {i} has a negative count: {list(profile)}")
            if sum(profile) != self.family.n:
                raise ColoringError(
                    f"Block {i} counts sum to {sum(profile)}, expected {self.family.n}"
                )
            for j in support(profile):
                used[j] = True
        unused = [j for j, flag in enumerate(used) if not flag]
        if unused:
            raise ColoringError(f"Colors {unused} do not occur in any block")

    # Constructors

    @classmethod
    def normalized(
        cls, family: Family, period: Sequence[Sequence[int]]
    ) -> "PeriodicColoring":
        """Build a coloring, dropping colors that occur in no block."""
        rows = [tuple(profile) for profile in period]
        if not rows:
            raise ColoringError("Period must contain at least one block")
        width = max(len(row) for row in rows)
        rows = [row + (0,) * (width - len(row)) for row in rows]
        kept = [j for j in range(width) if any(row[j] > 0 for row in rows)]
        return cls(family, len(kept), tuple(tuple(row[j] for j in kept) for row in rows))

    @classmethod
    def from_blocks(
        cls, family: Family, blocks: Sequence[Sequence[int]]
    ) -> "PeriodicColoring":
        """Build a coloring from the vertex colors of each block.

        Labels may be arbitrary integers; they are compacted by sorted value.
        """
        ranks = _rank_labels([label for block in blocks for label in block])
        k = len(ranks)
        period = []
        for block in blocks:
            counts = [0] * k
            for label in block:
                counts[ranks[label]] += 1
            period.append(tuple(counts))
        return cls(family, k, tuple(period))

    @classmethod
    def from_path(
        cls, colors: Sequence[int], family: Optional[Family] = None
    ) -> "PeriodicColoring":
        """Build a block-monochrome coloring from one color per block.

        With the default family this is a coloring of the infinite path C∞.
        """
        family = family or Family.path()
        return cls.from_blocks(family, [[c] * family.n for c in colors])

    # Views

    @property
    def p(self) -> int:
        """Period length in blocks."""
        return len(self.period)

    def profile(self, block: int) -> BlockProfile:
        return self.period[block % self.p]

    def support(self, block: int) -> Tuple[int, ...]:
        return support(self.profile(block))

    def block_colors(self) -> Tuple[Tuple[int, ...], ...]:
        """Labeled export: each block's vertex colors in nondecreasing order."""
        return tuple(
            tuple(j for j, count in enumerate(profile) for _ in range(count))
            for profile in self.period
        )

    def is_block_monochrome(self) -> bool:
        return all(len(support(profile)) == 1 for profile in self.period)

    def path_colors(self) -> Tuple[int, ...]:
        """The color of each block of a block-monochrome coloring."""
        if not self.is_block_monochrome():
            raise ColoringError("Coloring is not block-monochrome")
        return tuple(support(profile)[0] for profile in self.period)

    # Period transformations

    def rotated(self, shift: int) -> "PeriodicColoring":
        """Start the period at block ``shift``."""
        s = shift % self.p
        return PeriodicColoring(self.family, self.colors, self.period[s:] + self.period[:s])

    def reflected(self) -> "PeriodicColoring":
        return PeriodicColoring(self.family, self.colors, self.period[::-1])

    def repeated(self, times: int) -> "PeriodicColoring":
        if times < 1:
            raise ColoringError(f"Repeat count must be positive, got {times}")
        return PeriodicColoring(self.family, self.colors, self.period * times)

    def primitive_length(self) -> int:
        """Length of the shortest repeating unit of the period."""
        p = self.p
        for d in range(1, p + 1):
            if p % d == 0 and self.period == self.period[:d] * (p // d):
                return d
        return p

    def primitive_root(self) -> "PeriodicColoring":
        d = self.primitive_length()
        if d == self.p:
            return self
        return PeriodicColoring(self.family, self.colors, self.period[:d])

    def __str__(self) -> str:
        return format_period(self)


def format_period(c: PeriodicColoring) -> str:
    """Bracket notation: ``[2 1 0 0 1 2]`` when block-monochrome, else blocks in parentheses."""
    if c.is_block_monochrome() and c.family.n == 1:
        return "[" + " ".join(str(x) for x in c.path_colors()) + "]"
    blocks = ("(" + " ".join(str(x) for x in block) + ")" for block in c.block_colors())
    return "[" + " ".join(blocks) + "]"


# Perfectness


def neighbor_profile(c: PeriodicColoring, i: int, color: int) -> BlockProfile:
    """Color counts of the unit sphere around a ``color`` vertex of block ``i``.

    Raises
    ------
    ColorAbsentError
        If block ``i`` has no vertex of ``color``.
    """
    here = c.profile(i)
    if not 0 <= color < c.colors or here[color] == 0:
        raise ColorAbsentError(f"Color {color} does not occur in block {i % c.p}")
    around = add_profiles(c.profile(i - 1), c.profile(i + 1))
    if c.family.kind is Kind.COMPLETE:
        around = sub_profiles(add_profiles(around, here), unit(c.colors, color))
    return around


def check_perfect(c: PeriodicColoring) -> Union[ParameterMatrix, NotPerfect]:
    """Return the parameter matrix of ``c``, or the first witness that it is not perfect."""
    rows: List[Optional[BlockProfile]] = [None] * c.colors
    first_site = [0] * c.colors
    for i in range(c.p):
        for color in c.support(i):
            seen = neighbor_profile(c, i, color)
            row = rows[color]
            if row is None:
                rows[color] = seen
                first_site[color] = i
            elif row != seen:
                return NotPerfect(color, first_site[color], i, row, seen)
    return ParameterMatrix(tuple(row for row in rows if row is not None))


def infer_matrix(c: PeriodicColoring) -> ParameterMatrix:
    """Infer the parameter matrix of a perfect periodic coloring.

    Raises
    ------
    NotPerfectError
        If two same-colored sites see different neighbor counts.
    """
    result = check_perfect(c)
    if isinstance(result, NotPerfect):
        raise NotPerfectError(result)
    return result


def verify_periodic(c: PeriodicColoring, matrix: ParameterMatrix) -> bool:
    """True iff ``c`` is perfect with exactly the parameter matrix ``matrix``."""
    if matrix.size != c.colors:
        return False
    result = check_perfect(c)
    return isinstance(result, ParameterMatrix) and result == matrix


# Canonical form
#
# Encoding: the period is written block by block, each block as its vertex
# colors in nondecreasing order (``block_colors``). Encodings are compared as
# tuples of tuples. The canonical representative of a coloring is the one
# with the least encoding over rotations and reflections of its primitive
# root and all bijective color renamings.

Encoding = Tuple[Tuple[int, ...], ...]


def _renamings_for_block(
    profile: BlockProfile, mapping: Tuple[int, ...], used: int
) -> Iterator[Tuple[Tuple[int, ...], int]]:
    """Extend a partial renaming so that ``profile``'s new colors get the least labels.

    New colors are labeled in order of decreasing count; colors with equal
    counts are tried in every order.
    """
    fresh = [j for j in support(profile) if mapping[j] < 0]
    if not fresh:
        yield mapping, used
        return
    groups: Dict[int, List[int]] = {}
    for j in fresh:
        groups.setdefault(profile[j], []).append(j)
    ordered = [groups[count] for count in sorted(groups, reverse=True)]
    for choice in product(*(permutations(group) for group in ordered)):
        extended = list(mapping)
        label = used
        for group in choice:
            for j in group:
                extended[j] = label
                label += 1
        yield tuple(extended), label


def _least_encoding(
    period: Sequence[BlockProfile], k: int
) -> Tuple[Encoding, Tuple[int, ...]]:
    """Least encoding of a fixed period over all color renamings."""
    states = {(tuple([-1] * k), 0)}
    encoded: List[Tuple[int, ...]] = []
    for profile in period:
        best: Optional[Tuple[int, ...]] = None
        survivors = set()
        for mapping, used in states:
            for extended, now_used in _renamings_for_block(profile, mapping, used):
                block = tuple(
                    sorted(extended[j] for j, count in enumerate(profile) for _ in range(count))
                )
                if best is None or block < best:
                    best = block
                    survivors = {(extended, now_used)}
                elif block == best:
                    survivors.add((extended, now_used))
        assert best is not None
        encoded.append(best)
        states = survivors
    mapping, _ = min(states)
    return tuple(encoded), mapping


def canonical_form(c: PeriodicColoring) -> Tuple[PeriodicColoring, Tuple[int, ...]]:
    """Canonical representative of ``c`` and the renaming ``old -> new`` that produced it."""
    root = c.primitive_root()
    best: Optional[Tuple[Encoding, Tuple[int, ...]]] = None
    for candidate in (root, root.reflected()):
        for shift in range(root.p):
            period = candidate.period[shift:] + candidate.period[:shift]
            found = _least_encoding(period, root.colors)
            if best is None or found[0] < best[0]:
                best = found
    assert best is not None
    encoding, renaming = best
    return PeriodicColoring.from_blocks(c.family, encoding), renaming


def canonicalize(c: PeriodicColoring) -> PeriodicColoring:
    """Unique representative of ``c`` up to rotation, reflection, primitive root and renaming."""
    return canonical_form(c)[0]


def encode(c: PeriodicColoring) -> Encoding:
    """Encoding of ``c`` as written (not canonicalized); used as a sort key."""
    return c.block_colors()


def same_coloring(a: PeriodicColoring, b: PeriodicColoring) -> bool:
    """True iff ``a`` and ``b`` have the same canonical form."""
    return a.family == b.family and canonicalize(a) == canonicalize(b)
