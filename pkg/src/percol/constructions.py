"""
Constructive families of perfect colorings of multipath graphs.

This module provides:
- The four series of perfect colorings of the infinite path C∞
- Block-monochrome lifts and disjunctive colorings of C∞·K̄n and C∞·Kn
- Conjugation of semicolorings of the bipartite graph C∞·K̄n
- The matched condition, 3-periodic colorings of C∞·Kn
- Unique restoration of a coloring from two adjacent blocks (``propagate``)

Example usage:
    >>> from percol.constructions import MirrorType, series_mirror
    >>> print(series_mirror(3, MirrorType.TWO_TWO))
    [2 1 0 0 1 2]
"""

from dataclasses import dataclass
from enum import Enum
from math import lcm
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .finite import InvariantViolation, PreconditionViolated
from .multipath import (
    BlockProfile,
    ColoringError,
    Family,
    Kind,
    NotPerfect,
    ParameterMatrix,
    PeriodicColoring,
    add_profiles,
    canonicalize,
    check_perfect,
    profile_count,
    sub_profiles,
    support,
    unit,
)


class DomainError(ValueError):
    """Raised when an argument is outside the domain an operation is defined on."""

    pass


class OverlappingSupportsError(ValueError):
    """Raised when the block profiles of a disjunctive coloring share a color."""

    pass


class PsiNotPerfectError(ValueError):
    """Raised when the path coloring of a disjunctive coloring is not perfect."""

    pass


def _pad(profiles: Sequence[Sequence[int]], width: Optional[int] = None) -> List[BlockProfile]:
    """Extend count vectors with zeros to a common width."""
    size = max([len(p) for p in profiles] + [width or 0])
    return [tuple(p) + (0,) * (size - len(p)) for p in profiles]


# ---------------------------------------------------------------------------
# Colorings of the infinite path
# ---------------------------------------------------------------------------


class MirrorType(str, Enum):
    """Mirror series of perfect colorings of C∞."""

    ONE_ONE = "11"
    ONE_TWO = "12"
    TWO_TWO = "22"


def series_cyclic(k: int) -> PeriodicColoring:
    """S(k) = [0 1 ... k-1]."""
    if k < 1:
        raise DomainError(f"Cyclic series needs k >= 1, got {k}")
    return PeriodicColoring.from_path(list(range(k)))


def series_mirror(k: int, mirror: Union[MirrorType, str]) -> PeriodicColoring:
    """Mirror coloring of C∞ with ``k`` colors.

    S11(k) = [k-1 ... 1 0 1 ... k-2],
    S12(k) = [k-1 ... 1 0 1 ... k-1],
    S22(k) = [k-1 ... 1 0 0 1 ... k-1].

    Raises
    ------
    DomainError
        If ``k < 2``.
    """
    mirror = MirrorType(mirror)
    if k < 2:
        raise DomainError(f"Mirror series {mirror.value} needs k >= 2, got {k}")
    down = list(range(k - 1, -1, -1))
    if mirror is MirrorType.ONE_ONE:
        colors = down + list(range(1, k - 1))
    elif mirror is MirrorType.ONE_TWO:
        colors = down + list(range(1, k))
    else:
        colors = down + list(range(k))
    return PeriodicColoring.from_path(colors)


def series_period(k: int, series: Optional[MirrorType]) -> int:
    """Period length of S(k) (``series=None``) or of a mirror series."""
    if series is None:
        return k
    return {MirrorType.ONE_ONE: 2 * k - 2, MirrorType.ONE_TWO: 2 * k - 1}.get(series, 2 * k)


def path_series(k_max: int, p_max: int) -> List[PeriodicColoring]:
    """Canonical members of the four series with at most ``k_max`` colors.

    Only colorings whose primitive period is at most ``p_max`` are kept.
    Degenerate overlaps such as S11(2) = S(2) appear once.
    """
    found: Dict[PeriodicColoring, None] = {}
    for k in range(1, k_max + 1):
        candidates = [series_cyclic(k)]
        if k >= 2:
            candidates += [series_mirror(k, mirror) for mirror in MirrorType]
        for c in candidates:
            if c.primitive_length() <= p_max:
                found.setdefault(canonicalize(c), None)
    return list(found)


def series_name(c: PeriodicColoring) -> Optional[str]:
    """Name of the series whose lift is ``c``, e.g. ``"S22(3)"``; None if there is none."""
    if not c.is_block_monochrome():
        return None
    path = canonicalize(PeriodicColoring.from_path(c.path_colors()))
    k = path.colors
    if path == canonicalize(series_cyclic(k)):
        return f"S({k})"
    if k >= 2:
        for mirror in MirrorType:
            if path == canonicalize(series_mirror(k, mirror)):
                return f"S{mirror.value}({k})"
    return None


# ---------------------------------------------------------------------------
# Lifts and disjunctive colorings
# ---------------------------------------------------------------------------


def _require_path(path: PeriodicColoring) -> None:
    if path.family != Family.path():
        raise PreconditionViolated(f"Expected a coloring of C∞, got family {path.family}")


def lift_block_monochrome(path: PeriodicColoring, family: Family) -> PeriodicColoring:
    """Copy every vertex of a coloring of C∞ into a whole block of ``family``."""
    _require_path(path)
    return PeriodicColoring.from_path(path.path_colors(), family)


def disjunctive_multipath(
    psi: PeriodicColoring,
    profiles: Sequence[Sequence[int]],
    family: Family,
) -> PeriodicColoring:
    """Disjunctive coloring: block ``i`` gets ``profiles[psi(i)]``.

    Parameters
    ----------
    psi : PeriodicColoring
        Perfect coloring of C∞.
    profiles : sequence of count vectors
        One block profile per color of ``psi``, over a shared color space.
        Supports must be pairwise disjoint.
    family : Family
        Target multipath family; each profile must sum to ``family.n``.

    Raises
    ------
    PsiNotPerfectError
        If ``psi`` is not perfect.
    OverlappingSupportsError
        If two profiles share a color.
    """
    _require_path(psi)
    if len(profiles) != psi.colors:
        raise PreconditionViolated(f"Expected {psi.colors} profiles, got {len(profiles)}")
    witness = check_perfect(psi)
    if isinstance(witness, NotPerfect):
        raise PsiNotPerfectError(f"Path coloring {psi} is not perfect: {witness}")
    padded = _pad(profiles)
    owner: Dict[int, int] = {}
    for index, profile in enumerate(padded):
        if sum(profile) != family.n or any(x < 0 for x in profile):
            raise ColoringError(f"Profile {list(profile)} is not a block profile for {family}")
        for color in support(profile):
            if color in owner:
                raise OverlappingSupportsError(
                    f"Color {color} occurs in profiles {owner[color]} and {index}"
                )
            owner[color] = index
    colors = psi.path_colors()
    result = PeriodicColoring.normalized(family, [padded[colors[i]] for i in range(psi.p)])
    witness = check_perfect(result)
    if isinstance(witness, NotPerfect):
        raise InvariantViolation(f"Disjunctive coloring is not perfect: {witness}")
    return result


# ---------------------------------------------------------------------------
# Semicolorings
# ---------------------------------------------------------------------------


class Parity(str, Enum):
    """Part of the bipartite graph C∞·K̄n: blocks of even or odd index."""

    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class Semicoloring:
    """Coloring of one part of C∞·K̄n, as the profiles of that part's blocks in order."""

    parity: Parity
    family: Family
    period: Tuple[BlockProfile, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "parity", Parity(self.parity))
        object.__setattr__(self, "period", tuple(tuple(p) for p in self.period))
        if self.family.kind is not Kind.EMPTY:
            raise DomainError(f"Semicolorings need a bipartite family, got {self.family}")
        if not self.period:
            raise ColoringError("Semicoloring period must contain at least one block")
        for profile in self.period:
            if sum(profile) != self.family.n or any(x < 0 for x in profile):
                raise ColoringError(
                    f"Profile {list(profile)} is not a block profile for {self.family}"
                )

    @property
    def p(self) -> int:
        return len(self.period)

    def colors(self) -> Tuple[int, ...]:
        """Colors that occur in this part."""
        return tuple(sorted({j for profile in self.period for j in support(profile)}))


def split_semicolorings(c: PeriodicColoring) -> Tuple[Semicoloring, Semicoloring]:
    """Even and odd semicolorings of a coloring of C∞·K̄n.

    An odd period is doubled first so both parts are well defined.
    """
    if c.family.kind is not Kind.EMPTY:
        raise DomainError(f"Only C∞·K̄n is bipartite, got {c.family}")
    period = c.period if c.p % 2 == 0 else c.period * 2
    return (
        Semicoloring(Parity.EVEN, c.family, period[0::2]),
        Semicoloring(Parity.ODD, c.family, period[1::2]),
    )


def is_bipartite_coloring(c: PeriodicColoring) -> bool:
    """True iff the two parts of a coloring of C∞·K̄n use disjoint colors."""
    even, odd = split_semicolorings(c)
    return not set(even.colors()) & set(odd.colors())


def conjugate_semicolorings(
    even: Semicoloring, odd: Semicoloring
) -> Union[PeriodicColoring, NotPerfect]:
    """Interleave two semicolorings; block ``2m`` is even, block ``2m+1`` is odd.

    Both periods are repeated to their least common multiple. Returns the
    perfect coloring, or the witness that the pair is not conjugate.
    """
    if even.parity is not Parity.EVEN or odd.parity is not Parity.ODD:
        raise PreconditionViolated("Expected an even and an odd semicoloring, in that order")
    if even.family != odd.family:
        raise PreconditionViolated(f"Families differ: {even.family} and {odd.family}")
    length = lcm(even.p, odd.p)
    width = max(len(p) for p in even.period + odd.period)
    evens = _pad(even.period, width)
    odds = _pad(odd.period, width)
    period: List[BlockProfile] = []
    for m in range(length):
        period.append(evens[m % even.p])
        period.append(odds[m % odd.p])
    c = PeriodicColoring.normalized(even.family, period)
    result = check_perfect(c)
    if isinstance(result, NotPerfect):
        return result
    return c


def matched_check(c: PeriodicColoring) -> bool:
    """True iff N_j(i-1) + N_j(i+1) = N_j(i) + N_j(i+2) for all colors j, blocks i.

    The primitive period must have length 1, 2 or 4; shorter periods are
    repeated to length 4.

    Raises
    ------
    DomainError
        For complete blocks or any other primitive period length.
    """
    if c.family.kind is not Kind.EMPTY:
        raise DomainError(f"Matched condition is defined for C∞·K̄n only, got {c.family}")
    root = c.primitive_root()
    if root.p not in (1, 2, 4):
        raise DomainError(f"Matched condition needs period 4, got primitive period {root.p}")
    period = root.period * (4 // root.p)
    return all(
        add_profiles(period[i - 1], period[(i + 1) % 4])
        == add_profiles(period[i], period[(i + 2) % 4])
        for i in range(4)
    )


# ---------------------------------------------------------------------------
# Complete blocks
# ---------------------------------------------------------------------------


def three_periodic_complete(
    b0: Sequence[int], b1: Sequence[int], b2: Sequence[int], n: int
) -> Union[PeriodicColoring, NotPerfect]:
    """Coloring of C∞·Kn with period ``[b0, b1, b2]``, or the witness it is not perfect."""
    c = PeriodicColoring.normalized(Family.complete(n), _pad([b0, b1, b2]))
    result = check_perfect(c)
    if isinstance(result, NotPerfect):
        return result
    return c


# ---------------------------------------------------------------------------
# Propagation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NotBiInfinite:
    """The forward orbit entered a cycle that does not return to the seed."""

    prefix: int
    cycle: int


@dataclass(frozen=True)
class Contradiction:
    """No valid block can follow ``block - 1``; ``reason`` says why."""

    block: int
    reason: str


def _forced_next(
    matrix: ParameterMatrix, kind: Kind, prev: BlockProfile, cur: BlockProfile, block: int
) -> Union[BlockProfile, Contradiction]:
    forced: Optional[BlockProfile] = None
    first = -1
    for color in support(cur):
        candidate = sub_profiles(matrix[color], prev)
        if kind is Kind.COMPLETE:
            candidate = add_profiles(sub_profiles(candidate, cur), unit(len(cur), color))
        if forced is None:
            forced, first = candidate, color
        elif candidate != forced:
            return Contradiction(
                block, f"colors {first} and {color} force {list(forced)} and {list(candidate)}"
            )
    assert forced is not None
    return forced


def propagation_orbit(
    matrix: ParameterMatrix, b0: Sequence[int], b1: Sequence[int], family: Family
) -> Iterator[Union[BlockProfile, Contradiction]]:
    """Blocks 0, 1, 2, ... forced by ``matrix`` from the seed pair; unbounded."""
    k = matrix.size
    prev, cur = tuple(b0), tuple(b1)
    for profile in (prev, cur):
        if len(profile) != k or sum(profile) != family.n or any(x < 0 for x in profile):
            raise ColoringError(f"Seed {list(profile)} is not a {k}-color profile for {family}")
    yield prev
    yield cur
    block = 2
    while True:
        nxt = _forced_next(matrix, family.kind, prev, cur, block)
        if isinstance(nxt, Contradiction):
            yield nxt
            return
        if any(x < 0 for x in nxt):
            yield Contradiction(block, f"negative count in {list(nxt)}")
            return
        if sum(nxt) != family.n:
            yield Contradiction(block, f"counts {list(nxt)} sum to {sum(nxt)}, not {family.n}")
            return
        yield nxt
        prev, cur = cur, nxt
        block += 1


def propagate(
    matrix: ParameterMatrix, b0: Sequence[int], b1: Sequence[int], family: Family
) -> Union[PeriodicColoring, NotBiInfinite, Contradiction]:
    """Restore the whole coloring from two adjacent blocks.

    For empty blocks ``N(i+1) = row_c - N(i-1)``; for complete blocks
    ``N(i+1) = row_c - N(i-1) - N(i) + e_c``, for every color ``c`` in block
    ``i``. Iteration stops when a pair of adjacent blocks repeats; there are
    at most ``profile_count(n, k) ** 2`` such pairs.

    Returns
    -------
    PeriodicColoring
        If the orbit returns to the seed pair.
    NotBiInfinite
        If it cycles without returning to the seed pair.
    Contradiction
        If some block cannot be completed.
    """
    bound = profile_count(family.n, matrix.size) ** 2 + 1
    seen: Dict[Tuple[BlockProfile, BlockProfile], int] = {}
    blocks: List[BlockProfile] = []
    for step in propagation_orbit(matrix, b0, b1, family):
        if isinstance(step, Contradiction):
            return step
        blocks.append(step)
        if len(blocks) < 2:
            continue
        state = (blocks[-2], blocks[-1])
        start = len(blocks) - 2
        if state in seen:
            first = seen[state]
            if first == 0:
                return PeriodicColoring.normalized(family, blocks[:start])
            return NotBiInfinite(first, start - first)
        seen[state] = start
        if len(seen) > bound:
            break
    raise InvariantViolation(f"Propagation exceeded {bound} states")


def restores(c: PeriodicColoring, block: int) -> bool:
    """True iff propagating from blocks ``block, block+1`` gives back ``c`` rotated to ``block``."""
    matrix = check_perfect(c)
    if isinstance(matrix, NotPerfect):
        raise PreconditionViolated(f"Coloring {c} is not perfect: {matrix}")
    result = propagate(matrix, c.profile(block), c.profile(block + 1), c.family)
    return result == c.primitive_root().rotated(block)
