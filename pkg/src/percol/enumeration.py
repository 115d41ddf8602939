"""
Enumeration and classification of perfect colorings of multipath graphs.

Two independent generators produce catalogs of canonical perfect colorings
within bounds on the number of colors and the primitive period:

- ``brute_force_enumerate`` searches profile sequences depth-first
- ``theorem_enumerate`` expands the constructions of the classification

``catalog_diff`` compares the two; ``classify`` names the construction that
produces a given coloring and returns evidence that rebuilds it.

Configuration:
    The search budget (visited partial states) is taken from the explicit
    argument, else the ``PERCOL_BUDGET`` environment variable, else
    ``DEFAULT_BUDGET``.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from itertools import product
import logging
import os
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

from .constructions import (
    DomainError,
    Parity,
    Semicoloring,
    conjugate_semicolorings,
    disjunctive_multipath,
    matched_check,
    path_series,
    three_periodic_complete,
)
from .finite import PreconditionViolated
from .multipath import (
    BlockProfile,
    Family,
    Kind,
    NotPerfect,
    ParameterMatrix,
    PeriodicColoring,
    add_profiles,
    all_profiles,
    canonicalize,
    check_perfect,
    sub_profiles,
    support,
    unit,
)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 100_000_000
BUDGET_ENV_VAR = "PERCOL_BUDGET"


class BudgetExceeded(RuntimeError):
    """Raised when a search visits more partial states than its budget allows."""

    def __init__(self, budget: int) -> None:
        self.budget = budget
        super().__init__(f"Search budget of {budget} states exceeded")


class BoundsMismatch(ValueError):
    """Raised when two catalogs with different families or bounds are compared."""

    pass


class ConfigurationError(ValueError):
    """Raised when the search budget from an argument or the environment is invalid."""

    pass


def resolve_budget(budget: Optional[int] = None) -> int:
    """Explicit budget, else ``$PERCOL_BUDGET``, else ``DEFAULT_BUDGET``."""
    if budget is None:
        raw = os.environ.get(BUDGET_ENV_VAR)
        if raw is None:
            return DEFAULT_BUDGET
        try:
            budget = int(raw)
        except ValueError:
            raise ConfigurationError(f"{BUDGET_ENV_VAR} must be an integer, got {raw!r}") from None
    if budget < 1:
        raise ConfigurationError(f"Search budget must be positive, got {budget}")
    return budget


def _check_bounds(k_max: int, p_max: int) -> None:
    if k_max < 1:
        raise DomainError(f"Color bound must be at least 1, got {k_max}")
    if p_max < 1:
        raise DomainError(f"Period bound must be at least 1, got {p_max}")


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------


class ClassLabel(str, Enum):
    """Construction that produces a perfect coloring of a multipath graph."""

    DISJUNCTIVE = "disjunctive"
    BIPARTITE = "bipartite"
    MATCHED = "matched"
    THREE_PERIODIC = "three-periodic"


@dataclass(frozen=True)
class DisjunctiveEvidence:
    """A perfect coloring of C∞ and one block profile per path color."""

    path: PeriodicColoring
    profiles: Tuple[BlockProfile, ...]
    family: Family

    def reconstruct(self) -> PeriodicColoring:
        return disjunctive_multipath(self.path, self.profiles, self.family)


@dataclass(frozen=True)
class SemicoloringEvidence:
    """Two 2-periodic semicolorings whose conjugation is the coloring."""

    even: Semicoloring
    odd: Semicoloring

    def reconstruct(self) -> PeriodicColoring:
        result = conjugate_semicolorings(self.even, self.odd)
        if isinstance(result, NotPerfect):
            raise PreconditionViolated(f"Semicolorings are not conjugate: {result}")
        return result


@dataclass(frozen=True)
class ThreePeriodicEvidence:
    """The three blocks of a period of a coloring of C∞·Kn."""

    blocks: Tuple[BlockProfile, BlockProfile, BlockProfile]
    n: int

    def reconstruct(self) -> PeriodicColoring:
        result = three_periodic_complete(*self.blocks, self.n)
        if isinstance(result, NotPerfect):
            raise PreconditionViolated(f"Blocks do not form a perfect coloring: {result}")
        return result


Evidence = Union[DisjunctiveEvidence, SemicoloringEvidence, ThreePeriodicEvidence]


@dataclass(frozen=True)
class ColoringClass:
    """Classification label with the decomposition that witnesses it."""

    label: ClassLabel
    evidence: Evidence

    def reconstruct(self) -> PeriodicColoring:
        return self.evidence.reconstruct()


@dataclass(frozen=True)
class Unclassifiable:
    """A perfect coloring that fits none of the known constructions."""

    reason: str


def disjunctive_evidence(c: PeriodicColoring) -> Optional[DisjunctiveEvidence]:
    """Decompose ``c`` as a disjunctive coloring, if it is one.

    Blocks are grouped by color support. Groups must be pairwise disjoint,
    blocks in one group must have equal profiles, and the induced coloring
    of C∞ must be perfect.
    """
    index: Dict[FrozenSet[int], int] = {}
    profiles: List[BlockProfile] = []
    path: List[int] = []
    for profile in c.period:
        colors = frozenset(support(profile))
        if colors in index:
            if profiles[index[colors]] != profile:
                return None
        else:
            if any(colors & other for other in index):
                return None
            index[colors] = len(profiles)
            profiles.append(profile)
        path.append(index[colors])
    psi = PeriodicColoring.from_path(path)
    if isinstance(check_perfect(psi), NotPerfect):
        return None
    return DisjunctiveEvidence(psi, tuple(profiles), c.family)


def classify(c: PeriodicColoring) -> Union[ColoringClass, Unclassifiable]:
    """Name the construction that produces the perfect coloring ``c``.

    Raises
    ------
    PreconditionViolated
        If ``c`` is not perfect.
    """
    witness = check_perfect(c)
    if isinstance(witness, NotPerfect):
        raise PreconditionViolated(f"Coloring {c} is not perfect: {witness}")
    evidence = disjunctive_evidence(c)
    if evidence is not None:
        return ColoringClass(ClassLabel.DISJUNCTIVE, evidence)
    root = c.primitive_root()
    if c.family.kind is Kind.EMPTY:
        if root.p not in (1, 2, 4):
            return Unclassifiable(f"non-disjunctive with primitive period {root.p}")
        period = root.period * (4 // root.p)
        even = Semicoloring(Parity.EVEN, c.family, (period[0], period[2]))
        odd = Semicoloring(Parity.ODD, c.family, (period[1], period[3]))
        if not set(even.colors()) & set(odd.colors()):
            return ColoringClass(ClassLabel.BIPARTITE, SemicoloringEvidence(even, odd))
        if matched_check(c):
            return ColoringClass(ClassLabel.MATCHED, SemicoloringEvidence(even, odd))
        return Unclassifiable("parts share colors but are not matched")
    if root.p == 3:
        blocks = (root.period[0], root.period[1], root.period[2])
        return ColoringClass(
            ClassLabel.THREE_PERIODIC, ThreePeriodicEvidence(blocks, c.family.n)
        )
    return Unclassifiable(f"non-disjunctive with primitive period {root.p}")


# ---------------------------------------------------------------------------
# Catalogs
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    """One canonical perfect coloring with its matrix and class label."""

    coloring: PeriodicColoring
    matrix: ParameterMatrix
    label: Optional[ClassLabel]


def _coloring_key(c: PeriodicColoring) -> Tuple:
    return (c.colors, c.p, c.block_colors())


def _entry_key(entry: CatalogEntry) -> Tuple:
    return _coloring_key(entry.coloring)


@dataclass(frozen=True)
class Catalog:
    """Canonical perfect colorings of ``family`` within the certified bounds.

    ``max_colors`` and ``max_period`` are the envelope the catalog is
    complete for; entries are sorted by colors, period and encoding.
    """

    family: Family
    max_colors: int
    max_period: int
    entries: Tuple[CatalogEntry, ...]

    @classmethod
    def from_colorings(
        cls,
        family: Family,
        max_colors: int,
        max_period: int,
        colorings: Sequence[PeriodicColoring],
    ) -> "Catalog":
        """Canonicalize, deduplicate, verify and classify ``colorings``."""
        unique = {canonicalize(c) for c in colorings}
        entries = []
        for c in unique:
            matrix = check_perfect(c)
            if isinstance(matrix, NotPerfect):
                raise PreconditionViolated(f"Catalog entry {c} is not perfect: {matrix}")
            result = classify(c)
            if isinstance(result, Unclassifiable):
                logger.warning("Unclassifiable coloring %s: %s", c, result.reason)
                label = None
            else:
                label = result.label
            entries.append(CatalogEntry(c, matrix, label))
        return cls(family, max_colors, max_period, tuple(sorted(entries, key=_entry_key)))

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[CatalogEntry]:
        return iter(self.entries)

    def colorings(self) -> FrozenSet[PeriodicColoring]:
        return frozenset(entry.coloring for entry in self.entries)

    @property
    def envelope(self) -> str:
        return f"{self.family}, k <= {self.max_colors}, p <= {self.max_period}"

    def summary(self) -> List[Tuple[int, int, str, int]]:
        """Rows ``(k, p, class, count)``; unclassifiable entries count as ``"unclassifiable"``."""
        counts: Dict[Tuple[int, int, str], int] = {}
        for entry in self.entries:
            label = entry.label.value if entry.label is not None else "unclassifiable"
            key = (entry.coloring.colors, entry.coloring.p, label)
            counts[key] = counts.get(key, 0) + 1
        return [(k, p, label, count) for (k, p, label), count in sorted(counts.items())]

    def class_counts(self) -> Dict[str, int]:
        result: Dict[str, int] = {}
        for _, _, label, count in self.summary():
            result[label] = result.get(label, 0) + count
        return result


def catalog_diff(
    a: Catalog, b: Catalog
) -> Tuple[Tuple[PeriodicColoring, ...], Tuple[PeriodicColoring, ...]]:
    """Colorings only in ``a`` and only in ``b``; two empty tuples certify agreement.

    Raises
    ------
    BoundsMismatch
        If the catalogs differ in family or bounds.
    """
    if (a.family, a.max_colors, a.max_period) != (b.family, b.max_colors, b.max_period):
        raise BoundsMismatch(f"Cannot compare catalogs for {a.envelope} and {b.envelope}")
    left, right = a.colorings(), b.colorings()
    return (
        tuple(sorted(left - right, key=_coloring_key)),
        tuple(sorted(right - left, key=_coloring_key)),
    )


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------


def _sphere(
    kind: Kind, prev: BlockProfile, here: BlockProfile, nxt: BlockProfile, color: int
) -> BlockProfile:
    around = add_profiles(prev, nxt)
    if kind is Kind.COMPLETE:
        around = sub_profiles(add_profiles(around, here), unit(len(here), color))
    return around


def _admit(profile: BlockProfile, used: int) -> Optional[int]:
    """Labels in use after ``profile``, or None if it breaks the labeling order.

    Colors new to the sequence must take the next free labels, with counts
    nonincreasing along the labels.
    """
    fresh = [j for j in support(profile) if j >= used]
    if fresh != list(range(used, used + len(fresh))):
        return None
    counts = [profile[j] for j in fresh]
    if any(counts[t] < counts[t + 1] for t in range(len(counts) - 1)):
        return None
    return used + len(fresh)


class _Search:
    """Depth-first search over profile sequences of one fixed length."""

    def __init__(
        self, family: Family, k_max: int, length: int, budget: int, visited: int = 0
    ) -> None:
        self.family = family
        self.k_max = k_max
        self.length = length
        self.budget = budget
        self.profiles = all_profiles(family.n, k_max)
        self.visited = visited
        self.found: List[PeriodicColoring] = []

    def run(self, prefix: Sequence[BlockProfile] = ()) -> List[PeriodicColoring]:
        used = 0
        for profile in prefix:
            step = _admit(profile, used)
            if step is None:
                return self.found
            used = step
        self._extend(list(prefix), used, {})
        return self.found

    def _candidates(
        self, seq: List[BlockProfile], rows: Dict[int, BlockProfile]
    ) -> List[BlockProfile]:
        if len(seq) >= 2:
            prev, cur = seq[-2], seq[-1]
            for color in support(cur):
                if color in rows:
                    forced = sub_profiles(rows[color], prev)
                    if self.family.kind is Kind.COMPLETE:
                        forced = add_profiles(sub_profiles(forced, cur), unit(len(cur), color))
                    if any(x < 0 for x in forced) or sum(forced) != self.family.n:
                        return []
                    return [forced]
        return self.profiles

    def _extend(self, seq: List[BlockProfile], used: int, rows: Dict[int, BlockProfile]) -> None:
        self.visited += 1
        if self.visited > self.budget:
            raise BudgetExceeded(self.budget)
        if len(seq) == self.length:
            self._close(seq)
            return
        for profile in self._candidates(seq, rows):
            now_used = _admit(profile, used)
            if now_used is None:
                continue
            new_rows = rows
            if len(seq) >= 2:
                new_rows = self._interior(seq[-2], seq[-1], profile, rows)
                if new_rows is None:
                    continue
            seq.append(profile)
            self._extend(seq, now_used, new_rows)
            seq.pop()

    def _interior(
        self,
        prev: BlockProfile,
        here: BlockProfile,
        nxt: BlockProfile,
        rows: Dict[int, BlockProfile],
    ) -> Optional[Dict[int, BlockProfile]]:
        """Rows after checking the block between ``prev`` and ``nxt``; None on conflict."""
        updated = dict(rows)
        for color in support(here):
            seen = _sphere(self.family.kind, prev, here, nxt, color)
            known = updated.get(color)
            if known is None:
                updated[color] = seen
            elif known != seen:
                return None
        return updated

    def _close(self, seq: List[BlockProfile]) -> None:
        c = PeriodicColoring.normalized(self.family, seq)
        if c.primitive_length() != self.length:
            return
        if isinstance(check_perfect(c), NotPerfect):
            return
        self.found.append(canonicalize(c))


def _search_task(
    family: Family, k_max: int, length: int, prefix: Tuple[BlockProfile, ...], budget: int
) -> List[PeriodicColoring]:
    return _Search(family, k_max, length, budget).run(prefix)


def _prefixes(family: Family, k_max: int, length: int) -> List[Tuple[BlockProfile, ...]]:
    """Admissible first one or two blocks, used to split the search across workers."""
    profiles = all_profiles(family.n, k_max)
    result = []
    for first in profiles:
        used = _admit(first, 0)
        if used is None:
            continue
        if length == 1:
            result.append((first,))
            continue
        for second in profiles:
            if _admit(second, used) is not None:
                result.append((first, second))
    return result


def brute_force_enumerate(
    family: Family,
    k_max: int,
    p_max: int,
    budget: Optional[int] = None,
    jobs: int = 1,
) -> Catalog:
    """All canonical perfect colorings with at most ``k_max`` colors and primitive
    period at most ``p_max``, found by exhaustive search.

    Parameters
    ----------
    family : Family
        Multipath graph to color.
    k_max, p_max : int
        Bounds on colors and primitive period.
    budget : int, optional
        Maximum number of visited partial states per search; see
        ``resolve_budget``.
    jobs : int
        Worker processes. With ``jobs > 1`` each length is split on its first
        two blocks and every worker gets the full budget.

    Raises
    ------
    DomainError
        If a bound is below 1.
    BudgetExceeded
        If the search visits more states than the budget.
    ConfigurationError
        If the budget, given or taken from the environment, is not a positive integer.
    """
    _check_bounds(k_max, p_max)
    budget = resolve_budget(budget)
    found: List[PeriodicColoring] = []
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = [
                pool.submit(_search_task, family, k_max, length, prefix, budget)
                for length in range(1, p_max + 1)
                for prefix in _prefixes(family, k_max, length)
            ]
            for future in futures:
                found.extend(future.result())
    else:
        visited = 0
        for length in range(1, p_max + 1):
            search = _Search(family, k_max, length, budget, visited)
            search.run()
            logger.debug(
                "length %d: %d colorings, %d states",
                length,
                len(search.found),
                search.visited - visited,
            )
            visited = search.visited
            found.extend(search.found)
    catalog = Catalog.from_colorings(family, k_max, p_max, found)
    logger.info("Oracle found %d colorings for %s", len(catalog), catalog.envelope)
    return catalog


# ---------------------------------------------------------------------------
# Construction-driven generator
# ---------------------------------------------------------------------------


def _compositions(n: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Ordered ways to write ``n`` as ``parts`` positive integers."""
    if parts == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


def disjoint_profile_assignments(
    path_colors: int, n: int, k_max: int
) -> Iterator[List[BlockProfile]]:
    """One profile per path color, on consecutive disjoint labels, at most ``k_max`` in all."""
    for sizes in product(range(1, min(n, k_max) + 1), repeat=path_colors):
        total = sum(sizes)
        if total > k_max:
            continue
        for parts in product(*(list(_compositions(n, s)) for s in sizes)):
            profiles = []
            offset = 0
            for size, counts in zip(sizes, parts):
                profiles.append((0,) * offset + counts + (0,) * (total - offset - size))
                offset += size
            yield profiles


def _profiles_over(n: int, colors: range, k: int) -> List[BlockProfile]:
    """Profiles over ``k`` colors whose support lies in ``colors``."""
    return [p for p in all_profiles(n, k) if all(j in colors for j in support(p))]


def theorem_enumerate(
    family: Family, k_max: int, p_max: int, budget: Optional[int] = None
) -> Catalog:
    """Every coloring the classification constructs within the bounds.

    Disjunctive colorings over the four path series; for empty blocks the
    conjugations of 2-periodic semicolorings that are matched or use
    disjoint colors; for complete blocks every perfect 3-block period.

    Raises
    ------
    DomainError
        If a bound is below 1.
    BudgetExceeded
        If more candidates than the budget are generated.
    """
    _check_bounds(k_max, p_max)
    budget = resolve_budget(budget)
    generated = 0
    found: Dict[PeriodicColoring, None] = {}

    def offer(c: Union[PeriodicColoring, NotPerfect]) -> None:
        nonlocal generated
        generated += 1
        if generated > budget:
            raise BudgetExceeded(budget)
        if isinstance(c, NotPerfect):
            return
        canonical = canonicalize(c)
        if canonical.p <= p_max and canonical.colors <= k_max:
            found.setdefault(canonical, None)

    n = family.n
    for path in path_series(k_max, p_max):
        for profiles in disjoint_profile_assignments(path.colors, n, k_max):
            offer(disjunctive_multipath(path, profiles, family))
    logger.debug("%d disjunctive colorings", len(found))

    profiles = all_profiles(n, k_max)
    if family.kind is Kind.EMPTY:
        for e0, e1, o0 in product(profiles, repeat=3):
            o1 = sub_profiles(add_profiles(e0, e1), o0)
            if any(x < 0 for x in o1):
                continue
            offer(
                conjugate_semicolorings(
                    Semicoloring(Parity.EVEN, family, (e0, e1)),
                    Semicoloring(Parity.ODD, family, (o0, o1)),
                )
            )
        for split in range(1, k_max):
            evens = _profiles_over(n, range(split), k_max)
            odds = _profiles_over(n, range(split, k_max), k_max)
            for e0, e1, o0, o1 in product(evens, evens, odds, odds):
                offer(
                    conjugate_semicolorings(
                        Semicoloring(Parity.EVEN, family, (e0, e1)),
                        Semicoloring(Parity.ODD, family, (o0, o1)),
                    )
                )
    else:
        for b0, b1, b2 in product(profiles, repeat=3):
            offer(three_periodic_complete(b0, b1, b2, n))

    catalog = Catalog.from_colorings(family, k_max, p_max, list(found))
    logger.info(
        "Constructions gave %d colorings for %s from %d candidates",
        len(catalog),
        catalog.envelope,
        generated,
    )
    return catalog
