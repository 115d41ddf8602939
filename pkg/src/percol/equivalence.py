"""
Equivalent colors, gluing and reduced colorings.

Two colors of a perfect coloring are equivalent when identifying them leaves
the coloring perfect. Every function here accepts either a
``PeriodicColoring`` or a finite ``ColoredGraph`` as its context.

The identify-then-verify test (``equivalent_colors_semantic``) is the
definition. The parameter-matrix test (``equivalent_colors_matrix``) is a
fast filter; ``equivalence_partition`` runs both and reports every pair on
which they disagree through ``MatrixTestDivergence``.
"""

import logging
from typing import Dict, List, Sequence, Tuple, Union
import warnings

from .finite import (
    ColoredGraph,
    InvariantViolation,
    PreconditionViolated,
    VertexColoring,
    check_perfect_finite,
)
from .multipath import (
    NotPerfect,
    ParameterMatrix,
    PeriodicColoring,
    canonicalize,
    check_perfect,
    support,
)

logger = logging.getLogger(__name__)

Context = Union[PeriodicColoring, ColoredGraph]
Partition = Tuple[Tuple[int, ...], ...]


class TransitivityViolation(InvariantViolation):
    """Raised when the computed color equivalence is not transitive."""

    pass


class MatrixTestDivergence(UserWarning):
    """Warning emitted when the matrix and identify-then-verify tests disagree."""

    pass


# ---------------------------------------------------------------------------
# Context helpers
# ---------------------------------------------------------------------------


def _color_count(ctx: Context) -> int:
    if isinstance(ctx, PeriodicColoring):
        return ctx.colors
    if isinstance(ctx, ColoredGraph):
        return ctx.coloring.k
    raise TypeError(f"Expected PeriodicColoring or ColoredGraph, got {type(ctx).__name__}")


def _check(ctx: Context) -> Union[ParameterMatrix, NotPerfect]:
    if isinstance(ctx, PeriodicColoring):
        return check_perfect(ctx)
    if isinstance(ctx, ColoredGraph):
        return check_perfect_finite(ctx.graph, ctx.coloring)
    raise TypeError(f"Expected PeriodicColoring or ColoredGraph, got {type(ctx).__name__}")


def _require_perfect(ctx: Context) -> ParameterMatrix:
    result = _check(ctx)
    if isinstance(result, NotPerfect):
        raise PreconditionViolated(f"Input coloring is not perfect: {result}")
    return result


def recolor(ctx: Context, mapping: Sequence[int]) -> Context:
    """Apply the color map ``old -> mapping[old]`` and compact the result.

    ``mapping`` need not be injective; merged colors add their counts.
    """
    if isinstance(ctx, PeriodicColoring):
        width = max(mapping) + 1
        period = []
        for profile in ctx.period:
            counts = [0] * width
            for old, count in enumerate(profile):
                counts[mapping[old]] += count
            period.append(tuple(counts))
        return PeriodicColoring.normalized(ctx.family, period)
    if isinstance(ctx, ColoredGraph):
        labels = [mapping[c] for c in ctx.coloring.colors]
        return ColoredGraph(ctx.graph, VertexColoring.normalized(labels))
    raise TypeError(f"Expected PeriodicColoring or ColoredGraph, got {type(ctx).__name__}")


def identify(ctx: Context, a: int, b: int) -> Context:
    """Rename color ``b`` to ``a`` and compact the colors."""
    return recolor(ctx, [a if c == b else c for c in range(_color_count(ctx))])


def _validate_pair(ctx: Context, a: int, b: int) -> None:
    k = _color_count(ctx)
    if not (0 <= a < k and 0 <= b < k):
        raise PreconditionViolated(f"Colors ({a}, {b}) are outside 0..{k - 1}")
    if a == b:
        raise PreconditionViolated(f"Cannot compare color {a} with itself")


# ---------------------------------------------------------------------------
# Equivalence tests
# ---------------------------------------------------------------------------


def equivalent_colors_semantic(ctx: Context, a: int, b: int) -> bool:
    """True iff identifying colors ``a`` and ``b`` leaves the coloring perfect.

    Raises
    ------
    PreconditionViolated
        If the input coloring is not perfect, or ``a == b``.
    """
    _validate_pair(ctx, a, b)
    _require_perfect(ctx)
    return not isinstance(_check(identify(ctx, a, b)), NotPerfect)


def equivalent_colors_matrix(matrix: ParameterMatrix, a: int, b: int) -> bool:
    """True iff rows ``a`` and ``b`` agree on every column outside ``{a, b}``."""
    return all(
        matrix[a][col] == matrix[b][col] for col in range(matrix.size) if col not in (a, b)
    )


def matrix_divergences(ctx: Context) -> List[Tuple[int, int]]:
    """Color pairs on which the matrix test and the semantic test disagree."""
    matrix = _require_perfect(ctx)
    k = matrix.size
    return [
        (a, b)
        for a in range(k)
        for b in range(a + 1, k)
        if equivalent_colors_matrix(matrix, a, b) != equivalent_colors_semantic(ctx, a, b)
    ]


def equivalence_partition(ctx: Context) -> Partition:
    """Partition of the colors into maximal classes of equivalent colors.

    Classes are sorted tuples, ordered by their smallest color.

    Raises
    ------
    PreconditionViolated
        If the input coloring is not perfect.
    TransitivityViolation
        If the relation computed on the input is not transitive.
    """
    matrix = _require_perfect(ctx)
    k = matrix.size
    related = [[a == b for b in range(k)] for a in range(k)]
    for a in range(k):
        for b in range(a + 1, k):
            semantic = equivalent_colors_semantic(ctx, a, b)
            if semantic != equivalent_colors_matrix(matrix, a, b):
                message = (
                    f"colors {a} and {b}: matrix test says {not semantic}, "
                    f"identify says {semantic}"
                )
                logger.warning("Equivalence tests diverge on %s", message)
                warnings.warn(message, MatrixTestDivergence, stacklevel=2)
            related[a][b] = related[b][a] = semantic
    for a in range(k):
        for b in range(k):
            for c in range(k):
                if related[a][b] and related[b][c] and not related[a][c]:
                    raise TransitivityViolation(f"{a} ~ {b} and {b} ~ {c} but not {a} ~ {c}")
    classes: Dict[int, List[int]] = {}
    for color in range(k):
        leader = next(a for a in range(k) if related[color][a])
        classes.setdefault(leader, []).append(color)
    return tuple(tuple(members) for _, members in sorted(classes.items()))


# ---------------------------------------------------------------------------
# Gluing
# ---------------------------------------------------------------------------


def glue(ctx: Context) -> Context:
    """Identify every equivalence class into one color (one gluing step).

    Classes are numbered by their smallest color. For multipath colorings the
    result is block-monochrome.
    """
    partition = equivalence_partition(ctx)
    mapping = [0] * _color_count(ctx)
    for index, members in enumerate(partition):
        for color in members:
            mapping[color] = index
    glued = recolor(ctx, mapping)
    witness = _check(glued)
    if isinstance(witness, NotPerfect):
        raise InvariantViolation(f"Glued coloring is not perfect: {witness}")
    if isinstance(glued, PeriodicColoring) and not glued.is_block_monochrome():
        raise InvariantViolation(f"Glued coloring {glued} is not block-monochrome")
    logger.debug("Glued %d colors into %d", _color_count(ctx), len(partition))
    return glued


def reduce_coloring(ctx: Context) -> Context:
    """Glue repeatedly until no two colors are equivalent."""
    current = ctx
    while True:
        glued = glue(current)
        if _color_count(glued) == _color_count(current):
            return current
        current = glued


def is_reduced(ctx: Context) -> bool:
    """True iff every equivalence class is a singleton."""
    return all(len(members) == 1 for members in equivalence_partition(ctx))


# ---------------------------------------------------------------------------
# Splittings
# ---------------------------------------------------------------------------


def is_splitting(psi: PeriodicColoring, phi: PeriodicColoring) -> bool:
    """True iff gluing ``psi`` once yields ``phi`` up to canonical form."""
    glued = glue(psi)
    assert isinstance(glued, PeriodicColoring)
    return glued.family == phi.family and canonicalize(glued) == canonicalize(phi)


def blocks_of_distinct_reduced_colors_disjoint(psi: PeriodicColoring) -> bool:
    """True iff blocks with different glued colors share no color of ``psi``."""
    glued = glue(psi)
    assert isinstance(glued, PeriodicColoring)
    reduced = glued.path_colors()
    for i in range(psi.p):
        for j in range(i + 1, psi.p):
            if reduced[i] != reduced[j] and set(psi.support(i)) & set(psi.support(j)):
                return False
    return True


def splitting_colors(psi: PeriodicColoring) -> Dict[int, Tuple[int, ...]]:
    """Colors of ``psi`` that glue into each color of the reduced coloring."""
    glued = glue(psi)
    assert isinstance(glued, PeriodicColoring)
    reduced = glued.path_colors()
    result: Dict[int, set] = {}
    for i in range(psi.p):
        result.setdefault(reduced[i], set()).update(support(psi.profile(i)))
    return {color: tuple(sorted(colors)) for color, colors in sorted(result.items())}
