"""Exact rational evaluation of the cohesion score and the reduction threshold.

The score of a vertex set S is

    i(S)^2 / ( C(|S|,3) * (i(S) + o(S)) )

with i = triangles fully inside S and o = triangles with exactly two
vertices in S. It is 1 for an isolated clique and 0 for anything
triangle-free. Two conventions close the formula's holes: sets with fewer
than 3 vertices score 0 (the binomial vanishes), and i = 0 scores 0 (covers
the 0/0 case i + o = 0).

Everything here is exact rational arithmetic over Python's big ints via
``fractions.Fraction``; no float ever gates a solver or verifier decision.
Floats appear only in the JSON "approx" convenience field.

Documented discrepancy: a worked example in the metric's original
write-up shows a 4-vertex set with i = 2, o = 1 and quotes a score of 1/6,
but the formula above evaluates to 4/(4*3) = 1/3. This library treats the
formula as normative; see README for the note.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import DomainError
from .graph import Graph, VertexSet, VertexSetLike

__all__ = [
    "CohesionValue",
    "cohesion",
    "cohesion_of_set",
    "lambda_threshold",
    "compare",
    "cohesion_to_json",
]

# Exact rational score; always reduced, denominator > 0, value in [0, 1].
CohesionValue = Fraction


def cohesion(size: int, inside: int, outbound: int) -> Fraction:
    """Score from a subset's size and its inside/outbound triangle counts."""
    size = int(size)
    inside = int(inside)
    outbound = int(outbound)
    if size < 0:
        raise DomainError("set size must be non-negative")
    if inside < 0 or outbound < 0:
        raise DomainError("triangle counts must be non-negative")
    if inside > comb(size, 3):
        raise DomainError(
            f"impossible census: {inside} inside triangles in a set of {size}"
        )
    if size < 3 or inside == 0:
        return Fraction(0)
    return Fraction(inside * inside, comb(size, 3) * (inside + outbound))


def cohesion_of_set(g: Graph, s: VertexSetLike) -> Fraction:
    """Score of the set s within graph g."""
    from .triangles import census

    s = VertexSet.coerce(s)
    c = census(g, s)
    return cohesion(s.size, c.inside, c.outbound)


def lambda_threshold(k: int, n: int) -> Fraction:
    """Score a k-clique achieves inside the completed n-core of a reduction:
    C(k,3) / (C(k,3) + C(k,2)*(n-k)). Strictly increasing in k; 1 at k = n.
    """
    k = int(k)
    n = int(n)
    if n < 4:
        raise DomainError(f"need n >= 4, got n={n}")
    if k < 3 or k > n:
        raise DomainError(f"need 3 <= k <= n, got k={k}, n={n}")
    return Fraction(comb(k, 3), comb(k, 3) + comb(k, 2) * (n - k))


def compare(a: Fraction, b: Fraction) -> int:
    """-1, 0 or 1 as a is below, equal to, or above b. Exact."""
    if a < b:
        return -1
    if a > b:
        return 1
    return 0


def cohesion_to_json(value: Fraction) -> dict:
    """JSON form: exact decimal strings plus a float for human display only."""
    return {
        "num": str(value.numerator),
        "den": str(value.denominator),
        "approx": float(value),
    }
