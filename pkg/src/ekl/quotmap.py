"""Constructors for reflection-group quotient maps in invariant coordinates.

Each builder returns a QuotientSpec holding the ambient invariant
generators of source and target, the square map expressing the target
generators in the source coordinates, and the expected covering degree
(the ratio of the generator-degree products, which equals the index of
the source group in the target group).

Families:
  * symmetric-group partial quotients A^n / prod S_{n_i} -> A^n / S_n in
    elementary symmetric coordinates (the target components come from the
    convolution of the per-block generating polynomials);
  * full quotients for S_n, the signed-permutation groups (elementary
    symmetric functions of squares), and the even-sign variant (with the
    plain product of coordinates as the last generator);
  * the partial quotient of the even-sign group of odd rank over its
    corank-one subgroup fixing the first coordinate, which is the smallest
    family whose degree class picks up a non-unit residual summand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .degree import MapSpec
from .poly import Polynomial, elementary_symmetric, substitute
from .scalar import QQ
from .weyl import aP_formula_typeA


@dataclass(frozen=True)
class QuotientSpec:
    """A quotient map with its invariant-generator bookkeeping."""

    family: str  # A-partial | Sn-full | BC-full | D-full | D-odd-partial
    parameters: tuple[int, ...]
    ambient_ring: tuple[str, ...]
    source_generators: tuple[Polynomial, ...]
    target_generators: tuple[Polynomial, ...]
    map: MapSpec
    expected_degree: int

    def describe(self) -> str:
        params = ",".join(str(v) for v in self.parameters)
        return f"{self.family}({params})"


def _ambient(n: int, field) -> tuple[tuple[str, ...], list[Polynomial]]:
    ring = tuple(f"x{i}" for i in range(1, n + 1))
    xs = [Polynomial.variable(v, ring, field) for v in ring]
    return ring, xs


def _degree_ratio(target: Sequence[Polynomial], source: Sequence[Polynomial]) -> int:
    num = 1
    for g in target:
        num *= g.total_degree()
    den = 1
    for g in source:
        den *= g.total_degree()
    if num % den:
        raise ArithmeticError("generator degrees do not divide")
    return num // den


_BLOCK_LETTERS = "yzwuvt"


def _block_names(blocks: Sequence[int]) -> list[list[str]]:
    if len(blocks) <= len(_BLOCK_LETTERS):
        return [
            [f"{_BLOCK_LETTERS[i]}{j}" for j in range(1, b + 1)]
            for i, b in enumerate(blocks)
        ]
    return [
        [f"b{i + 1}x{j}" for j in range(1, b + 1)] for i, b in enumerate(blocks)
    ]


def build_typeA_partial(blocks: Sequence[int], field=QQ) -> QuotientSpec:
    """The map A^n / prod S_{n_i} -> A^n / S_n in elementary symmetric
    coordinates.

    Source coordinate (i, j) is e_j of block i; the k-th target component
    is the coefficient of t^k in the product over blocks of
    (1 + y_{i,1} t + ... + y_{i,n_i} t^{n_i}).
    """
    blocks = tuple(int(b) for b in blocks)
    if not blocks or any(b <= 0 for b in blocks):
        raise ValueError("blocks must be a non-empty list of positive integers")
    n = sum(blocks)
    names = _block_names(blocks)
    ring = tuple(name for group in names for name in group)
    one = Polynomial.constant(1, ring, field)
    zero = Polynomial.zero(ring, field)

    coeffs = [one] + [zero] * n  # running coefficients of the t-polynomial
    degree_so_far = 0
    for i, b in enumerate(blocks):
        block_vars = [Polynomial.variable(v, ring, field) for v in names[i]]
        new = [zero] * (degree_so_far + b + 1)
        for k in range(degree_so_far + 1):
            if coeffs[k].is_zero():
                continue
            new[k] = new[k] + coeffs[k]
            for j, y in enumerate(block_vars, start=1):
                new[k + j] = new[k + j] + coeffs[k] * y
        for k in range(degree_so_far + b + 1):
            coeffs[k] = new[k]
        degree_so_far += b

    components = tuple(coeffs[k] for k in range(1, n + 1))
    spec_map = MapSpec(ring, components)

    ambient_ring, _ = _ambient(n, field)
    source_gens = []
    offset = 0
    for b in blocks:
        block_ambient = [f"x{offset + j}" for j in range(1, b + 1)]
        for j in range(1, b + 1):
            source_gens.append(
                elementary_symmetric(j, block_ambient, ambient_ring, field)
            )
        offset += b
    target_gens = [
        elementary_symmetric(k, ambient_ring, ambient_ring, field)
        for k in range(1, n + 1)
    ]

    expected = math.factorial(n)
    for b in blocks:
        expected //= math.factorial(b)
    spec = QuotientSpec(
        "A-partial",
        blocks,
        ambient_ring,
        tuple(source_gens),
        tuple(target_gens),
        spec_map,
        expected,
    )
    assert _degree_ratio(spec.target_generators, spec.source_generators) == expected
    return spec


def build_Sn_full(n: int, field=QQ) -> QuotientSpec:
    """The full quotient A^n -> A^n / S_n: components e_1, ..., e_n."""
    if n < 1:
        raise ValueError("n must be positive")
    ring, xs = _ambient(n, field)
    gens = tuple(
        elementary_symmetric(k, ring, ring, field) for k in range(1, n + 1)
    )
    return QuotientSpec(
        "Sn-full",
        (n,),
        ring,
        tuple(xs),
        gens,
        MapSpec(ring, gens),
        math.factorial(n),
    )


def build_typeBC_full(n: int, field=QQ) -> QuotientSpec:
    """Full signed-permutation quotient: components e_k(x_1^2, ..., x_n^2)."""
    if n < 1:
        raise ValueError("n must be positive")
    ring, xs = _ambient(n, field)
    squares = {f"x{i}": xs[i - 1] * xs[i - 1] for i in range(1, n + 1)}
    gens = tuple(
        substitute(elementary_symmetric(k, ring, ring, field), squares)
        for k in range(1, n + 1)
    )
    return QuotientSpec(
        "BC-full",
        (n,),
        ring,
        tuple(xs),
        gens,
        MapSpec(ring, gens),
        _degree_ratio(gens, xs),
    )


def build_D_full(n: int, field=QQ) -> QuotientSpec:
    """Full even-sign quotient: e_1(x^2), ..., e_{n-1}(x^2) and x_1 ... x_n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    ring, xs = _ambient(n, field)
    squares = {f"x{i}": xs[i - 1] * xs[i - 1] for i in range(1, n + 1)}
    gens = [
        substitute(elementary_symmetric(k, ring, ring, field), squares)
        for k in range(1, n)
    ]
    product = xs[0]
    for x in xs[1:]:
        product = product * x
    gens.append(product)
    gens = tuple(gens)
    return QuotientSpec(
        "D-full",
        (n,),
        ring,
        tuple(xs),
        gens,
        MapSpec(ring, gens),
        _degree_ratio(gens, xs),
    )


def build_D_odd_partial(m: int, field=QQ) -> QuotientSpec:
    """The partial quotient for the odd-rank even-sign group over the
    corank-one subgroup acting on the last 2m coordinates.

    Ambient variables x_1 .. x_{2m+1}.  Source coordinates:
    u0 = x_1, u_k = e_k(x_2^2, ..., x_{2m+1}^2) for k = 1 .. 2m-1, and
    u_{2m} = x_2 ... x_{2m+1}.  Target components in those coordinates:
    p_1 = u_1 + u0^2, p_k = u_k + u0^2 u_{k-1} for k = 2 .. 2m-1,
    p_{2m} = u_{2m}^2 + u0^2 u_{2m-1}, p_{2m+1} = u0 u_{2m}.
    """
    if m < 2:
        raise ValueError("m must be at least 2")
    big = 2 * m + 1
    ring = tuple(f"u{k}" for k in range(2 * m + 1))
    u = [Polynomial.variable(v, ring, field) for v in ring]
    u0sq = u[0] * u[0]
    comps = [u[1] + u0sq]
    for k in range(2, 2 * m):
        comps.append(u[k] + u0sq * u[k - 1])
    comps.append(u[2 * m] * u[2 * m] + u0sq * u[2 * m - 1])
    comps.append(u[0] * u[2 * m])
    spec_map = MapSpec(ring, tuple(comps))

    ambient_ring, xs = _ambient(big, field)
    tail = [f"x{i}" for i in range(2, big + 1)]
    tail_squares = {name: xs[i] * xs[i] for i, name in enumerate(ambient_ring)}
    source_gens = [xs[0]]
    for k in range(1, 2 * m):
        source_gens.append(
            substitute(elementary_symmetric(k, tail, ambient_ring, field), tail_squares)
        )
    tail_product = xs[1]
    for x in xs[2:]:
        tail_product = tail_product * x
    source_gens.append(tail_product)

    target = build_D_full(big, field)
    spec = QuotientSpec(
        "D-odd-partial",
        (m,),
        ambient_ring,
        tuple(source_gens),
        target.target_generators,
        spec_map,
        _degree_ratio(target.target_generators, source_gens),
    )
    return spec


@dataclass(frozen=True)
class ExpectedShape:
    """Predicted class shape: p<1> + q<-1> plus a residual of unknown unit."""

    ones: int
    minus_ones: int
    residual_count: int
    rank: int


def expected_gw(spec: QuotientSpec) -> ExpectedShape:
    """Predicted class shape for a built quotient map.

    Partial symmetric quotients have a = floor(n/2)!/prod floor(n_i/2)!
    when at most one block is odd (else 0), absorbed into the unit counts
    since the unit there is 1.  Full quotients of groups containing a
    reflection are integer multiples of the rank-2 split form.  The odd
    even-sign partial quotient keeps a residual of two copies of one
    square class.
    """
    deg = spec.expected_degree
    if spec.family == "A-partial":
        a = aP_formula_typeA(spec.parameters)
        return ExpectedShape((deg + a) // 2, (deg - a) // 2, 0, deg)
    if spec.family in ("Sn-full", "BC-full", "D-full"):
        if deg == 1:
            return ExpectedShape(1, 0, 0, 1)
        return ExpectedShape(deg // 2, deg // 2, 0, deg)
    if spec.family == "D-odd-partial":
        return ExpectedShape((deg - 2) // 2, (deg - 2) // 2, 2, deg)
    raise ValueError(f"unknown family {spec.family!r}")


def verify_generators(spec: QuotientSpec) -> bool:
    """Substituting the source-generator definitions into the map components
    must reproduce the target generators in ambient coordinates."""
    assignment = dict(zip(spec.map.ring, spec.source_generators))
    for component, target in zip(spec.map.components, spec.target_generators):
        image = substitute(component, assignment, ring=spec.ambient_ring)
        if image != target:
            return False
    return True
