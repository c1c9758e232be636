"""Shared builders for randomized map tests.

The degree pipeline only accepts maps whose whole zero set is the origin,
so random instances are built from families where that is guaranteed:
diagonal monomial maps composed with invertible (unipotent) linear maps.
"""

from __future__ import annotations

import random

from ekl.degree import MapSpec, compose_maps
from ekl.poly import Polynomial
from ekl.scalar import QQ


def linear_map(matrix, ring=("x", "y"), field=QQ) -> MapSpec:
    """MapSpec sending x to A x for an integer matrix A."""
    ring = tuple(ring)
    n = len(ring)
    comps = []
    for i in range(n):
        terms = {}
        for j in range(n):
            if matrix[i][j]:
                mono = tuple(1 if k == j else 0 for k in range(n))
                terms[mono] = field.from_int(matrix[i][j])
        comps.append(Polynomial(ring, field, terms))
    return MapSpec(ring, tuple(comps))


def random_unipotent(rng: random.Random, n: int = 2, span: int = 2):
    """A random upper or lower triangular unipotent integer matrix."""
    m = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    upper = rng.random() < 0.5
    for i in range(n):
        for j in range(n):
            if (i < j if upper else i > j):
                m[i][j] = rng.randint(-span, span)
    return m


def monomial_map(rng: random.Random, ring=("x", "y"), max_exp: int = 2, field=QQ) -> MapSpec:
    """(c_1 x^a, c_2 y^b) with nonzero integer coefficients."""
    ring = tuple(ring)
    n = len(ring)
    comps = []
    for i in range(n):
        e = rng.randint(1, max_exp)
        c = rng.choice([-3, -2, -1, 1, 2, 3])
        mono = tuple(e if k == i else 0 for k in range(n))
        comps.append(Polynomial(ring, field, {mono: field.from_int(c)}))
    return MapSpec(ring, tuple(comps))


def random_origin_map(rng: random.Random, ring=("x", "y"), max_exp: int = 2) -> MapSpec:
    """A map with zero set exactly the origin: unipotent o monomial o unipotent."""
    core = monomial_map(rng, ring, max_exp)
    pre = linear_map(random_unipotent(rng, len(ring)), ring)
    post = linear_map(random_unipotent(rng, len(ring)), ring)
    return compose_maps(post, compose_maps(core, pre))
