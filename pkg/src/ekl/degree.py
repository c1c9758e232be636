"""The local degree pipeline for polynomial maps A^n -> A^n at the origin.

Given a square map f = (f_1, ..., f_n) vanishing at the origin whose whole
fiber over 0 is concentrated at the origin, the pipeline presents the
quotient algebra Q = K[x]/(f), forms the distinguished socle element
E = det(a_ij) from a splitting f_i = sum_j a_ij * x_j, builds the bilinear
form beta(a, b) = phi(a*b) for a functional phi with phi(E) = 1, and
classifies the resulting Gram matrix in GW(K).  The Jacobian element
J = det(d f_i / d x_j) satisfies J = dim(Q) * E away from characteristics
dividing the dimension, and the pipeline asserts this on every run.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from .gw import GramForm, GWClass, classify
from .localg import (
    AlgebraElement,
    GroebnerBasis,
    QuotientPresentation,
    coordinates,
    groebner,
    normal_form,
    origin_supported,
    quotient_presentation,
)
from .poly import (
    DEGREVLEX,
    MonomialOrder,
    Polynomial,
    mono_mul,
    parse_poly,
    partial_derivative,
    poly_det,
    substitute,
)
from .scalar import QQ


class NotSupportedAtOriginError(ValueError):
    """The fiber over the origin is not concentrated at the origin."""


class ZeroSocleError(ArithmeticError):
    """det(a_ij) vanished in the quotient; the zero is not isolated."""


@dataclass(frozen=True)
class MapSpec:
    """An ordered list of polynomial components, one per ring variable.

    Every component must vanish at the origin.
    """

    ring: tuple[str, ...]
    components: tuple[Polynomial, ...]

    def __post_init__(self) -> None:
        if not self.ring:
            raise ValueError("a map spec needs at least one variable")
        if len(self.components) != len(self.ring):
            raise ValueError("a map spec needs one component per variable")
        for f in self.components:
            if f.ring != self.ring:
                raise ValueError("component ring mismatch")
            if f.constant_term():
                raise ValueError("components must vanish at the origin")

    @property
    def field(self):
        return self.components[0].field

    @classmethod
    def build(cls, ring: Sequence[str], components: Sequence[Polynomial]) -> "MapSpec":
        return cls(tuple(ring), tuple(components))

    @classmethod
    def from_strings(cls, ring: Sequence[str], texts: Sequence[str], field=QQ) -> "MapSpec":
        ring = tuple(ring)
        return cls(ring, tuple(parse_poly(t, ring, field) for t in texts))

    @classmethod
    def from_json(cls, text: str, field=QQ) -> "MapSpec":
        data = json.loads(text)
        return cls.from_strings(data["variables"], data["components"], field)

    def to_json(self, comment: str | None = None) -> str:
        data: dict = {}
        if comment is not None:
            data["comment"] = comment
        data["variables"] = list(self.ring)
        data["components"] = [str(f) for f in self.components]
        return json.dumps(data, indent=2)


@dataclass(frozen=True)
class SocleData:
    """The splitting matrix a_ij with the socle and Jacobian residue classes."""

    coefficient_matrix: tuple[tuple[Polynomial, ...], ...]
    socle: AlgebraElement
    jacobian: AlgebraElement


@dataclass(frozen=True)
class EKLResult:
    """Everything the pipeline produced for one map."""

    quotient: QuotientPresentation
    gram: tuple[tuple, ...]
    gw_class: GWClass
    socle: AlgebraElement
    jacobian: AlgebraElement
    functional_monomial: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return self.quotient.dimension


def linear_decompose(f: MapSpec) -> list[list[Polynomial]]:
    """Split f_i = sum_j a_ij * x_j by assigning each monomial to its
    smallest-index variable.

    det(a_ij) mod the ideal does not depend on the splitting; this rule
    just makes runs reproducible.
    """
    n = len(f.ring)
    fld = f.field
    rows: list[list[Polynomial]] = []
    for comp in f.components:
        if comp.constant_term():
            raise ValueError("component has a nonzero constant term")
        cols: list[dict] = [dict() for _ in range(n)]
        for mono, coeff in comp.terms.items():
            j = next(k for k, e in enumerate(mono) if e > 0)
            reduced = mono[:j] + (mono[j] - 1,) + mono[j + 1 :]
            cols[j][reduced] = cols[j].get(reduced, fld.zero) + coeff
        rows.append([Polynomial(f.ring, fld, d) for d in cols])
    return rows


def socle_element(f: MapSpec, qp: QuotientPresentation) -> AlgebraElement:
    """Normal form of det(a_ij); nonzero whenever the zero is isolated."""
    det = poly_det(linear_decompose(f))
    element = coordinates(det, qp)
    if element.is_zero():
        raise ZeroSocleError("the distinguished socle element vanished")
    return element


def jacobian_element(f: MapSpec, qp: QuotientPresentation) -> AlgebraElement:
    """Normal form of the Jacobian determinant det(d f_i / d x_j)."""
    n = len(f.ring)
    jac = [
        [partial_derivative(f.components[i], f.ring[j]) for j in range(n)]
        for i in range(n)
    ]
    return coordinates(poly_det(jac), qp)


def compose_maps(f: MapSpec, g: MapSpec) -> MapSpec:
    """The composite map f o g, expanded in g's coordinates."""
    if len(f.ring) != len(g.ring):
        raise ValueError("maps have different numbers of variables")
    assignment = {name: g.components[i] for i, name in enumerate(f.ring)}
    comps = tuple(substitute(c, assignment, ring=g.ring) for c in f.components)
    return MapSpec(g.ring, comps)


def prepare_quotient(
    f: MapSpec, order: MonomialOrder | None = None
) -> tuple[GroebnerBasis, QuotientPresentation]:
    """Groebner basis and presentation of K[x]/(f_1, ..., f_n), with the
    supported-at-origin check that justifies using the global quotient for
    the local algebra."""
    gb = groebner(f.components, order or DEGREVLEX)
    qp = quotient_presentation(gb)
    if not origin_supported(qp):
        raise NotSupportedAtOriginError(
            "the fiber over the origin is not concentrated at the origin"
        )
    return gb, qp


def ekl_degree(
    f: MapSpec,
    order: MonomialOrder | None = None,
    check_jacobian: bool = True,
    threads: int = 1,
    functional_monomial: tuple[int, ...] | None = None,
) -> EKLResult:
    """The class of the bilinear form beta_phi in GW(K).

    phi is dual to one standard-monomial coordinate carrying a nonzero
    coefficient of the socle element (by default the order-maximal such
    monomial), scaled so that phi(E) = 1.  The class does not depend on
    this choice.
    """
    _, qp = prepare_quotient(f, order)
    socle = socle_element(f, qp)
    jac = jacobian_element(f, qp)
    if check_jacobian:
        _assert_jacobian_relation(f, qp, socle, jac)

    ord_ = qp.basis.order
    if functional_monomial is None:
        candidates = [
            m for m, c in zip(qp.standard_monomials, socle.coordinates) if c
        ]
        functional_monomial = ord_.max(candidates)
    index = qp.standard_monomials.index(functional_monomial)
    pivot = socle.coordinates[index]
    if not pivot:
        raise ValueError("the functional monomial does not appear in the socle element")

    gram = _gram_matrix(qp, index, pivot, threads)
    gw_class = classify(GramForm.from_field_entries(gram, qp.field), qp.field)
    if gw_class.rank != qp.dimension:
        raise ArithmeticError("the bilinear form is degenerate")
    return EKLResult(qp, gram, gw_class, socle, jac, functional_monomial)


def _assert_jacobian_relation(f, qp, socle, jac) -> None:
    fld = qp.field
    char = fld.characteristic
    if char and qp.dimension % char == 0:
        return  # the relation J = dim * E carries no information here
    expected = socle.scaled(fld.from_int(qp.dimension))
    if tuple(expected.coordinates) != tuple(jac.coordinates):
        raise ArithmeticError(
            "Jacobian element differs from dimension * socle element"
        )


def _gram_matrix(qp: QuotientPresentation, index: int, pivot, threads: int):
    basis = qp.standard_monomials
    d = qp.dimension
    fld = qp.field
    index_of = qp.monomial_index()
    scale = fld.one / pivot

    def entry(i: int, j: int):
        product = Polynomial(qp.ring, fld, {mono_mul(basis[i], basis[j]): fld.one})
        nf = normal_form(product, qp.basis)
        c = nf.terms.get(basis[index], fld.zero)
        for m in nf.terms:
            if m not in index_of:
                raise ArithmeticError("normal form left the standard-monomial span")
        return c * scale

    pairs = [(i, j) for i in range(d) for j in range(i, d)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(lambda ij: entry(*ij), pairs))
    else:
        values = [entry(i, j) for i, j in pairs]
    gram = [[fld.zero] * d for _ in range(d)]
    for (i, j), v in zip(pairs, values):
        gram[i][j] = v
        gram[j][i] = v
    return tuple(tuple(row) for row in gram)
