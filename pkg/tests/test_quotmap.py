import pytest

from ekl.degree import ekl_degree
from ekl.localg import groebner, quotient_presentation
from ekl.poly import (
    Polynomial,
    elementary_symmetric,
    parse_poly,
    partial_derivative,
    poly_det,
    substitute,
)
from ekl.quotmap import (
    ExpectedShape,
    build_D_full,
    build_D_odd_partial,
    build_Sn_full,
    build_typeA_partial,
    build_typeBC_full,
    expected_gw,
    verify_generators,
)
from ekl.scalar import QQ


# ---------------------------------------------------------------------------
# construction examples

def test_blocks_1_1_is_s2_quotient():
    spec = build_typeA_partial([1, 1])
    assert [str(c) for c in spec.map.components] == ["y1 + z1", "y1*z1"]
    assert spec.expected_degree == 2


def test_blocks_2_2_components():
    spec = build_typeA_partial([2, 2])
    ring = spec.map.ring
    assert ring == ("y1", "y2", "z1", "z2")
    p = [str(c) for c in spec.map.components]
    assert parse_poly(p[0], ring) == parse_poly("y1 + z1", ring)
    assert parse_poly(p[1], ring) == parse_poly("y2 + y1*z1 + z2", ring)
    assert parse_poly(p[2], ring) == parse_poly("y1*z2 + y2*z1", ring)
    assert parse_poly(p[3], ring) == parse_poly("y2*z2", ring)
    assert spec.expected_degree == 6


def test_single_block_is_identity():
    spec = build_typeA_partial([3])
    assert spec.expected_degree == 1
    for i, c in enumerate(spec.map.components):
        assert c == Polynomial.variable(spec.map.ring[i], spec.map.ring, QQ)


def test_sn_full_examples():
    s2 = build_Sn_full(2)
    assert [str(c) for c in s2.map.components] == ["x1 + x2", "x1*x2"]
    s3 = build_Sn_full(3)
    assert s3.expected_degree == 6
    assert len(s3.map.components) == 3
    s1 = build_Sn_full(1)
    assert str(s1.map.components[0]) == "x1"


def test_bc_full_examples():
    b1 = build_typeBC_full(1)
    assert str(b1.map.components[0]) == "x1^2"
    b2 = build_typeBC_full(2)
    assert [str(c) for c in b2.map.components] == ["x1^2 + x2^2", "x1^2*x2^2"]
    assert b2.expected_degree == 8
    assert build_typeBC_full(3).expected_degree == 48


def test_bc_invariance_oracle():
    # components must be invariant under sign flips and coordinate swaps
    spec = build_typeBC_full(2)
    ring = spec.ambient_ring
    x1 = Polynomial.variable("x1", ring, QQ)
    x2 = Polynomial.variable("x2", ring, QQ)
    for comp in spec.map.components:
        amb = substitute(comp, dict(zip(spec.map.ring, spec.source_generators)), ring=ring)
        flipped = substitute(amb, {"x1": -x1, "x2": x2})
        swapped = substitute(amb, {"x1": x2, "x2": x1})
        assert flipped == amb
        assert swapped == amb


def test_d_full():
    d2 = build_D_full(2)
    assert [str(c) for c in d2.map.components] == ["x1^2 + x2^2", "x1*x2"]
    assert d2.expected_degree == 4
    d3 = build_D_full(3)
    assert d3.expected_degree == 24
    with pytest.raises(ValueError):
        build_D_full(1)


def test_d_odd_partial_m2():
    spec = build_D_odd_partial(2)
    ring = spec.map.ring
    assert ring == ("u0", "u1", "u2", "u3", "u4")
    comps = [str(c) for c in spec.map.components]
    assert parse_poly(comps[0], ring) == parse_poly("u1 + u0^2", ring)
    assert parse_poly(comps[3], ring) == parse_poly("u4^2 + u0^2*u3", ring)
    assert parse_poly(comps[4], ring) == parse_poly("u0*u4", ring)
    assert spec.expected_degree == 10  # 1920 / 192
    # degree bookkeeping: (2*4*6*8*5)/(1*2*4*6*4)
    assert (2 * 4 * 6 * 8 * 5) // (1 * 2 * 4 * 6 * 4) == 10


def test_d_odd_partial_m3_degree():
    spec = build_D_odd_partial(3)
    assert spec.expected_degree == 14  # |W(D7)| / |W(D6)|
    with pytest.raises(ValueError):
        build_D_odd_partial(1)


# ---------------------------------------------------------------------------
# generator substitution identities

@pytest.mark.parametrize(
    "spec_builder",
    [
        lambda: build_typeA_partial([1, 1]),
        lambda: build_typeA_partial([2, 1]),
        lambda: build_typeA_partial([2, 2]),
        lambda: build_typeA_partial([3, 1]),
        lambda: build_typeA_partial([2, 2, 1]),
        lambda: build_Sn_full(3),
        lambda: build_typeBC_full(2),
        lambda: build_typeBC_full(3),
        lambda: build_D_full(2),
        lambda: build_D_full(3),
        lambda: build_D_odd_partial(2),
        lambda: build_D_odd_partial(3),
    ],
)
def test_generator_substitution_identity(spec_builder):
    assert verify_generators(spec_builder())


def test_d_odd_substitution_targets():
    # the composed generators are e_k of all squares plus the full product
    spec = build_D_odd_partial(2)
    ring = spec.ambient_ring
    squares = {
        v: Polynomial.variable(v, ring, QQ) * Polynomial.variable(v, ring, QQ)
        for v in ring
    }
    for k in range(1, 5):
        expect = substitute(elementary_symmetric(k, ring, ring, QQ), squares)
        assert spec.target_generators[k - 1] == expect
    prod = Polynomial.constant(1, ring, QQ)
    for v in ring:
        prod = prod * Polynomial.variable(v, ring, QQ)
    assert spec.target_generators[4] == prod


# ---------------------------------------------------------------------------
# dimension ties group index

@pytest.mark.parametrize(
    "spec_builder",
    [
        lambda: build_typeA_partial([2, 2]),
        lambda: build_typeA_partial([2, 1]),
        lambda: build_Sn_full(3),
        lambda: build_typeBC_full(2),
        lambda: build_D_full(2),
        lambda: build_D_odd_partial(2),
        lambda: build_D_odd_partial(3),
    ],
)
def test_quotient_dimension_equals_degree(spec_builder):
    spec = spec_builder()
    qp = quotient_presentation(groebner(spec.map.components))
    assert qp.dimension == spec.expected_degree


# ---------------------------------------------------------------------------
# Jacobian factorization and chain rule

def cross_block_product(ring, blocks):
    """prod (x_i - x_j) over pairs i < j in different contiguous blocks."""
    n = sum(blocks)
    bounds = []
    acc = 0
    for b in blocks:
        acc += b
        bounds.append(acc)
    def block_of(i):
        for k, b in enumerate(bounds):
            if i <= b:
                return k
    result = Polynomial.constant(1, ring, QQ)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if block_of(i) != block_of(j):
                xi = Polynomial.variable(f"x{i}", ring, QQ)
                xj = Polynomial.variable(f"x{j}", ring, QQ)
                result = result * (xi - xj)
    return result


def vandermonde(ring, names):
    result = Polynomial.constant(1, ring, QQ)
    for i in range(len(names)):
        for j in range(i + 1, len(names)):
            result = result * (
                Polynomial.variable(names[i], ring, QQ)
                - Polynomial.variable(names[j], ring, QQ)
            )
    return result


def jacobian_det(components, ring_names, ring):
    mat = [
        [partial_derivative(c, v) for v in ring_names]
        for c in components
    ]
    return poly_det(mat)


@pytest.mark.parametrize("blocks", [(1, 1), (2, 1), (1, 1, 1), (2, 2), (3, 1), (1, 2, 1)])
def test_jacobian_factorization(blocks):
    # the map's Jacobian, pushed through the source generators, equals the
    # product of cross-block differences
    spec = build_typeA_partial(list(blocks))
    jac_y = jacobian_det(spec.map.components, spec.map.ring, spec.map.ring)
    pushed = substitute(
        jac_y, dict(zip(spec.map.ring, spec.source_generators)), ring=spec.ambient_ring
    )
    assert pushed == cross_block_product(spec.ambient_ring, blocks)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_full_jacobian_is_vandermonde(n):
    spec = build_Sn_full(n)
    jac = jacobian_det(spec.map.components, spec.map.ring, spec.map.ring)
    names = [f"x{i}" for i in range(1, n + 1)]
    assert jac == vandermonde(spec.ambient_ring, names)


@pytest.mark.parametrize("blocks", [(1, 1), (2, 1), (2, 2), (3, 1), (2, 1, 1)])
def test_chain_rule_consistency(blocks):
    # Jacobian(full map) = Jacobian(partial map at the generators) * prod of
    # block Vandermonde determinants
    n = sum(blocks)
    full = build_Sn_full(n)
    partial = build_typeA_partial(list(blocks))
    ring = full.ambient_ring
    jac_full = jacobian_det(full.map.components, full.map.ring, ring)
    jac_partial = substitute(
        jacobian_det(partial.map.components, partial.map.ring, partial.map.ring),
        dict(zip(partial.map.ring, partial.source_generators)),
        ring=ring,
    )
    product = jac_partial
    offset = 0
    for b in blocks:
        names = [f"x{offset + j}" for j in range(1, b + 1)]
        product = product * vandermonde(ring, names)
        offset += b
    assert jac_full == product


# ---------------------------------------------------------------------------
# expected shapes

def test_expected_gw_shapes():
    assert expected_gw(build_typeA_partial([2, 2])) == ExpectedShape(4, 2, 0, 6)
    assert expected_gw(build_Sn_full(4)) == ExpectedShape(12, 12, 0, 24)
    assert expected_gw(build_Sn_full(1)) == ExpectedShape(1, 0, 0, 1)
    assert expected_gw(build_typeBC_full(2)) == ExpectedShape(4, 4, 0, 8)
    assert expected_gw(build_D_odd_partial(2)) == ExpectedShape(4, 4, 2, 10)


def test_blocks_2_2_class_matches_prediction():
    spec = build_typeA_partial([2, 2])
    res = ekl_degree(spec.map)
    shape = expected_gw(spec)
    from ekl.gw import gw_equal, units_class

    assert gw_equal(res.gw_class, units_class(shape.ones, shape.minus_ones, (), QQ))


def test_d_odd_class_independent_of_monomial_order():
    from ekl.gw import gw_equal
    from ekl.poly import LEX

    spec = build_D_odd_partial(2)
    assert gw_equal(
        ekl_degree(spec.map).gw_class, ekl_degree(spec.map, order=LEX).gw_class
    )


def test_d_odd_partial_m3_class_shape():
    # degree 14: six split planes plus a rank-2 residual of one square class
    from ekl.gw import gw_equal, recognize_units, units_class
    from ekl.scalar import SquareClass

    res = ekl_degree(build_D_odd_partial(3).map)
    c = res.gw_class
    assert c.rank == 14
    assert abs(c.signature) == 2
    assert c.discriminant == SquareClass(1)
    shape = recognize_units(c)
    alpha = shape.residual[0].rep if shape.residual else 1
    residual = (SquareClass(alpha),) * 2
    assert gw_equal(c, units_class(6, 6, residual, QQ))


def test_build_rejects_bad_parameters():
    with pytest.raises(ValueError):
        build_typeA_partial([])
    with pytest.raises(ValueError):
        build_typeA_partial([0, 2])
    with pytest.raises(ValueError):
        build_Sn_full(0)
    with pytest.raises(ValueError):
        build_typeBC_full(0)
