from collections import defaultdict

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvecensus import tripling as T
from curvecensus.census import prime_powers
from curvecensus.curve import (
    apply_witness,
    brute_force_iso,
    isomorphic_fq,
    j_invariant,
    point_count,
    to_short,
)
from curvecensus.field import FieldError, enumerate_field, field_of_order, make_field

F5, F7, F11, F13 = (make_field(p) for p in (5, 7, 11, 13))
TRIPLING_Q = [q for q in prime_powers(5, 200) if q % 3]


def j_groups(F):
    """Admissible parameters grouped by the generic j-invariant."""
    groups = defaultdict(list)
    for u in T.admissible_params(F):
        groups[j_invariant(T.t_curve(u)).v].append(u.v)
    return groups


def test_t_curve_examples():
    assert T.t_curve(F7(1)).coeffs == (3, 6, 3)
    with pytest.raises(T.InadmissibleParameter):
        T.t_curve(F7(4))
    with pytest.raises(T.InadmissibleParameter):
        T.t_curve(F11(5))
    with pytest.raises(FieldError):
        T.admissible_params(make_field(3))


def test_t_short_examples():
    assert (T.t_short(F5(3)).a, T.t_short(F5(3)).b) == (1, 4)
    assert (T.t_short(F5(4)).a, T.t_short(F5(4)).b) == (1, 4)
    # 6^2 = 1 in F_5 and F_7, so the scaled model coincides with to_short there
    for F in (F5, F7):
        for u in T.admissible_params(F):
            assert T.t_short(u) == to_short(T.t_curve(u))


@pytest.mark.parametrize("q", [11, 13, 25, 49])
def test_t_short_is_alpha6_rescaling(q):
    F = field_of_order(q)
    for u in T.admissible_params(F):
        s, w = to_short(T.t_curve(u)), T.t_short(u)
        assert (w.a, w.b) == (6**4 * s.a, 6**6 * s.b)
        assert j_invariant(w.as_cubic()) == T.t_j(u)


def test_t_j_examples():
    for q in (7, 11, 13, 25):
        F = field_of_order(q)
        assert T.t_j(F(2)) == 0
        for u in T.b2_roots(F):
            assert T.t_j(u) == 1728
    assert T.t_j(F7(1)) == 2


def test_psi_delta_examples():
    assert T.psi(F7(2)) == 6
    assert T.psi(F11(1)) == 1
    assert T.psi(F7.from_ratio(9, 4)) == 0
    assert T.t_delta(F7(2)) == 0
    assert T.t_delta(F7(1)) == 1


def test_z_set_examples():
    assert T.z_set(F7(1)) == []
    assert T.z_set(F11(1)) == [7]
    with pytest.raises(ValueError):
        T.z_set(F7(2))


def test_jbar_class_and_label_examples():
    assert T.t_jbar_class(F7(2)) == [2]
    assert T.t_jbar_class(F11(1)) == [1, 7]
    assert T.t_label(F7(1)) == "A1"
    assert T.t_label(F7(2)) == "B1"
    assert T.t_label(F11(1)) == "A2"


def test_partition_count_examples():
    assert T.t_partition_counts(F13) == (8, 0, 0, 1, 2)
    assert T.t_partition_counts(F7) == (4, 0, 0, 1, 0)
    assert T.t_partition_counts(F5) == (0, 2, 0, 1, 0)
    for q in (13, 7, 5):
        assert T.table1_row(q) == T.t_partition_counts(field_of_order(q))


def test_iso_pair_examples():
    assert T.iso_pair_from_w(F11(1)) == T.IsoPair(F11(1), F11(7), F11(1), False)
    hit = T.iso_pair_from_w(F7(3))
    assert (hit.u, hit.v, hit.degenerate) == (2, 2, True)
    with pytest.raises(ValueError):
        T.iso_pair_from_w(F7(2))


def test_fq_class_examples():
    cs = T.t_fq_class(F5(3))
    assert cs.jbar_members == [3, 4] and cs.fq_blocks == [[3, 4]]
    cs = T.t_fq_class(F7(2))
    assert cs.jbar_members == [2] and cs.fq_blocks == [[2]]
    assert [1, 7] in T.t_fq_class(F11(1)).fq_blocks


def test_point_count_examples():
    assert T.n1(F7) == 25
    assert T.n2(F5) == 8
    with pytest.raises(FieldError):
        T.n1(F5)


def n1_by_enumeration(F):
    """Affine points (x, y1, y2, y3) of C by literal search."""
    from curvecensus.field import primitive_cube_root

    zeta = primitive_cube_root(F)
    els = enumerate_field(F)
    sq = defaultdict(int)
    for y in els:
        sq[(y * y).v] += 1
    total = 0
    for x in els:
        prod = 1
        for z in (F.one, zeta, zeta * zeta):
            t = z * x
            prod *= sq[(3 * t * (t + 1) * (t - 2)).v]
        total += prod
    return total


@pytest.mark.parametrize("q", [7, 13, 19, 25, 31, 37, 43, 49])
def test_n1_matches_enumeration(q):
    assert T.n1(field_of_order(q)) == n1_by_enumeration(field_of_order(q))


def test_count_formula_examples():
    assert T.t_count_jbar_formula(13) == 10
    assert T.t_count_jbar_formula(11) == 5
    assert T.t_count_jbar_formula(7) == 5
    assert T.t_count_fq_formula(7) == 5
    assert T.t_count_fq_formula(5) == 2
    assert T.t_tilde_counts(F7)[2] == 0
    assert T.t_tilde_counts(F5)[1] == 2
    assert T.table2_row(7) == T.t_tilde_counts(F7)
    assert T.table2_row(5) == T.t_tilde_counts(F5)


@pytest.mark.parametrize("q", TRIPLING_Q)
def test_classes_against_j_grouping(q):
    F = field_of_order(q)
    groups = j_groups(F)
    for u in T.admissible_params(F):
        cls = [x.v for x in T.t_jbar_class(u)]
        assert cls == groups[j_invariant(T.t_curve(u)).v]
        assert len(cls) == T.expected_class_size(T.t_label(u))
        assert T.t_j(u) == j_invariant(T.t_curve(u))
    assert len(groups) == T.t_count_jbar_formula(q)


@pytest.mark.parametrize("q", [5, 7, 11, 13, 17, 19, 23, 25, 29, 31])
def test_lemma_pairs_match_brute_force(q):
    F = field_of_order(q)
    params = T.admissible_params(F)
    curves = {u.v: T.t_curve(u) for u in params}
    brute = {
        (u.v, v.v)
        for u in params
        for v in params
        if u != v and brute_force_iso(curves[u.v], curves[v.v]) is not None
    }
    assert T.lemma_iso_pairs(F) == brute


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(TRIPLING_Q), st.data())
def test_iso_pair_gives_real_isomorphism(q, data):
    F = field_of_order(q)
    w = F.elem(F.digits(data.draw(st.integers(0, q - 1))))
    if w == 0 or w == -1 or w == 2 or w**3 == 8:
        return
    hit = T.iso_pair_from_w(w)
    if hit is not None:
        cu, cv = T.t_curve(hit.u), T.t_curve(hit.v)
        wit = isomorphic_fq(cu, cv)
        assert wit is not None and apply_witness(cu, wit) == cv


@pytest.mark.parametrize("q", [q for q in TRIPLING_Q if q % 3 == 2])
def test_n2_hasse_and_formula_integrality(q):
    N2 = T.n2(field_of_order(q))
    assert abs(N2 - (q + 1)) ** 2 <= 4 * q
    assert N2 % 4 == 0


@pytest.mark.parametrize("q", [q for q in TRIPLING_Q if q % 3 == 2 or q % 24 in (1, 13)][:12])
def test_b2_class_splits_unless_q_is_1_mod_8(q):
    F = field_of_order(q)
    roots = T.b2_roots(F)
    if not roots:
        return
    blocks = T.t_fq_class(roots[0]).fq_blocks
    assert (len(blocks) == 1) == (q % 8 == 1)


def test_legendre13_is_the_advertised_curve():
    F = F11
    c = T.legendre13(F)
    third = F.from_ratio(1, 3)
    for x in enumerate_field(F):
        assert c.rhs(x) == x * (x - 1) * (x - third)
    assert point_count(c) == T.n2(F)
