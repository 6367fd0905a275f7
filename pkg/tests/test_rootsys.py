"""Root patterns, Cartan pairings and affinized matrix construction."""

from __future__ import annotations

import random

import pytest

from imalg.rootsys import (AffinizationSpec, GradingDegree, RankError, Root,
                           RootError, RootKind, base_roots,
                           build_affinized_matrix, cartan_pairing,
                           classify_omega_theta, eps, eps_pair, is_gim,
                           is_omega_root, root, root_of_position)


def test_root_kinds():
    assert root([1, -1, 0]).kind is RootKind.LONG
    assert root([0, 0, 1]).kind is RootKind.SHORT
    assert root([0, -2, 0]).kind is RootKind.EXTRALONG
    with pytest.raises(RootError):
        root([1, 1, 1])
    with pytest.raises(RootError):
        root([0, 0, 0])
    with pytest.raises(RootError):
        root([3, 0, 0])


def test_is_gim_examples():
    assert is_gim([[2, -1, 0, 1], [-1, 2, -1, 1], [0, -2, 2, -2],
                   [1, 1, -1, 2]])
    assert is_gim([[2, 0], [0, 2]])
    assert not is_gim([[2, -1], [1, 2]])
    assert not is_gim([[1, 0], [0, 2]])
    with pytest.raises(ValueError):
        is_gim([[2, 0]])


def test_cartan_pairing_examples():
    a = eps_pair(1, 2, 3, 1, -1)  # e1 - e2
    b = eps_pair(2, 3, 3, 1, -1)  # e2 - e3
    assert cartan_pairing(a, b) == -1
    e3 = eps(3, 3)
    assert cartan_pairing(e3, e3) == 2
    # asymmetry of the normalized pairing
    assert cartan_pairing(e3, b) == -2
    assert cartan_pairing(b, e3) == -1


def test_cartan_pairing_self_is_two():
    rng = random.Random(7)
    for _ in range(50):
        r = rng.randint(3, 6)
        shape = rng.randrange(3)
        if shape == 0:
            i = rng.randint(1, r)
            rt = eps(i, r, rng.choice((1, -1)))
        elif shape == 1:
            i = rng.randint(1, r)
            rt = eps(i, r, rng.choice((2, -2)))
        else:
            i, j = rng.sample(range(1, r + 1), 2)
            rt = eps_pair(i, j, r, rng.choice((1, -1)), rng.choice((1, -1)))
        assert cartan_pairing(rt, rt) == 2


def test_base_roots():
    base = base_roots(3)
    assert base == [root([1, -1, 0]), root([0, 1, -1]), root([0, 0, 1])]
    assert len(base_roots(4)) == 4
    assert base_roots(4)[-1] == eps(4, 4)
    with pytest.raises(RankError):
        base_roots(2)
    # A_ij = 2(a_i, a_j)/(a_i, a_i): rows normalized by their own root
    pairings = [[cartan_pairing(a, b) for b in base] for a in base]
    assert pairings == [[2, -1, 0], [-1, 2, -1], [0, -2, 2]]


def test_affinized_matrix_b3_affine():
    # adjoining -e1-e2 to the B_3 base gives the affine generalized
    # Cartan matrix of type B_3^(1)
    spec = AffinizationSpec(3, ((root([-1, -1, 0]), 1),))
    m = build_affinized_matrix(spec)
    assert m.rows() == [
        [2, -1, 0, 0],
        [-1, 2, -1, -1],
        [0, -2, 2, 0],
        [0, -1, 0, 2],
    ]
    assert is_gim(m.rows())


def test_affinized_matrix_positive_entry():
    spec = AffinizationSpec(3, ((root([1, 1, 0]), 1),))
    m = build_affinized_matrix(spec)
    # the adjoined row pairs positively against alpha_2 = e2-e3
    assert m[4, 2] == 1
    assert m[2, 4] == 1
    assert is_gim(m.rows())


def test_affinized_matrix_d_zero():
    m = build_affinized_matrix(AffinizationSpec(3))
    assert m.rows() == [[2, -1, 0], [-1, 2, -1], [0, -2, 2]]


def test_affinized_matrix_duplicate_copies():
    spec = AffinizationSpec(3, ((root([1, 1, 0]), 2),))
    m = build_affinized_matrix(spec)
    assert m.n == 5
    assert m[4, 5] == 2 and m[5, 4] == 2
    assert m.rows()[3] == m.rows()[4]


def test_spec_validation():
    with pytest.raises(RankError):
        AffinizationSpec(2)
    with pytest.raises(RootError):
        AffinizationSpec(3, ((eps(1, 3), 1),))  # short root
    with pytest.raises(RootError):
        AffinizationSpec(3, ((root([2, 0, 0]), 1),))  # extra-long root
    with pytest.raises(ValueError):
        AffinizationSpec(3, ((root([1, 1, 0]), 0),))


def test_classify_omega_theta():
    spec = AffinizationSpec(3, ((root([1, 1, 0]), 1), (root([1, 0, -1]), 1)))
    omega, theta = classify_omega_theta(spec)
    assert omega == {root([1, 1, 0])}
    assert theta == {root([1, 0, -1])}
    omega, theta = classify_omega_theta(
        AffinizationSpec(3, ((root([0, -1, -1]), 1),)))
    assert omega == {root([0, -1, -1])} and theta == set()
    omega, theta = classify_omega_theta(
        AffinizationSpec(3, ((root([1, 0, 1]), 1),)))
    assert omega == set() and theta == {root([1, 0, 1])}


def test_is_omega_root():
    assert is_omega_root(root([1, 1, 0]))
    assert is_omega_root(root([0, -1, -1]))
    assert not is_omega_root(root([1, 0, 1]))
    assert not is_omega_root(root([1, -1, 0]))


def test_root_of_position_examples():
    assert root_of_position(1, 2, 3) == GradingDegree((1, -1, 0))
    assert root_of_position(1, 7, 3) == GradingDegree((2, 0, 0))
    assert root_of_position(4, 4, 3) == GradingDegree((0, 0, 0))
    assert root_of_position(4, 4, 3).is_zero
    with pytest.raises(IndexError):
        root_of_position(0, 1, 3)
    with pytest.raises(IndexError):
        root_of_position(1, 8, 3)


def test_root_of_position_antisymmetry():
    rng = random.Random(3)
    for _ in range(100):
        r = rng.randint(3, 5)
        i = rng.randint(1, 2 * r + 1)
        j = rng.randint(1, 2 * r + 1)
        assert root_of_position(i, j, r) == -root_of_position(j, i, r)


def _random_spec(rng: random.Random, r: int, max_d: int = 3):
    pool = []
    for i in range(1, r + 1):
        for j in range(i + 1, r + 1):
            for si in (1, -1):
                for sj in (1, -1):
                    pool.append(eps_pair(i, j, r, si, sj))
    adjoined = []
    total = 0
    while total < rng.randint(0, max_d):
        rt = rng.choice(pool)
        copies = rng.randint(1, 2)
        if total + copies > max_d:
            copies = 1
        adjoined.append((rt, copies))
        total += copies
    return AffinizationSpec(r, tuple(adjoined))


def test_random_specs_gim_and_base_block():
    rng = random.Random(20240501)
    cartan = {r: [[cartan_pairing(a, b) for b in base_roots(r)]
                  for a in base_roots(r)] for r in (3, 4, 5)}
    for _ in range(100):
        r = rng.choice((3, 4, 5))
        spec = _random_spec(rng, r)
        m = build_affinized_matrix(spec)
        rows = m.rows()
        assert is_gim(rows)
        assert all(rows[i][i] == 2 for i in range(m.n))
        assert [row[:r] for row in rows[:r]] == cartan[r]
        omega, theta = classify_omega_theta(spec)
        assert omega & theta == set()
        assert omega | theta == {rt for rt, _ in spec.adjoined}


def test_grading_degree_delta_membership():
    assert GradingDegree((0, 0, 0)).in_delta_or_zero()
    assert GradingDegree((1, -1, 0)).in_delta_or_zero()
    assert GradingDegree((2, 0, 0)).in_delta_or_zero()  # BC_r extra-long
    assert not GradingDegree((2, 1, 1)).in_delta_or_zero()
    assert not GradingDegree((1, 1, 1)).in_delta_or_zero()
