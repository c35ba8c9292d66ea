"""Block ingredients on the blown-up cycle C_m[4] and their algebra.

Covers the walk-driven C4 block, the GF(4) Cm block (including the
wrap-around bend it needs when m = 1 mod 3 and the scaling automorphism it
gains from the field structure), the Z4 mixed block, the switch block that
trades a matching for the part K4s, and the permutation machinery behind
the exhaustive {3 Cm + 1 C4} nonexistence check.
"""

import pytest

from hwp4m.blocks import (
    apply_layer_perms,
    audit_m_cycles,
    block_perms_to_factor,
    c4_block,
    check_c4_cm3_nonexistence,
    cm_block,
    cm_block_scaled_factor,
    factor_to_block_perms,
    gf4_base_layers,
    johnson_walk,
    mixed_block,
    one_factorization_cm2,
    switch_block,
    trivializing_layer_perms,
)
from hwp4m.model import canonicalize_cycle, cycle_blowup4, switch_graph
from hwp4m.verifier import verify_block, verify_factors_cover

# ============================================================
# the walk and the C_m[2] one-factorization
# ============================================================


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 10, 13])
def test_johnson_walk_changes_one_element_per_step(m):
    walk = johnson_walk(m)
    assert len(walk) == m
    for i in range(m):
        a, b = walk[i], walk[(i + 1) % m]
        assert len(a) == 2 and a <= {0, 1, 2, 3}
        assert len(a & b) == 1


@pytest.mark.parametrize("m", [3, 4, 5, 8, 9])
def test_cm2_one_factorization_partitions_the_edges(m):
    factors = one_factorization_cm2(m)
    assert len(factors) == 4
    seen = set()
    for matching in factors:
        assert len(matching) == m
        covered = set()
        for u, w in matching:
            assert (u[1] + 1) % m == w[1] % m or (w[1] + 1) % m == u[1] % m
            covered.add(u)
            covered.add(w)
            seen.add(frozenset({u, w}))
        assert len(covered) == 2 * m
    assert len(seen) == 4 * m


# ============================================================
# the four block kinds against their ambient
# ============================================================


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 8])
def test_c4_block_factorizes_the_blowup(m):
    sol = c4_block(m)
    assert [f.cycle_length for f in sol.factors] == [4, 4, 4, 4]
    rep = verify_factors_cover(sol.factors, cycle_blowup4(m))
    assert rep.ok, rep.summary()


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 10])
def test_cm_block_factorizes_the_blowup(m):
    sol = cm_block(m)
    assert [f.cycle_length for f in sol.factors] == [m, m, m, m]
    rep = verify_factors_cover(sol.factors, cycle_blowup4(m))
    assert rep.ok, rep.summary()


@pytest.mark.parametrize("m", [4, 7, 10])
def test_cm_block_needs_the_bend_when_m_is_one_mod_three(m):
    layers = gf4_base_layers(m)
    assert layers[m - 1] != layers[0]
    sol = cm_block(m, adjust=False)
    rep = verify_factors_cover(sol.factors, cycle_blowup4(m))
    assert not rep.ok


@pytest.mark.parametrize("m", [3, 5, 6, 9])
def test_cm_block_bend_is_a_no_op_off_one_mod_three(m):
    adjusted = cm_block(m)
    plain = cm_block(m, adjust=False)
    assert adjusted.factors == plain.factors


@pytest.mark.parametrize("m", [3, 4, 5, 6, 7, 9])
def test_mixed_block_factorizes_the_blowup(m):
    sol = mixed_block(m)
    assert [f.cycle_length for f in sol.factors] == [4, 4, m, m]
    rep = verify_factors_cover(sol.factors, cycle_blowup4(m))
    assert rep.ok, rep.summary()


@pytest.mark.parametrize("m", [3, 5, 7, 9, 11])
def test_switch_block_factorizes_blowup_plus_part_cliques(m):
    sol = switch_block(m)
    assert [f.cycle_length for f in sol.factors] == [4, 4, m, m, m]
    assert sol.one_factor is not None
    rep = verify_factors_cover(sol.factors, switch_graph(m))
    assert rep.ok, rep.summary()


def test_switch_block_rejects_even_m():
    with pytest.raises(ValueError):
        switch_block(4)


def test_verify_block_dispatch_covers_both_ambients():
    assert verify_block(mixed_block(5)).ok
    assert verify_block(switch_block(5)).ok


# ============================================================
# the GF(4) scaling automorphism
# ============================================================


@pytest.mark.parametrize("m", [3, 4, 5, 8])
def test_scaling_layers_by_x_fixes_the_scaled_factor(m):
    from hwp4m.algebra import X, gf4_mul

    cycles = cm_block_scaled_factor(m)
    image = sorted(
        canonicalize_cycle(tuple(4 * (u // 4) + gf4_mul(X, u % 4) for u in cyc))
        for cyc in cycles
    )
    assert image == cycles


# ============================================================
# permutation encoding of Cm-factors
# ============================================================


def test_audit_counts_m_cycles():
    assert audit_m_cycles(3) == 64


@pytest.mark.parametrize("m", [3, 5, 7])
def test_perm_encoding_round_trips(m):
    for factor in cm_block(m).factors:
        perms = factor_to_block_perms(factor.cycles, m)
        assert len(perms) == m
        rebuilt = block_perms_to_factor(perms, m)
        assert rebuilt == sorted(factor.cycles)


@pytest.mark.parametrize("m", [3, 5, 7])
def test_trivialization_flattens_any_cm_factor(m):
    factor = cm_block(m).factors[2]
    perms = factor_to_block_perms(factor.cycles, m)
    pis = trivializing_layer_perms(perms)
    flat = apply_layer_perms(perms, pis)
    identity = factor_to_block_perms(
        [tuple(4 * i + g for i in range(m)) for g in range(4)], m
    )
    assert flat == identity


# ============================================================
# nonexistence of {three Cm, one C4} on C_m[4]
# ============================================================


def test_no_three_cm_one_c4_factorization_for_m_three():
    check = check_c4_cm3_nonexistence(3)
    assert check.status == "nonexistent"
    assert check.witness is None
    assert check.m_cycles == 64
    assert check.pairs_checked > 0


def test_nonexistence_check_honors_the_time_limit():
    check = check_c4_cm3_nonexistence(5, time_limit=0.0)
    assert check.status == "timeout"


def test_nonexistence_check_rejects_even_m():
    with pytest.raises(ValueError):
        check_c4_cm3_nonexistence(4)
