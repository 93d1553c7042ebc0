"""Angular momentum operators: exact coefficient action, grid-space
differential action, and the cross-validation between the two."""

import math

import numpy as np
import pytest

from swsh.errors import SpinWeightMismatch
from swsh.grid import make_grid, sample_swsh
from swsh.modes import SWMode
from swsh.operators import (
    KINDS,
    OperatorSpec,
    apply_coeff,
    apply_grid,
    ladder_coefficient,
    verify_casimir_identity,
)
from swsh.transform import analyze, coefficient_set, synthesize

from conftest import random_entries


# ------------------------------------------------------------ operator specs

def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        OperatorSpec("Jx", 0)
    for kind in KINDS:
        OperatorSpec(kind, -1)


def test_spin_weight_mismatch():
    c = coefficient_set(-1, 4, {(2, 1): 1.0})
    with pytest.raises(SpinWeightMismatch):
        apply_coeff(OperatorSpec("Jz", 0), c)


# -------------------------------------------------------- coefficient action

def test_ladder_coefficient_values():
    assert ladder_coefficient(1, 1, +1) == 0.0  # top of multiplet
    assert ladder_coefficient(1, -1, -1) == 0.0
    assert ladder_coefficient(2, 0, +1) == pytest.approx(math.sqrt(6), abs=1e-15)
    assert ladder_coefficient(2, 0, -1) == pytest.approx(math.sqrt(6), abs=1e-15)
    assert ladder_coefficient(3, 2, +1) == pytest.approx(math.sqrt(6), abs=1e-15)


def test_jz_eigenvalue():
    c = coefficient_set(-1, 4, {(2, 1): 1.0})
    out = apply_coeff(OperatorSpec("Jz", -1), c)
    assert out == coefficient_set(-1, 4, {(2, 1): 1.0})


def test_jplus_annihilates_top():
    c = coefficient_set(-1, 4, {(1, 1): 1.0})
    out = apply_coeff(OperatorSpec("Jplus", -1), c)
    assert out.sorted_items() == []


def test_jplus_ladder_value():
    c = coefficient_set(0, 4, {(2, 0): 1.0})
    out = apply_coeff(OperatorSpec("Jplus", 0), c)
    assert out.get(2, 1) == pytest.approx(math.sqrt(6), abs=1e-15)
    assert len(out.sorted_items()) == 1


def test_jsquared_eigenvalue():
    c = coefficient_set(0, 4, {(3, -2): 1.0})
    out = apply_coeff(OperatorSpec("Jsquared", 0), c)
    assert out.get(3, -2) == 12.0


def test_helicity_is_minus_spin_weight():
    c = coefficient_set(-2, 4, {(3, 1): 1.0 + 1.0j})
    out = apply_coeff(OperatorSpec("Helicity", -2), c)
    assert out.get(3, 1) == 2.0 + 2.0j  # h = -s = 2


def test_so3_commutators_on_random_sets(rng):
    for s in (-2, 0, 1):
        c = coefficient_set(s, 10, random_entries(rng, s, 10))
        jz = OperatorSpec("Jz", s)
        jp = OperatorSpec("Jplus", s)
        jm = OperatorSpec("Jminus", s)

        def commu(a, b):
            return apply_coeff(a, apply_coeff(b, c)), apply_coeff(b, apply_coeff(a, c))

        # [Jz, J+] = +J+
        lhs1, lhs2 = commu(jz, jp)
        want = apply_coeff(jp, c)
        worst = max(
            abs(lhs1.get(*jm_) - lhs2.get(*jm_) - want.get(*jm_))
            for jm_, _ in want.sorted_items()
        ) if want.sorted_items() else 0.0
        assert worst < 1e-11
        # [J+, J-] = 2 Jz
        p1, p2 = commu(jp, jm)
        want2 = apply_coeff(jz, c)
        keys = {jm_ for jm_, _ in c.sorted_items()}
        worst2 = max(
            abs(p1.get(*k) - p2.get(*k) - 2 * want2.get(*k)) for k in keys
        )
        assert worst2 < 1e-11


def test_casimir_identity():
    single = coefficient_set(-1, 4, {(3, 1): 1.0})
    assert verify_casimir_identity(-1, single) <= 1e-12
    assert verify_casimir_identity(0, coefficient_set(0, 4)) == 0.0


def test_casimir_identity_random(rng):
    c = coefficient_set(1, 10, random_entries(rng, 1, 10))
    assert verify_casimir_identity(1, c) <= 1e-11


# --------------------------------------------------------------- grid action

def test_grid_jz_on_mode():
    grid = make_grid(6)
    f = sample_swsh(grid, SWMode(-1, 2, 1))
    out = apply_grid(OperatorSpec("Jz", -1), f)
    assert np.abs(out.samples - f.samples).max() < 1e-10


def test_grid_ladder_matches_neighbor_modes():
    grid = make_grid(10)
    worst = 0.0
    for s in (-2, -1, 0, 1, 2):
        for j in range(abs(s), 9):
            for m in range(-j, j + 1):
                f = sample_swsh(grid, SWMode(s, j, m))
                for sign, kind in ((+1, "Jplus"), (-1, "Jminus")):
                    out = apply_grid(OperatorSpec(kind, s), f)
                    lam = ladder_coefficient(j, m, sign)
                    if lam == 0.0:
                        worst = max(worst, np.abs(out.samples).max())
                    else:
                        nb = sample_swsh(grid, SWMode(s, j, m + sign))
                        err = np.abs(out.samples - lam * nb.samples).max()
                        worst = max(worst, err)
    assert worst <= 1e-8


def test_grid_casimir_on_mode():
    grid = make_grid(6)
    f = sample_swsh(grid, SWMode(-2, 3, 0))
    out = apply_grid(OperatorSpec("Jsquared", -2), f)
    assert np.abs(out.samples - 12.0 * f.samples).max() <= 1e-8


def test_grid_casimir_diagonal_via_transform(rng):
    grid = make_grid(8)
    s = -1
    c = coefficient_set(s, 8, random_entries(rng, s, 8))
    f = synthesize(c, grid)
    out = analyze(apply_grid(OperatorSpec("Jsquared", s), f))
    worst = max(
        abs(out.get(j, m) - j * (j + 1) * c.get(j, m))
        for j in range(abs(s), 9)
        for m in range(-j, j + 1)
    )
    assert worst <= 1e-8


def test_grid_helicity():
    grid = make_grid(5)
    f = sample_swsh(grid, SWMode(2, 4, -1))
    out = apply_grid(OperatorSpec("Helicity", 2), f)
    assert np.abs(out.samples + 2.0 * f.samples).max() < 1e-12


def test_grid_matches_coeff_action(rng):
    # the two realizations agree on random band-limited functions
    grid = make_grid(9)
    for s in (-2, 1):
        c = coefficient_set(s, 7, random_entries(rng, s, 7))
        f = synthesize(c, grid)
        for kind in KINDS:
            op = OperatorSpec(kind, s)
            via_grid = analyze(apply_grid(op, f), band_limit=8)
            via_coeff = apply_coeff(op, c)
            keys = {jm for jm, _ in via_grid.sorted_items()}
            keys |= {jm for jm, _ in via_coeff.sorted_items()}
            worst = max(
                (abs(via_grid.get(*k) - via_coeff.get(*k)) for k in keys),
                default=0.0,
            )
            assert worst < 1e-9, (s, kind, worst)
