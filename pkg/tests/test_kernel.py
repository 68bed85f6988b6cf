import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slstar import kernel
from slstar.euclid import derive_symmetry, is_coprime
from slstar.exhaust import (
    brute_force_pairs,
    build_lift_table,
    flip_parametrised_pairs,
    lift_verify_block,
    notin_tables,
)
from slstar.kernel import _pykernel
from slstar.kernel.tables import all_matrices, decode_matrix, ring_tables
from slstar.local import local_data
from slstar.rings import ring

try:
    from slstar.kernel import _ckernel
except ImportError:  # extension not built
    _ckernel = None

needs_c = pytest.mark.skipif(_ckernel is None, reason="compiled kernel not built")

KERNEL_RINGS = ["Mat(2,Z/(9))", "Mat(2,GF(4))", "Mat(2,Prod(Z/(4),Z/(4)))", "Mat(2,Trunc(GF(2),2))",
                "Mat(2,Prod(GF(3),GF(3)))"]


def _batch(desc, seed, size=2000):
    A = ring(desc)
    T = ring_tables(A.base)
    mats = all_matrices(T)
    rng = np.random.default_rng(seed)
    Ac = mats[rng.integers(0, len(mats), size)].astype(np.int32)
    Cc = mats[rng.integers(0, len(mats), size)].astype(np.int32)
    Sc = mats[rng.integers(0, len(mats), size)].astype(np.int32)
    return A, T, Ac, Cc, Sc


@needs_c
def test_compiled_backend_selected():
    assert kernel.BACKEND == "cython"


def test_pure_flag_forces_numpy():
    env = dict(os.environ, SLSTAR_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from slstar import kernel; print(kernel.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_c
@settings(max_examples=30, deadline=None)
@given(st.sampled_from(KERNEL_RINGS), st.integers(0, 2**32))
def test_compiled_and_numpy_kernels_agree(desc, seed):
    A, T, Ac, Cc, Sc = _batch(desc, seed)
    notin = notin_tables(A)
    np.testing.assert_array_equal(_pykernel.symmetric_mask(T.add, T.mul, T.inv, Ac, Cc),
                                  _ckernel.symmetric_mask(T.add, T.mul, T.inv, Ac, Cc))
    np.testing.assert_array_equal(_pykernel.valid_mask(T.add, T.mul, T.neg, T.inv, notin, Ac, Cc),
                                  _ckernel.valid_mask(T.add, T.mul, T.neg, T.inv, notin, Ac, Cc))
    np.testing.assert_array_equal(_pykernel.is_symmetric_mask(T.inv, Sc), _ckernel.is_symmetric_mask(T.inv, Sc))
    rp, up = _pykernel.remainder_units(T.add, T.mul, T.neg, T.unit, Ac, Sc, Cc)
    rc, uc = _ckernel.remainder_units(T.add, T.mul, T.neg, T.unit, Ac, Sc, Cc)
    np.testing.assert_array_equal(rp, rc)
    np.testing.assert_array_equal(up, uc)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(KERNEL_RINGS), st.integers(0, 2**32))
def test_kernel_masks_match_ring_arithmetic(desc, seed):
    A, T, Ac, Cc, Sc = _batch(desc, seed, size=300)
    notin = notin_tables(A)
    valid = kernel.valid_mask(T, notin, Ac, Cc)
    sym = kernel.symmetric_mask(T, Ac, Cc)
    issym = kernel.is_symmetric_mask(T, Sc)
    R, unit = kernel.remainder_units(T, Ac, Sc, Cc)
    for i in range(len(Ac)):
        a, c, s = decode_matrix(T, Ac[i]), decode_matrix(T, Cc[i]), decode_matrix(T, Sc[i])
        assert bool(sym[i]) == derive_symmetry(A, a, c)
        assert bool(valid[i]) == (derive_symmetry(A, a, c) and is_coprime(A, a, c))
        assert bool(issym[i]) == A.is_symmetric(s)
        r = A.sub(a, A.mul(s, c))
        assert decode_matrix(T, R[i]) == r
        assert bool(unit[i]) == A.is_unit(r)


def test_projection_kernel_matches_local_data():
    A, T, Ac, _Cc, _Sc = _batch("Mat(2,Z/(9))", 0, size=200)
    L = build_lift_table(A)
    idx = kernel.project(L.proj, L.base, Ac)
    data = local_data(A)
    Tb = L.residue_tables
    for i in range(len(Ac)):
        want = data.project(decode_matrix(T, Ac[i]))
        code = int(idx[i])
        digits = []
        for _ in range(4):
            digits.append(code % L.base)
            code //= L.base
        got = decode_matrix(Tb, np.array(digits[::-1]))
        assert got == want


# -- enumeration routes ------------------------------------------------------

def _pair_set(blocks, T):
    out = set()
    for Ac, Cc in blocks:
        for a, c in zip(Ac, Cc):
            out.add((decode_matrix(T, a), decode_matrix(T, c)))
    return out


@pytest.mark.parametrize("desc", ["Mat(2,Prod(GF(2),GF(2)))", "Mat(2,Prod(GF(3),GF(3)))"])
def test_flip_parametrisation_matches_brute_force(desc):
    A = ring(desc)
    T = ring_tables(A.base)
    brute = _pair_set(brute_force_pairs(A), T)
    param = _pair_set(flip_parametrised_pairs(A), T)
    assert param == brute
    assert sum(len(Ac) for Ac, _ in flip_parametrised_pairs(A)) == len(param)


def test_brute_force_pairs_are_exactly_the_valid_pairs():
    A = ring("Mat(2,GF(2))")
    T = ring_tables(A.base)
    got = _pair_set(brute_force_pairs(A), T)
    els = A._element_list()
    want = {(a, c) for a in els for c in els if derive_symmetry(A, a, c) and is_coprime(A, a, c)}
    assert got == want


# -- batched lift ----------------------------------------------------------------

@pytest.mark.parametrize("desc", ["Mat(2,Z/(4))", "Mat(2,Trunc(GF(2),2))"])
def test_batched_lift_verifies_every_pair(desc):
    A = ring(desc)
    L = build_lift_table(A)
    total = 0
    for Ac, Cc in brute_force_pairs(A):
        good, bad = lift_verify_block(L, Ac, Cc)
        assert len(bad) == 0
        total += good
        for a_row, c_row in list(zip(Ac, Cc))[:20]:
            a, c = decode_matrix(L.tables, a_row), decode_matrix(L.tables, c_row)
            assert derive_symmetry(A, a, c) and is_coprime(A, a, c)
    assert total > 0
