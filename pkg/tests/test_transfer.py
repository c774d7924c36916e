import math

import numpy as np
import pytest

from adinkra_spectra.transfer import (
    Branch,
    BranchSystem,
    build_transfer_matrix,
    extend_to_coset,
    fredholm_det,
    fredholm_ratio,
    gauss_branch_system,
    gauss_leading_pair,
    neville_extrapolate,
)

GKW = 0.3036630028987327  # Gauss-Kuzmin-Wirsing subleading magnitude


def affine_half_system():
    # single branch g(x) = x/2 on [0, 1]
    return BranchSystem((Branch(0.0, 1.0, np.array([[0.5, 0.0], [0.0, 1.0]]), "h"),))


def test_affine_branch_constant_eigenfunction():
    tm = build_transfer_matrix(affine_half_system(), 0.0, 16)
    ones = tm.sample(lambda x: np.ones_like(x))
    applied = tm.apply_to_samples(ones)
    assert np.max(np.abs(applied - 1.0)) < 1e-12  # row sums = branch count
    lead = tm.leading_eigenvalues(1)
    assert abs(lead[0] - 1.0) < 1e-12


@pytest.mark.parametrize("beta", [0.0, 1.0, 2.0, 0.7])
def test_affine_branch_leading_eigenvalue(beta):
    # weight |g'|^beta = 2^-beta on constants
    tm = build_transfer_matrix(affine_half_system(), beta, 16)
    vals = tm.eigenvalues()
    assert abs(vals[0] - 2.0 ** (-beta)) < 1e-12
    # full spectrum of the half-map composition operator: 2^-(beta+k)
    for k in range(4):
        assert min(abs(vals - 2.0 ** (-(beta + k)))) < 1e-10


def test_beta_zero_rows_sum_to_branch_count():
    sys = gauss_branch_system(7)
    tm = build_transfer_matrix(sys, 0.0, 12)
    ones = tm.sample(lambda x: np.ones_like(x))
    assert np.max(np.abs(tm.apply_to_samples(ones) - 7.0)) < 1e-10


def test_polynomial_reproduction():
    # degree < nodes: interpolation is exact, matrix action == direct action
    sys = gauss_branch_system(9)
    tm = build_transfer_matrix(sys, 1.0, 20)

    def f(x):
        return 1.0 + 0.5 * x - 0.25 * x ** 2 + x ** 5

    sampled = tm.apply_to_samples(tm.sample(f))
    direct = tm.direct_apply(f, tm.all_nodes())
    assert np.max(np.abs(sampled - direct)) < 1e-10


def test_offgrid_consistency_analytic_function():
    sys = gauss_branch_system(6)
    tm = build_transfer_matrix(sys, 1.5, 32)
    applied = tm.apply_to_samples(tm.sample(np.exp))
    # interpolate the result at off-grid points and compare to the direct sum
    from adinkra_spectra.transfer import _bary_weights, _cardinal_matrix

    rng = np.random.default_rng(5)
    w = _bary_weights(32)
    lo, hi = sys.hull
    pts = rng.uniform(lo, hi, 40)
    direct = tm.direct_apply(np.exp, pts)
    interp = np.zeros(len(pts), dtype=complex)
    # locate each point in its interval's grid block
    for i, p in enumerate(pts):
        for s, b in enumerate(sys.branches):
            if b.lo - 1e-12 <= p <= b.hi + 1e-12:
                card = _cardinal_matrix(tm.grids[s], w, np.array([p]))
                interp[i] = (card @ applied[s * 32:(s + 1) * 32])[0]
                break
    assert np.max(np.abs(interp - direct)) < 1e-9


def test_overlapping_intervals_rejected():
    with pytest.raises(ValueError, match="overlap"):
        BranchSystem((
            Branch(0.0, 0.6, np.array([[0.5, 0.0], [0.0, 1.0]])),
            Branch(0.5, 1.0, np.array([[0.25, 0.5], [0.0, 1.0]])),
        ))


def test_derivative_singularity_rejected():
    # g(x) = 1/x has its pole at x = 0 inside the phase interval
    with pytest.raises(ValueError, match="singularity"):
        BranchSystem((Branch(0.0, 1.0, np.array([[0.0, 1.0], [1.0, 0.0]])),))


def test_gauss_invariance_extrapolation():
    l1, l2 = gauss_leading_pair(n_values=(12, 16, 20, 24, 28, 32, 36, 40), nodes=24)
    assert abs(l1 - 1.0) < 1e-8
    assert abs(abs(l2) - GKW) < 1e-4


def test_gauss_two_resolution_agreement():
    sys = gauss_branch_system(40)
    a = build_transfer_matrix(sys, 1.0, 32).leading_eigenvalues(1)[0]
    b = build_transfer_matrix(sys, 1.0, 64).leading_eigenvalues(1)[0]
    assert abs(a - b) < 1e-8


def test_eigenvalue_continuity_in_beta():
    sys = gauss_branch_system(20)
    a = build_transfer_matrix(sys, 1.0, 24).leading_eigenvalues(1)[0].real
    b = build_transfer_matrix(sys, 1.0 + 1e-6, 24).leading_eigenvalues(1)[0].real
    assert abs(a - b) < 1e-4


def test_coset_degree_one_is_bitwise_identical():
    sys = gauss_branch_system(8)
    base = build_transfer_matrix(sys, 1.0, 16)
    ext = extend_to_coset(sys, {b.label: (0,) for b in sys.branches}, 1.0, 16)
    assert ext.matrix.shape == base.matrix.shape
    assert np.array_equal(ext.matrix, base.matrix)


def test_coset_trivial_action_is_direct_sum():
    sys = gauss_branch_system(6)
    base = build_transfer_matrix(sys, 1.0, 12)
    ident = (0, 1)
    ext = extend_to_coset(sys, {b.label: ident for b in sys.branches}, 1.0, 12)
    n = base.size
    assert np.array_equal(ext.matrix[:n, :n], base.matrix)
    assert np.array_equal(ext.matrix[n:, n:], base.matrix)
    assert not ext.matrix[:n, n:].any()
    assert not ext.matrix[n:, :n].any()
    # the exact block equality above is the doubling; numerically the
    # well-separated leading eigenvalues come out in matched pairs
    base_vals = np.linalg.eigvals(base.matrix)
    base_vals = base_vals[np.argsort(-np.abs(base_vals))][:5]
    ext_vals = np.linalg.eigvals(ext.matrix)
    ext_vals = ext_vals[np.argsort(-np.abs(ext_vals))][:10]
    for i, bv in enumerate(base_vals):
        assert abs(ext_vals[2 * i] - bv) < 1e-10
        assert abs(ext_vals[2 * i + 1] - bv) < 1e-10


def test_coset_swap_action_adds_new_spectrum():
    # coset-constant functions are invariant, so the base spectrum embeds
    # and the Perron eigenvalue cannot move; the sign-representation part
    # is the genuinely new operator and its leading eigenvalue differs
    sys = gauss_branch_system(10)
    perms = {b.label: (0, 1) for b in sys.branches}
    perms["1"] = (1, 0)  # swap on the first branch
    odd_lead = []
    for nodes in (16, 32):
        ext = extend_to_coset(sys, perms, 1.0, nodes)
        base = build_transfer_matrix(sys, 1.0, nodes)
        ev_ext = np.linalg.eigvals(ext.matrix)
        ev_base = np.linalg.eigvals(base.matrix)
        # remove the embedded base copy, largest first
        ev_ext = sorted(ev_ext, key=lambda z: -abs(z))
        for bv in sorted(ev_base, key=lambda z: -abs(z)):
            j = min(range(len(ev_ext)), key=lambda i: abs(ev_ext[i] - bv))
            ev_ext.pop(j)
        odd_lead.append(max(ev_ext, key=abs))
        assert abs(ext.leading_eigenvalues(1)[0] - ev_base[np.argmax(np.abs(ev_base))]) < 1e-10
    assert abs(odd_lead[0] - odd_lead[1]) < 1e-8  # two-resolution stability
    base_lead = build_transfer_matrix(sys, 1.0, 32).leading_eigenvalues(1)[0]
    assert abs(odd_lead[1] - base_lead) > 1e-3  # new spectrum really differs


def test_coset_missing_permutation():
    sys = gauss_branch_system(3)
    with pytest.raises(ValueError, match="no coset permutation"):
        extend_to_coset(sys, {"1": (0, 1), "2": (0, 1)}, 1.0, 8)


def test_fredholm_nilpotent_oracle():
    m = np.array([[0.0, 1.0], [0.0, 0.0]])
    res = fredholm_det(m)
    assert res.value == pytest.approx(1.0)  # 1 - tr + det = 1
    m2 = np.array([[0.3, 0.1], [0.2, 0.4]])
    expected = 1.0 - (0.3 + 0.4) + (0.3 * 0.4 - 0.1 * 0.2)
    assert fredholm_det(m2).value == pytest.approx(expected, rel=1e-12)


def test_fredholm_singular_flag():
    # beta = 0 single affine branch has eigenvalue exactly 1
    tm = build_transfer_matrix(affine_half_system(), 0.0, 12)
    res = fredholm_det(tm)
    assert res.singular
    assert abs(res.value) < 1e-10


def test_fredholm_gauss_beta1_tends_to_zero():
    dets = []
    for n in (10, 20, 40):
        tm = build_transfer_matrix(gauss_branch_system(n), 1.0, 16)
        dets.append(abs(fredholm_det(tm).value))
    assert dets[0] > dets[1] > dets[2]  # eigenvalue 1 in the n -> inf limit


def test_fredholm_node_doubling_stability_beta2():
    sys = gauss_branch_system(20)
    d1 = fredholm_det(build_transfer_matrix(sys, 2.0, 32))
    d2 = fredholm_det(build_transfer_matrix(sys, 2.0, 64))
    assert abs(math.log(abs(d1.value)) - math.log(abs(d2.value))) < 1e-7


def test_fredholm_ratio():
    a = np.diag([0.5, 0.25])
    b = np.diag([0.5])
    assert fredholm_ratio(a, b) == pytest.approx((0.5 * 0.75) / 0.5, rel=1e-12)


def test_neville_extrapolation_exact_on_polynomials():
    xs = [1.0 / n for n in (4, 5, 8, 10)]
    ys = [3.0 - 2.0 * x + 7.0 * x ** 2 for x in xs]
    assert neville_extrapolate(xs, ys) == pytest.approx(3.0, abs=1e-12)


def test_branch_system_json_round_trip():
    sys = gauss_branch_system(4)
    back = BranchSystem.from_json(sys.to_json())
    assert back.labels() == sys.labels()
    for b1, b2 in zip(back.branches, sys.branches):
        assert (b1.lo, b1.hi) == (b2.lo, b2.hi)
        assert np.allclose(b1.matrix, b2.matrix)


def test_complex_beta_supported():
    sys = gauss_branch_system(5)
    tm = build_transfer_matrix(sys, 1.0 + 0.5j, 12)
    assert np.iscomplexobj(tm.matrix)
    res = fredholm_det(tm)
    assert np.isfinite(res.value.real) and np.isfinite(res.value.imag)
