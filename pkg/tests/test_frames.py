from fractions import Fraction

import pytest

from ultrawave import (BadParamError, NotS0Error, NotTightError, PAdicNumber,
                       RepSystem, ScaledScalar, SpecialSubgroup, StepFunction,
                       analyze_coeffs, benedetto_onb, build_frame,
                       canonicalize, fourier_coset_frame, frame_constant,
                       gidentity, kernel_apply, kernel_idempotent_check,
                       kernel_matrix, pi_apply, reconstruct, shell_kernel,
                       special_reps, synthesize)
from ultrawave.errors import WindowNotClosedError
from conftest import rand_s0


def simple_wavelet(p):
    return canonicalize(p, [((0, 0), 1), ((0, 1), -p)])


def small_family(p, extra=()):
    fam = [simple_wavelet(p), shell_kernel(p, 0), shell_kernel(p, 1)]
    fam.extend(extra)
    return fam


@pytest.fixture(scope="module")
def verified_frames(rng):
    """All frame specs the suite exercises, verified once."""
    frames = []
    for p, k in [(2, 1), (2, 2), (3, 1)]:
        fs = fourier_coset_frame(p, k)
        frame_constant(fs, small_family(p, [fs.wavelets[0]]))
        frames.append(fs)
    for p in (2, 3):
        fs = build_frame(simple_wavelet(p))
        frame_constant(fs, small_family(p))
        frames.append(fs)
    for p in (2, 3):
        fs = benedetto_onb(p)
        frame_constant(fs, small_family(p, list(fs.wavelets)))
        frames.append(fs)
    return frames


class TestBuildFrame:
    def test_simple_wavelet(self):
        fs = build_frame(simple_wavelet(2))
        assert fs.subgroup == SpecialSubgroup(1, 1)
        assert fs.predicted_constant() == 2

    def test_rejects_nonzero_mean(self):
        with pytest.raises(NotS0Error):
            build_frame(StepFunction.indicator(2, 0, 0))

    def test_fourier_coset_examples(self):
        fs = fourier_coset_frame(2, 1)
        assert fs.wavelets[0].membership_class() == (0, 1)
        assert fs.predicted_constant() == 2
        with pytest.raises(BadParamError):
            fourier_coset_frame(2, 0)

    def test_predicted_vs_printed(self):
        fs = fourier_coset_frame(2, 1)
        assert fs.predicted_constant() == 2
        printed = fs.printed_constant()
        assert isinstance(printed, ScaledScalar)
        assert printed.as_fraction() == 1


class TestBenedettoOnb:
    def test_p2_single_wavelet(self):
        from ultrawave import fourier
        fs = benedetto_onb(2)
        assert len(fs.wavelets) == 1
        ghat = fourier(fs.wavelets[0])
        assert ghat == StepFunction.indicator(2, PAdicNumber(2, 1, 1), 0)

    @pytest.mark.parametrize("p", [2, 3])
    def test_predicted_constant_one(self, p):
        fs = benedetto_onb(p)
        total = sum((Fraction(1, p) for _ in fs.wavelets), Fraction(0))
        assert total == fs.subgroup.haar_mass(p)
        assert fs.predicted_constant() == 1

    @pytest.mark.parametrize("p", [2, 3])
    def test_atoms_orthonormal(self, p):
        fs = benedetto_onb(p)
        rs = RepSystem(fs.subgroup, -1, 1, -1)
        atoms = [pi_apply(g, r) for r in special_reps(p, rs)
                 for g in fs.wavelets]
        pairs = 0
        for i, a in enumerate(atoms):
            assert a.l2_norm_sq().as_fraction() == 1
            for b in atoms[i + 1:]:
                assert a.inner(b).is_zero()
                pairs += 1
        assert pairs >= 15


class TestFrameConstant:
    def test_worked_ratio(self, verified_frames):
        fs = verified_frames[0]
        assert fs.constant == 2

    def test_simple_wavelet_ratio(self, verified_frames):
        fs = verified_frames[3]
        assert fs.p == 2 and fs.constant == 2
        assert fs.constant == fs.predicted_constant()

    def test_onb_ratio_is_one(self, verified_frames):
        for fs in verified_frames[-2:]:
            assert fs.constant == 1

    def test_not_tight_detected(self):
        # deliberately undersampled: sampling over a box coarser than the
        # wavelet's fixed group loses coefficients non-uniformly
        g = simple_wavelet(3)
        fs = build_frame(g)
        bad = type(fs)(fs.p, fs.wavelets, SpecialSubgroup(0, 0))
        with pytest.raises(NotTightError):
            frame_constant(bad, small_family(3, [g.translate(PAdicNumber(3, 1))]))

    def test_oversampling_stays_tight_with_scaled_constant(self):
        # a finer subgroup multiplies the constant by the subgroup index
        g = simple_wavelet(2)
        fine = type(build_frame(g))(2, (g,), SpecialSubgroup(2, 1))
        ver = frame_constant(fine, small_family(2))
        assert ver.constant == 4

    def test_constant_consistent_with_isometry(self, verified_frames):
        for fs in verified_frames:
            if len(fs.wavelets) == 1:
                predicted = fs.predicted_constant()
                assert fs.constant == predicted


class TestAnalyzeReconstruct:
    def test_worked_reconstruction(self, verified_frames):
        fs = verified_frames[0]
        g = fs.wavelets[0]
        coeffs = analyze_coeffs(g, fs)
        rec = reconstruct(coeffs, fs)
        assert rec == g

    def test_round_trip_random(self, rng, verified_frames):
        for fs in verified_frames:
            for _ in range(3):
                f = rand_s0(rng, fs.p, rng.choice([-1, 0]), rng.choice([1, 2]))
                assert reconstruct(analyze_coeffs(f, fs), fs) == f

    def test_zero_coefficients(self, verified_frames):
        fs = verified_frames[0]
        assert reconstruct({}, fs).is_zero()

    def test_requires_verified(self):
        fs = build_frame(simple_wavelet(2))
        with pytest.raises(BadParamError):
            reconstruct({}, fs)

    def test_coefficient_count_is_finite_and_bounded(self, rng, verified_frames):
        fs = verified_frames[0]
        for _ in range(3):
            f = rand_s0(rng, 2, -1, 2)
            coeffs = analyze_coeffs(f, fs)
            st_keys = len(coeffs)
            assert 0 < st_keys < 200


class TestSynthesize:
    def test_delta_gives_single_atom(self, verified_frames):
        fs = verified_frames[0]
        r = gidentity(2)
        alpha = {(r, 1): ScaledScalar.one(2)}
        assert synthesize(alpha, fs) == fs.wavelets[0]

    def test_linearity(self, verified_frames):
        fs = verified_frames[0]
        r = gidentity(2)
        a1 = {(r, 1): ScaledScalar.from_fraction(2, 2)}
        a2 = {(r, 1): ScaledScalar.from_fraction(2, Fraction(1, 3))}
        s = synthesize(a1, fs) + synthesize(a2, fs)
        assert s == synthesize({(r, 1): ScaledScalar.from_fraction(2, Fraction(7, 3))}, fs)

    def test_analysis_of_synthesis_is_kernel_apply(self, rng, verified_frames):
        # W^d(S(alpha)) = T alpha: dual route vs matrix route, exactly
        for fs in verified_frames[:3]:
            reps = special_reps(fs.p, RepSystem(fs.subgroup, 0, 1, fs.subgroup.k - 1))
            alpha = {}
            for i, r in enumerate(reps[:3]):
                alpha[(r, 1)] = ScaledScalar.from_fraction(fs.p, Fraction(i + 1, 2))
            lhs = analyze_coeffs(synthesize(alpha, fs), fs)
            rhs = kernel_apply(fs, alpha)
            keys = set(lhs) | set(rhs)
            zero = ScaledScalar.zero(fs.p)
            for key in keys:
                assert lhs.get(key, zero) == rhs.get(key, zero)

    def test_synthesis_of_analysis_scales_back(self, rng, verified_frames):
        for fs in verified_frames[:2]:
            f = rand_s0(rng, fs.p, 0, 1)
            alpha = analyze_coeffs(f, fs)
            assert synthesize(alpha, fs) == f * fs.constant

    def test_synthesis_lands_in_zero_mean_class(self, verified_frames):
        fs = verified_frames[0]
        reps = special_reps(2, RepSystem(fs.subgroup, -1, 1, -1))
        alpha = {(r, 1): ScaledScalar.from_fraction(2, i - 2)
                 for i, r in enumerate(reps[:5])}
        out = synthesize(alpha, fs)
        assert out.is_zero() or out.has_zero_integral()


class TestKernel:
    def test_hand_computed_entry(self, verified_frames):
        fs = verified_frames[0]
        one = PAdicNumber(2, 1)
        r0 = gidentity(2)
        r1 = type(r0)(one, PAdicNumber(2, 1))
        km = kernel_matrix(fs, [(r0, 1), (r1, 1)])
        assert km.entry((r0, 1), (r1, 1)).as_fraction() == -1
        assert km.entry((r0, 1), (r0, 1)).as_fraction() == 1

    def test_hermitian(self, rng, verified_frames):
        for fs in verified_frames[:4]:
            reps = special_reps(fs.p, RepSystem(fs.subgroup, 0, 1, fs.subgroup.k - 1))
            idx = [(r, j) for r in reps[:4] for j in range(1, len(fs.wavelets) + 1)]
            km = kernel_matrix(fs, idx)
            for a in idx:
                for b in idx:
                    assert km.entry(a, b) == km.entry(b, a).conj()

    def test_onb_kernel_is_identity(self, verified_frames):
        for fs in verified_frames[-2:]:
            reps = special_reps(fs.p, RepSystem(fs.subgroup, -1, 1, -1))
            idx = [(r, j) for r in reps for j in range(1, len(fs.wavelets) + 1)]
            assert kernel_matrix(fs, idx).is_identity()

    def test_idempotent_on_deltas_and_random(self, rng, verified_frames):
        for fs in verified_frames:
            reps = special_reps(fs.p, RepSystem(fs.subgroup, 0, 0, fs.subgroup.k - 1))
            delta = {(reps[0], 1): ScaledScalar.one(fs.p)}
            assert kernel_idempotent_check(fs, delta)
            alpha = {(r, 1 + (i % len(fs.wavelets))):
                     ScaledScalar.from_fraction(fs.p, Fraction(2 * i - 3, 2))
                     for i, r in enumerate(reps[:3])}
            assert kernel_idempotent_check(fs, alpha)

    def test_window_closure_enforced(self, verified_frames):
        fs = verified_frames[0]
        delta = {(gidentity(2), 1): ScaledScalar.one(2)}
        with pytest.raises(WindowNotClosedError):
            kernel_idempotent_check(fs, delta, window=[(gidentity(2), 1)])
