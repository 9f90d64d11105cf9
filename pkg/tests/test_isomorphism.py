"""Tests for fan isomorphism and torus-factor cancellation."""

from random import Random

import pytest

import fangen
from toriclift.fan import validate_fan
from toriclift.isomorphism import (
    FanIso,
    IsoReport,
    fan_isomorphic,
    toric_isomorphism,
    verify_fan_iso,
)
from toriclift.lattice import IntMatrix, ResourceLimitError, determinant


def mk(rank, rays, cones):
    return validate_fan(rank, rays, cones)


@pytest.fixture
def p2():
    return mk(2, [(-1, -1), (0, 1), (1, 0)], [(0, 1), (0, 2), (1, 2)])


@pytest.fixture
def hirzebruch():
    return mk(
        2,
        [(-1, 1), (0, -1), (0, 1), (1, 0)],
        [(0, 1), (0, 2), (1, 3), (2, 3)],
    )


@pytest.fixture
def quadric():
    return mk(2, [(1, 0), (1, 2)], [(0, 1)])


@pytest.fixture
def plane():
    return mk(2, [(0, 1), (1, 0)], [(0, 1)])


class TestFanIsomorphic:
    def test_conjugated_projective_plane(self, p2):
        u = IntMatrix([(1, 1), (0, 1)])
        other = fangen.conjugate_fan(p2, u)
        iso = fan_isomorphic(p2, other)
        assert iso is not None
        assert verify_fan_iso(p2, other, iso) == []

    def test_ray_count_mismatch(self, p2, hirzebruch):
        assert fan_isomorphic(p2, hirzebruch) is None

    def test_singular_vs_smooth_cone(self, quadric, plane):
        assert fan_isomorphic(quadric, plane) is None

    def test_search_decides_when_prefilters_pass(self):
        # same counts, same class group (Z), same profiles; but one ray set
        # contains an opposite pair and the other does not, and a unimodular
        # map preserves opposite pairs
        a = mk(2, [(-1, -1), (0, 1), (1, 0)], [(0,), (1,), (2,)])
        b = mk(2, [(-1, 0), (0, 1), (1, 0)], [(0,), (1,), (2,)])
        from toriclift.isomorphism import _prefilter_reject

        assert _prefilter_reject(a, b) is None
        assert fan_isomorphic(a, b) is None

    def test_self_isomorphism_is_identity(self, quadric):
        iso = fan_isomorphic(quadric, quadric)
        assert iso.matrix == IntMatrix.identity(2)
        assert iso.ray_bijection == (0, 1)
        assert iso.cone_bijection == (0,)

    def test_degenerate_input_rejected(self):
        deg = mk(2, [(1, 0)], [(0,)])
        with pytest.raises(ValueError):
            fan_isomorphic(deg, deg)

    def test_verifier_catches_tampering(self, p2):
        iso = fan_isomorphic(p2, p2)
        bad = FanIso(
            matrix=iso.matrix * 2,
            ray_bijection=iso.ray_bijection,
            cone_bijection=iso.cone_bijection,
        )
        assert verify_fan_iso(p2, p2, bad)

    def test_symmetry_and_mutual_inverse(self, p2):
        u = IntMatrix([(2, 1), (1, 1)])
        assert abs(determinant(u)) == 1
        other = fangen.conjugate_fan(p2, u)
        ab = fan_isomorphic(p2, other)
        ba = fan_isomorphic(other, p2)
        assert ab is not None and ba is not None
        composite = ba.matrix @ ab.matrix  # maps p2's lattice to itself
        assert abs(determinant(composite)) == 1
        # the composite is a fan automorphism: it permutes the rays
        images = {composite.apply(r) for r in p2.rays}
        assert images == set(p2.rays)

    def test_resource_guard(self):
        rays = []
        for i in range(6):
            e = [0] * 6
            e[i] = 1
            rays.append(tuple(e))
            rays.append(tuple(-x for x in e))
        rays.append((1, 1, 1, 1, 1, 1))
        rays.append((1, 2, 3, 4, 5, 6))
        fan = mk(6, rays, [(i,) for i in range(14)])
        with pytest.raises(ResourceLimitError):
            fan_isomorphic(fan, fan)


class TestToricIsomorphism:
    def test_fan_vs_itself(self, hirzebruch):
        report = toric_isomorphism(hirzebruch, hirzebruch)
        assert isinstance(report, IsoReport)
        assert report.isomorphic
        assert report.torus_ranks == (0, 0)
        assert report.iso.matrix == IntMatrix.identity(2)

    def test_quadric_with_torus_factor_vs_conjugate(self, quadric):
        padded = mk(3, [(1, 0, 0), (1, 2, 0)], [(0, 1)])
        g = IntMatrix([(0, 1, 0), (0, 0, 1), (1, 0, 0)])
        other = fangen.conjugate_fan(padded, g)
        report = toric_isomorphism(padded, other)
        assert report.isomorphic
        assert report.torus_ranks == (1, 1)
        assert (
            verify_fan_iso(
                report.splits[0].reduced_fan,
                report.splits[1].reduced_fan,
                report.iso,
            )
            == []
        )

    def test_torus_rank_mismatch(self, p2):
        padded = mk(
            3,
            [(-1, -1, 0), (0, 1, 0), (1, 0, 0)],
            [(0, 1), (0, 2), (1, 2)],
        )
        report = toric_isomorphism(padded, p2)
        assert not report.isomorphic
        assert "torus factor ranks differ" in report.reason
        assert report.torus_ranks == (1, 0)

    def test_reduced_fans_differ(self, quadric, plane):
        report = toric_isomorphism(quadric, plane)
        assert not report.isomorphic
        assert report.reason == "reduced fans are not isomorphic"

    def test_pure_torus_fans(self):
        a = mk(2, [], [])
        b = mk(2, [], [])
        report = toric_isomorphism(a, b)
        assert report.isomorphic
        assert report.torus_ranks == (2, 2)


class TestRandomRoundTrips:
    def test_conjugate_round_trips(self):
        rng = Random(20240816)
        for trial in range(40):
            torus = rng.choice([0, 0, 1])
            fan = fangen.random_fan(rng, max_rank=3, torus_rank=torus)
            u = fangen.random_unimodular(fan.rank, rng)
            other = fangen.conjugate_fan(fan, u)
            report = toric_isomorphism(fan, other)
            assert report.isomorphic, (trial, fan, u)
            if report.iso is not None:
                assert (
                    verify_fan_iso(
                        report.splits[0].reduced_fan,
                        report.splits[1].reduced_fan,
                        report.iso,
                    )
                    == []
                )

    def test_symmetry_on_random_pairs(self):
        rng = Random(7)
        for _ in range(15):
            a = fangen.random_fan(rng, max_rank=2)
            b = fangen.random_fan(rng, max_rank=2)
            assert (
                toric_isomorphism(a, b).isomorphic
                == toric_isomorphism(b, a).isomorphic
            )
