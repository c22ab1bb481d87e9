import math

import numpy as np

import roadgeom as rg
from roadgeom.disks import (
    DiskSystem,
    build_disk_system,
    charge_audit,
    covering_counts,
    exceptional_decomposition,
    ply_report,
)

import oracles


def system_from(centers, radii):
    centers = np.asarray(centers, dtype=np.float64)
    radii = np.asarray(radii, dtype=np.float64)
    pairs = sorted(oracles.all_pairs_disk_pairs(type("S", (), {"centers": centers, "radii": radii})))
    return DiskSystem(np.arange(len(radii)), centers, radii, np.asarray(pairs).reshape(-1, 2))


class TestBuildDiskSystem:
    def test_kissing_pair(self):
        g = rg.GeometricGraph.build([(0, 0), (2, 0)], [(0, 1, 1.0, 4)])
        s = build_disk_system(g)
        assert s.radii.tolist() == [1.0, 1.0]
        assert s.pairs.tolist() == [[0, 1]]

    def test_collinear_path(self):
        pts = [(float(i), 0.0) for i in range(6)]
        g = rg.GeometricGraph.build(pts, [(i, i + 1, 1.0, 4) for i in range(5)])
        s = build_disk_system(g)
        assert np.all(s.radii == 0.5)
        assert s.pairs.tolist() == [[i, i + 1] for i in range(5)]

    def test_isolated_vertex_radius_zero(self):
        g = rg.GeometricGraph.build([(0, 0), (5, 5), (1, 0)], [(0, 2, 1.0, 4)])
        s = build_disk_system(g)
        assert s.radii[1] == 0.0

    def test_pairs_match_oracle_random(self, rgg_medium):
        s = build_disk_system(rgg_medium)
        got = {(int(i), int(j)) for i, j in s.pairs}
        assert got == oracles.all_pairs_disk_pairs(s)

    def test_pairs_match_oracle_mixed_scales(self, hub_small):
        s = build_disk_system(hub_small)
        got = {(int(i), int(j)) for i, j in s.pairs}
        assert got == oracles.all_pairs_disk_pairs(s)

    def test_graph_edges_are_pairs(self, gotham_small, rgg_small, hub_small):
        for g in (gotham_small, rgg_small, hub_small):
            s = build_disk_system(g)
            got = {(int(i), int(j)) for i, j in s.pairs}
            for e in g.edges():
                assert (min(e.u, e.v), max(e.u, e.v)) in got

    def test_subset_filters_pairs(self, rgg_small):
        s = build_disk_system(rgg_small)
        keep = list(range(0, len(s), 2))
        sub = s.subset(keep)
        assert len(sub) == len(keep)
        want = {
            (keep.index(int(i)), keep.index(int(j)))
            for i, j in s.pairs
            if int(i) in keep and int(j) in keep
        }
        assert {(int(i), int(j)) for i, j in sub.pairs} == want


class TestPly:
    def test_unit_path(self):
        pts = [(float(i), 0.0) for i in range(5)]
        g = rg.GeometricGraph.build(pts, [(i, i + 1, 1.0, 4) for i in range(4)])
        rep = ply_report(build_disk_system(g))
        assert rep.max_center_ply == 1
        assert np.all(rep.center_ply == 1)

    def test_star_hub_covers_leaves(self):
        # Hub at origin with a length-10 edge fixes the hub radius at 5;
        # five leaves at distance 1 are all covered by the hub disk.
        pts = [(0.0, 0.0), (10.0, 0.0)]
        edges = [(0, 1, 10.0, 4)]
        for k in range(5):
            ang = 2 * math.pi * k / 5
            pts.append((math.cos(ang), math.sin(ang)))
            edges.append((0, 2 + k, 1.0, 4))
        g = rg.GeometricGraph.build(pts, edges)
        rep = ply_report(build_disk_system(g))
        for leaf in range(2, 7):
            assert rep.center_ply[leaf] >= 2

    def test_center_ply_matches_oracle(self, rgg_medium):
        s = build_disk_system(rgg_medium)
        assert np.array_equal(s.center_ply(), oracles.all_pairs_center_ply(s))

    def test_kth_largest(self):
        g = rg.gen_hub_spoke(16, 9, seed=3)
        s = build_disk_system(g)
        rep = ply_report(s)
        k = int(math.isqrt(len(s)))
        assert rep.kth_largest_center_ply == int(np.sort(s.center_ply())[::-1][k - 1])
        assert rep.kth_largest_center_ply <= rep.max_center_ply
        assert rep.max_disk_degree == int(s.degrees().max())


class TestExceptional:
    def test_already_low_ply(self):
        g = rg.gen_gotham(8, 0, seed=0)
        s = build_disk_system(g)
        split = exceptional_decomposition(s, k=2)
        assert split.removed == ()
        assert split.residual_max_center_ply <= 2

    def test_single_offender(self):
        # A giant disk over a unit grid of ply-1 disks: removing just the
        # giant restores the target ply.
        pts = [(float(i), float(j)) for i in range(7) for j in range(7)]
        centers = pts + [(3.0, 3.0)]
        radii = [0.5] * len(pts) + [50.0]
        s = system_from(centers, radii)
        split = exceptional_decomposition(s, k=1)
        assert split.removed == (len(pts),)
        assert split.residual_max_center_ply <= 1
        assert split.within_sqrt_budget

    def test_residual_recheck(self):
        g = rg.gen_hub_spoke(20, 12, seed=6)
        s = build_disk_system(g)
        split = exceptional_decomposition(s, k=3)
        removed = set(split.removed)
        keep = [i for i in range(len(s)) if int(s.vertices[i]) not in removed]
        residual = s.subset(keep)
        recheck = oracles.all_pairs_center_ply(residual)
        assert int(recheck.max()) == split.residual_max_center_ply
        assert recheck.max() <= 3


class TestChargeAudit:
    def test_kissing_pair(self):
        s = system_from([(0.0, 0.0), (2.0, 0.0)], [1.0, 1.0])
        audit = charge_audit(s)
        assert audit.max_containment_charges == 0
        assert audit.tall.tolist() == [1, 0]  # tie broken by index

    def test_hexagon_neighbors(self):
        # Six unit disks around a half-radius center disk: all six charges
        # land on the small disk and stay within 6 * (brute-force ply).
        centers = [(0.0, 0.0)]
        radii = [0.5]
        for k in range(6):
            ang = math.pi * k / 3
            centers.append((1.4 * math.cos(ang), 1.4 * math.sin(ang)))
            radii.append(1.0)
        s = system_from(centers, radii)
        audit = charge_audit(s)
        k_ply = oracles.brute_force_system_ply(s)
        assert audit.tall[0] == 6
        assert audit.max_tall_charges <= 6 * k_ply

    def test_tall_bound_random(self):
        for seed in (1, 5, 9):
            g = rg.gen_random_geometric(100, 0.18, seed=seed)
            s = build_disk_system(g)
            k_ply = oracles.brute_force_system_ply(s)
            audit = charge_audit(s)
            assert audit.max_tall_charges <= 6 * k_ply
            assert audit.max_containment_charges <= k_ply
            assert len(s.pairs) <= 7 * k_ply * len(s)

    def test_charges_account_for_every_pair(self, rgg_small):
        s = build_disk_system(rgg_small)
        audit = charge_audit(s)
        assert audit.containment.sum() + audit.tall.sum() == len(s.pairs)


class TestCovering:
    def test_counts_match_brute_force(self, hub_small):
        s = build_disk_system(hub_small)
        rng = np.random.default_rng(0)
        pts = rng.uniform(-2, 18, size=(50, 2))
        got = covering_counts(s, pts)
        want = np.zeros(len(pts), dtype=np.int64)
        for i in range(len(s)):
            d = np.hypot(pts[:, 0] - s.centers[i, 0], pts[:, 1] - s.centers[i, 1])
            want += d <= s.radii[i]
        assert np.array_equal(got, want)

    def test_zero_radius_covers_only_itself(self):
        s = system_from([(0.0, 0.0), (1.0, 0.0)], [0.0, 0.0])
        counts = covering_counts(s, [(0.0, 0.0), (0.5, 0.0)])
        assert counts.tolist() == [1, 0]
