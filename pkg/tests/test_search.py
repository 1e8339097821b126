from __future__ import annotations

import pytest

from bruhat_cubulator.bruhat import interval
from bruhat_cubulator.cube import CubicalLattice
from bruhat_cubulator.search import (
    BUDGET_EXCEEDED,
    EXHAUSTED,
    FOUND,
    Cubulation,
    candidate_shapes,
    cubulate,
    search,
    verify_certificate,
    verify_certificate_detailed,
)

import oracles
from conftest import system


class TestCandidateShapes:
    def test_a2(self, a2):
        assert candidate_shapes(interval(a2.longest_element())) == [(2, 3)]

    def test_identity(self, a2):
        assert candidate_shapes(interval(a2.identity)) == [()]

    def test_obstructed(self, a3):
        # a non-palindromic rank generating function admits no shape
        assert candidate_shapes(interval(a3.element((2, 1, 3, 2)))) == []


class TestSearch:
    def test_found_verifies(self, a3):
        iv = interval(a3.longest_element())
        out = search(iv, (2, 3, 4))
        assert out.status == FOUND
        assert verify_certificate(iv, out.certificate)
        assert out.stats["nodes_expanded"] > 0

    def test_wrong_degree_rejected(self, a3):
        with pytest.raises(ValueError):
            search(interval(a3.longest_element()), (2, 2))

    def test_budget_and_resume_reproduce_full_run(self, b3):
        iv = interval(b3.longest_element())
        shape = candidate_shapes(iv)[0]
        full = search(iv, shape)
        assert full.status == FOUND
        # walk the same tree in slices and confirm the identical certificate
        out = search(iv, shape, budget=40)
        used = out.stats["nodes_expanded"]
        while out.status == BUDGET_EXCEEDED:
            out = search(iv, shape, budget=40, checkpoint=out.checkpoint)
            used += out.stats["nodes_expanded"]
        assert out.status == FOUND
        assert out.certificate.assignment == full.certificate.assignment
        assert used == full.stats["nodes_expanded"]

    def test_budget_must_be_positive(self, a2):
        with pytest.raises(ValueError):
            search(interval(a2.longest_element()), (2, 3), budget=0)

    def test_checkpoint_replay_guard(self, a2, a3):
        iv = interval(a2.longest_element())
        out = search(iv, (2, 3), budget=3)
        assert out.status == BUDGET_EXCEEDED
        other = interval(a3.element((2, 1, 3, 2)))
        with pytest.raises(ValueError):
            search(other, (2, 3), checkpoint={"shape": [2, 3], "path": [99], "min_id": 0})


class TestCubulate:
    def test_identity(self, a2):
        out = cubulate(a2.identity)
        assert out.status == FOUND
        assert out.certificate.lattice.params == (0,)

    def test_exhausted_no_shapes(self, a3):
        out = cubulate(a3.element((2, 1, 3, 2)))
        assert out.status == EXHAUSTED
        assert out.stats["shapes_tried"] == 0

    def test_budget_checkpoint_names_shape(self, b3):
        out = cubulate(b3.longest_element(), budget=5)
        assert out.status == BUDGET_EXCEEDED
        assert tuple(out.checkpoint["shape"]) in candidate_shapes(interval(b3.longest_element()))
        resumed = cubulate(b3.longest_element(), checkpoint=out.checkpoint)
        assert resumed.status == FOUND

    def test_parallel_matches_serial(self, b3):
        y = b3.longest_element()
        serial = cubulate(y)
        parallel = cubulate(y, workers=2)
        assert serial.status == parallel.status == FOUND
        assert verify_certificate(interval(y), parallel.certificate)


class TestVerifier:
    def _found(self, sys):
        iv = interval(sys.longest_element())
        out = cubulate(sys.longest_element(), iv=iv)
        return iv, out.certificate

    def test_accepts_good_certificate(self, a3):
        iv, cert = self._found(a3)
        assert verify_certificate(iv, cert)

    def test_rejects_missing_vertex(self, a2):
        iv, cert = self._found(a2)
        bad = dict(cert.assignment)
        del bad[(1, 2)]
        ok, msg = verify_certificate_detailed(iv, Cubulation(cert.lattice, bad))
        assert not ok and "vertices" in msg

    def test_rejects_non_bijection(self, a2):
        iv, cert = self._found(a2)
        bad = dict(cert.assignment)
        bad[(1, 2)] = bad[(0, 0)]
        ok, msg = verify_certificate_detailed(iv, Cubulation(cert.lattice, bad))
        assert not ok and "bijection" in msg

    def test_rejects_rank_mismatch(self, a2):
        iv, cert = self._found(a2)
        bad = dict(cert.assignment)
        # swap two vertices of different rank
        bad[(0, 0)], bad[(1, 2)] = bad[(1, 2)], bad[(0, 0)]
        ok, msg = verify_certificate_detailed(iv, Cubulation(cert.lattice, bad))
        assert not ok and "rank" in msg

    def test_rejects_non_edge(self, b3):
        # some same-rank swap must break a lattice edge and be rejected with
        # an edge-specific message
        iv, cert = self._found(b3)
        coords = sorted(cert.assignment)
        saw_edge_rejection = False
        for i, u in enumerate(coords):
            for v in coords[i + 1 :]:
                if sum(u) != sum(v):
                    continue
                bad = dict(cert.assignment)
                bad[u], bad[v] = bad[v], bad[u]
                ok, msg = verify_certificate_detailed(iv, Cubulation(cert.lattice, bad))
                if not ok and "edge" in msg:
                    saw_edge_rejection = True
                    break
            if saw_edge_rejection:
                break
        assert saw_edge_rejection


class TestOracleAgreement:
    @pytest.mark.parametrize("tag", ["A3", "Atilde2"])
    def test_small_elements(self, tag):
        sys = system(tag)
        for layer in sys.ball_layers(4):
            for y in layer:
                assert cubulate(y).status == oracles.naive_cubulate_status(y), y
