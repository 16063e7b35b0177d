import hashlib
import random
from importlib import resources

import pytest

from griddesigns.bigraph import canonical_form, degrees, stats
from griddesigns.criteria import check_D, check_Dhat, evaluate
from griddesigns.oracle import design_verdict, materialize
from griddesigns.permgroup import apply, automorphisms
from griddesigns.search import (
    SearchBudgetError,
    SearchSpec,
    degree_branches,
    exhaustive_search,
    family_cycle,
    family_figure,
    family_path,
)

from conftest import iso_class_reps, random_gridperm


class TestFamilyPath:
    def test_odd_degrees(self):
        x, y = degrees(family_path(5, 4, 4))
        assert x == (1, 2, 2, 0) and y == (2, 2, 1, 0)

    def test_even_degrees(self):
        x, y = degrees(family_path(4, 3, 3))
        assert x == (1, 2, 1) and y == (2, 2, 0)

    def test_smallest_complete_case(self):
        g = family_path(3, 2, 2)
        d = materialize(g, "G")
        verdict, _ = design_verdict(d, 2)
        assert verdict is True
        assert d.b == 4  # all 3-subsets of the 4 cells

    def test_does_not_fit(self):
        with pytest.raises(ValueError):
            family_path(9, 4, 4)
        with pytest.raises(ValueError):
            family_path(4, 2, 3)  # even k needs k/2 + 1 rows

    def test_is_a_path(self):
        for k in range(1, 9):
            g = family_path(k, 6, 6)
            st = stats(g)
            assert g.k == k
            assert st.p2_total == k - 1
            assert st.claw3_total == 0


class TestFamilyCycle:
    def test_degrees(self):
        x, y = degrees(family_cycle(6, 4))
        assert x == (2, 2, 2, 0) and y == (2, 2, 2, 0)

    def test_smallest_complete_case(self):
        g = family_cycle(4, 2)
        d = materialize(g, "G")
        assert d.b == 1  # the whole grid is one block

    def test_cycle8_lambda_720(self):
        g = family_cycle(8, 6)
        rep = evaluate(g, automorphisms(g))
        assert rep.dhat_is_2design and rep.lambda_dhat_2 == 720
        assert rep.g_order == 64

    def test_rejects_odd_or_small(self):
        with pytest.raises(ValueError):
            family_cycle(5, 4)
        with pytest.raises(ValueError):
            family_cycle(2, 4)
        with pytest.raises(ValueError):
            family_cycle(8, 3)


class TestFamilyFigure:
    def test_fig2_is_3design(self):
        g = family_figure("fig2")
        assert check_D(g)[1] is True

    def test_fig1_dhat_3design(self):
        g = family_figure("fig1")
        assert check_Dhat(g)[1] is True
        assert stats(g).p3 == 300

    def test_fig3_shape(self):
        g = family_figure("fig3")
        assert (g.m, g.n, g.k) == (38, 38, 105)

    def test_data_files_pinned(self):
        # the 38x38 witness is a hand transcription; pin the bytes
        expected = {
            "fig1": "ccb6287b92711c9835283b922eb5611d29725f1b4db43ab8fcccee14e318ad4a",
            "fig2": "2e1e99245a9ac235aae4fb59e5649c4b6dc5df8b146dcbf91514f9f4002c472e",
            "fig3": "3904a6cb23e284009b83e1f54ad77ef824cc4e21ed6943a4dbab93e921b05fc5",
        }
        for name, digest in expected.items():
            data = resources.files("griddesigns.data").joinpath(f"{name}.grid").read_bytes()
            assert hashlib.sha256(data).hexdigest() == digest, name

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            family_figure("fig9")


class TestExhaustiveSearch:
    def test_block_size_four_flag_transitive(self):
        spec = SearchSpec(m=5, n=5, k=4, target="flag-dhat2")
        results = list(exhaustive_search(spec))
        assert len(results) == 2
        lams = set()
        for g in results:
            rep = evaluate(g, automorphisms(g))
            lams.add(rep.lambda_dhat_2)
        assert lams == {12, 18}

    def test_3x3_k4_dhat2_is_the_path(self):
        spec = SearchSpec(m=3, n=3, k=4, target="dhat2")
        results = list(exhaustive_search(spec))
        assert len(results) == 1
        want = canonical_form(family_path(4, 3, 3), allow_transpose=True)
        assert canonical_form(results[0], allow_transpose=True) == want

    def test_infeasible_parameters_empty(self):
        # k(k-1)/(m+1) = 6/4 is not an integer
        spec = SearchSpec(m=3, n=3, k=3, target="dhat2")
        assert list(exhaustive_search(spec)) == []
        assert degree_branches(spec) == []

    def test_results_verify(self):
        spec = SearchSpec(m=4, n=4, k=5, target="dhat2")
        results = list(exhaustive_search(spec))
        assert results, "the diagonal path qualifies, so results exist"
        for g in results:
            assert check_Dhat(g)[0]
            d = materialize(g, "G")
            assert design_verdict(d, 2)[0]

    def test_dedup_soundness(self):
        spec = SearchSpec(m=4, n=4, k=5, target="dhat2")
        results = list(exhaustive_search(spec))
        rng = random.Random(19)
        for i, g in enumerate(results):
            for h in results[i + 1:]:
                for _ in range(100):
                    p = random_gridperm(4, 4, rng, allow_swap=True)
                    assert apply(p, g) != h

    def test_degree_partitions(self):
        from griddesigns.search import _bounded_partitions

        assert list(_bounded_partitions(4, 3, 5)) == [
            (4, 0, 0), (3, 1, 0), (2, 2, 0), (2, 1, 1)
        ]
        assert list(_bounded_partitions(4, 3, 2)) == [(2, 2, 0), (2, 1, 1)]
        assert list(_bounded_partitions(0, 2, 3)) == [(0, 0)]
        for x in _bounded_partitions(9, 5, 4):
            assert sum(x) == 9 and all(a >= b for a, b in zip(x, x[1:]))

    def test_dedup_completeness_small(self):
        # pruned search finds exactly the classes that a naive sweep finds
        for m, n, k, target in [
            (3, 3, 4, "dhat2"),
            (3, 3, 4, "d2"),
            (2, 3, 3, "d2"),
            (4, 4, 5, "dhat2"),
            (4, 4, 6, "d2"),
        ]:
            dedup = "allow-tau" if m == n else "side-preserving"
            spec = SearchSpec(m=m, n=n, k=k, target=target, dedup=dedup)
            got = {canonical_form(g, allow_transpose=(m == n))
                   for g in exhaustive_search(spec)}
            naive = set()
            for g in iso_class_reps(m, n):
                if g.k != k:
                    continue
                hit = check_D(g)[0] if target == "d2" else check_Dhat(g)[0]
                if hit:
                    naive.add(canonical_form(g, allow_transpose=(m == n)))
            assert got == naive

    def test_budget_refusal(self):
        spec = SearchSpec(m=5, n=5, k=4, target="dhat2", max_nodes=5)
        with pytest.raises(SearchBudgetError) as exc:
            list(exhaustive_search(spec))
        assert exc.value.branch_index >= 0

    def test_deterministic_order(self):
        spec = SearchSpec(m=5, n=5, k=4, target="flag-dhat2")
        a = [g.edges() for g in exhaustive_search(spec)]
        b = [g.edges() for g in exhaustive_search(spec)]
        assert a == b

    def test_workers_do_not_change_output(self):
        spec = SearchSpec(m=5, n=5, k=4, target="dhat2")
        serial = [g.edges() for g in exhaustive_search(spec)]
        parallel = [g.edges() for g in exhaustive_search(spec, workers=2)]
        assert serial == parallel

    def test_workers_reject_time_limit(self):
        spec = SearchSpec(m=3, n=3, k=4, target="dhat2", max_seconds=5)
        with pytest.raises(ValueError):
            list(exhaustive_search(spec, workers=2))

    def test_target_validation(self):
        with pytest.raises(ValueError):
            SearchSpec(m=3, n=3, k=4, target="bogus")
        with pytest.raises(ValueError):
            SearchSpec(m=3, n=4, k=4, target="dhat2")
