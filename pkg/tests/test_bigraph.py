import random

import pytest
from hypothesis import given, settings, strategies as st

from griddesigns.bigraph import (
    BiGraph,
    GraphFormatError,
    canonical_form,
    complement,
    degrees,
    format_graph_text,
    from_edge_list,
    parse_graph_text,
    stats,
    stats_by_enumeration,
    transpose,
)
from griddesigns.search import family_figure, family_path

from conftest import iso_class_reps, mask_to_graph, random_bigraph, random_gridperm
from griddesigns.permgroup import apply


def bigraphs(max_side=5):
    def build(draw):
        m = draw(st.integers(1, max_side))
        n = draw(st.integers(1, max_side))
        rows = draw(st.tuples(*[st.integers(0, (1 << n) - 1)] * m))
        return BiGraph(m, n, rows)

    return st.composite(build)()


class TestConstruction:
    def test_p3_on_2x2(self):
        g = from_edge_list(2, 2, [(1, 1), (1, 2), (2, 1)])
        assert g.k == 3
        assert g.edges() == [(1, 1), (1, 2), (2, 1)]

    def test_fig2_shape(self):
        g = family_figure("fig2")
        assert (g.m, g.n, g.k) == (8, 2, 6)
        x, y = degrees(g)
        assert sorted(x, reverse=True) == [2, 1, 1, 1, 1, 0, 0, 0]
        assert y == (4, 2)

    def test_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            from_edge_list(1, 1, [(1, 2)])
        with pytest.raises(ValueError):
            from_edge_list(2, 2, [(0, 1)])

    def test_duplicate_rejected(self):
        with pytest.raises(ValueError):
            from_edge_list(2, 2, [(1, 1), (1, 1)])

    def test_zero_side_rejected(self):
        with pytest.raises(ValueError):
            from_edge_list(0, 2, [])


class TestDegrees:
    def test_path5_in_4x4(self):
        x, y = degrees(family_path(5, 4, 4))
        assert x == (1, 2, 2, 0)
        assert y == (2, 2, 1, 0)

    def test_empty_graph(self):
        x, y = degrees(BiGraph(3, 3, (0, 0, 0)))
        assert x == (0, 0, 0) and y == (0, 0, 0)

    def test_degree_sums_equal_k(self):
        rng = random.Random(1)
        for _ in range(200):
            g = random_bigraph(rng)
            x, y = degrees(g)
            assert sum(x) == sum(y) == g.k


class TestStats:
    def test_fig2_counts(self):
        st_ = stats(family_figure("fig2"))
        assert (st_.p2_r, st_.p2_c, st_.claw3_r, st_.claw3_c, st_.p3) == (1, 7, 0, 4, 4)

    def test_fig1_three_paths(self):
        assert stats(family_figure("fig1")).p3 == 300

    def test_single_edge_all_zero(self):
        g = from_edge_list(2, 2, [(1, 1)])
        st_ = stats(g)
        assert st_ == stats_by_enumeration(g)
        assert (st_.p2_r, st_.p2_c, st_.p3, st_.claw3_r, st_.claw3_c) == (0, 0, 0, 0, 0)

    def test_formula_equals_enumeration_exhaustive(self):
        # every graph on grids with at most 12 cells
        for m, n in [(1, 1), (2, 2), (2, 3), (3, 3), (2, 5), (3, 4), (2, 6)]:
            for mask in range(1 << (m * n)):
                g = mask_to_graph(m, n, mask)
                assert stats(g) == stats_by_enumeration(g)

    def test_formula_equals_enumeration_random(self):
        rng = random.Random(42)
        for _ in range(1000):
            g = random_bigraph(rng, max_cells=64)
            assert stats(g) == stats_by_enumeration(g)

    def test_transpose_swaps_types(self):
        rng = random.Random(3)
        for _ in range(200):
            g = random_bigraph(rng)
            if g.m != g.n:
                continue
            a, b = stats(g), stats(transpose(g))
            assert (a.p2_r, a.p2_c) == (b.p2_c, b.p2_r)
            assert (a.claw3_r, a.claw3_c) == (b.claw3_c, b.claw3_r)
            assert a.p3 == b.p3


class TestTranspose:
    def test_symmetric_fixed_point(self):
        g = from_edge_list(3, 3, [(1, 1), (1, 2), (2, 1), (3, 3)])
        assert transpose(g) == g

    def test_p4_image(self):
        g = from_edge_list(3, 3, [(1, 1), (2, 1), (2, 2), (3, 2)])
        assert transpose(g).edges() == [(1, 1), (1, 2), (2, 2), (2, 3)]

    def test_requires_square(self):
        with pytest.raises(ValueError):
            transpose(BiGraph(2, 3, (0, 0)))

    @settings(max_examples=100)
    @given(bigraphs())
    def test_involution(self, g):
        if g.m == g.n:
            assert transpose(transpose(g)) == g


class TestComplement:
    def test_empty_to_complete(self):
        g = complement(BiGraph(2, 3, (0, 0)))
        assert g.k == 6

    def test_fig2_count(self):
        assert complement(family_figure("fig2")).k == 16 - 6

    @settings(max_examples=100)
    @given(bigraphs())
    def test_involution(self, g):
        assert complement(complement(g)) == g
        assert complement(g).k == g.m * g.n - g.k


class TestCanonicalForm:
    def test_row_swap_invariant(self):
        g = from_edge_list(3, 3, [(1, 1), (2, 2), (2, 3)])
        h = from_edge_list(3, 3, [(2, 1), (1, 2), (1, 3)])
        assert canonical_form(g) == canonical_form(h)

    def test_transpose_variant(self):
        g = from_edge_list(3, 3, [(1, 1), (2, 1), (2, 2), (3, 2)])
        assert canonical_form(g, allow_transpose=True) == canonical_form(
            transpose(g), allow_transpose=True
        )

    def test_path_vs_claw_distinct(self):
        p3 = from_edge_list(3, 3, [(1, 1), (1, 2), (2, 2)])
        claw = from_edge_list(3, 3, [(1, 1), (1, 2), (1, 3)])
        assert canonical_form(p3) != canonical_form(claw)

    def test_invariant_under_group(self):
        rng = random.Random(11)
        for trial in range(25):
            g = random_bigraph(rng, max_cells=25)
            reps = 100 if trial < 5 else 10
            key = canonical_form(g)
            for _ in range(reps):
                p = random_gridperm(g.m, g.n, rng)
                assert canonical_form(apply(p, g)) == key
            if g.m == g.n:
                gkey = canonical_form(g, allow_transpose=True)
                for _ in range(reps):
                    p = random_gridperm(g.m, g.n, rng, allow_swap=True)
                    assert canonical_form(apply(p, g), allow_transpose=True) == gkey

    def test_separates_classes(self):
        # canonical keys are pairwise distinct across orbit-enumeration class
        # representatives: soundness and completeness in one count
        for m, n in [(3, 3), (2, 4), (4, 4)]:
            reps = iso_class_reps(m, n)
            keys = {canonical_form(g) for g in reps}
            assert len(keys) == len(reps), (m, n)

    def test_transpose_variant_counts_g_orbits(self):
        # distinct transpose-variant keys over all 3x3 graphs equal the
        # number of orbits under the full group (row/col perms and transpose)
        keys = set()
        orbits = set()
        seen = set()
        for mask in range(1 << 9):
            g = mask_to_graph(3, 3, mask)
            keys.add(canonical_form(g, allow_transpose=True))
            if mask in seen:
                continue
            orbit = {mask}
            frontier = [g]
            while frontier:
                cur = frontier.pop()
                images = [transpose(cur)]
                for p in (
                    # adjacent row and column transpositions
                    [(1, 0, 2), None], [(0, 2, 1), None],
                    [None, (1, 0, 2)], [None, (0, 2, 1)],
                ):
                    from griddesigns.permgroup import GridPerm
                    rows = p[0] or (0, 1, 2)
                    cols = p[1] or (0, 1, 2)
                    images.append(apply(GridPerm(tuple(rows), tuple(cols)), cur))
                for img in images:
                    code = sum(
                        1 << (3 * i + j)
                        for i, j in ((a - 1, b - 1) for a, b in img.edges())
                    )
                    if code not in orbit:
                        orbit.add(code)
                        frontier.append(img)
            seen |= orbit
            orbits.add(min(orbit))
        assert len(keys) == len(orbits)


class TestTextFormat:
    def test_roundtrip(self):
        g = family_figure("fig2")
        assert parse_graph_text(format_graph_text(g)) == g

    def test_comments_and_blanks(self):
        text = "# witness\n\ngrid 2 2\nedge 1 1  # diagonal\n\nedge 2 2\n"
        g = parse_graph_text(text)
        assert g.edges() == [(1, 1), (2, 2)]

    def test_error_carries_line_number(self):
        with pytest.raises(GraphFormatError) as exc:
            parse_graph_text("grid 2 2\nedge 5 1\n")
        assert exc.value.line == 2

    def test_edge_before_grid(self):
        with pytest.raises(GraphFormatError):
            parse_graph_text("edge 1 1\n")

    def test_missing_grid(self):
        with pytest.raises(GraphFormatError):
            parse_graph_text("# nothing\n")
