"""Row/column permutation groups acting on grid block graphs.

The acting groups are K (independent row and column permutations) and, on a
square grid, G = <K, transpose>, which is the full automorphism group of
K_{m,m}.  This module computes the setwise stabilizers of a block graph in
both groups: generators, exact orders, equivalence of a graph with its
transpose, and edge-orbit transitivity (the flag-transitivity test).

The stabilizer search is a vertex-colored individualization/refinement
backtrack over the m + n vertices; orders come from a stabilizer chain, never
from enumerating group elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .bigraph import BiGraph, transpose


@dataclass(frozen=True)
class GridPerm:
    """An element of K or G: row permutation, column permutation, and an
    optional leading transpose (swap), all 0-based images.

    Action on a cell (i, j): (rows[i], cols[j]) without swap, and
    (rows[j], cols[i]) with swap (transpose first, then permute).  Swap
    elements only exist on square grids.
    """

    rows: tuple[int, ...]
    cols: tuple[int, ...]
    swap: bool = False

    def __post_init__(self):
        if self.swap and len(self.rows) != len(self.cols):
            raise ValueError("swap elements require m = n")

    def is_identity(self) -> bool:
        return (
            not self.swap
            and all(i == v for i, v in enumerate(self.rows))
            and all(j == v for j, v in enumerate(self.cols))
        )


def identity(m: int, n: int) -> GridPerm:
    return GridPerm(tuple(range(m)), tuple(range(n)), False)


def compose(a: GridPerm, b: GridPerm) -> GridPerm:
    """The element 'apply a, then b'."""
    if b.swap:
        rows = tuple(b.rows[v] for v in a.cols)
        cols = tuple(b.cols[v] for v in a.rows)
    else:
        rows = tuple(b.rows[v] for v in a.rows)
        cols = tuple(b.cols[v] for v in a.cols)
    return GridPerm(rows, cols, a.swap != b.swap)


def inverse(p: GridPerm) -> GridPerm:
    r_inv = _inv(p.rows)
    c_inv = _inv(p.cols)
    if p.swap:
        return GridPerm(c_inv, r_inv, True)
    return GridPerm(r_inv, c_inv, False)


def _inv(perm: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(perm)
    for i, v in enumerate(perm):
        out[v] = i
    return tuple(out)


def apply(p: GridPerm, g: BiGraph) -> BiGraph:
    """Image graph of g under p; preserves edge count and degree multisets
    (swapping the two sides when p.swap)."""
    if p.swap and g.m != g.n:
        raise ValueError("swap elements act only on square grids")
    if len(p.rows) != (g.n if p.swap else g.m) or len(p.cols) != (g.m if p.swap else g.n):
        raise ValueError("permutation sizes do not match the grid")
    rows = [0] * g.m
    for i, mask in enumerate(g.rows):
        while mask:
            low = mask & -mask
            j = low.bit_length() - 1
            ii, jj = apply_cell(p, (i, j))
            rows[ii] |= 1 << jj
            mask ^= low
    return BiGraph(g.m, g.n, tuple(rows))


def apply_cell(p: GridPerm, cell: tuple[int, int]) -> tuple[int, int]:
    """Image of a 0-based cell (i, j)."""
    i, j = cell
    if p.swap:
        return (p.rows[j], p.cols[i])
    return (p.rows[i], p.cols[j])


def group_order(m: int, n: int, group: str) -> int:
    """|K| = m! n!, |G| = 2 (m!)^2 (G only on square grids)."""
    if group == "K":
        return factorial(m) * factorial(n)
    if group == "G":
        if m != n:
            raise ValueError("G is only defined for m = n")
        return 2 * factorial(m) ** 2
    raise ValueError(f"unknown group {group!r}")


@dataclass(frozen=True)
class AutReport:
    """Stabilizer data for a block graph.

    k_gens generate the stabilizer in K; g_gens (square grids only) generate
    the stabilizer in G and contain at most one swap element.  Orders are
    exact; g_order = 2 * k_order exactly when the graph is equivalent to its
    transpose under K.
    """

    k_gens: tuple[GridPerm, ...]
    k_order: int
    g_gens: tuple[GridPerm, ...] | None = None
    g_order: int | None = None
    tau_equivalent: bool | None = None


# ---------------------------------------------------------------------------
# Colored-graph machinery on the vertex set R ∪ C (rows first, then columns)
# ---------------------------------------------------------------------------

def _adjacency(g: BiGraph) -> list[int]:
    """Neighbor bitmask per vertex; row i is vertex i, column j is m + j."""
    adj = [0] * (g.m + g.n)
    for i, mask in enumerate(g.rows):
        adj[i] = mask << g.m
        while mask:
            low = mask & -mask
            adj[g.m + low.bit_length() - 1] |= 1 << i
            mask ^= low
    return adj


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _refine(cells_a, cells_b, adj_a, adj_b):
    """Lockstep equitable refinement of two ordered partitions.

    Cells are bitmasks; positions in the two lists correspond.  Returns the
    refined pair, or None when the split signatures diverge (no isomorphism
    can respect the current correspondence).
    """
    while True:
        new_a: list[int] = []
        new_b: list[int] = []
        split = False
        for cell_a, cell_b in zip(cells_a, cells_b):
            if cell_a.bit_count() != cell_b.bit_count():
                return None
            if cell_a.bit_count() == 1:
                va = cell_a.bit_length() - 1
                vb = cell_b.bit_length() - 1
                if _sig(va, cells_a, adj_a) != _sig(vb, cells_b, adj_b):
                    return None
                new_a.append(cell_a)
                new_b.append(cell_b)
                continue
            buckets_a: dict[tuple, int] = {}
            for v in _bits(cell_a):
                key = _sig(v, cells_a, adj_a)
                buckets_a[key] = buckets_a.get(key, 0) | (1 << v)
            buckets_b: dict[tuple, int] = {}
            for v in _bits(cell_b):
                key = _sig(v, cells_b, adj_b)
                buckets_b[key] = buckets_b.get(key, 0) | (1 << v)
            keys = sorted(buckets_a)
            if keys != sorted(buckets_b):
                return None
            for key in keys:
                if buckets_a[key].bit_count() != buckets_b[key].bit_count():
                    return None
                new_a.append(buckets_a[key])
                new_b.append(buckets_b[key])
            if len(buckets_a) > 1:
                split = True
        if not split:
            return new_a, new_b
        cells_a, cells_b = new_a, new_b


def _sig(v: int, cells, adj) -> tuple:
    return tuple((adj[v] & cell).bit_count() for cell in cells)


def _search_iso(adj_a, adj_b, cells_a, cells_b, nverts: int):
    """First color/partition-respecting isomorphism as a vertex map, or None."""
    refined = _refine(cells_a, cells_b, adj_a, adj_b)
    if refined is None:
        return None
    cells_a, cells_b = refined

    branch = None
    for idx, cell in enumerate(cells_a):
        size = cell.bit_count()
        if size > 1 and (branch is None or size < cells_a[branch].bit_count()):
            branch = idx
    if branch is None:
        mapping = [0] * nverts
        for cell_a, cell_b in zip(cells_a, cells_b):
            mapping[cell_a.bit_length() - 1] = cell_b.bit_length() - 1
        for v in range(nverts):
            image = 0
            for u in _bits(adj_a[v]):
                image |= 1 << mapping[u]
            if image != adj_b[mapping[v]]:
                return None
        return mapping

    cell_a = cells_a[branch]
    cell_b = cells_b[branch]
    a = cell_a & -cell_a
    for b in _bits(cell_b):
        next_a = cells_a[:branch] + [a, cell_a ^ a] + cells_a[branch + 1:]
        next_b = cells_b[:branch] + [1 << b, cell_b ^ (1 << b)] + cells_b[branch + 1:]
        found = _search_iso(adj_a, adj_b, next_a, next_b, nverts)
        if found is not None:
            return found
    return None


def _side_cells(m: int, n: int, pins: tuple[int, ...]) -> list[int]:
    """Pinned vertices as leading singleton cells, then the two side cells."""
    cells = [1 << p for p in pins]
    pinned = 0
    for p in pins:
        pinned |= 1 << p
    rows_mask = ((1 << m) - 1) & ~pinned
    cols_mask = (((1 << n) - 1) << m) & ~pinned
    if rows_mask:
        cells.append(rows_mask)
    if cols_mask:
        cells.append(cols_mask)
    return cells


def _find_side_iso(g: BiGraph, h: BiGraph):
    """Vertex map realizing a side-preserving isomorphism g -> h, or None."""
    if g.m != h.m or g.n != h.n or g.k != h.k:
        return None
    nverts = g.m + g.n
    return _search_iso(
        _adjacency(g), _adjacency(h),
        _side_cells(g.m, g.n, ()), _side_cells(h.m, h.n, ()),
        nverts,
    )


def _orbit(start: int, perms) -> set[int]:
    orbit = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for p in perms:
            w = p[v]
            if w not in orbit:
                orbit.add(w)
                frontier.append(w)
    return orbit


def _k_stabilizer(g: BiGraph):
    """Generators (as vertex perms) and exact order of the stabilizer in K.

    Builds a stabilizer chain: repeatedly refine with the pinned prefix
    individualized, branch on the first non-singleton cell, and find one
    stabilizer element per coset by a constrained isomorphism search.  The
    order is the product of the orbit sizes along the chain.
    """
    adj = _adjacency(g)
    nverts = g.m + g.n
    gens: list[list[int]] = []
    pins: list[int] = []
    order = 1
    while True:
        cells = _refine(
            _side_cells(g.m, g.n, tuple(pins)),
            _side_cells(g.m, g.n, tuple(pins)),
            adj, adj,
        )[0]
        target = next((c for c in cells if c.bit_count() > 1), None)
        if target is None:
            break
        u = (target & -target).bit_length() - 1
        level_gens = [p for p in gens if all(p[q] == q for q in pins)]
        orbit = _orbit(u, level_gens)
        for w in _bits(target):
            if w in orbit:
                continue
            found = _search_iso(
                adj, adj,
                _side_cells(g.m, g.n, tuple(pins) + (u,)),
                _side_cells(g.m, g.n, tuple(pins) + (w,)),
                nverts,
            )
            if found is not None:
                gens.append(found)
                level_gens.append(found)
                orbit = _orbit(u, level_gens)
        order *= len(orbit)
        pins.append(u)
    return gens, order


def _vertex_map_to_gridperm(mapping, m: int, n: int) -> GridPerm:
    rows = tuple(mapping[i] for i in range(m))
    cols = tuple(mapping[m + j] - m for j in range(n))
    return GridPerm(rows, cols, False)


def _gridperm_to_vertex_map(p: GridPerm, m: int, n: int) -> tuple[int, ...]:
    out = [0] * (m + n)
    if p.swap:
        for i in range(m):
            out[i] = m + p.cols[i]
        for j in range(n):
            out[m + j] = p.rows[j]
    else:
        for i in range(m):
            out[i] = p.rows[i]
        for j in range(n):
            out[m + j] = m + p.cols[j]
    return tuple(out)


def automorphisms(g: BiGraph) -> AutReport:
    """Stabilizer of the block graph in K, and in G on square grids.

    The G part reuses the K chain: the stabilizer in G either equals the one
    in K or extends it by a single swap element, which exists exactly when g
    is isomorphic to its transpose under K.
    """
    vgens, chain_order = _k_stabilizer(g)
    k_gens = tuple(_vertex_map_to_gridperm(p, g.m, g.n) for p in vgens)
    k_order = order_from_generators(
        [_gridperm_to_vertex_map(p, g.m, g.n) for p in k_gens], g.m + g.n
    )
    assert k_order == chain_order

    g_gens = None
    g_order = None
    tau_eq = None
    if g.m == g.n:
        mapping = _find_side_iso(g, transpose(g))
        tau_eq = mapping is not None
        if tau_eq:
            rows = tuple(mapping[g.m + j] - g.m for j in range(g.n))
            cols = tuple(mapping[i] for i in range(g.m))
            swap_gen = GridPerm(rows, cols, True)
            g_gens = k_gens + (swap_gen,)
            g_order = 2 * k_order
        else:
            g_gens = k_gens
            g_order = k_order

    report = AutReport(k_gens, k_order, g_gens, g_order, tau_eq)
    for p in report.k_gens + (report.g_gens or ()):
        if apply(p, g) != g:
            raise AssertionError("stabilizer search returned a non-automorphism")
    return report


def tau_equivalent(g: BiGraph) -> bool:
    """Whether the transposed graph is the image of g under some element of K
    (square grids only).  Exactly then do the K-orbit and G-orbit of the block
    coincide."""
    if g.m != g.n:
        raise ValueError("tau equivalence is only defined on square grids")
    return _find_side_iso(g, transpose(g)) is not None


def is_edge_transitive(g: BiGraph, report: AutReport, group: str = "K") -> bool:
    """Whether the chosen stabilizer has a single orbit on the edges of g.

    Equivalent to flag-transitivity of the corresponding design.
    """
    if g.k == 0:
        raise ValueError("edge transitivity is undefined for an empty graph")
    if group == "K":
        gens = report.k_gens
    elif group == "G":
        if report.g_gens is None:
            raise ValueError("no G data in this report (grid is not square)")
        gens = report.g_gens
    else:
        raise ValueError(f"unknown group {group!r}")
    start = (g.edges()[0][0] - 1, g.edges()[0][1] - 1)
    orbit = {start}
    frontier = [start]
    while frontier:
        cell = frontier.pop()
        for p in gens:
            image = apply_cell(p, cell)
            if image not in orbit:
                orbit.add(image)
                frontier.append(image)
    return len(orbit) == g.k


# ---------------------------------------------------------------------------
# Order of a permutation group from generators (deterministic Schreier-Sims)
# ---------------------------------------------------------------------------

def order_from_generators(perms, npoints: int) -> int:
    """Exact order of the group generated by vertex permutations.

    Deterministic Schreier-Sims over the chain of point stabilizers: bases
    and transversals are rebuilt and every Schreier generator re-sifted until
    a full pass finds nothing new, at which point the product of the
    transversal sizes is the group order.  No randomness, no element
    enumeration; adequate for the small orbits of block-graph stabilizers.
    """
    ident = tuple(range(npoints))
    bases: list[int] = []
    placed: list[list[tuple[int, ...]]] = []  # gens first entering H_d at level d
    transversals: list[dict[int, tuple[int, ...]]] = []

    def level_gens(d: int):
        return [g for lst in placed[d:] for g in lst]

    def rebuild(d: int):
        gens = level_gens(d)
        base = bases[d]
        trans = {base: ident}
        frontier = [base]
        while frontier:
            u = frontier.pop()
            for q in gens:
                w = q[u]
                if w not in trans:
                    trans[w] = tuple(q[x] for x in trans[u])
                    frontier.append(w)
        transversals[d] = trans

    def sift(p):
        """Strip p through the chain; (residue, level) if it does not sift."""
        for d in range(len(bases)):
            image = p[bases[d]]
            if p[bases[d]] == bases[d]:
                continue
            if image not in transversals[d]:
                return p, d
            rep = transversals[d][image]
            rep_inv = [0] * npoints
            for i, v in enumerate(rep):
                rep_inv[v] = i
            p = tuple(rep_inv[x] for x in p)
        if p == ident:
            return None
        return p, len(bases)

    def add(p, d: int):
        if d == len(bases):
            bases.append(next(i for i in range(npoints) if p[i] != i))
            placed.append([])
            transversals.append({})
        placed[d].append(p)
        for e in range(d + 1):
            rebuild(e)

    for p in perms:
        p = tuple(p)
        if len(p) != npoints or sorted(p) != list(range(npoints)):
            raise ValueError("not a permutation of the point set")
        res = sift(p)
        if res is not None:
            add(*res)

    # close under Schreier generators until a full pass is clean
    dirty = True
    while dirty:
        dirty = False
        for d in range(len(bases)):
            base = bases[d]
            gens = level_gens(d)
            for u in sorted(transversals[d]):
                tu = transversals[d][u]
                for q in gens:
                    s = tuple(q[x] for x in tu)
                    rep = transversals[d][s[base]]
                    rep_inv = [0] * npoints
                    for i, v in enumerate(rep):
                        rep_inv[v] = i
                    schreier = tuple(rep_inv[x] for x in s)
                    res = sift(schreier)
                    if res is not None:
                        add(*res)
                        dirty = True
            if dirty:
                break

    order = 1
    for trans in transversals:
        order *= len(trans)
    return order


# ---------------------------------------------------------------------------
# Cycle-notation serialization for reports
# ---------------------------------------------------------------------------

def cycles_text(perm: tuple[int, ...]) -> str:
    """Cycle notation with 1-based points, fixed points omitted; '()' when
    the permutation is the identity."""
    seen = [False] * len(perm)
    parts = []
    for i in range(len(perm)):
        if seen[i] or perm[i] == i:
            continue
        cycle = [i]
        seen[i] = True
        j = perm[i]
        while j != i:
            seen[j] = True
            cycle.append(j)
            j = perm[j]
        parts.append("(" + " ".join(str(v + 1) for v in cycle) + ")")
    return "".join(parts) if parts else "()"


def gridperm_text(p: GridPerm) -> str:
    """One-line serialization: optional 'swap', then rowcyc/colcyc parts."""
    parts = []
    if p.swap:
        parts.append("swap")
    row_txt = cycles_text(p.rows)
    col_txt = cycles_text(p.cols)
    if row_txt != "()":
        parts.append(f"rowcyc {row_txt}")
    if col_txt != "()":
        parts.append(f"colcyc {col_txt}")
    if not parts:
        parts.append("identity")
    return " ".join(parts)
