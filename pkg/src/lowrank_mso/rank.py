"""Cut matrices: ranks over F2 and Q, diversity, twins, representatives,
capture separations, VC dimension and duality of bipartite relations."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

from .bitset import SetLike, as_mask, bits_of, popcount
from .errors import NotASeparation, TooLarge
from .graph import ColoredGraph

DEFAULT_VC_CAP = 16


@dataclass(frozen=True)
class CutMatrix:
    """Adj[X, X^]: ``rows[i]`` has bit ``j`` set iff ``row_index[i]`` ~ ``col_index[j]``."""

    rows: tuple
    row_index: tuple
    col_index: tuple

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.row_index), len(self.col_index)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def columns(self) -> list[int]:
        """Column ``j`` as a mask over row positions."""
        cols = [0] * len(self.col_index)
        for i, row in enumerate(self.rows):
            for j in bits_of(row):
                cols[j] |= 1 << i
        return cols

    def to_lists(self) -> list[list[int]]:
        w = len(self.col_index)
        return [[(row >> j) & 1 for j in range(w)] for row in self.rows]

    @classmethod
    def from_lists(cls, matrix) -> "CutMatrix":
        rows = []
        width = len(matrix[0]) if matrix else 0
        for r in matrix:
            m = 0
            for j, x in enumerate(r):
                if x:
                    m |= 1 << j
            rows.append(m)
        return cls(tuple(rows), tuple(range(len(matrix))), tuple(range(width)))


def cut_matrix(g: ColoredGraph, x: SetLike) -> CutMatrix:
    xm = as_mask(x)
    rest = g.full & ~xm
    cols = list(bits_of(rest))
    pos = {v: j for j, v in enumerate(cols)}
    rows = []
    for u in bits_of(xm):
        m = 0
        for v in bits_of(g.adj[u] & rest):
            m |= 1 << pos[v]
        rows.append(m)
    return CutMatrix(tuple(rows), tuple(bits_of(xm)), tuple(cols))


def gf2_rank(rows) -> int:
    """Rank over F2 of int-packed rows (xor basis keyed by leading bit)."""
    basis: dict[int, int] = {}
    for r in rows:
        while r:
            top = r.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = r
                break
            r ^= b
    return len(basis)


def rational_rank(matrix) -> int:
    """Rank over Q by Bareiss fraction-free elimination on Python ints."""
    a = [list(r) for r in matrix]
    if not a:
        return 0
    m, w = len(a), len(a[0])
    rank = 0
    prev = 1
    for col in range(w):
        if rank == m:
            break
        piv = next((i for i in range(rank, m) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for i in range(rank + 1, m):
            f = a[i][col]
            row = a[i]
            top = a[rank]
            for c in range(col + 1, w):
                row[c] = (p * row[c] - f * top[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
    return rank


def cutrank(g: ColoredGraph, x: SetLike) -> int:
    xm = as_mask(x)
    rest = g.full & ~xm
    return gf2_rank([g.adj[u] & rest for u in bits_of(xm)])


def cutrank_mask(adj, xm: int, full: int) -> int:
    """:func:`cutrank` on a raw adjacency table; used by the exhaustive sweeps."""
    rest = full & ~xm
    basis: dict[int, int] = {}
    while xm:
        low = xm & -xm
        r = adj[low.bit_length() - 1] & rest
        xm ^= low
        while r:
            top = r.bit_length() - 1
            b = basis.get(top)
            if b is None:
                basis[top] = r
                break
            r ^= b
    return len(basis)


@dataclass(frozen=True)
class RankMeasures:
    rk_f2: int
    rk_q: int
    dv: int

    def to_json(self) -> dict:
        return {"rk_f2": self.rk_f2, "rk_q": self.rk_q, "dv": self.dv}

    def chain_holds(self) -> bool:
        # rk_F2 <= rk_Q <= dv/2 <= 2^rk_F2, compared in integers
        return self.rk_f2 <= self.rk_q and 2 * self.rk_q <= self.dv <= 2 * 2 ** self.rk_f2


def diversity(mat: CutMatrix) -> int:
    h, w = mat.shape
    if h == 0 or w == 0:
        return 0
    return len(set(mat.rows)) + len(set(mat.columns()))


def rank_measures(g: ColoredGraph, x: SetLike) -> RankMeasures:
    mat = cut_matrix(g, x)
    return RankMeasures(gf2_rank(mat.rows), rational_rank(mat.to_lists()), diversity(mat))


def twin_reduce(mat: CutMatrix) -> CutMatrix:
    """Keep the first row of every twin class and the first column of every twin class."""
    seen = set()
    keep_rows = []
    for i, r in enumerate(mat.rows):
        if r not in seen:
            seen.add(r)
            keep_rows.append(i)
    cols = mat.columns()
    seen = set()
    keep_cols = []
    for j, c in enumerate(cols):
        if c not in seen:
            seen.add(c)
            keep_cols.append(j)
    rows = []
    for i in keep_rows:
        m = 0
        for new_j, j in enumerate(keep_cols):
            if (mat.rows[i] >> j) & 1:
                m |= 1 << new_j
        rows.append(m)
    return CutMatrix(tuple(rows), tuple(mat.row_index[i] for i in keep_rows),
                     tuple(mat.col_index[j] for j in keep_cols))


def representatives(g: ColoredGraph, x: SetLike) -> int:
    """Smallest-index member of each class of ``x`` under equal neighbourhood outside ``x``.

    Returns a vertex mask.  Its size is the number of distinct rows of the
    cut matrix, hence at most ``2 ** cutrank(g, x)``.
    """
    xm = as_mask(x)
    rest = g.full & ~xm
    seen = set()
    rep = 0
    for u in bits_of(xm):
        row = g.adj[u] & rest
        if row not in seen:
            seen.add(row)
            rep |= 1 << u
    return rep


@dataclass(frozen=True)
class Separation:
    left: int
    right: int

    @property
    def order(self) -> int:
        return popcount(self.left & self.right)

    def is_separation(self, g: ColoredGraph) -> bool:
        if self.left | self.right != g.full:
            return False
        only_l = self.left & ~self.right
        only_r = self.right & ~self.left
        return all(g.adj[u] & only_r == 0 for u in bits_of(only_l))

    def captures(self, x: SetLike) -> bool:
        xm = as_mask(x)
        return (self.left & ~self.right) & ~xm == 0 and xm & ~self.left == 0

    def to_json(self) -> dict:
        return {"L": list(bits_of(self.left)), "R": list(bits_of(self.right)), "order": self.order}


def capture_separation(g: ColoredGraph, x: SetLike, t: int) -> Separation:
    """Separation capturing ``x`` built from the frequent rows/columns of Adj[X, X^].

    A row (column) is frequent when it occurs at least ``t`` times.  ``L`` is
    ``X`` plus the vertices of ``X^`` with non-frequent columns, ``R`` is
    ``X^`` plus the vertices of ``X`` with non-frequent rows.  When ``g`` has no
    ``K_{t,t}`` subgraph the order is at most ``2^(r+1) (t-1)``.

    Raises :class:`NotASeparation` if an edge joins a frequent row vertex to a
    frequent column vertex, which exhibits a ``K_{t,t}`` subgraph.
    """
    if t < 1:
        raise ValueError("t must be positive")
    xm = as_mask(x)
    full = g.full
    rest = full & ~xm
    if xm == 0:
        return Separation(0, full)
    if rest == 0:
        return Separation(full, 0)
    row_of = {u: g.adj[u] & rest for u in bits_of(xm)}
    col_of = {v: g.adj[v] & xm for v in bits_of(rest)}
    row_count: dict[int, int] = {}
    for r in row_of.values():
        row_count[r] = row_count.get(r, 0) + 1
    col_count: dict[int, int] = {}
    for c in col_of.values():
        col_count[c] = col_count.get(c, 0) + 1
    rare_rows = 0
    for u, r in row_of.items():
        if row_count[r] < t:
            rare_rows |= 1 << u
    rare_cols = 0
    for v, c in col_of.items():
        if col_count[c] < t:
            rare_cols |= 1 << v
    sep = Separation(xm | rare_cols, rest | rare_rows)
    only_l = sep.left & ~sep.right
    only_r = sep.right & ~sep.left
    for u in bits_of(only_l):
        bad = g.adj[u] & only_r
        if bad:
            v = (bad & -bad).bit_length() - 1
            raise NotASeparation(f"edge {u}-{v} joins frequent rows to frequent columns", (u, v))
    assert sep.captures(xm)
    return sep


def has_biclique(g: ColoredGraph, t: int) -> bool:
    """Brute-force test for a K_{t,t} subgraph (not necessarily induced)."""
    if t <= 0:
        return True
    for left in combinations(range(g.n), t):
        common = g.full
        for u in left:
            common &= g.adj[u]
        if popcount(common) >= t:
            return True
    return False


def vc_dimension(g: ColoredGraph, cap: int = DEFAULT_VC_CAP) -> int:
    """VC dimension of the neighbourhood set system, by level-wise search.

    Shattering is hereditary, so level ``d`` candidates are extensions of
    shattered ``d-1`` sets all of whose ``d-1`` subsets are shattered.
    """
    if g.n > cap:
        raise TooLarge(f"vc_dimension capped at n={cap}, got {g.n}")
    if g.n == 0:
        return 0
    nbhd = g.adj

    def shattered(xm: int) -> bool:
        return len({a & xm for a in nbhd}) == 1 << popcount(xm)

    level = {0} if shattered(0) else set()
    best = 0
    d = 0
    while level:
        best = d
        d += 1
        nxt = set()
        for s in level:
            top = s.bit_length()
            for v in range(top, g.n):
                cand = s | (1 << v)
                if all((cand & ~(1 << w)) in level for w in bits_of(cand)) and shattered(cand):
                    nxt.add(cand)
        level = nxt
    return best


@dataclass(frozen=True)
class DualityResult:
    holds: bool
    side: str | None      # "A" (blocking set) or "B" (dominating set)
    witness: tuple

    def to_json(self) -> dict:
        return {"holds": self.holds, "side": self.side, "witness": list(self.witness)}


def check_duality(rows, size_b: int, k: int, max_candidates: int = 2_000_000) -> DualityResult:
    """Decide whether a bipartite relation has a duality of order ``k``.

    ``rows[a]`` is the mask over ``B`` of elements related to ``a``.  Looks
    first for ``A0`` (|A0| <= k) such that every ``b`` is unrelated to some
    member of ``A0``, then for ``B0`` (|B0| <= k) such that every ``a`` is
    related to some member of ``B0``.
    """
    size_a = len(rows)
    full_b = (1 << size_b) - 1
    total = sum(comb(size_a, i) + comb(size_b, i) for i in range(k + 1))
    if total > max_candidates:
        raise TooLarge(f"duality search would test {total} candidates")
    for size in range(k + 1):
        for a0 in combinations(range(size_a), size):
            blocked = 0
            for a in a0:
                blocked |= full_b & ~rows[a]
            if blocked == full_b:
                return DualityResult(True, "A", a0)
    cols = [0] * size_b
    for a, r in enumerate(rows):
        for b in bits_of(r):
            cols[b] |= 1 << a
    full_a = (1 << size_a) - 1
    for size in range(k + 1):
        for b0 in combinations(range(size_b), size):
            dom = 0
            for b in b0:
                dom |= cols[b]
            if dom == full_a:
                return DualityResult(True, "B", b0)
    return DualityResult(False, None, ())
