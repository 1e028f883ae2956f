"""Low-rank set families: brute force, suffixes of H_a flips, seeds and spans,
splendid-seed parameterization of suffixes, and flip-isolation search."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .bitset import SetLike, as_mask, bits_of, full_mask, popcount
from .errors import CapExceeded, NotASuffix, TooLarge
from .flips import FlipSpec, Pattern, apply_flip, build_h_digraph, type_classes
from .graph import ColoredGraph, Digraph
from .rank import cutrank_mask
from .scc import SccCondensation, condense

DEFAULT_SUBSET_CAP = 16
DEFAULT_SUFFIX_CAP = 10 ** 6


def default_suffix_cap() -> int:
    env = os.environ.get("LRMSO_CAP")
    return int(env) if env else DEFAULT_SUFFIX_CAP


def canonical_key(mask: int) -> tuple:
    return (popcount(mask), tuple(bits_of(mask)))


@dataclass
class SuffixFamily:
    """Deduplicated vertex-set family; ``source`` keeps the first generator of each set."""

    sets: list = field(default_factory=list)
    source: dict = field(default_factory=dict)

    @classmethod
    def from_masks(cls, masks, source=None) -> "SuffixFamily":
        uniq = sorted(set(masks), key=canonical_key)
        src = {m: source for m in uniq} if source is not None else {}
        return cls(uniq, src)

    def as_set(self) -> frozenset:
        return frozenset(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def __contains__(self, mask: int) -> bool:
        return mask in self.as_set()

    def to_json(self, with_provenance: bool = False) -> list:
        out = []
        for m in self.sets:
            if with_provenance:
                src = self.source.get(m)
                out.append({"set": list(bits_of(m)), "source": _json_source(src)})
            else:
                out.append(list(bits_of(m)))
        return out


def _json_source(src):
    if src is None:
        return None
    if isinstance(src, tuple) and len(src) == 2:
        return {"a_plus": list(bits_of(src[0])), "a_minus": list(bits_of(src[1]))}
    return str(src)


# ---------------------------------------------------------------- enumeration

def brute_lowrank(g: ColoredGraph, r: int, cap: int = DEFAULT_SUBSET_CAP) -> SuffixFamily:
    """All vertex sets of cutrank at most ``r`` (2^n subsets filtered)."""
    if g.n > cap:
        raise TooLarge(f"brute_lowrank capped at n={cap}, got {g.n}")
    full = g.full
    adj = g.adj
    keep = [x for x in range(1 << g.n) if cutrank_mask(adj, x, full) <= r]
    return SuffixFamily.from_masks(keep, "brute")


def suffixes(h: Digraph, cap: Optional[int] = None, cond: Optional[SccCondensation] = None) -> SuffixFamily:
    """All vertex sets closed under out-arcs of ``h``.

    Enumerated as upward-closed sets of the condensation: branch on the
    lowest undecided component, including it (with everything above) or
    excluding it (with everything below).  Every branch yields a distinct
    suffix, so the enumeration never backtracks.
    """
    if cap is None:
        cap = default_suffix_cap()
    c = cond or condense(h)
    out: list[int] = []

    def walk(undecided: int, chosen: int):
        if not undecided:
            if len(out) >= cap:
                raise CapExceeded(f"more than {cap} suffixes")
            out.append(chosen)
            return
        comp = (undecided & -undecided).bit_length() - 1
        walk(undecided & ~c.reach[comp], chosen | (c.reach[comp] & undecided))
        walk(undecided & ~c.coreach[comp], chosen)

    walk((1 << c.comp_count) - 1, 0)
    return SuffixFamily.from_masks([c.vertices_of(m) for m in out], "suffix")


def _parameter_pairs(n: int, r: int):
    """Disjoint nonempty (a_plus, a_minus) with sizes at most 2^r, as masks."""
    width = 2 ** r
    small = [m for size in range(1, min(width, n) + 1)
             for m in (sum(1 << v for v in c) for c in combinations(range(n), size))]
    for ap in small:
        for am in small:
            if ap & am == 0:
                yield ap, am


def _sweep_chunk(args):
    g, r, pairs, cap = args
    found = {}
    for ap, am in pairs:
        h, _, adm = build_h_digraph(g, ap, am, r)
        if not adm:
            continue  # inadmissible H has only the trivial suffixes
        for x in suffixes(h, cap).sets:
            found.setdefault(x, (ap, am))
    return found


def lowrank_via_suffixes(g: ColoredGraph, r: int, cap: Optional[int] = None,
                         workers: int = 1, max_n: int = DEFAULT_SUBSET_CAP) -> SuffixFamily:
    """Union of Suffixes(H_a) over all parameter pairs, plus the empty and full sets.

    Must coincide with :func:`brute_lowrank`.  Halves are swept as sets, which
    is equivalent to sweeping tuples of length ``2 * 2^r`` because
    :func:`build_h_digraph` only depends on the sets.
    """
    if g.n > max_n:
        raise TooLarge(f"lowrank_via_suffixes capped at n={max_n}, got {g.n}")
    if cap is None:
        cap = default_suffix_cap()
    pairs = list(_parameter_pairs(g.n, r))
    found: dict[int, object] = {0: "trivial", g.full: "trivial"}
    if workers <= 1 or len(pairs) < 64:
        chunks = [_sweep_chunk((g, r, pairs, cap))]
    else:
        step = -(-len(pairs) // workers)
        jobs = [(g, r, pairs[i:i + step], cap) for i in range(0, len(pairs), step)]
        with ProcessPoolExecutor(workers) as ex:
            chunks = list(ex.map(_sweep_chunk, jobs))
    for chunk in chunks:  # chunk order is fixed, so provenance is deterministic too
        for x, src in chunk.items():
            found.setdefault(x, src)
    if len(found) > cap:
        raise CapExceeded(f"more than {cap} low-rank sets")
    uniq = sorted(found, key=canonical_key)
    return SuffixFamily(uniq, {m: found[m] for m in uniq})


# ---------------------------------------------------------------- seeds

@dataclass(frozen=True)
class Seed:
    """(X+, X-, parts): X+ is forced in, X- forced out, each part is all-or-nothing."""

    x_plus: int
    x_minus: int
    parts: tuple = ()

    def is_partition_of(self, n: int) -> bool:
        blocks = [self.x_plus, self.x_minus, *self.parts]
        seen = 0
        for b in blocks:
            if b & seen:
                return False
            seen |= b
        return seen == full_mask(n) and all(p != 0 for p in self.parts)

    def to_json(self) -> dict:
        return {
            "x_plus": list(bits_of(self.x_plus)),
            "x_minus": list(bits_of(self.x_minus)),
            "parts": [list(bits_of(p)) for p in self.parts],
        }


def trivial_seed(n: int) -> Seed:
    return Seed(0, full_mask(n), ())


def span_contains(seed: Seed, x: SetLike) -> bool:
    xm = as_mask(x)
    if seed.x_plus & ~xm or xm & seed.x_minus:
        return False
    return all(p & xm in (0, p) for p in seed.parts)


def span(seed: Seed, cap: Optional[int] = None) -> SuffixFamily:
    if cap is None:
        cap = default_suffix_cap()
    if len(seed.parts) > 62 or 2 ** len(seed.parts) > cap:
        raise CapExceeded(f"span has {2 ** len(seed.parts)} members, cap {cap}")
    sets = []
    for choice in range(1 << len(seed.parts)):
        x = seed.x_plus
        for i in bits_of(choice):
            x |= seed.parts[i]
        sets.append(x)
    return SuffixFamily.from_masks(sets, "span")


def seed_from_digraph(h: Digraph, b: Sequence[int], cond: Optional[SccCondensation] = None) -> Seed:
    """Seed generated by sample vertices ``b`` in the reachability preorder of ``h``.

    X+ is what lies strictly above some ``b_i``, X- what lies strictly below.
    ``b`` is consistent when no ``b_i`` is in X+ or X- and the remainder holds
    no strictly comparable pair; an inconsistent ``b`` gives the trivial seed
    (empty, V, no parts).  Otherwise parts are the SCCs of the remainder.
    """
    c = cond or condense(h)
    x_plus = x_minus = 0
    for v in b:
        x_plus |= c.above(v)
        x_minus |= c.below(v)
    rest = full_mask(h.n) & ~(x_plus | x_minus)
    consistent = all((rest >> v) & 1 for v in b)
    if consistent:
        rest_comps = 0
        for v in bits_of(rest):
            rest_comps |= 1 << c.comp_of[v]
        # antichain: no component of the remainder reaches another one
        consistent = all(c.reach[k] & rest_comps == 1 << k for k in bits_of(rest_comps))
    if not consistent:
        return trivial_seed(h.n)
    parts = sorted((c.members[k] for k in bits_of(rest_comps)), key=lambda m: m & -m)
    return Seed(x_plus, x_minus, tuple(parts))


def seed_from_params(g: ColoredGraph, spec: FlipSpec, a: Sequence[int], b: Sequence[int]) -> Seed:
    return seed_from_digraph(apply_flip(g, spec, a), b)


def is_uniform(g: ColoredGraph, seed: Seed, a: Sequence[int]) -> bool:
    """a-uniformity: part vertices of equal type over ``a`` are twins outside their own parts."""
    _, _, cls = type_classes(g, a)
    part_of = {}
    for p in seed.parts:
        for v in bits_of(p):
            part_of[v] = p
    verts = sorted(part_of)
    for i, u1 in enumerate(verts):
        for u2 in verts[i + 1:]:
            if cls[u1] != cls[u2]:
                continue
            outside = g.full & ~(part_of[u1] | part_of[u2])
            if (g.adj[u1] ^ g.adj[u2]) & outside:
                return False
    return True


@dataclass(frozen=True)
class SuffixSeed:
    """Result of :func:`seed_for_suffix`."""

    b: tuple
    seed: Seed
    b_plus: tuple
    b_minus: tuple
    type_count: int

    @property
    def cover_bound(self) -> int:
        return self.type_count ** 2

    @property
    def within_bound(self) -> bool:
        return len(self.b_plus) <= self.cover_bound and len(self.b_minus) <= self.cover_bound

    def to_json(self) -> dict:
        return {
            "b": list(self.b),
            "seed": self.seed.to_json(),
            "b_plus": list(self.b_plus),
            "b_minus": list(self.b_minus),
            "type_count": self.type_count,
            "within_bound": self.within_bound,
        }


def _minimal_cover(targets: int, candidates: list, covers) -> list:
    """Greedy set cover of ``targets`` then pruned to inclusion-minimality."""
    chosen: list = []
    left = targets
    while left:
        best = max(candidates, key=lambda u: (popcount(covers(u) & left), -u))
        gain = covers(best) & left
        if not gain:
            raise AssertionError("cover does not exist")
        chosen.append(best)
        left &= ~gain
    for u in list(chosen):
        rest = [w for w in chosen if w != u]
        union = 0
        for w in rest:
            union |= covers(w)
        if targets & ~union == 0:
            chosen = rest
    return sorted(chosen)


def seed_for_suffix(h: Digraph, g: ColoredGraph, a: Sequence[int], x: SetLike) -> SuffixSeed:
    """Sample vertices ``b`` with ``x`` in the span of the seed they generate.

    Starts from the splendid seed (X, V - X, no parts) and moves components
    into the parts while some component of X+ has nothing of the parts
    strictly below it (taking a minimal such component), and symmetrically
    for X- (taking a maximal one).  Then ``b`` is the union of an
    inclusion-minimal X+-cover and X--cover drawn from one vertex per part.
    """
    xm = as_mask(x)
    if not h.is_suffix(xm):
        raise NotASuffix("set is not closed under out-arcs")
    c = condense(h)
    comps_of = lambda m: {c.comp_of[v] for v in bits_of(m)}  # noqa: E731
    plus = comps_of(xm)
    minus = comps_of(full_mask(h.n) & ~xm)
    parts: set = set()

    def strictly_below(k, j):
        return k != j and (c.reach[k] >> j) & 1 == 0 and (c.reach[j] >> k) & 1 == 1

    changed = True
    while changed:
        changed = False
        bad = [k for k in plus if not any(strictly_below(k, p) for p in parts)]
        if bad:
            low = min((k for k in bad if not any(strictly_below(k, j) for j in bad)),
                      key=lambda k: c.members[k] & -c.members[k])
            plus.discard(low)
            parts.add(low)
            changed = True
            continue
        bad = [k for k in minus if not any(strictly_below(p, k) for p in parts)]
        if bad:
            high = min((k for k in bad if not any(strictly_below(j, k) for j in bad)),
                       key=lambda k: c.members[k] & -c.members[k])
            minus.discard(high)
            parts.add(high)
            changed = True

    x_plus = c.vertices_of(sum(1 << k for k in plus))
    x_minus = c.vertices_of(sum(1 << k for k in minus))
    reps = sorted(c.members[k] & -c.members[k] for k in parts)
    reps = [m.bit_length() - 1 for m in reps]
    b_plus = _minimal_cover(x_plus, reps, c.above) if x_plus else []
    b_minus = _minimal_cover(x_minus, reps, c.below) if x_minus else []
    b = tuple(sorted(set(b_plus) | set(b_minus)))
    if not b and reps:
        b = (reps[0],)  # b is drawn from the parts; one vertex there leaves the seed unchanged
    seed = seed_from_digraph(h, b, c)
    types, _, _ = type_classes(g, a)
    return SuffixSeed(b, seed, tuple(b_plus), tuple(b_minus), len(types))


# ---------------------------------------------------------------- isolating flips

@dataclass(frozen=True)
class IsolatingFlip:
    """Parameters ``s`` and the class pairs to flip so that no edge joins X to its complement."""

    s: tuple
    flipped: tuple      # ((i, j), ...) with i <= j, indices into the realized type list
    spec: FlipSpec

    def to_json(self) -> dict:
        return {"s": list(self.s), "flipped": [list(p) for p in self.flipped], "spec": self.spec.to_text()}


def isolating_flip_for(g: ColoredGraph, x: int, params: Sequence[int]) -> Optional[IsolatingFlip]:
    """Flip with fixed parameters removing every X-X^ edge, if the cross relation is type-homogeneous."""
    types, masks, _ = type_classes(g, params)
    rest = g.full & ~x
    flips = []
    m = len(types)
    for i in range(m):
        for j in range(i, m):
            seen = set()
            for left, right in ((masks[i] & x, masks[j] & rest), (masks[j] & x, masks[i] & rest)):
                for u in bits_of(left):
                    row = g.adj[u] & right
                    if row:
                        seen.add(True)
                    if row != right:
                        seen.add(False)
            if len(seen) > 1:
                return None
            if True in seen:
                flips.append((i, j))
    all_colors = sorted(g.colors)

    def pat(t):
        return Pattern(t.eq_str(), t.adj_str(), tuple((c in t.colors, c) for c in all_colors))

    spec = FlipSpec("Iso", len(params), tuple((pat(types[i]), pat(types[j])) for i, j in flips), True)
    return IsolatingFlip(tuple(params), tuple(flips), spec)


def find_isolating_flip(g: ColoredGraph, x: SetLike, l_max: int,
                        max_candidates: int = 2_000_000) -> Optional[IsolatingFlip]:
    """First (by size, then lexicographically) S with |S| <= l_max admitting an isolating symmetric flip."""
    from math import comb
    xm = as_mask(x)
    total = sum(comb(g.n, i) for i in range(min(l_max, g.n) + 1))
    if total > max_candidates:
        raise TooLarge(f"isolating-flip search would try {total} parameter sets")
    for size in range(min(l_max, g.n) + 1):
        for s in combinations(range(g.n), size):
            res = isolating_flip_for(g, xm, s)
            if res is not None:
                return res
    return None


__all__ = [
    "SuffixFamily", "Seed", "SuffixSeed", "IsolatingFlip",
    "brute_lowrank", "suffixes", "lowrank_via_suffixes", "span", "span_contains",
    "seed_from_digraph", "seed_from_params", "seed_for_suffix", "trivial_seed", "is_uniform",
    "find_isolating_flip", "isolating_flip_for",
]
