"""Strongly connected components and the reachability poset of their condensation."""

from __future__ import annotations

from dataclasses import dataclass

from .bitset import bits_of
from .graph import Digraph


@dataclass(frozen=True)
class SccCondensation:
    """Condensation of a digraph.

    Components are numbered in reverse topological order (Tarjan emission
    order): every arc between distinct components goes from a higher index to
    a lower one.  ``reach[c]`` is a component mask holding every ``d`` with a
    directed path from ``c`` to ``d``, including ``c`` itself.
    """

    comp_of: tuple
    comp_count: int
    members: tuple       # component -> vertex mask
    dag_out: tuple       # component -> successor component mask (no self bit)
    reach: tuple         # component -> reflexive-transitive successor mask
    coreach: tuple       # component -> components that reach it (reflexive)

    def le(self, u: int, v: int) -> bool:
        """``v`` reachable from ``u``."""
        return (self.reach[self.comp_of[u]] >> self.comp_of[v]) & 1 == 1

    def lt(self, u: int, v: int) -> bool:
        return self.le(u, v) and not self.le(v, u)

    def same(self, u: int, v: int) -> bool:
        return self.comp_of[u] == self.comp_of[v]

    def vertices_of(self, comp_mask: int) -> int:
        m = 0
        for c in bits_of(comp_mask):
            m |= self.members[c]
        return m

    def above(self, u: int) -> int:
        """Vertex mask of everything strictly above ``u``."""
        c = self.comp_of[u]
        return self.vertices_of(self.reach[c] & ~(1 << c))

    def below(self, u: int) -> int:
        """Vertex mask of everything strictly below ``u``."""
        c = self.comp_of[u]
        return self.vertices_of(self.coreach[c] & ~(1 << c))


def tarjan(n: int, out) -> list[list[int]]:
    """Iterative Tarjan; returns SCCs in reverse topological order."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    sccs: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(list(bits_of(out[root]))))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, iter(list(bits_of(out[w])))))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                sccs.append(sorted(comp))
    return sccs


def condense(h: Digraph) -> SccCondensation:
    sccs = tarjan(h.n, h.out)
    count = len(sccs)
    comp_of = [0] * h.n
    members = []
    for c, comp in enumerate(sccs):
        m = 0
        for v in comp:
            comp_of[v] = c
            m |= 1 << v
        members.append(m)
    dag_out = []
    for c in range(count):
        succ = 0
        for v in bits_of(members[c]):
            for w in bits_of(h.out[v]):
                succ |= 1 << comp_of[w]
        dag_out.append(succ & ~(1 << c))
    reach = [0] * count
    for c in range(count):
        r = 1 << c
        for d in bits_of(dag_out[c]):
            r |= reach[d]
        reach[c] = r
    coreach = [0] * count
    for c in range(count):
        for d in bits_of(reach[c]):
            coreach[d] |= 1 << c
    return SccCondensation(tuple(comp_of), count, tuple(members), tuple(dag_out),
                           tuple(reach), tuple(coreach))
