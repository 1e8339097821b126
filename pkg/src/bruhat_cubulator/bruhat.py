"""Bruhat order: lower intervals, Hasse diagrams, and Bruhat graphs.

The interval [1, y] is enumerated top-down by single-letter deletions from
canonical reduced words; the Strong Exchange Property guarantees that this
reaches every element.  Bruhat-graph edges are found by multiplying each
interval element by each reflection of bounded length and looking the
product up in the interval, which avoids quadratically many reflection
tests.
"""

from __future__ import annotations

from .coxeter import CoxeterSystem, Element
from .polynomials import IntPoly


class BruhatInterval:
    """The interval [1, y] with its Hasse diagram and Bruhat graph.

    Vertices carry dense ids assigned in (length, canonical word) order, so
    id 0 is the identity and the last id is y.  ``bruhat_edges`` holds
    triples (u_id, v_id, t) with t the reflection u^-1 v.
    """

    def __init__(self, system: CoxeterSystem, top: Element):
        if top.system is not system:
            raise ValueError("top element from a different system")
        self.system = system
        self.top = top
        self._enumerate()
        self._build_edges()
        self._below = None
        self._succ = None

    # -- construction -------------------------------------------------------

    def _enumerate(self):
        sys = self.system
        by_mat = {self.top.matrix: self.top}
        frontier = [self.top]
        while frontier:
            nxt = []
            for z in frontier:
                w = z.iword
                k = len(w)
                seen_words = set()
                for p in range(k):
                    r = sys._reduce(w[:p] + w[p + 1 :])
                    if len(r) != k - 1 or r in seen_words:
                        continue
                    seen_words.add(r)
                    mat = sys._word_matrix(r)
                    if mat not in by_mat:
                        el = sys._element(sys._canonical(r))
                        by_mat[mat] = el
                        nxt.append(el)
            frontier = nxt
        self.vertices = sorted(by_mat.values(), key=Element.sort_key)
        self.index = {el: i for i, el in enumerate(self.vertices)}
        self.lengths = [el.length for el in self.vertices]
        self._mat_index = {el.matrix: i for el, i in self.index.items()}

    def _build_edges(self):
        sys = self.system
        edges = []
        if self.top.length:
            reflections = sys.reflections_up_to(self.top.length)
            for u_id, u in enumerate(self.vertices):
                mu = u.matrix
                lu = u.length
                for t in reflections:
                    v_id = self._mat_index.get(sys._mat_mul(mu, t.matrix))
                    if v_id is not None and self.lengths[v_id] > lu:
                        edges.append((u_id, v_id, t))
        edges.sort(key=lambda e: (e[0], e[1]))
        self.bruhat_edges = edges
        self.hasse_edges = [
            (u, v) for u, v, _ in edges if self.lengths[v] == self.lengths[u] + 1
        ]

    # -- derived structure --------------------------------------------------

    def __len__(self):
        return len(self.vertices)

    def __contains__(self, el: Element) -> bool:
        return el in self.index

    @property
    def below_masks(self) -> list[int]:
        """For each vertex v, the bitset of ids x with x <= v."""
        if self._below is None:
            masks = [1 << i for i in range(len(self.vertices))]
            for u, v in self.hasse_edges:
                masks[v] |= masks[u]
            # hasse edges go up in id order, so one ascending pass suffices
            self._below = masks
        return self._below

    @property
    def succ_masks(self) -> list[int]:
        """For each vertex u, the bitset of v with a Bruhat edge u -> v."""
        if self._succ is None:
            masks = [0] * len(self.vertices)
            for u, v, _ in self.bruhat_edges:
                masks[u] |= 1 << v
            self._succ = masks
        return self._succ

    def length_masks(self) -> dict[int, int]:
        """Bitset of vertex ids for each length value."""
        out: dict[int, int] = {}
        for i, l in enumerate(self.lengths):
            out[l] = out.get(l, 0) | (1 << i)
        return out

    def leq_ids(self, x_id: int, y_id: int) -> bool:
        return bool(self.below_masks[y_id] >> x_id & 1)


def interval(y: Element) -> BruhatInterval:
    return BruhatInterval(y.system, y)


def bruhat_leq(x: Element, y: Element) -> bool:
    return x.system.bruhat_leq(x, y)


def bruhat_graph(iv: BruhatInterval) -> list:
    return list(iv.bruhat_edges)


def poincare_polynomial(iv: BruhatInterval) -> IntPoly:
    """Length generating function of [1, y]."""
    coeffs = [0] * (iv.top.length + 1)
    for l in iv.lengths:
        coeffs[l] += 1
    return IntPoly(coeffs)


def out_degree_in_interval(iv: BruhatInterval, x: Element) -> int:
    """Number of Bruhat-graph edges leaving x inside the interval."""
    x_id = iv.index.get(x)
    if x_id is None:
        raise ValueError(f"{x!r} is not in the interval")
    return iv.succ_masks[x_id].bit_count()
