"""Closed-form cubulations and normal-form forests.

Each construction emits a Cubulation certificate and immediately re-checks
it with the independent verifier; a failure raises, since these maps are
correct by theorem and a bad certificate means a transcription bug.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

from .bruhat import BruhatInterval, interval, poincare_polynomial
from .coxeter import CoxeterSystem, Element
from .cube import CubicalLattice
from .kl import all_trivial
from .polynomials import is_palindromic
from .search import Cubulation, verify_certificate_detailed


class ConstructionError(RuntimeError):
    """A construction produced a certificate that fails verification."""


@dataclass(frozen=True)
class ConstructionResult:
    lattice: CubicalLattice
    certificate: Cubulation
    tag: str
    interval: BruhatInterval


def _certify(iv: BruhatInterval, lattice: CubicalLattice, assignment, tag) -> ConstructionResult:
    cert = Cubulation(lattice, dict(assignment))
    ok, msg = verify_certificate_detailed(iv, cert)
    if not ok:
        raise ConstructionError(f"{tag} certificate failed verification: {msg}")
    return ConstructionResult(lattice, cert, tag, iv)


# ---------------------------------------------------------------------------
# normal form forests

@dataclass(frozen=True)
class NormalFormForest:
    """One edge-labeled trie per generator, spelling minimal coset reps.

    ``trees[j]`` is a nested dict trie whose root paths are the canonical
    words of the minimal representatives of cosets of the rank-j parabolic
    inside the rank-(j+1) parabolic (generators taken in label order).
    Choosing one root path per trie and concatenating enumerates the
    canonical word of every group element exactly once.
    """

    system: CoxeterSystem
    trees: tuple

    def is_path_forest(self) -> bool:
        def path(node):
            while node:
                if len(node) > 1:
                    return False
                node = next(iter(node.values()))
            return True

        return all(path(t) for t in self.trees)

    def path_label_sequences(self) -> list[tuple]:
        """The label word down each tree; only valid for path forests."""
        out = []
        for t in self.trees:
            seq = []
            node = t
            while node:
                if len(node) > 1:
                    raise ValueError("forest is not a path forest")
                label, node = next(iter(node.items()))
                seq.append(label)
            out.append(tuple(seq))
        return out

    def root_paths(self, j: int) -> list[tuple]:
        """All root-path label words of tree j, shortest first."""
        out = []

        def walk(node, prefix):
            out.append(prefix)
            for label, child in sorted(node.items()):
                walk(child, prefix + (label,))

        walk(self.trees[j], ())
        out.sort(key=lambda w: (len(w), w))
        return out


def normal_form_forest(system: CoxeterSystem) -> NormalFormForest:
    if not system.is_finite():
        raise ValueError("normal form forests require a finite system")
    trees = []
    for j in range(1, system.rank + 1):
        labels = system.labels[:j]
        last = labels[-1]
        sub = system.subsystem(labels)
        radius = sub.longest_element().length
        trie: dict = {}
        for layer in sub.ball_layers(radius):
            for x in layer:
                if sub.left_descents(x) <= {last}:
                    node = trie
                    for a in x.word:
                        node = node.setdefault(a, {})
        trees.append(trie)
    return NormalFormForest(system, tuple(trees))


def path_forest_cubulation(system: CoxeterSystem, forest: NormalFormForest | None = None) -> ConstructionResult:
    """Cubulate [1, w0] by concatenating prefixes of the forest's paths.

    Requires the normal form forest to consist of paths, which is verified,
    not assumed; types A and B qualify.
    """
    if forest is None:
        forest = normal_form_forest(system)
    if not forest.is_path_forest():
        raise ValueError("normal form forest is not a path forest")
    paths = forest.path_label_sequences()
    params = tuple(len(p) for p in paths)
    lattice = CubicalLattice(params)
    iv = interval(system.longest_element())
    assignment = {}
    for coords in product(*(range(k + 1) for k in params)):
        word = []
        for j, m in enumerate(coords):
            word.extend(paths[j][:m])
        el = system.element(word)
        assignment[coords] = iv.index[el]
    tag = "nff-A" if all(k == j + 1 for j, k in enumerate(params)) else "nff-B"
    return _certify(iv, lattice, assignment, tag)


# ---------------------------------------------------------------------------
# short and dihedral cases

def standard_parabolic_coxeter_cubulation(y: Element) -> ConstructionResult:
    """Boolean cubulation for elements using each generator at most once."""
    word = y.word
    if len(set(word)) != len(word):
        raise ValueError("element must use each generator at most once")
    k = len(word)
    iv = interval(y)
    if k == 0:
        return _certify(iv, CubicalLattice((0,)), {(0,): 0}, "boolean")
    lattice = CubicalLattice((1,) * k)
    assignment = {}
    for bits in product((0, 1), repeat=k):
        sub = tuple(a for a, b in zip(word, bits) if b)
        assignment[bits] = iv.index[y.system.element(sub)]
    return _certify(iv, lattice, assignment, "boolean")


def dihedral_cubulation(y: Element) -> ConstructionResult:
    """Cubulate a dihedral interval [1, y] by C(1, l(y) - 1)."""
    sys = y.system
    if sys.rank != 2:
        raise ValueError("dihedral construction needs a rank-2 system")
    k = y.length
    if k < 2:
        raise ValueError("need l(y) >= 2; shorter elements are boolean")
    a = y.word[0]
    b = next(l for l in sys.labels if l != a)

    def alternating(start, length):
        other = a if start == b else b
        return tuple(start if i % 2 == 0 else other for i in range(length))

    iv = interval(y)
    lattice = CubicalLattice((1, k - 1))
    assignment = {}
    for j in range(k):
        assignment[(0, j)] = iv.index[sys.element(alternating(b, j))]
        assignment[(1, j)] = iv.index[sys.element((a,) + alternating(b, j))]
    return _certify(iv, lattice, assignment, "dihedral")


# ---------------------------------------------------------------------------
# the affine rank-3 family

def _check_atilde2(system: CoxeterSystem):
    if system.labels != (0, 1, 2) or any(
        system.m(a, b) != 3 for a in (0, 1, 2) for b in (0, 1, 2) if a != b
    ):
        raise ValueError("this construction lives in the affine system on "
                         "labels 0,1,2 with all bond orders 3")


def y_m(system: CoxeterSystem, m: int) -> Element:
    """The length-(3+2m) initial subword of (s1 s2 s1)(s0 s2 s1)^m."""
    _check_atilde2(system)
    if m < 0:
        raise ValueError("m must be non-negative")
    word = ((1, 2, 1) + (0, 2, 1) * m)[: 3 + 2 * m]
    el = system.element(word)
    if el.length != 3 + 2 * m:
        raise ConstructionError(f"y_{m} is not reduced as written")
    return el


def atilde2_cubulation(system: CoxeterSystem, m: int) -> ConstructionResult:
    """Cubulate [1, y_m] by C(2, m, m+1), built by the recursive labeling.

    Level 0 starts from a six-entry base table and grows two boundary rows
    plus two corner cells per step (generator subscripts mod 3); levels 1
    and 2 are left-multiplications by s1 and then s2.  The result is always
    passed through the independent verifier.
    """
    _check_atilde2(system)
    if m < 1:
        raise ValueError("m must be at least 1; m = 0 is dihedral")
    g = {i: system.generator(i) for i in (0, 1, 2)}
    level0 = {
        (0, 0): system.identity,
        (0, 1): g[2],
        (0, 2): g[2] * g[0],
        (1, 0): g[0],
        (1, 1): g[0] * g[2],
        (1, 2): g[2] * g[0] * g[2],
    }
    for t in range(1, m):
        s_t = g[t % 3]
        s_prev = g[(t - 1) % 3]
        new = dict(level0)
        for k2 in range(t + 1):
            new[(k2, t + 2)] = level0[(k2, t + 1)] * s_t
        for k3 in range(t + 1):
            new[(t + 1, k3)] = level0[(t, k3)] * s_t
        new[(t + 1, t + 1)] = new[(t + 1, t)] * s_prev
        new[(t + 1, t + 2)] = new[(t + 1, t + 1)] * s_t
        level0 = new
    iv = interval(y_m(system, m))
    lattice = CubicalLattice((2, m, m + 1))
    assignment = {}
    for (k2, k3), el in level0.items():
        lvl1 = g[1] * el
        lvl2 = g[2] * lvl1
        assignment[(0, k2, k3)] = iv.index[el]
        assignment[(1, k2, k3)] = iv.index[lvl1]
        assignment[(2, k2, k3)] = iv.index[lvl2]
    return _certify(iv, lattice, assignment, "atilde2")


def atilde2_trivial_enumeration(system: CoxeterSystem, max_length: int) -> list[tuple]:
    """All y with l(y) <= max_length and trivial tables, with class matching.

    Each such y is paired with the representative of its diagram-relabeling
    class, drawn from {1, s1, s1 s2, s1 s2 s0} and the y_m family.  A
    trivial element with no representative raises.
    """
    _check_atilde2(system)
    reps = [
        system.identity,
        system.element((1,)),
        system.element((1, 2)),
        system.element((1, 2, 0)),
    ]
    mm = 0
    while 3 + 2 * mm <= max_length:
        reps.append(y_m(system, mm))
        mm += 1
    perms = [dict(zip((0, 1, 2), p)) for p in permutations((0, 1, 2))]
    orbit = {}
    for rep in reps:
        for perm in perms:
            orbit.setdefault(system.diagram_automorphism(perm, rep), rep)
    out = []
    for layer in system.ball_layers(max_length):
        for y in layer:
            if not is_palindromic(poincare_polynomial(interval(y))):
                continue
            rep = orbit.get(y)
            if rep is None:
                raise ConstructionError(
                    f"trivial element {y!r} matches no known class representative"
                )
            out.append((y, rep))
    return out
