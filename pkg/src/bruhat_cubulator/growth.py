"""Ball growth, Poincare series truncations, and Bott's product formula.

All series live as exact integer truncations.  The quantum-shape probe
factors truncations of (1 - z)^|S| W(z) into products of (1 - z^a) terms;
it reports every consistent shape per order and flags stabilization, which
is finite evidence only, never a statement about the full series.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .coxeter import CoxeterSystem, Element
from .polynomials import IntPoly, ONE, SeriesTruncation, truncated_rational


def exponents(tag) -> tuple[int, ...]:
    """The exponents of a finite type, keyed by a classification tag.

    Tags are pairs like ("A", 3), ("B", 4), ("I2", 7) as produced by
    CoxeterSystem.classify_component.
    """
    letter, n = tag
    if letter == "A":
        return tuple(range(1, n + 1))
    if letter == "B":
        return tuple(range(1, 2 * n, 2))
    if letter == "D":
        return tuple(range(1, 2 * n - 2, 2)) + (n - 1,)
    if letter == "E":
        return {
            6: (1, 4, 5, 7, 8, 11),
            7: (1, 5, 7, 9, 11, 13, 17),
            8: (1, 7, 11, 13, 17, 19, 23, 29),
        }[n]
    if letter == "F":
        return (1, 5, 7, 11)
    if letter == "G":
        return (1, 5)
    if letter == "H":
        return {3: (1, 5, 9), 4: (1, 11, 19, 29)}[n]
    if letter == "I2":
        return (1, n - 1)
    raise ValueError(f"unknown finite type tag {tag!r}")


def _affine_exponents(system: CoxeterSystem) -> tuple[int, ...]:
    """Exponents of the finite Weyl group underlying an affine system."""
    tag = system.type_tag
    mm = re.fullmatch(r"([A-G])tilde(\d+)", tag or "")
    if not mm:
        raise ValueError(f"not an irreducible affine type: {system!r}")
    letter, n = mm.group(1), int(mm.group(2))
    if letter == "C":
        letter = "B"
    if letter == "A" and n == 1:
        return (1,)
    return exponents((letter, n))


def ball_sizes(system: CoxeterSystem, radius: int) -> list[int]:
    """Cumulative ball cardinalities beta(0), ..., beta(radius)."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    counts = system.ball_layer_counts(radius)
    out = []
    total = 0
    for c in counts:
        total += c
        out.append(total)
    return out


def poincare_truncation(system: CoxeterSystem, order: int) -> SeriesTruncation:
    """Truncation of W(z), the length generating series of the group."""
    if order < 0:
        raise ValueError("order must be non-negative")
    return SeriesTruncation(system.ball_layer_counts(order), order)


def volume_growth_truncation(system: CoxeterSystem, order: int) -> SeriesTruncation:
    """Truncation of the volume growth series, with (1 - z) Gamma(z) = W(z)."""
    return SeriesTruncation(ball_sizes(system, order), order)


def bott_truncation(system: CoxeterSystem, order: int) -> SeriesTruncation:
    """Bott's product formula for the series of an irreducible affine system.

    W(z) = prod over exponents e of (1 - z^(e+1)) / ((1 - z)(1 - z^e)),
    expanded by exact long division.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    numer = ONE
    denom = ONE
    for e in _affine_exponents(system):
        numer = numer * _one_minus_z_pow(e + 1)
        denom = denom * _one_minus_z_pow(1) * _one_minus_z_pow(e)
    return truncated_rational(numer, denom, order)


def _one_minus_z_pow(a: int) -> IntPoly:
    return IntPoly((1,) + (0,) * (a - 1) + (-1,))


def minimal_nonspherical_L(system: CoxeterSystem) -> int:
    """1 + the largest longest-element length over maximal proper parabolics.

    Defined for minimal nonspherical systems: infinite, but with every
    proper standard parabolic subgroup finite.
    """
    if system.is_finite():
        raise ValueError("system is finite, hence spherical")
    best = 0
    for a in system.labels:
        sub = system.subsystem([b for b in system.labels if b != a])
        if not sub.is_finite():
            raise ValueError(
                f"maximal parabolic omitting {a} is infinite; "
                "system is not minimal nonspherical"
            )
        best = max(best, sub.longest_element().length)
    return 1 + best


def ball_in_interval_check(system: CoxeterSystem, k: int, y: Element) -> bool:
    """True iff the radius-k ball lies inside [1, y], element by element.

    Requires l(y) >= k * L with L = minimal_nonspherical_L(system); a
    violated precondition raises rather than silently returning.
    """
    if y.system is not system:
        raise ValueError("y belongs to a different system")
    if k < 0:
        raise ValueError("k must be non-negative")
    L = minimal_nonspherical_L(system)
    if y.length < k * L:
        raise ValueError(f"need l(y) >= k * L = {k * L}, got {y.length}")
    for layer in system.ball_layers(k):
        for x in layer:
            if not system.bruhat_leq(x, y):
                return False
    return True


@dataclass(frozen=True, eq=False)
class GrowthProbeReport:
    """Quantum shapes matching truncations of F(z) = (1 - z)^|S| W(z).

    ``shapes_by_order[j]`` lists every multiset (a_1 <= ... <= a_N) with
    N <= |S| and a_i <= j whose product of (1 - z^(a_i)) agrees with F(z)
    through order j.  Stabilization means the set is the same singleton
    from ``stabilization_index`` through the final order probed.
    """

    order: int
    f_coeffs: tuple[int, ...]
    shapes_by_order: dict = field(repr=False)
    stabilization_index: int | None
    stabilized_shape: tuple[int, ...] | None
    caveat: str = "finite truncation only; not evidence about the full series"

    @property
    def stabilized(self) -> bool:
        return self.stabilization_index is not None


def growth_quantum_probe(system: CoxeterSystem, order: int) -> GrowthProbeReport:
    if order < 1:
        raise ValueError("order must be at least 1")
    if system.is_finite():
        raise ValueError("the probe applies to infinite systems")
    from itertools import combinations_with_replacement

    n = system.rank
    f = poincare_truncation(system, order)
    for _ in range(n):
        f = f.mul_poly(_one_minus_z_pow(1))
    shapes_by_order: dict[int, tuple] = {}
    for j in range(1, order + 1):
        target = f.coeffs[: j + 1]
        found = []
        for count in range(n + 1):
            for combo in combinations_with_replacement(range(1, j + 1), count):
                prod = ONE
                for a in combo:
                    prod = prod * _one_minus_z_pow(a)
                pc = prod.coeffs + (0,) * (j + 1 - len(prod.coeffs))
                if pc[: j + 1] == target:
                    found.append(combo)
        shapes_by_order[j] = tuple(sorted(found))
    stab_index = None
    stab_shape = None
    last = shapes_by_order[order]
    if len(last) == 1:
        j = order
        while j >= 2 and shapes_by_order[j - 1] == last:
            j -= 1
        if order - j >= 2:
            stab_index = j
            stab_shape = last[0]
    return GrowthProbeReport(order, f.coeffs, shapes_by_order, stab_index, stab_shape)
