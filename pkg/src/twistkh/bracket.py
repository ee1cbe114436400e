"""Kauffman bracket and Jones polynomial in both normalizations.

``<L>`` is the q-bracket ``sum_s (-q)^height(s) (q + q^-1)^circles(s)``,
``jones_hat = (-1)^n- q^(n+ - 2n-) <L>`` and ``kauffman_x`` is the a-variable
polynomial ``(-a)^(-3w) sum_s a^(alpha - beta) (-a^2 - a^-2)^(circles - 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .codes import Diagram
from .laurent import LaurentPolynomial, q_plus_q_inverse
from .states import DEFAULT_MAX_CROSSINGS, CubeGeometry


def kauffman_bracket_q(d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPolynomial:
    """State-sum evaluation of ``<L>``."""
    geom = CubeGeometry(d, max_crossings)
    loop = q_plus_q_inverse()
    total = LaurentPolynomial()
    for height, gammas in geom.state_sum_summary().items():
        for g in gammas:
            total = total + LaurentPolynomial.monomial(height, (-1) ** height) * loop ** g
    return total


def skein_bracket_q(d: Diagram) -> LaurentPolynomial:
    """``<L>`` by the recursion ``<L> = <L_A> - q <L_B>``.

    Smooths one crossing at a time and counts loops with a union-find on
    ends at the leaves; shares only the smoothing rule with the state sum.
    """
    geom = CubeGeometry(d)
    n_ends = 2 * geom.num_classical_arcs
    arc_links = [(2 * a, 2 * a + 1) for a in range(geom.num_classical_arcs)]
    pairs_a = [geom.smoothing_pairs(k, False) for k in range(geom.n)]
    pairs_b = [geom.smoothing_pairs(k, True) for k in range(geom.n)]
    loop = q_plus_q_inverse()

    def count_loops(chosen: list) -> int:
        parent = list(range(n_ends))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for links in (arc_links, chosen):
            for x, y in links:
                rx, ry = find(x), find(y)
                if rx != ry:
                    parent[rx] = ry
        return len({find(x) for x in range(n_ends)})

    def recurse(k: int, chosen: list) -> LaurentPolynomial:
        if k == geom.n:
            return loop ** (count_loops(chosen) + d.free_loops)
        a = recurse(k + 1, chosen + list(pairs_a[k]))
        b = recurse(k + 1, chosen + list(pairs_b[k]))
        return a - b.shift(1)

    return recurse(0, [])


def normalization(d: Diagram) -> LaurentPolynomial:
    return LaurentPolynomial.monomial(d.n_plus - 2 * d.n_minus, (-1) ** d.n_minus)


def jones_hat(d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPolynomial:
    return normalization(d) * kauffman_bracket_q(d, max_crossings)


class NotDivisible(ArithmeticError):
    pass


def jones(d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPolynomial:
    """``J = jones_hat / (q + q^-1)``, raising :class:`NotDivisible` if inexact."""
    quot, rem = jones_hat(d, max_crossings).divmod(q_plus_q_inverse())
    if not rem.is_zero() or d.is_empty():
        raise NotDivisible(f"(q + q^-1) does not divide the Jones polynomial of {d}")
    return quot


def kauffman_x(d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> LaurentPolynomial:
    if d.is_empty():
        raise ValueError("X(L) needs at least one component")
    geom = CubeGeometry(d, max_crossings)
    loop = LaurentPolynomial({2: -1, -2: -1}, "a")
    total = LaurentPolynomial({}, "a")
    n = d.n
    for s in range(geom.num_states):
        beta = bin(s).count("1")
        total = total + LaurentPolynomial.monomial(n - 2 * beta, 1, "a") * loop ** (geom.gamma(s) - 1)
    w = d.writhe
    return LaurentPolynomial.monomial(-3 * w, (-1) ** (3 * w), "a") * total


def x_to_jones(x: LaurentPolynomial) -> LaurentPolynomial:
    """Substitute ``a^2 = -q^-1`` into ``X(L)``; the result is ``J``."""
    return x.substitute_square(LaurentPolynomial({-1: -1}, "q"))


@dataclass(frozen=True)
class JonesResult:
    bracket: LaurentPolynomial
    jones_hat: LaurentPolynomial
    kauffman_x: LaurentPolynomial | None
    writhe: int
    n_plus: int
    n_minus: int

    def to_json(self) -> dict:
        return {
            "bracket": str(self.bracket),
            "jonesHat": str(self.jones_hat),
            "kauffmanX": None if self.kauffman_x is None else str(self.kauffman_x),
            "writhe": self.writhe,
            "nPlus": self.n_plus,
            "nMinus": self.n_minus,
        }


def jones_result(d: Diagram, max_crossings: int = DEFAULT_MAX_CROSSINGS) -> JonesResult:
    br = kauffman_bracket_q(d, max_crossings)
    x = None if d.is_empty() else kauffman_x(d, max_crossings)
    return JonesResult(br, normalization(d) * br, x, d.writhe, d.n_plus, d.n_minus)
