"""Scalar formulas: the extremal size bound, m*, g(x, y), the delta-condition,
case classification, and the two factorial lower bounds.

The matching ratio is always carried as the integer pair ``(n, s)`` with
``s = nu * n``; every branch test is integer or :class:`~fractions.Fraction`
arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Optional

from .counting import BigCount
from .gallai_edmonds import Decomposition, closure_size, decompose, stats
from .graph import Graph
from .matching import matching_number

Rational = Fraction


def sparse_branch(n: int, s: int) -> bool:
    """True when ``s/n <= 2/5 - 3/(5n)``, i.e. ``5s <= 2n - 3``."""
    return 5 * s <= 2 * n - 3


def eg_max_size(n: int, s: int) -> int:
    """Largest size of an ``n``-vertex graph with matching number ``s``."""
    if s < 0 or 2 * s > n:
        raise ValueError(f"need 0 <= 2s <= n, got n={n}, s={s}")
    if sparse_branch(n, s):
        return s * (n - s) + comb(s, 2)
    return comb(2 * s + 1, 2)


def eg_bound_attained(n: int, s: int) -> bool:
    """Whether some graph attains :func:`eg_max_size`.

    Fails only at ``s = n/2`` where ``K_{2s+1}`` does not fit.
    """
    return sparse_branch(n, s) or 2 * s + 1 <= n


def falling_factorial(n: int, k: int) -> BigCount:
    if k < 0 or k > n:
        raise ValueError(f"falling factorial needs 0 <= k <= n, got n={n}, k={k}")
    out = 1
    for i in range(n, n - k, -1):
        out *= i
    return out


def extremal_count(kind: str, n: int, s: int) -> BigCount:
    """Number of maximum matchings of the extremal graph of family i or ii."""
    if kind == "i":
        if not 0 <= s <= n - s:
            raise ValueError(f"family i needs 0 <= s <= n - s, got n={n}, s={s}")
        return falling_factorial(n - s, s)
    if kind == "ii":
        if s < 0 or 2 * s + 1 > n:
            raise ValueError(f"family ii needs 2s+1 <= n, got n={n}, s={s}")
        return factorial(2 * s + 1) // (factorial(s) * 2 ** s)
    raise ValueError(f"unknown extremal family {kind!r}")


def m_star(n: int, d: int, k: int, a: int) -> int:
    if not (0 <= k <= d <= n - a) or a < 0:
        raise ValueError(f"need 0 <= k <= d <= n - a, got n={n}, d={d}, k={k}, a={a}")
    return comb(d - k + 1, 2) + d * a + comb(n - d, 2)


def g_value(x: Rational, y: Rational, nu: Rational, dense_branch: bool) -> Rational:
    x, y, nu = Fraction(x), Fraction(y), Fraction(nu)
    if not (0 <= x <= nu and 0 <= y <= 2 * x):
        raise ValueError(f"need 0 <= x <= nu and 0 <= y <= 2x, got x={x}, y={y}, nu={nu}")
    quad = y * (2 * x - y)
    if dense_branch:
        return (nu - x) * (Fraction(5, 2) * nu + Fraction(3, 2) * x - 1) + quad
    return x * (1 - nu - Fraction(3, 2) * x) + quad


def verify_lemma1_identity(n: int, s: int, a: int, d: int) -> bool:
    """Check both branch identities for the quadratic part of m(n,nu) - m*."""
    k = n - 2 * s + a
    if not (n > 0 and 0 <= a <= s and k <= d <= n - a and k >= 0):
        raise ValueError(f"invalid tuple n={n}, s={s}, a={a}, d={d}")
    nu = Fraction(s, n)
    x = Fraction(s - a, n)
    y = Fraction(d - k, n)
    star_quad = Fraction((d - k) ** 2, 2) + d * a + Fraction((n - d) ** 2, 2)
    quad = y * (2 * x - y)
    first = s * (n - s) + Fraction(s * s, 2) - star_quad
    second = 2 * s * s - star_quad
    g1 = x * (1 - nu - Fraction(3, 2) * x) + quad
    g2 = (nu - x) * (Fraction(5, 2) * nu + Fraction(3, 2) * x - 1) + quad
    return first == g1 * n * n and second == g2 * n * n


def condition_e3_holds(x: Rational, y: Rational, nu: Rational, delta: Rational) -> bool:
    x, y, nu, delta = (Fraction(t) for t in (x, y, nu, delta))
    if delta <= 0:
        raise ValueError("delta must be positive")
    two_fifths = Fraction(2, 5)
    left = x >= delta or nu >= two_fifths + 2 * delta / 5
    right = (
        x <= nu - delta
        or nu <= two_fifths - 2 * delta / 5
        or delta <= y <= 2 * nu - 3 * delta
    )
    return left and right


def classify_case(x: Rational, y: Rational, nu: Rational, delta: Rational) -> str:
    """``"none"`` when the delta-condition holds, else the degenerate case."""
    x, y, nu, delta = (Fraction(t) for t in (x, y, nu, delta))
    if condition_e3_holds(x, y, nu, delta):
        return "none"
    two_fifths = Fraction(2, 5)
    if x < delta and nu < two_fifths + 2 * delta / 5:
        return "case1"
    near_top = x > nu - delta and nu > two_fifths - 2 * delta / 5
    if near_top and y < delta:
        return "case2"
    if near_top and y > 2 * nu - 3 * delta:
        return "case3"
    raise AssertionError(f"delta-condition fails but no case applies: x={x}, y={y}, nu={nu}, delta={delta}")


@dataclass(frozen=True)
class Theorem1Bound:
    applicable: bool
    condition: str
    tolerance: int
    bound: BigCount


def theorem1_bound(n: int, s: int) -> Theorem1Bound:
    """Lower bound ceil(n/10) falling ceil(s/10) and its applicability.

    Applicable iff (nu/50)^2 n >= 1, i.e. s^2 >= 2500 n; the admitted
    deficiency is floor((nu/50)^2 n^2) = floor(s^2 / 2500).
    """
    if not 1 <= 2 * s <= n:
        raise ValueError(f"need 1 <= 2s <= n, got n={n}, s={s}")
    applicable = s * s >= 2500 * n
    return Theorem1Bound(
        applicable=applicable,
        condition=f"(nu/50)^2 n = {Fraction(s * s, 2500 * n)} {'>=' if applicable else '<'} 1",
        tolerance=s * s // 2500,
        bound=falling_factorial(-(-n // 10), -(-s // 10)),
    )


@dataclass(frozen=True)
class Theorem2Params:
    epsilon: Fraction
    nu: Fraction
    h_nu: Fraction
    h_delta: Fraction
    gamma: Fraction


def h_nu(epsilon: Rational) -> Fraction:
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    return min(Fraction(1, 5), eps / (2 * (1 + eps / 2 * (1 + eps / 2))))


def _slack(eps: Fraction) -> Fraction:
    # Largest admissible sqrt(gamma): (1 - sqrt(gamma) - eps/2)(1 - eps/2) >= 1 - eps.
    return 1 - eps / 2 - (1 - eps) / (1 - eps / 2)


def _gamma(eps: Fraction, nu: Fraction, delta: Fraction) -> Fraction:
    return delta / ((1 - eps / 2) * nu * (1 - (1 + eps / 2) * nu))


def theorem2_constraints_hold(eps: Fraction, nu: Fraction, delta: Fraction) -> bool:
    """Exact check of every restriction the small-nu argument puts on nu, delta."""
    eps, nu, delta = Fraction(eps), Fraction(nu), Fraction(delta)
    if not (0 < nu <= Fraction(1, 5) and 0 < delta < 1):
        return False
    if nu > eps / (2 * (1 + eps / 2 * (1 + eps / 2))) or delta > eps * nu / 8:
        return False
    if 1 - (1 + eps / 2) * nu < 1 - eps / 2:
        return False
    t = _slack(eps)
    return t >= 0 and _gamma(eps, nu, delta) <= t * t


def h_delta(epsilon: Rational, nu: Rational) -> Fraction:
    eps, nu = Fraction(epsilon), Fraction(nu)
    t = _slack(eps)
    return min(eps * nu / 8, t * t * (1 - eps / 2) * nu * (1 - (1 + eps / 2) * nu))


def theorem2_thresholds(epsilon: Rational, nu: Rational) -> Theorem2Params:
    eps, nu = Fraction(epsilon), Fraction(nu)
    hn = h_nu(eps)
    if not 0 < nu < hn:
        raise ValueError(f"nu={nu} must lie in (0, h_nu(eps)={hn})")
    hd = h_delta(eps, nu)
    if not theorem2_constraints_hold(eps, nu, hd):
        raise AssertionError(f"closed-form h_delta={hd} violates the constraints")
    return Theorem2Params(eps, nu, hn, hd, _gamma(eps, nu, hd))


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def theorem2_bound(n: int, s: int, epsilon: Rational) -> BigCount:
    eps = Fraction(epsilon)
    if not 0 < eps < 1:
        raise ValueError("epsilon must lie in (0, 1)")
    return falling_factorial(_ceil((1 - eps) * n), _ceil((1 - eps) * s))


@dataclass(frozen=True)
class BoundReport:
    n: int
    s: int
    m: int
    m_eg: int
    m_star: int
    m_closure: int
    x: Fraction
    y: Fraction
    delta: Optional[Fraction]
    g: Fraction
    case: Optional[str]
    bound_attained: bool
    theorem1_applicable: bool
    theorem1_tolerance: int
    theorem1_bound: BigCount

    @property
    def deficiency(self) -> int:
        return self.m_eg - self.m

    @property
    def dense_branch(self) -> bool:
        return not sparse_branch(self.n, self.s)

    def chain_ok(self) -> bool:
        return self.m <= self.m_closure <= self.m_star <= self.m_eg

    def lemma1_ok(self) -> bool:
        return self.m_eg - self.m_star >= self.g * self.n * self.n - self.n

    def to_json(self) -> dict:
        def rat(q: Optional[Fraction]):
            return None if q is None else {"num": q.numerator, "den": q.denominator}

        return {
            "n": self.n,
            "s": self.s,
            "m": self.m,
            "m_eg": self.m_eg,
            "m_star": self.m_star,
            "m_closure": self.m_closure,
            "deficiency": self.deficiency,
            "x": rat(self.x),
            "y": rat(self.y),
            "delta": rat(self.delta),
            "g": rat(self.g),
            "dense_branch": self.dense_branch,
            "case": self.case,
            "bound_attained": self.bound_attained,
            "theorem1_applicable": self.theorem1_applicable,
            "theorem1_tolerance": self.theorem1_tolerance,
            "theorem1_bound": str(self.theorem1_bound),
        }


def bound_report(
    g: Graph,
    dec: Decomposition | None = None,
    delta: Rational | None = None,
) -> BoundReport:
    """All scalar quantities of the near-extremal analysis for one graph.

    ``delta`` defaults to ``nu/25``, the value used for the first theorem;
    for a graph with no edges ``nu = 0`` and no case is assigned.
    """
    if dec is None:
        dec = decompose(g)
    s = matching_number(g)
    n = g.n
    st = stats(g, dec, s)
    nu = Fraction(s, n) if n else Fraction(0)
    dense = not sparse_branch(n, s)
    gv = g_value(st.x, st.y, nu, dense)
    if delta is None:
        delta = nu / 25 if s > 0 else None
    else:
        delta = Fraction(delta)
    case = classify_case(st.x, st.y, nu, delta) if delta else None
    if s > 0:
        t1 = theorem1_bound(n, s)
        t1_fields = (t1.applicable, t1.tolerance, t1.bound)
    else:
        t1_fields = (False, 0, 1)
    return BoundReport(
        n=n,
        s=s,
        m=g.m,
        m_eg=eg_max_size(n, s),
        m_star=m_star(n, dec.d, dec.k, dec.a),
        m_closure=closure_size(n, dec),
        x=st.x,
        y=st.y,
        delta=delta,
        g=gv,
        case=case,
        bound_attained=eg_bound_attained(n, s),
        theorem1_applicable=t1_fields[0],
        theorem1_tolerance=t1_fields[1],
        theorem1_bound=t1_fields[2],
    )
