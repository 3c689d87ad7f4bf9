"""Exact spherical Hecke algebra computations via symmetric functions.

Elements of the Hecke algebra are represented through their symmetric-function
images: finite maps from dominant coweights to Laurent polynomials in
v = q^(1/2), each key denoting the Weyl-orbit sum of the formal exponential at
that coweight.  The basis element attached to a dominant coweight is the
Hall-Littlewood orbit polynomial times an explicit v-power; products and
constant terms are extracted by triangular peeling against that basis, which
is exact in Z[v, v^-1].
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from .errors import DomainError
from .parabolic import geq_parabolic
from .rootdata import (
    Coweight,
    RootDatum,
    SubsystemView,
    dual_star,
    in_hull,
    in_coroot_lattice,
    is_dominant,
    mat_apply,
    pairing,
    rho_height,
    vec_add,
    vec_neg,
    vec_sub,
)


class LaurentPoly:
    """Integer Laurent polynomial in v, with t = q^(-1) = v^(-2)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs: Optional[dict] = None):
        self._c = {int(e): int(c) for e, c in (coeffs or {}).items() if c != 0}

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def v_power(cls, k: int) -> "LaurentPoly":
        return cls({k: 1})

    @classmethod
    def q_power(cls, k: int) -> "LaurentPoly":
        return cls({2 * k: 1})

    def items(self):
        return sorted(self._c.items())

    def coeff(self, e: int) -> int:
        return self._c.get(e, 0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self):
        return hash(tuple(sorted(self._c.items())))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        out = dict(self._c)
        for e, c in other._c.items():
            n = out.get(e, 0) + c
            if n:
                out[e] = n
            else:
                out.pop(e, None)
        r = LaurentPoly.zero()
        r._c = out
        return r

    def __neg__(self) -> "LaurentPoly":
        r = LaurentPoly.zero()
        r._c = {e: -c for e, c in self._c.items()}
        return r

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        out: dict[int, int] = {}
        for e1, c1 in self._c.items():
            for e2, c2 in other._c.items():
                e = e1 + e2
                n = out.get(e, 0) + c1 * c2
                if n:
                    out[e] = n
                else:
                    out.pop(e, None)
        r = LaurentPoly.zero()
        r._c = out
        return r

    def scale(self, k: int) -> "LaurentPoly":
        return LaurentPoly({e: k * c for e, c in self._c.items()})

    def shift(self, d: int) -> "LaurentPoly":
        """Multiply by v**d."""
        r = LaurentPoly.zero()
        r._c = {e + d: c for e, c in self._c.items()}
        return r

    def max_exponent(self) -> int:
        if not self._c:
            raise DomainError("zero polynomial has no degree")
        return max(self._c)

    def min_exponent(self) -> int:
        if not self._c:
            raise DomainError("zero polynomial has no valuation")
        return min(self._c)

    def q_degree(self) -> Optional[Fraction]:
        """Degree as a polynomial in q = v**2, None for the zero polynomial."""
        if not self._c:
            return None
        return Fraction(max(self._c), 2)

    def leading(self) -> int:
        """Coefficient of the highest v-power (0 for the zero polynomial)."""
        if not self._c:
            return 0
        return self._c[max(self._c)]

    def has_even_exponents(self) -> bool:
        return all(e % 2 == 0 for e in self._c)

    def eval_q(self, q) -> Fraction:
        """Value at a given q; requires even v-exponents."""
        if not self.has_even_exponents():
            raise DomainError("odd v-exponent present, not a function of q")
        return sum((Fraction(c) * Fraction(q) ** (e // 2)
                    for e, c in self._c.items()), Fraction(0))

    def to_json(self) -> dict:
        return {"exponents_of_v": {str(e): c for e, c in sorted(self._c.items())}}

    @classmethod
    def from_json(cls, data: dict) -> "LaurentPoly":
        return cls({int(e): int(c) for e, c in data["exponents_of_v"].items()})

    def __repr__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for e, c in sorted(self._c.items(), reverse=True):
            if e == 0:
                parts.append(f"{c}")
            else:
                parts.append(f"{c}*v^{e}")
        return " + ".join(parts)


_ONE = LaurentPoly.one()
_T = LaurentPoly({-2: 1})

InvariantElement = dict  # dominant Coweight -> LaurentPoly

_hl_cache: dict = {}
_satake_cache: dict = {}
_product_cache: dict = {}

_PEEL_GUARD = 200_000


def _gadd(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, p in b.items():
        n = out.get(k, LaurentPoly.zero()) + p
        if n:
            out[k] = n
        else:
            out.pop(k, None)
    return out


def _gmul(a: dict, b: dict) -> dict:
    out: dict = {}
    for k1, p1 in a.items():
        for k2, p2 in b.items():
            k = vec_add(k1, k2)
            n = out.get(k, LaurentPoly.zero()) + p1 * p2
            if n:
                out[k] = n
            else:
                out.pop(k, None)
    return out


def _gscale(p: LaurentPoly, a: dict) -> dict:
    return {k: p * v for k, v in a.items() if p * v}


def _divide_binomial(datum: RootDatum, f: dict, coroot: Coweight) -> dict:
    """Exact division of a group-algebra element by (1 - x^(-coroot)),
    peeling from the top of the height order."""
    out: dict = {}
    work = dict(f)
    guard = 0
    while work:
        guard += 1
        if guard > _PEEL_GUARD:
            raise AssertionError("binomial division did not terminate")
        k = max(work, key=lambda kk: (rho_height(datum, kk), kk))
        c = work.pop(k)
        prev = out.get(k, LaurentPoly.zero()) + c
        if prev:
            out[k] = prev
        else:
            out.pop(k, None)
        km = vec_sub(k, coroot)
        n = work.get(km, LaurentPoly.zero()) + c
        if n:
            work[km] = n
        else:
            work.pop(km, None)
    return out


def _poly_exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Exact Laurent division f / g; the divisor's top coefficient must be
    a unit and the division must leave no remainder."""
    if not g:
        raise DomainError("division by zero polynomial")
    if not f:
        return LaurentPoly.zero()
    gmax = g.max_exponent()
    gtop = g.coeff(gmax)
    if gtop not in (1, -1):
        raise AssertionError("divisor top coefficient is not a unit")
    floor = f.min_exponent() - g.min_exponent()
    q: dict[int, int] = {}
    rem = f
    while rem:
        d = rem.max_exponent() - gmax
        if d < floor:
            raise AssertionError("inexact polynomial division")
        ce = rem.coeff(rem.max_exponent()) * gtop
        q[d] = ce
        rem = rem - g.shift(d).scale(ce)
    return LaurentPoly(q)


def _expand_orbits(view: SubsystemView, inv: dict) -> dict:
    """Orbit-sum representation to full weight representation."""
    full: dict = {}
    for k, p in inv.items():
        for y in view.orbit(k):
            if y in full:
                raise AssertionError("orbit-sum keys overlap")
            full[y] = p
    return full


def _collect_orbits(view: SubsystemView, full: dict) -> dict:
    """Full weight representation to orbit sums keyed by view-dominant
    representatives, checking Weyl invariance."""
    out: dict = {}
    work = dict(full)
    while work:
        k = next(iter(work))
        rep = view.dominate(k)
        p = work.get(rep)
        if p is None:
            raise AssertionError("not invariant: dominant representative missing")
        for y in view.orbit(rep):
            if work.pop(y, None) != p:
                raise AssertionError("not invariant under the subsystem Weyl group")
        out[rep] = p
    return out


def stabilizer_poincare(view: SubsystemView, mu: Coweight) -> LaurentPoly:
    """Sum of t^length over the subsystem Weyl elements fixing mu."""
    coeffs: dict[int, int] = {}
    for a, l in zip(view.elements, view.lengths):
        if mat_apply(a, mu) == tuple(mu):
            coeffs[-2 * l] = coeffs.get(-2 * l, 0) + 1
    return LaurentPoly(coeffs)


def hall_littlewood(datum: RootDatum, view: SubsystemView,
                    mu: Coweight) -> InvariantElement:
    """Hall-Littlewood orbit polynomial for the subsystem: symmetrize
    x^mu prod (1 - t x^(-coroot)) / (1 - x^(-coroot)) over the subsystem Weyl
    group and divide by the stabilizer Poincare polynomial.  Exact; returns
    orbit sums keyed by subsystem-dominant coweights, monic at mu."""
    mu = tuple(mu)
    key = (view.key, mu)
    if key in _hl_cache:
        return _hl_cache[key]
    if not view.is_dominant(mu):
        raise DomainError(f"{mu} is not dominant for {view.key}")
    zero_key = tuple(0 for _ in range(datum.rank))
    num: dict = {}
    for a, r in zip(view.elements, view.root_elements):
        wmu = mat_apply(a, mu)
        term = {wmu: _ONE}
        for root, cv in zip(view.positive_roots, view.positive_coroots):
            wr = mat_apply(r, root)
            wc = mat_apply(a, cv)
            if all(vx >= 0 for vx in wr):
                factor = {zero_key: _ONE, vec_neg(wc): -_T}
            else:
                factor = {zero_key: _T, wc: -_ONE}
            term = _gmul(term, factor)
        num = _gadd(num, term)
    f = num
    for cv in view.positive_coroots:
        f = _divide_binomial(datum, f, cv)
    stab = stabilizer_poincare(view, mu)
    f = {k: _poly_exact_div(p, stab) for k, p in f.items()}
    result = _collect_orbits(view, f)
    _hl_cache[key] = result
    return result


def satake_f(datum: RootDatum, view: SubsystemView,
             mu: Coweight) -> InvariantElement:
    """Symmetric-function image of the basis element at mu: the
    Hall-Littlewood element shifted by v to the pairing of mu with the sum of
    the subsystem's positive roots."""
    mu = tuple(mu)
    key = (view.key, mu)
    if key in _satake_cache:
        return _satake_cache[key]
    shift = pairing(view.two_rho, mu)
    result = {k: p.shift(shift) for k, p in hall_littlewood(datum, view, mu).items()}
    _satake_cache[key] = result
    return result


def multiply_invariants(view: SubsystemView, a: InvariantElement,
                        b: InvariantElement) -> InvariantElement:
    return _collect_orbits(view, _gmul(_expand_orbits(view, a),
                                       _expand_orbits(view, b)))


def hecke_product(datum: RootDatum, alpha: Coweight,
                  beta: Coweight) -> dict[Coweight, LaurentPoly]:
    """Structure constants of the convolution product of the basis elements
    at alpha and beta: the expansion of their product in the triangular
    basis, keyed by dominant coweight."""
    alpha, beta = tuple(alpha), tuple(beta)
    key = (datum.cartan_type, alpha, beta)
    if key in _product_cache:
        return _product_cache[key]
    view = datum.full
    if not (is_dominant(alpha) and is_dominant(beta)):
        raise DomainError("product arguments must be dominant")
    prod = multiply_invariants(view, satake_f(datum, view, alpha),
                               satake_f(datum, view, beta))
    out: dict = {}
    guard = 0
    while prod:
        guard += 1
        if guard > _PEEL_GUARD:
            raise AssertionError("basis inversion did not terminate")
        gamma = max(prod, key=lambda k: (rho_height(datum, k), k))
        if not is_dominant(gamma):
            raise AssertionError("peak of the product expansion is not dominant")
        m = prod[gamma].shift(-pairing(view.two_rho, gamma))
        out[gamma] = m
        basis = satake_f(datum, view, gamma)
        prod = _gadd(prod, _gscale(-m, basis))
    result = dict(sorted(out.items()))
    _product_cache[key] = result
    return result


_ct_cache: dict = {}


def satake_expand(datum: RootDatum, upper: SubsystemView,
                  lower: SubsystemView, mu: Coweight) -> dict[Coweight, LaurentPoly]:
    """Expand the basis element of the upper subsystem at mu into the basis
    of the lower subsystem (lower simple roots a subset of upper's):
    the coefficient map of the constant-term homomorphism."""
    mu = tuple(mu)
    key = (upper.key, lower.key, mu)
    if key in _ct_cache:
        return _ct_cache[key]
    full = _expand_orbits(upper, satake_f(datum, upper, mu))
    em = _collect_orbits(lower, full)
    rho_hat_lower = lower.rho_hat
    out: dict = {}
    guard = 0
    while em:
        guard += 1
        if guard > _PEEL_GUARD:
            raise AssertionError("constant-term expansion did not terminate")
        lam = max(em, key=lambda k: (datum.full.bilinear(k, rho_hat_lower), k))
        c = em[lam].shift(-pairing(lower.two_rho, lam))
        out[lam] = c
        basis = satake_f(datum, lower, lam)
        em = _gadd(em, _gscale(-c, basis))
    result = {k: p for k, p in sorted(out.items()) if p}
    _ct_cache[key] = result
    return result


def constant_term(datum: RootDatum, levi: SubsystemView,
                  mu: Coweight) -> dict[Coweight, LaurentPoly]:
    """Coefficients of the constant-term homomorphism from the full group to
    the Levi, keyed by Levi-dominant coweight.  Support lies inside the orbit
    hull of mu in the coroot-lattice coset of mu."""
    mu = tuple(mu)
    if not is_dominant(mu):
        raise DomainError(f"{mu} is not dominant")
    result = satake_expand(datum, datum.full, levi, mu)
    for lam in result:
        if not (in_hull(datum, lam, mu)
                and in_coroot_lattice(datum, vec_sub(mu, lam))):
            raise AssertionError("constant-term support escaped the weight hull")
    return result


def orbit_size(datum: RootDatum, levi: SubsystemView,
               lam: Coweight) -> LaurentPoly:
    """Cardinality of the Levi integral-group orbit of the lattice point at
    lam, as a polynomial in q: q^(pairing with the Levi positive-root sum
    minus the number of Levi positive roots off the stabilizer) times the
    Poincare series of the minimal coset representatives."""
    lam = tuple(lam)
    if not levi.is_dominant(lam):
        raise DomainError(f"{lam} is not dominant for the Levi {levi.indices}")
    sh = pairing(levi.two_rho, lam)
    d = sum(1 for r in levi.positive_roots if pairing(r, lam) > 0)
    best: dict[Coweight, int] = {}
    for a, l in zip(levi.elements, levi.lengths):
        w = mat_apply(a, lam)
        if w not in best or l < best[w]:
            best[w] = l
    coeffs: dict[int, int] = {}
    for l in best.values():
        coeffs[2 * l] = coeffs.get(2 * l, 0) + 1
    return LaurentPoly(coeffs).shift(2 * (sh - d))


def product_identity_sides(datum: RootDatum, levi: SubsystemView, mu: Coweight,
                           lam: Coweight, nu: Coweight
                           ) -> tuple[LaurentPoly, LaurentPoly]:
    """The two sides of the structure-constant identity: the constant-term
    coefficient at lam times v^(pairing of lam with the roots off the Levi)
    times the Levi orbit size, against the product structure constant at nu
    for the pair (nu + lam, dual of mu)."""
    mu, lam, nu = tuple(mu), tuple(lam), tuple(nu)
    if not levi.is_dominant(lam):
        raise DomainError(f"{lam} is not dominant for the Levi")
    if not in_coroot_lattice(datum, vec_sub(mu, lam)):
        raise DomainError("mu and lam are not congruent modulo the coroot lattice")
    if not geq_parabolic(datum, levi, nu, mu):
        raise DomainError("nu does not dominate mu for this parabolic")
    alpha = vec_add(nu, lam)
    if not is_dominant(alpha):
        raise DomainError("nu + lam left the dominant cone")
    c = constant_term(datum, levi, mu).get(lam, LaurentPoly.zero())
    shift_n = pairing(datum.full.two_rho, lam) - pairing(levi.two_rho, lam)
    lhs = c.shift(shift_n) * orbit_size(datum, levi, lam)
    mustar = dual_star(datum, mu)
    rhs = hecke_product(datum, alpha, mustar).get(nu, LaurentPoly.zero())
    return lhs, rhs


def verify_product_identity(datum: RootDatum, levi: SubsystemView,
                            mu: Coweight, lam: Coweight, nu: Coweight) -> bool:
    lhs, rhs = product_identity_sides(datum, levi, mu, lam, nu)
    return lhs == rhs
