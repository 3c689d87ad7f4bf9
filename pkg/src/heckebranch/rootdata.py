"""Root data for the irreducible Cartan types at desk-scale rank.

Conventions, fixed once here and relied on everywhere else:

* A coweight is a tuple of integers in fundamental-coweight coordinates,
  so ``nu[i]`` equals the pairing of the (i+1)-th simple root with ``nu``.
  Rational vectors (piecewise-linear path vertices, half-sums) use the
  same coordinates with ``Fraction`` entries.
* A root is a tuple of integers in simple-root coordinates.  The pairing
  of a root with a coweight is the plain dot product of the two tuples.
* The coroot of the j-th simple root has fundamental-coweight coordinates
  equal to the j-th column of the Cartan matrix ``C[i][j] = <alpha_i, alpha_j^vee>``.
* Simple-root indices in the public API are 1-based (Bourbaki numbering).

Supported type/rank pairs: A1..A5, B2..B4, C2..C4, D4, F4, G2.  Everything
is exact: integers and ``fractions.Fraction``, no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Optional, Sequence, Union

from .errors import ConfigurationError, DomainError

Coweight = tuple[int, ...]
RatVec = tuple[Fraction, ...]
Root = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

_SUPPORTED_RANKS = {"A": range(1, 6), "B": range(2, 5), "C": range(2, 5),
                    "D": range(4, 5), "F": range(4, 5), "G": range(2, 3)}


def vec_add(x: Sequence, y: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def vec_sub(x: Sequence, y: Sequence) -> tuple:
    return tuple(a - b for a, b in zip(x, y))


def vec_scale(c, x: Sequence) -> tuple:
    return tuple(c * a for a in x)


def vec_neg(x: Sequence) -> tuple:
    return tuple(-a for a in x)


def mat_apply(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(row[k] * v[k] for k in range(len(v))) for row in m)


def mat_mul(x: Sequence[Sequence], y: Sequence[Sequence]) -> Matrix:
    n = len(x)
    return tuple(tuple(sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n))
                 for i in range(n))


def _identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _invert(rows: Sequence[Sequence[int]]) -> tuple[RatVec, ...]:
    """Exact inverse of a square integer matrix via Gaussian elimination."""
    n = len(rows)
    aug = [[Fraction(rows[i][j]) for j in range(n)]
           + [Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise DomainError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def cartan_matrix(letter: str, rank: int) -> Matrix:
    """Cartan matrix with entries C[i][j] = <alpha_i, alpha_j^vee>."""
    c = [[2 if i == j else 0 for j in range(rank)] for i in range(rank)]

    def edge(i: int, j: int) -> None:
        c[i][j] = c[j][i] = -1

    if letter == "A":
        for i in range(rank - 1):
            edge(i, i + 1)
    elif letter == "B":
        # short last simple root
        for i in range(rank - 2):
            edge(i, i + 1)
        c[rank - 2][rank - 1] = -2
        c[rank - 1][rank - 2] = -1
    elif letter == "C":
        # long last simple root
        for i in range(rank - 2):
            edge(i, i + 1)
        c[rank - 2][rank - 1] = -1
        c[rank - 1][rank - 2] = -2
    elif letter == "D":
        for i in range(rank - 2):
            edge(i, i + 1)
        edge(rank - 3, rank - 1)
    elif letter == "F":
        c = [[2, -1, 0, 0], [-1, 2, -2, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
    elif letter == "G":
        c = [[2, -1], [-3, 2]]
    else:
        raise ConfigurationError(f"unknown type letter {letter!r}")
    return tuple(tuple(row) for row in c)


@dataclass(frozen=True, eq=False)
class SubsystemView:
    """A root subsystem (the full system, or the span of a subset of simple roots)
    together with its Weyl group, acting on the ambient coweight coordinates.

    ``indices`` are the 1-based simple-root indices generating the subsystem.
    ``elements``/``root_elements`` are parallel lists of matrices: the former act
    on coweight coordinates, the latter on simple-root coordinates, and
    ``lengths[k]`` counts the subsystem positive roots inverted by element ``k``.
    """

    key: tuple
    indices: tuple[int, ...]
    ambient_rank: int
    positive_roots: tuple[Root, ...]
    positive_coroots: tuple[Coweight, ...]
    reflections: dict
    elements: tuple[Matrix, ...]
    root_elements: tuple[Matrix, ...]
    lengths: tuple[int, ...]
    rho_hat: RatVec            # half-sum of the subsystem's positive coroots
    two_rho: Root              # sum of the subsystem's positive roots
    form: tuple[tuple[int, ...], ...]
    _levi_cartan_inv: Optional[tuple[RatVec, ...]]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_dominant(self, x: Sequence) -> bool:
        return all(x[i - 1] >= 0 for i in self.indices)

    def dominate(self, x: Sequence) -> tuple:
        """The unique subsystem-dominant point of the orbit of x."""
        x = tuple(x)
        while True:
            for i in self.indices:
                if x[i - 1] < 0:
                    x = mat_apply(self.reflections[i], x)
                    break
            else:
                return x

    def orbit(self, x: Sequence) -> frozenset:
        x = tuple(x)
        seen = {x}
        frontier = [x]
        while frontier:
            nxt = []
            for y in frontier:
                for i in self.indices:
                    z = mat_apply(self.reflections[i], y)
                    if z not in seen:
                        seen.add(z)
                        nxt.append(z)
            frontier = nxt
        return frozenset(seen)

    def bilinear(self, x: Sequence, y: Sequence):
        """Weyl-invariant form on coweight coordinates (sum over positive roots
        of the ambient system of products of pairings)."""
        n = self.ambient_rank
        return sum(self.form[i][j] * x[i] * y[j]
                   for i in range(n) for j in range(n) if self.form[i][j])

    def coroot_coefficients(self, x: Sequence) -> Optional[RatVec]:
        """Coefficients of x over the subsystem's simple coroots, or None when
        x is outside their span.  Ordered by ``indices``."""
        if not self.indices:
            return None if any(v != 0 for v in x) else ()
        inv = self._levi_cartan_inv
        sol = tuple(sum(inv[a][b] * Fraction(x[self.indices[b] - 1])
                        for b in range(len(self.indices)))
                    for a in range(len(self.indices)))
        # consistency on the coordinates not solved for
        datum_cols = self._coroot_columns()
        recon = [Fraction(0)] * self.ambient_rank
        for c, col in zip(sol, datum_cols):
            for k in range(self.ambient_rank):
                recon[k] += c * col[k]
        if any(recon[k] != x[k] for k in range(self.ambient_rank)):
            return None
        return sol

    def _coroot_columns(self) -> tuple[Coweight, ...]:
        # ambient coordinates of the subsystem's simple coroots
        cols = []
        for i in self.indices:
            for r, c in zip(self.positive_roots, self.positive_coroots):
                if sum(abs(v) for v in r) == 1 and r[i - 1] == 1:
                    cols.append(c)
                    break
        return tuple(cols)


@dataclass(frozen=True, eq=False)
class RootDatum:
    """An irreducible root datum with the full coweight lattice as cocharacters.

    Fields are all derived from the Cartan matrix at construction time and
    validated by the test suite against classical tables (root counts,
    Weyl group orders, highest-root coefficients).
    """

    cartan_type: str
    letter: str
    rank: int
    cartan_matrix: Matrix
    positive_roots: tuple[Root, ...]
    positive_coroots: tuple[Coweight, ...]
    highest_root: Root
    rho: RatVec                      # half-sum of positive roots, simple-root coords
    rho_check: RatVec                # half-sum of positive coroots, coweight coords
    fundamental_weights: tuple[RatVec, ...]   # rows: simple-root coords of each
    form: tuple[tuple[int, ...], ...]
    w0: Matrix                       # longest element, acting on coweight coords
    full: SubsystemView

    def simple_reflection(self, i: int) -> Matrix:
        return self.full.reflections[i]


def _build_view(key: tuple, ambient_rank: int, indices: tuple[int, ...],
                positive: list[tuple[Root, Coweight]], refl_cw: dict, refl_rt: dict,
                form) -> SubsystemView:
    sub_pos = [(r, c) for (r, c) in positive
               if all(r[i] == 0 for i in range(ambient_rank) if (i + 1) not in indices)]
    ident = _identity(ambient_rank)
    elements = {ident: ident}
    frontier = [(ident, ident)]
    while frontier:
        nxt = []
        for (a, r) in frontier:
            for i in indices:
                a2 = mat_mul(a, refl_cw[i])
                if a2 not in elements:
                    r2 = mat_mul(r, refl_rt[i])
                    elements[a2] = r2
                    nxt.append((a2, r2))
        frontier = nxt
    elems = sorted(elements.items())
    lengths = []
    for (_, r) in elems:
        inv = sum(1 for (root, _) in sub_pos
                  if any(v < 0 for v in mat_apply(r, root)))
        lengths.append(inv)
    rho_hat = tuple(sum(Fraction(c[i]) for (_, c) in sub_pos) / 2
                    for i in range(ambient_rank))
    two_rho = tuple(sum(r[i] for (r, _) in sub_pos) for i in range(ambient_rank))
    levi_inv = None
    if indices:
        # submatrix of the Cartan matrix on the chosen indices
        cols = {}
        for (r, c) in sub_pos:
            if sum(abs(v) for v in r) == 1:
                j = r.index(1) + 1
                cols[j] = c
        cm = [[cols[j][i - 1] for j in indices] for i in indices]
        levi_inv = _invert(cm)
    return SubsystemView(
        key=key, indices=indices, ambient_rank=ambient_rank,
        positive_roots=tuple(r for (r, _) in sub_pos),
        positive_coroots=tuple(c for (_, c) in sub_pos),
        reflections=refl_cw,
        elements=tuple(a for (a, _) in elems),
        root_elements=tuple(r for (_, r) in elems),
        lengths=tuple(lengths),
        rho_hat=rho_hat, two_rho=two_rho, form=form,
        _levi_cartan_inv=levi_inv,
    )


@lru_cache(maxsize=None)
def _build(letter: str, rank: int) -> RootDatum:
    if letter not in _SUPPORTED_RANKS or rank not in _SUPPORTED_RANKS[letter]:
        raise ConfigurationError(
            f"unsupported type {letter}{rank}; supported: A1-A5, B2-B4, C2-C4, D4, F4, G2")
    cm = cartan_matrix(letter, rank)
    refl_cw = {}
    refl_rt = {}
    for j in range(rank):
        m = [[1 if i == k else 0 for k in range(rank)] for i in range(rank)]
        for i in range(rank):
            m[i][j] -= cm[i][j]
        refl_cw[j + 1] = tuple(tuple(row) for row in m)
        mr = [[1 if i == k else 0 for k in range(rank)] for i in range(rank)]
        for k in range(rank):
            mr[j][k] -= cm[k][j]
        refl_rt[j + 1] = tuple(tuple(row) for row in mr)

    pairs = set()
    frontier = []
    for i in range(rank):
        root = tuple(1 if k == i else 0 for k in range(rank))
        coroot = tuple(cm[k][i] for k in range(rank))
        pairs.add((root, coroot))
        frontier.append((root, coroot))
    while frontier:
        nxt = []
        for (root, coroot) in frontier:
            for j in range(1, rank + 1):
                p = (mat_apply(refl_rt[j], root), mat_apply(refl_cw[j], coroot))
                if p not in pairs:
                    pairs.add(p)
                    nxt.append(p)
        frontier = nxt
    positive = sorted((p for p in pairs if all(v >= 0 for v in p[0])),
                      key=lambda p: (sum(p[0]), p[0]))
    n_pos = len(positive)
    if 2 * n_pos != len(pairs):
        raise AssertionError("root enumeration lost the positive/negative split")

    form = tuple(tuple(sum(r[i] * r[j] for (r, _) in positive) for j in range(rank))
                 for i in range(rank))
    view = _build_view((f"{letter}{rank}", tuple(range(1, rank + 1))), rank,
                       tuple(range(1, rank + 1)), positive, refl_cw, refl_rt, form)
    w0 = view.elements[view.lengths.index(n_pos)]
    rho = tuple(sum(Fraction(r[i]) for (r, _) in positive) / 2 for i in range(rank))
    rho_check = tuple(sum(Fraction(c[i]) for (_, c) in positive) / 2 for i in range(rank))
    fw = _invert(cm)  # row i = simple-root coordinates of the i-th fundamental weight
    return RootDatum(
        cartan_type=f"{letter}{rank}", letter=letter, rank=rank, cartan_matrix=cm,
        positive_roots=tuple(r for (r, _) in positive),
        positive_coroots=tuple(c for (_, c) in positive),
        highest_root=positive[-1][0],
        rho=rho, rho_check=rho_check, fundamental_weights=fw, form=form,
        w0=w0, full=view,
    )


def root_datum(type_str: str) -> RootDatum:
    """Parse a type string like ``"A2"`` or ``"G2"`` and build its root datum."""
    s = type_str.strip().upper()
    if len(s) < 2 or not s[0].isalpha() or not s[1:].isdigit():
        raise ConfigurationError(f"malformed Cartan type {type_str!r}")
    return _build(s[0], int(s[1:]))


_view_cache: dict = {}


def levi_view(datum: RootDatum, indices: Iterable[int]) -> SubsystemView:
    idx = tuple(sorted(set(int(i) for i in indices)))
    if any(i < 1 or i > datum.rank for i in idx):
        raise ConfigurationError(f"Levi indices {idx} out of range 1..{datum.rank}")
    if idx == tuple(range(1, datum.rank + 1)):
        return datum.full
    key = (datum.cartan_type, idx)
    if key not in _view_cache:
        positive = list(zip(datum.positive_roots, datum.positive_coroots))
        refl_rt = {i + 1: _root_reflection(datum.cartan_matrix, i)
                   for i in range(datum.rank)}
        _view_cache[key] = _build_view(key, datum.rank, idx, positive,
                                       datum.full.reflections, refl_rt,
                                       datum.form)
    return _view_cache[key]


def _root_reflection(cm: Matrix, j: int) -> Matrix:
    rank = len(cm)
    mr = [[1 if i == k else 0 for k in range(rank)] for i in range(rank)]
    for k in range(rank):
        mr[j][k] -= cm[k][j]
    return tuple(tuple(row) for row in mr)


def pairing(root: Sequence, coweight: Sequence):
    """<root, coweight>: dot product in the fixed coordinates."""
    return sum(a * b for a, b in zip(root, coweight))


def rho_height(datum: RootDatum, coweight: Sequence) -> Fraction:
    """<rho, nu> with rho the half-sum of positive roots.  A half-integer in
    general; integral on the coroot lattice."""
    return sum(r * Fraction(v) for r, v in zip(datum.rho, coweight))


def k_phi(datum: RootDatum) -> int:
    """lcm of the highest root's coefficients over the simple roots."""
    return lcm(*datum.highest_root)


def is_dominant(coweight: Sequence) -> bool:
    return all(v >= 0 for v in coweight)


def dominate(datum: RootDatum, x: Sequence) -> tuple:
    return datum.full.dominate(x)


def dominate_with_sign(datum: RootDatum, x: Sequence) -> tuple[tuple, int]:
    """Dominant representative and the determinant sign of the minimal-length
    Weyl element carrying x there.  Sign is only meaningful for regular x."""
    x = tuple(x)
    sign = 1
    while True:
        for i in range(datum.rank):
            if x[i] < 0:
                x = mat_apply(datum.full.reflections[i + 1], x)
                sign = -sign
                break
        else:
            return x, sign


def weyl_orbit(datum: RootDatum, x: Sequence) -> frozenset:
    return datum.full.orbit(x)


def dual_star(datum: RootDatum, x: Sequence) -> tuple:
    """x* = -w0(x); an involution permuting dominant coweights."""
    return vec_neg(mat_apply(datum.w0, x))


def coroot_coefficients(datum: RootDatum, x: Sequence) -> RatVec:
    """Coefficients of x over the simple coroots (exact solve via the Cartan
    matrix; x may be rational)."""
    inv = datum.fundamental_weights
    # <omega_i, x> reads the i-th coroot coefficient
    return tuple(sum(inv[i][j] * Fraction(x[j]) for j in range(datum.rank))
                 for i in range(datum.rank))


def leq_dominance(datum: RootDatum, lower: Sequence, upper: Sequence) -> bool:
    """Dominance order on dominant coweights: upper - lower a nonnegative
    integer combination of simple coroots."""
    if not (is_dominant(lower) and is_dominant(upper)):
        raise DomainError("dominance order compares dominant coweights")
    cc = coroot_coefficients(datum, vec_sub(upper, lower))
    return all(c >= 0 and c.denominator == 1 for c in cc)


def in_coroot_lattice(datum: RootDatum, x: Sequence) -> bool:
    cc = coroot_coefficients(datum, x)
    return all(c.denominator == 1 for c in cc)


def in_hull(datum: RootDatum, x: Sequence, mu: Sequence) -> bool:
    """Membership of x (rational allowed) in the convex hull of the Weyl orbit
    of the dominant coweight mu."""
    cc = coroot_coefficients(datum, vec_sub(mu, datum.full.dominate(x)))
    return all(c >= 0 for c in cc)


def weyl_dim(view: SubsystemView, mu: Sequence) -> int:
    """Dimension of the irreducible of highest weight mu for the dual group of
    the subsystem (Weyl's formula over the subsystem's positive roots, with the
    half-sum of positive coroots as the shift)."""
    if not view.is_dominant(mu):
        raise DomainError(f"{tuple(mu)} is not dominant for {view.key}")
    shifted = vec_add(tuple(Fraction(v) for v in mu), view.rho_hat)
    num = Fraction(1)
    den = Fraction(1)
    for a in view.positive_roots:
        num *= pairing(a, shifted)
        den *= pairing(a, view.rho_hat)
    d = num / den
    if d.denominator != 1:
        raise AssertionError("Weyl dimension came out non-integral")
    return int(d)


def parse_coweight(text: str, rank: int) -> Coweight:
    try:
        parts = tuple(int(p) for p in text.split(","))
    except ValueError as e:
        raise ConfigurationError(f"bad coweight {text!r}: {e}") from None
    if len(parts) != rank:
        raise ConfigurationError(f"coweight {text!r} has {len(parts)} coordinates, expected {rank}")
    return parts
