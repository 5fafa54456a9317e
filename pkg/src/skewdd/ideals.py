"""Ideals of the supported domains as canonical rank-2 integer lattices.

An integral ideal of Z[w] is stored in Hermite normal form as the pair
of Z-generators (a, b + c*w) with a, c >= 1, c | a, c | b, 0 <= b < a;
over Z an ideal is a single nonnegative generator. Fractional ideals
carry one positive integer denominator. Canonicalisation at construction
makes equality, membership and index queries O(1) afterwards.

All heavy lifting reduces to integer row echelon forms of small
matrices, with the transformation matrix kept when explicit coefficients
are needed (express_in_generators and friends).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

from .domains import Domain, FieldElem, RingElem
from .errors import (
    BoundExceeded,
    MembershipError,
    SkewError,
    UnsupportedDomain,
    ZeroIdealError,
)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with x*a + y*b = g = gcd(a, b) >= 0."""
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def echelon(rows: list[list[int]], want_transform: bool = False):
    """Integer row echelon form with positive pivots, columns left to right.

    Returns (ech, pivots, transform). ech is the full list of transformed
    rows (zero rows at the bottom), pivots the list of pivot column
    indices for the leading rows, and transform a unimodular matrix U
    with U * input = ech (None unless requested). Entries above each
    pivot are reduced into [0, pivot).
    """
    m = [list(r) for r in rows]
    k = len(m)
    ncols = len(m[0]) if k else 0
    u = [[int(i == j) for j in range(k)] for i in range(k)] if want_transform else None

    def rowop(i, j, ci, cj, di, dj):
        # (row_i, row_j) <- (ci*row_i + cj*row_j, di*row_i + dj*row_j)
        for t in range(ncols):
            a, b = m[i][t], m[j][t]
            m[i][t] = ci * a + cj * b
            m[j][t] = di * a + dj * b
        if u is not None:
            for t in range(k):
                a, b = u[i][t], u[j][t]
                u[i][t] = ci * a + cj * b
                u[j][t] = di * a + dj * b

    def swap(i, j):
        m[i], m[j] = m[j], m[i]
        if u is not None:
            u[i], u[j] = u[j], u[i]

    def negate(i):
        m[i] = [-v for v in m[i]]
        if u is not None:
            u[i] = [-v for v in u[i]]

    pivots = []
    r = 0
    for col in range(ncols):
        if r >= k:
            break
        for i in range(r + 1, k):
            if m[i][col] == 0:
                continue
            if m[r][col] == 0:
                swap(r, i)
                continue
            a, b = m[r][col], m[i][col]
            g, x, y = xgcd(a, b)
            rowop(r, i, x, y, -(b // g), a // g)
        if m[r][col] == 0:
            continue
        if m[r][col] < 0:
            negate(r)
        piv = m[r][col]
        for j in range(r):
            q = m[j][col] // piv
            if q:
                for t in range(ncols):
                    m[j][t] -= q * m[r][t]
                if u is not None:
                    for t in range(k):
                        u[j][t] -= q * u[r][t]
        pivots.append(col)
        r += 1
    return m, pivots, u


def solve_in_rowspace(target: list[int], ech, pivots) -> list[int]:
    """Integer coefficients z on the echelon rows with z * ech = target.

    Raises MembershipError(target, None) when no integer solution exists.
    """
    t = list(target)
    z = [0] * len(ech)
    for idx, col in enumerate(pivots):
        piv = ech[idx][col]
        if t[col] % piv:
            raise MembershipError(target, None, "no integral solution")
        q = t[col] // piv
        z[idx] = q
        if q:
            for j in range(len(t)):
                t[j] -= q * ech[idx][j]
    if any(t):
        raise MembershipError(target, None, "no integral solution")
    return z


class IdealLattice:
    """Integral ideal in canonical HNF; the zero ideal is (0)."""

    __slots__ = ("dom", "a", "b", "c")

    def __init__(self, dom: Domain, a: int, b: int = 0, c: int = 0):
        self.dom = dom
        if not dom.is_quad:
            if b or c:
                raise SkewError("integer-domain ideal has a single generator")
            self.a, self.b, self.c = abs(a), 0, 0
            return
        if a == 0 and b == 0 and c == 0:
            self.a = self.b = self.c = 0
            return
        if a <= 0 or c <= 0:
            raise SkewError(f"invalid HNF triple ({a}, {b}, {c})")
        b %= a
        self.a, self.b, self.c = a, b, c
        if a % c or b % c:
            raise SkewError(f"({a}, {b}, {c}) is not an ideal lattice (c divides)")
        # closure under w: w*a and w*(b+c*w) must solve in the lattice
        for g in (RingElem(dom, a, 0), RingElem(dom, b, c)):
            wg = g * dom.omega
            if not self._contains_ring(wg):
                raise SkewError(f"({a}, {b}, {c}) is not closed under w")

    @property
    def is_zero(self) -> bool:
        return self.a == 0

    @property
    def index(self) -> int:
        """Lattice index [D : ideal]; 0 for the zero ideal."""
        if self.is_zero:
            return 0
        return self.a * self.c if self.dom.is_quad else self.a

    def __repr__(self):
        if not self.dom.is_quad:
            return f"({self.a})"
        return f"hnf({self.a},{self.b},{self.c})"

    def __eq__(self, other):
        return (
            isinstance(other, IdealLattice)
            and self.dom is other.dom
            and (self.a, self.b, self.c) == (other.a, other.b, other.c)
        )

    def __hash__(self):
        return hash((id(self.dom), self.a, self.b, self.c))

    def _contains_ring(self, e: RingElem) -> bool:
        if self.is_zero:
            return not e
        if not self.dom.is_quad:
            return e.a % self.a == 0
        if e.b % self.c:
            return False
        k = e.b // self.c
        return (e.a - k * self.b) % self.a == 0

    def contains(self, e) -> bool:
        if isinstance(e, RingElem):
            return self._contains_ring(e)
        if isinstance(e, FieldElem):
            return e.den == 1 and self._contains_ring(e.num)
        raise TypeError(type(e))

    def two_generators(self) -> tuple[RingElem, RingElem]:
        """Generators (a, b + c*w); over Z the degenerate pair (m, m)."""
        if self.is_zero:
            raise ZeroIdealError("zero ideal has no generators")
        if not self.dom.is_quad:
            g = RingElem(self.dom, self.a, 0)
            return g, g
        return RingElem(self.dom, self.a, 0), RingElem(self.dom, self.b, self.c)

    def content(self) -> int:
        if not self.dom.is_quad:
            return self.a
        return gcd(self.a, gcd(self.b, self.c))

    def scale_int(self, k: int) -> "IdealLattice":
        if k <= 0:
            raise SkewError("scale by positive integers only")
        if self.is_zero:
            return self
        return IdealLattice(self.dom, self.a * k, self.b * k, self.c * k)

    def divide_int(self, k: int) -> "IdealLattice":
        if self.is_zero:
            return self
        if self.a % k or self.b % k or self.c % k:
            raise SkewError(f"content {k} does not divide the lattice")
        return IdealLattice(self.dom, self.a // k, self.b // k, self.c // k)

    def conj(self) -> "IdealLattice":
        if not self.dom.is_quad or self.is_zero:
            return self
        g1, g2 = self.two_generators()
        return from_ring_generators(self.dom, [g1, g2.conj()])

    def sigma(self, i: int = 1) -> "IdealLattice":
        if self.dom.conj_sigma and i % 2:
            return self.conj()
        return self

    def mul(self, other: "IdealLattice") -> "IdealLattice":
        if self.is_zero or other.is_zero:
            return IdealLattice(self.dom, 0)
        u1, u2 = self.two_generators()
        v1, v2 = other.two_generators()
        return from_ring_generators(self.dom, [u1 * v1, u1 * v2, u2 * v1, u2 * v2])

    def add(self, other: "IdealLattice") -> "IdealLattice":
        gens = []
        if not self.is_zero:
            gens.extend(self.two_generators())
        if not other.is_zero:
            gens.extend(other.two_generators())
        if not gens:
            return IdealLattice(self.dom, 0)
        return from_ring_generators(self.dom, gens)

    @property
    def is_unit_ideal(self) -> bool:
        return self.index == 1

    def to_frac(self) -> "FracIdeal":
        return FracIdeal(self, 1)

    def to_json(self) -> dict:
        if not self.dom.is_quad:
            return {"hnf": [self.a]}
        return {"hnf": [self.a, self.b, self.c]}


def unit_ideal(dom: Domain) -> IdealLattice:
    if not dom.is_quad:
        return IdealLattice(dom, 1)
    return IdealLattice(dom, 1, 0, 1)


def zero_ideal(dom: Domain) -> IdealLattice:
    return IdealLattice(dom, 0)


def from_ring_generators(dom: Domain, gens: list[RingElem]) -> IdealLattice:
    """HNF of the D-module spanned by ring elements."""
    gens = [g for g in gens if g]
    if not gens:
        return zero_ideal(dom)
    if not dom.is_quad:
        m = 0
        for g in gens:
            m = gcd(m, g.a)
        return IdealLattice(dom, m)
    rows = []
    for g in gens:
        wg = g * dom.omega
        rows.append([g.b, g.a])
        rows.append([wg.b, wg.a])
    ech, pivots, _ = echelon(rows)
    if pivots != [0, 1]:
        raise SkewError("generators do not span a rank-2 lattice")
    c, b = ech[0][0], ech[0][1]
    a = ech[1][1]
    return IdealLattice(dom, a, b % a, c)


class FracIdeal:
    """Fractional ideal lat / den with gcd(content(lat), den) = 1."""

    __slots__ = ("lat", "den")

    def __init__(self, lat: IdealLattice, den: int = 1):
        if den <= 0:
            raise SkewError("denominator must be positive")
        if lat.is_zero:
            den = 1
        else:
            g = gcd(lat.content(), den)
            if g > 1:
                lat = lat.divide_int(g)
                den //= g
        self.lat = lat
        self.den = den

    @property
    def dom(self) -> Domain:
        return self.lat.dom

    @property
    def is_zero(self) -> bool:
        return self.lat.is_zero

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    @property
    def is_unit(self) -> bool:
        return self.den == 1 and self.lat.is_unit_ideal

    def __repr__(self):
        if self.den == 1:
            return repr(self.lat)
        return f"{self.lat!r}/{self.den}"

    def __eq__(self, other):
        return (
            isinstance(other, FracIdeal)
            and self.lat == other.lat
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.lat, self.den))

    def norm(self) -> Fraction:
        """Multiplicative norm; equals the index for integral ideals."""
        if self.is_zero:
            return Fraction(0)
        if not self.dom.is_quad:
            return Fraction(self.lat.index, self.den)
        return Fraction(self.lat.index, self.den * self.den)

    def gens(self) -> tuple[FieldElem, FieldElem]:
        g1, g2 = self.lat.two_generators()
        return (
            FieldElem(self.dom, g1, self.den),
            FieldElem(self.dom, g2, self.den),
        )

    def contains(self, e: FieldElem) -> bool:
        if isinstance(e, RingElem):
            e = e.to_field()
        if self.is_zero:
            return not e
        scaled = e * self.den
        return scaled.den == 1 and self.lat.contains(scaled.num)

    def mul(self, other: "FracIdeal") -> "FracIdeal":
        return FracIdeal(self.lat.mul(other.lat), self.den * other.den)

    def add(self, other: "FracIdeal") -> "FracIdeal":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        the_lcm = lcm(self.den, other.den)
        left = self.lat.scale_int(the_lcm // self.den)
        right = other.lat.scale_int(the_lcm // other.den)
        return FracIdeal(left.add(right), the_lcm)

    def inverse(self) -> "FracIdeal":
        if self.is_zero:
            raise ZeroIdealError("inverse of the zero ideal")
        if self.dom.is_quad:
            # lat * conj(lat) = index * D in the maximal order
            inv = FracIdeal(self.lat.conj().scale_int(self.den), self.lat.index)
        else:
            inv = FracIdeal(IdealLattice(self.dom, self.den), self.lat.a)
        check = self.mul(inv)
        if not check.is_unit:
            raise SkewError(f"inverse verification failed for {self!r}")
        return inv

    def scale(self, e: FieldElem) -> "FracIdeal":
        """Product with the principal fractional ideal (e)."""
        return self.mul(from_generators(self.dom, [e]))

    def conj(self) -> "FracIdeal":
        return FracIdeal(self.lat.conj(), self.den)

    def sigma(self, i: int = 1) -> "FracIdeal":
        if self.dom.conj_sigma and i % 2:
            return self.conj()
        return self

    def to_json(self) -> dict:
        out = self.lat.to_json()
        out["den"] = self.den
        return out


def unit_frac(dom: Domain) -> FracIdeal:
    return FracIdeal(unit_ideal(dom), 1)


def from_generators(dom: Domain, gens: list) -> FracIdeal:
    """D-module generated by field elements, as a fractional ideal."""
    felems = [g.to_field() if isinstance(g, RingElem) else g for g in gens]
    felems = [g for g in felems if g]
    if not felems:
        return FracIdeal(zero_ideal(dom), 1)
    scale = 1
    for g in felems:
        scale = lcm(scale, g.den)
    ring_gens = [(g * scale).as_ring() for g in felems]
    return FracIdeal(from_ring_generators(dom, ring_gens), scale)


def product(u: FracIdeal, v: FracIdeal) -> FracIdeal:
    return u.mul(v)


def ideal_sum(u: FracIdeal, v: FracIdeal) -> FracIdeal:
    return u.add(v)


def inverse(u: FracIdeal) -> FracIdeal:
    return u.inverse()


def contains(u: FracIdeal, e: FieldElem) -> bool:
    return u.contains(e)


def two_generators(u: IdealLattice) -> tuple[RingElem, RingElem]:
    return u.two_generators()


def _coefficient_rows(dom: Domain, felems: list[FieldElem], scale: int):
    """Integer coordinate rows for each generator and its w-multiple."""
    rows = []
    for g in felems:
        gi = (g * scale).as_ring()
        if dom.is_quad:
            wg = gi * dom.omega
            rows.append([gi.b, gi.a])
            rows.append([wg.b, wg.a])
        else:
            rows.append([gi.a])
    return rows


def express_in_generators(e: FieldElem, gens: list) -> list[RingElem]:
    """Coefficients u_j in D with e = sum gens_j * u_j.

    Solved over the Z-basis {gens_j, gens_j * w} by echelon form with
    transformation; raises MembershipError when e is outside the module.
    """
    felems = [g.to_field() if isinstance(g, RingElem) else g for g in gens]
    if not felems or all(not g for g in felems):
        raise SkewError("need at least one nonzero generator")
    dom = felems[0].dom
    scale = e.den
    for g in felems:
        scale = lcm(scale, g.den)
    rows = _coefficient_rows(dom, felems, scale)
    et = (e * scale).as_ring()
    target = [et.b, et.a] if dom.is_quad else [et.a]
    ech, pivots, u = echelon(rows, want_transform=True)
    try:
        z = solve_in_rowspace(target, ech, pivots)
    except MembershipError:
        raise MembershipError(e, from_generators(dom, felems)) from None
    w = [sum(z[i] * u[i][j] for i in range(len(z))) for j in range(len(rows))]
    out = []
    per = 2 if dom.is_quad else 1
    for j in range(len(felems)):
        if dom.is_quad:
            out.append(RingElem(dom, w[per * j], w[per * j + 1]))
        else:
            out.append(RingElem(dom, w[j]))
    return out


def express_in_product(e: FieldElem, u_gens, v_gens) -> list[list[RingElem]]:
    """Matrix (c_jk) in D with e = sum c_jk * u_gens[j] * v_gens[k]."""
    g1, g2 = u_gens
    h1, h2 = v_gens
    prods = [g1 * h1, g1 * h2, g2 * h1, g2 * h2]
    prods = [p.to_field() if isinstance(p, RingElem) else p for p in prods]
    coeffs = express_in_generators(e, prods)
    return [[coeffs[0], coeffs[1]], [coeffs[2], coeffs[3]]]


def one_and_half_generator(u: IdealLattice, a: RingElem, rng=None,
                           max_candidates: int = 10_000,
                           coeff_bound: int = 1_000) -> RingElem:
    """Some b in u with (a, b) = u, given a nonzero a in u.

    Verified search: natural candidates first, then random small
    combinations of the HNF generators; every candidate is confirmed by
    HNF equality, so a returned value is always correct.
    """
    if u.is_zero:
        raise ZeroIdealError("zero ideal")
    if not a:
        raise SkewError("need a nonzero element")
    if not u.contains(a):
        raise MembershipError(a, u)
    g1, g2 = u.two_generators()

    def good(b: RingElem) -> bool:
        return bool(b) and from_ring_generators(u.dom, [a, b]) == u

    for cand in (g2, g1, g1 + g2, g1 - g2):
        if good(cand):
            return cand
    if rng is None:
        import random
        rng = random.Random(0)
    for _ in range(max_candidates):
        r1 = rng.randint(-coeff_bound, coeff_bound)
        r2 = rng.randint(-coeff_bound, coeff_bound)
        cand = g1 * r1 + g2 * r2
        if good(cand):
            return cand
    raise BoundExceeded(max_candidates, "no second generator found")


def _norm_form(lat: IdealLattice) -> tuple[int, int, int]:
    """Quadratic form N(x*g1 + y*g2) = A x^2 + B xy + C y^2 on the HNF basis."""
    g1, g2 = lat.two_generators()
    a1 = g1.a
    return a1 * a1, a1 * g2.trace(), g2.norm()


def _perfect_sqrt(n: int) -> int | None:
    if n < 0:
        return None
    r = isqrt(n)
    return r if r * r == n else None


def principal_generator(u: FracIdeal, coeff_bound: int = 100_000):
    """A generator of u when u is principal.

    Imaginary quadratic: the norm form is positive definite, the finite
    solution box is enumerated completely, and None is a proof of
    nonprincipality. Z: always principal. Real quadratic: solutions of
    |N| = index are scanned along one coordinate up to coeff_bound and
    BoundExceeded signals an undecided search.
    """
    if u.is_zero:
        raise ZeroIdealError("zero ideal")
    dom = u.dom
    if not dom.is_quad:
        return FieldElem(dom, RingElem(dom, u.lat.a, 0), u.den)
    lat = u.lat
    if lat.is_unit_ideal:
        return FieldElem(dom, dom.one, u.den)
    g1, g2 = lat.two_generators()
    big_a, big_b, big_c = _norm_form(lat)
    n = lat.index

    def build(x: int, y: int):
        return FieldElem(dom, g1 * x + g2 * y, u.den)

    if dom.d < 0:
        # positive definite: 4A*Q(x,y) = (2Ax + By)^2 + (4AC - B^2) y^2
        det4 = 4 * big_a * big_c - big_b * big_b
        ybound = isqrt(4 * big_a * n // det4) + 1
        for y in range(0, ybound + 1):
            disc_x = big_b * big_b * y * y - 4 * big_a * (big_c * y * y - n)
            s = _perfect_sqrt(disc_x)
            if s is None:
                continue
            for sgn in ((s, -s) if s else (0,)):
                num = -big_b * y + sgn
                if num % (2 * big_a):
                    continue
                x = num // (2 * big_a)
                if x or y:
                    return build(x, y)
        return None
    # real quadratic: indefinite form, scan y and solve for x exactly
    det4 = big_b * big_b - 4 * big_a * big_c
    for y in range(0, coeff_bound + 1):
        for target in (n, -n):
            disc_x = det4 * y * y + 4 * big_a * target
            s = _perfect_sqrt(disc_x)
            if s is None:
                continue
            for sgn in ((s, -s) if s else (0,)):
                num = -big_b * y + sgn
                if num % (2 * big_a):
                    continue
                x = num // (2 * big_a)
                if x == 0 and y == 0:
                    continue
                cand = build(x, y)
                if from_generators(dom, [cand]) == u:
                    return cand
    raise BoundExceeded(coeff_bound, f"principal search undecided for {u!r}")


def ideal_classes_isomorphic(u: FracIdeal, v: FracIdeal):
    """q0 with q0 * u = v when u and v are in the same class, else None.

    Decidable over Z and imaginary quadratic domains; real quadratic
    class queries are refused rather than answered heuristically.
    """
    dom = u.dom
    if dom.is_quad and dom.d > 0:
        raise UnsupportedDomain("real quadratic class queries are not decided")
    if u.is_zero or v.is_zero:
        raise ZeroIdealError("class query on the zero ideal")
    q0 = principal_generator(v.mul(u.inverse()))
    if q0 is None:
        return None
    if u.scale(q0) != v:
        raise SkewError("generator verification failed")
    return q0
