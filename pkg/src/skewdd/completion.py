"""Unimodular row completion over the idealized matrix ring.

For a nonzero ideal J of D and I = J * R, rows live in [R, I^(-1)] and
columns in [R, I]; a row is unimodular when some column multiplies it to
1. This module turns such a row into an explicitly invertible matrix
over the idealized ring [[R, I^(-1)], [I, I*I^(-1)]], in certified steps:

  check_unimodular   normalizes the witness to a * t = x^n,
  reduce_row         peels one order: an n-level row with respect to a
                     shape ideal A becomes an (n-1)-level row with
                     respect to B = s*A + q*J*A^(-1),
  base_case_invert   solves the order-0 case with a determinant-1
                     constant matrix,
  lift_invertibility pushes invertibility data back up one level,
  complete_unimodular_row
                     runs the chain and converts the top-level data
                     into an invertible matrix with its two-sided
                     inverse.

Every intermediate coefficient is checked against its declared
fractional-ideal shape, reductions consume exactly one known order, and
verify_completion recomputes all products independently.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domains import Domain, DomainSpec, FieldElem
from .errors import (
    BoundExceeded,
    MembershipError,
    NotUnimodular,
    PrecisionError,
    SigmaClassObstruction,
    SkewError,
)
from . import ideals
from .ideals import FracIdeal, IdealLattice, unit_frac
from .reporting import VerifyReport
from .series import SeriesMatrix, TruncatedSeries, mul
from . import textio


class ShapeTable:
    """Coefficient shapes for a given (J, A); sigma^i depends on i mod 2."""

    def __init__(self, dom: Domain, j_ideal: IdealLattice, a_ideal: IdealLattice):
        self.dom = dom
        jf = j_ideal.to_frac()
        af = a_ideal.to_frac()
        jinv = jf.inverse()
        ainv = af.inverse()
        one = unit_frac(dom)
        self.row_p = []
        self.b_p = []
        self.t_p = []
        self.h_p = []
        for p in (0, 1):
            ainv_p = ainv.sigma(p)
            jinv_p = jinv.sigma(p)
            ja_p = jinv.mul(af).sigma(p)
            self.row_p.append((ainv_p, ja_p))
            self.b_p.append((jf.mul(ainv_p), jf.mul(ja_p)))
            self.t_p.append(((af, jinv_p.mul(af)),
                             (jf.mul(ainv), jf.mul(jinv_p).mul(ainv))))
            self.h_p.append(((one, jinv_p), (jf, jf.mul(jinv_p))))
        self.witness = ((af,), (jf.mul(ainv),))

    def row(self, i):
        return (self.row_p[i % 2],)

    def b_row(self, i):
        return (self.b_p[i % 2],)

    def t_mat(self, i):
        return self.t_p[i % 2]

    def h_mat(self, i):
        return self.h_p[i % 2]

    def witness_col(self, i):
        return self.witness


def _shape_violation(mat: SeriesMatrix, shape_of):
    """First (row, col, order) whose coefficient escapes its shape ideal."""
    for r, row in enumerate(mat.rows):
        for c, series in enumerate(row):
            for j, coef in enumerate(series.coeffs):
                if not coef:
                    continue
                order = series.val + j
                if not shape_of(order)[r][c].contains(coef):
                    return (r, c, order)
    return None


def _require_shape(mat: SeriesMatrix, shape_of, what: str):
    bad = _shape_violation(mat, shape_of)
    if bad is not None:
        r, c, order = bad
        raise MembershipError(
            mat.rows[r][c].coeff(order), shape_of(order)[r][c],
            f"{what} entry ({r},{c}) coefficient at order {order} "
            f"escapes its shape ideal")


def _matrix_disagreement(left: SeriesMatrix, right: SeriesMatrix):
    """(first differing order or None, common verified exclusive bound)."""
    bad = None
    bound = None
    for ra, rb in zip(left.rows, right.rows):
        for a, b in zip(ra, rb):
            diff = a - b
            if diff.coeffs:
                bad = diff.val if bad is None else min(bad, diff.val)
            elif diff.known_to is not None:
                bound = diff.known_to if bound is None \
                    else min(bound, diff.known_to)
    return bad, bound


class ShapedRow:
    """Row in [sigma^i(A^-1), sigma^i(J^-1 A)] with valuation 0.

    Shape membership of every known coefficient is checked at
    construction, so a ShapedRow is valid by existence.
    """

    __slots__ = ("dom", "row", "j_ideal", "a_ideal", "shapes")

    def __init__(self, row: SeriesMatrix, j_ideal: IdealLattice,
                 a_ideal: IdealLattice):
        if row.shape != (1, 2):
            raise SkewError("shaped row must be 1x2")
        if j_ideal.is_zero or a_ideal.is_zero:
            raise SkewError("shape ideals must be nonzero")
        vals = [s.val for s in row.rows[0] if s.coeffs]
        if not vals:
            raise SkewError("row has no known nonzero coefficient")
        if min(vals) != 0 or any(s.coeffs and s.val < 0 for s in row.rows[0]):
            raise SkewError("shaped row must have valuation exactly 0")
        self.dom = row.dom
        self.row = row
        self.j_ideal = j_ideal
        self.a_ideal = a_ideal
        self.shapes = ShapeTable(row.dom, j_ideal, a_ideal)
        _require_shape(row, self.shapes.row, "row")

    def a0(self) -> tuple[FieldElem, FieldElem]:
        return (self.row.rows[0][0].coeff(0), self.row.rows[0][1].coeff(0))


@dataclass
class ReductionContext:
    """Data from one reduce_row step needed by the matching lift."""

    a0: tuple
    abar0: tuple
    b_ideal: IdealLattice
    lam: FieldElem


@dataclass
class InvertibilityData:
    """Row with its level-n invertibility witness (b, T, H)."""

    row: ShapedRow
    witness: SeriesMatrix
    n: int
    b: SeriesMatrix
    T: SeriesMatrix
    H: SeriesMatrix


def _stack(row: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    return SeriesMatrix(row.dom, [row.rows[0], b.rows[0]])


def _det2(m) -> FieldElem:
    return m[0][0] * m[1][1] - m[0][1] * m[1][0]


def _bezout_two_fractional(dom: Domain, w1: FracIdeal | None,
                           w2: FracIdeal | None):
    """(u', v') with u' in w1, v' in w2 and u' + v' = 1."""
    gens = []
    split = 0
    if w1 is not None and not w1.is_zero:
        gens.extend(w1.gens())
        split = len(gens)
    if w2 is not None and not w2.is_zero:
        gens.extend(w2.gens())
    coeffs = ideals.express_in_generators(dom.fone, gens)
    u_prime = dom.fzero
    v_prime = dom.fzero
    for g, c in zip(gens[:split], coeffs[:split]):
        u_prime = u_prime + g * c.to_field()
    for g, c in zip(gens[split:], coeffs[split:]):
        v_prime = v_prime + g * c.to_field()
    return u_prime, v_prime


def _principal_or_obstruction(ideal: FracIdeal, what: str,
                              bound: int | None = None) -> FieldElem:
    """Generator of a principal fractional ideal, or SigmaClassObstruction."""
    dom = ideal.dom
    if ideal.is_unit:
        return dom.fone
    try:
        if bound is None:
            gen = ideals.principal_generator(ideal)
        else:
            gen = ideals.principal_generator(ideal, coeff_bound=bound)
    except BoundExceeded as err:
        raise SigmaClassObstruction(
            ideal, f"{what}: principal search exhausted ({err})") from None
    if gen is None:
        raise SigmaClassObstruction(ideal, f"{what}: ideal is not principal")
    return gen


def check_unimodular(shaped: ShapedRow, t: SeriesMatrix
                     ) -> tuple[int, SeriesMatrix]:
    """Validate a * t = 1 and shift the witness to a * t' = x^n, n >= 0."""
    if t.shape != (2, 1):
        raise SkewError("witness must be a 2x1 column")
    _require_shape(t, shaped.shapes.witness_col, "witness")
    prod = (shaped.row @ t).rows[0][0]
    diff = prod - TruncatedSeries.const(shaped.dom, shaped.dom.fone)
    if diff.coeffs:
        raise NotUnimodular(f"row * witness differs from 1 at order {diff.val}")
    vals = [s.val for col in t.rows for s in col if s.coeffs]
    n = max(0, -min(vals)) if vals else 0
    return n, t.shift(n)


def reduce_row(shaped: ShapedRow, witness: SeriesMatrix,
               bound: int | None = None
               ) -> tuple[ShapedRow, SeriesMatrix, ReductionContext]:
    """One reduction step: level n with respect to A becomes level n-1
    with respect to B = s*A + q*J*A^(-1), consuming one known order.

    Returns the reduced row, its constructed witness and the context
    (a0, abar0, B, lambda) the matching lift needs.
    """
    dom = shaped.dom
    j_ideal, a_ideal = shaped.j_ideal, shaped.a_ideal
    prod = (shaped.row @ witness).rows[0][0]
    n = prod.valuation()
    if n < 1:
        raise SkewError("reduce_row needs level n >= 1")
    if prod.lowest() != dom.fone:
        raise NotUnimodular(f"witness product is not x^{n}")
    s_e, q_e = shaped.a0()
    jf = j_ideal.to_frac()
    af = a_ideal.to_frac()
    ainv = af.inverse()
    jinv = jf.inverse()
    b_frac = FracIdeal(ideals.zero_ideal(dom))
    if s_e:
        b_frac = b_frac.add(af.scale(s_e))
    if q_e:
        b_frac = b_frac.add(jf.mul(ainv).scale(q_e))
    if not b_frac.is_integral or b_frac.is_zero:
        raise SkewError("reduction ideal B is not a nonzero integral ideal")
    b_ideal = b_frac.lat
    binv = b_frac.inverse()
    w1 = af.mul(binv).scale(s_e) if s_e else None
    w2 = jf.mul(ainv).mul(binv).scale(q_e) if q_e else None
    u_prime, v_prime = _bezout_two_fractional(dom, w1, w2)
    u = u_prime / s_e if s_e else dom.fzero
    v = v_prime / q_e if q_e else dom.fzero
    if s_e * u + q_e * v != dom.fone:
        raise SkewError("Bezout step failed")
    abar0 = (-v, u)
    lam_ideal = jf.mul(binv).mul(jinv.mul(b_frac).sigma(1))
    lam = _principal_or_obstruction(lam_ideal, "reduction scaling constant",
                                    bound)
    # coefficient decompositions along (a0, abar0)
    abar0_perp = SeriesMatrix.from_const(dom, [[u], [v]])
    a0_perp = SeriesMatrix.from_const(dom, [[q_e], [-s_e]])
    alpha = (shaped.row @ abar0_perp).rows[0][0]
    abar = (shaped.row @ a0_perp).rows[0][0]
    lam_inv = lam.inverse()
    ent2 = mul(abar.shift(-1), TruncatedSeries.const(dom, lam_inv))
    new_row = SeriesMatrix(dom, [[alpha, ent2]])
    a0_row = SeriesMatrix.from_const(dom, [[s_e, q_e]])
    abar0_row = SeriesMatrix.from_const(dom, [[-v, u]])
    tbar = (a0_row @ witness).rows[0][0]
    tlow = (-(abar0_row @ witness).rows[0][0])
    wit_new = SeriesMatrix(dom, [
        [tbar.shift(-1)],
        [tlow.map_coeffs(lambda c: lam * dom.sigma_pow(c, 1))],
    ])
    reduced = ShapedRow(new_row, j_ideal, b_ideal)
    _require_shape(wit_new, reduced.shapes.witness_col, "reduced witness")
    check = (new_row @ wit_new).rows[0][0] - TruncatedSeries.x_power(dom, n - 1)
    if check.coeffs and check.val <= n - 1:
        raise SkewError(
            f"reduced witness identity fails at order {check.val}")
    ctx = ReductionContext((s_e, q_e), abar0, b_ideal, lam)
    return reduced, wit_new, ctx


def base_case_invert(shaped: ShapedRow, witness: SeriesMatrix, rng=None
                     ) -> InvertibilityData:
    """Level-0 invertibility: a constant determinant-1 matrix T0.

    Picks nonzero s in J and b in A, completes s*b to a generating pair
    of A (verified search), and solves the Bezout identity in A^(-1).
    """
    dom = shaped.dom
    j_ideal, a_ideal = shaped.j_ideal, shaped.a_ideal
    prod = (shaped.row @ witness).rows[0][0]
    if prod.valuation() != 0 or prod.lowest() != dom.fone:
        raise NotUnimodular("base case needs a0 * t0 = 1")
    s_r = j_ideal.two_generators()[0]
    b_r = a_ideal.two_generators()[0]
    sb = s_r * b_r
    aprime = ideals.one_and_half_generator(a_ideal, sb, rng)
    ainv = a_ideal.to_frac().inverse()
    w1 = ainv.scale(aprime.to_field())
    w2 = ainv.scale(sb.to_field())
    u_prime, v_prime = _bezout_two_fractional(dom, w1, w2)
    p = u_prime / aprime.to_field()
    q2 = v_prime / sb.to_field()
    t0_mat = [[aprime.to_field(), b_r.to_field()],
              [-(s_r.to_field() * q2), p]]
    if _det2(t0_mat) != dom.fone:
        raise SkewError("base-case matrix does not have determinant 1")
    t0_col = (witness.rows[0][0].coeff(0), witness.rows[1][0].coeff(0))
    b_row = SeriesMatrix.from_const(dom, [[-t0_col[1], t0_col[0]]])
    t_series = SeriesMatrix.from_const(dom, t0_mat)
    _require_shape(b_row, shaped.shapes.b_row, "base-case b row")
    _require_shape(t_series, shaped.shapes.t_mat, "base-case T")
    h_series = _stack(shaped.row, b_row) @ t_series
    h0 = h_series.coeff_matrix(0)
    if _det2(h0) != dom.fone:
        raise SkewError("base-case leading determinant is not 1")
    _require_shape(h_series, shaped.shapes.h_mat, "base-case H")
    return InvertibilityData(shaped, witness, 0, b_row, t_series, h_series)


def lift_invertibility(child: InvertibilityData, ctx: ReductionContext,
                       parent: ShapedRow, parent_witness: SeriesMatrix,
                       bound: int | None = None) -> InvertibilityData:
    """Rebuild level-n invertibility of the parent row from the child's."""
    dom = parent.dom
    j_ideal = parent.j_ideal
    lam = ctx.lam
    s_e, q_e = ctx.a0
    neg_v, u = ctx.abar0
    mu_ideal = j_ideal.to_frac().mul(j_ideal.sigma(1).to_frac().inverse())
    mu = _principal_or_obstruction(mu_ideal, "lift scaling constant", bound)
    m_const = SeriesMatrix.from_const(dom, [[dom.fone, dom.fzero],
                                            [dom.fzero, mu]])
    btil1 = child.b.rows[0][0]
    btil2 = child.b.rows[0][1]
    bbar = mul(btil2, TruncatedSeries.const(dom, lam)).shift(1)
    a0_row = SeriesMatrix.from_const(dom, [[s_e, q_e]])
    abar0_row = SeriesMatrix.from_const(dom, [[neg_v, u]])
    b_row = (SeriesMatrix(dom, [[btil1]]) @ a0_row) \
        - (SeriesMatrix(dom, [[bbar]]) @ abar0_row)
    trow1 = SeriesMatrix(dom, [child.T.rows[0]])
    trow2 = SeriesMatrix(dom, [child.T.rows[1]])
    tbar_rows = (trow1 @ m_const).shift(1)
    lam_inv = lam.inverse()
    inner = trow2.map(lambda s: s.map_coeffs(
        lambda c: dom.sigma_pow(c * lam_inv, 1)))
    t_rows = (inner.shift(-1) @ m_const).shift(1)
    abar0_perp = SeriesMatrix.from_const(dom, [[u], [-neg_v]])
    a0_perp = SeriesMatrix.from_const(dom, [[q_e], [-s_e]])
    t_series = (abar0_perp @ tbar_rows) + (a0_perp @ t_rows)
    h_series = _stack(parent.row, b_row) @ t_series
    n = child.n + 1
    for r, row in enumerate(h_series.rows):
        for c, series in enumerate(row):
            if series.coeffs and series.val < n:
                raise SkewError(
                    f"lifted product does not vanish below order {n} "
                    f"(entry ({r},{c}) at order {series.val})")
    h_n = h_series.coeff_matrix(n)
    child_h = child.H.coeff_matrix(n - 1)
    m_tw = [[dom.sigma_pow(e, n - 1) for e in row]
            for row in [[dom.fone, dom.fzero], [dom.fzero, mu]]]
    expected = [[sum((child_h[r][k] * m_tw[k][c] for k in range(2)),
                     dom.fzero) for c in range(2)] for r in range(2)]
    if h_n != expected:
        raise SkewError("lifted leading matrix mismatch")
    det = _det2(h_n)
    target = j_ideal.to_frac().mul(j_ideal.sigma(n).to_frac().inverse())
    if ideals.from_generators(dom, [det]) != target:
        raise SkewError("det(H_n) does not generate J * sigma^n(J^-1)")
    _require_shape(b_row, parent.shapes.b_row, "lifted b row")
    _require_shape(t_series, parent.shapes.t_mat, "lifted T")
    _require_shape(h_series, parent.shapes.h_mat, "lifted H")
    return InvertibilityData(parent, parent_witness, n, b_row, t_series,
                             h_series)


@dataclass
class CompletionCertificate:
    """Row, witness, completion data and the final invertible matrix."""

    spec: DomainSpec
    ideal: IdealLattice
    a_ideal: IdealLattice
    row: SeriesMatrix
    witness: SeriesMatrix
    n: int
    b: SeriesMatrix
    T: SeriesMatrix
    H: SeriesMatrix
    final: SeriesMatrix
    final_inv: SeriesMatrix
    prec: int

    def to_json(self) -> dict:
        return {
            "schema": "completion-cert/v1",
            "domain": self.spec.to_json(),
            "ideal": self.ideal.to_json(),
            "a_ideal": self.a_ideal.to_json(),
            "row": textio.matrix_to_json(self.row),
            "witness": textio.matrix_to_json(self.witness),
            "n": self.n,
            "b": textio.matrix_to_json(self.b),
            "T": textio.matrix_to_json(self.T),
            "H": textio.matrix_to_json(self.H),
            "final": textio.matrix_to_json(self.final),
            "final_inv": textio.matrix_to_json(self.final_inv),
            "prec": self.prec,
        }

    @staticmethod
    def from_json(obj: dict) -> "CompletionCertificate":
        from .domains import get_domain

        spec = DomainSpec.from_json(obj["domain"])
        dom = get_domain(spec)

        def m(key):
            return textio.matrix_from_json(dom, obj[key])

        return CompletionCertificate(
            spec,
            textio.ideal_lattice_from_json(dom, obj["ideal"]),
            textio.ideal_lattice_from_json(dom, obj["a_ideal"]),
            m("row"), m("witness"), int(obj["n"]), m("b"), m("T"), m("H"),
            m("final"), m("final_inv"), int(obj["prec"]),
        )


def complete_unimodular_row(shaped: ShapedRow, t: SeriesMatrix, prec: int,
                            rng=None, bound: int | None = None
                            ) -> CompletionCertificate:
    """Full pipeline: n reductions, base case, n lifts, final conversion.

    Needs n extra known orders beyond prec and fails fast with the exact
    deficit otherwise. The final conversion requires the top shape ideal
    to be the whole domain (rows over [R, I^(-1)]).
    """
    dom = shaped.dom
    n, t2 = check_unimodular(shaped, t)
    avail = None
    for matkt in (shaped.row.known_to, t2.known_to):
        if matkt is not None:
            avail = matkt if avail is None else min(avail, matkt)
    if avail is not None and avail < prec + n:
        raise PrecisionError(
            f"need {prec + n} known orders (reduction depth {n}), "
            f"have {avail}", deficit=prec + n - avail)
    chain = [(shaped, t2)]
    ctxs = []
    cur_row, cur_wit = shaped, t2
    for _ in range(n):
        cur_row, cur_wit, ctx = reduce_row(cur_row, cur_wit, bound)
        ctxs.append(ctx)
        chain.append((cur_row, cur_wit))
    data = base_case_invert(cur_row, cur_wit, rng)
    for level in range(n - 1, -1, -1):
        parent_row, parent_wit = chain[level]
        data = lift_invertibility(data, ctxs[level], parent_row, parent_wit,
                                  bound)
    if not shaped.a_ideal.is_unit_ideal:
        raise SkewError("final conversion needs the unit shape ideal")
    det_hn = _det2(data.H.coeff_matrix(n))
    m2 = SeriesMatrix.from_const(dom, [[dom.fone, dom.fzero],
                                       [dom.fzero, det_hn.inverse()]])
    s_mat = data.H.shift(-n) @ m2
    s_inv = s_mat.invert(prec + n + 2)
    final = _stack(shaped.row, data.b)
    final_inv = (data.T.shift(-n) @ m2) @ s_inv
    for left, right in ((final, final_inv), (final_inv, final)):
        diff = (left @ right) - SeriesMatrix.identity(dom)
        for row in diff.rows:
            for series in row:
                if series.coeffs:
                    raise SkewError(
                        f"final inverse fails at order {series.val}")
        bound = diff.known_to
        if bound is not None and bound < prec:
            raise PrecisionError(
                f"final inverse verified only below order {bound}",
                deficit=prec - bound)
    cert = CompletionCertificate(
        dom.spec, shaped.j_ideal, shaped.a_ideal, shaped.row, t2, n,
        data.b, data.T, data.H, final, final_inv, prec)
    return cert


def verify_completion(cert: CompletionCertificate) -> VerifyReport:
    """Recompute every product, shape membership and determinant claim."""
    from .domains import get_domain

    dom = get_domain(cert.spec)
    rep = VerifyReport()
    try:
        shaped = ShapedRow(cert.row, cert.ideal, cert.a_ideal)
        rep.add("row shape membership", True)
    except (SkewError, MembershipError) as err:
        rep.add("row shape membership", False, str(err))
        return rep
    shapes = shaped.shapes

    def shape_check(name, mat, fn):
        bad = _shape_violation(mat, fn)
        rep.add(name, bad is None,
                "" if bad is None else f"entry {bad[:2]}",
                None if bad is None else bad[2])

    shape_check("witness shape membership", cert.witness, shapes.witness_col)
    shape_check("b row shape membership", cert.b, shapes.b_row)
    shape_check("T shape membership", cert.T, shapes.t_mat)
    shape_check("H shape membership", cert.H, shapes.h_mat)

    wit_prod = (cert.row @ cert.witness).rows[0][0]
    wdiff = wit_prod - TruncatedSeries.x_power(dom, cert.n)
    if wdiff.coeffs and wdiff.val <= cert.n:
        rep.add("row * witness = x^n", False, "", wdiff.val)
    else:
        trailing_ok = all(c.is_integral for c in wdiff.coeffs)
        rep.add("row * witness = x^n", trailing_ok,
                "" if trailing_ok else "trailing coefficients not integral")

    prod = _stack(cert.row, cert.b) @ cert.T
    bad_order, bound = _matrix_disagreement(prod, cert.H)
    if bad_order is not None:
        rep.add("[a; b] * T reproduces H", False, "", bad_order)
    else:
        rep.add("[a; b] * T reproduces H", True,
                "" if bound is None else f"through order {bound - 1}")
    low_ok = all(not s.coeffs or s.val >= cert.n
                 for row in prod.rows for s in row)
    rep.add("product vanishes below order n", low_ok)
    try:
        h_n = prod.coeff_matrix(cert.n)
        det = _det2(h_n)
        target = cert.ideal.to_frac().mul(
            cert.ideal.sigma(cert.n).to_frac().inverse())
        rep.add("det(H_n) generates J * sigma^n(J^-1)",
                bool(det) and ideals.from_generators(dom, [det]) == target)
    except PrecisionError:
        rep.add("det(H_n) generates J * sigma^n(J^-1)", False,
                "order n not known")
    rep.add("final matrix stacks the row over b",
            cert.final.rows[0] == cert.row.rows[0]
            and cert.final.rows[1] == cert.b.rows[0])

    shape_check("final inverse shape membership", cert.final_inv,
                shapes.h_mat)
    ident = SeriesMatrix.identity(dom)
    for name, left, right in (("final * final_inv = Id", cert.final,
                               cert.final_inv),
                              ("final_inv * final = Id", cert.final_inv,
                               cert.final)):
        bad, bound = _matrix_disagreement(left @ right, ident)
        if bad is not None:
            rep.add(name, False, "", bad)
        else:
            ok = bound is None or bound >= cert.prec
            rep.add(name, ok,
                    "" if ok else f"verified only below order {bound}, "
                                  f"claimed {cert.prec}")
    return rep


def extended_ideal_iso(j_ideal: IdealLattice, l_ideal: IdealLattice):
    """(q0, k) with q0 * sigma^k(J) = L over the sigma orbit, or None.

    Decides whether the extended ideals J*R and L*R are isomorphic at the
    level the theory reduces it to: some twist of J lands in the class
    of L.
    """
    dom = j_ideal.dom
    lf = l_ideal.to_frac()
    for k in range(dom.sigma_order):
        q0 = ideals.ideal_classes_isomorphic(j_ideal.sigma(k).to_frac(), lf)
        if q0 is not None:
            return q0, k
    return None
