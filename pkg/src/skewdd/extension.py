"""Certified isomorphism between a right ideal and an extended ideal.

Given generators of a right ideal I of the skew Laurent series ring,
this module computes the constant ideal J (the ideal of lowest
coefficients), normalizes the generators to a two-element row g with
lowest coefficients generating J, and then builds a certificate
(A, q) satisfying

    q * g0 = g * A     coefficientwise through the certified order,

where g0 is the row of lowest coefficients, A is an integral 2x2 series
matrix with A_0 = Id, and q is a unit-lowest-term series over the
fraction field. Multiplication by q then carries the extended ideal
(g0 entries) * R onto I, which is what the certificate witnesses.

The constant-ideal computation is a verified lower bound: it adjoins a
coefficient ideal order by order and stops when the ideal is stable for
`depth` consecutive orders (exact for polynomial generators whose
cancellations resolve within the window). When a candidate J is too
small, the inductive step fails a membership test and reports the
strictly larger lower bound to restart with (ConstIdealUnderestimate);
drivers loop on that error, and the lattice index drops each round, so
at most log2(index) restarts happen.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domains import Domain, DomainSpec, FieldElem, RingElem
from .errors import (
    ConstIdealUnderestimate,
    MembershipError,
    PrecisionError,
    SkewError,
)
from . import ideals
from .ideals import IdealLattice, echelon, from_ring_generators
from .reporting import VerifyReport
from .series import SeriesMatrix, TruncatedSeries, mul
from . import textio

DEFAULT_DEPTH = 4


def _normalized_ring_gens(gens: list[TruncatedSeries]) -> list[TruncatedSeries]:
    out = []
    for g in gens:
        if g.is_known_zero:
            if g.is_exact_zero:
                continue
            raise PrecisionError("generator has no known nonzero coefficient")
        if not g.ring:
            raise SkewError("ideal generators must have integral coefficients")
        out.append(g.shift(-g.valuation()))
    if not out:
        raise SkewError("need at least one nonzero generator")
    return out


class _OrderWindow:
    """Echelonized coefficient table of right combinations up to order T.

    Rows are the coefficient vectors (orders 0..T, untwisted coordinates)
    of gens[j] * c * x^s for every generator, every shift s <= T and
    c in {1, w}. Echelon rows with pivot in order block t are elements of
    the ideal vanishing below t; their leading coefficients at block t
    generate the order-t lower bound for the constant ideal.
    """

    def __init__(self, dom: Domain, gens: list[TruncatedSeries], top: int):
        self.dom = dom
        self.gens = gens
        self.top = top
        blocks = 2 if dom.is_quad else 1
        consts = [dom.one, dom.omega] if dom.is_quad else [dom.one]
        rows, seeds = [], []
        for j, g in enumerate(gens):
            for s in range(top + 1):
                for c in consts:
                    vec = []
                    for m in range(top + 1):
                        if m - s < 0:
                            coef = dom.fzero
                        else:
                            coef = g.coeff(m - s) * dom.sigma_pow(
                                c.to_field(), m - s)
                        ce = coef.as_ring()
                        vec.extend([ce.b, ce.a] if dom.is_quad else [ce.a])
                    rows.append(vec)
                    seeds.append((j, s, c))
        self.blocks = blocks
        self.seeds = seeds
        self.ech, self.pivots, self.transform = echelon(rows, want_transform=True)

    def leaders(self):
        """(row_index, order_block, leading RingElem) per pivot row."""
        out = []
        for idx, col in enumerate(self.pivots):
            t = col // self.blocks
            base = t * self.blocks
            if self.dom.is_quad:
                elem = RingElem(self.dom, self.ech[idx][base + 1],
                                self.ech[idx][base])
            else:
                elem = RingElem(self.dom, self.ech[idx][base])
            out.append((idx, t, elem))
        return out

    def level_ideal(self, t: int) -> IdealLattice:
        gens = [e for (_, blk, e) in self.leaders() if blk <= t]
        return from_ring_generators(self.dom, gens)

    def row_combination(self, idx: int) -> list[TruncatedSeries]:
        """Per-generator right factors r_j reproducing echelon row idx."""
        combos = [TruncatedSeries.zero(self.dom) for _ in self.gens]
        for k, coef in enumerate(self.transform[idx]):
            if not coef:
                continue
            j, s, c = self.seeds[k]
            term = TruncatedSeries(self.dom, s, [(c * coef).to_field()])
            combos[j] = combos[j] + term
        return combos

    def row_series(self, idx: int) -> TruncatedSeries:
        combos = self.row_combination(idx)
        acc = TruncatedSeries.zero(self.dom)
        for g, r in zip(self.gens, combos):
            acc = acc + mul(g, r)
        return acc


def _max_window(gens: list[TruncatedSeries]) -> int | None:
    """Highest usable order window (None when all generators are exact)."""
    best = None
    for g in gens:
        if g.known_to is not None:
            avail = g.known_to - 1  # coefficients known at orders 0..known_to-1
            best = avail if best is None else min(best, avail)
    return best


def constant_ideal_bounded(gens: list[TruncatedSeries], depth: int,
                           ) -> IdealLattice:
    """Lower bound for the constant ideal of the right ideal sum(gens_j R).

    Stops when the order-by-order coefficient ideal is unchanged for
    `depth` consecutive orders or hits the unit ideal; raises
    PrecisionError when the generators run out of known orders first.
    """
    norm = _normalized_ring_gens(gens)
    limit = _max_window(norm)
    if limit is not None and limit < depth:
        raise PrecisionError(
            f"need at least {depth} known orders per generator",
            deficit=depth - limit)
    current = _OrderWindow(norm[0].dom, norm, 0).level_ideal(0)
    run = 1
    t = 1
    while run < depth and not current.is_unit_ideal:
        if limit is not None and t > limit:
            raise PrecisionError(
                "constant ideal did not stabilize within known orders",
                deficit=depth - run)
        nxt = _OrderWindow(norm[0].dom, norm, t).level_ideal(t)
        if nxt == current:
            run += 1
        else:
            current = nxt
            run = 1
        t += 1
    return current


@dataclass
class NormalizedGenerators:
    """Two-element generating row with lowest coefficients = targets.

    combos[i][j] is the right series factor on gens[j] whose combination
    produced row entry i, kept so the construction is auditable.
    """

    row: SeriesMatrix
    combos: list

    def rebuild(self, gens: list[TruncatedSeries]) -> SeriesMatrix:
        dom = self.row.dom
        entries = []
        for combo in self.combos:
            acc = TruncatedSeries.zero(dom)
            for g, r in zip(gens, combo):
                acc = acc + mul(g, r)
            entries.append(acc)
        return SeriesMatrix(dom, [entries])


def normalize_generators(j_ideal: IdealLattice, gens: list[TruncatedSeries],
                         stall_depth: int = DEFAULT_DEPTH,
                         ) -> NormalizedGenerators:
    """Row (f1, f2) of right combinations with lowest coefficients
    two_generators(j_ideal), each at valuation 0.

    MembershipError when the combination table never realizes the target
    ideal (the supplied j_ideal overestimates the achievable constants).
    """
    norm = _normalized_ring_gens(gens)
    dom = norm[0].dom
    targets = j_ideal.two_generators()
    limit = _max_window(norm)
    t = 0
    window = None
    level = None
    stable = 0
    while True:
        window = _OrderWindow(dom, norm, t)
        lv = window.level_ideal(t)
        if all(lv.contains(a) for a in targets):
            break
        if level is not None and lv == level:
            stable += 1
        else:
            stable = 0
        level = lv
        t += 1
        if (limit is not None and t > limit):
            raise MembershipError(targets, lv,
                                  "targets not realizable within precision")
        if limit is None and stable >= stall_depth:
            raise MembershipError(targets, lv,
                                  "targets not realizable from the generators")
    leaders = [(idx, blk, e) for (idx, blk, e) in window.leaders() if blk <= t]
    leader_elems = [e.to_field() for (_, _, e) in leaders]
    entries = []
    combos = []
    for target in targets:
        coeffs = ideals.express_in_generators(target.to_field(), leader_elems)
        acc = TruncatedSeries.zero(dom)
        combo = [TruncatedSeries.zero(dom) for _ in norm]
        for (idx, blk, _), u in zip(leaders, coeffs):
            if not u:
                continue
            piece = window.row_series(idx).shift(-blk) * u.to_field()
            acc = acc + piece
            for jj, r in enumerate(window.row_combination(idx)):
                combo[jj] = combo[jj] + mul(r.shift(-blk),
                                            TruncatedSeries.const(dom, u))
        if acc.is_known_zero or acc.valuation() != 0 or acc.lowest() != target.to_field():
            raise SkewError("normalized generator lost its lowest coefficient")
        entries.append(acc)
        combos.append(combo)
    return NormalizedGenerators(SeriesMatrix(dom, [entries]), combos)


@dataclass
class ExtensionCertificate:
    """Witness data for I isomorphic to (constant ideal) * R."""

    spec: DomainSpec
    ideal: IdealLattice
    g0: tuple
    g: SeriesMatrix
    A: SeriesMatrix
    q: TruncatedSeries
    prec: int
    audit: list

    def to_json(self) -> dict:
        return {
            "schema": "extension-cert/v1",
            "domain": self.spec.to_json(),
            "ideal": self.ideal.to_json(),
            "g0": [textio.format_ring_elem(a) for a in self.g0],
            "g": [textio.series_to_json(s) for s in self.g.rows[0]],
            "A": textio.matrix_to_json(self.A),
            "q": textio.series_to_json(self.q),
            "prec": self.prec,
            "audit": self.audit,
        }

    @staticmethod
    def from_json(obj: dict) -> "ExtensionCertificate":
        from .domains import get_domain

        spec = DomainSpec.from_json(obj["domain"])
        dom = get_domain(spec)
        ideal = textio.ideal_lattice_from_json(dom, obj["ideal"])
        g0 = tuple(textio.parse_field_elem(dom, s).as_ring() for s in obj["g0"])
        g = SeriesMatrix(dom, [[textio.series_from_json(dom, s)
                                for s in obj["g"]]])
        a_mat = textio.matrix_from_json(dom, obj["A"])
        q = textio.series_from_json(dom, obj["q"])
        return ExtensionCertificate(spec, ideal, g0, g, a_mat, q,
                                    int(obj["prec"]), obj.get("audit", []))


def _sigma_ring(dom: Domain, e: RingElem, i: int) -> RingElem:
    return dom.sigma_pow_ring(e, i)


def extend(j_ideal: IdealLattice, g: SeriesMatrix, prec: int
           ) -> ExtensionCertificate:
    """Inductive construction of the certificate (A, q) for given J and g.

    At each order n the obstruction s_n is written inside J * sigma^n(J)
    to produce A_n, and q_n is read off (with both row components cross
    checked). A failed membership aborts with ConstIdealUnderestimate
    carrying the strictly larger lower bound J + s_n * sigma^n(J)^(-1).
    """
    dom = g.dom
    if g.shape != (1, 2):
        raise SkewError("generator row must be 1x2")
    f1, f2 = g.rows[0]
    for f in (f1, f2):
        if f.is_known_zero or f.valuation() != 0:
            raise SkewError("generator row entries must have valuation 0")
        if not f.ring:
            raise SkewError("generator row must be integral")
    kt = g.known_to
    if kt is not None and kt < prec + 1:
        raise PrecisionError(
            f"need coefficients through order {prec}", deficit=prec + 1 - kt)
    a1 = f1.coeff(0).as_ring()
    a2 = f2.coeff(0).as_ring()
    if from_ring_generators(dom, [a1, a2]) != j_ideal:
        raise SkewError("lowest coefficients do not generate the given ideal")
    j_frac = j_ideal.to_frac()

    def grow(i: int) -> list[RingElem]:
        return [f1.coeff(i).as_ring(), f2.coeff(i).as_ring()]

    a_mats: list[list[list[RingElem]]] = [
        [[dom.one, dom.zero], [dom.zero, dom.one]]
    ]
    q_coeffs: list[FieldElem] = [dom.fone]
    audit = []
    for n in range(1, prec + 1):
        sig_a1 = _sigma_ring(dom, a1, n)
        sig_a2 = _sigma_ring(dom, a2, n)
        # srow = sum_{i=1..n} g_i sigma^i(A_{n-i})
        srow = [dom.zero, dom.zero]
        for i in range(1, n + 1):
            gi = grow(i)
            am = a_mats[n - i]
            for col in range(2):
                srow[col] = srow[col] + (
                    gi[0] * _sigma_ring(dom, am[0][col], i)
                    + gi[1] * _sigma_ring(dom, am[1][col], i)
                )
        s_n = srow[0] * sig_a2 - srow[1] * sig_a1
        if s_n:
            try:
                c = ideals.express_in_product(
                    s_n.to_field(), (a1.to_field(), a2.to_field()),
                    (sig_a1.to_field(), sig_a2.to_field()))
            except MembershipError:
                inv_sig_j = j_ideal.sigma(n).to_frac().inverse()
                enlarged = j_frac.add(inv_sig_j.scale(s_n.to_field()))
                if not enlarged.is_integral:
                    raise SkewError("enlarged constant ideal is not integral")
                raise ConstIdealUnderestimate(enlarged.lat, n, s_n) from None
            a_n = [[-c[0][1], c[0][0]], [-c[1][1], c[1][0]]]
        else:
            c = [[dom.zero, dom.zero], [dom.zero, dom.zero]]
            a_n = [[dom.zero, dom.zero], [dom.zero, dom.zero]]
        a_mats.append(a_n)
        w = [
            srow[col] + a1 * a_n[0][col] + a2 * a_n[1][col]
            for col in range(2)
        ]
        if w[0] * sig_a2 != w[1] * sig_a1:
            raise SkewError(f"induction invariant failed at order {n}")
        q_n = w[0].to_field() / sig_a1.to_field()
        if sig_a2 and q_n * sig_a2.to_field() != w[1].to_field():
            raise SkewError(f"q cross-check failed at order {n}")
        q_coeffs.append(q_n)
        audit.append({
            "n": n,
            "s_n": textio.format_ring_elem(s_n),
            "c": [[textio.format_ring_elem(c[j][k]) for k in range(2)]
                  for j in range(2)],
        })
    a_entries = [[None, None], [None, None]]
    for r in range(2):
        for col in range(2):
            items = [(i, a_mats[i][r][col].to_field())
                     for i in range(prec + 1)]
            a_entries[r][col] = TruncatedSeries.from_coeff_map(
                dom, items, prec + 1)
    a_series = SeriesMatrix(dom, a_entries)
    q = TruncatedSeries.from_coeff_map(
        dom, [(i, q_coeffs[i]) for i in range(prec + 1)], prec + 1)
    cert = ExtensionCertificate(dom.spec, j_ideal, (a1, a2), g, a_series, q,
                                prec, audit)
    report = verify_extension_certificate(cert)
    if not report.ok:
        raise SkewError(
            "internal verification failed: "
            + "; ".join(line for line in report.lines() if line.startswith("FAIL")))
    return cert


def verify_extension_certificate(cert: ExtensionCertificate) -> VerifyReport:
    """Independent recomputation of every certificate invariant."""
    from .domains import get_domain

    dom = get_domain(cert.spec)
    rep = VerifyReport()
    a1, a2 = cert.g0
    rep.add("lowest coefficients generate the ideal",
            from_ring_generators(dom, [a1, a2]) == cert.ideal)
    ok_low = True
    for f, a in zip(cert.g.rows[0], (a1, a2)):
        ok_low = ok_low and not f.is_known_zero and f.valuation() == 0 \
            and f.lowest() == a.to_field()
    rep.add("generator row has valuation 0 with lowest coefficients g0", ok_low)
    a0 = cert.A.coeff_matrix(0)
    rep.add("A starts at the identity matrix",
            a0[0][0] == dom.fone and a0[1][1] == dom.fone
            and not a0[0][1] and not a0[1][0])
    rep.add("A is integral",
            all(s.ring for row in cert.A.rows for s in row))
    rep.add("q has lowest coefficient 1 at order 0",
            not cert.q.is_known_zero and cert.q.valuation() == 0
            and cert.q.lowest() == dom.fone)
    lhs = [mul(cert.q, TruncatedSeries.const(dom, a)) for a in (a1, a2)]
    rhs = (cert.g @ cert.A).rows[0]
    first_bad = None
    verified = None
    for left, right in zip(lhs, rhs):
        diff = left - right
        if diff.coeffs:
            order = diff.val
            first_bad = order if first_bad is None else min(first_bad, order)
        else:
            bound = diff.known_to
            if bound is not None:
                verified = bound if verified is None else min(verified, bound)
    if first_bad is not None:
        rep.add("defining identity q*g0 = g*A", False,
                "first differing order", first_bad)
    elif verified is not None and verified <= cert.prec:
        rep.add("defining identity q*g0 = g*A", False,
                f"verified only below order {verified}, certificate claims {cert.prec}")
    else:
        rep.add("defining identity q*g0 = g*A", True)
    # q maps the extended ideal into R, so q*g0 must be integral; its
    # higher coefficients are generally NOT in the ideal (only lowest ones)
    member_ok = True
    for left in lhs:
        for j, coef in enumerate(left.coeffs):
            if left.val + j > cert.prec:
                break
            if not coef.is_integral:
                member_ok = False
    rep.add("q*g0 has integral coefficients", member_ok)
    return rep


def extend_with_repair(gens: list[TruncatedSeries], prec: int,
                       stall_depth: int = DEFAULT_DEPTH):
    """Driver loop: start from the lowest-coefficient ideal and repair.

    Returns (certificate, repairs, normalized) where repairs counts the
    ConstIdealUnderestimate rounds taken.
    """
    norm = _normalized_ring_gens(gens)
    dom = norm[0].dom
    lowests = [g.lowest().as_ring() for g in norm]
    j_ideal = from_ring_generators(dom, lowests)
    repairs = 0
    while True:
        if len(norm) == 2 and from_ring_generators(dom, lowests) == j_ideal:
            row = SeriesMatrix(dom, [list(norm)])
            combos = [
                [TruncatedSeries.const(dom, dom.fone if i == j else dom.fzero)
                 for j in range(2)]
                for i in range(2)
            ]
            normalized = NormalizedGenerators(row, combos)
        else:
            normalized = normalize_generators(j_ideal, norm, stall_depth)
        try:
            cert = extend(j_ideal, normalized.row, prec)
            return cert, repairs, normalized
        except ConstIdealUnderestimate as err:
            if err.enlarged == j_ideal:
                raise SkewError("repair loop failed to enlarge the ideal")
            j_ideal = err.enlarged
            repairs += 1
