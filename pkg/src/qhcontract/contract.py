"""Contraction machinery: substitutions, relation spans, subspace limits.

A relation set is contracted by viewing it as a subspace of the degree-2
word space and taking the limit of that subspace at q = 1, not by taking
naive term-by-term limits: individual substituted relations can carry
(q-1)-poles that only cancel against other relations.  The limit is
computed by the standard flat-limit loop: make each row (q-1)-primitive,
evaluate at q = 1, and while the rank drops, replace one row by a
vanishing combination divided by (q-1).  Each replacement strictly lowers
the (q-1)-valuation of the row wedge, so the loop terminates.

All linear algebra here is fraction-free (Bareiss) over Q[q,h]; rows of
localized scalars are lifted to polynomial rows by clearing their unit
denominators first, which does not change any span.
"""

from __future__ import annotations

from fractions import Fraction

from .coeffring import Coeff, QHPoly
from .superalgebra import AlgebraSpec, Element


class MissingImage(KeyError):
    """A generator without an image was hit during substitution."""


class DegreeError(ValueError):
    """A relation span was built from non-quadratic relations."""


class RankDrop(Exception):
    """The subspace limit could not restore the original rank."""


class Substitution:
    """Linear change of generators, extended homomorphically to words."""

    def __init__(self, source: AlgebraSpec, target: AlgebraSpec, images,
                 check_invertible: bool = True):
        self.source = source
        self.target = target
        self.images = dict(images)
        for gid, img in self.images.items():
            if not isinstance(img, Element) or img.algebra is not target:
                raise ValueError("images must be elements of the target algebra")
            if img.is_zero() or not img.is_homogeneous(1):
                raise ValueError(
                    f"image of {source.generator(gid).name} must be homogeneous of degree 1"
                )
        if check_invertible:
            if len(self.images) != len(source.generators) or len(
                source.generators
            ) != len(target.generators):
                raise ValueError("invertibility requires a total map between "
                                 "algebras of equal rank")
            from .matalg import NotInvertible
            try:
                self.matrix().inverse()
            except NotInvertible:
                raise ValueError("substitution is not invertible over the scalars")

    @classmethod
    def by_name(cls, source: AlgebraSpec, target: AlgebraSpec, images,
                check_invertible: bool = True) -> "Substitution":
        """Images keyed by source generator name."""
        return cls(
            source,
            target,
            {source.generator_named(n).gid: img for n, img in images.items()},
            check_invertible,
        )

    def matrix(self):
        """Coefficient matrix of the induced map on the degree-1 space."""
        from .matalg import ScalMat
        n = len(self.source.generators)
        rows = []
        for i in range(n):
            img = self.images.get(i)
            if img is None:
                raise MissingImage(self.source.generator(i).name)
            rows.append([img.coefficient((j,)) for j in range(n)])
        return ScalMat(rows)

    def apply(self, e: Element) -> Element:
        """Homomorphic extension: words map to free products of images."""
        if e.algebra is not self.source:
            raise ValueError("element does not belong to the source algebra")
        out = self.target.zero()
        for w, c in e.terms.items():
            acc = self.target.scalar(c)
            for gid in w:
                img = self.images.get(gid)
                if img is None:
                    raise MissingImage(self.source.generator(gid).name)
                acc = acc.free_mul(img)
            out = out + acc
        return out


def apply_subst(e: Element, s: Substitution) -> Element:
    return s.apply(e)


class RelationSpan:
    """Rows of degree-2 relation coefficients over a fixed word basis."""

    def __init__(self, algebra: AlgebraSpec, basis, rows):
        self.algebra = algebra
        self.basis = [tuple(w) for w in basis]
        self.rows = [list(r) for r in rows]
        for r in self.rows:
            if len(r) != len(self.basis):
                raise ValueError("row length does not match basis")

    def rank(self) -> int:
        return _rank(_poly_rows(self.rows))

    def to_elements(self):
        out = []
        for row in self.rows:
            e = Element(self.algebra, dict(zip(self.basis, row)))
            if not e.is_zero():
                out.append(e)
        return out

    def basis_names(self):
        return [
            tuple(self.algebra.generator(g).name for g in w) for w in self.basis
        ]

    def __repr__(self) -> str:
        return f"RelationSpan({len(self.rows)} rows, rank {self.rank()})"


def relation_span(relations, algebra: AlgebraSpec | None = None) -> RelationSpan:
    """Coordinates of quadratic relations in the full degree-2 word basis."""
    relations = list(relations)
    if algebra is None:
        if not relations:
            raise ValueError("an algebra is required for an empty relation list")
        algebra = relations[0].algebra
    basis = algebra.degree2_words()
    rows = []
    for r in relations:
        if r.algebra is not algebra:
            raise ValueError("relations belong to different algebras")
        if r.is_zero() or not r.is_homogeneous(2):
            raise DegreeError(f"{r} is not homogeneous of degree 2")
        rows.append([r.coefficient(w) for w in basis])
    return RelationSpan(algebra, basis, rows)


def span_equal(a: RelationSpan, b: RelationSpan) -> bool:
    """True iff both spans have equal rank which the union also has."""
    if a.basis_names() != b.basis_names():
        raise ValueError("spans use different bases")
    ra = _rank(_poly_rows(a.rows))
    rb = _rank(_poly_rows(b.rows))
    if ra != rb:
        return False
    return _rank(_poly_rows(a.rows) + _poly_rows(b.rows)) == ra


def limit_span(sp: RelationSpan) -> RelationSpan:
    """Limit of the row span at q = 1, returned over polynomials in h."""
    rows = []
    for row in sp.rows:
        poly = _clear_row(row)
        if any(not p.is_zero() for p in poly):
            rows.append(_primitive(poly))
    if not rows:
        return RelationSpan(sp.algebra, sp.basis, [])
    r0 = _rank(rows)
    for _ in range(10000):
        evaluated = [[p.at_q1() for p in row] for row in rows]
        if _rank(evaluated) == r0:
            out = [[Coeff(p) for p in _primitive(row)] for row in evaluated]
            return RelationSpan(sp.algebra, sp.basis, out)
        combo = _left_kernel_vector(evaluated)
        v = [QHPoly.zero()] * len(sp.basis)
        for t, row in zip(combo, rows):
            if t.is_zero():
                continue
            v = [acc + t * p for acc, p in zip(v, row)]
        target = next(i for i, t in enumerate(combo) if not t.is_zero())
        if all(p.is_zero() for p in v):
            # the original rows were dependent; dropping one keeps the span
            del rows[target]
        else:
            rows[target] = _primitive(v)
    raise RankDrop("subspace limit did not stabilize")  # pragma: no cover


# -- fraction-free helpers ----------------------------------------------------


def _clear_row(row):
    """Lift a Coeff row to a QHPoly row by clearing its unit denominators."""
    m = max((c.qpow for c in row), default=0)
    k = max((c.q1pow for c in row), default=0)
    return [c.num.mul_qpow(m - c.qpow).mul_q1pow(k - c.q1pow) for c in row]


def _primitive(row):
    """Strip common q, h, (q-1) and rational content; normalize the leading sign.

    All stripped factors are units of the ambient fraction field, so the row
    span is unchanged; only the (q-1) part matters for the evaluation at
    q = 1, the rest keeps the output canonical.
    """
    nz = [p for p in row if not p.is_zero()]
    if not nz:
        return list(row)
    s = min(p.q_valuation() for p in nz)
    if s:
        row = [p.divide_q(s) if not p.is_zero() else p for p in row]
    sh = min(p.h_valuation() for p in nz)
    if sh:
        row = [p.divide_h(sh) if not p.is_zero() else p for p in row]
    t = min(p.q1_valuation() for p in nz)
    for _ in range(t):
        row = [p.div_q1() if not p.is_zero() else p for p in row]
    content = Fraction(0)
    for p in row:
        for c in p.terms.values():
            content = _frac_gcd(content, c)
    if content and content != 1:
        row = [p.scaled(1 / content) for p in row]
    for p in row:
        if not p.is_zero():
            if p.leading()[1] < 0:
                row = [-x for x in row]
            break
    return list(row)


def _frac_gcd(a: Fraction, b: Fraction) -> Fraction:
    if not a:
        return abs(b)
    if not b:
        return abs(a)
    num = _int_gcd(a.numerator, b.numerator)
    den = a.denominator * b.denominator // _int_gcd(a.denominator, b.denominator)
    return Fraction(num, den)


def _int_gcd(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _poly_rows(rows):
    return [_clear_row(row) for row in rows]


def _rank(rows) -> int:
    """Rank over the fraction field, by Bareiss elimination on Q[q,h] rows."""
    m = [list(r) for r in rows if any(not p.is_zero() for p in r)]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    prev = QHPoly.one()
    for col in range(ncols):
        piv = None
        for r in range(rank, len(m)):
            if not m[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, len(m)):
            cr = m[r][col]
            for c in range(col + 1, ncols):
                m[r][c] = (m[r][c] * p - cr * m[rank][c]).exact_div(prev)
            m[r][col] = QHPoly.zero()
        prev = p
        rank += 1
        if rank == len(m):
            break
    return rank


def _left_kernel_vector(rows):
    """One nonzero combination of the rows summing to zero (Bareiss tracked).

    Only called when the rows are dependent; the identity block appended on
    the right carries the combination in terms of the original rows.
    """
    nrows = len(rows)
    ncols = len(rows[0])
    m = [
        list(rows[i]) + [QHPoly.one() if j == i else QHPoly.zero() for j in range(nrows)]
        for i in range(nrows)
    ]
    rank = 0
    prev = QHPoly.one()
    for col in range(ncols):
        piv = None
        for r in range(rank, nrows):
            if not m[r][col].is_zero():
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            cr = m[r][col]
            for c in range(col + 1, ncols + nrows):
                m[r][c] = (m[r][c] * p - cr * m[rank][c]).exact_div(prev)
            m[r][col] = QHPoly.zero()
        prev = p
        rank += 1
        if rank == nrows:
            break
    for r in range(nrows):
        if all(m[r][c].is_zero() for c in range(ncols)):
            combo = m[r][ncols:]
            if any(not t.is_zero() for t in combo):
                return combo
    raise RankDrop("no dependency found among the rows")  # pragma: no cover
