"""The full verification battery, one check per claim group.

Each check runs a complete derivation from scratch and compares exactly;
there are no tolerances anywhere.  The battery is what the command-line
``verify-paper`` command executes, and the acceptance tests assert the
same results one by one.  A falsified check reports a concrete nonzero
witness; it is a statement about the claim, not about the engine.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .coeffring import Coeff, QHPoly
from .contract import limit_span, relation_span, span_equal
from .matalg import ScalMat, limit_mat, qybe_residual, rtt_residual, scale_mat, similarity
from .rewrite import orient
from . import grgroup

_SEED = 20260810


@dataclass
class CheckResult:
    number: int
    name: str
    ok: bool
    witness: str | None = None
    details: tuple = ()


def check_plane_contraction() -> CheckResult:
    qp, hp = grgroup.q_plane(), grgroup.h_plane()
    sub = grgroup.plane_substitution(qp, hp)
    sp = limit_span(relation_span([sub.apply(r) for r in qp.relations], hp))
    target = relation_span(hp.relations, hp)
    ok = span_equal(sp, target)
    return CheckResult(
        1,
        "plane contraction reproduces the h-plane relation",
        ok,
        None if ok else f"limit span rank {sp.rank()} differs from target",
        tuple(str(e) for e in sp.to_elements()),
    )


def check_dual_plane_contraction() -> CheckResult:
    qdp, hdp = grgroup.q_dual_plane(), grgroup.h_dual_plane()
    sub = grgroup.dual_plane_substitution(qdp, hdp)
    sp = limit_span(relation_span([sub.apply(r) for r in qdp.relations], hdp))
    target = relation_span(hdp.relations, hdp)
    ok = span_equal(sp, target)
    return CheckResult(
        2,
        "dual plane contraction reproduces the h-dual relations",
        ok,
        None if ok else "limit span differs from the h-dual span",
        tuple(str(e) for e in sp.to_elements()),
    )


def check_relation_contraction() -> CheckResult:
    grq, grh = grgroup.gr_q2(), grgroup.gr_h2()
    sub = grgroup.q_to_h_substitution(grq, grh)
    sp = relation_span([sub.apply(r) for r in grq.relations], grh)
    lim = limit_span(sp)
    target = relation_span(grh.relations, grh)
    ok = sp.rank() == 10 and lim.rank() == 10 and target.rank() == 10
    ok = ok and span_equal(lim, target)
    return CheckResult(
        3,
        "substituted q-relations contract onto the h-relations (rank 10)",
        ok,
        None
        if ok
        else f"ranks: substituted {sp.rank()}, limit {lim.rank()}, target {target.rank()}",
    )


def check_covariance() -> CheckResult:
    grh = grgroup.gr_h2()
    span = grgroup.combined_covariance_span(grh)
    target = relation_span(grh.relations, grh)
    ok = span.rank() == 10 and span_equal(span, target)
    return CheckResult(
        4,
        "covariance of both transformation directions spans the h-relations",
        ok,
        None if ok else f"combined covariance rank {span.rank()}",
    )


def check_q_rtt() -> CheckResult:
    grq = grgroup.gr_q2()
    res = rtt_residual(grgroup.rq_matrix(), grgroup.entry_matrix(grq), orient(grq), sign=-1)
    ok = res.is_zero()
    return CheckResult(
        5,
        "q-side tensor relation R_q A1 A2 = -A2 A1 R_q",
        ok,
        None if ok else _first_alg_entry(res),
    )


def check_r_matrix_contraction() -> CheckResult:
    gg = grgroup.g_matrix().kron(grgroup.g_matrix())
    contracted = scale_mat(
        Coeff.rational(1) / Coeff.rational(2),
        limit_mat(similarity(gg, grgroup.rq_matrix())),
    )
    ok = contracted == grgroup.rh_matrix()
    return CheckResult(
        6,
        "conjugated R_q has the stated q->1 limit after dividing by 2",
        ok,
        None if ok else "contracted matrix differs from R_h",
        tuple(str(contracted).splitlines()),
    )


def check_h_rtt() -> CheckResult:
    grh = grgroup.gr_h2()
    res = rtt_residual(grgroup.rh_matrix(), grgroup.entry_matrix(grh), orient(grh), sign=-1)
    ok = res.is_zero()
    return CheckResult(
        7,
        "h-side tensor relation R_h A1 A2 = -A2 A1 R_h",
        ok,
        None if ok else _first_alg_entry(res),
    )


def check_qybe() -> CheckResult:
    res_q = qybe_residual(grgroup.rq_matrix())
    res_h = qybe_residual(grgroup.rh_matrix())
    ok = (not res_q.is_zero()) and res_h.is_zero()
    witness = None
    if res_q.is_zero():
        witness = "R_q unexpectedly satisfies the Yang-Baxter equation"
    elif not res_h.is_zero():
        witness = "R_h residual " + res_h.entries_str(nonzero_only=True)[0]
    return CheckResult(
        8,
        "R_q violates the Yang-Baxter equation, R_h satisfies it",
        ok,
        witness,
        (f"R_q residual sample: {res_q.entries_str(nonzero_only=True)[0]}",)
        if not res_q.is_zero()
        else (),
    )


def check_rq_limit() -> CheckResult:
    ok = limit_mat(grgroup.rq_matrix()) == ScalMat.identity(4).scale(2)
    return CheckResult(9, "R_q tends to twice the identity at q = 1", ok)


def check_inverses() -> CheckResult:
    grh = grgroup.gr_h2()
    report = grgroup.inverse_check(grh, orient(grh))
    ok = report.left_ok and report.right_ok and report.exchange_ok
    pieces = []
    if not report.left_ok:
        pieces.append("left inverse: " + _first_alg_entry(report.left_residual))
    if not report.right_ok:
        pieces.append("right inverse: " + _first_alg_entry(report.right_residual))
    if not report.exchange_ok:
        pieces.append("determinant exchange: " + _first_alg_entry(report.exchange_residual))
    return CheckResult(
        10,
        "one-sided inverses produce the stated determinants and exchange identity",
        ok,
        "; ".join(pieces) if pieces else None,
        (
            "the stated right inverse and right determinant fail as written; "
            "flipping both h-signs in the right inverse and using "
            "gamma*beta + delta*alpha makes every identity check out",
        )
        if not ok
        else (),
    )


def check_product_theorem() -> CheckResult:
    spec = grgroup.product_pair_algebra()
    rs = orient(spec)
    bad = [label for label, res in grgroup.product_theorem(spec, rs) if not res.is_zero()]
    even = grgroup.product_entries_even(spec, rs)
    ok = not bad and even
    witness = None
    if bad:
        witness = "nonzero residuals: " + ", ".join(bad)
    elif not even:
        witness = "a product entry has an odd-length normal word"
    return CheckResult(
        11,
        "product of two anticommuting generator matrices satisfies the six "
        "q-commutation relations with even entries",
        ok,
        witness,
    )


def check_property_battery(samples: int = 1000) -> CheckResult:
    """Confluence, rewriting laws, scalar ring laws, substitution inverses."""
    rng = random.Random(_SEED)
    problems = []

    grq, grh = grgroup.gr_q2(), grgroup.gr_h2()
    systems = [("q-relations", grq, orient(grq)), ("h-relations", grh, orient(grh))]
    for label, _spec, rs in systems:
        if rs.check_confluence(4):
            problems.append(f"{label} are not confluent at degree 4")

    for i in range(samples):
        _label, spec, rs = systems[i % 2]
        a = _random_element(rng, spec)
        b = _random_element(rng, spec)
        na, nb = rs.normal_form(a), rs.normal_form(b)
        if rs.normal_form(na) != na:
            problems.append(f"normal form not idempotent on sample {i}")
            break
        if rs.normal_form(a + b) != rs.normal_form(na + nb):
            problems.append(f"normal form not additive on sample {i}")
            break
        if rs.normal_form(a * b) != rs.normal_form(na * nb):
            problems.append(f"normal form not multiplicative on sample {i}")
            break

    one = Coeff.one()
    qm1 = Coeff.q() - one
    for i in range(samples):
        a, b, c = (_random_coeff(rng) for _ in range(3))
        if (a + b) + c != a + (b + c) or a * (b + c) != a * b + a * c or a * b != b * a:
            problems.append(f"scalar ring law failed on sample {i}")
            break
        p = _random_coeff(rng, q1_free=True)
        r = _random_coeff(rng, q1_free=True)
        if (p + r).limit_q1() != p.limit_q1() + r.limit_q1():
            problems.append(f"limit not additive on sample {i}")
            break
        if not (p * qm1).limit_q1().is_zero():
            problems.append(f"limit of (q-1)-multiple nonzero on sample {i}")
            break

    s9 = grgroup.q_to_h_substitution(grq, grh)
    s15 = grgroup.h_to_q_substitution(grh, grq)
    for g in grq.generators:
        e = grq.word_element((g.gid,))
        if s15.apply(s9.apply(e)) != e:
            problems.append(f"substitution round trip failed on {g.name}")
    for g in grh.generators:
        e = grh.word_element((g.gid,))
        if s9.apply(s15.apply(e)) != e:
            problems.append(f"substitution round trip failed on {g.name}")

    return CheckResult(
        12,
        f"property battery: confluence, rewriting and scalar laws on {samples} "
        "random samples, substitution round trips",
        not problems,
        "; ".join(problems) if problems else None,
    )


def _random_coeff(rng, q1_free=False) -> Coeff:
    from fractions import Fraction

    terms = {}
    for _ in range(rng.randint(1, 3)):
        terms[(rng.randint(0, 2), rng.randint(0, 2))] = Fraction(
            rng.randint(-3, 3), rng.randint(1, 3)
        )
    return Coeff(QHPoly(terms), rng.randint(0, 2), 0 if q1_free else rng.randint(0, 2))


def _random_element(rng, spec, max_degree=2, max_terms=3):
    from .superalgebra import Element

    n = len(spec.generators)
    terms = {}
    for _ in range(rng.randint(0, max_terms)):
        word = tuple(rng.randrange(n) for _ in range(rng.randint(0, max_degree)))
        terms[word] = _random_coeff(rng)
    return Element(spec, terms)


def _first_alg_entry(mat) -> str:
    entries = mat.nonzero_entries()
    if not entries:
        return "all entries zero"
    i, j, e = entries[0]
    more = f" (+{len(entries) - 1} more)" if len(entries) > 1 else ""
    return f"entry ({i},{j}): {e}{more}"


ALL_CHECKS = (
    check_plane_contraction,
    check_dual_plane_contraction,
    check_relation_contraction,
    check_covariance,
    check_q_rtt,
    check_r_matrix_contraction,
    check_h_rtt,
    check_qybe,
    check_rq_limit,
    check_inverses,
    check_product_theorem,
    check_property_battery,
)


def run_all():
    return [check() for check in ALL_CHECKS]
