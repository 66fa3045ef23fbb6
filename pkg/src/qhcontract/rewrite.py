"""Orient quadratic relation sets into terminating rewrite rules.

Orientation is a reduced row echelon computation over the localized
coefficient ring in the degree-2 word space: the largest word of each
inter-reduced relation becomes a rule left-hand side, solved with a unit
leading coefficient.  Because the lhs is the largest word of its row, every
rhs word is strictly smaller and reduction terminates.  Cross-family swap
rules u*v -> sign * v*u are added for every pair of generators from
distinct families with a declared sign.

Local confluence is checked by brute force on all words up to a degree
bound: a word reduced starting from any redex must reach the same normal
form.  Failures are returned as data, not raised.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .coeffring import Coeff, NotAUnit
from .superalgebra import AlgebraSpec, Element


class OrientationFailure(Exception):
    """The relation set cannot be turned into a terminating rule system."""


@dataclass(frozen=True)
class RewriteRule:
    lhs: tuple
    rhs: Element


@dataclass(frozen=True)
class OverlapWitness:
    word: tuple
    nf_a: Element
    nf_b: Element

    def describe(self) -> str:
        alg = self.nf_a.algebra
        return f"{alg.word_str(self.word)} -> {self.nf_a} | {self.nf_b}"


class RuleSystem:
    """Oriented rules of one algebra: a map from 2-letter words to elements."""

    def __init__(self, ambient: AlgebraSpec, rules):
        self.ambient = ambient
        self.rules = dict(rules)

    def rule_list(self):
        key = self.ambient.word_key
        return [RewriteRule(w, self.rules[w]) for w in sorted(self.rules, key=key)]

    def degree2_normal_words(self):
        return [w for w in self.ambient.degree2_words() if w not in self.rules]

    def _first_redex(self, word):
        for i in range(len(word) - 1):
            if word[i : i + 2] in self.rules:
                return i
        return None

    def reduce_at(self, word, i, c=None):
        """One rewrite step of coefficient*word at position i, as an Element."""
        rhs = self.rules[word[i : i + 2]]
        pre, post = word[:i], word[i + 2 :]
        out = {}
        for w2, c2 in rhs.terms.items():
            w = pre + w2 + post
            s = out.get(w, Coeff.zero()) + (c2 if c is None else c * c2)
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return Element(self.ambient, out)

    def normal_form(self, e: Element) -> Element:
        """Reduce until no word contains a rule lhs.

        Strategy: rewrite the first reducible factor of the largest reducible
        word.  Termination is guaranteed because every rhs word is strictly
        smaller than its lhs in the multiplication-compatible word order.
        """
        if e.algebra is not self.ambient:
            raise ValueError("element belongs to a different algebra")
        key = self.ambient.word_key
        terms = dict(e.terms)
        while True:
            best = None
            best_i = None
            for w in terms:
                i = self._first_redex(w)
                if i is None:
                    continue
                if best is None or key(w) > key(best):
                    best, best_i = w, i
            if best is None:
                return Element(self.ambient, terms)
            c = terms.pop(best)
            step = self.reduce_at(best, best_i, c)
            for w, cc in step.terms.items():
                s = terms.get(w, Coeff.zero()) + cc
                if s:
                    terms[w] = s
                else:
                    terms.pop(w, None)

    def check_confluence(self, degree_bound: int = 4):
        """Reduce every word of length 3..degree_bound from every redex.

        Returns a list of :class:`OverlapWitness` for words whose normal form
        depends on the first redex chosen; empty means locally confluent up
        to the bound.  A non-empty result is a finding, not an error.
        """
        if degree_bound < 3:
            raise ValueError("degree_bound must be at least 3")
        gids = range(len(self.ambient.generators))
        witnesses = []
        for length in range(3, degree_bound + 1):
            for word in itertools.product(gids, repeat=length):
                redexes = [i for i in range(length - 1) if word[i : i + 2] in self.rules]
                if len(redexes) < 2:
                    continue
                base = None
                for i in redexes:
                    nf = self.normal_form(self.reduce_at(word, i))
                    if base is None:
                        base = nf
                    elif nf != base:
                        witnesses.append(OverlapWitness(word, base, nf))
                        break
        return witnesses


def orient(spec: AlgebraSpec) -> RuleSystem:
    """Build the rule system of a quadratic presentation.

    Relations sharing a leading word are inter-reduced first (full reduced
    echelon form, pivot = largest word, unit pivot required), then each
    surviving row `lhs + tail` becomes the rule `lhs -> -tail`.
    """
    for fam_a, fam_b in itertools.combinations(sorted(spec.families()), 2):
        if spec.cross(fam_a, fam_b) is None:
            raise OrientationFailure(
                f"no cross sign declared for families {fam_a!r} and {fam_b!r}"
            )

    for r in spec.relations:
        if not r.is_homogeneous(2) or r.is_zero():
            raise OrientationFailure(f"relation {r} is not homogeneous of degree 2")

    key = spec.word_key
    pending = list(spec.relations)
    solved = {}  # lhs word -> monic pivot Element (lhs + tail)
    while pending:
        lead = max((e.leading_word() for e in pending), key=key)
        pivot = None
        for e in pending:
            if e.leading_word() == lead and e.terms[lead].is_unit():
                pivot = e
                break
        if pivot is None:
            culprit = next(e for e in pending if e.leading_word() == lead)
            raise OrientationFailure(
                f"leading coefficient {culprit.terms[lead]} of word "
                f"{spec.word_str(lead)} is not a unit"
            )
        pending.remove(pivot)
        try:
            pivot = pivot.scale(pivot.terms[lead].try_inv())
        except NotAUnit:  # pragma: no cover - guarded above
            raise OrientationFailure("non-unit pivot")
        reduced = []
        for e in pending:
            c = e.terms.get(lead)
            if c:
                e = e - pivot.scale(c)
            if not e.is_zero():
                reduced.append(e)
        pending = reduced
        for w, p in list(solved.items()):
            c = p.terms.get(lead)
            if c:
                solved[w] = p - pivot.scale(c)
        solved[lead] = pivot

    rules = {}
    for lead, p in solved.items():
        tail = Element(spec, {w: c for w, c in p.terms.items() if w != lead})
        rhs = -tail
        for w in rhs.terms:
            if key(w) >= key(lead):
                raise OrientationFailure(
                    f"rule for {spec.word_str(lead)} has a non-decreasing "
                    f"right-hand side word {spec.word_str(w)}"
                )
        rules[lead] = rhs

    for u in spec.generators:
        for v in spec.generators:
            if u.family == v.family or u.prec <= v.prec:
                continue
            lhs = (u.gid, v.gid)
            if lhs in rules:
                continue
            sign = spec.cross(u.family, v.family)
            rules[lhs] = Element(spec, {(v.gid, u.gid): Coeff.rational(sign)})

    system = RuleSystem(spec, rules)
    for r in spec.relations:
        if not system.normal_form(r).is_zero():
            raise OrientationFailure(f"declared relation {r} does not reduce to 0")
    return system


def normal_form(e: Element, rs: RuleSystem) -> Element:
    return rs.normal_form(e)


def check_confluence(rs: RuleSystem, degree_bound: int = 4):
    return rs.check_confluence(degree_bound)
