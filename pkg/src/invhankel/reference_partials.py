"""Hand-derived partial derivatives of the objectives, as originally published.

They are kept as an independent check on :func:`objectives.grad` and are
never used for computation.  Transcription is literal apart from two
repairs needed to parse: a missing leading ``+`` on the ``u^2`` row of
``dh1/ds`` and an unbalanced ``)`` in the last row of ``dh1/du``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .objectives import BivariatePoly, build, grad, parse_poly

PUBLISHED = {
    ("g", "s"): (
        "288*(1-s^2)*(-3*s^3+5*s^2+3*s-1)*u^4"
        " - 192*(70*s^5-15*s^4-152*s^3-18*s^2+82*s+9)*u^3"
        " + 96*(s-1)*(246*s^4+306*s^3-142*s^2-187*s-3)*u^2"
        " - 192*(66*s^5+15*s^4-20*s^3+18*s^2-12*s-9)*u"
        " + 96*s*(13*s^4-45*s^3+90*s^2+27*s-90)"
    ),
    ("g", "u"): (
        "576*(s-1)^2*(s+1)^2*(s^2-2*s-1)*u^3"
        " + 192*(1-s^2)*(35*s^4-9*s^3-79*s^2-27*s+44)*u^2"
        " + 192*(s-1)^2*(s+1)*(41*s^3+53*s^2-18*s-21)*u"
        " + 192*s*(1-s^2)*(11*s^3+3*s^2+6*s+9)"
    ),
    ("g1", "s"): (
        "288*(s^2-1)*(3*s^3-5*s^2-s+1)*u^4"
        " - 192*(70*s^5-15*s^4-80*s^3-18*s^2+22*s+9)*u^3"
        " + 96*(246*s^5+60*s^4-316*s^3-45*s^2+76*s+3)*u^2"
        " - 192*(66*s^5+15*s^4-92*s^3+18*s^2+48*s-9)*u"
        " + 96*s*(13*s^4-45*s^3-48*s^2+27*s+24)"
    ),
    ("g1", "u"): (
        "576*s*(s+1)^2*(s-1)^2*(s-2)*u^3"
        " + 192*(1-s^2)*(35*s^4-9*s^3-25*s^2-27*s+8)*u^2"
        " - 192*s*(1-s^2)*(41*s^3+12*s^2-38*s-3)*u"
        " + 192*(1-s^2)*(11*s^4+3*s^3-12*s^2+9*s+12)"
    ),
    ("h", "s"): (
        "321408*(s^2-1)*(3*s^3-5*s^2-3*s+1)*u^4"
        " - 768*(3242*s^5-1755*s^4-5944*s^3+810*s^2+2702*s+81)*u^3"
        " + 384*(s-1)*(8682*s^4+20562*s^3-7646*s^2-17285*s-837)*u^2"
        " - 768*(+870*s^5+1755*s^4+284*s^3-810*s^2-432*s-81)*u"
        " + 384*s*(1192*s^4-7695*s^3+12150*s^2+4617*s-12150)"
    ),
    ("h", "u"): (
        "642816*(s+1)^2*(s-1)^2*(s^2-2*s-1)*u^3"
        " + 768*(1-s^2)*(1621*s^4-1053*s^3-2837*s^2-243*s+1216)*u^2"
        " + 768*(1+s)*(s-1)^2*(1447*s^3+3823*s^2-1782*s-2619)*u"
        " + 768*s*(1-s^2)*(145*s^3+351*s^2+216*s+81)"
    ),
    ("h1", "s"): (
        "321408*(s^2-1)*(3*s^3-5*s^2-s+1)*u^4"
        " - 768*(3242*s^5-1755*s^4+1832*s^3+810*s^2-4642*s+81)*u^3"
        " + 384*(8682*s^5+11880*s^4-16004*s^3-9639*s^2+5108*s+837)*u^2"
        " - 768*(870*s^5+1755*s^4-7492*s^3-810*s^2+6912*s-81)*u"
        " + 384*s*(1192*s^4-7695*s^3-1728*s^2+4617*s+864)"
    ),
    ("h1", "u"): (
        "642816*(s+1)^2*(s-1)^2*s*(s-2)*u^3"
        " + 768*(1-s^2)*(1621*s^4-1053*s^3+2995*s^2-243*s-3968)*u^2"
        " + 768*s*(1-s^2)*(1447*s^3+2376*s^2-2554*s-837)*u"
        " + 768*(1-s^2)*(145*s^4+351*s^3-1728*s^2+81*s+1728)"
    ),
}


@dataclass(frozen=True)
class PartialMismatch:
    objective: str
    variable: str
    #: (i, j, published, derived) for every monomial s^i u^j that differs
    monomials: tuple[tuple[int, int, int, int], ...]

    @property
    def matches(self) -> bool:
        return not self.monomials


def published_partial(which: str, var: str) -> BivariatePoly:
    return parse_poly(PUBLISHED[(which, var)], f"d{which}/d{var} (published)")


def compare_partials(which: str) -> list[PartialMismatch]:
    """Compare both published partials of ``which`` against formal differentiation."""
    derived = dict(zip("su", grad(build(which))))
    report = []
    for var in "su":
        a = published_partial(which, var).coeffs
        b = derived[var].coeffs
        shape = (max(a.shape[0], b.shape[0]), max(a.shape[1], b.shape[1]))
        diffs = []
        for i in range(shape[0]):
            for j in range(shape[1]):
                pa = int(a[i, j]) if i < a.shape[0] and j < a.shape[1] else 0
                pb = int(b[i, j]) if i < b.shape[0] and j < b.shape[1] else 0
                if pa != pb:
                    diffs.append((i, j, pa, pb))
        report.append(PartialMismatch(which, var, tuple(diffs)))
    return report
