"""Published closed forms for the instance coefficients and the polynomial f(m).

Every form is written once, generically in its argument: passing an integer
evaluates it to a :class:`~vcert.exact.CLin`, passing ``PolyM.m()`` expands it
symbolically to a :class:`~vcert.exact.CLinPolyM` (every printed denominator
must then divide exactly, which is itself checked).

The forms are transcribed as printed.  :func:`compare_forms` relates them to
computed values and names the relation found: ``exact``, ``negated``, or
``negated-swapped`` (negated after exchanging the printed denominators of
``xi1`` and ``xi2``).
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .exact import CLin, CLinPolyM, PolyM, poly_divexact

__all__ = [
    "F_COEFFS",
    "f_poly",
    "alpha0",
    "beta0",
    "gamma0p",
    "delta0p",
    "xi",
    "zeta",
    "CLOSED_FORMS",
    "closed_form_poly",
    "relation",
    "compare_forms",
]

# f(m), lowest degree first
F_COEFFS = (
    -5823421556567940, -13295522326219116, -7085484924471269, -1746250016719384,
    -310878749441408, -41974581663344, -4071611633914, -252490022696, -6600424292,
    133103900, 7930183,
)

_ALPHA0 = (-60354201600, -25041744000, -11025031680, 2218757736, 4290676052,
           2061162870, 561027415, 98527338, 11580231, 907530, 45565, 1326, 17)
_BETA0 = (-5748019200, -2706163200, -1031677920, 416682968, 502648380, 206064690,
          49210811, 7683234, 814359, 58630, 2769, 78, 1)
_GAMMA0P = (784604620800, 322088054400, 146756039040, -84093309768, -95650195420,
            -30695547818, -491574005, 2565009941, 883762815, 155173941, 16374865,
            1047527, 37505, 577)
_DELTA0P = (264931430400, 137634854400, 43159534560, -53918986488, -38531775476,
            -7272782558, 1442243915, 1002076031, 232782927, 31029951, 2612465,
            140117, 4489, 67)
_ZETA1_SEXTIC = (141660, 743199, 541013, 113042, 10914, 559, 13)
_ZETA2_SEXTIC = (5315868, 12054375, 7149347, 1390950, 129602, 6435, 143)

XI_NUMERATORS = {0: -2284800, 1: -17821440, 2: -18670080}
XI_DENOMINATORS = {0: (1, 11, 13), 1: (5, 7, 13), 2: (3, 9, 13)}


def f_poly() -> PolyM:
    return PolyM(F_COEFFS)


# ---------------------------------------------------------------------------
# generic arithmetic over integers (exact rationals) or PolyM

def _symbolic(m) -> bool:
    return isinstance(m, PolyM)


def _arg(m):
    return m if _symbolic(m) else Fraction(m)


def _div(a, b):
    if isinstance(b, (int, Fraction)):
        return a * (Fraction(1) / b)
    if _symbolic(a):
        return poly_divexact(a, b)
    return a / b


def _horner(cs, m):
    acc = 0
    for x in reversed(cs):
        acc = acc * m + x
    return acc


def _prod(m, shifts):
    out = 1
    for r in shifts:
        out = (m + r) * out
    return out


def _binom_shift(m, top_shift: int, k: int):
    """``binom(m + top_shift, k)``."""
    return _div(_prod(m, [top_shift - j for j in range(k)]), factorial(k))


def _wrap(m, a0, a1=0):
    if _symbolic(m):
        a0 = a0 if isinstance(a0, PolyM) else PolyM.const(a0)
        a1 = a1 if isinstance(a1, PolyM) else PolyM.const(a1)
        return CLinPolyM(a0, a1)
    return CLin(a0, a1)


# ---------------------------------------------------------------------------
# the forms

def alpha0(m):
    m = _arg(m)
    return _wrap(m, _div((m - 13) * (m + 12) * _horner(_ALPHA0, m), factorial(14)))


def beta0(m):
    m = _arg(m)
    v0 = _div((m - 13) * (m + 12) * (m + 13) * (m + 14) * _horner(_BETA0, m), factorial(13) * 8)
    v1 = _div(91 * (241 * m + 738) * (m - 13) * _binom_shift(m, 14, 16), 2 * _prod(m, (2, 3)))
    return _wrap(m, v0, v1)


def gamma0p(m):
    m = _arg(m)
    return _wrap(m, _div((m + 12) * _horner(_GAMMA0P, m), factorial(14)))


def delta0p(m):
    m = _arg(m)
    v0 = -_div((m + 11) * (m + 12) * (m + 14) * _horner(_DELTA0P, m), 2 * factorial(16))
    v1 = _div(33 * (192721 * m + 2502378) * (m - 3) * _binom_shift(m, 14, 16),
              2 * _prod(m, (2, 13)))
    return _wrap(m, v0, v1)


def xi(k: int, m, swap_denominators: bool = False):
    """Printed ``xi_k``; ``swap_denominators`` exchanges the denominators of ``k = 1, 2``."""
    if k not in XI_NUMERATORS:
        raise ValueError("k must be 0, 1 or 2")
    m = _arg(m)
    dk = {1: 2, 2: 1}.get(k, k) if swap_denominators else k
    return _wrap(m, _div(XI_NUMERATORS[k] * _binom_shift(m, 14, 17), _prod(m, XI_DENOMINATORS[dk])))


def zeta(k: int, m):
    m = _arg(m)
    b16 = _binom_shift(m, 14, 16)
    if k == 0:
        v0 = _div(152320 * _horner((2628, 437, 30, 1), m) * _binom_shift(m, 14, 17),
                  _prod(m, (1, 3, 11, 13)))
        v1 = -_div(_horner((-366373782, -26765899, 41305158, 3168931), m) * b16,
                   _prod(m, (2, 3, 13)))
    elif k == 1:
        v0 = _div(8 * _horner(_ZETA1_SEXTIC, m) * _prod(m, (-2, 0, 2, 4, 6, 7, 8, 10, 12, 14)),
                  5 * factorial(13))
        v1 = -_div(15 * _horner((-411762282, -32028341, 18046170, 1595885), m) * b16,
                   _prod(m, (2, 5, 11)))
    elif k == 2:
        v0 = _div(32 * _horner(_ZETA2_SEXTIC, m) * _prod(m, (-2, 0, 2, 4, 5, 6, 8, 10, 12, 14)),
                  factorial(15))
        v1 = -_div(156 * _horner((-55321438, -4454319, 1559062, 152331), m) * b16,
                   _prod(m, (2, 7, 9)))
    else:
        raise ValueError("k must be 0, 1 or 2")
    return _wrap(m, v0, v1)


CLOSED_FORMS: dict = {
    "alpha0": alpha0,
    "beta0": beta0,
    "gamma0p": gamma0p,
    "delta0p": delta0p,
    "xi0": lambda m: xi(0, m),
    "xi1": lambda m: xi(1, m),
    "xi2": lambda m: xi(2, m),
    "zeta0": lambda m: zeta(0, m),
    "zeta1": lambda m: zeta(1, m),
    "zeta2": lambda m: zeta(2, m),
}

_SWAPPED: dict = {
    "xi1": lambda m: xi(1, m, swap_denominators=True),
    "xi2": lambda m: xi(2, m, swap_denominators=True),
}


def closed_form_poly(name: str) -> CLinPolyM:
    """Symbolic expansion of a printed form (every printed denominator divides exactly)."""
    return CLOSED_FORMS[name](PolyM.m())


def _classify(value, printed, swapped=None) -> str:
    if value == printed:
        return "exact"
    if value == -printed:
        return "negated"
    if swapped is not None and value == -swapped:
        return "negated-swapped"
    return "different"


def relation(name: str, value, arg) -> str:
    """Relation of ``value`` to the printed form ``name`` evaluated at ``arg``."""
    printed = CLOSED_FORMS[name](arg)
    swapped = _SWAPPED[name](arg) if name in _SWAPPED else None
    return _classify(value, printed, swapped)


def compare_forms(values: dict) -> dict:
    """``{(name, arg): value}`` -> ``{(name, arg): relation}``."""
    return {key: relation(key[0], val, key[1]) for key, val in values.items()}
