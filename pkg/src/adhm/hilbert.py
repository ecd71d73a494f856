"""Truncated equivariant characters in the variables t, z and u = q^-1.

The coordinate ring of Hom(C^3, C^2) carries an SO(3) x Sp(1) torus action
with weights t and z.  Its Koszul-corrected character, integrated over
Sp(1), is the Hilbert series of the invariant ring of the zero fibre.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import HilbertSeriesMismatch
from .linalg import Matrix, rank, rref


class LaurentPoly:
    """Integer Laurent polynomial in (t, z), stored as {(a, b): c} for c t^a z^b."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | Iterable = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[tuple[int, int], int] = defaultdict(int)
        for key, c in items:
            if int(c) != c:
                raise ValueError(f"non-integer coefficient {c}")
            acc[(int(key[0]), int(key[1]))] += int(c)
        self.terms = dict(sorted((k, v) for k, v in acc.items() if v))

    @classmethod
    def monomial(cls, a: int = 0, b: int = 0, c: int = 1) -> "LaurentPoly":
        return cls({(a, b): c})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls.monomial()

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.monomial(c=other) if other else LaurentPoly()
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        acc = dict(self.terms)
        for k, v in other.terms.items():
            acc[k] = acc.get(k, 0) + v
        return LaurentPoly(acc)

    def __neg__(self):
        return LaurentPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly({k: v * other for k, v in self.terms.items()})
        acc: dict = defaultdict(int)
        for (a, b), c in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                acc[(a + a2, b + b2)] += c * c2
        return LaurentPoly(acc)

    __rmul__ = __mul__

    def pow(self, n: int) -> "LaurentPoly":
        out = LaurentPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def z_free(self) -> bool:
        return all(b == 0 for _, b in self.terms)

    def coefficient_of_z(self, b: int) -> "LaurentPoly":
        return LaurentPoly({(a, 0): c for (a, bb), c in self.terms.items() if bb == b})

    def at_one(self) -> int:
        return sum(self.terms.values())

    def to_json(self) -> list:
        return [[a, b, c] for (a, b), c in self.terms.items()]

    def __repr__(self):
        return f"LaurentPoly({self.terms})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), c in sorted(self.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1])):
            mono = _mono("t", a) + ("*" if a and b else "") + _mono("z", b)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}{mono}")
        return "+".join(parts).replace("+-", "-")


def _mono(var: str, e: int) -> str:
    if e == 0:
        return ""
    if e == 1:
        return var
    return f"{var}^{e}"


@dataclass(frozen=True)
class TruncSeries:
    """Power series in u with LaurentPoly coefficients, known up to u^U."""

    U: int
    coeffs: tuple[LaurentPoly, ...]

    def __post_init__(self):
        cs = tuple(self.coeffs) + (LaurentPoly(),) * (self.U + 1 - len(self.coeffs))
        if len(cs) != self.U + 1:
            raise ValueError("too many coefficients for the truncation order")
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def one(cls, U: int) -> "TruncSeries":
        return cls(U, (LaurentPoly.one(),))

    @classmethod
    def from_terms(cls, U: int, terms: Mapping[int, LaurentPoly]) -> "TruncSeries":
        cs = [LaurentPoly() for _ in range(U + 1)]
        for k, v in terms.items():
            if 0 <= k <= U:
                cs[k] = cs[k] + v
        return cls(U, tuple(cs))

    def __getitem__(self, k: int) -> LaurentPoly:
        return self.coeffs[k]

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        U = min(self.U, other.U)
        return TruncSeries(U, tuple(self[k] + other[k] for k in range(U + 1)))

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        U = min(self.U, other.U)
        return TruncSeries(U, tuple(self[k] - other[k] for k in range(U + 1)))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        U = min(self.U, other.U)
        out = [LaurentPoly() for _ in range(U + 1)]
        for a in range(U + 1):
            if not self[a]:
                continue
            for b in range(U + 1 - a):
                if other[b]:
                    out[a + b] = out[a + b] + self[a] * other[b]
        return TruncSeries(U, tuple(out))

    def map(self, f) -> "TruncSeries":
        return TruncSeries(self.U, tuple(f(c) for c in self.coeffs))

    def to_json(self) -> dict:
        return {"U": self.U, "coeffs": [c.to_json() for c in self.coeffs]}

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            body = str(c)
            if k == 0:
                parts.append(body if len(c.terms) == 1 else f"({body})")
                continue
            upow = "u" if k == 1 else f"u^{k}"
            if body == "1":
                parts.append(upow)
            elif len(c.terms) == 1:
                parts.append(f"{body} {upow}")
            else:
                parts.append(f"({body}) {upow}")
        return " + ".join(parts) if parts else "0"


def geometric_inverse(m: LaurentPoly, a: int, U: int) -> TruncSeries:
    """Expansion of 1 / (1 - m u^a) up to u^U."""
    if a < 1:
        raise ValueError("the u-exponent must be positive")
    terms = {}
    power = LaurentPoly.one()
    for s in range(U // a + 1):
        terms[a * s] = power
        power = power * m
    return TruncSeries.from_terms(U, terms)


def linear_factor(m: LaurentPoly, a: int, U: int) -> TruncSeries:
    """1 - m u^a."""
    return TruncSeries.from_terms(U, {0: LaurentPoly.one(), a: -m})


T = LaurentPoly.monomial(1, 0)
TINV = LaurentPoly.monomial(-1, 0)
Z = LaurentPoly.monomial(0, 1)
ZINV = LaurentPoly.monomial(0, -1)
ONE = LaurentPoly.one()


def coordinate_weights() -> list[LaurentPoly]:
    """Weights of the six coordinate functions: z^{+-1} times {1, t, t^-1}."""
    return [zz * tt for zz in (Z, ZINV) for tt in (ONE, T, TINV)]


def char_coordinate_ring(U: int) -> TruncSeries:
    out = TruncSeries.one(U)
    for w in coordinate_weights():
        out = out * geometric_inverse(w, 1, U)
    return out


def koszul_factors(U: int) -> TruncSeries:
    """(1 - u^2)(1 - z^2 u^2)(1 - z^-2 u^2)."""
    out = TruncSeries.one(U)
    for w in (ONE, Z * Z, ZINV * ZINV):
        out = out * linear_factor(w, 2, U)
    return out


def koszul_character(U: int) -> TruncSeries:
    return char_coordinate_ring(U) * koszul_factors(U)


WEYL_DENSITY = (ONE - Z * Z) * (ONE - ZINV * ZINV)


def weyl_integrate_poly(p: LaurentPoly) -> LaurentPoly:
    """Half the z-constant term of (1 - z^2)(1 - z^-2) p."""
    ct = (WEYL_DENSITY * p).coefficient_of_z(0)
    halves = {}
    for k, c in ct.terms.items():
        if c % 2:
            raise ArithmeticError("Weyl integral is not integral")
        halves[k] = c // 2
    return LaurentPoly(halves)


def weyl_integrate_sp1(s: TruncSeries) -> TruncSeries:
    return s.map(weyl_integrate_poly)


def expected_rho(U: int) -> TruncSeries:
    return TruncSeries.from_terms(U, {0: ONE, 2: T + ONE + TINV})


def hilbert_rho(U: int = 8, check: bool = True) -> TruncSeries:
    """Hilbert series of the Sp(1)-invariants of the zero fibre, up to u^U."""
    if U < 3:
        raise ValueError("truncation order must be at least 3")
    out = weyl_integrate_sp1(koszul_character(U))
    if check and out != expected_rho(U):
        raise HilbertSeriesMismatch(f"computed {out}, expected {expected_rho(U)}")
    return out


def char_o3_quotient(U: int) -> TruncSeries:
    """Character of C[o(3)] / (x, y, z)^2: the series 1/((1-t u^2)(1-u^2)(1-t^-1 u^2)) minus its tail."""
    full = TruncSeries.one(U)
    for w in (T, ONE, TINV):
        full = full * geometric_inverse(w, 2, U)
    tail = TruncSeries.from_terms(U, {k: full[k] for k in range(4, U + 1)})
    return full - tail


# ---------------------------------------------------------------------------
# brute-force oracle

# Variables x[a][w] for a in {0, 1} (V = C^2, Sp(1) weights z, z^-1) and
# w in {0, 1, 2} (W = C^3 with (e0, e1) = 1, (e2, e2) = 1; SO(3) weights t, t^-1, 1).
_V_WEIGHT = (1, -1)
_W_WEIGHT = (1, -1, 0)
_WINV = ((0, 1, 0), (1, 0, 0), (0, 0, 1))   # inverse Gram matrix of W
NVARS = 6


def _var(a: int, w: int) -> int:
    return 3 * a + w


def _monomials(e: int) -> list[tuple[int, ...]]:
    """Exponent vectors of total degree e in 6 variables."""
    out = []
    for combo in itertools.combinations_with_replacement(range(NVARS), e):
        v = [0] * NVARS
        for c in combo:
            v[c] += 1
        out.append(tuple(v))
    return out


def _weight(m: tuple[int, ...]) -> tuple[int, int]:
    t = z = 0
    for a in range(2):
        for w in range(3):
            k = m[_var(a, w)]
            z += k * _V_WEIGHT[a]
            t += k * _W_WEIGHT[w]
    return t, z


def _relations() -> list[dict]:
    """Entries of i G_W^-1 i^T: polynomials as {exponent: coefficient}."""
    rels = []
    for a in range(2):
        for b in range(a, 2):
            poly: dict = defaultdict(int)
            for w in range(3):
                for w2 in range(3):
                    g = _WINV[w][w2]
                    if g:
                        m = [0] * NVARS
                        m[_var(a, w)] += 1
                        m[_var(b, w2)] += 1
                        poly[tuple(m)] += g
            rels.append(dict(poly))
    return rels


def _mul_mono(poly: dict, mono: tuple[int, ...]) -> dict:
    return {tuple(x + y for x, y in zip(k, mono)): c for k, c in poly.items()}


def _derivation(mono: tuple[int, ...], src: int, dst: int) -> dict:
    """Apply x_dst * d/dx_src."""
    if mono[src] == 0:
        return {}
    m = list(mono)
    c = m[src]
    m[src] -= 1
    m[dst] += 1
    return {tuple(m): c}


def _raise(mono):
    """E: x[1][w] -> x[0][w], as a derivation."""
    out: dict = defaultdict(int)
    for w in range(3):
        for k, c in _derivation(mono, _var(1, w), _var(0, w)).items():
            out[k] += c
    return out


def _lower(mono):
    out: dict = defaultdict(int)
    for w in range(3):
        for k, c in _derivation(mono, _var(0, w), _var(1, w)).items():
            out[k] += c
    return out


def invariants_oracle(D: int) -> list[LaurentPoly]:
    """t-characters of the Sp(1)-invariants of C[Hom(C^3, C^2)]/(i i^*) in degrees 0..D.

    Per degree: reduce modulo the RREF of the ideal (its rows are weight
    homogeneous, so non-pivot monomials give a weight basis of the quotient),
    then count z-weight-0 quotient vectors killed by both E and F.
    """
    if D > 8:
        raise ValueError("oracle degree is limited to 8")
    rels = _relations()
    out = []
    for e in range(D + 1):
        monos = _monomials(e)
        n = len(monos)
        index = {m: k for k, m in enumerate(monos)}
        gens = [_dense(_mul_mono(r, m), index, n) for r in rels for m in _monomials(e - 2)] if e >= 2 else []
        red, piv = rref(Matrix(gens, cols=n)) if gens else (Matrix.zeros(0, n), [])
        pivset = set(piv)
        free = [k for k in range(n) if k not in pivset]

        def normal_form(poly: dict) -> list[Fraction]:
            v = [Fraction(0)] * n
            for m, c in poly.items():
                v[index[m]] += c
            for r, c in enumerate(piv):
                if v[c]:
                    f = v[c]
                    row = red.row(r)
                    v = [a - f * b for a, b in zip(v, row)]
            return [v[k] for k in free]

        char = {}
        by_t: dict[int, list] = defaultdict(list)
        for k in free:
            tw, zw = _weight(monos[k])
            if zw == 0:
                by_t[tw].append(monos[k])
        for tw, block in sorted(by_t.items()):
            cols = [normal_form(_raise(m)) + normal_form(_lower(m)) for m in block]
            dim = len(block) - rank(Matrix.from_columns(cols, rows=2 * len(free)))
            if dim:
                char[(tw, 0)] = dim
        out.append(LaurentPoly(char))
    return out


def _dense(poly: dict, index: dict, n: int) -> list[int]:
    v = [0] * n
    for m, c in poly.items():
        v[index[m]] += c
    return v
