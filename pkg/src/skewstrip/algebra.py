"""Expressions in ``x`` and the Motzkin series ``M`` (``M = 1 + xM + x^2 M^2``).

Any polynomial in ``M`` with Laurent coefficients in ``x`` reduces to
``L0(x) + L1(x) M``; coefficient extraction then turns it into a finite
combination of shifted Motzkin numbers plus finitely many corrections.
"""

from __future__ import annotations

import ast
import json
from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

from .enumeration import motzkin
from .errors import IntegralityError, ResourceLimitError, ValidationError

SERIES_CAP = 2000


def _clean(d: Mapping[int, Fraction]) -> dict[int, Fraction]:
    return {k: Fraction(v) for k, v in d.items() if v}


@dataclass(frozen=True)
class LaurentPoly:
    coeffs: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _clean(self.coeffs))

    @classmethod
    def monomial(cls, exp: int, coeff: Rational | int = 1) -> LaurentPoly:
        return cls({exp: Fraction(coeff)})

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.monomial(0, other)
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other: LaurentPoly) -> LaurentPoly:
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(out)

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: LaurentPoly) -> LaurentPoly:
        return self + (-other)

    def __mul__(self, other: LaurentPoly | Rational | int) -> LaurentPoly:
        if not isinstance(other, LaurentPoly):
            return LaurentPoly({k: v * other for k, v in self.coeffs.items()})
        out: dict[int, Fraction] = {}
        for a, u in self.coeffs.items():
            for b, v in other.coeffs.items():
                out[a + b] = out.get(a + b, 0) + u * v
        return LaurentPoly(out)

    __rmul__ = __mul__

    def shift(self, d: int) -> LaurentPoly:
        """Multiply by ``x^d``."""
        return LaurentPoly({k + d: v for k, v in self.coeffs.items()})

    def __str__(self) -> str:
        return _render_terms([(c, _x_power(e)) for e, c in sorted(self.coeffs.items())])


def _x_power(e: int) -> str:
    return "" if e == 0 else ("x" if e == 1 else f"x^{e}")


def _render_terms(terms: list[tuple[Fraction, str]]) -> str:
    out = ""
    for c, mono in terms:
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        out += (f" {sign} " if out else ("-" if sign == "-" else "")) + body
    return out or "0"


@dataclass(frozen=True)
class MExpression:
    """``sum_k terms[k] * M^k`` with Laurent polynomial coefficients."""

    terms: Mapping[int, LaurentPoly] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for k in self.terms:
            if k < 0:
                raise ValidationError(f"negative power of M: {k}")
        object.__setattr__(self, "terms", {k: p for k, p in self.terms.items() if p})

    @classmethod
    def const(cls, c: Rational | int) -> MExpression:
        return cls({0: LaurentPoly.monomial(0, c)})

    @classmethod
    def x(cls, exp: int = 1) -> MExpression:
        return cls({0: LaurentPoly.monomial(exp)})

    @classmethod
    def M(cls, exp: int = 1) -> MExpression:
        return cls({exp: LaurentPoly.monomial(0)})

    @property
    def m_degree(self) -> int:
        return max(self.terms, default=0)

    def coefficient(self, k: int) -> LaurentPoly:
        return self.terms.get(k, LaurentPoly())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MExpression) and dict(self.terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: MExpression | Rational | int) -> MExpression:
        other = _lift(other)
        out = dict(self.terms)
        for k, p in other.terms.items():
            out[k] = out.get(k, LaurentPoly()) + p
        return MExpression(out)

    __radd__ = __add__

    def __neg__(self) -> MExpression:
        return MExpression({k: -p for k, p in self.terms.items()})

    def __sub__(self, other: MExpression | Rational | int) -> MExpression:
        return self + (-_lift(other))

    def __rsub__(self, other: Rational | int) -> MExpression:
        return _lift(other) - self

    def __mul__(self, other: MExpression | Rational | int) -> MExpression:
        other = _lift(other)
        out: dict[int, LaurentPoly] = {}
        for a, p in self.terms.items():
            for b, q in other.terms.items():
                out[a + b] = out.get(a + b, LaurentPoly()) + p * q
        return MExpression(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> MExpression:
        if e < 0:
            # only pure monomials in x can be inverted
            if len(self.terms) == 1 and 0 in self.terms and len(self.terms[0].coeffs) == 1:
                (exp, c), = self.terms[0].coeffs.items()
                return MExpression({0: LaurentPoly.monomial(exp * e, Fraction(1) / c ** -e)})
            raise ValidationError("negative powers are only allowed for monomials in x")
        out = MExpression.const(1)
        for _ in range(e):
            out = out * self
        return out

    def shift(self, d: int) -> MExpression:
        return MExpression({k: p.shift(d) for k, p in self.terms.items()})

    def __str__(self) -> str:
        terms = []
        for k in sorted(self.terms):
            m = "" if k == 0 else ("M" if k == 1 else f"M^{k}")
            for e, c in sorted(self.terms[k].coeffs.items()):
                mono = "*".join(s for s in (_x_power(e), m) if s)
                terms.append((c, mono))
        return _render_terms(terms)


def _lift(v: MExpression | Rational | int) -> MExpression:
    return v if isinstance(v, MExpression) else MExpression.const(v)


def reduce(e: MExpression) -> MExpression:
    """Rewrite ``e`` so that only ``M^0`` and ``M^1`` remain.

    Uses ``M^k = x^-2 M^(k-2) (M - 1 - xM)`` on the top power until it is <= 1.
    """
    terms = dict(e.terms)
    while terms and max(terms) >= 2:
        k = max(terms)
        p = terms.pop(k)
        q = p.shift(-2)
        for power, part in ((k - 1, q - q.shift(1)), (k - 2, -q)):
            terms[power] = terms.get(power, LaurentPoly()) + part
        terms = {a: b for a, b in terms.items() if b}
    return MExpression(terms)


def x_gf(j: int) -> MExpression:
    """Generating function ``x^j M^(j+1)`` of paths descending from height ``j``."""
    if j < 0:
        raise ValidationError(f"height must be nonnegative, got {j}")
    return MExpression({j + 1: LaurentPoly.monomial(j)})


@dataclass(frozen=True)
class MotzkinCombo:
    """``sum_s shifts[s] * m(n+s) + corrections.get(n, 0)``, with ``m(k) = 0`` for ``k < 0``.

    ``n_min`` is the least ``n`` from which every Motzkin index is nonnegative
    and no correction applies at or after ``n``.
    """

    shifts: Mapping[int, Fraction] = field(default_factory=dict)
    corrections: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "shifts", _clean(self.shifts))
        object.__setattr__(self, "corrections", _clean(self.corrections))

    @property
    def n_min(self) -> int:
        bound = 0
        if self.shifts:
            bound = max(bound, -min(self.shifts))
        if self.corrections:
            bound = max(bound, max(self.corrections) + 1)
        return bound

    def __add__(self, other: MotzkinCombo) -> MotzkinCombo:
        shifts = dict(self.shifts)
        for s, a in other.shifts.items():
            shifts[s] = shifts.get(s, 0) + a
        corr = dict(self.corrections)
        for n, c in other.corrections.items():
            corr[n] = corr.get(n, 0) + c
        return MotzkinCombo(shifts, corr)

    def __mul__(self, scalar: Rational | int) -> MotzkinCombo:
        return MotzkinCombo(
            {s: a * scalar for s, a in self.shifts.items()},
            {n: c * scalar for n, c in self.corrections.items()},
        )

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, MotzkinCombo)
            and dict(self.shifts) == dict(other.shifts)
            and dict(self.corrections) == dict(other.corrections)
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.shifts.items()), frozenset(self.corrections.items())))

    @property
    def is_integral(self) -> bool:
        return all(v.denominator == 1 for v in (*self.shifts.values(), *self.corrections.values()))

    def render(self) -> str:
        terms = []
        for s in sorted(self.shifts, reverse=True):
            idx = "n" if s == 0 else (f"n+{s}" if s > 0 else f"n-{-s}")
            terms.append((self.shifts[s], f"m({idx})"))
        return _render_terms(terms)

    def __str__(self) -> str:
        return f"{self.render()}, n >= {self.n_min}"

    def to_dict(self) -> dict:
        def num(v: Fraction) -> int | str:
            return int(v) if v.denominator == 1 else str(v)

        return {
            "shifts": [{"s": s, "a": num(a)} for s, a in sorted(self.shifts.items(), reverse=True)],
            "corrections": [{"n": n, "c": num(c)} for n, c in sorted(self.corrections.items())],
            "n_min": self.n_min,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, d: Mapping) -> MotzkinCombo:
        return cls(
            {int(t["s"]): Fraction(t["a"]) for t in d.get("shifts", [])},
            {int(t["n"]): Fraction(t["c"]) for t in d.get("corrections", [])},
        )


def extract_combo(e: MExpression, offset: int = 0) -> MotzkinCombo:
    """Coefficient of ``x^(n - offset)`` in a reduced expression, as a combo in ``n``.

    ``c x^d M`` contributes ``c m(n - offset - d)``; an M-free ``c x^d``
    contributes ``c`` at the single value ``n = offset + d``.
    """
    if e.m_degree > 1:
        raise ValidationError("expression must be reduced (M-degree <= 1) before extraction")
    shifts = {-offset - d: c for d, c in e.coefficient(1).coeffs.items()}
    corrections = {offset + d: c for d, c in e.coefficient(0).coeffs.items()}
    return MotzkinCombo(shifts, corrections)


def x_formula(i: int, j: int) -> MotzkinCombo:
    """``|X(i, j; n)|`` as a combination of shifted Motzkin numbers."""
    return extract_combo(reduce(x_gf(j)), i)


def eval_combo(c: MotzkinCombo, n: int, integral: bool = True) -> int | Fraction:
    total = sum((a * motzkin(n + s) for s, a in c.shifts.items()), Fraction(0))
    total += c.corrections.get(n, 0)
    if integral:
        if total.denominator != 1:
            raise IntegralityError(f"combo {c.render()} is not integral at n={n}: {total}")
        return int(total)
    return total


def _series_mul(a: list[Fraction], b: list[Fraction], length: int) -> list[Fraction]:
    out = [Fraction(0)] * length
    for i, u in enumerate(a[:length]):
        if u:
            for j, v in enumerate(b[: length - i]):
                out[i + j] += u * v
    return out


def series_expand(e: MExpression, order: int, start: int = 0, cap: int = SERIES_CAP) -> list[Fraction]:
    """Coefficients of ``x^start .. x^order`` after substituting M's power series."""
    if order > cap:
        raise ResourceLimitError(f"series order {order} exceeds cap {cap}")
    if start > order:
        return []
    lowest = min((min(p.coeffs) for p in e.terms.values()), default=0)
    # [x^t] x^d M^k needs M^k through x^(t-d), so negative d widens the window
    length = order - min(lowest, 0) + 1
    if length - 1 > cap:
        raise ResourceLimitError(f"series window of {length} terms exceeds cap {cap}")
    m_series = [Fraction(motzkin(k)) for k in range(length)]
    out = [Fraction(0)] * (order - start + 1)
    power = [Fraction(1)] + [Fraction(0)] * (length - 1)
    for k in range(e.m_degree + 1):
        if k:
            power = _series_mul(power, m_series, length)
        for d, c in e.coefficient(k).coeffs.items():
            for t in range(start, order + 1):
                idx = t - d
                if 0 <= idx < length:
                    out[t - start] += c * power[idx]
    return out


_ALLOWED_NAMES = {"x", "M"}


def parse_expr(text: str) -> MExpression:
    """Parse expressions over ``x``, ``M``, integers, ``+ - * ^`` and parentheses."""
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ValidationError(f"cannot parse expression {text!r}: {exc.msg}") from exc
    return _eval_node(tree.body, text)


def _eval_node(node: ast.AST, text: str) -> MExpression:
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return MExpression.const(node.value)
    if isinstance(node, ast.Name) and node.id in _ALLOWED_NAMES:
        return MExpression.x() if node.id == "x" else MExpression.M()
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand, text)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = _int_literal(node.right, text)
            return _eval_node(node.left, text) ** exp
        left, right = _eval_node(node.left, text), _eval_node(node.right, text)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
    raise ValidationError(f"unsupported syntax in expression {text!r}")


def _int_literal(node: ast.AST, text: str) -> int:
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return node.value
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
        return -_int_literal(node.operand, text)
    raise ValidationError(f"exponents must be integer literals in {text!r}")
