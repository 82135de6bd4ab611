"""Exact value types: primitive posets, dimension vectors, weights,
linear forms and weight conditions.

All arithmetic in this module is exact (`fractions.Fraction`); every value
is immutable after construction and every operation is a pure function, so
everything here is safe to share across threads.

Variable keys for linear forms are ``"a.j.i"`` for the weight entry of
element i on branch j (both 1-based) and ``"g"`` for the scalar on the
right-hand side of the projection relation.  The fixed key order is branch
ascending, index ascending, then ``"g"``; canonical printing and
canonicalisation both use it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, Mapping


class PosetRepError(Exception):
    """Base class for all errors raised by this package."""


class EmptyOrNonPositiveBranch(PosetRepError):
    """Poset constructed from an empty list or with a branch length < 1."""


class ShapeMismatch(PosetRepError):
    """Value does not structurally fit the poset it is used with."""


class NonPositiveWeight(PosetRepError):
    """A weight entry that must be positive is zero or negative."""


GAMMA_KEY = "g"

_ALPHA_KEY_RE = re.compile(r"^a\.(\d+)\.(\d+)$")


def alpha_key(branch: int, index: int) -> str:
    """Variable key of the weight entry for element `index` on `branch`."""
    return f"a.{branch}.{index}"


def key_order(key: str) -> tuple[int, int, int]:
    """Sort tuple implementing the fixed variable order (branches, then g)."""
    if key == GAMMA_KEY:
        return (1, 0, 0)
    m = _ALPHA_KEY_RE.match(key)
    if m is None:
        raise ValueError(f"unknown variable key {key!r}")
    return (0, int(m.group(1)), int(m.group(2)))


@dataclass(frozen=True)
class PrimitivePoset:
    """Cardinal sum of chains, recorded by its branch lengths (k_1,...,k_m)."""

    branches: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.branches) == 0 or any(k < 1 for k in self.branches):
            raise EmptyOrNonPositiveBranch(f"invalid branch lengths {self.branches}")
        object.__setattr__(self, "branches", tuple(int(k) for k in self.branches))

    @property
    def width(self) -> int:
        return len(self.branches)

    @property
    def n(self) -> int:
        """Total number of elements."""
        return sum(self.branches)

    def elements(self) -> Iterator[tuple[int, int]]:
        """All (branch, index) pairs, branch-major, 1-based."""
        for j, k in enumerate(self.branches, start=1):
            for i in range(1, k + 1):
                yield (j, i)

    def variable_keys(self) -> list[str]:
        """All form variable keys of this poset in canonical order, g last."""
        return [alpha_key(j, i) for j, i in self.elements()] + [GAMMA_KEY]

    def to_json(self) -> dict:
        return {"branches": list(self.branches)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "PrimitivePoset":
        return cls(tuple(obj["branches"]))


def make_poset(branches: Iterable[int]) -> PrimitivePoset:
    """Build a primitive poset from its branch lengths."""
    return PrimitivePoset(tuple(branches))


@dataclass(frozen=True)
class DimVector:
    """Ambient dimension plus one non-negative integer per poset element."""

    d0: int
    branches: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.d0 < 0 or any(e < 0 for b in self.branches for e in b):
            raise ShapeMismatch(f"negative entry in dimension vector {self}")
        object.__setattr__(
            self, "branches", tuple(tuple(int(e) for e in b) for b in self.branches)
        )

    def fits(self, p: PrimitivePoset) -> bool:
        return tuple(len(b) for b in self.branches) == p.branches

    def require_fits(self, p: PrimitivePoset) -> None:
        if not self.fits(p):
            raise ShapeMismatch(f"dimension vector {self} does not fit poset {p.branches}")

    def is_admissible(self, p: PrimitivePoset) -> bool:
        """Chain-monotone: 0 <= d1 <= ... <= d_k <= d0 on every branch."""
        self.require_fits(p)
        for b in self.branches:
            prev = 0
            for e in b:
                if e < prev:
                    return False
                prev = e
            if prev > self.d0:
                return False
        return True

    def entry(self, j: int, i: int) -> int:
        return self.branches[j - 1][i - 1]

    def to_json(self) -> dict:
        return {"branches": [list(b) for b in self.branches], "d0": self.d0}

    @classmethod
    def from_json(cls, obj: Mapping) -> "DimVector":
        return cls(int(obj["d0"]), tuple(tuple(b) for b in obj["branches"]))


def parse_dim_string(s: str) -> DimVector:
    """Parse "1,2;1,2;2;3": ';'-separated branches, final field is d0."""
    fields = [f.strip() for f in s.split(";")]
    if len(fields) < 2:
        raise ShapeMismatch(f"dimension string needs at least one branch and d0: {s!r}")
    try:
        d0 = int(fields[-1])
        branches = tuple(tuple(int(x) for x in f.split(",")) for f in fields[:-1])
    except ValueError as exc:
        raise ShapeMismatch(f"malformed dimension string {s!r}") from exc
    return DimVector(d0, branches)


def format_dim_string(d: DimVector) -> str:
    return ";".join(",".join(str(e) for e in b) for b in d.branches) + f";{d.d0}"


def _positive_fraction(x, what: str) -> Fraction:
    v = Fraction(x)
    if v <= 0:
        raise NonPositiveWeight(f"{what} must be positive, got {v}")
    return v


@dataclass(frozen=True)
class Weight:
    """Concrete positive rational weight: one entry per element plus gamma."""

    alphas: tuple[tuple[Fraction, ...], ...]
    gamma: Fraction

    def __post_init__(self) -> None:
        alphas = tuple(
            tuple(_positive_fraction(a, "weight entry") for a in b) for b in self.alphas
        )
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "gamma", _positive_fraction(self.gamma, "gamma"))

    def fits(self, p: PrimitivePoset) -> bool:
        return tuple(len(b) for b in self.alphas) == p.branches

    def require_fits(self, p: PrimitivePoset) -> None:
        if not self.fits(p):
            raise ShapeMismatch(f"weight does not fit poset {p.branches}")

    def entry(self, j: int, i: int) -> Fraction:
        return self.alphas[j - 1][i - 1]

    def value(self, key: str) -> Fraction:
        if key == GAMMA_KEY:
            return self.gamma
        _, j, i = key_order(key)
        return self.alphas[j - 1][i - 1]

    def scaled(self, c) -> "Weight":
        c = Fraction(c)
        return Weight(
            tuple(tuple(a * c for a in b) for b in self.alphas), self.gamma * c
        )

    def to_json(self) -> dict:
        return {
            "alphas": [[str(a) for a in b] for b in self.alphas],
            "gamma": str(self.gamma),
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "Weight":
        return cls(
            tuple(tuple(Fraction(a) for a in b) for b in obj["alphas"]),
            Fraction(obj["gamma"]),
        )


def parse_weight_string(s: str) -> Weight:
    """Parse "1/2,3/4;1;1;2": ';'-separated branches, final field is gamma."""
    fields = [f.strip() for f in s.split(";")]
    if len(fields) < 2:
        raise ShapeMismatch(f"weight string needs at least one branch and gamma: {s!r}")
    try:
        gamma = Fraction(fields[-1])
        alphas = tuple(tuple(Fraction(x) for x in f.split(",")) for f in fields[:-1])
    except (ValueError, ZeroDivisionError) as exc:
        raise ShapeMismatch(f"malformed weight string {s!r}") from exc
    return Weight(alphas, gamma)


def format_weight_string(w: Weight) -> str:
    return ";".join(",".join(str(a) for a in b) for b in w.alphas) + f";{w.gamma}"


class LinearForm:
    """Exact linear form over the weight variables.

    Immutable; supports +, -, scalar *, and exact evaluation at a Weight.
    `canonicalized` clears denominators and divides by the integer gcd;
    sign normalisation (first nonzero coefficient positive in key order) is
    applied only when requested, because inequality forms must keep their
    orientation.
    """

    __slots__ = ("_coeffs", "_key")

    def __init__(self, coeffs: Mapping[str, Fraction] | None = None):
        items = {}
        if coeffs:
            for k, v in coeffs.items():
                v = Fraction(v)
                if v != 0:
                    key_order(k)  # validates
                    items[k] = v
        self._coeffs = items
        self._key = tuple(sorted(items.items(), key=lambda kv: key_order(kv[0])))

    @classmethod
    def variable(cls, key: str) -> "LinearForm":
        return cls({key: Fraction(1)})

    @property
    def coeffs(self) -> dict[str, Fraction]:
        return dict(self._coeffs)

    def coeff(self, key: str) -> Fraction:
        return self._coeffs.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self._coeffs

    def variables(self) -> set[str]:
        return set(self._coeffs)

    def __add__(self, other: "LinearForm") -> "LinearForm":
        out = dict(self._coeffs)
        for k, v in other._coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return LinearForm(out)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        return self + (-other)

    def __neg__(self) -> "LinearForm":
        return LinearForm({k: -v for k, v in self._coeffs.items()})

    def __mul__(self, c) -> "LinearForm":
        c = Fraction(c)
        return LinearForm({k: v * c for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def evaluate(self, w: Weight) -> Fraction:
        return sum((v * w.value(k) for k, v in self._coeffs.items()), Fraction(0))

    def canonicalized(self, sign_normalize: bool = False) -> "LinearForm":
        if not self._coeffs:
            return self
        denom_lcm = 1
        for v in self._coeffs.values():
            denom_lcm = denom_lcm * v.denominator // gcd(denom_lcm, v.denominator)
        ints = {k: v * denom_lcm for k, v in self._coeffs.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, abs(v.numerator))
        out = {k: v / g for k, v in ints.items()}
        if sign_normalize:
            first = min(out, key=key_order)
            if out[first] < 0:
                out = {k: -v for k, v in out.items()}
        return LinearForm(out)

    def __eq__(self, other) -> bool:
        return isinstance(other, LinearForm) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        if not self._coeffs:
            return "LinearForm(0)"
        parts = [f"{v}*{k}" for k, v in self._key]
        return "LinearForm(" + " + ".join(parts) + ")"

    def to_json(self) -> dict:
        return {k: str(v) for k, v in self._key}

    @classmethod
    def from_json(cls, obj: Mapping[str, str]) -> "LinearForm":
        return cls({k: Fraction(v) for k, v in obj.items()})


EQ_ZERO = "eq0"
LT_ZERO = "lt0"


@dataclass(frozen=True)
class Condition:
    """A single weight condition: form = 0 or form < 0, stored canonically."""

    form: LinearForm
    rel: str

    def __post_init__(self) -> None:
        if self.rel not in (EQ_ZERO, LT_ZERO):
            raise ValueError(f"unknown relation {self.rel!r}")
        object.__setattr__(
            self, "form", self.form.canonicalized(sign_normalize=self.rel == EQ_ZERO)
        )

    def holds_at(self, w: Weight) -> bool:
        v = self.form.evaluate(w)
        return v == 0 if self.rel == EQ_ZERO else v < 0

    def to_json(self) -> dict:
        return {"coeffs": self.form.to_json(), "rel": self.rel}

    @classmethod
    def from_json(cls, obj: Mapping) -> "Condition":
        return cls(LinearForm.from_json(obj["coeffs"]), obj["rel"])


class ConditionSet:
    """Deduplicated, order-preserving collection of canonical conditions.

    Equality and hashing are set-like (insertion order is kept only for
    deterministic printing).
    """

    __slots__ = ("_conditions", "_set")

    def __init__(self, conditions: Iterable[Condition] = ()):
        seen = set()
        ordered = []
        for c in conditions:
            if c not in seen:
                seen.add(c)
                ordered.append(c)
        self._conditions = tuple(ordered)
        self._set = frozenset(seen)

    def __iter__(self) -> Iterator[Condition]:
        return iter(self._conditions)

    def __len__(self) -> int:
        return len(self._conditions)

    def __contains__(self, c: Condition) -> bool:
        return c in self._set

    def __eq__(self, other) -> bool:
        return isinstance(other, ConditionSet) and self._set == other._set

    def __hash__(self) -> int:
        return hash(self._set)

    def __repr__(self) -> str:
        return f"ConditionSet({list(self._conditions)!r})"

    @property
    def equalities(self) -> tuple[Condition, ...]:
        return tuple(c for c in self._conditions if c.rel == EQ_ZERO)

    @property
    def inequalities(self) -> tuple[Condition, ...]:
        return tuple(c for c in self._conditions if c.rel == LT_ZERO)

    def variables(self) -> set[str]:
        out: set[str] = set()
        for c in self._conditions:
            out |= c.form.variables()
        return out

    def holds_at(self, w: Weight) -> bool:
        return all(c.holds_at(w) for c in self._conditions)

    def to_json(self) -> list:
        return [c.to_json() for c in self._conditions]

    @classmethod
    def from_json(cls, obj: Iterable[Mapping]) -> "ConditionSet":
        return cls(Condition.from_json(c) for c in obj)


@dataclass(frozen=True)
class SymbolicWeight:
    """A weight whose entries are linear forms in the original variables."""

    branch_forms: tuple[tuple[LinearForm, ...], ...]
    gamma_form: LinearForm

    @classmethod
    def identity(cls, p: PrimitivePoset) -> "SymbolicWeight":
        return cls(
            tuple(
                tuple(LinearForm.variable(alpha_key(j, i)) for i in range(1, k + 1))
                for j, k in enumerate(p.branches, start=1)
            ),
            LinearForm.variable(GAMMA_KEY),
        )

    def fits(self, p: PrimitivePoset) -> bool:
        return tuple(len(b) for b in self.branch_forms) == p.branches

    def entry(self, j: int, i: int) -> LinearForm:
        return self.branch_forms[j - 1][i - 1]

    def evaluate(self, w: Weight) -> Weight:
        """Concrete weight obtained by evaluating every form at w."""
        return Weight(
            tuple(tuple(f.evaluate(w) for f in b) for b in self.branch_forms),
            self.gamma_form.evaluate(w),
        )

    def to_json(self) -> dict:
        return {
            "branches": [[f.to_json() for f in b] for b in self.branch_forms],
            "gamma": self.gamma_form.to_json(),
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "SymbolicWeight":
        return cls(
            tuple(
                tuple(LinearForm.from_json(f) for f in b) for b in obj["branches"]
            ),
            LinearForm.from_json(obj["gamma"]),
        )


# --- degeneracy classification -------------------------------------------

ZERO = "zero"
MERGE = "merge"
FULL = "full"


@dataclass(frozen=True)
class Finding:
    """One degeneracy: kind is zero (d=0), merge (d_i=d_{i+1}) or full (d=d0)."""

    kind: str
    branch: int
    index: int


@dataclass(frozen=True)
class DegeneracyReport:
    findings: tuple[Finding, ...]

    @property
    def non_degenerate(self) -> bool:
        return not self.findings


def classify_degeneracy(p: PrimitivePoset, d: DimVector) -> DegeneracyReport:
    """List all degeneracies of d, zeros first, then merges, then fulls,
    branch-major within each kind (the order reductions fire in)."""
    d.require_fits(p)
    zeros, merges, fulls = [], [], []
    for j, b in enumerate(d.branches, start=1):
        for i, e in enumerate(b, start=1):
            if e == 0:
                zeros.append(Finding(ZERO, j, i))
            if i < len(b) and e == b[i]:
                merges.append(Finding(MERGE, j, i))
            if e == d.d0:
                fulls.append(Finding(FULL, j, i))
    return DegeneracyReport(tuple(zeros + merges + fulls))


def trace_condition(p: PrimitivePoset, d: DimVector) -> Condition:
    """Necessary equality sum_i d_i a_i - d0 g = 0 (take traces of the
    projection relation)."""
    d.require_fits(p)
    coeffs: dict[str, Fraction] = {GAMMA_KEY: Fraction(-d.d0)}
    for j, i in p.elements():
        coeffs[alpha_key(j, i)] = Fraction(d.entry(j, i))
    return Condition(LinearForm(coeffs), EQ_ZERO)


# --- rendering and parsing of forms --------------------------------------

_GREEK = ["α", "β", "δ", "ε", "ζ", "η", "θ", "κ", "λ", "μ"]
_LATEX = ["\\alpha", "\\beta", "\\delta", "\\epsilon", "\\zeta", "\\eta",
          "\\theta", "\\kappa", "\\lambda", "\\mu"]
_ASCII = ["a", "b", "d", "e", "z", "h", "t", "k", "l", "m"]
_SUBSCRIPT = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def _var_name(key: str, p: PrimitivePoset, style: str) -> str:
    if key == GAMMA_KEY:
        return {"text": "γ", "latex": "\\gamma", "ascii": "g"}[style]
    _, j, i = key_order(key)
    if j > len(p.branches) or i > p.branches[j - 1]:
        raise ShapeMismatch(f"variable {key} outside poset {p.branches}")
    letters = {"text": _GREEK, "latex": _LATEX, "ascii": _ASCII}[style]
    if j > len(letters):
        raise ShapeMismatch(f"no display letter for branch {j}")
    name = letters[j - 1]
    if p.branches[j - 1] == 1:
        return name
    if style == "text":
        return name + str(i).translate(_SUBSCRIPT)
    if style == "latex":
        return name + "_" + (str(i) if i < 10 else "{%d}" % i)
    return name + str(i)


def _render_side(terms: list[tuple[str, Fraction]], p: PrimitivePoset, style: str) -> str:
    if not terms:
        return "0"
    parts = []
    for key, c in terms:
        name = _var_name(key, p, style)
        parts.append(name if c == 1 else f"{c}{name}")
    return "+".join(parts)


def render_condition(cond: Condition, p: PrimitivePoset, style: str = "text") -> str:
    """Table-style rendering: positive terms on the left, negated negative
    terms on the right, so ``g - b - d < 0`` prints as "γ<β+δ"."""
    pos, neg = [], []
    for key, c in sorted(cond.form.coeffs.items(), key=lambda kv: key_order(kv[0])):
        (pos if c > 0 else neg).append((key, abs(c)))
    rel = "=" if cond.rel == EQ_ZERO else "<"
    return _render_side(pos, p, style) + rel + _render_side(neg, p, style)


def render_condition_set(cs: ConditionSet, p: PrimitivePoset, style: str = "text",
                         sep: str = ", ") -> str:
    ordered = list(cs.inequalities) + list(cs.equalities)
    return sep.join(render_condition(c, p, style) for c in ordered)


_TERM_RE = re.compile(r"^(\d+(?:/\d+)?)?([a-z])(\d+)?$")


def _parse_side(side: str, p: PrimitivePoset) -> LinearForm:
    side = side.replace(" ", "")
    if side == "0":
        return LinearForm()
    total = LinearForm()
    sign = 1
    for chunk in re.split(r"([+-])", side):
        if chunk == "+":
            sign = 1
        elif chunk == "-":
            sign = -1
        elif chunk:
            m = _TERM_RE.match(chunk)
            if m is None:
                raise ShapeMismatch(f"cannot parse term {chunk!r}")
            coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
            letter, idx = m.group(2), m.group(3)
            if letter == "g":
                key = GAMMA_KEY
            else:
                try:
                    j = _ASCII.index(letter) + 1
                except ValueError:
                    raise ShapeMismatch(f"unknown variable letter {letter!r}") from None
                i = int(idx) if idx else 1
                if j > p.width or i > p.branches[j - 1]:
                    raise ShapeMismatch(f"variable {chunk!r} outside poset {p.branches}")
                key = alpha_key(j, i)
            total = total + LinearForm({key: sign * coef})
    return total


def parse_condition_text(s: str, p: PrimitivePoset) -> Condition:
    """Parse ASCII condition text like "a1+2a2+b2+d<2g" or "a2=g".

    Branch letters follow the table convention a, b, d, ... (g is the
    right-hand scalar); the index is omitted on branches of length 1.
    """
    for rel, tag in (("<", LT_ZERO), ("=", EQ_ZERO)):
        if rel in s:
            lhs, rhs = s.split(rel, 1)
            return Condition(_parse_side(lhs, p) - _parse_side(rhs, p), tag)
    raise ShapeMismatch(f"no relation in condition {s!r}")
