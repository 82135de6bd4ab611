"""Derivation of the exact weight conditions of an indecomposable
representation, LP-backed region simplification/comparison, and the
condition tables (bundled reference corpus plus generated output).

The derivation walks the representation down to a degenerate one:

  1. elements with zero dimension are deleted (their weight entry becomes
     unconstrained),
  2. chain-adjacent elements with equal dimension are merged and their
     weight forms summed,
  3. elements whose dimension equals the ambient one are deleted and their
     form subtracted from the gamma form,
  4. an empty poset terminates with the equality "gamma form = 0",
  5. otherwise the state is non-degenerate: the downward Coxeter transform
     is applied to the dimensions and the symbolic weight, and strict
     positivity of each newly created branch-tail form is emitted.

Reductions within one pass fire zeros, then merges, then fulls, each
branch-major; recorded positions refer to the state the rule fired in.
Positivity of the transformed gamma form is implied by the branch tails,
so it is never emitted, and reductions emit no inequalities at all.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, Union

from . import lp
from .core import (
    EQ_ZERO,
    GAMMA_KEY,
    LT_ZERO,
    Condition,
    ConditionSet,
    DimVector,
    LinearForm,
    PosetRepError,
    PrimitivePoset,
    SymbolicWeight,
    Weight,
    alpha_key,
    key_order,
    trace_condition,
)
from .coxeter import NegativeEntry, fminus_dim, phiminus_weight
from .linalg import row_space_basis
from .roots import FiniteTypeRequired, enumerate_indec_dims, is_finite_type, positive_roots, star_graph


class NotInEnumeration(PosetRepError):
    """Dimension vector is not an indecomposable one for this poset."""


class OrbitEscape(PosetRepError):
    """The downward transform left the valid region or failed to terminate."""


class CorpusMissing(PosetRepError):
    """The reference table corpus could not be loaded."""


@dataclass(frozen=True)
class ReduceZero:
    branch: int
    index: int


@dataclass(frozen=True)
class ReduceMerge:
    branch: int
    index: int


@dataclass(frozen=True)
class ReduceFull:
    branch: int
    index: int


@dataclass(frozen=True)
class ApplyPhiMinus:
    emitted: tuple[LinearForm, ...]


@dataclass(frozen=True)
class Terminal:
    equality: Condition


TraceStep = Union[ReduceZero, ReduceMerge, ReduceFull, ApplyPhiMinus, Terminal]


@dataclass(frozen=True)
class DerivationTrace:
    steps: tuple[TraceStep, ...]

    def __post_init__(self) -> None:
        assert self.steps and isinstance(self.steps[-1], Terminal)


def step_to_json(step: TraceStep) -> dict:
    if isinstance(step, ReduceZero):
        return {"step": "zero", "branch": step.branch, "index": step.index}
    if isinstance(step, ReduceMerge):
        return {"step": "merge", "branch": step.branch, "index": step.index}
    if isinstance(step, ReduceFull):
        return {"step": "full", "branch": step.branch, "index": step.index}
    if isinstance(step, ApplyPhiMinus):
        return {"step": "phi_minus", "emitted": [f.to_json() for f in step.emitted]}
    return {"step": "terminal", "equality": step.equality.to_json()}


def derive_conditions(
    p: PrimitivePoset, d: DimVector
) -> tuple[ConditionSet, DerivationTrace]:
    """Exact weight conditions for the indecomposable with dimensions d."""
    if not is_finite_type(p):
        raise FiniteTypeRequired(f"poset {p.branches} has infinite type")
    if d not in enumerate_indec_dims(p):
        raise NotInEnumeration(
            f"{d} is not an indecomposable dimension vector of {p.branches}"
        )
    bound = len(positive_roots(star_graph(p)))

    d0 = d.d0
    dims = [list(b) for b in d.branches]
    forms = [
        [LinearForm.variable(alpha_key(j, i)) for i in range(1, k + 1)]
        for j, k in enumerate(p.branches, start=1)
    ]
    gamma_form = LinearForm.variable(GAMMA_KEY)
    steps: list[TraceStep] = []
    conditions: list[Condition] = []

    iterations = 0
    while True:
        for j in range(len(dims)):
            kept_d, kept_f = [], []
            for i, (e, f) in enumerate(zip(dims[j], forms[j]), start=1):
                if e == 0:
                    steps.append(ReduceZero(j + 1, i))
                else:
                    kept_d.append(e)
                    kept_f.append(f)
            dims[j], forms[j] = kept_d, kept_f
        for j in range(len(dims)):
            new_d: list[int] = []
            new_f: list[LinearForm] = []
            for e, f in zip(dims[j], forms[j]):
                if new_d and new_d[-1] == e:
                    new_f[-1] = new_f[-1] + f
                    steps.append(ReduceMerge(j + 1, len(new_d)))
                else:
                    new_d.append(e)
                    new_f.append(f)
            dims[j], forms[j] = new_d, new_f
        for j in range(len(dims)):
            kept_d, kept_f = [], []
            for i, (e, f) in enumerate(zip(dims[j], forms[j]), start=1):
                if e == d0:
                    gamma_form = gamma_form - f
                    steps.append(ReduceFull(j + 1, i))
                else:
                    kept_d.append(e)
                    kept_f.append(f)
            dims[j], forms[j] = kept_d, kept_f
        keep = [j for j in range(len(dims)) if dims[j]]
        dims = [dims[j] for j in keep]
        forms = [forms[j] for j in keep]

        if not dims:
            equality = Condition(gamma_form, EQ_ZERO)
            conditions.append(equality)
            steps.append(Terminal(equality))
            break

        sub_poset = PrimitivePoset(tuple(len(b) for b in dims))
        state_d = DimVector(d0, tuple(tuple(b) for b in dims))
        state_w = SymbolicWeight(tuple(tuple(b) for b in forms), gamma_form)
        try:
            next_d = fminus_dim(sub_poset, state_d)
        except NegativeEntry as exc:
            raise OrbitEscape(f"downward transform failed at {state_d}: {exc}") from exc
        next_w = phiminus_weight(sub_poset, state_w)
        tails = tuple(b[-1] for b in next_w.branch_forms)
        for tail in tails:
            conditions.append(Condition(-tail, LT_ZERO))
        steps.append(ApplyPhiMinus(tails))

        d0 = next_d.d0
        dims = [list(b) for b in next_d.branches]
        forms = [list(b) for b in next_w.branch_forms]
        gamma_form = next_w.gamma_form

        iterations += 1
        if iterations > bound:
            raise OrbitEscape(f"descent from {d} exceeded {bound} steps")

    return ConditionSet(conditions), DerivationTrace(tuple(steps))


# --- LP-backed region operations ------------------------------------------


def _substituted_row(form: LinearForm, var_keys: list[str]) -> tuple[list[Fraction], Fraction]:
    """Coefficient row over var_keys and the constant after setting g = 1."""
    return [form.coeff(k) for k in var_keys], form.coeff(GAMMA_KEY)


def _max_slack(
    var_keys: list[str],
    equalities: Iterable[LinearForm],
    stricts: Iterable[LinearForm],
    nonstricts: Iterable[LinearForm] = (),
) -> tuple[Fraction | None, dict[str, Fraction] | None]:
    """Maximise the common slack s of {f + s <= 0 for strict f, x_v >= s,
    s <= 1} over {equalities, nonstrict f >= 0, g = 1, x >= 0}.

    Returns (best slack, point) or (None, None) when even the closed
    system is infeasible.  A positive best slack certifies a strictly
    feasible rational point.
    """
    n = len(var_keys)
    zero = Fraction(0)
    one = Fraction(1)
    c = [zero] * n + [one]
    a_ub: list[list[Fraction]] = []
    b_ub: list[Fraction] = []
    for f in stricts:
        row, const = _substituted_row(f, var_keys)
        a_ub.append(row + [one])
        b_ub.append(-const)
    for f in nonstricts:  # f >= 0, not slack-tightened
        row, const = _substituted_row(f, var_keys)
        a_ub.append([-v for v in row] + [zero])
        b_ub.append(const)
    for v in range(n):  # x_v >= s keeps every variable strictly positive
        row = [zero] * (n + 1)
        row[v] = -one
        row[n] = one
        a_ub.append(row)
        b_ub.append(zero)
    cap = [zero] * n + [one]
    a_ub.append(cap)
    b_ub.append(one)
    a_eq: list[list[Fraction]] = []
    b_eq: list[Fraction] = []
    for f in equalities:
        row, const = _substituted_row(f, var_keys)
        a_eq.append(row + [zero])
        b_eq.append(-const)
    res = lp.solve_lp(c, a_ub, b_ub, a_eq, b_eq)
    if res.status != lp.OPTIMAL:
        return None, None
    point = {k: res.x[i] for i, k in enumerate(var_keys)}
    return res.value, point


def _sorted_var_keys(cs_vars: set[str]) -> list[str]:
    return sorted(cs_vars - {GAMMA_KEY}, key=key_order)


def _strictly_feasible(c: ConditionSet, var_keys: list[str]) -> bool:
    s, _ = _max_slack(var_keys, [q.form for q in c.equalities],
                      [q.form for q in c.inequalities])
    return s is not None and s > 0


def _admits_point_with(c: ConditionSet, extra_nonneg: LinearForm,
                       var_keys: list[str]) -> bool:
    """Whether some strictly feasible point of c also has extra_nonneg >= 0."""
    s, _ = _max_slack(
        var_keys,
        [q.form for q in c.equalities],
        [q.form for q in c.inequalities],
        [extra_nonneg],
    )
    return s is not None and s > 0


def interior_point(c: ConditionSet, p: PrimitivePoset) -> Weight | None:
    """A strictly feasible rational weight with gamma = 1 and maximin slack,
    or None when the region is empty."""
    var_keys = [alpha_key(j, i) for j, i in p.elements()]
    s, point = _max_slack(
        var_keys, [q.form for q in c.equalities], [q.form for q in c.inequalities]
    )
    if s is None or s <= 0:
        return None
    alphas = tuple(
        tuple(point[alpha_key(j, i)] for i in range(1, k + 1))
        for j, k in enumerate(p.branches, start=1)
    )
    return Weight(alphas, Fraction(1))


def simplify(c: ConditionSet) -> ConditionSet:
    """Drop duplicate conditions and inequalities implied by the rest of
    the system together with base positivity; the region is unchanged."""
    var_keys = _sorted_var_keys(c.variables())
    equalities = list(c.equalities)
    kept = list(c.inequalities)
    for cond in list(kept):
        rest = ConditionSet([q for q in kept if q != cond] + equalities)
        if not _admits_point_with(rest, cond.form, var_keys):
            kept.remove(cond)
    return ConditionSet(kept + equalities)


def regions_equivalent(c1: ConditionSet, c2: ConditionSet) -> bool:
    """Whether the two solution sets inside the open positive orthant
    (with gamma normalised to 1) coincide."""
    var_keys = _sorted_var_keys(c1.variables() | c2.variables())
    nonempty1 = _strictly_feasible(c1, var_keys)
    nonempty2 = _strictly_feasible(c2, var_keys)
    if not nonempty1 and not nonempty2:
        return True
    if nonempty1 != nonempty2:
        return False
    full_keys = var_keys + [GAMMA_KEY]
    span1 = row_space_basis([[q.form.coeff(k) for k in full_keys] for q in c1.equalities])
    span2 = row_space_basis([[q.form.coeff(k) for k in full_keys] for q in c2.equalities])
    if span1 != span2:
        return False
    for cond in c1.inequalities:
        if _admits_point_with(c2, cond.form, var_keys):
            return False
    for cond in c2.inequalities:
        if _admits_point_with(c1, cond.form, var_keys):
            return False
    return True


# --- weight checking and tables -------------------------------------------


@dataclass(frozen=True)
class Verdict:
    admissible: bool
    violated: tuple[Condition, ...]


def check_weight(p: PrimitivePoset, d: DimVector, w: Weight) -> Verdict:
    """Exact evaluation of the derived conditions at w.

    The necessary trace equality is checked first in O(n); when it fails
    the full derivation is skipped entirely.
    """
    d.require_fits(p)
    w.require_fits(p)
    trace = trace_condition(p, d)
    if not trace.holds_at(w):
        return Verdict(False, (trace,))
    conditions, _ = derive_conditions(p, d)
    violated = tuple(c for c in conditions if not c.holds_at(w))
    return Verdict(not violated, violated)


@dataclass(frozen=True)
class TableRow:
    dim: DimVector
    conditions: ConditionSet


@dataclass(frozen=True)
class Table:
    poset: PrimitivePoset
    rows: tuple[TableRow, ...]

    def to_json(self) -> dict:
        return {
            "poset": self.poset.to_json(),
            "rows": [
                {"dim": r.dim.to_json(), "conditions": r.conditions.to_json()}
                for r in self.rows
            ],
        }

    @classmethod
    def from_json(cls, obj) -> "Table":
        poset = PrimitivePoset.from_json(obj["poset"])
        rows = tuple(
            TableRow(DimVector.from_json(r["dim"]), ConditionSet.from_json(r["conditions"]))
            for r in obj["rows"]
        )
        return cls(poset, rows)


def generate_table(p: PrimitivePoset, simplified: bool = True) -> Table:
    """One row per indecomposable dimension vector, in enumeration order."""
    rows = []
    for d in enumerate_indec_dims(p):
        conditions, _ = derive_conditions(p, d)
        rows.append(TableRow(d, simplify(conditions) if simplified else conditions))
    return Table(p, tuple(rows))


ENV_CORPUS = "POSETREP_CORPUS"


def _corpus_text(path: str | None) -> str:
    if path is None:
        path = os.environ.get(ENV_CORPUS) or None
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as fh:
                return fh.read()
        except OSError as exc:
            raise CorpusMissing(f"cannot read corpus at {path}: {exc}") from exc
    try:
        return (
            resources.files("posetrep").joinpath("tables/paper_tables.json").read_text("utf-8")
        )
    except (FileNotFoundError, OSError) as exc:
        raise CorpusMissing(f"bundled corpus missing: {exc}") from exc


def paper_corpus(path: str | None = None) -> dict[tuple[int, ...], Table]:
    """The bundled reference tables, keyed by poset branches.

    Rows keep their published order verbatim, including empty-region rows
    and duplicated inequalities (duplicates collapse in ConditionSet).
    """
    try:
        data = json.loads(_corpus_text(path))
        tables = [Table.from_json(t) for t in data["tables"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise CorpusMissing(f"malformed corpus: {exc}") from exc
    return {t.poset.branches: t for t in tables}


@dataclass(frozen=True)
class VerifyRow:
    poset: tuple[int, ...]
    dim: DimVector
    equivalent: bool
    detail: str = ""


@dataclass(frozen=True)
class VerifyReport:
    rows: tuple[VerifyRow, ...]

    @property
    def all_ok(self) -> bool:
        return all(r.equivalent for r in self.rows)

    @property
    def counts(self) -> tuple[int, int]:
        ok = sum(1 for r in self.rows if r.equivalent)
        return ok, len(self.rows)


def verify_tables(corpus_path: str | None = None) -> VerifyReport:
    """Compare the derived conditions of every corpus row against the
    published ones, region by region."""
    corpus = paper_corpus(corpus_path)
    out = []
    for branches in sorted(corpus):
        table = corpus[branches]
        p = table.poset
        for row in table.rows:
            try:
                derived, _ = derive_conditions(p, row.dim)
                ok = regions_equivalent(derived, row.conditions)
                detail = "" if ok else "regions differ"
            except PosetRepError as exc:
                ok, detail = False, str(exc)
            out.append(VerifyRow(branches, row.dim, ok, detail))
    return VerifyReport(tuple(out))
