"""Reflection-functor shadows on dimension vectors and weights.

`sigma_dim` and `rho_dim` are the two involutions on dimension vectors;
their composites `fplus_dim` (rho first) and `fminus_dim` (sigma first)
are mutually inverse wherever defined.  Primitive posets are self-dual, so
the dual-order outputs are re-normalised to increasing chain order
immediately and a single DimVector representation is used throughout.

`phiplus_weight` / `phiminus_weight` are the matching transforms on
symbolic weights; concrete variants evaluate the forms and insist on
positive results.

Note: the usual printed closed form of the downward composite has a
garbled head, (m-1)d0 - sum_j d_j^(last); invertibility against the
upward composite forces (m-1)d0 - sum_j d_j^(first), which is what
`fminus_dim` implements (the two agree whenever every branch has one
element).
"""

from __future__ import annotations

from fractions import Fraction

from .core import (
    DimVector,
    LinearForm,
    PosetRepError,
    PrimitivePoset,
    SymbolicWeight,
    Weight,
)


class NegativeEntry(PosetRepError):
    """A dimension transform left the admissible region."""


class NotStrictlyDecreasing(PosetRepError):
    """Star-side weight must decrease strictly along each branch."""


def _require_admissible(p: PrimitivePoset, d: DimVector) -> None:
    if not d.is_admissible(p):
        raise NegativeEntry(f"dimension vector {d} is not admissible for {p.branches}")


def sigma_dim(p: PrimitivePoset, d: DimVector) -> DimVector:
    """Complement each subspace chain in the ambient space: d0 stays,
    branch (d_1,...,d_k) becomes (d0-d_k,...,d0-d_1)."""
    _require_admissible(p, d)
    return DimVector(
        d.d0, tuple(tuple(d.d0 - e for e in reversed(b)) for b in d.branches)
    )


def rho_dim(p: PrimitivePoset, d: DimVector) -> DimVector:
    """d0 -> sum_j d_j^(last) - d0; branch entry i -> d_k - d_{k-i} with
    d_0 := 0 (increasing normalisation of the dual-order output)."""
    _require_admissible(p, d)
    d0_new = sum(b[-1] for b in d.branches) - d.d0
    if d0_new < 0:
        raise NegativeEntry(f"rho undefined: new ambient dimension {d0_new} < 0")
    branches = tuple(
        tuple(b[-1] - (b[len(b) - 1 - i] if i < len(b) else 0) for i in range(1, len(b) + 1))
        for b in d.branches
    )
    out = DimVector(d0_new, branches)
    if not out.is_admissible(p):
        raise NegativeEntry(f"rho output {out} is not admissible")
    return out


def fplus_dim(p: PrimitivePoset, d: DimVector) -> DimVector:
    """Upward transform: rho then sigma."""
    return sigma_dim(p, rho_dim(p, d))


def fminus_dim(p: PrimitivePoset, d: DimVector) -> DimVector:
    """Downward transform: sigma then rho; exact inverse of fplus_dim.

    Closed form: d0' = (m-1)d0 - sum_j d_1^(j), branch entries
    (d_2-d_1, ..., d_k-d_1, d0-d_1).  Meant for non-degenerate input, but
    also defined on the degenerate images of fplus_dim; NegativeEntry
    signals that the orbit left the admissible region.
    """
    return rho_dim(p, sigma_dim(p, d))


def fplus_closed_form(p: PrimitivePoset, d: DimVector) -> DimVector:
    """The displayed closed form of the upward transform, for cross-checks:
    d0' = sum_j d_k^(j) - d0; branch j entry i = sum_{l != j} d_k^(l) - d0
    + d_{i-1}^(j) with d_0 := 0."""
    _require_admissible(p, d)
    tops = [b[-1] for b in d.branches]
    total = sum(tops)
    d0_new = total - d.d0
    branches = []
    for j, b in enumerate(d.branches):
        rest = total - tops[j]
        branches.append(
            tuple(rest - d.d0 + (b[i - 1] if i >= 1 else 0) for i in range(len(b)))
        )
    out = DimVector(d0_new, tuple(branches))
    return out


def phiplus_weight(p: PrimitivePoset, w: SymbolicWeight) -> SymbolicWeight:
    """Symbolic weight transform matching fplus_dim: branch j becomes
    (g - A_j, a_1, ..., a_{k-1}) and g -> (m-1)g - sum_j a_k^(j)."""
    if not w.fits(p):
        raise PosetRepError(f"symbolic weight does not fit poset {p.branches}")
    m = p.width
    branches = []
    for b in w.branch_forms:
        branch_sum = sum(b, LinearForm())
        branches.append((w.gamma_form - branch_sum,) + b[:-1])
    gamma = w.gamma_form * Fraction(m - 1)
    for b in w.branch_forms:
        gamma = gamma - b[-1]
    return SymbolicWeight(tuple(branches), gamma)


def phiminus_weight(p: PrimitivePoset, w: SymbolicWeight) -> SymbolicWeight:
    """Symbolic weight transform matching fminus_dim: branch j becomes
    (a_2, ..., a_k, sum_{l != j} A_l - g) and g -> sum_l A_l - g."""
    if not w.fits(p):
        raise PosetRepError(f"symbolic weight does not fit poset {p.branches}")
    sums = [sum(b, LinearForm()) for b in w.branch_forms]
    total = sum(sums, LinearForm())
    branches = []
    for j, b in enumerate(w.branch_forms):
        tail = total - sums[j] - w.gamma_form
        branches.append(b[1:] + (tail,))
    return SymbolicWeight(tuple(branches), total - w.gamma_form)


def _evaluate_symbolic(p: PrimitivePoset, sw: SymbolicWeight, w: Weight) -> Weight:
    from .core import NonPositiveWeight

    try:
        return sw.evaluate(w)
    except NonPositiveWeight as exc:
        raise NonPositiveWeight(f"transformed weight left the positive cone: {exc}") from exc


def phiplus_concrete(p: PrimitivePoset, w: Weight) -> Weight:
    """Apply the upward weight transform to a concrete weight."""
    w.require_fits(p)
    return _evaluate_symbolic(p, phiplus_weight(p, SymbolicWeight.identity(p)), w)


def phiminus_concrete(p: PrimitivePoset, w: Weight) -> Weight:
    """Apply the downward weight transform to a concrete weight."""
    w.require_fits(p)
    return _evaluate_symbolic(p, phiminus_weight(p, SymbolicWeight.identity(p)), w)


class StarWeight:
    """Weight in star-graph coordinates: strictly decreasing per branch."""

    __slots__ = ("betas", "gamma")

    def __init__(self, betas: tuple[tuple[Fraction, ...], ...], gamma: Fraction):
        self.betas = tuple(tuple(Fraction(x) for x in b) for b in betas)
        self.gamma = Fraction(gamma)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, StarWeight)
            and self.betas == other.betas
            and self.gamma == other.gamma
        )

    def __repr__(self) -> str:
        return f"StarWeight({self.betas!r}, {self.gamma!r})"


def alpha_to_beta(p: PrimitivePoset, w: Weight) -> StarWeight:
    """Suffix sums b_i = a_i + ... + a_k along each branch."""
    w.require_fits(p)
    betas = []
    for b in w.alphas:
        suffix = []
        running = Fraction(0)
        for a in reversed(b):
            running += a
            suffix.append(running)
        betas.append(tuple(reversed(suffix)))
    return StarWeight(tuple(betas), w.gamma)


def beta_to_alpha(p: PrimitivePoset, sw: StarWeight) -> Weight:
    """Invert alpha_to_beta; the betas must decrease strictly to 0."""
    if tuple(len(b) for b in sw.betas) != p.branches:
        raise PosetRepError(f"star weight does not fit poset {p.branches}")
    alphas = []
    for b in sw.betas:
        ext = list(b) + [Fraction(0)]
        if any(x <= y for x, y in zip(ext, ext[1:])):
            raise NotStrictlyDecreasing(f"branch {b} is not strictly decreasing positive")
        alphas.append(tuple(x - y for x, y in zip(ext, ext[1:])))
    return Weight(tuple(alphas), sw.gamma)
