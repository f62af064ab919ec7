r"""
The non-varying solver: turn the disjointness of a Teichmuller curve from a
divisor class into the exact value of L^+.

Everything is normalized per unit orbifold Euler characteristic (chi = 1).
The known intersection numbers of the lifted curve are

    C . omega_i = C . psi_i = 1/(d_i + 2)

for the section marking the zero of order d_i, and the two structural
identities are the Picard relations of the ambient moduli space and the
Noether identity  C . delta_total = 6 (L^+ - kappa)  with L^+ = 2 C.lambda.

Mode A assumes every boundary label appearing in the divisor has zero
intersection with the curve; the equation C . D = 0 then solves in closed
form,

    L^+ = (2 / -a_lambda) * sum_i a_i / (d_i + 2),

with a_i the omega-coefficients.  Mode B keeps the boundary intersections
as unknowns and solves the exact linear system instead; it reports
residuals when the system is inconsistent and is only determined for
g <= 2 where Picard relations exist.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .invariants import QuadraticSignature, kappa_quadratic
from .picard import LAMBDA, DELTA0, DivisorClass, expand_relations


@dataclass(frozen=True)
class SolverProblem:
    """One non-varying computation: a stratum, a lift, a divisor, a mode."""

    genus: int
    signature: QuadraticSignature
    lift_orders: tuple          # orders of the marked zeros, in marking order
    divisor: DivisorClass
    mode: str                   # "A" or "B"
    zero_assumptions: frozenset = frozenset()   # boundary labels with C.label = 0

    def __post_init__(self):
        if self.mode not in ("A", "B"):
            raise ValueError("mode must be 'A' or 'B'")
        if self.divisor[LAMBDA] == 0:
            raise ValueError("divisor needs a nonzero lambda coefficient")
        if len(self.lift_orders) != self.divisor.basis.n:
            raise ValueError("lift must mark one zero per marked point")
        if self.mode == "B" and self.genus > 2:
            raise ValueError("mode B needs Picard relations, only known for g <= 2")


@dataclass
class SolveResult:
    L_plus: Fraction | None
    c: Fraction | None
    slope: Fraction | None
    status: str                         # "ok", "inconsistent", "underdetermined"
    residuals: list = field(default_factory=list)
    assignments: dict = field(default_factory=dict)


def _omega_values(problem: SolverProblem) -> dict:
    return {("omega", i + 1): Fraction(1, d + 2)
            for i, d in enumerate(problem.lift_orders)}


def nonvarying_solve(problem: SolverProblem) -> SolveResult:
    kappa = kappa_quadratic(problem.signature)
    if problem.mode == "A":
        return _solve_mode_a(problem, kappa)
    return _solve_mode_b(problem, kappa)


def _finish(problem, kappa, l_plus, status, residuals, assignments) -> SolveResult:
    c = l_plus - kappa if l_plus is not None else None
    s = (12 * c / l_plus) if l_plus else None
    return SolveResult(L_plus=l_plus, c=c, slope=s, status=status,
                       residuals=residuals, assignments=assignments)


def _solve_mode_a(problem: SolverProblem, kappa: Fraction) -> SolveResult:
    D = problem.divisor
    a_lambda = D[LAMBDA]
    omegas = _omega_values(problem)
    total = sum((c * omegas[label] for label, c in D.coords.items()
                 if label[0] == "omega"), Fraction(0))
    l_plus = 2 * total / (-a_lambda)
    assignments = {"lambda": l_plus / 2}
    assignments.update({label: Fraction(0) for label in D.boundary_part()})
    return _finish(problem, kappa, l_plus, "ok", [], assignments)


def _solve_mode_b(problem: SolverProblem, kappa: Fraction) -> SolveResult:
    D = problem.divisor
    basis = D.basis
    omegas = _omega_values(problem)
    boundary = basis.boundary_labels()
    zeroed = {basis.canonical(lab) if lab[0] == "delta" else lab
              for lab in problem.zero_assumptions}
    unknowns = [LAMBDA] + [lab for lab in boundary if lab not in zeroed]
    col = {lab: k for k, lab in enumerate(unknowns)}

    rows = []        # (name, coefficient list, rhs)

    def add_equation(name, coords, rhs):
        vec = [Fraction(0)] * len(unknowns)
        for label, c in coords.items():
            if label[0] == "omega":
                rhs -= c * omegas[label]
            elif label in col:
                vec[col[label]] += c
            # else the label is assumed zero and contributes nothing
        rows.append((name, vec, rhs))

    add_equation("divisor", D.coords, Fraction(0))
    for k, rel in enumerate(expand_relations(basis.g, basis.n)):
        add_equation(f"relation[{k}]", rel.coords, Fraction(0))
    # Noether: sum of boundary intersections - 12 lambda = -6 kappa
    noether = {lab: Fraction(1) for lab in boundary}
    noether[LAMBDA] = Fraction(-12)
    add_equation("noether", noether, -6 * kappa)

    names = [name for name, _, _ in rows]
    matrix = [vec + [rhs] for _, vec, rhs in rows]
    solution, status, bad = _gauss_exact(matrix, len(unknowns))
    if status == "inconsistent":
        residuals = [names[i] for i in bad]
        return _finish(problem, kappa, None, "inconsistent", residuals, {})
    if status == "underdetermined" and solution[col[LAMBDA]] is None:
        return _finish(problem, kappa, None, "underdetermined", [], {})
    x = solution[col[LAMBDA]]
    l_plus = 2 * x
    assignments = {("lambda",): x}
    for lab in unknowns[1:]:
        assignments[lab] = solution[col[lab]]
    for lab in zeroed:
        assignments[lab] = Fraction(0)
    return _finish(problem, kappa, l_plus, "ok", [], assignments)


def _gauss_exact(matrix, ncols):
    """Fraction Gauss elimination with row provenance.

    ``matrix`` rows are [a_0 .. a_{ncols-1} | rhs].  Returns
    (values, status, bad_rows): values has None for free variables; status
    is "ok", "underdetermined" or "inconsistent"; bad_rows indexes the input
    rows participating in a contradictory combination.
    """
    m = [row[:] for row in matrix]
    prov = [{i} for i in range(len(m))]
    pivots = {}
    row = 0
    for colk in range(ncols):
        piv = next((r for r in range(row, len(m)) if m[r][colk] != 0), None)
        if piv is None:
            continue
        m[row], m[piv] = m[piv], m[row]
        prov[row], prov[piv] = prov[piv], prov[row]
        inv = 1 / m[row][colk]
        m[row] = [v * inv for v in m[row]]
        for r in range(len(m)):
            if r != row and m[r][colk] != 0:
                f = m[r][colk]
                m[r] = [a - f * b for a, b in zip(m[r], m[row])]
                prov[r] = prov[r] | prov[row]
        pivots[colk] = row
        row += 1
    bad = set()
    for r in range(len(m)):
        if all(v == 0 for v in m[r][:ncols]) and m[r][ncols] != 0:
            bad |= prov[r]
    if bad:
        return None, "inconsistent", sorted(bad)
    values = [None] * ncols
    for colk, r in pivots.items():
        if all(m[r][c] == 0 for c in range(ncols) if c != colk):
            values[colk] = m[r][ncols]
    status = "ok" if all(v is not None for v in values) else "underdetermined"
    return values, status, []
