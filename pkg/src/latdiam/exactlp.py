"""Exact rational linear programming.

Scalars are ``gmpy2.mpq`` rationals: arbitrary-precision, always stored
reduced with a positive denominator, and exact under +, -, *, / and
comparison.  The solver is a dense two-phase simplex over these rationals
with Bland's anti-cycling rule, so feasibility and optimality answers are
never approximate.  Every geometric predicate in this package (vertex-hood,
edge tests) reduces to a feasibility question solved here.

Free variables are handled by splitting into nonnegative pairs, which keeps
a single standard-form simplex core.
"""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import InputError, InternalError

Rational = mpq

_ZERO = mpq(0)
_ONE = mpq(1)

RELATIONS = ("<=", "=", ">=")
SIGNS = ("free", "nonneg")
SENSES = ("min", "max")


def rat(x) -> Rational:
    """Coerce an int, string ("2/3"), or rational-like value to mpq."""
    if isinstance(x, float):
        raise InputError("floating-point coefficients are not accepted; pass exact rationals")
    return mpq(x)


@dataclass(frozen=True)
class LinProgram:
    """A rational constraint system with an optional linear objective.

    constraints: tuples (coefficient row, relation, rhs) with relation one of
    "<=", "=", ">=".  var_sign marks each variable "free" or "nonneg".
    objective, when present, is (coefficient row, "min"|"max").
    """

    num_vars: int
    constraints: tuple
    var_sign: tuple
    objective: tuple | None = None

    @staticmethod
    def build(num_vars, constraints, var_sign="free", objective=None) -> "LinProgram":
        """Normalize rows to mpq tuples; a single sign string is broadcast."""
        if isinstance(var_sign, str):
            var_sign = (var_sign,) * num_vars
        rows = tuple(
            (tuple(rat(c) for c in coeffs), rel, rat(rhs))
            for coeffs, rel, rhs in constraints
        )
        if objective is not None:
            objective = (tuple(rat(c) for c in objective[0]), objective[1])
        return LinProgram(num_vars, rows, tuple(var_sign), objective)


@dataclass(frozen=True)
class LpOutcome:
    """Result of lp_solve: exact status, and point/value when they exist."""

    status: str  # "optimal" | "feasible" | "infeasible" | "unbounded"
    point: tuple | None = None
    value: Rational | None = None


def _validate(p: LinProgram):
    if p.num_vars < 0:
        raise InputError("num_vars must be nonnegative")
    if len(p.var_sign) != p.num_vars:
        raise InputError("var_sign length does not match num_vars")
    for s in p.var_sign:
        if s not in SIGNS:
            raise InputError(f"unknown variable sign {s!r}")
    for coeffs, rel, _ in p.constraints:
        if len(coeffs) != p.num_vars:
            raise InputError("constraint row length does not match num_vars")
        if rel not in RELATIONS:
            raise InputError(f"unknown relation {rel!r}")
    if p.objective is not None:
        coeffs, sense = p.objective
        if len(coeffs) != p.num_vars:
            raise InputError("objective length does not match num_vars")
        if sense not in SENSES:
            raise InputError(f"unknown objective sense {sense!r}")


class _Tableau:
    """Dense simplex tableau: rows of structural+artificial columns plus rhs."""

    def __init__(self, rows, rhs, n_struct):
        self.m = len(rows)
        self.n = n_struct
        self.art0 = n_struct  # artificial columns start here
        self.rows = [
            list(r) + [_ONE if j == i else _ZERO for j in range(self.m)] + [b]
            for i, (r, b) in enumerate(zip(rows, rhs))
        ]
        self.ncols = n_struct + self.m
        self.basis = list(range(n_struct, n_struct + self.m))

    def pivot(self, i, j, cost):
        row = self.rows[i]
        piv = row[j]
        inv = _ONE / piv
        for t in range(self.ncols + 1):
            row[t] *= inv
        for r in self.rows:
            if r is row:
                continue
            f = r[j]
            if f:
                for t in range(self.ncols + 1):
                    r[t] -= f * row[t]
        f = cost[j]
        if f:
            for t in range(self.ncols + 1):
                cost[t] -= f * row[t]
        self.basis[i] = j

    def run(self, cost, allow_cols, rule):
        """Minimize cost over the current basis; returns "optimal"|"unbounded".

        rule "bland" always takes the lowest-index improving column, which
        cannot cycle.  rule "largest" takes the most negative reduced cost but
        falls back to Bland permanently after a long degenerate streak, so
        termination is still guaranteed.
        """
        degenerate = 0
        use_bland = rule == "bland"
        limit = 2 * (self.m + self.ncols) + 16
        while True:
            j_in = None
            if use_bland:
                for j in range(allow_cols):
                    if cost[j] < 0:
                        j_in = j
                        break
            else:
                best = _ZERO
                for j in range(allow_cols):
                    if cost[j] < best:
                        best = cost[j]
                        j_in = j
            if j_in is None:
                return "optimal"
            i_piv, best_ratio, best_var = -1, None, None
            for i in range(self.m):
                a = self.rows[i][j_in]
                if a > 0:
                    ratio = self.rows[i][self.ncols] / a
                    if (
                        best_ratio is None
                        or ratio < best_ratio
                        or (ratio == best_ratio and self.basis[i] < best_var)
                    ):
                        best_ratio, best_var, i_piv = ratio, self.basis[i], i
            if i_piv < 0:
                return "unbounded"
            if best_ratio == 0:
                degenerate += 1
                if not use_bland and degenerate > limit:
                    use_bland = True
            else:
                degenerate = 0
            self.pivot(i_piv, j_in, cost)


def lp_solve(p: LinProgram, pivot_rule: str = "bland") -> LpOutcome:
    """Solve an exact LP: feasibility when no objective is given, else optimize.

    Returns an LpOutcome whose point (when present) satisfies every
    constraint exactly; substitution never involves rounding.
    """
    _validate(p)
    if pivot_rule not in ("bland", "largest"):
        raise InputError(f"unknown pivot rule {pivot_rule!r}")

    # Column layout: nonneg var -> one column; free var -> (plus, minus) pair.
    col_of = []
    n_struct = 0
    for s in p.var_sign:
        if s == "nonneg":
            col_of.append((n_struct, None))
            n_struct += 1
        else:
            col_of.append((n_struct, n_struct + 1))
            n_struct += 2
    n_slack = sum(1 for _, rel, _ in p.constraints if rel != "=")
    rows, rhs = [], []
    slack_at = n_struct
    for coeffs, rel, b in p.constraints:
        row = [_ZERO] * (n_struct + n_slack)
        for x, (cp, cm) in zip(coeffs, col_of):
            if x:
                row[cp] = mpq(x)
                if cm is not None:
                    row[cm] = -mpq(x)
        if rel != "=":
            row[slack_at] = _ONE if rel == "<=" else -_ONE
            slack_at += 1
        b = mpq(b)
        if b < 0:
            row = [-x for x in row]
            b = -b
        rows.append(row)
        rhs.append(b)
    n_struct += n_slack

    tab = _Tableau(rows, rhs, n_struct)

    # Phase 1: minimize the sum of artificials starting from the artificial basis.
    cost = [_ZERO] * (tab.ncols + 1)
    for r in tab.rows:
        for t in range(tab.n):
            cost[t] -= r[t]
        cost[tab.ncols] -= r[tab.ncols]
    if tab.run(cost, tab.art0, pivot_rule) == "unbounded":
        raise InternalError("phase-1 objective is bounded below but simplex reported unbounded")
    if -cost[tab.ncols] != 0:
        return LpOutcome(status="infeasible")

    # Drive leftover artificials out of the basis; rows that cannot pivot are
    # redundant and dropped.
    i = 0
    while i < tab.m:
        if tab.basis[i] >= tab.art0:
            for j in range(tab.art0):
                if tab.rows[i][j] != 0:
                    tab.pivot(i, j, cost)
                    break
            else:
                del tab.rows[i]
                del tab.basis[i]
                tab.m -= 1
                continue
        i += 1

    def extract_point():
        vals = [_ZERO] * tab.ncols
        for i in range(tab.m):
            vals[tab.basis[i]] = tab.rows[i][tab.ncols]
        out = []
        for cp, cm in col_of:
            out.append(vals[cp] - vals[cm] if cm is not None else vals[cp])
        return tuple(out)

    if p.objective is None:
        return LpOutcome(status="feasible", point=extract_point())

    obj, sense = p.objective
    c_std = [_ZERO] * (tab.ncols + 1)
    for x, (cp, cm) in zip(obj, col_of):
        v = mpq(x) if sense == "min" else -mpq(x)
        c_std[cp] += v
        if cm is not None:
            c_std[cm] -= v
    # Reduced costs relative to the phase-1 basis.
    cost2 = list(c_std)
    for i in range(tab.m):
        f = cost2[tab.basis[i]]
        if f:
            row = tab.rows[i]
            for t in range(tab.ncols + 1):
                cost2[t] -= f * row[t]
    status = tab.run(cost2, tab.art0, pivot_rule)
    if status == "unbounded":
        return LpOutcome(status="unbounded")
    point = extract_point()
    value = sum((c * x for c, x in zip(obj, point)), _ZERO)
    return LpOutcome(status="optimal", point=point, value=value)


def affine_rank(points) -> int:
    """Dimension of the affine hull of a nonempty list of rational points."""
    pts = [tuple(pt) for pt in points]
    if not pts:
        raise InputError("affine_rank needs at least one point")
    width = len(pts[0])
    for pt in pts:
        if len(pt) != width:
            raise InputError("points have inconsistent lengths")
    base = pts[0]
    rows = [[mpq(pt[j]) - mpq(base[j]) for j in range(width)] for pt in pts[1:]]
    rank = 0
    col = 0
    while rank < len(rows) and col < width:
        piv = None
        for i in range(rank, len(rows)):
            if rows[i][col] != 0:
                piv = i
                break
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        prow = rows[rank]
        inv = _ONE / prow[col]
        for i in range(rank + 1, len(rows)):
            f = rows[i][col]
            if f:
                f *= inv
                ri = rows[i]
                for j in range(col, width):
                    ri[j] -= f * prow[j]
        rank += 1
        col += 1
    return rank


def check_point(p: LinProgram, point) -> bool:
    """True iff the point satisfies every constraint of the program exactly."""
    if len(point) != p.num_vars:
        raise InputError("point length does not match num_vars")
    for coeffs, rel, b in p.constraints:
        lhs = sum((c * x for c, x in zip(coeffs, point)), _ZERO)
        if rel == "<=" and not lhs <= b:
            return False
        if rel == ">=" and not lhs >= b:
            return False
        if rel == "=" and lhs != b:
            return False
    for s, x in zip(p.var_sign, point):
        if s == "nonneg" and x < 0:
            return False
    return True
