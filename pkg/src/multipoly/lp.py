"""Exact LP maximization and Fourier-Motzkin elimination over the rationals.

The simplex keeps a condensed dictionary (basic rows x nonbasic columns) as an
integer matrix over one common denominator and pivots with the fraction-free
integer update, so every intermediate value is exact. Arrays start as int64
and are promoted to Python-int object arrays before any entry could overflow.

Decision variables are free; each row gets a nonnegative slack. Free variables
are pivoted into the basis first and never leave it. Entering and leaving
variables follow Bland's rule on the fixed variable numbering (decision
variables in canonical order, then slacks in row order).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional

import numpy as np

from .formulation import InequalitySystem, LinearInequality, var

_INT64_SAFE = 2**30  # entries below this keep a*b - c*d inside int64


@dataclass
class LpSolution:
    status: str  # "optimal", "unbounded" or "infeasible"
    objective: Optional[Fraction] = None
    point: dict = field(default_factory=dict)
    basis: list = field(default_factory=list)

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"


def _lcm_den(values) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, Fraction(v).denominator)
    return out


class _Tableau:
    def __init__(self, M, d, basic, nonbasic, free_count):
        self.M = M
        self.d = d
        self.basic = basic
        self.nonbasic = nonbasic
        self.free_count = free_count

    def copy(self):
        return _Tableau(self.M.copy(), self.d, list(self.basic), list(self.nonbasic), self.free_count)

    def is_free(self, index):
        return index < self.free_count

    def _guard(self):
        if self.M.dtype != object and (int(np.abs(self.M).max()) >= _INT64_SAFE or self.d >= _INT64_SAFE):
            self.M = self.M.astype(object)

    def pivot(self, r, s):
        self._guard()
        M, d = self.M, self.d
        p = M[r, s]
        col = M[:, s].copy()
        row = M[r, :].copy()
        new = (M * p - np.outer(col, row)) // d
        new[:, s] = col
        new[r, :] = -row
        new[r, s] = d
        if p < 0:
            new = -new
            p = -p
        self.M = new
        self.d = int(p)
        self.basic[r], self.nonbasic[s - 1] = self.nonbasic[s - 1], self.basic[r]

    def value(self, i, j=0) -> Fraction:
        return Fraction(int(self.M[i, j]), self.d)

    def entering(self):
        """Bland: nonbasic with positive reduced cost and smallest index."""
        obj = self.M[-1, 1:]
        best = None
        for j in np.nonzero(obj > 0)[0]:
            idx = self.nonbasic[j]
            if self.is_free(idx):
                continue
            if best is None or idx < self.nonbasic[best]:
                best = j
        return None if best is None else best + 1

    def leaving(self, s):
        """Ratio test over slack rows; ties broken by smallest basic index."""
        M = self.M
        best = None
        for i in np.nonzero(M[:-1, s] < 0)[0]:
            if self.is_free(self.basic[i]):
                continue
            if best is None:
                best = i
                continue
            # compare M[i,0]/-M[i,s] with M[best,0]/-M[best,s]
            lhs = int(M[i, 0]) * int(-M[best, s])
            rhs = int(M[best, 0]) * int(-M[i, s])
            if lhs < rhs or (lhs == rhs and self.basic[i] < self.basic[best]):
                best = i
        return best

    def run(self, max_pivots=100000):
        for _ in range(max_pivots):
            s = self.entering()
            if s is None:
                return "optimal"
            r = self.leaving(s)
            if r is None:
                return "unbounded"
            self.pivot(r, s)
        raise RuntimeError("simplex did not terminate")


class ExactLP:
    """Feasible dictionary for ``system``, reusable across many objectives.

    Phase 0 (free variables into the basis) and phase 1 (auxiliary variable)
    run once in the constructor; :meth:`maximize` starts each objective from
    that same basis, so results do not depend on call history.
    """

    def __init__(self, system: InequalitySystem):
        self.variables = system.variables
        self.index = {x: j for j, x in enumerate(self.variables)}
        self.rows = system.rows
        n, m = len(self.variables), len(self.rows)
        M = np.zeros((m + 1, n + 1), dtype=np.int64)
        big = False
        for i, row in enumerate(self.rows):
            scale = _lcm_den(list(row.coeffs.values()) + [row.rhs])
            b = int(row.rhs * scale)
            M[i, 0] = b if abs(b) < _INT64_SAFE else 0
            big |= abs(b) >= _INT64_SAFE
            for x, c in row.coeffs.items():
                a = int(c * scale)
                big |= abs(a) >= _INT64_SAFE
                M[i, 1 + self.index[x]] = -a if abs(a) < _INT64_SAFE else 0
        if big:
            M = M.astype(object)
            for i, row in enumerate(self.rows):
                scale = _lcm_den(list(row.coeffs.values()) + [row.rhs])
                M[i, 0] = int(row.rhs * scale)
                for x, c in row.coeffs.items():
                    M[i, 1 + self.index[x]] = -int(c * scale)
        # variable numbering: 0..n-1 decision (free), n..n+m-1 slacks
        t = _Tableau(M, 1, [n + i for i in range(m)], list(range(n)), n)
        self.idle = set()  # free variables appearing in no row
        self._phase0(t)
        self.status = self._phase1(t)
        self.start = t

    def _phase0(self, t: _Tableau):
        n = len(self.variables)
        for j in range(n):
            s = t.nonbasic.index(j) + 1
            best = None
            for i in np.nonzero(t.M[:-1, s])[0]:
                if t.is_free(t.basic[i]):
                    continue
                if best is None:
                    best = i
                    continue
                lhs = abs(int(t.M[i, 0])) * abs(int(t.M[best, s]))
                rhs = abs(int(t.M[best, 0])) * abs(int(t.M[i, s]))
                if lhs < rhs or (lhs == rhs and t.basic[i] < t.basic[best]):
                    best = i
            if best is None:
                self.idle.add(j)
            else:
                t.pivot(best, s)

    def _phase1(self, t: _Tableau) -> str:
        slack_rows = [i for i in range(len(t.basic)) if not t.is_free(t.basic[i])]
        if all(t.M[i, 0] >= 0 for i in slack_rows):
            return "feasible"
        aux = len(self.variables) + len(self.rows)
        col = np.zeros((t.M.shape[0], 1), dtype=t.M.dtype)
        for i in slack_rows:
            col[i, 0] = t.d
        col[-1, 0] = -t.d
        t.M = np.hstack([t.M, col])
        t.nonbasic.append(aux)
        s = t.M.shape[1] - 1
        r = min(slack_rows, key=lambda i: (Fraction(int(t.M[i, 0])), t.basic[i]))
        t.pivot(r, s)
        t.run()
        if t.M[-1, 0] < 0:
            return "infeasible"
        if aux in t.basic:
            r = t.basic.index(aux)
            cols = [j for j in range(1, t.M.shape[1]) if t.M[r, j] != 0]
            s = min(cols, key=lambda j: t.nonbasic[j - 1])
            t.pivot(r, s)
        s = t.nonbasic.index(aux) + 1
        t.M = np.delete(t.M, s, axis=1)
        del t.nonbasic[s - 1]
        return "feasible"

    def maximize(self, objective: Mapping) -> LpSolution:
        objective = {var(k): Fraction(c) for k, c in objective.items() if c}
        unknown = [x for x in objective if x not in self.index]
        if unknown:
            raise KeyError(f"objective uses undeclared variables {unknown}")
        if self.status == "infeasible":
            return LpSolution("infeasible")
        for x, c in objective.items():
            if self.index[x] in self.idle:
                return LpSolution("unbounded")
        t = self.start.copy()
        L = _lcm_den(objective.values())
        cint = {self.index[x]: int(c * L) for x, c in objective.items()}
        obj = np.zeros(t.M.shape[1], dtype=object)
        for i, b in enumerate(t.basic):
            if b in cint:
                obj = obj + cint[b] * t.M[i, :].astype(object)
        for j, nb in enumerate(t.nonbasic):
            if nb in cint:
                obj[j + 1] += cint[nb] * t.d
        if t.M.dtype != object and max(abs(int(v)) for v in obj) >= _INT64_SAFE:
            t.M = t.M.astype(object)
        t.M[-1, :] = obj.astype(t.M.dtype) if t.M.dtype != object else obj
        status = t.run()
        if status != "optimal":
            return LpSolution(status)
        point = {x: Fraction(0) for x in self.variables}
        for i, b in enumerate(t.basic):
            if t.is_free(b):
                point[self.variables[b]] = t.value(i)
        value = t.value(len(t.basic)) / L
        return LpSolution("optimal", value, point, list(t.basic))


def solve_max(system: InequalitySystem, objective: Mapping) -> LpSolution:
    return ExactLP(system).maximize(objective)


# --------------------------------------------------------------------------- projection


def _primitive(row: LinearInequality) -> LinearInequality:
    """Scale by a positive factor so all data are coprime integers."""
    values = list(row.coeffs.values()) + [row.rhs]
    den = _lcm_den(values)
    ints = [int(v * den) for v in values]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    if g == 0:
        return row
    return row.scaled(Fraction(den, g))


def fourier_motzkin_eliminate(system: InequalitySystem, variable) -> InequalitySystem:
    x = var(variable)
    pos, neg, keep = [], [], []
    for row in system:
        c = row.coeffs.get(x, 0)
        (pos if c > 0 else neg if c < 0 else keep).append(row)
    out = InequalitySystem(v for v in system.variables if v != x)
    out.extend(keep)
    for a in pos:
        for b in neg:
            ca, cb = a.coeffs[x], -b.coeffs[x]
            combined = a.scaled(cb) + b.scaled(ca)
            combined.coeffs.pop(x, None)
            row = LinearInequality(combined.coeffs, combined.rhs, "fm")
            if row.is_trivial() and row.rhs >= 0:
                continue
            out.add(_primitive(row))
    return out
