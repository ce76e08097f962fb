"""Writer and reader for the CPLEX-style LP text format.

Coefficients are printed as exact decimals. A row (or the objective) with a
non-terminating coefficient is multiplied by the lcm of its denominators and
the factor is recorded in a ``\\ scale`` comment, which the reader undoes.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Mapping, Optional

from .errors import ParseError, RequiresScaling
from .formulation import InequalitySystem, LinearInequality, VariableId, var

DIGIT_BUDGET = 60
TERMS_PER_LINE = 8


def _terminates(q: int) -> bool:
    for p in (2, 5):
        while q % p == 0:
            q //= p
    return q == 1


def decimal_string(x: Fraction) -> str:
    """Exact decimal rendering of a rational with a terminating expansion."""
    x = Fraction(x)
    if not _terminates(x.denominator):
        raise RequiresScaling(f"{x} has no finite decimal expansion")
    if x.denominator == 1:
        return str(x.numerator)
    k = 0
    while (10**k) % x.denominator:
        k += 1
    digits = str(abs(x.numerator) * (10**k // x.denominator)).rjust(k + 1, "0")
    sign = "-" if x < 0 else ""
    return f"{sign}{digits[:-k]}.{digits[-k:]}".rstrip("0")


def _scale_factor(values, budget: int) -> int:
    """1 if all values are decimal-representable, else the lcm of denominators."""
    values = [Fraction(v) for v in values]
    if all(_terminates(v.denominator) for v in values):
        return 1
    factor = 1
    for v in values:
        factor = math.lcm(factor, v.denominator)
    for v in values:
        if len(decimal_string(v * factor).replace("-", "").replace(".", "")) > budget:
            raise RequiresScaling(f"scaling by {factor} exceeds the {budget}-digit budget")
    return factor


def _terms(coeffs: Mapping, factor: int) -> list[str]:
    out = []
    for x, c in coeffs.items():
        c = Fraction(c) * factor
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        out.append(f"{sign} {x.name}" if mag == 1 else f"{sign} {decimal_string(mag)} {x.name}")
    return out


def _wrap(head: str, terms: list[str], tail: str = "") -> list[str]:
    chunks = [terms[i:i + TERMS_PER_LINE] for i in range(0, len(terms), TERMS_PER_LINE)] or [[]]
    lines = [f" {head} " + " ".join(chunks[0])]
    lines += ["   " + " ".join(c) for c in chunks[1:]]
    if tail:
        lines[-1] += f" {tail}"
    return [line.rstrip() for line in lines]


def _row_name(i: int, row: LinearInequality) -> str:
    tag = "_".join(t for t in row.tags if t) or "row"
    return f"c{i}_{tag.replace(' ', '_')}"


def emit_lp(system: InequalitySystem, objective: Optional[Mapping] = None, digit_budget: int = DIGIT_BUDGET) -> str:
    objective = {var(k): Fraction(c) for k, c in (objective or {}).items() if c}
    objective = dict(sorted(objective.items()))
    lines = []
    factor = _scale_factor(objective.values(), digit_budget)
    if factor != 1:
        lines.append(f"\\ scale obj {factor}")
    lines.append("Maximize")
    lines += _wrap("obj:", _terms(objective, factor))
    lines.append("Subject To")
    for i, row in enumerate(system, start=1):
        name = _row_name(i, row)
        factor = _scale_factor(list(row.coeffs.values()) + [row.rhs], digit_budget)
        if factor != 1:
            lines.append(f"\\ scale {name} {factor}")
        terms = _terms(row.coeffs, factor)
        if not terms and system.variables:
            terms = ["0 " + system.variables[0].name]
        lines += _wrap(f"{name}:", terms, f"<= {decimal_string(row.rhs * factor)}")
    lines.append("Bounds")
    for x in system.variables:
        lines.append(f" {x.name} free")
    lines.append("End")
    return "\n".join(lines) + "\n"


def _parse_terms(tokens: list[str], where: str) -> dict:
    coeffs: dict = {}
    sign, coef = 1, None
    for tok in tokens:
        if tok in "+-":
            sign = -1 if tok == "-" else 1
            continue
        try:
            coef = Fraction(tok)
            continue
        except ValueError:
            pass
        x = VariableId.from_name(tok)
        c = sign * (coef if coef is not None else Fraction(1))
        coeffs[x] = coeffs.get(x, 0) + c
        sign, coef = 1, None
    if coef:
        raise ParseError(f"dangling constant {coef} in {where}")
    return coeffs


def parse_lp(text: str) -> tuple[InequalitySystem, dict]:
    """Read text produced by :func:`emit_lp`; returns the system and the objective."""
    scales: dict = {}
    section = None
    blocks: dict = {"Maximize": [], "Subject To": [], "Bounds": []}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("\\"):
            parts = line[1:].split()
            if len(parts) == 3 and parts[0] == "scale":
                scales[parts[1]] = int(parts[2])
            continue
        if not line:
            continue
        if line in ("Maximize", "Subject To", "Bounds"):
            section = line
            continue
        if line == "End":
            break
        if section is None:
            raise ParseError(f"unexpected text before a section header: {line!r}", lineno, 1)
        blocks[section] += line.split()

    objective = {}
    tokens = blocks["Maximize"]
    if tokens:
        if tokens[0] != "obj:":
            raise ParseError("objective must be named 'obj'")
        objective = {x: Fraction(c) / scales.get("obj", 1) for x, c in _parse_terms(tokens[1:], "objective").items() if c}

    rows = []
    current = None
    tokens = blocks["Subject To"]
    i = 0
    while i < len(tokens):
        tok = tokens[i]
        if tok.endswith(":") and current is None:
            current = (tok[:-1], [])
        elif tok == "<=":
            if current is None or i + 1 >= len(tokens):
                raise ParseError("malformed constraint")
            name, body = current
            factor = scales.get(name, 1)
            coeffs = {x: Fraction(c) / factor for x, c in _parse_terms(body, name).items()}
            tag = name.split("_", 1)[1] if "_" in name else ""
            tags = tuple(t for t in tag.split("_") if t) if tag != "row" else ("",)
            rows.append(LinearInequality(coeffs, Fraction(tokens[i + 1]) / factor, tags))
            current = None
            i += 1
        elif current is None:
            raise ParseError(f"expected a constraint name, got {tok!r}")
        else:
            current[1].append(tok)
        i += 1

    variables = []
    tokens = blocks["Bounds"]
    for j in range(0, len(tokens), 2):
        if j + 1 >= len(tokens) or tokens[j + 1] != "free":
            raise ParseError("only 'free' bounds are supported")
        variables.append(VariableId.from_name(tokens[j]))
    return InequalitySystem(variables, rows), objective

