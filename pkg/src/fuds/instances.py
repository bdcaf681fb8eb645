"""Reading, writing and generating benchmark instances.

Three text formats are supported:

``dimacs-cnf``
    ``c`` comment lines, one ``p cnf <vars> <clauses>`` line, then clauses as
    whitespace-separated signed integers each terminated by ``0`` (a clause
    may span lines). A ``%`` line after the last clause, followed only by
    ``0`` tokens, is tolerated as in SATLIB distributions.

``orlib-scp``
    Whitespace-separated integers, free line breaks: ``m n``, then ``n``
    column costs, then for every row a count ``k`` followed by ``k`` 1-based
    column indices.

``tsp-matrix``
    First line ``n``, then ``n`` lines of ``n`` space-separated distances
    written with 17 significant digits.

All parse errors are :class:`ParseError` subclasses carrying a 1-based line
number.
"""

from __future__ import annotations

import os
from typing import Iterator, Optional

import numpy as np

from fuds.problems.sat import Cnf3Instance
from fuds.problems.scp import ScpInstance
from fuds.problems.tsp import TspInstance

FORMATS = ("dimacs-cnf", "orlib-scp", "tsp-matrix")


class ParseError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class MissingProblemLine(ParseError):
    pass


class DuplicateProblemLine(ParseError):
    pass


class ClauseCountMismatch(ParseError):
    pass


class VariableOutOfRange(ParseError):
    pass


class EmptyClause(ParseError):
    pass


class ClauseTooLong(ParseError):
    pass


class UnterminatedClause(ParseError):
    pass


class MalformedToken(ParseError):
    pass


class TruncatedInput(ParseError):
    pass


class IndexOutOfRange(ParseError):
    pass


class EmptyRow(ParseError):
    pass


class TrailingData(ParseError):
    pass


class BadMatrix(ParseError):
    pass


def _tokens(text: str) -> Iterator[tuple[str, int]]:
    for lineno, line in enumerate(text.splitlines(), start=1):
        for tok in line.split():
            yield tok, lineno


def _int(tok: str, line: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise MalformedToken(f"expected an integer, got {tok!r}", line) from None


# -- DIMACS CNF ---------------------------------------------------------------


def parse_dimacs_cnf(text: str) -> Cnf3Instance:
    n_vars = n_decl = None
    clauses: list[list[int]] = []
    current: list[int] = []
    current_line = None
    ended = False
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        last_line = lineno
        if line.startswith("c"):
            continue
        if line.startswith("p"):
            if n_vars is not None:
                raise DuplicateProblemLine("second problem line", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise MalformedToken(f"bad problem line {line!r}", lineno)
            n_vars, n_decl = _int(parts[2], lineno), _int(parts[3], lineno)
            if n_vars < 1 or n_decl < 0:
                raise MalformedToken(f"bad problem sizes in {line!r}", lineno)
            continue
        if line.startswith("%"):
            if current:
                raise UnterminatedClause("clause not terminated by 0 before '%'", current_line)
            ended = True
            continue
        if n_vars is None:
            raise MissingProblemLine("clause data before the 'p cnf' line", lineno)
        for tok in line.split():
            lit = _int(tok, lineno)
            if ended:
                if lit != 0:
                    raise TrailingData(f"data after end marker: {tok!r}", lineno)
                continue
            if lit == 0:
                if not current:
                    raise EmptyClause("empty clause", lineno)
                if len(current) > 3:
                    raise ClauseTooLong(f"clause has {len(current)} literals, at most 3 allowed", lineno)
                clauses.append(current)
                current = []
                continue
            if abs(lit) > n_vars:
                raise VariableOutOfRange(f"literal {lit} outside +-1..{n_vars}", lineno)
            if not current:
                current_line = lineno
            current.append(lit)
    if n_vars is None:
        raise MissingProblemLine("no 'p cnf' line", last_line or 1)
    if current:
        raise UnterminatedClause("last clause is not terminated by 0", current_line)
    if len(clauses) != n_decl:
        raise ClauseCountMismatch(f"declared {n_decl} clauses, found {len(clauses)}", last_line)
    return Cnf3Instance(n_vars, clauses)


def serialize_dimacs_cnf(inst: Cnf3Instance, comment: str = "") -> str:
    lines = [f"c {c}" for c in comment.splitlines()]
    lines.append(f"p cnf {inst.n_vars} {inst.n_clauses}")
    lines.extend(" ".join(str(l) for l in c) + " 0" for c in inst.clauses)
    return "\n".join(lines) + "\n"


def gen_random_3sat(n_vars: int, n_clauses: int, seed: int) -> Cnf3Instance:
    """Uniform random 3-SAT: three distinct variables per clause, fair signs."""
    if n_vars < 3:
        raise ValueError("need at least 3 variables")
    rng = np.random.default_rng(seed)
    clauses = []
    for _ in range(n_clauses):
        vs = rng.choice(n_vars, size=3, replace=False) + 1
        signs = rng.integers(0, 2, size=3) * 2 - 1
        clauses.append([int(v * s) for v, s in zip(vs, signs)])
    return Cnf3Instance(n_vars, clauses)


# -- OR-Library SCP -----------------------------------------------------------


def parse_orlib_scp(text: str) -> ScpInstance:
    toks = _tokens(text)
    last = [1]

    def take(what: str) -> tuple[str, int]:
        try:
            tok, line = next(toks)
        except StopIteration:
            raise TruncatedInput(f"input ended while reading {what}", last[0]) from None
        last[0] = line
        return tok, line

    def take_int(what: str) -> tuple[int, int]:
        tok, line = take(what)
        return _int(tok, line), line

    m, line = take_int("row count")
    n, line = take_int("column count")
    if m < 1 or n < 1:
        raise MalformedToken(f"bad dimensions {m} x {n}", line)
    cost = []
    for j in range(n):
        tok, line = take(f"cost of column {j + 1}")
        try:
            c = float(tok)
        except ValueError:
            raise MalformedToken(f"expected a number, got {tok!r}", line) from None
        if not c > 0:
            raise MalformedToken(f"column {j + 1} has non-positive cost {tok}", line)
        cost.append(c)
    rows = []
    for i in range(m):
        k, line = take_int(f"cover count of row {i + 1}")
        if k < 1:
            raise EmptyRow(f"row {i + 1} lists {k} covering columns", line)
        cols = []
        for _ in range(k):
            j, line = take_int(f"column index in row {i + 1}")
            if not 1 <= j <= n:
                raise IndexOutOfRange(f"column index {j} outside 1..{n} in row {i + 1}", line)
            cols.append(j - 1)
        rows.append(cols)
    for tok, line in toks:
        raise TrailingData(f"unexpected data after the last row: {tok!r}", line)
    return ScpInstance(rows, cost)


def serialize_orlib_scp(inst: ScpInstance, per_line: int = 12) -> str:
    def wrap(values):
        vals = list(values)
        return [" ".join(vals[i : i + per_line]) for i in range(0, len(vals), per_line)]

    lines = [f"{inst.m_rows} {inst.n_cols}"]
    lines += wrap(f"{c:.17g}" for c in inst.cost)
    for cols in inst.rows:
        lines.append(str(len(cols)))
        lines += wrap(str(j + 1) for j in cols)
    return "\n".join(lines) + "\n"


def gen_random_scp(m_rows: int, n_cols: int, density: float, seed: int, max_cost: int = 100) -> ScpInstance:
    """Random instance in the style of the OR-Library scp4x set.

    Each row gets at least one column and each column covers at least one
    row; the rest of the incidence is filled to roughly ``density``. Costs
    are integers uniform on ``1..max_cost``.
    """
    rng = np.random.default_rng(seed)
    cover = rng.random((m_rows, n_cols)) < density
    for i in np.flatnonzero(~cover.any(axis=1)):
        cover[i, rng.integers(n_cols)] = True
    for j in np.flatnonzero(~cover.any(axis=0)):
        cover[rng.integers(m_rows), j] = True
    cost = rng.integers(1, max_cost + 1, size=n_cols)
    return ScpInstance([np.flatnonzero(r).tolist() for r in cover], cost)


# -- TSP distance matrix ------------------------------------------------------


def gen_random_tsp(n_cities: int, seed: int) -> TspInstance:
    """Symmetric matrix whose ``i < j`` entries are i.i.d. uniform on [0, 1].

    Entries are drawn in row-major order of the upper triangle.
    """
    if n_cities < 2:
        raise ValueError(f"need at least 2 cities, got {n_cities}")
    rng = np.random.default_rng(seed)
    iu = np.triu_indices(n_cities, 1)
    d = np.zeros((n_cities, n_cities))
    d[iu] = rng.random(iu[0].size)
    d.T[iu] = d[iu]
    return TspInstance(d)


def serialize_tsp(inst: TspInstance) -> str:
    rows = [" ".join(f"{v:.17g}" for v in row) for row in inst.dist]
    return f"{inst.n_cities}\n" + "\n".join(rows) + "\n"


def parse_tsp(text: str) -> TspInstance:
    lines = [(i, l.split()) for i, l in enumerate(text.splitlines(), start=1) if l.strip()]
    if not lines:
        raise TruncatedInput("empty input", 1)
    first_line, head = lines[0]
    if len(head) != 1:
        raise MalformedToken("first line must hold only the city count", first_line)
    n = _int(head[0], first_line)
    if n < 2:
        raise MalformedToken(f"need at least 2 cities, got {n}", first_line)
    body = lines[1:]
    if len(body) < n:
        raise TruncatedInput(f"expected {n} matrix rows, found {len(body)}", body[-1][0] if body else first_line)
    if len(body) > n:
        raise TrailingData("extra lines after the matrix", body[n][0])
    d = np.empty((n, n))
    for r, (lineno, parts) in enumerate(body):
        if len(parts) != n:
            raise BadMatrix(f"row {r + 1} has {len(parts)} entries, expected {n}", lineno)
        for c, tok in enumerate(parts):
            try:
                d[r, c] = float(tok)
            except ValueError:
                raise MalformedToken(f"expected a number, got {tok!r}", lineno) from None
        if d[r, r] != 0.0:
            raise BadMatrix(f"nonzero diagonal entry {parts[r]}", lineno)
        if np.any(d[r] < 0) or np.any(d[r] > 1) or not np.all(np.isfinite(d[r])):
            raise BadMatrix("distances must lie in [0, 1]", lineno)
    asym = np.abs(d - d.T)
    if asym.max() > 1e-12:
        r, c = np.unravel_index(int(asym.argmax()), asym.shape)
        raise BadMatrix(f"matrix is not symmetric at ({r}, {c})", body[max(r, c)][0])
    iu = np.triu_indices(n, 1)
    d.T[iu] = d[iu]
    return TspInstance(d)


# -- files --------------------------------------------------------------------

_PARSERS = {"dimacs-cnf": parse_dimacs_cnf, "orlib-scp": parse_orlib_scp, "tsp-matrix": parse_tsp}


def load_instance(path: str | os.PathLike, kind: str):
    """Read and parse an instance file of the given format."""
    if kind not in _PARSERS:
        raise ValueError(f"unknown instance format {kind!r}; expected one of {FORMATS}")
    with open(path, encoding="ascii") as fh:
        return _PARSERS[kind](fh.read())
