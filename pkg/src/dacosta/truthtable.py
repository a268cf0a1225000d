"""Row-branching truth tables and the table-side decision procedure.

The table for a goal (plus premises) has one column per distinct subformula,
sorted by (complexity, canonical text).  Atom columns branch over the whole
value domain; a compound column branches over the multioperation cell of its
children's values, in canonical value order, depth first.  The valuation
restriction is applied directly while branching: a cell value that the
restriction forbids becomes a discarded stub row (kept only for display).

Entailment: premises entail the goal iff every live row that designates all
premise columns designates the goal column.

Two engines share this semantics:

  build_table  materializes rows in canonical depth-first order (display,
               small-scale oracle checks); guarded by a row cap.
  decide       computes the verdict, exact live-row count and a countermodel
               without materializing rows, by dynamic programming over a
               liveness-minimizing column order.  Formulas whose tables have
               astronomically many rows (iterated-consistency towers) stay
               feasible because only the value combinations of the columns
               still referenced later are kept.

Verdicts, live-row counts and countermodel existence are order-independent
facts about the constraint system, so the two engines agree everywhere; the
test suite enforces that.
"""

from __future__ import annotations

import sys
import time
from dataclasses import dataclass, field

from . import algebra
from .errors import ExtensionError, ResourceLimitError
from .formula import VAR, NEG, CONS, AND, OR, IMP, ordered_subformulas

DEFAULT_MAX_ROWS = 5_000_000
DEFAULT_MAX_WORK = 50_000_000

_CONN_NAME = {NEG: "neg", CONS: "cons", AND: "and", OR: "or", IMP: "imp"}


class Valuation:
    """Read access to one restricted valuation over a finite formula domain."""

    def __init__(self, logic, assignment):
        self.logic = logic
        self.assignment = dict(assignment)
        self._names = algebra.value_names(logic)

    def __getitem__(self, formula):
        return self.assignment[formula]

    def __contains__(self, formula):
        return formula in self.assignment

    def value_name(self, formula):
        return self._names[self.assignment[formula]]

    def designated(self, formula):
        return self.assignment[formula] <= self.logic.n

    def items(self):
        return self.assignment.items()

    def atoms(self):
        return {f: v for f, v in self.assignment.items() if f.kind == VAR}

    def render(self, only_atoms=False):
        pairs = sorted(self.assignment.items(), key=lambda kv: (kv[0].complexity, kv[0].text))
        if only_atoms:
            pairs = [(f, v) for f, v in pairs if f.kind == VAR]
        return ", ".join(f"{f.text}={self._names[v]}" for f, v in pairs)

    def __repr__(self):
        return f"<Valuation {self.logic.name}: {self.render(only_atoms=True)}>"


# --------------------------------------------------------------------------
# Column plans


class _Plan:
    __slots__ = ("logic", "columns", "index", "entries", "n_designated_max",
                 "goal_ix", "premise_ix", "domain", "conj_cells", "pow1_values",
                 "full_domain")

    def __init__(self, logic, columns, goal=None, premises=()):
        self.logic = logic
        self.columns = columns
        self.index = {f: j for j, f in enumerate(columns)}
        self.n_designated_max = logic.n  # value indices <= n are designated
        tab = algebra.tables(logic)
        self.full_domain = tuple(range(logic.n + 2))
        self.conj_cells = algebra.forced_conj_cells(logic)
        self.pow1_values = algebra.forced_pow1_values(logic)
        entries = []
        for f in columns:
            if f.kind == VAR:
                kind, table, a_ix, b_ix = 0, None, -1, -1
            elif f.kind in (NEG, CONS):
                if f.kind == CONS and not logic.has_circ:
                    raise ValueError(
                        f"consistency connective not in signature of {logic.name}")
                kind, table = 1, tab[_CONN_NAME[f.kind]]
                a_ix, b_ix = self.index[f.left], -1
            else:
                kind, table = 2, tab[_CONN_NAME[f.kind]]
                a_ix, b_ix = self.index[f.left], self.index[f.right]
            # Restriction hooks: column b & ~b is tied to b's column; column
            # a^1 (= ~(a & ~a)) is tied to a's column when the logic forces it.
            conj_src = self.index[f.conj_base] if f.conj_base is not None else -1
            pow_src = -1
            if f.pow_height >= 1 and any(v is not None for v in self.pow1_values):
                pow_src = self.index[f.left.conj_base]
            entries.append((kind, table, a_ix, b_ix, conj_src, pow_src))
        self.entries = entries
        self.goal_ix = self.index[goal] if goal is not None else -1
        self.premise_ix = tuple(self.index[p] for p in premises)

    def candidates(self, j, values):
        """Cell for column j given the values list, after restriction forcing.

        Returns (live_tuple, pruned_tuple); pruned lists cell members removed
        by the restriction, in canonical order.
        """
        kind, table, a_ix, b_ix, conj_src, pow_src = self.entries[j]
        if kind == 0:
            cell = self.full_domain
        elif kind == 1:
            cell = table[values[a_ix]]
        else:
            cell = table[values[a_ix]][values[b_ix]]
        allowed = None
        if conj_src >= 0:
            allowed = self.conj_cells[values[conj_src]]
        if pow_src >= 0:
            forced = self.pow1_values[values[pow_src]]
            if forced is not None:
                allowed = {forced} if allowed is None else (allowed & {forced})
        if allowed is None:
            return cell, ()
        live = tuple(v for v in cell if v in allowed)
        pruned = tuple(v for v in cell if v not in allowed)
        return live, pruned


def _plan_for(logic, goal, premises):
    columns = ordered_subformulas(goal, premises)
    return _Plan(logic, columns, goal, premises)


# --------------------------------------------------------------------------
# Materialized tables


@dataclass
class Row:
    values: tuple  # None-padded after the violation column for discarded stubs
    status: str    # "live" | "discarded"


@dataclass
class Table:
    logic: object
    columns: list
    rows: list
    goal: object
    premises: tuple
    stats: dict = field(default_factory=dict)

    @property
    def live_rows(self):
        return [r for r in self.rows if r.status == "live"]


def build_table(logic, goal, premises=(), max_rows=DEFAULT_MAX_ROWS,
                collect_discarded=True):
    """Materialize the branching table in canonical depth-first order.

    Raises ResourceLimitError when the row count (live + discarded stubs)
    would exceed `max_rows`.
    """
    start = time.perf_counter()
    plan = _plan_for(logic, goal, tuple(premises))
    ncols = len(plan.columns)
    rows = []
    n_live = 0
    n_disc = 0
    values = [0] * ncols

    # Explicit DFS over columns; each frame iterates the column's cell in
    # canonical order, interleaving discarded stubs where forcing pruned.
    def emit(j):
        nonlocal n_live, n_disc
        if j == ncols:
            rows.append(Row(tuple(values), "live"))
            n_live += 1
            if n_live + n_disc > max_rows:
                raise ResourceLimitError(
                    f"table exceeds {max_rows} rows; raise max_rows to materialize")
            return
        live, pruned = plan.candidates(j, values)
        pruned_set = set(pruned)
        kind, table, a_ix, b_ix, conj_src, pow_src = plan.entries[j]
        if kind == 0:
            cell = plan.full_domain
        elif kind == 1:
            cell = table[values[a_ix]]
        else:
            cell = table[values[a_ix]][values[b_ix]]
        for v in cell:
            if v in pruned_set:
                if collect_discarded:
                    stub = tuple(values[:j]) + (v,) + (None,) * (ncols - j - 1)
                    rows.append(Row(stub, "discarded"))
                n_disc += 1
                if n_live + n_disc > max_rows:
                    raise ResourceLimitError(
                        f"table exceeds {max_rows} rows; raise max_rows to materialize")
            else:
                values[j] = v
                emit(j + 1)

    old_limit = sys.getrecursionlimit()
    if ncols + 50 > old_limit:
        sys.setrecursionlimit(ncols + 100)
    try:
        emit(0)
    finally:
        sys.setrecursionlimit(old_limit)

    elapsed = time.perf_counter() - start
    table = Table(logic, plan.columns, rows, goal, tuple(premises))
    table.stats = {
        "rows_live": n_live,
        "rows_discarded": n_disc,
        "rows_total": n_live + n_disc,
        "elapsed": elapsed,
    }
    return table


def table_verdict(table):
    """(entailed, countermodel Valuation or None) read off a materialized table."""
    plan_goal = table.columns.index(table.goal)
    prem_ix = [table.columns.index(p) for p in table.premises]
    n = table.logic.n
    for row in table.rows:
        if row.status != "live":
            continue
        if all(row.values[p] <= n for p in prem_ix) and row.values[plan_goal] > n:
            assignment = dict(zip(table.columns, row.values))
            return False, Valuation(table.logic, assignment)
    return True, None


def render_table(table, show_discarded=False):
    names = algebra.value_names(table.logic)
    headers = [f.text for f in table.columns]
    widths = [max(len(h), max((len(names[v]) for v in range(len(names))), default=1))
              for h in headers]
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in table.rows:
        if row.status == "discarded" and not show_discarded:
            continue
        cells = []
        for v, w in zip(row.values, widths):
            if v is None:
                cells.append("".ljust(w))
            else:
                cells.append(names[v].ljust(w))
        line = "  ".join(cells)
        if row.status == "discarded":
            line += "  x"
        lines.append(line)
    return "\n".join(lines)


# --------------------------------------------------------------------------
# Decision procedure (no materialization)


@dataclass
class DecisionResult:
    logic: object
    goal: object
    premises: tuple
    entailed: bool
    countermodel: object  # Valuation | None
    stats: dict = field(default_factory=dict)


def _postorder(goal, premises):
    order = []
    seen = set()
    for root in (goal, *premises):
        if root in seen:
            continue
        stack = [(root, False)]
        while stack:
            f, expanded = stack.pop()
            if expanded:
                order.append(f)
                continue
            if f in seen:
                continue
            seen.add(f)
            stack.append((f, True))
            if f.kind in (NEG, CONS):
                if f.left not in seen:
                    stack.append((f.left, False))
            elif f.kind != VAR:
                if f.right not in seen:
                    stack.append((f.right, False))
                if f.left not in seen:
                    stack.append((f.left, False))
    return order


def decide(logic, goal, premises=(), max_work=DEFAULT_MAX_WORK):
    """Decide whether `premises` entail `goal` in `logic`.

    Exact over the same table semantics as build_table, but runs a frontier
    dynamic program over a postorder column order: after a column's last
    consumer is processed its value is dropped from the state, so only the
    reachable value combinations of the currently-live columns are stored.
    stats reports the exact live-row count of the canonical table.

    Raises ResourceLimitError after `max_work` state expansions.
    """
    start = time.perf_counter()
    premises = tuple(premises)
    order = _postorder(goal, premises)
    plan = _Plan(logic, order, goal, premises)
    ncols = len(order)
    n = logic.n
    premise_pos = set(plan.premise_ix)
    goal_pos = plan.goal_ix

    # last[i] = last position whose candidate computation reads column i.
    last = list(range(ncols))
    for i, (kind, table, a_ix, b_ix, conj_src, pow_src) in enumerate(plan.entries):
        for src in (a_ix, b_ix, conj_src, pow_src):
            if src >= 0 and last[src] < i:
                last[src] = i

    # alive[i]: positions assigned before i and still needed at or after i.
    alive = []
    cur = []
    slot_of = []  # per position: map position -> slot in the state tuple
    for i in range(ncols):
        alive.append(tuple(cur))
        slot_of.append({p: s for s, p in enumerate(cur)})
        cur = [p for p in cur if last[p] > i]
        if last[i] > i:
            cur.append(i)
    final_alive = tuple(cur)

    # Transition schema per position: which slots feed the cell lookup, and
    # which slots of (state + new value) survive into the next state.
    steps = []
    for i in range(ncols):
        kind, table, a_ix, b_ix, conj_src, pow_src = plan.entries[i]
        here = slot_of[i]
        a_slot = here[a_ix] if a_ix >= 0 else -1
        b_slot = here[b_ix] if b_ix >= 0 else -1
        c_slot = here[conj_src] if conj_src >= 0 else -1
        p_slot = here[pow_src] if pow_src >= 0 else -1
        nxt = alive[i + 1] if i + 1 < ncols else final_alive
        width = len(alive[i])
        keep = tuple(here[p] if p != i else width for p in nxt)
        steps.append((kind, table, a_slot, b_slot, c_slot, p_slot, keep))

    conj_cells = plan.conj_cells
    pow1_values = plan.pow1_values
    full_domain = plan.full_domain

    # State: (values of alive columns, premises-designated-so-far,
    #         goal flag: 0 unassigned / 1 designated / 2 undesignated).
    frontier = {((), 1, 0): 1}
    trace = []
    work = 0
    pruned_paths = 0

    for i in range(ncols):
        kind, table, a_slot, b_slot, c_slot, p_slot, keep = steps[i]
        is_prem = i in premise_pos
        is_goal = i == goal_pos
        new_frontier = {}
        back = {}
        for (vals, prem_ok, goal_st), count in frontier.items():
            work += 1
            if work > max_work:
                raise ResourceLimitError(
                    f"decision DP exceeded {max_work} state expansions")
            if kind == 0:
                cell = full_domain
            elif kind == 1:
                cell = table[vals[a_slot]]
            else:
                cell = table[vals[a_slot]][vals[b_slot]]
            allowed = None
            if c_slot >= 0:
                allowed = conj_cells[vals[c_slot]]
            if p_slot >= 0:
                forced = pow1_values[vals[p_slot]]
                if forced is not None:
                    allowed = {forced} if allowed is None else (allowed & {forced})
            for v in cell:
                if allowed is not None and v not in allowed:
                    pruned_paths += count
                    continue
                ext = vals + (v,)
                nvals = tuple(ext[s] for s in keep)
                nprem = prem_ok
                if is_prem and v > n:
                    nprem = 0
                ngoal = goal_st
                if is_goal:
                    ngoal = 1 if v <= n else 2
                key = (nvals, nprem, ngoal)
                prev = new_frontier.get(key)
                if prev is None:
                    new_frontier[key] = count
                    back[key] = ((vals, prem_ok, goal_st), v)
                else:
                    new_frontier[key] = prev + count
        frontier = new_frontier
        trace.append(back)

    rows_live = sum(frontier.values())
    violating = None
    for key in frontier:
        if key[1] == 1 and key[2] == 2:
            violating = key
            break
    entailed = violating is None

    countermodel = None
    if not entailed:
        assignment = {}
        key = violating
        for i in range(ncols - 1, -1, -1):
            prev_key, v = trace[i][key]
            assignment[order[i]] = v
            key = prev_key
        countermodel = Valuation(logic, assignment)

    elapsed = time.perf_counter() - start
    return DecisionResult(
        logic=logic, goal=goal, premises=premises, entailed=entailed,
        countermodel=countermodel,
        stats={
            "rows_live": rows_live,
            "rows_total": rows_live,
            "rows_discarded": pruned_paths,
            "work": work,
            "elapsed": elapsed,
        },
    )


# --------------------------------------------------------------------------
# Partial valuations: validation and extension


def check_valuation(logic, assignment):
    """Violations of the restricted-valuation conditions on `assignment`.

    `assignment` maps formulas to value indices; clauses fire only when every
    formula they mention is present.  An empty list means the assignment is
    the restriction of a genuine restricted valuation to its domain (given the
    domain is subformula-closed).
    """
    tab = algebra.tables(logic)
    conj_cells = algebra.forced_conj_cells(logic)
    pow1_values = algebra.forced_pow1_values(logic)
    m = logic.n + 2
    out = []
    for f, v in assignment.items():
        if not isinstance(v, int) or not 0 <= v < m:
            out.append(("range", f, f"value {v!r} outside the {m}-element domain"))
            continue
        if f.kind == VAR:
            continue
        if f.kind in (NEG, CONS):
            if f.kind == CONS and not logic.has_circ:
                out.append(("signature", f, f"@ not in the signature of {logic.name}"))
                continue
            if f.left in assignment:
                cell = tab[_CONN_NAME[f.kind]][assignment[f.left]]
                if v not in cell:
                    out.append(("hom", f, "value outside the multioperation cell"))
        else:
            if f.left in assignment and f.right in assignment:
                cell = tab[_CONN_NAME[f.kind]][assignment[f.left]][assignment[f.right]]
                if v not in cell:
                    out.append(("hom", f, "value outside the multioperation cell"))
        base = f.conj_base
        if base is not None and base in assignment:
            allowed = conj_cells[assignment[base]]
            if allowed is not None and v not in allowed:
                out.append(("restriction", f,
                            "conjunction value not forced-consistent with its base"))
        if f.pow_height >= 1:
            src = f.left.conj_base
            if src in assignment:
                forced = pow1_values[assignment[src]]
                if forced is not None and v != forced:
                    out.append(("restriction", f,
                                "iterated-consistency value breaks the descent clause"))
    return out


def extend_partial(logic, domain_formulas, nu0):
    """Extend a partial assignment to a restricted valuation over the domain.

    Preconditions: `domain_formulas` is subformula-closed, and `nu0` (a map
    from formulas in the domain to value indices) must be compatible with the
    multioperation cells and the restriction clauses.  Violations raise
    ExtensionError naming the offending formula.

    Unpinned columns are searched depth-first in canonical value order, so the
    result is deterministic; backtracking handles pins on formulas whose
    subformulas are unpinned.
    """
    domain = set(domain_formulas)
    columns = sorted(domain, key=lambda f: (f.complexity, f.text))
    for f in columns:
        kids = ()
        if f.kind in (NEG, CONS):
            kids = (f.left,)
        elif f.kind != VAR:
            kids = (f.left, f.right)
        for k in kids:
            if k not in domain:
                raise ExtensionError(
                    f"domain is not subformula-closed: {f.text} needs {k.text}",
                    formula=f)
    m = logic.n + 2
    for f, v in nu0.items():
        if f not in domain:
            raise ExtensionError(
                f"assigned formula {f.text} is outside the domain", formula=f)
        if not isinstance(v, int) or not 0 <= v < m:
            raise ExtensionError(
                f"value {v!r} for {f.text} is outside the {m}-element domain",
                formula=f)

    plan = _Plan(logic, columns)
    ncols = len(columns)
    values = [None] * ncols
    deepest = -1

    def search(j):
        nonlocal deepest
        if j == ncols:
            return True
        if j > deepest:
            deepest = j
        live, _ = plan.candidates(j, values)
        pinned = nu0.get(columns[j])
        if pinned is not None:
            if pinned not in live:
                return False
            values[j] = pinned
            if search(j + 1):
                return True
            values[j] = None
            return False
        for v in live:
            values[j] = v
            if search(j + 1):
                return True
        values[j] = None
        return False

    old_limit = sys.getrecursionlimit()
    if ncols + 50 > old_limit:
        sys.setrecursionlimit(ncols + 100)
    try:
        ok = search(0)
    finally:
        sys.setrecursionlimit(old_limit)
    if not ok:
        bad = columns[min(deepest, ncols - 1)] if ncols else None
        raise ExtensionError(
            "precondition violation: no restricted valuation extends the "
            f"assignment (stuck at {bad.text})", formula=bad)
    return _LazyValuation(logic, dict(zip(columns, values)))


class _LazyValuation(Valuation):
    """Valuation that grows its domain on demand.

    Queries for formulas outside the materialized domain re-run the
    extension search over the enlarged closure, with every earlier answer
    pinned; the extension construction guarantees a solution exists, so
    previously returned values never change.
    """

    def _ensure(self, formula):
        if formula not in self.assignment:
            needed = set(self.assignment) | set(ordered_subformulas(formula))
            wider = extend_partial(self.logic, needed, dict(self.assignment))
            self.assignment.update(wider.assignment)

    def __getitem__(self, formula):
        self._ensure(formula)
        return self.assignment[formula]

    def value_name(self, formula):
        self._ensure(formula)
        return self._names[self.assignment[formula]]

    def designated(self, formula):
        self._ensure(formula)
        return self.assignment[formula] <= self.logic.n
