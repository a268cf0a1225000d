"""Labelled tableaux for C_n, mbCcl and Cila.

Signed formulas L(f) carry a truth-value label; the label set is the logic's
value domain (T/t/F for the 3-valued logics, T_n/t^n_0../t^n_{n-1}/F_n for
C_n with n >= 2, encoded as value indices throughout).  A rule decomposes a
signed formula into branch extensions whose satisfying valuations are exactly
those of the premise formula: for every rule and every cell of the underlying
multioperations, the set of argument tuples reachable through the branches
equals the preimage of the label (an invariant the test suite checks
exhaustively).

A branch closes when it carries two labels on the same formula, or a signed
formula no restricted valuation can satisfy:

  3-valued logics:  t(x & ~x); additionally t(@x) in Cila
  C_n, n >= 2:      t^n_0(x) with t^n_k(x & ~x); t^n_k(x), k >= 1, with
                    T_n(x & ~x); t^n_k(x), k >= 1, with L(x^1) for
                    L != t^n_{k-1}

Provability: the tableau for premises g_1..g_m and goal f starts from
F(g_1 -> (g_2 -> ... (g_m -> f)...)); the goal is provable iff the completed
tableau has every branch closed.  (A tableau that merely *contains* a closed
branch is reported in stats as `contains_closed_branch`, but is not a sound
provability criterion: F(p -> (p & ~p)) completes with one closed and one open
branch while the formula is invalid.  The regression tests keep that example.)

An open complete branch yields a countermodel by reading off its labels and
extending them to a restricted valuation over the subformula domain.

Derived rules (enabled per call) shortcut iterated-consistency towers x^k:
they compress chains of basic expansions and may close a branch on the spot.
They exist for C_n and Cila; mbCcl has none (in its tables ~x can designate
x^1 freely, so the shortcuts would be unsound there).
"""

from __future__ import annotations

import os
import time
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

from . import algebra
from .errors import ResourceLimitError
from .formula import (VAR, NEG, CONS, AND, OR, IMP, And, Imp, Neg,
                      ordered_subformulas, pow)
from .truthtable import extend_partial

DEFAULT_MAX_NODES = 1_000_000

_CONN_LABEL = {NEG: "~", CONS: "@", AND: "&", OR: "|", IMP: "->"}


@dataclass
class SignedFormula:
    label: int
    formula: object
    used: bool = False

    def render(self, logic):
        return f"{algebra.value_names(logic)[self.label]}({self.formula.text})"


# --------------------------------------------------------------------------
# Basic rule tables.  Extensions are tuples of (side, label) pairs, side 0/1
# selecting the connective's left/right argument; they are resolved to
# concrete formulas at expansion time.


def _t1_rules():
    T, t, F = 0, 1, 2
    return {
        (T, NEG): (((0, F),), ((0, t),)),
        (t, NEG): (((0, t),),),
        (F, NEG): (((0, T),),),
        (T, AND): (((0, T), (1, T)), ((0, T), (1, t)), ((0, t), (1, T)), ((0, t), (1, t))),
        (t, AND): (((0, T), (1, t)), ((0, t), (1, T)), ((0, t), (1, t))),
        (F, AND): (((0, F),), ((1, F),)),
        (T, OR): (((0, T),), ((0, t),), ((1, T),), ((1, t),)),
        (t, OR): (((0, t),), ((1, t),)),
        (F, OR): (((0, F), (1, F)),),
        (T, IMP): (((0, F),), ((1, T),), ((1, t),)),
        (t, IMP): (((0, t), (1, T)), ((1, t),)),
        (F, IMP): (((0, T), (1, F)), ((0, t), (1, F))),
    }


def _cila_rules():
    T, t, F = 0, 1, 2
    rules = dict(_t1_rules())
    rules[(T, CONS)] = (((0, T),), ((0, F),))
    rules[(t, CONS)] = ()  # unsatisfiable; the branch closes on insertion
    rules[(F, CONS)] = (((0, t),),)
    return rules


def _mbccl_rules():
    T, t, F = 0, 1, 2
    rules = dict(_t1_rules())
    rules[(t, NEG)] = (((0, F),), ((0, t),))
    rules[(t, AND)] = (((0, T), (1, T)), ((0, T), (1, t)), ((0, t), (1, T)), ((0, t), (1, t)))
    rules[(t, OR)] = (((0, T),), ((0, t),), ((1, T),), ((1, t),))
    rules[(t, IMP)] = (((0, F),), ((1, T),), ((1, t),))
    rules[(T, CONS)] = (((0, T),), ((0, F),))
    rules[(t, CONS)] = (((0, T),), ((0, F),))
    rules[(F, CONS)] = (((0, t),),)
    return rules


def _cn_rules(n):
    T, F = 0, n + 1
    I = tuple(range(1, n + 1))
    D = tuple(range(0, n + 1))
    rules = {}
    rules[(T, NEG)] = tuple(((0, l),) for l in I) + (((0, F),),)
    for t in I:
        rules[(t, NEG)] = tuple(((0, l),) for l in I)
    rules[(F, NEG)] = (((0, T),),)
    rules[(T, AND)] = tuple(((0, a), (1, b)) for a in D for b in D)
    for t in I:
        rules[(t, AND)] = (tuple(((0, T), (1, b)) for b in I)
                           + tuple(((0, a), (1, b)) for a in I for b in I)
                           + tuple(((0, a), (1, T)) for a in I))
    rules[(F, AND)] = (((0, F),), ((1, F),))
    rules[(T, OR)] = tuple(((0, a),) for a in D) + tuple(((1, b),) for b in D)
    for t in I:
        rules[(t, OR)] = tuple(((0, a),) for a in I) + tuple(((1, b),) for b in I)
    rules[(F, OR)] = (((0, F), (1, F)),)
    rules[(T, IMP)] = (((0, F),),) + tuple(((1, b),) for b in D)
    for t in I:
        rules[(t, IMP)] = (tuple(((0, a), (1, T)) for a in I)
                           + tuple(((1, b),) for b in I))
    rules[(F, IMP)] = tuple(((0, a), (1, F)) for a in D)
    return rules


_rule_cache = {}


def _rules(logic):
    key = (logic.family, logic.n)
    cached = _rule_cache.get(key)
    if cached is None:
        if logic.family == "mbCcl":
            cached = _mbccl_rules()
        elif logic.family == "Cila":
            cached = _cila_rules()
        elif logic.n == 1:
            cached = _t1_rules()
        else:
            cached = _cn_rules(logic.n)
        _rule_cache[key] = cached
    return cached


def expand(logic, sf):
    """Branch extensions of a signed formula under the basic rules.

    Returns a tuple of extensions, each a tuple of SignedFormula; the empty
    tuple of extensions means the signed formula is unsatisfiable.  Atomic
    formulas have no rule (ValueError).
    """
    exts = _expand_raw(logic, sf.label, sf.formula)
    if exts is None:
        raise ValueError(f"no rule applies to the atomic formula {sf.formula.text}")
    return tuple(tuple(SignedFormula(l, f) for f, l in ext) for ext in exts)


def _expand_raw(logic, label, f):
    """Extensions as tuples of (formula, label), or None for atoms."""
    if f.kind == VAR:
        return None
    template = _rules(logic).get((label, f.kind))
    if template is None:
        raise ValueError(f"no rule for label {label} on {f.text} in {logic.name}")
    sides = (f.left, f.right)
    return tuple(tuple((sides[s], l) for s, l in ext) for ext in template)


# --------------------------------------------------------------------------
# Derived rules


def _derived_raw(logic, label, f):
    """Derived extensions as for _expand_raw, () meaning close-now (star),
    or None when no derived rule matches."""
    if logic.family == "mbCcl":
        return None
    n = logic.n
    T, F = 0, n + 1

    base = f.conj_base
    if base is not None:
        k = base.pow_height
        beta = base.pow_base
        if label == T:
            if k <= n - 1:
                return (((beta, k + 1),),)
            return ()
        if label == F:
            if k <= n - 1:
                return (((beta, T),),) + tuple(((beta, j + 1),) for j in range(k)) \
                    + (((beta, F),),)
            return None  # fall back to the basic F(&) split
        # label is some t^n_s
        if k <= n - 2:
            return tuple(((beta, j + 1),) for j in range(k + 1, n))
        return ()

    if f.pow_height >= 1:
        k = f.pow_height
        u = min(k, n)
        root = pow(f.pow_base, k - u)
        if label == T:
            return (((root, T),),) + tuple(((root, j + 1),) for j in range(u - 1)) \
                + (((root, F),),)
        if label == F:
            return (((root, u),),)
        s = label - 1
        if s <= n - u - 1:
            return (((root, s + u + 1),),)
        return ()

    if n >= 2 and f.kind == NEG and f.left.pow_height >= 1:
        k = f.left.pow_height
        u = min(k, n)
        root = pow(f.left.pow_base, k - u)
        if label == T:
            return tuple(((root, j + 1),) for j in range(u - 1, n))
        if label == F:
            return (((root, T),),) + tuple(((root, j + 1),) for j in range(u - 1)) \
                + (((root, F),),)
        if u <= n - 1:
            return tuple(((root, j + 1),) for j in range(u, n))
        return ()

    if f.kind == AND:
        seq = _powseq_decompose(f)
        if seq is not None:
            return _powseq_extensions(logic, seq[0], seq[1], label)

    if n == 1 and f.kind == AND and f.left.pow_height >= 1 and f.right.pow_height >= 1:
        x = f.left.left.conj_base
        y = f.right.left.conj_base
        if label == T:
            return (((x, 0), (y, 0)), ((x, 0), (y, 2)), ((x, 2), (y, 0)), ((x, 2), (y, 2)))
        if label == F:
            return (((x, 1),), ((y, 1),))
        return ()

    return None


def _powseq_decompose(f):
    """(base, k) when f is literally base^(k) = base^1 & ... & base^k with
    k >= 2, None otherwise."""
    parts = []
    cur = f
    while cur.kind == AND and cur.right.pow_height >= 1:
        parts.append(cur.right)
        cur = cur.left
    if cur.pow_height < 1:
        return None
    parts.append(cur)
    parts.reverse()
    if len(parts) < 2:
        return None
    base = parts[0].pow_base
    for i, g in enumerate(parts):
        if g.pow_height != i + 1 or g.pow_base is not base:
            return None
    return base, len(parts)


@lru_cache(maxsize=None)
def _pow_chain_step(family, n):
    """The successor map s -> value of x^1 when x has value s.  The
    restriction clauses pin the contradiction x & ~x for every inconsistent
    value, so the whole pow chain is a function of the base's value."""
    from .formula import Logic
    logic = Logic(family, n)
    tab = algebra.tables(logic)
    forced_conj = algebra.forced_conj_cells(logic)
    forced_pow1 = algebra.forced_pow1_values(logic)
    step = []
    for s in range(n + 2):
        if forced_pow1 is not None and forced_pow1[s] is not None:
            step.append(forced_pow1[s])
            continue
        conj = set()
        for w in tab["neg"][s]:
            conj.update(tab["and"][s][w])
        if forced_conj[s] is not None:
            conj &= forced_conj[s]
        nxt = set()
        for c in conj:
            nxt.update(tab["neg"][c])
        if len(nxt) != 1:
            raise AssertionError(f"pow chain not deterministic at state {s}")
        step.append(nxt.pop())
    return tuple(step)


@lru_cache(maxsize=None)
def _powseq_profiles(family, n, k):
    """For each base value s: the forced labels (v_1..v_k) of x^1..x^k and
    the set of values the chain conjunction x^(k) can take."""
    from .formula import Logic
    logic = Logic(family, n)
    step = _pow_chain_step(family, n)
    and_tab = algebra.tables(logic)["and"]
    profiles = []
    for s in range(n + 2):
        vs = []
        v = s
        for _ in range(k):
            v = step[v]
            vs.append(v)
        finals = {vs[0]}
        for v in vs[1:]:
            finals = {c for p in finals for c in and_tab[p][v]}
        profiles.append((tuple(vs), frozenset(finals)))
    return tuple(profiles)


def _powseq_extensions(logic, base, k, label):
    """Derived expansion of label(base^(k)): one branch per base value whose
    forced pow chain lets the conjunction reach the label.  Each branch pins
    the base and the whole chain base^1..base^k."""
    profiles = _powseq_profiles(logic.family, logic.n, k)
    out = []
    for s, (vs, finals) in enumerate(profiles):
        if label not in finals:
            continue
        ext = [(base, s)]
        g = base
        for v in vs:
            g = pow(g, 1)
            ext.append((g, v))
        out.append(tuple(ext))
    return tuple(out)


def expand_derived(logic, sf):
    """Derived-rule expansion of a signed formula, or None when none matches.

    The empty tuple means the branch closes immediately (the star rules).
    """
    exts = _derived_raw(logic, sf.label, sf.formula)
    if exts is None:
        return None
    return tuple(tuple(SignedFormula(l, f) for f, l in ext) for ext in exts)


# --------------------------------------------------------------------------
# Branch closure


def _closes(logic, labels, f, lab):
    """Does adding lab(f) to `labels` violate a closure condition (beyond a
    straight label conflict, which the caller handles)?"""
    n = logic.n
    if n == 1:
        if lab == 1:
            if f.conj_base is not None:
                return "t(x & ~x)"
            if logic.family == "Cila" and f.kind == CONS:
                return "t(@x)"
        return None
    # C_n with n >= 2
    if f.conj_base is not None and 1 <= lab <= n:
        base_lab = labels.get(f.conj_base)
        if base_lab == 1:
            return "t0(x) with t(x & ~x)"
    if f.conj_base is not None and lab == 0:
        base_lab = labels.get(f.conj_base)
        if base_lab is not None and 2 <= base_lab <= n:
            return "t_k(x), k>=1, with T(x & ~x)"
    if f.pow_height >= 1:
        src_lab = labels.get(f.left.conj_base)
        if src_lab is not None and 2 <= src_lab <= n and lab != src_lab - 1:
            return "t_k(x) with wrong label on x^1"
    if 1 <= lab <= n:
        conj = And(f, Neg(f))
        conj_lab = labels.get(conj)
        if conj_lab is not None:
            if lab == 1 and 1 <= conj_lab <= n:
                return "t0(x) with t(x & ~x)"
            if lab >= 2 and conj_lab == 0:
                return "t_k(x), k>=1, with T(x & ~x)"
        if lab >= 2:
            p1 = Neg(conj)
            p1_lab = labels.get(p1)
            if p1_lab is not None and p1_lab != lab - 1:
                return "t_k(x) with wrong label on x^1"
    return None


# --------------------------------------------------------------------------
# Tableau construction


@dataclass
class Node:
    label: int
    formula: object
    rule: str
    children: list = field(default_factory=list)
    status: str = ""  # set on leaves: "closed: ..." | "open" | "unexplored"


@dataclass
class Branch:
    signed: list          # [(label, formula)] in insertion order
    status: str           # "open" | "closed"
    reason: str = ""

    @property
    def labels(self):
        return {f: l for l, f in self.signed}


@dataclass
class Tableau:
    logic: object
    root: object          # Node | None when tree building is off
    branches: list        # list of Branch
    stats: dict = field(default_factory=dict)


@dataclass
class ProveResult:
    logic: object
    goal: object
    premises: tuple
    proved: bool
    tableau: object
    countermodel: object  # Valuation | None


class _BranchState:
    __slots__ = ("labels", "order", "simple", "branching", "leaf")

    def __init__(self, labels, order, simple, branching, leaf):
        self.labels = labels
        self.order = order
        self.simple = simple
        self.branching = branching
        self.leaf = leaf

    def clone(self):
        return _BranchState(dict(self.labels), list(self.order),
                            deque(self.simple), deque(self.branching), self.leaf)


def fold_premises(goal, premises):
    """g1 -> (g2 -> ... (gm -> goal)...); just the goal when premises are empty."""
    out = goal
    for p in reversed(premises):
        out = Imp(p, out)
    return out


def prove(logic, goal, premises=(), use_derived=False, stop_on_open=True,
          max_nodes=None, build_tree=True):
    """Tableau decision: do the premises prove the goal?

    Roots the tableau at F(premises folded into nested implication), expands
    to completion (eagerly applying non-branching and closing rules first),
    and declares proved iff every branch closed.  On failure, an open complete
    branch provides `countermodel`.  With stop_on_open (default) expansion
    stops at the first open complete branch; pass False to complete the whole
    tableau (CLI dumps, invariants).  Raises ResourceLimitError past max_nodes
    insertions (default 1,000,000, env DACOSTA_MAX_NODES).
    """
    if max_nodes is None:
        max_nodes = int(os.environ.get("DACOSTA_MAX_NODES", DEFAULT_MAX_NODES))
    premises = tuple(premises)
    root_formula = fold_premises(goal, premises)
    F = logic.n + 1
    start = time.perf_counter()

    stats = {
        "nodes": 0, "branches": 0, "closures": 0, "derived_rule_hits": 0,
        "contains_closed_branch": False, "all_branches_closed": True,
        "completed": True, "early_stop": False,
    }
    finished = []  # Branch records
    open_branch_state = None

    def make_node(lab, f, rule, parent):
        if not build_tree:
            return parent
        node = Node(lab, f, rule)
        if parent is not None:
            parent.children.append(node)
        return node

    def expansions_of(lab, f):
        if f.kind == VAR:
            return None, False
        if use_derived:
            exts = _derived_raw(logic, lab, f)
            if exts is not None:
                return exts, True
        return _expand_raw(logic, lab, f), False

    def insert(state, lab, f, rule, count_node=True):
        """Add lab(f) to the branch; returns 'dup', 'closed' or 'ok'."""
        existing = state.labels.get(f)
        if existing is not None:
            if existing == lab:
                return "dup"
            state.leaf = make_node(lab, f, rule, state.leaf)
            stats["nodes"] += 1
            return ("closed", f"label conflict on {f.text}")
        reason = _closes(logic, state.labels, f, lab)
        state.labels[f] = lab
        state.order.append((lab, f))
        state.leaf = make_node(lab, f, rule, state.leaf)
        stats["nodes"] += 1
        if stats["nodes"] > max_nodes:
            raise ResourceLimitError(f"tableau exceeded {max_nodes} nodes")
        if reason is not None:
            return ("closed", reason)
        exts, derived = expansions_of(lab, f)
        if exts is not None:
            if len(exts) == 0:
                if derived:
                    stats["derived_rule_hits"] += 1
                return ("closed", "unsatisfiable signed formula")
            entry = (lab, f, exts, derived)
            if len(exts) == 1:
                state.simple.append(entry)
            else:
                state.branching.append(entry)
        return "ok"

    def finish(state, status, reason=""):
        stats["branches"] += 1
        if status == "closed":
            stats["closures"] += 1
            stats["contains_closed_branch"] = True
        else:
            stats["all_branches_closed"] = False
        if build_tree and state.leaf is not None:
            state.leaf.status = f"closed: {reason}" if status == "closed" else "open"
        # Bulk mode keeps only open branches (closed-branch records on large
        # tableaux would dominate memory); tree mode records everything.
        if build_tree or status == "open":
            finished.append(Branch(list(state.order), status, reason))

    root_state = _BranchState({}, [], deque(), deque(), None)
    outcome = insert(root_state, F, root_formula, "root")
    root_node = root_state.leaf if build_tree else None
    stack = [root_state] if outcome == "ok" else []
    if outcome != "ok" and outcome != "dup":
        finish(root_state, "closed", outcome[1])

    def pop_simple(state):
        # Prefer a queued step that conflicts with a label already on the
        # branch: it closes the branch now, so no other step should be able
        # to spend nodes first.
        for i, entry in enumerate(state.simple):
            for g, gl in entry[2][0]:
                have = state.labels.get(g)
                if have is not None and have != gl:
                    del state.simple[i]
                    return entry
        return state.simple.popleft()

    while stack:
        state = stack.pop()
        closed_reason = None
        while True:
            if state.simple:
                lab, f, exts, derived = pop_simple(state)
            elif state.branching:
                lab, f, exts, derived = state.branching.popleft()
            else:
                break
            if derived:
                stats["derived_rule_hits"] += 1
            rule = f"{algebra.value_names(logic)[lab]}({_CONN_LABEL.get(f.kind, '?')})" \
                + (" derived" if derived else "")
            if len(exts) == 1:
                for g, gl in exts[0]:
                    r = insert(state, gl, g, rule)
                    if isinstance(r, tuple):
                        closed_reason = r[1]
                        break
                if closed_reason is not None:
                    break
                continue
            # Pre-filter the extensions against the branch's labels.  An
            # extension the branch already contains satisfies the rule, so no
            # split is needed (any valuation satisfying the branch satisfies
            # that extension).  An extension assigning a second label to a
            # formula closes immediately; record the closure without cloning.
            satisfied = False
            survivors = []
            conflicted = []
            for ext in exts:
                all_dup = True
                conflict = None
                for g, gl in ext:
                    have = state.labels.get(g)
                    if have is None:
                        all_dup = False
                    elif have != gl:
                        conflict = (g, gl)
                        break
                if conflict is not None:
                    conflicted.append((ext, conflict))
                elif all_dup:
                    satisfied = True
                    break
                else:
                    survivors.append(ext)
            if satisfied:
                continue
            for ext, (g, gl) in conflicted:
                stats["branches"] += 1
                stats["closures"] += 1
                stats["contains_closed_branch"] = True
                reason = f"label conflict on {g.text}"
                if build_tree:
                    leaf = state.leaf
                    for h, hl in ext:
                        leaf = make_node(hl, h, rule, leaf)
                        if h is g:
                            break
                    leaf.status = f"closed: {reason}"
                    finished.append(Branch(list(state.order) + [(gl, g)],
                                           "closed", reason))
            children = []
            for ext in survivors:
                child = state.clone()
                child_closed = None
                for g, gl in ext:
                    r = insert(child, gl, g, rule)
                    if isinstance(r, tuple):
                        child_closed = r[1]
                        break
                if child_closed is not None:
                    finish(child, "closed", child_closed)
                else:
                    children.append(child)
            for child in reversed(children):
                stack.append(child)
            state = None
            break
        if state is None:
            continue
        if closed_reason is not None:
            finish(state, "closed", closed_reason)
            continue
        finish(state, "open")
        if open_branch_state is None:
            open_branch_state = state
        if stop_on_open:
            stats["early_stop"] = bool(stack)
            stats["completed"] = not stack
            for st in stack:
                stats["branches"] += 1
                stats["all_branches_closed"] = False
                if build_tree and st.leaf is not None:
                    st.leaf.status = "unexplored"
                finished.append(Branch(list(st.order), "open", "unexplored"))
            break

    proved = stats["all_branches_closed"]
    countermodel = None
    if open_branch_state is not None:
        countermodel = _extract(logic, open_branch_state.labels)
    stats["elapsed"] = time.perf_counter() - start
    tableau = Tableau(logic, root_node, finished, stats)
    return ProveResult(logic, goal, premises, proved, tableau, countermodel)


def _extract(logic, labels):
    domain = set()
    for f in labels:
        for g in ordered_subformulas(f):
            domain.add(g)
    return extend_partial(logic, domain, dict(labels))


def extract_countermodel(branch, logic):
    """Countermodel from a complete open branch (a Branch record).

    Reads the branch's labels and extends them to a restricted valuation over
    the subformula closure of the branch.  Raises ValueError on closed or
    unexplored branches.
    """
    if branch.status != "open" or branch.reason == "unexplored":
        raise ValueError("countermodels come from open complete branches only")
    return _extract(logic, branch.labels)


# --------------------------------------------------------------------------
# Dumps


def tableau_to_text(tableau):
    names = algebra.value_names(tableau.logic)
    lines = []

    def walk(node, depth):
        tag = f"{names[node.label]}({node.formula.text})"
        status = f"  [{node.status}]" if node.status else ""
        rule = f"  <{node.rule}>" if node.rule and node.rule != "root" else ""
        lines.append("  " * depth + tag + rule + status)
        for child in node.children:
            walk(child, depth + 1)

    if tableau.root is None:
        return "(tree not recorded)"
    walk(tableau.root, 0)
    return "\n".join(lines)


def tableau_to_json(tableau):
    names = algebra.value_names(tableau.logic)

    def walk(node):
        return {
            "label": names[node.label],
            "formula": node.formula.text,
            "rule": node.rule,
            "status": node.status or None,
            "children": [walk(c) for c in node.children],
        }

    return {
        "logic": tableau.logic.name,
        "stats": dict(tableau.stats),
        "root": walk(tableau.root) if tableau.root is not None else None,
    }
