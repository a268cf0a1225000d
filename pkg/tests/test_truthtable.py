"""Row-branching enumeration, decision procedure and partial-extension."""

import random

import pytest

from conftest import enumerate_formulas, live_rows, random_corpus, row_assignment
from oracle import oracle_rows

from dacosta.algebra import designated, domain_size, value_names
from dacosta.errors import ExtensionError, ResourceLimitError
from dacosta.formula import C, CILA, MBCCL, Neg, parse, pow, powseq, random_formula
from dacosta.truthtable import (
    build_table, check_valuation, decide, extend_partial, ordered_subformulas,
    render_table, table_verdict,
)

C1, C2, C3 = C(1), C(2), C(3)
PSI = parse("((p & ~p) & ~(p & ~p)) -> ~~p")

# the six-row flagship table, cell-for-cell, in enumeration order
PSI_ROWS = [
    "T F F T T F T",
    "t T T F F F T",
    "t t T T F F T",
    "t t T t F F T",
    "t t T t F F t",
    "F T F F T F T",
]


class TestFlagshipTable:
    def test_cells_and_order(self):
        table = build_table(C1, PSI)
        assert [f.text for f in table.columns] == [
            "p", "~p", "p & ~p", "~~p", "~(p & ~p)",
            "p & ~p & ~(p & ~p)", "p & ~p & ~(p & ~p) -> ~~p",
        ]
        names = value_names(C1)
        got = [" ".join(names[v] for v in r.values) for r in live_rows(table)]
        assert got == PSI_ROWS

    def test_discarded_stubs(self):
        table = build_table(C1, PSI)
        discarded = [r for r in table.rows if r.status == "discarded"]
        assert len(discarded) == 2
        assert table.stats["rows_discarded"] == 2

    def test_verdict_columns(self):
        table = build_table(C1, PSI)
        phi_col = table.columns.index(parse("(p & ~p) & ~(p & ~p)"))
        assert all(r.values[phi_col] == 2 for r in live_rows(table))  # all F
        assert all(r.values[-1] in designated(C1) for r in live_rows(table))
        entailed, countermodel = table_verdict(table)
        assert entailed and countermodel is None
        assert decide(C1, PSI).entailed


class TestBuildTable:
    def test_contradiction_rows_c1(self):
        table = build_table(C1, parse("p & ~p"))
        names = value_names(C1)
        got = [" ".join(names[v] for v in r.values) for r in live_rows(table)]
        assert got == ["T F F", "t T T", "t t T", "F T F"]

    def test_forcing_at_n2(self):
        # rows where p = t2_1 must put p & ~p in the inconsistent band and
        # pin p^1 to t2_0
        table = build_table(C2, pow(parse("p"), 1))
        cols = table.columns
        i_p = cols.index(parse("p"))
        i_conj = cols.index(parse("p & ~p"))
        i_pow = cols.index(pow(parse("p"), 1))
        hit = 0
        for r in live_rows(table):
            if r.values[i_p] == 2:  # t2_1
                assert r.values[i_conj] in (1, 2)
                assert r.values[i_pow] == 1  # t2_0
                hit += 1
        assert hit > 0

    def test_oracle_equivalence_sample(self):
        rng = random.Random(11)
        for lg in [C1, C2, MBCCL, CILA]:
            for _ in range(25):
                f = random_formula(rng, lg, connectives=rng.randint(1, 4))
                table = build_table(lg, f)
                live = {tuple(r.values) for r in live_rows(table)}
                assert live == oracle_rows(lg, table.columns), (lg.name, f.text)

    def test_rows_distinct_and_deterministic(self, logic):
        f = parse("(p -> q) & ~p | q")
        t1, t2 = build_table(logic, f), build_table(logic, f)
        rows1 = [tuple(r.values) for r in live_rows(t1)]
        assert rows1 == [tuple(r.values) for r in live_rows(t2)]
        assert len(set(rows1)) == len(rows1)

    def test_atom_table(self, logic):
        table = build_table(logic, parse("p"))
        assert len(live_rows(table)) == domain_size(logic)

    def test_premise_columns(self):
        table = build_table(C1, parse("q"), premises=(parse("p"), parse("~p")))
        assert parse("p") in table.columns and parse("~p") in table.columns
        assert table.columns == ordered_subformulas(
            parse("q"), (parse("p"), parse("~p")))

    def test_row_cap(self):
        with pytest.raises(ResourceLimitError):
            build_table(C3, parse("(p | q) & (q | r) -> (r | p)"), max_rows=10)


class TestDecide:
    def test_paraconsistency_c1(self):
        res = decide(C1, parse("q"), premises=(parse("p"), parse("~p")))
        assert not res.entailed
        cm = res.countermodel
        assert cm.value_name(parse("p")) == "t"
        assert cm.value_name(parse("q")) == "F"

    def test_recovery_with_powseq(self):
        res = decide(C1, parse("q"),
                     premises=(parse("p"), parse("~p"), powseq(parse("p"), 1)))
        assert res.entailed

    def test_hierarchy_witness_c2(self):
        res = decide(C2, parse("q"),
                     premises=(parse("p"), parse("~p"), pow(parse("p"), 1)))
        assert not res.entailed
        assert res.countermodel.value_name(parse("p")) == "t2_1"

    def test_per_row_modus_ponens(self):
        rng = random.Random(5)
        for lg in [C1, C2, MBCCL]:
            for _ in range(20):
                f = random_formula(rng, lg, connectives=5)
                table = build_table(lg, parse("p -> q"), premises=(f,))
                des = designated(lg)
                cols = table.columns
                i_p, i_q = cols.index(parse("p")), cols.index(parse("q"))
                i_imp = cols.index(parse("p -> q"))
                for r in live_rows(table):
                    if r.values[i_p] in des and r.values[i_imp] in des:
                        assert r.values[i_q] in des

    def test_work_cap(self):
        with pytest.raises(ResourceLimitError):
            decide(C3, parse("(p | q) & (q | r) -> (r | p)"), max_work=5)

    def test_countermodel_designates_premises(self):
        res = decide(C2, parse("r"), premises=(parse("p -> q"), parse("p")))
        assert not res.entailed
        des = designated(C2)
        assert res.countermodel.value_name(parse("r")) not in (
            "T2", "t2_0", "t2_1")
        for prem in (parse("p -> q"), parse("p")):
            assert res.countermodel.assignment[prem] in des


class TestExtendPartial:
    def test_empty_seed(self, logic):
        nu = extend_partial(logic, set(), {})
        v = nu.value_name(parse("p & ~p"))
        assert v in value_names(logic)

    def test_live_rows_extend(self):
        rng = random.Random(9)
        for lg in [C1, C2, MBCCL, CILA]:
            for _ in range(10):
                f = random_formula(rng, lg, connectives=6)
                table = build_table(lg, f)
                for r in live_rows(table)[:20]:
                    nu0 = row_assignment(table, r)
                    nu = extend_partial(lg, set(table.columns), nu0)
                    for g, val in nu0.items():
                        assert nu.assignment[g] == val
                    # extension still satisfies the clause checker on a
                    # slightly larger domain
                    probe = Neg(f)
                    nu.value_name(probe)
                    assert check_valuation(lg, dict(nu.items())) == []

    def test_stuck_seed_reports_formula(self):
        p = parse("p")
        bad = {p: 1, parse("p & ~p"): 1}  # t and t: the t-row is discarded
        with pytest.raises(ExtensionError, match=r"p & ~p"):
            extend_partial(C1, {p, parse("~p"), parse("p & ~p")}, bad)

    def test_non_closed_domain_rejected(self):
        with pytest.raises(ExtensionError, match="closed"):
            extend_partial(C1, {parse("p & q")}, {parse("p & q"): 0})


class TestCheckValuation:
    def test_live_rows_pass(self):
        for lg in [C1, C2, CILA]:
            table = build_table(lg, parse("(p & ~p) -> q"))
            for r in live_rows(table):
                assert check_valuation(lg, row_assignment(table, r)) == []

    def test_violations_reported(self):
        p = parse("p")
        # non-homomorphic: T & T -> F is not in the C1 cell
        bad = {p: 0, parse("~p"): 2, parse("p & ~p"): 0}
        assert check_valuation(C1, bad)
        # restriction breach: p = t but p & ~p = t
        bad2 = {p: 1, parse("~p"): 0, parse("p & ~p"): 1}
        assert check_valuation(C1, bad2)


class TestRenderTable:
    def test_plain(self):
        txt = render_table(build_table(C1, PSI))
        assert txt.splitlines()[0].split() == [
            "p", "~p", "p", "&", "~p", "~~p", "~(p", "&", "~p)",
            "p", "&", "~p", "&", "~(p", "&", "~p)",
            "p", "&", "~p", "&", "~(p", "&", "~p)", "->", "~~p"]
        assert len([ln for ln in txt.splitlines() if ln.strip()]) == 8

    def test_show_discarded(self):
        table = build_table(C1, PSI)
        txt = render_table(table, show_discarded=True)
        assert txt.count(" x") == 2

    def test_column_count(self, logic):
        f = parse("p -> (q -> p)")
        table = build_table(logic, f)
        assert len(table.columns) == len(ordered_subformulas(f))


class TestAgreementSmall:
    def test_exhaustive_two_connectives(self, logic):
        for f in enumerate_formulas(2, ("p", "q"), logic.has_circ):
            entailed, _ = table_verdict(build_table(logic, f))
            assert entailed == decide(logic, f).entailed

    def test_random_corpus_verdicts_stable(self, logic):
        for f in random_corpus(logic, 30, 7, seed=13):
            r1, r2 = decide(logic, f), decide(logic, f)
            assert r1.entailed == r2.entailed
