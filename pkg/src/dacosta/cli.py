"""Command-line front end.

    dacosta decide --logic C1 --formula "((p & ~p) & ~(p & ~p)) -> ~~p"
    dacosta decide --logic C1 --premises "p; ~p" --formula q
    dacosta decide --logic C3 --method both --formula "p | ~p"
    dacosta tables --logic C2
    dacosta axioms --logic Cila --instances 5 --seed 7 --out corpus.txt

Exit codes: 0 entailed/valid, 1 not entailed, 2 usage or parse error,
3 resource cap exceeded, 4 the two decision methods disagreed (a bug signal;
the run emits a diagnostic instead of silently picking a winner).

Caps come from flags or the environment: DACOSTA_MAX_ROWS (table rows),
DACOSTA_MAX_NODES (tableau nodes), DACOSTA_MAX_WORK (decision-DP states).
"""

from __future__ import annotations

import argparse
import io
import json
import os
import random
import sys
from dataclasses import dataclass

from . import algebra, axioms, tableau, truthtable
from .errors import DacostaError, ParseError, ResourceLimitError
from .formula import parse, parse_logic

EXIT_ENTAILED = 0
EXIT_NOT_ENTAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_DISAGREEMENT = 4


@dataclass
class RunConfig:
    logic: object
    goal: object = None
    premises: tuple = ()
    method: str = "both"          # table | tableau | both
    derived_rules: bool = False
    show_discarded: bool = False
    format: str = "text"          # text | json
    max_rows: int = None
    max_nodes: int = None
    max_work: int = None
    emit_table: str = None
    emit_tableau: str = None
    complete: bool = False
    stats: bool = False


def _env_cap(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ParseError(f"environment variable {name} must be an integer, got {raw!r}")


def _caps(cfg):
    max_rows = cfg.max_rows if cfg.max_rows is not None else \
        _env_cap("DACOSTA_MAX_ROWS", truthtable.DEFAULT_MAX_ROWS)
    max_nodes = cfg.max_nodes if cfg.max_nodes is not None else \
        _env_cap("DACOSTA_MAX_NODES", tableau.DEFAULT_MAX_NODES)
    max_work = cfg.max_work if cfg.max_work is not None else \
        _env_cap("DACOSTA_MAX_WORK", truthtable.DEFAULT_MAX_WORK)
    return max_rows, max_nodes, max_work


def _table_json(table):
    names = algebra.value_names(table.logic)
    return {
        "logic": table.logic.name,
        "columns": [f.text for f in table.columns],
        "rows": [
            {"status": row.status,
             "values": [None if v is None else names[v] for v in row.values]}
            for row in table.rows
        ],
        "stats": dict(table.stats),
    }


def _countermodel_json(valuation):
    if valuation is None:
        return None
    pairs = sorted(valuation.items(), key=lambda kv: (kv[0].complexity, kv[0].text))
    names = algebra.value_names(valuation.logic)
    return {f.text: names[v] for f, v in pairs}


def run(config, out=None, err=None):
    """Decide one goal per the config; print a report; return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    logic = config.logic
    max_rows, max_nodes, max_work = _caps(config)

    table_result = None
    tableau_result = None
    if config.method in ("table", "both"):
        table_result = truthtable.decide(logic, config.goal, config.premises,
                                         max_work=max_work)
    if config.method in ("tableau", "both"):
        build_tree = config.emit_tableau is not None
        tableau_result = tableau.prove(
            logic, config.goal, config.premises,
            use_derived=config.derived_rules,
            stop_on_open=not config.complete,
            max_nodes=max_nodes, build_tree=build_tree)

    if config.emit_table is not None:
        tab = truthtable.build_table(logic, config.goal, config.premises,
                                     max_rows=max_rows,
                                     collect_discarded=config.show_discarded)
        with open(config.emit_table, "w") as fh:
            if config.format == "json":
                json.dump(_table_json(tab), fh, indent=2)
                fh.write("\n")
            else:
                fh.write(truthtable.render_table(tab, config.show_discarded))
                fh.write("\n")
    if config.emit_tableau is not None:
        with open(config.emit_tableau, "w") as fh:
            if config.format == "json":
                json.dump(tableau.tableau_to_json(tableau_result.tableau), fh, indent=2)
                fh.write("\n")
            else:
                fh.write(tableau.tableau_to_text(tableau_result.tableau))
                fh.write("\n")

    agree = None
    if table_result is not None and tableau_result is not None:
        agree = table_result.entailed == tableau_result.proved
    if agree is False:
        print("method disagreement: "
              f"table says {'entailed' if table_result.entailed else 'not entailed'}, "
              f"tableau says {'proved' if tableau_result.proved else 'not proved'} "
              f"for {config.goal.text} in {logic.name}", file=err)
        print("this indicates a bug in one of the engines; "
              "re-run each method separately and report the formula", file=err)
        return EXIT_DISAGREEMENT

    entailed = table_result.entailed if table_result is not None \
        else tableau_result.proved
    countermodel = None
    if not entailed:
        countermodel = table_result.countermodel if table_result is not None \
            else tableau_result.countermodel

    code = EXIT_ENTAILED if entailed else EXIT_NOT_ENTAILED
    if config.format == "json":
        stats = {}
        if table_result is not None:
            stats["table"] = dict(table_result.stats)
        if tableau_result is not None:
            stats["tableau"] = dict(tableau_result.tableau.stats)
        payload = {
            "logic": logic.name,
            "goal": config.goal.text,
            "premises": [p.text for p in config.premises],
            "method": config.method,
            "entailed": entailed,
            "agree": agree,
            "countermodel": _countermodel_json(countermodel),
            "stats": stats,
            "exit": code,
        }
        print(json.dumps(payload), file=out)
        return code

    word = ("entailed" if entailed else "not entailed") if config.premises \
        else ("valid" if entailed else "invalid")
    print(f"logic: {logic.name}", file=out)
    if config.premises:
        print("premises: " + "; ".join(p.text for p in config.premises), file=out)
    print(f"goal: {config.goal.text}", file=out)
    print(f"verdict: {word}", file=out)
    if agree is not None:
        print("methods agree (table, tableau)", file=out)
    if countermodel is not None:
        print(f"countermodel: {countermodel.render()}", file=out)
    if config.stats:
        if table_result is not None:
            print(f"table stats: {table_result.stats}", file=out)
        if tableau_result is not None:
            print(f"tableau stats: {tableau_result.tableau.stats}", file=out)
    return code


def _cmd_decide(args, out, err):
    logic = parse_logic(args.logic)
    premises = tuple(
        parse(chunk, logic)
        for chunk in (args.premises.split(";") if args.premises else [])
        if chunk.strip()
    )
    base = dict(
        logic=logic, premises=premises, method=args.method,
        derived_rules=args.derived_rules, show_discarded=args.show_discarded,
        format=args.format, max_rows=args.max_rows, max_nodes=args.max_nodes,
        max_work=args.max_work, emit_table=args.emit_table,
        emit_tableau=args.emit_tableau, complete=args.complete,
        stats=args.stats,
    )
    if args.stdin:
        worst = EXIT_ENTAILED
        for line in sys.stdin:
            line = line.strip()
            if not line:
                continue
            try:
                goal = parse(line, logic)
                cfg = RunConfig(goal=goal, **base)
                code = _run_line(cfg, line, out, err)
            except ParseError as exc:
                print(f"error\t{line}\t{exc}", file=err)
                code = EXIT_USAGE
            except ResourceLimitError as exc:
                print(f"error\t{line}\t{exc}", file=err)
                code = EXIT_RESOURCE
            worst = max(worst, code)
        return worst
    if args.formula is None:
        print("decide: provide --formula or --stdin", file=err)
        return EXIT_USAGE
    goal = parse(args.formula, logic)
    return run(RunConfig(goal=goal, **base), out, err)


def _run_line(cfg, line, out, err):
    """Batch mode: one verdict line per input formula."""
    if cfg.format == "json":
        buf = io.StringIO()
        code = run(cfg, buf, err)
        print(buf.getvalue().strip(), file=out)
        return code
    table_result = None
    tableau_result = None
    _, max_nodes, max_work = _caps(cfg)
    if cfg.method in ("table", "both"):
        table_result = truthtable.decide(cfg.logic, cfg.goal, cfg.premises,
                                         max_work=max_work)
    if cfg.method in ("tableau", "both"):
        tableau_result = tableau.prove(cfg.logic, cfg.goal, cfg.premises,
                                       use_derived=cfg.derived_rules,
                                       max_nodes=max_nodes, build_tree=False)
    if table_result is not None and tableau_result is not None \
            and table_result.entailed != tableau_result.proved:
        print(f"disagreement\t{line}", file=out)
        return EXIT_DISAGREEMENT
    entailed = table_result.entailed if table_result is not None \
        else tableau_result.proved
    word = ("entailed" if entailed else "not entailed") if cfg.premises \
        else ("valid" if entailed else "invalid")
    print(f"{word}\t{line}", file=out)
    return EXIT_ENTAILED if entailed else EXIT_NOT_ENTAILED


def _cmd_tables(args, out, err):
    logic = parse_logic(args.logic)
    if args.format == "json":
        print(json.dumps(algebra.tables_json(logic), indent=2), file=out)
    else:
        print(algebra.render_tables(logic), file=out)
    return 0


def _cmd_axioms(args, out, err):
    logic = parse_logic(args.logic)
    if args.instances is None:
        for s in axioms.schemata(logic):
            print(s, file=out)
        return 0
    rng = random.Random(args.seed)
    lines = [inst.text for _, inst in
             axioms.instance_corpus(logic, args.instances, rng, args.connectives)]
    if args.out:
        with open(args.out, "w") as fh:
            fh.write("\n".join(lines) + "\n")
    else:
        for ln in lines:
            print(ln, file=out)
    return 0


def _build_parser():
    p = argparse.ArgumentParser(
        prog="dacosta",
        description="Decision procedures for da Costa's paraconsistent calculi "
                    "C_n and the LFIs mbCcl and Cila.")
    sub = p.add_subparsers(dest="command")

    d = sub.add_parser("decide", help="decide validity / entailment")
    d.add_argument("--logic", required=True, help="C1..C9, mbCcl or Cila")
    d.add_argument("--formula", help="goal formula")
    d.add_argument("--premises", help="semicolon-separated premise formulas")
    d.add_argument("--method", choices=("table", "tableau", "both"), default="both")
    d.add_argument("--derived-rules", action="store_true",
                   help="enable derived tableau rules for iterated-consistency towers")
    d.add_argument("--show-discarded", action="store_true",
                   help="keep discarded row stubs in emitted tables")
    d.add_argument("--format", choices=("text", "json"), default="text")
    d.add_argument("--max-rows", type=int, default=None)
    d.add_argument("--max-nodes", type=int, default=None)
    d.add_argument("--max-work", type=int, default=None)
    d.add_argument("--emit-table", metavar="PATH",
                   help="write the branching truth table to a file")
    d.add_argument("--emit-tableau", metavar="PATH",
                   help="write the tableau tree to a file")
    d.add_argument("--complete", action="store_true",
                   help="expand the whole tableau instead of stopping at the "
                        "first open branch")
    d.add_argument("--stats", action="store_true")
    d.add_argument("--stdin", action="store_true",
                   help="read one goal formula per line from stdin")

    t = sub.add_parser("tables", help="print the logic's connective tables")
    t.add_argument("--logic", required=True)
    t.add_argument("--format", choices=("text", "json"), default="text")

    a = sub.add_parser("axioms", help="list axiom schemata or emit random instances")
    a.add_argument("--logic", required=True)
    a.add_argument("--instances", type=int, default=None,
                   help="emit this many random instances per schema")
    a.add_argument("--connectives", type=int, default=3,
                   help="max connectives per random substituent")
    a.add_argument("--seed", type=int, default=0)
    a.add_argument("--out", metavar="PATH")
    return p


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    out, err = sys.stdout, sys.stderr
    if args.command is None:
        parser.print_usage(err)
        return EXIT_USAGE
    try:
        if args.command == "decide":
            return _cmd_decide(args, out, err)
        if args.command == "tables":
            return _cmd_tables(args, out, err)
        if args.command == "axioms":
            return _cmd_axioms(args, out, err)
        parser.print_usage(err)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"dacosta: {exc}", file=err)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"dacosta: {exc}", file=err)
        return EXIT_RESOURCE
    except DacostaError as exc:
        print(f"dacosta: {exc}", file=err)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"dacosta: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
