"""The `hardness` command line tool."""
from __future__ import annotations

import argparse
import itertools
import json
import random
import sys
import time
from dataclasses import dataclass, field

from . import __version__, _bits, consistency, corpus, extensions, families, games, space
from ._bits import CapExceeded
from .cnf import (
    BOTTOM,
    Clause,
    ClauseSet,
    DimacsError,
    PartialAssignment,
    apply,
    is_satisfiable,
    parse_dimacs,
    prime_implicates,
    to_json,
    write_dimacs,
)
from .measures import ALIASES, MeasureKind, lift_measure, lift_witness, max_clause_length, measure_kind
from .reductions import rk
from .resolution import ProofError, ResolutionProof, branching_refutation

SCHEMA_VERSION = 1
MEASURE_NAMES = ["hd", "dep", "wid", "whd", "semspace", "resspace", "treespace"]
DEFAULT_CAP = 24

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


def read_cnf(path):
    if path == "-":
        return parse_dimacs(sys.stdin.read())
    with open(path, "rb") as fh:
        return parse_dimacs(fh.read())


def write_out(data, path=None):
    if isinstance(data, str):
        data = data.encode()
    if path is None or path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        with open(path, "wb") as fh:
            fh.write(data)


def _check_cap(F, cap, default=DEFAULT_CAP):
    cap = default if cap is None else cap
    if F.n > cap:
        raise CapExceeded(f"{F.n} variables exceed the cap of {cap}")


# measuring and verification


def _tree_space_searched(B, ev):
    return space.tree_space_bits(B, ev, search=True)


def lifted_tree_space(F):
    """Tree space found by explicit search, lifted like the other measures."""
    E, B = F.encoded()
    ev = E.even
    best = None
    for c in _bits.prime_implicates(B, ev):
        v = _tree_space_searched(_bits.assign(B, _bits.comp(c, ev), ev), ev)
        best = v if best is None else max(best, v)
    return 1 if best is None else best


def compute_measures(F, names=MEASURE_NAMES, V=None, tree_search=False):
    """Values (None when a search cap refuses) and timings in seconds."""
    values, timings = {}, {}
    for name in names:
        start = time.perf_counter()
        try:
            if name == "treespace" and tree_search and V is None:
                values[name] = lifted_tree_space(F)
            else:
                values[name] = lift_measure(measure_kind(name), F, V)
        except CapExceeded:
            values[name] = None
        timings[name] = round(time.perf_counter() - start, 6)
    return values, timings


def relation_checks(values, n, q):
    """Each relation with its verdict; None when a needed value is missing."""
    v = values
    rows = []

    def add(text, needed, test):
        if any(v.get(x) is None for x in needed):
            rows.append({"relation": text, "holds": None})
        else:
            rows.append({"relation": text, "holds": bool(test())})

    add("whd <= semspace", ["whd", "semspace"], lambda: v["whd"] <= v["semspace"])
    add("semspace <= resspace", ["semspace", "resspace"], lambda: v["semspace"] <= v["resspace"])
    add("resspace <= treespace", ["resspace", "treespace"], lambda: v["resspace"] <= v["treespace"])
    add("treespace = hd + 1", ["treespace", "hd"], lambda: v["treespace"] == v["hd"] + 1)
    add("hd <= dep", ["hd", "dep"], lambda: v["hd"] <= v["dep"])
    add("dep <= n", ["dep"], lambda: v["dep"] <= n)
    add("resspace <= 3 * semspace - 2", ["resspace", "semspace"], lambda: v["resspace"] <= 3 * v["semspace"] - 2)
    add("wid <= whd + max(q, whd)", ["wid", "whd"], lambda: v["wid"] <= v["whd"] + max(q, v["whd"]))
    return rows


@dataclass
class RunReport:
    instance: str
    measures: dict
    relations: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    @property
    def violations(self):
        return [r["relation"] for r in self.relations if r["holds"] is False]

    @property
    def ok(self):
        return not self.violations

    def to_json(self):
        return {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "instance": self.instance,
            "measures": self.measures,
            "relations": self.relations,
            "timings": self.timings,
            "metadata": self.metadata,
            "ok": self.ok,
        }


def verify_relations(F, instance="", tree_search=True):
    F = ClauseSet(F)
    values, timings = compute_measures(F, tree_search=tree_search)
    rows = relation_checks(values, F.n, max_clause_length(F))
    meta = {"n": F.n, "c": F.c, "q": max_clause_length(F), "satisfiable": is_satisfiable(F)}
    return RunReport(instance, values, rows, timings, meta)


# probes


def _probe_instances(budget, seed):
    """Exhaustive small instances first, then seeded random ones."""
    pool = corpus.exhaustive_corpus(3, 6)
    rng = random.Random(seed)
    if budget < len(pool):
        pool = rng.sample(pool, budget)
    else:
        pool = pool + corpus.random_corpus(budget - len(pool), seed, 4)
    return pool


def probe(target, budget=2000, seed=corpus.DEFAULT_SEED):
    report = {"target": target, "budget": budget, "seed": seed}
    if target in ("space_gap", "ss_factor", "whd_vs_ss"):
        insts = _probe_instances(budget, seed)
        best = None
        ss3 = bad = 0
        top_ss = None
        for F in insts:
            ss = space.semantic_space(F)
            if target == "whd_vs_ss":
                if lift_measure(MeasureKind.asym_width, F) == 2 and (top_ss is None or ss > top_ss[0]):
                    top_ss = (ss, F)
                continue
            rs = space.resolution_space(F)
            if target == "space_gap":
                if ss == 3:
                    ss3 += 1
                    if rs != 3:
                        bad += 1
                        best = best or (rs, F)
            elif best is None or rs - ss > best[0]:
                best = (rs - ss, F, rs, ss)
        report["instances"] = len(insts)
        if target == "space_gap":
            report.update({"semspace_3": ss3, "resspace_not_3": bad,
                           "example": None if best is None else to_json(best[1])})
        elif target == "ss_factor":
            report.update({"max_resspace_minus_semspace": best[0], "example": to_json(best[1]),
                           "resspace": best[2], "semspace": best[3]})
        else:
            report.update({"max_semspace_with_whd_2": None if top_ss is None else top_ss[0],
                           "example": None if top_ss is None else to_json(top_ss[1])})
        return report
    if target == "conj_wid_whd":
        rng = random.Random(seed)
        worst = None
        for _ in range(budget):
            F = corpus.random_unsat(rng, rng.randint(2, 4), 1, 3)
            wid = lift_measure(MeasureKind.sym_width, F)
            whd = lift_measure(MeasureKind.asym_width, F)
            q = max_clause_length(F)
            gap = wid - whd - (q - 1)
            if worst is None or gap > worst[0]:
                worst = (gap, F, wid, whd, q)
        report.update({"instances": budget, "max_wid_minus_whd_minus_q_plus_1": worst[0],
                       "example": to_json(worst[1]), "wid": worst[2], "whd": worst[3], "q": worst[4]})
        return report
    if target == "weak_union":
        rng = random.Random(seed)
        insts = corpus.random_corpus(min(budget, 200), seed)
        tried = failed = 0
        example = None
        for F in insts:
            E, B = F.encoded()
            n = E.n
            h = lift_measure(MeasureKind.hardness, F)
            if h < 2:
                continue
            k = h - 1
            fams = []
            for _ in range(2):
                order = list(range(2 * n))
                rng.shuffle(order)
                fams.append(consistency.weak_family_bits(B, E.even, n, order))
            if not all(consistency.family_violation_bits("weakly_k", P, B, E.even, n, k) is None for P in fams):
                continue
            tried += 1
            U = fams[0] | fams[1]
            if consistency.family_violation_bits("weakly_k", U, B, E.even, n, k) is not None:
                failed += 1
                example = example or to_json(F)
        report.update({"unions_checked": tried, "unions_failing": failed, "example": example})
        return report
    raise UsageError(f"unknown probe target {target!r}")


# family parameters


def _graph(spec, charge=None):
    kind, _, rest = spec.partition(":")
    if kind == "cycle":
        G = families.cycle_graph(int(rest))
    elif kind == "path":
        G = families.path_graph(int(rest))
    elif kind == "complete":
        G = families.complete_graph(int(rest))
    elif kind == "edges":
        edges = [tuple(int(x) for x in e.split("-")) for e in rest.split(",") if e]
        verts = sorted({v for e in edges for v in e}) or [0]
        G = games.TseitinGraph(tuple(verts), tuple(edges))
    else:
        raise UsageError(f"unknown graph {spec!r}; use cycle:N, path:N, complete:N or edges:a-b,...")
    if charge:
        G = games.TseitinGraph(G.vertices, G.edges, tuple(int(x) for x in charge.split(",")))
    return G


def generate_family(name, params, graph=None, charge=None, direct=False):
    """(clause-set, name map, comment)."""
    ints = [int(p) for p in params]

    def need(count):
        if len(ints) != count:
            raise UsageError(f"{name} takes {count} integer parameter(s)")

    if name in ("php", "fphp", "ophp", "ofphp"):
        need(2)
        m, k = ints
        return families.php(name, m, k), families.php_names(m, k), f"{name} {m} {k}"
    if name == "ephp":
        need(1)
        return families.ephp(ints[0]), families.ephp_names(ints[0]), f"ephp {ints[0]}"
    if name == "xor2":
        need(1)
        mode = "direct" if direct else "chained"
        F = families.two_xor(ints[0], mode)
        return F, {v: f"v_{v}" if v <= ints[0] else f"t_{v}" for v in sorted(F.variables)}, f"xor2 {ints[0]} {mode}"
    if name == "tseitin":
        G = _graph(graph or "cycle:3", charge)
        F = families.tseitin_cnf(G)
        return F, {i + 1: f"e_{a}_{b}" for i, (a, b) in enumerate(G.edges)}, f"tseitin {graph or 'cycle:3'}"
    if name == "full":
        need(1)
        return families.full_clause_set(ints[0]), {}, f"full {ints[0]}"
    raise UsageError(f"unknown family {name!r}")


# commands


def _emit(args, data, text):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def cmd_measure(args):
    F = read_cnf(args.file)
    _check_cap(F, args.cap)
    names = MEASURE_NAMES if args.measures == "all" else args.measures.split(",")
    for name in names:
        if name not in ALIASES:
            raise UsageError(f"unknown measure {name!r}")
    V = [int(v) for v in args.vars.split(",")] if args.vars else None
    values, timings = compute_measures(F, names, V)
    witness = {}
    if args.witness:
        unsat = not is_satisfiable(F)
        for name in names:
            if values[name] is None:
                continue
            if not unsat:
                value, C = lift_witness(measure_kind(name), F, V)
                witness[name] = {"prime_implicate": None if C is None else C.sorted()}
            elif name in ("hd", "dep"):
                R = branching_refutation(F, "hardness" if name == "hd" else "depth")
                witness[name] = {"refutation": R.to_text()}
            elif name in ("semspace", "resspace", "treespace"):
                fn = {"semspace": space.semantic_space_trace, "resspace": space.resolution_space_trace,
                      "treespace": space.tree_space_trace}[name]
                witness[name] = fn(F).to_json()
    data = {"schema": SCHEMA_VERSION, "version": __version__, "instance": args.file,
            "measures": values, "timings": timings}
    if witness:
        data["witness"] = witness
    lines = [f"{k} {'skipped (cap)' if v is None else v}" for k, v in values.items()]
    for name, w in witness.items():
        if "refutation" in w:
            lines.append(f"# {name} refutation\n" + w["refutation"].rstrip())
        else:
            lines.append(f"# {name} witness {json.dumps(w)}")
    _emit(args, data, "\n".join(lines))
    return EXIT_OK if all(v is not None for v in values.values()) else EXIT_CAP


def cmd_generate(args):
    F, names, comment = generate_family(args.family, args.params, args.graph, args.charge, args.direct)
    write_out(write_dimacs(F, [comment]), args.output)
    if args.names:
        with open(args.names, "w") as fh:
            json.dump({str(k): v for k, v in sorted(names.items())}, fh, indent=1)
            fh.write("\n")
    return EXIT_OK


def _replay_moves(path, role):
    with open(path) as fh:
        rows = json.load(fh)
    out = []
    for row in rows:
        if row["actor"] != role:
            continue
        mv = row["move"]
        out.append(mv if isinstance(mv, str) else (" ".join(str(x) for x in mv) or "-"))
    return out


def cmd_game(args):
    F = read_cnf(args.file)
    _check_cap(F, args.cap, games.GAME_CAP)
    if args.action == "value":
        if args.game == "hd":
            value = games.hd_game_value(F)
        elif args.game == "whd":
            value = games.whd_game_value(F)
        else:
            value = games.restricted_whd_game_value(F)
        _emit(args, {"game": args.game, "value": value}, f"{args.game} game value {value}")
        return EXIT_OK
    moves = _replay_moves(args.replay, args.role) if args.replay else None
    say = (lambda s: None) if (args.json or args.replay) else print
    transcript = games.play_interactive(F, args.game, args.role, moves=moves, say=say)
    text = json.dumps(transcript, indent=2) + "\n"
    if args.transcript:
        write_out(text, args.transcript)
    elif args.json or args.replay:
        write_out(text)
    if not args.json and not args.replay:
        print(f"final score {games.final_score(transcript)}")
    return EXIT_OK


def cmd_reduce(args):
    F = read_cnf(args.file)
    _check_cap(F, args.cap)
    res = rk(F, args.k)
    forced = " ".join(str(x) for x in sorted(res.forced, key=abs))
    comments = [f"r_{args.k} {'refuted' if res.refuted else 'not refuted'}", f"forced {forced}".rstrip()]
    if args.json:
        print(json.dumps({"k": args.k, "refuted": res.refuted, "forced": sorted(res.forced, key=abs),
                          "reduced": to_json(res.reduced)}, indent=2))
    else:
        write_out(write_dimacs(res.reduced, comments), args.output)
    return EXIT_OK


def cmd_prime(args):
    F = read_cnf(args.file)
    _check_cap(F, args.cap)
    P = prime_implicates(F, cap=args.cap or DEFAULT_CAP)
    if args.json:
        print(json.dumps(to_json(P)))
    else:
        write_out(write_dimacs(P, [f"prime implicates: {len(P)}"]), args.output)
    return EXIT_OK


def cmd_blocked(args):
    F = read_cnf(args.file)
    if args.action == "list":
        rows = []
        for C in F.sorted():
            x = extensions.blocking_literal(C, F)
            if x is not None:
                rows.append({"clause": C.sorted(), "literal": x})
        _emit(args, rows, "\n".join(f"{' '.join(map(str, r['clause']))} blocked for {r['literal']}" for r in rows))
        return EXIT_OK
    G = extensions.eliminate_blocked(F, args.length)
    write_out(write_dimacs(G, [f"removed {len(F) - len(G)} blocked clauses"]), args.output)
    return EXIT_OK


def cmd_extend(args):
    F = read_cnf(args.file)
    _check_cap(F, args.cap)
    if args.proof:
        with open(args.proof) as fh:
            R = ResolutionProof.from_text(fh.read())
    else:
        R = branching_refutation(F, "hardness")
    G, names = extensions.extension_from_refutation(F, R)
    comments = [f"e_{v} <-> {' '.join(map(str, C.sorted()))}" for C, v in sorted(names.items(), key=lambda t: t[1])]
    write_out(write_dimacs(G, comments), args.output)
    return EXIT_OK


def _verify_stream(args):
    if args.file:
        yield args.file, read_cnf(args.file)
        return
    if args.corpus == "exhaustive":
        insts = corpus.exhaustive_corpus(3, args.max_clauses)
    else:
        insts = corpus.random_corpus(args.count, args.seed)
    for i, F in enumerate(insts):
        yield f"{args.corpus}#{i}", F


def cmd_verify(args):
    if not args.file and not args.corpus:
        raise UsageError("give a file or --corpus")
    total = bad = 0
    reports = []
    for name, F in _verify_stream(args):
        _check_cap(F, args.cap)
        rep = verify_relations(F, name)
        total += 1
        if not rep.ok:
            bad += 1
        if args.file or not rep.ok:
            reports.append(rep)
    if args.json:
        print(json.dumps({"schema": SCHEMA_VERSION, "instances": total, "violations": bad,
                          "reports": [r.to_json() for r in reports]}, indent=2))
    else:
        for rep in reports:
            print(rep.instance)
            for k, v in rep.measures.items():
                print(f"  {k} {'skipped (cap)' if v is None else v}")
            for r in rep.relations:
                verdict = {True: "ok", False: "VIOLATED", None: "skipped"}[r["holds"]]
                print(f"  {r['relation']}: {verdict}")
        print(f"{total} instances, {bad} with violations")
    return EXIT_VIOLATION if bad else EXIT_OK


def cmd_probe(args):
    report = probe(args.target, args.budget, args.seed)
    _emit(args, report, "\n".join(f"{k}: {v}" for k, v in report.items()))
    return EXIT_OK


def cmd_corpus(args):
    if args.kind == "exhaustive":
        insts = corpus.exhaustive_corpus(args.n, args.max_clauses)
    elif args.kind == "random":
        insts = corpus.random_corpus(args.count, args.seed)
    else:
        insts = corpus.horn_corpus(args.count, args.seed)
    lines = "".join(json.dumps(to_json(F)) + "\n" for F in insts)
    write_out(lines, args.output)
    if args.output:
        print(f"{len(insts)} instances written to {args.output}", file=sys.stderr)
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="hardness", description="Exact resolution hardness measures for small clause-sets.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--cap", type=int, help=f"refuse inputs with more variables (default {DEFAULT_CAP}, games {games.GAME_CAP})")
    common.add_argument("--seed", type=int, default=corpus.DEFAULT_SEED)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("measure", parents=[common], help="compute hardness measures")
    s.add_argument("file", help="DIMACS file or - for stdin")
    s.add_argument("--measures", default="all", help="comma-separated: " + ",".join(MEASURE_NAMES))
    s.add_argument("--vars", help="relativise to these variables (comma-separated)")
    s.add_argument("--witness", action="store_true", help="also print refutations or space traces")
    s.set_defaults(fn=cmd_measure)

    s = sub.add_parser("generate", parents=[common], help="generate a formula family")
    s.add_argument("family", choices=["php", "fphp", "ophp", "ofphp", "ephp", "xor2", "tseitin", "full"])
    s.add_argument("params", nargs="*")
    s.add_argument("--graph", help="tseitin graph: cycle:N, path:N, complete:N or edges:a-b,...")
    s.add_argument("--charge", help="tseitin charges, comma-separated (default 1 on the first vertex)")
    s.add_argument("--direct", action="store_true", help="xor2: direct encoding instead of chained")
    s.add_argument("-o", "--output")
    s.add_argument("--names", help="write the variable name map as JSON")
    s.set_defaults(fn=cmd_generate)

    s = sub.add_parser("game", parents=[common], help="Prover-Delayer games")
    s.add_argument("action", choices=["value", "play"])
    s.add_argument("file")
    s.add_argument("--game", choices=["hd", "whd", "restricted"], default="hd")
    s.add_argument("--role", choices=["prover", "delayer"], default="delayer")
    s.add_argument("--replay", help="transcript JSON whose moves for --role are replayed")
    s.add_argument("--transcript", help="write the transcript JSON here")
    s.set_defaults(fn=cmd_game)

    s = sub.add_parser("reduce", parents=[common], help="apply r_k")
    s.add_argument("file")
    s.add_argument("-k", type=int, default=1)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_reduce)

    s = sub.add_parser("prime", parents=[common], help="prime implicates")
    s.add_argument("file")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_prime)

    s = sub.add_parser("blocked", parents=[common], help="blocked clauses")
    s.add_argument("action", choices=["eliminate", "list"])
    s.add_argument("file")
    s.add_argument("--length", type=int, help="only remove clauses of this length")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_blocked)

    s = sub.add_parser("extend", parents=[common], help="extension read off a refutation")
    s.add_argument("action", choices=["from-proof"])
    s.add_argument("file")
    s.add_argument("proof", nargs="?", help="refutation in text form (default: an optimal tree refutation)")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_extend)

    s = sub.add_parser("verify", parents=[common], help="check the relations between the measures")
    s.add_argument("file", nargs="?")
    s.add_argument("--corpus", choices=["exhaustive", "random"])
    s.add_argument("--max-clauses", type=int, default=8)
    s.add_argument("--count", type=int, default=200)
    s.set_defaults(fn=cmd_verify)

    s = sub.add_parser("probe", parents=[common], help="numerical probes of open questions")
    s.add_argument("target", choices=["space_gap", "ss_factor", "weak_union", "whd_vs_ss", "conj_wid_whd"])
    s.add_argument("--budget", type=int, default=2000)
    s.set_defaults(fn=cmd_probe)

    s = sub.add_parser("corpus", parents=[common], help="write a corpus as JSON lines")
    s.add_argument("kind", choices=["exhaustive", "random", "horn"])
    s.add_argument("-n", type=int, default=3)
    s.add_argument("--max-clauses", type=int, default=8)
    s.add_argument("--count", type=int, default=200)
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_corpus)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.fn(args)
    except CapExceeded as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_CAP
    except EOFError:
        print("error: input ended", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, DimacsError, ProofError, ValueError, OSError, games.IllegalMove) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
