"""Command-line front end.

Every command funnels randomness through one --seed, prints the resolved
configuration, and writes reports with a version-stamped header so reruns
are byte-identical.  Exit codes: 0 success, 2 usage, 3 validation failure,
4 resource budget exceeded.
"""

import argparse
import os
import sys

from . import __version__
from .compression import CompressedCylinder
from .errors import ResourceError, ValidationError
from .params import derive_parameters, make_explicit_parameters
from .tseitin import (compressed_cylinder_tseitin, export_dimacs,
                      export_name_table, import_dimacs)
from .resolution import (check_refutation, min_depth_at_width,
                         min_refutation_width, proof_to_trace, trace_to_proof)
from .narrow import small_width_refutation

def default_budget(fallback=500_000):
    """Budget cap for the exact oracles, overridable via CYLCOMP_BUDGET."""
    return int(os.environ.get("CYLCOMP_BUDGET", fallback))


EXIT_VALIDATION = 3
EXIT_RESOURCE = 4


def add_cylinder_arguments(parser):
    parser.add_argument("--k", type=int, required=True, help="row count")
    parser.add_argument("--c", type=int, required=True, help="compression order")
    parser.add_argument("--n", type=int, help="base range for recipe mode")
    parser.add_argument("--moduli", help="comma-separated row moduli")
    parser.add_argument("--L", type=int, help="middle length")
    parser.add_argument("--r", type=int, help="ear length")


def cylinder_from_args(args):
    if args.moduli:
        moduli = [int(tok) for tok in args.moduli.split(",")]
        if args.L is None or args.r is None:
            raise ValidationError("explicit mode needs --L and --r")
        params = make_explicit_parameters(args.k, args.c, moduli, args.L, args.r)
    elif args.n:
        params = derive_parameters(args.n, args.k, args.c)
    else:
        raise ValidationError("need either --n or --moduli/--L/--r")
    return CompressedCylinder.build(params)


def config_string(args):
    skip = {"func", "out", "figure"}
    items = [f"{key}={value}" for key, value in sorted(vars(args).items())
             if key not in skip and value is not None]
    return " ".join(items)


def cmd_gen_formula(args):
    cc = cylinder_from_args(args)
    _, tau = compressed_cylinder_tseitin(cc)
    with open(args.out, "w") as fh:
        fh.write(export_dimacs(tau))
    with open(args.out + ".vars", "w") as fh:
        fh.write(export_name_table(tau))
    print(f"wrote {args.out}: {tau.num_vars} variables, "
          f"{tau.clause_count} clauses, width {tau.width}")
    return 0


def cmd_refute(args):
    cc = cylinder_from_args(args)
    proof, tau = small_width_refutation(cc)
    metrics = check_refutation(tau, proof)
    with open(args.out, "w") as fh:
        fh.write(proof_to_trace(tau, proof))
    print(f"wrote {args.out}: size {metrics.size}, width {metrics.width}, "
          f"depth {metrics.depth}")
    return 0


def cmd_check_proof(args):
    with open(args.cnf) as fh:
        cnf = import_dimacs(fh.read())
    with open(args.proof) as fh:
        proof = trace_to_proof(fh.read())
    metrics = check_refutation(cnf, proof)
    print(f"size {metrics.size} width {metrics.width} depth {metrics.depth}")
    return 0


def cmd_oracle_width(args):
    with open(args.cnf) as fh:
        cnf = import_dimacs(fh.read())
    result = min_refutation_width(cnf, args.cap, budget=args.budget)
    print(f"min-width {result if result is not None else 'unknown'}")
    return 0


def cmd_oracle_depth(args):
    with open(args.cnf) as fh:
        cnf = import_dimacs(fh.read())
    result = min_depth_at_width(cnf, args.width, args.cap, budget=args.budget)
    print(f"min-depth {result if result is not None else 'unknown'} "
          f"at width {args.width}")
    return 0


def _make_cops(name, cc, args):
    from .game import LockstepCops, RandomCops, RefutationCops
    if name == "lockstep":
        return LockstepCops()
    if name == "random":
        return RandomCops()
    if name == "refutation":
        proof, tau = small_width_refutation(cc)
        return RefutationCops(tau, proof)
    raise ValidationError(f"unknown cop strategy {name!r}")


def _make_robber(name):
    from .game import RandomRobber, ScriptedRobber
    if name in ("scripted", "paper"):  # "paper" kept as a legacy alias
        return ScriptedRobber()
    if name == "random":
        return RandomRobber()
    raise ValidationError(f"unknown robber strategy {name!r}")


def cmd_play(args):
    from .game import run_match
    cc = cylinder_from_args(args)
    cops = _make_cops(args.cops, cc, args)
    robber = _make_robber(args.robber)
    num_cops = args.num_cops or (cc.k + cc.params.c)
    transcript = run_match(cc, cops, robber, num_cops,
                           args.max_rounds, seed=args.seed)
    with open(args.out, "w") as fh:
        fh.write(transcript.to_json())
    print(f"verdict {transcript.verdict} after {transcript.end_round} rounds")
    return 0


def cmd_wl_run(args):
    from .reports import save_figure, wl_figure, write_csv
    from .wl import (distinguish_report_rows, import_colored_graph,
                     wl_distinguish, wl_refine)
    with open(args.graph) as fh:
        G = import_colored_graph(fh.read())
    if args.other:
        with open(args.other) as fh:
            H = import_colored_graph(fh.read())
        result = wl_distinguish(G, H, args.dim, max_rounds=args.max_rounds)
        rows = distinguish_report_rows(result)
        write_csv(args.out, ("round", "classes_g", "classes_h", "distinguished"),
                  rows, config=config_string(args))
        if args.figure:
            save_figure(wl_figure(rows), args.out + ".png")
        verdict = (f"distinguished at round {result.distinguished_round}"
                   if result.distinguished else "not distinguished")
        print(verdict)
    else:
        coloring = wl_refine(G, args.dim, max_rounds=args.max_rounds)
        rows = [(i, n, n, 0) for i, n in enumerate(coloring.class_counts)]
        write_csv(args.out, ("round", "classes_g", "classes_h", "distinguished"),
                  rows, config=config_string(args))
        if args.figure:
            save_figure(wl_figure(rows), args.out + ".png")
        print(f"stabilized={coloring.stabilized} "
              f"iteration={coloring.iteration_number}")
    return 0


def cmd_cfi_gen(args):
    from .cfi import build_cfi, compress_cfi, make_charge_functions
    from .wl import export_colored_graph
    cc = cylinder_from_args(args)
    zero, one = make_charge_functions(cc)
    charge = one if args.charge == "g" else zero
    cfi = build_cfi(cc.graph, charge)
    graph = compress_cfi(cfi, cc.compression) if args.compressed else cfi
    with open(args.out, "w") as fh:
        fh.write(export_colored_graph(graph))
    print(f"wrote {args.out}: {graph.n} vertices, {graph.num_edges} edges")
    return 0


def cmd_lift(args):
    from .lifting import ind_lift, ind_lift_3cnf, xor_lift
    with open(args.cnf) as fh:
        cnf = import_dimacs(fh.read())
    if args.gadget == "xor":
        lifted, bmap = xor_lift(cnf, args.size)
    elif args.gadget == "ind":
        lifted, bmap = ind_lift(cnf, args.size)
    elif args.gadget == "ind3":
        lifted, bmap = ind_lift_3cnf(cnf, args.size)
    else:
        raise ValidationError(f"unknown gadget {args.gadget!r}")
    with open(args.out, "w") as fh:
        fh.write(export_dimacs(lifted))
    with open(args.out + ".vars", "w") as fh:
        fh.write(export_name_table(lifted))
    print(f"wrote {args.out}: {lifted.num_vars} variables, "
          f"{lifted.clause_count} clauses, width {lifted.width}")
    return 0


def cmd_extract_tree(args):
    from .decision_dag import validate_decision_dag
    from .lifting import extract_decision_tree, full_composed_tree
    with open(args.cnf) as fh:
        cnf = import_dimacs(fh.read())
    tree, bmap = full_composed_tree(cnf, args.size)
    extracted = extract_decision_tree(tree, args.size)
    validate_decision_dag(extracted, cnf)
    lines = []
    for idx in extracted.topological_order():
        node = extracted.node(idx)
        fixed = " ".join(f"{v}={b}" for v, b in sorted(node.assignment.items()))
        if node.children is None:
            lines.append(f"leaf {idx} out {node.output} [{fixed}]")
        else:
            lines.append(f"node {idx} q {node.query} {node.children[0]} "
                         f"{node.children[1]} [{fixed}]")
    with open(args.out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"input size {tree.size} -> extracted size {extracted.size}, "
          f"width {extracted.width}, depth {extracted.depth}")
    return 0


def cmd_restrict(args):
    from .lifting import ind_block_map, ind_lift
    from .restriction import (apply_restriction_cnf, restriction_to_text,
                              sample_restriction)
    with open(args.cnf) as fh:
        cnf = import_dimacs(fh.read())
    lifted, bmap = ind_lift(cnf, args.size)
    rho = sample_restriction(bmap, args.seed)
    restricted = apply_restriction_cnf(lifted, bmap, rho)
    with open(args.out, "w") as fh:
        fh.write(restriction_to_text(rho))
    with open(args.out + ".cnf", "w") as fh:
        fh.write(export_dimacs(restricted))
    print(f"wrote {args.out}: {len(rho.pointers)} blocks, "
          f"restricted formula has {restricted.clause_count} clauses")
    return 0


def cmd_tail_experiment(args):
    from .lifting import ind_block_map
    from .reports import save_figure, tail_figure, write_csv
    from .restriction import restriction_width_tail
    bmap = ind_block_map(args.blocks, args.size)
    clause = frozenset(bmap.y(i, 1) for i in range(1, args.blocks + 1))
    rows = restriction_width_tail(clause, bmap, args.trials, args.seed)
    write_csv(args.out, ("w", "empirical", "bound", "ci_low", "ci_high"),
              rows, config=config_string(args))
    if args.figure:
        save_figure(tail_figure(rows, args.size), args.out + ".png")
    print(f"wrote {args.out}: {len(rows)} rows, {args.trials} trials")
    return 0


def cmd_tradeoff_experiment(args):
    from .compression import CompressedCylinder
    from .game import LockstepCops, ScriptedRobber, RefutationCops, run_match
    from .params import make_explicit_parameters, verify_parameter_properties
    from .reports import save_figure, tradeoff_figure, write_csv

    cc = cylinder_from_args(args)
    params = cc.params
    report = verify_parameter_properties(params)
    proof, tau = small_width_refutation(cc)
    metrics = check_refutation(tau, proof)

    k, c = params.k, params.c
    guaranteed = (params.middle_length - 2 * params.ear_length) // (8 * (k + c))

    survival = run_match(cc, LockstepCops(), ScriptedRobber(), k + c,
                         max_rounds=max(guaranteed + 1, 4), seed=args.seed)
    cop_win = run_match(cc, RefutationCops(tau, proof), ScriptedRobber(),
                        metrics.width + 1,
                        max_rounds=metrics.depth + 1, seed=args.seed)
    label = f"k={k},c={c},L={params.middle_length}"
    rows = [(label, survival.end_round, cop_win.end_round,
             metrics.size, metrics.width, metrics.depth,
             int(report.all_hold), guaranteed, survival.verdict,
             cop_win.verdict)]

    # control row: moduli equal to the middle length compress nothing, and
    # k+1 lockstep cops bound any robber's survival there
    identity = CompressedCylinder.build(make_explicit_parameters(
        k, c, (params.middle_length,) * k,
        params.middle_length, params.ear_length))
    id_proof, id_tau = small_width_refutation(identity)
    id_metrics = check_refutation(id_tau, id_proof)
    control = run_match(identity, LockstepCops(), ScriptedRobber(), k + 1,
                        max_rounds=(k + 1) * identity.width, seed=args.seed)
    rows.append((label + ",identity", control.end_round, control.end_round,
                 id_metrics.size, id_metrics.width, id_metrics.depth,
                 0, 0, control.verdict, control.verdict))

    if args.oracles:
        width = min_refutation_width(tau, k + 3, budget=args.budget)
        rows = [rows[0] + (width if width is not None else "unknown",),
                rows[1] + ("",)]
        header = ("instance", "survival_rounds", "cop_win_rounds",
                  "proof_size", "proof_width", "proof_depth", "p1_p4",
                  "guaranteed", "survival_verdict", "cop_verdict",
                  "oracle_width")
    else:
        header = ("instance", "survival_rounds", "cop_win_rounds",
                  "proof_size", "proof_width", "proof_depth", "p1_p4",
                  "guaranteed", "survival_verdict", "cop_verdict")
    write_csv(args.out, header, rows, config=config_string(args))
    if args.figure:
        save_figure(tradeoff_figure(rows), args.out + ".png")
    print(f"wrote {args.out}: survival {survival.end_round} rounds "
          f"({survival.verdict}), cops win in {cop_win.end_round} "
          f"({cop_win.verdict})")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cylcomp",
        description="compressed Tseitin formulas, cop-robber games, "
                    "Weisfeiler-Leman refinement, and CNF lifting")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-formula", help="compressed Tseitin DIMACS")
    add_cylinder_arguments(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_gen_formula)

    p = sub.add_parser("refute", help="narrow refutation of the formula")
    add_cylinder_arguments(p)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("check-proof", help="validate a resolution trace")
    p.add_argument("cnf")
    p.add_argument("proof")
    p.set_defaults(func=cmd_check_proof)

    p = sub.add_parser("oracle-width", help="exact refutation width")
    p.add_argument("--cnf", required=True)
    p.add_argument("--cap", type=int, default=8)
    p.add_argument("--budget", type=int, default=default_budget())
    p.set_defaults(func=cmd_oracle_width)

    p = sub.add_parser("oracle-depth", help="exact depth at fixed width")
    p.add_argument("--cnf", required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--cap", type=int, default=64)
    p.add_argument("--budget", type=int, default=default_budget())
    p.set_defaults(func=cmd_oracle_depth)

    p = sub.add_parser("play", help="run a cop-robber match")
    add_cylinder_arguments(p)
    p.add_argument("--cops", default="lockstep",
                   choices=("lockstep", "random", "refutation"))
    p.add_argument("--robber", default="scripted",
                   choices=("scripted", "paper", "random"))
    p.add_argument("--num-cops", type=int)
    p.add_argument("--max-rounds", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("wl-run", help="refine or distinguish colored graphs")
    p.add_argument("--graph", required=True)
    p.add_argument("--other")
    p.add_argument("--dim", type=int, default=1)
    p.add_argument("--max-rounds", type=int)
    p.add_argument("--out", required=True)
    p.add_argument("--figure", action="store_true")
    p.set_defaults(func=cmd_wl_run)

    p = sub.add_parser("cfi-gen", help="CFI graph of a cylinder")
    add_cylinder_arguments(p)
    p.add_argument("--charge", default="f", choices=("f", "g"))
    p.add_argument("--compressed", action="store_true")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_cfi_gen)

    p = sub.add_parser("lift", help="apply a gadget to a CNF")
    p.add_argument("--cnf", required=True)
    p.add_argument("--gadget", required=True, choices=("xor", "ind", "ind3"))
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("extract-tree", help="pull a composed tree back")
    p.add_argument("--cnf", required=True)
    p.add_argument("--size", type=int, default=2)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_extract_tree)

    p = sub.add_parser("restrict", help="sample and apply a restriction")
    p.add_argument("--cnf", required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("tail-experiment", help="restricted-width tail report")
    p.add_argument("--blocks", type=int, default=6)
    p.add_argument("--size", type=int, default=4)
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--figure", action="store_true", default=True)
    p.add_argument("--no-figure", dest="figure", action="store_false")
    p.set_defaults(func=cmd_tail_experiment)

    p = sub.add_parser("tradeoff-experiment",
                       help="formula metrics and match outcomes in one table")
    add_cylinder_arguments(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--oracles", action="store_true")
    p.add_argument("--budget", type=int, default=default_budget(200_000))
    p.add_argument("--out", required=True)
    p.add_argument("--figure", action="store_true", default=True)
    p.add_argument("--no-figure", dest="figure", action="store_false")
    p.set_defaults(func=cmd_tradeoff_experiment)

    return parser


def dispatch(argv):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def main():
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
