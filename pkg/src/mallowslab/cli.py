"""Command-line front end.

Data goes to stdout, diagnostics to stderr.  Exit status: 0 on success, 1 on
a usage error, 2 when a library call fails (bad formula, budget exceeded,
undefined statistic, ...).  Every randomized subcommand requires ``--seed``.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Sequence
from fractions import Fraction

import numpy as np

from . import __version__
from .limit import (
    QSchedule, Record, chain_trace, displacement_bound_check, estimate_sat_prob, exact_sat_prob,
    poisson_cycle_distance, tv_exact_mallows, tv_tgeo_uniform, write_records,
)
from .limit.montecarlo import ExperimentConfig
from .logic import (
    Signature, duplicator_wins, ef_type, evaluate, parse, relativize, render, reverse_formula,
)
from .logic.ef import EF_BUDGET, EFBudgetError
from .mallows import (
    MallowsParams, mallows_pmf, replica_rng, sample_mallows_batch, stream_prefix_ranks_batch,
)
from .perm import format_perm, parse_perm
from .struct import induced_graph, j1, k1, minimal_intervals, parse_interval, w_set
from .struct import sentences
from .towers import log_star, log_star_star, tower, wowzer

EXIT_OK, EXIT_USAGE, EXIT_MODULE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: error: {message}\n{self.format_usage()}")


# argument types -------------------------------------------------------------

def _number(text: str):
    try:
        return Fraction(text) if "/" in text else float(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _positive_q(text: str):
    q = _number(text)
    if not q > 0:
        raise argparse.ArgumentTypeError(f"q must be positive, got {text}")
    return q


def _unit_q(text: str) -> float:
    q = float(_number(text))
    if not 0 < q < 1:
        raise argparse.ArgumentTypeError(f"q must lie in (0, 1), got {text}")
    return q


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"must be nonnegative, got {v}")
    return v


def _positive(text: str) -> int:
    v = _nonneg(text)
    if v == 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _big_int(text: str) -> int:
    """Integers, also written as ``2^k``."""
    base, sep, exp = text.partition("^")
    try:
        return int(base) ** int(exp) if sep else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _sizes(text: str) -> list[int]:
    try:
        out = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad size list {text!r}") from None
    if not out or any(n < 0 for n in out):
        raise argparse.ArgumentTypeError("sizes must be a nonempty list of nonnegative integers")
    return out


def _interval(text: str):
    try:
        return parse_interval(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _schedule(text: str) -> QSchedule:
    try:
        return QSchedule.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# parser ---------------------------------------------------------------------

def _perm_source(p: argparse.ArgumentParser, required: bool = True) -> None:
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--perm", help="one-line notation, e.g. 2,3,1")
    g.add_argument("--perm-file", help="file with one permutation per line ('-' for stdin)")


def _formula_source(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--formula", help="formula text")
    g.add_argument("--formula-file", help="file holding the formula text ('-' for stdin)")
    p.add_argument("--sig", choices=["toob", "toto"], help="check the formula against a signature")


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="mallowslab", description="Mallows permutations and first-order logic on permutations.")
    top.add_argument("--version", action="version", version=f"mallowslab {__version__}")
    sub = top.add_subparsers(dest="command", required=True, parser_class=_Parser, metavar="COMMAND")

    def add(name: str, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_, description=help_)
        p.add_argument("--format", choices=["text", "json", "csv"], default="text")
        return p

    p = add("sample", "draw Mallows permutations")
    p.add_argument("--n", type=_nonneg, required=True)
    p.add_argument("--q", type=_positive_q, required=True)
    p.add_argument("--seed", type=_nonneg, required=True)
    p.add_argument("--count", type=_positive, default=1)
    p.add_argument("--method", choices=["insertion", "stream"], default="insertion",
                   help="stream: prefix patterns of the infinite construction (needs q < 1)")

    p = add("pmf", "Mallows probability of given permutations")
    _perm_source(p)
    p.add_argument("--q", type=_positive_q, required=True)

    p = add("eval", "truth value of a formula in permutations")
    _perm_source(p)
    _formula_source(p)
    p.add_argument("--assign", default="", help="free variable values, e.g. x=1,y=3")

    p = add("transform", "relativize or reverse a formula")
    _formula_source(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--relativize", action="store_true", help="restrict quantifiers to positions <=1 a new free variable")
    g.add_argument("--reverse", action="store_true", help="swap the arguments of every <2 atom")
    p.add_argument("--var", help="name of the relativization variable (default: fresh)")

    p = add("ef", "Ehrenfeucht-Fraisse equivalence and types")
    p.add_argument("--perm", type=parse_perm, required=True)
    p.add_argument("--perm2", type=parse_perm, help="decide perm ==_d perm2")
    p.add_argument("--d", type=_nonneg, required=True)
    p.add_argument("--sig", choices=["toob", "toto"], default="toto")
    p.add_argument("--game", action="store_true", help="solve the game by exhaustive search instead of comparing types")

    p = add("stats", "interval statistics of a permutation")
    _perm_source(p)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--j1", action="store_true")
    g.add_argument("--k1", action="store_true")
    g.add_argument("--wk", action="store_true", help="W_k(A) for --A and --k")
    g.add_argument("--minimal", action="store_true", help="I_k(J) for --J and --k")
    g.add_argument("--hgraph", action="store_true", help="H(I_k(I); I_k(J)) for --I, --J and --k")
    p.add_argument("--A", type=_interval)
    p.add_argument("--I", type=_interval)
    p.add_argument("--J", type=_interval)
    p.add_argument("--k", type=_positive)

    p = add("tv", "exact total variation distances and the cycle-count distance")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--mallows", action="store_true", help="Mallows(n, q1) vs Mallows(n, q2)")
    g.add_argument("--tgeo", action="store_true", help="TGeo(m, 1 - q) vs uniform on [m]")
    g.add_argument("--cycles", action="store_true", help="(C_1..C_b) vs independent Poisson(1/i)")
    p.add_argument("--n", type=_nonneg)
    p.add_argument("--m", type=_positive)
    p.add_argument("--b", type=_nonneg)
    p.add_argument("--q", type=_positive_q)
    p.add_argument("--q1", type=_positive_q)
    p.add_argument("--q2", type=_positive_q)
    p.add_argument("--samples", type=_positive, help="Monte Carlo sample count (cycles; omit for exact)")
    p.add_argument("--seed", type=_nonneg)

    p = add("experiment", "satisfaction probabilities, exact or Monte Carlo")
    p.add_argument("--formula")
    p.add_argument("--formula-file")
    p.add_argument("--sig", choices=["toob", "toto"])
    p.add_argument("--sentence", choices=["rho", "fixed-point", "first-image"], help="a built-in sentence")
    p.add_argument("--schedule", type=_schedule, help="q(n): 0.5, fixed:1/2, n4:C, n:C, logstar:+1/-1")
    p.add_argument("--sizes", type=_sizes, required=True)
    p.add_argument("--samples", type=_positive)
    p.add_argument("--seed", type=_nonneg)
    p.add_argument("--workers", type=_positive, default=1)
    p.add_argument("--exact", action="store_true", help="enumerate S_n instead of sampling")
    p.add_argument("--displacement", action="store_true", help="mean |Pi(1) - 1| against the displacement bound")

    p = add("chain", "the regeneration chain along one stream")
    p.add_argument("--q", type=_unit_q, required=True)
    p.add_argument("--d", type=_nonneg, required=True)
    p.add_argument("--n-max", type=_positive, required=True)
    p.add_argument("--seed", type=_nonneg, required=True)
    p.add_argument("--sig", choices=["toob", "toto"], default="toto")
    p.add_argument("--no-verify", action="store_true")

    p = add("build-sentence", "print a constructed formula")
    p.add_argument("name", choices=["zeta", "j1", "k1", "rho", "lambda", "vertex", "arc", "phi", "omega", "xi1", "xi2", "universal"])
    p.add_argument("--k", type=_positive, default=2)

    p = add("towers", "towers, wowzers and their inverses")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--tower", type=_nonneg, metavar="N")
    g.add_argument("--wowzer", type=_nonneg, metavar="N")
    g.add_argument("--logstar", type=_big_int, metavar="X")
    g.add_argument("--logstarstar", type=_big_int, metavar="X")
    return top


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    args = build_parser().parse_args(argv)
    _validate(args)
    return args


def _need(args: argparse.Namespace, *names: str) -> None:
    missing = [n for n in names if getattr(args, n.replace("-", "_")) is None]
    if missing:
        raise UsageError(f"{args.command}: missing required flag(s) " + ", ".join(f"--{m}" for m in missing))


def _validate(a: argparse.Namespace) -> None:
    if a.command == "stats":
        if a.wk:
            _need(a, "A", "k")
        elif a.minimal:
            _need(a, "J", "k")
        elif a.hgraph:
            _need(a, "I", "J", "k")
    elif a.command == "tv":
        if a.mallows:
            _need(a, "n", "q1", "q2")
        elif a.tgeo:
            _need(a, "m", "q")
        else:
            _need(a, "n", "b")
            if a.samples is not None:
                _need(a, "seed")
    elif a.command == "experiment":
        if a.displacement:
            _need(a, "schedule", "samples", "seed")
        else:
            given = sum(x is not None for x in (a.formula, a.formula_file, a.sentence))
            if given != 1:
                raise UsageError("experiment: give exactly one of --formula, --formula-file, --sentence")
            _need(a, "schedule")
            if not a.exact:
                _need(a, "samples", "seed")
    elif a.command == "sample" and a.method == "stream" and not a.q < 1:
        raise UsageError("sample: --method stream needs q < 1")


# execution ------------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _perms(a: argparse.Namespace) -> list:
    if a.perm is not None:
        return [parse_perm(a.perm)]
    return [parse_perm(line) for line in _read(a.perm_file).splitlines() if line.strip()]


def _formula(a: argparse.Namespace):
    text = a.formula if a.formula is not None else _read(a.formula_file)
    return parse(text, a.sig)


def _assignment(text: str) -> dict[str, int]:
    out = {}
    for part in filter(None, (t.strip() for t in text.split(","))):
        name, sep, value = part.partition("=")
        if not sep:
            raise UsageError(f"bad assignment {part!r}; use name=value")
        try:
            out[name.strip()] = int(value)
        except ValueError:
            raise UsageError(f"bad assignment {part!r}; use name=value") from None
    return out


def _text_value(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


class _Out:
    """Collects records; ``text`` mode prints the plain value of each."""

    def __init__(self, fmt: str, stream):
        self.fmt, self.stream, self.records = fmt, stream, []

    def emit(self, record: Record, text: str | None = None) -> None:
        if self.fmt == "text":
            self.stream.write((text if text is not None else _text_value(record.value)) + "\n")
        else:
            self.records.append(record)

    def close(self) -> None:
        if self.fmt != "text":
            write_records(self.records, self.stream, self.fmt)


def _cmd_sample(a, out: _Out) -> None:
    params = MallowsParams(a.n, a.q)
    for r in range(a.count):
        # one generator per replica, so row r does not depend on --count
        rng = replica_rng(a.seed, r)
        if a.method == "stream":
            row = stream_prefix_ranks_batch(float(a.q), a.n, 1, rng)[0] if a.n else np.empty(0, dtype=int)
        else:
            row = sample_mallows_batch(params, 1, rng)[0]
        text = format_perm(row.tolist())
        out.emit(Record("sample", text, a.n, a.q, seed=a.seed, params={"replica": r, "method": a.method}))


def _cmd_pmf(a, out: _Out) -> None:
    for p in _perms(a):
        v = mallows_pmf(MallowsParams(len(p), a.q), p)
        out.emit(Record("pmf", v, len(p), a.q, params={"perm": format_perm(p)}))


def _cmd_eval(a, out: _Out) -> None:
    f = _formula(a)
    env = _assignment(a.assign)
    for p in _perms(a):
        v = evaluate(p, f, env)
        out.emit(Record("eval", v, len(p), params={"perm": format_perm(p), "formula": render(f)}))


def _cmd_transform(a, out: _Out) -> None:
    f = _formula(a)
    if a.relativize:
        g, y = relativize(f, a.var)
        out.emit(Record("transform", render(g), params={"mode": "relativize", "var": y}))
    else:
        g = reverse_formula(f)
        out.emit(Record("transform", render(g), params={"mode": "reverse"}))


def _cmd_ef(a, out: _Out) -> None:
    sig = Signature(a.sig)
    if a.perm2 is None:
        t = ef_type(a.perm, a.d, sig)
        out.emit(Record("ef_type", t.digest.hex(), len(a.perm), params={"d": a.d, "sig": a.sig, "perm": format_perm(a.perm)}))
        return
    if a.game:
        if max(len(a.perm), len(a.perm2)) ** a.d > EF_BUDGET:
            raise EFBudgetError(f"EF budget exceeded: game search over n**d > {EF_BUDGET}")
        v = duplicator_wins(a.perm, a.perm2, a.d, sig)
    else:
        v = ef_type(a.perm, a.d, sig) == ef_type(a.perm2, a.d, sig)
    out.emit(Record("ef", v, len(a.perm), params={
        "d": a.d, "sig": a.sig, "perm": format_perm(a.perm), "perm2": format_perm(a.perm2), "game": a.game}))


def _cmd_stats(a, out: _Out) -> None:
    for p in _perms(a):
        params = {"perm": format_perm(p)}
        if a.j1:
            v = j1(p)
            out.emit(Record("j1", None if v == float("inf") else int(v), len(p), params=params),
                     "inf" if v == float("inf") else str(int(v)))
        elif a.k1:
            out.emit(Record("k1", k1(p), len(p), params=params))
        elif a.wk:
            w = w_set(p, a.A, a.k)
            params.update(A=str(a.A), k=a.k)
            out.emit(Record("wk", w, len(p), params=params), ",".join(map(str, w)))
        elif a.minimal:
            seq = minimal_intervals(p, a.J, a.k)
            params.update(J=str(a.J), k=a.k)
            out.emit(Record("minimal", [str(i) for i in seq], len(p), params=params), ",".join(map(str, seq)))
        else:
            ical = minimal_intervals(p, a.I, a.k)
            jcal = minimal_intervals(p, a.J, a.k)
            g = induced_graph(p, ical, jcal)
            params.update(I=str(a.I), J=str(a.J), k=a.k, ical=[str(i) for i in ical], jcal=[str(j) for j in jcal])
            arcs = [[u + 1, v + 1] for u, v in g.sorted_arcs()]
            out.emit(Record("hgraph", {"order": g.order, "arcs": arcs}, len(p), params=params), g.to_text().rstrip("\n"))


def _cmd_tv(a, out: _Out) -> None:
    if a.mallows:
        v = tv_exact_mallows(a.n, a.q1, a.q2)
        out.emit(Record("tv_mallows", v, a.n, params={"q1": a.q1, "q2": a.q2}))
    elif a.tgeo:
        v = tv_tgeo_uniform(a.m, a.q)
        out.emit(Record("tv_tgeo", v, a.m, a.q))
    else:
        r = poisson_cycle_distance(a.n, a.b, a.samples, a.seed)
        ci = None if a.samples is None else r.half_width_95
        out.emit(Record("tv_cycles", r.value, a.n, ci=ci, seed=a.seed, params={"b": a.b, "samples": a.samples}))


_BUILTIN = {
    "rho": lambda: sentences.build_rho(),
    "fixed-point": lambda: parse("exists x. R(x,x)"),
    "first-image": lambda: parse("exists x. ~(exists y. (y <1 x | y <2 x))"),
}


def _cmd_experiment(a, out: _Out) -> None:
    if a.displacement:
        for n in sorted(a.sizes):
            q = float(a.schedule(n))
            r = displacement_bound_check(n, q, a.samples, a.seed)
            out.emit(Record("displacement", r.mean, n, q, ci=1.959963984540054 * r.std_error, seed=a.seed,
                            params={"bound": r.bound, "passed": r.passed, "samples": a.samples}))
        return
    if a.sentence is not None:
        f = _BUILTIN[a.sentence]()
    else:
        f = _formula(a)
    label = a.sentence or render(f)
    if a.exact:
        for n in sorted(a.sizes):
            q = a.schedule(n)
            v = exact_sat_prob(f, n, q)
            out.emit(Record("exact_sat_prob", v, n, q, params={"sentence": label}),
                     f"{n} {_text_value(q)} {_text_value(v)}")
        return
    cfg = ExperimentConfig(f, a.schedule, sorted(a.sizes), a.samples, a.seed, a.workers)
    for n, est in estimate_sat_prob(cfg).items():
        out.emit(Record("estimate_sat_prob", est.p_hat, n, est.q, ci=est.half_width_95, seed=a.seed,
                        params={"sentence": label, "samples": est.samples}),
                 f"{n} {est.q} {est.p_hat} {est.half_width_95}")


def _cmd_chain(a, out: _Out) -> None:
    trace = chain_trace(a.q, a.d, a.n_max, a.seed, verify=not a.no_verify, signature=Signature(a.sig))
    for s in trace:
        rep = format_perm(trace.rep(s.class_label))
        params = {"d": a.d, "regeneration_time": s.regeneration_time, "class": s.class_label.digest.hex(),
                  "rep": rep, "tail": list(s.tail)}
        text = f"{s.n} {s.regeneration_time} {s.class_label.digest.hex()[:12]} [{rep}] ({','.join(map(str, s.tail))})"
        out.emit(Record("chain", s.regeneration_time, s.n, a.q, seed=a.seed, params=params), text)


def _cmd_build(a, out: _Out) -> None:
    k = a.k
    builders = {
        "zeta": lambda: sentences.build_zeta(k),
        "j1": lambda: sentences.build_j1_witness(),
        "k1": lambda: sentences.build_k1_witness(),
        "rho": lambda: sentences.build_rho(),
        "lambda": lambda: sentences.build_lambda(),
        "vertex": lambda: sentences.build_vertex(k),
        "arc": lambda: sentences.build_arc(k),
        "phi": lambda: sentences.build_nonconvergence_phi(k),
        "omega": lambda: sentences.build_omega(k),
        "xi1": lambda: sentences.build_xi1(k),
        "xi2": lambda: sentences.build_xi2(k),
        "universal": lambda: sentences.build_universal_phi(k),
    }
    f = builders[a.name]()
    out.emit(Record("build_sentence", render(f), params={"name": a.name, "k": k, "free": sorted(f.free)}))


def _cmd_towers(a, out: _Out) -> None:
    if a.tower is not None:
        op, arg, v = "tower", a.tower, tower(a.tower)
    elif a.wowzer is not None:
        op, arg, v = "wowzer", a.wowzer, wowzer(a.wowzer)
    elif a.logstar is not None:
        op, arg, v = "log_star", a.logstar, log_star(a.logstar)
    else:
        op, arg, v = "log_star_star", a.logstarstar, log_star_star(a.logstarstar)
    shown = arg if arg.bit_length() <= 64 else f"<{arg.bit_length()}-bit integer>"
    value = v if v.bit_length() <= 64 else str(v)
    out.emit(Record(op, value, params={"arg": shown}), str(v))


_COMMANDS = {
    "sample": _cmd_sample, "pmf": _cmd_pmf, "eval": _cmd_eval, "transform": _cmd_transform,
    "ef": _cmd_ef, "stats": _cmd_stats, "tv": _cmd_tv, "experiment": _cmd_experiment,
    "chain": _cmd_chain, "build-sentence": _cmd_build, "towers": _cmd_towers,
}


def execute(args: argparse.Namespace, stdout=None) -> None:
    out = _Out(args.format, stdout or sys.stdout)
    _COMMANDS[args.command](args, out)
    out.close()


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = parse_args(argv)
    except UsageError as exc:
        sys.stderr.write(str(exc).rstrip("\n") + "\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return EXIT_OK if not exc.code else EXIT_USAGE
    try:
        execute(args)
    except UsageError as exc:
        sys.stderr.write(f"mallowslab {args.command}: {exc}\n")
        return EXIT_USAGE
    except (ValueError, KeyError, ArithmeticError, OSError, RecursionError) as exc:
        sys.stderr.write(f"mallowslab {args.command}: error: {exc}\n")
        return EXIT_MODULE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
