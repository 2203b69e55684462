"""Command-line interface: ``spandep <subcommand> ...``."""

from __future__ import annotations

import argparse
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

import numpy as np

from . import bench as bench_mod
from .conllu import ConlluError, read_conllu_file, write_conllu
from .core import ALGORITHMS, EISNER_2O_HEADSPLIT, ScoreSet, normalize_algorithm
from .cost import CostConfig
from .decoders import count_trees, decode
from .evaluation import POLICIES, SCORE_ALL, evaluate
from .oracle import MAX_N, brute_force_argmax, enumerate_projective
from .scorefile import ScoreFileError, read_scores
from .scorer import LinearModel
from .trainer import TrainConfig, parse, train
from .trees import tree_score

EXIT_OK, EXIT_CHECK, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 0


class UsageError(Exception):
    pass


def _algorithm(name: str) -> str:
    try:
        return normalize_algorithm(name)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _lengths(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError("lengths must be positive")
    return values


def _single_root(args) -> bool:
    return args.root_mode == "single"


def _open_out(path: str):
    return sys.stdout.buffer if path == "-" else open(path, "wb")


# decode workers get the model once per process
_WORKER_MODEL: Optional[LinearModel] = None


def _init_worker(model_path):
    global _WORKER_MODEL
    _WORKER_MODEL = LinearModel.load(model_path)


def _parse_worker(job):
    sentence, algorithm, single_root = job
    return parse(sentence, _WORKER_MODEL, algorithm, single_root)


def _decode_worker(job):
    scores, algorithm, single_root = job
    result = decode(scores, algorithm, single_root)
    return result.tree, result.score


def cmd_decode(args) -> int:
    doc = read_conllu_file(args.input)
    sents = [s.sentence for s in doc]
    single = _single_root(args)
    t0 = time.perf_counter()
    if args.scores:
        with open(args.scores, encoding="utf-8") as f:
            score_sets = list(read_scores(f))
        if len(score_sets) != len(sents):
            raise UsageError(f"{args.scores} has {len(score_sets)} score sets for "
                             f"{len(sents)} sentences")
        for k, (s, x) in enumerate(zip(score_sets, sents), start=1):
            if s.n != x.n:
                raise UsageError(f"sentence {k}: score set has n={s.n}, sentence has {x.n} words")
            s.require(args.algorithm)
        jobs = [(s, args.algorithm, single) for s in score_sets]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs) as ex:
                results = list(ex.map(_decode_worker, jobs))
        else:
            results = [_decode_worker(j) for j in jobs]
    else:
        jobs = [(x, args.algorithm, single) for x in sents]
        if args.jobs > 1:
            with ProcessPoolExecutor(args.jobs, initializer=_init_worker,
                                     initargs=(args.model,)) as ex:
                results = list(ex.map(_parse_worker, jobs))
        else:
            _init_worker(args.model)
            results = [_parse_worker(j) for j in jobs]
    elapsed = time.perf_counter() - t0
    preds = [tree for tree, _ in results]
    total = sum(score for _, score in results)
    data = write_conllu(doc, preds)
    out = _open_out(args.output)
    try:
        out.write(data)
    finally:
        if out is not sys.stdout.buffer:
            out.close()
    rate = len(sents) / elapsed if elapsed > 0 else float("inf")
    print(f"decoded {len(sents)} sentences in {elapsed:.3f}s ({rate:.1f} sentences/sec); "
          f"algorithm={args.algorithm} total_score={total:.6f}", file=sys.stderr)
    return EXIT_OK


def cmd_train(args) -> int:
    corpus = [s.sentence for s in read_conllu_file(args.train)]
    dev = [s.sentence for s in read_conllu_file(args.dev)] if args.dev else None
    cfg = TrainConfig(epochs=args.epochs, lr=args.lr, seed=args.seed, model=args.algorithm,
                      cost=CostConfig(), shuffle=not args.no_shuffle,
                      dev_every=args.dev_every, single_root=_single_root(args))
    model = train(corpus, dev, cfg, on_epoch=lambda st: print(st.line(), file=sys.stderr))
    model.save(args.model_out)
    print(f"wrote model to {args.model_out}", file=sys.stderr)
    return EXIT_OK


def cmd_eval(args) -> int:
    report = evaluate(read_conllu_file(args.gold), read_conllu_file(args.pred), args.punct)
    print(report.to_kv() if args.format == "kv" else report.to_text())
    return EXIT_OK


def cmd_oracle_check(args) -> int:
    if args.n_max > MAX_N:
        raise UsageError(f"--n-max must be at most {MAX_N} (brute force is exponential)")
    if args.n_max < 1 or args.trials < 1:
        raise UsageError("--n-max and --trials must be positive")
    algorithms = ALGORITHMS if args.algorithm == "all" else (args.algorithm,)
    single = _single_root(args)
    rng = np.random.default_rng(args.seed)
    failures = 0
    for alg in algorithms:
        for n in range(1, args.n_max + 1):
            dp_count = count_trees(alg, n, single)
            enum_count = sum(1 for _ in enumerate_projective(n, single))
            ok = dp_count == enum_count
            failures += not ok
            print(f"{'PASS' if ok else 'FAIL'} count algorithm={alg} n={n} "
                  f"dp={dp_count} enumerated={enum_count}")
            for trial in range(1, args.trials + 1):
                scores = ScoreSet.random(n, rng)
                dp = decode(scores, alg, single)
                ref = brute_force_argmax(scores, alg, single)
                tol = 1e-9 * max(1.0, abs(ref.score))
                attained = tree_score(dp.tree, scores, alg)
                ok = abs(dp.score - ref.score) <= tol and abs(attained - ref.score) <= tol
                failures += not ok
                print(f"{'PASS' if ok else 'FAIL'} algorithm={alg} n={n} trial={trial} "
                      f"dp={dp.score:.12g} brute={ref.score:.12g}")
    print(f"{'all checks passed' if not failures else f'{failures} checks failed'}",
          file=sys.stderr)
    return EXIT_OK if not failures else EXIT_CHECK


def cmd_bench(args) -> int:
    if args.repeats < 1 or args.min_time < 0:
        raise UsageError("--repeats must be positive and --min-time nonnegative")
    result = bench_mod.run(args.algorithm, args.lengths, args.repeats, args.seed,
                           _single_root(args), args.min_time)
    print(result.table())
    return EXIT_OK


def cmd_count(args) -> int:
    single = _single_root(args)
    print("n\tcount")
    for n in args.n:
        print(f"{n}\t{count_trees(args.algorithm, n, single)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="spandep",
                                 description="Projective dependency parsing with headed-span scores.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, algorithm_default=EISNER_2O_HEADSPLIT):
        p.add_argument("--algorithm", type=_algorithm, default=algorithm_default,
                       help=f"one of {', '.join(a.replace('_', '-') for a in ALGORITHMS)}")
        p.add_argument("--root-mode", choices=("single", "multi"), default="single")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)

    p = sub.add_parser("decode", help="parse a CoNLL-U file")
    common(p)
    p.add_argument("--input", required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--model", help="trained linear model")
    src.add_argument("--scores", help="JSON-lines score file, one line per sentence")
    p.add_argument("--output", default="-")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("train", help="train a linear model")
    common(p)
    p.add_argument("--train", required=True)
    p.add_argument("--dev")
    p.add_argument("--epochs", type=int, default=5)
    p.add_argument("--lr", type=float, default=0.1)
    p.add_argument("--dev-every", type=int, default=1)
    p.add_argument("--no-shuffle", action="store_true")
    p.add_argument("--model-out", required=True)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("eval", help="attachment scores of a prediction against gold")
    p.add_argument("--gold", required=True)
    p.add_argument("--pred", required=True)
    p.add_argument("--punct", choices=POLICIES, default=SCORE_ALL)
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("oracle-check", help="compare decoders with brute force")
    p.add_argument("--algorithm", default="all",
                   type=lambda s: s if s == "all" else _algorithm(s))
    p.add_argument("--root-mode", choices=("single", "multi"), default="single")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--n-max", type=int, default=6)
    p.add_argument("--trials", type=int, default=20)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("bench", help="time decoding and fit the complexity exponent")
    common(p, algorithm_default="eisner1o")
    p.add_argument("--lengths", type=_lengths, default=None)
    p.add_argument("--repeats", type=int, default=3, help="minimum timed calls per length")
    p.add_argument("--min-time", type=float, default=1.0,
                   help="keep timing each length until this many seconds have been spent")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("count", help="number of trees each algorithm can derive")
    common(p)
    p.add_argument("--n", type=int, nargs="+", default=list(range(1, 9)))
    p.set_defaults(func=cmd_count)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    logging.basicConfig(level=logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (UsageError, OSError, ConlluError, ScoreFileError, ValueError) as e:
        print(f"spandep {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE


__all__ = ["build_parser", "main"]
