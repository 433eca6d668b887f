"""Command-line front end.

Exit codes: 0 success, 1 file or parse errors, 2 usage errors, unknown
entities or unknown methods.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from pathlib import Path
from typing import Optional

from triplesim import __version__
from triplesim.baselines import MethodId, jaccard
from triplesim.engine import DEFAULT_CONFIG, SimilarityConfig
from triplesim.errors import TripleSimError, UnknownEntity
from triplesim.evaluation import (
    export_heatmap_pgm,
    export_matrix_csv,
    histogram,
    make_engine,
    pairwise_matrix,
    rank_top_k,
    run_evaluation,
)
from triplesim.rdf import Dataset, group_by_subject, parse_ntriples, serialize_ntriples
from triplesim.synth import synth_dataset
from triplesim.vectorizers import EmbeddingStore, generate_toy_embeddings, load_word2vec_text

log = logging.getLogger("triplesim")

CONFIG_ENV = "TRIPLESIM_CONFIG"
METHOD_NAMES = [m.value for m in MethodId]


class InputError(Exception):
    """Unreadable or unparseable input file (exit 1)."""


class UsageError(Exception):
    """Bad entity id, method or flag combination (exit 2)."""


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


class Run:
    """Tracks inputs and outputs of one command; writes the manifest or cleans up."""

    def __init__(self, command: str, seed: Optional[int] = None):
        self.command = command
        self.seed = seed
        self.config: Optional[dict] = None
        self.inputs: dict[str, str] = {}
        self.outputs: list[Path] = []
        self.started = time.perf_counter()

    def add_input(self, path: Optional[str]):
        if path:
            try:
                self.inputs[str(path)] = sha256_file(Path(path))
            except OSError as exc:
                raise InputError(f"cannot read {path}: {exc}") from exc

    def write(self, path, data: bytes):
        path = Path(path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            self.outputs.append(path)
            path.write_bytes(data)
        except OSError as exc:
            raise InputError(f"cannot write {path}: {exc}") from exc
        log.info("wrote %s", path)

    def cleanup(self):
        for path in self.outputs:
            try:
                if path.is_file():
                    path.unlink()
            except OSError:
                pass

    def write_manifest(self, path):
        manifest = {
            "command": self.command,
            "config": self.config,
            "inputs": self.inputs,
            "outputs": {str(p): sha256_file(p) for p in self.outputs},
            "seed": self.seed,
            "version": __version__,
            "runtime_seconds": time.perf_counter() - self.started,
        }
        self.write(path, (json.dumps(manifest, indent=2, sort_keys=True) + "\n").encode("utf-8"))


# loading


def load_dataset(path: str) -> Dataset:
    try:
        text = Path(path).read_bytes().decode("utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        return group_by_subject(parse_ntriples(text))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def load_embeddings(path: Optional[str]) -> Optional[EmbeddingStore]:
    if not path:
        return None
    try:
        with open(path, "rb") as fh:
            return load_word2vec_text(fh)
    except (OSError, UnicodeDecodeError, ValueError) as exc:
        raise InputError(f"{path}: {exc}") from exc


def resolve_config(args) -> tuple[SimilarityConfig, Optional[str]]:
    """Defaults, then the config file (--config or $TRIPLESIM_CONFIG), then flags."""
    path = getattr(args, "config", None) or os.environ.get(CONFIG_ENV) or None
    cfg = DEFAULT_CONFIG
    if path:
        try:
            cfg = SimilarityConfig.from_json(Path(path).read_text(encoding="utf-8"))
        except (OSError, ValueError, TypeError) as exc:
            raise InputError(f"config {path}: {exc}") from exc
    try:
        cfg = cfg.updated(
            alpha=args.alpha,
            beta=args.beta,
            gamma=args.gamma,
            clamp_negative_cosine=args.clamp,
            numeric_normalization=args.numeric,
            alignment=args.alignment,
            combine=args.combine,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return cfg, path


def parse_methods(text: str) -> list[MethodId]:
    methods = []
    for name in text.split(","):
        name = name.strip().lower()
        if name not in METHOD_NAMES:
            raise UsageError(f"unknown method {name!r}; choose from {', '.join(METHOD_NAMES)}")
        methods.append(MethodId(name))
    if len(set(methods)) != len(methods):
        raise UsageError("duplicate method in --methods")
    return methods


def require_embeddings(parser, methods, embeddings):
    if MethodId.N1 in methods and not embeddings:
        parser.error("method n1 requires --embeddings")


# commands


def cmd_sim(args, parser) -> int:
    method = MethodId(args.method)
    require_embeddings(parser, [method], args.embeddings)
    data = load_dataset(args.data)
    vec = load_embeddings(args.embeddings)
    cfg, _ = resolve_config(args)
    try:
        g1, g2 = data.get(args.a), data.get(args.b)
    except UnknownEntity as exc:
        raise UsageError(str(exc)) from exc
    engine = make_engine(method, data, vec, cfg)
    if engine is None:
        value, breakdown = jaccard(g1, g2), None
    else:
        score = engine.graphs(g1, g2)
        value, breakdown = score.value, score.breakdown
        if args.breakdown:
            alignment = engine.align(g1, g2)
            breakdown = dict(breakdown)
            breakdown["pairs"] = [
                {
                    "left": p.left.n3(),
                    "right": p.right.n3(),
                    "kind": p.kind.value,
                    "score": p.score,
                    "components": engine.triple(p.left, p.right).breakdown,
                }
                for p in alignment.pairs
            ]
            breakdown["unmatched"] = [
                {"triple": u.triple.n3(), "side": u.side, "kind": u.kind.value}
                for u in alignment.unmatched
            ]
    print(f"{value:.6f}")
    if args.breakdown:
        print(json.dumps(breakdown, indent=2, sort_keys=True))
    return 0


def cmd_matrix(args, parser) -> int:
    method = MethodId(args.method)
    require_embeddings(parser, [method], args.embeddings)
    run = Run("matrix")
    run.add_input(args.data)
    run.add_input(args.embeddings)
    data = load_dataset(args.data)
    vec = load_embeddings(args.embeddings)
    cfg, cfg_path = resolve_config(args)
    run.add_input(cfg_path)
    run.config = cfg.to_dict()
    log.info("scoring %d entities with %s", len(data), method.value)
    try:
        matrix = pairwise_matrix(data, method, vec, cfg, threads=args.threads)
        prefix = args.out_prefix
        run.write(f"{prefix}.csv", export_matrix_csv(matrix))
        run.write(f"{prefix}.pgm", export_heatmap_pgm(matrix))
        run.write(f"{prefix}.hist.csv", histogram(matrix, args.bin_width).to_csv())
        run.write_manifest(f"{prefix}.manifest.json")
    except BaseException:
        run.cleanup()
        raise
    return 0


def cmd_eval(args, parser) -> int:
    methods = parse_methods(args.methods)
    require_embeddings(parser, methods, args.embeddings)
    run = Run("eval")
    run.add_input(args.data)
    run.add_input(args.embeddings)
    data = load_dataset(args.data)
    vec = load_embeddings(args.embeddings)
    cfg, cfg_path = resolve_config(args)
    run.add_input(cfg_path)
    out = Path(args.out_dir)
    try:
        log.info("evaluating %s on %d entities", ",".join(m.value for m in methods), len(data))
        matrices, report = run_evaluation(data, methods, vec, cfg, args.threads, args.bin_width)
        run.config = report.config
        for m in matrices:
            name = m.method.value
            run.write(out / f"matrix_{name}.csv", export_matrix_csv(m))
            run.write(out / f"heatmap_{name}.pgm", export_heatmap_pgm(m))
            run.write(out / f"histogram_{name}.csv", report.histograms[name].to_csv())
        run.write(out / "report.json", report.to_json())
        run.write_manifest(out / "manifest.json")
    except BaseException:
        run.cleanup()
        raise
    return 0


def cmd_rank(args, parser) -> int:
    method = MethodId(args.method)
    require_embeddings(parser, [method], args.embeddings)
    if args.k <= 0:
        parser.error("--k must be positive")
    run = Run("rank")
    run.add_input(args.data)
    run.add_input(args.embeddings)
    data = load_dataset(args.data)
    vec = load_embeddings(args.embeddings)
    cfg, cfg_path = resolve_config(args)
    run.add_input(cfg_path)
    run.config = cfg.to_dict()
    try:
        ranked = rank_top_k(data, args.query, args.k, method, vec, cfg)
    except UnknownEntity as exc:
        raise UsageError(str(exc)) from exc
    lines = ["rank,id,score"] + [f"{i},{eid},{score:.6f}" for i, (eid, score) in enumerate(ranked, 1)]
    body = ("\n".join(lines) + "\n").encode("utf-8")
    if args.out:
        try:
            run.write(args.out, body)
            run.write_manifest(f"{args.out}.manifest.json")
        except BaseException:
            run.cleanup()
            raise
    else:
        sys.stdout.write(body.decode("utf-8"))
    return 0


def cmd_synth(args, parser) -> int:
    if args.entities < 1:
        parser.error("--entities must be at least 1")
    if args.dim < 2:
        parser.error("--dim must be at least 2")
    run = Run("synth", seed=args.seed)
    try:
        data, lexicon = synth_dataset(args.entities, args.seed)
        run.write(args.out, serialize_ntriples(data.triples()).encode("utf-8"))
        if args.emit_embeddings:
            store = generate_toy_embeddings(lexicon, args.dim, args.seed)
            run.write(args.emit_embeddings, store.to_word2vec_text())
        run.write_manifest(f"{args.out}.manifest.json")
    except BaseException:
        run.cleanup()
        raise
    return 0


# parser


def _add_similarity_flags(p: argparse.ArgumentParser, embeddings: bool = True):
    p.add_argument("--data", required=True, help="N-Triples file")
    if embeddings:
        p.add_argument("--embeddings", help="word2vec text file (optionally gzipped)")
    p.add_argument("--config", help=f"JSON config; defaults to ${CONFIG_ENV}")
    g = p.add_argument_group("config overrides (win over the config file)")
    g.add_argument("--alpha", type=float, help="subject weight")
    g.add_argument("--beta", type=float, help="predicate weight")
    g.add_argument("--gamma", type=float, help="object weight")
    g.add_argument("--clamp", dest="clamp", action="store_true", default=None, help="clamp negative cosines to 0")
    g.add_argument("--no-clamp", dest="clamp", action="store_false", help="keep raw cosines")
    g.add_argument("--numeric", choices=["literal", "range"])
    g.add_argument("--alignment", choices=["predicate", "best_match"])
    g.add_argument("--combine", choices=["literal", "normalized"])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="triplesim",
        description="Semantic similarity between RDF entity descriptions.",
        epilog="exit codes: 0 ok, 1 file/parse error, 2 usage error or unknown entity/method",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-q", "--quiet", action="store_true", help="suppress progress log")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sim", help="score one entity pair")
    _add_similarity_flags(p)
    p.add_argument("--a", required=True, help="first entity IRI")
    p.add_argument("--b", required=True, help="second entity IRI")
    p.add_argument("--method", required=True, choices=METHOD_NAMES)
    p.add_argument("--breakdown", action="store_true", help="print per-component JSON")
    p.set_defaults(func=cmd_sim, subparser=p)

    p = sub.add_parser("matrix", help="pairwise matrix for one method")
    _add_similarity_flags(p)
    p.add_argument("--method", required=True, choices=METHOD_NAMES)
    p.add_argument("--out-prefix", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--bin-width", type=float, default=0.05)
    p.set_defaults(func=cmd_matrix, subparser=p)

    p = sub.add_parser("eval", help="compare methods over all pairs")
    _add_similarity_flags(p)
    p.add_argument("--methods", required=True, help="comma-separated, e.g. n1,n2,sili,jaccard")
    p.add_argument("--out-dir", required=True)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--bin-width", type=float, default=0.05)
    p.set_defaults(func=cmd_eval, subparser=p)

    p = sub.add_parser("rank", help="top-k most similar entities")
    _add_similarity_flags(p)
    p.add_argument("--query", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--method", required=True, choices=METHOD_NAMES)
    p.add_argument("--out", help="CSV path; stdout when omitted")
    p.set_defaults(func=cmd_rank, subparser=p)

    p = sub.add_parser("synth", help="generate a synthetic vehicle dataset")
    p.add_argument("--entities", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--emit-embeddings", help="also write toy embeddings for the vocabulary")
    p.add_argument("--dim", type=int, default=50)
    p.set_defaults(func=cmd_synth, subparser=p)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.WARNING if args.quiet else logging.INFO,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    if getattr(args, "threads", 1) < 1:
        parser.error("--threads must be at least 1")
    try:
        return args.func(args, args.subparser)
    except InputError as exc:
        print(f"triplesim: error: {exc}", file=sys.stderr)
        return 1
    except UsageError as exc:
        print(f"triplesim: error: {exc}", file=sys.stderr)
        return 2
    except TripleSimError as exc:
        print(f"triplesim: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
