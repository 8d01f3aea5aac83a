"""Command-line interface: ``hyperwalk <command> [options]``.

Settings come from built-in defaults, then an optional ``--config`` file of
``key = value`` lines, then command-line flags. ``--print-config`` shows the
merged settings and exits.

Exit codes: 0 success, 2 invalid input or configuration, 3 a numerical
solver did not converge.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from . import io
from .algorithms import ALGORITHMS, ClusterOptions, run_algorithm
from .exceptions import FormatError, HypergraphError, NonConvergenceError
from .hypergraph import largest_component
from .ingestion import CountsMatrix, build_text_hypergraph, sparsify_hypergraph
from .metrics import agreement, av_conductance, av_ncut
from .representations import KINDS, core_matrix, representation, zhou_delta
from .walk import random_walk

EXIT_OK, EXIT_INVALID, EXIT_NONCONVERGED = 0, 2, 3


def _bool(s):
    s = str(s).strip().lower()
    if s in ("1", "true", "yes", "on"):
        return True
    if s in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def _opt_float(s):
    return None if str(s).strip().lower() in ("", "none") else float(s)


def _opt_str(s):
    return None if str(s).strip().lower() in ("", "none") else str(s).strip()


# name: (parser, default, help)
SETTINGS = {
    "input": (_opt_str, None, "input file (counts or hypergraph .mtx, or labels CSV for eval)"),
    "out": (str, "out", "output directory"),
    "algo": (str, "rdc-spec", "algorithm; comma-separated list for cuts and sweep"),
    "k": (int, 2, "number of clusters"),
    "seed": (int, 0, "base random seed"),
    "sparsity": (float, 1.0, "drop terms/edges covering more than this fraction of vertices"),
    "sparsities": (str, "", "comma-separated sparsity grid for cuts and sweep"),
    "seeds": (str, "", "comma-separated seed list for sweep"),
    "repeats": (int, 10, "clustering repetitions per sparsification in cuts"),
    "jobs": (int, 1, "worker processes for sweep"),
    "restarts": (int, 10, "k-means restarts"),
    "kmeans_max_iter": (int, 300, "k-means iteration cap"),
    "max_iter": (int, 500, "factorization iteration cap"),
    "tol": (float, 1e-5, "factorization relative-change tolerance"),
    "eig_tol": (float, 1e-8, "iterative eigensolver tolerance"),
    "walk_tol": (float, 1e-13, "stationary distribution residual tolerance"),
    "walk_max_iter": (int, 100_000, "power iteration cap"),
    "alpha": (_opt_float, None, "jsnmf weight of the symmetric coupling term"),
    "beta": (_opt_float, None, "joint factor coupling weight"),
    "gamma": (_opt_float, None, "weight of the vertex matrix term"),
    "jsnmf_init": (str, "symnmf", "jsnmf initialization: symnmf or random"),
    "sbc_vectors": (lambda s: None if str(s).lower() in ("", "none") else int(s), None,
                    "singular vectors used by sbc (default ceil(log2 k))"),
    "citation": (_opt_str, None, "symmetric vertex matrix (.mtx) for jnmf and jsnmf"),
    "truth": (_opt_str, None, "ground-truth labels CSV"),
    "terms": (_opt_str, None, "term ID file for ingest (default <stem>.terms.txt)"),
    "docs": (_opt_str, None, "document ID file for ingest (default <stem>.docs.txt)"),
    "log_tf": (_bool, False, "use 1 + ln(count) term frequency in ingest"),
    "kind": (str, "T", "representation for repr dump: " + ", ".join(KINDS)),
    "restrict": (_bool, False, "eval: score only vertices present in the predicted labels"),
}


def read_config(path):
    """Parse a ``key = value`` file; ``#`` starts a comment."""
    cfg = {}
    for n, line in enumerate(Path(path).read_text().splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{n}: expected 'key = value'")
        key, value = (t.strip() for t in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in SETTINGS:
            raise ValueError(f"{path}:{n}: unknown setting {key!r}")
        cfg[key] = SETTINGS[key][0](value)
    return cfg


def resolve_config(args):
    cfg = {k: v[1] for k, v in SETTINGS.items()}
    if args.config:
        cfg.update(read_config(args.config))
    for k in SETTINGS:
        v = getattr(args, k, None)
        if v is not None:
            cfg[k] = v
    return cfg


def format_config(cfg):
    return "".join(f"{k} = {'' if cfg[k] is None else cfg[k]}\n" for k in sorted(cfg))


def check_config(cfg):
    if cfg["k"] < 1:
        raise ValueError("k must be at least 1")
    if not 0 < cfg["sparsity"] <= 1:
        raise ValueError("sparsity must be in (0, 1]")
    for a in _list(cfg["algo"], str):
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")


def _list(s, typ):
    return [typ(t) for t in str(s).split(",") if t.strip()]


def _options(cfg, seed=None):
    fields = ClusterOptions.__dataclass_fields__
    kw = {k: cfg[k] for k in fields if k in cfg}
    if seed is not None:
        kw["seed"] = seed
    return ClusterOptions(**kw)


def _require(cfg, key, why):
    if not cfg[key]:
        raise ValueError(f"--{key.replace('_', '-')} is required {why}")
    return cfg[key]


def _outdir(cfg):
    out = Path(cfg["out"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _dump_json(path, obj):
    Path(path).write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _vertex_ids_path(mtx):
    p = Path(mtx)
    return p.with_name(p.stem + ".vertices.txt")


def load_hypergraph(path):
    """Read a hypergraph plus its vertex IDs (``<stem>.vertices.txt`` or indices)."""
    H = io.read_hypergraph(path)
    ids_path = _vertex_ids_path(path)
    ids = io.read_ids(ids_path) if ids_path.exists() else [str(i) for i in range(H.n_vertices)]
    if len(ids) != H.n_vertices:
        raise FormatError(f"{ids_path}: {len(ids)} IDs for {H.n_vertices} vertices")
    return H, ids


def _citation(cfg, algos, n):
    if not any(a in ("jnmf", "jsnmf") for a in algos):
        return None
    path = _require(cfg, "citation", "for jnmf and jsnmf")
    S = io.read_matrix_market(path)
    if S.shape != (n, n):
        raise ValueError(f"citation matrix has shape {S.shape}, expected {(n, n)}")
    if abs(S - S.T).max() > 1e-12 * max(1.0, abs(S).max()):
        raise ValueError("citation matrix must be symmetric")
    return S


def _truth_for(cfg, ids):
    truth_ids, truth = io.read_labels(_require(cfg, "truth", "for this command"))
    lookup = dict(zip(truth_ids, truth))
    missing = [i for i in ids if i not in lookup]
    if missing:
        raise ValueError(f"{len(missing)} vertices have no ground-truth label, e.g. {missing[:3]}")
    return np.array([lookup[i] for i in ids])


def _sparsified(H, s):
    if s >= 1.0:
        return largest_component(H)
    return sparsify_hypergraph(H, s)


# ---------------------------------------------------------------------------
# commands


def cmd_ingest(cfg):
    path = Path(_require(cfg, "input", "(counts .mtx)"))
    counts = io.read_matrix_market(path)
    terms = cfg["terms"] or path.with_name(path.stem + ".terms.txt")
    docs = cfg["docs"] or path.with_name(path.stem + ".docs.txt")
    C = CountsMatrix(
        counts,
        io.read_ids(terms) if Path(terms).exists() else None,
        io.read_ids(docs) if Path(docs).exists() else None,
    )
    th = build_text_hypergraph(C, cfg["sparsity"], log_tf=cfg["log_tf"])
    out = _outdir(cfg)
    io.write_hypergraph(out / "hypergraph.mtx", th.hypergraph)
    io.write_ids(out / "hypergraph.vertices.txt", th.doc_ids)
    io.write_ids(out / "hypergraph.edges.txt", th.term_ids)
    _dump_json(out / "report.json", th.report)
    print(json.dumps(th.report, sort_keys=True))


def cmd_cluster(cfg):
    H, ids = load_hypergraph(_require(cfg, "input", "(hypergraph .mtx)"))
    algo = cfg["algo"]
    kept = np.arange(H.n_vertices)
    if cfg["sparsity"] < 1.0:
        H, kept = sparsify_hypergraph(H, cfg["sparsity"])
    S = _citation(cfg, [algo], len(ids))
    if S is not None:
        S = S[kept][:, kept]
    run = run_algorithm(algo, H, cfg["k"], _options(cfg), S=S)
    out = _outdir(cfg)
    io.write_labels(out / "labels.csv", run.labels, [ids[i] for i in kept])
    diag = dict(run.diagnostics, algorithm=algo, k=cfg["k"], seed=cfg["seed"],
                vertices=H.n_vertices, hyperedges=H.n_edges)
    _dump_json(out / "diagnostics.json", diag)


def cmd_eval(cfg):
    pred_ids, pred = io.read_labels(_require(cfg, "input", "(predicted labels CSV)"))
    truth_ids, truth = io.read_labels(_require(cfg, "truth", "(ground-truth labels CSV)"))
    if not cfg["restrict"] and len(pred_ids) != len(truth_ids):
        raise ValueError(
            f"label files differ in length: {len(pred_ids)} vs {len(truth_ids)} "
            "(use --restrict to score the predicted vertices only)"
        )
    lookup = dict(zip(truth_ids, truth))
    missing = [i for i in pred_ids if i not in lookup]
    if missing:
        raise ValueError(f"{len(missing)} predicted vertices missing from truth, e.g. {missing[:3]}")
    scores = agreement(pred, np.array([lookup[i] for i in pred_ids])).as_dict()
    line = json.dumps(scores, sort_keys=True)
    print(line)
    if cfg["out"] != SETTINGS["out"][1]:
        _outdir(cfg).joinpath("scores.json").write_text(line + "\n")


def _cut_rows(H, algos, k, cfg, seeds, S_full, kept):
    """Cluster ``H`` with every algorithm and seed; score on both T and Delta."""
    walk = random_walk(H, tol=cfg["walk_tol"], max_iter=cfg["walk_max_iter"])
    mats = {"T": core_matrix(walk.P, walk.pi), "delta": zhou_delta(H)}
    S = None if S_full is None else S_full[kept][:, kept]
    labelings = {}
    for a in algos:
        for seed in seeds:
            run = run_algorithm(a, H, k, _options(cfg, seed), S=S, walk=walk)
            labelings[a, seed] = run.labels
    return mats, labelings


def cmd_cuts(cfg):
    H0, ids = load_hypergraph(_require(cfg, "input", "(hypergraph .mtx)"))
    algos = _list(cfg["algo"], str)
    sparsities = _list(cfg["sparsities"], float) or [cfg["sparsity"]]
    if cfg["repeats"] < 1:
        raise ValueError("repeats must be at least 1")
    seeds = [cfg["seed"] + r for r in range(cfg["repeats"])]
    S_full = _citation(cfg, algos, H0.n_vertices)
    out = _outdir(cfg)
    (out / "labels").mkdir(exist_ok=True)
    (out / "matrices").mkdir(exist_ok=True)
    rows = []
    for s in sparsities:
        H, kept = _sparsified(H0, s)
        mats, labelings = _cut_rows(H, algos, cfg["k"], cfg, seeds, S_full, kept)
        vids = [ids[i] for i in kept]
        for name, M in mats.items():
            io.write_matrix_market(out / "matrices" / f"{name}_s{s}.mtx", M)
        io.write_ids(out / "matrices" / f"vertices_s{s}.txt", vids)
        for (a, seed), labels in labelings.items():
            io.write_labels(out / "labels" / f"{a}_s{s}_seed{seed}.csv", labels, vids)
        for a in algos:
            for name, M in mats.items():
                nc = [av_ncut(M, labelings[a, sd]) for sd in seeds]
                co = [av_conductance(M, labelings[a, sd]) for sd in seeds]
                rows.append({"algorithm": a, "representation": name, "sparsity": s,
                             "av_ncut": float(np.mean(nc)), "av_cond": float(np.mean(co))})
    _write_csv(out / "cuts.csv", rows)
    best = []
    for a in algos:
        for name in ("T", "delta"):
            cell = [r for r in rows if r["algorithm"] == a and r["representation"] == name]
            bn = min(cell, key=lambda r: r["av_ncut"])
            bc = min(cell, key=lambda r: r["av_cond"])
            best.append({"algorithm": a, "representation": name,
                         "av_ncut": bn["av_ncut"], "av_ncut_sparsity": bn["sparsity"],
                         "av_cond": bc["av_cond"], "av_cond_sparsity": bc["sparsity"]})
    _write_csv(out / "cuts_best.csv", best)
    print(f"{'algorithm':<10} {'repr':<6} {'Av-Ncut':>12} {'Av-Cond':>12}")
    for b in best:
        print(f"{b['algorithm']:<10} {b['representation']:<6} "
              f"{b['av_ncut']:>12.6g} {b['av_cond']:>12.6g}")


def _write_csv(path, rows):
    if not rows:
        raise ValueError("nothing to write")
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        for r in rows:
            w.writerow({k: repr(v) if isinstance(v, float) else v for k, v in r.items()})


def _sweep_cell(args):
    algo, H, k, opts, S, truth = args
    run = run_algorithm(algo, H, k, opts, S=S)
    return agreement(run.labels, truth).as_dict()


def cmd_sweep(cfg):
    H0, ids = load_hypergraph(_require(cfg, "input", "(hypergraph .mtx)"))
    truth_all = _truth_for(cfg, ids)
    algos = _list(cfg["algo"], str)
    sparsities = _list(cfg["sparsities"], float) or [cfg["sparsity"]]
    seeds = _list(cfg["seeds"], int) or [cfg["seed"]]
    if not sparsities or not seeds:
        raise ValueError("empty sweep grid")
    S_full = _citation(cfg, algos, H0.n_vertices)
    subs = {s: _sparsified(H0, s) for s in sparsities}
    cells, tasks = [], []
    for a in algos:
        for s in sparsities:
            H, kept = subs[s]
            S = None if S_full is None else S_full[kept][:, kept]
            for seed in seeds:
                cells.append({"algorithm": a, "sparsity": s, "seed": seed,
                              "vertices": H.n_vertices, "hyperedges": H.n_edges})
                tasks.append((a, H, cfg["k"], _options(cfg, seed), S, truth_all[kept]))
    if cfg["jobs"] > 1:
        with ProcessPoolExecutor(cfg["jobs"]) as pool:
            scores = list(pool.map(_sweep_cell, tasks))
    else:
        scores = [_sweep_cell(t) for t in tasks]
    rows = [dict(c, **sc) for c, sc in zip(cells, scores)]
    out = _outdir(cfg)
    _write_csv(out / "sweep.csv", rows)
    best = {}
    for r in rows:
        if r["algorithm"] not in best or r["nmi"] > best[r["algorithm"]]["nmi"]:
            best[r["algorithm"]] = r
    _dump_json(out / "best.json", best)
    for a, r in best.items():
        print(f"{a}: nmi={r['nmi']:.4f} avg_f1={r['avg_f1']:.4f} jaccard={r['jaccard']:.4f} "
              f"(sparsity={r['sparsity']}, seed={r['seed']})")


def cmd_repr_dump(cfg):
    H, _ = load_hypergraph(_require(cfg, "input", "(hypergraph .mtx)"))
    kind = cfg["kind"]
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; choose from {', '.join(KINDS)}")
    walk = None
    if kind not in ("delta", "crwc"):
        walk = random_walk(H, tol=cfg["walk_tol"], max_iter=cfg["walk_max_iter"])
    rep = representation(kind, H, walk)
    out = _outdir(cfg)
    io.write_matrix_market(out / f"{kind}.mtx", rep.matrix)
    if rep.normalizer is not None:
        io.write_vector(out / f"{kind}.normalizer.txt", rep.normalizer)


def cmd_walk_dump(cfg):
    H, _ = load_hypergraph(_require(cfg, "input", "(hypergraph .mtx)"))
    walk = random_walk(H, tol=cfg["walk_tol"], max_iter=cfg["walk_max_iter"])
    out = _outdir(cfg)
    io.write_matrix_market(out / "P.mtx", walk.P)
    io.write_vector(out / "pi.txt", walk.pi)
    _dump_json(out / "walk.json", {"residual": walk.residual, "iterations": walk.iterations})


# ---------------------------------------------------------------------------
# argument parsing


def _add_common(p):
    p.add_argument("--config", help="key = value settings file")
    p.add_argument("--print-config", action="store_true",
                   help="print the merged settings and exit")
    for key, (typ, default, help_) in SETTINGS.items():
        flag = "--" + key.replace("_", "-")
        if typ is _bool:
            p.add_argument(flag, dest=key, nargs="?", const=True, type=_bool, default=None,
                           help=help_)
        else:
            p.add_argument(flag, dest=key, type=typ, default=None,
                           help=f"{help_} (default {default})")


COMMANDS = {
    "ingest": cmd_ingest,
    "cluster": cmd_cluster,
    "eval": cmd_eval,
    "cuts": cmd_cuts,
    "sweep": cmd_sweep,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="hyperwalk", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in COMMANDS.items():
        p = sub.add_parser(name, help=fn.__name__.replace("cmd_", ""))
        _add_common(p)
        p.set_defaults(func=fn)
    for group, action, fn in (("repr", "dump", cmd_repr_dump), ("walk", "dump", cmd_walk_dump)):
        g = sub.add_parser(group).add_subparsers(dest="action", required=True)
        p = g.add_parser(action)
        _add_common(p)
        p.set_defaults(func=fn)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        if args.print_config:
            sys.stdout.write(format_config(cfg))
            return EXIT_OK
        check_config(cfg)
        args.func(cfg)
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGED
    except (HypergraphError, FormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
