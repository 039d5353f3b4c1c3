"""
Command-line front end.

Every subcommand writes a single artifact (JSON or CSV) to ``--out`` or to
stdout. Exit codes: 0 on success, 2 on invalid input, 3 when the requested
computation is mathematically impossible (for instance ``--lambda 0`` with a
vanishing ambiguity). Errors are reported on stderr as one line::

    tfloc: error=<CODE> <message>

The environment variable ``TFLOC_SEED`` overrides ``--seed``.
"""

import argparse
import csv
import io
import os
import sys
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import serialize
from .berezin import berezin_transform, injectivity_report
from .exceptions import TFLocError, VanishingAmbiguityError
from .oper import (dft_operator, localization_operator, parse_random_class,
                   random_operator, to_spreading)
from .quantize import (approximation_report, berezin_bound_check, density_sweep,
                       fourier_gap_experiment)
from .tfcore import (cross_ambiguity, parse_window_spec, stft, tf_shift_matrix,
                     translate_span_rank, window_gallery)

COMMANDS = ("stft", "ambiguity", "berezin", "localize", "spreading", "inject-report",
            "solve", "density-sweep", "fourier-gap", "bound-check", "translate-rank")

DEFAULT_PAIRS = "gauss:1.0/gauss:1.0,delta/gauss:1.0,gauss:1.0/gauss:0.5,zeromaker/zeromaker"


class ConfigError(TFLocError, ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    n: int = 8
    window1: str = "gauss:1.0"
    window2: str = "gauss:1.0"
    input: str = None
    symbol: str = None
    target: str = "dft"
    lam: float = 0.0
    pseudo_inverse: bool = False
    clip_level: float = 1.0
    seed: int = 0
    p: float = 2.0
    tau: float = 1e-12
    n_list: str = "8,16,32,64"
    pairs: str = DEFAULT_PAIRS
    targets: int = 3
    out: str = None
    format: str = None

    @classmethod
    def from_dict(cls, d):
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if not isinstance(self.n, int) or self.n < 2:
            raise ConfigError("n must be an integer >= 2")
        for spec in (self.window1, self.window2):
            parse_window_spec(spec)
        if not self.lam >= 0:
            raise ConfigError("lambda must be nonnegative")
        if not self.clip_level > 0:
            raise ConfigError("clip level must be positive")
        if not self.p >= 1:
            raise ConfigError("p must lie in [1, inf]")
        if not self.tau >= 0:
            raise ConfigError("tau must be nonnegative")
        if self.targets < 1:
            raise ConfigError("targets must be positive")
        if self.format not in (None, "json", "csv"):
            raise ConfigError("format must be json or csv")
        for path in (self.input, self.symbol):
            if path is not None and not os.path.isfile(path):
                raise ConfigError(f"no such file: {path}")
        if self.command == "stft" and self.input is None:
            raise ConfigError("stft needs --input")
        if self.command == "localize" and self.symbol is None:
            raise ConfigError("localize needs --symbol")
        self.parsed_n_list()
        self.parsed_pairs()
        parse_target(self.target)

    def parsed_n_list(self):
        try:
            values = [int(v) for v in self.n_list.split(",") if v.strip()]
        except ValueError:
            raise ConfigError(f"bad --n-list {self.n_list!r}") from None
        if not values or min(values) < 2:
            raise ConfigError("--n-list needs dimensions >= 2")
        return values

    def parsed_pairs(self):
        pairs = []
        for item in self.pairs.split(","):
            w1, sep, w2 = item.strip().partition("/")
            if not sep:
                raise ConfigError(f"window pair {item!r} must look like W1/W2")
            parse_window_spec(w1)
            parse_window_spec(w2)
            pairs.append((w1, w2))
        return pairs


def parse_target(spec):
    """Parse ``dft``, ``identity``, ``shift:X,W``, ``random:CLASS`` or ``file:PATH``."""
    kind, _, arg = spec.partition(":")
    if kind in ("dft", "identity") and not arg:
        return kind, None
    if kind == "shift":
        try:
            x, w = (int(v) for v in arg.split(","))
        except ValueError:
            raise ConfigError(f"bad shift target {spec!r}") from None
        return kind, (x, w)
    if kind == "random":
        return kind, parse_random_class(arg)
    if kind == "file" and arg:
        return kind, arg
    raise ConfigError(f"unknown target {spec!r}")


def build_target(spec, n, seed):
    kind, arg = parse_target(spec)
    if kind == "dft":
        return dft_operator(n)
    if kind == "identity":
        return np.eye(n, dtype=complex)
    if kind == "shift":
        return tf_shift_matrix(arg, n)
    if kind == "random":
        cls, rank = arg
        return random_operator(seed, n, cls, rank)
    T = serialize.load_operator(arg)
    if T.shape[0] != n:
        raise ConfigError(f"target file has dimension {T.shape[0]}, expected {n}")
    return T


def _fmt(v):
    if isinstance(v, (bool, np.bool_)):
        return "true" if v else "false"
    if isinstance(v, (float, np.floating)):
        return "%.17g" % v
    return str(v)


def _csv(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _grid_csv(F):
    n = F.shape[0]
    rows = [(x, w, F[x, w].real, F[x, w].imag, abs(F[x, w])) for x in range(n) for w in range(n)]
    return _csv(["x", "omega", "re", "im", "abs"], rows)


def _grid_artifact(F, fmt):
    return _grid_csv(F) if fmt == "csv" else serialize.dumps(serialize.grid_to_json(F))


def _dict_artifact(d, fmt):
    if fmt == "csv":
        keys = sorted(k for k, v in d.items() if not isinstance(v, (list, dict)))
        return _csv(keys, [[d[k] for k in keys]])
    return serialize.dumps(d)


def execute(cfg):
    """Run a validated config and return the artifact text."""
    n = cfg.n
    fmt = cfg.format
    win1 = lambda: window_gallery(cfg.window1, n)  # noqa: E731
    win2 = lambda: window_gallery(cfg.window2, n)  # noqa: E731
    c = cfg.command
    if c == "stft":
        f = serialize.load_signal(cfg.input)
        return _grid_artifact(stft(window_gallery(cfg.window1, f.shape[0]), f), fmt)
    if c == "ambiguity":
        return _grid_artifact(cross_ambiguity(win1(), win2()), fmt)
    if c == "berezin":
        T = build_target(cfg.target, n, cfg.seed)
        return _grid_artifact(berezin_transform(T, win1(), win2()), fmt)
    if c == "localize":
        a = serialize.load_grid(cfg.symbol)
        A = localization_operator(a, window_gallery(cfg.window1, a.shape[0]),
                                  window_gallery(cfg.window2, a.shape[0]))
        if fmt == "csv":
            rows = [(i, j, A[i, j].real, A[i, j].imag) for i in range(len(A)) for j in range(len(A))]
            return _csv(["row", "col", "re", "im"], rows)
        return serialize.dumps(serialize.operator_to_json(A))
    if c == "spreading":
        T = build_target(cfg.target, n, cfg.seed)
        return _grid_artifact(to_spreading(T), fmt)
    if c == "inject-report":
        rep = injectivity_report(win1(), win2(), cfg.window1, cfg.window2, tau=cfg.tau)
        return _dict_artifact(rep.to_dict(), fmt)
    if c == "solve":
        T = build_target(cfg.target, n, cfg.seed)
        rep = approximation_report(T, win1(), win2(), cfg.lam,
                                   pseudo_inverse=cfg.pseudo_inverse, tau=cfg.tau)
        d = asdict(rep)
        d["lambda"] = d.pop("lam")
        d["symbol"] = serialize.grid_to_json(rep.symbol)
        return _dict_artifact(d, fmt)
    if c == "density-sweep":
        rows = density_sweep(cfg.parsed_pairs(), cfg.parsed_n_list(), cfg.seed,
                             cfg.targets, tau=cfg.tau)
        return _table_artifact(rows, fmt)
    if c == "fourier-gap":
        rows = fourier_gap_experiment(cfg.parsed_n_list(), cfg.window1, cfg.clip_level,
                                      tau=cfg.tau)
        return _table_artifact(rows, fmt)
    if c == "bound-check":
        T = build_target(cfg.target, n, cfg.seed)
        res = berezin_bound_check(T, win1(), win2(), cfg.p)
        return _dict_artifact({"n": n, "p": cfg.p, **res._asdict()}, fmt)
    if c == "translate-rank":
        f = serialize.load_signal(cfg.input) if cfg.input else win1()
        return _dict_artifact({"n": int(f.shape[0]), "rank": translate_span_rank(f)}, fmt)
    raise ConfigError(f"unknown command {c!r}")


def _table_artifact(rows, fmt):
    if fmt == "json":
        return serialize.dumps([asdict(r) for r in rows])
    header = [f.name for f in fields(rows[0])] if rows else []
    return _csv(header, [[getattr(r, h) for h in header] for r in rows])


def run(config):
    """Validate and execute a :class:`RunConfig` (or a dict of its fields).

    Returns the process exit code; the artifact goes to ``config.out`` or
    stdout.
    """
    try:
        cfg = config if isinstance(config, RunConfig) else RunConfig.from_dict(config)
        env_seed = os.environ.get("TFLOC_SEED")
        if env_seed is not None:
            try:
                cfg.seed = int(env_seed)
            except ValueError:
                raise ConfigError(f"TFLOC_SEED must be an integer, got {env_seed!r}") from None
        cfg.validate()
        text = execute(cfg)
    except VanishingAmbiguityError as exc:
        msg = str(exc).splitlines()[0]
        print(f"tfloc: error=VANISHING_AMBIGUITY zeros={len(exc.zero_set)} {msg}", file=sys.stderr)
        return 3
    except ArithmeticError as exc:
        print(f"tfloc: error=MATH {exc}", file=sys.stderr)
        return 3
    except (TFLocError, ValueError) as exc:
        print(f"tfloc: error=VALIDATION {str(exc).splitlines()[0]}", file=sys.stderr)
        return 2
    if not text.endswith("\n"):
        text += "\n"
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"tfloc: error=VALIDATION {message}", file=sys.stderr)
        sys.exit(2)


def build_parser():
    parser = _Parser(prog="tfloc", description=__doc__.split("\n\n")[0].strip(),
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, windows=True):
        p.add_argument("--n", type=int, default=8, help="dimension N (default: 8)")
        if windows:
            p.add_argument("--window1", default="gauss:1.0",
                           help="analysis window: delta | rect:L | gauss:SIGMA | zeromaker | "
                                "file:PATH (default: gauss:1.0)")
            p.add_argument("--window2", default="gauss:1.0",
                           help="synthesis window, same grammar (default: gauss:1.0)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for random targets; TFLOC_SEED overrides (default: 0)")
        p.add_argument("--tau", type=float, default=1e-12,
                       help="relative zero threshold (default: 1e-12)")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default=None,
                       help="artifact format (default: json, csv for tables)")

    def target(p):
        p.add_argument("--target", default="dft",
                       help="dft | identity | shift:X,W | random:CLASS | file:PATH where "
                            "CLASS is ginibre, hermitian or rank-K (default: dft)")

    p = sub.add_parser("stft", help="STFT of a signal; grid JSON, CSV columns x,omega,re,im,abs")
    common(p)
    p.add_argument("--input", required=True, help="Signal JSON file")

    p = sub.add_parser("ambiguity", help="cross-ambiguity V_window1 window2 as a grid")
    common(p)

    p = sub.add_parser("berezin", help="Berezin transform of a target operator")
    common(p)
    target(p)

    p = sub.add_parser("localize", help="localization operator of a symbol grid; "
                                        "CSV columns row,col,re,im")
    common(p)
    p.add_argument("--symbol", required=True, help="GridFunction JSON file")

    p = sub.add_parser("spreading", help="spreading coefficients of a target operator")
    common(p)
    target(p)

    p = sub.add_parser("inject-report", help="ambiguity zero set versus quantization rank")
    common(p)

    p = sub.add_parser("solve", help="recover a symbol approximating a target operator")
    common(p)
    target(p)
    p.add_argument("--lambda", dest="lam", type=float, default=0.0,
                   help="Tikhonov parameter (default: 0)")
    p.add_argument("--pseudo-inverse", action="store_true",
                   help="at lambda 0, drop coefficients on the ambiguity zero set "
                        "instead of failing")

    p = sub.add_parser("density-sweep",
                       help="CSV columns n,window1,window2,injective,zero_count,rank,"
                            "rank_law_holds,max_residual,witness_residual")
    common(p, windows=False)
    p.add_argument("--n-list", default="4,8,16", help="comma-separated dimensions (default: 4,8,16)")
    p.add_argument("--pairs", default=DEFAULT_PAIRS,
                   help=f"comma-separated W1/W2 window pairs (default: {DEFAULT_PAIRS})")
    p.add_argument("--targets", type=int, default=3, help="random targets per cell (default: 3)")

    p = sub.add_parser("fourier-gap",
                       help="CSV columns n,zero_count,min_abs_ambiguity,symbol_sup,residual_hs,"
                            "residual_op,clip_level,clipped_residual_op")
    common(p)
    p.add_argument("--n-list", default="8,16,32,64",
                   help="comma-separated dimensions (default: 8,16,32,64)")
    p.add_argument("--clip-level", type=float, default=1.0, help="symbol clip level (default: 1)")

    p = sub.add_parser("bound-check", help="Berezin norm bound for one operator and exponent")
    common(p)
    target(p)
    p.add_argument("--p", type=float, default=2.0, help="exponent, inf allowed (default: 2)")

    p = sub.add_parser("translate-rank", help="rank of the span of cyclic translates")
    common(p)
    p.add_argument("--input", default=None, help="Signal JSON file (default: --window1)")
    return parser


def main(argv=None):
    args = vars(build_parser().parse_args(argv))
    if args["command"] in ("density-sweep", "fourier-gap") and args["format"] is None:
        args["format"] = "csv"
    if args["command"] == "fourier-gap":
        args.pop("window2")
    return run(RunConfig.from_dict(args))


if __name__ == "__main__":
    sys.exit(main())
