"""Command line interface.

Subcommands: lift, verify, check, stable, realize1d, eval.  Results go to
stdout as deterministic JSON (reports carry no timestamps and identical
inputs with identical seeds produce byte-identical bytes); a one-line
human summary goes to stderr.

Exit codes:
  0  pass
  1  a check failed and a witness is in the report
  2  unreadable input or bad arguments
  3  precondition violated (wrong frame, wrong shape)
  4  an exact identity failed to hold
  5  a class membership check failed
  6  only inconclusive evidence (e.g. a stability hunt found no zero)
  7  evaluation hit a denominator zero
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from .checks import (
    DEFAULT_SEED,
    SampleConfig,
    SingularCayley,
    Tolerances,
    check_cayley_inner,
    check_nevanlinna,
    check_positive_real,
    check_real_stable,
    check_stable,
)
from .fileio import (
    FileFormatError,
    dumps_deterministic,
    function_to_dict,
    load_function,
)
from .lift import lift, restrict_at_i
from .poly import DimensionMismatch
from .rational import NearPole, identity_equal
from .realization import (
    NotOneVariable,
    NotScalar,
    ReconstructionMismatch,
    SplitFailed,
    realize_1d,
)

__all__ = ["main"]

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_FORMAT = 2
EXIT_PRECONDITION = 3
EXIT_IDENTITY = 4
EXIT_CLASS = 5
EXIT_INCONCLUSIVE = 6
EXIT_NEAR_POLE = 7


def _resolve_seed(arg_seed):
    """--seed wins, then DARLINGTON_SEED, then the default; 0 means OS entropy."""
    seed = arg_seed
    if seed is None:
        env = os.environ.get("DARLINGTON_SEED", "")
        if env:
            try:
                seed = int(env)
            except ValueError:
                raise FileFormatError("DARLINGTON_SEED must be an integer, got %r" % env)
        else:
            seed = DEFAULT_SEED
    if seed == 0:
        return int(np.random.SeedSequence().entropy % (2**63))
    return int(seed)


def _config(args, seed):
    return SampleConfig(
        seed=seed,
        count=args.samples,
        box_radius=args.box_radius,
        imag_floor=args.imag_floor,
        include_edge_points=not args.no_edge_points,
    )


def _tolerances(args):
    return Tolerances(
        psd_slack=args.psd_slack,
        reality_slack=args.reality_slack,
        den_floor=args.den_floor,
    )


def _emit(args, payload):
    text = dumps_deterministic(payload)
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _say(msg):
    print(msg, file=sys.stderr)


def _report(command, inputs, seed, tolerances, verdicts, witnesses):
    return {
        "command": command,
        "inputs": inputs,
        "seed": seed,
        "tolerances": tolerances,
        "verdicts": verdicts,
        "witnesses": witnesses,
    }


def _describe_inputs(args, f, frame):
    out = {"function": args.function, "d": f.d, "m": f.m, "frame": frame}
    if hasattr(args, "samples"):
        out.update(
            samples=args.samples,
            box_radius=args.box_radius,
            imag_floor=args.imag_floor,
            edge_points=not args.no_edge_points,
        )
    return out


def _evidence(rep):
    return {
        "verdict": rep.verdict,
        "worst_margin": rep.to_dict()["worst_margin"],
        "samples_used": rep.samples_used,
        "witness": rep.witness,
    }


# ----------------------------------------------------------------------
# subcommands


def _cmd_lift(args):
    f, frame = load_function(args.function)
    if frame != "nevanlinna":
        _say("lift: input frame is %r; lift needs the nevanlinna frame" % frame)
        return EXIT_PRECONDITION
    lifted = lift(f).lifted
    _emit(args, function_to_dict(lifted, "nevanlinna"))
    _say("lift: %d -> %d variables, m=%d" % (f.d, lifted.d, lifted.m))
    return EXIT_OK


def _cmd_verify(args):
    f, frame = load_function(args.function)
    if frame != "nevanlinna":
        _say("verify: input frame is %r; verify needs the nevanlinna frame" % frame)
        return EXIT_PRECONDITION
    seed = _resolve_seed(args.seed)
    cfg, tols = _config(args, seed), _tolerances(args)

    result = lift(f)
    back = restrict_at_i(result.lifted)
    identity_ok = identity_equal(back, result.input)
    structured = result.pieces.is_structured()
    rep_in = check_nevanlinna(f, cfg, tols)
    rep_lift = check_cayley_inner(result.lifted, cfg, tols)

    verdicts = {
        "identity-at-i": "pass" if identity_ok else "fail",
        "pieces-structured": "pass" if structured else "fail",
        "input-nevanlinna": rep_in.verdict,
        "lift-cayley-inner": rep_lift.verdict,
    }
    witnesses = {
        "input-nevanlinna": _evidence(rep_in),
        "lift-cayley-inner": _evidence(rep_lift),
    }
    payload = _report("verify", _describe_inputs(args, f, frame), seed,
                      tols.to_dict(), verdicts, witnesses)
    _emit(args, payload)
    _say("verify: " + ", ".join("%s=%s" % kv for kv in sorted(verdicts.items())))

    if "fail" in (rep_in.verdict, rep_lift.verdict):
        return EXIT_CLASS
    if not identity_ok or not structured:
        return EXIT_IDENTITY
    if "inconclusive" in (rep_in.verdict, rep_lift.verdict):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


_MEMBERSHIP = {
    "nevanlinna": check_nevanlinna,
    "cayley-inner": check_cayley_inner,
    "positive-real": check_positive_real,
}


def _cmd_check(args):
    f, frame = load_function(args.function)
    seed = _resolve_seed(args.seed)
    cfg, tols = _config(args, seed), _tolerances(args)
    rep = _MEMBERSHIP[args.membership](f, cfg, tols)
    inputs = _describe_inputs(args, f, frame)
    inputs["class"] = args.membership
    payload = _report("check", inputs, seed, tols.to_dict(),
                      {args.membership: rep.verdict}, {args.membership: _evidence(rep)})
    _emit(args, payload)
    _say("check %s: %s (worst margin %s)" % (args.membership, rep.verdict,
                                             rep.to_dict()["worst_margin"]))
    if rep.verdict == "fail":
        return EXIT_FAIL
    if rep.verdict == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_stable(args):
    f, frame = load_function(args.function)
    if f.m != 1:
        raise FileFormatError("stable needs a scalar polynomial (m=1), got m=%d" % f.m)
    if f.den.total_degree() != 0:
        raise FileFormatError("stable needs a polynomial: den_terms must be a nonzero constant")
    p = f.num
    seed = _resolve_seed(args.seed)
    cfg, tols = _config(args, seed), _tolerances(args)
    rep = (check_real_stable if args.real else check_stable)(p, cfg, tols)
    inputs = _describe_inputs(args, f, frame)
    inputs["real"] = bool(args.real)
    payload = _report("stable", inputs, seed, tols.to_dict(),
                      {rep.check: rep.verdict}, {rep.check: _evidence(rep)})
    _emit(args, payload)
    _say("stable: %s (worst margin %s)" % (rep.verdict, rep.to_dict()["worst_margin"]))
    if rep.verdict == "fail":
        return EXIT_FAIL
    return EXIT_INCONCLUSIVE


def _cmd_realize1d(args):
    f, frame = load_function(args.function)
    if frame != "positive-real":
        _say("realize1d: input frame is %r; the realization needs positive-real" % frame)
        return EXIT_PRECONDITION
    seed = _resolve_seed(args.seed)
    cfg, tols = _config(args, seed), _tolerances(args)
    real = realize_1d(f)
    rep_block = check_positive_real(real.block(), cfg, tols)

    def fd(g):
        return None if g is None else function_to_dict(g, "positive-real")

    verdicts = {"reconstruction": "pass", "block-positive-real": rep_block.verdict}
    witnesses = {
        "realization": {
            "variant": real.variant,
            "kappa": real.kappa,
            "r": real.r,
            "a": fd(real.a),
            "b": fd(real.b),
            "c": fd(real.c),
            "d": fd(real.d),
            "residual": fd(real.residual),
        },
        "block-positive-real": _evidence(rep_block),
    }
    inputs = _describe_inputs(args, f, frame)
    payload = _report("realize1d", inputs, seed, tols.to_dict(), verdicts, witnesses)
    _emit(args, payload)
    _say("realize1d: variant=%s block-positive-real=%s" % (real.variant, rep_block.verdict))
    if rep_block.verdict == "fail":
        return EXIT_CLASS
    if rep_block.verdict == "inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_eval(args):
    f, frame = load_function(args.function)
    try:
        point = [complex(tok) for tok in args.at.split(",")]
    except ValueError:
        raise FileFormatError("--at expects comma-separated complex numbers like 1+2j,0.5-0.1j")
    if len(point) != f.d:
        raise FileFormatError("--at gave %d coordinates for a %d-variable function"
                              % (len(point), f.d))
    value = f.eval(np.array(point), args.den_floor)
    payload = _report(
        "eval",
        dict(_describe_inputs(args, f, frame),
             point=[[float(c.real), float(c.imag)] for c in point]),
        0,
        {"den_floor": args.den_floor},
        {"eval": "ok"},
        {"value": [[[float(v.real), float(v.imag)] for v in row] for row in value]},
    )
    _emit(args, payload)
    _say("eval: ok")
    return EXIT_OK


# ----------------------------------------------------------------------
# parser


def _add_common(sub, sampling=True):
    sub.add_argument("function", help="function JSON path, or - for stdin")
    sub.add_argument("-o", "--output", default=None,
                     help="write the JSON result here instead of stdout")
    if sampling:
        sub.add_argument("--seed", type=int, default=None,
                         help="RNG seed (0 = OS entropy; default: $DARLINGTON_SEED or %d)"
                              % DEFAULT_SEED)
        sub.add_argument("--samples", type=int, default=200)
        sub.add_argument("--box-radius", type=float, default=10.0)
        sub.add_argument("--imag-floor", type=float, default=1e-3)
        sub.add_argument("--no-edge-points", action="store_true")
        sub.add_argument("--psd-slack", type=float, default=1e-8)
        sub.add_argument("--reality-slack", type=float, default=1e-8)
    sub.add_argument("--den-floor", type=float, default=1e-12)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="darlington",
        description="Lift rational matrix Herglotz functions to one more variable, "
                    "verify class membership numerically, and realize one-variable "
                    "positive-real functions as lossless 2x2 blocks.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("lift", help="lift a nevanlinna-frame function to d+1 variables")
    _add_common(s, sampling=False)
    s.set_defaults(func=_cmd_lift)

    s = subs.add_parser("verify", help="lift, restrict back at i, and check both classes")
    _add_common(s)
    s.set_defaults(func=_cmd_verify)

    s = subs.add_parser("check", help="sampled class membership check")
    _add_common(s)
    s.add_argument("--class", dest="membership", required=True,
                   choices=sorted(_MEMBERSHIP), help="which membership to test")
    s.set_defaults(func=_cmd_check)

    s = subs.add_parser("stable", help="hunt for upper-half-plane zeros of a polynomial")
    _add_common(s)
    s.add_argument("--real", action="store_true",
                   help="also require real coefficients (real-stability)")
    s.set_defaults(func=_cmd_stable)

    s = subs.add_parser("realize1d", help="lossless 2x2 realization of a scalar "
                                          "one-variable positive-real function")
    _add_common(s)
    s.set_defaults(func=_cmd_realize1d)

    s = subs.add_parser("eval", help="evaluate at a point")
    _add_common(s, sampling=False)
    s.add_argument("--at", required=True, help="comma-separated coordinates, e.g. 1+2j,0.5-0.1j")
    s.set_defaults(func=_cmd_eval)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileFormatError as exc:
        _say("error: %s" % exc)
        return EXIT_FORMAT
    except (NotScalar, NotOneVariable, DimensionMismatch) as exc:
        _say("precondition: %s" % exc)
        return EXIT_PRECONDITION
    except ReconstructionMismatch as exc:
        _say("identity failure: %s" % exc)
        return EXIT_IDENTITY
    except (SplitFailed, SingularCayley) as exc:
        _say("class failure: %s" % exc)
        return EXIT_CLASS
    except NearPole as exc:
        _say("near pole: %s" % exc)
        return EXIT_NEAR_POLE


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
