"""``steanesim`` command line: ancilla sweeps, channel curves, crossover search.

Every subcommand writes CSV (to ``--out`` or standard output).  Floats are
written with ``repr`` so they parse back to the same value, and a fixed
``--seed`` gives byte-identical output on any machine and thread count.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass

from .ancilla import FactoryStarvation, ancilla_statistics
from .experiments import ChannelConfig, find_critical_time, naked_fidelity_closed_form, run_channel
from .noise import NoiseParams

ANCILLA_HEADER = ["epsilon", "gamma", "trials", "accept_rate", "fidelity", "fidelity_stderr",
                  "p_two_bitflip", "p_stderr"]
CHANNEL_HEADER = ["t", "fidelity", "stderr", "n_trials"]
CLOSED_FORM_HEADER = ["estimate_closed", "exact_closed"]
CROSSOVER_HEADER = ["gamma", "critical_time", "found"]

_MODES = {"naked": "naked", "encoded": "encoded_corrected", "encoded-nocorrect": "encoded_uncorrected"}


@dataclass(frozen=True)
class SweepSpec:
    """Inclusive linear grid ``start + i*(stop-start)/(count-1)``, ``i < count``."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ValueError("sweep count must be >= 1")
        if self.count == 1 and self.start != self.stop:
            raise ValueError("a one-point sweep needs start == stop")

    @classmethod
    def parse(cls, text: str) -> SweepSpec:
        """``'a:b:n'`` or a single number ``'a'``."""
        parts = text.split(":")
        try:
            if len(parts) == 1:
                v = float(parts[0])
                return cls(v, v, 1)
            if len(parts) == 3:
                return cls(float(parts[0]), float(parts[1]), int(parts[2]))
        except ValueError as exc:
            raise ValueError(f"bad sweep {text!r}: {exc}") from None
        raise ValueError(f"bad sweep {text!r}: expected 'start:stop:count' or a number")

    def values(self) -> list[float]:
        if self.count == 1:
            return [self.start]
        # multiply before dividing so every point follows the index formula exactly
        span = self.stop - self.start
        return [self.start + i * span / (self.count - 1) for i in range(self.count)]


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    return str(v)


def _sweep_arg(text: str) -> SweepSpec:
    try:
        return SweepSpec.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _gamma_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad gamma list {text!r}: {exc}") from None


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected an integer >= 1, got {text}")
    return v


def _engine(text: str) -> str:
    names = {"statevector": "statevector", "pauli-frame": "pauli_frame", "pauli_frame": "pauli_frame"}
    if text not in names:
        raise argparse.ArgumentTypeError(f"engine must be 'statevector' or 'pauli-frame', got {text!r}")
    return names[text]


def _common(p: argparse.ArgumentParser, trials_default: int):
    p.add_argument("--epsilon", type=float, required=True, help="one-qubit gate / memory step error probability")
    p.add_argument("--trials", type=_positive_int, default=trials_default)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--engine", type=_engine, default="pauli_frame", help="statevector or pauli-frame")
    p.add_argument("--out", default="-", help="output path, '-' for standard output")


def _idle_flag(p: argparse.ArgumentParser):
    # memory-channel runs charge memory noise only in channel time steps unless asked
    p.add_argument("--idle-memory", action="store_true",
                   help="also apply memory noise to idle qubits inside the correction networks")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="steanesim", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ancilla", help="fidelity and two-bit-flip rate of verified |0_L> ancillas")
    _common(p, 10000)
    p.add_argument("--gamma", type=_sweep_arg, required=True, help="value or sweep 'start:stop:count'")
    p.add_argument("--no-verification", action="store_true", help="skip the flag-qubit check")
    p.add_argument("--no-idle-memory", action="store_true", help="no noise on idle qubits inside networks")

    p = sub.add_parser("channel", help="fidelity curve of a naked or encoded qubit in memory")
    _common(p, 10000)
    p.add_argument("--mode", choices=sorted(_MODES), required=True)
    p.add_argument("--gamma", type=float, default=0.0)
    p.add_argument("--t-max", type=_positive_int, required=True)
    p.add_argument("--period", type=_positive_int, default=1, help="steps between correction rounds")
    p.add_argument("--emit-closed-form", action="store_true", help="add the two analytic naked-qubit columns")
    _idle_flag(p)

    p = sub.add_parser("crossover", help="critical time of encoded vs naked per gamma")
    _common(p, 20000)
    p.add_argument("--gamma-list", type=_gamma_list, required=True, help="comma-separated gammas")
    p.add_argument("--t-max", type=_positive_int, default=5000)
    p.add_argument("--period", type=_positive_int, default=1)
    _idle_flag(p)
    return parser


def _rows_ancilla(args):
    yield ANCILLA_HEADER
    for gamma in args.gamma.values():
        params = NoiseParams(args.epsilon, gamma, not args.no_idle_memory)
        s = ancilla_statistics(params, args.trials, args.seed, args.engine, not args.no_verification, "a_z")
        yield [args.epsilon, gamma, args.trials, s.accept_rate, s.fidelity, s.fidelity_stderr,
               s.p_two_bitflip, s.p_stderr]


def _config(args, mode: str, gamma: float) -> ChannelConfig:
    return ChannelConfig(args.epsilon, gamma, args.t_max, args.period, args.trials, mode, args.engine,
                         args.seed, args.idle_memory)


def _rows_channel(args):
    result = run_channel(_config(args, _MODES[args.mode], args.gamma))
    if result.n_starved:
        print(f"warning: {result.n_starved} trials dropped (ancilla factory starved)", file=sys.stderr)
    yield CHANNEL_HEADER + (CLOSED_FORM_HEADER if args.emit_closed_form else [])
    for p in result.points:
        row = [p.t, p.fidelity, p.stderr, p.n_trials]
        if args.emit_closed_form:
            row.extend(naked_fidelity_closed_form(args.epsilon, p.t))
        yield row


def _rows_crossover(args):
    yield CROSSOVER_HEADER
    naked = run_channel(_config(args, "naked", 0.0)).points
    for gamma in args.gamma_list:
        encoded = run_channel(_config(args, "encoded_corrected", gamma)).points
        t = find_critical_time(naked, encoded)
        yield [gamma, t, t is not None]


_COMMANDS = {"ancilla": _rows_ancilla, "channel": _rows_channel, "crossover": _rows_crossover}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    try:
        for row in _COMMANDS[args.command](args):
            writer.writerow([_fmt(v) for v in row])
    except (ValueError, FactoryStarvation) as exc:
        print(f"steanesim {args.command}: error: {exc}", file=sys.stderr)
        return 1
    # rows are buffered so a failed run never leaves a truncated file behind
    try:
        if args.out == "-":
            sys.stdout.write(buf.getvalue())
            sys.stdout.flush()
        else:
            with open(args.out, "w", newline="") as fh:
                fh.write(buf.getvalue())
    except OSError as exc:
        print(f"steanesim {args.command}: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
