"""
Swapurify Command-Line Fuzzer

Corpus-based fuzzer (deterministic, seeded RNG) that verifies:

  1. The command parser never raises and always returns a Command object.
  2. Every parsed command either validates or raises ValidationError,
     never anything else.

All RNG uses a fixed seed so failures are reproducible; re-running the
suite with the same build always exercises the same inputs.
"""

import random
import string

import pytest

from commands.models import PRESETS, SubcommandType
from commands.parser import parse_command
from commands.validators import CommandValidator, ValidationError


# ---------------------------------------------------------------------------
# Corpus construction
# ---------------------------------------------------------------------------

SEED = 0xDEADBEEF


def _rng() -> random.Random:
    return random.Random(SEED)


def _rand_str(rng: random.Random, lo: int, hi: int,
              chars: str = string.printable) -> str:
    return ''.join(rng.choice(chars) for _ in range(rng.randint(lo, hi)))


# Hand-crafted argument lists targeting specific code paths
HANDCRAFTED: list[list[str]] = [
    # Empty / whitespace
    [], [""], [" "], ["\t"], ["\n"],

    # Control characters
    ["\x00"], ["scan\x00"], ["scan", "\x00"], ["\x1b"], ["\x7f"],

    # Bare subcommands and help
    ["scan"], ["curve"], ["verify"], ["run"],
    ["-h"], ["--help"], ["scan", "-h"], ["verify", "--help"],

    # Presets
    ["--preset"], ["--preset", ""], ["--preset="], ["--preset", "fig99"],
    ["--preset", "fig1", "--preset", "fig4"],
    ["--preset", "fig4", "scan"], ["run", "--preset", "fig1"],
    ["--config", "--preset", "fig1"], ["--config"],
    ["--config=x.yaml", "--preset", "fig2"],

    # Wrong value types
    ["run", "--a"], ["run", "--a", "abc"], ["run", "--a", ""],
    ["run", "--rounds", "1.5"], ["run", "--rounds", "-3"], ["run", "--rounds", "0"],
    ["run", "--p", "-0.1"], ["run", "--p", "1.0001"], ["run", "--b", "0"],
    ["run", "--weak-policy", "MIXED"], ["run", "--accept", "Psi"],
    ["run", "--family", "PHI"], ["run", "--p-per-qubit", ""],
    ["run", "--p-per-qubit", ","], ["run", "--p-per-qubit", "0.1,,0.2"],

    # Numeric extremes
    ["run", "--a", "nan"], ["run", "--a", "inf"], ["run", "--a", "-inf"],
    ["run", "--a", "9.9e999"], ["run", "--rounds", str(2 ** 63)],
    ["scan", "--grid", f"{2 ** 31}x2"], ["scan", "--threads", str(2 ** 63)],
    ["curve", "--points", "-5"], ["verify", "--tol", "1e-400"],

    # Scan options
    ["scan", "--axes", ""], ["scan", "--axes", ","], ["scan", "--axes", "p,a,b"],
    ["scan", "--axes", "P,A"], ["scan", "--axes", "b,b"],
    ["scan", "--range1", ":"], ["scan", "--range1", "0:0"], ["scan", "--range1", "1:0"],
    ["scan", "--range1", "0:1:2"], ["scan", "--range1", "-1:2"],
    ["scan", "--grid", "x"], ["scan", "--grid", "0x0"], ["scan", "--grid", "2x2x2"],
    ["scan", "--grid", "3 x 3"], ["scan", "--method", "exact"],
    ["scan", "--family", "chi", "--axes", "p,a"],
    ["scan", "--axes", "p,b"], ["scan", "--rounds", "2", "--axes", "p,b", "--range2", "0:1"],

    # Curve options
    ["curve", "--p-range", "0:1"], ["curve", "--p-range", "0.5:0.1"],
    ["curve", "--family", "phi-asym"],

    # Ambiguous and unknown flags
    ["run", "--f", "phi"], ["run", "--fo", "json"], ["scan", "--bogus"],
    ["run", "--A=0.5"], ["run", "--a=0.5"], ["run", "---a", "0.5"],

    # Verify
    ["verify", "all", "kraus"], ["verify", "KRAUS"], ["verify", "--out"],

    # Unicode
    ["scan", "--axes", "p,ä"], ["run", "--a", "٠.٣"], ["🔥"], ["￿"], ["‮"],

    # Injection attempts (must all be harmless)
    ["run", "--out", "../../../etc/passwd\x00"], ["run;", "ls"], ["%s%s%s"], ["$(scan)"],

    # Very long inputs
    ["scan"] * 100, ["run", "--a", "0." + "3" * 10_000], ["A" * 10_000],
]


def _random_corpus(count: int = 300) -> list[list[str]]:
    """Generate a deterministic random corpus."""
    rng = _rng()
    valid = [
        ["scan", "--grid", "3x3"],
        ["curve", "--points", "5"],
        ["run", "--a", "0.3", "--p", "0.1"],
        ["run", "--rounds", "2", "--b", "0.22"],
        ["verify", "kraus"],
        ["--preset", "fig4"],
    ]
    flags = ["--a", "--A", "--a-prime", "--p", "--b", "--rounds", "--family", "--weak-policy",
             "--accept", "--finish-weak", "--no-flip", "--axes", "--grid", "--range1", "--points",
             "--preset", "--config", "--format", "--tol", "--threads", "--method"]
    out: list[list[str]] = []

    for _ in range(count):
        strategy = rng.randrange(5)
        if strategy == 0:
            out.append([_rand_str(rng, 0, 20) for _ in range(rng.randint(0, 6))])
        elif strategy == 1:
            raw = bytes(rng.randint(0, 255) for _ in range(rng.randint(1, 50)))
            out.append(raw.decode("utf-8", errors="replace").split())
        elif strategy == 2:
            args = list(rng.choice(valid))
            index = rng.randrange(len(args))
            chars = list(args[index])
            for _ in range(rng.randint(1, 3)):
                chars[rng.randrange(len(chars))] = chr(rng.randint(0, 127))
            args[index] = "".join(chars)
            out.append(args)
        elif strategy == 3:
            args = [rng.choice(["scan", "curve", "run", "verify"])]
            for _ in range(rng.randint(1, 6)):
                args.append(rng.choice(flags))
                if rng.random() < 0.8:
                    args.append(_rand_str(rng, 0, 8, string.digits + ".:x,-e" + string.ascii_letters))
            out.append(args)
        else:
            out.append(["".join(chr(rng.randint(0, 31)) for _ in range(rng.randint(1, 20)))])

    return out


FULL_CORPUS: list[list[str]] = HANDCRAFTED + _random_corpus(300)


def _report(failures, what):
    detail = "\n".join(f"  [{i}] {s}: {etype}: {emsg}" for i, s, etype, emsg in failures[:10])
    pytest.fail(f"{len(failures)} inputs {what}:\n{detail}")


# ---------------------------------------------------------------------------
# Parser fuzzing
# ---------------------------------------------------------------------------

class TestParserFuzzing:
    """
    The parser must NEVER raise an exception regardless of input.
    It must always return a Command object (possibly with error set).
    """

    def test_never_raises(self):
        """parse_command() must not raise for any input in the corpus."""
        failures = []
        for i, args in enumerate(FULL_CORPUS):
            try:
                result = parse_command(args)
                assert result.type is not None, "returned Command with None type"
            except Exception as e:
                failures.append((i, repr(args)[:60], type(e).__name__, str(e)[:80]))

        if failures:
            _report(failures, "raised in parser")

    def test_unknown_always_has_error(self):
        """Every UNKNOWN command must carry a non-empty error string."""
        failures = []
        for args in FULL_CORPUS:
            result = parse_command(args)
            if result.type == SubcommandType.UNKNOWN and not result.error:
                failures.append(repr(args)[:60])
        if failures:
            pytest.fail(
                f"{len(failures)} UNKNOWN results had no error:\n"
                + "\n".join(f"  {s}" for s in failures[:10])
            )

    def test_help_always_has_text(self):
        for args in FULL_CORPUS:
            result = parse_command(args)
            if result.type == SubcommandType.HELP:
                assert result.help_text, repr(args)[:60]

    def test_valid_commands_parse_correctly(self):
        """Well-formed commands must parse to the correct type with no error."""
        cases = [
            (["scan"],                                   SubcommandType.SCAN),
            (["scan", "--axes", "p,a", "--grid", "5x5"], SubcommandType.SCAN),
            (["curve", "--points", "10"],                SubcommandType.CURVE),
            (["verify"],                                 SubcommandType.VERIFY),
            (["verify", "thresholds"],                   SubcommandType.VERIFY),
            (["run", "--rounds", "3"],                   SubcommandType.RUN),
            (["--config", "c.yaml", "run"],              SubcommandType.RUN),
            (["--help"],                                 SubcommandType.HELP),
        ] + [(["--preset", name], SubcommandType(sub)) for name, (sub, _) in sorted(PRESETS.items())]
        for args, expected_type in cases:
            result = parse_command(args)
            assert result.type == expected_type, \
                f"{args!r}: expected {expected_type}, got {result.type}"
            assert result.error is None, \
                f"{args!r}: unexpected error: {result.error!r}"


# ---------------------------------------------------------------------------
# Validator fuzzing
# ---------------------------------------------------------------------------

class TestValidatorFuzzing:
    """Validation either succeeds or raises ValidationError."""

    def test_only_validation_errors(self):
        validator = CommandValidator()
        failures = []
        for i, args in enumerate(FULL_CORPUS):
            command = parse_command(args)
            if not command.is_valid():
                continue
            try:
                validator.validate(command)
            except ValidationError:
                pass
            except Exception as e:
                failures.append((i, repr(args)[:60], type(e).__name__, str(e)[:80]))

        if failures:
            _report(failures, "raised outside ValidationError")
