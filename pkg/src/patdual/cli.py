"""Command-line front end.

Subcommands: first-passage, duel, simulate, best-response.  Probabilities
are accepted only as exact fraction literals and every exact quantity is
emitted as a num/den string, so JSON output round-trips without loss.
Decimal renderings use round-half-even at the configured digit count.

Exit codes: 0 success, 2 parse/usage errors, 3 precondition violations
(invalid pattern sets and the like), 4 internal failures (singular systems,
cross-check disagreement).
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import math
import sys
from fractions import Fraction

from .algebra import RationalFunction, SingularMatrixError
from .equilibrium import solve_equilibrium
from .oracle import simulate
from .patterns import (
    Alphabet,
    ParseError,
    Pattern,
    PatternSet,
    PatternSetError,
    parse_alphabet,
)
from .pgf import first_passage_pgf, solve_duel

__all__ = ["main"]


class CrossCheckError(ArithmeticError):
    """The generating-function and stationary-rate routes disagreed."""


def decimal_str(x: Fraction, digits: int) -> str:
    """Fixed-point decimal rendering with round-half-even."""
    if digits < 0:
        raise ValueError("digits must be >= 0")
    r = round(Fraction(x), digits)
    sign = "-" if r < 0 else ""
    scaled = abs(r.numerator) * 10**digits // r.denominator
    whole, frac = divmod(scaled, 10**digits)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def percent_str(x: Fraction, digits: int) -> str:
    return decimal_str(x * 100, max(digits - 2, 0)) + "%"


def _exact_decimal(x: Fraction, digits: int) -> dict:
    return {"exact": str(x), "decimal": decimal_str(x, digits)}


def parse_patterns_option(values: list[str], alphabet: Alphabet) -> list[Pattern]:
    """Expand --patterns occurrences into patterns.

    Each occurrence is split on commas.  When there are several tokens and
    every one parses as a bare pattern, the tokens are separate patterns
    (e.g. 'HH,TH'); otherwise the occurrence is a single pattern whose
    symbols are the comma-delimited tokens (needed for multi-character
    labels such as '10,2,10').
    """
    patterns: list[Pattern] = []
    for value in values:
        tokens = value.split(",")
        if len(tokens) > 1:
            try:
                patterns.extend(Pattern.parse(tok, alphabet) for tok in tokens)
                continue
            except ParseError:
                pass
        patterns.append(Pattern.parse(value, alphabet))
    return patterns


def _rf_json(rf: RationalFunction) -> dict:
    return {
        "numerator": [str(c) for c in rf.num.coeffs],
        "denominator": [str(c) for c in rf.den.coeffs],
    }


def _pgf_moments(rf: RationalFunction) -> tuple[Fraction, Fraction]:
    """Mean and variance of the distribution a proper PGF generates."""
    d1 = rf.derivative()
    m1 = d1.limit_at_one()
    m2 = d1.derivative().limit_at_one()
    return m1, m2 + m1 - m1 * m1


def cmd_first_passage(args, alphabet: Alphabet, patterns: list[Pattern]) -> dict:
    if len(patterns) != 1:
        raise PatternSetError("first-passage requires exactly one pattern")
    pattern = patterns[0]
    f = first_passage_pgf(pattern)
    mean, variance = _pgf_moments(f)
    n = args.n if args.n is not None else 4 * math.ceil(mean)
    coeffs = f.series(n)
    return {
        "pattern": pattern.text,
        "pgf": _rf_json(f),
        "mean": _exact_decimal(mean, args.digits),
        "variance": _exact_decimal(variance, args.digits),
        "coefficients": [
            {"n": i, **_exact_decimal(c, args.digits)} for i, c in enumerate(coeffs)
        ],
    }


def cmd_duel(args, alphabet: Alphabet, patterns: list[Pattern]) -> dict:
    if len(patterns) < 2:
        raise PatternSetError("duel requires at least two patterns")
    ps = PatternSet(alphabet, tuple(patterns))
    results: dict = {"method": args.method}

    if args.method in ("pgf", "both"):
        sol = solve_duel(ps)
        results["win"] = [
            {
                "pattern": p.text,
                "exact": str(wp),
                "decimal": decimal_str(wp, args.digits),
                "percent": percent_str(wp, args.digits),
            }
            for p, wp in zip(ps.patterns, sol.win_probs)
        ]
        results["duration"] = {
            "mean": _exact_decimal(sol.mean, args.digits),
            "variance": _exact_decimal(sol.variance, args.digits),
            "std": f"{sol.std:.{args.digits}f}",
            "skewness": f"{sol.skewness:.{args.digits}f}",
        }
        if args.n is not None:
            results["coefficients"] = [
                {"n": i, **_exact_decimal(c, args.digits)}
                for i, c in enumerate(sol.duration.series(args.n))
            ]
    if args.method in ("equilibrium", "both"):
        eq = solve_equilibrium(ps)
        eq_block = {
            "rates": [str(yi) for yi in eq.y],
            "win": [
                {
                    "pattern": p.text,
                    "exact": str(wp),
                    "decimal": decimal_str(wp, args.digits),
                    "percent": percent_str(wp, args.digits),
                }
                for p, wp in zip(ps.patterns, eq.win_probs)
            ],
            "expected_duration": _exact_decimal(eq.expected_duration, args.digits),
        }
        if args.method == "equilibrium":
            results["win"] = eq_block["win"]
            results["duration"] = {"mean": eq_block["expected_duration"]}
            results["rates"] = eq_block["rates"]
        else:
            results["equilibrium"] = eq_block
    if args.method == "both":
        agree = (
            tuple(w["exact"] for w in results["win"])
            == tuple(w["exact"] for w in results["equilibrium"]["win"])
            and results["duration"]["mean"]["exact"]
            == results["equilibrium"]["expected_duration"]["exact"]
        )
        if not agree:
            raise CrossCheckError("generating-function and stationary-rate results disagree")
        results["cross_check"] = "ok"
    return results


def cmd_simulate(args, alphabet: Alphabet, patterns: list[Pattern]) -> dict:
    if len(patterns) < 2:
        raise PatternSetError("simulate requires at least two patterns")
    ps = PatternSet(alphabet, tuple(patterns))
    sol = solve_duel(ps)
    report = simulate(ps, args.games, args.seed)

    rows = []
    for i, p in enumerate(ps.patterns):
        exact = sol.win_probs[i]
        emp = report.win_frequency(i)
        sigma = math.sqrt(float(exact * (1 - exact)) / args.games)
        rows.append(
            {
                "pattern": p.text,
                "exact": str(exact),
                "exact_decimal": decimal_str(exact, args.digits),
                "empirical": decimal_str(emp, args.digits),
                "z": f"{float(emp - exact) / sigma:.{args.digits}f}",
            }
        )
    mean_sigma = sol.std / math.sqrt(args.games)
    if mean_sigma > 0:
        mean_z = f"{float(report.mean_duration - sol.mean) / mean_sigma:.{args.digits}f}"
    else:
        # deterministic duration: any deviation at all is a failure
        mean_z = "0" if report.mean_duration == sol.mean else "inf"
    return {
        "games": args.games,
        "seed": args.seed,
        "win": rows,
        "duration": {
            "exact_mean": _exact_decimal(sol.mean, args.digits),
            "empirical_mean": decimal_str(report.mean_duration, args.digits),
            "z": mean_z,
        },
    }


def cmd_best_response(args, alphabet: Alphabet, patterns: list[Pattern]) -> dict:
    if len(patterns) != 1:
        raise PatternSetError("best-response requires exactly one opponent pattern")
    opponent = patterns[0]
    if args.length < 1:
        raise PatternSetError("response length must be >= 1")

    def contains(hay: tuple[int, ...], needle: tuple[int, ...]) -> bool:
        k = len(needle)
        return any(hay[i : i + k] == needle for i in range(len(hay) - k + 1))

    ranked = []
    skipped = []
    for symbols in itertools.product(range(len(alphabet)), repeat=args.length):
        candidate = Pattern(alphabet, symbols)
        if symbols == opponent.symbols:
            skipped.append({"pattern": candidate.text, "reason": "identical to opponent"})
            continue
        if contains(opponent.symbols, symbols):
            skipped.append({"pattern": candidate.text, "reason": "substring of opponent"})
            continue
        if contains(symbols, opponent.symbols):
            skipped.append({"pattern": candidate.text, "reason": "contains opponent"})
            continue
        sol = solve_duel(PatternSet(alphabet, (candidate, opponent)))
        ranked.append((sol.win_probs[0], symbols, candidate))
    ranked.sort(key=lambda item: (-item[0], item[1]))
    return {
        "opponent": opponent.text,
        "length": args.length,
        "candidates": [
            {
                "pattern": cand.text,
                "exact": str(wp),
                "decimal": decimal_str(wp, args.digits),
                "percent": percent_str(wp, args.digits),
            }
            for wp, _, cand in ranked
        ],
        "skipped": skipped,
    }


def _render_table(doc: dict, out) -> None:
    results = doc["results"]
    print(f"command:  {doc['command']}", file=out)
    alpha_txt = ", ".join(a["symbol"] + ":" + a["prob"] for a in doc["alphabet"])
    print(f"alphabet: {alpha_txt}", file=out)
    print(f"patterns: {', '.join(doc['patterns'])}", file=out)
    print(file=out)

    def table(rows: list[dict], columns: list[str]) -> None:
        widths = [max(len(col), *(len(str(r.get(col, ""))) for r in rows)) for col in columns]
        print("  ".join(col.ljust(w) for col, w in zip(columns, widths)), file=out)
        for r in rows:
            print("  ".join(str(r.get(col, "")).ljust(w) for col, w in zip(columns, widths)), file=out)

    if "pgf" in results:
        print(f"pattern {results['pattern']}", file=out)
        print(f"  pgf numerator:   {results['pgf']['numerator']}", file=out)
        print(f"  pgf denominator: {results['pgf']['denominator']}", file=out)
        print(f"  mean trials:     {results['mean']['exact']} ~ {results['mean']['decimal']}", file=out)
        print(f"  variance:        {results['variance']['exact']} ~ {results['variance']['decimal']}", file=out)
        print(file=out)
        table(results["coefficients"], ["n", "exact", "decimal"])
    elif "candidates" in results:
        print(f"responses of length {results['length']} against {results['opponent']}", file=out)
        print(file=out)
        rows = [{"rank": i + 1, **c} for i, c in enumerate(results["candidates"])]
        table(rows, ["rank", "pattern", "exact", "decimal", "percent"])
        if results["skipped"]:
            print(file=out)
            print("skipped: " + ", ".join(f"{s['pattern']} ({s['reason']})" for s in results["skipped"]), file=out)
    elif "games" in results:
        print(f"games: {results['games']}  seed: {results['seed']}", file=out)
        print(file=out)
        table(results["win"], ["pattern", "exact", "exact_decimal", "empirical", "z"])
        dur = results["duration"]
        print(file=out)
        print(
            f"duration mean: exact {dur['exact_mean']['exact']} ~ {dur['exact_mean']['decimal']}"
            f"  empirical {dur['empirical_mean']}  z {dur['z']}",
            file=out,
        )
    else:
        table(results["win"], ["pattern", "exact", "decimal", "percent"])
        print(file=out)
        dur = results["duration"]
        line = f"duration mean: {dur['mean']['exact']} ~ {dur['mean']['decimal']}"
        if "std" in dur:
            line += f"  std: {dur['std']}  skewness: {dur['skewness']}"
        print(line, file=out)
        if "rates" in results:
            print(f"stationary rates: {', '.join(results['rates'])}", file=out)
        if "equilibrium" in results:
            print(f"cross-check (stationary route): {results['cross_check']}", file=out)
        if "coefficients" in results:
            print(file=out)
            table(results["coefficients"], ["n", "exact", "decimal"])


def _render_csv(doc: dict, out) -> None:
    """Primary table as CSV; coefficient tables win when present (plotting hook)."""
    results = doc["results"]
    writer = csv.writer(out)
    if "coefficients" in results:
        writer.writerow(["n", "exact", "decimal"])
        for row in results["coefficients"]:
            writer.writerow([row["n"], row["exact"], row["decimal"]])
    elif "candidates" in results:
        writer.writerow(["rank", "pattern", "exact", "decimal", "percent"])
        for i, row in enumerate(results["candidates"]):
            writer.writerow([i + 1, row["pattern"], row["exact"], row["decimal"], row["percent"]])
    elif "games" in results:
        writer.writerow(["pattern", "exact", "exact_decimal", "empirical", "z"])
        for row in results["win"]:
            writer.writerow([row["pattern"], row["exact"], row["exact_decimal"], row["empirical"], row["z"]])
    else:
        writer.writerow(["pattern", "exact", "decimal", "percent"])
        for row in results["win"]:
            writer.writerow([row["pattern"], row["exact"], row["decimal"], row["percent"]])


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="patdual",
        description="Exact win probabilities and durations for pattern races.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--alphabet", required=True, help="label:fraction pairs, e.g. H:1/2,T:1/2")
        p.add_argument(
            "--patterns",
            required=True,
            action="append",
            help="comma-separated patterns; repeat the flag for multi-character-label alphabets",
        )
        p.add_argument("--digits", type=int, default=4, help="decimal digits in renderings")
        p.add_argument("--format", choices=("table", "json", "csv"), default="table")

    p = sub.add_parser("first-passage", help="distribution of trials until one pattern appears")
    add_common(p)
    p.add_argument("--n", type=int, default=None, help="series length (default 4x mean)")

    p = sub.add_parser("duel", help="race several patterns against each other")
    add_common(p)
    p.add_argument("--method", choices=("pgf", "equilibrium", "both"), default="pgf")
    p.add_argument("--n", type=int, default=None, help="also emit duration coefficients up to n")

    p = sub.add_parser("simulate", help="Monte Carlo cross-check of a race")
    add_common(p)
    p.add_argument("--games", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("best-response", help="rank all responses of a given length")
    add_common(p)
    p.add_argument("--length", type=int, required=True)

    return parser


_COMMANDS = {
    "first-passage": cmd_first_passage,
    "duel": cmd_duel,
    "simulate": cmd_simulate,
    "best-response": cmd_best_response,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout
    try:
        if args.digits < 0:
            raise ParseError("--digits must be >= 0")
        alphabet = parse_alphabet(args.alphabet)
        patterns = parse_patterns_option(args.patterns, alphabet)
        results = _COMMANDS[args.command](args, alphabet, patterns)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PatternSetError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (SingularMatrixError, CrossCheckError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4

    doc = {
        "command": args.command,
        "alphabet": [
            {"symbol": s, "prob": str(p)} for s, p in zip(alphabet.symbols, alphabet.probs)
        ],
        "patterns": [p.text for p in patterns],
        "results": results,
    }
    if args.format == "json":
        json.dump(doc, out, indent=2)
        print(file=out)
    elif args.format == "csv":
        _render_csv(doc, out)
    else:
        _render_table(doc, out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
