"""Command-line front end: ``ydforge verify|transmute|bosonise|catalog|report``.

Exit codes: 0 when every requested check passes, 1 when a check fails,
2 when an input file or option cannot be used.
"""

from __future__ import annotations

import functools
import json
import os
import sys
from pathlib import Path
from typing import Any, Callable

import click

from . import catalog as cat
from .coqt import check_coqt, check_ybe, form_to_matrix, load_R_file
from .errors import CheckFailed, InputError
from .hopf_core import HopfData, VerificationReport, check_hopf, hopf_from_dict, hopf_to_json
from .matched_pairs import action_from_dict, check_matched_pair
from .presentations import presentation_from_dict, structure_constants
from .ydbrace import (
    YDBraceData,
    bosonisation,
    brace_from_dict,
    brace_to_json,
    check_one_cocycle,
    check_yd_brace,
    full_suite,
    one_cocycle_from_brace,
    transmute_from_R,
)

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputFileError(InputError):
    """An input file is missing, is not JSON, or does not match its schema."""


def _read_json(path: str | Path) -> Any:
    try:
        with open(path, encoding="utf-8") as handle:
            return json.load(handle)
    except OSError as exc:
        raise InputFileError(f"{path}: cannot read file ({exc.strerror})") from None
    except json.JSONDecodeError as exc:
        raise InputFileError(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None


def _parse(path: str | Path, parser: Callable[[Any], Any]) -> Any:
    data = _read_json(path)
    try:
        return parser(data)
    except InputError as exc:
        raise InputFileError(f"{path}: {exc}") from None
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InputFileError(f"{path}: malformed field {exc!r}") from None


def _load_hopf(path: str) -> HopfData:
    return _parse(path, hopf_from_dict)


def _load_R(path: str, hopf_path: str | None):
    base = _load_hopf(hopf_path) if hopf_path else None

    def parse(data: Any):
        if base is None and isinstance(data.get("hopf"), str) and not os.path.isabs(data["hopf"]):
            data = dict(data, hopf=str(Path(path).parent / data["hopf"]))
        return load_R_file(data, base)

    return _parse(path, parse)


def _write(path: str, text: str) -> None:
    Path(path).parent.mkdir(parents=True, exist_ok=True)
    Path(path).write_text(text, encoding="utf-8")


def _emit(report: VerificationReport, fmt: str) -> int:
    click.echo(report.to_json() if fmt == "json" else report.to_markdown(), nl=fmt == "json")
    return EXIT_PASS if report.passed else EXIT_FAIL


def _guarded(fn: Callable[..., int]) -> Callable[..., None]:
    """Map input errors to exit 2 and unexpected check failures to exit 1."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        try:
            code = fn(*args, **kwargs)
        except InputError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except CheckFailed as exc:
            fmt = kwargs.get("fmt", "md")
            if isinstance(exc.report, VerificationReport):
                _emit(exc.report, fmt)
            click.echo(f"check failed: {exc}", err=True)
            sys.exit(EXIT_FAIL)
        sys.exit(code or EXIT_PASS)

    return wrapper


def _common(fn: Callable[..., Any]) -> Callable[..., Any]:
    fn = click.option("--format", "fmt", type=click.Choice(["md", "json"]), default="md", show_default=True, help="Report format.")(fn)
    fn = click.option("--jobs", type=click.IntRange(min=1), envvar="YDFORGE_JOBS", default=1, show_default=True, help="Worker processes for basis sweeps.")(fn)
    return fn


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Verify Hopf algebra axioms, transmute coquasitriangular structures and build Yetter-Drinfeld braces."""


# verify ----------------------------------------------------------------------------

@main.group()
def verify() -> None:
    """Run a verification suite on JSON inputs."""


@verify.command("hopf")
@click.argument("hopf_file")
@_common
@_guarded
def verify_hopf(hopf_file: str, fmt: str, jobs: int) -> int:
    """Bialgebra and antipode axioms of HOPF_FILE."""
    return _emit(check_hopf(_load_hopf(hopf_file), jobs), fmt)


@verify.command("coqt")
@click.option("--hopf", "hopf_file", help="hopf.json; defaults to the 'hopf' entry of the R file.")
@click.option("--R", "r_file", required=True, help="R-form file {hopf, R}.")
@_common
@_guarded
def verify_coqt(hopf_file: str | None, r_file: str, fmt: str, jobs: int) -> int:
    """coqt.1-coqt.3 with primed variants and the Yang-Baxter equation."""
    H, R = _load_R(r_file, hopf_file)
    report = check_coqt(H, R, jobs)
    report.extend(check_ybe(H, R, jobs))
    return _emit(report, fmt)


@verify.command("matched-pair")
@click.option("--hopf", "hopf_file", required=True)
@click.option("--left", "left_file", required=True, help="Action file with side 'left'.")
@click.option("--right", "right_file", required=True, help="Action file with side 'right'.")
@click.option("--star", is_flag=True, help="Also require ab = (a1⇀b1)(a2↼b2) (star).")
@click.option("--mp5", is_flag=True, help="Also require mp.5.")
@_common
@_guarded
def verify_matched_pair(hopf_file: str, left_file: str, right_file: str, star: bool, mp5: bool, fmt: str, jobs: int) -> int:
    """Module-coalgebra axioms and mp.1-mp.4 for a pair of actions."""
    H = _load_hopf(hopf_file)
    left = _parse(left_file, lambda d: action_from_dict(H, d))
    right = _parse(right_file, lambda d: action_from_dict(H, d))
    return _emit(check_matched_pair(H, left, right, require_star=star, require_mp5=mp5, jobs=jobs), fmt)


@verify.command("yd-brace")
@click.argument("brace_file")
@_common
@_guarded
def verify_yd_brace(brace_file: str, fmt: str, jobs: int) -> int:
    """Yetter-Drinfeld brace axioms of BRACE_FILE."""
    return _emit(check_yd_brace(_parse(brace_file, brace_from_dict), jobs), fmt)


@verify.command("one-cocycle")
@click.argument("brace_file")
@click.option("--pi", "pi_file", help="JSON {\"pi\": n x n matrix}, row i holding the coefficients of pi(e_i); default identity.")
@click.option("--lenient", is_flag=True, help="Run the cocycle checks even when pi is not a coalgebra isomorphism.")
@_common
@_guarded
def verify_one_cocycle(brace_file: str, pi_file: str | None, lenient: bool, fmt: str, jobs: int) -> int:
    """1-cocycle conditions for pi from the brace's coalgebra to (H, ·) acted on by its derived action."""
    D: YDBraceData = _parse(brace_file, brace_from_dict)
    pi = None
    if pi_file is not None:
        pi = _parse(pi_file, lambda d: _pi_columns(D.hopf, d))
    return _emit(check_one_cocycle(one_cocycle_from_brace(D, pi), strict=not lenient, jobs=jobs), fmt)


def _pi_columns(H: HopfData, data: Any) -> list:
    matrix = data["pi"]
    if len(matrix) != H.dim or any(len(row) != H.dim for row in matrix):
        raise InputError(f"field 'pi' must be an {H.dim} x {H.dim} matrix")
    columns = []
    for row in matrix:
        parsed = {k: H.field(str(v)) for k, v in enumerate(row)}
        columns.append({k: v for k, v in parsed.items() if not v.is_zero()})
    return columns


# transmute / bosonise -------------------------------------------------------------------

@main.command()
@click.option("--hopf", "hopf_file", help="hopf.json; defaults to the 'hopf' entry of the R file.")
@click.option("--R", "r_file", required=True)
@click.option("-o", "--output", required=True, help="Where to write brace.json.")
@_guarded
def transmute(hopf_file: str | None, r_file: str, output: str) -> int:
    """Build the transmuted product and antipode from an R-form."""
    H, R = _load_R(r_file, hopf_file)
    _write(output, brace_to_json(YDBraceData(H, *transmute_from_R(H, R))))
    click.echo(f"wrote {output}")
    return EXIT_PASS


@main.command()
@click.argument("brace_file")
@click.option("-o", "--output", required=True, help="Where to write the bosonisation as hopf.json.")
@click.option("--jobs", type=click.IntRange(min=1), envvar="YDFORGE_JOBS", default=1)
@_guarded
def bosonise(brace_file: str, output: str, jobs: int) -> int:
    """Build the ordinary Hopf algebra on H⊗H from a Yetter-Drinfeld brace."""
    D = _parse(brace_file, brace_from_dict)
    _write(output, hopf_to_json(bosonisation(D, jobs)))
    click.echo(f"wrote {output}")
    return EXIT_PASS


# catalog -----------------------------------------------------------------------------

def _build(name: str, n: int, cap: int, point: tuple[str, ...]) -> cat.CatalogEntry:
    values = {}
    for item in point:
        key, sep, value = item.partition("=")
        if not sep:
            raise InputError(f"--point expects name=value, got {item!r}")
        values[key.strip()] = value.strip()
    builders: dict[str, Callable[[], cat.CatalogEntry]] = {
        "sweedler": lambda: cat.build_sweedler(values.get("k", "k")),
        "en": lambda: cat.build_en(n),
        "slq2": lambda: cat.build_slq2(cap),
        "suzuki": lambda: cat.build_suzuki(values.get("nu", 1), values.get("lam", 1), values.get("alpha", "alpha"), values.get("beta", "beta")),
        "group_C2": lambda: cat.build_group_algebra("C2"),
        "group_S3": lambda: cat.build_group_algebra("S3"),
        "dual_group_S3": lambda: cat.build_dual_group_algebra("S3"),
    }
    if name not in builders:
        raise InputError(f"unknown catalog entry {name!r}; choose from {', '.join(cat.CATALOG_NAMES)}")
    return builders[name]()


def _entry_options(fn: Callable[..., Any]) -> Callable[..., Any]:
    fn = click.option("--point", multiple=True, help="Parameter value name=value (k for sweedler; nu, lam, alpha, beta for suzuki).")(fn)
    fn = click.option("--cap", type=click.IntRange(min=3), default=4, show_default=True, help="Degree cap for slq2.")(fn)
    fn = click.option("--n", "n", type=int, default=2, show_default=True, help="Number of skew-primitive generators for en.")(fn)
    return fn


def _golden_payload(entry: cat.CatalogEntry) -> dict[str, Any]:
    try:
        key = cat.golden_key(entry)
    except KeyError:
        return {"entry": entry.name, "cells": []}
    section = cat.load_golden()[key]
    cells = []
    tables = ["R"] if "R" in section else []
    for table in tables + sorted(section["tables"]):
        cells += cat.golden_cells(entry, table)
    cells += cat.golden_S_bar(entry)
    return {
        "entry": entry.name,
        "source": section["source"],
        "cells": [
            {
                "table": c.table,
                "row": c.row,
                "col": c.col,
                "expected": [[str(k), str(v)] for k, v in sorted(c.expected.items())],
                "source": c.source,
            }
            for c in cells
        ],
        "flags": section.get("flags", {}),
    }


@main.group(invoke_without_command=True)
@click.option("--presentation", "presentation_file", help="Presentation JSON to turn into structure constants.")
@click.option("--cap", type=click.IntRange(min=1), help="Override the presentation's degree cap.")
@click.option("-o", "--output", help="Where to write hopf.json (with --presentation).")
@click.pass_context
def catalog(ctx: click.Context, presentation_file: str | None, cap: int | None, output: str | None) -> None:
    """Built-in examples; with --presentation, structure constants of a presented algebra."""
    if ctx.invoked_subcommand is not None:
        return
    if presentation_file is None:
        click.echo(ctx.get_help())
        return
    _from_presentation(presentation_file, cap, output)


@_guarded
def _from_presentation(path: str, cap: int | None, output: str | None) -> int:
    def parse(data: Any):
        if cap is not None:
            data = dict(data, degree_cap=cap)
        return structure_constants(presentation_from_dict(data))

    text = hopf_to_json(_parse(path, parse))
    if output:
        _write(output, text)
        click.echo(f"wrote {output}")
    else:
        click.echo(text, nl=False)
    return EXIT_PASS


@catalog.command("list")
def catalog_list() -> None:
    """Names of the built-in entries."""
    for name in cat.CATALOG_NAMES:
        click.echo(name)


@catalog.command("emit")
@click.argument("name")
@_entry_options
@click.option("-o", "--output", required=True, help="Directory for hopf.json, R.json and golden.json.")
@_guarded
def catalog_emit(name: str, n: int, cap: int, point: tuple[str, ...], output: str) -> int:
    """Write an entry's hopf.json, R.json and golden.json."""
    entry = _build(name, n, cap, point)
    out = Path(output)
    _write(str(out / "hopf.json"), hopf_to_json(entry.hopf))
    matrix = form_to_matrix(entry.hopf, entry.R)
    _write(str(out / "R.json"), json.dumps({"hopf": "hopf.json", "R": [[str(v) for v in row] for row in matrix]}, indent=1, ensure_ascii=False) + "\n")
    _write(str(out / "golden.json"), json.dumps(_golden_payload(entry), indent=1, ensure_ascii=False) + "\n")
    click.echo(f"wrote {out / 'hopf.json'}, {out / 'R.json'}, {out / 'golden.json'}")
    return EXIT_PASS


# report ------------------------------------------------------------------------------

def _table_markdown(title: str, rows: list[str], cols: list[str], cell: Callable[[str, str], str]) -> list[str]:
    lines = [f"### {title}", "", "| | " + " | ".join(cols) + " |", "|---" * (len(cols) + 1) + "|"]
    for r in rows:
        lines.append(f"| **{r}** | " + " | ".join(cell(r, c) for c in cols) + " |")
    return lines + [""]


def _generator_labels(entry: cat.CatalogEntry) -> list[str]:
    if entry.algebra is None:
        return list(entry.hopf.basis)
    gens = list(entry.algebra.presentation.generators)
    if entry.name.startswith("E(") or entry.name == "sweedler":
        xs = [x for x in gens if x != "g"]
        return ["1", "g"] + xs + [f"{x}*g" for x in xs]
    return gens


@main.command()
@click.argument("name")
@_entry_options
@_common
@_guarded
def report(name: str, n: int, cap: int, point: tuple[str, ...], fmt: str, jobs: int) -> int:
    """Full coquasitriangular suite for a catalog entry, with its ⇀, ·̄ and S̄ tables."""
    entry = _build(name, n, cap, point)
    H = entry.hopf
    suite, D = full_suite(H, entry.R, jobs)
    if fmt == "json" or D is None:
        return _emit(suite, fmt)
    labels = _generator_labels(entry)
    element = entry.element if entry.algebra is not None else H.basis_vector

    def show(vec: Any) -> str:
        return "unknown" if vec is None else H.format_vec(vec)

    def guarded(fn: Callable[[], Any]) -> str:
        try:
            return show(fn())
        except InputError:
            return "beyond cap"

    lines = [f"## {entry.name}", ""]
    lines += _table_markdown("⇀", labels, labels, lambda r, c: guarded(lambda: D.left.act_vec(element(r), element(c))))
    lines += _table_markdown("·̄", labels, labels, lambda r, c: guarded(lambda: D.dot_vec(element(r), element(c))))
    lines += ["### S̄", "", "| | S̄ |", "|---|---|"]
    lines += [f"| **{r}** | {guarded(lambda: D.S_vec(element(r)))} |" for r in labels] + [""]
    click.echo("\n".join(lines))
    return _emit(suite, fmt)


if __name__ == "__main__":  # pragma: no cover
    main()
