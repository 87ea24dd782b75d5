"""
Command-line front door.

Every command is a plain `command_*` function returning a CommandResult; the
typer wrappers only collect options, print the result and exit with its
status (0 success, 1 property violated, 2 usage or input error).
"""

import os
from pathlib import Path
from typing import Callable, List, Optional

import typer

from . import catalog as catalog_module
from .algebra import check_jordan_ungraded, check_super_jordan, check_supercommutativity, parse_element, reduce_algebra
from .classify import classify, write_representatives
from .envelope import (
    WITNESSES,
    format_polynomial,
    load_rewrite_system,
    matrix_superalgebra,
    odd_weyl_superalgebra,
    parse_coefficients,
    search_embedding,
    verify_special_embedding,
    weyl_algebra,
)
from .errors import Error, SuperJordanError
from .exactfield import characteristic_warning, make_field
from .iso import find_graded_isomorphism, fingerprint, fingerprint_diff
from .models import CommandResult
from .peirce import (
    check_peirce_multiplication,
    check_refined_multiplication,
    find_idempotents,
    peirce_decompose,
    refined_peirce,
    render_decomposition,
)
from .scafile import dumps_graded_map, load_sca, save_sca
from .utils import ensure_dir, parse_type, render_table

app = typer.Typer(help="Workbench for low-dimensional Jordan superalgebras.", no_args_is_help=True)
catalog_app = typer.Typer(help="Browse and export the built-in catalog.", no_args_is_help=True)
app.add_typer(catalog_app, name="catalog")

OPTIONS = {"prime": None, "ext": False, "quiet": False, "json": False}

TARGETS = {
    "odd-weyl": lambda: odd_weyl_superalgebra(1),
    "odd-weyl-anti": lambda: odd_weyl_superalgebra(1, "anticommutator"),
    "m11-weyl": lambda: matrix_superalgebra(1, 1, weyl_algebra()),
    "m12": lambda: matrix_superalgebra(1, 2),
}


def _field(prime: Optional[int], ext: Optional[bool]):
    prime = prime if prime is not None else OPTIONS["prime"]
    ext = ext or OPTIONS["ext"]
    if prime is None and not ext:
        return None
    return make_field(prime, ext)


def _load(path: str, field=None):
    algebra = load_sca(path)
    if field is not None and field != algebra.field:
        algebra = reduce_algebra(algebra, field)
    return algebra


def _with_banner(lines: List[str], field) -> List[str]:
    banner = characteristic_warning(field)
    return [banner] + lines if banner else lines


def _guard(loc: str, body: Callable[[], CommandResult]) -> CommandResult:
    try:
        return body()
    except SuperJordanError as ex:
        return CommandResult(status=2, report=Error(loc, ex).text)
    except OSError as ex:
        return CommandResult(status=2, report=Error(loc, ex).text)


def command_check(path: str, prime: Optional[int] = None, ext: bool = False, exhaustive: bool = False,
                  ungraded: bool = False) -> CommandResult:
    def body():
        algebra = _load(path, _field(prime, ext))
        reports = [check_supercommutativity(algebra), check_super_jordan(algebra)]
        if ungraded:
            reports.append(check_jordan_ungraded(algebra, exhaustive=exhaustive))
        failed = [r for r in reports if not r.holds]
        lines = _with_banner([r.render() for r in reports], algebra.field)
        payload = {"algebra": algebra.name, "reports": [r.model_dump() for r in reports]}
        return CommandResult(status=1 if failed else 0, report="\n".join(lines), payload=payload)

    return _guard("check", body)


def command_catalog_list(dim: Optional[int] = None) -> CommandResult:
    def body():
        entries = catalog_module.all_of_dimension(dim) if dim is not None else catalog_module.entries()
        return CommandResult(report="\n".join(e.summary() for e in entries),
                             payload={"entries": [e.model_dump() for e in entries]})

    return _guard("catalog list", body)


def command_catalog_show(name: str) -> CommandResult:
    def body():
        entry = catalog_module.get(name)
        lines = [render_table(entry.algebra), "", entry.summary()]
        if entry.source:
            lines.append(f"source: {entry.source}")
        if entry.correspondence:
            lines.append(f"basis of {entry.underlying_algebra}: {', '.join(entry.correspondence)}")
        for idem, components in entry.peirce_annotations.items():
            lines.append(f"Peirce at {idem}: odd basis in {', '.join(components)}")
        if entry.refined_annotations:
            where = ", ".join(f"{k} in P{i}{j}" for k, (i, j) in entry.refined_annotations.items())
            lines.append(f"refined at {', '.join(entry.refined_idempotents)}: {where}")
        return CommandResult(report="\n".join(lines), payload=entry.model_dump())

    return _guard("catalog show", body)


def command_catalog_export(name: Optional[str], out: str, dim: Optional[int] = None) -> CommandResult:
    def body():
        if dim is not None:
            ensure_dir(out)
            paths = [str(save_sca(e.algebra, os.path.join(out, f"{e.name}.sca")))
                     for e in catalog_module.all_of_dimension(dim)]
        elif name:
            paths = [str(save_sca(catalog_module.get(name).algebra, out))]
        else:
            raise SuperJordanError("give a catalog name or --dim")
        return CommandResult(report="\n".join(f"wrote {p}" for p in paths), payload={"paths": paths})

    return _guard("catalog export", body)


def command_peirce(path: str, idempotents: Optional[List[str]] = None, all_idempotents: bool = False,
                   refined: bool = False, prime: Optional[int] = None, ext: bool = False) -> CommandResult:
    def body():
        algebra = _load(path, _field(prime, ext))
        if all_idempotents:
            es = find_idempotents(algebra)
        elif idempotents:
            es = [parse_element(algebra, text) for text in idempotents]
        else:
            raise SuperJordanError("give --idempotent or --all")
        lines, failed, payload = [], False, []
        if refined:
            decomposition = refined_peirce(algebra, es)
            report = check_refined_multiplication(decomposition)
            lines += [render_decomposition(decomposition), report.render(limit=10)]
            failed = not report.holds
            payload.append({f"P{i}{j}": [str(v) for v in basis] for (i, j), basis in decomposition.components.items()})
        else:
            for e in es:
                decomposition = peirce_decompose(algebra, e)
                report = check_peirce_multiplication(decomposition)
                lines += [render_decomposition(decomposition), report.render(limit=10)]
                failed = failed or not report.holds
                payload.append({"idempotent": str(e),
                                **{f"P{k}": [str(v) for v in basis] for k, basis in decomposition.components.items()}})
        if not es:
            lines.append("no nonzero idempotents")
        return CommandResult(status=1 if failed else 0, report="\n".join(_with_banner(lines, algebra.field)),
                             payload={"decompositions": payload})

    return _guard("peirce", body)


def command_iso(path_a: str, path_b: str, prime: Optional[int] = None, ext: bool = False,
                workers: Optional[int] = None) -> CommandResult:
    def body():
        a, b = _load(path_a, _field(prime, ext)), _load(path_b, _field(prime, ext))
        field = a.field
        found = find_graded_isomorphism(a, b, workers=workers)
        if found is None:
            lines = [f"no graded isomorphism {a.name or path_a} -> {b.name or path_b} over {field}"]
            diff = fingerprint_diff(fingerprint(a), fingerprint(b)) if a.type == b.type else [
                f"type: {a.type} vs {b.type}"]
            lines += [f"  {d}" for d in diff]
            return CommandResult(status=1, report="\n".join(_with_banner(lines, field)), payload={"diff": diff})
        text = dumps_graded_map(found)
        return CommandResult(report="\n".join(_with_banner([f"graded isomorphism over {field}:", text], field)),
                             payload={"map": text})

    return _guard("iso", body)


def command_classify(type_text: str, even: Optional[str], prime: Optional[int] = None, ext: bool = False,
                     out: Optional[str] = None, workers: Optional[int] = None) -> CommandResult:
    def body():
        n, m = parse_type(type_text)
        p = prime if prime is not None else OPTIONS["prime"]
        if p is None:
            raise SuperJordanError("classification needs --field p")
        field = make_field(p)
        report = classify(n, m, even, field, allow_quadratic_extension=ext or OPTIONS["ext"], workers=workers)
        lines = [report.render()]
        if out:
            lines += [f"wrote {path}" for path in write_representatives(report, out)]
        return CommandResult(status=1 if report.unmatched else 0, report="\n".join(lines),
                             payload=report.model_dump())

    return _guard("classify", body)


def command_special(witness: Optional[str] = None, search: Optional[str] = None, target: str = "odd-weyl",
                    degree: Optional[int] = None, coefficients: Optional[str] = None,
                    max_terms: Optional[int] = None) -> CommandResult:
    def body():
        if witness:
            if witness not in WITNESSES:
                raise SuperJordanError(f"unknown witness {witness!r}; choose from {', '.join(WITNESSES)}")
            result = WITNESSES[witness]()
            return CommandResult(status=0 if result.report.holds else 1, report=result.render(),
                                 payload=result.model_dump())
        if not search:
            raise SuperJordanError("give --witness or --search")
        algebra = load_sca(search)
        if target in TARGETS:
            system = TARGETS[target]()
        elif Path(target).is_file():
            system = load_rewrite_system(target)
        else:
            raise SuperJordanError(f"unknown target {target!r}; choose from {', '.join(TARGETS)} or a JSON file")
        coeffs = parse_coefficients(coefficients) if coefficients else None
        found = search_embedding(algebra, system, degree, coeffs, max_terms)
        if found is None:
            return CommandResult(status=1, report=f"no embedding of {algebra.name or search} into {system.name} "
                                                  f"within the search bounds")
        images = {label: format_polynomial(p, system) for label, p in found.items()}
        report = verify_special_embedding(algebra, found, system)
        lines = [f"{algebra.name or search} -> {system.name}"] + [f"  {k} -> {v}" for k, v in images.items()]
        lines += [report.render(), "embedding verified"]
        return CommandResult(report="\n".join(lines), payload={"images": images})

    return _guard("special", body)


def _emit(result: CommandResult):
    if OPTIONS["json"]:
        typer.echo(result.model_dump_json(indent=2))
    elif not OPTIONS["quiet"] or result.status == 2:
        typer.echo(result.report, err=result.status == 2)
    raise typer.Exit(code=result.status)


@app.callback()
def main(
    field: Optional[int] = typer.Option(None, "--field", help="Work over GF(p)"),
    ext: bool = typer.Option(False, "--ext", help="Use GF(p^2), or allow it when matching"),
    quiet: bool = typer.Option(False, "--quiet", help="Print nothing but errors"),
    json_output: bool = typer.Option(False, "--json", help="Print the machine-readable result"),
):
    OPTIONS.update(prime=field, ext=ext, quiet=quiet, json=json_output)


@app.command()
def check(
    path: str = typer.Argument(..., help="A .sca file"),
    field: Optional[int] = typer.Option(None, "--field"),
    ext: bool = typer.Option(False, "--ext"),
    exhaustive: bool = typer.Option(False, "--exhaustive", help="Also test every pair of elements (finite fields)"),
    ungraded: bool = typer.Option(False, "--ungraded", help="Also run the ungraded Jordan checks"),
):
    """Check supercommutativity and the super Jordan identity."""
    _emit(command_check(path, field, ext, exhaustive, ungraded))


@catalog_app.command("list")
def catalog_list(dim: Optional[int] = typer.Option(None, "--dim")):
    """List catalog entries with type and annotations."""
    _emit(command_catalog_list(dim))


@catalog_app.command("show")
def catalog_show(name: str = typer.Argument(...)):
    """Print the multiplication table and annotations of one entry."""
    _emit(command_catalog_show(name))


@catalog_app.command("export")
def catalog_export(
    name: Optional[str] = typer.Argument(None),
    out: str = typer.Option(..., "--out", help="File, or directory with --dim"),
    dim: Optional[int] = typer.Option(None, "--dim"),
):
    """Write entries as .sca files."""
    _emit(command_catalog_export(name, out, dim))


@app.command()
def peirce(
    path: str = typer.Argument(...),
    idempotent: Optional[List[str]] = typer.Option(None, "--idempotent", help='e.g. "e1+e2"; repeat for --refined'),
    all_idempotents: bool = typer.Option(False, "--all", help="Every idempotent (finite fields only)"),
    refined: bool = typer.Option(False, "--refined", help="Refined decomposition for the given family"),
    field: Optional[int] = typer.Option(None, "--field"),
    ext: bool = typer.Option(False, "--ext"),
):
    """Peirce decomposition at an even idempotent."""
    _emit(command_peirce(path, idempotent, all_idempotents, refined, field, ext))


@app.command()
def iso(
    path_a: str = typer.Argument(...),
    path_b: str = typer.Argument(...),
    field: Optional[int] = typer.Option(None, "--field"),
    ext: bool = typer.Option(False, "--ext"),
    workers: Optional[int] = typer.Option(None, "--workers"),
):
    """Search for a graded isomorphism over a finite field."""
    _emit(command_iso(path_a, path_b, field, ext, workers))


@app.command("classify")
def classify_command(
    type_text: str = typer.Option(..., "--type", help="n,m"),
    even: Optional[str] = typer.Option(None, "--even", help="Even part, e.g. U1 or U2+U2"),
    field: Optional[int] = typer.Option(None, "--field"),
    ext: bool = typer.Option(False, "--ext", help="Allow matching over GF(p^2)"),
    out: Optional[str] = typer.Option(None, "--out", help="Directory for representatives"),
    workers: Optional[int] = typer.Option(None, "--workers"),
):
    """Enumerate a structure-constant template and split the solutions into orbits."""
    _emit(command_classify(type_text, even, field, ext, out, workers))


@app.command()
def special(
    witness: Optional[str] = typer.Option(None, "--witness", help="K3, S1_3, UT6, UT6-graded or S8_3"),
    search: Optional[str] = typer.Option(None, "--search", help="A .sca file to embed"),
    target: str = typer.Option("odd-weyl", "--target", help="odd-weyl, odd-weyl-anti, m11-weyl, m12 or a JSON file"),
    degree: Optional[int] = typer.Option(None, "--degree"),
    coefficients: Optional[str] = typer.Option(None, "--coefficients"),
    max_terms: Optional[int] = typer.Option(None, "--max-terms"),
):
    """Certify a built-in embedding or search for one."""
    _emit(command_special(witness, search, target, degree, coefficients, max_terms))


if __name__ == "__main__":
    app()
