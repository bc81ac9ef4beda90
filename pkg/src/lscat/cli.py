"""lscat command line: invariant computation, axiom/relation checks,
verification runs, and the demo catalog.

JSON is the wire format; markdown is a rendering of the same data.  Every
report embeds its manifest, so feeding the same inputs back reproduces it
byte for byte.
"""
from __future__ import annotations

import json
import os
import sys

import click

from . import cohom, cover, framework, harness
from .finspace import (DEFAULT_BFS_CAP, DEFAULT_ORACLE_CAP, SpaceError,
                       UndecidedError, builtin_space, builtin_space_names,
                       load_space)

INVARIANTS = ("nu_H", "nu_LS", "nu_c", "nu_CL", "cuplength")


def _threads() -> int:
    """LSCAT_THREADS bounds the worker count; execution is sequential and
    deterministic regardless, so the bound is validated but never exceeded,
    and it is deliberately kept out of reports to keep them byte-stable."""
    raw = os.environ.get("LSCAT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise click.UsageError(f"LSCAT_THREADS must be an integer, got {raw!r}")


def _resolve_space(name_or_path: str):
    try:
        return builtin_space(name_or_path)
    except SpaceError:
        pass
    if not os.path.exists(name_or_path):
        raise click.UsageError(
            f"{name_or_path!r} is neither a builtin space nor a file")
    try:
        return load_space(name_or_path)
    except SpaceError as exc:
        raise click.UsageError(str(exc))


def _resolve_complex(name_or_path: str):
    try:
        return cohom.builtin_complex(name_or_path)
    except SpaceError:
        pass
    if not os.path.exists(name_or_path):
        raise click.UsageError(
            f"{name_or_path!r} is neither a builtin complex nor a file")
    try:
        return cohom.load_complex(name_or_path)
    except SpaceError as exc:
        raise click.UsageError(str(exc))


def _jsonable(value):
    return "inf" if value == cover.INF else value


def _render_markdown(data, depth=1) -> str:
    lines = []
    if isinstance(data, dict):
        for key, val in data.items():
            if isinstance(val, (dict, list)) and val:
                lines.append(f"{'#' * min(depth, 5)} {key}")
                lines.append(_render_markdown(val, depth + 1))
            else:
                lines.append(f"- **{key}**: {json.dumps(val)}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)):
                lines.append(_render_markdown(item, depth + 1))
            else:
                lines.append(f"- {json.dumps(item)}")
    else:
        lines.append(json.dumps(data))
    return "\n".join(lines)


def _emit(report: dict, fmt: str, out: str | None):
    if fmt == "json":
        text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    else:
        text = _render_markdown(report) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@click.group()
def main():
    """Ljusternik-Schnirelmann categories on finite spaces."""


@main.command()
@click.option("--space", "space_name", default=None,
              help="builtin space name or JSON file")
@click.option("--complex", "complex_name", default=None,
              help="builtin complex name or JSON file (cuplength only)")
@click.option("--invariant", default="all",
              type=click.Choice(INVARIANTS + ("all",)))
@click.option("--subset", default="full",
              help="comma-separated point labels, 'full', or '' for empty")
@click.option("--cap-maps", default=DEFAULT_BFS_CAP, type=int)
@click.option("--format", "fmt", default="json",
              type=click.Choice(["json", "markdown"]))
@click.option("--out", default=None, type=click.Path())
@click.option("--figures", default=None, type=click.Path(),
              help="directory for rendered figures")
def compute(space_name, complex_name, invariant, subset, cap_maps, fmt, out,
            figures):
    """Compute covering/cohomological invariants of a subset."""
    if (space_name is None) == (complex_name is None):
        raise click.UsageError("give exactly one of --space or --complex")
    manifest = {"command": "compute", "space": space_name,
                "complex": complex_name, "invariant": invariant,
                "subset": subset, "cap_maps": cap_maps}
    if complex_name is not None:
        if invariant not in ("cuplength", "all"):
            raise click.UsageError(
                "direct complexes support --invariant cuplength only")
        K = _resolve_complex(complex_name)
        data = cohom.CohomologyData(K)
        full = (1 << len(K.vertices)) - 1
        report = {
            "manifest": manifest,
            "results": {"cuplength": {
                "value": cohom.cuplength_of_complex(data, full),
                "status": "ok"}},
            "betti_f2": data.betti,
        }
        _emit(report, fmt, out)
        return

    S = _resolve_space(space_name)
    try:
        bits = S.parse_subset(subset)
    except SpaceError as exc:
        raise click.UsageError(str(exc))
    wanted = INVARIANTS if invariant == "all" else (invariant,)
    results = {}
    witness_for_figure = None
    for name in wanted:
        try:
            if name == "nu_H":
                value, witness = cover.nu_H(S, bits, cap_maps)
            elif name == "nu_LS":
                value, witness = cover.nu_LS(S, bits, cap_maps)
            elif name == "nu_c":
                value, witness = cohom.nu_c(S, bits)
            elif name == "nu_CL":
                value, witness = cohom.nu_CL(S, bits), None
            else:
                value, witness = cohom.cuplength(S, bits) if bits else 0, None
            entry = {"value": _jsonable(value), "status": "ok"}
            if witness is not None:
                entry["witness"] = [S.subset_labels(w) for w in witness]
                if witness_for_figure is None and witness:
                    witness_for_figure = witness
            results[name] = entry
        except UndecidedError:
            results[name] = {"value": None, "status": "undecided"}
    report = {"manifest": manifest, "results": results}
    if figures:
        from . import plots
        os.makedirs(figures, exist_ok=True)
        fig = plots.hasse_figure(S, witness_for_figure,
                                 title=f"{space_name}: {subset}")
        path = os.path.join(figures, "space.png")
        plots.save(fig, path)
        report["figures"] = [path]
    _emit(report, fmt, out)


@main.command()
@click.option("--space", "space_name", required=True)
@click.option("--nu", "nu_name", required=True,
              type=click.Choice(["nu_H", "nu_LS", "nu_c", "nu_CL"]))
@click.option("--cap-maps", default=DEFAULT_BFS_CAP, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--format", "fmt", default="json",
              type=click.Choice(["json", "markdown"]))
@click.option("--out", default=None, type=click.Path())
def axioms(space_name, nu_name, cap_maps, seed, fmt, out):
    """Run the axiom checkers for one category on one space."""
    S = _resolve_space(space_name)
    nu = framework.STANDARD_CATEGORIES[nu_name](S, cap_maps)
    report = framework.check_axioms(nu, map_cap=cap_maps, seed=seed)
    report = {"manifest": {"command": "axioms", "space": space_name,
                           "nu": nu_name, "seed": seed,
                           "cap_maps": cap_maps},
              "report": report}
    _emit(report, fmt, out)


@main.command()
@click.option("--space", "space_name", required=True)
@click.option("--check", "check_name", required=True,
              help="galois_identities | closure_equality | t_bound:n | chain")
@click.option("--cap-maps", default=DEFAULT_BFS_CAP, type=int)
@click.option("--seed", default=0, type=int)
@click.option("--format", "fmt", default="json",
              type=click.Choice(["json", "markdown"]))
@click.option("--out", default=None, type=click.Path())
def relations(space_name, check_name, cap_maps, seed, fmt, out):
    """Verify one of the proved relations on one space."""
    S = _resolve_space(space_name)
    if check_name == "galois_identities":
        nu = framework.category_nu_H(S, cap_maps)
        all_opens = cover.TCollectionSpec.from_family(S, "all_opens",
                                                      S.open_sets())
        body = framework.check_galois_identities(nu=nu, T=all_opens, seed=seed)
    elif check_name == "closure_equality":
        body = framework.check_closure_equality(S, cap_maps)
    elif check_name.startswith("t_bound"):
        try:
            n = int(check_name.split(":", 1)[1]) if ":" in check_name else 1
        except ValueError:
            raise click.UsageError("t_bound takes an integer, e.g. t_bound:2")
        body = framework.check_t_cover_bound(
            framework.category_nu_H(S, cap_maps), n, seed=seed)
    elif check_name == "chain":
        body = harness.run_chain_suite([S], seed=seed)
    else:
        raise click.UsageError(f"unknown check {check_name!r}")
    report = {"manifest": {"command": "relations", "space": space_name,
                           "check": check_name, "seed": seed,
                           "cap_maps": cap_maps},
              "report": body}
    _emit(report, fmt, out)


@main.command()
@click.option("--seed", default=42, type=int)
@click.option("--sizes", default="3..6", help="size range, e.g. 3..7")
@click.option("--count", default=40, type=int)
@click.option("--cap-maps", default=DEFAULT_BFS_CAP, type=int)
@click.option("--cap-oracle", default=DEFAULT_ORACLE_CAP, type=int)
@click.option("--format", "fmt", default="json",
              type=click.Choice(["json", "markdown"]))
@click.option("--out", default=None, type=click.Path())
@click.option("--figures", default=None, type=click.Path())
def verify(seed, sizes, count, cap_maps, cap_oracle, fmt, out, figures):
    """Run every suite on a seeded random space population."""
    try:
        lo, hi = (int(part) for part in sizes.split(".."))
    except ValueError:
        raise click.UsageError("--sizes expects the form lo..hi")
    cfg = harness.GenConfig(seed=seed, size_min=lo, size_max=hi, count=count,
                            cap_maps=cap_maps, cap_oracle=cap_oracle)
    _threads()  # validate the env var; execution is deterministic regardless
    report = harness.run_full_report(cfg)
    if figures:
        from . import plots
        os.makedirs(figures, exist_ok=True)
        path = os.path.join(figures, "suite_summary.png")
        plots.save(plots.suite_summary_figure(report), path)
        report["figures"] = [path]
    _emit(report, fmt, out)
    if report["status"] != "pass":
        sys.exit(1)


DEMO_CATALOG = [
    {"name": "circle4", "kind": "space",
     "expected": {"nu_H": 2, "nu_LS": 2, "nu_c": 2, "nu_CL": 2,
                  "cuplength": 2},
     "provenance": "derived: exhaustive cover search + cohomology"},
    {"name": "chain(k)", "kind": "space",
     "expected": {"nu_H": 1, "nu_LS": 1, "nu_c": 1, "nu_CL": 1},
     "provenance": "trivial: cones are contractible"},
    {"name": "antichain(k)", "kind": "space",
     "expected": {"nu_H": "k for the full set"},
     "provenance": "trivial: components must be covered separately"},
    {"name": "sphere(n)", "kind": "space",
     "expected": {"betti_f2": "(1, 0, ..., 0, 1)"},
     "provenance": "derived: minimal 2n+2-point model"},
    {"name": "wedge2circles", "kind": "space",
     "expected": {"betti_f2": "(1, 2)", "nu_H": 2},
     "provenance": "derived: rank computation"},
    {"name": "torus16", "kind": "space",
     "expected": {"betti_f2": "(1, 2, 1)", "cuplength": 3},
     "provenance": "derived: cup products on the product order"},
    {"name": "rp2_6", "kind": "complex",
     "expected": {"betti_f2": "(1, 1, 1)", "cuplength": 3},
     "provenance": "derived: cup square of the degree-1 generator"},
    {"name": "torus7", "kind": "complex",
     "expected": {"betti_f2": "(1, 2, 1)", "cuplength": 3},
     "provenance": "derived: product of the two degree-1 generators"},
]


@main.command()
@click.option("--format", "fmt", default="json",
              type=click.Choice(["json", "markdown"]))
def demo(fmt):
    """List builtin spaces/complexes with expected invariant values."""
    report = {"builtin_spaces": builtin_space_names(),
              "builtin_complexes": cohom.builtin_complex_names(),
              "catalog": DEMO_CATALOG}
    _emit(report, fmt, None)


if __name__ == "__main__":
    main()
