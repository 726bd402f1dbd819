"""Command line client for the service.

Every subcommand posts one request, either to an in-process application
(default) or to a remote server via --server. Output is the verbatim JSON
response by default; --format text renders a short human-readable summary,
--format svg extracts the drawing from the arrangement response.
"""

from __future__ import annotations

import asyncio
import json
import sys
from typing import Optional

import click
import httpx


def _post(server: Optional[str], path: str, payload: dict) -> httpx.Response:
    async def go() -> httpx.Response:
        if server:
            async with httpx.AsyncClient(base_url=server, timeout=300.0) as client:
                return await client.post(path, json=payload)
        from .service import app
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://service.internal",
                                     timeout=300.0) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise click.UsageError(f"cannot read JSON file {path}: {exc}")


def _parse_csv_list(text: Optional[str]) -> Optional[list[str]]:
    if text is None:
        return None
    return [part.strip() for part in text.split(",")]


def _parse_int_csv(text: Optional[str]) -> Optional[list[int]]:
    parts = _parse_csv_list(text)
    if parts is None:
        return None
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise click.UsageError(f"expected comma-separated integers, got {text!r}")


def _emit(command: str, resp: httpx.Response, fmt: str,
          output: Optional[str]) -> None:
    if resp.status_code != 200:
        click.echo(resp.text)
        sys.exit(1)
    if fmt == "svg":
        data = resp.json()
        svg = data.get("svg")
        if svg is None:
            raise click.UsageError("this command has no svg output")
        text = svg
    elif fmt == "text":
        text = _render_text(command, resp.json())
    else:
        text = resp.text
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        click.echo(text)


def _render_text(command: str, data: dict) -> str:
    lines: list[str] = []
    if command == "lattice":
        lines.append(f"n={data['n']} d={data['d']}")
        for col in data["basis"]:
            lines.append("basis " + " ".join(str(e) for e in col))
    elif command in ("toric", "groebner"):
        for g in data.get("generators", data.get("elements", [])):
            lines.append(g["display"])
        if "initial_generators" in data:
            lines.append("initial: " + "; ".join(
                str(tuple(m)) for m in data["initial_generators"]))
    elif command == "standard-pairs":
        for p in data["pairs"]:
            lines.append(p["display"])
    elif command == "fake-exponents":
        for e in data["exponents"]:
            flags = []
            if e.get("minimal_negative_support"):
                flags.append(f"minimal={e['minimal_negative_support']}")
            if e.get("smallest_weight_in_class"):
                flags.append("smallest-weight")
            lines.append("(" + ",".join(e["v"]) + ") " + " ".join(flags))
    elif command == "ns-classes":
        for cls in data["classifications"]:
            lines.append("v=(" + ",".join(cls["v"]) + ")")
            lines.append("  positive: " + " ".join(
                "{" + ",".join(map(str, s)) + "}" for s in cls["positive"]))
            lines.append("  complement: " + " ".join(
                "{" + ",".join(map(str, s)) + "}" for s in cls["complement"]))
            lines.append(
                f"  m={cls['min_support_size']} M={cls['min_crossing_size']} "
                f"certified={cls['all_certified']}")
    elif command in ("phi", "frobenius1", "frobenius1-combo", "frobenius2"):
        doc = data["series"]
        lines.append(f"exponent=(" + ",".join(doc["exponent"]) + ")")
        lines.append(f"terms={doc['term_count']} "
                     f"log_degree={doc['max_log_degree']} "
                     f"complete={doc['complete']}")
        if doc.get("starting_monomial"):
            lines.append("starting: " + doc["starting_monomial"])
        for term in doc["terms"]:
            poly = " + ".join(
                f"{t['coefficient']}*L^{tuple(t['exponents'])}"
                if any(t["exponents"]) else t["coefficient"]
                for t in term["log_poly"])
            lines.append("  x^(" + ",".join(term["exponent"]) + "): " + poly)
    elif command == "verify":
        lines.append("PASS" if data["passed"] else "FAIL")
        for op in data["operators"]:
            mark = "ok" if op["passed"] else "FAIL"
            lines.append(f"  [{mark}] {op['kind']}: {op['label']} "
                         f"(excluded {op['excluded_terms']})")
    else:
        lines.append(json.dumps(data, indent=2))
    return "\n".join(lines)


def common_options(fn):
    fn = click.option("--output", "-o", type=click.Path(dir_okay=False),
                      default=None, help="Write the result to a file.")(fn)
    fn = click.option("--format", "fmt",
                      type=click.Choice(["json", "text", "svg"]),
                      default="json", help="Output format.")(fn)
    fn = click.option("--server", default=None, metavar="URL",
                      help="Post to a running server instead of in-process.")(fn)
    fn = click.option("--problem", "-P", "problem_path", required=True,
                      type=click.Path(exists=True, dir_okay=False),
                      help="Problem file (JSON).")(fn)
    return fn


def series_options(fn):
    fn = click.option("--restrict-ns", "restrict_path",
                      type=click.Path(exists=True, dir_okay=False),
                      default=None,
                      help="JSON file with the supports to keep (1-based).")(fn)
    fn = click.option("--s-degree", type=int, default=None,
                      help="Expansion degree in the perturbation variables.")(fn)
    fn = click.option("--weight-cap", default=None,
                      help="Truncation weight cap (rational).")(fn)
    fn = click.option("--radius", type=int, default=None,
                      help="Gale coordinate box radius.")(fn)
    return fn


@click.group()
def main() -> None:
    """Exact series solutions of regular hypergeometric systems."""


def _base_payload(problem_path: str) -> dict:
    return {"problem": _load_json(problem_path)}


def _maybe(payload: dict, **kwargs) -> dict:
    for key, value in kwargs.items():
        if value is not None:
            payload[key] = value
    return payload


@main.command()
@common_options
def lattice(problem_path, server, fmt, output):
    """Kernel lattice basis and dual rows."""
    resp = _post(server, "/v1/lattice", _base_payload(problem_path))
    _emit("lattice", resp, fmt, output)


@main.command()
@common_options
def toric(problem_path, server, fmt, output):
    """Saturated binomial generators."""
    resp = _post(server, "/v1/toric", _base_payload(problem_path))
    _emit("toric", resp, fmt, output)


@main.command()
@common_options
def groebner(problem_path, server, fmt, output):
    """Reduced basis under the weight order and its initial ideal."""
    resp = _post(server, "/v1/groebner", _base_payload(problem_path))
    _emit("groebner", resp, fmt, output)


@main.command("standard-pairs")
@common_options
def standard_pairs_cmd(problem_path, server, fmt, output):
    """Standard pairs of the initial ideal."""
    resp = _post(server, "/v1/standard-pairs", _base_payload(problem_path))
    _emit("standard-pairs", resp, fmt, output)


@main.command("fake-exponents")
@common_options
@click.option("--radius", type=int, default=None)
def fake_exponents_cmd(problem_path, server, fmt, output, radius):
    """Exponents attached to the standard pairs, with minimality flags."""
    payload = _maybe(_base_payload(problem_path), radius=radius)
    resp = _post(server, "/v1/fake-exponents", payload)
    _emit("fake-exponents", resp, fmt, output)


@main.command("ns-classes")
@common_options
@click.option("--exponent", default=None, metavar="Q,Q,...",
              help="Classify only this exponent.")
@click.option("--radius", type=int, default=None)
@click.option("--restrict-ns", "restrict_path",
              type=click.Path(exists=True, dir_okay=False), default=None)
def ns_classes_cmd(problem_path, server, fmt, output, exponent, radius,
                   restrict_path):
    """Negative support classification with certificates."""
    payload = _maybe(_base_payload(problem_path),
                     exponent=_parse_csv_list(exponent), radius=radius,
                     restrict=_load_json(restrict_path) if restrict_path else None)
    resp = _post(server, "/v1/ns-classes", payload)
    _emit("ns-classes", resp, fmt, output)


@main.command()
@common_options
@click.option("--exponent", default=None, metavar="Q,Q,...")
@click.option("--radius", type=int, default=None)
@click.option("--weight-cap", default=None)
@click.option("--allow-nonminimal", is_flag=True, default=False,
              help="Build the naive series even off minimal support.")
def phi(problem_path, server, fmt, output, exponent, radius, weight_cap,
        allow_nonminimal):
    """Log-free series with unit coefficient at the exponent."""
    payload = _maybe(_base_payload(problem_path),
                     exponent=_parse_csv_list(exponent), radius=radius,
                     weight_cap=weight_cap)
    if allow_nonminimal:
        payload["allow_nonminimal"] = True
    resp = _post(server, "/v1/phi", payload)
    _emit("phi", resp, fmt, output)


@main.command()
@common_options
@series_options
@click.option("--exponent", default=None, metavar="Q,Q,...")
@click.option("--b", "b_text", default=None, metavar="Z,Z,...",
              help="Perturbation direction (defaults to the problem file).")
@click.option("--j", type=int, default=0, help="Derivative order.")
def frobenius1(problem_path, server, fmt, output, radius, weight_cap,
               s_degree, restrict_path, exponent, b_text, j):
    """Single-direction logarithmic solution of derivative order j."""
    payload = _maybe(_base_payload(problem_path),
                     exponent=_parse_csv_list(exponent),
                     b=_parse_int_csv(b_text), j=j, radius=radius,
                     weight_cap=weight_cap, s_degree=s_degree,
                     restrict=_load_json(restrict_path) if restrict_path else None)
    resp = _post(server, "/v1/frobenius1", payload)
    _emit("frobenius1", resp, fmt, output)


@main.command("frobenius1-combo")
@common_options
@series_options
@click.option("--exponent", default=None, metavar="Q,Q,...")
@click.option("--b", "b_texts", multiple=True, metavar="Z,Z,...",
              help="Perturbation direction, repeatable.")
def frobenius1_combo(problem_path, server, fmt, output, radius, weight_cap,
                     s_degree, restrict_path, exponent, b_texts):
    """Boundary-order solution from directions with vanishing condition sums."""
    bs = [_parse_int_csv(t) for t in b_texts] or None
    payload = _maybe(_base_payload(problem_path),
                     exponent=_parse_csv_list(exponent), bs=bs, radius=radius,
                     weight_cap=weight_cap, s_degree=s_degree,
                     restrict=_load_json(restrict_path) if restrict_path else None)
    resp = _post(server, "/v1/frobenius1-combo", payload)
    _emit("frobenius1-combo", resp, fmt, output)


@main.command()
@common_options
@series_options
@click.option("--exponent", default=None, metavar="Q,Q,...")
@click.option("--b", "b_texts", multiple=True, metavar="Z,Z,...",
              help="Perturbation direction, repeatable.")
@click.option("--p", "p_text", required=True, metavar="N,N,...",
              help="Derivative multi-order, one entry per direction.")
def frobenius2(problem_path, server, fmt, output, radius, weight_cap,
               s_degree, restrict_path, exponent, b_texts, p_text):
    """Multi-direction logarithmic solution of derivative multi-order p."""
    bs = [_parse_int_csv(t) for t in b_texts] or None
    payload = _maybe(_base_payload(problem_path),
                     exponent=_parse_csv_list(exponent), bs=bs,
                     p=_parse_int_csv(p_text), radius=radius,
                     weight_cap=weight_cap, s_degree=s_degree,
                     restrict=_load_json(restrict_path) if restrict_path else None)
    resp = _post(server, "/v1/frobenius2", payload)
    _emit("frobenius2", resp, fmt, output)


@main.command()
@common_options
@click.option("--series", "series_path", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Series document (or a saved series response).")
@click.option("--margin", default=None,
              help="Override the operator weight margin (rational).")
def verify(problem_path, server, fmt, output, series_path, margin):
    """Check annihilation of a saved series by the system's operators."""
    doc = _load_json(series_path)
    if "series" in doc and isinstance(doc["series"], dict):
        doc = doc["series"]
    payload = _maybe(_base_payload(problem_path), series=doc, margin=margin)
    resp = _post(server, "/v1/verify", payload)
    _emit("verify", resp, fmt, output)


@main.command()
@common_options
@click.option("--exponent", default=None, metavar="Q,Q,...")
@click.option("--window", type=int, default=None,
              help="Half-width of the drawing window.")
def arrangement(problem_path, server, fmt, output, exponent, window):
    """SVG of the coordinate hyperplane arrangement for an exponent."""
    payload = _maybe(_base_payload(problem_path),
                     exponent=_parse_csv_list(exponent), window=window)
    resp = _post(server, "/v1/arrangement", payload)
    _emit("arrangement", resp, fmt, output)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import app
    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
