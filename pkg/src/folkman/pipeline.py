"""Pipeline plumbing: graph6 stream IO, stage manifests, statistics
tables, and the named proof stages that chain the host filters, the
extension search, and the arrowing deciders.

Stages communicate through plain graph6 line files; every stage writes a
JSON manifest with fixed field order so that runs are diff-able. Output
files are canonically sorted, which makes digests independent of input
order and worker count.
"""

from __future__ import annotations

import gzip
import hashlib
import json
import os
import re
import sys
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Callable, Iterable, Iterator, Optional

from .arrowing import arrows_edge_33_joined, arrows_vertex_233
from .canon import canonical_form, dedup_stream
from .extender import SearchParams, plus_k3_subgraphs, run_algorithm1, sperner_branch
from .graph import (
    Graph,
    Graph6Error,
    decode_graph6,
    encode_graph6,
    has_k4,
    is_maximal_k4_free,
    is_plus_k3,
)
from .invariants import (
    chromatic_at_least,
    chromatic_number,
    clique_number,
    degree_profile,
    independence_number,
)

STAGE_NAMES = ("s5-branch", "s4-mid", "s4-plusk3", "s4-final", "fv233-upper", "lmax15")

MANIFEST_FIELDS = (
    "stage",
    "params",
    "inputs",
    "counters",
    "stage_counts",
    "wall_seconds",
    "outputs",
)

COUNTER_CHAIN = ("generated", "after_dedup", "after_chi", "after_arrow")

GRAPH6_HEADER = b">>graph6<<"


class StageError(Exception):
    """Unusable stage configuration or input data (maps to exit code 1)."""


class StreamError(Exception):
    """A graph6 line failed to parse (maps to exit code 2)."""

    def __init__(self, path: str, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = path
        self.line_no = line_no


class ExpectationError(Exception):
    """Observed counts disagree with the configured expectations (exit 3)."""

    def __init__(self, mismatches: list):
        super().__init__("; ".join(mismatches))
        self.mismatches = mismatches


# ---------------------------------------------------------------------------
# graph6 line IO


def _open_source(path: str):
    if path == "-":
        return sys.stdin.buffer
    if path.endswith(".gz"):
        return gzip.open(path, "rb")
    return open(path, "rb")


def iter_graph6_lines(path: str) -> Iterator[tuple[int, bytes]]:
    """Yield (line_no, payload) for every non-blank line, with the optional
    format header stripped; line numbers are 1-based."""
    source = _open_source(path)
    try:
        for line_no, raw in enumerate(source, start=1):
            line = raw.rstrip(b"\r\n")
            if line.startswith(GRAPH6_HEADER):
                line = line[len(GRAPH6_HEADER):]
            if not line:
                continue
            yield line_no, line
    finally:
        if source is not sys.stdin.buffer:
            source.close()


def stream_graphs(path: str, counter: Optional[dict] = None) -> Iterator[Graph]:
    """Decode a graph6 stream strictly; parse failures raise StreamError.
    When `counter` is given, its "lines" entry tracks the lines consumed."""
    for line_no, line in iter_graph6_lines(path):
        if counter is not None:
            counter["lines"] = counter.get("lines", 0) + 1
        try:
            yield decode_graph6(line)
        except Graph6Error as exc:
            raise StreamError(path, line_no, str(exc)) from exc


def load_graphs(path: str) -> list:
    return list(stream_graphs(path))


def file_sha256(path: str) -> Optional[str]:
    if path == "-":
        return None
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def input_record(name: str, path: str, lines: int) -> dict:
    return {"name": name, "path": path, "lines": lines, "sha256": file_sha256(path)}


def write_graph6(path: Path, graphs: Iterable[Graph], name: str = "output") -> dict:
    """Write one graph per line atomically and return the output record."""
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    digest = hashlib.sha256()
    lines = 0
    with open(tmp, "wb") as handle:
        for g in graphs:
            line = encode_graph6(g) + b"\n"
            handle.write(line)
            digest.update(line)
            lines += 1
    os.replace(tmp, path)
    return {"name": name, "path": str(path), "lines": lines, "sha256": digest.hexdigest()}


def write_text_atomic(path: Path, text: str) -> None:
    path = Path(path)
    tmp = path.with_name(path.name + ".tmp")
    with open(tmp, "w", encoding="utf-8") as handle:
        handle.write(text)
    os.replace(tmp, path)


# ---------------------------------------------------------------------------
# manifests and expectations


@dataclass
class StageManifest:
    stage: str
    params: dict
    inputs: list
    counters: dict
    stage_counts: dict
    wall_seconds: float
    outputs: list

    def __post_init__(self):
        chain = [self.counters[k] for k in COUNTER_CHAIN if k in self.counters]
        if any(a < b for a, b in zip(chain, chain[1:])):
            raise ValueError(f"counter chain increases: {self.counters}")

    def to_dict(self) -> dict:
        return {name: getattr(self, name) for name in MANIFEST_FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def write_manifest(manifest: StageManifest, path: Path) -> None:
    write_text_atomic(path, manifest.to_json())


def load_expectations(spec: str) -> dict:
    """Load an expected-count table; "builtin" means the packaged table."""
    if spec == "builtin":
        text = resources.files("folkman").joinpath("data/expected_counts.json").read_text()
    else:
        text = Path(spec).read_text(encoding="utf-8")
    table = json.loads(text)
    if not isinstance(table, dict):
        raise StageError("expectation file must contain a JSON object")
    return table


def expectation_key(stage: str, degree_prune: bool) -> str:
    return stage + ("+degree-prune" if degree_prune else "")


def check_expectations(manifest: StageManifest, table: dict) -> list:
    """Compare every configured counter for this stage variant against the
    manifest; returns a list of human-readable mismatches (empty = pass)."""
    key = expectation_key(manifest.stage, bool(manifest.params.get("degree_prune")))
    expected = table.get(key)
    if expected is None:
        return []
    observed = {**manifest.counters, **manifest.stage_counts}
    mismatches = []
    for name in sorted(expected):
        want = expected[name]
        got = observed.get(name)
        if got is None:
            mismatches.append(f"{key}: {name} expected {want}, not reported")
        elif got != want:
            mismatches.append(f"{key}: {name} expected {want}, got {got}")
    return mismatches


# ---------------------------------------------------------------------------
# statistics


STAT_FIELDS = ("edges", "min_degree", "max_degree", "alpha", "aut")

_STAT_LABELS = {
    "edges": "|E(G)|",
    "min_degree": "delta",
    "max_degree": "Delta",
    "alpha": "alpha",
    "aut": "|Aut(G)|",
}


@dataclass
class StatsTable:
    size: int
    histograms: dict

    def __post_init__(self):
        for name, hist in self.histograms.items():
            total = sum(hist.values())
            if total != self.size:
                raise ValueError(f"histogram {name} sums to {total}, stream has {self.size}")

    def to_dict(self) -> dict:
        return {
            "size": self.size,
            "histograms": {
                name: {str(k): self.histograms[name][k] for k in sorted(self.histograms[name])}
                for name in STAT_FIELDS
            },
        }


def compute_stats(graphs: Iterable[Graph]) -> StatsTable:
    hists = {name: {} for name in STAT_FIELDS}
    size = 0
    for g in graphs:
        size += 1
        profile = degree_profile(g)
        values = {
            "edges": profile.edge_count,
            "min_degree": profile.min_degree,
            "max_degree": profile.max_degree,
            "alpha": independence_number(g),
            "aut": canonical_form(g).aut_size,
        }
        for name, value in values.items():
            hists[name][value] = hists[name].get(value, 0) + 1
    return StatsTable(size=size, histograms=hists)


def render_stats(table: StatsTable) -> str:
    """Two-column value/count sections, one per invariant, values ascending,
    each section closed by a total row."""
    lines = [f"graphs: {table.size}"]
    for name in STAT_FIELDS:
        hist = table.histograms[name]
        label = _STAT_LABELS[name]
        lines.append("")
        lines.append(f"{label:>10}  #graphs")
        for value in sorted(hist):
            lines.append(f"{value:>10}  {hist[value]}")
        lines.append(f"{'total':>10}  {table.size}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# graph filters (used by cmd_ingest)


_FILTER_EVAL = {
    "n": lambda g: g.n,
    "e": lambda g: g.edge_count(),
    "omega": clique_number,
    "alpha": independence_number,
    "chi": chromatic_number,
    "delta": lambda g: degree_profile(g).min_degree,
    "Delta": lambda g: degree_profile(g).max_degree,
}

_FILTER_OPS = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
    "=": lambda a, b: a == b,
    "==": lambda a, b: a == b,
    "!=": lambda a, b: a != b,
}

_FILTER_RE = re.compile(r"^(\w+)\s*(<=|>=|==|!=|<|>|=)\s*(\d+)$")


def parse_filter(expr: str) -> Callable[[Graph], bool]:
    """Comma-separated conjunctive clauses over named invariants, e.g.
    "omega<4,alpha<4"; fields: n, e, omega, alpha, chi, delta, Delta."""
    clauses = []
    for part in expr.split(","):
        part = part.strip()
        if not part:
            continue
        match = _FILTER_RE.match(part)
        if match is None:
            raise StageError(f"bad filter clause: {part!r}")
        field, op, value = match.groups()
        if field not in _FILTER_EVAL:
            raise StageError(f"unknown filter field: {field!r}")
        clauses.append((_FILTER_EVAL[field], _FILTER_OPS[op], int(value)))
    def accept(g: Graph) -> bool:
        return all(op(fn(g), value) for fn, op, value in clauses)
    return accept


# ---------------------------------------------------------------------------
# ingest / dedup


INGEST_FIELDS = (
    "source",
    "source_sha256",
    "total_lines",
    "malformed_lines",
    "parsed",
    "after_dedup",
    "filter",
    "after_filter",
    "expected_count",
    "count_ok",
    "output",
)


def run_ingest(source: str, out_path: Path, *, expected_count: Optional[int] = None,
               filter_expr: Optional[str] = None, jobs: int = 1) -> dict:
    """Validate, canonicalize, dedup, and optionally filter a graph6 file;
    writes the cleaned file plus a provenance sidecar manifest. Malformed
    lines are recorded by index instead of aborting the run."""
    accept = parse_filter(filter_expr) if filter_expr else None
    graphs = []
    malformed = []
    total = 0
    for line_no, line in iter_graph6_lines(source):
        total += 1
        try:
            graphs.append(decode_graph6(line))
        except Graph6Error:
            malformed.append(line_no)
    deduped = dedup_stream(graphs, jobs=jobs)
    kept = [g for g in deduped if accept(g)] if accept else deduped
    record = write_graph6(out_path, kept)
    manifest = {
        "source": source,
        "source_sha256": file_sha256(source),
        "total_lines": total,
        "malformed_lines": malformed,
        "parsed": len(graphs),
        "after_dedup": len(deduped),
        "filter": filter_expr,
        "after_filter": len(kept),
        "expected_count": expected_count,
        "count_ok": expected_count is None or len(kept) == expected_count,
        "output": record,
    }
    ordered = {name: manifest[name] for name in INGEST_FIELDS}
    write_text_atomic(Path(str(out_path) + ".manifest.json"),
                      json.dumps(ordered, indent=2) + "\n")
    return ordered


# ---------------------------------------------------------------------------
# named stages


def _params_dict(params: SearchParams) -> dict:
    return {"n": params.n, "p": params.p, "s": params.s}


def _require_input(inputs: dict, key: str, stage: str) -> str:
    try:
        return inputs[key]
    except KeyError:
        raise StageError(f"stage {stage} requires --input {key}=<path>") from None


def _expect_order(g: Graph, n: int, stage: str, source: str) -> None:
    if g.n != n:
        raise StageError(f"stage {stage}: {source} holds a {g.n}-vertex graph, expected {n}")


def _min_degree(g: Graph) -> int:
    return degree_profile(g).min_degree


def _count_min_degree(graphs: list, bound: int) -> int:
    return sum(1 for g in graphs if _min_degree(g) >= bound)


def _load_hosts_for_extension(path: str, stage: str, key: str, order: int, s: int,
                              p_host: int, counter: dict) -> list:
    """Stream a host candidate file and keep the graphs that join-arrow with
    K_{p_host}, have the new-triangle property, no K4, and independence
    number at most s (cheap tests first)."""
    hosts = []
    for g in stream_graphs(path, counter):
        _expect_order(g, order, stage, key)
        if has_k4(g):
            continue
        if not is_plus_k3(g):
            continue
        if independence_number(g) > s:
            continue
        if not arrows_edge_33_joined(p_host, g):
            continue
        hosts.append(g)
    return hosts


def _stage_s5_branch(inputs: dict, outdir: Path, degree_prune: bool, jobs: int):
    """Hosts: the new-triangle members of the 14-vertex single-join family
    with independence number 4 or 5; extend to 19 vertices at s=5."""
    path = _require_input(inputs, "l14", "s5-branch")
    counter = {}
    a4 = a5 = 0
    hosts = []
    for g in stream_graphs(path, counter):
        _expect_order(g, 14, "s5-branch", "l14")
        if has_k4(g) or not is_plus_k3(g):
            continue
        alpha = independence_number(g)
        if alpha not in (4, 5):
            continue
        if not arrows_edge_33_joined(1, g):
            continue
        if alpha == 4:
            a4 += 1
        else:
            a5 += 1
        hosts.append(g)
    params = SearchParams(n=19, p=0, s=5, degree_prune=degree_prune)
    chi_survivors = []
    final, counters = run_algorithm1(hosts, params, jobs=jobs, chi_sink=chi_survivors)
    stage_counts = {
        "a4": a4,
        "a5": a5,
        "chi_min_degree_8": _count_min_degree(chi_survivors, 8),
    }
    records = [input_record("l14", path, counter.get("lines", 0))]
    outputs = [
        write_graph6(outdir / "s5-branch.g6", final),
        write_graph6(outdir / "s5-branch.chi.g6", chi_survivors, name="after_chi"),
    ]
    return _params_dict(params), records, counters, stage_counts, outputs


def _stage_s4_mid(inputs: dict, outdir: Path, degree_prune: bool, jobs: int):
    """Hosts: 11-vertex stream filtered on the fly to the double-join family
    with the new-triangle property and independence number 3 or 4; extend to
    15 vertices at s=4. The non-Sperner maximal survivors come out here."""
    path = inputs.get("stream", "-")
    counter = {}
    a3 = a4 = 0
    hosts = []
    for g in stream_graphs(path, counter):
        _expect_order(g, 11, "s4-mid", "stream")
        if has_k4(g) or not is_plus_k3(g):
            continue
        alpha = independence_number(g)
        if alpha not in (3, 4):
            continue
        if not arrows_edge_33_joined(2, g):
            continue
        if alpha == 3:
            a3 += 1
        else:
            a4 += 1
        hosts.append(g)
    params = SearchParams(n=15, p=1, s=4, degree_prune=degree_prune)
    chi_survivors = []
    final, counters = run_algorithm1(hosts, params, jobs=jobs, chi_sink=chi_survivors)
    stage_counts = {"a3": a3, "a4": a4}
    records = [input_record("stream", path, counter.get("lines", 0))]
    outputs = [
        write_graph6(outdir / "s4-mid.g6", final),
        write_graph6(outdir / "s4-mid.chi.g6", chi_survivors, name="after_chi"),
    ]
    return _params_dict(params), records, counters, stage_counts, outputs


def _stage_s4_plusk3(inputs: dict, outdir: Path, degree_prune: bool, jobs: int):
    """Assemble the full 15-vertex maximal family at s=4 (non-Sperner input
    plus vertex duplications) and at s=3 (from the Ramsey graphs), then run
    the edge-removal closure to the new-triangle members with independence
    number at most 4."""
    l14_path = _require_input(inputs, "l14", "s4-plusk3")
    ramsey_path = _require_input(inputs, "ramsey", "s4-plusk3")
    lmax4_path = _require_input(inputs, "lmax4", "s4-plusk3")

    counters_in = {"l14": {}, "ramsey": {}, "lmax4": {}}
    l14 = []
    for g in stream_graphs(l14_path, counters_in["l14"]):
        _expect_order(g, 14, "s4-plusk3", "l14")
        l14.append(g)
    maximal14 = [g for g in l14 if not has_k4(g) and is_maximal_k4_free(g)]

    params4 = SearchParams(n=15, p=1, s=4, degree_prune=degree_prune)
    sperner_members = sperner_branch(maximal14, params4)

    lmax3 = []
    for g in stream_graphs(ramsey_path, counters_in["ramsey"]):
        _expect_order(g, 15, "s4-plusk3", "ramsey")
        if has_k4(g) or not is_maximal_k4_free(g):
            continue
        if independence_number(g) != 3:
            continue
        if not chromatic_at_least(g, 5):
            continue
        if not arrows_edge_33_joined(1, g):
            continue
        lmax3.append(g)

    lmax4_in = []
    for g in stream_graphs(lmax4_path, counters_in["lmax4"]):
        _expect_order(g, 15, "s4-plusk3", "lmax4")
        lmax4_in.append(g)
    lmax4_full = dedup_stream(lmax4_in + sperner_members, jobs=jobs)

    roots = lmax4_full + lmax3
    a2 = plus_k3_subgraphs(roots, target_alpha_max=4, p=1)
    a2_s3 = [g for g in a2 if independence_number(g) == 3]
    a2_s4 = [g for g in a2 if independence_number(g) == 4]

    stage_counts = {
        "maximal_l14": len(maximal14),
        "sperner": len(sperner_members),
        "lmax_s3": len(lmax3),
        "lmax_s4": len(lmax4_full),
        "a2_s3": len(a2_s3),
        "a2_s4": len(a2_s4),
    }
    counters = {"generated": len(roots), "after_dedup": len(a2)}
    records = [
        input_record("l14", l14_path, counters_in["l14"].get("lines", 0)),
        input_record("lmax4", lmax4_path, counters_in["lmax4"].get("lines", 0)),
        input_record("ramsey", ramsey_path, counters_in["ramsey"].get("lines", 0)),
    ]
    outputs = [
        write_graph6(outdir / "s4-plusk3.g6", a2),
        write_graph6(outdir / "s4-plusk3.sperner.g6", sperner_members, name="sperner"),
        write_graph6(outdir / "s4-plusk3.lmax3.g6", lmax3, name="lmax3"),
        write_graph6(outdir / "s4-plusk3.lmax4.g6", lmax4_full, name="lmax4_full"),
    ]
    return _params_dict(params4), records, counters, stage_counts, outputs


def _stage_s4_final(inputs: dict, outdir: Path, degree_prune: bool, jobs: int):
    """Extend the 15-vertex host family to 19 vertices at s=4."""
    path = _require_input(inputs, "a2", "s4-final")
    counter = {}
    hosts = []
    for g in stream_graphs(path, counter):
        _expect_order(g, 15, "s4-final", "a2")
        hosts.append(g)
    params = SearchParams(n=19, p=0, s=4, degree_prune=degree_prune)
    chi_survivors = []
    final, counters = run_algorithm1(hosts, params, jobs=jobs, chi_sink=chi_survivors)
    stage_counts = {"chi_min_degree_8": _count_min_degree(chi_survivors, 8)}
    records = [input_record("a2", path, counter.get("lines", 0))]
    outputs = [
        write_graph6(outdir / "s4-final.g6", final),
        write_graph6(outdir / "s4-final.chi.g6", chi_survivors, name="after_chi"),
    ]
    return _params_dict(params), records, counters, stage_counts, outputs


def _stage_fv233_upper(inputs: dict, outdir: Path, degree_prune: bool, jobs: int):
    """Scan a candidate file for K4-free graphs whose vertex colorings in
    classes (2,3,3) all fail; reports members grouped by order."""
    path = _require_input(inputs, "candidates", "fv233-upper")
    counter = {}
    members = []
    candidates = 0
    for g in stream_graphs(path, counter):
        candidates += 1
        if has_k4(g):
            continue
        if arrows_vertex_233(g):
            members.append(g)
    members = dedup_stream(members, jobs=jobs)
    stage_counts = {"candidates": candidates, "members": len(members)}
    for g in members:
        key = f"members_{g.n}"
        stage_counts[key] = stage_counts.get(key, 0) + 1
    counters = {"generated": candidates, "after_arrow": len(members)}
    records = [input_record("candidates", path, counter.get("lines", 0))]
    outputs = [write_graph6(outdir / "fv233-upper.g6", members)]
    return {}, records, counters, stage_counts, outputs


def _stage_lmax15(inputs: dict, outdir: Path, degree_prune: bool, jobs: int):
    """Sweep of the maximal 15-vertex single-join family by independence
    number. s=3 and s=4 members arrive as files (from the Ramsey filter and
    the s=4 branch); each s in 5..7 is computed from a host stream of order
    15-s plus vertex duplications of the 14-vertex maximal members."""
    records = []
    outputs = []
    stage_counts = {}
    all_members = []

    for key, label, order in (("lmax3", "s3", 15), ("lmax4", "s4", 15)):
        if key not in inputs:
            continue
        counter = {}
        graphs = []
        for g in stream_graphs(inputs[key], counter):
            _expect_order(g, order, "lmax15", key)
            graphs.append(g)
        records.append(input_record(key, inputs[key], counter.get("lines", 0)))
        stage_counts[label] = len(graphs)
        all_members.extend(graphs)

    maximal14 = []
    if "l14max" in inputs:
        counter = {}
        for g in stream_graphs(inputs["l14max"], counter):
            _expect_order(g, 14, "lmax15", "l14max")
            if not has_k4(g) and is_maximal_k4_free(g):
                maximal14.append(g)
        records.append(input_record("l14max", inputs["l14max"], counter.get("lines", 0)))

    for s, key in ((5, "hosts10"), (6, "hosts9"), (7, "hosts8")):
        if key not in inputs:
            continue
        counter = {}
        hosts = _load_hosts_for_extension(inputs[key], "lmax15", key, 15 - s, s, 2, counter)
        records.append(input_record(key, inputs[key], counter.get("lines", 0)))
        params = SearchParams(n=15, p=1, s=s, degree_prune=degree_prune)
        non_sperner, _ = run_algorithm1(hosts, params, jobs=jobs)
        sperner_members = sperner_branch(maximal14, params) if maximal14 else []
        merged = dedup_stream(non_sperner + sperner_members, jobs=jobs)
        stage_counts[f"s{s}"] = len(merged)
        outputs.append(write_graph6(outdir / f"lmax15.s{s}.g6", merged, name=f"s{s}"))
        all_members.extend(merged)

    if all(f"s{s}" in stage_counts for s in range(3, 8)):
        stage_counts["total"] = sum(stage_counts[f"s{s}"] for s in range(3, 8))

    union = dedup_stream(all_members, jobs=jobs)
    counters = {"after_dedup": len(union)}
    outputs.insert(0, write_graph6(outdir / "lmax15.g6", union))
    return {"n": 15, "p": 1}, records, counters, stage_counts, outputs


_STAGE_RUNNERS = {
    "s5-branch": _stage_s5_branch,
    "s4-mid": _stage_s4_mid,
    "s4-plusk3": _stage_s4_plusk3,
    "s4-final": _stage_s4_final,
    "fv233-upper": _stage_fv233_upper,
    "lmax15": _stage_lmax15,
}


def run_stage(stage: str, inputs: dict, outdir, *, degree_prune: bool = False,
              jobs: int = 1) -> StageManifest:
    """Run one named stage; writes its graph6 outputs and manifest under
    `outdir` and returns the manifest."""
    if stage not in _STAGE_RUNNERS:
        raise StageError(f"unknown stage {stage!r}; expected one of {', '.join(STAGE_NAMES)}")
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    started = time.monotonic()
    params, records, counters, stage_counts, outputs = _STAGE_RUNNERS[stage](
        inputs, outdir, degree_prune, jobs)
    manifest = StageManifest(
        stage=stage,
        params={**params, "degree_prune": degree_prune, "jobs": jobs},
        inputs=records,
        counters=counters,
        stage_counts=stage_counts,
        wall_seconds=round(time.monotonic() - started, 3),
        outputs=outputs,
    )
    write_manifest(manifest, outdir / f"{stage}.manifest.json")
    return manifest
