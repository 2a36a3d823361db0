"""Deterministic JSON and DOT output."""

import json

from . import __version__


def dumps(obj):
    """Canonical JSON text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, sort_keys=True, default=str, ensure_ascii=False) + "\n"


def report_header(config):
    return {"quiver": config.quiver_name, "field": config.field, "W": config.weight_bound,
            "degree_window": list(config.degree_window), "version": __version__}


def _node_label(M):
    if M.provenance in ("", "e"):
        return "Γ"
    return M.provenance


def export_dot(slc):
    """The interval as a DOT digraph; nodes carry g-vectors and provenance."""
    lines = [f'digraph "silt_interval_n{slc.n}" {{', "  rankdir=TB;",
             '  node [shape=box, fontname="monospace"];']
    for k, M in enumerate(slc.nodes):
        g = ",".join(str(x) for x in M.g_vector())
        label = _node_label(M) if k == 0 else f"{_node_label(M)}\\ng=({g})"
        lines.append(f'  n{k} [label="{label}"];')
    for a, b, lab in slc.edges:
        lines.append(f'  n{a} -> n{b} [label="{lab}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_json(slc, header=None):
    data = slc.to_json()
    if header:
        data = {**header, **data}
    return dumps(data)
