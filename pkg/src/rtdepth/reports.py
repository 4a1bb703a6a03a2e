"""Aligned text tables built from run records.

Every table is rendered from the same list of dicts that the JSON-lines
output contains, so re-reading a JSON-lines file reproduces the table.
"""

import json

__all__ = ["format_table", "config_preamble"]

_DIST_LABEL = {
    "gaussian": "Gaussian",
    "double_exponential": "D. expon.",
    "cauchy": "Cauchy",
}


def _align(rows):
    widths = [max(len(str(r[j])) for r in rows) for j in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [str(c).ljust(w) if j == 0 else str(c).rjust(w)
                 for j, (c, w) in enumerate(zip(r, widths))]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines)


def config_preamble(records):
    """Comment lines with the resolved configuration of the first record."""
    if not records or "config" not in records[0]:
        return ""
    cfg = json.dumps(records[0]["config"], sort_keys=True)
    return f"# config: {cfg}\n"


def _ordered(values):
    return sorted(set(values), key=lambda v: (str(type(v)), v))


def _calibration(records):
    ns = _ordered(r["n"] for r in records)
    cells = {(r["p"], r["distribution"], r["n"]): r for r in records}
    rows = [["dimension", "distribution", ""] + [str(n) for n in ns]]
    for p in _ordered(r["p"] for r in records):
        for dist in [d for d in _DIST_LABEL if any(
                r["distribution"] == d and r["p"] == p for r in records)]:
            mean = [f"p={p}", _DIST_LABEL[dist], "mean"]
            pct = ["", "", "95% pct"]
            for n in ns:
                c = cells.get((p, dist, n))
                if c is None:
                    mean.append("")
                    pct.append("")
                elif c["degenerate"]:
                    mean.append("*")
                    pct.append("*")
                else:
                    mean.append(f"{c['mean_k0']:.2f}")
                    pct.append(str(c["pct95_k0"]))
            rows += [mean, pct]
    return _align(rows)


def _cov_det(records):
    ns = _ordered(r["n"] for r in records)
    cells = {(r["p"], r["n"]): r for r in records}
    rows = [["dimension"] + [str(n) for n in ns]]
    for p in _ordered(r["p"] for r in records):
        row = [f"p={p}"]
        for n in ns:
            c = cells.get((p, n))
            if c is None:
                row.append("")
            elif n <= p:
                row.append("*")
            else:
                row.append(f"{c['mean_det']:.3f}")
        rows.append(row)
    return _align(rows)


def _power(records):
    dists = [d for d in _DIST_LABEL if any(r["distribution"] == d for r in records)]
    keys = []
    for r in records:
        key = (tuple(r["n"]), r["k_random"], tuple(r["r"]))
        if key not in keys:
            keys.append(key)
    cells = {}
    for r in records:
        key = (tuple(r["n"]), r["k_random"], tuple(r["r"]), r["distribution"])
        cells.setdefault(key, {})[r["backend"]] = r
    rows = [["n", "k", "r"] + [_DIST_LABEL[d] for d in dists]]
    for n, k, rr in keys:
        row = ["/".join(map(str, n)), str(k), ",".join(f"{x:g}" for x in rr)]
        for d in dists:
            c = cells.get((n, k, rr, d), {})
            parts = []
            if "random" in c:
                parts.append(f"{c['random']['rate']:.3f}")
            if "dense1000" in c:
                parts.append(f"({c['dense1000']['rate']:.3f})")
            row.append(" ".join(parts))
        rows.append(row)
    return _align(rows)


def _depth(records):
    cols = [c for c in ("random_tukey", "mahalanobis", "exact_tukey")
            if any(c in r for r in records)]
    rows = [["row"] + cols]
    for r in records:
        row = [str(r["row"])]
        for c in cols:
            v = r.get(c)
            row.append("error" if v is None and f"{c}_error" in r else
                       "" if v is None else f"{v:.6f}")
        rows.append(row)
    return _align(rows)


def _test(records):
    rows = [["test", "statistic", "p_value", "reject", "alpha", "k"]]
    for r in records:
        rows.append([r["test"], f"{r['statistic']:.4f}", f"{r['p_value']:.6f}",
                     "yes" if r["reject"] else "no", f"{r['alpha']:g}", str(r["k"])])
    return _align(rows)


def _classify(records):
    rows = [["method", "k", "alpha", "beta", "l", "replications", "error"]]
    for r in records:
        rows.append([r["method"], str(r["k"]), f"{r['alpha']:g}", f"{r['beta']:g}",
                     "" if r["l"] is None else str(r["l"]), str(r["replications"]),
                     f"{r['error']:.4f}"])
    return _align(rows)


def _bench(records):
    rows = [["p", "n", "k", "random_tukey_s", "mahalanobis_s"]]
    for r in records:
        rows.append([str(r["p"]), str(r["n"]), str(r["k"]),
                     f"{r['random_tukey_s']:.3e}", f"{r['mahalanobis_s']:.3e}"])
    return _align(rows)


_FORMATTERS = {
    "calibration": _calibration,
    "cov_det": _cov_det,
    "power": _power,
    "depth": _depth,
    "test": _test,
    "classify": _classify,
    "bench": _bench,
}


def format_table(records):
    """Render records of one kind as an aligned table with a config preamble."""
    if not records:
        return ""
    kinds = {r["kind"] for r in records}
    if len(kinds) != 1:
        raise ValueError(f"records of mixed kinds: {sorted(kinds)}")
    return config_preamble(records) + _FORMATTERS[kinds.pop()](records) + "\n"
