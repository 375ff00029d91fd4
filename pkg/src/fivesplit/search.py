"""Exhaustive search for minor-minimal non-split enhanced graphs.

The search walks a census of underlying graphs in increasing edge count.  For
each host G and each 5-configuration S that has no bad separation in G itself,
the minimal protections are forced: an edge e of S must be delete-protected
exactly when G minus e has a bad separation for S - e, and contract-protected
exactly when G contract e does.  Every minor-minimal non-split enhanced graph
therefore appears among the candidates (G, C_min(S), D_min(S)); anything with
fewer protections splits, anything with more is not minimal.  Candidates are
kept when all one-step reductions (protection removals, edge deletions and
contractions, vertex deletions, degree-2 smoothings) yield enhanced graphs in
which every configuration splits, which is read off the reductions' own
minimal-protection tables.

The default census contains the simple 3-connected graphs; an unrestricted
mode (all connected simple graphs, small edge counts only) validates that the
restriction loses nothing.
"""

from __future__ import annotations

import itertools
import json
import multiprocessing
import warnings
from dataclasses import dataclass
from pathlib import Path

from .graph_core import (
    MultiGraph,
    contract_edge,
    delete_edge,
    delete_vertex,
    find_isomorphism,
    is_k_connected,
)
from .minors import (
    CatalogEntry,
    assign_dual_partners,
    canonical_form,
    canonical_graph_key,
    canonical_labeling,
    f0,
    family_label,
)
from .splitting import EnhancedGraph, _bad_side, _derived, config_splits

_MAX_SEARCH_EDGES = 12
_MAX_UNRESTRICTED_EDGES = 8


@dataclass(frozen=True)
class SearchConfig:
    max_edges: int
    require_three_connected: bool = True
    include_plain: bool = False
    jobs: int = 1
    checkpoint: str | Path | None = None

    def __post_init__(self) -> None:
        if not 5 <= self.max_edges <= _MAX_SEARCH_EDGES:
            raise ValueError(f"max_edges must lie in 5..{_MAX_SEARCH_EDGES}")
        if not self.require_three_connected and self.max_edges > _MAX_UNRESTRICTED_EDGES:
            raise ValueError(
                f"the unrestricted census is limited to {_MAX_UNRESTRICTED_EDGES} edges"
            )
        if self.jobs < 1:
            raise ValueError("jobs must be positive")


# -- the census of underlying graphs ------------------------------------------


_CENSUS_CACHE: dict[tuple[int, bool], tuple[MultiGraph, ...]] = {}


def _canonical_rep(g: MultiGraph) -> MultiGraph:
    eg, _, _ = canonical_labeling(EnhancedGraph(g))
    return eg.graph


def _iso_invariant(g: MultiGraph) -> tuple:
    """Cheap isomorphism-invariant bucket key for census dedupe."""
    adj: dict[int, list[int]] = {v: [] for v in g.vertices}
    for u, v in g.edges.values():
        if u == v:
            adj[u] += [u, u]
        else:
            adj[u].append(v)
            adj[v].append(u)
    deg = {v: len(adj[v]) for v in g.vertices}
    prof = tuple(sorted((deg[v], tuple(sorted(deg[w] for w in adj[v]))) for v in g.vertices))
    pairs = {(min(u, v), max(u, v)) for u, v in g.edges.values() if u != v}
    tri = tuple(
        sorted(
            sum(
                1
                for a, b in itertools.combinations(sorted(set(adj[v]) - {v}), 2)
                if (a, b) in pairs
            )
            for v in g.vertices
        )
    )
    return (g.n, g.m, prof, tri)


class _IsoDedupe:
    """Bucket by cheap invariants, confirm with an isomorphism search.

    Full canonical forms degrade to n! work on regular graphs, so the census
    uses this instead and canonicalises only one representative per class.
    """

    def __init__(self) -> None:
        self.buckets: dict[tuple, list[MultiGraph]] = {}

    def add(self, g: MultiGraph) -> bool:
        reps = self.buckets.setdefault(_iso_invariant(g), [])
        for rep in reps:
            if find_isomorphism(g, rep) is not None:
                return False
        reps.append(g)
        return True


def _three_connected_census(m: int) -> list[MultiGraph]:
    """Simple 3-connected graphs with exactly m edges, one per isomorphism class.

    Min degree 3 forces 2m >= 3n, so n <= 2m/3; subsets of vertex pairs are
    grown in lexicographic order.  Pruning: per-vertex degree cap, total
    deficiency vs edges left, and the prefix freeze (pairs are sorted, so once
    the scan passes a vertex's last pair its degree is final and must be >= 3).
    """
    out: list[MultiGraph] = []
    dedupe = _IsoDedupe()
    for n in range(4, 2 * m // 3 + 1):
        pairs = list(itertools.combinations(range(n), 2))
        total = len(pairs)
        if m > total:
            continue
        cap = 3 + max(0, 2 * m - 3 * n)
        deg = [0] * n
        chosen: list[tuple[int, int]] = []

        def rec(start: int) -> None:
            k = len(chosen)
            if k == m:
                if min(deg) >= 3:
                    g = MultiGraph(range(n), {i + 1: p for i, p in enumerate(chosen)})
                    if is_k_connected(g, 3) and dedupe.add(g):
                        out.append(_canonical_rep(g))
                return
            if total - start < m - k:
                return
            if sum(3 - d for d in deg if d < 3) > 2 * (m - k):
                return
            frozen = 0
            for i in range(start, total):
                u, v = pairs[i]
                while frozen < u:
                    if deg[frozen] < 3:
                        return
                    frozen += 1
                if deg[u] >= cap or deg[v] >= cap:
                    continue
                deg[u] += 1
                deg[v] += 1
                chosen.append(pairs[i])
                rec(i + 1)
                chosen.pop()
                deg[u] -= 1
                deg[v] -= 1

        rec(0)
    return out


def _connected_census(m: int) -> list[MultiGraph]:
    """Connected simple graphs (no isolated vertices) with exactly m edges.

    Grown by edge augmentation: every connected graph arises from a connected
    graph with one edge fewer by adding an edge between existing vertices or a
    pendant edge to a fresh vertex.
    """
    level = [MultiGraph([0, 1], {1: (0, 1)})]
    for _ in range(m - 1):
        dedupe = _IsoDedupe()
        nxt: list[MultiGraph] = []
        for g in level:
            verts = sorted(g.vertices)
            existing = set(g.edges.values())
            nid = max(g.edges) + 1
            grown = []
            for u, v in itertools.combinations(verts, 2):
                if (u, v) not in existing:
                    grown.append(MultiGraph(verts, {**g.edges, nid: (u, v)}))
            w = verts[-1] + 1
            for u in verts:
                grown.append(MultiGraph(verts + [w], {**g.edges, nid: (u, w)}))
            for h in grown:
                if dedupe.add(h):
                    nxt.append(h)
        level = nxt
    reps = [_canonical_rep(g) for g in level]
    reps.sort(key=lambda g: canonical_graph_key(g))
    return reps


def enumerate_underlying(m: int, three_connected: bool = True) -> list[MultiGraph]:
    """Census of candidate underlying graphs with exactly m edges."""
    if m < 1 or m > _MAX_SEARCH_EDGES:
        raise ValueError(f"edge count must lie in 1..{_MAX_SEARCH_EDGES}")
    if not three_connected and m > _MAX_UNRESTRICTED_EDGES:
        raise ValueError(f"the unrestricted census is limited to {_MAX_UNRESTRICTED_EDGES} edges")
    key = (m, three_connected)
    if key not in _CENSUS_CACHE:
        fn = _three_connected_census if three_connected else _connected_census
        _CENSUS_CACHE[key] = tuple(fn(m))
    return list(_CENSUS_CACHE[key])


# -- per-host minimal-protection tables ----------------------------------------


def _config_minima(
    g: MultiGraph,
) -> dict[frozenset[int], tuple[frozenset[int], frozenset[int]]]:
    """For each configuration without a bad separation in g itself, the forced
    minimal protections (C_min, D_min)."""
    edges = sorted(g.edges)
    rows: dict[frozenset[int], tuple[frozenset[int], frozenset[int]]] = {}
    if len(edges) < 5:
        return rows
    for combo in itertools.combinations(edges, 5):
        s = frozenset(combo)
        if _bad_side(g, s) is not None:
            continue
        c_min: set[int] = set()
        d_min: set[int] = set()
        for e in combo:
            if _bad_side(_derived(g, "delete", e), s - {e}) is not None:
                d_min.add(e)
            if not g.is_loop(e):
                child = _derived(g, "contract", e)
                if _bad_side(child, (s - {e}) & child.edge_ids()) is not None:
                    c_min.add(e)
        rows[s] = (frozenset(c_min), frozenset(d_min))
    return rows


def _fits(
    rows: dict[frozenset[int], tuple[frozenset[int], frozenset[int]]],
    c: frozenset[int],
    d: frozenset[int],
) -> bool:
    """Does some configuration stay non-split under protections (c, d)?"""
    return any(c2 <= c and d2 <= d for c2, d2 in rows.values())


def _host_entries(
    g: MultiGraph, include_plain: bool
) -> list[tuple[frozenset[int], frozenset[int], frozenset[int]]]:
    """Minor-minimal candidates (C, D, witness) on the fixed underlying graph g."""
    rows = _config_minima(g)
    if not rows:
        return []
    by_cd: dict[tuple[frozenset[int], frozenset[int]], frozenset[int]] = {}
    for s, cd in rows.items():
        if cd not in by_cd:
            by_cd[cd] = s
    cds = list(by_cd)
    child_rows: dict[tuple, dict] = {}

    def crows(h: MultiGraph) -> dict:
        k = h.key()
        if k not in child_rows:
            child_rows[k] = _config_minima(h)
        return child_rows[k]

    out: list[tuple[frozenset[int], frozenset[int], frozenset[int]]] = []
    for c, d in cds:
        # protection removals stay non-split iff a strictly smaller row exists
        if any(c2 <= c and d2 <= d and (c2, d2) != (c, d) for c2, d2 in cds):
            continue
        if not include_plain and not c and not d:
            continue
        minimal = True
        for f in sorted(g.edges):
            if f not in d and _fits(crows(delete_edge(g, f)), c - {f}, d):
                minimal = False
                break
            if f not in c and not g.is_loop(f):
                h = contract_edge(g, f)
                ids = h.edge_ids()
                if _fits(crows(h), c & ids, d & ids):
                    minimal = False
                    break
        if minimal:
            for v in sorted(g.vertices):
                h = delete_vertex(g, v)
                ids = h.edge_ids()
                if _fits(crows(h), c & ids, d & ids):
                    minimal = False
                    break
        if minimal:
            for w in sorted(g.vertices):
                inc = g.incident_edges(w)
                if len(inc) != 2 or g.degree(w) != 2:
                    continue
                e1, e2 = sorted(inc)
                if g.edges[e1] == g.edges[e2]:
                    continue
                for keep, con in ((e1, e2), (e2, e1)):
                    if con in c:
                        continue
                    h = contract_edge(g, con)
                    ids = h.edge_ids()
                    if keep in ids and _fits(crows(h), (c & ids) | {keep}, d & ids):
                        minimal = False
                        break
                if not minimal:
                    break
        if minimal:
            out.append((c, d, by_cd[(c, d)]))
    return out


# -- worker transport and checkpointing ----------------------------------------


def _host_wire(g: MultiGraph) -> list:
    return [g.n, [list(g.edges[e]) for e in sorted(g.edges)]]


def _host_from_wire(n: int, pairs: list) -> MultiGraph:
    return MultiGraph(range(n), {i + 1: (int(u), int(v)) for i, (u, v) in enumerate(pairs)})


def _host_worker(args: tuple) -> list:
    n, pairs, include_plain = args
    g = _host_from_wire(n, pairs)
    found = _host_entries(g, include_plain)
    return [[sorted(c), sorted(d), sorted(w)] for c, d, w in found]


class _Checkpoint:
    """Append-only JSONL of per-host results; a mismatched or damaged file is
    discarded with a warning rather than trusted."""

    def __init__(self, cfg: SearchConfig):
        self.path = Path(cfg.checkpoint)
        self.header = {
            "schema": 1,
            "max_edges": cfg.max_edges,
            "three_connected": cfg.require_three_connected,
            "include_plain": cfg.include_plain,
        }
        self.done: dict[str, list] = {}
        self.disabled = False
        if self.path.exists():
            self._load()
        self._rewrite()

    def _load(self) -> None:
        try:
            lines = self.path.read_text(encoding="utf-8").splitlines()
        except OSError as exc:
            warnings.warn(f"cannot read checkpoint {self.path}: {exc}")
            return
        if not lines:
            return
        try:
            head = json.loads(lines[0])
        except ValueError:
            head = None
        if head != self.header:
            warnings.warn(f"checkpoint {self.path} was written with different settings; ignoring it")
            return
        for line in lines[1:]:
            try:
                rec = json.loads(line)
                self.done[json.dumps(rec["host"])] = rec["found"]
            except (ValueError, KeyError, TypeError):
                warnings.warn(f"checkpoint {self.path} has a damaged tail; later hosts recompute")
                break

    def _rewrite(self) -> None:
        try:
            with open(self.path, "w", encoding="utf-8") as fh:
                fh.write(json.dumps(self.header) + "\n")
                for host_key, found in self.done.items():
                    fh.write(json.dumps({"host": json.loads(host_key), "found": found}) + "\n")
        except OSError as exc:
            warnings.warn(f"cannot write checkpoint {self.path}: {exc}")
            self.disabled = True

    def get(self, g: MultiGraph) -> list | None:
        return self.done.get(json.dumps(_host_wire(g)))

    def put(self, g: MultiGraph, found: list) -> None:
        key = json.dumps(_host_wire(g))
        self.done[key] = found
        if self.disabled:
            return
        try:
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps({"host": json.loads(key), "found": found}) + "\n")
        except OSError as exc:
            warnings.warn(f"cannot append to checkpoint {self.path}: {exc}")
            self.disabled = True


# -- the search proper ----------------------------------------------------------


def find_minimal_nonsplit(cfg: SearchConfig) -> list[CatalogEntry]:
    """All minor-minimal non-split enhanced graphs over the configured census.

    Entries are canonically labelled; dual partners are left unset (the
    catalog assembly fills them in).
    """
    hosts: list[MultiGraph] = []
    lo = 6 if cfg.require_three_connected else 5
    for m in range(lo, cfg.max_edges + 1):
        hosts.extend(enumerate_underlying(m, cfg.require_three_connected))
    ck = _Checkpoint(cfg) if cfg.checkpoint is not None else None

    pending = [g for g in hosts if ck is None or ck.get(g) is None]
    computed: dict[tuple, list] = {}
    if cfg.jobs > 1 and pending:
        args = [(*(_host_wire(g)), cfg.include_plain) for g in pending]
        with multiprocessing.Pool(cfg.jobs) as pool:
            for g, found in zip(pending, pool.imap(_host_worker, args)):
                computed[g.key()] = found
                if ck is not None:
                    ck.put(g, found)
    else:
        for g in pending:
            found = _host_worker((*(_host_wire(g)), cfg.include_plain))
            computed[g.key()] = found
            if ck is not None:
                ck.put(g, found)

    entries: list[CatalogEntry] = []
    seen: set[tuple] = set()
    for g in hosts:
        found = computed.get(g.key())
        if found is None:
            found = ck.get(g) if ck is not None else None
        if found is None:
            found = []
        for c_l, d_l, w_l in found:
            c, d, w = frozenset(c_l), frozenset(d_l), frozenset(w_l)
            if not cfg.include_plain and not c and not d:
                continue
            eg = EnhancedGraph(g, c, d)
            canon, wit, _ = canonical_labeling(eg, w)
            key = canonical_form(canon)
            if key in seen:
                continue
            seen.add(key)
            entries.append(CatalogEntry(canon, wit, family_label(g), eg.weight, None))
    return entries


def _entry_sort_key(entry: CatalogEntry) -> tuple:
    return (
        entry.enhanced.graph.m,
        entry.weight,
        entry.family,
        repr(canonical_form(entry.enhanced, entry.witness)),
    )


def build_catalog(cfg: SearchConfig) -> list[CatalogEntry]:
    """Search results plus the plain minor-minimal members, dual partners set.

    Plain entries come from the fixed forbidden-minor list rather than the
    search (with include_plain the search rediscovers them; they are dropped
    here to keep the assembly deterministic) and carry their first non-split
    configuration as witness.
    """
    entries = [
        e
        for e in find_minimal_nonsplit(cfg)
        if e.enhanced.contract_protected or e.enhanced.delete_protected
    ]
    for pat in f0():
        if pat.graph.m > cfg.max_edges:
            continue
        witness = None
        for s in itertools.combinations(sorted(pat.graph.edges), 5):
            if not config_splits(pat.graph, frozenset(s)).splits:
                witness = frozenset(s)
                break
        assert witness is not None
        canon, wit, _ = canonical_labeling(EnhancedGraph(pat.graph), witness)
        entries.append(CatalogEntry(canon, wit, pat.name, pat.graph.m, None))
    entries.sort(key=_entry_sort_key)
    return assign_dual_partners(entries)


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    missing: tuple[str, ...]
    unexpected: tuple[str, ...]
    mismatched: tuple[str, ...]


def verify_catalog(cfg: SearchConfig, golden: list[CatalogEntry]) -> VerifyReport:
    """Regenerate the catalog and diff it against a stored copy."""
    from .minors import render_catalog

    rebuilt = build_catalog(cfg)

    def lines(entries: list[CatalogEntry]) -> dict[tuple, str]:
        rendered = render_catalog(entries).splitlines()
        body = [ln for ln in rendered if ln and not ln.startswith("#")]
        assert len(body) == len(entries)
        return {canonical_form(e.enhanced): ln for e, ln in zip(entries, body)}

    gold, new = lines(golden), lines(rebuilt)
    missing = tuple(gold[k] for k in sorted(set(gold) - set(new), key=repr))
    unexpected = tuple(new[k] for k in sorted(set(new) - set(gold), key=repr))
    mismatched = tuple(
        f"stored {gold[k]!r} != rebuilt {new[k]!r}"
        for k in sorted(set(gold) & set(new), key=repr)
        if gold[k] != new[k]
    )
    return VerifyReport(
        ok=not (missing or unexpected or mismatched),
        missing=missing,
        unexpected=unexpected,
        mismatched=mismatched,
    )
