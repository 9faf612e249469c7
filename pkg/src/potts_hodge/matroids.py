"""Matroid construction, validation, and structural queries.

Ground set elements are labeled 1..n.  A subset is canonically encoded as
an n-bit mask with element i at bit i-1; all JSON rank tables use the same
indexing.  Every matroid carries a fully materialized rank table (index =
mask).  Materializing is affordable because every downstream evaluation
enumerates all 2^n subsets anyway, and it makes matroids immutable,
hashable, and cheap to ship between processes.  Construction is therefore
capped at n <= enumeration_cap() and refuses larger ground sets outright.
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .errors import (
    InvalidParametersError,
    NotAMatroidError,
    ParseError,
    ResourceLimitError,
)

DEFAULT_MAX_N = 20
MAX_N_ENV_VAR = "POTTS_HODGE_MAX_N"


def enumeration_cap():
    """Largest permitted ground set size; override with POTTS_HODGE_MAX_N."""
    raw = os.environ.get(MAX_N_ENV_VAR)
    if raw is None:
        return DEFAULT_MAX_N
    try:
        cap = int(raw)
    except ValueError as exc:
        raise InvalidParametersError(f"{MAX_N_ENV_VAR} must be an integer, got {raw!r}") from exc
    if cap < 0:
        raise InvalidParametersError(f"{MAX_N_ENV_VAR} must be nonnegative, got {cap}")
    return cap


def _check_cap(n, what):
    cap = enumeration_cap()
    if n > cap:
        raise ResourceLimitError(
            f"{what} needs a ground set of size {n}, above the enumeration cap {cap} "
            f"(raise {MAX_N_ENV_VAR} to override)"
        )


def mask_from_labels(labels, n):
    """Bit mask for an iterable of 1-based element labels."""
    mask = 0
    for e in labels:
        if not isinstance(e, int) or isinstance(e, bool) or not 1 <= e <= n:
            raise InvalidParametersError(f"element label {e!r} outside 1..{n}")
        mask |= 1 << (e - 1)
    return mask


def labels_from_mask(mask):
    """Sorted tuple of 1-based labels encoded by a mask."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


@dataclass(frozen=True)
class Matroid:
    """Immutable matroid given by its full rank table.

    ranks[mask] is the rank of the subset encoded by mask; ranks[0] == 0 and
    ranks[-1] is the rank of the whole ground set.
    """

    n: int
    ranks: tuple
    provenance: str = "rank_table"
    source: dict | None = field(default=None, compare=False, repr=False)

    @property
    def full_rank(self):
        return self.ranks[-1]

    def rank_mask(self, mask):
        return self.ranks[mask]

    def rank(self, subset):
        """Rank of a subset given as an iterable of 1-based labels or a mask."""
        if isinstance(subset, int) and not isinstance(subset, bool):
            if not 0 <= subset < len(self.ranks):
                raise InvalidParametersError(f"mask {subset} out of range for n={self.n}")
            return self.ranks[subset]
        return self.ranks[mask_from_labels(subset, self.n)]

    def to_json(self):
        """JSON-safe dict; reconstructible with from_json."""
        if self.source is not None:
            return dict(self.source)
        return {"type": "rank_table", "n": self.n, "ranks": list(self.ranks)}

    def __str__(self):
        return f"{self.provenance}(n={self.n}, rank={self.full_rank})"


def _build(n, rank_fn, provenance, source=None, validate=False):
    _check_cap(n, f"constructing a {provenance} matroid")
    ranks = tuple(rank_fn(mask) for mask in range(1 << n))
    if validate:
        validate_rank_axioms(n, ranks)
    return Matroid(n=n, ranks=ranks, provenance=provenance, source=source)


def make_uniform(rank, n, validate=False):
    """Uniform matroid: every subset of size <= rank is independent."""
    if not isinstance(n, int) or n < 0:
        raise InvalidParametersError(f"ground set size must be a nonnegative integer, got {n!r}")
    if not isinstance(rank, int) or not 0 <= rank <= n:
        raise InvalidParametersError(f"uniform rank must satisfy 0 <= rank <= n, got rank={rank!r}, n={n}")
    source = {"type": "uniform", "rank": rank, "n": n}
    return _build(n, lambda mask: min(mask.bit_count(), rank), "uniform", source, validate)


def make_graphic(vertices, edges, validate=False):
    """Cycle matroid of a multigraph on vertices 1..vertices.

    Edge i of the list becomes ground set element i.  Loops (u == v) and
    parallel edges are allowed.  rank(A) = vertices - #components(A),
    counting isolated vertices, computed by union-find per subset.
    """
    if not isinstance(vertices, int) or vertices < 0:
        raise InvalidParametersError(f"vertex count must be a nonnegative integer, got {vertices!r}")
    edge_list = []
    for e in edges:
        u, v = e
        if not (isinstance(u, int) and isinstance(v, int) and 1 <= u <= vertices and 1 <= v <= vertices):
            raise InvalidParametersError(f"edge {e!r} has endpoints outside 1..{vertices}")
        edge_list.append((u, v))
    n = len(edge_list)
    source = {"type": "graphic", "vertices": vertices, "edges": [list(e) for e in edge_list]}

    def rank_of(mask):
        parent = list(range(vertices + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        merged = 0
        m = mask
        idx = 0
        while m:
            if m & 1:
                ru, rv = find(edge_list[idx][0]), find(edge_list[idx][1])
                if ru != rv:
                    parent[ru] = rv
                    merged += 1
            m >>= 1
            idx += 1
        return merged

    return _build(n, rank_of, "graphic", source, validate)


def _is_prime(p):
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def make_linear(prime, matrix, validate=False):
    """Column matroid of a matrix over GF(prime); ground set element i = column i."""
    if not isinstance(prime, int) or not _is_prime(prime):
        raise InvalidParametersError(f"field order must be prime, got {prime!r}")
    rows = [list(int(x) % prime for x in row) for row in matrix]
    if rows:
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise InvalidParametersError("matrix rows have unequal lengths")
    else:
        width = 0
    n = width
    nrows = len(rows)
    cols = [tuple(rows[r][c] for r in range(nrows)) for c in range(n)]
    source = {"type": "linear", "field": prime, "matrix": [list(r) for r in rows]}

    def rank_of(mask):
        # Gaussian elimination mod prime on the selected columns.
        basis = []
        m = mask
        idx = 0
        while m:
            if m & 1:
                vec = list(cols[idx])
                for pivot_pos, pivot_vec in basis:
                    coef = vec[pivot_pos]
                    if coef:
                        vec = [(a - coef * b) % prime for a, b in zip(vec, pivot_vec)]
                for pos, a in enumerate(vec):
                    if a:
                        inv = pow(a, prime - 2, prime)
                        vec = [(x * inv) % prime for x in vec]
                        basis.append((pos, vec))
                        break
            m >>= 1
            idx += 1
        return len(basis)

    return _build(n, rank_of, "linear", source, validate)


def make_rank_table(n, ranks):
    """Matroid from an explicit rank table; the rank axioms are always verified."""
    if not isinstance(n, int) or n < 0:
        raise InvalidParametersError(f"ground set size must be a nonnegative integer, got {n!r}")
    _check_cap(n, "constructing a rank_table matroid")
    table = tuple(ranks)
    if len(table) != 1 << n:
        raise InvalidParametersError(f"rank table must have 2^{n} = {1 << n} entries, got {len(table)}")
    validate_rank_axioms(n, table)
    return Matroid(n=n, ranks=table, provenance="rank_table",
                   source={"type": "rank_table", "n": n, "ranks": list(table)})


def validate_rank_axioms(n, ranks):
    """Exhaustively verify the rank axioms of a full table; raise NotAMatroidError.

    Checked in local form, which is equivalent to the global axioms:
      - rank(empty) == 0,
      - 0 <= rank(A+e) - rank(A) <= 1 (unit increase; the lower bound gives
        monotonicity along chains),
      - rank(A+e) + rank(A+f) >= rank(A+e+f) + rank(A) (local submodularity).
    """
    size = 1 << n
    for mask in range(size):
        r = ranks[mask]
        if not isinstance(r, int) or isinstance(r, bool) or r < 0:
            raise NotAMatroidError(
                f"rank of {labels_from_mask(mask)} is {r!r}, not a nonnegative integer",
                witness={"subset": labels_from_mask(mask), "rank": r})
    if ranks[0] != 0:
        raise NotAMatroidError(f"rank of the empty set is {ranks[0]}, expected 0",
                               witness={"subset": (), "rank": ranks[0]})
    for mask in range(size):
        base = ranks[mask]
        free = [e for e in range(n) if not mask & (1 << e)]
        for e in free:
            step = ranks[mask | (1 << e)] - base
            if step < 0 or step > 1:
                a = labels_from_mask(mask)
                raise NotAMatroidError(
                    f"unit-increase axiom fails: rank({a} + {{{e + 1}}}) - rank({a}) = {step}",
                    witness={"subset": a, "element": e + 1, "delta": step})
        for i, e in enumerate(free):
            me = mask | (1 << e)
            re_ = ranks[me]
            for f in free[i + 1:]:
                mf = mask | (1 << f)
                if re_ + ranks[mf] < ranks[me | mf] + base:
                    a, b = labels_from_mask(me), labels_from_mask(mf)
                    raise NotAMatroidError(
                        f"submodularity fails on A={a}, B={b}: "
                        f"rank(A)+rank(B) = {re_ + ranks[mf]} < "
                        f"rank(A|B)+rank(A&B) = {ranks[me | mf] + base}",
                        witness={"A": a, "B": b})


def from_json(obj):
    """Parse a matroid from its JSON dict (or a JSON string)."""
    if isinstance(obj, str):
        try:
            obj = json.loads(obj)
        except json.JSONDecodeError as exc:
            raise ParseError(f"malformed matroid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict):
        raise ParseError(f"matroid JSON must be an object, got {type(obj).__name__}")
    kind = obj.get("type")
    try:
        if kind == "uniform":
            return make_uniform(int(obj["rank"]), int(obj["n"]))
        if kind == "graphic":
            return make_graphic(int(obj["vertices"]), [tuple(e) for e in obj["edges"]])
        if kind == "linear":
            return make_linear(int(obj["field"]), obj["matrix"])
        if kind == "rank_table":
            return make_rank_table(int(obj["n"]), [int(r) for r in obj["ranks"]])
    except KeyError as exc:
        raise ParseError(f"matroid JSON of type {kind!r} is missing field {exc}") from exc
    raise ParseError(f"unknown matroid type {kind!r}")


def contract(matroid, subset):
    """Contract a subset; returns (minor, relabeling).

    The minor lives on ground set 1..(n - |subset|) with
    rank'(A) = rank(A | subset) - rank(subset); relabeling maps each new
    label to the old label it came from.
    """
    smask = subset if isinstance(subset, int) and not isinstance(subset, bool) \
        else mask_from_labels(subset, matroid.n)
    if not 0 <= smask < len(matroid.ranks):
        raise InvalidParametersError(f"mask {smask} out of range for n={matroid.n}")
    keep = [e for e in range(matroid.n) if not smask & (1 << e)]
    rs = matroid.ranks[smask]
    m = len(keep)
    new_ranks = []
    for mask in range(1 << m):
        big = smask
        mm = mask
        idx = 0
        while mm:
            if mm & 1:
                big |= 1 << keep[idx]
            mm >>= 1
            idx += 1
        new_ranks.append(matroid.ranks[big] - rs)
    relabeling = {new + 1: keep[new] + 1 for new in range(m)}
    minor = Matroid(n=m, ranks=tuple(new_ranks), provenance=f"contraction({matroid.provenance})")
    return minor, relabeling


@dataclass(frozen=True)
class StructureReport:
    """Loops and parallel classes of a matroid.

    parallel_classes partitions the non-loop elements; two non-loops are
    parallel when their pair has rank 1.  rank_one_flats is the class count.
    """

    loops: frozenset
    parallel_classes: tuple
    rank_one_flats: int


def structure(matroid):
    n = matroid.n
    ranks = matroid.ranks
    loops = frozenset(e + 1 for e in range(n) if ranks[1 << e] == 0)
    nonloops = [e for e in range(n) if ranks[1 << e] == 1]
    class_of = {}
    classes = []
    for e in nonloops:
        for cls in classes:
            rep = cls[0]
            if ranks[(1 << rep) | (1 << e)] == 1:
                cls.append(e)
                break
        else:
            classes.append([e])
    classes.sort(key=lambda cls: cls[0])
    tup = tuple(frozenset(x + 1 for x in cls) for cls in classes)
    return StructureReport(loops=loops, parallel_classes=tup, rank_one_flats=len(tup))


def simplify(matroid):
    """Simplification: drop loops, keep one representative per parallel class.

    Representatives are the minimal labels, in increasing order, so the result
    is deterministic.  An all-loop (or empty) matroid degenerates to the empty
    matroid, flagged through its provenance.
    """
    info = structure(matroid)
    reps = sorted(min(cls) for cls in info.parallel_classes)
    ell = len(reps)
    if ell == 0:
        return Matroid(n=0, ranks=(0,), provenance="simplification-degenerate")
    rep_bits = [1 << (r - 1) for r in reps]

    def rank_of(mask):
        big = 0
        mm = mask
        idx = 0
        while mm:
            if mm & 1:
                big |= rep_bits[idx]
            mm >>= 1
            idx += 1
        return matroid.ranks[big]

    ranks = tuple(rank_of(mask) for mask in range(1 << ell))
    return Matroid(n=ell, ranks=ranks, provenance="simplification")


def independent_set_counts(matroid):
    """Tuple (I_0, ..., I_n) where I_k counts independent k-subsets."""
    counts = [0] * (matroid.n + 1)
    for mask, r in enumerate(matroid.ranks):
        size = mask.bit_count()
        if r == size:
            counts[size] += 1
    return tuple(counts)
