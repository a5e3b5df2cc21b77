"""Partial triple systems, the Fischer-space axiom, the two canonical planes,
simply-laced root systems and the triple systems they span.

Points are 0-based indices with optional string labels.  Lines are sorted
3-tuples of point indices.
"""

from dataclasses import dataclass
from itertools import combinations


class GeometryError(ValueError):
    pass


@dataclass
class ValidationResult:
    ok: bool
    error: str = ""

    def __bool__(self):
        return self.ok


class PartialTripleSystem:
    """A point-line geometry where every line has exactly three points and two
    distinct lines share at most one point."""

    def __init__(self, n_points, lines, labels=None):
        self.n_points = n_points
        self.lines = sorted(tuple(sorted(l)) for l in lines)
        self.labels = list(labels) if labels else [str(i + 1) for i in range(n_points)]
        if len(self.labels) != n_points:
            raise GeometryError("label count does not match point count")
        self._wedge = None
        self._adj = None
        self._lines_through = None

    def validate(self):
        """Check the partial-triple-system axioms and build the wedge table."""
        seen = set()
        for line in self.lines:
            if len(set(line)) != 3:
                return ValidationResult(False, "line %r does not have 3 distinct points" % (line,))
            if any(p < 0 or p >= self.n_points for p in line):
                return ValidationResult(False, "line %r uses an unknown point" % (line,))
            if line in seen:
                return ValidationResult(False, "line %r repeated" % (line,))
            seen.add(line)
        for l1, l2 in combinations(self.lines, 2):
            common = set(l1) & set(l2)
            if len(common) > 1:
                return ValidationResult(
                    False,
                    "lines %r and %r share %d points" % (l1, l2, len(common)),
                )
        wedge = {}
        adj = [set() for _ in range(self.n_points)]
        through = [[] for _ in range(self.n_points)]
        for line in self.lines:
            a, b, c = line
            wedge[(a, b)] = wedge[(b, a)] = c
            wedge[(a, c)] = wedge[(c, a)] = b
            wedge[(b, c)] = wedge[(c, b)] = a
            for p in line:
                through[p].append(line)
            adj[a] |= {b, c}
            adj[b] |= {a, c}
            adj[c] |= {a, b}
        self._wedge = wedge
        self._adj = adj
        self._lines_through = through
        return ValidationResult(True)

    def _ensure(self):
        if self._wedge is None:
            res = self.validate()
            if not res.ok:
                raise GeometryError(res.error)

    def wedge(self, x, y):
        self._ensure()
        try:
            return self._wedge[(x, y)]
        except KeyError:
            raise GeometryError("points %d and %d are not collinear" % (x, y))

    def collinear(self, x, y):
        self._ensure()
        return y in self._adj[x]

    def neighbours(self, x):
        self._ensure()
        return sorted(self._adj[x])

    def lines_through(self, x):
        self._ensure()
        return list(self._lines_through[x])

    def isolated_points(self):
        self._ensure()
        return [p for p in range(self.n_points) if not self._adj[p]]

    def __repr__(self):
        return "PartialTripleSystem(%d points, %d lines)" % (
            self.n_points,
            len(self.lines),
        )


def validate_pts(space):
    return space.validate()


def subspace_closure(space, points):
    """Smallest wedge-closed subset containing the given points."""
    space._ensure()
    current = set(points)
    frontier = sorted(current)
    while frontier:
        fresh = []
        for x in frontier:
            for y in sorted(current):
                if x != y and space.collinear(x, y):
                    z = space.wedge(x, y)
                    if z not in current:
                        current.add(z)
                        fresh.append(z)
        frontier = fresh
    return current


def induced_subsystem(space, points):
    """The geometry on a subset of points, keeping only fully contained lines."""
    pts = sorted(points)
    index = {p: i for i, p in enumerate(pts)}
    lines = [
        tuple(index[p] for p in line)
        for line in space.lines
        if all(p in index for p in line)
    ]
    return PartialTripleSystem(len(pts), lines, labels=[space.labels[p] for p in pts])


@dataclass
class FischerCheck:
    is_fischer: bool
    symplectic: bool
    nondegenerate: bool
    offending: tuple = None

    def __bool__(self):
        return self.is_fischer


def is_fischer(space):
    """Decide the Fischer-space axiom: any two intersecting lines generate the
    dual affine plane of order 2 or the affine plane of order 3."""
    res = space.validate()
    if not res.ok:
        raise GeometryError(res.error)
    p2 = build_p2_dual()
    p3 = build_p3()
    saw_p3 = False
    for l1, l2 in combinations(space.lines, 2):
        if not set(l1) & set(l2):
            continue
        closure = subspace_closure(space, set(l1) | set(l2))
        sub = induced_subsystem(space, closure)
        if len(closure) == 6 and len(sub.lines) == 4 and pts_isomorphic(sub, p2):
            continue
        if len(closure) == 9 and len(sub.lines) == 12 and pts_isomorphic(sub, p3):
            saw_p3 = True
            continue
        return FischerCheck(False, False, not space.isolated_points(), (l1, l2))
    return FischerCheck(True, not saw_p3, not space.isolated_points())


def build_p2_dual():
    """The dual affine plane of order 2: 6 points, 4 lines."""
    lines_1based = [(1, 2, 6), (2, 3, 4), (4, 5, 6), (1, 3, 5)]
    lines = [tuple(p - 1 for p in l) for l in lines_1based]
    return PartialTripleSystem(6, lines, labels=[f"p{i}" for i in range(1, 7)])


def build_p3():
    """The affine plane of order 3: 9 points, 12 lines."""
    lines_1based = [
        (1, 2, 3), (4, 5, 6), (7, 8, 9),
        (1, 4, 7), (2, 5, 8), (3, 6, 9),
        (1, 5, 9), (3, 5, 7),
        (1, 6, 8), (3, 4, 8),
        (2, 6, 7), (2, 4, 9),
    ]
    lines = [tuple(p - 1 for p in l) for l in lines_1based]
    return PartialTripleSystem(9, lines, labels=[f"p{i}" for i in range(1, 10)])


# The four parallel classes of the plane above, 0-based, rows class first.
P3_PARALLEL_CLASSES = [
    ((0, 1, 2), (3, 4, 5), (6, 7, 8)),
    ((0, 3, 6), (1, 4, 7), (2, 5, 8)),
    ((0, 4, 8), (2, 3, 7), (1, 5, 6)),
    ((2, 4, 6), (0, 5, 7), (1, 3, 8)),
]


# ---------------------------------------------------------------------------
# Root systems


@dataclass
class RootSystem:
    label: str
    rank: int
    ambient: int
    positive: list  # list of int tuples, one per +/- pair

    def form(self, r, s):
        return sum(a * b for a, b in zip(r, s))

    def norm(self, r):
        return self.form(r, r)

    def is_simply_laced(self):
        norms = {self.norm(r) for r in self.positive}
        return len(norms) == 1

    def root_set(self):
        out = set(self.positive)
        out |= {tuple(-a for a in r) for r in self.positive}
        return out

    def __repr__(self):
        return "RootSystem(%s, %d positive roots)" % (self.label, len(self.positive))


def _positive_half(vectors):
    """Keep one of each +/- pair: the lexicographically larger one."""
    out = set()
    for v in vectors:
        neg = tuple(-a for a in v)
        out.add(max(v, neg))
    return sorted(out)


def _e8_roots():
    roots = []
    for i in range(8):
        for j in range(i + 1, 8):
            for si in (1, -1):
                for sj in (1, -1):
                    v = [0] * 8
                    v[i], v[j] = 2 * si, 2 * sj
                    roots.append(tuple(v))
    for mask in range(256):
        v = [1 if mask & (1 << i) else -1 for i in range(8)]
        if v.count(-1) % 2 == 0:
            roots.append(tuple(v))
    # doubled coordinates keep everything integral (half-integers scaled by 2)
    return roots


def roots_of(label, rank=None):
    """Positive roots of the classical systems used here, as integer vectors.

    A_n sits in Z^(n+1) as {v_j - v_i : j < i} (plus sign on the earlier
    coordinate); D_n in Z^n; E6/E7/E8 use the even-coordinate model scaled by
    2 to stay integral; B2 and G2 use the explicit rank-2 realizations with a
    short and a long fundamental root.
    """
    label = label.upper()
    if label == "A":
        n = rank
        if n is None or n < 1:
            raise ValueError("A-type needs a rank >= 1")
        pos = []
        for i in range(1, n + 1):
            for j in range(i):
                v = [0] * (n + 1)
                v[j], v[i] = 1, -1
                pos.append(tuple(v))
        return RootSystem("A%d" % n, n, n + 1, sorted(pos))
    if label == "D":
        n = rank
        if n is None or n < 2:
            raise ValueError("D-type needs a rank >= 2")
        pos = []
        for i in range(n):
            for j in range(i + 1, n):
                for sj in (1, -1):
                    v = [0] * n
                    v[i], v[j] = 1, sj
                    pos.append(tuple(v))
        return RootSystem("D%d" % n, n, n, sorted(pos))
    if label in ("E6", "E7", "E8"):
        all_e8 = _e8_roots()
        if label == "E8":
            roots = all_e8
        elif label == "E7":
            # orthogonal to e7 + e8 (doubled model)
            w = (0, 0, 0, 0, 0, 0, 2, 2)
            roots = [r for r in all_e8 if sum(a * b for a, b in zip(r, w)) == 0]
        else:
            w1 = (0, 0, 0, 0, 0, 0, 2, 2)
            w2 = (0, 0, 0, 0, 0, 2, 2, 0)
            roots = [
                r
                for r in all_e8
                if sum(a * b for a, b in zip(r, w1)) == 0
                and sum(a * b for a, b in zip(r, w2)) == 0
            ]
        pos = _positive_half(roots)
        return RootSystem(label, int(label[1]), 8, pos)
    if label == "B2":
        pos = [(1, 0), (-1, 1), (0, 1), (1, 1)]
        return RootSystem("B2", 2, 2, pos)
    if label == "G2":
        a, b = (1, -1, 0), (-1, 2, -1)
        pos = [
            a,
            b,
            (0, 1, -1),      # a + b
            (1, 0, -1),      # 2a + b
            (2, -1, -1),     # 3a + b
            (1, 1, -2),      # 3a + 2b
        ]
        return RootSystem("G2", 2, 3, pos)
    raise ValueError("unsupported root system %r" % (label,))


def root_system_from_name(name):
    """Parse names like A4, D5, E6, B2, G2."""
    name = name.strip().upper()
    if name in ("E6", "E7", "E8", "B2", "G2"):
        return roots_of(name)
    return roots_of(name[0], int(name[1:]))


def gamma_of_rootsystem(rs):
    """The triple system on the positive roots: {r, s, t} is a line when the
    three roots lie in a common rank-2 simply-laced subsystem, i.e. when one
    of them is, up to sign, the sum or difference of the other two."""
    if not rs.is_simply_laced():
        raise GeometryError("%s is not simply laced" % rs.label)
    pos = list(rs.positive)
    index = {r: i for i, r in enumerate(pos)}

    def pos_rep(v):
        neg = tuple(-a for a in v)
        if v in index:
            return v
        if neg in index:
            return neg
        return None

    lines = set()
    for i, r in enumerate(pos):
        for j in range(i + 1, len(pos)):
            s = pos[j]
            if rs.form(r, s) == 0:
                continue
            for cand in (
                tuple(a + b for a, b in zip(r, s)),
                tuple(a - b for a, b in zip(r, s)),
            ):
                t = pos_rep(cand)
                if t is not None and t != r and t != s:
                    lines.add(tuple(sorted((i, j, index[t]))))
                    break
    labels = ["(%s)" % ",".join(str(a) for a in r) for r in pos]
    return PartialTripleSystem(len(pos), sorted(lines), labels=labels)


def gamma_of_group(group):
    """The triple system on the distinguished involutions D of a group: points
    are the elements of D, and {c, d, c^d} is a line whenever cd has order 3."""
    points = list(group.D)
    index = {d: i for i, d in enumerate(points)}
    lines = set()
    for i, c in enumerate(points):
        for j in range(i + 1, len(points)):
            d = points[j]
            order = group.order_of_product(c, d)
            if order > 3:
                raise GeometryError(
                    "product of involutions %d and %d has order %d" % (i, j, order)
                )
            if order == 3:
                w = group.conjugate(c, d)
                lines.add(tuple(sorted((i, j, index[w]))))
    labels = group.point_labels() if hasattr(group, "point_labels") else None
    return PartialTripleSystem(len(points), sorted(lines), labels=labels)


def pts_isomorphic(s1, s2):
    """Line-preserving point bijection between two triple systems, or None.

    Backtracking over degree-compatible assignments; adequate for the small
    geometries handled here.
    """
    s1._ensure()
    s2._ensure()
    if s1.n_points != s2.n_points or len(s1.lines) != len(s2.lines):
        return None
    n = s1.n_points
    deg1 = [len(s1.lines_through(p)) for p in range(n)]
    deg2 = [len(s2.lines_through(p)) for p in range(n)]
    if sorted(deg1) != sorted(deg2):
        return None
    lineset2 = set(s2.lines)
    # order points of s1 so each new point is adjacent to already placed ones
    order = []
    placed = set()
    remaining = sorted(range(n), key=lambda p: -deg1[p])
    while remaining:
        pick = None
        for p in remaining:
            if any(s1.collinear(p, q) for q in placed):
                pick = p
                break
        if pick is None:
            pick = remaining[0]
        order.append(pick)
        placed.add(pick)
        remaining.remove(pick)

    mapping = {}
    used = set()

    def compatible(p, q):
        if deg1[p] != deg2[q]:
            return False
        for line in s1.lines_through(p):
            img = [mapping.get(x) for x in line]
            if all(y is not None or x == p for x, y in zip(line, img)):
                full = tuple(sorted(q if x == p else mapping[x] for x in line))
                if full not in lineset2:
                    return False
        # collinearity with every placed point must match
        for x, y in mapping.items():
            if s1.collinear(p, x) != s2.collinear(q, y):
                return False
        return True

    def extend(k):
        if k == n:
            return True
        p = order[k]
        for q in range(n):
            if q in used:
                continue
            if compatible(p, q):
                mapping[p] = q
                used.add(q)
                if extend(k + 1):
                    return True
                del mapping[p]
                used.discard(q)
        return False

    if extend(0):
        return dict(mapping)
    return None


# ---------------------------------------------------------------------------
# Text / JSON interchange


def space_to_text(space):
    out = ["points %d" % space.n_points]
    for line in space.lines:
        out.append(" ".join(str(p + 1) for p in line))
    return "\n".join(out) + "\n"


def space_from_text(text):
    lines = [l.strip() for l in text.strip().splitlines() if l.strip()]
    if not lines or not lines[0].startswith("points"):
        raise GeometryError("expected a 'points N' header")
    n = int(lines[0].split()[1])
    triples = []
    for l in lines[1:]:
        parts = [int(x) - 1 for x in l.split()]
        if len(parts) != 3:
            raise GeometryError("line %r does not have 3 points" % (l,))
        triples.append(tuple(parts))
    return PartialTripleSystem(n, triples)


def space_to_json_dict(space):
    return {
        "points": space.n_points,
        "labels": list(space.labels),
        "lines": [[p + 1 for p in line] for line in space.lines],
    }


def space_from_json_dict(data):
    return PartialTripleSystem(
        data["points"],
        [tuple(p - 1 for p in line) for line in data["lines"]],
        labels=data.get("labels"),
    )
