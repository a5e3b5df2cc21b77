"""Commutative algebras given by structure constants on a finite basis:
products, adjoints, eigen decompositions, fusion-rule and Jordan-identity
verification, Miyamoto maps, U-operators, ideals and quotients.

Vectors are coordinate lists over the algebra's field; the multiplication
table is stored densely but all heavy scans run on sparse dict views, since
the tables in scope have very few nonzeros per product.
"""

import json
import random
from dataclasses import dataclass

from .linalg import Matrix, Subspace, kernel, unit_vector, vec_is_zero
from .fields import field_from_name


class AlgebraError(ValueError):
    pass


class AlgebraTable:
    """A commutative algebra over an exact field, as a symmetric table of
    basis products."""

    def __init__(self, field, labels, table):
        self.field = field
        self.labels = list(labels)
        self.dim = len(self.labels)
        self.table = table  # table[i][j] = coordinate list of b_i b_j
        if len(table) != self.dim or any(len(row) != self.dim for row in table):
            raise AlgebraError("table shape does not match basis size")
        self._sparse = None

    @classmethod
    def from_pairs(cls, field, labels, pair_products):
        """Build from products given for i <= j only."""
        dim = len(labels)
        zero_row = [field.zero] * dim
        table = [[list(zero_row) for _ in range(dim)] for _ in range(dim)]
        for (i, j), vec in pair_products.items():
            table[i][j] = list(vec)
            table[j][i] = list(vec)
        return cls(field, labels, table)

    def check_commutative(self):
        for i in range(self.dim):
            for j in range(i, self.dim):
                if self.table[i][j] != self.table[j][i]:
                    return False
        return True

    def sparse_row(self, i, j):
        if self._sparse is None:
            zero = self.field.zero
            self._sparse = [
                [
                    {k: c for k, c in enumerate(row) if c != zero}
                    for row in rows
                ]
                for rows in self.table
            ]
        return self._sparse[i][j]

    def mul_basis(self, i, j):
        return list(self.table[i][j])

    def mul(self, x, y):
        """Bilinear extension of the table to coordinate vectors."""
        if len(x) != self.dim or len(y) != self.dim:
            raise AlgebraError("vector length does not match algebra dimension")
        f = self.field
        zero = f.zero
        acc = [zero] * self.dim
        for i, cx in enumerate(x):
            if cx == zero:
                continue
            for j, cy in enumerate(y):
                if cy == zero:
                    continue
                c = f.mul(cx, cy)
                for k, v in self.sparse_row(i, j).items():
                    acc[k] = f.add(acc[k], f.mul(c, v))
        return acc

    def ad(self, x):
        """Matrix of left multiplication by x (columns are x * b_j)."""
        cols = [self.mul(x, unit_vector(self.field, self.dim, j))
                for j in range(self.dim)]
        return Matrix(self.field, [list(r) for r in zip(*cols)])

    def is_idempotent(self, e):
        return self.mul(e, e) == list(e)

    def __repr__(self):
        return "AlgebraTable(%s, dim=%d)" % (self.field.name, self.dim)


# ---------------------------------------------------------------------------
# Sparse helpers (dict vectors keyed by basis index)


def _sp_accumulate(field, acc, c, vec):
    add, mul, zero = field.add, field.mul, field.zero
    for k, v in vec.items():
        w = add(acc.get(k, zero), mul(c, v))
        if w == zero:
            acc.pop(k, None)
        else:
            acc[k] = w


def _sp_mul_vec_basis(A, v, t):
    out = {}
    f = A.field
    for s, c in v.items():
        _sp_accumulate(f, out, c, A.sparse_row(s, t))
    return out


def _sp_mul_vec_vec(A, u, v):
    out = {}
    f = A.field
    mul = f.mul
    for s, cu in u.items():
        for t, cv in v.items():
            _sp_accumulate(f, out, mul(cu, cv), A.sparse_row(s, t))
    return out


def _sp_from_dense(field, v):
    zero = field.zero
    return {i: c for i, c in enumerate(v) if c != zero}


def _sp_to_dense(field, v, dim):
    out = [field.zero] * dim
    for k, c in v.items():
        out[k] = c
    return out


# ---------------------------------------------------------------------------
# Fusion rules


@dataclass(frozen=True)
class FusionRules:
    eigenvalues: tuple
    table: dict
    alpha: object = None

    def allowed(self, phi, psi):
        return self.table[(phi, psi)]


def phi_alpha(field, alpha):
    """The three-eigenvalue fusion rules on {1, 0, alpha}: products of 1- and
    0-eigenvectors stay put, alpha-eigenvectors are swapped back to {1, 0} by
    squaring, and mixing with alpha stays in the alpha part."""
    one, zero = field.one, field.zero
    if alpha in (one, zero):
        raise AlgebraError("alpha must differ from 0 and 1")
    tbl = {
        (one, one): (one,),
        (one, zero): (),
        (one, alpha): (alpha,),
        (zero, zero): (zero,),
        (zero, alpha): (alpha,),
        (alpha, alpha): (one, zero),
    }
    full = {}
    for (p, q), v in tbl.items():
        full[(p, q)] = v
        full[(q, p)] = v
    return FusionRules((one, zero, alpha), full, alpha)


# ---------------------------------------------------------------------------
# Jordan verification


@dataclass
class JordanCheck:
    is_jordan: bool
    kind: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.is_jordan


def _defining_identity_gap(A, x, y):
    """(xy)(xx) - x(y(xx)), zero exactly when the pair satisfies the identity."""
    xx = A.mul(x, x)
    lhs = A.mul(A.mul(x, y), xx)
    rhs = A.mul(x, A.mul(y, xx))
    return [A.field.sub(a, b) for a, b in zip(lhs, rhs)]


def jordan_sample_pairs(A, seed=1729, count=64):
    """Deterministic sample for the quadratic identity: the first four basis
    elements combined as (b0+b1+b2, b3), then seeded small random vectors."""
    f = A.field
    pairs = []
    if A.dim >= 4:
        x = [f.zero] * A.dim
        for i in range(3):
            x[i] = f.one
        pairs.append((x, unit_vector(f, A.dim, 3)))
    rng = random.Random(seed)
    vecs = [
        [f.from_int(rng.randint(-2, 2)) for _ in range(A.dim)]
        for _ in range(count)
    ]
    pairs.extend(zip(vecs[0::2], vecs[1::2]))
    return pairs


def jordan_check(A, seed=1729):
    """Decide whether the table satisfies the Jordan identity.

    The four-variable linearization is checked on all basis quadruples, which
    is exact and complete by multilinearity; quadruples are only enumerated up
    to the symmetry of the identity in its three repeated slots.  The
    quadratic identity itself is additionally evaluated on a deterministic
    sample of non-basis elements first, so a failure is reported with a small
    witness pair when one exists there.
    """
    f = A.field
    for x, y in jordan_sample_pairs(A, seed=seed):
        if not vec_is_zero(f, _defining_identity_gap(A, x, y)):
            return JordanCheck(False, "pair", (x, y))
    dim = A.dim
    neg = f.neg
    for i in range(dim):
        for j in range(i, dim):
            pij = A.sparse_row(i, j)
            for k in range(j, dim):
                pjk = A.sparse_row(j, k)
                pki = A.sparse_row(k, i)
                for y in range(dim):
                    acc = {}
                    _sp_accumulate(f, acc, f.one,
                                   _sp_mul_vec_basis(A, _sp_mul_vec_basis(A, pij, y), k))
                    _sp_accumulate(f, acc, f.one,
                                   _sp_mul_vec_basis(A, _sp_mul_vec_basis(A, pjk, y), i))
                    _sp_accumulate(f, acc, f.one,
                                   _sp_mul_vec_basis(A, _sp_mul_vec_basis(A, pki, y), j))
                    _sp_accumulate(f, acc, neg(f.one),
                                   _sp_mul_vec_vec(A, pij, A.sparse_row(y, k)))
                    _sp_accumulate(f, acc, neg(f.one),
                                   _sp_mul_vec_vec(A, pjk, A.sparse_row(y, i)))
                    _sp_accumulate(f, acc, neg(f.one),
                                   _sp_mul_vec_vec(A, pki, A.sparse_row(y, j)))
                    if acc:
                        return JordanCheck(False, "quadruple", (i, j, y, k))
    return JordanCheck(True)


def linearized_identity_holds(A, i, j, y, k):
    """Direct dense evaluation of the linearized identity on one basis
    quadruple (x, z, y, w) = (b_i, b_j, b_y, b_k); independent of the sparse
    scan above."""
    f = A.field
    e = lambda t: unit_vector(f, A.dim, t)
    x, z, yv, w = e(i), e(j), e(y), e(k)
    lhs = [f.zero] * A.dim
    for t in (
        A.mul(A.mul(A.mul(x, z), yv), w),
        A.mul(A.mul(A.mul(z, w), yv), x),
        A.mul(A.mul(A.mul(w, x), yv), z),
    ):
        lhs = [f.add(a, b) for a, b in zip(lhs, t)]
    rhs = [f.zero] * A.dim
    for t in (
        A.mul(A.mul(x, z), A.mul(yv, w)),
        A.mul(A.mul(z, w), A.mul(yv, x)),
        A.mul(A.mul(w, x), A.mul(yv, z)),
    ):
        rhs = [f.add(a, b) for a, b in zip(rhs, t)]
    return lhs == rhs


# ---------------------------------------------------------------------------
# Eigen decomposition and fusion-rule (axis) checking


@dataclass
class EigenDecomposition:
    eigenvalues: list
    spaces: list
    diagonalizable: bool

    def dims(self):
        return tuple(s.dim for s in self.spaces)

    def space_of(self, value):
        return self.spaces[self.eigenvalues.index(value)]


def eigen_decomposition(A, e, candidates=None):
    """Eigenspaces of ad(e) over a candidate eigenvalue set (default 1, 0, 1/2);
    diagonalizable iff the dimensions add up to dim A."""
    if not A.is_idempotent(e):
        raise AlgebraError("eigen decomposition requires an idempotent")
    f = A.field
    if candidates is None:
        candidates = [f.one, f.zero, f.div(f.one, f.from_int(2))]
    ad_e = A.ad(e)
    values, spaces = [], []
    for lam in candidates:
        m = ad_e - Matrix.identity(f, A.dim).scale(lam)
        spc = kernel(m)
        if spc.dim > 0:
            values.append(lam)
            spaces.append(spc)
    total = sum(s.dim for s in spaces)
    return EigenDecomposition(values, spaces, total == A.dim)


@dataclass
class AxisCheck:
    ok: bool
    dims: tuple = ()
    eigenvalues: tuple = ()
    reason: str = ""
    witness: tuple = ()

    def __bool__(self):
        return self.ok


def check_axis(A, e, rules):
    """Whether the idempotent e diagonalizes over the fusion eigenvalues and
    every eigenvector product lands in the prescribed eigenspace sum."""
    try:
        dec = eigen_decomposition(A, e, candidates=list(rules.eigenvalues))
    except AlgebraError as err:
        return AxisCheck(False, reason=str(err))
    if not dec.diagonalizable:
        return AxisCheck(False, dec.dims(), tuple(dec.eigenvalues),
                         "eigenspaces do not span the algebra")
    f = A.field
    present = list(dec.eigenvalues)
    for pi in range(len(present)):
        for qi in range(pi, len(present)):
            phi, psi = present[pi], present[qi]
            allowed_vals = rules.allowed(phi, psi)
            target = Subspace.from_vectors(
                f, A.dim,
                [row for v in allowed_vals if v in present
                 for row in dec.space_of(v).rows],
            )
            for u in dec.spaces[pi].rows:
                su = _sp_from_dense(f, u)
                for v in dec.spaces[qi].rows:
                    prod = _sp_mul_vec_vec(A, su, _sp_from_dense(f, v))
                    if not target.contains(_sp_to_dense(f, prod, A.dim)):
                        return AxisCheck(False, dec.dims(), tuple(present),
                                         "fusion rule violated",
                                         (phi, psi, u, v))
    return AxisCheck(True, dec.dims(), tuple(present))


def miyamoto(A, e, rules):
    """The involution fixing the 1- and 0-eigenspaces of an axis and negating
    the alpha-eigenspace; verified to be an algebra automorphism of order <= 2."""
    axis = check_axis(A, e, rules)
    if not axis.ok:
        raise AlgebraError("miyamoto map needs an axis: %s" % axis.reason)
    dec = eigen_decomposition(A, e, candidates=list(rules.eigenvalues))
    f = A.field
    cols = []
    signs = []
    for lam, spc in zip(dec.eigenvalues, dec.spaces):
        for row in spc.rows:
            cols.append(list(row))
            signs.append(f.neg(f.one) if lam == rules.alpha else f.one)
    basis = Matrix(f, [list(r) for r in zip(*cols)])
    diag = Matrix.zeros(f, A.dim, A.dim)
    for i, s in enumerate(signs):
        diag.rows[i][i] = s
    tau = basis * diag * basis.inverse()
    if not (tau * tau == Matrix.identity(f, A.dim)):
        raise AlgebraError("miyamoto map does not square to the identity")
    if not is_multiplicative(A, A, tau):
        raise AlgebraError("miyamoto map is not an algebra automorphism")
    return tau


# ---------------------------------------------------------------------------
# U-operators, ideals, quotients


def u_operator(A, a):
    """U_a(b) = 2a(ab) - (aa)b as a matrix."""
    f = A.field
    two = f.from_int(2)
    aa = A.mul(a, a)
    cols = []
    for j in range(A.dim):
        b = unit_vector(f, A.dim, j)
        t = A.mul(a, A.mul(a, b))
        s = A.mul(aa, b)
        cols.append([f.sub(f.mul(two, u), v) for u, v in zip(t, s)])
    return Matrix(f, [list(r) for r in zip(*cols)])


def is_absolute_zero_divisor(A, a):
    return u_operator(A, a).is_zero()


def is_trivial_element(A, a):
    return is_absolute_zero_divisor(A, a) and vec_is_zero(A.field, A.mul(a, a))


def subspace_product(A, s, t):
    """Span of all products of a basis of s with a basis of t."""
    f = A.field
    vecs = []
    for u in s.rows:
        su = _sp_from_dense(f, u)
        for v in t.rows:
            prod = _sp_mul_vec_vec(A, su, _sp_from_dense(f, v))
            vecs.append(_sp_to_dense(f, prod, A.dim))
    return Subspace.from_vectors(f, A.dim, vecs)


def is_ideal(A, s):
    f = A.field
    for i in range(A.dim):
        row = {i: f.one}
        for v in s.rows:
            prod = _sp_mul_vec_vec(A, row, _sp_from_dense(f, v))
            if not s.contains(_sp_to_dense(f, prod, A.dim)):
                return False
    return True


def solvable_chain(A, s):
    """The derived chain s, s^2, (s^2)^2, ... until it stabilizes or vanishes."""
    chain = [s]
    for _ in range(A.dim + 1):
        cur = chain[-1]
        if cur.dim == 0:
            break
        nxt = subspace_product(A, cur, cur)
        chain.append(nxt)
        if nxt.dim >= cur.dim:
            break
    return chain

def is_solvable(A, s):
    return solvable_chain(A, s)[-1].dim == 0


@dataclass
class QuotientResult:
    algebra: AlgebraTable
    complement: list  # ambient coordinates carrying the quotient basis


def quotient(A, s):
    """Quotient by an ideal, on the complement of the ideal's pivot columns."""
    if not is_ideal(A, s):
        raise AlgebraError("quotient requires an ideal")
    f = A.field
    zero = f.zero
    pivots = []
    for row in s.rows:
        pivots.append(next(i for i, a in enumerate(row) if a != zero))
    comp = [i for i in range(A.dim) if i not in set(pivots)]
    labels = [A.labels[i] for i in comp]
    products = {}
    for a, i in enumerate(comp):
        for b in range(a, len(comp)):
            j = comp[b]
            w = s.reduce(A.mul_basis(i, j))
            products[(a, b)] = [w[t] for t in comp]
    return QuotientResult(AlgebraTable.from_pairs(f, labels, products), comp)


# ---------------------------------------------------------------------------
# Morphisms


def is_multiplicative(A, B, m):
    """f(b_i b_j) = f(b_i) f(b_j) for all basis pairs, with f given by the
    columns of m (coordinates of A mapped into B)."""
    if m.ncols != A.dim or m.nrows != B.dim:
        raise AlgebraError("matrix shape does not match the two algebras")
    cols = [m.column(j) for j in range(A.dim)]
    for i in range(A.dim):
        for j in range(i, A.dim):
            lhs = m.matvec(A.mul_basis(i, j))
            rhs = B.mul(cols[i], cols[j])
            if lhs != rhs:
                return False
    return True


def iso_check(A, B, m):
    """Whether m is an algebra isomorphism from A to B."""
    if A.dim != B.dim:
        raise AlgebraError("algebras have different dimensions")
    if A.field != B.field:
        raise AlgebraError("algebras live over different fields")
    from .linalg import rref as _rref
    _, rank = _rref(m)
    if rank != A.dim:
        return False
    return is_multiplicative(A, B, m)


def direct_sum(A, B):
    """Orthogonal direct sum: concatenated bases, zero cross products."""
    if A.field != B.field:
        raise AlgebraError("direct sum needs a common field")
    f = A.field
    dim = A.dim + B.dim
    labels = list(A.labels) + list(B.labels)
    products = {}
    for i in range(A.dim):
        for j in range(i, A.dim):
            products[(i, j)] = list(A.mul_basis(i, j)) + [f.zero] * B.dim
    for i in range(B.dim):
        for j in range(i, B.dim):
            products[(A.dim + i, A.dim + j)] = [f.zero] * A.dim + list(B.mul_basis(i, j))
    return AlgebraTable.from_pairs(f, labels, products)


# ---------------------------------------------------------------------------
# Idempotent search on small supports (test fixtures and the CLI)


def find_idempotents(A, max_support=2, numerators=range(-3, 4), denominators=(1, 2, 3)):
    """Nonzero idempotents supported on at most max_support basis vectors with
    coordinates from a small rational grid.  Exhaustive only in that range."""
    from itertools import combinations
    f = A.field
    grid = []
    for num in numerators:
        for den in denominators:
            if num != 0:
                try:
                    grid.append(f.div(f.from_int(num), f.from_int(den)))
                except ZeroDivisionError:
                    continue
    grid = sorted(set(grid), key=str)
    found = []
    seen = set()
    for size in range(1, max_support + 1):
        for support in combinations(range(A.dim), size):
            for coeffs in _grid_tuples(grid, size):
                v = [f.zero] * A.dim
                for pos, c in zip(support, coeffs):
                    v[pos] = c
                if A.is_idempotent(v):
                    key = tuple(v)
                    if key not in seen:
                        seen.add(key)
                        found.append(v)
    return found


def _grid_tuples(grid, size):
    if size == 0:
        yield ()
        return
    for head in grid:
        for tail in _grid_tuples(grid, size - 1):
            yield (head,) + tail


# ---------------------------------------------------------------------------
# JSON interchange


def algebra_to_json_dict(A):
    fmt = A.field.fmt
    products = []
    for i in range(A.dim):
        products.append([[fmt(c) for c in A.table[i][j]] for j in range(i, A.dim)])
    return {
        "field": A.field.name,
        "dim": A.dim,
        "labels": list(A.labels),
        "products": products,
    }


def algebra_from_json_dict(data):
    field = field_from_name(data["field"])
    labels = data["labels"]
    dim = data["dim"]
    if len(labels) != dim:
        raise AlgebraError("label count does not match dim")
    products = {}
    for i, row in enumerate(data["products"]):
        for off, vec in enumerate(row):
            products[(i, i + off)] = [field.parse(s) for s in vec]
    return AlgebraTable.from_pairs(field, labels, products)


def algebra_to_json(A):
    return json.dumps(algebra_to_json_dict(A), indent=2, sort_keys=True) + "\n"


def algebra_from_json(text):
    return algebra_from_json_dict(json.loads(text))
