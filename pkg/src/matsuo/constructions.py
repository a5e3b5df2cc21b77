"""The named algebras and maps of the workbench: Matsuo algebras of triple
systems, projection algebras of root systems, zero-sum symmetric matrices,
hermitian 3x3 matrices over a quadratic etale extension, the explicit
isomorphisms between them, the characteristic-3 ideal chain, and the rank-4
counterexample coefficients.
"""

import random
from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, Subspace, _rref_rows, unit_vector
from .fischer import (
    build_p2_dual,
    build_p3,
    gamma_of_group,
    gamma_of_rootsystem,
    pts_isomorphic,
    root_system_from_name,
    P3_PARALLEL_CLASSES,
)
from .groups import (
    build_3sq2,
    build_sym,
    build_wk_affine_a,
    wk_embedding_subgroup,
    generator_bijection,
    generator_homomorphism,
)
from .algebra import (
    AlgebraError,
    AlgebraTable,
    eigen_decomposition,
    is_ideal,
    is_solvable,
    is_trivial_element,
    is_absolute_zero_divisor,
    quotient,
    subspace_product,
)


# ---------------------------------------------------------------------------
# Matsuo algebras


def matsuo_algebra(space, alpha, field):
    """The commutative algebra on the points of a partial triple system:
    points are idempotent, non-collinear points multiply to zero, and
    collinear points multiply to (alpha/2)(x + y - x^y)."""
    if alpha == field.zero or alpha == field.one:
        raise AlgebraError("alpha must differ from 0 and 1")
    res = space.validate()
    if not res.ok:
        raise AlgebraError("invalid triple system: %s" % res.error)
    f = field
    half_alpha = f.div(alpha, f.from_int(2))
    n = space.n_points
    products = {}
    for i in range(n):
        products[(i, i)] = unit_vector(f, n, i)
        for j in range(i + 1, n):
            v = [f.zero] * n
            if space.collinear(i, j):
                v[i] = half_alpha
                v[j] = half_alpha
                v[space.wedge(i, j)] = f.neg(half_alpha)
            products[(i, j)] = v
    return AlgebraTable.from_pairs(f, list(space.labels), products)


def matsuo_eigenbasis(space, alpha, field, x):
    """The labelled eigenvectors of a point x: the point itself (eigenvalue 1);
    y + x^y - alpha x per line through x together with the non-neighbours
    (eigenvalue 0); y - x^y per line through x (eigenvalue alpha)."""
    space._ensure()
    f = field
    n = space.n_points
    one_vecs = [unit_vector(f, n, x)]
    zero_vecs = []
    alpha_vecs = []
    for line in space.lines_through(x):
        y, z = sorted(p for p in line if p != x)
        v0 = [f.zero] * n
        v0[y] = f.one
        v0[z] = f.one
        v0[x] = f.neg(alpha)
        zero_vecs.append(v0)
        va = [f.zero] * n
        va[y] = f.one
        va[z] = f.neg(f.one)
        alpha_vecs.append(va)
    nbrs = set(space.neighbours(x))
    for y in range(n):
        if y != x and y not in nbrs:
            zero_vecs.append(unit_vector(f, n, y))
    return {f.one: one_vecs, f.zero: zero_vecs, alpha: alpha_vecs}


# ---------------------------------------------------------------------------
# Root projections


def proj_matrix(field, root):
    """Projection onto the span of a root vector: (1 / (v,v)) v^t v."""
    f = field
    nrm = f.from_int(sum(a * a for a in root))
    if nrm == f.zero:
        raise AlgebraError("root has singular length in this field")
    inv = f.inv(nrm)
    vals = [f.from_int(a) for a in root]
    return Matrix(f, [[f.mul(inv, f.mul(a, b)) for b in vals] for a in vals])


def _flatten(m):
    return [a for row in m.rows for a in row]


def _jordan_product(m1, m2, field):
    half = field.div(field.one, field.from_int(2))
    return (m1 * m2 + m2 * m1).scale(half)


def _coords_in_rows(field, rows, v):
    aug = [list(r) + [x] for r, x in zip([list(c) for c in zip(*rows)], v)]
    red, _ = _rref_rows(field, aug)
    ncols = len(rows)
    coords = [field.zero] * ncols
    for row in red:
        pc = next((i for i, a in enumerate(row) if a != field.zero), None)
        if pc is None:
            continue
        if pc == ncols:
            return None  # inconsistent: v outside the span
        coords[pc] = row[ncols]
    return coords


@dataclass
class RootProjectionAlgebra:
    algebra: AlgebraTable
    basis_roots: list
    root_coords: dict    # every positive root -> coordinates in the basis
    matrices: dict       # every positive root -> its projection matrix


def jordan_from_roots(field, rs):
    """The span of the root projections, as a structure-constant algebra under
    the symmetrized matrix product, on a maximal independent subset of the
    projections; reports coordinates for every positive root."""
    f = field
    mats = {r: proj_matrix(f, r) for r in rs.positive}
    basis_roots = []
    span = Subspace.zero(f, rs.ambient * rs.ambient)
    for r in rs.positive:
        grown = span.add(Subspace.from_vectors(f, rs.ambient * rs.ambient,
                                               [_flatten(mats[r])]))
        if grown.dim > span.dim:
            basis_roots.append(r)
            span = grown
    rows = [_flatten(mats[r]) for r in basis_roots]
    root_coords = {}
    for r in rs.positive:
        coords = _coords_in_rows(f, rows, _flatten(mats[r]))
        if coords is None:
            raise AlgebraError("projection of %r escapes the span" % (r,))
        root_coords[r] = coords
    products = {}
    for i, r in enumerate(basis_roots):
        for j in range(i, len(basis_roots)):
            s = basis_roots[j]
            prod = _jordan_product(mats[r], mats[s], f)
            coords = _coords_in_rows(f, rows, _flatten(prod))
            if coords is None:
                raise AlgebraError("projection span is not closed under the product")
            products[(i, j)] = coords
    labels = ["m(%s)" % ",".join(str(a) for a in r) for r in basis_roots]
    return RootProjectionAlgebra(
        AlgebraTable.from_pairs(f, labels, products), basis_roots, root_coords, mats
    )


def jr_dimension(field, rs):
    """Rank of the span of the outer products a^t a over the positive roots."""
    f = field
    vecs = []
    for r in rs.positive:
        vals = [f.from_int(a) for a in r]
        vecs.append([f.mul(a, b) for a in vals for b in vals])
    return Subspace.from_vectors(f, rs.ambient * rs.ambient, vecs).dim


@dataclass
class ProjectionCase:
    roots: tuple
    kind: str     # "same", "orthogonal", "span"
    k: int = 0
    third: tuple = None
    ok: bool = True


def verify_projection_products(field, rs):
    """Check the closed product formula for projections of two roots against
    the direct symmetrized matrix product, for every pair of positive roots:
    m_a for equal roots, 0 for orthogonal ones, and otherwise
    (1/4)(m_a + k m_b - m_c) with b the longer root, k the squared length
    ratio, and c the root among a+-b lying in the subsystem spanned by a, b."""
    f = field
    quarter = f.inv(f.from_int(4))
    mats = {r: proj_matrix(f, r) for r in rs.positive}
    all_roots = rs.root_set()
    cases = []
    for i, a in enumerate(rs.positive):
        for j in range(i, len(rs.positive)):
            b = rs.positive[j]
            direct = _jordan_product(mats[a], mats[b], f)
            if a == b:
                cases.append(ProjectionCase((a, b), "same", ok=direct == mats[a]))
                continue
            if rs.form(a, b) == 0:
                cases.append(ProjectionCase((a, b), "orthogonal",
                                            ok=direct.is_zero()))
                continue
            lo, hi = (a, b) if rs.norm(a) <= rs.norm(b) else (b, a)
            ratio = Fraction(rs.norm(hi), rs.norm(lo))
            if ratio.denominator != 1 or ratio.numerator not in (1, 2, 3):
                cases.append(ProjectionCase((a, b), "span", ok=False))
                continue
            k = ratio.numerator
            cands = []
            for cand in (
                tuple(x + y for x, y in zip(a, b)),
                tuple(x - y for x, y in zip(a, b)),
            ):
                if cand in all_roots:
                    cands.append(cand)
            if len(cands) > 1:
                # two short roots of the hexagonal system: the subsystem they
                # span is the equilateral one, whose third root matches their
                # common length
                cands = [c for c in cands
                         if sum(x * x for x in c) == rs.norm(lo)]
            if len(cands) != 1:
                cases.append(ProjectionCase((a, b), "span", k=k, ok=False))
                continue
            c = cands[0]
            mc = proj_matrix(f, c)
            formula = (mats[lo] + mats[hi].scale(f.from_int(k)) - mc).scale(quarter)
            cases.append(ProjectionCase((a, b), "span", k=k, third=c,
                                        ok=formula == direct))
    return cases


def matsuo_to_projection_map(field, rs):
    """The linear map sending each point of the root triple system to its
    projection matrix, in coordinates: columns indexed by the points of
    gamma(rs) (the positive roots in order), rows by the projection basis."""
    proj = jordan_from_roots(field, rs)
    cols = [proj.root_coords[r] for r in rs.positive]
    return proj, Matrix(field, [list(r) for r in zip(*cols)])


# ---------------------------------------------------------------------------
# Zero-sum symmetric matrices


@dataclass
class ZeroSumSymAlgebra:
    algebra: AlgebraTable
    n: int
    basis_pairs: list    # (i, j) with i < j, 0-based
    basis_matrices: list
    unit: list = None          # coordinates, when n != 0 in the field
    unit_matrix: Matrix = None


def zero_sum_sym_algebra(field, n):
    """The Jordan algebra of symmetric n x n matrices with zero row sums,
    on the basis of two-index projections (1/2)(e_ii - e_ij - e_ji + e_jj)."""
    if n < 2:
        raise AlgebraError("needs n >= 2")
    f = field
    half = f.div(f.one, f.from_int(2))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    mats = []
    for i, j in pairs:
        m = Matrix.zeros(f, n, n)
        m.rows[i][i] = half
        m.rows[j][j] = half
        m.rows[i][j] = f.neg(half)
        m.rows[j][i] = f.neg(half)
        mats.append(m)
    rows = [_flatten(m) for m in mats]
    products = {}
    for a in range(len(pairs)):
        for b in range(a, len(pairs)):
            prod = _jordan_product(mats[a], mats[b], f)
            coords = _coords_in_rows(f, rows, _flatten(prod))
            if coords is None:
                raise AlgebraError("zero-sum product escaped the basis span")
            products[(a, b)] = coords
    labels = ["m%d%d" % (i + 1, j + 1) for i, j in pairs]
    alg = AlgebraTable.from_pairs(f, labels, products)
    out = ZeroSumSymAlgebra(alg, n, pairs, mats)
    if f.from_int(n) != f.zero:
        ninv = f.inv(f.from_int(n))
        diag = f.mul(f.from_int(n - 1), ninv)
        off = f.neg(ninv)
        u = Matrix(f, [[diag if i == j else off for j in range(n)]
                       for i in range(n)])
        coords = _coords_in_rows(f, rows, _flatten(u))
        if coords is None:
            raise AlgebraError("unit escaped the basis span")
        out.unit = coords
        out.unit_matrix = u
    return out


def an_isomorphism(field, n):
    """The map from the Matsuo algebra of the A_(n-1) triple system to the
    zero-sum symmetric matrices, sending the point for root v_j - v_i to the
    corresponding projection.  Returns (gamma, matsuo-less matrix)."""
    rs = root_system_from_name("A%d" % (n - 1))
    zs = zero_sum_sym_algebra(field, n)
    pair_index = {p: t for t, p in enumerate(zs.basis_pairs)}
    f = field
    cols = []
    for r in rs.positive:
        i = r.index(1)
        j = r.index(-1)
        t = pair_index[(min(i, j), max(i, j))]
        cols.append(unit_vector(f, len(zs.basis_pairs), t))
    return rs, zs, Matrix(f, [list(row) for row in zip(*cols)])


# ---------------------------------------------------------------------------
# The plane of order three: unit, line idempotents, Peirce pieces


def p3_unit(field):
    """The unit (1/3) sum of the nine points; characteristic 3 has none."""
    if field.characteristic == 3:
        raise AlgebraError("no unit in characteristic 3: the point sum annihilates")
    third = field.inv(field.from_int(3))
    return [third] * 9


def line_idempotents(field, line):
    """The idempotent pair of a line of the order-3 plane: e_L weighting the
    line by -1/3 and its complement by 1/3, and f_L = unit - e_L."""
    if field.characteristic == 3:
        raise AlgebraError("line idempotents need characteristic != 3")
    f = field
    third = f.inv(f.from_int(3))
    e = [third] * 9
    fl = [f.zero] * 9
    two_thirds = f.mul(f.from_int(2), third)
    for p in line:
        e[p] = f.neg(third)
        fl[p] = two_thirds
    return e, fl


@dataclass
class PeirceDecomposition:
    lines: tuple
    idempotents: list
    diagonal: list       # three 1-dim subspaces
    off_diagonal: dict   # (i, j) -> subspace, i < j
    direct_sum_ok: bool


def p3_peirce(field, parallel_class=None):
    """The six-piece decomposition of the order-3 plane algebra attached to a
    parallel class of lines: spans of the three line idempotents, plus the
    pairwise intersections of their half-eigenspaces."""
    if parallel_class is None:
        parallel_class = P3_PARALLEL_CLASSES[0]
    lines = tuple(tuple(sorted(l)) for l in parallel_class)
    if sorted(p for l in lines for p in l) != list(range(9)):
        raise AlgebraError("lines do not form a parallel class")
    f = field
    A = matsuo_algebra(build_p3(), f.div(f.one, f.from_int(2)), f)
    es = [line_idempotents(f, l)[0] for l in lines]
    half = f.div(f.one, f.from_int(2))
    half_spaces = []
    for e in es:
        dec = eigen_decomposition(A, e, candidates=[f.one, f.zero, half])
        half_spaces.append(dec.space_of(half))
    diagonal = [Subspace.from_vectors(f, 9, [e]) for e in es]
    off = {}
    for i in range(3):
        for j in range(i + 1, 3):
            off[(i, j)] = half_spaces[i].intersect(half_spaces[j])
    total = Subspace.zero(f, 9)
    dims = 0
    for s in diagonal + list(off.values()):
        total = total.add(s)
        dims += s.dim
    return PeirceDecomposition(lines, es, diagonal, off,
                               total.dim == 9 and dims == 9)


# ---------------------------------------------------------------------------
# Hermitian 3x3 matrices over the quadratic etale extension


class EtaleModel:
    """F[x]/(x^2 + bx + c) presented on the basis {1, g}: elements are pairs
    u + v g, with the nontrivial automorphism swapping the two roots."""

    def __init__(self, field, name, b, c):
        self.field = field
        self.name = name
        self.b = field.from_int(b)   # g^2 = -b g - c
        self.c = field.from_int(c)

    def mul(self, x, y):
        f = self.field
        u1, v1 = x
        u2, v2 = y
        vv = f.mul(v1, v2)
        return (
            f.sub(f.mul(u1, u2), f.mul(self.c, vv)),
            f.sub(f.add(f.mul(u1, v2), f.mul(v1, u2)), f.mul(self.b, vv)),
        )

    def sigma(self, x):
        # the other root of x^2 + bx + c is -b - g
        f = self.field
        u, v = x
        return (f.sub(u, f.mul(self.b, v)), f.neg(v))

    def add(self, x, y):
        f = self.field
        return (f.add(x[0], y[0]), f.add(x[1], y[1]))

    def zero(self):
        f = self.field
        return (f.zero, f.zero)

    def one(self):
        f = self.field
        return (f.one, f.zero)

    def gen(self):
        f = self.field
        return (f.zero, f.one)


def zeta_model(field):
    """x^2 + 3: the generator squares to -3."""
    if field.characteristic == 3:
        raise AlgebraError("the quadratic extension degenerates in characteristic 3")
    return EtaleModel(field, "zeta", 0, 3)

def beta_model(field):
    """x^2 + x + 1: the generator is a primitive cube root of unity."""
    if field.characteristic == 3:
        raise AlgebraError("the quadratic extension degenerates in characteristic 3")
    return EtaleModel(field, "beta", 1, 1)


def _mat3_zero(model):
    z = model.zero()
    return [[z, z, z] for _ in range(3)]

def _brace(model, x, i, j):
    """x[ij] = x e_ij + sigma(x) e_ji."""
    m = _mat3_zero(model)
    if i == j:
        m[i][i] = model.add(x, model.sigma(x))
    else:
        m[i][j] = x
        m[j][i] = model.sigma(x)
    return m

def _mat3_mul(model, a, b):
    out = _mat3_zero(model)
    for i in range(3):
        for j in range(3):
            acc = model.zero()
            for t in range(3):
                acc = model.add(acc, model.mul(a[i][t], b[t][j]))
            out[i][j] = acc
    return out

def _mat3_jordan(model, a, b):
    f = model.field
    half = f.div(f.one, f.from_int(2))
    ab = _mat3_mul(model, a, b)
    ba = _mat3_mul(model, b, a)
    return [
        [
            (f.mul(half, f.add(ab[i][j][0], ba[i][j][0])),
             f.mul(half, f.add(ab[i][j][1], ba[i][j][1])))
            for j in range(3)
        ]
        for i in range(3)
    ]

def _mat3_scale2(model, m):
    f = model.field
    two = f.from_int(2)
    return [[(f.mul(two, e[0]), f.mul(two, e[1])) for e in row] for row in m]

def _mat3_eq(a, b):
    return a == b


_H3_OFF = [(0, 1), (0, 2), (1, 2)]


def h3_basis_matrices(model):
    f = model.field
    basis = []
    for i in range(3):
        m = _mat3_zero(model)
        m[i][i] = model.one()
        basis.append(m)
    for i, j in _H3_OFF:
        basis.append(_brace(model, model.one(), i, j))
        basis.append(_brace(model, model.gen(), i, j))
    return basis


def h3_labels(model):
    g = "z" if model.name == "zeta" else "b"
    out = ["e11", "e22", "e33"]
    for i, j in _H3_OFF:
        out.append("1[%d%d]" % (i + 1, j + 1))
        out.append("%s[%d%d]" % (g, i + 1, j + 1))
    return out


def _h3_coords(model, m):
    """Coordinates of a hermitian matrix in the 9-element basis."""
    f = model.field
    coords = []
    for i in range(3):
        u, v = m[i][i]
        if v != f.zero:
            raise AlgebraError("matrix is not hermitian")
        coords.append(u)
    for i, j in _H3_OFF:
        u, v = m[i][j]
        if model.sigma(m[i][j]) != m[j][i]:
            raise AlgebraError("matrix is not hermitian")
        coords.extend([u, v])
    return coords


def h3_algebra(field, model=None):
    """Hermitian 3x3 matrices over the quadratic extension, as a 9-dimensional
    structure-constant algebra under the symmetrized product."""
    model = model or zeta_model(field)
    basis = h3_basis_matrices(model)
    products = {}
    for a in range(9):
        for b in range(a, 9):
            products[(a, b)] = _h3_coords(model, _mat3_jordan(model, basis[a], basis[b]))
    return AlgebraTable.from_pairs(field, h3_labels(model), products)


def h3_rule_check(field, model=None):
    """The five defining multiplication rules of the hermitian algebra,
    checked on the basis {1, g} of the extension (enough by bilinearity)."""
    model = model or zeta_model(field)
    els = [model.one(), model.gen()]
    idx = range(3)
    # 2 x[ij] . y[jk] = (xy)[ik] for distinct i, j, k
    for i in idx:
        for j in idx:
            for k in idx:
                if len({i, j, k}) != 3:
                    continue
                for x in els:
                    for y in els:
                        lhs = _mat3_scale2(model, _mat3_jordan(
                            model, _brace(model, x, i, j), _brace(model, y, j, k)))
                        if not _mat3_eq(lhs, _brace(model, model.mul(x, y), i, k)):
                            return False
    # 2 x[ii] . y[ij] = ((x + sigma x) y)[ij] for i != j
    for i in idx:
        for j in idx:
            if i == j:
                continue
            for x in els:
                for y in els:
                    lhs = _mat3_scale2(model, _mat3_jordan(
                        model, _brace(model, x, i, i), _brace(model, y, i, j)))
                    tr = model.add(x, model.sigma(x))
                    if not _mat3_eq(lhs, _brace(model, model.mul(tr, y), i, j)):
                        return False
    # 2 x[ij] . y[ij] = (x sigma(y))[ii] + (x sigma(y))[jj] for i != j
    for i, j in _H3_OFF:
        for x in els:
            for y in els:
                lhs = _mat3_scale2(model, _mat3_jordan(
                    model, _brace(model, x, i, j), _brace(model, y, i, j)))
                w = model.mul(x, model.sigma(y))
                rhs = _brace(model, w, i, i)
                wjj = _brace(model, w, j, j)
                rhs = [[model.add(rhs[r][c], wjj[r][c]) for c in range(3)]
                       for r in range(3)]
                if not _mat3_eq(lhs, rhs):
                    return False
    # 2 x[ii] . y[ii] = ((x + sigma x)(y + sigma y))[ii]
    for i in idx:
        for x in els:
            for y in els:
                lhs = _mat3_scale2(model, _mat3_jordan(
                    model, _brace(model, x, i, i), _brace(model, y, i, i)))
                w = model.mul(model.add(x, model.sigma(x)),
                              model.add(y, model.sigma(y)))
                if not _mat3_eq(lhs, _brace(model, w, i, i)):
                    return False
    # x[ii] . y[kl] = 0 when i is outside {k, l}
    for i in idx:
        for k, l in _H3_OFF + [(t, t) for t in idx]:
            if i in (k, l):
                continue
            for x in els:
                for y in els:
                    prod = _mat3_jordan(model, _brace(model, x, i, i),
                                        _brace(model, y, k, l))
                    if not _mat3_eq(prod, _mat3_zero(model)):
                        return False
    return True


# eta: the explicit isomorphism from the plane algebra to the hermitian model.
#
# The rows parallel class pairs line t with the off-diagonal slot _ETA_SLOTS[t];
# on the zero-sum part of line t the images are quarter-weighted combinations
# of 1[ij] and g[ij], with the middle line carrying the opposite sign on g.
_ETA_LINES = P3_PARALLEL_CLASSES[0]
_ETA_SLOTS = [(1, 2), (0, 2), (0, 1)]   # [23], [13], [12]
_ETA_SIGNS = [1, -1, 1]


def _h3_label_index(model):
    labels = h3_labels(model)
    return {l: t for t, l in enumerate(labels)}


def eta_matrix(field, model=None):
    """The 9x9 matrix of the isomorphism from the order-3 plane algebra onto
    the hermitian matrices: line idempotents go to diagonal units, and the
    zero-sum piece of each line of the rows class goes into the matching
    off-diagonal slot."""
    model = model or zeta_model(field)
    f = field
    g = "z" if model.name == "zeta" else "b"
    idx = _h3_label_index(model)
    three_q = f.div(f.from_int(3), f.from_int(4))
    quarter = f.div(f.one, f.from_int(4))

    mixed_cols = []
    image_cols = []
    for t, line in enumerate(_ETA_LINES):
        e, _ = line_idempotents(f, line)
        mixed_cols.append(e)
        img = [f.zero] * 9
        img[t] = f.one  # e_{t+1,t+1}
        image_cols.append(img)
    for t, line in enumerate(_ETA_LINES):
        i, j = _ETA_SLOTS[t]
        sgn = _ETA_SIGNS[t]
        u_idx = idx["1[%d%d]" % (i + 1, j + 1)]
        g_idx = idx["%s[%d%d]" % (g, i + 1, j + 1)]
        a, b, c = line
        for lam, mu in ((1, 0), (0, 1)):
            v = [f.zero] * 9
            v[a] = f.from_int(lam)
            v[b] = f.from_int(mu)
            v[c] = f.from_int(-(lam + mu))
            mixed_cols.append(v)
            img = [f.zero] * 9
            img[u_idx] = f.mul(three_q, f.from_int(lam + mu))
            img[g_idx] = f.mul(quarter, f.from_int(sgn * (lam - mu)))
            image_cols.append(img)

    mixed = Matrix(f, [list(r) for r in zip(*mixed_cols)])
    images = Matrix(f, [list(r) for r in zip(*image_cols)])
    return images * mixed.inverse()


def model_translation(field):
    """The coordinate change between the two presentations of the quadratic
    extension: the square root of -3 equals twice a primitive cube root of
    unity plus one.  Maps zeta-model coordinates to beta-model coordinates."""
    f = field
    zm = zeta_model(field)
    bm = beta_model(field)
    src = _h3_label_index(zm)
    dst = _h3_label_index(bm)
    m = Matrix.zeros(f, 9, 9)
    for i in range(3):
        m.rows[dst["e%d%d" % (i + 1, i + 1)]][src["e%d%d" % (i + 1, i + 1)]] = f.one
    for i, j in _H3_OFF:
        one_s = src["1[%d%d]" % (i + 1, j + 1)]
        z_s = src["z[%d%d]" % (i + 1, j + 1)]
        one_d = dst["1[%d%d]" % (i + 1, j + 1)]
        b_d = dst["b[%d%d]" % (i + 1, j + 1)]
        m.rows[one_d][one_s] = f.one
        m.rows[one_d][z_s] = f.one          # zeta = 1 + 2 beta
        m.rows[b_d][z_s] = f.from_int(2)
    return m


def eta_beta_printed_coefficient(field, lam, mu):
    """The sixth-root-of-unity form of the line map, transcribed literally:
    lam p1 + mu p2 + nu p3 (zero sum) goes to (lam xi + mu xi^5 + nu xi^3)
    with xi = beta + 1, as a beta-model coefficient pair."""
    f = field
    bm = beta_model(field)
    xi = (f.one, f.one)
    xi5 = bm.sigma(xi)                       # xi^5 = sigma(xi)
    xi3 = (f.neg(f.one), f.zero)             # xi^3 = -1
    nu = f.neg(f.add(lam, mu))
    acc = bm.zero()
    for coeff, root in ((lam, xi), (mu, xi5), (nu, xi3)):
        acc = bm.add(acc, (f.mul(coeff, root[0]), f.mul(coeff, root[1])))
    return acc


# ---------------------------------------------------------------------------
# Characteristic three: the ideal chain


@dataclass
class CharThreeChain:
    algebra: AlgebraTable
    z_space: Subspace
    t_space: Subspace
    r_space: Subspace
    dims: tuple
    ideals_ok: bool
    squares_ok: bool        # R^2 = T, T^2 = Z, Z^2 = 0
    z_trivial: bool
    t_zero_divisors: bool
    quotient_dim: int
    quotient_unital: bool
    algebra_not_solvable: bool
    r_solvable: bool

    def all_ok(self):
        return (
            self.dims == (1, 6, 8)
            and self.ideals_ok
            and self.squares_ok
            and self.z_trivial
            and self.t_zero_divisors
            and self.quotient_dim == 1
            and self.quotient_unital
            and self.algebra_not_solvable
            and self.r_solvable
        )


def p3_char3_chain(field, seed=1729):
    """Over characteristic 3, the chain 0 < Z < T < R < J inside the plane
    algebra: the point sum, the line sums, and the zero-sum hyperplane."""
    if field.characteristic != 3:
        raise AlgebraError("the chain lives in characteristic 3")
    f = field
    plane = build_p3()
    A = matsuo_algebra(plane, f.div(f.one, f.from_int(2)), f)
    z_vec = [f.one] * 9
    z_space = Subspace.from_vectors(f, 9, [z_vec])
    t_vecs = []
    for line in plane.lines:
        v = [f.zero] * 9
        for p in line:
            v[p] = f.one
        t_vecs.append(v)
    t_space = Subspace.from_vectors(f, 9, t_vecs)
    r_vecs = []
    for i in range(8):
        v = [f.zero] * 9
        v[i] = f.one
        v[8] = f.neg(f.one)
        r_vecs.append(v)
    r_space = Subspace.from_vectors(f, 9, r_vecs)

    ideals_ok = all(is_ideal(A, s) for s in (z_space, t_space, r_space))
    squares_ok = (
        subspace_product(A, r_space, r_space) == t_space
        and subspace_product(A, t_space, t_space) == z_space
        and subspace_product(A, z_space, z_space).is_zero()
    )
    z_trivial = is_trivial_element(A, z_vec)

    rng = random.Random(seed)
    combos = list(t_space.rows)
    for _ in range(8):
        v = [f.zero] * 9
        for row in t_space.rows:
            c = f.from_int(rng.randint(0, 2))
            for i, a in enumerate(row):
                v[i] = f.add(v[i], f.mul(c, a))
        combos.append(v)
    t_zero_divisors = all(is_absolute_zero_divisor(A, v) for v in combos)

    q = quotient(A, r_space)
    qa = q.algebra
    quotient_unital = (
        qa.dim == 1 and qa.mul_basis(0, 0) == [f.one]
    )
    return CharThreeChain(
        A, z_space, t_space, r_space,
        (z_space.dim, t_space.dim, r_space.dim),
        ideals_ok, squares_ok, z_trivial, t_zero_divisors,
        qa.dim, quotient_unital,
        not is_solvable(A, Subspace.full(f, 9)),
        is_solvable(A, r_space),
    )


# ---------------------------------------------------------------------------
# Rank-4 counterexample coefficients (sparse over the points actually touched)


def _sparse_point_product(group, u, v):
    if u == v:
        return {u: Fraction(1)}
    k = group.order_of_product(u, v)
    if k == 2:
        return {}
    if k != 3:
        raise AlgebraError("pair of involutions with product order %d" % k)
    w = group.conjugate(u, v)
    q = Fraction(1, 4)
    return {u: q, v: q, w: -q}


def _sparse_mul(group, x, y):
    out = {}
    for u, cu in x.items():
        for v, cv in y.items():
            c = cu * cv
            for p, w in _sparse_point_product(group, u, v).items():
                t = out.get(p, 0) + c * w
                if t:
                    out[p] = t
                else:
                    out.pop(p, None)
    return out


@dataclass
class Rank4Report:
    group_name: str
    coeff_a_left: Fraction
    coeff_a_right: Fraction
    coeff_acdb_left: Fraction
    coeff_acdb_right: Fraction
    points_touched: int

    def jordan_violated(self):
        return (self.coeff_a_left != self.coeff_a_right
                or self.coeff_acdb_left != self.coeff_acdb_right)


def rank4_check(group):
    """For generators a, b, c, d and x = a + b + c in the half-parameter
    Matsuo algebra of the group, the coefficients of the basis points a and
    a^(cdb) on the two sides of ((xx)d)x = (xx)(dx).  The computation is
    sparse: only points reached through repeated wedges are materialized."""
    if len(group.generators) != 4:
        raise AlgebraError("rank-4 check needs exactly four generators")
    a, b, c, d = group.generators
    if len({a, b, c, d}) != 4:
        raise AlgebraError("degenerate generator set")
    for g in (a, b, c, d):
        if group.mul(g, g) != group.identity:
            raise AlgebraError("generators must be involutions")
    one = Fraction(1)
    x = {a: one, b: one, c: one}
    dd = {d: one}
    xx = _sparse_mul(group, x, x)
    left = _sparse_mul(group, _sparse_mul(group, xx, dd), x)
    right = _sparse_mul(group, xx, _sparse_mul(group, dd, x))
    w = group.mul(group.mul(c, d), b)
    acdb = group.mul(group.mul(group.inv(w), a), w)
    return Rank4Report(
        group.name,
        left.get(a, Fraction(0)),
        right.get(a, Fraction(0)),
        left.get(acdb, Fraction(0)),
        right.get(acdb, Fraction(0)),
        len(set(left) | set(right)),
    )


@dataclass
class EmbeddingReport:
    k: int
    r: int
    small_order: int
    embedded_order: int
    exact_bijection: bool
    central_quotient: bool     # embedded maps onto small with central kernel
    kernel_size: int
    spaces_isomorphic: bool
    small_rank4: Rank4Report
    embedded_rank4: Rank4Report

    def coefficients_match(self):
        return (
            self.small_rank4.coeff_a_left == self.embedded_rank4.coeff_a_left
            and self.small_rank4.coeff_a_right == self.embedded_rank4.coeff_a_right
        )

    def ok(self):
        return (
            self.central_quotient
            and self.kernel_size * self.small_order == self.embedded_order
            and self.spaces_isomorphic
            and self.coefficients_match()
        )


def embedding_check(k, r=5):
    """The four block matrices inside the larger affine group replay the small
    affine group: the generated subgroup maps onto it generator-by-generator
    with central kernel (trivial for odd k, order 2 for k = 2, where the
    short all-ones translation survives in the larger quotient), the two
    triple systems on the involution classes are isomorphic, and the
    counterexample coefficients transfer unchanged."""
    small = build_wk_affine_a(k, 3)
    sub = wk_embedding_subgroup(k, r)
    small_order = small.order()
    sub_order = sub.order()
    hom = generator_homomorphism(sub, small)
    central = False
    kernel_size = 0
    if hom is not None:
        kernel = [x for x, y in hom.items() if y == small.identity]
        kernel_size = len(kernel)
        central = all(
            sub.mul(z, g) == sub.mul(g, z)
            for z in kernel
            for g in sub.generators
        )
    spaces_iso = pts_isomorphic(gamma_of_group(small), gamma_of_group(sub)) is not None
    return EmbeddingReport(
        k, r, small_order, sub_order,
        generator_bijection(small, sub) is not None,
        hom is not None and central,
        kernel_size,
        spaces_iso,
        rank4_check(small), rank4_check(sub),
    )


# ---------------------------------------------------------------------------
# Name-based builders shared by the command line and the tests


def space_from_name(name):
    name = name.strip()
    lowered = name.lower()
    if lowered == "p3":
        return build_p3()
    if lowered in ("p2dual", "p2v", "p2"):
        return build_p2_dual()
    raise AlgebraError("unknown space %r (expected P3 or P2dual)" % (name,))


def group_from_name(name):
    name = name.strip()
    lowered = name.lower()
    if lowered.startswith("sym:"):
        return build_sym(int(name.split(":", 1)[1]))
    if lowered == "3sq2":
        return build_3sq2()
    if lowered in ("w2a3", "w3a3"):
        return build_wk_affine_a(int(lowered[1]), 3)
    raise AlgebraError("unknown group %r" % (name,))


def triple_system_from_cli(space=None, group=None, roots=None):
    picked = [x for x in (space, group, roots) if x]
    if len(picked) != 1:
        raise AlgebraError("specify exactly one of space, group or roots")
    if space:
        return space_from_name(space)
    if group:
        return gamma_of_group(group_from_name(group))
    return gamma_of_rootsystem(root_system_from_name(roots))
