"""Finite group realizations and coset enumeration.

Three kinds of realization share one duck-typed surface (identity, mul, inv,
generators, D): permutations as tuples, affine matrices over F_k modulo the
diagonal translation subgroup, and cosets of a finitely presented group
coming out of the Todd-Coxeter enumerator.  Elements are always hashable
values with structural equality.
"""

import os
from dataclasses import dataclass, field

DEFAULT_MAX_COSETS = 2_000_000
ELEMENT_CAP = 1_000_000


class GroupError(ValueError):
    pass


def mulclose(gens, mul, identity, cap=ELEMENT_CAP):
    """Breadth-first closure of generators; deterministic discovery order."""
    seen = {identity: None}
    queue = [identity]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for g in gens:
            y = mul(x, g)
            if y not in seen:
                if len(seen) >= cap:
                    raise GroupError("element closure exceeded cap %d" % cap)
                seen[y] = None
                queue.append(y)
    return queue


def conjugacy_closure(seeds, gens, mul, inv, cap=ELEMENT_CAP):
    """Closure of seed elements under conjugation by the given generators."""
    seen = dict.fromkeys(seeds)
    queue = list(seen)
    head = 0
    inv_gens = [inv(g) for g in gens]
    while head < len(queue):
        x = queue[head]
        head += 1
        for g, gi in zip(gens, inv_gens):
            y = mul(mul(gi, x), g)
            if y not in seen:
                if len(seen) >= cap:
                    raise GroupError("conjugacy closure exceeded cap %d" % cap)
                seen[y] = None
                queue.append(y)
    return queue


class GroupRealization:
    """A finite group given by explicit element values and callables."""

    def __init__(self, name, identity, mul, inv, generators, gen_names,
                 d_seeds=None, explicit_d=None, label_fn=None, elements=None):
        self.name = name
        self.identity = identity
        self.mul = mul
        self.inv = inv
        self.generators = list(generators)
        self.gen_names = list(gen_names)
        self._d_seeds = list(d_seeds) if d_seeds is not None else None
        self._d = list(explicit_d) if explicit_d is not None else None
        self._label_fn = label_fn
        self._elements = list(elements) if elements is not None else None

    @property
    def D(self):
        if self._d is None:
            if self._d_seeds is None:
                raise GroupError("no distinguished involutions configured")
            self._d = conjugacy_closure(
                self._d_seeds, self.generators, self.mul, self.inv
            )
        return self._d

    def with_involutions(self, d_list):
        """Same group, explicit involution set (no conjugacy closure)."""
        return GroupRealization(
            self.name, self.identity, self.mul, self.inv,
            self.generators, self.gen_names,
            explicit_d=d_list, label_fn=self._label_fn,
            elements=self._elements,
        )

    def elements(self, cap=ELEMENT_CAP):
        if self._elements is None:
            self._elements = mulclose(self.generators, self.mul, self.identity, cap)
        return self._elements

    def order(self, cap=ELEMENT_CAP):
        return len(self.elements(cap))

    def conjugate(self, x, g):
        return self.mul(self.mul(self.inv(g), x), g)

    def order_of_product(self, c, d, cap=64):
        x = self.mul(c, d)
        acc = x
        for k in range(1, cap + 1):
            if acc == self.identity:
                return k
            acc = self.mul(acc, x)
        raise GroupError("product order exceeds cap %d" % cap)

    def conj_class(self, g, cap=ELEMENT_CAP):
        return conjugacy_closure([g], self.generators, self.mul, self.inv, cap)

    def point_labels(self):
        if self._label_fn is None:
            return [str(i) for i in range(len(self.D))]
        return [self._label_fn(d) for d in self.D]

    def center(self, cap=ELEMENT_CAP):
        els = self.elements(cap)
        return [
            z for z in els
            if all(self.mul(z, g) == self.mul(g, z) for g in self.generators)
        ]

    def __repr__(self):
        return "GroupRealization(%s)" % self.name


@dataclass
class TranspositionCheck:
    ok: bool
    reason: str = ""
    witness: tuple = None

    def __bool__(self):
        return self.ok


def is_3transposition(group, cap=ELEMENT_CAP):
    """Whether (G, D) is a 3-transposition group: D consists of involutions,
    is closed under conjugation, generates G, and |cd| <= 3 for c, d in D."""
    d_list = group.D
    if not d_list:
        return TranspositionCheck(False, "empty involution set")
    for d in d_list:
        if group.mul(d, d) != group.identity:
            return TranspositionCheck(False, "not an involution", (d,))
    d_set = set(d_list)
    for d in d_list:
        for g in group.generators:
            if group.conjugate(d, g) not in d_set:
                return TranspositionCheck(
                    False, "involution set not closed under conjugation", (d, g)
                )
    full = set(group.elements(cap))
    span = set(mulclose(d_list, group.mul, group.identity, cap))
    if span != full:
        return TranspositionCheck(False, "involutions do not generate the group")
    for i, c in enumerate(d_list):
        for d in d_list[i + 1:]:
            if group.order_of_product(c, d) > 3:
                return TranspositionCheck(False, "product order exceeds 3", (c, d))
    return TranspositionCheck(True)


# ---------------------------------------------------------------------------
# Permutation realizations


def _perm_mul(p, q):
    return tuple(q[i] for i in p)


def _perm_inv(p):
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def _perm_cycles(p):
    seen = set()
    out = []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            seen.add(i)
            continue
        cyc = [i]
        j = p[i]
        while j != i:
            cyc.append(j)
            seen.add(j)
            j = p[j]
        seen.add(i)
        out.append("(" + " ".join(str(x + 1) for x in cyc) + ")")
    return "".join(out) or "()"


def _transposition(n, i, j):
    img = list(range(n))
    img[i], img[j] = img[j], img[i]
    return tuple(img)


def build_sym(n):
    """Sym(n) on n points; distinguished involutions are all transpositions."""
    if n < 2:
        raise GroupError("build_sym needs n >= 2")
    gens = [_transposition(n, i, i + 1) for i in range(n - 1)]
    names = ["s%d" % (i + 1) for i in range(n - 1)]
    return GroupRealization(
        "Sym(%d)" % n,
        tuple(range(n)),
        _perm_mul,
        _perm_inv,
        gens,
        names,
        d_seeds=gens,
        label_fn=_perm_cycles,
    )


def build_3sq2():
    """The group 3^2:2 acting on the 9 points of F_3^2: translations extended
    by the point reflection x -> -x; its 9 involutions are the reflections."""
    pts = [(a, b) for a in range(3) for b in range(3)]
    index = {p: i for i, p in enumerate(pts)}

    def perm_of(fn):
        return tuple(index[fn(p)] for p in pts)

    neg = perm_of(lambda p: ((-p[0]) % 3, (-p[1]) % 3))
    t10 = perm_of(lambda p: ((p[0] + 1) % 3, p[1]))
    t01 = perm_of(lambda p: (p[0], (p[1] + 1) % 3))
    return GroupRealization(
        "3^2:2",
        tuple(range(9)),
        _perm_mul,
        _perm_inv,
        [neg, t10, t01],
        ["s", "t1", "t2"],
        d_seeds=[neg],
        label_fn=_perm_cycles,
    )


# ---------------------------------------------------------------------------
# Affine matrix realizations modulo the diagonal


def _mat_mul_mod(a, b, k):
    n = len(a)
    bt = list(zip(*b))
    return tuple(
        tuple(sum(x * y for x, y in zip(row, col)) % k for col in bt)
        for row in a
    )


def _affine_inv_mod(m, k):
    # elements of k^(n+1) : Sym(n+1) have a permutation linear part
    n = len(m) - 1
    p = [row[:n] for row in m[:n]]
    t = list(m[n][:n])
    pinv = [list(col) for col in zip(*p)]  # permutation matrices invert by transpose
    tinv = [(-sum(t[i] * pinv[i][j] for i in range(n))) % k for j in range(n)]
    rows = [tuple(pinv[i]) + (0,) for i in range(n)]
    rows.append(tuple(tinv) + (1,))
    return tuple(rows)


def _canonicalize_mod_diagonal(m, k):
    """Fixed coset representative modulo the diagonal translation: shift the
    translation row so its first entry is 0."""
    n = len(m) - 1
    j = (-m[n][0]) % k
    if j == 0:
        return m
    bottom = tuple((m[n][c] + j) % k for c in range(n)) + (1,)
    return m[:n] + (bottom,)


def _embedded_swap(size, i, j):
    rows = []
    for r in range(size):
        row = [0] * size
        if r == i:
            row[j] = 1
        elif r == j:
            row[i] = 1
        else:
            row[r] = 1
        rows.append(tuple(row))
    return tuple(rows)


def _affine_generators(k, n_coords):
    """Adjacent swaps plus the wrap-around swap-with-translation, as
    (n_coords+1)-square matrices over F_k."""
    size = n_coords + 1
    swaps = [_embedded_swap(size, i, i + 1) for i in range(n_coords - 1)]
    d = [list(r) for r in _embedded_swap(size, 0, n_coords - 1)]
    d[size - 1][0] = 1
    d[size - 1][n_coords - 1] = (-1) % k
    return swaps, tuple(tuple(r) for r in d)


def _int_is_prime(k):
    if k < 2:
        return False
    d = 2
    while d * d <= k:
        if k % d == 0:
            return False
        d += 1
    return True


def build_wk_affine_a(k, n):
    """The 3-transposition group W_k(affine A_n): the F_k-permutation module
    extension of Sym(n+1), modulo the diagonal translation.  Elements are
    canonicalized (n+2)-square matrices over F_k."""
    if n < 2:
        raise GroupError("build_wk_affine_a needs n >= 2")
    if not _int_is_prime(k):
        raise GroupError("modulus %r must be prime" % (k,))
    swaps, d_raw = _affine_generators(k, n + 1)

    def mul(a, b):
        return _canonicalize_mod_diagonal(_mat_mul_mod(a, b, k), k)

    def inv(a):
        return _canonicalize_mod_diagonal(_affine_inv_mod(a, k), k)

    printed = {}
    if n == 3:
        names = ["a", "b", "c", "d"]
    else:
        names = ["s%d" % (i + 1) for i in range(n)] + ["d"]
    raw_gens = list(swaps) + [d_raw]
    gens = [_canonicalize_mod_diagonal(g, k) for g in raw_gens]
    for nm, g in zip(names, raw_gens):
        printed[nm] = g
    group = GroupRealization(
        "W%d(affA%d)" % (k, n),
        _canonicalize_mod_diagonal(
            tuple(tuple(1 if i == j else 0 for j in range(n + 2)) for i in range(n + 2)),
            k,
        ),
        mul,
        inv,
        gens,
        names,
        d_seeds=gens,
    )
    group.printed_generators = printed
    group.modulus = k
    return group


def wk_embedding_subgroup(k, r):
    """Inside W_k(affine A_(r-1)), the subgroup generated by the four block
    matrices that replay the affine-A_3 generators on the first four
    coordinates.  Used to embed W_k(affine A_3) for r >= 5."""
    if r < 5:
        raise GroupError("embedding requires r >= 5")
    size = r + 1
    a = _embedded_swap(size, 0, 1)
    b = _embedded_swap(size, 1, 2)
    c = _embedded_swap(size, 2, 3)
    d = [list(row) for row in _embedded_swap(size, 0, 3)]
    d[size - 1][0] = 1
    d[size - 1][3] = (-1) % k
    d = tuple(tuple(row) for row in d)

    def mul(x, y):
        return _canonicalize_mod_diagonal(_mat_mul_mod(x, y, k), k)

    def inv(x):
        return _canonicalize_mod_diagonal(_affine_inv_mod(x, k), k)

    gens = [_canonicalize_mod_diagonal(g, k) for g in (a, b, c, d)]
    identity = _canonicalize_mod_diagonal(
        tuple(tuple(1 if i == j else 0 for j in range(size)) for i in range(size)), k
    )
    return GroupRealization(
        "W%d(affA%d)<block>" % (k, r - 1),
        identity,
        mul,
        inv,
        gens,
        ["a", "b", "c", "d"],
        d_seeds=gens,
    )


def generator_homomorphism(g1, g2, cap=ELEMENT_CAP):
    """Extend the generator pairing g1 -> g2 to a homomorphism on all of g1,
    or return None if the extension is inconsistent (some relation of g1
    fails in g2)."""
    if len(g1.generators) != len(g2.generators):
        return None
    hom = {g1.identity: g2.identity}
    queue = [g1.identity]
    head = 0
    while head < len(queue):
        x = queue[head]
        head += 1
        for u, v in zip(g1.generators, g2.generators):
            y = g1.mul(x, u)
            img = g2.mul(hom[x], v)
            if y in hom:
                if hom[y] != img:
                    return None
            else:
                if len(hom) >= cap:
                    raise GroupError("homomorphism search exceeded cap")
                hom[y] = img
                queue.append(y)
    return hom


def generator_bijection(g1, g2, cap=ELEMENT_CAP):
    """The generator pairing extended to an isomorphism, or None."""
    hom = generator_homomorphism(g1, g2, cap)
    if hom is None:
        return None
    if len(set(hom.values())) != len(hom) or len(hom) != g2.order(cap):
        return None
    return hom


# ---------------------------------------------------------------------------
# Presentations


@dataclass
class Presentation:
    generator_names: list
    relators: list = field(default_factory=list)  # words over letters 2i / 2i+1

    @property
    def ngens(self):
        return len(self.generator_names)

    def relator_words(self):
        return [tuple(w) for w in self.relators]


def _free_reduce(word):
    out = []
    for letter in word:
        if out and out[-1] == letter ^ 1:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def _invert_word(word):
    return tuple(l ^ 1 for l in reversed(word))


class _WordParser:
    def __init__(self, text, gen_index):
        self.text = text
        self.pos = 0
        self.gen_index = gen_index

    def _skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self._skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_sequence(self, stop=""):
        word = []
        while True:
            ch = self.peek()
            if not ch or ch in stop:
                return tuple(word)
            word.extend(self.parse_factor())

    def parse_factor(self):
        word = self.parse_atom()
        while self.peek() == "^":
            self.pos += 1
            ch = self.peek()
            if ch == "{" :
                self.pos += 1
                conj = self.parse_sequence(stop="}")
                self.pos += 1
                word = _free_reduce(_invert_word(conj) + word + conj)
            elif ch.isalpha() or ch == "_":
                conj = self.parse_name_word()
                word = _free_reduce(_invert_word(conj) + word + conj)
            else:
                n = self.parse_int()
                if n >= 0:
                    word = _free_reduce(word * n)
                else:
                    word = _free_reduce(_invert_word(word) * (-n))
        return word

    def parse_atom(self):
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.parse_sequence(stop=")")
            self.pos += 1
            return inner
        if ch.isalpha() or ch == "_":
            return self.parse_name_word()
        raise GroupError("cannot parse word at %r" % self.text[self.pos:])

    def parse_name_word(self):
        # longest known generator name at this position, so that a brace
        # group like {bc} splits into the two generators b and c
        self._skip_ws()
        best = None
        for name in self.gen_index:
            if self.text.startswith(name, self.pos):
                if best is None or len(name) > len(best):
                    best = name
        if best is None:
            raise GroupError("cannot read a generator at %r" % self.text[self.pos:])
        self.pos += len(best)
        return (2 * self.gen_index[best],)

    def parse_int(self):
        self._skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        return int(self.text[start:self.pos])


def parse_word(expr, generator_names):
    """Parse word sugar such as ``(a^b d)^3`` or ``a^{bc}`` into letters."""
    gen_index = {n: i for i, n in enumerate(generator_names)}
    parser = _WordParser(expr, gen_index)
    word = parser.parse_sequence()
    parser._skip_ws()
    if parser.pos != len(parser.text):
        raise GroupError("trailing input in word %r" % expr)
    return _free_reduce(word)


def parse_presentation(text):
    """Text format: a ``gens a b c`` header, then one relator per line."""
    lines = [l.strip() for l in text.strip().splitlines() if l.strip()]
    if not lines or not lines[0].startswith("gens"):
        raise GroupError("expected a 'gens ...' header")
    names = lines[0].split()[1:]
    pres = Presentation(names)
    for l in lines[1:]:
        pres.relators.append(parse_word(l, names))
    return pres


def presentation_to_text(pres):
    out = ["gens " + " ".join(pres.generator_names)]
    for w in pres.relators:
        parts = []
        for letter in w:
            name = pres.generator_names[letter >> 1]
            parts.append(name if letter % 2 == 0 else name + "^-1")
        out.append(" ".join(parts))
    return "\n".join(out) + "\n"


def coxeter_presentation(names, edges):
    """Coxeter-type presentation on a graph: generators are involutions,
    products have order 3 across an edge and order 2 otherwise."""
    edges = {frozenset(e) for e in edges}
    pres = Presentation(list(names))
    n = len(names)
    for i in range(n):
        pres.relators.append((2 * i, 2 * i))
    for i in range(n):
        for j in range(i + 1, n):
            order = 3 if frozenset((names[i], names[j])) in edges else 2
            pres.relators.append(_free_reduce((2 * i, 2 * j) * order))
    return pres


def su32_quotient_presentation():
    """Presentation of the rank-4 group of shape 2^(1+6):SU3(2)': the Coxeter
    group on the complete 4-graph minus one edge, with three extra cube
    relators."""
    names = ["a", "b", "c", "d"]
    edges = [("a", "b"), ("a", "c"), ("a", "d"), ("b", "d"), ("c", "d")]
    pres = coxeter_presentation(names, edges)
    for expr in ["(a^b d)^3", "(a^c d)^3", "(a^{bc} d)^3"]:
        pres.relators.append(parse_word(expr, names))
    return pres


def hall_quotient_presentation():
    """Presentation of Hall's rank-4 group of shape 3^10:2: the Coxeter group
    on the complete 4-graph with seven extra cube relators."""
    names = ["a", "b", "c", "d"]
    edges = [
        ("a", "b"), ("a", "c"), ("a", "d"),
        ("b", "c"), ("b", "d"), ("c", "d"),
    ]
    pres = coxeter_presentation(names, edges)
    for expr in [
        "(b^c d)^3",
        "(a^b c)^3",
        "(a^b d)^3",
        "(a^c d)^3",
        "(a^{bd} c)^3",
        "(a^{cd} b)^3",
        "(a^{dc} b)^3",
    ]:
        pres.relators.append(parse_word(expr, names))
    return pres


# ---------------------------------------------------------------------------
# Todd-Coxeter coset enumeration


class CosetTable:
    def __init__(self, presentation, subgroup_words, table, ncols, involution_mode,
                 complete, total_defined, variant):
        self.presentation = presentation
        self.subgroup_words = list(subgroup_words)
        self.table = table
        self.ncols = ncols
        self.involution_mode = involution_mode
        self.complete = complete
        self.total_defined = total_defined
        self.variant = variant

    @property
    def n_cosets(self):
        return len(self.table)

    @property
    def status(self):
        return "complete" if self.complete else "incomplete"

    def _column_of_letter(self, letter):
        return (letter >> 1) if self.involution_mode else letter

    def _icol(self, col):
        return col if self.involution_mode else col ^ 1

    def gen_column(self, i):
        col = i if self.involution_mode else 2 * i
        return tuple(row[col] for row in self.table)

    def word_permutation(self, word):
        acc = list(range(self.n_cosets))
        for letter in word:
            col = self._column_of_letter(letter)
            colmap = [row[col] for row in self.table]
            acc = [colmap[x] for x in acc]
        return tuple(acc)

    def verify(self):
        """Check that each generator acts as a permutation, every relator acts
        trivially from every coset, and subgroup words fix coset 0."""
        if not self.complete:
            raise GroupError("cannot verify an incomplete table")
        n = self.n_cosets
        idx = list(range(n))
        for col in range(self.ncols):
            colmap = [row[col] for row in self.table]
            if sorted(colmap) != idx:
                return False
        for w in self.presentation.relator_words():
            if self.word_permutation(w) != tuple(idx):
                return False
        for w in self.subgroup_words:
            acc = 0
            for letter in w:
                acc = self.table[acc][self._column_of_letter(letter)]
            if acc != 0:
                return False
        return True

    def to_csv(self):
        names = self.presentation.generator_names
        if self.involution_mode:
            header = ["coset"] + list(names)
        else:
            header = ["coset"]
            for nm in names:
                header += [nm, nm + "^-1"]
        lines = [",".join(header)]
        for i, row in enumerate(self.table):
            lines.append(",".join([str(i + 1)] + [str(x + 1) for x in row]))
        return "\n".join(lines) + "\n"

    def group(self):
        """The regular realization: cosets over the trivial subgroup are the
        group elements themselves, multiplied through representative words."""
        if self.subgroup_words:
            raise GroupError("regular realization needs a trivial subgroup")
        if not self.complete:
            raise GroupError("incomplete enumeration")
        table = self.table
        n = self.n_cosets
        rep_words = [None] * n
        rep_words[0] = ()
        queue = [0]
        head = 0
        while head < len(queue):
            c = queue[head]
            head += 1
            base = rep_words[c]
            for col in range(self.ncols):
                d = table[c][col]
                if rep_words[d] is None:
                    rep_words[d] = base + (col,)
                    queue.append(d)
        icol = self._icol

        def mul(x, y):
            c = x
            for col in rep_words[y]:
                c = table[c][col]
            return c

        def inv(x):
            c = 0
            for col in reversed(rep_words[x]):
                c = table[c][icol(col)]
            return c

        gens = [table[0][i if self.involution_mode else 2 * i]
                for i in range(self.presentation.ngens)]
        return GroupRealization(
            "presented<%s>" % ",".join(self.presentation.generator_names),
            0,
            mul,
            inv,
            gens,
            list(self.presentation.generator_names),
            d_seeds=gens,
            elements=list(range(n)),
        )


def _coset_budget():
    return int(os.environ.get("MATSUO_MAX_COSETS", str(DEFAULT_MAX_COSETS)))


def todd_coxeter(pres, subgroup=(), max_cosets=None, variant=0):
    """Coset enumeration over a subgroup given by generator words.

    Relator-driven filling with first-touch coset numbering; coincidences are
    processed through a union-find with path compression.  ``variant`` selects
    an alternative deterministic processing order (rotated relators, reversed
    relator list) so that coset counts can be cross-checked between two
    independent runs.  Returns an incomplete table instead of guessing if the
    budget is exhausted.
    """
    if max_cosets is None:
        max_cosets = _coset_budget()
    ngens = pres.ngens
    relators = [_free_reduce(w) for w in pres.relator_words()]
    squares = {w[0] >> 1 for w in relators if len(w) == 2 and w[0] == w[1]}
    involution_mode = all(i in squares for i in range(ngens))

    if involution_mode:
        ncols = ngens
        def col_of(letter):
            return letter >> 1
        def icol_of(col):
            return col
        scan_relators = [w for w in relators if not (len(w) == 2 and w[0] == w[1])]
    else:
        ncols = 2 * ngens
        def col_of(letter):
            return letter
        def icol_of(col):
            return col ^ 1
        scan_relators = list(relators)

    rel_cols = [[col_of(l) for l in w] for w in scan_relators if w]
    sub_cols = [[col_of(l) for l in w] for w in (subgroup or ())]
    if variant:
        rel_cols = [w[1:] + w[:1] if len(w) > 1 else w for w in rel_cols]
        rel_cols = list(reversed(rel_cols))

    icol = [icol_of(c) for c in range(ncols)]
    table = [[-1] * ncols]
    parent = [0]
    ndead = 0
    total_defined = 1

    def rep(c):
        r = c
        while parent[r] != r:
            r = parent[r]
        while parent[c] != r:
            parent[c], c = r, parent[c]
        return r

    def merge(a, b, queue):
        nonlocal ndead
        a, b = rep(a), rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        parent[b] = a
        ndead += 1
        queue.append(b)

    def coincidence(a, b):
        queue = []
        merge(a, b, queue)
        head = 0
        while head < len(queue):
            gamma = queue[head]
            head += 1
            row = table[gamma]
            for x in range(ncols):
                delta = row[x]
                if delta < 0:
                    continue
                table[delta][icol[x]] = -1
                mu = rep(gamma)
                nu = rep(delta)
                t = table[mu][x]
                if t >= 0:
                    merge(nu, t, queue)
                else:
                    t2 = table[nu][icol[x]]
                    if t2 >= 0:
                        merge(mu, t2, queue)
                    else:
                        table[mu][x] = nu
                        table[nu][icol[x]] = mu
            table[gamma] = None

    class _Overflow(Exception):
        pass

    def define(c, x):
        nonlocal total_defined
        n = len(table)
        if n - ndead >= max_cosets:
            raise _Overflow
        table.append([-1] * ncols)
        parent.append(n)
        table[c][x] = n
        table[n][icol[x]] = c
        total_defined += 1
        return n

    def scan_and_fill(alpha, word):
        f = alpha
        i = 0
        b = alpha
        j = len(word) - 1
        while True:
            while i <= j:
                nxt = table[f][word[i]]
                if nxt < 0:
                    break
                f = nxt
                i += 1
            if i > j:
                if f != b:
                    coincidence(f, b)
                return
            while j >= i:
                prv = table[b][icol[word[j]]]
                if prv < 0:
                    break
                b = prv
                j -= 1
            if j < i:
                coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][icol[word[i]]] = f
                return
            f = define(f, word[i])
            i += 1

    try:
        for w in sub_cols:
            scan_and_fill(0, w)
        alpha = 0
        while alpha < len(table):
            if parent[alpha] != alpha or table[alpha] is None:
                alpha += 1
                continue
            for w in rel_cols:
                scan_and_fill(alpha, w)
                if parent[alpha] != alpha:
                    break
            if parent[alpha] == alpha:
                row = table[alpha]
                for x in range(ncols):
                    if row[x] < 0:
                        define(alpha, x)
            alpha += 1
    except _Overflow:
        return CosetTable(pres, subgroup or (), [], ncols, involution_mode,
                          False, total_defined, variant)

    # compact live cosets, preserving first-touch order
    remap = {}
    live = []
    for c in range(len(table)):
        if parent[c] == c and table[c] is not None:
            remap[c] = len(live)
            live.append(table[c])
    compact = [[remap[rep(entry)] for entry in row] for row in live]
    return CosetTable(pres, subgroup or (), compact, ncols, involution_mode,
                      True, total_defined, variant)
