"""Hochschild chains: b, b', t, N, p, h, Connes B, pushforwards, homology.

A chain element is a {word: coeff} dict over cyclic words (x_0, x_1, .., x_n)
-- see category.py for the composability convention.  The reduced complex
drops every word with a unit in an interior slot (x_0 may be a unit).

Homology is computed on length-truncated complexes with a boundary-safe
protocol: cycles are collected only where the differential is fully known,
boundaries from everything tracked, and a stabilization flag compares the
answer at L-1 and L.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ceikit import linalg
from ceikit.cochain import Cochain, add_term
from ceikit.functor import hat_apply


# ---------------------------------------------------------------------------
# operators on chain elements


def word_parity(cat, word):
    return sum(cat.parity(i) for i in word) & 1


def scale(comb, c):
    return {w: c * v for w, v in comb.items()}


def add(*combs):
    out = {}
    for comb in combs:
        for w, c in comb.items():
            add_term(out, w, c)
    return out


def sub(a, b):
    return add(a, scale(b, -1))


def lie_chain(z, comb, cat=None):
    """Lie derivative of a Hochschild chain along a cochain; L_m = b."""
    cat = cat or z.cat
    out = {}
    arities = sorted(z.comps)
    for word, coeff in comb.items():
        x0 = word[0]
        xs = word[1:]
        n = len(xs)
        sp0 = cat.sp(x0)
        # interior insertions: x0 ox .. Z(range) .. with Koszul past (x0, prefix)
        for i in range(n):
            pre_sp = (sp0 + cat.word_sp(xs[:i])) & 1
            sign = -1 if (pre_sp and z.sparity) else 1
            for j in arities:
                if i + j > n:
                    continue
                for o, c in z.apply(xs[i:i + j]).items():
                    w = (x0,) + xs[:i] + (o,) + xs[i + j:]
                    add_term(out, w, sign * c * coeff)
        # wrap-around: Z(tail, x0, head) ox middle, rotation Koszul sign
        for a in range(n + 1):          # tail length
            tail = xs[n - a:] if a else ()
            sp_tail = cat.word_sp(tail)
            for c_len in range(n - a + 1):  # head length
                arity = a + 1 + c_len
                if arity not in z.comps:
                    continue
                head = xs[:c_len]
                mid = xs[c_len:n - a]
                rot_sp = (sp0 + cat.word_sp(head) + cat.word_sp(mid)) & 1
                sign = -1 if (rot_sp and sp_tail) else 1
                for o, c in z.apply(tail + (x0,) + head).items():
                    add_term(out, (o,) + mid, sign * c * coeff)
    return out


def hochschild_b(comb, cat):
    """The Hochschild differential b = L_m."""
    return lie_chain(Cochain.structure(cat), comb, cat)


def bar_bprime(comb, cat):
    """The bar differential b'."""
    m = Cochain.structure(cat)
    out = {}
    arities = sorted(m.comps)
    for word, coeff in comb.items():
        x0 = word[0]
        xs = word[1:]
        n = len(xs)
        sp0 = cat.sp(x0)
        # front applications m(x0, head) ox rest
        for c_len in range(n + 1):
            if c_len + 1 not in m.comps:
                continue
            for o, c in m.apply((x0,) + xs[:c_len]).items():
                add_term(out, (o,) + xs[c_len:], c * coeff)
        # interior applications, same sign as in b
        for i in range(n):
            pre_sp = (sp0 + cat.word_sp(xs[:i])) & 1
            sign = -1 if pre_sp else 1
            for j in arities:
                if i + j > n:
                    continue
                for o, c in m.apply(xs[i:i + j]).items():
                    add_term(out, (x0,) + xs[:i] + (o,) + xs[i + j:], sign * c * coeff)
    return out


def cyclic_t(comb, cat):
    """Rotation t with the shifted Koszul sign; order n+1 on length-n words."""
    out = {}
    for word, coeff in comb.items():
        if len(word) == 1:
            add_term(out, word, coeff)
            continue
        last = word[-1]
        sign = -1 if (cat.sp(last) and cat.word_sp(word[:-1])) else 1
        add_term(out, (last,) + word[:-1], sign * coeff)
    return out


def norm_N(comb, cat):
    """N = sum of all cyclic rotations (with t's signs)."""
    out = {}
    for word, coeff in comb.items():
        cur = {word: coeff}
        for _ in range(len(word)):
            for w, c in cur.items():
                add_term(out, w, c)
            cur = cyclic_t(cur, cat)
    return out


def proj_p(comb, cat):
    """p = id - t."""
    return sub(comb, cyclic_t(comb, cat))


def homotopy_h(comb, cat):
    """Bar contracting homotopy: prepend the unit at the closing object."""
    out = {}
    for word, coeff in comb.items():
        obj = cat.src(word[0])
        u = cat.units.get(obj)
        if u is None:
            raise ValueError(f"object {obj} has no unit")
        add_term(out, (u,) + word, coeff)
    return out


def is_reduced_word(cat, word):
    return not any(cat.is_unit(i) for i in word[1:])


def reduce_chain(comb, cat):
    """Projection to the reduced complex (kill interior units)."""
    return {w: c for w, c in comb.items() if is_reduced_word(cat, w)}


def connes_B(comb, cat):
    """Connes' differential on the reduced complex: B = reduce . h . N."""
    for word in comb:
        if not is_reduced_word(cat, word):
            raise ValueError("B is defined on the reduced complex")
    return reduce_chain(homotopy_h(norm_N(comb, cat), cat), cat)


def pushforward(f, comb):
    """Chain map F_* on Hochschild chains induced by a functor."""
    cat = f.src
    out = {}
    for word, coeff in comb.items():
        x0 = word[0]
        xs = word[1:]
        n = len(xs)
        for a in range(n + 1):           # tail absorbed into the x0 block
            tail = xs[n - a:] if a else ()
            sp_tail = cat.word_sp(tail)
            for c_len in range(n - a + 1):  # head absorbed into the x0 block
                head = xs[:c_len]
                mid = xs[c_len:n - a]
                rot_sp = (cat.sp(x0) + cat.word_sp(head) + cat.word_sp(mid)) & 1
                sign = -1 if (rot_sp and sp_tail) else 1
                block0 = f.apply(tail + (x0,) + head)
                if not block0:
                    continue
                if mid:
                    rest = hat_apply(f, {mid: Fraction(1)})
                else:
                    rest = {(): Fraction(1)}
                for o, c in block0.items():
                    for u, cu in rest.items():
                        add_term(out, (o,) + u, sign * c * cu * coeff)
    return out


def bar_pushforward(f, comb):
    """F'_* on the bar complex: no rotation, x0 stays in the first block."""
    out = {}
    for word, coeff in comb.items():
        x0 = word[0]
        xs = word[1:]
        for c_len in range(len(xs) + 1):
            block0 = f.apply((x0,) + xs[:c_len])
            if not block0:
                continue
            mid = xs[c_len:]
            rest = hat_apply(f, {mid: Fraction(1)}) if mid else {(): Fraction(1)}
            for o, c in block0.items():
                for u, cu in rest.items():
                    add_term(out, (o,) + u, c * cu * coeff)
    return out


# ---------------------------------------------------------------------------
# u-series (Laurent truncations)


class USeries:
    """Finite Laurent series in u with chain-element coefficients."""

    def __init__(self, coeffs=None, window=(4, 4)):
        self.window = window
        self.coeffs = {}
        if coeffs:
            for k, comb in coeffs.items():
                if not (-window[0] <= k <= window[1]):
                    raise ValueError(f"u-power {k} outside window {window}")
                comb = {w: c for w, c in comb.items() if c}
                if comb:
                    self.coeffs[k] = comb

    def __eq__(self, other):
        return isinstance(other, USeries) and self.coeffs == other.coeffs

    def is_zero(self):
        return not self.coeffs

    def map(self, fn):
        out = {}
        for k, comb in self.coeffs.items():
            out[k] = fn(comb)
        return USeries(out, self.window)

    def add(self, other):
        out = {k: dict(c) for k, c in self.coeffs.items()}
        for k, comb in other.coeffs.items():
            slot = out.setdefault(k, {})
            for w, c in comb.items():
                add_term(slot, w, c)
        return USeries(out, self.window)

    def scale(self, c):
        return USeries({k: scale(comb, c) for k, comb in self.coeffs.items()},
                       self.window)

    def shift(self, d, clip=True):
        """Multiply by u^d; components leaving the window are dropped if clip."""
        out = {}
        for k, comb in self.coeffs.items():
            kk = k + d
            if -self.window[0] <= kk <= self.window[1]:
                out[kk] = comb
            elif not clip:
                raise ValueError("u-power leaves the window")
        return USeries(out, self.window)

    def __repr__(self):
        ks = sorted(self.coeffs)
        return f"USeries(powers={ks}, window={self.window})"


def b_plus_uB(series, cat):
    """(b + uB) on a u-series over the reduced complex, clipped to the window."""
    out = series.map(lambda comb: reduce_chain(hochschild_b(comb, cat), cat))
    bpart = USeries({k: connes_B(comb, cat) for k, comb in series.coeffs.items()},
                    series.window)
    return out.add(bpart.shift(1))


def u_connection_assoc(series, cat):
    """Grading operator (n - k/2) on words of length k at power n.

    Only valid over strictly associative categories (m_2 alone); callers on
    other inputs get an error.
    """
    if any(k not in (1, 2) for k in cat.ops):
        raise ValueError("u-connection formula requires an associative category")
    out = {}
    for n, comb in series.coeffs.items():
        slot = {}
        for w, c in comb.items():
            factor = Fraction(n) - Fraction(len(w) - 1, 2)
            if factor:
                add_term(slot, w, factor * c)
        if slot:
            out[n] = slot
    return USeries(out, series.window)


# ---------------------------------------------------------------------------
# truncated homology


@dataclass
class HomologyReport:
    rank: int
    ranks_by_parity: tuple
    representatives: list = field(default_factory=list)
    truncation: dict = field(default_factory=dict)
    stabilized: bool = False
    detail: str = ""


class _Blocks:
    """A finite piece of a complex: ordered cells and a differential."""

    def __init__(self, cells, diff, parity):
        self.cells = list(cells)
        self.pos = {c: i for i, c in enumerate(self.cells)}
        self.diff = diff          # cell -> {cell: coeff}, already clipped
        self.parity = parity      # cell -> 0/1

    def homology(self, kernel_cells):
        """Classes supported on kernel_cells modulo boundaries of everything.

        Returns (rank_even, rank_odd, representatives) where representatives
        are {cell: coeff} dicts.
        """
        reps = []
        ranks = [0, 0]
        for par in (0, 1):
            kcols = [c for c in kernel_cells if self.parity[c] == par]
            if not kcols:
                continue
            kpos = {c: i for i, c in enumerate(kcols)}
            rows = {}
            for c in kcols:
                for d, v in self.diff(c).items():
                    rows.setdefault(d, {})[kpos[c]] = v
            mat = linalg.SparseMatrix(
                len(self.cells), len(kcols),
                {(self.pos[d], j): v for d, r in rows.items() for j, v in r.items()})
            kernel = linalg.kernel_basis(mat)
            # boundaries of all cells of parity par+1, in kernel coordinates
            bnd_rows = []
            for c in self.cells:
                if self.parity[c] == par:
                    continue
                img = self.diff(c)
                if not img:
                    continue
                if all(d in kpos for d in img):
                    bnd_rows.append({kpos[d]: v for d, v in img.items()})
                else:
                    # boundary sticks out of the kernel region: restrict honestly
                    # only when the stray part vanishes
                    stray = {d: v for d, v in img.items() if d not in kpos}
                    if not stray:
                        bnd_rows.append({kpos[d]: v for d, v in img.items()})
            pivots, rref = linalg._rref(bnd_rows, len(kcols))
            pivot_set = set(pivots)
            count = 0
            for vec in kernel:
                vd = {j: v for j, v in enumerate(vec) if v}
                # reduce against boundary row space
                for p, row in zip(pivots, rref):
                    f = vd.get(p)
                    if f:
                        for c2, v2 in row.items():
                            add_term(vd, c2, -f * v2)
                if vd:
                    count += 1
                    reps.append({kcols[j]: v for j, v in vd.items()})
                    bnd_rows.append(vd)
                    pivots, rref = linalg._rref(bnd_rows, len(kcols))
            ranks[par] = count
        return ranks[0], ranks[1], reps


def _hochschild_cells(cat, L, reduced=True):
    cells = []
    for n in range(L + 1):
        for w in cat.hochschild_words(n):
            if not reduced or is_reduced_word(cat, w):
                cells.append(w)
    return cells


def compute_HH(cat, L, reduced=True):
    """Truncated Hochschild homology of the (reduced) complex, lengths <= L."""
    def run(Lcur):
        cells = _hochschild_cells(cat, Lcur, reduced)
        cellset = set(cells)

        def diff(w):
            img = hochschild_b({w: Fraction(1)}, cat)
            if reduced:
                img = reduce_chain(img, cat)
            return {d: v for d, v in img.items() if d in cellset}

        blocks = _Blocks(cells, diff, {w: word_parity(cat, w) for w in cells})
        kernel_cells = [w for w in cells if len(w) - 1 <= Lcur - 1]
        return blocks.homology(kernel_cells)

    e1, o1, reps = run(L)
    e0, o0, _ = run(L - 1) if L >= 1 else (0, 0, [])
    return HomologyReport(
        rank=e1 + o1, ranks_by_parity=(e1, o1), representatives=reps,
        truncation={"L": L, "reduced": reduced, "minimal": cat.minimal},
        stabilized=(e0, o0) == (e1, o1),
        detail="" if cat.minimal else "category not minimal")


def _quotient_data(row_dicts, dim):
    """RREF the subspace rows; return (pivots, rref rows) for projection."""
    pivots, rref = linalg._rref(row_dicts, dim)
    return pivots, rref


def _project(vec_dict, pivots, rref):
    out = dict(vec_dict)
    for p, row in zip(pivots, rref):
        f = out.get(p)
        if f:
            for c, v in row.items():
                add_term(out, c, -f * v)
    return out


class _QuotientComplex:
    """Lengthwise quotient of the full Hochschild complex by given subspaces."""

    def __init__(self, cat, L, sub_rows_fn):
        self.cat = cat
        self.L = L
        self.words = {n: cat.hochschild_words(n) for n in range(L + 1)}
        self.pos = {n: {w: i for i, w in enumerate(ws)} for n, ws in self.words.items()}
        self.quot = {}
        for n, ws in self.words.items():
            rows = sub_rows_fn(n, ws, self.pos[n])
            self.quot[n] = _quotient_data(rows, len(ws))
        # cells: (n, free column)
        self.cells = []
        for n, ws in self.words.items():
            pivots = set(self.quot[n][0])
            for i, w in enumerate(ws):
                if i not in pivots:
                    self.cells.append((n, i))

    def project_comb(self, comb):
        """Chain element -> {(n, col): coeff} in quotient coordinates."""
        by_n = {}
        for w, c in comb.items():
            n = len(w) - 1
            by_n.setdefault(n, {})[self.pos[n][w]] = c
        out = {}
        for n, vec in by_n.items():
            pivots, rref = self.quot[n]
            red = _project(vec, pivots, rref)
            for col, v in red.items():
                add_term(out, (n, col), v)
        return out

    def diff(self, cell):
        n, col = cell
        w = self.words[n][col]
        img = hochschild_b({w: Fraction(1)}, self.cat)
        return self.project_comb(img)

    def parity(self, cell):
        n, col = cell
        return word_parity(self.cat, self.words[n][col])


def _connes_subspace_rows(cat):
    def fn(n, ws, pos):
        rows = []
        for w in ws:
            img = proj_p({w: Fraction(1)}, cat)
            rows.append({pos[d]: v for d, v in img.items() if v})
        return rows
    return fn


def _unital_subspace_rows(cat):
    base = _connes_subspace_rows(cat)

    def fn(n, ws, pos):
        rows = base(n, ws, pos)
        if n >= 1:
            for w in ws:
                if cat.is_unit(w[0]):
                    rows.append({pos[w]: Fraction(1)})
        return rows
    return fn


def _quotient_homology(cat, L, sub_rows_fn):
    def run(Lcur):
        qc = _QuotientComplex(cat, Lcur, sub_rows_fn)
        blocks = _Blocks(qc.cells, qc.diff, {c: qc.parity(c) for c in qc.cells})
        kernel_cells = [c for c in qc.cells if c[0] <= Lcur - 1]
        return qc, blocks.homology(kernel_cells)

    qc, (e1, o1, reps) = run(L)
    _, (e0, o0, _) = run(L - 1) if L >= 1 else (None, (0, 0, []))
    nice_reps = []
    for rep in reps:
        nice_reps.append({qc.words[n][col]: v for (n, col), v in rep.items()})
    return HomologyReport(
        rank=e1 + o1, ranks_by_parity=(e1, o1), representatives=nice_reps,
        truncation={"L": L}, stabilized=(e0, o0) == (e1, o1))


def compute_HC_lambda(cat, L):
    """Connes (positive) cyclic homology on the length-truncated quotient."""
    return _quotient_homology(cat, L, _connes_subspace_rows(cat))


def compute_HC_un(cat, L):
    """Unital cyclic homology: the Connes complex modulo unit-led words."""
    return _quotient_homology(cat, L, _unital_subspace_rows(cat))


# -- u-model complexes -------------------------------------------------------


class UModelComplex:
    """(CC^red [u-window], b + uB), optionally modulo u^{-k} units (k >= 1)."""

    def __init__(self, cat, L, n_neg, n_pos=0, unital=False):
        self.cat = cat
        self.L = L
        self.n_neg = n_neg
        self.n_pos = n_pos
        self.unital = unital
        self.cells = []
        for k in range(-n_neg, n_pos + 1):
            for n in range(L + 1):
                for w in cat.hochschild_words(n):
                    if not is_reduced_word(cat, w):
                        continue
                    if unital and k < 0 and len(w) == 1 and cat.is_unit(w[0]):
                        continue
                    self.cells.append((k, w))
        self.cellset = set(self.cells)

    def diff(self, cell):
        k, w = cell
        out = {}
        img = reduce_chain(hochschild_b({w: Fraction(1)}, self.cat), self.cat)
        for d, v in img.items():
            if (k, d) in self.cellset:
                add_term(out, (k, d), v)
        if k + 1 <= self.n_pos:
            for d, v in connes_B({w: Fraction(1)}, self.cat).items():
                if (k + 1, d) in self.cellset:
                    add_term(out, (k + 1, d), v)
        return out

    def parity(self, cell):
        return word_parity(self.cat, cell[1])

    def homology(self):
        blocks = _Blocks(self.cells, self.diff,
                         {c: self.parity(c) for c in self.cells})
        kernel_cells = [c for c in self.cells if len(c[1]) - 1 <= self.L - 1]
        e, o, reps = blocks.homology(kernel_cells)
        return HomologyReport(
            rank=e + o, ranks_by_parity=(e, o), representatives=reps,
            truncation={"L": self.L, "window": (self.n_neg, self.n_pos),
                        "unital": self.unital})


def compute_HC_plus(cat, L, n_neg=4, unital=False):
    """Homology of (CC^red[u^{-1}], b+uB) within the truncation window."""
    return UModelComplex(cat, L, n_neg, 0, unital).homology()


def pi_to_connes_unital(cat, cell_comb):
    """The comparison map Pi: u^0 part, classwise, into the unital quotient."""
    out = {}
    for (k, w), c in cell_comb.items():
        if k == 0:
            add_term(out, w, c)
    return out
