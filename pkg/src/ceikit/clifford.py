"""Clifford fixtures and the tensor trick.

cl(d) is built by iterated tensoring with Cl_1 = K[eps]; the tensor product
category follows the sign rule

    m_n(x_1 ox e^{k_1}, .., x_n ox e^{k_n})
        = (-1)^{sum_{j>=2} (k_1+..+k_{j-1}) |x_j|'} m_n(x_1..x_n) ox e^{sum k},

with e^2 = -1/2, and the tensor pairing
<x ox e^a, y ox e^b> = (-1)^{a |y|} <x,y> <e^a, e^b>, which flips the parity.

The Kunneth comparison maps i_0, i (shuffle + u . cyclic shuffle against the
flat series eps-tilde) and the backward projection p live here as well; their
sign normalizations are pinned by the exact identities p i = id, p b = b p,
p B = B p and (b+uB) eps-tilde = 0, which the test-suite checks.
"""

from __future__ import annotations

from fractions import Fraction

from ceikit.category import AInftyCategory, clifford_one
from ceikit.cochain import add_term
from ceikit.functor import Functor
from ceikit.hochschild import USeries, is_reduced_word, reduce_chain


def _eps_power(k):
    """(scalar, parity) with e^k = scalar . e^{k mod 2}."""
    return Fraction(-1, 2) ** (k // 2), k % 2


def tensor_with_clifford(cat, cutoff=None, suffix="'"):
    """The category cat ox Cl_1; pairing parity flips."""
    if cat.pairing is None:
        raise ValueError("tensor trick needs a pairing on the input")
    cutoff = cutoff if cutoff is not None else cat.cutoff
    hom = {}
    for pair, basis in cat.hom.items():
        entries = []
        for i in basis:
            b = cat.basis[i]
            entries.append((b.name, b.parity))
            entries.append((b.name + suffix, b.parity ^ 1))
        hom[pair] = entries
    out = AInftyCategory(cat.objects, hom, {}, cutoff=cutoff,
              name=f"{cat.name}xCl")
    # letter i of cat with eps-exponent k <-> 2*i + k in the tensor category
    ops = {}
    for n, table in cat.ops.items():
        new_table = {}
        for word, outs in table.items():
            sps = [cat.sp(i) for i in word]
            for mask in range(1 << n):
                ks = [(mask >> j) & 1 for j in range(n)]
                ktot = sum(ks)
                scalar, kout = _eps_power(ktot)
                sign = 0
                acc = 0
                for j in range(1, n):
                    acc += ks[j - 1]
                    sign ^= (acc & 1) & sps[j]
                coeff = -scalar if sign else scalar
                new_word = tuple(2 * i + k for i, k in zip(word, ks))
                slot = new_table.setdefault(new_word, {})
                for o, c in outs.items():
                    add_term(slot, 2 * o + kout, coeff * c)
        ops[n] = {w: o for w, o in new_table.items() if o}
    out.ops = {n: t for n, t in ops.items() if t}
    out.units = {obj: 2 * u for obj, u in cat.units.items()}
    pairing = {}
    cl_pair = {(0, 1): Fraction(1), (1, 0): Fraction(-1)}
    for (i, j), v in cat.pairing.items():
        for (a, b_), w in cl_pair.items():
            sign = -1 if (a and cat.parity(j)) else 1
            pairing[(2 * i + a, 2 * j + b_)] = sign * v * w
    out.pairing = pairing
    out.pairing_parity = (cat.pairing_parity + 1) % 2 if cat.pairing_parity is not None else None
    out._validate_pairing()
    return out


def tensor_functor(f, src_tensor, dst_tensor):
    """F ox id on the tensor categories (letters 2i+k -> 2F(i)+k blocks)."""
    comps = {}
    for n, table in f.comps.items():
        new_table = {}
        for word, outs in table.items():
            sps = [f.src.sp(i) for i in word]
            for mask in range(1 << n):
                ks = [(mask >> j) & 1 for j in range(n)]
                ktot = sum(ks)
                scalar, kout = _eps_power(ktot)
                sign = 0
                acc = 0
                for j in range(1, n):
                    acc += ks[j - 1]
                    sign ^= (acc & 1) & sps[j]
                coeff = -scalar if sign else scalar
                new_word = tuple(2 * i + k for i, k in zip(word, ks))
                slot = new_table.setdefault(new_word, {})
                for o, c in outs.items():
                    add_term(slot, 2 * o + kout, coeff * c)
        comps[n] = {w: o for w, o in new_table.items() if o}
    return Functor(src_tensor, dst_tensor, dict(f.obj_map), comps,
                   name=f.name + "xid")


def _rename(cat, names):
    hom = {}
    for pair, basis in cat.hom.items():
        hom[pair] = [(names[i], cat.basis[i].parity) for i in basis]
    out = AInftyCategory(cat.objects, hom, {}, cutoff=cat.cutoff, name=cat.name)
    out.ops = cat.ops
    out.units = cat.units
    out.pairing = cat.pairing
    out.pairing_parity = cat.pairing_parity
    return out


def cl(d, cutoff=8):
    """The Clifford algebra on d odd generators, as a cyclic category.

    Basis: square-free monomials named by their index sets ("1", "e1",
    "e12", ..); built as the d-fold tensor power of Cl_1.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    cat = clifford_one(cutoff)
    cat = _rename(cat, {0: "1", 1: "e1"})
    subsets = [(), (1,)]
    for gen in range(2, d + 1):
        cat = tensor_with_clifford(cat, cutoff)
        subsets = [s + extra for s in subsets for extra in ((), (gen,))]
        names = {}
        for i, s in enumerate(subsets):
            names[i] = "e" + "".join(str(g) for g in s) if s else "1"
        cat = _rename(cat, names)
    cat.name = f"Cl{d}"
    return cat


def catalan_number(n):
    from math import comb
    return Fraction(comb(2 * n, n), n + 1)


def catalan_A(cutoff=8):
    """Unital cyclic algebra with m_k(e..e) = C_{k-1}/2; same frame as Cl_1."""
    base = clifford_one(cutoff)
    ops = {2: dict(base.ops[2])}
    ops[2][(1, 1)] = {0: catalan_number(1) / 2}
    for k in range(3, cutoff + 1):
        ops[k] = {(1,) * k: {0: catalan_number(k - 1) / 2}}
    out = base.with_pairing(base.pairing, base.pairing_parity)
    out.ops = ops
    out.name = "A"
    return out


def catalan_G(cutoff=8):
    """The unital isomorphism G: A -> Cl_1 with G_k(e..e) = C_{k-1} e."""
    a = catalan_A(cutoff)
    c = clifford_one(cutoff)
    comps = {1: {(0,): {0: Fraction(1)}, (1,): {1: Fraction(1)}}}
    for k in range(2, cutoff + 1):
        comps[k] = {(1,) * k: {1: catalan_number(k - 1)}}
    return Functor(a, c, {"*": "*"}, comps, name="G"), a, c


# ---------------------------------------------------------------------------
# Kunneth comparison maps for C ox Cl


def epsilon_tilde(window=(0, 3)):
    """The flat series eps[eps|..|eps] (2j letters) u^j with (-1)^j (2j-1)!!."""
    coeffs = {}
    sign = 1
    dfact = 1
    for j in range(0, window[1] + 1):
        if j > 0:
            sign = -sign
            dfact = dfact * (2 * j - 1)
        word = (1,) * (2 * j + 1)
        coeffs[j] = {word: Fraction(sign * dfact)}
    return USeries(coeffs, window)


def kunneth_i0(comb, cat):
    """i_0 = sh(-, eps): x_0|..|x_n -> (-1)^{|x_1|'+..+|x_n|'} (x_0 ox e)|..."""
    out = {}
    for word, coeff in comb.items():
        sign = -1 if cat.word_sp(word[1:]) else 1
        new = (2 * word[0] + 1,) + tuple(2 * i for i in word[1:])
        add_term(out, new, sign * coeff)
    return out


def kunneth_p(comb, tcat):
    """Backward chain map p. Letters of tcat are 2i+k (k the eps-exponent)."""
    out = {}
    for word, coeff in comb.items():
        ks = [i & 1 for i in word]
        xs = tuple(i >> 1 for i in word)
        ktot = sum(ks)
        if ktot % 2 == 0:
            continue
        scalar, rem = _eps_power(ktot - 1)
        # Koszul sign of eq:clubsuit on the letters (x_j ox e^{k_j})
        sign = 0
        acc = 0
        for j in range(1, len(word)):
            acc += ks[j - 1]
            # x_j has shifted parity sp(2 x_j) in the base category
            sign ^= (acc & 1) & tcat.sp(2 * xs[j])
        c = -scalar if sign else scalar
        add_term(out, xs, c * coeff)
    return out


def kunneth_p_reduced(comb, tcat, base):
    return reduce_chain(kunneth_p(comb, tcat), base)


def _shuffles(p, q):
    """All (p,q)-shuffles as sequences of 0 (left) / 1 (right)."""
    if p == 0:
        yield (1,) * q
        return
    if q == 0:
        yield (0,) * p
        return
    for rest in _shuffles(p - 1, q):
        yield (0,) + rest
    for rest in _shuffles(p, q - 1):
        yield (1,) + rest


def _interleave_sign(cat, xs, cl_sps, pattern):
    """Koszul sign (shifted parities) of the chosen interleaving."""
    sign = 1
    i = j = 0
    cl_seen = 0
    for side in pattern:
        if side == 0:
            if cat.sp(xs[i]) and (cl_seen & 1):
                sign = -sign
            i += 1
        else:
            # this Cl letter crosses the x letters not yet placed
            if cl_sps[j] and (cat.word_sp(xs[i:]) & 1):
                sign = -sign
            cl_seen += cl_sps[j]
            j += 1
    return sign


def _unit_eps(cat, obj):
    u = cat.units.get(obj)
    if u is None:
        raise ValueError(f"object {obj} has no unit")
    return 2 * u + 1


def shuffle_sh(comb, cl_word, cat):
    """Shuffle product sh(x, c): heads merge, interiors interleave.

    cl_word is a tuple over {0: 1, 1: eps} describing a Hochschild word of
    Cl_1; the result lives in cat ox Cl (letters 2i+k).  Interior Cl letters
    become (1_X ox eps) at the object where they land; they are shifted-even,
    so only the head eps contributes Koszul signs, matching the explicit
    formula for sh(-, eps).
    """
    out = {}
    c0 = cl_word[0]
    cs = cl_word[1:]
    if any(c == 0 for c in cs):
        return out  # interior units die in the reduced target
    q = len(cs)
    cl_sps = [c ^ 1 for c in cs]  # eps ox-letters are shifted-even
    for word, coeff in comb.items():
        x0 = word[0]
        xs = word[1:]
        p = len(xs)
        head = 2 * x0 + c0
        base_sign = -1 if (c0 and cat.word_sp(xs)) else 1
        for pattern in _shuffles(p, q):
            sign = base_sign * _interleave_sign(cat, xs, cl_sps, pattern)
            letters = []
            i = 0
            obj = cat.dst(x0)
            ok = True
            for side in pattern:
                if side == 0:
                    letters.append(2 * xs[i])
                    obj = cat.dst(xs[i])
                    i += 1
                else:
                    letters.append(_unit_eps(cat, obj))
            if ok:
                add_term(out, (head,) + tuple(letters), sign * coeff)
    return out


def cyclic_shuffle_Sh(comb, cl_word, cat):
    """Cyclic shuffle product Sh(x, c), used in the u-linear part of i.

    Both inputs are opened up at every cyclic rotation and interleaved with
    the cyclic orders preserved, subject to the normalization that the
    result starts (after the new unit head) with an x letter, and that the
    letter x_0 appears before c_0.  The head is the unit of cat ox Cl at the
    closing object.  Signs are the rotation Koszul signs of both factors
    times the interleaving Koszul sign.
    """
    out = {}
    n_cl = len(cl_word)
    if any(c == 0 for c in cl_word):
        return out  # any unit letter becomes interior: dies reduced
    cl_sps = [c ^ 1 for c in cl_word]
    for word, coeff in comb.items():
        n_x = len(word)
        # rotation of x: rotate r steps (t^r) with t's Koszul signs
        rot = {word: coeff}
        for r in range(n_x):
            for rword, rcoeff in rot.items():
                for s in range(n_cl):
                    cl_rot = cl_word[s:] + cl_word[:s]
                    for pattern in _shuffles(n_x, n_cl):
                        if pattern[0] != 0:
                            continue
                        # positions of x_0 and c_0 in the interleaving
                        xpos = cpos = None
                        i = j = 0
                        for k, side in enumerate(pattern):
                            if side == 0:
                                if (n_x - r) % n_x == i:
                                    xpos = k
                                i += 1
                            else:
                                if (n_cl - s) % n_cl == j:
                                    cpos = k
                                j += 1
                        if xpos > cpos:
                            continue
                        sign = _interleave_sign_full(cat, rword, cl_sps, s, pattern)
                        letters = []
                        i = 0
                        obj = cat.src(rword[0])
                        head = 2 * cat.units[obj] if cat.units.get(obj) is not None else None
                        if head is None:
                            continue
                        for side in pattern:
                            if side == 0:
                                letters.append(2 * rword[i])
                                obj = cat.dst(rword[i])
                                i += 1
                            else:
                                letters.append(_unit_eps(cat, obj))
                        add_term(out, (head,) + tuple(letters), sign * rcoeff)
            from ceikit.hochschild import cyclic_t
            rot = cyclic_t(rot, cat)
    return out


def _interleave_sign_full(cat, xs, cl_sps, s, pattern):
    """Interleaving Koszul sign when all letters (incl heads) are placed."""
    sign = 1
    i = j = 0
    for side in pattern:
        if side == 0:
            i += 1
        else:
            if cl_sps[(j + s) % len(cl_sps)] and (cat.word_sp(xs[i:]) & 1):
                sign = -sign
            j += 1
    return sign
