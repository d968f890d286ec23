"""Generate the frozen 3-cell boundary words for the Brieskorn(2,3,5) CW structure.

The presentation 2-complex of <s,t | s^3 t^-5, (st)^2 s^-3> is a spine of the
manifold; the missing 3-cell boundary is a pair of group-ring elements
(s_1, s_2) with sum_i s_i * d(r_i)/d(x_j) = 0 in Z[G] for both generators x_j,
where G is the (finite, order-120) image group.  The set of valid (s_1, s_2)
is a cyclic left Z[G]-module; we compute its exact integer kernel via the
regular representation and freeze a module generator, validated by:
  - exact kernel membership over Z[G],
  - zero augmentation (so the untwisted complex has the homology of the manifold),
  - acyclicity of the twisted complex at both irreducible SU(2) classes,
  - the left-translation orbit of the generator spanning the full kernel.

Run:  PYTHONPATH=src python3 tools/make_brieskorn_fixture.py
"""

import json
import math
import pathlib
import sys

import numpy as np
import sympy

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from taut3 import su2
from taut3.presentations import builtin_presentation, concat_words, gen, invert_word
from taut3.su2reps import enumerate_reps, evaluate_word
from taut3.twisted_torsion import GroupRingElement, fox_derivative

TOL = 1e-8


def bfs_group(images):
    """Enumerate the image group by BFS; returns (quaternions, words)."""
    gens = [(gen(0), images[0]), (gen(1), images[1]),
            (gen(0, -1), su2.qconj(images[0])), (gen(1, -1), su2.qconj(images[1]))]
    elems = [su2.IDENTITY.copy()]
    words = [()]
    frontier = [0]
    while frontier:
        new_frontier = []
        for idx in frontier:
            for w, q in gens:
                cand = su2.qnormalize(su2.qmul(elems[idx], q))
                if find_index(elems, cand, missing_ok=True) is None:
                    elems.append(cand)
                    words.append(concat_words(words[idx], w))
                    new_frontier.append(len(elems) - 1)
        frontier = new_frontier
    return np.stack(elems), words


def find_index(elems, q, missing_ok=False):
    arr = np.asarray(elems)
    d = np.linalg.norm(arr - q, axis=-1)
    i = int(np.argmin(d))
    if d[i] < TOL:
        return i
    if missing_ok:
        return None
    raise LookupError("element not found in group closure")


def ring_to_vector(elem: GroupRingElement, images, elems, n):
    v = np.zeros(n, dtype=np.int64)
    for w, c in elem.terms.items():
        v[find_index(elems, evaluate_word(images, w))] += c
    return v


def main():
    pres = builtin_presentation("Brieskorn", 2, 3, 5)
    moduli = enumerate_reps(pres)
    irreducibles = [r for r in moduli.classes if r.irreducible]
    assert len(irreducibles) == 2
    images = irreducibles[0].images_array()

    elems, words = bfs_group(images)
    n = len(elems)
    assert n == 120, n
    print(f"group order {n}")

    mul = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        prods = su2.qnormalize(su2.qmul(elems[i][None, :], elems))
        for j in range(n):
            mul[i, j] = find_index(elems, prods[j])

    # a_ij = d(r_i)/d(x_j) as integer vectors over the group
    avecs = {}
    for i, r in enumerate(pres.relators):
        for j in range(pres.num_generators):
            avecs[i, j] = ring_to_vector(fox_derivative(r, j), images, elems, n)

    # right-multiplication matrices: (s . a)(w) = sum_e s(w e^-1) a(e), i.e.
    # R[w, u] = a(u^-1 w) and w = u e  =>  R[mul[u, e], u] += a(e)
    def right_mult_matrix(a):
        R = np.zeros((n, n), dtype=np.int64)
        for e in np.nonzero(a)[0]:
            c = a[e]
            for u in range(n):
                R[mul[u, e], u] += c
        return R

    blocks = [[right_mult_matrix(avecs[i, j]) for i in range(2)] for j in range(2)]
    M = np.block(blocks)
    print("kernel: computing exact nullspace of a", M.shape, "integer matrix")
    dm = sympy.Matrix(M.tolist())
    null = dm.nullspace()
    print("kernel dimension", len(null))
    assert len(null) == 119

    basis = []
    for v in null:
        denlcm = math.lcm(*[sympy.fraction(x)[1] for x in v])
        iv = np.array([int(x * denlcm) for x in v], dtype=object)
        g = math.gcd(*[abs(int(x)) for x in iv if x != 0])
        basis.append((iv // g).astype(np.int64))
    basis = np.stack(basis)

    inv = np.empty(n, dtype=np.int32)
    for i in range(n):
        inv[i] = find_index(elems, su2.qconj(elems[i]))

    def orbit_rank(s):
        orb = np.empty((n, 2 * n))
        for g_idx in range(n):
            for comp in range(2):
                # (g . s)_comp(w) = s_comp(g^-1 w)
                orb[g_idx, comp * n:(comp + 1) * n] = s[comp * n:(comp + 1) * n][mul[inv[g_idx]]]
        return np.linalg.matrix_rank(orb.astype(float), tol=1e-6)

    rng = np.random.default_rng(0)
    candidate = None
    for attempt in range(200):
        if attempt < len(basis):
            s = basis[attempt].copy()
        else:
            coeffs = rng.integers(-1, 2, size=len(basis))
            s = (coeffs[:, None] * basis).sum(axis=0)
        if not s.any():
            continue
        g = math.gcd(*[abs(int(x)) for x in s if x != 0])
        s //= g
        assert not (M @ s.astype(object)).any()
        assert s[:n].sum() == 0 and s[n:].sum() == 0  # zero augmentation
        if orbit_rank(s) != 119:
            continue
        if np.max(np.abs(s)) > 8:
            continue
        candidate = s
        print(f"generator found at attempt {attempt}, support "
              f"{int(np.count_nonzero(s))}, max |coeff| {int(np.max(np.abs(s)))}")
        break
    assert candidate is not None, "no module generator found"

    d3_words = []
    for comp in range(2):
        part = []
        for e in np.nonzero(candidate[comp * n:(comp + 1) * n])[0]:
            c = int(candidate[comp * n + e])
            part.append([[list(p) for p in words[e]], c])
        d3_words.append(part)

    out = pathlib.Path(__file__).resolve().parents[1] / "src/taut3/_data/brieskorn_2_3_5_d3.json"
    out.write_text(json.dumps({"family": "Brieskorn(2,3,5)", "d3_words": d3_words}, indent=1))
    print("wrote", out)

    # end-to-end validation: acyclicity at both irreducible classes
    from taut3.twisted_torsion import build_twisted_complex, cw_structure, rs_torsion

    cw = cw_structure("Brieskorn", 2, 3, 5)
    for rep in moduli.classes:
        c = build_twisted_complex(cw, rep)
        res = rs_torsion(c)
        print(rep.irreducible, c.betti_numbers(), "logT", res.log_t)
        if rep.irreducible:
            assert res.acyclic


if __name__ == "__main__":
    main()
