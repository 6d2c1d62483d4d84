"""Geometric nerves of finite bicategories.

An n-simplex of the nerve is a (non-unitary) lax functor from the
chain [n] into the bicategory: objects on the vertices, 1-cells on the
edges (including an endo-1-cell per vertex), a triangle 2-cell per
weakly increasing triple, and a unit 2-cell per vertex, subject to the
tetrahedron condition and two unit normalization equations.  These are
exactly the axioms of a lax functor whose source is the locally
discrete chain, and every enumerated simplex round-trips through that
validator in the tests.

The simplicial operators relabel indices along monotone maps; the
truncated simplicial set stores the face and degeneracy tables up to a
dimension bound.  Homology is computed over the integers on the
degeneracy-normalized chain complex via Smith normal form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .kernel import Bicat
from .morphisms import LaxFunctor


class TruncationTooLarge(Exception):
    """The enumeration exceeded its node budget; the instance is
    beyond desk scale at the requested dimension."""


def _pairs(n):
    return [(i, j) for i in range(n + 1) for j in range(i, n + 1)]


def _triples(n):
    return [(i, j, k) for i in range(n + 1) for j in range(i, n + 1)
            for k in range(j, n + 1)]


@dataclass(frozen=True)
class GeometricSimplex:
    """A geometric n-simplex: the full cell data of a lax functor from
    the chain [n].  ``one`` is indexed by the pairs i <= j in
    lexicographic order, ``comp`` by the triples i <= j <= k, ``unit``
    by the vertices."""
    n: int
    obj: tuple
    one: tuple
    comp: tuple
    unit: tuple

    def edge(self, i, j):
        return self.one[_pairs(self.n).index((i, j))]

    def tri(self, i, j, k):
        return self.comp[_triples(self.n).index((i, j, k))]

    def relabel(self, sigma):
        """The simplex along a monotone map sigma : [m] -> [n], given
        as the list of its values."""
        m = len(sigma) - 1
        one = {p: e for p, e in zip(_pairs(self.n), self.one)}
        tri = {t: c for t, c in zip(_triples(self.n), self.comp)}
        return GeometricSimplex(
            m,
            tuple(self.obj[s] for s in sigma),
            tuple(one[(sigma[i], sigma[j])] for (i, j) in _pairs(m)),
            tuple(tri[(sigma[i], sigma[j], sigma[k])]
                  for (i, j, k) in _triples(m)),
            tuple(self.unit[s] for s in sigma))

    def as_lax_functor(self, B: Bicat) -> LaxFunctor:
        """The simplex as an actual lax functor from the locally
        discrete chain; its validator is the reference for the simplex
        conditions."""
        from .corpus import poset
        S = poset(self.n)
        pairs = _pairs(self.n)
        ix = {p: k for k, p in enumerate(pairs)}
        one = list(self.one)
        comp = {}
        for (i, j, k) in _triples(self.n):
            comp[(ix[(j, k)], ix[(i, j)])] = self.tri(i, j, k)
        unit = {i: self.unit[i] for i in range(self.n + 1)}
        return LaxFunctor(S, B, list(self.obj), one,
                          [B.i2(f) for f in one], comp, unit)


def _conditions(n):
    """The unit and tetrahedron checks of an n-simplex, grouped by the
    lexicographically largest triangle slot they involve, so the
    enumerator can test each as soon as it is determined."""
    triples = _triples(n)
    tri_ix = {t: k for k, t in enumerate(triples)}
    grouped = {k: [] for k in range(len(triples))}
    for (i, j) in _pairs(n):
        grouped[tri_ix[(i, i, j)]].append(("r", i, j))
        grouped[tri_ix[(i, j, j)]].append(("l", i, j))
    for (i, j, k, l) in [(i, j, k, l) for i in range(n + 1)
                         for j in range(i, n + 1)
                         for k in range(j, n + 1)
                         for l in range(k, n + 1)]:
        slot = max(tri_ix[t] for t in
                   [(i, j, k), (i, j, l), (i, k, l), (j, k, l)])
        grouped[slot].append(("t", i, j, k, l))
    return grouped


def _check(B, edges, units, tris, cond):
    if cond[0] == "r":
        (_, i, j) = cond
        f = edges[(i, j)]
        return B.v(tris[(i, i, j)],
                   B.h(B.i2(f), units[i])) == B.r(f)
    if cond[0] == "l":
        (_, i, j) = cond
        f = edges[(i, j)]
        return B.v(tris[(i, j, j)],
                   B.h(units[j], B.i2(f))) == B.l(f)
    (_, i, j, k, l) = cond
    zij, zjk, zkl = edges[(i, j)], edges[(j, k)], edges[(k, l)]
    lhs = B.vseq(tris[(i, k, l)],
                 B.h(B.i2(zkl), tris[(i, j, k)]),
                 B.a(zkl, zjk, zij))
    rhs = B.v(tris[(i, j, l)], B.h(tris[(j, k, l)], B.i2(zij)))
    return lhs == rhs


def _enumerate_simplices(B: Bicat, n: int, tick):
    pairs = _pairs(n)
    triples = _triples(n)
    # triangles all of whose edges are known once pair slot k is set
    completed = [[] for _ in pairs]
    pair_slot = {p: k for k, p in enumerate(pairs)}
    for t in triples:
        (i, j, k) = t
        slot = max(pair_slot[(i, j)], pair_slot[(j, k)], pair_slot[(i, k)])
        completed[slot].append(t)
    grouped = _conditions(n)

    out = []
    for obj in product(B.objects(), repeat=n + 1):
        edges, units, tris = {}, {}, {}

        def rec_tri(k):
            tick()
            if k == len(triples):
                out.append(GeometricSimplex(
                    n, obj,
                    tuple(edges[p] for p in pairs),
                    tuple(tris[t] for t in triples),
                    tuple(units[i] for i in range(n + 1))))
                return
            (i, j, l) = triples[k]
            s = B.h1(edges[(j, l)], edges[(i, j)])
            for c in B.hom2(s, edges[(i, l)]):
                tris[triples[k]] = c
                if all(_check(B, edges, units, tris, cond)
                       for cond in grouped[k]):
                    rec_tri(k + 1)
            tris.pop(triples[k], None)

        def rec_edge(k):
            tick()
            if k == len(pairs):
                rec_tri(0)
                return
            (i, j) = pairs[k]
            for e in B.hom1(obj[i], obj[j]):
                edges[(i, j)] = e
                if not all(B.hom2(B.h1(edges[(q, r)], edges[(p, q)]),
                                  edges[(p, r)])
                           for (p, q, r) in completed[k]):
                    continue
                if i == j:
                    for u in B.hom2(B.i1(obj[i]), e):
                        units[i] = u
                        rec_edge(k + 1)
                    units.pop(i, None)
                else:
                    rec_edge(k + 1)
            edges.pop((i, j), None)

        rec_edge(0)
    return out


class TruncatedSimplicialSet:
    """A simplicial set stored up to dimension N: simplex lists per
    dimension, face tables ``faces[n][i]`` (n >= 1, 0 <= i <= n) and
    degeneracy tables ``degens[n][i]`` (n < N, 0 <= i <= n), each
    mapping simplex ids of dimension n."""

    def __init__(self, N, simplices):
        self.N = N
        self.simplices = simplices
        self.index = [{z: s for s, z in enumerate(dim)}
                      for dim in simplices]
        self.faces = [None]
        for n in range(1, N + 1):
            self.faces.append(
                [[self.index[n - 1][z.relabel([m for m in range(n + 1)
                                               if m != i])]
                  for z in simplices[n]]
                 for i in range(n + 1)])
        self.degens = []
        for n in range(N):
            self.degens.append(
                [[self.index[n + 1][z.relabel(
                    list(range(i + 1)) + list(range(i, n + 1)))]
                  for z in simplices[n]]
                 for i in range(n + 1)])

    def face(self, n, i, s):
        return self.faces[n][i][s]

    def degeneracy(self, n, i, s):
        return self.degens[n][i][s]

    def degenerate_ids(self, n):
        """The ids of the degenerate simplices of dimension n (the
        images of the degeneracy operators)."""
        if n == 0:
            return set()
        return {t for col in self.degens[n - 1] for t in col}

    def nondegenerate(self, n):
        deg = self.degenerate_ids(n)
        return [s for s in range(len(self.simplices[n])) if s not in deg]

    def nondegenerate_counts(self):
        return [len(self.nondegenerate(n)) for n in range(self.N + 1)]


def nerve(B: Bicat, N: int = 3, budget: int = 2_000_000
          ) -> TruncatedSimplicialSet:
    """The geometric nerve of B, truncated at dimension N: per
    dimension, the exhaustive list of simplices.  Enumeration is
    budgeted by backtracking-node count and raises TruncationTooLarge
    beyond it."""
    state = {"nodes": 0}

    def tick():
        state["nodes"] += 1
        if state["nodes"] > budget:
            raise TruncationTooLarge(
                "nerve enumeration exceeded %d nodes" % budget)

    sims = [_enumerate_simplices(B, n, tick) for n in range(N + 1)]
    return TruncatedSimplicialSet(N, sims)


# ---------------------------------------------------------------------------
# Induced simplicial maps
# ---------------------------------------------------------------------------

@dataclass
class SimplicialMap:
    source: TruncatedSimplicialSet
    target: TruncatedSimplicialSet
    maps: list                  # maps[n][s] = image simplex id


def apply_functor(F: LaxFunctor, z: GeometricSimplex) -> GeometricSimplex:
    """The composite lax functor F o z, as a simplex of the target."""
    B = F.target
    edge = {p: e for p, e in zip(_pairs(z.n), z.one)}
    comp = []
    for (i, j, k) in _triples(z.n):
        comp.append(B.v(F.two[z.tri(i, j, k)],
                        F.comp[(edge[(j, k)], edge[(i, j)])]))
    unit = [B.v(F.two[z.unit[i]], F.unit[z.obj[i]])
            for i in range(z.n + 1)]
    return GeometricSimplex(z.n,
                            tuple(F.obj[o] for o in z.obj),
                            tuple(F.one[e] for e in z.one),
                            tuple(comp), tuple(unit))


def simplicial_map(F: LaxFunctor, XA=None, XB=None, N: int = 3
                   ) -> SimplicialMap:
    """The map of truncated nerves induced by a lax functor, sending a
    simplex to its composite with the functor."""
    if XA is None:
        XA = nerve(F.source, N)
    if XB is None:
        XB = nerve(F.target, XA.N)
    maps = [[XB.index[n][apply_functor(F, z)]
             for z in XA.simplices[n]]
            for n in range(XA.N + 1)]
    return SimplicialMap(XA, XB, maps)


# ---------------------------------------------------------------------------
# Connected components and integral homology
# ---------------------------------------------------------------------------

def pi0(X: TruncatedSimplicialSet):
    """Connected components of the 1-skeleton: returns the component
    count and one representative 0-simplex id per component."""
    parent = list(range(len(X.simplices[0])))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in range(len(X.simplices[1])):
        a, b = find(X.face(1, 0, e)), find(X.face(1, 1, e))
        if a != b:
            parent[a] = b
    reps = sorted({find(v) for v in range(len(parent))})
    return len(reps), reps


@dataclass
class HomologyResult:
    """Integral homology per degree: Betti numbers and torsion
    coefficient lists."""
    betti: list
    torsion: list

    def group(self, k):
        """A readable description of H_k, e.g. 'Z + Z/2'."""
        parts = ["Z"] * self.betti[k] + \
                ["Z/%d" % t for t in self.torsion[k]]
        return " + ".join(parts) if parts else "0"


def _boundary_matrix(X, n, nd, pos):
    """The n-th boundary of the normalized complex as a sympy Matrix
    (rows: nondegenerate (n-1)-simplices, cols: nondegenerate
    n-simplices)."""
    from sympy import zeros
    M = zeros(len(nd[n - 1]), len(nd[n]))
    for c, s in enumerate(nd[n]):
        for i in range(n + 1):
            f = X.face(n, i, s)
            r = pos[n - 1].get(f)
            if r is not None:
                M[r, c] += (-1) ** i
    return M


def _boundary_entries(X, n, nd, pos):
    """The nonzero entries of the n-th normalized boundary as a sparse
    {(row, col): value} dict."""
    ent = {}
    for c, s in enumerate(nd[n]):
        for i in range(n + 1):
            r = pos[n - 1].get(X.face(n, i, s))
            if r is not None:
                ent[(r, c)] = ent.get((r, c), 0) + (-1) ** i
    return {k: v for k, v in ent.items() if v}


def _smith_invariants(entries):
    """The nonzero invariant factors of a sparse integer matrix.

    Boundary matrices are huge but almost entirely reducible by
    unimodular pivots: repeatedly pivot on a +-1 entry (chosen to
    minimize fill-in), clear its column by row operations, and drop the
    pivot row and column.  Each such pivot contributes an invariant
    factor 1; the small remaining core goes through Smith normal form.
    """
    rows = {}
    cols = {}
    for (r, c), v in entries.items():
        rows.setdefault(r, {})[c] = v
        cols.setdefault(c, set()).add(r)
    ones = 0
    while True:
        best = None
        for r, rw in rows.items():
            for c, v in rw.items():
                if v in (1, -1):
                    cost = (len(rw) - 1) * (len(cols[c]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, r, c, v)
                        if cost == 0:
                            break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, r, c, v = best
        prow = rows.pop(r)
        for c2 in prow:
            cols[c2].discard(r)
        for r2 in list(cols[c]):
            f = rows[r2][c] * v
            rw2 = rows[r2]
            for c2, v2 in prow.items():
                nv = rw2.get(c2, 0) - f * v2
                if nv:
                    rw2[c2] = nv
                    cols[c2].add(r2)
                elif c2 in rw2:
                    del rw2[c2]
                    cols[c2].discard(r2)
            if not rw2:
                del rows[r2]
        del cols[c]
        ones += 1
    diag = [1] * ones
    if rows:
        from sympy import zeros, ZZ
        from sympy.matrices.normalforms import smith_normal_form
        rix = {r: i for i, r in enumerate(sorted(rows))}
        ccols = sorted({c for rw in rows.values() for c in rw})
        cix = {c: j for j, c in enumerate(ccols)}
        M = zeros(len(rix), len(cix))
        for r, rw in rows.items():
            for c, v in rw.items():
                M[rix[r], cix[c]] = v
        S = smith_normal_form(M, domain=ZZ)
        diag += [int(abs(S[i, i])) for i in range(min(S.rows, S.cols))
                 if S[i, i] != 0]
    return diag


def homology(X: TruncatedSimplicialSet, kmax: int = None) -> HomologyResult:
    """Integral homology of the truncated nerve in degrees 0..kmax
    (default N-1, the largest degree the truncation determines),
    computed by Smith normal form on the degeneracy-normalized chain
    complex."""
    if kmax is None:
        kmax = X.N - 1
    if kmax > X.N - 1:
        raise ValueError("homology in degree %d needs the nerve "
                         "truncated at %d or more" % (kmax, kmax + 1))
    nd = [X.nondegenerate(n) for n in range(X.N + 1)]
    pos = [{s: r for r, s in enumerate(col)} for col in nd]

    ranks = {}
    invariants = {}
    for n in range(1, kmax + 2):
        diag = _smith_invariants(_boundary_entries(X, n, nd, pos))
        ranks[n] = len(diag)
        invariants[n] = diag
    betti, torsion = [], []
    for k in range(kmax + 1):
        rk_in = ranks.get(k, 0)          # rank of boundary_k
        rk_out = ranks.get(k + 1, 0)     # rank of boundary_{k+1}
        betti.append(len(nd[k]) - rk_in - rk_out)
        torsion.append([d for d in invariants.get(k + 1, []) if d > 1])
    return HomologyResult(betti, torsion)


# ---------------------------------------------------------------------------
# Chain-level comparison of simplicial maps
# ---------------------------------------------------------------------------

def chain_matrices(sm: SimplicialMap, kmax: int):
    """The chain map induced on the normalized complexes, per degree
    0..kmax, as sympy matrices (a simplex whose image is degenerate
    maps to zero)."""
    from sympy import zeros
    X, Y = sm.source, sm.target
    ndX = [X.nondegenerate(n) for n in range(kmax + 1)]
    ndY = [Y.nondegenerate(n) for n in range(kmax + 1)]
    posY = [{s: r for r, s in enumerate(col)} for col in ndY]
    mats = []
    for k in range(kmax + 1):
        M = zeros(len(ndY[k]), len(ndX[k]))
        for c, s in enumerate(ndX[k]):
            r = posY[k].get(sm.maps[k][s])
            if r is not None:
                M[r, c] = 1
        mats.append(M)
    return mats


def _rank_mod(M, p):
    rows = [[int(M[i, j]) % p for j in range(M.cols)]
            for i in range(M.rows)]
    rank = 0
    col = 0
    while rank < len(rows) and col < M.cols:
        piv = next((r for r in range(rank, len(rows))
                    if rows[r][col] % p), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p
                           for x, y in zip(rows[r], rows[rank])]
        rank += 1
        col += 1
    return rank


def _zero_on_homology(bX, bY, diff, k, p=None):
    """Whether the chain map ``diff`` sends cycles of degree k into
    boundaries, over Q (p None) or GF(p): rank([d_{k+1} | diff K]) ==
    rank(d_{k+1}) for K a kernel basis of d_k."""
    from sympy import Matrix
    dk, dk1 = bX[k], bY[k + 1]
    if p is None:
        ns = dk.nullspace() if dk.cols else []
        if not ns:
            return True
        aug = Matrix.hstack(dk1, diff * Matrix.hstack(*ns))
        return aug.rank() == dk1.rank()
    K = _nullspace_mod(dk, p)
    if not K:
        return True
    Km = Matrix([[K[i][j] for i in range(len(K))]
                 for j in range(dk.cols)])
    aug = Matrix.hstack(dk1, diff * Km)
    return _rank_mod(aug, p) == _rank_mod(dk1, p)


def _nullspace_mod(M, p):
    """A basis (list of vectors) of the null space of M over GF(p)."""
    rows = [[int(M[i, j]) % p for j in range(M.cols)]
            for i in range(M.rows)]
    n = M.cols
    pivots = []
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, len(rows))
                    if rows[r][col] % p), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(x * inv) % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(x - f * y) % p
                           for x, y in zip(rows[r], rows[rank])]
        pivots.append(col)
        rank += 1
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-rows[r][fc]) % p
        basis.append(v)
    return basis


def induced_maps_equal(sm1: SimplicialMap, sm2: SimplicialMap,
                       kmax: int = None, primes=(2, 3)) -> bool:
    """Whether two simplicial maps with the same source and target
    induce the same map on homology in degrees 0..kmax, verified over
    the rationals and modulo each given prime.  For spaces whose
    torsion is supported at those primes this pins down the integral
    statement."""
    X, Y = sm1.source, sm1.target
    if kmax is None:
        kmax = min(X.N, Y.N) - 1
    ndX = [X.nondegenerate(n) for n in range(kmax + 2)]
    posX = [{s: r for r, s in enumerate(col)} for col in ndX]
    ndY = [Y.nondegenerate(n) for n in range(kmax + 2)]
    posY = [{s: r for r, s in enumerate(col)} for col in ndY]
    from sympy import zeros
    bX = {0: zeros(0, len(ndX[0]))}
    bY = {0: zeros(0, len(ndY[0]))}
    for n in range(1, kmax + 2):
        bX[n] = _boundary_matrix(X, n, ndX, posX)
        bY[n] = _boundary_matrix(Y, n, ndY, posY)
    f = chain_matrices(sm1, kmax)
    g = chain_matrices(sm2, kmax)
    for k in range(kmax + 1):
        diff = f[k] - g[k]
        if diff.is_zero_matrix:
            continue
        if not _zero_on_homology(bX, bY, diff, k):
            return False
        for p in primes:
            if not _zero_on_homology(bX, bY, diff, k, p):
                return False
    return True
