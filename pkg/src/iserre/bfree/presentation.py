"""Emission of the defining relations of a quasi-split iquantum group as
polynomials in the free algebra on B_i and torus letters K(mu), plus the bar
and q = 1 checks on them."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ..qcomb import QBase, qfact
from ..report import Report
from ..scalar import ONE, Scalar, q
from .algebra import FreeAlgebra, FreePoly
from .relations import iserre_poly


class InvalidParams(ValueError):
    pass


@dataclass(frozen=True)
class IqgParams:
    cartan: tuple
    eps: tuple | None = None
    tau: tuple | None = None  # 0-based images; identity if None
    sigma: tuple | None = None  # Scalars; the symbol s for every node if None
    kappa: tuple | None = None
    parity: tuple | None = None
    bar_images: Mapping[str, Scalar] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.cartan)
        object.__setattr__(self, "cartan", tuple(tuple(int(x) for x in row) for row in self.cartan))
        defaults = {
            "eps": (1,) * n,
            "tau": tuple(range(n)),
            "sigma": (Scalar.symbol("s"),) * n,
            "kappa": (Scalar.from_int(0),) * n,
            "parity": (0,) * n,
        }
        for name, value in defaults.items():
            if getattr(self, name) is None:
                object.__setattr__(self, name, value)
            else:
                object.__setattr__(self, name, tuple(getattr(self, name)))

    @property
    def rank(self) -> int:
        return len(self.cartan)

    def a(self, i: int, j: int) -> int:
        return self.cartan[i][j]

    def base(self, i: int) -> QBase:
        return QBase(self.eps[i])

    def split(self) -> bool:
        return all(self.tau[i] == i for i in range(self.rank))

    def validate(self):
        n = self.rank
        A = self.cartan
        if any(len(row) != n for row in A):
            raise InvalidParams("Cartan matrix must be square")
        for name in ("eps", "tau", "sigma", "kappa", "parity"):
            if len(getattr(self, name)) != n:
                raise InvalidParams(f"{name} must have one entry per node")
        for i in range(n):
            if A[i][i] != 2:
                raise InvalidParams("diagonal entries must be 2")
            if self.eps[i] < 1:
                raise InvalidParams("eps must be positive")
            for j in range(n):
                if i != j and (A[i][j] > 0 or (A[i][j] == 0) != (A[j][i] == 0)):
                    raise InvalidParams(f"bad off-diagonal entries at ({i + 1}, {j + 1})")
                if self.eps[i] * A[i][j] != self.eps[j] * A[j][i]:
                    raise InvalidParams("D A must be symmetric")
        t = self.tau
        if sorted(t) != list(range(n)) or any(t[t[i]] != i for i in range(n)):
            raise InvalidParams("tau must be an involution of the nodes")
        for i in range(n):
            if self.eps[t[i]] != self.eps[i]:
                raise InvalidParams("tau must preserve eps")
            for j in range(n):
                if A[t[i]][t[j]] != A[i][j]:
                    raise InvalidParams("tau must be a diagram automorphism")
        fixed = [k for k in range(n) if t[k] == k]
        for i in range(n):
            if self.sigma[i].is_zero():
                raise InvalidParams("parameters must be nonzero")
            if not self.kappa[i].is_zero():
                if t[i] != i or any(A[k][i] % 2 for k in fixed):
                    raise InvalidParams(f"kappa_{i + 1} must vanish")
            if t[i] != i and A[i][t[i]] == 0 and self.sigma[i] != self.sigma[t[i]]:
                raise InvalidParams(f"sigma_{i + 1} must equal sigma_{t[i] + 1}")

    def bar_violations(self) -> list[str]:
        """Nodes whose parameters break the bar-compatibility conditions."""
        out = []
        n, t, A = self.rank, self.tau, self.cartan
        for i in range(n):
            s = self.sigma[i]
            sb = s.bar(self.bar_images)
            qi = q(self.eps[i])
            if t[i] == i:
                if any(A[i][j] for j in range(n) if j != i) and sb * qi.inv() != s * qi:
                    out.append(f"node {i + 1}: bar(q_i s_i) != q_i s_i")
            elif A[i][t[i]] == 0:
                if sb != s or s != self.sigma[t[i]]:
                    out.append(f"node {i + 1}: s_i must be bar-fixed and equal s_tau(i)")
            elif self.sigma[t[i]] != q(-self.eps[i] * A[i][t[i]]) * sb:
                out.append(f"node {i + 1}: s_tau(i) != q_i^-a bar(s_i)")
        return out


def split_rank2(a12: int, sigma: Scalar | None = None, parity: int = 0,
                bar_images: Mapping[str, Scalar] | None = None) -> IqgParams:
    s = Scalar.symbol("s") if sigma is None else sigma
    return IqgParams(((2, a12), (a12, 2)), sigma=(s, s), parity=(parity, parity),
                     bar_images=dict(bar_images or {}))


@dataclass
class Relation:
    tag: str
    line: str
    poly: FreePoly
    nodes: tuple
    verified: bool = True

    def to_json(self) -> dict:
        return {"tag": self.tag, "line": self.line, "nodes": [i + 1 for i in self.nodes],
                "verified": self.verified, "terms": self.poly.to_json()}


@dataclass
class Presentation:
    params: IqgParams
    alg: FreeAlgebra
    generators: list
    relations: list
    torus_inverse: dict  # letter -> letter of the inverse torus element

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relations": [r.to_json() for r in self.relations]}


def _torus_basis(p: IqgParams):
    """Basis mu = h_i - h_tau(i) of the torus part, one per 2-element orbit."""
    out = []
    for i in range(p.rank):
        j = p.tau[i]
        if i < j:
            pairing = tuple(p.a(i, k) - p.a(j, k) for k in range(p.rank))
            out.append((f"K(h{i + 1}-h{j + 1})", f"K(h{j + 1}-h{i + 1})", i, j, pairing))
    return out


def _pochhammer(a: Scalar, x: Scalar, n: int) -> Scalar:
    out = ONE
    for k in range(n):
        out = out * (1 - a * x ** k)
    return out


def emit_presentation(p: IqgParams) -> Presentation:
    p.validate()
    n = p.rank
    basis = _torus_basis(p)
    B = [f"B{i + 1}" for i in range(n)]
    K = []
    inverse = {}
    pairing = {}
    for plus, minus, i, j, pr in basis:
        K += [plus, minus]
        inverse[plus], inverse[minus] = minus, plus
        pairing[plus] = pr
        pairing[minus] = tuple(-x for x in pr)
    alg = FreeAlgebra(B + K)
    one = alg.scalar(1)
    rels: list[Relation] = []

    # torus relations
    for plus, minus, i, j, _ in basis:
        rels.append(Relation("torus", "K(mu) K(-mu) = 1", alg.word([plus, minus]) - one, (i, j)))
        rels.append(Relation("torus", "K(mu) K(-mu) = 1", alg.word([minus, plus]) - one, (i, j)))
    for x in range(len(K)):
        for y in range(x + 1, len(K)):
            if inverse[K[x]] != K[y]:
                rels.append(Relation("torus", "K(mu) K(nu) = K(nu) K(mu)",
                                     alg.word([K[x], K[y]]) - alg.word([K[y], K[x]]), ()))
    # weight relations
    for k in K:
        for i in range(n):
            e = pairing[k][i]
            rels.append(Relation("weight", "K(mu) B_i = q^-<mu,alpha_i> B_i K(mu)",
                                 alg.word([k, B[i]]) - alg.word([B[i], k], q(-e)), (i,)))

    split = p.split()
    for i in range(n):
        ti = p.tau[i]
        bi = p.base(i)
        for j in range(n):
            if j == i:
                continue
            aij = p.a(i, j)
            if ti == i:
                poly = iserre_poly(aij, p.parity[i], p.sigma[i], bi, alg, B[i], B[j])
                rels.append(Relation("iSerre", "iSerre", poly, (i, j)))
            elif split:
                continue
            elif j == ti:
                rels.append(_relation5(p, alg, B, basis, i))
            else:
                N = 1 - aij
                poly = alg.zero()
                for m in range(N + 1):
                    t = alg.word([B[i]] * m + [B[j]] + [B[i]] * (N - m),
                                 (qfact(m, bi) * qfact(N - m, bi)).inv())
                    poly = poly + t if m % 2 == 0 else poly - t
                rels.append(Relation("qSerre", "qSerre", poly, (i, j)))
            if not split and aij == 0 and ti != j and i < j:
                rels.append(Relation("commutation", "B_i B_j = B_j B_i",
                                     alg.word([B[i], B[j]]) - alg.word([B[j], B[i]]), (i, j)))
    generators = B + K
    return Presentation(p, alg, generators, rels, inverse)


def _relation5(p: IqgParams, alg: FreeAlgebra, B, basis, i: int) -> Relation:
    ti = p.tau[i]
    a = p.a(i, ti)
    bi = p.base(i)
    qi = q(p.eps[i])
    N = 1 - a
    poly = alg.zero()
    for m in range(N + 1):
        t = alg.word([B[i]] * m + [B[ti]] + [B[i]] * (N - m), (qfact(m, bi) * qfact(N - m, bi)).inv())
        poly = poly + t if (m + a) % 2 == 0 else poly - t
    # Kt_i Kt_tau(i)^-1 = K(h_i - h_tau(i))^eps_i
    for plus, minus, x, y, _ in basis:
        if (x, y) == (i, ti):
            k_fwd, k_back = plus, minus
        elif (x, y) == (ti, i):
            k_fwd, k_back = minus, plus
    e = p.eps[i]
    bpow = [B[i]] * (-a)
    c1 = qi ** a * _pochhammer(qi ** -2, qi ** -2, -a) * p.sigma[ti]
    c2 = _pochhammer(qi ** 2, qi ** 2, -a) * p.sigma[i]
    inv = (qi - qi.inv()).inv() * qfact(-a, bi).inv()
    rhs = alg.word(bpow + [k_fwd] * e, c1) - alg.word(bpow + [k_back] * e, c2)
    return Relation("relation5", "relation5", poly - rhs.scale(inv), (i, ti), verified=False)


def bar_check(p: IqgParams, enforce_conditions: bool = True) -> Report:
    """Every emitted relation is mapped by bar onto an emitted relation with
    the same tag, up to sign."""
    t0 = time.perf_counter()
    bad = p.bar_violations()
    if bad and enforce_conditions:
        raise InvalidParams("; ".join(bad))
    pres = emit_presentation(p)
    rels = pres.relations
    witness = None
    for r in rels:
        img = r.poly.bar(p.bar_images, pres.torus_inverse)
        if not any(img == r2.poly or img == -r2.poly for r2 in rels if r2.tag == r.tag):
            witness = f"{r.tag} {[i + 1 for i in r.nodes]}: bar gives {img.to_text()}"
            break
    args = {"rank": p.rank, "cartan": [list(r) for r in p.cartan], "relations": len(rels)}
    return Report(claim="bar", args=args, passed=witness is None, witness=witness,
                  millis=(time.perf_counter() - t0) * 1000)


def specialize_presentation_q1(pres: Presentation, sigma_value=1) -> list[dict]:
    """Coefficient-wise q = 1 with every parameter symbol set to ``sigma_value``."""
    values = {name: Fraction(sigma_value) for name in ("s", "s1", "s2", "s3")}
    out = []
    for r in pres.relations:
        terms = []
        for (w, _), c in r.poly.sorted_terms():
            v = c.specialize_q1(values)
            if v:
                terms.append({"word": list(w), "coeff": str(v)})
        out.append({"tag": r.tag, "nodes": [i + 1 for i in r.nodes], "terms": terms})
    return out
