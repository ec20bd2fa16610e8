"""Structural statements turned into finite computations.

Saturation computes a subspace of the submodule generated by a seed
polynomial: it repeatedly applies generator actions, row-reduces, and
throws away anything above a degree cap.  Discarding only ever shrinks
the result, so every row is a genuine submodule element (soundness), but
a missing element is only bounded evidence.

Each row also carries provenance as a straight-line program over the
seed, so membership claims can be replayed through the action alone.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .algebra import H, L, AlgebraElement, AlgebraParams, BasisVector, Hb, Lb, bracket
from .module import (
    ActionOracle,
    ConfigurationError,
    ModuleParams,
    RankOneModule,
    branch_of,
    gamma_active,
    kappa_active,
)
from .poly import ONE, T, Polynomial
from .scalar import format_rational
from .verify import CheckWindow, Entry, Report, _describe, _Tally, generators

PROOF = "proof"
BOUNDED = "bounded-evidence"


class MalformedOracle(ValueError):
    """Oracle output is not the action of any module in the family."""


# -- exact row reduction -------------------------------------------------


class _Echelon:
    """Reduced row echelon form keyed by leading power, rows monic."""

    def __init__(self):
        self.rows: dict[int, Polynomial] = {}
        self.prov: dict[int, dict[int, Fraction]] = {}

    def reduce(self, f: Polynomial, prov: dict[int, Fraction] | None = None):
        prov = dict(prov or {})
        coeffs = list(f.coeffs)
        for k in range(len(coeffs) - 1, -1, -1):
            c = coeffs[k]
            if c == 0 or k not in self.rows:
                continue
            row = self.rows[k].coeffs
            for j, r in enumerate(row):
                coeffs[j] -= c * r
            for idx, w in self.prov[k].items():
                prov[idx] = prov.get(idx, Fraction(0)) - c * w
        return Polynomial._raw(coeffs), prov

    def insert(self, f: Polynomial, prov: dict[int, Fraction] | None = None) -> bool:
        g, prov = self.reduce(f, prov)
        if g.is_zero():
            return False
        lead = g.degree
        inv = 1 / g.leading_coefficient
        g = g.scale(inv)
        prov = {i: w * inv for i, w in prov.items() if w != 0}
        # clear the new pivot column from existing rows
        for k, row in list(self.rows.items()):
            c = row.coeff(lead)
            if c != 0:
                self.rows[k] = row - g.scale(c)
                p = dict(self.prov[k])
                for idx, w in prov.items():
                    p[idx] = p.get(idx, Fraction(0)) - c * w
                self.prov[k] = {i: w for i, w in p.items() if w != 0}
        self.rows[lead] = g
        self.prov[lead] = prov
        return True


@dataclass
class SpanBasis:
    rows: list[Polynomial]
    degree_cap: int
    saturated: bool
    iterations: int = 0
    provenance: list[dict[int, Fraction]] = field(default_factory=list, repr=False)
    program: list = field(default_factory=list, repr=False)

    def contains(self, f: Polynomial) -> bool:
        coeffs = list(f.coeffs)
        for row in sorted(self.rows, key=lambda r: -r.degree):
            lead = row.degree
            c = coeffs[lead] if lead < len(coeffs) else 0
            if c != 0:
                for j, r in enumerate(row.coeffs):
                    coeffs[j] -= c * r
        return all(c == 0 for c in coeffs)

    def to_json(self) -> dict:
        return {
            "rows": [r.to_json() for r in self.rows],
            "degree_cap": self.degree_cap,
            "saturated": self.saturated,
            "iterations": self.iterations,
        }


def default_generators(ap: AlgebraParams, i_max: int = 3) -> list[BasisVector]:
    """Generating set over ``|i| <= i_max``, with ``H[i,1]`` when kappa is live."""
    idx = range(-i_max, i_max + 1)
    gens = generators(ap, idx)
    if kappa_active(ap) and Hb(0, 1) not in gens:
        gens += [Hb(i, 1) for i in idx]
    return gens


def submodule_saturation(
    ap: AlgebraParams,
    mp: ModuleParams,
    seed: Polynomial,
    gen_window: Sequence[BasisVector] | None = None,
    degree_cap: int | None = None,
    iter_cap: int = 50,
    module: RankOneModule | None = None,
) -> SpanBasis:
    if seed.is_zero():
        raise ValueError("seed must be nonzero")
    M = module or RankOneModule(ap, mp)
    gens = list(gen_window) if gen_window is not None else default_generators(ap)
    cap = seed.degree + 3 if degree_cap is None else degree_cap
    if cap < seed.degree or iter_cap <= 0:
        raise ValueError("caps must admit the seed")
    ech = _Echelon()
    # program[n] = None for the seed, else (generator, {program index: coeff})
    program: list = [None]
    ech.insert(seed, {0: Fraction(1)})
    saturated = False
    it = 0
    while it < iter_cap:
        it += 1
        changed = False
        snapshot = [(ech.rows[k], dict(ech.prov[k])) for k in sorted(ech.rows)]
        for row, prov in snapshot:
            for g in gens:
                img = M.act_basis(g, row)
                if img.is_zero() or img.degree > cap:
                    continue
                if ech.reduce(img)[0].is_zero():
                    continue
                program.append((g, prov))
                if ech.insert(img, {len(program) - 1: Fraction(1)}):
                    changed = True
        if not changed:
            saturated = True
            break
    keys = sorted(ech.rows)
    return SpanBasis(
        [ech.rows[k] for k in keys],
        cap,
        saturated,
        it,
        [ech.prov[k] for k in keys],
        program,
    )


def replay_row(module: RankOneModule, span: SpanBasis, seed: Polynomial, n: int) -> Polynomial:
    """Recompute row ``n`` from the seed using only the module action."""
    memo: dict[int, Polynomial] = {0: seed}

    def value(idx: int) -> Polynomial:
        if idx not in memo:
            g, prov = span.program[idx]
            arg = Polynomial.zero()
            for j, c in prov.items():
                arg = arg + value(j).scale(c)
            memo[idx] = module.act_basis(g, arg)
        return memo[idx]

    out = Polynomial.zero()
    for idx, c in span.provenance[n].items():
        out = out + value(idx).scale(c)
    return out


def spot_check_soundness(module: RankOneModule, span: SpanBasis, seed: Polynomial, samples: int = 10, seed_rng: int = 0) -> bool:
    rng = random.Random(seed_rng)
    idx = list(range(len(span.rows)))
    chosen = idx if len(idx) <= samples else rng.sample(idx, samples)
    return all(replay_row(module, span, seed, n) == span.rows[n] for n in chosen)


def contains_one(s: SpanBasis) -> bool:
    return s.contains(ONE)


def is_simple_expected(ap: AlgebraParams, mp: ModuleParams) -> bool:
    """Simplicity predicate as the classification states it.

    ``alpha != 0``, or ``gamma != 0`` where gamma is a parameter, or a
    nonzero ``kappa`` (inside its declared window) where kappa is a
    parameter.  See ``tests/test_probe.py`` for parameter points where the
    module has the proper submodule ``t Omega`` even though this returns
    True.
    """
    if mp.alpha != 0:
        return True
    if gamma_active(ap) and mp.gamma != 0:
        return True
    if kappa_active(ap) and mp.kappa_nonzero():
        return True
    return False


def check_t_submodule(
    ap: AlgebraParams,
    mp: ModuleParams,
    w: CheckWindow,
    module_cls=RankOneModule,
) -> Report:
    """``t Omega`` is invariant and every generator kills ``1`` modulo ``t Omega``.

    Stated for ``alpha = gamma = 0, kappa = 0`` but runnable on any module.
    """
    M = module_cls(ap, mp)
    rep = Report("t_submodule")
    gens = generators(ap, w.indices)
    if not any(g.kind == H and g.m == 1 for g in gens):
        gens += [Hb(i, 1) for i in w.indices]
    inv = _Tally("x.t^k in t Omega (1 <= k <= deg_max)", _describe(ap, mp))
    quo = _Tally("x.1 in t Omega (trivial quotient)", _describe(ap, mp))
    for g in gens:
        for k in range(1, w.deg_max + 1):
            img = M.act_basis(g, Polynomial.monomial(k))
            inv.record(img.coeff(0) == 0, lambda: f"x={g}, k={k}", lambda: img)
        img = M.act_basis(g, ONE)
        quo.record(img.coeff(0) == 0, lambda: f"x={g}", lambda: img)
    rep.entries += [inv.entry, quo.entry]
    return rep


# -- parameter recovery ----------------------------------------------------


def recover_parameters(
    ap: AlgebraParams,
    oracle: ActionOracle,
    kappa_window: tuple[int, int] | None = None,
) -> ModuleParams:
    """Read ``(lambda, alpha, beta, gamma, kappa)`` off a black-box action."""
    eps = ap.epsilon
    l10 = oracle(Lb(1, 0), ONE)
    if l10.degree != 1:
        raise MalformedOracle(f"L[1,0].1 = {l10} should have degree 1")
    lam = l10.coeff(1)
    alpha = -l10.coeff(0) / lam
    l01 = oracle(Lb(0, 1), ONE)
    if l01.degree > 1:
        raise MalformedOracle(f"L[0,1].1 = {l01} should have degree <= 1")
    beta = l01.coeff(1)
    expected_const = alpha if eps == 1 else -alpha * beta * beta
    if l01.coeff(0) != expected_const:
        raise MalformedOracle(f"L[0,1].1 = {l01} is inconsistent with alpha = {alpha}, beta = {beta}")
    l00 = oracle(Lb(0, 0), ONE)
    if l00 != T:
        raise MalformedOracle(f"L[0,0].1 = {l00}; a free rank-one module needs t")
    gamma = Fraction(0)
    if gamma_active(ap):
        g = oracle(Hb(0, 0), ONE)
        if g.degree > 0:
            raise MalformedOracle(f"H[0,0].1 = {g} is not a constant")
        gamma = g.coeff(0)
    kappa = None
    if kappa_active(ap):
        if kappa_window is None:
            raise ConfigurationError("kappa recovery needs an index window")
        kappa = {}
        for i in range(kappa_window[0], kappa_window[1] + 1):
            g = oracle(Hb(i, 1), ONE)
            if g.degree > 0:
                raise MalformedOracle(f"H[{i},1].1 = {g} is not a constant")
            kappa[i] = g.coeff(0)
    try:
        return ModuleParams(lam, alpha, beta, gamma, kappa, kappa_window if kappa is not None else None)
    except ConfigurationError as exc:
        raise MalformedOracle(str(exc)) from exc


# -- live parameters -------------------------------------------------------


def live_parameters(
    ap: AlgebraParams,
    mp: ModuleParams,
    w: CheckWindow,
    kappa_indices: Iterable[int] = range(-3, 4),
) -> dict[str, bool]:
    """Which parameters change some ``x . t^k`` in the window when bumped by 1.

    Inactive parameters are perturbed too (the module is built non-strictly),
    so a ``False`` entry means the action never sees that parameter.
    """
    idx = list(kappa_indices)
    window = mp.kappa_window or (min(idx), max(idx))
    window = (min(window[0], *idx), max(window[1], *idx))
    base = ModuleParams(mp.lam, mp.alpha, mp.beta, mp.gamma, mp.kappa, window)
    probes = [(x, Polynomial.monomial(k)) for x in w.basis_vectors() for k in range(w.deg_max + 1)]
    probes += [(Hb(i, m), ONE) for i in idx for m in range(w.m_max + 1)]

    def outputs(q: ModuleParams):
        M = RankOneModule(ap, q, strict=False)
        return [M.act_basis(x, f) for x, f in probes]

    ref = outputs(base)
    bump = lambda v: v + 1 if v != -1 else v + 2
    variants = {
        "lambda": ModuleParams(bump(mp.lam), mp.alpha, mp.beta, mp.gamma, mp.kappa, window),
        "alpha": ModuleParams(mp.lam, mp.alpha + 1, mp.beta, mp.gamma, mp.kappa, window),
        "beta": ModuleParams(mp.lam, mp.alpha, mp.beta + 1, mp.gamma, mp.kappa, window),
        "gamma": ModuleParams(mp.lam, mp.alpha, mp.beta, mp.gamma + 1, mp.kappa, window),
    }
    for i in idx:
        k = dict(mp.kappa)
        k[i] = k.get(i, 0) + 1
        variants[f"kappa[{i}]"] = ModuleParams(mp.lam, mp.alpha, mp.beta, mp.gamma, k, window)
    return {name: outputs(q) != ref for name, q in variants.items()}


def live_count(live: dict[str, bool]) -> int | float:
    """Number of live parameters; ``inf`` when every probed kappa index is live."""
    kap = [v for k, v in live.items() if k.startswith("kappa[")]
    n = sum(v for k, v in live.items() if not k.startswith("kappa["))
    if kap and all(kap):
        return float("inf")
    return n + sum(kap)


# -- generation closure ----------------------------------------------------


class _ElementEchelon:
    """Row echelon form for algebra elements, pivot = largest basis vector."""

    def __init__(self):
        self.rows: dict[BasisVector, AlgebraElement] = {}

    def reduce(self, x: AlgebraElement) -> AlgebraElement:
        acc = dict(x.items())
        while True:
            live = [v for v, c in acc.items() if c != 0 and v in self.rows]
            if not live:
                break
            v = max(live, key=BasisVector.sort_key)
            c = acc[v]
            for u, cu in self.rows[v].items():
                acc[u] = acc.get(u, Fraction(0)) - c * cu
        return AlgebraElement(acc)

    def insert(self, x: AlgebraElement) -> bool:
        y = self.reduce(x)
        if not y:
            return False
        piv = max(y, key=BasisVector.sort_key)
        self.rows[piv] = y * (1 / y.coeff(piv))
        return True

    def contains(self, x: AlgebraElement) -> bool:
        return not self.reduce(x)


def generation_closure(
    ap: AlgebraParams,
    gens: Sequence[BasisVector],
    targets: Sequence[BasisVector],
    depth_cap: int = 3,
    index_bound: int | None = None,
    height_bound: int | None = None,
    expect: dict[BasisVector, bool] | None = None,
) -> Report:
    """Which targets lie in the bracket closure of ``gens`` (bounded).

    Brackets are formed with a generator on one side (left-normed words
    span the generated subalgebra) up to ``depth_cap`` nested brackets.
    Results with support outside ``|i| <= index_bound, m <= height_bound``
    are dropped; membership found is a proof, absence is bounded evidence.
    With ``expect`` an entry passes when the outcome matches it.
    """
    ib = index_bound if index_bound is not None else max(abs(v.i) for v in list(gens) + list(targets))
    hb = height_bound if height_bound is not None else max(v.m for v in list(gens) + list(targets))
    inside = lambda x: all(abs(v.i) <= ib and v.m <= hb for v in x)
    ech = _ElementEchelon()
    frontier = []
    for g in gens:
        e = AlgebraElement.of(g)
        if inside(e) and ech.insert(e):
            frontier.append(e)
    for _ in range(depth_cap):
        new = []
        for x in frontier:
            for g in gens:
                y = bracket(ap, g, x)
                if y and inside(y) and ech.insert(y):
                    new.append(y)
        if not new:
            break
        frontier = new
    rep = Report(
        "generation_closure",
        meta={
            "algebra": ap.to_json(),
            "generators": [str(g) for g in gens],
            "depth_cap": depth_cap,
            "index_bound": ib,
            "height_bound": hb,
            "span_dimension": len(ech.rows),
        },
    )
    for t in targets:
        found = ech.contains(AlgebraElement.of(t))
        want = None if expect is None else expect.get(t)
        ok = want is None or want == found
        note = f"{PROOF}: reachable" if found else f"{BOUNDED}: not found"
        rep.entries.append(Entry("reachable" if want is None or want else "not reachable", str(t), ok, 1, note=note))
    return rep


def closure_reaches(rep: Report) -> dict[str, bool]:
    return {e.inputs: e.note.startswith(PROOF) for e in rep.entries}
