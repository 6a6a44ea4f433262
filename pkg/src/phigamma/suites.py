"""Seeded verification suites.

Each suite draws its instances from a named numpy generator, counts passes
and failures per identity, and keeps a few replayable artifacts for the
failures.  Reports are plain JSON values, so re-running a suite with the same
configuration produces byte-identical output.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import colmez, induction
from .errors import DegenerateModule, PhiGammaError
from .field import GF, field_of_degree
from .linalg import SMat, fq_inv
from .pgmod.iso import recover_weil_params, reduced, test_isomorphic
from .pgmod.lattice import compute_dnat, lattice_psi_image, standard_lattice
from .pgmod.module import (
    det_module,
    direct_sum,
    disguise,
    induced_from_params,
    rank1_from_character,
)
from .pgmod.psitophi import PsiGammaModule, psi_data, psitophi_reconstruct
from .pgmod.reduction import classify_rank1, regularize_frobenius
from .series import PadicUnit, SeriesRing, padic_digits_needed
from .twisted import TwistedPoly, bracket, newton_slopes, split_at_breakpoint
from .weil import (
    SmoothCharacter,
    WeilParams,
    all_primitive_hs,
    canonicalize,
    predicted_determinant,
    primitive_hs,
)

MAX_ARTIFACTS = 5


def prng_info() -> dict:
    return {"name": "numpy.random.PCG64", "numpy": np.__version__}


def make_rng(seed: int, *stream: int) -> np.random.Generator:
    """A PCG64 generator for ``seed``; ``stream`` selects independent substreams."""
    return np.random.Generator(np.random.PCG64([int(seed), *map(int, stream)]))


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    trials: int | None = None  # overrides the per-suite instance count
    primes: tuple = (2, 3, 5)
    prec: int = 60
    n_max: int = 3
    seeds: int = 3  # disguise seeds per corpus entry
    lambdas: int = 3  # Λ values per corpus entry

    def count(self, default: int) -> int:
        return default if self.trials is None else self.trials

    def to_json(self):
        return {
            "seed": self.seed,
            "trials": self.trials,
            "primes": list(self.primes),
            "prec": self.prec,
            "n_max": self.n_max,
            "seeds": self.seeds,
            "lambdas": self.lambdas,
        }


@dataclass
class Check:
    passed: int = 0
    failed: int = 0
    failures: list = field(default_factory=list)

    def to_json(self):
        return {"passed": self.passed, "failed": self.failed, "failures": self.failures}


@dataclass
class SuiteReport:
    suite: str
    config: SuiteConfig
    checks: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)
    elapsed: float = 0.0

    def record(self, name: str, ok: bool, artifact: Callable | dict | None = None):
        c = self.checks.setdefault(name, Check())
        if ok:
            c.passed += 1
            return
        c.failed += 1
        if len(c.failures) < MAX_ARTIFACTS:
            art = artifact() if callable(artifact) else artifact
            c.failures.append(art if art is not None else {})

    def guard(self, name: str, fn: Callable[[], bool], artifact=None):
        """Record fn()'s verdict; a library error counts as a failure."""
        try:
            ok = bool(fn())
            err = None
        except PhiGammaError as exc:
            ok, err = False, f"{type(exc).__name__}: {exc}"
        if ok:
            self.record(name, True)
            return

        def art():
            base = artifact() if callable(artifact) else dict(artifact or {})
            if err:
                base["error"] = err
            return base

        self.record(name, False, art)

    @property
    def ok(self) -> bool:
        return bool(self.checks) and all(c.failed == 0 for c in self.checks.values())

    def to_json(self, timing: bool = False):
        out = {
            "suite": self.suite,
            "ok": self.ok,
            "config": self.config.to_json(),
            "prng": prng_info(),
            "checks": {k: v.to_json() for k, v in sorted(self.checks.items())},
            "notes": self.notes,
        }
        if timing:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out


def _series_json(x):
    from .serialize import series_to_json

    return series_to_json(x)


def _module_json(D):
    from .serialize import module_to_json

    return module_to_json(D)


def _elem_code(F: GF, rng, nonzero=False) -> int:
    return F.random_code(rng, nonzero=nonzero)


# ---------------------------------------------------------------------------
# ψ, φ and Γ on E((X))


def suite_psi(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("psi", cfg)
    for p in cfg.primes:
        R = SeriesRing(field_of_degree(p, 1), 1)
        for r in range(p):
            for m in range(-20, 21):
                k = p * m + r
                x = R.monomial(1, k, k + 20 * p)
                want = R.monomial((-1) ** r, m, m + 20)

                def check(x=x, want=want, m=m):
                    y = x.psi()
                    return y.val == m and y.prec == want.prec and (y - want).is_zero()

                rep.guard("psi_monomial", check, {"p": p, "exponent": k})

    N = cfg.prec
    count = cfg.count(200)
    for idx, p in enumerate(cfg.primes):
        F = field_of_degree(p, 2)
        R = SeriesRing(F, 1)
        M = padic_digits_needed(p, 4 * p * N)
        rng = make_rng(cfg.seed, 1, idx)
        for t in range(count):
            y = R.random(rng, int(rng.integers(-3, 4)), N)
            alpha = R.random(rng, int(rng.integers(-3, 4)), N)
            a = PadicUnit(_unit(rng, p, M), M, p)
            b = PadicUnit(_unit(rng, p, M), M, p)

            def art(y=y, alpha=alpha, a=a, b=b, t=t):
                return {
                    "p": p,
                    "instance": t,
                    "y": _series_json(y),
                    "alpha": _series_json(alpha),
                    "a": a.residue,
                    "b": b.residue,
                    "padic_prec": M,
                }

            rep.guard("psi_phi_is_identity", lambda y=y: _eq(y.phi().psi(), y), art)
            rep.guard(
                "psi_projection_formula",
                lambda y=y, al=alpha: _eq((al * y.phi()).psi(), al.psi() * y),
                art,
            )
            rep.guard(
                "psi_frobenius_linear",
                lambda y=y, al=alpha: _eq((al.phi() * y).psi(), al * y.psi()),
                art,
            )
            rep.guard(
                "gamma_multiplicative",
                lambda y=y, a=a, b=b: _eq(y.gamma(b).gamma(a), y.gamma(a * b)),
                art,
            )
            rep.guard(
                "gamma_commutes_with_phi",
                lambda y=y, a=a: _eq(y.phi().gamma(a), y.gamma(a).phi()),
                art,
            )
    return rep


def _unit(rng, p: int, M: int) -> int:
    while True:
        u = int(rng.integers(1, p**M))
        if u % p:
            return u


def _eq(x, y, floor: int = 1) -> bool:
    """Equal at the common precision, with at least ``floor`` certified digits."""
    d = x - y
    return d.is_zero() and d.prec - min(x.val, y.val) >= floor


# ---------------------------------------------------------------------------
# Frobenius regularization


def _random_gl(R: SeriesRing, d: int, rng, prec: int) -> SMat:
    F = R.field
    while True:
        C = rng.integers(0, F.q, size=(d, d)).astype(np.int64)
        if fq_inv(F, C) is not None:
            break
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            codes = rng.integers(0, F.q, size=prec).astype(np.int64)
            codes[0] = C[i, j]
            row.append(R.from_codes(codes, 0, prec))
        rows.append(row)
    return SMat(R, rows)


def suite_regularize(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("regularize", cfg)
    L = 40
    F = field_of_degree(3, 2)
    R = SeriesRing(F, 1)
    rng = make_rng(cfg.seed, 3)
    for t in range(cfg.count(100)):
        d = int(rng.integers(1, 4))
        P = _random_gl(R, d, rng, L)

        def check(P=P):
            M, P0 = regularize_frobenius(P, L)
            conj = (M.inverse() @ P @ M.phi()).truncate(L)
            return conj.prec >= L and (conj - SMat.from_codes(R, P0, L)).is_zero()

        rep.guard("conjugate_is_constant", check, lambda P=P, t=t: {"instance": t, "P": _smat(P)})

    R3 = SeriesRing(field_of_degree(3, 1), 1)
    P = SMat(R3, [[R3.from_ints([2, 2], 0, L)]])

    def worked():
        M, P0 = regularize_frobenius(P, L)
        want = R3.one(L)
        k = 1
        while k < L:
            want = want * (R3.one(L) + R3.monomial(1, k, L))
            k *= 3
        return int(P0[0, 0]) == R3.field.from_int(2) and (M[0, 0] - want.truncate(L)).is_zero()

    rep.guard("worked_rank_one_case", worked, {"P": "2(1+X) over F_3", "prec": L})
    return rep


def _smat(M):
    from .serialize import smat_to_json

    return smat_to_json(M)


# ---------------------------------------------------------------------------
# Newton polygons and factorization


def _brute_hull(points):
    """Vertices of the lower convex hull, by testing every point against every chord."""
    verts = []
    for i, (x, y) in enumerate(points):
        below = True
        for j, (x1, y1) in enumerate(points):
            for k, (x2, y2) in enumerate(points):
                if x1 < x < x2:
                    on_chord = y1 + (y2 - y1) * (x - x1) / (x2 - x1)
                    if y >= on_chord:
                        below = False
        if below:
            verts.append(i)
    return verts


def _random_twisted(R: SeriesRing, rng, degree: int, prec: int, vals=None) -> TwistedPoly:
    coeffs = []
    for k in range(degree + 1):
        v = vals[k] if vals is not None else int(rng.integers(-6, 7))
        if v is None or (vals is None and 0 < k < degree and rng.random() < 0.25):
            coeffs.append(R.zero(prec + 200))
        else:
            coeffs.append(R.random(rng, v, v + prec))
    return TwistedPoly(R, coeffs)


def suite_slopes(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("slopes", cfg)
    count = cfg.count(200)
    for idx, p in enumerate(cfg.primes):
        R = SeriesRing(field_of_degree(p, 2), 1)
        rng = make_rng(cfg.seed, 4, idx)
        for t in range(count):
            deg = int(rng.integers(1, 5))
            P = _random_twisted(R, rng, deg, 30)

            def check(P=P):
                NP = newton_slopes(P)
                pts = [(bracket(k, p), Fraction(c.val)) for k, c in enumerate(P.coeffs) if not c.is_zero()]
                ks = [k for k, c in enumerate(P.coeffs) if not c.is_zero()]
                verts = [ks[i] for i in _brute_hull(pts)]
                by_k = dict(zip(ks, pts))
                want = [
                    -(by_k[b][1] - by_k[a][1]) / (by_k[b][0] - by_k[a][0]) for a, b in zip(verts, verts[1:])
                ]
                return list(NP.vertices) == verts and [s for s, _ in NP.slopes] == want

            rep.guard("newton_matches_brute_hull", check, lambda P=P, t=t: _twisted_art(p, t, P))

    count = cfg.count(100)
    for idx, p in enumerate(cfg.primes):
        R = SeriesRing(field_of_degree(p, 2), 1)
        rng = make_rng(cfg.seed, 5, idx)
        for t in range(count):
            deg = int(rng.integers(1, 4))
            top = int(rng.integers(-8, 9))
            vals = []
            for k in range(deg + 1):
                line = Fraction(top) * bracket(k, p) / bracket(deg, p)
                vals.append(0 if k == 0 else top if k == deg else int(np.ceil(float(line))) + 1 + int(rng.integers(0, 3)))
            P = _random_twisted(R, rng, deg, 40, vals)
            v = int(rng.integers(-4, 5))
            y = R.random(rng, v, v + 40)

            def check(P=P, y=y, v=v):
                s0 = newton_slopes(P)
                s1 = newton_slopes(P.right_scale(y))
                if not (s0.is_isoclinic and s1.is_isoclinic):
                    return False
                return s1.slopes[0][0] == s0.slopes[0][0] - (p - 1) * v

            rep.guard("right_scale_shift", check, lambda P=P, y=y, t=t: {**_twisted_art(p, t, P), "y": _series_json(y)})

    count = cfg.count(100)
    for idx, p in enumerate(cfg.primes):
        R = SeriesRing(field_of_degree(p, 2), 1)
        rng = make_rng(cfg.seed, 6, idx)
        done = 0
        while done < count:
            deg = int(rng.integers(2, 5))
            P = _random_twisted(R, rng, deg, 60)
            try:
                if len(newton_slopes(P).vertices) < 3:
                    continue
            except PhiGammaError:
                continue
            done += 1

            def check(P=P):
                P1, P2 = split_at_breakpoint(P)
                prod = P1 * P2
                if len(prod.coeffs) != len(P.coeffs):
                    return False
                return all(
                    min(c.prec, d.prec) >= 40 and (c - d).truncate(40).is_zero()
                    for c, d in zip(prod.coeffs, P.coeffs)
                )

            rep.guard("split_remultiplies", check, lambda P=P, t=done: _twisted_art(p, t, P))
    return rep


def _twisted_art(p, t, P):
    return {"p": p, "instance": t, "coeffs": [_series_json(c) for c in P.coeffs]}


# ---------------------------------------------------------------------------
# rank one


def _random_character(F: GF, rng) -> SmoothCharacter:
    at_p = F.elem(F.random_code(rng, nonzero=True))
    return SmoothCharacter.from_omega_power(at_p, int(rng.integers(0, F.p - 1)))


def suite_rank1(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("rank1", cfg)
    rng = make_rng(cfg.seed, 7)
    fields = [field_of_degree(3, 1), field_of_degree(3, 2)]
    for t in range(cfg.count(200)):
        F = fields[t % 2]
        delta = _random_character(F, rng)
        s = int(rng.integers(0, 2**31))

        def check(delta=delta, s=s):
            return classify_rank1(disguise(rank1_from_character(delta, 40), s)) == delta

        rep.guard(
            "classify_disguised_rank1",
            check,
            lambda delta=delta, s=s, t=t: {"instance": t, "delta": delta.to_json(), "field_deg": delta.field.m, "disguise_seed": s},
        )
    return rep


# ---------------------------------------------------------------------------
# the induced corpus


def corpus_lambdas(p: int, count: int) -> list:
    """The first ``count`` nonzero elements of F_{p^2}, in code order."""
    F = field_of_degree(p, 2)
    return [F.elem(c) for c in range(1, F.q)][:count]


def corpus(cfg: SuiteConfig, canonical_only: bool = False):
    """(p, n, h, Λ) over the configured primes, ranks and Λ values."""
    for p in cfg.primes:
        for n in range(1, cfg.n_max + 1):
            hs = primitive_hs(n, p) if canonical_only else all_primitive_hs(n, p)
            for h in hs:
                for Lam in corpus_lambdas(p, cfg.lambdas):
                    yield p, n, h, Lam


def _entry_art(p, n, h, Lam, seed=None, module=None):
    art = {"p": p, "n": n, "h": h, "Lambda": Lam.coords(), "field_deg": Lam.field.m, "prec": 40}
    if seed is not None:
        art["disguise_seed"] = seed
    if module is not None:
        art["module"] = _module_json(module)
    return art


def suite_weil(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("weil", cfg)
    for p, n, h, Lam in corpus(cfg):
        want = canonicalize(WeilParams(n, h, Lam))
        for s in range(cfg.seeds):
            D = disguise(induced_from_params(n, h, Lam, 40), s)
            rep.guard(
                "recover_disguised_induced",
                lambda D=D: recover_weil_params(D) == want,
                lambda D=D, h=h, s=s, Lam=Lam: _entry_art(p, n, h, Lam, s, D),
            )
    return rep


def suite_det(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("det", cfg)
    for p, n, h, Lam in corpus(cfg):
        want = predicted_determinant(WeilParams(n, h, Lam))
        D = induced_from_params(n, h, Lam, 40)
        rep.guard(
            "det_of_induced",
            lambda D=D: classify_rank1(det_module(D)) == want,
            lambda h=h, Lam=Lam: _entry_art(p, n, h, Lam),
        )
        Dd = disguise(D, cfg.seed)
        rep.guard(
            "det_of_disguised",
            lambda Dd=Dd: classify_rank1(det_module(Dd)) == want,
            lambda h=h, Lam=Lam: _entry_art(p, n, h, Lam, cfg.seed),
        )
    return rep


def suite_dnat(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("dnat", cfg)
    rng = make_rng(cfg.seed, 8)
    for t in range(cfg.count(60)):
        p = cfg.primes[t % len(cfg.primes)]
        delta = _random_character(field_of_degree(p, 1 + t % 2), rng)
        D = rank1_from_character(delta, 40)

        def one_step(D=D):
            L, it = compute_dnat(D)
            return it == 1 and L == standard_lattice(D.ring, 1)

        rep.guard("rank1_one_step", one_step, lambda delta=delta, t=t: {"instance": t, "delta": delta.to_json()})

    if 3 in cfg.primes:
        for Lam in corpus_lambdas(3, cfg.lambdas):
            for s in range(cfg.seeds):
                D = disguise(induced_from_params(2, 1, Lam, 40), s)
                std = standard_lattice(D.ring, 2)

                def stable(D=D, std=std):
                    L, _ = compute_dnat(D, std)
                    if lattice_psi_image(D, L) != L:
                        return False
                    return all(compute_dnat(D, std.scaled(-k))[0] == L for k in (1, 2))

                rep.guard("induced_fixed_and_start_free", stable, lambda Lam=Lam, s=s: _entry_art(3, 2, 1, Lam, s))
    return rep


def degenerate_psi_module(p: int = 3) -> PsiGammaModule:
    """Two copies of the trivial character with ψ killing the second basis vector."""
    F = field_of_degree(p, 1)
    triv = rank1_from_character(SmoothCharacter.trivial(F), 20)
    M = psi_data(direct_sum(triv, triv))
    mats = []
    for P in M.psi_mats:
        Q = P.copy()
        for i in range(2):
            Q[i, 1] = M.ring.zero(P.prec)
        mats.append(Q)
    return PsiGammaModule(M.ring, mats, M.gamma)


def suite_psitophi(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("psitophi", cfg)
    for p, n, h, Lam in corpus(cfg):
        D = reduced(disguise(induced_from_params(n, h, Lam, 40), cfg.seed))

        def check(D=D):
            return test_isomorphic(psitophi_reconstruct(psi_data(D)), D)

        rep.guard("reconstruct_is_isomorphic", check, lambda h=h, n=n, Lam=Lam, p=p: _entry_art(p, n, h, Lam, cfg.seed))

    def degenerate():
        try:
            psitophi_reconstruct(degenerate_psi_module())
        except DegenerateModule:
            return True
        return False

    rep.guard("degenerate_raises", degenerate, {"module": "trivial + trivial, second ψ-column zeroed", "p": 3})
    return rep


# ---------------------------------------------------------------------------
# Borel action on ψ-towers


def _random_unit_fraction(rng, p: int) -> Fraction:
    while True:
        num, den = int(rng.integers(1, 4 * p)), int(rng.integers(1, 4))
        if num % p and den % p:
            return Fraction(int(rng.choice([-1, 1])) * num, den)


def _random_generator(rng, p: int) -> colmez.BorelElem:
    kind = int(rng.integers(0, 4))
    if kind == 0:
        return colmez.BorelElem.central(_random_unit_fraction(rng, p) * Fraction(p) ** int(rng.integers(-1, 2)), p)
    if kind == 1:
        return colmez.BorelElem.unipotent(Fraction(int(rng.integers(-20, 21)), p ** int(rng.integers(0, 3))), p)
    if kind == 2:
        return colmez.BorelElem.lower_diag(Fraction(p) ** int(rng.integers(-1, 2)), p)
    return colmez.BorelElem.lower_diag(_random_unit_fraction(rng, p), p)


def _random_word(rng, p: int, max_len: int = 3) -> list:
    return [_random_generator(rng, p) for _ in range(int(rng.integers(1, max_len + 1)))]


def _same_tower(a, b, floor: int = 8) -> bool:
    v = colmez.tower_equal(a, b)
    return v.equal and v.prec >= floor


def _same_column(x: SMat, y: SMat, floor: int = 8) -> bool:
    prec = min(x.prec, y.prec)
    return prec >= floor and (x.truncate(prec) - y.truncate(prec)).is_zero()


def borel_setup(p: int, prec: int = 60):
    """The reduced module of ind(ω_2) with its determinant character."""
    Lam = corpus_lambdas(p, 1)[0]
    D = reduced(induced_from_params(2, 1, Lam, prec))
    return D, classify_rank1(det_module(D))


def _random_tower(D, chi, rng, top: int, prec: int):
    R = D.ring
    entry = SMat(R, [[R.random(rng, 0, prec, unit=False)] for _ in range(D.d)])
    return colmez.tower_seed(D, entry, top, chi)


def suite_borel(cfg: SuiteConfig) -> SuiteReport:
    rep = SuiteReport("borel", cfg)
    top, N = 6, cfg.prec
    count = cfg.count(100)
    for idx, p in enumerate(cfg.primes):
        D, chi = borel_setup(p, N)
        rng = make_rng(cfg.seed, 10, idx)
        for t in range(count):
            y = _random_tower(D, chi, rng, top, N)
            w1, w2 = _random_word(rng, p), _random_word(rng, p)
            z1 = Fraction(int(rng.integers(-30, 31)), p ** int(rng.integers(0, 3)))
            z2 = Fraction(int(rng.integers(-30, 31)), p ** int(rng.integers(0, 3)))
            c = _random_unit_fraction(rng, p) * Fraction(p) ** int(rng.integers(-1, 2))
            words = ";".join(_word_text(w) for w in (w1, w2))

            def art(y=y, words=words, z1=z1, z2=z2, c=c, t=t):
                return {
                    "p": p,
                    "instance": t,
                    "module": {"n": 2, "h": 1, "Lambda": corpus_lambdas(p, 1)[0].coords(), "prec": N, "reduced": True},
                    "tower": y.to_json(),
                    "words": words,
                    "z": [str(z1), str(z2)],
                    "central": str(c),
                }

            rep.guard(
                "composition_law",
                lambda y=y, w1=w1, w2=w2: _same_tower(
                    colmez.act_word(w1, colmez.act_word(w2, y)),
                    colmez.borel_act(colmez.word_product(w1 + w2, p), y),
                ),
                art,
            )
            rep.guard(
                "unipotent_additivity",
                lambda y=y, z1=z1, z2=z2: _same_tower(
                    colmez.act_unipotent(z1, colmez.act_unipotent(z2, y)), colmez.act_unipotent(z1 + z2, y)
                ),
                art,
            )

            def j_free(y=y, z=z1):
                # each ψ divides the precision by p, so use the highest index
                # that still leaves room for j + 1
                v = -colmez._val(z, p) if z else 0
                i = top - 1
                j = max(0, v - i)
                return _same_column(
                    colmez.unipotent_entry(y, z, i, j), colmez.unipotent_entry(y, z, i, j + 1), floor=1
                )

            rep.guard("j_independence", j_free, art)

            def psi_consistent(y=y, z=z2):
                v = -colmez._val(z, p) if z else 0
                acted = colmez.act_unipotent(z, y)
                return all(
                    _same_column(colmez.unipotent_entry(y, z, i, 0), acted.at(i), floor=1)
                    for i in range(max(v, top - 2), top)
                )

            rep.guard("psi_consistency", psi_consistent, art)

            def conjugation(y=y, z=z1):
                Dp = colmez.BorelElem.lower_diag(p, p)
                zp = (Dp @ colmez.BorelElem.unipotent(z, p) @ Dp.inverse()).b
                lhs = colmez.act_diag_p(1, colmez.act_unipotent(z, y))
                rhs = colmez.act_unipotent(zp, colmez.act_diag_p(1, y))
                return _same_tower(lhs, rhs)

            rep.guard("conjugation_relation", conjugation, art)

            def central(y=y, c=c):
                acted = colmez.borel_act(colmez.BorelElem.central(c, p), y)
                return acted.top == y.top and _same_column(acted.entry, y.entry.scale(chi(c).inverse()))

            rep.guard("central_character", central, art)
    return rep


def _word_text(word) -> str:
    out = []
    for g in word:
        if g.a == g.d and g.b == 0:
            out.append(f"z({g.a})")
        elif g.a == 1 and g.d == 1:
            out.append(f"u({g.b})")
        else:
            out.append(f"d({g.d})")
    return ";".join(out)


# ---------------------------------------------------------------------------
# compact induction


def random_sigma(p: int, rng, deg: int = 2) -> induction.InducedData:
    F = field_of_degree(p, deg)
    s1 = SmoothCharacter.from_omega_power(F.elem(F.random_code(rng, nonzero=True)), int(rng.integers(0, p - 1)))
    s2 = SmoothCharacter.from_omega_power(F.one, int(rng.integers(0, p - 1)))
    return induction.InducedData(s1, s2)


def _random_borel(rng, p: int, plus: bool = False) -> colmez.BorelElem:
    if plus:
        a = _random_unit_fraction(rng, p) * Fraction(p) ** int(rng.integers(0, 4))
        b = Fraction(int(rng.integers(-30, 31)), int(rng.choice([1, 2, 4]) if p != 2 else rng.choice([1, 3, 5])))
        return colmez.BorelElem(a, b, _random_unit_fraction(rng, p), p)
    a = _random_unit_fraction(rng, p) * Fraction(p) ** int(rng.integers(-3, 4))
    d = _random_unit_fraction(rng, p) * Fraction(p) ** int(rng.integers(-3, 4))
    b = Fraction(int(rng.integers(-50, 51)), p ** int(rng.integers(0, 4))) * _random_unit_fraction(rng, p)
    return colmez.BorelElem(a, b, d, p)


def _random_induction(sigma, rng, size: int | None = None, plus: bool = False, levels=(0, -1, -2)):
    p, F = sigma.p, sigma.field
    size = size or int(rng.integers(1, 5))
    coeffs = {}
    for _ in range(size):
        delta = int(rng.choice(levels)) if plus else int(rng.integers(-3, 3))
        width = p ** max(-delta, 0) if plus else p ** int(rng.integers(0, 3))
        idx = induction.CosetIndex(delta, Fraction(int(rng.integers(0, width)), width))
        coeffs[idx] = F.random_code(rng, nonzero=True)
    return induction.InductionElement(sigma, coeffs)


def _balanced(y: induction.InductionElement) -> induction.InductionElement:
    """Adjust one coefficient per level so that every level sums to zero."""
    F = y.field
    out = dict(y.coeffs)
    by_level: dict = {}
    for k in sorted(out):
        by_level.setdefault(k.delta, []).append(k)
    for keys in by_level.values():
        total = 0
        for k in keys[:-1]:
            total = F.add[total, out[k]]
        out[keys[-1]] = int(F.neg[total])
    return induction.InductionElement(y.sigma, out)


def _plus_cosets(p: int, levels) -> list:
    return [induction.CosetIndex(d, Fraction(i, p**-d)) for d in levels for i in range(p**-d)]


def _elem_art(sigma, f, **extra):
    return {"p": sigma.p, "sigma": _sigma_json(sigma), "element": f.to_json(), **extra}


def _sigma_json(sigma):
    return {
        "field_deg": sigma.field.m,
        "sigma1": sigma.sigma1.to_json(),
        "sigma2": sigma.sigma2.to_json(),
    }


def _x_power(f, k: int):
    for _ in range(k):
        f = induction.apply_X(f)
    return f


def suite_induction(cfg: SuiteConfig, sigma: induction.InducedData | None = None) -> SuiteReport:
    rep = SuiteReport("induction", cfg)
    primes = (sigma.p,) if sigma is not None else cfg.primes
    for idx, p in enumerate(primes):
        rng = make_rng(cfg.seed, 11, idx)
        sig = sigma or random_sigma(p, rng)
        F = sig.field

        for t in range(cfg.count(500)):
            m = _random_borel(rng, p)

            def replay(m=m):
                i1, kz, c = induction.coset_decompose(m, sig)
                i2, _, _ = induction.coset_decompose(m, sig)
                return i1 == i2 and i1.matrix(p) @ kz == m and induction.in_kz(kz) and c == sig(kz)

            rep.guard("coset_replay", replay, lambda m=m: {"p": p, "sigma": _sigma_json(sig), "m": m.to_json()})

        for t in range(cfg.count(100)):
            g, g2 = _random_borel(rng, p), _random_borel(rng, p)
            f = _random_induction(sig, rng)
            art = lambda f=f, g=g, g2=g2: _elem_art(sig, f, g=g.to_json(), g2=g2.to_json())  # noqa: E731
            rep.guard(
                "s_equivariance",
                lambda f=f, g=g: induction.s_map(induction.act_induction(g, f)) == sig(g) * induction.s_map(f),
                art,
            )
            rep.guard(
                "action_composition",
                lambda f=f, g=g, g2=g2: induction.act_induction(g @ g2, f)
                == induction.act_induction(g, induction.act_induction(g2, f)),
                art,
            )
            rep.guard(
                "fx_relation",
                lambda f=f: induction.apply_F(induction.apply_X(f)) == _x_power(induction.apply_F(f), p),
                art,
            )
        for g in (induction.unipotent(p), induction.frobenius(p), colmez.BorelElem.central(p, p)):
            f = _random_induction(sig, rng)
            rep.guard(
                "s_equivariance",
                lambda f=f, g=g: induction.s_map(induction.act_induction(g, f)) == sig(g) * induction.s_map(f),
                lambda f=f, g=g: _elem_art(sig, f, g=g.to_json()),
            )

        # X-image criterion against the linear-algebra oracle
        if p in (2, 3):
            small = _plus_cosets(p, (0, -1) if p == 3 else (0, -1, -2))
            Fp = field_of_degree(p, 1)
            sig_p = induction.InducedData(
                SmoothCharacter.from_omega_power(Fp.one, 0), SmoothCharacter.from_omega_power(Fp.one, 0)
            )
            for vec in np.ndindex(*(p,) * len(small)):
                y = induction.InductionElement(sig_p, dict(zip(small, vec)))
                rep.guard(
                    "x_image_vs_bruteforce",
                    lambda y=y: induction.x_image_test(y).in_image == induction.x_image_bruteforce(y),
                    lambda y=y: _elem_art(sig_p, y),
                )
            for t in range(cfg.count(300)):
                y = _random_induction(sig, rng, int(rng.integers(1, 13)), plus=True)
                if t % 2:
                    y = _balanced(y)
                rep.guard(
                    "x_image_vs_bruteforce",
                    lambda y=y: induction.x_image_test(y).in_image == induction.x_image_bruteforce(y),
                    lambda y=y: _elem_art(sig, y),
                )

        for t in range(cfg.count(100)):
            y = _random_induction(sig, rng, int(rng.integers(1, 13)), plus=True)
            if t % 2:
                y = _balanced(y)
            art = lambda y=y: _elem_art(sig, y)  # noqa: E731
            rep.guard(
                "projection_kernel",
                lambda y=y: (not induction.mod_x_projection(y)) == induction.x_image_test(y).in_image,
                art,
            )
            rep.guard(
                "projection_kills_x_image",
                lambda y=y: not induction.mod_x_projection(induction.apply_X(y)),
                art,
            )

            def f_equivariant(y=y):
                lhs = induction.mod_x_projection(induction.apply_F(y))
                rhs = induction.mod_x_projection(y)
                rhs = [F.zero] + [sig.sigma1(p) * c for c in rhs] if rhs else []
                return lhs == rhs

            rep.guard("projection_f_equivariant", f_equivariant, art)
        for n in range(6):
            b = induction.InductionElement.basis(sig, 0, -n)
            rep.guard(
                "projection_of_basis",
                lambda b=b, n=n: induction.mod_x_projection(b) == [F.zero] * n + [F.one],
                lambda b=b: _elem_art(sig, b),
            )

        for t in range(cfg.count(200)):
            m = _random_borel(rng, p, plus=True)

            def witness(m=m):
                w = induction.af_generate_witness(m, sig)
                return induction.replay_witness(w, sig) == induction.InductionElement.of_matrix(sig, m)

            rep.guard("af_witness_replay", witness, lambda m=m: {"p": p, "sigma": _sigma_json(sig), "m": m.to_json()})
    return rep


# ---------------------------------------------------------------------------

SUITES = {
    "psi": suite_psi,
    "regularize": suite_regularize,
    "slopes": suite_slopes,
    "rank1": suite_rank1,
    "weil": suite_weil,
    "dnat": suite_dnat,
    "psitophi": suite_psitophi,
    "det": suite_det,
    "borel": suite_borel,
    "induction": suite_induction,
}


def run_suite(name: str, cfg: SuiteConfig) -> SuiteReport:
    try:
        fn = SUITES[name]
    except KeyError:
        from .errors import InputError

        raise InputError(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    t0 = time.perf_counter()
    rep = fn(cfg)
    rep.elapsed = time.perf_counter() - t0
    return rep
