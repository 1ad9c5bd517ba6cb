"""Rees algebras, blowup charts, overlaps, restriction maps and Cech complexes.

Chart ``i`` of the blowup of a center ``C`` (with ``f_i^P`` in ``C``) is the
subring ``R[C / f_i^P]`` of ``R[1/f_i]``.  When ``J^P`` is contained in ``C``
for ``J = (f_1..f_n)``, that ring is generated by the ratios
``t_j = f_j / f_i`` together with ``u_g = g / f_i^P`` for the center
generators ``g`` outside ``J^P``; it is presented as

    R[t, u] / ((f_i t_j - f_j, f_i^P u_g - g, relations of R) : f_i^oo).

Otherwise every center generator gets its own ``u_g`` and no ratios are
available.  The overlap of the charts in ``gamma`` is the localisation of
chart ``a = min(gamma)`` at the product of ``t_j`` for ``j`` in ``gamma - a``,
presented with one extra variable ``w``.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import PreconditionError, SkodaError
from .ideal import Ideal, eliminate_dicts, ideal_member, power_products, saturate_dicts
from .modules import ModuleMatrix, module_solve
from .ring import Poly, RingMap, RingPresentation, d_add, d_mul


def _fresh_names(taken: set, stems: Sequence[str]) -> list:
    out = []
    for stem in stems:
        name = stem
        i = 0
        while name in taken:
            i += 1
            name = f"{stem}_{i}"
        taken.add(name)
        out.append(name)
    return out


def _lift_terms(terms: dict, nvars_new: int) -> dict:
    pad = (0,) * (nvars_new - (len(next(iter(terms))) - 1)) if terms else ()
    return {m + pad: c for m, c in terms.items()}


def rees_presentation(I: Ideal) -> Ideal:
    """Defining ideal of the Rees algebra of ``I`` in ``base[T_1..T_m]``."""
    ring = I.ring
    gens = [g for g in I.gens]
    if not gens:
        raise PreconditionError("Rees algebra of the zero ideal")
    taken = set(ring.vars)
    Ts = _fresh_names(taken, [f"T{i + 1}" for i in range(len(gens))])
    (s,) = _fresh_names(taken, ["s"])
    big = RingPresentation(ring.field, [s] + list(ring.vars) + Ts, "grevlex")
    m = len(gens)
    nb = ring.nvars
    total = 1 + nb + m
    one = ring.field.one
    polys = []
    for i, g in enumerate(gens):
        T = [0] * (total + 1)
        T[1 + nb + i + 1] = 1
        sg = {(0, 1) + mm[1:] + (0,) * m: c for mm, c in g.terms.items()}
        polys.append(d_add({tuple(T): one}, sg, ring.p, -1))
    for r in ring.relations:
        polys.append({(0, 0) + mm[1:] + (0,) * m: c for mm, c in r.items()})
    kept = eliminate_dicts(big, polys, [s])
    target = RingPresentation(ring.field, list(ring.vars) + Ts, "grevlex",
                              [_lift_terms(r, nb + m) for r in ring.relations])
    return Ideal(target, [Poly(target, d) for d in kept])


class Patch:
    """A chart (one index) or an overlap (several indices) of a blowup model."""

    def __init__(self, index_set: tuple, ring: RingPresentation, base_map: RingMap, ratios,
                 center_images: list, inverses: dict, t_names: dict, u_names: dict, w_name: str | None):
        self.index_set = index_set
        self.anchor = index_set[0]
        self.ring = ring
        self.base_map = base_map
        self.ratios = ratios
        self.center_images = center_images
        self.inverses = inverses
        self.t_names = t_names
        self.u_names = u_names
        self.w_name = w_name

    def ratio(self, j: int) -> Poly:
        """Image of ``f_j / f_anchor``."""
        return self.ratios[j]

    def inverse(self, b: int) -> Poly:
        """Image of ``f_anchor / f_b`` for ``b`` in the index set."""
        return self.inverses[b]

    def to_json(self) -> dict:
        out = {"index_set": list(self.index_set), "ring": self.ring.descriptor(),
               "center_images": [str(g) for g in self.center_images]}
        if self.ratios is not None:
            out["ratios"] = [str(g) for g in self.ratios]
        return out


class BlowupModel:
    """Affine cover of a blowup by the charts of the ``f_i``, plus overlaps."""

    def __init__(self, base: RingPresentation, center_gens: list, chart_index_gens: list, power: int,
                 patches: dict, liftable: list):
        self.base = base
        self.center_gens = center_gens
        self.chart_index_gens = chart_index_gens
        self.power = power
        self.patches = patches
        self.liftable = liftable
        self._res: dict = {}

    @property
    def n(self) -> int:
        return len(self.chart_index_gens)

    @property
    def has_ratios(self) -> bool:
        return self.patches[(0,)].ratios is not None

    @property
    def charts(self) -> list:
        return [self.patches[(i,)] for i in range(self.n)]

    @property
    def overlaps(self) -> dict:
        return {g: p for g, p in self.patches.items() if len(g) > 1}

    def patch(self, gamma) -> Patch:
        gamma = tuple(sorted(gamma))
        if gamma not in self.patches:
            self.patches[gamma] = _build_overlap(self, gamma)
        return self.patches[gamma]

    def exceptional(self, i: int) -> Poly:
        """Generator of ``J O_{Y_i}`` (the image of ``f_i``)."""
        p = self.patches[(i,)]
        return p.base_map(self.chart_index_gens[i])

    def restriction(self, small, big) -> RingMap:
        small, big = tuple(sorted(small)), tuple(sorted(big))
        key = (small, big)
        if key not in self._res:
            self._res[key] = _restriction(self, self.patch(small), self.patch(big))
        return self._res[key]

    def to_json(self) -> dict:
        gammas = sorted(self.patches, key=lambda g: (len(g), g))
        return {
            "base": self.base.descriptor(),
            "center": [str(g) for g in self.center_gens],
            "chart_index_gens": [str(f) for f in self.chart_index_gens],
            "power": self.power,
            "charts": [dict(self.patches[(i,)].to_json(), exceptional=str(self.exceptional(i)))
                       for i in range(self.n)],
            "overlaps": [self.patches[g].to_json() for g in gammas if len(g) > 1],
            "restrictions": [
                {"from": list(s), "to": list(b), "images": [str(x) for x in self.restriction(s, b).images]}
                for b in gammas if len(b) > 1 for s in combinations(b, len(b) - 1)
            ],
        }


def _lift_over_powers(base: RingPresentation, f: list, P: int, g: Poly):
    """Coefficients ``c_a`` with ``g = sum c_a f^a`` (``|a| = P``), or None."""
    prods = power_products(f, P)
    seen = {}
    for a, m in prods:
        seen.setdefault(a, m)
    alphas = sorted(seen, reverse=True)
    M = ModuleMatrix(base, [[seen[a] for a in alphas]], 1, len(alphas))
    sol = module_solve(M, [g])
    if sol is None:
        return None
    return [(a, c) for a, c in zip(alphas, sol) if not c.is_zero()]


def build_blowup(base: RingPresentation, center_gens: Sequence, chart_index_gens: Sequence, power: int,
                 certificates: Sequence | None = None, require_certified: bool = True) -> BlowupModel:
    """Charts ``Y_i`` of the blowup of ``(center_gens)`` at ``f_i^power``.

    When ``require_certified`` is set, every center generator outside
    ``J^power`` must carry a closure certificate for ``J^power`` (one is
    searched for when not supplied), since otherwise the charts would not
    describe the blowup of the integral closure.
    """
    center = [base(g) if isinstance(g, str) else base.coerce(g) for g in center_gens]
    f = [base(g) if isinstance(g, str) else base.coerce(g) for g in chart_index_gens]
    if not f:
        raise PreconditionError("need at least one chart generator")
    if power < 1:
        raise PreconditionError("power must be >= 1")
    C = Ideal(base, center)
    for i, fi in enumerate(f):
        if not ideal_member(fi ** power, C):
            raise PreconditionError(f"f_{i + 1}^{power} is not in the center ideal")
    lifts = [_lift_over_powers(base, f, power, g) for g in center]
    J = Ideal(base, f)
    if require_certified:
        from .closure import certify_member, recheck
        for idx, (g, lf) in enumerate(zip(center, lifts)):
            if lf is not None:
                continue
            cert = certificates[idx] if certificates is not None else None
            if cert is not None:
                if not recheck(g, J, power, cert):
                    raise PreconditionError(f"certificate for center generator {g} does not re-verify")
            elif certify_member(g, J, power) is None:
                raise PreconditionError(f"center generator {g} has no closure certificate")
    all_lift = all(_lift_over_powers(base, f, power, fi * fj ** (power - 1)) is not None
                   for fi in f for fj in f)
    patches = {}
    for i in range(len(f)):
        patches[(i,)] = _build_chart(base, f, center, power, i, lifts, all_lift)
    model = BlowupModel(base, center, f, power, patches, lifts)
    if len(f) > 1:
        for gamma in combinations(range(len(f)), 2):
            model.patch(gamma)
    return model


def _build_chart(base, f, center, P, i, lifts, use_ratios) -> Patch:
    n = len(f)
    taken = set(base.vars)
    nb = base.nvars
    if use_ratios:
        t_idx = [j for j in range(n) if j != i]
        u_idx = [g for g, lf in enumerate(lifts) if lf is None]
    else:
        t_idx = []
        u_idx = list(range(len(center)))
    tn = dict(zip(t_idx, _fresh_names(taken, [f"t{j + 1}" for j in t_idx])))
    un = dict(zip(u_idx, _fresh_names(taken, [f"u{g + 1}" for g in u_idx])))
    vars = list(base.vars) + [tn[j] for j in t_idx] + [un[g] for g in u_idx]
    amb = RingPresentation(base.field, vars, "grevlex")
    nv = len(vars)
    one = base.field.one
    p = base.p

    def lift(poly: Poly) -> dict:
        return {m + (0,) * (nv - nb): c for m, c in poly.terms.items()}

    def var(k):
        m = [0] * (nv + 1)
        m[k + 1] = 1
        return {tuple(m): one}

    fi = lift(f[i])
    gens = []
    for j in t_idx:
        gens.append(d_add(d_mul(fi, var(vars.index(tn[j])), p), lift(f[j]), p, -1))
    fiP = lift(f[i] ** P)
    for g in u_idx:
        gens.append(d_add(d_mul(fiP, var(vars.index(un[g])), p), lift(center[g]), p, -1))
    gens += [{m + (0,) * (nv - nb): c for m, c in r.items()} for r in base.relations]
    rels = saturate_dicts(amb, gens, fi)
    ring = RingPresentation(base.field, vars, "grevlex", rels)
    base_map = RingMap(base, ring, [ring.var(v) for v in base.vars])
    if use_ratios:
        ratios = [ring.one() if j == i else ring.var(tn[j]) for j in range(n)]
    else:
        ratios = None
    images = []
    for g, lf in enumerate(lifts):
        if g in un:
            images.append(ring.var(un[g]))
        else:
            acc = ring.zero()
            for a, c in lf:
                term = base_map(c)
                for j, e in enumerate(a):
                    if e:
                        term = term * ratios[j] ** e
                acc = acc + term
            images.append(acc)
    return Patch((i,), ring, base_map, ratios, images, {i: ring.one()}, tn, un, None)


def _build_overlap(model: BlowupModel, gamma: tuple) -> Patch:
    a = gamma[0]
    chart = model.patches[(a,)]
    if chart.ratios is None:
        raise PreconditionError("overlaps need the ratio presentation (J^power inside the center)")
    cring = chart.ring
    taken = set(cring.vars)
    (w,) = _fresh_names(taken, ["w"])
    vars = list(cring.vars) + [w]
    nv = len(vars)
    one = cring.field.one
    p = cring.p
    rels = [{m + (0,): c for m, c in r.items()} for r in cring.relations]
    prod = {(0,) * (nv + 1): one}
    for j in gamma[1:]:
        prod = d_mul(prod, {m + (0,): c for m, c in chart.ratios[j].terms.items()}, p)
    wm = [0] * (nv + 1)
    wm[nv] = 1
    rels.append(d_add(d_mul(prod, {tuple(wm): one}, p), {(0,) * (nv + 1): one}, p, -1))
    ring = RingPresentation(cring.field, vars, "grevlex", rels)
    incl = RingMap(cring, ring, [ring.var(v) for v in cring.vars])
    base_map = RingMap(model.base, ring, [ring.var(v) for v in model.base.vars])
    ratios = [incl(r) for r in chart.ratios]
    images = [incl(g) for g in chart.center_images]
    wv = ring.var(w)
    inverses = {a: ring.one()}
    for b in gamma[1:]:
        inv = wv
        for l in gamma[1:]:
            if l != b:
                inv = inv * ratios[l]
        inverses[b] = inv
    return Patch(gamma, ring, base_map, ratios, images, inverses, chart.t_names, chart.u_names, w)


def _restriction(model: BlowupModel, src: Patch, dst: Patch) -> RingMap:
    if not set(src.index_set) <= set(dst.index_set):
        raise SkodaError("restriction needs nested index sets")
    P = model.power
    b = src.anchor
    images = []
    inv_b = dst.inverse(b)
    for v in src.ring.vars:
        if v in model.base.vars:
            images.append(dst.ring.var(v))
            continue
        j = next((j for j, name in src.t_names.items() if name == v), None)
        if j is not None:
            images.append(dst.ratio(j) * inv_b)
            continue
        g = next((g for g, name in src.u_names.items() if name == v), None)
        if g is not None:
            images.append(dst.center_images[g] * inv_b ** P)
            continue
        if v == src.w_name:
            img = dst.ring.one()
            for j in src.index_set[1:]:
                img = img * dst.ratio(b) * dst.inverse(j)
            images.append(img)
            continue
        raise SkodaError(f"unmapped chart variable {v}")
    return RingMap(src.ring, dst.ring, images)


class CechComplex:
    """Cech cochains ``C^p = sum over (p+1)-subsets`` of the patch rings."""

    def __init__(self, model: BlowupModel, max_degree: int | None = None):
        self.model = model
        self.max_degree = model.n - 1 if max_degree is None else max_degree

    def index_sets(self, p: int) -> list:
        if p < 0 or p > self.max_degree:
            return []
        return list(combinations(range(self.model.n), p + 1))

    def ring(self, gamma) -> RingPresentation:
        return self.model.patch(gamma).ring

    def base_map(self, gamma) -> RingMap:
        return self.model.patch(gamma).base_map

    def restriction(self, small, big) -> RingMap:
        if tuple(small) == tuple(big):
            p = self.model.patch(big)
            return RingMap(p.ring, p.ring, p.ring.gens())
        return self.model.restriction(small, big)

    def delta(self, p: int, cochain: dict) -> dict:
        """``(delta c)_big = sum_q (-1)^q res(c_{big - big_q})`` on scalar cochains."""
        out = {}
        for big in self.index_sets(p + 1):
            acc = self.ring(big).zero()
            hit = False
            for q in range(len(big)):
                small = big[:q] + big[q + 1:]
                if small in cochain:
                    img = self.restriction(small, big)(cochain[small])
                    acc = acc - img if q % 2 else acc + img
                    hit = True
            if hit:
                out[big] = acc
        return out

    def check_delta_squared(self) -> bool:
        for p in range(0, self.max_degree - 1):
            for gamma in self.index_sets(p):
                for v in self.ring(gamma).gens():
                    dd = self.delta(p + 1, self.delta(p, {gamma: v}))
                    if any(not e.is_zero() for e in dd.values()):
                        return False
        return True

    def to_json(self) -> dict:
        return {"degrees": [{"p": p, "index_sets": [list(g) for g in self.index_sets(p)]}
                            for p in range(self.max_degree + 1)]}


def cech_complex(model: BlowupModel) -> CechComplex:
    C = CechComplex(model)
    if not C.check_delta_squared():
        raise SkodaError("Cech differential does not square to zero")
    return C


def exceptional_power_membership(model: BlowupModel, h: Poly, m: int) -> list:
    """For each chart ``i``: is ``h`` in ``f_i^m * Gamma(Y_i)``?"""
    out = []
    for i in range(model.n):
        patch = model.patches[(i,)]
        fi = patch.base_map(model.chart_index_gens[i]) ** m
        M = ModuleMatrix(patch.ring, [[fi]], 1, 1)
        out.append(module_solve(M, [patch.base_map(h)]) is not None)
    return out


def integral_equation(h: Poly, f: Sequence[Poly], m: int, cert: dict):
    """Coefficients of an integral equation of ``h`` over ``(f)^m``.

    Returns ``(D, terms)`` with ``h^D = sum c * f^alpha * h^j`` over
    ``terms = [(j, alpha, c)]`` and ``|alpha| = m (D - j)``, or None.
    Power certificates give ``j = 0`` only; reduction certificates
    ``N`` give ``D = N + 1`` and ``0 <= j <= N``.
    """
    kind = cert.get("kind")
    if kind == "power":
        D, js = int(cert["s"]), [0]
    elif kind == "reduction":
        D = int(cert["N"]) + 1
        js = list(range(D))
    else:
        raise PreconditionError(f"no integral equation for certificate kind {kind!r}")
    base = h.ring
    f = list(f)
    cols, keys = [], []
    for j in js:
        seen = {}
        for a, mono in power_products(f, m * (D - j)):
            seen.setdefault(a, mono)
        for a in sorted(seen, reverse=True):
            cols.append(seen[a] * h ** j)
            keys.append((j, a))
    sol = module_solve(ModuleMatrix(base, [cols], 1, len(cols)), [h ** D])
    if sol is None:
        return None
    return D, [(j, a, c) for (j, a), c in zip(keys, sol) if not c.is_zero()]


def redundancy_check(model: BlowupModel, h: Poly, cert: dict) -> list:
    """Per chart: does ``h / f_i^P`` satisfy the certificate's monic equation?

    ``h`` must be one of the center generators, so that its quotient by
    ``f_i^P`` is an element of every chart.
    """
    if not model.has_ratios:
        raise PreconditionError("redundancy check needs the ratio presentation")
    idx = next((g for g, c in enumerate(model.center_gens) if c == h), None)
    if idx is None:
        raise PreconditionError(f"{h} is not a center generator")
    eq = integral_equation(h, model.chart_index_gens, model.power, cert)
    if eq is None:
        return [False] * model.n
    D, terms = eq
    out = []
    for patch in model.charts:
        X = patch.center_images[idx]
        acc = X ** D
        for j, a, c in terms:
            term = patch.base_map(c) * X ** j
            for l, e in enumerate(a):
                if e:
                    term = term * patch.ratio(l) ** e
            acc = acc - term
        out.append(acc.is_zero())
    return out
