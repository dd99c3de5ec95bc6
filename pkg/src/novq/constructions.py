"""Builders for induced, semidirect, dual and descendent structures.

Everything here is a pure constructor on exact structure constants.  None of
the builders verify their preconditions by default (checks cost more than the
construction); pass verify=True to run the relevant axiom checks first, which
is what the command line does.

The deformation parameter q may be a rational or the live polynomial
generator.  Over Q[q] it defaults to the generator itself; over Q it must be
given.  The secondary parameter p of the two-parameter family stays rational,
keeping the coefficient ring univariate.
"""

from fractions import Fraction

from .exactcore import LinMap, POLY, Scalar, Vector, qvar
from .structures import (
    BinOpTensor,
    CoOpTensor,
    Presentation,
    PresentationError,
    RepAdmDiff,
    RepNov,
    Space,
    check_axiom,
)


def _param(ring: str, x) -> Scalar:
    if isinstance(x, Scalar):
        if x.ring != ring:
            raise PresentationError("parameter ring does not match the structure ring")
        return x
    return Scalar.of(ring, Fraction(x))


def _qparam(ring: str, q) -> Scalar:
    if q is None:
        if ring != POLY:
            raise PresentationError("over Q the deformation parameter must be given")
        return qvar()
    return _param(ring, q)


def _names(n: int) -> tuple[str, ...]:
    return tuple(f"e{i + 1}" for i in range(n))


def _require(reports: dict) -> None:
    bad = [str(r) for r in reports.values() if not r.holds]
    if bad:
        raise PresentationError("precondition failed: " + "; ".join(bad))


def induce_novikov(dot: BinOpTensor, D: LinMap, Q: LinMap, p=1, q=None,
                   verify: bool = False) -> BinOpTensor:
    """Structure constants of a circ b = a . (pD + qQ)(b).

    p = 1 gives the one-parameter deformation family of the commutative
    product; Q = 0, q = 0 recovers the classical construction a . D(b).
    verify checks that (dot, D, Q) is an admissible quadruple.
    """
    ring = dot.ring
    if verify:
        pres = Presentation(ring=ring, space=Space(_names(dot.dim)),
                            binops={"dot": dot}, maps={"D": D, "Q": Q})
        _require({aid: check_axiom(aid, pres) for aid in ("COMM", "ASSOC", "DERIV", "ADMISS")})
    K = D.scale(_param(ring, p)) + Q.scale(_qparam(ring, q))
    n = dot.dim
    images = [K.column(j) for j in range(n)]
    grid = [[dot.apply(Vector.basis(ring, n, i), images[j]) for j in range(n)]
            for i in range(n)]
    return BinOpTensor.from_vectors(ring, grid)


def induce_nov_coalg(delta: CoOpTensor, Q: LinMap, D: LinMap, q=None,
                     verify: bool = False) -> CoOpTensor:
    """Constants of Delta_q = (id (x) (Q + qD)) delta."""
    ring = delta.ring
    if verify:
        pres = Presentation(ring=ring, space=Space(_names(delta.dim)),
                            coops={"delta": delta}, maps={"D": D, "Q": Q})
        _require({"CO_ADMISS": check_axiom("CO_ADMISS", pres)})
    K = Q + D.scale(_qparam(ring, q))
    images = [delta.image(i).apply_maps(None, K) for i in range(delta.dim)]
    return CoOpTensor.from_tensors(ring, images)


def semidirect_novikov(apres: Presentation, rep: RepNov, circ: str = "circ",
                       verify: bool = False) -> Presentation:
    """The semidirect Novikov product on A + V, A block first.

    (a+u) circ (b+v) = a circ b + l(a)v + r(b)u.
    """
    op = apres.binop(circ)
    if rep.ring != apres.ring:
        raise PresentationError("representation ring differs from the algebra ring")
    if rep.alg_dim != apres.dim:
        raise PresentationError("representation is over a different algebra dimension")
    if verify:
        _require({aid: check_axiom(aid, apres, {"circ": circ}, rep=rep)
                  for aid in ("REP_NOV_1", "REP_NOV_2", "REP_NOV_3", "REP_NOV_4")})
    na, nv = apres.dim, rep.dim
    n = na + nv
    z = Scalar.zero(apres.ring)
    c = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i in range(na):
        for j in range(na):
            for k in range(na):
                c[i][j][k] = op.entry(i, j, k)
    for i in range(na):
        for b in range(nv):
            for g in range(nv):
                c[i][na + b][na + g] = rep.l[i].rows[g][b]
                c[na + b][i][na + g] = rep.r[i].rows[g][b]
    return Presentation(ring=apres.ring, space=Space(apres.space.names + rep.names),
                        binops={circ: BinOpTensor(apres.ring, c)})


def semidirect_admdiff(apres: Presentation, rep: RepAdmDiff, dot: str = "dot",
                       D: str = "D", Q: str = "Q", verify: bool = False) -> Presentation:
    """The semidirect commutative differential structure on A + V.

    (a+u) . (b+v) = a . b + l(a)v + l(b)u, with maps D + alpha and Q + beta.
    """
    op = apres.binop(dot)
    dmap, qmap = apres.linmap(D), apres.linmap(Q)
    if rep.ring != apres.ring:
        raise PresentationError("representation ring differs from the algebra ring")
    if rep.alg_dim != apres.dim:
        raise PresentationError("representation is over a different algebra dimension")
    if verify:
        binds = {"dot": dot, "D": D, "Q": Q}
        _require({aid: check_axiom(aid, apres, binds, rep=rep)
                  for aid in ("REP_MOD", "REP_DIFF", "REP_ADM")})
    na, nv = apres.dim, rep.dim
    n = na + nv
    z = Scalar.zero(apres.ring)
    c = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i in range(na):
        for j in range(na):
            for k in range(na):
                c[i][j][k] = op.entry(i, j, k)
    for i in range(na):
        for b in range(nv):
            for g in range(nv):
                c[i][na + b][na + g] = rep.l[i].rows[g][b]
                c[na + b][i][na + g] = rep.l[i].rows[g][b]
    return Presentation(
        ring=apres.ring,
        space=Space(apres.space.names + rep.names),
        binops={dot: BinOpTensor(apres.ring, c)},
        maps={D: LinMap.block_diag(dmap, rep.alpha), Q: LinMap.block_diag(qmap, rep.beta)},
    )


def _toggle_prime(name: str) -> str:
    return name[:-1] if name.endswith("'") else name + "'"


def dual_rep_novikov(rep: RepNov) -> RepNov:
    """The dual module (V*, l* + r*, -r*).

    Operator families dualize with the sign convention
    <phi*(a) f, v> = -<f, phi(a) v>, so the matrices below are transposes
    with the signs worked in.
    """
    lstar = tuple(-(l + r).transpose() for l, r in zip(rep.l, rep.r))
    rstar = tuple(r.transpose() for r in rep.r)
    return RepNov(tuple(_toggle_prime(nm) for nm in rep.names), lstar, rstar)


def dual_rep_admdiff(rep: RepAdmDiff) -> RepAdmDiff:
    """The dual module (V*, -l*, beta^T, alpha^T); the two endomorphisms swap."""
    lstar = tuple(l.transpose() for l in rep.l)
    return RepAdmDiff(tuple(_toggle_prime(nm) for nm in rep.names), lstar,
                      rep.beta.transpose(), rep.alpha.transpose())


def induced_rep_q(rep: RepAdmDiff, D: LinMap, Q: LinMap, q=None,
                  verify: bool = False) -> RepNov:
    """Deform a differential module into a module over the induced product.

    l'(a) = l(a)(alpha + q beta) and r'(a) = l((D + qQ)a).
    """
    ring = rep.ring
    qs = _qparam(ring, q)
    if verify:
        pres = Presentation(ring=ring, space=Space(_names(rep.alg_dim)),
                            maps={"D": D, "Q": Q})
        _require({aid: check_axiom(aid, pres, rep=rep) for aid in ("REP_DIFF", "REP_ADM")})
    inner = rep.alpha + rep.beta.scale(qs)
    K = D + Q.scale(qs)
    lq = tuple(l @ inner for l in rep.l)
    rq = []
    for i in range(rep.alg_dim):
        acc = LinMap.zero(ring, rep.dim, rep.dim)
        for m in range(rep.alg_dim):
            coeff = K.rows[m][i]
            if not coeff.is_zero():
                acc = acc + rep.l[m].scale(coeff)
        rq.append(acc)
    return RepNov(rep.names, lq, tuple(rq))


def pre_novikov_from_zinbiel(diamond: BinOpTensor, D: LinMap, Q: LinMap, q=None,
                             verify: bool = False) -> tuple[BinOpTensor, BinOpTensor]:
    """The split pair (lhd, rhd) deforming a Zinbiel product.

    a lhd b = (D + qQ)(b) diamond a and a rhd b = a diamond (D + qQ)(b).
    """
    ring = diamond.ring
    if verify:
        pres = Presentation(ring=ring, space=Space(_names(diamond.dim)),
                            binops={"zin": diamond}, maps={"D": D, "Q": Q})
        _require({
            "ZINBIEL": check_axiom("ZINBIEL", pres),
            "DERIV": check_axiom("DERIV", pres, {"dot": "zin"}),
            "ZINB_ADMISS": check_axiom("ZINB_ADMISS", pres),
        })
    K = D + Q.scale(_qparam(ring, q))
    n = diamond.dim
    images = [K.column(j) for j in range(n)]
    basis = [Vector.basis(ring, n, i) for i in range(n)]
    lhd = [[diamond.apply(images[j], basis[i]) for j in range(n)] for i in range(n)]
    rhd = [[diamond.apply(basis[i], images[j]) for j in range(n)] for i in range(n)]
    return (BinOpTensor.from_vectors(ring, lhd), BinOpTensor.from_vectors(ring, rhd))


def descendent_novikov(lhd: BinOpTensor, rhd: BinOpTensor) -> BinOpTensor:
    """a circ b = a lhd b + a rhd b."""
    return lhd.plus(rhd)


def descendent_commdiff(diamond: BinOpTensor) -> BinOpTensor:
    """a . b = a diamond b + b diamond a."""
    return diamond.plus(diamond.opposite())


def star(circ: BinOpTensor) -> BinOpTensor:
    """a star b = a circ b + b circ a."""
    return circ.plus(circ.opposite())


def zinbiel_from_oop(T: LinMap, rep: RepAdmDiff) -> BinOpTensor:
    """u diamond v = l(T(u))v, for T a relative square-zero splitting operator.

    T must be a verified operator for rep (the Yang-Baxter module has the
    checker); this builder only assembles the product.
    """
    n = rep.dim
    ring = rep.ring
    z = Scalar.zero(ring)
    c = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for m in range(rep.alg_dim):
            w = T.rows[m][i]
            if w.is_zero():
                continue
            for j in range(n):
                for k in range(n):
                    c[i][j][k] = c[i][j][k] + w * rep.l[m].rows[k][j]
    return BinOpTensor(ring, c)


def pre_novikov_from_oop(T: LinMap, rep: RepNov) -> tuple[BinOpTensor, BinOpTensor]:
    """(lhd, rhd) with u rhd v = l(T(u))v and u lhd v = r(T(v))u."""
    n = rep.dim
    ring = rep.ring
    z = Scalar.zero(ring)
    rhd = [[[z] * n for _ in range(n)] for _ in range(n)]
    lhd = [[[z] * n for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for m in range(rep.alg_dim):
            w = T.rows[m][i]
            if w.is_zero():
                continue
            for j in range(n):
                for k in range(n):
                    rhd[i][j][k] = rhd[i][j][k] + w * rep.l[m].rows[k][j]
                    lhd[j][i][k] = lhd[j][i][k] + w * rep.r[m].rows[k][j]
    return (BinOpTensor(ring, lhd), BinOpTensor(ring, rhd))


def deformation_family_check(circ: BinOpTensor, f: BinOpTensor) -> dict:
    """The four closure identities making circ + qf Novikov for every q."""
    if f.ring != circ.ring or f.dim != circ.dim:
        raise PresentationError("perturbation does not match the base product")
    pres = Presentation(ring=circ.ring, space=Space(_names(circ.dim)),
                        binops={"circ": circ, "f": f})
    return {aid: check_axiom(aid, pres)
            for aid in ("DEFORM_1", "DEFORM_2", "DEFORM_3", "DEFORM_4")}


def regular_rep_novikov(circ: BinOpTensor, names) -> RepNov:
    """The adjoint module (A, L_circ, R_circ)."""
    n = circ.dim
    basis = [Vector.basis(circ.ring, n, i) for i in range(n)]
    return RepNov(tuple(names),
                  tuple(circ.left_mult(e) for e in basis),
                  tuple(circ.right_mult(e) for e in basis))


def regular_rep_admdiff(dot: BinOpTensor, D: LinMap, Q: LinMap, names) -> RepAdmDiff:
    """The regular module (A, L_dot, D, Q)."""
    n = dot.dim
    basis = [Vector.basis(dot.ring, n, i) for i in range(n)]
    return RepAdmDiff(tuple(names), tuple(dot.left_mult(e) for e in basis), D, Q)
