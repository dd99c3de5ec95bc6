"""Bialgebra-level checks: compatibility residuals, doubles, Manin triples.

The two bundled verdicts are check_diff_asi_bialgebra for the commutative
differential side and check_novikov_bialgebra for the deformed side; the q
locus utilities sit on top of the symbolic reports.  Double constructions
return ordinary presentations on the doubled basis e1..en, e1'..en', with the
convention that the primed half is the dual basis.
"""

from .exactcore import (
    LinMap,
    POLY,
    RATIONAL,
    Scalar,
    Tensor2,
    Vector,
    bareiss_det,
    exact_div,
)
from .structures import (
    AxiomReport,
    BinOpTensor,
    CoOpTensor,
    Presentation,
    PresentationError,
    QLocus,
    RepAdmDiff,
    RepNov,
    Space,
    check_axiom,
    combine_loci,
    scan_residuals,
    vanishing_locus,
    _toggle_prime,
)
from .constructions import (
    descendent_commdiff,
    descendent_novikov,
    dual_rep_admdiff,
    dual_rep_novikov,
    induce_nov_coalg,
    induce_novikov,
    pre_novikov_from_zinbiel,
    semidirect_admdiff,
    semidirect_novikov,
)
from .ybe import Delta_qr, canonical_r, delta_r

DIFF_ASI_AXIOMS = ("COMM", "ASSOC", "DERIV", "ADMISS", "COASSOC", "COCOMM",
                   "CODERIV", "CO_ADMISS", "ASI_1", "ASI_2")
NOV_BIALG_AXIOMS = ("NOV_LSYM", "NOV_RCOMM", "NOV_COALG_1", "NOV_COALG_2",
                    "NOV_BIALG_1", "NOV_BIALG_2", "NOV_BIALG_3")
BIALG_Q_AXIOMS = ("BIALG_Q_1", "BIALG_Q_2", "BIALG_Q_3")


def _names(n: int) -> tuple[str, ...]:
    return tuple(f"e{i + 1}" for i in range(n))


def _doubled_names(names) -> tuple[str, ...]:
    out = list(names)
    for nm in names:
        mark = _toggle_prime(nm)
        while mark in out:
            mark += "'"
        out.append(mark)
    return tuple(out)


def _require(reports: dict) -> None:
    bad = [str(r) for r in reports.values() if not r.holds]
    if bad:
        raise PresentationError("precondition failed: " + "; ".join(bad))


def standard_form(ring: str, dim_a: int) -> Tensor2:
    """The hyperbolic pairing on A + A*: B(e_i, e_j') = B(e_j', e_i) = [i = j]."""
    n = 2 * dim_a
    z, one = Scalar.zero(ring), Scalar.one(ring)
    rows = [[z] * n for _ in range(n)]
    for i in range(dim_a):
        rows[i][dim_a + i] = one
        rows[dim_a + i][i] = one
    return Tensor2(ring, rows)


def adjoint_map(D: LinMap, B: Tensor2) -> LinMap:
    """The map adj with B(D(a), b) = B(a, adj(b)) for all a, b.

    Solves the matrix equation B adj = D^T B column by column with Cramer's
    rule, so B must be nondegenerate.  Over Q[q] each solution entry must come
    out polynomial; a fractional solution raises.
    """
    n = B.dim
    if D.cod != n or D.dom != n:
        raise PresentationError("map and form have different dimensions")
    base = [list(r) for r in B.rows]
    det = bareiss_det([row[:] for row in base], B.ring)
    if det.is_zero():
        raise PresentationError("the form is degenerate")
    rhs = D.transpose() @ LinMap(B.ring, B.rows)
    rows = [[Scalar.zero(B.ring)] * n for _ in range(n)]
    for j in range(n):
        for i in range(n):
            mat = [row[:] for row in base]
            for k in range(n):
                mat[k][i] = rhs.rows[k][j]
            rows[i][j] = exact_div(bareiss_det(mat, B.ring), det)
    return LinMap(B.ring, rows)


def check_diff_asi_bialgebra(pres: Presentation, dot: str = "dot", delta: str = "delta",
                             D: str = "D", Q: str = "Q") -> dict:
    """All axioms of a commutative cocommutative differential ASI bialgebra."""
    binds = {"dot": dot, "delta": delta, "D": D, "Q": Q}
    return {aid: check_axiom(aid, pres, binds) for aid in DIFF_ASI_AXIOMS}


def check_novikov_bialgebra(circ: BinOpTensor, Delta: CoOpTensor) -> dict:
    """Novikov algebra + coalgebra axioms plus the three compatibilities."""
    if circ.ring != Delta.ring or circ.dim != Delta.dim:
        raise PresentationError("product and coproduct do not match")
    pres = Presentation(ring=circ.ring, space=Space(_names(circ.dim)),
                        binops={"circ": circ}, coops={"Delta": Delta})
    return {aid: check_axiom(aid, pres) for aid in NOV_BIALG_AXIOMS}


def bialg_q_residuals(pres: Presentation, q=None, dot: str = "dot", delta: str = "delta",
                      D: str = "D", Q: str = "Q") -> dict:
    """The three compatibility residuals of the induced pair, one report each.

    Over Q[q] leave q=None for the symbolic verdict; over Q pass the point.
    The reports vanish simultaneously exactly where (circ_q, Delta_q) is a
    Novikov bialgebra.
    """
    binds = {"dot": dot, "delta": delta, "D": D, "Q": Q}
    return {aid: check_axiom(aid, pres, binds, q=q) for aid in BIALG_Q_AXIOMS}


def novikov_bialgebra_locus(pres: Presentation, dot: str = "dot", delta: str = "delta",
                            D: str = "D", Q: str = "Q") -> QLocus:
    """Rational q where the induced (circ_q, Delta_q) is a Novikov bialgebra.

    Builds the induced pair symbolically and intersects the vanishing sets of
    every failing axiom's residual entries; all_q when everything holds
    identically.  Points beyond Q are out of scope (the locus carries a flag
    when a non-rational common zero cannot be ruled out).
    """
    p = pres.lift() if pres.ring == RATIONAL else pres
    circ = induce_novikov(p.binop(dot), p.linmap(D), p.linmap(Q))
    Delta = induce_nov_coalg(p.coop(delta), p.linmap(Q), p.linmap(D))
    reports = check_novikov_bialgebra(circ, Delta)
    return combine_loci(r.locus for r in reports.values())


def double_construction(pres: Presentation, dot: str = "dot", delta: str = "delta",
                        D: str = "D", Q: str = "Q", verify: bool = False) -> Presentation:
    """The Frobenius-style double of a differential ASI bialgebra on A + A*.

    The A and A* halves multiply by the product and the coproduct's dual; the
    mixed product pairs the coproduct against the covector and adds the
    transposed left multiplication:

        a . f = sum <f, a_(1)> a_(2) + L(a)^T f,   f . a = a . f.

    The maps become D + Q^T and Q + D^T.  The hyperbolic form is invariant for
    the result; that invariance is re-checked on every call since the mixed
    formula exists precisely to make it hold.
    """
    op = pres.binop(dot)
    cop = pres.coop(delta)
    dmap, qmap = pres.linmap(D), pres.linmap(Q)
    if verify:
        _require(check_diff_asi_bialgebra(pres, dot, delta, D, Q))
    n = pres.dim
    ring = pres.ring
    nn = 2 * n
    z = Scalar.zero(ring)
    c = [[[z] * nn for _ in range(nn)] for _ in range(nn)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                c[i][j][k] = op.c[i][j][k]
                c[n + i][n + j][n + k] = cop.d[k][i][j]
    for i in range(n):
        for b in range(n):
            for k in range(n):
                c[i][n + b][k] = cop.d[i][b][k]
                c[n + b][i][k] = cop.d[i][b][k]
                c[i][n + b][n + k] = op.c[i][k][b]
                c[n + b][i][n + k] = op.c[i][k][b]
    total = BinOpTensor(ring, c)
    out = Presentation(
        ring=ring,
        space=Space(_doubled_names(pres.space.names)),
        binops={dot: total},
        coops={},
        maps={D: LinMap.block_diag(dmap, qmap.transpose()),
              Q: LinMap.block_diag(qmap, dmap.transpose())},
        forms={"B": standard_form(ring, n)},
    )
    guard = check_axiom("BILIN_INV_ASSOC", out, {"dot": dot})
    if not guard.holds:
        raise PresentationError(f"double is not invariant for the pairing: {guard}")
    return out


def zinbiel_double(pres: Presentation, zin: str = "zin", D: str = "D", Q: str = "Q",
                   verify: bool = False) -> Presentation:
    """The differential ASI bialgebra on A + A* built over a Zinbiel product.

    A carries the descendent commutative product, A* the dual of the left
    regular Zinbiel module, and the coproduct is the coboundary of the
    canonical antisymmetric pairing tensor.  Output slots are always named
    dot, delta, D, Q.
    """
    zop = pres.binop(zin)
    dmap, qmap = pres.linmap(D), pres.linmap(Q)
    if verify:
        _require({
            "ZINBIEL": check_axiom("ZINBIEL", pres, {"zin": zin}),
            "DERIV": check_axiom("DERIV", pres, {"dot": zin, "D": D}),
            "ZINB_ADMISS": check_axiom("ZINB_ADMISS", pres, {"zin": zin, "D": D, "Q": Q}),
        })
    ring = pres.ring
    n = pres.dim
    basis = [Vector.basis(ring, n, i) for i in range(n)]
    base_rep = RepAdmDiff(pres.space.names, tuple(zop.left_mult(e) for e in basis),
                          dmap, qmap)
    apres = Presentation(ring=ring, space=pres.space,
                         binops={"dot": descendent_commdiff(zop)},
                         maps={"D": dmap, "Q": qmap})
    dbl = semidirect_admdiff(apres, dual_rep_admdiff(base_rep))
    cob = delta_r(-canonical_r(ring, n), dbl.binop("dot"))
    return Presentation(ring=ring, space=dbl.space, binops=dbl.binops,
                        coops={"delta": cob}, maps=dbl.maps)


def prenov_double_family(pres: Presentation, zin: str = "zin", D: str = "D",
                         Q: str = "Q") -> Presentation:
    """The symbolic Novikov bialgebra family on A + A* via the split route.

    Deforms the Zinbiel product into a split pair, takes its descendent
    Novikov product, extends to the double by the dual of the split module,
    and closes with the coboundary coproduct of the canonical tensor.  Slots
    are named circ and Delta; the result lives over Q[q].
    """
    p = pres.lift() if pres.ring == RATIONAL else pres
    zop = p.binop(zin)
    dmap, qmap = p.linmap(D), p.linmap(Q)
    n = p.dim
    lhd, rhd = pre_novikov_from_zinbiel(zop, dmap, qmap)
    basis = [Vector.basis(POLY, n, i) for i in range(n)]
    rep = RepNov(p.space.names,
                 tuple(rhd.left_mult(e) for e in basis),
                 tuple(lhd.right_mult(e) for e in basis))
    apres = Presentation(ring=POLY, space=p.space,
                         binops={"circ": descendent_novikov(lhd, rhd)})
    dbl = semidirect_novikov(apres, dual_rep_novikov(rep))
    big = dbl.binop("circ")
    return Presentation(ring=POLY, space=dbl.space, binops={"circ": big},
                        coops={"Delta": Delta_qr(canonical_r(POLY, n), big)})


def double_induced_family(pres: Presentation, zin: str = "zin", D: str = "D",
                          Q: str = "Q") -> Presentation:
    """The symbolic family on A + A* via the double-then-deform route."""
    dbl = zinbiel_double(pres, zin, D, Q)
    p = dbl.lift() if dbl.ring == RATIONAL else dbl
    circ = induce_novikov(p.binop("dot"), p.linmap("D"), p.linmap("Q"))
    Delta = induce_nov_coalg(p.coop("delta"), p.linmap("Q"), p.linmap("D"))
    return Presentation(ring=POLY, space=p.space, binops={"circ": circ},
                        coops={"Delta": Delta})


def family_difference_locus(pa: Presentation, pb: Presentation, circ: str = "circ",
                            Delta: str = "Delta") -> QLocus:
    """Rational q where two symbolic families agree entrywise."""
    ca, cb = pa.binop(circ), pb.binop(circ)
    da, db = pa.coop(Delta), pb.coop(Delta)
    if ca.dim != cb.dim or da.dim != db.dim:
        raise PresentationError("families live on different spaces")
    n = ca.dim

    def entries():
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    yield ca.c[i][j][k] - cb.c[i][j][k]
                    yield da.d[i][j][k] - db.d[i][j][k]

    return vanishing_locus(entries())


def _subalgebra_report(axiom_id: str, op: BinOpTensor, names, inside: range) -> AxiomReport:
    member = set(inside)
    outside = [k for k in range(op.dim) if k not in member]

    def items():
        for i in inside:
            for j in inside:
                leak = Vector(op.ring, [op.c[i][j][k] for k in outside])
                yield (names[i], names[j]), leak

    return scan_residuals(axiom_id, op.ring, items())


def check_manin_triple(pres: Presentation, dim_left: int, circ: str = "circ") -> dict:
    """Manin triple verdict for a Novikov product on a doubled space.

    Checks that the first dim_left and the remaining basis vectors each span
    a subalgebra, that the whole product is Novikov, and that the hyperbolic
    pairing of the two halves is invariant.
    """
    op = pres.binop(circ)
    n = op.dim
    if n != 2 * dim_left:
        raise PresentationError("the split must cut the space exactly in half")
    names = pres.space.names
    tmp = Presentation(ring=pres.ring, space=pres.space, binops={circ: op},
                       forms={"B": standard_form(pres.ring, dim_left)})
    binds = {"circ": circ}
    return {
        "SUBALG_LEFT": _subalgebra_report("SUBALG_LEFT", op, names, range(dim_left)),
        "SUBALG_RIGHT": _subalgebra_report("SUBALG_RIGHT", op, names, range(dim_left, n)),
        "NOV_LSYM": check_axiom("NOV_LSYM", tmp, binds),
        "NOV_RCOMM": check_axiom("NOV_RCOMM", tmp, binds),
        "BILIN_INV_NOV": check_axiom("BILIN_INV_NOV", tmp, binds),
    }


def quadratic_novikov_check(circ: BinOpTensor, B: Tensor2) -> dict:
    """Symmetric, nondegenerate and invariant form over a Novikov product."""
    if circ.ring != B.ring or circ.dim != B.dim:
        raise PresentationError("form and product do not match")
    pres = Presentation(ring=circ.ring, space=Space(_names(circ.dim)),
                        binops={"circ": circ}, forms={"B": B})
    return {aid: check_axiom(aid, pres) for aid in ("FORM_SYM", "FORM_NONDEG", "BILIN_INV_NOV")}
