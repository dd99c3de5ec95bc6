"""Yang-Baxter residuals, coboundary coproducts and operator checks.

An element r = sum_i x_i (x) y_i is stored as a plain order-2 tensor;
antisymmetry is a checked predicate, never an assumption, because the
operator-to-tensor direction needs the raw summand before antisymmetrizing.

For the double products the binary operation always lands in the leg the two
subscripts share, and the remaining legs keep their factors in summand order:

    r13 . r23 = sum x_i (x) x_j (x) (y_i . y_j)
    r12 . r23 = sum x_i (x) (y_i . x_j) (x) y_j
    r13 . r12 = sum (x_i . x_j) (x) y_j (x) y_i
"""

from .exactcore import LinMap, Scalar, Tensor2, Tensor3, Vector
from .structures import (
    AxiomReport,
    BinOpTensor,
    CoOpTensor,
    PresentationError,
    RepAdmDiff,
    RepNov,
    scan_residuals,
)
from .constructions import star


def _check_dims(r: Tensor2, op: BinOpTensor) -> None:
    if r.ring != op.ring:
        raise PresentationError("r and the product live over different rings")
    if r.dim != op.dim:
        raise PresentationError("r and the product live on different spaces")


def _prod_leg1(r: Tensor2, op: BinOpTensor) -> Tensor3:
    """r13 . r12, multiplied in the first leg."""
    n = r.dim
    z = Scalar.zero(r.ring)
    out = [[[z] * n for _ in range(n)] for _ in range(n)]
    for a, m, ca in r.nonzero():
        for c, l, cc in r.nonzero():
            w = ca * cc
            for k, ck in enumerate(op.c[a][c]):
                if not ck.is_zero():
                    out[k][l][m] = out[k][l][m] + w * ck
    return Tensor3(r.ring, out)


def _prod_leg2(r: Tensor2, op: BinOpTensor) -> Tensor3:
    """r12 . r23, multiplied in the middle leg."""
    n = r.dim
    z = Scalar.zero(r.ring)
    out = [[[z] * n for _ in range(n)] for _ in range(n)]
    for k, b, ca in r.nonzero():
        for c, m, cc in r.nonzero():
            w = ca * cc
            for l, cl in enumerate(op.c[b][c]):
                if not cl.is_zero():
                    out[k][l][m] = out[k][l][m] + w * cl
    return Tensor3(r.ring, out)


def _prod_leg3(r: Tensor2, op: BinOpTensor) -> Tensor3:
    """r13 . r23, multiplied in the last leg."""
    n = r.dim
    z = Scalar.zero(r.ring)
    out = [[[z] * n for _ in range(n)] for _ in range(n)]
    for k, b, ca in r.nonzero():
        for l, d, cc in r.nonzero():
            w = ca * cc
            for m, cm in enumerate(op.c[b][d]):
                if not cm.is_zero():
                    out[k][l][m] = out[k][l][m] + w * cm
    return Tensor3(r.ring, out)


def aybe_residual(r: Tensor2, dot: BinOpTensor) -> Tensor3:
    """r13.r12 + r13.r23 - r12.r23 for a commutative associative product."""
    _check_dims(r, dot)
    return _prod_leg1(r, dot) + _prod_leg3(r, dot) - _prod_leg2(r, dot)


def nybe_residual(r: Tensor2, circ: BinOpTensor) -> Tensor3:
    """r13 circ r23 + r12 star r23 + r13 circ r12, with a star b = a circ b + b circ a."""
    _check_dims(r, circ)
    return _prod_leg3(r, circ) + _prod_leg2(r, star(circ)) + _prod_leg1(r, circ)


def r_admissibility(r: Tensor2, D: LinMap, Q: LinMap) -> AxiomReport:
    """(D (x) id - id (x) Q) r = 0 and (id (x) D - Q (x) id) r = 0."""
    first = r.apply_maps(D, None) - r.apply_maps(None, Q)
    second = r.apply_maps(None, D) - r.apply_maps(Q, None)
    items = [(("D(x)id - id(x)Q",), first), (("id(x)D - Q(x)id",), second)]
    return scan_residuals("R_ADMISS", r.ring, items)


def is_antisymmetric(r: Tensor2) -> bool:
    return (r + r.flip()).is_zero()


def delta_r(r: Tensor2, dot: BinOpTensor) -> CoOpTensor:
    """The coboundary coproduct a -> (id (x) L(a) - L(a) (x) id) r."""
    _check_dims(r, dot)
    n = r.dim
    images = []
    for i in range(n):
        L = dot.left_mult(Vector.basis(r.ring, n, i))
        images.append(r.apply_maps(None, L) - r.apply_maps(L, None))
    return CoOpTensor.from_tensors(r.ring, images)


def Delta_qr(r: Tensor2, circ: BinOpTensor) -> CoOpTensor:
    """The coboundary coproduct a -> (L_circ(a) (x) id + id (x) L_star(a)) r."""
    _check_dims(r, circ)
    st = star(circ)
    n = r.dim
    images = []
    for i in range(n):
        e = Vector.basis(r.ring, n, i)
        images.append(r.apply_maps(circ.left_mult(e), None)
                      + r.apply_maps(None, st.left_mult(e)))
    return CoOpTensor.from_tensors(r.ring, images)


def _act(mats, coeffs: Vector, v: Vector) -> Vector:
    """Apply sum_m coeffs[m] * mats[m] to v."""
    out = Vector.zero(v.ring, v.dim)
    for m, c in enumerate(coeffs.coords):
        if not c.is_zero():
            out = out + mats[m].apply(v).scale(c)
    return out


def oop_check(T: LinMap, rep, circ: BinOpTensor | None = None,
              dot: BinOpTensor | None = None, D: LinMap | None = None,
              Q: LinMap | None = None) -> dict:
    """Verify the defining identities of a relative splitting operator T: V -> A.

    With a Novikov module (pass circ):
        T(u) circ T(v) = T(l(T(u))v) + T(r(T(v))u).
    With a differential module (pass dot and D, and Q when the twisted half
    should be checked too):
        T(u) . T(v) = T(l(T(u))v + l(T(v))u),  D T = T alpha,  Q T = T beta.

    Returns one report per identity, keyed OOP_PROD / OOP_D / OOP_Q.
    """
    if T.cod != rep.alg_dim or T.dom != rep.dim:
        raise PresentationError("operator shape does not match the module")
    ring = rep.ring
    nv = rep.dim
    basis = [Vector.basis(ring, nv, i) for i in range(nv)]
    timg = [T.column(i) for i in range(nv)]
    names = rep.names

    if isinstance(rep, RepNov):
        if circ is None:
            raise PresentationError("a Novikov module needs the algebra product")
        if circ.dim != rep.alg_dim or circ.ring != ring:
            raise PresentationError("product does not match the module's algebra")

        def prod_items():
            for i in range(nv):
                for j in range(nv):
                    lhs = circ.apply(timg[i], timg[j])
                    rhs = T.apply(_act(rep.l, timg[i], basis[j])) \
                        + T.apply(_act(rep.r, timg[j], basis[i]))
                    yield (names[i], names[j]), lhs - rhs

        return {"OOP_PROD": scan_residuals("OOP_PROD", ring, prod_items())}

    if not isinstance(rep, RepAdmDiff):
        raise PresentationError(f"unsupported module type {type(rep).__name__}")
    if dot is None or D is None:
        raise PresentationError("a differential module needs the product and D")
    if dot.dim != rep.alg_dim or dot.ring != ring:
        raise PresentationError("product does not match the module's algebra")

    def prod_items():
        for i in range(nv):
            for j in range(nv):
                lhs = dot.apply(timg[i], timg[j])
                rhs = T.apply(_act(rep.l, timg[i], basis[j])
                              + _act(rep.l, timg[j], basis[i]))
                yield (names[i], names[j]), lhs - rhs

    out = {
        "OOP_PROD": scan_residuals("OOP_PROD", ring, prod_items()),
        "OOP_D": scan_residuals("OOP_D", ring, [(("D T - T alpha",), D @ T - T @ rep.alpha)]),
    }
    if Q is not None:
        out["OOP_Q"] = scan_residuals("OOP_Q", ring, [(("Q T - T beta",), Q @ T - T @ rep.beta)])
    return out


def T_from_r(r: Tensor2) -> LinMap:
    """The map A* -> A sending a covector f to (f (x) id) r."""
    return LinMap(r.ring, [[r.rows[j][i] for j in range(r.dim)] for i in range(r.dim)])


def r_from_T(T: LinMap) -> Tensor2:
    """Antisymmetrized tensor of T: V -> A inside (A + V*) (x) (A + V*).

    T becomes sum_j T(v_j) (x) v_j* in the A (x) V* block; the result is that
    summand minus its flip.
    """
    na, nv = T.cod, T.dom
    n = na + nv
    z = Scalar.zero(T.ring)
    rows = [[z] * n for _ in range(n)]
    for i in range(na):
        for j in range(nv):
            rows[i][na + j] = T.rows[i][j]
            rows[na + j][i] = -T.rows[i][j]
    return Tensor2(T.ring, rows)


def canonical_r(ring: str, dim_a: int) -> Tensor2:
    """sum_i e_i (x) e_i* - e_i* (x) e_i on A + A*."""
    return r_from_T(LinMap.identity(ring, dim_a))
