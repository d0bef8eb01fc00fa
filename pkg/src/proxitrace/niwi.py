"""Witness-indistinguishable proofs for pairing-product equations.

Statements are conjunctions of equations
    prod e(A_j, Y_j) * prod e(X_i, B_j) * prod e(X_i, Y_j)^gamma_ij = t
over committed variables X (first group) and Y (second group).  Each
variable is committed once with a single blinding scalar against the
reference string (U, V), and shared across every equation that names
it; each equation contributes one (pi, theta) response pair.

Commitments are perfectly hiding, so the artifact exercises
completeness and tamper rejection, not extraction.

Draw order in prove: one blinder per first-group variable in sorted
name order, then one per second-group variable in sorted name order.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .groups import GroupElement
from .pairing import GtElement, PairingContext
from .rng import DeterministicRng


@dataclass(frozen=True)
class NiwiCrs:
    ctx: PairingContext
    u: GroupElement          # commitment base in the first group
    v: GroupElement          # commitment base in the second group


def crs_gen(ctx: PairingContext, rng: DeterministicRng) -> NiwiCrs:
    """Binding-free reference string; draws one scalar per base."""
    u = ctx.g1 ** rng.scalar_nonzero()
    v = ctx.g2 ** rng.scalar_nonzero()
    return NiwiCrs(ctx=ctx, u=u, v=v)


@dataclass(frozen=True)
class PairingProductEquation:
    x_names: tuple[str, ...]
    y_names: tuple[str, ...]
    a: tuple[GroupElement, ...]          # constant paired with each Y, identity to skip
    b: tuple[GroupElement, ...]          # constant paired with each X
    gamma: tuple[tuple[int, ...], ...]   # rows follow x_names, columns y_names
    target: GtElement

    def __post_init__(self):
        if len(self.a) != len(self.y_names) or len(self.b) != len(self.x_names):
            raise ValueError("constant count does not match variable count")
        if len(self.gamma) != len(self.x_names):
            raise ValueError("gamma row count mismatch")
        for row in self.gamma:
            if len(row) != len(self.y_names):
                raise ValueError("gamma column count mismatch")


@dataclass
class NiwiWitness:
    x: dict[str, GroupElement] = field(default_factory=dict)
    y: dict[str, GroupElement] = field(default_factory=dict)


@dataclass(frozen=True)
class NiwiProof:
    c: dict[str, GroupElement]
    d: dict[str, GroupElement]
    pairs: tuple[tuple[GroupElement, GroupElement], ...]   # (pi, theta) per equation


def _check_statement(equations, x: dict, y: dict):
    for i, eq in enumerate(equations):
        for name in eq.x_names:
            if name not in x:
                raise ValueError(f"equation {i} references unknown variable {name}")
        for name in eq.y_names:
            if name not in y:
                raise ValueError(f"equation {i} references unknown variable {name}")


def _gamma_fold(ctx: PairingContext, eq: PairingProductEquation,
                ys: dict[str, GroupElement]):
    """Per X row, the gamma-weighted product of the row's Y values."""
    n = ctx.order
    out = []
    for row in eq.gamma:
        acc = None
        for g, yn in zip(row, eq.y_names):
            if g % n == 0:
                continue
            term = ys[yn] ** g
            acc = term if acc is None else acc * term
        out.append(acc)
    return out


def equation_holds(ctx: PairingContext, eq: PairingProductEquation,
                   x: dict[str, GroupElement], y: dict[str, GroupElement]) -> bool:
    pairs = [(a, y[yn]) for a, yn in zip(eq.a, eq.y_names)]
    pairs.extend((x[xn], b) for xn, b in zip(eq.x_names, eq.b))
    for xn, folded in zip(eq.x_names, _gamma_fold(ctx, eq, y)):
        if folded is not None:
            pairs.append((x[xn], folded))
    return ctx.pair_check(pairs, target=eq.target)


def equation_response(crs: NiwiCrs, eq: PairingProductEquation,
                      wx: dict, wy: dict, rand_x: dict, rand_y: dict
                      ) -> tuple[GroupElement, GroupElement]:
    """Response pair (pi, theta) for one equation under the given blinders.

    Pure in its inputs, so independent equations' responses may be
    computed in any order or in parallel with identical results.
    """
    ctx = crs.ctx
    n = ctx.order
    pi = None
    cross = 0
    for xn, b, row in zip(eq.x_names, eq.b, eq.gamma):
        ri = rand_x[xn]
        if ri and not b.is_identity:
            term = b ** ri
            pi = term if pi is None else pi * term
        for g, yn in zip(row, eq.y_names):
            if g % n == 0 or ri == 0:
                continue
            term = wy[yn] ** (ri * g % n)
            pi = term if pi is None else pi * term
            cross += ri * g * rand_y[yn]
    if cross % n:
        term = crs.v ** (cross % n)
        pi = term if pi is None else pi * term
    theta = None
    cols = tuple(zip(*eq.gamma)) if eq.x_names else tuple(() for _ in eq.y_names)
    for yn, a, col in zip(eq.y_names, eq.a, cols):
        sj = rand_y[yn]
        if sj and not a.is_identity:
            term = a ** sj
            theta = term if theta is None else theta * term
        for g, xn in zip(col, eq.x_names):
            e = g * sj % n
            if e:
                term = wx[xn] ** e
                theta = term if theta is None else theta * term
    if pi is None:
        pi = ctx.g2_group.identity()
    if theta is None:
        theta = ctx.g1_group.identity()
    return pi, theta


def niwi_prove(crs: NiwiCrs, equations, witness: NiwiWitness,
               rng: DeterministicRng, response_map=None) -> NiwiProof:
    """Commit to the witness and answer every equation.

    Blinders are drawn in sorted variable-name order, first-group names
    before second-group names.  response_map, when given, is called as
    response_map(crs, equations, witness, rand_x, rand_y) and must
    return the per-equation response pairs; it exists so callers can
    fan the independent responses out to worker processes.
    """
    ctx = crs.ctx
    equations = tuple(equations)
    _check_statement(equations, witness.x, witness.y)
    for name, el in witness.x.items():
        if el.group is not ctx.g1_group:
            raise ValueError(f"witness {name} must be in the first group")
    for name, el in witness.y.items():
        if el.group is not ctx.g2_group:
            raise ValueError(f"witness {name} must be in the second group")
    for i, eq in enumerate(equations):
        if not equation_holds(ctx, eq, witness.x, witness.y):
            raise ValueError(f"witness does not satisfy equation {i}")

    rand_x = {name: rng.scalar() for name in sorted(witness.x)}
    rand_y = {name: rng.scalar() for name in sorted(witness.y)}
    c = {name: witness.x[name] * crs.u ** rand_x[name] for name in witness.x}
    d = {name: witness.y[name] * crs.v ** rand_y[name] for name in witness.y}

    if response_map is None:
        pairs = [equation_response(crs, eq, witness.x, witness.y,
                                   rand_x, rand_y) for eq in equations]
    else:
        pairs = list(response_map(crs, equations, witness, rand_x, rand_y))
    return NiwiProof(c=dict(c), d=dict(d), pairs=tuple(pairs))


def verification_pairs(crs: NiwiCrs, eq: PairingProductEquation,
                       proof: NiwiProof, index: int):
    """(pairs, target) whose pairing product decides one equation."""
    ctx = crs.ctx
    pi, theta = proof.pairs[index]
    pairs = [(a, proof.d[yn]) for a, yn in zip(eq.a, eq.y_names)]
    pairs.extend((proof.c[xn], b) for xn, b in zip(eq.x_names, eq.b))
    for xn, folded in zip(eq.x_names, _gamma_fold(ctx, eq, proof.d)):
        if folded is not None:
            pairs.append((proof.c[xn], folded))
    pairs.append((crs.u.inv(), pi))
    pairs.append((theta.inv(), crs.v))
    return pairs, eq.target


def niwi_verify(crs: NiwiCrs, equations, proof: NiwiProof,
                precomputed=None) -> bool:
    """1 iff every equation's product relation holds for the proof.

    precomputed optionally maps fixed first-group elements to their
    Miller tables; matching pairs then reuse the recorded lines.
    """
    ctx = crs.ctx
    equations = tuple(equations)
    _check_statement(equations, proof.c, proof.d)
    if len(proof.pairs) != len(equations):
        raise ValueError("response count does not match equation count")
    for pi, theta in proof.pairs:
        if pi.group is not ctx.g2_group or theta.group is not ctx.g1_group:
            raise ValueError("response pair in wrong groups")
    for name, el in proof.c.items():
        if el.group is not ctx.g1_group:
            raise ValueError(f"commitment {name} in wrong group")
    for name, el in proof.d.items():
        if el.group is not ctx.g2_group:
            raise ValueError(f"commitment {name} in wrong group")
    for index, eq in enumerate(equations):
        pairs, target = verification_pairs(crs, eq, proof, index)
        if precomputed:
            dyn, tab = [], []
            for x_el, y_el in pairs:
                table = precomputed.get(x_el)
                if table is not None:
                    tab.append((table, y_el))
                else:
                    dyn.append((x_el, y_el))
            if not ctx.pair_check(dyn, target=target, tables=tab):
                return False
        elif not ctx.pair_check(pairs, target=target):
            return False
    return True
