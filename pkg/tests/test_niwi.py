"""Proof system for pairing-product equations, mirrored by the oracle."""

import pytest

from proxitrace import (NiwiProof, NiwiWitness, PairingProductEquation,
                        crs_gen, equation_holds, niwi_prove, niwi_verify)
from proxitrace.niwi import equation_response
from proxitrace.rng import DeterministicRng
from support import perturb, random_equation_system


@pytest.fixture(scope="module")
def crs_pair(ctx, oracle):
    lib_rng = DeterministicRng(b"crs-twin", ctx.order)
    orc_rng = DeterministicRng(b"crs-twin", ctx.order)
    crs = crs_gen(ctx, lib_rng)
    ocrs = oracle.crs_gen(orc_rng)
    assert crs.u == ctx.g1 ** ocrs["u"]
    assert crs.v == ctx.g2 ** ocrs["v"]
    return crs, ocrs


def test_prove_matches_oracle_and_verifies(ctx, oracle, crs_pair):
    crs, ocrs = crs_pair
    gen_rng = ctx.rng(b"niwi-twin-system")
    equations, witness, oracle_eqs, logs = random_equation_system(
        ctx, gen_rng, eq_count=2)
    lib_rng = DeterministicRng(b"niwi-prove-twin", ctx.order)
    orc_rng = DeterministicRng(b"niwi-prove-twin", ctx.order)
    proof = niwi_prove(crs, equations, witness, lib_rng)
    rand = oracle.niwi_randomness(logs["x"], logs["y"], orc_rng)
    comm = oracle.commitments(ocrs, logs["x"], logs["y"], rand)
    for name, value in comm["c"].items():
        assert proof.c[name] == ctx.g1 ** value, name
    for name, value in comm["d"].items():
        assert proof.d[name] == ctx.g2 ** value, name
    for idx, eq in enumerate(oracle_eqs):
        opair = oracle.proof_pair(ocrs, eq, logs["x"], logs["y"], rand)
        pi, theta = proof.pairs[idx]
        assert pi == ctx.g2 ** opair["pi"]
        assert theta == ctx.g1 ** opair["theta"]
        assert oracle.eq4(ocrs, eq, comm, opair)
    assert niwi_verify(crs, equations, proof)


def test_random_systems_round_trip(ctx, crs_pair):
    crs, _ = crs_pair
    rng = ctx.rng(b"niwi-round-trips")
    for i in range(4):
        equations, witness, _, _ = random_equation_system(
            ctx, rng.fork(b"sys|%d" % i), eq_count=1 + i % 3)
        proof = niwi_prove(crs, equations, witness, rng.fork(b"prv|%d" % i))
        assert niwi_verify(crs, equations, proof)


def test_equation_holds_matches_oracle(ctx, oracle, crs_pair):
    rng = ctx.rng(b"niwi-eqcheck")
    equations, witness, oracle_eqs, logs = random_equation_system(
        ctx, rng, eq_count=1)
    assert equation_holds(ctx, equations[0], witness.x, witness.y)
    assert oracle.equation_satisfied(oracle_eqs[0], logs["x"], logs["y"])
    # break the witness the same way on both sides
    name = equations[0].x_names[0]
    offset = rng.scalar_nonzero()
    witness.x[name] = witness.x[name] * ctx.g1 ** offset
    logs["x"][name] = (logs["x"][name] + offset) % ctx.order
    lib_ok = equation_holds(ctx, equations[0], witness.x, witness.y)
    orc_ok = oracle.equation_satisfied(oracle_eqs[0], logs["x"], logs["y"])
    assert lib_ok is orc_ok is False


def test_unsatisfied_witness_refused(ctx, crs_pair):
    crs, _ = crs_pair
    rng = ctx.rng(b"niwi-unsat")
    equations, witness, _, _ = random_equation_system(ctx, rng, eq_count=2)
    name = equations[0].x_names[0]
    witness.x[name] = witness.x[name] * ctx.g1
    with pytest.raises(ValueError, match="does not satisfy"):
        niwi_prove(crs, equations, witness, rng.fork(b"p"))


def test_tampered_proof_rejected_in_step_with_oracle(ctx, oracle, crs_pair):
    crs, ocrs = crs_pair
    rng = ctx.rng(b"niwi-tamper")
    equations, witness, oracle_eqs, logs = random_equation_system(
        ctx, rng, eq_count=2)
    lib_rng = DeterministicRng(b"niwi-tamper-twin", ctx.order)
    orc_rng = DeterministicRng(b"niwi-tamper-twin", ctx.order)
    proof = niwi_prove(crs, equations, witness, lib_rng)
    rand = oracle.niwi_randomness(logs["x"], logs["y"], orc_rng)
    comm = oracle.commitments(ocrs, logs["x"], logs["y"], rand)
    opairs = [oracle.proof_pair(ocrs, eq, logs["x"], logs["y"], rand)
              for eq in oracle_eqs]
    offset = rng.scalar_nonzero()

    # perturb one commitment
    name = equations[0].x_names[0]
    bad_c = dict(proof.c)
    bad_c[name] = bad_c[name] * ctx.g1 ** offset
    bad = NiwiProof(c=bad_c, d=dict(proof.d), pairs=proof.pairs)
    assert not niwi_verify(crs, equations, bad)
    bad_comm = {"c": dict(comm["c"]), "d": dict(comm["d"])}
    bad_comm["c"][name] = (bad_comm["c"][name] + offset) % ctx.order
    assert not all(oracle.eq4(ocrs, eq, bad_comm, op)
                   for eq, op in zip(oracle_eqs, opairs))

    # perturb one response
    pi0, theta0 = proof.pairs[0]
    bad_pairs = ((pi0 * ctx.g2 ** offset, theta0),) + proof.pairs[1:]
    bad = NiwiProof(c=dict(proof.c), d=dict(proof.d), pairs=bad_pairs)
    assert not niwi_verify(crs, equations, bad)
    bad_pair0 = dict(opairs[0], pi=(opairs[0]["pi"] + offset) % ctx.order)
    assert not oracle.eq4(ocrs, oracle_eqs[0], comm, bad_pair0)

    # untouched proof still passes both sides
    assert niwi_verify(crs, equations, proof)
    assert all(oracle.eq4(ocrs, eq, comm, op)
               for eq, op in zip(oracle_eqs, opairs))


def test_two_witnesses_one_statement(ctx, crs_pair):
    crs, _ = crs_pair
    rng = ctx.rng(b"niwi-wi")
    n = ctx.order
    b_log = rng.scalar_nonzero()
    x1, x2 = rng.scalar(), rng.scalar()
    delta = rng.scalar_nonzero()
    eq = PairingProductEquation(
        x_names=("x1", "x2"), y_names=(),
        a=(), b=(ctx.g2 ** b_log, ctx.g2 ** b_log), gamma=((), ()),
        target=ctx.gt() ** (b_log * (x1 + x2) % n))
    w1 = NiwiWitness(x={"x1": ctx.g1 ** x1, "x2": ctx.g1 ** x2}, y={})
    w2 = NiwiWitness(x={"x1": ctx.g1 ** ((x1 + delta) % n),
                        "x2": ctx.g1 ** ((x2 - delta) % n)}, y={})
    p1 = niwi_prove(crs, [eq], w1, rng.fork(b"w1"))
    p2 = niwi_prove(crs, [eq], w2, rng.fork(b"w2"))
    assert niwi_verify(crs, [eq], p1)
    assert niwi_verify(crs, [eq], p2)


def test_response_map_reproduces_serial_proof(ctx, crs_pair):
    crs, _ = crs_pair
    rng = ctx.rng(b"niwi-respmap")
    equations, witness, _, _ = random_equation_system(ctx, rng, eq_count=3)

    def serial_map(crs_, eqs, wit, rand_x, rand_y):
        return [equation_response(crs_, eq, wit.x, wit.y, rand_x, rand_y)
                for eq in eqs]

    base = niwi_prove(crs, equations, witness,
                      DeterministicRng(b"rm", ctx.order))
    mapped = niwi_prove(crs, equations, witness,
                        DeterministicRng(b"rm", ctx.order),
                        response_map=serial_map)
    assert base.c == mapped.c and base.d == mapped.d
    assert base.pairs == mapped.pairs


def test_precomputed_tables_same_verdict(ctx, crs_pair):
    crs, _ = crs_pair
    rng = ctx.rng(b"niwi-tables")
    equations, witness, _, _ = random_equation_system(ctx, rng, eq_count=2)
    proof = niwi_prove(crs, equations, witness, rng.fork(b"p"))
    fixed = [crs.u.inv()]
    for eq in equations:
        fixed.extend(a for a in eq.a if not a.is_identity)
    pre = {el: ctx.precompute_g1(el) for el in fixed}
    assert niwi_verify(crs, equations, proof, precomputed=pre)
    pi0, theta0 = proof.pairs[0]
    bad = NiwiProof(c=dict(proof.c), d=dict(proof.d),
                    pairs=((pi0, perturb(ctx, theta0, rng.fork(b"t"))),)
                    + proof.pairs[1:])
    assert not niwi_verify(crs, equations, bad, precomputed=pre)


def test_proof_shape_validation(ctx, crs_pair):
    crs, _ = crs_pair
    rng = ctx.rng(b"niwi-shape")
    equations, witness, _, _ = random_equation_system(ctx, rng, eq_count=2)
    proof = niwi_prove(crs, equations, witness, rng.fork(b"p"))
    with pytest.raises(ValueError, match="response count"):
        niwi_verify(crs, equations,
                    NiwiProof(c=proof.c, d=proof.d, pairs=proof.pairs[:1]))
    swapped = tuple((theta, pi) for pi, theta in proof.pairs)
    with pytest.raises(ValueError, match="wrong group"):
        niwi_verify(crs, equations,
                    NiwiProof(c=proof.c, d=proof.d, pairs=swapped))
    missing = dict(proof.c)
    missing.pop(equations[0].x_names[0])
    with pytest.raises(ValueError, match="unknown variable"):
        niwi_verify(crs, equations,
                    NiwiProof(c=missing, d=proof.d, pairs=proof.pairs))
    with pytest.raises(ValueError):
        PairingProductEquation(x_names=("x",), y_names=(), a=(), b=(),
                               gamma=((),), target=ctx.gt_one())